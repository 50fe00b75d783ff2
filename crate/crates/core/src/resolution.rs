//! Truncated free resolutions of the trivial module: the standard
//! resolution built from tuples of cosets, and resolutions assembled from
//! equivariant cell data.
//!
//! Cells are stored orbit-wise (representative plus stabiliser); the full
//! fixed-point bases are only enumerated per evaluation, since the tuple
//! sets grow as `|Delta_0|^(n+1)` while fixed-point sets stay small.

use std::collections::HashMap;
use std::sync::Arc;

use crate::complex::{ChainComplex, CochainComplex};
use crate::error::ResolutionError;
use crate::group::{ElemId, Subgroup};
use crate::matrix::IMat;
use crate::module::{BredonModule, Variance};
use crate::orbit::OrbitCategory;
use crate::sparse::SparseMat;

pub const DEFAULT_TRUNCATION: usize = 4;
pub const DEFAULT_CELL_BUDGET: usize = 20_000_000;

/// One orbit of cells: `G . rep` with `rep` stabilised by `stab`.  The
/// boundary is recorded at the orbit generator: `d(rep) = sum c * (g . target_rep)`.
pub struct OrbitCell {
    pub stab: Subgroup,
    /// Object index of the stabiliser inside the family, when it belongs to
    /// it; `None` makes the level non-free.
    pub stab_obj: Option<usize>,
    pub boundary: Vec<(i64, ElemId, u32)>,
    /// Standard-resolution representative tuple (global coset ids).
    pub tuple: Option<Vec<u32>>,
}

pub struct ResolutionLevel {
    pub cells: Vec<OrbitCell>,
}

impl ResolutionLevel {
    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }
}

/// Global coset bookkeeping for `Delta_0 = (U)_K G/K` over all family
/// members, with the translation action.
pub struct Delta0 {
    pub offsets: Vec<usize>,
    pub total: usize,
    pub object_of: Vec<u32>,
    pub action: Vec<Vec<u32>>, // [g][coset] -> g.coset
}

impl Delta0 {
    fn build(cat: &OrbitCategory) -> Self {
        let group = cat.group();
        let mut offsets = Vec::with_capacity(cat.object_count());
        let mut total = 0usize;
        for o in 0..cat.object_count() {
            offsets.push(total);
            total += cat.object(o).cosets.len();
        }
        let mut object_of = vec![0u32; total];
        for o in 0..cat.object_count() {
            for c in 0..cat.object(o).cosets.len() {
                object_of[offsets[o] + c] = o as u32;
            }
        }
        let mut action = vec![vec![0u32; total]; group.order()];
        for g in 0..group.order() {
            for o in 0..cat.object_count() {
                let obj = cat.object(o);
                for (c, coset) in obj.cosets.iter().enumerate() {
                    let moved = obj.coset_of[group.mul(g, coset[0])];
                    action[g][offsets[o] + c] = (offsets[o] + moved as usize) as u32;
                }
            }
        }
        Delta0 {
            offsets,
            total,
            object_of,
            action,
        }
    }

    /// Cosets fixed by every member of `h`.
    pub fn fixed(&self, h: &Subgroup) -> Vec<u32> {
        (0..self.total as u32)
            .filter(|&c| h.members().iter().all(|&g| self.action[g][c as usize] == c))
            .collect()
    }
}

/// A truncated chain of free modules `C_0 .. C_N` over the orbit category
/// with boundary records and the all-ones augmentation.
pub struct FreeResolution {
    pub cat: Arc<OrbitCategory>,
    pub levels: Vec<ResolutionLevel>,
    pub level_free: Vec<bool>,
    pub delta0: Option<Delta0>,
}

impl FreeResolution {
    pub fn length(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn is_free(&self) -> bool {
        self.level_free.iter().all(|&f| f)
    }

    /// The free module of one level, materialised over the category
    /// (fixture-sized levels only).
    pub fn level_module(&self, n: usize) -> BredonModule {
        let gens: Vec<usize> = self.levels[n]
            .cells
            .iter()
            .map(|c| c.stab_obj.expect("level is free"))
            .collect();
        BredonModule::free_right_sum(&self.cat, &gens)
    }

    // -- evaluation at an object -------------------------------------------

    /// Basis of the evaluated module `C_n(G/H)`: pairs (cell, fixed coset of
    /// the cell's stabiliser), with cosets listed by canonical
    /// representative element.
    pub fn evaluated_basis(&self, n: usize, h: &Subgroup) -> Vec<(u32, ElemId)> {
        let group = self.cat.group();
        let mut out = Vec::new();
        for (j, cell) in self.levels[n].cells.iter().enumerate() {
            let (cosets, _) = crate::orbit::coset_table(group, &cell.stab);
            for coset in &cosets {
                let x = coset[0];
                let xin = group.inv(x);
                if h.members()
                    .iter()
                    .all(|&a| cell.stab.contains(group.mul(group.mul(xin, a), x)))
                {
                    out.push((j as u32, x));
                }
            }
        }
        out
    }

    fn coset_key(&self, cell: &OrbitCell, g: ElemId) -> ElemId {
        let group = self.cat.group();
        cell.stab
            .members()
            .iter()
            .map(|&s| group.mul(g, s))
            .min()
            .unwrap()
    }

    /// Evaluated boundary `d_n` at `G/H` as a sparse matrix with respect to
    /// `evaluated_basis` orderings.
    pub fn evaluated_boundary(&self, n: usize, h: &Subgroup) -> SparseMat {
        let group = self.cat.group();
        let src = self.evaluated_basis(n, h);
        let dst = self.evaluated_basis(n - 1, h);
        let index: HashMap<(u32, ElemId), usize> = dst
            .iter()
            .enumerate()
            .map(|(i, &(c, x))| ((c, x), i))
            .collect();
        let mut m = SparseMat::new(dst.len(), src.len());
        for (col, &(j, x)) in src.iter().enumerate() {
            for &(coeff, g, k) in &self.levels[n].cells[j as usize].boundary {
                let target = &self.levels[n - 1].cells[k as usize];
                let key = self.coset_key(target, group.mul(x, g));
                m.add(index[&(k, key)], col, coeff);
            }
        }
        m.normalize();
        m
    }

    /// The whole evaluated complex at `G/H` up to `n_max` (fixture scale).
    pub fn evaluated_complex(&self, h: &Subgroup, n_max: usize) -> ChainComplex {
        let top = n_max.min(self.length());
        let ranks: Vec<usize> = (0..=top)
            .map(|n| self.evaluated_basis(n, h).len())
            .collect();
        let boundaries: Vec<SparseMat> =
            (1..=top).map(|n| self.evaluated_boundary(n, h)).collect();
        ChainComplex::new(ranks, boundaries).expect("evaluated shapes agree")
    }

    // -- derived-functor complexes -----------------------------------------

    fn require_free(&self, n_max: usize) -> Result<(), ResolutionError> {
        for n in 0..=n_max.min(self.length()) {
            if !self.level_free[n] {
                return Err(ResolutionError::FamilyNotSemiFull);
            }
        }
        Ok(())
    }

    /// `C_* (x)_F N` for a left module `N`, assembled degreewise through the
    /// collapse of free summands: `Z[?, G/S] (x)_F N = N(G/S)`.
    ///
    /// When `N` is itself a tagged sum of left Yoneda modules the complex is
    /// instead the direct sum of the evaluated complexes at the generating
    /// objects, which is the same collapse applied on the other side.
    pub fn tensor_complex(
        &self,
        n_max: usize,
        coeffs: &BredonModule,
    ) -> Result<ChainComplex, ResolutionError> {
        assert_eq!(coeffs.variance(), Variance::Left, "tensor takes a left module");
        let top = n_max.min(self.length());
        self.require_free(top)?;
        if let Some(gens) = coeffs.free_generators() {
            return Ok(self.evaluated_sum_complex(top, gens));
        }
        let offsets: Vec<Vec<usize>> = (0..=top)
            .map(|n| {
                let mut off = Vec::with_capacity(self.levels[n].len());
                let mut acc = 0usize;
                for cell in &self.levels[n].cells {
                    off.push(acc);
                    acc += coeffs.rank(cell.stab_obj.unwrap());
                }
                off.push(acc);
                off
            })
            .collect();
        let mut boundaries = Vec::with_capacity(top);
        for n in 1..=top {
            let rows = *offsets[n - 1].last().unwrap();
            let cols = *offsets[n].last().unwrap();
            let mut m = SparseMat::new(rows, cols);
            for (j, cell) in self.levels[n].cells.iter().enumerate() {
                let src_obj = cell.stab_obj.unwrap();
                for &(coeff, g, k) in &cell.boundary {
                    let dst_cell = &self.levels[n - 1].cells[k as usize];
                    let dst_obj = dst_cell.stab_obj.unwrap();
                    let f = self
                        .cat
                        .morphism_from_element(src_obj, dst_obj, g)
                        .expect("boundary records are subconjugate");
                    let block = coeffs.act(&f); // N(src_obj) -> N(dst_obj)
                    for r in 0..block.rows {
                        for c in 0..block.cols {
                            let v = block[(r, c)];
                            if v != 0 {
                                m.add(
                                    offsets[n - 1][k as usize] + r,
                                    offsets[n][j] + c,
                                    coeff * v,
                                );
                            }
                        }
                    }
                }
            }
            m.normalize();
            boundaries.push(m);
        }
        let ranks: Vec<usize> = (0..=top).map(|n| *offsets[n].last().unwrap()).collect();
        Ok(ChainComplex::new(ranks, boundaries).expect("tensor complex shapes"))
    }

    fn evaluated_sum_complex(&self, top: usize, gens: &[usize]) -> ChainComplex {
        let subgroups: Vec<Subgroup> = gens
            .iter()
            .map(|&o| self.cat.object(o).subgroup.clone())
            .collect();
        let mut ranks = vec![0usize; top + 1];
        let mut parts: Vec<ChainComplex> = Vec::new();
        for h in &subgroups {
            let c = self.evaluated_complex(h, top);
            for n in 0..=top {
                ranks[n] += c.rank(n);
            }
            parts.push(c);
        }
        let mut boundaries = Vec::with_capacity(top);
        for n in 1..=top {
            let mut m = SparseMat::new(ranks[n - 1], ranks[n]);
            let mut row_off = 0usize;
            let mut col_off = 0usize;
            for part in &parts {
                let b = &part.boundaries[n - 1];
                for (j, col) in b.cols.iter().enumerate() {
                    for &(r, v) in col {
                        m.add(row_off + r as usize, col_off + j, v);
                    }
                }
                row_off += part.rank(n - 1);
                col_off += part.rank(n);
            }
            m.normalize();
            boundaries.push(m);
        }
        ChainComplex::new(ranks, boundaries).expect("sum complex shapes")
    }

    /// `mor_F(C_*, M)` for a right module `M`: the cochain complex with
    /// blocks `M(G/S_cell)` via the Yoneda collapse.
    pub fn cochain_complex(
        &self,
        n_max: usize,
        coeffs: &BredonModule,
    ) -> Result<CochainComplex, ResolutionError> {
        assert_eq!(coeffs.variance(), Variance::Right, "mor takes a right module");
        let top = n_max.min(self.length());
        self.require_free(top)?;
        let offsets: Vec<Vec<usize>> = (0..=top)
            .map(|n| {
                let mut off = Vec::with_capacity(self.levels[n].len());
                let mut acc = 0usize;
                for cell in &self.levels[n].cells {
                    off.push(acc);
                    acc += coeffs.rank(cell.stab_obj.unwrap());
                }
                off.push(acc);
                off
            })
            .collect();
        let mut deltas = Vec::with_capacity(top);
        for n in 1..=top {
            // delta^(n): C^(n-1) -> C^n, one row block per level-n cell
            let rows = *offsets[n].last().unwrap();
            let cols = *offsets[n - 1].last().unwrap();
            let mut m = SparseMat::new(rows, cols);
            for (l, cell) in self.levels[n].cells.iter().enumerate() {
                let src_obj = cell.stab_obj.unwrap();
                for &(coeff, g, k) in &cell.boundary {
                    let dst_cell = &self.levels[n - 1].cells[k as usize];
                    let dst_obj = dst_cell.stab_obj.unwrap();
                    let f = self
                        .cat
                        .morphism_from_element(src_obj, dst_obj, g)
                        .expect("boundary records are subconjugate");
                    let block = coeffs.act(&f); // M(dst_obj) -> M(src_obj)
                    for r in 0..block.rows {
                        for c in 0..block.cols {
                            let v = block[(r, c)];
                            if v != 0 {
                                m.add(
                                    offsets[n][l] + r,
                                    offsets[n - 1][k as usize] + c,
                                    coeff * v,
                                );
                            }
                        }
                    }
                }
            }
            m.normalize();
            deltas.push(m);
        }
        let ranks: Vec<usize> = (0..=top).map(|n| *offsets[n].last().unwrap()).collect();
        Ok(CochainComplex::new(ranks, deltas).expect("cochain shapes"))
    }

    // -- structural checks --------------------------------------------------

    /// `d . d = 0` checked at the orbit generators; by freeness this settles
    /// the composite at every object.
    pub fn check_dd_zero_generators(&self) -> Result<(), ResolutionError> {
        let group = self.cat.group();
        for n in 2..=self.length() {
            for (j, cell) in self.levels[n].cells.iter().enumerate() {
                let mut acc: HashMap<(u32, ElemId), i64> = HashMap::new();
                for &(c1, g1, k1) in &cell.boundary {
                    for &(c2, g2, k2) in &self.levels[n - 1].cells[k1 as usize].boundary {
                        let target = &self.levels[n - 2].cells[k2 as usize];
                        let key = self.coset_key(target, group.mul(g1, g2));
                        *acc.entry((k2, key)).or_insert(0) += c1 * c2;
                    }
                }
                if acc.values().any(|&v| v != 0) {
                    return Err(ResolutionError::BoundarySquareNonzero { dim: n, cell: j });
                }
            }
        }
        Ok(())
    }

    /// Streams the evaluated `d.d = 0` check at one object without
    /// materialising matrices.
    pub fn check_dd_zero_evaluated(&self, h: &Subgroup) -> bool {
        let group = self.cat.group();
        for n in 2..=self.length() {
            for (j, x) in self.evaluated_basis(n, h) {
                let mut acc: HashMap<(u32, ElemId), i64> = HashMap::new();
                for &(c1, g1, k1) in &self.levels[n].cells[j as usize].boundary {
                    for &(c2, g2, k2) in &self.levels[n - 1].cells[k1 as usize].boundary {
                        let target = &self.levels[n - 2].cells[k2 as usize];
                        let key = self.coset_key(target, group.mul(group.mul(x, g1), g2));
                        *acc.entry((k2, key)).or_insert(0) += c1 * c2;
                    }
                }
                if acc.values().any(|&v| v != 0) {
                    return false;
                }
            }
        }
        true
    }
}

// ---------------------------------------------------------------------------
// The standard resolution.
// ---------------------------------------------------------------------------

/// `|Delta_n| = |Delta_0|^(n+1)`: the dry-run size of each tuple level.
pub fn standard_resolution_sizes(cat: &OrbitCategory, n: usize) -> Vec<usize> {
    let total: usize = (0..cat.object_count())
        .map(|o| cat.object(o).cosets.len())
        .sum();
    (0..=n)
        .map(|k| total.checked_pow(k as u32 + 1).unwrap_or(usize::MAX))
        .collect()
}

fn canonical_tuple(d0: &Delta0, order: usize, tuple: &[u32]) -> (Vec<u32>, ElemId) {
    let mut best: Option<(Vec<u32>, ElemId)> = None;
    let mut scratch = vec![0u32; tuple.len()];
    for g in 0..order {
        for (i, &c) in tuple.iter().enumerate() {
            scratch[i] = d0.action[g][c as usize];
        }
        if best.as_ref().map_or(true, |(b, _)| scratch < *b) {
            best = Some((scratch.clone(), g));
        }
    }
    best.unwrap()
}

/// Builds the standard resolution truncated at length `n_max`.  Tuples are
/// `(g_0 K_0, ..., g_n K_n)` with the diagonal translation action; the
/// boundary is the alternating sum of coordinate deletions.  For a
/// non-semi-full family the chain is still a resolution, but levels whose
/// stabilisers escape the family are flagged non-free.
pub fn standard_resolution(
    cat: &Arc<OrbitCategory>,
    n_max: usize,
    cell_budget: usize,
) -> Result<FreeResolution, ResolutionError> {
    let sizes = standard_resolution_sizes(cat, n_max);
    if let Some(&need) = sizes.iter().max() {
        if need > cell_budget {
            return Err(ResolutionError::BudgetExceeded {
                need,
                budget: cell_budget,
            });
        }
    }
    let group = cat.group();
    let order = group.order();
    let d0 = Delta0::build(cat);

    let stab_of_tuple = |tuple: &[u32]| -> Subgroup {
        let members: Vec<ElemId> = (0..order)
            .filter(|&g| tuple.iter().all(|&c| d0.action[g][c as usize] == c))
            .collect();
        Subgroup::new(Arc::clone(group), members).expect("stabiliser")
    };

    let mut levels: Vec<ResolutionLevel> = Vec::with_capacity(n_max + 1);
    let mut indexes: Vec<HashMap<Vec<u32>, u32>> = Vec::with_capacity(n_max + 1);

    // level 0: one orbit per family member, representative = least coset
    let mut cells0 = Vec::with_capacity(cat.object_count());
    let mut index0 = HashMap::new();
    for o in 0..cat.object_count() {
        let tuple = vec![d0.offsets[o] as u32];
        let stab = stab_of_tuple(&tuple);
        let stab_obj = cat.object_of_subgroup(&stab);
        index0.insert(tuple.clone(), cells0.len() as u32);
        cells0.push(OrbitCell {
            stab,
            stab_obj,
            boundary: Vec::new(),
            tuple: Some(tuple),
        });
    }
    levels.push(ResolutionLevel { cells: cells0 });
    indexes.push(index0);

    for n in 1..=n_max {
        let mut cells = Vec::new();
        let mut index: HashMap<Vec<u32>, u32> = HashMap::new();
        for prev in &levels[n - 1].cells {
            let prev_tuple = prev.tuple.as_ref().unwrap();
            let stab = &prev.stab;
            // representatives of stab-orbits on Delta_0
            for c in 0..d0.total as u32 {
                let min_in_orbit = stab
                    .members()
                    .iter()
                    .map(|&s| d0.action[s][c as usize])
                    .min()
                    .unwrap();
                if min_in_orbit != c {
                    continue;
                }
                let mut tuple = prev_tuple.clone();
                tuple.push(c);
                let (canon, _) = canonical_tuple(&d0, order, &tuple);
                let ix = cells.len() as u32;
                index.insert(canon.clone(), ix);
                let stab_new = stab_of_tuple(&canon);
                let stab_obj = cat.object_of_subgroup(&stab_new);
                cells.push(OrbitCell {
                    stab: stab_new,
                    stab_obj,
                    boundary: Vec::new(),
                    tuple: Some(canon),
                });
            }
        }
        // alternating-face boundary records, resolved through the canonical
        // form of each face
        let records: Vec<Vec<(i64, ElemId, u32)>> = cells
            .iter()
            .map(|cell| {
                let tuple = cell.tuple.as_ref().unwrap();
                let mut recs = Vec::with_capacity(tuple.len());
                for i in 0..tuple.len() {
                    let mut face: Vec<u32> = Vec::with_capacity(tuple.len() - 1);
                    face.extend_from_slice(&tuple[..i]);
                    face.extend_from_slice(&tuple[i + 1..]);
                    let (canon, g) = canonical_tuple(&d0, order, &face);
                    let target = indexes[n - 1][&canon];
                    let sign = if i % 2 == 0 { 1 } else { -1 };
                    // canon = g . face, so face = g^-1 . canon
                    recs.push((sign, group.inv(g), target));
                }
                recs
            })
            .collect();
        for (cell, recs) in cells.iter_mut().zip(records) {
            cell.boundary = recs;
        }
        levels.push(ResolutionLevel { cells });
        indexes.push(index);
    }

    let level_free: Vec<bool> = levels
        .iter()
        .map(|l| l.cells.iter().all(|c| c.stab_obj.is_some()))
        .collect();
    Ok(FreeResolution {
        cat: Arc::clone(cat),
        levels,
        level_free,
        delta0: Some(d0),
    })
}

// -- contracting homotopy ----------------------------------------------------

/// Streams the contracting-homotopy identity
/// `d_{n+1} h_n + h_{n-1} d_n = id` over the evaluated basis tuples of the
/// standard resolution at `G/H` for `0 <= n <= deg_max`, including the
/// augmentation step at degree zero.  Success certifies that the evaluated
/// augmented complex is exact in those degrees.
pub fn check_contracting_homotopy(
    res: &FreeResolution,
    obj: usize,
    deg_max: usize,
) -> Result<(), ResolutionError> {
    let d0 = res
        .delta0
        .as_ref()
        .expect("homotopy data exists for the standard resolution");
    let cat = &res.cat;
    let h_sub = &cat.object(obj).subgroup;
    let prepend = d0.offsets[obj] as u32; // the coset 1*H, fixed by H
    let fixed = d0.fixed(h_sub);
    if fixed.is_empty() {
        return Ok(());
    }
    let deg_max = deg_max.min(res.length().saturating_sub(1));
    for n in 0..=deg_max {
        // odometer over (Delta_0^H)^(n+1)
        let mut idx = vec![0usize; n + 1];
        loop {
            let tuple: Vec<u32> = idx.iter().map(|&i| fixed[i]).collect();
            let mut acc: HashMap<Vec<u32>, i64> = HashMap::new();
            // d_{n+1} (prepend, tuple)
            {
                let mut big = Vec::with_capacity(n + 2);
                big.push(prepend);
                big.extend_from_slice(&tuple);
                for i in 0..big.len() {
                    let mut face = Vec::with_capacity(n + 1);
                    face.extend_from_slice(&big[..i]);
                    face.extend_from_slice(&big[i + 1..]);
                    let sign = if i % 2 == 0 { 1 } else { -1 };
                    *acc.entry(face).or_insert(0) += sign;
                }
            }
            // h_{n-1} d_n(tuple); at n = 0 the augmented term h_{-1} eps
            if n == 0 {
                *acc.entry(vec![prepend]).or_insert(0) += 1;
            } else {
                for i in 0..tuple.len() {
                    let mut face = Vec::with_capacity(n + 1);
                    face.push(prepend);
                    face.extend_from_slice(&tuple[..i]);
                    face.extend_from_slice(&tuple[i + 1..]);
                    let sign = if i % 2 == 0 { 1 } else { -1 };
                    *acc.entry(face).or_insert(0) += sign;
                }
            }
            *acc.entry(tuple.clone()).or_insert(0) -= 1;
            if acc.values().any(|&v| v != 0) {
                return Err(ResolutionError::HomotopyIdentityFailed { degree: n });
            }
            // advance odometer
            let mut pos = 0;
            loop {
                if pos > n {
                    break;
                }
                idx[pos] += 1;
                if idx[pos] < fixed.len() {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
            if pos > n {
                break;
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Resolutions from equivariant cell data.
// ---------------------------------------------------------------------------

/// Orbit-cell input: a stabiliser and signed, translated boundary records
/// into the previous dimension.
pub struct CwCell {
    pub stab: Subgroup,
    pub boundary: Vec<(i64, ElemId, u32)>,
}

/// Per-object report of how far the evaluated augmented complexes vanish;
/// cell data promises contractible fixed sets, the finite complex can only
/// confirm vanishing homology within its own degrees.
pub struct CwValidity {
    pub object_reports: Vec<(usize, Vec<crate::abgroup::AbGroup>)>,
    pub is_model_like: bool,
}

/// Assembles the free resolution carried by equivariant cell data.  Errors
/// if a stabiliser escapes the family or the boundary square is nonzero.
pub fn resolution_from_cw(
    cat: &Arc<OrbitCategory>,
    dims: Vec<Vec<CwCell>>,
) -> Result<FreeResolution, ResolutionError> {
    let mut levels = Vec::with_capacity(dims.len());
    for (dim, cells_in) in dims.into_iter().enumerate() {
        let mut cells = Vec::with_capacity(cells_in.len());
        for (ix, c) in cells_in.into_iter().enumerate() {
            let stab_obj = cat.object_of_subgroup(&c.stab);
            if stab_obj.is_none() {
                return Err(ResolutionError::StabilizerOutsideFamily { dim, cell: ix });
            }
            if dim > 0 {
                if let Some(prev) = levels.last() {
                    let prev: &ResolutionLevel = prev;
                    for &(_, _, k) in &c.boundary {
                        assert!(
                            (k as usize) < prev.cells.len(),
                            "boundary target out of range"
                        );
                    }
                }
            }
            cells.push(OrbitCell {
                stab: c.stab,
                stab_obj,
                boundary: c.boundary,
                tuple: None,
            });
        }
        levels.push(ResolutionLevel { cells });
    }
    let level_free = vec![true; levels.len()];
    let res = FreeResolution {
        cat: Arc::clone(cat),
        levels,
        level_free,
        delta0: None,
    };
    res.check_dd_zero_generators()?;
    Ok(res)
}

/// Evaluated-acyclicity report: the reduced homology of the augmented
/// complex at every object.  For `truncated` data the top degree is not a
/// statement about the model and is omitted; finite models are checked in
/// every degree.
pub fn cw_validity(res: &FreeResolution, truncated: bool) -> CwValidity {
    let mut object_reports = Vec::new();
    let mut ok = true;
    let top = res.length();
    for o in 0..res.cat.object_count() {
        let h = &res.cat.object(o).subgroup;
        let reduced = reduced_homology_at(res, h, top);
        let keep = if truncated && top > 0 { top - 1 } else { top };
        let groups: Vec<crate::abgroup::AbGroup> =
            reduced.into_iter().take(keep + 1).collect();
        if groups.iter().any(|g| !g.is_zero()) {
            ok = false;
        }
        object_reports.push((o, groups));
    }
    CwValidity {
        object_reports,
        is_model_like: ok,
    }
}

/// Reduced homology of the augmented evaluated complex at `G/H`, degrees
/// `0..=top`.
pub fn reduced_homology_at(
    res: &FreeResolution,
    h: &Subgroup,
    top: usize,
) -> Vec<crate::abgroup::AbGroup> {
    let complex = res.evaluated_complex(h, top);
    let c0 = complex.rank(0);
    let mut aug = SparseMat::new(1, c0);
    for j in 0..c0 {
        aug.add(0, j, 1);
    }
    aug.normalize();
    let mut ranks = vec![1usize];
    ranks.extend(complex.ranks.iter().copied());
    let mut boundaries = vec![aug];
    boundaries.extend(complex.boundaries.iter().cloned());
    let augmented = ChainComplex::new(ranks, boundaries).expect("augmented complex");
    let hs = augmented
        .homology_up_to(top + 1)
        .expect("augmented complex is a complex");
    // degree n of the augmented complex is reduced degree n - 1
    (1..=top + 1).map(|n| hs[n].clone()).collect()
}

/// Verifies the stabiliser formula on every cell of the standard
/// resolution: the elementwise stabiliser of a representative tuple must
/// equal the intersection of the conjugated coset subgroups, and membership
/// in the family is reported per level.
pub fn check_stabilizer_formula(res: &FreeResolution) -> (bool, bool) {
    let Some(d0) = res.delta0.as_ref() else {
        return (res.is_free(), true);
    };
    let cat = &res.cat;
    let group = cat.group();
    let mut all_in_family = true;
    let mut formula_ok = true;
    for level in &res.levels {
        for cell in &level.cells {
            if cell.stab_obj.is_none() {
                all_in_family = false;
            }
            let Some(tuple) = cell.tuple.as_ref() else {
                continue;
            };
            // formula route: intersect K_i^(g_i^-1) over the coordinates
            let mut formula: Option<Subgroup> = None;
            for &c in tuple {
                let obj = d0.object_of[c as usize] as usize;
                let k = &cat.object(obj).subgroup;
                let g_i = cat.object(obj).cosets[c as usize - d0.offsets[obj]][0];
                let conj = crate::group::conjugate(k, group.inv(g_i));
                formula = Some(match formula {
                    None => conj,
                    Some(acc) => crate::group::intersect(&acc, &conj),
                });
            }
            if formula.as_ref().map(|f| f.members()) != Some(cell.stab.members()) {
                formula_ok = false;
            }
        }
    }
    (all_in_family, formula_ok)
}

/// Kernel data of the evaluated `d_n` at each object, plus the check that
/// the orbit-category action carries kernels into kernels.
pub struct KernelReport {
    pub kernel_ranks: Vec<usize>,
    pub action_consistent: bool,
}

pub fn kernel_at(res: &FreeResolution, n: usize) -> Result<KernelReport, ResolutionError> {
    if n == 0 || n > res.length() {
        return Err(ResolutionError::DegreeOutOfRange {
            degree: n,
            truncation: res.length(),
        });
    }
    let cat = &res.cat;
    let group = cat.group();
    let mut kernel_ranks = Vec::new();
    let mut kernels: Vec<(Vec<(u32, ElemId)>, Vec<Vec<num_bigint::BigInt>>)> = Vec::new();
    for o in 0..cat.object_count() {
        let h = &cat.object(o).subgroup;
        let basis = res.evaluated_basis(n, h);
        let d = res.evaluated_boundary(n, h).to_dense();
        let ker = crate::matrix::kernel_basis(&d);
        kernel_ranks.push(ker.len());
        kernels.push((basis, ker));
    }
    // action consistency: for every morphism, d_src . act . K_dst = 0
    let mut action_consistent = true;
    for f in cat.all_morphisms() {
        let (src_basis, _) = &kernels[f.src];
        let (dst_basis, dst_ker) = &kernels[f.dst];
        if dst_ker.is_empty() {
            continue;
        }
        let g = cat.rep(&f);
        let src_pos: HashMap<(u32, ElemId), usize> = src_basis
            .iter()
            .enumerate()
            .map(|(i, &k)| (k, i))
            .collect();
        let mut act = IMat::zeros(src_basis.len(), dst_basis.len());
        for (j, &(cell, x)) in dst_basis.iter().enumerate() {
            let target = &res.levels[n].cells[cell as usize];
            let key = res.coset_key(target, group.mul(g, x));
            act[(src_pos[&(cell, key)], j)] = 1;
        }
        let d_src = res
            .evaluated_boundary(n, &cat.object(f.src).subgroup)
            .to_dense()
            .to_big();
        let act_big = act.to_big();
        for kvec in dst_ker {
            let moved: Vec<num_bigint::BigInt> = (0..act_big.rows)
                .map(|i| {
                    (0..act_big.cols)
                        .map(|j| act_big[(i, j)].clone() * kvec[j].clone())
                        .sum()
                })
                .collect();
            let image: Vec<num_bigint::BigInt> = (0..d_src.rows)
                .map(|i| {
                    (0..d_src.cols)
                        .map(|j| d_src[(i, j)].clone() * moved[j].clone())
                        .sum()
                })
                .collect();
            if image.iter().any(|v| !num_traits::Zero::is_zero(v)) {
                action_consistent = false;
            }
        }
    }
    Ok(KernelReport {
        kernel_ranks,
        action_consistent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abgroup::AbGroup;
    use crate::family::{Family, FamilySpec};
    use crate::group::{cyclic, symmetric_3, trivial_group, FiniteGroup};
    use crate::module::Variance;

    fn cat_of(g: &Arc<FiniteGroup>, spec: FamilySpec) -> Arc<OrbitCategory> {
        OrbitCategory::build(Family::build(g, &spec).unwrap()).unwrap()
    }

    #[test]
    fn c2_all_family_sizes() {
        let g = cyclic(2);
        let cat = cat_of(&g, FamilySpec::All);
        // two cosets of 1 and one coset of C2
        let sizes = standard_resolution_sizes(&cat, 4);
        assert_eq!(sizes, vec![3, 9, 27, 81, 243]);
        let res = standard_resolution(&cat, 4, DEFAULT_CELL_BUDGET).unwrap();
        assert!(res.is_free());
        // orbit sizes add back up to |Delta_n|
        for (n, level) in res.levels.iter().enumerate() {
            let total: usize = level
                .cells
                .iter()
                .map(|c| g.order() / c.stab.order())
                .sum();
            assert_eq!(total, sizes[n], "level {n}");
        }
        res.check_dd_zero_generators().unwrap();
        for o in 0..cat.object_count() {
            assert!(res.check_dd_zero_evaluated(&cat.object(o).subgroup));
            check_contracting_homotopy(&res, o, 3).unwrap();
        }
    }

    #[test]
    fn budget_is_enforced() {
        let g = symmetric_3();
        let cat = cat_of(&g, FamilySpec::All);
        assert!(matches!(
            standard_resolution(&cat, 4, 1000),
            Err(ResolutionError::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn stabilizer_formula_and_family_membership() {
        let g = symmetric_3();
        let cat = cat_of(&g, FamilySpec::All);
        let res = standard_resolution(&cat, 2, DEFAULT_CELL_BUDGET).unwrap();
        let (in_family, formula_ok) = check_stabilizer_formula(&res);
        assert!(in_family);
        assert!(formula_ok);
        // non-semi-full family: the three C2s without the trivial subgroup
        let t = g
            .elem_id(&crate::perm::Perm::parse_cycles("(1 2)", 3).unwrap())
            .unwrap();
        let h = crate::group::Subgroup::generated_by(&g, &[t]);
        let fam = Family::from_seeds(&g, vec![h]);
        assert!(!fam.is_semi_full());
        let cat2 = OrbitCategory::build(fam).unwrap();
        let res2 = standard_resolution(&cat2, 2, DEFAULT_CELL_BUDGET).unwrap();
        assert!(!res2.is_free()); // intersections of distinct C2s are trivial
        let n = crate::module::BredonModule::trivial(&cat2, Variance::Left);
        assert!(matches!(
            res2.tensor_complex(2, &n),
            Err(ResolutionError::FamilyNotSemiFull)
        ));
    }

    #[test]
    fn kernel_ranks_match_exactness_bookkeeping_for_c2() {
        let g = cyclic(2);
        let cat = cat_of(&g, FamilySpec::Trivial);
        let res = standard_resolution(&cat, 4, DEFAULT_CELL_BUDGET).unwrap();
        // evaluated at G/1 the complex is the classical bar complex with
        // ranks 2^(n+1); exactness of the augmented complex forces the
        // kernel ranks 3, 5, 11, 21 by rank-nullity
        for (n, expected) in [(1usize, 3usize), (2, 5), (3, 11), (4, 21)] {
            let rep = kernel_at(&res, n).unwrap();
            assert_eq!(rep.kernel_ranks, vec![expected], "degree {n}");
            assert!(rep.action_consistent);
        }
        // d_n = 0 never happens here, but out-of-range degrees error
        assert!(kernel_at(&res, 9).is_err());
    }

    #[test]
    fn point_model_resolves_the_trivial_module() {
        let g = symmetric_3();
        let cat = cat_of(&g, FamilySpec::All);
        let whole = crate::group::Subgroup::whole(&g);
        let res = resolution_from_cw(
            &cat,
            vec![vec![CwCell {
                stab: whole,
                boundary: Vec::new(),
            }]],
        )
        .unwrap();
        let validity = cw_validity(&res, false);
        assert!(validity.is_model_like);
        for (_, groups) in &validity.object_reports {
            assert!(groups.iter().all(|g| g.is_zero()));
        }
    }

    #[test]
    fn circle_model_for_the_trivial_group_is_flagged() {
        let g = trivial_group();
        let cat = cat_of(&g, FamilySpec::All);
        let triv = crate::group::Subgroup::whole(&g);
        let res = resolution_from_cw(
            &cat,
            vec![
                vec![CwCell {
                    stab: triv.clone(),
                    boundary: Vec::new(),
                }],
                vec![CwCell {
                    stab: triv,
                    // the loop edge: boundary v - v = 0
                    boundary: vec![(1, 0, 0), (-1, 0, 0)],
                }],
            ],
        )
        .unwrap();
        let validity = cw_validity(&res, false);
        assert!(!validity.is_model_like);
        let (_, groups) = &validity.object_reports[0];
        assert!(groups[0].is_zero()); // reduced H_0
        assert_eq!(groups[1], AbGroup::free(1)); // H_1 = Z: not contractible
    }

    #[test]
    fn cw_rejects_foreign_stabilizers_and_broken_squares() {
        let g = symmetric_3();
        let cat = cat_of(&g, FamilySpec::Trivial);
        let whole = crate::group::Subgroup::whole(&g);
        assert!(matches!(
            resolution_from_cw(
                &cat,
                vec![vec![CwCell {
                    stab: whole,
                    boundary: Vec::new(),
                }]],
            ),
            Err(ResolutionError::StabilizerOutsideFamily { dim: 0, cell: 0 })
        ));
        let one = crate::group::Subgroup::trivial(&g);
        assert!(matches!(
            resolution_from_cw(
                &cat,
                vec![
                    vec![CwCell { stab: one.clone(), boundary: Vec::new() }],
                    vec![CwCell { stab: one.clone(), boundary: vec![(1, 0, 0)] }],
                    vec![CwCell { stab: one, boundary: vec![(1, 0, 0)] }],
                ],
            ),
            Err(ResolutionError::BoundarySquareNonzero { .. })
        ));
    }

    #[test]
    fn simplicial_model_reproduces_standard_boundaries() {
        let g = cyclic(2);
        let cat = cat_of(&g, FamilySpec::All);
        let res = standard_resolution(&cat, 3, DEFAULT_CELL_BUDGET).unwrap();
        let dims: Vec<Vec<CwCell>> = res
            .levels
            .iter()
            .map(|level| {
                level
                    .cells
                    .iter()
                    .map(|c| CwCell {
                        stab: c.stab.clone(),
                        boundary: c.boundary.clone(),
                    })
                    .collect()
            })
            .collect();
        let rebuilt = resolution_from_cw(&cat, dims).unwrap();
        for o in 0..cat.object_count() {
            let h = &cat.object(o).subgroup;
            for n in 1..=3 {
                assert_eq!(
                    res.evaluated_boundary(n, h).to_dense(),
                    rebuilt.evaluated_boundary(n, h).to_dense()
                );
            }
        }
    }
}

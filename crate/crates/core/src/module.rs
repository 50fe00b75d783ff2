//! Bredon modules: functors from the orbit category to abelian groups with
//! chosen free bases, given by per-object ranks and per-morphism integer
//! matrices.  Free modules on `G`-sets and on `F`-sets, the trivial module,
//! Yoneda modules and morphisms of modules all live here.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::error::ModuleError;
use crate::group::{ElemId, FiniteGroup, Subgroup};
use crate::matrix::IMat;
use crate::orbit::{OrbitCategory, OrbitMorphism};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Variance {
    /// Contravariant functors ("right" modules): coefficients of cohomology.
    Right,
    /// Covariant functors ("left" modules): coefficients of homology.
    Left,
}

/// A finite `G`-set with its orbit decomposition and stabilisers.
pub struct GSetFinite {
    group: Arc<FiniteGroup>,
    n_points: usize,
    action: Vec<Vec<u32>>, // action[g][x] = g.x
    orbits: Vec<GOrbit>,
}

pub struct GOrbit {
    pub rep: u32,
    pub stabilizer: Subgroup,
    pub points: Vec<u32>,
}

impl GSetFinite {
    pub fn from_action(group: Arc<FiniteGroup>, action: Vec<Vec<u32>>) -> Self {
        let n_points = action.first().map_or(0, |row| row.len());
        assert_eq!(action.len(), group.order(), "need one row per group element");
        // action axioms
        for (g, row) in action.iter().enumerate() {
            assert_eq!(row.len(), n_points);
            for x in 0..n_points {
                assert!((row[x] as usize) < n_points);
                for h in 0..group.order() {
                    assert_eq!(
                        action[group.mul(g, h)][x],
                        action[g][action[h][x] as usize],
                        "action is not associative"
                    );
                }
            }
        }
        let mut seen = vec![false; n_points];
        let mut orbits = Vec::new();
        for x in 0..n_points {
            if seen[x] {
                continue;
            }
            let mut points: Vec<u32> = (0..group.order())
                .map(|g| action[g][x])
                .collect::<std::collections::BTreeSet<_>>()
                .into_iter()
                .collect();
            points.sort_unstable();
            for &p in &points {
                seen[p as usize] = true;
            }
            let stab: Vec<ElemId> = (0..group.order())
                .filter(|&g| action[g][x] == x as u32)
                .collect();
            let stabilizer = Subgroup::new(Arc::clone(&group), stab).expect("stabiliser");
            orbits.push(GOrbit {
                rep: x as u32,
                stabilizer,
                points,
            });
        }
        GSetFinite {
            group,
            n_points,
            action,
            orbits,
        }
    }

    /// Disjoint union of coset spaces `G/K` for the listed subgroups.
    pub fn disjoint_cosets(group: &Arc<FiniteGroup>, subgroups: &[Subgroup]) -> Self {
        let mut coset_reps: Vec<Vec<ElemId>> = Vec::new(); // per point: sorted coset
        let mut offsets = Vec::new();
        for k in subgroups {
            offsets.push(coset_reps.len());
            let mut seen = vec![false; group.order()];
            for x in 0..group.order() {
                if seen[x] {
                    continue;
                }
                let mut coset: Vec<ElemId> =
                    k.members().iter().map(|&m| group.mul(x, m)).collect();
                coset.sort_unstable();
                for &y in &coset {
                    seen[y] = true;
                }
                coset_reps.push(coset);
            }
        }
        let n_points = coset_reps.len();
        let point_of: HashMap<Vec<ElemId>, u32> = coset_reps
            .iter()
            .enumerate()
            .map(|(i, c)| (c.clone(), i as u32))
            .collect();
        let mut action = vec![vec![0u32; n_points]; group.order()];
        for g in 0..group.order() {
            for (x, coset) in coset_reps.iter().enumerate() {
                let mut moved: Vec<ElemId> = coset.iter().map(|&y| group.mul(g, y)).collect();
                moved.sort_unstable();
                action[g][x] = point_of[&moved];
            }
        }
        GSetFinite::from_action(Arc::clone(group), action)
    }

    pub fn point(group: &Arc<FiniteGroup>) -> Self {
        GSetFinite::from_action(Arc::clone(group), vec![vec![0u32]; group.order()])
    }

    pub fn empty(group: &Arc<FiniteGroup>) -> Self {
        GSetFinite::from_action(Arc::clone(group), vec![vec![]; group.order()])
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.n_points
    }

    pub fn is_empty(&self) -> bool {
        self.n_points == 0
    }

    pub fn apply(&self, g: ElemId, x: u32) -> u32 {
        self.action[g][x as usize]
    }

    pub fn orbits(&self) -> &[GOrbit] {
        &self.orbits
    }

    /// Ascending list of `H`-fixed points.
    pub fn fixed_points(&self, h: &Subgroup) -> Vec<u32> {
        (0..self.n_points as u32)
            .filter(|&x| h.members().iter().all(|&g| self.action[g][x as usize] == x))
            .collect()
    }
}

/// An `F`-set: a finite set fibred over the family, each element assigned a
/// member subgroup.  Component `Delta_H` is the fibre over `H`.
pub struct FSet {
    cat: Arc<OrbitCategory>,
    pub assignment: Vec<usize>, // element -> object index
}

impl FSet {
    pub fn new(cat: Arc<OrbitCategory>, assignment: Vec<usize>) -> Self {
        assert!(assignment.iter().all(|&o| o < cat.object_count()));
        FSet { cat, assignment }
    }

    pub fn component(&self, obj: usize) -> Vec<usize> {
        self.assignment
            .iter()
            .enumerate()
            .filter(|(_, &o)| o == obj)
            .map(|(i, _)| i)
            .collect()
    }

    /// The free right module on this `F`-set: one Yoneda summand per element.
    pub fn free_module(&self) -> BredonModule {
        BredonModule::free_right_sum(&self.cat, &self.assignment)
    }
}

enum ActionSource {
    Table(Vec<Arc<IMat>>),
    FreeGSet {
        gset: Arc<GSetFinite>,
        fixed: Vec<Vec<u32>>, // per object: ascending fixed points (the basis)
        cache: Mutex<HashMap<usize, Arc<IMat>>>,
    },
}

/// A Bredon module over a materialised orbit category.  Values are free
/// abelian groups with chosen ordered bases; every morphism of the category
/// acts by an integer matrix.
pub struct BredonModule {
    cat: Arc<OrbitCategory>,
    variance: Variance,
    ranks: Vec<usize>,
    source: ActionSource,
    /// `Some(objects)` when the module is tagged as the direct sum of
    /// Yoneda modules on those objects, in basis order.
    free_gens: Option<Vec<usize>>,
    /// Orbit stabilisers outside the family (the module is then a functor
    /// but not free); empty for honest frees.
    pub stab_warnings: Vec<Subgroup>,
}

impl fmt::Debug for BredonModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BredonModule({:?}, ranks {:?})", self.variance, self.ranks)
    }
}

impl BredonModule {
    pub fn cat(&self) -> &Arc<OrbitCategory> {
        &self.cat
    }

    pub fn variance(&self) -> Variance {
        self.variance
    }

    pub fn rank(&self, obj: usize) -> usize {
        self.ranks[obj]
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn is_zero(&self) -> bool {
        self.ranks.iter().all(|&r| r == 0)
    }

    pub fn free_generators(&self) -> Option<&[usize]> {
        self.free_gens.as_deref()
    }

    /// The matrix of the functor on `f`.
    ///
    /// Right modules: `act(f): M(dst) -> M(src)`, shape `ranks[src] x ranks[dst]`.
    /// Left modules: `act(f): M(src) -> M(dst)`, shape `ranks[dst] x ranks[src]`.
    pub fn act(&self, f: &OrbitMorphism) -> Arc<IMat> {
        match &self.source {
            ActionSource::Table(acts) => Arc::clone(&acts[self.cat.morphism_id(f)]),
            ActionSource::FreeGSet { gset, fixed, cache } => {
                let id = self.cat.morphism_id(f);
                if let Some(m) = cache.lock().unwrap().get(&id) {
                    return Arc::clone(m);
                }
                // f_{g,H,K}: X^K -> X^H sends x to g.x (contravariant).
                let g = self.cat.rep(f);
                let src_fixed = &fixed[f.src];
                let dst_fixed = &fixed[f.dst];
                let pos: HashMap<u32, usize> = src_fixed
                    .iter()
                    .enumerate()
                    .map(|(i, &x)| (x, i))
                    .collect();
                let mut m = IMat::zeros(src_fixed.len(), dst_fixed.len());
                for (j, &x) in dst_fixed.iter().enumerate() {
                    let gx = gset.apply(g, x);
                    m[(pos[&gx], j)] = 1;
                }
                let m = Arc::new(m);
                cache.lock().unwrap().insert(id, Arc::clone(&m));
                m
            }
        }
    }

    /// Builds a module from an explicit action table indexed by the flat
    /// morphism id.  Functoriality is the caller's promise; `validate`
    /// checks it exhaustively.
    pub fn from_table(
        cat: Arc<OrbitCategory>,
        variance: Variance,
        ranks: Vec<usize>,
        acts: Vec<IMat>,
    ) -> Result<Self, ModuleError> {
        if acts.len() != cat.total_morphisms() {
            return Err(ModuleError::ShapeMismatch(format!(
                "{} action matrices for {} morphisms",
                acts.len(),
                cat.total_morphisms()
            )));
        }
        for f in cat.all_morphisms() {
            let m = &acts[cat.morphism_id(&f)];
            let (er, ec) = expected_shape(variance, &ranks, &f);
            if m.rows != er || m.cols != ec {
                return Err(ModuleError::ShapeMismatch(format!(
                    "action of {:?} is {}x{}, expected {}x{}",
                    f, m.rows, m.cols, er, ec
                )));
            }
        }
        Ok(BredonModule {
            cat,
            variance,
            ranks,
            source: ActionSource::Table(acts.into_iter().map(Arc::new).collect()),
            free_gens: None,
            stab_warnings: Vec::new(),
        })
    }

    fn with_free_gens(mut self, gens: Vec<usize>) -> Self {
        self.free_gens = Some(gens);
        self
    }

    /// The constant module: rank one everywhere, every morphism acts as the
    /// identity.  Both a left and a right module; pick the variance needed.
    pub fn trivial(cat: &Arc<OrbitCategory>, variance: Variance) -> Self {
        let ranks = vec![1; cat.object_count()];
        let acts = cat
            .all_morphisms()
            .iter()
            .map(|_| IMat::identity(1))
            .collect();
        let mut m = BredonModule::from_table(Arc::clone(cat), variance, ranks, acts).unwrap();
        // When G is in the family the trivial *right* module is the Yoneda
        // module on G/G (every hom-set into G/G is a singleton); the left
        // Yoneda module on G/G is concentrated at G/G instead, so no tag.
        if variance == Variance::Right {
            if let Some(whole) = cat
                .family()
                .members()
                .iter()
                .position(|h| h.is_whole_group())
            {
                m.free_gens = Some(vec![whole]);
            }
        }
        m
    }

    /// Free right module `Z[?, X]` on a `G`-set: the value at `G/H` is free
    /// on the `H`-fixed points, `f_{g,H,K}` acts by `x -> g.x`.  If some
    /// stabiliser of `X` is outside the family the result is still a functor
    /// but not free; the offenders are reported in `stab_warnings`.
    pub fn free_on(cat: &Arc<OrbitCategory>, gset: Arc<GSetFinite>) -> Self {
        assert!(Arc::ptr_eq(cat.group(), gset.group()));
        let fixed: Vec<Vec<u32>> = (0..cat.object_count())
            .map(|o| gset.fixed_points(&cat.object(o).subgroup))
            .collect();
        let ranks: Vec<usize> = fixed.iter().map(|f| f.len()).collect();
        let mut stab_warnings = Vec::new();
        let mut gens = Vec::new();
        let mut all_in_family = true;
        for orbit in gset.orbits() {
            match cat.object_of_subgroup(&orbit.stabilizer) {
                Some(obj) => gens.push(obj),
                None => {
                    all_in_family = false;
                    stab_warnings.push(orbit.stabilizer.clone());
                }
            }
        }
        BredonModule {
            cat: Arc::clone(cat),
            variance: Variance::Right,
            ranks,
            source: ActionSource::FreeGSet {
                gset,
                fixed,
                cache: Mutex::new(HashMap::new()),
            },
            free_gens: all_in_family.then_some(gens),
            stab_warnings,
        }
    }

    /// Yoneda right module `Z[?, G/K]`: value at `G/H` is free on
    /// `hom(G/H, G/K)`, morphisms act by precomposition.
    pub fn yoneda_right(cat: &Arc<OrbitCategory>, k: usize) -> Self {
        let ranks: Vec<usize> = (0..cat.object_count())
            .map(|h| cat.hom_size(h, k))
            .collect();
        let mut acts = Vec::with_capacity(cat.total_morphisms());
        for phi in cat.all_morphisms() {
            // act(phi): basis f in hom(dst, K) -> f . phi in hom(src, K)
            let mut m = IMat::zeros(ranks[phi.src], ranks[phi.dst]);
            for (j, f) in cat.hom_set(phi.dst, k).iter().enumerate() {
                let fphi = cat.compose(f, &phi).expect("composable");
                m[(cat.hom_index(&fphi), j)] = 1;
            }
            acts.push(m);
        }
        BredonModule::from_table(Arc::clone(cat), Variance::Right, ranks, acts)
            .unwrap()
            .with_free_gens(vec![k])
    }

    /// Yoneda left module `Z[G/K, ?]`: value at `G/H` is free on
    /// `hom(G/K, G/H)`, morphisms act by postcomposition.
    pub fn yoneda_left(cat: &Arc<OrbitCategory>, k: usize) -> Self {
        let ranks: Vec<usize> = (0..cat.object_count())
            .map(|h| cat.hom_size(k, h))
            .collect();
        let mut acts = Vec::with_capacity(cat.total_morphisms());
        for phi in cat.all_morphisms() {
            // act(phi): basis f in hom(K, src) -> phi . f in hom(K, dst)
            let mut m = IMat::zeros(ranks[phi.dst], ranks[phi.src]);
            for (j, f) in cat.hom_set(k, phi.src).iter().enumerate() {
                let phif = cat.compose(&phi, f).expect("composable");
                m[(cat.hom_index(&phif), j)] = 1;
            }
            acts.push(m);
        }
        BredonModule::from_table(Arc::clone(cat), Variance::Left, ranks, acts)
            .unwrap()
            .with_free_gens(vec![k])
    }

    /// Direct sum of Yoneda modules on the listed objects, in order.
    pub fn free_right_sum(cat: &Arc<OrbitCategory>, gens: &[usize]) -> Self {
        let summands: Vec<BredonModule> =
            gens.iter().map(|&k| BredonModule::yoneda_right(cat, k)).collect();
        BredonModule::direct_sum(cat, Variance::Right, &summands)
            .with_free_gens(gens.to_vec())
    }

    pub fn free_left_sum(cat: &Arc<OrbitCategory>, gens: &[usize]) -> Self {
        let summands: Vec<BredonModule> =
            gens.iter().map(|&k| BredonModule::yoneda_left(cat, k)).collect();
        BredonModule::direct_sum(cat, Variance::Left, &summands)
            .with_free_gens(gens.to_vec())
    }

    pub fn zero(cat: &Arc<OrbitCategory>, variance: Variance) -> Self {
        let ranks = vec![0; cat.object_count()];
        let acts = cat.all_morphisms().iter().map(|_| IMat::zeros(0, 0)).collect();
        BredonModule::from_table(Arc::clone(cat), variance, ranks, acts)
            .unwrap()
            .with_free_gens(Vec::new())
    }

    pub fn direct_sum(
        cat: &Arc<OrbitCategory>,
        variance: Variance,
        summands: &[BredonModule],
    ) -> Self {
        assert!(summands.iter().all(|m| m.variance == variance));
        let ranks: Vec<usize> = (0..cat.object_count())
            .map(|o| summands.iter().map(|m| m.rank(o)).sum())
            .collect();
        let mut acts = Vec::with_capacity(cat.total_morphisms());
        for f in cat.all_morphisms() {
            let (er, ec) = expected_shape(variance, &ranks, &f);
            let mut big = IMat::zeros(er, ec);
            let mut ro = 0usize;
            let mut co = 0usize;
            for m in summands {
                let block = m.act(&f);
                for i in 0..block.rows {
                    for j in 0..block.cols {
                        big[(ro + i, co + j)] = block[(i, j)];
                    }
                }
                ro += block.rows;
                co += block.cols;
            }
            acts.push(big);
        }
        let free_gens = summands
            .iter()
            .map(|m| m.free_gens.clone())
            .collect::<Option<Vec<_>>>()
            .map(|lists| lists.concat());
        let mut out =
            BredonModule::from_table(Arc::clone(cat), variance, ranks, acts).unwrap();
        out.free_gens = free_gens;
        out
    }

    /// Exhaustive functoriality check: identities act as identities and the
    /// matrix of a composite is the product of the matrices, in the order
    /// dictated by the variance.
    pub fn validate(&self) -> Result<(), ModuleError> {
        let cat = &self.cat;
        for o in 0..cat.object_count() {
            let id = cat.identity(o);
            if *self.act(&id) != IMat::identity(self.ranks[o]) {
                return Err(ModuleError::NotAFunctor(format!(
                    "identity of object {o} does not act as the identity"
                )));
            }
        }
        let mors = cat.all_morphisms();
        for f in &mors {
            for g in &mors {
                if g.src != f.dst {
                    continue;
                }
                let gf = cat.compose(g, f).expect("composable");
                let lhs = self.act(&gf);
                let rhs = match self.variance {
                    Variance::Right => self.act(f).mul(&self.act(g)),
                    Variance::Left => self.act(g).mul(&self.act(f)),
                };
                if *lhs != rhs {
                    return Err(ModuleError::NotAFunctor(format!(
                        "composite {:?} . {:?} breaks functoriality",
                        g, f
                    )));
                }
            }
        }
        Ok(())
    }
}

fn expected_shape(variance: Variance, ranks: &[usize], f: &OrbitMorphism) -> (usize, usize) {
    match variance {
        Variance::Right => (ranks[f.src], ranks[f.dst]),
        Variance::Left => (ranks[f.dst], ranks[f.src]),
    }
}

/// A morphism of Bredon modules: one matrix per object, natural in the
/// category.  `check_natural` verifies every square.
pub struct BredonMorphism {
    pub src: Arc<BredonModule>,
    pub dst: Arc<BredonModule>,
    pub mats: Vec<IMat>, // per object: dst.rank(o) x src.rank(o)
}

impl BredonMorphism {
    pub fn new(
        src: Arc<BredonModule>,
        dst: Arc<BredonModule>,
        mats: Vec<IMat>,
    ) -> Result<Self, ModuleError> {
        if src.variance() != dst.variance() {
            return Err(ModuleError::VarianceMismatch {
                expected: match src.variance() {
                    Variance::Right => "right",
                    Variance::Left => "left",
                },
            });
        }
        if !Arc::ptr_eq(src.cat(), dst.cat()) {
            return Err(ModuleError::CategoryMismatch);
        }
        for (o, m) in mats.iter().enumerate() {
            if m.rows != dst.rank(o) || m.cols != src.rank(o) {
                return Err(ModuleError::ShapeMismatch(format!(
                    "component at object {o} is {}x{}, expected {}x{}",
                    m.rows,
                    m.cols,
                    dst.rank(o),
                    src.rank(o)
                )));
            }
        }
        Ok(BredonMorphism { src, dst, mats })
    }

    pub fn identity(m: &Arc<BredonModule>) -> Self {
        let mats = (0..m.cat().object_count())
            .map(|o| IMat::identity(m.rank(o)))
            .collect();
        BredonMorphism::new(Arc::clone(m), Arc::clone(m), mats).unwrap()
    }

    /// The augmentation from a free module to the trivial module: every
    /// basis element maps to 1, i.e. all-ones rows.
    pub fn augmentation(free: &Arc<BredonModule>, trivial: &Arc<BredonModule>) -> Self {
        let mats = (0..free.cat().object_count())
            .map(|o| IMat::from_fn(1, free.rank(o), |_, _| 1))
            .collect();
        BredonMorphism::new(Arc::clone(free), Arc::clone(trivial), mats).unwrap()
    }

    /// True iff all naturality squares commute.
    pub fn check_natural(&self) -> bool {
        let cat = self.src.cat();
        for f in cat.all_morphisms() {
            let ok = match self.src.variance() {
                Variance::Right => {
                    // T_src . M(f) = N(f) . T_dst  (both M(dst) -> N(src))
                    self.mats[f.src].mul(&self.src.act(&f))
                        == self.dst.act(&f).mul(&self.mats[f.dst])
                }
                Variance::Left => {
                    self.mats[f.dst].mul(&self.src.act(&f))
                        == self.dst.act(&f).mul(&self.mats[f.src])
                }
            };
            if !ok {
                return false;
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{Family, FamilySpec};
    use crate::group::{cyclic, symmetric_3};

    fn all_cat(g: &Arc<FiniteGroup>) -> Arc<OrbitCategory> {
        OrbitCategory::build(Family::build(g, &FamilySpec::All).unwrap()).unwrap()
    }

    #[test]
    fn point_gset_gives_constant_module() {
        let g = symmetric_3();
        let cat = all_cat(&g);
        let x = Arc::new(GSetFinite::point(&g));
        let m = BredonModule::free_on(&cat, x);
        assert!(m.stab_warnings.is_empty());
        for o in 0..cat.object_count() {
            assert_eq!(m.rank(o), 1);
        }
        for f in cat.all_morphisms() {
            assert_eq!(*m.act(&f), IMat::identity(1));
        }
        m.validate().unwrap();
    }

    #[test]
    fn regular_gset_over_trivial_family_is_the_regular_module() {
        let g = cyclic(4);
        let cat = OrbitCategory::build(Family::build(&g, &FamilySpec::Trivial).unwrap()).unwrap();
        let x = Arc::new(GSetFinite::disjoint_cosets(&g, &[Subgroup::trivial(&g)]));
        let m = BredonModule::free_on(&cat, x);
        assert_eq!(m.rank(0), 4);
        m.validate().unwrap();
        // every action matrix is a permutation matrix
        for f in cat.all_morphisms() {
            let a = m.act(&f);
            for j in 0..a.cols {
                let ones: i64 = (0..a.rows).map(|i| a[(i, j)]).sum();
                assert_eq!(ones, 1);
            }
        }
    }

    #[test]
    fn empty_gset_gives_zero_module() {
        let g = cyclic(2);
        let cat = all_cat(&g);
        let m = BredonModule::free_on(&cat, Arc::new(GSetFinite::empty(&g)));
        assert!(m.is_zero());
    }

    #[test]
    fn stabilizer_outside_family_is_flagged() {
        let g = symmetric_3();
        let cat = OrbitCategory::build(Family::build(&g, &FamilySpec::Trivial).unwrap()).unwrap();
        let x = Arc::new(GSetFinite::point(&g)); // stabiliser S3, not in {1}
        let m = BredonModule::free_on(&cat, x);
        assert_eq!(m.stab_warnings.len(), 1);
        assert!(m.free_generators().is_none());
        m.validate().unwrap(); // still a perfectly good functor
    }

    #[test]
    fn trivial_module_is_yoneda_on_the_whole_group() {
        let g = symmetric_3();
        let cat = all_cat(&g);
        let t = BredonModule::trivial(&cat, Variance::Right);
        let whole = cat
            .family()
            .members()
            .iter()
            .position(|h| h.is_whole_group())
            .unwrap();
        let y = BredonModule::yoneda_right(&cat, whole);
        assert_eq!(t.ranks(), y.ranks());
        for f in cat.all_morphisms() {
            assert_eq!(*t.act(&f), *y.act(&f));
        }
    }

    #[test]
    fn free_module_actions_are_basis_permutations() {
        let g = symmetric_3();
        let cat = all_cat(&g);
        let subs = cat.family().members().to_vec();
        let x = Arc::new(GSetFinite::disjoint_cosets(&g, &subs[0..3]));
        let m = BredonModule::free_on(&cat, x);
        m.validate().unwrap();
        for f in cat.all_morphisms() {
            let a = m.act(&f);
            for j in 0..a.cols {
                assert_eq!((0..a.rows).map(|i| a[(i, j)].abs()).sum::<i64>(), 1);
            }
        }
    }

    #[test]
    fn disjoint_union_matches_direct_sum_objectwise() {
        let g = symmetric_3();
        let cat = all_cat(&g);
        let subs = cat.family().members().to_vec();
        let xy = Arc::new(GSetFinite::disjoint_cosets(&g, &[subs[1].clone(), subs[4].clone()]));
        let union = BredonModule::free_on(&cat, xy);
        let k1 = cat.object_of_subgroup(&subs[1]).unwrap();
        let k2 = cat.object_of_subgroup(&subs[4]).unwrap();
        let sum = BredonModule::free_right_sum(&cat, &[k1, k2]);
        assert_eq!(union.ranks(), sum.ranks());
        sum.validate().unwrap();
    }

    #[test]
    fn augmentation_is_natural_and_random_garbage_is_not() {
        let g = symmetric_3();
        let cat = all_cat(&g);
        let subs = cat.family().members().to_vec();
        let x = Arc::new(GSetFinite::disjoint_cosets(&g, &subs));
        let free = Arc::new(BredonModule::free_on(&cat, x));
        let triv = Arc::new(BredonModule::trivial(&cat, Variance::Right));
        let eps = BredonMorphism::augmentation(&free, &triv);
        assert!(eps.check_natural());
        assert!(BredonMorphism::identity(&triv).check_natural());
        // a deliberately non-equivariant assignment violates a square
        let mut mats: Vec<IMat> = (0..cat.object_count())
            .map(|o| IMat::from_fn(1, free.rank(o), |_, _| 1))
            .collect();
        mats[0][(0, 0)] = 2;
        let bad = BredonMorphism::new(Arc::clone(&free), Arc::clone(&triv), mats).unwrap();
        assert!(!bad.check_natural());
    }

    #[test]
    fn yoneda_left_is_functorial() {
        let g = symmetric_3();
        let cat = all_cat(&g);
        for k in 0..cat.object_count() {
            BredonModule::yoneda_left(&cat, k).validate().unwrap();
            BredonModule::yoneda_right(&cat, k).validate().unwrap();
        }
    }

    #[test]
    fn fset_free_module_has_component_ranks() {
        let g = cyclic(2);
        let cat = all_cat(&g);
        let fset = FSet::new(Arc::clone(&cat), vec![0, 0, 1]);
        assert_eq!(fset.component(0).len(), 2);
        let m = fset.free_module();
        m.validate().unwrap();
        // value at G/1: two copies of Z[G/1,G/1] (rank 2 each) + one of hom(G/1, G/C2) (rank 1)
        assert_eq!(m.rank(0), 5);
    }
}

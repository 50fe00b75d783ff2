//! The orbit category of a group with respect to a family: objects are the
//! homogeneous spaces `G/H` for members `H`, morphisms are the `G`-maps,
//! identified with fixed cosets `(G/K)^H` and labelled `f_{x,H,K}`.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::CategoryError;
use crate::family::Family;
use crate::group::{ElemId, FiniteGroup, Subgroup};

/// Materialisation keeps every family member as its own object (no
/// conjugacy-class collapsing), which keeps module actions literal at the
/// cost of category size; this cap keeps that cost desk-sized.
pub const MAX_OBJECTS: usize = 64;

pub struct OrbitObject {
    pub subgroup: Subgroup,
    /// Cosets `xH` as sorted element lists, ordered by least element, so the
    /// canonical representative of coset `c` is `cosets[c][0]`.
    pub cosets: Vec<Vec<ElemId>>,
    pub coset_of: Vec<u32>,
}

/// `f_{x,H,K}: G/H -> G/K`, stored by target coset index; the canonical
/// representative is the least element of the coset, so structural equality
/// coincides with equality of `G`-maps.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct OrbitMorphism {
    pub src: usize,
    pub dst: usize,
    pub coset: u32,
}

impl fmt::Debug for OrbitMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "f[{} -> {}; coset {}]", self.src, self.dst, self.coset)
    }
}

pub struct OrbitCategory {
    group: Arc<FiniteGroup>,
    family: Family,
    objects: Vec<OrbitObject>,
    /// `homs[src][dst]`: ascending coset indices of `(G/K_dst)^{H_src}`.
    homs: Vec<Vec<Vec<u32>>>,
    subgroup_index: HashMap<Vec<ElemId>, usize>,
    mor_offsets: Vec<Vec<usize>>,
    total_morphisms: usize,
}

impl fmt::Debug for OrbitCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "OrbitCategory({} objects, {} morphisms)",
            self.objects.len(),
            self.total_morphisms
        )
    }
}

/// Left cosets of `h` as sorted element lists (ordered by least element)
/// plus the element-to-coset map.
pub fn coset_table(group: &FiniteGroup, h: &Subgroup) -> (Vec<Vec<ElemId>>, Vec<u32>) {
    cosets_of(group, h)
}

fn cosets_of(group: &FiniteGroup, h: &Subgroup) -> (Vec<Vec<ElemId>>, Vec<u32>) {
    let n = group.order();
    let mut coset_of = vec![u32::MAX; n];
    let mut cosets = Vec::new();
    for x in 0..n {
        if coset_of[x] != u32::MAX {
            continue;
        }
        let mut coset: Vec<ElemId> = h.members().iter().map(|&m| group.mul(x, m)).collect();
        coset.sort_unstable();
        let ix = cosets.len() as u32;
        for &y in &coset {
            coset_of[y] = ix;
        }
        cosets.push(coset);
    }
    (cosets, coset_of)
}

impl OrbitCategory {
    pub fn build(family: Family) -> Result<Arc<Self>, CategoryError> {
        if family.len() > MAX_OBJECTS {
            return Err(CategoryError::TooManyObjects {
                count: family.len(),
                max: MAX_OBJECTS,
            });
        }
        let group = Arc::clone(family.group());
        let mut objects = Vec::with_capacity(family.len());
        let mut subgroup_index = HashMap::new();
        for (i, h) in family.members().iter().enumerate() {
            let (cosets, coset_of) = cosets_of(&group, h);
            subgroup_index.insert(h.members().to_vec(), i);
            objects.push(OrbitObject {
                subgroup: h.clone(),
                cosets,
                coset_of,
            });
        }
        let n = objects.len();
        let mut homs = vec![vec![Vec::new(); n]; n];
        for src in 0..n {
            let h = &objects[src].subgroup;
            for (dst, obj) in objects.iter().enumerate() {
                let k = &obj.subgroup;
                let mut fixed = Vec::new();
                for (c, coset) in obj.cosets.iter().enumerate() {
                    let x = coset[0];
                    let xin = group.inv(x);
                    // H^x <= K, i.e. x^-1 h x in K for all h in H
                    if h.members()
                        .iter()
                        .all(|&a| k.contains(group.mul(group.mul(xin, a), x)))
                    {
                        fixed.push(c as u32);
                    }
                }
                homs[src][dst] = fixed;
            }
        }
        let mut mor_offsets = vec![vec![0usize; n]; n];
        let mut total = 0usize;
        for src in 0..n {
            for dst in 0..n {
                mor_offsets[src][dst] = total;
                total += homs[src][dst].len();
            }
        }
        Ok(Arc::new(OrbitCategory {
            group,
            family,
            objects,
            homs,
            subgroup_index,
            mor_offsets,
            total_morphisms: total,
        }))
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn object(&self, i: usize) -> &OrbitObject {
        &self.objects[i]
    }

    pub fn objects(&self) -> &[OrbitObject] {
        &self.objects
    }

    pub fn object_of_subgroup(&self, h: &Subgroup) -> Option<usize> {
        self.subgroup_index.get(h.members()).copied()
    }

    /// All morphisms `G/H_src -> G/K_dst`, canonically ordered by target
    /// coset index; empty exactly when `H` is not subconjugate to `K`.
    pub fn hom_set(&self, src: usize, dst: usize) -> Vec<OrbitMorphism> {
        self.homs[src][dst]
            .iter()
            .map(|&coset| OrbitMorphism { src, dst, coset })
            .collect()
    }

    pub fn hom_size(&self, src: usize, dst: usize) -> usize {
        self.homs[src][dst].len()
    }

    /// Position of a morphism inside its hom-set.
    pub fn hom_index(&self, f: &OrbitMorphism) -> usize {
        self.homs[f.src][f.dst]
            .binary_search(&f.coset)
            .expect("morphism belongs to its hom-set")
    }

    /// Flat id over all morphisms of the category.
    pub fn morphism_id(&self, f: &OrbitMorphism) -> usize {
        self.mor_offsets[f.src][f.dst] + self.hom_index(f)
    }

    pub fn total_morphisms(&self) -> usize {
        self.total_morphisms
    }

    pub fn all_morphisms(&self) -> Vec<OrbitMorphism> {
        let mut out = Vec::with_capacity(self.total_morphisms);
        for src in 0..self.objects.len() {
            for dst in 0..self.objects.len() {
                out.extend(self.hom_set(src, dst));
            }
        }
        out
    }

    /// Canonical representative element of the morphism's target coset.
    pub fn rep(&self, f: &OrbitMorphism) -> ElemId {
        self.objects[f.dst].cosets[f.coset as usize][0]
    }

    pub fn identity(&self, obj: usize) -> OrbitMorphism {
        let coset = self.objects[obj].coset_of[self.group.identity()];
        OrbitMorphism {
            src: obj,
            dst: obj,
            coset,
        }
    }

    /// The morphism `f_{g,H,K}` if `H^g <= K`.
    pub fn morphism_from_element(&self, src: usize, dst: usize, g: ElemId) -> Option<OrbitMorphism> {
        let coset = self.objects[dst].coset_of[g];
        self.homs[src][dst]
            .binary_search(&coset)
            .ok()
            .map(|_| OrbitMorphism { src, dst, coset })
    }

    /// `compose(g, f) = g . f : f_{y,K,L} . f_{x,H,K} = f_{xy,H,L}`.
    pub fn compose(
        &self,
        g: &OrbitMorphism,
        f: &OrbitMorphism,
    ) -> Result<OrbitMorphism, CategoryError> {
        if f.dst != g.src {
            return Err(CategoryError::CompositionMismatch {
                inner_target: f.dst,
                outer_source: g.src,
            });
        }
        let x = self.rep(f);
        let y = self.rep(g);
        let xy = self.group.mul(x, y);
        let coset = self.objects[g.dst].coset_of[xy];
        Ok(OrbitMorphism {
            src: f.src,
            dst: g.dst,
            coset,
        })
    }

    /// True iff the morphism has a two-sided inverse.  For finite groups
    /// every endomorphism is invertible, which the tests confirm rather than
    /// assume.
    pub fn is_isomorphism(&self, f: &OrbitMorphism) -> bool {
        if self.objects[f.src].subgroup.order() != self.objects[f.dst].subgroup.order() {
            return false;
        }
        let id_src = self.identity(f.src);
        let id_dst = self.identity(f.dst);
        self.hom_set(f.dst, f.src).iter().any(|g| {
            self.compose(g, f).map(|c| c == id_src).unwrap_or(false)
                && self.compose(f, g).map(|c| c == id_dst).unwrap_or(false)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{Family, FamilySpec};
    use crate::group::{cyclic, normalizer, small_groups_up_to_12, symmetric_3};
    use crate::perm::Perm;

    fn cat(group: &Arc<FiniteGroup>, spec: FamilySpec) -> Arc<OrbitCategory> {
        OrbitCategory::build(Family::build(group, &spec).unwrap()).unwrap()
    }

    #[test]
    fn hom_sets_on_c2() {
        let g = cyclic(2);
        let c = cat(&g, FamilySpec::All);
        let one = c.object_of_subgroup(&Subgroup::trivial(&g)).unwrap();
        let whole = c.object_of_subgroup(&Subgroup::whole(&g)).unwrap();
        assert_eq!(c.hom_size(one, one), 2);
        assert_eq!(c.hom_size(one, whole), 1);
        assert_eq!(c.hom_size(whole, whole), 1);
        assert_eq!(c.hom_size(whole, one), 0);
    }

    #[test]
    fn s3_transposition_does_not_map_to_c3() {
        let g = symmetric_3();
        let c = cat(&g, FamilySpec::All);
        let t = g.elem_id(&Perm::parse_cycles("(1 2)", 3).unwrap()).unwrap();
        let r = g.elem_id(&Perm::parse_cycles("(1 2 3)", 3).unwrap()).unwrap();
        let h2 = c
            .object_of_subgroup(&Subgroup::generated_by(&g, &[t]))
            .unwrap();
        let h3 = c
            .object_of_subgroup(&Subgroup::generated_by(&g, &[r]))
            .unwrap();
        // brute-force fixed-point scan over both cosets of C3 finds none
        assert_eq!(c.hom_size(h2, h3), 0);
        assert_eq!(c.hom_size(h3, h2), 0);
    }

    #[test]
    fn hom_count_equals_fixed_points_everywhere() {
        for g in small_groups_up_to_12() {
            if g.order() > 12 {
                continue;
            }
            let c = cat(&g, FamilySpec::All);
            for src in 0..c.object_count() {
                let h = &c.object(src).subgroup;
                for dst in 0..c.object_count() {
                    let obj = c.object(dst);
                    let fixed = obj
                        .cosets
                        .iter()
                        .filter(|coset| {
                            // a coset is H-fixed iff multiplying by every h
                            // lands in the same coset
                            h.members().iter().all(|&a| {
                                obj.coset_of[g.mul(a, coset[0])] == obj.coset_of[coset[0]]
                            })
                        })
                        .count();
                    assert_eq!(c.hom_size(src, dst), fixed);
                    // nonempty iff subconjugate
                    let subconj = (0..g.order()).any(|x| {
                        h.members().iter().all(|&a| {
                            obj.subgroup.contains(g.mul(g.mul(g.inv(x), a), x))
                        })
                    });
                    assert_eq!(c.hom_size(src, dst) > 0, subconj);
                }
            }
        }
    }

    #[test]
    fn identity_law_and_exhaustive_associativity_on_s3() {
        let g = symmetric_3();
        let c = cat(&g, FamilySpec::All);
        let mors = c.all_morphisms();
        for f in &mors {
            let idl = c.identity(f.dst);
            let idr = c.identity(f.src);
            assert_eq!(c.compose(&idl, f).unwrap(), *f);
            assert_eq!(c.compose(f, &idr).unwrap(), *f);
        }
        let mut checked = 0usize;
        for f in &mors {
            for h in &mors {
                if h.src != f.dst {
                    continue;
                }
                for k in &mors {
                    if k.src != h.dst {
                        continue;
                    }
                    let left = c.compose(k, &c.compose(h, f).unwrap()).unwrap();
                    let right = c.compose(&c.compose(k, h).unwrap(), f).unwrap();
                    assert_eq!(left, right);
                    checked += 1;
                }
            }
        }
        assert!(checked > 0);
    }

    #[test]
    fn composition_formula_in_c4() {
        let g = cyclic(4);
        let c = cat(&g, FamilySpec::All);
        let one = c.object_of_subgroup(&Subgroup::trivial(&g)).unwrap();
        let two = c
            .object_of_subgroup(&Subgroup::generated_by(&g, &[g.mul(
                g.generator_ids()[0],
                g.generator_ids()[0],
            )]))
            .unwrap();
        // f_{g,1,C2} . f_{h,1,1} = f_{hg,1,C2} for all g, h
        for ga in 0..4 {
            for hb in 0..4 {
                let f = c.morphism_from_element(one, one, hb).unwrap();
                let s = c.morphism_from_element(one, two, ga).unwrap();
                let comp = c.compose(&s, &f).unwrap();
                let expected = c
                    .morphism_from_element(one, two, g.mul(hb, ga))
                    .unwrap();
                assert_eq!(comp, expected);
            }
        }
    }

    #[test]
    fn endomorphisms_invertible_and_aut_counts_match_weyl_groups() {
        let g = symmetric_3();
        let c = cat(&g, FamilySpec::All);
        for obj in 0..c.object_count() {
            let endos = c.hom_set(obj, obj);
            for f in &endos {
                assert!(c.is_isomorphism(f));
            }
            let h = &c.object(obj).subgroup;
            let weyl = normalizer(h).order() / h.order();
            assert_eq!(endos.len(), weyl);
        }
        // cardinality obstruction across objects of different orders
        let one = c.object_of_subgroup(&Subgroup::trivial(&g)).unwrap();
        let whole = c.object_of_subgroup(&Subgroup::whole(&g)).unwrap();
        let f = c.hom_set(one, whole)[0];
        assert!(!c.is_isomorphism(&f));
    }
}

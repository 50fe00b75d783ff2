//! Families of subgroups: conjugation closure, semi-full/full flags and the
//! standard constructions (trivial, all, cyclic, p-subgroups, products).

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use crate::error::GroupError;
use crate::group::{
    conjugate, enumerate_subgroups, intersect, product_subgroup, ElemId, FiniteGroup, Subgroup,
    DEFAULT_ORDER_BOUND,
};

/// A non-empty, conjugation-closed set of subgroups.  `semi_full` means
/// closed under pairwise intersection, `full` means closed under passing to
/// subgroups; both flags are computed by exhaustive check at build time.
#[derive(Clone)]
pub struct Family {
    group: Arc<FiniteGroup>,
    members: Vec<Subgroup>,
    semi_full: bool,
    full: bool,
}

impl fmt::Debug for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Family(|F|={}, semi_full={}, full={})",
            self.members.len(),
            self.semi_full,
            self.full
        )
    }
}

impl PartialEq for Family {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}
impl Eq for Family {}

/// Built-in family recipes accepted by the CLI and the builders.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilySpec {
    Trivial,
    All,
    Cyclic,
    PSubgroups(usize),
    Custom(Vec<Vec<String>>),
}

impl Family {
    /// Conjugation closure of a non-empty seed list; flags are computed, not
    /// assumed.  For a finite group the families of finite, virtually cyclic
    /// and all subgroups coincide, so `All` covers those three.
    pub fn from_seeds(group: &Arc<FiniteGroup>, seeds: Vec<Subgroup>) -> Family {
        assert!(!seeds.is_empty(), "a family is non-empty by definition");
        let mut set: HashSet<Vec<ElemId>> = HashSet::new();
        let mut members: Vec<Subgroup> = Vec::new();
        for h in seeds {
            for g in 0..group.order() {
                let c = conjugate(&h, g);
                if set.insert(c.members().to_vec()) {
                    members.push(c);
                }
            }
        }
        members.sort();
        let semi_full = is_intersection_closed(&members);
        let full = is_subgroup_closed(group, &members);
        Family {
            group: Arc::clone(group),
            members,
            semi_full,
            full,
        }
    }

    pub fn build(group: &Arc<FiniteGroup>, spec: &FamilySpec) -> Result<Family, GroupError> {
        let seeds: Vec<Subgroup> = match spec {
            FamilySpec::Trivial => vec![Subgroup::trivial(group)],
            FamilySpec::All => enumerate_subgroups(group, DEFAULT_ORDER_BOUND)?,
            FamilySpec::Cyclic => {
                let mut out = vec![Subgroup::trivial(group)];
                for a in 0..group.order() {
                    out.push(Subgroup::generated_by(group, &[a]));
                }
                out
            }
            FamilySpec::PSubgroups(p) => {
                let mut out = vec![Subgroup::trivial(group)];
                for h in enumerate_subgroups(group, DEFAULT_ORDER_BOUND)? {
                    if is_prime_power(h.order(), *p) {
                        out.push(h);
                    }
                }
                out
            }
            FamilySpec::Custom(gen_lists) => {
                let mut out = Vec::new();
                for gens in gen_lists {
                    let mut ids = Vec::new();
                    for word in gens {
                        let p = crate::perm::Perm::parse_cycles(word, group.degree())?;
                        let id = group.elem_id(&p).ok_or(GroupError::ForeignElement)?;
                        ids.push(id);
                    }
                    out.push(Subgroup::generated_by(group, &ids));
                }
                if out.is_empty() {
                    out.push(Subgroup::trivial(group));
                }
                out
            }
        };
        Ok(Family::from_seeds(group, seeds))
    }

    /// Smallest semi-full family containing the seeds: close under
    /// conjugation and pairwise intersection until a fixed point.
    pub fn semi_full_closure(group: &Arc<FiniteGroup>, seeds: Vec<Subgroup>) -> Family {
        let mut fam = Family::from_seeds(group, seeds);
        loop {
            let mut extra: Vec<Subgroup> = Vec::new();
            let set: HashSet<Vec<ElemId>> =
                fam.members.iter().map(|h| h.members().to_vec()).collect();
            for i in 0..fam.members.len() {
                for j in i + 1..fam.members.len() {
                    let m = intersect(&fam.members[i], &fam.members[j]);
                    if !set.contains(m.members()) {
                        extra.push(m);
                    }
                }
            }
            if extra.is_empty() {
                return fam;
            }
            let mut seeds = fam.members.clone();
            seeds.extend(extra);
            fam = Family::from_seeds(group, seeds);
        }
    }

    /// Cartesian product family `{ H1 x H2 }` over a `direct_product` group.
    pub fn product(
        prod: &Arc<FiniteGroup>,
        g1: &Arc<FiniteGroup>,
        f1: &Family,
        g2: &Arc<FiniteGroup>,
        f2: &Family,
    ) -> Family {
        let mut seeds = Vec::new();
        for h1 in f1.members() {
            for h2 in f2.members() {
                seeds.push(product_subgroup(prod, g1, g2, h1, h2));
            }
        }
        Family::from_seeds(prod, seeds)
    }

    /// `F . K = { H . K : H in F }` as a family of subgroups of `K`
    /// (members represented inside the ambient group).
    pub fn intersect_with(&self, k: &Subgroup) -> Family {
        let mut set: HashSet<Vec<ElemId>> = HashSet::new();
        let mut members = Vec::new();
        for h in &self.members {
            let m = intersect(h, k);
            if set.insert(m.members().to_vec()) {
                members.push(m);
            }
        }
        members.sort();
        // Conjugation closure inside K holds automatically; flags recomputed
        // against K's subgroup lattice.
        let semi_full = is_intersection_closed(&members);
        let full = members.iter().all(|h| {
            subgroups_of(h)
                .iter()
                .all(|s| members.iter().any(|m| m.members() == s.members()))
        });
        Family {
            group: Arc::clone(&self.group),
            members,
            semi_full,
            full,
        }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn members(&self) -> &[Subgroup] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_semi_full(&self) -> bool {
        self.semi_full
    }

    pub fn is_full(&self) -> bool {
        self.full
    }

    pub fn contains(&self, h: &Subgroup) -> bool {
        self.members.iter().any(|m| m.members() == h.members())
    }

    pub fn contains_whole_group(&self) -> bool {
        self.members.iter().any(|m| m.is_whole_group())
    }

    pub fn index_of(&self, h: &Subgroup) -> Option<usize> {
        self.members.iter().position(|m| m.members() == h.members())
    }
}

fn is_intersection_closed(members: &[Subgroup]) -> bool {
    let set: HashSet<&[ElemId]> = members.iter().map(|h| h.members()).collect();
    for i in 0..members.len() {
        for j in i..members.len() {
            let m = intersect(&members[i], &members[j]);
            if !set.contains(m.members()) {
                return false;
            }
        }
    }
    true
}

fn is_subgroup_closed(group: &Arc<FiniteGroup>, members: &[Subgroup]) -> bool {
    let set: HashSet<&[ElemId]> = members.iter().map(|h| h.members()).collect();
    let Ok(all) = enumerate_subgroups(group, usize::MAX) else {
        return false;
    };
    for s in &all {
        if members.iter().any(|m| s.is_subgroup_of(m)) && !set.contains(s.members()) {
            return false;
        }
    }
    true
}

/// All subgroups of a subgroup, enumerated inside the ambient group.
fn subgroups_of(h: &Subgroup) -> Vec<Subgroup> {
    let group = h.group();
    let mut found: HashSet<Vec<ElemId>> = HashSet::new();
    let trivial = Subgroup::trivial(group);
    found.insert(trivial.members().to_vec());
    let mut frontier = vec![trivial];
    let mut out = Vec::new();
    while let Some(s) = frontier.pop() {
        for &g in h.members() {
            if s.contains(g) {
                continue;
            }
            let mut gens = s.members().to_vec();
            gens.push(g);
            let bigger = Subgroup::generated_by(group, &gens);
            if bigger.is_subgroup_of(h) && found.insert(bigger.members().to_vec()) {
                frontier.push(bigger);
            }
        }
        out.push(s);
    }
    out
}

fn is_prime_power(n: usize, p: usize) -> bool {
    if n == 1 {
        return true;
    }
    let mut m = n;
    while m % p == 0 {
        m /= p;
    }
    m == 1
}

/// Parses a family spec string: `trivial | all | cyclic | p:<prime> | custom:<file>`.
/// The custom file is handled by the caller; this returns the tag.
pub fn parse_family_spec_tag(s: &str) -> Option<FamilySpec> {
    match s {
        "trivial" => Some(FamilySpec::Trivial),
        "all" => Some(FamilySpec::All),
        "cyclic" => Some(FamilySpec::Cyclic),
        _ => {
            if let Some(p) = s.strip_prefix("p:") {
                p.parse::<usize>().ok().map(FamilySpec::PSubgroups)
            } else {
                None
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, direct_product, symmetric_3};
    use crate::perm::Perm;

    #[test]
    fn trivial_family_is_full() {
        for g in [cyclic(4), symmetric_3()] {
            let f = Family::build(&g, &FamilySpec::Trivial).unwrap();
            assert_eq!(f.len(), 1);
            assert!(f.is_semi_full());
            assert!(f.is_full());
        }
    }

    #[test]
    fn all_family_of_s3_has_six_members_and_is_full() {
        let g = symmetric_3();
        let f = Family::build(&g, &FamilySpec::All).unwrap();
        assert_eq!(f.len(), 6);
        assert!(f.is_semi_full());
        assert!(f.is_full());
        assert!(f.contains_whole_group());
    }

    #[test]
    fn normal_seed_is_already_closed() {
        let g = symmetric_3();
        let r = g.elem_id(&Perm::parse_cycles("(1 2 3)", 3).unwrap()).unwrap();
        let c3 = Subgroup::generated_by(&g, &[r]);
        let f = Family::from_seeds(&g, vec![c3.clone()]);
        assert_eq!(f.members(), &[c3]);
        // C3 . C3 = C3 so it is intersection closed, but the trivial
        // subgroup is missing so it is not full.
        assert!(f.is_semi_full());
        assert!(!f.is_full());
    }

    #[test]
    fn closure_is_a_fixed_point_and_flags_match_exhaustive_tests() {
        let g = symmetric_3();
        let t = g.elem_id(&Perm::parse_cycles("(1 2)", 3).unwrap()).unwrap();
        let h = Subgroup::generated_by(&g, &[t]);
        let f = Family::from_seeds(&g, vec![h.clone()]);
        assert_eq!(f.len(), 3);
        assert!(!f.is_semi_full()); // intersections land on the missing trivial subgroup
        let again = Family::from_seeds(&g, f.members().to_vec());
        assert_eq!(f, again);
        let sf = Family::semi_full_closure(&g, vec![h]);
        assert_eq!(sf.len(), 4);
        assert!(sf.is_semi_full());
        assert!(sf.is_full()); // {1, three C2} happens to be subgroup closed
    }

    #[test]
    fn p_subgroups_of_s3() {
        let g = symmetric_3();
        let f2 = Family::build(&g, &FamilySpec::PSubgroups(2)).unwrap();
        assert_eq!(f2.len(), 4); // 1 and three C2
        let f3 = Family::build(&g, &FamilySpec::PSubgroups(3)).unwrap();
        assert_eq!(f3.len(), 2); // 1 and C3
    }

    #[test]
    fn product_family_of_trivials_is_trivial() {
        let c2 = cyclic(2);
        let prod = direct_product(&c2, &c2);
        let f = Family::build(&c2, &FamilySpec::Trivial).unwrap();
        let pf = Family::product(&prod, &c2, &f, &c2, &f);
        assert_eq!(pf.len(), 1);
        assert_eq!(pf.members()[0].order(), 1);
    }

    #[test]
    fn intersect_with_subgroup_of_full_family_stays_full() {
        let g = symmetric_3();
        let f = Family::build(&g, &FamilySpec::All).unwrap();
        let r = g.elem_id(&Perm::parse_cycles("(1 2 3)", 3).unwrap()).unwrap();
        let k = Subgroup::generated_by(&g, &[r]);
        let fk = f.intersect_with(&k);
        assert_eq!(fk.len(), 2);
        assert!(fk.is_semi_full());
        assert!(fk.is_full());
    }
}

//! Finite permutation groups: element tables, subgroup enumeration,
//! conjugacy of subgroups.
//!
//! Elements are stored sorted by image table, so the identity always has
//! index 0 and all derived data (subgroup lists, coset tables) is
//! deterministic across runs.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use crate::error::GroupError;
use crate::perm::Perm;

pub type ElemId = usize;

/// Default ceiling for subgroup enumeration.
pub const DEFAULT_ORDER_BOUND: usize = 48;

/// A finite group of permutations with full multiplication tables.
pub struct FiniteGroup {
    degree: usize,
    name: String,
    elements: Vec<Perm>,
    generators: Vec<ElemId>,
    mul: Vec<Vec<ElemId>>,
    inv: Vec<ElemId>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.name, self.order())
    }
}

impl FiniteGroup {
    /// Closes a generating set of permutations into a full group.
    pub fn from_generators(
        name: impl Into<String>,
        degree: usize,
        gens: Vec<Perm>,
    ) -> Result<Arc<Self>, GroupError> {
        for g in &gens {
            if g.degree() != degree {
                return Err(GroupError::InvalidPermutation(format!(
                    "generator degree {} does not match group degree {}",
                    g.degree(),
                    degree
                )));
            }
        }
        let mut elements: HashSet<Perm> = HashSet::new();
        elements.insert(Perm::identity(degree));
        let mut frontier: Vec<Perm> = vec![Perm::identity(degree)];
        while let Some(p) = frontier.pop() {
            for g in &gens {
                let q = p.compose(g);
                if elements.insert(q.clone()) {
                    frontier.push(q);
                }
            }
        }
        let mut elements: Vec<Perm> = elements.into_iter().collect();
        elements.sort();
        let index: HashMap<&Perm, usize> =
            elements.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let n = elements.len();
        // Product convention: a*b acts as "a first, then b", so that cycle
        // arithmetic matches the usual tables, e.g. (1 2)^(1 2 3) = (2 3).
        let mut mul = vec![vec![0usize; n]; n];
        for a in 0..n {
            for b in 0..n {
                let p = elements[b].compose(&elements[a]);
                mul[a][b] = *index.get(&p).ok_or_else(|| {
                    GroupError::ClosureFailure("product escaped the element set".into())
                })?;
            }
        }
        let mut inv = vec![0usize; n];
        for a in 0..n {
            inv[a] = *index.get(&elements[a].inverse()).unwrap();
        }
        let generators = gens
            .iter()
            .map(|g| *index.get(g).expect("generators are elements"))
            .collect();
        Ok(Arc::new(FiniteGroup {
            degree,
            name: name.into(),
            elements,
            generators,
            mul,
            inv,
        }))
    }

    /// Accepts a Cayley table (`table[a][b]` = index of `a*b`, identity at
    /// index 0) and converts it to the right-regular permutation
    /// representation, so that one internal representation serves everywhere.
    pub fn from_cayley_table(
        name: impl Into<String>,
        table: Vec<Vec<usize>>,
    ) -> Result<Arc<Self>, GroupError> {
        let n = table.len();
        if n == 0 {
            return Err(GroupError::InvalidCayleyTable("empty table".into()));
        }
        for row in &table {
            if row.len() != n || row.iter().any(|&x| x >= n) {
                return Err(GroupError::InvalidCayleyTable("ragged or out-of-range".into()));
            }
        }
        if (0..n).any(|a| table[a][0] != a || table[0][a] != a) {
            return Err(GroupError::InvalidCayleyTable(
                "index 0 is not an identity".into(),
            ));
        }
        // Right multiplication by a: x -> x*a, one permutation per element.
        let mut gens = Vec::with_capacity(n);
        for a in 0..n {
            let images: Vec<u16> = (0..n).map(|x| table[x][a] as u16).collect();
            gens.push(Perm::from_images(images).map_err(|_| {
                GroupError::InvalidCayleyTable(format!("column {a} is not a permutation"))
            })?);
        }
        FiniteGroup::from_generators(name, n, gens)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> ElemId {
        0
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn element(&self, id: ElemId) -> &Perm {
        &self.elements[id]
    }

    pub fn generator_ids(&self) -> &[ElemId] {
        &self.generators
    }

    pub fn mul(&self, a: ElemId, b: ElemId) -> ElemId {
        self.mul[a][b]
    }

    pub fn inv(&self, a: ElemId) -> ElemId {
        self.inv[a]
    }

    /// `g^-1 a g`.
    pub fn conj_elem(&self, a: ElemId, g: ElemId) -> ElemId {
        self.mul(self.mul(self.inv(g), a), g)
    }

    pub fn elem_id(&self, p: &Perm) -> Option<ElemId> {
        self.elements.binary_search(p).ok()
    }

    pub fn elem_order(&self, a: ElemId) -> usize {
        let mut x = a;
        let mut n = 1;
        while x != 0 {
            x = self.mul(x, a);
            n += 1;
        }
        n
    }
}

/// A subgroup as a sorted member list; all set operations are by element id.
#[derive(Clone)]
pub struct Subgroup {
    group: Arc<FiniteGroup>,
    members: Vec<ElemId>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.group, &other.group) && self.members == other.members
    }
}
impl Eq for Subgroup {}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subgroup {
    /// Canonical order: by order first, then lexicographic member set.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.members
            .len()
            .cmp(&other.members.len())
            .then_with(|| self.members.cmp(&other.members))
    }
}

impl std::hash::Hash for Subgroup {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.members.hash(state);
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self
            .members
            .iter()
            .map(|&m| self.group.element(m).to_cycles())
            .collect();
        write!(f, "Subgroup{{{}}}", gens.join(", "))
    }
}

impl Subgroup {
    /// Wraps a member list after verifying the subgroup axioms.
    pub fn new(group: Arc<FiniteGroup>, mut members: Vec<ElemId>) -> Result<Self, GroupError> {
        members.sort_unstable();
        members.dedup();
        if members.first() != Some(&group.identity()) {
            return Err(GroupError::NotASubgroup("identity missing".into()));
        }
        let set: HashSet<ElemId> = members.iter().copied().collect();
        for &a in &members {
            if !set.contains(&group.inv(a)) {
                return Err(GroupError::NotASubgroup("not closed under inverse".into()));
            }
            for &b in &members {
                if !set.contains(&group.mul(a, b)) {
                    return Err(GroupError::NotASubgroup("not closed under product".into()));
                }
            }
        }
        if group.order() % members.len() != 0 {
            return Err(GroupError::NotASubgroup("order violates Lagrange".into()));
        }
        Ok(Subgroup { group, members })
    }

    /// Generates the subgroup closure of a set of elements.
    pub fn generated_by(group: &Arc<FiniteGroup>, gens: &[ElemId]) -> Self {
        let mut members: HashSet<ElemId> = HashSet::new();
        members.insert(group.identity());
        let mut frontier = vec![group.identity()];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = group.mul(x, g);
                if members.insert(y) {
                    frontier.push(y);
                }
            }
        }
        let mut members: Vec<ElemId> = members.into_iter().collect();
        members.sort_unstable();
        Subgroup {
            group: Arc::clone(group),
            members,
        }
    }

    pub fn trivial(group: &Arc<FiniteGroup>) -> Self {
        Subgroup {
            group: Arc::clone(group),
            members: vec![group.identity()],
        }
    }

    pub fn whole(group: &Arc<FiniteGroup>) -> Self {
        Subgroup {
            group: Arc::clone(group),
            members: (0..group.order()).collect(),
        }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn members(&self) -> &[ElemId] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, a: ElemId) -> bool {
        self.members.binary_search(&a).is_ok()
    }

    pub fn is_whole_group(&self) -> bool {
        self.order() == self.group.order()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&a| other.contains(a))
    }
}

/// `H^g = { g^-1 h g : h in H }`; same order as `H`.
pub fn conjugate(h: &Subgroup, g: ElemId) -> Subgroup {
    let group = h.group();
    let mut members: Vec<ElemId> = h.members().iter().map(|&a| group.conj_elem(a, g)).collect();
    members.sort_unstable();
    Subgroup {
        group: Arc::clone(group),
        members,
    }
}

pub fn intersect(h: &Subgroup, k: &Subgroup) -> Subgroup {
    let members: Vec<ElemId> = h
        .members()
        .iter()
        .copied()
        .filter(|&a| k.contains(a))
        .collect();
    Subgroup {
        group: Arc::clone(h.group()),
        members,
    }
}

/// `N_G(H) = { g : H^g = H }`.
pub fn normalizer(h: &Subgroup) -> Subgroup {
    let group = h.group();
    let members: Vec<ElemId> = (0..group.order())
        .filter(|&g| {
            h.members()
                .iter()
                .all(|&a| h.contains(group.conj_elem(a, g)))
        })
        .collect();
    Subgroup {
        group: Arc::clone(group),
        members,
    }
}

/// Brute-force conjugacy test returning a witness `g` with `H^g = K`.
pub fn are_conjugate(h: &Subgroup, k: &Subgroup) -> Option<ElemId> {
    if h.order() != k.order() {
        return None;
    }
    let group = h.group();
    (0..group.order()).find(|&g| &conjugate(h, g) == k)
}

/// Every subgroup of `group`, found by breadth-first closure over cyclic
/// extensions: grow each known subgroup by one generator at a time.  A
/// powerset scan is infeasible past order 8; this closure is exact and is
/// cheap for the orders the engine targets.
pub fn enumerate_subgroups(
    group: &Arc<FiniteGroup>,
    bound: usize,
) -> Result<Vec<Subgroup>, GroupError> {
    if group.order() > bound {
        return Err(GroupError::GroupTooLarge {
            order: group.order(),
            bound,
        });
    }
    let mut found: HashSet<Vec<ElemId>> = HashSet::new();
    let trivial = Subgroup::trivial(group);
    found.insert(trivial.members().to_vec());
    let mut frontier = vec![trivial];
    while let Some(h) = frontier.pop() {
        for g in 0..group.order() {
            if h.contains(g) {
                continue;
            }
            let mut gens: Vec<ElemId> = h.members().to_vec();
            gens.push(g);
            let bigger = Subgroup::generated_by(group, &gens);
            if found.insert(bigger.members().to_vec()) {
                frontier.push(bigger);
            }
        }
    }
    let mut subgroups: Vec<Subgroup> = found
        .into_iter()
        .map(|members| Subgroup {
            group: Arc::clone(group),
            members,
        })
        .collect();
    subgroups.sort();
    Ok(subgroups)
}

/// Partitions a subgroup list into conjugacy classes, each sorted, classes
/// ordered by their least member.  The canonical class representative is the
/// lexicographically least member set.
pub fn conjugacy_classes_of_subgroups(subgroups: &[Subgroup]) -> Vec<Vec<Subgroup>> {
    let mut classes: Vec<Vec<Subgroup>> = Vec::new();
    let mut assigned: HashSet<Vec<ElemId>> = HashSet::new();
    for h in subgroups {
        if assigned.contains(h.members()) {
            continue;
        }
        let group = h.group();
        let mut class: Vec<Subgroup> = Vec::new();
        for g in 0..group.order() {
            let c = conjugate(h, g);
            if assigned.insert(c.members().to_vec()) {
                class.push(c);
            }
        }
        class.sort();
        classes.push(class);
    }
    classes
}

// ---------------------------------------------------------------------------
// Stock constructions used by fixtures and the CLI examples.
// ---------------------------------------------------------------------------

pub fn trivial_group() -> Arc<FiniteGroup> {
    FiniteGroup::from_generators("1", 1, vec![]).unwrap()
}

pub fn cyclic(n: usize) -> Arc<FiniteGroup> {
    assert!(n >= 1);
    if n == 1 {
        return trivial_group();
    }
    let images: Vec<u16> = (0..n).map(|x| ((x + 1) % n) as u16).collect();
    FiniteGroup::from_generators(format!("C{n}"), n, vec![Perm::from_images(images).unwrap()])
        .unwrap()
}

/// Dihedral group of order `2n` acting on `n` points.
pub fn dihedral(n: usize) -> Arc<FiniteGroup> {
    assert!(n >= 3);
    let rot: Vec<u16> = (0..n).map(|x| ((x + 1) % n) as u16).collect();
    let refl: Vec<u16> = (0..n).map(|x| ((n - x) % n) as u16).collect();
    FiniteGroup::from_generators(
        format!("D{n}"),
        n,
        vec![
            Perm::from_images(rot).unwrap(),
            Perm::from_images(refl).unwrap(),
        ],
    )
    .unwrap()
}

pub fn symmetric_3() -> Arc<FiniteGroup> {
    FiniteGroup::from_generators(
        "S3",
        3,
        vec![
            Perm::parse_cycles("(1 2)", 3).unwrap(),
            Perm::parse_cycles("(1 2 3)", 3).unwrap(),
        ],
    )
    .unwrap()
}

pub fn alternating_4() -> Arc<FiniteGroup> {
    FiniteGroup::from_generators(
        "A4",
        4,
        vec![
            Perm::parse_cycles("(1 2 3)", 4).unwrap(),
            Perm::parse_cycles("(1 2)(3 4)", 4).unwrap(),
        ],
    )
    .unwrap()
}

/// Direct product acting on the disjoint union of the factors' domains.
pub fn direct_product(a: &Arc<FiniteGroup>, b: &Arc<FiniteGroup>) -> Arc<FiniteGroup> {
    let da = a.degree();
    let db = b.degree();
    let mut gens: Vec<Perm> = Vec::new();
    for &g in a.generator_ids() {
        let pa = a.element(g);
        let mut images: Vec<u16> = (0..da + db).map(|x| x as u16).collect();
        for x in 0..da {
            images[x] = pa.apply(x) as u16;
        }
        gens.push(Perm::from_images(images).unwrap());
    }
    for &g in b.generator_ids() {
        let pb = b.element(g);
        let mut images: Vec<u16> = (0..da + db).map(|x| x as u16).collect();
        for x in 0..db {
            images[da + x] = (da + pb.apply(x)) as u16;
        }
        gens.push(Perm::from_images(images).unwrap());
    }
    FiniteGroup::from_generators(format!("{}x{}", a.name(), b.name()), da + db, gens).unwrap()
}

/// Embeds a factor subgroup `H1 x H2` of a `direct_product` group.
pub fn product_subgroup(
    prod: &Arc<FiniteGroup>,
    a: &Arc<FiniteGroup>,
    b: &Arc<FiniteGroup>,
    h1: &Subgroup,
    h2: &Subgroup,
) -> Subgroup {
    let da = a.degree();
    let db = b.degree();
    let mut members = Vec::with_capacity(h1.order() * h2.order());
    for &x in h1.members() {
        for &y in h2.members() {
            let px = a.element(x);
            let py = b.element(y);
            let mut images: Vec<u16> = Vec::with_capacity(da + db);
            for i in 0..da {
                images.push(px.apply(i) as u16);
            }
            for i in 0..db {
                images.push((da + py.apply(i)) as u16);
            }
            let p = Perm::from_images(images).unwrap();
            members.push(prod.elem_id(&p).expect("product element"));
        }
    }
    Subgroup::new(Arc::clone(prod), members).expect("product subgroup")
}

pub fn quaternion_8() -> Arc<FiniteGroup> {
    // Units {1,-1,i,-i,j,-j,k,-k} in that index order; built from the
    // quaternion relations and converted to a regular representation.
    let units: [(i32, usize); 8] = [
        (1, 0), (-1, 0), (1, 1), (-1, 1), (1, 2), (-1, 2), (1, 3), (-1, 3),
    ];
    // basis multiplication 1,i,j,k
    let basis = |a: usize, b: usize| -> (i32, usize) {
        match (a, b) {
            (0, x) => (1, x),
            (x, 0) => (1, x),
            (1, 1) => (-1, 0),
            (2, 2) => (-1, 0),
            (3, 3) => (-1, 0),
            (1, 2) => (1, 3),
            (2, 1) => (-1, 3),
            (2, 3) => (1, 1),
            (3, 2) => (-1, 1),
            (3, 1) => (1, 2),
            (1, 3) => (-1, 2),
            _ => unreachable!(),
        }
    };
    let mut table = vec![vec![0usize; 8]; 8];
    for x in 0..8 {
        for y in 0..8 {
            let (sx, bx) = units[x];
            let (sy, by) = units[y];
            let (sb, bb) = basis(bx, by);
            let s = sx * sy * sb;
            let z = units.iter().position(|&u| u == (s, bb)).unwrap();
            table[x][y] = z;
        }
    }
    FiniteGroup::from_cayley_table("Q8", table).unwrap()
}

/// Dicyclic group of order 12: `a^6 = 1, b^2 = a^3, b^-1 a b = a^-1`.
pub fn dicyclic_12() -> Arc<FiniteGroup> {
    // Elements a^i b^j with 0 <= i < 6, 0 <= j < 2, index = i + 6*j.
    let idx = |i: usize, j: usize| i + 6 * j;
    let mut table = vec![vec![0usize; 12]; 12];
    for i1 in 0..6 {
        for j1 in 0..2 {
            for i2 in 0..6 {
                for j2 in 0..2 {
                    // (a^i1 b^j1)(a^i2 b^j2): move b^j1 past a^i2 using b a = a^-1 b.
                    let i2m = if j1 == 1 { (6 - i2) % 6 } else { i2 };
                    let mut i = (i1 + i2m) % 6;
                    let mut j = j1 + j2;
                    if j == 2 {
                        // b^2 = a^3
                        i = (i + 3) % 6;
                        j = 0;
                    }
                    table[idx(i1, j1)][idx(i2, j2)] = idx(i, j);
                }
            }
        }
    }
    FiniteGroup::from_cayley_table("Dic3", table).unwrap()
}

/// All isomorphism types of groups of order <= 12, one representative each.
pub fn small_groups_up_to_12() -> Vec<Arc<FiniteGroup>> {
    let c = cyclic;
    vec![
        trivial_group(),
        c(2),
        c(3),
        c(4),
        direct_product(&c(2), &c(2)),
        c(5),
        c(6),
        symmetric_3(),
        c(7),
        c(8),
        direct_product(&c(4), &c(2)),
        direct_product(&direct_product(&c(2), &c(2)), &c(2)),
        dihedral(4),
        quaternion_8(),
        c(9),
        direct_product(&c(3), &c(3)),
        c(10),
        dihedral(5),
        c(11),
        c(12),
        direct_product(&c(6), &c(2)),
        dihedral(6),
        alternating_4(),
        dicyclic_12(),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent oracle: enumerate subgroups by closing every subset of a
    /// small generating pool and deduplicating.  Exponential, only usable on
    /// very small groups, which is exactly why it is a trustworthy check.
    fn subgroups_brute_force(group: &Arc<FiniteGroup>) -> Vec<Subgroup> {
        let n = group.order();
        assert!(n <= 8, "oracle limited to tiny groups");
        let mut found: HashSet<Vec<ElemId>> = HashSet::new();
        for mask in 0u32..(1 << n) {
            let gens: Vec<ElemId> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
            let h = Subgroup::generated_by(group, &gens);
            found.insert(h.members().to_vec());
        }
        let mut out: Vec<Subgroup> = found
            .into_iter()
            .map(|m| Subgroup::new(Arc::clone(group), m).unwrap())
            .collect();
        out.sort();
        out
    }

    #[test]
    fn c2_has_two_subgroups() {
        let g = cyclic(2);
        let subs = enumerate_subgroups(&g, DEFAULT_ORDER_BOUND).unwrap();
        assert_eq!(subs.len(), 2);
        assert_eq!(subs[0].order(), 1);
        assert_eq!(subs[1].order(), 2);
    }

    #[test]
    fn s3_subgroups_match_brute_force() {
        let g = symmetric_3();
        let subs = enumerate_subgroups(&g, DEFAULT_ORDER_BOUND).unwrap();
        let oracle = subgroups_brute_force(&g);
        assert_eq!(subs.len(), 6);
        assert_eq!(subs, oracle);
        let orders: Vec<usize> = subs.iter().map(|h| h.order()).collect();
        assert_eq!(orders, vec![1, 2, 2, 2, 3, 6]);
    }

    #[test]
    fn q8_has_six_subgroups() {
        let g = quaternion_8();
        assert_eq!(g.order(), 8);
        let subs = enumerate_subgroups(&g, DEFAULT_ORDER_BOUND).unwrap();
        let oracle = subgroups_brute_force(&g);
        assert_eq!(subs.len(), 6);
        assert_eq!(subs, oracle);
    }

    #[test]
    fn bound_is_enforced() {
        let g = dihedral(6);
        assert!(matches!(
            enumerate_subgroups(&g, 10),
            Err(GroupError::GroupTooLarge { order: 12, bound: 10 })
        ));
    }

    #[test]
    fn conjugation_moves_transpositions() {
        let g = symmetric_3();
        let t12 = Perm::parse_cycles("(1 2)", 3).unwrap();
        let t23 = Perm::parse_cycles("(2 3)", 3).unwrap();
        let r = Perm::parse_cycles("(1 2 3)", 3).unwrap();
        let h = Subgroup::generated_by(&g, &[g.elem_id(&t12).unwrap()]);
        let hg = conjugate(&h, g.elem_id(&r).unwrap());
        // (1 2)^(1 2 3) = (2 3) by direct permutation arithmetic.
        let expected = Subgroup::generated_by(&g, &[g.elem_id(&t23).unwrap()]);
        assert_eq!(hg, expected);
        assert_eq!(hg.order(), h.order());
        // identity conjugation and normal-subgroup conjugation fix the subgroup
        assert_eq!(conjugate(&h, g.identity()), h);
        let c3 = Subgroup::generated_by(&g, &[g.elem_id(&r).unwrap()]);
        for x in 0..g.order() {
            assert_eq!(conjugate(&c3, x), c3);
        }
    }

    #[test]
    fn intersect_normalizer_conjugacy() {
        let g = symmetric_3();
        let r = g.elem_id(&Perm::parse_cycles("(1 2 3)", 3).unwrap()).unwrap();
        let t12 = g.elem_id(&Perm::parse_cycles("(1 2)", 3).unwrap()).unwrap();
        let t13 = g.elem_id(&Perm::parse_cycles("(1 3)", 3).unwrap()).unwrap();
        let c3 = Subgroup::generated_by(&g, &[r]);
        let h12 = Subgroup::generated_by(&g, &[t12]);
        let h13 = Subgroup::generated_by(&g, &[t13]);
        assert_eq!(intersect(&h12, &c3).order(), 1);
        assert!(normalizer(&c3).is_whole_group());
        assert_eq!(normalizer(&h12), h12);
        let w = are_conjugate(&h12, &h13).expect("conjugate in S3");
        assert_eq!(conjugate(&h12, w), h13);
        assert!(are_conjugate(&h12, &c3).is_none());
    }

    #[test]
    fn conjugacy_is_equivalence_on_order_le_12() {
        for g in small_groups_up_to_12() {
            let subs = enumerate_subgroups(&g, DEFAULT_ORDER_BOUND).unwrap();
            for h in &subs {
                assert!(g.order() % h.order() == 0, "Lagrange fails in {}", g.name());
                assert!(are_conjugate(h, h).is_some());
            }
            for h in &subs {
                for k in &subs {
                    let hk = are_conjugate(h, k);
                    let kh = are_conjugate(k, h);
                    assert_eq!(hk.is_some(), kh.is_some());
                    if let Some(w) = hk {
                        assert_eq!(&conjugate(h, w), k);
                        // transitivity spot: conjugates of k reach everything h reaches
                        for l in &subs {
                            if are_conjugate(k, l).is_some() {
                                assert!(are_conjugate(h, l).is_some());
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn conjugation_permutes_the_subgroup_list() {
        let g = dihedral(4);
        let subs = enumerate_subgroups(&g, DEFAULT_ORDER_BOUND).unwrap();
        let set: HashSet<Vec<ElemId>> =
            subs.iter().map(|h| h.members().to_vec()).collect();
        for x in 0..g.order() {
            let image: HashSet<Vec<ElemId>> = subs
                .iter()
                .map(|h| conjugate(h, x).members().to_vec())
                .collect();
            assert_eq!(set, image);
        }
    }

    #[test]
    fn cayley_table_roundtrip_is_isomorphic() {
        let g = symmetric_3();
        let n = g.order();
        let table: Vec<Vec<usize>> = (0..n)
            .map(|a| (0..n).map(|b| g.mul(a, b)).collect())
            .collect();
        let h = FiniteGroup::from_cayley_table("S3-regular", table).unwrap();
        assert_eq!(h.order(), 6);
        assert_eq!(h.degree(), 6);
        let spectrum = |g: &Arc<FiniteGroup>| {
            let mut v: Vec<usize> = (0..g.order()).map(|a| g.elem_order(a)).collect();
            v.sort_unstable();
            v
        };
        assert_eq!(spectrum(&g), spectrum(&h));
    }
}

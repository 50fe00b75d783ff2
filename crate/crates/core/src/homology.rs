//! Bredon homology and cohomology through the standard resolution, the
//! dimension-zero predicate, and coefficient-battery dimension bounds.

use std::sync::Arc;

use crate::abgroup::AbGroup;
use crate::error::EngineError;
use crate::family::Family;
use crate::group::{conjugacy_classes_of_subgroups, normalizer};
use crate::module::{BredonModule, Variance};
use crate::orbit::OrbitCategory;
use crate::resolution::{standard_resolution, FreeResolution, DEFAULT_CELL_BUDGET};

/// `H_k = Tor_k(Z_triv, N)` for `k <= max_degree`, from the standard
/// resolution truncated one step above.
pub fn bredon_homology(
    cat: &Arc<OrbitCategory>,
    coeffs: &BredonModule,
    max_degree: usize,
    cell_budget: usize,
) -> Result<Vec<AbGroup>, EngineError> {
    let res = standard_resolution(cat, max_degree + 1, cell_budget)?;
    bredon_homology_with(&res, coeffs, max_degree)
}

pub fn bredon_homology_with(
    res: &FreeResolution,
    coeffs: &BredonModule,
    max_degree: usize,
) -> Result<Vec<AbGroup>, EngineError> {
    let complex = res.tensor_complex(max_degree + 1, coeffs)?;
    Ok(complex.homology_up_to(max_degree)?)
}

/// `H^k = Ext^k(Z_triv, M)` for `k <= max_degree`.
pub fn bredon_cohomology(
    cat: &Arc<OrbitCategory>,
    coeffs: &BredonModule,
    max_degree: usize,
    cell_budget: usize,
) -> Result<Vec<AbGroup>, EngineError> {
    let res = standard_resolution(cat, max_degree + 1, cell_budget)?;
    bredon_cohomology_with(&res, coeffs, max_degree)
}

pub fn bredon_cohomology_with(
    res: &FreeResolution,
    coeffs: &BredonModule,
    max_degree: usize,
) -> Result<Vec<AbGroup>, EngineError> {
    let cochain = res.cochain_complex(max_degree + 1, coeffs)?;
    Ok(cochain.cohomology_up_to(max_degree)?)
}

/// Verdict and evidence for `cd = 0`: the trivial module is projective iff
/// every inclusion-component of the family has a unique maximal element
/// which is its own normaliser.
#[derive(Debug)]
pub struct CdZeroReport {
    pub verdict: bool,
    /// Inclusion components as index lists into the family.
    pub components: Vec<Vec<usize>>,
    /// Per component: the maximal members and, when unique, whether the
    /// maximal member is self-normalising.
    pub component_details: Vec<ComponentDetail>,
    /// For a semi-full family the verdict must coincide with `G` belonging
    /// to the family; both computations are carried out independently.
    pub semi_full_cross_check: Option<bool>,
    pub explanation: String,
}

#[derive(Debug)]
pub struct ComponentDetail {
    pub maximal: Vec<usize>,
    pub self_normalizing: Option<bool>,
}

pub fn is_cd_zero(family: &Family) -> CdZeroReport {
    let members = family.members();
    let n = members.len();
    // components of the equivalence relation generated by inclusion
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for i in 0..n {
        for j in 0..n {
            if i != j && members[i].is_subgroup_of(&members[j]) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a] = b;
                }
            }
        }
    }
    let mut components: Vec<Vec<usize>> = Vec::new();
    {
        let mut roots: Vec<usize> = Vec::new();
        for i in 0..n {
            let r = find(&mut parent, i);
            match roots.iter().position(|&x| x == r) {
                Some(p) => components[p].push(i),
                None => {
                    roots.push(r);
                    components.push(vec![i]);
                }
            }
        }
    }
    let mut verdict = true;
    let mut component_details = Vec::new();
    let mut notes = Vec::new();
    for comp in &components {
        let maximal: Vec<usize> = comp
            .iter()
            .copied()
            .filter(|&i| {
                !members
                    .iter()
                    .enumerate()
                    .any(|(j, m)| j != i && members[i].is_subgroup_of(m))
            })
            .collect();
        if maximal.len() != 1 {
            verdict = false;
            notes.push(format!(
                "component {{{:?}}} has {} maximal members",
                comp,
                maximal.len()
            ));
            component_details.push(ComponentDetail {
                maximal,
                self_normalizing: None,
            });
            continue;
        }
        let m = &members[maximal[0]];
        let self_norm = normalizer(m).members() == m.members();
        if !self_norm {
            verdict = false;
            notes.push(format!(
                "maximal member #{} is not its own normaliser",
                maximal[0]
            ));
        }
        component_details.push(ComponentDetail {
            maximal,
            self_normalizing: Some(self_norm),
        });
    }
    let semi_full_cross_check = family.is_semi_full().then(|| {
        let alt = family.contains_whole_group();
        alt == verdict
    });
    let explanation = if notes.is_empty() {
        "every component has a unique self-normalising maximal member".to_string()
    } else {
        notes.join("; ")
    };
    CdZeroReport {
        verdict,
        components,
        component_details,
        semi_full_cross_check,
        explanation,
    }
}

/// Lower bounds for the (co)homological dimensions detected by a battery of
/// coefficient modules.  The battery defaults to the trivial module plus
/// one Yoneda module per conjugacy class of family members; the report
/// states lower bounds only.
#[derive(Debug)]
pub struct DimensionBounds {
    pub cd_lower: usize,
    pub hd_lower: usize,
    pub cd_zero: bool,
    pub probed_degrees: usize,
}

pub fn dimension_bounds(
    cat: &Arc<OrbitCategory>,
    max_degree: usize,
    cell_budget: usize,
) -> Result<DimensionBounds, EngineError> {
    let res = standard_resolution(cat, max_degree + 1, cell_budget)?;
    let class_reps: Vec<usize> = conjugacy_classes_of_subgroups(cat.family().members())
        .iter()
        .map(|class| {
            cat.object_of_subgroup(&class[0])
                .expect("class representative is a member")
        })
        .collect();

    let mut right_battery: Vec<BredonModule> =
        vec![BredonModule::trivial(cat, Variance::Right)];
    let mut left_battery: Vec<BredonModule> = vec![BredonModule::trivial(cat, Variance::Left)];
    for &k in &class_reps {
        right_battery.push(BredonModule::yoneda_right(cat, k));
        left_battery.push(BredonModule::yoneda_left(cat, k));
    }

    let mut cd_lower = 0usize;
    for m in &right_battery {
        let hs = bredon_cohomology_with(&res, m, max_degree)?;
        for (d, g) in hs.iter().enumerate() {
            if !g.is_zero() {
                cd_lower = cd_lower.max(d);
            }
        }
    }
    let mut hd_lower = 0usize;
    for n in &left_battery {
        let hs = bredon_homology_with(&res, n, max_degree)?;
        for (d, g) in hs.iter().enumerate() {
            if !g.is_zero() {
                hd_lower = hd_lower.max(d);
            }
        }
    }
    Ok(DimensionBounds {
        cd_lower,
        hd_lower,
        cd_zero: is_cd_zero(cat.family()).verdict,
        probed_degrees: max_degree,
    })
}

/// Enumerates the semi-full closures generated by a single conjugacy class
/// of subgroups, one family per class.
pub fn single_class_semi_full_families(group: &Arc<crate::group::FiniteGroup>) -> Vec<Family> {
    let subs = crate::group::enumerate_subgroups(group, crate::group::DEFAULT_ORDER_BOUND)
        .expect("desk-scale group");
    conjugacy_classes_of_subgroups(&subs)
        .into_iter()
        .map(|class| Family::semi_full_closure(group, class))
        .collect()
}

pub fn default_budget() -> usize {
    DEFAULT_CELL_BUDGET
}

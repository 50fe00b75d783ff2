//! Seeded random fixtures: coefficient modules and module morphisms used by
//! the property checks and the CLI's `check` verbs.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::Rng;

use crate::matrix::{kernel_basis, solve_exact, IMat};
use crate::module::{BredonModule, BredonMorphism, Variance};
use crate::orbit::OrbitCategory;

/// A random morphism between random free sums.  A morphism out of a free
/// sum is freely determined by one element of the target per generator,
/// which is how the matrices are filled in.
pub fn random_free_morphism(
    rng: &mut impl Rng,
    cat: &Arc<OrbitCategory>,
    variance: Variance,
) -> BredonMorphism {
    let objs = cat.object_count();
    let n_src = rng.gen_range(1..=2);
    let n_dst = rng.gen_range(1..=2);
    let src_gens: Vec<usize> = (0..n_src).map(|_| rng.gen_range(0..objs)).collect();
    let dst_gens: Vec<usize> = (0..n_dst).map(|_| rng.gen_range(0..objs)).collect();
    let (src, dst) = match variance {
        Variance::Right => (
            Arc::new(BredonModule::free_right_sum(cat, &src_gens)),
            Arc::new(BredonModule::free_right_sum(cat, &dst_gens)),
        ),
        Variance::Left => (
            Arc::new(BredonModule::free_left_sum(cat, &src_gens)),
            Arc::new(BredonModule::free_left_sum(cat, &dst_gens)),
        ),
    };
    // one target element per source generator
    let images: Vec<Vec<i64>> = src_gens
        .iter()
        .map(|&k| {
            (0..dst.rank(k))
                .map(|_| rng.gen_range(-2..=2))
                .collect()
        })
        .collect();
    let block_offset = |gens: &[usize], obj: usize, which: usize| -> usize {
        match variance {
            Variance::Right => gens[..which].iter().map(|&k| cat.hom_size(obj, k)).sum(),
            Variance::Left => gens[..which].iter().map(|&k| cat.hom_size(k, obj)).sum(),
        }
    };
    let mut mats = Vec::with_capacity(objs);
    for h in 0..objs {
        let mut t = IMat::zeros(dst.rank(h), src.rank(h));
        for (i, &k) in src_gens.iter().enumerate() {
            let off = block_offset(&src_gens, h, i);
            let homs = match variance {
                Variance::Right => cat.hom_set(h, k),
                Variance::Left => cat.hom_set(k, h),
            };
            for (u_ix, u) in homs.iter().enumerate() {
                // image of basis element u is act(u)(v_i)
                let a = dst.act(u);
                for r in 0..a.rows {
                    let mut val = 0i64;
                    for c in 0..a.cols {
                        val += a[(r, c)] * images[i][c];
                    }
                    t[(r, off + u_ix)] = val;
                }
            }
        }
        mats.push(t);
    }
    BredonMorphism::new(src, dst, mats).expect("free morphism shapes agree")
}

/// The kernel of a module morphism as a module: objectwise kernel lattices
/// with the induced (exactly solved) actions.
pub fn kernel_module(phi: &BredonMorphism) -> BredonModule {
    let cat = phi.src.cat();
    let objs = cat.object_count();
    let kernels: Vec<Vec<Vec<BigInt>>> = (0..objs)
        .map(|o| kernel_basis(&phi.mats[o]))
        .collect();
    let ranks: Vec<usize> = kernels.iter().map(|k| k.len()).collect();
    let basis_mats: Vec<IMat> = (0..objs)
        .map(|o| {
            let mut b = IMat::zeros(phi.src.rank(o), ranks[o]);
            for (j, col) in kernels[o].iter().enumerate() {
                for (i, v) in col.iter().enumerate() {
                    b[(i, j)] = v.to_i64().expect("kernel entries fit i64 at desk scale");
                }
            }
            b
        })
        .collect();
    let variance = phi.src.variance();
    let mut acts = Vec::with_capacity(cat.total_morphisms());
    for f in cat.all_morphisms() {
        let a = phi.src.act(&f);
        let (from, to) = match variance {
            Variance::Right => (f.dst, f.src),
            Variance::Left => (f.src, f.dst),
        };
        let mut m = IMat::zeros(ranks[to], ranks[from]);
        for j in 0..ranks[from] {
            // move the j-th kernel basis vector and re-express it
            let moved: Vec<BigInt> = (0..a.rows)
                .map(|r| {
                    (0..a.cols)
                        .map(|c| BigInt::from(a[(r, c)]) * BigInt::from(basis_mats[from][(c, j)]))
                        .sum()
                })
                .collect();
            let x = solve_exact(&basis_mats[to], &moved)
                .expect("module action preserves kernels");
            for (r, v) in x.iter().enumerate() {
                m[(r, j)] = v.to_i64().expect("desk scale");
            }
        }
        acts.push(m);
    }
    BredonModule::from_table(Arc::clone(cat), variance, ranks, acts)
        .expect("kernel module shapes agree")
}

/// A random coefficient module: a free sum, the trivial module, or the
/// kernel of a random morphism of free sums (generally not free).
pub fn random_module(
    rng: &mut impl Rng,
    cat: &Arc<OrbitCategory>,
    variance: Variance,
) -> BredonModule {
    match rng.gen_range(0..4) {
        0 => BredonModule::trivial(cat, variance),
        1 | 2 => {
            let n = rng.gen_range(1..=2);
            let gens: Vec<usize> = (0..n)
                .map(|_| rng.gen_range(0..cat.object_count()))
                .collect();
            match variance {
                Variance::Right => BredonModule::free_right_sum(cat, &gens),
                Variance::Left => BredonModule::free_left_sum(cat, &gens),
            }
        }
        _ => kernel_module(&random_free_morphism(rng, cat, variance)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{Family, FamilySpec};
    use crate::group::{cyclic, symmetric_3};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_morphisms_are_natural_and_kernels_are_functorial() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for g in [cyclic(4), symmetric_3()] {
            let cat =
                OrbitCategory::build(Family::build(&g, &FamilySpec::All).unwrap()).unwrap();
            for variance in [Variance::Right, Variance::Left] {
                for _ in 0..6 {
                    let phi = random_free_morphism(&mut rng, &cat, variance);
                    assert!(phi.check_natural());
                    let ker = kernel_module(&phi);
                    ker.validate().unwrap();
                }
            }
        }
    }

    #[test]
    fn random_modules_are_valid_functors() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let g = symmetric_3();
        let cat = OrbitCategory::build(Family::build(&g, &FamilySpec::All).unwrap()).unwrap();
        for variance in [Variance::Right, Variance::Left] {
            for _ in 0..10 {
                random_module(&mut rng, &cat, variance).validate().unwrap();
            }
        }
    }
}

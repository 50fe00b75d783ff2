//! Timing probe for the resolution and reduction pipeline on the heaviest
//! desk-scale instance.  Run with `cargo run --release --example reduction_bench`.

use std::sync::Arc;
use std::time::Instant;

use bredon_core::family::{Family, FamilySpec};
use bredon_core::group::symmetric_3;
use bredon_core::module::{BredonModule, Variance};
use bredon_core::orbit::OrbitCategory;
use bredon_core::resolution::{standard_resolution, DEFAULT_CELL_BUDGET};
use bredon_core::sparse::reduce;

fn main() {
    let g = symmetric_3();
    let cat = OrbitCategory::build(Family::build(&g, &FamilySpec::All).unwrap()).unwrap();
    let t0 = Instant::now();
    let res = standard_resolution(&cat, 4, DEFAULT_CELL_BUDGET).unwrap();
    eprintln!(
        "resolution: {:?} (levels {:?})",
        t0.elapsed(),
        res.levels.iter().map(|l| l.len()).collect::<Vec<_>>()
    );
    let n = BredonModule::trivial(&cat, Variance::Left);
    let t0 = Instant::now();
    let complex = res.tensor_complex(4, &n).unwrap();
    eprintln!("tensor complex: {:?}", t0.elapsed());
    for i in 0..complex.boundaries.len() {
        let t0 = Instant::now();
        let r = reduce(&complex.boundaries[i]);
        eprintln!(
            "reduce d_{} ({}x{}, nnz {}): {:?} rank {}",
            i + 1,
            complex.boundaries[i].rows,
            complex.boundaries[i].n_cols(),
            complex.boundaries[i].nnz(),
            t0.elapsed(),
            r.rank
        );
    }
}

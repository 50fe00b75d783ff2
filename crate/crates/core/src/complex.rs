//! Chain complexes of finitely generated free abelian groups and their
//! integral homology.

use crate::abgroup::AbGroup;
use crate::error::ComplexError;
use crate::sparse::{reduce, SparseMat, SparseReduction};

/// `C_0 <- C_1 <- ... <- C_top` with `boundary[n]` the matrix of
/// `d_{n+1}: C_{n+1} -> C_n` (rows index `C_n`, columns index `C_{n+1}`).
pub struct ChainComplex {
    pub ranks: Vec<usize>,
    pub boundaries: Vec<SparseMat>,
}

impl ChainComplex {
    pub fn new(ranks: Vec<usize>, boundaries: Vec<SparseMat>) -> Result<Self, ComplexError> {
        if boundaries.len() + 1 != ranks.len() && !(ranks.is_empty() && boundaries.is_empty()) {
            return Err(ComplexError::Shape(format!(
                "{} ranks with {} boundaries",
                ranks.len(),
                boundaries.len()
            )));
        }
        for (n, b) in boundaries.iter().enumerate() {
            if b.rows != ranks[n] || b.n_cols() != ranks[n + 1] {
                return Err(ComplexError::Shape(format!(
                    "d_{} is {}x{}, expected {}x{}",
                    n + 1,
                    b.rows,
                    b.n_cols(),
                    ranks[n],
                    ranks[n + 1]
                )));
            }
        }
        Ok(ChainComplex { ranks, boundaries })
    }

    pub fn top_degree(&self) -> usize {
        self.ranks.len().saturating_sub(1)
    }

    pub fn rank(&self, n: usize) -> usize {
        self.ranks.get(n).copied().unwrap_or(0)
    }

    fn boundary(&self, n: usize) -> Option<&SparseMat> {
        if n == 0 {
            None
        } else {
            self.boundaries.get(n - 1)
        }
    }

    /// Verifies `d_n . d_{n+1} = 0` for all composable pairs.
    pub fn check_boundary_squares(&self) -> Result<(), ComplexError> {
        for n in 1..self.boundaries.len() + 1 {
            if let (Some(dn), Some(dn1)) = (self.boundary(n), self.boundary(n + 1)) {
                if !dn.mul(dn1).is_zero() {
                    return Err(ComplexError::BoundaryMismatch { n });
                }
            }
        }
        Ok(())
    }

    /// `H_n = ker d_n / im d_{n+1}` in invariant-factor form.
    ///
    /// For a complex of free abelian groups the free rank is
    /// `rank C_n - rank d_n - rank d_{n+1}` and the torsion is exactly the
    /// nontrivial invariant factors of `d_{n+1}`.
    pub fn homology(&self, n: usize) -> Result<AbGroup, ComplexError> {
        if n >= self.ranks.len() {
            return Ok(AbGroup::zero());
        }
        if let (Some(dn), Some(dn1)) = (self.boundary(n), self.boundary(n + 1)) {
            if !dn.mul(dn1).is_zero() {
                return Err(ComplexError::BoundaryMismatch { n });
            }
        }
        let r_in = self.boundary(n).map_or(0, |b| reduce(b).rank);
        let out = self
            .boundary(n + 1)
            .map(reduce)
            .unwrap_or(SparseReduction {
                rank: 0,
                factors: Vec::new(),
            });
        let free = self.rank(n) - r_in - out.rank;
        Ok(AbGroup::from_bigint_factors(free, &out.factors))
    }

    /// Homology in all degrees `0..=max_degree`, reusing one reduction per
    /// boundary matrix.
    pub fn homology_up_to(&self, max_degree: usize) -> Result<Vec<AbGroup>, ComplexError> {
        self.check_boundary_squares()?;
        let top = max_degree.min(self.top_degree());
        let mut reductions: Vec<SparseReduction> = Vec::new();
        for b in self.boundaries.iter().take(top + 1) {
            reductions.push(reduce(b));
        }
        let mut out = Vec::new();
        for n in 0..=max_degree {
            if n >= self.ranks.len() {
                out.push(AbGroup::zero());
                continue;
            }
            let r_in = if n == 0 { 0 } else { reductions[n - 1].rank };
            let (r_out, factors) = match reductions.get(n) {
                Some(r) => (r.rank, r.factors.as_slice()),
                None => (0, &[] as &[_]),
            };
            out.push(AbGroup::from_bigint_factors(
                self.rank(n) - r_in - r_out,
                factors,
            ));
        }
        Ok(out)
    }

    /// Homology of the dual cochain complex: `H^n` with the same grading.
    pub fn cohomology_up_to(&self, max_degree: usize) -> Result<Vec<AbGroup>, ComplexError> {
        self.check_boundary_squares()?;
        // delta^(n): C^(n-1) -> C^n is the transpose of d_n.  H^n needs the
        // rank of both neighbours and the invariant factors of the incoming
        // map delta^(n).
        let top = max_degree.min(self.top_degree());
        let mut reductions: Vec<SparseReduction> = Vec::new();
        for b in self.boundaries.iter().take(top + 1) {
            // rank and factors are transpose-invariant
            reductions.push(reduce(b));
        }
        let mut out = Vec::new();
        for n in 0..=max_degree {
            if n >= self.ranks.len() {
                out.push(AbGroup::zero());
                continue;
            }
            let (r_out,) = match reductions.get(n) {
                Some(r) => (r.rank,),
                None => (0,),
            };
            let (r_in, factors) = if n == 0 {
                (0, &[] as &[_])
            } else {
                (reductions[n - 1].rank, reductions[n - 1].factors.as_slice())
            };
            out.push(AbGroup::from_bigint_factors(
                self.rank(n) - r_in - r_out,
                factors,
            ));
        }
        Ok(out)
    }
}

/// A cochain complex `C^0 -> C^1 -> ...` given by the maps
/// `deltas[n] = delta^(n+1): C^n -> C^(n+1)` (rows index `C^(n+1)`).
pub struct CochainComplex {
    pub ranks: Vec<usize>,
    pub deltas: Vec<SparseMat>,
}

impl CochainComplex {
    pub fn new(ranks: Vec<usize>, deltas: Vec<SparseMat>) -> Result<Self, ComplexError> {
        if deltas.len() + 1 != ranks.len() && !(ranks.is_empty() && deltas.is_empty()) {
            return Err(ComplexError::Shape(format!(
                "{} ranks with {} coboundaries",
                ranks.len(),
                deltas.len()
            )));
        }
        for (n, d) in deltas.iter().enumerate() {
            if d.rows != ranks[n + 1] || d.n_cols() != ranks[n] {
                return Err(ComplexError::Shape(format!(
                    "delta^{} is {}x{}, expected {}x{}",
                    n + 1,
                    d.rows,
                    d.n_cols(),
                    ranks[n + 1],
                    ranks[n]
                )));
            }
        }
        Ok(CochainComplex { ranks, deltas })
    }

    pub fn rank(&self, n: usize) -> usize {
        self.ranks.get(n).copied().unwrap_or(0)
    }

    pub fn check_coboundary_squares(&self) -> Result<(), ComplexError> {
        for n in 0..self.deltas.len().saturating_sub(1) {
            if !self.deltas[n + 1].mul(&self.deltas[n]).is_zero() {
                return Err(ComplexError::BoundaryMismatch { n: n + 1 });
            }
        }
        Ok(())
    }

    /// `H^n = ker delta^(n+1) / im delta^(n)`; torsion comes from the
    /// incoming map `delta^(n)`.
    pub fn cohomology_up_to(&self, max_degree: usize) -> Result<Vec<AbGroup>, ComplexError> {
        self.check_coboundary_squares()?;
        let top = max_degree.min(self.ranks.len().saturating_sub(1));
        let mut reductions: Vec<SparseReduction> = Vec::new();
        for d in self.deltas.iter().take(top + 1) {
            reductions.push(reduce(d));
        }
        let mut out = Vec::new();
        for n in 0..=max_degree {
            if n >= self.ranks.len() {
                out.push(AbGroup::zero());
                continue;
            }
            let r_out = reductions.get(n).map_or(0, |r| r.rank);
            let (r_in, factors) = if n == 0 {
                (0, &[] as &[_])
            } else {
                (reductions[n - 1].rank, reductions[n - 1].factors.as_slice())
            };
            out.push(AbGroup::from_bigint_factors(
                self.rank(n) - r_in - r_out,
                factors,
            ));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::IMat;

    fn sparse(rows: Vec<Vec<i64>>) -> SparseMat {
        SparseMat::from_dense(&IMat::from_rows(rows))
    }

    #[test]
    fn circle() {
        // one 0-cell, one 1-cell, d_1 = 0
        let c = ChainComplex::new(vec![1, 1], vec![sparse(vec![vec![0]])]).unwrap();
        assert_eq!(c.homology(0).unwrap(), AbGroup::free(1));
        assert_eq!(c.homology(1).unwrap(), AbGroup::free(1));
        assert_eq!(c.homology(2).unwrap(), AbGroup::zero());
    }

    #[test]
    fn real_projective_plane() {
        // cells 1,1,1 with d_1 = 0 and d_2 = [2]
        let c = ChainComplex::new(
            vec![1, 1, 1],
            vec![sparse(vec![vec![0]]), sparse(vec![vec![2]])],
        )
        .unwrap();
        let h = c.homology_up_to(2).unwrap();
        assert_eq!(h[0], AbGroup::free(1));
        assert_eq!(h[1], AbGroup::from_parts(0, [2]));
        assert_eq!(h[2], AbGroup::zero());
        let hc = c.cohomology_up_to(2).unwrap();
        assert_eq!(hc[0], AbGroup::free(1));
        assert_eq!(hc[1], AbGroup::zero());
        assert_eq!(hc[2], AbGroup::from_parts(0, [2]));
    }

    #[test]
    fn exact_segment_has_no_homology() {
        // Z --id--> Z in degrees 1,0
        let c = ChainComplex::new(vec![1, 1], vec![sparse(vec![vec![1]])]).unwrap();
        assert_eq!(c.homology(0).unwrap(), AbGroup::zero());
        assert_eq!(c.homology(1).unwrap(), AbGroup::zero());
    }

    #[test]
    fn boundary_square_is_checked() {
        let c = ChainComplex::new(
            vec![1, 1, 1],
            vec![sparse(vec![vec![1]]), sparse(vec![vec![1]])],
        )
        .unwrap();
        assert!(matches!(
            c.homology(1),
            Err(ComplexError::BoundaryMismatch { n: 1 })
        ));
    }
}

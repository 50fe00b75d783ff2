//! Sparse integer matrices and a two-stage reduction for rank and invariant
//! factors.
//!
//! Boundary matrices of the complexes built here are huge but collapse almost
//! entirely under unit pivots.  Stage one eliminates with pivots of absolute
//! value one only (pure integer row/column operations, no divisibility
//! bookkeeping), splitting off a `diag(+-1)` block per pivot; pivots are
//! chosen by Markowitz cost `(col_len - 1) * (row_len - 1)` to keep fill-in
//! flat.  Whatever survives goes through the dense Smith reduction as a
//! small core.  Unit pivots contribute trivial invariant factors, so rank
//! and nontrivial factors are exactly `(#pivots + rank(core), factors(core))`.

use num_bigint::BigInt;

use crate::matrix::{invariant_factors, invariant_factors_i64, Mat};

/// Column-major sparse matrix with `i64` entries.
#[derive(Clone)]
pub struct SparseMat {
    pub rows: usize,
    pub cols: Vec<Vec<(u32, i64)>>, // each column sorted by row index
}

impl SparseMat {
    pub fn new(rows: usize, cols: usize) -> Self {
        SparseMat {
            rows,
            cols: vec![Vec::new(); cols],
        }
    }

    pub fn n_cols(&self) -> usize {
        self.cols.len()
    }

    /// Accumulates `v` at `(row, col)`; entries may arrive in any order and
    /// repeats are summed.
    pub fn add(&mut self, row: usize, col: usize, v: i64) {
        if v == 0 {
            return;
        }
        self.cols[col].push((row as u32, v));
    }

    /// Sorts columns and merges duplicate entries.
    pub fn normalize(&mut self) {
        for col in &mut self.cols {
            col.sort_unstable_by_key(|&(r, _)| r);
            let mut out: Vec<(u32, i64)> = Vec::with_capacity(col.len());
            for &(r, v) in col.iter() {
                match out.last_mut() {
                    Some(last) if last.0 == r => last.1 += v,
                    _ => out.push((r, v)),
                }
            }
            out.retain(|&(_, v)| v != 0);
            *col = out;
        }
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(|c| c.len()).sum()
    }

    pub fn transpose(&self) -> SparseMat {
        let mut t = SparseMat::new(self.n_cols(), self.rows);
        for (j, col) in self.cols.iter().enumerate() {
            for &(r, v) in col {
                t.cols[r as usize].push((j as u32, v));
            }
        }
        // columns arrive already sorted by construction order
        t
    }

    pub fn from_dense(m: &Mat<i64>) -> Self {
        let mut s = SparseMat::new(m.rows, m.cols);
        for i in 0..m.rows {
            for j in 0..m.cols {
                s.add(i, j, m[(i, j)]);
            }
        }
        s.normalize();
        s
    }

    pub fn to_dense(&self) -> Mat<i64> {
        let mut m = Mat::zeros(self.rows, self.n_cols());
        for (j, col) in self.cols.iter().enumerate() {
            for &(r, v) in col {
                m[(r as usize, j)] += v;
            }
        }
        m
    }

    /// Sparse product `self * other`, for boundary-square checks.
    pub fn mul(&self, other: &SparseMat) -> SparseMat {
        assert_eq!(self.n_cols(), other.rows, "sparse product shape mismatch");
        let mut out = SparseMat::new(self.rows, other.n_cols());
        let mut acc: std::collections::HashMap<u32, i64> = std::collections::HashMap::new();
        for (j, col) in other.cols.iter().enumerate() {
            acc.clear();
            for &(k, v) in col {
                for &(r, w) in &self.cols[k as usize] {
                    *acc.entry(r).or_insert(0) += v * w;
                }
            }
            for (&r, &v) in acc.iter() {
                out.add(r as usize, j, v);
            }
        }
        out.normalize();
        out
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_empty())
    }
}

/// Result of the two-stage reduction.
pub struct SparseReduction {
    pub rank: usize,
    pub factors: Vec<BigInt>, // nontrivial invariant factors, divisor chain
}

struct Phase1 {
    cols: Vec<Option<Vec<(u32, i64)>>>, // None = retired column
    row_cols: Vec<Vec<u32>>,            // row -> candidate columns (lazily cleaned)
    row_nnz: Vec<u32>,                  // exact live-entry count per row
    row_alive: Vec<bool>,
    pivots: usize,
    overflow: bool,
    axpy_ops: u64,
    scan_ops: std::cell::Cell<u64>,
    in_heap: Vec<bool>,
    scratch: Vec<(u32, i64)>,
}

impl Phase1 {
    fn new(m: SparseMat) -> Self {
        let rows = m.rows;
        let mut row_cols = vec![Vec::new(); rows];
        let mut row_nnz = vec![0u32; rows];
        for (j, col) in m.cols.iter().enumerate() {
            for &(r, _) in col {
                row_cols[r as usize].push(j as u32);
                row_nnz[r as usize] += 1;
            }
        }
        Phase1 {
            cols: m.cols.into_iter().map(Some).collect(),
            row_cols,
            row_nnz,
            row_alive: vec![true; rows],
            pivots: 0,
            overflow: false,
            axpy_ops: 0,
            scan_ops: std::cell::Cell::new(0),
            in_heap: Vec::new(),
            scratch: Vec::new(),
        }
    }

    fn col_get(col: &[(u32, i64)], r: u32) -> i64 {
        col.binary_search_by_key(&r, |&(rr, _)| rr)
            .map(|ix| col[ix].1)
            .unwrap_or(0)
    }

    /// Best unit pivot of a column by Markowitz cost, if any.
    fn best_unit(&self, col: &[(u32, i64)]) -> Option<(u64, u32)> {
        self.scan_ops.set(self.scan_ops.get() + col.len() as u64);
        let col_len = col.len() as u64;
        let mut best: Option<(u64, u32)> = None;
        for &(r, v) in col {
            if v == 1 || v == -1 {
                let cost = (col_len - 1) * (self.row_nnz[r as usize].saturating_sub(1)) as u64;
                if best.map_or(true, |(bc, _)| cost < bc) {
                    best = Some((cost, r));
                }
            }
        }
        best
    }

    /// `col[dst] -= q * col[src]`, maintaining row counts; false on overflow.
    fn col_axpy(&mut self, dst: u32, src_col: &[(u32, i64)], skip_row: u32, q: i64) -> bool {
        let dst_col = self.cols[dst as usize].take().expect("dst alive");
        self.axpy_ops += (dst_col.len() + src_col.len()) as u64;
        let mut out = std::mem::take(&mut self.scratch);
        out.clear();
        out.reserve(dst_col.len() + src_col.len());
        let (mut a, mut b) = (0usize, 0usize);
        let mut ok = true;
        loop {
            match (dst_col.get(a), src_col.get(b)) {
                (Some(&(ra, va)), Some(&(rb, vb))) => {
                    if ra < rb {
                        out.push((ra, va));
                        a += 1;
                    } else if rb < ra {
                        match q.checked_mul(vb) {
                            Some(p) if p != 0 => {
                                out.push((rb, -p));
                                if rb != skip_row {
                                    self.row_cols[rb as usize].push(dst);
                                    self.row_nnz[rb as usize] += 1;
                                }
                            }
                            Some(_) => {}
                            None => {
                                ok = false;
                                break;
                            }
                        }
                        b += 1;
                    } else {
                        match q.checked_mul(vb).and_then(|p| va.checked_sub(p)) {
                            Some(p) => {
                                if p != 0 {
                                    out.push((ra, p));
                                } else if ra != skip_row {
                                    self.row_nnz[ra as usize] -= 1;
                                }
                            }
                            None => {
                                ok = false;
                                break;
                            }
                        }
                        a += 1;
                        b += 1;
                    }
                }
                (Some(&(ra, va)), None) => {
                    out.push((ra, va));
                    a += 1;
                }
                (None, Some(&(rb, vb))) => {
                    match q.checked_mul(vb) {
                        Some(p) if p != 0 => {
                            out.push((rb, -p));
                            if rb != skip_row {
                                self.row_cols[rb as usize].push(dst);
                                self.row_nnz[rb as usize] += 1;
                            }
                        }
                        Some(_) => {}
                        None => {
                            ok = false;
                            break;
                        }
                    }
                    b += 1;
                }
                (None, None) => break,
            }
        }
        if !ok {
            self.overflow = true;
            self.scratch = out;
            self.cols[dst as usize] = Some(dst_col);
            return false;
        }
        self.cols[dst as usize] = Some(out);
        self.scratch = dst_col; // reuse the freed allocation next round
        true
    }

    /// Eliminates with the unit entry at `(r, c)`: clears row `r` from every
    /// other column, then retires row `r` and column `c`.  Clearing the rest
    /// of column `c` afterwards would use row `r`, by then a unit vector, so
    /// nothing else changes and both can simply be dropped.  Returns the
    /// touched columns, or `None` on overflow.
    fn pivot(&mut self, r: u32, c: u32, v: i64) -> Option<Vec<u32>> {
        debug_assert!(v == 1 || v == -1);
        let src_col = self.cols[c as usize].take().expect("pivot column alive");
        // book off the pivot column's rows
        for &(rr, _) in &src_col {
            self.row_nnz[rr as usize] -= 1;
        }
        let mut candidates = std::mem::take(&mut self.row_cols[r as usize]);
        candidates.sort_unstable();
        candidates.dedup();
        let mut touched = Vec::new();
        for j in candidates {
            if j == c || self.cols[j as usize].is_none() {
                continue;
            }
            let w = Self::col_get(self.cols[j as usize].as_ref().unwrap(), r);
            if w == 0 {
                continue;
            }
            let q = w * v; // w / v for unit v
            if !self.col_axpy(j, &src_col, r, q) {
                self.cols[c as usize] = Some(src_col);
                return None;
            }
            // the entry at (r, j) is gone now
            self.row_nnz[r as usize] -= 1;
            touched.push(j);
        }
        self.row_alive[r as usize] = false;
        self.row_nnz[r as usize] = 0;
        self.pivots += 1;
        Some(touched)
    }

    /// Unit-pivot elimination to exhaustion, cheapest Markowitz cost first.
    ///
    /// Heap keys are lazy: a column enters with a cheap proxy key (its
    /// length) and its true Markowitz cost is computed once, on pop.  A
    /// per-column membership flag keeps repeatedly touched columns from
    /// flooding the heap, which caps the scan volume near one or two column
    /// sweeps per pivot.
    fn run(&mut self) -> bool {
        use std::cmp::Reverse;
        use std::collections::BinaryHeap;
        self.in_heap = vec![false; self.cols.len()];
        let mut heap: BinaryHeap<Reverse<(u64, u32)>> = BinaryHeap::new();
        loop {
            for (j, col) in self.cols.iter().enumerate() {
                if let Some(col) = col {
                    if !col.is_empty() && !self.in_heap[j] {
                        self.in_heap[j] = true;
                        heap.push(Reverse((col.len() as u64 - 1, j as u32)));
                    }
                }
            }
            if heap.is_empty() {
                return true;
            }
            let mut progressed = false;
            while let Some(Reverse((key, j))) = heap.pop() {
                self.in_heap[j as usize] = false;
                let Some(col) = &self.cols[j as usize] else {
                    continue;
                };
                let Some((true_cost, r)) = self.best_unit(col) else {
                    continue;
                };
                if true_cost > key {
                    self.in_heap[j as usize] = true;
                    heap.push(Reverse((true_cost, j)));
                    continue;
                }
                let v = Self::col_get(col, r);
                match self.pivot(r, j, v) {
                    None => return false, // overflow
                    Some(touched) => {
                        progressed = true;
                        for t in touched {
                            if self.in_heap[t as usize] {
                                continue;
                            }
                            if let Some(col) = &self.cols[t as usize] {
                                if !col.is_empty() {
                                    self.in_heap[t as usize] = true;
                                    heap.push(Reverse((col.len() as u64 - 1, t)));
                                }
                            }
                        }
                    }
                }
            }
            if !progressed {
                return true;
            }
            // rescan in case row-count changes re-enabled skipped columns
        }
    }

    /// Collects survivors as a dense matrix over surviving rows.
    fn residue(&self) -> Mat<i64> {
        let live_rows: Vec<u32> = (0..self.row_alive.len() as u32)
            .filter(|&r| self.row_alive[r as usize] && self.row_nnz[r as usize] > 0)
            .collect();
        let row_ix: std::collections::HashMap<u32, usize> = live_rows
            .iter()
            .enumerate()
            .map(|(i, &r)| (r, i))
            .collect();
        let live_cols: Vec<&Vec<(u32, i64)>> = self
            .cols
            .iter()
            .filter_map(|c| c.as_ref())
            .filter(|c| !c.is_empty())
            .collect();
        let mut m = Mat::zeros(live_rows.len(), live_cols.len());
        for (j, col) in live_cols.iter().enumerate() {
            for &(r, v) in col.iter() {
                m[(row_ix[&r], j)] = v;
            }
        }
        m
    }
}

/// Rank and nontrivial invariant factors of a sparse integer matrix.
pub fn reduce(m: &SparseMat) -> SparseReduction {
    let mut normalized = m.clone();
    normalized.normalize();
    // elimination clears pivot rows across columns; the tall orientation
    // keeps those sweeps short
    if normalized.n_cols() > 2 * normalized.rows {
        normalized = normalized.transpose();
    }
    let mut p1 = Phase1::new(normalized);
    if p1.run() {
        let core = p1.residue();
        if std::env::var_os("BREDON_SPARSE_DEBUG").is_some() {
            eprintln!(
                "  [sparse] pivots {} core {}x{} axpy_ops {} scan_ops {}",
                p1.pivots, core.rows, core.cols, p1.axpy_ops, p1.scan_ops.get()
            );
        }
        let (core_rank, factors) = invariant_factors_i64(&core);
        return SparseReduction {
            rank: p1.pivots + core_rank,
            factors,
        };
    }
    // i64 overflow in the sparse phase: redo everything in BigInt, dense.
    // This path is a safety net; desk-scale inputs do not reach it.
    let dense = m.to_dense().to_big();
    let (rank, factors) =
        invariant_factors(&dense).expect("BigInt reduction cannot overflow");
    SparseReduction { rank, factors }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::IMat;

    fn reference(m: &SparseMat) -> (usize, Vec<BigInt>) {
        invariant_factors_i64(&m.to_dense())
    }

    #[test]
    fn agrees_with_dense_reduction() {
        let samples = vec![
            vec![vec![2, 4], vec![6, 8]],
            vec![vec![1, 0, 1], vec![0, 1, 1], vec![1, 1, 0]],
            vec![vec![0, 0], vec![0, 0]],
            vec![vec![3, 0], vec![0, 5], vec![0, 0]],
            vec![vec![2, 1, 0, -1], vec![4, 3, 1, 0], vec![-2, 0, 7, 2]],
            vec![vec![1, 1, 1, 1, 1]],
            vec![vec![2], vec![3], vec![5], vec![7]],
        ];
        for rows in samples {
            let dense = IMat::from_rows(rows);
            let sparse = SparseMat::from_dense(&dense);
            let red = reduce(&sparse);
            let (rank, factors) = reference(&sparse);
            assert_eq!(red.rank, rank);
            assert_eq!(red.factors, factors);
        }
    }

    #[test]
    fn duplicate_entries_accumulate() {
        let mut s = SparseMat::new(2, 2);
        s.add(0, 0, 1);
        s.add(0, 0, 1);
        s.add(1, 1, 3);
        s.add(1, 1, -3);
        s.normalize();
        assert_eq!(s.nnz(), 1);
        let red = reduce(&s);
        assert_eq!(red.rank, 1);
        assert_eq!(red.factors, vec![BigInt::from(2)]);
    }

    #[test]
    fn sparse_product_matches_dense() {
        let a = IMat::from_rows(vec![vec![1, 2], vec![3, 4]]);
        let b = IMat::from_rows(vec![vec![0, 1], vec![1, 1]]);
        let sa = SparseMat::from_dense(&a);
        let sb = SparseMat::from_dense(&b);
        assert_eq!(sa.mul(&sb).to_dense(), a.mul(&b));
    }

    #[test]
    fn random_like_matrices_agree_with_dense() {
        // deterministic pseudo-random fill
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for trial in 0..20 {
            let rows = 3 + (next() % 6) as usize;
            let cols = 3 + (next() % 6) as usize;
            let mut dense = IMat::zeros(rows, cols);
            for i in 0..rows {
                for j in 0..cols {
                    if next() % 3 == 0 {
                        dense[(i, j)] = ((next() % 9) as i64) - 4;
                    }
                }
            }
            let sparse = SparseMat::from_dense(&dense);
            let red = reduce(&sparse);
            let (rank, factors) = reference(&sparse);
            assert_eq!(red.rank, rank, "trial {trial}");
            assert_eq!(red.factors, factors, "trial {trial}");
        }
    }
}

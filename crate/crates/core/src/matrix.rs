//! Dense exact integer matrices and Smith normal form.
//!
//! The reduction is generic over the entry type.  Fast paths run on `i64` or
//! `i128` with checked arithmetic; any overflow aborts the attempt and the
//! caller retries with `BigInt`, so every published result is exact.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, Signed, ToPrimitive, Zero};

pub trait Entry:
    Integer + Signed + CheckedAdd + CheckedSub + CheckedMul + Clone + fmt::Debug
{
    fn from_i64(v: i64) -> Self;
}

impl Entry for i64 {
    fn from_i64(v: i64) -> Self {
        v
    }
}
impl Entry for i128 {
    fn from_i64(v: i64) -> Self {
        v as i128
    }
}
impl Entry for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
}

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct Mat<T> {
    pub rows: usize,
    pub cols: usize,
    data: Vec<T>,
}

pub type IMat = Mat<i64>;
pub type BigMat = Mat<BigInt>;

impl<T: Entry> Mat<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c));
        Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn transpose(&self) -> Self {
        Mat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Mat::<T>::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let p = a.clone() * other[(k, j)].clone();
                    let s = out[(i, j)].clone() + p;
                    out[(i, j)] = s;
                }
            }
        }
        out
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn map<U: Entry>(&self, f: impl Fn(&T) -> U) -> Mat<U> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }
}

impl IMat {
    pub fn to_big(&self) -> BigMat {
        self.map(|v| BigInt::from(*v))
    }

    /// Kronecker product, basis ordered row-major (left index major).
    pub fn kronecker(&self, other: &IMat) -> IMat {
        let mut out = IMat::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self[(i, j)];
                if a == 0 {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out[(i * other.rows + k, j * other.cols + l)] = a * other[(k, l)];
                    }
                }
            }
        }
        out
    }
}

impl BigMat {
    pub fn to_i64(&self) -> Option<IMat> {
        let mut data = Vec::with_capacity(self.data.len());
        for v in &self.data {
            data.push(v.to_i64()?);
        }
        Some(Mat {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }
}

impl<T> std::ops::Index<(usize, usize)> for Mat<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Mat<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: fmt::Debug> fmt::Debug for Mat<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[i * self.cols..(i + 1) * self.cols])?;
        }
        write!(f, "]")
    }
}

/// `u * a * v = d` with `u`, `v` unimodular and `d` diagonal with a
/// divisibility chain `d1 | d2 | ...` of non-negative entries.
pub struct SmithDecomposition<T> {
    pub u: Mat<T>,
    pub d: Mat<T>,
    pub v: Mat<T>,
    pub rank: usize,
}

struct Reducer<T> {
    a: Mat<T>,
    u: Option<Mat<T>>,
    v: Option<Mat<T>>,
}

impl<T: Entry> Reducer<T> {
    fn new(a: Mat<T>, with_transforms: bool) -> Self {
        let (r, c) = (a.rows, a.cols);
        Reducer {
            a,
            u: with_transforms.then(|| Mat::identity(r)),
            v: with_transforms.then(|| Mat::identity(c)),
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for k in 0..self.a.cols {
            let (x, y) = (self.a[(i, k)].clone(), self.a[(j, k)].clone());
            self.a[(i, k)] = y;
            self.a[(j, k)] = x;
        }
        if let Some(u) = &mut self.u {
            for k in 0..u.cols {
                let (x, y) = (u[(i, k)].clone(), u[(j, k)].clone());
                u[(i, k)] = y;
                u[(j, k)] = x;
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for k in 0..self.a.rows {
            let (x, y) = (self.a[(k, i)].clone(), self.a[(k, j)].clone());
            self.a[(k, i)] = y;
            self.a[(k, j)] = x;
        }
        if let Some(v) = &mut self.v {
            for k in 0..v.rows {
                let (x, y) = (v[(k, i)].clone(), v[(k, j)].clone());
                v[(k, i)] = y;
                v[(k, j)] = x;
            }
        }
    }

    /// row_i -= q * row_j
    fn row_op(&mut self, i: usize, j: usize, q: &T) -> Option<()> {
        for k in 0..self.a.cols {
            let p = q.checked_mul(&self.a[(j, k)])?;
            self.a[(i, k)] = self.a[(i, k)].checked_sub(&p)?;
        }
        if let Some(u) = &mut self.u {
            for k in 0..u.cols {
                let p = q.checked_mul(&u[(j, k)])?;
                u[(i, k)] = u[(i, k)].checked_sub(&p)?;
            }
        }
        Some(())
    }

    /// col_i -= q * col_j
    fn col_op(&mut self, i: usize, j: usize, q: &T) -> Option<()> {
        for k in 0..self.a.rows {
            let p = q.checked_mul(&self.a[(k, j)])?;
            self.a[(k, i)] = self.a[(k, i)].checked_sub(&p)?;
        }
        if let Some(v) = &mut self.v {
            for k in 0..v.rows {
                let p = q.checked_mul(&v[(k, j)])?;
                v[(k, i)] = v[(k, i)].checked_sub(&p)?;
            }
        }
        Some(())
    }

    fn negate_row(&mut self, i: usize) {
        for k in 0..self.a.cols {
            self.a[(i, k)] = -self.a[(i, k)].clone();
        }
        if let Some(u) = &mut self.u {
            for k in 0..u.cols {
                u[(i, k)] = -u[(i, k)].clone();
            }
        }
    }

    /// Entry of least absolute value in the trailing submatrix.
    fn min_abs_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.a.rows {
            for j in t..self.a.cols {
                if self.a[(i, j)].is_zero() {
                    continue;
                }
                match best {
                    None => best = Some((i, j)),
                    Some(b) => {
                        if self.a[(i, j)].abs() < self.a[b].abs() {
                            best = Some((i, j));
                        }
                    }
                }
            }
        }
        best
    }

    fn reduce(&mut self) -> Option<usize> {
        let mut t = 0;
        while t < self.a.rows && t < self.a.cols {
            let Some((pi, pj)) = self.min_abs_pivot(t) else {
                break;
            };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let mut clean = true;
                for i in t + 1..self.a.rows {
                    if self.a[(i, t)].is_zero() {
                        continue;
                    }
                    let q = self.a[(i, t)].div_floor(&self.a[(t, t)]);
                    if !q.is_zero() {
                        self.row_op(i, t, &q)?;
                    }
                    if !self.a[(i, t)].is_zero() {
                        // remainder is smaller than the pivot: swap it in
                        self.swap_rows(t, i);
                        clean = false;
                    }
                }
                for j in t + 1..self.a.cols {
                    if self.a[(t, j)].is_zero() {
                        continue;
                    }
                    let q = self.a[(t, j)].div_floor(&self.a[(t, t)]);
                    if !q.is_zero() {
                        self.col_op(j, t, &q)?;
                    }
                    if !self.a[(t, j)].is_zero() {
                        self.swap_cols(t, j);
                        clean = false;
                    }
                }
                if !clean {
                    continue;
                }
                // pivot now alone in its row and column; enforce divisibility
                let mut offender = None;
                'scan: for i in t + 1..self.a.rows {
                    for j in t + 1..self.a.cols {
                        if !self.a[(i, j)].mod_floor(&self.a[(t, t)]).is_zero() {
                            offender = Some(i);
                            break 'scan;
                        }
                    }
                }
                match offender {
                    Some(i) => {
                        // fold the offending row into the pivot row and restart
                        let minus_one = -T::one();
                        self.row_op(t, i, &minus_one)?;
                    }
                    None => break,
                }
            }
            if self.a[(t, t)].is_negative() {
                self.negate_row(t);
            }
            t += 1;
        }
        Some(t)
    }
}

/// Full Smith normal form with unimodular transforms.
pub fn smith_normal_form<T: Entry>(a: &Mat<T>) -> Option<SmithDecomposition<T>> {
    let mut red = Reducer::new(a.clone(), true);
    let rank = red.reduce()?;
    Some(SmithDecomposition {
        u: red.u.unwrap(),
        d: red.a,
        v: red.v.unwrap(),
        rank,
    })
}

/// Smith normal form of an `i64` matrix, escalating to `BigInt` on overflow.
/// The result is always exact.
pub fn smith_normal_form_i64(a: &IMat) -> SmithDecomposition<BigInt> {
    if let Some(s) = smith_normal_form(&a.map(|v| *v as i128)) {
        return SmithDecomposition {
            u: s.u.map(|v| BigInt::from(*v)),
            d: s.d.map(|v| BigInt::from(*v)),
            v: s.v.map(|v| BigInt::from(*v)),
            rank: s.rank,
        };
    }
    smith_normal_form(&a.to_big()).expect("BigInt reduction cannot overflow")
}

/// Rank and nontrivial invariant factors, without transform bookkeeping.
pub fn invariant_factors<T: Entry>(a: &Mat<T>) -> Option<(usize, Vec<T>)> {
    let mut red = Reducer::new(a.clone(), false);
    let rank = red.reduce()?;
    let mut factors = Vec::new();
    for t in 0..rank {
        let d = red.a[(t, t)].clone();
        if d != T::one() {
            factors.push(d);
        }
    }
    Some((rank, factors))
}

pub fn invariant_factors_i64(a: &IMat) -> (usize, Vec<BigInt>) {
    if let Some((rank, f)) = invariant_factors(&a.map(|v| *v as i128)) {
        return (rank, f.into_iter().map(BigInt::from).collect());
    }
    invariant_factors(&a.to_big()).expect("BigInt reduction cannot overflow")
}

pub fn rank_i64(a: &IMat) -> usize {
    invariant_factors_i64(a).0
}

/// Basis of the integer kernel lattice of `a` (as matrix columns).
pub fn kernel_basis(a: &IMat) -> Vec<Vec<BigInt>> {
    let s = smith_normal_form_i64(a);
    (s.rank..a.cols).map(|j| s.v.column(j)).collect()
}

/// Solves `a x = b` exactly over the integers, if a solution exists.
pub fn solve_exact(a: &IMat, b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(a.rows, b.len());
    let s = smith_normal_form_i64(a);
    // u a v = d  =>  with y := v^-1 x solve d y = u b.
    let ub: Vec<BigInt> = (0..s.u.rows)
        .map(|i| {
            (0..s.u.cols)
                .map(|k| s.u[(i, k)].clone() * b[k].clone())
                .sum()
        })
        .collect();
    let mut y = vec![BigInt::from(0); a.cols];
    for i in 0..a.rows.min(a.cols) {
        let d = &s.d[(i, i)];
        if d.is_zero() {
            if !ub[i].is_zero() {
                return None;
            }
        } else {
            let (q, r) = ub[i].div_rem(d);
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        }
    }
    for i in a.cols..a.rows {
        if !ub[i].is_zero() {
            return None;
        }
    }
    let x: Vec<BigInt> = (0..a.cols)
        .map(|i| {
            (0..a.cols)
                .map(|k| s.v[(i, k)].clone() * y[k].clone())
                .sum()
        })
        .collect();
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_decomposition(a: &IMat) {
        let s = smith_normal_form_i64(a);
        let big = a.to_big();
        let uav = s.u.mul(&big).mul(&s.v);
        assert_eq!(uav, s.d, "u a v != d");
        for t in 0..s.rank.saturating_sub(1) {
            let (x, y) = (&s.d[(t, t)], &s.d[(t + 1, t + 1)]);
            assert!(
                y.mod_floor(x).is_zero(),
                "divisibility chain broken: {x} does not divide {y}"
            );
        }
        // u and v unimodular
        let (ru, _) = invariant_factors(&s.u).unwrap();
        assert_eq!(ru, s.u.rows);
        let det_like = invariant_factors(&s.u).unwrap().1;
        assert!(det_like.is_empty(), "u not unimodular");
        let det_like_v = invariant_factors(&s.v).unwrap().1;
        assert!(det_like_v.is_empty(), "v not unimodular");
    }

    #[test]
    fn identity_and_zero() {
        let id = IMat::identity(3);
        let s = smith_normal_form_i64(&id);
        assert_eq!(s.d.to_i64().unwrap(), id);
        assert_eq!(s.rank, 3);
        let z = IMat::zeros(2, 3);
        let s = smith_normal_form_i64(&z);
        assert_eq!(s.rank, 0);
        assert!(s.d.is_zero());
    }

    #[test]
    fn two_by_two_example() {
        // d1 = gcd of entries = 2, d1*d2 = |det| = |16 - 24| = 8 => diag(2, 4)
        let a = IMat::from_rows(vec![vec![2, 4], vec![6, 8]]);
        let (rank, factors) = invariant_factors_i64(&a);
        assert_eq!(rank, 2);
        assert_eq!(factors, vec![BigInt::from(2), BigInt::from(4)]);
        check_decomposition(&a);
    }

    #[test]
    fn solve_and_kernel() {
        let a = IMat::from_rows(vec![vec![2, 0, 0], vec![0, 3, 0]]);
        let x = solve_exact(&a, &[BigInt::from(4), BigInt::from(9)]).unwrap();
        assert_eq!(x[0], BigInt::from(2));
        assert_eq!(x[1], BigInt::from(3));
        assert!(solve_exact(&a, &[BigInt::from(1), BigInt::from(0)]).is_none());
        let k = kernel_basis(&a);
        assert_eq!(k.len(), 1);
        assert!(!k[0][2].is_zero());
    }

    #[test]
    fn decomposition_holds_on_a_spread_of_matrices() {
        let samples = vec![
            IMat::from_rows(vec![vec![0, 0], vec![0, 0]]),
            IMat::from_rows(vec![vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 9]]),
            IMat::from_rows(vec![vec![6, 10], vec![15, 4]]),
            IMat::from_rows(vec![vec![-3], vec![7]]),
            IMat::from_rows(vec![vec![12, 8, 4], vec![0, 6, 2]]),
        ];
        for a in &samples {
            check_decomposition(a);
        }
    }
}

//! Exact sparse linear algebra over the rationals.
//!
//! Everything that needs a dimension (homology, quotients of wedge spaces,
//! weight spaces of modules) goes through [`rank`]. Elimination is
//! fraction-free: each row is scaled to a primitive integer vector and
//! row operations are cross-multiplications followed by removal of the row
//! content, which keeps coefficient growth in check on the sparse, small-entry
//! matrices produced by Koszul complexes.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Sparse matrix with exact rational entries, stored by rows.
///
/// Each row is sorted by column and never stores a zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseRatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<(usize, Rational)>>,
}

impl SparseRatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseRatMatrix { rows, cols, data: vec![Vec::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i].push((i, Rational::one()));
        }
        m
    }

    /// Builds a matrix from `(row, col, value)` triplets; duplicates are summed.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, Rational)>,
    ) -> Self {
        let mut acc: Vec<BTreeMap<usize, Rational>> = vec![BTreeMap::new(); rows];
        for (r, c, v) in triplets {
            assert!(r < rows && c < cols, "entry ({r},{c}) out of range {rows}x{cols}");
            *acc[r].entry(c).or_insert_with(Rational::zero) += v;
        }
        let data = acc
            .into_iter()
            .map(|row| row.into_iter().filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        SparseRatMatrix { rows, cols, data }
    }

    pub fn from_dense_i64(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        Self::from_triplets(
            rows.len(),
            cols,
            rows.iter().enumerate().flat_map(|(r, row)| {
                assert_eq!(row.len(), cols, "ragged dense matrix");
                row.iter().enumerate().filter(|(_, v)| **v != 0).map(move |(c, v)| (r, c, q(*v)))
            }),
        )
    }

    /// An empty `0 x cols` matrix to which rows can be pushed.
    pub fn with_cols(cols: usize) -> Self {
        Self::zeros(0, cols)
    }

    /// Appends a row given as (col, value) pairs; duplicates summed, zeros dropped.
    pub fn push_row(&mut self, entries: impl IntoIterator<Item = (usize, Rational)>) {
        let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
        for (c, v) in entries {
            assert!(c < self.cols, "column {c} out of range {}", self.cols);
            *acc.entry(c).or_insert_with(Rational::zero) += v;
        }
        self.data.push(acc.into_iter().filter(|(_, v)| !v.is_zero()).collect());
        self.rows += 1;
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn row(&self, r: usize) -> &[(usize, Rational)] {
        &self.data[r]
    }

    pub fn get(&self, r: usize, c: usize) -> Rational {
        match self.data[r].binary_search_by_key(&c, |(col, _)| *col) {
            Ok(k) => self.data[r][k].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &Rational)> + '_ {
        self.data.iter().enumerate().flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c, v)))
    }

    pub fn transpose(&self) -> Self {
        Self::from_triplets(self.cols, self.rows, self.triplets().map(|(r, c, v)| (c, r, v.clone())))
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self::from_triplets(self.rows, self.cols, self.triplets().map(|(r, c, v)| (r, c, v * s)))
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in add");
        Self::from_triplets(
            self.rows,
            self.cols,
            self.triplets().chain(other.triplets()).map(|(r, c, v)| (r, c, v.clone())),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch in mul");
        let mut out = Self::zeros(self.rows, other.cols);
        for (r, row) in self.data.iter().enumerate() {
            let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
            for (k, a) in row {
                for (c, b) in &other.data[*k] {
                    *acc.entry(*c).or_insert_with(Rational::zero) += a * b;
                }
            }
            out.data[r] = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        }
        out
    }

    /// Commutator `self * other - other * self`.
    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Self) -> Self {
        let mut trip = Vec::new();
        for (r1, c1, a) in self.triplets() {
            for (r2, c2, b) in other.triplets() {
                trip.push((r1 * other.rows + r2, c1 * other.cols + c2, a * b));
            }
        }
        Self::from_triplets(self.rows * other.rows, self.cols * other.cols, trip)
    }

    /// Vertical concatenation.
    pub fn stack(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::InvalidInput(format!(
                "cannot stack {} columns onto {} columns",
                other.cols, self.cols
            )));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(SparseRatMatrix { rows: self.rows + other.rows, cols: self.cols, data })
    }

    /// Applies the matrix to a column vector given sparsely.
    pub fn apply(&self, v: &BTreeMap<usize, Rational>) -> BTreeMap<usize, Rational> {
        let mut out = BTreeMap::new();
        for (r, row) in self.data.iter().enumerate() {
            let mut s = Rational::zero();
            for (c, a) in row {
                if let Some(x) = v.get(c) {
                    s += a * x;
                }
            }
            if !s.is_zero() {
                out.insert(r, s);
            }
        }
        out
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        let mut d = vec![vec![Rational::zero(); self.cols]; self.rows];
        for (r, c, v) in self.triplets() {
            d[r][c] = v.clone();
        }
        d
    }
}

type IntRow = Vec<(usize, BigInt)>;

/// Scales a rational row to a primitive integer row with positive leading entry
/// sign preserved.
fn primitive_int_row(row: &[(usize, Rational)]) -> IntRow {
    if row.is_empty() {
        return Vec::new();
    }
    let mut lcm = BigInt::one();
    for (_, v) in row {
        lcm = lcm.lcm(v.denom());
    }
    let mut out: IntRow =
        row.iter().map(|(c, v)| (*c, v.numer() * (&lcm / v.denom()))).collect();
    make_primitive(&mut out);
    out
}

fn make_primitive(row: &mut IntRow) {
    let mut g = BigInt::zero();
    for (_, v) in row.iter() {
        g = g.gcd(v);
        if g.is_one() {
            return;
        }
    }
    if !g.is_zero() && !g.is_one() {
        for (_, v) in row.iter_mut() {
            *v /= &g;
        }
    }
}

/// `a * row - b * pivot`, with content removed.
fn eliminate(row: &IntRow, pivot: &IntRow, a: &BigInt, b: &BigInt) -> IntRow {
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        let ci = row.get(i).map(|e| e.0).unwrap_or(usize::MAX);
        let cj = pivot.get(j).map(|e| e.0).unwrap_or(usize::MAX);
        if ci < cj {
            out.push((ci, a * &row[i].1));
            i += 1;
        } else if cj < ci {
            out.push((cj, -(b * &pivot[j].1)));
            j += 1;
        } else {
            let v = a * &row[i].1 - b * &pivot[j].1;
            if !v.is_zero() {
                out.push((ci, v));
            }
            i += 1;
            j += 1;
        }
    }
    make_primitive(&mut out);
    out
}

/// Exact rank over the rationals.
///
/// Pivot selection is Markowitz-style on sparsity: the active column with the
/// fewest nonzeros is eliminated first (lowest column index on ties), using the
/// shortest active row containing it (lowest row index on ties).
pub fn rank(m: &SparseRatMatrix) -> usize {
    let mut rows: Vec<Option<IntRow>> = m
        .data
        .iter()
        .map(|r| if r.is_empty() { None } else { Some(primitive_int_row(r)) })
        .collect();
    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); m.cols];
    for (r, row) in rows.iter().enumerate() {
        if let Some(row) = row {
            for (c, _) in row {
                col_rows[*c].insert(r);
            }
        }
    }
    let mut rank = 0;
    loop {
        let mut best: Option<(usize, usize)> = None;
        for (c, set) in col_rows.iter().enumerate() {
            let n = set.len();
            if n > 0 && best.map_or(true, |(bn, _)| n < bn) {
                best = Some((n, c));
                if n == 1 {
                    break;
                }
            }
        }
        let Some((_, pc)) = best else { break };
        let pr = *col_rows[pc]
            .iter()
            .min_by_key(|r| (rows[**r].as_ref().map_or(usize::MAX, Vec::len), **r))
            .expect("nonempty column");
        let pivot = rows[pr].take().expect("active pivot row");
        for (c, _) in &pivot {
            col_rows[*c].remove(&pr);
        }
        let pv = &pivot[pivot.binary_search_by_key(&pc, |e| e.0).expect("pivot entry")].1;
        let others: Vec<usize> = col_rows[pc].iter().copied().collect();
        for r in others {
            let old = rows[r].take().expect("active row");
            let rv = &old[old.binary_search_by_key(&pc, |e| e.0).expect("entry")].1;
            let g = pv.gcd(rv);
            let a = pv / &g;
            let b = rv / &g;
            let new = eliminate(&old, &pivot, &a, &b);
            for (c, _) in &old {
                col_rows[*c].remove(&r);
            }
            for (c, _) in &new {
                col_rows[*c].insert(r);
            }
            if !new.is_empty() {
                rows[r] = Some(new);
            }
        }
        rank += 1;
    }
    rank
}

/// `cols - rank`.
pub fn nullity(m: &SparseRatMatrix) -> usize {
    m.cols() - rank(m)
}

/// Dimension of `rowspace(target) / rowspace(sub)`.
///
/// Fails with [`Error::NotContained`] when the row space of `sub` is not a
/// subspace of the row space of `target`.
pub fn quotient_dim(target: &SparseRatMatrix, sub: &SparseRatMatrix) -> Result<usize> {
    if target.cols() != sub.cols() {
        return Err(Error::InvalidInput(format!(
            "column mismatch: target has {}, sub has {}",
            target.cols(),
            sub.cols()
        )));
    }
    let rt = rank(target);
    let rs = rank(sub);
    let joint = rank(&target.stack(sub)?);
    if joint != rt {
        return Err(Error::NotContained);
    }
    Ok(rt - rs)
}

/// Exact determinant of a square matrix (Bareiss elimination).
pub fn determinant(m: &SparseRatMatrix) -> Result<Rational> {
    if m.rows() != m.cols() {
        return Err(Error::InvalidInput(format!(
            "determinant of non-square {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    let n = m.rows();
    if n == 0 {
        return Ok(Rational::one());
    }
    // clear denominators row by row, remember the scale
    let mut scale = Rational::one();
    let mut a: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for r in 0..n {
        let mut lcm = BigInt::one();
        for (_, v) in m.row(r) {
            lcm = lcm.lcm(v.denom());
        }
        scale *= Rational::from_integer(lcm.clone());
        let mut row = vec![BigInt::zero(); n];
        for (c, v) in m.row(r) {
            row[*c] = v.numer() * (&lcm / v.denom());
        }
        a.push(row);
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return Ok(Rational::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    Ok(Rational::from_integer(sign * &a[n - 1][n - 1]) / scale)
}

/// Incrementally maintained echelon basis of a subspace of `Q^dim`, able to
/// express vectors of the span in terms of the vectors that were accepted.
#[derive(Clone, Debug)]
pub struct SpanSolver {
    dim: usize,
    /// echelon rows: (pivot column, row normalized to 1 at pivot, combination of accepted vectors)
    echelon: Vec<(usize, Vec<Rational>, Vec<Rational>)>,
    accepted: usize,
}

impl SpanSolver {
    pub fn new(dim: usize) -> Self {
        SpanSolver { dim, echelon: Vec::new(), accepted: 0 }
    }

    pub fn rank(&self) -> usize {
        self.accepted
    }

    fn reduce(&self, v: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
        assert_eq!(v.len(), self.dim);
        let mut v = v.to_vec();
        let mut combo = vec![Rational::zero(); self.accepted];
        for (p, row, rc) in &self.echelon {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone();
            for (x, y) in v.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
            for (x, y) in combo.iter_mut().zip(rc) {
                if !y.is_zero() {
                    *x += &f * y;
                }
            }
        }
        (v, combo)
    }

    /// Offers a vector; returns `true` if it was independent and got accepted.
    pub fn offer(&mut self, v: &[Rational]) -> bool {
        let (res, combo) = self.reduce(v);
        let Some(p) = res.iter().position(|x| !x.is_zero()) else { return false };
        let inv = res[p].recip();
        let row: Vec<Rational> = res.iter().map(|x| x * &inv).collect();
        // res = v - sum combo_k accepted_k, so row = inv * (new - combo)
        let mut rc: Vec<Rational> = combo.iter().map(|x| -(x * &inv)).collect();
        rc.push(inv);
        for (_, _, old) in self.echelon.iter_mut() {
            old.push(Rational::zero());
        }
        self.echelon.push((p, row, rc));
        self.accepted += 1;
        true
    }

    /// Coordinates of `v` in terms of the accepted vectors, or `None` if `v`
    /// is outside the span.
    pub fn solve(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        let (res, combo) = self.reduce(v);
        if res.iter().all(Zero::is_zero) {
            Some(combo)
        } else {
            None
        }
    }
}

/// Inverse of a square dense rational matrix, if it exists.
pub fn inverse(m: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            assert_eq!(row.len(), n);
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    for k in 0..n {
        let p = (k..n).find(|&r| !a[r][k].is_zero())?;
        a.swap(k, p);
        let inv = a[k][k].recip();
        for x in a[k].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != k && !a[r][k].is_zero() {
                let f = a[r][k].clone();
                let pivot = a[k].clone();
                for (x, y) in a[r].iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

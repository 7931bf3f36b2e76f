//! First cyclic homology `HC₁(A) = Λ²(A)/T(A)` for the augmented algebra
//! `A = C ⊕ I`, `I = ⟨(t − a)(t − b)⟩`, its truncations, and the determinant
//! identity from the degree induction.
//!
//! After normalizing the points to `{0, 1}` the basis `{1} ∪ {f^i, t f^i}` of
//! `A` has exactly one element in each degree `0, 2, 3, 4, …`, with
//! `deg f^i = 2i` and `deg t f^i = 2i + 1`, so elements are indexed by degree.
//! In the `(i, j) = t^i (t − 1)^j` notation, `f^i = (i, i)` and `t f^i = (i + 1, i)`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::chevalley::AlgebraTable;
use crate::error::{Error, Result};
use crate::exactmat::{determinant, q, Rational, SpanSolver, SparseRatMatrix};
use crate::poly;

pub const MIN_CUTOFF: usize = 5;
pub const MAX_CUTOFF: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Hc1Report {
    pub cutoff: usize,
    pub dim: usize,
    pub wedge_dim: usize,
    pub generator_rank: usize,
    pub survivors: Vec<String>,
}

/// Label of the basis element of degree `d` in `(i, j)` notation.
pub fn degree_label(d: usize) -> String {
    match d {
        0 => "1".into(),
        _ if d % 2 == 0 => format!("({},{})", d / 2, d / 2),
        _ => format!("({},{})", d / 2 + 1, d / 2),
    }
}

fn wedge_label(u: usize, v: usize) -> String {
    format!("{}∧{}", degree_label(u), degree_label(v))
}

/// Product of the basis elements of degrees `a` and `b`, using `t² = f + t`.
fn mul_deg(a: usize, b: usize) -> Vec<(usize, i64)> {
    if a % 2 == 1 && b % 2 == 1 {
        vec![(a + b, 1), (a + b - 1, 1)]
    } else {
        vec![(a + b, 1)]
    }
}

/// `t^i (t − 1)^j` in the degree basis; requires `i, j ≥ 1`.
pub fn ij_element(i: usize, j: usize) -> Result<BTreeMap<usize, Rational>> {
    if i == 0 || j == 0 {
        return Err(Error::InvalidInput(format!("({i},{j}) is not in the ideal")));
    }
    let f = poly::from_roots(&[q(0), q(1)]);
    let mut p = poly::mul(&poly::monomial(i), &poly::pow(&vec![q(-1), q(1)], j));
    let mut out = BTreeMap::new();
    let mut m = 0;
    while !p.is_empty() {
        let (quot, r) = poly::div_rem(&p, &f);
        let c0 = r.first().cloned().unwrap_or_else(Rational::zero);
        let c1 = r.get(1).cloned().unwrap_or_else(Rational::zero);
        if !c0.is_zero() {
            if m > 0 || c1.is_zero() {
                out.insert(2 * m, c0);
            } else {
                return Err(Error::Invariant(format!("({i},{j}) has a component outside C ⊕ I")));
            }
        }
        if !c1.is_zero() {
            if m == 0 {
                return Err(Error::Invariant(format!("({i},{j}) has a component outside C ⊕ I")));
            }
            out.insert(2 * m + 1, c1);
        }
        p = quot;
        m += 1;
    }
    Ok(out)
}

/// Wedge space on basis elements of degrees `0, 2, 3, …, d`, filtered by
/// total degree, with the span of the `T(A)` generators of degree `≤ d`.
struct FilteredWedgeSpace {
    index: BTreeMap<(usize, usize), usize>,
    order: Vec<(usize, usize)>,
    generators: Vec<Vec<Rational>>,
}

fn element_degrees(cutoff: usize) -> Vec<usize> {
    std::iter::once(0).chain(2..=cutoff).collect()
}

impl FilteredWedgeSpace {
    fn new(cutoff: usize) -> Result<Self> {
        let degs = element_degrees(cutoff);
        let mut order = Vec::new();
        for (a, &v) in degs.iter().enumerate() {
            for &u in &degs[a + 1..] {
                if u + v <= cutoff {
                    order.push((u, v));
                }
            }
        }
        order.sort_by_key(|&(u, v)| (u + v, v == 0, v));
        let index: BTreeMap<_, _> = order.iter().enumerate().map(|(k, &p)| (p, k)).collect();
        let mut space = FilteredWedgeSpace { index, order, generators: Vec::new() };
        for (ia, &a) in degs.iter().enumerate() {
            for (ib, &b) in degs.iter().enumerate().skip(ia) {
                for &c in &degs[ib..] {
                    if a + b + c > cutoff {
                        continue;
                    }
                    let row = space.generator(a, b, c)?;
                    if row.iter().any(|x| !x.is_zero()) {
                        space.generators.push(row);
                    }
                }
            }
        }
        Ok(space)
    }

    fn dim(&self) -> usize {
        self.order.len()
    }

    fn add_wedge(&self, row: &mut [Rational], x: usize, y: usize, c: i64) -> Result<()> {
        if x == y {
            return Ok(());
        }
        let (key, sign) = if x > y { ((x, y), c) } else { ((y, x), -c) };
        let k = self.index.get(&key).ok_or_else(|| {
            Error::Invariant(format!("generator term {} exceeds the cutoff", wedge_label(key.0, key.1)))
        })?;
        row[*k] += q(sign);
        Ok(())
    }

    /// `ab∧c + bc∧a + ca∧b`; every term has total degree `≤ deg a + deg b + deg c`.
    fn generator(&self, a: usize, b: usize, c: usize) -> Result<Vec<Rational>> {
        let mut row = vec![Rational::zero(); self.dim()];
        for (x, y, z) in [(a, b, c), (b, c, a), (c, a, b)] {
            for (p, k) in mul_deg(x, y) {
                debug_assert!(p + z <= a + b + c);
                self.add_wedge(&mut row, p, z, k)?;
            }
        }
        Ok(row)
    }

    fn unit_vector(&self, u: usize, v: usize) -> Vec<Rational> {
        let mut row = vec![Rational::zero(); self.dim()];
        row[self.index[&(u, v)]] = Rational::one();
        row
    }

    fn generator_solver(&self) -> SpanSolver {
        let mut solver = SpanSolver::new(self.dim());
        for g in &self.generators {
            solver.offer(g);
        }
        solver
    }
}

fn check_two_points(points: &[Rational]) -> Result<()> {
    if points.len() != 2 {
        return Err(Error::InvalidInput(format!("expected two points, got {}", points.len())));
    }
    if points[0] == points[1] {
        return Err(Error::InvalidInput(format!("repeated point {}", points[0])));
    }
    Ok(())
}

/// `F_D Λ²(A)` modulo the `T(A)` generators of total degree `≤ D`, with
/// representative survivors chosen greedily by degree, avoiding the unit and
/// preferring the smaller second factor.
pub fn hc1_cutoff(points: &[Rational], cutoff: usize) -> Result<Hc1Report> {
    check_two_points(points)?;
    if !(MIN_CUTOFF..=MAX_CUTOFF).contains(&cutoff) {
        return Err(Error::InvalidInput(format!("cutoff {cutoff} outside [{MIN_CUTOFF}, {MAX_CUTOFF}]")));
    }
    let space = FilteredWedgeSpace::new(cutoff)?;
    let mut solver = space.generator_solver();
    let generator_rank = solver.rank();
    let mut survivors = Vec::new();
    for &(u, v) in &space.order {
        if solver.offer(&space.unit_vector(u, v)) {
            survivors.push(wedge_label(u, v));
        }
    }
    Ok(Hc1Report {
        cutoff,
        dim: space.dim() - generator_rank,
        wedge_dim: space.dim(),
        generator_rank,
        survivors,
    })
}

/// Whether `(2,1)∧(1,1)` and `(3,2)∧(1,1)` are independent modulo the
/// generators at the given cutoff.
pub fn survivors_independent(cutoff: usize) -> Result<bool> {
    if cutoff < 7 {
        return Err(Error::InvalidInput("both survivors need cutoff ≥ 7".into()));
    }
    let space = FilteredWedgeSpace::new(cutoff)?;
    let mut solver = space.generator_solver();
    Ok(solver.offer(&space.unit_vector(3, 2)) && solver.offer(&space.unit_vector(5, 2)))
}

/// `Λ²(C[f])/T(C[f])` cut off at total degree `D`, with `deg f^i = 2i`.
pub fn hc1_cf_cutoff(cutoff: usize) -> Result<usize> {
    if cutoff < 2 {
        return Err(Error::InvalidInput(format!("cutoff {cutoff} < 2")));
    }
    let top = cutoff / 2;
    let mut index = BTreeMap::new();
    for u in 0..=top {
        for v in 0..u {
            if u + v <= top {
                let k = index.len();
                index.insert((u, v), k);
            }
        }
    }
    let mut gens = SparseRatMatrix::with_cols(index.len());
    for a in 0..=top {
        for b in a..=top {
            for c in b..=top {
                if a + b + c > top {
                    continue;
                }
                let mut row: BTreeMap<usize, Rational> = BTreeMap::new();
                for (x, z) in [(a + b, c), (b + c, a), (c + a, b)] {
                    if x == z {
                        continue;
                    }
                    let (key, sign) = if x > z { ((x, z), 1) } else { ((z, x), -1) };
                    *row.entry(index[&key]).or_insert_with(Rational::zero) += q(sign);
                }
                gens.push_row(row);
            }
        }
    }
    Ok(index.len() - crate::exactmat::rank(&gens))
}

/// `Λ²(A)/T(A)` for a finite-dimensional commutative algebra table.
pub fn hc1_finite(a: &AlgebraTable) -> Result<usize> {
    a.check()?;
    let n = a.dim();
    let mut index = BTreeMap::new();
    for i in 0..n {
        for j in i + 1..n {
            let k = index.len();
            index.insert((i, j), k);
        }
    }
    let mut gens = SparseRatMatrix::with_cols(index.len());
    for x in 0..n {
        for y in x..n {
            for z in y..n {
                let mut row: BTreeMap<usize, Rational> = BTreeMap::new();
                for (p, r, s) in [(x, y, z), (y, z, x), (z, x, y)] {
                    for (k, c) in a.product(p, r) {
                        if *k == s {
                            continue;
                        }
                        let (key, sign) = if *k < s { ((*k, s), c.clone()) } else { ((s, *k), -c.clone()) };
                        *row.entry(index[&key]).or_insert_with(Rational::zero) += sign;
                    }
                }
                row.retain(|_, v| !v.is_zero());
                gens.push_row(row);
            }
        }
    }
    Ok(index.len() - crate::exactmat::rank(&gens))
}

/// The `(D−1)×(D−1)` coefficient matrix of the odd-degree step; column `j`
/// records `(D−j+1, D−j)∧(j,j)`.
pub fn det_m_matrix(d: usize) -> Result<Vec<Vec<i64>>> {
    if d < 4 {
        return Err(Error::InvalidInput(format!("D = {d} < 4 leaves the matrix pattern ambiguous")));
    }
    let n = d - 1;
    let mut m = vec![vec![0i64; n]; n];
    m[0][0] = 2;
    m[0][1] = -1;
    for k in 1..n - 1 {
        m[k][0] += 1;
        m[k][k] += 1;
        m[k][k + 1] -= 1;
    }
    m[n - 1][2] -= 1;
    m[n - 1][n - 1] -= 2;
    Ok(m)
}

/// Exact determinant of the odd-degree matrix, asserted to be `−(2D+1)`.
pub fn det_m(d: usize) -> Result<i64> {
    let m = det_m_matrix(d)?;
    let det = determinant(&SparseRatMatrix::from_dense_i64(&m))?;
    if !det.is_integer() {
        return Err(Error::Invariant(format!("non-integral determinant {det}")));
    }
    let v: i64 = det.to_integer().try_into().map_err(|_| Error::Invariant("determinant overflow".into()))?;
    let expected = -(2 * d as i64 + 1);
    if v != expected {
        return Err(Error::Invariant(format!("det M = {v}, expected {expected}")));
    }
    Ok(v)
}

/// The exact `T(A)` generator `(D−k, D−k−1), (k,k), (1,1)` restricted to
/// the columns of the odd-degree matrix.
pub fn det_m_generator_row(d: usize, k: usize) -> Result<Vec<i64>> {
    if d < 4 || k == 0 || k > d - 2 {
        return Err(Error::InvalidInput(format!("row {k} out of range for D = {d}")));
    }
    let cutoff = 2 * d + 1;
    let space = FilteredWedgeSpace::new(cutoff)?;
    let a = 2 * (d - k) - 1;
    let row = space.generator(a, 2 * k, 2)?;
    (1..d)
        .map(|j| {
            let u = 2 * (d - j) + 1;
            let v = 2 * j;
            let (key, sign) = if u > v { ((u, v), 1i64) } else { ((v, u), -1i64) };
            let c: i64 = row[space.index[&key]].to_integer().try_into().map_err(|_| Error::Invariant("overflow".into()))?;
            Ok(sign * c)
        })
        .collect::<Result<Vec<i64>>>()
}

//! Chevalley bases, truncated current algebras `g ⊗ A` and their
//! finite-dimensional modules.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactmat::{q, Rational, SpanSolver, SparseRatMatrix};
use crate::poly::{self, Poly};
use crate::rootdata::{RootSystem, Weight};

/// Sparse vector in a basis: sorted `(index, coefficient)` pairs without zeros.
pub type SparseVec = Vec<(usize, Rational)>;

fn accumulate(acc: &mut BTreeMap<usize, Rational>, k: usize, c: Rational) {
    let e = acc.entry(k).or_insert_with(Rational::zero);
    *e += c;
    if e.is_zero() {
        acc.remove(&k);
    }
}

fn to_sparse(acc: BTreeMap<usize, Rational>) -> SparseVec {
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

/// Polynomial data attached to a current-algebra table, so that modules can
/// evaluate `x ⊗ p(t)` at a point.
#[derive(Clone, Debug, PartialEq)]
pub struct CurrentData {
    pub g_dim: usize,
    pub algebra: AlgebraTable,
    /// Points defining the truncation ideal; weight slot `i` belongs to `points[i]`.
    pub points: Vec<Rational>,
}

/// Finite-dimensional Lie algebra with exact sparse structure constants.
#[derive(Clone, Debug, PartialEq)]
pub struct LieTable {
    pub name: String,
    pub basis_labels: Vec<String>,
    brackets: Vec<Vec<SparseVec>>,
    /// Per basis element, a weight for each factor of the acting torus.
    pub weights: Option<Vec<Vec<Weight>>>,
    pub t_degree: Option<Vec<u32>>,
    pub current: Option<CurrentData>,
}

impl LieTable {
    /// Builds a table from a bracket function on basis pairs `i < j`.
    pub fn from_fn(
        name: impl Into<String>,
        basis_labels: Vec<String>,
        mut bracket: impl FnMut(usize, usize) -> SparseVec,
    ) -> Self {
        let dim = basis_labels.len();
        let mut brackets = vec![vec![Vec::new(); dim]; dim];
        for i in 0..dim {
            for j in i + 1..dim {
                let v: SparseVec = bracket(i, j).into_iter().filter(|(_, c)| !c.is_zero()).collect();
                brackets[j][i] = v.iter().map(|(k, c)| (*k, -c.clone())).collect();
                brackets[i][j] = v;
            }
        }
        LieTable { name: name.into(), basis_labels, brackets, weights: None, t_degree: None, current: None }
    }

    pub fn dim(&self) -> usize {
        self.basis_labels.len()
    }

    pub fn bracket(&self, i: usize, j: usize) -> &[(usize, Rational)] {
        &self.brackets[i][j]
    }

    /// Number of torus factors the weight labels refer to.
    pub fn arity(&self) -> Option<usize> {
        self.weights.as_ref().and_then(|w| w.first().map(Vec::len))
    }

    pub fn is_abelian(&self) -> bool {
        self.brackets.iter().all(|r| r.iter().all(Vec::is_empty))
    }

    pub fn signature(&self) -> String {
        format!("{}#{}", self.name, self.dim())
    }

    pub fn bracket_vectors(&self, u: &[(usize, Rational)], v: &[(usize, Rational)]) -> SparseVec {
        let mut acc = BTreeMap::new();
        for (i, a) in u {
            for (j, b) in v {
                for (k, c) in &self.brackets[*i][*j] {
                    accumulate(&mut acc, *k, a * b * c);
                }
            }
        }
        to_sparse(acc)
    }

    /// Antisymmetry and the Jacobi identity on all basis triples.
    pub fn check_jacobi(&self) -> Result<()> {
        let n = self.dim();
        for i in 0..n {
            if !self.brackets[i][i].is_empty() {
                return Err(Error::Invariant(format!("{}: [b{i}, b{i}] ≠ 0", self.name)));
            }
            for j in 0..n {
                let neg: SparseVec = self.brackets[j][i].iter().map(|(k, c)| (*k, -c.clone())).collect();
                if self.brackets[i][j] != neg {
                    return Err(Error::Invariant(format!("{}: bracket not antisymmetric at ({i},{j})", self.name)));
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                let ij = &self.brackets[i][j];
                for k in j + 1..n {
                    let mut acc = BTreeMap::new();
                    for (terms, z) in [(ij.as_slice(), k), (&self.brackets[j][k][..], i), (&self.brackets[k][i][..], j)] {
                        for (m, c) in terms {
                            for (r, d) in &self.brackets[*m][z] {
                                accumulate(&mut acc, *r, c * d);
                            }
                        }
                    }
                    if !acc.is_empty() {
                        return Err(Error::Invariant(format!(
                            "{}: Jacobi fails on ({}, {}, {})",
                            self.name, self.basis_labels[i], self.basis_labels[j], self.basis_labels[k]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Checks that weights and t-degrees are additive under the bracket.
    pub fn check_labels(&self) -> Result<()> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                for (k, _) in &self.brackets[i][j] {
                    if let Some(w) = &self.weights {
                        let sum: Vec<Weight> = w[i].iter().zip(&w[j]).map(|(a, b)| a.add(b)).collect();
                        if sum != w[*k] {
                            return Err(Error::Invariant(format!("{}: weight labels not additive", self.name)));
                        }
                    }
                    if let Some(d) = &self.t_degree {
                        if d[i] + d[j] != d[*k] {
                            return Err(Error::Invariant(format!("{}: t-degree not additive", self.name)));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Debug report: labels, sparse brackets over `i < j`, labels and grading.
    pub fn to_json(&self) -> Value {
        let mut br = Vec::new();
        for i in 0..self.dim() {
            for j in i + 1..self.dim() {
                if !self.brackets[i][j].is_empty() {
                    let terms: Vec<Value> =
                        self.brackets[i][j].iter().map(|(k, c)| json!([k, c.to_string()])).collect();
                    br.push(json!([i, j, terms]));
                }
            }
        }
        json!({
            "name": self.name,
            "dim": self.dim(),
            "basis_labels": self.basis_labels,
            "brackets": br,
            "weights": self.weights,
            "t_degree": self.t_degree,
        })
    }
}

/// Chevalley basis `{y_α, h_i, x_α}` with integer structure constants.
///
/// Signs are fixed by declaring `N_{α,β} = p + 1` on extraspecial pairs; all
/// other constants follow from the standard relations between them.
pub fn structure_constants(rs: &RootSystem) -> LieTable {
    let n = rs.rank;
    let pos = &rs.positive_roots;
    let np = pos.len();
    let norm = |r: &[i64]| rs.root_norm(r);
    let neg = |r: &[i64]| r.iter().map(|c| -c).collect::<Vec<i64>>();
    let sum = |a: &[i64], b: &[i64]| a.iter().zip(b).map(|(x, y)| x + y).collect::<Vec<i64>>();
    let positive = |r: &[i64]| r.iter().all(|&c| c >= 0);

    let mut table: HashMap<(usize, usize), Rational> = HashMap::new();

    fn n_any(
        rs: &RootSystem,
        table: &HashMap<(usize, usize), Rational>,
        x: &[i64],
        y: &[i64],
    ) -> Rational {
        let s: Vec<i64> = x.iter().zip(y).map(|(a, b)| a + b).collect();
        if !rs.is_root(&s) {
            return Rational::zero();
        }
        let px = x.iter().all(|&c| c >= 0);
        let py = y.iter().all(|&c| c >= 0);
        if px && py {
            let i = rs.root_index(x).expect("root");
            let j = rs.root_index(y).expect("root");
            return table.get(&(i, j)).cloned().expect("structure constant computed in height order");
        }
        if !px && !py {
            let nx: Vec<i64> = x.iter().map(|c| -c).collect();
            let ny: Vec<i64> = y.iter().map(|c| -c).collect();
            return -n_any(rs, table, &nx, &ny);
        }
        let z: Vec<i64> = s.iter().map(|c| -c).collect();
        let pz = z.iter().all(|&c| c >= 0);
        // N_{x,y}/(z,z) = N_{y,z}/(x,x) = N_{z,x}/(y,y)
        let zz = Rational::from_integer(rs.root_norm(&z).into());
        if py == pz {
            zz / Rational::from_integer(rs.root_norm(x).into()) * n_any(rs, table, y, &z)
        } else {
            zz / Rational::from_integer(rs.root_norm(y).into()) * n_any(rs, table, &z, x)
        }
    }

    for (xi_idx, xi) in pos.iter().enumerate() {
        if xi_idx < n {
            continue;
        }
        let i0 = (0..n)
            .find(|&i| {
                let mut b = xi.clone();
                b[i] -= 1;
                b.iter().all(|&c| c >= 0) && rs.root_index(&b).is_some()
            })
            .expect("non-simple positive root has an extraspecial pair");
        let alpha1 = pos[i0].clone();
        let mut beta1 = xi.clone();
        beta1[i0] -= 1;
        let mut p = 0;
        loop {
            let mut d = beta1.clone();
            d[i0] -= p + 1;
            if rs.is_root(&d) {
                p += 1;
            } else {
                break;
            }
        }
        let a1 = i0;
        let b1 = rs.root_index(&beta1).expect("root");
        let n1 = q(p + 1);
        table.insert((a1, b1), n1.clone());
        table.insert((b1, a1), -n1.clone());
        let xi_norm = Rational::from_integer(norm(xi).into());
        for (ai, alpha) in pos.iter().enumerate() {
            let beta: Vec<i64> = xi.iter().zip(alpha).map(|(x, a)| x - a).collect();
            if !positive(&beta) {
                continue;
            }
            let Some(bi) = rs.root_index(&beta) else { continue };
            if ai >= bi || (ai, bi) == (a1, b1) {
                continue;
            }
            let mut val = Rational::zero();
            let t1 = sum(&beta, &neg(&alpha1));
            if rs.is_root(&t1) {
                val += n_any(rs, &table, &beta, &neg(&alpha1)) * n_any(rs, &table, alpha, &neg(&beta1))
                    / Rational::from_integer(norm(&t1).into());
            }
            let t2 = sum(alpha, &neg(&alpha1));
            if rs.is_root(&t2) {
                val += n_any(rs, &table, &neg(&alpha1), alpha) * n_any(rs, &table, &beta, &neg(&beta1))
                    / Rational::from_integer(norm(&t2).into());
            }
            val = val * &xi_norm / &n1;
            table.insert((ai, bi), val.clone());
            table.insert((bi, ai), -val);
        }
    }

    // basis: y_α (0..np), h_i (np..np+n), x_α (np+n..)
    let dim = 2 * np + n;
    let root_of = |b: usize| -> Option<Vec<i64>> {
        if b < np {
            Some(neg(&pos[b]))
        } else if b >= np + n {
            Some(pos[b - np - n].clone())
        } else {
            None
        }
    };
    let index_of = |r: &[i64]| -> usize {
        if positive(r) {
            np + n + rs.root_index(r).expect("root")
        } else {
            rs.root_index(&neg(r)).expect("root")
        }
    };
    let coroot = |r: &[i64]| -> SparseVec {
        let d_alpha = norm(r) / 2;
        (0..n)
            .filter(|&i| r[i] != 0)
            .map(|i| (np + i, Rational::new((r[i] * rs.half_norms[i]).into(), d_alpha.into())))
            .collect()
    };
    let fmt_root = |r: &[i64]| r.iter().map(|c| c.abs().to_string()).collect::<Vec<_>>().join(",");
    let mut labels = Vec::with_capacity(dim);
    labels.extend(pos.iter().map(|r| format!("y({})", fmt_root(r))));
    labels.extend((1..=n).map(|i| format!("h{i}")));
    labels.extend(pos.iter().map(|r| format!("x({})", fmt_root(r))));

    let mut lt = LieTable::from_fn(format!("{}", rs.label()), labels, |i, j| {
        match (root_of(i), root_of(j)) {
            (Some(a), Some(b)) => {
                let s = sum(&a, &b);
                if s.iter().all(|&c| c == 0) {
                    // i < j forces a negative, b positive: [y_α, x_α] = -h_α
                    coroot(&b).into_iter().map(|(k, c)| (k, -c)).collect()
                } else if rs.is_root(&s) {
                    vec![(index_of(&s), n_any(rs, &table, &a, &b))]
                } else {
                    Vec::new()
                }
            }
            (None, Some(b)) => {
                let h = i - np;
                let c: i64 = (0..n).map(|k| rs.cartan[h][k] * b[k]).sum();
                vec![(j, q(c))]
            }
            (Some(a), None) => {
                let h = j - np;
                let c: i64 = (0..n).map(|k| rs.cartan[h][k] * a[k]).sum();
                vec![(i, q(-c))]
            }
            (None, None) => Vec::new(),
        }
    });
    lt.weights = Some(
        (0..dim)
            .map(|b| vec![root_of(b).map_or_else(|| Weight::zero(n), |r| rs.root_to_weight(&r))])
            .collect(),
    );
    lt
}

/// Positions of `x_α`, `h_i`, `y_α` inside a Chevalley table.
#[derive(Clone, Copy, Debug)]
pub struct ChevalleyIndex {
    pub num_pos: usize,
    pub rank: usize,
}

impl ChevalleyIndex {
    pub fn of(rs: &RootSystem) -> Self {
        ChevalleyIndex { num_pos: rs.num_positive_roots(), rank: rs.rank }
    }
    pub fn y(&self, root: usize) -> usize {
        root
    }
    pub fn h(&self, i: usize) -> usize {
        self.num_pos + i
    }
    pub fn x(&self, root: usize) -> usize {
        self.num_pos + self.rank + root
    }
}

/// Commutative associative algebra given by a basis of polynomials modulo a
/// monic polynomial.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraTable {
    pub basis_labels: Vec<String>,
    products: Vec<Vec<SparseVec>>,
    pub unit_index: Option<usize>,
    pub degree: Vec<u32>,
    pub polys: Vec<Poly>,
    pub modulus: Poly,
}

impl AlgebraTable {
    /// Multiplication table of the span of `polys` inside `C[t]/(modulus)`.
    /// Fails if the span is not closed under products.
    pub fn from_polynomials(
        basis_labels: Vec<String>,
        polys: Vec<Poly>,
        degree: Vec<u32>,
        modulus: Poly,
    ) -> Result<Self> {
        let m = modulus.len() - 1;
        let polys: Vec<Poly> = polys.iter().map(|p| poly::rem(p, &modulus)).collect();
        let mut solver = SpanSolver::new(m);
        for p in &polys {
            if !solver.offer(&poly::padded(p, m)) {
                return Err(Error::InvalidInput("algebra basis polynomials are dependent".into()));
            }
        }
        let dim = polys.len();
        let mut products = vec![vec![Vec::new(); dim]; dim];
        for i in 0..dim {
            for j in i..dim {
                let prod = poly::rem(&poly::mul(&polys[i], &polys[j]), &modulus);
                let coords = solver
                    .solve(&poly::padded(&prod, m))
                    .ok_or_else(|| Error::InvalidInput("span is not closed under multiplication".into()))?;
                let v: SparseVec = coords.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
                products[j][i] = v.clone();
                products[i][j] = v;
            }
        }
        let one = poly::constant(Rational::one());
        let unit_index = polys.iter().position(|p| *p == one);
        Ok(AlgebraTable { basis_labels, products, unit_index, degree, polys, modulus })
    }

    pub fn dim(&self) -> usize {
        self.basis_labels.len()
    }

    pub fn product(&self, i: usize, j: usize) -> &[(usize, Rational)] {
        &self.products[i][j]
    }

    /// Commutativity, associativity, and the unit axiom on basis triples.
    pub fn check(&self) -> Result<()> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                if self.products[i][j] != self.products[j][i] {
                    return Err(Error::Invariant("algebra table not commutative".into()));
                }
                if let Some(u) = self.unit_index {
                    if i == u && self.products[u][j] != vec![(j, Rational::one())] {
                        return Err(Error::Invariant("unit does not act as identity".into()));
                    }
                }
                for k in 0..n {
                    let mut l = BTreeMap::new();
                    for (a, c) in &self.products[i][j] {
                        for (b, d) in &self.products[*a][k] {
                            accumulate(&mut l, *b, c * d);
                        }
                    }
                    let mut r = BTreeMap::new();
                    for (a, c) in &self.products[j][k] {
                        for (b, d) in &self.products[i][*a] {
                            accumulate(&mut r, *b, c * d);
                        }
                    }
                    if l != r {
                        return Err(Error::Invariant("algebra table not associative".into()));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        let mut pr = Vec::new();
        for i in 0..self.dim() {
            for j in i..self.dim() {
                if !self.products[i][j].is_empty() {
                    let terms: Vec<Value> =
                        self.products[i][j].iter().map(|(k, c)| json!([k, c.to_string()])).collect();
                    pr.push(json!([i, j, terms]));
                }
            }
        }
        json!({
            "basis_labels": self.basis_labels,
            "dim": self.dim(),
            "products": pr,
            "unit_index": self.unit_index,
            "degree": self.degree,
        })
    }
}

fn check_points(points: &[Rational]) -> Result<()> {
    if points.is_empty() {
        return Err(Error::InvalidInput("at least one point is required".into()));
    }
    for i in 0..points.len() {
        for j in 0..i {
            if points[i] == points[j] {
                return Err(Error::InvalidInput(format!("repeated point {}", points[i])));
            }
        }
    }
    Ok(())
}

fn is_origin(points: &[Rational]) -> bool {
    points.len() == 1 && points[0].is_zero()
}

fn monomial_label(points: &[Rational], r: usize, m: usize) -> String {
    if is_origin(points) {
        return match m {
            0 => "1".into(),
            1 => "t".into(),
            _ => format!("t^{m}"),
        };
    }
    let t = match r {
        0 => String::new(),
        1 => "t".into(),
        _ => format!("t^{r}"),
    };
    let f = match m {
        0 => String::new(),
        1 => "f".into(),
        _ => format!("f^{m}"),
    };
    match (t.is_empty(), f.is_empty()) {
        (true, true) => "1".into(),
        (false, true) => t,
        (true, false) => f,
        (false, false) => format!("{t} {f}"),
    }
}

/// `I/Iˢ` (or `C ⊕ I/Iˢ` when `unital`) for `I = ⟨∏(t − a_i)⟩`, with basis
/// `{t^r f^m}` ordered by `(m, r)` and the unit first.
pub fn build_algebra_table(points: &[Rational], s: usize, unital: bool) -> Result<AlgebraTable> {
    check_points(points)?;
    if s < 1 {
        return Err(Error::InvalidInput("truncation level s must be ≥ 1".into()));
    }
    let k = points.len();
    let f = poly::from_roots(points);
    let modulus = poly::pow(&f, s);
    let mut labels = Vec::new();
    let mut polys = Vec::new();
    let mut degree = Vec::new();
    if unital {
        labels.push("1".to_string());
        polys.push(poly::constant(Rational::one()));
        degree.push(0);
    }
    for m in 1..s {
        for r in 0..k {
            labels.push(monomial_label(points, r, m));
            polys.push(poly::mul(&poly::monomial(r), &poly::pow(&f, m)));
            degree.push((r + k * m) as u32);
        }
    }
    AlgebraTable::from_polynomials(labels, polys, degree, modulus)
}

/// `C[t]/Iˢ` with basis `{t^r f^m : 0 ≤ m < s, 0 ≤ r < k}`.
pub fn build_quotient_algebra(points: &[Rational], s: usize) -> Result<AlgebraTable> {
    check_points(points)?;
    if s < 1 {
        return Err(Error::InvalidInput("truncation level s must be ≥ 1".into()));
    }
    let k = points.len();
    let f = poly::from_roots(points);
    let mut labels = Vec::new();
    let mut polys = Vec::new();
    let mut degree = Vec::new();
    for m in 0..s {
        for r in 0..k {
            labels.push(monomial_label(points, r, m));
            polys.push(poly::mul(&poly::monomial(r), &poly::pow(&f, m)));
            degree.push((r + k * m) as u32);
        }
    }
    AlgebraTable::from_polynomials(labels, polys, degree, poly::pow(&f, s))
}

/// Orthogonal idempotents of `C[t]/Iˢ` lifting the Lagrange basis at the points.
#[derive(Clone, Debug, PartialEq)]
pub struct IdempotentSplitting {
    pub points: Vec<Rational>,
    pub s: usize,
    pub idempotents: Vec<Poly>,
    pub modulus: Poly,
}

impl IdempotentSplitting {
    pub fn new(points: &[Rational], s: usize) -> Result<Self> {
        check_points(points)?;
        if s < 1 {
            return Err(Error::InvalidInput("truncation level s must be ≥ 1".into()));
        }
        let modulus = poly::pow(&poly::from_roots(points), s);
        let iterations = (usize::BITS - (s.max(1) - 1).leading_zeros()) as usize + 1;
        let three = poly::constant(q(3));
        let two = poly::constant(q(2));
        let idempotents = (0..points.len())
            .map(|i| {
                let mut e = poly::constant(Rational::one());
                for (j, b) in points.iter().enumerate() {
                    if j != i {
                        let den = (&points[i] - b).recip();
                        e = poly::mul(&e, &vec![-b * &den, den]);
                    }
                }
                for _ in 0..iterations {
                    let e2 = poly::rem(&poly::mul(&e, &e), &modulus);
                    let e3 = poly::rem(&poly::mul(&e2, &e), &modulus);
                    e = poly::sub(&poly::mul(&three, &e2), &poly::mul(&two, &e3));
                }
                poly::rem(&e, &modulus)
            })
            .collect();
        let sp = IdempotentSplitting { points: points.to_vec(), s, idempotents, modulus };
        sp.check()?;
        Ok(sp)
    }

    /// `e_i² ≡ e_i`, `e_i e_j ≡ 0`, `Σ e_i ≡ 1` modulo `Iˢ`.
    pub fn check(&self) -> Result<()> {
        let k = self.idempotents.len();
        let mut total = Vec::new();
        for i in 0..k {
            for j in 0..k {
                let p = poly::rem(&poly::mul(&self.idempotents[i], &self.idempotents[j]), &self.modulus);
                let expected = if i == j { self.idempotents[i].clone() } else { Vec::new() };
                if p != expected {
                    return Err(Error::Invariant(format!("idempotents {i},{j} not orthogonal")));
                }
            }
            total = poly::add(&total, &self.idempotents[i]);
        }
        if total != poly::constant(Rational::one()) {
            return Err(Error::Invariant("idempotents do not sum to 1".into()));
        }
        Ok(())
    }

    /// The ideal `I/Iˢ` in the adapted basis `{e_i f^m}`, ordered by `(i, m)`,
    /// together with the slot of each basis element.
    pub fn adapted_ideal_algebra(&self) -> Result<(AlgebraTable, Vec<usize>)> {
        let f = poly::from_roots(&self.points);
        let mut labels = Vec::new();
        let mut polys = Vec::new();
        let mut degree = Vec::new();
        let mut slots = Vec::new();
        for (i, e) in self.idempotents.iter().enumerate() {
            for m in 1..self.s {
                labels.push(if m == 1 { format!("e{} f", i + 1) } else { format!("e{} f^{m}", i + 1) });
                polys.push(poly::mul(e, &poly::pow(&f, m)));
                degree.push(m as u32);
                slots.push(i);
            }
        }
        Ok((AlgebraTable::from_polynomials(labels, polys, degree, self.modulus.clone())?, slots))
    }
}

/// `g ⊗ A` for a simple `g` given by its Chevalley table. Basis index is
/// `a · dim g + x`. Weight labels have arity 1 unless `slots` assigns every
/// algebra basis element to a torus factor.
pub fn current_algebra(
    name: impl Into<String>,
    g: &LieTable,
    a: &AlgebraTable,
    points: &[Rational],
    graded: bool,
    slots: Option<&[usize]>,
) -> LieTable {
    let gd = g.dim();
    let labels: Vec<String> = (0..a.dim())
        .flat_map(|ai| {
            g.basis_labels.iter().map(move |x| {
                if a.unit_index == Some(ai) {
                    x.clone()
                } else {
                    format!("{x}⊗{}", a.basis_labels[ai])
                }
            })
        })
        .collect();
    let mut lt = LieTable::from_fn(name, labels, |i, j| {
        let (ai, xi) = (i / gd, i % gd);
        let (aj, xj) = (j / gd, j % gd);
        let mut acc = BTreeMap::new();
        for (z, c) in g.bracket(xi, xj) {
            for (b, d) in a.product(ai, aj) {
                accumulate(&mut acc, b * gd + z, c * d);
            }
        }
        to_sparse(acc)
    });
    let gw = g.weights.as_ref().expect("Chevalley table carries weights");
    let arity = slots.map_or(1, |s| s.iter().max().map_or(1, |m| m + 1));
    lt.weights = Some(
        (0..a.dim())
            .flat_map(|ai| {
                gw.iter().map(move |w| match slots {
                    None => w.clone(),
                    Some(sl) => {
                        let r = w[0].rank();
                        (0..arity).map(|k| if k == sl[ai] { w[0].clone() } else { Weight::zero(r) }).collect()
                    }
                })
            })
            .collect(),
    );
    if graded {
        lt.t_degree = Some((0..a.dim()).flat_map(|ai| std::iter::repeat(a.degree[ai]).take(gd)).collect());
    }
    lt.current = Some(CurrentData { g_dim: gd, algebra: a.clone(), points: points.to_vec() });
    lt
}

/// `g ⊗ (tC[t]/tˢC[t])`, graded by t-degree.
pub fn build_gtp_s(rs: &RootSystem, s: usize) -> Result<LieTable> {
    if s < 2 {
        return Err(Error::InvalidInput("gtp_s needs s ≥ 2".into()));
    }
    let g = structure_constants(rs);
    let origin = [Rational::zero()];
    let a = build_algebra_table(&origin, s, false)?;
    Ok(current_algebra(format!("gtp_{s}({})", rs.label()), &g, &a, &origin, true, None))
}

/// `g ⊗ I/Iˢ` in the polynomial basis `{x ⊗ t^r f^m}` with `h`-weights,
/// together with the idempotent splitting of `C[t]/Iˢ`.
pub fn build_gis(rs: &RootSystem, points: &[Rational], s: usize) -> Result<(LieTable, IdempotentSplitting)> {
    if s < 2 {
        return Err(Error::InvalidInput("g⊗I/Iˢ needs s ≥ 2".into()));
    }
    let g = structure_constants(rs);
    let a = build_algebra_table(points, s, false)?;
    let splitting = IdempotentSplitting::new(points, s)?;
    let graded = is_origin(points);
    Ok((current_algebra(gis_name(rs, points, s), &g, &a, points, graded, None), splitting))
}

fn gis_name(rs: &RootSystem, points: &[Rational], s: usize) -> String {
    let pts: Vec<String> = points.iter().map(|p| p.to_string()).collect();
    format!("gIs({},{{{}}},{s})", rs.label(), pts.join(","))
}

/// `g ⊗ I/Iˢ` in the idempotent-adapted basis `{x ⊗ e_i f^m}`; weights have
/// one slot per point (the `h × ⋯ × h` torus).
pub fn build_gis_adapted(rs: &RootSystem, points: &[Rational], s: usize) -> Result<LieTable> {
    if s < 2 {
        return Err(Error::InvalidInput("g⊗I/Iˢ needs s ≥ 2".into()));
    }
    let g = structure_constants(rs);
    let splitting = IdempotentSplitting::new(points, s)?;
    let (a, slots) = splitting.adapted_ideal_algebra()?;
    Ok(current_algebra(format!("{}[adapted]", gis_name(rs, points, s)), &g, &a, points, false, Some(&slots)))
}

/// Which finite-dimensional quotient of `g[t]` to build.
#[derive(Clone, Debug, PartialEq)]
pub enum TruncationSpec {
    /// `g ⊗ C[t]/tˢ`.
    Polynomial { s: usize },
    /// `g ⊗ (C ⊕ I/Iˢ)`.
    UnitalAugmented { points: Vec<Rational>, s: usize },
    /// `g ⊗ C[t]/Iˢ`.
    Quotient { points: Vec<Rational>, s: usize },
}

pub fn build_full_truncation(rs: &RootSystem, spec: &TruncationSpec) -> Result<LieTable> {
    let g = structure_constants(rs);
    match spec {
        TruncationSpec::Polynomial { s } => {
            let origin = [Rational::zero()];
            let a = build_quotient_algebra(&origin, *s)?;
            Ok(current_algebra(format!("g[t]_{s}({})", rs.label()), &g, &a, &origin, true, None))
        }
        TruncationSpec::UnitalAugmented { points, s } => {
            let a = build_algebra_table(points, *s, true)?;
            let pts: Vec<String> = points.iter().map(|p| p.to_string()).collect();
            let name = format!("g(C+I/I^{s})({},{{{}}})", rs.label(), pts.join(","));
            Ok(current_algebra(name, &g, &a, points, is_origin(points), None))
        }
        TruncationSpec::Quotient { points, s } => {
            let a = build_quotient_algebra(points, *s)?;
            let pts: Vec<String> = points.iter().map(|p| p.to_string()).collect();
            let name = format!("g[t]/I^{s}({},{{{}}})", rs.label(), pts.join(","));
            Ok(current_algebra(name, &g, &a, points, is_origin(points), None))
        }
    }
}

/// Direct sum `L₁ ⊕ ⋯ ⊕ L_k`; weight slots are concatenated and t-degrees kept
/// when every summand is graded.
pub fn direct_sum(name: impl Into<String>, tables: &[&LieTable]) -> Result<LieTable> {
    let mut offsets = Vec::new();
    let mut labels = Vec::new();
    for (k, t) in tables.iter().enumerate() {
        offsets.push(labels.len());
        labels.extend(t.basis_labels.iter().map(|l| format!("{l}[{}]", k + 1)));
    }
    let owner = |i: usize| offsets.iter().rposition(|&o| o <= i).expect("offset");
    let mut lt = LieTable::from_fn(name, labels, |i, j| {
        let (ki, kj) = (owner(i), owner(j));
        if ki != kj {
            return Vec::new();
        }
        let o = offsets[ki];
        tables[ki].bracket(i - o, j - o).iter().map(|(k, c)| (k + o, c.clone())).collect()
    });
    if tables.iter().all(|t| t.weights.is_some()) {
        let arities: Vec<usize> = tables.iter().map(|t| t.arity().unwrap_or(1)).collect();
        let mut w = Vec::new();
        for (k, t) in tables.iter().enumerate() {
            let tw = t.weights.as_ref().expect("checked");
            let ranks: Vec<usize> = tw[0].iter().map(Weight::rank).collect();
            for b in tw {
                let mut row = Vec::new();
                for (kk, other) in tables.iter().enumerate() {
                    if kk == k {
                        row.extend(b.iter().cloned());
                    } else {
                        let r = other.weights.as_ref().expect("checked")[0][0].rank();
                        row.extend((0..arities[kk]).map(|_| Weight::zero(r)));
                    }
                }
                debug_assert!(ranks.iter().all(|&r| r == row[0].rank()));
                w.push(row);
            }
        }
        lt.weights = Some(w);
    }
    if tables.iter().all(|t| t.t_degree.is_some()) {
        lt.t_degree = Some(tables.iter().flat_map(|t| t.t_degree.clone().expect("checked")).collect());
    }
    Ok(lt)
}

/// Finite-dimensional representation of a [`LieTable`].
#[derive(Clone, Debug, PartialEq)]
pub struct ModuleRep {
    pub dim: usize,
    /// `action[u]` is the matrix of basis element `u` (column = source vector).
    pub action: Vec<SparseRatMatrix>,
    pub weights: Vec<Vec<Weight>>,
    pub host: String,
    pub label: String,
}

impl ModuleRep {
    pub fn trivial(host: &LieTable) -> Self {
        let arity = host.arity().unwrap_or(1);
        let r = host.weights.as_ref().map_or(0, |w| w[0][0].rank());
        ModuleRep {
            dim: 1,
            action: vec![SparseRatMatrix::zeros(1, 1); host.dim()],
            weights: vec![vec![Weight::zero(r); arity]],
            host: host.signature(),
            label: "C".into(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.dim == 1 && self.action.iter().all(SparseRatMatrix::is_zero)
    }

    /// `ρ([u,v]) = ρ(u)ρ(v) − ρ(v)ρ(u)` on all basis pairs.
    pub fn check_bracket(&self, host: &LieTable) -> Result<()> {
        if host.signature() != self.host || host.dim() != self.action.len() {
            return Err(Error::InvalidInput(format!("module over {} used with {}", self.host, host.signature())));
        }
        for i in 0..host.dim() {
            for j in i + 1..host.dim() {
                let lhs = host.bracket(i, j).iter().fold(SparseRatMatrix::zeros(self.dim, self.dim), |acc, (k, c)| {
                    acc.add(&self.action[*k].scale(c))
                });
                let rhs = self.action[i].commutator(&self.action[j]);
                if lhs != rhs {
                    return Err(Error::Invariant(format!(
                        "module {} does not respect [{}, {}]",
                        self.label, host.basis_labels[i], host.basis_labels[j]
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Irreducible `V(λ)` over the Chevalley table of `rs`, constructed weight
/// space by weight space from the lowering operators.
pub fn irreducible_module(rs: &RootSystem, g: &LieTable, lambda: &Weight) -> Result<ModuleRep> {
    let ch = rs.dominant_character(lambda)?;
    let n = rs.rank;
    let idx = ChevalleyIndex::of(rs);
    let lam_h = rs.height(lambda);
    let mut by_depth: BTreeMap<i64, Vec<Weight>> = BTreeMap::new();
    for key in ch.entries.keys() {
        let d = lam_h - rs.height(&key[0]);
        assert!(d.is_integer());
        by_depth.entry(d.to_integer()).or_default().push(key[0].clone());
    }
    let mut basis_of: HashMap<Weight, Vec<usize>> = HashMap::new();
    let mut weights: Vec<Weight> = Vec::new();
    // e[i][v], f[i][v]: images of basis vector v under e_i, f_i
    let mut e: Vec<HashMap<usize, SparseVec>> = vec![HashMap::new(); n];
    let mut f: Vec<HashMap<usize, SparseVec>> = vec![HashMap::new(); n];
    let apply = |m: &HashMap<usize, SparseVec>, v: &SparseVec| -> SparseVec {
        let mut acc = BTreeMap::new();
        for (b, c) in v {
            if let Some(col) = m.get(b) {
                for (k, d) in col {
                    accumulate(&mut acc, *k, c * d);
                }
            }
        }
        to_sparse(acc)
    };
    for (depth, ws) in &by_depth {
        for mu in ws {
            let expected = ch.get(std::slice::from_ref(mu)) as usize;
            if *depth == 0 {
                basis_of.insert(mu.clone(), vec![weights.len()]);
                weights.push(mu.clone());
                continue;
            }
            let above: Vec<Option<Weight>> = (0..n)
                .map(|j| {
                    let w = mu.add(&rs.simple_root(j));
                    basis_of.contains_key(&w).then_some(w)
                })
                .collect();
            let coords: Vec<usize> = above
                .iter()
                .flatten()
                .flat_map(|w| basis_of[w].iter().copied())
                .collect();
            let pos: HashMap<usize, usize> = coords.iter().enumerate().map(|(p, &c)| (c, p)).collect();
            let mut solver = SpanSolver::new(coords.len());
            let mut accepted: Vec<SparseVec> = Vec::new();
            let mut pending: Vec<(usize, usize, Vec<Rational>)> = Vec::new();
            for i in 0..n {
                let Some(src) = &above[i] else { continue };
                let pairing = src.0[i];
                for &vb in &basis_of[src] {
                    // e_j f_i v_b = f_i e_j v_b + δ_ij ⟨μ+α_i, α_i^∨⟩ v_b
                    let mut acc = BTreeMap::new();
                    for j in 0..n {
                        let ejv = e[j].get(&vb).cloned().unwrap_or_default();
                        for (k, c) in apply(&f[i], &ejv) {
                            accumulate(&mut acc, k, c);
                        }
                    }
                    accumulate(&mut acc, vb, q(pairing));
                    let mut dense = vec![Rational::zero(); coords.len()];
                    for (k, c) in acc {
                        dense[pos[&k]] = c;
                    }
                    if solver.offer(&dense) {
                        accepted.push(dense.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(p, c)| (coords[p], c.clone())).collect());
                    }
                    pending.push((i, vb, dense));
                }
            }
            if accepted.len() != expected {
                return Err(Error::Invariant(format!(
                    "weight space {mu} of V({lambda}) has dimension {} instead of {expected}",
                    accepted.len()
                )));
            }
            let first = weights.len();
            let new_ids: Vec<usize> = (first..first + accepted.len()).collect();
            for (id, img) in new_ids.iter().zip(&accepted) {
                weights.push(mu.clone());
                for j in 0..n {
                    let part: SparseVec = match &above[j] {
                        Some(w) => img.iter().filter(|(k, _)| basis_of[w].contains(k)).cloned().collect(),
                        None => Vec::new(),
                    };
                    e[j].insert(*id, part);
                }
            }
            for (i, vb, dense) in pending {
                let c = solver.solve(&dense).expect("candidate lies in its own span");
                let col: SparseVec =
                    c.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(p, x)| (new_ids[p], x)).collect();
                f[i].insert(vb, col);
            }
            basis_of.insert(mu.clone(), new_ids);
        }
    }
    let dim = weights.len();
    let to_matrix = |m: &HashMap<usize, SparseVec>| {
        SparseRatMatrix::from_triplets(dim, dim, m.iter().flat_map(|(src, col)| col.iter().map(move |(t, c)| (*t, *src, c.clone()))))
    };
    let mut action = vec![SparseRatMatrix::zeros(dim, dim); g.dim()];
    for i in 0..n {
        action[idx.x(i)] = to_matrix(&e[i]);
        action[idx.y(i)] = to_matrix(&f[i]);
        action[idx.h(i)] = SparseRatMatrix::from_triplets(dim, dim, (0..dim).map(|v| (v, v, q(weights[v].0[i]))));
    }
    for (xi, root) in rs.positive_roots.iter().enumerate().skip(n) {
        let (i, gamma) = (0..n)
            .find_map(|i| {
                let mut gm = root.clone();
                gm[i] -= 1;
                let gi = rs.root_index(&gm)?;
                (!g.bracket(idx.x(i), idx.x(gi)).is_empty()).then_some((i, gi))
            })
            .expect("every non-simple root is reached from a simple root");
        for (a, b) in [(idx.x(i), idx.x(gamma)), (idx.y(i), idx.y(gamma))] {
            let br = g.bracket(a, b);
            let (target, c) = (&br[0].0, &br[0].1);
            debug_assert!(*target == idx.x(xi) || *target == idx.y(xi));
            action[*target] = action[a].commutator(&action[b]).scale(&c.recip());
        }
    }
    let m = ModuleRep {
        dim,
        action,
        weights: weights.into_iter().map(|w| vec![w]).collect(),
        host: g.signature(),
        label: format!("V({lambda})"),
    };
    m.check_bracket(g)?;
    Ok(m)
}

/// Pull-back of `V(λ)` along evaluation at `point`: `x ⊗ p` acts by `p(point)·ρ(x)`.
///
/// Evaluation is only defined on a truncation when the truncating polynomial
/// vanishes at `point`.
pub fn evaluation_module(rs: &RootSystem, lambda: &Weight, point: &Rational, host: &LieTable) -> Result<ModuleRep> {
    let g = structure_constants(rs);
    let Some(cur) = &host.current else {
        if host.signature() == g.signature() {
            return irreducible_module(rs, &g, lambda);
        }
        return Err(Error::Unsupported(format!("evaluation modules over {}", host.name)));
    };
    if cur.g_dim != g.dim() {
        return Err(Error::InvalidInput(format!("{} is not a current algebra of {}", host.name, rs.label())));
    }
    if !poly::eval(&cur.algebra.modulus, point).is_zero() {
        return Err(Error::InvalidInput(format!(
            "evaluation at {point} does not factor through {}: the truncation ideal does not vanish there",
            host.name
        )));
    }
    let v = irreducible_module(rs, &g, lambda)?;
    let mut action = Vec::with_capacity(host.dim());
    for ai in 0..cur.algebra.dim() {
        let c = poly::eval(&cur.algebra.polys[ai], point);
        for x in 0..cur.g_dim {
            action.push(if c.is_zero() { SparseRatMatrix::zeros(v.dim, v.dim) } else { v.action[x].scale(&c) });
        }
    }
    let arity = host.arity().unwrap_or(1);
    let weights = if arity == 1 {
        v.weights
    } else {
        let slot = cur
            .points
            .iter()
            .position(|p| p == point)
            .ok_or_else(|| Error::InvalidInput(format!("{point} is not one of the splitting points")))?;
        v.weights
            .into_iter()
            .map(|w| (0..arity).map(|k| if k == slot { w[0].clone() } else { Weight::zero(rs.rank) }).collect())
            .collect()
    };
    let m = ModuleRep { dim: v.dim, action, weights, host: host.signature(), label: format!("ev_{point} V({lambda})") };
    m.check_bracket(host)?;
    Ok(m)
}

/// Diagonal action on `M₁ ⊗ M₂` (second factor varies fastest).
pub fn tensor_modules(m1: &ModuleRep, m2: &ModuleRep, host: &LieTable) -> Result<ModuleRep> {
    if m1.host != m2.host || m1.host != host.signature() {
        return Err(Error::InvalidInput(format!("modules over different hosts: {} vs {}", m1.host, m2.host)));
    }
    let i1 = SparseRatMatrix::identity(m1.dim);
    let i2 = SparseRatMatrix::identity(m2.dim);
    let action = m1.action.iter().zip(&m2.action).map(|(a, b)| a.kron(&i2).add(&i1.kron(b))).collect();
    let weights = m1
        .weights
        .iter()
        .flat_map(|w1| m2.weights.iter().map(move |w2| w1.iter().zip(w2).map(|(a, b)| a.add(b)).collect()))
        .collect();
    let m = ModuleRep {
        dim: m1.dim * m2.dim,
        action,
        weights,
        host: m1.host.clone(),
        label: format!("{} ⊗ {}", m1.label, m2.label),
    };
    m.check_bracket(host)?;
    Ok(m)
}

/// Absolute values of the nonzero root-root structure constants.
pub fn root_constant_magnitudes(rs: &RootSystem, g: &LieTable) -> Vec<Rational> {
    let idx = ChevalleyIndex::of(rs);
    let np = idx.num_pos;
    let is_root_vec = |b: usize| b < np || b >= np + rs.rank;
    let mut out = Vec::new();
    for i in 0..g.dim() {
        for j in 0..g.dim() {
            if is_root_vec(i) && is_root_vec(j) {
                for (k, c) in g.bracket(i, j) {
                    if is_root_vec(*k) {
                        out.push(c.abs());
                    }
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

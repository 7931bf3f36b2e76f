//! Finite root systems, weights, Weyl group action, characters and
//! tensor-product decomposition.
//!
//! Conventions follow Bourbaki numbering. Weights are integer vectors in
//! fundamental-weight coordinates (`λ_i = λ(α_i^∨)`), roots are integer
//! vectors in simple-root coordinates. The Cartan matrix is stored as
//! `cartan[i][j] = α_j(α_i^∨)`.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_RANK: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum CartanType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            CartanType::A => 'A',
            CartanType::B => 'B',
            CartanType::C => 'C',
            CartanType::D => 'D',
            CartanType::E => 'E',
            CartanType::F => 'F',
            CartanType::G => 'G',
        };
        write!(f, "{c}")
    }
}

/// A weight in fundamental-weight coordinates.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl FromStr for Weight {
    type Err = Error;

    /// Parses `[1,0]`, `1,0` or `1`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('[').trim_end_matches(']');
        if t.trim().is_empty() {
            return Err(Error::InvalidInput(format!("empty weight '{s}'")));
        }
        t.split(',')
            .map(|p| {
                p.trim()
                    .parse::<i64>()
                    .map_err(|e| Error::InvalidInput(format!("bad weight '{s}': {e}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Weight)
    }
}

/// Finite root system with all data the other modules consume.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSystem {
    pub cartan_type: CartanType,
    pub rank: usize,
    /// `cartan[i][j] = α_j(α_i^∨)`.
    pub cartan: Vec<Vec<i64>>,
    /// Half squared lengths `(α_i, α_i)/2`, shortest simple root normalized to 1.
    pub half_norms: Vec<i64>,
    /// Positive roots in simple-root coordinates, ordered by height, simple roots first in index order.
    pub positive_roots: Vec<Vec<i64>>,
    /// Highest root in fundamental-weight coordinates.
    pub theta: Weight,
    /// Permutation of fundamental coordinates induced by `-w₀`.
    pub w0_permutation: Vec<usize>,
    inv_cartan: Vec<Vec<Rational64>>,
    root_index: HashMap<Vec<i64>, usize>,
}

fn bourbaki_edges(t: CartanType, n: usize) -> (Vec<(usize, usize)>, Vec<i64>) {
    let chain: Vec<(usize, usize)> = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
    match t {
        CartanType::A => (chain, vec![1; n]),
        CartanType::B => {
            let mut d = vec![2; n];
            d[n - 1] = 1;
            (chain, d)
        }
        CartanType::C => {
            let mut d = vec![1; n];
            d[n - 1] = 2;
            (chain, d)
        }
        CartanType::D => {
            let mut e: Vec<(usize, usize)> = (0..n - 2).map(|i| (i, i + 1)).collect();
            e.push((n - 3, n - 1));
            (e, vec![1; n])
        }
        CartanType::E => {
            // 1-3-4-5-6(-7-8), 2 attached to 4
            let mut e = vec![(0, 2), (1, 3), (2, 3)];
            for i in 3..n - 1 {
                e.push((i, i + 1));
            }
            (e, vec![1; n])
        }
        CartanType::F => (chain, vec![2, 2, 1, 1]),
        CartanType::G => (chain, vec![1, 3]),
    }
}

fn valid_rank(t: CartanType, n: usize) -> bool {
    match t {
        CartanType::A => n >= 1,
        CartanType::B => n >= 2,
        CartanType::C => n >= 3,
        CartanType::D => n >= 4,
        CartanType::E => (6..=8).contains(&n),
        CartanType::F => n == 4,
        CartanType::G => n == 2,
    }
}

fn rational_inverse(m: &[Vec<i64>]) -> Vec<Vec<Rational64>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational64>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row: Vec<Rational64> = r.iter().map(|&x| Rational64::from_integer(x)).collect();
            row.extend((0..n).map(|j| Rational64::from_integer((i == j) as i64)));
            row
        })
        .collect();
    for k in 0..n {
        let p = (k..n).find(|&r| a[r][k] != Rational64::from_integer(0)).expect("Cartan matrix is invertible");
        a.swap(k, p);
        let inv = Rational64::from_integer(1) / a[k][k];
        for x in a[k].iter_mut() {
            *x *= inv;
        }
        for r in 0..n {
            if r != k {
                let f = a[r][k];
                if f != Rational64::from_integer(0) {
                    let pivot = a[k].clone();
                    for (x, y) in a[r].iter_mut().zip(&pivot) {
                        *x -= f * *y;
                    }
                }
            }
        }
    }
    a.into_iter().map(|r| r[n..].to_vec()).collect()
}

impl RootSystem {
    /// Builds the root system of the given finite type.
    pub fn new(cartan_type: CartanType, rank: usize) -> Result<Self> {
        if !valid_rank(cartan_type, rank) {
            return Err(Error::InvalidType(format!("{cartan_type}{rank} is not a finite type")));
        }
        if rank > MAX_RANK {
            return Err(Error::InvalidType(format!("rank {rank} exceeds the cap of {MAX_RANK}")));
        }
        let (edges, half_norms) = bourbaki_edges(cartan_type, rank);
        let mut sym = vec![vec![0i64; rank]; rank];
        for i in 0..rank {
            sym[i][i] = 2 * half_norms[i];
        }
        for &(i, j) in &edges {
            let v = -half_norms[i].max(half_norms[j]);
            sym[i][j] = v;
            sym[j][i] = v;
        }
        let cartan: Vec<Vec<i64>> =
            (0..rank).map(|i| (0..rank).map(|j| 2 * sym[i][j] / sym[i][i]).collect()).collect();
        let inv_cartan = rational_inverse(&cartan);
        let mut rs = RootSystem {
            cartan_type,
            rank,
            cartan,
            half_norms,
            positive_roots: Vec::new(),
            theta: Weight::zero(rank),
            w0_permutation: Vec::new(),
            inv_cartan,
            root_index: HashMap::new(),
        };
        rs.positive_roots = rs.generate_positive_roots();
        rs.root_index = rs.positive_roots.iter().enumerate().map(|(i, r)| (r.clone(), i)).collect();
        let top = rs.positive_roots.last().expect("nonempty").clone();
        rs.theta = rs.root_to_weight(&top);
        rs.w0_permutation = (0..rank)
            .map(|i| {
                let mut w = Weight::zero(rank);
                w.0[i] = -1;
                let d = rs.dominant_conjugate(&w);
                d.0.iter().position(|&c| c == 1).expect("−w₀ permutes fundamental weights")
            })
            .collect();
        Ok(rs)
    }

    /// Parses labels like `A1`, `G2`, `E8`.
    pub fn from_label(label: &str) -> Result<Self> {
        let label = label.trim();
        let mut chars = label.chars();
        let t = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => CartanType::A,
            Some('B') => CartanType::B,
            Some('C') => CartanType::C,
            Some('D') => CartanType::D,
            Some('E') => CartanType::E,
            Some('F') => CartanType::F,
            Some('G') => CartanType::G,
            _ => return Err(Error::InvalidType(format!("unknown type label '{label}'"))),
        };
        let n: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::InvalidType(format!("missing rank in '{label}'")))?;
        Self::new(t, n)
    }

    pub fn label(&self) -> String {
        format!("{}{}", self.cartan_type, self.rank)
    }

    /// Symmetric form on simple roots: `(α_i, α_j)`.
    pub fn root_form(&self, i: usize, j: usize) -> i64 {
        self.half_norms[i] * self.cartan[i][j]
    }

    pub fn root_norm(&self, root: &[i64]) -> i64 {
        let mut s = 0;
        for i in 0..self.rank {
            for j in 0..self.rank {
                s += root[i] * root[j] * self.root_form(i, j);
            }
        }
        s
    }

    /// Converts simple-root coordinates to fundamental-weight coordinates.
    pub fn root_to_weight(&self, root: &[i64]) -> Weight {
        Weight((0..self.rank).map(|i| (0..self.rank).map(|j| self.cartan[i][j] * root[j]).sum()).collect())
    }

    /// Simple root `α_i` in fundamental-weight coordinates.
    pub fn simple_root(&self, i: usize) -> Weight {
        Weight((0..self.rank).map(|k| self.cartan[k][i]).collect())
    }

    /// Fundamental weight `ω_i` in simple-root coordinates (rational).
    pub fn fundamental_weight_in_roots(&self, i: usize) -> Vec<Rational64> {
        (0..self.rank).map(|k| self.inv_cartan[k][i]).collect()
    }

    /// Simple-root coordinates of a weight.
    pub fn weight_to_roots(&self, w: &Weight) -> Vec<Rational64> {
        (0..self.rank)
            .map(|k| (0..self.rank).map(|j| self.inv_cartan[k][j] * w.0[j]).sum())
            .collect()
    }

    /// Height functional `Σ_k (root coordinates)_k`; strictly increasing along positive roots.
    pub fn height(&self, w: &Weight) -> Rational64 {
        self.weight_to_roots(w).into_iter().sum()
    }

    /// `λ ≤ μ` in dominance order: `μ − λ` is a nonnegative integral
    /// combination of simple roots.
    pub fn dominance_le(&self, lambda: &Weight, mu: &Weight) -> bool {
        self.weight_to_roots(&mu.sub(lambda)).iter().all(|c| c.is_integer() && *c.numer() >= 0)
    }

    pub fn root_index(&self, root: &[i64]) -> Option<usize> {
        self.root_index.get(root).copied()
    }

    pub fn is_root(&self, root: &[i64]) -> bool {
        if root.iter().all(|&c| c >= 0) {
            self.root_index.contains_key(root)
        } else if root.iter().all(|&c| c <= 0) {
            let neg: Vec<i64> = root.iter().map(|c| -c).collect();
            self.root_index.contains_key(&neg)
        } else {
            false
        }
    }

    pub fn num_positive_roots(&self) -> usize {
        self.positive_roots.len()
    }

    /// `dim g = 2|Φ⁺| + rank`.
    pub fn lie_dim(&self) -> usize {
        2 * self.positive_roots.len() + self.rank
    }

    fn generate_positive_roots(&self) -> Vec<Vec<i64>> {
        let n = self.rank;
        let mut all: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                let mut v = vec![0; n];
                v[i] = 1;
                v
            })
            .collect();
        let mut seen: HashSet<Vec<i64>> = all.iter().cloned().collect();
        let mut layer = all.clone();
        while !layer.is_empty() {
            let mut next = Vec::new();
            for beta in &layer {
                for i in 0..n {
                    // p: how far down the α_i-string through β goes
                    let mut p = 0;
                    loop {
                        let mut down = beta.clone();
                        down[i] -= p + 1;
                        if down.iter().all(|&c| c >= 0) && seen.contains(&down) {
                            p += 1;
                        } else {
                            break;
                        }
                    }
                    let pairing: i64 = (0..n).map(|j| self.cartan[i][j] * beta[j]).sum();
                    let q = p - pairing;
                    if q > 0 {
                        let mut up = beta.clone();
                        up[i] += 1;
                        if seen.insert(up.clone()) {
                            next.push(up);
                        }
                    }
                }
            }
            next.sort_by(|a, b| b.cmp(a));
            all.extend(next.iter().cloned());
            layer = next;
        }
        all
    }

    /// `⟨λ, α^∨⟩` for a positive root given in simple-root coordinates.
    pub fn coroot_pairing(&self, w: &Weight, root: &[i64]) -> Rational64 {
        let num: i64 = (0..self.rank).map(|j| root[j] * self.half_norms[j] * w.0[j]).sum();
        let d_alpha = self.root_norm(root) / 2;
        Rational64::new(num, d_alpha)
    }

    /// `(λ, α)` for a weight and a root in simple-root coordinates (integer-valued
    /// under the normalization of `half_norms`).
    pub fn weight_root_form(&self, w: &Weight, root: &[i64]) -> i64 {
        (0..self.rank).map(|j| root[j] * self.half_norms[j] * w.0[j]).sum()
    }

    pub fn rho(&self) -> Weight {
        Weight(vec![1; self.rank])
    }

    /// Simple reflection `s_i λ = λ - λ_i α_i`.
    pub fn reflect(&self, w: &Weight, i: usize) -> Weight {
        let c = w.0[i];
        Weight((0..self.rank).map(|k| w.0[k] - c * self.cartan[k][i]).collect())
    }

    /// The unique dominant weight in the Weyl orbit of `w`.
    pub fn dominant_conjugate(&self, w: &Weight) -> Weight {
        let mut w = w.clone();
        while let Some(i) = w.0.iter().position(|&c| c < 0) {
            w = self.reflect(&w, i);
        }
        w
    }

    fn require_dominant(&self, w: &Weight) -> Result<()> {
        if w.rank() != self.rank {
            return Err(Error::InvalidInput(format!(
                "weight {w} has length {}, expected rank {}",
                w.rank(),
                self.rank
            )));
        }
        if !w.is_dominant() {
            return Err(Error::NotDominant(w.0.clone()));
        }
        Ok(())
    }

    /// `λ* = -w₀λ`.
    pub fn dual_weight(&self, w: &Weight) -> Weight {
        let mut out = vec![0; self.rank];
        for (i, &c) in w.0.iter().enumerate() {
            out[self.w0_permutation[i]] += c;
        }
        Weight(out)
    }

    /// Weyl dimension formula.
    pub fn weyl_dim(&self, w: &Weight) -> Result<u64> {
        self.require_dominant(w)?;
        let lr = w.add(&self.rho());
        let rho = self.rho();
        let mut num = num_rational::BigRational::from_integer(1.into());
        for root in &self.positive_roots {
            let a = self.coroot_pairing(&lr, root);
            let b = self.coroot_pairing(&rho, root);
            let f = a / b;
            num *= num_rational::BigRational::new((*f.numer()).into(), (*f.denom()).into());
        }
        assert!(num.is_integer(), "Weyl dimension must be integral");
        Ok(num.to_integer().try_into().expect("dimension fits in u64"))
    }

    /// Full weight-multiplicity map of `V(λ)` by Freudenthal's recursion.
    pub fn dominant_character(&self, lambda: &Weight) -> Result<CharacterMap> {
        self.require_dominant(lambda)?;
        let n = self.rank;
        // depth vector β = λ - μ in simple-root coordinates
        let mut mult: HashMap<Weight, u64> = HashMap::new();
        let mut depth: HashMap<Weight, Vec<i64>> = HashMap::new();
        mult.insert(lambda.clone(), 1);
        depth.insert(lambda.clone(), vec![0; n]);
        let lr2 = lambda.add(&lambda.add(&self.rho()).add(&self.rho()));
        let pos_weights: Vec<Weight> = self.positive_roots.iter().map(|r| self.root_to_weight(r)).collect();
        let mut layer = vec![lambda.clone()];
        while !layer.is_empty() {
            let mut candidates: Vec<(Weight, Vec<i64>)> = Vec::new();
            let mut seen: HashSet<Weight> = HashSet::new();
            for mu in &layer {
                let d = &depth[mu];
                for i in 0..n {
                    let nu = mu.sub(&self.simple_root(i));
                    if mult.contains_key(&nu) || !seen.insert(nu.clone()) {
                        continue;
                    }
                    let mut nd = d.clone();
                    nd[i] += 1;
                    candidates.push((nu, nd));
                }
            }
            candidates.sort();
            let mut next = Vec::new();
            // dominant weights first so that non-dominant ones can look them up
            let (dom, nondom): (Vec<_>, Vec<_>) = candidates.into_iter().partition(|(w, _)| w.is_dominant());
            for (nu, nd) in dom.into_iter().chain(nondom) {
                let m = if nu.is_dominant() {
                    let mut num: i64 = 0;
                    for (root, rw) in self.positive_roots.iter().zip(&pos_weights) {
                        let mut k = 1;
                        loop {
                            let up = Weight((0..n).map(|j| nu.0[j] + k * rw.0[j]).collect());
                            let dom_up = self.dominant_conjugate(&up);
                            let Some(&m) = mult.get(&dom_up) else { break };
                            num += m as i64 * self.weight_root_form(&up, root);
                            k += 1;
                        }
                    }
                    num *= 2;
                    // |λ+ρ|² - |ν+ρ|² = (λ + ν + 2ρ, β)
                    let sum = lr2.add(&nu).sub(lambda);
                    let den: i64 = (0..n).map(|j| nd[j] * self.half_norms[j] * sum.0[j]).sum();
                    assert!(den > 0, "Freudenthal denominator must be positive");
                    assert_eq!(num % den, 0, "Freudenthal quotient must be integral");
                    (num / den) as u64
                } else {
                    let d = self.dominant_conjugate(&nu);
                    mult.get(&d).copied().unwrap_or(0)
                };
                if m > 0 {
                    mult.insert(nu.clone(), m);
                    depth.insert(nu.clone(), nd);
                    next.push(nu);
                }
            }
            layer = next;
        }
        let mut ch = CharacterMap::new(1);
        for (w, m) in mult {
            ch.add(vec![w], m);
        }
        Ok(ch)
    }

    /// Decomposes `V(λ) ⊗ V(μ)` by multiplying characters and peeling off
    /// highest weights.
    pub fn tensor_decompose(&self, lambda: &Weight, mu: &Weight) -> Result<DecompositionReport> {
        self.require_dominant(lambda)?;
        self.require_dominant(mu)?;
        let a = self.dominant_character(lambda)?;
        let b = self.dominant_character(mu)?;
        let prod = a.product(&b)?;
        self.decompose_character(&prod)
    }

    /// Multiplicity of `V(ν)` in `V(λ) ⊗ V(μ)`.
    pub fn tensor_multiplicity(&self, lambda: &Weight, mu: &Weight, nu: &Weight) -> Result<u64> {
        let rep = self.tensor_decompose(lambda, mu)?;
        Ok(rep.multiplicity(&[nu.clone()], None))
    }

    /// Splits a character into irreducible (external tensor) characters by
    /// repeated subtraction at a dominance-maximal weight.
    pub fn decompose_character(&self, ch: &CharacterMap) -> Result<DecompositionReport> {
        let arity = ch.arity;
        let mut rest: BTreeMap<Vec<Weight>, i64> =
            ch.entries.iter().map(|(k, v)| (k.clone(), *v as i64)).collect();
        let mut cache: HashMap<Weight, CharacterMap> = HashMap::new();
        let mut factors: BTreeMap<Vec<Weight>, u64> = BTreeMap::new();
        loop {
            rest.retain(|_, v| *v != 0);
            if let Some((k, v)) = rest.iter().find(|(_, v)| **v < 0) {
                return Err(Error::NotACharacter(format!(
                    "negative multiplicity {v} at {}",
                    k.iter().map(|w| w.to_string()).collect::<Vec<_>>().join("⊠")
                )));
            }
            // maximal total height, ties broken by lexicographically greatest coordinates
            let Some(top) = rest
                .keys()
                .max_by(|a, b| {
                    let ha: Rational64 = a.iter().map(|w| self.height(w)).sum();
                    let hb: Rational64 = b.iter().map(|w| self.height(w)).sum();
                    ha.cmp(&hb).then_with(|| a.cmp(b))
                })
                .cloned()
            else {
                break;
            };
            if let Some(w) = top.iter().find(|w| !w.is_dominant()) {
                return Err(Error::NotACharacter(format!("maximal weight {w} is not dominant")));
            }
            let m = rest[&top];
            let mut irr = CharacterMap::new(0);
            irr.entries.insert(vec![], 1);
            for w in &top {
                if !cache.contains_key(w) {
                    cache.insert(w.clone(), self.dominant_character(w)?);
                }
                irr = irr.external_product(&cache[w]);
            }
            debug_assert_eq!(irr.arity, arity);
            for (k, v) in &irr.entries {
                *rest.entry(k.clone()).or_insert(0) -= m * *v as i64;
            }
            *factors.entry(top).or_insert(0) += m as u64;
        }
        Ok(DecompositionReport {
            arity,
            factors: factors
                .into_iter()
                .map(|(components, mult)| Factor { components, mult, t_degree: None })
                .collect(),
        })
    }
}

/// Multiplicity map on weights or weight tuples (`arity` components).
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterMap {
    pub arity: usize,
    pub entries: BTreeMap<Vec<Weight>, u64>,
}

impl CharacterMap {
    pub fn new(arity: usize) -> Self {
        CharacterMap { arity, entries: BTreeMap::new() }
    }

    pub fn add(&mut self, key: Vec<Weight>, m: u64) {
        if m == 0 {
            return;
        }
        *self.entries.entry(key).or_insert(0) += m;
        if self.arity == 0 {
            self.arity = self.entries.keys().next().map_or(0, Vec::len);
        }
    }

    pub fn get(&self, key: &[Weight]) -> u64 {
        self.entries.get(key).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.entries.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn merge(&mut self, other: &CharacterMap) {
        for (k, v) in &other.entries {
            self.add(k.clone(), *v);
        }
    }

    /// Tensor product of two characters of the same arity.
    pub fn product(&self, other: &CharacterMap) -> Result<CharacterMap> {
        if self.arity != other.arity {
            return Err(Error::InvalidInput("character arity mismatch".into()));
        }
        let mut out = CharacterMap::new(self.arity);
        for (ka, va) in &self.entries {
            for (kb, vb) in &other.entries {
                let k: Vec<Weight> = ka.iter().zip(kb).map(|(a, b)| a.add(b)).collect();
                out.add(k, va * vb);
            }
        }
        Ok(out)
    }

    /// External tensor product: arities add, keys concatenate.
    pub fn external_product(&self, other: &CharacterMap) -> CharacterMap {
        let mut out = CharacterMap::new(self.arity + other.arity);
        for (ka, va) in &self.entries {
            for (kb, vb) in &other.entries {
                let mut k = ka.clone();
                k.extend(kb.iter().cloned());
                out.add(k, va * vb);
            }
        }
        out
    }

    /// Character of the dual module.
    pub fn dual(&self) -> CharacterMap {
        let mut out = CharacterMap::new(self.arity);
        for (k, v) in &self.entries {
            out.add(k.iter().map(Weight::neg).collect(), *v);
        }
        out
    }
}

/// One irreducible constituent: `V(λ₁) ⊠ … ⊠ V(λ_k)` with multiplicity.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Factor {
    pub components: Vec<Weight>,
    pub mult: u64,
    pub t_degree: Option<u32>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionReport {
    pub arity: usize,
    pub factors: Vec<Factor>,
}

impl DecompositionReport {
    pub fn empty(arity: usize) -> Self {
        DecompositionReport { arity, factors: Vec::new() }
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Canonical order: by t-degree, then by highest weight.
    pub fn normalize(&mut self) {
        let mut acc: BTreeMap<(Option<u32>, Vec<Weight>), u64> = BTreeMap::new();
        for f in self.factors.drain(..) {
            *acc.entry((f.t_degree, f.components)).or_insert(0) += f.mult;
        }
        self.factors = acc
            .into_iter()
            .filter(|(_, m)| *m > 0)
            .map(|((t_degree, components), mult)| Factor { components, mult, t_degree })
            .collect();
    }

    /// Multiplicity of a highest weight; `t_degree = None` sums over all degrees.
    pub fn multiplicity(&self, components: &[Weight], t_degree: Option<u32>) -> u64 {
        self.factors
            .iter()
            .filter(|f| f.components == components && (t_degree.is_none() || f.t_degree == t_degree))
            .map(|f| f.mult)
            .sum()
    }

    pub fn with_t_degree(mut self, d: Option<u32>) -> Self {
        for f in &mut self.factors {
            f.t_degree = d;
        }
        self
    }

    pub fn extend(&mut self, other: &DecompositionReport) {
        self.factors.extend(other.factors.iter().cloned());
        self.normalize();
    }

    /// Removes `mult` copies of a factor; fails if not present often enough.
    pub fn remove(&mut self, components: &[Weight], t_degree: Option<u32>, mult: u64) -> Result<()> {
        let mut left = mult;
        for f in self.factors.iter_mut() {
            if left == 0 {
                break;
            }
            if f.components == components && (t_degree.is_none() || f.t_degree == t_degree) {
                let k = f.mult.min(left);
                f.mult -= k;
                left -= k;
            }
        }
        if left > 0 {
            return Err(Error::Invariant(format!(
                "cannot remove {mult} copies of {:?}: not present",
                components.iter().map(|w| w.to_string()).collect::<Vec<_>>()
            )));
        }
        self.normalize();
        Ok(())
    }

    /// Total dimension, given the root system of each component.
    pub fn dimension(&self, rs: &RootSystem) -> Result<u64> {
        let mut total = 0;
        for f in &self.factors {
            let mut d = f.mult;
            for w in &f.components {
                d *= rs.weyl_dim(w)?;
            }
            total += d;
        }
        Ok(total)
    }

    /// Re-assembles the character (all t-degrees merged).
    pub fn character(&self, rs: &RootSystem) -> Result<CharacterMap> {
        let mut out = CharacterMap::new(self.arity);
        for f in &self.factors {
            let mut irr = CharacterMap::new(0);
            irr.entries.insert(vec![], 1);
            for w in &f.components {
                irr = irr.external_product(&rs.dominant_character(w)?);
            }
            for (k, v) in irr.entries {
                out.add(k, v * f.mult);
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(v: &[i64]) -> Weight {
        Weight(v.to_vec())
    }

    fn rs(label: &str) -> RootSystem {
        RootSystem::from_label(label).unwrap()
    }

    #[test]
    fn sl2_data() {
        let a1 = rs("A1");
        assert_eq!(a1.rank, 1);
        assert_eq!(a1.theta, w(&[2]));
        assert_eq!(a1.num_positive_roots(), 1);
    }

    /// Oracle: count roots by brute force over the root lattice using the
    /// characterization "norm equals a simple root norm and the vector lies in
    /// a Weyl orbit of a simple root".
    fn brute_force_positive_roots(r: &RootSystem) -> usize {
        let mut orbit: HashSet<Weight> = HashSet::new();
        let mut stack: Vec<Weight> = (0..r.rank).map(|i| r.simple_root(i)).collect();
        while let Some(x) = stack.pop() {
            if orbit.insert(x.clone()) {
                for i in 0..r.rank {
                    stack.push(r.reflect(&x, i));
                }
            }
        }
        orbit.len() / 2
    }

    #[test]
    fn positive_root_counts() {
        for (label, n) in [("A1", 1), ("A2", 3), ("B2", 4), ("G2", 6), ("C3", 9), ("D4", 12), ("F4", 24), ("E6", 36), ("E7", 63), ("E8", 120)] {
            let r = rs(label);
            assert_eq!(r.num_positive_roots(), n, "{label}");
            assert_eq!(brute_force_positive_roots(&r), n, "{label}");
        }
        let g2 = rs("G2");
        assert_eq!(g2.lie_dim(), 14);
        assert_eq!(g2.weyl_dim(&g2.theta).unwrap(), 14);
    }

    #[test]
    fn highest_roots_match_bourbaki() {
        assert_eq!(rs("A2").theta, w(&[1, 1]));
        assert_eq!(rs("B3").theta, w(&[0, 1, 0]));
        assert_eq!(rs("C3").theta, w(&[2, 0, 0]));
        assert_eq!(rs("D5").theta, w(&[0, 1, 0, 0, 0]));
        assert_eq!(rs("E6").theta, w(&[0, 1, 0, 0, 0, 0]));
        assert_eq!(rs("E7").theta, w(&[1, 0, 0, 0, 0, 0, 0]));
        assert_eq!(rs("E8").theta, w(&[0, 0, 0, 0, 0, 0, 0, 1]));
        assert_eq!(rs("F4").theta, w(&[1, 0, 0, 0]));
        assert_eq!(rs("G2").theta, w(&[0, 1]));
    }

    #[test]
    fn theta_is_unique_maximal() {
        for label in ["A3", "B3", "C4", "D4", "G2", "F4", "E6"] {
            let r = rs(label);
            let top = r.positive_roots.last().unwrap();
            for root in &r.positive_roots {
                assert!(root.iter().zip(top).all(|(a, b)| a <= b), "{label}");
            }
        }
    }

    #[test]
    fn cartan_matrices_are_valid() {
        for label in ["A4", "B3", "C3", "D5", "E6", "E7", "E8", "F4", "G2"] {
            let r = rs(label);
            for i in 0..r.rank {
                assert_eq!(r.cartan[i][i], 2);
                for j in 0..r.rank {
                    if i != j {
                        assert!(r.cartan[i][j] <= 0);
                        assert_eq!(r.cartan[i][j] == 0, r.cartan[j][i] == 0);
                        assert_eq!(r.root_form(i, j), r.root_form(j, i));
                    }
                }
            }
        }
    }

    #[test]
    fn w0_permutations() {
        assert_eq!(rs("A2").w0_permutation, vec![1, 0]);
        assert_eq!(rs("A1").w0_permutation, vec![0]);
        assert_eq!(rs("E6").w0_permutation, vec![5, 1, 4, 3, 2, 0]);
        assert_eq!(rs("D5").w0_permutation, vec![0, 1, 2, 4, 3]);
        assert_eq!(rs("D4").w0_permutation, vec![0, 1, 2, 3]);
        for label in ["A4", "B3", "C3", "D5", "E6", "E7", "F4", "G2"] {
            let r = rs(label);
            let p = &r.w0_permutation;
            assert!((0..r.rank).all(|i| p[p[i]] == i), "{label}");
        }
    }

    #[test]
    fn invalid_types_rejected() {
        assert!(RootSystem::new(CartanType::B, 1).is_err());
        assert!(RootSystem::new(CartanType::C, 2).is_err());
        assert!(RootSystem::new(CartanType::D, 3).is_err());
        assert!(RootSystem::new(CartanType::E, 5).is_err());
        assert!(RootSystem::new(CartanType::A, 9).is_err());
        assert!(RootSystem::new(CartanType::A, 0).is_err());
        assert!(RootSystem::from_label("X3").is_err());
    }

    #[test]
    fn weyl_dim_examples() {
        let a1 = rs("A1");
        assert_eq!(a1.weyl_dim(&w(&[4])).unwrap(), 5);
        assert_eq!(a1.weyl_dim(&w(&[0])).unwrap(), 1);
        assert_eq!(rs("A2").weyl_dim(&w(&[1, 1])).unwrap(), 8);
        assert_eq!(rs("E8").weyl_dim(&rs("E8").theta).unwrap(), 248);
        assert_eq!(rs("B2").weyl_dim(&w(&[0, 1])).unwrap(), 4);
        assert!(matches!(a1.weyl_dim(&w(&[-1])), Err(Error::NotDominant(_))));
    }

    #[test]
    fn character_examples() {
        let a1 = rs("A1");
        let ch = a1.dominant_character(&w(&[2])).unwrap();
        assert_eq!(ch.entries.len(), 3);
        for k in [2, 0, -2] {
            assert_eq!(ch.get(&[w(&[k])]), 1);
        }
        assert_eq!(a1.dominant_character(&w(&[4])).unwrap().get(&[w(&[0])]), 1);
        let a2 = rs("A2");
        assert_eq!(a2.dominant_character(&w(&[1, 1])).unwrap().get(&[w(&[0, 0])]), 2);
        assert!(a1.dominant_character(&w(&[-2])).is_err());
    }

    #[test]
    fn character_mass_equals_weyl_dim() {
        for (label, lam) in [("A2", vec![2, 1]), ("B2", vec![1, 1]), ("G2", vec![1, 0]), ("G2", vec![0, 1]), ("C3", vec![1, 0, 1]), ("D4", vec![0, 1, 0, 0]), ("F4", vec![0, 0, 0, 1])] {
            let r = rs(label);
            let l = Weight(lam);
            assert_eq!(r.dominant_character(&l).unwrap().total(), r.weyl_dim(&l).unwrap(), "{label} {l}");
        }
    }

    #[test]
    fn tensor_examples() {
        let a1 = rs("A1");
        let r = a1.tensor_decompose(&w(&[1]), &w(&[1])).unwrap();
        assert_eq!(r.factors.len(), 2);
        assert_eq!(r.multiplicity(&[w(&[2])], None), 1);
        assert_eq!(r.multiplicity(&[w(&[0])], None), 1);
        let r = a1.tensor_decompose(&w(&[2]), &w(&[2])).unwrap();
        assert_eq!(
            r.factors.iter().map(|f| (f.components[0].0[0], f.mult)).collect::<Vec<_>>(),
            vec![(0, 1), (2, 1), (4, 1)]
        );
        let a2 = rs("A2");
        let r = a2.tensor_decompose(&w(&[1, 0]), &w(&[0, 1])).unwrap();
        assert_eq!(r.factors.len(), 2);
        assert_eq!(r.multiplicity(&[w(&[1, 1])], None), 1);
        assert_eq!(r.multiplicity(&[w(&[0, 0])], None), 1);
    }

    /// Clebsch–Gordan oracle for sl₂.
    #[test]
    fn sl2_clebsch_gordan() {
        let a1 = rs("A1");
        for m in 0..6i64 {
            for n in 0..6i64 {
                let r = a1.tensor_decompose(&w(&[m]), &w(&[n])).unwrap();
                let expected: Vec<i64> = ((m - n).abs()..=m + n).step_by(2).collect();
                let got: Vec<i64> = r.factors.iter().map(|f| f.components[0].0[0]).collect();
                assert_eq!(got, expected);
                assert!(r.factors.iter().all(|f| f.mult == 1));
            }
        }
    }

    #[test]
    fn decompose_character_examples() {
        let a1 = rs("A1");
        let mut ch = a1.dominant_character(&w(&[2])).unwrap();
        ch.merge(&a1.dominant_character(&w(&[0])).unwrap());
        let r = a1.decompose_character(&ch).unwrap();
        assert_eq!(r.factors.len(), 2);
        let c2 = a1.dominant_character(&w(&[2])).unwrap();
        let r = a1.decompose_character(&c2.product(&c2).unwrap()).unwrap();
        assert_eq!(r, a1.tensor_decompose(&w(&[2]), &w(&[2])).unwrap());
        let ext = c2.external_product(&c2);
        let r = a1.decompose_character(&ext).unwrap();
        assert_eq!(r.factors, vec![Factor { components: vec![w(&[2]), w(&[2])], mult: 1, t_degree: None }]);
    }

    #[test]
    fn decompose_rejects_non_characters() {
        let a1 = rs("A1");
        let mut ch = CharacterMap::new(1);
        ch.add(vec![w(&[2])], 1);
        ch.add(vec![w(&[0])], 1);
        assert!(matches!(a1.decompose_character(&ch), Err(Error::NotACharacter(_))));
    }

    #[test]
    fn dominance_order() {
        let a2 = rs("A2");
        assert!(a2.dominance_le(&w(&[0, 0]), &w(&[1, 1])));
        assert!(!a2.dominance_le(&w(&[0, 0]), &w(&[1, 0])));
        assert!(a2.dominance_le(&w(&[0, 1]), &w(&[2, 0])));
        assert!(!a2.dominance_le(&w(&[2, 0]), &w(&[0, 1])));
        assert!(rs("A1").dominance_le(&w(&[2]), &w(&[4])));
        assert!(!rs("A1").dominance_le(&w(&[1]), &w(&[4])));
    }

    #[test]
    fn dual_weight_examples() {
        assert_eq!(rs("A1").dual_weight(&w(&[3])), w(&[3]));
        assert_eq!(rs("A2").dual_weight(&w(&[1, 0])), w(&[0, 1]));
        assert_eq!(rs("A2").dual_weight(&w(&[2, 2])), w(&[2, 2]));
    }

    /// −w₀ computed independently: lowest weight of V(λ) negated.
    #[test]
    fn dual_weight_matches_lowest_weight() {
        for (label, lam) in [("A3", vec![1, 0, 2]), ("E6", vec![1, 0, 0, 0, 0, 0]), ("D5", vec![0, 0, 0, 1, 0]), ("B2", vec![1, 1])] {
            let r = rs(label);
            let l = Weight(lam);
            let ch = r.dominant_character(&l).unwrap();
            let lowest = ch
                .entries
                .keys()
                .min_by(|a, b| r.height(&a[0]).cmp(&r.height(&b[0])))
                .unwrap()[0]
                .clone();
            assert_eq!(r.dual_weight(&l), lowest.neg(), "{label}");
        }
    }

    fn small_weight(rank: usize) -> impl Strategy<Value = Weight> {
        prop::collection::vec(0i64..=2, rank).prop_map(Weight)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn tensor_respects_dimension_and_commutes(l in small_weight(2), m in small_weight(2), t in 0usize..3) {
            let r = rs(["A2", "B2", "G2"][t]);
            let a = r.tensor_decompose(&l, &m).unwrap();
            let b = r.tensor_decompose(&m, &l).unwrap();
            prop_assert_eq!(&a, &b);
            prop_assert_eq!(a.dimension(&r).unwrap(), r.weyl_dim(&l).unwrap() * r.weyl_dim(&m).unwrap());
        }

        #[test]
        fn character_roundtrip(l in small_weight(2), t in 0usize..3) {
            let r = rs(["A2", "B2", "G2"][t]);
            let rep = r.decompose_character(&r.dominant_character(&l).unwrap()).unwrap();
            prop_assert_eq!(rep.factors, vec![Factor { components: vec![l.clone()], mult: 1, t_degree: None }]);
        }

        #[test]
        fn dual_is_involutive(l in small_weight(3), t in 0usize..3) {
            let r = rs(["A3", "B3", "C3"][t]);
            let d = r.dual_weight(&l);
            prop_assert_eq!(r.dual_weight(&d), l.clone());
            prop_assert_eq!(r.weyl_dim(&d).unwrap(), r.weyl_dim(&l).unwrap());
        }

        #[test]
        fn characters_are_weyl_invariant(l in small_weight(2), t in 0usize..3) {
            let r = rs(["A2", "B2", "G2"][t]);
            let ch = r.dominant_character(&l).unwrap();
            for key in ch.entries.keys() {
                for i in 0..r.rank {
                    let s = r.reflect(&key[0], i);
                    prop_assert_eq!(ch.get(&[s]), ch.get(key));
                }
            }
        }
    }
}

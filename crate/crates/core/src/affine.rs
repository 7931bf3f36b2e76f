//! Untwisted affine root data, the minimal coset representatives `W_a^1`,
//! and the Garland–Lepowsky description of `H^j(g ⊗ tC[t], C)`.

use std::collections::{BTreeSet, HashSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rootdata::{DecompositionReport, Factor, RootSystem, Weight};

pub const MAX_LENGTH: usize = 6;

#[derive(Clone, Debug)]
pub struct AffineRootData {
    pub base: RootSystem,
    /// `affine_cartan[i][j] = α_j(α_i^∨)`, node 0 first.
    pub affine_cartan: Vec<Vec<i64>>,
    /// `α_j(α₀^∨) = −α_j(h_θ)` for `j = 1..=n` (index `j − 1`).
    pub alpha0_pairings: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AffineCosetElement {
    pub length: usize,
    /// Reduced word `s_{i_1} ⋯ s_{i_ℓ}`; the dot action applies `s_{i_ℓ}` first.
    pub word: Vec<usize>,
    /// Coefficients of `w·0` on `α₀, …, α_n`.
    pub dot_value: Vec<i64>,
    pub lambda_w: Weight,
    pub d_w: i64,
}

/// Affine Cartan matrix with `α₀ = −θ + δ` and `h₀ = −h_θ + c`.
pub fn affinize(rs: &RootSystem) -> AffineRootData {
    let n = rs.rank;
    let theta_root = rs.positive_roots.last().expect("nonempty").clone();
    let alpha0_pairings: Vec<i64> = (0..n)
        .map(|j| {
            let p = rs.coroot_pairing(&rs.simple_root(j), &theta_root);
            assert!(p.is_integer());
            -p.to_integer()
        })
        .collect();
    let mut a = vec![vec![0i64; n + 1]; n + 1];
    a[0][0] = 2;
    for j in 0..n {
        a[0][j + 1] = alpha0_pairings[j];
        a[j + 1][0] = -rs.theta.0[j];
        for i in 0..n {
            a[i + 1][j + 1] = rs.cartan[i][j];
        }
    }
    AffineRootData { base: rs.clone(), affine_cartan: a, alpha0_pairings }
}

impl AffineRootData {
    pub fn rank(&self) -> usize {
        self.base.rank
    }

    /// `μ(α_i^∨)` for `μ = Σ c_j α_j`.
    fn pairing(&self, c: &[i64], i: usize) -> i64 {
        c.iter().zip(&self.affine_cartan[i]).map(|(x, a)| x * a).sum()
    }

    /// `s_i · μ = μ − (μ(α_i^∨) + 1) α_i` on affine root coordinates.
    pub fn dot(&self, c: &[i64], i: usize) -> Vec<i64> {
        let mut out = c.to_vec();
        out[i] -= self.pairing(c, i) + 1;
        out
    }

    /// `(λ_w, d_w)` from `w·0 = λ_w − d_w δ`.
    pub fn split(&self, c: &[i64]) -> (Weight, i64) {
        let n = self.rank();
        let lambda = Weight((1..=n).map(|i| self.pairing(c, i)).collect());
        (lambda, -c[0])
    }

    /// Determinant-free corank check: the null vector `δ = α₀ + θ` pairs to
    /// zero with every coroot.
    pub fn check(&self) -> Result<()> {
        let theta_root = self.base.positive_roots.last().expect("nonempty");
        let mut delta = vec![1i64];
        delta.extend(theta_root.iter().copied());
        for i in 0..=self.rank() {
            if self.pairing(&delta, i) != 0 {
                return Err(Error::Invariant(format!("δ does not pair to zero with α_{i}^∨")));
            }
        }
        Ok(())
    }
}

/// Indices `j ∈ [1, n]` with `α_j(α₀^∨) ≠ 0`.
pub fn table1(ard: &AffineRootData) -> BTreeSet<usize> {
    ard.alpha0_pairings.iter().enumerate().filter(|(_, &p)| p != 0).map(|(j, _)| j + 1).collect()
}

/// Breadth-first enumeration of `W_a^1` up to `max_length`, keyed by `w·0`.
///
/// The set is closed under deleting the rightmost letter of a reduced word,
/// so it is grown by right multiplication: `(w s_i)·0 = w·0 − w(α_i)`.
pub fn enumerate_wa1(ard: &AffineRootData, max_length: usize) -> Result<Vec<AffineCosetElement>> {
    if max_length > MAX_LENGTH {
        return Err(Error::InvalidInput(format!("max_length {max_length} exceeds the cap of {MAX_LENGTH}")));
    }
    let n = ard.rank();
    let origin = vec![0i64; n + 1];
    let (lambda_w, d_w) = ard.split(&origin);
    let mut seen: HashSet<Vec<i64>> = HashSet::from([origin.clone()]);
    let mut out = vec![AffineCosetElement { length: 0, word: Vec::new(), dot_value: origin, lambda_w, d_w }];
    // columns: w(α_j) in affine root coordinates
    let identity: Vec<Vec<i64>> = (0..=n).map(|j| (0..=n).map(|k| (j == k) as i64).collect()).collect();
    let mut frontier = vec![(0usize, identity)];
    for length in 1..=max_length {
        let mut next = Vec::new();
        for (e, mat) in &frontier {
            for i in 0..=n {
                let c: Vec<i64> = out[*e].dot_value.iter().zip(&mat[i]).map(|(a, b)| a - b).collect();
                if !seen.insert(c.clone()) {
                    continue;
                }
                let (lambda_w, d_w) = ard.split(&c);
                if !lambda_w.is_dominant() {
                    continue;
                }
                // w s_i (α_j) = w(α_j) − α_j(α_i^∨) w(α_i)
                let new_mat: Vec<Vec<i64>> = (0..=n)
                    .map(|j| {
                        let a = ard.affine_cartan[i][j];
                        mat[j].iter().zip(&mat[i]).map(|(x, y)| x - a * y).collect()
                    })
                    .collect();
                let mut word = out[*e].word.clone();
                word.push(i);
                next.push((out.len(), new_mat));
                out.push(AffineCosetElement { length, word, dot_value: c, lambda_w, d_w });
            }
        }
        frontier = next;
    }
    Ok(out)
}

/// `H^j(g ⊗ tC[t], C) ≅ ⊕_{ℓ(w) = j} V(λ_w)*`, each summand in t-degree `d_w`.
pub fn gl_predict(ard: &AffineRootData, j: usize) -> Result<DecompositionReport> {
    let elems = enumerate_wa1(ard, j)?;
    let mut rep = DecompositionReport::empty(1);
    for e in elems.into_iter().filter(|e| e.length == j) {
        let d = u32::try_from(e.d_w).map_err(|_| Error::Invariant(format!("negative d_w {}", e.d_w)))?;
        rep.factors.push(Factor { components: vec![ard.base.dual_weight(&e.lambda_w)], mult: 1, t_degree: Some(d) });
    }
    rep.normalize();
    Ok(rep)
}

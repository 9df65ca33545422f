//! Finite-level Grothendieck groups of `S_n` over `F_p`.
//!
//! Classes carry a basis tag so Specht-class and simple-class vectors are
//! never mixed up. Conversions go through a [`DecompositionMatrix`].

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modular::DecompositionMatrix;
use crate::partition::Partition;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    /// Classes `[S^λ]`, `λ ⊢ n` arbitrary (a spanning set, not a basis, when `p ≤ n`).
    Specht,
    /// Classes `[D^μ]`, `μ ⊢ n` `p`-regular.
    Simple,
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Basis::Specht => "specht",
            Basis::Simple => "simple",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteClass {
    n: usize,
    p: u32,
    basis: Basis,
    coeffs: BTreeMap<Partition, i64>,
}

impl FiniteClass {
    pub fn new(n: usize, p: u32, basis: Basis, coeffs: BTreeMap<Partition, i64>) -> Result<Self> {
        for lambda in coeffs.keys() {
            if lambda.size() != n {
                return Err(Error::SizeMismatch { left: lambda.size(), right: n });
            }
            if basis == Basis::Simple && !lambda.is_p_regular(p) {
                return Err(Error::PSingular { lambda: lambda.clone(), p });
            }
        }
        let coeffs = coeffs.into_iter().filter(|(_, c)| *c != 0).collect();
        Ok(Self { n, p, basis, coeffs })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn coeffs(&self) -> &BTreeMap<Partition, i64> {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// JSON form: the expression layout plus `n` and `basis`.
    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<_> = self
            .coeffs
            .iter()
            .map(|(l, c)| serde_json::json!({"lambda": l, "coeff": c}))
            .collect();
        serde_json::json!({"terms": terms, "n": self.n, "p": self.p, "basis": self.basis})
    }
}

fn check_matrix(d: &DecompositionMatrix, n: usize, p: u32) -> Result<()> {
    if d.n() != n || d.p() != p {
        return Err(Error::DecompositionUnavailable {
            n,
            p,
            reason: format!("supplied matrix is for n={}, p={}", d.n(), d.p()),
        });
    }
    Ok(())
}

/// Rewrites a Specht-basis class in the basis of simple classes.
pub fn to_simples(c: &FiniteClass, d: &DecompositionMatrix) -> Result<FiniteClass> {
    if c.basis != Basis::Specht {
        return Err(Error::BasisMismatch { expected: Basis::Specht.to_string(), got: c.basis.to_string() });
    }
    check_matrix(d, c.n, c.p)?;
    let mut out: BTreeMap<Partition, i64> = BTreeMap::new();
    for (lambda, &k) in &c.coeffs {
        for (mu, mult) in d.row(lambda) {
            *out.entry(mu).or_insert(0) += k * mult as i64;
        }
    }
    FiniteClass::new(c.n, c.p, Basis::Simple, out)
}

/// Rows of the inverse of the `p`-regular square part of `d`, keyed by `μ`.
pub fn regular_inverse(d: &DecompositionMatrix) -> BTreeMap<Partition, BTreeMap<Partition, i64>> {
    // [D^μ] = [S^μ] - Σ_{ν ▷ μ} d_{μν} [D^ν]; more dominant columns come first
    let mut inv: BTreeMap<Partition, BTreeMap<Partition, i64>> = BTreeMap::new();
    for mu in d.cols() {
        let mut row: BTreeMap<Partition, i64> = BTreeMap::new();
        row.insert(mu.clone(), 1);
        for (nu, k) in d.row(mu) {
            if &nu == mu {
                continue;
            }
            for (lambda, e) in &inv[&nu] {
                *row.entry(lambda.clone()).or_insert(0) -= k as i64 * e;
            }
        }
        row.retain(|_, v| *v != 0);
        inv.insert(mu.clone(), row);
    }
    inv
}

/// `[D^μ] = Σ_ν e_{μν} [S^ν]` over `p`-regular `ν ⊵ μ`.
pub fn simple_in_regular_spechts(mu: &Partition, n: usize, p: u32, d: &DecompositionMatrix) -> Result<BTreeMap<Partition, i64>> {
    check_matrix(d, n, p)?;
    if mu.size() != n {
        return Err(Error::SizeMismatch { left: mu.size(), right: n });
    }
    if !mu.is_p_regular(p) {
        return Err(Error::PSingular { lambda: mu.clone(), p });
    }
    Ok(regular_inverse(d).remove(mu).unwrap_or_default())
}

/// Expansion of a `p`-singular `[S^{λ0}]` in `p`-regular Specht classes.
pub fn singular_specht_expansion(lambda0: &Partition, m: usize, p: u32, d: &DecompositionMatrix) -> Result<BTreeMap<Partition, i64>> {
    check_matrix(d, m, p)?;
    if lambda0.size() != m {
        return Err(Error::SizeMismatch { left: lambda0.size(), right: m });
    }
    if lambda0.is_p_regular(p) {
        return Err(Error::PRegular { lambda: lambda0.clone(), p });
    }
    let inv = regular_inverse(d);
    let mut out: BTreeMap<Partition, i64> = BTreeMap::new();
    for (mu, k) in d.row(lambda0) {
        for (nu, e) in &inv[&mu] {
            *out.entry(nu.clone()).or_insert(0) += k as i64 * e;
        }
    }
    out.retain(|_, v| *v != 0);
    for nu in out.keys() {
        if nu == lambda0 || !nu.dominates(lambda0)? {
            return Err(Error::InvalidRep(format!(
                "expansion of {lambda0} contains {nu}, which does not strictly dominate it"
            )));
        }
    }
    Ok(out)
}

/// Whether a relation among Specht classes holds in the Grothendieck group.
pub fn verify_zero_finite(relation: &BTreeMap<Partition, i64>, n: usize, p: u32, d: &DecompositionMatrix) -> Result<bool> {
    let c = FiniteClass::new(n, p, Basis::Specht, relation.clone())?;
    Ok(to_simples(&c, d)?.is_zero())
}

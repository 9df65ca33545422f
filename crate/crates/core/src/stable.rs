//! Stable virtual Specht expressions `Σ c_λ [S^{λ[n]}]`.
//!
//! A [`VirtualSpechtExpr`] stores the stable symbols `λ` (not the padded
//! partitions), their integer coefficients and an explicit threshold `N`: the
//! expression is claimed for every `n ≥ N`. The threshold is never below
//! `|λ| + λ_1` for a stored symbol, so every term is realizable at every
//! claimed level.
//!
//! Stable induction `[W] ↦ [M(W)_n]` uses the Pieri rule: the Specht
//! filtration of `Ind(S^λ ⊠ S^{(n-m)})` has one factor `S^ν` for each `ν`
//! with `ν/λ` a horizontal strip, and stripping the first row of `ν` turns
//! these into the horizontal-strip removals of `λ`. That bijection holds as
//! soon as `n ≥ m + λ_1`.

use std::collections::BTreeMap;
use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{check_characteristic, check_prime, Error, Result};
use crate::grothendieck::{singular_specht_expansion, verify_zero_finite};
use crate::modular::DecompositionStore;
use crate::partition::Partition;

#[derive(Clone, PartialEq, Eq)]
pub struct VirtualSpechtExpr {
    coeffs: BTreeMap<Partition, i64>,
    threshold: usize,
    p: u32,
}

#[derive(Serialize, Deserialize)]
struct ExprJson {
    terms: Vec<TermJson>,
    threshold: usize,
    p: u32,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    lambda: Partition,
    coeff: i64,
}

impl VirtualSpechtExpr {
    /// Drops zero coefficients and checks the threshold covers every symbol.
    pub fn new(coeffs: BTreeMap<Partition, i64>, threshold: usize, p: u32) -> Result<Self> {
        check_characteristic(p)?;
        let coeffs: BTreeMap<_, _> = coeffs.into_iter().filter(|(_, c)| *c != 0).collect();
        if let Some(lambda) = coeffs.keys().find(|l| l.min_level() > threshold) {
            return Err(Error::LevelTooSmall { lambda: lambda.clone(), level: threshold, required: lambda.min_level() });
        }
        Ok(Self { coeffs, threshold, p })
    }

    /// Uses the smallest admissible threshold.
    pub fn from_terms(coeffs: BTreeMap<Partition, i64>, p: u32) -> Result<Self> {
        let threshold = coeffs.iter().filter(|(_, c)| **c != 0).map(|(l, _)| l.min_level()).max().unwrap_or(0);
        Self::new(coeffs, threshold, p)
    }

    pub fn zero(p: u32) -> Result<Self> {
        Self::new(BTreeMap::new(), 0, p)
    }

    pub fn coeffs(&self) -> &BTreeMap<Partition, i64> {
        &self.coeffs
    }

    pub fn coefficient(&self, lambda: &Partition) -> i64 {
        self.coeffs.get(lambda).copied().unwrap_or(0)
    }

    pub fn threshold(&self) -> usize {
        self.threshold
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Largest `|λ|` among stored symbols.
    pub fn max_symbol_size(&self) -> usize {
        self.coeffs.keys().map(|l| l.size()).max().unwrap_or(0)
    }

    /// Every stored symbol is `p`-regular (always true in characteristic 0).
    pub fn is_p_regular(&self) -> bool {
        self.coeffs.keys().all(|l| l.is_p_regular(self.p))
    }

    /// Same terms, threshold raised to at least `n`.
    pub fn with_threshold_at_least(&self, n: usize) -> Self {
        Self { coeffs: self.coeffs.clone(), threshold: self.threshold.max(n), p: self.p }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.p != other.p {
            return Err(Error::CharacteristicMismatch(self.p, other.p));
        }
        let mut coeffs = self.coeffs.clone();
        for (l, c) in &other.coeffs {
            *coeffs.entry(l.clone()).or_insert(0) += c;
        }
        Self::new(coeffs, self.threshold.max(other.threshold), self.p)
    }

    pub fn scale(&self, k: i64) -> Self {
        let coeffs = if k == 0 {
            BTreeMap::new()
        } else {
            self.coeffs.iter().map(|(l, c)| (l.clone(), c * k)).collect()
        };
        Self { coeffs, threshold: self.threshold, p: self.p }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(-1))
    }

    /// The finite Specht-class vector `λ[n] ↦ c_λ`.
    pub fn specialize(&self, n: usize) -> Result<BTreeMap<Partition, i64>> {
        if n < self.threshold {
            return Err(Error::BelowThreshold { n, threshold: self.threshold });
        }
        self.coeffs.iter().map(|(l, &c)| Ok((l.pad(n)?, c))).collect()
    }

    /// Text form `[4,1]:1,[5]:-1` in canonical symbol order.
    pub fn to_text(&self) -> String {
        self.coeffs.iter().map(|(l, c)| format!("{}:{}", l.machine(), c)).collect::<Vec<_>>().join(",")
    }

    /// Parses the text form; the threshold defaults to the smallest admissible one.
    pub fn parse_text(s: &str, p: u32, threshold: Option<usize>) -> Result<Self> {
        let mut coeffs: BTreeMap<Partition, i64> = BTreeMap::new();
        let mut rest = s.trim();
        while !rest.is_empty() {
            let open = rest.strip_prefix('[').ok_or_else(|| Error::Parse(format!("expected '[' at {rest:?}")))?;
            let close = open.find(']').ok_or_else(|| Error::Parse(format!("unterminated partition in {s:?}")))?;
            let lambda: Partition = open[..close].parse()?;
            let after = open[close + 1..].trim_start();
            let after = after.strip_prefix(':').ok_or_else(|| Error::Parse(format!("expected ':' after {}", lambda.machine())))?;
            let (num, tail, comma) = match after.find(',') {
                Some(i) => (&after[..i], &after[i + 1..], true),
                None => (after, "", false),
            };
            let c: i64 = num.trim().parse().map_err(|_| Error::Parse(format!("bad coefficient {num:?}")))?;
            *coeffs.entry(lambda).or_insert(0) += c;
            rest = tail.trim();
            if rest.is_empty() && comma {
                return Err(Error::Parse(format!("trailing comma in {s:?}")));
            }
        }
        match threshold {
            Some(t) => Self::new(coeffs, t, p),
            None => Self::from_terms(coeffs, p),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let json = ExprJson {
            terms: self.coeffs.iter().map(|(l, &c)| TermJson { lambda: l.clone(), coeff: c }).collect(),
            threshold: self.threshold,
            p: self.p,
        };
        serde_json::to_value(json).expect("expression serializes")
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let json: ExprJson = serde_json::from_str(s)?;
        let mut coeffs = BTreeMap::new();
        for t in json.terms {
            *coeffs.entry(t.lambda).or_insert(0) += t.coeff;
        }
        Self::new(coeffs, json.threshold, json.p)
    }
}

impl fmt::Debug for VirtualSpechtExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}} (n ≥ {}, p = {})", self.to_text(), self.threshold, self.p)
    }
}

impl fmt::Display for VirtualSpechtExpr {
    /// Human form: `[S^(n-5,4,1)] - [S^(n-5,5)] + …`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        for (i, (l, &c)) in self.coeffs.iter().enumerate() {
            let sign = if c < 0 { "-" } else { "+" };
            if i == 0 {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if c.abs() != 1 {
                write!(f, "{}", c.abs())?;
            }
            write!(f, "[S^{}]", padded_symbol(l))?;
        }
        Ok(())
    }
}

/// `(n-5,4,1)` for the symbol `(4,1)`, `(n)` for the empty symbol.
pub fn padded_symbol(lambda: &Partition) -> String {
    let head = match lambda.size() {
        0 => "n".to_string(),
        s => format!("n-{s}"),
    };
    let mut parts = vec![head];
    parts.extend(lambda.parts().iter().map(|x| x.to_string()));
    format!("({})", parts.join(","))
}

/// Stable Pieri expansion of `[M(Σ c_λ S^λ)_n]` for a class at level `m`.
///
/// The threshold is `max(m, max_λ (m + λ_1))`, the exact level from which the
/// strip-removal bijection holds for every input term.
pub fn stable_induce(finite_class: &BTreeMap<Partition, i64>, m: usize, p: u32) -> Result<VirtualSpechtExpr> {
    check_characteristic(p)?;
    let mut coeffs: BTreeMap<Partition, i64> = BTreeMap::new();
    let mut threshold = m;
    for (lambda, &c) in finite_class {
        if lambda.size() != m {
            return Err(Error::SizeMismatch { left: lambda.size(), right: m });
        }
        if c == 0 {
            continue;
        }
        threshold = threshold.max(m + lambda.first());
        for mu in lambda.horizontal_strip_removals() {
            *coeffs.entry(mu).or_insert(0) += c;
        }
    }
    VirtualSpechtExpr::new(coeffs, threshold, p)
}

/// A stable relation obtained by inducing a finite relation among Specht classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroCertificate {
    pub origin_level: usize,
    pub finite_relation: BTreeMap<Partition, i64>,
    pub stable_form: VirtualSpechtExpr,
}

impl ZeroCertificate {
    pub fn to_json(&self) -> serde_json::Value {
        let relation: Vec<_> = self
            .finite_relation
            .iter()
            .map(|(l, c)| serde_json::json!({"lambda": l, "coeff": c}))
            .collect();
        serde_json::json!({
            "origin_level": self.origin_level,
            "finite_relation": relation,
            "stable_form": self.stable_form.to_json(),
        })
    }
}

/// Checks the relation at level `m` and induces it.
pub fn induced_zero(
    finite_relation: &BTreeMap<Partition, i64>,
    m: usize,
    p: u32,
    store: &DecompositionStore,
) -> Result<ZeroCertificate> {
    check_prime(p)?;
    let relation: BTreeMap<Partition, i64> = finite_relation.iter().filter(|(_, c)| **c != 0).map(|(l, c)| (l.clone(), *c)).collect();
    if !relation.is_empty() {
        let d = store.get(m, p)?;
        if !verify_zero_finite(&relation, m, p, &d)? {
            return Err(Error::NotARelation { m, p });
        }
    }
    let stable_form = stable_induce(&relation, m, p)?;
    Ok(ZeroCertificate { origin_level: m, finite_relation: relation, stable_form })
}

/// How to choose among several dominance-minimal `p`-singular symbols.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TieBreak {
    /// The least in canonical partition order.
    Canonical,
    /// Uniformly at random from a seeded generator.
    Seeded(u64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EliminationStep {
    /// The eliminated symbol `λ0`.
    pub symbol: Partition,
    /// Its coefficient at the time of elimination.
    pub multiplier: i64,
    pub certificate: ZeroCertificate,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Regularization {
    pub expr: VirtualSpechtExpr,
    /// Applied in order: `input - Σ multiplier·stable_form = expr`.
    pub steps: Vec<EliminationStep>,
}

pub fn regularize(expr: &VirtualSpechtExpr, store: &DecompositionStore) -> Result<Regularization> {
    regularize_with(expr, store, TieBreak::Canonical)
}

/// Rewrites an expression on `p`-regular symbols only.
///
/// Repeatedly takes a `p`-singular symbol `λ0` that is minimal in stable
/// dominance, expands `[S^{λ0}]` in `p`-regular Specht classes of `S_{|λ0|}`,
/// induces the resulting relation and subtracts the right multiple. Every
/// symbol introduced this way strictly dominates `λ0[n]` and has size at most
/// `|λ0|`, so the loop terminates.
pub fn regularize_with(expr: &VirtualSpechtExpr, store: &DecompositionStore, tie: TieBreak) -> Result<Regularization> {
    if expr.p == 0 {
        return Ok(Regularization { expr: expr.clone(), steps: Vec::new() });
    }
    let p = expr.p;
    let size_cap = expr.max_symbol_size();
    let mut rng = match tie {
        TieBreak::Seeded(s) => Some(ChaCha8Rng::seed_from_u64(s)),
        TieBreak::Canonical => None,
    };
    let mut current = expr.clone();
    let mut steps = Vec::new();
    loop {
        let singular: Vec<&Partition> = current.coeffs.keys().filter(|l| !l.is_p_regular(p)).collect();
        if singular.is_empty() {
            break;
        }
        let minimal: Vec<&Partition> = singular
            .iter()
            .filter(|l| !singular.iter().any(|m| m != *l && l.stable_dominates(m)))
            .copied()
            .collect();
        let lambda0 = match rng.as_mut() {
            None => minimal[0].clone(),
            Some(r) => (*minimal.choose(r).expect("a finite poset has minimal elements")).clone(),
        };
        let m = lambda0.size();
        if m > size_cap {
            return Err(Error::InternalLimit(format!(
                "elimination produced symbol {lambda0} larger than the input bound {size_cap}"
            )));
        }
        let multiplier = current.coefficient(&lambda0);
        let d = store.get(m, p)?;
        let mut relation = singular_specht_expansion(&lambda0, m, p, &d)?;
        relation.values_mut().for_each(|v| *v = -*v);
        relation.insert(lambda0.clone(), 1);
        let certificate = induced_zero(&relation, m, p, store)?;
        current = current.sub(&certificate.stable_form.scale(multiplier))?;
        debug_assert_eq!(current.coefficient(&lambda0), 0);
        steps.push(EliminationStep { symbol: lambda0, multiplier, certificate });
        if steps.len() > 100_000 {
            return Err(Error::InternalLimit("regularization did not terminate".into()));
        }
    }
    Ok(Regularization { expr: current, steps })
}

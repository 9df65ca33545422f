//! Ordinary and Brauer characters of symmetric groups.
//!
//! Characters are integer valued on cycle types. A Brauer character is the
//! ordinary character of an integral lift restricted to `p`-regular cycle
//! types (no cycle length divisible by `p`), so no roots of unity appear.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grothendieck::{regular_inverse, Basis, FiniteClass};
use crate::modular::DecompositionMatrix;
use crate::partition::{binomial, factorial, partitions_of, Partition};
use crate::stable::VirtualSpechtExpr;

/// Cycle type of a permutation in `S_n`, stored as a partition of `n`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CycleType(Partition);

impl CycleType {
    pub fn new(cycle_lengths: Partition) -> Self {
        Self(cycle_lengths)
    }

    pub fn identity(n: usize) -> Self {
        Self(Partition::column(n))
    }

    /// `fixed_cycles` extended by `1`-cycles up to size `n`.
    pub fn padded(fixed_cycles: &Partition, n: usize) -> Result<Self> {
        if fixed_cycles.size() > n {
            return Err(Error::SizeMismatch { left: fixed_cycles.size(), right: n });
        }
        let mut parts = fixed_cycles.parts().to_vec();
        parts.extend(std::iter::repeat_n(1, n - fixed_cycles.size()));
        Ok(Self(Partition::from_unsorted(parts)))
    }

    /// All cycle types of `S_n`, in canonical partition order.
    pub fn all(n: usize) -> Vec<CycleType> {
        partitions_of(n).into_iter().map(CycleType).collect()
    }

    /// All cycle types of `S_n` with no cycle length divisible by `p`.
    pub fn all_p_regular(n: usize, p: u32) -> Vec<CycleType> {
        Self::all(n).into_iter().filter(|c| c.is_p_regular(p)).collect()
    }

    pub fn lengths(&self) -> &Partition {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.size()
    }

    /// No cycle length divisible by `p`; every class is regular when `p = 0`.
    pub fn is_p_regular(&self, p: u32) -> bool {
        p == 0 || self.0.parts().iter().all(|&l| l % p as usize != 0)
    }

    pub fn fixed_points(&self) -> usize {
        self.0.parts().iter().filter(|&&l| l == 1).count()
    }

    /// Centralizer order `z_ρ = Π i^{m_i} m_i!`.
    pub fn centralizer_order(&self) -> u128 {
        self.0
            .multiplicities()
            .iter()
            .enumerate()
            .map(|(i, &m)| (i as u128).pow(m as u32) * factorial(m))
            .product()
    }

    pub fn class_size(&self) -> u128 {
        factorial(self.size()) / self.centralizer_order()
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl fmt::Debug for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl FromStr for CycleType {
    type Err = Error;

    /// Cycle lengths in any order, e.g. `3,1,1` or `[1,3,1]`.
    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim().trim_start_matches(['[', '(']).trim_end_matches([']', ')']);
        let parts = trimmed
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<usize>().map_err(|_| Error::Parse(format!("bad cycle length {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        if parts.contains(&0) {
            return Err(Error::Parse("cycle lengths must be positive".into()));
        }
        Ok(Self(Partition::from_unsorted(parts)))
    }
}

impl From<Partition> for CycleType {
    fn from(p: Partition) -> Self {
        Self(p)
    }
}

/// A virtual character of `S_n` tabulated on a set of cycle types.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VirtualCharacter {
    pub level: usize,
    pub values: BTreeMap<CycleType, i64>,
}

impl VirtualCharacter {
    /// `Σ c_λ χ^λ` on every cycle type of `n`.
    pub fn of_specht_class(n: usize, coeffs: &BTreeMap<Partition, i64>) -> Result<Self> {
        let values = CycleType::all(n)
            .into_iter()
            .map(|rho| {
                let v = coeffs.iter().try_fold(0i64, |acc, (l, c)| Ok::<_, Error>(acc + c * mn_character(l, &rho)?))?;
                Ok((rho, v))
            })
            .collect::<Result<_>>()?;
        Ok(Self { level: n, values })
    }

    /// Values of a stable expression at level `n`.
    pub fn of_expr(expr: &VirtualSpechtExpr, n: usize) -> Result<Self> {
        Self::of_specht_class(n, &expr.specialize(n)?)
    }

    /// Brauer view: the values on `p`-regular cycle types only.
    pub fn restrict_p_regular(&self, p: u32) -> Self {
        let values = self.values.iter().filter(|(c, _)| c.is_p_regular(p)).map(|(c, v)| (c.clone(), *v)).collect();
        Self { level: self.level, values }
    }

    pub fn at(&self, rho: &CycleType) -> Option<i64> {
        self.values.get(rho).copied()
    }

    pub fn is_zero(&self) -> bool {
        self.values.values().all(|&v| v == 0)
    }
}

type MnKey = (Vec<usize>, Vec<usize>);

thread_local! {
    static MN_MEMO: RefCell<HashMap<MnKey, i64>> = RefCell::new(HashMap::new());
}

/// `χ^λ(ρ)` by the Murnaghan–Nakayama rule.
pub fn mn_character(lambda: &Partition, rho: &CycleType) -> Result<i64> {
    if lambda.size() != rho.size() {
        return Err(Error::SizeMismatch { left: lambda.size(), right: rho.size() });
    }
    Ok(mn_rec(lambda.parts(), rho.lengths().parts()))
}

fn mn_rec(lambda: &[usize], rho: &[usize]) -> i64 {
    if rho.is_empty() {
        return 1;
    }
    let key = (lambda.to_vec(), rho.to_vec());
    if let Some(v) = MN_MEMO.with(|m| m.borrow().get(&key).copied()) {
        return v;
    }
    // remove a rim hook of length r = rho[0] via the beta-set: slide a bead
    // from position b to b - r when that position is empty
    let r = rho[0];
    let len = lambda.len();
    let beta: Vec<usize> = lambda.iter().enumerate().map(|(i, &l)| l + len - 1 - i).collect();
    let mut total = 0i64;
    for (i, &b) in beta.iter().enumerate() {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let target = b - r;
        let height = beta.iter().filter(|&&x| x > target && x < b).count();
        let mut next = beta.clone();
        next[i] = target;
        next.sort_unstable_by(|a, b| b.cmp(a));
        let k = next.len();
        let shape: Vec<usize> = next.iter().enumerate().map(|(j, &x)| x + j + 1 - k).filter(|&x| x > 0).collect();
        let sign = if height % 2 == 0 { 1 } else { -1 };
        total += sign * mn_rec(&shape, &rho[1..]);
    }
    MN_MEMO.with(|m| m.borrow_mut().insert(key, total));
    total
}

/// `Σ_λ c_λ χ^{λ[n]}(ρ)`.
pub fn stable_character(expr: &VirtualSpechtExpr, n: usize, rho: &CycleType) -> Result<i64> {
    if rho.size() != n {
        return Err(Error::SizeMismatch { left: rho.size(), right: n });
    }
    expr.specialize(n)?
        .iter()
        .try_fold(0i64, |acc, (l, c)| Ok(acc + c * mn_character(l, rho)?))
}

/// Ways to split `ρ = σ ⊔ τ` with `|σ| = m`, with weight `z_ρ / (z_σ z_τ)`.
pub fn cycle_splittings(rho: &CycleType, m: usize) -> Vec<(CycleType, u128)> {
    let mult = rho.lengths().multiplicities();
    let mut out = Vec::new();
    let mut chosen = vec![0usize; mult.len()];
    split_rec(&mult, 0, m, &mut chosen, &mut out);
    out
}

fn split_rec(mult: &[usize], i: usize, remaining: usize, chosen: &mut Vec<usize>, out: &mut Vec<(CycleType, u128)>) {
    if i == mult.len() {
        if remaining == 0 {
            let mut parts = Vec::new();
            let mut weight = 1u128;
            for (j, &k) in chosen.iter().enumerate() {
                parts.extend(std::iter::repeat_n(j, k));
                weight *= binomial(mult[j], k);
            }
            out.push((CycleType(Partition::from_unsorted(parts)), weight));
        }
        return;
    }
    let len = i.max(1);
    for k in 0..=mult[i].min(remaining / len) {
        chosen[i] = k;
        split_rec(mult, i + 1, remaining - k * len, chosen, out);
    }
    chosen[i] = 0;
}

/// Character of `Ind_{S_m × S_{n-m}}(W ⊠ triv)` at `ρ`, from the character of `W`.
///
/// Only the values of `w_char` at sub-cycle-types of `ρ` are read, so a
/// Brauer character (values on `p`-regular classes) suffices for `p`-regular `ρ`.
pub fn induced_brauer_character(w_char: &BTreeMap<CycleType, i64>, m: usize, n: usize, rho: &CycleType) -> Result<i64> {
    if rho.size() != n {
        return Err(Error::SizeMismatch { left: rho.size(), right: n });
    }
    if m > n {
        return Err(Error::SizeMismatch { left: m, right: n });
    }
    let mut total = 0i64;
    for (sigma, weight) in cycle_splittings(rho, m) {
        let v = w_char
            .get(&sigma)
            .ok_or_else(|| Error::InvalidRep(format!("character of S_{m} has no value at cycle type {sigma}")))?;
        total += weight as i64 * v;
    }
    Ok(total)
}

/// Brauer character of `D^μ` on the `p`-regular cycle types of `n`.
pub fn brauer_character_of_simple(mu: &Partition, d: &DecompositionMatrix) -> Result<VirtualCharacter> {
    if !mu.is_p_regular(d.p()) {
        return Err(Error::PSingular { lambda: mu.clone(), p: d.p() });
    }
    let row = regular_inverse(d).remove(mu).ok_or(Error::SizeMismatch { left: mu.size(), right: d.n() })?;
    Ok(VirtualCharacter::of_specht_class(d.n(), &row)?.restrict_p_regular(d.p()))
}

/// Brauer character of a finite class in either basis.
pub fn brauer_character_of_class(c: &FiniteClass, d: &DecompositionMatrix) -> Result<VirtualCharacter> {
    let specht = match c.basis() {
        Basis::Specht => c.coeffs().clone(),
        Basis::Simple => {
            let inv = regular_inverse(d);
            let mut out: BTreeMap<Partition, i64> = BTreeMap::new();
            for (mu, k) in c.coeffs() {
                for (nu, e) in &inv[mu] {
                    *out.entry(nu.clone()).or_insert(0) += k * e;
                }
            }
            out
        }
    };
    Ok(VirtualCharacter::of_specht_class(c.n(), &specht)?.restrict_p_regular(c.p()))
}

/// Outcome of [`polynomiality_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolynomialityReport {
    /// Finite differences of order `degree_bound + 1` vanish on the window.
    pub polynomial: bool,
    /// The tested bound `max |λ|`.
    pub degree_bound: usize,
    /// Degree of the interpolant, `None` for the zero polynomial.
    pub observed_degree: Option<usize>,
    /// Coefficients in `n`, constant term first.
    pub coefficients: Vec<Ratio<i128>>,
    pub levels: Vec<usize>,
    pub values: Vec<i64>,
}

impl PolynomialityReport {
    /// The interpolant rendered as e.g. `n - 2` or `1/2 n^2 - 3/2 n + 1`.
    pub fn polynomial_text(&self) -> String {
        let mut terms = Vec::new();
        for (k, c) in self.coefficients.iter().enumerate().rev() {
            if *c.numer() == 0 {
                continue;
            }
            let neg = *c.numer() < 0;
            let a = if neg { -*c } else { *c };
            let mono = match k {
                0 => String::new(),
                1 => "n".to_string(),
                _ => format!("n^{k}"),
            };
            let coef = if k > 0 && a == Ratio::from_integer(1) { String::new() } else { a.to_string() };
            let body = match (coef.is_empty(), mono.is_empty()) {
                (true, _) => mono,
                (false, true) => coef,
                (false, false) => format!("{coef} {mono}"),
            };
            terms.push((neg, body));
        }
        if terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (neg, body)) in terms.into_iter().enumerate() {
            match (i, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            out.push_str(&body);
        }
        out
    }
}

/// Tests whether `n ↦ stable_character(expr, n, fixed_cycles ⊔ 1^{…})` is a
/// polynomial of degree at most `max |λ|` on the window, and interpolates it.
pub fn polynomiality_check(
    expr: &VirtualSpechtExpr,
    fixed_cycles: &Partition,
    n_range: std::ops::RangeInclusive<usize>,
) -> Result<PolynomialityReport> {
    let degree_bound = expr.max_symbol_size();
    let levels: Vec<usize> = n_range.collect();
    let needed = degree_bound + 3;
    if levels.len() < needed {
        return Err(Error::RangeTooSmall { needed, got: levels.len() });
    }
    let start = levels[0];
    let floor = expr.threshold().max(fixed_cycles.size());
    if start < floor {
        return Err(Error::BelowThreshold { n: start, threshold: floor });
    }
    let values = levels
        .iter()
        .map(|&n| stable_character(expr, n, &CycleType::padded(fixed_cycles, n)?))
        .collect::<Result<Vec<i64>>>()?;

    // forward differences Δ^k f(start)
    let mut diffs: Vec<i128> = Vec::with_capacity(values.len());
    let mut row: Vec<i128> = values.iter().map(|&v| v as i128).collect();
    let mut polynomial = true;
    for k in 0..values.len() {
        diffs.push(row[0]);
        if k > degree_bound && row.iter().any(|&x| x != 0) {
            polynomial = false;
        }
        row = row.windows(2).map(|w| w[1] - w[0]).collect();
    }

    // Newton form Σ Δ^k f(start) C(n - start, k), expanded in powers of n
    let top = if polynomial { degree_bound } else { values.len() - 1 };
    let mut coefficients = vec![Ratio::from_integer(0i128); top + 1];
    let mut basis = vec![Ratio::from_integer(1i128)];
    for (k, &dk) in diffs.iter().enumerate().take(top + 1) {
        if k > 0 {
            // basis *= (n - start - (k-1)) / k
            let shift = Ratio::from_integer(-((start + k - 1) as i128));
            let denom = Ratio::from_integer(k as i128);
            let mut next = vec![Ratio::from_integer(0i128); basis.len() + 1];
            for (j, b) in basis.iter().enumerate() {
                next[j + 1] += *b / denom;
                next[j] += *b * shift / denom;
            }
            basis = next;
        }
        for (j, b) in basis.iter().enumerate() {
            coefficients[j] += *b * Ratio::from_integer(dk);
        }
    }
    while coefficients.len() > 1 && *coefficients.last().unwrap().numer() == 0 {
        coefficients.pop();
    }
    let observed_degree = coefficients.iter().rposition(|c| *c.numer() != 0);
    Ok(PolynomialityReport { polynomial, degree_bound, observed_degree, coefficients, levels, values })
}

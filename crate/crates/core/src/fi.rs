//! Induced FI-modules `M(W)` and finite direct sums of them.
//!
//! `M(W)_n = Ind_{S_m × S_{n-m}}(W ⊠ triv)` is realized on the basis
//! `{(A, w)}` with `A` an `m`-subset of `{0, …, n-1}` (lexicographic order)
//! and `w` a basis vector of `W`. A permutation moves `A` and acts on `W`
//! through the order-preserving identification `A ≅ {0, …, m-1}`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};

use crate::characters::{induced_brauer_character, stable_character, CycleType, VirtualCharacter};
use crate::error::{check_prime, Error, Result};
use crate::grothendieck::{simple_in_regular_spechts, to_simples, Basis, FiniteClass};
use crate::modular::{build_simple_with, build_specht_with, chop_with, FpMatrix, GroupRep};
use crate::modular::DecompositionStore;
use crate::partition::{binomial, Partition};
use crate::stable::{stable_induce, VirtualSpechtExpr};

/// The representation `W` of `S_m` in one summand `M(W)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SummandKind {
    Specht(Partition),
    Simple(Partition),
    Explicit(GroupRep),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Summand {
    pub m: usize,
    pub kind: SummandKind,
}

impl Summand {
    pub fn specht(lambda: Partition) -> Self {
        Self { m: lambda.size(), kind: SummandKind::Specht(lambda) }
    }

    pub fn simple(mu: Partition) -> Self {
        Self { m: mu.size(), kind: SummandKind::Simple(mu) }
    }

    pub fn explicit(w: GroupRep) -> Self {
        Self { m: w.n(), kind: SummandKind::Explicit(w) }
    }

    /// The explicit module `W`.
    pub fn build(&self, p: u32, store: &DecompositionStore) -> Result<GroupRep> {
        match &self.kind {
            SummandKind::Specht(l) if l.is_empty() => Ok(GroupRep::trivial(0, p)),
            SummandKind::Simple(l) if l.is_empty() => Ok(GroupRep::trivial(0, p)),
            SummandKind::Specht(l) => Ok(build_specht_with(l, p, store.limits())?.rep),
            SummandKind::Simple(mu) => build_simple_with(mu, p, store.limits()),
            SummandKind::Explicit(w) => Ok(w.clone()),
        }
    }

    /// `[W]` as a combination of Specht classes of `S_m`.
    pub fn specht_class(&self, p: u32, store: &DecompositionStore, seed: u64) -> Result<BTreeMap<Partition, i64>> {
        match &self.kind {
            SummandKind::Specht(l) => Ok([(l.clone(), 1)].into_iter().collect()),
            SummandKind::Simple(mu) if mu.is_empty() => Ok([(mu.clone(), 1)].into_iter().collect()),
            SummandKind::Simple(mu) => simple_in_regular_spechts(mu, self.m, p, &*store.get(self.m, p)?),
            SummandKind::Explicit(w) => {
                if self.m == 0 {
                    return Ok([(Partition::empty(), w.dim() as i64)].into_iter().collect());
                }
                let d = store.get(self.m, p)?;
                let factors = chop_with(w, seed, store.limits())?;
                let catalog = store.catalog(self.m, p)?;
                let mut out: BTreeMap<Partition, i64> = BTreeMap::new();
                for (mu, k) in catalog.identify_all(&factors)? {
                    for (lambda, e) in simple_in_regular_spechts(&mu, self.m, p, &d)? {
                        *out.entry(lambda).or_insert(0) += k as i64 * e;
                    }
                }
                out.retain(|_, v| *v != 0);
                Ok(out)
            }
        }
    }

    fn dim(&self, p: u32, store: &DecompositionStore) -> Result<usize> {
        match &self.kind {
            SummandKind::Specht(l) => Ok(l.hook_dimension() as usize),
            SummandKind::Explicit(w) => Ok(w.dim()),
            SummandKind::Simple(_) => Ok(self.build(p, store)?.dim()),
        }
    }
}

impl fmt::Display for Summand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            SummandKind::Specht(l) => write!(f, "M(S^{l})"),
            SummandKind::Simple(mu) => write!(f, "M(D^{mu})"),
            SummandKind::Explicit(w) => write!(f, "M(W), W of S_{} of dimension {}", w.n(), w.dim()),
        }
    }
}

/// A finite direct sum of induced FI-modules over `F_p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FIModel {
    pub p: u32,
    pub summands: Vec<Summand>,
}

#[derive(Serialize, Deserialize)]
struct ModelFile {
    p: u32,
    summands: Vec<SummandFile>,
}

#[derive(Serialize, Deserialize)]
struct SummandFile {
    m: usize,
    #[serde(rename = "W")]
    w: serde_json::Value,
}

impl FIModel {
    pub fn new(p: u32, summands: Vec<Summand>) -> Result<Self> {
        check_prime(p)?;
        for s in &summands {
            if let SummandKind::Explicit(w) = &s.kind {
                if w.p() != p {
                    return Err(Error::CharacteristicMismatch(w.p(), p));
                }
                if w.n() != s.m {
                    return Err(Error::SizeMismatch { left: w.n(), right: s.m });
                }
            }
            if let SummandKind::Simple(mu) = &s.kind {
                if !mu.is_p_regular(p) {
                    return Err(Error::PSingular { lambda: mu.clone(), p });
                }
            }
        }
        Ok(Self { p, summands })
    }

    /// `M(triv_{S_1})`, the permutation modules `F_p^n`.
    pub fn example1(p: u32) -> Result<Self> {
        Self::new(p, vec![Summand::specht(Partition::row(1))])
    }

    /// `M(D^{(4,1)})` over `F_5`.
    pub fn example2() -> Self {
        Self::new(5, vec![Summand::simple(Partition::new(vec![4, 1]).expect("valid partition"))]).expect("valid model")
    }

    /// `M(S^{(1,1,1)})` over `F_3`.
    pub fn example3() -> Self {
        Self::new(3, vec![Summand::specht(Partition::column(3))]).expect("valid model")
    }

    /// The constant FI-module `M(triv_{S_0})`.
    pub fn constant(p: u32) -> Result<Self> {
        Self::new(p, vec![Summand::specht(Partition::empty())])
    }

    pub fn max_m(&self) -> usize {
        self.summands.iter().map(|s| s.m).max().unwrap_or(0)
    }

    /// `dim M_n = Σ C(n, m_i) dim W_i`.
    pub fn dim_at(&self, n: usize, store: &DecompositionStore) -> Result<usize> {
        self.summands
            .iter()
            .try_fold(0usize, |acc, s| Ok(acc + binomial(n, s.m) as usize * s.dim(self.p, store)?))
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let file: ModelFile = serde_json::from_str(s)?;
        let summands = file
            .summands
            .into_iter()
            .map(|sf| {
                let summand = match sf.w {
                    serde_json::Value::String(text) => parse_w_text(&text)?,
                    obj @ serde_json::Value::Object(_) => Summand::explicit(GroupRep::from_json_str(&obj.to_string())?),
                    other => return Err(Error::Parse(format!("unsupported W entry {other}"))),
                };
                if summand.m != sf.m {
                    return Err(Error::SizeMismatch { left: summand.m, right: sf.m });
                }
                Ok(summand)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(file.p, summands)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let summands: Vec<_> = self
            .summands
            .iter()
            .map(|s| {
                let w = match &s.kind {
                    SummandKind::Specht(l) => serde_json::Value::String(format!("specht {}", l.machine())),
                    SummandKind::Simple(mu) => serde_json::Value::String(format!("simple {}", mu.machine())),
                    SummandKind::Explicit(w) => w.to_json(),
                };
                serde_json::json!({"m": s.m, "W": w})
            })
            .collect();
        serde_json::json!({"p": self.p, "summands": summands})
    }
}

fn parse_w_text(text: &str) -> Result<Summand> {
    let text = text.trim();
    let (kind, rest) = text.split_once(char::is_whitespace).unwrap_or((text, ""));
    let lambda: Partition = rest.trim().parse()?;
    match kind {
        "specht" => Ok(Summand::specht(lambda)),
        "simple" => Ok(Summand::simple(lambda)),
        _ => Err(Error::Parse(format!("expected 'specht [λ]' or 'simple [μ]', got {text:?}"))),
    }
}

/// The `m`-subsets of `{0, …, n-1}` in lexicographic order.
fn subsets(n: usize, m: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for x in start..=n - left {
            cur.push(x);
            go(x + 1, n, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if m <= n {
        go(0, n, m, &mut Vec::new(), &mut out);
    }
    out
}

fn induce(w: &GroupRep, n: usize) -> Result<GroupRep> {
    let m = w.n();
    let p = w.p();
    if n < m {
        return Err(Error::LevelTooSmall { lambda: Partition::row(m), level: n, required: m });
    }
    let subs = subsets(n, m);
    let index: BTreeMap<&[usize], usize> = subs.iter().enumerate().map(|(i, a)| (a.as_slice(), i)).collect();
    let d = w.dim();
    let dim = subs.len() * d;
    let mut generators = Vec::with_capacity(n.saturating_sub(1));
    for i in 0..n.saturating_sub(1) {
        let mut g = FpMatrix::zeros(dim, dim, p);
        for (a_idx, a) in subs.iter().enumerate() {
            let has_i = a.binary_search(&i);
            let has_next = a.binary_search(&(i + 1));
            match (has_i, has_next) {
                (Ok(pos), Ok(_)) => {
                    let wg = &w.generators()[pos];
                    for r in 0..d {
                        g.row_mut(a_idx * d + r)[a_idx * d..(a_idx + 1) * d].copy_from_slice(wg.row(r));
                    }
                }
                (Ok(_), Err(_)) | (Err(_), Ok(_)) => {
                    let moved: Vec<usize> = a
                        .iter()
                        .map(|&x| if x == i { i + 1 } else if x == i + 1 { i } else { x })
                        .collect();
                    let b_idx = index[moved.as_slice()];
                    for r in 0..d {
                        g.set(a_idx * d + r, b_idx * d + r, 1);
                    }
                }
                (Err(_), Err(_)) => {
                    for r in 0..d {
                        g.set(a_idx * d + r, a_idx * d + r, 1);
                    }
                }
            }
        }
        generators.push(g);
    }
    GroupRep::new(n, p, dim, generators)
}

/// The explicit representation `M_n`.
pub fn evaluate(model: &FIModel, n: usize, store: &DecompositionStore) -> Result<GroupRep> {
    if n < model.max_m() {
        return Err(Error::LevelTooSmall { lambda: Partition::row(model.max_m()), level: n, required: model.max_m() });
    }
    let mut out: Option<GroupRep> = None;
    for s in &model.summands {
        let piece = induce(&s.build(model.p, store)?, n)?;
        out = Some(match out {
            None => piece,
            Some(acc) => acc.direct_sum(&piece)?,
        });
    }
    match out {
        Some(rep) => Ok(rep),
        None => GroupRep::new(n, model.p, 0, (1..n).map(|_| FpMatrix::zeros(0, 0, model.p)).collect()),
    }
}

/// `Σ_i stable_induce([W_i], m_i)`, with each `[W_i]` in Specht classes.
pub fn predicted_stable_class(model: &FIModel, store: &DecompositionStore, seed: u64) -> Result<VirtualSpechtExpr> {
    let mut total = VirtualSpechtExpr::zero(model.p)?;
    for s in &model.summands {
        let class = s.specht_class(model.p, store, seed)?;
        total = total.add(&stable_induce(&class, s.m, model.p)?)?;
    }
    Ok(total)
}

/// Brauer character of `M_n` on the `p`-regular cycle types of `n`.
pub fn model_brauer_character(model: &FIModel, n: usize, store: &DecompositionStore, seed: u64) -> Result<VirtualCharacter> {
    let mut values: BTreeMap<CycleType, i64> = CycleType::all_p_regular(n, model.p).into_iter().map(|c| (c, 0)).collect();
    for s in &model.summands {
        let class = s.specht_class(model.p, store, seed)?;
        let w_char = VirtualCharacter::of_specht_class(s.m, &class)?.restrict_p_regular(model.p);
        for (rho, v) in values.iter_mut() {
            *v += induced_brauer_character(&w_char.values, s.m, n, rho)?;
        }
    }
    Ok(VirtualCharacter { level: n, values })
}

/// How a level is checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// Composition factors of the explicit module.
    Chop,
    /// Brauer characters on `p`-regular classes.
    Character,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Chop => "chop",
            Method::Character => "character",
        })
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum MethodChoice {
    /// Chop when the level and dimension are within limits.
    #[default]
    Auto,
    Force(Method),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelResult {
    pub n: usize,
    pub method: Method,
    pub pass: bool,
    /// Simple multiplicities of the module (chop) or the number of classes compared.
    pub observed: Option<BTreeMap<String, i64>>,
    pub expected: Option<BTreeMap<String, i64>>,
    pub detail: Option<String>,
    /// Error code when the level could not be checked.
    pub error: Option<String>,
}

#[derive(Clone, Debug)]
pub struct StabilityReport {
    pub prediction: VirtualSpechtExpr,
    pub levels: Vec<LevelResult>,
}

impl StabilityReport {
    pub fn all_pass(&self) -> bool {
        !self.levels.is_empty() && self.levels.iter().all(|l| l.pass)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "prediction": self.prediction.to_json(),
            "levels": self.levels,
            "all_pass": self.all_pass(),
        })
    }
}

fn labelled(map: &BTreeMap<Partition, i64>) -> BTreeMap<String, i64> {
    map.iter().map(|(k, v)| (k.machine(), *v)).collect()
}

/// Checks `[M_n] = Σ c_λ [S^{λ[n]}]` at each level of the range.
pub fn verify_stability(
    model: &FIModel,
    n_range: RangeInclusive<usize>,
    store: &DecompositionStore,
    seed: u64,
    choice: MethodChoice,
) -> Result<StabilityReport> {
    let prediction = predicted_stable_class(model, store, seed)?;
    let limits = *store.limits();
    let mut levels = Vec::new();
    for n in n_range {
        let method = match choice {
            MethodChoice::Force(m) => m,
            MethodChoice::Auto => {
                let small = n <= limits.max_decomposition_n
                    && model.dim_at(n, store).map(|d| d <= limits.max_chop_dim).unwrap_or(false);
                if small {
                    Method::Chop
                } else {
                    Method::Character
                }
            }
        };
        let result = match method {
            Method::Chop => check_by_chop(model, &prediction, n, store, seed),
            Method::Character => check_by_character(model, &prediction, n, store, seed),
        };
        levels.push(result.unwrap_or_else(|e| LevelResult {
            n,
            method,
            pass: false,
            observed: None,
            expected: None,
            detail: Some(e.to_string()),
            error: Some(e.code().to_string()),
        }));
    }
    Ok(StabilityReport { prediction, levels })
}

fn check_by_chop(model: &FIModel, prediction: &VirtualSpechtExpr, n: usize, store: &DecompositionStore, seed: u64) -> Result<LevelResult> {
    let expected_class = FiniteClass::new(n, model.p, Basis::Specht, prediction.specialize(n)?)?;
    let expected = to_simples(&expected_class, &*store.get(n, model.p)?)?;
    let rep = evaluate(model, n, store)?;
    let factors = chop_with(&rep, seed, store.limits())?;
    let catalog = store.catalog(n, model.p)?;
    let observed: BTreeMap<Partition, i64> =
        catalog.identify_all(&factors)?.into_iter().map(|(mu, k)| (mu, k as i64)).collect();
    let pass = &observed == expected.coeffs();
    Ok(LevelResult {
        n,
        method: Method::Chop,
        pass,
        observed: Some(labelled(&observed)),
        expected: Some(labelled(expected.coeffs())),
        detail: None,
        error: None,
    })
}

fn check_by_character(
    model: &FIModel,
    prediction: &VirtualSpechtExpr,
    n: usize,
    store: &DecompositionStore,
    seed: u64,
) -> Result<LevelResult> {
    let module = model_brauer_character(model, n, store, seed)?;
    let mut mismatch = None;
    for (rho, &v) in &module.values {
        let predicted = stable_character(prediction, n, rho)?;
        if predicted != v {
            mismatch = Some(format!("at cycle type {rho}: module {v}, prediction {predicted}"));
            break;
        }
    }
    Ok(LevelResult {
        n,
        method: Method::Character,
        pass: mismatch.is_none(),
        observed: None,
        expected: None,
        detail: Some(mismatch.unwrap_or_else(|| format!("{} p-regular classes agree", module.values.len()))),
        error: None,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicityReport {
    pub p: u32,
    /// Per level: multiplicities of `D^{μ[n]}` keyed by the stable symbol `μ`.
    pub table: Vec<(usize, BTreeMap<Partition, i64>)>,
    /// Least `P ≤ window` with `table[i] = table[i + P]` throughout the window.
    pub period: usize,
    /// The window covers at least two full periods.
    pub conclusive: bool,
    /// The observed period is a power of `p` (including `p^0 = 1`).
    pub power_of_p: bool,
}

impl PeriodicityReport {
    /// The sequence on the window is compatible with period `q`.
    pub fn consistent_with(&self, q: usize) -> bool {
        q > 0 && (0..self.table.len().saturating_sub(q)).all(|i| self.table[i].1 == self.table[i + q].1)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let table: Vec<_> = self
            .table
            .iter()
            .map(|(n, row)| serde_json::json!({"n": n, "simples": labelled(row)}))
            .collect();
        serde_json::json!({
            "p": self.p,
            "period": self.period,
            "conclusive": self.conclusive,
            "power_of_p": self.power_of_p,
            "table": table,
        })
    }
}

fn is_power_of(q: usize, p: u32) -> bool {
    let mut x = q;
    while x > 1 && x.is_multiple_of(p as usize) {
        x /= p as usize;
    }
    x == 1
}

/// Simple-module multiplicities of `M_n` across the window and their least period.
pub fn periodicity_scan(
    model: &FIModel,
    n_range: RangeInclusive<usize>,
    store: &DecompositionStore,
    seed: u64,
) -> Result<PeriodicityReport> {
    let mut table = Vec::new();
    for n in n_range {
        let rep = evaluate(model, n, store)?;
        let factors = chop_with(&rep, seed, store.limits())?;
        let row: BTreeMap<Partition, i64> = if n == 0 {
            [(Partition::empty(), factors.len() as i64)].into_iter().filter(|(_, k)| *k > 0).collect()
        } else {
            if n > store.limits().max_decomposition_n {
                return Err(Error::DecompositionUnavailable {
                    n,
                    p: model.p,
                    reason: format!("limit is {}", store.limits().max_decomposition_n),
                });
            }
            let catalog = store.catalog(n, model.p)?;
            catalog.identify_all(&factors)?.into_iter().map(|(mu, k)| (mu.unpad(), k as i64)).collect()
        };
        table.push((n, row));
    }
    let len = table.len();
    let mut report = PeriodicityReport { p: model.p, table, period: len.max(1), conclusive: false, power_of_p: false };
    let period = (1..=len.max(1)).find(|&q| report.consistent_with(q)).unwrap_or(len.max(1));
    report.period = period;
    report.conclusive = len >= 2 * period;
    report.power_of_p = is_power_of(period, model.p);
    Ok(report)
}

/// A reference stable expansion next to the one derived here.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReferenceComparison {
    /// `"prediction"` (the Pieri expansion) or `"regularized"`.
    pub stage: &'static str,
    pub reference: BTreeMap<Partition, i64>,
    pub derived: BTreeMap<Partition, i64>,
    /// Level at which dimensions are compared.
    pub level: usize,
    pub reference_dim: i64,
    pub derived_dim: i64,
    /// `dim M_level` computed from the module itself.
    pub module_dim: i64,
}

impl ReferenceComparison {
    pub fn agrees(&self) -> bool {
        self.reference == self.derived
    }

    /// `derived - reference`, the terms missing from the reference display.
    pub fn difference(&self) -> BTreeMap<Partition, i64> {
        let mut out = self.derived.clone();
        for (l, c) in &self.reference {
            *out.entry(l.clone()).or_insert(0) -= c;
        }
        out.retain(|_, v| *v != 0);
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "stage": self.stage,
            "agrees": self.agrees(),
            "reference": labelled(&self.reference),
            "derived": labelled(&self.derived),
            "difference": labelled(&self.difference()),
            "level": self.level,
            "reference_dim": self.reference_dim,
            "derived_dim": self.derived_dim,
            "module_dim": self.module_dim,
        })
    }
}

fn padded_dim(coeffs: &BTreeMap<Partition, i64>, n: usize) -> Result<i64> {
    coeffs.iter().try_fold(0i64, |acc, (l, c)| Ok(acc + c * l.pad(n)?.hook_dimension() as i64))
}

type ReferenceEntry = (&'static str, BTreeMap<Partition, i64>, usize);

fn terms(list: &[(&[usize], i64)]) -> BTreeMap<Partition, i64> {
    list.iter().map(|(parts, c)| (Partition::new(parts.to_vec()).expect("valid partition"), *c)).collect()
}

/// Reference stable expansions of the three built-in examples, compared with
/// the derived ones. Example numbers are 1, 2 and 3.
pub fn reference_comparisons(example: u8, p: u32, store: &DecompositionStore, seed: u64) -> Result<Vec<ReferenceComparison>> {
    let (model, entries): (FIModel, Vec<ReferenceEntry>) = match example {
        1 => (FIModel::example1(p)?, vec![("prediction", terms(&[(&[1], 1), (&[], 1)]), 6)]),
        2 => (
            FIModel::example2(),
            vec![("prediction", terms(&[(&[4, 1], 1), (&[3, 1], 1), (&[2, 1], 1), (&[1, 1], 1), (&[5], -1)]), 10)],
        ),
        3 => (
            FIModel::example3(),
            vec![
                ("prediction", terms(&[(&[1, 1, 1], 1), (&[1, 1], 1)]), 6),
                ("regularized", terms(&[(&[2, 1], 1), (&[1, 1], 1), (&[3], -1)]), 6),
            ],
        ),
        other => return Err(Error::Parse(format!("no built-in example {other}"))),
    };
    let prediction = predicted_stable_class(&model, store, seed)?;
    let mut out = Vec::new();
    for (stage, reference, level) in entries {
        let derived = match stage {
            "regularized" => crate::stable::regularize(&prediction, store)?.expr,
            _ => prediction.clone(),
        };
        let module_dim = model.dim_at(level, store)? as i64;
        out.push(ReferenceComparison {
            stage,
            reference_dim: padded_dim(&reference, level)?,
            derived_dim: padded_dim(derived.coeffs(), level)?,
            derived: derived.coeffs().clone(),
            reference,
            level,
            module_dim,
        });
    }
    Ok(out)
}

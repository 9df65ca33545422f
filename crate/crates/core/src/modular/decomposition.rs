//! Decomposition matrices `d_{λμ} = [S^λ : D^μ]` and their on-disk cache.

use std::collections::{BTreeMap, HashMap};
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use super::meataxe::{certify, chop_with, is_isomorphic, IrreducibleRep};
use super::specht::{build_simple_with, build_specht_with};
use super::Limits;
use crate::error::{check_prime, Error, Result};
use crate::partition::{partitions_of, Partition};

/// Certified simple modules `D^μ` for every `p`-regular `μ ⊢ n`.
pub struct SimpleCatalog {
    n: usize,
    p: u32,
    simples: Vec<(Partition, IrreducibleRep)>,
}

impl SimpleCatalog {
    pub fn new(n: usize, p: u32, limits: &Limits, seed: u64) -> Result<Self> {
        check_prime(p)?;
        let simples = partitions_of(n)
            .into_iter()
            .filter(|mu| mu.is_p_regular(p))
            .map(|mu| {
                let rep = build_simple_with(&mu, p, limits)?;
                let irr = certify(&rep, seed)?;
                Ok((mu, irr))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { n, p, simples })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn labels(&self) -> impl Iterator<Item = &Partition> {
        self.simples.iter().map(|(mu, _)| mu)
    }

    pub fn get(&self, mu: &Partition) -> Option<&IrreducibleRep> {
        self.simples.iter().find(|(m, _)| m == mu).map(|(_, r)| r)
    }

    /// The label `μ` with `factor ≅ D^μ`.
    pub fn identify(&self, factor: &IrreducibleRep) -> Result<Partition> {
        for (mu, simple) in &self.simples {
            if simple.dim() == factor.dim() && is_isomorphic(simple, factor)? {
                return Ok(mu.clone());
            }
        }
        Err(Error::InvalidRep(format!(
            "composition factor of dimension {} matches no simple module of S_{} over F_{}",
            factor.dim(),
            self.n,
            self.p
        )))
    }

    /// Multiplicities of the simple modules among the given factors.
    pub fn identify_all(&self, factors: &[IrreducibleRep]) -> Result<BTreeMap<Partition, u32>> {
        let mut out = BTreeMap::new();
        for f in factors {
            *out.entry(self.identify(f)?).or_insert(0) += 1;
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionMatrix {
    n: usize,
    p: u32,
    rows: Vec<Partition>,
    cols: Vec<Partition>,
    entries: Vec<Vec<u32>>,
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    version: u32,
    n: usize,
    p: u32,
    rows: Vec<CacheRow>,
}

#[derive(Serialize, Deserialize)]
struct CacheRow {
    lambda: Partition,
    factors: Vec<CacheFactor>,
}

#[derive(Serialize, Deserialize)]
struct CacheFactor {
    mu: Partition,
    mult: u32,
}

impl DecompositionMatrix {
    /// Assembles a matrix from per-row multiplicities.
    pub fn from_rows(n: usize, p: u32, data: &BTreeMap<Partition, BTreeMap<Partition, u32>>) -> Result<Self> {
        let rows = partitions_of(n);
        let cols: Vec<Partition> = rows.iter().filter(|l| l.is_p_regular(p)).cloned().collect();
        let mut entries = vec![vec![0; cols.len()]; rows.len()];
        for (lambda, factors) in data {
            let i = rows
                .iter()
                .position(|r| r == lambda)
                .ok_or_else(|| Error::Parse(format!("{lambda} is not a partition of {n}")))?;
            for (mu, &k) in factors {
                let j = cols
                    .iter()
                    .position(|c| c == mu)
                    .ok_or_else(|| Error::Parse(format!("{mu} is not a {p}-regular partition of {n}")))?;
                entries[i][j] = k;
            }
        }
        if data.len() != rows.len() {
            return Err(Error::Parse(format!("expected {} rows, got {}", rows.len(), data.len())));
        }
        Ok(Self { n, p, rows, cols, entries })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// All partitions of `n`, canonical order.
    pub fn rows(&self) -> &[Partition] {
        &self.rows
    }

    /// The `p`-regular partitions of `n`, canonical order.
    pub fn cols(&self) -> &[Partition] {
        &self.cols
    }

    pub fn entry(&self, lambda: &Partition, mu: &Partition) -> u32 {
        let i = self.rows.iter().position(|r| r == lambda);
        let j = self.cols.iter().position(|c| c == mu);
        match (i, j) {
            (Some(i), Some(j)) => self.entries[i][j],
            _ => 0,
        }
    }

    /// Nonzero entries of the row of `λ`.
    pub fn row(&self, lambda: &Partition) -> BTreeMap<Partition, u32> {
        let Some(i) = self.rows.iter().position(|r| r == lambda) else {
            return BTreeMap::new();
        };
        self.cols
            .iter()
            .zip(&self.entries[i])
            .filter(|(_, &k)| k > 0)
            .map(|(mu, &k)| (mu.clone(), k))
            .collect()
    }

    /// `dim D^μ` for every column, solved from `dim S^μ = Σ_ν d_{μν} dim D^ν`.
    pub fn simple_dims(&self) -> BTreeMap<Partition, u64> {
        let mut dims: BTreeMap<Partition, u64> = BTreeMap::new();
        // canonical order lists more dominant partitions first
        for mu in &self.cols {
            let mut d = mu.hook_dimension() as i64;
            for (nu, k) in self.row(mu) {
                if &nu != mu {
                    d -= k as i64 * dims[&nu] as i64;
                }
            }
            dims.insert(mu.clone(), d.max(0) as u64);
        }
        dims
    }

    /// Unitriangularity, dominance support and the dimension identity.
    pub fn check_invariants(&self) -> Result<()> {
        let dims = self.simple_dims();
        for lambda in &self.rows {
            let row = self.row(lambda);
            for mu in row.keys() {
                if !mu.dominates(lambda)? {
                    return Err(Error::InvalidRep(format!("d[{lambda},{mu}] ≠ 0 but {mu} does not dominate {lambda}")));
                }
            }
            if lambda.is_p_regular(self.p) && row.get(lambda) != Some(&1) {
                return Err(Error::InvalidRep(format!("d[{lambda},{lambda}] ≠ 1")));
            }
            let total: u64 = row.iter().map(|(mu, &k)| k as u64 * dims[mu]).sum();
            if total != lambda.hook_dimension() {
                return Err(Error::InvalidRep(format!("dimension identity fails for {lambda}")));
            }
        }
        if dims.values().any(|&d| d == 0) {
            return Err(Error::InvalidRep("a simple module has dimension zero".into()));
        }
        Ok(())
    }

    pub fn to_json(&self) -> serde_json::Value {
        let file = CacheFile {
            version: 1,
            n: self.n,
            p: self.p,
            rows: self
                .rows
                .iter()
                .map(|lambda| CacheRow {
                    lambda: lambda.clone(),
                    factors: self.row(lambda).into_iter().map(|(mu, mult)| CacheFactor { mu, mult }).collect(),
                })
                .collect(),
        };
        serde_json::to_value(file).expect("decomposition matrix serializes")
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let file: CacheFile = serde_json::from_str(s)?;
        if file.version != 1 {
            return Err(Error::Parse(format!("unsupported cache version {}", file.version)));
        }
        check_prime(file.p)?;
        let data = file
            .rows
            .into_iter()
            .map(|r| (r.lambda, r.factors.into_iter().map(|f| (f.mu, f.mult)).collect()))
            .collect();
        Self::from_rows(file.n, file.p, &data)
    }
}

/// Computes the decomposition matrix by chopping every Specht module of `S_n`
/// and identifying the factors against the simple modules.
pub fn decomposition_matrix(n: usize, p: u32, limits: &Limits, seed: u64) -> Result<DecompositionMatrix> {
    check_prime(p)?;
    if n > limits.max_decomposition_n {
        return Err(Error::DecompositionUnavailable {
            n,
            p,
            reason: format!("n exceeds the configured limit {}", limits.max_decomposition_n),
        });
    }
    let catalog = SimpleCatalog::new(n, p, limits, seed)?;
    matrix_from_catalog(&catalog, limits, seed)
}

fn matrix_from_catalog(catalog: &SimpleCatalog, limits: &Limits, seed: u64) -> Result<DecompositionMatrix> {
    let (n, p) = (catalog.n(), catalog.p());
    let mut data = BTreeMap::new();
    for lambda in partitions_of(n) {
        let specht = build_specht_with(&lambda, p, limits)?;
        let factors = chop_with(&specht.rep, seed, limits)?;
        data.insert(lambda, catalog.identify_all(&factors)?);
    }
    DecompositionMatrix::from_rows(n, p, &data)
}

/// Memoizing source of decomposition matrices, optionally backed by a
/// directory with one JSON file per `(n, p)`.
pub struct DecompositionStore {
    cache_dir: Option<PathBuf>,
    limits: Limits,
    seed: u64,
    memory: Mutex<HashMap<(usize, u32), Arc<DecompositionMatrix>>>,
    catalogs: Mutex<HashMap<(usize, u32), Arc<SimpleCatalog>>>,
}

impl DecompositionStore {
    pub fn new(cache_dir: Option<PathBuf>, limits: Limits, seed: u64) -> Self {
        Self { cache_dir, limits, seed, memory: Mutex::new(HashMap::new()), catalogs: Mutex::new(HashMap::new()) }
    }

    pub fn in_memory() -> Self {
        Self::new(None, Limits::default(), 0)
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn cache_path(dir: &Path, n: usize, p: u32) -> PathBuf {
        dir.join(format!("decmat-n{n}-p{p}.json"))
    }

    pub fn get(&self, n: usize, p: u32) -> Result<Arc<DecompositionMatrix>> {
        // the lock also serializes computation and cache writes
        let mut memory = self.memory.lock().unwrap_or_else(|e| e.into_inner());
        if let Some(m) = memory.get(&(n, p)) {
            return Ok(m.clone());
        }
        let matrix = match self.load(n, p)? {
            Some(m) => m,
            None => {
                check_prime(p)?;
                if n > self.limits.max_decomposition_n {
                    return Err(Error::DecompositionUnavailable {
                        n,
                        p,
                        reason: format!("n exceeds the configured limit {}", self.limits.max_decomposition_n),
                    });
                }
                let m = matrix_from_catalog(&*self.catalog(n, p)?, &self.limits, self.seed)?;
                self.store(&m)?;
                m
            }
        };
        let matrix = Arc::new(matrix);
        memory.insert((n, p), matrix.clone());
        Ok(matrix)
    }

    /// The certified simple modules of `S_n` over `F_p`, built once per store.
    pub fn catalog(&self, n: usize, p: u32) -> Result<Arc<SimpleCatalog>> {
        if let Some(c) = self.catalogs.lock().unwrap_or_else(|e| e.into_inner()).get(&(n, p)) {
            return Ok(c.clone());
        }
        let catalog = Arc::new(SimpleCatalog::new(n, p, &self.limits, self.seed)?);
        self.catalogs.lock().unwrap_or_else(|e| e.into_inner()).insert((n, p), catalog.clone());
        Ok(catalog)
    }

    fn load(&self, n: usize, p: u32) -> Result<Option<DecompositionMatrix>> {
        let Some(dir) = &self.cache_dir else {
            return Ok(None);
        };
        let path = Self::cache_path(dir, n, p);
        if !path.exists() {
            return Ok(None);
        }
        let m = DecompositionMatrix::from_json_str(&fs::read_to_string(&path)?)?;
        if m.n() != n || m.p() != p {
            return Err(Error::Parse(format!("{} holds the wrong matrix", path.display())));
        }
        Ok(Some(m))
    }

    fn store(&self, m: &DecompositionMatrix) -> Result<()> {
        let Some(dir) = &self.cache_dir else {
            return Ok(());
        };
        fs::create_dir_all(dir)?;
        let path = Self::cache_path(dir, m.n(), m.p());
        let tmp = path.with_extension(format!("json.tmp{}", std::process::id()));
        fs::write(&tmp, serde_json::to_string_pretty(&m.to_json())?)?;
        fs::rename(&tmp, &path)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn small_examples() {
        let store = DecompositionStore::in_memory();
        let d5 = store.get(5, 5).unwrap();
        assert_eq!(d5.row(&p("4,1")), [(p("5"), 1), (p("4,1"), 1)].into_iter().collect());
        let d3 = store.get(3, 3).unwrap();
        assert_eq!(d3.row(&p("1,1,1")), [(p("2,1"), 1)].into_iter().collect());
        d5.check_invariants().unwrap();
        d3.check_invariants().unwrap();
    }

    #[test]
    fn semisimple_case_is_identity() {
        let d = decomposition_matrix(4, 5, &Limits::default(), 0).unwrap();
        assert_eq!(d.rows(), d.cols());
        for lambda in d.rows() {
            assert_eq!(d.row(lambda), [(lambda.clone(), 1)].into_iter().collect());
        }
    }

    #[test]
    fn cache_roundtrip_and_reuse() {
        let dir = tempfile::tempdir().unwrap();
        let store = DecompositionStore::new(Some(dir.path().to_path_buf()), Limits::default(), 0);
        let m = store.get(4, 2).unwrap();
        let path = DecompositionStore::cache_path(dir.path(), 4, 2);
        assert!(path.exists());
        let loaded = DecompositionMatrix::from_json_str(&fs::read_to_string(&path).unwrap()).unwrap();
        assert_eq!(&loaded, m.as_ref());

        // a store with a zero limit still serves the cached file
        let limits = Limits { max_decomposition_n: 0, ..Limits::default() };
        let cached = DecompositionStore::new(Some(dir.path().to_path_buf()), limits, 0);
        assert_eq!(cached.get(4, 2).unwrap().as_ref(), m.as_ref());
        assert!(matches!(cached.get(5, 2), Err(Error::DecompositionUnavailable { .. })));
    }

    #[test]
    fn cache_file_format() {
        let m = decomposition_matrix(2, 2, &Limits::default(), 0).unwrap();
        let json = m.to_json();
        assert_eq!(
            json,
            serde_json::json!({
                "version": 1, "n": 2, "p": 2,
                "rows": [
                    {"lambda": [2], "factors": [{"mu": [2], "mult": 1}]},
                    {"lambda": [1,1], "factors": [{"mu": [2], "mult": 1}]}
                ]
            })
        );
        assert!(DecompositionMatrix::from_json_str(r#"{"version":2,"n":2,"p":2,"rows":[]}"#).is_err());
    }
}

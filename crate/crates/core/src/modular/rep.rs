use serde::{Deserialize, Serialize};

use super::fp::{FpMatrix, Subspace};
use crate::error::{check_prime, Error, Result};
use crate::partition::Partition;

/// A representation of `S_n` over `F_p`, given by the images of the adjacent
/// transpositions `s_1, …, s_{n-1}` acting on row vectors from the right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupRep {
    n: usize,
    p: u32,
    dim: usize,
    generators: Vec<FpMatrix>,
}

/// On-disk form: `{"n":…, "p":…, "dim":…, "generators":[[row-major entries]…]}`.
#[derive(Serialize, Deserialize)]
struct RepFile {
    n: usize,
    p: u32,
    dim: usize,
    generators: Vec<Vec<u32>>,
}

impl GroupRep {
    pub fn new(n: usize, p: u32, dim: usize, generators: Vec<FpMatrix>) -> Result<Self> {
        check_prime(p)?;
        if generators.len() != n.saturating_sub(1) {
            return Err(Error::InvalidRep(format!(
                "S_{n} needs {} generators, got {}",
                n.saturating_sub(1),
                generators.len()
            )));
        }
        for g in &generators {
            if g.rows() != dim || g.cols() != dim || g.p() != p {
                return Err(Error::InvalidRep(format!(
                    "generator is {}x{} over F_{}, expected {dim}x{dim} over F_{p}",
                    g.rows(),
                    g.cols(),
                    g.p()
                )));
            }
        }
        Ok(Self { n, p, dim, generators })
    }

    pub fn trivial(n: usize, p: u32) -> Self {
        let gens = (1..n).map(|_| FpMatrix::identity(1, p)).collect();
        Self { n, p, dim: 1, generators: gens }
    }

    pub fn sign(n: usize, p: u32) -> Self {
        let gens = (1..n).map(|_| FpMatrix::identity(1, p).scale(p - 1)).collect();
        Self { n, p, dim: 1, generators: gens }
    }

    /// The natural permutation module `F_p^n`.
    pub fn permutation(n: usize, p: u32) -> Self {
        let gens = (0..n.saturating_sub(1))
            .map(|i| {
                let mut m = FpMatrix::identity(n, p);
                m.set(i, i, 0);
                m.set(i + 1, i + 1, 0);
                m.set(i, i + 1, 1);
                m.set(i + 1, i, 1);
                m
            })
            .collect();
        Self { n, p, dim: n, generators: gens }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[FpMatrix] {
        &self.generators
    }

    /// Checks `s_i² = 1`, the braid relations and far commutation exactly.
    pub fn check_relations(&self) -> Result<()> {
        let id = FpMatrix::identity(self.dim, self.p);
        let g = &self.generators;
        for (i, a) in g.iter().enumerate() {
            if a.mul(a) != id {
                return Err(Error::InvalidRep(format!("s_{} is not an involution", i + 1)));
            }
            if let Some(b) = g.get(i + 1) {
                if a.mul(b).mul(a) != b.mul(a).mul(b) {
                    return Err(Error::InvalidRep(format!("braid relation fails at s_{}", i + 1)));
                }
            }
            for (j, b) in g.iter().enumerate().skip(i + 2) {
                if a.mul(b) != b.mul(a) {
                    return Err(Error::InvalidRep(format!(
                        "s_{} and s_{} do not commute",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(())
    }

    /// Product of generators along a word of generator indices (0-based).
    pub fn word_matrix(&self, word: &[usize]) -> FpMatrix {
        word.iter()
            .fold(FpMatrix::identity(self.dim, self.p), |acc, &i| acc.mul(&self.generators[i]))
    }

    /// Trace (mod p) of an element of the given cycle type.
    pub fn trace_at(&self, cycle_type: &Partition) -> u32 {
        self.word_matrix(&cycle_word(cycle_type)).trace()
    }

    /// Action on the submodule spanned by an invariant subspace.
    pub fn submodule(&self, sub: &Subspace) -> GroupRep {
        let k = sub.dim();
        let generators = self
            .generators
            .iter()
            .map(|g| {
                let rows: Vec<Vec<u32>> =
                    sub.basis().iter().map(|b| sub.coordinates(&g.vec_mul(b))).collect();
                FpMatrix::from_rows(&rows, k, self.p)
            })
            .collect();
        GroupRep { n: self.n, p: self.p, dim: k, generators }
    }

    /// Action on the quotient by an invariant subspace, in the basis of
    /// standard vectors at the non-pivot columns.
    pub fn quotient(&self, sub: &Subspace) -> GroupRep {
        let free: Vec<usize> = (0..self.dim).filter(|c| !sub.pivots().contains(c)).collect();
        let k = free.len();
        let generators = self
            .generators
            .iter()
            .map(|g| {
                let rows: Vec<Vec<u32>> = free
                    .iter()
                    .map(|&c| {
                        let mut v = g.row(c).to_vec();
                        sub.reduce(&mut v);
                        free.iter().map(|&f| v[f]).collect()
                    })
                    .collect();
                FpMatrix::from_rows(&rows, k, self.p)
            })
            .collect();
        GroupRep { n: self.n, p: self.p, dim: k, generators }
    }

    /// The same module in the basis given by the rows of `basis` (`B·g·B⁻¹`).
    pub fn change_basis(&self, basis: &FpMatrix) -> Result<GroupRep> {
        let inv = basis
            .inverse()
            .ok_or_else(|| Error::InvalidRep("basis change matrix is singular".into()))?;
        let generators = self.generators.iter().map(|g| basis.mul(g).mul(&inv)).collect();
        Ok(GroupRep { n: self.n, p: self.p, dim: self.dim, generators })
    }

    pub fn direct_sum(&self, other: &GroupRep) -> Result<GroupRep> {
        if self.n != other.n || self.p != other.p {
            return Err(Error::InvalidRep("direct sum of modules for different groups".into()));
        }
        let dim = self.dim + other.dim;
        let generators = self
            .generators
            .iter()
            .zip(&other.generators)
            .map(|(a, b)| {
                let mut m = FpMatrix::zeros(dim, dim, self.p);
                for r in 0..a.rows() {
                    m.row_mut(r)[..self.dim].copy_from_slice(a.row(r));
                }
                for r in 0..b.rows() {
                    m.row_mut(self.dim + r)[self.dim..].copy_from_slice(b.row(r));
                }
                m
            })
            .collect();
        Ok(GroupRep { n: self.n, p: self.p, dim, generators })
    }

    pub fn to_json(&self) -> serde_json::Value {
        let file = RepFile {
            n: self.n,
            p: self.p,
            dim: self.dim,
            generators: self.generators.iter().map(|g| g.data().to_vec()).collect(),
        };
        serde_json::to_value(file).expect("representation serializes")
    }

    pub fn from_json_str(s: &str) -> Result<GroupRep> {
        let file: RepFile = serde_json::from_str(s)?;
        let gens = file
            .generators
            .into_iter()
            .map(|flat| {
                if flat.len() != file.dim * file.dim {
                    return Err(Error::InvalidRep(format!(
                        "generator has {} entries, expected {}",
                        flat.len(),
                        file.dim * file.dim
                    )));
                }
                check_prime(file.p)?;
                Ok(FpMatrix::from_flat(file.dim, file.dim, file.p, flat))
            })
            .collect::<Result<Vec<_>>>()?;
        let rep = GroupRep::new(file.n, file.p, file.dim, gens)?;
        rep.check_relations()?;
        Ok(rep)
    }
}

/// A word in the adjacent transpositions realizing a permutation of the given
/// cycle type: consecutive blocks, each block `s_a s_{a+1} … s_{b-1}`.
pub fn cycle_word(cycle_type: &Partition) -> Vec<usize> {
    let mut word = Vec::new();
    let mut start = 0;
    for &len in cycle_type.parts() {
        word.extend(start..start + len - 1);
        start += len;
    }
    word
}

//! Specht modules realized inside the tabloid space.
//!
//! A standard polytabloid `e_t = Σ_{σ ∈ C_t} sgn(σ)·{σt}` is stored as a
//! sparse integer vector over tabloids. The leading tabloid `{t}` of each
//! standard `t` occurs in `e_t` with coefficient one and in no polytabloid of
//! a standard tableau that `t` dominates, so restricting to the leading
//! tabloids gives an invertible square matrix in every characteristic. That
//! matrix is how images `s_i·e_t` are re-expressed in the standard basis.

use std::collections::HashMap;

use super::fp::{FpMatrix, Subspace};
use super::rep::GroupRep;
use super::Limits;
use crate::error::{check_prime, Error, Result};
use crate::partition::Partition;

/// A tabloid encoded as the row index of each entry `1..=n`.
type Tabloid = Vec<u8>;

/// A standard Young tableau as rows of entries (1-based).
pub type Tableau = Vec<Vec<usize>>;

#[derive(Clone, Debug)]
pub struct SpechtModuleData {
    pub lambda: Partition,
    pub p: u32,
    /// Basis labels, in the order of the rows of every matrix below.
    pub standard_tableaux: Vec<Tableau>,
    pub rep: GroupRep,
    /// `G[t][u] = ⟨e_t, e_u⟩`, the restriction of the tabloid inner product.
    pub gram: FpMatrix,
}

/// Standard Young tableaux of shape `λ`, ordered by recursively placing
/// `1, 2, …` in the topmost admissible row first.
pub fn standard_tableaux(lambda: &Partition) -> Vec<Tableau> {
    fn go(lambda: &Partition, k: usize, cur: &mut Tableau, out: &mut Vec<Tableau>) {
        if k > lambda.size() {
            out.push(cur.clone());
            return;
        }
        for r in 0..lambda.len() {
            let len = cur[r].len();
            if len < lambda.part(r) && (r == 0 || cur[r - 1].len() > len) {
                cur[r].push(k);
                go(lambda, k + 1, cur, out);
                cur[r].pop();
            }
        }
    }
    let mut out = Vec::new();
    let mut cur = vec![Vec::new(); lambda.len()];
    go(lambda, 1, &mut cur, &mut out);
    out
}

fn tabloid_of(t: &Tableau, n: usize) -> Tabloid {
    let mut rows = vec![0u8; n];
    for (r, row) in t.iter().enumerate() {
        for &x in row {
            rows[x - 1] = r as u8;
        }
    }
    rows
}

/// All permutations of `0..k` with their signs.
fn signed_permutations(k: usize) -> Vec<(Vec<usize>, i64)> {
    fn go(k: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<(Vec<usize>, i64)>) {
        if cur.len() == k {
            let mut inversions = 0;
            for i in 0..k {
                for j in i + 1..k {
                    if cur[i] > cur[j] {
                        inversions += 1;
                    }
                }
            }
            out.push((cur.clone(), if inversions % 2 == 0 { 1 } else { -1 }));
            return;
        }
        for v in 0..k {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                go(k, cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(k, &mut Vec::new(), &mut vec![false; k], &mut out);
    out
}

/// The standard polytabloid `e_t` as a sparse vector over tabloids.
fn polytabloid(t: &Tableau, lambda: &Partition, perms: &HashMap<usize, Vec<(Vec<usize>, i64)>>) -> HashMap<Tabloid, i64> {
    let n = lambda.size();
    let conj = lambda.conjugate();
    let columns: Vec<Vec<usize>> = (0..conj.len())
        .map(|j| (0..conj.part(j)).map(|r| t[r][j]).collect())
        .collect();
    let mut out = HashMap::new();
    let mut choice = vec![0usize; columns.len()];
    let base = tabloid_of(t, n);
    loop {
        let mut tab = base.clone();
        let mut sign = 1;
        for (col, &c) in columns.iter().zip(&choice) {
            let (perm, s) = &perms[&col.len()][c];
            sign *= s;
            for (i, &x) in col.iter().enumerate() {
                tab[x - 1] = perm[i] as u8;
            }
        }
        *out.entry(tab).or_insert(0) += sign;
        // odometer over the column group
        let mut j = 0;
        loop {
            if j == columns.len() {
                return out;
            }
            choice[j] += 1;
            if choice[j] < perms[&columns[j].len()].len() {
                break;
            }
            choice[j] = 0;
            j += 1;
        }
    }
}

/// Builds `S^λ` over `F_p` with its Gram form, using the default size limit.
pub fn build_specht(lambda: &Partition, p: u32) -> Result<SpechtModuleData> {
    build_specht_with(lambda, p, &Limits::default())
}

pub fn build_specht_with(lambda: &Partition, p: u32, limits: &Limits) -> Result<SpechtModuleData> {
    check_prime(p)?;
    let n = lambda.size();
    if n > limits.max_specht_n {
        return Err(Error::SizeLimit { what: "Specht module degree", size: n, limit: limits.max_specht_n });
    }
    let tableaux = standard_tableaux(lambda);
    let d = tableaux.len();
    let conj = lambda.conjugate();
    let perms: HashMap<usize, Vec<(Vec<usize>, i64)>> =
        conj.parts().iter().map(|&k| (k, signed_permutations(k))).collect();
    let polys: Vec<HashMap<Tabloid, i64>> = tableaux.iter().map(|t| polytabloid(t, lambda, &perms)).collect();
    let leads: HashMap<Tabloid, usize> =
        tableaux.iter().enumerate().map(|(i, t)| (tabloid_of(t, n), i)).collect();

    let mut lead_rows = vec![vec![0i64; d]; d];
    for (i, e) in polys.iter().enumerate() {
        for (tab, &c) in e {
            if let Some(&j) = leads.get(tab) {
                lead_rows[i][j] = c;
            }
        }
    }
    let lead = FpMatrix::from_i64_rows(&lead_rows, d, p);
    let lead_inv = lead.inverse().expect("leading-tabloid matrix is unitriangular");

    let generators = (0..n.saturating_sub(1))
        .map(|i| {
            let images: Vec<Vec<i64>> = polys
                .iter()
                .map(|e| {
                    let mut x = vec![0i64; d];
                    for (tab, &c) in e {
                        let mut moved = tab.clone();
                        moved.swap(i, i + 1);
                        if let Some(&j) = leads.get(&moved) {
                            x[j] += c;
                        }
                    }
                    x
                })
                .collect();
            FpMatrix::from_i64_rows(&images, d, p).mul(&lead_inv)
        })
        .collect();

    let mut gram_rows = vec![vec![0i64; d]; d];
    for i in 0..d {
        for j in i..d {
            let (small, large) = if polys[i].len() <= polys[j].len() {
                (&polys[i], &polys[j])
            } else {
                (&polys[j], &polys[i])
            };
            let v: i64 = small.iter().filter_map(|(t, &c)| large.get(t).map(|&c2| c * c2)).sum();
            gram_rows[i][j] = v;
            gram_rows[j][i] = v;
        }
    }
    let gram = FpMatrix::from_i64_rows(&gram_rows, d, p);
    let rep = GroupRep::new(n, p, d, generators)?;
    Ok(SpechtModuleData { lambda: lambda.clone(), p, standard_tableaux: tableaux, rep, gram })
}

impl SpechtModuleData {
    pub fn dim(&self) -> usize {
        self.rep.dim()
    }

    pub fn gram_rank(&self) -> usize {
        self.gram.rank()
    }

    /// The radical `S^{λ⊥}` of the Gram form, an invariant subspace.
    pub fn radical(&self) -> Subspace {
        Subspace::from_rows_of(&self.gram.left_kernel())
    }
}

pub fn gram_rank(data: &SpechtModuleData) -> usize {
    data.gram_rank()
}

/// `D^μ = S^μ / S^{μ⊥}` for `p`-regular `μ`.
pub fn build_simple(mu: &Partition, p: u32) -> Result<GroupRep> {
    build_simple_with(mu, p, &Limits::default())
}

pub fn build_simple_with(mu: &Partition, p: u32, limits: &Limits) -> Result<GroupRep> {
    check_prime(p)?;
    if !mu.is_p_regular(p) {
        return Err(Error::PSingular { lambda: mu.clone(), p });
    }
    let data = build_specht_with(mu, p, limits)?;
    Ok(data.rep.quotient(&data.radical()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn tableaux_count_matches_hook_formula() {
        for lambda in crate::partition::partitions_up_to(7) {
            assert_eq!(standard_tableaux(&lambda).len() as u64, lambda.hook_dimension(), "{lambda}");
        }
    }

    #[test]
    fn standard_rep_mod_three() {
        let data = build_specht(&p("2,1"), 3).unwrap();
        assert_eq!(data.dim(), 2);
        assert_eq!(data.gram_rank(), 1);
        data.rep.check_relations().unwrap();
    }

    #[test]
    fn trivial_specht() {
        let data = build_specht(&p("5"), 7).unwrap();
        assert_eq!(data.dim(), 1);
        assert_eq!(data.gram, FpMatrix::identity(1, 7));
        assert_eq!(data.rep, GroupRep::trivial(5, 7));
    }

    #[test]
    fn hook_specht_mod_five() {
        let data = build_specht(&p("4,1"), 5).unwrap();
        assert_eq!(data.dim(), 4);
        assert_eq!(data.gram_rank(), 3);
        assert_eq!(build_simple(&p("4,1"), 5).unwrap().dim(), 3);
        assert_eq!(build_simple(&p("5"), 5).unwrap(), GroupRep::trivial(5, 5));
    }

    #[test]
    fn gram_examples() {
        assert_eq!(build_specht(&p("1,1,1"), 3).unwrap().gram_rank(), 0);
        assert_eq!(build_specht(&p("2,1"), 5).unwrap().gram_rank(), 2);
    }

    #[test]
    fn simple_of_hook_mod_three_is_sign() {
        let d = build_simple(&p("2,1"), 3).unwrap();
        assert_eq!(d, GroupRep::sign(3, 3));
    }

    #[test]
    fn singular_and_oversized_inputs() {
        assert!(matches!(build_simple(&p("1,1,1"), 3), Err(Error::PSingular { .. })));
        assert!(matches!(build_specht(&p("5,4"), 5), Err(Error::SizeLimit { .. })));
        assert!(build_specht(&p("2"), 4).is_err());
    }

    #[test]
    fn gram_is_invariant() {
        for lambda in crate::partition::partitions_up_to(6) {
            let data = build_specht(&lambda, 3).unwrap();
            data.rep.check_relations().unwrap();
            for g in data.rep.generators() {
                assert_eq!(g.mul(&data.gram).mul(&g.transpose()), data.gram, "{lambda}");
            }
        }
    }
}

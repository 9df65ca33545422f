//! MeatAxe-style composition-factor chopping.
//!
//! Random elements of the group algebra are built as short straight-line
//! programs over the generators. For each eigenvalue `a ∈ F_p` of such an
//! element `A`, a kernel vector of `A - a` is spun up under the generators and
//! a kernel vector of `Aᵀ - a` under the transposed generators. A proper
//! result splits the module. When `A - a` has a one-dimensional kernel and
//! both spins fill the space, Norton's criterion certifies irreducibility.
//! `F_p` splits every `S_n`-module, so no field extensions are needed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::fp::{FpMatrix, Subspace};
use super::rep::GroupRep;
use super::Limits;
use crate::error::{Error, Result};

/// One step of a straight-line program over the generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Instr {
    Identity,
    Gen(usize),
    Mul(usize, usize),
    /// `a + c·b`
    Lin(usize, u32, usize),
}

/// An algebra element together with the eigenvalue whose eigenspace is a
/// line; this pins down a canonical vector in an irreducible module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeakWord {
    program: Vec<Instr>,
    eigenvalue: u32,
}

impl PeakWord {
    pub fn eigenvalue(&self) -> u32 {
        self.eigenvalue
    }

    /// Evaluates the program on a module; the last instruction is the result.
    pub fn evaluate(&self, rep: &GroupRep) -> FpMatrix {
        let mut vals: Vec<FpMatrix> = Vec::with_capacity(self.program.len());
        for ins in &self.program {
            let v = match *ins {
                Instr::Identity => FpMatrix::identity(rep.dim(), rep.p()),
                Instr::Gen(i) => rep.generators()[i].clone(),
                Instr::Mul(a, b) => vals[a].mul(&vals[b]),
                Instr::Lin(a, c, b) => vals[a].add_scaled(c, &vals[b]),
            };
            vals.push(v);
        }
        vals.pop().unwrap_or_else(|| FpMatrix::identity(rep.dim(), rep.p()))
    }

    /// The nullspace of `A - a` on `rep`.
    fn kernel(&self, rep: &GroupRep) -> FpMatrix {
        self.evaluate(rep).minus_scalar(self.eigenvalue).left_kernel()
    }
}

/// A module that has passed the irreducibility test, with its witness.
#[derive(Clone, Debug)]
pub struct IrreducibleRep {
    rep: GroupRep,
    peak: PeakWord,
}

impl IrreducibleRep {
    pub fn rep(&self) -> &GroupRep {
        &self.rep
    }

    pub fn dim(&self) -> usize {
        self.rep.dim()
    }

    pub fn peak(&self) -> &PeakWord {
        &self.peak
    }

    pub fn into_rep(self) -> GroupRep {
        self.rep
    }
}

enum Outcome {
    Split(Subspace),
    Irreducible(PeakWord),
}

/// Composition factors of `rep` with the default limits.
pub fn chop(rep: &GroupRep, seed: u64) -> Result<Vec<IrreducibleRep>> {
    chop_with(rep, seed, &Limits::default())
}

/// Composition factors, ordered by dimension and then by discovery order.
pub fn chop_with(rep: &GroupRep, seed: u64, limits: &Limits) -> Result<Vec<IrreducibleRep>> {
    if rep.dim() > limits.max_chop_dim {
        return Err(Error::SizeLimit { what: "module dimension for chopping", size: rep.dim(), limit: limits.max_chop_dim });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pending = vec![rep.clone()];
    let mut factors = Vec::new();
    while let Some(m) = pending.pop() {
        if m.dim() == 0 {
            continue;
        }
        match split_or_certify(&m, &mut rng, limits.max_trials)? {
            Outcome::Split(sub) => {
                pending.push(m.quotient(&sub));
                pending.push(m.submodule(&sub));
            }
            Outcome::Irreducible(peak) => factors.push(IrreducibleRep { rep: m, peak }),
        }
    }
    factors.sort_by_key(|f| f.dim());
    Ok(factors)
}

/// Certifies that `rep` is irreducible; errors if it splits.
pub fn certify(rep: &GroupRep, seed: u64) -> Result<IrreducibleRep> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match split_or_certify(rep, &mut rng, Limits::default().max_trials)? {
        Outcome::Irreducible(peak) => Ok(IrreducibleRep { rep: rep.clone(), peak }),
        Outcome::Split(_) => Err(Error::NotCertified),
    }
}

fn random_vector_in(rows: &FpMatrix, rng: &mut ChaCha8Rng) -> Vec<u32> {
    let p = rows.p() as u64;
    loop {
        let mut v = vec![0u64; rows.cols()];
        for r in 0..rows.rows() {
            let c = rng.gen_range(0..p);
            for (x, &y) in v.iter_mut().zip(rows.row(r)) {
                *x = (*x + c * y as u64) % p;
            }
        }
        if rows.rows() == 0 || v.iter().any(|&x| x != 0) {
            return v.into_iter().map(|x| x as u32).collect();
        }
    }
}

/// Smallest invariant subspace containing `seed`.
pub fn spin(seed: &[u32], gens: &[FpMatrix], p: u32) -> Subspace {
    let dim = seed.len();
    let mut sub = Subspace::new(dim, p);
    let mut queue = Vec::new();
    if sub.insert(seed) {
        queue.push(seed.to_vec());
    }
    while let Some(v) = queue.pop() {
        if sub.dim() == dim {
            break;
        }
        for g in gens {
            let w = g.vec_mul(&v);
            if sub.insert(&w) {
                queue.push(w);
            }
        }
    }
    sub
}

fn split_or_certify(rep: &GroupRep, rng: &mut ChaCha8Rng, max_trials: usize) -> Result<Outcome> {
    let d = rep.dim();
    let p = rep.p();
    if d == 1 {
        return Ok(Outcome::Irreducible(PeakWord { program: vec![Instr::Identity], eigenvalue: 1 % p }));
    }
    let gens = rep.generators();
    if gens.is_empty() {
        // S_0 and S_1 act trivially: every line is a submodule
        let mut sub = Subspace::new(d, p);
        let mut e = vec![0; d];
        e[0] = 1;
        sub.insert(&e);
        return Ok(Outcome::Split(sub));
    }
    let transposed: Vec<FpMatrix> = gens.iter().map(|g| g.transpose()).collect();

    // a random walk through group elements, accumulated into a sum; plain
    // group elements have large eigenspaces and rarely certify anything
    let ngens = gens.len();
    let mut program: Vec<Instr> = (0..ngens).map(Instr::Gen).collect();
    let mut word = 0;
    let mut word_val = gens[0].clone();
    let mut acc = 0;
    let mut acc_val = gens[0].clone();

    for trial in 0..max_trials {
        let g = rng.gen_range(0..ngens);
        word_val = word_val.mul(&gens[g]);
        program.push(Instr::Mul(word, g));
        word = program.len() - 1;
        let c = rng.gen_range(1..p.max(2)) % p;
        if trial % 12 == 11 {
            // restart the sum now and then
            let h = rng.gen_range(0..ngens);
            acc_val = gens[h].add_scaled(c, &word_val);
            program.push(Instr::Lin(h, c, word));
        } else {
            acc_val = acc_val.add_scaled(c, &word_val);
            program.push(Instr::Lin(acc, c, word));
        }
        acc = program.len() - 1;
        let idx = acc;
        let elem = &acc_val;
        let cp = elem.charpoly();
        let roots: Vec<u32> = (0..p).filter(|&x| super::fp::eval_poly(&cp, x, p) == 0).collect();
        for a in roots {
            let shifted = elem.minus_scalar(a);
            let kernel = shifted.left_kernel();
            let v = random_vector_in(&kernel, rng);
            let sub = spin(&v, gens, p);
            if sub.dim() > 0 && sub.dim() < d {
                return Ok(Outcome::Split(sub));
            }
            let dual_kernel = shifted.right_kernel();
            let w = random_vector_in(&dual_kernel, rng);
            let dual = spin(&w, &transposed, p);
            if dual.dim() > 0 && dual.dim() < d {
                // the annihilator of an invariant subspace of the dual is invariant
                let ann = dual.to_matrix().right_kernel();
                return Ok(Outcome::Split(Subspace::from_rows_of(&ann)));
            }
            if kernel.rows() == 1 {
                return Ok(Outcome::Irreducible(PeakWord { program: prune(&program, idx), eigenvalue: a }));
            }
        }
    }
    Err(Error::InternalLimit(format!(
        "no splitting or certifying element found in {max_trials} trials (dim {d})"
    )))
}

/// Keeps only the instructions the last one depends on, renumbered.
fn prune(program: &[Instr], last: usize) -> Vec<Instr> {
    let mut needed = vec![false; last + 1];
    needed[last] = true;
    for i in (0..=last).rev() {
        if !needed[i] {
            continue;
        }
        match program[i] {
            Instr::Mul(a, b) | Instr::Lin(a, _, b) => {
                needed[a] = true;
                needed[b] = true;
            }
            Instr::Identity | Instr::Gen(_) => {}
        }
    }
    let mut remap = vec![usize::MAX; last + 1];
    let mut out = Vec::new();
    for i in 0..=last {
        if !needed[i] {
            continue;
        }
        let ins = match program[i] {
            Instr::Mul(a, b) => Instr::Mul(remap[a], remap[b]),
            Instr::Lin(a, c, b) => Instr::Lin(remap[a], c, remap[b]),
            other => other,
        };
        remap[i] = out.len();
        out.push(ins);
    }
    out
}

/// Spins `seed` breadth-first, recording which (basis vector, generator)
/// pair produced each new basis vector.
fn standard_basis(seed: &[u32], gens: &[FpMatrix], p: u32) -> (Vec<Vec<u32>>, Vec<(usize, usize)>) {
    let mut sub = Subspace::new(seed.len(), p);
    sub.insert(seed);
    let mut basis = vec![seed.to_vec()];
    let mut script = Vec::new();
    let mut i = 0;
    while i < basis.len() {
        for (j, g) in gens.iter().enumerate() {
            let w = g.vec_mul(&basis[i]);
            if sub.insert(&w) {
                basis.push(w);
                script.push((i, j));
            }
        }
        i += 1;
    }
    (basis, script)
}

/// Module isomorphism between two certified irreducible modules.
pub fn is_isomorphic(a: &IrreducibleRep, b: &IrreducibleRep) -> Result<bool> {
    let (ra, rb) = (&a.rep, &b.rep);
    if ra.n() != rb.n() || ra.p() != rb.p() || ra.dim() != rb.dim() {
        return Ok(false);
    }
    let d = ra.dim();
    let p = ra.p();
    let ka = a.peak.kernel(ra);
    if ka.rows() != 1 {
        return Err(Error::NotCertified);
    }
    let kb = a.peak.kernel(rb);
    if kb.rows() != 1 {
        return Ok(false);
    }
    let (basis_a, script) = standard_basis(ka.row(0), ra.generators(), p);
    if basis_a.len() != d {
        return Err(Error::NotCertified);
    }
    let mut basis_b = vec![kb.row(0).to_vec()];
    for &(i, j) in &script {
        let w = rb.generators()[j].vec_mul(&basis_b[i]);
        basis_b.push(w);
    }
    let sa = FpMatrix::from_rows(&basis_a, d, p);
    let sb = FpMatrix::from_rows(&basis_b, d, p);
    if sb.rank() != d {
        return Ok(false);
    }
    let ma = ra.change_basis(&sa)?;
    let mb = rb.change_basis(&sb)?;
    Ok(ma.generators() == mb.generators())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modular::specht::{build_simple, build_specht};
    use crate::partition::Partition;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn dims(factors: &[IrreducibleRep]) -> Vec<usize> {
        factors.iter().map(|f| f.dim()).collect()
    }

    #[test]
    fn permutation_module_mod_five() {
        let rep = GroupRep::permutation(5, 5);
        let factors = chop(&rep, 0).unwrap();
        assert_eq!(dims(&factors), vec![1, 1, 3]);
        let triv = certify(&GroupRep::trivial(5, 5), 0).unwrap();
        for f in &factors[..2] {
            assert!(is_isomorphic(f, &triv).unwrap());
        }
        let d41 = certify(&build_simple(&p("4,1"), 5).unwrap(), 0).unwrap();
        assert!(is_isomorphic(&factors[2], &d41).unwrap());
    }

    #[test]
    fn simple_chops_to_itself() {
        let rep = build_simple(&p("4,1"), 5).unwrap();
        let factors = chop(&rep, 3).unwrap();
        assert_eq!(factors.len(), 1);
        assert_eq!(factors[0].rep(), &rep);
    }

    #[test]
    fn standard_rep_mod_three_has_two_factors() {
        let data = build_specht(&p("2,1"), 3).unwrap();
        let factors = chop(&data.rep, 0).unwrap();
        assert_eq!(dims(&factors), vec![1, 1]);
        let triv = certify(&GroupRep::trivial(3, 3), 0).unwrap();
        let sign = certify(&GroupRep::sign(3, 3), 0).unwrap();
        let n_triv = factors.iter().filter(|f| is_isomorphic(f, &triv).unwrap()).count();
        let n_sign = factors.iter().filter(|f| is_isomorphic(f, &sign).unwrap()).count();
        assert_eq!((n_triv, n_sign), (1, 1));
    }

    #[test]
    fn trivial_and_sign_differ() {
        let triv = certify(&GroupRep::trivial(3, 3), 0).unwrap();
        let sign = certify(&GroupRep::sign(3, 3), 0).unwrap();
        assert!(!is_isomorphic(&triv, &sign).unwrap());
        assert!(is_isomorphic(&sign, &sign).unwrap());
    }

    #[test]
    fn isomorphism_survives_basis_change() {
        let rep = build_simple(&p("4,1"), 5).unwrap();
        let basis = FpMatrix::from_flat(3, 3, 5, vec![1, 2, 0, 0, 1, 3, 1, 0, 1]);
        let conj = rep.change_basis(&basis).unwrap();
        conj.check_relations().unwrap();
        let a = certify(&rep, 0).unwrap();
        let b = certify(&conj, 7).unwrap();
        assert!(is_isomorphic(&a, &b).unwrap());
        assert!(is_isomorphic(&b, &a).unwrap());
    }

    #[test]
    fn reducible_module_is_not_certified() {
        assert!(matches!(certify(&GroupRep::permutation(4, 3), 0), Err(Error::NotCertified)));
    }

    #[test]
    fn trivial_group_modules_split_into_lines() {
        let rep = GroupRep::new(1, 3, 3, vec![]).unwrap();
        assert_eq!(dims(&chop(&rep, 0).unwrap()), vec![1, 1, 1]);
    }

    #[test]
    fn chop_respects_dimension_limit() {
        let limits = Limits { max_chop_dim: 3, ..Limits::default() };
        let err = chop_with(&GroupRep::permutation(5, 5), 0, &limits).unwrap_err();
        assert!(matches!(err, Error::SizeLimit { .. }));
    }

    #[test]
    fn factor_dimensions_are_seed_independent() {
        let rep = build_specht(&p("3,2,1"), 2).unwrap().rep;
        let a = dims(&chop(&rep, 1).unwrap());
        let b = dims(&chop(&rep, 99).unwrap());
        assert_eq!(a, b);
        assert_eq!(a.iter().sum::<usize>(), 16);
    }
}

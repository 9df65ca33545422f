//! Acceptance suite: one PASS/FAIL line per criterion.

mod common;

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{binom, class, naive_lr, padded_dim, part, permutation_module_simples};
use virtual_specht::characters::{polynomiality_check, stable_character, CycleType};
use virtual_specht::fi::{
    periodicity_scan, predicted_stable_class, reference_comparisons, verify_stability, FIModel, Method, MethodChoice,
};
use virtual_specht::grothendieck::{singular_specht_expansion, to_simples, verify_zero_finite, Basis, FiniteClass};
use virtual_specht::lr::lr_coefficient;
use virtual_specht::modular::{build_specht, chop, DecompositionStore, SimpleCatalog};
use virtual_specht::partition::{partitions_of, partitions_up_to};
use virtual_specht::stable::{induced_zero, regularize, regularize_with, TieBreak, VirtualSpechtExpr};
use virtual_specht::Partition;

type Check = fn(&DecompositionStore) -> Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn labelled(map: &BTreeMap<Partition, i64>) -> BTreeMap<String, i64> {
    map.iter().map(|(k, v)| (k.machine(), *v)).collect()
}

fn dim_sum(coeffs: &BTreeMap<Partition, i64>, n: usize) -> i64 {
    coeffs.iter().map(|(l, c)| c * padded_dim(l, n) as i64).sum()
}

fn example_one(store: &DecompositionStore) -> Result<String, String> {
    let mut levels = 0;
    for p in [2, 3, 5] {
        let model = ok(FIModel::example1(p))?;
        let report = ok(verify_stability(&model, 3..=8, store, 0, MethodChoice::Force(Method::Chop)))?;
        ensure!(report.prediction.coeffs() == &class(&[("1", 1), ("", 1)]), "prediction {:?}", report.prediction);
        for level in &report.levels {
            let expected = labelled(&permutation_module_simples(level.n, p));
            ensure!(level.pass, "p={p} n={}: {:?}", level.n, level);
            ensure!(level.observed.as_ref() == Some(&expected), "p={p} n={}: chop gave {:?}", level.n, level.observed);
            ensure!(level.expected.as_ref() == Some(&expected), "p={p} n={}: prediction gave {:?}", level.n, level.expected);
            levels += 1;
        }
    }
    Ok(format!("{levels} levels match the case split exactly"))
}

fn example_three(store: &DecompositionStore) -> Result<String, String> {
    let model = FIModel::example3();
    let pred = ok(predicted_stable_class(&model, store, 0))?;
    ensure!(pred.coeffs() == &class(&[("1,1,1", 1), ("1,1", 1)]), "prediction {:?}", pred);
    let reg = ok(regularize(&pred, store))?.expr;
    let expected = class(&[("1,1", 1), ("2,1", 1), ("3", -1), ("", -1)]);
    ensure!(reg.coeffs() == &expected, "regularized {:?}", reg);
    let dims: Vec<i64> = ["2,1", "1,1", "3", ""].iter().map(|s| padded_dim(&part(s), 6) as i64).collect();
    ensure!(dims == vec![16, 10, 5, 1], "padded dimensions {dims:?}");
    ensure!(dim_sum(reg.coeffs(), 6) == 20 && binom(6, 3) == 20, "dimension identity at n=6");
    let report = ok(verify_stability(&model, 4..=8, store, 0, MethodChoice::Auto))?;
    ensure!(report.all_pass(), "verification {:?}", report.levels);
    ensure!(report.levels.iter().all(|l| l.method == Method::Chop), "expected the chop method throughout");
    let cmp = ok(reference_comparisons(3, 3, store, 0))?;
    let flagged = cmp.iter().find(|c| c.stage == "regularized").ok_or("no regularized comparison")?;
    ensure!(!flagged.agrees() && flagged.difference() == class(&[("", -1)]), "deviation not flagged: {flagged:?}");
    ensure!((flagged.derived_dim, flagged.reference_dim) == (20, 21), "dimensions {flagged:?}");
    Ok("prediction, regularization, n=6 dimension 20, chop at n=4..8, deviation flagged".into())
}

fn example_two(store: &DecompositionStore) -> Result<String, String> {
    let model = FIModel::example2();
    let pred = ok(predicted_stable_class(&model, store, 0))?;
    let expected = class(&[("4,1", 1), ("3,1", 1), ("2,1", 1), ("1,1", 1), ("5", -1), ("", -1)]);
    ensure!(pred.coeffs() == &expected, "prediction {:?}", pred);
    let dims: Vec<u64> = ["4,1", "3,1", "2,1", "1,1", "5", ""].iter().map(|s| padded_dim(&part(s), 10)).collect();
    ensure!(dims == vec![288, 315, 160, 36, 42, 1], "padded dimensions {dims:?}");
    ensure!(dim_sum(pred.coeffs(), 10) == 756 && binom(10, 5) * 3 == 756, "dimension identity at n=10");
    let report = ok(verify_stability(&model, 10..=14, store, 0, MethodChoice::Auto))?;
    ensure!(report.all_pass(), "verification {:?}", report.levels);
    ensure!(report.levels.iter().all(|l| l.method == Method::Character), "expected the character method");
    for n in 10..=14 {
        ensure!(CycleType::all_p_regular(n, 5).iter().all(|c| c.is_p_regular(5)), "class filter");
    }
    let cmp = ok(reference_comparisons(2, 5, store, 0))?;
    ensure!(!cmp[0].agrees() && cmp[0].difference() == class(&[("", -1)]), "deviation not flagged: {:?}", cmp[0]);
    ensure!((cmp[0].derived_dim, cmp[0].reference_dim, cmp[0].module_dim) == (756, 757, 756), "dimensions {:?}", cmp[0]);
    Ok("6-term prediction, n=10 dimension 756, characters agree at n=10..14, deviation flagged".into())
}

fn random_expr(rng: &mut ChaCha8Rng, symbols: &[Partition], p: u32) -> VirtualSpechtExpr {
    let mut coeffs = BTreeMap::new();
    for _ in 0..rng.gen_range(1..=4) {
        let lambda = symbols[rng.gen_range(0..symbols.len())].clone();
        let c = [-3, -2, -1, 1, 2, 3][rng.gen_range(0..6)];
        *coeffs.entry(lambda).or_insert(0) += c;
    }
    VirtualSpechtExpr::from_terms(coeffs, p).unwrap()
}

fn elimination_properties(store: &DecompositionStore) -> Result<String, String> {
    let symbols = partitions_up_to(5);
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut steps = 0;
    for i in 0..200 {
        let p = [2, 3, 5][i % 3];
        let input = random_expr(&mut rng, &symbols, p);
        let r = ok(regularize(&input, store))?;
        let out = &r.expr;
        ensure!(out.is_p_regular(), "{input:?} gave singular {out:?}");
        let again = ok(regularize(out, store))?;
        ensure!(&again.expr == out && again.steps.is_empty(), "not idempotent on {out:?}");
        // a relation in the mod-p Grothendieck group fixes the Brauer character,
        // i.e. the values on p-regular classes
        let t = out.threshold();
        for n in t..t + 5 {
            for rho in CycleType::all_p_regular(n, p) {
                let a = ok(stable_character(&input, n, &rho))?;
                let b = ok(stable_character(out, n, &rho))?;
                ensure!(a == b, "{input:?}: characters differ at n={n}, {rho}");
            }
        }
        let mut combo = ok(VirtualSpechtExpr::zero(p))?;
        for s in &r.steps {
            combo = ok(combo.add(&s.certificate.stable_form.scale(s.multiplier)))?;
        }
        ensure!(ok(input.sub(out))?.coeffs() == combo.coeffs(), "certificate equation fails for {input:?}");
        for n in t..=8 {
            let d = ok(store.get(n, p))?;
            let a = ok(to_simples(&ok(FiniteClass::new(n, p, Basis::Specht, ok(input.specialize(n))?))?, &d))?;
            let b = ok(to_simples(&ok(FiniteClass::new(n, p, Basis::Specht, ok(out.specialize(n))?))?, &d))?;
            ensure!(a == b, "{input:?}: simple multiplicities differ at n={n}");
        }
        for seed in 1..=3 {
            let alt = ok(regularize_with(&input, store, TieBreak::Seeded(seed)))?;
            ensure!(alt.expr.coeffs() == out.coeffs(), "{input:?}: tie-break seed {seed} changed the output");
        }
        steps += r.steps.len();
    }
    Ok(format!("200 expressions, {steps} elimination steps"))
}

fn induced_zeros(store: &DecompositionStore) -> Result<String, String> {
    let mut checks = 0;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for p in [2, 3, 5] {
        for m in 1..=5 {
            let d = ok(store.get(m, p))?;
            let mut basis = Vec::new();
            for lambda in partitions_of(m).into_iter().filter(|l| !l.is_p_regular(p)) {
                let mut rel: BTreeMap<Partition, i64> =
                    ok(singular_specht_expansion(&lambda, m, p, &d))?.into_iter().map(|(k, v)| (k, -v)).collect();
                rel.insert(lambda, 1);
                basis.push(rel);
            }
            // the relations above span the kernel; add a few random combinations
            let mut relations = basis.clone();
            for _ in 0..3 {
                if basis.is_empty() {
                    break;
                }
                let mut combo: BTreeMap<Partition, i64> = BTreeMap::new();
                for rel in &basis {
                    let k = rng.gen_range(-2..=2);
                    for (l, c) in rel {
                        *combo.entry(l.clone()).or_insert(0) += k * c;
                    }
                }
                combo.retain(|_, v| *v != 0);
                relations.push(combo);
            }
            // the kernel has the rank predicted by the number of singular partitions
            let kernel_rank = partitions_of(m).len() - d.cols().len();
            ensure!(basis.len() == kernel_rank, "kernel rank at m={m}, p={p}");
            for rel in relations {
                ensure!(ok(verify_zero_finite(&rel, m, p, &d))?, "not a relation at m={m}: {rel:?}");
                let cert = ok(induced_zero(&rel, m, p, store))?;
                for n in (2 * m + 1)..=8 {
                    let dn = ok(store.get(n, p))?;
                    let spec = ok(cert.stable_form.specialize(n))?;
                    ensure!(ok(verify_zero_finite(&spec, n, p, &dn))?, "induced form fails at n={n}, m={m}, p={p}");
                    checks += 1;
                }
            }
        }
    }
    Ok(format!("{checks} level checks of induced relations"))
}

fn decomposition_invariants(store: &DecompositionStore) -> Result<String, String> {
    let mut matrices = 0;
    for p in [2, 3, 5, 7] {
        for n in 1..=7 {
            let d = ok(store.get(n, p))?;
            let catalog = ok(SimpleCatalog::new(n, p, store.limits(), 0))?;
            let mut gram: BTreeMap<Partition, usize> = BTreeMap::new();
            for lambda in partitions_of(n) {
                let data = ok(build_specht(&lambda, p))?;
                let rank = data.gram_rank();
                ensure!((rank > 0) == lambda.is_p_regular(p), "gram rank {rank} for {lambda} at p={p}");
                gram.insert(lambda.clone(), rank);
                if rank > 0 {
                    let factors = ok(chop(&data.rep, 0))?;
                    let labels = ok(catalog.identify_all(&factors))?;
                    let head = factors.iter().find(|f| catalog.identify(f).ok().as_ref() == Some(&lambda));
                    ensure!(head.map(|f| f.dim()) == Some(rank), "D^{lambda} factor of S^{lambda} at p={p}: {labels:?}");
                }
            }
            for lambda in d.rows() {
                let mut dim = 0u64;
                for mu in d.cols() {
                    let e = d.entry(lambda, mu);
                    if lambda == mu {
                        ensure!(e == 1, "d_{{λλ}} = {e} for {lambda}, p={p}");
                    }
                    if e != 0 {
                        ensure!(ok(mu.dominates(lambda))?, "d[{lambda}][{mu}] = {e} outside dominance, p={p}");
                    }
                    dim += e as u64 * gram[mu] as u64;
                }
                ensure!(dim == common::syt_count(lambda.parts()), "dimension identity for {lambda}, p={p}");
            }
            matrices += 1;
        }
    }
    Ok(format!("{matrices} matrices"))
}

fn lr_checks(_: &DecompositionStore) -> Result<String, String> {
    let mut compared = 0;
    for lambda in partitions_up_to(5) {
        for mu in partitions_up_to(5) {
            for nu in partitions_of(lambda.size() + mu.size()) {
                let fast = lr_coefficient(&lambda, &mu, &nu);
                let slow = naive_lr(&lambda, &mu, &nu);
                ensure!(fast == slow, "c^{nu}_{{{lambda},{mu}}}: {fast} vs naive {slow}");
                compared += 1;
            }
        }
    }
    let mut pairs = 0;
    for lambda in partitions_up_to(9) {
        for mu in partitions_up_to(9 - lambda.size()) {
            let total = lambda.size() + mu.size();
            let mut dim = 0u64;
            for nu in partitions_of(total) {
                let c = lr_coefficient(&lambda, &mu, &nu);
                ensure!(c == lr_coefficient(&mu, &lambda, &nu), "symmetry fails at {lambda}, {mu}, {nu}");
                dim += c * common::syt_count(nu.parts());
            }
            let expected = binom(total as u64, lambda.size() as u64)
                * common::syt_count(lambda.parts())
                * common::syt_count(mu.parts());
            ensure!(dim == expected, "dimension identity fails for {lambda} x {mu}");
            pairs += 1;
        }
    }
    Ok(format!("{compared} coefficients against the naive enumerator, {pairs} pairs for symmetry and dimension"))
}

fn polynomiality(store: &DecompositionStore) -> Result<String, String> {
    let models = [("example 1", ok(FIModel::example1(3))?), ("example 2", FIModel::example2()), ("example 3", FIModel::example3())];
    let mut checks = 0;
    for (name, model) in models {
        let pred = ok(predicted_stable_class(&model, store, 0))?;
        for fixed in ["", "2", "3"] {
            let fixed = part(fixed);
            let start = pred.threshold().max(fixed.size());
            let len = 8.max(pred.max_symbol_size() + 3);
            let r = ok(polynomiality_check(&pred, &fixed, start..=start + len - 1))?;
            ensure!(r.polynomial, "{name}, fixed cycles {fixed}: not polynomial on {:?}", r.levels);
            ensure!(r.observed_degree.unwrap_or(0) <= r.degree_bound, "{name}: degree above bound");
            checks += 1;
        }
        if name == "example 1" {
            let r = ok(polynomiality_check(&pred, &Partition::empty(), 2..=9))?;
            ensure!(r.polynomial_text() == "n", "example 1 at the identity interpolates to {}", r.polynomial_text());
        }
    }
    Ok(format!("{checks} windows polynomial; example 1 at the identity is n"))
}

fn periodicity(store: &DecompositionStore) -> Result<String, String> {
    let r = ok(periodicity_scan(&ok(FIModel::example1(3))?, 3..=8, store, 0))?;
    ensure!(r.period == 3 && r.conclusive && r.power_of_p, "period {} conclusive {}", r.period, r.conclusive);
    for (n, row) in &r.table {
        let trivial = if n % 3 == 0 { 2 } else { 1 };
        ensure!(row == &class(&[("", trivial), ("1", 1)]), "n={n}: {row:?}");
    }
    Ok("period 3 with the exact case-split table".into())
}

fn main() -> ExitCode {
    let store = DecompositionStore::in_memory();
    let criteria: [(&str, Check); 9] = [
        ("1 permutation modules, p in {2,3,5}, n in [3,8]", example_one),
        ("2 M(S^(1,1,1)) over F_3", example_three),
        ("3 M(D^(4,1)) over F_5", example_two),
        ("4 elimination properties on 200 random expressions", elimination_properties),
        ("5 induced expressions for zero", induced_zeros),
        ("6 decomposition-matrix invariants, n <= 7", decomposition_invariants),
        ("7 Littlewood-Richardson and Pieri", lr_checks),
        ("8 eventual polynomiality", polynomiality),
        ("9 periodicity of the permutation modules at p=3", periodicity),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(|| check(&store)))
            .unwrap_or_else(|e| Err(e.downcast_ref::<String>().cloned().unwrap_or_else(|| "panicked".into())));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("criterion {name}: PASS ({msg}; {secs:.1}s)"),
            Err(msg) => {
                failed += 1;
                println!("criterion {name}: FAIL ({msg}; {secs:.1}s)");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 9 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

mod common;

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use virtual_specht::characters::{brauer_character_of_class, induced_brauer_character, stable_character, CycleType, VirtualCharacter};
use virtual_specht::fi::{evaluate, predicted_stable_class, verify_stability, FIModel, Method, MethodChoice, Summand};
use virtual_specht::grothendieck::{
    regular_inverse, simple_in_regular_spechts, singular_specht_expansion, to_simples, Basis, FiniteClass,
};
use virtual_specht::modular::fp::reduce_i64;
use virtual_specht::modular::DecompositionStore;
use virtual_specht::partition::partitions_of;
use virtual_specht::stable::induced_zero;
use virtual_specht::Partition;

#[test]
fn singular_expansions_strictly_dominate() {
    let store = DecompositionStore::in_memory();
    for p in [2, 3, 5] {
        for m in 1..=7 {
            let d = store.get(m, p).unwrap();
            for lambda in partitions_of(m).into_iter().filter(|l| !l.is_p_regular(p)) {
                let e = singular_specht_expansion(&lambda, m, p, &d).unwrap();
                for nu in e.keys() {
                    assert!(nu != &lambda && nu.dominates(&lambda).unwrap() && nu.is_p_regular(p), "{lambda} -> {nu}, p={p}");
                }
            }
        }
    }
}

#[test]
fn simple_expansions_invert_to_simples() {
    let store = DecompositionStore::in_memory();
    for p in [2, 3, 5, 7] {
        for n in 1..=7 {
            let d = store.get(n, p).unwrap();
            assert_eq!(regular_inverse(&d).len(), d.cols().len());
            for mu in d.cols() {
                let spechts = simple_in_regular_spechts(mu, n, p, &d).unwrap();
                let back = to_simples(&FiniteClass::new(n, p, Basis::Specht, spechts).unwrap(), &d).unwrap();
                assert_eq!(back.coeffs(), &[(mu.clone(), 1)].into_iter().collect::<BTreeMap<_, _>>());
            }
        }
    }
}

#[test]
fn certificates_vanish_on_regular_classes() {
    let store = DecompositionStore::in_memory();
    for p in [2, 3, 5] {
        for m in 1..=4 {
            let d = store.get(m, p).unwrap();
            for lambda in partitions_of(m).into_iter().filter(|l| !l.is_p_regular(p)) {
                let mut rel: BTreeMap<Partition, i64> =
                    singular_specht_expansion(&lambda, m, p, &d).unwrap().into_iter().map(|(k, v)| (k, -v)).collect();
                rel.insert(lambda.clone(), 1);
                let cert = induced_zero(&rel, m, p, &store).unwrap();
                for n in 2 * m + 1..=2 * m + 6 {
                    for rho in CycleType::all_p_regular(n, p) {
                        assert_eq!(stable_character(&cert.stable_form, n, &rho).unwrap(), 0, "{lambda}, n={n}, {rho}");
                    }
                }
            }
        }
    }
}

#[test]
fn brauer_characters_decide_equality() {
    let store = DecompositionStore::in_memory();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for p in [2, 3, 5] {
        for n in 2..=7 {
            let d = store.get(n, p).unwrap();
            let shapes = partitions_of(n);
            let random_class = |rng: &mut ChaCha8Rng| {
                let coeffs: BTreeMap<Partition, i64> =
                    (0..3).map(|_| (shapes[rng.gen_range(0..shapes.len())].clone(), rng.gen_range(-2..=2))).collect();
                FiniteClass::new(n, p, Basis::Specht, coeffs).unwrap()
            };
            for _ in 0..20 {
                let a = random_class(&mut rng);
                // a second class equal to the first in the Grothendieck group, plus sometimes a perturbation
                let mut b_coeffs = a.coeffs().clone();
                let singular: Vec<&Partition> = shapes.iter().filter(|l| !l.is_p_regular(p)).collect();
                if let Some(&l) = singular.first() {
                    for (k, v) in singular_specht_expansion(l, n, p, &d).unwrap() {
                        *b_coeffs.entry(k).or_insert(0) += v;
                    }
                    *b_coeffs.entry(l.clone()).or_insert(0) -= 1;
                }
                let b = if rng.gen_bool(0.5) { FiniteClass::new(n, p, Basis::Specht, b_coeffs).unwrap() } else { random_class(&mut rng) };
                let same_simples = to_simples(&a, &d).unwrap() == to_simples(&b, &d).unwrap();
                let same_brauer = brauer_character_of_class(&a, &d).unwrap() == brauer_character_of_class(&b, &d).unwrap();
                assert_eq!(same_simples, same_brauer, "n={n}, p={p}: {a:?} vs {b:?}");
            }
        }
    }
}

#[test]
fn evaluated_modules_have_induced_characters() {
    // over a large prime the trace determines the integer character value
    let p = 1009;
    let store = DecompositionStore::in_memory();
    for m in 0..=3 {
        for lambda in partitions_of(m) {
            let model = FIModel::new(p, vec![Summand::specht(lambda.clone())]).unwrap();
            let w = VirtualCharacter::of_specht_class(m, &[(lambda.clone(), 1)].into_iter().collect()).unwrap();
            for n in m.max(1)..=7 {
                let rep = evaluate(&model, n, &store).unwrap();
                rep.check_relations().unwrap();
                assert_eq!(rep.dim(), model.dim_at(n, &store).unwrap());
                for rho in CycleType::all(n) {
                    let expected = induced_brauer_character(&w.values, m, n, &rho).unwrap();
                    assert_eq!(rep.trace_at(rho.lengths()), reduce_i64(expected, p), "{lambda}, n={n}, {rho}");
                }
            }
        }
    }
}

#[test]
fn specht_models_predict_strip_removals() {
    let store = DecompositionStore::in_memory();
    for m in 0..=5 {
        for lambda in partitions_of(m) {
            let model = FIModel::new(5, vec![Summand::specht(lambda.clone())]).unwrap();
            let e = predicted_stable_class(&model, &store, 0).unwrap();
            let expected: BTreeMap<Partition, i64> = lambda.horizontal_strip_removals().into_iter().map(|mu| (mu, 1)).collect();
            assert_eq!(e.coeffs(), &expected);
        }
    }
}

#[test]
fn small_models_verify_by_chopping() {
    let store = DecompositionStore::in_memory();
    let mut levels = 0;
    for p in [2, 3, 5] {
        for m in 1..=5 {
            let mut summands: Vec<Summand> = partitions_of(m).into_iter().map(Summand::specht).collect();
            summands.extend(partitions_of(m).into_iter().filter(|mu| mu.is_p_regular(p)).map(Summand::simple));
            for s in summands {
                let model = FIModel::new(p, vec![s.clone()]).unwrap();
                let t = predicted_stable_class(&model, &store, 0).unwrap().threshold();
                if t > 8 {
                    let r = verify_stability(&model, t..=t + 1, &store, 0, MethodChoice::Force(Method::Character)).unwrap();
                    assert!(r.all_pass(), "{s} p={p}: {:?}", r.levels);
                    continue;
                }
                let r = verify_stability(&model, t..=8, &store, 0, MethodChoice::Force(Method::Chop)).unwrap();
                assert!(r.all_pass(), "{s} p={p}: {:?}", r.levels);
                levels += r.levels.len();
            }
        }
    }
    assert!(levels > 50);
}

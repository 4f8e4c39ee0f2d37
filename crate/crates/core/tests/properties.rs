use galois_lab::cyclotomic::{build_coherent_roots, restriction};
use galois_lab::field::{make_field, FieldSpec};
use galois_lab::haar::{sample_unit, unit_chi_square};
use galois_lab::interpretation::{code_extension, coded_mul};
use galois_lab::kummer::{artin_schreier_solve, operator_lemma_check, LemmaMode, OperatorInstance};
use galois_lab::numth;
use galois_lab::puiseux::{verify_commutation, verify_tau_automorphism, SeriesRing};
use galois_lab::tournament::{rotate, tournament_holds, TournamentParams};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use statrs::distribution::{ChiSquared, ContinuousCDF};

fn small_field() -> impl Strategy<Value = FieldSpec> {
    prop::sample::select(vec![(2, 3), (3, 2), (5, 2), (7, 1), (2, 4), (3, 3)])
        .prop_map(|(p, n)| make_field(p, n).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(f in small_field(), i in any::<u64>(), j in any::<u64>(), k in any::<u64>()) {
        let q = f.q();
        let (a, b, c) = (f.from_index(i % q), f.from_index(j % q), f.from_index(k % q));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a + &(-&a), f.zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
            prop_assert_eq!(a.pow(q as i64 - 1).unwrap(), f.one());
        }
        // Frobenius is a ring map fixing exactly the prime field
        prop_assert_eq!((&a + &b).frobenius(1), &a.frobenius(1) + &b.frobenius(1));
        prop_assert_eq!((&a * &b).frobenius(1), &a.frobenius(1) * &b.frobenius(1));
        prop_assert_eq!(a.frobenius(1) == a, a.is_prime_subfield());
        prop_assert_eq!(a.frobenius(f.n() as u64), a);
    }

    #[test]
    fn mod_inverse_and_order(m in 2u64..5000, a in 1u64..5000) {
        let a = a % m;
        match numth::mod_inv(a, m) {
            Some(x) => {
                prop_assert_eq!(a * x % m, 1 % m);
                let ord = numth::mult_order(a, m).unwrap();
                let brute = (1..=m).find(|&e| numth::mod_pow(a, e, m) == 1 % m).unwrap();
                prop_assert_eq!(ord, brute);
            }
            None => prop_assert!(num_integer::Integer::gcd(&a, &m) != 1),
        }
    }

    #[test]
    fn exactly_one_rotation(q in prop::sample::select(vec![7u64, 13, 19]), seed in any::<u64>()) {
        let f = make_field(q, 1).unwrap();
        let params = TournamentParams::canonical(&f, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let idx = rand::seq::index::sample(&mut rng, q as usize, 3);
        let x: Vec<_> = idx.iter().map(|i| f.from_index(i as u64)).collect();
        let holding = (0..3)
            .filter(|&k| tournament_holds(&params, &rotate(&x, k)).unwrap())
            .count();
        prop_assert_eq!(holding, 1);
    }

    #[test]
    fn coded_multiplication_is_commutative_and_associative(i in any::<u64>(), j in any::<u64>(), k in any::<u64>()) {
        let ext = code_extension(&make_field(3, 1).unwrap(), 4).unwrap();
        let s = ext.size();
        let (u, v, w) = (ext.from_index(i % s), ext.from_index(j % s), ext.from_index(k % s));
        let uv = coded_mul(&ext, &u, &v).unwrap();
        prop_assert_eq!(&uv, &coded_mul(&ext, &v, &u).unwrap());
        let vw = coded_mul(&ext, &v, &w).unwrap();
        prop_assert_eq!(coded_mul(&ext, &uv, &w).unwrap(), coded_mul(&ext, &u, &vw).unwrap());
        prop_assert_eq!(coded_mul(&ext, &u, &ext.one()).unwrap(), u);
    }

    #[test]
    fn artin_schreier_trace_criterion(f in small_field(), i in any::<u64>()) {
        let b = f.from_index(i % f.q());
        let roots = artin_schreier_solve(&f, &b);
        let solvable = b.trace_to_prime() == 0;
        prop_assert_eq!(roots.len() as u64, if solvable { f.p() } else { 0 });
        for r in &roots {
            prop_assert_eq!(&r.pow(f.p() as i64).unwrap() - r, b.clone());
        }
    }

    #[test]
    fn unit_samples_restrict_coherently(p in prop::sample::select(vec![2u64, 3, 5, 7]), k in 1u32..6, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = sample_unit(p, k, &mut rng);
        prop_assert!(s.u % p != 0);
        for j in 1..=k {
            let r = s.restrict(j);
            prop_assert_eq!(r.u, restriction(s.u, p, k, j).unwrap());
            prop_assert!(r.u % p != 0);
        }
    }

    #[test]
    fn lemma_holds_for_polynomial_operators(
        order in prop::sample::select(vec![4u64, 8, 9, 16, 27]),
        c in (-3i64..4, -3i64..4, -3i64..4),
        a in any::<u64>(),
    ) {
        // P = multiplication by c0, S = c1, T = c2 on a cyclic group: everything commutes
        let inst = OperatorInstance {
            orders: vec![order],
            p: vec![vec![c.0]],
            s: vec![vec![c.1]],
            t: vec![vec![c.2]],
            n_bound: 3,
        };
        for mode in [LemmaMode::Strict, LemmaMode::Relaxed] {
            let v = operator_lemma_check(&inst, &[a % order], 8, mode).unwrap();
            prop_assert!(v.consistent, "{:?}", v);
            if let Some(ok) = v.intermediate_facts {
                prop_assert!(ok);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn puiseux_tau_is_an_automorphism_commuting_with_sigma(seed in any::<u64>()) {
        let system = build_coherent_roots(3, &make_field(7, 1).unwrap(), 2).unwrap();
        let ring = SeriesRing::new(system, 4).unwrap();
        prop_assert!(verify_tau_automorphism(&ring, 40, seed).passed());
        prop_assert!(verify_commutation(&ring, 40, seed).passed());
    }
}

#[test]
fn unit_samples_are_uniform() {
    for (p, k) in [(2u64, 4u32), (3, 3), (5, 2), (7, 2)] {
        let (stat, dof) = unit_chi_square(p, k, 200_000, 7).unwrap();
        let critical = ChiSquared::new(dof as f64).unwrap().inverse_cdf(0.999);
        assert!(stat < critical, "p={p} k={k}: chi^2 = {stat} with {dof} dof exceeds {critical}");
    }
}

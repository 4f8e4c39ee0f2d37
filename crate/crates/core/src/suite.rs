//! The acceptance matrix: eleven pass/fail checks exercising every module at
//! fixed parameters. Used by `galois-lab all` and by the acceptance test target.

use serde_json::json;

use crate::cyclotomic::{build_coherent_roots, product_census, unit_group_structure, unit_order_census};
use crate::field::{make_field, FFElem};
use crate::haar::{self, Event};
use crate::interpretation::{code_extension, galois_matrix, verify_commute, verify_iso_with_direct};
use crate::kummer::operator_lemma_fuzz;
use crate::numth;
use crate::puiseux::{kummer_orbit_order, tau_is_coherent, tau_orbit_size, verify_commutation, SeriesRing};
use crate::report::Check;
use crate::tournament::{
    canonical_omega, mu2n_tournament, power_index, vandermonde_kernel_dim, verify_p_tournament,
    TournamentParams,
};

pub const TOURNAMENT_CASES: [(u64, u64); 5] = [(7, 3), (13, 3), (11, 5), (7, 2), (13, 2)];
pub const MU2N_CASES: [(u64, u32); 2] = [(13, 2), (5, 2)];
pub const INDEX_MAX_Q: u64 = 1 << 12;
pub const INDEX_PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];
pub const VANDERMONDE_PRIMES: [u64; 4] = [2, 3, 5, 7];
pub const HAAR_TRIALS: u64 = 1_000_000;
pub const HAAR_MC_CASES: [(u64, u32); 2] = [(3, 4), (5, 3)];
pub const HAAR_TOLERANCE: f64 = 4.0;
pub const AS_FIELDS: [u64; 6] = [8, 16, 32, 9, 27, 81];
pub const FUZZ_TRIALS: u64 = 10_000;
pub const FUZZ_MAX_GROUP: u64 = 256;
/// `(q, n)` with `q^n ≤ 2^10` (checked exhaustively) and above (sampled).
pub const INTERPRET_CASES: [(u64, usize); 12] = [
    (2, 2), (2, 5), (2, 10), (3, 2), (3, 6), (5, 4), (31, 2), (4, 3),
    (2, 16), (3, 9), (7, 5), (5, 8),
];
pub const GALOIS_CASES: [u64; 3] = [2, 3, 5];
pub const GALOIS_MAX_N: usize = 8;
pub const PUISEUX_SAMPLES: u64 = 1000;

pub fn criterion(n: u32, seed: u64) -> Check {
    match n {
        1 => tournament_exhaustive(),
        2 => mu2n(),
        3 => index_counting(),
        4 => vandermonde(),
        5 => unit_structure(),
        6 => haar_measures(seed),
        7 => artin_schreier(),
        8 => lemma_fuzz(seed),
        9 => interpretation(seed),
        10 => puiseux(seed),
        11 => thread_independence(seed),
        _ => panic!("criteria are numbered 1 to 11"),
    }
}

/// All eleven checks in order.
pub fn acceptance(seed: u64) -> Vec<Check> {
    (1..=11).map(|n| criterion(n, seed)).collect()
}

fn field_q(q: u64) -> crate::field::FieldSpec {
    let (p, n) = numth::prime_power(q).expect("suite fields are prime powers");
    make_field(p, n).expect("suite fields are within the cap")
}

pub fn tournament_exhaustive() -> Check {
    let mut c = Check::new("1 p-tournament exactly-one-rotation");
    for (q, p) in TOURNAMENT_CASES {
        let label = format!("q{q}p{p}");
        match TournamentParams::canonical(&field_q(q), p).and_then(|t| verify_p_tournament(&t)) {
            Ok(r) => c.absorb(&label, &r),
            Err(e) => c.require(false, || format!("{label}: {e}")),
        }
    }
    c
}

pub fn mu2n() -> Check {
    let mut c = Check::new("2 mu_2^n tournament and coset decomposition");
    for (q, n) in MU2N_CASES {
        let label = format!("q{q}n{n}");
        match mu2n_tournament(&field_q(q), n) {
            Ok(t) => {
                c.absorb(&label, &t.report);
                c.require(t.decomposition_ok, || format!("{label}: coset decomposition fails"));
            }
            Err(e) => c.require(false, || format!("{label}: {e}")),
        }
    }
    c
}

pub fn index_counting() -> Check {
    let mut c = Check::new("3 power index [F*:(F*)^p]");
    for q in (2..=INDEX_MAX_Q).filter(|&q| numth::prime_power(q).is_some()) {
        let f = field_q(q);
        for p in INDEX_PRIMES {
            let want = if (q - 1) % p == 0 { p } else { 1 };
            let got = power_index(&f, p);
            c.add_count("pairs", 1);
            c.require(got == want, || format!("q={q} p={p}: index {got}, expected {want}"));
        }
    }
    c
}

pub fn vandermonde() -> Check {
    let mut c = Check::new("4 Vandermonde rank p-1, kernel span(1,...,1)");
    for p in VANDERMONDE_PRIMES {
        let ell = (p + 1..).step_by(p as usize).find(|&l| numth::is_prime(l)).unwrap();
        let f = make_field(ell, 1).unwrap();
        let omega = canonical_omega(&f, p).unwrap();
        let (rank, kernel) = vandermonde_kernel_dim(p, &omega).unwrap();
        let ones = kernel.len() == 1 && kernel[0].iter().all(FFElem::is_one);
        c.add_count("cases", 1);
        c.require(rank as u64 == p - 1 && ones, || {
            format!("p={p} over F_{ell}: rank {rank}, kernel {kernel:?}")
        });
    }
    c
}

pub fn unit_structure() -> Check {
    let mut c = Check::new("5 (Z/p^k)* order census matches structure");
    let mut cases: Vec<(u64, u32)> = [3, 5, 7, 11, 13]
        .into_iter()
        .flat_map(|p| (1..=6).map(move |k| (p, k)))
        .collect();
    cases.extend((3..=8).map(|k| (2, k)));
    for (p, k) in cases {
        let view = unit_group_structure(p, k).unwrap();
        let predicted = product_census(&view.factors());
        let brute = unit_order_census(p, k);
        c.add_count("cases", 1);
        c.require(predicted == brute, || format!("p={p} k={k}: {brute:?} vs {predicted:?}"));
    }
    c
}

pub fn haar_measures(seed: u64) -> Check {
    let mut c = Check::new("6 Haar measure of power-fixes event");
    for p in [3, 5, 7] {
        for k in 2..=6 {
            let got = haar::exact_event_measure(p, k, Event::PowerFixes).unwrap();
            let want = num_rational::Ratio::new(1, p.pow(k - 1));
            c.add_count("exact", 1);
            c.require(got == want, || format!("p={p} k={k}: {got}, expected {want}"));
        }
    }
    let mut estimates = Vec::new();
    for (p, k) in HAAR_MC_CASES {
        let est = haar::estimate_event_measure(p, k, Event::PowerFixes, HAAR_TRIALS, seed).unwrap();
        c.require(est.within(HAAR_TOLERANCE), || {
            format!("p={p} k={k}: estimate {} vs {:?} (z = {:?})", est.estimate, est.exact, est.z)
        });
        c.add_count(&format!("p{p}k{k}.hits"), est.hits);
        estimates.push(est);
    }
    c.with_details(json!({ "estimates": estimates, "tolerance_se": HAAR_TOLERANCE }))
}

pub fn artin_schreier() -> Check {
    let mut c = artin_schreier_fields(&AS_FIELDS);
    c.name = format!("7 {}", c.name);
    c
}

/// Exhaustive trace criterion and coset structure over each `F_q`.
pub fn artin_schreier_fields(fields: &[u64]) -> Check {
    let mut c = Check::new("Artin-Schreier: solvable iff trace 0, roots are F_p-cosets");
    for &q in fields {
        let f = field_q(q);
        let p = f.p();
        // bucket x by x^p - x
        let mut roots: Vec<Vec<FFElem>> = vec![Vec::new(); q as usize];
        for x in f.elements() {
            let y = &x.pow_u(p) - &x;
            roots[y.index() as usize].push(x);
        }
        for b in f.elements() {
            let rs = &roots[b.index() as usize];
            c.add_count("elements", 1);
            let trace_zero = b.trace_to_prime() == 0;
            c.require(rs.is_empty() != trace_zero, || format!("q={q} b={b}: trace vs solvability"));
            if let Some(r0) = rs.first() {
                let coset = rs.len() as u64 == p && rs.iter().all(|r| (r - r0).is_prime_subfield());
                c.require(coset, || format!("q={q} b={b}: roots {rs:?} are not an F_p-coset"));
            }
        }
    }
    c
}

pub fn lemma_fuzz(seed: u64) -> Check {
    let r = operator_lemma_fuzz(seed, FUZZ_TRIALS, FUZZ_MAX_GROUP);
    let mut c = Check::new("8 operator lemma fuzz")
        .count("trials", r.trials)
        .count("pairs", r.pairs_checked)
        .count("strict_instances", r.strict_instances)
        .count("relaxed_pairs", r.relaxed_pairs)
        .count("relaxed_pairs_with_premise", r.relaxed_pairs_with_premise)
        .count("counterexamples", r.counterexamples)
        .count("intermediate_failures", r.intermediate_failures)
        .count("necessity_witnesses", r.necessity_witnesses.len() as u64);
    for w in &r.counterexample_witnesses {
        c.require(false, || format!("counterexample {}", json!(w)));
    }
    c.require(r.intermediate_failures == 0, || "intermediate facts violated".into());
    c.require(r.strict_instances > 0 && r.relaxed_pairs_with_premise > 0, || {
        "no instance satisfied the hypotheses".into()
    });
    c.require(r.has_witness_for(2), || "no necessity witness for T|A_0 = 0".into());
    c.with_details(json!({
        "seed": r.seed,
        "hypothesis_tallies": r.hypothesis_tallies,
        "necessity_witnesses": r.necessity_witnesses,
    }))
}

pub fn interpretation(seed: u64) -> Check {
    let mut c = Check::new("9 coded extensions: arithmetic and cyclic Galois group");
    for (q, n) in INTERPRET_CASES {
        let label = format!("q{q}n{n}");
        let ext = code_extension(&field_q(q), n).unwrap();
        let iso = verify_iso_with_direct(&ext, seed).unwrap();
        let key = if iso.exhaustive { "iso_pairs_exhaustive" } else { "iso_pairs_sampled" };
        c.add_count(key, iso.pairs_checked);
        c.require(iso.ok, || format!("{label}: coded product differs at {:?}", iso.witness));
    }
    for q in GALOIS_CASES {
        for n in 1..=GALOIS_MAX_N {
            if (q as f64).powi(n as i32) > crate::field::MAX_FIELD_SIZE as f64 {
                continue;
            }
            let label = format!("q{q}n{n}");
            let ext = code_extension(&field_q(q), n).unwrap();
            let g: Vec<_> = (0..n as u64).map(|r| galois_matrix(&ext, r).unwrap()).collect();
            let id = &g[0];
            let g1 = if n > 1 { g[1].clone() } else { id.clone() };
            // exact order n
            let order = (1..=n as u64).find(|&d| &g1.pow(d) == id);
            c.require(order == Some(n as u64), || format!("{label}: σ has order {order:?}"));
            for (r, gr) in g.iter().enumerate() {
                let auto = verify_commute(&ext, gr).map(|x| x.commute);
                c.require(auto == Ok(true), || format!("{label}: G_{r} is not an automorphism"));
                for (s, gs) in g.iter().enumerate() {
                    let prod = gr.mul(gs);
                    c.require(prod == gs.mul(gr) && prod == g[(r + s) % n], || {
                        format!("{label}: G_{r} G_{s} ≠ G_{}", (r + s) % n)
                    });
                }
            }
            c.add_count("galois_groups", 1);
        }
    }
    c
}

pub fn puiseux(seed: u64) -> Check {
    let mut c = Check::new("10 Puiseux: sigma tau = tau sigma, orbit of x^(1/p)");
    let f7 = make_field(7, 1).unwrap();
    let system = build_coherent_roots(3, &f7, 2).unwrap();
    c.require(system.tower().top().q() == 343, || "ω_2 not in F_343".into());
    let ring = SeriesRing::new(system, 6).unwrap();
    let rep = verify_commutation(&ring, PUISEUX_SAMPLES, seed);
    c.absorb("commutation", &rep);
    let orbit = kummer_orbit_order(&ring).unwrap();
    c.require(orbit == 3, || format!("orbit of x^(1/3) has {orbit} elements"));
    let orbit2 = tau_orbit_size(&ring, 2).unwrap();
    c.require(orbit2 == 9, || format!("orbit of x^(1/9) has {orbit2} elements"));
    c.require(tau_is_coherent(&ring).unwrap(), || "τ is not coherent".into());
    c.count("orbit_x^(1/3)", orbit).count("orbit_x^(1/9)", orbit2)
}

/// The randomized parts (Monte Carlo and fuzzing) under one thread and under four.
pub fn thread_independence(seed: u64) -> Check {
    let mut c = Check::new("11 results independent of thread count");
    let run = |threads: usize| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .expect("thread pool")
            .install(|| {
                let est = haar::estimate_event_measure(3, 4, Event::PowerFixes, 200_000, seed).unwrap();
                let fuzz = operator_lemma_fuzz(seed, 500, FUZZ_MAX_GROUP);
                let tour = verify_p_tournament(&TournamentParams::canonical(&field_q(13), 3).unwrap())
                    .unwrap();
                (est, fuzz, (tour.tuples_checked, tour.violation_count, tour.violations))
            })
    };
    let (a, b) = (run(1), run(4));
    c.require(a.0 == b.0, || "Monte Carlo estimate differs".into());
    c.require(a.1 == b.1, || "fuzz report differs".into());
    c.require(a.2 == b.2, || "tournament scan differs".into());
    c.count("comparisons", 3)
}

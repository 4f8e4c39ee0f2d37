//! Haar measure on `ℤ_p^*` pushed down to `(ℤ/p^k)^*`: exact event measures by
//! enumeration and seeded Monte Carlo estimates.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::numth;

/// Largest modulus `p^k` for exact enumeration.
pub const EXACT_LIMIT: u64 = 10_000_000;
/// Monte Carlo trials per RNG stream; fixed so results do not depend on threads.
pub const CHUNK: u64 = 1 << 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HaarError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("level must be at least 1")]
    ZeroLevel,
    #[error("p^k = {p}^{k} exceeds {limit}")]
    TooLarge { p: u64, k: u32, limit: u64 },
    #[error("at least one trial is required")]
    NoTrials,
    #[error("unknown event {0:?} (expected fixes-level, power-fixes or char-p-trivial)")]
    UnknownEvent(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Event {
    /// `u ≡ 1 (mod p^k)`: σ fixes `μ_{p^k}`.
    FixesLevel,
    /// `u^{p-1} ≡ 1` (`u^2 ≡ 1` for `p = 2`): σ^{p-1} fixes `μ_{p^k}`.
    PowerFixes,
    /// `u ≡ 0` on a uniform residue mod `p^k`: the image in `ℤ_p` is trivial at level k.
    CharPTrivial,
}

impl Event {
    pub const ALL: [Event; 3] = [Event::FixesLevel, Event::PowerFixes, Event::CharPTrivial];

    /// Whether samples are units (`false` means uniform residues).
    pub fn on_units(self) -> bool {
        !matches!(self, Event::CharPTrivial)
    }

    pub fn holds(self, p: u64, k: u32, u: u64) -> bool {
        let m = p.pow(k);
        match self {
            Event::FixesLevel => u % m == 1 % m,
            Event::PowerFixes => {
                let e = if p == 2 { 2 } else { p - 1 };
                numth::mod_pow(u, e, m) == 1 % m
            }
            Event::CharPTrivial => u % m == 0,
        }
    }
}

impl fmt::Display for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Event::FixesLevel => "fixes-level",
            Event::PowerFixes => "power-fixes",
            Event::CharPTrivial => "char-p-trivial",
        })
    }
}

impl FromStr for Event {
    type Err = HaarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Event::ALL
            .into_iter()
            .find(|e| e.to_string() == s)
            .ok_or_else(|| HaarError::UnknownEvent(s.to_string()))
    }
}

/// The level-k cyclotomic character value of a sampled automorphism.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ProcyclicSample {
    pub p: u64,
    pub k: u32,
    pub u: u64,
}

impl ProcyclicSample {
    /// Image at level `j <= k`.
    pub fn restrict(&self, j: u32) -> ProcyclicSample {
        assert!(j <= self.k, "cannot restrict upward");
        ProcyclicSample {
            p: self.p,
            k: j,
            u: self.u % self.p.pow(j),
        }
    }
}

fn check(p: u64, k: u32, limit: u64) -> Result<u64, HaarError> {
    if !numth::is_prime(p) {
        return Err(HaarError::NotPrime(p));
    }
    if k == 0 {
        return Err(HaarError::ZeroLevel);
    }
    numth::checked_pow(p, k)
        .filter(|&m| m <= limit)
        .ok_or(HaarError::TooLarge { p, k, limit })
}

/// Uniform unit mod `p^k` by rejection from uniform residues.
pub fn sample_unit<R: Rng + ?Sized>(p: u64, k: u32, rng: &mut R) -> ProcyclicSample {
    let m = p.pow(k);
    loop {
        let u = rng.gen_range(0..m);
        if u % p != 0 {
            return ProcyclicSample { p, k, u };
        }
    }
}

fn sample_for<R: Rng + ?Sized>(event: Event, p: u64, k: u32, rng: &mut R) -> u64 {
    if event.on_units() {
        sample_unit(p, k, rng).u
    } else {
        rng.gen_range(0..p.pow(k))
    }
}

/// Exact measure by enumerating `(ℤ/p^k)^*` (or `ℤ/p^k` for [`Event::CharPTrivial`]).
pub fn exact_event_measure(p: u64, k: u32, event: Event) -> Result<Ratio<u64>, HaarError> {
    let m = check(p, k, EXACT_LIMIT)?;
    let (hits, total) = (0..m)
        .into_par_iter()
        .filter(|u| !event.on_units() || u % p != 0)
        .map(|u| (event.holds(p, k, u) as u64, 1u64))
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    Ok(Ratio::new(hits, total))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MeasureEstimate {
    pub event: Event,
    pub p: u64,
    pub k: u32,
    pub seed: u64,
    pub trials: u64,
    pub hits: u64,
    pub estimate: f64,
    pub std_error: f64,
    /// Exact value as `a/b`, when `p^k` is small enough to enumerate.
    pub exact: Option<String>,
    /// `|estimate - exact| / s.e.` (with s.e. taken from the exact value).
    pub z: Option<f64>,
}

impl MeasureEstimate {
    /// Within `tol` standard errors of the exact value (vacuous when unknown).
    pub fn within(&self, tol: f64) -> bool {
        self.z.is_none_or(|z| z <= tol)
    }
}

/// Monte Carlo estimate. Trials are split into fixed chunks, chunk `c` drawing
/// from ChaCha stream `c` of `seed`, so the result is independent of threading.
pub fn estimate_event_measure(
    p: u64,
    k: u32,
    event: Event,
    trials: u64,
    seed: u64,
) -> Result<MeasureEstimate, HaarError> {
    check(p, k, u64::MAX / 2)?;
    if trials == 0 {
        return Err(HaarError::NoTrials);
    }
    let chunks = trials.div_ceil(CHUNK);
    let hits: u64 = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(c);
            let n = CHUNK.min(trials - c * CHUNK);
            (0..n)
                .filter(|_| event.holds(p, k, sample_for(event, p, k, &mut rng)))
                .count() as u64
        })
        .sum();
    let estimate = hits as f64 / trials as f64;
    let std_error = (estimate * (1.0 - estimate) / trials as f64).sqrt();
    let exact = exact_event_measure(p, k, event).ok();
    let z = exact.map(|r| {
        let e = *r.numer() as f64 / *r.denom() as f64;
        let se = (e * (1.0 - e) / trials as f64).sqrt();
        if se == 0.0 {
            if hits as f64 == e * trials as f64 { 0.0 } else { f64::INFINITY }
        } else {
            (estimate - e).abs() / se
        }
    });
    Ok(MeasureEstimate {
        event,
        p,
        k,
        seed,
        trials,
        hits,
        estimate,
        std_error,
        exact: exact.map(|r| r.to_string()),
        z,
    })
}

/// Exact measures for levels `1..=k_max`.
pub fn decay_table(p: u64, k_max: u32, event: Event) -> Result<Vec<Ratio<u64>>, HaarError> {
    check(p, k_max, EXACT_LIMIT)?;
    (1..=k_max).map(|k| exact_event_measure(p, k, event)).collect()
}

/// For the power-fixes event: each step from level `start` on divides the measure by `p`
/// (`start = 2` for odd p, `3` for p = 2), and the table never increases.
pub fn decay_is_geometric(p: u64, table: &[Ratio<u64>]) -> bool {
    let start = if p == 2 { 3 } else { 2 };
    let monotone = table.windows(2).all(|w| w[1] <= w[0]);
    let geometric = (start..table.len()).all(|i| table[i] * p == table[i - 1]);
    monotone && geometric
}

/// Pearson statistic of `draws` unit samples over the `φ(p^k)` cells.
pub fn unit_chi_square(p: u64, k: u32, draws: u64, seed: u64) -> Result<(f64, u64), HaarError> {
    let m = check(p, k, 1 << 20)?;
    let chunks = draws.div_ceil(CHUNK);
    let counts = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(c);
            let mut counts = vec![0u64; m as usize];
            for _ in 0..CHUNK.min(draws - c * CHUNK) {
                counts[sample_unit(p, k, &mut rng).u as usize] += 1;
            }
            counts
        })
        .reduce(
            || vec![0u64; m as usize],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    let cells = numth::euler_phi(m);
    let expected = draws as f64 / cells as f64;
    let stat = counts
        .iter()
        .enumerate()
        .filter(|(u, _)| *u as u64 % p != 0)
        .map(|(_, &c)| (c as f64 - expected).powi(2) / expected)
        .sum();
    Ok((stat, cells - 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(a: u64, b: u64) -> Ratio<u64> {
        Ratio::new(a, b)
    }

    #[test]
    fn event_examples() {
        assert!(Event::FixesLevel.holds(3, 2, 1));
        assert!(!Event::FixesLevel.holds(3, 2, 4));
        assert!(Event::PowerFixes.holds(3, 2, 8));
        assert!(!Event::PowerFixes.holds(3, 2, 2));
        assert!(Event::PowerFixes.holds(5, 3, 1));
        assert_eq!("power-fixes".parse::<Event>(), Ok(Event::PowerFixes));
        assert!("nope".parse::<Event>().is_err());
    }

    #[test]
    fn exact_examples() {
        assert_eq!(exact_event_measure(3, 2, Event::PowerFixes).unwrap(), r(1, 3));
        assert_eq!(exact_event_measure(3, 4, Event::PowerFixes).unwrap(), r(1, 27));
        for p in [3, 5, 7, 11] {
            assert_eq!(exact_event_measure(p, 1, Event::PowerFixes).unwrap(), r(1, 1));
        }
        assert_eq!(exact_event_measure(3, 2, Event::FixesLevel).unwrap(), r(1, 6));
        assert_eq!(exact_event_measure(5, 3, Event::CharPTrivial).unwrap(), r(1, 125));
        assert!(matches!(
            exact_event_measure(3, 15, Event::PowerFixes),
            Err(HaarError::TooLarge { .. })
        ));
    }

    #[test]
    fn decay_tables() {
        let t = decay_table(3, 4, Event::PowerFixes).unwrap();
        assert_eq!(t, vec![r(1, 1), r(1, 3), r(1, 9), r(1, 27)]);
        assert!(decay_is_geometric(3, &t));
        let t = decay_table(5, 3, Event::PowerFixes).unwrap();
        assert_eq!(t, vec![r(1, 1), r(1, 5), r(1, 25)]);
        // squares ≡ 1 mod 2, 4, 8, 16: {1}, {1,3}, {1,3,5,7}, {1,7,9,15}
        let t = decay_table(2, 5, Event::PowerFixes).unwrap();
        assert_eq!(t, vec![r(1, 1), r(1, 1), r(1, 1), r(1, 2), r(1, 4)]);
        assert!(decay_is_geometric(2, &t));
    }

    #[test]
    fn restriction_is_compatible() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..1000 {
            let s = sample_unit(3, 3, &mut rng);
            let low = s.restrict(2);
            assert_eq!(low.u, s.u % 9);
            assert_ne!(low.u % 3, 0);
            if Event::PowerFixes.holds(3, 3, s.u) {
                assert!(Event::PowerFixes.holds(3, 2, low.u));
            }
        }
    }

    #[test]
    fn estimates_are_seeded_and_close() {
        let a = estimate_event_measure(3, 2, Event::FixesLevel, 200_000, 7).unwrap();
        let b = estimate_event_measure(3, 2, Event::FixesLevel, 200_000, 7).unwrap();
        assert_eq!(a, b);
        assert!(a.within(4.0), "{a:?}");
        assert_eq!(
            estimate_event_measure(3, 2, Event::FixesLevel, 0, 7),
            Err(HaarError::NoTrials)
        );
    }

    #[test]
    fn estimate_ignores_thread_count() {
        let run = |threads| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| estimate_event_measure(5, 3, Event::PowerFixes, 300_000, 9).unwrap())
        };
        assert_eq!(run(1), run(4));
    }
}

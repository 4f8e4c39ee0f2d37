//! Finite sums `Σ c_e x^e` with rational exponents, the automorphism `τ` that
//! scales `x^{1/p^i}` by a coherent root `ω_i` and fixes `x^{1/n}` for `p ∤ n`,
//! and coefficientwise Frobenius `σ`.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::cyclotomic::CoherentRootSystem;
use crate::field::{make_field, parse_element, FFElem, FieldError, FieldSpec, Tower};
use crate::numth;
use crate::report::{elapsed_ms, VerificationReport};

pub type Exponent = Ratio<i64>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PuiseuxError {
    #[error("exponent {exp} has p-adic depth {depth}, beyond the ring's {max}")]
    DepthExceeded { exp: String, depth: u32, max: u32 },
    #[error("exponent {exp} has prime-to-p denominator part {cofactor} > {max}")]
    CofactorExceeded { exp: String, cofactor: u64, max: u64 },
    #[error("cannot parse series term {0:?}")]
    Parse(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Coefficients live in a single field `K`, the quadratic extension of the top
/// of the coherent tower, so that `σ` (the top level's Frobenius) fixes every
/// `ω_i` while still acting nontrivially on coefficients.
#[derive(Debug, Clone)]
pub struct SeriesRing {
    system: CoherentRootSystem,
    /// the system's tower with `K` appended
    tower: Tower,
    omegas: Vec<FFElem>,
    max_cofactor: u64,
}

/// A finite sum with distinct exponents and nonzero coefficients, ordered by exponent.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    field: FieldSpec,
    terms: BTreeMap<Exponent, FFElem>,
}

impl SeriesRing {
    pub fn new(system: CoherentRootSystem, max_cofactor: u64) -> Result<Self, PuiseuxError> {
        let mut tower = system.tower().clone();
        let top = tower.top().clone();
        tower.push(make_field(top.p(), top.n() * 2)?)?;
        let last = tower.len() - 1;
        let omegas = (0..=system.depth())
            .map(|i| {
                tower
                    .lift(system.root(i), i, last)
                    .expect("roots live in their levels")
            })
            .collect();
        Ok(SeriesRing {
            system,
            tower,
            omegas,
            max_cofactor: max_cofactor.max(1),
        })
    }

    pub fn system(&self) -> &CoherentRootSystem {
        &self.system
    }

    pub fn p(&self) -> u64 {
        self.system.p()
    }

    pub fn depth(&self) -> u32 {
        self.system.depth() as u32
    }

    pub fn max_cofactor(&self) -> u64 {
        self.max_cofactor
    }

    pub fn coeff_field(&self) -> &FieldSpec {
        self.tower.top()
    }

    /// `ω_i` as an element of the coefficient field.
    pub fn omega(&self, i: usize) -> &FFElem {
        &self.omegas[i]
    }

    /// The Frobenius power (in p-power steps) fixing exactly the top of the coherent tower.
    pub fn sigma_power(&self) -> u64 {
        self.system.tower().top().n() as u64
    }

    /// Lifts an element of any tower level into the coefficient field.
    pub fn coerce(&self, c: &FFElem) -> Result<FFElem, PuiseuxError> {
        let last = self.tower.len() - 1;
        let from = (0..=last)
            .find(|&i| self.tower.level(i) == c.field())
            .ok_or_else(|| {
                FieldError::FieldMismatch(c.field().to_string(), self.coeff_field().to_string())
            })?;
        Ok(self.tower.lift(c, from, last)?)
    }

    /// Splits the denominator as `p^i · n'` and checks both bounds.
    pub fn check_exponent(&self, e: &Exponent) -> Result<(u32, u64), PuiseuxError> {
        let den = *e.denom() as u64;
        let i = numth::valuation(self.p(), den);
        let cofactor = den / self.p().pow(i);
        if i > self.depth() {
            return Err(PuiseuxError::DepthExceeded {
                exp: e.to_string(),
                depth: i,
                max: self.depth(),
            });
        }
        if cofactor > self.max_cofactor {
            return Err(PuiseuxError::CofactorExceeded {
                exp: e.to_string(),
                cofactor,
                max: self.max_cofactor,
            });
        }
        Ok((i, cofactor))
    }

    pub fn zero(&self) -> TruncatedSeries {
        TruncatedSeries {
            field: self.coeff_field().clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(&self, c: &FFElem) -> Result<TruncatedSeries, PuiseuxError> {
        self.monomial(c, Exponent::from_integer(0))
    }

    pub fn monomial(&self, c: &FFElem, e: Exponent) -> Result<TruncatedSeries, PuiseuxError> {
        self.check_exponent(&e)?;
        let c = self.coerce(c)?;
        let mut s = self.zero();
        if !c.is_zero() {
            s.terms.insert(e, c);
        }
        Ok(s)
    }

    /// `x^{a/b}`.
    pub fn x_pow(&self, a: i64, b: i64) -> Result<TruncatedSeries, PuiseuxError> {
        self.monomial(&self.coeff_field().one(), Exponent::new(a, b))
    }

    pub fn add(&self, s: &TruncatedSeries, t: &TruncatedSeries) -> TruncatedSeries {
        let mut out = s.clone();
        for (e, c) in &t.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn neg(&self, s: &TruncatedSeries) -> TruncatedSeries {
        TruncatedSeries {
            field: s.field.clone(),
            terms: s.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    pub fn mul(&self, s: &TruncatedSeries, t: &TruncatedSeries) -> Result<TruncatedSeries, PuiseuxError> {
        let mut out = self.zero();
        for (e1, c1) in &s.terms {
            for (e2, c2) in &t.terms {
                let e = e1 + e2;
                self.check_exponent(&e)?;
                out.add_term(e, c1 * c2);
            }
        }
        Ok(out)
    }

    /// The scalar `τ` attaches to `x^e`: `ω_i^{a·n'^{-1} mod p^i}` for `e = a/(p^i n')`.
    pub fn tau_scalar(&self, e: &Exponent) -> Result<FFElem, PuiseuxError> {
        let (i, cofactor) = self.check_exponent(e)?;
        if i == 0 {
            return Ok(self.coeff_field().one());
        }
        let pi = self.p().pow(i) as i64;
        let inv = numth::mod_inv(cofactor % pi as u64, pi as u64).expect("p ∤ n'") as i64;
        let k = (e.numer().rem_euclid(pi) * inv).rem_euclid(pi);
        Ok(self.omegas[i as usize].pow_u(k as u64))
    }

    pub fn tau(&self, s: &TruncatedSeries) -> Result<TruncatedSeries, PuiseuxError> {
        let mut out = self.zero();
        for (e, c) in &s.terms {
            out.add_term(*e, c * &self.tau_scalar(e)?);
        }
        Ok(out)
    }

    pub fn tau_pow(&self, s: &TruncatedSeries, k: u64) -> Result<TruncatedSeries, PuiseuxError> {
        (0..k).try_fold(s.clone(), |acc, _| self.tau(&acc))
    }

    /// Coefficientwise `c ↦ c^{p^r}`.
    pub fn sigma(&self, s: &TruncatedSeries, r: u64) -> TruncatedSeries {
        TruncatedSeries {
            field: s.field.clone(),
            terms: s.terms.iter().map(|(e, c)| (*e, c.frobenius(r))).collect(),
        }
    }

    /// Parses `c*x^(a/b) + c*x^k + x + c`, with coefficients written as field
    /// literals of the coefficient field (`[a0,a1,…]` or a bare integer).
    pub fn parse(&self, text: &str) -> Result<TruncatedSeries, PuiseuxError> {
        let field = self.coeff_field();
        let mut out = self.zero();
        let text = text.trim();
        if text == "0" || text.is_empty() {
            return Ok(out);
        }
        for raw in text.split('+') {
            let term = raw.trim();
            let bad = || PuiseuxError::Parse(term.to_string());
            let (coeff, mono) = match term.split_once('*') {
                Some((c, m)) => (Some(c.trim()), Some(m.trim())),
                None if term.starts_with('x') => (None, Some(term)),
                None => (Some(term), None),
            };
            let c = match coeff {
                Some(c) => parse_element(field, c)?,
                None => field.one(),
            };
            let e = match mono {
                None => Exponent::from_integer(0),
                Some("x") => Exponent::from_integer(1),
                Some(m) => {
                    let body = m.strip_prefix("x^").ok_or_else(bad)?;
                    let body = body
                        .strip_prefix('(')
                        .and_then(|b| b.strip_suffix(')'))
                        .unwrap_or(body);
                    match body.split_once('/') {
                        Some((a, b)) => {
                            let a: i64 = a.trim().parse().map_err(|_| bad())?;
                            let b: i64 = b.trim().parse().map_err(|_| bad())?;
                            if b == 0 {
                                return Err(bad());
                            }
                            Exponent::new(a, b)
                        }
                        None => Exponent::from_integer(body.trim().parse().map_err(|_| bad())?),
                    }
                }
            };
            self.check_exponent(&e)?;
            out.add_term(e, c);
        }
        Ok(out)
    }

    /// All exponents `1/(p^i n')` with `i ≤ depth`, `n' ≤ max_cofactor`, `p ∤ n'`.
    pub fn generator_exponents(&self) -> Vec<Exponent> {
        let p = self.p();
        let mut out = Vec::new();
        for i in 0..=self.depth() {
            for n in (1..=self.max_cofactor).filter(|n| n % p != 0) {
                out.push(Exponent::new(1, (p.pow(i) * n) as i64));
            }
        }
        out
    }

    fn random_series(&self, rng: &mut ChaCha8Rng) -> TruncatedSeries {
        let dens: Vec<i64> = self
            .generator_exponents()
            .iter()
            .map(|e| *e.denom())
            .collect();
        let q = self.coeff_field().q();
        let mut s = self.zero();
        for _ in 0..rng.gen_range(1..=4) {
            let b = dens[rng.gen_range(0..dens.len())];
            let a = rng.gen_range(-2 * b..=2 * b);
            let c = self.coeff_field().from_index(rng.gen_range(0..q));
            s.add_term(Exponent::new(a, b), c);
        }
        s
    }
}

impl TruncatedSeries {
    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &FFElem)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &Exponent) -> Option<&FFElem> {
        self.terms.get(e)
    }

    fn add_term(&mut self, e: Exponent, c: FFElem) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                if !c.is_zero() {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if e.is_integer() {
                write!(f, "{c}*x^{}", e.numer())?;
            } else {
                write!(f, "{c}*x^({}/{})", e.numer(), e.denom())?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn sample_rng(seed: u64, i: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(i);
    rng
}

/// Checks `στ = τσ` on every generator `x^{1/(p^i n')}` (with coefficients 1
/// and a primitive element of the coefficient field) and on `samples` random series.
pub fn verify_commutation(ring: &SeriesRing, samples: u64, seed: u64) -> VerificationReport {
    let start = std::time::Instant::now();
    let r = ring.sigma_power();
    let g = ring.coeff_field().generator();
    let commutes = |s: &TruncatedSeries| -> bool {
        let st = ring.tau(s).map(|t| ring.sigma(&t, r));
        let ts = ring.tau(&ring.sigma(s, r));
        matches!((st, ts), (Ok(a), Ok(b)) if a == b)
    };
    let mut report = VerificationReport::new("sigma-tau commutation", 1);
    for e in ring.generator_exponents() {
        for c in [ring.coeff_field().one(), g.clone()] {
            let s = ring.monomial(&c, e).expect("generator exponents are in range");
            report.record(commutes(&s), || vec![s.to_string()]);
        }
    }
    let results: Vec<(bool, TruncatedSeries)> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let s = ring.random_series(&mut sample_rng(seed, i));
            (commutes(&s), s)
        })
        .collect();
    for (ok, s) in results {
        report.record(ok, || vec![s.to_string()]);
    }
    report.wall_time_ms = elapsed_ms(start);
    report
}

/// Checks that `τ` is additive and multiplicative on `samples` random pairs.
pub fn verify_tau_automorphism(ring: &SeriesRing, samples: u64, seed: u64) -> VerificationReport {
    let start = std::time::Instant::now();
    let results: Vec<(bool, String, String)> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = sample_rng(seed, i);
            let s = ring.random_series(&mut rng);
            let t = ring.random_series(&mut rng);
            let (ts, tt) = (ring.tau(&s).unwrap(), ring.tau(&t).unwrap());
            let add = ring.tau(&ring.add(&s, &t)).unwrap() == ring.add(&ts, &tt);
            // products can leave the denominator bounds only through the cofactor
            let mul = match ring.mul(&s, &t) {
                Ok(st) => ring.tau(&st).ok() == ring.mul(&ts, &tt).ok(),
                Err(_) => true,
            };
            (add && mul, s.to_string(), t.to_string())
        })
        .collect();
    let mut report = VerificationReport::new("tau ring automorphism", 2);
    for (ok, s, t) in results {
        report.record(ok, || vec![s, t]);
    }
    report.wall_time_ms = elapsed_ms(start);
    report
}

/// Size of the `τ`-orbit of `x^{1/p^i}` (expected `p^i`).
pub fn tau_orbit_size(ring: &SeriesRing, i: u32) -> Result<u64, PuiseuxError> {
    let start = ring.x_pow(1, ring.p().pow(i) as i64)?;
    let mut cur = ring.tau(&start)?;
    let mut n = 1;
    while cur != start {
        cur = ring.tau(&cur)?;
        n += 1;
    }
    Ok(n)
}

/// Size of the `τ`-orbit of `x^{1/p}`; `τ` then has order p on `K(x^{1/p})/K(x)`.
pub fn kummer_orbit_order(ring: &SeriesRing) -> Result<u64, PuiseuxError> {
    tau_orbit_size(ring, 1)
}

/// `τ(x^{1/p^{i+1}})^p = τ(x^{1/p^i})` for every `i < depth`, and integer powers of x are fixed.
pub fn tau_is_coherent(ring: &SeriesRing) -> Result<bool, PuiseuxError> {
    let p = ring.p();
    for i in 0..ring.depth() {
        let upper = ring.tau(&ring.x_pow(1, p.pow(i + 1) as i64)?)?;
        let lhs = (1..p).try_fold(upper.clone(), |acc, _| ring.mul(&acc, &upper))?;
        if lhs != ring.tau(&ring.x_pow(1, p.pow(i) as i64)?)? {
            return Ok(false);
        }
    }
    for k in -3..=3 {
        let m = ring.x_pow(k, 1)?;
        if ring.tau(&m)? != m {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::build_coherent_roots;

    fn ring(depth: u32) -> SeriesRing {
        let f7 = make_field(7, 1).unwrap();
        SeriesRing::new(build_coherent_roots(3, &f7, depth).unwrap(), 6).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        let r = ring(1);
        let s = r.add(&r.x_pow(1, 2).unwrap(), &r.x_pow(1, 3).unwrap());
        let sq = r.mul(&s, &s).unwrap();
        let two = r.coeff_field().from_int(2);
        let want = r.add(
            &r.add(&r.x_pow(1, 1).unwrap(), &r.monomial(&two, Exponent::new(5, 6)).unwrap()),
            &r.x_pow(2, 3).unwrap(),
        );
        assert_eq!(sq, want);
        assert_eq!(r.add(&s, &r.zero()), s);
        assert_eq!(r.mul(&r.x_pow(1, 2).unwrap(), &r.x_pow(1, 2).unwrap()).unwrap(), r.x_pow(1, 1).unwrap());
        let t = r.x_pow(1, 3).unwrap();
        assert!(r.add(&t, &r.neg(&t)).is_empty());
    }

    #[test]
    fn bounds_are_enforced() {
        let r = ring(1);
        assert!(matches!(r.x_pow(1, 9), Err(PuiseuxError::DepthExceeded { .. })));
        assert!(matches!(r.x_pow(1, 7), Err(PuiseuxError::CofactorExceeded { .. })));
        let a = r.x_pow(1, 4).unwrap();
        let b = r.x_pow(1, 5).unwrap();
        assert!(r.mul(&a, &b).is_err());
    }

    #[test]
    fn tau_examples() {
        let r = ring(1);
        let f = r.coeff_field();
        assert_eq!(r.omega(1), &r.coerce(&make_field(7, 1).unwrap().from_int(2)).unwrap());
        let tau = |a, b| r.tau(&r.x_pow(a, b).unwrap()).unwrap();
        assert_eq!(tau(1, 3), r.monomial(&f.from_int(2), Exponent::new(1, 3)).unwrap());
        assert_eq!(tau(1, 2), r.x_pow(1, 2).unwrap());
        assert_eq!(tau(2, 3), r.monomial(&f.from_int(4), Exponent::new(2, 3)).unwrap());
        // x^{1/6} = x^{1/2}·x^{-1/3}, and τ respects the factorisation
        let x16 = r.x_pow(1, 6).unwrap();
        let prod = r.mul(&r.x_pow(1, 2).unwrap(), &r.x_pow(-1, 3).unwrap()).unwrap();
        assert_eq!(x16, prod);
        let lhs = r.tau(&x16).unwrap();
        let rhs = r.mul(&tau(1, 2), &tau(-1, 3)).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn sigma_examples() {
        let r = ring(1);
        let f7 = make_field(7, 1).unwrap();
        let s = r.monomial(&f7.from_int(3), Exponent::new(1, 2)).unwrap();
        assert_eq!(r.sigma(&s, 1), s);
        let f49 = make_field(7, 2).unwrap();
        let beta = f49.generator();
        let top = r.coeff_field().clone();
        let b_up = crate::field::embed(&beta, &top).unwrap();
        let m = r.monomial(&b_up, Exponent::from_integer(1)).unwrap();
        let moved = r.sigma(&m, 1);
        assert_ne!(moved, m);
        assert_eq!(moved.coeff(&Exponent::from_integer(1)), Some(&b_up.pow_u(7)));
    }

    #[test]
    fn commutation_depths_one_and_two() {
        for depth in [1, 2] {
            let r = ring(depth);
            let rep = verify_commutation(&r, 300, 5);
            assert!(rep.passed(), "{:?}", rep.violations);
            // σ really moves coefficients
            let g = r.coeff_field().generator();
            assert_ne!(g.frobenius(r.sigma_power()), g);
        }
        let r = ring(2);
        assert_eq!(r.system().tower().top().q(), 343);
    }

    #[test]
    fn tau_is_an_automorphism() {
        let rep = verify_tau_automorphism(&ring(2), 300, 11);
        assert!(rep.passed(), "{:?}", rep.violations);
    }

    #[test]
    fn orbits() {
        let r = ring(1);
        assert_eq!(kummer_orbit_order(&r).unwrap(), 3);
        let x = r.x_pow(1, 1).unwrap();
        assert_eq!(r.tau(&x).unwrap(), x);
        for e in r.generator_exponents() {
            let m = r.monomial(&r.coeff_field().one(), e).unwrap();
            assert_eq!(r.tau_pow(&m, 3).unwrap(), m);
        }
        let r2 = ring(2);
        assert_eq!(tau_orbit_size(&r2, 1).unwrap(), 3);
        assert_eq!(tau_orbit_size(&r2, 2).unwrap(), 9);
        assert!(tau_is_coherent(&r2).unwrap());
    }

    #[test]
    fn parse_round_trip() {
        let r = ring(1);
        let s = r.parse("3*x^(1/2) + x^(2/3) + [1,0,0]*x + 5").unwrap_err();
        assert!(matches!(s, PuiseuxError::Field(_)));
        let s = r.parse("3*x^(1/2) + x^(2/3) + x + 5 + 2*x^-1").unwrap();
        assert_eq!(s.len(), 5);
        assert_eq!(r.parse(&s.to_string()).unwrap(), s);
        assert!(r.parse("3*y^2").is_err());
    }
}

//! Definable p-tournaments on finite fields containing `μ_p`.
//!
//! For a primitive p-th root `ω` and a transversal `S` of `F^*/μ_p`, the
//! relation `R_ω(x_1..x_p)` holds iff `x_1 + ω x_2 + … + ω^{p-1} x_p ∈ S`.
//! Cyclically rotating the tuple multiplies that form by a power of `ω`, so
//! exactly one rotation lands in `S` unless the form vanishes. The tournament
//! `R` evaluates `R_{ω^i}` at the least `i` whose form is nonzero; distinct
//! entries guarantee such an `i` exists.

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::field::{roots_of_unity, FFElem, FieldError, FieldSpec};
use crate::linalg::Matrix;
use crate::numth;
use crate::report::{elapsed_ms, VerificationReport};

/// Largest number of ordered distinct tuples an exhaustive scan will visit.
pub const TUPLE_BUDGET: u64 = 20_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TournamentError {
    #[error("{p} does not divide q - 1 = {}", q - 1)]
    NotDividing { p: u64, q: u64 },
    #[error("p = {0} is the characteristic")]
    CharacteristicIsP(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a primitive p-th root of unity")]
    NotPrimitiveRoot(String),
    #[error("{0} is not a power of ω")]
    NotPowerOfOmega(String),
    #[error("coset representatives are not a transversal: {0}")]
    NotTransversal(String),
    #[error("expected a {expected}-tuple, got {got} entries")]
    ArityMismatch { expected: usize, got: usize },
    #[error("tuple entries must be pairwise distinct")]
    RepeatedEntries,
    #[error("{tuples} tuples exceed the enumeration budget {TUPLE_BUDGET}")]
    BudgetExceeded { tuples: u64 },
    #[error("-1 is a square in F_{0}; the square tournament needs q ≡ 3 mod 4")]
    MinusOneIsSquare(u64),
    #[error("μ_{{2^{n}}} tournament inapplicable over F_{q}: {why}")]
    Mu2nInapplicable { q: u64, n: u32, why: String },
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Parameters `(F, p, ω, S)` of the p-ary relation.
#[derive(Debug, Clone)]
pub struct TournamentParams {
    field: FieldSpec,
    p: usize,
    omega: FFElem,
    /// `ω^0, …, ω^{p-1}`.
    omega_powers: Vec<FFElem>,
    reps: Vec<FFElem>,
    /// Membership in `S`, indexed by element index.
    in_reps: Vec<bool>,
}

fn check_arity(field: &FieldSpec, p: u64) -> Result<(), TournamentError> {
    if !numth::is_prime(p) {
        return Err(TournamentError::NotPrime(p));
    }
    if p == field.p() {
        return Err(TournamentError::CharacteristicIsP(p));
    }
    if (field.q() - 1) % p != 0 {
        return Err(TournamentError::NotDividing { p, q: field.q() });
    }
    Ok(())
}

/// The lexicographically least element of exact order `p`.
pub fn canonical_omega(field: &FieldSpec, p: u64) -> Result<FFElem, TournamentError> {
    check_arity(field, p)?;
    Ok(roots_of_unity(field, p)
        .into_iter()
        .filter(|z| !z.is_one())
        .min()
        .expect("p | q-1 gives a primitive p-th root"))
}

/// `S = {g^j : 0 <= j < (q-1)/p}` for the canonical generator `g`.
pub fn coset_representatives(field: &FieldSpec, p: u64) -> Result<Vec<FFElem>, TournamentError> {
    check_arity(field, p)?;
    let g = field.generator();
    let mut out = Vec::new();
    let mut x = field.one();
    for _ in 0..(field.q() - 1) / p {
        out.push(x.clone());
        x = &x * &g;
    }
    Ok(out)
}

impl TournamentParams {
    /// Canonical `ω` and `S`.
    pub fn canonical(field: &FieldSpec, p: u64) -> Result<Self, TournamentError> {
        let omega = canonical_omega(field, p)?;
        let reps = coset_representatives(field, p)?;
        Self::new(field, p, omega, reps)
    }

    /// Explicit parameters; `omega` must have order exactly `p` and `reps` must
    /// meet every coset of `μ_p` in `F^*` exactly once.
    pub fn new(
        field: &FieldSpec,
        p: u64,
        omega: FFElem,
        reps: Vec<FFElem>,
    ) -> Result<Self, TournamentError> {
        check_arity(field, p)?;
        omega.same_field(&field.one())?;
        if omega.is_zero() || omega.order()? != p {
            return Err(TournamentError::NotPrimitiveRoot(omega.to_string()));
        }
        let omega_powers: Vec<FFElem> = (0..p).map(|k| omega.pow_u(k)).collect();
        let q = field.q();
        let mut in_reps = vec![false; q as usize];
        let mut covered = vec![false; q as usize];
        for s in &reps {
            s.same_field(&omega)?;
            if s.is_zero() {
                return Err(TournamentError::NotTransversal("0 ∈ S".into()));
            }
            in_reps[s.index() as usize] = true;
            for z in &omega_powers {
                let idx = (s * z).index() as usize;
                if covered[idx] {
                    return Err(TournamentError::NotTransversal(format!(
                        "coset of {s} met twice"
                    )));
                }
                covered[idx] = true;
            }
        }
        if reps.len() as u64 != (q - 1) / p {
            return Err(TournamentError::NotTransversal(format!(
                "|S| = {}, expected {}",
                reps.len(),
                (q - 1) / p
            )));
        }
        Ok(TournamentParams {
            field: field.clone(),
            p: p as usize,
            omega,
            omega_powers,
            reps,
            in_reps,
        })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn omega(&self) -> &FFElem {
        &self.omega
    }

    pub fn reps(&self) -> &[FFElem] {
        &self.reps
    }

    pub fn in_reps(&self, x: &FFElem) -> bool {
        !x.is_zero() && self.in_reps[x.index() as usize]
    }

    /// `ω^k` for any integer `k`.
    pub fn omega_pow(&self, k: i64) -> &FFElem {
        &self.omega_powers[k.rem_euclid(self.p as i64) as usize]
    }

    /// `x_1 + w x_2 + … + w^{p-1} x_p` with `w = ω^i`.
    pub fn form(&self, i: i64, x: &[FFElem]) -> FFElem {
        x.iter()
            .enumerate()
            .fold(self.field.zero(), |acc, (j, xj)| {
                &acc + &(self.omega_pow(i * j as i64) * xj)
            })
    }

    fn check_tuple(&self, x: &[FFElem]) -> Result<(), TournamentError> {
        if x.len() != self.p {
            return Err(TournamentError::ArityMismatch {
                expected: self.p,
                got: x.len(),
            });
        }
        for xi in x {
            xi.same_field(&self.omega)?;
        }
        Ok(())
    }

    fn check_distinct(&self, x: &[FFElem]) -> Result<(), TournamentError> {
        self.check_tuple(x)?;
        for i in 0..x.len() {
            if x[i + 1..].contains(&x[i]) {
                return Err(TournamentError::RepeatedEntries);
            }
        }
        Ok(())
    }

    fn leading_index_unchecked(&self, x: &[FFElem]) -> Option<usize> {
        (1..self.p).find(|&i| !self.form(i as i64, x).is_zero())
    }

    fn holds_unchecked(&self, x: &[FFElem]) -> bool {
        match self.leading_index_unchecked(x) {
            Some(i) => self.in_reps(&self.form(i as i64, x)),
            None => false,
        }
    }
}

/// `R_w(x)` for `w` a power of `ω`: the form with root `w` lies in `S`.
pub fn r_omega_holds(
    params: &TournamentParams,
    omega_power: &FFElem,
    x: &[FFElem],
) -> Result<bool, TournamentError> {
    params.check_tuple(x)?;
    let k = params
        .omega_powers
        .iter()
        .position(|w| w == omega_power)
        .ok_or_else(|| TournamentError::NotPowerOfOmega(omega_power.to_string()))?;
    Ok(params.in_reps(&params.form(k as i64, x)))
}

/// Least `i ∈ {1, …, p-1}` whose `ω^i`-form is nonzero on a distinct tuple.
pub fn leading_index(params: &TournamentParams, x: &[FFElem]) -> Result<usize, TournamentError> {
    params.check_distinct(x)?;
    Ok(params
        .leading_index_unchecked(x)
        .expect("a tuple with distinct entries has a nonzero form"))
}

pub fn tournament_holds(params: &TournamentParams, x: &[FFElem]) -> Result<bool, TournamentError> {
    params.check_distinct(x)?;
    Ok(params.holds_unchecked(x))
}

/// `(x_k, x_{k+1}, …, x_{k-1})`.
pub fn rotate<T: Clone>(x: &[T], k: usize) -> Vec<T> {
    let n = x.len();
    (0..n).map(|j| x[(j + k) % n].clone()).collect()
}

fn falling_factorial(q: u64, p: u64) -> u64 {
    (0..p).fold(1u64, |acc, i| acc.saturating_mul(q.saturating_sub(i)))
}

/// Nonzero elements in discrete-log order, preceded by zero.
fn log_ordered_elements(field: &FieldSpec) -> Vec<FFElem> {
    let g = field.generator();
    let mut out = vec![field.zero()];
    let mut x = field.one();
    for _ in 0..field.q() - 1 {
        out.push(x.clone());
        x = &x * &g;
    }
    out
}

/// Visits every ordered tuple of `len` distinct elements starting with `first`.
fn for_each_distinct_tuple(
    elems: &[FFElem],
    first: usize,
    len: usize,
    f: &mut impl FnMut(&[FFElem]),
) {
    fn go(
        elems: &[FFElem],
        used: &mut Vec<bool>,
        tuple: &mut Vec<FFElem>,
        len: usize,
        f: &mut impl FnMut(&[FFElem]),
    ) {
        if tuple.len() == len {
            f(tuple);
            return;
        }
        for (i, e) in elems.iter().enumerate() {
            if used[i] {
                continue;
            }
            used[i] = true;
            tuple.push(e.clone());
            go(elems, used, tuple, len, f);
            tuple.pop();
            used[i] = false;
        }
    }
    let mut used = vec![false; elems.len()];
    used[first] = true;
    let mut tuple = vec![elems[first].clone()];
    go(elems, &mut used, &mut tuple, len, f);
}

fn literal_tuple(x: &[FFElem]) -> Vec<String> {
    x.iter().map(ToString::to_string).collect()
}

/// Exhaustively checks that every tuple of distinct elements has exactly one
/// rotation satisfying the tournament relation.
pub fn verify_p_tournament(params: &TournamentParams) -> Result<VerificationReport, TournamentError> {
    let start = Instant::now();
    let q = params.field.q();
    let tuples = falling_factorial(q, params.p as u64);
    if tuples > TUPLE_BUDGET {
        return Err(TournamentError::BudgetExceeded { tuples });
    }
    let elems = log_ordered_elements(&params.field);
    let subject = format!("{}-tournament on F_{}", params.p, q);
    let partials: Vec<VerificationReport> = (0..elems.len())
        .into_par_iter()
        .map(|first| {
            let mut rep = VerificationReport::new(subject.clone(), params.p);
            for_each_distinct_tuple(&elems, first, params.p, &mut |x| {
                let satisfied = (0..params.p)
                    .filter(|&k| params.holds_unchecked(&rotate(x, k)))
                    .count();
                rep.record(satisfied == 1, || literal_tuple(x));
            });
            rep
        })
        .collect();
    let mut report = partials
        .into_iter()
        .fold(VerificationReport::new(subject, params.p), VerificationReport::merge);
    report.wall_time_ms = elapsed_ms(start);
    Ok(report)
}

fn check_square_tournament_field(field: &FieldSpec) -> Result<(), TournamentError> {
    if field.p() == 2 || field.q() % 4 != 3 {
        return Err(TournamentError::MinusOneIsSquare(field.q()));
    }
    Ok(())
}

/// `R(x, y)` iff `x - y` is a nonzero square.
pub fn square_tournament_holds(
    field: &FieldSpec,
    x: &FFElem,
    y: &FFElem,
) -> Result<bool, TournamentError> {
    check_square_tournament_field(field)?;
    x.same_field(&field.one())?;
    x.same_field(y)?;
    if x == y {
        return Err(TournamentError::RepeatedEntries);
    }
    Ok((x - y).pow_u((field.q() - 1) / 2).is_one())
}

/// Checks the binary tournament axiom for the square relation over all ordered pairs.
pub fn verify_square_tournament(field: &FieldSpec) -> Result<VerificationReport, TournamentError> {
    check_square_tournament_field(field)?;
    let start = Instant::now();
    let mut report = VerificationReport::new(format!("square tournament on F_{}", field.q()), 2);
    for x in field.elements() {
        for y in field.elements() {
            if x == y {
                continue;
            }
            let a = square_tournament_holds(field, &x, &y)?;
            let b = square_tournament_holds(field, &y, &x)?;
            report.record(a != b, || literal_tuple(&[x.clone(), y.clone()]));
        }
    }
    report.wall_time_ms = elapsed_ms(start);
    Ok(report)
}

/// Binary tournament `R(x, y) ⟺ x - y ∈ ⋃_{c∈S} c·(F^*)^{2^n}` for a half `S` of `μ_{2^n}`.
#[derive(Debug, Clone)]
pub struct Mu2nTournament {
    pub field: FieldSpec,
    pub n: u32,
    /// `μ_{2^n}` in discrete-log order.
    pub mu: Vec<FFElem>,
    /// The lex-least element of each `±` pair of `μ_{2^n}`, sorted.
    pub s: Vec<FFElem>,
    /// `|(F^*)^{2^n}|`.
    pub power_subgroup_size: u64,
    /// `F^* = ⨆_{c ∈ μ_{2^n}} c·(F^*)^{2^n}` verified element by element.
    pub decomposition_ok: bool,
    pub report: VerificationReport,
    in_relation: Vec<bool>,
}

impl Mu2nTournament {
    pub fn holds(&self, x: &FFElem, y: &FFElem) -> bool {
        let d = x - y;
        !d.is_zero() && self.in_relation[d.index() as usize]
    }

    pub fn passed(&self) -> bool {
        self.decomposition_ok && self.report.passed()
    }
}

pub fn mu2n_tournament(field: &FieldSpec, n: u32) -> Result<Mu2nTournament, TournamentError> {
    let q = field.q();
    let fail = |why: &str| TournamentError::Mu2nInapplicable {
        q,
        n,
        why: why.to_string(),
    };
    if field.p() == 2 {
        return Err(fail("characteristic 2"));
    }
    if n == 0 {
        return Err(fail("-1 ∉ μ_1"));
    }
    let m = 1u64 << n;
    if (q - 1) % m != 0 {
        return Err(fail("μ_{2^n} ⊄ F"));
    }
    if (q - 1) % (2 * m) == 0 {
        return Err(fail("F contains μ_{2^{n+1}}"));
    }
    let start = Instant::now();
    let mu = roots_of_unity(field, m);
    let minus_one = -field.one();
    let mut s: Vec<FFElem> = mu
        .iter()
        .filter(|c| **c <= &minus_one * *c)
        .cloned()
        .collect();
    s.sort();

    let mut is_power = vec![false; q as usize];
    for x in field.nonzero_elements() {
        is_power[x.pow_u(m).index() as usize] = true;
    }
    let power_subgroup_size = is_power.iter().filter(|&&b| b).count() as u64;
    let mu_inv: Vec<FFElem> = mu.iter().map(|c| c.inv().expect("unit")).collect();
    let decomposition_ok = power_subgroup_size * m == q - 1
        && field.nonzero_elements().all(|x| {
            mu_inv
                .iter()
                .filter(|ci| is_power[(&x * *ci).index() as usize])
                .count()
                == 1
        });

    let mut in_relation = vec![false; q as usize];
    for y in field.nonzero_elements().filter(|y| is_power[y.index() as usize]) {
        for c in &s {
            in_relation[(c * &y).index() as usize] = true;
        }
    }
    let mut t = Mu2nTournament {
        field: field.clone(),
        n,
        mu,
        s,
        power_subgroup_size,
        decomposition_ok,
        report: VerificationReport::new(format!("μ_{m} tournament on F_{q}"), 2),
        in_relation,
    };
    let mut report = t.report.clone();
    for x in field.elements() {
        for y in field.elements() {
            if x != y {
                let ok = t.holds(&x, &y) != t.holds(&y, &x);
                report.record(ok, || literal_tuple(&[x.clone(), y.clone()]));
            }
        }
    }
    report.wall_time_ms = elapsed_ms(start);
    t.report = report;
    Ok(t)
}

/// `[F^* : (F^*)^p]` by enumerating p-th powers.
pub fn power_index(field: &FieldSpec, p: u64) -> u64 {
    let mut seen = vec![false; field.q() as usize];
    let mut count = 0u64;
    for x in field.nonzero_elements() {
        let idx = x.pow_u(p).index() as usize;
        if !seen[idx] {
            seen[idx] = true;
            count += 1;
        }
    }
    (field.q() - 1) / count
}

/// Rank and right kernel of the `(p-1) × p` matrix with rows `(ω^{ij})_{j}`, `i = 1..p-1`.
pub fn vandermonde_kernel_dim(
    p: u64,
    omega: &FFElem,
) -> Result<(usize, Vec<Vec<FFElem>>), TournamentError> {
    if omega.is_zero() || omega.order()? != p {
        return Err(TournamentError::NotPrimitiveRoot(omega.to_string()));
    }
    let field = omega.field();
    let rows = (1..p)
        .map(|i| (0..p).map(|j| omega.pow_u(i * j)).collect())
        .collect();
    let m = Matrix::from_rows(field, rows);
    Ok((m.rank(), m.kernel()))
}

/// Combinatorial check that no p-cycle can preserve a p-tournament.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ObstructionReport {
    pub p: usize,
    /// `(r, r')`: if rotation `r` of the cycle's tuple holds, the image under the
    /// cycle map is rotation `r'`.
    pub cases: Vec<(usize, usize)>,
    /// Size of the orbit of rotation 0 under the cycle map.
    pub orbit_size: usize,
    /// True when every case moves, so invariance would force two rotations to hold.
    pub holds: bool,
}

/// For the tuple `(a_0, …, a_{p-1})` of a p-cycle `σ(a_i) = a_{i+1}`, applying `σ`
/// to rotation `r` yields rotation `r + 1`. An automorphism would carry the unique
/// satisfied rotation to another satisfied rotation.
pub fn p_cycle_obstruction(p: usize) -> ObstructionReport {
    let base: Vec<usize> = (0..p).collect();
    let sigma = |t: &[usize]| t.iter().map(|&a| (a + 1) % p).collect::<Vec<_>>();
    let rotations: Vec<Vec<usize>> = (0..p).map(|r| rotate(&base, r)).collect();
    let cases: Vec<(usize, usize)> = (0..p)
        .map(|r| {
            let img = sigma(&rotations[r]);
            let r2 = rotations
                .iter()
                .position(|t| *t == img)
                .expect("σ permutes the rotations");
            (r, r2)
        })
        .collect();
    let mut orbit = vec![0usize];
    loop {
        let next = cases[*orbit.last().unwrap()].1;
        if next == 0 {
            break;
        }
        orbit.push(next);
    }
    let holds = p >= 2 && cases.iter().all(|&(r, r2)| r != r2);
    ObstructionReport {
        p,
        cases,
        orbit_size: orbit.len(),
        holds,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    fn f7_params() -> TournamentParams {
        TournamentParams::canonical(&make_field(7, 1).unwrap(), 3).unwrap()
    }

    fn ints(field: &FieldSpec, v: &[i64]) -> Vec<FFElem> {
        v.iter().map(|&x| field.from_int(x)).collect()
    }

    #[test]
    fn canonical_parameters() {
        let f7 = make_field(7, 1).unwrap();
        let t = f7_params();
        assert_eq!(t.omega(), &f7.from_int(2));
        assert_eq!(t.reps(), ints(&f7, &[1, 3]).as_slice());
        assert_eq!(coset_representatives(&f7, 2).unwrap(), ints(&f7, &[1, 3, 2]));
        let f4 = make_field(2, 2).unwrap();
        assert_eq!(coset_representatives(&f4, 3).unwrap(), vec![f4.one()]);
        assert!(matches!(
            coset_representatives(&f7, 5),
            Err(TournamentError::NotDividing { .. })
        ));
        assert!(matches!(
            coset_representatives(&f7, 7),
            Err(TournamentError::CharacteristicIsP(7))
        ));
    }

    #[test]
    fn r_omega_examples() {
        let t = f7_params();
        let f7 = t.field().clone();
        let w = f7.from_int(2);
        assert!(r_omega_holds(&t, &w, &ints(&f7, &[0, 1, 2])).unwrap());
        assert!(!r_omega_holds(&t, &w, &ints(&f7, &[1, 2, 0])).unwrap());
        // 1 + 2·2 + 4·1 = 9 ≡ 2? pick a tuple whose form vanishes: (1,2,4) at ω.
        assert!(t.form(1, &ints(&f7, &[1, 2, 4])).is_zero());
        assert!(!r_omega_holds(&t, &w, &ints(&f7, &[1, 2, 4])).unwrap());
        assert!(matches!(
            r_omega_holds(&t, &w, &ints(&f7, &[1, 2])),
            Err(TournamentError::ArityMismatch { expected: 3, got: 2 })
        ));
        assert!(matches!(
            r_omega_holds(&t, &f7.from_int(3), &ints(&f7, &[0, 1, 2])),
            Err(TournamentError::NotPowerOfOmega(_))
        ));
    }

    #[test]
    fn leading_index_examples() {
        let t = f7_params();
        let f7 = t.field().clone();
        assert_eq!(leading_index(&t, &ints(&f7, &[1, 2, 4])), Ok(2));
        assert_eq!(leading_index(&t, &ints(&f7, &[0, 1, 2])), Ok(1));
        assert_eq!(
            leading_index(&t, &ints(&f7, &[1, 1, 2])),
            Err(TournamentError::RepeatedEntries)
        );
    }

    #[test]
    fn tournament_examples() {
        let t = f7_params();
        let f7 = t.field().clone();
        assert!(tournament_holds(&t, &ints(&f7, &[0, 1, 2])).unwrap());
        assert!(!tournament_holds(&t, &ints(&f7, &[1, 2, 0])).unwrap());
        assert!(!tournament_holds(&t, &ints(&f7, &[2, 0, 1])).unwrap());
        assert!(t.form(1, &ints(&f7, &[0, 1, 3])).is_zero());
        assert_eq!(t.form(2, &ints(&f7, &[0, 1, 3])), f7.from_int(3));
        assert!(tournament_holds(&t, &ints(&f7, &[0, 1, 3])).unwrap());
    }

    #[test]
    fn exhaustive_small_cases() {
        let r = verify_p_tournament(&f7_params()).unwrap();
        assert_eq!(r.tuples_checked, 210);
        assert!(r.passed(), "{r:?}");
        let f4 = make_field(2, 2).unwrap();
        let r = verify_p_tournament(&TournamentParams::canonical(&f4, 3).unwrap()).unwrap();
        assert_eq!(r.tuples_checked, 24);
        assert!(r.passed());
    }

    #[test]
    fn bad_transversal_rejected() {
        let f7 = make_field(7, 1).unwrap();
        let w = f7.from_int(2);
        // 1 and 2 lie in the same coset of μ_3
        assert!(matches!(
            TournamentParams::new(&f7, 3, w.clone(), ints(&f7, &[1, 2])),
            Err(TournamentError::NotTransversal(_))
        ));
        assert!(matches!(
            TournamentParams::new(&f7, 3, w.clone(), ints(&f7, &[1])),
            Err(TournamentError::NotTransversal(_))
        ));
        assert!(matches!(
            TournamentParams::new(&f7, 3, f7.one(), ints(&f7, &[1, 3])),
            Err(TournamentError::NotPrimitiveRoot(_))
        ));
    }

    #[test]
    fn broken_transversal_gives_violations() {
        // Bypass validation: a relation with S = {1} misses tuples whose form lands in 3·μ_3.
        let mut t = f7_params();
        t.in_reps[3] = false;
        let r = verify_p_tournament(&t).unwrap();
        assert!(!r.passed());
        assert!(!r.violations.is_empty() && r.violations.len() <= 10);
    }

    #[test]
    fn square_tournament_examples() {
        let f7 = make_field(7, 1).unwrap();
        let (one, three) = (f7.from_int(1), f7.from_int(3));
        assert!(square_tournament_holds(&f7, &three, &one).unwrap());
        assert!(!square_tournament_holds(&f7, &one, &three).unwrap());
        let r = verify_square_tournament(&f7).unwrap();
        assert_eq!(r.tuples_checked, 42);
        assert!(r.passed());
        assert!(matches!(
            verify_square_tournament(&make_field(13, 1).unwrap()),
            Err(TournamentError::MinusOneIsSquare(13))
        ));
    }

    #[test]
    fn mu2n_examples() {
        let f13 = make_field(13, 1).unwrap();
        let t = mu2n_tournament(&f13, 2).unwrap();
        assert_eq!(t.s, ints(&f13, &[1, 5]));
        assert_eq!(t.power_subgroup_size, 3);
        assert!(t.passed());
        let f5 = make_field(5, 1).unwrap();
        let t = mu2n_tournament(&f5, 2).unwrap();
        assert_eq!(t.s, ints(&f5, &[1, 2]));
        assert!(t.passed());
        assert!(mu2n_tournament(&f13, 1).is_err()); // μ_4 ⊆ F_13
        assert!(mu2n_tournament(&f13, 3).is_err()); // μ_8 ⊄ F_13
    }

    #[test]
    fn power_index_examples() {
        let f7 = make_field(7, 1).unwrap();
        assert_eq!(power_index(&f7, 3), 3);
        assert_eq!(power_index(&f7, 5), 1);
        assert_eq!(power_index(&make_field(13, 1).unwrap(), 2), 2);
    }

    #[test]
    fn vandermonde_examples() {
        let f7 = make_field(7, 1).unwrap();
        let (rank, ker) = vandermonde_kernel_dim(3, &f7.from_int(2)).unwrap();
        assert_eq!(rank, 2);
        assert_eq!(ker, vec![ints(&f7, &[1, 1, 1])]);
        let (rank, ker) = vandermonde_kernel_dim(2, &f7.from_int(6)).unwrap();
        assert_eq!(rank, 1);
        assert_eq!(ker, vec![ints(&f7, &[1, 1])]);
        assert!(vandermonde_kernel_dim(3, &f7.from_int(3)).is_err());
    }

    #[test]
    fn obstruction_examples() {
        for p in [2, 3, 5] {
            let r = p_cycle_obstruction(p);
            assert!(r.holds);
            assert_eq!(r.orbit_size, p);
            assert_eq!(r.cases.len(), p);
        }
        assert_eq!(p_cycle_obstruction(2).cases, vec![(0, 1), (1, 0)]);
    }
}

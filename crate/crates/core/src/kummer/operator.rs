//! Finite abelian groups with three commuting endomorphisms `P, S, T`, and the
//! statement: if `P` is surjective, `T` kills `A_0 = ⋃ ker P^n`, and
//! `A_0 ∩ ker S ⊆ ker P^N`, then `S(a) = 0 ∧ T(P(a)) = 0 ⟹ T(a) = 0`.
//!
//! On a finite group a surjective `P` is bijective, which makes the statement
//! degenerate. [`LemmaMode::Relaxed`] replaces surjectivity by the only thing
//! the argument actually consumes: a preimage chain of `b = P(a)` of length
//! `N + 1`, i.e. `b ∈ P^{N+1}(A)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use num_integer::Integer;

use crate::report::MAX_WITNESSES;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OperatorError {
    #[error("cyclic orders must be positive")]
    ZeroOrder,
    #[error("group of size {0} is too large to enumerate")]
    TooLarge(u128),
    #[error("{name} has shape {rows}x{cols}, expected {k}x{k}")]
    Shape {
        name: &'static str,
        rows: usize,
        cols: usize,
        k: usize,
    },
    #[error("{0} does not respect the cyclic orders")]
    NotWellDefined(&'static str),
    #[error("{0} and {1} do not commute")]
    NotCommuting(&'static str, &'static str),
    #[error("element {0:?} is not in the group")]
    BadElement(Vec<u64>),
}

/// Largest group the checker will enumerate.
pub const MAX_GROUP_SIZE: u64 = 1 << 16;

/// `A = ⊕ ℤ/orders[i]`; endomorphisms act on exponent vectors by `y_i = Σ_j M[i][j] x_j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperatorInstance {
    pub orders: Vec<u64>,
    pub p: Vec<Vec<i64>>,
    pub s: Vec<Vec<i64>>,
    pub t: Vec<Vec<i64>>,
    pub n_bound: u32,
}

type Table = Vec<u32>;

struct Group {
    orders: Vec<u64>,
    size: usize,
}

impl Group {
    fn new(orders: &[u64]) -> Result<Self, OperatorError> {
        if orders.contains(&0) {
            return Err(OperatorError::ZeroOrder);
        }
        let size: u128 = orders.iter().map(|&o| o as u128).product();
        if size > MAX_GROUP_SIZE as u128 {
            return Err(OperatorError::TooLarge(size));
        }
        Ok(Group {
            orders: orders.to_vec(),
            size: size as usize,
        })
    }

    fn index(&self, x: &[u64]) -> usize {
        x.iter()
            .zip(&self.orders)
            .fold(0u64, |acc, (&xi, &o)| acc * o + xi) as usize
    }

    fn vector(&self, mut idx: usize) -> Vec<u64> {
        let mut v = vec![0; self.orders.len()];
        for (slot, &o) in v.iter_mut().zip(&self.orders).rev() {
            *slot = idx as u64 % o;
            idx /= o as usize;
        }
        v
    }

    fn apply(&self, m: &[Vec<i64>], x: &[u64]) -> Vec<u64> {
        m.iter()
            .zip(&self.orders)
            .map(|(row, &o)| {
                let s: i128 = row.iter().zip(x).map(|(&a, &b)| a as i128 * b as i128).sum();
                s.rem_euclid(o as i128) as u64
            })
            .collect()
    }

    fn table(&self, m: &[Vec<i64>]) -> Table {
        (0..self.size)
            .map(|i| self.index(&self.apply(m, &self.vector(i))) as u32)
            .collect()
    }

    /// Column `j` times `orders[j]` must vanish.
    fn well_defined(&self, m: &[Vec<i64>]) -> bool {
        let k = self.orders.len();
        (0..k).all(|j| {
            (0..k).all(|i| (m[i][j] as i128 * self.orders[j] as i128).rem_euclid(self.orders[i] as i128) == 0)
        })
    }
}

fn compose(f: &Table, g: &Table) -> Table {
    g.iter().map(|&y| f[y as usize]).collect()
}

fn check_shape(name: &'static str, m: &[Vec<i64>], k: usize) -> Result<(), OperatorError> {
    let bad = m.len() != k || m.iter().any(|r| r.len() != k);
    if bad {
        return Err(OperatorError::Shape {
            name,
            rows: m.len(),
            cols: m.first().map_or(0, Vec::len),
            k,
        });
    }
    Ok(())
}

/// Everything about an instance that does not depend on `a`.
struct Analysis {
    group: Group,
    p: Table,
    s: Table,
    t: Table,
    /// `depth[x]` = least `n` with `P^n(x) = 0`.
    depth: Vec<Option<u32>>,
    /// index at which `ker P^n` stabilises
    stabilizes_at: u32,
    surjective: bool,
    t_kills_a0: bool,
    kernel_bound: bool,
    /// `P^{N+1}(A)`
    deep_image: Vec<bool>,
    /// `P^N`
    p_n: Table,
}

impl Analysis {
    fn new(inst: &OperatorInstance) -> Result<Self, OperatorError> {
        let group = Group::new(&inst.orders)?;
        let k = inst.orders.len();
        for (name, m) in [("P", &inst.p), ("S", &inst.s), ("T", &inst.t)] {
            check_shape(name, m, k)?;
            if !group.well_defined(m) {
                return Err(OperatorError::NotWellDefined(name));
            }
        }
        let p = group.table(&inst.p);
        let s = group.table(&inst.s);
        let t = group.table(&inst.t);
        for (a, b, fa, fb) in [("P", "S", &p, &s), ("P", "T", &p, &t), ("S", "T", &s, &t)] {
            if compose(fa, fb) != compose(fb, fa) {
                return Err(OperatorError::NotCommuting(a, b));
            }
        }
        let n = group.size;
        // depth via BFS from 0 along preimages
        let mut depth = vec![None; n];
        depth[0] = Some(0);
        let mut changed = true;
        let mut level = 0;
        let mut stabilizes_at = 0;
        while changed {
            changed = false;
            level += 1;
            for x in 0..n {
                if depth[x].is_none() && depth[p[x] as usize] == Some(level - 1) {
                    depth[x] = Some(level);
                    changed = true;
                }
            }
            if changed {
                stabilizes_at = level;
            }
        }
        let mut image = vec![false; n];
        for &y in &p {
            image[y as usize] = true;
        }
        let surjective = image.iter().all(|&b| b);
        let t_kills_a0 = (0..n).all(|x| depth[x].is_none() || t[x] == 0);
        let kernel_bound =
            (0..n).all(|x| !(depth[x].is_some() && s[x] == 0) || depth[x] <= Some(inst.n_bound));
        let mut p_n: Table = (0..n as u32).collect();
        for _ in 0..inst.n_bound {
            p_n = compose(&p, &p_n);
        }
        let deep = compose(&p, &p_n);
        let mut deep_image = vec![false; n];
        for &y in &deep {
            deep_image[y as usize] = true;
        }
        Ok(Analysis {
            group,
            p,
            s,
            t,
            depth,
            stabilizes_at,
            surjective,
            t_kills_a0,
            kernel_bound,
            deep_image,
            p_n,
        })
    }

    /// `ok[b]` iff `T(C_b) ⊆ A_0 ∩ ker P^N` with chains of length ≤ `depth_bound`.
    fn intermediate_by_target(&self, depth_bound: u32) -> Vec<bool> {
        let n = self.group.size;
        let mut ok = vec![true; n];
        let mut cur: Table = (0..n as u32).collect();
        for _ in 0..=depth_bound {
            for x in 0..n {
                let tx = self.t[x] as usize;
                if self.depth[tx].is_none() || self.p_n[tx] != 0 {
                    ok[cur[x] as usize] = false;
                }
            }
            cur = compose(&self.p, &cur);
        }
        ok
    }

    fn a0_size(&self) -> u64 {
        self.depth.iter().filter(|d| d.is_some()).count() as u64
    }

    fn verdict(&self, a: usize, depth_bound: u32, mode: LemmaMode) -> LemmaVerdict {
        let b = self.p[a] as usize;
        let premise = self.s[a] == 0 && self.t[b] == 0;
        let conclusion = !premise || self.t[a] == 0;
        let chain_hypothesis = self.deep_image[b];
        let first = match mode {
            LemmaMode::Strict => self.surjective,
            LemmaMode::Relaxed => chain_hypothesis,
        };
        let hypotheses = first && self.t_kills_a0 && self.kernel_bound;

        // C_b = {x : P^n(x) = b for some n ≤ depth_bound}
        let n = self.group.size;
        let mut chain: Vec<(u32, usize)> = Vec::new();
        let mut cur: Vec<u32> = (0..n as u32).collect();
        for level in 0..=depth_bound {
            for x in 0..n {
                if cur[x] as usize == b && !chain.iter().any(|&(_, y)| y == x) {
                    chain.push((level, x));
                }
            }
            cur = compose(&self.p, &cur);
        }
        let intermediate = (self.t_kills_a0 && self.kernel_bound && premise).then(|| {
            chain.iter().all(|&(_, x)| {
                let tx = self.t[x] as usize;
                self.depth[tx].is_some() && self.p_n[tx] == 0
            })
        });
        LemmaVerdict {
            mode,
            a: self.group.vector(a),
            p_surjective: self.surjective,
            chain_hypothesis,
            t_vanishes_on_a0: self.t_kills_a0,
            kernel_bound: self.kernel_bound,
            hypotheses_hold: hypotheses,
            a0_size: self.a0_size(),
            a0_stabilizes_at: self.stabilizes_at,
            premise,
            conclusion_holds: conclusion,
            chain_size: chain.len() as u64,
            chain_max_depth: chain.iter().map(|&(d, _)| d).max().unwrap_or(0),
            chain_sample: chain
                .iter()
                .take(MAX_WITNESSES)
                .map(|&(d, x)| (d, self.group.vector(x)))
                .collect(),
            intermediate_facts: intermediate,
            consistent: !hypotheses || conclusion,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LemmaMode {
    /// Hypothesis (1) is "P is surjective".
    Strict,
    /// Hypothesis (1) is "P(a) ∈ P^{N+1}(A)".
    Relaxed,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaVerdict {
    pub mode: LemmaMode,
    pub a: Vec<u64>,
    pub p_surjective: bool,
    pub chain_hypothesis: bool,
    pub t_vanishes_on_a0: bool,
    pub kernel_bound: bool,
    pub hypotheses_hold: bool,
    pub a0_size: u64,
    pub a0_stabilizes_at: u32,
    /// `S(a) = 0 ∧ T(P(a)) = 0`.
    pub premise: bool,
    /// `premise ⟹ T(a) = 0`.
    pub conclusion_holds: bool,
    pub chain_size: u64,
    pub chain_max_depth: u32,
    /// First few `(n, x)` with `P^n(x) = P(a)`.
    pub chain_sample: Vec<(u32, Vec<u64>)>,
    /// `T(C_b) ⊆ A_0 ∩ ker P^N`, evaluated when (2), (3) and the premise hold.
    pub intermediate_facts: Option<bool>,
    /// `hypotheses ⟹ conclusion`.
    pub consistent: bool,
}

pub fn operator_lemma_check(
    inst: &OperatorInstance,
    a: &[u64],
    depth_bound: u32,
    mode: LemmaMode,
) -> Result<LemmaVerdict, OperatorError> {
    let an = Analysis::new(inst)?;
    if a.len() != inst.orders.len() || a.iter().zip(&inst.orders).any(|(x, o)| x >= o) {
        return Err(OperatorError::BadElement(a.to_vec()));
    }
    Ok(an.verdict(an.group.index(a), depth_bound, mode))
}

/// An instance and element where exactly one hypothesis fails, the premise
/// holds, and the conclusion fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NecessityWitness {
    pub trial: u64,
    pub mode: LemmaMode,
    /// 1, 2 or 3.
    pub broken: u8,
    pub instance: OperatorInstance,
    pub a: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FuzzReport {
    pub seed: u64,
    pub trials: u64,
    pub max_group_size: u64,
    /// Trials whose random triple failed to commute after all retries.
    pub rejected: u64,
    pub pairs_checked: u64,
    /// Instances with (1) strict, (1) for some `a` relaxed, (2), (3).
    pub hypothesis_tallies: [u64; 4],
    /// Instances where all strict hypotheses hold.
    pub strict_instances: u64,
    /// `(instance, a)` pairs where all relaxed hypotheses hold.
    pub relaxed_pairs: u64,
    /// Relaxed pairs that also satisfy the premise.
    pub relaxed_pairs_with_premise: u64,
    pub counterexamples: u64,
    pub counterexample_witnesses: Vec<NecessityWitness>,
    pub intermediate_failures: u64,
    /// First witness for each (mode, broken hypothesis), in trial order.
    pub necessity_witnesses: Vec<NecessityWitness>,
}

impl FuzzReport {
    pub fn passed(&self) -> bool {
        self.counterexamples == 0 && self.intermediate_failures == 0
    }

    pub fn has_witness_for(&self, hypothesis: u8) -> bool {
        self.necessity_witnesses.iter().any(|w| w.broken == hypothesis)
    }
}

const RETRIES: usize = 32;

fn random_orders(rng: &mut ChaCha8Rng, max_size: u64) -> Vec<u64> {
    const CHOICES: [u64; 10] = [2, 3, 4, 4, 5, 8, 8, 9, 16, 27];
    let k = rng.gen_range(0..=3);
    let mut orders = Vec::with_capacity(k);
    let mut size = 1;
    for _ in 0..k {
        let o = CHOICES[rng.gen_range(0..CHOICES.len())];
        if size * o <= max_size {
            size *= o;
            orders.push(o);
        }
    }
    orders
}

/// A uniformly random endomorphism of `⊕ ℤ/o_i`: entry `(i, j)` is a multiple of `o_i / gcd(o_i, o_j)`.
fn random_endo(rng: &mut ChaCha8Rng, orders: &[u64]) -> Vec<Vec<i64>> {
    orders
        .iter()
        .map(|&oi| {
            orders
                .iter()
                .map(|&oj| {
                    let g = oi.gcd(&oj);
                    (rng.gen_range(0..g) * (oi / g)) as i64
                })
                .collect()
        })
        .collect()
}

fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>], orders: &[u64]) -> Vec<Vec<i64>> {
    let k = orders.len();
    (0..k)
        .map(|i| {
            (0..k)
                .map(|j| {
                    let s: i128 = (0..k).map(|l| a[i][l] as i128 * b[l][j] as i128).sum();
                    s.rem_euclid(orders[i] as i128) as i64
                })
                .collect()
        })
        .collect()
}

/// `c_0 + c_1 M + c_2 M^2` with small random coefficients.
fn random_poly(rng: &mut ChaCha8Rng, m: &[Vec<i64>], m2: &[Vec<i64>], orders: &[u64]) -> Vec<Vec<i64>> {
    let k = orders.len();
    let c: [i64; 3] = [rng.gen_range(-2..=3), rng.gen_range(-2..=3), rng.gen_range(-1..=1)];
    (0..k)
        .map(|i| {
            (0..k)
                .map(|j| {
                    let id = i64::from(i == j);
                    (c[0] * id + c[1] * m[i][j] + c[2] * m2[i][j]).rem_euclid(orders[i] as i64)
                })
                .collect()
        })
        .collect()
}

fn random_instance(rng: &mut ChaCha8Rng, max_size: u64) -> Option<OperatorInstance> {
    let orders = random_orders(rng, max_size);
    let n_bound = rng.gen_range(0..=3);
    // mostly polynomials in one endomorphism (commuting by construction);
    // sometimes independent draws, kept only if they happen to commute
    if rng.gen_bool(0.8) {
        let m = random_endo(rng, &orders);
        let m2 = mat_mul(&m, &m, &orders);
        let p = random_poly(rng, &m, &m2, &orders);
        let s = random_poly(rng, &m, &m2, &orders);
        let t = random_poly(rng, &m, &m2, &orders);
        return Some(OperatorInstance { orders, p, s, t, n_bound });
    }
    for _ in 0..RETRIES {
        let inst = OperatorInstance {
            p: random_endo(rng, &orders),
            s: random_endo(rng, &orders),
            t: random_endo(rng, &orders),
            orders: orders.clone(),
            n_bound,
        };
        if Analysis::new(&inst).is_ok() {
            return Some(inst);
        }
    }
    None
}

#[derive(Default)]
struct TrialOutcome {
    rejected: u64,
    pairs: u64,
    tallies: [u64; 4],
    strict: u64,
    relaxed_pairs: u64,
    relaxed_premise: u64,
    counterexamples: Vec<NecessityWitness>,
    counterexample_count: u64,
    intermediate_failures: u64,
    witnesses: Vec<NecessityWitness>,
}

fn run_trial(seed: u64, trial: u64, max_size: u64) -> TrialOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    let mut out = TrialOutcome::default();
    let Some(inst) = random_instance(&mut rng, max_size) else {
        out.rejected = 1;
        return out;
    };
    let an = Analysis::new(&inst).expect("generated instances are valid");
    out.tallies[0] = an.surjective as u64;
    out.tallies[2] = an.t_kills_a0 as u64;
    out.tallies[3] = an.kernel_bound as u64;
    out.strict = (an.surjective && an.t_kills_a0 && an.kernel_bound) as u64;
    let intermediate = (an.t_kills_a0 && an.kernel_bound)
        .then(|| an.intermediate_by_target(inst.n_bound + 1));
    let mut seen = [[false; 3]; 2];
    for a in 0..an.group.size {
        out.pairs += 1;
        let b = an.p[a] as usize;
        let premise = an.s[a] == 0 && an.t[b] == 0;
        let conclusion = !premise || an.t[a] == 0;
        let chain = an.deep_image[b];
        if chain {
            out.tallies[1] = 1;
        }
        for (mi, (mode, first)) in [(LemmaMode::Strict, an.surjective), (LemmaMode::Relaxed, chain)]
            .into_iter()
            .enumerate()
        {
            let flags = [first, an.t_kills_a0, an.kernel_bound];
            let broken: Vec<usize> = (0..3).filter(|&i| !flags[i]).collect();
            let witness = |broken: u8| NecessityWitness {
                trial,
                mode,
                broken,
                instance: inst.clone(),
                a: an.group.vector(a),
            };
            if broken.is_empty() {
                if mode == LemmaMode::Relaxed {
                    out.relaxed_pairs += 1;
                    out.relaxed_premise += premise as u64;
                }
                if !conclusion {
                    out.counterexample_count += 1;
                    if out.counterexamples.len() < MAX_WITNESSES {
                        out.counterexamples.push(witness(0));
                    }
                }
            } else if broken.len() == 1 && !conclusion && !seen[mi][broken[0]] {
                seen[mi][broken[0]] = true;
                out.witnesses.push(witness(broken[0] as u8 + 1));
            }
        }
        if let Some(ok) = &intermediate {
            if premise && !ok[b] {
                out.intermediate_failures += 1;
            }
        }
    }
    out
}

/// Random instances with per-trial RNG streams `(seed, trial)`; the report does
/// not depend on the thread count.
pub fn operator_lemma_fuzz(seed: u64, trials: u64, max_group_size: u64) -> FuzzReport {
    let max_size = max_group_size.clamp(1, MAX_GROUP_SIZE);
    let outcomes: Vec<TrialOutcome> = (0..trials)
        .into_par_iter()
        .map(|t| run_trial(seed, t, max_size))
        .collect();
    let mut report = FuzzReport {
        seed,
        trials,
        max_group_size: max_size,
        rejected: 0,
        pairs_checked: 0,
        hypothesis_tallies: [0; 4],
        strict_instances: 0,
        relaxed_pairs: 0,
        relaxed_pairs_with_premise: 0,
        counterexamples: 0,
        counterexample_witnesses: Vec::new(),
        intermediate_failures: 0,
        necessity_witnesses: Vec::new(),
    };
    for o in outcomes {
        report.rejected += o.rejected;
        report.pairs_checked += o.pairs;
        for (acc, v) in report.hypothesis_tallies.iter_mut().zip(o.tallies) {
            *acc += v;
        }
        report.strict_instances += o.strict;
        report.relaxed_pairs += o.relaxed_pairs;
        report.relaxed_pairs_with_premise += o.relaxed_premise;
        report.counterexamples += o.counterexample_count;
        let room = MAX_WITNESSES - report.counterexample_witnesses.len();
        report
            .counterexample_witnesses
            .extend(o.counterexamples.into_iter().take(room));
        report.intermediate_failures += o.intermediate_failures;
        for w in o.witnesses {
            let dup = report
                .necessity_witnesses
                .iter()
                .any(|x| x.mode == w.mode && x.broken == w.broken);
            if !dup {
                report.necessity_witnesses.push(w);
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag(v: &[i64]) -> Vec<Vec<i64>> {
        (0..v.len())
            .map(|i| (0..v.len()).map(|j| if i == j { v[i] } else { 0 }).collect())
            .collect()
    }

    fn all_vectors(orders: &[u64]) -> Vec<Vec<u64>> {
        let g = Group::new(orders).unwrap();
        (0..g.size).map(|i| g.vector(i)).collect()
    }

    #[test]
    fn identity_p_is_degenerate() {
        let orders = vec![4, 2];
        let inst = OperatorInstance {
            orders: orders.clone(),
            p: diag(&[1, 1]),
            s: diag(&[2, 1]),
            t: diag(&[3, 0]),
            n_bound: 0,
        };
        for a in all_vectors(&orders) {
            let v = operator_lemma_check(&inst, &a, 2, LemmaMode::Strict).unwrap();
            assert!(v.p_surjective && v.hypotheses_hold && v.consistent);
            assert_eq!(v.a0_size, 1);
        }
    }

    #[test]
    fn bijective_p_exhaustive() {
        let orders = vec![8, 9];
        let inst = OperatorInstance {
            orders: orders.clone(),
            p: diag(&[5, 5]),
            s: diag(&[4, 3]),
            t: diag(&[2, 6]),
            n_bound: 1,
        };
        for a in all_vectors(&orders) {
            let v = operator_lemma_check(&inst, &a, 3, LemmaMode::Strict).unwrap();
            assert!(v.p_surjective && v.hypotheses_hold);
            assert!(v.consistent, "{a:?}");
        }
    }

    #[test]
    fn necessity_of_t_vanishing() {
        let inst = OperatorInstance {
            orders: vec![8],
            p: vec![vec![2]],
            s: vec![vec![4]],
            t: vec![vec![1]],
            n_bound: 2,
        };
        let v = operator_lemma_check(&inst, &[4], 3, LemmaMode::Relaxed).unwrap();
        assert!(v.chain_hypothesis && v.kernel_bound);
        assert!(!v.t_vanishes_on_a0);
        assert!(v.premise && !v.conclusion_holds);
        assert_eq!(v.a0_size, 8);
        assert_eq!(v.a0_stabilizes_at, 3);
    }

    #[test]
    fn relaxed_mode_exercises_chains() {
        // ℤ/9 ⊕ ℤ/4 with P = (1, 2): A_0 = 0 ⊕ ℤ/4, T kills it, S = (3, 0).
        let inst = OperatorInstance {
            orders: vec![9, 4],
            p: diag(&[1, 2]),
            s: diag(&[3, 0]),
            t: diag(&[2, 0]),
            n_bound: 2,
        };
        let mut chains = 0;
        for a in all_vectors(&inst.orders) {
            let v = operator_lemma_check(&inst, &a, 2, LemmaMode::Relaxed).unwrap();
            assert!(v.consistent);
            if v.hypotheses_hold {
                chains += 1;
                assert!(v.chain_size >= 1);
            }
        }
        assert!(chains > 0);
    }

    #[test]
    fn rejects_bad_instances() {
        let base = OperatorInstance {
            orders: vec![4, 2],
            p: diag(&[1, 1]),
            s: diag(&[1, 1]),
            t: diag(&[1, 1]),
            n_bound: 0,
        };
        let mut bad = base.clone();
        bad.p = vec![vec![1, 1], vec![0, 1]]; // ℤ/2 → ℤ/4 via 1 is not well defined
        assert_eq!(
            operator_lemma_check(&bad, &[0, 0], 1, LemmaMode::Strict).unwrap_err(),
            OperatorError::NotWellDefined("P")
        );
        let mut nc = base.clone();
        nc.p = vec![vec![1, 2], vec![0, 1]];
        nc.s = vec![vec![1, 0], vec![1, 1]];
        assert!(matches!(
            operator_lemma_check(&nc, &[0, 0], 1, LemmaMode::Strict),
            Err(OperatorError::NotCommuting(..))
        ));
        assert!(matches!(
            operator_lemma_check(&base, &[4, 0], 1, LemmaMode::Strict),
            Err(OperatorError::BadElement(_))
        ));
    }

    #[test]
    fn trivial_group() {
        let inst = OperatorInstance {
            orders: vec![],
            p: vec![],
            s: vec![],
            t: vec![],
            n_bound: 0,
        };
        let v = operator_lemma_check(&inst, &[], 1, LemmaMode::Strict).unwrap();
        assert!(v.hypotheses_hold && v.consistent);
    }

    #[test]
    fn fuzz_small_budget() {
        let r = operator_lemma_fuzz(1, 500, 256);
        assert!(r.passed());
        assert!(r.strict_instances > 0 && r.relaxed_pairs > 0);
        assert_eq!(r, operator_lemma_fuzz(1, 500, 256));
    }
}

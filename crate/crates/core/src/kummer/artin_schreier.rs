use serde::Serialize;

use crate::field::{make_field, FFElem, FieldSpec, Tower, MAX_FIELD_SIZE};
use crate::numth;
use crate::report::MAX_WITNESSES;

use super::KummerError;

/// `{x ∈ F : x^p - x = b}`, sorted. Nonempty iff `b` has trace zero, and then a coset of `F_p`.
pub fn artin_schreier_solve(field: &FieldSpec, b: &FFElem) -> Vec<FFElem> {
    let p = field.p();
    field
        .elements()
        .filter(|x| &(&x.pow_u(p) - x) == b)
        .collect()
}

/// Outcome of running the operator lemma on the additive group of `F_{q^p}` with
/// `P = x^p - x`, `S = σ - 1` (σ the q-power Frobenius) and `T = τ - 1` for each
/// `τ = x ↦ x^{p^j}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BridgeVerdict {
    pub q: u64,
    pub p: u64,
    pub m: u32,
    /// `p^N` exactly divides `m`.
    pub n: u32,
    /// Size of the ambient group `F_{q^p}`.
    pub ambient_size: u64,
    /// `ker P` is the prime field.
    pub kernel_is_prime_field: bool,
    /// `P`, `S`, `T` commute pointwise for every τ.
    pub commute: bool,
    /// `|A_0|` where `A_0 = ⋃ ker P^k`.
    pub a0_size: u64,
    /// Number of `b ∈ F_q` with an Artin-Schreier root in `F_{q^p}`.
    pub solvable_b: u64,
    /// Number of `(τ, b, a)` triples checked.
    pub triples: u64,
    /// τ for which hypotheses (2) and (3) hold.
    pub taus_with_hypotheses: Vec<u64>,
    /// Triples satisfying all hypotheses and the premise but not the conclusion.
    pub violations: u64,
    pub witnesses: Vec<Vec<String>>,
    pub consistent: bool,
}

pub fn artin_schreier_operator_bridge(q: u64) -> Result<BridgeVerdict, KummerError> {
    let (p, m) = numth::prime_power(q).ok_or(KummerError::NotPrime(q))?;
    let big = m
        .checked_mul(p as u32)
        .filter(|&d| numth::checked_pow(p, d).is_some_and(|s| s <= MAX_FIELD_SIZE))
        .ok_or(KummerError::TooLarge { level: 1 })?;
    let base = make_field(p, m)?;
    let tower = Tower::over(&base, &[1, p as u32])?;
    let top = tower.top().clone();
    let dim = big as u64;
    let n = numth::valuation(p, m as u64);
    let kernel_exp = p.pow(n);

    let ap = |x: &FFElem| &x.pow_u(p) - x;
    let sigma_minus = |x: &FFElem| &x.frobenius(m as u64) - x;
    let elements: Vec<FFElem> = top.elements().collect();

    let kernel: Vec<&FFElem> = elements.iter().filter(|x| ap(x).is_zero()).collect();
    let kernel_is_prime_field =
        kernel.len() as u64 == p && kernel.iter().all(|x| x.is_prime_subfield());

    // nilpotency depth of P at x, if any (P is F_p-linear on a dim-D space)
    let depth = |x: &FFElem| -> Option<u64> {
        let mut y = x.clone();
        for k in 0..=dim {
            if y.is_zero() {
                return Some(k);
            }
            y = ap(&y);
        }
        None
    };
    let depths: Vec<Option<u64>> = elements.iter().map(depth).collect();
    let a0: Vec<&FFElem> = elements
        .iter()
        .zip(&depths)
        .filter_map(|(x, d)| d.map(|_| x))
        .collect();
    let hyp3 = elements.iter().zip(&depths).all(|(x, d)| match d {
        Some(k) if sigma_minus(x).is_zero() => *k <= kernel_exp,
        _ => true,
    });

    let roots: Vec<(FFElem, Vec<FFElem>)> = base
        .elements()
        .map(|b| {
            let lifted = tower.lift(&b, 0, 1).expect("tower");
            let rs = artin_schreier_solve(&top, &lifted);
            (lifted, rs)
        })
        .collect();
    let solvable_b = roots.iter().filter(|(_, rs)| !rs.is_empty()).count() as u64;

    let mut commute = true;
    let mut taus = Vec::new();
    let mut triples = 0u64;
    let mut violations = 0u64;
    let mut witnesses = Vec::new();
    for j in 0..dim {
        let t = |x: &FFElem| &x.frobenius(j) - x;
        commute &= elements.iter().all(|x| {
            let pt = ap(&t(x)) == t(&ap(x));
            let ps = ap(&sigma_minus(x)) == sigma_minus(&ap(x));
            let st = sigma_minus(&t(x)) == t(&sigma_minus(x));
            pt && ps && st
        });
        let hyp2 = a0.iter().all(|x| t(x).is_zero());
        if hyp2 && hyp3 {
            taus.push(j);
        }
        for (b, rs) in &roots {
            for a in rs {
                triples += 1;
                let premise = sigma_minus(a).is_zero() && t(b).is_zero();
                if hyp2 && hyp3 && premise && !t(a).is_zero() {
                    violations += 1;
                    if witnesses.len() < MAX_WITNESSES {
                        witnesses.push(vec![j.to_string(), b.to_string(), a.to_string()]);
                    }
                }
            }
        }
    }

    Ok(BridgeVerdict {
        q,
        p,
        m,
        n,
        ambient_size: top.q(),
        kernel_is_prime_field,
        commute,
        a0_size: a0.len() as u64,
        solvable_b,
        triples,
        taus_with_hypotheses: taus,
        violations,
        witnesses,
        consistent: violations == 0 && commute && kernel_is_prime_field,
    })
}

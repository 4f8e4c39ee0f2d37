//! Kummer chains `C = {x : x^{p^n} = b}`, the map `φ(c) = τ(c)/c`, Artin-Schreier
//! root sets, and a checker for the commuting-operator lemma that drives the
//! characteristic-p argument.

mod artin_schreier;
mod operator;

use serde::Serialize;
use thiserror::Error;

use crate::field::{FFElem, FieldError, FieldSpec, Tower, MAX_FIELD_SIZE};
use crate::numth;

pub use artin_schreier::{artin_schreier_operator_bridge, artin_schreier_solve, BridgeVerdict};
pub use operator::{
    operator_lemma_check, operator_lemma_fuzz, FuzzReport, LemmaMode, LemmaVerdict,
    NecessityWitness, OperatorError, OperatorInstance,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KummerError {
    #[error("b must be nonzero")]
    ZeroBase,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("p = {0} is the characteristic")]
    CharacteristicIsP(u64),
    #[error("level {level} of the Kummer tower exceeds the field-size cap")]
    TooLarge { level: u32 },
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// The p-power roots of `b` to a fixed depth. Level `n` lives in the smallest
/// extension `F_{q^{e_n}}` with `ord(b)·p^n | q^{e_n} - 1`, which is exactly the
/// splitting field of `X^{p^n} - b`.
#[derive(Debug, Clone)]
pub struct KummerChain {
    p: u64,
    base_b: FFElem,
    tower: Tower,
    /// `levels[n]` = solutions of `x^{p^n} = b` in `tower.level(n)`, sorted.
    levels: Vec<Vec<FFElem>>,
}

impl KummerChain {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn base_b(&self) -> &FFElem {
        &self.base_b
    }

    pub fn depth(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn tower(&self) -> &Tower {
        &self.tower
    }

    pub fn level(&self, n: usize) -> &[FFElem] {
        &self.levels[n]
    }

    /// A fixed level-1 root `δ` (`δ^p = b`): the lexicographically least one.
    pub fn delta(&self) -> Option<&FFElem> {
        self.levels.get(1).and_then(|l| l.first())
    }

    /// Every chain element lifted to the top level, tagged with its level.
    pub fn elements_at_top(&self) -> Vec<(usize, FFElem)> {
        let top = self.depth();
        self.levels
            .iter()
            .enumerate()
            .flat_map(|(n, sols)| {
                sols.iter()
                    .map(move |c| (n, self.tower.lift(c, n, top).expect("chain levels")))
            })
            .collect()
    }

    /// The p-th power map sends level `n` onto level `n - 1`, exactly p-to-1.
    pub fn check_power_map(&self) -> Result<(), String> {
        for n in 1..=self.depth() {
            let below: Vec<FFElem> = self.levels[n - 1]
                .iter()
                .map(|c| self.tower.lift(c, n - 1, n).expect("chain levels"))
                .collect();
            let mut counts = vec![0u64; below.len()];
            for x in &self.levels[n] {
                let y = x.pow_u(self.p);
                match below.iter().position(|z| *z == y) {
                    Some(i) => counts[i] += 1,
                    None => return Err(format!("{x}^p is not a level-{} root", n - 1)),
                }
            }
            if counts.iter().any(|&c| c != self.p) {
                return Err(format!("p-th power map from level {n} is not {}-to-1", self.p));
            }
        }
        Ok(())
    }
}

pub fn build_kummer_chain(
    base: &FieldSpec,
    b: &FFElem,
    p: u64,
    depth: u32,
) -> Result<KummerChain, KummerError> {
    if !numth::is_prime(p) {
        return Err(KummerError::NotPrime(p));
    }
    if p == base.p() {
        return Err(KummerError::CharacteristicIsP(p));
    }
    b.same_field(&base.one())?;
    if b.is_zero() {
        return Err(KummerError::ZeroBase);
    }
    let q = base.q();
    let ord_b = b.order()?;
    let mut degrees = vec![1u32];
    for n in 1..=depth {
        let m = p
            .checked_pow(n)
            .and_then(|pn| pn.checked_mul(ord_b))
            .ok_or(KummerError::TooLarge { level: n })?;
        let e = numth::mult_order(q % m, m).expect("q is prime to ord(b)·p");
        let bits = (base.n() as u64 * e) as f64 * (base.p() as f64).log2();
        if bits > (MAX_FIELD_SIZE as f64).log2() + 1e-9 {
            return Err(KummerError::TooLarge { level: n });
        }
        degrees.push(e as u32);
    }
    let tower = Tower::over(base, &degrees)?;
    let mut levels = vec![vec![b.clone()]];
    for n in 1..=depth as usize {
        let field = tower.level(n);
        let bn = tower.lift(b, 0, n)?;
        let order = field.q() - 1;
        let g = field.generator();
        let d = bn.discrete_log(&g)?;
        let pn = p.pow(n as u32);
        // x = g^t with p^n t ≡ d (mod Q-1); p^n | Q-1 and p^n | d here.
        debug_assert_eq!(order % pn, 0);
        debug_assert_eq!(d % pn, 0);
        let step = order / pn;
        let mut sols: Vec<FFElem> = (0..pn).map(|j| g.pow_u(d / pn + j * step)).collect();
        sols.sort();
        levels.push(sols);
    }
    Ok(KummerChain {
        p,
        base_b: b.clone(),
        tower,
        levels,
    })
}

/// One value `φ(c) = τ(c)/c`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PhiValue {
    pub level: usize,
    pub c: String,
    pub value: String,
    /// Order of `φ(c)`; always a power of p.
    pub order: u64,
}

/// `φ` on the whole chain, with `τ: x ↦ x^{q^r}` on the top level (so `τ` fixes the base).
#[derive(Debug, Clone)]
pub struct PhiImage {
    pub values: Vec<(usize, FFElem, FFElem)>,
    /// Distinct values of `φ`, sorted.
    pub image: Vec<FFElem>,
}

impl PhiImage {
    pub fn report(&self) -> Vec<PhiValue> {
        self.values
            .iter()
            .map(|(level, c, v)| PhiValue {
                level: *level,
                c: c.to_string(),
                value: v.to_string(),
                order: v.order().expect("nonzero"),
            })
            .collect()
    }
}

/// `τ = (x ↦ x^q)^r` on the top level of the chain.
pub fn tau_power(chain: &KummerChain, r: u64, x: &FFElem) -> FFElem {
    x.frobenius(r * chain.tower.level(0).n() as u64)
}

pub fn phi_map(chain: &KummerChain, r: u64) -> PhiImage {
    let values: Vec<(usize, FFElem, FFElem)> = chain
        .elements_at_top()
        .into_iter()
        .map(|(n, c)| {
            let v = &tau_power(chain, r, &c) * &c.inv().expect("chain elements are units");
            (n, c, v)
        })
        .collect();
    let mut image: Vec<FFElem> = values.iter().map(|(_, _, v)| v.clone()).collect();
    image.sort();
    image.dedup();
    PhiImage { values, image }
}

/// Identities satisfied by `φ` on a chain, each checked on every element (or pair).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PhiIdentities {
    /// `φ(c^p) = φ(c)^p`.
    pub power_compatible: bool,
    /// `τ(c/c')/(c/c') = φ(c)/φ(c')` for `c, c'` on the same level.
    pub multiplicative: bool,
    /// `σ(φ(c)) = φ(σ(c))` with `σ` the q-power Frobenius.
    pub sigma_commutes: bool,
    /// Elements whose `ζ = σ(c)/c` is fixed by `τ`.
    pub tau_fixes_zeta: u64,
    /// For those, `σ(φ(c)) = φ(c)`.
    pub sigma_fixed: bool,
    /// Every `φ(c)` has p-power order.
    pub p_power_orders: bool,
}

impl PhiIdentities {
    pub fn all(&self) -> bool {
        self.power_compatible
            && self.multiplicative
            && self.sigma_commutes
            && self.sigma_fixed
            && self.p_power_orders
    }
}

pub fn phi_identities(chain: &KummerChain, r: u64) -> PhiIdentities {
    let phi = |x: &FFElem| &tau_power(chain, r, x) * &x.inv().expect("unit");
    let sigma = |x: &FFElem| tau_power(chain, 1, x);
    let elems = chain.elements_at_top();
    let p = chain.p;
    let is_p_power = |mut o: u64| {
        while o % p == 0 {
            o /= p;
        }
        o == 1
    };
    let mut out = PhiIdentities {
        power_compatible: true,
        multiplicative: true,
        sigma_commutes: true,
        tau_fixes_zeta: 0,
        sigma_fixed: true,
        p_power_orders: true,
    };
    for (n, c) in &elems {
        let v = phi(c);
        out.power_compatible &= phi(&c.pow_u(p)) == v.pow_u(p);
        out.sigma_commutes &= sigma(&v) == phi(&sigma(c));
        out.p_power_orders &= is_p_power(v.order().expect("unit"));
        let zeta = &sigma(c) * &c.inv().expect("unit");
        if tau_power(chain, r, &zeta) == zeta {
            out.tau_fixes_zeta += 1;
            out.sigma_fixed &= sigma(&v) == v;
        }
        for (m, d) in &elems {
            if m == n {
                let quot = c * &d.inv().expect("unit");
                out.multiplicative &= phi(&quot) == &v * &phi(d).inv().expect("unit");
            }
        }
    }
    out
}

/// Verdict on "a finite p-divisible p-group is trivial" for a cyclic `H = ⟨h⟩`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DivisibilityVerdict {
    pub order: u64,
    pub p_group: bool,
    /// `x ↦ x^p` maps `H` onto `H`.
    pub divisible: bool,
    pub trivial: bool,
    /// Divisible: `h, h_1, h_2` with `h_{i+1}^p = h_i`. Not divisible: an element of `H` with no p-th root in `H`.
    pub witness: Vec<String>,
    /// `p_group ∧ divisible ⟹ trivial`.
    pub holds: bool,
}

pub fn divisible_p_subgroup_is_trivial(h: &FFElem, p: u64) -> Result<DivisibilityVerdict, KummerError> {
    let order = h.order()?;
    let mut members = Vec::with_capacity(order as usize);
    let mut x = h.field().one();
    for _ in 0..order {
        members.push(x.clone());
        x = &x * h;
    }
    let mut image: Vec<FFElem> = members.iter().map(|m| m.pow_u(p)).collect();
    image.sort();
    image.dedup();
    let divisible = image.len() == members.len();
    let witness = if divisible {
        let mut chain = vec![h.clone()];
        for _ in 0..2 {
            let last = chain.last().unwrap().clone();
            let root = members
                .iter()
                .find(|m| m.pow_u(p) == last)
                .expect("onto")
                .clone();
            chain.push(root);
        }
        chain.iter().map(ToString::to_string).collect()
    } else {
        let missing = members
            .iter()
            .find(|m| image.binary_search(m).is_err())
            .expect("not onto");
        vec![missing.to_string()]
    };
    let p_group = {
        let mut o = order;
        while o % p == 0 {
            o /= p;
        }
        o == 1
    };
    let trivial = order == 1;
    Ok(DivisibilityVerdict {
        order,
        p_group,
        divisible,
        trivial,
        witness,
        holds: !(p_group && divisible) || trivial,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    fn f7() -> FieldSpec {
        make_field(7, 1).unwrap()
    }

    #[test]
    fn chain_examples() {
        let f = f7();
        let c = build_kummer_chain(&f, &f.one(), 3, 1).unwrap();
        let ints: Vec<u32> = c.level(1).iter().map(|x| x.coeffs()[0]).collect();
        assert_eq!(ints, vec![1, 2, 4]);

        let c = build_kummer_chain(&f, &f.from_int(3), 3, 1).unwrap();
        assert_eq!(c.tower().level(1).q(), 343);
        assert_eq!(c.level(1).len(), 3);
        let three = c.tower().lift(&f.from_int(3), 0, 1).unwrap();
        assert!(c.level(1).iter().all(|x| x.pow_u(3) == three));

        let c = build_kummer_chain(&f, &f.from_int(6), 3, 1).unwrap();
        assert_eq!(c.tower().level(1).q(), 7);
        let ints: Vec<u32> = c.level(1).iter().map(|x| x.coeffs()[0]).collect();
        assert_eq!(ints, vec![3, 5, 6]);
        assert_eq!(c.delta(), Some(&f.from_int(3)));
    }

    #[test]
    fn chain_errors() {
        let f = f7();
        assert_eq!(
            build_kummer_chain(&f, &f.zero(), 3, 1).unwrap_err(),
            KummerError::ZeroBase
        );
        assert!(matches!(
            build_kummer_chain(&f, &f.from_int(3), 3, 4),
            Err(KummerError::TooLarge { .. })
        ));
    }

    #[test]
    fn power_map_is_p_to_one() {
        let f = f7();
        // b = 1, 6 are cubes, so depth 2 stays inside F_343; the others need F_{7^9}
        for b in 1..7 {
            let depth = if b == 1 || b == 6 { 2 } else { 1 };
            let c = build_kummer_chain(&f, &f.from_int(b), 3, depth).unwrap();
            c.check_power_map().unwrap();
            for n in 0..=depth as usize {
                assert_eq!(c.level(n).len() as u64, 3u64.pow(n as u32));
            }
        }
    }

    #[test]
    fn phi_examples() {
        let f = f7();
        let c = build_kummer_chain(&f, &f.from_int(3), 3, 1).unwrap();
        let id = phi_map(&c, 0);
        assert!(id.image.iter().all(FFElem::is_one));
        let phi = phi_map(&c, 1);
        for (_, x, v) in &phi.values {
            // x^7 / x = x^6
            assert_eq!(*v, x.pow_u(6));
            assert!(v.pow_u(3).is_one());
        }
        assert_eq!(phi.image.len(), 2); // {1} from level 0 and one nontrivial cube root of unity
    }

    #[test]
    fn phi_commutes_with_p_th_powers() {
        let f = f7();
        let c = build_kummer_chain(&f, &f.from_int(6), 3, 2).unwrap();
        for r in 0..3 {
            for (n, x, v) in phi_map(&c, r).values {
                if n == 0 {
                    continue;
                }
                let xp = x.pow_u(3);
                let v_of_xp = &tau_power(&c, r, &xp) * &xp.inv().unwrap();
                assert_eq!(v_of_xp, v.pow_u(3));
            }
        }
    }

    #[test]
    fn phi_identities_hold() {
        let f = f7();
        for (b, depth) in [(1, 2), (6, 2), (3, 1), (2, 1)] {
            let c = build_kummer_chain(&f, &f.from_int(b), 3, depth).unwrap();
            for r in 0..4 {
                let id = phi_identities(&c, r);
                assert!(id.all(), "b={b} r={r}: {id:?}");
                assert!(id.tau_fixes_zeta > 0);
            }
        }
    }

    #[test]
    fn divisibility_examples() {
        let f = f7();
        let top = make_field(7, 3).unwrap();
        let mu9 = crate::field::roots_of_unity(&top, 9);
        let h = mu9.iter().find(|z| z.order().unwrap() == 9).unwrap();
        let v = divisible_p_subgroup_is_trivial(h, 3).unwrap();
        assert!(v.p_group && !v.divisible && v.holds);

        let v = divisible_p_subgroup_is_trivial(&f.one(), 3).unwrap();
        assert!(v.divisible && v.trivial && v.holds);

        let v = divisible_p_subgroup_is_trivial(&f.from_int(2), 3).unwrap();
        assert_eq!(v.order, 3);
        assert!(!v.divisible && v.holds);

        // μ_2 in F_7 is 3-divisible but not a 3-group.
        let v = divisible_p_subgroup_is_trivial(&f.from_int(6), 3).unwrap();
        assert!(v.divisible && !v.p_group && v.holds);
    }
}

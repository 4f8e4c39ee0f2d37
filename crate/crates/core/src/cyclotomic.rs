//! Unit groups `(ℤ/p^k)^*`, their torsion part, restriction maps between
//! levels, the maximal p-power-degree subfield of `F_{p^m}`, and coherent
//! systems of p-power roots of unity in finite-field towers.

use std::collections::BTreeMap;

use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::field::{FFElem, FieldError, FieldSpec, Tower, MAX_FIELD_SIZE};
use crate::numth;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CycloError {
    #[error("{u} is not a unit modulo {p}^{k}")]
    NotUnit { u: u64, p: u64, k: u32 },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("level must be at least 1")]
    ZeroLevel,
    #[error("cannot restrict from level {from} up to level {to}")]
    BadLevels { from: u32, to: u32 },
    #[error("p = {0} equals the characteristic of the base field")]
    CharacteristicIsP(u64),
    #[error("μ_{p} is not contained in F_{q}")]
    MissingRootsOfUnity { p: u64, q: u64 },
    #[error("level {depth} of the root tower exceeds the field-size cap")]
    DepthTooLarge { depth: u32 },
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// `(ℤ/p^k)^* ≅ ℤ/p_part × ℤ/q_part` where the second factor is the torsion
/// subgroup (`q = p - 1` for odd p, `{±1}` for p = 2).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct UnitGroupView {
    pub p: u64,
    pub k: u32,
    pub q_part: u64,
    pub p_part: u64,
}

impl UnitGroupView {
    /// Orders of the cyclic factors, `[p_part, q_part]`.
    pub fn factors(&self) -> [u64; 2] {
        [self.p_part, self.q_part]
    }

    pub fn order(&self) -> u64 {
        self.p_part * self.q_part
    }

    /// Exponent of the torsion factor as used by [`is_torsion_unit`].
    pub fn torsion_exponent(&self) -> u64 {
        torsion_exponent(self.p)
    }

    /// Number of elements of each order in `ℤ/p_part × ℤ/q_part`, counted from
    /// the divisor structure of the two factors.
    pub fn order_census(&self) -> BTreeMap<u64, u64> {
        product_census(&self.factors())
    }
}

fn torsion_exponent(p: u64) -> u64 {
    if p == 2 {
        2
    } else {
        p - 1
    }
}

fn modulus(p: u64, k: u32) -> u64 {
    p.checked_pow(k).expect("p^k fits in u64")
}

pub fn unit_group_structure(p: u64, k: u32) -> Result<UnitGroupView, CycloError> {
    if !numth::is_prime(p) {
        return Err(CycloError::NotPrime(p));
    }
    if k == 0 {
        return Err(CycloError::ZeroLevel);
    }
    let (q_part, p_part) = if p == 2 {
        match k {
            1 => (1, 1),
            2 => (2, 1),
            _ => (2, 1 << (k - 2)),
        }
    } else {
        (p - 1, p.pow(k - 1))
    };
    Ok(UnitGroupView {
        p,
        k,
        q_part,
        p_part,
    })
}

/// Census of element orders of `∏ ℤ/n_i`.
pub fn product_census(orders: &[u64]) -> BTreeMap<u64, u64> {
    let divisors = |n: u64| (1..=n).filter(move |d| n % d == 0);
    let mut census = BTreeMap::from([(1u64, 1u64)]);
    for &n in orders {
        let mut next = BTreeMap::new();
        for (&o, &c) in &census {
            for d in divisors(n) {
                *next.entry(o.lcm(&d)).or_insert(0) += c * numth::euler_phi(d);
            }
        }
        census = next;
    }
    census
}

/// Brute-force census: the multiplicative order of every unit mod `p^k`.
pub fn unit_order_census(p: u64, k: u32) -> BTreeMap<u64, u64> {
    let m = modulus(p, k);
    let phi = numth::euler_phi(m);
    let primes = numth::prime_divisors(phi);
    (1..m)
        .into_par_iter()
        .filter(|u| u % p != 0)
        .fold(BTreeMap::new, |mut census, u| {
            let mut ord = phi;
            for &l in &primes {
                while ord % l == 0 && numth::mod_pow(u, ord / l, m) == 1 {
                    ord /= l;
                }
            }
            *census.entry(ord).or_insert(0u64) += 1;
            census
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (o, c) in b {
                *a.entry(o).or_insert(0) += c;
            }
            a
        })
}

fn check_unit(u: u64, p: u64, k: u32) -> Result<u64, CycloError> {
    let m = modulus(p, k);
    if u % p == 0 {
        return Err(CycloError::NotUnit { u, p, k });
    }
    Ok(u % m)
}

/// Whether `u` lies in the torsion subgroup of `(ℤ/p^k)^*`, i.e. `u^q ≡ 1`.
pub fn is_torsion_unit(u: u64, p: u64, k: u32) -> Result<bool, CycloError> {
    let u = check_unit(u, p, k)?;
    Ok(numth::mod_pow(u, torsion_exponent(p), modulus(p, k)) == 1)
}

/// The restriction `(ℤ/p^i)^* → (ℤ/p^j)^*` for `i >= j`.
pub fn restriction(u: u64, p: u64, i: u32, j: u32) -> Result<u64, CycloError> {
    if i < j || j == 0 {
        return Err(CycloError::BadLevels { from: i, to: j });
    }
    let u = check_unit(u, p, i)?;
    Ok(u % modulus(p, j))
}

/// `p^{v_p(m)}`: the degree over `F_p` of the largest p-power-degree subfield of `F_{p^m}`.
pub fn max_p_subextension_degree(p: u64, m: u64) -> u64 {
    p.pow(numth::valuation(p, m))
}

/// `ω_0 = 1, ω_1, …, ω_d` with `ω_{i+1}^p = ω_i`, each `ω_i` of exact order
/// `p^i`, living in level `i` of a tower over the base field.
#[derive(Debug, Clone)]
pub struct CoherentRootSystem {
    p: u64,
    tower: Tower,
    roots: Vec<FFElem>,
}

impl CoherentRootSystem {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn depth(&self) -> usize {
        self.roots.len() - 1
    }

    pub fn tower(&self) -> &Tower {
        &self.tower
    }

    pub fn base(&self) -> &FieldSpec {
        self.tower.level(0)
    }

    /// `ω_i` in its own level.
    pub fn root(&self, i: usize) -> &FFElem {
        &self.roots[i]
    }

    pub fn roots(&self) -> &[FFElem] {
        &self.roots
    }

    /// `ω_i` lifted to tower level `level >= i`.
    pub fn root_at(&self, i: usize, level: usize) -> FFElem {
        self.tower
            .lift(&self.roots[i], i, level)
            .expect("roots live in their own levels")
    }

    /// Checks the coherence and exact-order invariants.
    pub fn verify(&self) -> Result<(), String> {
        if !self.roots[0].is_one() {
            return Err("ω_0 ≠ 1".into());
        }
        for i in 1..self.roots.len() {
            let w = &self.roots[i];
            let prev = self.root_at(i - 1, i);
            if w.pow_u(self.p) != prev {
                return Err(format!("ω_{i}^p ≠ ω_{}", i - 1));
            }
            let want = self.p.pow(i as u32);
            let got = w.order().map_err(|e| e.to_string())?;
            if got != want {
                return Err(format!("ω_{i} has order {got}, expected {want}"));
            }
        }
        Ok(())
    }
}

/// Builds the canonical coherent system of depth `depth` over `base`: level `i`
/// is the smallest extension `F_{q^{e_i}}` containing `μ_{p^i}` and `ω_i` is the
/// lexicographically least p-th root of `ω_{i-1}` there of exact order `p^i`.
pub fn build_coherent_roots(
    p: u64,
    base: &FieldSpec,
    depth: u32,
) -> Result<CoherentRootSystem, CycloError> {
    if !numth::is_prime(p) {
        return Err(CycloError::NotPrime(p));
    }
    if p == base.p() {
        return Err(CycloError::CharacteristicIsP(p));
    }
    let q = base.q();
    if (q - 1) % p != 0 {
        return Err(CycloError::MissingRootsOfUnity { p, q });
    }
    let mut degrees = vec![1u32];
    for i in 1..=depth {
        let pi = p
            .checked_pow(i)
            .ok_or(CycloError::DepthTooLarge { depth: i })?;
        let e = numth::mult_order(q % pi, pi).expect("q is prime to p") as u32;
        let size = (base.n() as u64 * e as u64) as f64 * (base.p() as f64).log2();
        if size > (MAX_FIELD_SIZE as f64).log2() + 1e-9 {
            return Err(CycloError::DepthTooLarge { depth: i });
        }
        degrees.push(e);
    }
    let tower = Tower::over(base, &degrees)?;
    let mut roots = vec![base.one()];
    for i in 1..=depth as usize {
        let level = tower.level(i);
        let target = tower.lift(&roots[i - 1], i - 1, i)?;
        let pi = p.pow(i as u32);
        let h = level.generator().pow_u((level.q() - 1) / pi);
        let mut x = level.one();
        let mut best: Option<FFElem> = None;
        for _ in 0..pi {
            if !x.is_one() && x.pow_u(p) == target && best.as_ref().is_none_or(|b| x < *b) {
                best = Some(x.clone());
            }
            x = &x * &h;
        }
        roots.push(best.expect("μ_{p^i} is cyclic of order p^i"));
    }
    Ok(CoherentRootSystem { p, tower, roots })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    #[test]
    fn structure_examples() {
        let v = unit_group_structure(3, 2).unwrap();
        assert_eq!((v.p_part, v.q_part), (3, 2));
        let v = unit_group_structure(5, 1).unwrap();
        assert_eq!((v.p_part, v.q_part), (1, 4));
        let v = unit_group_structure(2, 4).unwrap();
        assert_eq!((v.q_part, v.p_part), (2, 4));
        // Oracle for (2,4): orders of units mod 16 by repeated multiplication.
        let mut census = BTreeMap::new();
        for u in (1..16u64).step_by(2) {
            let (mut x, mut o) = (u, 1);
            while x != 1 {
                x = x * u % 16;
                o += 1;
            }
            *census.entry(o).or_insert(0u64) += 1;
        }
        assert_eq!(census, v.order_census());
    }

    #[test]
    fn census_matches_small_levels() {
        for p in [2u64, 3, 5, 7] {
            for k in 1..=4 {
                let v = unit_group_structure(p, k).unwrap();
                assert_eq!(unit_order_census(p, k), v.order_census(), "p={p} k={k}");
            }
        }
    }

    #[test]
    fn torsion_examples() {
        assert_eq!(is_torsion_unit(8, 3, 2), Ok(true));
        assert_eq!(is_torsion_unit(4, 3, 2), Ok(false));
        assert_eq!(is_torsion_unit(1, 11, 5), Ok(true));
        assert!(matches!(is_torsion_unit(6, 3, 2), Err(CycloError::NotUnit { .. })));
    }

    #[test]
    fn restriction_examples() {
        assert_eq!(restriction(8, 3, 2, 1), Ok(2));
        assert!(restriction(8, 3, 1, 2).is_err());
        // every unit mod 9 has exactly 3 preimages mod 27
        let mut counts = BTreeMap::new();
        for u in (1..27u64).filter(|u| u % 3 != 0) {
            *counts.entry(restriction(u, 3, 3, 2).unwrap()).or_insert(0) += 1;
        }
        assert_eq!(counts.len(), 6);
        assert!(counts.values().all(|&c| c == 3));
        let r = restriction(8, 3, 2, 1).unwrap();
        assert!(is_torsion_unit(r, 3, 1).unwrap());
    }

    #[test]
    fn restriction_surjective_and_torsion_preserving() {
        for (p, i) in [(3u64, 6u32), (5, 5), (7, 4), (2, 10)] {
            let m = p.pow(i);
            for j in 1..=i {
                let mut hit = std::collections::BTreeSet::new();
                for u in (1..m).filter(|u| u % p != 0) {
                    let r = restriction(u, p, i, j).unwrap();
                    hit.insert(r);
                    if is_torsion_unit(u, p, i).unwrap() {
                        assert!(is_torsion_unit(r, p, j).unwrap());
                    }
                    for k in 1..=j {
                        assert_eq!(
                            restriction(r, p, j, k).unwrap(),
                            restriction(u, p, i, k).unwrap()
                        );
                    }
                }
                assert_eq!(hit.len() as u64, numth::euler_phi(p.pow(j)));
            }
        }
    }

    #[test]
    fn torsion_meets_one_units_trivially() {
        for p in [3u64, 5, 7, 11, 13] {
            let mut k = 1;
            while p.pow(k) <= 10_000 {
                let m = p.pow(k);
                for u in (1..m).filter(|u| u % p == 1) {
                    if is_torsion_unit(u, p, k).unwrap() {
                        assert_eq!(u, 1, "p={p} k={k}");
                    }
                }
                k += 1;
            }
        }
    }

    #[test]
    fn max_p_subextension_examples() {
        assert_eq!(max_p_subextension_degree(2, 12), 4);
        assert_eq!(max_p_subextension_degree(5, 12), 1);
        assert_eq!(max_p_subextension_degree(3, 9), 9);
        for p in [2u64, 3, 5, 7] {
            for m in 1..=1000 {
                assert_eq!(
                    max_p_subextension_degree(p, m * p),
                    p * max_p_subextension_degree(p, m)
                );
            }
        }
    }

    #[test]
    fn coherent_roots_over_f7() {
        let f7 = make_field(7, 1).unwrap();
        let s0 = build_coherent_roots(3, &f7, 0).unwrap();
        assert_eq!(s0.roots(), &[f7.one()]);
        let s1 = build_coherent_roots(3, &f7, 1).unwrap();
        assert_eq!(s1.root(1), &f7.from_int(2));
        let s2 = build_coherent_roots(3, &f7, 2).unwrap();
        assert_eq!(s2.tower().level(2).q(), 343);
        assert_eq!(s2.root(2).pow_u(3), s2.root_at(1, 2));
        assert_eq!(s2.root_at(1, 2), s2.tower().level(2).from_int(2));
        s2.verify().unwrap();
    }

    #[test]
    fn coherent_root_errors() {
        let f7 = make_field(7, 1).unwrap();
        assert!(matches!(
            build_coherent_roots(5, &f7, 1),
            Err(CycloError::MissingRootsOfUnity { .. })
        ));
        assert!(matches!(
            build_coherent_roots(7, &f7, 1),
            Err(CycloError::CharacteristicIsP(7))
        ));
        assert!(matches!(
            build_coherent_roots(3, &f7, 8),
            Err(CycloError::DepthTooLarge { .. })
        ));
    }

    #[test]
    fn coherent_systems_satisfy_invariants() {
        for (p, fp, n, depth) in [(2u64, 5u64, 1u32, 3u32), (3, 7, 1, 2), (2, 3, 2, 3), (5, 11, 1, 2)] {
            let base = make_field(fp, n).unwrap();
            let sys = build_coherent_roots(p, &base, depth).unwrap();
            sys.verify().unwrap();
        }
    }
}

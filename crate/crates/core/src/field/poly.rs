//! Dense univariate polynomials over a [`FieldSpec`].

use std::fmt;

use super::{FFElem, FieldSpec};
use crate::numth;

/// A polynomial with coefficients in `field`, constant term first, no trailing zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: FieldSpec,
    coeffs: Vec<FFElem>,
}

impl Poly {
    pub fn new(field: &FieldSpec, mut coeffs: Vec<FFElem>) -> Self {
        while coeffs.last().is_some_and(FFElem::is_zero) {
            coeffs.pop();
        }
        debug_assert!(coeffs.iter().all(|c| c.field() == field));
        Poly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn zero(field: &FieldSpec) -> Self {
        Poly::new(field, Vec::new())
    }

    pub fn one(field: &FieldSpec) -> Self {
        Poly::new(field, vec![field.one()])
    }

    /// The monomial `x`.
    pub fn x(field: &FieldSpec) -> Self {
        Poly::new(field, vec![field.zero(), field.one()])
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn coeffs(&self) -> &[FFElem] {
        &self.coeffs
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn coeff(&self, i: usize) -> FFElem {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let len = self.coeffs.len().max(other.coeffs.len());
        let c = (0..len).map(|i| &self.coeff(i) + &other.coeff(i)).collect();
        Poly::new(&self.field, c)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let len = self.coeffs.len().max(other.coeffs.len());
        let c = (0..len).map(|i| &self.coeff(i) - &other.coeff(i)).collect();
        Poly::new(&self.field, c)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.field);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Poly::new(&self.field, out)
    }

    pub fn scale(&self, c: &FFElem) -> Poly {
        Poly::new(&self.field, self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Quotient and remainder; panics on division by the zero polynomial.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = divisor.coeffs[dd].inv().expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(&self.field), self.clone());
        }
        let mut quot = vec![self.field.zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let c = &rem[k] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (i, d) in divisor.coeffs.iter().enumerate() {
                rem[k - dd + i] = &rem[k - dd + i] - &(&c * d);
            }
            quot[k - dd] = c;
        }
        rem.truncate(dd);
        (Poly::new(&self.field, quot), Poly::new(&self.field, rem))
    }

    pub fn rem(&self, divisor: &Poly) -> Poly {
        self.div_rem(divisor).1
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn monic(&self) -> Poly {
        match self.coeffs.last() {
            None => self.clone(),
            Some(lead) => self.scale(&lead.inv().expect("nonzero")),
        }
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, mut e: u64, m: &Poly) -> Poly {
        let mut base = self.rem(m);
        let mut acc = Poly::one(&self.field).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).rem(m);
            }
        }
        acc
    }

    /// Horner evaluation at a point of an extension, through a coefficient map.
    pub fn eval_with(&self, x: &FFElem, lift: impl Fn(&FFElem) -> FFElem) -> FFElem {
        let mut acc = x.field().zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + &lift(c);
        }
        acc
    }

    pub fn eval(&self, x: &FFElem) -> FFElem {
        self.eval_with(x, Clone::clone)
    }

    /// Rabin's test: `f | x^{Q^n} - x` and `gcd(f, x^{Q^{n/r}} - x) = 1` for primes `r | n`,
    /// where `Q` is the order of the coefficient field.
    pub fn is_irreducible(&self) -> bool {
        let n = match self.degree() {
            None | Some(0) => return false,
            Some(1) => return true,
            Some(n) => n,
        };
        let q = self.field.q();
        let f = self.monic();
        let x = Poly::x(&self.field);
        // frob[k] = x^{Q^k} mod f
        let mut frob = Vec::with_capacity(n + 1);
        frob.push(x.rem(&f));
        for k in 1..=n {
            let next = frob[k - 1].pow_mod(q, &f);
            frob.push(next);
        }
        if frob[n] != x.rem(&f) {
            return false;
        }
        numth::prime_divisors(n as u64).into_iter().all(|r| {
            let h = frob[n / r as usize].sub(&x);
            f.gcd(&h).degree() == Some(0)
        })
    }

    /// Monic polynomial of degree `n` whose non-leading coefficients are given by
    /// `idx` in the lexicographic order used for field elements, constant term most
    /// significant.
    pub fn monic_from_index(field: &FieldSpec, n: usize, mut idx: u64) -> Poly {
        let q = field.q();
        let mut digits = vec![0u64; n];
        for slot in digits.iter_mut().rev() {
            *slot = idx % q;
            idx /= q;
        }
        let mut coeffs: Vec<FFElem> = digits.into_iter().map(|d| field.from_index(d)).collect();
        coeffs.push(field.one());
        Poly::new(field, coeffs)
    }

    /// Lexicographically smallest monic irreducible of degree `n` (constant term first,
    /// coefficients compared by their own lexicographic order).
    pub fn lex_least_irreducible(field: &FieldSpec, n: usize) -> Poly {
        assert!(n >= 1);
        if n == 1 {
            return Poly::x(field);
        }
        // A zero constant term makes x a factor, so start past those.
        let q = field.q();
        let start = q.pow(n as u32 - 1);
        (start..)
            .map(|idx| Poly::monic_from_index(field, n, idx))
            .find(Poly::is_irreducible)
            .expect("irreducible polynomials exist in every degree")
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly{:?}", self.coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    fn brute_irreducible(f: &Poly) -> bool {
        // Oracle for small degrees: no monic factor of degree 1..=deg/2.
        let n = f.degree().unwrap();
        let field = f.field().clone();
        let q = field.q();
        for d in 1..=n / 2 {
            for idx in 0..q.pow(d as u32) {
                let g = Poly::monic_from_index(&field, d, idx);
                if f.rem(&g).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn rabin_matches_trial_division() {
        for (p, k) in [(2, 1), (3, 1), (2, 2)] {
            let field = make_field(p, k).unwrap();
            for n in 1..=4usize {
                let count = field.q().pow(n as u32);
                for idx in 0..count.min(400) {
                    let f = Poly::monic_from_index(&field, n, idx);
                    assert_eq!(f.is_irreducible(), brute_irreducible(&f), "{f:?}");
                }
            }
        }
    }

    #[test]
    fn lex_least_over_f3() {
        let f3 = make_field(3, 1).unwrap();
        let f = Poly::lex_least_irreducible(&f3, 2);
        let ints: Vec<u32> = f.coeffs().iter().map(|c| c.coeffs()[0]).collect();
        assert_eq!(ints, vec![1, 0, 1]);
    }

    #[test]
    fn division_identity() {
        let f5 = make_field(5, 1).unwrap();
        let a = Poly::monic_from_index(&f5, 5, 1234);
        let b = Poly::monic_from_index(&f5, 2, 7);
        let (qt, r) = a.div_rem(&b);
        assert_eq!(qt.mul(&b).add(&r), a);
        assert!(r.degree().unwrap_or(0) < 2);
    }
}

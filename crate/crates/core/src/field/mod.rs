//! Exact arithmetic in small finite fields `F_{p^n}`.
//!
//! A field is a quotient `F_p[x]/(f)` where `f` is the lexicographically
//! smallest monic irreducible of degree `n`, comparing coefficient sequences
//! constant term first. Elements are coefficient vectors in the power basis
//! `1, α, …, α^{n-1}` and carry a handle to their field; mixing elements of
//! different fields is an error unless one goes through [`embed`].
//!
//! Field sizes are capped at [`MAX_FIELD_SIZE`] so that every field built
//! here can be scanned exhaustively.

mod literal;
pub mod poly;
mod tower;

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock};

use smallvec::SmallVec;
use thiserror::Error;

use crate::numth;

pub use literal::{parse_element, parse_field};
pub use poly::Poly;
pub use tower::{embed, Embedding, Tower};

/// Largest field order accepted by [`make_field`].
pub const MAX_FIELD_SIZE: u64 = 1 << 22;

pub(crate) type Coeffs = SmallVec<[u32; 8]>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("characteristic {0} is not prime")]
    CompositeCharacteristic(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field of order {p}^{n} exceeds the enumerable bound {MAX_FIELD_SIZE}")]
    TooLarge { p: u64, n: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("elements live in different fields ({0} and {1})")]
    FieldMismatch(String, String),
    #[error("F_{{{p}^{sub}}} is not a subfield of F_{{{p}^{sup}}}")]
    NotSubfield { p: u64, sub: u32, sup: u32 },
    #[error("discrete logarithm of zero")]
    LogOfZero,
    #[error("{0} is not a power of the given base")]
    NoLog(String),
    #[error("malformed literal {0:?}: {1}")]
    Literal(String, String),
}

struct Inner {
    p: u32,
    n: u32,
    q: u64,
    /// Monic modulus, constant term first, length `n + 1`.
    modulus: Vec<u32>,
    /// Prime divisors of `q - 1`.
    order_primes: Vec<u64>,
    generator: OnceLock<Coeffs>,
}

/// A concrete finite field `F_{p^n}`. Cloning is cheap (shared handle).
#[derive(Clone)]
pub struct FieldSpec {
    inner: Arc<Inner>,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.p == other.inner.p && self.inner.modulus == other.inner.modulus)
    }
}

impl Eq for FieldSpec {}

impl Hash for FieldSpec {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.inner.p.hash(state);
        self.inner.modulus.hash(state);
    }
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldSpec({self})")
    }
}

/// Builds the canonical `F_{p^n}`.
pub fn make_field(p: u64, n: u32) -> Result<FieldSpec, FieldError> {
    if !numth::is_prime(p) {
        return Err(FieldError::CompositeCharacteristic(p));
    }
    if n == 0 {
        return Err(FieldError::ZeroDegree);
    }
    let q = match numth::checked_pow(p, n) {
        Some(q) if q <= MAX_FIELD_SIZE => q,
        _ => return Err(FieldError::TooLarge { p, n }),
    };
    let prime = FieldSpec::from_modulus(p as u32, vec![0, 1]);
    if n == 1 {
        return Ok(prime);
    }
    let f = Poly::lex_least_irreducible(&prime, n as usize);
    let modulus = f.coeffs().iter().map(|c| c.coeffs[0]).collect();
    debug_assert_eq!(q, (p).pow(n));
    Ok(FieldSpec::from_modulus(p as u32, modulus))
}

impl FieldSpec {
    fn from_modulus(p: u32, modulus: Vec<u32>) -> Self {
        let n = (modulus.len() - 1) as u32;
        let q = (p as u64).pow(n);
        FieldSpec {
            inner: Arc::new(Inner {
                p,
                n,
                q,
                modulus,
                order_primes: numth::prime_divisors(q - 1),
                generator: OnceLock::new(),
            }),
        }
    }

    pub fn p(&self) -> u64 {
        self.inner.p as u64
    }

    pub fn n(&self) -> u32 {
        self.inner.n
    }

    /// Field order `p^n`.
    pub fn q(&self) -> u64 {
        self.inner.q
    }

    /// Modulus coefficients, constant term first, including the leading 1.
    pub fn modulus(&self) -> &[u32] {
        &self.inner.modulus
    }

    /// Prime divisors of `q - 1`.
    pub fn order_primes(&self) -> &[u64] {
        &self.inner.order_primes
    }

    pub fn is_prime_field(&self) -> bool {
        self.inner.n == 1
    }

    pub fn zero(&self) -> FFElem {
        self.raw(SmallVec::from_elem(0, self.inner.n as usize))
    }

    pub fn one(&self) -> FFElem {
        self.from_int(1)
    }

    /// The image of an integer in the prime subfield.
    pub fn from_int(&self, v: i64) -> FFElem {
        let mut c: Coeffs = SmallVec::from_elem(0, self.inner.n as usize);
        c[0] = v.rem_euclid(self.inner.p as i64) as u32;
        self.raw(c)
    }

    /// Element from power-basis coordinates; reduces each coordinate mod p and
    /// pads or rejects to length `n`.
    pub fn elem(&self, coeffs: &[i64]) -> Result<FFElem, FieldError> {
        let n = self.inner.n as usize;
        if coeffs.len() > n {
            return Err(FieldError::Literal(
                format!("{coeffs:?}"),
                format!("more than {n} coordinates"),
            ));
        }
        let p = self.inner.p as i64;
        let mut c: Coeffs = coeffs.iter().map(|&v| v.rem_euclid(p) as u32).collect();
        c.resize(n, 0);
        Ok(self.raw(c))
    }

    /// The class of `x`, i.e. `α`. In a prime field this is `0` (modulus `x`).
    pub fn alpha(&self) -> FFElem {
        if self.inner.n == 1 {
            return self.zero();
        }
        let mut c: Coeffs = SmallVec::from_elem(0, self.inner.n as usize);
        c[1] = 1;
        self.raw(c)
    }

    pub(crate) fn raw(&self, coeffs: Coeffs) -> FFElem {
        debug_assert_eq!(coeffs.len(), self.inner.n as usize);
        FFElem {
            field: self.clone(),
            coeffs,
        }
    }

    /// Element with index `idx` in lexicographic order (constant coordinate most significant).
    pub fn from_index(&self, mut idx: u64) -> FFElem {
        assert!(idx < self.inner.q, "index {idx} out of range for {self}");
        let n = self.inner.n as usize;
        let p = self.inner.p as u64;
        let mut c: Coeffs = SmallVec::from_elem(0, n);
        for slot in c.iter_mut().rev() {
            *slot = (idx % p) as u32;
            idx /= p;
        }
        self.raw(c)
    }

    /// All elements in lexicographic order.
    pub fn elements(&self) -> impl Iterator<Item = FFElem> + '_ {
        (0..self.inner.q).map(move |i| self.from_index(i))
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = FFElem> + '_ {
        (1..self.inner.q).map(move |i| self.from_index(i))
    }

    /// Lexicographically smallest generator of the multiplicative group.
    pub fn generator(&self) -> FFElem {
        let c = self.inner.generator.get_or_init(|| {
            (1..self.inner.q)
                .map(|i| self.from_index(i))
                .find(|g| self.is_generator(g))
                .expect("a finite field has a primitive element")
                .coeffs
        });
        self.raw(c.clone())
    }

    fn is_generator(&self, g: &FFElem) -> bool {
        let order = self.inner.q - 1;
        !g.is_zero()
            && self
                .inner
                .order_primes
                .iter()
                .all(|&l| !g.pow_u(order / l).is_one())
    }

    fn add_coeffs(&self, a: &[u32], b: &[u32]) -> Coeffs {
        let p = self.inner.p;
        a.iter()
            .zip(b)
            .map(|(&x, &y)| {
                let s = x + y;
                if s >= p {
                    s - p
                } else {
                    s
                }
            })
            .collect()
    }

    fn sub_coeffs(&self, a: &[u32], b: &[u32]) -> Coeffs {
        let p = self.inner.p;
        a.iter()
            .zip(b)
            .map(|(&x, &y)| if x >= y { x - y } else { x + p - y })
            .collect()
    }

    fn mul_coeffs(&self, a: &[u32], b: &[u32]) -> Coeffs {
        let n = self.inner.n as usize;
        let p = self.inner.p as u64;
        if n == 1 {
            return SmallVec::from_elem(((a[0] as u64 * b[0] as u64) % p) as u32, 1);
        }
        let mut t: SmallVec<[u64; 16]> = SmallVec::from_elem(0, 2 * n - 1);
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                t[i + j] += x as u64 * y as u64 % p;
            }
        }
        let m = &self.inner.modulus;
        for d in (n..2 * n - 1).rev() {
            let c = t[d] % p;
            if c == 0 {
                continue;
            }
            for i in 0..n {
                t[d - n + i] += c * ((p - m[i] as u64) % p) % p;
            }
        }
        t[..n].iter().map(|&v| (v % p) as u32).collect()
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}:", self.inner.p, self.inner.n)?;
        for (i, c) in self.inner.modulus.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// An element of a [`FieldSpec`].
#[derive(Clone)]
pub struct FFElem {
    field: FieldSpec,
    pub(crate) coeffs: Coeffs,
}

/// The four field operations accepted by [`arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Checked binary arithmetic: errors on field mismatch or division by zero.
pub fn arith(a: &FFElem, b: &FFElem, op: ArithOp) -> Result<FFElem, FieldError> {
    a.same_field(b)?;
    Ok(match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
        ArithOp::Div => a * &b.inv()?,
    })
}

impl FFElem {
    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    /// Power-basis coordinates, each in `[0, p)`.
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    /// Whether the element lies in the prime subfield.
    pub fn is_prime_subfield(&self) -> bool {
        self.coeffs[1..].iter().all(|&c| c == 0)
    }

    /// Position in the lexicographic enumeration of the field.
    pub fn index(&self) -> u64 {
        let p = self.field.p();
        self.coeffs.iter().fold(0, |acc, &c| acc * p + c as u64)
    }

    pub(crate) fn same_field(&self, other: &FFElem) -> Result<(), FieldError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(FieldError::FieldMismatch(
                self.field.to_string(),
                other.field.to_string(),
            ))
        }
    }

    fn assert_same(&self, other: &FFElem) {
        if let Err(e) = self.same_field(other) {
            panic!("{e}");
        }
    }

    pub(crate) fn pow_u(&self, mut e: u64) -> FFElem {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `self^e` by square-and-multiply; negative exponents need a nonzero base.
    pub fn pow(&self, e: i64) -> Result<FFElem, FieldError> {
        if e >= 0 {
            Ok(self.pow_u(e as u64))
        } else {
            Ok(self.inv()?.pow_u(e.unsigned_abs()))
        }
    }

    pub fn inv(&self) -> Result<FFElem, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(self.pow_u(self.field.q() - 2))
    }

    pub fn try_div(&self, other: &FFElem) -> Result<FFElem, FieldError> {
        arith(self, other, ArithOp::Div)
    }

    /// `self^{p^r}`.
    pub fn frobenius(&self, r: u64) -> FFElem {
        let steps = r % self.field.n() as u64;
        let p = self.field.p();
        (0..steps).fold(self.clone(), |x, _| x.pow_u(p))
    }

    /// `a + a^p + … + a^{p^{n-1}}`, as a residue mod p.
    pub fn trace_to_prime(&self) -> u32 {
        let n = self.field.n() as u64;
        let mut acc = self.clone();
        let mut conj = self.clone();
        for _ in 1..n {
            conj = conj.frobenius(1);
            acc = &acc + &conj;
        }
        debug_assert!(acc.is_prime_subfield());
        acc.coeffs[0]
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self) -> Result<u64, FieldError> {
        if self.is_zero() {
            return Err(FieldError::LogOfZero);
        }
        let mut ord = self.field.q() - 1;
        for &l in self.field.order_primes() {
            while ord % l == 0 && self.pow_u(ord / l).is_one() {
                ord /= l;
            }
        }
        Ok(ord)
    }

    /// Least `e >= 0` with `base^e = self`, by brute force.
    pub fn discrete_log(&self, base: &FFElem) -> Result<u64, FieldError> {
        self.same_field(base)?;
        if self.is_zero() {
            return Err(FieldError::LogOfZero);
        }
        let mut acc = self.field.one();
        for e in 0..self.field.q() - 1 {
            if acc == *self {
                return Ok(e);
            }
            acc = &acc * base;
        }
        Err(FieldError::NoLog(self.to_string()))
    }
}

/// `{x : x^m = 1}` ordered by discrete log with respect to the canonical generator.
pub fn roots_of_unity(field: &FieldSpec, m: u64) -> Vec<FFElem> {
    use num_integer::Integer;
    let order = field.q() - 1;
    let d = m.gcd(&order);
    let step = field.generator().pow_u(order / d);
    let mut out = Vec::with_capacity(d as usize);
    let mut x = field.one();
    for _ in 0..d {
        out.push(x.clone());
        x = &x * &step;
    }
    out
}

impl PartialEq for FFElem {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && self.field == other.field
    }
}

impl Eq for FFElem {}

impl Hash for FFElem {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl PartialOrd for FFElem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic on coordinates, constant term first.
impl Ord for FFElem {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs.cmp(&other.coeffs)
    }
}

impl fmt::Display for FFElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for FFElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $coeffs:ident) => {
        impl<'a> $tr<&'a FFElem> for &'a FFElem {
            type Output = FFElem;
            /// Panics if the operands live in different fields; see [`arith`].
            fn $method(self, rhs: &'a FFElem) -> FFElem {
                self.assert_same(rhs);
                self.field.raw(self.field.$coeffs(&self.coeffs, &rhs.coeffs))
            }
        }

        impl $tr<FFElem> for FFElem {
            type Output = FFElem;
            fn $method(self, rhs: FFElem) -> FFElem {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, add_coeffs);
binop!(Sub, sub, sub_coeffs);
binop!(Mul, mul, mul_coeffs);

impl Neg for &FFElem {
    type Output = FFElem;
    fn neg(self) -> FFElem {
        let z = self.field.zero();
        &z - self
    }
}

impl Neg for FFElem {
    type Output = FFElem;
    fn neg(self) -> FFElem {
        -&self
    }
}

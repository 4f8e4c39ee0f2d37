//! Coding the degree-n extension of `F_q` inside `F_q^n`.
//!
//! The extension is `F_q[X]/(X^n + a_1 X^{n-1} + … + a_n)` with basis
//! `1, α, …, α^{n-1}`; multiplication by `α` is the companion matrix and the
//! Frobenius `σ: x ↦ x^q` is determined by `σ(α) = b_0 + b_1 α + … + b_{n-1} α^{n-1}`.
//! Together the `a_i` and `b_i` are the `2n` parameters of the coding.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::field::{make_field, Embedding, FFElem, FieldError, FieldSpec, Poly, MAX_FIELD_SIZE};
use crate::linalg::Matrix;

/// Above this many coded elements, [`verify_iso_with_direct`] samples pairs.
pub const EXHAUSTIVE_ISO_LIMIT: u64 = 1 << 10;
pub const SAMPLED_ISO_PAIRS: u64 = 100_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InterpretError {
    #[error("F_{q}^{n} exceeds the field-size cap")]
    TooLarge { q: u64, n: usize },
    #[error("expected vectors of length {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("Galois power {r} out of range for degree {n}")]
    PowerOutOfRange { r: u64, n: usize },
    #[error("not a field automorphism: {0}")]
    NotAutomorphism(String),
    #[error("{0} is not a root of the minimal polynomial")]
    NotARoot(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Debug, Clone)]
pub struct CodedExtension {
    base: FieldSpec,
    n: usize,
    /// `a_1, …, a_n`.
    min_poly: Vec<FFElem>,
    companion: Matrix,
    /// `b_0, …, b_{n-1}`.
    galois_coeffs: Vec<FFElem>,
    galois: Matrix,
}

pub type Coded = Vec<FFElem>;

pub fn code_extension(base: &FieldSpec, n: usize) -> Result<CodedExtension, InterpretError> {
    let too_large = InterpretError::TooLarge { q: base.q(), n };
    match base.q().checked_pow(n as u32) {
        Some(size) if n >= 1 && size <= MAX_FIELD_SIZE => {}
        _ => return Err(too_large),
    }
    let f = Poly::lex_least_irreducible(base, n);
    // x^q mod f
    let frob = Poly::x(base).pow_mod(base.q(), &f);
    let mut b: Vec<FFElem> = frob.coeffs().to_vec();
    b.resize(n, base.zero());
    let c = f.coeffs();
    let min_poly = (1..=n).map(|i| c[n - i].clone()).collect();
    CodedExtension::with_parameters(base, min_poly, b)
}

impl CodedExtension {
    /// Builds a coding from explicit parameters; `b` must be the coordinates of a
    /// root of the minimal polynomial, so that `α ↦ b` is an automorphism.
    pub fn with_parameters(
        base: &FieldSpec,
        min_poly: Vec<FFElem>,
        galois_coeffs: Vec<FFElem>,
    ) -> Result<Self, InterpretError> {
        let n = min_poly.len();
        if galois_coeffs.len() != n {
            return Err(InterpretError::LengthMismatch {
                expected: n,
                got: galois_coeffs.len(),
            });
        }
        let mut cols: Vec<Vec<FFElem>> = (1..n)
            .map(|j| {
                let mut e = vec![base.zero(); n];
                e[j] = base.one();
                e
            })
            .collect();
        // α · α^{n-1} = -(a_n + a_{n-1} α + … + a_1 α^{n-1})
        cols.push((0..n).map(|i| -&min_poly[n - 1 - i]).collect());
        let companion = Matrix::from_columns(base, &cols);
        let mut ext = CodedExtension {
            base: base.clone(),
            n,
            min_poly,
            companion,
            galois_coeffs: galois_coeffs.clone(),
            galois: Matrix::identity(base, n),
        };
        if !ext.eval_min_poly(&galois_coeffs).iter().all(FFElem::is_zero) {
            return Err(InterpretError::NotARoot(format!("{galois_coeffs:?}")));
        }
        let mut powers = vec![ext.one()];
        for j in 1..n {
            let next = ext.mul_unchecked(&powers[j - 1], &galois_coeffs);
            powers.push(next);
        }
        ext.galois = Matrix::from_columns(base, &powers);
        Ok(ext)
    }

    pub fn base(&self) -> &FieldSpec {
        &self.base
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn min_poly(&self) -> &[FFElem] {
        &self.min_poly
    }

    pub fn companion(&self) -> &Matrix {
        &self.companion
    }

    pub fn galois_coeffs(&self) -> &[FFElem] {
        &self.galois_coeffs
    }

    /// `(a_1, …, a_n, b_0, …, b_{n-1})`.
    pub fn parameters(&self) -> Vec<FFElem> {
        self.min_poly
            .iter()
            .chain(&self.galois_coeffs)
            .cloned()
            .collect()
    }

    /// Number of coded elements, `q^n`.
    pub fn size(&self) -> u64 {
        self.base.q().pow(self.n as u32)
    }

    pub fn one(&self) -> Coded {
        let mut v = vec![self.base.zero(); self.n];
        v[0] = self.base.one();
        v
    }

    /// Coded vector with lexicographic index `idx` (first coordinate most significant).
    pub fn from_index(&self, mut idx: u64) -> Coded {
        let q = self.base.q();
        let mut v = vec![self.base.zero(); self.n];
        for slot in v.iter_mut().rev() {
            *slot = self.base.from_index(idx % q);
            idx /= q;
        }
        v
    }

    pub fn index_of(&self, v: &[FFElem]) -> u64 {
        let q = self.base.q();
        v.iter().fold(0, |acc, c| acc * q + c.index())
    }

    fn check_len(&self, v: &[FFElem]) -> Result<(), InterpretError> {
        if v.len() != self.n {
            return Err(InterpretError::LengthMismatch {
                expected: self.n,
                got: v.len(),
            });
        }
        for c in v {
            c.same_field(&self.base.one())?;
        }
        Ok(())
    }

    /// `C·w`, using the companion structure (shift plus last column).
    fn times_alpha(&self, w: &[FFElem]) -> Coded {
        let n = self.n;
        let top = &w[n - 1];
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let shifted = if i == 0 { self.base.zero() } else { w[i - 1].clone() };
            out.push(&shifted - &(top * &self.min_poly[n - 1 - i]));
        }
        out
    }

    /// `u(C)·v = Σ u_i C^i v`.
    fn mul_unchecked(&self, u: &[FFElem], v: &[FFElem]) -> Coded {
        let mut acc = vec![self.base.zero(); self.n];
        let mut w = v.to_vec();
        for (i, ui) in u.iter().enumerate() {
            if !ui.is_zero() {
                for (a, x) in acc.iter_mut().zip(&w) {
                    *a = &*a + &(ui * x);
                }
            }
            if i + 1 < self.n {
                w = self.times_alpha(&w);
            }
        }
        acc
    }

    fn eval_min_poly(&self, x: &[FFElem]) -> Coded {
        // Horner on X^n + a_1 X^{n-1} + … + a_n
        let mut acc = self.one();
        for a in &self.min_poly {
            acc = self.mul_unchecked(&acc, x);
            acc[0] = &acc[0] + a;
        }
        acc
    }
}

/// Product in the coded extension.
pub fn coded_mul(ext: &CodedExtension, u: &[FFElem], v: &[FFElem]) -> Result<Coded, InterpretError> {
    ext.check_len(u)?;
    ext.check_len(v)?;
    Ok(ext.mul_unchecked(u, v))
}

/// Matrix of `x ↦ x^{q^r}` in the power basis, composed from the single
/// Frobenius expansion.
pub fn galois_matrix(ext: &CodedExtension, r: u64) -> Result<Matrix, InterpretError> {
    if r >= ext.n as u64 {
        return Err(InterpretError::PowerOutOfRange { r, n: ext.n });
    }
    Ok(ext.galois.pow(r))
}

/// Evaluates `Σ c_i β^i` for a coded `β`: the action of the substitution `α ↦ β`.
pub fn substitute(ext: &CodedExtension, c: &[FFElem], beta: &[FFElem]) -> Coded {
    let mut acc = vec![ext.base.zero(); ext.n];
    let mut pw = ext.one();
    for (i, ci) in c.iter().enumerate() {
        for (a, x) in acc.iter_mut().zip(&pw) {
            *a = &*a + &(ci * x);
        }
        if i + 1 < c.len() {
            pw = ext.mul_unchecked(&pw, beta);
        }
    }
    acc
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IsoReport {
    pub ok: bool,
    pub exhaustive: bool,
    pub pairs_checked: u64,
    /// Image of `α` in the directly constructed field.
    pub alpha_image: String,
    pub witness: Option<(String, String)>,
}

/// Compares coded multiplication against the field `F_{p^{mn}}` built directly,
/// through `α ↦ θ` with `θ` the lex-least root of the minimal polynomial there.
pub fn verify_iso_with_direct(ext: &CodedExtension, seed: u64) -> Result<IsoReport, InterpretError> {
    let base = &ext.base;
    let direct = make_field(base.p(), base.n() * ext.n as u32)?;
    let emb = Embedding::new(base, &direct)?;
    let coeffs: Vec<FFElem> = ext
        .min_poly
        .iter()
        .rev()
        .map(|a| emb.apply(a))
        .chain(std::iter::once(Ok(direct.one())))
        .collect::<Result<_, _>>()?;
    let f = Poly::new(&direct, coeffs);
    let theta = direct
        .elements()
        .find(|x| f.eval(x).is_zero())
        .expect("the direct field splits the minimal polynomial");
    let size = ext.size();
    let image = |u: &[FFElem]| -> FFElem {
        let mut acc = direct.zero();
        let mut pw = direct.one();
        for c in u {
            acc = &acc + &(&emb.apply(c).expect("base element") * &pw);
            pw = &pw * &theta;
        }
        acc
    };
    let table: Vec<FFElem> = (0..size).map(|i| image(&ext.from_index(i))).collect();
    let check = |i: u64, j: u64| -> Option<(String, String)> {
        let (u, v) = (ext.from_index(i), ext.from_index(j));
        let prod = ext.mul_unchecked(&u, &v);
        let lhs = &table[ext.index_of(&prod) as usize];
        let rhs = &table[i as usize] * &table[j as usize];
        (*lhs != rhs).then(|| (format!("{u:?}"), format!("{v:?}")))
    };
    let exhaustive = size <= EXHAUSTIVE_ISO_LIMIT;
    let (pairs_checked, witness) = if exhaustive {
        let w = (0..size)
            .into_par_iter()
            .filter_map(|i| (0..size).find_map(|j| check(i, j)))
            .find_first(|_| true);
        (size * size, w)
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pairs: Vec<(u64, u64)> = (0..SAMPLED_ISO_PAIRS)
            .map(|_| (rng.gen_range(0..size), rng.gen_range(0..size)))
            .collect();
        let w = pairs.par_iter().find_map_first(|&(i, j)| check(i, j));
        (SAMPLED_ISO_PAIRS, w)
    };
    // the image table must also be injective for an isomorphism
    let mut seen = vec![false; size as usize];
    let injective = table.iter().all(|x| !std::mem::replace(&mut seen[x.index() as usize], true));
    Ok(IsoReport {
        ok: witness.is_none() && injective,
        exhaustive,
        pairs_checked,
        alpha_image: theta.to_string(),
        witness,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CommuteReport {
    /// `σ(μ(α)) = b_0 + b_1 μ(α) + … + b_{n-1} μ(α)^{n-1} = μ(σ(α))`.
    pub on_generator: bool,
    /// `μσ = σμ` as matrices, hence on every element.
    pub on_all: bool,
    pub commute: bool,
}

/// Checks that the coded automorphism `mu` commutes with the Frobenius `σ`,
/// following the computation through the `b`-expansion of `σ(α)`.
pub fn verify_commute(ext: &CodedExtension, mu: &Matrix) -> Result<CommuteReport, InterpretError> {
    let n = ext.n;
    if mu.rows() != n || mu.cols() != n || mu.field() != &ext.base {
        return Err(InterpretError::NotAutomorphism(format!(
            "expected a {n}x{n} matrix over {}",
            ext.base
        )));
    }
    if !mu.is_invertible() {
        return Err(InterpretError::NotAutomorphism("singular".into()));
    }
    if mu.apply(&ext.one()) != ext.one() {
        return Err(InterpretError::NotAutomorphism("μ(1) ≠ 1".into()));
    }
    // μ is F_q-linear, so multiplicativity on basis pairs is multiplicativity everywhere.
    let basis: Vec<Coded> = (0..n)
        .map(|i| {
            let mut e = vec![ext.base.zero(); n];
            e[i] = ext.base.one();
            e
        })
        .collect();
    for (i, ei) in basis.iter().enumerate() {
        for (j, ej) in basis.iter().enumerate() {
            let lhs = mu.apply(&ext.mul_unchecked(ei, ej));
            let rhs = ext.mul_unchecked(&mu.apply(ei), &mu.apply(ej));
            if lhs != rhs {
                return Err(InterpretError::NotAutomorphism(format!(
                    "μ(α^{i}·α^{j}) ≠ μ(α^{i})·μ(α^{j})"
                )));
            }
        }
    }
    let alpha = if n > 1 { basis[1].clone() } else { vec![ext.base.zero()] };
    let mu_alpha = mu.apply(&alpha);
    let sigma_mu_alpha = ext.galois.apply(&mu_alpha);
    let expansion = substitute(ext, &ext.galois_coeffs, &mu_alpha);
    let mu_sigma_alpha = mu.apply(&ext.galois.apply(&alpha));
    let on_generator = sigma_mu_alpha == expansion && expansion == mu_sigma_alpha;
    let on_all = mu.mul(&ext.galois) == ext.galois.mul(mu);
    Ok(CommuteReport {
        on_generator,
        on_all,
        commute: on_generator && on_all,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(field: &FieldSpec, v: &[i64]) -> Coded {
        v.iter().map(|&x| field.from_int(x)).collect()
    }

    #[test]
    fn f9_coding() {
        let f3 = make_field(3, 1).unwrap();
        let ext = code_extension(&f3, 2).unwrap();
        assert_eq!(ext.min_poly(), ints(&f3, &[0, 1]).as_slice());
        assert_eq!(
            ext.companion(),
            &Matrix::from_rows(&f3, vec![ints(&f3, &[0, 2]), ints(&f3, &[1, 0])])
        );
        assert_eq!(ext.galois_coeffs(), ints(&f3, &[0, 2]).as_slice());
        assert_eq!(ext.parameters().len(), 4);
    }

    #[test]
    fn degree_one_is_identity_coding() {
        let f2 = make_field(2, 1).unwrap();
        let ext = code_extension(&f2, 1).unwrap();
        assert_eq!(ext.min_poly(), ints(&f2, &[0]).as_slice());
        assert_eq!(galois_matrix(&ext, 0).unwrap(), Matrix::identity(&f2, 1));
        assert!(verify_iso_with_direct(&ext, 0).unwrap().ok);
    }

    #[test]
    fn coded_mul_examples() {
        let f3 = make_field(3, 1).unwrap();
        let ext = code_extension(&f3, 2).unwrap();
        let m = |u: &[i64], v: &[i64]| coded_mul(&ext, &ints(&f3, u), &ints(&f3, v)).unwrap();
        assert_eq!(m(&[0, 1], &[0, 1]), ints(&f3, &[2, 0]));
        assert_eq!(m(&[1, 1], &[1, 2]), ints(&f3, &[2, 0]));
        assert_eq!(m(&[1, 0], &[2, 1]), ints(&f3, &[2, 1]));
        assert!(matches!(
            coded_mul(&ext, &ints(&f3, &[1]), &ints(&f3, &[1, 0])),
            Err(InterpretError::LengthMismatch { .. })
        ));
    }

    #[test]
    fn galois_matrices_f9() {
        let f3 = make_field(3, 1).unwrap();
        let ext = code_extension(&f3, 2).unwrap();
        let g = galois_matrix(&ext, 1).unwrap();
        assert_eq!(g.apply(&ints(&f3, &[1, 1])), ints(&f3, &[1, 2]));
        assert_eq!(g.mul(&g), Matrix::identity(&f3, 2));
        assert_eq!(galois_matrix(&ext, 0).unwrap(), Matrix::identity(&f3, 2));
        assert!(galois_matrix(&ext, 2).is_err());
    }

    #[test]
    fn cayley_hamilton() {
        for (p, m, n) in [(3, 1, 2), (2, 2, 3), (5, 1, 4), (2, 1, 8)] {
            let base = make_field(p, m).unwrap();
            let ext = code_extension(&base, n).unwrap();
            let c = ext.companion();
            let mut acc = Matrix::identity(&base, n);
            for a in ext.min_poly() {
                acc = acc.mul(c).add(&Matrix::identity(&base, n).scale(a));
            }
            assert!(acc.is_zero());
        }
    }

    #[test]
    fn iso_small_cases() {
        let f3 = make_field(3, 1).unwrap();
        let r = verify_iso_with_direct(&code_extension(&f3, 2).unwrap(), 0).unwrap();
        assert!(r.ok && r.exhaustive);
        assert_eq!(r.pairs_checked, 81);
        let f4 = make_field(2, 2).unwrap();
        let r = verify_iso_with_direct(&code_extension(&f4, 2).unwrap(), 0).unwrap();
        assert!(r.ok);
        assert_eq!(r.pairs_checked, 256);
    }

    #[test]
    fn commute_examples() {
        let f3 = make_field(3, 1).unwrap();
        let ext = code_extension(&f3, 4).unwrap();
        let mu = galois_matrix(&ext, 2).unwrap();
        assert!(verify_commute(&ext, &mu).unwrap().commute);
        assert!(verify_commute(&ext, &Matrix::identity(&f3, 4)).unwrap().commute);

        let ext9 = code_extension(&f3, 2).unwrap();
        let swap = Matrix::from_rows(&f3, vec![ints(&f3, &[0, 1]), ints(&f3, &[1, 0])]);
        assert!(matches!(
            verify_commute(&ext9, &swap),
            Err(InterpretError::NotAutomorphism(_))
        ));
    }

    #[test]
    fn alternative_galois_coefficients() {
        // σ^3 (α) is another root; the coding with that b-vector is still valid.
        let f2 = make_field(2, 1).unwrap();
        let ext = code_extension(&f2, 5).unwrap();
        let g3 = galois_matrix(&ext, 3).unwrap();
        let alpha = ints(&f2, &[0, 1, 0, 0, 0]);
        let b = g3.apply(&alpha);
        let alt = CodedExtension::with_parameters(&f2, ext.min_poly().to_vec(), b).unwrap();
        assert_eq!(galois_matrix(&alt, 1).unwrap(), g3);
        assert!(CodedExtension::with_parameters(&f2, ext.min_poly().to_vec(), ints(&f2, &[1, 1, 0, 0, 0])).is_err());
    }
}

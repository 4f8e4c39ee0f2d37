//! Canonical subfield embeddings and towers of fields.

use super::{FFElem, FieldError, FieldSpec, Poly};

/// The ring embedding `F_{p^d} → F_{p^n}` sending `α` to the lexicographically
/// least root of the source modulus in the target. A field embeds into itself
/// by the identity.
#[derive(Clone, Debug)]
pub struct Embedding {
    source: FieldSpec,
    target: FieldSpec,
    /// Images of `1, α, …, α^{d-1}`.
    basis_images: Vec<FFElem>,
}

impl Embedding {
    pub fn new(source: &FieldSpec, target: &FieldSpec) -> Result<Self, FieldError> {
        let (d, n) = (source.n(), target.n());
        if source.p() != target.p() || n % d != 0 {
            return Err(FieldError::NotSubfield {
                p: source.p(),
                sub: d,
                sup: n,
            });
        }
        let root = if source == target {
            target.alpha()
        } else {
            canonical_root(source, target)
        };
        let mut basis_images = Vec::with_capacity(d as usize);
        let mut x = target.one();
        for _ in 0..d {
            basis_images.push(x.clone());
            x = &x * &root;
        }
        Ok(Embedding {
            source: source.clone(),
            target: target.clone(),
            basis_images,
        })
    }

    pub fn source(&self) -> &FieldSpec {
        &self.source
    }

    pub fn target(&self) -> &FieldSpec {
        &self.target
    }

    /// Image of `α` (the chosen root of the source modulus).
    pub fn root(&self) -> FFElem {
        if self.basis_images.len() > 1 {
            self.basis_images[1].clone()
        } else {
            // Prime field: modulus x, root 0.
            self.target.zero()
        }
    }

    pub fn apply(&self, a: &FFElem) -> Result<FFElem, FieldError> {
        if a.field() != &self.source {
            return Err(FieldError::FieldMismatch(
                a.field().to_string(),
                self.source.to_string(),
            ));
        }
        let mut acc = self.target.zero();
        for (c, b) in a.coeffs().iter().zip(&self.basis_images) {
            if *c != 0 {
                acc = &acc + &(&self.target.from_int(*c as i64) * b);
            }
        }
        Ok(acc)
    }
}

/// Lex-least root of the source modulus inside the target, searched over the
/// copy of `F_{p^d}` in the target: `{0} ∪ ⟨g^{(Q-1)/(p^d-1)}⟩`.
fn canonical_root(source: &FieldSpec, target: &FieldSpec) -> FFElem {
    let prime_lift = |c: &FFElem| target.from_int(c.coeffs()[0] as i64);
    let prime = super::make_field(source.p(), 1).expect("prime field");
    let modulus = Poly::new(
        &prime,
        source
            .modulus()
            .iter()
            .map(|&c| prime.from_int(c as i64))
            .collect(),
    );
    let sub_order = source.q() - 1;
    let step = target.generator().pow_u((target.q() - 1) / sub_order);
    let mut x = target.one();
    let mut best: Option<FFElem> = None;
    for _ in 0..sub_order {
        if modulus.eval_with(&x, prime_lift).is_zero() && best.as_ref().is_none_or(|b| x < *b) {
            best = Some(x.clone());
        }
        x = &x * &step;
    }
    if modulus.eval_with(&target.zero(), prime_lift).is_zero() {
        return target.zero();
    }
    best.expect("the target contains a copy of the source field")
}

/// Embeds `a` into `target` canonically.
pub fn embed(a: &FFElem, target: &FieldSpec) -> Result<FFElem, FieldError> {
    Embedding::new(a.field(), target)?.apply(a)
}

/// A chain of fields `L_0 ⊆ L_1 ⊆ …` glued by canonical step embeddings.
/// Elements are always lifted one step at a time so that lifts compose.
#[derive(Clone, Debug)]
pub struct Tower {
    levels: Vec<FieldSpec>,
    steps: Vec<Embedding>,
}

impl Tower {
    pub fn new(levels: Vec<FieldSpec>) -> Result<Self, FieldError> {
        assert!(!levels.is_empty(), "a tower has at least one level");
        let steps = levels
            .windows(2)
            .map(|w| Embedding::new(&w[0], &w[1]))
            .collect::<Result<_, _>>()?;
        Ok(Tower { levels, steps })
    }

    /// Tower over `base` whose level `i` has degree `degrees[i]` over `base`.
    pub fn over(base: &FieldSpec, degrees: &[u32]) -> Result<Self, FieldError> {
        let levels = degrees
            .iter()
            .map(|&e| {
                if e == 1 {
                    Ok(base.clone())
                } else {
                    let n = base
                        .n()
                        .checked_mul(e)
                        .ok_or(FieldError::TooLarge { p: base.p(), n: u32::MAX })?;
                    super::make_field(base.p(), n)
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        Tower::new(levels)
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    pub fn level(&self, i: usize) -> &FieldSpec {
        &self.levels[i]
    }

    pub fn levels(&self) -> &[FieldSpec] {
        &self.levels
    }

    pub fn top(&self) -> &FieldSpec {
        self.levels.last().expect("nonempty")
    }

    /// Lifts an element of level `from` to level `to >= from`.
    pub fn lift(&self, a: &FFElem, from: usize, to: usize) -> Result<FFElem, FieldError> {
        assert!(from <= to && to < self.levels.len(), "bad tower levels {from}->{to}");
        if a.field() != &self.levels[from] {
            return Err(FieldError::FieldMismatch(
                a.field().to_string(),
                self.levels[from].to_string(),
            ));
        }
        self.steps[from..to]
            .iter()
            .try_fold(a.clone(), |x, e| e.apply(&x))
    }

    /// Extends the tower by one level on top.
    pub fn push(&mut self, field: FieldSpec) -> Result<(), FieldError> {
        let e = Embedding::new(self.top(), &field)?;
        self.levels.push(field);
        self.steps.push(e);
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    #[test]
    fn prime_subfield_embeds_trivially() {
        let f3 = make_field(3, 1).unwrap();
        let f9 = make_field(3, 2).unwrap();
        assert_eq!(embed(&f3.from_int(2), &f9).unwrap(), f9.from_int(2));
    }

    #[test]
    fn f9_into_f81_uses_lex_least_root() {
        let f9 = make_field(3, 2).unwrap();
        let f81 = make_field(3, 4).unwrap();
        // Oracle: enumerate all of F_81.
        let roots: Vec<FFElem> = f81
            .elements()
            .filter(|x| (&(x * x) + &f81.one()).is_zero())
            .collect();
        assert_eq!(roots.len(), 2);
        let least = roots.iter().min().unwrap().clone();
        assert_eq!(embed(&f9.alpha(), &f81).unwrap(), least);
    }

    #[test]
    fn embedding_is_a_homomorphism_commuting_with_frobenius() {
        let f4 = make_field(2, 2).unwrap();
        let f64 = make_field(2, 6).unwrap();
        let e = Embedding::new(&f4, &f64).unwrap();
        for a in f4.elements() {
            for b in f4.elements() {
                assert_eq!(e.apply(&(&a * &b)).unwrap(), &e.apply(&a).unwrap() * &e.apply(&b).unwrap());
                assert_eq!(e.apply(&(&a + &b)).unwrap(), &e.apply(&a).unwrap() + &e.apply(&b).unwrap());
            }
            for r in 0..6 {
                assert_eq!(e.apply(&a.frobenius(r)).unwrap(), e.apply(&a).unwrap().frobenius(r));
            }
        }
    }

    #[test]
    fn trace_respects_towers() {
        // Tr_{F81/F3}(a) = 2 * Tr_{F9/F3}(a) for a in F9 (degree [F81:F9] = 2).
        let f9 = make_field(3, 2).unwrap();
        let f81 = make_field(3, 4).unwrap();
        for idx in [1, 4, 7] {
            let a = f9.from_index(idx);
            let lifted = embed(&a, &f81).unwrap();
            assert_eq!(lifted.trace_to_prime(), (2 * a.trace_to_prime()) % 3);
        }
    }

    #[test]
    fn non_subfield_rejected() {
        let f9 = make_field(3, 2).unwrap();
        let f27 = make_field(3, 3).unwrap();
        assert!(matches!(embed(&f9.alpha(), &f27), Err(FieldError::NotSubfield { .. })));
    }

    #[test]
    fn tower_lifts_compose() {
        let f7 = make_field(7, 1).unwrap();
        let t = Tower::over(&f7, &[1, 2, 4]).unwrap();
        let a = t.level(1).generator();
        let direct = t.lift(&a, 1, 2).unwrap();
        assert_eq!(direct.pow(48).unwrap(), t.top().one());
    }
}

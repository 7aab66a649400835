//! Monic right-integrality relations `c_0 + r c_1 + ... + r^{N-1} c_{N-1} + r^N = 0`
//! read off from characteristic polynomials of matrix images.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::det::{char_poly_with, expected_leading, AdjointRule, CharPolyResult, Side};
use crate::error::{AlgebraError, Result};
use crate::matrix::SquareMatrix;
use crate::poly::{Poly, PolyRing, SkewPolyRing};
use crate::ring::{fix_membership, Endo, QAlgebra, Ring};

use super::embed::{embed_diagonal, embed_skew};
use super::grading::{embed_gamma, Grading};

#[derive(Clone, Copy, Default)]
pub struct WitnessOptions<'a> {
    /// Preadjoint evaluator used for the characteristic polynomial.
    pub rule: AdjointRule,
    /// Called with a short stage name as the computation proceeds.
    pub progress: Option<&'a (dyn Fn(&str) + Sync)>,
}

impl WitnessOptions<'_> {
    fn report(&self, stage: &str) {
        if let Some(p) = self.progress {
            p(stage);
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Witness<E> {
    pub relation_degree: usize,
    /// `c_0 ... c_{N-1}`; the leading coefficient is 1.
    pub coefficients: Vec<E>,
    /// Value of the relation at the input; zero when it holds.
    pub residual: E,
    /// Whether every `c_t` lies in the designated subring.
    pub coefficients_admissible: bool,
    /// Whether the raw leading coefficient equals the predicted integer.
    pub leading_matches: bool,
}

impl<E> Witness<E> {
    pub fn verified<R: Ring<Elem = E>>(&self, ring: &R) -> bool {
        ring.is_zero(&self.residual) && self.coefficients_admissible && self.leading_matches
    }

    pub fn record<R: Ring<Elem = E>>(&self, ring: &R) -> WitnessRecord {
        WitnessRecord {
            relation_degree: self.relation_degree,
            coefficients: self.coefficients.iter().map(|c| ring.format(c)).collect(),
            verified: self.verified(ring),
            residual: ring.format(&self.residual),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessRecord {
    pub relation_degree: usize,
    pub coefficients: Vec<String>,
    pub verified: bool,
    pub residual: String,
}

fn declared_order<R: Ring>(delta: &Endo<R>) -> Result<usize> {
    delta.declared_order().ok_or_else(|| AlgebraError::UnknownOrder(delta.name()))
}

// sum_{t<N} x^t c_t + x^N
fn monic_value<R: Ring>(ring: &R, x: &R::Elem, coefficients: &[R::Elem]) -> R::Elem {
    let mut power = ring.one();
    let mut acc = ring.zero();
    for c in coefficients {
        acc = ring.add(&acc, &ring.mul(&power, c));
        power = ring.mul(&power, x);
    }
    ring.add(&acc, &power)
}

fn normalized<R: QAlgebra>(ring: &R, p: &CharPolyResult<R::Elem>, q: &BigInt) -> (Vec<R::Elem>, bool) {
    let inv = BigRational::new(1.into(), q.clone());
    let n = p.degree();
    let coefficients = p.coefficients[..n].iter().map(|c| ring.scale_rational(&inv, c)).collect();
    let leading_matches = p.coefficients.len() == n + 1 && ring.eq(p.leading(), &ring.from_bigint(q));
    (coefficients, leading_matches)
}

fn from_matrix<R: QAlgebra>(
    ring: &R,
    a: &SquareMatrix<R::Elem>,
    k: usize,
    r: &R::Elem,
    admissible: impl Fn(&R::Elem) -> bool,
    opts: &WitnessOptions,
) -> Result<Witness<R::Elem>> {
    opts.report("characteristic polynomial");
    let p = char_poly_with(ring, a, k, Side::Right, opts.rule)?;
    let q = expected_leading(a.size(), k);
    let (coefficients, leading_matches) = normalized(ring, &p, &q);
    opts.report("substitution");
    let residual = monic_value(ring, r, &coefficients);
    Ok(Witness {
        relation_degree: p.degree(),
        coefficients_admissible: coefficients.iter().all(&admissible),
        coefficients,
        residual,
        leading_matches,
    })
}

/// Relation of degree `n^k` with coefficients in `Fix(delta)`, for `delta` of
/// order `n` on an algebra that is Lie nilpotent of index `k`; computed from
/// `rdet_k(xI - diag_delta(r))`.
pub fn integrality_witness<R: QAlgebra>(
    ring: &R,
    delta: &Endo<R>,
    k: usize,
    r: &R::Elem,
    opts: &WitnessOptions,
) -> Result<Witness<R::Elem>> {
    let n = declared_order(delta)?;
    opts.report("embedding");
    let a = embed_diagonal(ring, delta.as_ref(), n, r);
    from_matrix(ring, &a, k, r, |c| fix_membership(ring, delta.as_ref(), c), opts)
}

/// Relation of degree `n^k` with coefficients in `R_0`, computed from
/// `rdet_k(xI - gamma(r))`.
pub fn graded_integrality_witness<R: QAlgebra>(
    ring: &R,
    grading: &dyn Grading<R>,
    k: usize,
    r: &R::Elem,
    opts: &WitnessOptions,
) -> Result<Witness<R::Elem>> {
    opts.report("embedding");
    let a = embed_gamma(ring, grading, r);
    from_matrix(ring, &a, k, r, |c| grading.in_component(ring, c, 0), opts)
}

/// Relation `g_0(w^n) + f g_1(w^n) + ... + f^N = 0` in `R[w, delta]` with
/// `g_t` in `Fix(delta)[w^n]`. The coefficients `lambda_t(z)` of the
/// characteristic polynomial of the skew embedding must be supported on
/// powers of `z^n` with fixed coefficients; anything else is reported as a
/// theorem violation.
pub fn skew_integrality_witness<R: QAlgebra>(
    skew: &SkewPolyRing<R>,
    k: usize,
    f: &Poly<R::Elem>,
    opts: &WitnessOptions,
) -> Result<Witness<Poly<R::Elem>>> {
    let base = skew.base();
    let delta = skew.delta();
    let n = declared_order(delta)?;
    opts.report("embedding");
    let m = embed_skew(skew, n, f)?;
    let rz = PolyRing::new(base.clone(), "z");
    opts.report("characteristic polynomial");
    let p = char_poly_with(&rz, &m, k, Side::Right, opts.rule)?;
    let q = expected_leading(n, k);
    let (lambdas, leading_matches) = normalized(&rz, &p, &q);
    let mut coefficients = Vec::with_capacity(lambdas.len());
    for (t, lambda) in lambdas.iter().enumerate() {
        for (e, c) in lambda.coefficients().iter().enumerate() {
            if base.is_zero(c) {
                continue;
            }
            if e % n != 0 {
                return Err(AlgebraError::TheoremViolation(format!(
                    "lambda_{t}(z) has a z^{e} term, off the z^{n} grid"
                )));
            }
            if !fix_membership(base, delta.as_ref(), c) {
                return Err(AlgebraError::TheoremViolation(format!(
                    "lambda_{t}(z) has coefficient {} outside Fix({})",
                    base.format(c),
                    delta.name()
                )));
            }
        }
        // z^{nj} and w^{nj} carry the same coefficient
        coefficients.push(skew.from_coefficients(lambda.coefficients().to_vec()));
    }
    opts.report("substitution");
    let residual = monic_value(skew, f, &coefficients);
    Ok(Witness {
        relation_degree: p.degree(),
        coefficients,
        residual,
        coefficients_admissible: true,
        leading_matches,
    })
}

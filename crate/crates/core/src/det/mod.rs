//! Symmetric determinants, preadjoints, adjoint sequences, right and left
//! determinants and characteristic polynomials over noncommutative rings.

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{AlgebraError, Result};
use crate::matrix::{identity, left_scale, mat_mul, right_scale, scalar_matrix, trace, SquareMatrix};
use crate::poly::PolyRing;
use crate::ring::Ring;

pub mod perm;

pub use perm::{factorial, permutations, sign};

/// Largest matrix size accepted by the permutation-sum evaluators.
pub const MAX_SIZE: usize = 6;

fn check_envelope(n: usize) -> Result<()> {
    if n > MAX_SIZE {
        let pairs = factorial(n) as f64 * factorial(n) as f64;
        return Err(AlgebraError::Envelope(format!(
            "size {n} exceeds {MAX_SIZE}; a symmetric determinant would need about {pairs:.2e} permutation pairs"
        )));
    }
    Ok(())
}

struct DoubleSum<'a, R: Ring> {
    ring: &'a R,
    a: &'a SquareMatrix<R::Elem>,
    skip: Option<usize>,
    rows_used: Vec<bool>,
    cols_used: Vec<bool>,
    pi: Vec<usize>,
    acc: R::Elem,
}

impl<R: Ring> DoubleSum<'_, R> {
    // position t picks row tau(t) and column pi(tau(t)); zero partial products are pruned
    fn walk(&mut self, t: usize, partial: &R::Elem) {
        let n = self.a.size();
        if t == n {
            self.acc = if sign(&self.pi) > 0 {
                self.ring.add(&self.acc, partial)
            } else {
                self.ring.sub(&self.acc, partial)
            };
            return;
        }
        if Some(t) == self.skip {
            self.walk(t + 1, partial);
            return;
        }
        for i in 0..n {
            if self.rows_used[i] {
                continue;
            }
            self.rows_used[i] = true;
            for j in 0..n {
                if self.cols_used[j] {
                    continue;
                }
                let next = self.ring.mul(partial, self.a.get(i, j));
                if self.ring.is_zero(&next) {
                    continue;
                }
                self.cols_used[j] = true;
                self.pi[i] = j;
                self.walk(t + 1, &next);
                self.cols_used[j] = false;
            }
            self.rows_used[i] = false;
        }
    }
}

fn double_sum<R: Ring>(ring: &R, a: &SquareMatrix<R::Elem>, fixed: Option<(usize, usize)>) -> R::Elem {
    let n = a.size();
    let mut state = DoubleSum {
        ring,
        a,
        skip: fixed.map(|(s, _)| s),
        rows_used: vec![false; n],
        cols_used: vec![false; n],
        pi: vec![0; n],
        acc: ring.zero(),
    };
    if let Some((s, r)) = fixed {
        state.rows_used[s] = true;
        state.cols_used[r] = true;
        state.pi[s] = r;
    }
    state.walk(0, &ring.one());
    state.acc
}

/// `sdet(A) = sum_{tau, pi} sgn(pi) a_{tau(1), pi(tau(1))} ... a_{tau(n), pi(tau(n))}`.
pub fn sdet<R: Ring>(ring: &R, a: &SquareMatrix<R::Elem>) -> Result<R::Elem> {
    check_envelope(a.size())?;
    Ok(double_sum(ring, a, None))
}

/// The same sum written as `sum_{alpha, beta} sgn(alpha) sgn(beta) a_{alpha(1), beta(1)} ...`,
/// enumerated without pruning.
pub fn sdet_by_pairs<R: Ring>(ring: &R, a: &SquareMatrix<R::Elem>) -> Result<R::Elem> {
    check_envelope(a.size())?;
    let perms = permutations(a.size());
    let mut acc = ring.zero();
    for alpha in &perms {
        for beta in &perms {
            let term = ring.product(alpha.iter().zip(beta).map(|(&i, &j)| a.get(i, j)));
            acc = if sign(alpha) * sign(beta) > 0 { ring.add(&acc, &term) } else { ring.sub(&acc, &term) };
        }
    }
    Ok(acc)
}

/// `A*`: entry `(r, s)` sums over `tau(s) = s`, `pi(s) = r`, omitting position `s`.
pub fn preadjoint<R: Ring>(ring: &R, a: &SquareMatrix<R::Elem>) -> Result<SquareMatrix<R::Elem>> {
    check_envelope(a.size())?;
    let n = a.size();
    if n == 1 {
        return Ok(identity(ring, 1));
    }
    Ok(SquareMatrix::from_fn(n, |r, s| double_sum(ring, a, Some((s, r)))))
}

/// `A*` through signed minors: entry `(r, s)` is `(-1)^{r+s} sdet(A_{s,r})`.
pub fn preadjoint_via_minors<R: Ring>(ring: &R, a: &SquareMatrix<R::Elem>) -> Result<SquareMatrix<R::Elem>> {
    check_envelope(a.size())?;
    let n = a.size();
    if n == 1 {
        return Ok(identity(ring, 1));
    }
    let mut out = Vec::with_capacity(n * n);
    for r in 0..n {
        for s in 0..n {
            let m = sdet_by_pairs(ring, &a.minor(s, r))?;
            out.push(if (r + s) % 2 == 0 { m } else { ring.neg(&m) });
        }
    }
    SquareMatrix::new(n, out)
}

/// Which preadjoint evaluator the higher-level routines use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AdjointRule {
    #[default]
    Direct,
    Minors,
    /// `A* + (1 + g) E_{1,1}` with `g` the first ring generator: a deliberately
    /// wrong evaluator for negative controls.
    Corrupted,
}

impl AdjointRule {
    pub fn apply<R: Ring>(self, ring: &R, a: &SquareMatrix<R::Elem>) -> Result<SquareMatrix<R::Elem>> {
        match self {
            AdjointRule::Direct => preadjoint(ring, a),
            AdjointRule::Minors => preadjoint_via_minors(ring, a),
            AdjointRule::Corrupted => {
                let mut p = preadjoint(ring, a)?;
                let g = ring.generators().into_iter().next().unwrap_or_else(|| ring.zero());
                let bumped = ring.add(p.get(0, 0), &ring.add(&ring.one(), &g));
                p.set(0, 0, bumped);
                Ok(p)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Right,
    Left,
}

/// `P_1 = A*`, `P_{j+1} = (A P_1 ... P_j)*`.
pub fn right_adjoint_sequence<R: Ring>(ring: &R, a: &SquareMatrix<R::Elem>, k: usize) -> Result<Vec<SquareMatrix<R::Elem>>> {
    right_adjoint_sequence_with(ring, a, k, AdjointRule::Direct)
}

pub fn right_adjoint_sequence_with<R: Ring>(
    ring: &R,
    a: &SquareMatrix<R::Elem>,
    k: usize,
    rule: AdjointRule,
) -> Result<Vec<SquareMatrix<R::Elem>>> {
    Ok(right_chain(ring, a, k, rule)?.0)
}

// returns the sequence together with the running product A P_1 ... P_k
fn right_chain<R: Ring>(
    ring: &R,
    a: &SquareMatrix<R::Elem>,
    k: usize,
    rule: AdjointRule,
) -> Result<(Vec<SquareMatrix<R::Elem>>, SquareMatrix<R::Elem>)> {
    assert!(k >= 1, "levels start at 1");
    let mut seq = Vec::with_capacity(k);
    let mut running = a.clone();
    for _ in 0..k {
        let p = rule.apply(ring, &running)?;
        running = mat_mul(ring, &running, &p)?;
        seq.push(p);
    }
    Ok((seq, running))
}

/// `Q_1 = A*`, `Q_{j+1} = (Q_j ... Q_1 A)*`.
pub fn left_adjoint_sequence<R: Ring>(ring: &R, a: &SquareMatrix<R::Elem>, k: usize) -> Result<Vec<SquareMatrix<R::Elem>>> {
    Ok(left_chain(ring, a, k, AdjointRule::Direct)?.0)
}

fn left_chain<R: Ring>(
    ring: &R,
    a: &SquareMatrix<R::Elem>,
    k: usize,
    rule: AdjointRule,
) -> Result<(Vec<SquareMatrix<R::Elem>>, SquareMatrix<R::Elem>)> {
    assert!(k >= 1, "levels start at 1");
    let mut seq = Vec::with_capacity(k);
    let mut running = a.clone();
    for _ in 0..k {
        let q = rule.apply(ring, &running)?;
        running = mat_mul(ring, &q, &running)?;
        seq.push(q);
    }
    Ok((seq, running))
}

/// `rdet_k(A) = tr(A P_1 ... P_k)`.
pub fn rdet<R: Ring>(ring: &R, a: &SquareMatrix<R::Elem>, k: usize) -> Result<R::Elem> {
    rdet_with(ring, a, k, AdjointRule::Direct)
}

pub fn rdet_with<R: Ring>(ring: &R, a: &SquareMatrix<R::Elem>, k: usize, rule: AdjointRule) -> Result<R::Elem> {
    Ok(trace(ring, &right_chain(ring, a, k, rule)?.1))
}

/// `ldet_k(A) = tr(Q_k ... Q_1 A)`.
pub fn ldet<R: Ring>(ring: &R, a: &SquareMatrix<R::Elem>, k: usize) -> Result<R::Elem> {
    ldet_with(ring, a, k, AdjointRule::Direct)
}

pub fn ldet_with<R: Ring>(ring: &R, a: &SquareMatrix<R::Elem>, k: usize, rule: AdjointRule) -> Result<R::Elem> {
    Ok(trace(ring, &left_chain(ring, a, k, rule)?.1))
}

/// Coefficients `lambda_0 ... lambda_{n^k}` of `rdet_k(xI - A)` (or `ldet_k`).
#[derive(Debug, Clone, PartialEq)]
pub struct CharPolyResult<E> {
    pub side: Side,
    pub k: usize,
    pub n: usize,
    pub coefficients: Vec<E>,
}

impl<E> CharPolyResult<E> {
    pub fn degree(&self) -> usize {
        self.n.pow(self.k as u32)
    }

    pub fn leading(&self) -> &E {
        self.coefficients.last().expect("coefficient list is never empty")
    }
}

/// `n ((n-1)!)^{1 + n + ... + n^{k-1}}`.
pub fn expected_leading(n: usize, k: usize) -> BigInt {
    let exponent: u32 = (0..k as u32).map(|i| (n as u32).pow(i)).sum();
    BigInt::from(n) * num_traits::pow(BigInt::from(factorial(n - 1)), exponent as usize)
}

/// Rough count of ring multiplications for a level-`k` characteristic polynomial.
pub fn char_poly_cost(n: usize, k: usize) -> f64 {
    let pairs = (factorial(n - 1) as f64).powi(2) * (n * n) as f64 * (n - 1) as f64;
    let degree = (n as f64).powi(k as i32);
    k as f64 * pairs * degree * degree
}

pub fn char_poly<R: Ring>(ring: &R, a: &SquareMatrix<R::Elem>, k: usize, side: Side) -> Result<CharPolyResult<R::Elem>> {
    char_poly_with(ring, a, k, side, AdjointRule::Direct)
}

/// Build `xI - A` over `R[x]` and take its `k`-th right or left determinant.
pub fn char_poly_with<R: Ring>(
    ring: &R,
    a: &SquareMatrix<R::Elem>,
    k: usize,
    side: Side,
    rule: AdjointRule,
) -> Result<CharPolyResult<R::Elem>> {
    check_envelope(a.size())?;
    let n = a.size();
    let px = PolyRing::new(ring.clone(), "x");
    let lifted = a.map(|c| px.constant(c.clone()));
    let x_i = scalar_matrix(&px, n, &px.indeterminate());
    let m = crate::matrix::mat_sub(&px, &x_i, &lifted)?;
    let det = match side {
        Side::Right => rdet_with(&px, &m, k, rule)?,
        Side::Left => ldet_with(&px, &m, k, rule)?,
    };
    let len = n.pow(k as u32) + 1;
    let coefficients = (0..len.max(det.coefficients().len())).map(|i| px.coeff_or_zero(&det, i)).collect();
    Ok(CharPolyResult { side, k, n, coefficients })
}

/// `sum_t A^t lambda_t`.
pub fn right_substitute<R: Ring>(ring: &R, p: &CharPolyResult<R::Elem>, a: &SquareMatrix<R::Elem>) -> Result<SquareMatrix<R::Elem>> {
    substitute(ring, p, a, Side::Right)
}

/// `sum_t lambda_t A^t`.
pub fn left_substitute<R: Ring>(ring: &R, p: &CharPolyResult<R::Elem>, a: &SquareMatrix<R::Elem>) -> Result<SquareMatrix<R::Elem>> {
    substitute(ring, p, a, Side::Left)
}

fn substitute<R: Ring>(ring: &R, p: &CharPolyResult<R::Elem>, a: &SquareMatrix<R::Elem>, side: Side) -> Result<SquareMatrix<R::Elem>> {
    if p.n != a.size() {
        return Err(AlgebraError::Dimension { left: p.n, right: a.size() });
    }
    let mut power = identity(ring, a.size());
    let mut acc = crate::matrix::zero_matrix(ring, a.size());
    for (t, lambda) in p.coefficients.iter().enumerate() {
        if t > 0 {
            power = mat_mul(ring, &power, a)?;
        }
        let term = match side {
            Side::Right => right_scale(ring, &power, lambda),
            Side::Left => left_scale(ring, lambda, &power),
        };
        acc = crate::matrix::mat_add(ring, &acc, &term)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grassmann::GrassmannAlgebra;
    use crate::matrix::{diagonal, MatrixRing};
    use crate::ring::rational::int;
    use crate::ring::Rationals;
    use crate::rng::seeded;

    fn qm(rows: &[&[i64]]) -> SquareMatrix<num_rational::BigRational> {
        SquareMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()).unwrap()
    }

    #[test]
    fn sdet_examples() {
        let q = Rationals;
        assert_eq!(sdet(&q, &identity(&q, 3)).unwrap(), int(6));
        assert_eq!(sdet(&q, &qm(&[&[1, 2], &[3, 4]])).unwrap(), int(-4));
        let e = GrassmannAlgebra::new(4, Rationals);
        let a = SquareMatrix::from_rows(vec![vec![e.generator(1), e.generator(2)], vec![e.generator(3), e.generator(4)]]).unwrap();
        assert!(e.is_zero(&sdet(&e, &a).unwrap()));
        assert!(sdet(&q, &identity(&q, 7)).is_err());
    }

    #[test]
    fn two_by_two_preadjoint_is_symbolic() {
        let e = GrassmannAlgebra::new(4, Rationals);
        let mut rng = seeded(2);
        for _ in 0..20 {
            let ring = MatrixRing::new(e.clone(), 2);
            let a = ring.sample(&mut rng);
            let expected = SquareMatrix::from_rows(vec![
                vec![a.get(1, 1).clone(), e.neg(a.get(0, 1))],
                vec![e.neg(a.get(1, 0)), a.get(0, 0).clone()],
            ])
            .unwrap();
            assert_eq!(preadjoint(&e, &a).unwrap(), expected);
            assert_eq!(preadjoint_via_minors(&e, &a).unwrap(), expected);
        }
    }

    #[test]
    fn identity_preadjoints() {
        let q = Rationals;
        assert_eq!(preadjoint(&q, &identity(&q, 2)).unwrap(), identity(&q, 2));
        assert_eq!(preadjoint(&q, &identity(&q, 3)).unwrap(), scalar_matrix(&q, 3, &int(2)));
        assert_eq!(preadjoint_via_minors(&q, &identity(&q, 3)).unwrap(), scalar_matrix(&q, 3, &int(2)));
    }

    #[test]
    fn evaluators_agree_over_grassmann() {
        let e = GrassmannAlgebra::new(4, Rationals);
        let ring = MatrixRing::new(e.clone(), 3);
        let mut rng = seeded(17);
        for _ in 0..10 {
            let a = ring.sample(&mut rng);
            assert_eq!(preadjoint(&e, &a).unwrap(), preadjoint_via_minors(&e, &a).unwrap());
            assert_eq!(sdet(&e, &a).unwrap(), sdet_by_pairs(&e, &a).unwrap());
        }
    }

    #[test]
    fn adjoint_sequences() {
        let q = Rationals;
        let i2 = identity(&q, 2);
        assert_eq!(right_adjoint_sequence(&q, &i2, 2).unwrap(), vec![i2.clone(), i2.clone()]);
        let d = diagonal(&q, &[int(3), int(5)]);
        let seq = right_adjoint_sequence(&q, &d, 2).unwrap();
        assert_eq!(seq[0], diagonal(&q, &[int(5), int(3)]));
        assert_eq!(seq[1], diagonal(&q, &[int(15), int(15)]));
        assert_eq!(left_adjoint_sequence(&q, &d, 1).unwrap(), vec![diagonal(&q, &[int(5), int(3)])]);
        assert_eq!(rdet(&q, &i2, 1).unwrap(), int(2));
    }

    #[test]
    fn determinant_relations_over_grassmann() {
        let e = GrassmannAlgebra::new(4, Rationals);
        let ring = MatrixRing::new(e.clone(), 2);
        let mut rng = seeded(23);
        for _ in 0..20 {
            let a = ring.sample(&mut rng);
            let s = sdet(&e, &a).unwrap();
            assert_eq!(rdet(&e, &a, 1).unwrap(), s);
            assert_eq!(ldet(&e, &a, 1).unwrap(), s);
            let star = preadjoint(&e, &a).unwrap();
            assert_eq!(trace(&e, &mat_mul(&e, &star, &a).unwrap()), s);
            let aa = mat_mul(&e, &a, &star).unwrap();
            assert_eq!(rdet(&e, &a, 2).unwrap(), rdet(&e, &aa, 1).unwrap());
            let a_a = mat_mul(&e, &star, &a).unwrap();
            assert_eq!(ldet(&e, &a, 2).unwrap(), ldet(&e, &a_a, 1).unwrap());
        }
    }

    #[test]
    fn char_poly_examples() {
        let q = Rationals;
        let zero = crate::matrix::zero_matrix(&q, 2);
        let p = char_poly(&q, &zero, 1, Side::Right).unwrap();
        assert_eq!(p.coefficients, vec![int(0), int(0), int(2)]);
        let a = qm(&[&[1, 2], &[3, 4]]);
        let p = char_poly(&q, &a, 1, Side::Right).unwrap();
        // 2 (x^2 - 5x - 2)
        assert_eq!(p.coefficients, vec![int(-4), int(-10), int(2)]);
        assert!(crate::matrix::is_zero_matrix(&q, &right_substitute(&q, &p, &a).unwrap()));
        let p2 = char_poly(&q, &a, 2, Side::Right).unwrap();
        assert_eq!(p2.coefficients.len(), 5);
        assert_eq!(p2.leading(), &int(2));
        assert_eq!(expected_leading(2, 2), BigInt::from(2));
        assert_eq!(expected_leading(3, 2), BigInt::from(48));
        assert_eq!(expected_leading(3, 1), BigInt::from(6));
    }

    #[test]
    fn identity_char_poly_annihilates() {
        let e = GrassmannAlgebra::new(4, Rationals);
        let i2 = identity(&e, 2);
        let p = char_poly(&e, &i2, 2, Side::Right).unwrap();
        assert!(crate::matrix::is_zero_matrix(&e, &right_substitute(&e, &p, &i2).unwrap()));
        let p = char_poly(&e, &i2, 2, Side::Left).unwrap();
        assert!(crate::matrix::is_zero_matrix(&e, &left_substitute(&e, &p, &i2).unwrap()));
    }

    #[test]
    fn corrupted_rule_differs() {
        let e = GrassmannAlgebra::new(2, Rationals);
        let a = crate::matrix::parse_matrix(&e, r#"[["1", "v1"], ["v2", "1"]]"#).unwrap();
        assert_ne!(AdjointRule::Corrupted.apply(&e, &a).unwrap(), AdjointRule::Direct.apply(&e, &a).unwrap());
        assert_eq!(AdjointRule::Minors.apply(&e, &a).unwrap(), AdjointRule::Direct.apply(&e, &a).unwrap());
    }
}

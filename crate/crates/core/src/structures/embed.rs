//! Embeddings of `R` and `R[w, delta]` into matrix algebras: the diagonal
//! map, its skew extension, Vandermonde conjugation and the extension of a
//! twisted homomorphism.

use num_rational::BigRational;

use crate::error::{AlgebraError, Result};
use crate::matrix::{diagonal, map_entries, mat_mul, scale_rational, MatrixRing, SquareMatrix};
use crate::poly::{Poly, PolyRing, SkewPolyRing};
use crate::ring::{Endo, Endomorphism, QAlgebra, Ring, UnitInverse};

fn require_order<R: Ring>(delta: &dyn Endomorphism<R>, n: usize) -> Result<()> {
    match delta.declared_order() {
        Some(d) if n % d == 0 => Ok(()),
        Some(d) => Err(AlgebraError::TheoremViolation(format!(
            "{} has order {d}, which does not divide {n}",
            delta.name()
        ))),
        None => Err(AlgebraError::UnknownOrder(delta.name())),
    }
}

/// `diag(r, delta(r), ..., delta^{n-1}(r))`.
pub fn embed_diagonal<R: Ring>(ring: &R, delta: &dyn Endomorphism<R>, n: usize, r: &R::Elem) -> SquareMatrix<R::Elem> {
    let mut diag = Vec::with_capacity(n);
    let mut current = r.clone();
    for k in 0..n {
        if k > 0 {
            current = delta.apply(ring, &current);
        }
        diag.push(current.clone());
    }
    diagonal(ring, &diag)
}

/// `sum_i diag_delta(r_i) H^i z^i` over `R[z]`, for `delta^n = id`.
pub fn embed_skew<R: Ring>(skew: &SkewPolyRing<R>, n: usize, f: &Poly<R::Elem>) -> Result<SquareMatrix<Poly<R::Elem>>> {
    require_order(skew.delta().as_ref(), n)?;
    let base = skew.base();
    let rz = PolyRing::new(base.clone(), "z");
    let mut entries: Vec<Vec<R::Elem>> = vec![Vec::new(); n * n];
    for (i, r) in f.coefficients().iter().enumerate() {
        if base.is_zero(r) {
            continue;
        }
        // diag(d_p) H^i has d_p = delta^p(r) at (p, p + i mod n)
        let mut d = r.clone();
        for p in 0..n {
            if p > 0 {
                d = skew.delta().apply(base, &d);
            }
            let slot = &mut entries[p * n + (p + i) % n];
            slot.resize(i + 1, base.zero());
            slot[i] = base.add(&slot[i], &d);
        }
    }
    SquareMatrix::new(n, entries.into_iter().map(|c| rz.from_coefficients(c)).collect())
}

/// `delta_n` on `M_n(R)`.
#[derive(Debug, Clone)]
pub struct EntrywiseEndomorphism<R: Ring> {
    inner: Endo<R>,
}

impl<R: Ring> EntrywiseEndomorphism<R> {
    pub fn new(inner: Endo<R>) -> Self {
        EntrywiseEndomorphism { inner }
    }
}

impl<R: Ring> Endomorphism<MatrixRing<R>> for EntrywiseEndomorphism<R> {
    fn name(&self) -> String {
        format!("{}_n", self.inner.name())
    }
    fn apply(&self, ring: &MatrixRing<R>, a: &SquareMatrix<R::Elem>) -> SquareMatrix<R::Elem> {
        map_entries(ring.base(), self.inner.as_ref(), a)
    }
    fn declared_order(&self) -> Option<usize> {
        self.inner.declared_order()
    }
}

impl<R: QAlgebra> QAlgebra for MatrixRing<R> {
    fn scale_rational(&self, q: &BigRational, a: &Self::Elem) -> Self::Elem {
        scale_rational(self.base(), q, a)
    }
}

impl<R: UnitInverse> UnitInverse for MatrixRing<R> {
    /// Only diagonal matrices with unit entries are recognized.
    fn try_inverse(&self, a: &Self::Elem) -> Option<Self::Elem> {
        let n = a.size();
        let base = self.base();
        let off_zero = (0..n).all(|i| (0..n).all(|j| i == j || base.is_zero(a.get(i, j))));
        if !off_zero {
            return None;
        }
        let inv: Option<Vec<_>> = (0..n).map(|i| base.try_inverse(a.get(i, i))).collect();
        Some(diagonal(base, &inv?))
    }
}

/// `V = [g_i^{-k}]` and its inverse `U = (1/n)[g_j^k]`, for a unit sequence
/// passing the power-sum conditions.
#[derive(Debug, Clone, PartialEq)]
pub struct Vandermonde<E> {
    pub g: Vec<E>,
    pub v: SquareMatrix<E>,
    pub u: SquareMatrix<E>,
}

impl<E: Clone> Vandermonde<E> {
    pub fn size(&self) -> usize {
        self.g.len()
    }

    /// `G = diag(g_i)` and `G^{-1}`.
    pub fn g_matrices<R: UnitInverse<Elem = E>>(&self, ring: &R) -> (SquareMatrix<E>, SquareMatrix<E>) {
        let inv: Vec<E> = self.g.iter().map(|x| ring.try_inverse(x).expect("checked unit")).collect();
        (diagonal(ring, &self.g), diagonal(ring, &inv))
    }
}

/// Build `V` and `U` after checking, for `1 <= k <= n-1` and `i != j`,
/// `sum_i g_i^k = sum_i g_i^{-k} = sum_k g_i^{-k} g_j^k = 0`.
pub fn vandermonde<R: QAlgebra + UnitInverse>(ring: &R, g: &[R::Elem]) -> Result<Vandermonde<R::Elem>> {
    let n = g.len();
    let inv = g
        .iter()
        .enumerate()
        .map(|(index, x)| ring.try_inverse(x).ok_or(AlgebraError::NonUnit { index }))
        .collect::<Result<Vec<_>>>()?;
    // pos[i][k] = g_i^k, neg[i][k] = g_i^{-k}, k = 0..=n
    let pos: Vec<Vec<R::Elem>> = g.iter().map(|x| (0..=n).map(|k| ring.pow(x, k)).collect()).collect();
    let neg: Vec<Vec<R::Elem>> = inv.iter().map(|x| (0..=n).map(|k| ring.pow(x, k)).collect()).collect();
    for k in 1..n {
        let s = ring.sum(pos.iter().map(|p| &p[k]));
        if !ring.is_zero(&s) {
            return Err(AlgebraError::PowerSum { condition: format!("sum g_i^{k}"), value: ring.format(&s) });
        }
        let s = ring.sum(neg.iter().map(|p| &p[k]));
        if !ring.is_zero(&s) {
            return Err(AlgebraError::PowerSum { condition: format!("sum g_i^-{k}"), value: ring.format(&s) });
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let s = (1..=n).fold(ring.zero(), |acc, k| ring.add(&acc, &ring.mul(&neg[i][k], &pos[j][k])));
            if !ring.is_zero(&s) {
                return Err(AlgebraError::PowerSum {
                    condition: format!("sum_k g_{}^-k g_{}^k", i + 1, j + 1),
                    value: ring.format(&s),
                });
            }
        }
    }
    let v = SquareMatrix::from_fn(n, |i, k| neg[i][k + 1].clone());
    let n_inv = BigRational::new(1.into(), (n as i64).into());
    let u = SquareMatrix::from_fn(n, |k, j| ring.scale_rational(&n_inv, &pos[j][k + 1]));
    Ok(Vandermonde { g: g.to_vec(), v, u })
}

/// `V diag_delta(r) V^{-1}`.
pub fn embed_vandermonde<R: Ring>(
    ring: &R,
    delta: &dyn Endomorphism<R>,
    vd: &Vandermonde<R::Elem>,
    r: &R::Elem,
) -> Result<SquareMatrix<R::Elem>> {
    let d = embed_diagonal(ring, delta, vd.size(), r);
    mat_mul(ring, &mat_mul(ring, &vd.v, &d)?, &vd.u)
}

/// Check `phi(delta(s)) = delta_n(phi(s))` on the samples.
pub fn check_intertwining<R: Ring>(
    ring: &R,
    delta: &dyn Endomorphism<R>,
    phi: &dyn Fn(&R::Elem) -> SquareMatrix<R::Elem>,
    samples: &[R::Elem],
) -> Result<()> {
    for s in samples {
        if phi(&delta.apply(ring, s)) != map_entries(ring, delta, &phi(s)) {
            return Err(AlgebraError::Intertwining { sample: ring.format(s) });
        }
    }
    Ok(())
}

/// `Phi(sum r_i w^i) = sum phi(r_i) W^i z^i` over `R[z]`.
pub fn extend_hom_phi<R: Ring>(
    ring: &R,
    phi: &dyn Fn(&R::Elem) -> SquareMatrix<R::Elem>,
    w: &SquareMatrix<R::Elem>,
    f: &Poly<R::Elem>,
) -> Result<SquareMatrix<Poly<R::Elem>>> {
    let n = w.size();
    let rz = PolyRing::new(ring.clone(), "z");
    let mut acc = crate::matrix::zero_matrix(&rz, n);
    let mut w_pow = crate::matrix::identity(ring, n);
    for (i, r) in f.coefficients().iter().enumerate() {
        if i > 0 {
            w_pow = mat_mul(ring, &w_pow, w)?;
        }
        if ring.is_zero(r) {
            continue;
        }
        let term = mat_mul(ring, &phi(r), &w_pow)?;
        let lifted = term.map(|x| rz.monomial(x.clone(), i));
        acc = crate::matrix::mat_add(&rz, &acc, &lifted)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grassmann::GrassmannAlgebra;
    use crate::matrix::{cyclic_h, identity, p_matrix};
    use crate::ring::rational::int;
    use crate::ring::{CyclotomicField, ParseElement, Rationals};
    use crate::rng::seeded;
    use crate::structures::{membership_delta_w, DeltaWAlgebra};

    #[test]
    fn diagonal_embedding() {
        let e = GrassmannAlgebra::new(4, Rationals);
        let eps = e.epsilon_endomorphism();
        let d = embed_diagonal(&e, eps.as_ref(), 2, &e.generator(1));
        assert_eq!(d, diagonal(&e, &[e.generator(1), e.neg(&e.generator(1))]));
        let (h, h_inv) = cyclic_h(&e, 2);
        let alg = DeltaWAlgebra::new(e.clone(), eps.clone(), h, h_inv).unwrap();
        let mut rng = seeded(1);
        for _ in 0..20 {
            let r = e.sample(&mut rng);
            let s = e.sample(&mut rng);
            let dr = embed_diagonal(&e, eps.as_ref(), 2, &r);
            assert!(membership_delta_w(&alg, &dr));
            let prod = mat_mul(&e, &dr, &embed_diagonal(&e, eps.as_ref(), 2, &s)).unwrap();
            assert_eq!(embed_diagonal(&e, eps.as_ref(), 2, &e.mul(&r, &s)), prod);
        }
    }

    #[test]
    fn skew_embedding() {
        let e = GrassmannAlgebra::new(4, Rationals);
        let skew = SkewPolyRing::new(e.clone(), e.epsilon_endomorphism(), "w");
        let rz = PolyRing::new(e.clone(), "z");
        let w = embed_skew(&skew, 2, &skew.indeterminate()).unwrap();
        let z = rz.indeterminate();
        assert_eq!(w.rows(), vec![vec![rz.zero(), z.clone()], vec![z.clone(), rz.zero()]]);
        let w2 = embed_skew(&skew, 2, &skew.monomial(e.one(), 2)).unwrap();
        assert_eq!(w2, crate::matrix::scalar_matrix(&rz, 2, &rz.mul(&z, &z)));
        let mut rng = seeded(7);
        for _ in 0..20 {
            let f = skew.monomial(e.sample(&mut rng), rand::Rng::gen_range(&mut rng, 0..3));
            let g = skew.monomial(e.sample(&mut rng), rand::Rng::gen_range(&mut rng, 0..3));
            let lhs = embed_skew(&skew, 2, &skew.mul(&f, &g)).unwrap();
            let rhs = mat_mul(&rz, &embed_skew(&skew, 2, &f).unwrap(), &embed_skew(&skew, 2, &g).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
        assert!(embed_skew(&skew, 3, &skew.one()).is_err());
    }

    #[test]
    fn vandermonde_two_by_two() {
        let e = GrassmannAlgebra::new(4, Rationals);
        let vd = vandermonde(&e, &[e.one(), e.neg(&e.one())]).unwrap();
        let r = e.parse("1 + v1*v2 + v3 - 2*v1*v2*v4").unwrap();
        let (r0, r1) = e.parity_split(&r);
        let out = embed_vandermonde(&e, e.epsilon_endomorphism().as_ref(), &vd, &r).unwrap();
        assert_eq!(out.rows(), vec![vec![r0.clone(), e.neg(&r1)], vec![e.neg(&r1), r0]]);
    }

    #[test]
    fn vandermonde_inverse_for_roots_of_unity() {
        for n in 2..=4 {
            let k = CyclotomicField::new(n);
            let g: Vec<_> = (0..n).map(|i| k.root_pow(i as i64)).collect();
            let vd = vandermonde(&k, &g).unwrap();
            assert_eq!(mat_mul(&k, &vd.v, &vd.u).unwrap(), identity(&k, n));
            assert_eq!(mat_mul(&k, &vd.u, &vd.v).unwrap(), identity(&k, n));
        }
        let q = Rationals;
        assert!(matches!(vandermonde(&q, &[int(1), int(2)]), Err(AlgebraError::PowerSum { .. })));
    }

    #[test]
    fn vandermonde_lands_in_p_algebra() {
        let k = CyclotomicField::new(3);
        let e = GrassmannAlgebra::new(4, k.clone());
        let root = k.root();
        let rho = e.rho_endomorphism(&root, 3);
        let g: Vec<_> = (0..3).map(|i| e.scalar(k.root_pow(i))).collect();
        let vd = vandermonde(&e, &g).unwrap();
        let t = p_matrix(&e, &e.scalar(root), 3).unwrap();
        let alg = DeltaWAlgebra::from_transitive(e.clone(), rho.clone(), &t).unwrap();
        let mut rng = seeded(3);
        for _ in 0..10 {
            let r = e.sample(&mut rng);
            let s = e.sample(&mut rng);
            let er = embed_vandermonde(&e, rho.as_ref(), &vd, &r).unwrap();
            assert!(membership_delta_w(&alg, &er));
            // x_ij = sum_k g_i^{-k} delta^{k-1}(r) g_j^k, scaled by 1/n
            for i in 0..3 {
                for j in 0..3 {
                    let mut x = e.zero();
                    for kk in 1..=3i64 {
                        let d = rho.apply_times(&e, &r, (kk - 1) as usize);
                        let term = e.mul(&e.mul(&e.scalar(k.root_pow(-(i as i64) * kk)), &d), &e.scalar(k.root_pow(j as i64 * kk)));
                        x = e.add(&x, &term);
                    }
                    let x = e.scale_rational(&BigRational::new(1.into(), 3.into()), &x);
                    assert_eq!(er.get(i, j), &x);
                }
            }
            let es = embed_vandermonde(&e, rho.as_ref(), &vd, &s).unwrap();
            assert_eq!(embed_vandermonde(&e, rho.as_ref(), &vd, &e.mul(&r, &s)).unwrap(), mat_mul(&e, &er, &es).unwrap());
        }
    }

    #[test]
    fn phi_extension() {
        let e = GrassmannAlgebra::new(4, Rationals);
        let eps = e.epsilon_endomorphism();
        let skew = SkewPolyRing::new(e.clone(), eps.clone(), "w");
        let rz = PolyRing::new(e.clone(), "z");
        let (h, _) = cyclic_h(&e, 2);
        let phi = |r: &crate::grassmann::GrassmannElement<BigRational>| embed_diagonal(&e, eps.as_ref(), 2, r);
        let mut rng = seeded(9);
        let samples: Vec<_> = (0..10).map(|_| e.sample(&mut rng)).collect();
        check_intertwining(&e, eps.as_ref(), &phi, &samples).unwrap();
        for _ in 0..10 {
            let f = skew.sample(&mut rng);
            assert_eq!(extend_hom_phi(&e, &phi, &h, &f).unwrap(), embed_skew(&skew, 2, &f).unwrap());
            let r = skew.constant(e.sample(&mut rng));
            let w = skew.indeterminate();
            let lhs = extend_hom_phi(&e, &phi, &h, &skew.mul(&w, &r)).unwrap();
            let rhs = mat_mul(&rz, &extend_hom_phi(&e, &phi, &h, &w).unwrap(), &extend_hom_phi(&e, &phi, &h, &r).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
        assert_eq!(extend_hom_phi(&e, &phi, &h, &skew.one()).unwrap(), crate::matrix::identity(&rz, 2));
        let v1 = e.generator(1);
        let bad = |r: &crate::grassmann::GrassmannElement<BigRational>| crate::matrix::scalar_matrix(&e, 2, &e.mul(r, &v1));
        assert!(check_intertwining(&e, eps.as_ref(), &bad, &samples).is_err());
    }
}

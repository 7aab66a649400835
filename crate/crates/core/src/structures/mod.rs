//! Twisted matrix algebras `M_n(R, delta, W, W^{-1})`, graded matrix
//! algebras, embeddings into them, standard polynomials and integrality
//! witnesses.

use crate::det::{permutations, sign};
use crate::error::{AlgebraError, Result};
use crate::matrix::{
    check_central_entries, diagonal, format_matrix, identity, map_entries, mat_mul, trace, SquareMatrix,
    TransitiveMatrix,
};
use crate::ring::{fix_membership, Endo, Ring};
use crate::rng::TrialRng;

pub mod embed;
pub mod grading;
pub mod shapes;
pub mod witness;

pub use embed::{
    embed_diagonal, embed_skew, embed_vandermonde, extend_hom_phi, check_intertwining, vandermonde,
    EntrywiseEndomorphism, Vandermonde,
};
pub use grading::{
    check_grading, embed_gamma, graded_matrix_membership, sample_graded_matrix, DegreeResidueGrading, Grading, ZPowerGrading,
};
pub use witness::{
    graded_integrality_witness, integrality_witness, skew_integrality_witness, Witness,
    WitnessOptions, WitnessRecord,
};

/// `M_n(R, delta, W, W^{-1})`, the matrices with `delta_n(A) = W A W^{-1}`.
#[derive(Debug, Clone)]
pub struct DeltaWAlgebra<R: Ring> {
    base: R,
    delta: Endo<R>,
    w: SquareMatrix<R::Elem>,
    w_inv: SquareMatrix<R::Elem>,
}

impl<R: Ring> DeltaWAlgebra<R> {
    /// Fails unless `W W^{-1} = W^{-1} W = I` exactly.
    pub fn new(base: R, delta: Endo<R>, w: SquareMatrix<R::Elem>, w_inv: SquareMatrix<R::Elem>) -> Result<Self> {
        let id = identity(&base, w.size());
        if mat_mul(&base, &w, &w_inv)? != id || mat_mul(&base, &w_inv, &w)? != id {
            return Err(AlgebraError::NotInverse(format!(
                "{} and {}",
                format_matrix(&base, &w),
                format_matrix(&base, &w_inv)
            )));
        }
        Ok(DeltaWAlgebra { base, delta, w, w_inv })
    }

    /// `M_n(R, delta, T)` through `D = diag(t_{i,1})`, `D^{-1} = diag(t_{1,i})`.
    pub fn from_transitive(base: R, delta: Endo<R>, t: &TransitiveMatrix<R::Elem>) -> Result<Self> {
        let n = t.size();
        let d = diagonal(&base, &(0..n).map(|i| t.matrix().get(i, 0).clone()).collect::<Vec<_>>());
        let d_inv = diagonal(&base, &(0..n).map(|i| t.matrix().get(0, i).clone()).collect::<Vec<_>>());
        Self::new(base, delta, d, d_inv)
    }

    pub fn base(&self) -> &R {
        &self.base
    }

    pub fn delta(&self) -> &Endo<R> {
        &self.delta
    }

    pub fn w(&self) -> &SquareMatrix<R::Elem> {
        &self.w
    }

    pub fn w_inv(&self) -> &SquareMatrix<R::Elem> {
        &self.w_inv
    }

    pub fn size(&self) -> usize {
        self.w.size()
    }

    /// Whether the entries of `W` and `W^{-1}` commute with the generators and samples.
    pub fn entries_central(&self, samples: &[R::Elem]) -> bool {
        check_central_entries(&self.base, &self.w, samples).is_ok()
            && check_central_entries(&self.base, &self.w_inv, samples).is_ok()
    }

    /// Whether `delta_n(W) = W`.
    pub fn w_fixed(&self) -> bool {
        map_entries(&self.base, self.delta.as_ref(), &self.w) == self.w
    }

    /// `delta_n(A) - W A W^{-1}`.
    pub fn defect(&self, a: &SquareMatrix<R::Elem>) -> Result<SquareMatrix<R::Elem>> {
        let lhs = map_entries(&self.base, self.delta.as_ref(), a);
        let rhs = mat_mul(&self.base, &mat_mul(&self.base, &self.w, a)?, &self.w_inv)?;
        crate::matrix::mat_sub(&self.base, &lhs, &rhs)
    }
}

/// Exact test of `delta_n(A) = W A W^{-1}`.
pub fn membership_delta_w<R: Ring>(alg: &DeltaWAlgebra<R>, a: &SquareMatrix<R::Elem>) -> bool {
    alg.defect(a).is_ok_and(|d| crate::matrix::is_zero_matrix(&alg.base, &d))
}

/// Entrywise test of `delta(a_ij) = t_ij a_ij`.
pub fn membership_delta_t<R: Ring>(
    ring: &R,
    t: &TransitiveMatrix<R::Elem>,
    delta: &Endo<R>,
    a: &SquareMatrix<R::Elem>,
) -> bool {
    let n = a.size();
    n == t.size()
        && (0..n).all(|i| {
            (0..n).all(|j| ring.eq(&delta.apply(ring, a.get(i, j)), &ring.mul(t.matrix().get(i, j), a.get(i, j))))
        })
}

/// `delta(tr A) = tr A`.
pub fn trace_fix_check<R: Ring>(alg: &DeltaWAlgebra<R>, a: &SquareMatrix<R::Elem>) -> bool {
    fix_membership(&alg.base, alg.delta.as_ref(), &trace(&alg.base, a))
}

/// `S_m(x_1, ..., x_m) = sum_pi sgn(pi) x_{pi(1)} ... x_{pi(m)}`.
pub fn standard_poly<R: Ring>(ring: &R, m: usize, args: &[R::Elem]) -> Result<R::Elem> {
    if args.len() != m {
        return Err(AlgebraError::Arity { expected: m, got: args.len() });
    }
    if m > 6 {
        return Err(AlgebraError::Envelope(format!("arity {m} exceeds 6 ({} terms)", crate::det::factorial(m))));
    }
    let mut acc = ring.zero();
    for p in permutations(m) {
        let term = ring.product(p.iter().map(|&i| &args[i]));
        acc = if sign(&p) > 0 { ring.add(&acc, &term) } else { ring.sub(&acc, &term) };
    }
    Ok(acc)
}

/// Draw a unit of `ring` by rejection sampling.
pub fn sample_unit<R: crate::ring::UnitInverse>(ring: &R, rng: &mut TrialRng) -> R::Elem {
    loop {
        let x = ring.sample(rng);
        if ring.try_inverse(&x).is_some() {
            return x;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grassmann::GrassmannAlgebra;
    use crate::matrix::{p_matrix, transitive_from_units, MatrixRing};
    use crate::poly::{rational_line_with_reflection, SkewPolyRing};
    use crate::ring::rational::int;
    use crate::ring::{CyclotomicField, Rationals};
    use crate::rng::seeded;

    #[test]
    fn supermatrix_membership() {
        let e = GrassmannAlgebra::new(4, Rationals);
        let p = transitive_from_units(&e, &[e.one(), e.neg(&e.one())]).unwrap();
        let alg = DeltaWAlgebra::from_transitive(e.clone(), e.epsilon_endomorphism(), &p).unwrap();
        let a = crate::matrix::parse_matrix(&e, r#"[["1 + v1*v2", "v3"], ["v1 - v2*v3*v4", "v2*v4"]]"#).unwrap();
        assert!(membership_delta_w(&alg, &a));
        let bad = crate::matrix::parse_matrix(&e, r#"[["v1", "0"], ["0", "0"]]"#).unwrap();
        assert!(!membership_delta_w(&alg, &bad));
        assert!(membership_delta_w(&alg, &identity(&e, 2)));
        assert!(alg.entries_central(&[]));
        assert!(alg.w_fixed());
        assert!(trace_fix_check(&alg, &a));
    }

    #[test]
    fn wrong_inverse_rejected() {
        let q = Rationals;
        let w = diagonal(&q, &[int(1), int(2)]);
        let id: Endo<Rationals> = std::sync::Arc::new(crate::ring::IdentityEndomorphism);
        assert!(matches!(DeltaWAlgebra::new(q, id, w.clone(), w), Err(AlgebraError::NotInverse(_))));
    }

    #[test]
    fn delta_t_agrees_with_delta_w() {
        let k = CyclotomicField::new(3);
        let e = GrassmannAlgebra::new(4, k.clone());
        let root = k.root();
        let t = p_matrix(&e, &e.scalar(root.clone()), 3).unwrap();
        let rho = e.rho_endomorphism(&root, 3);
        let alg = DeltaWAlgebra::from_transitive(e.clone(), rho.clone(), &t).unwrap();
        let ring = MatrixRing::new(e.clone(), 3);
        let mut rng = seeded(4);
        for _ in 0..20 {
            let a = ring.sample(&mut rng);
            assert_eq!(membership_delta_t(&e, &t, &rho, &a), membership_delta_w(&alg, &a));
            let member = shapes::rho_e_member(&e, 3, &mut rng);
            assert!(membership_delta_t(&e, &t, &rho, &member));
            assert!(membership_delta_w(&alg, &member));
        }
        assert!(membership_delta_t(&e, &t, &rho, &identity(&e, 3)));
    }

    #[test]
    fn standard_polynomials() {
        let q = Rationals;
        let m2 = MatrixRing::new(q, 2);
        let mut rng = seeded(12);
        let a = m2.sample(&mut rng);
        let b = m2.sample(&mut rng);
        let s2 = standard_poly(&m2, 2, &[a.clone(), b.clone()]).unwrap();
        assert_eq!(s2, m2.sub(&m2.mul(&a, &b), &m2.mul(&b, &a)));
        for _ in 0..5 {
            let xs: Vec<_> = (0..4).map(|_| m2.sample(&mut rng)).collect();
            assert!(m2.is_zero(&standard_poly(&m2, 4, &xs).unwrap()));
        }
        let (qy, delta) = rational_line_with_reflection();
        let skew = SkewPolyRing::new(qy, delta, "w");
        for _ in 0..5 {
            let xs: Vec<_> = (0..4).map(|_| skew.sample(&mut rng)).collect();
            assert!(skew.is_zero(&standard_poly(&skew, 4, &xs).unwrap()));
        }
        assert!(matches!(standard_poly(&q, 3, &[int(1)]), Err(AlgebraError::Arity { expected: 3, got: 1 })));
    }
}

//! `Z_n`-gradings `R = R_0 + ... + R_{n-1}` and graded matrices
//! (`a_ij` in `R_{j - i mod n}`).

use std::fmt::Debug;

use rand::Rng as _;

use crate::grassmann::GrassmannAlgebra;
use crate::matrix::SquareMatrix;
use crate::poly::PolyRing;
use crate::ring::{Ring, ScalarField};
use crate::rng::TrialRng;

pub trait Grading<R: Ring>: Debug + Send + Sync {
    fn modulus(&self) -> usize;

    /// The projections `(r_0, ..., r_{n-1})`; they sum to `r`.
    fn components(&self, ring: &R, r: &R::Elem) -> Vec<R::Elem>;

    /// A random element of `R_i`.
    fn sample_component(&self, ring: &R, rng: &mut TrialRng, i: usize) -> R::Elem;

    fn in_component(&self, ring: &R, r: &R::Elem, i: usize) -> bool {
        self.components(ring, r).iter().enumerate().all(|(j, c)| j == i || ring.is_zero(c))
    }
}

/// Grassmann degree modulo `n`; `n = 2` is the even/odd split.
#[derive(Debug, Clone, Copy)]
pub struct DegreeResidueGrading {
    pub n: usize,
}

impl<K: ScalarField> Grading<GrassmannAlgebra<K>> for DegreeResidueGrading {
    fn modulus(&self) -> usize {
        self.n
    }
    fn components(&self, ring: &GrassmannAlgebra<K>, r: &<GrassmannAlgebra<K> as Ring>::Elem) -> Vec<<GrassmannAlgebra<K> as Ring>::Elem> {
        ring.degree_residue_components(r, self.n)
    }
    fn sample_component(&self, ring: &GrassmannAlgebra<K>, rng: &mut TrialRng, i: usize) -> <GrassmannAlgebra<K> as Ring>::Elem {
        let n = self.n;
        ring.sample_filtered(rng, |d| d % n == i)
    }
}

/// `R[z] = R[z^n] + z R[z^n] + ... + z^{n-1} R[z^n]`.
#[derive(Debug, Clone, Copy)]
pub struct ZPowerGrading {
    pub n: usize,
}

impl<R: Ring> Grading<PolyRing<R>> for ZPowerGrading {
    fn modulus(&self) -> usize {
        self.n
    }
    fn components(&self, ring: &PolyRing<R>, r: &<PolyRing<R> as Ring>::Elem) -> Vec<<PolyRing<R> as Ring>::Elem> {
        ring.z_power_grading(r, self.n)
    }
    fn sample_component(&self, ring: &PolyRing<R>, rng: &mut TrialRng, i: usize) -> <PolyRing<R> as Ring>::Elem {
        let terms = rng.gen_range(1..=2);
        let mut acc = ring.zero();
        for _ in 0..terms {
            let power = i + self.n * rng.gen_range(0..=1);
            acc = ring.add(&acc, &ring.monomial(ring.base().sample(rng), power));
        }
        acc
    }
}

/// `a_ij` in `R_{j - i mod n}` for every entry.
pub fn graded_matrix_membership<R: Ring>(ring: &R, grading: &dyn Grading<R>, a: &SquareMatrix<R::Elem>) -> bool {
    let n = grading.modulus();
    a.size() == n
        && (0..n).all(|i| (0..n).all(|j| grading.in_component(ring, a.get(i, j), (j + n - i) % n)))
}

/// `gamma(r) = sum_i r_i H^i`, i.e. entry `(i, j)` is `r_{j - i mod n}`.
pub fn embed_gamma<R: Ring>(ring: &R, grading: &dyn Grading<R>, r: &R::Elem) -> SquareMatrix<R::Elem> {
    let n = grading.modulus();
    let parts = grading.components(ring, r);
    SquareMatrix::from_fn(n, |i, j| parts[(j + n - i) % n].clone())
}

/// A random graded matrix built entry by entry from homogeneous samples.
pub fn sample_graded_matrix<R: Ring>(ring: &R, grading: &dyn Grading<R>, rng: &mut TrialRng) -> SquareMatrix<R::Elem> {
    let n = grading.modulus();
    SquareMatrix::from_fn(n, |i, j| grading.sample_component(ring, rng, (j + n - i) % n))
}

/// Check the grading laws on random elements: projections sum back and are
/// idempotent, `1` lies in `R_0`, and `R_i R_j` lies in `R_{i+j}`.
pub fn check_grading<R: Ring>(ring: &R, grading: &dyn Grading<R>, rng: &mut TrialRng, trials: usize) -> Result<(), String> {
    let n = grading.modulus();
    if !grading.in_component(ring, &ring.one(), 0) {
        return Err("1 is not in R_0".into());
    }
    for _ in 0..trials {
        let r = ring.sample(rng);
        let parts = grading.components(ring, &r);
        if ring.sum(parts.iter()) != r {
            return Err(format!("components of {} do not sum back", ring.format(&r)));
        }
        for (i, p) in parts.iter().enumerate() {
            if grading.components(ring, p)[i] != *p {
                return Err(format!("projection {i} of {} is not idempotent", ring.format(&r)));
            }
        }
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        let a = grading.sample_component(ring, rng, i);
        let b = grading.sample_component(ring, rng, j);
        if !grading.in_component(ring, &ring.mul(&a, &b), (i + j) % n) {
            return Err(format!("{} * {} leaves R_{}", ring.format(&a), ring.format(&b), (i + j) % n));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{identity, mat_mul};
    use crate::ring::{ParseElement, Rationals};
    use crate::rng::seeded;

    #[test]
    fn grading_laws() {
        let e = GrassmannAlgebra::new(4, Rationals);
        for n in 1..=4 {
            check_grading(&e, &DegreeResidueGrading { n }, &mut seeded(n as u64), 50).unwrap();
        }
        let ez = PolyRing::new(e, "z");
        check_grading(&ez, &ZPowerGrading { n: 3 }, &mut seeded(5), 50).unwrap();
    }

    #[test]
    fn gamma_examples() {
        let e = GrassmannAlgebra::new(4, Rationals);
        let g = DegreeResidueGrading { n: 2 };
        let r = e.parse("1 + v1 + v1*v2").unwrap();
        let (r0, r1) = e.parity_split(&r);
        let m = embed_gamma(&e, &g, &r);
        assert_eq!(m.rows(), vec![vec![r0.clone(), r1.clone()], vec![r1, r0]]);
        assert_eq!(embed_gamma(&e, &g, &e.one()), identity(&e, 2));
        assert!(graded_matrix_membership(&e, &g, &m));
        assert!(graded_matrix_membership(&e, &g, &identity(&e, 2)));
        let bad = crate::matrix::parse_matrix(&e, r#"[["v1", "0"], ["0", "0"]]"#).unwrap();
        assert!(!graded_matrix_membership(&e, &g, &bad));
        let mut rng = seeded(8);
        for _ in 0..30 {
            let a = e.sample(&mut rng);
            let b = e.sample(&mut rng);
            let lhs = embed_gamma(&e, &g, &e.mul(&a, &b));
            let rhs = mat_mul(&e, &embed_gamma(&e, &g, &a), &embed_gamma(&e, &g, &b)).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn graded_matrices_form_a_ring() {
        let e = GrassmannAlgebra::new(4, Rationals);
        let ez = PolyRing::new(e, "z");
        let g = ZPowerGrading { n: 3 };
        let mut rng = seeded(2);
        for _ in 0..10 {
            let a = sample_graded_matrix(&ez, &g, &mut rng);
            let b = sample_graded_matrix(&ez, &g, &mut rng);
            assert!(graded_matrix_membership(&ez, &g, &a));
            assert!(graded_matrix_membership(&ez, &g, &mat_mul(&ez, &a, &b).unwrap()));
        }
    }
}

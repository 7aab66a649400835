//! Transitive matrices (`t_ii = 1`, `t_ij t_jk = t_ik`), their unit
//! sequences, blow-ups, Hadamard conjugation and the cyclic shift `H`.

use crate::error::{AlgebraError, Result};
use crate::ring::{lie::commutator, Ring, UnitInverse};

use super::{diagonal, hadamard, identity, mat_mul, SquareMatrix};

/// Exhaustive check over all `n^3` triples.
pub fn is_transitive<R: Ring>(ring: &R, t: &SquareMatrix<R::Elem>) -> bool {
    let n = t.size();
    (0..n).all(|i| ring.is_one(t.get(i, i)))
        && (0..n).all(|i| {
            (0..n).all(|j| (0..n).all(|k| ring.eq(&ring.mul(t.get(i, j), t.get(j, k)), t.get(i, k))))
        })
}

/// A matrix certified transitive, with the unit sequence that produced it
/// when one is known.
#[derive(Debug, Clone, PartialEq)]
pub struct TransitiveMatrix<E> {
    matrix: SquareMatrix<E>,
    units: Option<Vec<E>>,
}

impl<E: Clone> TransitiveMatrix<E> {
    pub fn certify<R: Ring<Elem = E>>(ring: &R, matrix: SquareMatrix<E>) -> Result<Self> {
        if !is_transitive(ring, &matrix) {
            return Err(AlgebraError::NotTransitive(super::format_matrix(ring, &matrix)));
        }
        Ok(TransitiveMatrix { matrix, units: None })
    }

    pub fn matrix(&self) -> &SquareMatrix<E> {
        &self.matrix
    }

    pub fn units(&self) -> Option<&[E]> {
        self.units.as_deref()
    }

    pub fn size(&self) -> usize {
        self.matrix.size()
    }
}

/// `t_ij = g_i g_j^{-1}`.
pub fn transitive_from_units<R: UnitInverse>(ring: &R, g: &[R::Elem]) -> Result<TransitiveMatrix<R::Elem>> {
    let inverses = g
        .iter()
        .enumerate()
        .map(|(index, x)| ring.try_inverse(x).ok_or(AlgebraError::NonUnit { index }))
        .collect::<Result<Vec<_>>>()?;
    let matrix = SquareMatrix::from_fn(g.len(), |i, j| ring.mul(&g[i], &inverses[j]));
    debug_assert!(is_transitive(ring, &matrix));
    Ok(TransitiveMatrix { matrix, units: Some(g.to_vec()) })
}

/// The first column `g_i = t_{i,1}`, which regenerates `T`.
pub fn units_from_transitive<E: Clone>(t: &TransitiveMatrix<E>) -> Vec<E> {
    (0..t.size()).map(|i| t.matrix.get(i, 0).clone()).collect()
}

/// The unit `c` with `h_i = g_i c` for every `i`, if there is one.
pub fn unit_constant<R: UnitInverse>(ring: &R, g: &[R::Elem], h: &[R::Elem]) -> Option<R::Elem> {
    if g.len() != h.len() || g.is_empty() {
        return None;
    }
    let c = ring.mul(&ring.try_inverse(&g[0])?, &h[0]);
    g.iter().zip(h).all(|(x, y)| ring.eq(&ring.mul(x, &c), y)).then_some(c)
}

/// `[t_ij^{-1}] = [t_ji]`, the transitive matrix inverting `Theta_T`.
pub fn entrywise_inverse<E: Clone>(t: &TransitiveMatrix<E>) -> TransitiveMatrix<E> {
    let n = t.size();
    TransitiveMatrix {
        matrix: SquareMatrix::from_fn(n, |i, j| t.matrix.get(j, i).clone()),
        units: None,
    }
}

/// Blow-up along cuts `d_1 < ... < d_n = m` (with `d_0 = 0` implied): entry
/// `(p, q)` copies `t_ij` where `p` lies in block `i` and `q` in block `j`.
pub fn blow_up<R: Ring>(ring: &R, t: &TransitiveMatrix<R::Elem>, cuts: &[usize]) -> Result<TransitiveMatrix<R::Elem>> {
    let n = t.size();
    if cuts.len() != n {
        return Err(AlgebraError::InvalidCuts(format!("expected {} cuts, got {}", n, cuts.len())));
    }
    let mut prev = 0;
    for &d in cuts {
        if d <= prev {
            return Err(AlgebraError::InvalidCuts(format!("{:?} is not strictly increasing from 0", cuts)));
        }
        prev = d;
    }
    let m = prev;
    let block = |p: usize| cuts.iter().position(|&d| p < d).expect("p below m");
    let matrix = SquareMatrix::from_fn(m, |p, q| t.matrix.get(block(p), block(q)).clone());
    let units = t.units.as_ref().map(|g| (0..m).map(|p| g[block(p)].clone()).collect());
    let out = TransitiveMatrix { matrix, units };
    debug_assert!(is_transitive(ring, &out.matrix));
    Ok(out)
}

/// Check that every entry of `t` commutes with the ring generators and with
/// the supplied samples.
pub fn check_central_entries<R: Ring>(ring: &R, t: &SquareMatrix<R::Elem>, samples: &[R::Elem]) -> Result<()> {
    let witnesses: Vec<R::Elem> = ring.generators().into_iter().chain(samples.iter().cloned()).collect();
    let n = t.size();
    for i in 0..n {
        for j in 0..n {
            for w in &witnesses {
                if !ring.is_zero(&commutator(ring, t.get(i, j), w)?) {
                    return Err(AlgebraError::NonCentral { row: i + 1, col: j + 1, witness: ring.format(w) });
                }
            }
        }
    }
    Ok(())
}

/// `Theta_T(A) = T * A`, after a sampled centrality check on `T`.
pub fn theta<R: Ring>(ring: &R, t: &TransitiveMatrix<R::Elem>, a: &SquareMatrix<R::Elem>) -> Result<SquareMatrix<R::Elem>> {
    check_central_entries(ring, &t.matrix, &[])?;
    hadamard(ring, &t.matrix, a)
}

/// `D A D^{-1}` with `D = diag(t_{i,1})` and `D^{-1} = diag(t_{1,i})`.
pub fn theta_conjugation<R: Ring>(ring: &R, t: &TransitiveMatrix<R::Elem>, a: &SquareMatrix<R::Elem>) -> Result<SquareMatrix<R::Elem>> {
    let n = t.size();
    let d = diagonal(ring, &(0..n).map(|i| t.matrix.get(i, 0).clone()).collect::<Vec<_>>());
    let d_inv = diagonal(ring, &(0..n).map(|i| t.matrix.get(0, i).clone()).collect::<Vec<_>>());
    mat_mul(ring, &mat_mul(ring, &d, a)?, &d_inv)
}

/// The all-ones matrix `H_n`, the unit for the Hadamard product.
pub fn hadamard_identity<R: Ring>(ring: &R, n: usize) -> SquareMatrix<R::Elem> {
    SquareMatrix::from_fn(n, |_, _| ring.one())
}

/// `P^(u)` with `p_ij = u^{i-j}`, from the units `u^0, ..., u^{n-1}`.
pub fn p_matrix<R: UnitInverse>(ring: &R, u: &R::Elem, n: usize) -> Result<TransitiveMatrix<R::Elem>> {
    let g: Vec<_> = (0..n).map(|i| ring.pow(u, i)).collect();
    transitive_from_units(ring, &g)
}

/// `H = sum E_{i,i+1}` (indices mod n) and its inverse `sum E_{j,j-1}`.
pub fn cyclic_h<R: Ring>(ring: &R, n: usize) -> (SquareMatrix<R::Elem>, SquareMatrix<R::Elem>) {
    let h = SquareMatrix::from_fn(n, |i, j| if j == (i + 1) % n { ring.one() } else { ring.zero() });
    let h_inv = SquareMatrix::from_fn(n, |i, j| if (j + 1) % n == i { ring.one() } else { ring.zero() });
    debug_assert_eq!(mat_mul(ring, &h, &h_inv).ok(), Some(identity(ring, n)));
    (h, h_inv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grassmann::GrassmannAlgebra;
    use crate::matrix::{mat_pow, MatrixRing};
    use crate::ring::rational::{int, sample_nonzero_rational};
    use crate::ring::{CyclotomicField, Rationals};
    use crate::rng::seeded;

    #[test]
    fn transitivity_examples() {
        let q = Rationals;
        let p = SquareMatrix::from_rows(vec![vec![int(1), int(-1)], vec![int(-1), int(1)]]).unwrap();
        assert!(is_transitive(&q, &p));
        let bad = SquareMatrix::from_rows(vec![vec![int(1), int(1)], vec![int(0), int(1)]]).unwrap();
        assert!(!is_transitive(&q, &bad));
        assert!(TransitiveMatrix::certify(&q, bad).is_err());
        assert!(is_transitive(&q, &hadamard_identity(&q, 4)));
    }

    #[test]
    fn from_units() {
        let q = Rationals;
        let t = transitive_from_units(&q, &[int(1), int(-1)]).unwrap();
        assert_eq!(t.matrix().rows(), vec![vec![int(1), int(-1)], vec![int(-1), int(1)]]);
        assert_eq!(transitive_from_units(&q, &vec![int(1); 3]).unwrap().matrix(), &hadamard_identity(&q, 3));
        assert_eq!(transitive_from_units(&q, &[int(1), int(0)]).unwrap_err(), AlgebraError::NonUnit { index: 1 });

        let k = CyclotomicField::new(3);
        let e = k.root();
        let p = p_matrix(&k, &e, 3).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(p.matrix().get(i, j), &k.root_pow(i as i64 - j as i64));
            }
        }
        assert!(is_transitive(&k, p.matrix()));
    }

    #[test]
    fn units_round_trip_up_to_constant() {
        let q = Rationals;
        let mut rng = seeded(5);
        for _ in 0..20 {
            let g: Vec<_> = (0..4).map(|_| sample_nonzero_rational(&mut rng)).collect();
            let t = transitive_from_units(&q, &g).unwrap();
            let h = units_from_transitive(&t);
            assert_eq!(transitive_from_units(&q, &h).unwrap().matrix(), t.matrix());
            let c = unit_constant(&q, &g, &h).unwrap();
            assert_eq!(c, q.try_inverse(&g[0]).unwrap());
        }
        assert!(unit_constant(&q, &[int(1), int(2)], &[int(1), int(3)]).is_none());
    }

    #[test]
    fn blow_ups() {
        let q = Rationals;
        let p = transitive_from_units(&q, &[int(1), int(-1)]).unwrap();
        assert_eq!(blow_up(&q, &p, &[1, 2]).unwrap().matrix(), p.matrix());
        let big = blow_up(&q, &p, &[2, 5]).unwrap();
        for i in 0..5 {
            for j in 0..5 {
                let same = (i < 2) == (j < 2);
                assert_eq!(big.matrix().get(i, j), &int(if same { 1 } else { -1 }));
            }
        }
        assert!(is_transitive(&q, big.matrix()));
        assert!(blow_up(&q, &p, &[2, 2]).is_err());
        assert!(blow_up(&q, &p, &[0, 2]).is_err());
        assert!(blow_up(&q, &p, &[3]).is_err());
    }

    #[test]
    fn theta_is_conjugation_and_multiplicative() {
        let e = GrassmannAlgebra::new(3, Rationals);
        let p = transitive_from_units(&e, &[e.one(), e.neg(&e.one())]).unwrap();
        let ring = MatrixRing::new(e.clone(), 2);
        let mut rng = seeded(11);
        let s = entrywise_inverse(&p);
        for _ in 0..30 {
            let a = ring.sample(&mut rng);
            let b = ring.sample(&mut rng);
            let ab = ring.mul(&a, &b);
            let lhs = theta(&e, &p, &ab).unwrap();
            let rhs = ring.mul(&theta(&e, &p, &a).unwrap(), &theta(&e, &p, &b).unwrap());
            assert_eq!(lhs, rhs);
            assert_eq!(theta(&e, &p, &a).unwrap(), theta_conjugation(&e, &p, &a).unwrap());
            assert_eq!(theta(&e, &s, &theta(&e, &p, &a).unwrap()).unwrap(), a);
            assert_eq!(theta(&e, &TransitiveMatrix::certify(&e, hadamard_identity(&e, 2)).unwrap(), &a).unwrap(), a);
        }
    }

    #[test]
    fn noncentral_entries_rejected() {
        let e = GrassmannAlgebra::new(2, Rationals);
        let v1 = e.generator(1);
        let t = SquareMatrix::from_rows(vec![vec![e.one(), v1.clone()], vec![e.zero(), e.one()]]).unwrap();
        assert!(matches!(check_central_entries(&e, &t, &[]), Err(AlgebraError::NonCentral { row: 1, col: 2, .. })));
    }

    #[test]
    fn cyclic_shift() {
        let q = Rationals;
        let (h, h_inv) = cyclic_h(&q, 2);
        assert_eq!(h.rows(), vec![vec![int(0), int(1)], vec![int(1), int(0)]]);
        assert_eq!(mat_pow(&q, &h, 2), identity(&q, 2));
        let (h3, h3_inv) = cyclic_h(&q, 3);
        assert_eq!(mat_pow(&q, &h3, 3), identity(&q, 3));
        assert_eq!(mat_mul(&q, &h, &h_inv).unwrap(), identity(&q, 2));
        let d = diagonal(&q, &[int(1), int(2), int(3)]);
        let conj = mat_mul(&q, &mat_mul(&q, &h3, &d).unwrap(), &h3_inv).unwrap();
        assert_eq!(conj, diagonal(&q, &[int(2), int(3), int(1)]));
    }
}

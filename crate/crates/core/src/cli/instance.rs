//! Concrete algebras reachable from `--ring` and `--structure`, packaged so
//! that verification suites can be written once, generically in the ring.

use std::sync::Arc;

use crate::grassmann::GrassmannAlgebra;
use crate::matrix::{cyclic_h, p_matrix, SquareMatrix, TransitiveMatrix};
use crate::poly::{rational_line_with_reflection, PolyRing};
use crate::ring::{fix_membership, CyclotomicField, Endo, ParseElement, QAlgebra, Rationals, Ring, ScalarField, UnitInverse};
use crate::rng::TrialRng;
use crate::structures::shapes::{
    hmatrix_member, q_blow_up, rho_e_member, sigma_member, supermatrix_member, supermatrix_pattern,
};
use crate::structures::{
    graded_matrix_membership, membership_delta_w, sample_graded_matrix, DeltaWAlgebra, DegreeResidueGrading,
    Grading, ZPowerGrading,
};

use super::spec::{RingSpec, Scalars, StructureSpec};

type Sampler<R> = Box<dyn Fn(&mut TrialRng) -> SquareMatrix<<R as Ring>::Elem> + Send + Sync>;
type Predicate<R> = Box<dyn Fn(&SquareMatrix<<R as Ring>::Elem>) -> bool + Send + Sync>;

pub enum Frame<R: Ring> {
    /// `M_n(R, delta, W, W^{-1})`; `transitive` is set when `W` comes from a
    /// transitive matrix.
    Twisted { alg: DeltaWAlgebra<R>, transitive: Option<TransitiveMatrix<R::Elem>> },
    Graded { grading: Arc<dyn Grading<R>> },
}

pub struct Instance<R: Ring> {
    pub ring: R,
    pub n: usize,
    pub label: String,
    pub frame: Frame<R>,
    /// Root of unity `e` of order `n` in `Fix(delta)`, when available.
    pub root: Option<R::Elem>,
    /// An element outside the admissible subring.
    pub off: R::Elem,
    sampler: Sampler<R>,
    /// Independent entrywise description of the members, where one is known.
    shape: Option<Predicate<R>>,
}

impl<R: Ring> Instance<R> {
    pub fn sample_member(&self, rng: &mut TrialRng) -> SquareMatrix<R::Elem> {
        (self.sampler)(rng)
    }

    pub fn is_member(&self, a: &SquareMatrix<R::Elem>) -> bool {
        match &self.frame {
            Frame::Twisted { alg, .. } => membership_delta_w(alg, a),
            Frame::Graded { grading } => graded_matrix_membership(&self.ring, grading.as_ref(), a),
        }
    }

    /// `Fix(delta)` for twisted frames, `R_0` for graded ones.
    pub fn is_admissible(&self, r: &R::Elem) -> bool {
        match &self.frame {
            Frame::Twisted { alg, .. } => fix_membership(&self.ring, alg.delta().as_ref(), r),
            Frame::Graded { grading } => grading.in_component(&self.ring, r, 0),
        }
    }

    pub fn subring_name(&self) -> String {
        match &self.frame {
            Frame::Twisted { alg, .. } => format!("Fix({})", alg.delta().name()),
            Frame::Graded { .. } => "R_0".to_string(),
        }
    }

    pub fn delta(&self) -> Option<&Endo<R>> {
        match &self.frame {
            Frame::Twisted { alg, .. } => Some(alg.delta()),
            Frame::Graded { .. } => None,
        }
    }

    pub fn grading(&self) -> Option<&dyn Grading<R>> {
        match &self.frame {
            Frame::Graded { grading } => Some(grading.as_ref()),
            Frame::Twisted { .. } => None,
        }
    }

    pub fn shape(&self, a: &SquareMatrix<R::Elem>) -> Option<bool> {
        self.shape.as_ref().map(|s| s(a))
    }

    pub fn is_graded(&self) -> bool {
        matches!(self.frame, Frame::Graded { .. })
    }
}

pub trait InstanceVisitor {
    type Output;
    fn visit<R: QAlgebra + UnitInverse + ParseElement + 'static>(self, inst: Instance<R>) -> Self::Output;
}

/// Code generic in the ring, instantiated for each `--ring` choice.
pub trait RingVisitor {
    type Output;
    fn visit<R: QAlgebra + UnitInverse + ParseElement + 'static>(self, ring: R) -> Self::Output;
}

pub fn with_ring<V: RingVisitor>(spec: RingSpec, v: V) -> Result<V::Output, String> {
    Ok(match spec {
        RingSpec::Rationals => v.visit(Rationals),
        RingSpec::ReflectedLine => v.visit(rational_line_with_reflection().0),
        RingSpec::Grassmann { m, scalars: Scalars::Rationals } => {
            v.visit(crate::grassmann::GrassmannAlgebra::new(m, Rationals))
        }
        RingSpec::Grassmann { m, scalars: Scalars::Cyclotomic(order) } => {
            v.visit(crate::grassmann::GrassmannAlgebra::new(m, CyclotomicField::new(order)))
        }
    })
}

/// Resolve the matrix size of `structure` against an explicit `--n`.
pub fn resolve_size(structure: StructureSpec, n: Option<usize>) -> Result<usize, String> {
    match (structure.intrinsic_size(), n) {
        (Some(a), Some(b)) if a != b => Err(format!("--n {b} conflicts with structure {structure}")),
        (Some(a), _) => Ok(a),
        (None, Some(b)) => Ok(b),
        (None, None) => Ok(2),
    }
}

pub fn with_instance<V: InstanceVisitor>(
    ring: RingSpec,
    structure: StructureSpec,
    n: Option<usize>,
    visitor: V,
) -> Result<V::Output, String> {
    let n = resolve_size(structure, n)?;
    if !(1..=crate::det::MAX_SIZE).contains(&n) {
        return Err(format!("matrix size {n} outside 1..={}", crate::det::MAX_SIZE));
    }
    match ring {
        RingSpec::Grassmann { m, scalars: Scalars::Rationals } => {
            grassmann_instance(GrassmannAlgebra::new(m, Rationals), None, structure, n, visitor)
        }
        RingSpec::Grassmann { m, scalars: Scalars::Cyclotomic(order) } => {
            grassmann_instance(GrassmannAlgebra::new(m, CyclotomicField::new(order)), Some(order), structure, n, visitor)
        }
        RingSpec::ReflectedLine => match structure {
            StructureSpec::HMatrix => {
                let (qy, delta) = rational_line_with_reflection();
                if n % 2 != 0 {
                    return Err(format!("hmatrix over q[y] needs an even size (delta has order 2), got {n}"));
                }
                let off = qy.indeterminate();
                Ok(visitor.visit(hmatrix_instance(qy, delta, n, off)?))
            }
            other => Err(format!("structure {other} needs a grassmann ring; q[y] supports only hmatrix")),
        },
        RingSpec::Rationals => Err(format!("structure {structure} is not available over q")),
    }
}

fn hmatrix_instance<R: Ring + 'static>(ring: R, delta: Endo<R>, n: usize, off: R::Elem) -> Result<Instance<R>, String> {
    let (h, h_inv) = cyclic_h(&ring, n);
    let alg = DeltaWAlgebra::new(ring.clone(), delta.clone(), h, h_inv).map_err(|e| e.to_string())?;
    let (r2, d2) = (ring.clone(), delta.clone());
    Ok(Instance {
        label: format!("M_{n}({}, {}, H, H^-1)", ring.describe(), delta.name()),
        ring,
        n,
        frame: Frame::Twisted { alg, transitive: None },
        root: None,
        off,
        sampler: Box::new(move |rng| hmatrix_member(&r2, d2.as_ref(), n, rng)),
        shape: None,
    })
}

/// A scalar of multiplicative order exactly `n`.
pub fn root_of_order<K: ScalarField>(k: &K, field_order: Option<usize>, n: usize) -> Option<K::Elem> {
    match (n, field_order) {
        (1, _) => Some(k.one()),
        (2, _) => Some(k.neg(&k.one())),
        (_, Some(order)) if order % n == 0 => k.root_power((order / n) as i64),
        _ => None,
    }
}

fn grassmann_instance<K, V>(
    e: GrassmannAlgebra<K>,
    field_order: Option<usize>,
    structure: StructureSpec,
    n: usize,
    visitor: V,
) -> Result<V::Output, String>
where
    K: ScalarField + 'static,
    V: InstanceVisitor,
{
    let v1 = e.generator(1);
    match structure {
        StructureSpec::Supermatrix { d } => {
            if d == 0 || d > n {
                return Err(format!("supermatrix needs 1 <= d <= n, got d={d}, n={n}"));
            }
            let p = supermatrix_pattern(&e, d, n).map_err(|x| x.to_string())?;
            let alg = DeltaWAlgebra::from_transitive(e.clone(), e.epsilon_endomorphism(), &p).map_err(|x| x.to_string())?;
            let (e2, e3) = (e.clone(), e.clone());
            Ok(visitor.visit(Instance {
                label: format!("M_{{{n},{d}}}({}) = M_{n}(E, epsilon, P({d},{n}))", e.describe()),
                ring: e,
                n,
                frame: Frame::Twisted { alg, transitive: Some(p) },
                root: None,
                off: v1,
                sampler: Box::new(move |rng| supermatrix_member(&e2, d, n, rng)),
                shape: Some(Box::new(move |a| {
                    (0..n).all(|i| {
                        (0..n).all(|j| {
                            let x = a.get(i, j);
                            if (i < d) == (j < d) { e3.is_even(x) } else { e3.is_odd(x) }
                        })
                    })
                })),
            }))
        }
        StructureSpec::RhoE { n } => {
            if n < 2 {
                return Err("rho_e needs n >= 2".into());
            }
            let root = root_of_order(e.scalars(), field_order, n).ok_or_else(|| {
                format!("rho_e:n={n} needs a primitive {n}-th root of unity; use --ring grassmann:<m>:scalars=cyclo:{n}")
            })?;
            let rho = e.rho_endomorphism(&root, n);
            let t = p_matrix(&e, &e.scalar(root.clone()), n).map_err(|x| x.to_string())?;
            let alg = DeltaWAlgebra::from_transitive(e.clone(), rho.clone(), &t).map_err(|x| x.to_string())?;
            let (e2, e3) = (e.clone(), e.clone());
            Ok(visitor.visit(Instance {
                label: format!("M_{n}({}, rho_e, P^(e)), e of order {n}", e.describe()),
                root: Some(e.scalar(root)),
                ring: e,
                n,
                frame: Frame::Twisted { alg, transitive: Some(t) },
                off: v1,
                sampler: Box::new(move |rng| rho_e_member(&e2, n, rng)),
                shape: Some(Box::new(move |a| {
                    (0..n).all(|i| (0..n).all(|j| e3.residue_component_membership(a.get(i, j), i as i64 - j as i64, n)))
                })),
            }))
        }
        StructureSpec::Sigma { d } => {
            if e.generator_count() < 2 {
                return Err("sigma needs at least 2 Grassmann generators".into());
            }
            if d == 0 || d >= n {
                return Err(format!("sigma needs 1 <= d < n, got d={d}, n={n}"));
            }
            let q = q_blow_up(&e, d, n).map_err(|x| x.to_string())?;
            let alg = DeltaWAlgebra::from_transitive(e.clone(), e.sigma_endomorphism(), &q).map_err(|x| x.to_string())?;
            let e2 = e.clone();
            let off = e.generator(2);
            let shape = sigma_shape(&e, d, n);
            Ok(visitor.visit(Instance {
                label: format!("M_{n}({}, sigma, Q({d},{n}))", e.describe()),
                ring: e,
                n,
                frame: Frame::Twisted { alg, transitive: Some(q) },
                root: None,
                off,
                sampler: Box::new(move |rng| sigma_member(&e2, d, n, rng)),
                shape: Some(shape),
            }))
        }
        StructureSpec::Graded { n } => {
            if n < 2 {
                return Err("graded needs n >= 2".into());
            }
            let grading: Arc<dyn Grading<GrassmannAlgebra<K>>> = Arc::new(DegreeResidueGrading { n });
            let (e2, g2) = (e.clone(), grading.clone());
            Ok(visitor.visit(Instance {
                label: format!("M_{n}^g({}) graded by degree mod {n}", e.describe()),
                ring: e,
                n,
                frame: Frame::Graded { grading },
                root: None,
                off: v1,
                sampler: Box::new(move |rng| sample_graded_matrix(&e2, g2.as_ref(), rng)),
                shape: None,
            }))
        }
        StructureSpec::ZGraded { n } => {
            if n < 2 {
                return Err("zgraded needs n >= 2".into());
            }
            let ez = PolyRing::new(e, "z");
            let grading: Arc<dyn Grading<PolyRing<GrassmannAlgebra<K>>>> = Arc::new(ZPowerGrading { n });
            let (ez2, g2) = (ez.clone(), grading.clone());
            let off = ez.indeterminate();
            Ok(visitor.visit(Instance {
                label: format!("M_{n}^g({}[z]) graded by z-degree mod {n}", ez.base().describe()),
                ring: ez,
                n,
                frame: Frame::Graded { grading },
                root: None,
                off,
                sampler: Box::new(move |rng| sample_graded_matrix(&ez2, g2.as_ref(), rng)),
                shape: None,
            }))
        }
        StructureSpec::HMatrix => {
            // rho_e of order n when the scalars allow it, else epsilon
            let delta = match root_of_order(e.scalars(), field_order, n) {
                Some(root) if n > 2 => e.rho_endomorphism(&root, n),
                _ if n % 2 == 0 => e.epsilon_endomorphism(),
                _ => {
                    return Err(format!(
                        "hmatrix of size {n} needs an endomorphism of order dividing {n}; use an even n or cyclo:{n} scalars"
                    ))
                }
            };
            Ok(visitor.visit(hmatrix_instance(e, delta, n, v1)?))
        }
    }
}

// sigma(g) - g = v1 g - g v1 since v1 g v1 = 0. Diagonal blocks need
// v1 g = g v1; the upper block v1 g - g v1 = v1 v2 g, the lower one its negative.
fn sigma_shape<K: ScalarField + 'static>(
    e: &GrassmannAlgebra<K>,
    d: usize,
    n: usize,
) -> Predicate<GrassmannAlgebra<K>> {
    let e = e.clone();
    Box::new(move |a| {
        let v1 = e.generator(1);
        let v12 = e.mul(&v1, &e.generator(2));
        (0..n).all(|i| {
            (0..n).all(|j| {
                let g = a.get(i, j);
                let lhs = e.sub(&e.mul(&v1, g), &e.mul(g, &v1));
                match (i < d, j < d) {
                    (true, false) => lhs == e.mul(&v12, g),
                    (false, true) => lhs == e.neg(&e.mul(&v12, g)),
                    _ => e.is_zero(&lhs),
                }
            })
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::seeded;

    struct Probe;

    impl InstanceVisitor for Probe {
        type Output = (usize, bool, bool, Option<bool>);
        fn visit<R: QAlgebra + UnitInverse + ParseElement + 'static>(self, inst: Instance<R>) -> Self::Output {
            let mut rng = seeded(1);
            let a = inst.sample_member(&mut rng);
            (inst.n, inst.is_member(&a), inst.is_admissible(&inst.off), inst.shape(&a))
        }
    }

    #[test]
    fn every_structure_builds_members() {
        let cases = [
            ("grassmann:4", "supermatrix:d=1", None),
            ("grassmann:4", "supermatrix:d=2", Some(3)),
            ("grassmann:4:scalars=cyclo:3", "rho_e:n=3", None),
            ("grassmann:4", "rho_e:n=2", None),
            ("grassmann:4", "sigma:d=1", Some(3)),
            ("grassmann:4", "graded:n=3", None),
            ("grassmann:3", "zgraded:n=2", None),
            ("grassmann:4", "hmatrix", None),
            ("grassmann:4:scalars=cyclo:3", "hmatrix", Some(3)),
            ("q[y]:delta=neg", "hmatrix", None),
        ];
        for (ring, structure, n) in cases {
            let (size, member, off_admissible, shape) =
                with_instance(ring.parse().unwrap(), structure.parse().unwrap(), n, Probe).unwrap();
            assert_eq!(size, n.unwrap_or(size));
            assert!(member, "{ring} {structure}");
            assert!(!off_admissible, "{ring} {structure}");
            assert_ne!(shape, Some(false), "{ring} {structure}");
        }
    }

    #[test]
    fn invalid_combinations() {
        let bad = [
            ("grassmann:4", "rho_e:n=3", None),
            ("grassmann:4", "rho_e:n=3", Some(2)),
            ("grassmann:4", "supermatrix:d=3", Some(2)),
            ("q", "hmatrix", None),
            ("q[y]:delta=neg", "supermatrix:d=1", None),
            ("q[y]:delta=neg", "hmatrix", Some(3)),
            ("grassmann:4", "hmatrix", Some(3)),
            ("grassmann:1", "sigma:d=1", None),
        ];
        for (ring, structure, n) in bad {
            assert!(with_instance(ring.parse().unwrap(), structure.parse().unwrap(), n, Probe).is_err(), "{ring} {structure}");
        }
    }

    #[test]
    fn root_orders() {
        let k = CyclotomicField::new(6);
        let r = root_of_order(&k, Some(6), 3).unwrap();
        assert!(k.is_one(&k.pow(&r, 3)) && !k.is_one(&r));
        assert!(root_of_order(&Rationals, None, 3).is_none());
        assert_eq!(root_of_order(&Rationals, None, 2), Some(crate::ring::rational::int(-1)));
    }
}

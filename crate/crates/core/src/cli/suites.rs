//! Seeded verification campaigns. Each suite draws its inputs from a
//! per-trial generator seeded by `trial_seed(seed, index)`, so results do not
//! depend on how trials are scheduled across threads.

use clap::ValueEnum;
use rayon::prelude::*;

use crate::det::{
    char_poly_with, expected_leading, ldet_with, left_substitute, rdet_with, right_substitute, AdjointRule,
    CharPolyResult, Side,
};
use crate::error::AlgebraError;
use crate::matrix::{
    blow_up, entrywise_inverse, format_matrix, hadamard, identity, is_transitive, is_zero_matrix, mat_add, mat_mul,
    mat_sub, theta, theta_conjugation, transitive_from_units, unit_constant, units_from_transitive, MatrixRing,
    SquareMatrix, TransitiveMatrix,
};
use crate::poly::{rational_line_with_reflection, Poly, SkewPolyRing};
use crate::ring::{
    fix_membership, Endo, IdentityEndomorphism, ParseElement, QAlgebra, Rationals, Ring, UnitInverse,
};
use crate::rng::{seeded, trial_seed, TrialRng};
use crate::structures::shapes::supermatrix_pattern;
use crate::structures::{
    embed_diagonal, embed_skew, embed_vandermonde, graded_integrality_witness, integrality_witness,
    membership_delta_t, sample_unit, skew_integrality_witness, standard_poly, vandermonde, DegreeResidueGrading,
    EntrywiseEndomorphism, WitnessOptions,
};

use super::instance::{with_instance, with_ring, Frame, Instance, InstanceVisitor, RingVisitor};
use super::report::Failure;
use super::spec::{RingSpec, Scalars, StructureSpec, TransitiveSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, ValueEnum)]
pub enum Suite {
    /// Unit sequences to transitive matrices and back.
    #[value(name = "units-roundtrip", alias = "prop2_1")]
    UnitsRoundtrip,
    /// Blow-ups of transitive matrices stay transitive.
    #[value(name = "blow-up", alias = "prop2_2")]
    BlowUp,
    /// Hadamard multiplication by a central transitive matrix is an automorphism equal to diagonal conjugation.
    #[value(name = "hadamard-conjugation", alias = "prop2_4")]
    HadamardConjugation,
    /// Traces of members are fixed by delta.
    #[value(name = "trace-fixed", alias = "prop3_1")]
    TraceFixed,
    /// Diagonal and skew embeddings are homomorphisms into the H-twisted algebra.
    #[value(name = "diagonal-embedding", alias = "thm3_2")]
    DiagonalEmbedding,
    /// Vandermonde conjugation of the diagonal embedding.
    #[value(name = "vandermonde-embedding", alias = "thm3_3")]
    VandermondeEmbedding,
    /// The standard polynomial S_4 vanishes on a skew polynomial ring and on 2x2 matrices.
    #[value(name = "standard-identity", alias = "thm3_5")]
    StandardIdentity,
    /// Preadjoints of members are members.
    #[value(name = "preadjoint-closure", alias = "thm4_1")]
    PreadjointClosure,
    /// Right and left determinants of members are fixed by delta.
    #[value(name = "determinants-fixed", alias = "thm4_2")]
    DeterminantsFixed,
    /// Characteristic polynomial coefficients of members are fixed by delta.
    #[value(name = "charpoly-fixed", alias = "cor4_3")]
    CharpolyFixed,
    /// Right and left Cayley-Hamilton identities with the predicted leading coefficient.
    #[value(name = "cayley-hamilton", alias = "thm4_4")]
    CayleyHamilton,
    /// Monic relations with fixed coefficients for ring elements.
    #[value(name = "integrality", alias = "thm4_5")]
    Integrality,
    /// Preadjoints of graded matrices are graded.
    #[value(name = "graded-closure", alias = "thm5_2")]
    GradedClosure,
    /// Determinants and characteristic polynomials of graded matrices lie in R_0.
    #[value(name = "graded-determinants", alias = "thm5_3")]
    GradedDeterminants,
    /// Monic relations with R_0 coefficients for elements of a graded ring.
    #[value(name = "graded-integrality", alias = "thm5_4")]
    GradedIntegrality,
    /// Monic relations over Fix(delta)[w^n] in a skew polynomial ring.
    #[value(name = "skew-integrality", alias = "thm5_5")]
    SkewIntegrality,
    /// Supermatrix algebras: shape, degree n^2 integrality and the embedding of M_n(E).
    #[value(name = "supermatrix", alias = "ex6_1")]
    Supermatrix,
    /// Matrices twisted by rho_e: entries graded by degree mod n.
    #[value(name = "rho-shape", alias = "ex6_2")]
    RhoShape,
    /// Matrices twisted by the infinite-order conjugation sigma.
    #[value(name = "sigma-shape", alias = "ex6_3")]
    SigmaShape,
}

/// Optional flags a suite may accept besides `--trials/--seed/--threads/--json`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flag {
    Ring,
    Structure,
    N,
    K,
    Transitive,
}

impl Flag {
    pub fn name(self) -> &'static str {
        match self {
            Flag::Ring => "--ring",
            Flag::Structure => "--structure",
            Flag::N => "--n",
            Flag::K => "--k",
            Flag::Transitive => "--transitive",
        }
    }
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::UnitsRoundtrip => "units-roundtrip",
            Suite::BlowUp => "blow-up",
            Suite::HadamardConjugation => "hadamard-conjugation",
            Suite::TraceFixed => "trace-fixed",
            Suite::DiagonalEmbedding => "diagonal-embedding",
            Suite::VandermondeEmbedding => "vandermonde-embedding",
            Suite::StandardIdentity => "standard-identity",
            Suite::PreadjointClosure => "preadjoint-closure",
            Suite::DeterminantsFixed => "determinants-fixed",
            Suite::CharpolyFixed => "charpoly-fixed",
            Suite::CayleyHamilton => "cayley-hamilton",
            Suite::Integrality => "integrality",
            Suite::GradedClosure => "graded-closure",
            Suite::GradedDeterminants => "graded-determinants",
            Suite::GradedIntegrality => "graded-integrality",
            Suite::SkewIntegrality => "skew-integrality",
            Suite::Supermatrix => "supermatrix",
            Suite::RhoShape => "rho-shape",
            Suite::SigmaShape => "sigma-shape",
        }
    }

    pub fn all() -> &'static [Suite] {
        Suite::value_variants()
    }

    pub fn flags(self) -> &'static [Flag] {
        use Flag::*;
        match self {
            Suite::UnitsRoundtrip | Suite::BlowUp => &[Ring, N],
            Suite::HadamardConjugation => &[Ring, N, Transitive],
            Suite::TraceFixed | Suite::PreadjointClosure | Suite::GradedClosure => &[Ring, Structure, N],
            Suite::DeterminantsFixed | Suite::CharpolyFixed | Suite::CayleyHamilton | Suite::GradedDeterminants => {
                &[Ring, Structure, N, K]
            }
            Suite::DiagonalEmbedding | Suite::VandermondeEmbedding => &[Ring, N],
            Suite::StandardIdentity => &[Ring],
            Suite::Integrality | Suite::GradedIntegrality | Suite::SkewIntegrality => &[Ring, N, K],
            Suite::Supermatrix | Suite::SigmaShape => &[Ring, Structure, N],
            Suite::RhoShape => &[Ring, N],
        }
    }

    pub fn default_trials(self) -> usize {
        match self {
            Suite::UnitsRoundtrip
            | Suite::BlowUp
            | Suite::HadamardConjugation
            | Suite::DiagonalEmbedding
            | Suite::VandermondeEmbedding => 100,
            Suite::CayleyHamilton | Suite::Integrality | Suite::GradedIntegrality | Suite::Supermatrix => 20,
            Suite::SkewIntegrality => 5,
            _ => 50,
        }
    }

    pub fn default_ring(self, n: Option<usize>) -> RingSpec {
        match self {
            Suite::StandardIdentity => RingSpec::ReflectedLine,
            Suite::RhoShape | Suite::VandermondeEmbedding => {
                RingSpec::Grassmann { m: 4, scalars: Scalars::Cyclotomic(n.unwrap_or(3)) }
            }
            _ => RingSpec::Grassmann { m: 4, scalars: Scalars::Rationals },
        }
    }

    fn default_structure(self) -> Option<StructureSpec> {
        match self {
            Suite::TraceFixed
            | Suite::PreadjointClosure
            | Suite::DeterminantsFixed
            | Suite::CharpolyFixed
            | Suite::CayleyHamilton
            | Suite::Supermatrix => Some(StructureSpec::Supermatrix { d: 1 }),
            Suite::GradedClosure | Suite::GradedDeterminants => Some(StructureSpec::Graded { n: 2 }),
            Suite::SigmaShape => Some(StructureSpec::Sigma { d: 1 }),
            _ => None,
        }
    }
}

/// A fully resolved campaign.
#[derive(Debug, Clone)]
pub struct Campaign {
    pub suite: Suite,
    pub ring: RingSpec,
    pub structure: Option<StructureSpec>,
    pub transitive: Option<TransitiveSpec>,
    pub n: Option<usize>,
    pub k: usize,
    pub trials: usize,
    pub seed: u64,
    pub sabotage: bool,
}

/// Flag values as given on the command line.
#[derive(Debug, Clone, Default)]
pub struct Requested {
    pub ring: Option<RingSpec>,
    pub structure: Option<StructureSpec>,
    pub transitive: Option<TransitiveSpec>,
    pub n: Option<usize>,
    pub k: Option<usize>,
    pub trials: Option<usize>,
    pub seed: u64,
    pub sabotage: bool,
}

impl Campaign {
    /// Apply defaults and reject flags the suite does not take.
    pub fn resolve(suite: Suite, req: Requested) -> Result<Campaign, String> {
        let given = [
            (Flag::Ring, req.ring.is_some()),
            (Flag::Structure, req.structure.is_some()),
            (Flag::N, req.n.is_some()),
            (Flag::K, req.k.is_some()),
            (Flag::Transitive, req.transitive.is_some()),
        ];
        for (flag, present) in given {
            if present && !suite.flags().contains(&flag) {
                let valid: Vec<&str> = suite.flags().iter().map(|f| f.name()).collect();
                let valid = if valid.is_empty() { "none".to_string() } else { valid.join(", ") };
                return Err(format!(
                    "{} does not take {}; valid flags for this suite: {valid} (plus --trials, --seed, --threads, --json)",
                    suite.name(),
                    flag.name()
                ));
            }
        }
        let k = req.k.unwrap_or(2);
        if !(1..=3).contains(&k) {
            return Err(format!("--k must be 1, 2 or 3, got {k}"));
        }
        if let Some(n) = req.n {
            if !(1..=crate::det::MAX_SIZE).contains(&n) {
                return Err(format!("--n must be between 1 and {}, got {n}", crate::det::MAX_SIZE));
            }
        }
        Ok(Campaign {
            suite,
            ring: req.ring.unwrap_or_else(|| suite.default_ring(req.n)),
            structure: req.structure.or_else(|| suite.default_structure()),
            transitive: req.transitive,
            n: req.n,
            k,
            trials: req.trials.unwrap_or_else(|| suite.default_trials()),
            seed: req.seed,
            sabotage: req.sabotage,
        })
    }

    /// Canonical command line, used as the report's command echo.
    pub fn command_line(&self) -> String {
        let mut parts = vec!["verify".to_string(), self.suite.name().to_string(), "--ring".into(), self.ring.to_string()];
        if let Some(s) = self.structure {
            parts.extend(["--structure".into(), s.to_string()]);
        }
        if let Some(t) = self.transitive {
            parts.extend(["--transitive".into(), format!("'{t}'")]);
        }
        if let Some(n) = self.n {
            parts.extend(["--n".into(), n.to_string()]);
        }
        if self.suite.flags().contains(&Flag::K) {
            parts.extend(["--k".into(), self.k.to_string()]);
        }
        parts.extend(["--trials".into(), self.trials.to_string(), "--seed".into(), self.seed.to_string()]);
        if self.sabotage {
            parts.push("--sabotage".into());
        }
        parts.join(" ")
    }

    fn rule(&self) -> AdjointRule {
        if self.sabotage {
            AdjointRule::Corrupted
        } else {
            AdjointRule::Direct
        }
    }

    fn options(&self) -> WitnessOptions<'static> {
        WitnessOptions { rule: self.rule(), progress: None }
    }
}

pub type Outcome = (u64, Result<(), Failure>);

fn run_trials<F>(c: &Campaign, f: F) -> Vec<Outcome>
where
    F: Fn(&mut TrialRng) -> Result<(), Failure> + Sync,
{
    (0..c.trials)
        .into_par_iter()
        .map(|i| {
            let s = trial_seed(c.seed, i as u64);
            (s, f(&mut seeded(s)))
        })
        .collect()
}

/// Run a resolved campaign. `Err` is a usage problem (exit code 2).
pub fn run_campaign(c: &Campaign) -> Result<Vec<Outcome>, String> {
    match c.suite {
        Suite::UnitsRoundtrip => with_ring(c.ring, UnitsRoundtrip(c))?,
        Suite::BlowUp => with_ring(c.ring, BlowUpSuite(c))?,
        Suite::HadamardConjugation => with_ring(c.ring, Hadamard(c))?,
        Suite::StandardIdentity => standard_identity(c),
        Suite::TraceFixed
        | Suite::PreadjointClosure
        | Suite::DeterminantsFixed
        | Suite::CharpolyFixed
        | Suite::CayleyHamilton
        | Suite::GradedClosure
        | Suite::GradedDeterminants
        | Suite::Supermatrix
        | Suite::SigmaShape => {
            let structure = c.structure.expect("defaulted");
            check_structure_kind(c.suite, structure)?;
            with_instance(c.ring, structure, c.n, MemberSuite(c))?
        }
        Suite::RhoShape => {
            let n = c.n.unwrap_or(3);
            with_instance(c.ring, StructureSpec::RhoE { n }, None, MemberSuite(c))?
        }
        Suite::VandermondeEmbedding => {
            let n = c.n.unwrap_or(3);
            with_instance(c.ring, StructureSpec::RhoE { n }, None, VandermondeSuite(c))?
        }
        Suite::DiagonalEmbedding | Suite::Integrality | Suite::SkewIntegrality => {
            with_instance(c.ring, StructureSpec::HMatrix, c.n, DeltaSuite(c))?
        }
        Suite::GradedIntegrality => {
            let n = c.n.unwrap_or(2);
            if !matches!(c.ring, RingSpec::Grassmann { .. }) {
                return Err("graded-integrality needs a grassmann ring".into());
            }
            with_instance(c.ring, StructureSpec::Graded { n }, None, DeltaSuite(c))?
        }
    }
    .pipe(Ok)
}

trait Pipe: Sized {
    fn pipe<T>(self, f: impl FnOnce(Self) -> T) -> T {
        f(self)
    }
}

impl<T> Pipe for T {}

fn check_structure_kind(suite: Suite, s: StructureSpec) -> Result<(), String> {
    let ok = match suite {
        Suite::GradedClosure | Suite::GradedDeterminants => s.is_graded(),
        Suite::PreadjointClosure | Suite::DeterminantsFixed | Suite::CharpolyFixed => !s.is_graded(),
        Suite::Supermatrix => matches!(s, StructureSpec::Supermatrix { .. }),
        Suite::SigmaShape => matches!(s, StructureSpec::Sigma { .. }),
        _ => true,
    };
    if ok {
        Ok(())
    } else {
        let want = match suite {
            Suite::GradedClosure | Suite::GradedDeterminants => "graded:n=<n> or zgraded:n=<n>",
            Suite::Supermatrix => "supermatrix:d=<d>",
            Suite::SigmaShape => "sigma:d=<d>",
            _ => "supermatrix:d=<d>, rho_e:n=<n>, sigma:d=<d> or hmatrix",
        };
        Err(format!("{} does not accept structure {s}; use {want}", suite.name()))
    }
}

// ---------------------------------------------------------------------------
// Ring-level suites

fn units<R: UnitInverse>(ring: &R, n: usize, rng: &mut TrialRng) -> Vec<R::Elem> {
    (0..n).map(|_| sample_unit(ring, rng)).collect()
}

fn is_central<R: Ring>(ring: &R, x: &R::Elem) -> bool {
    ring.generators().iter().all(|g| ring.eq(&ring.mul(x, g), &ring.mul(g, x)))
}

/// A central unit, by rejection with a nonzero integer fallback.
fn central_unit<R: UnitInverse>(ring: &R, rng: &mut TrialRng) -> R::Elem {
    for _ in 0..64 {
        let u = sample_unit(ring, rng);
        if is_central(ring, &u) {
            return u;
        }
    }
    ring.from_int(3)
}

fn fmt_list<R: Ring>(ring: &R, xs: &[R::Elem]) -> String {
    serde_json::to_string(&xs.iter().map(|x| ring.format(x)).collect::<Vec<_>>()).expect("strings serialize")
}

fn size_at_least(c: &Campaign, default: usize, min: usize) -> usize {
    c.n.unwrap_or(default).max(min)
}

struct UnitsRoundtrip<'a>(&'a Campaign);

impl RingVisitor for UnitsRoundtrip<'_> {
    type Output = Vec<Outcome>;
    fn visit<R: QAlgebra + UnitInverse + ParseElement + 'static>(self, ring: R) -> Vec<Outcome> {
        let c = self.0;
        let n = size_at_least(c, 3, 2);
        run_trials(c, |rng| {
            let g = units(&ring, n, rng);
            let t = transitive_from_units(&ring, &g)?;
            if !is_transitive(&ring, t.matrix()) {
                return Err(Failure::new("matrix built from units is not transitive").input("g", fmt_list(&ring, &g)));
            }
            let back = units_from_transitive(&t);
            if unit_constant(&ring, &back, &g).is_none() {
                return Err(Failure::new("recovered units differ from the originals by more than a right constant")
                    .input("g", fmt_list(&ring, &g))
                    .residual(fmt_list(&ring, &back)));
            }
            let u = central_unit(&ring, rng);
            let mut h: Vec<_> = g.iter().map(|x| ring.mul(x, &u)).collect();
            if c.sabotage {
                let last = h.len() - 1;
                h[last] = ring.add(&h[last], &h[last]);
            }
            let th = transitive_from_units(&ring, &h)?;
            if th.matrix() != t.matrix() {
                return Err(Failure::new("g and g*c give different transitive matrices")
                    .input("g", fmt_list(&ring, &g))
                    .input("c", ring.format(&u))
                    .residual(format_matrix(&ring, &mat_sub(&ring, th.matrix(), t.matrix())?)));
            }
            Ok(())
        })
    }
}

struct BlowUpSuite<'a>(&'a Campaign);

impl RingVisitor for BlowUpSuite<'_> {
    type Output = Vec<Outcome>;
    fn visit<R: QAlgebra + UnitInverse + ParseElement + 'static>(self, ring: R) -> Vec<Outcome> {
        use rand::Rng as _;
        let c = self.0;
        let n = size_at_least(c, 3, 1);
        run_trials(c, |rng| {
            let g = units(&ring, n, rng);
            let t = transitive_from_units(&ring, &g)?;
            let mut cuts = Vec::with_capacity(n);
            let mut acc = 0;
            for _ in 0..n {
                acc += rng.gen_range(1..=3);
                cuts.push(acc);
            }
            let b = blow_up(&ring, &t, &cuts)?;
            let mut m = b.matrix().clone();
            if c.sabotage {
                let last = m.size() - 1;
                let bumped = ring.add(m.get(0, last), &ring.one());
                m.set(0, last, bumped);
            }
            let block = |p: usize| cuts.iter().position(|&d| p < d).unwrap_or(n - 1);
            let copies = (0..m.size()).all(|p| (0..m.size()).all(|q| m.get(p, q) == t.matrix().get(block(p), block(q))));
            if !is_transitive(&ring, &m) || !copies {
                return Err(Failure::new(format!("blow-up along cuts {cuts:?} is not a transitive block copy"))
                    .input("T", format_matrix(&ring, t.matrix()))
                    .residual(format_matrix(&ring, &m)));
            }
            Ok(())
        })
    }
}

struct Hadamard<'a>(&'a Campaign);

impl Hadamard<'_> {
    fn pattern<R: UnitInverse + ParseElement>(
        &self,
        ring: &R,
        rng: &mut TrialRng,
    ) -> Result<TransitiveMatrix<R::Elem>, Failure> {
        let c = self.0;
        Ok(match c.transitive.unwrap_or(TransitiveSpec::RandomUnits) {
            TransitiveSpec::Sign { d, n } => supermatrix_pattern(ring, d, n)?,
            TransitiveSpec::QBlowUp { d, n } => {
                let up = ring.parse("1 + v1*v2").map_err(|e| Failure::new(format!("Q needs v1, v2: {e}")))?;
                let down = ring.parse("1 - v1*v2").map_err(|e| Failure::new(format!("Q needs v1, v2: {e}")))?;
                let one = ring.one();
                let q = TransitiveMatrix::certify(ring, SquareMatrix::from_rows(vec![vec![one.clone(), up], vec![down, one]])?)?;
                blow_up(ring, &q, &[d, n])?
            }
            TransitiveSpec::RandomUnits => {
                let n = size_at_least(c, 3, 1);
                let g: Vec<_> = (0..n).map(|_| central_unit(ring, rng)).collect();
                transitive_from_units(ring, &g)?
            }
        })
    }
}

impl RingVisitor for Hadamard<'_> {
    type Output = Vec<Outcome>;
    fn visit<R: QAlgebra + UnitInverse + ParseElement + 'static>(self, ring: R) -> Vec<Outcome> {
        let c = self.0;
        run_trials(c, |rng| {
            let t = self.pattern(&ring, rng)?;
            let n = t.size();
            let mr = MatrixRing::new(ring.clone(), n);
            let (a, b) = (mr.sample(rng), mr.sample(rng));
            // the checked map, then the raw Hadamard product the identities are tested on
            theta(&ring, &t, &a)?;
            let mut tm = t.matrix().clone();
            if c.sabotage {
                let bumped = ring.add(tm.get(0, 0), &ring.one());
                tm.set(0, 0, bumped);
            }
            let th = |x: &SquareMatrix<R::Elem>| hadamard(&ring, &tm, x);
            let fail = |what: &str| {
                Failure::new(format!("Theta_T {what}"))
                    .input("T", format_matrix(&ring, &tm))
                    .input("A", format_matrix(&ring, &a))
                    .input("B", format_matrix(&ring, &b))
            };
            if th(&mat_mul(&ring, &a, &b)?)? != mat_mul(&ring, &th(&a)?, &th(&b)?)? {
                return Err(fail("is not multiplicative"));
            }
            if th(&mat_add(&ring, &a, &b)?)? != mat_add(&ring, &th(&a)?, &th(&b)?)? {
                return Err(fail("is not additive"));
            }
            if th(&identity(&ring, n))? != identity(&ring, n) {
                return Err(fail("does not fix I"));
            }
            let conj = theta_conjugation(&ring, &t, &a)?;
            if th(&a)? != conj {
                return Err(fail("differs from D A D^-1").residual(format_matrix(&ring, &mat_sub(&ring, &th(&a)?, &conj)?)));
            }
            if hadamard(&ring, entrywise_inverse(&t).matrix(), &th(&a)?)? != a {
                return Err(fail("is not inverted by the entrywise inverse"));
            }
            Ok(())
        })
    }
}

fn standard_identity(c: &Campaign) -> Vec<Outcome> {
    let (qy, delta) = rational_line_with_reflection();
    let skew = SkewPolyRing::new(qy, delta, "w");
    let m2 = MatrixRing::new(Rationals, 2);
    // S_{2n} with n = 2; the sabotaged run uses S_{2n-1}, which is not an identity
    let arity = if c.sabotage { 3 } else { 4 };
    run_trials(c, |rng| {
        let xs: Vec<_> = (0..arity).map(|_| skew.sample(rng)).collect();
        let s = standard_poly(&skew, arity, &xs)?;
        if !skew.is_zero(&s) {
            return Err(Failure::new(format!("S_{arity} does not vanish on Q[y][w, y -> -y]"))
                .input("x", fmt_list(&skew, &xs))
                .residual(skew.format(&s)));
        }
        let ms: Vec<_> = (0..arity).map(|_| m2.sample(rng)).collect();
        let s = standard_poly(&m2, arity, &ms)?;
        if !m2.is_zero(&s) {
            return Err(Failure::new(format!("S_{arity} does not vanish on M_2(Q)"))
                .input("x", fmt_list(&m2, &ms))
                .residual(m2.format(&s)));
        }
        Ok(())
    })
}

// ---------------------------------------------------------------------------
// Suites over members of a twisted or graded matrix algebra

struct MemberSuite<'a>(&'a Campaign);

fn residual_of<R: Ring>(inst: &Instance<R>, p: &SquareMatrix<R::Elem>) -> String {
    match &inst.frame {
        Frame::Twisted { alg, .. } => alg
            .defect(p)
            .map(|d| format!("delta_n(P) - W P W^-1 = {}", format_matrix(&inst.ring, &d)))
            .unwrap_or_else(|e| e.to_string()),
        Frame::Graded { .. } => format_matrix(&inst.ring, p),
    }
}

fn check_member<R: Ring>(inst: &Instance<R>, a: &SquareMatrix<R::Elem>) -> Result<(), Failure> {
    if inst.is_member(a) {
        Ok(())
    } else {
        Err(Failure::new(format!("sampled matrix is not in {}", inst.label))
            .input("A", format_matrix(&inst.ring, a))
            .residual(residual_of(inst, a)))
    }
}

fn admissible<R: Ring>(inst: &Instance<R>, a: &SquareMatrix<R::Elem>, what: &str, x: &R::Elem) -> Result<(), Failure> {
    if inst.is_admissible(x) {
        Ok(())
    } else {
        Err(Failure::new(format!("{what} is not in {}", inst.subring_name()))
            .input("A", format_matrix(&inst.ring, a))
            .residual(inst.ring.format(x)))
    }
}

fn perturbed<R: Ring>(inst: &Instance<R>, mut a: SquareMatrix<R::Elem>) -> SquareMatrix<R::Elem> {
    let bumped = inst.ring.add(a.get(0, 0), &inst.off);
    a.set(0, 0, bumped);
    a
}

fn char_polys<R: Ring>(
    inst: &Instance<R>,
    a: &SquareMatrix<R::Elem>,
    k: usize,
    rule: AdjointRule,
) -> Result<Vec<CharPolyResult<R::Elem>>, AlgebraError> {
    [Side::Right, Side::Left].into_iter().map(|side| char_poly_with(&inst.ring, a, k, side, rule)).collect()
}

impl MemberSuite<'_> {
    fn trial<R: QAlgebra + UnitInverse + ParseElement>(&self, inst: &Instance<R>, rng: &mut TrialRng) -> Result<(), Failure> {
        let c = self.0;
        let ring = &inst.ring;
        let rule = c.rule();
        let a = inst.sample_member(rng);
        match c.suite {
            Suite::TraceFixed => {
                check_member(inst, &a)?;
                let mut tr = crate::matrix::trace(ring, &a);
                if c.sabotage {
                    tr = ring.add(&tr, &inst.off);
                }
                admissible(inst, &a, "tr(A)", &tr)
            }
            Suite::PreadjointClosure | Suite::GradedClosure => {
                check_member(inst, &a)?;
                let p = rule.apply(ring, &a)?;
                if inst.is_member(&p) {
                    Ok(())
                } else {
                    Err(Failure::new(format!("preadjoint leaves {}", inst.label))
                        .input("A", format_matrix(ring, &a))
                        .residual(residual_of(inst, &p)))
                }
            }
            Suite::DeterminantsFixed | Suite::GradedDeterminants => {
                check_member(inst, &a)?;
                for k in 1..=c.k {
                    admissible(inst, &a, &format!("rdet_{k}(A)"), &rdet_with(ring, &a, k, rule)?)?;
                    admissible(inst, &a, &format!("ldet_{k}(A)"), &ldet_with(ring, &a, k, rule)?)?;
                }
                if c.suite == Suite::GradedDeterminants {
                    for p in char_polys(inst, &a, c.k, rule)? {
                        for (t, l) in p.coefficients.iter().enumerate() {
                            admissible(inst, &a, &format!("{:?} characteristic coefficient lambda_{t}", p.side), l)?;
                        }
                    }
                }
                Ok(())
            }
            Suite::CharpolyFixed => {
                check_member(inst, &a)?;
                for p in char_polys(inst, &a, c.k, rule)? {
                    for (t, l) in p.coefficients.iter().enumerate() {
                        admissible(inst, &a, &format!("{:?} characteristic coefficient lambda_{t}", p.side), l)?;
                    }
                }
                Ok(())
            }
            Suite::CayleyHamilton => {
                check_member(inst, &a)?;
                cayley_hamilton(inst, &a, c.k, rule, false)
            }
            Suite::Supermatrix | Suite::RhoShape | Suite::SigmaShape => self.shape_trial(inst, a, rng),
            _ => unreachable!("not a member suite"),
        }
    }

    fn shape_trial<R: QAlgebra + UnitInverse + ParseElement>(
        &self,
        inst: &Instance<R>,
        a: SquareMatrix<R::Elem>,
        rng: &mut TrialRng,
    ) -> Result<(), Failure> {
        let c = self.0;
        let ring = &inst.ring;
        let a = if c.sabotage { perturbed(inst, a) } else { a };
        check_member(inst, &a)?;
        if inst.shape(&a) == Some(false) {
            return Err(Failure::new("member fails the entrywise shape description").input("A", format_matrix(ring, &a)));
        }
        // dense matrices: membership and the shape description must agree
        let mr = MatrixRing::new(ring.clone(), inst.n);
        for _ in 0..4 {
            let mut b = mr.sample(rng);
            if rand::Rng::gen_bool(rng, 0.5) {
                b = mat_add(ring, &inst.sample_member(rng), &crate::matrix::unit_matrix(ring, inst.n, 0, inst.n - 1))?;
            }
            let member = inst.is_member(&b);
            if inst.shape(&b).is_some_and(|s| s != member) {
                return Err(Failure::new(format!("membership says {member} but the shape description disagrees"))
                    .input("B", format_matrix(ring, &b)));
            }
            if let (Frame::Twisted { alg, transitive: Some(t) }, true) = (&inst.frame, true) {
                if membership_delta_t(ring, t, alg.delta(), &b) != member {
                    return Err(Failure::new("entrywise delta/T test disagrees with delta_n(B) = W B W^-1")
                        .input("B", format_matrix(ring, &b)));
                }
            }
        }
        match c.suite {
            Suite::Supermatrix => {
                // integral over E_0 of degree n^2
                cayley_hamilton(inst, &a, 2, c.rule(), true)?;
                supermatrix_embedding(inst, rng)
            }
            Suite::SigmaShape => {
                let delta = inst.delta().expect("twisted");
                let probe = ring.generators().pop().unwrap_or_else(|| ring.one());
                for j in 1..=6 {
                    if ring.eq(&delta.apply_times(ring, &probe, j), &probe) {
                        return Err(Failure::new(format!("sigma^{j} fixes {}", ring.format(&probe))));
                    }
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }
}

fn cayley_hamilton<R: QAlgebra>(
    inst: &Instance<R>,
    a: &SquareMatrix<R::Elem>,
    k: usize,
    rule: AdjointRule,
    right_only: bool,
) -> Result<(), Failure> {
    let ring = &inst.ring;
    let q = ring.from_bigint(&expected_leading(inst.n, k));
    let sides: &[Side] = if right_only { &[Side::Right] } else { &[Side::Right, Side::Left] };
    for &side in sides {
        let p = char_poly_with(ring, a, k, side, rule)?;
        if p.coefficients.len() != p.degree() + 1 || !ring.eq(p.leading(), &q) {
            return Err(Failure::new(format!("{side:?} leading coefficient is not {}", ring.format(&q)))
                .input("A", format_matrix(ring, a))
                .residual(ring.format(p.leading())));
        }
        if right_only {
            for (t, l) in p.coefficients.iter().enumerate() {
                admissible(inst, a, &format!("lambda_{t}"), l)?;
            }
        }
        let value = match side {
            Side::Right => right_substitute(ring, &p, a)?,
            Side::Left => left_substitute(ring, &p, a)?,
        };
        if !is_zero_matrix(ring, &value) {
            return Err(Failure::new(format!("{side:?} substitution of the degree-{} characteristic polynomial is not zero", p.degree()))
                .input("A", format_matrix(ring, a))
                .residual(format_matrix(ring, &value)));
        }
    }
    Ok(())
}

/// `M_n(R) -> M_2(M_n(R), delta_n, P^(-1))`, flattened to `2n x 2n`, lands in
/// the supermatrix algebra `M_{2n}(R, delta, P(n, 2n))` and is multiplicative.
fn supermatrix_embedding<R: QAlgebra + UnitInverse>(inst: &Instance<R>, rng: &mut TrialRng) -> Result<(), Failure> {
    let ring = &inst.ring;
    let n = inst.n;
    if 2 * n > crate::det::MAX_SIZE {
        return Ok(());
    }
    let delta = inst.delta().expect("twisted").clone();
    let mr = MatrixRing::new(ring.clone(), n);
    let delta_n = EntrywiseEndomorphism::new(delta.clone());
    let g = [identity(ring, n), crate::matrix::mat_neg(ring, &identity(ring, n))];
    let vd = vandermonde(&mr, &g)?;
    let flat = |x: &SquareMatrix<SquareMatrix<R::Elem>>| {
        SquareMatrix::from_fn(2 * n, |p, q| x.get(p / n, q / n).get(p % n, q % n).clone())
    };
    let pattern = supermatrix_pattern(ring, n, 2 * n)?;
    let x = mr.sample(rng);
    let y = mr.sample(rng);
    let ex = embed_vandermonde(&mr, &delta_n, &vd, &x)?;
    let ey = embed_vandermonde(&mr, &delta_n, &vd, &y)?;
    let exy = embed_vandermonde(&mr, &delta_n, &vd, &mr.mul(&x, &y))?;
    if !membership_delta_t(ring, &pattern, &delta, &flat(&ex)) {
        return Err(Failure::new(format!("embedded M_{n} element is not a {0}x{0} supermatrix", 2 * n))
            .input("X", format_matrix(ring, &x))
            .residual(format_matrix(ring, &flat(&ex))));
    }
    if exy != mat_mul(&mr, &ex, &ey)? {
        return Err(Failure::new("embedding of M_n into supermatrices is not multiplicative")
            .input("X", format_matrix(ring, &x))
            .input("Y", format_matrix(ring, &y)));
    }
    Ok(())
}

impl InstanceVisitor for MemberSuite<'_> {
    type Output = Vec<Outcome>;
    fn visit<R: QAlgebra + UnitInverse + ParseElement + 'static>(self, inst: Instance<R>) -> Vec<Outcome> {
        run_trials(self.0, |rng| self.trial(&inst, rng))
    }
}

// ---------------------------------------------------------------------------
// Embeddings and integrality witnesses

struct VandermondeSuite<'a>(&'a Campaign);

impl InstanceVisitor for VandermondeSuite<'_> {
    type Output = Vec<Outcome>;
    fn visit<R: QAlgebra + UnitInverse + ParseElement + 'static>(self, inst: Instance<R>) -> Vec<Outcome> {
        let c = self.0;
        let ring = &inst.ring;
        let n = inst.n;
        let root = inst.root.clone().expect("rho_e instances carry their root");
        let g: Vec<_> = (0..n).map(|i| ring.pow(&root, i)).collect();
        let delta = inst.delta().expect("twisted").clone();
        let used: Endo<R> = if c.sabotage { std::sync::Arc::new(IdentityEndomorphism) } else { delta };
        let vd = vandermonde(ring, &g);
        run_trials(c, |rng| {
            let vd = vd.as_ref().map_err(|e| Failure::new(e.to_string()))?;
            let id = identity(ring, n);
            if mat_mul(ring, &vd.v, &vd.u)? != id || mat_mul(ring, &vd.u, &vd.v)? != id {
                return Err(Failure::new("V U or U V is not the identity").input("g", fmt_list(ring, &g)));
            }
            let r = ring.sample(rng);
            let s = ring.sample(rng);
            let er = embed_vandermonde(ring, used.as_ref(), vd, &r)?;
            let es = embed_vandermonde(ring, used.as_ref(), vd, &s)?;
            if !inst.is_member(&er) {
                return Err(Failure::new(format!("V diag(r) V^-1 is not in {}", inst.label))
                    .input("r", ring.format(&r))
                    .residual(residual_of(&inst, &er)));
            }
            if embed_vandermonde(ring, used.as_ref(), vd, &ring.mul(&r, &s))? != mat_mul(ring, &er, &es)? {
                return Err(Failure::new("Vandermonde embedding is not multiplicative")
                    .input("r", ring.format(&r))
                    .input("s", ring.format(&s)));
            }
            Ok(())
        })
    }
}

struct DeltaSuite<'a>(&'a Campaign);

fn sample_linear_skew<R: Ring>(skew: &SkewPolyRing<R>, rng: &mut TrialRng) -> Poly<R::Elem> {
    let base = skew.base();
    skew.from_coefficients(vec![base.sample(rng), base.sample(rng)])
}

impl DeltaSuite<'_> {
    fn diagonal<R: QAlgebra>(&self, inst: &Instance<R>, rng: &mut TrialRng) -> Result<(), Failure> {
        let c = self.0;
        let ring = &inst.ring;
        let n = inst.n;
        let delta = inst.delta().expect("twisted").clone();
        let used: Endo<R> = if c.sabotage { std::sync::Arc::new(IdentityEndomorphism) } else { delta.clone() };
        let r = ring.sample(rng);
        let s = ring.sample(rng);
        let dr = embed_diagonal(ring, used.as_ref(), n, &r);
        let ds = embed_diagonal(ring, used.as_ref(), n, &s);
        if !inst.is_member(&dr) {
            return Err(Failure::new(format!("diag_delta(r) is not in {}", inst.label))
                .input("r", ring.format(&r))
                .residual(residual_of(inst, &dr)));
        }
        if embed_diagonal(ring, used.as_ref(), n, &ring.mul(&r, &s)) != mat_mul(ring, &dr, &ds)?
            || embed_diagonal(ring, used.as_ref(), n, &ring.add(&r, &s)) != mat_add(ring, &dr, &ds)?
        {
            return Err(Failure::new("diagonal embedding is not a ring homomorphism")
                .input("r", ring.format(&r))
                .input("s", ring.format(&s)));
        }
        let skew = SkewPolyRing::new(ring.clone(), delta, "w");
        let f = sample_linear_skew(&skew, rng);
        let g = sample_linear_skew(&skew, rng);
        let rz = crate::poly::PolyRing::new(ring.clone(), "z");
        let lhs = embed_skew(&skew, n, &skew.mul(&f, &g))?;
        let rhs = mat_mul(&rz, &embed_skew(&skew, n, &f)?, &embed_skew(&skew, n, &g)?)?;
        if lhs != rhs {
            return Err(Failure::new("skew embedding is not multiplicative")
                .input("f", skew.format(&f))
                .input("g", skew.format(&g))
                .residual(format_matrix(&rz, &mat_sub(&rz, &lhs, &rhs)?)));
        }
        Ok(())
    }

    fn integrality<R: QAlgebra>(&self, inst: &Instance<R>, rng: &mut TrialRng) -> Result<(), Failure> {
        let c = self.0;
        let ring = &inst.ring;
        let r = ring.sample(rng);
        let w = match inst.grading() {
            Some(grading) => graded_integrality_witness(ring, grading, c.k, &r, &c.options())?,
            None => integrality_witness(ring, inst.delta().expect("twisted"), c.k, &r, &c.options())?,
        };
        let expected = inst.n.pow(c.k as u32);
        if w.relation_degree != expected || !w.verified(ring) {
            let mut f = Failure::new(format!(
                "relation of degree {} (expected {expected}): leading {}, coefficients in {}: {}",
                w.relation_degree,
                if w.leading_matches { "matches" } else { "does not match" },
                inst.subring_name(),
                w.coefficients_admissible
            ))
            .input("r", ring.format(&r))
            .residual(ring.format(&w.residual));
            for (t, x) in w.coefficients.iter().enumerate() {
                f = f.input(format!("c_{t}"), ring.format(x));
            }
            return Err(f);
        }
        Ok(())
    }

    fn skew<R: QAlgebra>(&self, inst: &Instance<R>, rng: &mut TrialRng) -> Result<(), Failure> {
        let c = self.0;
        let ring = &inst.ring;
        let delta = inst.delta().expect("twisted").clone();
        let n = delta.declared_order().unwrap_or(inst.n);
        let skew = SkewPolyRing::new(ring.clone(), delta.clone(), "w");
        let f = sample_linear_skew(&skew, rng);
        let w = skew_integrality_witness(&skew, c.k, &f, &c.options()).map_err(|e| Failure::from(e).input("f", skew.format(&f)))?;
        for (t, g) in w.coefficients.iter().enumerate() {
            for (i, x) in g.coefficients().iter().enumerate() {
                if !ring.is_zero(x) && (i % n != 0 || !fix_membership(ring, delta.as_ref(), x)) {
                    return Err(Failure::new(format!("g_{t} has a term outside Fix(delta)[w^{n}]"))
                        .input("f", skew.format(&f))
                        .residual(skew.format(g)));
                }
            }
        }
        if w.relation_degree != n.pow(c.k as u32) || !w.verified(&skew) {
            return Err(Failure::new(format!("skew relation of degree {} fails", w.relation_degree))
                .input("f", skew.format(&f))
                .residual(skew.format(&w.residual)));
        }
        Ok(())
    }
}

impl InstanceVisitor for DeltaSuite<'_> {
    type Output = Vec<Outcome>;
    fn visit<R: QAlgebra + UnitInverse + ParseElement + 'static>(self, inst: Instance<R>) -> Vec<Outcome> {
        run_trials(self.0, |rng| match self.0.suite {
            Suite::DiagonalEmbedding => self.diagonal(&inst, rng),
            Suite::Integrality | Suite::GradedIntegrality => self.integrality(&inst, rng),
            Suite::SkewIntegrality => self.skew(&inst, rng),
            _ => unreachable!("not a delta suite"),
        })
    }
}

#[allow(dead_code)]
fn _grading_is_object_safe(_: &DegreeResidueGrading) {}

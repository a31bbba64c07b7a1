//! Named verification suites over small spaces, with deterministic reports.

mod algebra;
mod conjugacy;
mod groups;
mod report;

use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::clifford::CliffordElem;
use crate::error::{Error, Result};
use crate::gpin::{enumerate_gpin, enumerate_isometries, enumeration_cap, GPinElem};
use crate::quadspace::{Isometry, QuadSpace};
use crate::scalars::{Field, Scalar, Vector};

pub use report::{emit_report, parse_report, CheckTally, ConfigEcho, Failure, Finding, Format, Status, SuiteReport};
pub(crate) use report::Recorder;

/// Which diagonal forms a suite visits for each field and dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Forms {
    /// Over F_p, every diagonal form with entries 1 or the least nonresidue
    /// up to dimension 3.
    Exhaustive,
    /// Two forms with different discriminants.
    Representative,
}

type Runner = fn(&mut Recorder, &Arc<QuadSpace>, &mut Env) -> Result<()>;

pub struct SuiteSpec {
    pub id: &'static str,
    /// What the suite checks, ending with a `Covers:` list of result identifiers.
    pub doc: &'static str,
    fields: &'static [Field],
    dims: &'static [usize],
    slow_dims: &'static [usize],
    forms: Forms,
    runner: Runner,
}

impl SuiteSpec {
    /// Result identifiers listed after `Covers:` in the documentation.
    pub fn covers(&self) -> Vec<&'static str> {
        let Some((_, list)) = self.doc.split_once("Covers:") else {
            return Vec::new();
        };
        list.split(|c: char| c == ',' || c.is_whitespace() || c == '.').filter(|s| !s.is_empty()).collect()
    }
}

const F3: Field = Field::Prime(3);
const F5: Field = Field::Prime(5);
const Q: Field = Field::Rational;

/// Every structural result verified by some suite.
pub const RESULTS: &[&str] = &[
    "anticommuting-orthogonal-vectors",
    "clifford-dimension",
    "involution-laws",
    "involution-summary",
    "zeta-lemma",
    "homogeneity-lemma",
    "canonical-projection",
    "clifford-norm",
    "center-proposition",
    "sigma-fixes-center",
    "subspace-inclusions",
    "commuting-elements",
    "zeta-almost-commutes",
    "semidirect-product",
    "pin-spin-spinor-norm",
    "mvw-lemma",
    "mvw-block-construction",
    "centralizer-decomposition",
    "unitary-trace-form",
    "gl-trace-form",
    "centralizer-so-variant",
    "gpin-centralizer-image",
    "gspin-centralizer-image",
    "conjugate-without-orthogonal-factor",
    "conjugate-orthogonal-factor",
    "sigma-conjugacy-theorem",
    "odd-dimension-reduction",
    "involution-choice",
    "gspin-twisted-conjugacy",
    "gspin-odd-conjugacy",
    "tilde-groups",
    "tilde-action",
    "tau-w",
    "gspin-tilde-group",
];

pub const SUITES: &[SuiteSpec] = &[
    SuiteSpec {
        id: "clifford-axioms",
        doc: "Associativity, distributivity and generator relations on random triples; blade counts 2^n with \
              equal even and odd parts; alpha, reversal and the Clifford involution are involutions with the \
              expected (anti)multiplicativity; sigma_V is an involutive anti-automorphism of the group. \
              Covers: anticommuting-orthogonal-vectors, clifford-dimension, involution-laws, involution-summary.",
        fields: &[Q, F3],
        dims: &[1, 2, 3, 4, 5],
        slow_dims: &[1, 2, 3, 4, 5],
        forms: Forms::Representative,
        runner: algebra::clifford_axioms,
    },
    SuiteSpec {
        id: "zeta",
        doc: "The product zeta of the orthogonal basis: P(zeta) = -1, the reversal sign, zeta^2 against the \
              discriminant and the (graded) centrality of zeta. Covers: zeta-lemma.",
        fields: &[Q, F3, F5],
        dims: &[1, 2, 3, 4, 5],
        slow_dims: &[1, 2, 3, 4, 5],
        forms: Forms::Representative,
        runner: algebra::zeta,
    },
    SuiteSpec {
        id: "centers",
        doc: "Group layer over enumerated GPin(V): homogeneity, P surjective onto O(V) with kernel the scalars, \
              P a homomorphism, sign = det, multiplicative norm, and centers of GPin and GSpin against brute \
              force, with sigma_V fixing the center. Covers: homogeneity-lemma, canonical-projection, \
              clifford-norm, center-proposition, sigma-fixes-center.",
        fields: &[F3],
        dims: &[1, 2, 3],
        slow_dims: &[1, 2, 3, 4],
        forms: Forms::Exhaustive,
        runner: groups::centers,
    },
    SuiteSpec {
        id: "inclusions",
        doc: "GPin(W) and GSpin(W) for W spanned by all but the last basis vector embed into GPin(V), GSpin(V) \
              with projections fixing the last basis vector. Covers: subspace-inclusions.",
        fields: &[F3],
        dims: &[2, 3, 4],
        slow_dims: &[2, 3, 4],
        forms: Forms::Exhaustive,
        runner: groups::inclusions,
    },
    SuiteSpec {
        id: "commuting",
        doc: "For coordinate splits V = V1 + V2, elements of GPin(V1) and GPin(V2) commute unless both are odd, \
              when they anticommute; in even dimension g zeta = sign(g) zeta g. \
              Covers: commuting-elements, zeta-almost-commutes.",
        fields: &[F3],
        dims: &[3, 4],
        slow_dims: &[3, 4],
        forms: Forms::Exhaustive,
        runner: groups::commuting,
    },
    SuiteSpec {
        id: "semidirect",
        doc: "Odd n: a central odd involution exists exactly when the discriminant is a square, and then splits \
              GPin as a direct product; even n: an odd involution t gives a semidirect product. \
              Covers: semidirect-product.",
        fields: &[F3, F5],
        dims: &[1, 2, 3],
        slow_dims: &[1, 2, 3, 4],
        forms: Forms::Exhaustive,
        runner: algebra::semidirect,
    },
    SuiteSpec {
        id: "pin-spin",
        doc: "Pin and Spin as the norm-one subgroups, the spinor norm as the Clifford norm of a lift modulo \
              squares, its multiplicativity, and P(Pin(V)) as its kernel. Covers: pin-spin-spinor-norm.",
        fields: &[F3, F5],
        dims: &[1, 2, 3],
        slow_dims: &[1, 2, 3],
        forms: Forms::Exhaustive,
        runner: algebra::pin_spin,
    },
    SuiteSpec {
        id: "mvw",
        doc: "Every h in O(V) is conjugate to its inverse (brute force); for semisimple h the blockwise \
              construction verifies and has the predicted block determinants. Covers: mvw-lemma, \
              mvw-block-construction.",
        fields: &[F3, F5],
        dims: &[2, 3],
        slow_dims: &[2, 3],
        forms: Forms::Exhaustive,
        runner: conjugacy::mvw,
    },
    SuiteSpec {
        id: "centralizer-orders",
        doc: "Block decomposition of O(V)_h for semisimple h: trace-form recovery on unitary and GL blocks, \
              predicted orders of O(V)_h and SO(V)_h against commutant counts, and the images of the GPin and \
              GSpin centralizers against brute-force projections. Covers: centralizer-decomposition, \
              unitary-trace-form, gl-trace-form, centralizer-so-variant, gpin-centralizer-image, \
              gspin-centralizer-image.",
        fields: &[F3, F5],
        dims: &[1, 2, 3],
        slow_dims: &[1, 2, 3, 4],
        forms: Forms::Exhaustive,
        runner: conjugacy::centralizer_orders,
    },
    SuiteSpec {
        id: "conjugacy",
        doc: "Every semisimple g is conjugate to sigma_V(g) through a certified eta with the block determinant \
              constraints and det P(eta) = (-1)^k on GSpin; the orthogonal-free and zeta_- cases; the odd \
              dimension reduction; the Clifford involution in even dimension. Failures to repair are reported \
              as findings. Covers: conjugate-without-orthogonal-factor, conjugate-orthogonal-factor, \
              sigma-conjugacy-theorem, odd-dimension-reduction, involution-choice.",
        fields: &[F3],
        dims: &[1, 2, 3],
        slow_dims: &[1, 2, 3, 4],
        forms: Forms::Exhaustive,
        runner: conjugacy::conjugacy,
    },
    SuiteSpec {
        id: "gspin-conjugacy",
        doc: "Semisimple g in GSpin(V) is conjugate to e^k sigma_V(g) e^-k inside GSpin(V), and for odd n to \
              sigma_V(g) itself. Covers: gspin-twisted-conjugacy, gspin-odd-conjugacy.",
        fields: &[F3],
        dims: &[1, 2, 3],
        slow_dims: &[1, 2, 3, 4],
        forms: Forms::Exhaustive,
        runner: conjugacy::gspin_conjugacy,
    },
    SuiteSpec {
        id: "tilde-actions",
        doc: "The extended groups with beta: action axioms, (t beta)^2 acting trivially, beta central, chi a \
              homomorphism with kernel the plain group; tau_W preserves GPin(W) and GSpin(W) and is an \
              involution. Covers: tilde-groups, tilde-action, tau-w, gspin-tilde-group.",
        fields: &[F3],
        dims: &[3, 4],
        slow_dims: &[3, 4],
        forms: Forms::Representative,
        runner: conjugacy::tilde_actions,
    },
];

pub fn suite(id: &str) -> Result<&'static SuiteSpec> {
    SUITES.iter().find(|s| s.id == id).ok_or_else(|| Error::UnknownSuite(id.to_string()))
}

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    /// Run on this space only.
    pub space: Option<Arc<QuadSpace>>,
    /// Restrict the default spaces to this field.
    pub field: Option<Field>,
    /// Restrict the default spaces to this dimension.
    pub dim: Option<usize>,
    pub seed: u64,
    pub slow: bool,
    pub cap: usize,
}

impl Default for SuiteConfig {
    fn default() -> SuiteConfig {
        SuiteConfig { space: None, field: None, dim: None, seed: 0, slow: false, cap: enumeration_cap() }
    }
}

pub(crate) struct Env {
    pub rng: ChaCha8Rng,
    pub cap: usize,
}

fn diagonal_forms(field: Field, n: usize, forms: Forms) -> Vec<Vec<i64>> {
    match field {
        Field::Rational => {
            let a = [1, 2, 3, 5, 7, 11];
            let b = [-1, 2, 3, 5, 7, 11];
            let cycle = |base: &[i64]| (0..n).map(|i| base[i % base.len()]).collect::<Vec<i64>>();
            vec![cycle(&a), cycle(&b)]
        }
        Field::Prime(_) => {
            let Field::Prime(p) = field else { unreachable!() };
            let nr = (2..p as i64).find(|&a| !field.from_i64(a).is_square()).unwrap_or(1);
            match forms {
                Forms::Representative => {
                    let mut second = vec![1; n];
                    second[0] = nr;
                    vec![vec![1; n], second]
                }
                Forms::Exhaustive => (0..1usize << n)
                    .map(|bits| (0..n).map(|i| if bits >> i & 1 == 1 { nr } else { 1 }).collect())
                    .collect(),
            }
        }
    }
}

/// The spaces a suite visits under `config`, in a fixed order.
pub fn spaces_for(spec: &SuiteSpec, config: &SuiteConfig) -> Result<Vec<Arc<QuadSpace>>> {
    if let Some(space) = &config.space {
        return Ok(vec![space.clone()]);
    }
    let fields: Vec<Field> = match config.field {
        Some(f) => vec![f],
        None => spec.fields.to_vec(),
    };
    let dims: Vec<usize> = match config.dim {
        Some(0) => return Err(Error::DimensionMismatch { expected: 1, got: 0 }),
        Some(d) => vec![d],
        None if config.slow => spec.slow_dims.to_vec(),
        None => spec.dims.to_vec(),
    };
    let mut out = Vec::new();
    for field in fields {
        for &n in &dims {
            // Over F_p the discriminant fixes the isometry class, so from
            // dimension 4 on one form per class is visited.
            let forms = if n >= 4 { Forms::Representative } else { spec.forms };
            for diag in diagonal_forms(field, n, forms) {
                out.push(Arc::new(QuadSpace::diagonal(field, &diag)?));
            }
        }
    }
    Ok(out)
}

pub fn run_suite(id: &str, config: &SuiteConfig) -> Result<SuiteReport> {
    let spec = suite(id)?;
    let start = Instant::now();
    let spaces = spaces_for(spec, config)?;
    let mut env = Env { rng: ChaCha8Rng::seed_from_u64(config.seed), cap: config.cap };
    let mut rec = Recorder::default();
    for space in &spaces {
        (spec.runner)(&mut rec, space, &mut env)?;
    }
    let echo = ConfigEcho { spaces: spaces.iter().map(|s| s.to_string()).collect(), seed: config.seed, slow: config.slow };
    Ok(rec.finish(spec.id, echo, start.elapsed()))
}

// Sampling helpers shared by the runners.

pub(crate) fn show_vector(v: &[Scalar]) -> String {
    let parts: Vec<String> = v.iter().map(Scalar::to_string).collect();
    format!("({})", parts.join(", "))
}

pub(crate) fn random_scalar(field: Field, rng: &mut ChaCha8Rng) -> Scalar {
    match field {
        Field::Rational => field.from_i64(rng.gen_range(-3..=3)),
        Field::Prime(p) => field.from_i64(rng.gen_range(0..p as i64)),
    }
}

pub(crate) fn random_nonzero(field: Field, rng: &mut ChaCha8Rng) -> Scalar {
    loop {
        let s = random_scalar(field, rng);
        if !s.is_zero() {
            return s;
        }
    }
}

pub(crate) fn random_vector(space: &QuadSpace, rng: &mut ChaCha8Rng) -> Vector {
    (0..space.dim()).map(|_| random_scalar(space.field(), rng)).collect()
}

pub(crate) fn random_anisotropic(space: &QuadSpace, rng: &mut ChaCha8Rng) -> Vector {
    loop {
        let v = random_vector(space, rng);
        if !space.frame_quadratic(&v).is_zero() {
            return v;
        }
    }
}

pub(crate) fn random_clifford(space: &Arc<QuadSpace>, rng: &mut ChaCha8Rng) -> CliffordElem {
    let terms: Vec<(u32, Scalar)> = (0..1u32 << space.dim()).map(|m| (m, random_scalar(space.field(), rng))).collect();
    CliffordElem::from_terms(space, terms)
}

/// `z v_1 ... v_m` with `m` in `0..=n+1`.
pub(crate) fn random_gpin(space: &Arc<QuadSpace>, rng: &mut ChaCha8Rng) -> GPinElem {
    let m = rng.gen_range(0..=space.dim() + 1);
    let vectors: Vec<Vector> = (0..m).map(|_| random_anisotropic(space, rng)).collect();
    let z = random_nonzero(space.field(), rng);
    GPinElem::from_vectors(space, &vectors, &z).expect("anisotropic vectors")
}

/// The full group over F_p (`exhaustive = true`), or random samples over Q.
pub(crate) fn population(space: &Arc<QuadSpace>, env: &mut Env, samples: usize) -> Result<(Vec<GPinElem>, bool)> {
    match space.field() {
        Field::Prime(_) => Ok((enumerate_gpin(space, false, env.cap)?, true)),
        Field::Rational => Ok(((0..samples).map(|_| random_gpin(space, &mut env.rng)).collect(), false)),
    }
}

pub(crate) fn isometries(space: &Arc<QuadSpace>, env: &mut Env, samples: usize) -> Result<(Vec<Isometry>, bool)> {
    match space.field() {
        Field::Prime(_) => Ok((enumerate_isometries(space, false, env.cap)?, true)),
        Field::Rational => {
            let sampled = (0..samples).map(|_| random_gpin(space, &mut env.rng).projection().clone()).collect();
            Ok((sampled, false))
        }
    }
}

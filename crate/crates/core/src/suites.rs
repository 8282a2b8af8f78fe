//! Named verification suites assembled from the checks of every module.
//!
//! Each suite is a list of check groups. Groups run in parallel; the report
//! keeps the declared group order, so output is independent of scheduling.

use std::collections::BTreeMap;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::catalog::{
    abstract_so5_borel, build_sl2, build_sl2_physical, build_sl4, build_so32, build_so42, so5_borel_rmatrix,
    so5_cartan_matrix, sl4_borel_rmatrix, verify_cartan_matrix, verify_root_vectors, verify_serre_consequences,
    CartanWeylData, CatalogError, ConformalAlgebra, GeneratorDictionary,
};
use crate::hopfseries::{
    all_words, antipode_axiom_residuals, antipode_difference, casimir_expansion, check_hopf_algebra,
    classical_representations, classical_sl2, commutative_part, derive_antipode, evaluate_classical,
    first_order_cocommutator, poly_dimension, printed_antipode, relation_residuals, render_commutative,
    swap_map_check, tensor_dimension, word_matrix, word_text, AntipodeAxiom, DeformedSl2, Gen, Relations, TensorRing,
};
use crate::liealg::{Element, LieAlgebra};
use crate::physmaps::{
    comparison_rmatrices, d3_reading_outcomes, d3_transform_rmatrix, d3_two_mass_rmatrix, d4_null_plane_rmatrix,
    d4_transform_rmatrix, dimension_audit, kappa_rmatrix, legs_within, lorentz_decomposition_check,
    naturality_failures, soft_commutant_check, tachyonic_rmatrix, to_sub_basis, undeformed_sector_check,
    DimensionGrading, D3_POINCARE, D4_POINCARE,
};
use crate::report::{Check, VerificationReport};
use crate::scalars::Scalar;
use crate::star::{
    matching_signs, physical_dagger, so32_borel, so32_involution, so42_borel, so42_involution,
    so42_involution_with_e6_sign,
};
use crate::tensoralg::{cocycle_residual, cybe_residual, w, TwoTensor};

pub const SUITES: [&str; 9] = ["jacobi", "cybe", "reality", "basis-maps", "subalgebras", "hopf", "comparisons", "dimensions", "all"];

/// Truncation order used by the hopf suite.
pub const HOPF_ORDER: usize = 6;

/// Random instances per algebra for the cocycle identity.
pub const COCYCLE_SAMPLES: usize = 100;

#[derive(Debug, Error)]
pub enum SuiteError {
    #[error("unknown suite `{0}` (expected one of: {list})", list = SUITES.join(", "))]
    UnknownSuite(String),
    #[error("no check matches claim `{0}`")]
    UnknownClaim(String),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
}

/// Every algebra the suites draw on.
#[derive(Clone, Debug)]
pub struct Catalog {
    pub sl2: LieAlgebra,
    pub so32: ConformalAlgebra,
    pub so42: ConformalAlgebra,
    pub sl4: LieAlgebra,
}

impl Catalog {
    pub fn build() -> Result<Self, CatalogError> {
        Ok(Catalog { sl2: build_sl2(), so32: build_so32()?, so42: build_so42()?, sl4: build_sl4() })
    }

    /// A copy with one sl(2) and one sl(4) structure constant shifted, for mutation tests.
    pub fn corrupted(&self) -> Self {
        let one = Scalar::one();
        let sl2 = self.sl2.perturbed(1, 2, 1, &one);
        let sl4 = self.sl4.perturbed(3, 4, 7, &one);
        Catalog { sl2, sl4, ..self.clone() }
    }
}

type Group = (&'static str, fn(&Catalog) -> Vec<Check>);

fn groups(suite: &str) -> Option<Vec<Group>> {
    let g: Vec<Group> = match suite {
        "jacobi" => vec![("jacobi", jacobi_checks)],
        "cybe" => vec![("cybe", cybe_checks), ("cybe.cocycle", cocycle_checks)],
        "reality" => vec![("reality", reality_checks)],
        "basis-maps" => vec![("basis-maps.roots", root_checks), ("basis-maps.dictionaries", dictionary_checks)],
        "subalgebras" => vec![("subalgebras", subalgebra_checks)],
        "hopf" => vec![("hopf", |_| hopf_checks(HOPF_ORDER, true)), ("hopf.properties", hopf_property_checks)],
        "comparisons" => vec![("comparisons", comparison_checks)],
        "dimensions" => vec![("dimensions", dimension_checks)],
        "all" => {
            let mut all = Vec::new();
            for s in &SUITES[..SUITES.len() - 1] {
                all.extend(groups(s).expect("listed suite"));
            }
            all
        }
        _ => return None,
    };
    Some(g)
}

/// Runs a named suite against `catalog`.
pub fn run_suite(catalog: &Catalog, name: &str) -> Result<VerificationReport, SuiteError> {
    let gs = groups(name).ok_or_else(|| SuiteError::UnknownSuite(name.to_string()))?;
    let results: Vec<(&str, Vec<Check>, f64)> = gs
        .par_iter()
        .map(|(label, f)| {
            let start = Instant::now();
            let checks = f(catalog);
            (*label, checks, start.elapsed().as_secs_f64() * 1e3)
        })
        .collect();
    let mut checks = Vec::new();
    let mut times = BTreeMap::new();
    for (label, c, t) in results {
        checks.extend(c);
        times.insert(label.to_string(), t);
    }
    Ok(VerificationReport::new(name, checks, times))
}

/// Runs the full catalog and keeps the checks whose id is `claim` or starts with `claim.`.
pub fn run_claim(catalog: &Catalog, claim: &str) -> Result<VerificationReport, SuiteError> {
    let full = run_suite(catalog, "all")?;
    let prefix = format!("{claim}.");
    let checks: Vec<Check> = full.checks.into_iter().filter(|c| c.id == claim || c.id.starts_with(&prefix)).collect();
    if checks.is_empty() {
        return Err(SuiteError::UnknownClaim(claim.to_string()));
    }
    Ok(VerificationReport::new(claim, checks, full.metadata.wall_time_ms))
}

fn error_check(id: &str, what: &str, e: impl std::fmt::Display) -> Check {
    Check::fail(id, what, &format!("error: {e}"))
}

/// Jacobi identity on one algebra.
pub fn jacobi_check(id: &str, g: &LieAlgebra) -> Check {
    let w = g.jacobi_residual();
    Check::from_bool(id, &format!("Jacobi identity holds exactly in {} ({} generators)", g.name(), g.dim()), w.is_none(), || {
        let w = w.as_ref().expect("witness");
        format!("[{}, {}, {}]: residual {}", w.labels[0], w.labels[1], w.labels[2], w.residual)
    })
}

fn jacobi_checks(c: &Catalog) -> Vec<Check> {
    let mut out = vec![
        jacobi_check("jacobi.sl2", &c.sl2),
        jacobi_check("jacobi.so32", &c.so32.ambient),
        jacobi_check("jacobi.so42", &c.so42.ambient),
        jacobi_check("jacobi.sl4", &c.sl4),
    ];
    // so(4,2) Cartan-Weyl images reproduce the sl(4) structure constants
    out.push(match c.so42.cartan_weyl_embedding() {
        Ok(emb) => {
            let same = emb.sub.labels() == c.sl4.labels()
                && emb.sub.structure().zip(c.sl4.structure()).all(|((a, b, x), (p, q, y))| (a, b) == (p, q) && x.to_dense() == y.to_dense())
                && emb.sub.structure().count() == c.sl4.structure().count();
            Check::from_bool(
                "jacobi.so42-sl4-isomorphism",
                "the Cartan-Weyl images in so(4,2) have the structure constants of sl(4)",
                same,
                || "structure constants differ".into(),
            )
        }
        Err(e) => error_check("jacobi.so42-sl4-isomorphism", "Cartan-Weyl images span a subalgebra", e),
    });
    out
}

/// CYBE at one parameter point.
fn cybe_point(id: &str, desc: &str, g: &LieAlgebra, r: &TwoTensor) -> Check {
    match cybe_residual(g, r) {
        Ok(res) => Check::from_bool(id, desc, res.is_zero(), || {
            format!("{} nonzero components, first {}", res.len(), res.first_component().unwrap_or_default())
        }),
        Err(e) => error_check(id, desc, e),
    }
}

fn cybe_checks(c: &Catalog) -> Vec<Check> {
    let so32 = &c.so32;
    let so42 = &c.so42;
    let mut out = Vec::new();
    for (c1, c2) in [(1, 0), (0, 1), (1, 1)] {
        let r = so5_borel_rmatrix(&|l| so32.get(l), &Scalar::from_int(c1), &Scalar::from_int(c2));
        out.push(cybe_point(
            &format!("cybe.so5.at-{c1}-{c2}"),
            &format!("CYBE for c1(h1∧e4 − e1∧e3) + c2 h2∧e4 at (c1,c2) = ({c1},{c2})"),
            &so32.ambient,
            &r,
        ));
    }
    let g = &so32.ambient;
    let e1 = so32.get("e1");
    let e3n = g.br(&e1, &so32.get("e2"));
    let e4n = g.br(&e1, &e3n);
    let variant = &w(&so32.get("h1"), &e4n) + &w(&e1, &e3n);
    out.push(cybe_point(
        "cybe.so5.sign-variant",
        "CYBE for h1∧e4' + e1∧e3' with e3' = [e1,e2], e4' = [e1,e3']",
        g,
        &variant,
    ));
    for (c1, c2) in [(1, 2), (1, 0), (0, 1)] {
        let r = sl4_borel_rmatrix(&|l| so42.get(l), &Scalar::from_int(c1), &Scalar::from_int(c2));
        out.push(cybe_point(
            &format!("cybe.sl4.at-{c1}-{c2}"),
            &format!("CYBE for c1(h1−h3)∧e6 + c2(h3∧e6 + e1∧e5 − e3∧e4) at ({c1},{c2})"),
            &so42.ambient,
            &r,
        ));
    }
    let sl2 = &c.sl2;
    out.push(cybe_point("cybe.sl2.nonstandard", "CYBE for h∧e_plus", sl2, &w(&sl2.el("h"), &sl2.el("e_plus"))));
    let rs = w(&sl2.el("e_plus"), &sl2.el("e_minus"));
    out.push(match cybe_residual(sl2, &rs) {
        Ok(res) => Check::from_bool("cybe.sl2.standard-nonzero", "CYBE residual of e_plus∧e_minus is nonzero", !res.is_zero(), || {
            "residual vanishes".into()
        }),
        Err(e) => error_check("cybe.sl2.standard-nonzero", "CYBE residual of e_plus∧e_minus", e),
    });
    out
}

/// A random element with up to four nonzero Gaussian-rational coordinates.
fn random_element(g: &LieAlgebra, rng: &mut ChaCha8Rng) -> Element {
    let terms: Vec<(usize, Scalar)> = (0..4)
        .map(|_| {
            let re = Scalar::ratio(rng.random_range(-3..=3), rng.random_range(1..=3));
            let im = Scalar::from_int(rng.random_range(-2..=2));
            (rng.random_range(0..g.dim()), &re + &(&im * &Scalar::i()))
        })
        .collect();
    Element::from_terms(g.basis(), terms)
}

/// The coboundary 1-cocycle identity on seeded random `(x, y, r)` triples.
pub fn cocycle_check(id: &str, g: &LieAlgebra, seed: u64, samples: usize) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let triples: Vec<(Element, Element, TwoTensor)> = (0..samples)
        .map(|_| {
            let x = random_element(g, &mut rng);
            let y = random_element(g, &mut rng);
            let r = &w(&random_element(g, &mut rng), &random_element(g, &mut rng)) + &w(&random_element(g, &mut rng), &random_element(g, &mut rng));
            (x, y, r)
        })
        .collect();
    let bad = triples.par_iter().position_first(|(x, y, r)| !cocycle_residual(g, x, y, r).map(|t| t.is_zero()).unwrap_or(false));
    Check::from_bool(
        id,
        &format!("δ([x,y]) = x·δ(y) − y·δ(x) on {samples} seeded random instances in {}", g.name()),
        bad.is_none(),
        || format!("instance {} fails", bad.unwrap_or_default()),
    )
}

fn cocycle_checks(c: &Catalog) -> Vec<Check> {
    vec![
        cocycle_check("cybe.cocycle.sl2", &c.sl2, 2, COCYCLE_SAMPLES),
        cocycle_check("cybe.cocycle.so32", &c.so32.ambient, 32, COCYCLE_SAMPLES),
        cocycle_check("cybe.cocycle.so42", &c.so42.ambient, 42, COCYCLE_SAMPLES),
    ]
}

fn reality_checks(c: &Catalog) -> Vec<Check> {
    let mut out = Vec::new();
    match so32_borel(&c.so32) {
        Ok(emb) => {
            let borel = &emb.sub;
            let get = |l: &str| borel.el(l);
            let points = [(1, 0), (0, 1), (1, 1), (3, 5)];
            let mut stars = Vec::new();
            for (lambda, eps) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                let s = so32_involution(borel, lambda, eps);
                let anti = s.check_antiautomorphism();
                let id = format!("reality.so32.lambda{lambda}-eps{eps}");
                out.push(Check::from_bool(
                    &format!("{id}.anti-automorphism"),
                    &format!("({lambda},{eps}) star is an involutive anti-automorphism of the so(5) Borel"),
                    anti.ok(),
                    || anti.witness(),
                ));
                let mut wrong = Vec::new();
                for (c1, c2) in points {
                    let r = so5_borel_rmatrix(&get, &Scalar::from_int(c1), &Scalar::from_int(c2));
                    let real = s.reality_residual(&r).map(|t| t.is_zero()).unwrap_or(false);
                    if real != (eps == -1) {
                        wrong.push(format!("({c1},{c2}): real = {real}"));
                    }
                }
                out.push(Check::from_bool(
                    &format!("{id}.real-iff-eps-minus-one"),
                    &format!("the so(5) r-matrix is star-real under ({lambda},{eps}) exactly when ε = −1"),
                    wrong.is_empty(),
                    || wrong.join("; "),
                ));
                stars.push(s);
            }
            out.push(match physical_dagger(&emb) {
                Some(dagger) => {
                    let found = matching_signs(&dagger, &stars);
                    let printed = vec![("lambda".to_string(), 1), ("eps".to_string(), -1)];
                    let desc = "M^† = −M restricted to the Borel equals the (λ,ε) = (1,−1) star";
                    if found.contains(&printed) {
                        Check::pass("reality.so32.physical-dagger", desc)
                    } else if found.len() == 1 {
                        Check::discrepancy("reality.so32.physical-dagger", desc, &format!("the physical dagger is the star with {:?}", found[0]))
                    } else {
                        Check::fail("reality.so32.physical-dagger", desc, &format!("matching sign choices: {found:?}"))
                    }
                }
                None => Check::fail("reality.so32.physical-dagger", "M^† = −M preserves the Borel", "the dagger leaves the Borel"),
            });
        }
        Err(e) => out.push(error_check("reality.so32", "so(5) Borel embedding", e)),
    }
    match so42_borel(&c.so42) {
        Ok(emb) => {
            let borel = &emb.sub;
            let get = |l: &str| borel.el(l);
            let s = so42_involution(borel, -1, 1);
            let anti = s.check_antiautomorphism();
            out.push(Check::from_bool(
                "reality.so42.anti-automorphism",
                "the η = −1, ε = 1 star is an involutive anti-automorphism of the sl(4) Borel",
                anti.ok(),
                || anti.witness(),
            ));
            for (c1, c2, want) in [(1, 2, true), (2, 4, true), (1, 1, false), (1, 0, false)] {
                let r = sl4_borel_rmatrix(&get, &Scalar::from_int(c1), &Scalar::from_int(c2));
                let res = s.reality_residual(&r);
                let real = res.as_ref().map(TwoTensor::is_zero).unwrap_or(false);
                out.push(Check::from_bool(
                    &format!("reality.so42.at-{c1}-{c2}"),
                    &format!("the sl(4) r-matrix at ({c1},{c2}) is {}star-real", if want { "" } else { "not " }),
                    real == want,
                    || format!("residual {}", res.map(|t| t.to_text()).unwrap_or_default()),
                ));
            }
            let bad = so42_involution_with_e6_sign(borel, -1, 1, -1).check_antiautomorphism();
            out.push(Check::from_bool(
                "reality.so42.mutation-detected",
                "flipping the e6 sign breaks the anti-automorphism property",
                !bad.ok(),
                || "mutation not detected".into(),
            ));
            out.push(match physical_dagger(&emb) {
                Some(d) => Check::from_bool(
                    "reality.so42.physical-dagger",
                    "M^† = −M restricted to the Borel equals the η = −1, ε = 1 star",
                    d.images() == s.images(),
                    || "images differ".into(),
                ),
                None => Check::fail("reality.so42.physical-dagger", "M^† = −M preserves the Borel", "the dagger leaves the Borel"),
            });
        }
        Err(e) => out.push(error_check("reality.so42", "sl(4) Borel embedding", e)),
    }
    out
}

fn root_checks(c: &Catalog) -> Vec<Check> {
    let mut out = Vec::new();
    for (prefix, algebra) in [("basis-maps.sl4", Some(c.sl4.clone())), ("basis-maps.so42", c.so42.cartan_weyl_embedding().ok().map(|e| e.sub))] {
        let Some(a) = algebra else {
            out.push(Check::fail(prefix, "Cartan-Weyl basis", "embedding failed"));
            continue;
        };
        let cw = CartanWeylData::from_sl4(&a);
        out.extend(verify_root_vectors(&cw, prefix));
        out.extend(verify_cartan_matrix(&cw, prefix));
        out.extend(verify_serre_consequences(&cw, prefix));
    }
    out
}

fn dictionary_checks(c: &Catalog) -> Vec<Check> {
    let mut out = Vec::new();
    // so(5) Borel: the realization against the presented algebra
    let alpha: Option<Vec<Vec<Scalar>>> = so5_cartan_matrix(&c.so32).into_iter().map(|row| row.into_iter().collect()).collect();
    match (alpha, c.so32.cartan_weyl_embedding()) {
        (Some(alpha), Ok(emb)) => {
            out.push(Check::pass_with(
                "basis-maps.so5.eigenvalues",
                "every e_a is an eigenvector of h1 and h2",
                &format!("α = {:?}", alpha.iter().map(|r| r.iter().map(|s| s.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>()),
            ));
            out.push(match abstract_so5_borel(&alpha) {
                Ok(presented) => {
                    let images: Vec<Element> = ["h1", "h2", "e1", "e2", "e3", "e4"].iter().map(|l| c.so32.get(l)).collect();
                    let dict = GeneratorDictionary::new(presented, emb.ambient.clone(), images);
                    let fails = dict.bracket_failures();
                    Check::from_bool(
                        "basis-maps.so5.commutators",
                        "the so(5) images satisfy e3 = [e1,e2], e4 = [e1,e3] and the vanishing root brackets",
                        fails.is_empty(),
                        || fails.iter().map(|(a, b, d)| format!("[{a},{b}] off by {d}")).collect::<Vec<_>>().join("; "),
                    )
                }
                Err(e) => error_check("basis-maps.so5.commutators", "presented so(5) Borel", e),
            });
        }
        _ => out.push(Check::fail("basis-maps.so5.eigenvalues", "every e_a is an eigenvector of h1 and h2", "not diagonal")),
    }
    // D=3 readings
    let outcomes = d3_reading_outcomes(&c.so32);
    for o in &outcomes {
        let slug = if o.name.starts_with("printed") { "printed" } else { "k2" };
        out.push(Check::from_bool(
            &format!("basis-maps.d3.reading-{slug}"),
            &format!("reading `{}` is bijective, bracket-consistent and reproduces the two-mass r-matrix", o.name),
            o.accepted(),
            || {
                let mut parts = Vec::new();
                if !o.bijective {
                    parts.push(format!("not bijective: {}", o.detail));
                } else {
                    if !o.structure_failures.is_empty() {
                        parts.push(format!("structure: {}", o.structure_failures.join("; ")));
                    }
                    parts.push(o.detail.clone());
                }
                parts.join("; ")
            },
        ));
    }
    let accepted = outcomes.iter().filter(|o| o.accepted()).count();
    out.push(Check::equality(
        "basis-maps.d3.unique-reading",
        "exactly one reading of the D=3 relations is bijective, bracket-consistent and reproduces the two-mass r-matrix",
        &accepted,
        &1,
    ));
    for (c1, c2) in [(2, 0), (0, 0), (2, 2)] {
        let id = format!("basis-maps.d3.at-{c1}-{c2}");
        let desc = format!("so(5) r-matrix at ({c1},{c2}) equals the two-mass D=3 r-matrix with M_i = 2/c_i");
        out.push(match d3_transform_rmatrix(&c.so32, &Scalar::from_int(c1), &Scalar::from_int(c2)) {
            Ok(t) => Check::from_bool(&id, &desc, t.matches(), || format!("image {}; {}", t.image.tensor.to_text(), t.diff.join("; "))),
            Err(e) => error_check(&id, &desc, e),
        });
    }
    match (d4_transform_rmatrix(&c.so42, &Scalar::one()), d4_transform_rmatrix(&c.so42, &Scalar::from_int(2))) {
        (Ok(one), Ok(two)) => {
            out.push(Check::from_bool(
                "basis-maps.d4.at-m-1",
                "sl(4) r-matrix with c2 = 2c1 = 2/M equals the null-plane r-matrix (M = 1)",
                one.matches(),
                || one.diff.join("; "),
            ));
            out.push(Check::from_bool("basis-maps.d4.at-m-2", "the same identity at M = 2", two.matches(), || two.diff.join("; ")));
            let half = crate::physmaps::coefficient_diff(&two.image.tensor, &one.image.tensor.scale(&Scalar::ratio(1, 2)));
            out.push(Check::from_bool("basis-maps.d4.linear-in-inverse-mass", "M = 2 gives exactly half the M = 1 tensor", half.is_empty(), || half.join("; ")));
            out.push(cybe_point("basis-maps.d4.cybe", "the null-plane r-matrix satisfies the CYBE in the physical basis", &one.algebra, &one.image.tensor));
        }
        (Err(e), _) | (_, Err(e)) => out.push(error_check("basis-maps.d4", "null-plane transform", e)),
    }
    // naturality of cocommutators under the physical dictionaries
    for (id, conformal, r) in [
        ("basis-maps.d3.naturality", &c.so32, 3usize),
        ("basis-maps.d4.naturality", &c.so42, 4usize),
    ] {
        out.push(match conformal.physical_embedding() {
            Ok(emb) => {
                let t = if r == 3 {
                    d3_two_mass_rmatrix(&emb.sub, &Scalar::one(), &Scalar::one())
                } else {
                    d4_null_plane_rmatrix(&emb.sub, &Scalar::one())
                };
                match naturality_failures(&emb, &t) {
                    Ok(f) => Check::from_bool(id, "cocommutators commute with the physical dictionary", f.is_empty(), || f.join(", ")),
                    Err(e) => error_check(id, "cocommutator naturality", e),
                }
            }
            Err(e) => error_check(id, "physical embedding", e),
        });
    }
    out
}

fn subalgebra_checks(c: &Catalog) -> Vec<Check> {
    let mut out = lorentz_decomposition_check(&c.so42);
    out.extend(soft_commutant_check(&c.so32));
    match undeformed_sector_check(&c.so42) {
        Ok(v) => out.extend(v),
        Err(e) => out.push(error_check("physmaps.undeformed", "undeformed sector", e)),
    }
    if let (Ok(e3), Ok(e4)) = (c.so32.physical_embedding(), c.so42.physical_embedding()) {
        let single = d3_two_mass_rmatrix(&e3.sub, &Scalar::one(), &Scalar::zero());
        let outside = legs_within(&single, &D3_POINCARE);
        out.push(Check::from_bool(
            "physmaps.poincare-membership.d3",
            "the M2 = ∞ D=3 r-matrix has all legs in the D=3 Poincaré algebra",
            outside.is_empty(),
            || outside.join(", "),
        ));
        let null_plane = d4_null_plane_rmatrix(&e4.sub, &Scalar::one());
        let outside = legs_within(&null_plane, &D4_POINCARE);
        out.push(Check::from_bool(
            "physmaps.poincare-membership.d4",
            "the null-plane r-matrix has all legs in the D=4 Poincaré algebra",
            outside.is_empty(),
            || outside.join(", "),
        ));
    }
    out
}

/// Hopf-algebra checks of the deformed sl(2) at truncation order `order`.
pub fn hopf_checks(order: usize, compare_printed: bool) -> Vec<Check> {
    let alg = DeformedSl2::new(order);
    let mut out = check_hopf_algebra(&alg);
    match (derive_antipode(&alg, AntipodeAxiom::Left), derive_antipode(&alg, AntipodeAxiom::Right)) {
        (Ok(left), Ok(right)) => {
            out.push(Check::pass_with(
                "hopf.antipode.exists",
                "the antipode axioms determine S(P), S(D), S(K) order by order",
                &format!("S(D) = {}; S(K) = {}", left.s_d, left.s_k),
            ));
            let same = Gen::ALL.iter().all(|g| left.get(*g) == right.get(*g));
            out.push(Check::from_bool(
                "hopf.antipode.unique",
                "solving either antipode axiom gives the same table",
                same,
                || format!("left-solve S(K) = {}; right-solve S(K) = {}", left.s_k, right.s_k),
            ));
            let mut bad = Vec::new();
            for g in Gen::ALL {
                let (l, r) = antipode_axiom_residuals(&alg, &left, g);
                if !l.is_zero() || !r.is_zero() {
                    bad.push(format!("{}: {l} / {r}", g.name()));
                }
            }
            out.push(Check::from_bool("hopf.antipode.axioms", "m(S⊗id)Δ = ε = m(id⊗S)Δ on P, D, K", bad.is_empty(), || bad.join("; ")));
            if compare_printed {
                let printed = printed_antipode(&alg);
                out.push(Check::equality("hopf.antipode.s-p", "S(P) = −P", &left.s_p, &printed.s_p));
                let mut diffs = Vec::new();
                for g in [Gen::D, Gen::K] {
                    for d in antipode_difference(left.get(g), printed.get(g)) {
                        diffs.push(format!("S({}) {d}", g.name()));
                    }
                }
                let desc = "S(D) = −D − 2M⁻¹… and S(K) as printed";
                out.push(if diffs.is_empty() {
                    Check::pass("hopf.antipode.printed", desc)
                } else {
                    Check::discrepancy(
                        "hopf.antipode.printed",
                        desc,
                        &format!(
                            "derived S(D) = −D + sinh(P/M), S(K) = −K − (2/M)D + (1/M)sinh(P/M); differences: {}",
                            diffs.join("; ")
                        ),
                    )
                });
            }
        }
        (Err(e), _) | (_, Err(e)) => out.push(error_check("hopf.antipode.exists", "antipode from the axioms", e)),
    }
    // mutation: classical relations with the deformed coproduct
    let classical = DeformedSl2::with_relations(order, Relations::Classical);
    let ring = TensorRing { algebra: &classical, arity: 2 };
    let images = [Gen::P, Gen::D, Gen::K].map(|g| classical.coproduct_gen(g));
    let res = relation_residuals(&ring, &classical, &images[0], &images[1], &images[2]);
    let low = res[0].1.lowest_order();
    out.push(Check::from_bool(
        "hopf.mutation.classical-dp",
        "[D,P] = P with the deformed coproduct fails the homomorphism check at order u²",
        low == Some(2),
        || format!("first failing order {low:?}"),
    ));
    // first-order cocommutator
    let g = classical_sl2();
    for x in Gen::ALL {
        let id = format!("hopf.cocommutator.{}", x.name());
        let desc = format!("u¹ part of Δ({0}) − Δ^op({0}), antisymmetrized, equals [x⊗1+1⊗x, (1/M) D∧P]", x.name());
        out.push(match first_order_cocommutator(&alg, &g, x) {
            Ok(fc) => {
                if fc.alternating == fc.coboundary {
                    Check::pass_with(&id, &desc, &format!("raw first-order difference {} (twice the coboundary)", fc.raw.to_text()))
                } else {
                    Check::fail(&id, &desc, &format!("alternating part {}; coboundary {}", fc.alternating.to_text(), fc.coboundary.to_text()))
                }
            }
            Err(e) => error_check(&id, &desc, e),
        });
    }
    // mass Casimir
    let cas = casimir_expansion(order);
    let p = |m: [u32; 4], q: i64, d: i64| (m, crate::scalars::rat(q, d));
    let wants: [(usize, Vec<([u32; 4], crate::Rational)>, &str); 3] = [
        (0, vec![p([2, 0, 0, 0], 1, 1), p([0, 2, 0, 0], 1, 1), p([0, 0, 1, 1], -1, 1)], "P1² + P2² − P+P−"),
        (1, vec![], "0"),
        (2, vec![p([0, 0, 3, 1], -1, 6)], "−P−P+³/6"),
    ];
    for (k, want, text) in wants {
        let got = commutative_part(&cas, k);
        let want: BTreeMap<[u32; 4], crate::Rational> = want.into_iter().collect();
        out.push(Check::from_bool(
            &format!("hopf.casimir.u{k}"),
            &format!("u^{k} term of P1² + P2² − M P− sinh(P+/M) is {text}"),
            got == want,
            || format!("got {}", render_commutative(&got)),
        ));
    }
    out.push(Check::out_of_scope(
        "hopf.casimir-commutant",
        "[C2, K_μ] and [C2, D] vanish on C2 = 0 for the deformed conformal algebra",
        "stated as a conjecture; the deformed K_μ and D are not constructed",
    ));
    out
}

fn hopf_property_checks(_: &Catalog) -> Vec<Check> {
    let alg = DeformedSl2::new(HOPF_ORDER);
    let words = all_words(4);
    let mut bad = Vec::new();
    for word in &words {
        let direct = alg.straighten(word);
        let mut first = |_: &[usize]| 0usize;
        let mut last = |c: &[usize]| c.len() - 1;
        let mut alternate = {
            let mut flip = false;
            move |c: &[usize]| {
                flip = !flip;
                if flip { 0 } else { c.len() - 1 }
            }
        };
        for (name, nf) in [
            ("leftmost", alg.straighten_by_rewriting(word, &mut first)),
            ("rightmost", alg.straighten_by_rewriting(word, &mut last)),
            ("alternating", alg.straighten_by_rewriting(word, &mut alternate)),
        ] {
            if nf != direct {
                bad.push(format!("{} ({name})", word_text(word)));
            }
        }
    }
    let mut out = vec![Check::from_bool(
        "hopf.confluence",
        &format!("all {} words of length ≤ 4 straighten to one normal form under every rewrite order", words.len()),
        bad.is_empty(),
        || bad.join(", "),
    )];
    let mut mismatches = Vec::new();
    for (name, rep) in classical_representations() {
        for word in &words {
            if evaluate_classical(&alg.straighten(word), &rep) != word_matrix(word, &rep) {
                mismatches.push(format!("{name}: {}", word_text(word)));
            }
        }
    }
    out.push(Check::from_bool(
        "hopf.classical-limit",
        "u⁰ parts of normal forms agree with the fundamental and adjoint sl(2) representations",
        mismatches.is_empty(),
        || mismatches.join(", "),
    ));
    let mut dims = Vec::new();
    let expect = |g: Gen| g.dimension();
    for g in Gen::ALL {
        match tensor_dimension(&alg.coproduct_gen(g)) {
            Ok(Some(d)) if d == expect(g) => {}
            other => dims.push(format!("Δ({}): {other:?}", g.name())),
        }
    }
    for (name, x, d) in [("M sinh(P/M)", alg.dp_commutator(), 1), ("cosh(P/M)", alg.cosh_p(), 0)] {
        if poly_dimension(&x) != Ok(Some(d)) {
            dims.push(format!("{name}: {:?}", poly_dimension(&x)));
        }
    }
    if let Ok(s) = derive_antipode(&alg, AntipodeAxiom::Left) {
        for g in Gen::ALL {
            if poly_dimension(s.get(g)) != Ok(Some(expect(g))) {
                dims.push(format!("S({})", g.name()));
            }
        }
    }
    out.push(Check::from_bool(
        "hopf.dimensions",
        "relations, coproduct and antipode are homogeneous in scale dimension (P +1, K −1, 1/M −1)",
        dims.is_empty(),
        || dims.join("; "),
    ));
    out
}

fn comparison_checks(c: &Catalog) -> Vec<Check> {
    let mut out = match comparison_rmatrices(&c.so32, &c.so42) {
        Ok(v) => v,
        Err(e) => vec![error_check("comparisons", "comparison r-matrices", e)],
    };
    let swap = swap_map_check();
    out.push(Check::from_bool(
        "comparisons.swap-map.automorphism",
        "P ↔ K, D ↦ −D is an automorphism of sl(2) intertwining the cocommutators",
        swap.automorphism_failures.is_empty() && swap.involutive && swap.intertwines_cocommutators,
        || swap.automorphism_failures.join("; "),
    ));
    let desc = "the swap map sends r_+ = (1/M) D∧P to r_− = 2c_− D∧K with 2c_− = M̃";
    out.push(match &swap.constant {
        Some(s) if *s == Scalar::one() => Check::pass("comparisons.swap-map.sign", desc),
        Some(s) => Check::discrepancy(
            "comparisons.swap-map.sign",
            desc,
            &format!("image of D∧P is {} = ({s})·D∧K, so the identification needs 2c_− = {s}·M̃", swap.image_of_r_plus.to_text()),
        ),
        None => Check::fail("comparisons.swap-map.sign", desc, &format!("image {} is not a multiple of D∧K", swap.image_of_r_plus.to_text())),
    });
    out
}

fn dimension_checks(c: &Catalog) -> Vec<Check> {
    let mut out = Vec::new();
    let (Ok(e3), Ok(e4)) = (c.so32.physical_embedding(), c.so42.physical_embedding()) else {
        return vec![Check::fail("dimensions", "physical embeddings", "embedding failed")];
    };
    let g3 = DimensionGrading::conformal(e3.sub.labels());
    let g4 = DimensionGrading::conformal(e4.sub.labels());
    out.push(dimension_audit("dimensions.d3-two-mass", "the two-mass D=3 r-matrix", &d3_two_mass_rmatrix(&e3.sub, &Scalar::one(), &Scalar::one()), &g3, 1));
    out.push(dimension_audit("dimensions.d4-null-plane", "the null-plane r-matrix", &d4_null_plane_rmatrix(&e4.sub, &Scalar::one()), &g4, 1));
    let kappa = to_sub_basis(&e3, &kappa_rmatrix(&c.so32, 1));
    let tach = to_sub_basis(&e4, &tachyonic_rmatrix(&c.so42, 1));
    match (kappa, tach) {
        (Ok(k), Ok(t)) => {
            out.push(dimension_audit("dimensions.kappa", "L1∧P1 + L2∧P2", &k, &g3, 1));
            out.push(dimension_audit("dimensions.tachyonic", "M1∧P2 − M2∧P1 + L3∧P0", &t, &g4, 1));
        }
        (Err(e), _) | (_, Err(e)) => out.push(error_check("dimensions.comparisons", "comparison r-matrices in the physical basis", e)),
    }
    let sl2 = build_sl2_physical();
    let gs = DimensionGrading::conformal(sl2.labels());
    out.push(dimension_audit("dimensions.sl2-standard", "P∧K (standard sl(2) r-matrix)", &w(&sl2.el("P"), &sl2.el("K")), &gs, 0));
    for (id, g, grading) in [
        ("dimensions.additivity.sl2", &sl2, &gs),
        ("dimensions.additivity.so32", &e3.sub, &g3),
        ("dimensions.additivity.so42", &e4.sub, &g4),
    ] {
        let f = grading.additivity_failures(g);
        out.push(Check::from_bool(id, "dim([x,y]) = dim(x) + dim(y) on all nonzero brackets", f.is_empty(), || f.join("; ")));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite_is_an_error() {
        let c = Catalog::build().unwrap();
        assert!(matches!(run_suite(&c, "nope"), Err(SuiteError::UnknownSuite(_))));
        assert!(matches!(run_claim(&c, "no.such.claim"), Err(SuiteError::UnknownClaim(_))));
    }

    #[test]
    fn jacobi_suite_passes_and_corruption_is_caught() {
        let c = Catalog::build().unwrap();
        let r = run_suite(&c, "jacobi").unwrap();
        assert!(!r.has_failures(), "{}", r.to_text());
        let bad = run_suite(&c.corrupted(), "jacobi").unwrap();
        let sl2 = bad.check("jacobi.sl2").unwrap();
        assert!(sl2.failed());
        assert!(sl2.witness.as_deref().unwrap().contains("e_plus"));
    }

    #[test]
    fn hopf_suite_has_a_single_recorded_discrepancy() {
        let c = Catalog::build().unwrap();
        let r = run_suite(&c, "hopf").unwrap();
        assert!(!r.has_failures(), "{}", r.to_text());
        assert_eq!(r.summary.recorded_discrepancy, 1);
        assert_eq!(r.summary.out_of_scope, 1);
    }

    #[test]
    fn check_ids_are_unique() {
        let c = Catalog::build().unwrap();
        let r = run_suite(&c, "all").unwrap();
        let mut ids: Vec<&str> = r.checks.iter().map(|c| c.id.as_str()).collect();
        let n = ids.len();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), n);
    }
}

//! Physical-basis forms of the Borel r-matrices for the D=3 and D=4
//! conformal algebras, the subalgebra claims made about them, and the
//! comparison (modified-CYBE) r-matrices.
//!
//! Tensors are built in the ambient `M_AB` basis and re-expressed in the
//! physical basis through the embedding of the physical generators.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::catalog::{so5_borel_rmatrix, sl4_borel_rmatrix, CatalogError, ConformalAlgebra, D3Reading};
use crate::liealg::{Element, Embedding, LieAlgebra, LieError};
use crate::linalg::Matrix;
use crate::report::Check;
use crate::scalars::Scalar;
use crate::tensoralg::{ad_invariance_residual, cocommutator, cybe_residual, w, TwoTensor};

#[derive(Debug, Error)]
pub enum PhysMapError {
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error("element {0} is outside the span of the physical generators")]
    OutsideSpan(String),
}

pub const D3_POINCARE: [&str; 6] = ["P0", "P1", "P2", "J", "L1", "L2"];
pub const D4_POINCARE: [&str; 10] = ["P0", "P1", "P2", "P3", "M1", "M2", "M3", "L1", "L2", "L3"];

/// An r-matrix in a physical basis, with the mass parameters it was evaluated at.
#[derive(Clone, Debug)]
pub struct PhysicalRMatrix {
    pub name: String,
    pub tensor: TwoTensor,
    pub masses: Vec<(String, Scalar)>,
}

impl PhysicalRMatrix {
    pub fn to_text(&self) -> String {
        let params: Vec<String> = self.masses.iter().map(|(n, v)| format!("{n}={v}")).collect();
        format!("{} [{}]: {}", self.name, params.join(", "), self.tensor.to_text())
    }
}

/// Re-expresses an ambient tensor in the basis of an embedded subalgebra.
pub fn to_sub_basis(emb: &Embedding, t: &TwoTensor) -> Result<TwoTensor, PhysMapError> {
    let basis = emb.ambient.basis();
    let mut images = Vec::with_capacity(basis.dim());
    for i in 0..basis.dim() {
        let e = Element::basis_vector(basis, i);
        images.push(emb.from_ambient(&e).ok_or_else(|| PhysMapError::OutsideSpan(basis.label(i).to_string()))?);
    }
    Ok(t.map_slots(emb.sub.basis(), &images, Clone::clone))
}

/// Maps a tensor on the subalgebra back into the ambient basis.
pub fn to_ambient_basis(emb: &Embedding, t: &TwoTensor) -> TwoTensor {
    t.map_slots(emb.ambient.basis(), emb.images(), Clone::clone)
}

/// `legs: coefficient got vs expected` for every component that differs.
pub fn coefficient_diff(got: &TwoTensor, want: &TwoTensor) -> Vec<String> {
    let mut keys: BTreeSet<[usize; 2]> = got.terms().map(|(k, _)| *k).collect();
    keys.extend(want.terms().map(|(k, _)| *k));
    let b = got.basis();
    keys.into_iter()
        .filter(|k| got.coeff(k) != want.coeff(k))
        .map(|k| format!("{} ⊗ {}: got {}, expected {}", b.label(k[0]), b.label(k[1]), got.coeff(&k), want.coeff(&k)))
        .collect()
}

/// Result of pushing a Cartan-Weyl r-matrix through a basis dictionary.
#[derive(Clone, Debug)]
pub struct BasisTransform {
    /// The physical-basis algebra both tensors live on.
    pub algebra: LieAlgebra,
    pub image: PhysicalRMatrix,
    pub expected: PhysicalRMatrix,
    pub diff: Vec<String>,
}

impl BasisTransform {
    pub fn matches(&self) -> bool {
        self.diff.is_empty()
    }
}

/// `(1/M₁)(L1∧P1 − (L2+J)∧P2) + (1/M₂)(D−L1)∧P₋` with `P₋ = P0 − P1`, given as `(1/M₁, 1/M₂)`.
pub fn d3_two_mass_rmatrix(phys: &LieAlgebra, inv_m1: &Scalar, inv_m2: &Scalar) -> TwoTensor {
    let el = |l: &str| phys.el(l);
    let p_minus = &el("P0") - &el("P1");
    let first = &w(&el("L1"), &el("P1")) - &w(&(&el("L2") + &el("J")), &el("P2"));
    let second = w(&(&el("D") - &el("L1")), &p_minus);
    &first.scale(inv_m1) + &second.scale(inv_m2)
}

/// `(1/M)[L3∧P₊ + (M2+L1)∧P1 − (M1−L2)∧P2]` with `P₊ = P0 + P3`.
pub fn d4_null_plane_rmatrix(phys: &LieAlgebra, inv_m: &Scalar) -> TwoTensor {
    let el = |l: &str| phys.el(l);
    let p_plus = &el("P0") + &el("P3");
    let t = &(&w(&el("L3"), &p_plus) + &w(&(&el("M2") + &el("L1")), &el("P1"))) - &w(&(&el("M1") - &el("L2")), &el("P2"));
    t.scale(inv_m)
}

fn mass_from_coefficient(c: &Scalar, numerator: i64) -> Scalar {
    // M = numerator / c, with c = 0 meaning M = ∞ (rendered as 0 ⇒ "inf")
    Scalar::from_int(numerator).checked_div(c).unwrap_or_else(|_| Scalar::zero())
}

/// Image of the so(5) Borel r-matrix `c1 (h1∧e4 − e1∧e3) + c2 h2∧e4` in the D=3
/// physical basis, compared with the two-mass form at `M_i = 2/c_i`.
pub fn d3_transform_rmatrix(so32: &ConformalAlgebra, c1: &Scalar, c2: &Scalar) -> Result<BasisTransform, PhysMapError> {
    let emb = so32.physical_embedding()?;
    d3_transform_with(so32, &emb, c1, c2)
}

fn d3_transform_with(so32: &ConformalAlgebra, emb: &Embedding, c1: &Scalar, c2: &Scalar) -> Result<BasisTransform, PhysMapError> {
    let ambient = so5_borel_rmatrix(&|l| so32.get(l), c1, c2);
    let image = to_sub_basis(emb, &ambient)?;
    let half = Scalar::ratio(1, 2);
    let expected = d3_two_mass_rmatrix(&emb.sub, &(c1 * &half), &(c2 * &half));
    let masses = vec![("M1".to_string(), mass_from_coefficient(c1, 2)), ("M2".to_string(), mass_from_coefficient(c2, 2))];
    Ok(BasisTransform {
        algebra: emb.sub.clone(),
        diff: coefficient_diff(&image, &expected),
        image: PhysicalRMatrix { name: "so(5) Borel r-matrix, physical basis".into(), tensor: image, masses: masses.clone() },
        expected: PhysicalRMatrix { name: "two-mass D=3 r-matrix".into(), tensor: expected, masses },
    })
}

/// Image of the sl(4) Borel r-matrix at `c1 = 1/M, c2 = 2/M`, compared with the null-plane form.
pub fn d4_transform_rmatrix(so42: &ConformalAlgebra, mass: &Scalar) -> Result<BasisTransform, PhysMapError> {
    let emb = so42.physical_embedding()?;
    let inv = Scalar::one().checked_div(mass).map_err(|_| PhysMapError::OutsideSpan("M = 0".into()))?;
    let ambient = sl4_borel_rmatrix(&|l| so42.get(l), &inv, &(&inv * &Scalar::from_int(2)));
    let image = to_sub_basis(&emb, &ambient)?;
    let expected = d4_null_plane_rmatrix(&emb.sub, &inv);
    let masses = vec![("M".to_string(), mass.clone())];
    Ok(BasisTransform {
        algebra: emb.sub.clone(),
        diff: coefficient_diff(&image, &expected),
        image: PhysicalRMatrix { name: "sl(4) Borel r-matrix, physical basis".into(), tensor: image, masses: masses.clone() },
        expected: PhysicalRMatrix { name: "null-plane D=4 r-matrix".into(), tensor: expected, masses },
    })
}

/// Checks the relations a physical conformal basis must obey independent of
/// sign conventions: commuting translations, commuting special conformal
/// generators, `D` scaling all `P_μ` by one common weight and all `K_μ` by its
/// negative, and a closed Lorentz subalgebra.
pub fn conformal_structure_failures(g: &LieAlgebra, physical: &[(String, Element)]) -> Vec<String> {
    let find = |l: &str| physical.iter().find(|(n, _)| n == l).map(|(_, e)| e.clone());
    let group = |prefix: char| -> Vec<(String, Element)> {
        physical.iter().filter(|(n, _)| n.starts_with(prefix) && n[1..].chars().all(|c| c.is_ascii_digit())).cloned().collect()
    };
    let (ps, ks) = (group('P'), group('K'));
    let mut out = Vec::new();
    for set in [&ps, &ks] {
        for (i, (na, a)) in set.iter().enumerate() {
            for (nb, b) in &set[i + 1..] {
                let c = g.br(a, b);
                if !c.is_zero() {
                    out.push(format!("[{na},{nb}] = {c} ≠ 0"));
                }
            }
        }
    }
    let Some(d) = find("D") else {
        out.push("no D generator".into());
        return out;
    };
    let mut weight: Option<Scalar> = None;
    for (set, sign) in [(&ps, 1), (&ks, -1)] {
        for (n, x) in set.iter() {
            match crate::catalog::proportionality(&g.br(&d, x), x) {
                Some(c) => {
                    let c = &c * &Scalar::from_int(sign);
                    match &weight {
                        None if c.is_zero() => out.push(format!("[D,{n}] = 0")),
                        None => weight = Some(c),
                        Some(wt) if *wt != c => out.push(format!("[D,{n}] has weight {c}, expected {wt}")),
                        _ => {}
                    }
                }
                None => out.push(format!("{n} is not a D eigenvector: [D,{n}] = {}", g.br(&d, x))),
            }
        }
    }
    let lorentz: Vec<Element> = physical
        .iter()
        .filter(|(n, _)| !(n == "D" || ps.iter().any(|(p, _)| p == n) || ks.iter().any(|(k, _)| k == n)))
        .map(|(_, e)| e.clone())
        .collect();
    match g.subalgebra_closure(&lorentz) {
        Ok(c) if c.closed && c.dim == lorentz.len() => {}
        Ok(c) => out.push(format!("Lorentz generators span a closure of dimension {}", c.dim)),
        Err(e) => out.push(e.to_string()),
    }
    out
}

/// One candidate reading of the D=3 `M_AB ↔ (P, K)` relations and what it achieves.
#[derive(Clone, Debug)]
pub struct ReadingOutcome {
    pub name: String,
    pub bijective: bool,
    pub structure_failures: Vec<String>,
    /// Coefficient diff of the transformed r-matrix at `c1 = c2 = 2`.
    pub transform_diff: Option<Vec<String>>,
    pub detail: String,
}

impl ReadingOutcome {
    pub fn accepted(&self) -> bool {
        self.bijective && self.structure_failures.is_empty() && self.transform_diff.as_ref().is_some_and(Vec::is_empty)
    }
}

/// Tries each candidate reading of the D=3 relations.
pub fn d3_reading_outcomes(so32: &ConformalAlgebra) -> Vec<ReadingOutcome> {
    [D3Reading::printed(), D3Reading::with_k2()]
        .into_iter()
        .map(|reading| match reading.solve(&so32.ambient) {
            Err(e) => ReadingOutcome {
                name: reading.name.clone(),
                bijective: false,
                structure_failures: Vec::new(),
                transform_diff: None,
                detail: e.to_string(),
            },
            Ok(physical) => {
                let structure_failures = conformal_structure_failures(&so32.ambient, &physical);
                let (labels, elems): (Vec<String>, Vec<Element>) = physical.iter().cloned().unzip();
                let transform_diff = so32
                    .ambient
                    .subalgebra(&format!("so32-{}", reading.name), labels, &elems)
                    .ok()
                    .and_then(|emb| d3_transform_with(so32, &emb, &Scalar::from_int(2), &Scalar::from_int(2)).ok())
                    .map(|t| t.diff);
                let detail = match &transform_diff {
                    Some(d) if d.is_empty() => "reproduces the two-mass r-matrix".to_string(),
                    Some(d) => format!("{} coefficient mismatches, first: {}", d.len(), d[0]),
                    None => "transformation failed".to_string(),
                };
                ReadingOutcome { name: reading.name.clone(), bijective: true, structure_failures, transform_diff, detail }
            }
        })
        .collect()
}

fn bracket_check(g: &LieAlgebra, id: &str, x: &Element, y: &Element, want: &Element, text: &str) -> Check {
    let got = g.br(x, y);
    Check::from_bool(id, text, &got == want, || format!("got {got}; expected {want}"))
}

/// `[D−L1, P₋] = 0` in so(3,2), with the variants that do commute shown for contrast.
pub fn soft_commutant_check(so32: &ConformalAlgebra) -> Vec<Check> {
    let g = &so32.ambient;
    let (d, l1) = (so32.get("D"), so32.get("L1"));
    let (pp, pm) = (so32.get("P_plus"), so32.get("P_minus"));
    let zero = g.zero();
    let minus = &d - &l1;
    let plus = &d + &l1;
    let mut out = vec![bracket_check(g, "physmaps.soft-commutant", &minus, &pm, &zero, "[D − L1, P_-] = 0")];
    let with_plus = g.br(&minus, &pp);
    let with_minus = g.br(&minus, &pm);
    out.push(Check::from_bool(
        "physmaps.soft-commutant.contrast",
        "D − L1 commutes with exactly one of P_+ and P_-",
        with_plus.is_zero() != with_minus.is_zero(),
        || format!("[D − L1, P_+] = {with_plus}; [D − L1, P_-] = {with_minus}"),
    ));
    out.push(bracket_check(g, "physmaps.soft-commutant.sign-variant", &plus, &pm, &zero, "[D + L1, P_-] = 0"));
    out.push(bracket_check(g, "physmaps.soft-commutant.trivial", &d, &d, &zero, "[D, D] = 0"));
    out
}

/// Relations of the two D=2 algebras inside the Lorentz algebra, their
/// independence and that together they span it.
pub fn lorentz_decomposition_check(so42: &ConformalAlgebra) -> Vec<Check> {
    let g = &so42.ambient;
    let get = |l: &str| so42.get(l);
    let zero = g.zero();
    let mut out = vec![
        bracket_check(g, "physmaps.lorentz.et1-et2", &get("Et1"), &get("Et2"), &zero, "[Ẽ1, Ẽ2] = 0"),
        bracket_check(g, "physmaps.lorentz.et1-et3", &get("Et1"), &get("Et3"), &-&get("Et1"), "[Ẽ1, Ẽ3] = −Ẽ1"),
        bracket_check(g, "physmaps.lorentz.et2-et3", &get("Et2"), &get("Et3"), &-&get("Et2"), "[Ẽ2, Ẽ3] = −Ẽ2"),
        bracket_check(g, "physmaps.lorentz.e1-e2", &get("E1"), &get("E2"), &zero, "[E1, E2] = 0"),
        bracket_check(g, "physmaps.lorentz.e2-e3", &get("E2"), &get("E3"), &-&get("E1"), "[E2, E3] = −E1"),
        bracket_check(g, "physmaps.lorentz.e1-e3", &get("E1"), &get("E3"), &get("E2"), "[E1, E3] = E2"),
    ];
    let six: Vec<Element> = ["Et1", "Et2", "Et3", "E1", "E2", "E3"].iter().map(|l| get(l)).collect();
    let lorentz: Vec<Element> = ["M1", "M2", "M3", "L1", "L2", "L3"].iter().map(|l| get(l)).collect();
    let rank = |v: &[Element]| Matrix::from_columns(&v.iter().map(Element::to_dense).collect::<Vec<_>>()).rank();
    let r6 = rank(&six);
    out.push(Check::equality("physmaps.lorentz.rank", "Ẽ1, Ẽ2, Ẽ3, E1, E2, E3 are linearly independent", &r6, &6));
    let joint = rank(&[six.clone(), lorentz.clone()].concat());
    out.push(Check::from_bool(
        "physmaps.lorentz.span",
        "the six elements span the Lorentz subalgebra",
        joint == 6 && rank(&lorentz) == 6,
        || format!("joint rank {joint}"),
    ));
    for (id, triple) in [("physmaps.lorentz.closure-et", &six[..3]), ("physmaps.lorentz.closure-e", &six[3..])] {
        let c = g.subalgebra_closure(triple);
        out.push(Check::from_bool(
            id,
            "the triple closes into a 3-dimensional subalgebra",
            matches!(&c, Ok(c) if c.closed && c.dim == 3),
            || format!("{c:?}"),
        ));
    }
    out
}

/// Generators whose cocommutator under the null-plane r-matrix vanishes, and their closure.
pub fn undeformed_sector_check(so42: &ConformalAlgebra) -> Result<Vec<Check>, PhysMapError> {
    let g = &so42.ambient;
    let emb = so42.physical_embedding()?;
    let r = to_ambient_basis(&emb, &d4_null_plane_rmatrix(&emb.sub, &Scalar::one()));
    let mut out = Vec::new();
    let sector = ["M3", "Et1", "Et2", "P_plus"];
    for l in sector {
        let d = cocommutator(g, &so42.get(l), &r)?;
        out.push(Check::from_bool(
            &format!("physmaps.undeformed.{}", l.to_lowercase().replace('_', "-")),
            &format!("δ({l}) = 0 under the null-plane r-matrix"),
            d.is_zero(),
            || format!("δ({l}) = {d}"),
        ));
    }
    let elems: Vec<Element> = sector.iter().map(|l| so42.get(l)).collect();
    let c = g.subalgebra_closure(&elems)?;
    out.push(Check::from_bool(
        "physmaps.undeformed.closure",
        "M3, Ẽ1, Ẽ2, P_+ close into a 4-dimensional subalgebra",
        c.closed && c.dim == 4 && c.input_rank == 4,
        || format!("closure dimension {}, input rank {}", c.dim, c.input_rank),
    ));
    let dp1 = cocommutator(g, &so42.get("P1"), &r)?;
    out.push(Check::from_bool("physmaps.undeformed.contrast-p1", "δ(P1) ≠ 0", !dp1.is_zero(), || "δ(P1) = 0".into()));
    Ok(out)
}

/// `L1∧P1 + L2∧P2` (κ-type, D=3), up to `1/κ`.
pub fn kappa_rmatrix(so32: &ConformalAlgebra, sign: i64) -> TwoTensor {
    let g = |l: &str| so32.get(l);
    &w(&g("L1"), &g("P1")) + &w(&g("L2"), &g("P2")).scale(&Scalar::from_int(sign))
}

/// `M1∧P2 − M2∧P1 + L3∧P0` (D=4 tachyonic-type), or its variant with the L3 term negated.
pub fn tachyonic_rmatrix(so42: &ConformalAlgebra, l3_sign: i64) -> TwoTensor {
    let g = |l: &str| so42.get(l);
    let t = &w(&g("M1"), &g("P2")) - &w(&g("M2"), &g("P1"));
    &t + &w(&g("L3"), &g("P0")).scale(&Scalar::from_int(l3_sign))
}

/// CYBE / ad-invariance profile of an r-matrix over a set of generators.
#[derive(Clone, Debug)]
pub struct ModifiedCybeProfile {
    pub cybe_zero: bool,
    pub cybe_witness: Option<String>,
    /// Generators whose action on the CYBE residual is nonzero.
    pub non_invariant: Vec<String>,
}

impl ModifiedCybeProfile {
    pub fn is_modified_cybe(&self) -> bool {
        !self.cybe_zero && self.non_invariant.is_empty()
    }
}

pub fn modified_cybe_profile(g: &LieAlgebra, r: &TwoTensor, generators: &[(&str, Element)]) -> Result<ModifiedCybeProfile, LieError> {
    let res = cybe_residual(g, r)?;
    let elems: Vec<Element> = generators.iter().map(|(_, e)| e.clone()).collect();
    let ad = ad_invariance_residual(g, &res, &elems)?;
    let non_invariant = generators.iter().zip(&ad).filter(|(_, t)| !t.is_zero()).map(|((n, _), _)| n.to_string()).collect();
    Ok(ModifiedCybeProfile { cybe_zero: res.is_zero(), cybe_witness: res.first_component(), non_invariant })
}

fn profile_checks(id: &str, name: &str, p: &ModifiedCybeProfile) -> Vec<Check> {
    vec![
        Check::from_bool(&format!("{id}.cybe-nonzero"), &format!("CYBE residual of {name} is nonzero"), !p.cybe_zero, || {
            "CYBE residual vanishes".into()
        }),
        Check::from_bool(
            &format!("{id}.ad-invariant"),
            &format!("CYBE residual of {name} is ad-invariant under the Poincaré generators"),
            p.non_invariant.is_empty(),
            || format!("not invariant under {}", p.non_invariant.join(", ")),
        ),
    ]
}

/// The κ-type and tachyonic comparison r-matrices, their sign variants, and
/// the CYBE contrast with the single-mass D=3 r-matrix.
pub fn comparison_rmatrices(so32: &ConformalAlgebra, so42: &ConformalAlgebra) -> Result<Vec<Check>, PhysMapError> {
    let d3: Vec<(&str, Element)> = D3_POINCARE.iter().map(|l| (*l, so32.get(l))).collect();
    let d4: Vec<(&str, Element)> = D4_POINCARE.iter().map(|l| (*l, so42.get(l))).collect();
    let mut out = Vec::new();
    out.extend(profile_checks("comparisons.kappa", "L1∧P1 + L2∧P2", &modified_cybe_profile(&so32.ambient, &kappa_rmatrix(so32, 1), &d3)?));
    let kv = modified_cybe_profile(&so32.ambient, &kappa_rmatrix(so32, -1), &d3)?;
    out.push(Check::from_bool(
        "comparisons.kappa.sign-variant",
        "L1∧P1 − L2∧P2 satisfies the modified CYBE",
        kv.is_modified_cybe(),
        || format!("{kv:?}"),
    ));
    out.extend(profile_checks(
        "comparisons.tachyonic",
        "M1∧P2 − M2∧P1 + L3∧P0",
        &modified_cybe_profile(&so42.ambient, &tachyonic_rmatrix(so42, 1), &d4)?,
    ));
    let tv = modified_cybe_profile(&so42.ambient, &tachyonic_rmatrix(so42, -1), &d4)?;
    out.push(Check::from_bool(
        "comparisons.tachyonic.sign-variant",
        "M1∧P2 − M2∧P1 − L3∧P0 satisfies the modified CYBE",
        tv.is_modified_cybe(),
        || format!("{tv:?}"),
    ));
    let emb = so32.physical_embedding()?;
    let single = to_ambient_basis(&emb, &d3_two_mass_rmatrix(&emb.sub, &Scalar::one(), &Scalar::zero()));
    let res = cybe_residual(&so32.ambient, &single)?;
    out.push(Check::from_bool(
        "comparisons.single-mass-cybe",
        "the D=3 r-matrix with M2 = ∞ satisfies the CYBE",
        res.is_zero(),
        || res.first_component().unwrap_or_default(),
    ));
    Ok(out)
}

/// Integer scale dimensions of named generators.
#[derive(Clone, Debug, Default)]
pub struct DimensionGrading {
    dims: BTreeMap<String, i64>,
}

impl DimensionGrading {
    /// `P…` → +1, `K…` → −1, everything else 0.
    pub fn conformal(labels: &[String]) -> Self {
        let dims = labels
            .iter()
            .map(|l| {
                let d = match l.chars().next() {
                    Some('P') => 1,
                    Some('K') => -1,
                    _ => 0,
                };
                (l.clone(), d)
            })
            .collect();
        DimensionGrading { dims }
    }

    pub fn of(&self, label: &str) -> Option<i64> {
        self.dims.get(label).copied()
    }

    /// Dimensions of all nonzero wedge terms of a tensor over a graded basis.
    pub fn term_dimensions(&self, t: &TwoTensor) -> BTreeSet<i64> {
        let b = t.basis();
        t.terms().map(|(k, _)| self.of(b.label(k[0])).unwrap_or(0) + self.of(b.label(k[1])).unwrap_or(0)).collect()
    }

    /// Brackets of basis elements whose terms do not carry the summed dimension.
    pub fn additivity_failures(&self, g: &LieAlgebra) -> Vec<String> {
        let labels = g.labels();
        let mut out = Vec::new();
        for a in 0..g.dim() {
            for b in a + 1..g.dim() {
                let want = self.of(&labels[a]).unwrap_or(0) + self.of(&labels[b]).unwrap_or(0);
                for (i, _) in g.bracket_basis(a, b).terms() {
                    let got = self.of(&labels[i]).unwrap_or(0);
                    if got != want {
                        out.push(format!("[{},{}] contains {} of dimension {got}, expected {want}", labels[a], labels[b], labels[i]));
                    }
                }
            }
        }
        out
    }
}

/// Every term of `t` must have total dimension `expected`.
pub fn dimension_audit(id: &str, name: &str, t: &TwoTensor, grading: &DimensionGrading, expected: i64) -> Check {
    let dims = grading.term_dimensions(t);
    Check::from_bool(
        id,
        &format!("every term of {name} has scale dimension {expected}"),
        dims.len() == 1 && dims.contains(&expected),
        || format!("term dimensions {dims:?}"),
    )
}

/// Are all legs of `t` (in a physical basis) inside the span of the listed generators?
pub fn legs_within(t: &TwoTensor, allowed: &[&str]) -> Vec<String> {
    let b = t.basis();
    let mut out: BTreeSet<String> = BTreeSet::new();
    for (k, _) in t.terms() {
        for &i in k {
            if !allowed.contains(&b.label(i)) {
                out.insert(b.label(i).to_string());
            }
        }
    }
    out.into_iter().collect()
}

/// `dict(δ_r(x)) = δ_{dict r}(dict x)` for every basis element of the embedded algebra.
pub fn naturality_failures(emb: &Embedding, r_sub: &TwoTensor) -> Result<Vec<String>, LieError> {
    let r_amb = to_ambient_basis(emb, r_sub);
    let mut out = Vec::new();
    for (i, label) in emb.sub.labels().iter().enumerate() {
        let x = Element::basis_vector(emb.sub.basis(), i);
        let via_sub = to_ambient_basis(emb, &cocommutator(&emb.sub, &x, r_sub)?);
        let via_amb = cocommutator(&emb.ambient, &emb.to_ambient(&x), &r_amb)?;
        if via_sub != via_amb {
            out.push(label.clone());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{build_so32, build_so42};

    #[test]
    fn d4_transform_matches_and_scales() {
        let so42 = build_so42().unwrap();
        let one = d4_transform_rmatrix(&so42, &Scalar::one()).unwrap();
        assert!(one.matches(), "{:?}", one.diff);
        let two = d4_transform_rmatrix(&so42, &Scalar::from_int(2)).unwrap();
        assert!(coefficient_diff(&two.image.tensor, &one.image.tensor.scale(&Scalar::ratio(1, 2))).is_empty());
        assert!(cybe_residual(&one.algebra, &one.image.tensor).unwrap().is_zero());
    }

    #[test]
    fn d3_transform_of_zero_is_zero() {
        let so32 = build_so32().unwrap();
        let t = d3_transform_rmatrix(&so32, &Scalar::zero(), &Scalar::zero()).unwrap();
        assert!(t.image.tensor.is_zero() && t.matches());
    }

    #[test]
    fn d3_readings() {
        let so32 = build_so32().unwrap();
        let out = d3_reading_outcomes(&so32);
        assert!(!out[0].bijective);
        assert!(out[1].bijective);
        assert!(out[1].structure_failures.is_empty(), "{:?}", out[1].structure_failures);
    }

    #[test]
    fn lorentz_and_undeformed_sector() {
        let so42 = build_so42().unwrap();
        for c in lorentz_decomposition_check(&so42) {
            assert!(c.passed(), "{c:?}");
        }
        for c in undeformed_sector_check(&so42).unwrap() {
            assert!(c.passed(), "{c:?}");
        }
    }

    #[test]
    fn grading_is_additive_and_audits_pass() {
        let so42 = build_so42().unwrap();
        let emb = so42.physical_embedding().unwrap();
        let grading = DimensionGrading::conformal(emb.sub.labels());
        assert!(grading.additivity_failures(&emb.sub).is_empty());
        let r = d4_null_plane_rmatrix(&emb.sub, &Scalar::one());
        assert!(dimension_audit("x", "r", &r, &grading, 1).passed());
        assert!(legs_within(&r, &D4_POINCARE).is_empty());
        assert!(naturality_failures(&emb, &r).unwrap().is_empty());
    }

    #[test]
    fn soft_commutant_variants() {
        let so32 = build_so32().unwrap();
        let checks = soft_commutant_check(&so32);
        let by = |id: &str| checks.iter().find(|c| c.id == id).unwrap().passed();
        assert!(by("physmaps.soft-commutant.contrast"));
        assert!(by("physmaps.soft-commutant.sign-variant"));
    }
}

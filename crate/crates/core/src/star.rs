//! Conjugate-linear anti-automorphisms (†-involutions) selecting real forms,
//! and reality of two-tensors under them.
//!
//! An involution is given by its action on basis vectors and extended
//! conjugate-linearly. On tensors it acts slot by slot without reordering
//! (`(a ⊗ b)^† = a^† ⊗ b^†`).

use thiserror::Error;

use crate::catalog::{int, ConformalAlgebra};
use crate::liealg::{check_same, Element, Embedding, LieAlgebra, LieError};
use crate::tensoralg::TwoTensor;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StarError {
    #[error("element outside the domain of involution `{0}`")]
    Domain(String),
    #[error(transparent)]
    Lie(#[from] LieError),
}

#[derive(Clone, Debug)]
pub struct Involution {
    pub name: String,
    pub algebra: LieAlgebra,
    images: Vec<Element>,
    /// Sign parameters such as `("lambda", 1), ("eps", -1)`.
    pub params: Vec<(String, i64)>,
    /// Indices of positive root vectors; the rest of the basis is Cartan.
    pub positive: Vec<usize>,
}

/// Outcome of [`Involution::check_antiautomorphism`].
#[derive(Clone, Debug)]
pub struct AntiAutomorphismReport {
    /// Basis pairs where `([x,y])^† ≠ [y^†, x^†]`, with the difference.
    pub bracket_failures: Vec<(String, String, Element)>,
    /// Basis vectors with `(x^†)^† ≠ x`.
    pub involutivity_failures: Vec<String>,
    /// Positive root vectors not mapped into the span of positive root vectors.
    pub root_failures: Vec<String>,
}

impl AntiAutomorphismReport {
    pub fn ok(&self) -> bool {
        self.bracket_failures.is_empty() && self.involutivity_failures.is_empty() && self.root_failures.is_empty()
    }

    pub fn witness(&self) -> String {
        let mut parts = Vec::new();
        if let Some((a, b, d)) = self.bracket_failures.first() {
            parts.push(format!("([{a},{b}])^† − [{b}^†,{a}^†] = {d}"));
        }
        if let Some(x) = self.involutivity_failures.first() {
            parts.push(format!("({x}^†)^† ≠ {x}"));
        }
        if let Some(x) = self.root_failures.first() {
            parts.push(format!("{x}^† leaves the positive root span"));
        }
        parts.join("; ")
    }
}

impl Involution {
    pub fn new(name: &str, algebra: LieAlgebra, images: Vec<Element>, params: Vec<(String, i64)>, positive: Vec<usize>) -> Self {
        assert_eq!(images.len(), algebra.dim(), "one image per basis vector");
        Involution { name: name.to_string(), algebra, images, params, positive }
    }

    pub fn images(&self) -> &[Element] {
        &self.images
    }

    pub fn apply(&self, x: &Element) -> Result<Element, StarError> {
        check_same(self.algebra.basis(), x.basis()).map_err(|_| StarError::Domain(self.name.clone()))?;
        Ok(x.terms().fold(self.algebra.zero(), |acc, (i, c)| &acc + &self.images[i].scale(&c.conj())))
    }

    fn ap(&self, x: &Element) -> Element {
        self.apply(x).expect("element of the involution's own algebra")
    }

    pub fn check_antiautomorphism(&self) -> AntiAutomorphismReport {
        let g = &self.algebra;
        let n = g.dim();
        let x = |i| Element::basis_vector(g.basis(), i);
        let mut bracket_failures = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                let lhs = self.ap(&g.bracket_basis(a, b));
                let rhs = g.br(&self.images[b], &self.images[a]);
                if lhs != rhs {
                    bracket_failures.push((g.labels()[a].clone(), g.labels()[b].clone(), &lhs - &rhs));
                }
            }
        }
        let involutivity_failures =
            (0..n).filter(|&i| self.ap(&self.images[i]) != x(i)).map(|i| g.labels()[i].clone()).collect();
        let root_failures = self
            .positive
            .iter()
            .filter(|&&i| self.images[i].terms().any(|(j, _)| !self.positive.contains(&j)))
            .map(|&i| g.labels()[i].clone())
            .collect();
        AntiAutomorphismReport { bracket_failures, involutivity_failures, root_failures }
    }

    /// `r^† − r`, with `r^† = Σ (r^{ab})^* X_a^† ⊗ X_b^†`; zero iff `r` is real.
    pub fn reality_residual(&self, r: &TwoTensor) -> Result<TwoTensor, StarError> {
        check_same(self.algebra.basis(), r.basis()).map_err(|_| StarError::Domain(self.name.clone()))?;
        let starred = r.map_slots(self.algebra.basis(), &self.images, |c| c.conj());
        Ok(&starred - r)
    }
}

/// The so(5) Borel subalgebra `h1, h2, e1..e4` inside so(3,2).
pub fn so32_borel(so32: &ConformalAlgebra) -> Result<Embedding, LieError> {
    so32.cartan_weyl_embedding()
}

/// The sl(4) Borel subalgebra `h1, h2, h3, e1..e6` inside so(4,2).
pub fn so42_borel(so42: &ConformalAlgebra) -> Result<Embedding, LieError> {
    let labels: Vec<String> = ["h1", "h2", "h3", "e1", "e2", "e3", "e4", "e5", "e6"].iter().map(|s| s.to_string()).collect();
    let elems: Vec<Element> = labels.iter().map(|l| so42.get(l)).collect();
    so42.ambient.subalgebra("so42-borel", labels, &elems)
}

/// `h_i^† = −h_i`, `e1^† = λ e1`, `e2^† = ε e2`, `e3^† = −λε e3`, `e4^† = ε e4`
/// on the so(5) Borel subalgebra.
pub fn so32_involution(borel: &LieAlgebra, lambda: i64, eps: i64) -> Involution {
    let el = |l: &str, s: i64| borel.el(l).scale(&int(s));
    let images = vec![
        el("h1", -1),
        el("h2", -1),
        el("e1", lambda),
        el("e2", eps),
        el("e3", -lambda * eps),
        el("e4", eps),
    ];
    Involution::new(
        &format!("so32:lambda={lambda},eps={eps}"),
        borel.clone(),
        images,
        vec![("lambda".into(), lambda), ("eps".into(), eps)],
        vec![2, 3, 4, 5],
    )
}

/// `h1^† = −h3`, `h2^† = −h2`, `e1^† = ε e3`, `e2^† = η e2`, `e4^† = ηε e5`,
/// `e6^† = η e6` on the sl(4) Borel subalgebra. The images of `h3`, `e3`, `e5`
/// are not printed; involutivity forces `h3^† = −h1`, `e3^† = ε e1`,
/// `e5^† = ηε e4` (signs are real, so `x = (x^†)^†` inverts each relation).
pub fn so42_involution(borel: &LieAlgebra, eta: i64, eps: i64) -> Involution {
    so42_involution_with_e6_sign(borel, eta, eps, 1)
}

/// As [`so42_involution`] but with `e6^† = sign · η e6`; `sign = −1` is the
/// mutation used to show the anti-automorphism check has teeth.
pub fn so42_involution_with_e6_sign(borel: &LieAlgebra, eta: i64, eps: i64, sign: i64) -> Involution {
    let el = |l: &str, s: i64| borel.el(l).scale(&int(s));
    let images = vec![
        el("h3", -1),
        el("h2", -1),
        el("h1", -1),
        el("e3", eps),
        el("e2", eta),
        el("e1", eps),
        el("e5", eta * eps),
        el("e4", eta * eps),
        el("e6", sign * eta),
    ];
    let mut params = vec![("eta".into(), eta), ("eps".into(), eps)];
    if sign != 1 {
        params.push(("e6_sign".into(), sign));
    }
    Involution::new(&format!("so42:eta={eta},eps={eps}"), borel.clone(), images, params, vec![3, 4, 5, 6, 7, 8])
}

/// The physical reality `M_AB^† = −M_AB` restricted to a subalgebra, if it
/// preserves it.
pub fn physical_dagger(emb: &Embedding) -> Option<Involution> {
    let images: Option<Vec<Element>> = emb
        .images()
        .iter()
        .map(|x| {
            // (Σ c_A M_A)^† = Σ c_A^* (−M_A)
            let dag = -&x.conj_coeffs();
            emb.from_ambient(&dag)
        })
        .collect();
    Some(Involution::new("physical M^†=-M", emb.sub.clone(), images?, vec![], Vec::new()))
}

/// Returns the sign parameters among `candidates` whose involution has the
/// same basis images as `target`.
pub fn matching_signs(target: &Involution, candidates: &[Involution]) -> Vec<Vec<(String, i64)>> {
    candidates.iter().filter(|c| c.images() == target.images()).map(|c| c.params.clone()).collect()
}

/// Parses `so32:lambda=1,eps=-1` / `so42:eta=-1,eps=1` into (algebra, params).
pub fn parse_star_spec(spec: &str) -> Option<(String, Vec<(String, i64)>)> {
    let (alg, rest) = spec.split_once(':')?;
    let mut params = Vec::new();
    for kv in rest.split(',').filter(|s| !s.trim().is_empty()) {
        let (k, v) = kv.split_once('=')?;
        let v: i64 = v.trim().parse().ok()?;
        if v != 1 && v != -1 {
            return None;
        }
        params.push((k.trim().to_string(), v));
    }
    Some((alg.trim().to_string(), params))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{build_so32, build_so42, so5_borel_rmatrix, sl4_borel_rmatrix};
    use crate::scalars::Scalar;

    #[test]
    fn so32_signs_and_reality() {
        let so = build_so32().unwrap();
        let borel = so32_borel(&so).unwrap().sub;
        let star = so32_involution(&borel, 1, -1);
        assert_eq!(star.apply(&borel.el("e2")).unwrap(), -borel.el("e2"));
        let get = |l: &str| borel.el(l);
        for (lambda, eps) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
            let s = so32_involution(&borel, lambda, eps);
            assert!(s.check_antiautomorphism().ok());
            let r = so5_borel_rmatrix(&get, &int(3), &int(5));
            assert_eq!(s.reality_residual(&r).unwrap().is_zero(), eps == -1);
        }
    }

    #[test]
    fn so42_signs_reality_and_mutation() {
        let so = build_so42().unwrap();
        let borel = so42_borel(&so).unwrap().sub;
        let star = so42_involution(&borel, -1, 1);
        assert_eq!(star.apply(&borel.el("e4")).unwrap(), -borel.el("e5"));
        assert!(star.check_antiautomorphism().ok());
        let get = |l: &str| borel.el(l);
        assert!(star.reality_residual(&sl4_borel_rmatrix(&get, &int(1), &int(2))).unwrap().is_zero());
        assert!(!star.reality_residual(&sl4_borel_rmatrix(&get, &int(1), &int(1))).unwrap().is_zero());
        let bad = so42_involution_with_e6_sign(&borel, -1, 1, -1);
        assert!(!bad.check_antiautomorphism().bracket_failures.is_empty());
    }

    #[test]
    fn involutive_on_random_elements() {
        let so = build_so42().unwrap();
        let borel = so42_borel(&so).unwrap().sub;
        let star = so42_involution(&borel, -1, 1);
        let x = Element::from_dense(
            borel.basis(),
            &(0..9).map(|k| &Scalar::from_int(k) + &Scalar::i().scale(&crate::scalars::rat(k - 3, 2))).collect::<Vec<_>>(),
        );
        assert_eq!(star.apply(&star.apply(&x).unwrap()).unwrap(), x);
    }

    #[test]
    fn abelian_conjugation_is_antiautomorphism() {
        let g = LieAlgebra::abelian("ab", vec!["x".into(), "y".into()]).unwrap();
        let s = Involution::new("id", g.clone(), vec![g.el("x"), g.el("y")], vec![], vec![]);
        assert!(s.check_antiautomorphism().ok());
    }

    #[test]
    fn star_spec_parsing() {
        assert_eq!(
            parse_star_spec("so32:lambda=1,eps=-1"),
            Some(("so32".into(), vec![("lambda".into(), 1), ("eps".into(), -1)]))
        );
        assert_eq!(parse_star_spec("so32:lambda=2"), None);
    }
}

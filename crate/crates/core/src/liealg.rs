//! Finite-dimensional Lie algebras given by exact structure constants.
//!
//! Invariants:
//! - structure constants are stored only for index pairs `a < b`; the rest
//!   follows from antisymmetry, so `[x, x] = 0` holds by construction;
//! - [`Element`]s never store zero coefficients, so equality is structural;
//! - every element carries its basis (`Arc<Basis>`), and mixing elements of
//!   different algebras is reported as [`LieError::ContextMismatch`].

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use rayon::prelude::*;
use thiserror::Error;

use crate::linalg::{solve_combination, Matrix, Span};
use crate::scalars::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("elements belong to different algebras ({left} vs {right})")]
    ContextMismatch { left: String, right: String },
    #[error("unknown basis label `{0}`")]
    UnknownLabel(String),
    #[error("duplicate basis label `{0}`")]
    DuplicateLabel(String),
    #[error("commutator [{left}, {right}] leaves the span of the given matrices")]
    Closure { left: String, right: String },
    #[error("the {count} given elements are linearly dependent (rank {rank})")]
    Rank { count: usize, rank: usize },
    #[error("structure constant index out of range: {0}")]
    IndexOutOfRange(usize),
    #[error("matrices must be square and of a common size")]
    MatrixShape,
}

static NEXT_BASIS_ID: AtomicU64 = AtomicU64::new(1);

/// Ordered, uniquely labelled basis of one algebra.
#[derive(Debug)]
pub struct Basis {
    id: u64,
    name: String,
    labels: Vec<String>,
    index: HashMap<String, usize>,
}

impl Basis {
    pub fn new(name: &str, labels: Vec<String>) -> Result<Arc<Basis>, LieError> {
        let mut index = HashMap::new();
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(LieError::DuplicateLabel(l.clone()));
            }
        }
        let id = NEXT_BASIS_ID.fetch_add(1, Ordering::Relaxed);
        Ok(Arc::new(Basis { id, name: name.to_string(), labels, index }))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn position(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn same_as(&self, other: &Basis) -> bool {
        self.id == other.id
    }
}

/// Sparse coefficient vector over an algebra basis.
#[derive(Clone)]
pub struct Element {
    basis: Arc<Basis>,
    coeffs: BTreeMap<usize, Scalar>,
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        self.basis.same_as(&other.basis) && self.coeffs == other.coeffs
    }
}

impl Eq for Element {}

impl Element {
    pub fn zero(basis: &Arc<Basis>) -> Self {
        Element { basis: basis.clone(), coeffs: BTreeMap::new() }
    }

    pub fn basis_vector(basis: &Arc<Basis>, index: usize) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(index, Scalar::one());
        Element { basis: basis.clone(), coeffs }
    }

    pub fn from_terms(basis: &Arc<Basis>, terms: impl IntoIterator<Item = (usize, Scalar)>) -> Self {
        let mut e = Element::zero(basis);
        for (i, c) in terms {
            e.add_term(i, &c);
        }
        e
    }

    pub fn from_dense(basis: &Arc<Basis>, v: &[Scalar]) -> Self {
        Element::from_terms(basis, v.iter().cloned().enumerate())
    }

    pub fn basis(&self) -> &Arc<Basis> {
        &self.basis
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.coeffs.iter().map(|(i, c)| (*i, c))
    }

    pub fn coeff(&self, index: usize) -> Scalar {
        self.coeffs.get(&index).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn to_dense(&self) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.basis.dim()];
        for (i, c) in &self.coeffs {
            v[*i] = c.clone();
        }
        v
    }

    pub fn add_term(&mut self, index: usize, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(index).or_default();
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&index);
        }
    }

    pub fn scale(&self, s: &Scalar) -> Element {
        Element::from_terms(&self.basis, self.coeffs.iter().map(|(i, c)| (*i, c * s)))
    }

    pub fn checked_add(&self, other: &Element) -> Result<Element, LieError> {
        check_same(&self.basis, &other.basis)?;
        let mut out = self.clone();
        for (i, c) in &other.coeffs {
            out.add_term(*i, c);
        }
        Ok(out)
    }

    /// Coefficients conjugated, basis untouched.
    pub fn conj_coeffs(&self) -> Element {
        Element::from_terms(&self.basis, self.coeffs.iter().map(|(i, c)| (*i, c.conj())))
    }

    /// Re-express on another basis of equal dimension with the same indices.
    pub fn with_basis(&self, basis: &Arc<Basis>) -> Element {
        Element { basis: basis.clone(), coeffs: self.coeffs.clone() }
    }
}

pub(crate) fn check_same(a: &Arc<Basis>, b: &Arc<Basis>) -> Result<(), LieError> {
    if a.same_as(b) {
        Ok(())
    } else {
        Err(LieError::ContextMismatch { left: a.name.clone(), right: b.name.clone() })
    }
}

/// Element arithmetic via operators panics on mismatched bases; use
/// [`Element::checked_add`] / [`LieAlgebra::bracket`] where that can happen.
impl std::ops::Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        self.checked_add(rhs).expect("adding elements of different algebras")
    }
}

impl std::ops::Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        self + &(-rhs)
    }
}

impl std::ops::Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        self.scale(&Scalar::from_int(-1))
    }
}

impl std::ops::Add for Element {
    type Output = Element;
    fn add(self, rhs: Element) -> Element {
        &self + &rhs
    }
}

impl std::ops::Sub for Element {
    type Output = Element;
    fn sub(self, rhs: Element) -> Element {
        &self - &rhs
    }
}

impl std::ops::Neg for Element {
    type Output = Element;
    fn neg(self) -> Element {
        -&self
    }
}

impl std::ops::Mul<&Element> for &Scalar {
    type Output = Element;
    fn mul(self, rhs: &Element) -> Element {
        rhs.scale(self)
    }
}

impl std::ops::Mul<Element> for Scalar {
    type Output = Element;
    fn mul(self, rhs: Element) -> Element {
        rhs.scale(&self)
    }
}

/// Wraps a coefficient in parentheses when it has more than one component.
pub(crate) fn coeff_prefix(c: &Scalar) -> (bool, String) {
    let text = c.to_string();
    if c.is_one() {
        return (false, String::new());
    }
    if c == &Scalar::from_int(-1) {
        return (true, String::new());
    }
    let nonzero = c.components().iter().filter(|q| !num_traits::Zero::is_zero(**q)).count();
    if nonzero == 1 {
        if let Some(rest) = text.strip_prefix('-') {
            return (true, format!("{rest}*"));
        }
        return (false, format!("{text}*"));
    }
    (false, format!("({text})*"))
}

/// Renders `Σ c·term` as `a - 2*b + (1 + i)*c`, shared by elements and tensors.
pub(crate) fn render_sum<'a>(terms: impl Iterator<Item = (&'a Scalar, String)>) -> String {
    let mut out = String::new();
    for (c, body) in terms {
        let (neg, prefix) = coeff_prefix(c);
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&prefix);
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = render_sum(self.coeffs.iter().map(|(i, c)| (c, self.basis.label(*i).to_string())));
        f.write_str(&s)
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element[{}]({self})", self.basis.name)
    }
}

/// Nonzero Jacobi residual on a basis triple.
#[derive(Debug, Clone)]
pub struct JacobiWitness {
    pub labels: [String; 3],
    pub residual: Element,
}

/// Result of iterating brackets until a span stabilizes.
#[derive(Debug, Clone)]
pub struct Closure {
    /// Spanning set of the closure: the inputs followed by new brackets.
    pub spanning: Vec<Element>,
    pub dim: usize,
    pub input_rank: usize,
    /// True iff the input span was already closed under brackets.
    pub closed: bool,
}

/// A Lie algebra with exact structure constants.
#[derive(Clone)]
pub struct LieAlgebra {
    basis: Arc<Basis>,
    // (a, b) with a < b  ->  [X_a, X_b]
    structure: BTreeMap<(usize, usize), Element>,
}

impl fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LieAlgebra({}, dim {})", self.basis.name, self.dim())
    }
}

impl LieAlgebra {
    /// Builds from bracket entries `(a, b, [X_a, X_b])` given as dense or sparse terms.
    /// Entries with `a > b` are stored negated; `a == b` entries must be zero.
    pub fn new(
        name: &str,
        labels: Vec<String>,
        brackets: impl IntoIterator<Item = (usize, usize, Vec<(usize, Scalar)>)>,
    ) -> Result<LieAlgebra, LieError> {
        let basis = Basis::new(name, labels)?;
        let n = basis.dim();
        let mut structure = BTreeMap::new();
        for (a, b, terms) in brackets {
            for &i in [a, b].iter().chain(terms.iter().map(|(i, _)| i)) {
                if i >= n {
                    return Err(LieError::IndexOutOfRange(i));
                }
            }
            let value = Element::from_terms(&basis, terms);
            if a == b || value.is_zero() {
                continue;
            }
            let (key, value) = if a < b { ((a, b), value) } else { ((b, a), -value) };
            structure.insert(key, value);
        }
        Ok(LieAlgebra { basis, structure })
    }

    pub fn abelian(name: &str, labels: Vec<String>) -> Result<LieAlgebra, LieError> {
        LieAlgebra::new(name, labels, std::iter::empty())
    }

    pub fn name(&self) -> &str {
        self.basis.name()
    }

    pub fn basis(&self) -> &Arc<Basis> {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn labels(&self) -> &[String] {
        self.basis.labels()
    }

    /// Structure constants for stored pairs `a < b`, in index order.
    pub fn structure(&self) -> impl Iterator<Item = (usize, usize, &Element)> {
        self.structure.iter().map(|((a, b), e)| (*a, *b, e))
    }

    pub fn element(&self, label: &str) -> Result<Element, LieError> {
        self.basis
            .position(label)
            .map(|i| Element::basis_vector(&self.basis, i))
            .ok_or_else(|| LieError::UnknownLabel(label.to_string()))
    }

    /// Basis vector by label.
    ///
    /// # Panics
    /// On an unknown label; intended for fixed catalog labels.
    pub fn el(&self, label: &str) -> Element {
        self.element(label).unwrap_or_else(|e| panic!("{e} in {}", self.name()))
    }

    pub fn zero(&self) -> Element {
        Element::zero(&self.basis)
    }

    /// `[X_a, X_b]` on basis indices.
    pub fn bracket_basis(&self, a: usize, b: usize) -> Element {
        use std::cmp::Ordering::*;
        match a.cmp(&b) {
            Equal => self.zero(),
            Less => self.structure.get(&(a, b)).cloned().unwrap_or_else(|| self.zero()),
            Greater => self.structure.get(&(b, a)).map(|e| -e).unwrap_or_else(|| self.zero()),
        }
    }

    pub fn bracket(&self, x: &Element, y: &Element) -> Result<Element, LieError> {
        check_same(&self.basis, &x.basis)?;
        check_same(&self.basis, &y.basis)?;
        let mut out = self.zero();
        for (a, ca) in x.terms() {
            for (b, cb) in y.terms() {
                if a == b {
                    continue;
                }
                let coef = ca * cb;
                for (c, cc) in self.bracket_basis(a, b).terms() {
                    out.add_term(c, &(&coef * cc));
                }
            }
        }
        Ok(out)
    }

    /// Bracket of two elements known to belong to this algebra.
    ///
    /// # Panics
    /// On a context mismatch.
    pub fn br(&self, x: &Element, y: &Element) -> Element {
        self.bracket(x, y).expect("bracket of foreign elements")
    }

    /// Matrix of `ad_x` acting on column vectors of coefficients.
    pub fn ad_matrix(&self, x: &Element) -> Matrix {
        let n = self.dim();
        let cols: Vec<Vec<Scalar>> =
            (0..n).map(|b| self.br(x, &Element::basis_vector(&self.basis, b)).to_dense()).collect();
        Matrix::from_columns(&cols)
    }

    fn jacobi_on(&self, a: usize, b: usize, c: usize) -> Element {
        let x = |i| Element::basis_vector(&self.basis, i);
        let t1 = self.br(&self.bracket_basis(a, b), &x(c));
        let t2 = self.br(&self.bracket_basis(b, c), &x(a));
        let t3 = self.br(&self.bracket_basis(c, a), &x(b));
        &(&t1 + &t2) + &t3
    }

    /// First nonzero `[[A,B],C] + [[B,C],A] + [[C,A],B]` over basis triples `A<B<C`,
    /// or `None` when the Jacobi identity holds exactly.
    pub fn jacobi_residual(&self) -> Option<JacobiWitness> {
        let n = self.dim();
        let triples: Vec<(usize, usize, usize)> = (0..n)
            .flat_map(|a| (a + 1..n).flat_map(move |b| (b + 1..n).map(move |c| (a, b, c))))
            .collect();
        triples
            .par_iter()
            .map(|&(a, b, c)| (a, b, c, self.jacobi_on(a, b, c)))
            .find_first(|(_, _, _, r)| !r.is_zero())
            .map(|(a, b, c, residual)| JacobiWitness {
                labels: [a, b, c].map(|i| self.basis.label(i).to_string()),
                residual,
            })
    }

    /// Builds the algebra spanned by linearly independent square matrices,
    /// expanding every pairwise commutator in the given images.
    pub fn from_matrices(name: &str, labels: Vec<String>, images: &[Matrix]) -> Result<LieAlgebra, LieError> {
        assert_eq!(labels.len(), images.len(), "one label per matrix");
        let size = images.first().map_or(0, Matrix::rows);
        if images.iter().any(|m| !m.is_square() || m.rows() != size) {
            return Err(LieError::MatrixShape);
        }
        let columns: Vec<Vec<Scalar>> = images.iter().map(|m| m.entries().to_vec()).collect();
        let rank = Matrix::from_columns(&columns).rank();
        if rank < images.len() {
            return Err(LieError::Rank { count: images.len(), rank });
        }
        let mut brackets = Vec::new();
        for a in 0..images.len() {
            for b in a + 1..images.len() {
                let comm = images[a].commutator(&images[b]);
                let coords = solve_combination(&columns, comm.entries()).ok_or_else(|| LieError::Closure {
                    left: labels[a].clone(),
                    right: labels[b].clone(),
                })?;
                brackets.push((a, b, coords.into_iter().enumerate().collect()));
            }
        }
        LieAlgebra::new(name, labels, brackets)
    }

    /// Brackets generators until their span stabilizes (at most `dim` rounds).
    pub fn subalgebra_closure(&self, generators: &[Element]) -> Result<Closure, LieError> {
        for g in generators {
            check_same(&self.basis, &g.basis)?;
        }
        let mut span = Span::new();
        let mut spanning: Vec<Element> = Vec::new();
        for g in generators {
            if span.insert(&g.to_dense()) {
                spanning.push(g.clone());
            }
        }
        let input_rank = span.dim();
        let mut closed = true;
        for _ in 0..self.dim() {
            let mut grew = false;
            let current = spanning.clone();
            for i in 0..current.len() {
                for j in i + 1..current.len() {
                    let z = self.br(&current[i], &current[j]);
                    if span.insert(&z.to_dense()) {
                        spanning.push(z);
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
            closed = false;
        }
        Ok(Closure { dim: span.dim(), spanning, input_rank, closed })
    }

    /// Copy of the algebra with one structure constant shifted, for mutation tests.
    /// Antisymmetry is preserved; the Jacobi identity generally is not.
    pub fn perturbed(&self, a: usize, b: usize, target: usize, delta: &Scalar) -> LieAlgebra {
        let basis = Basis::new(&format!("{}~perturbed", self.name()), self.labels().to_vec())
            .expect("labels already unique");
        let mut structure: BTreeMap<(usize, usize), Element> =
            self.structure.iter().map(|(k, v)| (*k, v.with_basis(&basis))).collect();
        let (key, d) = if a < b { ((a, b), delta.clone()) } else { ((b, a), -delta) };
        let entry = structure.entry(key).or_insert_with(|| Element::zero(&basis));
        entry.add_term(target, &d);
        if entry.is_zero() {
            structure.remove(&key);
        }
        LieAlgebra { basis, structure }
    }

    /// Change of basis: `elements[i]` (in this algebra) becomes the new basis
    /// vector `labels[i]`. The elements must form a basis of a subalgebra.
    pub fn subalgebra(&self, name: &str, labels: Vec<String>, elements: &[Element]) -> Result<Embedding, LieError> {
        assert_eq!(labels.len(), elements.len(), "one label per element");
        for e in elements {
            check_same(&self.basis, &e.basis)?;
        }
        let columns: Vec<Vec<Scalar>> = elements.iter().map(Element::to_dense).collect();
        let rank = Matrix::from_columns(&columns).rank();
        if rank < elements.len() {
            return Err(LieError::Rank { count: elements.len(), rank });
        }
        let mut brackets = Vec::new();
        for a in 0..elements.len() {
            for b in a + 1..elements.len() {
                let z = self.br(&elements[a], &elements[b]);
                let coords = solve_combination(&columns, &z.to_dense()).ok_or_else(|| LieError::Closure {
                    left: labels[a].clone(),
                    right: labels[b].clone(),
                })?;
                brackets.push((a, b, coords.into_iter().enumerate().collect()));
            }
        }
        let sub = LieAlgebra::new(name, labels, brackets)?;
        Ok(Embedding { sub, ambient: self.clone(), images: elements.to_vec(), columns })
    }
}

/// Injective homomorphism from `sub` into `ambient`, given by basis images.
#[derive(Clone, Debug)]
pub struct Embedding {
    pub sub: LieAlgebra,
    pub ambient: LieAlgebra,
    images: Vec<Element>,
    columns: Vec<Vec<Scalar>>,
}

impl Embedding {
    pub fn to_ambient(&self, x: &Element) -> Element {
        assert!(x.basis.same_as(&self.sub.basis), "element not in the subalgebra");
        let mut out = self.ambient.zero();
        for (i, c) in x.terms() {
            out = &out + &self.images[i].scale(c);
        }
        out
    }

    /// Coordinates in the subalgebra basis, or `None` if outside its span.
    pub fn from_ambient(&self, x: &Element) -> Option<Element> {
        if !x.basis.same_as(&self.ambient.basis) {
            return None;
        }
        let coords = solve_combination(&self.columns, &x.to_dense())?;
        Some(Element::from_dense(&self.sub.basis, &coords))
    }

    pub fn images(&self) -> &[Element] {
        &self.images
    }

    pub fn is_full_rank(&self) -> bool {
        self.sub.dim() == self.ambient.dim()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sl2() -> LieAlgebra {
        let h = Matrix::diagonal(&[Scalar::one(), Scalar::from_int(-1)]);
        let ep = Matrix::unit(2, 0, 1);
        let em = Matrix::unit(2, 1, 0);
        LieAlgebra::from_matrices("sl2", vec!["h".into(), "e_plus".into(), "e_minus".into()], &[h, ep, em])
            .unwrap()
    }

    #[test]
    fn chevalley_relations_from_matrices() {
        let g = sl2();
        let (h, ep, em) = (g.el("h"), g.el("e_plus"), g.el("e_minus"));
        assert_eq!(g.br(&h, &ep), ep.scale(&Scalar::from_int(2)));
        assert_eq!(g.br(&h, &em), em.scale(&Scalar::from_int(-2)));
        assert_eq!(g.br(&ep, &em), h);
        assert!(g.jacobi_residual().is_none());
    }

    #[test]
    fn identity_matrix_gives_abelian() {
        let g = LieAlgebra::from_matrices("one", vec!["id".into()], &[Matrix::identity(3)]).unwrap();
        assert_eq!(g.structure().count(), 0);
        assert!(g.jacobi_residual().is_none());
    }

    #[test]
    fn closure_and_rank_errors() {
        let e = LieAlgebra::from_matrices(
            "bad",
            vec!["a".into(), "b".into()],
            &[Matrix::unit(2, 0, 1), Matrix::unit(2, 1, 0)],
        )
        .unwrap_err();
        assert_eq!(e, LieError::Closure { left: "a".into(), right: "b".into() });
        let e = LieAlgebra::from_matrices(
            "dep",
            vec!["a".into(), "b".into()],
            &[Matrix::unit(2, 0, 1), Matrix::unit(2, 0, 1).scale(&Scalar::from_int(3))],
        )
        .unwrap_err();
        assert!(matches!(e, LieError::Rank { count: 2, rank: 1 }));
    }

    #[test]
    fn mismatched_contexts() {
        let g = sl2();
        let k = sl2();
        assert!(matches!(g.bracket(&g.el("h"), &k.el("h")), Err(LieError::ContextMismatch { .. })));
    }

    #[test]
    fn perturbation_breaks_jacobi() {
        let g = sl2();
        let bad = g.perturbed(0, 1, 0, &Scalar::one());
        assert!(bad.jacobi_residual().is_some());
    }

    #[test]
    fn closure_of_borel() {
        let g = sl2();
        let c = g.subalgebra_closure(&[g.el("h"), g.el("e_plus")]).unwrap();
        assert!(c.closed);
        assert_eq!(c.dim, 2);
        let c = g.subalgebra_closure(&[g.el("e_plus"), g.el("e_minus")]).unwrap();
        assert!(!c.closed);
        assert_eq!(c.dim, 3);
    }

    #[test]
    fn embedding_round_trip() {
        let g = sl2();
        let emb = g.subalgebra("borel", vec!["x".into(), "y".into()], &[g.el("h"), g.el("e_plus")]).unwrap();
        let x = emb.sub.el("x");
        let y = emb.sub.el("y");
        assert_eq!(emb.sub.br(&x, &y), y.scale(&Scalar::from_int(2)));
        assert_eq!(emb.from_ambient(&emb.to_ambient(&x)).unwrap(), x);
        assert!(emb.from_ambient(&g.el("e_minus")).is_none());
    }

    fn arb_coeffs() -> impl Strategy<Value = Vec<i64>> {
        proptest::collection::vec(-4i64..5, 3)
    }

    proptest! {
        #[test]
        fn bracket_antisymmetric_bilinear(a in arb_coeffs(), b in arb_coeffs(), c in arb_coeffs(), k in -3i64..4) {
            let g = sl2();
            let mk = |v: &Vec<i64>| Element::from_dense(g.basis(), &v.iter().map(|&n| Scalar::from_int(n)).collect::<Vec<_>>());
            let (x, y, z) = (mk(&a), mk(&b), mk(&c));
            prop_assert!(g.br(&x, &x).is_zero());
            prop_assert_eq!(g.br(&x, &y), -g.br(&y, &x));
            let k = Scalar::from_int(k);
            prop_assert_eq!(g.br(&(&x.scale(&k) + &z), &y), &g.br(&x, &y).scale(&k) + &g.br(&z, &y));
        }
    }
}

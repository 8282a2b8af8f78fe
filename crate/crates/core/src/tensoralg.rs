//! Two- and three-tensors over a Lie algebra: wedges, the classical
//! Yang-Baxter residual, ad-invariance and coboundary cocommutators.
//!
//! Slots are ordered; nothing is symmetrized implicitly. Keys iterate in basis
//! order, so rendered output is deterministic.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use crate::liealg::{check_same, render_sum, Basis, Element, LieAlgebra, LieError};
use crate::scalars::Scalar;

/// Sparse tensor with `N` ordered slots over one basis.
#[derive(Clone)]
pub struct Tensor<const N: usize> {
    basis: Arc<Basis>,
    coeffs: BTreeMap<[usize; N], Scalar>,
}

pub type TwoTensor = Tensor<2>;
pub type ThreeTensor = Tensor<3>;

impl<const N: usize> PartialEq for Tensor<N> {
    fn eq(&self, other: &Self) -> bool {
        self.basis.same_as(&other.basis) && self.coeffs == other.coeffs
    }
}

impl<const N: usize> Eq for Tensor<N> {}

impl<const N: usize> Tensor<N> {
    pub fn zero(basis: &Arc<Basis>) -> Self {
        Tensor { basis: basis.clone(), coeffs: BTreeMap::new() }
    }

    pub fn basis(&self) -> &Arc<Basis> {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[usize; N], &Scalar)> {
        self.coeffs.iter()
    }

    pub fn coeff(&self, key: &[usize; N]) -> Scalar {
        self.coeffs.get(key).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, key: [usize; N], c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(key).or_default();
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&key);
        }
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        let mut out = Tensor::zero(&self.basis);
        for (k, c) in &self.coeffs {
            out.add_term(*k, &(c * s));
        }
        out
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, LieError> {
        check_same(&self.basis, &other.basis)?;
        let mut out = self.clone();
        for (k, c) in &other.coeffs {
            out.add_term(*k, c);
        }
        Ok(out)
    }

    /// Applies a linear map slot by slot: basis vector `i` goes to `images[i]`,
    /// and the coefficients are transformed by `coeff_map` (identity or conjugation).
    pub fn map_slots(&self, target: &Arc<Basis>, images: &[Element], coeff_map: impl Fn(&Scalar) -> Scalar) -> Self {
        let mut out = Tensor::zero(target);
        for (key, c) in &self.coeffs {
            let c = coeff_map(c);
            let mut partial: Vec<([usize; N], Scalar)> = vec![([0; N], c)];
            for (slot, &idx) in key.iter().enumerate() {
                let img = &images[idx];
                let mut next = Vec::new();
                for (k, coef) in &partial {
                    for (j, cj) in img.terms() {
                        let mut k2 = *k;
                        k2[slot] = j;
                        next.push((k2, coef * cj));
                    }
                }
                partial = next;
            }
            for (k, coef) in partial {
                out.add_term(k, &coef);
            }
        }
        out
    }

    /// The first nonzero component, rendered as `c * a ⊗ b ⊗ ...`.
    pub fn first_component(&self) -> Option<String> {
        self.coeffs.iter().next().map(|(k, c)| {
            let legs: Vec<&str> = k.iter().map(|&i| self.basis.label(i)).collect();
            format!("({c}) * {}", legs.join(" ⊗ "))
        })
    }

    fn render_tensor(&self) -> String {
        render_sum(self.coeffs.iter().map(|(k, c)| {
            let legs: Vec<&str> = k.iter().map(|&i| self.basis.label(i)).collect();
            (c, legs.join(" ⊗ "))
        }))
    }
}

impl<const N: usize> std::ops::Add for &Tensor<N> {
    type Output = Tensor<N>;
    fn add(self, rhs: &Tensor<N>) -> Tensor<N> {
        self.checked_add(rhs).expect("adding tensors over different algebras")
    }
}

impl<const N: usize> std::ops::Sub for &Tensor<N> {
    type Output = Tensor<N>;
    fn sub(self, rhs: &Tensor<N>) -> Tensor<N> {
        self + &rhs.scale(&Scalar::from_int(-1))
    }
}

impl TwoTensor {
    /// `x ⊗ y`.
    pub fn tensor(x: &Element, y: &Element) -> Result<TwoTensor, LieError> {
        check_same(x.basis(), y.basis())?;
        let mut out = TwoTensor::zero(x.basis());
        for (a, ca) in x.terms() {
            for (b, cb) in y.terms() {
                out.add_term([a, b], &(ca * cb));
            }
        }
        Ok(out)
    }

    /// Slot swap `a ⊗ b ↦ b ⊗ a`.
    pub fn flip(&self) -> TwoTensor {
        let mut out = TwoTensor::zero(&self.basis);
        for ([a, b], c) in &self.coeffs {
            out.add_term([*b, *a], c);
        }
        out
    }

    pub fn is_antisymmetric(&self) -> bool {
        (self + &self.flip()).is_zero()
    }

    /// Renders as a sum of wedges when antisymmetric, otherwise as tensors.
    pub fn to_text(&self) -> String {
        if !self.is_antisymmetric() {
            return self.render_tensor();
        }
        render_sum(
            self.coeffs
                .iter()
                .filter(|([a, b], _)| a < b)
                .map(|([a, b], c)| (c, format!("{} ^ {}", self.basis.label(*a), self.basis.label(*b)))),
        )
    }
}

/// `x ∧ y = x ⊗ y − y ⊗ x`.
pub fn wedge(x: &Element, y: &Element) -> Result<TwoTensor, LieError> {
    let t = TwoTensor::tensor(x, y)?;
    Ok(&t - &t.flip())
}

/// Shorthand for wedges of catalog elements.
///
/// # Panics
/// On a basis mismatch.
pub fn w(x: &Element, y: &Element) -> TwoTensor {
    wedge(x, y).expect("wedge of foreign elements")
}

impl fmt::Display for TwoTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for TwoTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TwoTensor({})", self.to_text())
    }
}

impl fmt::Display for ThreeTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_tensor())
    }
}

impl fmt::Debug for ThreeTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ThreeTensor({})", self.render_tensor())
    }
}

/// `[r12, r13] + [r12, r23] + [r13, r23]`; zero iff `r` solves the classical
/// Yang-Baxter equation.
///
/// With `r = Σ r^{ab} X_a ⊗ X_b` the three terms are
/// `[X_a, X_c] ⊗ X_b ⊗ X_d`, `X_a ⊗ [X_b, X_c] ⊗ X_d` and `X_a ⊗ X_c ⊗ [X_b, X_d]`
/// weighted by `r^{ab} r^{cd}`.
pub fn cybe_residual(g: &LieAlgebra, r: &TwoTensor) -> Result<ThreeTensor, LieError> {
    check_same(g.basis(), r.basis())?;
    let terms: Vec<(&[usize; 2], &Scalar)> = r.terms().collect();
    let parts: Vec<ThreeTensor> = (0..3)
        .into_par_iter()
        .map(|which| {
            let mut out = ThreeTensor::zero(g.basis());
            for ([a, b], c1) in &terms {
                for ([c, d], c2) in &terms {
                    let coef = *c1 * *c2;
                    let br = match which {
                        0 => g.bracket_basis(*a, *c),
                        1 => g.bracket_basis(*b, *c),
                        _ => g.bracket_basis(*b, *d),
                    };
                    for (i, ci) in br.terms() {
                        let key = match which {
                            0 => [i, *b, *d],
                            1 => [*a, i, *d],
                            _ => [*a, *c, i],
                        };
                        out.add_term(key, &(&coef * ci));
                    }
                }
            }
            out
        })
        .collect();
    Ok(parts.iter().fold(ThreeTensor::zero(g.basis()), |acc, p| &acc + p))
}

/// `[x, X_a]` for each basis index, computed on first use.
struct AdCache<'a> {
    g: &'a LieAlgebra,
    x: &'a Element,
    images: Vec<std::sync::OnceLock<Element>>,
}

impl<'a> AdCache<'a> {
    fn new(g: &'a LieAlgebra, x: &'a Element) -> Self {
        AdCache { g, x, images: (0..g.dim()).map(|_| std::sync::OnceLock::new()).collect() }
    }

    fn image(&self, a: usize) -> &Element {
        self.images[a].get_or_init(|| self.g.br(self.x, &Element::basis_vector(self.g.basis(), a)))
    }
}

/// `[x ⊗ 1 + 1 ⊗ x, t]`.
pub fn adjoint_action_two(g: &LieAlgebra, x: &Element, t: &TwoTensor) -> Result<TwoTensor, LieError> {
    check_same(g.basis(), x.basis())?;
    check_same(g.basis(), t.basis())?;
    let ad = AdCache::new(g, x);
    let mut out = TwoTensor::zero(g.basis());
    for ([a, b], c) in t.terms() {
        for (i, ci) in ad.image(*a).terms() {
            out.add_term([i, *b], &(c * ci));
        }
        for (i, ci) in ad.image(*b).terms() {
            out.add_term([*a, i], &(c * ci));
        }
    }
    Ok(out)
}

/// `[x ⊗ 1 ⊗ 1 + 1 ⊗ x ⊗ 1 + 1 ⊗ 1 ⊗ x, t]`.
pub fn adjoint_action_three(g: &LieAlgebra, x: &Element, t: &ThreeTensor) -> Result<ThreeTensor, LieError> {
    check_same(g.basis(), x.basis())?;
    check_same(g.basis(), t.basis())?;
    let ad = AdCache::new(g, x);
    let mut out = ThreeTensor::zero(g.basis());
    for (key, c) in t.terms() {
        for slot in 0..3 {
            for (i, ci) in ad.image(key[slot]).terms() {
                let mut k = *key;
                k[slot] = i;
                out.add_term(k, &(c * ci));
            }
        }
    }
    Ok(out)
}

/// Per-generator ad-action residuals; all zero means `t` is invariant.
pub fn ad_invariance_residual(
    g: &LieAlgebra,
    t: &ThreeTensor,
    generators: &[Element],
) -> Result<Vec<ThreeTensor>, LieError> {
    generators.par_iter().map(|x| adjoint_action_three(g, x, t)).collect()
}

/// Coboundary cocommutator `δ(x) = [x ⊗ 1 + 1 ⊗ x, r]`.
pub fn cocommutator(g: &LieAlgebra, x: &Element, r: &TwoTensor) -> Result<TwoTensor, LieError> {
    adjoint_action_two(g, x, r)
}

/// `δ([x,y]) − (x·δ(y) − y·δ(x))`: zero for every coboundary δ (1-cocycle identity).
pub fn cocycle_residual(g: &LieAlgebra, x: &Element, y: &Element, r: &TwoTensor) -> Result<TwoTensor, LieError> {
    let lhs = cocommutator(g, &g.bracket(x, y)?, r)?;
    let dy = cocommutator(g, y, r)?;
    let dx = cocommutator(g, x, r)?;
    let rhs = &adjoint_action_two(g, x, &dy)? - &adjoint_action_two(g, y, &dx)?;
    Ok(&lhs - &rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;
    use proptest::prelude::*;

    fn sl2() -> LieAlgebra {
        let h = Matrix::diagonal(&[Scalar::one(), Scalar::from_int(-1)]);
        LieAlgebra::from_matrices(
            "sl2",
            vec!["h".into(), "e_plus".into(), "e_minus".into()],
            &[h, Matrix::unit(2, 0, 1), Matrix::unit(2, 1, 0)],
        )
        .unwrap()
    }

    #[test]
    fn wedge_basics() {
        let g = sl2();
        let (h, ep) = (g.el("h"), g.el("e_plus"));
        let t = w(&h, &ep);
        assert_eq!(t.coeff(&[0, 1]), Scalar::one());
        assert_eq!(t.coeff(&[1, 0]), Scalar::from_int(-1));
        assert!(w(&h, &h).is_zero());
        assert!((&w(&h, &ep) + &w(&ep, &h)).is_zero());
        assert_eq!(t.to_text(), "h ^ e_plus");
    }

    #[test]
    fn nonstandard_solves_cybe_standard_does_not() {
        let g = sl2();
        let r = w(&g.el("h"), &g.el("e_plus"));
        assert!(cybe_residual(&g, &r).unwrap().is_zero());
        let rs = w(&g.el("e_plus"), &g.el("e_minus"));
        let res = cybe_residual(&g, &rs).unwrap();
        assert!(!res.is_zero());
        // modified CYBE: the residual is ad-invariant
        let gens = [g.el("h"), g.el("e_plus"), g.el("e_minus")];
        assert!(ad_invariance_residual(&g, &res, &gens).unwrap().iter().all(ThreeTensor::is_zero));
    }

    #[test]
    fn cocommutators_of_nonstandard_sl2() {
        let g = sl2();
        let (h, ep) = (g.el("h"), g.el("e_plus"));
        let r = w(&h, &ep);
        assert!(cocommutator(&g, &ep, &r).unwrap().is_zero());
        assert_eq!(cocommutator(&g, &h, &r).unwrap(), r.scale(&Scalar::from_int(2)));
    }

    #[test]
    fn zero_tensor_is_invariant() {
        let g = sl2();
        let t = ThreeTensor::zero(g.basis());
        assert!(ad_invariance_residual(&g, &t, &[g.el("h")]).unwrap()[0].is_zero());
    }

    fn arb_vec() -> impl Strategy<Value = Vec<i64>> {
        proptest::collection::vec(-3i64..4, 3)
    }

    proptest! {
        #[test]
        fn cybe_is_quadratic(a in arb_vec(), b in arb_vec(), k in -3i64..4) {
            let g = sl2();
            let mk = |v: &Vec<i64>| Element::from_dense(g.basis(), &v.iter().map(|&n| Scalar::from_int(n)).collect::<Vec<_>>());
            let r = w(&mk(&a), &mk(&b));
            prop_assert!(r.is_antisymmetric());
            let k = Scalar::from_int(k);
            let lhs = cybe_residual(&g, &r.scale(&k)).unwrap();
            let rhs = cybe_residual(&g, &r).unwrap().scale(&(&k * &k));
            prop_assert_eq!(lhs, rhs);
        }
    }

    proptest! {
        #[test]
        fn coboundary_is_a_cocycle(a in arb_vec(), b in arb_vec(), c in arb_vec(), d in arb_vec()) {
            let g = sl2();
            let el = |v: &[i64]| Element::from_dense(g.basis(), &v.iter().map(|&k| Scalar::from_int(k)).collect::<Vec<_>>());
            let r = w(&el(&c), &el(&d));
            prop_assert!(cocycle_residual(&g, &el(&a), &el(&b), &r).unwrap().is_zero());
        }
    }
}

//! n-Lie coalgebras: comultiplications `Δ(e_l) = Σ a_l^{i_1..i_n} e_{i_1} ∧ .. ∧ e_{i_n}`.

use num_traits::Zero;

use crate::algebra::{derived_algebra, fundamental_identity_report, StructureConstants, VectorElement};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::report::{ValidationReport, Violation};
use crate::scalar::{one, Scalar};
use crate::tensor::{omega_s, wedge, TensorElement};

/// A comultiplication, stored as antisymmetric constants with entry `k` at
/// tuple `I` meaning `a_k^I`. The dual bracket on `L*` has the same constants.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Comultiplication(StructureConstants);

impl Comultiplication {
    /// The zero comultiplication.
    pub fn new(arity: usize, dim: usize) -> Result<Self> {
        Ok(Comultiplication(StructureConstants::new(arity, dim)?))
    }

    pub fn from_constants(c: StructureConstants) -> Self {
        Comultiplication(c)
    }

    pub fn constants(&self) -> &StructureConstants {
        &self.0
    }

    pub fn into_constants(self) -> StructureConstants {
        self.0
    }

    pub fn arity(&self) -> usize {
        self.0.arity()
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Sets `a_l^{upper}`.
    pub fn set(&mut self, l: usize, upper: &[usize], value: Scalar) -> Result<()> {
        self.0.set(upper, l, value)
    }

    /// Adds `value` to `a_l^{upper}`.
    pub fn add(&mut self, l: usize, upper: &[usize], value: &Scalar) -> Result<()> {
        self.0.add(upper, l, value)
    }

    /// `a_l^{upper}` with the antisymmetry sign.
    pub fn get(&self, l: usize, upper: &[usize]) -> Result<Scalar> {
        self.0.get(upper, l)
    }
}

/// `Δ(e_l)` as an element of the `n`-fold tensor power.
pub fn delta_basis(d: &Comultiplication, l: usize) -> Result<TensorElement> {
    delta_apply(d, &VectorElement::basis(l, d.dim())?)
}

/// `Δ(v) = Σ_l v_l Σ_I a_l^I wedge(I)`.
pub fn delta_apply(d: &Comultiplication, v: &VectorElement) -> Result<TensorElement> {
    if v.dim() != d.dim() {
        return Err(Error::DimensionMismatch(v.dim(), d.dim()));
    }
    let mut out = TensorElement::zero(d.arity(), d.dim());
    for (t, coeffs) in d.0.entries() {
        let mut c = Scalar::zero();
        for (a, x) in coeffs.iter().zip(v.coeffs()) {
            if !a.is_zero() && !x.is_zero() {
                c += a * x;
            }
        }
        if !c.is_zero() {
            out.add_scaled(&wedge(t, d.dim())?, &c);
        }
    }
    Ok(out)
}

/// The bracket `Δ*` on the dual space. Pure relabeling of constants.
pub fn dual_algebra(d: &Comultiplication) -> StructureConstants {
    d.0.clone()
}

/// `μ*` as a comultiplication on the dual space. Inverse of [`dual_algebra`].
pub fn dual_comultiplication(mu: &StructureConstants) -> Comultiplication {
    Comultiplication(mu.clone())
}

/// Coalgebra condition through the dual: `(L*, Δ*)` must satisfy the
/// fundamental identity.
pub fn check_coalgebra_dual(d: &Comultiplication) -> ValidationReport {
    fundamental_identity_report(&d.0, "coalgebra_dual")
}

/// Number of basis tensors in the `(2n−1)`-fold power, the worst-case size of
/// the tensor-route computation.
pub fn tensor_route_size(arity: usize, dim: usize) -> u128 {
    (dim as u128).saturating_pow(2 * arity as u32 - 1)
}

/// Coalgebra condition in tensor form: for each `e_k`,
/// `T = (1 ⊗ .. ⊗ 1 ⊗ Δ) Δ(e_k)` must satisfy `T = Σ_s (−1)^{n−s} ω_s(T)`.
/// Reports the nonzero residual tensor per `k`.
pub fn check_coalgebra_tensor(d: &Comultiplication) -> ValidationReport {
    let n = d.arity();
    let m = d.dim();
    let images: Vec<TensorElement> = (1..=m)
        .map(|l| delta_basis(d, l).expect("index in range"))
        .collect();
    let mut out = Vec::new();
    for k in 1..=m {
        let first = &images[k - 1];
        if first.is_zero() {
            continue;
        }
        let t = first.expand_last(n, |i| images[i - 1].clone());
        let mut r = t.clone();
        for s in 1..=n {
            let w = omega_s(&t, n, s).expect("order is 2n-1");
            let sign = if (n - s) % 2 == 0 { -one() } else { one() };
            r.add_scaled(&w, &sign);
        }
        if !r.is_zero() {
            out.push(Violation::tensor("coalgebra_tensor", vec![vec![k]], r));
        }
    }
    ValidationReport::from_violations(out)
}

/// `R(Δ)`: dimension of the derived algebra of `(L*, Δ*)`.
pub fn rank(d: &Comultiplication) -> usize {
    derived_algebra(&d.0).1
}

/// Violations of `(φ ⊗ .. ⊗ φ) Δ_1(e_x) = Δ_2(φ e_x)` for each basis vector.
pub fn coalgebra_morphism_report(phi: &Matrix, d1: &Comultiplication, d2: &Comultiplication) -> Result<ValidationReport> {
    if d1.arity() != d2.arity() {
        return Err(Error::ArityMismatch(d1.arity(), d2.arity()));
    }
    if d1.dim() != d2.dim() || phi.rows() != d1.dim() || phi.cols() != d1.dim() {
        return Err(Error::DimensionMismatch(phi.rows(), d1.dim()));
    }
    let mut out = Vec::new();
    for x in 1..=d1.dim() {
        let lhs = delta_basis(d1, x)?.map_all(phi)?;
        let rhs = delta_apply(d2, &VectorElement::from_coeffs(phi.column(x - 1)))?;
        if lhs != rhs {
            out.push(Violation::tensor("coalgebra_morphism", vec![vec![x]], &lhs - &rhs));
        }
    }
    Ok(ValidationReport::from_violations(out))
}

/// Whether the invertible map `φ` (column `j` = image of `e_{j+1}`) is a
/// coalgebra isomorphism `(L, Δ_1) → (L, Δ_2)`. Singular maps are rejected.
pub fn check_coalgebra_iso(phi: &Matrix, d1: &Comultiplication, d2: &Comultiplication) -> Result<bool> {
    if phi.is_square() && phi.determinant()?.is_zero() {
        return Err(Error::Singular);
    }
    Ok(coalgebra_morphism_report(phi, d1, d2)?.is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;
    use crate::tensor::pair;

    fn top(n: usize) -> Comultiplication {
        let mut d = Comultiplication::new(n, n + 1).unwrap();
        for i in 1..=n + 1 {
            let t: Vec<usize> = (1..=n + 1).filter(|&j| j != i).collect();
            d.set(i, &t, int(1)).unwrap();
        }
        d
    }

    #[test]
    fn zero_delta() {
        let d = Comultiplication::new(3, 4).unwrap();
        assert!(delta_basis(&d, 1).unwrap().is_zero());
        assert!(check_coalgebra_dual(&d).is_empty());
        assert!(check_coalgebra_tensor(&d).is_empty());
        assert_eq!(rank(&d), 0);
    }

    #[test]
    fn top_coalgebra() {
        for n in 2..=4 {
            let d = top(n);
            assert_eq!(delta_basis(&d, 1).unwrap(), wedge(&(2..=n + 1).collect::<Vec<_>>(), n + 1).unwrap());
            assert!(check_coalgebra_dual(&d).is_empty());
            assert!(check_coalgebra_tensor(&d).is_empty());
            assert_eq!(rank(&d), n + 1);
        }
    }

    #[test]
    fn pairing_reads_constants_with_sign() {
        let d = top(3);
        let t = delta_basis(&d, 1).unwrap();
        assert_eq!(pair(&[2, 3, 4], &t).unwrap(), int(1));
        assert_eq!(pair(&[3, 2, 4], &t).unwrap(), int(-1));
        assert_eq!(pair(&[3, 2, 4], &t).unwrap(), d.get(1, &[3, 2, 4]).unwrap());
    }

    #[test]
    fn duality_round_trip() {
        let d = top(3);
        assert_eq!(dual_comultiplication(&dual_algebra(&d)), d);
    }

    #[test]
    fn broken_coalgebra_fails_both_routes() {
        // top coalgebra plus one stray constant
        let mut d = top(3);
        d.set(1, &[1, 2, 3], int(1)).unwrap();
        assert!(!check_coalgebra_dual(&d).is_empty());
        assert!(!check_coalgebra_tensor(&d).is_empty());
    }

    #[test]
    fn iso_checks() {
        let d = top(3);
        assert!(check_coalgebra_iso(&Matrix::identity(4), &d, &d).unwrap());
        assert!(matches!(
            check_coalgebra_iso(&Matrix::zeros(4, 4), &d, &d),
            Err(Error::Singular)
        ));
        let swap = Matrix::permutation(&[2, 1, 3, 4]);
        assert!(!check_coalgebra_iso(&swap, &d, &d).unwrap());
    }
}

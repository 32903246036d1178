//! n-Lie bialgebras `(L, μ, Δ)`: compatibility, validation, duality and
//! equivalence maps.

use num_traits::Zero;

use crate::algebra::{
    ad_operator, bracket_basis, check_algebra_morphism, check_fundamental_identity, StructureConstants,
};
use crate::coalgebra::{
    check_coalgebra_dual, check_coalgebra_tensor, coalgebra_morphism_report, delta_apply, delta_basis, dual_algebra,
    dual_comultiplication, Comultiplication,
};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::report::{ValidationReport, Violation};
use crate::scalar::{one, Scalar};
use crate::tensor::{increasing_tuples, TensorElement};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Bialgebra {
    mu: StructureConstants,
    delta: Comultiplication,
}

impl Bialgebra {
    pub fn new(mu: StructureConstants, delta: Comultiplication) -> Result<Self> {
        if mu.arity() != delta.arity() {
            return Err(Error::ArityMismatch(mu.arity(), delta.arity()));
        }
        if mu.dim() != delta.dim() {
            return Err(Error::DimensionMismatch(mu.dim(), delta.dim()));
        }
        Ok(Bialgebra { mu, delta })
    }

    /// `μ = 0`, `Δ = 0`.
    pub fn zero(arity: usize, dim: usize) -> Result<Self> {
        Self::new(StructureConstants::new(arity, dim)?, Comultiplication::new(arity, dim)?)
    }

    pub fn mu(&self) -> &StructureConstants {
        &self.mu
    }

    pub fn delta(&self) -> &Comultiplication {
        &self.delta
    }

    pub fn arity(&self) -> usize {
        self.mu.arity()
    }

    pub fn dim(&self) -> usize {
        self.mu.dim()
    }
}

fn without(t: &[usize], pos: usize) -> Vec<usize> {
    let mut u = t.to_vec();
    u.remove(pos);
    u
}

/// Compatibility in tensor form, on every increasing tuple `I`:
/// `Δ μ(e_I) = Σ_s Σ_k (−1)^{n−k} ρ_s(e_{I∖i_k}) Δ(e_{i_k})`.
pub fn check_compatibility_tensor(b: &Bialgebra) -> ValidationReport {
    let n = b.arity();
    let m = b.dim();
    let images: Vec<TensorElement> = (1..=m)
        .map(|l| delta_basis(&b.delta, l).expect("index in range"))
        .collect();
    let mut out = Vec::new();
    for i in increasing_tuples(m, n) {
        let lhs = delta_apply(&b.delta, &bracket_basis(&b.mu, &i).expect("in range")).expect("dims agree");
        let mut rhs = TensorElement::zero(n, m);
        for k in 1..=n {
            let image = &images[i[k - 1] - 1];
            if image.is_zero() {
                continue;
            }
            let ad = ad_operator(&b.mu, &without(&i, k - 1)).expect("in range");
            let sign = if (n - k) % 2 == 0 { one() } else { -one() };
            for s in 1..=n {
                rhs.add_scaled(&image.map_factor(s, &ad).expect("slot in range"), &sign);
            }
        }
        if lhs != rhs {
            out.push(Violation::tensor("compatibility_tensor", vec![i], &lhs - &rhs));
        }
    }
    ValidationReport::from_violations(out)
}

/// The right-hand-side contributions of the constants form, one per
/// `(k, s)` in that order (`k` outer):
/// `(−1)^{n−k} Σ_r a_{i_k}^{J(s→r)} c^{j_s}_{I∖i_k, r}`,
/// where `J(s→r)` is `J` with its `s`-th entry replaced by `r`.
pub fn compatibility_terms(b: &Bialgebra, i: &[usize], j: &[usize]) -> Vec<Scalar> {
    let n = b.arity();
    let m = b.dim();
    let mut terms = Vec::with_capacity(n * n);
    for k in 1..=n {
        let rest = without(i, k - 1);
        let ik = i[k - 1];
        for s in 1..=n {
            let mut acc = Scalar::zero();
            let mut upper = j.to_vec();
            let mut lower = rest.clone();
            lower.push(0);
            for r in 1..=m {
                upper[s - 1] = r;
                let a = b.delta.constants().coefficient(&upper, ik);
                if a.is_zero() {
                    continue;
                }
                lower[n - 1] = r;
                let c = b.mu.coefficient(&lower, j[s - 1]);
                if !c.is_zero() {
                    acc += a * c;
                }
            }
            terms.push(if (n - k) % 2 == 0 { acc } else { -acc });
        }
    }
    terms
}

/// The four contributions of the `n = 2` specialization, written out directly:
/// `Σ_r −a_{i_1}^{r j_2} c^{j_1}_{i_2 r}`, `Σ_r −a_{i_1}^{j_1 r} c^{j_2}_{i_2 r}`,
/// `Σ_r a_{i_2}^{r j_2} c^{j_1}_{i_1 r}`, `Σ_r a_{i_2}^{j_1 r} c^{j_2}_{i_1 r}`.
pub fn compatibility_terms_n2(b: &Bialgebra, i: [usize; 2], j: [usize; 2]) -> Result<[Scalar; 4]> {
    if b.arity() != 2 {
        return Err(Error::BadArity(b.arity()));
    }
    let a = |l: usize, u: [usize; 2]| b.delta.constants().coefficient(&u, l);
    let c = |x: usize, y: usize, k: usize| b.mu.coefficient(&[x, y], k);
    let [i1, i2] = i;
    let [j1, j2] = j;
    let mut t = [Scalar::zero(), Scalar::zero(), Scalar::zero(), Scalar::zero()];
    for r in 1..=b.dim() {
        t[0] -= a(i1, [r, j2]) * c(i2, r, j1);
        t[1] -= a(i1, [j1, r]) * c(i2, r, j2);
        t[2] += a(i2, [r, j2]) * c(i1, r, j1);
        t[3] += a(i2, [j1, r]) * c(i1, r, j2);
    }
    Ok(t)
}

/// Compatibility in structure-constant form, for all increasing `I`, `J`:
/// `Σ_l c^l_I a_l^J = Σ_k Σ_s (−1)^{n−k} Σ_r a_{i_k}^{J(s→r)} c^{j_s}_{I∖i_k, r}`.
pub fn check_compatibility_constants(b: &Bialgebra) -> ValidationReport {
    let n = b.arity();
    let m = b.dim();
    let js = increasing_tuples(m, n);
    let mut out = Vec::new();
    for i in increasing_tuples(m, n) {
        let ci = b.mu.vector(&i);
        for j in &js {
            let mut lhs = Scalar::zero();
            for (l, c) in ci.iter().enumerate() {
                if !c.is_zero() {
                    lhs += c * b.delta.constants().coefficient(j, l + 1);
                }
            }
            let rhs: Scalar = compatibility_terms(b, &i, j).into_iter().sum();
            if lhs != rhs {
                out.push(Violation::scalar(
                    "compatibility_constants",
                    vec![i.clone(), j.clone()],
                    None,
                    lhs - rhs,
                ));
            }
        }
    }
    ValidationReport::from_violations(out)
}

/// Runs every check; the report is empty exactly when `b` is an n-Lie
/// bialgebra. All checks run even when an early one fails.
pub fn validate(b: &Bialgebra) -> ValidationReport {
    let mut r = check_fundamental_identity(&b.mu);
    r.merge(check_coalgebra_dual(&b.delta));
    r.merge(check_coalgebra_tensor(&b.delta));
    r.merge(check_compatibility_tensor(b));
    r.merge(check_compatibility_constants(b));
    r
}

/// `(L*, Δ*, μ*)` without checking that `b` is valid.
pub fn dualize_unchecked(b: &Bialgebra) -> Bialgebra {
    Bialgebra {
        mu: dual_algebra(&b.delta),
        delta: dual_comultiplication(&b.mu),
    }
}

/// The dual bialgebra `(L*, Δ*, μ*)`. Rejects invalid input.
pub fn dualize(b: &Bialgebra) -> Result<Bialgebra> {
    let report = validate(b);
    if !report.is_empty() {
        return Err(Error::Rejected {
            what: "input is not an n-Lie bialgebra".into(),
            report,
        });
    }
    Ok(dualize_unchecked(b))
}

/// Whether `φ` is simultaneously an algebra and a coalgebra isomorphism
/// `b1 → b2`. Singular maps are rejected.
pub fn check_equivalence_map(phi: &Matrix, b1: &Bialgebra, b2: &Bialgebra) -> Result<bool> {
    Ok(equivalence_report(phi, b1, b2)?.is_empty())
}

/// The violations behind [`check_equivalence_map`].
pub fn equivalence_report(phi: &Matrix, b1: &Bialgebra, b2: &Bialgebra) -> Result<ValidationReport> {
    if !phi.is_square() || phi.rows() != b1.dim() {
        return Err(Error::DimensionMismatch(phi.rows(), b1.dim()));
    }
    if phi.determinant()?.is_zero() {
        return Err(Error::Singular);
    }
    let mut r = check_algebra_morphism(phi, &b1.mu, &b2.mu)?;
    r.merge(coalgebra_morphism_report(phi, &b1.delta, &b2.delta)?);
    Ok(r)
}

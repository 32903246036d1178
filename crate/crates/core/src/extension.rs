//! Two-dimensional extensions `L̄ = L ⊕ F x_0 ⊕ F x_{−1}` raising the arity by one.
//!
//! Extended constants live on storage slots `1..=m+2`: slot 1 is `x_{−1}`,
//! slot 2 is `x_0` and slot `i + 2` is `x_i`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::algebra::{ad_operator, StructureConstants};
use crate::bialgebra::{validate, Bialgebra};
use crate::coalgebra::{dual_algebra, Comultiplication};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::report::{Residual, ValidationReport, Violation};
use crate::scalar::Scalar;
use crate::tensor::increasing_tuples;

/// Storage slot of `x_{−1}`.
pub const SLOT_MINUS_ONE: usize = 1;
/// Storage slot of `x_0`.
pub const SLOT_ZERO: usize = 2;

/// Maps logical extended indices `−1, 0, 1..=m` to storage slots and back.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExtendedIndexing {
    pub dim: usize,
}

impl ExtendedIndexing {
    pub fn slot(&self, logical: i64) -> Result<usize> {
        if logical < -1 || logical > self.dim as i64 {
            return Err(Error::IndexOutOfRange {
                index: logical.max(0) as usize,
                dim: self.dim,
            });
        }
        Ok((logical + 2) as usize)
    }

    pub fn logical(&self, slot: usize) -> Result<i64> {
        if slot == 0 || slot > self.dim + 2 {
            return Err(Error::IndexOutOfRange {
                index: slot,
                dim: self.dim + 2,
            });
        }
        Ok(slot as i64 - 2)
    }
}

/// A symmetric bilinear form `B(x_i, x_j) = b_ij`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BilinearForm {
    b: Matrix,
}

impl BilinearForm {
    pub fn new(b: Matrix) -> Result<Self> {
        if !b.is_square() {
            return Err(Error::DimensionMismatch(b.rows(), b.cols()));
        }
        if !b.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        Ok(BilinearForm { b })
    }

    pub fn zero(dim: usize) -> Self {
        BilinearForm {
            b: Matrix::zeros(dim, dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.b.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.b
    }

    /// `b_ij`, 1-based.
    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        self.b.get(i - 1, j - 1)
    }

    pub fn rank(&self) -> usize {
        self.b.rank()
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.rank() == self.dim()
    }
}

/// Violations of `B(μ(y, x), z) + B(x, μ(y, z)) = 0` over increasing
/// `(n−1)`-tuples `y` and all basis `x`, `z`.
pub fn check_ad_invariance(mu: &StructureConstants, b: &BilinearForm) -> Result<ValidationReport> {
    if b.dim() != mu.dim() {
        return Err(Error::DimensionMismatch(b.dim(), mu.dim()));
    }
    let mut out = Vec::new();
    for y in increasing_tuples(mu.dim(), mu.arity() - 1) {
        let ad = ad_operator(mu, &y)?;
        // adᵀ B + B ad
        let r = &(&ad.transpose() * b.matrix()) + &(b.matrix() * &ad);
        for x in 0..mu.dim() {
            for z in 0..mu.dim() {
                let v = r.get(x, z);
                if !v.is_zero() {
                    out.push(Violation::scalar(
                        "ad_invariance",
                        vec![y.clone(), vec![x + 1, z + 1]],
                        None,
                        v.clone(),
                    ));
                }
            }
        }
    }
    Ok(ValidationReport::from_violations(out))
}

/// Basis of the space of `ad_μ`-invariant symmetric forms, from the
/// nullspace of the invariance equations in the unknowns `b_ij`, `i <= j`.
pub fn invariant_forms(mu: &StructureConstants) -> Result<Vec<BilinearForm>> {
    let m = mu.dim();
    let unknowns: Vec<(usize, usize)> = (0..m).flat_map(|i| (i..m).map(move |j| (i, j))).collect();
    let sym = |(i, j): (usize, usize), c: &Scalar| {
        let mut e = Matrix::zeros(m, m);
        e.set(i, j, c.clone());
        e.set(j, i, c.clone());
        BilinearForm { b: e }
    };
    let mut rows: BTreeMap<(Vec<usize>, Vec<usize>), usize> = BTreeMap::new();
    let mut columns = Vec::with_capacity(unknowns.len());
    for &u in &unknowns {
        let mut col = Vec::new();
        for v in check_ad_invariance(mu, &sym(u, &Scalar::one()))?.violations() {
            let Residual::Scalar(r) = &v.residual else { unreachable!() };
            let next = rows.len();
            let id = *rows.entry((v.indices[0].clone(), v.indices[1].clone())).or_insert(next);
            col.push((id, r.clone()));
        }
        columns.push(col);
    }
    let mut system = Matrix::zeros(rows.len().max(1), unknowns.len());
    for (c, col) in columns.iter().enumerate() {
        for (id, r) in col {
            system.set(*id, c, r.clone());
        }
    }
    Ok(system
        .nullspace()
        .into_iter()
        .map(|v| {
            let mut e = Matrix::zeros(m, m);
            for (&(i, j), c) in unknowns.iter().zip(&v) {
                e.set(i, j, c.clone());
                e.set(j, i, c.clone());
            }
            BilinearForm { b: e }
        })
        .collect())
}

/// Shared construction behind the metric and trivial extensions: the new
/// vector in slot `active` reproduces `μ` when placed first, the vector in
/// slot `sink` is central and absent from every bracket, and (with a form)
/// `μ̄(x_{i_1}, .., x_{i_{n+1}}) = B(μ(x_{i_1}, .., x_{i_n}), x_{i_{n+1}}) · sink`.
pub(crate) fn extend_raw(
    mu: &StructureConstants,
    b: Option<&BilinearForm>,
    active: usize,
    sink: usize,
) -> Result<StructureConstants> {
    let n = mu.arity();
    let m = mu.dim();
    let mut out = StructureConstants::new(n + 1, m + 2)?;
    for (t, v) in mu.entries() {
        let mut key = vec![active];
        key.extend(t.iter().map(|&i| i + 2));
        for (k, c) in v.iter().enumerate() {
            if !c.is_zero() {
                out.set(&key, k + 3, c.clone())?;
            }
        }
    }
    if let Some(b) = b {
        for t in increasing_tuples(m, n + 1) {
            let v = mu.vector(&t[..n]);
            let last = t[n];
            let mut c = Scalar::zero();
            for (s, x) in v.iter().enumerate() {
                if !x.is_zero() {
                    c += x * b.get(s + 1, last);
                }
            }
            if !c.is_zero() {
                let key: Vec<usize> = t.iter().map(|&i| i + 2).collect();
                out.set(&key, sink, c)?;
            }
        }
    }
    Ok(out)
}

/// The metric `(n+1)`-Lie extension: `μ̄(x_0, x_I) = μ(x_I)` (so `x_0` in
/// position `k` gives the sign `(−1)^{k−1}`), brackets with `x_{−1}` vanish,
/// and `μ̄(x_{i_1}, .., x_{i_{n+1}}) = B(μ(x_{i_1}, .., x_{i_n}), x_{i_{n+1}}) x_{−1}`.
/// Rejects forms that are not `ad_μ`-invariant. Nondegeneracy is not required.
pub fn extend_algebra_metric(mu: &StructureConstants, b: &BilinearForm) -> Result<StructureConstants> {
    let report = check_ad_invariance(mu, b)?;
    if !report.is_empty() {
        return Err(Error::Rejected {
            what: "form is not ad-invariant".into(),
            report,
        });
    }
    extend_raw(mu, Some(b), SLOT_ZERO, SLOT_MINUS_ONE)
}

/// The trivial extension: the metric extension with `B = 0`.
pub fn extend_algebra_trivial(mu: &StructureConstants) -> Result<StructureConstants> {
    extend_raw(mu, None, SLOT_ZERO, SLOT_MINUS_ONE)
}

/// `B̄` on `L̄`: `B` on `L`, `B̄(x_0, x_0) = 1`, `B̄(x_{−1}, x_0) = (−1)^{n−1}`,
/// all other pairings with `x_0`, `x_{−1}` zero.
pub fn extend_form(b: &BilinearForm, arity: usize) -> BilinearForm {
    let m = b.dim();
    let mut e = Matrix::zeros(m + 2, m + 2);
    for i in 0..m {
        for j in 0..m {
            e.set(i + 2, j + 2, b.matrix().get(i, j).clone());
        }
    }
    e.set(SLOT_ZERO - 1, SLOT_ZERO - 1, Scalar::one());
    let cross = if arity % 2 == 1 { Scalar::one() } else { -Scalar::one() };
    e.set(SLOT_MINUS_ONE - 1, SLOT_ZERO - 1, cross.clone());
    e.set(SLOT_ZERO - 1, SLOT_MINUS_ONE - 1, cross);
    BilinearForm { b: e }
}

/// `Δ̄(x_k) = Σ a_k^J x_{−1} ∧ x_{j_1} ∧ .. ∧ x_{j_n}`, `Δ̄(x_0) = Δ̄(x_{−1}) = 0`.
pub fn extend_delta(d: &Comultiplication) -> Result<Comultiplication> {
    Ok(Comultiplication::from_constants(extend_raw(
        d.constants(),
        None,
        SLOT_MINUS_ONE,
        SLOT_ZERO,
    )?))
}

fn require_valid(b: &Bialgebra) -> Result<()> {
    let report = validate(b);
    if report.is_empty() {
        Ok(())
    } else {
        Err(Error::Rejected {
            what: "input is not an n-Lie bialgebra".into(),
            report,
        })
    }
}

/// The `(m+2)`-dimensional `(n+1)`-Lie bialgebra `(L̄, μ̄, Δ̄)` with `μ̄` the
/// metric extension by `B` and `Δ̄` from [`extend_delta`].
pub fn extend_bialgebra(b: &Bialgebra, form: &BilinearForm) -> Result<Bialgebra> {
    require_valid(b)?;
    let mu = extend_algebra_metric(b.mu(), form)?;
    Bialgebra::new(mu, extend_delta(b.delta())?)
}

/// The variant with the form on the dual: `μ̄` is the trivial extension of
/// `μ` and `Δ̄*` is the metric extension of `Δ*` by `B*`, both with `x_0` as
/// the new active vector and `x_{−1}` as the sink.
pub fn extend_bialgebra_dual(b: &Bialgebra, form_dual: &BilinearForm) -> Result<Bialgebra> {
    require_valid(b)?;
    let mu = extend_algebra_trivial(b.mu())?;
    let dual = extend_algebra_metric(&dual_algebra(b.delta()), form_dual)?;
    Bialgebra::new(mu, Comultiplication::from_constants(dual))
}

//! n-Lie algebras given by structure constants.
//!
//! `StructureConstants` stores `c^k_{i_1..i_n}` for strictly increasing
//! tuples only; lookups on other tuples go through [`canonicalize`] and pick
//! up the sorting sign, so antisymmetry holds by construction. The same type
//! holds comultiplication constants `a_k^{i_1..i_n}` (see `coalgebra`).

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::report::{ValidationReport, Violation};
use crate::scalar::{format_scalar, int, Scalar};
use crate::tensor::{all_tuples, canonicalize, increasing_tuples, signed_permutations, TensorElement};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StructureConstants {
    arity: usize,
    dim: usize,
    entries: BTreeMap<Vec<usize>, Vec<Scalar>>,
}

impl StructureConstants {
    /// The zero (abelian) bracket.
    pub fn new(arity: usize, dim: usize) -> Result<Self> {
        if arity < 2 {
            return Err(Error::BadArity(arity));
        }
        if dim == 0 {
            return Err(Error::BadDimension);
        }
        Ok(StructureConstants {
            arity,
            dim,
            entries: BTreeMap::new(),
        })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    fn check_tuple(&self, t: &[usize]) -> Result<()> {
        if t.len() != self.arity {
            return Err(Error::LengthMismatch {
                expected: self.arity,
                got: t.len(),
            });
        }
        self.check_index(t)
    }

    fn check_index(&self, t: &[usize]) -> Result<()> {
        match t.iter().find(|&&i| i == 0 || i > self.dim) {
            Some(&index) => Err(Error::IndexOutOfRange { index, dim: self.dim }),
            None => Ok(()),
        }
    }

    /// Sets `c^k_t` (and, through antisymmetry, every permutation of `t`).
    pub fn set(&mut self, t: &[usize], k: usize, value: Scalar) -> Result<()> {
        self.check_tuple(t)?;
        self.check_index(&[k])?;
        let Some((key, sign)) = canonicalize(t) else {
            return if value.is_zero() { Ok(()) } else { Err(Error::RepeatedIndex) };
        };
        let v = if sign < 0 { -value } else { value };
        let dim = self.dim;
        let vec = self.entries.entry(key.clone()).or_insert_with(|| vec![Scalar::zero(); dim]);
        vec[k - 1] = v;
        if vec.iter().all(Zero::is_zero) {
            self.entries.remove(&key);
        }
        Ok(())
    }

    /// Adds `value` to `c^k_t`.
    pub fn add(&mut self, t: &[usize], k: usize, value: &Scalar) -> Result<()> {
        let cur = self.get(t, k)?;
        if canonicalize(t).is_none() {
            return if value.is_zero() { Ok(()) } else { Err(Error::RepeatedIndex) };
        }
        self.set(t, k, cur + value)
    }

    /// `c^k_t` for any tuple, with the antisymmetry sign applied.
    pub fn get(&self, t: &[usize], k: usize) -> Result<Scalar> {
        self.check_tuple(t)?;
        self.check_index(&[k])?;
        Ok(self.coefficient(t, k))
    }

    /// Unchecked lookup; indices are assumed in range.
    pub(crate) fn coefficient(&self, t: &[usize], k: usize) -> Scalar {
        match canonicalize(t) {
            None => Scalar::zero(),
            Some((key, sign)) => match self.entries.get(&key) {
                None => Scalar::zero(),
                Some(v) if sign > 0 => v[k - 1].clone(),
                Some(v) => -v[k - 1].clone(),
            },
        }
    }

    /// Dense vector `(c^1_t, .., c^m_t)`, unchecked.
    pub(crate) fn vector(&self, t: &[usize]) -> Vec<Scalar> {
        match canonicalize(t) {
            None => vec![Scalar::zero(); self.dim],
            Some((key, sign)) => match self.entries.get(&key) {
                None => vec![Scalar::zero(); self.dim],
                Some(v) if sign > 0 => v.clone(),
                Some(v) => v.iter().map(|x| -x).collect(),
            },
        }
    }

    /// Stored entries: increasing tuples with their (nonzero) coefficient vectors.
    pub fn entries(&self) -> impl Iterator<Item = (&Vec<usize>, &Vec<Scalar>)> {
        self.entries.iter()
    }

    /// Every nonzero `(t, k, c^k_t)` with `t` increasing, in lexicographic order.
    pub fn nonzero(&self) -> impl Iterator<Item = (&Vec<usize>, usize, &Scalar)> {
        self.entries.iter().flat_map(|(t, v)| {
            v.iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(move |(k, c)| (t, k + 1, c))
        })
    }

    pub fn scaled(&self, c: &Scalar) -> Self {
        let mut out = Self::new(self.arity, self.dim).expect("shape already validated");
        if c.is_zero() {
            return out;
        }
        for (t, v) in &self.entries {
            out.entries.insert(t.clone(), v.iter().map(|x| x * c).collect());
        }
        out
    }

    pub fn add_constants(&self, other: &Self) -> Result<Self> {
        if (self.arity, self.dim) != (other.arity, other.dim) {
            return Err(Error::DimensionMismatch(self.dim, other.dim));
        }
        let mut out = self.clone();
        for (t, k, c) in other.nonzero() {
            out.add(t, k, c)?;
        }
        Ok(out)
    }
}

impl fmt::Display for StructureConstants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "arity {} dim {}", self.arity, self.dim)?;
        for (t, k, c) in self.nonzero() {
            let s: Vec<String> = t.iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}] -> {} e{}", s.join(","), format_scalar(c), k)?;
        }
        Ok(())
    }
}

/// A vector of the underlying space in the standard basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VectorElement {
    coeffs: Vec<Scalar>,
}

impl VectorElement {
    pub fn zero(dim: usize) -> Self {
        VectorElement {
            coeffs: vec![Scalar::zero(); dim],
        }
    }

    /// `e_i`, 1-based.
    pub fn basis(i: usize, dim: usize) -> Result<Self> {
        if i == 0 || i > dim {
            return Err(Error::IndexOutOfRange { index: i, dim });
        }
        let mut v = Self::zero(dim);
        v.coeffs[i - 1] = Scalar::one();
        Ok(v)
    }

    pub fn from_coeffs(coeffs: Vec<Scalar>) -> Self {
        VectorElement { coeffs }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        VectorElement {
            coeffs: c.iter().map(|&x| int(x)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    /// Coefficient of `e_i`, 1-based.
    pub fn get(&self, i: usize) -> &Scalar {
        &self.coeffs[i - 1]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn scaled(&self, c: &Scalar) -> Self {
        VectorElement {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn add_scaled(&mut self, other: &VectorElement, c: &Scalar) {
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b * c;
        }
    }
}

/// `μ(e_{t_1}, .., e_{t_n})`.
pub fn bracket_basis(mu: &StructureConstants, t: &[usize]) -> Result<VectorElement> {
    mu.check_tuple(t)?;
    Ok(VectorElement::from_coeffs(mu.vector(t)))
}

/// `μ(v_1, .., v_n)` by multilinear extension.
pub fn bracket_eval(mu: &StructureConstants, args: &[VectorElement]) -> Result<VectorElement> {
    if args.len() != mu.arity {
        return Err(Error::LengthMismatch {
            expected: mu.arity,
            got: args.len(),
        });
    }
    if let Some(v) = args.iter().find(|v| v.dim() != mu.dim) {
        return Err(Error::DimensionMismatch(v.dim(), mu.dim));
    }
    let perms = signed_permutations(mu.arity);
    let mut out = VectorElement::zero(mu.dim);
    for (key, vec) in &mu.entries {
        // coefficient of e_key in v_1 ∧ .. ∧ v_n is the minor of the argument matrix
        let mut minor = Scalar::zero();
        for (p, sign) in &perms {
            let mut prod = Scalar::one();
            for (r, &q) in p.iter().enumerate() {
                let x = &args[r].coeffs[key[q] - 1];
                if x.is_zero() {
                    prod = Scalar::zero();
                    break;
                }
                prod *= x;
            }
            if !prod.is_zero() {
                if *sign > 0 {
                    minor += prod;
                } else {
                    minor -= prod;
                }
            }
        }
        if !minor.is_zero() {
            for (o, c) in out.coeffs.iter_mut().zip(vec) {
                *o += c * &minor;
            }
        }
    }
    Ok(out)
}

fn add_scaled_vec(acc: &mut [Scalar], v: &[Scalar], c: &Scalar) {
    if c.is_zero() {
        return;
    }
    for (a, b) in acc.iter_mut().zip(v) {
        if !b.is_zero() {
            *a += b * c;
        }
    }
}

fn without(t: &[usize], pos: usize) -> Vec<usize> {
    t.iter()
        .enumerate()
        .filter(|&(q, _)| q != pos)
        .map(|(_, &x)| x)
        .collect()
}

fn with_last(t: &[usize], last: usize) -> Vec<usize> {
    let mut u = t.to_vec();
    u.push(last);
    u
}

/// Residual of the fundamental identity in structure-constant form
///
/// `Σ_t c^t_J c^k_{I t} − Σ_s (−1)^{n−s} Σ_t c^t_{I j_s} c^k_{J∖j_s, t}`
///
/// for every increasing `I` of length `n−1`, increasing `J` of length `n`
/// and every `k`. Both sides are alternating in `I` and in `J`, so increasing
/// tuples cover all cases.
pub fn check_fundamental_identity(mu: &StructureConstants) -> ValidationReport {
    fundamental_identity_report(mu, "fundamental_identity")
}

pub(crate) fn fundamental_identity_report(mu: &StructureConstants, check: &str) -> ValidationReport {
    let n = mu.arity;
    let m = mu.dim;
    let mut out = Vec::new();
    if mu.is_zero() {
        return ValidationReport::new();
    }
    let js = increasing_tuples(m, n);
    let j_vecs: Vec<Vec<Scalar>> = js.iter().map(|j| mu.vector(j)).collect();
    for i in increasing_tuples(m, n - 1) {
        // μ(e_I, e_t) for every t, reused across J
        let ad_cols: Vec<Vec<Scalar>> = (1..=m).map(|t| mu.vector(&with_last(&i, t))).collect();
        for (j, jv) in js.iter().zip(&j_vecs) {
            let mut r = vec![Scalar::zero(); m];
            for (t, c) in jv.iter().enumerate() {
                add_scaled_vec(&mut r, &ad_cols[t], c);
            }
            for s in 1..=n {
                let inner = &ad_cols[j[s - 1] - 1];
                if inner.iter().all(Zero::is_zero) {
                    continue;
                }
                let rest = without(j, s - 1);
                let sign = if (n - s) % 2 == 0 { -Scalar::one() } else { Scalar::one() };
                for (t, c) in inner.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    add_scaled_vec(&mut r, &mu.vector(&with_last(&rest, t + 1)), &(c * &sign));
                }
            }
            for (k, v) in r.into_iter().enumerate() {
                if !v.is_zero() {
                    out.push(Violation::scalar(check, vec![i.clone(), j.clone()], Some(k + 1), v));
                }
            }
        }
    }
    ValidationReport::from_violations(out)
}

/// Row-reduced basis (as matrix rows) of the span of all brackets, and its dimension.
pub fn derived_algebra(mu: &StructureConstants) -> (Matrix, usize) {
    if mu.is_zero() {
        return (Matrix::zeros(0, mu.dim), 0);
    }
    let rows: Vec<Vec<Scalar>> = mu.entries.values().cloned().collect();
    let basis = Matrix::from_rows(rows).row_space();
    let d = basis.rows();
    (basis, d)
}

/// Basis (as matrix rows) of `{x : μ(x, y_2, .., y_n) = 0 for all y}`, and its dimension.
pub fn center(mu: &StructureConstants) -> (Matrix, usize) {
    let m = mu.dim;
    let mut rows = Vec::new();
    for t in increasing_tuples(m, mu.arity - 1) {
        let ad = ad_operator_unchecked(mu, &t);
        for r in 0..m {
            rows.push(ad.row(r).to_vec());
        }
    }
    let ns = Matrix::from_rows(rows).nullspace();
    let d = ns.len();
    if d == 0 {
        return (Matrix::zeros(0, m), 0);
    }
    (Matrix::from_rows(ns).row_space(), d)
}

fn ad_operator_unchecked(mu: &StructureConstants, t: &[usize]) -> Matrix {
    let m = mu.dim;
    let cols: Vec<Vec<Scalar>> = (1..=m).map(|y| mu.vector(&with_last(t, y))).collect();
    Matrix::from_fn(m, m, |r, c| cols[c][r].clone())
}

/// Matrix of `y ↦ μ(e_{t_1}, .., e_{t_{n−1}}, y)`; column `j` is the image of `e_{j+1}`.
pub fn ad_operator(mu: &StructureConstants, t: &[usize]) -> Result<Matrix> {
    if t.len() + 1 != mu.arity {
        return Err(Error::LengthMismatch {
            expected: mu.arity - 1,
            got: t.len(),
        });
    }
    mu.check_index(t)?;
    Ok(ad_operator_unchecked(mu, t))
}

/// Matrix of `y ↦ μ(x_1, .., x_{n−1}, y)` for arbitrary vectors.
pub fn ad_operator_vectors(mu: &StructureConstants, xs: &[VectorElement]) -> Result<Matrix> {
    if xs.len() + 1 != mu.arity {
        return Err(Error::LengthMismatch {
            expected: mu.arity - 1,
            got: xs.len(),
        });
    }
    let m = mu.dim;
    let mut cols = Vec::with_capacity(m);
    for y in 1..=m {
        let mut args = xs.to_vec();
        args.push(VectorElement::basis(y, m)?);
        cols.push(bracket_eval(mu, &args)?);
    }
    Ok(Matrix::from_fn(m, m, |r, c| cols[c].coeffs[r].clone()))
}

/// `ρ_s(e_t)(T)`: applies `ad_μ(e_t)` to factor `s` of every term of `T`.
pub fn rho_s_apply(mu: &StructureConstants, s: usize, t: &[usize], tensor: &TensorElement) -> Result<TensorElement> {
    if tensor.order() != mu.arity {
        return Err(Error::OrderMismatch {
            expected: mu.arity,
            got: tensor.order(),
        });
    }
    if tensor.dim() != mu.dim {
        return Err(Error::DimensionMismatch(tensor.dim(), mu.dim));
    }
    tensor.map_factor(s, &ad_operator(mu, t)?)
}

fn basis_vectors(t: &[usize], m: usize) -> Vec<VectorElement> {
    t.iter()
        .map(|&i| VectorElement::basis(i, m).expect("index in range"))
        .collect()
}

/// Checks that `ρ_s` makes the `n`-fold tensor power a module, through the two
/// defining relations on basis arguments, each acting on every basis tensor:
///
/// * `[ρ(x), ρ(z)] = Σ_t ρ(z_1, .., μ(x, z_t), .., z_{n−1})`
/// * `ρ(μ(y_1, .., y_n), x_1, .., x_{n−2}) = Σ_t (−1)^{n−t} ρ(y_1, .., ŷ_t, .., y_n) ρ(y_t, x_1, .., x_{n−2})`
///
/// One violation is reported per argument choice, carrying the residual on
/// the first basis tensor where the two sides differ.
pub fn check_rho_module(mu: &StructureConstants, s: usize) -> Result<ValidationReport> {
    let n = mu.arity;
    let m = mu.dim;
    if s == 0 || s > n {
        return Err(Error::BadSlot { slot: s, order: n });
    }
    let basis: Vec<TensorElement> = all_tuples(m, n)
        .iter()
        .map(|t| TensorElement::basis(t, m).expect("in range"))
        .collect();
    let mut out = Vec::new();
    let ad = |t: &[usize]| ad_operator_unchecked(mu, t);
    let apply = |op: &Matrix, t: &TensorElement| t.map_factor(s, op).expect("shape checked");

    let tuples = increasing_tuples(m, n - 1);
    for x in &tuples {
        let ax = ad(x);
        let xv = basis_vectors(x, m);
        for z in &tuples {
            let az = ad(z);
            let mut rhs_ops = Vec::new();
            for t in 0..n - 1 {
                let mut args = basis_vectors(z, m);
                let mut inner = xv.clone();
                inner.push(args[t].clone());
                args[t] = bracket_eval(mu, &inner)?;
                rhs_ops.push(ad_operator_vectors(mu, &args)?);
            }
            for b in &basis {
                let lhs = &apply(&ax, &apply(&az, b)) - &apply(&az, &apply(&ax, b));
                let mut rhs = TensorElement::zero(n, m);
                for op in &rhs_ops {
                    rhs.add_scaled(&apply(op, b), &Scalar::one());
                }
                if lhs != rhs {
                    let (bt, _) = b.terms().next().expect("basis tensor");
                    out.push(Violation::tensor(
                        "rho_module_commutator",
                        vec![vec![s], x.clone(), z.clone(), bt.clone()],
                        &lhs - &rhs,
                    ));
                    break;
                }
            }
        }
    }

    for y in increasing_tuples(m, n) {
        let yv = VectorElement::from_coeffs(mu.vector(&y));
        for x in all_tuples(m, n - 2) {
            let mut args = vec![yv.clone()];
            args.extend(basis_vectors(&x, m));
            let lhs_op = ad_operator_vectors(mu, &args)?;
            let mut terms = Vec::new();
            for t in 1..=n {
                let outer = ad(&without(&y, t - 1));
                let mut inner_t = vec![y[t - 1]];
                inner_t.extend_from_slice(&x);
                let inner = ad(&inner_t);
                let sign = if (n - t) % 2 == 0 { Scalar::one() } else { -Scalar::one() };
                terms.push((outer, inner, sign));
            }
            for b in &basis {
                let lhs = apply(&lhs_op, b);
                let mut rhs = TensorElement::zero(n, m);
                for (outer, inner, sign) in &terms {
                    rhs.add_scaled(&apply(outer, &apply(inner, b)), sign);
                }
                if lhs != rhs {
                    let (bt, _) = b.terms().next().expect("basis tensor");
                    out.push(Violation::tensor(
                        "rho_module_bracket",
                        vec![vec![s], y.clone(), x.clone(), bt.clone()],
                        &lhs - &rhs,
                    ));
                    break;
                }
            }
        }
    }
    Ok(ValidationReport::from_violations(out))
}

/// Constants of the bracket `μ'` making `φ` an isomorphism `(L, μ) → (L, μ')`:
/// `μ'(x_1, .., x_n) = φ μ(φ^{-1} x_1, .., φ^{-1} x_n)`. Column `j` of `φ` is
/// the image of `e_{j+1}`.
pub fn transport(mu: &StructureConstants, phi: &Matrix) -> Result<StructureConstants> {
    if phi.rows() != mu.dim || phi.cols() != mu.dim {
        return Err(Error::DimensionMismatch(phi.rows(), mu.dim));
    }
    let inv = phi.inverse()?;
    let cols: Vec<VectorElement> = (0..mu.dim)
        .map(|c| VectorElement::from_coeffs(inv.column(c)))
        .collect();
    let mut out = StructureConstants::new(mu.arity, mu.dim)?;
    for t in increasing_tuples(mu.dim, mu.arity) {
        let args: Vec<VectorElement> = t.iter().map(|&i| cols[i - 1].clone()).collect();
        let v = bracket_eval(mu, &args)?;
        if v.is_zero() {
            continue;
        }
        let img = phi.mul_vec(&v.coeffs);
        for (k, c) in img.into_iter().enumerate() {
            if !c.is_zero() {
                out.set(&t, k + 1, c)?;
            }
        }
    }
    Ok(out)
}

/// Violations of `φ μ1(e_t) = μ2(φ e_{t_1}, .., φ e_{t_n})` over increasing `t`.
pub fn check_algebra_morphism(phi: &Matrix, mu1: &StructureConstants, mu2: &StructureConstants) -> Result<ValidationReport> {
    if mu1.arity != mu2.arity {
        return Err(Error::ArityMismatch(mu1.arity, mu2.arity));
    }
    if phi.cols() != mu1.dim || phi.rows() != mu2.dim {
        return Err(Error::DimensionMismatch(phi.cols(), mu1.dim));
    }
    let images: Vec<VectorElement> = (0..mu1.dim)
        .map(|c| VectorElement::from_coeffs(phi.column(c)))
        .collect();
    let mut out = Vec::new();
    for t in increasing_tuples(mu1.dim, mu1.arity) {
        let lhs = phi.mul_vec(&mu1.vector(&t));
        let args: Vec<VectorElement> = t.iter().map(|&i| images[i - 1].clone()).collect();
        let rhs = bracket_eval(mu2, &args)?;
        for (k, (a, b)) in lhs.iter().zip(rhs.coeffs()).enumerate() {
            if a != b {
                out.push(Violation::scalar("algebra_morphism", vec![t.clone()], Some(k + 1), a - b));
            }
        }
    }
    Ok(ValidationReport::from_violations(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    /// `μ(e_1, .., ê_i, .., e_{n+1}) = e_i`.
    fn an(n: usize) -> StructureConstants {
        let mut mu = StructureConstants::new(n, n + 1).unwrap();
        for i in 1..=n + 1 {
            let t: Vec<usize> = (1..=n + 1).filter(|&j| j != i).collect();
            mu.set(&t, i, int(1)).unwrap();
        }
        mu
    }

    #[test]
    fn construction_rejects_bad_shapes() {
        assert!(matches!(StructureConstants::new(1, 3), Err(Error::BadArity(1))));
        assert!(StructureConstants::new(2, 0).is_err());
        let mut mu = StructureConstants::new(3, 4).unwrap();
        assert!(matches!(mu.set(&[1, 1, 2], 3, int(1)), Err(Error::RepeatedIndex)));
        assert!(mu.set(&[1, 1, 2], 3, int(0)).is_ok());
        assert!(mu.set(&[1, 2, 5], 3, int(1)).is_err());
        assert!(mu.set(&[1, 2], 3, int(1)).is_err());
    }

    #[test]
    fn antisymmetric_lookup() {
        let mut mu = StructureConstants::new(3, 4).unwrap();
        mu.set(&[2, 1, 3], 4, int(1)).unwrap();
        assert_eq!(mu.get(&[1, 2, 3], 4).unwrap(), int(-1));
        assert_eq!(mu.get(&[3, 1, 2], 4).unwrap(), int(-1));
        assert_eq!(mu.get(&[1, 1, 2], 4).unwrap(), int(0));
        mu.set(&[1, 2, 3], 4, int(0)).unwrap();
        assert!(mu.is_zero());
    }

    #[test]
    fn bracket_basis_on_an() {
        let mu = an(3);
        assert_eq!(bracket_basis(&mu, &[1, 2, 3]).unwrap(), VectorElement::basis(4, 4).unwrap());
        assert_eq!(
            bracket_basis(&mu, &[2, 1, 3]).unwrap(),
            VectorElement::basis(4, 4).unwrap().scaled(&int(-1))
        );
        assert!(bracket_basis(&mu, &[1, 1, 2]).unwrap().is_zero());
    }

    #[test]
    fn bracket_eval_is_multilinear_and_alternating() {
        let mu = an(3);
        let e = |i| VectorElement::basis(i, 4).unwrap();
        let base = bracket_eval(&mu, &[e(1), e(2), e(3)]).unwrap();
        assert_eq!(base, bracket_basis(&mu, &[1, 2, 3]).unwrap());
        assert_eq!(bracket_eval(&mu, &[e(1).scaled(&int(2)), e(2), e(3)]).unwrap(), base.scaled(&int(2)));
        let v = VectorElement::from_i64(&[1, 2, -1, 3]);
        assert!(bracket_eval(&mu, &[v.clone(), e(2), v]).unwrap().is_zero());
        assert!(bracket_eval(&mu, &[e(1), e(2)]).is_err());
    }

    #[test]
    fn an_passes_and_perturbation_fails() {
        for n in 2..=4 {
            assert!(check_fundamental_identity(&an(n)).is_empty(), "n={n}");
        }
        // on-support changes only rescale a basis vector and stay valid
        let mut mu = an(3);
        mu.set(&[1, 2, 3], 4, int(2)).unwrap();
        assert!(check_fundamental_identity(&mu).is_empty());
        let mut mu = an(3);
        mu.set(&[1, 2, 3], 1, int(1)).unwrap();
        let r = check_fundamental_identity(&mu);
        assert_eq!(r.len(), 6);
        assert!(r.violations().iter().all(|v| v.check == "fundamental_identity"));
    }

    #[test]
    fn derived_and_center() {
        let mu = an(3);
        assert_eq!(derived_algebra(&mu).1, 4);
        assert_eq!(center(&mu).1, 0);
        let zero = StructureConstants::new(3, 4).unwrap();
        assert_eq!(derived_algebra(&zero).1, 0);
        assert_eq!(center(&zero).1, 4);
    }

    #[test]
    fn ad_operator_on_a3() {
        // μ(e1, e2, e3) = e4 and μ(e1, e2, e4) = e3
        let ad = ad_operator(&an(3), &[1, 2]).unwrap();
        let mut want = Matrix::zeros(4, 4);
        want.set(3, 2, int(1));
        want.set(2, 3, int(1));
        assert_eq!(ad, want);
        assert!(ad_operator(&an(3), &[1, 1]).unwrap().is_zero());
    }

    #[test]
    fn rho_module_on_an() {
        for s in 1..=3 {
            assert!(check_rho_module(&an(3), s).unwrap().is_empty(), "s={s}");
        }
        let mut bad = an(3);
        bad.set(&[1, 2, 3], 1, int(1)).unwrap();
        assert!(!check_rho_module(&bad, 1).unwrap().is_empty());
    }

    #[test]
    fn transport_by_identity_and_permutation() {
        let mu = an(3);
        assert_eq!(transport(&mu, &Matrix::identity(4)).unwrap(), mu);
        let phi = Matrix::permutation(&[2, 1, 3, 4]);
        let t = transport(&mu, &phi).unwrap();
        assert!(check_algebra_morphism(&phi, &mu, &t).unwrap().is_empty());
        assert!(check_fundamental_identity(&t).is_empty());
    }
}

//! Canonical (n+1)-dimensional n-Lie algebras, worked examples, and a
//! classifier for (n+1)-dimensional algebras.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::algebra::{center, check_fundamental_identity, derived_algebra, StructureConstants};
use crate::bialgebra::Bialgebra;
use crate::coalgebra::Comultiplication;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{format_scalar, int, parse_scalar, ratio, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CanonicalLabel {
    Abelian,
    B1,
    B2,
    C1,
    /// `α ≠ 0`.
    C2(Scalar),
    C3,
    /// Derived dimension `r`, `3 <= r <= n + 1`.
    D(usize),
}

impl fmt::Display for CanonicalLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CanonicalLabel::Abelian => write!(f, "abelian"),
            CanonicalLabel::B1 => write!(f, "b1"),
            CanonicalLabel::B2 => write!(f, "b2"),
            CanonicalLabel::C1 => write!(f, "c1"),
            CanonicalLabel::C2(a) => write!(f, "c2({})", format_scalar(a)),
            CanonicalLabel::C3 => write!(f, "c3"),
            CanonicalLabel::D(r) => write!(f, "d({r})"),
        }
    }
}

fn parameter<'a>(s: &'a str, head: &str) -> Option<&'a str> {
    let rest = s.strip_prefix(head)?;
    if let Some(inner) = rest.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
        return Some(inner.trim());
    }
    if let Some(inner) = rest.strip_prefix(':') {
        return Some(inner.trim());
    }
    (!rest.is_empty()).then_some(rest)
}

impl FromStr for CanonicalLabel {
    type Err = Error;

    /// Accepts `abelian`, `b1`, `b2`, `c1`, `c2(α)` or `c2:α`, `c3`, `d(r)`,
    /// `d:r` or `dr`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        let bad = || Error::BadLabel(s.clone());
        match s.as_str() {
            "abelian" | "a" => return Ok(CanonicalLabel::Abelian),
            "b1" => return Ok(CanonicalLabel::B1),
            "b2" => return Ok(CanonicalLabel::B2),
            "c1" => return Ok(CanonicalLabel::C1),
            "c3" => return Ok(CanonicalLabel::C3),
            _ => {}
        }
        if let Some(p) = parameter(&s, "c2") {
            let a = parse_scalar(p).map_err(|_| bad())?;
            if a.is_zero() {
                return Err(Error::BadLabel("c2 requires a nonzero parameter".into()));
            }
            return Ok(CanonicalLabel::C2(a));
        }
        if let Some(p) = parameter(&s, "d") {
            return p.parse().map(CanonicalLabel::D).map_err(|_| bad());
        }
        Err(bad())
    }
}

/// Result of [`classify`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    Label(CanonicalLabel),
    Unclassified,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::Label(l) => write!(f, "{l}"),
            Classification::Unclassified => write!(f, "unclassified"),
        }
    }
}

fn omit(n_plus_1: usize, i: usize) -> Vec<usize> {
    (1..=n_plus_1).filter(|&j| j != i).collect()
}

/// `(1, 3, 4, .., n+1)`.
fn omit2(n: usize) -> Vec<usize> {
    omit(n + 1, 2)
}

/// Constants of the listed canonical algebra on `e_1, .., e_{n+1}`.
pub fn canonical_algebra(n: usize, label: &CanonicalLabel) -> Result<StructureConstants> {
    if n < 3 {
        return Err(Error::Precondition(format!("canonical forms need n >= 3, got {n}")));
    }
    let m = n + 1;
    let mut mu = StructureConstants::new(n, m)?;
    let top: Vec<usize> = (2..=m).collect();
    match label {
        CanonicalLabel::Abelian => {}
        CanonicalLabel::B1 => mu.set(&top, 1, int(1))?,
        CanonicalLabel::B2 => mu.set(&(1..=n).collect::<Vec<_>>(), 1, int(1))?,
        CanonicalLabel::C1 => {
            mu.set(&top, 1, int(1))?;
            mu.set(&omit2(n), 2, int(1))?;
        }
        CanonicalLabel::C2(a) => {
            if a.is_zero() {
                return Err(Error::BadLabel("c2 requires a nonzero parameter".into()));
            }
            mu.set(&top, 1, a.clone())?;
            mu.set(&top, 2, int(1))?;
            mu.set(&omit2(n), 2, int(1))?;
        }
        CanonicalLabel::C3 => {
            mu.set(&omit2(n), 1, int(1))?;
            mu.set(&top, 2, int(1))?;
        }
        CanonicalLabel::D(r) => {
            if *r < 3 || *r > m {
                return Err(Error::BadLabel(format!("d({r}) needs 3 <= r <= {m}")));
            }
            for i in 1..=*r {
                mu.set(&omit(m, i), i, int(1))?;
            }
        }
    }
    Ok(mu)
}

/// Every label admissible at arity `n`, with the given `c2` parameters.
pub fn all_labels(n: usize, alphas: &[Scalar]) -> Vec<CanonicalLabel> {
    let mut v = vec![
        CanonicalLabel::Abelian,
        CanonicalLabel::B1,
        CanonicalLabel::B2,
        CanonicalLabel::C1,
    ];
    v.extend(alphas.iter().cloned().map(CanonicalLabel::C2));
    v.push(CanonicalLabel::C3);
    v.extend((3..=n + 1).map(CanonicalLabel::D));
    v
}

/// The simple algebra `A_n`: `μ(e_1, .., ê_i, .., e_{n+1}) = e_i`, for `n >= 3`.
pub fn simple_an(n: usize) -> Result<StructureConstants> {
    if n < 3 {
        return Err(Error::Precondition(format!(
            "simple_an needs n >= 3 (use simple_an_any for n = 2), got {n}"
        )));
    }
    simple_an_any(n)
}

/// `A_n` for any `n >= 2`; at `n = 2` this is a three-dimensional simple Lie algebra.
pub fn simple_an_any(n: usize) -> Result<StructureConstants> {
    let m = n + 1;
    let mut mu = StructureConstants::new(n, m)?;
    for i in 1..=m {
        mu.set(&omit(m, i), i, int(1))?;
    }
    Ok(mu)
}

/// `T_ij = (−1)^{j−1} c^i_{1..ĵ..n+1}`: the bracket of an `(n+1)`-dimensional
/// algebra as a bilinear tensor (column `j` is the bracket omitting `e_j`).
pub fn structure_matrix(mu: &StructureConstants) -> Result<Matrix> {
    let m = mu.dim();
    if m != mu.arity() + 1 {
        return Err(Error::Precondition(format!(
            "dimension must be arity + 1, got arity {} and dimension {m}",
            mu.arity()
        )));
    }
    let cols: Vec<Vec<Scalar>> = (1..=m)
        .map(|j| {
            let v = mu.vector(&omit(m, j));
            if j % 2 == 1 {
                v
            } else {
                v.into_iter().map(|x| -x).collect()
            }
        })
        .collect();
    Ok(Matrix::from_fn(m, m, |i, j| cols[j][i].clone()))
}

/// Label of an `(n+1)`-dimensional n-Lie algebra up to isomorphism.
///
/// The derived dimension picks the family. In the derived-dimension-2 case
/// the structure matrix factors as `F M Fᵀ` with `F` a basis of the derived
/// algebra; a change of basis acts on `M` by congruence times a scalar, so
/// `K` (skew part) `= 0` means `c1`, `S` (symmetric part) `= 0` means `c3`,
/// and otherwise `det S / det K = −4α − 1` recovers the `c2` parameter, which
/// is therefore a complete invariant.
pub fn classify(mu: &StructureConstants) -> Result<Classification> {
    let n = mu.arity();
    if mu.dim() != n + 1 {
        return Err(Error::Precondition(format!(
            "classification needs dimension n + 1 = {}, got {}",
            n + 1,
            mu.dim()
        )));
    }
    let report = check_fundamental_identity(mu);
    if !report.is_empty() {
        return Err(Error::Rejected {
            what: "not an n-Lie algebra".into(),
            report,
        });
    }
    let (derived, d) = derived_algebra(mu);
    if d == 0 {
        return Ok(Classification::Label(CanonicalLabel::Abelian));
    }
    if n < 3 {
        return Ok(Classification::Unclassified);
    }
    match d {
        1 => {
            let (z, _) = center(mu);
            let inside = Matrix::from_rows(
                (0..z.rows())
                    .map(|r| z.row(r).to_vec())
                    .chain(std::iter::once(derived.row(0).to_vec()))
                    .collect(),
            )
            .rank()
                == z.rows();
            Ok(Classification::Label(if inside { CanonicalLabel::B1 } else { CanonicalLabel::B2 }))
        }
        2 => Ok(classify_rank_two(mu, &derived)),
        r => Ok(Classification::Label(CanonicalLabel::D(r))),
    }
}

fn classify_rank_two(mu: &StructureConstants, derived: &Matrix) -> Classification {
    let t = match structure_matrix(mu) {
        Ok(t) => t,
        Err(_) => return Classification::Unclassified,
    };
    let m = t.rows();
    // F: m×2 with the derived basis as columns; pick two pivot rows of F to
    // read off coordinates.
    let f = derived.transpose();
    let (_, pivots) = derived.rref();
    let (p0, p1) = (pivots[0], pivots[1]);
    let fsub = Matrix::from_fn(2, 2, |r, c| f.get([p0, p1][r], c).clone());
    let Ok(finv) = fsub.inverse() else {
        return Classification::Unclassified;
    };
    // M = Fsub⁻¹ Tsub Fsub⁻ᵀ, then verify T = F M Fᵀ in full.
    let tsub = Matrix::from_fn(2, 2, |r, c| t.get([p0, p1][r], [p0, p1][c]).clone());
    let mm = &(&finv * &tsub) * &finv.transpose();
    if &(&f * &mm) * &f.transpose() != t {
        return Classification::Unclassified;
    }
    debug_assert_eq!(m, mu.dim());
    let half = ratio(1, 2);
    let s = (&mm + &mm.transpose()).scaled(&half);
    let k = (&mm - &mm.transpose()).scaled(&half);
    if k.is_zero() {
        return Classification::Label(CanonicalLabel::C1);
    }
    if s.is_zero() {
        return Classification::Label(CanonicalLabel::C3);
    }
    let ds = s.determinant().expect("square");
    let dk = k.determinant().expect("square");
    let alpha = -(ds / dk + Scalar::one()) / int(4);
    if alpha.is_zero() {
        // α = 0 is not a listed form
        return Classification::Unclassified;
    }
    Classification::Label(CanonicalLabel::C2(alpha))
}

fn matrix_unit_index(m: usize, i: usize, j: usize) -> usize {
    (i - 1) * m + (j - 1)
}

/// Basis of `M(m)` used by [`example_coalgebra_matrix`], as matrix-unit
/// coordinate columns: the off-diagonal `E_ij` (row-major), then
/// `E_jj − E_{j+1,j+1}`, then the identity `E`.
pub fn matrix_example_basis(m: usize) -> Matrix {
    let mut cols: Vec<Vec<Scalar>> = Vec::new();
    for i in 1..=m {
        for j in 1..=m {
            if i != j {
                let mut v = vec![Scalar::zero(); m * m];
                v[matrix_unit_index(m, i, j)] = Scalar::one();
                cols.push(v);
            }
        }
    }
    for j in 1..m {
        let mut v = vec![Scalar::zero(); m * m];
        v[matrix_unit_index(m, j, j)] = Scalar::one();
        v[matrix_unit_index(m, j + 1, j + 1)] = -Scalar::one();
        cols.push(v);
    }
    let mut v = vec![Scalar::zero(); m * m];
    for i in 1..=m {
        v[matrix_unit_index(m, i, i)] = Scalar::one();
    }
    cols.push(v);
    let n = m * m;
    Matrix::from_fn(n, n, |r, c| cols[c][r].clone())
}

/// The 3-ary comultiplication on `M(m)`:
/// `Δ(E_ij) = Σ_k E_kk ∧ E_ik ∧ E_kj` for `i ≠ j`,
/// `Δ(E_ii − E_{i+1,i+1}) = Σ_k E_kk ∧ E_{i,i+1} ∧ E_{i+1,i}`, `Δ(E) = 0`,
/// written in the basis of [`matrix_example_basis`].
pub fn example_coalgebra_matrix(m: usize) -> Result<Comultiplication> {
    if m < 2 {
        return Err(Error::Precondition(format!("matrix example needs m >= 2, got {m}")));
    }
    let dim = m * m;
    let basis = matrix_example_basis(m);
    let to_basis = basis.inverse()?;
    let unit = |i: usize, j: usize| -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); dim];
        v[matrix_unit_index(m, i, j)] = Scalar::one();
        to_basis.mul_vec(&v)
    };
    let mut d = Comultiplication::new(3, dim)?;
    let mut add_wedge = |target: usize, u: &[Scalar], v: &[Scalar], w: &[Scalar]| -> Result<()> {
        for (p, a) in u.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (q, b) in v.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                for (r, c) in w.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                    if p == q || q == r || p == r {
                        continue;
                    }
                    d.add(target, &[p + 1, q + 1, r + 1], &(a * b * c))?;
                }
            }
        }
        Ok(())
    };
    let mut slot = 0;
    for i in 1..=m {
        for j in 1..=m {
            if i != j {
                slot += 1;
                for k in 1..=m {
                    add_wedge(slot, &unit(k, k), &unit(i, k), &unit(k, j))?;
                }
            }
        }
    }
    for i in 1..m {
        slot += 1;
        for k in 1..=m {
            add_wedge(slot, &unit(k, k), &unit(i, i + 1), &unit(i + 1, i))?;
        }
    }
    Ok(d)
}

/// `Δ(e_i) = e_1 ∧ .. ∧ ê_i ∧ .. ∧ e_{n+1}`.
pub fn example_coalgebra_top(n: usize) -> Result<Comultiplication> {
    if n < 2 {
        return Err(Error::BadArity(n));
    }
    let m = n + 1;
    let mut d = Comultiplication::new(n, m)?;
    for i in 1..=m {
        d.set(i, &omit(m, i), int(1))?;
    }
    Ok(d)
}

/// `μ(x_1, x_3, .., x_{n+1}) = x_1`, `μ(x_2, .., x_{n+1}) = x_2`,
/// `Δ(x_1) = x_3 ∧ x_2 ∧ x_4 ∧ .. ∧ x_{n+1}`, `Δ(x_3) = x_1 ∧ x_2 ∧ x_4 ∧ .. ∧ x_{n+1}`.
pub fn example_bialgebra(n: usize) -> Result<Bialgebra> {
    if n < 3 {
        return Err(Error::Precondition(format!("example needs n >= 3, got {n}")));
    }
    let m = n + 1;
    let mu = canonical_algebra(n, &CanonicalLabel::C3)?;
    let tail: Vec<usize> = (4..=m).collect();
    let mut d = Comultiplication::new(n, m)?;
    d.set(1, &[&[3, 2][..], &tail].concat(), int(1))?;
    d.set(3, &[&[1, 2][..], &tail].concat(), int(1))?;
    Bialgebra::new(mu, d)
}

/// One algebra with three comultiplications and the maps relating them.
#[derive(Clone, Debug)]
pub struct ThreeDeltas {
    pub mu: StructureConstants,
    pub deltas: [Comultiplication; 3],
    /// `x_2 ↔ x_3`, from `Δ_1` to `Δ_2`.
    pub phi12: Matrix,
    /// `x_1 → x_2 → x_3 → x_1`, from `Δ_1` to `Δ_3`.
    pub phi13: Matrix,
    /// `x_1 ↔ x_2`, from `Δ_2` to `Δ_3`.
    pub phi23: Matrix,
}

/// `μ(x_2, .., x_{n+1}) = x_1`, `μ(x_1, x_3, .., x_{n+1}) = x_2` with
/// `Δ_1(x_1) = x_1 ∧ x_3 ∧ ..`, `Δ_1(x_2) = x_2 ∧ x_3 ∧ ..`;
/// `Δ_2(x_1) = x_1 ∧ x_2 ∧ x_4 ∧ ..`, `Δ_2(x_3) = x_3 ∧ x_2 ∧ x_4 ∧ ..`;
/// `Δ_3(x_2) = x_2 ∧ x_1 ∧ x_4 ∧ ..`, `Δ_3(x_3) = x_3 ∧ x_1 ∧ x_4 ∧ ..`.
pub fn example_three_deltas(n: usize) -> Result<ThreeDeltas> {
    if n < 3 {
        return Err(Error::Precondition(format!("example needs n >= 3, got {n}")));
    }
    let m = n + 1;
    let mu = canonical_algebra(n, &CanonicalLabel::C1)?;
    let tail: Vec<usize> = (4..=m).collect();
    let with = |a: usize, b: usize| [&[a, b][..], &tail].concat();
    let build = |entries: [(usize, usize, usize); 2]| -> Result<Comultiplication> {
        let mut d = Comultiplication::new(n, m)?;
        for (l, a, b) in entries {
            d.set(l, &with(a, b), int(1))?;
        }
        Ok(d)
    };
    let d1 = build([(1, 1, 3), (2, 2, 3)])?;
    let d2 = build([(1, 1, 2), (3, 3, 2)])?;
    let d3 = build([(2, 2, 1), (3, 3, 1)])?;
    let perm = |head: [usize; 3]| {
        let mut image = head.to_vec();
        image.extend(4..=m);
        Matrix::permutation(&image)
    };
    Ok(ThreeDeltas {
        mu,
        deltas: [d1, d2, d3],
        phi12: perm([1, 3, 2]),
        phi13: perm([2, 3, 1]),
        phi23: perm([2, 1, 3]),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::transport;

    #[test]
    fn labels_parse_and_print() {
        for s in ["abelian", "b1", "b2", "c1", "c2(1/3)", "c3", "d(4)"] {
            assert_eq!(s.parse::<CanonicalLabel>().unwrap().to_string(), s);
        }
        assert_eq!("c2:-2".parse::<CanonicalLabel>().unwrap(), CanonicalLabel::C2(int(-2)));
        assert_eq!("d5".parse::<CanonicalLabel>().unwrap(), CanonicalLabel::D(5));
        assert!("c2(0)".parse::<CanonicalLabel>().is_err());
        assert!("e7".parse::<CanonicalLabel>().is_err());
    }

    #[test]
    fn canonical_c2_entries() {
        let mu = canonical_algebra(3, &CanonicalLabel::C2(int(1))).unwrap();
        assert_eq!(mu.get(&[2, 3, 4], 1).unwrap(), int(1));
        assert_eq!(mu.get(&[2, 3, 4], 2).unwrap(), int(1));
        assert_eq!(mu.get(&[1, 3, 4], 2).unwrap(), int(1));
        assert_eq!(mu.nonzero().count(), 3);
    }

    #[test]
    fn canonical_label_bounds() {
        assert!(canonical_algebra(3, &CanonicalLabel::D(5)).is_err());
        assert!(canonical_algebra(3, &CanonicalLabel::D(2)).is_err());
        assert!(canonical_algebra(2, &CanonicalLabel::C3).is_err());
        assert!(canonical_algebra(3, &CanonicalLabel::C2(int(0))).is_err());
        assert_eq!(canonical_algebra(3, &CanonicalLabel::D(4)).unwrap(), simple_an(3).unwrap());
        assert!(simple_an(2).is_err());
        assert!(simple_an_any(2).is_ok());
    }

    #[test]
    fn round_trip_classification() {
        for n in 3..=4 {
            for l in all_labels(n, &[int(1), int(-2), ratio(1, 3), ratio(-1, 4)]) {
                let mu = canonical_algebra(n, &l).unwrap();
                assert_eq!(classify(&mu).unwrap(), Classification::Label(l.clone()), "n={n} {l}");
            }
        }
    }

    #[test]
    fn classification_survives_basis_change() {
        let g = Matrix::from_i64(&[&[1, 2, 0, 1], &[0, 1, 3, 0], &[1, 0, 1, 0], &[0, 0, 1, 1]]);
        for l in all_labels(3, &[ratio(1, 3)]) {
            let mu = transport(&canonical_algebra(3, &l).unwrap(), &g).unwrap();
            assert_eq!(classify(&mu).unwrap(), Classification::Label(l));
        }
    }

    #[test]
    fn n2_is_unlabeled() {
        let mu = simple_an_any(2).unwrap();
        assert_eq!(classify(&mu).unwrap(), Classification::Unclassified);
        let zero = StructureConstants::new(2, 3).unwrap();
        assert_eq!(classify(&zero).unwrap(), Classification::Label(CanonicalLabel::Abelian));
    }

    #[test]
    fn matrix_basis_is_invertible() {
        for m in 2..=3 {
            assert_eq!(matrix_example_basis(m).rank(), m * m);
        }
    }
}

//! Multi-indices, sparse tensor-power elements, wedges, factor permutations
//! and the pairing between a space and its dual.
//!
//! Basis labels are 1-based throughout: a tuple `(i_1, ..., i_p)` with
//! `1 <= i_r <= dim` names the basis tensor `e_{i_1} ⊗ ... ⊗ e_{i_p}`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{format_scalar, Scalar};

/// Sorts `t` and reports the sign of the sorting permutation, or `None` when
/// an index repeats (an alternating tensor vanishes there).
pub fn canonicalize(t: &[usize]) -> Option<(Vec<usize>, i64)> {
    let mut v = t.to_vec();
    let mut sign = 1;
    // insertion sort; tuples are short and we need the parity anyway
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, sign))
}

pub fn is_strictly_increasing(t: &[usize]) -> bool {
    t.windows(2).all(|w| w[0] < w[1])
}

/// All strictly increasing `len`-tuples drawn from `1..=dim`, lexicographic.
pub fn increasing_tuples(dim: usize, len: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, dim: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..=dim {
            if dim - i + 1 < left {
                break;
            }
            cur.push(i);
            go(i + 1, dim, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, dim, len, &mut Vec::with_capacity(len), &mut out);
    out
}

/// All `len`-tuples over `1..=dim`, lexicographic.
pub fn all_tuples(dim: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::with_capacity(len)];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                (1..=dim).map(move |i| {
                    let mut u = t.clone();
                    u.push(i);
                    u
                })
            })
            .collect();
    }
    out
}

/// Every permutation of `0..p` with its sign.
pub fn signed_permutations(p: usize) -> Vec<(Vec<usize>, i64)> {
    fn go(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<(Vec<usize>, i64)>) {
        if cur.len() == used.len() {
            let sign = canonicalize(cur).map_or(0, |(_, s)| s);
            out.push((cur.clone(), sign));
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                go(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::with_capacity(p), &mut vec![false; p], &mut out);
    out
}

/// Generalized Kronecker determinant: `det[δ(upper_c, lower_r)]` over rows `r`
/// and columns `c`.
pub fn kron_det(upper: &[usize], lower: &[usize]) -> Result<i64> {
    if upper.len() != lower.len() {
        return Err(Error::LengthMismatch {
            expected: upper.len(),
            got: lower.len(),
        });
    }
    let p = upper.len();
    let mut m: Vec<Vec<i64>> = (0..p)
        .map(|r| (0..p).map(|c| i64::from(upper[c] == lower[r])).collect())
        .collect();
    // Bareiss elimination keeps every intermediate value integral.
    let mut sign = 1;
    let mut prev = 1;
    for k in 0..p {
        if m[k][k] == 0 {
            match (k + 1..p).find(|&r| m[r][k] != 0) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return Ok(0),
            }
        }
        for i in k + 1..p {
            for j in k + 1..p {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    Ok(if p == 0 { 1 } else { sign * m[p - 1][p - 1] })
}

/// Sparse element of the `order`-fold tensor power of a `dim`-dimensional space.
///
/// Keys are full (not necessarily increasing) index tuples; zero coefficients
/// are never stored, so structural equality is mathematical equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TensorElement {
    order: usize,
    dim: usize,
    terms: BTreeMap<Vec<usize>, Scalar>,
}

impl TensorElement {
    pub fn zero(order: usize, dim: usize) -> Self {
        TensorElement {
            order,
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(tuple: &[usize], dim: usize) -> Result<Self> {
        check_range(tuple, dim)?;
        let mut t = Self::zero(tuple.len(), dim);
        t.terms.insert(tuple.to_vec(), Scalar::one());
        Ok(t)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, tuple: &[usize]) -> Scalar {
        self.terms.get(tuple).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Adds `c · e_tuple`. Panics if the tuple does not fit this tensor.
    pub fn add_term(&mut self, tuple: Vec<usize>, c: &Scalar) {
        assert_eq!(tuple.len(), self.order, "tuple length must equal the tensor order");
        debug_assert!(tuple.iter().all(|&i| i >= 1 && i <= self.dim));
        if c.is_zero() {
            return;
        }
        match self.terms.entry(tuple) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &TensorElement, c: &Scalar) {
        assert_eq!((self.order, self.dim), (other.order, other.dim));
        if c.is_zero() {
            return;
        }
        for (k, v) in &other.terms {
            self.add_term(k.clone(), &(v * c));
        }
    }

    pub fn scaled(&self, c: &Scalar) -> Self {
        let mut out = Self::zero(self.order, self.dim);
        out.add_scaled(self, c);
        out
    }

    /// Reorders tensor factors: output factor `p` is input factor `perm.source(p)`.
    pub fn permute_factors(&self, perm: &FactorPermutation) -> Result<Self> {
        if perm.len() != self.order {
            return Err(Error::OrderMismatch {
                expected: perm.len(),
                got: self.order,
            });
        }
        let mut out = Self::zero(self.order, self.dim);
        for (k, v) in &self.terms {
            out.terms.insert(perm.apply(k), v.clone());
        }
        Ok(out)
    }

    /// Applies the linear map `m` (column `j` = image of `e_{j+1}`) to the
    /// factor at 1-based position `slot`, leaving the others fixed.
    pub fn map_factor(&self, slot: usize, m: &Matrix) -> Result<Self> {
        if slot == 0 || slot > self.order {
            return Err(Error::BadSlot {
                slot,
                order: self.order,
            });
        }
        if m.rows() != self.dim || m.cols() != self.dim {
            return Err(Error::DimensionMismatch(m.rows(), self.dim));
        }
        let mut out = Self::zero(self.order, self.dim);
        for (k, v) in &self.terms {
            let col = k[slot - 1] - 1;
            for r in 0..self.dim {
                let a = m.get(r, col);
                if a.is_zero() {
                    continue;
                }
                let mut key = k.clone();
                key[slot - 1] = r + 1;
                out.add_term(key, &(v * a));
            }
        }
        Ok(out)
    }

    /// `(φ ⊗ ... ⊗ φ)` applied factorwise.
    pub fn map_all(&self, m: &Matrix) -> Result<Self> {
        let mut out = self.clone();
        for slot in 1..=self.order {
            out = out.map_factor(slot, m)?;
        }
        Ok(out)
    }

    /// Replaces the last factor `e_i` of every term by the tensor `f(i)`,
    /// concatenating factors: the map `1 ⊗ ... ⊗ 1 ⊗ f`.
    pub fn expand_last(&self, out_order_tail: usize, f: impl Fn(usize) -> TensorElement) -> Self {
        let mut out = Self::zero(self.order - 1 + out_order_tail, self.dim);
        for (k, v) in &self.terms {
            let (head, last) = k.split_at(self.order - 1);
            let image = f(last[0]);
            debug_assert_eq!(image.order, out_order_tail);
            for (k2, v2) in &image.terms {
                let mut key = head.to_vec();
                key.extend_from_slice(k2);
                out.add_term(key, &(v * v2));
            }
        }
        out
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, v)| {
                let idx: Vec<String> = k.iter().map(ToString::to_string).collect();
                format!("{}·e({})", format_scalar(v), idx.join(","))
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Add for &TensorElement {
    type Output = TensorElement;

    fn add(self, rhs: &TensorElement) -> TensorElement {
        let mut out = self.clone();
        out.add_scaled(rhs, &Scalar::one());
        out
    }
}

impl Sub for &TensorElement {
    type Output = TensorElement;

    fn sub(self, rhs: &TensorElement) -> TensorElement {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Scalar::one());
        out
    }
}

impl Neg for &TensorElement {
    type Output = TensorElement;

    fn neg(self) -> TensorElement {
        self.scaled(&-Scalar::one())
    }
}

fn check_range(tuple: &[usize], dim: usize) -> Result<()> {
    match tuple.iter().find(|&&i| i == 0 || i > dim) {
        Some(&index) => Err(Error::IndexOutOfRange { index, dim }),
        None => Ok(()),
    }
}

/// Unnormalized antisymmetrization `Σ_σ sign(σ) e_{t_σ(1)} ⊗ ... ⊗ e_{t_σ(p)}`.
pub fn wedge(t: &[usize], dim: usize) -> Result<TensorElement> {
    check_range(t, dim)?;
    let mut out = TensorElement::zero(t.len(), dim);
    if canonicalize(t).is_none() {
        return Ok(out);
    }
    for (perm, sign) in signed_permutations(t.len()) {
        let key: Vec<usize> = perm.iter().map(|&i| t[i]).collect();
        out.terms.insert(key, Scalar::from_integer(sign.into()));
    }
    Ok(out)
}

/// `⟨e^{d_1} ⊗ ... ⊗ e^{d_p}, t⟩`, i.e. the coefficient of `dual` in `t`.
pub fn pair(dual: &[usize], t: &TensorElement) -> Result<Scalar> {
    if dual.len() != t.order {
        return Err(Error::LengthMismatch {
            expected: t.order,
            got: dual.len(),
        });
    }
    Ok(t.coefficient(dual))
}

/// A fixed reordering of tensor factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorPermutation {
    source: Vec<usize>,
}

impl FactorPermutation {
    /// Builds from `source`, where output position `p` takes input factor
    /// `source[p]` (0-based). Panics if `source` is not a permutation.
    pub fn from_source(source: Vec<usize>) -> Self {
        let mut seen = vec![false; source.len()];
        for &s in &source {
            assert!(s < source.len() && !seen[s], "not a permutation");
            seen[s] = true;
        }
        FactorPermutation { source }
    }

    /// The factor permutation `ω_s` on `(2n-1)`-fold tensors.
    ///
    /// It is the adjoint of the dual-side rearrangement
    /// `x_1 ⊗ .. ⊗ x_{n-1} ⊗ y_1 ⊗ .. ⊗ y_n ↦ y_1 ⊗ .. ŷ_s .. ⊗ y_n ⊗ x_1 ⊗ .. ⊗ x_{n-1} ⊗ y_s`.
    /// If that rearrangement puts dual slot `pi[q]` at position `q`, then
    /// pairing is preserved exactly when `ω_s` moves input factor `q` to
    /// output position `pi[q]`.
    pub fn omega(n: usize, s: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::BadArity(n));
        }
        if s == 0 || s > n {
            return Err(Error::BadSlot { slot: s, order: n });
        }
        let pi = omega_dual_rearrangement(n, s);
        let mut source = vec![0; pi.len()];
        for (q, &p) in pi.iter().enumerate() {
            source[p] = q;
        }
        Ok(FactorPermutation { source })
    }

    pub fn len(&self) -> usize {
        self.source.len()
    }

    pub fn is_empty(&self) -> bool {
        self.source.is_empty()
    }

    pub fn source(&self, p: usize) -> usize {
        self.source[p]
    }

    pub fn apply<T: Clone>(&self, factors: &[T]) -> Vec<T> {
        self.source.iter().map(|&q| factors[q].clone()).collect()
    }
}

/// Position list of the dual-side rearrangement defining `ω_s`: entry `q` is
/// the slot of the original dual tuple that lands at position `q`.
fn omega_dual_rearrangement(n: usize, s: usize) -> Vec<usize> {
    let y = |r: usize| n - 1 + (r - 1);
    let mut pi: Vec<usize> = (1..=n).filter(|&r| r != s).map(y).collect();
    pi.extend(0..n - 1);
    pi.push(y(s));
    pi
}

/// Applies `ω_s` to an order-`(2n-1)` tensor.
pub fn omega_s(t: &TensorElement, n: usize, s: usize) -> Result<TensorElement> {
    if t.order != 2 * n - 1 {
        return Err(Error::OrderMismatch {
            expected: 2 * n - 1,
            got: t.order,
        });
    }
    t.permute_factors(&FactorPermutation::omega(n, s)?)
}

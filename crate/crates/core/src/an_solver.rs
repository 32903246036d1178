//! Comultiplications on the simple algebra `A_n` parameterized by a square
//! coefficient matrix, and an end-to-end check of which of them give
//! bialgebras.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use rand_chacha::ChaCha8Rng;

use crate::algebra::StructureConstants;
use crate::bialgebra::{check_compatibility_tensor, dualize, validate, Bialgebra};
use crate::catalog::{classify, simple_an, CanonicalLabel, Classification};
use crate::coalgebra::{check_coalgebra_dual, check_coalgebra_tensor, dual_algebra, rank, Comultiplication};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::random::{rng_for, small_nonzero, sparse_scalar};
use crate::report::Residual;
use crate::scalar::{int, Scalar};

/// `Δ(e_i) = Σ_j a_ij e_1 ∧ .. ∧ ê_j ∧ .. ∧ e_{n+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AnDeltaMatrix {
    n: usize,
    a: Matrix,
}

/// `b_ij = (−1)^{n+j+1} a_ij`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BMatrix {
    n: usize,
    b: Matrix,
}

fn column_sign(n: usize, j: usize) -> Scalar {
    // j is 1-based
    if (n + j + 1) % 2 == 0 {
        Scalar::one()
    } else {
        -Scalar::one()
    }
}

impl AnDeltaMatrix {
    pub fn new(n: usize, a: Matrix) -> Result<Self> {
        if n < 2 {
            return Err(Error::BadArity(n));
        }
        if a.rows() != n + 1 || a.cols() != n + 1 {
            return Err(Error::DimensionMismatch(a.rows(), n + 1));
        }
        Ok(AnDeltaMatrix { n, a })
    }

    pub fn zero(n: usize) -> Result<Self> {
        Self::new(n, Matrix::zeros(n + 1, n + 1))
    }

    /// The coefficient matrix whose signed copy is `b`.
    pub fn from_b(b: &BMatrix) -> Self {
        let n = b.n;
        AnDeltaMatrix {
            n,
            a: Matrix::from_fn(n + 1, n + 1, |i, j| b.b.get(i, j) * column_sign(n, j + 1)),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &Matrix {
        &self.a
    }
}

impl BMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &Matrix {
        &self.b
    }

    pub fn new(n: usize, b: Matrix) -> Result<Self> {
        if b.rows() != n + 1 || b.cols() != n + 1 {
            return Err(Error::DimensionMismatch(b.rows(), n + 1));
        }
        Ok(BMatrix { n, b })
    }
}

fn omit(m: usize, j: usize) -> Vec<usize> {
    (1..=m).filter(|&x| x != j).collect()
}

pub fn an_delta_from_matrix(d: &AnDeltaMatrix) -> Comultiplication {
    let m = d.n + 1;
    let mut c = Comultiplication::new(d.n, m).expect("n >= 2");
    for i in 1..=m {
        for j in 1..=m {
            let v = d.a.get(i - 1, j - 1);
            if !v.is_zero() {
                c.set(i, &omit(m, j), v.clone()).expect("in range");
            }
        }
    }
    c
}

pub fn b_matrix(d: &AnDeltaMatrix) -> BMatrix {
    let n = d.n;
    BMatrix {
        n,
        b: Matrix::from_fn(n + 1, n + 1, |i, j| d.a.get(i, j) * column_sign(n, j + 1)),
    }
}

/// `a_kk = 0` and `a_ij = (−1)^{i+j+1} a_ji`.
pub fn check_an_constraints(d: &AnDeltaMatrix) -> bool {
    let m = d.n + 1;
    for i in 0..m {
        if !d.a.get(i, i).is_zero() {
            return false;
        }
        for j in i + 1..m {
            // 1-based i + j + 1 has the parity of 0-based i + j + 3
            let s = if (i + j + 3) % 2 == 0 { Scalar::one() } else { -Scalar::one() };
            if *d.a.get(i, j) != d.a.get(j, i) * &s {
                return false;
            }
        }
    }
    true
}

/// Outcome of [`coalgebra_b_criterion`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BCriterion {
    pub b_symmetric: bool,
    pub b_rank: usize,
    pub dual_route_ok: bool,
    pub tensor_route_ok: bool,
    pub delta_rank: usize,
    /// `[coalgebra ∧ R(Δ) >= 3] ⇔ [B symmetric ∧ rank B >= 3]`, with both
    /// coalgebra routes in agreement.
    pub consistent: bool,
}

pub fn coalgebra_b_criterion(d: &AnDeltaMatrix) -> BCriterion {
    let delta = an_delta_from_matrix(d);
    let b = b_matrix(d);
    let b_symmetric = b.b.is_symmetric();
    let b_rank = b.b.rank();
    let dual_route_ok = check_coalgebra_dual(&delta).is_empty();
    let tensor_route_ok = check_coalgebra_tensor(&delta).is_empty();
    let delta_rank = rank(&delta);
    let lhs = dual_route_ok && delta_rank >= 3;
    let rhs = b_symmetric && b_rank >= 3;
    BCriterion {
        b_symmetric,
        b_rank,
        dual_route_ok,
        tensor_route_ok,
        delta_rank,
        consistent: dual_route_ok == tensor_route_ok && lhs == rhs,
    }
}

/// Skew matrix `u vᵀ − v uᵀ` from random vectors, resampled until it has rank 2.
pub fn sample_skew_rank2(rng: &mut ChaCha8Rng, n: usize) -> BMatrix {
    let m = n + 1;
    loop {
        let b = skew_pair(rng, m);
        if b.rank() == 2 {
            return BMatrix { n, b };
        }
    }
}

/// Sum of two independent skew pairs, resampled until the rank is at least 4.
pub fn sample_skew_rank4(rng: &mut ChaCha8Rng, n: usize) -> Result<BMatrix> {
    let m = n + 1;
    if m < 4 {
        return Err(Error::Precondition("rank 4 needs n >= 3".into()));
    }
    loop {
        let b = &skew_pair(rng, m) + &skew_pair(rng, m);
        if b.rank() >= 4 {
            return Ok(BMatrix { n, b });
        }
    }
}

fn skew_pair(rng: &mut ChaCha8Rng, m: usize) -> Matrix {
    let u: Vec<Scalar> = (0..m).map(|_| sparse_scalar(rng, 4, 5)).collect();
    let v: Vec<Scalar> = (0..m).map(|_| sparse_scalar(rng, 4, 5)).collect();
    Matrix::from_fn(m, m, |i, j| &u[i] * &v[j] - &v[i] * &u[j])
}

/// Random coefficient matrix violating the constraints.
pub fn sample_violating(rng: &mut ChaCha8Rng, n: usize) -> AnDeltaMatrix {
    let m = n + 1;
    loop {
        let a = Matrix::from_rows((0..m).map(|_| (0..m).map(|_| sparse_scalar(rng, 1, 2)).collect()).collect());
        let d = AnDeltaMatrix { n, a };
        if !check_an_constraints(&d) {
            return d;
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FamilyOutcome {
    pub name: String,
    pub passed: usize,
    pub failed: usize,
}

/// Aggregate of [`verify_an_families`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyReport {
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    pub families: Vec<FamilyOutcome>,
    /// One line per failed assertion, in trial order.
    pub failures: Vec<String>,
    /// Valid bialgebras met along the way (zero and rank-2 families).
    pub valid_samples: Vec<Bialgebra>,
}

impl FamilyReport {
    pub fn all_passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for FamilyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "A_n bialgebra check: n={} trials={} seed={}", self.n, self.trials, self.seed)?;
        for fam in &self.families {
            writeln!(f, "  {:<28} passed {:>5}  failed {:>5}", fam.name, fam.passed, fam.failed)?;
        }
        for line in &self.failures {
            writeln!(f, "  FAIL {line}")?;
        }
        write!(f, "result: {}", if self.all_passed() { "ok" } else { "FAILED" })
    }
}

const FAMILIES: [&str; 4] = ["zero", "skew-rank-2", "skew-rank-4", "constraint-violating"];

/// Samples four families of coefficient matrices per trial and checks each
/// against the general-purpose checkers:
///
/// * zero: valid bialgebra with `R(Δ) = 0`;
/// * skew `B` of rank 2: valid, constraints hold, `R(Δ) = 2`, dual of type `c3`;
/// * skew `B` of rank 4: both coalgebra routes fail;
/// * constraint-violating `a`: compatibility fails.
///
/// Trial `t`, family `f` draws from stream `4t + f` of `seed`.
pub fn verify_an_families(n: usize, trials: usize, seed: u64) -> Result<FamilyReport> {
    if n < 3 {
        return Err(Error::Precondition(format!("needs n >= 3, got {n}")));
    }
    if trials == 0 {
        return Err(Error::Precondition("needs at least one trial".into()));
    }
    let mu = simple_an(n)?;
    let mut families: Vec<FamilyOutcome> = FAMILIES
        .iter()
        .map(|s| FamilyOutcome {
            name: s.to_string(),
            ..Default::default()
        })
        .collect();
    let mut failures = Vec::new();
    let mut valid_samples = Vec::new();
    for trial in 0..trials {
        for (f, fam) in families.iter_mut().enumerate() {
            let mut rng = rng_for(seed, 4 * trial as u64 + f as u64);
            let outcome = match f {
                0 => check_valid(&mu, &AnDeltaMatrix::zero(n)?, 0, &mut valid_samples),
                1 => {
                    let d = AnDeltaMatrix::from_b(&sample_skew_rank2(&mut rng, n));
                    check_valid(&mu, &d, 2, &mut valid_samples)
                }
                2 => {
                    let d = AnDeltaMatrix::from_b(&sample_skew_rank4(&mut rng, n)?);
                    let delta = an_delta_from_matrix(&d);
                    let dual = check_coalgebra_dual(&delta).is_empty();
                    let tensor = check_coalgebra_tensor(&delta).is_empty();
                    if dual || tensor {
                        Err(format!("coalgebra checks accepted (dual {dual}, tensor {tensor})"))
                    } else {
                        Ok(())
                    }
                }
                _ => {
                    let d = sample_violating(&mut rng, n);
                    let b = Bialgebra::new(mu.clone(), an_delta_from_matrix(&d))?;
                    if check_compatibility_tensor(&b).is_empty() {
                        Err("compatibility accepted".into())
                    } else {
                        Ok(())
                    }
                }
            };
            match outcome {
                Ok(()) => fam.passed += 1,
                Err(msg) => {
                    fam.failed += 1;
                    failures.push(format!("trial {trial} {}: {msg}", fam.name));
                }
            }
        }
    }
    Ok(FamilyReport {
        n,
        trials,
        seed,
        families,
        failures,
        valid_samples,
    })
}

fn check_valid(
    mu: &StructureConstants,
    d: &AnDeltaMatrix,
    want_rank: usize,
    keep: &mut Vec<Bialgebra>,
) -> std::result::Result<(), String> {
    let delta = an_delta_from_matrix(d);
    let b = Bialgebra::new(mu.clone(), delta.clone()).map_err(|e| e.to_string())?;
    let report = validate(&b);
    if !report.is_empty() {
        return Err(format!("not a bialgebra ({} violations)", report.len()));
    }
    if !check_an_constraints(d) {
        return Err("constraints do not hold".into());
    }
    let r = rank(&delta);
    if r != want_rank {
        return Err(format!("rank {r}, expected {want_rank}"));
    }
    let br = b_matrix(d).b.rank();
    if br != r {
        return Err(format!("rank of B is {br}, rank of delta is {r}"));
    }
    if want_rank == 2 {
        match classify(&dual_algebra(&delta)) {
            Ok(Classification::Label(CanonicalLabel::C3)) => {}
            other => return Err(format!("dual classified as {other:?}")),
        }
    }
    if let Err(e) = dualize(&b) {
        return Err(format!("dual rejected: {e}"));
    }
    keep.push(b);
    Ok(())
}

/// The compatibility residual of `(A_n, Δ(a))` is linear in `a`. This holds the
/// residual of each unit matrix `E_ij` as sparse integer coordinates.
#[derive(Clone, Debug)]
pub struct LinearizedCompatibility {
    pub n: usize,
    /// Indexed by `i * (n+1) + j` (0-based).
    pub columns: Vec<Vec<(usize, i64)>>,
    pub coordinates: usize,
}

/// Residual tensors of `check_compatibility_tensor` for every unit matrix.
pub fn linearize_compatibility(n: usize) -> Result<LinearizedCompatibility> {
    let m = n + 1;
    let mu = simple_an(n)?;
    let mut index: BTreeMap<(Vec<usize>, Vec<usize>), usize> = BTreeMap::new();
    let mut columns = Vec::with_capacity(m * m);
    for i in 0..m {
        for j in 0..m {
            let mut a = Matrix::zeros(m, m);
            a.set(i, j, Scalar::one());
            let d = AnDeltaMatrix::new(n, a)?;
            let b = Bialgebra::new(mu.clone(), an_delta_from_matrix(&d))?;
            let mut col = Vec::new();
            for v in check_compatibility_tensor(&b).violations() {
                let Residual::Tensor(t) = &v.residual else {
                    return Err(Error::Precondition("tensor residual expected".into()));
                };
                for (key, c) in t.terms() {
                    if !c.is_integer() {
                        return Err(Error::Precondition("non-integral residual".into()));
                    }
                    let next = index.len();
                    let id = *index.entry((v.indices[0].clone(), key.clone())).or_insert(next);
                    let c: i64 = c.to_integer().try_into().map_err(|_| Error::Precondition("overflow".into()))?;
                    col.push((id, c));
                }
            }
            columns.push(col);
        }
    }
    Ok(LinearizedCompatibility {
        n,
        coordinates: index.len(),
        columns,
    })
}

impl LinearizedCompatibility {
    /// Residual of `Σ a_ij E_ij` as a dense integer vector.
    pub fn residual(&self, a: &[i64]) -> Vec<i64> {
        let mut r = vec![0i64; self.coordinates];
        for (col, &x) in self.columns.iter().zip(a) {
            for &(id, c) in col {
                r[id] += x * c;
            }
        }
        r
    }
}

/// The constraint map `a ↦ (a_kk; a_ij − (−1)^{i+j+1} a_ji for i < j)` as
/// sparse integer columns, indexed like [`LinearizedCompatibility::columns`].
fn constraint_columns(n: usize) -> (Vec<Vec<(usize, i64)>>, usize) {
    let m = n + 1;
    let mut rows = BTreeMap::new();
    let mut columns = Vec::with_capacity(m * m);
    for i in 1..=m {
        for j in 1..=m {
            let (key, c) = if i == j {
                ((i, i), 1)
            } else if i < j {
                ((i, j), 1)
            } else {
                // a_ij with i > j enters row (j, i) with coefficient −(−1)^{i+j+1}
                ((j, i), if (i + j + 1) % 2 == 0 { -1 } else { 1 })
            };
            let next = rows.len();
            let id = *rows.entry(key).or_insert(next);
            columns.push(vec![(id, c)]);
        }
    }
    (columns, rows.len())
}

/// Summary of [`exhaustive_grid`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridOutcome {
    pub cases: u64,
    pub constraints_hold: u64,
    pub compatible: u64,
    pub disagreements: u64,
}

/// Walks every `a` with entries in `{−1, 0, 1}` in reflected ternary Gray
/// order, updating the linearized compatibility residual and the constraint
/// residual by one unit column per step, and counts where
/// "constraints hold" and "compatibility holds" disagree.
pub fn exhaustive_grid(lin: &LinearizedCompatibility) -> GridOutcome {
    let m = lin.n + 1;
    let digits = m * m;
    let (ccols, crows) = constraint_columns(lin.n);
    let mut r = vec![0i64; lin.coordinates];
    let mut c = vec![0i64; crows];
    // start at a = (−1, .., −1)
    for k in 0..digits {
        for &(id, v) in &lin.columns[k] {
            r[id] -= v;
        }
        for &(id, v) in &ccols[k] {
            c[id] -= v;
        }
    }
    let mut r_nonzero = r.iter().filter(|&&x| x != 0).count();
    let mut c_nonzero = c.iter().filter(|&&x| x != 0).count();
    let mut value = vec![0i8; digits];
    let mut dir = vec![1i8; digits];
    let mut out = GridOutcome {
        cases: 0,
        constraints_hold: 0,
        compatible: 0,
        disagreements: 0,
    };
    let bump = |vec: &mut [i64], nz: &mut usize, col: &[(usize, i64)], s: i64| {
        for &(id, v) in col {
            let before = vec[id] != 0;
            vec[id] += s * v;
            let after = vec[id] != 0;
            match (before, after) {
                (true, false) => *nz -= 1,
                (false, true) => *nz += 1,
                _ => {}
            }
        }
    };
    loop {
        out.cases += 1;
        let ok_c = c_nonzero == 0;
        let ok_r = r_nonzero == 0;
        out.constraints_hold += u64::from(ok_c);
        out.compatible += u64::from(ok_r);
        out.disagreements += u64::from(ok_c != ok_r);
        let mut k = 0;
        while k < digits && ((dir[k] == 1 && value[k] == 2) || (dir[k] == -1 && value[k] == 0)) {
            dir[k] = -dir[k];
            k += 1;
        }
        if k == digits {
            break;
        }
        value[k] += dir[k];
        let s = i64::from(dir[k]);
        bump(&mut r, &mut r_nonzero, &lin.columns[k], s);
        bump(&mut c, &mut c_nonzero, &ccols[k], s);
    }
    out
}

/// Compares the solution space of "compatibility residual = 0" in the
/// unknowns `a_ij` with the space cut out by the printed constraints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstraintSpace {
    pub compatibility_dim: usize,
    pub constraint_dim: usize,
    pub equal: bool,
}

pub fn derive_constraint_space(n: usize) -> Result<ConstraintSpace> {
    let lin = linearize_compatibility(n)?;
    let m = n + 1;
    let to_matrix = |cols: &[Vec<(usize, i64)>], rows: usize| {
        let mut mat = Matrix::zeros(rows.max(1), m * m);
        for (k, col) in cols.iter().enumerate() {
            for &(id, v) in col {
                mat.set(id, k, int(v));
            }
        }
        mat
    };
    let (ccols, crows) = constraint_columns(n);
    let ns_compat = to_matrix(&lin.columns, lin.coordinates).nullspace();
    let ns_constr = to_matrix(&ccols, crows).nullspace();
    let span = |v: &[Vec<Scalar>]| Matrix::from_rows(v.to_vec()).row_space();
    let equal = ns_compat.len() == ns_constr.len()
        && (ns_compat.is_empty() || span(&ns_compat) == span(&ns_constr));
    Ok(ConstraintSpace {
        compatibility_dim: ns_compat.len(),
        constraint_dim: ns_constr.len(),
        equal,
    })
}

/// A random constraint-satisfying matrix with small entries; used for sampling.
pub fn sample_constrained(rng: &mut ChaCha8Rng, n: usize) -> AnDeltaMatrix {
    let m = n + 1;
    let mut a = Matrix::zeros(m, m);
    for i in 0..m {
        for j in i + 1..m {
            let x = small_nonzero(rng);
            let s = if (i + j + 3) % 2 == 0 { Scalar::one() } else { -Scalar::one() };
            a.set(j, i, x.clone());
            a.set(i, j, x * s);
        }
    }
    AnDeltaMatrix { n, a }
}

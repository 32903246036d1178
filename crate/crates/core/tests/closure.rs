mod common;

use nlie_core::algebra::{check_fundamental_identity, transport, StructureConstants};
use nlie_core::an_solver::{an_delta_from_matrix, sample_constrained, sample_skew_rank2, AnDeltaMatrix};
use nlie_core::bialgebra::{check_equivalence_map, dualize, dualize_unchecked, validate, Bialgebra};
use nlie_core::catalog::{all_labels, canonical_algebra, example_bialgebra, example_coalgebra_top, simple_an, simple_an_any};
use nlie_core::coalgebra::{dual_comultiplication, Comultiplication};
use nlie_core::extension::{
    check_ad_invariance, extend_algebra_metric, extend_bialgebra, extend_bialgebra_dual, extend_form, invariant_forms,
    BilinearForm, ExtendedIndexing,
};
use nlie_core::linalg::Matrix;
use nlie_core::random::{random_bracket, random_invertible, rng_for, sparse_scalar};
use nlie_core::scalar::{int, ratio, Scalar};
use num_traits::Zero;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

fn random_form(rng: &mut ChaCha8Rng, basis: &[BilinearForm], m: usize) -> BilinearForm {
    let mut acc = Matrix::zeros(m, m);
    for f in basis {
        acc = &acc + &f.matrix().scaled(&sparse_scalar(rng, 2, 3));
    }
    BilinearForm::new(acc).unwrap()
}

/// Seeded n-Lie algebras with a nonzero invariant form, and that form.
fn invariant_pairs(count: usize, seed: u64) -> Vec<(StructureConstants, BilinearForm)> {
    let mut out = Vec::new();
    let mut trial = 0;
    while out.len() < count {
        let mut rng = rng_for(seed, trial);
        trial += 1;
        let n = rng.gen_range(2..=3usize);
        let m = n + 1;
        let mu = random_bracket(&mut rng, n, m);
        if !check_fundamental_identity(&mu).is_empty() {
            continue;
        }
        let basis = invariant_forms(&mu).unwrap();
        let b = random_form(&mut rng, &basis, m);
        if b.matrix().is_zero() {
            continue;
        }
        out.push((mu, b));
    }
    out
}

#[test]
fn metric_extension_closure() {
    let pairs = invariant_pairs(50, 505);
    let mut nondegenerate = 0;
    for (mu, b) in &pairs {
        assert!(check_ad_invariance(mu, b).unwrap().is_empty());
        let e = extend_algebra_metric(mu, b).unwrap();
        assert_eq!((e.arity(), e.dim()), (mu.arity() + 1, mu.dim() + 2));
        assert!(check_fundamental_identity(&e).is_empty(), "{mu}");
        let f = extend_form(b, mu.arity());
        assert!(check_ad_invariance(&e, &f).unwrap().is_empty(), "{mu}");
        assert_eq!(f.is_nondegenerate(), b.is_nondegenerate());
        assert_eq!(f.rank(), b.rank() + 2);
        nondegenerate += usize::from(b.is_nondegenerate());
    }
    assert!(nondegenerate > 0 && nondegenerate < pairs.len());
}

#[test]
fn extension_of_worked_example() {
    let b = example_bialgebra(3).unwrap();
    let zero = extend_bialgebra(&b, &BilinearForm::zero(4)).unwrap();
    assert_eq!((zero.arity(), zero.dim()), (4, 6));
    assert!(validate(&zero).is_empty());
    let forms = invariant_forms(b.mu()).unwrap();
    let nonzero: Vec<_> = forms.iter().filter(|f| !f.matrix().is_zero()).collect();
    assert!(!nonzero.is_empty());
    for f in nonzero {
        let e = extend_bialgebra(&b, f).unwrap();
        assert!(validate(&e).is_empty());
        assert_eq!(e.dim(), 6);
    }
}

#[test]
fn binary_specialization_constants() {
    let mu = simple_an_any(2).unwrap();
    let b = BilinearForm::new(Matrix::from_i64(&[&[-1, 0, 0], &[0, 1, 0], &[0, 0, -1]])).unwrap();
    assert!(check_ad_invariance(&mu, &b).unwrap().is_empty());
    let mut d = Comultiplication::new(2, 3).unwrap();
    d.set(1, &[1, 3], int(2)).unwrap();
    d.set(2, &[2, 3], ratio(-1, 3)).unwrap();
    d.set(3, &[1, 2], int(5)).unwrap();
    let ix = ExtendedIndexing { dim: 3 };
    let s = |i: i64| ix.slot(i).unwrap();
    let e = extend_algebra_metric(&mu, &b).unwrap();
    let ed = nlie_core::extension::extend_delta(&d).unwrap();
    for i1 in 1..=3 {
        for i2 in 1..=3 {
            for i3 in 1..=3 {
                if i1 == i2 || i2 == i3 || i1 == i3 {
                    continue;
                }
                let mut want = Scalar::zero();
                for t in 1..=3 {
                    let c = if i1 < i2 { mu.get(&[i1, i2], t).unwrap() } else { -mu.get(&[i2, i1], t).unwrap() };
                    want += c * b.get(t, i3);
                }
                let (sorted, sign) = common::sort_sign(&[s(i1 as i64), s(i2 as i64), s(i3 as i64)]);
                assert_eq!(e.get(&sorted, s(-1)).unwrap() * int(sign), want);
            }
        }
    }
    for t in 1..=3i64 {
        for j1 in 1..=3i64 {
            for j2 in 1..=3i64 {
                if j1 == j2 {
                    continue;
                }
                let (ju, js) = common::sort_sign(&[j1 as usize, j2 as usize]);
                let a = d.get(t as usize, &ju).unwrap() * int(js);
                let (sorted, sign) = common::sort_sign(&[s(j1), s(j2), s(-1)]);
                assert_eq!(ed.get(s(t), &sorted).unwrap() * int(sign), a);
            }
        }
    }
}

/// Every valid bialgebra this test builds: fixtures, extensions and samples.
fn valid_bialgebras() -> Vec<Bialgebra> {
    let mut out = Vec::new();
    for n in [3, 4] {
        out.push(example_bialgebra(n).unwrap());
        let mu = simple_an(n).unwrap();
        out.push(Bialgebra::new(mu.clone(), Comultiplication::new(n, n + 1).unwrap()).unwrap());
        for label in all_labels(n, &[int(1), int(-2), ratio(1, 3)]) {
            let c = canonical_algebra(n, &label).unwrap();
            out.push(Bialgebra::new(c, Comultiplication::new(n, n + 1).unwrap()).unwrap());
        }
        out.push(Bialgebra::new(StructureConstants::new(n, n + 1).unwrap(), example_coalgebra_top(n).unwrap()).unwrap());
    }
    let ex = example_bialgebra(3).unwrap();
    out.push(extend_bialgebra(&ex, &BilinearForm::zero(4)).unwrap());
    for f in invariant_forms(ex.mu()).unwrap() {
        out.push(extend_bialgebra(&ex, &f).unwrap());
    }
    for trial in 0..80 {
        let mut rng = rng_for(606, trial);
        let d = AnDeltaMatrix::from_b(&sample_skew_rank2(&mut rng, 3));
        out.push(Bialgebra::new(simple_an(3).unwrap(), an_delta_from_matrix(&d)).unwrap());
    }
    // constrained matrices: keep the ones that happen to be coalgebras too
    for trial in 0..20 {
        let mut rng = rng_for(607, trial);
        let d = sample_constrained(&mut rng, 3);
        let b = Bialgebra::new(simple_an(3).unwrap(), an_delta_from_matrix(&d)).unwrap();
        if validate(&b).is_empty() {
            out.push(b);
        }
    }
    out
}

#[test]
fn duality_closure() {
    let all = valid_bialgebras();
    assert!(all.len() >= 100, "{}", all.len());
    for b in &all {
        assert!(validate(b).is_empty());
        let d = dualize(b).unwrap();
        assert!(validate(&d).is_empty());
        assert_eq!(&dualize_unchecked(&d), b);
    }
}

#[test]
fn dual_comultiplication_of_transported_bracket() {
    // (μ, 0) ↦ (0, μ*): dualizing a bracket and comultiplication trade places
    let mut rng = rng_for(608, 0);
    let g = random_invertible(&mut rng, 4);
    let mu = transport(&simple_an(3).unwrap(), &g).unwrap();
    let b = Bialgebra::new(mu.clone(), Comultiplication::new(3, 4).unwrap()).unwrap();
    let d = dualize(&b).unwrap();
    assert!(d.mu().is_zero());
    assert_eq!(d.delta(), &dual_comultiplication(&mu));
}

#[test]
fn dual_variant_against_extension_of_dual() {
    let b = example_bialgebra(3).unwrap();
    let bd = dualize(&b).unwrap();
    for f in invariant_forms(bd.mu()).unwrap() {
        let left = dualize(&extend_bialgebra(&bd, &f).unwrap()).unwrap();
        let right = extend_bialgebra_dual(&b, &f).unwrap();
        assert!(validate(&right).is_empty());
        assert_eq!(left.delta(), right.delta());
        assert_ne!(left.mu(), right.mu());
        // the trivial extension of μ has x_0 active; the dual of the metric extension has x_{−1} active
        let swap = Matrix::permutation(&[2, 1, 3, 4, 5, 6]);
        assert_eq!(&transport(right.mu(), &swap).unwrap(), left.mu());
        // but the exchange does not carry one bialgebra to the other
        assert!(!check_equivalence_map(&swap, &right, &left).unwrap());
    }
}

mod common;

use std::collections::BTreeSet;

use common::{compatibility_oracle, fi_oracle};
use nlie_core::algebra::{check_fundamental_identity, check_rho_module, transport};
use nlie_core::bialgebra::{check_equivalence_map, validate, Bialgebra};
use nlie_core::catalog::{
    all_labels, canonical_algebra, classify, example_bialgebra, example_coalgebra_matrix, example_three_deltas,
    simple_an, CanonicalLabel, Classification,
};
use nlie_core::coalgebra::{check_coalgebra_dual, check_coalgebra_iso, check_coalgebra_tensor, dual_algebra, rank};
use nlie_core::linalg::Matrix;
use nlie_core::random::{random_invertible, rng_for};
use nlie_core::scalar::{int, ratio};
use nlie_core::tensor::increasing_tuples;

#[test]
fn three_deltas_maps() {
    for n in [3, 4] {
        let ex = example_three_deltas(n).unwrap();
        let [d1, d2, d3] = &ex.deltas;
        for d in &ex.deltas {
            assert!(validate(&Bialgebra::new(ex.mu.clone(), d.clone()).unwrap()).is_empty());
        }
        assert!(check_coalgebra_iso(&ex.phi12, d1, d2).unwrap());
        assert!(check_coalgebra_iso(&ex.phi13, d1, d3).unwrap());
        assert!(check_coalgebra_iso(&ex.phi23, d2, d3).unwrap());
        let b = |d: &nlie_core::coalgebra::Comultiplication| Bialgebra::new(ex.mu.clone(), d.clone()).unwrap();
        let mut sigma: Vec<usize> = vec![2, 1, 3];
        sigma.extend(4..=n + 1);
        assert!(check_equivalence_map(&Matrix::permutation(&sigma), &b(d2), &b(d3)).unwrap());
        assert!(!check_equivalence_map(&ex.phi12, &b(d1), &b(d2)).unwrap());
    }
}

#[test]
fn matrix_coalgebra() {
    let two = example_coalgebra_matrix(2).unwrap();
    assert!(check_coalgebra_dual(&two).is_empty());
    assert!(check_coalgebra_tensor(&two).is_empty());
    let three = example_coalgebra_matrix(3).unwrap();
    assert!(!check_coalgebra_dual(&three).is_empty());
    assert!(!check_coalgebra_tensor(&three).is_empty());
}

#[test]
fn classification_survives_conjugation() {
    for n in [3, 4] {
        for label in all_labels(n, &[int(1), int(-2), ratio(1, 3), ratio(-5, 7)]) {
            let mu = canonical_algebra(n, &label).unwrap();
            for trial in 0..50 {
                let mut rng = rng_for(909 + n as u64, trial);
                let g = random_invertible(&mut rng, n + 1);
                let conj = transport(&mu, &g).unwrap();
                assert_eq!(classify(&conj).unwrap(), Classification::Label(label.clone()), "n={n} trial {trial}");
            }
        }
    }
    assert_eq!(
        classify(&simple_an(3).unwrap()).unwrap(),
        classify(&canonical_algebra(3, &CanonicalLabel::D(4)).unwrap()).unwrap()
    );
}

#[test]
fn rho_module_on_fixtures() {
    let mut algebras = vec![simple_an(3).unwrap(), example_bialgebra(3).unwrap().mu().clone()];
    for label in all_labels(3, &[int(1), int(-2), ratio(1, 3)]) {
        algebras.push(canonical_algebra(3, &label).unwrap());
    }
    for mu in &algebras {
        for s in 1..=3 {
            assert!(check_rho_module(mu, s).unwrap().is_empty(), "s={s} {mu}");
        }
    }
}

#[test]
fn perturbed_simple_algebra() {
    let base = simple_an(3).unwrap();
    let mut rejected = 0;
    for t in increasing_tuples(4, 3) {
        for k in 1..=4 {
            let mut mu = base.clone();
            mu.add(&t, k, &int(1)).unwrap();
            let report = check_fundamental_identity(&mu);
            let oracle = fi_oracle(&mu);
            assert_eq!(report.is_empty(), oracle.is_empty(), "{t:?} k={k}");
            let named: BTreeSet<_> = report.violations().iter().map(|v| (v.indices.clone(), v.target)).collect();
            let expected: BTreeSet<_> = oracle.keys().map(|(x, y, k)| (vec![x.clone(), y.clone()], Some(*k))).collect();
            assert_eq!(named, expected);
            rejected += usize::from(!report.is_empty());
        }
    }
    // the four perturbations along the existing entries only rescale a bracket
    assert_eq!(rejected, 12);
}

fn example_perturbations(n: usize) -> (usize, usize) {
    let base = example_bialgebra(n).unwrap();
    let m = n + 1;
    let (mut rejected, mut total) = (0, 0);
    for j in increasing_tuples(m, n) {
        for l in 1..=m {
            let mut d = base.delta().clone();
            d.add(l, &j, &int(1)).unwrap();
            let b = Bialgebra::new(base.mu().clone(), d.clone()).unwrap();
            let report = validate(&b);
            let oracle_bad = !fi_oracle(&dual_algebra(&d)).is_empty() || !compatibility_oracle(&b).is_empty();
            assert_eq!(!report.is_empty(), oracle_bad, "l={l} J={j:?}");
            if oracle_bad {
                assert!(report.violations().iter().all(|v| !v.indices.is_empty()));
            }
            rejected += usize::from(oracle_bad);
            total += 1;
        }
    }
    (rejected, total)
}

#[test]
fn perturbed_worked_example() {
    assert_eq!(example_perturbations(3), (12, 16));
    assert_eq!(example_perturbations(4), (20, 25));
}

#[test]
fn ranks() {
    assert_eq!(rank(example_bialgebra(3).unwrap().delta()), 2);
    assert_eq!(rank(example_bialgebra(4).unwrap().delta()), 2);
}

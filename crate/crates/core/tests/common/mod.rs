#![allow(dead_code)]

use nlie_core::algebra::StructureConstants;
use nlie_core::coalgebra::Comultiplication;
use nlie_core::scalar::Scalar;
use std::collections::{BTreeMap, BTreeSet};

use nlie_core::bialgebra::Bialgebra;
use num_traits::Zero;

/// Sign of the permutation sorting `t`, or 0 on a repeated entry.
pub fn sort_sign(t: &[usize]) -> (Vec<usize>, i64) {
    let mut v = t.to_vec();
    let mut sign = 1;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] == v[j + 1] {
                return (v, 0);
            }
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return (v, 0);
    }
    (v, sign)
}

/// Dense `[e_{t_1}, .., e_{t_n}]` for an arbitrary tuple.
pub fn bracket(mu: &StructureConstants, t: &[usize]) -> Vec<Scalar> {
    let m = mu.dim();
    let (sorted, sign) = sort_sign(t);
    if sign == 0 {
        return vec![Scalar::zero(); m];
    }
    (1..=m)
        .map(|k| mu.get(&sorted, k).unwrap() * Scalar::from_integer(sign.into()))
        .collect()
}

/// Multilinear bracket of dense vectors by expanding every argument.
pub fn bracket_vectors(mu: &StructureConstants, args: &[Vec<Scalar>]) -> Vec<Scalar> {
    let m = mu.dim();
    let support: Vec<Vec<(usize, &Scalar)>> = args
        .iter()
        .map(|a| a.iter().enumerate().filter(|(_, x)| !x.is_zero()).collect())
        .collect();
    let mut out = vec![Scalar::zero(); m];
    if support.iter().any(Vec::is_empty) {
        return out;
    }
    let mut idx = vec![0usize; args.len()];
    loop {
        let coeff = idx
            .iter()
            .zip(&support)
            .fold(Scalar::from_integer(1.into()), |acc, (&i, s)| acc * s[i].1);
        let t: Vec<usize> = idx.iter().zip(&support).map(|(&i, s)| s[i].0 + 1).collect();
        for (o, v) in out.iter_mut().zip(bracket(mu, &t)) {
            *o += &coeff * v;
        }
        let mut p = 0;
        loop {
            if p == idx.len() {
                return out;
            }
            idx[p] += 1;
            if idx[p] < support[p].len() {
                break;
            }
            idx[p] = 0;
            p += 1;
        }
    }
}

pub fn unit(m: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); m];
    v[i - 1] = Scalar::from_integer(1.into());
    v
}

/// Dense `Δ(e_l)` as a map from every `n`-tuple to its coefficient.
pub fn delta_dense(d: &Comultiplication, l: usize) -> Vec<(Vec<usize>, Scalar)> {
    let (n, m) = (d.arity(), d.dim());
    all_tuples(m, n)
        .into_iter()
        .filter_map(|t| {
            let (sorted, sign) = sort_sign(&t);
            if sign == 0 {
                return None;
            }
            let c = d.get(l, &sorted).unwrap() * Scalar::from_integer(sign.into());
            (!c.is_zero()).then_some((t, c))
        })
        .collect()
}

pub fn all_tuples(m: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                (1..=m).map(move |i| {
                    let mut u = t.clone();
                    u.push(i);
                    u
                })
            })
            .collect();
    }
    out
}

pub fn increasing(m: usize, len: usize) -> Vec<Vec<usize>> {
    all_tuples(m, len)
        .into_iter()
        .filter(|t| t.windows(2).all(|w| w[0] < w[1]))
        .collect()
}

/// `[x, [y]] − Σ_s [y_1, .., [x, y_s], .., y_n]` on basis tuples, by multilinear expansion.
pub fn fi_oracle(mu: &StructureConstants) -> BTreeMap<(Vec<usize>, Vec<usize>, usize), Scalar> {
    let (n, m) = (mu.arity(), mu.dim());
    let mut out = BTreeMap::new();
    for x in increasing(m, n - 1) {
        let xs: Vec<Vec<Scalar>> = x.iter().map(|&i| unit(m, i)).collect();
        for y in increasing(m, n) {
            let ys: Vec<Vec<Scalar>> = y.iter().map(|&i| unit(m, i)).collect();
            let mut args = xs.clone();
            args.push(bracket_vectors(mu, &ys));
            let mut r = bracket_vectors(mu, &args);
            for s in 0..n {
                let mut inner = xs.clone();
                inner.push(ys[s].clone());
                let mut outer = ys.clone();
                outer[s] = bracket_vectors(mu, &inner);
                for (a, b) in r.iter_mut().zip(bracket_vectors(mu, &outer)) {
                    *a -= b;
                }
            }
            for (k, v) in r.into_iter().enumerate() {
                if !v.is_zero() {
                    out.insert((x.clone(), y.clone(), k + 1), v);
                }
            }
        }
    }
    out
}

/// Residual of `Δ[x_I] − Σ_k (−1)^{n−k} Σ_s ad_s(x_{I∖i_k}) Δ(x_{i_k})` from dense data.
pub fn compatibility_oracle(b: &Bialgebra) -> BTreeSet<Vec<usize>> {
    let (n, m) = (b.arity(), b.dim());
    let deltas: Vec<Vec<(Vec<usize>, Scalar)>> = (1..=m).map(|l| delta_dense(b.delta(), l)).collect();
    let mut bad = BTreeSet::new();
    for i in increasing(m, n) {
        let mut acc: BTreeMap<Vec<usize>, Scalar> = BTreeMap::new();
        let top = bracket(b.mu(), &i);
        for (l, c) in top.iter().enumerate() {
            for (t, d) in &deltas[l] {
                *acc.entry(t.clone()).or_insert_with(Scalar::zero) += c * d;
            }
        }
        for k in 0..n {
            let rest: Vec<usize> = i.iter().enumerate().filter(|&(q, _)| q != k).map(|(_, &a)| a).collect();
            let sign = if (n - k - 1) % 2 == 0 { Scalar::from_integer(1.into()) } else { Scalar::from_integer((-1).into()) };
            for (t, d) in &deltas[i[k] - 1] {
                for s in 0..n {
                    let mut args = rest.clone();
                    args.push(t[s]);
                    for (r, v) in bracket(b.mu(), &args).into_iter().enumerate() {
                        if v.is_zero() {
                            continue;
                        }
                        let mut u = t.clone();
                        u[s] = r + 1;
                        *acc.entry(u).or_insert_with(Scalar::zero) -= &sign * d * v;
                    }
                }
            }
        }
        if acc.values().any(|v| !v.is_zero()) {
            bad.insert(i);
        }
    }
    bad
}

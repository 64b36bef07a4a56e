//! Independent oracles and random data shared by the integration tests.
#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use whitney_core::{Modulus, WhitneyField};

/// `max c·x` over the bounded polytope `{x : A x <= b}` by enumerating
/// every vertex (intersection of `dim` active rows). `None` if no vertex is
/// feasible.
pub fn vertex_max(c: &[f64], rows: &[(Vec<f64>, f64)]) -> Option<(f64, Vec<f64>)> {
    let d = c.len();
    let mut best: Option<(f64, Vec<f64>)> = None;
    let mut idx: Vec<usize> = (0..d).collect();
    if rows.len() < d {
        return None;
    }
    loop {
        let a: Vec<Vec<f64>> = idx.iter().map(|&i| rows[i].0.clone()).collect();
        let b: Vec<f64> = idx.iter().map(|&i| rows[i].1).collect();
        if let Some(x) = solve_dense(a, b) {
            let feasible = rows.iter().all(|(r, rhs)| dot(r, &x) <= rhs + 1e-9 * (1.0 + rhs.abs()));
            if feasible {
                let v = dot(c, &x);
                if best.as_ref().is_none_or(|(bv, _)| v > *bv) {
                    best = Some((v, x));
                }
            }
        }
        // next combination
        let mut i = d;
        loop {
            if i == 0 {
                return best;
            }
            i -= 1;
            if idx[i] < rows.len() - d + i {
                idx[i] += 1;
                for j in i + 1..d {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Gaussian elimination with partial pivoting; `None` when singular.
pub fn solve_dense(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let p = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[p][col].abs() < 1e-12 {
            return None;
        }
        a.swap(col, p);
        b.swap(col, p);
        for r in col + 1..n {
            let f = a[r][col] / a[col][col];
            let (top, bottom) = a.split_at_mut(r);
            for (x, y) in bottom[0][col..].iter_mut().zip(&top[col][col..]) {
                *x -= f * y;
            }
            b[r] -= f * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for r in (0..n).rev() {
        let s: f64 = (r + 1..n).map(|c| a[r][c] * x[c]).sum();
        x[r] = (b[r] - s) / a[r][r];
    }
    Some(x)
}

/// Fornberg's weights for the `m`-th derivative at `x0` on the given nodes.
pub fn fornberg(m: usize, x0: f64, nodes: &[f64]) -> Vec<f64> {
    let n = nodes.len();
    let mut c = vec![vec![vec![0.0; n]; n]; m + 1];
    c[0][0][0] = 1.0;
    let mut c1 = 1.0;
    let mut c4 = nodes[0] - x0;
    for i in 1..n {
        let mn = i.min(m);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = nodes[i] - x0;
        for j in 0..i {
            let c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[k][i][i] = c1 * (k as f64 * c[k - 1][i - 1][i - 1] - c5 * c[k][i - 1][i - 1]) / c2;
                }
                c[0][i][i] = -c1 * c5 * c[0][i - 1][i - 1] / c2;
            }
            for k in (1..=mn).rev() {
                c[k][i][j] = (c4 * c[k][i - 1][j] - k as f64 * c[k - 1][i - 1][j]) / c3;
            }
            c[0][i][j] = c4 * c[0][i - 1][j] / c3;
        }
        c1 = c2;
    }
    (0..n).map(|j| c[m][n - 1][j]).collect()
}

/// Mixed partial `∂^α g(x)` by a tensor product of centred 9-point stencils.
pub fn fd_partial<G: Fn(&[f64]) -> f64>(g: G, x: &[f64], alpha: &[u32], h: f64) -> f64 {
    let offsets: Vec<f64> = (-4..=4).map(|i| i as f64).collect();
    let weights: Vec<Vec<f64>> = alpha.iter().map(|&a| fornberg(a as usize, 0.0, &offsets)).collect();
    let n = x.len();
    let mut total = 0.0;
    let mut idx = vec![0usize; n];
    loop {
        let mut w = 1.0;
        let mut y = x.to_vec();
        for i in 0..n {
            if alpha[i] == 0 {
                if idx[i] != 4 {
                    w = 0.0;
                }
            } else {
                w *= weights[i][idx[i]] / h.powi(alpha[i] as i32);
            }
            y[i] += offsets[idx[i]] * h;
        }
        if w != 0.0 {
            total += w * g(&y);
        }
        let mut d = 0;
        loop {
            if d == n {
                return total;
            }
            idx[d] += 1;
            if idx[d] < 9 {
                break;
            }
            idx[d] = 0;
            d += 1;
        }
    }
}

pub fn random_point(rng: &mut ChaCha8Rng, n: usize, half: f64) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(-half..half)).collect()
}

/// `m` points in `[-1, 1]^n`, pairwise at distance at least `1e-3`.
pub fn random_points(rng: &mut ChaCha8Rng, n: usize, m: usize) -> Vec<Vec<f64>> {
    let mut pts: Vec<Vec<f64>> = Vec::with_capacity(m);
    while pts.len() < m {
        let p = random_point(rng, n, 1.0);
        if pts.iter().all(|q| euclid(q, &p) > 1e-3) {
            pts.push(p);
        }
    }
    pts
}

pub fn euclid(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

/// Linear or `t^{1/2}`, as in the `k = 0` experiments.
pub fn random_k0_modulus(rng: &mut ChaCha8Rng) -> Modulus {
    if rng.gen_bool(0.5) {
        Modulus::Linear
    } else {
        Modulus::power(0.5).unwrap()
    }
}

pub fn random_modulus(rng: &mut ChaCha8Rng) -> Modulus {
    match rng.gen_range(0..3) {
        0 => Modulus::Linear,
        1 => Modulus::power(rng.gen_range(0.2..1.0)).unwrap(),
        _ => Modulus::capped(rng.gen_range(0.3..1.0), rng.gen_range(0.5..3.0)).unwrap(),
    }
}

/// Random `k = 0` data set: up to `max_points` points, values in `[-1, 1]`.
pub fn random_k0_field(rng: &mut ChaCha8Rng, n: usize, max_points: usize) -> WhitneyField {
    let m = rng.gen_range(1..=max_points);
    let pts = random_points(rng, n, m);
    let vals = (0..m).map(|_| vec![rng.gen_range(-1.0..1.0)]).collect();
    WhitneyField::new(n, 0, pts, vals).unwrap()
}

/// Random jets of order `k` on the given points.
pub fn random_field(rng: &mut ChaCha8Rng, n: usize, k: usize, pts: Vec<Vec<f64>>) -> WhitneyField {
    let len = whitney_core::MultiIndexSet::new(n, k).len();
    let coeffs = pts.iter().map(|_| (0..len).map(|_| rng.gen_range(-1.0..1.0)).collect()).collect();
    WhitneyField::new(n, k, pts, coeffs).unwrap()
}

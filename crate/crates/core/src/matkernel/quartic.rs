use crate::error::{Error, Result};

const LEADING_TOL: f64 = 1e-14;
/// |p(r)| <= RESIDUAL_TOL * max(1, |r|^4) for every accepted root.
pub const RESIDUAL_TOL: f64 = 1e-8;
// Eigenvalues further than this from the real axis are complex roots, whatever their residual.
const IMAG_TOL: f64 = 1e-3;
const MAX_QR_ITERATIONS: usize = 60;

/// Real roots of c4 t^4 + c3 t^3 + c2 t^2 + c1 t + c0, ascending, with multiplicity.
///
/// Roots are the eigenvalues of the companion matrix (Francis double-shift QR),
/// Newton-polished and kept only when they pass the residual bound.
pub fn real_quartic_roots(c4: f64, c3: f64, c2: f64, c1: f64, c0: f64) -> Result<Vec<f64>> {
    // written so that NaN fails too
    if c4.abs().partial_cmp(&LEADING_TOL).is_none_or(|o| o.is_lt()) {
        return Err(Error::DegenerateLeadingCoefficient(c4));
    }
    let coeffs = [c4, c3, c2, c1, c0];
    if coeffs.iter().any(|c| !c.is_finite()) {
        return Err(Error::NumericalBreakdown("non-finite quartic coefficient".into()));
    }
    // monic: t^4 + a3 t^3 + a2 t^2 + a1 t + a0
    let a = [c3 / c4, c2 / c4, c1 / c4, c0 / c4];
    let companion = [
        [-a[0], -a[1], -a[2], -a[3]],
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [0.0, 0.0, 1.0, 0.0],
    ];
    let eigenvalues = hessenberg_eigenvalues(companion)?;

    let mut roots = Vec::new();
    for (re, im) in eigenvalues {
        if im.abs() > IMAG_TOL * re.abs().max(1.0) {
            continue;
        }
        let r = polish(&coeffs, re);
        if eval(&coeffs, r).abs() <= RESIDUAL_TOL * r.abs().powi(4).max(1.0) {
            roots.push(r);
        }
    }
    roots.sort_by(f64::total_cmp);
    Ok(roots)
}

fn eval(c: &[f64; 5], t: f64) -> f64 {
    c.iter().fold(0.0, |acc, &k| acc * t + k)
}

fn eval_derivative(c: &[f64; 5], t: f64) -> f64 {
    4.0 * c[0] * t.powi(3) + 3.0 * c[1] * t * t + 2.0 * c[2] * t + c[3]
}

/// A few Newton steps, each kept only if it lowers the residual.
fn polish(c: &[f64; 5], mut t: f64) -> f64 {
    let mut residual = eval(c, t).abs();
    for _ in 0..8 {
        let d = eval_derivative(c, t);
        if d == 0.0 || residual == 0.0 {
            break;
        }
        let next = t - eval(c, t) / d;
        let next_residual = eval(c, next).abs();
        if next_residual.partial_cmp(&residual) != Some(std::cmp::Ordering::Less) {
            break;
        }
        t = next;
        residual = next_residual;
    }
    t
}

/// Eigenvalues (re, im) of a 4x4 upper Hessenberg matrix.
fn hessenberg_eigenvalues(mut h: [[f64; 4]; 4]) -> Result<Vec<(f64, f64)>> {
    let mut out = Vec::with_capacity(4);
    let mut hi = 3_isize;
    let mut iterations = 0;
    while hi >= 0 {
        let m = hi as usize;
        // find the start of the unreduced block ending at m
        let mut l = m;
        while l > 0 {
            let s = h[l - 1][l - 1].abs() + h[l][l].abs();
            let s = if s == 0.0 { 1.0 } else { s };
            if h[l][l - 1].abs() <= f64::EPSILON * s {
                h[l][l - 1] = 0.0;
                break;
            }
            l -= 1;
        }
        if l == m {
            out.push((h[m][m], 0.0));
            hi -= 1;
            iterations = 0;
            continue;
        }
        if l + 1 == m {
            out.extend(block_eigenvalues(h[m - 1][m - 1], h[m - 1][m], h[m][m - 1], h[m][m]));
            hi -= 2;
            iterations = 0;
            continue;
        }
        if iterations == MAX_QR_ITERATIONS {
            return Err(Error::NumericalBreakdown("companion QR did not converge".into()));
        }
        iterations += 1;
        francis_step(&mut h, l, m, iterations);
    }
    Ok(out)
}

fn block_eigenvalues(a: f64, b: f64, c: f64, d: f64) -> [(f64, f64); 2] {
    let half_trace = 0.5 * (a + d);
    let half_gap = 0.5 * (a - d);
    let disc = half_gap * half_gap + b * c;
    if disc >= 0.0 {
        let root = disc.sqrt();
        // avoid cancellation in the smaller-magnitude eigenvalue
        let big = half_trace + root.copysign(half_trace);
        let det = a * d - b * c;
        let small = if big != 0.0 { det / big } else { half_trace - root };
        [(big, 0.0), (small, 0.0)]
    } else {
        let root = (-disc).sqrt();
        [(half_trace, root), (half_trace, -root)]
    }
}

/// One implicit double-shift QR sweep on the active window h[l..=m][l..=m].
#[allow(clippy::needless_range_loop)] // row and column sweeps read as in the textbook
fn francis_step(h: &mut [[f64; 4]; 4], l: usize, m: usize, iteration: usize) {
    let (s, t) = if iteration.is_multiple_of(10) {
        // exceptional shift to break cycles
        let w = h[m][m - 1].abs() + h[m - 1][m - 2].abs();
        let diag = h[m][m] + 0.75 * w;
        (2.0 * diag, diag * diag - 0.4375 * w * w)
    } else {
        (
            h[m - 1][m - 1] + h[m][m],
            h[m - 1][m - 1] * h[m][m] - h[m - 1][m] * h[m][m - 1],
        )
    };
    let mut x = h[l][l] * h[l][l] + h[l][l + 1] * h[l + 1][l] - s * h[l][l] + t;
    let mut y = h[l + 1][l] * (h[l][l] + h[l + 1][l + 1] - s);
    let mut z = h[l + 1][l] * h[l + 2][l + 1];

    for k in l..m - 1 {
        if let Some((v, beta)) = householder(&[x, y, z]) {
            let first_col = if k > l { k - 1 } else { l };
            for j in first_col..=m {
                let dot = v[0] * h[k][j] + v[1] * h[k + 1][j] + v[2] * h[k + 2][j];
                for r in 0..3 {
                    h[k + r][j] -= beta * v[r] * dot;
                }
            }
            let last_row = (k + 3).min(m);
            for i in l..=last_row {
                let dot = h[i][k] * v[0] + h[i][k + 1] * v[1] + h[i][k + 2] * v[2];
                for r in 0..3 {
                    h[i][k + r] -= beta * dot * v[r];
                }
            }
        }
        x = h[k + 1][k];
        y = h[k + 2][k];
        if k + 3 <= m {
            z = h[k + 3][k];
        }
    }
    if let Some((v, beta)) = householder(&[x, y]) {
        for j in (m - 2)..=m {
            let dot = v[0] * h[m - 1][j] + v[1] * h[m][j];
            h[m - 1][j] -= beta * v[0] * dot;
            h[m][j] -= beta * v[1] * dot;
        }
        for i in l..=m {
            let dot = h[i][m - 1] * v[0] + h[i][m] * v[1];
            h[i][m - 1] -= beta * dot * v[0];
            h[i][m] -= beta * dot * v[1];
        }
    }
}

/// Householder vector v and beta with (I - beta v v^T) x = -+|x| e1.
fn householder<const N: usize>(x: &[f64; N]) -> Option<([f64; N], f64)> {
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm == 0.0 {
        return None;
    }
    let mut v = *x;
    v[0] += norm.copysign(x[0]);
    let vv: f64 = v.iter().map(|a| a * a).sum();
    if vv == 0.0 {
        return None;
    }
    Some((v, 2.0 / vv))
}

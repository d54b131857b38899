//! Gauss–Hermite and generalized Gauss–Laguerre rules via Golub–Welsch:
//! eigenvalues of the Jacobi matrix give the nodes, squared first eigenvector
//! components scaled by the zeroth moment give the weights. The symmetric
//! tridiagonal eigenproblem is solved with the implicit-shift QL iteration,
//! tracking only the first row of the eigenvector matrix.

/// Nodes and weights of an n-point rule.
#[derive(Clone, Debug)]
pub struct GaussRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussRule {
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }
}

fn hypot(a: f64, b: f64) -> f64 {
    a.hypot(b)
}

/// Implicit-shift QL on a symmetric tridiagonal matrix. `d` holds the
/// diagonal (becomes the eigenvalues), `e` the subdiagonal in `e[0..n-1]`,
/// `z` a row vector rotated along (initialize to `e_0` for first components).
fn tridiagonal_ql(d: &mut [f64], e: &mut [f64], z: &mut [f64]) {
    let n = d.len();
    if n <= 1 {
        return;
    }
    // shift the subdiagonal for the classic indexing, e[i] couples i and i+1
    for l in 0..n {
        let mut iterations = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iterations += 1;
            assert!(iterations <= 50, "QL iteration failed to converge");
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = hypot(g, 1.0);
            let sign_r = if g >= 0.0 { r.abs() } else { -r.abs() };
            g = d[m] - d[l] + e[l] / (g + sign_r);
            let (mut s, mut c) = (1.0f64, 1.0f64);
            let mut p = 0.0f64;
            let mut i = m;
            while i > l {
                i -= 1;
                let mut f = s * e[i];
                let b = c * e[i];
                r = hypot(f, g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                f = z[i + 1];
                z[i + 1] = s * z[i] + c * f;
                z[i] = c * z[i] - s * f;
            }
            if r == 0.0 && i > l {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
}

fn golub_welsch(mut diag: Vec<f64>, mut sub: Vec<f64>, moment0: f64) -> GaussRule {
    let n = diag.len();
    let mut z = vec![0.0; n];
    z[0] = 1.0;
    sub.push(0.0);
    tridiagonal_ql(&mut diag, &mut sub, &mut z);
    let mut pairs: Vec<(f64, f64)> = diag
        .into_iter()
        .zip(z)
        .map(|(x, z0)| (x, moment0 * z0 * z0))
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    GaussRule {
        nodes: pairs.iter().map(|p| p.0).collect(),
        weights: pairs.iter().map(|p| p.1).collect(),
    }
}

/// n-point Gauss–Hermite rule for `∫ f(z) e^{−z²} dz` over the real line.
pub fn gauss_hermite(n: usize) -> GaussRule {
    assert!(n >= 1);
    let diag = vec![0.0; n];
    let sub: Vec<f64> = (1..n).map(|i| (i as f64 / 2.0).sqrt()).collect();
    golub_welsch(diag, sub, std::f64::consts::PI.sqrt())
}

/// n-point generalized Gauss–Laguerre rule for `∫₀^∞ f(x) x^α e^{−x} dx`.
pub fn gauss_laguerre(n: usize, alpha: f64) -> GaussRule {
    assert!(n >= 1 && alpha > -1.0);
    let diag: Vec<f64> = (0..n).map(|i| 2.0 * i as f64 + alpha + 1.0).collect();
    let sub: Vec<f64> = (1..n).map(|i| (i as f64 * (i as f64 + alpha)).sqrt()).collect();
    golub_welsch(diag, sub, super::ln_gamma(alpha + 1.0).exp())
}

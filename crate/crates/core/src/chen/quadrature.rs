//! Spectral integration on one panel.
//!
//! Values at Chebyshev–Lobatto nodes determine an interpolating polynomial;
//! the integration matrix maps them to the values of its running integral
//! at the same nodes.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;

/// Polynomial degree of the panel interpolant.
pub const ORDER: usize = 16;
pub const NODES: usize = ORDER + 1;

pub struct Panel {
    /// Nodes on `[-1, 1]`, ascending.
    pub nodes: [f64; NODES],
    /// `cumulative[i][j]`: weight of `f(x_j)` in `∫_{-1}^{x_i} f`.
    pub cumulative: [[f64; NODES]; NODES],
}

fn chebyshev_coefficients(values: &[f64; NODES]) -> [f64; NODES] {
    // values sampled at x_j = cos(πj/N) (descending)
    let n = ORDER;
    let mut a = [0.0; NODES];
    for (k, ak) in a.iter_mut().enumerate() {
        let mut s = 0.0;
        for (j, v) in values.iter().enumerate() {
            let w = if j == 0 || j == n { 0.5 } else { 1.0 };
            s += w * v * (PI * (j * k) as f64 / n as f64).cos();
        }
        *ak = 2.0 * s / n as f64;
    }
    a[0] *= 0.5;
    a[n] *= 0.5;
    a
}

fn chebyshev_eval(c: &[f64], x: f64) -> f64 {
    // Clenshaw
    let (mut b1, mut b2) = (0.0, 0.0);
    for &ck in c.iter().skip(1).rev() {
        let b0 = 2.0 * x * b1 - b2 + ck;
        b2 = b1;
        b1 = b0;
    }
    x * b1 - b2 + c[0]
}

fn build() -> Panel {
    let n = ORDER;
    let desc: Vec<f64> = (0..=n).map(|j| (PI * j as f64 / n as f64).cos()).collect();
    let mut nodes = [0.0; NODES];
    for i in 0..NODES {
        nodes[i] = desc[n - i];
    }
    nodes[0] = -1.0;
    nodes[n] = 1.0;
    let mut cumulative = [[0.0; NODES]; NODES];
    for j in 0..NODES {
        // unit value at ascending node j, i.e. descending position n − j
        let mut values = [0.0; NODES];
        values[n - j] = 1.0;
        let a = chebyshev_coefficients(&values);
        // antiderivative coefficients
        let mut b = [0.0; NODES + 1];
        for k in 0..NODES {
            match k {
                0 => b[1] += a[0],
                1 => {
                    b[2] += a[1] / 4.0;
                    b[0] += a[1] / 4.0;
                }
                _ => {
                    b[k + 1] += a[k] / (2.0 * (k + 1) as f64);
                    b[k - 1] -= a[k] / (2.0 * (k - 1) as f64);
                }
            }
        }
        let at_minus_one = chebyshev_eval(&b, -1.0);
        for i in 0..NODES {
            cumulative[i][j] = chebyshev_eval(&b, nodes[i]) - at_minus_one;
        }
    }
    Panel { nodes, cumulative }
}

pub fn panel() -> &'static Panel {
    static PANEL: OnceLock<Panel> = OnceLock::new();
    PANEL.get_or_init(build)
}

impl Panel {
    /// Node positions mapped to `[a, b]`.
    pub fn mapped(&self, a: f64, b: f64) -> [f64; NODES] {
        let (mid, half) = ((a + b) / 2.0, (b - a) / 2.0);
        let mut out = [0.0; NODES];
        for (o, x) in out.iter_mut().zip(&self.nodes) {
            *o = mid + half * x;
        }
        out
    }

    /// Running integral `∫_a^{t_i} f` on `[a, b]` for complex node values.
    pub fn running(&self, f: &[Complex64; NODES], half_width: f64, out: &mut [Complex64; NODES]) {
        for (i, o) in out.iter_mut().enumerate() {
            let row = &self.cumulative[i];
            let mut s = Complex64::new(0.0, 0.0);
            for (w, v) in row.iter().zip(f) {
                s += v * *w;
            }
            *o = s * half_width;
        }
    }
}

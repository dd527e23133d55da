//! Classical polylogarithms, the Rogers and Bloch–Wigner dilogarithms, and
//! drivers for their functional equations.

use std::f64::consts::PI;
use std::io::Write;
use std::sync::OnceLock;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::chen::path::{Matrix, PathSpec};
use crate::chen::{homotopy_test, iterate_element, iterate_word_from, HomotopyReport, OneForm, QuadOptions};
use crate::configuration::{cross_ratio, Configuration};
use crate::error::{Error, Result};
use crate::grass::build_in;
use crate::tensor::{MultSymbol, MultTensor};

/// Offset from 0 at which iterated-integral paths for `Li_n` begin.
pub const LI_START: f64 = 1e-6;

/// A value together with the path it was computed along.
#[derive(Clone, Debug, PartialEq)]
pub struct BranchedValue {
    pub value: Complex64,
    pub error: f64,
    pub path: PathSpec,
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Truncated series `Σ z^k / k^n`, for `|z| < 1`.
pub fn li_series(n: u32, z: Complex64) -> Result<Complex64> {
    if z.norm() >= 1.0 {
        return Err(Error::Singular(format!("series for Li_{n} needs |z| < 1, got {z}")));
    }
    let mut sum = c(0.0, 0.0);
    let mut pow = z;
    for k in 1..100_000u32 {
        let term = pow / (k as f64).powi(n as i32);
        sum += term;
        if term.norm() < 1e-18 * sum.norm().max(1e-300) {
            break;
        }
        pow *= z;
    }
    Ok(sum)
}

/// `B_k / (k+1)!` for the dilogarithm series in `−log(1−z)`.
fn bernoulli_weights() -> &'static [f64] {
    static W: OnceLock<Vec<f64>> = OnceLock::new();
    W.get_or_init(|| {
        const N: usize = 40;
        let fact: Vec<f64> = (0..=N + 1).scan(1.0, |f, k| {
            if k > 0 {
                *f *= k as f64;
            }
            Some(*f)
        }).collect();
        // a_k = B_k / k!, from Σ_{k≤n} a_k / (n+1−k)! = 0
        let mut a = vec![1.0];
        for n in 1..=N {
            let s: f64 = (0..n).map(|k| a[k] / fact[n + 1 - k]).sum();
            a.push(-s);
        }
        a.iter().enumerate().map(|(k, ak)| ak / (k + 1) as f64).collect()
    })
}

/// Principal branch of `Li₂`, cut along `[1, ∞)`.
pub fn li2(z: Complex64) -> Result<Complex64> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::Singular(format!("Li_2 at {z}")));
    }
    if (z - 1.0).norm() == 0.0 {
        return Ok(c(PI * PI / 6.0, 0.0));
    }
    if z.norm() > 1.0 {
        let lm = (-z).ln();
        return Ok(-li2(z.inv())? - PI * PI / 6.0 - 0.5 * lm * lm);
    }
    if z.re > 0.5 {
        return Ok(-li2(1.0 - z)? + PI * PI / 6.0 - z.ln() * (1.0 - z).ln());
    }
    let u = -(1.0 - z).ln();
    let mut sum = c(0.0, 0.0);
    let mut pow = u;
    for (k, w) in bernoulli_weights().iter().enumerate() {
        if k > 1 && k % 2 == 1 {
            pow *= u;
            continue;
        }
        sum += pow * *w;
        pow *= u;
    }
    Ok(sum)
}

/// Start of the `Li_n` path: distance `LI_START` from 0 in the direction of `z`.
fn li_start(z: Complex64) -> Complex64 {
    if z.norm() == 0.0 {
        c(LI_START, 0.0)
    } else {
        z / z.norm() * LI_START
    }
}

fn li_path(z: Complex64) -> Result<PathSpec> {
    let a = li_start(z);
    PathSpec::line(&[vec![a], vec![1.0 - a]], &[vec![z], vec![1.0 - z]])
}

fn li_word(n: u32) -> Vec<OneForm> {
    let t = MultSymbol::bracket(&[1]).expect("label");
    let one_minus_t = MultSymbol::bracket(&[2]).expect("label");
    let mut word = vec![vec![(one_minus_t, -1)]];
    word.extend((1..n).map(|_| vec![(t.clone(), 1)]));
    word
}

/// `Li_n` along a path of configurations `[t], [1−t]` starting at distance
/// `10⁻⁶` from 0, with the initial prefixes taken from the series.
pub fn li_n_along(n: u32, path: &PathSpec, opts: &QuadOptions) -> Result<BranchedValue> {
    if n == 0 {
        return Err(Error::Contract("Li_n needs n >= 1".into()));
    }
    let start = path.start();
    if path.dim() != 1 || path.count() != 2 || (start[0][0].norm() - LI_START).abs() > 1e-15 || (start[0][0] + start[1][0] - 1.0).norm() > 1e-15 {
        return Err(Error::Path(format!("Li_n paths run through [t], [1-t] from |t| = {LI_START}")));
    }
    let initial = (1..=n).map(|k| li_series(k, start[0][0])).collect::<Result<Vec<_>>>()?;
    let r = iterate_word_from(&li_word(n), path, opts, Some(&initial))?;
    Ok(BranchedValue { value: r.value, error: r.error, path: path.clone() })
}

/// `Li_n(z)` along the straight path from the origin.
pub fn li_n(n: u32, z: Complex64, opts: &QuadOptions) -> Result<BranchedValue> {
    if z.norm() == 0.0 {
        let path = li_path(z)?;
        let path = PathSpec::line(&path.start(), &path.start())?;
        return Ok(BranchedValue { value: c(0.0, 0.0), error: 0.0, path });
    }
    li_n_along(n, &li_path(z)?, opts)
}

/// Rogers dilogarithm normalized so that `L(−1) = L(1/2) = L(2) = 0`.
pub fn rogers_l2(x: f64) -> Result<f64> {
    if !x.is_finite() || x == 0.0 || x == 1.0 {
        return Err(Error::Singular(format!("Rogers dilogarithm at {x}")));
    }
    let g = li2(c(x, 0.0))?.re + 0.5 * x.abs().ln() * (1.0 - x).abs().ln();
    let shift = if x < 0.0 {
        PI * PI / 12.0
    } else if x < 1.0 {
        -PI * PI / 12.0
    } else {
        -PI * PI / 4.0
    };
    Ok(g + shift)
}

/// `Li₂(x) + ½ log(1−x) log x` on `(0, 1)`.
pub fn rogers_l2_closed_form(x: f64) -> Result<f64> {
    if !(x > 0.0 && x < 1.0) {
        return Err(Error::Singular(format!("the closed form is stated on (0,1), got {x}")));
    }
    Ok(li2(c(x, 0.0))?.re + 0.5 * (1.0 - x).ln() * x.ln())
}

/// Right side of the defining differential equation.
pub fn rogers_l2_derivative(x: f64) -> Result<f64> {
    if !x.is_finite() || x == 0.0 || x == 1.0 {
        return Err(Error::Singular(format!("Rogers derivative at {x}")));
    }
    Ok(0.5 * (-(1.0 - x).abs().ln() / x + x.abs().ln() / (x - 1.0)))
}

/// Bloch–Wigner function `Im Li₂(z) + arg(1−z) log|z|`.
pub fn bloch_wigner(z: Complex64) -> Result<f64> {
    if z.norm() == 0.0 || (z - 1.0).norm() == 0.0 {
        return Err(Error::Singular(format!("Bloch-Wigner at {z}")));
    }
    if z.im == 0.0 {
        return Ok(0.0);
    }
    Ok(li2(z)?.im + (1.0 - z).arg() * z.norm().ln())
}

fn det2(a: [Complex64; 2], b: [Complex64; 2]) -> Complex64 {
    a[0] * b[1] - a[1] * b[0]
}

/// `Δ₁₃Δ₂₄ / (Δ₂₃Δ₁₄)` for four vectors in `C²`.
pub fn cross_ratio_c(v: [[Complex64; 2]; 4]) -> Result<Complex64> {
    let den = det2(v[1], v[2]) * det2(v[0], v[3]);
    if den.norm() == 0.0 {
        return Err(Error::DegenerateCrossRatio);
    }
    Ok(det2(v[0], v[2]) * det2(v[1], v[3]) / den)
}

fn omit<T: Copy>(v: &[T; 5], k: usize) -> [T; 4] {
    let mut out = [v[0]; 4];
    let mut j = 0;
    for (i, x) in v.iter().enumerate() {
        if i != k {
            out[j] = *x;
            j += 1;
        }
    }
    out
}

/// `Σₖ (−1)ᵏ D(r(l₀, …, l̂ₖ, …, l₄))`.
pub fn bloch_wigner_five_term(v: [[Complex64; 2]; 5]) -> Result<f64> {
    (0..5).try_fold(0.0, |acc, k| {
        let d = bloch_wigner(cross_ratio_c(omit(&v, k))?)?;
        Ok(if k % 2 == 0 { acc + d } else { acc - d })
    })
}

/// Rogers value of the cross-ratio of four points of `P¹(R)` given as vectors.
pub fn l2g(v: [[f64; 2]; 4]) -> Result<f64> {
    let cv = v.map(|p| [c(p[0], 0.0), c(p[1], 0.0)]);
    rogers_l2(cross_ratio_c(cv)?.re)
}

/// As [`l2g`] with exact inputs: the cross-ratio is formed exactly first.
pub fn l2g_exact(config: &Configuration) -> Result<f64> {
    if config.dim() != 2 || config.len() != 4 {
        return Err(Error::Contract("l2g takes four vectors in dimension 2".into()));
    }
    let pts: Vec<&[crate::exact::ExactScalar]> = (1..=4).map(|i| config.vector(i)).collect::<Result<_>>()?;
    let r = cross_ratio([pts[0], pts[1], pts[2], pts[3]])?;
    if !r.is_real() {
        return Err(Error::Contract("l2g needs a real configuration".into()));
    }
    rogers_l2(r.to_complex().re)
}

/// `ε = ½ ∏_{i<j} sgn Δ(lᵢ, lⱼ)`.
pub fn epsilon(v: &[[f64; 2]; 5]) -> f64 {
    let mut s = 0.5;
    for i in 0..5 {
        for j in i + 1..5 {
            s *= (v[i][0] * v[j][1] - v[i][1] * v[j][0]).signum();
        }
    }
    s
}

/// `(Σₖ (−1)ᵏ L₂(r(omit k)), ε)` for five vectors in `R²`; the sum equals
/// `−ε π²/6`.
pub fn rogers_five_term(v: [[f64; 2]; 5]) -> Result<(f64, f64)> {
    let sum = (0..5).try_fold(0.0, |acc, k| {
        let l = l2g(omit(&v, k))?;
        Ok::<f64, Error>(if k % 2 == 0 { acc + l } else { acc - l })
    })?;
    Ok((sum, epsilon(&v)))
}

/// Random vectors in `R²` with all brackets bounded away from zero.
pub fn random_real_five(rng: &mut impl Rng) -> [[f64; 2]; 5] {
    loop {
        let v: [[f64; 2]; 5] = std::array::from_fn(|_| [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)]);
        if min_bracket(&v) > 0.05 {
            return v;
        }
    }
}

fn min_bracket(v: &[[f64; 2]; 5]) -> f64 {
    let mut m = f64::INFINITY;
    for i in 0..5 {
        for j in i + 1..5 {
            m = m.min((v[i][0] * v[j][1] - v[i][1] * v[j][0]).abs());
        }
    }
    m
}

/// Variation of the five-term sum of [`l2g`] along a seeded straight-line
/// family `v + s·w`, `s ∈ [0, 1]`, sampled at `steps + 1` points. The family
/// is chosen so that no bracket changes sign along it.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FamilyReport {
    pub values: Vec<f64>,
    pub variation: f64,
    pub epsilon: f64,
}

pub fn l2g_family(seed: u64, steps: usize) -> Result<FamilyReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..1000 {
        let v = random_real_five(&mut rng);
        let w: [[f64; 2]; 5] = std::array::from_fn(|_| [rng.gen_range(-0.2..0.2), rng.gen_range(-0.2..0.2)]);
        let at = |s: f64| -> [[f64; 2]; 5] { std::array::from_fn(|i| [v[i][0] + s * w[i][0], v[i][1] + s * w[i][1]]) };
        let fine = 4 * steps.max(1);
        if (0..=fine).any(|k| min_bracket(&at(k as f64 / fine as f64)) < 0.02) {
            continue;
        }
        let values = (0..=steps)
            .map(|k| rogers_five_term(at(k as f64 / steps.max(1) as f64)).map(|(s, _)| s))
            .collect::<Result<Vec<_>>>()?;
        let (lo, hi) = values.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &x| (a.min(x), b.max(x)));
        return Ok(FamilyReport { values, variation: hi - lo, epsilon: epsilon(&v) });
    }
    Err(Error::RetryBudget { attempts: 1000 })
}

/// `∫ d log((z − l₂)/(z − l₁))` along the polyline `m₁ → via… → m₂`.
pub fn aomoto_a1(l: [Complex64; 2], m: [Complex64; 2], via: &[Complex64], opts: &QuadOptions) -> Result<BranchedValue> {
    let config = |z: Complex64| -> Matrix { vec![vec![z - l[0]], vec![z - l[1]]] };
    let mut pts = vec![config(m[0])];
    pts.extend(via.iter().map(|&z| config(z)));
    pts.push(config(m[1]));
    if pts.len() == 2 && (m[0] - m[1]).norm() == 0.0 {
        let path = PathSpec::polyline(&pts)?;
        return Ok(BranchedValue { value: c(0.0, 0.0), error: 0.0, path });
    }
    let path = PathSpec::polyline(&pts)?;
    let word = vec![vec![(MultSymbol::bracket(&[2])?, 1), (MultSymbol::bracket(&[1])?, -1)]];
    let r = iterate_word_from(&word, &path, opts, None)?;
    Ok(BranchedValue { value: r.value, error: r.error, path })
}

/// A detour point for [`aomoto_a1`]: the midpoint of `m₁m₂` pushed to the
/// left of the direction of travel by half the distance.
pub fn left_detour(m: [Complex64; 2]) -> Complex64 {
    let mid = (m[0] + m[1]) * 0.5;
    mid + (m[1] - m[0]) * c(0.0, 0.5)
}

/// Iterated integral of `I_n` along a path of `2n`-vector configurations.
pub fn grassmannian_tate(n: usize, path: &PathSpec, opts: &QuadOptions) -> Result<BranchedValue> {
    let e = build_in(n)?;
    if path.dim() != n || path.count() != 2 * n {
        return Err(Error::Path(format!("I_{n} needs {} vectors in dimension {n}", 2 * n)));
    }
    let r = iterate_element(e.tensor(), path, opts)?;
    Ok(BranchedValue { value: r.value, error: r.error, path: path.clone() })
}

/// Random complex configuration of `count` vectors in dimension `dim`.
pub fn random_complex_config(rng: &mut impl Rng, count: usize, dim: usize) -> Matrix {
    (0..count).map(|_| (0..dim).map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect()).collect()
}

/// Seeded straight path between two random complex configurations of `2n`
/// vectors in dimension `n`.
pub fn random_tate_path(n: usize, seed: u64) -> Result<PathSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = random_complex_config(&mut rng, 2 * n, n);
    let b = random_complex_config(&mut rng, 2 * n, n);
    PathSpec::line(&a, &b)
}

/// Homotopy test of `I_n` along a seeded random path.
pub fn tate_homotopy(n: usize, seed: u64, deformations: usize, amplitude: f64, tol: f64, opts: &QuadOptions) -> Result<HomotopyReport> {
    let e = build_in(n)?;
    homotopy_test(e.tensor(), &random_tate_path(n, seed)?, deformations, amplitude, seed, tol, opts)
}

/// The single word `d log Δ₁₂ ∘ d log Δ₁₃`, which is not integrable.
pub fn non_integrable_word() -> MultTensor {
    let b = |l: &[u8]| MultSymbol::bracket(l).expect("labels");
    MultTensor::single(vec![b(&[1, 2]), b(&[1, 3])], num_traits::One::one())
}

/// One row of a function table.
#[derive(Clone, Debug, PartialEq)]
pub struct TableRow {
    pub inputs: Vec<f64>,
    pub value: Complex64,
    pub error: f64,
}

/// Function tables emitted as CSV.
#[derive(Clone, Debug, PartialEq)]
pub enum Table {
    /// `Li_n` by iterated integration at the given points.
    LiN { n: u32, points: Vec<Complex64> },
    /// Bloch–Wigner on the grid `[re₀,re₁] × [im₀,im₁]` with `steps²` points.
    BlochWigner { re: (f64, f64), im: (f64, f64), steps: usize },
    Rogers { points: Vec<f64> },
    /// Five-term sums of `l2g` along a seeded family.
    L2gFamily { seed: u64, steps: usize },
}

impl Table {
    pub fn header(&self) -> Vec<&'static str> {
        let inputs: &[&'static str] = match self {
            Table::LiN { .. } => &["z_re", "z_im"],
            Table::BlochWigner { .. } => &["z_re", "z_im"],
            Table::Rogers { .. } => &["x"],
            Table::L2gFamily { .. } => &["s"],
        };
        let mut h = inputs.to_vec();
        h.extend(["value_re", "value_im", "error_estimate"]);
        h
    }

    pub fn rows(&self, opts: &QuadOptions) -> Result<Vec<TableRow>> {
        let grid = |(a, b): (f64, f64), steps: usize, k: usize| if steps < 2 { a } else { a + (b - a) * k as f64 / (steps - 1) as f64 };
        match self {
            Table::LiN { n, points } => points
                .iter()
                .map(|&z| {
                    let r = li_n(*n, z, opts)?;
                    Ok(TableRow { inputs: vec![z.re, z.im], value: r.value, error: r.error })
                })
                .collect(),
            Table::BlochWigner { re, im, steps } => {
                let mut out = Vec::with_capacity(steps * steps);
                for i in 0..*steps {
                    for j in 0..*steps {
                        let z = c(grid(*re, *steps, i), grid(*im, *steps, j));
                        let value = bloch_wigner(z).map(|v| c(v, 0.0)).unwrap_or(c(f64::NAN, 0.0));
                        out.push(TableRow { inputs: vec![z.re, z.im], value, error: 0.0 });
                    }
                }
                Ok(out)
            }
            Table::Rogers { points } => points
                .iter()
                .map(|&x| Ok(TableRow { inputs: vec![x], value: c(rogers_l2(x)?, 0.0), error: 0.0 }))
                .collect(),
            Table::L2gFamily { seed, steps } => {
                let fam = l2g_family(*seed, *steps)?;
                Ok(fam
                    .values
                    .iter()
                    .enumerate()
                    .map(|(k, &v)| TableRow { inputs: vec![k as f64 / (*steps).max(1) as f64], value: c(v, 0.0), error: 0.0 })
                    .collect())
            }
        }
    }

    pub fn write_csv<W: Write>(&self, opts: &QuadOptions, out: W) -> Result<usize> {
        let rows = self.rows(opts)?;
        let mut w = csv::Writer::from_writer(out);
        let io = |e: csv::Error| Error::Contract(format!("csv: {e}"));
        w.write_record(self.header()).map_err(io)?;
        for r in &rows {
            let mut rec: Vec<String> = r.inputs.iter().map(|x| format!("{x:e}")).collect();
            rec.extend([format!("{:e}", r.value.re), format!("{:e}", r.value.im), format!("{:e}", r.error)]);
            w.write_record(&rec).map_err(io)?;
        }
        w.flush().map_err(|e| Error::Contract(format!("csv: {e}")))?;
        Ok(rows.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const LN2: f64 = std::f64::consts::LN_2;

    #[test]
    fn li2_closed_forms() {
        let half = li2(c(0.5, 0.0)).unwrap();
        assert!((half.re - (PI * PI / 12.0 - 0.5 * LN2 * LN2)).abs() < 1e-15);
        assert!((li2(c(-1.0, 0.0)).unwrap().re + PI * PI / 12.0).abs() < 1e-15);
        assert!((li2(c(2.0, 0.0)).unwrap().re - PI * PI / 4.0).abs() < 1e-14);
        assert!((li2(c(1.0, 0.0)).unwrap().re - PI * PI / 6.0).abs() < 1e-15);
        // i: Li2(i) = -π²/48 + i·Catalan
        let g = 0.915_965_594_177_219;
        assert!((li2(c(0.0, 1.0)).unwrap() - c(-PI * PI / 48.0, g)).norm() < 1e-14);
    }

    #[test]
    fn li2_matches_series_inside_disc() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let z = Complex64::from_polar(rng.gen_range(0.0..0.9), rng.gen_range(-PI..PI));
            assert!((li2(z).unwrap() - li_series(2, z).unwrap()).norm() < 1e-13);
        }
    }

    #[test]
    fn li_n_examples() {
        let o = QuadOptions::default();
        let r = li_n(1, c(0.3, 0.0), &o).unwrap();
        assert!((r.value.re + (0.7f64).ln()).abs() < 1e-12);
        let r = li_n(2, c(0.5, 0.0), &o).unwrap();
        assert!((r.value.re - 0.582_240_526_465_012_5).abs() < 1e-10);
        let li3 = 7.0 / 8.0 * 1.202_056_903_159_594_3 - PI * PI * LN2 / 12.0 + LN2.powi(3) / 6.0;
        let r = li_n(3, c(0.5, 0.0), &o).unwrap();
        assert!((r.value.re - li3).abs() < 1e-10);
        let r = li_n(2, c(-0.8, 0.0), &o).unwrap();
        assert!((r.value - li_series(2, c(-0.8, 0.0)).unwrap()).norm() < 1e-10);
        assert_eq!(li_n(2, c(0.0, 0.0), &o).unwrap().value, c(0.0, 0.0));
        assert!(matches!(li_n(2, c(2.0, 0.0), &o), Err(Error::Pole { .. })));
    }

    #[test]
    fn rogers_normalization() {
        for x in [-1.0, 0.5, 2.0] {
            assert!(rogers_l2(x).unwrap().abs() < 1e-14, "{x}");
        }
        for x in [0.1, 0.3, 0.77] {
            let d = rogers_l2_closed_form(x).unwrap() - rogers_l2(x).unwrap();
            assert!((d - PI * PI / 12.0).abs() < 1e-14);
        }
        for x in [-3.0, -0.4, 0.2, 0.9, 1.5, 7.0] {
            let h = 1e-5;
            let fd = (rogers_l2(x + h).unwrap() - rogers_l2(x - h).unwrap()) / (2.0 * h);
            assert!((fd - rogers_l2_derivative(x).unwrap()).abs() < 1e-6);
        }
        assert!(rogers_l2(1.0).is_err());
    }

    #[test]
    fn rogers_five_term_constant() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let (s, eps) = rogers_five_term(random_real_five(&mut rng)).unwrap();
            assert!((s + eps * PI * PI / 6.0).abs() < 1e-9, "{s} {eps}");
        }
    }

    #[test]
    fn bloch_wigner_properties() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        assert_eq!(bloch_wigner(c(0.3, 0.0)).unwrap(), 0.0);
        for _ in 0..20 {
            let z = c(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
            assert!((bloch_wigner(z.conj()).unwrap() + bloch_wigner(z).unwrap()).abs() < 1e-14);
            let v: [[Complex64; 2]; 5] = std::array::from_fn(|_| [c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)), c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))]);
            assert!(bloch_wigner_five_term(v).unwrap().abs() < 1e-10);
        }
    }

    #[test]
    fn aomoto_a1_branches() {
        let o = QuadOptions::default();
        let (l, m) = ([c(2.0, 0.0), c(5.0, 0.0)], [c(1.0, 0.0), c(3.0, 0.0)]);
        let r = aomoto_a1(l, m, &[left_detour(m)], &o).unwrap();
        assert!((r.value - c(-0.5, 0.0).ln()).norm() < 1e-12, "{}", r.value);
        let around = [c(3.0, 0.0), c(6.0, -1.0), c(6.0, 1.0), c(3.0, 0.0)];
        let r2 = aomoto_a1(l, [m[0], m[1]], &[left_detour(m), around[0], around[1], around[2], around[3]], &o).unwrap();
        assert!(((r2.value - r.value) - c(0.0, 2.0 * PI)).norm() < 1e-10, "{}", r2.value - r.value);
        assert_eq!(aomoto_a1(l, [m[0], m[0]], &[], &o).unwrap().value, c(0.0, 0.0));
    }

    #[test]
    fn exact_l2g_at_one_half() {
        // cross-ratio 1/2
        let config = Configuration::from_integers(2, &[&[0, 1], &[-1, 3], &[1, 1], &[-1, 1]]).unwrap();
        let pts: Vec<_> = (1..=4).map(|i| config.vector(i).unwrap()).collect();
        let r = cross_ratio([pts[0], pts[1], pts[2], pts[3]]).unwrap();
        assert_eq!(r.to_string(), "1/2");
        assert!(l2g_exact(&config).unwrap().abs() < 1e-15);
    }

    #[test]
    fn tables() {
        let o = QuadOptions::default();
        let t = Table::BlochWigner { re: (-2.0, 2.0), im: (-2.0, 2.0), steps: 50 };
        let mut buf = Vec::new();
        assert_eq!(t.write_csv(&o, &mut buf).unwrap(), 2500);
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("z_re,z_im,value_re,value_im,error_estimate\n"));
        let pts: Vec<f64> = (1..100).map(|k| k as f64 / 100.0).collect();
        assert_eq!(Table::Rogers { points: pts }.rows(&o).unwrap().len(), 99);
    }
}

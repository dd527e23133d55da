//! Piecewise polynomial paths in the space of complex configurations.
//!
//! A path is a list of segments, each a polynomial in a local parameter
//! `s ∈ [0, 1]` whose coefficients are configurations (row-major matrices of
//! `count × dim` complex entries). Segment `i` of `S` covers the global
//! interval `[i/S, (i+1)/S]`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Joints must agree to this relative accuracy.
const JOINT_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Segment {
    pub degree: usize,
    /// `coeffs[j]` multiplies `s^j`; each is a flattened configuration.
    pub coeffs: Vec<Vec<[f64; 2]>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PathSpec {
    dim: usize,
    count: usize,
    segments: Vec<Vec<Vec<Complex64>>>,
}

#[derive(Serialize, Deserialize)]
struct RawPath {
    dim: usize,
    segments: Vec<Segment>,
}

/// A configuration as rows of complex entries.
pub type Matrix = Vec<Vec<Complex64>>;

fn flatten(m: &[Vec<Complex64>]) -> Vec<Complex64> {
    m.iter().flatten().copied().collect()
}

impl PathSpec {
    /// Builds a path from per-segment coefficient lists of flattened
    /// configurations and validates shapes and continuity.
    pub fn new(dim: usize, segments: Vec<Vec<Vec<Complex64>>>) -> Result<Self> {
        if dim == 0 || segments.is_empty() {
            return Err(Error::Path("a path needs a positive dimension and at least one segment".into()));
        }
        let len = segments[0].first().map_or(0, Vec::len);
        if len == 0 || !len.is_multiple_of(dim) {
            return Err(Error::Path(format!("{len} entries do not form vectors of dimension {dim}")));
        }
        for (i, seg) in segments.iter().enumerate() {
            if seg.is_empty() || seg.iter().any(|c| c.len() != len) {
                return Err(Error::Path(format!("segment {i} has inconsistent coefficient sizes")));
            }
            if seg.iter().flatten().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
                return Err(Error::Path(format!("segment {i} has non-finite coefficients")));
            }
        }
        let path = PathSpec { dim, count: len / dim, segments };
        for i in 1..path.segments.len() {
            let end = path.segment_point(i - 1, 1.0);
            let start = path.segment_point(i, 0.0);
            let scale = end.iter().map(|z| z.norm()).fold(1.0, f64::max);
            if end.iter().zip(&start).any(|(a, b)| (a - b).norm() > JOINT_TOL * scale) {
                return Err(Error::Path(format!("segments {} and {} do not meet", i - 1, i)));
            }
        }
        Ok(path)
    }

    /// Straight segment between two configurations.
    pub fn line(a: &[Vec<Complex64>], b: &[Vec<Complex64>]) -> Result<Self> {
        PathSpec::polyline(&[a.to_vec(), b.to_vec()])
    }

    /// Straight segments through the given configurations.
    pub fn polyline(points: &[Matrix]) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::Path("a polyline needs two points".into()));
        }
        let dim = points[0].first().map_or(0, Vec::len);
        let segs = points
            .windows(2)
            .map(|w| {
                let (a, b) = (flatten(&w[0]), flatten(&w[1]));
                if a.len() != b.len() {
                    return Err(Error::Path("polyline points differ in shape".into()));
                }
                Ok(vec![a.clone(), b.iter().zip(&a).map(|(y, x)| y - x).collect()])
            })
            .collect::<Result<Vec<_>>>()?;
        PathSpec::new(dim, segs)
    }

    /// Closed loop `base + radius·(e^{iθ} − 1)·direction`, θ from 0 to 2π,
    /// by cubic Hermite segments (exact endpoints and tangents at the knots).
    pub fn circle(base: &[Vec<Complex64>], direction: &[Vec<Complex64>], radius: f64, segments: usize) -> Result<Self> {
        if segments < 3 {
            return Err(Error::Path("a loop needs at least three segments".into()));
        }
        let dim = base.first().map_or(0, Vec::len);
        let (b, d) = (flatten(base), flatten(direction));
        if b.len() != d.len() {
            return Err(Error::Path("loop base and direction differ in shape".into()));
        }
        let knot = |k: usize| -> (Vec<Complex64>, Vec<Complex64>) {
            let theta = 2.0 * PI * (k % segments) as f64 / segments as f64;
            let e = Complex64::from_polar(1.0, theta);
            let dtheta = 2.0 * PI / segments as f64;
            let p = b.iter().zip(&d).map(|(x, y)| x + y * ((e - 1.0) * radius)).collect();
            let v = d.iter().map(|y| y * (Complex64::i() * e * radius * dtheta)).collect();
            (p, v)
        };
        let segs = (0..segments)
            .map(|k| {
                let ((p0, v0), (p1, v1)) = (knot(k), knot(k + 1));
                hermite(&p0, &v0, &p1, &v1)
            })
            .collect();
        PathSpec::new(dim, segs)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of vectors in each configuration.
    pub fn count(&self) -> usize {
        self.count
    }

    pub fn segment_count(&self) -> usize {
        self.segments.len()
    }

    /// Global parameter interval of segment `i`.
    pub fn segment_bounds(&self, i: usize) -> (f64, f64) {
        let n = self.segments.len() as f64;
        (i as f64 / n, (i + 1) as f64 / n)
    }

    fn locate(&self, t: f64) -> (usize, f64) {
        let n = self.segments.len();
        let x = (t.clamp(0.0, 1.0)) * n as f64;
        let i = (x.floor() as usize).min(n - 1);
        (i, x - i as f64)
    }

    fn segment_point(&self, i: usize, s: f64) -> Vec<Complex64> {
        let c = &self.segments[i];
        let mut out = c[c.len() - 1].clone();
        for coeff in c.iter().rev().skip(1) {
            for (o, a) in out.iter_mut().zip(coeff) {
                *o = *o * s + a;
            }
        }
        out
    }

    fn segment_derivative(&self, i: usize, s: f64) -> Vec<Complex64> {
        let c = &self.segments[i];
        let mut out = vec![Complex64::new(0.0, 0.0); self.count * self.dim];
        for j in (1..c.len()).rev() {
            for (o, a) in out.iter_mut().zip(&c[j]) {
                *o = *o * s + a * j as f64;
            }
        }
        out
    }

    fn rows(&self, flat: Vec<Complex64>) -> Matrix {
        flat.chunks(self.dim).map(<[Complex64]>::to_vec).collect()
    }

    /// Configuration at global time `t`, within segment `seg` (so joints
    /// can be evaluated from either side).
    pub fn point_in(&self, seg: usize, t: f64) -> Matrix {
        let (a, _) = self.segment_bounds(seg);
        let s = (t - a) * self.segments.len() as f64;
        self.rows(self.segment_point(seg, s))
    }

    /// Derivative with respect to global time at `t` within segment `seg`.
    pub fn derivative_in(&self, seg: usize, t: f64) -> Matrix {
        let (a, _) = self.segment_bounds(seg);
        let n = self.segments.len() as f64;
        let s = (t - a) * n;
        self.rows(self.segment_derivative(seg, s).into_iter().map(|z| z * n).collect())
    }

    pub fn point(&self, t: f64) -> Matrix {
        let (i, s) = self.locate(t);
        self.rows(self.segment_point(i, s))
    }

    pub fn start(&self) -> Matrix {
        self.point(0.0)
    }

    pub fn end(&self) -> Matrix {
        self.point(1.0)
    }

    pub fn is_closed(&self, tol: f64) -> bool {
        let (a, b) = (flatten(&self.start()), flatten(&self.end()));
        let scale = a.iter().map(|z| z.norm()).fold(1.0, f64::max);
        a.iter().zip(&b).all(|(x, y)| (x - y).norm() <= tol * scale)
    }

    /// The same curve traversed backwards.
    pub fn reversed(&self) -> PathSpec {
        let segments = self
            .segments
            .iter()
            .rev()
            .map(|c| {
                // p(1 − s): expand Σ c_j (1−s)^j
                let deg = c.len() - 1;
                let mut out = vec![vec![Complex64::new(0.0, 0.0); c[0].len()]; deg + 1];
                for (j, cj) in c.iter().enumerate() {
                    for k in 0..=j {
                        let w = binomial(j, k) * if k % 2 == 0 { 1.0 } else { -1.0 };
                        for (o, a) in out[k].iter_mut().zip(cj) {
                            *o += a * w;
                        }
                    }
                }
                out
            })
            .collect();
        PathSpec { dim: self.dim, count: self.count, segments }
    }

    /// `self` followed by `other`; the global parameter is split by segment count.
    pub fn concat(&self, other: &PathSpec) -> Result<PathSpec> {
        if self.dim != other.dim || self.count != other.count {
            return Err(Error::Path("concatenated paths differ in shape".into()));
        }
        let mut segs = self.segments.clone();
        segs.extend(other.segments.iter().cloned());
        PathSpec::new(self.dim, segs)
    }

    /// The path `(1 − s)·self + s·other`, segment by segment.
    pub fn blend(&self, other: &PathSpec, s: f64) -> Result<PathSpec> {
        if self.dim != other.dim || self.count != other.count || self.segments.len() != other.segments.len() {
            return Err(Error::Path("blended paths differ in shape".into()));
        }
        let len = self.count * self.dim;
        let segments = self
            .segments
            .iter()
            .zip(&other.segments)
            .map(|(a, b)| {
                let deg = a.len().max(b.len());
                let zero = vec![Complex64::new(0.0, 0.0); len];
                (0..deg)
                    .map(|j| {
                        let (x, y) = (a.get(j).unwrap_or(&zero), b.get(j).unwrap_or(&zero));
                        x.iter().zip(y).map(|(p, q)| p * (1.0 - s) + q * s).collect()
                    })
                    .collect()
            })
            .collect();
        Ok(PathSpec { dim: self.dim, count: self.count, segments })
    }

    /// Adds `amplitude · s(1−s) · R` to every segment, with an independent
    /// random complex matrix `R` per segment; endpoints and joints stay fixed.
    pub fn deformed(&self, amplitude: f64, rng: &mut impl Rng) -> PathSpec {
        let segments = self
            .segments
            .iter()
            .map(|c| {
                let len = c[0].len();
                let r: Vec<Complex64> =
                    (0..len).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)) * amplitude).collect();
                let mut out = c.clone();
                out.resize(c.len().max(3), vec![Complex64::new(0.0, 0.0); len]);
                for (k, rk) in r.iter().enumerate() {
                    out[1][k] += rk;
                    out[2][k] -= rk;
                }
                out
            })
            .collect();
        PathSpec { dim: self.dim, count: self.count, segments }
    }

    pub fn to_json(&self) -> String {
        let raw = RawPath {
            dim: self.dim,
            segments: self
                .segments
                .iter()
                .map(|c| Segment {
                    degree: c.len() - 1,
                    coeffs: c.iter().map(|v| v.iter().map(|z| [z.re, z.im]).collect()).collect(),
                })
                .collect(),
        };
        serde_json::to_string(&raw).expect("path serializes")
    }

    pub fn from_json(s: &str) -> Result<PathSpec> {
        let raw: RawPath = serde_json::from_str(s).map_err(|e| Error::Path(e.to_string()))?;
        let segs = raw
            .segments
            .into_iter()
            .enumerate()
            .map(|(i, seg)| {
                if seg.coeffs.len() != seg.degree + 1 {
                    return Err(Error::Path(format!("segment {i}: degree {} needs {} coefficients", seg.degree, seg.degree + 1)));
                }
                Ok(seg.coeffs.into_iter().map(|v| v.into_iter().map(|[re, im]| Complex64::new(re, im)).collect()).collect())
            })
            .collect::<Result<Vec<_>>>()?;
        PathSpec::new(raw.dim, segs)
    }
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Cubic with given endpoint values and derivatives (in the local parameter).
fn hermite(p0: &[Complex64], v0: &[Complex64], p1: &[Complex64], v1: &[Complex64]) -> Vec<Vec<Complex64>> {
    let c2 = (0..p0.len()).map(|k| (p1[k] - p0[k]) * 3.0 - v0[k] * 2.0 - v1[k]).collect();
    let c3 = (0..p0.len()).map(|k| (p0[k] - p1[k]) * 2.0 + v0[k] + v1[k]).collect();
    vec![p0.to_vec(), v0.to_vec(), c2, c3]
}

/// Scalar helper: a configuration of one vector in dimension one.
pub fn scalar(z: Complex64) -> Matrix {
    vec![vec![z]]
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn line_endpoints_and_derivative() {
        let p = PathSpec::line(&scalar(c(1.0, 0.0)), &scalar(c(2.0, 1.0))).unwrap();
        assert_eq!(p.start(), scalar(c(1.0, 0.0)));
        assert_eq!(p.end(), scalar(c(2.0, 1.0)));
        assert_eq!(p.derivative_in(0, 0.3), scalar(c(1.0, 1.0)));
    }

    #[test]
    fn polyline_global_parameter() {
        let pts = [scalar(c(0.0, 0.0)), scalar(c(1.0, 0.0)), scalar(c(1.0, 1.0))];
        let p = PathSpec::polyline(&pts).unwrap();
        assert_eq!(p.point(0.5), scalar(c(1.0, 0.0)));
        assert_eq!(p.point(0.75), scalar(c(1.0, 0.5)));
        assert_eq!(p.derivative_in(1, 0.75), scalar(c(0.0, 2.0)));
    }

    #[test]
    fn circle_is_closed_and_round() {
        let p = PathSpec::circle(&scalar(c(1.0, 0.0)), &scalar(c(1.0, 0.0)), 1.0, 8).unwrap();
        assert!(p.is_closed(1e-14));
        for k in 0..50 {
            let z = p.point(k as f64 / 50.0)[0][0];
            assert!((z.norm() - 1.0).abs() < 2e-3);
        }
    }

    #[test]
    fn reversal_and_json() {
        let pts = [scalar(c(0.0, 0.0)), scalar(c(1.0, 2.0)), scalar(c(3.0, 1.0))];
        let p = PathSpec::polyline(&pts).unwrap();
        let r = p.reversed();
        for k in 0..=10 {
            let t = k as f64 / 10.0;
            let (a, b) = (p.point(t)[0][0], r.point(1.0 - t)[0][0]);
            assert!((a - b).norm() < 1e-14);
        }
        assert_eq!(PathSpec::from_json(&p.to_json()).unwrap(), p);
        assert!(matches!(PathSpec::from_json(r#"{"dim":1,"segments":[]}"#), Err(Error::Path(_))));
        let gap = r#"{"dim":1,"segments":[{"degree":0,"coeffs":[[[0,0]]]},{"degree":0,"coeffs":[[[1,0]]]}]}"#;
        assert!(matches!(PathSpec::from_json(gap), Err(Error::Path(_))));
    }

    #[test]
    fn deformation_fixes_endpoints() {
        let p = PathSpec::line(&scalar(c(1.0, 0.0)), &scalar(c(2.0, 0.0))).unwrap();
        let d = p.deformed(0.3, &mut ChaCha8Rng::seed_from_u64(4));
        assert!((d.start()[0][0] - c(1.0, 0.0)).norm() < 1e-15);
        assert!((d.end()[0][0] - c(2.0, 0.0)).norm() < 1e-15);
        assert!((d.point(0.5)[0][0] - p.point(0.5)[0][0]).norm() > 1e-3);
        assert_eq!(p.deformed(0.0, &mut ChaCha8Rng::seed_from_u64(4)).point(0.5), p.point(0.5));
    }
}

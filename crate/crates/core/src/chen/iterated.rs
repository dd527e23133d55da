//! Iterated integrals of `d log` forms along paths.
//!
//! All words of an element are stored in a trie so that shared prefixes are
//! integrated once. On each panel the nested integrals are advanced node by
//! node in the order of the trie, so one sweep yields every prefix value.

use std::collections::HashMap;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use super::path::PathSpec;
use super::quadrature::{panel, NODES};
use crate::error::{Error, Result};
use crate::exact::determinant;
use crate::tensor::{Monomial, MultSymbol, MultTensor};

/// Bracket modulus below which a path is treated as hitting a pole.
pub const POLE_THRESHOLD: f64 = 1e-8;

/// Attempts allowed when a random deformation runs into a pole.
pub const DEFORMATION_RESAMPLE_BUDGET: usize = 100;

/// Intermediate paths checked between a path and its deformation.
const HOMOTOPY_LADDER: usize = 16;

/// Panel differences below this relative size are rounding noise.
const ROUNDOFF: f64 = 64.0 * f64::EPSILON;

/// A 1-form: an integer combination of `d log` of symbols.
pub type OneForm = Monomial;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadOptions {
    /// Accept a panel when halving changes the prefixes by at most
    /// `tol · width` (relative to values of size above one).
    pub tol: f64,
    pub max_panels: usize,
    pub min_width: f64,
}

impl Default for QuadOptions {
    fn default() -> Self {
        QuadOptions { tol: 1e-12, max_panels: 50_000, min_width: 1e-12 }
    }
}

impl QuadOptions {
    pub fn with_tol(tol: f64) -> Self {
        QuadOptions { tol, ..QuadOptions::default() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IterIntResult {
    pub value: Complex64,
    pub error: f64,
    pub panels: usize,
}

impl Serialize for IterIntResult {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Raw {
            value: [f64; 2],
            error: f64,
            panels: usize,
        }
        Raw { value: [self.value.re, self.value.im], error: self.error, panels: self.panels }.serialize(s)
    }
}

/// Words compiled into a trie over distinct forms and symbols.
struct Program {
    symbols: Vec<MultSymbol>,
    /// Per form: `(symbol index, exponent)`.
    forms: Vec<Vec<(usize, f64)>>,
    /// Node 0 is the empty word; every other node has a smaller parent.
    parent: Vec<usize>,
    form_of: Vec<usize>,
}

impl Program {
    fn compile(words: &[Vec<OneForm>]) -> (Program, Vec<usize>) {
        let mut symbols = Vec::new();
        let mut sym_index: HashMap<MultSymbol, usize> = HashMap::new();
        let mut forms: Vec<Vec<(usize, f64)>> = Vec::new();
        let mut form_index: HashMap<Vec<(usize, i64)>, usize> = HashMap::new();
        let mut parent = vec![0];
        let mut form_of = vec![usize::MAX];
        let mut children: HashMap<(usize, usize), usize> = HashMap::new();
        let mut leaves = Vec::with_capacity(words.len());
        for word in words {
            let mut node = 0;
            for form in word {
                let mut key: Vec<(usize, i64)> = Vec::new();
                for (s, e) in form {
                    let next = sym_index.len();
                    let si = *sym_index.entry(s.clone()).or_insert_with(|| {
                        symbols.push(s.clone());
                        next
                    });
                    match key.iter_mut().find(|(k, _)| *k == si) {
                        Some(entry) => entry.1 += e,
                        None => key.push((si, *e)),
                    }
                }
                key.retain(|&(_, e)| e != 0);
                key.sort_unstable();
                let next_form = forms.len();
                let fi = *form_index.entry(key.clone()).or_insert_with(|| {
                    forms.push(key.iter().map(|&(s, e)| (s, e as f64)).collect());
                    next_form
                });
                let next_node = parent.len();
                node = *children.entry((node, fi)).or_insert_with(|| {
                    parent.push(node);
                    form_of.push(fi);
                    next_node
                });
            }
            leaves.push(node);
        }
        (Program { symbols, forms, parent, form_of }, leaves)
    }

    fn validate(&self, path: &PathSpec) -> Result<()> {
        for s in &self.symbols {
            match s {
                MultSymbol::Bracket(set) => {
                    if set.len() != path.dim() {
                        return Err(Error::Path(format!("{s} needs dimension {}, path has {}", set.len(), path.dim())));
                    }
                    if set.iter().any(|l| usize::from(l) > path.count()) {
                        return Err(Error::Path(format!("{s} refers past the {} vectors of the path", path.count())));
                    }
                }
                MultSymbol::Named(_) => {}
            }
        }
        Ok(())
    }

    fn rows_for(&self, sym: usize, m: &[Vec<Complex64>]) -> Option<Vec<Vec<Complex64>>> {
        match &self.symbols[sym] {
            MultSymbol::Bracket(set) => Some(set.iter().map(|l| m[usize::from(l) - 1].clone()).collect()),
            MultSymbol::Named(_) => None,
        }
    }

    fn bracket_at(&self, sym: usize, m: &[Vec<Complex64>]) -> Option<Complex64> {
        self.rows_for(sym, m).map(|rows| determinant(&rows))
    }

    /// `d log` of every symbol along the path at `t`, checking for poles.
    fn dlogs(&self, path: &PathSpec, seg: usize, t: f64) -> Result<Vec<Complex64>> {
        let m = path.point_in(seg, t);
        let dm = path.derivative_in(seg, t);
        (0..self.symbols.len())
            .map(|s| {
                let Some(rows) = self.rows_for(s, &m) else {
                    return Ok(Complex64::new(0.0, 0.0));
                };
                let det = determinant(&rows);
                if det.norm() < POLE_THRESHOLD {
                    return Err(Error::Pole { symbol: self.symbols[s].to_string(), at: Some(t) });
                }
                let mut deriv = Complex64::new(0.0, 0.0);
                let set = self.symbols[s].labels().expect("bracket");
                for (i, l) in set.iter().enumerate() {
                    let mut r = rows.clone();
                    r[i] = dm[usize::from(l) - 1].clone();
                    deriv += determinant(&r);
                }
                Ok(deriv / det)
            })
            .collect()
    }

    /// Advances every prefix across `[a, b]` on one panel.
    fn step(&self, path: &PathSpec, seg: usize, a: f64, b: f64, start: &[Complex64]) -> Result<Vec<Complex64>> {
        let p = panel();
        let ts = p.mapped(a, b);
        let half = (b - a) / 2.0;
        let mut form_vals = vec![[Complex64::new(0.0, 0.0); NODES]; self.forms.len()];
        for (j, &t) in ts.iter().enumerate() {
            let d = self.dlogs(path, seg, t)?;
            for (f, vals) in self.forms.iter().zip(form_vals.iter_mut()) {
                vals[j] = f.iter().map(|&(s, e)| d[s] * e).sum();
            }
        }
        let one = [Complex64::new(1.0, 0.0); NODES];
        let mut node_vals: Vec<[Complex64; NODES]> = Vec::with_capacity(self.parent.len());
        node_vals.push(one);
        let mut integrand = [Complex64::new(0.0, 0.0); NODES];
        let mut running = [Complex64::new(0.0, 0.0); NODES];
        for k in 1..self.parent.len() {
            let (par, fv) = (&node_vals[self.parent[k]], &form_vals[self.form_of[k]]);
            for j in 0..NODES {
                integrand[j] = par[j] * fv[j];
            }
            p.running(&integrand, half, &mut running);
            let mut vals = [Complex64::new(0.0, 0.0); NODES];
            for j in 0..NODES {
                vals[j] = start[k] + running[j];
            }
            node_vals.push(vals);
        }
        Ok(node_vals.iter().map(|v| v[NODES - 1]).collect())
    }

    /// Minimum bracket modulus along the path, by sampling and local refinement.
    fn check_poles(&self, path: &PathSpec) -> Result<()> {
        const SAMPLES: usize = 64;
        for seg in 0..path.segment_count() {
            let (a, b) = path.segment_bounds(seg);
            let ts: Vec<f64> = (0..=SAMPLES).map(|k| a + (b - a) * k as f64 / SAMPLES as f64).collect();
            for s in 0..self.symbols.len() {
                let modulus = |t: f64| self.bracket_at(s, &path.point_in(seg, t)).map_or(f64::INFINITY, |z| z.norm());
                let vals: Vec<f64> = ts.iter().map(|&t| modulus(t)).collect();
                let (kmin, _) = vals.iter().enumerate().fold((0, f64::INFINITY), |m, (k, &v)| if v < m.1 { (k, v) } else { m });
                let (mut lo, mut hi) = (ts[kmin.saturating_sub(1)], ts[(kmin + 1).min(SAMPLES)]);
                // golden-section search for the local minimum
                let g = 0.5 * (5f64.sqrt() - 1.0);
                for _ in 0..60 {
                    let (x1, x2) = (hi - g * (hi - lo), lo + g * (hi - lo));
                    if modulus(x1) < modulus(x2) {
                        hi = x2;
                    } else {
                        lo = x1;
                    }
                }
                let t = 0.5 * (lo + hi);
                let best = modulus(t).min(vals[kmin]);
                if best < POLE_THRESHOLD {
                    return Err(Error::Pole { symbol: self.symbols[s].to_string(), at: Some(t) });
                }
            }
        }
        Ok(())
    }

    /// Prefix values at the end of the path and per-node error estimates.
    fn run(&self, path: &PathSpec, initial: &[Complex64], opts: &QuadOptions) -> Result<(Vec<Complex64>, Vec<f64>, usize)> {
        self.validate(path)?;
        self.check_poles(path)?;
        let mut state = initial.to_vec();
        let mut err = vec![0.0; state.len()];
        let mut panels = 0;
        for seg in 0..path.segment_count() {
            let (a0, b0) = path.segment_bounds(seg);
            let mut pending = vec![(a0, b0)];
            while let Some((a, b)) = pending.pop() {
                let full = self.step(path, seg, a, b, &state)?;
                let m = 0.5 * (a + b);
                let left = self.step(path, seg, a, m, &state)?;
                let right = self.step(path, seg, m, b, &left)?;
                panels += 3;
                if panels > opts.max_panels {
                    return Err(Error::Budget { panels });
                }
                let diff: Vec<f64> = full.iter().zip(&right).map(|(x, y)| (x - y).norm()).collect();
                let converged = diff.iter().zip(&right).all(|(d, y)| *d <= (opts.tol * (b - a)).max(ROUNDOFF) * y.norm().max(1.0));
                if converged {
                    for (e, d) in err.iter_mut().zip(&diff) {
                        *e += d;
                    }
                    state = right;
                } else if b - a < opts.min_width {
                    return Err(Error::Budget { panels });
                } else {
                    pending.push((m, b));
                    pending.push((a, m));
                }
            }
        }
        Ok((state, err, panels))
    }
}

fn initial_state(program: &Program, leaves: &[usize], prefixes: Option<&[Complex64]>) -> Result<Vec<Complex64>> {
    let mut state = vec![Complex64::new(0.0, 0.0); program.parent.len()];
    state[0] = Complex64::new(1.0, 0.0);
    if let Some(values) = prefixes {
        // a single word: node k of the chain is the prefix of length k
        if leaves.len() != 1 || values.len() + 1 != program.parent.len() {
            return Err(Error::Contract("initial values need one entry per prefix of a single word".into()));
        }
        state[1..].copy_from_slice(values);
    }
    Ok(state)
}

/// `∫_γ ω₁ ∘ ω₂ ∘ … ∘ ω_n`, with `ω₁` integrated first.
pub fn iterate_word(word: &[OneForm], path: &PathSpec, opts: &QuadOptions) -> Result<IterIntResult> {
    iterate_word_from(word, path, opts, None)
}

/// As [`iterate_word`], starting from given prefix values `F₁(0), …, F_n(0)`
/// instead of zero.
pub fn iterate_word_from(
    word: &[OneForm],
    path: &PathSpec,
    opts: &QuadOptions,
    initial: Option<&[Complex64]>,
) -> Result<IterIntResult> {
    if word.is_empty() {
        return Err(Error::Contract("word must have at least one letter".into()));
    }
    let (program, leaves) = Program::compile(&[word.to_vec()]);
    if program.parent.len() != word.len() + 1 {
        return Err(Error::Contract("word letters must be nonzero forms".into()));
    }
    let start = initial_state(&program, &leaves, initial)?;
    let (vals, err, panels) = program.run(path, &start, opts)?;
    Ok(IterIntResult { value: vals[leaves[0]], error: err[leaves[0]], panels })
}

/// `Σ coeff · ∫ (term as a word)`, sharing prefixes between terms.
pub fn iterate_element(t: &MultTensor, path: &PathSpec, opts: &QuadOptions) -> Result<IterIntResult> {
    let words: Vec<Vec<OneForm>> = t.iter().map(|(term, _)| term.iter().map(|s| vec![(s.clone(), 1)]).collect()).collect();
    if words.is_empty() {
        return Ok(IterIntResult { value: Complex64::new(0.0, 0.0), error: 0.0, panels: 0 });
    }
    let (program, leaves) = Program::compile(&words);
    let start = initial_state(&program, &leaves, None)?;
    let (vals, err, panels) = program.run(path, &start, opts)?;
    let mut value = Complex64::new(0.0, 0.0);
    let mut error = 0.0;
    for ((_, c), &leaf) in t.iter().zip(&leaves) {
        let c = *c.numer() as f64 / *c.denom() as f64;
        value += vals[leaf] * c;
        error += err[leaf] * c.abs();
    }
    Ok(IterIntResult { value, error, panels })
}

/// Values of an element along randomly deformed copies of a path.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HomotopyReport {
    pub base: [f64; 2],
    pub values: Vec<[f64; 2]>,
    pub spread: f64,
    pub tol: f64,
    pub passed: bool,
    pub resamples: usize,
}

/// Integrates `t` along `path` and along `deformations` random bump
/// deformations of it; passes when every value is within `tol` of the base.
/// Deformations that hit a pole, or whose straight homotopy to `path` sweeps
/// across a bracket zero, are resampled.
pub fn homotopy_test(
    t: &MultTensor,
    path: &PathSpec,
    deformations: usize,
    amplitude: f64,
    seed: u64,
    tol: f64,
    opts: &QuadOptions,
) -> Result<HomotopyReport> {
    let base = iterate_element(t, path, opts)?.value;
    let letters: Vec<Vec<OneForm>> = t
        .symbols()
        .into_iter()
        .filter(|s| matches!(s, MultSymbol::Bracket(_)))
        .map(|s| vec![vec![(s, 1)]])
        .collect();
    let base_windings = integrate_words(&letters, path, opts)?;
    let runs: Vec<Result<(Complex64, usize)>> = (0..deformations as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i);
            for attempt in 0..DEFORMATION_RESAMPLE_BUDGET {
                let deformed = path.deformed(amplitude, &mut rng);
                match sweep_is_clear(&letters, &base_windings, path, &deformed, opts) {
                    Ok(true) => {}
                    Ok(false) | Err(Error::Pole { .. }) | Err(Error::Budget { .. }) => continue,
                    Err(e) => return Err(e),
                }
                match iterate_element(t, &deformed, opts) {
                    Ok(r) => return Ok((r.value, attempt)),
                    Err(Error::Pole { .. }) => continue,
                    Err(e) => return Err(e),
                }
            }
            Err(Error::RetryBudget { attempts: DEFORMATION_RESAMPLE_BUDGET })
        })
        .collect();
    let mut values = Vec::with_capacity(deformations);
    let mut resamples = 0;
    let mut spread: f64 = 0.0;
    for r in runs {
        let (v, n) = r?;
        resamples += n;
        spread = spread.max((v - base).norm());
        values.push([v.re, v.im]);
    }
    Ok(HomotopyReport { base: [base.re, base.im], values, spread, tol, passed: spread < tol, resamples })
}

/// Whether the straight homotopy from `path` to `deformed` avoids every
/// bracket zero: along a ladder of intermediate paths, each `∫ d log Δ` must
/// keep its value (a crossing shifts it by `±2πi`).
fn sweep_is_clear(letters: &[Vec<OneForm>], base: &[Complex64], path: &PathSpec, deformed: &PathSpec, opts: &QuadOptions) -> Result<bool> {
    for k in 1..=HOMOTOPY_LADDER {
        let mid = path.blend(deformed, k as f64 / HOMOTOPY_LADDER as f64)?;
        let w = integrate_words(letters, &mid, opts)?;
        if w.iter().zip(base).any(|(a, b)| (a - b).norm() > 1e-6) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `|∫ω₁·∫ω₂ − ∫ω₁∘ω₂ − ∫ω₂∘ω₁|`.
pub fn shuffle_test(w1: &OneForm, w2: &OneForm, path: &PathSpec, opts: &QuadOptions) -> Result<f64> {
    let words = vec![vec![w1.clone()], vec![w2.clone()], vec![w1.clone(), w2.clone()], vec![w2.clone(), w1.clone()]];
    let v = integrate_words(&words, path, opts)?;
    Ok((v[0] * v[1] - v[2] - v[3]).norm())
}

/// Length-three analogue: the product of three single integrals equals the
/// sum over all six orderings.
pub fn shuffle_test3(w: [&OneForm; 3], path: &PathSpec, opts: &QuadOptions) -> Result<f64> {
    let mut words: Vec<Vec<OneForm>> = w.iter().map(|f| vec![(*f).clone()]).collect();
    for p in [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
        words.push(p.iter().map(|&i| w[i].clone()).collect());
    }
    let v = integrate_words(&words, path, opts)?;
    let shuffles: Complex64 = v[3..].iter().sum();
    Ok((v[0] * v[1] * v[2] - shuffles).norm())
}

/// Several words integrated together along one path.
pub fn integrate_words(words: &[Vec<OneForm>], path: &PathSpec, opts: &QuadOptions) -> Result<Vec<Complex64>> {
    let (program, leaves) = Program::compile(words);
    let start = initial_state(&program, &leaves, None)?;
    let (vals, _, _) = program.run(path, &start, opts)?;
    Ok(leaves.iter().map(|&l| vals[l]).collect())
}

/// Value of a word around a closed loop.
pub fn monodromy_probe(word: &[OneForm], loop_path: &PathSpec, opts: &QuadOptions) -> Result<IterIntResult> {
    if !loop_path.is_closed(1e-12) {
        return Err(Error::Path("monodromy probe needs a closed loop".into()));
    }
    iterate_word(word, loop_path, opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chen::path::scalar;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn d(l: &[u8]) -> MultSymbol {
        MultSymbol::bracket(l).unwrap()
    }

    fn dlog(l: &[u8]) -> OneForm {
        vec![(d(l), 1)]
    }

    /// Vectors `t` and `1 − t` in dimension one.
    fn li_path(a: Complex64, b: Complex64) -> PathSpec {
        PathSpec::line(&[vec![a], vec![1.0 - a]], &[vec![b], vec![1.0 - b]]).unwrap()
    }

    #[test]
    fn single_log() {
        let p = PathSpec::line(&scalar(c(1.0, 0.0)), &scalar(c(2.0, 0.0))).unwrap();
        let r = iterate_word(&[dlog(&[1])], &p, &QuadOptions::default()).unwrap();
        assert!((r.value - c(2f64.ln(), 0.0)).norm() < 1e-12);
        assert!(r.error >= 0.0);
    }

    #[test]
    fn dilogarithm_at_one_half() {
        let p = li_path(c(0.0, 0.0), c(0.5, 0.0));
        // Δ{1} = t vanishes at the start, so use d log Δ{2} first and start at 0 exactly
        let word = vec![vec![(d(&[2]), -1)], dlog(&[1])];
        let err = iterate_word(&word, &p, &QuadOptions::default());
        assert!(matches!(err, Err(Error::Pole { .. })));
        let p = li_path(c(1e-6, 0.0), c(0.5, 0.0));
        let li1 = -(1.0 - 1e-6f64).ln();
        let li2 = (1..40).map(|k| 1e-6f64.powi(k) / (k * k) as f64).sum::<f64>();
        let r = iterate_word_from(&word, &p, &QuadOptions::default(), Some(&[c(li1, 0.0), c(li2, 0.0)])).unwrap();
        let oracle: f64 = (1..200).map(|k| 0.5f64.powi(k) / (k * k) as f64).sum();
        assert!((r.value.re - oracle).abs() < 1e-10, "{} vs {oracle}", r.value);
    }

    #[test]
    fn reversal_and_concatenation() {
        let pts = [scalar(c(1.0, 0.0)), scalar(c(2.0, 1.0)), scalar(c(3.0, -1.0))];
        let p = PathSpec::polyline(&pts).unwrap();
        let o = QuadOptions::default();
        let a = iterate_word(&[dlog(&[1])], &p, &o).unwrap().value;
        let b = iterate_word(&[dlog(&[1])], &p.reversed(), &o).unwrap().value;
        assert!((a + b).norm() < 1e-12);
        let q = PathSpec::line(&scalar(c(3.0, -1.0)), &scalar(c(0.5, 0.5))).unwrap();
        let whole = iterate_word(&[dlog(&[1])], &p.concat(&q).unwrap(), &o).unwrap().value;
        let parts = a + iterate_word(&[dlog(&[1])], &q, &o).unwrap().value;
        assert!((whole - parts).norm() < 1e-12);
    }

    #[test]
    fn unit_circle_residue() {
        let p = PathSpec::circle(&scalar(c(1.0, 0.0)), &scalar(c(1.0, 0.0)), 1.0, 8).unwrap();
        let r = monodromy_probe(&[dlog(&[1])], &p, &QuadOptions::default()).unwrap();
        assert!((r.value - c(0.0, 2.0 * PI)).norm() < 1e-10, "{}", r.value);
        // contractible: a small loop away from 0
        let small = PathSpec::circle(&scalar(c(3.0, 0.0)), &scalar(c(1.0, 0.0)), 0.5, 8).unwrap();
        let r = monodromy_probe(&[dlog(&[1])], &small, &QuadOptions::default()).unwrap();
        assert!(r.value.norm() < 1e-10);
    }

    #[test]
    fn shuffle_identities() {
        let p = PathSpec::line(&scalar(c(1.0, 0.0)), &scalar(c(2.0, 0.0))).unwrap();
        let o = QuadOptions::default();
        assert!(shuffle_test(&dlog(&[1]), &dlog(&[1]), &p, &o).unwrap() < 1e-10);
        let two = li_path(c(0.2, 0.1), c(0.7, -0.3));
        let (a, b) = (dlog(&[1]), dlog(&[2]));
        assert!(shuffle_test(&a, &b, &two, &o).unwrap() < 1e-10);
        assert!(shuffle_test3([&a, &b, &a], &two, &o).unwrap() < 1e-10);
    }

    #[test]
    fn path_errors() {
        let p = PathSpec::line(&scalar(c(-1.0, 0.0)), &scalar(c(1.0, 0.0))).unwrap();
        assert!(matches!(iterate_word(&[dlog(&[1])], &p, &QuadOptions::default()), Err(Error::Pole { .. })));
        assert!(matches!(iterate_word(&[dlog(&[2])], &p, &QuadOptions::default()), Err(Error::Path(_))));
        let tight = QuadOptions { tol: 1e-15, max_panels: 10, min_width: 1e-3 };
        let q = PathSpec::line(&scalar(c(1e-3, 0.0)), &scalar(c(1.0, 0.0))).unwrap();
        assert!(matches!(iterate_word(&[dlog(&[1]), dlog(&[1])], &q, &tight), Err(Error::Budget { .. })));
    }
}

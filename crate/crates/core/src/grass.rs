//! The element `I_n` and the exact identity checks built on it.

use std::time::Instant;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::aomoto::{additivity_sum, lambda_labels, nu_bracket, AomotoExpr, Side};
use crate::configuration::{bracket_of, random_generic};
use crate::error::{Error, Result};
use crate::exact::ExactScalar;
use crate::forms::{graded_wedge_eval, random_tangent, wedge_eval, TangentAssignment};
use crate::tensor::{
    alt_tensor, coeff_to_json, tensor_of_slots, wedge_project, Coeff, Label, LabelSet, MultSymbol, MultTensor,
    WedgeTensor,
};

/// Attempts allowed when a random point lands on a pole.
pub const POLE_RESAMPLE_BUDGET: usize = 100;

/// Random evaluation points for the `δ{r}` check.
pub const DELTA_R_POINTS: usize = 10;

/// `I_n` on the labels `1..=2n`.
#[derive(Clone, Debug, PartialEq)]
pub struct GrassElement {
    n: usize,
    tensor: MultTensor,
}

impl GrassElement {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn tensor(&self) -> &MultTensor {
        &self.tensor
    }

    pub fn into_tensor(self) -> MultTensor {
        self.tensor
    }

    /// `I_n(labels[0], …, labels[2n−1])`, with `center` (if any) prepended to
    /// every bracket.
    pub fn on_labels(&self, labels: &[Label], center: Option<Label>) -> Result<MultTensor> {
        if labels.len() != 2 * self.n {
            return Err(Error::SizeMismatch { expected: 2 * self.n, got: labels.len() });
        }
        let moved = self.tensor.relabel(|l| labels[usize::from(l) - 1]);
        match center {
            None => Ok(moved),
            Some(c) => prepend_center(&moved, c),
        }
    }
}

/// Replace every bracket `Δ(S)` by `Δ(c, S)`.
pub fn prepend_center(t: &MultTensor, c: Label) -> Result<MultTensor> {
    let mut out = MultTensor::zero(t.arity());
    for (term, coeff) in t.iter() {
        let slots = term
            .iter()
            .map(|s| match s {
                MultSymbol::Bracket(set) => {
                    let mut labels = set.labels();
                    labels.push(c);
                    Ok(vec![(MultSymbol::bracket(&labels)?, 1)])
                }
                MultSymbol::Named(_) => Ok(vec![(s.clone(), 1)]),
            })
            .collect::<Result<Vec<_>>>()?;
        out.add_scaled(&tensor_of_slots(&slots)?, *coeff)?;
    }
    Ok(out)
}

/// `Alt_{2n}(Δ(l₁..l_n) ⊗ Δ(l₂..l_{n+1}) ⊗ … ⊗ Δ(l_n..l_{2n−1}))`.
pub fn build_in(n: usize) -> Result<GrassElement> {
    if n == 0 || 2 * n > usize::from(crate::tensor::MAX_LABEL) {
        return Err(Error::Contract(format!("weight {n} out of range")));
    }
    let labels: Vec<Label> = (1..=(2 * n) as Label).collect();
    let tensor = alt_tensor(n, &labels, |p| {
        let term = (0..n).map(|k| MultSymbol::Bracket(LabelSet::from_labels(&p[k..k + n]).expect("distinct"))).collect();
        MultTensor::single(term, Coeff::one())
    });
    Ok(GrassElement { n, tensor })
}

/// How the comparison constant is judged.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Only `(−1)ⁿ(n!)²` passes.
    Strict,
    /// Also accept `±(n!)²` and `±2(n!)²`, reporting which one matched.
    Mod2,
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "strict" => Ok(Mode::Strict),
            "mod2" => Ok(Mode::Mod2),
            _ => Err(Error::Parse(format!("unknown mode {s:?} (expected strict or mod2)"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// Outcome of one check, serialized as the report JSON.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub check: String,
    pub n: usize,
    pub status: Status,
    pub residue_terms: usize,
    pub witness: Option<Value>,
    pub elapsed_ms: Option<u64>,
    pub details: Value,
}

impl Report {
    fn new(check: &str, n: usize, ok: bool, residue_terms: usize, witness: Option<Value>, details: Value) -> Self {
        Report {
            check: check.to_string(),
            n,
            status: if ok { Status::Pass } else { Status::Fail },
            residue_terms,
            witness,
            elapsed_ms: None,
            details,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    fn timed(mut self, start: Instant) -> Self {
        self.elapsed_ms = Some(start.elapsed().as_millis() as u64);
        self
    }
}

/// Knobs shared by the checks.
#[derive(Clone, Debug)]
pub struct CheckOptions {
    pub mode: Mode,
    pub seed: u64,
    pub points: usize,
    /// Coefficient bound for random configurations and tangents.
    pub bound: i64,
    /// Flip the sign of one term of `I_n` before checking.
    pub mutate: bool,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions { mode: Mode::Mod2, seed: 0, points: 20, bound: 13, mutate: false }
    }
}

fn element(n: usize, opts: &CheckOptions) -> Result<GrassElement> {
    let mut e = build_in(n)?;
    if opts.mutate {
        e.tensor = e.tensor.with_flipped_term(0);
    }
    Ok(e)
}

fn factorial(n: usize) -> i64 {
    (1..=n as i64).product()
}

fn first_difference_json(a: &MultTensor, b: &MultTensor) -> Value {
    match a.terms().first_difference(b.terms()) {
        Some((term, x, y)) => json!({
            "term": term.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
            "left": coeff_to_json(&x),
            "right": coeff_to_json(&y),
        }),
        None => Value::Null,
    }
}

fn residue_json(t: &MultTensor, limit: usize) -> Value {
    let mut v = t.to_json_value();
    if let Some(terms) = v["terms"].as_array_mut() {
        terms.truncate(limit);
    }
    v
}

/// `(ν_{[n−1]} ⊗ Id)(Λ_{n−1,1})` on the labels `1..=2n`.
pub fn comparison_lhs(n: usize) -> Result<MultTensor> {
    let labels: Vec<Label> = (1..=(2 * n) as Label).collect();
    nu_bracket(&lambda_labels(&labels)?, n - 1)
}

/// Compares `(ν_{[n−1]} ⊗ Id)Λ_{n−1,1}` with `(−1)ⁿ(n!)² I_n`.
pub fn check_comparison(n: usize, opts: &CheckOptions) -> Result<Report> {
    let start = Instant::now();
    if n < 2 {
        return Err(Error::Contract("comparison needs n >= 2".into()));
    }
    let lhs = comparison_lhs(n)?;
    let rhs = element(n, opts)?.tensor;
    let f2 = factorial(n) * factorial(n);
    let sign = if n.is_multiple_of(2) { 1 } else { -1 };
    let printed = Coeff::from_integer(sign * f2);
    let candidates: Vec<(&str, Coeff)> = match opts.mode {
        Mode::Strict => vec![("(-1)^n (n!)^2", printed)],
        Mode::Mod2 => vec![
            ("(-1)^n (n!)^2", printed),
            ("-(-1)^n (n!)^2", -printed),
            ("2 (-1)^n (n!)^2", printed * 2),
            ("-2 (-1)^n (n!)^2", -printed * 2),
        ],
    };
    let ratio = lhs.ratio_to(&rhs);
    let matched = ratio.and_then(|r| candidates.iter().find(|(_, c)| *c == r));
    let expected = rhs.scaled(printed);
    let residue = lhs.sub(&expected)?;
    let witness = (matched.is_none()).then(|| first_difference_json(&lhs, &expected));
    let details = json!({
        "lhs_terms": lhs.len(),
        "rhs_terms": rhs.len(),
        "expected_constant": coeff_to_json(&printed),
        "ratio": ratio.map(|r| coeff_to_json(&r)),
        "matched_constant": matched.map(|(name, c)| json!({ "form": name, "value": coeff_to_json(c) })),
        "mode": opts.mode,
    });
    let residue_terms = if matched.is_some() { 0 } else { residue.len() };
    Ok(Report::new("comparison", n, matched.is_some(), residue_terms, witness, details).timed(start))
}

/// `Σᵢ (−1)ⁱ I_n(l₁, …, l̂ᵢ, …, l_{2n+1})`.
pub fn omission_relation(e: &GrassElement) -> Result<MultTensor> {
    alternating_omission(e, false)
}

/// `Σⱼ (−1)ʲ I_n(m_j | m₁, …, m̂ⱼ, …, m_{2n+1})`.
pub fn projected_omission_relation(e: &GrassElement) -> Result<MultTensor> {
    alternating_omission(e, true)
}

fn alternating_omission(e: &GrassElement, projected: bool) -> Result<MultTensor> {
    let total = (2 * e.n + 1) as Label;
    let parts: Vec<Result<MultTensor>> = (1..=total)
        .into_par_iter()
        .map(|i| {
            let labels: Vec<Label> = (1..=total).filter(|&x| x != i).collect();
            let t = e.on_labels(&labels, projected.then_some(i))?;
            Ok(if i % 2 == 0 { t } else { t.scaled(-Coeff::one()) })
        })
        .collect();
    let mut out = MultTensor::zero(e.n);
    for p in parts {
        out.add_scaled(&p?, Coeff::one())?;
    }
    Ok(out)
}

/// Both `(2n+1)`-term relations.
pub fn check_relations(n: usize, opts: &CheckOptions) -> Result<Vec<Report>> {
    let e = element(n, opts)?;
    let mut out = Vec::new();
    for (name, projected) in [("omission", false), ("projected_omission", true)] {
        let start = Instant::now();
        let r = alternating_omission(&e, projected)?;
        let witness = (!r.is_zero()).then(|| residue_json(&r, 5));
        out.push(Report::new(name, n, r.is_zero(), r.len(), witness, json!({ "element_terms": e.tensor.len() })).timed(start));
    }
    Ok(out)
}

/// `I_n` with each listed vector multiplied by its own named scalar, minus `I_n`.
pub fn scale_residue(e: &GrassElement, vectors: &[Label]) -> Result<MultTensor> {
    let names: Vec<MultSymbol> = (0..vectors.len()).map(|i| MultSymbol::named(&format!("a{}", i + 1))).collect();
    let mut scaled = MultTensor::zero(e.n);
    for (term, c) in e.tensor.iter() {
        let slots = term
            .iter()
            .map(|s| {
                let mut mono = vec![(s.clone(), 1)];
                if let Some(set) = s.labels() {
                    for (v, a) in vectors.iter().zip(&names) {
                        if set.contains(*v) {
                            mono.push((a.clone(), 1));
                        }
                    }
                }
                mono
            })
            .collect::<Vec<_>>();
        scaled.add_scaled(&tensor_of_slots(&slots)?, *c)?;
    }
    scaled.sub(&e.tensor)
}

/// Scale invariance in one or more vectors at once.
pub fn check_scale_invariance(n: usize, vectors: &[Label], opts: &CheckOptions) -> Result<Report> {
    let start = Instant::now();
    if vectors.is_empty() || vectors.iter().any(|&v| v == 0 || usize::from(v) > 2 * n) {
        return Err(Error::Contract(format!("scaled vectors must lie in 1..={}", 2 * n)));
    }
    let e = element(n, opts)?;
    let r = scale_residue(&e, vectors)?;
    let witness = (!r.is_zero()).then(|| residue_json(&r, 5));
    Ok(Report::new("scale", n, r.is_zero(), r.len(), witness, json!({ "vectors": vectors })).timed(start))
}

/// Scale invariance for each of the `2n` vectors separately.
pub fn check_scale_all(n: usize, opts: &CheckOptions) -> Result<Vec<Report>> {
    (1..=(2 * n) as Label).map(|v| check_scale_invariance(n, &[v], opts)).collect()
}

struct PointOutcome {
    nonzero: Option<Value>,
    resamples: usize,
}

fn integrability_point(w: &WedgeTensor, n: usize, seed: u64, index: u64, bound: i64) -> Result<PointOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    for attempt in 0..POLE_RESAMPLE_BUDGET {
        let config = random_generic(n, 2 * n, rng.gen(), bound)?;
        let u = TangentAssignment::exact(&config, random_tangent(&mut rng, 2 * n, n, bound))?;
        let v = u.with_tangent(random_tangent(&mut rng, 2 * n, n, bound))?;
        match graded_wedge_eval(w, &u, &v) {
            Err(Error::Pole { .. }) => continue,
            Err(e) => return Err(e),
            Ok(graded) => {
                let bad = graded.iter().find(|(_, val)| !val.is_zero());
                let nonzero = bad.map(|(outer, val)| {
                    json!({
                        "point": index,
                        "configuration": serde_json::from_str::<Value>(&config.to_json()).unwrap_or(Value::Null),
                        "tangent_u": u.tangent(),
                        "tangent_v": v.tangent(),
                        "outer_slots": outer.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
                        "value": val.to_string(),
                    })
                });
                return Ok(PointOutcome { nonzero, resamples: attempt });
            }
        }
    }
    Err(Error::RetryBudget { attempts: POLE_RESAMPLE_BUDGET })
}

/// Exact evaluation of the graded 2-form `wedge_project(I_n, k)` at random
/// rational points; every graded piece must vanish.
pub fn check_integrability(n: usize, k: usize, opts: &CheckOptions) -> Result<Report> {
    let start = Instant::now();
    if k == 0 || k >= n {
        return Err(Error::SlotOutOfRange { slot: k, arity: n });
    }
    let e = element(n, opts)?;
    let w = wedge_project(&e.tensor, k)?;
    let outcomes: Vec<Result<PointOutcome>> = (0..opts.points as u64)
        .into_par_iter()
        .map(|i| integrability_point(&w, n, opts.seed, i, opts.bound))
        .collect();
    let mut witness = None;
    let mut failing = 0;
    let mut resamples = 0;
    for o in outcomes {
        let o = o?;
        resamples += o.resamples;
        if let Some(wv) = o.nonzero {
            failing += 1;
            witness.get_or_insert(wv);
        }
    }
    let details = json!({
        "k": k,
        "points": opts.points,
        "bound": opts.bound,
        "seed": opts.seed,
        "wedge_terms": w.len(),
        "failing_points": failing,
        "pole_resamples": resamples,
    });
    Ok(Report::new("integrability", n, failing == 0, failing, witness, details).timed(start))
}

fn bracket(labels: &[Label]) -> MultSymbol {
    MultSymbol::bracket(labels).expect("distinct labels")
}

/// Both sides of `(1−r) ∧ r = ½ Alt₄(Δ₁₂ ∧ Δ₁₃)` with
/// `r = Δ₁₃Δ₂₄/(Δ₂₃Δ₁₄)` and `1−r = −Δ₁₂Δ₃₄/(Δ₂₃Δ₁₄)`.
pub fn delta_r_sides() -> Result<(WedgeTensor, WedgeTensor)> {
    let r = vec![(bracket(&[1, 3]), 1), (bracket(&[2, 4]), 1), (bracket(&[2, 3]), -1), (bracket(&[1, 4]), -1)];
    let one_minus_r =
        vec![(bracket(&[1, 2]), 1), (bracket(&[3, 4]), 1), (bracket(&[2, 3]), -1), (bracket(&[1, 4]), -1)];
    let lhs = wedge_project(&tensor_of_slots(&[one_minus_r, r])?, 1)?;
    let alt = alt_tensor(2, &[1, 2, 3, 4], |p| MultTensor::single(vec![bracket(&[p[0], p[1]]), bracket(&[p[0], p[2]])], Coeff::one()));
    let rhs = wedge_project(&alt, 1)?.scaled(Coeff::new(1, 2));
    Ok((lhs, rhs))
}

/// Symbolic check of the `δ{r}` identity plus exact evaluation at random
/// points, including the Plücker substitution for `1 − r`.
pub fn check_delta_r_identity(opts: &CheckOptions) -> Result<Report> {
    let start = Instant::now();
    let (lhs, rhs) = delta_r_sides()?;
    let symbolic = lhs == rhs;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut witness = None;
    let points = DELTA_R_POINTS;
    let mut evaluated = 0;
    let mut attempts = 0;
    while evaluated < points {
        attempts += 1;
        if attempts > points + POLE_RESAMPLE_BUDGET {
            return Err(Error::RetryBudget { attempts });
        }
        let config = random_generic(2, 4, rng.gen(), opts.bound)?;
        let b = |x: usize, y: usize| bracket_of(&config, &[x, y]);
        let r = b(1, 3)? * b(2, 4)? / (b(2, 3)? * b(1, 4)?);
        let s = -(b(1, 2)? * b(3, 4)?) / (b(2, 3)? * b(1, 4)?);
        let u = TangentAssignment::exact(&config, random_tangent(&mut rng, 4, 2, opts.bound))?;
        let v = u.with_tangent(random_tangent(&mut rng, 4, 2, opts.bound))?;
        let (l, rr) = match (wedge_eval(&lhs, &u, &v), wedge_eval(&rhs, &u, &v)) {
            (Ok(l), Ok(rr)) => (l, rr),
            (Err(Error::Pole { .. }), _) | (_, Err(Error::Pole { .. })) => continue,
            (Err(e), _) | (_, Err(e)) => return Err(e),
        };
        evaluated += 1;
        if (ExactScalar::one() - r.clone() != s || l != rr) && witness.is_none() {
            witness = Some(json!({
                "configuration": serde_json::from_str::<Value>(&config.to_json()).unwrap_or(Value::Null),
                "r": r.to_string(),
                "lhs": l.to_string(),
                "rhs": rr.to_string(),
            }));
        }
    }
    let ok = symbolic && witness.is_none();
    let details = json!({ "symbolic_equal": symbolic, "points": points, "terms": rhs.len() });
    let residue = if symbolic { 0 } else { lhs.terms().len().max(rhs.terms().len()) };
    Ok(Report::new("deltar", 2, ok, residue, witness, details).timed(start))
}

/// `ν_{[n]}` of every additivity-type sum at weight `n`, and the
/// `(2n+1)`-term sum of `Λ_{n−1,1}` pushed through `ν_{[n−1]} ⊗ Id`.
pub fn check_coproduct_relations(n: usize) -> Result<Vec<Report>> {
    let w = n as Label;
    let l: Vec<Label> = (1..=w + 2).collect();
    let m: Vec<Label> = (11..=11 + w).collect();
    let l_short: Vec<Label> = (1..=w + 1).collect();
    let m_long: Vec<Label> = (11..=12 + w).collect();
    let cases: [(&str, Side, bool, &[Label], &[Label]); 4] = [
        ("additivity_l", Side::L, false, &l, &m),
        ("additivity_m", Side::M, false, &l_short, &m_long),
        ("dual_additivity_l", Side::L, true, &l, &m),
        ("dual_additivity_m", Side::M, true, &l_short, &m_long),
    ];
    let mut out = Vec::new();
    for (name, side, dual, ls, ms) in cases {
        let start = Instant::now();
        let sum = additivity_sum(side, dual, ls, ms)?;
        let image = nu_bracket(&sum, n)?;
        let witness = (!image.is_zero()).then(|| residue_json(&image, 5));
        out.push(Report::new(name, n, image.is_zero(), image.len(), witness, json!({ "input_terms": sum.len() })).timed(start));
    }
    if n >= 2 {
        let start = Instant::now();
        let image = lambda_omission_image(n)?;
        let witness = (!image.is_zero()).then(|| residue_json(&image, 5));
        out.push(Report::new("lambda_relation", n, image.is_zero(), image.len(), witness, json!({})).timed(start));
    }
    Ok(out)
}

/// `(ν_{[n−1]} ⊗ Id) Σᵢ (−1)ⁱ Λ_{n−1,1}(l₁, …, l̂ᵢ, …, l_{2n+1})`.
pub fn lambda_omission_image(n: usize) -> Result<MultTensor> {
    let total = (2 * n + 1) as Label;
    let mut sum = AomotoExpr::zero(2);
    for i in 1..=total {
        let labels: Vec<Label> = (1..=total).filter(|&x| x != i).collect();
        let sign = if i % 2 == 0 { Coeff::one() } else { -Coeff::one() };
        sum.add_scaled(&lambda_labels(&labels)?, sign)?;
    }
    nu_bracket(&sum, n - 1)
}

/// Every check for weight `n`, in a fixed order.
pub fn check_all(n: usize, opts: &CheckOptions) -> Result<Vec<Report>> {
    let mut out = vec![check_comparison(n, opts)?];
    out.extend(check_relations(n, opts)?);
    out.extend(check_scale_all(n, opts)?);
    for k in 1..n {
        out.push(check_integrability(n, k, opts)?);
    }
    out.extend(check_coproduct_relations(n)?);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts() -> CheckOptions {
        CheckOptions::default()
    }

    #[test]
    fn i1_is_a_difference() {
        let e = build_in(1).unwrap();
        assert_eq!(e.tensor().len(), 2);
        assert_eq!(e.tensor().terms().get(&vec![bracket(&[1])]), Coeff::one());
        assert_eq!(e.tensor().terms().get(&vec![bracket(&[2])]), -Coeff::one());
    }

    #[test]
    fn term_counts() {
        assert_eq!(build_in(2).unwrap().tensor().len(), 24);
        assert_eq!(build_in(3).unwrap().tensor().len(), 720);
    }

    #[test]
    fn in_is_alternating() {
        let e = build_in(2).unwrap();
        let swapped = e.on_labels(&[2, 1, 3, 4], None).unwrap();
        assert_eq!(swapped, e.tensor().scaled(-Coeff::one()));
    }

    #[test]
    fn comparison_n2() {
        let r = check_comparison(2, &opts()).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.details["ratio"], json!(4));
        let strict = check_comparison(2, &CheckOptions { mode: Mode::Strict, ..opts() }).unwrap();
        assert!(strict.passed());
    }

    #[test]
    fn relations_n2() {
        for r in check_relations(2, &opts()).unwrap() {
            assert!(r.passed(), "{r:?}");
        }
    }

    #[test]
    fn scale_n2_single_and_double() {
        for r in check_scale_all(2, &opts()).unwrap() {
            assert!(r.passed(), "{r:?}");
        }
        assert!(check_scale_invariance(2, &[1, 3], &opts()).unwrap().passed());
    }

    #[test]
    fn integrability_n2_and_mutation() {
        assert!(check_integrability(2, 1, &CheckOptions { points: 5, ..opts() }).unwrap().passed());
        let bad = check_integrability(2, 1, &CheckOptions { points: 5, mutate: true, ..opts() }).unwrap();
        assert!(!bad.passed());
        assert!(bad.witness.is_some());
    }

    #[test]
    fn mutation_breaks_comparison() {
        let r = check_comparison(2, &CheckOptions { mutate: true, ..opts() }).unwrap();
        assert!(!r.passed());
        assert!(r.witness.is_some());
    }

    #[test]
    fn delta_r_identity_and_half() {
        let r = check_delta_r_identity(&opts()).unwrap();
        assert!(r.passed(), "{r:?}");
        let (lhs, rhs) = delta_r_sides().unwrap();
        assert_ne!(lhs, rhs.scaled(Coeff::from_integer(2)));
    }

    #[test]
    fn coproduct_relations_n2() {
        for r in check_coproduct_relations(2).unwrap() {
            assert!(r.passed(), "{r:?}");
        }
    }

    #[test]
    fn prepend_center_adds_label() {
        let t = MultTensor::single(vec![bracket(&[1, 2])], Coeff::one());
        let p = prepend_center(&t, 5).unwrap();
        assert_eq!(p.terms().get(&vec![bracket(&[1, 2, 5])]), Coeff::one());
    }
}

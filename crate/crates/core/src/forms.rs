//! Evaluation of `d log` of bracket monomials, and of wedged pairs of them,
//! on tangent vectors to configuration space.
//!
//! Everything is generic over [`Field`], so rational inputs give exact
//! answers and complex floating inputs give approximate ones.

use std::collections::{BTreeMap, HashMap};

use num_complex::Complex64;
use rand::Rng;

use crate::configuration::Configuration;
use crate::error::{Error, Result};
use crate::exact::{determinant, ExactScalar, Field};
use crate::tensor::{Coeff, LabelSet, MultSymbol, MultTensor, Term, WedgeTensor};

/// A base configuration together with one tangent direction.
#[derive(Clone, Debug, PartialEq)]
pub struct TangentAssignment<S> {
    base: Vec<Vec<S>>,
    tangent: Vec<Vec<S>>,
}

impl<S: Field> TangentAssignment<S> {
    pub fn new(base: Vec<Vec<S>>, tangent: Vec<Vec<S>>) -> Result<Self> {
        if base.len() != tangent.len() {
            return Err(Error::SizeMismatch { expected: base.len(), got: tangent.len() });
        }
        for (b, t) in base.iter().zip(&tangent) {
            if b.len() != t.len() || b.len() != base[0].len() {
                return Err(Error::SizeMismatch { expected: base[0].len(), got: t.len() });
            }
        }
        Ok(TangentAssignment { base, tangent })
    }

    pub fn dim(&self) -> usize {
        self.base.first().map_or(0, Vec::len)
    }

    pub fn base(&self) -> &[Vec<S>] {
        &self.base
    }

    pub fn tangent(&self) -> &[Vec<S>] {
        &self.tangent
    }

    /// Same base, different tangent.
    pub fn with_tangent(&self, tangent: Vec<Vec<S>>) -> Result<Self> {
        TangentAssignment::new(self.base.clone(), tangent)
    }
}

impl TangentAssignment<ExactScalar> {
    pub fn exact(config: &Configuration, tangent: Vec<Vec<ExactScalar>>) -> Result<Self> {
        TangentAssignment::new(config.vectors().to_vec(), tangent)
    }

    pub fn to_complex(&self) -> TangentAssignment<Complex64> {
        let conv = |m: &[Vec<ExactScalar>]| m.iter().map(|r| r.iter().map(ExactScalar::to_complex).collect()).collect();
        TangentAssignment { base: conv(&self.base), tangent: conv(&self.tangent) }
    }
}

/// Random integer tangent matrix of the given shape with entries in
/// `[-bound, bound]`.
pub fn random_tangent(rng: &mut impl Rng, rows: usize, dim: usize, bound: i64) -> Vec<Vec<ExactScalar>> {
    (0..rows)
        .map(|_| (0..dim).map(|_| ExactScalar::from_integer(rng.gen_range(-bound..=bound))).collect())
        .collect()
}

fn rows_of<S: Clone>(m: &[Vec<S>], labels: LabelSet) -> Result<Vec<Vec<S>>> {
    labels
        .iter()
        .map(|l| {
            m.get(usize::from(l) - 1)
                .cloned()
                .ok_or(Error::IndexOutOfRange { index: usize::from(l), count: m.len() })
        })
        .collect()
}

/// Value of the bracket `Δ(labels)` at the base point, labels in ascending order.
pub fn bracket_value<S: Field>(labels: LabelSet, at: &TangentAssignment<S>) -> Result<S> {
    if labels.len() != at.dim() {
        return Err(Error::SizeMismatch { expected: at.dim(), got: labels.len() });
    }
    Ok(determinant(&rows_of(&at.base, labels)?))
}

/// `d log Δ` along the tangent: the sum over single-row replacements of
/// the determinant, divided by the determinant. Named symbols are constants.
pub fn dlog_eval<S: Field>(symbol: &MultSymbol, at: &TangentAssignment<S>) -> Result<S> {
    let MultSymbol::Bracket(labels) = symbol else {
        return Ok(S::zero());
    };
    let rows = rows_of(&at.base, *labels)?;
    if rows.len() != at.dim() {
        return Err(Error::SizeMismatch { expected: at.dim(), got: rows.len() });
    }
    let det = determinant(&rows);
    if det.is_zero() {
        return Err(Error::Pole { symbol: symbol.to_string(), at: None });
    }
    let tan = rows_of(&at.tangent, *labels)?;
    let mut deriv = S::zero();
    for i in 0..rows.len() {
        let mut m = rows.clone();
        m[i] = tan[i].clone();
        deriv = deriv + determinant(&m);
    }
    Ok(deriv / det)
}

/// Memoized `d log` values for one tangent assignment.
struct DlogCache<'a, S> {
    at: &'a TangentAssignment<S>,
    values: HashMap<MultSymbol, S>,
}

impl<'a, S: Field> DlogCache<'a, S> {
    fn new(at: &'a TangentAssignment<S>) -> Self {
        DlogCache { at, values: HashMap::new() }
    }

    fn get(&mut self, s: &MultSymbol) -> Result<S> {
        if let Some(v) = self.values.get(s) {
            return Ok(v.clone());
        }
        let v = dlog_eval(s, self.at)?;
        self.values.insert(s.clone(), v.clone());
        Ok(v)
    }
}

fn coeff_in<S: Field>(c: &Coeff) -> S {
    S::from_ratio(*c.numer(), *c.denom())
}

/// `coeff · d log(slot k)` for every term of `t`, in canonical term order.
pub fn tensor_slot_eval<S: Field>(t: &MultTensor, slot: usize, at: &TangentAssignment<S>) -> Result<Vec<(Term, S)>> {
    if slot == 0 || slot > t.arity() {
        return Err(Error::SlotOutOfRange { slot, arity: t.arity() });
    }
    let mut cache = DlogCache::new(at);
    t.iter()
        .map(|(term, c)| Ok((term.clone(), coeff_in::<S>(c) * cache.get(&term[slot - 1])?)))
        .collect()
}

/// Pairing of the wedged slots against `(u, v)`:
/// `Σ c · (ω_a(u) ω_b(v) − ω_a(v) ω_b(u))`, other slots ignored.
pub fn wedge_eval<S: Field>(w: &WedgeTensor, u: &TangentAssignment<S>, v: &TangentAssignment<S>) -> Result<S> {
    Ok(graded_wedge_eval(w, u, v)?.into_values().fold(S::zero(), |a, b| a + b))
}

/// The wedge pairing split by the tuple of outer-slot symbols. The element
/// vanishes at the point only if every graded piece does.
pub fn graded_wedge_eval<S: Field>(
    w: &WedgeTensor,
    u: &TangentAssignment<S>,
    v: &TangentAssignment<S>,
) -> Result<BTreeMap<Term, S>> {
    if u.base != v.base {
        return Err(Error::Contract("tangent pair must share a base point".into()));
    }
    let k = w.pair() - 1;
    let (mut cu, mut cv) = (DlogCache::new(u), DlogCache::new(v));
    let mut out: BTreeMap<Term, S> = BTreeMap::new();
    for (term, c) in w.terms().iter() {
        let (a, b) = (&term[k], &term[k + 1]);
        let val = cu.get(a)? * cv.get(b)? - cv.get(a)? * cu.get(b)?;
        let outer: Term = term.iter().enumerate().filter(|&(i, _)| i != k && i != k + 1).map(|(_, s)| s.clone()).collect();
        let e = out.entry(outer).or_insert_with(S::zero);
        *e = e.clone() + coeff_in::<S>(c) * val;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::configuration::random_generic;
    use crate::tensor::{tensor_of_slots, wedge_project};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q(n: i64) -> ExactScalar {
        ExactScalar::from_integer(n)
    }

    fn d(l: &[u8]) -> MultSymbol {
        MultSymbol::bracket(l).unwrap()
    }

    fn ident() -> Vec<Vec<ExactScalar>> {
        vec![vec![q(1), q(0)], vec![q(0), q(1)]]
    }

    #[test]
    fn dlog_at_identity() {
        let zero = vec![vec![q(0), q(0)]; 2];
        let at = TangentAssignment::new(ident(), zero).unwrap();
        assert_eq!(dlog_eval(&d(&[1, 2]), &at).unwrap(), q(0));
        let at = TangentAssignment::new(ident(), ident()).unwrap();
        assert_eq!(dlog_eval(&d(&[1, 2]), &at).unwrap(), q(2));
        assert_eq!(dlog_eval(&MultSymbol::named("a"), &at).unwrap(), q(0));
    }

    #[test]
    fn dlog_pole_names_the_bracket() {
        let base = vec![vec![q(1), q(0)], vec![q(2), q(0)]];
        let at = TangentAssignment::new(base, ident()).unwrap();
        match dlog_eval(&d(&[1, 2]), &at) {
            Err(Error::Pole { symbol, .. }) => assert_eq!(symbol, "D[1,2]"),
            other => panic!("expected pole, got {other:?}"),
        }
    }

    #[test]
    fn dlog_matches_finite_differences() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for seed in 0..10 {
            let config = random_generic(3, 5, seed, 7).unwrap();
            let at = TangentAssignment::exact(&config, random_tangent(&mut rng, 5, 3, 5)).unwrap();
            let atc = at.to_complex();
            for s in [d(&[1, 2, 3]), d(&[2, 4, 5])] {
                let exact = dlog_eval(&s, &at).unwrap().to_complex();
                let eps = 1e-6;
                let shifted = |sgn: f64| {
                    let base: Vec<Vec<Complex64>> = atc
                        .base()
                        .iter()
                        .zip(atc.tangent())
                        .map(|(b, t)| b.iter().zip(t).map(|(x, y)| x + y * (sgn * eps)).collect())
                        .collect();
                    let a = TangentAssignment::new(base, atc.tangent().to_vec()).unwrap();
                    bracket_value(s.labels().unwrap(), &a).unwrap().norm().ln()
                };
                let fd = (shifted(1.0) - shifted(-1.0)) / (2.0 * eps);
                assert!((fd - exact.re).abs() < 1e-8 * (1.0 + fd.abs()), "{fd} vs {exact}");
            }
        }
    }

    #[test]
    fn product_symbol_is_additive() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let config = random_generic(2, 4, 5, 9).unwrap();
        let at = TangentAssignment::exact(&config, random_tangent(&mut rng, 4, 2, 4)).unwrap();
        let t = tensor_of_slots(&[vec![(d(&[1, 2]), 1), (d(&[3, 4]), -2)]]).unwrap();
        let total = tensor_slot_eval(&t, 1, &at).unwrap().into_iter().fold(q(0), |a, (_, v)| a + v);
        let expect = dlog_eval(&d(&[1, 2]), &at).unwrap() - q(2) * dlog_eval(&d(&[3, 4]), &at).unwrap();
        assert_eq!(total, expect);
    }

    #[test]
    fn wedge_pairing_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let config = random_generic(2, 3, 8, 9).unwrap();
        let u = TangentAssignment::exact(&config, random_tangent(&mut rng, 3, 2, 4)).unwrap();
        let v = u.with_tangent(random_tangent(&mut rng, 3, 2, 4)).unwrap();
        let t = MultTensor::single(vec![d(&[1, 2]), d(&[1, 3])], Coeff::from_integer(1));
        let w = wedge_project(&t, 1).unwrap();
        let got = wedge_eval(&w, &u, &v).unwrap();
        let (a, b) = (d(&[1, 2]), d(&[1, 3]));
        let det = dlog_eval(&a, &u).unwrap() * dlog_eval(&b, &v).unwrap()
            - dlog_eval(&a, &v).unwrap() * dlog_eval(&b, &u).unwrap();
        assert_eq!(got, det);
        assert_eq!(wedge_eval(&w, &v, &u).unwrap(), -got);

        let aa = wedge_project(&MultTensor::single(vec![a.clone(), a], Coeff::from_integer(1)), 1).unwrap();
        assert_eq!(wedge_eval(&aa, &u, &v).unwrap(), q(0));
    }
}

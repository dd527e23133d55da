//! Elements of `⊗ⁿ F*` modulo 2-torsion.
//!
//! A [`MultSymbol`] is a multiplicative generator: either a bracket on a set
//! of labels or an opaque named scalar. Bracket symbols forget the order of
//! their labels, which is exactly the statement that signs are 2-torsion.
//! A [`MultTensor`] is a fully expanded integer (in general rational)
//! combination of tuples of symbols, kept in a canonical sorted map.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_rational::Rational64;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Deserialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::perm::for_each_permutation_with_head;

/// Vector labels are small positive integers.
pub type Label = u8;

/// Exact coefficient of a term.
pub type Coeff = Rational64;

pub const MAX_LABEL: Label = 63;

/// A set of labels stored as a bitmask. Ordered lexicographically as the
/// sorted list of its elements.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct LabelSet(u64);

impl LabelSet {
    pub fn empty() -> Self {
        LabelSet(0)
    }

    /// Builds a set, rejecting repeated labels.
    pub fn from_labels(labels: &[Label]) -> Option<Self> {
        let mut mask = 0u64;
        for &l in labels {
            assert!((1..=MAX_LABEL).contains(&l), "label {l} out of range");
            let bit = 1u64 << l;
            if mask & bit != 0 {
                return None;
            }
            mask |= bit;
        }
        Some(LabelSet(mask))
    }

    pub fn contains(&self, l: Label) -> bool {
        self.0 & (1u64 << l) != 0
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = Label> + '_ {
        let mut m = self.0;
        std::iter::from_fn(move || {
            if m == 0 {
                None
            } else {
                let l = m.trailing_zeros() as Label;
                m &= m - 1;
                Some(l)
            }
        })
    }

    pub fn labels(&self) -> Vec<Label> {
        self.iter().collect()
    }

    /// Image under a relabeling; `None` if two labels collide.
    pub fn map(&self, f: impl Fn(Label) -> Label) -> Option<Self> {
        LabelSet::from_labels(&self.iter().map(f).collect::<Vec<_>>())
    }
}

impl Ord for LabelSet {
    fn cmp(&self, other: &Self) -> Ordering {
        let (mut a, mut b) = (self.0, other.0);
        loop {
            match (a == 0, b == 0) {
                (true, true) => return Ordering::Equal,
                (true, false) => return Ordering::Less,
                (false, true) => return Ordering::Greater,
                _ => {}
            }
            let (la, lb) = (a.trailing_zeros(), b.trailing_zeros());
            if la != lb {
                return la.cmp(&lb);
            }
            a &= a - 1;
            b &= b - 1;
        }
    }
}

impl PartialOrd for LabelSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for LabelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.labels())
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MultSymbol {
    Bracket(LabelSet),
    Named(Arc<str>),
}

impl MultSymbol {
    /// Bracket on the given labels in any order.
    pub fn bracket(labels: &[Label]) -> Result<Self> {
        LabelSet::from_labels(labels)
            .map(MultSymbol::Bracket)
            .ok_or_else(|| Error::DegenerateBracket(format!("{labels:?}")))
    }

    pub fn named(name: &str) -> Self {
        MultSymbol::Named(Arc::from(name))
    }

    pub fn labels(&self) -> Option<LabelSet> {
        match self {
            MultSymbol::Bracket(s) => Some(*s),
            MultSymbol::Named(_) => None,
        }
    }

    pub fn relabel(&self, f: impl Fn(Label) -> Label) -> Option<Self> {
        match self {
            MultSymbol::Bracket(s) => s.map(f).map(MultSymbol::Bracket),
            MultSymbol::Named(_) => Some(self.clone()),
        }
    }
}

impl fmt::Display for MultSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MultSymbol::Bracket(s) => {
                let parts: Vec<String> = s.iter().map(|l| l.to_string()).collect();
                write!(f, "D[{}]", parts.join(","))
            }
            MultSymbol::Named(n) => write!(f, "{n}"),
        }
    }
}

impl fmt::Debug for MultSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl std::str::FromStr for MultSymbol {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(body) = s.strip_prefix("D[").and_then(|b| b.strip_suffix(']')) {
            let labels = body
                .split(',')
                .map(|x| x.trim().parse::<Label>().ok().filter(|&l| (1..=MAX_LABEL).contains(&l)))
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| Error::Parse(format!("bad bracket symbol {s:?}")))?;
            MultSymbol::bracket(&labels)
        } else if !s.is_empty() && s.chars().all(|c| c.is_alphanumeric() || c == '_') {
            Ok(MultSymbol::named(s))
        } else {
            Err(Error::Parse(format!("bad symbol {s:?}")))
        }
    }
}

/// A formal multiplicative monomial `∏ sᵢ^eᵢ`.
pub type Monomial = Vec<(MultSymbol, i64)>;

/// Sparse rational linear combination with canonical (sorted) key order and
/// no zero coefficients.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct LinComb<K: Ord> {
    terms: BTreeMap<K, Coeff>,
}

impl<K: Ord + Clone> LinComb<K> {
    pub fn new() -> Self {
        LinComb { terms: BTreeMap::new() }
    }

    pub fn single(key: K, c: Coeff) -> Self {
        let mut out = LinComb::new();
        out.add_term(key, c);
        out
    }

    pub fn add_term(&mut self, key: K, c: Coeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let v = *e.get() + c;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &LinComb<K>, c: Coeff) {
        if c.is_zero() {
            return;
        }
        for (k, v) in &other.terms {
            self.add_term(k.clone(), *v * c);
        }
    }

    pub fn merge(&mut self, other: LinComb<K>) {
        if self.terms.len() < other.terms.len() {
            let mine = std::mem::replace(self, other);
            self.merge(mine);
            return;
        }
        for (k, v) in other.terms {
            self.add_term(k, v);
        }
    }

    pub fn scaled(&self, c: Coeff) -> Self {
        if c.is_zero() {
            return LinComb::new();
        }
        LinComb { terms: self.terms.iter().map(|(k, v)| (k.clone(), *v * c)).collect() }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &Coeff)> {
        self.terms.iter()
    }

    pub fn get(&self, key: &K) -> Coeff {
        self.terms.get(key).copied().unwrap_or_else(Coeff::zero)
    }

    pub fn first(&self) -> Option<(&K, &Coeff)> {
        self.terms.iter().next()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (K, Coeff)> {
        self.terms.into_iter()
    }

    /// Returns `c` with `self = c · other`, if such a rational exists.
    pub fn ratio_to(&self, other: &LinComb<K>) -> Option<Coeff> {
        let (k, v) = other.first()?;
        let c = self.get(k) / *v;
        (self.len() == other.len() && other.iter().all(|(k, v)| self.get(k) == *v * c)).then_some(c)
    }

    /// First key (in canonical order) where `self` and `other` disagree.
    pub fn first_difference(&self, other: &LinComb<K>) -> Option<(K, Coeff, Coeff)> {
        let mut keys: Vec<&K> = self.terms.keys().chain(other.terms.keys()).collect();
        keys.sort();
        keys.dedup();
        keys.into_iter()
            .map(|k| (k, self.get(k), other.get(k)))
            .find(|(_, a, b)| a != b)
            .map(|(k, a, b)| (k.clone(), a, b))
    }
}

impl<K: Ord + Clone> FromIterator<(K, Coeff)> for LinComb<K> {
    fn from_iter<I: IntoIterator<Item = (K, Coeff)>>(iter: I) -> Self {
        let mut out = LinComb::new();
        for (k, c) in iter {
            out.add_term(k, c);
        }
        out
    }
}

impl<K: Ord + fmt::Debug> fmt::Debug for LinComb<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter().map(|(k, v)| (k, v.to_string()))).finish()
    }
}

/// Alternation `Σ_σ sgn(σ) template(σ(labels))` over all orderings of
/// `labels` (which must be sorted ascending).
///
/// Permutations are streamed in chunks sharing their first letter and the
/// chunks are merged in a fixed order, so the result does not depend on the
/// number of worker threads.
pub fn alt<K, F>(labels: &[Label], template: F) -> LinComb<K>
where
    K: Ord + Clone + Send,
    F: Fn(&[Label]) -> LinComb<K> + Sync,
{
    debug_assert!(labels.windows(2).all(|w| w[0] < w[1]));
    if labels.is_empty() {
        return template(labels);
    }
    let chunks: Vec<LinComb<K>> = (0..labels.len())
        .into_par_iter()
        .map(|first| {
            let mut acc = LinComb::new();
            for_each_permutation_with_head(labels, first, |p, s| {
                acc.add_scaled(&template(p), Coeff::from_integer(s as i64));
            });
            acc
        })
        .collect();
    let mut out = LinComb::new();
    for c in chunks {
        out.merge(c);
    }
    out
}

/// Two-group alternation `Alt_{p,q}`: independent alternation of two disjoint
/// sorted label groups.
pub fn alt_groups<K, F>(first: &[Label], second: &[Label], template: F) -> LinComb<K>
where
    K: Ord + Clone + Send,
    F: Fn(&[Label], &[Label]) -> LinComb<K> + Sync,
{
    alt(first, |p| alt(second, |q| template(p, q)))
}

pub type Term = Vec<MultSymbol>;

/// Canonical element of `⊗^arity F*` (mod 2-torsion).
#[derive(Clone, PartialEq, Eq)]
pub struct MultTensor {
    arity: usize,
    terms: LinComb<Term>,
}

impl MultTensor {
    pub fn zero(arity: usize) -> Self {
        MultTensor { arity, terms: LinComb::new() }
    }

    /// Wraps a combination whose keys all have length `arity`.
    pub fn from_terms(arity: usize, terms: LinComb<Term>) -> Result<Self> {
        if let Some((t, _)) = terms.iter().find(|(t, _)| t.len() != arity) {
            return Err(Error::ArityMismatch { left: arity, right: t.len() });
        }
        Ok(MultTensor { arity, terms })
    }

    pub fn single(term: Term, c: Coeff) -> Self {
        MultTensor { arity: term.len(), terms: LinComb::single(term, c) }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn terms(&self) -> &LinComb<Term> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Term, &Coeff)> {
        self.terms.iter()
    }

    pub fn scaled(&self, c: Coeff) -> Self {
        MultTensor { arity: self.arity, terms: self.terms.scaled(c) }
    }

    pub fn add_scaled(&mut self, other: &MultTensor, c: Coeff) -> Result<()> {
        if other.arity != self.arity {
            return Err(Error::ArityMismatch { left: self.arity, right: other.arity });
        }
        self.terms.add_scaled(&other.terms, c);
        Ok(())
    }

    pub fn sub(&self, other: &MultTensor) -> Result<MultTensor> {
        let mut out = self.clone();
        out.add_scaled(other, -Coeff::one())?;
        Ok(out)
    }

    /// Canonical equality; arities must agree.
    pub fn equal(&self, other: &MultTensor) -> Result<bool> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch { left: self.arity, right: other.arity });
        }
        Ok(self.terms == other.terms)
    }

    /// `Some(c)` when `self = c · other` exactly.
    pub fn ratio_to(&self, other: &MultTensor) -> Option<Coeff> {
        if self.arity != other.arity {
            return None;
        }
        if other.is_zero() {
            return self.is_zero().then(Coeff::zero);
        }
        self.terms.ratio_to(&other.terms)
    }

    /// Apply a relabeling to every bracket; terms whose brackets collapse are
    /// dropped (they are not elements of F*).
    pub fn relabel(&self, f: impl Fn(Label) -> Label + Copy) -> MultTensor {
        let terms = self
            .terms
            .iter()
            .filter_map(|(t, c)| t.iter().map(|s| s.relabel(f)).collect::<Option<Term>>().map(|t| (t, *c)))
            .collect();
        MultTensor { arity: self.arity, terms }
    }

    /// Every symbol occurring anywhere in the tensor, sorted.
    pub fn symbols(&self) -> Vec<MultSymbol> {
        let mut out: Vec<MultSymbol> = self.terms.iter().flat_map(|(t, _)| t.iter().cloned()).collect();
        out.sort();
        out.dedup();
        out
    }

    /// Copy with the sign of the `index`-th canonical term flipped.
    pub fn with_flipped_term(&self, index: usize) -> MultTensor {
        let mut out = self.clone();
        if let Some((t, c)) = self.terms.iter().nth(index) {
            out.terms.add_term(t.clone(), -*c * Coeff::from_integer(2));
        }
        out
    }

    pub fn to_json_value(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(t, c)| {
                let slots: Vec<Vec<String>> = t.iter().map(|s| vec![s.to_string()]).collect();
                serde_json::json!({ "coeff": coeff_to_json(c), "slots": slots })
            })
            .collect();
        serde_json::json!({ "arity": self.arity, "terms": terms })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("tensor serializes")
    }

    pub fn from_json(s: &str) -> Result<MultTensor> {
        #[derive(Deserialize)]
        struct RawTerm {
            coeff: Value,
            slots: Vec<Vec<String>>,
        }
        #[derive(Deserialize)]
        struct Raw {
            arity: usize,
            terms: Vec<RawTerm>,
        }
        let raw: Raw = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        let mut out = MultTensor::zero(raw.arity);
        for t in raw.terms {
            let c = coeff_from_json(&t.coeff)?;
            let slots = t
                .slots
                .iter()
                .map(|slot| slot.iter().map(|s| Ok((s.parse::<MultSymbol>()?, 1))).collect::<Result<Monomial>>())
                .collect::<Result<Vec<_>>>()?;
            out.add_scaled(&tensor_of_slots(&slots)?, c)?;
        }
        Ok(out)
    }
}

impl fmt::Debug for MultTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultTensor[{}]", self.arity)?;
        self.terms.fmt(f)
    }
}

pub fn coeff_to_json(c: &Coeff) -> Value {
    if c.is_integer() {
        Value::from(*c.numer())
    } else {
        Value::from(format!("{}/{}", c.numer(), c.denom()))
    }
}

pub fn coeff_from_json(v: &Value) -> Result<Coeff> {
    let bad = || Error::Parse(format!("bad coefficient {v}"));
    match v {
        Value::Number(n) => n.as_i64().map(Coeff::from_integer).ok_or_else(bad),
        Value::String(s) => match s.split_once('/') {
            Some((a, b)) => {
                let (a, b): (i64, i64) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
                if b == 0 {
                    return Err(bad());
                }
                Ok(Coeff::new(a, b))
            }
            None => s.trim().parse().map(Coeff::from_integer).map_err(|_| bad()),
        },
        _ => Err(bad()),
    }
}

/// Expand `m₁ ⊗ m₂ ⊗ …` multi-additively into a canonical tensor.
pub fn tensor_of_slots(slots: &[Monomial]) -> Result<MultTensor> {
    if let Some(k) = slots.iter().position(Vec::is_empty) {
        return Err(Error::EmptySlot(k + 1));
    }
    let mut partial: Vec<(Term, Coeff)> = vec![(Vec::with_capacity(slots.len()), Coeff::one())];
    for slot in slots {
        // merge repeated symbols within the slot first
        let mut exps: BTreeMap<&MultSymbol, i64> = BTreeMap::new();
        for (s, e) in slot {
            *exps.entry(s).or_default() += e;
        }
        let exps: Vec<(&MultSymbol, i64)> = exps.into_iter().filter(|&(_, e)| e != 0).collect();
        let mut next = Vec::with_capacity(partial.len() * exps.len());
        for (t, c) in &partial {
            for &(s, e) in &exps {
                let mut t2 = t.clone();
                t2.push(s.clone());
                next.push((t2, *c * Coeff::from_integer(e)));
            }
        }
        partial = next;
    }
    Ok(MultTensor { arity: slots.len(), terms: partial.into_iter().collect() })
}

/// `Σ_σ sgn(σ)·template(σ(labels))` for tensors.
pub fn alt_tensor<F>(arity: usize, labels: &[Label], template: F) -> MultTensor
where
    F: Fn(&[Label]) -> MultTensor + Sync,
{
    MultTensor { arity, terms: alt(labels, |p| template(p).terms) }
}

/// A tensor in which slots `pair` and `pair + 1` (1-based) are wedged:
/// an element of `⊗^{k−1} ⊗ Λ² ⊗ ⊗^{n−k−1}`.
#[derive(Clone, PartialEq, Eq)]
pub struct WedgeTensor {
    arity: usize,
    pair: usize,
    terms: LinComb<Term>,
}

impl WedgeTensor {
    pub fn arity(&self) -> usize {
        self.arity
    }

    /// 1-based index of the first wedged slot.
    pub fn pair(&self) -> usize {
        self.pair
    }

    pub fn terms(&self) -> &LinComb<Term> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scaled(&self, c: Coeff) -> Self {
        WedgeTensor { arity: self.arity, pair: self.pair, terms: self.terms.scaled(c) }
    }

    /// Copy with the sign of the `index`-th canonical term flipped.
    pub fn with_flipped_term(&self, index: usize) -> WedgeTensor {
        let mut out = self.clone();
        if let Some((t, c)) = self.terms.iter().nth(index) {
            out.terms.add_term(t.clone(), -*c * Coeff::from_integer(2));
        }
        out
    }
}

impl fmt::Debug for WedgeTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WedgeTensor[{}; {}∧{}]", self.arity, self.pair, self.pair + 1)?;
        self.terms.fmt(f)
    }
}

/// Antisymmetrize slots `k, k+1` (1-based): `a ⊗ b ↦ a ∧ b`.
pub fn wedge_project(t: &MultTensor, k: usize) -> Result<WedgeTensor> {
    if k == 0 || k >= t.arity {
        return Err(Error::SlotOutOfRange { slot: k, arity: t.arity });
    }
    let (i, j) = (k - 1, k);
    let mut terms = LinComb::new();
    for (term, c) in t.iter() {
        match term[i].cmp(&term[j]) {
            Ordering::Equal => {}
            Ordering::Less => terms.add_term(term.clone(), *c),
            Ordering::Greater => {
                let mut swapped = term.clone();
                swapped.swap(i, j);
                terms.add_term(swapped, -*c);
            }
        }
    }
    Ok(WedgeTensor { arity: t.arity, pair: k, terms })
}

/// Largest absolute coefficient, useful in reports.
pub fn max_abs_coeff(t: &LinComb<Term>) -> Coeff {
    t.iter().map(|(_, c)| c.abs()).max().unwrap_or_else(Coeff::zero)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(labels: &[Label]) -> MultSymbol {
        MultSymbol::bracket(labels).unwrap()
    }

    fn sym(name: &str) -> MultSymbol {
        MultSymbol::named(name)
    }

    fn mono(s: &[(MultSymbol, i64)]) -> Monomial {
        s.to_vec()
    }

    fn one(i: i64) -> Coeff {
        Coeff::from_integer(i)
    }

    #[test]
    fn label_set_order_is_lexicographic() {
        let a = LabelSet::from_labels(&[1, 3]).unwrap();
        let b = LabelSet::from_labels(&[1, 2, 5]).unwrap();
        let c = LabelSet::from_labels(&[1]).unwrap();
        assert!(b < a);
        assert!(c < b);
        assert!(LabelSet::from_labels(&[2, 2]).is_none());
    }

    #[test]
    fn bracket_symbols_forget_order() {
        assert_eq!(d(&[3, 1, 2]), d(&[1, 2, 3]));
        assert_eq!(d(&[2, 4]).to_string(), "D[2,4]");
        assert!(MultSymbol::bracket(&[1, 1]).is_err());
        assert_eq!("D[4,2]".parse::<MultSymbol>().unwrap(), d(&[2, 4]));
        assert_eq!("a".parse::<MultSymbol>().unwrap(), sym("a"));
        assert!("D[1,x]".parse::<MultSymbol>().is_err());
    }

    #[test]
    fn slot_expansion_examples() {
        let (a, b, c) = (sym("a"), sym("b"), sym("c"));
        let t = tensor_of_slots(&[mono(&[(a.clone(), 1)]), mono(&[(b.clone(), 1)])]).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t.terms().get(&vec![a.clone(), b.clone()]), one(1));

        let t = tensor_of_slots(&[mono(&[(a.clone(), 1)]), mono(&[(b.clone(), 1), (c.clone(), 1)])]).unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(t.terms().get(&vec![a.clone(), c.clone()]), one(1));

        let t = tensor_of_slots(&[mono(&[(a.clone(), 1), (b.clone(), -1)]), mono(&[(c.clone(), 1)])]).unwrap();
        assert_eq!(t.terms().get(&vec![a.clone(), c.clone()]), one(1));
        assert_eq!(t.terms().get(&vec![b.clone(), c.clone()]), one(-1));

        assert_eq!(tensor_of_slots(&[mono(&[(a.clone(), 1)]), vec![]]), Err(Error::EmptySlot(2)));
        // a·a⁻¹ is the unit
        assert!(tensor_of_slots(&[mono(&[(a.clone(), 1), (a, -1)]), mono(&[(b, 1)])]).unwrap().is_zero());
    }

    #[test]
    fn alt_examples() {
        let t = alt_tensor(2, &[1, 2], |p| MultTensor::single(vec![d(&[p[0]]), d(&[p[1]])], one(1)));
        assert_eq!(t.len(), 2);
        assert_eq!(t.terms().get(&vec![d(&[1]), d(&[2])]), one(1));
        assert_eq!(t.terms().get(&vec![d(&[2]), d(&[1])]), one(-1));

        let swapped = alt_tensor(2, &[1, 2], |p| MultTensor::single(vec![d(&[p[1]]), d(&[p[0]])], one(1)));
        assert!(t.equal(&swapped.scaled(one(-1))).unwrap());

        // template ignores letters 3 and 4
        let z = alt_tensor(1, &[1, 2, 3, 4], |p| MultTensor::single(vec![d(&[p[0], p[1]])], one(1)));
        assert!(z.is_zero());
    }

    #[test]
    fn alt_is_projector_up_to_factorial() {
        let labels = [1, 2, 3];
        let once = alt_tensor(2, &labels, |p| MultTensor::single(vec![d(&[p[0], p[1]]), d(&[p[1], p[2]])], one(1)));
        let twice = alt_tensor(2, &labels, |p| once.relabel(|l| p[l as usize - 1]));
        assert!(twice.equal(&once.scaled(one(6))).unwrap());
    }

    #[test]
    fn alt_groups_alternates_independently() {
        let t: LinComb<Term> = alt_groups(&[1, 2], &[3, 4], |p, q| {
            LinComb::single(vec![d(&[p[0], q[0]])], one(1))
        });
        assert_eq!(t.get(&vec![d(&[1, 3])]), one(1));
        assert_eq!(t.get(&vec![d(&[2, 3])]), one(-1));
        assert_eq!(t.get(&vec![d(&[2, 4])]), one(1));
    }

    #[test]
    fn wedge_examples() {
        let (a, b) = (sym("a"), sym("b"));
        let t = MultTensor::single(vec![a.clone(), b.clone()], one(1));
        let w = wedge_project(&t, 1).unwrap();
        assert_eq!(w.terms().get(&vec![a.clone(), b.clone()]), one(1));
        let rev = wedge_project(&MultTensor::single(vec![b.clone(), a.clone()], one(1)), 1).unwrap();
        assert_eq!(rev, w.scaled(one(-1)));
        assert!(wedge_project(&MultTensor::single(vec![a.clone(), a.clone()], one(1)), 1).unwrap().is_zero());
        assert!(matches!(wedge_project(&t, 2), Err(Error::SlotOutOfRange { .. })));
        assert!(matches!(wedge_project(&t, 0), Err(Error::SlotOutOfRange { .. })));
    }

    #[test]
    fn equality_contract() {
        let (a, b) = (sym("a"), sym("b"));
        let ab = MultTensor::single(vec![a.clone(), b.clone()], one(1));
        let ba = MultTensor::single(vec![b, a.clone()], one(1));
        assert!(ab.equal(&ab).unwrap());
        assert!(!ab.equal(&ba).unwrap());
        assert!(ab.equal(&MultTensor::single(vec![a], one(1))).is_err());
    }

    #[test]
    fn json_round_trip() {
        let t = tensor_of_slots(&[
            mono(&[(d(&[1, 3]), 1), (d(&[2, 4]), -1)]),
            mono(&[(sym("a"), 2)]),
        ])
        .unwrap()
        .scaled(Coeff::new(1, 2));
        let s = t.to_json();
        assert_eq!(
            s,
            r#"{"arity":2,"terms":[{"coeff":"1/1","slots":[["D[1,3]"],["a"]]},{"coeff":"-1/1","slots":[["D[2,4]"],["a"]]}]}"#
                .replace("\"1/1\"", "1")
                .replace("\"-1/1\"", "-1")
        );
        assert_eq!(MultTensor::from_json(&s).unwrap(), t);
        assert!(MultTensor::from_json(r#"{"arity":1,"terms":[{"coeff":"1/0","slots":[["a"]]}]}"#).is_err());
    }
}

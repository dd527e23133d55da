//! Formal generators of the Aomoto polylogarithm groups and the part of the
//! coproduct needed to map them into `⊗ⁿ F*`.
//!
//! A generator `⟨p | L; M⟩` of weight `k` is a pair of `(k+1)`-tuples of
//! labels seen after projecting from the vectors in `p`. Only skew symmetry
//! is used to canonicalize; other relations are checked after mapping to
//! tensors, where a canonical form exists.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde_json::Value;

use crate::configuration::{bracket_of, Configuration};
use crate::error::{contract, Error, Result};
use crate::perm::sort_sign;
use crate::tensor::{
    alt, alt_groups, coeff_from_json, coeff_to_json, tensor_of_slots, Coeff, Label, LabelSet, LinComb, Monomial,
    MultSymbol, MultTensor,
};

/// `⟨prefix | L; M⟩` with `L`, `M` sorted ascending.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AomotoGen {
    prefix: LabelSet,
    l: Vec<Label>,
    m: Vec<Label>,
}

impl AomotoGen {
    /// Canonical generator together with the sign absorbed by sorting, or
    /// `None` when the generator vanishes (a repeated label, or a projection
    /// center reused inside `L` or `M`).
    pub fn new(prefix: &[Label], l: &[Label], m: &[Label]) -> Result<Option<(AomotoGen, i32)>> {
        if l.len() != m.len() || l.len() < 2 {
            return Err(contract(format!("generator needs two tuples of equal length >= 2, got {} and {}", l.len(), m.len())));
        }
        let Some(prefix) = LabelSet::from_labels(prefix) else {
            return Ok(None);
        };
        let (Some(ls), Some(ms)) = (LabelSet::from_labels(l), LabelSet::from_labels(m)) else {
            return Ok(None);
        };
        if l.iter().chain(m).any(|&x| prefix.contains(x)) {
            return Ok(None);
        }
        let sign = sort_sign(l) * sort_sign(m);
        Ok(Some((AomotoGen { prefix, l: ls.labels(), m: ms.labels() }, sign)))
    }

    pub fn weight(&self) -> usize {
        self.l.len() - 1
    }

    pub fn prefix(&self) -> LabelSet {
        self.prefix
    }

    pub fn l(&self) -> &[Label] {
        &self.l
    }

    pub fn m(&self) -> &[Label] {
        &self.m
    }

    fn bracket_with_prefix(&self, rest: &[Label]) -> Result<MultSymbol> {
        let mut labels = self.prefix.labels();
        labels.extend_from_slice(rest);
        MultSymbol::bracket(&labels)
    }
}

impl fmt::Display for AomotoGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |xs: &[Label]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "A_{}[{}|{};{}]", self.weight(), join(&self.prefix.labels()), join(&self.l), join(&self.m))
    }
}

impl fmt::Debug for AomotoGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_labels(s: &str) -> Result<Vec<Label>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|x| x.trim().parse::<Label>().map_err(|_| Error::Parse(format!("bad label {x:?}"))))
        .collect()
}

/// A single factor of a mixed term: either a generator or an `F*` symbol.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Factor {
    Gen(AomotoGen),
    Sym(MultSymbol),
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::Gen(g) => write!(f, "{g}"),
            Factor::Sym(s) => write!(f, "{s}"),
        }
    }
}

impl fmt::Debug for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Factor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let Some(rest) = s.strip_prefix("A_") else {
            return s.parse().map(Factor::Sym);
        };
        let bad = || Error::Parse(format!("bad generator {s:?}"));
        let (k, body) = rest.split_once('[').ok_or_else(bad)?;
        let body = body.strip_suffix(']').ok_or_else(bad)?;
        let (prefix, lm) = body.split_once('|').ok_or_else(bad)?;
        let (l, m) = lm.split_once(';').ok_or_else(bad)?;
        let (prefix, l, m) = (parse_labels(prefix)?, parse_labels(l)?, parse_labels(m)?);
        match AomotoGen::new(&prefix, &l, &m)? {
            Some((g, 1)) if k.parse::<usize>().ok() == Some(g.weight()) => Ok(Factor::Gen(g)),
            _ => Err(bad()),
        }
    }
}

/// Rational combination of mixed tensors of generators and `F*` symbols.
#[derive(Clone, PartialEq, Eq)]
pub struct AomotoExpr {
    arity: usize,
    terms: LinComb<Vec<Factor>>,
}

impl AomotoExpr {
    pub fn zero(arity: usize) -> Self {
        AomotoExpr { arity, terms: LinComb::new() }
    }

    /// The expression `sign · g` for a freshly built generator, or zero.
    pub fn generator(prefix: &[Label], l: &[Label], m: &[Label]) -> Result<Self> {
        let mut out = AomotoExpr::zero(1);
        if let Some((g, s)) = AomotoGen::new(prefix, l, m)? {
            out.terms.add_term(vec![Factor::Gen(g)], Coeff::from_integer(s as i64));
        }
        Ok(out)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<Factor>, &Coeff)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, factors: Vec<Factor>, c: Coeff) -> Result<()> {
        if factors.len() != self.arity {
            return Err(Error::ArityMismatch { left: self.arity, right: factors.len() });
        }
        self.terms.add_term(factors, c);
        Ok(())
    }

    pub fn add_scaled(&mut self, other: &AomotoExpr, c: Coeff) -> Result<()> {
        if !other.is_zero() && other.arity != self.arity {
            return Err(Error::ArityMismatch { left: self.arity, right: other.arity });
        }
        self.terms.add_scaled(&other.terms, c);
        Ok(())
    }

    /// Drops every term containing a generator whose `L` or `M` is
    /// degenerate in `config`: after projecting from the prefix the tuple
    /// spans less than the full space. Generators whose ambient dimension
    /// differs from the configuration's are kept formal.
    pub fn drop_degenerate(&self, config: &Configuration) -> Result<AomotoExpr> {
        let mut out = AomotoExpr::zero(self.arity);
        for (factors, c) in self.iter() {
            let mut keep = true;
            for f in factors {
                let Factor::Gen(g) = f else { continue };
                if g.prefix.len() + g.l.len() != config.dim() {
                    continue;
                }
                for side in [&g.l, &g.m] {
                    let idx: Vec<usize> = g.prefix.iter().chain(side.iter().copied()).map(usize::from).collect();
                    if bracket_of(config, &idx)?.is_zero() {
                        keep = false;
                    }
                }
            }
            if keep {
                out.terms.add_term(factors.clone(), *c);
            }
        }
        Ok(out)
    }

    pub fn to_json_value(&self) -> Value {
        let terms: Vec<Value> = self
            .iter()
            .map(|(t, c)| {
                let slots: Vec<Vec<String>> = t.iter().map(|f| vec![f.to_string()]).collect();
                serde_json::json!({ "coeff": coeff_to_json(c), "slots": slots })
            })
            .collect();
        serde_json::json!({ "arity": self.arity, "terms": terms })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("expression serializes")
    }

    pub fn from_json(s: &str) -> Result<AomotoExpr> {
        let v: Value = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        let bad = || Error::Parse("malformed expression JSON".into());
        let arity = v["arity"].as_u64().ok_or_else(bad)? as usize;
        let mut out = AomotoExpr::zero(arity);
        for t in v["terms"].as_array().ok_or_else(bad)? {
            let c = coeff_from_json(&t["coeff"])?;
            let factors = t["slots"]
                .as_array()
                .ok_or_else(bad)?
                .iter()
                .map(|slot| match slot.as_array().map(Vec::as_slice) {
                    Some([Value::String(f)]) => f.parse::<Factor>(),
                    _ => Err(bad()),
                })
                .collect::<Result<Vec<_>>>()?;
            out.add_term(factors, c)?;
        }
        Ok(out)
    }
}

impl fmt::Debug for AomotoExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AomotoExpr[{}]", self.arity)?;
        self.terms.fmt(f)
    }
}

type Mixed = LinComb<Vec<Factor>>;

fn push_gen_term(out: &mut Mixed, prefix: &[Label], l: &[Label], m: &[Label], sym: MultSymbol, sym_first: bool, c: Coeff) -> Result<()> {
    if let Some((g, s)) = AomotoGen::new(prefix, l, m)? {
        let (a, b) = (Factor::Gen(g), Factor::Sym(sym));
        let factors = if sym_first { vec![b, a] } else { vec![a, b] };
        out.add_term(factors, c * Coeff::from_integer(s as i64));
    }
    Ok(())
}

fn with(prefix: &[Label], extra: &[Label]) -> Vec<Label> {
    prefix.iter().chain(extra).copied().collect()
}

/// Component `ν_{1,1}` on a weight-2 generator.
pub fn nu_11(g: &AomotoGen) -> Result<AomotoExpr> {
    if g.weight() != 2 {
        return Err(Error::WrongWeight { expected: "2".into(), got: g.weight() });
    }
    if let Some(x) = g.l.iter().find(|x| g.m.contains(x)) {
        return Err(Error::DegenerateBracket(format!("{g} shares label {x} between L and M")));
    }
    let p = g.prefix.labels();
    let terms: Mixed = alt_groups(&g.l, &g.m, |l, m| {
        let mut out = Mixed::new();
        let c = Coeff::new(-1, 8);
        let left = MultSymbol::bracket(&with(&p, &[m[0], l[1], l[2]])).expect("labels are distinct");
        push_gen_term(&mut out, &with(&p, &[m[0]]), &l[1..], &m[1..], left, true, c).expect("valid shape");
        let right = MultSymbol::bracket(&with(&p, &[l[0], m[1], m[2]])).expect("labels are distinct");
        push_gen_term(&mut out, &with(&p, &[l[0]]), &l[1..], &m[1..], right, false, c).expect("valid shape");
        out
    });
    Ok(AomotoExpr { arity: 2, terms })
}

/// Component `ν_{k−1,1}` on a generator of weight `k > 2`.
pub fn nu_n1(g: &AomotoGen) -> Result<AomotoExpr> {
    if g.weight() <= 2 {
        return Err(Error::WrongWeight { expected: "> 2".into(), got: g.weight() });
    }
    let p = g.prefix.labels();
    let mut terms = Mixed::new();
    for (i, &li) in g.l.iter().enumerate() {
        let l_rest: Vec<Label> = g.l.iter().enumerate().filter(|&(a, _)| a != i).map(|(_, &x)| x).collect();
        for j in 0..g.m.len() {
            let m_rest: Vec<Label> = g.m.iter().enumerate().filter(|&(b, _)| b != j).map(|(_, &x)| x).collect();
            let sign = if (i + j) % 2 == 0 { -1 } else { 1 };
            let sym = MultSymbol::bracket(&with(&p, &with(&[li], &m_rest)))?;
            push_gen_term(&mut terms, &with(&p, &[li]), &l_rest, &m_rest, sym, false, Coeff::from_integer(sign))?;
        }
    }
    Ok(AomotoExpr { arity: 2, terms })
}

/// `ν_{k−1,1}` for any weight `k ≥ 2`.
pub fn nu(g: &AomotoGen) -> Result<AomotoExpr> {
    if g.weight() == 2 {
        nu_11(g)
    } else {
        nu_n1(g)
    }
}

/// The cross-ratio image of a weight-1 generator as a bracket monomial.
pub fn a1(g: &AomotoGen) -> Result<Monomial> {
    if g.weight() != 1 {
        return Err(Error::WrongWeight { expected: "1".into(), got: g.weight() });
    }
    let (l, m) = (&g.l, &g.m);
    Ok(vec![
        (g.bracket_with_prefix(&[l[0], m[0]])?, 1),
        (g.bracket_with_prefix(&[l[1], m[1]])?, 1),
        (g.bracket_with_prefix(&[l[1], m[0]])?, -1),
        (g.bracket_with_prefix(&[l[0], m[1]])?, -1),
    ])
}

/// Iterates `ν` on the leftmost generator of weight > 1 until every
/// generator has weight 1, then applies [`a1`] and expands. Every term must
/// carry generators of total weight `depth`.
pub fn nu_bracket(expr: &AomotoExpr, depth: usize) -> Result<MultTensor> {
    let mut cur: Mixed = expr.terms.clone();
    for (t, _) in cur.iter() {
        let w: usize = t.iter().map(|f| if let Factor::Gen(g) = f { g.weight() } else { 0 }).sum();
        if w != depth {
            return Err(Error::NotReducible(format!("term of generator weight {w} at depth {depth}")));
        }
    }
    let arity = expr.arity + depth.saturating_sub(expr.terms.first().map_or(0, |(t, _)| count_gens(t)));
    loop {
        let mut next = Mixed::new();
        let mut changed = false;
        for (t, c) in cur.iter() {
            let pos = t.iter().position(|f| matches!(f, Factor::Gen(g) if g.weight() > 1));
            let Some(pos) = pos else {
                next.add_term(t.clone(), *c);
                continue;
            };
            changed = true;
            let Factor::Gen(g) = &t[pos] else { unreachable!() };
            for (split, cc) in nu(g)?.iter() {
                let mut nt = Vec::with_capacity(t.len() + 1);
                nt.extend_from_slice(&t[..pos]);
                nt.extend(split.iter().cloned());
                nt.extend_from_slice(&t[pos + 1..]);
                next.add_term(nt, *c * *cc);
            }
        }
        cur = next;
        if !changed {
            break;
        }
    }
    let mut out = MultTensor::zero(arity);
    for (t, c) in cur.iter() {
        let slots = t
            .iter()
            .map(|f| match f {
                Factor::Gen(g) => a1(g),
                Factor::Sym(s) => Ok(vec![(s.clone(), 1)]),
            })
            .collect::<Result<Vec<_>>>()?;
        out.add_scaled(&tensor_of_slots(&slots)?, *c)?;
    }
    Ok(out)
}

fn count_gens(t: &[Factor]) -> usize {
    t.iter().filter(|f| matches!(f, Factor::Gen(_))).count()
}

/// `Λ_{n−1,1}` on abstract labels (sorted, even length `2n ≥ 4`).
pub fn lambda_labels(labels: &[Label]) -> Result<AomotoExpr> {
    let n2 = labels.len();
    if n2 < 4 || !n2.is_multiple_of(2) || labels.windows(2).any(|w| w[0] >= w[1]) {
        return Err(contract("lambda needs an even number >= 4 of sorted distinct labels"));
    }
    let n = n2 / 2;
    let terms: Mixed = alt(labels, |p| {
        let mut out = Mixed::new();
        let sym = MultSymbol::bracket(&p[n..]).expect("distinct labels");
        push_gen_term(&mut out, &[], &p[..n], &p[n..], sym, false, Coeff::one()).expect("valid shape");
        out
    });
    Ok(AomotoExpr { arity: 2, terms })
}

/// `Λ_{n−1,1}(l₁,…,l_{2n})` for a generic configuration of `2n` vectors in
/// dimension `n`, labeled `1..=2n`.
pub fn lambda_element(config: &Configuration) -> Result<AomotoExpr> {
    let n = config.dim();
    if config.len() != 2 * n {
        return Err(Error::SizeMismatch { expected: 2 * n, got: config.len() });
    }
    let cert = crate::configuration::is_generic(config);
    if let Some(bad) = cert.failing {
        return Err(Error::NonGeneric(bad.as_slice().to_vec()));
    }
    let labels: Vec<Label> = (1..=2 * n as Label).collect();
    lambda_labels(&labels)
}

/// Which tuple of a generator an additivity sum runs over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    L,
    M,
}

/// `Σᵢ (−1)ⁱ` over omitting the `i`-th label of the longer tuple. With
/// `dual` set the omitted label becomes the projection center instead of
/// disappearing. For side `L`, `l` has one more entry than `m`; for side `M`
/// the other way round.
pub fn additivity_sum(side: Side, dual: bool, l: &[Label], m: &[Label]) -> Result<AomotoExpr> {
    let (long, short) = match side {
        Side::L => (l, m),
        Side::M => (m, l),
    };
    if long.len() != short.len() + 1 {
        return Err(contract("the summed tuple needs exactly one extra label"));
    }
    let mut out = AomotoExpr::zero(1);
    for i in 0..long.len() {
        let rest: Vec<Label> = long.iter().enumerate().filter(|&(a, _)| a != i).map(|(_, &x)| x).collect();
        let prefix: Vec<Label> = if dual { vec![long[i]] } else { vec![] };
        let g = match side {
            Side::L => AomotoExpr::generator(&prefix, &rest, short)?,
            Side::M => AomotoExpr::generator(&prefix, short, &rest)?,
        };
        out.add_scaled(&g, Coeff::from_integer(if i % 2 == 0 { 1 } else { -1 }))?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::configuration::{project, random_generic};
    use crate::exact::ExactScalar;
    use num_traits::Signed;

    fn gen(prefix: &[Label], l: &[Label], m: &[Label]) -> AomotoGen {
        AomotoGen::new(prefix, l, m).unwrap().unwrap().0
    }

    #[test]
    fn skew_symmetry_canonicalization() {
        let (g, s) = AomotoGen::new(&[], &[2, 1], &[3, 4]).unwrap().unwrap();
        assert_eq!((g.l(), s), (&[1, 2][..], -1));
        let (_, s) = AomotoGen::new(&[], &[2, 1, 3], &[6, 4, 5]).unwrap().unwrap();
        assert_eq!(s, -1);
        assert!(AomotoGen::new(&[], &[1, 1], &[3, 4]).unwrap().is_none());
        assert!(AomotoGen::new(&[3], &[1, 2], &[3, 4]).unwrap().is_none());
        assert!(AomotoGen::new(&[], &[1, 2, 3], &[3, 4]).is_err());
    }

    #[test]
    fn generator_json_atoms() {
        let g = gen(&[7, 5], &[1, 2], &[3, 4]);
        assert_eq!(g.to_string(), "A_1[5,7|1,2;3,4]");
        assert_eq!("A_1[5,7|1,2;3,4]".parse::<Factor>().unwrap(), Factor::Gen(g));
        assert_eq!(gen(&[], &[1, 2, 3], &[4, 5, 6]).to_string(), "A_2[|1,2,3;4,5,6]");
        assert!("A_2[|1,2;3,4]".parse::<Factor>().is_err());

        let e = lambda_labels(&[1, 2, 3, 4]).unwrap();
        assert_eq!(AomotoExpr::from_json(&e.to_json()).unwrap(), e);
    }

    #[test]
    fn nu_11_shape_and_order() {
        let g = gen(&[], &[1, 2, 3], &[4, 5, 6]);
        let e = nu_11(&g).unwrap();
        assert!(e.len() <= 72);
        for (t, c) in e.iter() {
            assert!([1, 2, 4, 8].contains(c.denom()));
            // either bracket ⊗ generator or generator ⊗ bracket, never both generators
            assert_eq!(count_gens(t), 1);
        }
        assert!(matches!(nu_11(&gen(&[], &[1, 2, 3], &[3, 5, 6])), Err(Error::DegenerateBracket(_))));
        assert!(matches!(nu_11(&gen(&[], &[1, 2, 3, 4], &[5, 6, 7, 8])), Err(Error::WrongWeight { .. })));
    }

    #[test]
    fn nu_n1_sign_and_size() {
        let g = gen(&[], &[1, 2, 3, 4], &[5, 6, 7, 8]);
        let e = nu_n1(&g).unwrap();
        assert_eq!(e.len(), 16);
        let (swapped, s) = AomotoGen::new(&[], &[2, 1, 3, 4], &[5, 6, 7, 8]).unwrap().unwrap();
        assert_eq!(s, -1);
        assert_eq!(swapped, g);
        assert!(matches!(nu_n1(&gen(&[], &[1, 2, 3], &[4, 5, 6])), Err(Error::WrongWeight { .. })));
    }

    #[test]
    fn a1_matches_projected_cross_ratio() {
        for seed in 0..5 {
            let config = random_generic(3, 5, seed, 9).unwrap();
            let g = gen(&[5], &[1, 2], &[3, 4]);
            // ordered brackets Δ(p,l0,m0)Δ(p,l1,m1)/(Δ(p,l1,m0)Δ(p,l0,m1))
            let b = |x: usize, y: usize| bracket_of(&config, &[5, x, y]).unwrap();
            let lhs = b(1, 3) * b(2, 4) / (b(2, 3) * b(1, 4));
            let proj = project(&config, 5).unwrap();
            let pts: Vec<&[ExactScalar]> = (1..=4).map(|i| proj.vector(i).unwrap()).collect();
            let rhs = crate::configuration::cross_ratio([pts[0], pts[1], pts[2], pts[3]]).unwrap();
            assert_eq!(lhs, rhs);
            let mono = a1(&g).unwrap();
            let expect: Vec<LabelSet> = [[5, 1, 3], [5, 2, 4], [5, 2, 3], [5, 1, 4]]
                .iter()
                .map(|x| LabelSet::from_labels(x).unwrap())
                .collect();
            assert_eq!(mono.iter().map(|(s, _)| s.labels().unwrap()).collect::<Vec<_>>(), expect);
        }
    }

    #[test]
    fn nu_bracket_depths() {
        let e = AomotoExpr::generator(&[], &[1, 2], &[3, 4]).unwrap();
        let t = nu_bracket(&e, 1).unwrap();
        assert_eq!(t.arity(), 1);
        assert_eq!(t.len(), 4);
        let e = AomotoExpr::generator(&[], &[1, 2, 3], &[4, 5, 6]).unwrap();
        assert_eq!(nu_bracket(&e, 2).unwrap().arity(), 2);
        assert!(matches!(nu_bracket(&e, 3), Err(Error::NotReducible(_))));
    }

    #[test]
    fn nu_kills_additivity() {
        for w in 1..=3u8 {
            let l: Vec<Label> = (1..=w + 2).collect();
            let m: Vec<Label> = (11..=11 + w).collect();
            let l_short: Vec<Label> = (1..=w + 1).collect();
            let m_long: Vec<Label> = (11..=12 + w).collect();
            for dual in [false, true] {
                let s = additivity_sum(Side::L, dual, &l, &m).unwrap();
                assert!(nu_bracket(&s, w as usize).unwrap().is_zero(), "L side, weight {w}, dual {dual}");
                let s = additivity_sum(Side::M, dual, &l_short, &m_long).unwrap();
                assert!(nu_bracket(&s, w as usize).unwrap().is_zero(), "M side, weight {w}, dual {dual}");
            }
        }
    }

    #[test]
    fn lambda_sizes_and_genericity() {
        let e = lambda_labels(&[1, 2, 3, 4]).unwrap();
        assert_eq!(e.len(), 6);
        assert!(e.iter().all(|(_, c)| c.abs() == Coeff::from_integer(4)));
        let e = lambda_labels(&[1, 2, 3, 4, 5, 6]).unwrap();
        assert_eq!(e.len(), 20);
        let bad = Configuration::from_integers(2, &[&[1, 0], &[0, 1], &[1, 1], &[2, 2]]).unwrap();
        assert!(matches!(lambda_element(&bad), Err(Error::NonGeneric(_))));
        let good = random_generic(2, 4, 3, 9).unwrap();
        assert_eq!(lambda_element(&good).unwrap(), lambda_labels(&[1, 2, 3, 4]).unwrap());
    }

    #[test]
    fn degenerate_generators_are_dropped() {
        let config = Configuration::from_integers(2, &[&[1, 0], &[2, 0], &[0, 1], &[1, 1]]).unwrap();
        let e = AomotoExpr::generator(&[], &[1, 2], &[3, 4]).unwrap();
        assert!(e.drop_degenerate(&config).unwrap().is_zero());
        let e = AomotoExpr::generator(&[], &[1, 3], &[2, 4]).unwrap();
        assert_eq!(e.drop_degenerate(&config).unwrap(), e);
    }
}

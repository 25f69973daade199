//! Graded quotient rings presented by generators and one rewrite rule per
//! generator.
//!
//! A ring here is `Q[v_1, ..., v_n]` modulo relations of the shape
//! `v_i^{k_i} = r_i`, where each replacement `r_i` is homogeneous of the same
//! degree, keeps the exponent of `v_i` below `k_i`, and otherwise only
//! involves generators that come *earlier* in the declared order. That shape
//! makes the induced rewrite system terminating and confluent (it is a
//! triangular substitution system), so every class has a unique normal form
//! and no general Groebner machinery is needed.
//!
//! Classes of degree above the ring's dimension are truncated eagerly; the
//! presentation validator checks that this is sound (no normal monomial lives
//! above the dimension) and that the top degree is one-dimensional, spanned
//! by the declared point monomial.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use crate::bigrat::{factorial, rat, Rat};
use crate::error::{Error, Result};

mod parse;

pub use parse::parse_class;

/// A ring generator: a name and a positive degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VariableSpec {
    pub name: String,
    pub degree: u32,
}

impl VariableSpec {
    pub fn new(name: &str, degree: u32) -> Self {
        VariableSpec { name: name.to_string(), degree }
    }
}

/// An exponent vector over the ring's generators.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    /// The empty product.
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    /// The generator with the given index.
    pub fn var(nvars: usize, index: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[index] = 1;
        Monomial(exps)
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.0.len(), other.0.len());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

/// One rewrite rule `v^k -> replacement`, stored as raw terms so rules can be
/// written down before the ring exists.
#[derive(Debug, Clone, PartialEq)]
pub struct RewriteRule {
    /// Index of the variable whose pure power is rewritten.
    pub variable: usize,
    /// The exponent `k` of the leading monomial `v^k`.
    pub exponent: u32,
    /// Replacement terms; empty means the power vanishes.
    pub replacement: Vec<(Monomial, Rat)>,
}

impl RewriteRule {
    pub fn new(variable: usize, exponent: u32, replacement: Vec<(Monomial, Rat)>) -> Self {
        RewriteRule { variable, exponent, replacement }
    }

    /// `v^k -> 0`.
    pub fn vanishing(variable: usize, exponent: u32) -> Self {
        RewriteRule { variable, exponent, replacement: Vec::new() }
    }
}

/// A validated presentation. Build one with [`make_ring`]; classes hold it
/// behind an `Arc` so they can be moved around freely.
#[derive(Debug, Clone, PartialEq)]
pub struct RingPresentation {
    variables: Vec<VariableSpec>,
    rules: Vec<RewriteRule>,
    dim: u32,
    point: Monomial,
}

pub type Ring = Arc<RingPresentation>;

/// `true` when the two handles denote the same presentation. Structural
/// equality is accepted: independently built copies of the same presentation
/// are interchangeable.
pub fn same_ring(a: &Ring, b: &Ring) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Validates a presentation and returns the shared handle.
///
/// Checks, in order: well-formed variable names and degrees, exactly one rule
/// per variable, homogeneous replacements in normal form that only introduce
/// earlier variables, a confluence witness pass over all rule pairs, and the
/// top-degree structure (no normal monomial above `dim`, and exactly the
/// point monomial in degree `dim`).
pub fn make_ring(
    variables: Vec<VariableSpec>,
    rules: Vec<RewriteRule>,
    dim: u32,
    point: Monomial,
) -> Result<Ring> {
    let nvars = variables.len();
    let mut seen = BTreeSet::new();
    for v in &variables {
        if !is_identifier(&v.name) {
            return Err(Error::Presentation(format!(
                "variable name `{}` is not an identifier",
                v.name
            )));
        }
        if v.degree == 0 {
            return Err(Error::Presentation(format!(
                "variable `{}` must have positive degree",
                v.name
            )));
        }
        if !seen.insert(v.name.clone()) {
            return Err(Error::Presentation(format!("duplicate variable name `{}`", v.name)));
        }
    }

    if rules.len() != nvars {
        return Err(Error::Presentation(format!(
            "expected one rule per variable ({} variables, {} rules)",
            nvars,
            rules.len()
        )));
    }
    let mut by_var: Vec<Option<RewriteRule>> = vec![None; nvars];
    for r in rules {
        if r.variable >= nvars {
            return Err(Error::Presentation(format!(
                "rule refers to variable index {} out of range",
                r.variable
            )));
        }
        if r.exponent == 0 {
            return Err(Error::Presentation(format!(
                "rule for `{}` must rewrite a positive power",
                variables[r.variable].name
            )));
        }
        if by_var[r.variable].replace(r.clone()).is_some() {
            return Err(Error::Presentation(format!(
                "two rules for variable `{}`",
                variables[r.variable].name
            )));
        }
    }
    let rules: Vec<RewriteRule> = by_var.into_iter().map(|r| r.unwrap()).collect();

    // Replacement shape: homogeneous of the leading degree, exponent of the
    // rewritten variable strictly lowered, no later variables introduced, and
    // already in normal form with respect to the whole rule set.
    for (i, rule) in rules.iter().enumerate() {
        let lead_degree = rule.exponent * variables[i].degree;
        for (m, c) in &rule.replacement {
            if m.0.len() != nvars {
                return Err(Error::Presentation(format!(
                    "replacement monomial arity mismatch in rule for `{}`",
                    variables[i].name
                )));
            }
            if c.is_zero() {
                return Err(Error::Presentation(format!(
                    "zero coefficient in replacement for `{}`",
                    variables[i].name
                )));
            }
            let deg: u32 = m.0.iter().zip(&variables).map(|(e, v)| e * v.degree).sum();
            if deg != lead_degree {
                return Err(Error::Presentation(format!(
                    "rule for `{}` is not degree-preserving ({} vs {})",
                    variables[i].name, deg, lead_degree
                )));
            }
            if m.0[i] >= rule.exponent {
                return Err(Error::Presentation(format!(
                    "rule for `{}` does not lower its own exponent",
                    variables[i].name
                )));
            }
            for (j, &e) in m.0.iter().enumerate() {
                if j > i && e > 0 {
                    return Err(Error::Presentation(format!(
                        "rule for `{}` introduces the later variable `{}`",
                        variables[i].name, variables[j].name
                    )));
                }
                if e >= rules[j].exponent && j != i {
                    return Err(Error::Presentation(format!(
                        "replacement for `{}` is not in normal form (reducible in `{}`)",
                        variables[i].name, variables[j].name
                    )));
                }
            }
        }
    }

    if point.0.len() != nvars {
        return Err(Error::Presentation("point monomial arity mismatch".into()));
    }

    let ring = RingPresentation { variables, rules, dim, point: point.clone() };

    // Confluence witness pass: for every pair of rules, rewrite the monomial
    // v_i^{k_i} v_j^{k_j} starting with either rule and compare normal forms.
    for i in 0..nvars {
        for j in (i + 1)..nvars {
            let mut exps = vec![0u32; nvars];
            exps[i] = ring.rules[i].exponent;
            exps[j] = ring.rules[j].exponent;
            let witness = Monomial(exps);
            let via_i = ring.reduce(ring.step(&witness, i));
            let via_j = ring.reduce(ring.step(&witness, j));
            if via_i != via_j {
                return Err(Error::NotConfluent(format!(
                    "witness {} reduces differently via `{}` and `{}`",
                    ring.format_monomial(&witness),
                    ring.variables[i].name,
                    ring.variables[j].name
                )));
            }
        }
    }

    // Top-degree structure: the point monomial must be the only normal
    // monomial in degree `dim`, and nothing normal may live above `dim`
    // (this is what makes eager truncation a ring quotient).
    if ring.reducible_index(&point).is_some() {
        return Err(Error::Presentation("point monomial is not in normal form".into()));
    }
    if ring.degree_of(&point) != dim {
        return Err(Error::Presentation(format!(
            "point monomial has degree {}, expected dim = {}",
            ring.degree_of(&point),
            dim
        )));
    }
    for m in ring.normal_monomials_unbounded() {
        let d = ring.degree_of(&m);
        if d > dim {
            return Err(Error::Presentation(format!(
                "normal monomial {} lives above the dimension",
                ring.format_monomial(&m)
            )));
        }
        if d == dim && m != point {
            return Err(Error::Presentation(format!(
                "degree-{} component is not spanned by the point monomial alone ({} also survives)",
                dim,
                ring.format_monomial(&m)
            )));
        }
    }

    Ok(Arc::new(ring))
}

impl RingPresentation {
    pub fn nvars(&self) -> usize {
        self.variables.len()
    }

    pub fn variables(&self) -> &[VariableSpec] {
        &self.variables
    }

    pub fn rules(&self) -> &[RewriteRule] {
        &self.rules
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn point_monomial(&self) -> &Monomial {
        &self.point
    }

    pub fn variable_index(&self, name: &str) -> Option<usize> {
        self.variables.iter().position(|v| v.name == name)
    }

    pub fn degree_of(&self, m: &Monomial) -> u32 {
        m.0.iter().zip(&self.variables).map(|(e, v)| e * v.degree).sum()
    }

    /// Index of the first rule that applies to `m`, if any.
    fn reducible_index(&self, m: &Monomial) -> Option<usize> {
        m.0.iter()
            .enumerate()
            .position(|(i, &e)| e >= self.rules[i].exponent)
    }

    /// One substitution step of rule `i` on `m` (which must be reducible).
    fn step(&self, m: &Monomial, i: usize) -> Vec<(Monomial, Rat)> {
        let rule = &self.rules[i];
        debug_assert!(m.0[i] >= rule.exponent);
        let mut stripped = m.clone();
        stripped.0[i] -= rule.exponent;
        rule.replacement
            .iter()
            .map(|(rm, rc)| (stripped.mul(rm), rc.clone()))
            .collect()
    }

    /// Reduces raw terms to normal form, truncating above the dimension.
    fn reduce(&self, terms: Vec<(Monomial, Rat)>) -> BTreeMap<Monomial, Rat> {
        let mut out: BTreeMap<Monomial, Rat> = BTreeMap::new();
        let mut work = terms;
        while let Some((m, c)) = work.pop() {
            if c.is_zero() || self.degree_of(&m) > self.dim {
                continue;
            }
            match self.reducible_index(&m) {
                None => {
                    let entry = out.entry(m).or_insert_with(Rat::zero);
                    *entry += c;
                }
                Some(i) => {
                    for (sm, sc) in self.step(&m, i) {
                        work.push((sm, &sc * &c));
                    }
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// All monomials in normal form (componentwise below every rule
    /// exponent), without a degree filter.
    fn normal_monomials_unbounded(&self) -> Vec<Monomial> {
        let mut out = vec![Monomial::one(self.nvars())];
        for (i, rule) in self.rules.iter().enumerate() {
            let mut next = Vec::new();
            for m in &out {
                for e in 0..rule.exponent {
                    let mut n = m.clone();
                    n.0[i] = e;
                    next.push(n);
                }
            }
            out = next;
        }
        out
    }

    /// All normal monomials of degree at most the dimension, i.e. a monomial
    /// basis of the ring.
    pub fn basis(&self) -> Vec<Monomial> {
        let mut out: Vec<Monomial> = self
            .normal_monomials_unbounded()
            .into_iter()
            .filter(|m| self.degree_of(m) <= self.dim)
            .collect();
        out.sort_by_key(|m| (self.degree_of(m), std::cmp::Reverse(m.clone())));
        out
    }

    /// Renders a single monomial, factors in variable order.
    pub fn format_monomial(&self, m: &Monomial) -> String {
        if m.is_one() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        for (i, &e) in m.0.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(self.variables[i].name.clone()),
                _ => parts.push(format!("{}^{}", self.variables[i].name, e)),
            }
        }
        parts.join("*")
    }

    /// Short summary used in error messages.
    pub fn describe(&self) -> String {
        let names: Vec<&str> = self.variables.iter().map(|v| v.name.as_str()).collect();
        format!("Q[{}] (dim {})", names.join(","), self.dim)
    }
}

impl fmt::Display for RingPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.describe())
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// An element of a ring: a normalized, truncated rational combination of
/// basis monomials. Arithmetic is exact.
#[derive(Debug, Clone, PartialEq)]
pub struct ChowClass {
    ring: Ring,
    terms: BTreeMap<Monomial, Rat>,
}

impl ChowClass {
    pub fn zero(ring: &Ring) -> Self {
        ChowClass { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ring: &Ring) -> Self {
        Self::scalar(ring, rat(1))
    }

    pub fn scalar(ring: &Ring, c: Rat) -> Self {
        Self::from_terms(ring, vec![(Monomial::one(ring.nvars()), c)])
    }

    /// The generator with the given name.
    pub fn generator(ring: &Ring, name: &str) -> Result<Self> {
        let idx = ring
            .variable_index(name)
            .ok_or_else(|| Error::ForeignVariable(name.to_string()))?;
        Ok(Self::from_terms(
            ring,
            vec![(Monomial::var(ring.nvars(), idx), rat(1))],
        ))
    }

    /// Builds a class from raw terms, normalizing and truncating.
    ///
    /// Panics if a monomial has the wrong arity for the ring; that is a
    /// programming error, not a data error.
    pub fn from_terms(ring: &Ring, terms: Vec<(Monomial, Rat)>) -> Self {
        for (m, _) in &terms {
            assert_eq!(m.0.len(), ring.nvars(), "monomial arity does not match ring");
        }
        ChowClass { ring: ring.clone(), terms: ring.reduce(terms) }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    /// Coefficient of the empty monomial.
    pub fn constant_coefficient(&self) -> Rat {
        self.coefficient(&Monomial::one(self.ring.nvars()))
    }

    /// Coefficient of the ring's point monomial.
    pub fn point_coefficient(&self) -> Rat {
        let point = self.ring.point_monomial().clone();
        self.coefficient(&point)
    }

    /// The part of pure degree `d`.
    pub fn graded_part(&self, d: u32) -> ChowClass {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| self.ring.degree_of(m) == d)
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        ChowClass { ring: self.ring.clone(), terms }
    }

    /// Largest degree with a nonzero term (zero class reports 0).
    pub fn top_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|m| self.ring.degree_of(m))
            .max()
            .unwrap_or(0)
    }

    /// `true` when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(crate::bigrat::is_integer)
    }

    pub fn checked_add(&self, other: &ChowClass) -> Result<ChowClass> {
        self.require_same_ring(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            let entry = terms.entry(m.clone()).or_insert_with(Rat::zero);
            *entry += c;
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(ChowClass { ring: self.ring.clone(), terms })
    }

    pub fn checked_sub(&self, other: &ChowClass) -> Result<ChowClass> {
        self.checked_add(&other.clone().neg())
    }

    pub fn checked_mul(&self, other: &ChowClass) -> Result<ChowClass> {
        self.require_same_ring(other)?;
        let dim = self.ring.dim();
        let mut raw = Vec::new();
        for (ma, ca) in &self.terms {
            let da = self.ring.degree_of(ma);
            for (mb, cb) in &other.terms {
                // Rules preserve degree, so products born above the dimension
                // can be skipped before reduction.
                if da + self.ring.degree_of(mb) > dim {
                    continue;
                }
                raw.push((ma.mul(mb), ca * cb));
            }
        }
        Ok(ChowClass { ring: self.ring.clone(), terms: self.ring.reduce(raw) })
    }

    pub fn scale(&self, c: &Rat) -> ChowClass {
        if c.is_zero() {
            return ChowClass::zero(&self.ring);
        }
        let terms = self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect();
        ChowClass { ring: self.ring.clone(), terms }
    }

    fn neg(self) -> ChowClass {
        let terms = self.terms.into_iter().map(|(m, c)| (m, -c)).collect();
        ChowClass { ring: self.ring, terms }
    }

    pub fn pow(&self, k: u32) -> ChowClass {
        let mut acc = ChowClass::one(&self.ring);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// `exp(x) = sum x^k / k!`, defined when the constant part vanishes (the
    /// argument is then nilpotent, so the sum is finite).
    pub fn exp(&self) -> Result<ChowClass> {
        if !self.constant_coefficient().is_zero() {
            return Err(Error::Unsupported(
                "exp of a class with nonzero constant part".into(),
            ));
        }
        let mut acc = ChowClass::one(&self.ring);
        let mut power = ChowClass::one(&self.ring);
        for k in 1..=self.ring.dim() {
            power = &power * self;
            if power.is_zero() {
                break;
            }
            acc = &acc + &power.scale(&factorial(k).recip());
        }
        Ok(acc)
    }

    /// Multiplicative inverse, defined when the constant part is nonzero
    /// (geometric series in the nilpotent remainder).
    pub fn inverse(&self) -> Result<ChowClass> {
        let u = self.constant_coefficient();
        if u.is_zero() {
            return Err(Error::Unsupported(
                "inverse of a class with zero constant part".into(),
            ));
        }
        let unit_inv = u.recip();
        // self = u (1 + n)  =>  self^{-1} = u^{-1} sum (-n)^k.
        let n = (self - &ChowClass::scalar(&self.ring, u)).scale(&unit_inv);
        let minus_n = n.scale(&rat(-1));
        let mut acc = ChowClass::one(&self.ring);
        let mut power = ChowClass::one(&self.ring);
        for _ in 1..=self.ring.dim() {
            power = &power * &minus_n;
            if power.is_zero() {
                break;
            }
            acc = &acc + &power;
        }
        Ok(acc.scale(&unit_inv))
    }

    fn require_same_ring(&self, other: &ChowClass) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch {
                left: self.ring.describe(),
                right: other.ring.describe(),
            })
        }
    }
}

/// Re-expresses `class` in `ring`, matching variables by name.
///
/// Classes built against a ring are already in normal form, so on the same
/// ring this is the identity; the interesting use is transporting a class
/// into an extension ring (the extra relations then apply). Unknown
/// variables are rejected.
pub fn normal_form(ring: &Ring, class: &ChowClass) -> Result<ChowClass> {
    let source = class.ring();
    // Only variables that actually occur in the class need to exist in the
    // target ring.
    let index_map: Vec<Option<usize>> = source
        .variables()
        .iter()
        .map(|v| ring.variable_index(&v.name))
        .collect();
    for (i, v) in source.variables().iter().enumerate() {
        if let Some(idx) = index_map[i] {
            if ring.variables()[idx].degree != v.degree {
                return Err(Error::DegreeMismatch(format!(
                    "variable `{}` changes degree between rings",
                    v.name
                )));
            }
        }
    }
    let mut terms = Vec::new();
    for (m, c) in class.terms() {
        let mut exps = vec![0u32; ring.nvars()];
        for (i, &e) in m.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let idx = index_map[i]
                .ok_or_else(|| Error::ForeignVariable(source.variables()[i].name.clone()))?;
            exps[idx] += e;
        }
        terms.push((Monomial(exps), c.clone()));
    }
    Ok(ChowClass::from_terms(ring, terms))
}

impl std::ops::Add for &ChowClass {
    type Output = ChowClass;
    fn add(self, rhs: &ChowClass) -> ChowClass {
        self.checked_add(rhs).expect("ring mismatch in +")
    }
}

impl std::ops::Sub for &ChowClass {
    type Output = ChowClass;
    fn sub(self, rhs: &ChowClass) -> ChowClass {
        self.checked_sub(rhs).expect("ring mismatch in -")
    }
}

impl std::ops::Mul for &ChowClass {
    type Output = ChowClass;
    fn mul(self, rhs: &ChowClass) -> ChowClass {
        self.checked_mul(rhs).expect("ring mismatch in *")
    }
}

impl std::ops::Neg for &ChowClass {
    type Output = ChowClass;
    fn neg(self) -> ChowClass {
        self.clone().neg()
    }
}

impl fmt::Display for ChowClass {
    /// Deterministic rendering: terms in ascending total degree, ties broken
    /// by descending exponent vectors (so `f1` prints before `f2`), parseable
    /// back with [`parse_class`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut ordered: Vec<(&Monomial, &Rat)> = self.terms.iter().collect();
        ordered.sort_by_key(|(m, _)| (self.ring.degree_of(m), std::cmp::Reverse((*m).clone())));
        for (i, (m, c)) in ordered.iter().enumerate() {
            let negative = **c < Rat::zero();
            if i == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            let abs = if negative { -(*c).clone() } else { (*c).clone() };
            if m.is_one() {
                write!(f, "{}", abs)?;
            } else if abs == rat(1) {
                write!(f, "{}", self.ring.format_monomial(m))?;
            } else {
                write!(f, "{}*{}", abs, self.ring.format_monomial(m))?;
            }
        }
        Ok(())
    }
}

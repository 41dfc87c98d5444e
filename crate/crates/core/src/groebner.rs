//! Buchberger's algorithm over Q with sugar selection and the Gebauer–Möller
//! pair criteria, plus the braid-relation ideals of the 3-dimensional case
//! analysis and membership checks for their listed consequences.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::field::{parse_rational, FieldError, Rational};

pub const MAX_VARS: usize = 16;
pub const DEFAULT_STEP_BUDGET: u64 = 10_000_000;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Monomial {
    exps: [u16; MAX_VARS],
}

impl Monomial {
    pub fn one() -> Self {
        Self { exps: [0; MAX_VARS] }
    }

    pub fn var(i: usize) -> Self {
        let mut m = Self::one();
        m.exps[i] = 1;
        m
    }

    pub fn exponent(&self, i: usize) -> u16 {
        self.exps[i]
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    fn partial_degree(&self, range: std::ops::Range<usize>) -> u32 {
        self.exps[range].iter().map(|&e| e as u32).sum()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut exps = self.exps;
        for (e, o) in exps.iter_mut().zip(&other.exps) {
            *e += o;
        }
        Monomial { exps }
    }

    /// `self / other`, assuming divisibility.
    fn div(&self, other: &Monomial) -> Monomial {
        let mut exps = self.exps;
        for (e, o) in exps.iter_mut().zip(&other.exps) {
            *e -= o;
        }
        Monomial { exps }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut exps = self.exps;
        for (e, o) in exps.iter_mut().zip(&other.exps) {
            *e = (*e).max(*o);
        }
        Monomial { exps }
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    Lex,
    DegRevLex,
    /// The first `first` variables form a block compared (by degrevlex)
    /// before the rest; eliminates that block.
    Block { first: usize },
}

fn degrevlex(a: &Monomial, b: &Monomial, range: std::ops::Range<usize>) -> Ordering {
    let (da, db) = (a.partial_degree(range.clone()), b.partial_degree(range.clone()));
    if da != db {
        return da.cmp(&db);
    }
    for i in range.rev() {
        if a.exps[i] != b.exps[i] {
            return b.exps[i].cmp(&a.exps[i]);
        }
    }
    Ordering::Equal
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            MonomialOrder::Lex => a.exps.cmp(&b.exps),
            MonomialOrder::DegRevLex => degrevlex(a, b, 0..MAX_VARS),
            MonomialOrder::Block { first } => {
                degrevlex(a, b, 0..first).then_with(|| degrevlex(a, b, first..MAX_VARS))
            }
        }
    }
}

/// Polynomial over Q in named variables.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    vars: Arc<[String]>,
    terms: BTreeMap<Monomial, Rational>,
}

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Field(FieldError::Parse(msg.into()))
}

impl MultiPoly {
    pub fn zero(vars: &Arc<[String]>) -> Self {
        Self { vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(vars: &Arc<[String]>, c: Rational) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(), c);
        }
        p
    }

    pub fn variable(vars: &Arc<[String]>, name: &str) -> Result<Self> {
        let i = vars.iter().position(|v| v == name).ok_or_else(|| parse_err(format!("unknown variable {name:?}")))?;
        let mut p = Self::zero(vars);
        p.terms.insert(Monomial::var(i), Rational::one());
        Ok(p)
    }

    pub fn from_terms(vars: &Arc<[String]>, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Self::zero(vars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn vars(&self) -> &Arc<[String]> {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// Whether variable `name` occurs.
    pub fn uses(&self, name: &str) -> bool {
        match self.vars.iter().position(|v| v == name) {
            Some(i) => self.terms.keys().any(|m| m.exps[i] > 0),
            None => false,
        }
    }

    pub fn leading(&self, order: MonomialOrder) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        Self { vars: self.vars.clone(), terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(&self.vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::constant(&self.vars, Rational::one());
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Scales to integer coefficients with content 1 and positive leading
    /// coefficient under degrevlex.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let ip = IPoly::from_poly(self, MonomialOrder::DegRevLex);
        ip.to_poly(&self.vars)
    }

    /// Divides by the leading coefficient under `order`.
    pub fn monic(&self, order: MonomialOrder) -> Self {
        match self.leading(order) {
            Some((_, c)) => self.scale(&(Rational::one() / c)),
            None => self.clone(),
        }
    }

    /// Substitutes values for every variable.
    pub fn eval<T>(&self, values: &[T]) -> T
    where
        T: Clone + From<Rational> + std::ops::Add<Output = T> + std::ops::Mul<Output = T>,
    {
        let mut acc = T::from(Rational::zero());
        for (m, c) in &self.terms {
            let mut t = T::from(c.clone());
            for (i, v) in values.iter().enumerate().take(self.vars.len()) {
                for _ in 0..m.exps[i] {
                    t = t * v.clone();
                }
            }
            acc = acc + t;
        }
        acc
    }

    /// Parses `+ - * / ^` expressions over integer and rational literals;
    /// division is allowed by nonzero constants only.
    pub fn parse(vars: &Arc<[String]>, src: &str) -> Result<Self> {
        let mut p = Parser { vars, chars: src.chars().filter(|c| !c.is_whitespace()).collect(), pos: 0 };
        let out = p.expr()?;
        if p.pos != p.chars.len() {
            return Err(parse_err(format!("unexpected {:?} in {src:?}", p.chars[p.pos])));
        }
        Ok(out)
    }

    /// Fresh variable list.
    pub fn ring(names: &[&str]) -> Arc<[String]> {
        assert!(names.len() <= MAX_VARS, "at most {MAX_VARS} variables");
        names.iter().map(|s| s.to_string()).collect::<Vec<_>>().into()
    }

    fn fmt_monomial(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for (i, name) in self.vars.iter().enumerate() {
            match m.exps[i] {
                0 => {}
                1 => parts.push(name.clone()),
                e => parts.push(format!("{name}^{e}")),
            }
        }
        parts.join("*")
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| MonomialOrder::DegRevLex.cmp(b.0, a.0));
        for (k, (m, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let mono = self.fmt_monomial(m);
            match (mono.is_empty(), mag.is_one()) {
                (true, _) => write!(f, "{}", crate::field::format_rational(&mag))?,
                (false, true) => f.write_str(&mono)?,
                (false, false) => write!(f, "{}*{mono}", crate::field::format_rational(&mag))?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({self})")
    }
}

struct Parser<'a> {
    vars: &'a Arc<[String]>,
    chars: Vec<char>,
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<MultiPoly> {
        let mut acc = self.term()?;
        while let Some(c @ ('+' | '-')) = self.peek() {
            self.pos += 1;
            let t = self.term()?;
            acc = if c == '+' { acc.add(&t) } else { acc.sub(&t) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.unary()?;
        while let Some(c @ ('*' | '/')) = self.peek() {
            self.pos += 1;
            let t = self.unary()?;
            if c == '*' {
                acc = acc.mul(&t);
            } else {
                let d = match t.terms.get(&Monomial::one()) {
                    Some(d) if t.is_constant() => d.clone(),
                    _ => return Err(parse_err("division by a non-constant or zero")),
                };
                acc = acc.scale(&(Rational::one() / d));
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<MultiPoly> {
        if self.peek() == Some('-') {
            self.pos += 1;
            return Ok(self.unary()?.neg());
        }
        if self.peek() == Some('+') {
            self.pos += 1;
        }
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let start = self.pos;
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                self.pos += 1;
            }
            let e: u32 = self.chars[start..self.pos]
                .iter()
                .collect::<String>()
                .parse()
                .map_err(|_| parse_err("exponent must be a nonnegative integer"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MultiPoly> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(parse_err("missing ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    self.pos += 1;
                }
                let s: String = self.chars[start..self.pos].iter().collect();
                Ok(MultiPoly::constant(self.vars, parse_rational(&s)?))
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_alphanumeric() || c == '_') {
                    self.pos += 1;
                }
                let s: String = self.chars[start..self.pos].iter().collect();
                MultiPoly::variable(self.vars, &s)
            }
            other => Err(parse_err(format!("unexpected {other:?}"))),
        }
    }
}

/// Integer polynomial with terms sorted descending under a fixed order.
#[derive(Clone, Debug)]
struct IPoly {
    terms: Vec<(Monomial, BigInt)>,
    sugar: u32,
}

fn content(terms: &[(Monomial, BigInt)]) -> BigInt {
    let mut g = BigInt::zero();
    for (_, c) in terms {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

impl IPoly {
    fn from_poly(p: &MultiPoly, order: MonomialOrder) -> Self {
        let den = p.terms.values().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut terms: Vec<(Monomial, BigInt)> =
            p.terms.iter().map(|(m, c)| (*m, c.numer() * (&den / c.denom()))).collect();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        let sugar = p.total_degree();
        let mut out = IPoly { terms, sugar };
        out.make_primitive();
        out
    }

    fn to_poly(&self, vars: &Arc<[String]>) -> MultiPoly {
        MultiPoly::from_terms(vars, self.terms.iter().map(|(m, c)| (*m, Rational::from_integer(c.clone()))))
    }

    fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    fn lc(&self) -> &BigInt {
        &self.terms[0].1
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn make_primitive(&mut self) {
        if self.terms.is_empty() {
            return;
        }
        let mut g = content(&self.terms);
        if self.terms[0].1.is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for (_, c) in &mut self.terms {
                *c = &*c / &g;
            }
        }
    }
}

/// `a·p − b·(m·g)` with both operands sorted descending.
fn combine(
    p: &[(Monomial, BigInt)],
    a: &BigInt,
    b: &BigInt,
    m: &Monomial,
    g: &[(Monomial, BigInt)],
    order: MonomialOrder,
) -> Vec<(Monomial, BigInt)> {
    let mut out = Vec::with_capacity(p.len() + g.len());
    let (mut i, mut j) = (0, 0);
    while i < p.len() || j < g.len() {
        let gm = g.get(j).map(|(mono, _)| mono.mul(m));
        let ord = match (p.get(i), &gm) {
            (Some((pm, _)), Some(gm)) => order.cmp(pm, gm),
            (Some(_), None) => Ordering::Greater,
            (None, _) => Ordering::Less,
        };
        match ord {
            Ordering::Greater => {
                out.push((p[i].0, a * &p[i].1));
                i += 1;
            }
            Ordering::Less => {
                out.push((gm.unwrap(), -(b * &g[j].1)));
                j += 1;
            }
            Ordering::Equal => {
                let c = a * &p[i].1 - b * &g[j].1;
                if !c.is_zero() {
                    out.push((p[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out
}

struct Budget {
    limit: u64,
    used: u64,
}

impl Budget {
    fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.limit {
            return Err(Error::StepBudgetExceeded { budget: self.limit });
        }
        Ok(())
    }
}

/// Full reduction of `f` by `basis`. Returns the remainder `r` (primitive
/// when `exact` is false) and the rational `s` with `f ≡ r/s`.
fn reduce(
    f: &IPoly,
    basis: &[IPoly],
    order: MonomialOrder,
    budget: &mut Budget,
    exact: bool,
) -> Result<(IPoly, Rational)> {
    let mut p = f.terms.clone();
    let mut rem: Vec<(Monomial, BigInt)> = Vec::new();
    let mut scale = Rational::one();
    let mut sugar = f.sugar;
    while !p.is_empty() {
        let lead = p[0].0;
        let Some(g) = basis.iter().find(|g| g.lm().divides(&lead)) else {
            rem.push(p.remove(0));
            continue;
        };
        budget.tick()?;
        let m = lead.div(g.lm());
        let c = &p[0].1;
        let gcd = c.gcd(g.lc());
        let a = g.lc() / &gcd;
        let b = c / &gcd;
        sugar = sugar.max(g.sugar + m.degree());
        p = combine(&p, &a, &b, &m, &g.terms, order);
        if !a.is_one() {
            for (_, v) in &mut rem {
                *v = &*v * &a;
            }
            scale *= Rational::from_integer(a);
        }
        // keep coefficients small
        let mut q = content(&p);
        if !q.is_one() && !rem.is_empty() {
            q = q.gcd(&content(&rem));
        }
        if !q.is_zero() && !q.is_one() {
            for (_, v) in p.iter_mut().chain(rem.iter_mut()) {
                *v = &*v / &q;
            }
            scale /= Rational::from_integer(q);
        }
    }
    let mut out = IPoly { terms: rem, sugar };
    if !exact {
        out.make_primitive();
    }
    Ok((out, scale))
}

fn s_poly(f: &IPoly, g: &IPoly, order: MonomialOrder) -> IPoly {
    let l = f.lm().lcm(g.lm());
    let mf = l.div(f.lm());
    let mg = l.div(g.lm());
    let gcd = f.lc().gcd(g.lc());
    let a = g.lc() / &gcd;
    let b = f.lc() / &gcd;
    let scaled_f: Vec<(Monomial, BigInt)> = f.terms.iter().map(|(m, c)| (m.mul(&mf), c.clone())).collect();
    let terms = combine(&scaled_f, &a, &b, &mg, &g.terms, order);
    let sugar = (f.sugar + mf.degree()).max(g.sugar + mg.degree());
    let mut out = IPoly { terms, sugar };
    out.make_primitive();
    out
}

#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    vars: Arc<[String]>,
    order: MonomialOrder,
    /// Reduced basis, primitive integer form, sorted by leading monomial.
    polys: Vec<IPoly>,
    steps: u64,
}

impl GroebnerBasis {
    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    /// Reduction steps spent building the basis.
    pub fn steps(&self) -> u64 {
        self.steps
    }

    /// Basis elements, monic.
    pub fn elements(&self) -> Vec<MultiPoly> {
        self.polys.iter().map(|p| p.to_poly(&self.vars).monic(self.order)).collect()
    }

    /// Whether the ideal is the whole ring.
    pub fn is_unit_ideal(&self) -> bool {
        self.polys.len() == 1 && self.polys[0].lm().degree() == 0
    }

    pub fn contains(&self, p: &MultiPoly) -> bool {
        normal_form(p, self).is_zero()
    }

    /// Buchberger's criterion checked directly on every pair.
    pub fn satisfies_buchberger_criterion(&self) -> bool {
        let mut budget = Budget { limit: u64::MAX, used: 0 };
        for i in 0..self.polys.len() {
            for j in i + 1..self.polys.len() {
                let s = s_poly(&self.polys[i], &self.polys[j], self.order);
                match reduce(&s, &self.polys, self.order, &mut budget, false) {
                    Ok((r, _)) if r.is_zero() => {}
                    _ => return false,
                }
            }
        }
        true
    }
}

/// Remainder of `p` on division by a reduced basis; zero iff `p` lies in
/// the ideal.
pub fn normal_form(p: &MultiPoly, gb: &GroebnerBasis) -> MultiPoly {
    if p.is_zero() {
        return p.clone();
    }
    let ip = IPoly::from_poly(p, gb.order);
    // p = ip / k for the rational k that made it primitive
    let k = {
        let (m, c) = &ip.terms[0];
        Rational::from_integer(c.clone()) / p.terms[m].clone()
    };
    let mut budget = Budget { limit: u64::MAX, used: 0 };
    let (r, s) = reduce(&ip, &gb.polys, gb.order, &mut budget, true).expect("unbounded budget");
    r.to_poly(&p.vars).scale(&(Rational::one() / (s * k)))
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

/// Reduced Gröbner basis with the default step budget.
pub fn buchberger(gens: &[MultiPoly], order: MonomialOrder) -> Result<GroebnerBasis> {
    buchberger_with_budget(gens, order, DEFAULT_STEP_BUDGET)
}

pub fn buchberger_with_budget(gens: &[MultiPoly], order: MonomialOrder, budget: u64) -> Result<GroebnerBasis> {
    let vars: Arc<[String]> = gens.first().map_or_else(|| Arc::from(Vec::<String>::new()), |g| g.vars.clone());
    if let Some(g) = gens.iter().find(|g| g.vars != vars) {
        return Err(Error::DimensionMismatch(format!("variable lists differ: {:?} vs {:?}", g.vars, vars)));
    }
    let mut budget = Budget { limit: budget, used: 0 };
    let mut all: Vec<IPoly> = Vec::new();
    let mut active: Vec<usize> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    let mut inputs: Vec<IPoly> =
        gens.iter().filter(|g| !g.is_zero()).map(|g| IPoly::from_poly(g, order)).collect();
    inputs.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    for f in inputs {
        let basis: Vec<IPoly> = active.iter().map(|&i| all[i].clone()).collect();
        let (h, _) = reduce(&f, &basis, order, &mut budget, false)?;
        if !h.is_zero() {
            add_to_basis(h, &mut all, &mut active, &mut pairs);
        }
    }

    loop {
        let Some(pos) = pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| a.sugar.cmp(&b.sugar).then_with(|| order.cmp(&a.lcm, &b.lcm)))
            .map(|(k, _)| k)
        else {
            break;
        };
        let pair = pairs.swap_remove(pos);
        let s = s_poly(&all[pair.i], &all[pair.j], order);
        if s.is_zero() {
            continue;
        }
        let basis: Vec<IPoly> = active.iter().map(|&i| all[i].clone()).collect();
        let (h, _) = reduce(&s, &basis, order, &mut budget, false)?;
        if h.is_zero() {
            continue;
        }
        if h.lm().degree() == 0 {
            let one = IPoly { terms: vec![(Monomial::one(), BigInt::one())], sugar: 0 };
            return Ok(GroebnerBasis { vars, order, polys: vec![one], steps: budget.used });
        }
        add_to_basis(h, &mut all, &mut active, &mut pairs);
    }

    let polys = interreduce(active.iter().map(|&i| all[i].clone()).collect(), order, &mut budget)?;
    Ok(GroebnerBasis { vars, order, polys, steps: budget.used })
}

/// Gebauer–Möller update for a new basis element.
fn add_to_basis(h: IPoly, all: &mut Vec<IPoly>, active: &mut Vec<usize>, pairs: &mut Vec<Pair>) {
    let hi = all.len();
    let hlm = *h.lm();
    let hs = h.sugar;
    all.push(h);
    let make = |g: usize, all: &[IPoly]| {
        let glm = all[g].lm();
        let lcm = hlm.lcm(glm);
        let sugar = (hs + lcm.degree() - hlm.degree()).max(all[g].sugar + lcm.degree() - glm.degree());
        Pair { i: g, j: hi, lcm, sugar }
    };
    let candidates: Vec<Pair> = active.iter().map(|&g| make(g, all)).collect();

    // chain criterion among the new pairs
    let mut kept: Vec<Pair> = Vec::new();
    for (k, p) in candidates.iter().enumerate() {
        let coprime = hlm.coprime(all[p.i].lm());
        let dominated = candidates.iter().enumerate().any(|(k2, q)| {
            k2 != k && q.lcm.divides(&p.lcm) && (q.lcm != p.lcm || (k2 < k && !hlm.coprime(all[q.i].lm())))
        });
        if coprime || !dominated {
            kept.push(p.clone());
        }
    }
    // product criterion, and keep one pair per lcm
    let mut fresh: Vec<Pair> = Vec::new();
    for p in kept {
        if hlm.coprime(all[p.i].lm()) {
            continue;
        }
        if fresh.iter().any(|q| q.lcm == p.lcm) {
            continue;
        }
        fresh.push(p);
    }
    // old pairs made redundant by h
    pairs.retain(|p| {
        !(hlm.divides(&p.lcm)
            && hlm.lcm(all[p.i].lm()) != p.lcm
            && hlm.lcm(all[p.j].lm()) != p.lcm)
    });
    pairs.extend(fresh);
    active.retain(|&g| !hlm.divides(all[g].lm()));
    active.push(hi);
}

fn interreduce(mut polys: Vec<IPoly>, order: MonomialOrder, budget: &mut Budget) -> Result<Vec<IPoly>> {
    polys.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    // minimal basis: drop elements whose leading monomial is a multiple of another's
    let mut minimal: Vec<IPoly> = Vec::new();
    for p in polys {
        if !minimal.iter().any(|q| q.lm().divides(p.lm())) {
            minimal.push(p);
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<IPoly> =
            minimal.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, p)| p.clone()).collect();
        let (r, _) = reduce(&minimal[k], &others, order, budget, false)?;
        out.push(r);
    }
    Ok(out)
}

/// Whether `f` vanishes on the variety of the ideal: `1 ∈ I + (1 − t·f)`
/// with `t` a variable of the ring unused by the generators.
pub fn radical_contains(gens: &[MultiPoly], f: &MultiPoly, t: &str, order: MonomialOrder, budget: u64) -> Result<bool> {
    let tv = MultiPoly::variable(f.vars(), t)?;
    if gens.iter().any(|g| g.uses(t)) || f.uses(t) {
        return Err(Error::DimensionMismatch(format!("variable {t} already in use")));
    }
    let mut all = gens.to_vec();
    all.push(MultiPoly::constant(f.vars(), Rational::one()).sub(&tv.mul(f)));
    Ok(buchberger_with_budget(&all, order, budget)?.is_unit_ideal())
}

/// The cases of the 3-dimensional analysis with a common invariant line
/// (`1.x`: A diagonal with distinct eigenvalues; `2.x`: A = diag(λ1,λ1,λ2);
/// `3.1`, `3.2`: one Jordan block at λ2; `3.3`, `3.4`: at λ1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EliminationCase {
    C1_1,
    C1_2,
    C1_3,
    C1_4,
    C2_1,
    C2_2,
    C3_1,
    C3_2,
    C3_3,
    C3_4,
}

impl EliminationCase {
    pub const ALL: [EliminationCase; 10] = [
        EliminationCase::C1_1,
        EliminationCase::C1_2,
        EliminationCase::C1_3,
        EliminationCase::C1_4,
        EliminationCase::C2_1,
        EliminationCase::C2_2,
        EliminationCase::C3_1,
        EliminationCase::C3_2,
        EliminationCase::C3_3,
        EliminationCase::C3_4,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            EliminationCase::C1_1 => "1.1",
            EliminationCase::C1_2 => "1.2",
            EliminationCase::C1_3 => "1.3",
            EliminationCase::C1_4 => "1.4",
            EliminationCase::C2_1 => "2.1",
            EliminationCase::C2_2 => "2.2",
            EliminationCase::C3_1 => "3.1",
            EliminationCase::C3_2 => "3.2",
            EliminationCase::C3_3 => "3.3",
            EliminationCase::C3_4 => "3.4",
        }
    }
}

impl fmt::Display for EliminationCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for EliminationCase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL.into_iter().find(|c| c.as_str() == s.trim()).ok_or_else(|| Error::UnknownCase(s.to_string()))
    }
}

/// Variables of every case ring. `k` carries the non-vanishing constraint
/// and `t` is reserved for radical membership tests.
pub const CASE_VARIABLES: [&str; 11] = ["k", "t", "l1", "l2", "l3", "b1", "b2", "b3", "g1", "g2", "g3"];

/// Elimination order with `k` and `t` in the first block.
pub const ELIMINATION_ORDER: MonomialOrder = MonomialOrder::Block { first: 2 };

#[derive(Clone, Debug)]
pub struct Ideal {
    pub generators: Vec<MultiPoly>,
    pub order: MonomialOrder,
}

/// One listed consequence. `correction` is the relation that actually holds
/// when the listed one carries a typo.
#[derive(Clone, Debug)]
pub struct ListedRelation {
    pub relation: MultiPoly,
    pub correction: Option<MultiPoly>,
}

/// One Gröbner run of a case: a normalization of `ABA` plus the relations
/// read off from it.
#[derive(Clone, Debug)]
pub struct CaseStage {
    pub label: String,
    /// Shape of A.
    pub a: [[String; 3]; 3],
    /// Ansatz for ABA.
    pub aba: [[String; 3]; 3],
    /// Factors whose product is required nonzero.
    pub nonzero: Vec<String>,
    pub ideal: Ideal,
    pub relations: Vec<ListedRelation>,
}

type Grid = [[&'static str; 3]; 3];

const DIAG: Grid = [["l1", "0", "0"], ["0", "l2", "0"], ["0", "0", "l3"]];
const DIAG_REPEATED: Grid = [["l1", "0", "0"], ["0", "l1", "0"], ["0", "0", "l2"]];
const BLOCK_AT_L2: Grid = [["l1", "0", "0"], ["0", "l2", "1"], ["0", "0", "l2"]];
const BLOCK_AT_L1: Grid = [["l1", "1", "0"], ["0", "l1", "0"], ["0", "0", "l2"]];
const DISTINCT3: &str = "l1*l2*l3*(l1-l2)*(l1-l3)*(l2-l3)";
const DISTINCT2: &str = "l1*l2*(l1-l2)";

struct StageSpec {
    label: &'static str,
    a: Grid,
    aba: Grid,
    nonzero: &'static [&'static str],
    relations: &'static [(&'static str, Option<&'static str>)],
}

fn stage_specs(case: EliminationCase) -> Vec<StageSpec> {
    use EliminationCase::*;
    let full: Grid = [["l1^3", "b1", "g1"], ["0", "b2", "g2"], ["0", "b3", "g3"]];
    let upper: Grid = [["l1^3", "b1", "g1"], ["0", "b2", "g2"], ["0", "0", "g3"]];
    match case {
        C1_1 => vec![StageSpec {
            label: "b1 = g1 = 1",
            a: DIAG,
            aba: [["l1^3", "1", "1"], ["0", "b2", "0"], ["0", "0", "g3"]],
            nonzero: &[DISTINCT3, "b2", "g3"],
            relations: &[("l1-l2-l3", None), ("b2-g3", None), ("l2^2+l2*l3+l3^2", None), ("l2^3-g3", None)],
        }],
        C1_2 => vec![StageSpec {
            label: "g1 = g2 = 1",
            a: DIAG,
            aba: [["l1^3", "0", "1"], ["0", "b2", "1"], ["0", "0", "g3"]],
            nonzero: &[DISTINCT3, "b2", "g3"],
            relations: &[
                ("l1+l2-l3", None),
                ("b2+g3", None),
                ("l2^2-l2*l3+l3^2", None),
                ("l2^3-g3", Some("l2^3+g3")),
            ],
        }],
        C1_3 => vec![
            StageSpec {
                label: "general",
                a: DIAG,
                aba: upper,
                nonzero: &[DISTINCT3, "g2", "b1", "g3"],
                relations: &[
                    ("l1-l2+l3", None),
                    ("b2+g3", None),
                    ("l2^2-l2*l3+l3^2", None),
                    ("b1*g2+2*g1*g3", None),
                    ("l2^3-g3", Some("l2^3+g3")),
                ],
            },
            StageSpec {
                label: "b1 = g1 = 1",
                a: DIAG,
                aba: [["l1^3", "1", "1"], ["0", "b2", "g2"], ["0", "0", "g3"]],
                nonzero: &[DISTINCT3, "g2", "g3"],
                relations: &[
                    ("l1-l2+l3", None),
                    ("b2+g3", None),
                    ("l2^2-l2*l3+l3^2", None),
                    ("g2+2*g3", None),
                    ("l2^3-g3", Some("l2^3+g3")),
                ],
            },
        ],
        C1_4 => vec![
            StageSpec {
                label: "general",
                a: DIAG,
                aba: full,
                nonzero: &[DISTINCT3, "g2", "b3"],
                relations: &[
                    ("b2+g3", None),
                    ("g1*(l1^2+l2*l3)", None),
                    ("b1*(l1^2+l2*l3)", None),
                    ("l1*b1*g2+l1*g1*g3+l2*g1*g3-l3*g1*g3", None),
                    ("-l1*b1*g3+l1*b3*g1+l2*b1*g3-l3*b1*g3", None),
                ],
            },
            StageSpec {
                label: "b1 = b3 = 1",
                a: DIAG,
                aba: [["l1^3", "1", "g1"], ["0", "b2", "g2"], ["0", "1", "g3"]],
                nonzero: &[DISTINCT3, "g2"],
                relations: &[
                    ("b2+g3", None),
                    ("l3*l2+l1^2", None),
                    ("l1*g1-l1*g3+l2*g3-l3*g3", None),
                    ("g1^2-2*g1*g3-g2", None),
                    ("l2*l3*l1-g1+g3", None),
                ],
            },
        ],
        C2_1 => vec![
            StageSpec {
                label: "b3 = 1",
                a: DIAG_REPEATED,
                aba: [["l1^3", "b1", "g1"], ["0", "b2", "g2"], ["0", "1", "g3"]],
                nonzero: &["g2", DISTINCT2, "b2*g3-g2"],
                relations: &[
                    ("b2+g3", None),
                    ("l2*b1*g3-l1*g1", None),
                    ("l1^2*l2^2-l1*g3+l2*g3", None),
                    ("l1*l2^2*b1-b1*g3+g1", None),
                ],
            },
            StageSpec {
                label: "b1 = b3 = 1",
                a: DIAG_REPEATED,
                aba: [["l1^3", "1", "g1"], ["0", "b2", "g2"], ["0", "1", "g3"]],
                nonzero: &["g2", DISTINCT2, "b2*g3-g2"],
                relations: &[
                    ("b2+g3", None),
                    ("l1*g1-l2*g3", None),
                    ("l1*l2^2+g1-g3", None),
                    ("l1*g3^2+l2*g1*g3-l2*g3^2+l2*g2", None),
                ],
            },
        ],
        C2_2 => vec![StageSpec {
            label: "g2 = 0, b3 = 1",
            a: DIAG_REPEATED,
            aba: [["l1^3", "b1", "g1"], ["0", "b2", "0"], ["0", "1", "g3"]],
            nonzero: &[DISTINCT2],
            relations: &[
                ("b2+g3", None),
                ("l1^2-l1*l2+l2^2", None),
                ("l2^3-g3", None),
                ("l2*b1*g3-l1*g1", None),
            ],
        }],
        C3_1 => vec![StageSpec {
            label: "b3 = 0",
            a: BLOCK_AT_L2,
            aba: upper,
            nonzero: &[DISTINCT2, "g1"],
            relations: &[("b1", None), ("l1^2-l1*l2+l2^2", None)],
        }],
        C3_2 => vec![
            StageSpec {
                label: "general",
                a: BLOCK_AT_L2,
                aba: full,
                nonzero: &[DISTINCT2, "b3"],
                relations: &[
                    ("g1*(l1^2+l2^2)", None),
                    ("b1*(l1^2+l2^2)", None),
                    ("-l1*b1*g3+l1*b3*g1-b1*b3", None),
                ],
            },
            StageSpec {
                label: "b1 = 1",
                a: BLOCK_AT_L2,
                aba: [["l1^3", "1", "g1"], ["0", "b2", "g2"], ["0", "b3", "g3"]],
                nonzero: &[DISTINCT2, "b3"],
                relations: &[
                    ("b2+g3", None),
                    ("l1^2+l2^2", None),
                    ("l1*l2^2-g1*b3+g3", None),
                    ("l2^2*b3-b3*g2-g3^2", None),
                    ("l1*g1*g3+l1*g2-b3*g1", None),
                    ("g1*b3*l1-g3*l1-b3", None),
                ],
            },
        ],
        C3_3 => vec![StageSpec {
            label: "g2 = 1",
            a: BLOCK_AT_L1,
            aba: [["l1^3", "b1", "g1"], ["0", "b2", "1"], ["0", "b3", "g3"]],
            nonzero: &[DISTINCT2],
            relations: &[
                ("g1+1", Some("l1+l2")),
                ("b2+g3", None),
                ("3*g3^2-b3", None),
                ("3*g1*g3+b1", None),
                ("b1*g3+b3*g1", None),
                ("l2^3+2*g3", None),
            ],
        }],
        C3_4 => vec![StageSpec {
            label: "g2 = 0, g1 = 1",
            a: BLOCK_AT_L1,
            aba: [["l1^3", "b1", "1"], ["0", "b2", "0"], ["0", "b3", "g3"]],
            nonzero: &[DISTINCT2],
            relations: &[
                ("b2+g3", None),
                ("l2^2-l1*l2+l1^2", None),
                ("l2^3-g3", None),
                ("l1*b1*g3-l1*b3+l2*b3+3*g3^2", None),
            ],
        }],
    }
}

type PolyMatrix = Vec<Vec<MultiPoly>>;

fn poly_matrix(vars: &Arc<[String]>, grid: &Grid) -> Result<PolyMatrix> {
    grid.iter().map(|row| row.iter().map(|s| MultiPoly::parse(vars, s)).collect()).collect()
}

fn pm_mul(x: &PolyMatrix, y: &PolyMatrix) -> PolyMatrix {
    let n = x.len();
    let vars = x[0][0].vars().clone();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).fold(MultiPoly::zero(&vars), |acc, l| acc.add(&x[i][l].mul(&y[l][j]))))
                .collect()
        })
        .collect()
}

fn minor(m: &PolyMatrix, r: usize, c: usize) -> MultiPoly {
    let idx = |skip: usize| (0..3).filter(move |&i| i != skip).collect::<Vec<_>>();
    let (rs, cs) = (idx(r), idx(c));
    m[rs[0]][cs[0]].mul(&m[rs[1]][cs[1]]).sub(&m[rs[0]][cs[1]].mul(&m[rs[1]][cs[0]]))
}

fn adjugate3(m: &PolyMatrix) -> PolyMatrix {
    (0..3)
        .map(|i| {
            (0..3)
                .map(|j| {
                    let c = minor(m, j, i);
                    if (i + j) % 2 == 1 {
                        c.neg()
                    } else {
                        c
                    }
                })
                .collect()
        })
        .collect()
}

fn det3(m: &PolyMatrix) -> MultiPoly {
    let vars = m[0][0].vars().clone();
    (0..3).fold(MultiPoly::zero(&vars), |acc, j| {
        let t = m[0][j].mul(&minor(m, 0, j));
        if j % 2 == 1 {
            acc.sub(&t)
        } else {
            acc.add(&t)
        }
    })
}

/// Writing `X = ABA`, the braid relation is `X = BAB` with `B = A⁻¹XA⁻¹`,
/// i.e. `A·X·A = X·A⁻¹·X`; multiplied by `det A` this is polynomial.
fn braid_generators(a: &PolyMatrix, x: &PolyMatrix) -> Vec<MultiPoly> {
    let d = det3(a);
    let lhs = pm_mul(&pm_mul(a, x), a);
    let rhs = pm_mul(&pm_mul(x, &adjugate3(a)), x);
    let mut out = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            let e = lhs[i][j].mul(&d).sub(&rhs[i][j]);
            if !e.is_zero() {
                out.push(e.primitive());
            }
        }
    }
    out
}

fn grid_strings(g: &Grid) -> [[String; 3]; 3] {
    g.map(|row| row.map(str::to_string))
}

/// Every Gröbner run of a case, with its listed relations.
pub fn case_stages(case: EliminationCase) -> Result<Vec<CaseStage>> {
    let vars = MultiPoly::ring(&CASE_VARIABLES);
    let k = MultiPoly::variable(&vars, "k")?;
    let one = MultiPoly::constant(&vars, Rational::one());
    stage_specs(case)
        .into_iter()
        .map(|spec| {
            let a = poly_matrix(&vars, &spec.a)?;
            let x = poly_matrix(&vars, &spec.aba)?;
            let mut generators = braid_generators(&a, &x);
            let mut product = one.clone();
            for f in spec.nonzero {
                product = product.mul(&MultiPoly::parse(&vars, f)?);
            }
            generators.push(product.mul(&k).sub(&one));
            let relations = spec
                .relations
                .iter()
                .map(|(r, c)| {
                    Ok(ListedRelation {
                        relation: MultiPoly::parse(&vars, r)?,
                        correction: c.map(|c| MultiPoly::parse(&vars, c)).transpose()?,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(CaseStage {
                label: spec.label.to_string(),
                a: grid_strings(&spec.a),
                aba: grid_strings(&spec.aba),
                nonzero: spec.nonzero.iter().map(|s| s.to_string()).collect(),
                ideal: Ideal { generators, order: ELIMINATION_ORDER },
                relations,
            })
        })
        .collect()
}

/// The saturated braid ideal of the first run of a case.
pub fn braid_ideal(case: EliminationCase) -> Result<Ideal> {
    Ok(case_stages(case)?.remove(0).ideal)
}

#[derive(Clone, Debug)]
pub struct RelationCheck {
    pub relation: MultiPoly,
    /// Normal form zero in the saturated ideal.
    pub member: bool,
    /// For non-members without a correction: whether the relation still
    /// vanishes on the variety.
    pub radical_member: Option<bool>,
    /// For listed typos: the corrected relation and its ideal membership.
    pub correction: Option<(MultiPoly, bool)>,
}

impl RelationCheck {
    /// The relation, or its correction, is a consequence of the braid relation.
    pub fn resolved(&self) -> bool {
        self.member || self.radical_member == Some(true) || self.correction.as_ref().is_some_and(|(_, m)| *m)
    }
}

#[derive(Clone, Debug)]
pub struct StageReport {
    pub label: String,
    pub basis_size: usize,
    pub steps: u64,
    pub criterion_holds: Option<bool>,
    pub checks: Vec<RelationCheck>,
}

#[derive(Clone, Debug)]
pub struct CaseReport {
    pub case: EliminationCase,
    pub stages: Vec<StageReport>,
}

impl CaseReport {
    /// Every listed relation, exactly as listed, is in its ideal.
    pub fn all_listed_members(&self) -> bool {
        self.stages.iter().all(|s| s.checks.iter().all(|c| c.member))
    }

    /// Every listed relation is accounted for by ideal membership, radical
    /// membership, or a verified correction.
    pub fn all_resolved(&self) -> bool {
        self.stages.iter().all(|s| s.checks.iter().all(RelationCheck::resolved))
    }

    pub fn checks(&self) -> impl Iterator<Item = &RelationCheck> {
        self.stages.iter().flat_map(|s| &s.checks)
    }
}

/// Options for [`verify_elimination_case_with`].
#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    pub step_budget: u64,
    /// Also test Buchberger's criterion on each computed basis.
    pub check_criterion: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { step_budget: DEFAULT_STEP_BUDGET, check_criterion: false }
    }
}

pub fn verify_elimination_case(case: EliminationCase) -> Result<CaseReport> {
    verify_elimination_case_with(case, VerifyOptions::default())
}

/// Builds each stage's basis under the elimination order and tests every
/// listed relation.
pub fn verify_elimination_case_with(case: EliminationCase, opts: VerifyOptions) -> Result<CaseReport> {
    let mut stages = Vec::new();
    for stage in case_stages(case)? {
        let gb = buchberger_with_budget(&stage.ideal.generators, stage.ideal.order, opts.step_budget)?;
        let mut checks = Vec::new();
        for rel in &stage.relations {
            let member = gb.contains(&rel.relation);
            // the radical test is only informative when no correction explains the miss
            let radical_member = if member || rel.correction.is_some() {
                None
            } else {
                Some(radical_contains(&stage.ideal.generators, &rel.relation, "t", stage.ideal.order, opts.step_budget)?)
            };
            let correction = rel.correction.as_ref().map(|c| (c.clone(), gb.contains(c)));
            checks.push(RelationCheck { relation: rel.relation.clone(), member, radical_member, correction });
        }
        stages.push(StageReport {
            label: stage.label.clone(),
            basis_size: gb.len(),
            steps: gb.steps(),
            criterion_holds: opts.check_criterion.then(|| gb.satisfies_buchberger_criterion()),
            checks,
        });
    }
    Ok(CaseReport { case, stages })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ring() -> Arc<[String]> {
        MultiPoly::ring(&["x", "y", "z"])
    }

    fn p(s: &str) -> MultiPoly {
        MultiPoly::parse(&ring(), s).unwrap()
    }

    #[test]
    fn textbook_lex_basis() {
        let gb = buchberger(&[p("x^2-1"), p("x*y-1")], MonomialOrder::Lex).unwrap();
        let mut got: Vec<String> = gb.elements().iter().map(|e| e.to_string()).collect();
        got.sort();
        assert_eq!(got, vec!["x - y", "y^2 - 1"]);
        assert!(gb.satisfies_buchberger_criterion());
    }

    #[test]
    fn trivial_bases() {
        let gb = buchberger(&[p("x")], MonomialOrder::DegRevLex).unwrap();
        assert_eq!(gb.elements(), vec![p("x")]);
        assert_eq!(normal_form(&p("1"), &gb), p("1"));
        assert!(buchberger(&[], MonomialOrder::Lex).unwrap().is_empty());
        let unit = buchberger(&[p("x"), p("x-1")], MonomialOrder::Lex).unwrap();
        assert!(unit.is_unit_ideal());
    }

    #[test]
    fn parse_and_print() {
        assert_eq!(p("(x+y)^2 - 2*x*y").to_string(), "x^2 + y^2");
        assert_eq!(p("x/2 - 3").to_string(), "1/2*x - 3");
        assert!(MultiPoly::parse(&ring(), "x/y").is_err());
        assert!(MultiPoly::parse(&ring(), "w").is_err());
    }

    #[test]
    fn normal_form_is_exact_remainder() {
        let gb = buchberger(&[p("x^2 - y"), p("x*y - z")], MonomialOrder::DegRevLex).unwrap();
        let f = p("x^3 + 2*z/3");
        let r = normal_form(&f, &gb);
        // f − r must lie in the ideal
        assert!(gb.contains(&f.sub(&r)));
        assert_eq!(normal_form(&r, &gb), r);
    }

    #[test]
    fn elimination_drops_block() {
        let vars = MultiPoly::ring(&["k", "x", "y"]);
        let q = |s: &str| MultiPoly::parse(&vars, s).unwrap();
        let gb = buchberger(&[q("x*y*k - 1"), q("x^2 - y^2")], MonomialOrder::Block { first: 1 }).unwrap();
        let free: Vec<_> = gb.elements().into_iter().filter(|g| !g.uses("k")).collect();
        assert!(!free.is_empty());
        assert!(gb.contains(&q("x^2 - y^2")));
    }

    #[test]
    fn radical_detects_nilpotents() {
        let vars = MultiPoly::ring(&["x", "t"]);
        let q = |s: &str| MultiPoly::parse(&vars, s).unwrap();
        let gens = [q("x^2")];
        let gb = buchberger(&gens, MonomialOrder::DegRevLex).unwrap();
        assert!(!gb.contains(&q("x")));
        assert!(radical_contains(&gens, &q("x"), "t", MonomialOrder::DegRevLex, 10_000).unwrap());
    }

    #[test]
    fn budget_is_enforced() {
        let gens = [p("x^3 - y*z"), p("y^3 - x*z"), p("z^3 - x*y")];
        assert!(matches!(
            buchberger_with_budget(&gens, MonomialOrder::Lex, 3),
            Err(Error::StepBudgetExceeded { budget: 3 })
        ));
    }

    #[test]
    fn case_ideals_have_nine_entries_and_saturation() {
        for case in EliminationCase::ALL {
            let ideal = braid_ideal(case).unwrap();
            let sat: Vec<_> = ideal.generators.iter().filter(|g| g.uses("k")).collect();
            assert_eq!(sat.len(), 1, "{case}");
            assert!(ideal.generators.len() <= 10);
        }
        assert!(matches!("4.1".parse::<EliminationCase>(), Err(Error::UnknownCase(_))));
    }

    #[test]
    fn case_1_1_relations() {
        let report = verify_elimination_case(EliminationCase::C1_1).unwrap();
        assert!(report.all_listed_members());
    }

    fn small_poly() -> impl Strategy<Value = MultiPoly> {
        prop::collection::vec((0u16..3, 0u16..3, 0u16..3, -4i64..5), 1..4).prop_map(|ts| {
            let vars = ring();
            MultiPoly::from_terms(
                &vars,
                ts.into_iter().map(|(a, b, c, v)| {
                    let mut m = Monomial::one();
                    m.exps[0] = a;
                    m.exps[1] = b;
                    m.exps[2] = c;
                    (m, Rational::from_integer(v.into()))
                }),
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn bases_satisfy_criterion_and_keep_generators(f in small_poly(), g in small_poly()) {
            let gb = buchberger_with_budget(&[f.clone(), g.clone()], MonomialOrder::DegRevLex, 200_000);
            prop_assume!(gb.is_ok());
            let gb = gb.unwrap();
            prop_assert!(gb.satisfies_buchberger_criterion());
            prop_assert!(gb.contains(&f));
            prop_assert!(gb.contains(&g));
            // same ideal from the other order
            let other = buchberger_with_budget(&[f.clone(), g.clone()], MonomialOrder::Lex, 200_000);
            prop_assume!(other.is_ok());
            for e in other.unwrap().elements() {
                prop_assert!(gb.contains(&e));
            }
        }

        #[test]
        fn normal_form_ignores_ideal_shifts(f in small_poly(), g in small_poly(), q in small_poly(), h in small_poly()) {
            let gb = buchberger_with_budget(&[g.clone(), h.clone()], MonomialOrder::DegRevLex, 200_000);
            prop_assume!(gb.is_ok());
            let gb = gb.unwrap();
            let shifted = f.add(&q.mul(&g));
            prop_assert_eq!(normal_form(&shifted, &gb), normal_form(&f, &gb));
            prop_assert_eq!(gb.contains(&f), gb.contains(&f.primitive()));
        }
    }
}

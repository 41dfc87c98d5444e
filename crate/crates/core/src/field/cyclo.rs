use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::{content, format_rational, Rational};
use super::FieldError;

/// Per-conductor data: the cyclotomic polynomial and reduced powers of ζ.
pub(crate) struct Tables {
    pub n: u32,
    pub phi: usize,
    /// Φ_N, ascending coefficients, monic.
    pub cyclo: Vec<BigInt>,
    /// `powers[m]` is ζ^m reduced mod Φ_N, for `m < max(N, 2φ - 1)`.
    pub powers: Vec<Vec<BigInt>>,
}

fn poly_divexact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    // den is monic
    let mut r = num.to_vec();
    let dd = den.len() - 1;
    let mut q = vec![BigInt::zero(); r.len() - dd];
    for i in (0..q.len()).rev() {
        let c = r[i + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            r[i + j] -= &c * dj;
        }
        q[i] = c;
    }
    debug_assert!(r.iter().all(Zero::is_zero));
    q
}

fn cyclotomic_poly(n: u32, memo: &mut HashMap<u32, Vec<BigInt>>) -> Vec<BigInt> {
    if let Some(p) = memo.get(&n) {
        return p.clone();
    }
    let mut p = vec![BigInt::zero(); n as usize + 1];
    p[0] = BigInt::from(-1);
    p[n as usize] = BigInt::one();
    for d in 1..n {
        if n % d == 0 {
            let f = cyclotomic_poly(d, memo);
            p = poly_divexact(&p, &f);
        }
    }
    memo.insert(n, p.clone());
    p
}

fn build_tables(n: u32) -> Tables {
    let mut memo = HashMap::new();
    let cyclo = cyclotomic_poly(n, &mut memo);
    let phi = cyclo.len() - 1;
    let len = (n as usize).max(2 * phi - 1).max(1);
    let mut powers = Vec::with_capacity(len);
    let mut cur = vec![BigInt::zero(); phi];
    cur[0] = BigInt::one();
    for _ in 0..len {
        powers.push(cur.clone());
        // multiply by x, then fold the overflow coefficient back with Φ_N
        let top = cur[phi - 1].clone();
        let mut next = vec![BigInt::zero(); phi];
        for i in (1..phi).rev() {
            next[i] = cur[i - 1].clone();
        }
        if !top.is_zero() {
            for i in 0..phi {
                next[i] -= &top * &cyclo[i];
            }
        }
        cur = next;
    }
    Tables { n, phi, cyclo, powers }
}

pub(crate) fn tables(n: u32) -> &'static Tables {
    static CACHE: OnceLock<Mutex<HashMap<u32, &'static Tables>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap_or_else(|e| e.into_inner());
    guard.entry(n).or_insert_with(|| Box::leak(Box::new(build_tables(n))))
}

pub(crate) fn euler_phi(n: u32) -> usize {
    let mut result = n as usize;
    let mut m = n as usize;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// An element of ℚ(ζ_N), stored as `(Σ num_i ζ^i) / den` in the power basis
/// `1, ζ, …, ζ^(φ(N)-1)`.
///
/// The representation is canonical: `den > 0` and `gcd(den, num_0, …) = 1`,
/// so structural equality is field equality.
#[derive(Clone)]
pub struct CycloElement {
    tab: &'static Tables,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CycloElement {
    /// Reduces an arbitrary-length coefficient list modulo Φ_N.
    pub fn new(conductor: u32, coeffs: &[Rational]) -> Result<Self, FieldError> {
        if conductor == 0 {
            return Err(FieldError::InvalidConductor);
        }
        let tab = tables(conductor);
        let den = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        Ok(Self::from_int_poly(tab, &ints, den))
    }

    pub(crate) fn from_int_poly(tab: &'static Tables, poly: &[BigInt], den: BigInt) -> Self {
        let mut num = vec![BigInt::zero(); tab.phi];
        for (m, c) in poly.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if m < tab.phi {
                num[m] += c;
            } else {
                let pw = power_vec(tab, m);
                for (i, p) in pw.iter().enumerate() {
                    if !p.is_zero() {
                        num[i] += c * p;
                    }
                }
            }
        }
        let mut e = Self { tab, num, den };
        e.normalize();
        e
    }

    fn normalize(&mut self) {
        if self.num.iter().all(Zero::is_zero) {
            self.den = BigInt::one();
            return;
        }
        let mut g = content(&self.num);
        g = g.gcd(&self.den);
        if self.den.is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for c in self.num.iter_mut() {
                *c = &*c / &g;
            }
            self.den = &self.den / &g;
        }
    }

    pub fn zero(conductor: u32) -> Self {
        let tab = tables(conductor.max(1));
        Self { tab, num: vec![BigInt::zero(); tab.phi], den: BigInt::one() }
    }

    pub fn one(conductor: u32) -> Self {
        Self::from_int(conductor, 1)
    }

    pub fn from_int(conductor: u32, v: i64) -> Self {
        let mut e = Self::zero(conductor);
        e.num[0] = BigInt::from(v);
        e
    }

    pub fn from_rational(conductor: u32, r: &Rational) -> Self {
        let mut e = Self::zero(conductor);
        e.num[0] = r.numer().clone();
        e.den = r.denom().clone();
        e.normalize();
        e
    }

    /// ζ_N^k with `k` reduced mod N.
    pub fn root_of_unity(conductor: u32, k: i64) -> Self {
        let tab = tables(conductor.max(1));
        let m = k.rem_euclid(tab.n as i64) as usize;
        Self { tab, num: tab.powers[m].clone(), den: BigInt::one() }
    }

    pub fn conductor(&self) -> u32 {
        self.tab.n
    }

    /// Degree φ(N) of the field over ℚ.
    pub fn degree(&self) -> usize {
        self.tab.phi
    }

    /// Power-basis coordinates, always of length φ(N).
    pub fn coeffs(&self) -> Vec<Rational> {
        self.num.iter().map(|c| Rational::new(c.clone(), self.den.clone())).collect()
    }

    pub fn coeff(&self, i: usize) -> Rational {
        Rational::new(self.num[i].clone(), self.den.clone())
    }

    pub(crate) fn int_parts(&self) -> (&[BigInt], &BigInt) {
        (&self.num, &self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(Zero::is_zero)
    }

    /// The rational value if the element lies in ℚ.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.num[1..].iter().all(Zero::is_zero) {
            Some(Rational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    fn check(&self, other: &Self) -> Result<(), FieldError> {
        if self.tab.n != other.tab.n {
            return Err(FieldError::ConductorMismatch { left: self.tab.n, right: other.tab.n });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, FieldError> {
        self.check(other)?;
        Ok(self.add_sub(other, false))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, FieldError> {
        self.check(other)?;
        Ok(self.add_sub(other, true))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, FieldError> {
        self.check(other)?;
        Ok(self.mul_impl(other))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, FieldError> {
        self.check(other)?;
        Ok(self.mul_impl(&other.inv()?))
    }

    fn add_sub(&self, other: &Self, sub: bool) -> Self {
        let tab = self.tab;
        let mut num = Vec::with_capacity(tab.phi);
        let den;
        if self.den == other.den {
            for (a, b) in self.num.iter().zip(&other.num) {
                num.push(if sub { a - b } else { a + b });
            }
            den = self.den.clone();
        } else {
            for (a, b) in self.num.iter().zip(&other.num) {
                let x = a * &other.den;
                let y = b * &self.den;
                num.push(if sub { x - y } else { x + y });
            }
            den = &self.den * &other.den;
        }
        let mut e = Self { tab, num, den };
        e.normalize();
        e
    }

    fn mul_impl(&self, other: &Self) -> Self {
        let tab = self.tab;
        if let Some(s) = self.scalar_int() {
            return other.scale_int(s, &self.den);
        }
        if let Some(s) = other.scalar_int() {
            return self.scale_int(s, &other.den);
        }
        let phi = tab.phi;
        let mut prod = vec![BigInt::zero(); 2 * phi - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.num.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        Self::from_int_poly(tab, &prod, &self.den * &other.den)
    }

    fn scalar_int(&self) -> Option<&BigInt> {
        if self.num[1..].iter().all(Zero::is_zero) {
            Some(&self.num[0])
        } else {
            None
        }
    }

    fn scale_int(&self, s: &BigInt, den: &BigInt) -> Self {
        let num = self.num.iter().map(|c| c * s).collect();
        let mut e = Self { tab: self.tab, num, den: &self.den * den };
        e.normalize();
        e
    }

    /// Multiplicative inverse by the extended Euclidean algorithm in ℚ[x]
    /// modulo Φ_N.
    pub fn inv(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            let r = r.recip();
            return Ok(Self::from_rational(self.tab.n, &r));
        }
        let a: Vec<Rational> = self.num.iter().map(|c| Rational::from_integer(c.clone())).collect();
        let m: Vec<Rational> = self.tab.cyclo.iter().map(|c| Rational::from_integer(c.clone())).collect();
        let s = qpoly::inverse_mod(&a, &m);
        // a/den inverted is den * a^{-1}
        let den = Rational::from_integer(self.den.clone());
        let coeffs: Vec<Rational> = s.into_iter().map(|c| c * &den).collect();
        Self::new(self.tab.n, &coeffs)
    }

    pub fn pow(&self, exp: i64) -> Result<Self, FieldError> {
        let base = if exp < 0 { self.inv()? } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Self::one(self.tab.n);
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_impl(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul_impl(&b);
            }
        }
        Ok(acc)
    }

    /// Image under the automorphism ζ ↦ ζ^j (`gcd(j, N) = 1`).
    pub fn galois(&self, j: u32) -> Self {
        let tab = self.tab;
        let mut num = vec![BigInt::zero(); tab.phi];
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let m = (i as u64 * j as u64 % tab.n as u64) as usize;
            for (k, p) in tab.powers[m].iter().enumerate() {
                if !p.is_zero() {
                    num[k] += c * p;
                }
            }
        }
        let mut e = Self { tab, num, den: self.den.clone() };
        e.normalize();
        e
    }

    /// Complex conjugate under the standard embedding ζ_N ↦ e^{2πi/N}.
    pub fn conj(&self) -> Self {
        self.galois(self.tab.n - 1)
    }

    /// Moves the element into ℚ(ζ_target): a plain lift when the source
    /// conductor divides the target, otherwise a subfield membership solve.
    pub fn embed(&self, target: u32) -> Result<Self, FieldError> {
        if target == 0 {
            return Err(FieldError::InvalidConductor);
        }
        let n = self.tab.n;
        if n == target {
            return Ok(self.clone());
        }
        if target % n == 0 {
            return Ok(self.lift_divisible(target));
        }
        let l = n.lcm(&target);
        let lifted = self.lift_divisible(l);
        // express `lifted` in the image of the target power basis inside ℚ(ζ_l)
        let ttab = tables(target);
        let basis: Vec<Vec<Rational>> = (0..ttab.phi)
            .map(|i| CycloElement::root_of_unity(target, i as i64).lift_divisible(l).coeffs())
            .collect();
        let rhs = lifted.coeffs();
        match qpoly::solve_combination(&basis, &rhs) {
            Some(c) => Self::new(target, &c),
            None => Err(FieldError::NotInSubfield { source_conductor: n, target }),
        }
    }

    fn lift_divisible(&self, target: u32) -> Self {
        let step = (target / self.tab.n) as usize;
        let ttab = tables(target);
        let mut poly = vec![BigInt::zero(); (self.tab.phi - 1) * step + 1];
        for (i, c) in self.num.iter().enumerate() {
            poly[i * step] = c.clone();
        }
        Self::from_int_poly(ttab, &poly, self.den.clone())
    }

    /// Galois norm down to ℚ.
    pub fn norm(&self) -> Rational {
        let n = self.tab.n;
        let mut acc = Self::one(n);
        for j in 1..n.max(2) {
            if j.gcd(&n) == 1 {
                acc = acc.mul_impl(&self.galois(j));
            }
        }
        acc.as_rational().expect("norm lies in Q")
    }

    /// Numerical value under the standard embedding (for diagnostics only).
    pub fn to_complex_f64(&self) -> num_complex::Complex64 {
        let n = self.tab.n as f64;
        let d = super::rational::bigint_to_f64(&self.den);
        let mut acc = num_complex::Complex64::new(0.0, 0.0);
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let ang = 2.0 * std::f64::consts::PI * i as f64 / n;
            acc += num_complex::Complex64::from_polar(super::rational::ratio_to_f64(c, &BigInt::one()), ang);
        }
        acc / d
    }
}

fn power_vec(tab: &'static Tables, m: usize) -> std::borrow::Cow<'static, [BigInt]> {
    if m < tab.powers.len() {
        std::borrow::Cow::Borrowed(&tab.powers[m])
    } else {
        std::borrow::Cow::Owned(tab.powers[m % tab.n as usize].clone())
    }
}

impl PartialEq for CycloElement {
    fn eq(&self, other: &Self) -> bool {
        self.tab.n == other.tab.n && self.den == other.den && self.num == other.num
    }
}

impl Eq for CycloElement {}

impl Hash for CycloElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.tab.n.hash(state);
        self.den.hash(state);
        self.num.hash(state);
    }
}

/// Canonical (non-field) order: conductor, then coordinates lexicographically.
impl Ord for CycloElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.tab.n.cmp(&other.tab.n).then_with(|| {
            for (a, b) in self.num.iter().zip(&other.num) {
                let o = (a * &other.den).cmp(&(b * &self.den));
                if o != Ordering::Equal {
                    return o;
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for CycloElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for CycloElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(z{})[{}]", self.tab.n, self)
    }
}

/// Renders as a polynomial in `z` (the primitive N-th root), e.g. `1/2 - z^3`.
impl fmt::Display for CycloElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let mono = match i {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{i}"),
            };
            if mono.is_empty() {
                write!(f, "{}", format_rational(&a))?;
            } else if a.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{}*{mono}", format_rational(&a))?;
            }
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl $tr<&CycloElement> for &CycloElement {
            type Output = CycloElement;
            fn $m(self, rhs: &CycloElement) -> CycloElement {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<CycloElement> for CycloElement {
            type Output = CycloElement;
            fn $m(self, rhs: CycloElement) -> CycloElement {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&CycloElement> for CycloElement {
            type Output = CycloElement;
            fn $m(self, rhs: &CycloElement) -> CycloElement {
                (&self).$m(rhs)
            }
        }
        impl $tr<CycloElement> for &CycloElement {
            type Output = CycloElement;
            fn $m(self, rhs: CycloElement) -> CycloElement {
                self.$m(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);
forward_binop!(Div, div, checked_div);

impl Neg for &CycloElement {
    type Output = CycloElement;
    fn neg(self) -> CycloElement {
        CycloElement { tab: self.tab, num: self.num.iter().map(|c| -c).collect(), den: self.den.clone() }
    }
}

impl Neg for CycloElement {
    type Output = CycloElement;
    fn neg(self) -> CycloElement {
        -&self
    }
}

/// Dense univariate arithmetic over ℚ, just enough for inversion and subfield
/// membership.
mod qpoly {
    use super::Rational;
    use num_traits::Zero;

    fn trim(p: &mut Vec<Rational>) {
        while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
            p.pop();
        }
    }

    fn is_zero(p: &[Rational]) -> bool {
        p.iter().all(Zero::is_zero)
    }

    fn divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
        let mut r = a.to_vec();
        trim(&mut r);
        let mut b = b.to_vec();
        trim(&mut b);
        let db = b.len() - 1;
        let lb = b[db].clone();
        if r.len() < b.len() {
            return (vec![Rational::zero()], r);
        }
        let mut q = vec![Rational::zero(); r.len() - db];
        for i in (0..q.len()).rev() {
            let c = &r[i + db] / &lb;
            if c.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                r[i + j] -= &c * bj;
            }
            q[i] = c;
        }
        r.truncate(db.max(1));
        trim(&mut r);
        (q, r)
    }

    fn mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        out
    }

    fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let n = a.len().max(b.len());
        let mut out = vec![Rational::zero(); n];
        for (i, x) in a.iter().enumerate() {
            out[i] += x;
        }
        for (i, y) in b.iter().enumerate() {
            out[i] -= y;
        }
        trim(&mut out);
        out
    }

    /// `a^{-1} mod m` for coprime `a`, `m`.
    pub(super) fn inverse_mod(a: &[Rational], m: &[Rational]) -> Vec<Rational> {
        let (mut r0, mut r1) = (m.to_vec(), a.to_vec());
        trim(&mut r1);
        let (mut s0, mut s1) = (vec![Rational::zero()], vec![Rational::from_integer(1.into())]);
        while !is_zero(&r1) {
            let (q, r) = divrem(&r0, &r1);
            let s2 = sub(&s0, &mul(&q, &s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
        }
        // r0 is a nonzero constant
        let c = r0[0].clone();
        s0.into_iter().map(|x| x / &c).collect()
    }

    /// Solves `Σ c_i basis[i] = rhs` over ℚ; `None` when inconsistent.
    pub(super) fn solve_combination(basis: &[Vec<Rational>], rhs: &[Rational]) -> Option<Vec<Rational>> {
        let k = basis.len();
        let n = rhs.len();
        // augmented n × (k+1) system, column i = basis[i]
        let mut m: Vec<Vec<Rational>> =
            (0..n).map(|r| (0..k).map(|c| basis[c][r].clone()).chain([rhs[r].clone()]).collect()).collect();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..k {
            let Some(p) = (row..n).find(|&r| !m[r][col].is_zero()) else { continue };
            m.swap(row, p);
            let inv = m[row][col].recip();
            for x in m[row].iter_mut() {
                *x *= &inv;
            }
            for r in 0..n {
                if r != row && !m[r][col].is_zero() {
                    let f = m[r][col].clone();
                    for c in 0..=k {
                        let t = &f * &m[row][c];
                        m[r][c] -= t;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        if m[row..].iter().any(|r| !r[k].is_zero()) {
            return None;
        }
        let mut out = vec![Rational::zero(); k];
        for (i, &c) in pivots.iter().enumerate() {
            out[c] = m[i][k].clone();
        }
        Some(out)
    }
}

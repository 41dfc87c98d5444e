//! Fixed-point complex arithmetic on big integers, used to locate roots
//! numerically before exact reconstruction.
//!
//! A value `v` at precision `p` is stored as the integer `round(v · 2^p)`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

use super::rational::{bigint_to_f64, Rational};
use super::CycloElement;

/// Complex fixed-point number; the scale is carried by the caller.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CFix {
    pub re: BigInt,
    pub im: BigInt,
}

impl CFix {
    pub fn zero() -> Self {
        Self { re: BigInt::zero(), im: BigInt::zero() }
    }

    pub fn from_f64(z: Complex64, p: u32) -> Self {
        Self { re: f64_to_fixed(z.re, p), im: f64_to_fixed(z.im, p) }
    }

    pub fn to_f64(&self, p: u32) -> Complex64 {
        Complex64::new(fixed_to_f64(&self.re, p), fixed_to_f64(&self.im, p))
    }

    pub fn add(&self, o: &Self) -> Self {
        Self { re: &self.re + &o.re, im: &self.im + &o.im }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self { re: &self.re - &o.re, im: &self.im - &o.im }
    }

    pub fn mul(&self, o: &Self, p: u32) -> Self {
        let re = (&self.re * &o.re - &self.im * &o.im) >> p;
        let im = (&self.re * &o.im + &self.im * &o.re) >> p;
        Self { re, im }
    }

    /// `None` when the divisor is zero at this precision.
    pub fn div(&self, o: &Self, p: u32) -> Option<Self> {
        let den = &o.re * &o.re + &o.im * &o.im;
        if den.is_zero() {
            return None;
        }
        let re = ((&self.re * &o.re + &self.im * &o.im) << p) / &den;
        let im = ((&self.im * &o.re - &self.re * &o.im) << p) / &den;
        Some(Self { re, im })
    }

    /// Multiplies by an exact rational.
    pub fn scale(&self, r: &Rational) -> Self {
        Self { re: &self.re * r.numer() / r.denom(), im: &self.im * r.numer() / r.denom() }
    }

    /// Changes precision from `from` to `to` bits.
    pub fn rescale(&self, from: u32, to: u32) -> Self {
        if to >= from {
            Self { re: &self.re << (to - from), im: &self.im << (to - from) }
        } else {
            Self { re: &self.re >> (from - to), im: &self.im >> (from - to) }
        }
    }

    /// Max-norm magnitude bound, as a bit length.
    pub fn bits(&self) -> u64 {
        self.re.bits().max(self.im.bits())
    }
}

fn f64_to_fixed(v: f64, p: u32) -> BigInt {
    if v == 0.0 || !v.is_finite() {
        return BigInt::zero();
    }
    let (mant, exp) = frexp(v);
    // v = mant · 2^exp with |mant| in [0.5, 1)
    let m = (mant * (1u64 << 53) as f64) as i64;
    let shift = exp - 53 + p as i32;
    let m = BigInt::from(m);
    if shift >= 0 {
        m << shift as u32
    } else {
        m >> (-shift) as u32
    }
}

fn frexp(v: f64) -> (f64, i32) {
    let bits = v.abs().log2().floor() as i32 + 1;
    let mut exp = bits;
    let mut mant = v / 2f64.powi(exp);
    while mant.abs() >= 1.0 {
        mant /= 2.0;
        exp += 1;
    }
    while mant.abs() < 0.5 {
        mant *= 2.0;
        exp -= 1;
    }
    (mant, exp)
}

fn fixed_to_f64(v: &BigInt, p: u32) -> f64 {
    let b = v.bits();
    if b <= 60 {
        return bigint_to_f64(v) / 2f64.powi(p as i32);
    }
    let drop = b - 60;
    bigint_to_f64(&(v >> drop)) * 2f64.powi(drop as i32 - p as i32)
}

/// atan(1/x) · 2^q by the alternating series.
fn atan_inv(x: u64, q: u32) -> BigInt {
    let x2 = BigInt::from(x * x);
    let mut power = (BigInt::one() << q) / x;
    let mut sum = BigInt::zero();
    let mut k: u64 = 0;
    while !power.is_zero() {
        let term = &power / (2 * k + 1);
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        power /= &x2;
        k += 1;
    }
    sum
}

/// π · 2^p, accurate to a few units in the last place.
pub fn pi_fixed(p: u32) -> BigInt {
    let q = p + 16;
    let pi = atan_inv(5, q) * 16 - atan_inv(239, q) * 4;
    pi >> 16
}

/// (cos θ, sin θ) at precision `p` for `θ` given at precision `p`, |θ| ≤ 8.
fn cos_sin(theta: &BigInt, p: u32) -> (BigInt, BigInt) {
    let one = BigInt::one() << p;
    let t2 = (theta * theta) >> p;
    let mut c = one.clone();
    let mut s = theta.clone();
    let mut tc = one;
    let mut ts = theta.clone();
    let mut k: u64 = 1;
    loop {
        tc = -((&tc * &t2) >> p) / BigInt::from((2 * k - 1) * (2 * k));
        ts = -((&ts * &t2) >> p) / BigInt::from((2 * k) * (2 * k + 1));
        if tc.is_zero() && ts.is_zero() {
            break;
        }
        c += &tc;
        s += &ts;
        k += 1;
    }
    (c, s)
}

/// Guard bits added on top of a requested precision when tabulating ζ^m.
fn guard_bits(n: u32) -> u32 {
    32 + (32 - n.leading_zeros())
}

type RootTable = Arc<Vec<CFix>>;

/// `e^{2πim/N}` for `0 ≤ m < N` at precision `p` (computed with guard bits,
/// then rounded). Each entry is within `8N · 2^{-(p + guard)}` before rounding.
pub fn unit_roots(n: u32, p: u32) -> RootTable {
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32), RootTable>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = cache.lock().unwrap_or_else(|e| e.into_inner()).get(&(n, p)) {
        return t.clone();
    }
    let g = guard_bits(n);
    let q = p + g;
    let theta = (pi_fixed(q) * 2) / n;
    let (c, s) = cos_sin(&theta, q);
    let base = CFix { re: c, im: s };
    let mut cur = CFix { re: BigInt::one() << q, im: BigInt::zero() };
    let mut out = Vec::with_capacity(n as usize);
    for _ in 0..n {
        out.push(cur.rescale(q, p));
        cur = cur.mul(&base, q);
    }
    let t = Arc::new(out);
    cache.lock().unwrap_or_else(|e| e.into_inner()).insert((n, p), t.clone());
    t
}

/// Image of `x` under ζ ↦ e^{2πij/N}, at precision `p`.
pub fn embed_fixed(x: &CycloElement, j: u32, p: u32) -> CFix {
    let n = x.conductor();
    let roots = unit_roots(n, p);
    let (num, den) = x.int_parts();
    let mut acc = CFix::zero();
    for (i, c) in num.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let w = &roots[(i as u64 * j as u64 % n as u64) as usize];
        acc.re += c * &w.re;
        acc.im += c * &w.im;
    }
    acc.re /= den;
    acc.im /= den;
    acc
}

/// Rigorous complex interval: the exact value lies within `radius` (in the
/// max norm on real and imaginary parts) of `re + i·im`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enclosure {
    pub re: Rational,
    pub im: Rational,
    pub radius: Rational,
}

impl Enclosure {
    pub fn contains_zero(&self) -> bool {
        self.re.abs() <= self.radius && self.im.abs() <= self.radius
    }
}

/// Encloses `x` under the standard embedding ζ_N ↦ e^{2πi/N}. The radius is
/// at most `2^(1-bits)·(1 + |x|)`; rational inputs are exact with radius 0.
pub fn complex_enclosure(x: &CycloElement, bits: u32) -> Enclosure {
    let bits = bits.max(16);
    if let Some(r) = x.as_rational() {
        return Enclosure { re: r, im: Rational::zero(), radius: Rational::zero() };
    }
    let n = x.conductor();
    let (num, den) = x.int_parts();
    let l1: BigInt = num.iter().map(|c| c.abs()).sum();
    let l1_bits = l1.bits().saturating_sub(den.bits()) as u32;
    let w = bits + l1_bits + 24;
    let g = guard_bits(n);
    let q = w + g;
    let roots = unit_roots(n, q);
    let mut re = BigInt::zero();
    let mut im = BigInt::zero();
    for (i, c) in num.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        re += c * &roots[i].re;
        im += c * &roots[i].im;
    }
    let scale = den * (BigInt::one() << q);
    // each tabulated root carries at most 8N ulps of drift plus one of rounding
    let per_root = Rational::new(BigInt::from(8 * n as u64 + 2), BigInt::one() << q);
    let radius = Rational::new(l1, den.clone()) * per_root;
    Enclosure { re: Rational::new(re, scale.clone()), im: Rational::new(im, scale), radius }
}

/// Simultaneous root approximation (Aberth–Ehrlich) for a polynomial with
/// complex coefficients in ascending order. Degree ≥ 1, leading coefficient
/// nonzero.
pub fn aberth_f64(coeffs: &[Complex64]) -> Vec<Complex64> {
    let d = coeffs.len() - 1;
    let lead = coeffs[d];
    let monic: Vec<Complex64> = coeffs.iter().map(|c| c / lead).collect();
    if d == 1 {
        return vec![-monic[0]];
    }
    // Cauchy bound for the starting circle
    let radius = 1.0 + monic[..d].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..d)
        .map(|k| Complex64::from_polar(radius * 0.5, 0.4 + 2.0 * std::f64::consts::PI * k as f64 / d as f64))
        .collect();
    let eval = |x: Complex64| -> (Complex64, Complex64) {
        let mut p = Complex64::new(0.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for c in monic.iter().rev() {
            dp = dp * x + p;
            p = p * x + c;
        }
        (p, dp)
    };
    for _ in 0..1000 {
        let mut moved = 0.0f64;
        for i in 0..d {
            let (p, dp) = eval(z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let mut s = Complex64::new(0.0, 0.0);
            for j in 0..d {
                if j != i {
                    s += 1.0 / (z[i] - z[j]);
                }
            }
            let step = ratio / (1.0 - ratio * s);
            if step.is_finite() {
                z[i] -= step;
                moved = moved.max(step.norm() / (1.0 + z[i].norm()));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

/// Horner evaluation of a fixed-point polynomial and its derivative.
fn eval_fixed(coeffs: &[CFix], x: &CFix, p: u32) -> (CFix, CFix) {
    let mut v = CFix::zero();
    let mut dv = CFix::zero();
    for c in coeffs.iter().rev() {
        dv = dv.mul(x, p).add(&v);
        v = v.mul(x, p).add(c);
    }
    (v, dv)
}

/// Newton polish of an approximate simple root at precision `p`.
pub fn newton_fixed(coeffs: &[CFix], start: &CFix, p: u32) -> CFix {
    let mut z = start.clone();
    let mut last_bits = u64::MAX;
    for _ in 0..(2 * (32 - p.leading_zeros()) + 8) {
        let (v, dv) = eval_fixed(coeffs, &z, p);
        let Some(step) = v.div(&dv, p) else { break };
        z = z.sub(&step);
        let b = step.bits();
        if b <= 2 || (b >= last_bits && b < 8) {
            break;
        }
        last_bits = b;
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rat, root_of_unity};

    #[test]
    fn pi_digits() {
        let p = 200;
        let pi = pi_fixed(p);
        let approx = fixed_to_f64(&pi, p);
        assert!((approx - std::f64::consts::PI).abs() < 1e-15);
        // agreement between two precisions
        let hi: BigInt = pi_fixed(p + 50) >> 50u32;
        assert!((&hi - &pi).abs() <= BigInt::from(4));
    }

    #[test]
    fn sixth_root_enclosure() {
        let e = complex_enclosure(&root_of_unity(6, 1), 64);
        let two = Rational::from_integer(2.into());
        let limit = Rational::new(BigInt::one(), BigInt::one() << 50u32);
        assert!((&e.re - rat(1, 2)).abs() <= &e.radius + &limit);
        // (im)^2 close to 3/4
        let im2 = &e.im * &e.im;
        assert!((im2 - rat(3, 4)).abs() < limit);
        assert!(e.radius <= limit);
        assert!(e.radius > Rational::zero());
        let _ = two;
    }

    #[test]
    fn rational_enclosures_are_exact() {
        let one = complex_enclosure(&CycloElement::one(24), 64);
        assert_eq!(one.re, rat(1, 1));
        assert!(one.radius.is_zero() && one.im.is_zero());
        let zero = complex_enclosure(&CycloElement::zero(24), 64);
        assert!(zero.re.is_zero() && zero.radius.is_zero() && zero.contains_zero());
    }

    #[test]
    fn radius_bound_holds_for_large_elements() {
        let x = CycloElement::new(24, &[rat(1000, 3), rat(-7, 2), rat(0, 1), rat(99999, 1)]).unwrap();
        for bits in [16, 64, 300] {
            let e = complex_enclosure(&x, bits);
            let abs_bound = Rational::from_integer(BigInt::from(100400));
            let lim = (Rational::one() + abs_bound) * Rational::new(BigInt::from(2), BigInt::one() << bits);
            assert!(e.radius <= lim);
            assert!(!e.contains_zero());
        }
    }

    #[test]
    fn aberth_finds_cyclotomic_roots() {
        // x^4 - 1
        let c: Vec<Complex64> = [-1.0, 0.0, 0.0, 0.0, 1.0].iter().map(|&v| Complex64::new(v, 0.0)).collect();
        let mut r = aberth_f64(&c);
        r.sort_by(|a, b| a.arg().partial_cmp(&b.arg()).unwrap());
        for z in &r {
            assert!((z.norm() - 1.0).abs() < 1e-12);
            assert!((z.powu(4) - 1.0).norm() < 1e-12);
        }
    }

    #[test]
    fn newton_reaches_full_precision() {
        let p = 512;
        // x^2 - 2
        let coeffs = vec![
            CFix { re: BigInt::from(-2) << p, im: BigInt::zero() },
            CFix::zero(),
            CFix { re: BigInt::one() << p, im: BigInt::zero() },
        ];
        let z = newton_fixed(&coeffs, &CFix::from_f64(Complex64::new(1.4142, 0.0), p), p);
        let sq = z.mul(&z, p);
        let err = &sq.re - (BigInt::from(2) << p);
        assert!(err.abs() < BigInt::from(1u32 << 8));
    }

    #[test]
    fn embedding_matches_f64() {
        let x = &root_of_unity(24, 5) + &CycloElement::from_int(24, 2);
        let v = embed_fixed(&x, 7, 128).to_f64(128);
        let want = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * 35.0 / 24.0) + 2.0;
        assert!((v - want).norm() < 1e-14);
        assert!((x.to_complex_f64() - (Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * 5.0 / 24.0) + 2.0)).norm() < 1e-14);
    }
}

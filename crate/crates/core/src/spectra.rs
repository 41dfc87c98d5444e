//! Eigenvalues in ℚ(ζ_N), generalized eigenspaces and Jordan forms.
//!
//! Roots are located numerically in every complex embedding, matched across
//! embeddings, turned into power-basis coordinates and rationalized by
//! continued fractions. Nothing is reported unless it is an exact root.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::field::numeric::{aberth_f64, embed_fixed, unit_roots, CFix};
use crate::field::{euler_phi, CycloElement, Rational};
use crate::linalg::{ExactMatrix, Subspace};
use crate::poly::Poly;

/// Default starting precision of the reconstruction ladder.
pub const DEFAULT_PRECISION: u32 = 256;
/// Precision at which the ladder gives up.
pub const MAX_PRECISION: u32 = 4096;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumReport {
    /// Distinct exact roots in canonical order, with algebraic multiplicity.
    pub roots: Vec<(CycloElement, usize)>,
    /// Whether the multiplicities account for the full degree.
    pub split: bool,
}

impl SpectrumReport {
    pub fn values(&self) -> Vec<CycloElement> {
        self.roots.iter().map(|(r, _)| r.clone()).collect()
    }
}

/// Roots of `p` lying in its coefficient field, starting the precision ladder
/// at `precision_bits`. An incomplete factorization is reported with
/// `split = false` rather than as an error.
pub fn roots_in_field(p: &Poly, precision_bits: u32) -> Result<SpectrumReport> {
    roots_with_ladder(p, precision_bits, MAX_PRECISION.max(precision_bits))
}

pub(crate) fn roots_with_ladder(p: &Poly, start_bits: u32, max_bits: u32) -> Result<SpectrumReport> {
    let Some(deg) = p.degree() else {
        return Err(Error::DimensionMismatch("roots of the zero polynomial".into()));
    };
    let mut found: Vec<CycloElement> = Vec::new();
    let mut remaining = p.square_free_part();
    // rational roots of small height are common; peel the obvious ones first
    for cand in quick_candidates(&remaining) {
        if remaining.degree().unwrap_or(0) >= 1 && remaining.eval(&cand).is_zero() {
            remaining = remaining.div_rem(&Poly::linear(&cand))?.0;
            found.push(cand);
        }
    }
    let mut bits = start_bits.max(64);
    while remaining.degree().unwrap_or(0) >= 1 {
        if remaining.degree() == Some(1) {
            let r = -&(&remaining.coeff(0) / &remaining.coeff(1));
            found.push(r);
            break;
        }
        for r in numeric_roots(&remaining, bits) {
            if remaining.eval(&r).is_zero() {
                remaining = remaining.div_rem(&Poly::linear(&r))?.0;
                found.push(r);
            }
        }
        if bits >= max_bits {
            break;
        }
        bits = (bits * 2).min(max_bits);
    }
    found.sort();
    found.dedup();
    let mut roots = Vec::with_capacity(found.len());
    for r in found {
        let mut q = p.clone();
        let mut mult = 0;
        let lin = Poly::linear(&r);
        while q.degree().unwrap_or(0) >= 1 && q.eval(&r).is_zero() {
            q = q.div_rem(&lin)?.0;
            mult += 1;
        }
        roots.push((r, mult));
    }
    let total: usize = roots.iter().map(|(_, m)| m).sum();
    Ok(SpectrumReport { roots, split: total == deg })
}

/// Small integers and roots of unity: cheap exact probes before numerics.
fn quick_candidates(p: &Poly) -> Vec<CycloElement> {
    let n = p.conductor();
    let mut out = vec![CycloElement::zero(n)];
    for v in 1..=3 {
        out.push(CycloElement::from_int(n, v));
        out.push(CycloElement::from_int(n, -v));
    }
    for k in 1..n as i64 {
        out.push(CycloElement::root_of_unity(n, k));
    }
    out
}

fn embedding_units(n: u32) -> Vec<u32> {
    if n <= 2 {
        return vec![1];
    }
    (1..=n / 2).filter(|j| j.gcd(&n) == 1).collect()
}

type MinkowskiInverse = Arc<Vec<Vec<BigInt>>>;

/// Inverse of the real Minkowski matrix of the power basis, at precision `p`.
fn minkowski_inverse(n: u32, p: u32) -> MinkowskiInverse {
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32), MinkowskiInverse>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(m) = cache.lock().unwrap_or_else(|e| e.into_inner()).get(&(n, p)) {
        return m.clone();
    }
    let phi = euler_phi(n);
    let q = p + 64;
    let roots = unit_roots(n, q);
    let units = embedding_units(n);
    let scale = BigInt::one() << q;
    let to_q = |v: &BigInt| CycloElement::from_rational(1, &Rational::new(v.clone(), scale.clone()));
    let mut rows = Vec::with_capacity(phi);
    for &j in &units {
        let re: Vec<CycloElement> = (0..phi).map(|i| to_q(&roots[(i as u64 * j as u64 % n as u64) as usize].re)).collect();
        rows.push(re);
        if n > 2 {
            let im: Vec<CycloElement> =
                (0..phi).map(|i| to_q(&roots[(i as u64 * j as u64 % n as u64) as usize].im)).collect();
            rows.push(im);
        }
    }
    let m = ExactMatrix::from_rows(rows).expect("square real system");
    let inv = m.inverse().expect("Minkowski matrix is nonsingular");
    let fixed: Vec<Vec<BigInt>> = (0..phi)
        .map(|i| {
            (0..phi)
                .map(|k| {
                    let r = inv.get(i, k).coeff(0);
                    (r.numer() << p) / r.denom()
                })
                .collect()
        })
        .collect();
    let out = Arc::new(fixed);
    cache.lock().unwrap_or_else(|e| e.into_inner()).insert((n, p), out.clone());
    out
}

/// Continued-fraction reconstruction of `x / 2^p`: the first convergent
/// within `2^(-3p/4)` whose denominator stays below `2^(p/4)`.
fn rationalize(x: &BigInt, p: u32) -> Option<Rational> {
    let den_limit = BigInt::one() << (p / 4);
    let (mut a, mut b) = (x.clone(), BigInt::one() << p);
    let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
    let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
    let target = Rational::new(x.clone(), BigInt::one() << p);
    let tol = Rational::new(BigInt::one(), BigInt::one() << (3 * p / 4));
    while !b.is_zero() {
        let (q, r) = a.div_mod_floor(&b);
        let h2 = &q * &h1 + &h0;
        let k2 = &q * &k1 + &k0;
        if k2 > den_limit {
            return None;
        }
        let conv = Rational::new(h2.clone(), k2.clone());
        if (&conv - &target).abs() < tol {
            return Some(conv);
        }
        h0 = std::mem::replace(&mut h1, h2);
        k0 = std::mem::replace(&mut k1, k2);
        a = std::mem::replace(&mut b, r);
    }
    None
}

/// Aberth refinement at fixed precision from f64 starting points.
fn aberth_fixed(coeffs: &[CFix], starts: &[CFix], p: u32) -> Vec<CFix> {
    let d = starts.len();
    let mut z = starts.to_vec();
    let one = CFix { re: BigInt::one() << p, im: BigInt::zero() };
    let iters = 2 * (32 - p.leading_zeros()) as usize + 6;
    for _ in 0..iters {
        let mut max_step = 0u64;
        for i in 0..d {
            let (mut v, mut dv) = (CFix::zero(), CFix::zero());
            for c in coeffs.iter().rev() {
                dv = dv.mul(&z[i], p).add(&v);
                v = v.mul(&z[i], p).add(c);
            }
            let Some(ratio) = v.div(&dv, p) else { continue };
            let mut s = CFix::zero();
            for j in 0..d {
                if j != i {
                    if let Some(t) = one.div(&z[i].sub(&z[j]), p) {
                        s = s.add(&t);
                    }
                }
            }
            let denom = one.sub(&ratio.mul(&s, p));
            let Some(step) = ratio.div(&denom, p) else { continue };
            max_step = max_step.max(step.bits());
            z[i] = z[i].sub(&step);
        }
        if max_step <= 2 {
            break;
        }
    }
    z
}

/// Candidate roots (not yet verified) of a monic square-free polynomial.
fn numeric_roots(q: &Poly, p: u32) -> Vec<CycloElement> {
    let n = q.conductor();
    let phi = euler_phi(n);
    let units = embedding_units(n);
    let work = p + 32;
    let mut per_embedding: Vec<Vec<CFix>> = Vec::with_capacity(units.len());
    for &j in &units {
        let coeffs: Vec<CFix> = q.coeffs().iter().map(|c| embed_fixed(c, j, work)).collect();
        let approx = aberth_f64(&coeffs.iter().map(|c| c.to_f64(work)).collect::<Vec<_>>());
        let starts: Vec<CFix> = approx.iter().map(|z| CFix::from_f64(*z, work)).collect();
        per_embedding.push(aberth_fixed(&coeffs, &starts, work).iter().map(|z| z.rescale(work, p)).collect());
    }
    let inv = minkowski_inverse(n, p);
    let d = per_embedding[0].len();
    let rest = units.len() - 1;
    let combos = d.checked_pow(rest as u32).unwrap_or(usize::MAX);
    if combos > 1 << 20 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for anchor in &per_embedding[0] {
        for code in 0..combos {
            let mut y: Vec<&BigInt> = Vec::with_capacity(phi);
            y.push(&anchor.re);
            if n > 2 {
                y.push(&anchor.im);
            }
            let mut c = code;
            for emb in &per_embedding[1..] {
                let v = &emb[c % d];
                c /= d;
                y.push(&v.re);
                y.push(&v.im);
            }
            let mut coords = Vec::with_capacity(phi);
            for row in inv.iter() {
                let acc: BigInt = row.iter().zip(&y).map(|(a, b)| a * *b).sum();
                match rationalize(&(acc >> p), p) {
                    Some(r) => coords.push(r),
                    None => break,
                }
            }
            if coords.len() < phi {
                continue;
            }
            let cand = CycloElement::new(n, &coords).expect("positive conductor");
            if q.eval(&cand).is_zero() {
                out.push(cand);
                break;
            }
        }
    }
    out
}

fn spectrum_of(m: &ExactMatrix, bits: u32) -> Result<SpectrumReport> {
    let rep = roots_in_field(&m.char_poly()?, bits)?;
    if !rep.split {
        return Err(Error::SpectrumNotInField { conductor: m.conductor() });
    }
    Ok(rep)
}

/// `M − λI`.
pub fn shift(m: &ExactMatrix, lambda: &CycloElement) -> ExactMatrix {
    let mut out = m.clone();
    for i in 0..m.rows() {
        out.set(i, i, m.get(i, i) - lambda);
    }
    out
}

/// Ordinary eigenspace `ker(M − λI)`.
pub fn eigenspace(m: &ExactMatrix, lambda: &CycloElement) -> Subspace {
    shift(m, lambda).kernel()
}

/// Generalized eigenspaces in canonical eigenvalue order.
pub fn generalized_eigenspaces(m: &ExactMatrix) -> Result<Vec<(CycloElement, Subspace)>> {
    generalized_eigenspaces_at(m, DEFAULT_PRECISION)
}

pub fn generalized_eigenspaces_at(m: &ExactMatrix, bits: u32) -> Result<Vec<(CycloElement, Subspace)>> {
    let spec = spectrum_of(m, bits)?;
    Ok(spec
        .roots
        .into_iter()
        .map(|(l, mult)| {
            let space = shift(m, &l).pow(mult as u32).kernel();
            (l, space)
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JordanData {
    /// Jordan matrix with ones on the superdiagonal inside blocks.
    pub j: ExactMatrix,
    /// Change of basis with `P⁻¹·M·P = J`.
    pub p: ExactMatrix,
    /// Eigenvalues in canonical order with their block sizes, largest first.
    pub blocks: Vec<(CycloElement, Vec<usize>)>,
}

impl JordanData {
    /// Block sizes flattened in display order.
    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().flat_map(|(_, s)| s.iter().copied()).collect()
    }
}

pub fn jordan_form(m: &ExactMatrix) -> Result<JordanData> {
    jordan_form_at(m, DEFAULT_PRECISION)
}

pub fn jordan_form_at(m: &ExactMatrix, bits: u32) -> Result<JordanData> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch("Jordan form of a non-square matrix".into()));
    }
    let n = m.rows();
    let cond = m.conductor();
    let spec = spectrum_of(m, bits)?;
    let mut columns: Vec<Vec<CycloElement>> = Vec::with_capacity(n);
    let mut blocks = Vec::new();
    for (lambda, mult) in &spec.roots {
        let nil = shift(m, lambda);
        // kernels of successive powers until the algebraic multiplicity is reached
        let mut kernels = vec![Subspace::zero(n, cond)];
        let mut power = ExactMatrix::identity(n, cond);
        while kernels.last().map_or(0, Subspace::dim) < *mult {
            power = power.mul(&nil);
            kernels.push(power.kernel());
        }
        let top = kernels.len() - 1;
        let mut accounted: Vec<Vec<Vec<CycloElement>>> = vec![Vec::new(); top + 1];
        let mut sizes = Vec::new();
        for k in (1..=top).rev() {
            let mut covered = kernels[k - 1].sum(&Subspace::span(n, cond, &accounted[k]));
            for v in kernels[k].basis() {
                if covered.contains(v) {
                    continue;
                }
                covered = covered.sum(&Subspace::span(n, cond, std::slice::from_ref(v)));
                let mut chain = vec![v.clone()];
                for i in 1..k {
                    let next = nil.mul_vec(&chain[i - 1]);
                    accounted[k - i].push(next.clone());
                    chain.push(next);
                }
                chain.reverse();
                columns.extend(chain);
                sizes.push(k);
            }
        }
        blocks.push((lambda.clone(), sizes));
    }
    let p = ExactMatrix::from_columns(n, cond, &columns);
    let j = p.inverse()?.mul(m).mul(&p);
    Ok(JordanData { j, p, blocks })
}

/// Jordan matrix assembled from block data, used to cross-check results.
pub fn jordan_matrix(blocks: &[(CycloElement, Vec<usize>)], conductor: u32) -> ExactMatrix {
    let n: usize = blocks.iter().flat_map(|(_, s)| s).sum();
    let mut out = ExactMatrix::zeros(n, n, conductor);
    let mut off = 0;
    for (l, sizes) in blocks {
        for &s in sizes {
            for i in 0..s {
                out.set(off + i, off + i, l.clone());
                if i + 1 < s {
                    out.set(off + i, off + i + 1, CycloElement::one(conductor));
                }
            }
            off += s;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{int, rat, root_of_unity};

    fn e(v: i64) -> CycloElement {
        CycloElement::from_int(24, v)
    }

    fn poly(c: &[CycloElement]) -> Poly {
        Poly::new(24, c.to_vec())
    }

    #[test]
    fn sixth_roots_over_q_zeta24() {
        let r = roots_in_field(&poly(&[e(1), e(-1), e(1)]), 256).unwrap();
        assert!(r.split);
        let mut want = vec![root_of_unity(24, 4), root_of_unity(24, 20)];
        want.sort();
        assert_eq!(r.values(), want);
        assert!(r.roots.iter().all(|(_, m)| *m == 1));
    }

    #[test]
    fn repeated_root() {
        let p = Poly::from_roots(24, &[e(1), e(1), e(1)]);
        let r = roots_in_field(&p, 256).unwrap();
        assert_eq!(r.roots, vec![(e(1), 3)]);
        assert!(r.split);
    }

    #[test]
    fn square_root_of_two() {
        let r = roots_in_field(&poly(&[e(-2), e(0), e(1)]), 256).unwrap();
        let s2 = &root_of_unity(24, 3) + &root_of_unity(24, 21);
        let mut want = vec![s2.clone(), -&s2];
        want.sort();
        assert_eq!(r.values(), want);
        assert_eq!(&s2 * &s2, e(2));
    }

    #[test]
    fn non_split_is_reported() {
        // x^2 - 5 has no root in Q(ζ_24)
        let r = roots_with_ladder(&poly(&[e(-5), e(0), e(1)]), 64, 256).unwrap();
        assert!(!r.split);
        assert!(r.roots.is_empty());
        // partial split: (x - 1)(x^2 - 5)
        let p = poly(&[e(-5), e(0), e(1)]).mul(&Poly::linear(&e(1)));
        let r = roots_with_ladder(&p, 64, 256).unwrap();
        assert_eq!(r.roots, vec![(e(1), 1)]);
        assert!(!r.split);
    }

    #[test]
    fn non_trivial_field_elements() {
        // roots with sizeable rational coordinates in several basis directions
        let a = CycloElement::new(24, &[rat(3, 7), int(-2), int(0), rat(5, 3), int(1)]).unwrap();
        let b = CycloElement::new(24, &[int(11), int(0), rat(-1, 2), int(0), int(0), int(0), int(0), int(4)]).unwrap();
        let c = &a * &root_of_unity(24, 5);
        let p = Poly::from_roots(24, &[a.clone(), b.clone(), c.clone(), a.clone()]);
        let r = roots_in_field(&p, 256).unwrap();
        assert!(r.split);
        let mut want = vec![(a, 2), (b, 1), (c, 1)];
        want.sort();
        assert_eq!(r.roots, want);
    }

    #[test]
    fn other_conductors() {
        for n in [1u32, 2, 3, 5, 8, 12] {
            let z = root_of_unity(n, 1);
            let two = CycloElement::from_int(n, 2);
            let p = Poly::from_roots(n, &[&z + &two, two.clone(), -&z]);
            let r = roots_in_field(&p, 128).unwrap();
            assert!(r.split, "N = {n}");
        }
    }

    #[test]
    fn rotation_jordan_form() {
        let m = ExactMatrix::from_ints(24, &[&[0, 1], &[-1, 0]]);
        let jd = jordan_form(&m).unwrap();
        let i = root_of_unity(24, 6);
        let mut eig = vec![i.clone(), -&i];
        eig.sort();
        assert_eq!(jd.j, ExactMatrix::diag(&eig));
        assert_eq!(jd.p.inverse().unwrap().mul(&m).mul(&jd.p), jd.j);
    }

    #[test]
    fn jordan_form_of_jordan_matrix_is_itself() {
        let l = root_of_unity(24, 4);
        let blocks = vec![(e(1), vec![2, 1]), (l, vec![3])];
        let mut blocks_sorted = blocks.clone();
        blocks_sorted.sort_by(|a, b| a.0.cmp(&b.0));
        let j = jordan_matrix(&blocks_sorted, 24);
        let jd = jordan_form(&j).unwrap();
        assert_eq!(jd.j, j);
        assert_eq!(jd.blocks, blocks_sorted);
    }

    #[test]
    fn jordan_of_conjugated_matrix() {
        let j = jordan_matrix(&[(e(2), vec![2]), (e(-1), vec![1])], 24);
        let p = ExactMatrix::from_ints(24, &[&[1, 2, 0], &[0, 1, 3], &[1, 0, 1]]);
        let m = p.mul(&j).mul(&p.inverse().unwrap());
        let jd = jordan_form(&m).unwrap();
        assert_eq!(jd.blocks, vec![(e(-1), vec![1]), (e(2), vec![2])]);
        assert_eq!(jd.j, jordan_matrix(&jd.blocks, 24));
        assert_eq!(jd.p.inverse().unwrap().mul(&m).mul(&jd.p), jd.j);
        let ge = generalized_eigenspaces(&m).unwrap();
        assert_eq!(ge.iter().map(|(_, s)| s.dim()).collect::<Vec<_>>(), vec![1, 2]);
        for (l, s) in &ge {
            assert!(s.is_invariant_under(&m));
            let nil = shift(&m, l).pow(3);
            assert!(s.basis().iter().all(|v| nil.mul_vec(v).iter().all(CycloElement::is_zero)));
        }
    }

    #[test]
    fn rationalize_examples() {
        let p = 128;
        let x = (BigInt::from(-22) << p) / BigInt::from(7);
        assert_eq!(rationalize(&x, p), Some(rat(-22, 7)));
        assert_eq!(rationalize(&BigInt::zero(), p), Some(rat(0, 1)));
        assert_eq!(rationalize(&BigInt::from(-1), p), Some(rat(0, 1)));
        // π is not a small-height rational
        let pi = crate::field::numeric::pi_fixed(p);
        assert_eq!(rationalize(&pi, p), None);
    }
}

//! The two homogeneous 4×4 R-matrices, their Yang–Baxter check, and the
//! 8-dimensional braid representations `A = R⊗I`, `B = I⊗R` with their
//! decompositions in the generic and special parameter regimes.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::classify::{classify, ClassificationResult};
use crate::error::{Error, Result};
use crate::families::{sixth_root_form, FamilyId};
use crate::field::CycloElement;
use crate::linalg::ExactMatrix;
use crate::rep::{decompose, equivalent, make_rep, verify_decomposition, B3Rep, DecompositionReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RKind {
    R1,
    R2,
}

impl std::str::FromStr for RKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "R1" => Ok(RKind::R1),
            "R2" => Ok(RKind::R2),
            _ => Err(Error::UnknownFamily(s.to_string())),
        }
    }
}

impl fmt::Display for RKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RKind::R1 => "R1",
            RKind::R2 => "R2",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RMatrixSpec {
    pub kind: RKind,
    pub a: CycloElement,
    pub b: CycloElement,
}

impl RMatrixSpec {
    /// Checks that `a`, `b` are nonzero and distinct, lifting both to a
    /// common conductor.
    pub fn new(kind: RKind, a: CycloElement, b: CycloElement) -> Result<Self> {
        let n = num_integer::lcm(a.conductor(), b.conductor());
        let (a, b) = (a.embed(n)?, b.embed(n)?);
        if a.is_zero() || b.is_zero() || a == b {
            return Err(Error::DegenerateParameters);
        }
        Ok(Self { kind, a, b })
    }
}

/// `[[a,0,0,0],[0,a+b,−b,0],[0,a,0,0],[0,0,0,d]]` with `d = a` for R1 and
/// `d = b` for R2.
pub fn r_matrix(spec: &RMatrixSpec) -> Result<ExactMatrix> {
    let (a, b) = (&spec.a, &spec.b);
    if a.is_zero() || b.is_zero() || a == b {
        return Err(Error::DegenerateParameters);
    }
    let z = CycloElement::zero(a.conductor());
    let last = match spec.kind {
        RKind::R1 => a.clone(),
        RKind::R2 => b.clone(),
    };
    ExactMatrix::from_rows(vec![
        vec![a.clone(), z.clone(), z.clone(), z.clone()],
        vec![z.clone(), a + b, -b, z.clone()],
        vec![z.clone(), a.clone(), z.clone(), z.clone()],
        vec![z.clone(), z.clone(), z, last],
    ])
}

fn placements(r: &ExactMatrix) -> (ExactMatrix, ExactMatrix) {
    let id = ExactMatrix::identity(2, r.conductor());
    (r.kronecker(&id), id.kronecker(r))
}

/// `(R⊗I)(I⊗R)(R⊗I) − (I⊗R)(R⊗I)(I⊗R)`.
pub fn ybe_defect(r: &ExactMatrix) -> Result<ExactMatrix> {
    if r.rows() != 4 || r.cols() != 4 {
        return Err(Error::DimensionMismatch(format!("R must be 4x4, got {}x{}", r.rows(), r.cols())));
    }
    let (x, y) = placements(r);
    Ok(x.mul(&y).mul(&x).sub(&y.mul(&x).mul(&y)))
}

/// `A = R⊗I₂`, `B = I₂⊗R`.
pub fn rep_from_r(r: &ExactMatrix) -> Result<B3Rep> {
    if !ybe_defect(r)?.is_zero() {
        return Err(Error::NotYangBaxter);
    }
    let (a, b) = placements(r);
    make_rep(a, b)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Regime {
    /// `a² − ab + b² ≠ 0`: completely reducible.
    Generic,
    /// `a² − ab + b² = 0`: two 3-dimensional indecomposable summands.
    Special,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PredicateCheck {
    pub polynomial: &'static str,
    pub value: CycloElement,
    pub nonzero: bool,
}

#[derive(Clone, Debug)]
pub struct RegimeReport {
    pub spec: RMatrixSpec,
    pub regime: Regime,
    pub ybe_defect_zero: bool,
    /// Extra non-vanishing conditions under which the displayed
    /// decomposition is claimed (R2 only).
    pub genericity_checks: Vec<PredicateCheck>,
    pub decomposition: DecompositionReport,
    pub decomposition_verified: bool,
    pub summand_dims: Vec<usize>,
    pub summand_classifications: Vec<ClassificationResult>,
    /// Every summand is equivalent to a distinct block of the displayed
    /// decomposition.
    pub matches_display: bool,
}

impl RegimeReport {
    pub fn predicates_hold(&self) -> bool {
        self.genericity_checks.iter().all(|c| c.nonzero)
    }
}

fn check(polynomial: &'static str, value: CycloElement) -> PredicateCheck {
    let nonzero = !value.is_zero();
    PredicateCheck { polynomial, value, nonzero }
}

fn predicates(spec: &RMatrixSpec, regime: Regime) -> Vec<PredicateCheck> {
    if spec.kind == RKind::R1 {
        return Vec::new();
    }
    let (a, b) = (&spec.a, &spec.b);
    let n = a.conductor();
    let c = |v: i64| CycloElement::from_int(n, v);
    let (aa, bb, ab) = (a * a, b * b, a * b);
    match regime {
        Regime::Generic => vec![
            check("2a^2 - ab - a + b", &(&(&(&c(2) * &aa) - &ab) - a) + b),
            check(
                "(6b - 1)a^2 + (-8b^2 + b)a + 4b^3",
                &(&(&(&(&c(6) * b) - &c(1)) * &aa) + &(&(&(&c(-8) * &bb) + b) * a)) + &(&c(4) * &(&bb * b)),
            ),
            check("a^2 - ab - b^2", &(&aa - &ab) - &bb),
        ],
        Regime::Special => vec![
            check("12b^2 - 6b + 1", &(&(&c(12) * &bb) - &(&c(6) * b)) + &c(1)),
            check("b^2 + a - b - 2ab", &(&(&bb + a) - b) - &(&c(2) * &ab)),
        ],
    }
}

fn one_dim(x: &CycloElement) -> Result<B3Rep> {
    make_rep(ExactMatrix::diag(std::slice::from_ref(x)), ExactMatrix::diag(std::slice::from_ref(x)))
}

fn three_block(x: &CycloElement, y: &CycloElement) -> Result<B3Rep> {
    let n = x.conductor();
    let (z, o) = (CycloElement::zero(n), CycloElement::one(n));
    let a = ExactMatrix::diag(&[x.clone(), x.clone(), y.clone()]);
    let b = ExactMatrix::from_rows(vec![
        vec![x.clone(), o.clone(), y - x],
        vec![z.clone(), x.clone(), z.clone()],
        vec![z, o, y.clone()],
    ])?;
    make_rep(a, b)
}

/// Blocks of the displayed decomposition for a kind and regime.
pub fn displayed_summands(spec: &RMatrixSpec, regime: Regime) -> Result<Vec<B3Rep>> {
    let (a, b) = (&spec.a, &spec.b);
    let n = a.conductor();
    let z = CycloElement::zero(n);
    Ok(match regime {
        Regime::Generic => {
            let tw = make_rep(
                ExactMatrix::from_rows(vec![vec![a.clone(), a.clone()], vec![z.clone(), b.clone()]])?,
                ExactMatrix::from_rows(vec![vec![b.clone(), z], vec![-b, a.clone()]])?,
            )?;
            let singles = match spec.kind {
                RKind::R1 => [a, a, a, a],
                RKind::R2 => [a, a, b, b],
            };
            let mut out = singles.iter().map(|x| one_dim(x)).collect::<Result<Vec<_>>>()?;
            out.push(tw.clone());
            out.push(tw);
            out
        }
        Regime::Special => match spec.kind {
            RKind::R1 => vec![one_dim(a)?, one_dim(a)?, three_block(a, b)?, three_block(a, b)?],
            RKind::R2 => vec![one_dim(a)?, one_dim(b)?, three_block(a, b)?, three_block(b, a)?],
        },
    })
}

/// Greedy one-to-one matching of summands to displayed blocks by equivalence.
fn match_blocks(found: &[B3Rep], expected: &[B3Rep]) -> Result<bool> {
    if found.len() != expected.len() {
        return Ok(false);
    }
    let mut used = vec![false; expected.len()];
    for f in found {
        let mut hit = false;
        for (k, e) in expected.iter().enumerate() {
            if used[k] || e.dim() != f.dim() {
                continue;
            }
            if equivalent(f, e)?.is_some() {
                used[k] = true;
                hit = true;
                break;
            }
        }
        if !hit {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Decomposes the representation of `spec`, classifies each summand and
/// compares against the displayed decomposition of its regime.
pub fn analyze_r_matrix(spec: &RMatrixSpec) -> Result<RegimeReport> {
    let r = r_matrix(spec)?;
    let ybe_defect_zero = ybe_defect(&r)?.is_zero();
    let rep = rep_from_r(&r)?;
    let regime = if sixth_root_form(&spec.a, &spec.b).is_zero() { Regime::Special } else { Regime::Generic };
    let genericity_checks = predicates(spec, regime);
    let decomposition = decompose(&rep)?;
    let decomposition_verified = verify_decomposition(&rep, &decomposition);
    let summand_dims = decomposition.sorted_dims();
    let summand_classifications =
        decomposition.summands.iter().map(|s| classify(&s.rep)).collect::<Result<Vec<_>>>()?;
    let found: Vec<B3Rep> = decomposition.summands.iter().map(|s| s.rep.clone()).collect();
    let matches_display = match_blocks(&found, &displayed_summands(spec, regime)?)?;
    Ok(RegimeReport {
        spec: spec.clone(),
        regime,
        ybe_defect_zero,
        genericity_checks,
        decomposition,
        decomposition_verified,
        summand_dims,
        summand_classifications,
        matches_display,
    })
}

/// The 3-dimensional summands of a special-regime report that classify as
/// the family with a doubled semisimple eigenvalue.
pub fn special_blocks_in_family(report: &RegimeReport) -> bool {
    report
        .summand_classifications
        .iter()
        .filter(|c| matches!(c, ClassificationResult::StrictlyIndecomposable { .. }))
        .all(|c| c.family().is_some_and(|f| f.id == FamilyId::W1_2))
}

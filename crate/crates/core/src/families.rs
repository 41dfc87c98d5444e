//! Catalogue of the low-dimensional forms: the triangular irreducible forms in
//! dimensions 2 and 3, and every strictly indecomposable form in dimensions 2
//! and 3, with parameter constraints.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{root_of_unity, CycloElement};
use crate::linalg::ExactMatrix;
use crate::rep::{make_rep, B3Rep};

#[allow(non_camel_case_types)]
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum FamilyId {
    TW2,
    TW3,
    D2_1,
    D2_2,
    W1_1_1,
    W1_1_2,
    W1_1_3,
    W1_1_4,
    W1_2,
    W1_3_1,
    W1_3_2,
    W1_4_1,
    W1_4_2,
    W1_5,
    W2_1,
    W2_2,
    W2_3,
}

impl FamilyId {
    pub const ALL: [FamilyId; 17] = [
        FamilyId::TW2,
        FamilyId::TW3,
        FamilyId::D2_1,
        FamilyId::D2_2,
        FamilyId::W1_1_1,
        FamilyId::W1_1_2,
        FamilyId::W1_1_3,
        FamilyId::W1_1_4,
        FamilyId::W1_2,
        FamilyId::W1_3_1,
        FamilyId::W1_3_2,
        FamilyId::W1_4_1,
        FamilyId::W1_4_2,
        FamilyId::W1_5,
        FamilyId::W2_1,
        FamilyId::W2_2,
        FamilyId::W2_3,
    ];

    /// The strictly indecomposable families (everything except the
    /// irreducible forms).
    pub fn indecomposable() -> impl Iterator<Item = FamilyId> {
        Self::ALL.into_iter().filter(|f| !f.is_irreducible_form())
    }

    pub fn as_str(self) -> &'static str {
        match self {
            FamilyId::TW2 => "TW2",
            FamilyId::TW3 => "TW3",
            FamilyId::D2_1 => "D2_1",
            FamilyId::D2_2 => "D2_2",
            FamilyId::W1_1_1 => "W1_1_1",
            FamilyId::W1_1_2 => "W1_1_2",
            FamilyId::W1_1_3 => "W1_1_3",
            FamilyId::W1_1_4 => "W1_1_4",
            FamilyId::W1_2 => "W1_2",
            FamilyId::W1_3_1 => "W1_3_1",
            FamilyId::W1_3_2 => "W1_3_2",
            FamilyId::W1_4_1 => "W1_4_1",
            FamilyId::W1_4_2 => "W1_4_2",
            FamilyId::W1_5 => "W1_5",
            FamilyId::W2_1 => "W2_1",
            FamilyId::W2_2 => "W2_2",
            FamilyId::W2_3 => "W2_3",
        }
    }

    pub fn dim(self) -> usize {
        match self {
            FamilyId::TW2 | FamilyId::D2_1 | FamilyId::D2_2 => 2,
            _ => 3,
        }
    }

    pub fn is_irreducible_form(self) -> bool {
        matches!(self, FamilyId::TW2 | FamilyId::TW3)
    }

    /// Families with two displayed presentations.
    pub fn has_alternate(self) -> bool {
        matches!(self, FamilyId::W2_1 | FamilyId::W2_2 | FamilyId::W2_3)
    }

    /// Parameters a caller supplies; the rest are derived.
    pub fn free_params(self) -> &'static [Param] {
        use FamilyId::*;
        use Param::*;
        match self {
            TW2 => &[Lambda1, Lambda2],
            TW3 => &[Lambda1, Lambda2, Lambda3],
            D2_2 | W1_5 => &[Lambda],
            D2_1 | W1_1_1 | W1_3_2 => &[Lambda1],
            W1_1_2 => &[Lambda3],
            W1_1_3 | W1_2 | W1_3_1 | W1_4_2 | W2_2 | W2_3 => &[Lambda2],
            W1_1_4 => &[Lambda1, Lambda2],
            W1_4_1 => &[Lambda2, Beta],
            W2_1 => &[Lambda2, Lambda3],
        }
    }

    /// Every parameter of a complete instance.
    pub fn all_params(self) -> &'static [Param] {
        use FamilyId::*;
        use Param::*;
        match self {
            D2_2 | W1_5 => &[Lambda],
            TW2 | D2_1 | W1_2 | W1_3_1 | W1_3_2 | W1_4_2 | W2_2 | W2_3 => &[Lambda1, Lambda2],
            W1_4_1 => &[Lambda1, Lambda2, Beta],
            TW3 | W1_1_1 | W1_1_2 | W1_1_3 | W1_1_4 | W2_1 => &[Lambda1, Lambda2, Lambda3],
        }
    }

    /// Whether the family carries a ± branch of a root-of-unity relation.
    pub fn has_sign(self) -> bool {
        use FamilyId::*;
        matches!(self, D2_1 | W1_1_1 | W1_1_2 | W1_1_3 | W1_2 | W1_3_1 | W1_3_2 | W1_4_1 | W2_2)
    }

    /// Eigenvalues of A listed with multiplicity, in display order.
    pub fn eigenvalue_triple(self, p: &Params) -> Vec<CycloElement> {
        use FamilyId::*;
        use Param::*;
        let g = |k: Param| p[&k].clone();
        match self {
            D2_2 => vec![g(Lambda), g(Lambda)],
            W1_5 => vec![g(Lambda), g(Lambda), g(Lambda)],
            TW2 | D2_1 => vec![g(Lambda1), g(Lambda2)],
            W1_2 | W1_4_1 | W1_4_2 | W2_2 => vec![g(Lambda1), g(Lambda1), g(Lambda2)],
            W1_3_1 | W1_3_2 | W2_3 => vec![g(Lambda1), g(Lambda2), g(Lambda2)],
            TW3 | W1_1_1 | W1_1_2 | W1_1_3 | W1_1_4 | W2_1 => vec![g(Lambda1), g(Lambda2), g(Lambda3)],
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FamilyId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|f| f.as_str().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::UnknownFamily(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Param {
    Lambda,
    Lambda1,
    Lambda2,
    Lambda3,
    Beta,
}

impl Param {
    pub const ALL: [Param; 5] = [Param::Lambda, Param::Lambda1, Param::Lambda2, Param::Lambda3, Param::Beta];

    pub fn as_str(self) -> &'static str {
        match self {
            Param::Lambda => "lambda",
            Param::Lambda1 => "lambda1",
            Param::Lambda2 => "lambda2",
            Param::Lambda3 => "lambda3",
            Param::Beta => "beta",
        }
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Param {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|p| p.as_str() == s.trim())
            .ok_or_else(|| Error::NotInFamily(format!("unknown parameter {s:?}")))
    }
}

pub type Params = BTreeMap<Param, CycloElement>;

/// Branch of a relation `λ = μ·u^{±1}` with `u = e^{πi/3}` or `e^{πi/2}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn exponent(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Presentation {
    #[default]
    First,
    Alternate,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyInstance {
    pub id: FamilyId,
    /// Complete parameter set, dependent eigenvalues included.
    pub params: Params,
    pub sign: Option<Sign>,
    pub presentation: Presentation,
}

impl FamilyInstance {
    /// Builds a complete instance from any sufficient subset of parameters.
    /// Missing dependent eigenvalues are derived (branch `sign`, default
    /// `Plus`); supplied ones are checked and the branch is recovered.
    pub fn new(id: FamilyId, given: Params, sign: Option<Sign>, presentation: Presentation) -> Result<Self> {
        let (params, sign) = complete_params(id, given, sign)?;
        let violations = validate_params(id, &params);
        if !violations.is_empty() {
            return Err(Error::ConstraintViolated(violations));
        }
        let presentation = if id.has_alternate() { presentation } else { Presentation::First };
        Ok(Self { id, params, sign, presentation })
    }

    /// Shorthand taking `(parameter, value)` pairs.
    pub fn with(id: FamilyId, given: &[(Param, CycloElement)], sign: Option<Sign>) -> Result<Self> {
        Self::new(id, given.iter().cloned().collect(), sign, Presentation::First)
    }

    pub fn param(&self, p: Param) -> Option<&CycloElement> {
        self.params.get(&p)
    }

    pub fn conductor(&self) -> u32 {
        self.params.values().next().map_or(crate::field::DEFAULT_CONDUCTOR, CycloElement::conductor)
    }

    pub fn eigenvalues(&self) -> Vec<CycloElement> {
        self.id.eigenvalue_triple(&self.params)
    }

    pub fn with_presentation(&self, presentation: Presentation) -> Self {
        Self { presentation, ..self.clone() }
    }
}

impl fmt::Display for FamilyInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.id)?;
        if self.presentation == Presentation::Alternate {
            write!(f, " (alternate)")?;
        }
        let parts: Vec<String> = self.params.iter().map(|(k, v)| format!("{k} = {v}")).collect();
        write!(f, " [{}]", parts.join(", "))?;
        if let Some(s) = self.sign {
            write!(f, " sign {}", if s == Sign::Plus { '+' } else { '-' })?;
        }
        Ok(())
    }
}

fn unit(conductor: u32, order: u32, k: i64) -> Result<CycloElement> {
    Ok(root_of_unity(order, k).embed(conductor)?)
}

/// How a dependent parameter is tied to a free one.
enum Link {
    /// `dep = base · e^{2πi/order · s·dir}` where `s = ±1` is the branch.
    Unit { dep: Param, base: Param, order: u32, dir: i64 },
    Negate { dep: Param, base: Param },
    /// `λ3 = −λ1²/λ2`.
    SquareRatio134,
    /// `λ1 = −λ3²/λ2`.
    SquareRatio312,
}

fn links(id: FamilyId) -> Vec<Link> {
    use FamilyId::*;
    use Param::*;
    let u6 = |dep, base, dir| Link::Unit { dep, base, order: 6, dir };
    let u4 = |dep, base, dir| Link::Unit { dep, base, order: 4, dir };
    match id {
        TW2 | TW3 | D2_2 | W1_5 => vec![],
        D2_1 => vec![u6(Lambda2, Lambda1, 1)],
        W1_1_1 => vec![u6(Lambda2, Lambda1, 1), u6(Lambda3, Lambda1, -1)],
        W1_1_2 => vec![u6(Lambda1, Lambda3, 1), u6(Lambda2, Lambda3, -1)],
        W1_1_3 => vec![u6(Lambda1, Lambda2, 1), u6(Lambda3, Lambda2, -1)],
        W1_1_4 => vec![Link::SquareRatio134],
        W1_2 | W1_3_1 | W1_4_1 => vec![u6(Lambda1, Lambda2, 1)],
        W1_3_2 => vec![u4(Lambda2, Lambda1, 1)],
        W2_2 => vec![u4(Lambda1, Lambda2, 1)],
        W1_4_2 | W2_3 => vec![Link::Negate { dep: Lambda1, base: Lambda2 }],
        W2_1 => vec![Link::SquareRatio312],
    }
}

fn complete_params(id: FamilyId, mut p: Params, sign: Option<Sign>) -> Result<(Params, Option<Sign>)> {
    let cond = p.values().next().map_or(crate::field::DEFAULT_CONDUCTOR, CycloElement::conductor);
    if let Some((k, v)) = p.iter().find(|(_, v)| v.conductor() != cond) {
        return Err(Error::ConstraintViolated(vec![format!(
            "{k} lies in Q(zeta_{}) but other parameters in Q(zeta_{cond})",
            v.conductor()
        )]));
    }
    let mut missing = Vec::new();
    for f in id.free_params() {
        if !p.contains_key(f) {
            missing.push(format!("missing parameter {f}"));
        }
    }
    if !missing.is_empty() {
        return Err(Error::ConstraintViolated(missing));
    }
    if let Some(extra) = p.keys().find(|k| !id.all_params().contains(k)) {
        return Err(Error::ConstraintViolated(vec![format!("{id} has no parameter {extra}")]));
    }
    let mut branch = sign;
    for link in links(id) {
        match link {
            Link::Unit { dep, base, order, dir } => {
                let b = p[&base].clone();
                let up = &b * &unit(cond, order, dir)?;
                let down = &b * &unit(cond, order, -dir)?;
                match p.get(&dep) {
                    Some(v) => {
                        let found = if *v == up {
                            Sign::Plus
                        } else if *v == down {
                            Sign::Minus
                        } else {
                            let rel = if order == 6 {
                                format!("{dep}^2 - {dep}*{base} + {base}^2 = 0")
                            } else {
                                format!("{dep}^2 + {base}^2 = 0")
                            };
                            return Err(Error::ConstraintViolated(vec![format!("relation {rel} fails")]));
                        };
                        match branch {
                            Some(s) if s != found => {
                                return Err(Error::ConstraintViolated(vec![format!(
                                    "{dep} does not lie on the requested branch"
                                )]))
                            }
                            _ => branch = Some(found),
                        }
                    }
                    None => {
                        let s = *branch.get_or_insert(Sign::Plus);
                        p.insert(dep, if s == Sign::Plus { up } else { down });
                    }
                }
            }
            Link::Negate { dep, base } => {
                let want = -&p[&base];
                check_or_insert(&mut p, dep, want, "lambda1 = -lambda2")?;
            }
            Link::SquareRatio134 => {
                let (l1, l2) = (&p[&Param::Lambda1], &p[&Param::Lambda2]);
                if l2.is_zero() {
                    return Err(Error::ConstraintViolated(vec!["lambda2 must be nonzero".into()]));
                }
                let want = -&(&(l1 * l1) / l2);
                check_or_insert(&mut p, Param::Lambda3, want, "lambda3 = -lambda1^2/lambda2")?;
            }
            Link::SquareRatio312 => {
                let (l3, l2) = (&p[&Param::Lambda3], &p[&Param::Lambda2]);
                if l2.is_zero() {
                    return Err(Error::ConstraintViolated(vec!["lambda2 must be nonzero".into()]));
                }
                let want = -&(&(l3 * l3) / l2);
                check_or_insert(&mut p, Param::Lambda1, want, "lambda1 = -lambda3^2/lambda2")?;
            }
        }
    }
    if !id.has_sign() {
        branch = None;
    }
    Ok((p, branch))
}

fn check_or_insert(p: &mut Params, dep: Param, want: CycloElement, rel: &str) -> Result<()> {
    match p.get(&dep) {
        Some(v) if *v != want => Err(Error::ConstraintViolated(vec![format!("relation {rel} fails")])),
        Some(_) => Ok(()),
        None => {
            p.insert(dep, want);
            Ok(())
        }
    }
}

/// Checks a complete parameter set; returns human-readable violations.
pub fn validate_params(id: FamilyId, p: &Params) -> Vec<String> {
    use FamilyId::*;
    use Param::*;
    let mut out = Vec::new();
    for k in id.all_params() {
        if !p.contains_key(k) {
            out.push(format!("missing parameter {k}"));
        }
    }
    if !out.is_empty() {
        return out;
    }
    for k in id.all_params() {
        if *k != Beta && p[k].is_zero() {
            out.push(format!("{k} must be nonzero"));
        }
    }
    if !out.is_empty() {
        return out;
    }
    let g = |k: Param| p[&k].clone();
    let zero = |x: &CycloElement| x.is_zero();
    let sixth = |a: &CycloElement, b: &CycloElement| &(&(a * a) - &(a * b)) + &(b * b);
    let fourth = |a: &CycloElement, b: &CycloElement| &(a * a) + &(b * b);
    let mut require = |ok: bool, msg: &str| {
        if !ok {
            out.push(msg.to_string());
        }
    };
    let distinct3 = |l1: &CycloElement, l2: &CycloElement, l3: &CycloElement| l1 != l2 && l1 != l3 && l2 != l3;
    match id {
        TW2 | TW3 | D2_2 | W1_5 => {}
        D2_1 => {
            require(g(Lambda1) != g(Lambda2), "eigenvalues must differ");
            require(zero(&sixth(&g(Lambda1), &g(Lambda2))), "lambda1^2 - lambda1*lambda2 + lambda2^2 = 0 fails");
        }
        W1_1_1 | W1_1_2 | W1_1_3 => {
            let (l1, l2, l3) = (g(Lambda1), g(Lambda2), g(Lambda3));
            require(distinct3(&l1, &l2, &l3), "eigenvalues must be mutually different");
            let (base, x, y) = match id {
                W1_1_1 => (&l1, &l2, &l3),
                W1_1_2 => (&l3, &l1, &l2),
                _ => (&l2, &l1, &l3),
            };
            require(
                zero(&sixth(x, base)) && zero(&sixth(y, base)),
                "eigenvalue ratios must be the two primitive sixth roots of unity",
            );
        }
        W1_1_4 => {
            let (l1, l2, l3) = (g(Lambda1), g(Lambda2), g(Lambda3));
            require(distinct3(&l1, &l2, &l3), "eigenvalues must be mutually different");
            require(zero(&(&(&l2 * &l3) + &(&l1 * &l1))), "lambda3 = -lambda1^2/lambda2 fails");
            require(!zero(&fourth(&l1, &l2)), "lambda1^2 + lambda2^2 must be nonzero");
        }
        W1_2 | W1_3_1 | W1_4_1 => {
            let (l1, l2) = (g(Lambda1), g(Lambda2));
            require(l1 != l2, "eigenvalues must differ");
            require(zero(&sixth(&l1, &l2)), "lambda1^2 - lambda1*lambda2 + lambda2^2 = 0 fails");
        }
        W1_3_2 | W2_2 => {
            let (l1, l2) = (g(Lambda1), g(Lambda2));
            require(zero(&fourth(&l1, &l2)), "lambda1^2 + lambda2^2 = 0 fails");
        }
        W1_4_2 | W2_3 => {
            require(zero(&(&g(Lambda1) + &g(Lambda2))), "lambda1 = -lambda2 fails");
        }
        W2_1 => {
            let (l1, l2, l3) = (g(Lambda1), g(Lambda2), g(Lambda3));
            require(distinct3(&l1, &l2, &l3), "eigenvalues must be mutually different");
            require(zero(&(&(&l1 * &l2) + &(&l3 * &l3))), "lambda1 = -lambda3^2/lambda2 fails");
            require(!zero(&sixth(&l1, &l2)), "lambda1^2 - lambda1*lambda2 + lambda2^2 must be nonzero");
            require(!zero(&fourth(&l2, &l3)), "lambda2^2 + lambda3^2 must be nonzero");
        }
    }
    out
}

/// `(λ1² + λ2λ3)(λ2² + λ1λ3)(λ3² + λ1λ2)`.
pub fn eigenvalue_polynomial(l1: &CycloElement, l2: &CycloElement, l3: &CycloElement) -> CycloElement {
    let f = |a: &CycloElement, b: &CycloElement, c: &CycloElement| &(a * a) + &(b * c);
    &(&f(l1, l2, l3) * &f(l2, l1, l3)) * &f(l3, l1, l2)
}

/// `λ1² − λ1λ2 + λ2²`.
pub fn sixth_root_form(l1: &CycloElement, l2: &CycloElement) -> CycloElement {
    &(&(l1 * l1) - &(l1 * l2)) + &(l2 * l2)
}

fn mat(rows: Vec<Vec<CycloElement>>) -> ExactMatrix {
    ExactMatrix::from_rows(rows).expect("square literal")
}

/// The displayed `(A, B)` pair of an instance.
pub fn matrices(inst: &FamilyInstance) -> Result<(ExactMatrix, ExactMatrix)> {
    use FamilyId::*;
    use Param::*;
    let violations = validate_params(inst.id, &inst.params);
    if !violations.is_empty() {
        return Err(Error::ConstraintViolated(violations));
    }
    let cond = inst.conductor();
    let p = &inst.params;
    let g = |k: Param| p[&k].clone();
    let c = |v: i64| CycloElement::from_int(cond, v);
    let q = |n: i64, d: i64| &c(n) / &c(d);
    let z = || c(0);
    let o = || c(1);
    let alt = inst.presentation == Presentation::Alternate;
    let pair = match inst.id {
        TW2 => {
            let (l1, l2) = (g(Lambda1), g(Lambda2));
            (mat(vec![vec![l1.clone(), l1.clone()], vec![z(), l2.clone()]]), mat(vec![vec![l2.clone(), z()], vec![-&l2, l1]]))
        }
        TW3 => {
            let (l1, l2, l3) = (g(Lambda1), g(Lambda2), g(Lambda3));
            let t = &(&(&l1 * &l3) / &l2) + &l2;
            (
                mat(vec![
                    vec![l1.clone(), t.clone(), l2.clone()],
                    vec![z(), l2.clone(), l2.clone()],
                    vec![z(), z(), l3.clone()],
                ]),
                mat(vec![
                    vec![l3.clone(), z(), z()],
                    vec![-&l2, l2.clone(), z()],
                    vec![l2.clone(), -&t, l1],
                ]),
            )
        }
        D2_1 => {
            let (l1, l2) = (g(Lambda1), g(Lambda2));
            (ExactMatrix::diag(&[l1.clone(), l2.clone()]), mat(vec![vec![l1, o()], vec![z(), l2]]))
        }
        D2_2 => {
            let l = g(Lambda);
            let j = mat(vec![vec![l.clone(), o()], vec![z(), l]]);
            (j.clone(), j)
        }
        W1_1_1 | W1_1_2 | W1_1_3 | W1_1_4 => {
            let (l1, l2, l3) = (g(Lambda1), g(Lambda2), g(Lambda3));
            let a = ExactMatrix::diag(&[l1.clone(), l2.clone(), l3.clone()]);
            let b = match inst.id {
                W1_1_1 => mat(vec![vec![l1, o(), o()], vec![z(), l2, z()], vec![z(), z(), l3]]),
                W1_1_2 => mat(vec![vec![l1, z(), o()], vec![z(), l2, o()], vec![z(), z(), l3]]),
                W1_1_3 => mat(vec![vec![l1, o(), o()], vec![z(), l2.clone(), &c(2) * &l2], vec![z(), z(), l3]]),
                _ => {
                    let s = &(&l1 * &l1) + &(&l2 * &l2);
                    let l1sq = &l1 * &l1;
                    let l2sq = &l2 * &l2;
                    let e13 = -&(&(&l2sq * &sixth_root_form(&l1, &l2)) / &(&l1 * &s));
                    let e22 = -&(&(&l1sq * &l1sq) / &(&l2 * &s));
                    let quartic = &(&(&l1sq * &l1sq) + &(&l1sq * &l2sq)) + &(&l2sq * &l2sq);
                    let e23 = &(&l1sq * &quartic) / &(&s * &s);
                    let e33 = &(&l2sq * &l2) / &s;
                    mat(vec![vec![l1, o(), e13], vec![z(), e22, e23], vec![z(), o(), e33]])
                }
            };
            (a, b)
        }
        W1_2 => {
            let (l1, l2) = (g(Lambda1), g(Lambda2));
            let d = &l1 - &l2;
            (
                ExactMatrix::diag(&[l1.clone(), l1.clone(), l2.clone()]),
                mat(vec![
                    vec![l1.clone(), o(), &(&l1 * &l2) / &d],
                    vec![z(), -&(&(&l2 * &l2) / &d), z()],
                    vec![z(), o(), &(&l1 * &l1) / &d],
                ]),
            )
        }
        W1_3_1 | W1_3_2 => {
            let (l1, l2) = (g(Lambda1), g(Lambda2));
            let a = mat(vec![vec![l1.clone(), z(), z()], vec![z(), l2.clone(), o()], vec![z(), z(), l2.clone()]]);
            let b = if inst.id == W1_3_1 {
                mat(vec![vec![l1, z(), o()], vec![z(), l2.clone(), o()], vec![z(), z(), l2]])
            } else {
                let l1sq = &l1 * &l1;
                mat(vec![
                    vec![l1.clone(), o(), &(&l1 + &l2) / &l1sq],
                    vec![z(), l2.clone(), z()],
                    vec![z(), l1sq, l2],
                ])
            };
            (a, b)
        }
        W1_4_1 | W1_4_2 => {
            let (l1, l2) = (g(Lambda1), g(Lambda2));
            let a = mat(vec![vec![l1.clone(), o(), z()], vec![z(), l1.clone(), z()], vec![z(), z(), l2.clone()]]);
            let b = if inst.id == W1_4_1 {
                let beta = g(Beta);
                let e12 = &o() + &(&(&l1 * &beta) / &(&l2 * &l2));
                mat(vec![vec![l1.clone(), e12, o()], vec![z(), l1, z()], vec![z(), beta, l2]])
            } else {
                let half = &l2 * &q(1, 2);
                mat(vec![
                    vec![l1, c(-2), z()],
                    vec![z(), half.clone(), o()],
                    vec![z(), &(&l2 * &l2) * &q(3, 4), -&half],
                ])
            };
            (a, b)
        }
        W1_5 => {
            let l = g(Lambda);
            let j = mat(vec![vec![l.clone(), o(), z()], vec![z(), l.clone(), o()], vec![z(), z(), l]]);
            (j.clone(), j)
        }
        W2_1 => {
            let (l1, l2, l3) = (g(Lambda1), g(Lambda2), g(Lambda3));
            let l2sq = &l2 * &l2;
            let l3sq = &l3 * &l3;
            let s = &l2sq + &l3sq;
            if !alt {
                let e11 = &(&l2sq * &l2) / &s;
                let quartic = &(&(&l2sq * &l2sq) + &(&l2sq * &l3sq)) + &(&l3sq * &l3sq);
                let e21 = &(&l3sq * &quartic) / &(&s * &s);
                let e22 = -&(&(&l3sq * &l3sq) / &(&l2 * &s));
                let e23 = -&(&(&(&l3sq * &l3) * &(&(&l2sq + &(&l2 * &l3)) + &l3sq)) / &(&l2sq * &s));
                (
                    ExactMatrix::diag(&[l1, l2, l3.clone()]),
                    mat(vec![vec![e11, o(), o()], vec![e21, e22, e23], vec![z(), z(), l3]]),
                )
            } else {
                let e13 = &(&(&l3sq - &(&(&l1 - &l2) * &l3)) + &l2sq) / &s;
                (
                    mat(vec![vec![l2.clone(), l2.clone(), z()], vec![z(), l1.clone(), z()], vec![z(), z(), l3.clone()]]),
                    mat(vec![vec![l1.clone(), z(), e13], vec![-&l1, l2, c(-1)], vec![z(), z(), l3]]),
                )
            }
        }
        W2_2 => {
            let (l1, l2) = (g(Lambda1), g(Lambda2));
            if !alt {
                (
                    mat(vec![vec![l1.clone(), o(), z()], vec![z(), l1.clone(), z()], vec![z(), z(), l2.clone()]]),
                    mat(vec![
                        vec![&c(2) * &l1, o(), &(&(&c(2) * &l1) + &l2) / &(&l2 * &l2)],
                        vec![&l2 * &l2, z(), o()],
                        vec![z(), z(), l2],
                    ]),
                )
            } else {
                (
                    mat(vec![vec![l1.clone(), l1.clone(), z()], vec![z(), l1.clone(), z()], vec![z(), z(), l2.clone()]]),
                    mat(vec![
                        vec![l1.clone(), z(), &o() + &(&l1 / &l2)],
                        vec![-&l1, l1.clone(), &l2 / &l1],
                        vec![z(), z(), l2],
                    ]),
                )
            }
        }
        W2_3 => {
            let (l1, l2) = (g(Lambda1), g(Lambda2));
            if !alt {
                let half = &l2 * &q(1, 2);
                (
                    mat(vec![vec![l1, z(), z()], vec![z(), l2.clone(), o()], vec![z(), z(), l2.clone()]]),
                    mat(vec![
                        vec![half.clone(), o(), z()],
                        vec![&(&l2 * &l2) * &q(3, 4), -&half, c(-2)],
                        vec![z(), z(), l2],
                    ]),
                )
            } else {
                (
                    mat(vec![vec![l1.clone(), l1.clone(), o()], vec![z(), l2.clone(), c(-2)], vec![z(), z(), l2.clone()]]),
                    mat(vec![vec![l2.clone(), z(), c(-2)], vec![-&l2, l1, c(4)], vec![z(), z(), l2]]),
                )
            }
        }
    };
    Ok(pair)
}

/// Builds and verifies the representation of an instance.
pub fn construct(inst: &FamilyInstance) -> Result<B3Rep> {
    let (a, b) = matrices(inst)?;
    make_rep(a, b)
}

/// The triangular form in dimension 2 or 3 and whether it is irreducible
/// (the eigenvalue polynomial does not vanish).
pub fn tuba_wenzl(lambdas: &[CycloElement]) -> Result<(B3Rep, bool)> {
    if lambdas.iter().any(CycloElement::is_zero) {
        return Err(Error::ZeroEigenvalue);
    }
    let (id, params, irreducible) = match lambdas {
        [l1, l2] => (
            FamilyId::TW2,
            [(Param::Lambda1, l1.clone()), (Param::Lambda2, l2.clone())].into_iter().collect(),
            !sixth_root_form(l1, l2).is_zero(),
        ),
        [l1, l2, l3] => (
            FamilyId::TW3,
            [(Param::Lambda1, l1.clone()), (Param::Lambda2, l2.clone()), (Param::Lambda3, l3.clone())]
                .into_iter()
                .collect(),
            !eigenvalue_polynomial(l1, l2, l3).is_zero(),
        ),
        _ => return Err(Error::DimensionMismatch("triangular forms exist for d = 2 and d = 3".into())),
    };
    let inst = FamilyInstance::new(id, params, None, Presentation::First)?;
    Ok((construct(&inst)?, irreducible))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::{braid_defect, equivalent, is_indecomposable, is_irreducible};

    fn e(v: i64) -> CycloElement {
        CycloElement::from_int(24, v)
    }

    fn w6() -> CycloElement {
        root_of_unity(24, 4)
    }

    #[test]
    fn parse_ids() {
        for f in FamilyId::ALL {
            assert_eq!(f.as_str().parse::<FamilyId>().unwrap(), f);
        }
        assert!(matches!("W9".parse::<FamilyId>(), Err(Error::UnknownFamily(_))));
    }

    #[test]
    fn d2_1_display() {
        let inst = FamilyInstance::with(FamilyId::D2_1, &[(Param::Lambda1, e(1))], None).unwrap();
        let rep = construct(&inst).unwrap();
        assert_eq!(rep.a(), &ExactMatrix::diag(&[e(1), w6()]));
        assert_eq!(rep.b(), &mat(vec![vec![e(1), e(1)], vec![e(0), w6()]]));
        assert_eq!(inst.sign, Some(Sign::Plus));
    }

    #[test]
    fn validation_examples() {
        let p: Params = [(Param::Lambda1, e(1)), (Param::Lambda2, e(1))].into_iter().collect();
        assert!(!validate_params(FamilyId::D2_1, &p).is_empty());
        assert!(FamilyInstance::new(FamilyId::D2_1, p, None, Presentation::First).is_err());

        let one_minus = &e(1) - &w6();
        let inst =
            FamilyInstance::with(FamilyId::W1_2, &[(Param::Lambda1, e(1)), (Param::Lambda2, one_minus)], None).unwrap();
        assert_eq!(inst.sign, Some(Sign::Plus));

        // λ1² + λ2² = 0 forces λ3 = λ2
        let i = root_of_unity(24, 6);
        let bad = FamilyInstance::with(FamilyId::W1_1_4, &[(Param::Lambda1, e(1)), (Param::Lambda2, i)], None);
        assert!(matches!(bad, Err(Error::ConstraintViolated(_))));
        let ok = FamilyInstance::with(FamilyId::W1_1_4, &[(Param::Lambda1, e(1)), (Param::Lambda2, e(2))], None)
            .unwrap();
        assert_eq!(ok.params[&Param::Lambda3], &e(-1) / &e(2));
    }

    #[test]
    fn every_family_satisfies_braid_relation() {
        let bases = [e(1), e(2), &e(3) / &e(2), root_of_unity(24, 1)];
        for id in FamilyId::ALL {
            for base in &bases {
                for sign in [Sign::Plus, Sign::Minus] {
                    let mut given: Params = Params::new();
                    for (n, f) in id.free_params().iter().enumerate() {
                        let v = match f {
                            Param::Beta => e(7),
                            _ => base * &e(n as i64 + 1),
                        };
                        given.insert(*f, v);
                    }
                    if id == FamilyId::W2_1 {
                        given.insert(Param::Lambda3, base * &e(3));
                    }
                    for pres in [Presentation::First, Presentation::Alternate] {
                        let Ok(inst) = FamilyInstance::new(id, given.clone(), Some(sign), pres) else {
                            panic!("{id} at {base}")
                        };
                        let (a, b) = matrices(&inst).unwrap();
                        assert!(braid_defect(&a, &b).unwrap().is_zero(), "{inst}");
                    }
                }
            }
        }
    }

    #[test]
    fn trichotomy_on_samples() {
        let inst = FamilyInstance::with(FamilyId::W1_4_1, &[(Param::Lambda2, e(1)), (Param::Beta, e(5))], None)
            .unwrap();
        let rep = construct(&inst).unwrap();
        assert!(!is_irreducible(&rep) && is_indecomposable(&rep));
        let (tw, irr) = tuba_wenzl(&[e(1), e(2)]).unwrap();
        assert!(irr && is_irreducible(&tw));
        let (tw, irr) = tuba_wenzl(&[e(1), w6()]).unwrap();
        assert!(!irr && !is_irreducible(&tw));
        let (tw, irr) = tuba_wenzl(&[e(2), e(2), e(2)]).unwrap();
        assert!(irr && is_irreducible(&tw));
        assert!(matches!(tuba_wenzl(&[e(0), e(1)]), Err(Error::ZeroEigenvalue)));
    }

    #[test]
    fn w2_presentations_agree() {
        let inst = FamilyInstance::with(FamilyId::W2_3, &[(Param::Lambda2, e(1))], None).unwrap();
        let first = construct(&inst).unwrap();
        let alt = construct(&inst.with_presentation(Presentation::Alternate)).unwrap();
        assert!(equivalent(&first, &alt).unwrap().is_some());
        assert_eq!(inst.params[&Param::Lambda1], e(-1));
    }
}

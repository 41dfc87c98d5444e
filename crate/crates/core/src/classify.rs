//! Classification pipeline: irreducible, strictly indecomposable (matched to a
//! catalogued family with a conjugacy witness), or decomposable with each
//! summand classified in turn.

use crate::error::{Error, Result};
use crate::families::{construct, tuba_wenzl, FamilyId, FamilyInstance, Param, Params, Presentation};
use crate::field::CycloElement;
use crate::linalg::ExactMatrix;
use crate::rep::{
    common_invariant_subspaces, decompose, equivalent, is_indecomposable, is_irreducible, B3Rep,
    DecompositionReport,
};
use crate::spectra::{jordan_form, JordanData};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassificationResult {
    /// No proper invariant subspace. For dimensions 2 and 3 the triangular
    /// form with the same spectrum is attached when one is equivalent.
    Irreducible { tw_match: Option<(FamilyInstance, ExactMatrix)> },
    /// Indecomposable but reducible; `witness⁻¹·A·witness` and
    /// `witness⁻¹·B·witness` are the family's matrices.
    StrictlyIndecomposable { family: FamilyInstance, witness: ExactMatrix },
    Decomposable { report: DecompositionReport, leaves: Vec<ClassificationResult> },
}

impl ClassificationResult {
    pub fn tag(&self) -> &'static str {
        match self {
            ClassificationResult::Irreducible { .. } => "irreducible",
            ClassificationResult::StrictlyIndecomposable { .. } => "strictly_indecomposable",
            ClassificationResult::Decomposable { .. } => "decomposable",
        }
    }

    pub fn family(&self) -> Option<&FamilyInstance> {
        match self {
            ClassificationResult::Irreducible { tw_match } => tw_match.as_ref().map(|(f, _)| f),
            ClassificationResult::StrictlyIndecomposable { family, .. } => Some(family),
            ClassificationResult::Decomposable { .. } => None,
        }
    }
}

/// Runs the trichotomy: irreducible first, then indecomposable, then split.
pub fn classify(rep: &B3Rep) -> Result<ClassificationResult> {
    if is_irreducible(rep) {
        return Ok(ClassificationResult::Irreducible { tw_match: match_triangular(rep)? });
    }
    if is_indecomposable(rep) {
        let (family, witness) = match_family(rep)?;
        return Ok(ClassificationResult::StrictlyIndecomposable { family, witness });
    }
    let report = decompose(rep)?;
    let leaves = report.summands.iter().map(|s| classify(&s.rep)).collect::<Result<Vec<_>>>()?;
    Ok(ClassificationResult::Decomposable { report, leaves })
}

/// Distinct orderings of `items`, in lexicographic order of positions.
fn orderings(items: &[CycloElement]) -> Vec<Vec<CycloElement>> {
    fn go(rest: &mut Vec<CycloElement>, acc: &mut Vec<CycloElement>, out: &mut Vec<Vec<CycloElement>>) {
        if rest.is_empty() {
            if !out.contains(acc) {
                out.push(acc.clone());
            }
            return;
        }
        for i in 0..rest.len() {
            let x = rest.remove(i);
            acc.push(x.clone());
            go(rest, acc, out);
            acc.pop();
            rest.insert(i, x);
        }
    }
    let mut out = Vec::new();
    go(&mut items.to_vec(), &mut Vec::new(), &mut out);
    out
}

fn spectrum_with_multiplicity(jd: &JordanData) -> Vec<CycloElement> {
    jd.blocks
        .iter()
        .flat_map(|(l, sizes)| std::iter::repeat(l.clone()).take(sizes.iter().sum()))
        .collect()
}

fn match_triangular(rep: &B3Rep) -> Result<Option<(FamilyInstance, ExactMatrix)>> {
    let n = rep.dim();
    if !(2..=3).contains(&n) {
        return Ok(None);
    }
    let jd = jordan_form(rep.a())?;
    for lambdas in orderings(&spectrum_with_multiplicity(&jd)) {
        let Ok((tw, irreducible)) = tuba_wenzl(&lambdas) else { continue };
        if !irreducible {
            continue;
        }
        if let Some(m) = equivalent(rep, &tw)? {
            let id = if n == 2 { FamilyId::TW2 } else { FamilyId::TW3 };
            let params: Params = [Param::Lambda1, Param::Lambda2, Param::Lambda3].into_iter().zip(lambdas).collect();
            let inst = FamilyInstance::new(id, params, None, Presentation::First)?;
            return Ok(Some((inst, m)));
        }
    }
    Ok(None)
}

/// Number of common invariant lines, `None` for infinitely many.
fn line_count(rep: &B3Rep) -> Result<Option<usize>> {
    let lines = common_invariant_subspaces(rep, 1)?;
    Ok(if lines.pencil { None } else { Some(lines.subspaces.len()) })
}

/// Shape of A up to conjugacy, as needed to shortlist families.
enum JordanShape {
    Distinct2(CycloElement, CycloElement),
    Block2(CycloElement),
    Distinct3([CycloElement; 3]),
    /// Eigenvalue `μ` twice (semisimple) and `ν` once.
    Repeated { mu: CycloElement, nu: CycloElement },
    /// A 2-block at `μ` and a 1-block at `ν`.
    Split { mu: CycloElement, nu: CycloElement },
    Block3(CycloElement),
    Other,
}

fn shape(jd: &JordanData) -> JordanShape {
    let b = &jd.blocks;
    match b.len() {
        1 => match b[0].1.as_slice() {
            [2] => JordanShape::Block2(b[0].0.clone()),
            [3] => JordanShape::Block3(b[0].0.clone()),
            _ => JordanShape::Other,
        },
        2 => {
            let find = |sizes: &[usize]| b.iter().position(|(_, s)| s.as_slice() == sizes);
            if b.iter().all(|(_, s)| s.as_slice() == [1]) {
                return JordanShape::Distinct2(b[0].0.clone(), b[1].0.clone());
            }
            let single = find(&[1]);
            if let (Some(i), Some(k)) = (find(&[2]), single) {
                return JordanShape::Split { mu: b[i].0.clone(), nu: b[k].0.clone() };
            }
            if let (Some(i), Some(k)) = (find(&[1, 1]), single) {
                return JordanShape::Repeated { mu: b[i].0.clone(), nu: b[k].0.clone() };
            }
            JordanShape::Other
        }
        3 if b.iter().all(|(_, s)| s.as_slice() == [1]) => {
            JordanShape::Distinct3([b[0].0.clone(), b[1].0.clone(), b[2].0.clone()])
        }
        _ => JordanShape::Other,
    }
}

/// Candidate `(family, eigenvalue parameters)` pairs in canonical order.
fn candidates(jd: &JordanData) -> Vec<(FamilyId, Params)> {
    use FamilyId::*;
    use Param::*;
    let pm = |pairs: &[(Param, &CycloElement)]| -> Params { pairs.iter().map(|(k, v)| (*k, (*v).clone())).collect() };
    let mut out = Vec::new();
    match shape(jd) {
        JordanShape::Distinct2(x, y) => {
            out.push((D2_1, pm(&[(Lambda1, &x), (Lambda2, &y)])));
            out.push((D2_1, pm(&[(Lambda1, &y), (Lambda2, &x)])));
        }
        JordanShape::Block2(l) => out.push((D2_2, pm(&[(Lambda, &l)]))),
        JordanShape::Distinct3(ev) => {
            let perms = orderings(&ev);
            for id in [W1_1_1, W1_1_2, W1_1_3, W1_1_4, W2_1] {
                for p in &perms {
                    out.push((id, pm(&[(Lambda1, &p[0]), (Lambda2, &p[1]), (Lambda3, &p[2])])));
                }
            }
        }
        JordanShape::Repeated { mu, nu } => out.push((W1_2, pm(&[(Lambda1, &mu), (Lambda2, &nu)]))),
        JordanShape::Split { mu, nu } => {
            for id in [W1_3_1, W1_3_2, W2_3] {
                out.push((id, pm(&[(Lambda1, &nu), (Lambda2, &mu)])));
            }
            for id in [W1_4_1, W1_4_2, W2_2] {
                out.push((id, pm(&[(Lambda1, &mu), (Lambda2, &nu)])));
            }
        }
        JordanShape::Block3(l) => out.push((W1_5, pm(&[(Lambda, &l)]))),
        JordanShape::Other => {}
    }
    out
}

/// Identifies a strictly indecomposable representation of dimension 2 or 3
/// with a catalogued family. The witness `M` satisfies `M⁻¹AM = A_family`
/// and `M⁻¹BM = B_family`.
pub fn match_family(rep: &B3Rep) -> Result<(FamilyInstance, ExactMatrix)> {
    if !(2..=3).contains(&rep.dim()) {
        return Err(Error::UnmatchedIndecomposable);
    }
    let jd = jordan_form(rep.a())?;
    let lines = line_count(rep)?;
    let beta = recover_beta(rep).ok();
    for (id, mut params) in candidates(&jd) {
        if id == FamilyId::W1_4_1 {
            match &beta {
                Some(b) => {
                    params.insert(Param::Beta, b.clone());
                }
                None => continue,
            }
        }
        let Ok(inst) = FamilyInstance::new(id, params, None, Presentation::First) else { continue };
        let Ok(target) = construct(&inst) else { continue };
        if line_count(&target)? != lines {
            continue;
        }
        if let Some(m) = equivalent(rep, &target)? {
            return Ok((inst, m));
        }
    }
    Err(Error::UnmatchedIndecomposable)
}

/// Basis `[(A−μ)v, v, w]` putting A into the shape `[[μ,1,0],[0,μ,0],[0,0,ν]]`.
fn split_jordan_basis(jd: &JordanData) -> Option<ExactMatrix> {
    let JordanShape::Split { mu, .. } = shape(jd) else { return None };
    let n = 3;
    let cols: Vec<Vec<CycloElement>> = (0..n).map(|c| jd.p.column(c)).collect();
    // blocks are laid out in eigenvalue order; the 2-block may come second
    let two_first = jd.blocks[0].0 == mu;
    let order: [usize; 3] = if two_first { [0, 1, 2] } else { [1, 2, 0] };
    let reordered: Vec<Vec<CycloElement>> = order.iter().map(|&i| cols[i].clone()).collect();
    Some(ExactMatrix::from_columns(n, jd.p.conductor(), &reordered))
}

/// The invariant β of a representation whose A has one 2-block and one
/// 1-block with `B` in the shape `[[*,*,x],[*,*,0],[0,y,*]]` after bringing A
/// to Jordan form; β = x·y is unchanged by every conjugation commuting with A.
pub fn recover_beta(rep: &B3Rep) -> Result<CycloElement> {
    let not_in = |why: &str| Error::NotInFamily(why.to_string());
    if rep.dim() != 3 {
        return Err(not_in("β is defined for 3-dimensional representations"));
    }
    let jd = jordan_form(rep.a())?;
    let p = split_jordan_basis(&jd).ok_or_else(|| not_in("A must have one 2-block and one 1-block"))?;
    let b = p.inverse()?.mul(rep.b()).mul(&p);
    if !b.get(1, 2).is_zero() || !b.get(2, 0).is_zero() {
        return Err(not_in("B does not have the required zero pattern"));
    }
    if b.get(0, 2).is_zero() {
        return Err(not_in("B has a vanishing coupling entry"));
    }
    Ok(b.get(0, 2) * b.get(2, 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::root_of_unity;
    use crate::rep::{direct_sum, make_rep, verify_witness};

    fn e(v: i64) -> CycloElement {
        CycloElement::from_int(24, v)
    }

    #[test]
    fn w1_2_round_trip() {
        let inst = FamilyInstance::with(
            FamilyId::W1_2,
            &[(Param::Lambda2, e(1)), (Param::Lambda1, root_of_unity(24, 4))],
            None,
        )
        .unwrap();
        let rep = construct(&inst).unwrap();
        let res = classify(&rep).unwrap();
        let ClassificationResult::StrictlyIndecomposable { family, witness } = res else { panic!("{res:?}") };
        assert_eq!(family, inst);
        assert!(verify_witness(&rep, &construct(&family).unwrap(), &witness));
    }

    #[test]
    fn triangular_irreducible() {
        let (tw, _) = tuba_wenzl(&[e(1), e(2)]).unwrap();
        let res = classify(&tw).unwrap();
        assert_eq!(res.tag(), "irreducible");
        assert_eq!(res.family().unwrap().id, FamilyId::TW2);
    }

    #[test]
    fn one_dimensional_sum() {
        let one = |x: CycloElement| make_rep(ExactMatrix::diag(&[x.clone()]), ExactMatrix::diag(&[x])).unwrap();
        let rep = direct_sum(&[one(e(1)), one(root_of_unity(24, 4))]).unwrap();
        let ClassificationResult::Decomposable { report, leaves } = classify(&rep).unwrap() else { panic!() };
        assert_eq!(report.sorted_dims(), vec![1, 1]);
        assert!(leaves.iter().all(|l| l.tag() == "irreducible"));
    }

    #[test]
    fn beta_is_conjugation_invariant() {
        let inst = FamilyInstance::with(FamilyId::W1_4_1, &[(Param::Lambda2, e(1)), (Param::Beta, e(5))], None)
            .unwrap();
        let rep = construct(&inst).unwrap();
        assert_eq!(recover_beta(&rep).unwrap(), e(5));
        let m = ExactMatrix::from_ints(24, &[&[2, 3, 0], &[0, 2, 0], &[0, 0, -7]]);
        assert_eq!(recover_beta(&rep.conjugate(&m).unwrap()).unwrap(), e(5));
        let g = ExactMatrix::from_ints(24, &[&[1, 2, 0], &[1, 3, 1], &[0, 1, 4]]);
        let moved = rep.conjugate(&g).unwrap();
        assert_eq!(recover_beta(&moved).unwrap(), e(5));
        let (family, w) = match_family(&moved).unwrap();
        assert_eq!(family, inst);
        assert!(verify_witness(&moved, &rep, &w));
    }

    #[test]
    fn alternate_presentation_matches_first() {
        let inst = FamilyInstance::with(FamilyId::W2_1, &[(Param::Lambda2, e(1)), (Param::Lambda3, e(2))], None)
            .unwrap();
        let alt = construct(&inst.with_presentation(Presentation::Alternate)).unwrap();
        let (family, _) = match_family(&alt).unwrap();
        assert_eq!(family, inst);
    }
}

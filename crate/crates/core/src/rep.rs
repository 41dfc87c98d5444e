//! Representations of B3 as verified matrix pairs, with invariant subspaces,
//! irreducibility, endomorphism algebras, decomposition and equivalence.

use crate::error::{Error, Result};
use crate::field::CycloElement;
use crate::linalg::{intertwiner_space, ExactMatrix, IncrementalBasis, Subspace};
use crate::spectra::{self, roots_with_ladder, DEFAULT_PRECISION};

/// A pair `(A, B)` of invertible matrices with `ABA = BAB`, the images of the
/// two standard braid generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct B3Rep {
    a: ExactMatrix,
    b: ExactMatrix,
}

impl B3Rep {
    pub fn a(&self) -> &ExactMatrix {
        &self.a
    }

    pub fn b(&self) -> &ExactMatrix {
        &self.b
    }

    pub fn dim(&self) -> usize {
        self.a.rows()
    }

    pub fn conductor(&self) -> u32 {
        self.a.conductor()
    }

    /// `(M⁻¹AM, M⁻¹BM)`.
    pub fn conjugate(&self, m: &ExactMatrix) -> Result<B3Rep> {
        let inv = m.inverse().map_err(|_| Error::NotInvertible)?;
        Ok(B3Rep { a: inv.mul(&self.a).mul(m), b: inv.mul(&self.b).mul(m) })
    }

    /// Transposed pair; invariant hyperplanes of `self` correspond to invariant
    /// lines of the transpose.
    pub fn transpose(&self) -> B3Rep {
        B3Rep { a: self.a.transpose(), b: self.b.transpose() }
    }

    /// Re-expresses the pair over another cyclotomic field.
    pub fn embed(&self, conductor: u32) -> Result<B3Rep> {
        Ok(B3Rep { a: self.a.embed(conductor)?, b: self.b.embed(conductor)? })
    }
}

pub fn braid_defect(a: &ExactMatrix, b: &ExactMatrix) -> Result<ExactMatrix> {
    if !a.is_square() || !b.is_square() || a.rows() != b.rows() {
        return Err(Error::DimensionMismatch("braid generators must be square of equal size".into()));
    }
    let aba = a.try_mul(b)?.mul(a);
    let bab = b.mul(a).mul(b);
    Ok(aba.sub(&bab))
}

/// Verifies invertibility and the braid relation.
pub fn make_rep(a: ExactMatrix, b: ExactMatrix) -> Result<B3Rep> {
    let defect = braid_defect(&a, &b)?;
    if a.determinant()?.is_zero() || b.determinant()?.is_zero() {
        return Err(Error::NotInvertible);
    }
    if !defect.is_zero() {
        return Err(Error::BraidRelationViolated { defect: Box::new(defect) });
    }
    Ok(B3Rep { a, b })
}

/// Common invariant subspaces of one dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantSubspaces {
    /// Every isolated subspace, plus representatives of any pencil.
    pub subspaces: Vec<Subspace>,
    /// Set when infinitely many subspaces exist (a common eigenspace, or a
    /// common co-eigenspace, of dimension at least two).
    pub pencil: bool,
}

/// Common eigenvectors of A and B. By the braid relation a common eigenvector
/// has the same eigenvalue for both generators.
fn common_lines(rep: &B3Rep) -> Result<InvariantSubspaces> {
    let spec = spectra::roots_in_field(&rep.a.char_poly()?, DEFAULT_PRECISION)?;
    if !spec.split {
        return Err(Error::SpectrumNotInField { conductor: rep.conductor() });
    }
    let n = rep.dim();
    let cond = rep.conductor();
    let mut subspaces = Vec::new();
    let mut pencil = false;
    for (l, _) in &spec.roots {
        let common = spectra::eigenspace(&rep.a, l).intersect(&spectra::eigenspace(&rep.b, l));
        if common.dim() >= 2 {
            pencil = true;
        }
        for v in common.basis() {
            subspaces.push(Subspace::span(n, cond, std::slice::from_ref(v)));
        }
    }
    Ok(InvariantSubspaces { subspaces, pencil })
}

/// All `d`-dimensional subspaces invariant under both generators, for
/// `d = 1` and `d = n − 1` (which together exhaust the proper subspaces when
/// `n ≤ 3`).
pub fn common_invariant_subspaces(rep: &B3Rep, d: usize) -> Result<InvariantSubspaces> {
    let n = rep.dim();
    if d == 0 || d >= n {
        return Err(Error::DimensionMismatch(format!("need 1 <= d < {n}, got {d}")));
    }
    if d == 1 {
        return common_lines(rep);
    }
    if d + 1 == n {
        let dual = common_lines(&rep.transpose())?;
        let subspaces = dual
            .subspaces
            .iter()
            .map(|line| ExactMatrix::from_rows(vec![line.basis()[0].clone()]).map(|f| f.kernel()))
            .collect::<Result<Vec<_>>>()?;
        return Ok(InvariantSubspaces { subspaces, pencil: dual.pencil });
    }
    Err(Error::DimensionMismatch(format!(
        "invariant subspaces are enumerated for d = 1 and d = n - 1 only (n = {n}, d = {d})"
    )))
}

/// Dimension of the unital algebra generated by A and B.
pub fn generated_algebra_dim(rep: &B3Rep) -> usize {
    let n = rep.dim();
    let cond = rep.conductor();
    let mut span = IncrementalBasis::new(cond);
    let id = ExactMatrix::identity(n, cond);
    span.insert(&id.to_vector());
    let mut queue = vec![id];
    while let Some(x) = queue.pop() {
        if span.dim() == n * n {
            break;
        }
        for g in [&rep.a, &rep.b] {
            let y = g.mul(&x);
            if span.insert(&y.to_vector()) {
                queue.push(y);
            }
        }
    }
    span.dim()
}

/// Burnside's criterion: irreducible iff A and B generate all n×n matrices.
pub fn is_irreducible(rep: &B3Rep) -> bool {
    generated_algebra_dim(rep) == rep.dim() * rep.dim()
}

/// The joint commutant of a representation with its trace-form radical.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndAlgebra {
    pub basis: Vec<ExactMatrix>,
    pub dim: usize,
    pub radical_dim: usize,
    pub radical_basis: Vec<ExactMatrix>,
}

pub fn commutant(rep: &B3Rep) -> EndAlgebra {
    let n = rep.dim();
    let space = intertwiner_space(&rep.a, &rep.b, &rep.a, &rep.b).expect("square generators");
    let basis = space.as_matrices(n, n);
    let (radical_dim, radical_basis) = algebra_radical(&basis);
    EndAlgebra { dim: basis.len(), basis, radical_dim, radical_basis }
}

/// Radical of a matrix algebra given by a basis: the kernel of the Gram
/// matrix of the trace form `(x, y) ↦ tr(xy)`.
pub fn algebra_radical(basis: &[ExactMatrix]) -> (usize, Vec<ExactMatrix>) {
    let Some(first) = basis.first() else { return (0, Vec::new()) };
    let k = basis.len();
    let cond = first.conductor();
    let mut gram = ExactMatrix::zeros(k, k, cond);
    for i in 0..k {
        for j in i..k {
            let t = basis[i].mul(&basis[j]).trace();
            gram.set(i, j, t.clone());
            gram.set(j, i, t);
        }
    }
    let ker = gram.kernel();
    let rad = ker
        .basis()
        .iter()
        .map(|c| {
            c.iter().zip(basis).fold(ExactMatrix::zeros(first.rows(), first.cols(), cond), |acc, (x, b)| {
                if x.is_zero() {
                    acc
                } else {
                    acc.add(&b.scale(x))
                }
            })
        })
        .collect();
    (ker.dim(), rad)
}

/// Indecomposable iff the endomorphism algebra is local, i.e. its quotient by
/// the radical is one-dimensional.
pub fn is_indecomposable(rep: &B3Rep) -> bool {
    let e = commutant(rep);
    e.dim - e.radical_dim == 1
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Summand {
    /// Columns spanning the summand, in the coordinates of the input.
    pub basis: ExactMatrix,
    /// The representation restricted to the summand, in that basis.
    pub rep: B3Rep,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionReport {
    pub summands: Vec<Summand>,
    /// `[S_1 | S_2 | …]`; conjugating by it gives the block-diagonal pair.
    pub witness: ExactMatrix,
    /// False when some summand could not be split further even though its
    /// endomorphism algebra is not local (spectrum outside the field).
    pub complete: bool,
}

impl DecompositionReport {
    pub fn dims(&self) -> Vec<usize> {
        self.summands.iter().map(|s| s.rep.dim()).collect()
    }

    /// Summand dimensions in ascending order.
    pub fn sorted_dims(&self) -> Vec<usize> {
        let mut d = self.dims();
        d.sort_unstable();
        d
    }
}

/// Deterministic stream of small-integer coefficient vectors: unit vectors,
/// then pairs, then pseudo-random vectors from a fixed linear congruential
/// sequence.
struct Combinations {
    k: usize,
    stage: usize,
    i: usize,
    j: usize,
    state: u64,
    emitted: usize,
    limit: usize,
}

impl Combinations {
    fn new(k: usize, limit: usize) -> Self {
        Self { k, stage: 0, i: 0, j: 1, state: 0x9e37_79b9_7f4a_7c15, emitted: 0, limit }
    }

    fn next_small(&mut self, range: i64) -> i64 {
        self.state = self.state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        ((self.state >> 33) % (2 * range as u64 + 1)) as i64 - range
    }
}

impl Iterator for Combinations {
    type Item = Vec<i64>;

    fn next(&mut self) -> Option<Vec<i64>> {
        if self.emitted >= self.limit || self.k == 0 {
            return None;
        }
        self.emitted += 1;
        let k = self.k;
        loop {
            match self.stage {
                0 => {
                    if self.i < k {
                        let mut v = vec![0; k];
                        v[self.i] = 1;
                        self.i += 1;
                        return Some(v);
                    }
                    self.stage = 1;
                    self.i = 0;
                    self.j = 1;
                }
                1 => {
                    if self.i + 1 < k {
                        let mut v = vec![0; k];
                        v[self.i] = 1;
                        v[self.j] = 2;
                        self.j += 1;
                        if self.j == k {
                            self.i += 1;
                            self.j = self.i + 1;
                        }
                        return Some(v);
                    }
                    self.stage = 2;
                }
                _ => {
                    let range = 3 + (self.emitted / 16) as i64;
                    return Some((0..k).map(|_| self.next_small(range)).collect());
                }
            }
        }
    }
}

fn combine(basis: &[ExactMatrix], coeffs: &[i64]) -> ExactMatrix {
    let first = &basis[0];
    let cond = first.conductor();
    coeffs.iter().zip(basis).fold(ExactMatrix::zeros(first.rows(), first.cols(), cond), |acc, (&c, b)| match c {
        0 => acc,
        1 => acc.add(b),
        _ => acc.add(&b.scale(&CycloElement::from_int(cond, c))),
    })
}

/// Generalized eigenspaces of some commutant element with at least two
/// distinct eigenvalues, all lying in the field.
fn splitting_spaces(rep: &B3Rep, alg: &EndAlgebra) -> Option<Vec<Subspace>> {
    for coeffs in Combinations::new(alg.basis.len(), 64 + 4 * alg.basis.len()) {
        let x = combine(&alg.basis, &coeffs);
        let Ok(cp) = x.char_poly() else { continue };
        if cp.square_free_part().degree().unwrap_or(0) < 2 {
            continue;
        }
        let Ok(spec) = roots_with_ladder(&cp, DEFAULT_PRECISION, 1024) else { continue };
        if !spec.split {
            continue;
        }
        let spaces: Vec<Subspace> = spec
            .roots
            .iter()
            .map(|(l, m)| spectra::shift(&x, l).pow(*m as u32).kernel())
            .collect();
        debug_assert!(spaces.iter().all(|s| s.is_invariant_under(rep.a()) && s.is_invariant_under(rep.b())));
        return Some(spaces);
    }
    None
}

fn split_recursive(rep: &B3Rep, out: &mut Vec<Summand>, complete: &mut bool) {
    let n = rep.dim();
    let cond = rep.conductor();
    let alg = commutant(rep);
    if alg.dim - alg.radical_dim == 1 {
        out.push(Summand { basis: ExactMatrix::identity(n, cond), rep: rep.clone() });
        return;
    }
    let Some(spaces) = splitting_spaces(rep, &alg) else {
        *complete = false;
        out.push(Summand { basis: ExactMatrix::identity(n, cond), rep: rep.clone() });
        return;
    };
    for s in spaces {
        let sub = B3Rep {
            a: s.restrict(&rep.a).expect("commutant eigenspaces are invariant"),
            b: s.restrict(&rep.b).expect("commutant eigenspaces are invariant"),
        };
        let outer = s.basis_matrix();
        let mut inner = Vec::new();
        split_recursive(&sub, &mut inner, complete);
        out.extend(inner.into_iter().map(|sm| Summand { basis: outer.mul(&sm.basis), rep: sm.rep }));
    }
}

/// Splits a representation into indecomposable summands by repeatedly
/// separating generalized eigenspaces of commutant elements.
pub fn decompose(rep: &B3Rep) -> Result<DecompositionReport> {
    let mut summands = Vec::new();
    let mut complete = true;
    split_recursive(rep, &mut summands, &mut complete);
    let n = rep.dim();
    let cols: Vec<Vec<CycloElement>> =
        summands.iter().flat_map(|s| (0..s.basis.cols()).map(move |j| s.basis.column(j))).collect();
    let witness = ExactMatrix::from_columns(n, rep.conductor(), &cols);
    let report = DecompositionReport { summands, witness, complete };
    debug_assert!(verify_decomposition(rep, &report));
    if !complete {
        return Err(Error::SpectrumNotInField { conductor: rep.conductor() });
    }
    Ok(report)
}

/// Like [`decompose`] but returns partial results instead of failing.
pub fn decompose_partial(rep: &B3Rep) -> DecompositionReport {
    let mut summands = Vec::new();
    let mut complete = true;
    split_recursive(rep, &mut summands, &mut complete);
    let cols: Vec<Vec<CycloElement>> =
        summands.iter().flat_map(|s| (0..s.basis.cols()).map(move |j| s.basis.column(j))).collect();
    let witness = ExactMatrix::from_columns(rep.dim(), rep.conductor(), &cols);
    DecompositionReport { summands, witness, complete }
}

/// Checks that the witness is invertible and conjugates the pair into the
/// block-diagonal sum of the summands.
pub fn verify_decomposition(rep: &B3Rep, report: &DecompositionReport) -> bool {
    let Ok(inv) = report.witness.inverse() else { return false };
    let blocks_a: Vec<ExactMatrix> = report.summands.iter().map(|s| s.rep.a.clone()).collect();
    let blocks_b: Vec<ExactMatrix> = report.summands.iter().map(|s| s.rep.b.clone()).collect();
    inv.mul(&rep.a).mul(&report.witness) == ExactMatrix::block_diag(&blocks_a)
        && inv.mul(&rep.b).mul(&report.witness) == ExactMatrix::block_diag(&blocks_b)
        && report.summands.iter().all(|s| braid_defect(&s.rep.a, &s.rep.b).is_ok_and(|d| d.is_zero()))
}

/// Whether `M` is invertible with `M⁻¹A₁M = A₂` and `M⁻¹B₁M = B₂`.
pub fn verify_witness(rep1: &B3Rep, rep2: &B3Rep, m: &ExactMatrix) -> bool {
    match rep1.conjugate(m) {
        Ok(c) => c == *rep2,
        Err(_) => false,
    }
}

/// Largest grid `{0..n}^k` walked exhaustively when certifying that no
/// invertible intertwiner exists.
const GRID_LIMIT: usize = 1 << 18;

/// Outcome of an equivalence search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Equivalence {
    /// Verified witness `M` with `M⁻¹A₁M = A₂`, `M⁻¹B₁M = B₂`.
    Witness(ExactMatrix),
    /// No invertible intertwiner exists (certified).
    Inequivalent,
    /// The search was abandoned without a certificate.
    Unknown,
}

/// Searches the intertwiner space for an invertible element.
pub fn equivalence(rep1: &B3Rep, rep2: &B3Rep) -> Result<Equivalence> {
    let n = rep1.dim();
    if n != rep2.dim() {
        return Ok(Equivalence::Inequivalent);
    }
    // intertwiners M with A1 M = M A2 satisfy M⁻¹ A1 M = A2 when invertible
    let space = intertwiner_space(&rep1.a, &rep1.b, &rep2.a, &rep2.b)?;
    let k = space.dim();
    if k == 0 {
        return Ok(Equivalence::Inequivalent);
    }
    // isomorphic modules have Hom(V1, V2) ≅ End(V1)
    let end1 = intertwiner_space(&rep1.a, &rep1.b, &rep1.a, &rep1.b)?.dim();
    if end1 != k {
        return Ok(Equivalence::Inequivalent);
    }
    let basis = space.as_matrices(n, n);
    let try_coeffs = |c: &[i64]| -> Option<ExactMatrix> {
        let m = combine(&basis, c);
        if m.determinant().is_ok_and(|d| !d.is_zero()) && verify_witness(rep1, rep2, &m) {
            Some(m)
        } else {
            None
        }
    };
    for c in Combinations::new(k, 48 + 4 * k) {
        if let Some(m) = try_coeffs(&c) {
            return Ok(Equivalence::Witness(m));
        }
    }
    // det(Σ x_i M_i) has degree ≤ n in each x_i, so it vanishes on the whole
    // grid {0..n}^k only if it vanishes identically
    let side = n + 1;
    let Some(total) = side.checked_pow(k as u32).filter(|&t| t <= GRID_LIMIT) else {
        return Ok(Equivalence::Unknown);
    };
    let mut c = vec![0i64; k];
    for idx in 0..total {
        let mut r = idx;
        for slot in c.iter_mut() {
            *slot = (r % side) as i64;
            r /= side;
        }
        if let Some(m) = try_coeffs(&c) {
            return Ok(Equivalence::Witness(m));
        }
    }
    Ok(Equivalence::Inequivalent)
}

/// Verified equivalence witness, or `None`.
pub fn equivalent(rep1: &B3Rep, rep2: &B3Rep) -> Result<Option<ExactMatrix>> {
    Ok(match equivalence(rep1, rep2)? {
        Equivalence::Witness(m) => Some(m),
        _ => None,
    })
}

/// Block-diagonal sum.
pub fn direct_sum(reps: &[B3Rep]) -> Result<B3Rep> {
    if reps.is_empty() {
        return Err(Error::DimensionMismatch("direct sum of an empty list".into()));
    }
    let a: Vec<ExactMatrix> = reps.iter().map(|r| r.a.clone()).collect();
    let b: Vec<ExactMatrix> = reps.iter().map(|r| r.b.clone()).collect();
    make_rep(ExactMatrix::block_diag(&a), ExactMatrix::block_diag(&b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::root_of_unity;

    fn e(v: i64) -> CycloElement {
        CycloElement::from_int(24, v)
    }

    fn w() -> CycloElement {
        root_of_unity(24, 4)
    }

    fn d21() -> B3Rep {
        let a = ExactMatrix::diag(&[e(1), w()]);
        let b = ExactMatrix::from_rows(vec![vec![e(1), e(1)], vec![e(0), w()]]).unwrap();
        make_rep(a, b).unwrap()
    }

    fn tw2(l1: CycloElement, l2: CycloElement) -> B3Rep {
        let a = ExactMatrix::from_rows(vec![vec![l1.clone(), l1.clone()], vec![e(0), l2.clone()]]).unwrap();
        let b = ExactMatrix::from_rows(vec![vec![l2.clone(), e(0)], vec![-&l2, l1]]).unwrap();
        make_rep(a, b).unwrap()
    }

    fn one_dim(v: CycloElement) -> B3Rep {
        make_rep(ExactMatrix::diag(&[v.clone()]), ExactMatrix::diag(&[v])).unwrap()
    }

    #[test]
    fn make_rep_examples() {
        let r = d21();
        assert_eq!(r.dim(), 2);
        let m = ExactMatrix::from_ints(24, &[&[2, 1], &[1, 1]]);
        assert!(make_rep(m.clone(), m).is_ok());
        let bad = make_rep(ExactMatrix::diag(&[e(1), e(3)]), ExactMatrix::from_ints(24, &[&[1, 1], &[0, 3]]));
        match bad {
            Err(Error::BraidRelationViolated { defect }) => assert!(!defect.is_zero()),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            make_rep(ExactMatrix::diag(&[e(1), e(0)]), ExactMatrix::diag(&[e(1), e(0)])),
            Err(Error::NotInvertible)
        ));
    }

    #[test]
    fn invariant_subspaces() {
        let lines = common_invariant_subspaces(&d21(), 1).unwrap();
        assert_eq!(lines.subspaces, vec![Subspace::span(2, 24, &[vec![e(1), e(0)]])]);
        assert!(!lines.pencil);
        assert!(common_invariant_subspaces(&tw2(e(1), e(2)), 1).unwrap().subspaces.is_empty());
        assert!(common_invariant_subspaces(&d21(), 2).is_err());
        let scalar = direct_sum(&[one_dim(e(2)), one_dim(e(2))]).unwrap();
        assert!(common_invariant_subspaces(&scalar, 1).unwrap().pencil);
    }

    #[test]
    fn irreducibility_and_commutants() {
        assert!(is_irreducible(&tw2(e(1), e(2))));
        assert!(!is_irreducible(&tw2(e(1), w())));
        assert!(is_irreducible(&one_dim(e(5))));
        assert_eq!(commutant(&tw2(e(1), e(2))).dim, 1);
        assert_eq!(commutant(&d21()).dim, 1);
        let sum = direct_sum(&[tw2(e(1), e(2)), tw2(e(1), e(3))]).unwrap();
        assert_eq!(commutant(&sum).dim, 2);
        assert!(is_indecomposable(&d21()));
        assert!(!is_indecomposable(&direct_sum(&[one_dim(e(1)), one_dim(e(2))]).unwrap()));
    }

    #[test]
    fn radical_of_jordan_block_commutant() {
        let l = e(3);
        let mut j = ExactMatrix::diag(&[l.clone(), l.clone(), l]);
        j.set(0, 1, e(1));
        j.set(1, 2, e(1));
        let rep = make_rep(j.clone(), j).unwrap();
        let alg = commutant(&rep);
        assert_eq!((alg.dim, alg.radical_dim), (3, 2));
        let diag_alg = vec![ExactMatrix::identity(2, 24), ExactMatrix::diag(&[e(1), e(0)])];
        assert_eq!(algebra_radical(&diag_alg).0, 0);
    }

    #[test]
    fn decomposition_and_equivalence() {
        let irr = tw2(e(1), e(2));
        let rep = decompose(&irr).unwrap();
        assert_eq!(rep.dims(), vec![2]);
        assert!(rep.witness.is_identity());

        let sum = direct_sum(&[one_dim(e(1)), tw2(e(1), e(2)), one_dim(e(1)), d21()]).unwrap();
        let m = ExactMatrix::from_ints(24, &[
            &[1, 0, 2, 0, 0, 1],
            &[0, 1, 0, 0, 1, 0],
            &[1, 1, 1, 0, 0, 0],
            &[0, 0, 0, 1, 0, 2],
            &[2, 0, 0, 0, 1, 0],
            &[0, 0, 1, 1, 0, 1],
        ]);
        let mixed = sum.conjugate(&m).unwrap();
        let report = decompose(&mixed).unwrap();
        assert_eq!(report.sorted_dims(), vec![1, 1, 2, 2]);
        assert!(verify_decomposition(&mixed, &report));
        let rebuilt = direct_sum(&report.summands.iter().map(|s| s.rep.clone()).collect::<Vec<_>>()).unwrap();
        let wit = equivalent(&mixed, &rebuilt).unwrap().expect("equivalent");
        assert!(verify_witness(&mixed, &rebuilt, &wit));

        assert!(equivalent(&d21(), &d21()).unwrap().is_some());
        assert_eq!(equivalence(&tw2(e(1), e(2)), &tw2(e(1), e(3))).unwrap(), Equivalence::Inequivalent);
        let back = equivalent(&mixed, &sum).unwrap().unwrap();
        assert!(verify_witness(&mixed, &sum, &back));
        assert!(verify_witness(&sum, &mixed, &back.inverse().unwrap()));
    }

    #[test]
    fn sums_and_combinations() {
        let s = direct_sum(&[tw2(e(1), e(2)), d21(), one_dim(e(1))]).unwrap();
        assert_eq!(s.dim(), 5);
        let c: Vec<Vec<i64>> = Combinations::new(3, 8).collect();
        assert_eq!(c[0], vec![1, 0, 0]);
        assert_eq!(c[3], vec![1, 2, 0]);
        assert_eq!(c.len(), 8);
        assert_eq!(Combinations::new(3, 8).collect::<Vec<_>>(), c);
    }
}

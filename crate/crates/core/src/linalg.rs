//! Dense exact matrices over ℚ(ζ_N) and row-echelon subspaces.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{CycloElement, FieldError};
use crate::poly::Poly;

/// Row-major dense matrix whose entries share one conductor.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    conductor: u32,
    data: Vec<CycloElement>,
}

/// Output of [`ExactMatrix::rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: ExactMatrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl ExactMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<CycloElement>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        let conductor = data.first().map_or(crate::field::DEFAULT_CONDUCTOR, CycloElement::conductor);
        if let Some(bad) = data.iter().find(|e| e.conductor() != conductor) {
            return Err(FieldError::ConductorMismatch { left: conductor, right: bad.conductor() }.into());
        }
        Ok(Self { rows, cols, conductor, data })
    }

    pub fn from_rows(rows: Vec<Vec<CycloElement>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    /// Integer matrix, convenient for tests and fixed witnesses.
    pub fn from_ints(conductor: u32, rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let data = rows.iter().flat_map(|row| row.iter().map(|&v| CycloElement::from_int(conductor, v))).collect();
        Self { rows: r, cols: c, conductor, data }
    }

    pub fn zeros(rows: usize, cols: usize, conductor: u32) -> Self {
        Self { rows, cols, conductor, data: vec![CycloElement::zero(conductor); rows * cols] }
    }

    pub fn identity(n: usize, conductor: u32) -> Self {
        let mut m = Self::zeros(n, n, conductor);
        for i in 0..n {
            m.data[i * n + i] = CycloElement::one(conductor);
        }
        m
    }

    pub fn diag(entries: &[CycloElement]) -> Self {
        let n = entries.len();
        let conductor = entries.first().map_or(crate::field::DEFAULT_CONDUCTOR, CycloElement::conductor);
        let mut m = Self::zeros(n, n, conductor);
        for (i, e) in entries.iter().enumerate() {
            m.data[i * n + i] = e.clone();
        }
        m
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(n: usize, conductor: u32, cols: &[Vec<CycloElement>]) -> Self {
        let mut m = Self::zeros(n, cols.len(), conductor);
        for (j, c) in cols.iter().enumerate() {
            for (i, e) in c.iter().enumerate() {
                m.data[i * cols.len() + j] = e.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &CycloElement {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: CycloElement) {
        assert_eq!(v.conductor(), self.conductor, "conductor mismatch");
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[CycloElement] {
        &self.data
    }

    pub fn row(&self, i: usize) -> Vec<CycloElement> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<CycloElement> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<CycloElement>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(CycloElement::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| if i == j { self.get(i, j).is_one() } else { self.get(i, j).is_zero() })
            })
    }

    fn same_shape(&self, o: &Self) -> Result<()> {
        if self.rows != o.rows || self.cols != o.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        if self.conductor != o.conductor {
            return Err(FieldError::ConductorMismatch { left: self.conductor, right: o.conductor }.into());
        }
        Ok(())
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        self.same_shape(o)?;
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect();
        Ok(self.with_data(data))
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self> {
        self.same_shape(o)?;
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect();
        Ok(self.with_data(data))
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        if self.cols != o.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        if self.conductor != o.conductor {
            return Err(FieldError::ConductorMismatch { left: self.conductor, right: o.conductor }.into());
        }
        let mut out = Self::zeros(self.rows, o.cols, self.conductor);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        let idx = i * o.cols + j;
                        out.data[idx] = &out.data[idx] + &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    fn with_data(&self, data: Vec<CycloElement>) -> Self {
        Self { rows: self.rows, cols: self.cols, conductor: self.conductor, data }
    }

    /// Panicking product for internal use on shapes known to agree.
    pub fn mul(&self, o: &Self) -> Self {
        self.try_mul(o).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn add(&self, o: &Self) -> Self {
        self.try_add(o).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.try_sub(o).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn scale(&self, c: &CycloElement) -> Self {
        self.with_data(self.data.iter().map(|a| a * c).collect())
    }

    pub fn neg(&self) -> Self {
        self.with_data(self.data.iter().map(|a| -a).collect())
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows, self.conductor);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        out
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut acc = Self::identity(self.rows, self.conductor);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn mul_vec(&self, v: &[CycloElement]) -> Vec<CycloElement> {
        (0..self.rows)
            .map(|i| {
                let mut acc = CycloElement::zero(self.conductor);
                for (j, x) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() && !x.is_zero() {
                        acc = &acc + &(a * x);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn trace(&self) -> CycloElement {
        (0..self.rows.min(self.cols)).fold(CycloElement::zero(self.conductor), |acc, i| &acc + self.get(i, i))
    }

    /// Entrywise re-expression in another cyclotomic field.
    pub fn embed(&self, target: u32) -> Result<Self> {
        let data = self.data.iter().map(|e| e.embed(target)).collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(Self { rows: self.rows, cols: self.cols, conductor: target, data })
    }

    /// Substitutes the matrix into `p`.
    pub fn eval_poly(&self, p: &Poly) -> Self {
        let mut acc = Self::zeros(self.rows, self.cols, self.conductor);
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(self);
            for i in 0..self.rows {
                let idx = i * self.cols + i;
                acc.data[idx] = &acc.data[idx] + c;
            }
        }
        acc
    }

    /// Reduced row-echelon form with pivot columns.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !m.get(r, col).is_zero()) else { continue };
            m.swap_rows(row, p);
            let inv = m.get(row, col).inv().expect("pivot is nonzero");
            for j in col..self.cols {
                let idx = row * self.cols + j;
                if !m.data[idx].is_zero() {
                    m.data[idx] = &m.data[idx] * &inv;
                }
            }
            for r in 0..self.rows {
                if r == row {
                    continue;
                }
                let f = m.get(r, col).clone();
                if f.is_zero() {
                    continue;
                }
                for j in col..self.cols {
                    let pv = &m.data[row * self.cols + j];
                    if !pv.is_zero() {
                        let t = &f * pv;
                        let idx = r * self.cols + j;
                        m.data[idx] = &m.data[idx] - &t;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        Rref { matrix: m, rank: pivots.len(), pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Right null space.
    pub fn kernel(&self) -> Subspace {
        let r = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !r.pivots.contains(c)).collect();
        let vecs: Vec<Vec<CycloElement>> = free
            .iter()
            .map(|&f| {
                let mut v = vec![CycloElement::zero(self.conductor); self.cols];
                v[f] = CycloElement::one(self.conductor);
                for (i, &p) in r.pivots.iter().enumerate() {
                    v[p] = -r.matrix.get(i, f);
                }
                v
            })
            .collect();
        Subspace::span(self.cols, self.conductor, &vecs)
    }

    /// Fraction-free (Bareiss) determinant.
    pub fn determinant(&self) -> Result<CycloElement> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(CycloElement::one(self.conductor));
        }
        let mut m = self.clone();
        let mut prev = CycloElement::one(self.conductor);
        let mut negate = false;
        for k in 0..n - 1 {
            if m.get(k, k).is_zero() {
                match (k + 1..n).find(|&r| !m.get(r, k).is_zero()) {
                    Some(p) => {
                        m.swap_rows(k, p);
                        negate = !negate;
                    }
                    None => return Ok(CycloElement::zero(self.conductor)),
                }
            }
            let pivot = m.get(k, k).clone();
            for i in k + 1..n {
                let lead = m.get(i, k).clone();
                for j in k + 1..n {
                    let v = &(&m.data[i * n + j] * &pivot) - &(&lead * m.get(k, j));
                    m.data[i * n + j] = &v / &prev;
                }
            }
            prev = pivot;
        }
        let d = m.get(n - 1, n - 1).clone();
        Ok(if negate { -d } else { d })
    }

    /// Gauss–Jordan inverse.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n, self.conductor);
        for i in 0..n {
            for j in 0..n {
                aug.data[i * 2 * n + j] = self.get(i, j).clone();
            }
            aug.data[i * 2 * n + n + i] = CycloElement::one(self.conductor);
        }
        let r = aug.rref();
        if r.pivots.len() < n || r.pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        let mut out = Self::zeros(n, n, self.conductor);
        for i in 0..n {
            for j in 0..n {
                out.data[i * n + j] = r.matrix.get(i, n + j).clone();
            }
        }
        Ok(out)
    }

    /// Characteristic polynomial `det(xI − M)` by Berkowitz's division-free
    /// recurrence.
    pub fn char_poly(&self) -> Result<Poly> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("characteristic polynomial of a non-square matrix".into()));
        }
        let n = self.rows;
        let cond = self.conductor;
        let zero = CycloElement::zero(cond);
        // coefficients from the leading term down
        let mut c: Vec<CycloElement> = vec![CycloElement::one(cond)];
        for r in 0..n {
            let a = self.get(r, r).clone();
            let row: Vec<CycloElement> = (0..r).map(|j| self.get(r, j).clone()).collect();
            let mut col: Vec<CycloElement> = (0..r).map(|i| self.get(i, r).clone()).collect();
            let mut t = Vec::with_capacity(r + 2);
            t.push(CycloElement::one(cond));
            t.push(-&a);
            for _ in 0..r {
                let dot = row.iter().zip(&col).fold(zero.clone(), |acc, (x, y)| &acc + &(x * y));
                t.push(-&dot);
                // col ← A_r · col
                col = (0..r)
                    .map(|i| (0..r).fold(zero.clone(), |acc, j| &acc + &(self.get(i, j) * &col[j])))
                    .collect();
            }
            let mut next = vec![zero.clone(); r + 2];
            for (i, slot) in next.iter_mut().enumerate() {
                for (j, cj) in c.iter().enumerate() {
                    if i >= j && !cj.is_zero() && !t[i - j].is_zero() {
                        *slot = &*slot + &(&t[i - j] * cj);
                    }
                }
            }
            c = next;
        }
        c.reverse();
        Ok(Poly::new(cond, c))
    }

    pub fn kronecker(&self, o: &Self) -> Self {
        let (r, c) = (self.rows * o.rows, self.cols * o.cols);
        let mut out = Self::zeros(r, c, self.conductor);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..o.rows {
                    for l in 0..o.cols {
                        out.data[(i * o.rows + k) * c + j * o.cols + l] = a * o.get(k, l);
                    }
                }
            }
        }
        out
    }

    /// Block-diagonal matrix of square blocks.
    pub fn block_diag(blocks: &[ExactMatrix]) -> Self {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let conductor = blocks.first().map_or(crate::field::DEFAULT_CONDUCTOR, |b| b.conductor);
        let mut out = Self::zeros(n, n, conductor);
        let mut off = 0;
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.data[(off + i) * n + off + j] = b.get(i, j).clone();
                }
            }
            off += b.rows;
        }
        out
    }

    /// Submatrix on a contiguous diagonal block.
    pub fn block(&self, start: usize, len: usize) -> Self {
        let mut out = Self::zeros(len, len, self.conductor);
        for i in 0..len {
            for j in 0..len {
                out.data[i * len + j] = self.get(start + i, start + j).clone();
            }
        }
        out
    }

    /// Flattens row-major.
    pub fn to_vector(&self) -> Vec<CycloElement> {
        self.data.clone()
    }

    pub fn from_vector(rows: usize, cols: usize, conductor: u32, v: &[CycloElement]) -> Self {
        Self { rows, cols, conductor, data: v.to_vec() }
    }

    /// Canonical order: lexicographic on entries.
    pub fn canonical_cmp(&self, o: &Self) -> std::cmp::Ordering {
        (self.rows, self.cols).cmp(&(o.rows, o.cols)).then_with(|| self.data.cmp(&o.data))
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> =
            (0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j).to_string()).collect()).collect();
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        for (i, row) in cells.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "[")?;
            for (j, c) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, "  ")?;
                }
                write!(f, "{c:>width$}")?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}

/// A subspace of column vectors, stored as an RREF basis so that equal
/// subspaces have equal representations.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace {
    ambient_dim: usize,
    conductor: u32,
    basis: Vec<Vec<CycloElement>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn span(ambient_dim: usize, conductor: u32, vectors: &[Vec<CycloElement>]) -> Self {
        if vectors.is_empty() {
            return Self::zero(ambient_dim, conductor);
        }
        let m = ExactMatrix::new(vectors.len(), ambient_dim, vectors.iter().flatten().cloned().collect())
            .expect("vectors have the ambient length and conductor");
        let r = m.rref();
        let basis = (0..r.rank).map(|i| r.matrix.row(i)).collect();
        Self { ambient_dim, conductor, basis, pivots: r.pivots }
    }

    pub fn zero(ambient_dim: usize, conductor: u32) -> Self {
        Self { ambient_dim, conductor, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient_dim: usize, conductor: u32) -> Self {
        let id = ExactMatrix::identity(ambient_dim, conductor);
        Self::span(ambient_dim, conductor, &id.to_rows())
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn basis(&self) -> &[Vec<CycloElement>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Basis vectors as the columns of an `ambient × dim` matrix.
    pub fn basis_matrix(&self) -> ExactMatrix {
        ExactMatrix::from_columns(self.ambient_dim, self.conductor, &self.basis)
    }

    /// Coordinates of `v` in the RREF basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[CycloElement]) -> Option<Vec<CycloElement>> {
        let coords: Vec<CycloElement> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut rebuilt = vec![CycloElement::zero(self.conductor); self.ambient_dim];
        for (c, b) in coords.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (slot, x) in rebuilt.iter_mut().zip(b) {
                if !x.is_zero() {
                    *slot = &*slot + &(c * x);
                }
            }
        }
        (rebuilt.as_slice() == v).then_some(coords)
    }

    pub fn contains(&self, v: &[CycloElement]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_subspace(&self, o: &Self) -> bool {
        o.basis.iter().all(|b| self.contains(b))
    }

    pub fn sum(&self, o: &Self) -> Self {
        let all: Vec<_> = self.basis.iter().chain(&o.basis).cloned().collect();
        Self::span(self.ambient_dim, self.conductor, &all)
    }

    /// Intersection via the kernel of `[S | -T]`.
    pub fn intersect(&self, o: &Self) -> Self {
        if self.dim() == 0 || o.dim() == 0 {
            return Self::zero(self.ambient_dim, self.conductor);
        }
        let (k1, k2) = (self.dim(), o.dim());
        let mut m = ExactMatrix::zeros(self.ambient_dim, k1 + k2, self.conductor);
        for (j, b) in self.basis.iter().enumerate() {
            for (i, x) in b.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        for (j, b) in o.basis.iter().enumerate() {
            for (i, x) in b.iter().enumerate() {
                m.set(i, k1 + j, -x);
            }
        }
        let ker = m.kernel();
        let vecs: Vec<Vec<CycloElement>> = ker
            .basis()
            .iter()
            .map(|c| {
                let mut v = vec![CycloElement::zero(self.conductor); self.ambient_dim];
                for (cj, b) in c[..k1].iter().zip(&self.basis) {
                    for (slot, x) in v.iter_mut().zip(b) {
                        *slot = &*slot + &(cj * x);
                    }
                }
                v
            })
            .collect();
        Self::span(self.ambient_dim, self.conductor, &vecs)
    }

    /// Whether `M·S ⊆ S`.
    pub fn is_invariant_under(&self, m: &ExactMatrix) -> bool {
        self.basis.iter().all(|b| self.contains(&m.mul_vec(b)))
    }

    /// Matrix of `m` restricted to this (invariant) subspace, in the RREF basis.
    pub fn restrict(&self, m: &ExactMatrix) -> Option<ExactMatrix> {
        let k = self.dim();
        let mut out = ExactMatrix::zeros(k, k, self.conductor);
        for (j, b) in self.basis.iter().enumerate() {
            let coords = self.coordinates(&m.mul_vec(b))?;
            for (i, c) in coords.into_iter().enumerate() {
                out.set(i, j, c);
            }
        }
        Some(out)
    }

    /// Reinterprets each basis vector (length n·m) as a row-major n×m matrix.
    pub fn as_matrices(&self, rows: usize, cols: usize) -> Vec<ExactMatrix> {
        self.basis.iter().map(|v| ExactMatrix::from_vector(rows, cols, self.conductor, v)).collect()
    }
}

/// Echelon basis that grows one vector at a time, for span closures.
#[derive(Clone, Debug)]
pub struct IncrementalBasis {
    conductor: u32,
    rows: Vec<(usize, Vec<CycloElement>)>,
}

impl IncrementalBasis {
    pub fn new(conductor: u32) -> Self {
        Self { conductor, rows: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &[CycloElement]) -> Vec<CycloElement> {
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone();
            for (slot, x) in v.iter_mut().zip(row) {
                if !x.is_zero() {
                    *slot = &*slot - &(&f * x);
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[CycloElement]) -> bool {
        self.reduce(v).iter().all(CycloElement::is_zero)
    }

    /// Adds `v` if it is independent; returns whether the span grew.
    pub fn insert(&mut self, v: &[CycloElement]) -> bool {
        let r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else { return false };
        let inv = r[p].inv().expect("nonzero pivot");
        let r: Vec<CycloElement> = r.iter().map(|x| x * &inv).collect();
        self.rows.push((p, r));
        let _ = self.conductor;
        true
    }
}

/// All `M` (n1 × n2) with `A1·M = M·A2` and `B1·M = M·B2`, as a subspace of
/// row-major flattened matrices.
pub fn intertwiner_space(a1: &ExactMatrix, b1: &ExactMatrix, a2: &ExactMatrix, b2: &ExactMatrix) -> Result<Subspace> {
    let (n1, n2) = (a1.rows(), a2.rows());
    for (m, n) in [(a1, n1), (b1, n1), (a2, n2), (b2, n2)] {
        if m.rows() != n || m.cols() != n {
            return Err(Error::DimensionMismatch("intertwiner inputs must be square and paired".into()));
        }
    }
    let cond = a1.conductor();
    let unknowns = n1 * n2;
    let mut sys = ExactMatrix::zeros(2 * unknowns, unknowns, cond);
    for (block, (x1, x2)) in [(a1, a2), (b1, b2)].into_iter().enumerate() {
        for i in 0..n1 {
            for j in 0..n2 {
                let row = block * unknowns + i * n2 + j;
                // (X1 M)_{ij} = Σ_k X1_{ik} M_{kj}
                for k in 0..n1 {
                    let c = x1.get(i, k);
                    if !c.is_zero() {
                        let idx = row * unknowns + k * n2 + j;
                        sys.data[idx] = &sys.data[idx] + c;
                    }
                }
                // (M X2)_{ij} = Σ_k M_{ik} X2_{kj}
                for k in 0..n2 {
                    let c = x2.get(k, j);
                    if !c.is_zero() {
                        let idx = row * unknowns + i * n2 + k;
                        sys.data[idx] = &sys.data[idx] - c;
                    }
                }
            }
        }
    }
    Ok(sys.kernel())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rat, root_of_unity, Rational};

    fn m(rows: &[&[i64]]) -> ExactMatrix {
        ExactMatrix::from_ints(24, rows)
    }

    fn e(v: i64) -> CycloElement {
        CycloElement::from_int(24, v)
    }

    #[test]
    fn rref_examples() {
        let r = ExactMatrix::identity(3, 24).rref();
        assert!(r.matrix.is_identity());
        assert_eq!((r.rank, r.pivots), (3, vec![0, 1, 2]));
        assert_eq!(m(&[&[0, 0], &[0, 0]]).rref().rank, 0);
        let r = m(&[&[1, 2], &[2, 4]]).rref();
        assert_eq!(r.matrix, m(&[&[1, 2], &[0, 0]]));
        assert_eq!((r.rank, r.pivots), (1, vec![0]));
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(m(&[&[2, 1], &[1, 1]]).kernel().dim(), 0);
        let k = m(&[&[1, 2], &[2, 4]]).kernel();
        assert_eq!(k, Subspace::span(2, 24, &[vec![e(-2), e(1)]]));
        let z = ExactMatrix::zeros(3, 3, 24);
        assert_eq!(z.kernel(), Subspace::full(3, 24));
    }

    #[test]
    fn inverse_examples() {
        let w = root_of_unity(24, 4);
        let d = ExactMatrix::diag(&[e(2), w.clone()]);
        assert_eq!(d.inverse().unwrap(), ExactMatrix::diag(&[CycloElement::from_rational(24, &rat(1, 2)), w.inv().unwrap()]));
        let t = ExactMatrix::from_rows(vec![vec![e(1), e(1)], vec![e(0), w.clone()]]).unwrap();
        let w5 = root_of_unity(24, 20);
        let expect = ExactMatrix::from_rows(vec![vec![e(1), -&w5], vec![e(0), w5]]).unwrap();
        assert_eq!(t.inverse().unwrap(), expect);
        assert!(matches!(m(&[&[1, 2], &[2, 4]]).inverse(), Err(Error::Singular)));
        assert!(m(&[&[1, 2], &[2, 4]]).determinant().unwrap().is_zero());
    }

    #[test]
    fn determinant_needs_pivoting() {
        let a = m(&[&[0, 1, 2], &[3, 0, 1], &[1, 1, 0]]);
        // 0(0-1) - 1(0-1) + 2(3-0) = 7
        assert_eq!(a.determinant().unwrap(), e(7));
    }

    #[test]
    fn char_poly_of_jordan_block() {
        let l = root_of_unity(24, 3);
        let mut j = ExactMatrix::diag(&[l.clone(), l.clone(), l.clone()]);
        j.set(0, 1, e(1));
        j.set(1, 2, e(1));
        let p = j.char_poly().unwrap();
        assert_eq!(p, Poly::from_roots(24, &[l.clone(), l.clone(), l]));
        assert!(j.eval_poly(&p).is_zero());
    }

    #[test]
    fn kronecker_and_intertwiners() {
        let i2 = ExactMatrix::identity(2, 24);
        assert!(i2.kronecker(&i2).is_identity());
        let a = m(&[&[1, 2], &[0, 3]]);
        let b = m(&[&[0, 1], &[1, 1]]);
        let c = m(&[&[2, 0], &[1, 1]]);
        let d = m(&[&[1, -1], &[4, 2]]);
        assert_eq!(a.kronecker(&b).mul(&c.kronecker(&d)), a.mul(&c).kronecker(&b.mul(&d)));
        let sp = intertwiner_space(&a, &b, &a, &b).unwrap();
        assert!(sp.contains(&ExactMatrix::identity(2, 24).to_vector()));
        // disjoint spectra admit no intertwiner
        let a2 = m(&[&[5, 0], &[0, 7]]);
        assert_eq!(intertwiner_space(&a, &a, &a2, &a2).unwrap().dim(), 0);
    }

    #[test]
    fn subspace_operations() {
        let s = Subspace::span(3, 24, &[vec![e(1), e(1), e(0)], vec![e(0), e(1), e(1)]]);
        let t = Subspace::span(3, 24, &[vec![e(1), e(0), e(0)], vec![e(0), e(0), e(1)]]);
        let i = s.intersect(&t);
        assert_eq!(i, Subspace::span(3, 24, &[vec![e(1), e(0), e(-1)]]));
        assert_eq!(s.sum(&t).dim(), 3);
        let a = m(&[&[2, 0, 0], &[0, 3, 1], &[0, 0, 3]]);
        let inv = Subspace::span(3, 24, &[vec![e(0), e(1), e(0)], vec![e(1), e(0), e(0)]]);
        assert!(inv.is_invariant_under(&a));
        assert_eq!(inv.restrict(&a).unwrap(), m(&[&[2, 0], &[0, 3]]));
        let _ = Rational::from_integer(1.into());
    }
}

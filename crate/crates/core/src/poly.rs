//! Dense univariate polynomials over ℚ(ζ_N).

use std::fmt;

use crate::field::{CycloElement, FieldError};

/// Coefficients in ascending order; the zero polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    conductor: u32,
    coeffs: Vec<CycloElement>,
}

impl Poly {
    pub fn new(conductor: u32, mut coeffs: Vec<CycloElement>) -> Self {
        while coeffs.last().is_some_and(CycloElement::is_zero) {
            coeffs.pop();
        }
        Self { conductor, coeffs }
    }

    pub fn zero(conductor: u32) -> Self {
        Self { conductor, coeffs: Vec::new() }
    }

    pub fn constant(c: CycloElement) -> Self {
        let n = c.conductor();
        Self::new(n, vec![c])
    }

    /// `x - r`.
    pub fn linear(r: &CycloElement) -> Self {
        Self::new(r.conductor(), vec![-r, CycloElement::one(r.conductor())])
    }

    /// Builds a monic polynomial from its roots.
    pub fn from_roots(conductor: u32, roots: &[CycloElement]) -> Self {
        roots.iter().fold(Self::constant(CycloElement::one(conductor)), |acc, r| acc.mul(&Self::linear(r)))
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[CycloElement] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> CycloElement {
        self.coeffs.get(i).cloned().unwrap_or_else(|| CycloElement::zero(self.conductor))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&CycloElement> {
        self.coeffs.last()
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new(self.conductor, (0..n).map(|i| &self.coeff(i) + &o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new(self.conductor, (0..n).map(|i| &self.coeff(i) - &o.coeff(i)).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.conductor);
        }
        let mut out = vec![CycloElement::zero(self.conductor); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = &out[i + j] + &(a * b);
                }
            }
        }
        Self::new(self.conductor, out)
    }

    pub fn scale(&self, c: &CycloElement) -> Self {
        Self::new(self.conductor, self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Divides by the leading coefficient. The zero polynomial stays zero.
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) if !l.is_one() => self.scale(&l.inv().expect("nonzero leading coefficient")),
            _ => self.clone(),
        }
    }

    /// Euclidean division; errors when dividing by the zero polynomial.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self), FieldError> {
        let dd = d.degree().ok_or(FieldError::DivisionByZero)?;
        let lead_inv = d.coeffs[dd].inv()?;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((Self::zero(self.conductor), self.clone()));
        }
        let mut q = vec![CycloElement::zero(self.conductor); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = &r[i + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dj) in d.coeffs.iter().enumerate() {
                r[i + j] = &r[i + j] - &(&c * dj);
            }
            q[i] = c;
        }
        r.truncate(dd);
        Ok((Self::new(self.conductor, q), Self::new(self.conductor, r)))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.conductor,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * &CycloElement::from_int(self.conductor, i as i64))
                .collect(),
        )
    }

    /// Monic gcd.
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// The product of the distinct monic irreducible factors.
    pub fn square_free_part(&self) -> Self {
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).expect("gcd is nonzero").0.monic()
    }

    pub fn eval(&self, x: &CycloElement) -> CycloElement {
        let mut acc = CycloElement::zero(self.conductor);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mono = match i {
                0 => String::new(),
                1 => "x".into(),
                _ => format!("x^{i}"),
            };
            if mono.is_empty() {
                write!(f, "({c})")?;
            } else if c.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "({c})*{mono}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::root_of_unity;

    fn c(v: i64) -> CycloElement {
        CycloElement::from_int(24, v)
    }

    #[test]
    fn division_identity() {
        let a = Poly::new(24, vec![c(3), root_of_unity(24, 5), c(0), c(2), c(1)]);
        let b = Poly::new(24, vec![c(-1), root_of_unity(24, 1), c(3)]);
        let (q, r) = a.div_rem(&b).unwrap();
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree().unwrap() < 2);
        assert!(a.div_rem(&Poly::zero(24)).is_err());
    }

    #[test]
    fn square_free_part_strips_multiplicity() {
        let w = root_of_unity(24, 4);
        let p = Poly::from_roots(24, &[c(1), c(1), c(1), w.clone(), w.clone(), c(2)]);
        let sf = p.square_free_part();
        assert_eq!(sf, Poly::from_roots(24, &[c(1), w, c(2)]));
        assert_eq!(sf.degree(), Some(3));
    }

    #[test]
    fn gcd_and_eval() {
        let p = Poly::from_roots(24, &[c(1), c(2)]);
        let q = Poly::from_roots(24, &[c(2), c(3)]);
        assert_eq!(p.gcd(&q), Poly::linear(&c(2)));
        assert!(p.eval(&c(2)).is_zero());
        assert_eq!(p.eval(&c(0)), c(2));
        assert_eq!(p.to_string(), "x^2 + (-3)*x + (2)");
    }
}

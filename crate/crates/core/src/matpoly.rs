//! Matrix polynomials in a single variable with constant rational coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::fraction::BiFraction;
use crate::matrix::MatF;
use crate::poly::BiPoly;
use crate::qmatrix::QMatrix;
use crate::rational::Rational;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Var {
    #[default]
    X,
    Z,
}

/// `Σ coeffs[j] · var^j`, trailing zero coefficients trimmed.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MatPoly {
    n: usize,
    var: Var,
    coeffs: Vec<QMatrix>,
}

/// A matrix polynomial in `x`.
pub type ThetaPoly = MatPoly;

impl MatPoly {
    pub fn new(n: usize, var: Var, coeffs: Vec<QMatrix>) -> Result<Self> {
        for c in &coeffs {
            check_dim(n, c.n())?;
        }
        Ok(Self::trimmed(n, var, coeffs))
    }

    fn trimmed(n: usize, var: Var, mut coeffs: Vec<QMatrix>) -> Self {
        while coeffs.last().is_some_and(QMatrix::is_zero) {
            coeffs.pop();
        }
        MatPoly { n, var, coeffs }
    }

    pub fn x(coeffs: Vec<QMatrix>) -> Self {
        let n = coeffs.first().map_or(1, QMatrix::n);
        Self::new(n, Var::X, coeffs).expect("coefficients of equal size")
    }

    pub fn zero(n: usize, var: Var) -> Self {
        MatPoly { n, var, coeffs: Vec::new() }
    }

    pub fn constant(c: QMatrix, var: Var) -> Self {
        let n = c.n();
        Self::trimmed(n, var, vec![c])
    }

    pub fn identity(n: usize, var: Var) -> Self {
        Self::constant(QMatrix::identity(n), var)
    }

    /// `c · var^d`
    pub fn monomial(c: QMatrix, d: usize, var: Var) -> Self {
        let n = c.n();
        let mut coeffs = vec![QMatrix::zero(n); d];
        coeffs.push(c);
        Self::trimmed(n, var, coeffs)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn with_var(mut self, var: Var) -> Self {
        self.var = var;
        self
    }

    pub fn coeffs(&self) -> &[QMatrix] {
        &self.coeffs
    }

    /// Coefficient of `var^j`; zero beyond the degree.
    pub fn coeff(&self, j: usize) -> QMatrix {
        self.coeffs.get(j).cloned().unwrap_or_else(|| QMatrix::zero(self.n))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as degree 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::trimmed(self.n, self.var, self.coeffs.iter().map(|m| m.scale(c)).collect())
    }

    /// Multiply by `var^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![QMatrix::zero(self.n); k];
        coeffs.extend(self.coeffs.iter().cloned());
        MatPoly { n: self.n, var: self.var, coeffs }
    }

    /// Drop the constant term.
    pub fn without_constant(&self) -> Self {
        let mut c = self.coeffs.clone();
        if let Some(first) = c.first_mut() {
            *first = QMatrix::zero(self.n);
        }
        Self::trimmed(self.n, self.var, c)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::identity(self.n, self.var);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Left multiplication by a constant matrix.
    pub fn left_mul(&self, c: &QMatrix) -> Self {
        Self::trimmed(self.n, self.var, self.coeffs.iter().map(|m| c * m).collect())
    }

    /// Right multiplication by a constant matrix.
    pub fn right_mul(&self, c: &QMatrix) -> Self {
        Self::trimmed(self.n, self.var, self.coeffs.iter().map(|m| m * c).collect())
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        self.check_compatible(rhs)?;
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Ok(Self::trimmed(self.n, self.var, (0..len).map(|j| &self.coeff(j) + &rhs.coeff(j)).collect()))
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        self.check_compatible(rhs)?;
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Ok(Self::trimmed(self.n, self.var, (0..len).map(|j| &self.coeff(j) - &rhs.coeff(j)).collect()))
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        self.check_compatible(rhs)?;
        if self.is_zero() || rhs.is_zero() {
            return Ok(Self::zero(self.n, self.var));
        }
        let mut out = vec![QMatrix::zero(self.n); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j].add_assign_ref(&(a * b));
                }
            }
        }
        Ok(Self::trimmed(self.n, self.var, out))
    }

    fn check_compatible(&self, rhs: &Self) -> Result<()> {
        check_dim(self.n, rhs.n)?;
        if self.var != rhs.var {
            return Err(Error::VariableDependence("mixed x and z matrix polynomials".into()));
        }
        Ok(())
    }

    pub fn to_matf(&self) -> MatF {
        let n = self.n;
        MatF::from_fn(n, |i, j| {
            let p = BiPoly::from_terms(self.coeffs.iter().enumerate().map(|(d, c)| {
                let m = match self.var {
                    Var::X => crate::poly::Monomial::new(d as u32, 0),
                    Var::Z => crate::poly::Monomial::new(0, d as u32),
                };
                (m, c.get(i, j).clone())
            }));
            BiFraction::from_poly(p)
        })
    }

    /// Read a polynomial matrix in `var` alone.
    pub fn from_matf(m: &MatF, var: Var) -> Result<Self> {
        let n = m.n();
        let polys = match var {
            Var::X => m.x_polys()?,
            Var::Z => m.z_polys()?,
        };
        let deg = polys
            .iter()
            .map(|p| match var {
                Var::X => p.max_x(),
                Var::Z => p.max_z(),
            })
            .max()
            .unwrap_or(0) as usize;
        let mut coeffs = vec![QMatrix::zero(n); deg + 1];
        for (idx, p) in polys.iter().enumerate() {
            for (mono, c) in p.terms() {
                let d = match var {
                    Var::X => mono.x,
                    Var::Z => mono.z,
                } as usize;
                coeffs[d].set(idx / n, idx % n, c.clone());
            }
        }
        Ok(Self::trimmed(n, var, coeffs))
    }

    /// Coordinates over the basis `e_{ij} var^d`, `0 ≤ d ≤ cap`, ordered by
    /// `(d, i, j)`.
    pub fn to_ambient(&self, cap: usize) -> Result<Vec<Rational>> {
        if !self.is_zero() && self.degree() > cap {
            return Err(Error::DegreeOverflow { degree: self.degree(), cap });
        }
        let nn = self.n * self.n;
        let mut v = vec![Rational::zero(); nn * (cap + 1)];
        for (d, c) in self.coeffs.iter().enumerate() {
            v[d * nn..(d + 1) * nn].clone_from_slice(c.entries());
        }
        Ok(v)
    }

    pub fn from_ambient(n: usize, var: Var, v: &[Rational]) -> Self {
        let nn = n * n;
        let coeffs = v
            .chunks(nn)
            .map(|chunk| {
                QMatrix::from_rows(chunk.chunks(n).map(<[Rational]>::to_vec).collect())
                    .expect("ambient chunk is n x n")
            })
            .collect();
        Self::trimmed(n, var, coeffs)
    }
}

impl Add<&MatPoly> for &MatPoly {
    type Output = MatPoly;
    fn add(self, rhs: &MatPoly) -> MatPoly {
        self.checked_add(rhs).expect("incompatible matrix polynomials")
    }
}

impl Sub<&MatPoly> for &MatPoly {
    type Output = MatPoly;
    fn sub(self, rhs: &MatPoly) -> MatPoly {
        self.checked_sub(rhs).expect("incompatible matrix polynomials")
    }
}

impl Mul<&MatPoly> for &MatPoly {
    type Output = MatPoly;
    fn mul(self, rhs: &MatPoly) -> MatPoly {
        self.checked_mul(rhs).expect("incompatible matrix polynomials")
    }
}

impl Neg for &MatPoly {
    type Output = MatPoly;
    fn neg(self) -> MatPoly {
        MatPoly { n: self.n, var: self.var, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

crate::poly::forward_owned!(MatPoly, Add add, Sub sub, Mul mul);

impl fmt::Display for MatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let v = match self.var {
            Var::X => "x",
            Var::Z => "z",
        };
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(d, c)| match d {
                0 => c.to_string(),
                1 => format!("{c}*{v}"),
                _ => format!("{c}*{v}^{d}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Serialize, Deserialize)]
struct MatPolyRepr {
    n: usize,
    #[serde(default, skip_serializing_if = "is_x")]
    var: Var,
    coeffs: Vec<MatF>,
}

fn is_x(v: &Var) -> bool {
    *v == Var::X
}

impl Serialize for MatPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatPolyRepr { n: self.n, var: self.var, coeffs: self.coeffs.iter().map(MatF::from).collect() }
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MatPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = MatPolyRepr::deserialize(d)?;
        let mut coeffs = Vec::with_capacity(r.coeffs.len());
        for m in r.coeffs {
            check_dim(r.n, m.n()).map_err(D::Error::custom)?;
            let q = MatPoly::from_matf(&m, Var::X).map_err(D::Error::custom)?;
            if q.degree() > 0 {
                return Err(D::Error::custom("coefficients must be constant matrices"));
            }
            coeffs.push(q.coeff(0));
        }
        Ok(MatPoly::trimmed(r.n, r.var, coeffs))
    }
}

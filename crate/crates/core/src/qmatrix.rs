//! Square matrices over the rationals.
//!
//! These carry the constant data: Taylor coefficients of matrix polynomials,
//! nilpotents, and the values of the P-family maps.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{check_dim, Result};
use crate::rational::{format_rational, rat, Rational};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QMatrix {
    n: usize,
    data: Vec<Rational>,
}

impl QMatrix {
    pub fn zero(n: usize) -> Self {
        QMatrix { n, data: vec![Rational::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.data[i * n + i] = Rational::one();
        }
        m
    }

    pub fn scalar(n: usize, c: Rational) -> Self {
        Self::identity(n).scale(&c)
    }

    /// The matrix unit `e_{ij}` with 1-based indices; zero when either index
    /// falls outside `1..=n`.
    pub fn unit(n: usize, i: i64, j: i64) -> Self {
        let mut m = Self::zero(n);
        if (1..=n as i64).contains(&i) && (1..=n as i64).contains(&j) {
            m.data[(i as usize - 1) * n + (j as usize - 1)] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for r in rows {
            check_dim(n, r.len())?;
            data.extend(r);
        }
        Ok(QMatrix { n, data })
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&v| rat(v)).collect()).collect())
            .expect("square integer matrix")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Entry at 0-based `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.n + j] = v;
    }

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    pub fn rows(&self) -> Vec<Vec<Rational>> {
        self.data.chunks(self.n.max(1)).map(<[Rational]>::to_vec).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        QMatrix { n: self.n, data: self.data.iter().map(|v| v * c).collect() }
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        check_dim(self.n, rhs.n)?;
        Ok(QMatrix { n: self.n, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect() })
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        check_dim(self.n, rhs.n)?;
        Ok(QMatrix { n: self.n, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect() })
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        check_dim(self.n, rhs.n)?;
        let n = self.n;
        let mut out = Self::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self.data[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &rhs.data[k * n + j];
                    if !b.is_zero() {
                        out.data[i * n + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// `AB - BA`
    pub fn commutator(&self, rhs: &Self) -> Result<Self> {
        self.checked_mul(rhs)?.checked_sub(&rhs.checked_mul(self)?)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::identity(self.n);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn add_assign_ref(&mut self, rhs: &Self) {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        for (a, b) in self.data.iter_mut().zip(&rhs.data) {
            if !b.is_zero() {
                *a += b;
            }
        }
    }

    pub fn sub_assign_ref(&mut self, rhs: &Self) {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        for (a, b) in self.data.iter_mut().zip(&rhs.data) {
            if !b.is_zero() {
                *a -= b;
            }
        }
    }
}

impl Add<&QMatrix> for &QMatrix {
    type Output = QMatrix;
    fn add(self, rhs: &QMatrix) -> QMatrix {
        self.checked_add(rhs).expect("dimension mismatch")
    }
}

impl Sub<&QMatrix> for &QMatrix {
    type Output = QMatrix;
    fn sub(self, rhs: &QMatrix) -> QMatrix {
        self.checked_sub(rhs).expect("dimension mismatch")
    }
}

impl Mul<&QMatrix> for &QMatrix {
    type Output = QMatrix;
    fn mul(self, rhs: &QMatrix) -> QMatrix {
        self.checked_mul(rhs).expect("dimension mismatch")
    }
}

impl Neg for &QMatrix {
    type Output = QMatrix;
    fn neg(self) -> QMatrix {
        QMatrix { n: self.n, data: self.data.iter().map(|v| -v).collect() }
    }
}

crate::poly::forward_owned!(QMatrix, Add add, Sub sub, Mul mul);

impl fmt::Display for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows()
            .iter()
            .map(|r| r.iter().map(format_rational).collect::<Vec<_>>().join(", "))
            .collect();
        write!(f, "[[{}]]", rows.join("], ["))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_products() {
        let e12 = QMatrix::unit(2, 1, 2);
        let e21 = QMatrix::unit(2, 2, 1);
        assert_eq!(&e12 * &e21, QMatrix::unit(2, 1, 1));
        assert_eq!(e21.commutator(&e12).unwrap(), &QMatrix::unit(2, 2, 2) - &QMatrix::unit(2, 1, 1));
        assert!(QMatrix::unit(2, 0, 1).is_zero());
        assert!(QMatrix::unit(2, 3, 1).is_zero());
    }

    #[test]
    fn dimension_checked() {
        assert!(QMatrix::zero(2).checked_mul(&QMatrix::zero(3)).is_err());
        assert!(QMatrix::from_rows(vec![vec![rat(1)], vec![rat(1), rat(2)]]).is_err());
    }
}

//! Square matrices of bivariate rational functions.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::fraction::BiFraction;
use crate::poly::BiPoly;
use crate::qmatrix::QMatrix;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MatF {
    n: usize,
    data: Vec<BiFraction>,
}

impl MatF {
    pub fn zero(n: usize) -> Self {
        MatF { n, data: vec![BiFraction::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, BiFraction::one())
    }

    pub fn scalar(n: usize, c: BiFraction) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.data[i * n + i] = c.clone();
        }
        m
    }

    /// `e_{ij}` with 1-based indices, zero outside the range.
    pub fn unit(n: usize, i: i64, j: i64) -> Self {
        QMatrix::unit(n, i, j).into()
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> BiFraction) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        MatF { n, data }
    }

    pub fn from_rows(rows: Vec<Vec<BiFraction>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Parse("matrix must be at least 1x1".into()));
        }
        let mut data = Vec::with_capacity(n * n);
        for r in rows {
            check_dim(n, r.len())?;
            data.extend(r);
        }
        Ok(MatF { n, data })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// 0-based entry.
    pub fn get(&self, i: usize, j: usize) -> &BiFraction {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BiFraction) {
        self.data[i * self.n + j] = v;
    }

    pub fn entries(&self) -> &[BiFraction] {
        &self.data
    }

    pub fn rows(&self) -> Vec<Vec<BiFraction>> {
        self.data.chunks(self.n).map(<[BiFraction]>::to_vec).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(BiFraction::is_zero)
    }

    pub fn map(&self, f: impl Fn(&BiFraction) -> BiFraction) -> Self {
        MatF { n: self.n, data: self.data.iter().map(f).collect() }
    }

    pub fn scale(&self, c: &BiFraction) -> Self {
        if c.is_one() {
            return self.clone();
        }
        self.map(|v| v * c)
    }

    pub fn deriv_x(&self) -> Self {
        self.map(BiFraction::deriv_x)
    }

    pub fn deriv_z(&self) -> Self {
        self.map(BiFraction::deriv_z)
    }

    pub fn depends_on_x(&self) -> bool {
        self.data.iter().any(BiFraction::depends_on_x)
    }

    pub fn depends_on_z(&self) -> bool {
        self.data.iter().any(BiFraction::depends_on_z)
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        check_dim(self.n, rhs.n)?;
        Ok(MatF { n: self.n, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect() })
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        check_dim(self.n, rhs.n)?;
        Ok(MatF { n: self.n, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect() })
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        check_dim(self.n, rhs.n)?;
        let n = self.n;
        Ok(MatF::from_fn(n, |i, j| {
            let mut acc = BiFraction::zero();
            for k in 0..n {
                let (a, b) = (&self.data[i * n + k], &rhs.data[k * n + j]);
                if !a.is_zero() && !b.is_zero() {
                    acc = &acc + &(a * b);
                }
            }
            acc
        }))
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

    /// Constant matrix of `x^j` coefficients of an x-polynomial matrix.
    pub fn coeff_x(&self, j: u32) -> Result<QMatrix> {
        let polys = self.x_polys()?;
        let mut out = QMatrix::zero(self.n);
        for (idx, p) in polys.iter().enumerate() {
            out.set(idx / self.n, idx % self.n, p.coeff(j, 0));
        }
        Ok(out)
    }

    /// Entries as polynomials in `x` alone.
    pub(crate) fn x_polys(&self) -> Result<Vec<BiPoly>> {
        self.data
            .iter()
            .map(|f| match f.to_poly() {
                Some(p) if !p.depends_on_z() => Ok(p),
                _ => Err(Error::NotXPolynomial),
            })
            .collect()
    }

    /// Entries as polynomials in `z` alone.
    pub(crate) fn z_polys(&self) -> Result<Vec<BiPoly>> {
        self.data
            .iter()
            .map(|f| match f.to_poly() {
                Some(p) if !p.depends_on_x() => Ok(p),
                _ => Err(Error::NotPolynomial("z")),
            })
            .collect()
    }
}

impl From<QMatrix> for MatF {
    fn from(q: QMatrix) -> Self {
        MatF { n: q.n(), data: q.entries().iter().map(|c| BiFraction::constant(c.clone())).collect() }
    }
}

impl From<&QMatrix> for MatF {
    fn from(q: &QMatrix) -> Self {
        q.clone().into()
    }
}

impl Add<&MatF> for &MatF {
    type Output = MatF;
    fn add(self, rhs: &MatF) -> MatF {
        self.checked_add(rhs).expect("dimension mismatch")
    }
}

impl Sub<&MatF> for &MatF {
    type Output = MatF;
    fn sub(self, rhs: &MatF) -> MatF {
        self.checked_sub(rhs).expect("dimension mismatch")
    }
}

impl Mul<&MatF> for &MatF {
    type Output = MatF;
    fn mul(self, rhs: &MatF) -> MatF {
        self.checked_mul(rhs).expect("dimension mismatch")
    }
}

impl Neg for &MatF {
    type Output = MatF;
    fn neg(self) -> MatF {
        self.map(|v| -v)
    }
}

crate::poly::forward_owned!(MatF, Add add, Sub sub, Mul mul);

impl fmt::Display for MatF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows()
            .iter()
            .map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "))
            .collect();
        write!(f, "[[{}]]", rows.join("], ["))
    }
}

#[derive(Serialize, Deserialize)]
struct MatFRepr {
    n: usize,
    rows: Vec<Vec<BiFraction>>,
}

impl Serialize for MatF {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatFRepr { n: self.n, rows: self.rows() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for MatF {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = MatFRepr::deserialize(d)?;
        let m = MatF::from_rows(r.rows).map_err(serde::de::Error::custom)?;
        if m.n != r.n {
            return Err(serde::de::Error::custom(Error::DimensionMismatch { expected: r.n, found: m.n }));
        }
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn theta() -> MatF {
        // I x + e21 x^2
        &MatF::scalar(2, BiFraction::x()) + &MatF::unit(2, 2, 1).scale(&BiFraction::x().pow(2))
    }

    #[test]
    fn coefficient_reads() {
        assert_eq!(theta().coeff_x(2).unwrap(), QMatrix::unit(2, 2, 1));
        assert!(theta().coeff_x(5).unwrap().is_zero());
        let c = MatF::from(QMatrix::from_ints(&[&[1, 2], &[3, 4]]));
        assert_eq!(c.coeff_x(0).unwrap(), QMatrix::from_ints(&[&[1, 2], &[3, 4]]));
        let bad = MatF::scalar(2, BiFraction::z());
        assert_eq!(bad.coeff_x(0).unwrap_err(), Error::NotXPolynomial);
        let frac = MatF::scalar(2, BiFraction::x().inv().unwrap());
        assert_eq!(frac.coeff_x(0).unwrap_err(), Error::NotXPolynomial);
    }

    #[test]
    fn ring_operations() {
        let e12 = MatF::unit(2, 1, 2);
        let e21 = MatF::unit(2, 2, 1);
        assert_eq!(&e12 * &e21, MatF::unit(2, 1, 1));
        assert_eq!(e21.commutator(&e12).unwrap(), &MatF::unit(2, 2, 2) - &MatF::unit(2, 1, 1));
        assert!(MatF::identity(2).commutator(&theta()).unwrap().is_zero());
        assert!(theta().commutator(&theta()).unwrap().is_zero());
        assert!(MatF::zero(2).checked_add(&MatF::zero(3)).is_err());
        assert_eq!(e12.pow(2), MatF::zero(2));
        assert_eq!(MatF::scalar(2, BiFraction::int(2)).pow(3), MatF::scalar(2, BiFraction::constant(rat(8))));
    }

    #[test]
    fn json_round_trip() {
        let m = theta();
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(serde_json::from_str::<MatF>(&s).unwrap(), m);
        assert!(serde_json::from_str::<MatF>(r#"{"n":3,"rows":[[{"num":{"terms":[]},"den":{"terms":[{"c":"1","x":0,"z":0}]}}]]}"#).is_err());
    }
}

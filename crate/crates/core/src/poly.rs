//! Sparse bivariate polynomials in `x` and `z` over the rationals.
//!
//! Terms live in a `BTreeMap` keyed by [`Monomial`], whose ordering is graded
//! lexicographic with `x > z`. No zero coefficient is ever stored, so map
//! equality is polynomial equality and the last entry is the leading term.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{format_rational, parse_rational, Rational};

/// The exponent pair of `x^x z^z`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial {
    pub x: u32,
    pub z: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { x: 0, z: 0 };

    pub fn new(x: u32, z: u32) -> Self {
        Monomial { x, z }
    }

    pub fn degree(&self) -> u32 {
        self.x + self.z
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.x <= other.x && self.z <= other.z
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then(self.x.cmp(&other.x))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Mul for Monomial {
    type Output = Monomial;
    fn mul(self, rhs: Monomial) -> Monomial {
        Monomial::new(self.x + rhs.x, self.z + rhs.z)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct BiPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(c, 0, 0)
    }

    pub fn x() -> Self {
        Self::term(Rational::one(), 1, 0)
    }

    pub fn z() -> Self {
        Self::term(Rational::one(), 0, 1)
    }

    /// `c x^i z^j`
    pub fn term(c: Rational, i: u32, j: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::new(i, j), c);
        }
        BiPoly { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(iter: I) -> Self {
        let mut p = BiPoly::zero();
        for (m, c) in iter {
            p.add_term(m, c);
        }
        p
    }

    /// Univariate polynomial in `x` from coefficients, lowest degree first.
    pub fn from_x_coeffs(coeffs: &[Rational]) -> Self {
        Self::from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (Monomial::new(i as u32, 0), c.clone())),
        )
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| *m == Monomial::ONE)
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.coeff(0, 0).is_one()
    }

    pub fn coeff(&self, i: u32, j: u32) -> Rational {
        self.terms
            .get(&Monomial::new(i, j))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn max_x(&self) -> u32 {
        self.terms.keys().map(|m| m.x).max().unwrap_or(0)
    }

    pub fn max_z(&self) -> u32 {
        self.terms.keys().map(|m| m.z).max().unwrap_or(0)
    }

    /// Largest monomial dividing every term; `ONE` for the zero polynomial.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        match it.next() {
            None => Monomial::ONE,
            Some(first) => it.fold(*first, |acc, m| Monomial::new(acc.x.min(m.x), acc.z.min(m.z))),
        }
    }

    pub fn depends_on_x(&self) -> bool {
        self.terms.keys().any(|m| m.x > 0)
    }

    pub fn depends_on_z(&self) -> bool {
        self.terms.keys().any(|m| m.z > 0)
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> BiPoly {
        if c.is_zero() {
            return BiPoly::zero();
        }
        BiPoly {
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    /// Multiply by `x^i z^j`.
    pub fn shift(&self, by: Monomial) -> BiPoly {
        BiPoly {
            terms: self.terms.iter().map(|(m, v)| (*m * by, v.clone())).collect(),
        }
    }

    /// Divide by a monomial that divides every term.
    fn unshift(&self, by: Monomial) -> BiPoly {
        BiPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (Monomial::new(m.x - by.x, m.z - by.z), v.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> BiPoly {
        let mut acc = BiPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn deriv_x(&self) -> BiPoly {
        BiPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.x > 0)
                .map(|(m, v)| (Monomial::new(m.x - 1, m.z), v * Rational::from_integer(m.x.into())))
                .collect(),
        }
    }

    pub fn deriv_z(&self) -> BiPoly {
        BiPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.z > 0)
                .map(|(m, v)| (Monomial::new(m.x, m.z - 1), v * Rational::from_integer(m.z.into())))
                .collect(),
        }
    }

    /// Evaluate at `x = 0`, leaving a polynomial in `z`.
    pub fn at_x_zero(&self) -> BiPoly {
        BiPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.x == 0)
                .map(|(m, v)| (*m, v.clone()))
                .collect(),
        }
    }

    /// Exact division; `None` when `divisor` does not divide `self`.
    pub fn exact_div(&self, divisor: &BiPoly) -> Option<BiPoly> {
        let (lm, lc) = divisor.leading()?;
        let (lm, lc) = (*lm, lc.clone());
        let mut rem = self.clone();
        let mut quot = BiPoly::zero();
        while let Some((m, c)) = rem.leading() {
            if !lm.divides(m) {
                return None;
            }
            let qm = Monomial::new(m.x - lm.x, m.z - lm.z);
            let qc = c / &lc;
            rem = &rem - &divisor.shift(qm).scale(&qc);
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Coefficients of `x^i` as polynomials in `z`, keyed by `i`.
    fn slices(&self, along_x: bool) -> BTreeMap<u32, UniPoly> {
        let mut out: BTreeMap<u32, Vec<Rational>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (key, pos) = if along_x { (m.z, m.x) } else { (m.x, m.z) };
            let v = out.entry(key).or_default();
            if v.len() <= pos as usize {
                v.resize(pos as usize + 1, Rational::zero());
            }
            v[pos as usize] = c.clone();
        }
        out.into_iter().map(|(k, v)| (k, UniPoly::new(v))).collect()
    }

    /// Least common multiple of coefficient denominators and gcd of numerators.
    fn integer_content(&self) -> (BigInt, BigInt) {
        let mut lcm = BigInt::one();
        let mut gcd = BigInt::zero();
        for c in self.terms.values() {
            lcm = lcm.lcm(c.denom());
            gcd = gcd.gcd(c.numer());
        }
        (lcm, gcd)
    }
}

impl Add<&BiPoly> for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub<&BiPoly> for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

impl Mul<&BiPoly> for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(*ma * *mb, ca * cb);
            }
        }
        out
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($ty:ty, $($tr:ident $f:ident),*) => {$(
        impl $tr<$ty> for $ty {
            type Output = $ty;
            fn $f(self, rhs: $ty) -> $ty { (&self).$f(&rhs) }
        }
    )*};
}
pub(crate) use forward_owned;

forward_owned!(BiPoly, Add add, Sub sub, Mul mul);

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}", format_rational(c))?;
            match m.x {
                0 => {}
                1 => write!(f, "*x")?,
                e => write!(f, "*x^{e}")?,
            }
            match m.z {
                0 => {}
                1 => write!(f, "*z")?,
                e => write!(f, "*z^{e}")?,
            }
        }
        Ok(())
    }
}

/// Dense univariate polynomial, lowest degree first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Debug)]
pub(crate) struct UniPoly(Vec<Rational>);

impl UniPoly {
    fn new(mut c: Vec<Rational>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        UniPoly(c)
    }

    fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    fn monic(mut self) -> Self {
        if let Some(lc) = self.0.last().cloned() {
            for c in &mut self.0 {
                *c = &*c / &lc;
            }
        }
        self
    }

    /// Remainder and quotient of division by a nonzero divisor.
    fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lc = d.0[dd].clone();
        let mut rem = self.0.clone();
        let mut quot = vec![Rational::zero(); rem.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let top = rem.len() - 1;
            let q = &rem[top] / &lc;
            let shift = top - dd;
            for (i, c) in d.0.iter().enumerate() {
                rem[shift + i] -= &q * c;
            }
            quot[shift] = q;
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        (UniPoly::new(quot), UniPoly::new(rem))
    }

    fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while b.degree().is_some() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }
}

/// Cancel the greatest common divisor of `num` and `den` when `den` is, up to
/// a monomial factor, univariate. Returns the reduced pair.
pub(crate) fn cancel_univariate(num: &BiPoly, den: &BiPoly) -> Option<(BiPoly, BiPoly)> {
    let dm = den.monomial_content();
    let core = den.unshift(dm);
    let along_x = if !core.depends_on_z() && core.depends_on_x() {
        true
    } else if !core.depends_on_x() && core.depends_on_z() {
        false
    } else {
        return None;
    };
    let core_uni = core.slices(along_x).remove(&0)?;
    let mut g = core_uni.clone();
    for slice in num.slices(along_x).values() {
        g = g.gcd(slice);
        if g.degree() == Some(0) {
            return None;
        }
    }
    if g.degree().unwrap_or(0) == 0 {
        return None;
    }
    let divide = |p: &BiPoly| -> BiPoly {
        let mut out = BiPoly::zero();
        for (key, slice) in p.slices(along_x) {
            let (q, r) = slice.div_rem(&g);
            debug_assert!(r.degree().is_none());
            for (pos, c) in q.0.into_iter().enumerate() {
                let m = if along_x {
                    Monomial::new(pos as u32, key)
                } else {
                    Monomial::new(key, pos as u32)
                };
                out.add_term(m, c);
            }
        }
        out
    };
    Some((divide(num), divide(den)))
}

/// Strip common monomial and integer content; make the leading coefficient of
/// `den` positive. A constant `den` is scaled to one.
pub(crate) fn normalize_pair(num: BiPoly, den: BiPoly) -> (BiPoly, BiPoly) {
    if num.is_zero() {
        return (BiPoly::zero(), BiPoly::one());
    }
    let (mn, md) = (num.monomial_content(), den.monomial_content());
    let common = Monomial::new(mn.x.min(md.x), mn.z.min(md.z));
    let (mut num, mut den) = if common == Monomial::ONE {
        (num, den)
    } else {
        (num.unshift(common), den.unshift(common))
    };
    if den.is_constant() {
        let c = den.coeff(0, 0);
        return (num.scale(&(Rational::one() / c)), BiPoly::one());
    }
    if let Some(q) = num.exact_div(&den) {
        return (q, BiPoly::one());
    }
    if let Some((n2, d2)) = cancel_univariate(&num, &den) {
        num = n2;
        den = d2;
        if den.is_constant() {
            let c = den.coeff(0, 0);
            return (num.scale(&(Rational::one() / c)), BiPoly::one());
        }
    }
    let (ln, gn) = num.integer_content();
    let (ld, gd) = den.integer_content();
    let lcm = ln.lcm(&ld);
    // After multiplying through by lcm, the integer gcd of all coefficients.
    let g = (gn * &lcm / ln).gcd(&(gd * &lcm / ld));
    let mut factor = Rational::new(lcm, g);
    if den.leading().is_some_and(|(_, c)| crate::rational::is_negative(c)) {
        factor = -factor;
    }
    (num.scale(&factor), den.scale(&factor))
}

#[derive(Serialize, Deserialize)]
pub(crate) struct TermRepr {
    c: String,
    x: u32,
    z: u32,
}

#[derive(Serialize, Deserialize)]
pub(crate) struct BiPolyRepr {
    terms: Vec<TermRepr>,
}

impl From<&BiPoly> for BiPolyRepr {
    fn from(p: &BiPoly) -> Self {
        BiPolyRepr {
            terms: p
                .terms
                .iter()
                .rev()
                .map(|(m, c)| TermRepr { c: format_rational(c), x: m.x, z: m.z })
                .collect(),
        }
    }
}

impl TryFrom<BiPolyRepr> for BiPoly {
    type Error = Error;
    fn try_from(r: BiPolyRepr) -> Result<Self> {
        let mut p = BiPoly::zero();
        for t in r.terms {
            p.add_term(Monomial::new(t.x, t.z), parse_rational(&t.c)?);
        }
        Ok(p)
    }
}

impl Serialize for BiPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        BiPolyRepr::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for BiPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        BiPolyRepr::deserialize(d)?
            .try_into()
            .map_err(serde::de::Error::custom)
    }
}

//! Bivariate rational functions `num / den`.
//!
//! Normalization is partial: common monomials and integer content are
//! stripped, exact polynomial division and univariate gcds are cancelled when
//! cheap, and the denominator's leading coefficient is made positive. Two
//! fractions are equal exactly when their cross products agree, which is what
//! `PartialEq` checks.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{forward_owned, normalize_pair, BiPoly, BiPolyRepr, Monomial};
use crate::rational::{parse_rational, rat, Rational};

#[derive(Clone, Debug)]
pub struct BiFraction {
    num: BiPoly,
    den: BiPoly,
}

impl BiFraction {
    pub fn new(num: BiPoly, den: BiPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: BiPoly, den: BiPoly) -> Self {
        let (num, den) = normalize_pair(num, den);
        BiFraction { num, den }
    }

    pub fn zero() -> Self {
        Self::from_poly(BiPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(BiPoly::one())
    }

    pub fn from_poly(p: BiPoly) -> Self {
        BiFraction { num: p, den: BiPoly::one() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(BiPoly::constant(c))
    }

    pub fn int(c: i64) -> Self {
        Self::constant(rat(c))
    }

    pub fn x() -> Self {
        Self::from_poly(BiPoly::x())
    }

    pub fn z() -> Self {
        Self::from_poly(BiPoly::z())
    }

    /// `c x^i z^j` with possibly negative exponents.
    pub fn monomial(c: Rational, i: i32, j: i32) -> Self {
        let num = BiPoly::term(c, i.max(0) as u32, j.max(0) as u32);
        let den = BiPoly::term(Rational::one(), (-i).max(0) as u32, (-j).max(0) as u32);
        Self::normalized(num, den)
    }

    pub fn num(&self) -> &BiPoly {
        &self.num
    }

    pub fn den(&self) -> &BiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    /// The polynomial this fraction equals, if any.
    pub fn to_poly(&self) -> Option<BiPoly> {
        if self.den.is_one() {
            Some(self.num.clone())
        } else {
            self.num.exact_div(&self.den)
        }
    }

    pub fn to_constant(&self) -> Option<Rational> {
        let p = self.to_poly()?;
        p.is_constant().then(|| p.coeff(0, 0))
    }

    pub fn inv(&self) -> Option<BiFraction> {
        if self.is_zero() {
            None
        } else {
            Some(Self::normalized(self.den.clone(), self.num.clone()))
        }
    }

    pub fn pow(&self, e: i32) -> BiFraction {
        let base = if e < 0 {
            self.inv().expect("negative power of zero")
        } else {
            self.clone()
        };
        Self::normalized(base.num.pow(e.unsigned_abs()), base.den.pow(e.unsigned_abs()))
    }

    pub fn scale(&self, c: &Rational) -> BiFraction {
        Self::normalized(self.num.scale(c), self.den.clone())
    }

    pub fn deriv_x(&self) -> BiFraction {
        self.quotient_rule(BiPoly::deriv_x)
    }

    pub fn deriv_z(&self) -> BiFraction {
        self.quotient_rule(BiPoly::deriv_z)
    }

    fn quotient_rule(&self, d: fn(&BiPoly) -> BiPoly) -> BiFraction {
        if self.den.is_constant() {
            return Self::normalized(d(&self.num), self.den.clone());
        }
        let num = &(&d(&self.num) * &self.den) - &(&self.num * &d(&self.den));
        Self::normalized(num, &self.den * &self.den)
    }

    pub fn depends_on_x(&self) -> bool {
        !self.deriv_x().is_zero()
    }

    pub fn depends_on_z(&self) -> bool {
        !self.deriv_z().is_zero()
    }

    fn combine(&self, rhs: &BiFraction, sub: bool) -> BiFraction {
        let op = |a: &BiPoly, b: &BiPoly| if sub { a - b } else { a + b };
        if self.den == rhs.den {
            return Self::normalized(op(&self.num, &rhs.num), self.den.clone());
        }
        if rhs.den.is_one() {
            return Self::normalized(op(&self.num, &(&rhs.num * &self.den)), self.den.clone());
        }
        if self.den.is_one() {
            return Self::normalized(op(&(&self.num * &rhs.den), &rhs.num), rhs.den.clone());
        }
        if let Some(q) = self.den.exact_div(&rhs.den) {
            return Self::normalized(op(&self.num, &(&rhs.num * &q)), self.den.clone());
        }
        if let Some(q) = rhs.den.exact_div(&self.den) {
            return Self::normalized(op(&(&self.num * &q), &rhs.num), rhs.den.clone());
        }
        // Share the common monomial part of the denominators.
        let (ma, mb) = (self.den.monomial_content(), rhs.den.monomial_content());
        let g = Monomial::new(ma.x.min(mb.x), ma.z.min(mb.z));
        let ca = self.den.exact_div(&BiPoly::term(Rational::one(), g.x, g.z)).expect("monomial divides");
        let cb = rhs.den.exact_div(&BiPoly::term(Rational::one(), g.x, g.z)).expect("monomial divides");
        let num = op(&(&self.num * &cb), &(&rhs.num * &ca));
        Self::normalized(num, &self.den * &cb)
    }
}

/// Cross-multiplication equality.
pub fn frac_eq(a: &BiFraction, b: &BiFraction) -> bool {
    if a.den == b.den {
        return a.num == b.num;
    }
    &a.num * &b.den == &b.num * &a.den
}

impl PartialEq for BiFraction {
    fn eq(&self, other: &Self) -> bool {
        frac_eq(self, other)
    }
}

impl Eq for BiFraction {}

impl From<BiPoly> for BiFraction {
    fn from(p: BiPoly) -> Self {
        Self::from_poly(p)
    }
}

impl From<Rational> for BiFraction {
    fn from(c: Rational) -> Self {
        Self::constant(c)
    }
}

impl Add<&BiFraction> for &BiFraction {
    type Output = BiFraction;
    fn add(self, rhs: &BiFraction) -> BiFraction {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        self.combine(rhs, false)
    }
}

impl Sub<&BiFraction> for &BiFraction {
    type Output = BiFraction;
    fn sub(self, rhs: &BiFraction) -> BiFraction {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return -rhs;
        }
        self.combine(rhs, true)
    }
}

impl Mul<&BiFraction> for &BiFraction {
    type Output = BiFraction;
    fn mul(self, rhs: &BiFraction) -> BiFraction {
        if self.is_zero() || rhs.is_zero() {
            return BiFraction::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return BiFraction::from_poly(&self.num * &rhs.num);
        }
        BiFraction::normalized(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div<&BiFraction> for &BiFraction {
    type Output = BiFraction;
    /// Panics on division by zero.
    fn div(self, rhs: &BiFraction) -> BiFraction {
        self * &rhs.inv().expect("division by zero fraction")
    }
}

impl Neg for &BiFraction {
    type Output = BiFraction;
    fn neg(self) -> BiFraction {
        BiFraction { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for BiFraction {
    type Output = BiFraction;
    fn neg(self) -> BiFraction {
        -&self
    }
}

forward_owned!(BiFraction, Add add, Sub sub, Mul mul, Div div);

impl Zero for BiFraction {
    fn zero() -> Self {
        BiFraction::zero()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for BiFraction {
    fn one() -> Self {
        BiFraction::one()
    }
}

impl fmt::Display for BiFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[derive(Serialize)]
struct BiFractionRepr {
    num: BiPolyRepr,
    den: BiPolyRepr,
}

impl Serialize for BiFraction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        BiFractionRepr { num: (&self.num).into(), den: (&self.den).into() }.serialize(s)
    }
}

/// Accepted input forms: the canonical object (with `den` optional), an
/// integer, or a rational string such as `"-3/2"`.
#[derive(Deserialize)]
#[serde(untagged)]
enum BiFractionInput {
    Full { num: BiPolyRepr, den: Option<BiPolyRepr> },
    Int(i64),
    Text(String),
}

impl<'de> Deserialize<'de> for BiFraction {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        match BiFractionInput::deserialize(d)? {
            BiFractionInput::Full { num, den } => {
                let num = BiPoly::try_from(num).map_err(D::Error::custom)?;
                let den = match den {
                    Some(den) => BiPoly::try_from(den).map_err(D::Error::custom)?,
                    None => BiPoly::one(),
                };
                BiFraction::new(num, den).map_err(D::Error::custom)
            }
            BiFractionInput::Int(c) => Ok(BiFraction::int(c)),
            BiFractionInput::Text(t) => Ok(BiFraction::constant(parse_rational(&t).map_err(D::Error::custom)?)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xm(c: i64) -> BiFraction {
        &BiFraction::x() - &BiFraction::int(c)
    }

    #[test]
    fn cross_multiplication_equality() {
        let lhs = (&(&BiFraction::x() * &BiFraction::x()) - &BiFraction::int(4)) / xm(2);
        assert_eq!(lhs, &BiFraction::x() + &BiFraction::int(2));
        assert!(lhs.den().is_one());
        let zero_over = BiFraction::new(BiPoly::zero(), xm(2).num().clone()).unwrap();
        assert_eq!(zero_over, BiFraction::zero());
        assert_ne!(BiFraction::x().inv().unwrap(), BiFraction::z().inv().unwrap());
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(BiFraction::new(BiPoly::one(), BiPoly::zero()).unwrap_err(), Error::ZeroDenominator);
    }

    #[test]
    fn normalization_strips_monomials_and_content() {
        let f = BiFraction::new(
            BiPoly::term(rat(6), 3, 1),
            BiPoly::term(rat(-4), 1, 2),
        )
        .unwrap();
        assert_eq!(f.num(), &BiPoly::term(rat(-3), 2, 0));
        assert_eq!(f.den(), &BiPoly::term(rat(2), 0, 1));
    }

    #[test]
    fn quotient_rule() {
        // d/dx 1/(x-2) = -1/(x-2)^2
        let f = xm(2).inv().unwrap();
        assert_eq!(f.deriv_x(), -(&f * &f));
        assert!(!f.depends_on_z());
        assert_eq!(BiFraction::monomial(rat(1), -2, 1).deriv_x(), BiFraction::monomial(rat(-2), -3, 1));
    }

    #[test]
    fn json_round_trip() {
        let f = &BiFraction::z() / &xm(2);
        let s = serde_json::to_string(&f).unwrap();
        let back: BiFraction = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
        assert!(serde_json::from_str::<BiFraction>(r#"{"num":{"terms":[]},"den":{"terms":[]}}"#).is_err());
    }

    #[test]
    fn json_shorthand_inputs() {
        let parse = |s: &str| serde_json::from_str::<BiFraction>(s);
        assert_eq!(parse("-3").unwrap(), BiFraction::int(-3));
        assert_eq!(parse(r#""3/2""#).unwrap(), BiFraction::constant(crate::rational::ratio(3, 2)));
        assert_eq!(parse(r#"{"num":{"terms":[{"c":"1","x":1,"z":0}]}}"#).unwrap(), BiFraction::x());
        assert!(parse(r#""x""#).is_err());
    }
}

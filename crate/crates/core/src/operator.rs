//! Matrix differential operators and their action on `e^{xz} M(x, z)`.
//!
//! Operators in `x` act from the left, `Lψ = Σ a_i(x) ∂_x^i ψ`; operators in
//! `z` act from the right, `ψB = Σ ∂_z^j ψ · b_j(z)`. The exponential is never
//! stored: on the matrix part `∂_x` acts as `M ↦ zM + ∂_x M` and `∂_z` as
//! `M ↦ xM + ∂_z M`.
//!
//! Right operators compose so that `ψ(B1 ∘ B2) = (ψB1)B2`.

use std::fmt;
use std::marker::PhantomData;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::fraction::BiFraction;
use crate::matpoly::Var;
use crate::matrix::MatF;
use crate::rational::binomial;

pub trait Side: Clone + fmt::Debug + PartialEq + Eq + Send + Sync + 'static {
    const VAR: Var;
    fn other_dependence(m: &MatF) -> bool;
    fn deriv(m: &MatF) -> MatF;
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XSide;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZSide;

impl Side for XSide {
    const VAR: Var = Var::X;
    fn other_dependence(m: &MatF) -> bool {
        m.depends_on_z()
    }
    fn deriv(m: &MatF) -> MatF {
        m.deriv_x()
    }
}

impl Side for ZSide {
    const VAR: Var = Var::Z;
    fn other_dependence(m: &MatF) -> bool {
        m.depends_on_x()
    }
    fn deriv(m: &MatF) -> MatF {
        m.deriv_z()
    }
}

/// `Σ coeffs[i] ∂^i`, trailing zero coefficients trimmed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Operator<S: Side> {
    n: usize,
    coeffs: Vec<MatF>,
    side: PhantomData<S>,
}

pub type OperatorX = Operator<XSide>;
pub type OperatorZ = Operator<ZSide>;

impl<S: Side> Operator<S> {
    /// Coefficients indexed by order. Each must be free of the other variable.
    pub fn new(n: usize, coeffs: Vec<MatF>) -> Result<Self> {
        for c in &coeffs {
            check_dim(n, c.n())?;
            if S::other_dependence(c) {
                return Err(Error::VariableDependence(format!(
                    "{} operator coefficient depends on {}",
                    var_name(S::VAR),
                    var_name(other(S::VAR))
                )));
            }
        }
        Ok(Self::trimmed(n, coeffs))
    }

    fn trimmed(n: usize, mut coeffs: Vec<MatF>) -> Self {
        while coeffs.last().is_some_and(MatF::is_zero) {
            coeffs.pop();
        }
        Operator { n, coeffs, side: PhantomData }
    }

    pub fn from_terms(n: usize, terms: Vec<(usize, MatF)>) -> Result<Self> {
        let len = terms.iter().map(|(o, _)| o + 1).max().unwrap_or(0);
        let mut coeffs = vec![MatF::zero(n); len];
        for (o, c) in terms {
            check_dim(n, c.n())?;
            coeffs[o] = &coeffs[o] + &c;
        }
        Self::new(n, coeffs)
    }

    pub fn zero(n: usize) -> Self {
        Self::trimmed(n, Vec::new())
    }

    /// Order-0 operator; multiplication by `c`.
    pub fn multiplication(c: MatF) -> Result<Self> {
        let n = c.n();
        Self::new(n, vec![c])
    }

    pub fn identity(n: usize) -> Self {
        Self::trimmed(n, vec![MatF::identity(n)])
    }

    /// The bare derivation `I ∂`.
    pub fn derivation(n: usize) -> Self {
        Self::trimmed(n, vec![MatF::zero(n), MatF::identity(n)])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[MatF] {
        &self.coeffs
    }

    /// Coefficient of `∂^i`; zero beyond the order.
    pub fn coeff(&self, i: usize) -> MatF {
        self.coeffs.get(i).cloned().unwrap_or_else(|| MatF::zero(self.n))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Highest order with a nonzero coefficient; `None` for the zero operator.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        check_dim(self.n, rhs.n)?;
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Ok(Self::trimmed(self.n, (0..len).map(|i| &self.coeff(i) + &rhs.coeff(i)).collect()))
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        check_dim(self.n, rhs.n)?;
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Ok(Self::trimmed(self.n, (0..len).map(|i| &self.coeff(i) - &rhs.coeff(i)).collect()))
    }

    /// `Σ_{i,j,k} C(i,k) a_i b_j^{(k)} ∂^{i-k+j}`
    fn leibniz(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero(self.n);
        }
        let mut out = vec![MatF::zero(self.n); self.coeffs.len() + rhs.coeffs.len() - 1];
        // Derivatives of rhs coefficients, computed once per needed depth.
        let mut derivs: Vec<Vec<MatF>> = vec![rhs.coeffs.clone()];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            while derivs.len() <= i {
                let next = derivs.last().unwrap().iter().map(S::deriv).collect();
                derivs.push(next);
            }
            for k in 0..=i {
                let c = BiFraction::constant(binomial(i, k));
                for (j, bd) in derivs[k].iter().enumerate() {
                    if bd.is_zero() {
                        continue;
                    }
                    let o = i - k + j;
                    out[o] = &out[o] + &(a * bd).scale(&c);
                }
            }
        }
        Self::trimmed(self.n, out)
    }
}

impl OperatorX {
    /// `L1 ∘ L2`, so that applying it equals applying `L2` then `L1`.
    pub fn compose(&self, rhs: &Self) -> Result<Self> {
        check_dim(self.n, rhs.n)?;
        Ok(self.leibniz(rhs))
    }
}

impl OperatorZ {
    /// `B1 ∘ B2` with `ψ(B1 ∘ B2) = (ψB1)B2`.
    ///
    /// The `∂^n` coefficient is `Σ_{j+k-i=n} C(k,i) b_j^{(i)} c_k`.
    pub fn compose(&self, rhs: &Self) -> Result<Self> {
        check_dim(self.n, rhs.n)?;
        if self.is_zero() || rhs.is_zero() {
            return Ok(Self::zero(self.n));
        }
        let mut out = vec![MatF::zero(self.n); self.coeffs.len() + rhs.coeffs.len() - 1];
        let mut derivs: Vec<Vec<MatF>> = vec![self.coeffs.clone()];
        for (k, c) in rhs.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            while derivs.len() <= k {
                let next = derivs.last().unwrap().iter().map(MatF::deriv_z).collect();
                derivs.push(next);
            }
            for i in 0..=k {
                let w = BiFraction::constant(binomial(k, i));
                for (j, bd) in derivs[i].iter().enumerate() {
                    if bd.is_zero() {
                        continue;
                    }
                    let o = j + k - i;
                    out[o] = &out[o] + &(bd * c).scale(&w);
                }
            }
        }
        Ok(Self::trimmed(self.n, out))
    }
}

fn var_name(v: Var) -> &'static str {
    match v {
        Var::X => "x",
        Var::Z => "z",
    }
}

fn other(v: Var) -> Var {
    match v {
        Var::X => Var::Z,
        Var::Z => Var::X,
    }
}

impl<S: Side> Add<&Operator<S>> for &Operator<S> {
    type Output = Operator<S>;
    fn add(self, rhs: &Operator<S>) -> Operator<S> {
        self.checked_add(rhs).expect("dimension mismatch")
    }
}

impl<S: Side> Sub<&Operator<S>> for &Operator<S> {
    type Output = Operator<S>;
    fn sub(self, rhs: &Operator<S>) -> Operator<S> {
        self.checked_sub(rhs).expect("dimension mismatch")
    }
}

impl<S: Side> Neg for &Operator<S> {
    type Output = Operator<S>;
    fn neg(self) -> Operator<S> {
        Operator::trimmed(self.n, self.coeffs.iter().map(|c| -c).collect())
    }
}

impl<S: Side> fmt::Display for Operator<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let d = format!("d{}", var_name(S::VAR));
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => c.to_string(),
                1 => format!("{c}*{d}"),
                _ => format!("{c}*{d}^{i}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    order: usize,
    coeff: MatF,
}

#[derive(Serialize, Deserialize)]
struct OperatorRepr {
    var: Var,
    terms: Vec<TermRepr>,
}

impl<S: Side> Serialize for Operator<S> {
    fn serialize<Ser: serde::Serializer>(&self, s: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
        OperatorRepr {
            var: S::VAR,
            terms: self
                .coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(order, c)| TermRepr { order, coeff: c.clone() })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de, S: Side> Deserialize<'de> for Operator<S> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = OperatorRepr::deserialize(d)?;
        if r.var != S::VAR {
            return Err(D::Error::custom(format!("expected an operator in {}", var_name(S::VAR))));
        }
        let Some(n) = r.terms.first().map(|t| t.coeff.n()) else {
            return Err(D::Error::custom("operator needs at least one term to fix its size"));
        };
        Operator::from_terms(n, r.terms.into_iter().map(|t| (t.order, t.coeff)).collect())
            .map_err(D::Error::custom)
    }
}

/// `ψ(x, z) = e^{xz} M(x, z)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WaveFunction {
    matrix: MatF,
}

impl WaveFunction {
    pub fn new(matrix: MatF) -> Result<Self> {
        if matrix.is_zero() {
            return Err(Error::ZeroWaveFunction);
        }
        Ok(WaveFunction { matrix })
    }

    pub fn n(&self) -> usize {
        self.matrix.n()
    }

    pub fn matrix(&self) -> &MatF {
        &self.matrix
    }
}

#[derive(Serialize, Deserialize)]
struct WaveRepr {
    n: usize,
    prefactor: String,
    matrix: MatF,
}

const PREFACTOR: &str = "exp(x*z)";

impl Serialize for WaveFunction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        WaveRepr { n: self.n(), prefactor: PREFACTOR.into(), matrix: self.matrix.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for WaveFunction {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = WaveRepr::deserialize(d)?;
        if r.prefactor != PREFACTOR {
            return Err(D::Error::custom(format!("unsupported prefactor {:?}", r.prefactor)));
        }
        check_dim(r.n, r.matrix.n()).map_err(D::Error::custom)?;
        WaveFunction::new(r.matrix).map_err(D::Error::custom)
    }
}

/// `M ↦ zM + ∂_x M`
fn dx_wave(m: &MatF) -> MatF {
    &m.scale(&BiFraction::z()) + &m.deriv_x()
}

/// `M ↦ xM + ∂_z M`
fn dz_wave(m: &MatF) -> MatF {
    &m.scale(&BiFraction::x()) + &m.deriv_z()
}

/// Matrix part of `Lψ`. May vanish.
pub fn apply_x_matrix(l: &OperatorX, psi: &MatF) -> Result<MatF> {
    check_dim(l.n, psi.n())?;
    let mut out = MatF::zero(psi.n());
    let mut cur = psi.clone();
    for (i, a) in l.coeffs.iter().enumerate() {
        if i > 0 {
            cur = dx_wave(&cur);
        }
        if !a.is_zero() {
            out = &out + &(a * &cur);
        }
    }
    Ok(out)
}

/// Matrix part of `ψB`. May vanish.
pub fn apply_z_matrix(psi: &MatF, b: &OperatorZ) -> Result<MatF> {
    check_dim(b.n, psi.n())?;
    let mut out = MatF::zero(psi.n());
    let mut cur = psi.clone();
    for (j, c) in b.coeffs.iter().enumerate() {
        if j > 0 {
            cur = dz_wave(&cur);
        }
        if !c.is_zero() {
            out = &out + &(&cur * c);
        }
    }
    Ok(out)
}

/// `Lψ`. Fails if the result vanishes, since a wave function is nonzero.
pub fn apply_x(l: &OperatorX, psi: &WaveFunction) -> Result<WaveFunction> {
    WaveFunction::new(apply_x_matrix(l, &psi.matrix)?)
}

/// `ψB`. Fails if the result vanishes.
pub fn apply_z(psi: &WaveFunction, b: &OperatorZ) -> Result<WaveFunction> {
    WaveFunction::new(apply_z_matrix(&psi.matrix, b)?)
}

/// Matrix part of `Lψ - ψF`.
pub fn left_residual(l: &OperatorX, psi: &WaveFunction, f: &MatF) -> Result<MatF> {
    check_dim(psi.n(), f.n())?;
    if f.depends_on_x() {
        return Err(Error::VariableDependence("left eigenvalue F depends on x".into()));
    }
    Ok(&apply_x_matrix(l, &psi.matrix)? - &(&psi.matrix * f))
}

/// Matrix part of `ψB - θψ`.
pub fn right_residual(psi: &WaveFunction, b: &OperatorZ, theta: &MatF) -> Result<MatF> {
    check_dim(psi.n(), theta.n())?;
    if theta.depends_on_z() {
        return Err(Error::VariableDependence("right eigenvalue theta depends on z".into()));
    }
    Ok(&apply_z_matrix(&psi.matrix, b)? - &(theta * &psi.matrix))
}

/// `Lψ = ψF` exactly.
pub fn check_left_eigen(l: &OperatorX, psi: &WaveFunction, f: &MatF) -> Result<bool> {
    Ok(left_residual(l, psi, f)?.is_zero())
}

/// `ψB = θψ` exactly.
pub fn check_right_eigen(psi: &WaveFunction, b: &OperatorZ, theta: &MatF) -> Result<bool> {
    Ok(right_residual(psi, b, theta)?.is_zero())
}

pub fn compose_x(l1: &OperatorX, l2: &OperatorX) -> Result<OperatorX> {
    l1.compose(l2)
}

pub fn compose_z(b1: &OperatorZ, b2: &OperatorZ) -> Result<OperatorZ> {
    b1.compose(b2)
}

/// `[L1, L2] = L1 L2 - L2 L1`
pub fn commutator_x(l1: &OperatorX, l2: &OperatorX) -> Result<OperatorX> {
    compose_x(l1, l2)?.checked_sub(&compose_x(l2, l1)?)
}

/// `(ad F)(B) = F ∘ B - B ∘ F` for right operators, so that
/// `((ad L)θ)ψ = ψ (ad F)(B)` whenever `Lψ = ψF` and `ψB = θψ`.
pub fn commutator_z(f: &OperatorZ, b: &OperatorZ) -> Result<OperatorZ> {
    compose_z(f, b)?.checked_sub(&compose_z(b, f)?)
}

/// `(ad L)^r (Θ)`
pub fn ad_power(l: &OperatorX, theta: &OperatorX, r: usize) -> Result<OperatorX> {
    let mut acc = theta.clone();
    for _ in 0..r {
        if acc.is_zero() {
            break;
        }
        acc = commutator_x(l, &acc)?;
    }
    Ok(acc)
}

/// `(ad F)^r (B)` for right operators.
pub fn ad_power_z(f: &OperatorZ, b: &OperatorZ, r: usize) -> Result<OperatorZ> {
    let mut acc = b.clone();
    for _ in 0..r {
        if acc.is_zero() {
            break;
        }
        acc = commutator_z(f, &acc)?;
    }
    Ok(acc)
}

/// Coefficient of `∂^r` in `[L, Θ]` from the closed double sum
/// `Σ_{k+s=r} ( Σ_{j=k}^{l} L_j C(j,k) θ_s^{(j-k)} - Σ_{j=s}^{m} θ_j C(j,s) L_k^{(j-s)} )`.
/// Zero for `r` outside `0..=l+m`.
pub fn degad_coefficient(l: &OperatorX, theta: &OperatorX, r: i64) -> Result<MatF> {
    check_dim(l.n, theta.n)?;
    let n = l.n;
    let (Some(lo), Some(mo)) = (l.order(), theta.order()) else {
        return Ok(MatF::zero(n));
    };
    if r < 0 || r as usize > lo + mo {
        return Ok(MatF::zero(n));
    }
    let r = r as usize;
    let nth = |m: &MatF, k: usize| (0..k).fold(m.clone(), |acc, _| acc.deriv_x());
    let mut acc = MatF::zero(n);
    for k in 0..=lo.min(r) {
        let s = r - k;
        if s > mo {
            continue;
        }
        for j in k..=lo {
            let t = &l.coeff(j) * &nth(&theta.coeff(s), j - k);
            acc = &acc + &t.scale(&BiFraction::constant(binomial(j, k)));
        }
        for j in s..=mo {
            let t = &theta.coeff(j) * &nth(&l.coeff(k), j - s);
            acc = &acc - &t.scale(&BiFraction::constant(binomial(j, s)));
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmatrix::QMatrix;

    fn xmul(n: usize) -> OperatorX {
        OperatorX::multiplication(MatF::scalar(n, BiFraction::x())).unwrap()
    }

    #[test]
    fn weyl_relation() {
        let d = OperatorX::derivation(2);
        assert_eq!(commutator_x(&d, &xmul(2)).unwrap(), OperatorX::identity(2));
        assert!(commutator_x(&d, &d).unwrap().is_zero());
    }

    #[test]
    fn derivative_of_exponential() {
        let psi = WaveFunction::new(MatF::identity(2)).unwrap();
        let out = apply_x(&OperatorX::derivation(2), &psi).unwrap();
        assert_eq!(out.matrix(), &MatF::scalar(2, BiFraction::z()));
        let c = MatF::from(QMatrix::from_ints(&[&[1, 2], &[0, 1]]));
        let out = apply_x(&OperatorX::multiplication(c.clone()).unwrap(), &psi).unwrap();
        assert_eq!(out.matrix(), &c);
        let same = apply_z(&psi, &OperatorZ::identity(2)).unwrap();
        assert_eq!(same, psi);
    }

    #[test]
    fn coefficient_variables_enforced() {
        let bad = MatF::scalar(2, BiFraction::z());
        assert!(matches!(OperatorX::multiplication(bad), Err(Error::VariableDependence(_))));
        let psi = WaveFunction::new(MatF::identity(2)).unwrap();
        let f = MatF::scalar(2, BiFraction::x());
        assert!(check_left_eigen(&OperatorX::identity(2), &psi, &f).is_err());
        assert!(WaveFunction::new(MatF::zero(2)).is_err());
    }

    #[test]
    fn degad_top_coefficient() {
        let l = OperatorX::new(2, vec![MatF::zero(2), MatF::unit(2, 1, 2)]).unwrap();
        let t = OperatorX::new(2, vec![MatF::zero(2), MatF::unit(2, 2, 1)]).unwrap();
        let top = degad_coefficient(&l, &t, 2).unwrap();
        assert_eq!(top, MatF::unit(2, 1, 2).commutator(&MatF::unit(2, 2, 1)).unwrap());
        assert!(degad_coefficient(&l, &t, 3).unwrap().is_zero());
        assert!(degad_coefficient(&l, &t, -1).unwrap().is_zero());
        assert!(degad_coefficient(&l, &OperatorX::zero(2), 0).unwrap().is_zero());
    }

    #[test]
    fn json_round_trip() {
        let b = OperatorZ::new(2, vec![MatF::scalar(2, BiFraction::z().inv().unwrap()), MatF::unit(2, 2, 1)]).unwrap();
        let s = serde_json::to_string(&b).unwrap();
        assert!(s.starts_with(r#"{"var":"z""#));
        assert_eq!(serde_json::from_str::<OperatorZ>(&s).unwrap(), b);
        assert!(serde_json::from_str::<OperatorX>(&s).is_err());
        let psi = WaveFunction::new(MatF::identity(2)).unwrap();
        let s = serde_json::to_string(&psi).unwrap();
        assert!(s.contains(r#""prefactor":"exp(x*z)""#));
        assert_eq!(serde_json::from_str::<WaveFunction>(&s).unwrap(), psi);
    }
}

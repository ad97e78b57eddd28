//! The nilpotent family: a nilpotent `S` of degree `D`, its wave function and
//! Schrödinger operator, the P-maps, membership in the eigenvalue algebra Γ,
//! and the explicit right operator `B` realizing a member `θ`.
//!
//! All indices of Taylor coefficients and of the matrix `μ` are 0-based.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::fraction::BiFraction;
use crate::linalg::nullspace;
use crate::matpoly::{MatPoly, ThetaPoly, Var};
use crate::matrix::MatF;
use crate::operator::{OperatorX, OperatorZ, WaveFunction};
use crate::qmatrix::QMatrix;
use crate::rational::{rat, sign, Rational};

/// `S_N = Σ_{s=1}^{N-1} e_{s,s+1}`
pub fn shift_matrix(n: usize) -> Result<QMatrix> {
    if n < 2 {
        return Err(Error::OutOfRange(format!("shift matrix needs N >= 2, got {n}")));
    }
    Ok(partial_shift(n, n))
}

/// `Σ_{s=1}^{d-1} e_{s,s+1}`, nilpotent of degree `d` inside `M_n`.
fn partial_shift(n: usize, d: usize) -> QMatrix {
    (1..d as i64).fold(QMatrix::zero(n), |acc, s| &acc + &QMatrix::unit(n, s, s + 1))
}

/// A nilpotent `S` with `S^D = 0` and `S^{D-1} ≠ 0`, `D ≥ 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilpotentData {
    s: QMatrix,
    d: usize,
    // powers[e] = S^e for e < D
    powers: Vec<QMatrix>,
}

impl NilpotentData {
    pub fn new(s: QMatrix, d: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidNilpotent(format!("degree must be at least 2, got {d}")));
        }
        let mut powers = vec![QMatrix::identity(s.n())];
        for e in 1..d {
            let next = &powers[e - 1] * &s;
            powers.push(next);
        }
        if powers[d - 1].is_zero() {
            return Err(Error::InvalidNilpotent(format!("S^{} vanishes", d - 1)));
        }
        if !(&powers[d - 1] * &s).is_zero() {
            return Err(Error::InvalidNilpotent(format!("S^{d} does not vanish")));
        }
        Ok(NilpotentData { s, d, powers })
    }

    /// `(S_N, N)`
    pub fn shift(n: usize) -> Result<Self> {
        Self::new(shift_matrix(n)?, n)
    }

    /// `S_N` when `d = n`, otherwise the partial shift `Σ_{s<d} e_{s,s+1}`.
    pub fn standard(n: usize, d: usize) -> Result<Self> {
        if d > n {
            return Err(Error::InvalidNilpotent(format!("degree {d} exceeds size {n}")));
        }
        Self::new(partial_shift(n, d), d)
    }

    pub fn n(&self) -> usize {
        self.s.n()
    }

    pub fn s(&self) -> &QMatrix {
        &self.s
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    /// `S^e`, zero for `e ≥ D`.
    pub fn s_pow(&self, e: usize) -> QMatrix {
        self.powers.get(e).cloned().unwrap_or_else(|| QMatrix::zero(self.n()))
    }

    fn check(&self, theta: &ThetaPoly) -> Result<()> {
        check_dim(self.n(), theta.n())?;
        if theta.var() != Var::X {
            return Err(Error::NotXPolynomial);
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct NilpotentRepr {
    n: usize,
    #[serde(rename = "S")]
    s: MatF,
    #[serde(rename = "D")]
    d: usize,
}

impl Serialize for NilpotentData {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        NilpotentRepr { n: self.n(), s: MatF::from(&self.s), d: self.d }.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for NilpotentData {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = NilpotentRepr::deserialize(de)?;
        check_dim(r.n, r.s.n()).map_err(D::Error::custom)?;
        let s = MatPoly::from_matf(&r.s, Var::X).map_err(D::Error::custom)?;
        if s.degree() > 0 {
            return Err(D::Error::custom("S must be a constant matrix"));
        }
        NilpotentData::new(s.coeff(0), r.d).map_err(D::Error::custom)
    }
}

/// `ψ = e^{xz}(Iz + Σ_{m=1}^{D} (-1)^m S^{m-1} x^{-m})`
pub fn wave(nd: &NilpotentData) -> WaveFunction {
    let n = nd.n();
    let mut m = MatF::scalar(n, BiFraction::z());
    for k in 1..=nd.d {
        let c = BiFraction::monomial(sign(k as i64), -(k as i32), 0);
        m = &m + &MatF::from(nd.s_pow(k - 1)).scale(&c);
    }
    WaveFunction::new(m).expect("z I is nonzero")
}

/// `L = -∂_x² + 2 Σ_{m=1}^{D} (-1)^{m+1} m S^{m-1} x^{-m-1}`
pub fn schrodinger(nd: &NilpotentData) -> OperatorX {
    let n = nd.n();
    let mut potential = MatF::zero(n);
    for k in 1..=nd.d {
        let c = BiFraction::monomial(sign(k as i64 + 1) * rat(2 * k as i64), -(k as i32) - 1, 0);
        potential = &potential + &MatF::from(nd.s_pow(k - 1)).scale(&c);
    }
    OperatorX::new(n, vec![potential, MatF::zero(n), -&MatF::identity(n)]).expect("x-only coefficients")
}

/// `P_k(θ) = (k+1) c_{k+1} - Σ_{j=k+2}^{k+D} (-1)^{k-j} [c_j, S^{j-k-1}]`
/// where `c_j` is the `x^j` coefficient of `θ`.
pub fn p_k(theta: &ThetaPoly, nd: &NilpotentData, k: usize) -> Result<QMatrix> {
    nd.check(theta)?;
    Ok(p_k_unchecked(theta, nd, k))
}

fn p_k_unchecked(theta: &ThetaPoly, nd: &NilpotentData, k: usize) -> QMatrix {
    let mut out = theta.coeff(k + 1).scale(&rat(k as i64 + 1));
    for j in k + 2..=k + nd.d {
        if j >= theta.coeffs().len() {
            break;
        }
        let c = &theta.coeffs()[j];
        if c.is_zero() {
            continue;
        }
        let br = c.commutator(&nd.s_pow(j - k - 1)).expect("sizes checked");
        out.sub_assign_ref(&br.scale(&sign((k as i64) - (j as i64))));
    }
    out
}

/// Residuals of the two relation families; θ ∈ Γ exactly when all vanish.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaRelations {
    /// `Σ_{j=0}^{q} (-1)^{q-j-D} [S^{D-q+j-1}, c_j]`, `q = 0..D-1`
    pub first: Vec<QMatrix>,
    /// `Σ_{j=0}^{q} (-1)^{q-j-D+1} S^{j+D-q-1} P_j(θ)`, `q = 0..D-1`
    pub second: Vec<QMatrix>,
}

impl GammaRelations {
    pub fn holds(&self) -> bool {
        self.first.iter().chain(&self.second).all(QMatrix::is_zero)
    }
}

pub fn gamma_relations(theta: &ThetaPoly, nd: &NilpotentData) -> Result<GammaRelations> {
    nd.check(theta)?;
    let d = nd.d as i64;
    let p: Vec<QMatrix> = (0..nd.d).map(|j| p_k_unchecked(theta, nd, j)).collect();
    let mut first = Vec::with_capacity(nd.d);
    let mut second = Vec::with_capacity(nd.d);
    for q in 0..nd.d as i64 {
        let mut f = QMatrix::zero(nd.n());
        let mut s = QMatrix::zero(nd.n());
        for j in 0..=q {
            let c = theta.coeff(j as usize);
            let br = nd.s_pow((d - q + j - 1) as usize).commutator(&c).expect("sizes checked");
            f.add_assign_ref(&br.scale(&sign(q - j - d)));
            let t = &nd.s_pow((j + d - q - 1) as usize) * &p[j as usize];
            s.add_assign_ref(&t.scale(&sign(q - j - d + 1)));
        }
        first.push(f);
        second.push(s);
    }
    Ok(GammaRelations { first, second })
}

/// One named condition of the generator-style membership test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Condition {
    pub name: String,
    pub residual: QMatrix,
}

/// The conditions `P_0(xθ) = P_0(θ(0)x)`, `P_0(x^j θ) = 0` for `2 ≤ j ≤ D`, and
/// `Σ_{k=0}^{q} (-1)^k S^{k+D-q-1} P_k(θ) = 0` for `0 ≤ q < D`, as residuals.
///
/// `P_0` reads only coefficients of index `≤ D`, so `P_0(x^j θ) = 0` holds
/// trivially for `j > D`.
pub fn theoremgen_conditions(theta: &ThetaPoly, nd: &NilpotentData) -> Result<Vec<Condition>> {
    nd.check(theta)?;
    let mut out = Vec::new();
    let c0x = MatPoly::monomial(theta.coeff(0), 1, Var::X);
    let lhs = p_k_unchecked(&theta.shift(1), nd, 0);
    out.push(Condition {
        name: "P0(x theta) = P0(theta(0) x)".into(),
        residual: &lhs - &p_k_unchecked(&c0x, nd, 0),
    });
    for j in 2..=nd.d {
        out.push(Condition {
            name: format!("P0(x^{j} theta) = 0"),
            residual: p_k_unchecked(&theta.shift(j), nd, 0),
        });
    }
    let d = nd.d;
    let p: Vec<QMatrix> = (0..d).map(|k| p_k_unchecked(theta, nd, k)).collect();
    for q in 0..d {
        let mut acc = QMatrix::zero(nd.n());
        for (k, pk) in p.iter().enumerate().take(q + 1) {
            let t = &nd.s_pow(k + d - q - 1) * pk;
            acc.add_assign_ref(&t.scale(&sign(k as i64)));
        }
        out.push(Condition { name: format!("sum_k (-1)^k S^(k+D-{q}-1) P_k(theta) = 0"), residual: acc });
    }
    Ok(out)
}

pub fn gamma_membership_theoremgen(theta: &ThetaPoly, nd: &NilpotentData) -> Result<bool> {
    Ok(theoremgen_conditions(theta, nd)?.iter().all(|c| c.residual.is_zero()))
}

pub fn gamma_membership(theta: &ThetaPoly, nd: &NilpotentData) -> Result<bool> {
    Ok(gamma_relations(theta, nd)?.holds())
}

/// Reduced echelon basis of `Γ ∩ {deg < 2D}` as matrix polynomials.
///
/// Unknowns are the `N² · 2D` coefficients ordered by `(degree, row, col)`.
pub fn basis_e(nd: &NilpotentData) -> Vec<ThetaPoly> {
    let n = nd.n();
    let nn = n * n;
    let cols = nn * 2 * nd.d;
    // Column c holds the relation residuals of the unit unknown c.
    let columns: Vec<Vec<Rational>> = (0..cols)
        .map(|c| {
            let unit = QMatrix::unit(n, (c % nn / n) as i64 + 1, (c % n) as i64 + 1);
            let theta = MatPoly::monomial(unit, c / nn, Var::X);
            let rel = gamma_relations(&theta, nd).expect("sizes match");
            rel.first.iter().chain(&rel.second).flat_map(|m| m.entries().to_vec()).collect()
        })
        .collect();
    let rows = columns[0].len();
    let a: Vec<Vec<Rational>> = (0..rows).map(|r| columns.iter().map(|col| col[r].clone()).collect()).collect();
    nullspace(&a, cols)
        .into_iter()
        .map(|v| MatPoly::from_ambient(n, Var::X, &v))
        .collect()
}

/// The `(M+1)×(M+1)` matrix with `μ_{rj} = (-1)^{r-j}` for
/// `r+2 ≤ j ≤ min(r+D, M)`, `μ_{r,r+1} = r`, and zero elsewhere.
pub fn mu_matrix(d: usize, m: usize) -> Vec<Vec<Rational>> {
    (0..=m)
        .map(|r| {
            (0..=m)
                .map(|j| {
                    if j == r + 1 {
                        rat(r as i64)
                    } else if r + 2 <= j && j <= (r + d).min(m) {
                        sign(r as i64 - j as i64)
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        })
        .collect()
}

fn mat_mul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let k = b.len();
    a.iter()
        .map(|row| {
            (0..b.first().map_or(0, Vec::len))
                .map(|j| (0..k).fold(Rational::zero(), |acc, t| acc + &row[t] * &b[t][j]))
                .collect()
        })
        .collect()
}

/// The right operator `B` with `ψB = θψ` for `θ ∈ Γ`:
/// the `∂_z^j` coefficient is
/// `c_j + Σ_{l=1}^{M-j} (-1)^l z^{-l} Σ_{r=j+l-1}^{M} (μ^{l-1})_{jr} S^{r-j-l+1} P_r(θ)`.
///
/// Refuses non-members unless `force` is set.
pub fn build_b(theta: &ThetaPoly, nd: &NilpotentData, force: bool) -> Result<OperatorZ> {
    nd.check(theta)?;
    if !force && !gamma_membership(theta, nd)? {
        return Err(Error::NotInGamma);
    }
    let n = nd.n();
    let m = theta.degree();
    let mu = mu_matrix(nd.d, m);
    let p: Vec<QMatrix> = (0..=m).map(|r| p_k_unchecked(theta, nd, r)).collect();
    // mu_pows[l] = μ^l
    let mut mu_pows = vec![(0..=m)
        .map(|r| (0..=m).map(|c| if r == c { Rational::one() } else { Rational::zero() }).collect::<Vec<_>>())
        .collect::<Vec<_>>()];
    for l in 1..m {
        let next = mat_mul(&mu_pows[l - 1], &mu);
        mu_pows.push(next);
    }
    let mut coeffs = Vec::with_capacity(m + 1);
    for j in 0..=m {
        let mut c = MatF::from(theta.coeff(j));
        for l in 1..=m - j {
            let ml = &mu_pows[l - 1];
            let mut inner = QMatrix::zero(n);
            for r in j + l - 1..=m {
                if ml[j][r].is_zero() {
                    continue;
                }
                let t = &nd.s_pow(r + 1 - j - l) * &p[r];
                inner.add_assign_ref(&t.scale(&ml[j][r]));
            }
            if inner.is_zero() {
                continue;
            }
            let zl = BiFraction::monomial(sign(l as i64), 0, -(l as i32));
            c = &c + &MatF::from(inner).scale(&zl);
        }
        coeffs.push(c);
    }
    OperatorZ::new(n, coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::{apply_x, check_left_eigen, check_right_eigen};

    fn theta_ex() -> ThetaPoly {
        MatPoly::x(vec![QMatrix::zero(2), QMatrix::identity(2), QMatrix::unit(2, 2, 1)])
    }

    #[test]
    fn shift_powers() {
        assert_eq!(shift_matrix(2).unwrap(), QMatrix::unit(2, 1, 2));
        assert_eq!(shift_matrix(3).unwrap().pow(2), QMatrix::unit(3, 1, 3));
        assert!(shift_matrix(3).unwrap().pow(3).is_zero());
        assert!(shift_matrix(1).is_err());
    }

    #[test]
    fn nilpotent_validation() {
        assert!(NilpotentData::new(QMatrix::unit(3, 1, 3), 2).is_ok());
        assert!(NilpotentData::new(QMatrix::unit(3, 1, 3), 3).is_err());
        assert!(NilpotentData::new(shift_matrix(3).unwrap(), 2).is_err());
        assert!(NilpotentData::new(QMatrix::identity(2), 2).is_err());
        assert!(NilpotentData::new(QMatrix::unit(2, 1, 2), 1).is_err());
        let nd = NilpotentData::standard(4, 2).unwrap();
        assert_eq!(nd.s(), &QMatrix::unit(4, 1, 2));
    }

    #[test]
    fn wave_and_operator_for_two() {
        let nd = NilpotentData::shift(2).unwrap();
        let psi = wave(&nd);
        let expected = &(&MatF::scalar(2, BiFraction::z()) - &MatF::scalar(2, BiFraction::monomial(rat(1), -1, 0)))
            + &MatF::unit(2, 1, 2).scale(&BiFraction::monomial(rat(1), -2, 0));
        assert_eq!(psi.matrix(), &expected);
        let l = schrodinger(&nd);
        let out = apply_x(&l, &psi).unwrap();
        assert_eq!(out.matrix(), &psi.matrix().scale(&-(&BiFraction::z() * &BiFraction::z())));
        assert_eq!(l.coeff(2), -&MatF::identity(2));
    }

    #[test]
    fn schrodinger_eigen_for_three() {
        let nd = NilpotentData::shift(3).unwrap();
        let f = MatF::scalar(3, -(&BiFraction::z() * &BiFraction::z()));
        assert!(check_left_eigen(&schrodinger(&nd), &wave(&nd), &f).unwrap());
    }

    #[test]
    fn p_k_examples() {
        let nd = NilpotentData::shift(2).unwrap();
        let id = MatPoly::identity(2, Var::X);
        for k in 0..4 {
            assert!(p_k(&id, &nd, k).unwrap().is_zero());
        }
        let x2 = MatPoly::monomial(QMatrix::identity(2), 2, Var::X);
        assert_eq!(p_k(&x2, &nd, 1).unwrap(), QMatrix::scalar(2, rat(2)));
        assert_eq!(p_k(&theta_ex(), &nd, 0).unwrap(), QMatrix::unit(2, 1, 1).scale(&rat(2)));
    }

    #[test]
    fn relations_examples() {
        let nd = NilpotentData::shift(2).unwrap();
        assert!(gamma_relations(&theta_ex(), &nd).unwrap().holds());
        let bad = MatPoly::monomial(QMatrix::unit(2, 2, 1), 2, Var::X);
        assert!(!gamma_relations(&bad, &nd).unwrap().holds());
        assert!(!gamma_membership_theoremgen(&bad, &nd).unwrap());
        let c = MatPoly::constant(QMatrix::from_ints(&[&[3, 5], &[0, 3]]), Var::X);
        assert!(gamma_relations(&c, &nd).unwrap().holds());
        assert!(gamma_membership_theoremgen(&c, &nd).unwrap());
    }

    #[test]
    fn mu_examples() {
        let ints = |rows: &[&[i64]]| -> Vec<Vec<Rational>> { rows.iter().map(|r| r.iter().map(|&v| rat(v)).collect()).collect() };
        assert_eq!(mu_matrix(2, 2), ints(&[&[0, 0, 1], &[0, 0, 1], &[0, 0, 0]]));
        assert_eq!(mu_matrix(3, 5)[3][4], rat(3));
    }

    #[test]
    fn build_b_example() {
        let nd = NilpotentData::shift(2).unwrap();
        let b = build_b(&theta_ex(), &nd, false).unwrap();
        let zi = BiFraction::monomial(rat(1), 0, -1);
        let expected = OperatorZ::new(
            2,
            vec![
                MatF::unit(2, 1, 1).scale(&zi.scale(&rat(-2))),
                &MatF::identity(2) - &MatF::unit(2, 2, 1).scale(&zi.scale(&rat(2))),
                MatF::unit(2, 2, 1),
            ],
        )
        .unwrap();
        assert_eq!(b, expected);
        assert!(check_right_eigen(&wave(&nd), &b, &theta_ex().to_matf()).unwrap());
        assert_eq!(build_b(&MatPoly::identity(2, Var::X), &nd, false).unwrap(), OperatorZ::identity(2));
        let bad = MatPoly::monomial(QMatrix::unit(2, 2, 1), 2, Var::X);
        assert_eq!(build_b(&bad, &nd, false).unwrap_err(), Error::NotInGamma);
        assert!(build_b(&bad, &nd, true).is_ok());
    }

    #[test]
    fn basis_e_dimension_two() {
        let nd = NilpotentData::shift(2).unwrap();
        let basis = basis_e(&nd);
        assert_eq!(basis.len(), 10);
        assert!(basis.iter().all(|t| gamma_relations(t, &nd).unwrap().holds()));
    }

    #[test]
    fn json_round_trip() {
        let nd = NilpotentData::shift(3).unwrap();
        let s = serde_json::to_string(&nd).unwrap();
        assert!(s.contains(r#""D":3"#));
        assert_eq!(serde_json::from_str::<NilpotentData>(&s).unwrap(), nd);
    }
}

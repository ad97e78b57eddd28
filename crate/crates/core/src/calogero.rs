//! The 2×2 spin Calogero example, where both eigenvalues are matrix valued.

use num_traits::Zero;

use crate::error::{check_dim, Error, Result};
use crate::fraction::BiFraction;
use crate::matpoly::{MatPoly, Var};
use crate::matrix::MatF;
use crate::operator::{OperatorX, OperatorZ, WaveFunction};
use crate::poly::{BiPoly, Monomial};
use crate::qmatrix::QMatrix;
use crate::rational::{rat, ratio, Rational};

/// Bivariate polynomial from `(coefficient, x-exponent, z-exponent)` triples.
fn bp(terms: &[(i64, u32, u32)]) -> BiPoly {
    BiPoly::from_terms(terms.iter().map(|&(c, i, j)| (Monomial::new(i, j), rat(c))))
}

fn frac(num: &[(i64, u32, u32)], den: &[(i64, u32, u32)]) -> BiFraction {
    BiFraction::new(bp(num), bp(den)).expect("nonzero denominator")
}

fn mat(rows: [[BiFraction; 2]; 2]) -> MatF {
    let [[a, b], [c, d]] = rows;
    MatF::from_rows(vec![vec![a, b], vec![c, d]]).expect("2x2")
}

/// `(x-2)^k`
fn xm2(k: u32) -> BiPoly {
    bp(&[(1, 1, 0), (-2, 0, 0)]).pow(k)
}

fn over(num: BiPoly, den: BiPoly) -> BiFraction {
    BiFraction::new(num, den).expect("nonzero denominator")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CalogeroFixture {
    pub psi: WaveFunction,
    pub l: OperatorX,
    pub b: OperatorZ,
    pub theta: MatF,
    pub f: MatF,
}

/// `ψ = e^{xz} / ((x-2) x z) · [[(x³z² - 2x²z² - 2x²z + 3xz + 2x - 2)/(xz), 1/x],
/// [(xz - 2)/z, x²z - 2xz - x + 1]]`
pub fn calogero_wave() -> WaveFunction {
    let pre = bp(&[(1, 2, 1), (-2, 1, 1)]); // (x-2) x z
    let m = mat([
        [
            over(bp(&[(1, 3, 2), (-2, 2, 2), (-2, 2, 1), (3, 1, 1), (2, 1, 0), (-2, 0, 0)]), &pre * &bp(&[(1, 1, 1)])),
            over(BiPoly::one(), &pre * &BiPoly::x()),
        ],
        [
            over(bp(&[(1, 1, 1), (-2, 0, 0)]), &pre * &BiPoly::z()),
            over(bp(&[(1, 2, 1), (-2, 1, 1), (-1, 1, 0), (1, 0, 0)]), pre.clone()),
        ],
    ]);
    WaveFunction::new(m).expect("nonzero")
}

/// `ℒ = e_{22} ∂² + [[0, 1/((x-2)x²)], [-1/(x-2), 0]] ∂ + V(x)`
pub fn calogero_operator() -> OperatorX {
    let x = |k: u32| BiPoly::term(rat(1), k, 0);
    let c1 = mat([
        [BiFraction::zero(), over(BiPoly::one(), &xm2(1) * &x(2))],
        [over(-&BiPoly::one(), xm2(1)), BiFraction::zero()],
    ]);
    let c0 = mat([
        [over(-&BiPoly::one(), &x(2) * &xm2(2)), over(bp(&[(1, 1, 0), (-1, 0, 0)]), &x(3) * &xm2(2))],
        [
            over(bp(&[(2, 1, 0), (-1, 0, 0)]), &x(1) * &xm2(2)),
            over(bp(&[(-2, 2, 0), (4, 1, 0), (-3, 0, 0)]), &x(2) * &xm2(2)),
        ],
    ]);
    OperatorX::new(2, vec![c0, c1, MatF::unit(2, 2, 2)]).expect("x-only")
}

/// `B = ∂³ e_{21} + ∂² [[0,0],[-(2z+1)/z,0]] + ∂ [[1,0],[2(z-1)/z²,1]] + [[-1/z,0],[6/z³,1/z]]`
pub fn calogero_right_operator() -> OperatorZ {
    let zero = BiFraction::zero;
    let one = BiFraction::one;
    let b0 = mat([
        [frac(&[(-1, 0, 0)], &[(1, 0, 1)]), zero()],
        [frac(&[(6, 0, 0)], &[(1, 0, 3)]), frac(&[(1, 0, 0)], &[(1, 0, 1)])],
    ]);
    let b1 = mat([[one(), zero()], [frac(&[(2, 0, 1), (-2, 0, 0)], &[(1, 0, 2)]), one()]]);
    let b2 = mat([[zero(), zero()], [frac(&[(-2, 0, 1), (-1, 0, 0)], &[(1, 0, 1)]), zero()]]);
    OperatorZ::new(2, vec![b0, b1, b2, MatF::unit(2, 2, 1)]).expect("z-only")
}

pub fn calogero_fixture() -> CalogeroFixture {
    let theta = mat([
        [BiFraction::x(), BiFraction::zero()],
        [BiFraction::from_poly(bp(&[(1, 3, 0), (-2, 2, 0)])), BiFraction::x()],
    ]);
    let f = MatF::unit(2, 2, 2).scale(&BiFraction::from_poly(bp(&[(1, 0, 2)])));
    CalogeroFixture { psi: calogero_wave(), l: calogero_operator(), b: calogero_right_operator(), theta, f }
}

/// A spectral-side eigenvalue `F(z) = F_0 + F_1 z + F_2 z² + z³ p(z)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CalogeroF {
    pub head: [QMatrix; 3],
    pub tail: MatPoly,
}

impl CalogeroF {
    pub fn from_poly(f: &MatPoly) -> Result<Self> {
        check_dim(2, f.n())?;
        if f.var() != Var::Z {
            return Err(Error::VariableDependence("spectral eigenvalue must be a polynomial in z".into()));
        }
        let tail = MatPoly::new(2, Var::Z, f.coeffs().iter().skip(3).cloned().collect())?;
        Ok(CalogeroF { head: [f.coeff(0), f.coeff(1), f.coeff(2)], tail })
    }

    pub fn to_poly(&self) -> MatPoly {
        let head = MatPoly::new(2, Var::Z, self.head.to_vec()).expect("2x2");
        &head + &self.tail.shift(3)
    }

    /// `s_d^{ij}` with 1-based `i, j`.
    fn s(&self, d: usize, i: usize, j: usize) -> &Rational {
        self.head[d].get(i - 1, j - 1)
    }

    /// The seven linear constraints, each as `lhs - rhs`.
    pub fn constraint_residuals(&self) -> Vec<Rational> {
        let s = |d, i, j| self.s(d, i, j).clone();
        let shift = s(0, 1, 1) - s(0, 2, 2) - s(1, 1, 1);
        vec![
            s(0, 1, 2),
            s(0, 2, 1) - (s(0, 2, 2) - s(0, 1, 1)),
            s(1, 1, 2) - s(1, 1, 1),
            s(1, 2, 2) + s(1, 1, 1),
            s(1, 2, 1) - shift.clone(),
            s(2, 1, 1) * rat(2) - shift,
            s(2, 1, 2) * rat(2) - (s(1, 1, 1) + s(0, 1, 1) - s(0, 2, 2)),
        ]
    }

    pub fn is_member(&self) -> bool {
        self.constraint_residuals().iter().all(Zero::is_zero)
    }
}

pub fn gamma_c_membership(f: &MatPoly) -> Result<bool> {
    Ok(CalogeroF::from_poly(f)?.is_member())
}

/// One numerator: `x`-power with its linear form `Σ c · s_d^{ij}`.
type Numerator = &'static [(u32, &'static [(i64, usize, usize, usize)])];

const ORDER0: [Numerator; 4] = [
    &[
        (5, &[(1, 0, 1, 1)]),
        (4, &[(-1, 1, 1, 2), (-4, 0, 1, 1)]),
        (3, &[(3, 2, 1, 2), (-4, 2, 1, 1), (2, 1, 1, 2), (4, 0, 1, 1)]),
        (2, &[(-3, 2, 1, 2), (12, 2, 1, 1), (1, 1, 2, 1)]),
        (1, &[(-1, 2, 2, 2), (2, 2, 2, 1), (-11, 2, 1, 1), (-2, 1, 2, 1)]),
        (0, &[(-3, 2, 2, 1)]),
    ],
    &[
        (6, &[(1, 0, 1, 2)]),
        (5, &[(-1, 1, 1, 2), (-4, 0, 1, 2)]),
        (4, &[(-1, 2, 1, 2), (4, 1, 1, 2), (4, 0, 1, 2)]),
        (3, &[(1, 2, 1, 2), (1, 1, 2, 2), (-4, 1, 1, 2), (-1, 1, 1, 1)]),
        (2, &[(1, 2, 2, 2), (-1, 2, 1, 2), (5, 2, 1, 1), (-2, 1, 2, 2), (2, 1, 1, 1)]),
        (1, &[(-1, 2, 2, 2), (-7, 2, 1, 1)]),
        (0, &[(-1, 2, 2, 1)]),
    ],
    &[
        (4, &[(1, 0, 2, 1)]),
        (3, &[(-1, 1, 2, 2), (1, 1, 2, 1), (1, 1, 1, 1), (-4, 0, 2, 1)]),
        (2, &[(2, 2, 2, 2), (-4, 2, 2, 1), (-1, 2, 1, 2), (2, 1, 2, 2), (-4, 1, 2, 1), (-2, 1, 1, 1), (4, 0, 2, 1)]),
        (1, &[(-1, 2, 2, 2), (11, 2, 2, 1), (1, 2, 1, 1), (4, 1, 2, 1)]),
        (0, &[(-9, 2, 2, 1)]),
    ],
    &[
        (5, &[(1, 0, 2, 2)]),
        (4, &[(1, 1, 1, 2), (-4, 0, 2, 2)]),
        (3, &[(-2, 2, 2, 2), (-1, 2, 1, 2), (-2, 1, 1, 2), (4, 0, 2, 2)]),
        (2, &[(4, 2, 2, 2), (3, 2, 1, 2), (-1, 1, 2, 1)]),
        (1, &[(-3, 2, 2, 2), (4, 2, 2, 1), (-1, 2, 1, 1), (2, 1, 2, 1)]),
        (0, &[(-5, 2, 2, 1)]),
    ],
];

/// Denominators of the order-0 block as `x^a (x-2)^2`.
const ORDER0_X_POWER: [u32; 4] = [3, 4, 2, 3];

const ORDER1: [Numerator; 4] = [
    &[(3, &[(1, 1, 1, 1)]), (2, &[(-1, 2, 1, 2), (-2, 1, 1, 1)]), (0, &[(1, 2, 2, 1)])],
    &[(3, &[(1, 1, 1, 2)]), (2, &[(-1, 2, 1, 2), (-2, 1, 1, 2)]), (1, &[(2, 2, 1, 2)]), (0, &[(1, 2, 2, 2), (-1, 2, 1, 1)])],
    &[(2, &[(1, 1, 2, 1)]), (1, &[(-1, 2, 2, 2), (1, 2, 2, 1), (1, 2, 1, 1), (-2, 1, 2, 1)]), (0, &[(-2, 2, 2, 1)])],
    &[(3, &[(1, 1, 2, 2)]), (2, &[(1, 2, 1, 2), (-2, 1, 2, 2)]), (0, &[(-1, 2, 2, 1)])],
];

/// Denominators of the order-1 block as `x^a (x-2)`.
const ORDER1_X_POWER: [u32; 4] = [2, 2, 1, 2];

fn numerator(f: &CalogeroF, table: Numerator) -> BiPoly {
    BiPoly::from_terms(table.iter().map(|&(p, form)| {
        let c = form.iter().fold(Rational::zero(), |acc, &(c, d, i, j)| acc + rat(c) * f.s(d, i, j));
        (Monomial::new(p, 0), c)
    }))
}

fn block(f: &CalogeroF, tables: &[Numerator; 4], x_powers: &[u32; 4], shift_power: u32) -> MatF {
    MatF::from_fn(2, |i, j| {
        let k = 2 * i + j;
        let den = &BiPoly::term(rat(1), x_powers[k], 0) * &xm2(shift_power);
        over(numerator(f, tables[k]), den)
    })
}

/// The second-order operator `ℒ` with `ℒψ = ψF` for a member `F` of degree at
/// most two.
pub fn build_l(f: &MatPoly) -> Result<OperatorX> {
    let cf = CalogeroF::from_poly(f)?;
    if !cf.tail.is_zero() {
        return Err(Error::OutOfRange("build_l accepts only F of degree at most 2".into()));
    }
    if !cf.is_member() {
        return Err(Error::NotInGamma);
    }
    let c0 = block(&cf, &ORDER0, &ORDER0_X_POWER, 2);
    let c1 = block(&cf, &ORDER1, &ORDER1_X_POWER, 1);
    let c2 = MatF::from(cf.head[2].clone());
    OperatorX::new(2, vec![c0, c1, c2])
}

/// The five spanning elements of the degree-≤2 head, with `h = z²/2`:
/// `α_1 = [[1,0],[-1,0]] + e_{21} z + [[1,1],[0,0]] h`,
/// `α_2 = [[0,0],[1,1]] - e_{21} z - [[1,1],[0,0]] h`,
/// `α_3 = [[1,1],[-1,-1]] z + [[-1,1],[0,0]] h`, `α_4 = e_{21} h`, `α_5 = e_{22} h`.
pub fn basis_e_c() -> [MatPoly; 5] {
    let q = |rows: &[&[i64]]| QMatrix::from_ints(rows);
    let half = ratio(1, 2);
    let p = |c0: QMatrix, c1: QMatrix, c2: QMatrix| MatPoly::new(2, Var::Z, vec![c0, c1, c2.scale(&half)]).expect("2x2");
    let z = || QMatrix::zero(2);
    [
        p(q(&[&[1, 0], &[-1, 0]]), q(&[&[0, 0], &[1, 0]]), q(&[&[1, 1], &[0, 0]])),
        p(q(&[&[0, 0], &[1, 1]]), q(&[&[0, 0], &[-1, 0]]), q(&[&[-1, -1], &[0, 0]])),
        p(z(), q(&[&[1, 1], &[-1, -1]]), q(&[&[-1, 1], &[0, 0]])),
        p(z(), z(), QMatrix::unit(2, 2, 1)),
        p(z(), z(), QMatrix::unit(2, 2, 2)),
    ]
}

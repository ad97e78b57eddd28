//! Seeded random instances for the property suites.
//!
//! Every trial draws from its own ChaCha stream, so a suite's outcome depends
//! only on `(seed, trial)` and not on scheduling.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::fraction::BiFraction;
use crate::matpoly::{MatPoly, ThetaPoly, Var};
use crate::matrix::MatF;
use crate::nilpotent::{gamma_membership, NilpotentData};
use crate::operator::{OperatorX, OperatorZ};
use crate::poly::{BiPoly, Monomial};
use crate::qmatrix::QMatrix;
use crate::rational::rat;

pub type TrialRng = ChaCha8Rng;

pub fn trial_rng(seed: u64, trial: u64) -> TrialRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Integer matrix with entries in `[-r, r]`.
pub fn int_matrix(rng: &mut TrialRng, n: usize, r: i64) -> QMatrix {
    QMatrix::from_rows((0..n).map(|_| (0..n).map(|_| rat(rng.gen_range(-r..=r))).collect()).collect())
        .expect("square")
}

/// Matrix polynomial of degree at most `deg` with entries in `[-r, r]`.
pub fn random_poly(rng: &mut TrialRng, n: usize, deg: usize, r: i64, var: Var) -> MatPoly {
    MatPoly::new(n, var, (0..=deg).map(|_| int_matrix(rng, n, r)).collect()).expect("sizes agree")
}

/// Like [`random_poly`] with zero constant term.
pub fn random_poly_vanishing_at_zero(rng: &mut TrialRng, n: usize, deg: usize, r: i64) -> ThetaPoly {
    random_poly(rng, n, deg, r, Var::X).without_constant()
}

/// A member of Γ: an integer combination (coefficients in `[-5, 5]`) of the
/// head basis plus a free tail `Σ_{d=2D}^{tail_top} c_d x^d`.
pub fn random_member(rng: &mut TrialRng, nd: &NilpotentData, basis: &[ThetaPoly], tail_top: usize) -> ThetaPoly {
    let n = nd.n();
    let mut th = MatPoly::zero(n, Var::X);
    for b in basis {
        th = &th + &b.scale(&rat(rng.gen_range(-5..=5)));
    }
    for d in 2 * nd.degree()..=tail_top {
        th = &th + &MatPoly::monomial(int_matrix(rng, n, 5), d, Var::X);
    }
    th
}

/// A random polynomial of degree below `2D` that fails the membership test.
pub fn random_nonmember(rng: &mut TrialRng, nd: &NilpotentData) -> ThetaPoly {
    loop {
        let th = random_poly(rng, nd.n(), 2 * nd.degree() - 1, 5, Var::X);
        if !gamma_membership(&th, nd).expect("sizes agree") {
            return th;
        }
    }
}

/// Sparse bivariate polynomial with up to `terms` terms, exponents below
/// `max_exp`, coefficients in `[-3, 3]`.
pub fn random_bipoly(rng: &mut TrialRng, terms: usize, max_exp: u32) -> BiPoly {
    BiPoly::from_terms((0..terms).map(|_| {
        (Monomial::new(rng.gen_range(0..max_exp), rng.gen_range(0..max_exp)), rat(rng.gen_range(-3..=3)))
    }))
}

fn random_nonzero_bipoly(rng: &mut TrialRng, terms: usize, max_exp: u32) -> BiPoly {
    loop {
        let p = random_bipoly(rng, terms, max_exp);
        if !p.is_zero() {
            return p;
        }
    }
}

pub fn random_fraction(rng: &mut TrialRng) -> BiFraction {
    let num = random_bipoly(rng, 3, 3);
    let den = random_nonzero_bipoly(rng, 2, 2);
    BiFraction::new(num, den).expect("nonzero denominator")
}

/// Polynomial in one variable only, as a fraction.
pub fn random_univariate(rng: &mut TrialRng, var: Var, deg: u32) -> BiFraction {
    let p = BiPoly::from_terms((0..=deg).map(|d| {
        let m = match var {
            Var::X => Monomial::new(d, 0),
            Var::Z => Monomial::new(0, d),
        };
        (m, rat(rng.gen_range(-3..=3)))
    }));
    BiFraction::from_poly(p)
}

/// Matrix with polynomial entries in `var` of degree at most `deg`.
pub fn random_univariate_matrix(rng: &mut TrialRng, n: usize, var: Var, deg: u32) -> MatF {
    MatF::from_fn(n, |_, _| random_univariate(rng, var, deg))
}

/// Operator in `x` of order at most `order` with polynomial coefficients.
pub fn random_operator_x(rng: &mut TrialRng, n: usize, order: usize, deg: u32) -> OperatorX {
    OperatorX::new(n, (0..=order).map(|_| random_univariate_matrix(rng, n, Var::X, deg)).collect())
        .expect("x-only coefficients")
}

/// Operator in `z` of order at most `order` whose coefficients mix
/// polynomial terms with a `z^{-1}` term.
pub fn random_operator_z(rng: &mut TrialRng, n: usize, order: usize, deg: u32) -> OperatorZ {
    let coeffs = (0..=order)
        .map(|_| {
            let poly = random_univariate_matrix(rng, n, Var::Z, deg);
            let inv = MatF::from(int_matrix(rng, n, 2)).scale(&BiFraction::monomial(rat(1), 0, -1));
            &poly + &inv
        })
        .collect();
    OperatorZ::new(n, coeffs).expect("z-only coefficients")
}

/// A wave-function matrix part with entries in `x, z, 1/x`.
pub fn random_wave_matrix(rng: &mut TrialRng, n: usize) -> MatF {
    loop {
        let m = MatF::from_fn(n, |_, _| {
            let p = BiFraction::from_poly(random_bipoly(rng, 3, 3));
            let q = BiFraction::monomial(rat(rng.gen_range(-2..=2)), -1, 0);
            &p + &q
        });
        if !m.is_zero() {
            return m;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nilpotent::basis_e;

    #[test]
    fn streams_are_reproducible() {
        let a = random_poly(&mut trial_rng(7, 3), 2, 3, 5, Var::X);
        let b = random_poly(&mut trial_rng(7, 3), 2, 3, 5, Var::X);
        let c = random_poly(&mut trial_rng(7, 4), 2, 3, 5, Var::X);
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn members_and_nonmembers() {
        let nd = NilpotentData::shift(2).unwrap();
        let basis = basis_e(&nd);
        let mut rng = trial_rng(1, 0);
        for _ in 0..5 {
            let th = random_member(&mut rng, &nd, &basis, 7);
            assert!(th.degree() <= 7);
            assert!(gamma_membership(&th, &nd).unwrap());
            assert!(!gamma_membership(&random_nonmember(&mut rng, &nd), &nd).unwrap());
        }
    }
}

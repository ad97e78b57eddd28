//! Named, seeded invariant suites.
//!
//! Trial `t` of a suite draws from stream `t` of the seed, so reports are
//! reproducible and trials run in parallel with ordered aggregation.

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::calogero::{basis_e_c, build_l, calogero_wave, gamma_c_membership};
use crate::closure::span_close;
use crate::error::{Error, Result};
use crate::fraction::BiFraction;
use crate::linalg::{nullspace, rank};
use crate::matpoly::{MatPoly, ThetaPoly, Var};
use crate::matrix::MatF;
use crate::nilpotent::{
    basis_e, build_b, gamma_membership, gamma_membership_theoremgen, gamma_relations, p_k, schrodinger, wave,
    NilpotentData,
};
use crate::operator::{
    ad_power, ad_power_z, apply_x_matrix, apply_z_matrix, check_left_eigen, check_right_eigen, commutator_x,
    compose_x, compose_z, degad_coefficient, right_residual, OperatorX, OperatorZ,
};
use crate::pierce::generators;
use crate::qmatrix::QMatrix;
use crate::rational::{rat, ratio, Rational};
use crate::sampling::{
    int_matrix, random_bipoly, random_fraction, random_member, random_nonmember, random_operator_x,
    random_operator_z, random_poly, random_poly_vanishing_at_zero, random_univariate, random_univariate_matrix,
    random_wave_matrix, trial_rng, TrialRng,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub trial: u64,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub trials: u64,
    pub seed: u64,
    pub passed: u64,
    pub failures: Vec<Failure>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.passed == self.trials
    }
}

pub struct Suite {
    pub name: &'static str,
    pub description: &'static str,
    run: fn(u64, u64) -> Vec<Option<Failure>>,
}

pub const SUITES: &[Suite] = &[
    Suite { name: "field-axioms", description: "associativity, distributivity, inverses of fractions", run: field_axioms },
    Suite { name: "leibniz", description: "product rule for both partials; mixed partials commute", run: leibniz },
    Suite { name: "coeff-reconstruct", description: "x-coefficients reassemble a polynomial matrix", run: coeff_reconstruct },
    Suite { name: "nullspace", description: "kernel vectors annihilate and rank-nullity holds", run: nullspace_suite },
    Suite { name: "compose-x", description: "composition of left operators is their successive action", run: compose_x_suite },
    Suite { name: "compose-z", description: "composition of right operators is their successive action", run: compose_z_suite },
    Suite { name: "degad-formula", description: "closed double sum equals every coefficient of a commutator", run: degad_formula },
    Suite { name: "degad-order", description: "commutator order drops exactly when leading coefficients commute", run: degad_order },
    Suite { name: "degad-leading", description: "top two commutator coefficients and the normalized a_{l-1}", run: degad_leading },
    Suite { name: "pk0", description: "P_k(θ) as P_0 of an auxiliary degree-D polynomial", run: pk0 },
    Suite { name: "product-p0", description: "product formula for P_0", run: product_p0 },
    Suite { name: "product-pk", description: "product formula for P_k, k ≤ 3", run: product_pk },
    Suite { name: "translation", description: "P_k(x^t θ) in the three ranges of t", run: translation },
    Suite { name: "p0-from-pk", description: "P_0 recovered from P_k, k ≤ 4", run: p0_from_pk },
    Suite { name: "zero1", description: "product formula when the left factor vanishes at 0", run: zero1 },
    Suite { name: "zero12", description: "product formula when both factors vanish at 0", run: zero12 },
    Suite { name: "constant-factor", description: "P_0 of a product with a constant left factor", run: constant_factor },
    Suite { name: "formulation", description: "relation and generator-style membership tests agree", run: formulation },
    Suite { name: "gamma-closed", description: "products of members are members", run: gamma_closed },
    Suite { name: "build-b", description: "ψ·build_b(θ) = θ·ψ for members, four nilpotent configurations", run: build_b_suite },
    Suite { name: "residual", description: "ψB - θψ for non-members equals the relation residual expansion", run: residual },
    Suite { name: "ad-condition", description: "(ad L)^{deg θ + 1}(θ) = 0 for members", run: ad_condition },
    Suite { name: "ad-identity", description: "(ad L)^r(θ)ψ = ψ(ad F)^r(B), r = 1..3", run: ad_identity },
    Suite { name: "leading-recursion", description: "top coefficient of (ad L)^{k+1}(θ) for second-order L", run: leading_recursion },
    Suite { name: "calogero-build-l", description: "build_l(F)ψ = ψF for random degree-≤2 members", run: calogero_build_l },
    Suite { name: "calogero-linearity", description: "build_l is additive", run: calogero_linearity },
    Suite { name: "calogero-closed", description: "products of spectral members are members", run: calogero_closed },
    Suite { name: "closure-order", description: "span closure ignores generator order", run: closure_order },
    Suite { name: "closure-monotone", description: "containment at a cap persists at larger caps", run: closure_monotone },
];

pub fn suite_names() -> impl Iterator<Item = &'static str> {
    SUITES.iter().map(|s| s.name)
}

pub fn run_suite(name: &str, trials: u64, seed: u64) -> Result<SuiteReport> {
    let suite = SUITES
        .iter()
        .find(|s| s.name == name)
        .ok_or_else(|| Error::OutOfRange(format!("unknown suite {name:?}")))?;
    let failures: Vec<Failure> = (suite.run)(trials, seed).into_iter().flatten().collect();
    Ok(SuiteReport { suite: name.to_string(), trials, seed, passed: trials - failures.len() as u64, failures })
}

fn run_trials(trials: u64, seed: u64, f: impl Fn(&mut TrialRng, u64) -> Result<bool> + Sync) -> Vec<Option<Failure>> {
    (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(seed, t);
            match f(&mut rng, t) {
                Ok(true) => None,
                Ok(false) => Some(Failure { trial: t, detail: "identity violated".into() }),
                Err(e) => Some(Failure { trial: t, detail: e.to_string() }),
            }
        })
        .collect()
}

/// The nilpotent configurations `(S_2,2)`, `(e_13 ∈ M_3, 2)`, `(S_3,3)`, `(S_4,4)`.
pub fn standard_configurations() -> Vec<NilpotentData> {
    let e13 = NilpotentData::new(QMatrix::unit(3, 1, 3), 2).expect("e13 squares to zero");
    vec![
        NilpotentData::shift(2).expect("valid"),
        e13,
        NilpotentData::shift(3).expect("valid"),
        NilpotentData::shift(4).expect("valid"),
    ]
}

fn with_bases(configs: Vec<NilpotentData>) -> Vec<(NilpotentData, Vec<ThetaPoly>)> {
    configs
        .into_par_iter()
        .map(|nd| {
            let b = basis_e(&nd);
            (nd, b)
        })
        .collect()
}

/// `N ∈ 2..=4`, `D ∈ 2..=N`.
fn random_nd(rng: &mut TrialRng) -> NilpotentData {
    let n = rng.gen_range(2..=4);
    let d = rng.gen_range(2..=n);
    NilpotentData::standard(n, d).expect("valid")
}

fn random_theta(rng: &mut TrialRng, n: usize, max_deg: usize) -> ThetaPoly {
    let deg = rng.gen_range(0..=max_deg);
    random_poly(rng, n, deg, 5, Var::X)
}

fn x_pow(k: i32) -> BiFraction {
    BiFraction::monomial(rat(1), k, 0)
}

fn field_axioms(trials: u64, seed: u64) -> Vec<Option<Failure>> {
    run_trials(trials, seed, |rng, _| {
        let (a, b, c) = (random_fraction(rng), random_fraction(rng), random_fraction(rng));
        let mut ok = &(&a + &b) + &c == &a + &(&b + &c);
        ok &= &(&a * &b) * &c == &a * &(&b * &c);
        ok &= &a * &(&b + &c) == &(&a * &b) + &(&a * &c);
        ok &= (&a + &(-&a)).is_zero();
        ok &= match a.inv() {
            Some(ai) => &a * &ai == BiFraction::one(),
            None => a.is_zero(),
        };
        Ok(ok)
    })
}

fn leibniz(trials: u64, seed: u64) -> Vec<Option<Failure>> {
    run_trials(trials, seed, |rng, _| {
        let (a, b) = (random_fraction(rng), random_fraction(rng));
        let ab = &a * &b;
        let mut ok = ab.deriv_x() == &(&a.deriv_x() * &b) + &(&a * &b.deriv_x());
        ok &= ab.deriv_z() == &(&a.deriv_z() * &b) + &(&a * &b.deriv_z());
        ok &= a.deriv_x().deriv_z() == a.deriv_z().deriv_x();
        let (p, q) = (random_bipoly(rng, 4, 4), random_bipoly(rng, 4, 4));
        let pq = &p * &q;
        ok &= pq.deriv_x() == &(&p.deriv_x() * &q) + &(&p * &q.deriv_x());
        ok &= p.deriv_x().deriv_z() == p.deriv_z().deriv_x();
        Ok(ok)
    })
}

fn coeff_reconstruct(trials: u64, seed: u64) -> Vec<Option<Failure>> {
    run_trials(trials, seed, |rng, _| {
        let n = rng.gen_range(1..=3);
        let deg = rng.gen_range(0..=4u32);
        let m = random_univariate_matrix(rng, n, Var::X, deg);
        let mut acc = MatF::zero(n);
        for j in 0..=deg {
            acc = &acc + &MatF::from(m.coeff_x(j)?).scale(&x_pow(j as i32));
        }
        Ok(acc == m && m.coeff_x(deg + 1)?.is_zero())
    })
}

fn nullspace_suite(trials: u64, seed: u64) -> Vec<Option<Failure>> {
    run_trials(trials, seed, |rng, _| {
        let rows = rng.gen_range(1..=5);
        let cols = rng.gen_range(1..=6);
        let mut a: Vec<Vec<Rational>> =
            (0..rows).map(|_| (0..cols).map(|_| rat(rng.gen_range(-3..=3))).collect()).collect();
        if rows > 2 && rng.gen_bool(0.5) {
            let (c0, c1) = (rat(rng.gen_range(-2..=2)), rat(rng.gen_range(-2..=2)));
            a[rows - 1] = (0..cols).map(|j| &c0 * &a[0][j] + &c1 * &a[1][j]).collect();
        }
        let basis = nullspace(&a, cols);
        let annihilates = basis
            .iter()
            .all(|v| a.iter().all(|row| row.iter().zip(v).map(|(x, y)| x * y).sum::<Rational>().is_zero()));
        Ok(annihilates && rank(&a, cols) + basis.len() == cols && rank(&basis, cols) == basis.len())
    })
}

fn compose_x_suite(trials: u64, seed: u64) -> Vec<Option<Failure>> {
    run_trials(trials, seed, |rng, _| {
        let n = rng.gen_range(1..=3);
        let (o1, o2) = (rng.gen_range(0..=3), rng.gen_range(0..=3));
        let l1 = random_operator_x(rng, n, o1, 2);
        let l2 = random_operator_x(rng, n, o2, 2);
        let psi = random_wave_matrix(rng, n);
        Ok(apply_x_matrix(&compose_x(&l1, &l2)?, &psi)? == apply_x_matrix(&l1, &apply_x_matrix(&l2, &psi)?)?)
    })
}

fn compose_z_suite(trials: u64, seed: u64) -> Vec<Option<Failure>> {
    run_trials(trials, seed, |rng, _| {
        let n = rng.gen_range(1..=3);
        let (o1, o2) = (rng.gen_range(0..=3), rng.gen_range(0..=3));
        let b1 = random_operator_z(rng, n, o1, 2);
        let b2 = random_operator_z(rng, n, o2, 2);
        let psi = random_wave_matrix(rng, n);
        Ok(apply_z_matrix(&psi, &compose_z(&b1, &b2)?)? == apply_z_matrix(&apply_z_matrix(&psi, &b1)?, &b2)?)
    })
}

fn random_operator_pair(rng: &mut TrialRng) -> (OperatorX, OperatorX) {
    let n = rng.gen_range(1..=3);
    let (o1, o2) = (rng.gen_range(0..=3), rng.gen_range(0..=3));
    (random_operator_x(rng, n, o1, 2), random_operator_x(rng, n, o2, 2))
}

fn degad_formula(trials: u64, seed: u64) -> Vec<Option<Failure>> {
    run_trials(trials, seed, |rng, _| {
        let (l, th) = random_operator_pair(rng);
        let c = commutator_x(&l, &th)?;
        let top = l.order().unwrap_or(0) + th.order().unwrap_or(0);
        for r in -1..=top as i64 + 1 {
            let expected = if r < 0 { MatF::zero(l.n()) } else { c.coeff(r as usize) };
            if degad_coefficient(&l, &th, r)? != expected {
                return Ok(false);
            }
        }
        Ok(true)
    })
}

fn nonzero_x_poly(rng: &mut TrialRng, deg: u32) -> BiFraction {
    let p = random_univariate(rng, Var::X, deg);
    if p.is_zero() {
        BiFraction::one()
    } else {
        p
    }
}

/// Even trials replace the leading coefficient of `Θ` by a scalar function so
/// that `[L_l, θ_m] = 0`.
fn degad_order(trials: u64, seed: u64) -> Vec<Option<Failure>> {
    run_trials(trials, seed, |rng, t| {
        let (l, th) = random_operator_pair(rng);
        let n = l.n();
        let th = if t % 2 == 0 {
            let mut coeffs = th.coeffs().to_vec();
            let top = MatF::scalar(n, nonzero_x_poly(rng, 2));
            match coeffs.last_mut() {
                Some(last) => *last = top,
                None => coeffs.push(top),
            }
            OperatorX::new(n, coeffs)?
        } else {
            th
        };
        let (Some(lo), Some(mo)) = (l.order(), th.order()) else {
            return Ok(commutator_x(&l, &th)?.is_zero());
        };
        let c = commutator_x(&l, &th)?;
        if l.coeff(lo).commutator(&th.coeff(mo))?.is_zero() {
            Ok(c.order().is_none_or(|o| o < lo + mo))
        } else {
            Ok(c.order() == Some(lo + mo))
        }
    })
}

fn below(op: &OperatorX, k: usize) -> MatF {
    if k == 0 {
        MatF::zero(op.n())
    } else {
        op.coeff(k - 1)
    }
}

fn degad_leading(trials: u64, seed: u64) -> Vec<Option<Failure>> {
    run_trials(trials, seed, |rng, _| {
        let (l, th) = random_operator_pair(rng);
        let n = l.n();
        let c = commutator_x(&l, &th)?;
        let mut ok = true;
        if let (Some(lo), Some(mo)) = (l.order(), th.order()) {
            let (ll, tm) = (l.coeff(lo), th.coeff(mo));
            ok &= c.coeff(lo + mo) == ll.commutator(&tm)?;
            if lo + mo >= 1 {
                let next = &below(&l, lo).commutator(&tm)? + &ll.commutator(&below(&th, mo))?;
                let next = &next + &(&ll * &tm.deriv_x()).scale(&BiFraction::int(lo as i64));
                let next = &next - &(&tm * &ll.deriv_x()).scale(&BiFraction::int(mo as i64));
                ok &= c.coeff(lo + mo - 1) == next;
            }
        }
        // normalized L: scalar constant top coefficient, vanishing next one
        let order = rng.gen_range(1..=3);
        let lead = rat(rng.gen_range(1..=4)) * rat(if rng.gen_bool(0.5) { 1 } else { -1 });
        let mut coeffs: Vec<MatF> = (0..order).map(|_| random_univariate_matrix(rng, n, Var::X, 2)).collect();
        coeffs[order - 1] = MatF::zero(n);
        coeffs.push(MatF::scalar(n, BiFraction::constant(lead.clone())));
        let lnorm = OperatorX::new(n, coeffs)?;
        let theta0 = random_univariate_matrix(rng, n, Var::X, 3);
        let c = commutator_x(&lnorm, &OperatorX::multiplication(theta0.clone())?)?;
        ok &= c.coeff(order - 1) == theta0.deriv_x().scale(&BiFraction::constant(lead * rat(order as i64)));
        Ok(ok)
    })
}

fn mono(c: QMatrix, d: usize) -> ThetaPoly {
    MatPoly::monomial(c, d, Var::X)
}

fn pk0(trials: u64, seed: u64) -> Vec<Option<Failure>> {
    run_trials(trials, seed, |rng, _| {
        let nd = random_nd(rng);
        let d = nd.degree();
        let k = rng.gen_range(0..=4);
        let th = random_theta(rng, nd.n(), k + d + 1);
        let mut aux = mono(th.coeff(k + 1).scale(&rat(k as i64 + 1)), 1);
        for r in 2..=d {
            aux = &aux + &mono(th.coeff(r + k), r);
        }
        Ok(p_k(&th, &nd, k)? == p_k(&aux, &nd, 0)?)
    })
}

/// `Σ_{s ∈ range} [P_k(x^s a) c_s(b) + c_s(a) P_k(x^s b)]`
fn paired_sum(a: &ThetaPoly, b: &ThetaPoly, nd: &NilpotentData, k: usize, range: std::ops::RangeInclusive<usize>) -> Result<QMatrix> {
    let mut acc = QMatrix::zero(nd.n());
    for s in range {
        acc.add_assign_ref(&(&p_k(&a.shift(s), nd, k)? * &b.coeff(s)));
        acc.add_assign_ref(&(&a.coeff(s) * &p_k(&b.shift(s), nd, k)?));
    }
    Ok(acc)
}

fn product_p0(trials: u64, seed: u64) -> Vec<Option<Failure>> {
    run_trials(trials, seed, |rng, _| {
        let nd = random_nd(rng);
        let d = nd.degree();
        let (a, b) = (random_theta(rng, nd.n(), 2 * d + 1), random_theta(rng, nd.n(), 2 * d + 1));
        let ab = &a * &b;
        let rhs = &paired_sum(&a, &b, &nd, 0, 0..=d)? - &ab.coeff(1);
        Ok(p_k(&ab, &nd, 0)? == rhs)
    })
}

fn product_pk(trials: u64, seed: u64) -> Vec<Option<Failure>> {
    run_trials(trials, seed, |rng, _| {
        let nd = random_nd(rng);
        let d = nd.degree();
        let k = rng.gen_range(0..=3);
        let (a, b) = (random_theta(rng, nd.n(), k + d + 2), random_theta(rng, nd.n(), k + d + 2));
        let ab = &a * &b;
        let rhs = &paired_sum(&a, &b, &nd, k, 0..=k + d)? - &ab.coeff(k + 1).scale(&rat(k as i64 + 1));
        Ok(p_k(&ab, &nd, k)? == rhs)
    })
}

/// Trial `t` exercises branch `t mod 3`: `t ≤ k`, `t = k+1`, `t ≥ k+2`.
fn translation(trials: u64, seed: u64) -> Vec<Option<Failure>> {
    run_trials(trials, seed, |rng, trial| {
        let nd = random_nd(rng);
        let d = nd.degree();
        let k = rng.gen_range(0..=3);
        let th = random_theta(rng, nd.n(), k + d + 2);
        let p = |q: &ThetaPoly, j: usize| p_k(q, &nd, j);
        let (t, rhs) = match trial % 3 {
            0 => {
                let t = rng.gen_range(0..=k);
                let head = p(&mono(th.coeff(k + 1 - t), k + 1), k)?;
                let rhs = &(&head + &p(&th, k - t)?) - &th.coeff(k - t + 1).scale(&rat((k - t + 1) as i64));
                (t, rhs)
            }
            1 => {
                let t = k + 1;
                let rest = (&th - &MatPoly::constant(th.coeff(0), Var::X)).shift(1);
                (t, &p(&mono(th.coeff(0), k + 1), k)? + &p(&rest, 0)?)
            }
            _ => {
                let t = rng.gen_range(k + 2..=k + 4);
                (t, p(&th.shift(t - k), 0)?)
            }
        };
        Ok(p(&th.shift(t), k)? == rhs)
    })
}

fn p0_from_pk(trials: u64, seed: u64) -> Vec<Option<Failure>> {
    run_trials(trials, seed, |rng, _| {
        let nd = random_nd(rng);
        let k = rng.gen_range(0..=4);
        let th = random_theta(rng, nd.n(), nd.degree() + 2);
        let lead = p_k(&mono(th.coeff(1), k + 1), &nd, k)?.scale(&ratio(-(k as i64), k as i64 + 1));
        let rest = (&th - &MatPoly::constant(th.coeff(0), Var::X)).shift(k);
        Ok(p_k(&th, &nd, 0)? == &lead + &p_k(&rest, &nd, k)?)
    })
}

fn zero1(trials: u64, seed: u64) -> Vec<Option<Failure>> {
    run_trials(trials, seed, |rng, _| {
        let nd = random_nd(rng);
        let d = nd.degree();
        let du = rng.gen_range(1..=2 * d + 1);
        let u = random_poly_vanishing_at_zero(rng, nd.n(), du, 5);
        let b = random_theta(rng, nd.n(), 2 * d + 1);
        let mut rhs = &p_k(&u, &nd, 0)? * &b.coeff(0);
        rhs.sub_assign_ref(&(&u.coeff(1) * &p_k(&mono(b.coeff(0), 1), &nd, 0)?));
        rhs.add_assign_ref(&paired_sum(&u, &b, &nd, 0, 1..=d)?);
        Ok(p_k(&(&u * &b), &nd, 0)? == rhs)
    })
}

fn zero12(trials: u64, seed: u64) -> Vec<Option<Failure>> {
    run_trials(trials, seed, |rng, _| {
        let nd = random_nd(rng);
        let d = nd.degree();
        let (d1, d2) = (rng.gen_range(1..=2 * d + 1), rng.gen_range(1..=2 * d + 1));
        let u1 = random_poly_vanishing_at_zero(rng, nd.n(), d1, 5);
        let u2 = random_poly_vanishing_at_zero(rng, nd.n(), d2, 5);
        Ok(p_k(&(&u1 * &u2), &nd, 0)? == paired_sum(&u1, &u2, &nd, 0, 1..=d)?)
    })
}

fn constant_factor(trials: u64, seed: u64) -> Vec<Option<Failure>> {
    run_trials(trials, seed, |rng, _| {
        let nd = random_nd(rng);
        let c = int_matrix(rng, nd.n(), 5);
        let b = random_theta(rng, nd.n(), 2 * nd.degree() + 1);
        let mut rhs = &c * &p_k(&b, &nd, 0)?;
        for s in 2..=nd.degree() {
            rhs.add_assign_ref(&(&p_k(&mono(c.clone(), s), &nd, 0)? * &b.coeff(s)));
        }
        Ok(p_k(&b.left_mul(&c), &nd, 0)? == rhs)
    })
}

/// Tail top drawn from `2D-1..=2D+3`; `2D-1` means no tail.
fn random_member_up_to(rng: &mut TrialRng, nd: &NilpotentData, basis: &[ThetaPoly], top: usize) -> ThetaPoly {
    let lo = 2 * nd.degree() - 1;
    let tail_top = rng.gen_range(lo..=top.max(lo));
    random_member(rng, nd, basis, tail_top)
}

/// Even trials draw members, odd trials non-members; configurations cycle.
fn formulation(trials: u64, seed: u64) -> Vec<Option<Failure>> {
    let ctx = with_bases(standard_configurations());
    run_trials(trials, seed, |rng, t| {
        let (nd, basis) = &ctx[(t / 2) as usize % ctx.len()];
        let member = t % 2 == 0;
        let th = if member {
            random_member_up_to(rng, nd, basis, 2 * nd.degree() + 3)
        } else {
            random_nonmember(rng, nd)
        };
        let rel = gamma_membership(&th, nd)?;
        Ok(rel == gamma_membership_theoremgen(&th, nd)? && rel == member)
    })
}

fn gamma_closed(trials: u64, seed: u64) -> Vec<Option<Failure>> {
    let ctx = with_bases(standard_configurations());
    run_trials(trials, seed, |rng, t| {
        let (nd, basis) = &ctx[t as usize % ctx.len()];
        let a = random_member_up_to(rng, nd, basis, 2 * nd.degree() + 1);
        let b = random_member_up_to(rng, nd, basis, 2 * nd.degree() + 1);
        gamma_membership(&(&a * &b), nd)
    })
}

/// Trial `t` uses configuration `t mod 4` of [`standard_configurations`].
fn build_b_suite(trials: u64, seed: u64) -> Vec<Option<Failure>> {
    let ctx = with_bases(standard_configurations());
    let waves: Vec<_> = ctx.iter().map(|(nd, _)| wave(nd)).collect();
    run_trials(trials, seed, |rng, t| {
        let i = t as usize % ctx.len();
        let (nd, basis) = &ctx[i];
        let th = random_member_up_to(rng, nd, basis, 2 * nd.degree() + 3);
        check_right_eigen(&waves[i], &build_b(&th, nd, false)?, &th.to_matf())
    })
}

/// `ψB - θψ = e^{xz} x^{-D} Σ_q (first_q + z^{-1} second_q) x^q` for `deg θ < 2D`.
pub fn residual_expansion(theta: &ThetaPoly, nd: &NilpotentData) -> Result<MatF> {
    let rel = gamma_relations(theta, nd)?;
    let d = nd.degree() as i32;
    let mut acc = MatF::zero(nd.n());
    for (q, (f, s)) in rel.first.iter().zip(&rel.second).enumerate() {
        let q = q as i32;
        acc = &acc + &MatF::from(f).scale(&x_pow(q - d));
        acc = &acc + &MatF::from(s).scale(&BiFraction::monomial(rat(1), q - d, -1));
    }
    Ok(acc)
}

fn residual(trials: u64, seed: u64) -> Vec<Option<Failure>> {
    let configs = standard_configurations();
    run_trials(trials, seed, |rng, t| {
        let nd = &configs[t as usize % configs.len()];
        let th = random_nonmember(rng, nd);
        let b = build_b(&th, nd, true)?;
        Ok(right_residual(&wave(nd), &b, &th.to_matf())? == residual_expansion(&th, nd)?)
    })
}

fn small_shift_contexts() -> Vec<(NilpotentData, Vec<ThetaPoly>)> {
    with_bases(vec![NilpotentData::shift(2).expect("valid"), NilpotentData::shift(3).expect("valid")])
}

/// Members of degree at most 5 for `(S_2,2)` and `(S_3,3)`, alternating.
fn ad_condition(trials: u64, seed: u64) -> Vec<Option<Failure>> {
    let ctx = small_shift_contexts();
    run_trials(trials, seed, |rng, t| {
        let (nd, basis) = &ctx[t as usize % ctx.len()];
        let th = random_member_up_to(rng, nd, basis, 5);
        let op = OperatorX::multiplication(th.to_matf())?;
        Ok(ad_power(&schrodinger(nd), &op, th.degree() + 1)?.is_zero())
    })
}

fn ad_identity(trials: u64, seed: u64) -> Vec<Option<Failure>> {
    let ctx = small_shift_contexts();
    run_trials(trials, seed, |rng, t| {
        let (nd, basis) = &ctx[t as usize % ctx.len()];
        let th = random_member_up_to(rng, nd, basis, 5);
        let (l, psi) = (schrodinger(nd), wave(nd));
        let op = OperatorX::multiplication(th.to_matf())?;
        let b = build_b(&th, nd, false)?;
        let f = OperatorZ::multiplication(MatF::scalar(nd.n(), BiFraction::monomial(rat(-1), 0, 2)))?;
        for r in 1..=3 {
            let lhs = apply_x_matrix(&ad_power(&l, &op, r)?, psi.matrix())?;
            if lhs != apply_z_matrix(psi.matrix(), &ad_power_z(&f, &b, r)?)? {
                return Ok(false);
            }
        }
        Ok(true)
    })
}

/// With `L = L_2 ∂² + L_0`, `L_2` scalar: the `∂^{k+1}` coefficient of
/// `(ad L)^{k+1}(θ)` is `(2 L_2)^{k+1} θ^{(k+1)}`.
fn leading_recursion(trials: u64, seed: u64) -> Vec<Option<Failure>> {
    let configs = [NilpotentData::shift(2).expect("valid"), NilpotentData::shift(3).expect("valid")];
    run_trials(trials, seed, |rng, t| {
        let nd = &configs[t as usize % configs.len()];
        let l = schrodinger(nd);
        let th = random_theta(rng, nd.n(), 4).to_matf();
        let op = OperatorX::multiplication(th.clone())?;
        for k in 0..=2usize {
            let mut deriv = th.clone();
            for _ in 0..=k {
                deriv = deriv.deriv_x();
            }
            let expected = &l.coeff(2).scale(&BiFraction::int(2)).pow(k as u32 + 1) * &deriv;
            if ad_power(&l, &op, k + 1)?.coeff(k + 1) != expected {
                return Ok(false);
            }
        }
        Ok(true)
    })
}

fn random_calogero_member(rng: &mut TrialRng, tail_degree: Option<usize>) -> MatPoly {
    let mut f = MatPoly::zero(2, Var::Z);
    for a in basis_e_c() {
        f = &f + &a.scale(&rat(rng.gen_range(-5..=5)));
    }
    if let Some(deg) = tail_degree {
        f = &f + &random_poly(rng, 2, deg, 5, Var::Z).shift(3);
    }
    f
}

fn calogero_build_l(trials: u64, seed: u64) -> Vec<Option<Failure>> {
    let psi = calogero_wave();
    run_trials(trials, seed, |rng, _| {
        let f = random_calogero_member(rng, None);
        check_left_eigen(&build_l(&f)?, &psi, &f.to_matf())
    })
}

fn calogero_linearity(trials: u64, seed: u64) -> Vec<Option<Failure>> {
    run_trials(trials, seed, |rng, _| {
        let (f1, f2) = (random_calogero_member(rng, None), random_calogero_member(rng, None));
        Ok(build_l(&(&f1 + &f2))? == &build_l(&f1)? + &build_l(&f2)?)
    })
}

fn calogero_closed(trials: u64, seed: u64) -> Vec<Option<Failure>> {
    run_trials(trials, seed, |rng, _| {
        let (d1, d2) = (rng.gen_range(0..=1), rng.gen_range(0..=1));
        let f1 = random_calogero_member(rng, Some(d1));
        let f2 = random_calogero_member(rng, Some(d2));
        gamma_c_membership(&(&f1 * &f2))
    })
}

/// Alternates `generators(2)` at cap 8 and `generators(3)` at cap 12.
fn closure_order(trials: u64, seed: u64) -> Vec<Option<Failure>> {
    let reference: Vec<_> = [2usize, 3]
        .into_par_iter()
        .map(|n| {
            let gens = generators(n).expect("n >= 2");
            let basis = span_close(&gens, 4 * n, true).expect("within cap");
            (gens, basis)
        })
        .collect();
    run_trials(trials, seed, |rng, t| {
        let (gens, basis) = &reference[t as usize % reference.len()];
        let mut shuffled = gens.clone();
        shuffled.shuffle(rng);
        let other = span_close(&shuffled, basis.cap(), true)?;
        if other.rank() != basis.rank() {
            return Ok(false);
        }
        for e in other.elements() {
            if !basis.contains(&e)? {
                return Ok(false);
            }
        }
        Ok(true)
    })
}

fn closure_monotone(trials: u64, seed: u64) -> Vec<Option<Failure>> {
    let gens = generators(2).expect("n >= 2");
    run_trials(trials, seed, |rng, _| {
        let small = rng.gen_range(4..=8);
        let large = rng.gen_range(small..=small + 3);
        let (a, b) = (span_close(&gens, small, true)?, span_close(&gens, large, true)?);
        for e in a.elements() {
            if !b.contains(&e)? {
                return Ok(false);
            }
        }
        // random probes: containment at the small cap implies it at the large one
        for _ in 0..4 {
            let probe = if rng.gen_bool(0.5) {
                let i = rng.gen_range(0..a.rank());
                &a.elements()[i] + &MatPoly::monomial(int_matrix(rng, 2, 1), rng.gen_range(4..=small), Var::X)
            } else {
                random_poly(rng, 2, small, 1, Var::X)
            };
            if a.contains(&probe)? && !b.contains(&probe)? {
                return Ok(false);
            }
        }
        Ok(true)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_suite_passes_a_few_trials() {
        for name in suite_names() {
            let r = run_suite(name, 4, 11).unwrap();
            assert!(r.all_passed(), "{name}: {:?}", r.failures);
        }
    }

    #[test]
    fn reports_are_reproducible() {
        assert_eq!(run_suite("pk0", 6, 3).unwrap(), run_suite("pk0", 6, 3).unwrap());
    }

    #[test]
    fn unknown_suite() {
        assert!(run_suite("nope", 1, 0).is_err());
    }
}

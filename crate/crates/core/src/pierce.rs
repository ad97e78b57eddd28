//! Pierce idempotents of the eigenvalue algebra for `(S_N, N)` and the
//! generator family whose span covers `x^{2N} M_N(ℚ[x])`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matpoly::{MatPoly, ThetaPoly, Var};
use crate::matrix::MatF;
use crate::nilpotent::{gamma_relations, theoremgen_conditions, NilpotentData};
use crate::qmatrix::QMatrix;
use crate::rational::{rat, ratio, sign};

fn delta(a: usize, b: usize) -> bool {
    a == b
}

/// `a_{kj} = (-1)^{j+1}(δ_{k,j+1} e_{k1} + δ_{k,N-j} e_{Nk}) + (-1)^j δ_{N,j+1} e_{N1}`
fn a_kj(n: usize, k: usize, j: usize) -> QMatrix {
    let e = |i: usize, j: usize| QMatrix::unit(n, i as i64, j as i64);
    let mut out = QMatrix::zero(n);
    if delta(k, j + 1) {
        out.add_assign_ref(&e(k, 1));
    }
    if n >= j && delta(k, n - j) {
        out.add_assign_ref(&e(n, k));
    }
    out = out.scale(&sign(j as i64 + 1));
    if delta(n, j + 1) {
        out.add_assign_ref(&e(n, 1).scale(&sign(j as i64)));
    }
    out
}

/// `α_k = e_{kk} + Σ_{j=1}^{N-1} a_{kj} x^j` for `2 ≤ k ≤ N-1`, and
/// `α_1 = I - Σ_{k≥2} α_k`.
pub fn pierce_alpha(n: usize, k: usize) -> Result<ThetaPoly> {
    if n < 3 || k < 1 || k >= n {
        return Err(Error::OutOfRange(format!("pierce_alpha needs N >= 3 and 1 <= k <= N-1, got N={n}, k={k}")));
    }
    if k == 1 {
        let rest = (2..n).fold(MatPoly::zero(n, Var::X), |acc, k| &acc + &pierce_alpha(n, k).expect("in range"));
        return Ok(&MatPoly::identity(n, Var::X) - &rest);
    }
    let mut coeffs = vec![QMatrix::unit(n, k as i64, k as i64)];
    coeffs.extend((1..n).map(|j| a_kj(n, k, j)));
    MatPoly::new(n, Var::X, coeffs)
}

/// Closed form of `P_l(α_k)` for `(S_N, N)`, `2 ≤ k ≤ N-1`, `0 ≤ l ≤ N-2`.
/// Matrix units outside `1..=N` vanish.
pub fn p_l_alpha_closed(n: usize, k: usize, l: usize) -> Result<QMatrix> {
    if n < 3 || k < 2 || k >= n || l > n - 2 {
        return Err(Error::OutOfRange(format!(
            "p_l_alpha_closed needs N >= 3, 2 <= k <= N-1, 0 <= l <= N-2, got N={n}, k={k}, l={l}"
        )));
    }
    let (ni, ki, li) = (n as i64, k as i64, l as i64);
    let e = |i: i64, j: i64| QMatrix::unit(n, i, j);
    let s = |p: i64| sign(p);
    // Branches shared by all three tables.
    if li == ni - 2 {
        return Ok(e(ni, 1).scale(&(rat(ni - 1) * s(ni - 1))));
    }
    let upper = |lo: i64| (lo <= li && li <= ni - 3).then(|| (&e(ni, ni - li - 1) - &e(li + 2, 1)).scale(&s(li + 1)));
    let out = if 2 * ki < ni + 1 {
        if li <= ki - 3 {
            (&e(ki, ki - li - 1) - &e(ki + li + 1, ki)).scale(&s(li))
        } else if li == ki - 2 {
            &e(ki, 1).scale(&(s(ki) * rat(ki))) + &e(2 * ki - 1, ki).scale(&s(ki + 1))
        } else if li <= ni - ki - 2 {
            (&e(li + 2, 1) - &e(ki + li + 1, ki)).scale(&s(li))
        } else if li == ni - ki - 1 {
            &e(ni, ki).scale(&(rat(ni - ki - 1) * s(ni - ki - 1))) + &e(ni - ki + 1, 1).scale(&s(ni - ki + 1))
        } else {
            upper(ni - ki).expect("branches cover the range")
        }
    } else if 2 * ki == ni + 1 {
        let h = (ni + 1) / 2;
        if li <= ki - 3 {
            (&e(h, (ni - 1) / 2 - li) - &e((ni + 3) / 2 + li, h)).scale(&s(li))
        } else if li == ki - 2 {
            &e(ni, h).scale(&(ratio(ni - 3, 2) * s(h))) + &e(h, 1).scale(&(ratio(ni + 1, 2) * s(h)))
        } else {
            upper(ni - ki).expect("branches cover the range")
        }
    } else if li <= ni - ki - 2 {
        (&e(ki, ki - li - 1) - &e(ki + li + 1, ki)).scale(&s(li))
    } else if li == ni - ki - 1 {
        &e(ni, ki).scale(&(rat(ni - ki - 1) * s(ni - ki + 1))) + &e(ki, 2 * ki - ni).scale(&s(ni - ki + 1))
    } else if li <= ki - 3 {
        (&e(ki, ki - li - 1) - &e(ni, ni - li - 1)).scale(&s(li))
    } else if li == ki - 2 {
        &e(ki, 1).scale(&(rat(ki) * s(ki))) + &e(ni, ni - ki + 1).scale(&s(ki + 1))
    } else {
        upper(ki - 1).expect("branches cover the range")
    };
    Ok(out)
}

/// `α_0 = S_N`, `α_1 = Ix + (-1)^N e_{N1} x^N`, `α_k = e_{1N} x^k` for
/// `2 ≤ k ≤ N-1`, then `β_k = e_{kk} x^N + (-1)^N e_{N1} x^{2N-1}` for `k = 1..N`.
pub fn generators(n: usize) -> Result<Vec<ThetaPoly>> {
    let s = crate::nilpotent::shift_matrix(n)?;
    let ni = n as i64;
    let en1 = QMatrix::unit(n, ni, 1).scale(&sign(ni));
    let mut out = vec![MatPoly::constant(s, Var::X)];
    out.push(&MatPoly::monomial(QMatrix::identity(n), 1, Var::X) + &MatPoly::monomial(en1.clone(), n, Var::X));
    for k in 2..n {
        out.push(MatPoly::monomial(QMatrix::unit(n, 1, ni), k, Var::X));
    }
    for k in 1..=ni {
        out.push(&MatPoly::monomial(QMatrix::unit(n, k, k), n, Var::X) + &MatPoly::monomial(en1.clone(), 2 * n - 1, Var::X));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub residual: Option<MatF>,
}

impl Check {
    fn from_residual(name: String, residual: MatF) -> Self {
        let pass = residual.is_zero();
        Check { name, pass, residual: (!pass).then_some(residual) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PierceReport {
    pub n: usize,
    pub checks: Vec<Check>,
}

impl PierceReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Idempotency, orthogonality, completeness, and membership of each `α_k`.
pub fn verify_pierce(n: usize) -> Result<PierceReport> {
    if n == 2 {
        return Ok(PierceReport {
            n,
            checks: vec![Check { name: "N = 2: decomposition is {I}".into(), pass: true, residual: None }],
        });
    }
    let alphas: Vec<ThetaPoly> = (1..n).map(|k| pierce_alpha(n, k)).collect::<Result<_>>()?;
    verify_idempotents(n, &alphas)
}

/// The four Pierce checks on an arbitrary list `α_1..α_{N-1}`.
pub fn verify_idempotents(n: usize, alphas: &[ThetaPoly]) -> Result<PierceReport> {
    let nd = NilpotentData::shift(n)?;
    let mut checks = Vec::new();
    for (i, a) in alphas.iter().enumerate() {
        checks.push(Check::from_residual(format!("alpha_{} idempotent", i + 1), (&(a * a) - a).to_matf()));
    }
    for (i, a) in alphas.iter().enumerate() {
        for (j, b) in alphas.iter().enumerate() {
            if i != j {
                checks.push(Check::from_residual(format!("alpha_{} alpha_{} = 0", i + 1, j + 1), (a * b).to_matf()));
            }
        }
    }
    let sum = alphas.iter().fold(MatPoly::zero(n, Var::X), |acc, a| &acc + a);
    checks.push(Check::from_residual("sum alpha_k = I".into(), (&sum - &MatPoly::identity(n, Var::X)).to_matf()));
    for (i, a) in alphas.iter().enumerate() {
        let rel = gamma_relations(a, &nd)?;
        let first_bad = rel.first.iter().chain(&rel.second).find(|m| !m.is_zero());
        let gen_ok = theoremgen_conditions(a, &nd)?.iter().all(|c| c.residual.is_zero());
        let residual = first_bad.map(MatF::from);
        checks.push(Check {
            name: format!("alpha_{} in Gamma", i + 1),
            pass: residual.is_none() && gen_ok,
            residual,
        });
    }
    Ok(PierceReport { n, checks })
}

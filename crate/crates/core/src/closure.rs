//! Degree-capped span closure of finitely generated matrix-polynomial algebras.
//!
//! Vectors live in the ambient space with basis `e_{ij} t^d`, `0 ≤ d ≤ cap`,
//! ordered by `(d, i, j)`. The echelon pivot of a row is its highest nonzero
//! coordinate, so the rows of degree `≤ d` span exactly the elements of the
//! closure of degree `≤ d`. Products of degree above the cap are discarded.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::linalg::Echelon;
use crate::matpoly::{MatPoly, ThetaPoly, Var};
use crate::nilpotent::{basis_e, NilpotentData};
use crate::pierce::generators;
use crate::qmatrix::QMatrix;
use crate::rational::{format_rational, parse_rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanBasis {
    cap: usize,
    n: usize,
    var: Var,
    echelon: Echelon,
}

impl SpanBasis {
    pub fn new(n: usize, var: Var, cap: usize) -> Self {
        SpanBasis { cap, n, var, echelon: Echelon::new(n * n * (cap + 1)) }
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn dim_ambient(&self) -> usize {
        self.echelon.dim()
    }

    pub fn rank(&self) -> usize {
        self.echelon.rank()
    }

    /// Basis rows as matrix polynomials.
    pub fn elements(&self) -> Vec<MatPoly> {
        self.echelon.rows().iter().map(|r| MatPoly::from_ambient(self.n, self.var, r)).collect()
    }

    fn vector(&self, theta: &MatPoly) -> Result<Vec<crate::rational::Rational>> {
        check_dim(self.n, theta.n())?;
        if theta.var() != self.var {
            return Err(Error::VariableDependence("matrix polynomial in the wrong variable".into()));
        }
        theta.to_ambient(self.cap)
    }

    pub fn contains(&self, theta: &MatPoly) -> Result<bool> {
        Ok(self.echelon.contains(&self.vector(theta)?))
    }

    /// Adjoin `theta`; returns whether the rank grew.
    pub fn insert(&mut self, theta: &MatPoly) -> Result<bool> {
        let v = self.vector(theta)?;
        Ok(self.echelon.insert(&v))
    }
}

pub fn contains(basis: &SpanBasis, theta: &MatPoly) -> Result<bool> {
    basis.contains(theta)
}

/// Smallest subspace containing `gens` (and `I` if requested) that is closed
/// under left and right multiplication by every generator, among products of
/// degree at most `cap`.
pub fn span_close(gens: &[MatPoly], cap: usize, with_identity: bool) -> Result<SpanBasis> {
    let Some(first) = gens.first() else {
        return Err(Error::OutOfRange("span closure needs at least one generator".into()));
    };
    let (n, var) = (first.n(), first.var());
    if let Some(g) = gens.iter().find(|g| !g.is_zero() && g.degree() > cap) {
        return Err(Error::DegreeOverflow { degree: g.degree(), cap });
    }
    let mut basis = SpanBasis::new(n, var, cap);
    let mut work = VecDeque::new();
    let seeds = gens.iter().cloned().chain(with_identity.then(|| MatPoly::identity(n, var)));
    for g in seeds {
        if basis.insert(&g)? {
            work.push_back(g);
        }
    }
    while let Some(b) = work.pop_front() {
        for g in gens {
            for p in [g.checked_mul(&b)?, b.checked_mul(g)?] {
                if p.is_zero() || p.degree() > cap {
                    continue;
                }
                if basis.insert(&p)? {
                    work.push_back(p);
                }
            }
        }
    }
    Ok(basis)
}

/// Which `e_{ij} t^d`, `from ≤ d ≤ to`, a closure contains.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TailReport {
    pub n: usize,
    pub cap: usize,
    pub rank: usize,
    pub from: usize,
    pub to: usize,
    /// Missing units as `[i, j, d]` with 1-based `i, j`.
    pub missing: Vec<[usize; 3]>,
    pub pass: bool,
}

pub fn certify_tail(basis: &SpanBasis, from: usize, to: usize) -> Result<TailReport> {
    if to > basis.cap || from > to {
        return Err(Error::OutOfRange(format!("certified range {from}..={to} must lie within cap {}", basis.cap)));
    }
    let n = basis.n;
    let mut missing = Vec::new();
    for d in from..=to {
        for i in 1..=n {
            for j in 1..=n {
                let unit = MatPoly::monomial(QMatrix::unit(n, i as i64, j as i64), d, basis.var);
                if !basis.contains(&unit)? {
                    missing.push([i, j, d]);
                }
            }
        }
    }
    Ok(TailReport { n, cap: basis.cap, rank: basis.rank(), from, to, pass: missing.is_empty(), missing })
}

/// Closure of `generators(N)` at `cap` (default `4N+2`), certified on
/// `2N ≤ d ≤ cap - 2N`.
pub fn certify_generators(n: usize, cap: Option<usize>) -> Result<TailReport> {
    let cap = cap.unwrap_or(4 * n + 2);
    if cap < 4 * n {
        return Err(Error::OutOfRange(format!("cap must be at least 4N = {}", 4 * n)));
    }
    let basis = span_close(&generators(n)?, cap, true)?;
    certify_tail(&basis, 2 * n, cap - 2 * n)
}

/// Closure of `generators` at `cap`, certified on `2D ≤ d ≤ cap - 2D`.
pub fn certify_tail_from(gens: &[ThetaPoly], d: usize, cap: usize) -> Result<TailReport> {
    if cap < 4 * d {
        return Err(Error::OutOfRange(format!("cap must be at least 4D = {}", 4 * d)));
    }
    let basis = span_close(gens, cap, true)?;
    certify_tail(&basis, 2 * d, cap - 2 * d)
}

/// The algebra generated by the finite-dimensional head `E` of Γ covers every
/// `e_{ij} x^d` for `2D ≤ d ≤ cap - 2D`.
pub fn check_full_rank_one(nd: &NilpotentData, cap: usize) -> Result<TailReport> {
    certify_tail_from(&basis_e(nd), nd.degree(), cap)
}

#[derive(Serialize, Deserialize)]
struct SpanRepr {
    cap: usize,
    n: usize,
    #[serde(default, skip_serializing_if = "is_x")]
    var: Var,
    rows: Vec<Vec<String>>,
}

fn is_x(v: &Var) -> bool {
    *v == Var::X
}

impl Serialize for SpanBasis {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SpanRepr {
            cap: self.cap,
            n: self.n,
            var: self.var,
            rows: self.echelon.rows().iter().map(|r| r.iter().map(format_rational).collect()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SpanBasis {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = SpanRepr::deserialize(d)?;
        let mut basis = SpanBasis::new(r.n, r.var, r.cap);
        for row in r.rows {
            let v = row.iter().map(|c| parse_rational(c)).collect::<Result<Vec<_>>>().map_err(D::Error::custom)?;
            check_dim(basis.dim_ambient(), v.len()).map_err(D::Error::custom)?;
            basis.echelon.insert(&v);
        }
        Ok(basis)
    }
}

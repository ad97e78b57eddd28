//! Exact elimination over the rationals.
//!
//! Forward elimination is fraction-free (Bareiss) on integer-scaled rows; the
//! echelon form is then normalized to unit pivots and back-substituted.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::rational::Rational;

/// Reduced row-echelon form of the rows of `a` (each of length `cols`), with
/// the pivot column of every nonzero row. Zero rows are dropped.
pub fn rref(a: &[Vec<Rational>], cols: usize) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let mut m: Vec<Vec<BigInt>> = a.iter().map(|r| integer_row(r, cols)).collect();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut row = 0;
    for c in 0..cols {
        let Some(p) = (row..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let (top, rest) = m.split_at_mut(row + 1);
        let pr = &top[row];
        for r in rest.iter_mut() {
            let f = r[c].clone();
            for j in c..cols {
                let v = (&pr[c] * &r[j] - &f * &pr[j]) / &prev;
                r[j] = v;
            }
        }
        prev = m[row][c].clone();
        pivots.push(c);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    let mut out: Vec<Vec<Rational>> = m
        .into_iter()
        .take(row)
        .zip(&pivots)
        .map(|(r, &pc)| {
            let lead = r[pc].clone();
            r.into_iter().map(|v| Rational::new(v, lead.clone())).collect()
        })
        .collect();
    for k in (0..out.len()).rev() {
        let pc = pivots[k];
        let (above, below) = out.split_at_mut(k);
        let pr = &below[0];
        for r in above.iter_mut() {
            if r[pc].is_zero() {
                continue;
            }
            let f = r[pc].clone();
            for j in pc..cols {
                if !pr[j].is_zero() {
                    r[j] -= &f * &pr[j];
                }
            }
        }
    }
    (out, pivots)
}

fn integer_row(r: &[Rational], cols: usize) -> Vec<BigInt> {
    assert_eq!(r.len(), cols, "row length mismatch");
    let l = r.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    r.iter().map(|v| v.numer() * (&l / v.denom())).collect()
}

pub fn rank(a: &[Vec<Rational>], cols: usize) -> usize {
    rref(a, cols).1.len()
}

/// Reduced echelon basis of `{v : A v = 0}` for `A` with `cols` columns.
pub fn nullspace(a: &[Vec<Rational>], cols: usize) -> Vec<Vec<Rational>> {
    let (r, pivots) = rref(a, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let raw: Vec<Vec<Rational>> = free
        .iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); cols];
            v[f] = Rational::one();
            for (row, &pc) in r.iter().zip(&pivots) {
                v[pc] = -row[f].clone();
            }
            v
        })
        .collect();
    rref(&raw, cols).0
}

/// Incrementally maintained echelon basis whose pivot is the *last* nonzero
/// coordinate of each row. Rows are kept fully reduced, with unit pivots and
/// pivot columns increasing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Echelon {
    dim: usize,
    rows: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(dim: usize) -> Self {
        Echelon { dim, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Residual of `v` after reduction against the basis.
    pub fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.dim, "vector length mismatch");
        let mut v = v.to_vec();
        for (row, &pc) in self.rows.iter().zip(&self.pivots).rev() {
            if v[pc].is_zero() {
                continue;
            }
            let f = v[pc].clone();
            for j in 0..=pc {
                if !row[j].is_zero() {
                    v[j] -= &f * &row[j];
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Adjoin `v`; returns whether the rank grew.
    pub fn insert(&mut self, v: &[Rational]) -> bool {
        let mut r = self.reduce(v);
        let Some(pc) = r.iter().rposition(|c| !c.is_zero()) else {
            return false;
        };
        let lead = r[pc].clone();
        for c in r.iter_mut().take(pc + 1) {
            *c /= &lead;
        }
        for row in &mut self.rows {
            if row[pc].is_zero() {
                continue;
            }
            let f = row[pc].clone();
            for j in 0..=pc {
                if !r[j].is_zero() {
                    row[j] -= &f * &r[j];
                }
            }
        }
        let at = self.pivots.partition_point(|&p| p < pc);
        self.pivots.insert(at, pc);
        self.rows.insert(at, r);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ratio};

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&v| rat(v)).collect()).collect()
    }

    #[test]
    fn nullspace_examples() {
        assert!(nullspace(&m(&[&[1, 0], &[0, 1]]), 2).is_empty());
        assert_eq!(nullspace(&m(&[&[1, 1]]), 2), m(&[&[1, -1]]));
        assert_eq!(nullspace(&m(&[&[0, 0, 0], &[0, 0, 0]]), 3).len(), 3);
    }

    #[test]
    fn rref_with_fractions() {
        let a = vec![vec![ratio(1, 2), rat(1), rat(3)], vec![rat(2), rat(4), ratio(1, 3)]];
        let (r, p) = rref(&a, 3);
        assert_eq!(p, vec![0, 2]);
        assert_eq!(r[0], vec![rat(1), rat(2), rat(0)]);
        assert_eq!(r[1], vec![rat(0), rat(0), rat(1)]);
    }

    #[test]
    fn echelon_trailing_pivots() {
        let mut e = Echelon::new(3);
        assert!(e.insert(&[rat(1), rat(0), rat(1)]));
        assert!(e.insert(&[rat(0), rat(1), rat(1)]));
        assert!(!e.insert(&[rat(1), rat(-1), rat(0)]));
        assert_eq!(e.rank(), 2);
        assert_eq!(e.pivots(), &[1, 2]);
        assert!(e.contains(&[rat(2), rat(3), rat(5)]));
        assert!(!e.contains(&[rat(1), rat(0), rat(0)]));
    }
}

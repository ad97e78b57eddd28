#![allow(dead_code)]
//! Hand-transcribed parameter families and the Calogero product table.

use bispectral_core::calogero::basis_e_c;
use bispectral_core::rational::{rat, ratio};
use bispectral_core::{MatPoly, QMatrix, Var};

pub fn q(rows: Vec<Vec<i64>>) -> QMatrix {
    QMatrix::from_rows(rows.into_iter().map(|r| r.into_iter().map(rat).collect()).collect()).unwrap()
}

pub fn unit_vectors(len: usize) -> impl Iterator<Item = Vec<i64>> {
    (0..len).map(move |i| (0..len).map(|j| i64::from(i == j)).collect())
}

pub const FIRST_NAMES: [&str; 10] = ["0_11", "0_12", "1_11", "1_12", "2_11", "2_12", "2_22", "3_11", "3_12", "3_22"];

/// The ten-parameter family for `(S_2, 2)` below degree 4.
pub fn first_family(r: &[i64]) -> MatPoly {
    let v = |name: &str| r[FIRST_NAMES.iter().position(|&n| n == name).unwrap()];
    MatPoly::x(vec![
        q(vec![vec![v("0_11"), v("0_12")], vec![0, v("0_11")]]),
        q(vec![vec![v("1_11"), v("1_12")], vec![0, v("1_11")]]),
        q(vec![vec![v("2_11"), v("2_12")], vec![v("1_11"), v("2_22")]]),
        q(vec![vec![v("3_11"), v("3_12")], vec![v("2_22") + v("2_11") - v("1_12"), v("3_22")]]),
    ])
}

pub const SECOND_NAMES: [&str; 39] = [
    "0_11", "0_12", "0_13", "0_22", "0_23", //
    "1_11", "1_12", "1_13", "1_22", "1_23", //
    "2_11", "2_12", "2_13", "2_22", "2_23", //
    "3_11", "3_12", "3_13", "3_21", "3_22", "3_23", "3_32", "3_33", //
    "4_11", "4_12", "4_13", "4_21", "4_22", "4_23", "4_32", "4_33", //
    "5_11", "5_12", "5_13", "5_21", "5_22", "5_23", "5_32", "5_33",
];

/// The family for `(S_3, 3)` below degree 6. `entry_4_32` names the
/// parameter placed at row 3, column 2 of the `x^4` block.
pub fn second_family(r: &[i64], entry_4_32: &str) -> MatPoly {
    let v = |name: &str| r[SECOND_NAMES.iter().position(|&n| n == name).unwrap()];
    MatPoly::x(vec![
        q(vec![vec![v("0_11"), v("0_12"), v("0_13")], vec![0, v("0_22"), v("0_23")], vec![0, 0, v("0_11")]]),
        q(vec![
            vec![v("1_11"), v("1_12"), v("1_13")],
            vec![v("0_22") - v("0_11"), v("1_22"), v("1_23")],
            vec![0, v("0_22") - v("0_11"), v("1_11") + v("0_23") - v("0_12")],
        ]),
        q(vec![
            vec![v("2_11"), v("2_12"), v("2_13")],
            vec![v("1_22") - v("1_11") - v("0_23") + v("0_12"), v("2_22"), v("2_23")],
            vec![v("0_22") - v("0_11"), v("1_22") - v("1_11"), v("2_11") + v("1_23") - v("1_12")],
        ]),
        q(vec![
            vec![v("3_11"), v("3_12"), v("3_13")],
            vec![v("3_21"), v("3_22"), v("3_23")],
            vec![v("1_22") - 2 * v("1_11") - v("0_23") + v("0_12"), v("3_32"), v("3_33")],
        ]),
        q(vec![
            vec![v("4_11"), v("4_12"), v("4_13")],
            vec![v("4_21"), v("4_22"), v("4_23")],
            vec![v("3_32") + v("3_21") - v("2_22") - v("2_11") + v("1_12"), v(entry_4_32), v("4_33")],
        ]),
        q(vec![
            vec![v("5_11"), v("5_12"), v("5_13")],
            vec![v("5_21"), v("5_22"), v("5_23")],
            vec![
                v("4_32") + v("4_21") - v("3_33") - v("3_22") - v("3_11") + v("2_23") + v("2_12") - v("1_13"),
                v("5_32"),
                v("5_33"),
            ],
        ]),
    ])
}

fn e(i: i64, j: i64) -> QMatrix {
    QMatrix::unit(2, i, j)
}

/// `e_{ij} · (Σ c z^d) / den`
fn term(i: i64, j: i64, den: i64, poly: &[(usize, i64)]) -> MatPoly {
    poly.iter().fold(MatPoly::zero(2, Var::Z), |acc, &(d, c)| {
        &acc + &MatPoly::monomial(e(i, j).scale(&ratio(c, den)), d, Var::Z)
    })
}

fn sum(parts: Vec<MatPoly>) -> MatPoly {
    parts.iter().fold(MatPoly::zero(2, Var::Z), |acc, p| &acc + p)
}

/// The sixteen displayed products `α_i α_j`, `i, j ≠ 2`.
fn displayed_products() -> Vec<((usize, usize), MatPoly)> {
    vec![
        ((1, 1), sum(vec![
            term(1, 1, 4, &[(0, 4), (2, 2), (3, 2), (4, 1)]),
            term(1, 2, 4, &[(2, 2), (4, 1)]),
            term(2, 1, 2, &[(0, -2), (1, 2), (2, -1), (3, 1)]),
            term(2, 2, 2, &[(3, 1), (2, -1)]),
        ])),
        ((1, 3), sum(vec![
            term(1, 1, 4, &[(1, 4), (2, -2), (4, -1)]),
            term(1, 2, 4, &[(1, 4), (2, 2), (4, 1)]),
            term(2, 1, 2, &[(1, -2), (2, 3), (3, -1)]),
            term(2, 2, 2, &[(1, -2), (2, 1), (3, 1)]),
        ])),
        ((1, 4), term(1, 1, 4, &[(4, 1)])),
        ((1, 5), term(1, 2, 4, &[(4, 1)])),
        ((3, 1), sum(vec![
            term(1, 1, 4, &[(4, -1), (3, 4)]),
            term(1, 2, 4, &[(4, -1), (3, 2)]),
            term(2, 1, 2, &[(2, -2), (3, -1)]),
            term(2, 2, 2, &[(3, -1)]),
        ])),
        ((3, 3), sum(vec![
            term(1, 1, 4, &[(4, 1), (3, -6)]),
            term(1, 2, 4, &[(3, -2), (4, -1)]),
            term(2, 1, 2, &[(3, 1)]),
            term(2, 2, 2, &[(3, -1)]),
        ])),
        ((3, 4), sum(vec![term(1, 1, 4, &[(3, 2), (4, 1)]), term(2, 1, 2, &[(3, -1)])])),
        ((3, 5), sum(vec![term(1, 2, 4, &[(3, 2), (4, 1)]), term(2, 2, 2, &[(3, -1)])])),
        ((4, 1), sum(vec![term(2, 1, 4, &[(2, 2), (4, 1)]), term(2, 2, 4, &[(4, 1)])])),
        ((4, 3), sum(vec![term(2, 1, 4, &[(4, -1), (3, 2)]), term(2, 2, 4, &[(3, 2), (4, 1)])])),
        ((4, 4), MatPoly::zero(2, Var::Z)),
        ((4, 5), MatPoly::zero(2, Var::Z)),
        ((5, 1), term(2, 1, 2, &[(3, 1), (2, -1)])),
        ((5, 3), sum(vec![term(2, 1, 2, &[(3, -1)]), term(2, 2, 2, &[(3, -1)])])),
        ((5, 4), term(2, 1, 4, &[(4, 1)])),
        ((5, 5), term(2, 2, 4, &[(4, 1)])),
    ]
}

/// All twenty-five products, the nine involving `α_2` derived from
/// `α_2 = I - α_1`.
pub fn product_table() -> Vec<((usize, usize), MatPoly)> {
    let shown = displayed_products();
    let get = |i: usize, j: usize| shown.iter().find(|(k, _)| *k == (i, j)).map(|(_, p)| p.clone()).unwrap();
    let a = basis_e_c();
    let alpha = |i: usize| a[i - 1].clone();
    let id = MatPoly::identity(2, Var::Z);
    let mut table = shown.clone();
    table.push(((1, 2), &alpha(1) - &get(1, 1)));
    table.push(((2, 1), &alpha(1) - &get(1, 1)));
    table.push(((2, 2), &(&id - &alpha(1).scale(&rat(2))) + &get(1, 1)));
    for j in [3, 4, 5] {
        table.push(((2, j), &alpha(j) - &get(1, j)));
        table.push(((j, 2), &alpha(j) - &get(j, 1)));
    }
    table
}

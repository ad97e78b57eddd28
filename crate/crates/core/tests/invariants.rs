use bispectral_core::closure::span_close;
use bispectral_core::linalg::{nullspace, rank, Echelon};
use bispectral_core::nilpotent::{gamma_membership, p_k, NilpotentData};
use bispectral_core::operator::{apply_x_matrix, apply_z_matrix, commutator_x, compose_x, compose_z, degad_coefficient};
use bispectral_core::pierce::generators;
use bispectral_core::rational::rat;
use bispectral_core::{BiFraction, BiPoly, MatF, MatPoly, Monomial, OperatorX, OperatorZ, QMatrix, Rational, Var};
use num_traits::Zero;
use proptest::prelude::*;

fn bipoly(max_exp: u32, max_terms: usize) -> impl Strategy<Value = BiPoly> {
    prop::collection::vec((-3i64..=3, 0..max_exp, 0..max_exp), 0..=max_terms)
        .prop_map(|ts| BiPoly::from_terms(ts.into_iter().map(|(c, i, j)| (Monomial::new(i, j), rat(c)))))
}

fn fraction() -> impl Strategy<Value = BiFraction> {
    (bipoly(3, 3), bipoly(2, 2).prop_filter("nonzero denominator", |p| !p.is_zero()))
        .prop_map(|(n, d)| BiFraction::new(n, d).unwrap())
}

fn qmatrix(n: usize) -> impl Strategy<Value = QMatrix> {
    prop::collection::vec(-5i64..=5, n * n)
        .prop_map(move |v| QMatrix::from_rows(v.chunks(n).map(|r| r.iter().map(|&c| rat(c)).collect()).collect()).unwrap())
}

fn theta(n: usize, max_deg: usize) -> impl Strategy<Value = MatPoly> {
    prop::collection::vec(qmatrix(n), 1..=max_deg + 1).prop_map(MatPoly::x)
}

/// `(S, D)` with `2 ≤ D ≤ N ≤ 4`.
fn nilpotent() -> impl Strategy<Value = NilpotentData> {
    (2usize..=4).prop_flat_map(|n| (Just(n), 2..=n)).prop_map(|(n, d)| NilpotentData::standard(n, d).unwrap())
}

fn univariate(var: Var) -> impl Strategy<Value = BiFraction> {
    prop::collection::vec(-3i64..=3, 1..=3).prop_map(move |cs| {
        BiFraction::from_poly(BiPoly::from_terms(cs.iter().enumerate().map(|(d, &c)| {
            let m = match var {
                Var::X => Monomial::new(d as u32, 0),
                Var::Z => Monomial::new(0, d as u32),
            };
            (m, rat(c))
        })))
    })
}

fn matf(n: usize, var: Var) -> impl Strategy<Value = MatF> {
    prop::collection::vec(univariate(var), n * n).prop_map(move |v| MatF::from_fn(n, |i, j| v[i * n + j].clone()))
}

fn operator_x(n: usize) -> impl Strategy<Value = OperatorX> {
    prop::collection::vec(matf(n, Var::X), 1..=3).prop_map(move |c| OperatorX::new(n, c).unwrap())
}

fn operator_z(n: usize) -> impl Strategy<Value = OperatorZ> {
    prop::collection::vec(matf(n, Var::Z), 1..=3).prop_map(move |c| OperatorZ::new(n, c).unwrap())
}

/// Entries mixing `x`, `z` and `1/x`.
fn wave_matrix(n: usize) -> impl Strategy<Value = MatF> {
    prop::collection::vec((bipoly(3, 3), -2i64..=2), n * n).prop_map(move |v| {
        MatF::from_fn(n, |i, j| {
            let (p, c) = &v[i * n + j];
            &BiFraction::from_poly(p.clone()) + &BiFraction::monomial(rat(*c), -1, 0)
        })
    })
}

fn mono(c: QMatrix, d: usize) -> MatPoly {
    MatPoly::monomial(c, d, Var::X)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn fraction_field_axioms(a in fraction(), b in fraction(), c in fraction()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a + &(-&a)).is_zero());
        if let Some(inv) = a.inv() {
            prop_assert_eq!(&a * &inv, BiFraction::one());
        } else {
            prop_assert!(a.is_zero());
        }
    }

    #[test]
    fn fraction_json_round_trip(a in fraction()) {
        let s = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<BiFraction>(&s).unwrap(), a);
    }

    #[test]
    fn leibniz_rule(a in fraction(), b in fraction()) {
        let ab = &a * &b;
        prop_assert_eq!(ab.deriv_x(), &(&a.deriv_x() * &b) + &(&a * &b.deriv_x()));
        prop_assert_eq!(ab.deriv_z(), &(&a.deriv_z() * &b) + &(&a * &b.deriv_z()));
        prop_assert_eq!(a.deriv_x().deriv_z(), a.deriv_z().deriv_x());
    }

    #[test]
    fn x_coefficients_reconstruct(m in matf(2, Var::X)) {
        let mut acc = MatF::zero(2);
        for j in 0..3u32 {
            acc = &acc + &MatF::from(m.coeff_x(j).unwrap()).scale(&BiFraction::monomial(rat(1), j as i32, 0));
        }
        prop_assert_eq!(acc, m);
    }

    #[test]
    fn nullspace_rank_nullity(rows in prop::collection::vec(prop::collection::vec(-3i64..=3, 5), 1..=5)) {
        let a: Vec<Vec<Rational>> = rows.iter().map(|r| r.iter().map(|&c| rat(c)).collect()).collect();
        let basis = nullspace(&a, 5);
        for v in &basis {
            for row in &a {
                prop_assert!(row.iter().zip(v).map(|(x, y)| x * y).sum::<Rational>().is_zero());
            }
        }
        prop_assert_eq!(rank(&a, 5) + basis.len(), 5);
        let mut e = Echelon::new(5);
        for row in &a {
            e.insert(row);
        }
        prop_assert_eq!(e.rank(), rank(&a, 5));
    }

    #[test]
    fn left_composition_acts_successively(l1 in operator_x(2), l2 in operator_x(2), psi in wave_matrix(2)) {
        let lhs = apply_x_matrix(&compose_x(&l1, &l2).unwrap(), &psi).unwrap();
        let rhs = apply_x_matrix(&l1, &apply_x_matrix(&l2, &psi).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn right_composition_acts_successively(b1 in operator_z(2), b2 in operator_z(2), psi in wave_matrix(2)) {
        let lhs = apply_z_matrix(&psi, &compose_z(&b1, &b2).unwrap()).unwrap();
        let rhs = apply_z_matrix(&apply_z_matrix(&psi, &b1).unwrap(), &b2).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn commutator_coefficients_match_closed_sum(l in operator_x(2), th in operator_x(2)) {
        let c = commutator_x(&l, &th).unwrap();
        for r in 0..=6 {
            prop_assert_eq!(degad_coefficient(&l, &th, r).unwrap(), c.coeff(r as usize));
        }
    }

    #[test]
    fn operator_json_round_trip(l in operator_x(2), b in operator_z(2)) {
        let l2: OperatorX = serde_json::from_str(&serde_json::to_string(&l).unwrap()).unwrap();
        let b2: OperatorZ = serde_json::from_str(&serde_json::to_string(&b).unwrap()).unwrap();
        prop_assert_eq!(l2, l);
        prop_assert_eq!(b2, b);
    }

    #[test]
    fn pk_through_auxiliary_polynomial(
        (nd, k, th) in (nilpotent(), 0usize..=4).prop_flat_map(|(nd, k)| {
            let (n, d) = (nd.n(), nd.degree());
            (Just(nd), Just(k), theta(n, k + d + 1))
        })
    ) {
        let mut aux = mono(th.coeff(k + 1).scale(&rat(k as i64 + 1)), 1);
        for r in 2..=nd.degree() {
            aux = &aux + &mono(th.coeff(r + k), r);
        }
        prop_assert_eq!(p_k(&th, &nd, k).unwrap(), p_k(&aux, &nd, 0).unwrap());
    }

    #[test]
    fn translation_far_branch(th in theta(3, 6), k in 0usize..=3, extra in 2usize..=4) {
        let nd = NilpotentData::shift(3).unwrap();
        let t = k + extra;
        prop_assert_eq!(p_k(&th.shift(t), &nd, k).unwrap(), p_k(&th.shift(t - k), &nd, 0).unwrap());
    }

    #[test]
    fn pk_vanishes_above_degree(th in theta(2, 3), k in 4usize..8) {
        let nd = NilpotentData::shift(2).unwrap();
        prop_assert!(p_k(&th, &nd, k).unwrap().is_zero());
    }

    #[test]
    fn matpoly_json_round_trip(th in theta(3, 4)) {
        let back: MatPoly = serde_json::from_str(&serde_json::to_string(&th).unwrap()).unwrap();
        prop_assert_eq!(back, th);
    }

    #[test]
    fn tail_members(
        (nd, tail) in nilpotent().prop_flat_map(|nd| {
            let n = nd.n();
            (Just(nd), prop::collection::vec(qmatrix(n), 1..=3))
        })
    ) {
        let th = MatPoly::x(tail).shift(2 * nd.degree());
        prop_assert!(gamma_membership(&th, &nd).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn closure_ignores_generator_order(perm in Just((0..6usize).collect::<Vec<_>>()).prop_shuffle()) {
        let gens = generators(3).unwrap();
        let shuffled: Vec<MatPoly> = perm.iter().map(|&i| gens[i].clone()).collect();
        let a = span_close(&gens, 12, true).unwrap();
        let b = span_close(&shuffled, 12, true).unwrap();
        prop_assert_eq!(a.rank(), b.rank());
        for e in b.elements() {
            prop_assert!(a.contains(&e).unwrap());
        }
    }

    #[test]
    fn closure_monotone_in_cap(small in 4usize..=8, extra in 0usize..=3) {
        let gens = generators(2).unwrap();
        let a = span_close(&gens, small, true).unwrap();
        let b = span_close(&gens, small + extra, true).unwrap();
        for e in a.elements() {
            prop_assert!(b.contains(&e).unwrap());
        }
    }
}

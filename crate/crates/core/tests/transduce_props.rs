use lyndon_fliess::transduce::{
    apply_l, apply_l_inv, check_appendix_identities, level, lyndon_letter_power, norm_inf_t,
    norm_inf_tinv, ordered_bell, seminorm_t, LPoly, SparseMatrix,
};
use lyndon_fliess::words::{char_of_level, int, Alphabet, Poly, Rational, Word};
use num::{BigInt, One, ToPrimitive};
use proptest::prelude::*;

fn factorial(k: usize) -> BigInt {
    (1..=k).fold(BigInt::one(), |a, i| a * BigInt::from(i))
}

#[test]
fn norm_sequence_single_input() {
    let a = Alphabet::new(1);
    let want = [1, 1, 2, 4, 8, 36, 104, 1140, 9608];
    for (k, &v) in want.iter().enumerate() {
        assert_eq!(norm_inf_t(&a, k).unwrap(), int(v), "k = {k}");
    }
}

#[test]
fn inverse_norm_is_factorial() {
    let a = Alphabet::new(1);
    for k in 0..=9 {
        assert_eq!(
            BigInt::from(norm_inf_tinv(&a, k).unwrap()),
            factorial(k),
            "k = {k}"
        );
    }
}

#[test]
fn forward_inverse_identity_up_to_eight() {
    for (m, kmax) in [(1usize, 8usize), (2, 5)] {
        let a = Alphabet::new(m);
        for k in 1..=kmax {
            let lv = level(&a, k).unwrap();
            let n = lv.words().len();
            assert_eq!(lv.forward().mul(lv.inverse()), SparseMatrix::identity(n), "m = {m}, k = {k}");
        }
    }
}

#[test]
fn row_sums_of_forward_matrix() {
    // Applying 𝓛 to the characteristic polynomial sums the rows of T_k, and
    // (Σ l_i)^k / k! has coefficient 1/(multiplicity factorials) on each monomial.
    for (m, kmax) in [(1usize, 7usize), (2, 4)] {
        let a = Alphabet::new(m);
        for k in 1..=kmax {
            let lv = level(&a, k).unwrap();
            let sums = lv.forward().row_sums();
            for (i, mono) in lv.monomials().iter().enumerate() {
                let mut counts = std::collections::HashMap::new();
                for f in mono.factors() {
                    if f.len() == 1 {
                        *counts.entry(f.clone()).or_insert(0usize) += 1;
                    }
                }
                let all_letters = mono.factors().iter().all(|f| f.len() == 1);
                let want = if all_letters {
                    Rational::one() / Rational::from_integer(counts.values().map(|&c| factorial(c)).product())
                } else {
                    int(0)
                };
                assert_eq!(sums[i], want, "k = {k}, {mono}");
            }
            assert!(seminorm_t(&a, k).unwrap() <= int(1));
        }
    }
}

#[test]
fn norm_growth_bounds() {
    let a = Alphabet::new(1);
    let bell = ordered_bell(9);
    for k in 1..=9 {
        let n = norm_inf_t(&a, k).unwrap();
        let bound = Rational::from_integer(factorial(k) * BigInt::from(2u32).pow(k as u32));
        assert!(n <= bound, "k = {k}");
        let ninv = BigInt::from(norm_inf_tinv(&a, k).unwrap());
        assert!(ninv <= bell[k], "k = {k}");
        let kf = factorial(k).to_f64().unwrap();
        let ninv = ninv.to_f64().unwrap();
        assert!(ninv >= kf && ninv <= (1.0 / std::f64::consts::LN_2).powi(k as i32) * kf * (1.0 + 1e-12));
        let s = seminorm_t(&a, k).unwrap().to_f64().unwrap();
        let upper = 2f64.powi(k as i32) / (kf * (std::f64::consts::PI / 2.0).sqrt());
        assert!(s >= 1.0 / kf && s < upper, "k = {k}: {s} vs {upper}");
    }
}

#[test]
fn characteristic_identity_two_and_three_letters() {
    for (m, kmax) in [(1usize, 8usize), (2, 5)] {
        let a = Alphabet::new(m);
        for k in 1..=kmax {
            assert_eq!(
                apply_l(&char_of_level(&a, k), &a).unwrap(),
                lyndon_letter_power(&a, k),
                "m = {m}, k = {k}"
            );
        }
    }
}

/// Brute-force multinomial check: enumerate every tuple of words explicitly.
#[test]
fn multinomial_identity_brute_force() {
    let a = Alphabet::new(1);
    for nu in a.words_upto(4) {
        for i1 in 0..=nu.len() {
            let parts = [i1, nu.len() - i1];
            let mut total = int(0);
            for x in a.words_of_length(parts[0]) {
                for y in a.words_of_length(parts[1]) {
                    total += Poly::from_word(x.clone()).shuffle(&Poly::from_word(y)).coeff(&nu);
                }
            }
            let binom = factorial(nu.len()) / (factorial(parts[0]) * factorial(parts[1]));
            assert_eq!(total, Rational::from_integer(binom), "{nu} {parts:?}");
        }
    }
    let r = check_appendix_identities(&Alphabet::new(2), 5, 100, 3).unwrap();
    assert!(r.passed(), "{:?}", r.failures);
}

fn arb_poly(m: usize, maxlen: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(
        (
            prop::collection::vec(0..=(m as u8), 0..=maxlen),
            -20i64..=20,
            1i64..=6,
        ),
        0..6,
    )
    .prop_map(|terms| {
        Poly::from_terms(
            terms
                .into_iter()
                .map(|(l, n, d)| (Word::new(l), Rational::new(n.into(), d.into()))),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn round_trip(p in arb_poly(1, 6)) {
        let a = Alphabet::new(1);
        let q = apply_l(&p, &a).unwrap();
        prop_assert_eq!(apply_l_inv(&q), p);
    }

    #[test]
    fn round_trip_three_letters(p in arb_poly(2, 4)) {
        let a = Alphabet::new(2);
        prop_assert_eq!(apply_l_inv(&apply_l(&p, &a).unwrap()), p);
    }

    #[test]
    fn shuffle_becomes_product(p in arb_poly(1, 3), q in arb_poly(1, 3)) {
        let a = Alphabet::new(1);
        let lhs = apply_l(&p.shuffle(&q), &a).unwrap();
        let rhs: LPoly = apply_l(&p, &a).unwrap().mul(&apply_l(&q, &a).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn linearity(p in arb_poly(1, 5), q in arb_poly(1, 5), n in -5i64..5) {
        let a = Alphabet::new(1);
        let s = int(n);
        let lhs = apply_l(&(&p + &q.scale(&s)), &a).unwrap();
        let rhs = apply_l(&p, &a).unwrap().add(&apply_l(&q, &a).unwrap().scale(&s));
        prop_assert_eq!(lhs, rhs);
    }
}

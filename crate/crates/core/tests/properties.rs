use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use tree_asymptotics::combinatorics::{bell_partial, compositions, gen_binom, TauForm};
use tree_asymptotics::counts::{identity_counts, polya_counts};
use tree_asymptotics::{counts, HpReal, Precision, Variety};

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn small_rational() -> impl Strategy<Value = BigRational> {
    (-20i64..20, 1i64..12).prop_map(|(n, d)| rat(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn compositions_are_distinct_and_complete(total in 1usize..14, parts in 1usize..14) {
        let all: Vec<Vec<usize>> = compositions(total, parts).collect();
        let expected = if parts > total { 0 } else {
            let (n, k) = (total - 1, parts - 1);
            (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
        };
        prop_assert_eq!(all.len() as u64, expected);
        for c in &all {
            prop_assert_eq!(c.len(), parts);
            prop_assert!(c.iter().all(|&x| x >= 1));
            prop_assert_eq!(c.iter().sum::<usize>(), total);
        }
        prop_assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn bell_row_sums_to_complete_bell(xs in proptest::collection::vec(small_rational(), 6)) {
        // sum_k B_{n,k}(x) = Y_n(x), with Y_{n+1} = sum_i C(n,i) x_{i+1} Y_{n-i}
        let n = 6;
        let mut y = vec![BigRational::one()];
        for m in 0..n {
            let mut acc = BigRational::zero();
            for i in 0..=m {
                let c: BigInt = (0..i).fold(BigInt::one(), |a, j| a * BigInt::from(m - j) / BigInt::from(j + 1));
                acc += BigRational::from_integer(c) * &xs[i] * &y[m - i];
            }
            y.push(acc);
        }
        let total: BigRational = (1..=n).map(|k| bell_partial(n, k, &xs).unwrap()).sum();
        prop_assert_eq!(total, y[n].clone());
    }

    #[test]
    fn bell_homogeneity(xs in proptest::collection::vec(small_rational(), 7), a in small_rational(), b in small_rational()) {
        // B_{n,k}(a b x_1, a b^2 x_2, ...) = a^k b^n B_{n,k}(x)
        let n = 7;
        let scaled: Vec<BigRational> = xs.iter().enumerate().map(|(i, x)| {
            let mut f = a.clone() * x;
            for _ in 0..=i { f *= &b; }
            f
        }).collect();
        for k in 1..=n {
            let mut factor = BigRational::one();
            for _ in 0..k { factor *= &a; }
            for _ in 0..n { factor *= &b; }
            prop_assert_eq!(bell_partial(n, k, &scaled).unwrap(), factor * bell_partial(n, k, &xs).unwrap());
        }
    }

    #[test]
    fn generalized_pascal_rule(a in small_rational(), r in 0usize..8) {
        let lhs = gen_binom(&a, r) + gen_binom(&a, r + 1);
        prop_assert_eq!(lhs, gen_binom(&(a + BigRational::one()), r + 1));
    }

    #[test]
    fn tau_form_evaluation_is_linear(cs in proptest::collection::vec(small_rational(), 4), ds in proptest::collection::vec(small_rational(), 4)) {
        let p = Precision::digits(30);
        let t: Vec<HpReal> = (0..8).map(|i| HpReal::from_f64(0.37 * i as f64 - 1.1, p)).collect();
        let mut f = TauForm::zero();
        let mut g = TauForm::zero();
        for i in 0..4 {
            f.add_term(2 * i + 1, cs[i].clone());
            g.add_term(2 * i + 1, ds[i].clone());
        }
        let mut sum = f.clone();
        sum.add_scaled(&g, &BigRational::one());
        let diff = (sum.evaluate(&t) - (f.evaluate(&t) + g.evaluate(&t))).abs();
        prop_assert!(diff.to_f64() < 1e-25);
    }

    #[test]
    fn count_prefixes_are_consistent(n in 2usize..120, m in 2usize..120) {
        let (lo, hi) = if n < m { (n, m) } else { (m, n) };
        for v in Variety::ALL {
            let long = counts(v, hi);
            let short = counts(v, lo);
            prop_assert_eq!(&long.values()[..=lo], short.values());
        }
    }
}

#[test]
fn identity_trees_are_a_subset_of_polya_trees() {
    let p = polya_counts(300);
    let i = identity_counts(300);
    assert!(p.values().iter().zip(i.values()).all(|(a, b)| a >= b));
}

#[test]
fn counts_are_nondecreasing_from_one() {
    for v in Variety::ALL {
        let c = counts(v, 300);
        assert_eq!(c.values()[0], BigInt::zero());
        assert_eq!(c.values()[1], BigInt::one());
        assert!(c.values()[1..].windows(2).all(|w| w[0] <= w[1]), "{v}");
    }
}

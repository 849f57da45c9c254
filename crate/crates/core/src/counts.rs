//! Exact counting sequences for Pólya trees, rooted identity trees and
//! hierarchies.
//!
//! The recurrences run in `O(n^2)` big-integer operations by memoizing the
//! divisor sums `sum_{m | k} ...` once per `k`. The product forms in
//! [`product_form_oracle`] are a slower, independent route used to check them.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// The tree varieties with a disturbed-Cayley functional equation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variety {
    /// Rooted unlabelled non-plane trees, sized by nodes (OEIS A000081).
    Polya,
    /// Rooted identity trees, sized by nodes (OEIS A004111).
    Identity,
    /// Trees without unary nodes, sized by leaves (OEIS A000669).
    Hierarchy,
}

impl Variety {
    pub const ALL: [Variety; 3] = [Variety::Polya, Variety::Identity, Variety::Hierarchy];

    pub fn name(self) -> &'static str {
        match self {
            Variety::Polya => "polya",
            Variety::Identity => "identity",
            Variety::Hierarchy => "hierarchy",
        }
    }

    pub fn oeis_id(self) -> &'static str {
        match self {
            Variety::Polya => "A000081",
            Variety::Identity => "A004111",
            Variety::Hierarchy => "A000669",
        }
    }

    /// What the size of a structure is: nodes, or leaves for hierarchies.
    pub fn size_notion(self) -> &'static str {
        match self {
            Variety::Polya | Variety::Identity => "number of nodes",
            Variety::Hierarchy => "number of leaves",
        }
    }
}

impl fmt::Display for Variety {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown variety `{0}` (expected polya, identity or hierarchy)")]
pub struct UnknownVariety(pub String);

impl FromStr for Variety {
    type Err = UnknownVariety;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "polya" | "pólya" => Ok(Variety::Polya),
            "identity" => Ok(Variety::Identity),
            "hierarchy" | "hierarchies" => Ok(Variety::Hierarchy),
            _ => Err(UnknownVariety(s.to_string())),
        }
    }
}

/// Exact counts `T_0..=T_{n_max}` of one variety.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountSequence {
    variety: Variety,
    values: Vec<BigInt>,
}

impl CountSequence {
    pub fn new(variety: Variety, values: Vec<BigInt>) -> Self {
        CountSequence { variety, values }
    }

    pub fn variety(&self) -> Variety {
        self.variety
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    pub fn get(&self, n: usize) -> Option<&BigInt> {
        self.values.get(n)
    }

    pub fn n_max(&self) -> usize {
        self.values.len() - 1
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Counts for `variety` from its recurrence.
pub fn counts(variety: Variety, n_max: usize) -> CountSequence {
    match variety {
        Variety::Polya => polya_counts(n_max),
        Variety::Identity => identity_counts(n_max),
        Variety::Hierarchy => hierarchy_counts(n_max),
    }
}

fn base_values(n_max: usize) -> Vec<BigInt> {
    let mut values = Vec::with_capacity(n_max + 1);
    values.push(BigInt::zero());
    if n_max >= 1 {
        values.push(BigInt::one());
    }
    values
}

fn exact_quotient(numerator: &BigInt, divisor: usize, n: usize) -> BigInt {
    let (q, r) = numerator.div_rem(&BigInt::from(divisor));
    assert!(r.is_zero(), "recurrence division by {divisor} left a remainder at n = {n}");
    q
}

/// `T_n = 1/(n-1) sum_{k=1}^{n-1} D_k T_{n-k}` with memoized divisor sums `D_k`.
fn multiset_like_counts(variety: Variety, n_max: usize, sign: impl Fn(usize) -> i32) -> CountSequence {
    let mut values = base_values(n_max);
    // divisor_sums[k] = sum_{i | k} sign(k / i) * i * T_i
    let mut divisor_sums: Vec<BigInt> = vec![BigInt::zero(); n_max + 1];
    for n in 2..=n_max {
        // T_{n-1} is now known; every divisor sum D_k for k ≤ n-1 gains the i = n-1 term.
        let i = n - 1;
        let contribution = &values[i] * BigInt::from(i);
        let mut k = i;
        while k <= n_max {
            if sign(k / i) > 0 {
                divisor_sums[k] += &contribution;
            } else {
                divisor_sums[k] -= &contribution;
            }
            k += i;
        }
        let total: BigInt = (1..n).map(|k| &divisor_sums[k] * &values[n - k]).sum();
        values.push(exact_quotient(&total, n - 1, n));
    }
    values.truncate(n_max + 1);
    CountSequence::new(variety, values)
}

/// Pólya trees: `T_n = 1/(n-1) sum_i i T_i sum_{m=1}^{(n-1)/i} T_{n-mi}`.
pub fn polya_counts(n_max: usize) -> CountSequence {
    multiset_like_counts(Variety::Polya, n_max, |_| 1)
}

/// Rooted identity trees: the inner sum alternates as `(-1)^{m+1}`.
pub fn identity_counts(n_max: usize) -> CountSequence {
    multiset_like_counts(Variety::Identity, n_max, |m| if m % 2 == 1 { 1 } else { -1 })
}

/// Hierarchies:
/// `T_n = 1/n sum_{m | n, m < n} m T_m
///        + 2/n sum_i i T_i sum_{m=1}^{(n-1)/i} (T_{n-mi} - [n - mi = 1]/2)`.
///
/// The half-correction applies to each inner term. Evaluated in exact
/// rationals; the result is asserted to be an integer.
pub fn hierarchy_counts(n_max: usize) -> CountSequence {
    let mut values = base_values(n_max);
    // divisor_sums[k] = sum_{i | k} i T_i over the T_i known so far.
    let mut divisor_sums: Vec<BigInt> = vec![BigInt::zero(); n_max + 1];
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    for n in 2..=n_max {
        let i = n - 1;
        let contribution = &values[i] * BigInt::from(i);
        let mut k = i;
        while k <= n_max {
            divisor_sums[k] += &contribution;
            k += i;
        }
        // Proper divisors of n are all < n, so divisor_sums[n] holds exactly them.
        let proper = BigRational::new(divisor_sums[n].clone(), BigInt::from(n));
        // Interchanging the double sum: k = m i runs over 1..n-1.
        let mut inner = BigRational::zero();
        for k in 1..n {
            let mut term = BigRational::from_integer(values[n - k].clone());
            if n - k == 1 {
                term -= &half;
            }
            inner += term * BigRational::from_integer(divisor_sums[k].clone());
        }
        let value = proper + inner * BigRational::new(BigInt::from(2), BigInt::from(n));
        assert!(value.is_integer(), "hierarchy recurrence produced {value} at n = {n}");
        values.push(value.to_integer());
    }
    values.truncate(n_max + 1);
    CountSequence::new(Variety::Hierarchy, values)
}

/// Default upper bound for [`product_form_oracle`]; the route is roughly cubic.
pub const DEFAULT_ORACLE_BOUND: usize = 200;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("product-form oracle limited to n ≤ {bound}, requested {requested}")]
pub struct OracleBoundExceeded {
    pub requested: usize,
    pub bound: usize,
}

/// Counts extracted degree by degree from the product / fixpoint forms:
///
/// * Pólya: `T = z prod_k (1 - z^k)^{-T_k}`
/// * identity: `T = z prod_k (1 + z^k)^{T_k}`
/// * hierarchies: `2T - z + 1 = exp(sum_i T(z^i)/i) = prod_k (1 - z^k)^{-T_k}`
pub fn product_form_oracle(variety: Variety, n_max: usize) -> Result<CountSequence, OracleBoundExceeded> {
    product_form_oracle_with_bound(variety, n_max, DEFAULT_ORACLE_BOUND)
}

pub fn product_form_oracle_with_bound(
    variety: Variety,
    n_max: usize,
    bound: usize,
) -> Result<CountSequence, OracleBoundExceeded> {
    if n_max > bound {
        return Err(OracleBoundExceeded { requested: n_max, bound });
    }
    // product[d] = [z^d] prod_{k applied} factor_k, tracked through degree n_max.
    let mut product: Vec<BigInt> = vec![BigInt::zero(); n_max + 1];
    product[0] = BigInt::one();
    let mut values = base_values(n_max);
    let apply = |product: &mut Vec<BigInt>, k: usize, t_k: &BigInt| {
        // multiply by (1 - z^k)^{-t_k} or (1 + z^k)^{t_k}
        let max_j = n_max / k;
        let mut weights: Vec<BigInt> = Vec::with_capacity(max_j + 1);
        weights.push(BigInt::one());
        for j in 1..=max_j {
            let prev = &weights[j - 1];
            let w = match variety {
                Variety::Identity => prev * (t_k - BigInt::from(j - 1)) / BigInt::from(j),
                Variety::Polya | Variety::Hierarchy => prev * (t_k + BigInt::from(j - 1)) / BigInt::from(j),
            };
            weights.push(w);
        }
        for d in (0..=n_max).rev() {
            let mut acc = BigInt::zero();
            for (j, w) in weights.iter().enumerate().skip(1) {
                if j * k > d {
                    break;
                }
                if !w.is_zero() {
                    acc += w * &product[d - j * k];
                }
            }
            product[d] += acc;
        }
    };
    for n in 2..=n_max {
        let k = n - 1;
        let t_k = values[k].clone();
        apply(&mut product, k, &t_k);
        let value = match variety {
            // T_n = [z^{n-1}] prod_{k ≤ n-1}
            Variety::Polya | Variety::Identity => product[n - 1].clone(),
            // 2 T_n = [z^n] prod_{k ≤ n-1} + T_n
            Variety::Hierarchy => product[n].clone(),
        };
        values.push(value);
    }
    values.truncate(n_max + 1);
    Ok(CountSequence::new(variety, values))
}

//! Exact rational kernels: partial Bell polynomials, the `B(l)` sequence,
//! Cayley Puiseux coefficients, generalized binomials, compositions, and the
//! `Q_r` / `R_l` sequences that turn Puiseux coefficients into the
//! asymptotic expansion of the counts.
//!
//! Everything here is variety independent. `B(l)`, `R_l` and the Bell table
//! behind `B(l)` are cached process-wide; the caches only ever append, so
//! concurrent readers always see fully computed entries.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::RwLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::precision::{rational_to_hp, HpReal, Precision};

pub type Rational = BigRational;

fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

/// Append-only cache indexed from 0.
struct IndexCache<T> {
    items: RwLock<Vec<T>>,
}

impl<T: Clone> IndexCache<T> {
    const fn new() -> Self {
        IndexCache { items: RwLock::new(Vec::new()) }
    }

    fn get(&self, idx: usize, compute: impl Fn(&[T], usize) -> T) -> T {
        if let Some(v) = self.items.read().expect("cache lock poisoned").get(idx) {
            return v.clone();
        }
        let mut items = self.items.write().expect("cache lock poisoned");
        while items.len() <= idx {
            let next = compute(&items, items.len());
            items.push(next);
        }
        items[idx].clone()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CombinatoricsError {
    #[error("Bell polynomial B_{{{n},{k}}} needs 1 <= k <= n")]
    BellIndex { n: usize, k: usize },
    #[error("Bell polynomial B_{{{n},{k}}} needs {needed} arguments, got {got}")]
    BellArguments { n: usize, k: usize, needed: usize, got: usize },
}

/// Rows `0..=n_max` of the partial Bell table: `table[n][k] = B_{n,k}(xs)`.
fn bell_table(n_max: usize, x: impl Fn(usize) -> Rational) -> Vec<Vec<Rational>> {
    let mut table: Vec<Vec<Rational>> = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        table.push(bell_row(&table, n, &x));
    }
    table
}

/// `B_{n,k} = sum_{i=1}^{n-k+1} C(n-1, i-1) x_i B_{n-i,k-1}`, with `B_{0,0} = 1`.
fn bell_row(prev: &[Vec<Rational>], n: usize, x: impl Fn(usize) -> Rational) -> Vec<Rational> {
    let mut row = vec![Rational::zero(); n + 1];
    if n == 0 {
        row[0] = Rational::one();
        return row;
    }
    for (k, slot) in row.iter_mut().enumerate().skip(1) {
        let mut acc = Rational::zero();
        for i in 1..=(n - k + 1) {
            let lower = &prev[n - i][k - 1];
            if lower.is_zero() {
                continue;
            }
            acc += Rational::from_integer(binomial(n - 1, i - 1)) * x(i) * lower;
        }
        *slot = acc;
    }
    row
}

/// Partial exponential Bell polynomial `B_{n,k}(x_1, ..., x_{n-k+1})`.
pub fn bell_partial(n: usize, k: usize, xs: &[Rational]) -> Result<Rational, CombinatoricsError> {
    if k < 1 || k > n {
        return Err(CombinatoricsError::BellIndex { n, k });
    }
    let needed = n - k + 1;
    if xs.len() < needed {
        return Err(CombinatoricsError::BellArguments { n, k, needed, got: xs.len() });
    }
    let x = |i: usize| xs.get(i - 1).cloned().unwrap_or_else(Rational::zero);
    Ok(bell_table(n, x)[n][k].clone())
}

static CAYLEY_BELL_ROWS: IndexCache<Vec<Rational>> = IndexCache::new();
static B_CACHE: IndexCache<Rational> = IndexCache::new();

/// `B_{n,k}(1/3, 1/4, ...)`, the Bell row feeding `B(n + 1)`.
fn cayley_bell_row(n: usize) -> Vec<Rational> {
    CAYLEY_BELL_ROWS.get(n, |rows, m| bell_row(rows, m, |i| frac(1, i as i64 + 2)))
}

/// `B(1) = 1` and, for `l > 1`,
/// `B(l) = sum_{k=1}^{l-1} (-1)^k B_{l-1,k}(1/3, ..., 1/(l-k+2)) prod_{i<k} (l + 2i)`,
/// with the `k`-sum evaluated Horner style.
///
/// # Panics
/// If `l == 0`.
pub fn b_seq(l: usize) -> Rational {
    assert!(l >= 1, "B(l) is defined for l >= 1");
    B_CACHE.get(l, |_, m| b_seq_horner(m))
}

fn b_seq_horner(l: usize) -> Rational {
    match l {
        0 => Rational::zero(),
        1 => Rational::one(),
        _ => {
            let row = cayley_bell_row(l - 1);
            // H_k = (-1)^k b_k + (l + 2k) H_{k+1}; result l * H_1
            let mut acc = Rational::zero();
            for k in (1..l).rev() {
                let signed = if k % 2 == 0 { row[k].clone() } else { -row[k].clone() };
                acc = signed + int((l + 2 * k) as i64) * acc;
            }
            int(l as i64) * acc
        }
    }
}

/// `B(l)` summed term by term, without the Horner factoring.
pub fn b_seq_naive(l: usize) -> Rational {
    assert!(l >= 1, "B(l) is defined for l >= 1");
    if l == 1 {
        return Rational::one();
    }
    let row = &bell_table(l - 1, |i| frac(1, i as i64 + 2))[l - 1];
    let mut total = Rational::zero();
    for (k, bell) in row.iter().enumerate().skip(1) {
        let product: BigInt = (0..k).map(|i| BigInt::from(l + 2 * i)).product();
        let term = bell * Rational::from_integer(product);
        if k % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// Coefficient of `(1 - e z)^{n/2}` in the Cayley tree function's Puiseux
/// expansion at `1/e`: `rational_part * sqrt(2)^sqrt2_power`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CayleyCoefficient {
    pub n: usize,
    pub rational_part: Rational,
    /// `n mod 2`
    pub sqrt2_power: u8,
}

impl CayleyCoefficient {
    pub fn to_hp(&self, p: Precision) -> HpReal {
        let r = rational_to_hp(&self.rational_part, p);
        if self.sqrt2_power == 1 {
            r * HpReal::from_i64(2, p).sqrt()
        } else {
            r
        }
    }
}

impl fmt::Display for CayleyCoefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sqrt2_power == 1 {
            write!(f, "{}·√2", self.rational_part)
        } else {
            write!(f, "{}", self.rational_part)
        }
    }
}

/// `C(z) = 1 - sqrt(2) sqrt(1 - ez) - sum_{n>=2} B(n) 2^{n/2}/n! (1 - ez)^{n/2}`.
pub fn cayley_puiseux(n_max: usize) -> Vec<CayleyCoefficient> {
    (0..=n_max)
        .map(|n| {
            let sqrt2_power = (n % 2) as u8;
            let rational_part = match n {
                0 => Rational::one(),
                1 => -Rational::one(),
                _ => {
                    let pow2 = BigInt::one() << (n / 2);
                    -b_seq(n) * Rational::new(pow2, factorial(n))
                }
            };
            CayleyCoefficient { n, rational_part, sqrt2_power }
        })
        .collect()
}

/// Generalized binomial `a (a-1) ... (a-r+1) / r!`.
pub fn gen_binom(a: &Rational, r: usize) -> Rational {
    let mut acc = Rational::one();
    for j in 0..r {
        acc *= a - int(j as i64);
    }
    acc / Rational::from_integer(factorial(r))
}

/// Ordered tuples of `parts` positive integers summing to `total`, in
/// lexicographic order. There are `C(total-1, parts-1)` of them.
#[derive(Clone, Debug)]
pub struct Compositions {
    total: usize,
    // cut positions c_1 < ... < c_{parts-1} in 1..total
    cuts: Vec<usize>,
    done: bool,
}

pub fn compositions(total: usize, parts: usize) -> Compositions {
    let done = parts == 0 || parts > total;
    let cuts = if done { Vec::new() } else { (1..parts).collect() };
    Compositions { total, cuts, done }
}

impl Iterator for Compositions {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let mut out = Vec::with_capacity(self.cuts.len() + 1);
        let mut prev = 0;
        for &c in &self.cuts {
            out.push(c - prev);
            prev = c;
        }
        out.push(self.total - prev);
        // Cuts in lexicographic order give compositions whose first part grows
        // last-to-first; advance the rightmost cut that can move.
        let m = self.cuts.len();
        let mut i = m;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            let limit = self.total - (m - i);
            if self.cuts[i] < limit {
                self.cuts[i] += 1;
                for j in i + 1..m {
                    self.cuts[j] = self.cuts[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

/// `sum_{s=0}^{2k} 1/(s+1) sum_{j=0}^{s} (-1)^j C(s,j) j^{2k}`, with `0^0 = 1`.
pub fn r_inner(k: usize) -> Rational {
    let m = 2 * k;
    let mut total = Rational::zero();
    for s in 0..=m {
        let mut inner = BigInt::zero();
        for j in 0..=s {
            let power = if m == 0 { BigInt::one() } else { BigInt::from(j).pow(m as u32) };
            let term = binomial(s, j) * power;
            if j % 2 == 0 {
                inner += term;
            } else {
                inner -= term;
            }
        }
        total += Rational::new(inner, BigInt::from(s + 1));
    }
    total
}

/// Same value via Stirling numbers: `sum_s (-1)^s s! S(2k, s) / (s+1)`.
pub fn r_inner_stirling(k: usize) -> Rational {
    let m = 2 * k;
    let stirling = stirling2_row(m);
    (0..=m)
        .map(|s| {
            let v = Rational::new(factorial(s) * &stirling[s], BigInt::from(s + 1));
            if s % 2 == 0 {
                v
            } else {
                -v
            }
        })
        .sum()
}

/// `S(m, 0..=m)`, Stirling numbers of the second kind.
fn stirling2_row(m: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for n in 1..=m {
        let mut next = vec![BigInt::zero(); n + 1];
        for k in 1..=n {
            let stay = if k < n { BigInt::from(k) * &row[k] } else { BigInt::zero() };
            next[k] = stay + &row[k - 1];
        }
        row = next;
    }
    row
}

static R_CACHE: IndexCache<Rational> = IndexCache::new();

/// `R_0 ..= R_{l_max}`.
pub fn r_seq(l_max: usize) -> Vec<Rational> {
    (0..=l_max).map(r_value).collect()
}

/// `R_l` (cached).
pub fn r_value(l: usize) -> Rational {
    R_CACHE.get(l, |_, m| compute_r(m))
}

fn compute_r(l: usize) -> Rational {
    if l == 0 {
        return Rational::one();
    }
    // factor(k) = (2^{-2k} - 1) * r_inner(k)
    let max_k = l.div_ceil(2) + 1;
    let factors: Vec<Rational> = (0..=max_k)
        .map(|k| if k == 0 { Rational::zero() } else { (Rational::new(BigInt::one(), BigInt::one() << (2 * k)) - int(1)) * r_inner(k) })
        .collect();
    let mut total = Rational::zero();
    for r in (1..=l).filter(|r| r % 2 == l % 2) {
        for ks in compositions((l + r) / 2, r) {
            let mut product = Rational::one();
            let mut consumed = 0usize;
            for (idx, &k) in ks.iter().enumerate() {
                let i = idx + 1;
                let denom = (l + i - 1 - 2 * consumed) * k;
                product *= &factors[k] / int(denom as i64);
                consumed += k;
            }
            total += product;
        }
    }
    total
}

/// A linear form `sum_j c_j t_j` over odd-index Puiseux coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TauForm {
    coeffs: BTreeMap<usize, Rational>,
}

impl TauForm {
    pub fn zero() -> Self {
        TauForm::default()
    }

    /// `c * t_index`.
    ///
    /// # Panics
    /// If `index` is even.
    pub fn term(index: usize, c: Rational) -> Self {
        let mut form = TauForm::zero();
        form.add_term(index, c);
        form
    }

    pub fn add_term(&mut self, index: usize, c: Rational) {
        assert!(index % 2 == 1, "only odd-index coefficients t_{{2j+1}} appear");
        let entry = self.coeffs.entry(index).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&index);
        }
    }

    pub fn add_scaled(&mut self, other: &TauForm, k: &Rational) {
        for (&idx, c) in &other.coeffs {
            self.add_term(idx, c * k);
        }
    }

    pub fn coefficient(&self, index: usize) -> Rational {
        self.coeffs.get(&index).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.coeffs.iter().map(|(&i, c)| (i, c))
    }

    /// Largest index present.
    pub fn max_index(&self) -> Option<usize> {
        self.coeffs.keys().next_back().copied()
    }

    /// Evaluates with `t[j]` standing for `t_j`.
    pub fn evaluate(&self, t: &[HpReal]) -> HpReal {
        let p = t.first().map(HpReal::precision).unwrap_or(Precision::digits(30));
        self.coeffs
            .iter()
            .fold(HpReal::zero(p), |acc, (&idx, c)| acc + rational_to_hp(c, p) * &t[idx])
    }
}

impl fmt::Display for TauForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        for (n, (idx, c)) in self.coeffs.iter().enumerate() {
            if n > 0 {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            } else if c.is_negative() {
                f.write_str("-")?;
            }
            write!(f, "({})·t_{idx}", c.abs())?;
        }
        Ok(())
    }
}

/// `sum over compositions (l_0..l_j) of r of prod_i (2i+1)^{l_i}`.
fn odd_power_composition_sum(r: usize, parts: usize) -> BigInt {
    let fast = compositions(r, parts).try_fold(0u128, |acc, ls| {
        let product = ls.iter().enumerate().try_fold(1u128, |p, (i, &l)| {
            (2 * i as u128 + 1).checked_pow(l as u32).and_then(|f| p.checked_mul(f))
        })?;
        acc.checked_add(product)
    });
    match fast {
        Some(v) => BigInt::from(v),
        None => compositions(r, parts)
            .map(|ls| ls.iter().enumerate().map(|(i, &l)| BigInt::from(2 * i + 1).pow(l as u32)).product::<BigInt>())
            .sum(),
    }
}

static Q_CACHE: IndexCache<TauForm> = IndexCache::new();

/// `Q_r = sum_{j=0}^{r-1} (-1)^{j+1} t_{2j+1} sum_{l_0+...+l_j = r} prod_i (i + 1/2)^{l_i}` (cached).
///
/// # Panics
/// If `r == 0`.
pub fn q_value(r: usize) -> TauForm {
    assert!(r >= 1, "Q_r is defined for r >= 1");
    Q_CACHE.get(r, |_, m| compute_q(m))
}

fn compute_q(r: usize) -> TauForm {
    let mut form = TauForm::zero();
    if r == 0 {
        return form;
    }
    let denom = BigInt::one() << r;
    for j in 0..r {
        let sum = odd_power_composition_sum(r, j + 1);
        let c = Rational::new(sum, denom.clone());
        form.add_term(2 * j + 1, if j % 2 == 0 { -c } else { c });
    }
    form
}

/// `Q_1 ..= Q_{r_max}` (index 0 holds `Q_1`).
pub fn q_symbolic(r_max: usize) -> Vec<TauForm> {
    (1..=r_max).map(q_value).collect()
}

/// `tau_l = sum_{r=1}^{l+1} Q_r R_{l+1-r}` as a linear form in `t_1, t_3, ..., t_{2l+1}`.
pub fn tau_symbolic(l: usize) -> TauForm {
    let mut form = TauForm::zero();
    for r in 1..=l + 1 {
        form.add_scaled(&q_value(r), &r_value(l + 1 - r));
    }
    form
}

/// Rational to `f64`, for diagnostics.
pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

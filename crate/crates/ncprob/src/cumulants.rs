//! Exact moment/cumulant transforms.
//!
//! Free cumulants live over the noncrossing lattice, classical cumulants over
//! the full partition lattice. Single-variable transforms run in triangular
//! form (solving the block-of-1 decomposition of the lattice sum order by
//! order); the literal lattice sums with Möbius coefficients are kept in the
//! test suite as independent oracles.

use std::collections::HashMap;
use std::ops::{Add, Div, Mul, Sub};
use std::sync::Mutex;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::arith::binomial;
use crate::partitions::for_each_nc_capped;

/// Errors from cumulant-layer operations.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum CumulantError {
    /// Adding sequences of different kinds.
    #[error("cumulant kinds differ")]
    KindMismatch,
    /// Operands truncated at different orders.
    #[error("truncation orders differ: {0} vs {1}")]
    OrderMismatch(usize, usize),
    /// A query exceeded the truncation order.
    #[error("word/order length {len} exceeds truncation order {order}")]
    OrderExceeded { len: usize, order: usize },
    /// A word used a letter outside `1..=arity`.
    #[error("letter {letter} outside 1..={arity}")]
    LetterOutOfRange { letter: u8, arity: usize },
}

/// Scalar abstraction so the same transform code runs exactly (rationals)
/// and as a float mirror for the Monte Carlo layer.
pub(crate) trait Scalar:
    Clone
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
    fn from_u64(v: u64) -> Self;
}

impl Scalar for f64 {
    fn from_u64(v: u64) -> Self {
        v as f64
    }
}

impl Scalar for BigRational {
    fn from_u64(v: u64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
}

/// Coefficient of `w^d` in `M(w)^s`, with `M` given by coefficients `m[0..]`.
fn pow_coeff<S: Scalar>(m: &[S], s: usize, d: usize) -> S {
    let mut cur = vec![S::zero(); d + 1];
    cur[0] = S::one();
    for _ in 0..s {
        let mut next = vec![S::zero(); d + 1];
        for i in 0..=d {
            if cur[i].is_zero() {
                continue;
            }
            for j in 0..=(d - i) {
                if j < m.len() && !m[j].is_zero() {
                    next[i + j] = next[i + j].clone() + cur[i].clone() * m[j].clone();
                }
            }
        }
        cur = next;
    }
    cur[d].clone()
}

/// `m_n = sum_s r_s [w^{n-s}] M(w)^s`: the noncrossing moment-cumulant sum
/// decomposed by the block of element 1.
pub(crate) fn moments_from_free_generic<S: Scalar>(r: &[S]) -> Vec<S> {
    let order = r.len();
    let mut m = vec![S::one()]; // m[0] = 1
    for n in 1..=order {
        let mut total = S::zero();
        for s in 1..=n {
            let coeff = pow_coeff(&m[..n.min(m.len())], s, n - s);
            total = total + r[s - 1].clone() * coeff;
        }
        m.push(total);
    }
    m.remove(0);
    m
}

/// Triangular inverse of [`moments_from_free_generic`].
pub(crate) fn free_from_moments_generic<S: Scalar>(m: &[S]) -> Vec<S> {
    let order = m.len();
    let mut full = vec![S::one()];
    full.extend_from_slice(m);
    let mut r: Vec<S> = Vec::with_capacity(order);
    for n in 1..=order {
        let mut acc = full[n].clone();
        for s in 1..n {
            acc = acc - r[s - 1].clone() * pow_coeff(&full[..n], s, n - s);
        }
        r.push(acc);
    }
    r
}

/// `m_n = sum_k binom(n-1, k-1) c_k m_{n-k}`: the full-lattice sum decomposed
/// by the block containing element n.
pub(crate) fn moments_from_classical_generic<S: Scalar>(c: &[S]) -> Vec<S> {
    let order = c.len();
    let mut m = vec![S::one()];
    for n in 1..=order {
        let mut total = S::zero();
        for k in 1..=n {
            let b = binomial((n - 1) as u64, (k - 1) as u64)
                .to_u64()
                .expect("binomial fits u64 at these orders");
            total = total + S::from_u64(b) * c[k - 1].clone() * m[n - k].clone();
        }
        m.push(total);
    }
    m.remove(0);
    m
}

/// Triangular inverse of [`moments_from_classical_generic`].
pub(crate) fn classical_from_moments_generic<S: Scalar>(m: &[S]) -> Vec<S> {
    let order = m.len();
    let mut full = vec![S::one()];
    full.extend_from_slice(m);
    let mut c: Vec<S> = Vec::with_capacity(order);
    for n in 1..=order {
        let mut acc = full[n].clone();
        for k in 1..n {
            let b = binomial((n - 1) as u64, (k - 1) as u64)
                .to_u64()
                .expect("binomial fits u64 at these orders");
            acc = acc - S::from_u64(b) * c[k - 1].clone() * full[n - k].clone();
        }
        c.push(acc);
    }
    c
}

/// Sample classical cumulants from float moments (used by the Monte Carlo
/// entry-cumulant experiment).
pub fn classical_cumulants_from_moments_f64(moments: &[f64]) -> Vec<f64> {
    classical_from_moments_generic(moments)
}

/// Truncated moment sequence `m_1..m_K` of exact rationals (`m_0 = 1` implicit).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MomentSequence {
    values: Vec<BigRational>,
}

/// Which lattice a cumulant sequence belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CumulantKind {
    Free,
    Classical,
}

/// Truncated cumulant sequence `R_1..R_K` with its lattice tag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CumulantSequence {
    kind: CumulantKind,
    values: Vec<BigRational>,
}

impl MomentSequence {
    pub fn new(values: Vec<BigRational>) -> Self {
        Self { values }
    }

    pub fn order(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    /// `m_k`, 1-based.
    pub fn get(&self, k: usize) -> &BigRational {
        &self.values[k - 1]
    }

    /// Restrict to a lower order; requesting more than is known fails loudly.
    pub fn truncated(&self, order: usize) -> Result<Self, CumulantError> {
        if order > self.order() {
            return Err(CumulantError::OrderExceeded {
                len: order,
                order: self.order(),
            });
        }
        Ok(Self {
            values: self.values[..order].to_vec(),
        })
    }

    /// Free cumulants by triangular back-substitution on the noncrossing
    /// moment-cumulant relation.
    pub fn to_free_cumulants(&self) -> CumulantSequence {
        CumulantSequence {
            kind: CumulantKind::Free,
            values: free_from_moments_generic(&self.values),
        }
    }

    /// Classical cumulants over the full partition lattice.
    pub fn to_classical_cumulants(&self) -> CumulantSequence {
        CumulantSequence {
            kind: CumulantKind::Classical,
            values: classical_from_moments_generic(&self.values),
        }
    }
}

impl CumulantSequence {
    pub fn new(kind: CumulantKind, values: Vec<BigRational>) -> Self {
        Self { kind, values }
    }

    pub fn free(values: Vec<BigRational>) -> Self {
        Self::new(CumulantKind::Free, values)
    }

    pub fn classical(values: Vec<BigRational>) -> Self {
        Self::new(CumulantKind::Classical, values)
    }

    pub fn kind(&self) -> CumulantKind {
        self.kind
    }

    pub fn order(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    /// `R_k`, 1-based.
    pub fn get(&self, k: usize) -> &BigRational {
        &self.values[k - 1]
    }

    /// Reconstruct the moment sequence (dispatches on the kind tag).
    pub fn to_moments(&self) -> MomentSequence {
        let values = match self.kind {
            CumulantKind::Free => moments_from_free_generic(&self.values),
            CumulantKind::Classical => moments_from_classical_generic(&self.values),
        };
        MomentSequence::new(values)
    }

    /// Component-wise sum. For free cumulants this is the free-convolution
    /// kernel: cumulants of free elements add.
    pub fn add(&self, other: &CumulantSequence) -> Result<CumulantSequence, CumulantError> {
        if self.kind != other.kind {
            return Err(CumulantError::KindMismatch);
        }
        if self.order() != other.order() {
            return Err(CumulantError::OrderMismatch(self.order(), other.order()));
        }
        Ok(CumulantSequence {
            kind: self.kind,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }
}

/// Mixed moments of an `arity`-variable family: a map from words over
/// `{1..arity}` (up to the truncation order) to exact rationals.
#[derive(Debug, Clone)]
pub struct MomentFunctional {
    arity: usize,
    order: usize,
    values: HashMap<Vec<u8>, BigRational>,
}

impl MomentFunctional {
    /// Tabulate from a closure over all words of length `1..=order`.
    pub fn from_fn<F: FnMut(&[u8]) -> BigRational>(
        arity: usize,
        order: usize,
        mut f: F,
    ) -> Self {
        let mut values = HashMap::new();
        let mut word: Vec<u8> = Vec::new();
        fill_words(arity, order, &mut word, &mut values, &mut f);
        Self {
            arity,
            order,
            values,
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// `tau` of a word; the empty word is 1.
    pub fn moment(&self, word: &[u8]) -> Result<BigRational, CumulantError> {
        self.check_word(word)?;
        if word.is_empty() {
            return Ok(BigRational::one());
        }
        Ok(self.values[word].clone())
    }

    fn check_word(&self, word: &[u8]) -> Result<(), CumulantError> {
        if word.len() > self.order {
            return Err(CumulantError::OrderExceeded {
                len: word.len(),
                order: self.order,
            });
        }
        for &letter in word {
            if letter == 0 || letter as usize > self.arity {
                return Err(CumulantError::LetterOutOfRange {
                    letter,
                    arity: self.arity,
                });
            }
        }
        Ok(())
    }
}

fn fill_words<F: FnMut(&[u8]) -> BigRational>(
    arity: usize,
    order: usize,
    word: &mut Vec<u8>,
    values: &mut HashMap<Vec<u8>, BigRational>,
    f: &mut F,
) {
    if !word.is_empty() {
        values.insert(word.clone(), f(word));
    }
    if word.len() == order {
        return;
    }
    for letter in 1..=arity as u8 {
        word.push(letter);
        fill_words(arity, order, word, values, f);
        word.pop();
    }
}

/// Multilinear free cumulant of the tuple selected by `word`:
/// `R(w) = sum over pi in NC(|w|) of Moeb([pi, 1]) prod_V tau(w|_V)`.
pub fn mixed_free_cumulant(
    f: &MomentFunctional,
    word: &[u8],
) -> Result<BigRational, CumulantError> {
    f.check_word(word)?;
    let n = word.len();
    if n == 0 {
        return Ok(BigRational::one());
    }
    // Lattice sums are desk-scale; anything past the enumeration cap is a
    // loud error rather than an open-ended enumeration.
    let table = crate::partitions::moebius_to_top(n).map_err(|_| {
        CumulantError::OrderExceeded {
            len: n,
            order: crate::partitions::NC_ENUMERATION_CAP,
        }
    })?;
    let mut total = BigRational::zero();
    for (pi, mu) in &table {
        let mut product = BigRational::from(BigInt::from(*mu));
        for block in pi.blocks() {
            let sub: Vec<u8> = block.iter().map(|&i| word[i - 1]).collect();
            product *= f.moment(&sub)?;
        }
        total += product;
    }
    Ok(total)
}

/// Marginal moment sequences of a free family, all truncated at one order.
#[derive(Debug)]
pub struct FreeFamilySpec {
    marginals: Vec<MomentSequence>,
    free_cumulants: Vec<Vec<BigRational>>,
    order: usize,
    memo: Mutex<HashMap<Vec<u8>, BigRational>>,
}

impl FreeFamilySpec {
    pub fn new(marginals: Vec<MomentSequence>) -> Result<Self, CumulantError> {
        let order = marginals.first().map_or(0, MomentSequence::order);
        for m in &marginals {
            if m.order() != order {
                return Err(CumulantError::OrderMismatch(order, m.order()));
            }
        }
        let free_cumulants = marginals
            .iter()
            .map(|m| free_from_moments_generic(m.values()))
            .collect();
        Ok(Self {
            marginals,
            free_cumulants,
            order,
            memo: Mutex::new(HashMap::new()),
        })
    }

    pub fn arity(&self) -> usize {
        self.marginals.len()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn marginal(&self, variable: usize) -> &MomentSequence {
        &self.marginals[variable - 1]
    }

    /// Mixed moment of free variables: only noncrossing partitions whose
    /// blocks are monochromatic in the word survive (vanishing of mixed
    /// cumulants), each contributing the product of per-variable cumulants.
    pub fn free_mixed_moment(&self, word: &[u8]) -> Result<BigRational, CumulantError> {
        if word.len() > self.order {
            return Err(CumulantError::OrderExceeded {
                len: word.len(),
                order: self.order,
            });
        }
        for &letter in word {
            if letter == 0 || letter as usize > self.arity() {
                return Err(CumulantError::LetterOutOfRange {
                    letter,
                    arity: self.arity(),
                });
            }
        }
        if word.is_empty() {
            return Ok(BigRational::one());
        }
        if let Some(hit) = self.memo.lock().unwrap().get(word) {
            return Ok(hit.clone());
        }
        let mut total = BigRational::zero();
        for_each_nc_capped(
            word.len(),
            crate::partitions::NC_ENUMERATION_CAP,
            |pi| {
                let mut product = BigRational::one();
                for block in pi.blocks() {
                    let color = word[block[0] - 1];
                    if block.iter().any(|&i| word[i - 1] != color) {
                        return; // mixed block: zero contribution
                    }
                    product *= self.free_cumulants[color as usize - 1][block.len() - 1].clone();
                }
                total += product;
            },
        )
        .map_err(|_| CumulantError::OrderExceeded {
            len: word.len(),
            order: crate::partitions::NC_ENUMERATION_CAP,
        })?;
        self.memo
            .lock()
            .unwrap()
            .entry(word.to_vec())
            .or_insert_with(|| total.clone());
        Ok(total)
    }

    /// Tabulated functional generated by [`Self::free_mixed_moment`].
    pub fn functional(&self, order: usize) -> Result<MomentFunctional, CumulantError> {
        if order > self.order {
            return Err(CumulantError::OrderExceeded {
                len: order,
                order: self.order,
            });
        }
        let mut failed = None;
        let functional = MomentFunctional::from_fn(self.arity(), order, |w| {
            match self.free_mixed_moment(w) {
                Ok(v) => v,
                Err(e) => {
                    failed = Some(e);
                    BigRational::zero()
                }
            }
        });
        match failed {
            Some(e) => Err(e),
            None => Ok(functional),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{big, catalan};
    use crate::partitions::{for_each_partition, moebius_to_top};
    use proptest::prelude::*;

    fn rat(n: i64, d: i64) -> BigRational {
        big(n) / big(d)
    }

    fn seq(values: &[(i64, i64)]) -> Vec<BigRational> {
        values.iter().map(|&(n, d)| rat(n, d)).collect()
    }

    /// Literal Eq.-(2) oracle: `m_n = sum over NC(n) of prod_V r_{|V|}`.
    fn moments_from_free_oracle(r: &[BigRational]) -> Vec<BigRational> {
        (1..=r.len())
            .map(|n| {
                let mut total = BigRational::zero();
                for_each_nc_capped(n, n, |pi| {
                    let mut product = BigRational::one();
                    for block in pi.blocks() {
                        product *= r[block.len() - 1].clone();
                    }
                    total += product;
                })
                .unwrap();
                total
            })
            .collect()
    }

    /// Literal Möbius-sum oracle:
    /// `R_n = sum over NC(n) of Moeb([pi, 1]) prod_V m_{|V|}`.
    fn free_from_moments_oracle(m: &[BigRational]) -> Vec<BigRational> {
        (1..=m.len())
            .map(|n| {
                let mut total = BigRational::zero();
                for (pi, mu) in moebius_to_top(n).unwrap() {
                    let mut product = BigRational::from(BigInt::from(mu));
                    for block in pi.blocks() {
                        product *= m[block.len() - 1].clone();
                    }
                    total += product;
                }
                total
            })
            .collect()
    }

    /// Full-lattice analogues for the classical side.
    fn moments_from_classical_oracle(c: &[BigRational]) -> Vec<BigRational> {
        (1..=c.len())
            .map(|n| {
                let mut total = BigRational::zero();
                for_each_partition(n, |pi| {
                    let mut product = BigRational::one();
                    for block in pi.blocks() {
                        product *= c[block.len() - 1].clone();
                    }
                    total += product;
                })
                .unwrap();
                total
            })
            .collect()
    }

    /// Möbius function of the full partition lattice on `[pi, 1_n]` is
    /// `(-1)^(b-1) (b-1)!` for a pi with b blocks.
    fn classical_from_moments_oracle(m: &[BigRational]) -> Vec<BigRational> {
        (1..=m.len())
            .map(|n| {
                let mut total = BigRational::zero();
                for_each_partition(n, |pi| {
                    let b = pi.num_blocks();
                    let mut mu = BigRational::from(BigInt::from(
                        (1..b as i64).product::<i64>().max(1),
                    ));
                    if (b - 1) % 2 == 1 {
                        mu = -mu;
                    }
                    let mut product = mu;
                    for block in pi.blocks() {
                        product *= m[block.len() - 1].clone();
                    }
                    total += product;
                })
                .unwrap();
                total
            })
            .collect()
    }

    /// The closed form used by the classical oracle, checked against the
    /// defining Möbius recursion on the full partition lattice.
    #[test]
    fn full_lattice_moebius_closed_form() {
        for n in 1..=5usize {
            let mut members = crate::partitions::enumerate_all_partitions(n).unwrap();
            members.sort_by_key(|p| p.num_blocks());
            let mut mu: Vec<i64> = Vec::with_capacity(members.len());
            for (idx, x) in members.iter().enumerate() {
                let mut value = if x.num_blocks() == 1 { 1 } else { 0 };
                for (jdx, rho) in members.iter().enumerate().take(idx) {
                    if x.refines(rho).unwrap() {
                        value -= mu[jdx];
                    }
                }
                mu.push(value);
            }
            for (x, value) in members.iter().zip(&mu) {
                let b = x.num_blocks() as i64;
                let expected = (1..b).product::<i64>().max(1) * if (b - 1) % 2 == 1 { -1 } else { 1 };
                assert_eq!(*value, expected, "n={n} pi={x}");
            }
        }
    }

    #[test]
    fn long_words_fail_loudly_instead_of_enumerating() {
        let long = MomentSequence::new(vec![BigRational::zero(); 20]);
        let family = FreeFamilySpec::new(vec![long]).unwrap();
        assert!(matches!(
            family.free_mixed_moment(&[1u8; 20]),
            Err(CumulantError::OrderExceeded { .. })
        ));
        let f = MomentFunctional::from_fn(1, 3, |_| BigRational::zero());
        assert!(mixed_free_cumulant(&f, &[1, 1, 1]).is_ok());
    }

    #[test]
    fn point_mass_has_flat_moments() {
        let r = CumulantSequence::free(seq(&[(1, 1), (0, 1), (0, 1), (0, 1), (0, 1)]));
        let m = r.to_moments();
        assert!(m.values().iter().all(|v| v.is_one()));
    }

    #[test]
    fn semicircle_moments_are_catalan() {
        let mut r = vec![BigRational::zero(); 10];
        r[1] = BigRational::one();
        let m = CumulantSequence::free(r).to_moments();
        for k in 1..=10usize {
            let expected = if k % 2 == 0 {
                BigRational::from(catalan(k as u64 / 2))
            } else {
                BigRational::zero()
            };
            assert_eq!(*m.get(k), expected, "m_{k}");
        }
        // And back.
        let r2 = m.to_free_cumulants();
        let mut expected = vec![BigRational::zero(); 10];
        expected[1] = BigRational::one();
        assert_eq!(r2.values(), &expected[..]);
    }

    #[test]
    fn bernoulli_free_cumulants() {
        let m = MomentSequence::new(seq(&[(1, 2), (1, 2), (1, 2), (1, 2)]));
        let r = m.to_free_cumulants();
        assert_eq!(*r.get(1), rat(1, 2));
        assert_eq!(*r.get(2), rat(1, 4));
        assert_eq!(*r.get(3), rat(0, 1));
        assert_eq!(*r.get(4), rat(-1, 16));
    }

    #[test]
    fn second_cumulant_is_variance_for_both_kinds() {
        let m = MomentSequence::new(seq(&[(3, 7), (9, 5)]));
        let free = m.to_free_cumulants();
        let classical = m.to_classical_cumulants();
        let variance = m.get(2) - m.get(1) * m.get(1);
        assert_eq!(*free.get(2), variance);
        assert_eq!(*classical.get(2), variance);
    }

    #[test]
    fn classical_third_cumulant_formula() {
        let m = MomentSequence::new(seq(&[(2, 3), (5, 4), (7, 2)]));
        let c = m.to_classical_cumulants();
        let (m1, m2, m3) = (m.get(1), m.get(2), m.get(3));
        assert_eq!(*c.get(3), m3 - big(3) * m1 * m2 + big(2) * m1 * m1 * m1);
        // Free and classical agree through order 3 (all partitions of <= 3
        // elements are noncrossing).
        let r = m.to_free_cumulants();
        assert_eq!(r.values()[..3], c.values()[..3]);
    }

    #[test]
    fn centered_fourth_order_discrepancy_is_crossing_pairing() {
        // m1 = 0: classical C4 = m4 - 3 m2^2, free R4 = m4 - 2 m2^2.
        let m = MomentSequence::new(seq(&[(0, 1), (5, 3), (0, 1), (11, 2)]));
        let c4 = m.to_classical_cumulants().get(4).clone();
        let r4 = m.to_free_cumulants().get(4).clone();
        let m2sq = m.get(2) * m.get(2);
        assert_eq!(c4.clone() - r4, -m2sq.clone());
        assert_eq!(c4, m.get(4) - big(3) * m2sq);
    }

    #[test]
    fn engines_match_lattice_oracles() {
        let cases = [
            seq(&[(1, 2), (1, 3), (1, 5), (2, 7), (3, 2), (1, 1)]),
            seq(&[(0, 1), (1, 1), (0, 1), (2, 1), (0, 1), (5, 1)]),
            seq(&[(-3, 2), (4, 1), (-1, 6), (0, 1), (9, 8), (-2, 5)]),
        ];
        for values in cases {
            assert_eq!(moments_from_free_generic(&values), moments_from_free_oracle(&values));
            assert_eq!(free_from_moments_generic(&values), free_from_moments_oracle(&values));
            assert_eq!(
                moments_from_classical_generic(&values),
                moments_from_classical_oracle(&values)
            );
            assert_eq!(
                classical_from_moments_generic(&values),
                classical_from_moments_oracle(&values)
            );
        }
    }

    #[test]
    fn five_term_third_order_expansion() {
        // tau(a1 a2 a3) decomposes over the five partitions of NC(3).
        let f = MomentFunctional::from_fn(3, 3, |w| {
            // An arbitrary but deterministic exact functional.
            let mut acc = big(1);
            for (i, &l) in w.iter().enumerate() {
                acc += rat(l as i64 + 2 * i as i64 + 1, 2 + i as i64);
                acc *= rat(l as i64, 3);
            }
            acc
        });
        let w = [1u8, 2, 3];
        let r3 = mixed_free_cumulant(&f, &w).unwrap();
        let tau = |v: &[u8]| f.moment(v).unwrap();
        let expected = tau(&[1, 2, 3])
            - tau(&[1]) * tau(&[2, 3])
            - tau(&[2]) * tau(&[1, 3])
            - tau(&[3]) * tau(&[1, 2])
            + big(2) * tau(&[1]) * tau(&[2]) * tau(&[3]);
        assert_eq!(r3, expected);
        // Eq.-(2) reassembly: the five-term sum of cumulant products gives tau back.
        let r = |v: &[u8]| mixed_free_cumulant(&f, v).unwrap();
        let reassembled = r(&[1, 2, 3])
            + r(&[1, 2]) * r(&[3])
            + r(&[1, 3]) * r(&[2])
            + r(&[2, 3]) * r(&[1])
            + r(&[1]) * r(&[2]) * r(&[3]);
        assert_eq!(reassembled, tau(&[1, 2, 3]));
    }

    #[test]
    fn short_mixed_cumulants() {
        let f = MomentFunctional::from_fn(2, 4, |w| {
            let mut acc = big(0);
            for &l in w {
                acc += rat(2 * l as i64 - 1, 3);
            }
            acc * rat(1, w.len() as i64)
        });
        assert_eq!(
            mixed_free_cumulant(&f, &[2]).unwrap(),
            f.moment(&[2]).unwrap()
        );
        assert_eq!(
            mixed_free_cumulant(&f, &[1, 2]).unwrap(),
            f.moment(&[1, 2]).unwrap() - f.moment(&[1]).unwrap() * f.moment(&[2]).unwrap()
        );
    }

    #[test]
    fn free_family_mixed_moments() {
        let a = MomentSequence::new(seq(&[(1, 2), (2, 3), (3, 4), (5, 6)]));
        let b = MomentSequence::new(seq(&[(-1, 3), (7, 5), (1, 9), (2, 1)]));
        let family = FreeFamilySpec::new(vec![a.clone(), b.clone()]).unwrap();

        // Single letters reproduce the marginals.
        for k in 1..=4usize {
            assert_eq!(family.free_mixed_moment(&vec![1u8; k]).unwrap(), *a.get(k));
            assert_eq!(family.free_mixed_moment(&vec![2u8; k]).unwrap(), *b.get(k));
        }

        // tau(ab) = tau(a) tau(b).
        assert_eq!(
            family.free_mixed_moment(&[1, 2]).unwrap(),
            a.get(1) * b.get(1)
        );

        // tau(abab) = m2a m1b^2 + m1a^2 m2b - m1a^2 m1b^2.
        let expected = a.get(2) * b.get(1) * b.get(1) + a.get(1) * a.get(1) * b.get(2)
            - a.get(1) * a.get(1) * b.get(1) * b.get(1);
        assert_eq!(family.free_mixed_moment(&[1, 2, 1, 2]).unwrap(), expected);
    }

    #[test]
    fn centered_alternating_words_vanish() {
        // Both variables centered: freeness makes alternating words vanish.
        let a = MomentSequence::new(seq(&[(0, 1), (2, 3), (1, 4), (5, 6), (0, 1), (1, 1)]));
        let b = MomentSequence::new(seq(&[(0, 1), (7, 5), (-1, 9), (2, 1), (1, 3), (4, 7)]));
        let family = FreeFamilySpec::new(vec![a, b]).unwrap();
        for len in [2usize, 4, 6] {
            let word: Vec<u8> = (0..len).map(|i| 1 + (i % 2) as u8).collect();
            assert!(
                family.free_mixed_moment(&word).unwrap().is_zero(),
                "len={len}"
            );
        }
    }

    #[test]
    fn mixed_cumulants_of_free_variables_vanish() {
        // Vanishing of mixed cumulants: on the functional generated by a free family,
        // every cumulant word using both letters is zero (|w| <= 6).
        let a = MomentSequence::new(seq(&[(1, 2), (2, 3), (3, 4), (5, 6), (1, 7), (2, 9)]));
        let b = MomentSequence::new(seq(&[(-1, 3), (7, 5), (1, 9), (2, 1), (0, 1), (3, 8)]));
        let family = FreeFamilySpec::new(vec![a, b]).unwrap();
        let f = family.functional(6).unwrap();
        let mut checked = 0usize;
        for len in 2..=6usize {
            for code in 0..(1usize << len) {
                let word: Vec<u8> = (0..len)
                    .map(|i| 1 + ((code >> i) & 1) as u8)
                    .collect();
                let distinct = word.iter().any(|&l| l != word[0]);
                if !distinct {
                    continue;
                }
                assert!(
                    mixed_free_cumulant(&f, &word).unwrap().is_zero(),
                    "word {word:?}"
                );
                checked += 1;
            }
        }
        assert!(checked > 100);
    }

    #[test]
    fn mixed_cumulant_is_multilinear() {
        // Substitute letter 4 := lambda * (letter 3) + (letter 1) by linear
        // expansion of the functional, then compare slot-wise.
        let f = MomentFunctional::from_fn(3, 3, |w| {
            let mut acc = big(1);
            for (i, &l) in w.iter().enumerate() {
                acc += rat((l as i64 + 1) * (i as i64 + 2), 5) * rat(l as i64, 2);
                acc *= rat(2 * l as i64 + i as i64, 3);
            }
            acc
        });
        let lambda = rat(5, 3);
        let expand = |w: &[u8]| -> BigRational {
            // Expand every occurrence of 4 into lambda*3 + 1.
            let slots: Vec<usize> = (0..w.len()).filter(|&i| w[i] == 4).collect();
            let mut total = BigRational::zero();
            for mask in 0..(1usize << slots.len()) {
                let mut v = w.to_vec();
                let mut coeff = BigRational::one();
                for (bit, &slot) in slots.iter().enumerate() {
                    if (mask >> bit) & 1 == 1 {
                        v[slot] = 3;
                        coeff *= lambda.clone();
                    } else {
                        v[slot] = 1;
                    }
                }
                total += coeff * f.moment(&v).unwrap();
            }
            total
        };
        let g = MomentFunctional::from_fn(4, 3, |w| expand(w));
        let lhs = mixed_free_cumulant(&g, &[1, 2, 4]).unwrap();
        let rhs = lambda.clone() * mixed_free_cumulant(&f, &[1, 2, 3]).unwrap()
            + mixed_free_cumulant(&f, &[1, 2, 1]).unwrap();
        assert_eq!(lhs, rhs);
        // Same in the middle slot.
        let lhs2 = mixed_free_cumulant(&g, &[2, 4, 3]).unwrap();
        let rhs2 = lambda.clone() * mixed_free_cumulant(&f, &[2, 3, 3]).unwrap()
            + mixed_free_cumulant(&f, &[2, 1, 3]).unwrap();
        assert_eq!(lhs2, rhs2);
    }

    #[test]
    fn additivity_identity_and_arcsine() {
        let bern = MomentSequence::new(seq(&[(1, 2), (1, 2), (1, 2), (1, 2)]))
            .to_free_cumulants();
        let zero = CumulantSequence::free(vec![BigRational::zero(); 4]);
        assert_eq!(bern.add(&zero).unwrap(), bern);

        // Bernoulli(1/2; 0, 1) boxplus itself: the projection-sum law with
        // moments 1, 3/2, 5/2, 35/8.
        let doubled = bern.add(&bern).unwrap();
        let m = doubled.to_moments();
        assert_eq!(m.values(), &seq(&[(1, 1), (3, 2), (5, 2), (35, 8)])[..]);

        // Symmetric +-1 Bernoulli doubled: arcsine on [-2, 2], m2 = 2, m4 = 6.
        let pm = MomentSequence::new(seq(&[(0, 1), (1, 1), (0, 1), (1, 1)]))
            .to_free_cumulants();
        let arcsine = pm.add(&pm).unwrap().to_moments();
        assert_eq!(arcsine.values(), &seq(&[(0, 1), (2, 1), (0, 1), (6, 1)])[..]);

        // Two unit semicircles give the variance-2 semicircle.
        let mut semi = vec![BigRational::zero(); 4];
        semi[1] = BigRational::one();
        let semi = CumulantSequence::free(semi);
        let two = semi.add(&semi).unwrap();
        assert_eq!(two.values(), &seq(&[(0, 1), (2, 1), (0, 1), (0, 1)])[..]);

        // Mismatches fail loudly.
        let m3 = CumulantSequence::free(vec![BigRational::zero(); 3]);
        assert_eq!(
            semi.add(&m3).unwrap_err(),
            CumulantError::OrderMismatch(4, 3)
        );
        let classical = CumulantSequence::classical(vec![BigRational::zero(); 4]);
        assert_eq!(semi.add(&classical).unwrap_err(), CumulantError::KindMismatch);
    }

    #[test]
    fn order_limits_fail_loudly() {
        let m = MomentSequence::new(seq(&[(1, 2), (1, 3)]));
        assert!(m.truncated(1).is_ok());
        assert_eq!(
            m.truncated(5).unwrap_err(),
            CumulantError::OrderExceeded { len: 5, order: 2 }
        );
        let family = FreeFamilySpec::new(vec![m]).unwrap();
        assert!(family.free_mixed_moment(&[1, 1, 1]).is_err());
        assert!(family.free_mixed_moment(&[2]).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn free_round_trip_exact(values in prop::collection::vec(-40i64..40, 1..=10)) {
            let m: Vec<BigRational> = values.iter().map(|&v| big(v)).collect();
            let ms = MomentSequence::new(m.clone());
            let back = ms.to_free_cumulants().to_moments();
            prop_assert_eq!(back.values(), &m[..]);
        }

        #[test]
        fn classical_round_trip_exact(values in prop::collection::vec(-40i64..40, 1..=8)) {
            let m: Vec<BigRational> = values.iter().map(|&v| big(v)).collect();
            let ms = MomentSequence::new(m.clone());
            let back = ms.to_classical_cumulants().to_moments();
            prop_assert_eq!(back.values(), &m[..]);
        }

        #[test]
        fn low_orders_agree_across_kinds(values in prop::collection::vec((-30i64..30, 1i64..9), 3..=6)) {
            let m: Vec<BigRational> = values.iter().map(|&(n, d)| rat(n, d)).collect();
            let ms = MomentSequence::new(m);
            let free = ms.to_free_cumulants();
            let classical = ms.to_classical_cumulants();
            prop_assert_eq!(&free.values()[..3], &classical.values()[..3]);
        }
    }
}

//! Exact symmetric-group characters via the Murnaghan-Nakayama recursion,
//! hook-length dimensions, class sizes, and the character-theoretic
//! induced-decomposition oracle.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{CycleType, YoungDiagram, YoungError};

/// Process-wide write-once cache of integer character values keyed by
/// (shape rows, full cycle-type parts). Characters are immutable facts, so
/// sharing across calls is safe; it keeps repeated induced-decomposition
/// sweeps from recomputing the same small tables.
fn char_cache() -> &'static Mutex<HashMap<(Vec<usize>, Vec<usize>), BigInt>> {
    static CACHE: OnceLock<Mutex<HashMap<(Vec<usize>, Vec<usize>), BigInt>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Exact characters are desk-scale; the beta-set recursion with memoization
/// stays fast up to here.
pub const MN_FEASIBILITY_CAP: usize = 40;
/// Induced-decomposition oracle cap on `n1 + n2`.
pub const INDUCTION_CAP: usize = 12;

/// Dimension of the irreducible representation, by the hook length formula.
pub fn dimension(d: &YoungDiagram) -> BigInt {
    let n = d.n();
    if n == 0 {
        return BigInt::one();
    }
    let rows = d.rows();
    let conj = d.conjugate();
    let cols = conj.rows();
    let mut numerator = BigInt::one();
    for k in 1..=n {
        numerator *= BigInt::from(k);
    }
    let mut denominator = BigInt::one();
    for (i, &len) in rows.iter().enumerate() {
        for j in 1..=len {
            let hook = (len - j) + (cols[j - 1] - (i + 1)) + 1;
            denominator *= BigInt::from(hook);
        }
    }
    numerator / denominator
}

/// Number of permutations in the class `ct` inside the symmetric group on
/// `n` points: `n! / prod_j j^{k_j} k_j!` over all cycle lengths including
/// fixed points.
pub fn class_size(n: usize, ct: &CycleType) -> Result<BigInt, YoungError> {
    let support = ct.support();
    if support > n {
        return Err(YoungError::ClassTooLarge { support, n });
    }
    let mut size = BigInt::one();
    for k in 1..=n {
        size *= BigInt::from(k);
    }
    let mut divisor = BigInt::one();
    let fixed = n - support;
    let mut all_counts: Vec<(usize, usize)> = ct.counts().iter().map(|(&j, &k)| (j, k)).collect();
    if fixed > 0 {
        all_counts.push((1, fixed));
    }
    for (j, k) in all_counts {
        divisor *= BigInt::from(j).pow(k as u32);
        for f in 1..=k {
            divisor *= BigInt::from(f);
        }
    }
    Ok(size / divisor)
}

/// Beta-set of a shape padded to `len` entries: `beta_i = lambda_i + len - i`,
/// strictly decreasing, kept sorted descending.
fn beta_set(rows: &[usize], len: usize) -> Vec<usize> {
    (0..len)
        .map(|i| rows.get(i).copied().unwrap_or(0) + (len - 1 - i))
        .collect()
}

/// Integer (unnormalized) character by border-strip removal on beta-sets.
/// `parts` is the full cycle type, processed left to right; memoized on
/// (beta-set, parts consumed).
fn mn_character_int(
    betas: &[usize],
    parts: &[usize],
    idx: usize,
    memo: &mut HashMap<(Vec<usize>, usize), BigInt>,
) -> BigInt {
    if idx == parts.len() {
        return BigInt::one();
    }
    let key = (betas.to_vec(), idx);
    if let Some(hit) = memo.get(&key) {
        return hit.clone();
    }
    let strip = parts[idx];
    let mut total = BigInt::zero();
    for (pos, &b) in betas.iter().enumerate() {
        if b < strip {
            continue;
        }
        let target = b - strip;
        if betas.contains(&target) {
            continue;
        }
        // Height of the strip = number of betas strictly between target and b.
        let between = betas
            .iter()
            .filter(|&&v| v < b && v > target)
            .count();
        let mut next: Vec<usize> = betas.to_vec();
        next[pos] = target;
        next.sort_unstable_by(|a, b| b.cmp(a));
        let sub = mn_character_int(&next, parts, idx + 1, memo);
        if between % 2 == 0 {
            total += sub;
        } else {
            total -= sub;
        }
    }
    memo.insert(key, total.clone());
    total
}

/// Unnormalized integer character of the diagram on the class `ct` inside
/// the symmetric group on `d.n()` points.
pub fn character_int(d: &YoungDiagram, ct: &CycleType) -> Result<BigInt, YoungError> {
    let n = d.n();
    if n > MN_FEASIBILITY_CAP {
        return Err(YoungError::InfeasibleSize(n, MN_FEASIBILITY_CAP));
    }
    let parts = ct.parts_in(n)?;
    if n == 0 {
        return Ok(BigInt::one());
    }
    let key = (d.rows().to_vec(), parts.clone());
    if let Some(hit) = char_cache().lock().unwrap().get(&key) {
        return Ok(hit.clone());
    }
    let len = d.num_rows();
    let betas = beta_set(d.rows(), len);
    let mut memo = HashMap::new();
    let value = mn_character_int(&betas, &parts, 0, &mut memo);
    char_cache()
        .lock()
        .unwrap()
        .entry(key)
        .or_insert_with(|| value.clone());
    Ok(value)
}

/// Normalized character `chi(sigma) / chi(id)`, exact.
pub fn mn_character(d: &YoungDiagram, ct: &CycleType) -> Result<BigRational, YoungError> {
    let chi = character_int(d, ct)?;
    let dim = dimension(d);
    Ok(BigRational::new(chi, dim))
}

/// Factorization diagnostic for disjointly supported classes: the defect
/// `|chi(s1 s2) - chi(s1) chi(s2)|` together with the comparison scale
/// `n^(-1 - |s1 s2| / 2)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FactorizationDefect {
    pub defect: BigRational,
    pub scale: f64,
}

impl FactorizationDefect {
    pub fn defect_f64(&self) -> f64 {
        crate::arith::rational_to_f64(&self.defect)
    }
}

/// Defect of asymptotic multiplicativity of the normalized character on two
/// classes that fit disjointly inside the diagram's symmetric group.
pub fn factorization_defect(
    d: &YoungDiagram,
    ct1: &CycleType,
    ct2: &CycleType,
) -> Result<FactorizationDefect, YoungError> {
    let n = d.n();
    let combined = ct1.concat(ct2);
    if combined.support() > n {
        return Err(YoungError::ClassTooLarge {
            support: combined.support(),
            n,
        });
    }
    let joint = mn_character(d, &combined)?;
    let left = mn_character(d, ct1)?;
    let right = mn_character(d, ct2)?;
    let defect = (joint - left * right).abs();
    let scale = (n as f64).powf(-1.0 - combined.cayley_norm() as f64 / 2.0);
    Ok(FactorizationDefect { defect, scale })
}

/// Decompose the induction of the product representation `d1 (x) d2` from
/// `S_{n1} x S_{n2}` to `S_{n1+n2}`, character-theoretically:
/// `mult(nu) = sum over class pairs (|c1||c2| / n1! n2!) chi1(c1) chi2(c2) chi_nu(c1 + c2)`.
pub fn induced_decomposition_oracle(
    d1: &YoungDiagram,
    d2: &YoungDiagram,
) -> Result<Vec<(YoungDiagram, u64)>, YoungError> {
    let (n1, n2) = (d1.n(), d2.n());
    let n = n1 + n2;
    if n > INDUCTION_CAP {
        return Err(YoungError::InfeasibleSize(n, INDUCTION_CAP));
    }
    // Conjugacy classes as cycle types derived from partitions.
    let classes1 = classes_of(n1);
    let classes2 = classes_of(n2);
    // Precompute the weighted character rows of d1 and d2.
    let mut pair_terms: Vec<(CycleType, BigRational)> = Vec::new();
    let fact1 = factorial(n1);
    let fact2 = factorial(n2);
    for c1 in &classes1 {
        let chi1 = character_int(d1, c1)?;
        if chi1.is_zero() {
            continue;
        }
        let w1 = BigRational::new(class_size(n1, c1)? * chi1, fact1.clone());
        for c2 in &classes2 {
            let chi2 = character_int(d2, c2)?;
            if chi2.is_zero() {
                continue;
            }
            let w2 = BigRational::new(class_size(n2, c2)? * chi2, fact2.clone());
            pair_terms.push((c1.concat(c2), &w1 * w2));
        }
    }
    let mut decomposition = Vec::new();
    for nu in YoungDiagram::enumerate_all(n) {
        let mut mult = BigRational::zero();
        for (class, weight) in &pair_terms {
            let chi = character_int(&nu, class)?;
            if !chi.is_zero() {
                mult += weight * BigRational::from(chi);
            }
        }
        assert!(
            mult.is_integer() && !mult.is_negative(),
            "character inner product must be a nonnegative integer, got {mult}"
        );
        let value = mult.to_integer().to_u64().expect("desk-scale multiplicity");
        if value > 0 {
            decomposition.push((nu, value));
        }
    }
    Ok(decomposition)
}

fn classes_of(n: usize) -> Vec<CycleType> {
    YoungDiagram::enumerate_all(n)
        .into_iter()
        .map(|shape| {
            let mut counts = std::collections::BTreeMap::new();
            for &part in shape.rows() {
                if part >= 2 {
                    *counts.entry(part).or_insert(0) += 1;
                }
            }
            CycleType::new(counts).expect("parts >= 2 only")
        })
        .collect()
}

fn factorial(n: usize) -> BigInt {
    let mut f = BigInt::one();
    for k in 1..=n {
        f *= BigInt::from(k);
    }
    f
}

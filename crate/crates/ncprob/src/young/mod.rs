//! Young diagrams, interlacing coordinates, Kerov transition measures,
//! diagram cumulants, and the asymptotic character formula.
//!
//! Orientation convention: the profile coordinate of a corner in row `i`,
//! column `j` is `i - j`. Under this convention the diagram (3,2,2,1) has
//! interlacing minima (-3,-1,2,4) and maxima (-2,1,3), and the third free
//! cumulant of its transition measure is +8. The opposite convention is the
//! conjugate diagram; see [`YoungDiagram::conjugate`].
//!
//! Because conjugation negates the odd cumulants, [`character_estimate`] under
//! this orientation tracks the exact character of the *conjugate* diagram on
//! classes of odd Cayley norm; on self-conjugate shapes (and on even classes)
//! the distinction vanishes. Estimating `mn_character(d, ct)` for an
//! asymmetric `d` therefore means calling `character_estimate(&d.conjugate(),
//! ct)`; the sign cross-checks in the test suite pin this pairing.

mod characters;

pub use characters::{
    class_size, dimension, factorization_defect, induced_decomposition_oracle, mn_character,
    FactorizationDefect,
};

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rand::Rng;
use thiserror::Error;

use crate::arith::rational_pow;
use crate::cumulants::{CumulantSequence, MomentSequence};
use crate::measure::{DiscreteMeasure, MeasureError};
use crate::transforms::{free_convolve, TransformError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum YoungError {
    /// Rows must be weakly decreasing and positive.
    #[error("rows must be weakly decreasing positive integers")]
    InvalidRows,
    /// Interlacing or centering violated.
    #[error("coordinates must strictly interlace and be centered")]
    InvalidInterlacing,
    /// A conjugacy class does not fit in the ambient symmetric group.
    #[error("cycle type needs support {support} but the diagram has {n} boxes")]
    ClassTooLarge { support: usize, n: usize },
    /// Cycle lengths must be at least 2 (fixed points are implicit).
    #[error("cycle lengths must be >= 2")]
    InvalidCycleLength,
    /// Exact character computations are capped at desk scale.
    #[error("size {0} exceeds the exact-character feasibility cap {1}")]
    InfeasibleSize(usize, usize),
    /// Unparseable cycle-type text.
    #[error("invalid cycle type `{0}`")]
    ParseCycleType(String),
    #[error(transparent)]
    Measure(#[from] MeasureError),
    #[error(transparent)]
    Transform(#[from] TransformError),
}

/// A Young diagram as weakly decreasing positive row lengths (empty allowed).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct YoungDiagram {
    rows: Vec<usize>,
}

impl YoungDiagram {
    pub fn new(rows: Vec<usize>) -> Result<Self, YoungError> {
        for pair in rows.windows(2) {
            if pair[0] < pair[1] {
                return Err(YoungError::InvalidRows);
            }
        }
        if rows.last() == Some(&0) {
            return Err(YoungError::InvalidRows);
        }
        Ok(Self { rows })
    }

    pub fn empty() -> Self {
        Self { rows: Vec::new() }
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    /// Number of boxes.
    pub fn n(&self) -> usize {
        self.rows.iter().sum()
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    /// Transpose rows and columns.
    pub fn conjugate(&self) -> Self {
        let cols = self.rows.first().copied().unwrap_or(0);
        let rows = (1..=cols)
            .map(|j| self.rows.iter().filter(|&&r| r >= j).count())
            .collect();
        Self { rows }
    }

    /// All diagrams with `n` boxes, in lexicographically decreasing order.
    pub fn enumerate_all(n: usize) -> Vec<Self> {
        let mut out = Vec::new();
        let mut rows = Vec::new();
        fn rec(remaining: usize, max_part: usize, rows: &mut Vec<usize>, out: &mut Vec<YoungDiagram>) {
            if remaining == 0 {
                out.push(YoungDiagram { rows: rows.clone() });
                return;
            }
            for part in (1..=remaining.min(max_part)).rev() {
                rows.push(part);
                rec(remaining - part, part, rows, out);
                rows.pop();
            }
        }
        rec(n, n, &mut rows, &mut out);
        out
    }

    /// Uniformly random partition of `n` via the part-counting table.
    pub fn sample_uniform<R: Rng>(n: usize, rng: &mut R) -> Self {
        use rand::RngExt;
        // table[m][k] = number of partitions of m with all parts <= k
        let mut table = vec![vec![0u128; n + 1]; n + 1];
        table[0].fill(1);
        for m in 1..=n {
            for k in 1..=n {
                table[m][k] = table[m][k - 1] + if m >= k { table[m - k][k] } else { 0 };
            }
        }
        let mut rows = Vec::new();
        let mut m = n;
        let mut cap = n;
        while m > 0 {
            let total = table[m][cap.min(m)];
            let mut ticket = rng.random_range(0..total);
            // Choose the largest part j: there are table[m - j][j] partitions
            // with largest part exactly... iterate j downward using the
            // increments of the table.
            let mut chosen = 0;
            for j in (1..=cap.min(m)).rev() {
                let with_j = table[m - j][j.min(m - j)];
                if ticket < with_j {
                    chosen = j;
                    break;
                }
                ticket -= with_j;
            }
            debug_assert!(chosen > 0);
            rows.push(chosen);
            m -= chosen;
            cap = chosen;
        }
        Self { rows }
    }
}

impl fmt::Display for YoungDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.rows.iter().map(|r| r.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Local minima and maxima of the diagram profile: integers with
/// `x_1 < y_1 < x_2 < ... < y_{k-1} < x_k` and `sum(x) - sum(y) = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InterlacingCoords {
    minima: Vec<i64>,
    maxima: Vec<i64>,
}

impl InterlacingCoords {
    pub fn new(minima: Vec<i64>, maxima: Vec<i64>) -> Result<Self, YoungError> {
        if minima.len() != maxima.len() + 1 || minima.is_empty() {
            return Err(YoungError::InvalidInterlacing);
        }
        for i in 0..maxima.len() {
            if !(minima[i] < maxima[i] && maxima[i] < minima[i + 1]) {
                return Err(YoungError::InvalidInterlacing);
            }
        }
        let balance: i64 = minima.iter().sum::<i64>() - maxima.iter().sum::<i64>();
        if balance != 0 {
            return Err(YoungError::InvalidInterlacing);
        }
        Ok(Self { minima, maxima })
    }

    pub fn minima(&self) -> &[i64] {
        &self.minima
    }

    pub fn maxima(&self) -> &[i64] {
        &self.maxima
    }

    /// Scale both coordinate lists by a positive integer factor.
    pub fn dilate(&self, factor: i64) -> Result<Self, YoungError> {
        if factor < 1 {
            return Err(YoungError::InvalidInterlacing);
        }
        Ok(Self {
            minima: self.minima.iter().map(|x| x * factor).collect(),
            maxima: self.maxima.iter().map(|y| y * factor).collect(),
        })
    }
}

/// Interlacing coordinates of a diagram: minima are the profile coordinates
/// `i - j` of addable corners, maxima those of removable corners.
pub fn diagram_to_interlacing(d: &YoungDiagram) -> InterlacingCoords {
    let rows = d.rows();
    let r = rows.len();
    let row = |i: usize| -> usize {
        if i == 0 {
            usize::MAX // virtual row above the diagram
        } else if i <= r {
            rows[i - 1]
        } else {
            0
        }
    };
    let mut minima = Vec::new();
    let mut maxima = Vec::new();
    for i in 1..=r + 1 {
        if row(i) < row(i - 1) {
            minima.push(i as i64 - row(i) as i64 - 1);
        }
        if i <= r && row(i) > row(i + 1) {
            maxima.push(i as i64 - row(i) as i64);
        }
    }
    InterlacingCoords::new(minima, maxima).expect("diagram coordinates always interlace")
}

/// Reconstruct the diagram from its profile: each unit up-step of the profile
/// between `x_1` and `x_k` is a row, and the i-th up-step at position `u`
/// gives row length `i - 1 - u`.
pub fn interlacing_to_diagram(c: &InterlacingCoords) -> YoungDiagram {
    let mut rows = Vec::new();
    let mut row_index = 0i64;
    let k = c.minima.len();
    for seg in 0..k - 1 {
        // Up-run [x_seg, y_seg), then down-run [y_seg, x_{seg+1}).
        for u in c.minima[seg]..c.maxima[seg] {
            row_index += 1;
            let len = row_index - 1 - u;
            debug_assert!(len > 0);
            rows.push(len as usize);
        }
    }
    YoungDiagram::new(rows).expect("profile reconstruction yields a diagram")
}

/// Kerov transition measure: atoms at the minima with weights given by the
/// residues of `prod(z - y_j) / prod(z - x_i)`, exact.
pub fn transition_measure(c: &InterlacingCoords) -> Result<DiscreteMeasure, YoungError> {
    let mut atoms = Vec::with_capacity(c.minima.len());
    for (i, &x) in c.minima.iter().enumerate() {
        let mut weight = BigRational::one();
        for &y in &c.maxima {
            weight *= BigRational::from(BigInt::from(x - y));
        }
        for (l, &x2) in c.minima.iter().enumerate() {
            if l != i {
                weight /= BigRational::from(BigInt::from(x - x2));
            }
        }
        atoms.push((BigRational::from(BigInt::from(x)), weight));
    }
    Ok(DiscreteMeasure::new(atoms)?)
}

/// Free cumulants of the diagram's transition measure, exact.
pub fn diagram_free_cumulants(d: &YoungDiagram, k_max: usize) -> CumulantSequence {
    let measure = transition_measure(&diagram_to_interlacing(d))
        .expect("transition measure of a diagram is a probability measure");
    measure.moments(k_max).to_free_cumulants()
}

/// A conjugacy class with `k_j` cycles of length `j >= 2`; fixed points are
/// implicit and depend on the ambient group.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CycleType {
    counts: BTreeMap<usize, usize>,
}

impl CycleType {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn new(counts: BTreeMap<usize, usize>) -> Result<Self, YoungError> {
        if counts.keys().any(|&j| j < 2) {
            return Err(YoungError::InvalidCycleLength);
        }
        let counts = counts.into_iter().filter(|&(_, k)| k > 0).collect();
        Ok(Self { counts })
    }

    pub fn single_cycle(length: usize) -> Result<Self, YoungError> {
        Self::new(BTreeMap::from([(length, 1)]))
    }

    pub fn counts(&self) -> &BTreeMap<usize, usize> {
        &self.counts
    }

    /// Number of moved points, `sum_j j k_j`.
    pub fn support(&self) -> usize {
        self.counts.iter().map(|(&j, &k)| j * k).sum()
    }

    /// Cayley norm `|sigma| = sum_j (j - 1) k_j`: minimal transposition count.
    pub fn cayley_norm(&self) -> usize {
        self.counts.iter().map(|(&j, &k)| (j - 1) * k).sum()
    }

    /// Concatenate with a class of disjoint support.
    pub fn concat(&self, other: &CycleType) -> CycleType {
        let mut counts = self.counts.clone();
        for (&j, &k) in &other.counts {
            *counts.entry(j).or_insert(0) += k;
        }
        CycleType { counts }
    }

    /// Parts of the full cycle type in the symmetric group on `n` points
    /// (cycles plus fixed points), descending.
    pub fn parts_in(&self, n: usize) -> Result<Vec<usize>, YoungError> {
        let support = self.support();
        if support > n {
            return Err(YoungError::ClassTooLarge { support, n });
        }
        let mut parts = Vec::new();
        for (&j, &k) in self.counts.iter().rev() {
            parts.extend(std::iter::repeat_n(j, k));
        }
        parts.extend(std::iter::repeat_n(1, n - support));
        Ok(parts)
    }
}

impl fmt::Display for CycleType {
    /// Text form `2:1,3:2` (cycle length : count).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.counts.is_empty() {
            return write!(f, "id");
        }
        let parts: Vec<String> = self
            .counts
            .iter()
            .map(|(j, k)| format!("{j}:{k}"))
            .collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for CycleType {
    type Err = YoungError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || YoungError::ParseCycleType(s.to_string());
        if s.trim() == "id" {
            return Ok(Self::identity());
        }
        let mut counts = BTreeMap::new();
        for chunk in s.split(',') {
            let (j, k) = chunk.split_once(':').ok_or_else(err)?;
            let j: usize = j.trim().parse().map_err(|_| err())?;
            let k: usize = k.trim().parse().map_err(|_| err())?;
            *counts.entry(j).or_insert(0) += k;
        }
        Self::new(counts)
    }
}

/// Leading term of the character asymptotics together with the order of the
/// remainder bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterEstimate {
    value: BigRational,
    cayley_norm: usize,
}

impl CharacterEstimate {
    pub fn value(&self) -> &BigRational {
        &self.value
    }

    pub fn value_f64(&self) -> f64 {
        crate::arith::rational_to_f64(&self.value)
    }

    pub fn cayley_norm(&self) -> usize {
        self.cayley_norm
    }

    /// Exponent of the remainder bound: `-1 - |sigma| / 2`.
    pub fn order_bound_exponent(&self) -> f64 {
        -1.0 - self.cayley_norm as f64 / 2.0
    }
}

/// Leading-order character estimate
/// `prod_{j >= 2} n^{-j k_j} R_{j+1}(omega)^{k_j}`.
pub fn character_estimate(
    d: &YoungDiagram,
    ct: &CycleType,
) -> Result<CharacterEstimate, YoungError> {
    let n = d.n();
    let support = ct.support();
    if support > n {
        return Err(YoungError::ClassTooLarge { support, n });
    }
    let max_order = ct.counts().keys().next_back().map_or(1, |&j| j + 1);
    let cumulants = diagram_free_cumulants(d, max_order);
    let n_rat = BigRational::from(BigInt::from(n as i64));
    let mut value = BigRational::one();
    for (&j, &k) in ct.counts() {
        let factor = rational_pow(&n_rat, -((j * k) as i64))
            * rational_pow(cumulants.get(j + 1), k as i64);
        value *= factor;
    }
    Ok(CharacterEstimate {
        value,
        cayley_norm: ct.cayley_norm(),
    })
}

/// Longest row and column both at most `A sqrt(n)`.
pub fn balanced_check(d: &YoungDiagram, a: f64) -> bool {
    let n = d.n() as f64;
    let widest = d.rows().first().copied().unwrap_or(0) as f64;
    let tallest = d.num_rows() as f64;
    widest <= a * n.sqrt() && tallest <= a * n.sqrt()
}

/// Predicted transition-measure moments for the typical component of the
/// induced representation: free convolution of the two transition measures.
pub fn induce_shape_prediction(
    d1: &YoungDiagram,
    d2: &YoungDiagram,
    order: usize,
) -> Result<MomentSequence, YoungError> {
    let m1 = transition_measure(&diagram_to_interlacing(d1))?.moments(order);
    let m2 = transition_measure(&diagram_to_interlacing(d2))?.moments(order);
    Ok(free_convolve(&m1, &m2, order)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{big, rational_to_f64};
    use num_traits::Zero;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rat(n: i64, d: i64) -> BigRational {
        big(n) / big(d)
    }

    fn diagram(rows: &[usize]) -> YoungDiagram {
        YoungDiagram::new(rows.to_vec()).unwrap()
    }

    #[test]
    fn diagram_validation() {
        assert!(YoungDiagram::new(vec![3, 2, 2, 1]).is_ok());
        assert!(YoungDiagram::new(vec![2, 3]).is_err());
        assert!(YoungDiagram::new(vec![2, 0]).is_err());
        assert_eq!(YoungDiagram::empty().n(), 0);
    }

    #[test]
    fn conjugation_is_involutive() {
        let d = diagram(&[3, 2, 2, 1]);
        assert_eq!(d.conjugate().rows(), &[4, 3, 1]);
        assert_eq!(d.conjugate().conjugate(), d);
    }

    #[test]
    fn reference_diagram_interlacing() {
        let coords = diagram_to_interlacing(&diagram(&[3, 2, 2, 1]));
        assert_eq!(coords.minima(), &[-3, -1, 2, 4]);
        assert_eq!(coords.maxima(), &[-2, 1, 3]);
    }

    #[test]
    fn small_diagram_interlacing() {
        let empty = diagram_to_interlacing(&YoungDiagram::empty());
        assert_eq!(empty.minima(), &[0]);
        assert_eq!(empty.maxima(), &[] as &[i64]);

        let one = diagram_to_interlacing(&diagram(&[1]));
        assert_eq!(one.minima(), &[-1, 1]);
        assert_eq!(one.maxima(), &[0]);
    }

    #[test]
    fn interlacing_round_trips() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            use rand::RngExt;
            let n = rng.random_range(0..=30usize);
            let d = if n == 0 {
                YoungDiagram::empty()
            } else {
                YoungDiagram::sample_uniform(n, &mut rng)
            };
            let coords = diagram_to_interlacing(&d);
            assert_eq!(interlacing_to_diagram(&coords), d, "{d}");
        }
    }

    #[test]
    fn interlacing_validation() {
        assert!(InterlacingCoords::new(vec![-1, 1], vec![0]).is_ok());
        // Not interlacing.
        assert!(InterlacingCoords::new(vec![0, 1], vec![2]).is_err());
        // Not centered.
        assert!(InterlacingCoords::new(vec![-1, 2], vec![0]).is_err());
        // Repeated minima are impossible to even state (strict ordering).
        assert!(InterlacingCoords::new(vec![1, 1], vec![1]).is_err());
    }

    #[test]
    fn reference_transition_measure() {
        let coords = diagram_to_interlacing(&diagram(&[3, 2, 2, 1]));
        let measure = transition_measure(&coords).unwrap();
        let expected = [
            (big(-3), rat(12, 35)),
            (big(-1), rat(4, 15)),
            (big(2), rat(2, 15)),
            (big(4), rat(9, 35)),
        ];
        assert_eq!(measure.atoms(), &expected);
    }

    #[test]
    fn single_box_and_empty_measures() {
        let one = transition_measure(&diagram_to_interlacing(&diagram(&[1]))).unwrap();
        assert_eq!(
            one.atoms(),
            &[(big(-1), rat(1, 2)), (big(1), rat(1, 2))]
        );
        let empty = transition_measure(&diagram_to_interlacing(&YoungDiagram::empty())).unwrap();
        assert_eq!(empty.atoms(), &[(big(0), big(1))]);
    }

    #[test]
    fn reference_diagram_cumulants() {
        let d = diagram(&[3, 2, 2, 1]);
        let r = diagram_free_cumulants(&d, 3);
        assert_eq!(*r.get(1), big(0));
        assert_eq!(*r.get(2), big(8));
        assert_eq!(*r.get(3), big(8));
    }

    #[test]
    fn transition_measure_normalization_and_r2() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..60 {
            use rand::RngExt;
            let n = rng.random_range(1..=30usize);
            let d = YoungDiagram::sample_uniform(n, &mut rng);
            let measure = transition_measure(&diagram_to_interlacing(&d)).unwrap();
            // Constructor already asserts weights > 0 and sum exactly 1.
            let m = measure.moments(2);
            assert_eq!(*m.get(1), big(0), "{d}");
            assert_eq!(*m.get(2), big(n as i64), "{d}");
        }
    }

    #[test]
    fn conjugation_flips_odd_cumulants() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..30 {
            use rand::RngExt;
            let n = rng.random_range(1..=24usize);
            let d = YoungDiagram::sample_uniform(n, &mut rng);
            let r = diagram_free_cumulants(&d, 6);
            let rc = diagram_free_cumulants(&d.conjugate(), 6);
            for k in 1..=6usize {
                if k % 2 == 0 {
                    assert_eq!(r.get(k), rc.get(k), "{d} k={k}");
                } else {
                    assert_eq!(r.get(k).clone(), -rc.get(k).clone(), "{d} k={k}");
                }
            }
        }
    }

    #[test]
    fn dilation_scales_cumulants_geometrically() {
        let d = diagram(&[3, 2, 2, 1]);
        let coords = diagram_to_interlacing(&d);
        let base = transition_measure(&coords).unwrap().moments(5).to_free_cumulants();
        for lambda in 2..=3i64 {
            let scaled = transition_measure(&coords.dilate(lambda).unwrap())
                .unwrap()
                .moments(5)
                .to_free_cumulants();
            for k in 1..=5usize {
                assert_eq!(
                    scaled.get(k).clone(),
                    crate::arith::rational_pow(&rat(lambda, 1), k as i64) * base.get(k),
                    "lambda={lambda} k={k}"
                );
            }
        }
    }

    #[test]
    fn cycle_type_basics() {
        let ct: CycleType = "2:1,3:2".parse().unwrap();
        assert_eq!(ct.support(), 8);
        assert_eq!(ct.cayley_norm(), 5);
        assert_eq!(ct.parts_in(10).unwrap(), vec![3, 3, 2, 1, 1]);
        assert!(ct.parts_in(7).is_err());
        assert!("1:2".parse::<CycleType>().is_err());
        assert!("2:x".parse::<CycleType>().is_err());
        assert_eq!("id".parse::<CycleType>().unwrap(), CycleType::identity());
        assert_eq!(ct.to_string(), "2:1,3:2");
    }

    #[test]
    fn estimate_examples() {
        let d = diagram(&[3, 2, 2, 1]);
        let id = character_estimate(&d, &CycleType::identity()).unwrap();
        assert_eq!(*id.value(), big(1));

        // One transposition: R_3 / n^2 = 8 / 64.
        let t = character_estimate(&d, &CycleType::single_cycle(2).unwrap()).unwrap();
        assert_eq!(*t.value(), rat(1, 8));
        assert_eq!(t.cayley_norm(), 1);
        assert!((t.order_bound_exponent() - (-1.5)).abs() < 1e-12);

        // Self-conjugate diagram: odd cumulants vanish, estimate is 0.
        let sym = diagram(&[2, 1]);
        let t = character_estimate(&sym, &CycleType::single_cycle(2).unwrap()).unwrap();
        assert!(t.value().is_zero());

        // Class too large.
        assert!(character_estimate(&sym, &CycleType::single_cycle(4).unwrap()).is_err());
    }

    #[test]
    fn balance_examples() {
        let square = diagram(&[4, 4, 4, 4]);
        assert!(balanced_check(&square, 1.5));
        let row = diagram(&[6]);
        assert!(!balanced_check(&row, 1.0));
        for k in 1..=8usize {
            let staircase: Vec<usize> = (1..=k).rev().collect();
            assert!(balanced_check(&diagram(&staircase), 2.0), "k={k}");
        }
    }

    #[test]
    fn induce_prediction_examples() {
        let box1 = diagram(&[1]);
        // Identity element: convolving with the empty diagram's measure.
        let with_empty =
            induce_shape_prediction(&box1, &YoungDiagram::empty(), 4).unwrap();
        let own = transition_measure(&diagram_to_interlacing(&box1))
            .unwrap()
            .moments(4);
        assert_eq!(with_empty, own);

        // box x box: arcsine [-2,2] moments (0, 2, 0, 6).
        let pred = induce_shape_prediction(&box1, &box1, 4).unwrap();
        assert_eq!(pred.values(), &[big(0), big(2), big(0), big(6)]);

        // R_2 adds box counts.
        let d1 = diagram(&[3, 1]);
        let d2 = diagram(&[2, 2, 1]);
        let pred = induce_shape_prediction(&d1, &d2, 4).unwrap();
        let r = pred.to_free_cumulants();
        assert_eq!(*r.get(2), big((d1.n() + d2.n()) as i64));
    }

    #[test]
    fn uniform_sampler_hits_every_partition() {
        // n = 6 has 11 partitions; with 2000 draws each shows up.
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut seen = std::collections::HashSet::new();
        for _ in 0..2000 {
            seen.insert(YoungDiagram::sample_uniform(6, &mut rng));
        }
        assert_eq!(seen.len(), YoungDiagram::enumerate_all(6).len());
        // Frequencies should be roughly uniform; check the extremes only.
        let mut counts = std::collections::HashMap::new();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let draws = 11_000usize;
        for _ in 0..draws {
            *counts
                .entry(YoungDiagram::sample_uniform(6, &mut rng))
                .or_insert(0usize) += 1;
        }
        for (d, c) in counts {
            let expected = draws as f64 / 11.0;
            assert!(
                (c as f64 - expected).abs() < 5.0 * expected.sqrt() + 10.0,
                "{d}: {c}"
            );
        }
    }

    #[test]
    fn estimate_value_f64_renders() {
        let d = diagram(&[3, 2, 2, 1]);
        let t = character_estimate(&d, &CycleType::single_cycle(2).unwrap()).unwrap();
        assert!((t.value_f64() - 0.125).abs() < 1e-15);
        assert!((rational_to_f64(t.value()) - 0.125).abs() < 1e-15);
    }
}

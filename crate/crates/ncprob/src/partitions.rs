//! Set partitions of `{1..n}`, the noncrossing lattice `NC(n)`, and its
//! Möbius function.
//!
//! Partitions are kept in a canonical form (blocks sorted internally, blocks
//! ordered by least element) so that equal partitions have identical
//! representations and can be used as lookup keys.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Errors from partition construction and lattice operations.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum PartitionError {
    /// Blocks are empty, overlap, or fail to cover `1..=n`.
    #[error("blocks do not form a partition of 1..={0}")]
    InvalidBlocks(usize),
    /// Two operands live on different ground sets.
    #[error("ground-set sizes differ: {0} vs {1}")]
    MismatchedSize(usize, usize),
    /// A noncrossing-only operation received a crossing partition.
    #[error("partition is not noncrossing")]
    Crossing,
    /// Enumeration request beyond the configured cap.
    #[error("size n={n} exceeds enumeration cap {cap}")]
    SizeLimit { n: usize, cap: usize },
    /// Interval endpoints are not ordered by refinement.
    #[error("interval endpoints are not comparable")]
    NotComparable,
    /// Unparseable textual form.
    #[error("invalid partition text `{0}`")]
    Parse(String),
}

/// Default cap for `NC(n)` enumeration (`Catalan(14)` is about 2.7M).
pub const NC_ENUMERATION_CAP: usize = 14;
/// Default cap for full partition-lattice enumeration (`Bell(12)` is about 4.2M).
pub const ALL_PARTITIONS_CAP: usize = 12;

/// A partition of `{1..n}` into disjoint nonempty blocks, canonically ordered.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl SetPartition {
    /// Build a partition from blocks, validating and canonicalizing.
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self, PartitionError> {
        if n == 0 {
            return Err(PartitionError::InvalidBlocks(0));
        }
        let mut seen = vec![false; n + 1];
        let mut count = 0usize;
        for block in &blocks {
            if block.is_empty() {
                return Err(PartitionError::InvalidBlocks(n));
            }
            for &e in block {
                if e == 0 || e > n || seen[e] {
                    return Err(PartitionError::InvalidBlocks(n));
                }
                seen[e] = true;
                count += 1;
            }
        }
        if count != n {
            return Err(PartitionError::InvalidBlocks(n));
        }
        let mut blocks = blocks;
        for block in &mut blocks {
            block.sort_unstable();
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        Ok(Self { n, blocks })
    }

    /// The partition into singletons (bottom of the refinement order).
    pub fn singletons(n: usize) -> Self {
        Self {
            n,
            blocks: (1..=n).map(|i| vec![i]).collect(),
        }
    }

    /// The one-block partition `1_n` (top of the refinement order).
    pub fn full(n: usize) -> Self {
        Self {
            n,
            blocks: vec![(1..=n).collect()],
        }
    }

    /// Rebuild from a block-id array (`ids[i]` = block of element `i+1`).
    fn from_block_ids(ids: &[usize]) -> Self {
        let num_blocks = ids.iter().copied().max().map_or(0, |m| m + 1);
        let mut blocks: Vec<Vec<usize>> = vec![Vec::new(); num_blocks];
        for (i, &b) in ids.iter().enumerate() {
            blocks[b].push(i + 1);
        }
        blocks.retain(|b| !b.is_empty());
        blocks.sort_unstable_by_key(|b| b[0]);
        Self { n: ids.len(), blocks }
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// Index (into `blocks()`) of the block containing `element`.
    pub fn block_index_of(&self, element: usize) -> Option<usize> {
        self.blocks
            .iter()
            .position(|b| b.binary_search(&element).is_ok())
    }

    /// Block-id array: entry `i` is the block index of element `i+1`.
    pub fn block_ids(&self) -> Vec<usize> {
        let mut ids = vec![0usize; self.n];
        for (bi, block) in self.blocks.iter().enumerate() {
            for &e in block {
                ids[e - 1] = bi;
            }
        }
        ids
    }

    /// No quadruple `i<j<k<l` with `i,k` in one block and `j,l` in another.
    pub fn is_noncrossing(&self) -> bool {
        for (i, a) in self.blocks.iter().enumerate() {
            for b in &self.blocks[i + 1..] {
                if blocks_cross(a, b) {
                    return false;
                }
            }
        }
        true
    }

    /// Refinement order: every block of `self` lies inside a block of `other`.
    pub fn refines(&self, other: &SetPartition) -> Result<bool, PartitionError> {
        if self.n != other.n {
            return Err(PartitionError::MismatchedSize(self.n, other.n));
        }
        let other_ids = other.block_ids();
        Ok(self.blocks.iter().all(|block| {
            let id = other_ids[block[0] - 1];
            block.iter().all(|&e| other_ids[e - 1] == id)
        }))
    }
}

/// Crossing test for two disjoint sorted blocks: they cross exactly when the
/// merged order alternates between them at least three times.
fn blocks_cross(a: &[usize], b: &[usize]) -> bool {
    let (mut i, mut j) = (0usize, 0usize);
    let mut alternations = 0u32;
    let mut last = 0u8;
    while i < a.len() || j < b.len() {
        let from_a = j == b.len() || (i < a.len() && a[i] < b[j]);
        let cur = if from_a { 1 } else { 2 };
        if from_a {
            i += 1;
        } else {
            j += 1;
        }
        if cur != last {
            if last != 0 {
                alternations += 1;
            }
            last = cur;
        }
    }
    alternations >= 3
}

impl fmt::Display for SetPartition {
    /// Text form `1,3/2/4`: elements comma-separated, blocks slash-separated.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rendered: Vec<String> = self
            .blocks
            .iter()
            .map(|b| {
                b.iter()
                    .map(|e| e.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect();
        write!(f, "{}", rendered.join("/"))
    }
}

impl FromStr for SetPartition {
    type Err = PartitionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || PartitionError::Parse(s.to_string());
        let mut blocks = Vec::new();
        let mut max = 0usize;
        for chunk in s.split('/') {
            let mut block = Vec::new();
            for e in chunk.split(',') {
                let v: usize = e.trim().parse().map_err(|_| err())?;
                max = max.max(v);
                block.push(v);
            }
            blocks.push(block);
        }
        SetPartition::new(max, blocks)
    }
}

/// Visit every partition of `{1..n}` (restricted-growth-string order).
pub fn for_each_partition<F: FnMut(&SetPartition)>(n: usize, f: F) -> Result<(), PartitionError> {
    for_each_partition_capped(n, ALL_PARTITIONS_CAP, f)
}

/// As [`for_each_partition`] with an explicit cap.
pub fn for_each_partition_capped<F: FnMut(&SetPartition)>(
    n: usize,
    cap: usize,
    mut f: F,
) -> Result<(), PartitionError> {
    if n == 0 {
        return Err(PartitionError::InvalidBlocks(0));
    }
    if n > cap {
        return Err(PartitionError::SizeLimit { n, cap });
    }
    let mut ids = Vec::with_capacity(n);
    rec_partitions(n, &mut ids, 0, &mut f);
    Ok(())
}

fn rec_partitions<F: FnMut(&SetPartition)>(
    n: usize,
    ids: &mut Vec<usize>,
    next_id: usize,
    f: &mut F,
) {
    if ids.len() == n {
        f(&SetPartition::from_block_ids(ids));
        return;
    }
    for b in 0..=next_id {
        ids.push(b);
        rec_partitions(n, ids, next_id.max(b + 1), f);
        ids.pop();
    }
}

/// All partitions of `{1..n}`; `Bell(n)` of them.
pub fn enumerate_all_partitions(n: usize) -> Result<Vec<SetPartition>, PartitionError> {
    let mut out = Vec::new();
    for_each_partition(n, |p| out.push(p.clone()))?;
    Ok(out)
}

/// Visit every noncrossing partition of `{1..n}` exactly once.
///
/// Elements are placed left to right; an element either opens a new block or
/// joins an open block, which permanently closes every block opened after it.
/// This stack discipline generates precisely `NC(n)`.
pub fn for_each_nc<F: FnMut(&SetPartition)>(n: usize, f: F) -> Result<(), PartitionError> {
    for_each_nc_capped(n, NC_ENUMERATION_CAP, f)
}

/// As [`for_each_nc`] with an explicit cap.
pub fn for_each_nc_capped<F: FnMut(&SetPartition)>(
    n: usize,
    cap: usize,
    mut f: F,
) -> Result<(), PartitionError> {
    if n == 0 {
        return Err(PartitionError::InvalidBlocks(0));
    }
    if n > cap {
        return Err(PartitionError::SizeLimit { n, cap });
    }
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    rec_nc(1, n, &mut blocks, &mut stack, &mut f);
    Ok(())
}

fn rec_nc<F: FnMut(&SetPartition)>(
    element: usize,
    n: usize,
    blocks: &mut Vec<Vec<usize>>,
    stack: &mut Vec<usize>,
    f: &mut F,
) {
    if element > n {
        // Blocks were created in order of their minima and filled in
        // increasing order, so this is already canonical.
        f(&SetPartition {
            n,
            blocks: blocks.clone(),
        });
        return;
    }
    // Open a new block.
    blocks.push(vec![element]);
    stack.push(blocks.len() - 1);
    rec_nc(element + 1, n, blocks, stack, f);
    stack.pop();
    blocks.pop();
    // Join an open block, closing everything stacked above it.
    for pos in (0..stack.len()).rev() {
        let closed: Vec<usize> = stack.drain(pos + 1..).collect();
        blocks[stack[pos]].push(element);
        rec_nc(element + 1, n, blocks, stack, f);
        blocks[stack[pos]].pop();
        stack.extend(closed);
    }
}

/// All noncrossing partitions of `{1..n}`; `Catalan(n)` of them.
pub fn enumerate_nc(n: usize) -> Result<Vec<SetPartition>, PartitionError> {
    let mut out = Vec::new();
    for_each_nc(n, |p| out.push(p.clone()))?;
    Ok(out)
}

/// Count `NC(n)` without materializing it.
pub fn count_nc(n: usize) -> Result<u64, PartitionError> {
    let mut count = 0u64;
    for_each_nc(n, |_| count += 1)?;
    Ok(count)
}

/// Meet in `NC(n)`: the common refinement, block-wise intersections.
///
/// The common refinement of two noncrossing partitions is automatically
/// noncrossing, so this coincides with the meet of the full partition lattice.
pub fn nc_meet(p: &SetPartition, q: &SetPartition) -> Result<SetPartition, PartitionError> {
    check_nc_pair(p, q)?;
    let pid = p.block_ids();
    let qid = q.block_ids();
    let mut groups: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for e in 1..=p.n {
        groups.entry((pid[e - 1], qid[e - 1])).or_default().push(e);
    }
    let blocks: Vec<Vec<usize>> = groups.into_values().collect();
    SetPartition::new(p.n, blocks)
}

/// Join in `NC(n)`: the finest noncrossing partition coarser than both.
///
/// Computed as the partition-lattice join followed by merging crossing block
/// pairs until none remain; each merge is forced, so the result is the least
/// noncrossing upper bound.
pub fn nc_join(p: &SetPartition, q: &SetPartition) -> Result<SetPartition, PartitionError> {
    check_nc_pair(p, q)?;
    let n = p.n;
    // Union-find join in the full partition lattice.
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let root = find(parent, parent[x]);
            parent[x] = root;
        }
        parent[x]
    }
    for part in [p, q] {
        for block in &part.blocks {
            for w in block.windows(2) {
                let (a, b) = (find(&mut parent, w[0] - 1), find(&mut parent, w[1] - 1));
                if a != b {
                    parent[a] = b;
                }
            }
        }
    }
    let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
    for e in 1..=n {
        groups.entry(find(&mut parent, e - 1)).or_default().push(e);
    }
    let mut blocks: Vec<Vec<usize>> = groups.into_values().collect();
    for b in &mut blocks {
        b.sort_unstable();
    }
    // Merge crossing pairs until noncrossing; the block count strictly
    // decreases, so this terminates.
    'merge: loop {
        for i in 0..blocks.len() {
            for j in i + 1..blocks.len() {
                if blocks_cross(&blocks[i], &blocks[j]) {
                    let merged_in = blocks.swap_remove(j);
                    blocks[i].extend(merged_in);
                    blocks[i].sort_unstable();
                    continue 'merge;
                }
            }
        }
        break;
    }
    SetPartition::new(n, blocks)
}

fn check_nc_pair(p: &SetPartition, q: &SetPartition) -> Result<(), PartitionError> {
    if p.n != q.n {
        return Err(PartitionError::MismatchedSize(p.n, q.n));
    }
    if !p.is_noncrossing() || !q.is_noncrossing() {
        return Err(PartitionError::Crossing);
    }
    Ok(())
}

/// An interval `[lower, upper]` in `NC(n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NcInterval {
    lower: SetPartition,
    upper: SetPartition,
}

impl NcInterval {
    pub fn new(lower: SetPartition, upper: SetPartition) -> Result<Self, PartitionError> {
        if !lower.is_noncrossing() || !upper.is_noncrossing() {
            return Err(PartitionError::Crossing);
        }
        if !lower.refines(&upper)? {
            return Err(PartitionError::NotComparable);
        }
        Ok(Self { lower, upper })
    }

    pub fn lower(&self) -> &SetPartition {
        &self.lower
    }

    pub fn upper(&self) -> &SetPartition {
        &self.upper
    }
}

/// Möbius function of `NC(n)` on an interval, by the defining recursion
/// `sum over lower <= rho <= upper of Moeb(lower, rho) = [lower == upper]`.
pub fn moebius_nc(interval: &NcInterval) -> Result<i64, PartitionError> {
    let n = interval.lower.ground_size();
    // Members of the interval, finest first (block count descending).
    let mut members: Vec<SetPartition> = Vec::new();
    for_each_nc_capped(n, NC_ENUMERATION_CAP, |rho| {
        if interval.lower.refines(rho).unwrap_or(false)
            && rho.refines(&interval.upper).unwrap_or(false)
        {
            members.push(rho.clone());
        }
    })?;
    members.sort_by_key(|p| std::cmp::Reverse(p.num_blocks()));
    let mut mu: Vec<i64> = Vec::with_capacity(members.len());
    for (idx, y) in members.iter().enumerate() {
        let mut value = if *y == interval.lower { 1 } else { 0 };
        for (jdx, rho) in members.iter().enumerate().take(idx) {
            if rho.refines(y).unwrap_or(false) {
                value -= mu[jdx];
            }
        }
        mu.push(value);
    }
    Ok(*mu.last().expect("interval contains its endpoints"))
}

/// Möbius values `Moeb([pi, 1_n])` for every `pi` in `NC(n)`, via the dual
/// recursion processed from the top element downward.
pub fn moebius_to_top(n: usize) -> Result<Vec<(SetPartition, i64)>, PartitionError> {
    let mut members = enumerate_nc(n)?;
    members.sort_by_key(|p| p.num_blocks());
    let mut mu: Vec<i64> = Vec::with_capacity(members.len());
    for (idx, x) in members.iter().enumerate() {
        let mut value = if x.num_blocks() == 1 { 1 } else { 0 };
        for (jdx, rho) in members.iter().enumerate().take(idx) {
            if x.refines(rho).unwrap_or(false) {
                value -= mu[jdx];
            }
        }
        mu.push(value);
    }
    Ok(members.into_iter().zip(mu).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{bell, catalan};
    use num_traits::ToPrimitive;

    fn part(s: &str) -> SetPartition {
        s.parse().unwrap()
    }

    /// Definitional quadruple scan, used as the oracle for the pairwise check.
    fn is_noncrossing_naive(p: &SetPartition) -> bool {
        let ids = p.block_ids();
        let n = p.ground_size();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    for l in k + 1..n {
                        if ids[i] == ids[k] && ids[j] == ids[l] && ids[i] != ids[j] {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    #[test]
    fn crossing_examples() {
        assert!(!part("1,3/2,4").is_noncrossing());
        assert!(part("1,2/3,4").is_noncrossing());
        assert!(part("1,4/2,3").is_noncrossing());
    }

    #[test]
    fn noncrossing_check_matches_definition() {
        for n in 1..=7 {
            for_each_partition(n, |p| {
                assert_eq!(p.is_noncrossing(), is_noncrossing_naive(p), "{}", p);
            })
            .unwrap();
        }
    }

    #[test]
    fn canonical_form_is_unique() {
        let a = SetPartition::new(4, vec![vec![4], vec![3, 1], vec![2]]).unwrap();
        let b = part("1,3/2/4");
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "1,3/2/4");
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!("1,1/2".parse::<SetPartition>().is_err());
        assert!("1,4/2".parse::<SetPartition>().is_err()); // 3 missing
        assert!("".parse::<SetPartition>().is_err());
        assert!("1,x/2".parse::<SetPartition>().is_err());
    }

    #[test]
    fn enumeration_counts() {
        for n in 1..=9 {
            let nc = enumerate_nc(n).unwrap();
            assert_eq!(nc.len() as u64, catalan(n as u64).to_u64().unwrap());
            let mut sorted = nc.clone();
            sorted.sort();
            sorted.dedup();
            assert_eq!(sorted.len(), nc.len(), "duplicates at n={n}");
        }
        for n in 1..=8 {
            let all = enumerate_all_partitions(n).unwrap();
            assert_eq!(all.len() as u64, bell(n as u64).to_u64().unwrap());
        }
    }

    #[test]
    fn nc_equals_filtered_partitions() {
        for n in 1..=8 {
            let mut filtered = Vec::new();
            for_each_partition(n, |p| {
                if p.is_noncrossing() {
                    filtered.push(p.clone());
                }
            })
            .unwrap();
            let mut nc = enumerate_nc(n).unwrap();
            nc.sort();
            filtered.sort();
            assert_eq!(nc, filtered, "n={n}");
        }
    }

    #[test]
    fn n4_excludes_exactly_the_crossing_pairing() {
        let nc = enumerate_nc(4).unwrap();
        assert_eq!(nc.len(), 14);
        let all = enumerate_all_partitions(4).unwrap();
        assert_eq!(all.len(), 15);
        let excluded: Vec<_> = all.into_iter().filter(|p| !nc.contains(p)).collect();
        assert_eq!(excluded, vec![part("1,3/2,4")]);
    }

    #[test]
    fn caps_are_enforced() {
        assert_eq!(
            for_each_nc_capped(15, 14, |_| {}),
            Err(PartitionError::SizeLimit { n: 15, cap: 14 })
        );
        assert_eq!(
            for_each_partition_capped(13, 12, |_| {}),
            Err(PartitionError::SizeLimit { n: 13, cap: 12 })
        );
    }

    #[test]
    fn refinement_basics() {
        let n = 5;
        let bottom = SetPartition::singletons(n);
        let top = SetPartition::full(n);
        for_each_nc(n, |p| {
            assert!(bottom.refines(p).unwrap());
            assert!(p.refines(&top).unwrap());
        })
        .unwrap();
        assert!(!part("1,2/3").refines(&part("1,3/2")).unwrap());
        assert!(part("1,2/3")
            .refines(&SetPartition::singletons(4))
            .is_err());
    }

    #[test]
    fn meet_join_examples() {
        let p = part("1,3/2/4");
        let q = part("2,4/1/3");
        assert_eq!(nc_join(&p, &q).unwrap(), SetPartition::full(4));
        assert_eq!(nc_meet(&p, &p).unwrap(), p);
        assert_eq!(nc_join(&p, &p).unwrap(), p);
        let a = part("1,2,3");
        let b = part("1,2/3");
        assert_eq!(nc_meet(&a, &b).unwrap(), b);
        assert_eq!(nc_join(&a, &b).unwrap(), a);
    }

    #[test]
    fn meet_join_reject_crossing_inputs() {
        let crossing = part("1,3/2,4");
        let other = SetPartition::singletons(4);
        assert_eq!(
            nc_meet(&crossing, &other),
            Err(PartitionError::Crossing)
        );
        assert_eq!(
            nc_join(&other, &crossing),
            Err(PartitionError::Crossing)
        );
    }

    /// Brute-force least noncrossing upper bound: filter all of NC(n).
    fn join_oracle(p: &SetPartition, q: &SetPartition) -> SetPartition {
        let n = p.ground_size();
        let mut candidates: Vec<SetPartition> = Vec::new();
        for_each_nc(n, |rho| {
            if p.refines(rho).unwrap() && q.refines(rho).unwrap() {
                candidates.push(rho.clone());
            }
        })
        .unwrap();
        // The minimum should be unique (NC(n) is a lattice): find all minimal
        // elements and insist there is exactly one.
        let minimal: Vec<_> = candidates
            .iter()
            .filter(|c| {
                candidates
                    .iter()
                    .all(|d| d == *c || !d.refines(c).unwrap())
            })
            .cloned()
            .collect();
        assert_eq!(minimal.len(), 1);
        minimal.into_iter().next().unwrap()
    }

    #[test]
    fn join_matches_brute_force() {
        for n in 2..=6 {
            let nc = enumerate_nc(n).unwrap();
            // Exhaustive at n <= 5; strided sample at n = 6 to keep it quick.
            let stride = if n <= 5 { 1 } else { 7 };
            for (i, p) in nc.iter().enumerate() {
                for q in nc.iter().skip(i % stride).step_by(stride) {
                    assert_eq!(nc_join(p, q).unwrap(), join_oracle(p, q), "{p} v {q}");
                }
            }
        }
    }

    #[test]
    fn lattice_axioms_exhaustive() {
        for n in 2..=6 {
            let nc = enumerate_nc(n).unwrap();
            for p in &nc {
                for q in &nc {
                    let m = nc_meet(p, q).unwrap();
                    let j = nc_join(p, q).unwrap();
                    assert_eq!(m, nc_meet(q, p).unwrap());
                    assert_eq!(j, nc_join(q, p).unwrap());
                    // Meet and join really are bounds.
                    assert!(m.refines(p).unwrap() && m.refines(q).unwrap());
                    assert!(p.refines(&j).unwrap() && q.refines(&j).unwrap());
                    // Absorption.
                    assert_eq!(nc_join(p, &m).unwrap(), *p);
                    assert_eq!(nc_meet(p, &j).unwrap(), *p);
                }
            }
        }
        // Associativity on a smaller exhaustive range.
        for n in 2..=5 {
            let nc = enumerate_nc(n).unwrap();
            for p in &nc {
                for q in &nc {
                    for r in &nc {
                        assert_eq!(
                            nc_join(&nc_join(p, q).unwrap(), r).unwrap(),
                            nc_join(p, &nc_join(q, r).unwrap()).unwrap()
                        );
                        assert_eq!(
                            nc_meet(&nc_meet(p, q).unwrap(), r).unwrap(),
                            nc_meet(p, &nc_meet(q, r).unwrap()).unwrap()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn moebius_reflexive_and_small_values() {
        let p = part("1,3/2/4");
        let refl = NcInterval::new(p.clone(), p).unwrap();
        assert_eq!(moebius_nc(&refl).unwrap(), 1);

        let whole2 = NcInterval::new(SetPartition::singletons(2), SetPartition::full(2)).unwrap();
        assert_eq!(moebius_nc(&whole2).unwrap(), -1);
        let whole3 = NcInterval::new(SetPartition::singletons(3), SetPartition::full(3)).unwrap();
        assert_eq!(moebius_nc(&whole3).unwrap(), 2);
    }

    #[test]
    fn moebius_closed_form_whole_lattice() {
        for n in 1..=8u64 {
            let interval = NcInterval::new(
                SetPartition::singletons(n as usize),
                SetPartition::full(n as usize),
            )
            .unwrap();
            let sign = if n % 2 == 0 { -1 } else { 1 };
            let expected = sign * catalan(n - 1).to_i64().unwrap();
            assert_eq!(moebius_nc(&interval).unwrap(), expected, "n={n}");
        }
    }

    #[test]
    fn moebius_recursion_sums_to_delta() {
        for n in 2..=6 {
            let nc = enumerate_nc(n).unwrap();
            for lower in &nc {
                for upper in &nc {
                    if !lower.refines(upper).unwrap() {
                        continue;
                    }
                    let mut total = 0i64;
                    for rho in &nc {
                        if lower.refines(rho).unwrap() && rho.refines(upper).unwrap() {
                            let sub = NcInterval::new(lower.clone(), rho.clone()).unwrap();
                            total += moebius_nc(&sub).unwrap();
                        }
                    }
                    assert_eq!(total, i64::from(lower == upper), "[{lower}, {upper}]");
                }
            }
        }
    }

    #[test]
    fn moebius_to_top_consistent() {
        for n in 1..=6 {
            let table = moebius_to_top(n).unwrap();
            assert_eq!(table.len(), enumerate_nc(n).unwrap().len());
            for (pi, mu) in &table {
                let interval = NcInterval::new(pi.clone(), SetPartition::full(n)).unwrap();
                assert_eq!(moebius_nc(&interval).unwrap(), *mu, "pi={pi}");
            }
        }
    }

    #[test]
    fn interval_requires_comparability() {
        assert_eq!(
            NcInterval::new(part("1,2/3"), part("1,3/2")).unwrap_err(),
            PartitionError::NotComparable
        );
        assert_eq!(
            NcInterval::new(part("1,3/2,4"), SetPartition::full(4)).unwrap_err(),
            PartitionError::Crossing
        );
    }
}

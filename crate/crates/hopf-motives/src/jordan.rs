//! Jordan types of tuples and the stratum catalogue.
//!
//! A *Jordan type* on labels `{1, …, r}` is a pair `ξ = (σ, κ)`: a set
//! partition `σ` of the labels (grouping equal eigenvalues) together with,
//! for every `σ`-block, a partition `κ` of that block into totally ordered
//! sequences (the Jordan chains).  Two types are *equivalent* when some
//! relabelling of `{1, …, r}` carries one to the other, i.e. when they have
//! the same multiset of block shapes.
//!
//! For `r = 2` there are three classes:
//!
//! | index | representative          | matrix meaning              |
//! |-------|-------------------------|-----------------------------|
//! | `xi0` | one block, chains (1)(2)| scalar (central)            |
//! | `xi1` | one block, chain (1,2)  | non-semisimple Jordan block |
//! | `xi2` | blocks {1}, {2}         | distinct eigenvalues        |
//!
//! A type `ξ` *refines* `ξ'` when, after a simultaneous relabelling, `σ`
//! refines `σ'` and within every `σ'`-block the chains of `ξ'` are exactly
//! the chains of `ξ` (as a multiset).  Taking the `n`-th power of a matrix
//! can only merge eigenvalue blocks while keeping its chains, so the pair
//! `(type of A, type of Aⁿ)` always has the first refining the second;
//! [`stratum_pairs`] lists the possible pairs.  In rank 2 these are the four
//! strata [`StratumId::ALL`]: `xi0_xi0`, `xi1_xi1`, `xi2_xi2`, `xi2_xi0`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

/// Largest supported number of labels.
pub const MAX_RANK: u8 = 6;

/// A labelled Jordan type: blocks of chains of labels.
///
/// `blocks[i][j]` is the `j`-th chain (a totally ordered sequence of
/// labels) of the `i`-th eigenvalue block.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct JordanType {
    rank: u8,
    blocks: Vec<Vec<Vec<u8>>>,
}

impl JordanType {
    /// Builds a Jordan type from explicit blocks of chains.
    ///
    /// # Errors
    ///
    /// [`Error::InvalidRank`] when the label count is 0 or exceeds
    /// [`MAX_RANK`]; [`Error::Parse`] when the labels are not exactly
    /// `1..=r` or a block or chain is empty.
    pub fn new(blocks: Vec<Vec<Vec<u8>>>) -> Result<Self> {
        let mut labels: Vec<u8> = Vec::new();
        for block in &blocks {
            if block.is_empty() {
                return Err(Error::Parse(String::from("empty eigenvalue block")));
            }
            for chain in block {
                if chain.is_empty() {
                    return Err(Error::Parse(String::from("empty Jordan chain")));
                }
                labels.extend_from_slice(chain);
            }
        }
        let r = labels.len();
        if r == 0 || r > MAX_RANK as usize {
            return Err(Error::InvalidRank(r.min(u8::MAX as usize) as u8));
        }
        labels.sort_unstable();
        let expected: Vec<u8> = (1..=r as u8).collect();
        if labels != expected {
            return Err(Error::Parse(format!(
                "labels must be exactly 1..={r}, got {labels:?}"
            )));
        }
        Ok(JordanType {
            rank: r as u8,
            blocks,
        })
    }

    /// Number of labels.
    pub fn rank(&self) -> u8 {
        self.rank
    }

    /// The blocks of chains.
    pub fn blocks(&self) -> &[Vec<Vec<u8>>] {
        &self.blocks
    }

    /// Number of eigenvalue blocks.
    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// The shape: per block the ascending chain lengths, blocks sorted
    /// lexicographically.  Equal shapes ⟺ equivalent types.
    pub fn shape(&self) -> Vec<Vec<u8>> {
        let mut shape: Vec<Vec<u8>> = self
            .blocks
            .iter()
            .map(|block| {
                let mut lens: Vec<u8> = block.iter().map(|c| c.len() as u8).collect();
                lens.sort_unstable();
                lens
            })
            .collect();
        shape.sort();
        shape
    }

    /// The canonical representative of this type's equivalence class:
    /// blocks in shape order, chains ascending by length, labels assigned
    /// in traversal order.
    pub fn canonicalize(&self) -> JordanType {
        let shape = self.shape();
        let mut blocks = Vec::with_capacity(shape.len());
        let mut next = 1u8;
        for block_shape in shape {
            let mut block = Vec::with_capacity(block_shape.len());
            for len in block_shape {
                let chain: Vec<u8> = (next..next + len).collect();
                next += len;
                block.push(chain);
            }
            blocks.push(block);
        }
        JordanType {
            rank: self.rank,
            blocks,
        }
    }

    /// Whether two types are equivalent (equal up to relabelling).
    ///
    /// # Errors
    ///
    /// [`Error::RankMismatch`] when the ranks differ.
    pub fn equivalent(&self, other: &JordanType) -> Result<bool> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch {
                left: self.rank,
                right: other.rank,
            });
        }
        Ok(self.shape() == other.shape())
    }

    /// Applies a relabelling: label `l` becomes `perm[l - 1]`.
    fn relabel(&self, perm: &[u8]) -> JordanType {
        let blocks = self
            .blocks
            .iter()
            .map(|block| {
                block
                    .iter()
                    .map(|chain| chain.iter().map(|&l| perm[l as usize - 1]).collect())
                    .collect()
            })
            .collect();
        JordanType {
            rank: self.rank,
            blocks,
        }
    }

    /// Whether `self` refines `coarse` up to simultaneous relabelling:
    /// some permutation of the labels makes every block of `self` a subset
    /// of a block of `coarse`, with each coarse block's chains equal (as a
    /// multiset) to the chains of the fine blocks it absorbs.
    ///
    /// # Errors
    ///
    /// [`Error::RankMismatch`] when the ranks differ.
    pub fn refines(&self, coarse: &JordanType) -> Result<bool> {
        if self.rank != coarse.rank {
            return Err(Error::RankMismatch {
                left: self.rank,
                right: coarse.rank,
            });
        }
        let mut found = false;
        for_each_permutation(self.rank, &mut |perm| {
            if !found && self.relabel(perm).refines_literally(coarse) {
                found = true;
            }
        });
        Ok(found)
    }

    /// Refinement with labels taken at face value.
    fn refines_literally(&self, coarse: &JordanType) -> bool {
        let coarse_sets: Vec<Vec<u8>> = coarse.blocks.iter().map(|b| block_labels(b)).collect();
        // Each fine block must land inside a single coarse block.
        let mut assignment: Vec<usize> = Vec::with_capacity(self.blocks.len());
        for block in &self.blocks {
            let labels = block_labels(block);
            match coarse_sets
                .iter()
                .position(|cs| labels.iter().all(|l| cs.contains(l)))
            {
                Some(i) => assignment.push(i),
                None => return false,
            }
        }
        // Within each coarse block, the chains must agree as multisets.
        for (ci, cblock) in coarse.blocks.iter().enumerate() {
            let mut coarse_chains: Vec<Vec<u8>> = cblock.clone();
            let mut fine_chains: Vec<Vec<u8>> = Vec::new();
            for (fi, fblock) in self.blocks.iter().enumerate() {
                if assignment[fi] == ci {
                    fine_chains.extend(fblock.iter().cloned());
                }
            }
            coarse_chains.sort();
            fine_chains.sort();
            if coarse_chains != fine_chains {
                return false;
            }
        }
        true
    }
}

fn block_labels(block: &[Vec<u8>]) -> Vec<u8> {
    let mut labels: Vec<u8> = block.iter().flatten().copied().collect();
    labels.sort_unstable();
    labels
}

/// Calls `f` with every permutation of `[1, …, r]` (Heap's algorithm).
fn for_each_permutation(r: u8, f: &mut dyn FnMut(&[u8])) {
    let mut items: Vec<u8> = (1..=r).collect();
    let n = items.len();
    let mut c = vec![0usize; n];
    f(&items);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                items.swap(0, i);
            } else {
                items.swap(c[i], i);
            }
            f(&items);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

impl core::fmt::Display for JordanType {
    /// Chains in parentheses, blocks separated by `|`,
    /// e.g. `(1)(2)` for `xi0` and `(1) | (2)` for `xi2`.
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        for (i, block) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, " | ")?;
            }
            for chain in block {
                write!(f, "(")?;
                for (j, label) in chain.iter().enumerate() {
                    if j > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{label}")?;
                }
                write!(f, ")")?;
            }
        }
        Ok(())
    }
}

/// All equivalence classes of Jordan types on `r` labels, as canonical
/// representatives, ordered by block count and then by shape.
///
/// # Errors
///
/// [`Error::InvalidRank`] outside `1..=MAX_RANK`.
pub fn enumerate_jordan_types(r: u8) -> Result<Vec<JordanType>> {
    if r == 0 || r > MAX_RANK {
        return Err(Error::InvalidRank(r));
    }
    // A class is a multiset of block shapes (partitions) with total size r.
    let pool: Vec<Vec<u8>> = (1..=r).flat_map(partitions).collect();
    let mut shapes: Vec<Vec<Vec<u8>>> = Vec::new();
    let mut current: Vec<Vec<u8>> = Vec::new();
    collect_shape_multisets(&pool, r, 0, &mut current, &mut shapes);
    shapes.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));

    let mut types = Vec::with_capacity(shapes.len());
    for shape in shapes {
        let mut next = 1u8;
        let mut blocks = Vec::with_capacity(shape.len());
        for block_shape in shape {
            let mut block = Vec::with_capacity(block_shape.len());
            for len in block_shape {
                let chain: Vec<u8> = (next..next + len).collect();
                next += len;
                block.push(chain);
            }
            blocks.push(block);
        }
        types.push(JordanType { rank: r, blocks });
    }
    Ok(types)
}

/// Integer partitions of `m` with parts ascending.
fn partitions(m: u8) -> Vec<Vec<u8>> {
    fn rec(remaining: u8, min_part: u8, current: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if remaining == 0 {
            out.push(current.clone());
            return;
        }
        for part in min_part..=remaining {
            current.push(part);
            rec(remaining - part, part, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    rec(m, 1, &mut Vec::new(), &mut out);
    out
}

fn collect_shape_multisets(
    pool: &[Vec<u8>],
    remaining: u8,
    min_index: usize,
    current: &mut Vec<Vec<u8>>,
    out: &mut Vec<Vec<Vec<u8>>>,
) {
    if remaining == 0 {
        let mut shape = current.clone();
        shape.sort();
        out.push(shape);
        return;
    }
    for (i, cand) in pool.iter().enumerate().skip(min_index) {
        let size: u8 = cand.iter().sum();
        if size > remaining {
            continue;
        }
        current.push(cand.clone());
        collect_shape_multisets(pool, remaining - size, i, current, out);
        current.pop();
    }
}

/// All pairs `(fine, coarse)` of Jordan-type classes with `fine` refining
/// `coarse`: the diagonal pairs first in enumeration order, then the strict
/// refinements ordered by `(fine index, coarse index)`.
///
/// # Errors
///
/// [`Error::InvalidRank`] outside `1..=MAX_RANK`.
pub fn stratum_pairs(r: u8) -> Result<Vec<(JordanType, JordanType)>> {
    let types = enumerate_jordan_types(r)?;
    let mut pairs = Vec::new();
    for t in &types {
        pairs.push((t.clone(), t.clone()));
    }
    for (i, fine) in types.iter().enumerate() {
        for (j, coarse) in types.iter().enumerate() {
            if i != j && fine.refines(coarse)? {
                pairs.push((fine.clone(), coarse.clone()));
            }
        }
    }
    Ok(pairs)
}

/// One of the four rank-2 strata, named by the enumeration indices of its
/// fine and coarse Jordan types: `xi0_xi0`, `xi1_xi1`, `xi2_xi2`, `xi2_xi0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct StratumId {
    fine: u8,
    coarse: u8,
}

impl StratumId {
    /// The four rank-2 strata in enumeration order (diagonal first).
    pub const ALL: [StratumId; 4] = [
        StratumId { fine: 0, coarse: 0 },
        StratumId { fine: 1, coarse: 1 },
        StratumId { fine: 2, coarse: 2 },
        StratumId { fine: 2, coarse: 0 },
    ];

    /// Builds a stratum id, validating it against the rank-2 catalogue.
    ///
    /// # Errors
    ///
    /// [`Error::UnknownStratum`] for any pair outside [`StratumId::ALL`].
    pub fn new(fine: u8, coarse: u8) -> Result<Self> {
        let id = StratumId { fine, coarse };
        if Self::ALL.contains(&id) {
            Ok(id)
        } else {
            Err(Error::UnknownStratum { fine, coarse })
        }
    }

    /// Index of the fine Jordan type in `enumerate_jordan_types(2)`.
    pub fn fine(self) -> u8 {
        self.fine
    }

    /// Index of the coarse Jordan type in `enumerate_jordan_types(2)`.
    pub fn coarse(self) -> u8 {
        self.coarse
    }

    /// Position in [`StratumId::ALL`].
    pub fn index(self) -> usize {
        Self::ALL.iter().position(|s| *s == self).expect("valid id")
    }
}

impl core::fmt::Display for StratumId {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "xi{}_xi{}", self.fine, self.coarse)
    }
}

impl core::str::FromStr for StratumId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("unknown stratum token: {s:?}"));
        let rest = s.strip_prefix("xi").ok_or_else(bad)?;
        let (fine, coarse) = rest.split_once("_xi").ok_or_else(bad)?;
        let fine: u8 = fine.parse().map_err(|_| bad())?;
        let coarse: u8 = coarse.parse().map_err(|_| bad())?;
        StratumId::new(fine, coarse)
    }
}

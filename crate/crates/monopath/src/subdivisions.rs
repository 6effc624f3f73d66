//! Proper ordered partitions of the letter multiset, the box faces they
//! select, refinement, and the flip graph on words.
//!
//! An ordered partition is proper when no block repeats a letter.  Proper
//! partitions are the candidate subdivisions of the projected segment; the
//! all-singleton ones are exactly the words.  A flip swaps two distinct
//! adjacent letters, and the incoherency of a word is its flip distance to
//! the nearest non-nesting word.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use crate::combinatorics::{enumerate_words, is_non_nesting, Composition, LambdaWord};
use crate::{Error, Result};

/// Blocks `B_1, …, B_m` of letters, none empty, none with a repeated letter,
/// jointly using letter `i` exactly `λ_i` times.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrderedPartition {
    blocks: Vec<Vec<u8>>,
    composition: Composition,
}

impl OrderedPartition {
    pub fn new(blocks: Vec<Vec<u8>>, composition: Composition) -> Result<Self> {
        let candidate = Self::from_blocks(blocks)?;
        if candidate.composition != composition {
            return Err(Error::ImproperPartition(format!(
                "blocks use letters of {} but composition is {composition}",
                candidate.composition
            )));
        }
        Ok(candidate)
    }

    /// Builds a partition and derives its composition from the letter counts.
    pub fn from_blocks(blocks: Vec<Vec<u8>>) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::ImproperPartition("no blocks".into()));
        }
        let mut sorted_blocks = Vec::with_capacity(blocks.len());
        let mut d = 0usize;
        for block in blocks {
            if block.is_empty() {
                return Err(Error::ImproperPartition("empty block".into()));
            }
            let mut block = block;
            block.sort_unstable();
            if block.windows(2).any(|pair| pair[0] == pair[1]) {
                return Err(Error::ImproperPartition(format!(
                    "block {block:?} repeats a letter"
                )));
            }
            if block[0] == 0 {
                return Err(Error::ImproperPartition("letters are 1-based".into()));
            }
            d = d.max(*block.last().unwrap() as usize);
            sorted_blocks.push(block);
        }
        let mut counts = vec![0u32; d];
        for block in &sorted_blocks {
            for &letter in block {
                counts[letter as usize - 1] += 1;
            }
        }
        let composition = Composition::new(counts).map_err(|_| {
            Error::ImproperPartition("some letter in 1..=max never occurs".into())
        })?;
        Ok(Self {
            blocks: sorted_blocks,
            composition,
        })
    }

    /// Parses `"1|1,2|2|1,2|1"`: blocks separated by `|`, letters by `,`.
    pub fn parse(s: &str) -> Result<Self> {
        let blocks = s
            .split('|')
            .map(|block| {
                block
                    .split(',')
                    .map(|t| {
                        t.trim()
                            .parse::<u8>()
                            .map_err(|_| Error::Parse(format!("bad letter {t:?}")))
                    })
                    .collect::<Result<Vec<u8>>>()
            })
            .collect::<Result<Vec<Vec<u8>>>>()?;
        Self::from_blocks(blocks)
    }

    /// The all-singleton partition of a word.
    pub fn from_word(word: &LambdaWord) -> Self {
        Self {
            blocks: word.letters().iter().map(|&letter| vec![letter]).collect(),
            composition: word.composition().clone(),
        }
    }

    pub fn blocks(&self) -> &[Vec<u8>] {
        &self.blocks
    }

    pub fn composition(&self) -> &Composition {
        &self.composition
    }

    /// Number of blocks.
    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_all_singletons(&self) -> bool {
        self.blocks.iter().all(|block| block.len() == 1)
    }

    /// The word read off an all-singleton partition.
    pub fn to_word(&self) -> Option<LambdaWord> {
        if !self.is_all_singletons() {
            return None;
        }
        let letters = self.blocks.iter().map(|block| block[0]).collect();
        Some(LambdaWord::new(letters, self.composition.clone()).expect("blocks match composition"))
    }

    /// Per block, the variable index and shift of each letter occurrence:
    /// the t-th occurrence of letter `i` (counting left to right across
    /// blocks) stands for `x_i + (t − 1)`.
    pub fn expressions(&self) -> Vec<Vec<(usize, u32)>> {
        let mut seen = vec![0u32; self.composition.d()];
        self.blocks
            .iter()
            .map(|block| {
                block
                    .iter()
                    .map(|&letter| {
                        let var = letter as usize - 1;
                        let shift = seen[var];
                        seen[var] += 1;
                        (var, shift)
                    })
                    .collect()
            })
            .collect()
    }
}

impl fmt::Display for OrderedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks: Vec<String> = self
            .blocks
            .iter()
            .map(|block| {
                block
                    .iter()
                    .map(|l| l.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect();
        write!(f, "{}", blocks.join("|"))
    }
}

/// An axis-aligned brick of the box: `base + Σ_{r ∈ directions} [0, e_r]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubdivisionFace {
    pub base: Vec<i64>,
    pub directions: Vec<u8>,
}

/// The maximal faces selected by a partition: block `B_j` contributes the
/// brick based at `Σ_{i<j} e_{B_i}` with directions `{e_r : r ∈ B_j}`.
pub fn subdivision_faces(partition: &OrderedPartition) -> Vec<SubdivisionFace> {
    let d = partition.composition().d();
    let mut base = vec![0i64; d];
    let mut faces = Vec::with_capacity(partition.block_count());
    for block in partition.blocks() {
        faces.push(SubdivisionFace {
            base: base.clone(),
            directions: block.clone(),
        });
        for &letter in block {
            base[letter as usize - 1] += 1;
        }
    }
    faces
}

/// Streams every proper ordered partition of the multiset exactly once, in
/// depth-first order with blocks tried by increasing letter-set bitmask.
pub fn enumerate_proper_partitions(
    composition: &Composition,
    cap: usize,
) -> Result<ProperPartitions> {
    if composition.n() as usize > cap {
        return Err(Error::CapExceeded {
            task: "partition enumeration",
            needed: composition.n() as u128,
            cap: cap as u128,
        });
    }
    assert!(composition.d() <= 31, "block masks use u32");
    Ok(ProperPartitions {
        composition: composition.clone(),
        remaining: composition.parts().to_vec(),
        blocks: Vec::new(),
        cursor: vec![1],
        done: false,
    })
}

pub struct ProperPartitions {
    composition: Composition,
    remaining: Vec<u32>,
    blocks: Vec<u32>,
    cursor: Vec<u32>,
    done: bool,
}

impl ProperPartitions {
    fn mask_available(&self, mask: u32) -> bool {
        (0..self.composition.d()).all(|i| mask & (1 << i) == 0 || self.remaining[i] > 0)
    }

    fn apply(&mut self, mask: u32) {
        for i in 0..self.composition.d() {
            if mask & (1 << i) != 0 {
                self.remaining[i] -= 1;
            }
        }
        self.blocks.push(mask);
        self.cursor.push(1);
    }

    fn retreat(&mut self) -> bool {
        self.cursor.pop();
        match self.blocks.pop() {
            Some(mask) => {
                for i in 0..self.composition.d() {
                    if mask & (1 << i) != 0 {
                        self.remaining[i] += 1;
                    }
                }
                true
            }
            None => false,
        }
    }

    fn snapshot(&self) -> OrderedPartition {
        let blocks = self
            .blocks
            .iter()
            .map(|mask| {
                (0..self.composition.d())
                    .filter(|i| mask & (1 << i) != 0)
                    .map(|i| i as u8 + 1)
                    .collect()
            })
            .collect();
        OrderedPartition {
            blocks,
            composition: self.composition.clone(),
        }
    }
}

impl Iterator for ProperPartitions {
    type Item = OrderedPartition;

    fn next(&mut self) -> Option<OrderedPartition> {
        if self.done {
            return None;
        }
        let full = 1u32 << self.composition.d();
        loop {
            let depth = self.blocks.len();
            let mut mask = self.cursor[depth];
            while mask < full && !self.mask_available(mask) {
                mask += 1;
            }
            if mask >= full {
                if !self.retreat() {
                    self.done = true;
                    return None;
                }
                continue;
            }
            self.cursor[depth] = mask + 1;
            self.apply(mask);
            if self.remaining.iter().all(|&r| r == 0) {
                let partition = self.snapshot();
                self.retreat();
                return Some(partition);
            }
        }
    }
}

/// Whether `fine` splits the blocks of `coarse` into ordered sub-blocks:
/// each block of `coarse` must be the exact disjoint union of a run of
/// consecutive blocks of `fine`.
pub fn refines(fine: &OrderedPartition, coarse: &OrderedPartition) -> bool {
    if fine.composition() != coarse.composition() {
        return false;
    }
    let mut fine_blocks = fine.blocks().iter();
    for coarse_block in coarse.blocks() {
        let target = block_mask(coarse_block);
        let mut accumulated = 0u32;
        while accumulated != target {
            let Some(piece) = fine_blocks.next() else {
                return false;
            };
            let piece = block_mask(piece);
            if piece & accumulated != 0 || piece & !target != 0 {
                return false;
            }
            accumulated |= piece;
        }
    }
    fine_blocks.next().is_none()
}

fn block_mask(block: &[u8]) -> u32 {
    block.iter().fold(0u32, |mask, &letter| mask | 1 << (letter - 1))
}

/// Geometric cross-check for [`refines`]: the union of the fine faces is
/// contained in the union of the coarse ones, decided brick by brick.
pub fn refines_geometric(fine: &OrderedPartition, coarse: &OrderedPartition) -> bool {
    if fine.composition() != coarse.composition() {
        return false;
    }
    let coarse_faces = subdivision_faces(coarse);
    subdivision_faces(fine)
        .iter()
        .all(|small| coarse_faces.iter().any(|big| brick_contains(big, small)))
}

fn brick_contains(big: &SubdivisionFace, small: &SubdivisionFace) -> bool {
    let d = big.base.len();
    let big_dirs = block_mask(&big.directions);
    let small_dirs = block_mask(&small.directions);
    (0..d).all(|r| {
        let spans_small = small_dirs & (1 << r) != 0;
        let spans_big = big_dirs & (1 << r) != 0;
        if spans_small {
            spans_big && small.base[r] == big.base[r]
        } else {
            small.base[r] == big.base[r] || (spans_big && small.base[r] == big.base[r] + 1)
        }
    })
}

/// All words one flip away: one entry per position holding two distinct
/// adjacent letters.
pub fn flip_neighbors(word: &LambdaWord) -> Vec<LambdaWord> {
    let letters = word.letters();
    let mut neighbors = Vec::new();
    for k in 0..letters.len().saturating_sub(1) {
        if letters[k] != letters[k + 1] {
            let mut swapped = letters.to_vec();
            swapped.swap(k, k + 1);
            neighbors.push(
                LambdaWord::new(swapped, word.composition().clone())
                    .expect("swap preserves multiplicities"),
            );
        }
    }
    neighbors
}

fn encode(letters: &[u8], d: u64) -> u64 {
    letters
        .iter()
        .fold(0u64, |code, &letter| code * d + (letter as u64 - 1))
}

fn decode(mut code: u64, d: u64, n: usize) -> Vec<u8> {
    let mut letters = vec![0u8; n];
    for slot in letters.iter_mut().rev() {
        *slot = (code % d) as u8 + 1;
        code /= d;
    }
    letters
}

/// Flip distance from `word` to the nearest non-nesting word; zero exactly
/// when the word is already non-nesting.  Breadth-first search over interned
/// word codes, capped at `n ≤ cap`.
pub fn incoherency(word: &LambdaWord, cap: usize) -> Result<u32> {
    let n = word.len();
    if n > cap {
        return Err(Error::CapExceeded {
            task: "flip search",
            needed: n as u128,
            cap: cap as u128,
        });
    }
    let d = word.composition().d() as u64;
    let mut visited: HashSet<u64> = HashSet::new();
    let mut queue: VecDeque<(LambdaWord, u32)> = VecDeque::new();
    visited.insert(encode(word.letters(), d));
    queue.push_back((word.clone(), 0));
    while let Some((current, distance)) = queue.pop_front() {
        if is_non_nesting(&current) {
            return Ok(distance);
        }
        for neighbor in flip_neighbors(&current) {
            if visited.insert(encode(neighbor.letters(), d)) {
                queue.push_back((neighbor, distance + 1));
            }
        }
    }
    unreachable!("the flip graph is connected and contains non-nesting words")
}

/// Maximum incoherency over all words of `(2, …, 2)` with `d` parts, and the
/// words attaining it.  One multi-source search from the non-nesting words
/// labels the whole word space.
pub fn max_incoherency_census(d: usize, cap: usize) -> Result<(u32, Vec<LambdaWord>)> {
    if d > cap {
        return Err(Error::CapExceeded {
            task: "incoherency census",
            needed: d as u128,
            cap: cap as u128,
        });
    }
    let composition = Composition::all_twos(d);
    let base = composition.d() as u64;
    let mut distance: HashMap<u64, u32> = HashMap::new();
    let mut queue: VecDeque<LambdaWord> = VecDeque::new();
    for w in enumerate_words(&composition, composition.n() as usize)? {
        if is_non_nesting(&w) {
            distance.insert(encode(w.letters(), base), 0);
            queue.push_back(w);
        }
    }
    while let Some(current) = queue.pop_front() {
        let here = distance[&encode(current.letters(), base)];
        for neighbor in flip_neighbors(&current) {
            let code = encode(neighbor.letters(), base);
            if !distance.contains_key(&code) {
                distance.insert(code, here + 1);
                queue.push_back(neighbor);
            }
        }
    }

    let maximum = distance.values().copied().max().unwrap_or(0);
    let mut attainer_codes: Vec<u64> = distance
        .iter()
        .filter(|(_, &dist)| dist == maximum)
        .map(|(&code, _)| code)
        .collect();
    attainer_codes.sort_unstable();
    let attainers = attainer_codes
        .into_iter()
        .map(|code| {
            LambdaWord::new(
                decode(code, base, composition.n() as usize),
                composition.clone(),
            )
            .expect("codes come from valid words")
        })
        .collect();
    Ok((maximum, attainers))
}

//! Block decomposition of words that begin with a run of their smallest
//! letter, the lexicographic ranks of the blocks, cyclic block shifts and
//! their orbits, the map sending a primitive word to its block-aligned
//! rotation, and the block-multiset equivalence class.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::word::{Letter, Word};

/// Default guard against factorial blowup in [`class_members`].
pub const DEFAULT_MAX_BLOCKS: usize = 8;

/// A word cut at every run of its smallest letter, with the rank permutation
/// attached once computed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockDecomposition {
    word: Word,
    starts: Vec<usize>,
    ranks: Option<Vec<usize>>,
}

impl BlockDecomposition {
    pub fn word(&self) -> &Word {
        &self.word
    }

    /// Block start offsets (0-based), strictly increasing, first is 0.
    pub fn starts(&self) -> &[usize] {
        &self.starts
    }

    /// Number of blocks.
    pub fn block_count(&self) -> usize {
        self.starts.len()
    }

    /// The blocks as owned words; concatenating them reproduces the word.
    pub fn blocks(&self) -> Vec<Word> {
        self.block_slices()
            .map(|s| Word::new(s.to_vec()).expect("blocks are non-empty"))
            .collect()
    }

    pub fn block_slices(&self) -> impl Iterator<Item = &[Letter]> {
        let letters = self.word.letters();
        let n = letters.len();
        self.starts.iter().enumerate().map(move |(i, &s)| {
            let end = self.starts.get(i + 1).copied().unwrap_or(n);
            &letters[s..end]
        })
    }

    /// Rank permutation (1 = lexicographically smallest), when computed.
    pub fn ranks(&self) -> Option<&[usize]> {
        self.ranks.as_deref()
    }

    /// Two-line display: blocks separated by a middle dot, ranks beneath.
    pub fn pretty(&self) -> String {
        let texts: Vec<String> = self
            .blocks()
            .iter()
            .map(|b| b.to_string())
            .collect();
        let mut top = String::new();
        for (i, t) in texts.iter().enumerate() {
            if i > 0 {
                top.push('·');
            }
            top.push_str(t);
        }
        let Some(ranks) = &self.ranks else {
            return top;
        };
        let mut bottom = String::new();
        for (i, (t, r)) in texts.iter().zip(ranks).enumerate() {
            if i > 0 {
                bottom.push(' ');
            }
            bottom.push_str(&format!("{r:>width$}", width = t.chars().count()));
        }
        format!("{top}\n{bottom}")
    }
}

impl fmt::Display for BlockDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.pretty())
    }
}

/// Cuts a word at every run of its smallest letter. The word must begin with
/// its smallest letter and end with a different one; primitivity is not
/// required here.
pub fn decompose(w: &Word) -> Result<BlockDecomposition> {
    let min = w.min_letter();
    if w.letters()[0] != min {
        return Err(Error::NotBlockable(
            "does not begin with its smallest letter".into(),
        ));
    }
    if *w.letters().last().expect("non-empty") == min {
        return Err(Error::NotBlockable("ends with its smallest letter".into()));
    }
    let starts = w.run_starts(min);
    Ok(BlockDecomposition {
        word: w.clone(),
        starts,
        ranks: None,
    })
}

/// Decomposition plus the rank permutation; requires full membership in the
/// first-run/last-run primitive set.
pub fn ranked(w: &Word) -> Result<BlockDecomposition> {
    let mut dec = decompose_rankable(w)?;
    dec.ranks = Some(ranks_naive_from(&dec));
    Ok(dec)
}

fn decompose_rankable(w: &Word) -> Result<BlockDecomposition> {
    w.w_membership()
        .map_err(|reason| Error::NotRankable(reason.to_string()))?;
    decompose(w)
}

/// Rank permutation of the blocks: rank 1 is the lexicographically smallest
/// among the rotations of the word starting at block boundaries. Reference
/// implementation by direct pairwise rotation comparison.
pub fn ranks(w: &Word) -> Result<Vec<usize>> {
    Ok(ranks_naive_from(&decompose_rankable(w)?))
}

fn ranks_naive_from(dec: &BlockDecomposition) -> Vec<usize> {
    let starts = &dec.starts;
    let n_blocks = starts.len();
    let mut ranks = vec![1usize; n_blocks];
    for i in 0..n_blocks {
        for j in (i + 1)..n_blocks {
            match dec.word.cmp_rotations(starts[i], starts[j]) {
                Ordering::Less => ranks[j] += 1,
                Ordering::Greater => ranks[i] += 1,
                Ordering::Equal => {
                    // impossible for primitive words
                    panic!(
                        "internal invariant violated: equal block rotations at {} and {}",
                        starts[i], starts[j]
                    )
                }
            }
        }
    }
    ranks
}

/// Accelerated rank permutation: orders the block-start rotations with a
/// prefix-doubling pass over the doubled word. Must agree exactly with
/// [`ranks`].
pub fn ranks_fast(w: &Word) -> Result<Vec<usize>> {
    let dec = decompose_rankable(w)?;
    let order = rotation_order(w.letters());
    let mut keyed: Vec<(u32, usize)> = dec
        .starts
        .iter()
        .enumerate()
        .map(|(i, &s)| (order[s], i))
        .collect();
    keyed.sort_unstable();
    let mut ranks = vec![0usize; keyed.len()];
    for (rank0, &(key, block)) in keyed.iter().enumerate() {
        if rank0 > 0 {
            assert_ne!(
                key,
                keyed[rank0 - 1].0,
                "internal invariant violated: equal block rotations"
            );
        }
        ranks[block] = rank0 + 1;
    }
    Ok(ranks)
}

/// For each offset, the order key of the rotation starting there: prefix
/// doubling over the doubled letter sequence, with comparison lengths grown
/// past `n` so rotation order is fully decided for primitive words.
fn rotation_order(letters: &[Letter]) -> Vec<u32> {
    let n = letters.len();
    let m = 2 * n;
    let mut rank: Vec<u32> = {
        let mut sorted: Vec<Letter> = letters.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let mut doubled = Vec::with_capacity(m);
        for pass in 0..2 {
            let _ = pass;
            for &c in letters {
                doubled.push(sorted.partition_point(|&x| x < c) as u32);
            }
        }
        doubled
    };
    let mut order: Vec<u32> = (0..m as u32).collect();
    let mut keys: Vec<u64> = vec![0; m];
    let mut len = 1usize;
    while len < n {
        for i in 0..m {
            let hi = rank[i] as u64 + 1;
            let lo = if i + len < m { rank[i + len] as u64 + 1 } else { 0 };
            keys[i] = (hi << 32) | lo;
        }
        order.sort_unstable_by_key(|&i| keys[i as usize]);
        let mut next = vec![0u32; m];
        let mut r = 0u32;
        for idx in 1..m {
            if keys[order[idx] as usize] != keys[order[idx - 1] as usize] {
                r += 1;
            }
            next[order[idx] as usize] = r;
        }
        rank = next;
        len *= 2;
    }
    rank.truncate(n);
    rank
}

/// Position (1-based) of the block holding rank `i`: the inverse permutation
/// of [`ranks`] evaluated at `i`.
pub fn rank_position(w: &Word, i: usize) -> Result<usize> {
    let r = ranks(w)?;
    rank_position_in(&r, i)
}

/// Inverse-permutation lookup in an already computed rank vector.
pub fn rank_position_in(ranks: &[usize], i: usize) -> Result<usize> {
    if i == 0 || i > ranks.len() {
        return Err(Error::InvalidParameter(format!(
            "rank index {i} out of range 1..={}",
            ranks.len()
        )));
    }
    let k = ranks
        .iter()
        .position(|&r| r == i)
        .expect("ranks form a permutation");
    Ok(k + 1)
}

/// Cyclic shift of the block sequence by `j`: blocks `j+1.. , 1..=j`.
pub fn beta_shift(w: &Word, j: usize) -> Result<Word> {
    let dec = decompose(w)?;
    if j >= dec.block_count() {
        return Err(Error::InvalidParameter(format!(
            "block shift {j} out of range for {} blocks",
            dec.block_count()
        )));
    }
    Ok(w.rotate(dec.starts[j]).expect("block start is in range"))
}

/// The orbit of the word under all cyclic shifts of its blocks.
pub fn block_orbit(w: &Word) -> Result<Vec<Word>> {
    w.w_membership()
        .map_err(|reason| Error::NotInDomain(reason.to_string()))?;
    let dec = decompose(w)?;
    (0..dec.block_count()).map(|j| beta_shift(w, j)).collect()
}

/// Sends a primitive word to itself when it already begins with a run of its
/// smallest letter and ends differently, otherwise to the rotation starting
/// at the last run of its smallest letter. Idempotent.
pub fn phi(w: &Word) -> Result<Word> {
    if !w.is_primitive() {
        return Err(Error::NotInDomain("not primitive".into()));
    }
    if w.in_w() {
        return Ok(w.clone());
    }
    let min = w.min_letter();
    let last_run = *w
        .run_starts(min)
        .last()
        .expect("the smallest letter occurs");
    Ok(w.rotate(last_run).expect("run start is in range"))
}

/// All primitive words mapped onto `w` by [`phi`]; they are rotations of `w`
/// and there are exactly first-block-length many of them.
pub fn phi_preimage(w: &Word) -> Result<Vec<Word>> {
    w.w_membership()
        .map_err(|reason| Error::NotInDomain(reason.to_string()))?;
    let mut preimages = Vec::new();
    for j in 0..w.len() {
        let v = w.rotate(j).expect("in range");
        if phi(&v)? == *w {
            preimages.push(v);
        }
    }
    Ok(preimages)
}

/// The sorted multiset of blocks; equal for every member of a class.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClassKey(Vec<Word>);

impl ClassKey {
    pub fn of(w: &Word) -> Result<Self> {
        let mut blocks = decompose(w)?.blocks();
        blocks.sort();
        Ok(ClassKey(blocks))
    }

    pub fn blocks(&self) -> &[Word] {
        &self.0
    }

    pub fn block_count(&self) -> usize {
        self.0.len()
    }

    /// Concatenation of the sorted blocks. Whenever the key belongs to an
    /// actual class this canonical word is itself a class member.
    pub fn representative(&self) -> Word {
        concat_blocks(self.0.iter())
    }
}

impl fmt::Display for ClassKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for b in &self.0 {
            if !first {
                write!(f, "·")?;
            }
            write!(f, "{b}")?;
            first = false;
        }
        Ok(())
    }
}

fn concat_blocks<'a>(blocks: impl Iterator<Item = &'a Word>) -> Word {
    let mut letters = Vec::new();
    for b in blocks {
        letters.extend_from_slice(b.letters());
    }
    Word::new(letters).expect("blocks are non-empty")
}

/// All distinct words obtained by permuting the block multiset of `w`,
/// filtered to those still in the first-run/last-run primitive set. Walks
/// distinct multiset permutations, not the full symmetric group.
pub fn class_members(w: &Word, max_blocks: usize) -> Result<Vec<Word>> {
    w.w_membership()
        .map_err(|reason| Error::NotInDomain(reason.to_string()))?;
    let dec = decompose(w)?;
    if dec.block_count() > max_blocks {
        return Err(Error::TooLarge(format!(
            "{} blocks exceed the arrangement limit {max_blocks}",
            dec.block_count()
        )));
    }
    let mut blocks = dec.blocks();
    blocks.sort();
    let mut members = Vec::new();
    loop {
        let candidate = concat_blocks(blocks.iter());
        if candidate.in_w() {
            members.push(candidate);
        }
        if !next_permutation(&mut blocks) {
            break;
        }
    }
    Ok(members)
}

/// In-place lexicographic successor; `false` once the sequence is the last.
fn next_permutation<T: Ord>(arr: &mut [T]) -> bool {
    if arr.len() < 2 {
        return false;
    }
    let mut i = arr.len() - 1;
    while i > 0 && arr[i - 1] >= arr[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = arr.len() - 1;
    while arr[j] <= arr[i - 1] {
        j -= 1;
    }
    arr.swap(i - 1, j);
    arr[i..].reverse();
    true
}

//! Exact finite-alphabet enumeration: word weights in odometer order, the
//! mass of the first-run/last-run primitive set, pushforward gaps of the
//! block-aligned rotation map, the law of the run count, and exact
//! conditional laws of rank positions.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::alphabet::WeightedAlphabet;
use crate::blocks::{self, ClassKey};
use crate::error::{Error, Result};
use crate::real::{real, real_usize, Real};
use crate::word::{Letter, Word};

/// Default cap on the number of weight evaluations in one enumeration.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// A finitely supported measure over integer values. Masses are accumulated
/// exactly as enumerated; `total` tracks their sum.
#[derive(Clone, Debug, Serialize)]
pub struct ExactDistribution<F> {
    atoms: Vec<(u64, F)>,
    total: F,
}

impl<F: Real> ExactDistribution<F> {
    pub fn from_map(map: BTreeMap<u64, F>) -> Self {
        let mut total = F::zero();
        let atoms: Vec<(u64, F)> = map.into_iter().collect();
        for &(_, m) in &atoms {
            total = total + m;
        }
        ExactDistribution { atoms, total }
    }

    /// Atoms in increasing value order, unnormalized.
    pub fn atoms(&self) -> &[(u64, F)] {
        &self.atoms
    }

    pub fn total(&self) -> F {
        self.total
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    /// Atoms rescaled to a probability distribution.
    pub fn probabilities(&self) -> Vec<(u64, F)> {
        self.atoms
            .iter()
            .map(|&(v, m)| (v, m / self.total))
            .collect()
    }

    /// Normalized mass of one value.
    pub fn prob_of(&self, value: u64) -> F {
        self.atoms
            .iter()
            .find(|&&(v, _)| v == value)
            .map(|&(_, m)| m / self.total)
            .unwrap_or_else(F::zero)
    }

    /// Normalized mass strictly below `x`.
    pub fn prob_below(&self, x: F) -> F {
        let mut acc = F::zero();
        for &(v, m) in &self.atoms {
            if real_usize::<F>(v as usize) < x {
                acc = acc + m;
            }
        }
        acc / self.total
    }
}

/// Iterator over all `k^n` words of a finite alphabet with their weights,
/// in odometer order (last position fastest), updating the weight one factor
/// at a time.
pub struct WordEnumeration<F> {
    probs: Vec<F>,
    letters: Vec<usize>,
    weight: F,
    started: bool,
    done: bool,
}

/// Enumerates `A_n` with weights. Errors on geometric alphabets and when
/// `k^n` exceeds `budget`.
pub fn enumerate_words<F: Real>(
    alphabet: &WeightedAlphabet<F>,
    n: usize,
    budget: u64,
) -> Result<WordEnumeration<F>> {
    let probs = alphabet
        .finite_probabilities()
        .ok_or_else(|| Error::Unsupported("enumeration requires a finite alphabet".into()))?;
    if n == 0 {
        return Err(Error::InvalidParameter("word length must be >= 1".into()));
    }
    let size = (probs.len() as u128)
        .checked_pow(n as u32)
        .unwrap_or(u128::MAX);
    if size > budget as u128 {
        return Err(Error::TooLarge(format!(
            "{}^{n} words exceed the enumeration budget {budget}",
            probs.len()
        )));
    }
    let weight = probs[0].powi(n as i32);
    Ok(WordEnumeration {
        probs: probs.to_vec(),
        letters: vec![0; n],
        weight,
        started: false,
        done: false,
    })
}

impl<F: Real> Iterator for WordEnumeration<F> {
    type Item = (Word, F);

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        if self.started {
            let k = self.probs.len();
            let mut pos = self.letters.len();
            loop {
                if pos == 0 {
                    self.done = true;
                    return None;
                }
                pos -= 1;
                let c = self.letters[pos];
                if c + 1 < k {
                    self.weight = self.weight / self.probs[c] * self.probs[c + 1];
                    self.letters[pos] += 1;
                    break;
                }
                self.weight = self.weight / self.probs[c] * self.probs[0];
                self.letters[pos] = 0;
            }
        }
        self.started = true;
        let word = Word::new(self.letters.iter().map(|&c| c as Letter + 1).collect())
            .expect("letters are valid");
        Some((word, self.weight))
    }
}

/// Total weight of the first-run/last-run primitive set at length `n`.
pub fn prob_w<F: Real>(alphabet: &WeightedAlphabet<F>, n: usize, budget: u64) -> Result<F> {
    let mut mass = F::zero();
    for (word, weight) in enumerate_words(alphabet, n, budget)? {
        if word.in_w() {
            mass = mass + weight;
        }
    }
    Ok(mass)
}

/// `|W_n(A) - P_n(phi^{-1}(A))|` for an event `A` inside the conditioned
/// set, computed exactly by one enumeration pass.
pub fn pushforward_gap<F: Real>(
    alphabet: &WeightedAlphabet<F>,
    n: usize,
    budget: u64,
    event: impl Fn(&Word) -> bool,
) -> Result<F> {
    let mut mass_w = F::zero();
    let mut mass_w_event = F::zero();
    let mut mass_preimage = F::zero();
    for (word, weight) in enumerate_words(alphabet, n, budget)? {
        if word.in_w() {
            mass_w = mass_w + weight;
            if event(&word) {
                mass_w_event = mass_w_event + weight;
            }
        }
        if word.is_primitive() && event(&blocks::phi(&word)?) {
            mass_preimage = mass_preimage + weight;
        }
    }
    if mass_w <= F::zero() {
        return Err(Error::InvalidParameter(format!(
            "the conditioned set is empty at length {n}"
        )));
    }
    Ok((mass_w_event / mass_w - mass_preimage).abs())
}

/// Which run count the law is taken over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RunCountMode {
    /// Runs of the word's own smallest letter: the block count.
    SmallestLetter,
    /// Runs of the literal first alphabet letter.
    FirstAlphabetLetter,
}

/// The law of a run count under the conditioned measure, with its exact
/// lower tail at the threshold `p1 (1 - p1) n / 2`.
#[derive(Clone, Debug, Serialize)]
pub struct RunCountLaw<F> {
    pub dist: ExactDistribution<F>,
    pub threshold: F,
    pub tail: F,
}

/// Exact law of the run count over the conditioned set at length `n`.
pub fn dist_n<F: Real>(
    alphabet: &WeightedAlphabet<F>,
    n: usize,
    mode: RunCountMode,
    budget: u64,
) -> Result<RunCountLaw<F>> {
    let mut map: BTreeMap<u64, F> = BTreeMap::new();
    for (word, weight) in enumerate_words(alphabet, n, budget)? {
        if !word.in_w() {
            continue;
        }
        let letter = match mode {
            RunCountMode::SmallestLetter => word.min_letter(),
            RunCountMode::FirstAlphabetLetter => 1,
        };
        let runs = word.count_runs(letter) as u64;
        let slot = map.entry(runs).or_insert_with(F::zero);
        *slot = *slot + weight;
    }
    let dist = ExactDistribution::from_map(map);
    if dist.is_empty() {
        return Err(Error::InvalidParameter(format!(
            "the conditioned set is empty at length {n}"
        )));
    }
    let p1 = alphabet.p1();
    let threshold = p1 * (F::one() - p1) * real_usize::<F>(n) / real::<F>(2.0);
    let tail = dist.prob_below(threshold);
    Ok(RunCountLaw {
        dist,
        threshold,
        tail,
    })
}

/// Exact conditional laws of the position of rank `i`, one distribution per
/// block count `N >= i`, under the conditioned measure.
pub fn exact_rank_position_law<F: Real>(
    alphabet: &WeightedAlphabet<F>,
    n: usize,
    i: usize,
    budget: u64,
) -> Result<BTreeMap<usize, ExactDistribution<F>>> {
    if i == 0 {
        return Err(Error::InvalidParameter("rank index must be >= 1".into()));
    }
    let all = rank_position_laws(alphabet, n, budget)?;
    Ok(all
        .into_iter()
        .filter(|&((idx, _), _)| idx == i)
        .map(|((_, n_blocks), dist)| (n_blocks, dist))
        .collect())
}

/// Exact conditional laws of rank positions for every rank index at once,
/// keyed by `(rank index, block count)`.
pub fn rank_position_laws<F: Real>(
    alphabet: &WeightedAlphabet<F>,
    n: usize,
    budget: u64,
) -> Result<BTreeMap<(usize, usize), ExactDistribution<F>>> {
    let mut acc: BTreeMap<(usize, usize), BTreeMap<u64, F>> = BTreeMap::new();
    for (word, weight) in enumerate_words(alphabet, n, budget)? {
        if !word.in_w() {
            continue;
        }
        let ranks = blocks::ranks(&word)?;
        let n_blocks = ranks.len();
        for (pos0, &rank) in ranks.iter().enumerate() {
            let slot = acc
                .entry((rank, n_blocks))
                .or_default()
                .entry(pos0 as u64 + 1)
                .or_insert_with(F::zero);
            *slot = *slot + weight;
        }
    }
    Ok(acc
        .into_iter()
        .map(|(key, map)| (key, ExactDistribution::from_map(map)))
        .collect())
}

/// Largest deviation of any conditional rank-position law from the uniform
/// law on its positions, missing positions counting as full atoms.
pub fn max_uniformity_deviation<F: Real>(
    laws: &BTreeMap<(usize, usize), ExactDistribution<F>>,
) -> F {
    let mut worst = F::zero();
    for (&(_, n_blocks), dist) in laws {
        let target = F::one() / real_usize::<F>(n_blocks);
        for pos in 1..=n_blocks {
            let dev = (dist.prob_of(pos as u64) - target).abs();
            if dev > worst {
                worst = dev;
            }
        }
    }
    worst
}

/// Per-class accumulator from one enumeration pass. The class weight is
/// evaluated once on the canonical representative so the disintegration
/// identity is a real check on the members.
#[derive(Clone, Debug)]
pub struct ClassAccum<F> {
    pub members: u64,
    pub n_blocks: usize,
    pub weight_repr: F,
}

/// Groups the conditioned set by block multiset; one pass, statistics only.
pub fn class_scan<F: Real>(
    alphabet: &WeightedAlphabet<F>,
    n: usize,
    budget: u64,
) -> Result<BTreeMap<ClassKey, ClassAccum<F>>> {
    let mut classes: BTreeMap<ClassKey, ClassAccum<F>> = BTreeMap::new();
    for (word, _) in enumerate_words(alphabet, n, budget)? {
        if !word.in_w() {
            continue;
        }
        let key = ClassKey::of(&word)?;
        if let Some(acc) = classes.get_mut(&key) {
            acc.members += 1;
        } else {
            let weight_repr = alphabet.word_weight(&key.representative())?;
            let n_blocks = key.block_count();
            classes.insert(
                key,
                ClassAccum {
                    members: 1,
                    n_blocks,
                    weight_repr,
                },
            );
        }
    }
    Ok(classes)
}

/// One-stop exact summary for a given length, as emitted by the CLI.
#[derive(Clone, Debug, Serialize)]
pub struct EnumerationReport<F> {
    pub n: usize,
    pub alphabet: String,
    #[serde(rename = "prob_W")]
    pub prob_w: F,
    /// `|W_n(A) - P_n(phi^{-1}(A))|` for `A` the whole conditioned set.
    pub gap: F,
    #[serde(rename = "dist_N")]
    pub dist_n: Vec<(u64, F)>,
    pub dist_runs_first_letter: Vec<(u64, F)>,
    pub tail_threshold: F,
    pub tail_blocks: F,
    pub tail_runs_first_letter: F,
    pub uniformity_maxdev: F,
    pub class_count: u64,
}

pub fn enumeration_report<F: Real>(
    alphabet: &WeightedAlphabet<F>,
    n: usize,
    budget: u64,
) -> Result<EnumerationReport<F>> {
    let prob = prob_w(alphabet, n, budget)?;
    let gap = pushforward_gap(alphabet, n, budget, |w| w.in_w())?;
    let block_law = dist_n(alphabet, n, RunCountMode::SmallestLetter, budget)?;
    let a1_law = dist_n(alphabet, n, RunCountMode::FirstAlphabetLetter, budget)?;
    let laws = rank_position_laws(alphabet, n, budget)?;
    let maxdev = max_uniformity_deviation(&laws);
    let classes = class_scan(alphabet, n, budget)?;
    Ok(EnumerationReport {
        n,
        alphabet: alphabet.to_string(),
        prob_w: prob,
        gap,
        dist_n: block_law.dist.probabilities(),
        dist_runs_first_letter: a1_law.dist.probabilities(),
        tail_threshold: block_law.threshold,
        tail_blocks: block_law.tail,
        tail_runs_first_letter: a1_law.tail,
        uniformity_maxdev: maxdev,
        class_count: classes.len() as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binary_uniform() -> WeightedAlphabet<f64> {
        WeightedAlphabet::finite(vec![0.5, 0.5]).unwrap()
    }

    #[test]
    fn enumeration_covers_all_words_with_unit_mass() {
        let a = binary_uniform();
        let items: Vec<(Word, f64)> = enumerate_words(&a, 2, DEFAULT_BUDGET).unwrap().collect();
        assert_eq!(items.len(), 4);
        let sum: f64 = items.iter().map(|&(_, w)| w).sum();
        assert!((sum - 1.0).abs() < 1e-9);

        let items: Vec<(Word, f64)> = enumerate_words(&a, 3, DEFAULT_BUDGET).unwrap().collect();
        assert_eq!(items.len(), 8);
        assert!(items.iter().all(|&(_, w)| (w - 0.125).abs() < 1e-12));

        let t = WeightedAlphabet::finite(vec![0.5, 0.3, 0.2]).unwrap();
        let items: Vec<(Word, f64)> = enumerate_words(&t, 2, DEFAULT_BUDGET).unwrap().collect();
        assert_eq!(items.len(), 9);
        let ab = items
            .iter()
            .find(|(w, _)| w.to_string() == "ab")
            .expect("ab enumerated");
        assert!((ab.1 - 0.15).abs() < 1e-12);
        let sum: f64 = items.iter().map(|&(_, w)| w).sum();
        assert!((sum - 1.0).abs() < 1e-9);
    }

    #[test]
    fn enumeration_weights_match_direct_products() {
        let a = WeightedAlphabet::finite(vec![0.6, 0.4]).unwrap();
        for (word, weight) in enumerate_words(&a, 5, DEFAULT_BUDGET).unwrap() {
            let direct = a.word_weight(&word).unwrap();
            assert!((weight - direct).abs() < 1e-12, "{word}");
        }
    }

    #[test]
    fn enumeration_guards() {
        let a = binary_uniform();
        assert!(matches!(
            enumerate_words(&a, 40, 1000),
            Err(Error::TooLarge(_))
        ));
        let g = WeightedAlphabet::<f64>::geometric(0.5).unwrap();
        assert!(matches!(
            enumerate_words(&g, 3, DEFAULT_BUDGET),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn prob_w_small_values() {
        let a = binary_uniform();
        assert_eq!(prob_w(&a, 1, DEFAULT_BUDGET).unwrap(), 0.0);
        assert!((prob_w(&a, 2, DEFAULT_BUDGET).unwrap() - 0.25).abs() < 1e-9);
        assert!((prob_w(&a, 3, DEFAULT_BUDGET).unwrap() - 0.25).abs() < 1e-9);
    }

    #[test]
    fn pushforward_gap_values() {
        let a = binary_uniform();
        // A = the whole set: the gap is exactly the non-primitive mass
        let gap = pushforward_gap(&a, 4, DEFAULT_BUDGET, |w| w.in_w()).unwrap();
        assert!((gap - 0.25).abs() < 1e-9);

        // A = {ab}
        let gap = pushforward_gap(&a, 2, DEFAULT_BUDGET, |w| w.to_string() == "ab").unwrap();
        assert!((gap - 0.5).abs() < 1e-9);

        // A = empty
        let gap = pushforward_gap(&a, 4, DEFAULT_BUDGET, |_| false).unwrap();
        assert!(gap.abs() < 1e-12);
    }

    #[test]
    fn run_count_law_small_n() {
        let a = binary_uniform();
        let law = dist_n(&a, 3, RunCountMode::SmallestLetter, DEFAULT_BUDGET).unwrap();
        assert_eq!(law.dist.atoms().len(), 1);
        assert!((law.dist.prob_of(1) - 1.0).abs() < 1e-12);
        // threshold 0.375, and the count is always >= 1
        assert!((law.threshold - 0.375).abs() < 1e-12);
        assert_eq!(law.tail, 0.0);

        let law = dist_n(&a, 4, RunCountMode::SmallestLetter, DEFAULT_BUDGET).unwrap();
        assert_eq!(law.dist.atoms().len(), 1, "only single-run words at n=4");
        assert!((law.dist.prob_of(1) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn run_count_modes_differ_when_smallest_letter_is_not_the_first() {
        // over {a,b,c}, the word bc has no runs of the first letter
        let t = WeightedAlphabet::finite(vec![0.5, 0.3, 0.2]).unwrap();
        let blocks_law = dist_n(&t, 2, RunCountMode::SmallestLetter, DEFAULT_BUDGET).unwrap();
        let a1_law = dist_n(&t, 2, RunCountMode::FirstAlphabetLetter, DEFAULT_BUDGET).unwrap();
        assert!((blocks_law.dist.prob_of(0)).abs() < 1e-12);
        assert!(a1_law.dist.prob_of(0) > 0.0, "bc and cb count zero runs");
    }

    #[test]
    fn exact_rank_position_law_small_n() {
        let a = binary_uniform();
        let law = exact_rank_position_law(&a, 3, 1, DEFAULT_BUDGET).unwrap();
        assert_eq!(law.len(), 1);
        let dist = &law[&1];
        assert!((dist.prob_of(1) - 1.0).abs() < 1e-12);

        let laws = rank_position_laws(&a, 10, DEFAULT_BUDGET).unwrap();
        let dev = max_uniformity_deviation(&laws);
        assert!(dev < 1e-9, "exact conditional laws are uniform, dev={dev}");
    }

    #[test]
    fn disintegration_identity() {
        for a in [
            binary_uniform(),
            WeightedAlphabet::finite(vec![0.6, 0.4]).unwrap(),
            WeightedAlphabet::finite(vec![0.5, 0.3, 0.2]).unwrap(),
        ] {
            for n in 2..=7 {
                let classes = class_scan(&a, n, DEFAULT_BUDGET).unwrap();
                let total: f64 = classes
                    .values()
                    .map(|c| c.members as f64 * c.weight_repr)
                    .sum();
                let direct = prob_w(&a, n, DEFAULT_BUDGET).unwrap();
                assert!(
                    (total - direct).abs() < 1e-9,
                    "disintegration mismatch at n={n}: {total} vs {direct}"
                );
            }
        }
    }

    #[test]
    fn report_keys_present() {
        let a = binary_uniform();
        let report = enumeration_report(&a, 6, DEFAULT_BUDGET).unwrap();
        assert_eq!(report.n, 6);
        assert!(report.prob_w > 0.0);
        assert!(report.uniformity_maxdev < 1e-9);
        assert!(!report.dist_n.is_empty());
    }
}

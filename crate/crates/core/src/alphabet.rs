//! Weighted ordered alphabets: a strictly positive probability for every
//! letter, letter sampling, word weights and the `l_alpha` norms of the
//! probability vector.

use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::real::{real, Real};
use crate::word::{Letter, Word};

const SUM_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
enum Kind<F> {
    /// Explicit probabilities for letters `1..=k`.
    Finite(Vec<F>),
    /// `p_i = (1 - q) q^(i-1)` over all positive integers.
    Geometric(F),
}

/// A totally ordered alphabet `1 < 2 < 3 < ...` with strictly positive
/// letter probabilities. Immutable after construction.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedAlphabet<F> {
    kind: Kind<F>,
}

impl<F: Real> WeightedAlphabet<F> {
    /// A finite alphabet from explicit probabilities. Each must be strictly
    /// positive, they must sum to 1 within `1e-12`, and the first letter may
    /// not carry the whole mass.
    pub fn finite(probabilities: Vec<F>) -> Result<Self> {
        if probabilities.is_empty() {
            return Err(Error::InvalidParameter(
                "finite alphabet needs at least one probability".into(),
            ));
        }
        let mut sum = 0.0f64;
        for (i, p) in probabilities.iter().enumerate() {
            let p = p.to_f64().unwrap_or(f64::NAN);
            if !p.is_finite() || p <= 0.0 {
                return Err(Error::InvalidParameter(format!(
                    "probability of letter {} must be strictly positive, got {p}",
                    i + 1
                )));
            }
            sum += p;
        }
        if (sum - 1.0).abs() > SUM_TOLERANCE {
            return Err(Error::InvalidParameter(format!(
                "probabilities must sum to 1 within {SUM_TOLERANCE:e}, got {sum}"
            )));
        }
        if probabilities[0].to_f64().unwrap() >= 1.0 - SUM_TOLERANCE {
            return Err(Error::InvalidParameter(
                "the smallest letter must have probability strictly below 1".into(),
            ));
        }
        Ok(WeightedAlphabet {
            kind: Kind::Finite(probabilities),
        })
    }

    /// The geometric alphabet `p_i = (1 - q) q^(i-1)`, `0 < q < 1`.
    pub fn geometric(q: F) -> Result<Self> {
        let qf = q.to_f64().unwrap_or(f64::NAN);
        if !qf.is_finite() || qf <= 0.0 || qf >= 1.0 {
            return Err(Error::InvalidParameter(format!(
                "geometric parameter must lie strictly inside (0, 1), got {qf}"
            )));
        }
        Ok(WeightedAlphabet {
            kind: Kind::Geometric(q),
        })
    }

    /// Bypasses validation; only for unit tests that need a degenerate law.
    #[cfg(test)]
    pub(crate) fn finite_unchecked(probabilities: Vec<F>) -> Self {
        WeightedAlphabet {
            kind: Kind::Finite(probabilities),
        }
    }

    /// Number of letters for a finite alphabet, `None` for geometric.
    pub fn letter_count(&self) -> Option<usize> {
        match &self.kind {
            Kind::Finite(p) => Some(p.len()),
            Kind::Geometric(_) => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.kind, Kind::Finite(_))
    }

    /// Finite probabilities as a slice, `None` for geometric.
    pub fn finite_probabilities(&self) -> Option<&[F]> {
        match &self.kind {
            Kind::Finite(p) => Some(p),
            Kind::Geometric(_) => None,
        }
    }

    /// The probability of a single letter.
    pub fn letter_prob(&self, letter: Letter) -> Result<F> {
        if letter == 0 {
            return Err(Error::InvalidParameter("letters are 1-based".into()));
        }
        match &self.kind {
            Kind::Finite(p) => p.get(letter as usize - 1).copied().ok_or(Error::InvalidLetter {
                letter,
                size: p.len(),
            }),
            Kind::Geometric(q) => {
                let one = F::one();
                Ok((one - *q) * q.powi(letter as i32 - 1))
            }
        }
    }

    /// Probability of the smallest letter.
    pub fn p1(&self) -> F {
        self.letter_prob(1).expect("letter 1 always exists")
    }

    /// `(sum_i p_i^alpha)^(1/alpha)` for `alpha >= 1`; closed form for the
    /// geometric kind.
    pub fn norm_alpha(&self, alpha: F) -> Result<F> {
        if alpha < F::one() {
            return Err(Error::InvalidParameter(format!(
                "norm exponent must be >= 1, got {alpha}"
            )));
        }
        let one = F::one();
        match &self.kind {
            Kind::Finite(p) => {
                let sum = p.iter().fold(F::zero(), |acc, &x| acc + x.powf(alpha));
                Ok(sum.powf(one / alpha))
            }
            Kind::Geometric(q) => {
                // sum_i ((1-q) q^(i-1))^alpha = (1-q)^alpha / (1 - q^alpha)
                let num = one - *q;
                let denom = (one - q.powf(alpha)).powf(one / alpha);
                Ok(num / denom)
            }
        }
    }

    /// Product of letter probabilities; invariant under permutations of the
    /// word's letters.
    pub fn word_weight(&self, w: &Word) -> Result<F> {
        let mut prod = F::one();
        for &c in w.letters() {
            prod = prod * self.letter_prob(c)?;
        }
        Ok(prod)
    }

    /// Draws one letter. The geometric kind inverts the CDF so every letter
    /// `i >= 1` is reachable.
    pub fn sample_letter<R: Rng + ?Sized>(&self, rng: &mut R) -> Letter {
        let u: f64 = rng.gen();
        match &self.kind {
            Kind::Finite(p) => {
                let uf = real::<F>(u);
                let mut acc = F::zero();
                for (i, &pi) in p.iter().enumerate() {
                    acc = acc + pi;
                    if uf < acc {
                        return i as Letter + 1;
                    }
                }
                p.len() as Letter
            }
            Kind::Geometric(q) => {
                // smallest i with 1 - q^i >= u
                let q = q.to_f64().expect("q is finite");
                let i = ((1.0 - u).ln() / q.ln()).ceil();
                if i < 1.0 {
                    1
                } else {
                    i as Letter
                }
            }
        }
    }

    /// Draws a word of `n` i.i.d. letters.
    pub fn sample_word<R: Rng + ?Sized>(&self, n: usize, rng: &mut R) -> Result<Word> {
        if n == 0 {
            return Err(Error::InvalidParameter("word length must be >= 1".into()));
        }
        Word::new((0..n).map(|_| self.sample_letter(rng)).collect())
    }

    /// Parses the CLI literal syntax: `"0.5,0.3,0.2"` or `"geom:0.5"`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(q) = s.strip_prefix("geom:") {
            let q: f64 = q
                .trim()
                .parse()
                .map_err(|_| Error::AlphabetParse(format!("invalid geometric parameter '{q}'")))?;
            return Self::geometric(real(q));
        }
        let mut probs = Vec::new();
        for token in s.split(',') {
            let token = token.trim();
            let p: f64 = token
                .parse()
                .map_err(|_| Error::AlphabetParse(format!("invalid probability token '{token}'")))?;
            probs.push(real(p));
        }
        Self::finite(probs)
    }
}

impl<F: Real> fmt::Display for WeightedAlphabet<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            Kind::Finite(p) => {
                let mut first = true;
                for x in p {
                    if !first {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                    first = false;
                }
                Ok(())
            }
            Kind::Geometric(q) => write!(f, "geom:{q}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;

    fn binary_uniform() -> WeightedAlphabet<f64> {
        WeightedAlphabet::finite(vec![0.5, 0.5]).unwrap()
    }

    #[test]
    fn construction_rejects_bad_inputs() {
        assert!(WeightedAlphabet::<f64>::finite(vec![]).is_err());
        assert!(WeightedAlphabet::finite(vec![0.5, 0.4]).is_err());
        assert!(WeightedAlphabet::finite(vec![0.5, 0.5, 0.0]).is_err());
        assert!(WeightedAlphabet::finite(vec![1.0]).is_err());
        assert!(WeightedAlphabet::finite(vec![-0.5, 1.5]).is_err());
        assert!(WeightedAlphabet::<f64>::geometric(0.0).is_err());
        assert!(WeightedAlphabet::<f64>::geometric(1.0).is_err());
        assert!(WeightedAlphabet::<f64>::geometric(0.5).is_ok());
    }

    #[test]
    fn norm_alpha_values() {
        let a = binary_uniform();
        assert!((a.norm_alpha(1.0).unwrap() - 1.0).abs() < 1e-12);
        assert!((a.norm_alpha(2.0).unwrap() - 0.5f64.sqrt()).abs() < 1e-12);

        let skew = WeightedAlphabet::finite(vec![0.9, 0.1]).unwrap();
        let n2 = skew.norm_alpha(2.0).unwrap();
        assert!((n2 - 0.82f64.sqrt()).abs() < 1e-12);
        // the stated inequality ||p||_2 <= sqrt(max p_i)
        assert!(n2 <= 0.9f64.sqrt());

        assert!(a.norm_alpha(0.5).is_err());
    }

    #[test]
    fn norm_alpha_geometric_closed_form_matches_series() {
        let a = WeightedAlphabet::<f64>::geometric(0.5).unwrap();
        assert!((a.norm_alpha(1.0).unwrap() - 1.0).abs() < 1e-12);
        for alpha in [1.5, 2.0, 3.0] {
            let direct: f64 = (1..200)
                .map(|i| (0.5f64 * 0.5f64.powi(i - 1)).powf(alpha))
                .sum::<f64>()
                .powf(1.0 / alpha);
            assert!((a.norm_alpha(alpha).unwrap() - direct).abs() < 1e-12);
        }
    }

    #[test]
    fn norm_alpha_strictly_decreasing() {
        for a in [
            binary_uniform(),
            WeightedAlphabet::finite(vec![0.6, 0.3, 0.1]).unwrap(),
            WeightedAlphabet::geometric(0.3).unwrap(),
        ] {
            let mut prev = a.norm_alpha(1.0).unwrap();
            for alpha in [1.5, 2.0, 2.5, 4.0] {
                let next = a.norm_alpha(alpha).unwrap();
                assert!(next < prev, "norm must strictly decrease, {next} !< {prev}");
                prev = next;
            }
        }
    }

    #[test]
    fn word_weights() {
        let a = binary_uniform();
        assert!((a.word_weight(&"ab".parse().unwrap()).unwrap() - 0.25).abs() < 1e-12);

        let b = WeightedAlphabet::finite(vec![0.6, 0.4]).unwrap();
        assert!((b.word_weight(&"aab".parse().unwrap()).unwrap() - 0.144).abs() < 1e-12);

        let w: Word = "aabab".parse().unwrap();
        for j in 0..w.len() {
            let r = w.rotate(j).unwrap();
            assert!((b.word_weight(&w).unwrap() - b.word_weight(&r).unwrap()).abs() < 1e-12);
        }

        assert!(b.word_weight(&"abc".parse().unwrap()).is_err());
        let g = WeightedAlphabet::<f64>::geometric(0.5).unwrap();
        assert!((g.word_weight(&"ab".parse().unwrap()).unwrap() - 0.125).abs() < 1e-12);
    }

    #[test]
    fn degenerate_alphabet_always_samples_letter_one() {
        let a = WeightedAlphabet::<f64>::finite_unchecked(vec![1.0]);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            assert_eq!(a.sample_letter(&mut rng), 1);
        }
    }

    #[test]
    fn sample_frequencies_match_probabilities() {
        let mut rng = ChaCha8Rng::seed_from_u64(12345);
        let draws = 100_000;

        let a = binary_uniform();
        let ones = (0..draws).filter(|_| a.sample_letter(&mut rng) == 1).count();
        assert!((ones as f64 / draws as f64 - 0.5).abs() < 0.01);

        let g = WeightedAlphabet::<f64>::geometric(0.5).unwrap();
        let mut ones = 0usize;
        let mut seen_beyond_two = false;
        for _ in 0..draws {
            let c = g.sample_letter(&mut rng);
            if c == 1 {
                ones += 1;
            }
            if c > 2 {
                seen_beyond_two = true;
            }
        }
        assert!((ones as f64 / draws as f64 - 0.5).abs() < 0.01);
        assert!(seen_beyond_two, "inverse CDF must reach deep letters");
    }

    #[test]
    fn parse_literals() {
        let a = WeightedAlphabet::<f64>::parse("0.5,0.3,0.2").unwrap();
        assert_eq!(a.letter_count(), Some(3));
        let g = WeightedAlphabet::<f64>::parse("geom:0.5").unwrap();
        assert_eq!(g.letter_count(), None);
        assert!(WeightedAlphabet::<f64>::parse("0.5,ab").is_err());
        assert!(WeightedAlphabet::<f64>::parse("geom:x").is_err());
    }
}

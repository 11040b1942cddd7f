//! Permutation words and the suffix embedding.
//!
//! Permutations are stored in one-line notation over the letters `1..=n`
//! (positions and transposition indices are 1-based throughout). Besides the
//! usual statistics (inversions, ascents, parity) and a lexicographic
//! rank/unrank codec, this module implements the suffix split used by the
//! matching constructions: a word of length `n >= 4` is viewed as a 4-letter
//! prefix followed by a suffix `s`, and the prefix letters are re-indexed
//! through the sorted complement of `s` to land in the symmetric group on 4
//! letters.

use crate::{Error, Result};
use std::fmt;

/// Largest `n` for which all of `S_n` can be ranked into a `u64`.
pub const MAX_RANKED_N: usize = 20;

/// Inversion-count parity of a permutation, used as a 2-coloring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    /// Parity of an integer.
    pub fn of(value: u64) -> Parity {
        if value.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// Combine two parities (addition mod 2).
    pub fn xor(self, other: Parity) -> Parity {
        if self == other {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// A sign, `+1` or `-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    /// `(-1)^k` for the parity `k`.
    pub fn from_parity(parity: Parity) -> Sign {
        match parity {
            Parity::Even => Sign::Plus,
            Parity::Odd => Sign::Minus,
        }
    }

    /// The opposite sign.
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// A permutation of `1..=n` in one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    word: Vec<u32>,
}

impl Permutation {
    /// Validate and wrap a one-line word over `1..=n`.
    pub fn new(word: Vec<u32>) -> Result<Permutation> {
        let n = word.len();
        let mut seen = vec![false; n + 1];
        for &x in &word {
            if x == 0 || x as usize > n || seen[x as usize] {
                return Err(Error::InvalidPermutation(format!("{word:?}")));
            }
            seen[x as usize] = true;
        }
        Ok(Permutation { word })
    }

    /// The identity permutation `1 2 .. n`.
    pub fn identity(n: usize) -> Permutation {
        Permutation {
            word: (1..=n as u32).collect(),
        }
    }

    /// Number of letters.
    pub fn n(&self) -> usize {
        self.word.len()
    }

    /// The underlying word.
    pub fn as_slice(&self) -> &[u32] {
        &self.word
    }

    /// The letter at 1-based position `i`.
    pub fn letter(&self, i: usize) -> u32 {
        self.word[i - 1]
    }

    /// Number of inversions: pairs `i < j` with `word[i] > word[j]`.
    pub fn inversion_count(&self) -> u64 {
        let mut count = 0u64;
        for i in 0..self.word.len() {
            for j in i + 1..self.word.len() {
                if self.word[i] > self.word[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// Parity of the inversion count, in time linear in `n`.
    ///
    /// Uses the cycle decomposition: a permutation with `c` cycles on `n`
    /// letters has inversion parity `(n - c) mod 2`.
    pub fn parity(&self) -> Parity {
        parity_of_distinct_word(&self.word)
    }

    /// 1-based positions `i` with `word[i] < word[i+1]`.
    pub fn ascent_set(&self) -> Vec<usize> {
        (1..self.word.len())
            .filter(|&i| self.word[i - 1] < self.word[i])
            .collect()
    }

    /// Swap the letters at positions `i` and `i+1` (1-based, `1 <= i < n`).
    pub fn apply_transposition(&self, i: usize) -> Result<Permutation> {
        if i == 0 || i >= self.word.len() {
            return Err(Error::PositionOutOfRange {
                position: i,
                max: self.word.len().saturating_sub(1),
            });
        }
        let mut word = self.word.clone();
        word.swap(i - 1, i);
        Ok(Permutation { word })
    }

    /// Lexicographic rank within `S_n`, counting from 0.
    pub fn lex_rank(&self) -> Result<u64> {
        let n = self.word.len();
        if n > MAX_RANKED_N {
            return Err(Error::RankingLimit {
                n,
                max: MAX_RANKED_N,
            });
        }
        let mut rank = 0u64;
        for i in 0..n {
            let smaller_later = self.word[i + 1..]
                .iter()
                .filter(|&&x| x < self.word[i])
                .count() as u64;
            rank += smaller_later * factorial(n - 1 - i);
        }
        Ok(rank)
    }

    /// Inverse of [`lex_rank`](Self::lex_rank).
    pub fn lex_unrank(n: usize, rank: u64) -> Result<Permutation> {
        if n > MAX_RANKED_N {
            return Err(Error::RankingLimit {
                n,
                max: MAX_RANKED_N,
            });
        }
        let count = factorial(n);
        if rank >= count {
            return Err(Error::RankOutOfRange { rank, count });
        }
        let mut remaining: Vec<u32> = (1..=n as u32).collect();
        let mut word = Vec::with_capacity(n);
        let mut rank = rank;
        for i in 0..n {
            let f = factorial(n - 1 - i);
            let idx = (rank / f) as usize;
            rank %= f;
            word.push(remaining.remove(idx));
        }
        Ok(Permutation { word })
    }

    /// Parse a text form: concatenated digits for `n <= 9`, comma-separated
    /// numbers otherwise (e.g. `"2134"` or `"10,2,1,3,4,5,6,7,8,9"`).
    pub fn parse(text: &str) -> Result<Permutation> {
        let text = text.trim();
        if text.is_empty() {
            return Err(Error::Parse("empty permutation".into()));
        }
        let word: Vec<u32> = if text.contains(',') {
            text.split(',')
                .map(|t| {
                    t.trim()
                        .parse::<u32>()
                        .map_err(|e| Error::Parse(format!("bad letter {t:?}: {e}")))
                })
                .collect::<Result<_>>()?
        } else {
            text.chars()
                .map(|c| {
                    c.to_digit(10)
                        .filter(|&d| d > 0)
                        .ok_or_else(|| Error::Parse(format!("bad digit {c:?} in {text:?}")))
                })
                .collect::<Result<_>>()?
        };
        Permutation::new(word)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.len() <= 9 {
            for &x in &self.word {
                write!(f, "{x}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.word.iter().map(|x| x.to_string()).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}

/// `n!` for `n <= 20`.
pub fn factorial(n: usize) -> u64 {
    debug_assert!(n <= MAX_RANKED_N);
    (1..=n as u64).product()
}

/// Inversion parity of a word with pairwise-distinct letters, in linear time.
///
/// The word is standardized by counting which of its letters are present,
/// and the parity is read off the cycle count of the standardization.
fn parity_of_distinct_word(word: &[u32]) -> Parity {
    let len = word.len();
    if len < 2 {
        return Parity::Even;
    }
    let max = *word.iter().max().expect("nonempty") as usize;
    // rank[x] = how many letters of the word are <= x (1-based letters).
    let mut present = vec![false; max + 1];
    for &x in word {
        present[x as usize] = true;
    }
    let mut rank = vec![0u32; max + 1];
    let mut running = 0u32;
    for x in 1..=max {
        if present[x] {
            running += 1;
        }
        rank[x] = running;
    }
    // Standardized permutation of 1..=len, then count cycles.
    let std: Vec<u32> = word.iter().map(|&x| rank[x as usize]).collect();
    let mut visited = vec![false; len];
    let mut cycles = 0usize;
    for start in 0..len {
        if visited[start] {
            continue;
        }
        cycles += 1;
        let mut i = start;
        while !visited[i] {
            visited[i] = true;
            i = std[i] as usize - 1;
        }
    }
    Parity::of((len - cycles) as u64)
}

/// The last `n - 4` letters of a word together with the sorted complement
/// `s̄` (which is exactly the set of the first four letters).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Suffix {
    n: usize,
    letters: Vec<u32>,
    complement: [u32; 4],
}

impl Suffix {
    /// Build a suffix over `1..=n` from its letters, computing the
    /// complement. The letters must be distinct, within range, and leave
    /// exactly four letters unused.
    pub fn new(n: usize, letters: Vec<u32>) -> Result<Suffix> {
        if n < 4 {
            return Err(Error::WordTooShort { n });
        }
        if letters.len() != n - 4 {
            return Err(Error::Parse(format!(
                "suffix over 1..={n} must have {} letters, got {}",
                n - 4,
                letters.len()
            )));
        }
        let mut used = vec![false; n + 1];
        for &x in &letters {
            if x == 0 || x as usize > n || used[x as usize] {
                return Err(Error::Parse(format!("bad suffix letter {x} for n = {n}")));
            }
            used[x as usize] = true;
        }
        let mut complement = [0u32; 4];
        let mut k = 0;
        for x in 1..=n as u32 {
            if !used[x as usize] {
                complement[k] = x;
                k += 1;
            }
        }
        Ok(Suffix {
            n,
            letters,
            complement,
        })
    }

    /// Ambient word length `n`.
    pub fn n(&self) -> usize {
        self.n
    }

    /// The suffix letters in order.
    pub fn letters(&self) -> &[u32] {
        &self.letters
    }

    /// The four unused letters, ascending.
    pub fn complement(&self) -> [u32; 4] {
        self.complement
    }

    /// The sign `(-1)^(inv(s) + sum(s̄))`, computed in time linear in `n`.
    pub fn epsilon(&self) -> Sign {
        let inv_parity = parity_of_distinct_word(&self.letters);
        let sum: u64 = self.complement.iter().map(|&x| x as u64).sum();
        Sign::from_parity(inv_parity.xor(Parity::of(sum)))
    }

    /// Embed a 4-letter permutation through the complement: position `i` of
    /// the result holds the `pi(i)`-th smallest complement letter, and the
    /// suffix letters follow unchanged.
    pub fn embed(&self, pi: &Permutation) -> Result<Permutation> {
        if pi.n() != 4 {
            return Err(Error::InvalidPermutation(format!(
                "expected a 4-letter word, got {pi}"
            )));
        }
        let mut word = Vec::with_capacity(self.n);
        for i in 1..=4 {
            word.push(self.complement[pi.letter(i) as usize - 1]);
        }
        word.extend_from_slice(&self.letters);
        Ok(Permutation { word })
    }

    /// Inverse of [`embed`](Self::embed): recover the 4-letter permutation
    /// from a word whose prefix uses exactly the complement letters and
    /// whose tail equals this suffix.
    pub fn extract(&self, word: &Permutation) -> Result<Permutation> {
        if word.n() != self.n || word.as_slice()[4..] != self.letters[..] {
            return Err(Error::NotInSuffixImage {
                word: word.to_string(),
                suffix: format!("{:?}", self.letters),
            });
        }
        let mut pi = Vec::with_capacity(4);
        for i in 1..=4 {
            let x = word.letter(i);
            match self.complement.iter().position(|&c| c == x) {
                Some(idx) => pi.push(idx as u32 + 1),
                None => {
                    return Err(Error::NotInSuffixImage {
                        word: word.to_string(),
                        suffix: format!("{:?}", self.letters),
                    })
                }
            }
        }
        Ok(Permutation { word: pi })
    }
}

/// Split a word of length `n >= 4` into its suffix view (last `n - 4`
/// letters plus complement). The 4-letter preimage of the prefix is
/// recovered with [`Suffix::extract`].
pub fn suffix_split(word: &Permutation) -> Result<Suffix> {
    if word.n() < 4 {
        return Err(Error::WordTooShort { n: word.n() });
    }
    Suffix::new(word.n(), word.as_slice()[4..].to_vec())
}

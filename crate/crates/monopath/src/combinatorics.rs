//! Compositions, multiset words, and the monotone lattice paths they encode.
//!
//! A composition `λ = (λ_1, …, λ_d)` of `n` fixes a multiset `M_λ` containing
//! the letter `i` with multiplicity `λ_i`.  Words over `M_λ` (each letter used
//! exactly its multiplicity) are in bijection with the monotone lattice paths
//! from the origin to `λ` that take unit coordinate steps: the k-th letter
//! names the axis of the k-th step.  The nesting test below is the syntactic
//! side of the coherence question answered geometrically in
//! [`crate::coherence`].

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;

use crate::{Error, Result};

/// A sequence `(λ_1, …, λ_d)` of positive integers with sum `n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Composition {
    parts: Vec<u32>,
    n: u32,
}

impl Composition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidComposition("must have at least one part".into()));
        }
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::InvalidComposition(format!(
                "parts must be positive, got {parts:?}"
            )));
        }
        let n = parts.iter().sum();
        Ok(Self { parts, n })
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Sum of the parts.
    pub fn n(&self) -> u32 {
        self.n
    }

    /// Number of parts.
    pub fn d(&self) -> usize {
        self.parts.len()
    }

    /// `(2, 2, …, 2)` with `d` parts.
    pub fn all_twos(d: usize) -> Self {
        Self::new(vec![2; d.max(1)]).expect("positive parts")
    }

    /// `(1, 1, …, 1)` with `d` parts.
    pub fn all_ones(d: usize) -> Self {
        Self::new(vec![1; d.max(1)]).expect("positive parts")
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for Composition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad composition part {t:?}")))
            })
            .collect::<Result<Vec<u32>>>()?;
        Composition::new(parts)
    }
}

/// All `2^(n-1)` compositions of `n`, in lexicographic order of part lists.
pub fn compositions_of(n: u32) -> Vec<Composition> {
    fn rec(n: u32, prefix: &mut Vec<u32>, out: &mut Vec<Composition>) {
        if n == 0 {
            out.push(Composition::new(prefix.clone()).expect("positive parts"));
            return;
        }
        for first in 1..=n {
            prefix.push(first);
            rec(n - first, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        rec(n, &mut Vec::new(), &mut out);
    }
    out
}

/// A word over the alphabet `{1, …, d}` in which letter `i` occurs exactly
/// `λ_i` times.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LambdaWord {
    letters: Vec<u8>,
    composition: Composition,
}

impl LambdaWord {
    pub fn new(letters: Vec<u8>, composition: Composition) -> Result<Self> {
        if composition.d() > u8::MAX as usize {
            return Err(Error::InvalidWord(format!(
                "alphabet of {} letters does not fit a word",
                composition.d()
            )));
        }
        let mut counts = vec![0u32; composition.d()];
        for &letter in &letters {
            if letter == 0 || letter as usize > composition.d() {
                return Err(Error::InvalidWord(format!(
                    "letter {letter} outside alphabet 1..={}",
                    composition.d()
                )));
            }
            counts[letter as usize - 1] += 1;
        }
        if counts != composition.parts() {
            return Err(Error::InvalidWord(format!(
                "letter multiplicities {counts:?} do not match composition {composition}"
            )));
        }
        Ok(Self { letters, composition })
    }

    /// Builds a word and derives its composition from the letter counts.
    /// Every letter `1..=max` must occur at least once.
    pub fn from_letters(letters: Vec<u8>) -> Result<Self> {
        let d = *letters
            .iter()
            .max()
            .ok_or_else(|| Error::InvalidWord("empty word".into()))? as usize;
        let mut counts = vec![0u32; d];
        for &letter in &letters {
            if letter == 0 {
                return Err(Error::InvalidWord("letters are 1-based".into()));
            }
            counts[letter as usize - 1] += 1;
        }
        let composition = Composition::new(counts)
            .map_err(|_| Error::InvalidWord("some letter in 1..=max never occurs".into()))?;
        Ok(Self { letters, composition })
    }

    /// Parses `"1,2,1"`; a run of digits such as `"121"` is accepted as
    /// shorthand when the alphabet has at most 9 letters.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty word".into()));
        }
        let letters = if s.contains(',') {
            s.split(',')
                .map(|t| {
                    t.trim()
                        .parse::<u8>()
                        .map_err(|_| Error::Parse(format!("bad letter {t:?}")))
                })
                .collect::<Result<Vec<u8>>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|v| v as u8)
                        .ok_or_else(|| Error::Parse(format!("bad letter {c:?}")))
                })
                .collect::<Result<Vec<u8>>>()?
        };
        Self::from_letters(letters)
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn composition(&self) -> &Composition {
        &self.composition
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// 0-based position of the first occurrence of each letter.
    pub fn first_positions(&self) -> Vec<usize> {
        let mut first = vec![usize::MAX; self.composition.d()];
        for (pos, &letter) in self.letters.iter().enumerate() {
            let slot = &mut first[letter as usize - 1];
            if *slot == usize::MAX {
                *slot = pos;
            }
        }
        first
    }

    /// For each position k, how many earlier positions hold the same letter.
    pub fn prefix_occurrences(&self) -> Vec<u32> {
        let mut seen = vec![0u32; self.composition.d()];
        self.letters
            .iter()
            .map(|&letter| {
                let m = seen[letter as usize - 1];
                seen[letter as usize - 1] += 1;
                m
            })
            .collect()
    }
}

impl fmt::Display for LambdaWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letters: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        write!(f, "{}", letters.join(","))
    }
}

/// A lattice path `v_0, …, v_n` from the origin with unit coordinate steps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePath {
    points: Vec<Vec<i64>>,
}

impl LatticePath {
    pub fn points(&self) -> &[Vec<i64>] {
        &self.points
    }

    pub fn steps(&self) -> usize {
        self.points.len() - 1
    }
}

/// `n! / (λ_1! ⋯ λ_d!)`, the number of words of the composition.
pub fn multinomial_count(composition: &Composition) -> BigUint {
    let mut result = factorial(composition.n() as u64);
    for &part in composition.parts() {
        result /= factorial(part as u64);
    }
    result
}

/// `n! / (n - d + 1)!`, the number of non-nesting words.  Depends only on the
/// sum and the number of parts.
pub fn coherent_count_formula(composition: &Composition) -> BigUint {
    let n = composition.n() as u64;
    let d = composition.d() as u64;
    let mut result = BigUint::one();
    for t in (n - d + 2)..=n {
        result *= t;
    }
    result
}

pub fn factorial(k: u64) -> BigUint {
    let mut result = BigUint::one();
    for t in 2..=k {
        result *= t;
    }
    result
}

/// Streams every word of the composition exactly once, in lexicographic
/// order.  Refuses compositions with `n` above `cap`.
pub fn enumerate_words(composition: &Composition, cap: usize) -> Result<Words> {
    if composition.n() as usize > cap {
        return Err(Error::CapExceeded {
            task: "word enumeration",
            needed: composition.n() as u128,
            cap: cap as u128,
        });
    }
    let mut first = Vec::with_capacity(composition.n() as usize);
    for (index, &part) in composition.parts().iter().enumerate() {
        first.extend(std::iter::repeat(index as u8 + 1).take(part as usize));
    }
    Ok(Words {
        composition: composition.clone(),
        next: Some(first),
    })
}

pub struct Words {
    composition: Composition,
    next: Option<Vec<u8>>,
}

impl Iterator for Words {
    type Item = LambdaWord;

    fn next(&mut self) -> Option<LambdaWord> {
        let current = self.next.take()?;
        let mut upcoming = current.clone();
        if next_permutation(&mut upcoming) {
            self.next = Some(upcoming);
        }
        Some(LambdaWord {
            letters: current,
            composition: self.composition.clone(),
        })
    }
}

fn next_permutation(letters: &mut [u8]) -> bool {
    if letters.len() < 2 {
        return false;
    }
    let mut i = letters.len() - 1;
    while i > 0 && letters[i - 1] >= letters[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = letters.len() - 1;
    while letters[j] <= letters[i - 1] {
        j -= 1;
    }
    letters.swap(i - 1, j);
    letters[i..].reverse();
    true
}

/// A word nests if some pair of equal letters encloses a pair of equal
/// letters of another kind with no outer letter in between: positions
/// `i < j < k < l` with `w_i = w_l`, `w_j = w_k`, and `w_m ≠ w_i` for all
/// `j ≤ m ≤ k`.
///
/// The scan below only inspects consecutive occurrences `(i, l)` of each
/// letter: any nesting has a witness of that shape, and for consecutive
/// occurrences the interior is free of the outer letter, so the condition
/// reduces to "some letter repeats strictly inside".  Runs in `O(n^2)`; the
/// literal four-index definition lives in [`nesting_count`].
pub fn is_non_nesting(word: &LambdaWord) -> bool {
    let letters = word.letters();
    let d = word.composition().d();
    let mut previous = vec![usize::MAX; d + 1];
    let mut stamp = vec![0u32; d + 1];
    let mut pair_id = 0u32;
    for (pos, &letter) in letters.iter().enumerate() {
        let prev = previous[letter as usize];
        if prev != usize::MAX {
            pair_id += 1;
            for &inner in &letters[prev + 1..pos] {
                if stamp[inner as usize] == pair_id {
                    return false;
                }
                stamp[inner as usize] = pair_id;
            }
        }
        previous[letter as usize] = pos;
    }
    true
}

/// Number of index quadruples `(i, j, k, l)` witnessing a nesting.  Zero
/// exactly when [`is_non_nesting`] holds.
pub fn nesting_count(word: &LambdaWord) -> u64 {
    let letters = word.letters();
    let n = letters.len();
    let d = word.composition().d();

    // prefix[a][p] = occurrences of letter a among the first p positions
    let mut prefix = vec![vec![0u64; n + 1]; d + 1];
    for pos in 0..n {
        for a in 1..=d {
            prefix[a][pos + 1] = prefix[a][pos] + u64::from(letters[pos] == a as u8);
        }
    }

    let mut total = 0u64;
    for j in 0..n {
        for k in j + 1..n {
            if letters[j] != letters[k] {
                continue;
            }
            let inner = letters[j] as usize;
            for a in 1..=d {
                if a == inner {
                    continue;
                }
                // outer letter must avoid positions j..=k entirely
                if prefix[a][k + 1] - prefix[a][j] > 0 {
                    continue;
                }
                let before = prefix[a][j];
                let after = prefix[a][n] - prefix[a][k + 1];
                total += before * after;
            }
        }
    }
    total
}

/// The lattice path whose k-th step moves along axis `w_k`.
pub fn word_to_path(word: &LambdaWord) -> LatticePath {
    let d = word.composition().d();
    let mut points = Vec::with_capacity(word.len() + 1);
    let mut current = vec![0i64; d];
    points.push(current.clone());
    for &letter in word.letters() {
        current[letter as usize - 1] += 1;
        points.push(current.clone());
    }
    LatticePath { points }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn word(s: &str) -> LambdaWord {
        LambdaWord::parse(s).unwrap()
    }

    fn comp(parts: &[u32]) -> Composition {
        Composition::new(parts.to_vec()).unwrap()
    }

    /// Literal four-index scan of the nesting definition.
    fn nesting_quadruples(word: &LambdaWord) -> u64 {
        let w = word.letters();
        let n = w.len();
        let mut total = 0;
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    for l in k + 1..n {
                        if w[i] == w[l]
                            && w[j] == w[k]
                            && (j..=k).all(|m| w[m] != w[i])
                        {
                            total += 1;
                        }
                    }
                }
            }
        }
        total
    }

    #[test]
    fn composition_rejects_zero_parts() {
        assert!(Composition::new(vec![0, 1]).is_err());
        assert!(Composition::new(vec![]).is_err());
        assert!("0,1".parse::<Composition>().is_err());
    }

    #[test]
    fn multinomial_small_values() {
        assert_eq!(multinomial_count(&comp(&[1, 1, 1])), BigUint::from(6u32));
        assert_eq!(multinomial_count(&comp(&[2, 2, 2])), BigUint::from(90u32));
        assert_eq!(multinomial_count(&comp(&[4, 3])), BigUint::from(35u32));
    }

    #[test]
    fn coherent_count_small_values() {
        assert_eq!(coherent_count_formula(&comp(&[2, 2, 2])), BigUint::from(30u32));
        assert_eq!(coherent_count_formula(&comp(&[3, 2, 1])), BigUint::from(30u32));
        for d in 1..=6 {
            assert_eq!(
                coherent_count_formula(&Composition::all_ones(d)),
                factorial(d as u64),
                "n = d must give d!"
            );
        }
    }

    #[test]
    fn enumeration_is_lexicographic_and_complete() {
        let words: Vec<String> = enumerate_words(&comp(&[2, 1]), 12)
            .unwrap()
            .map(|w| w.to_string())
            .collect();
        assert_eq!(words, ["1,1,2", "1,2,1", "2,1,1"]);

        let words: Vec<String> = enumerate_words(&comp(&[1, 1]), 12)
            .unwrap()
            .map(|w| w.to_string())
            .collect();
        assert_eq!(words, ["1,2", "2,1"]);

        let words: Vec<String> = enumerate_words(&comp(&[3]), 12)
            .unwrap()
            .map(|w| w.to_string())
            .collect();
        assert_eq!(words, ["1,1,1"]);
    }

    #[test]
    fn enumeration_respects_cap() {
        let err = enumerate_words(&comp(&[7, 6]), 12).unwrap_err();
        assert!(matches!(err, Error::CapExceeded { .. }));
    }

    #[test]
    fn enumeration_count_matches_multinomial() {
        for n in 1..=7 {
            for composition in compositions_of(n) {
                let count = enumerate_words(&composition, 12).unwrap().count();
                assert_eq!(
                    BigUint::from(count),
                    multinomial_count(&composition),
                    "composition {composition}"
                );
            }
        }
    }

    #[test]
    fn nesting_examples() {
        assert!(is_non_nesting(&word("12121")));
        assert!(!is_non_nesting(&word("12211")));
        assert!(is_non_nesting(&word("112233")));
    }

    #[test]
    fn nesting_count_examples() {
        assert_eq!(nesting_count(&word("12121")), 0);
        assert_eq!(nesting_count(&word("1221")), 1);
        assert_eq!(nesting_count(&word("123321")), 3);
    }

    #[test]
    fn nesting_scan_agrees_with_quadruple_oracle() {
        for n in 1..=7 {
            for composition in compositions_of(n) {
                for w in enumerate_words(&composition, 12).unwrap() {
                    let quadruples = nesting_quadruples(&w);
                    assert_eq!(nesting_count(&w), quadruples, "word {w}");
                    assert_eq!(is_non_nesting(&w), quadruples == 0, "word {w}");
                }
            }
        }
    }

    #[test]
    fn census_matches_formula_small() {
        for n in 1..=6 {
            for composition in compositions_of(n) {
                let census = enumerate_words(&composition, 12)
                    .unwrap()
                    .filter(is_non_nesting)
                    .count();
                assert_eq!(
                    BigUint::from(census),
                    coherent_count_formula(&composition),
                    "composition {composition}"
                );
            }
        }
    }

    #[test]
    fn path_of_word() {
        let path = word_to_path(&word("121"));
        assert_eq!(
            path.points(),
            [vec![0, 0], vec![1, 0], vec![1, 1], vec![2, 1]]
        );

        let path = word_to_path(&word("11"));
        assert_eq!(path.points(), [vec![0], vec![1], vec![2]]);

        // steps e1, e2, e1, e3, e2, e3
        let path = word_to_path(&word("121323"));
        let steps: Vec<Vec<i64>> = path
            .points()
            .windows(2)
            .map(|pair| pair[1].iter().zip(&pair[0]).map(|(a, b)| a - b).collect())
            .collect();
        assert_eq!(
            steps,
            [
                vec![1, 0, 0],
                vec![0, 1, 0],
                vec![1, 0, 0],
                vec![0, 0, 1],
                vec![0, 1, 0],
                vec![0, 0, 1],
            ]
        );
    }

    #[test]
    fn word_parse_forms_agree() {
        assert_eq!(word("1,2,1").letters(), word("121").letters());
        assert!(LambdaWord::parse("103").is_err());
        assert!(LambdaWord::parse("13").is_err(), "letter 2 missing");
    }

    proptest! {
        #[test]
        fn path_invariants_hold(letters in proptest::collection::vec(1u8..=4, 1..=9)) {
            // make every letter up to the max occur
            let mut letters = letters;
            let max = *letters.iter().max().unwrap();
            for fill in 1..=max {
                if !letters.contains(&fill) {
                    letters.push(fill);
                }
            }
            let w = LambdaWord::from_letters(letters).unwrap();
            let path = word_to_path(&w);
            let points = path.points();
            prop_assert!(points[0].iter().all(|&c| c == 0));
            let last: Vec<i64> = w.composition().parts().iter().map(|&p| p as i64).collect();
            prop_assert_eq!(points.last().unwrap(), &last);
            for pair in points.windows(2) {
                let diff: i64 = pair[1].iter().zip(&pair[0]).map(|(a, b)| a - b).sum();
                prop_assert_eq!(diff, 1);
                prop_assert!(pair[1].iter().zip(&pair[0]).all(|(a, b)| (a - b) >= 0));
            }
        }
    }
}

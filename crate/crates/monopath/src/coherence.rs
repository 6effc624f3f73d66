//! Coherence of words and subdivisions via edge-increment sequences and
//! difference-constraint feasibility.
//!
//! A linear functional `c(x) = a_1 x_1 + ⋯ + a_d x_d + (1/2) x_{d+1}` on the
//! lifted box is recorded here by its shifted coefficients `a'_i = a_i + 1/2`.
//! Along a lifted path the increment of `c` at the k-th edge is
//! `a'_{w_k} + m_k`, where `m_k` counts earlier occurrences of the letter
//! `w_k`.  The word selected by a generic `c` is the unique one whose
//! increment sequence is strictly increasing, and a word arises this way
//! exactly when its ordering constraints admit a solution.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::combinatorics::{Composition, LambdaWord};
use crate::solver::{feasibility, Constraint, DifferenceConstraintSystem};
use crate::subdivisions::OrderedPartition;
use crate::{Error, Result};

/// Shifted coefficients `(a'_1, …, a'_d)` of a linear functional on the
/// lifted box.  Generic for `λ` when the `n` values `a'_i + m`,
/// `0 ≤ m ≤ λ_i − 1`, are pairwise distinct.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericFunctional {
    aprime: Vec<BigRational>,
}

impl GenericFunctional {
    pub fn new(aprime: Vec<BigRational>) -> Self {
        Self { aprime }
    }

    pub fn from_integers(values: &[i64]) -> Self {
        Self::new(
            values
                .iter()
                .map(|&v| BigRational::from_integer(BigInt::from(v)))
                .collect(),
        )
    }

    pub fn aprime(&self) -> &[BigRational] {
        &self.aprime
    }

    pub fn d(&self) -> usize {
        self.aprime.len()
    }

    /// The `n` values `a'_i + m` with the letter and shift that produced each.
    pub fn values(&self, composition: &Composition) -> Vec<(BigRational, u8, u32)> {
        assert_eq!(self.d(), composition.d(), "functional dimension mismatch");
        let mut values = Vec::with_capacity(composition.n() as usize);
        for (index, &part) in composition.parts().iter().enumerate() {
            for m in 0..part {
                let value = &self.aprime[index] + BigRational::from_integer(BigInt::from(m));
                values.push((value, index as u8 + 1, m));
            }
        }
        values
    }

    /// Errors with the colliding pair when two of the `n` values coincide.
    pub fn check_generic(&self, composition: &Composition) -> Result<()> {
        let mut values = self.values(composition);
        values.sort_by(|a, b| a.0.cmp(&b.0));
        for pair in values.windows(2) {
            if pair[0].0 == pair[1].0 {
                return Err(Error::NonGenericFunctional {
                    i: pair[0].1,
                    m: pair[0].2,
                    j: pair[1].1,
                    l: pair[1].2,
                });
            }
        }
        Ok(())
    }
}

/// Edge increments of the functional along the lifted path of `word`:
/// the k-th term is `a'_{w_k} + m_k`.
pub fn delta_sequence(word: &LambdaWord, functional: &GenericFunctional) -> Vec<BigRational> {
    assert_eq!(
        functional.d(),
        word.composition().d(),
        "functional dimension mismatch"
    );
    word.letters()
        .iter()
        .zip(word.prefix_occurrences())
        .map(|(&letter, m)| {
            &functional.aprime()[letter as usize - 1] + BigRational::from_integer(BigInt::from(m))
        })
        .collect()
}

/// The unique word whose increment sequence under `functional` is strictly
/// increasing: sort the `n` values `a'_i + m` and read off the letters.
pub fn word_of_functional(
    functional: &GenericFunctional,
    composition: &Composition,
) -> Result<LambdaWord> {
    functional.check_generic(composition)?;
    let mut values = functional.values(composition);
    values.sort_by(|a, b| a.0.cmp(&b.0));
    let letters = values.into_iter().map(|(_, letter, _)| letter).collect();
    LambdaWord::new(letters, composition.clone())
}

/// Where a generic point lands: two generic points produce the same word
/// exactly when no hyperplane `x_i − x_j = l − m` of the deformed braid
/// arrangement separates them, and the word is always non-nesting.
pub fn region_of_point(
    functional: &GenericFunctional,
    composition: &Composition,
) -> Result<LambdaWord> {
    let word = word_of_functional(functional, composition)?;
    debug_assert!(crate::combinatorics::is_non_nesting(&word));
    Ok(word)
}

/// Ordering constraints selecting the lifted path of `word`: one variable per
/// position, a strict chain `y_1 < ⋯ < y_n`, and `y_k = y_j + 1` for each
/// pair of consecutive equal letters.
pub fn path_coherence_system(word: &LambdaWord) -> DifferenceConstraintSystem {
    let n = word.len();
    let mut system = DifferenceConstraintSystem::new(n);
    for k in 0..n.saturating_sub(1) {
        system.add(k, k + 1, 0, true);
    }
    let mut previous = vec![usize::MAX; word.composition().d() + 1];
    for (pos, &letter) in word.letters().iter().enumerate() {
        let prev = previous[letter as usize];
        if prev != usize::MAX {
            system.add_equality(pos, prev, 1);
        }
        previous[letter as usize] = pos;
    }
    system
}

#[derive(Clone, Debug)]
pub struct PathCoherence {
    pub coherent: bool,
    /// Functional selecting the word, extracted from the feasibility witness.
    pub witness: Option<GenericFunctional>,
    pub certificate: Option<Vec<Constraint>>,
}

/// A word is coherent exactly when its ordering system is feasible.  The
/// returned functional takes `a'_i` from the witness value at the first
/// occurrence of letter `i` and satisfies
/// `word_of_functional(witness) == word`.
pub fn is_coherent_path(word: &LambdaWord) -> PathCoherence {
    let system = path_coherence_system(word);
    let result = feasibility(&system);
    if !result.feasible {
        return PathCoherence {
            coherent: false,
            witness: None,
            certificate: result.certificate,
        };
    }
    let values = result.witness.expect("feasible system has witness");
    let aprime = word
        .first_positions()
        .iter()
        .map(|&pos| values[pos].clone())
        .collect();
    let functional = ensure_generic_for_word(GenericFunctional::new(aprime), word)
        .expect("witness-derived functional must be generic");
    PathCoherence {
        coherent: true,
        witness: Some(functional),
        certificate: None,
    }
}

/// Restores genericity after ties by adding `i · ε` to `a'_i` with
/// `ε = 1/(2(n+1)^2)`, then re-verifies through the increment sequence that
/// the perturbation kept every strict ordering.  Witness-derived functionals
/// are already generic (their values are the strictly increasing `y_k`), so
/// the perturbation only fires for hand-built input.
pub fn ensure_generic_for_word(
    functional: GenericFunctional,
    word: &LambdaWord,
) -> Result<GenericFunctional> {
    let composition = word.composition();
    if functional.check_generic(composition).is_ok() {
        return Ok(functional);
    }
    let n = composition.n() as i64;
    let epsilon = BigRational::new(BigInt::from(1), BigInt::from(2 * (n + 1) * (n + 1)));
    let aprime = functional
        .aprime()
        .iter()
        .enumerate()
        .map(|(index, a)| a + &epsilon * BigRational::from_integer(BigInt::from(index as i64 + 1)))
        .collect();
    let perturbed = GenericFunctional::new(aprime);
    perturbed.check_generic(composition)?;
    let deltas = delta_sequence(word, &perturbed);
    if deltas.windows(2).all(|pair| pair[0] < pair[1]) {
        Ok(perturbed)
    } else {
        Err(Error::InvalidWord(format!(
            "perturbation does not select {word}"
        )))
    }
}

/// Ordering constraints of an ordered partition, on one variable per letter.
/// The t-th occurrence of letter `i` (left to right) stands for `x_i + (t−1)`;
/// expressions in a block are equated, and one strict constraint per adjacent
/// block boundary orders the blocks (the rest follows by transitivity).
pub fn subdivision_coherence_system(partition: &OrderedPartition) -> DifferenceConstraintSystem {
    let d = partition.composition().d();
    let mut system = DifferenceConstraintSystem::new(d);
    let blocks = partition.expressions();
    for block in &blocks {
        for pair in block.windows(2) {
            let (u, su) = pair[0];
            let (v, sv) = pair[1];
            system.add_equality(u, v, sv as i64 - su as i64);
        }
    }
    for boundary in blocks.windows(2) {
        let (u, su) = boundary[0][0];
        let (v, sv) = boundary[1][0];
        system.add(u, v, sv as i64 - su as i64, true);
    }
    system
}

/// The literal all-pairs form of the same system; kept as a cross-check
/// oracle for [`subdivision_coherence_system`].
pub fn subdivision_coherence_system_pairwise(
    partition: &OrderedPartition,
) -> DifferenceConstraintSystem {
    let d = partition.composition().d();
    let mut system = DifferenceConstraintSystem::new(d);
    let blocks = partition.expressions();
    for block in &blocks {
        for a in 0..block.len() {
            for b in a + 1..block.len() {
                let (u, su) = block[a];
                let (v, sv) = block[b];
                system.add_equality(u, v, sv as i64 - su as i64);
            }
        }
    }
    for j in 0..blocks.len() {
        for l in j + 1..blocks.len() {
            for &(u, su) in &blocks[j] {
                for &(v, sv) in &blocks[l] {
                    system.add(u, v, sv as i64 - su as i64, true);
                }
            }
        }
    }
    system
}

#[derive(Clone, Debug)]
pub struct SubdivisionCoherence {
    pub coherent: bool,
    /// Dimension of the solution face of the arrangement; counts equality
    /// components among the `d` variables.
    pub dimension: Option<usize>,
    pub certificate: Option<Vec<Constraint>>,
}

pub fn is_coherent_subdivision(partition: &OrderedPartition) -> SubdivisionCoherence {
    let result = feasibility(&subdivision_coherence_system(partition));
    SubdivisionCoherence {
        coherent: result.feasible,
        dimension: result.dimension.filter(|_| result.feasible),
        certificate: result.certificate,
    }
}

/// `c(I) = Σ (a'_i − 1/2) x_i + (1/2) x_{d+1}` for a point in lifted
/// coordinates.
pub fn functional_value(functional: &GenericFunctional, point: &[BigRational]) -> BigRational {
    assert_eq!(point.len(), functional.d() + 1, "point dimension mismatch");
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    let mut total = BigRational::zero();
    for (a, x) in functional.aprime().iter().zip(point.iter()) {
        total += (a - &half) * x;
    }
    total += &half * &point[functional.d()];
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{
        compositions_of, enumerate_words, is_non_nesting, Composition, LambdaWord,
    };

    fn word(s: &str) -> LambdaWord {
        LambdaWord::parse(s).unwrap()
    }

    fn rational(s: &str) -> BigRational {
        s.parse().unwrap()
    }

    fn functional(values: &[&str]) -> GenericFunctional {
        GenericFunctional::new(values.iter().map(|v| rational(v)).collect())
    }

    #[test]
    fn delta_sequence_examples() {
        let c = functional(&["0", "2/5"]);
        let deltas = delta_sequence(&word("1212"), &c);
        assert_eq!(deltas, ["0", "2/5", "1", "7/5"].map(rational));

        let c1 = functional(&["0"]);
        assert_eq!(delta_sequence(&word("11"), &c1), ["0", "1"].map(rational));

        let deltas = delta_sequence(&word("1221"), &c);
        assert_eq!(deltas, ["0", "2/5", "7/5", "1"].map(rational));
        assert!(deltas.windows(2).any(|p| p[0] >= p[1]), "not increasing");
    }

    #[test]
    fn word_of_functional_examples() {
        let lambda = Composition::new(vec![2, 2]).unwrap();
        let selected = word_of_functional(&functional(&["0", "2/5"]), &lambda).unwrap();
        assert_eq!(selected, word("1212"));

        let selected = word_of_functional(&functional(&["0", "10"]), &lambda).unwrap();
        assert_eq!(selected, word("1122"));

        let err = word_of_functional(&functional(&["0", "1"]), &lambda).unwrap_err();
        assert_eq!(err, Error::NonGenericFunctional { i: 1, m: 1, j: 2, l: 0 });
    }

    #[test]
    fn region_examples() {
        let lambda = Composition::new(vec![2, 2]).unwrap();
        assert_eq!(
            region_of_point(&functional(&["0", "-10"]), &lambda).unwrap(),
            word("2211")
        );
    }

    #[test]
    fn path_system_examples() {
        assert!(feasibility(&path_coherence_system(&word("12121"))).feasible);
        assert!(!feasibility(&path_coherence_system(&word("12211"))).feasible);

        let system = path_coherence_system(&word("11"));
        let result = feasibility(&system);
        assert!(result.feasible);
        let witness = result.witness.unwrap();
        assert_eq!(
            &witness[1] - &witness[0],
            BigRational::from_integer(1.into())
        );
    }

    #[test]
    fn coherent_path_examples() {
        let verdict = is_coherent_path(&word("12121"));
        assert!(verdict.coherent);
        let c = verdict.witness.unwrap();
        assert_eq!(
            word_of_functional(&c, word("12121").composition()).unwrap(),
            word("12121")
        );

        let verdict = is_coherent_path(&word("12211"));
        assert!(!verdict.coherent);
        assert!(verdict.certificate.is_some());

        // no repeated letters: the equality part is empty
        for w in enumerate_words(&Composition::all_ones(3), 12).unwrap() {
            assert!(is_coherent_path(&w).coherent);
        }
    }

    #[test]
    fn coherence_matches_nesting_small() {
        for n in 1..=6 {
            for composition in compositions_of(n) {
                for w in enumerate_words(&composition, 12).unwrap() {
                    assert_eq!(
                        is_coherent_path(&w).coherent,
                        is_non_nesting(&w),
                        "word {w}"
                    );
                }
            }
        }
    }

    #[test]
    fn witness_round_trip_small() {
        for n in 1..=6 {
            for composition in compositions_of(n) {
                for w in enumerate_words(&composition, 12).unwrap() {
                    let verdict = is_coherent_path(&w);
                    if let Some(c) = verdict.witness {
                        assert_eq!(word_of_functional(&c, &composition).unwrap(), w);
                    }
                }
            }
        }
    }

    #[test]
    fn sorting_law_small() {
        // strictly increasing increments exactly for the selected word
        let lambda = Composition::new(vec![2, 2]).unwrap();
        let c = functional(&["0", "2/5"]);
        let selected = word_of_functional(&c, &lambda).unwrap();
        for w in enumerate_words(&lambda, 12).unwrap() {
            let increasing = delta_sequence(&w, &c)
                .windows(2)
                .all(|pair| pair[0] < pair[1]);
            assert_eq!(increasing, w == selected, "word {w}");
        }
    }

    #[test]
    fn perturbation_restores_genericity() {
        let w = word("1122");
        let tied = functional(&["0", "1"]);
        assert!(tied.check_generic(w.composition()).is_err());
        let fixed = ensure_generic_for_word(tied, &w).unwrap();
        assert!(fixed.check_generic(w.composition()).is_ok());
        assert_eq!(word_of_functional(&fixed, w.composition()).unwrap(), w);
    }

    #[test]
    fn subdivision_system_examples() {
        let bad = OrderedPartition::parse("1|1,2|2|1,2|1").unwrap();
        assert!(!feasibility(&subdivision_coherence_system(&bad)).feasible);

        let atom = OrderedPartition::parse("1|2|1|2|1|2|1").unwrap();
        assert!(feasibility(&subdivision_coherence_system(&atom)).feasible);

        let singles = OrderedPartition::from_word(&word("12121"));
        let verdict = is_coherent_subdivision(&singles);
        assert!(verdict.coherent);
        assert_eq!(verdict.dimension, Some(2));
    }

    #[test]
    fn subdivision_dimension_examples() {
        let line = OrderedPartition::parse("1|1,2").unwrap();
        let verdict = is_coherent_subdivision(&line);
        assert!(verdict.coherent);
        assert_eq!(verdict.dimension, Some(1));

        let bad = OrderedPartition::parse("1|1,2|2|1,2|1").unwrap();
        let verdict = is_coherent_subdivision(&bad);
        assert!(!verdict.coherent);
        assert_eq!(verdict.dimension, None);
        assert!(verdict.certificate.is_some());
    }

    #[test]
    fn boundary_shortcut_agrees_with_pairwise_oracle() {
        for n in 1..=6 {
            for composition in compositions_of(n) {
                for partition in
                    crate::subdivisions::enumerate_proper_partitions(&composition, 12).unwrap()
                {
                    let fast = feasibility(&subdivision_coherence_system(&partition));
                    let full = feasibility(&subdivision_coherence_system_pairwise(&partition));
                    assert_eq!(fast.feasible, full.feasible, "partition {partition}");
                    if fast.feasible {
                        assert_eq!(fast.dimension, full.dimension, "partition {partition}");
                    }
                }
            }
        }
    }
}

//! The deformed braid arrangement of a composition, its characteristic
//! polynomial by closed form and by finite-field counting, region and face
//! counts, and the coset labeling of regions.
//!
//! For `λ = (λ_1, …, λ_d)` the arrangement consists of the hyperplanes
//! `x_i − x_j = s` for `1 ≤ i < j ≤ d` and `−λ_i + 1 ≤ s ≤ λ_j − 1`.  Its
//! regions are in bijection with the non-nesting words of `λ`.

use std::collections::HashSet;
use std::hash::{Hash, Hasher};

use itertools::Itertools;
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::combinatorics::{enumerate_words, is_non_nesting, Composition, LambdaWord};
use crate::{Error, Result};

/// `x_i − x_j = s` with `1 ≤ i < j ≤ d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Hyperplane {
    pub i: usize,
    pub j: usize,
    pub s: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeformedArrangement {
    d: usize,
    hyperplanes: Vec<Hyperplane>,
}

impl DeformedArrangement {
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }
}

/// The hyperplane list of the composition, sorted and free of duplicates:
/// `λ_i + λ_j − 1` offsets per pair `i < j`.
pub fn build_arrangement(composition: &Composition) -> DeformedArrangement {
    let d = composition.d();
    let parts = composition.parts();
    let mut hyperplanes = Vec::new();
    for i in 0..d {
        for j in i + 1..d {
            for s in (1 - parts[i] as i64)..=(parts[j] as i64 - 1) {
                hyperplanes.push(Hyperplane { i: i + 1, j: j + 1, s });
            }
        }
    }
    hyperplanes.sort_unstable();
    hyperplanes.dedup();
    DeformedArrangement { d, hyperplanes }
}

/// Integer polynomial in `q`, constant term first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharPoly {
    coefficients: Vec<BigInt>,
}

impl CharPoly {
    pub fn coefficients(&self) -> &[BigInt] {
        &self.coefficients
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut value = BigInt::zero();
        for coefficient in self.coefficients.iter().rev() {
            value = value * x + coefficient;
        }
        value
    }
}

/// `χ(q) = q · ∏_{j = n−d+1}^{n−1} (q − j)`, expanded exactly.
pub fn char_poly_closed(composition: &Composition) -> CharPoly {
    let n = composition.n() as i64;
    let d = composition.d() as i64;
    // start from the factor q
    let mut coefficients = vec![BigInt::zero(), BigInt::one()];
    for j in (n - d + 1)..=(n - 1) {
        // multiply by (q − j)
        let mut next = vec![BigInt::zero(); coefficients.len() + 1];
        for (power, coefficient) in coefficients.iter().enumerate() {
            next[power + 1] += coefficient;
            next[power] -= coefficient * BigInt::from(j);
        }
        coefficients = next;
    }
    CharPoly { coefficients }
}

/// Brute-force point count over the prime field: tuples in `(Z/q)^d` avoiding
/// every hyperplane mod `q`.  Matches the closed form at primes `q > n`.
pub fn char_poly_finite_field(composition: &Composition, q: u64, cap: u128) -> Result<BigUint> {
    if !is_prime(q) {
        return Err(Error::NotPrime(q));
    }
    let d = composition.d();
    let grid: u128 = (q as u128).pow(d as u32);
    if grid > cap {
        return Err(Error::TooLarge(grid));
    }
    let arrangement = build_arrangement(composition);
    let forbidden: Vec<(usize, usize, u64)> = arrangement
        .hyperplanes()
        .iter()
        .map(|h| (h.i - 1, h.j - 1, h.s.rem_euclid(q as i64) as u64))
        .collect();

    let mut count = 0u64;
    let mut point = vec![0u64; d];
    'grid: loop {
        if forbidden
            .iter()
            .all(|&(i, j, s)| (point[i] + q - point[j]) % q != s)
        {
            count += 1;
        }
        let mut axis = d;
        loop {
            if axis == 0 {
                break 'grid;
            }
            axis -= 1;
            point[axis] += 1;
            if point[axis] < q {
                break;
            }
            point[axis] = 0;
        }
    }
    Ok(BigUint::from(count))
}

/// Number of regions, `(−1)^d χ(−1) = n!/(n−d+1)!`.
pub fn region_count(composition: &Composition) -> BigUint {
    let chi = char_poly_closed(composition).eval(&BigInt::from(-1));
    let signed = if composition.d() % 2 == 0 { chi } else { -chi };
    signed
        .to_biguint()
        .expect("region counts are positive")
}

/// Deterministic trial division; sufficient for the capped grid sizes.
pub fn is_prime(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    if q % 2 == 0 {
        return q == 2;
    }
    let mut f = 3u64;
    while f.saturating_mul(f) <= q {
        if q % f == 0 {
            return false;
        }
        f += 2;
    }
    true
}

/// Stirling number of the second kind, `S(d, r)`.
pub fn stirling2(d: u32, r: u32) -> BigUint {
    if r > d {
        return BigUint::zero();
    }
    if d == 0 {
        return BigUint::one();
    }
    if r == 0 {
        return BigUint::zero();
    }
    // S(d, r) = r · S(d−1, r) + S(d−1, r−1)
    let mut row = vec![BigUint::zero(); r as usize + 1];
    row[0] = BigUint::one();
    for _ in 1..=d {
        for slot in (1..=r as usize).rev() {
            row[slot] = &row[slot] * BigUint::from(slot) + &row[slot - 1];
        }
        row[0] = BigUint::zero();
    }
    row[r as usize].clone()
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let mut result = BigUint::one();
    for t in 0..k.min(n - k) {
        result = result * BigUint::from(n - t) / BigUint::from(t + 1);
    }
    result
}

/// For `λ = (2, …, 2)` with `d` parts: the number of faces of solution-set
/// dimension `k` among the coherent subdivisions,
/// `Σ_{r=k}^{d} (r−1)! · S(d,r) · C(r,k) · C(r+k, k−1)`.
pub fn catalan_face_count(d: u32, k: u32) -> BigUint {
    if k == 0 || k > d {
        return BigUint::zero();
    }
    let mut total = BigUint::zero();
    for r in k..=d {
        total += crate::combinatorics::factorial(u64::from(r) - 1)
            * stirling2(d, r)
            * binomial(u64::from(r), u64::from(k))
            * binomial(u64::from(r + k), u64::from(k) - 1);
    }
    total
}

/// Coset of the diagonal subgroup of `(Z/(n+1))^d`: two labels agree when
/// their representatives differ by a multiple of `(1, …, 1)`.
#[derive(Clone, Debug)]
pub struct CosetLabel {
    representative: Vec<u64>,
    modulus: u64,
}

impl CosetLabel {
    pub fn new(representative: Vec<u64>, modulus: u64) -> Self {
        let representative = representative.iter().map(|&r| r % modulus).collect();
        Self { representative, modulus }
    }

    pub fn representative(&self) -> &[u64] {
        &self.representative
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// The representative shifted so its first coordinate is zero.
    pub fn canonical(&self) -> Vec<u64> {
        let shift = self.representative[0];
        self.representative
            .iter()
            .map(|&r| (r + self.modulus - shift) % self.modulus)
            .collect()
    }

    pub fn has_distinct_coordinates(&self) -> bool {
        let mut seen: Vec<u64> = self.representative.clone();
        seen.sort_unstable();
        seen.windows(2).all(|pair| pair[0] != pair[1])
    }
}

impl PartialEq for CosetLabel {
    fn eq(&self, other: &Self) -> bool {
        self.modulus == other.modulus && self.canonical() == other.canonical()
    }
}

impl Eq for CosetLabel {}

impl Hash for CosetLabel {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.modulus.hash(state);
        self.canonical().hash(state);
    }
}

/// Labels a non-nesting word by the 1-based first positions of its letters,
/// taken in `(Z/(n+1))^d` modulo the diagonal.
pub fn coset_map(word: &LambdaWord) -> Result<CosetLabel> {
    if !is_non_nesting(word) {
        return Err(Error::NestingWord);
    }
    let modulus = u64::from(word.composition().n()) + 1;
    let representative = word
        .first_positions()
        .iter()
        .map(|&pos| pos as u64 + 1)
        .collect();
    Ok(CosetLabel::new(representative, modulus))
}

/// Checks that the labels of the non-nesting words are pairwise distinct and
/// hit exactly the cosets with pairwise-distinct coordinates, of which there
/// are `n(n−1)⋯(n−d+2)`.
pub fn verify_coset_bijection(composition: &Composition, cap: usize) -> Result<bool> {
    let n = composition.n() as u64;
    let d = composition.d();
    let mut labels: HashSet<Vec<u64>> = HashSet::new();
    let mut words = 0usize;
    for w in enumerate_words(composition, cap)? {
        if is_non_nesting(&w) {
            words += 1;
            labels.insert(coset_map(&w)?.canonical());
        }
    }
    if labels.len() != words {
        return Ok(false);
    }

    let mut expected: HashSet<Vec<u64>> = HashSet::new();
    for tail in (1..=n).permutations(d - 1) {
        let mut canonical = vec![0u64];
        canonical.extend(tail);
        expected.insert(canonical);
    }
    Ok(labels == expected)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{coherent_count_formula, compositions_of};

    fn comp(parts: &[u32]) -> Composition {
        Composition::new(parts.to_vec()).unwrap()
    }

    fn word(s: &str) -> LambdaWord {
        LambdaWord::parse(s).unwrap()
    }

    #[test]
    fn arrangement_examples() {
        let arr = build_arrangement(&comp(&[2, 1]));
        assert_eq!(
            arr.hyperplanes(),
            [
                Hyperplane { i: 1, j: 2, s: -1 },
                Hyperplane { i: 1, j: 2, s: 0 }
            ]
        );

        let arr = build_arrangement(&comp(&[1, 1]));
        assert_eq!(arr.hyperplanes(), [Hyperplane { i: 1, j: 2, s: 0 }]);

        let arr = build_arrangement(&comp(&[2, 2, 2]));
        assert_eq!(arr.hyperplanes().len(), 9);
        for h in arr.hyperplanes() {
            assert!((-1..=1).contains(&h.s));
        }

        // λ_i + λ_j − 1 offsets per pair
        let arr = build_arrangement(&comp(&[3, 2, 1]));
        assert_eq!(arr.hyperplanes().len(), 4 + 3 + 2);
    }

    #[test]
    fn closed_char_poly() {
        let chi = char_poly_closed(&comp(&[2, 2, 2]));
        // q(q−4)(q−5) = q^3 − 9q^2 + 20q
        let expected: Vec<BigInt> = [0, 20, -9, 1].map(BigInt::from).into();
        assert_eq!(chi.coefficients(), expected);

        let chi = char_poly_closed(&comp(&[2, 1]));
        let expected: Vec<BigInt> = [0, -2, 1].map(BigInt::from).into();
        assert_eq!(chi.coefficients(), expected);

        let chi = char_poly_closed(&comp(&[1]));
        let expected: Vec<BigInt> = [0, 1].map(BigInt::from).into();
        assert_eq!(chi.coefficients(), expected);
    }

    #[test]
    fn finite_field_examples() {
        assert_eq!(
            char_poly_finite_field(&comp(&[2, 1]), 5, 1 << 20).unwrap(),
            BigUint::from(15u32)
        );
        assert_eq!(
            char_poly_finite_field(&comp(&[1, 1]), 3, 1 << 20).unwrap(),
            BigUint::from(6u32)
        );
        assert_eq!(
            char_poly_finite_field(&comp(&[2, 2]), 7, 1 << 20).unwrap(),
            BigUint::from(28u32)
        );
        assert_eq!(
            char_poly_finite_field(&comp(&[2, 1]), 6, 1 << 20),
            Err(Error::NotPrime(6))
        );
        assert!(matches!(
            char_poly_finite_field(&comp(&[1, 1, 1]), 101, 1000),
            Err(Error::TooLarge(_))
        ));
    }

    #[test]
    fn finite_field_matches_closed_form() {
        for n in 1..=4 {
            for composition in compositions_of(n) {
                if composition.d() > 3 {
                    continue;
                }
                for q in [5u64, 7, 11] {
                    if q <= u64::from(composition.n()) {
                        continue;
                    }
                    let counted = char_poly_finite_field(&composition, q, 1 << 20).unwrap();
                    let closed = char_poly_closed(&composition)
                        .eval(&BigInt::from(q))
                        .to_biguint()
                        .unwrap();
                    assert_eq!(counted, closed, "composition {composition}, q = {q}");
                }
            }
        }
    }

    #[test]
    fn region_counts() {
        assert_eq!(region_count(&comp(&[2, 2, 2])), BigUint::from(30u32));
        assert_eq!(region_count(&comp(&[3, 2, 1])), BigUint::from(30u32));
        assert_eq!(region_count(&comp(&[1, 1, 1])), BigUint::from(6u32));
        for n in 1..=6 {
            for composition in compositions_of(n) {
                assert_eq!(
                    region_count(&composition),
                    coherent_count_formula(&composition)
                );
            }
        }
    }

    #[test]
    fn stirling_values() {
        assert_eq!(stirling2(3, 2), BigUint::from(3u32));
        assert_eq!(stirling2(4, 2), BigUint::from(7u32));
        for d in 0..8 {
            assert_eq!(stirling2(d, d), BigUint::one());
        }
        assert_eq!(stirling2(5, 3), BigUint::from(25u32));
        assert_eq!(stirling2(2, 5), BigUint::zero());
    }

    #[test]
    fn face_count_values() {
        assert_eq!(catalan_face_count(3, 3), BigUint::from(30u32));
        assert_eq!(catalan_face_count(3, 2), BigUint::from(42u32));
        assert_eq!(catalan_face_count(3, 1), BigUint::from(13u32));
        assert_eq!(catalan_face_count(2, 2), BigUint::from(4u32));
        assert_eq!(catalan_face_count(2, 1), BigUint::from(3u32));

        // alternating sums of a ball complex: 4 − 3 = 1, 30 − 42 + 13 = 1
        assert_eq!(
            BigInt::from(4) - BigInt::from(3),
            BigInt::one()
        );
        let d3: Vec<BigInt> = (1..=3)
            .map(|k| BigInt::from(catalan_face_count(3, k)))
            .collect();
        assert_eq!(&d3[2] - &d3[1] + &d3[0], BigInt::one());
    }

    #[test]
    fn face_count_top_equals_regions() {
        for d in 1..=5 {
            assert_eq!(
                catalan_face_count(d, d),
                region_count(&Composition::all_twos(d as usize))
            );
        }
    }

    #[test]
    fn coset_examples() {
        let label = coset_map(&word("112")).unwrap();
        assert_eq!(label.representative(), [1, 3]);
        assert_eq!(label.modulus(), 4);
        assert_eq!(label.canonical(), [0, 2]);

        let a = coset_map(&word("121")).unwrap();
        let b = coset_map(&word("211")).unwrap();
        assert_eq!(a.representative(), [1, 2]);
        assert_eq!(b.representative(), [2, 1]);
        assert_ne!(a, b);
        assert_ne!(a, label);
        assert_ne!(b, label);

        // shifting by the diagonal does not change the label
        let shifted = CosetLabel::new(vec![2, 0], 4);
        assert_eq!(shifted, coset_map(&word("112")).unwrap());

        assert_eq!(coset_map(&word("1221")), Err(Error::NestingWord));
    }

    #[test]
    fn coset_bijection_examples() {
        assert!(verify_coset_bijection(&comp(&[2, 1]), 12).unwrap());
        assert!(verify_coset_bijection(&comp(&[2, 2, 2]), 12).unwrap());
        assert!(verify_coset_bijection(&comp(&[1, 1]), 12).unwrap());
        for n in 1..=6 {
            for composition in compositions_of(n) {
                assert!(
                    verify_coset_bijection(&composition, 12).unwrap(),
                    "composition {composition}"
                );
            }
        }
    }

    #[test]
    fn primality() {
        let primes: Vec<u64> = (0..30).filter(|&q| is_prime(q)).collect();
        assert_eq!(primes, [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }
}

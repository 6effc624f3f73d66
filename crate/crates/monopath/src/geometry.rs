//! Exact rational geometry of the lifted box: path averages, the swap
//! identity, zonotope generators, and vertex certificates.
//!
//! Points of the box lift by appending `f(x) = x_1^2 + ⋯ + x_d^2`.  The
//! average of a lifted path over the projected segment is an exact rational
//! point; averages of coherent paths are vertices of their convex hull, and
//! swapping two adjacent letters moves the average by `1/n` times a fixed
//! generator vector.  No floating point anywhere in this module.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::coherence::{functional_value, is_coherent_path, GenericFunctional};
use crate::combinatorics::{enumerate_words, is_non_nesting, word_to_path, Composition, LambdaWord};
use crate::{Error, Result};

/// A point with exact rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalVector {
    coordinates: Vec<BigRational>,
}

impl RationalVector {
    pub fn new(coordinates: Vec<BigRational>) -> Self {
        Self { coordinates }
    }

    pub fn from_integers(values: &[i64]) -> Self {
        Self::new(
            values
                .iter()
                .map(|&v| BigRational::from_integer(BigInt::from(v)))
                .collect(),
        )
    }

    pub fn zeros(dim: usize) -> Self {
        Self::new(vec![BigRational::zero(); dim])
    }

    pub fn dim(&self) -> usize {
        self.coordinates.len()
    }

    pub fn coordinates(&self) -> &[BigRational] {
        &self.coordinates
    }

    pub fn coordinate(&self, index: usize) -> &BigRational {
        &self.coordinates[index]
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim());
        Self::new(
            self.coordinates
                .iter()
                .zip(&other.coordinates)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim());
        Self::new(
            self.coordinates
                .iter()
                .zip(&other.coordinates)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    pub fn scale(&self, factor: &BigRational) -> Self {
        Self::new(self.coordinates.iter().map(|a| a * factor).collect())
    }

    /// Canonical `"p/q"` strings (plain `"p"` for integers).
    pub fn to_strings(&self) -> Vec<String> {
        self.coordinates.iter().map(format_rational).collect()
    }
}

impl std::fmt::Display for RationalVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({})", self.to_strings().join(", "))
    }
}

/// `"p/q"` in lowest terms, or `"p"` when the value is an integer.
pub fn format_rational(value: &BigRational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    s.trim()
        .parse::<BigRational>()
        .map_err(|_| Error::Parse(format!("bad rational {s:?}")))
}

/// Appends `f(x) = Σ x_i^2` to a lattice point of the box.
pub fn lift(point: &[i64], composition: &Composition) -> Result<RationalVector> {
    if point.len() != composition.d() {
        return Err(Error::OutOfBox);
    }
    for (&coord, &part) in point.iter().zip(composition.parts()) {
        if coord < 0 || coord > part as i64 {
            return Err(Error::OutOfBox);
        }
    }
    let mut lifted: Vec<i64> = point.to_vec();
    lifted.push(point.iter().map(|&c| c * c).sum());
    Ok(RationalVector::from_integers(&lifted))
}

/// All lattice points of the box, `∏ (λ_i + 1)` of them, in row-major order.
pub fn pile_vertices(composition: &Composition, cap: u128) -> Result<Vec<Vec<i64>>> {
    let count: u128 = composition
        .parts()
        .iter()
        .map(|&p| p as u128 + 1)
        .product();
    if count > cap {
        return Err(Error::CapExceeded {
            task: "box lattice points",
            needed: count,
            cap,
        });
    }
    let d = composition.d();
    let mut points = Vec::with_capacity(count as usize);
    let mut current = vec![0i64; d];
    loop {
        points.push(current.clone());
        let mut axis = d;
        while axis > 0 {
            axis -= 1;
            if current[axis] < composition.parts()[axis] as i64 {
                current[axis] += 1;
                for later in current.iter_mut().skip(axis + 1) {
                    *later = 0;
                }
                break;
            }
            if axis == 0 {
                return Ok(points);
            }
        }
    }
}

/// The lifted path `ṽ_0, …, ṽ_n` of a word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftedPath {
    points: Vec<RationalVector>,
}

impl LiftedPath {
    pub fn points(&self) -> &[RationalVector] {
        &self.points
    }

    pub fn segments(&self) -> usize {
        self.points.len() - 1
    }
}

pub fn lifted_path(word: &LambdaWord) -> LiftedPath {
    let composition = word.composition();
    let points = word_to_path(word)
        .points()
        .iter()
        .map(|point| lift(point, composition).expect("path stays in the box"))
        .collect();
    LiftedPath { points }
}

/// Average of the path over the projected segment:
/// `(1/n) Σ_k (ṽ_{k−1} + ṽ_k)/2 = (1/n) [(ṽ_0 + ṽ_n)/2 + Σ_{0<k<n} ṽ_k]`.
pub fn path_integral(path: &LiftedPath) -> RationalVector {
    let n = path.segments();
    let points = path.points();
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let mut total = points[0].add(&points[n]).scale(&half);
    for interior in &points[1..n] {
        total = total.add(interior);
    }
    total.scale(&BigRational::new(BigInt::one(), BigInt::from(n)))
}

/// Average of the word's lifted path.
pub fn word_integral(word: &LambdaWord) -> RationalVector {
    path_integral(&lifted_path(word))
}

/// Swaps the ascending pair at 1-based position `k` (letters `w_k = i` and
/// `w_{k+1} = j` with `i < j`) and returns the change of the path average,
/// asserting it equals `(1/n)(e_j − e_i + (2 m_j − 2 m_i) e_{d+1})` where
/// `m = v_{k−1}`.
pub fn swap_difference(word: &LambdaWord, k: usize) -> Result<RationalVector> {
    let letters = word.letters();
    if k == 0 || k >= letters.len() {
        return Err(Error::NotSwappable { k, next: k + 1 });
    }
    let (i, j) = (letters[k - 1], letters[k]);
    if i >= j {
        return Err(Error::NotSwappable { k, next: k + 1 });
    }

    let mut swapped = letters.to_vec();
    swapped.swap(k - 1, k);
    let swapped = LambdaWord::new(swapped, word.composition().clone())
        .expect("swap preserves multiplicities");
    let difference = word_integral(&swapped).sub(&word_integral(word));

    let before = &word_to_path(word).points()[k - 1];
    let expected = swap_step(
        word.composition(),
        i,
        j,
        before[i as usize - 1],
        before[j as usize - 1],
    );
    assert_eq!(difference, expected, "swap identity must hold exactly");
    Ok(difference)
}

/// `(1/n)(e_j − e_i + (2 m_j − 2 m_i) e_{d+1})`.
pub fn swap_step(composition: &Composition, i: u8, j: u8, m_i: i64, m_j: i64) -> RationalVector {
    let d = composition.d();
    let mut step = vec![0i64; d + 1];
    step[i as usize - 1] = -1;
    step[j as usize - 1] = 1;
    step[d] = 2 * m_j - 2 * m_i;
    RationalVector::from_integers(&step).scale(&BigRational::new(
        BigInt::one(),
        BigInt::from(composition.n()),
    ))
}

/// One segment generator of the zonotope, `e_j − e_i + (2l − 2k) e_{d+1}`,
/// for a pair of letters `i < j` and shifts `0 ≤ k < λ_i`, `0 ≤ l < λ_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairGenerator {
    pub i: u8,
    pub j: u8,
    pub k: u32,
    pub l: u32,
    pub vector: RationalVector,
}

/// Generator data of the zonotope whose rescaled translate the path averages
/// span: all pair generators plus one long vertical segment.
#[derive(Clone, Debug)]
pub struct ZonotopeSpec {
    pub pair_generators: Vec<PairGenerator>,
    /// Length of the vertical summand `[0, s e_{d+1}]`.
    pub s: BigRational,
    /// The averages live in `scale · Z + translate` with `scale = 1/n`.
    pub scale: BigRational,
    dim: usize,
}

impl ZonotopeSpec {
    /// Vertical segment first, then the pair generators.
    pub fn generators(&self) -> Vec<RationalVector> {
        let mut vertical = vec![BigRational::zero(); self.dim];
        vertical[self.dim - 1] = self.s.clone();
        let mut all = vec![RationalVector::new(vertical)];
        all.extend(self.pair_generators.iter().map(|g| g.vector.clone()));
        all
    }

    pub fn generator_count(&self) -> usize {
        1 + self.pair_generators.len()
    }
}

/// Deterministic stand-in for "sufficiently large": `2n · Σ λ_i^2` exceeds
/// the total vertical travel of all pair generators.
pub fn default_vertical_length(composition: &Composition) -> BigRational {
    let squares: i64 = composition
        .parts()
        .iter()
        .map(|&p| i64::from(p) * i64::from(p))
        .sum();
    BigRational::from_integer(BigInt::from(2 * i64::from(composition.n()) * squares))
}

pub fn zonotope_generators(
    composition: &Composition,
    vertical: Option<BigRational>,
) -> ZonotopeSpec {
    let s = vertical.unwrap_or_else(|| default_vertical_length(composition));
    assert!(s.is_positive(), "vertical summand must be positive");
    let d = composition.d();
    let mut pair_generators = Vec::new();
    for i in 0..d {
        for j in i + 1..d {
            for k in 0..composition.parts()[i] {
                for l in 0..composition.parts()[j] {
                    let mut vector = vec![0i64; d + 1];
                    vector[i] = -1;
                    vector[j] = 1;
                    vector[d] = 2 * i64::from(l) - 2 * i64::from(k);
                    pair_generators.push(PairGenerator {
                        i: i as u8 + 1,
                        j: j as u8 + 1,
                        k,
                        l,
                        vector: RationalVector::from_integers(&vector),
                    });
                }
            }
        }
    }
    ZonotopeSpec {
        pair_generators,
        s,
        scale: BigRational::new(BigInt::one(), BigInt::from(composition.n())),
        dim: d + 1,
    }
}

/// Monotone edge paths across the top facet, one per permutation of the
/// axes: the path through the partial sums of `λ_{σ_t} e_{σ_t} + λ_{σ_t}^2
/// e_{d+1}`.  Every returned average satisfies `Σ λ_i x_i = x_{d+1}`.
pub fn upper_facet_paths(
    composition: &Composition,
    cap: usize,
) -> Result<Vec<(Vec<u8>, RationalVector)>> {
    let d = composition.d();
    if d > cap {
        return Err(Error::CapExceeded {
            task: "upper facet paths",
            needed: d as u128,
            cap: cap as u128,
        });
    }
    let n = BigRational::from_integer(BigInt::from(composition.n()));
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let mut results = Vec::new();
    for sigma in permutations(d) {
        let mut vertex = RationalVector::zeros(d + 1);
        let mut weighted = RationalVector::zeros(d + 1);
        for &axis in &sigma {
            let part = composition.parts()[axis] as i64;
            let mut step = vec![0i64; d + 1];
            step[axis] = part;
            step[d] = part * part;
            let next = vertex.add(&RationalVector::from_integers(&step));
            // the segment spans `part` units of the projection
            let length = BigRational::from_integer(BigInt::from(part));
            weighted = weighted.add(&vertex.add(&next).scale(&half).scale(&length));
            vertex = next;
        }
        let average = weighted.scale(&(BigRational::one() / &n));
        let sigma_letters: Vec<u8> = sigma.iter().map(|&a| a as u8 + 1).collect();
        results.push((sigma_letters, average));
    }
    Ok(results)
}

/// Whether a point of lifted coordinates lies on the top-facet hyperplane
/// `λ_1 x_1 + ⋯ + λ_d x_d = x_{d+1}`.
pub fn on_upper_hyperplane(composition: &Composition, point: &RationalVector) -> bool {
    let d = composition.d();
    assert_eq!(point.dim(), d + 1);
    let mut total = BigRational::zero();
    for (index, &part) in composition.parts().iter().enumerate() {
        total += BigRational::from_integer(BigInt::from(part)) * point.coordinate(index);
    }
    total == *point.coordinate(d)
}

fn permutations(d: usize) -> Vec<Vec<usize>> {
    use itertools::Itertools;
    (0..d).permutations(d).collect()
}

/// Certifies that the average of a non-nesting word is a vertex: its own
/// selecting functional must value it strictly below the average of every
/// other word of the composition.
pub fn vertex_certificate(word: &LambdaWord, cap: usize) -> Result<bool> {
    if !is_non_nesting(word) {
        return Err(Error::NestingWord);
    }
    let composition = word.composition();
    if composition.n() as usize > cap {
        return Err(Error::CapExceeded {
            task: "vertex certificate",
            needed: composition.n() as u128,
            cap: cap as u128,
        });
    }
    let verdict = is_coherent_path(word);
    let functional = verdict.witness.expect("non-nesting words are coherent");
    let own = functional_value(&functional, word_integral(word).coordinates());
    for other in enumerate_words(composition, cap)? {
        if other == *word {
            continue;
        }
        let value = functional_value(&functional, word_integral(&other).coordinates());
        if own >= value {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Convenience for tests and the CLI: the witness functional of a coherent
/// word, if any.
pub fn witness_functional(word: &LambdaWord) -> Option<GenericFunctional> {
    is_coherent_path(word).witness
}

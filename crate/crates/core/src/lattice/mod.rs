//! Integer calculus in Pic(X) ≅ Z⁷ of a smooth cubic surface X.
//!
//! A class is written D = a·e₀ − Σ bᵢeᵢ and stored as (a; b₁, …, b₆), with
//! D·D′ = aa′ − Σ bᵢb′ᵢ. The hyperplane class is H = (3; 1, 1, 1, 1, 1, 1)
//! and K = −H. With this sign convention every twisted-cubic class has all
//! bᵢ ≥ 0.
//!
//! Lines and twisted cubics are identified with the numerical classes
//! {L² = −1, L·H = 1} and {T² = 1, T·H = 3}; the counts 27 and 72 agree with
//! the classical ones. The search boxes come from Cauchy–Schwarz,
//! (Σbᵢ)² ≤ 6Σbᵢ²:
//!
//! * lines: Σb = 3a − 1 and Σb² = a² + 1 give 3a² − 6a − 5 ≤ 0, so
//!   a ∈ [0, 2], and bᵢ² ≤ a² + 1 gives |bᵢ| ≤ 2;
//! * cubics: Σb = 3a − 3 and Σb² = a² − 1 give a² − 6a + 5 ≤ 0, so
//!   a ∈ [1, 5], and |bᵢ| ≤ 4;
//! * roots (α² = −2, α·H = 0): 9a² ≤ 6(a² + 2), so |a| ≤ 2 and |bᵢ| ≤ 2.
//!
//! A sum of r cubic classes lies in a ∈ [r, 5r], bᵢ ∈ [0, 2r], since every
//! cubic class has a ∈ [1, 5] and bᵢ ∈ [0, 2].

mod ulrich;

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::LatticeError;

pub use ulrich::{
    chern_c2, count_families, decompose_sum_of_cubics, hilbert_value, is_ulrich_class, moduli_dimension, stable_exists,
    CubicViolation, FamilyList, LineViolation, StableVerdict, UlrichCheck, MAX_DECOMPOSE_RANK, MAX_FAMILY_RANK,
    STABLE_CAVEAT,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DivisorClass {
    pub a: i64,
    pub b: [i64; 6],
}

impl DivisorClass {
    pub const fn new(a: i64, b: [i64; 6]) -> Self {
        DivisorClass { a, b }
    }

    /// H = 3e₀ − Σeᵢ.
    pub const fn hyperplane() -> Self {
        DivisorClass::new(3, [1; 6])
    }

    /// K = −H.
    pub const fn canonical() -> Self {
        DivisorClass::new(-3, [-1; 6])
    }

    /// The exceptional line eᵢ, 0-based index.
    pub fn exceptional(i: usize) -> Self {
        let mut b = [0; 6];
        b[i] = -1;
        DivisorClass::new(0, b)
    }

    pub fn intersect(&self, other: &DivisorClass) -> i64 {
        self.a * other.a - self.b.iter().zip(&other.b).map(|(x, y)| x * y).sum::<i64>()
    }

    pub fn square(&self) -> i64 {
        self.intersect(self)
    }

    pub fn degree(&self) -> i64 {
        self.intersect(&DivisorClass::hyperplane())
    }

    /// (D² − deg D)/2 + 1, from adjunction with K = −H.
    pub fn arithmetic_genus(&self) -> i64 {
        (self.square() - self.degree()) / 2 + 1
    }

    pub fn scale(&self, k: i64) -> DivisorClass {
        DivisorClass::new(k * self.a, self.b.map(|x| k * x))
    }

    pub fn permute(&self, perm: &[usize; 6]) -> DivisorClass {
        DivisorClass::new(self.a, std::array::from_fn(|i| self.b[perm[i]]))
    }
}

impl std::ops::Add for DivisorClass {
    type Output = DivisorClass;
    fn add(self, o: DivisorClass) -> DivisorClass {
        DivisorClass::new(self.a + o.a, std::array::from_fn(|i| self.b[i] + o.b[i]))
    }
}

impl std::ops::Sub for DivisorClass {
    type Output = DivisorClass;
    fn sub(self, o: DivisorClass) -> DivisorClass {
        DivisorClass::new(self.a - o.a, std::array::from_fn(|i| self.b[i] - o.b[i]))
    }
}

impl std::ops::Neg for DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> DivisorClass {
        self.scale(-1)
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b: Vec<String> = self.b.iter().map(i64::to_string).collect();
        write!(f, "{};{}", self.a, b.join(","))
    }
}

impl FromStr for DivisorClass {
    type Err = LatticeError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || LatticeError::Parse(format!("expected 'a;b1,b2,b3,b4,b5,b6', got '{s}'"));
        let (a, rest) = s.trim().split_once(';').ok_or_else(bad)?;
        let a = a.trim().parse().map_err(|_| bad())?;
        let b: Vec<i64> = rest.split(',').map(|x| x.trim().parse()).collect::<Result<_, _>>().map_err(|_| bad())?;
        let b: [i64; 6] = b.try_into().map_err(|_| bad())?;
        Ok(DivisorClass::new(a, b))
    }
}

impl Serialize for DivisorClass {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for DivisorClass {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Every class with a ∈ a_range and each bᵢ ∈ b_range, in lexicographic order.
pub fn box_classes(
    a_range: std::ops::RangeInclusive<i64>,
    b_range: std::ops::RangeInclusive<i64>,
) -> impl Iterator<Item = DivisorClass> {
    let (lo, hi) = (*b_range.start(), *b_range.end());
    let width = (hi - lo + 1).max(0) as u64;
    let count = width.pow(6);
    a_range.flat_map(move |a| {
        (0..count).map(move |mut idx| {
            let mut b = [0i64; 6];
            for slot in b.iter_mut().rev() {
                *slot = lo + (idx % width) as i64;
                idx /= width;
            }
            DivisorClass::new(a, b)
        })
    })
}

fn enumerate(a: std::ops::RangeInclusive<i64>, bound: i64, square: i64, degree: i64) -> Vec<DivisorClass> {
    box_classes(a, -bound..=bound).filter(|d| d.square() == square && d.degree() == degree).collect()
}

/// The 27 line classes, sorted.
pub fn lines() -> &'static [DivisorClass] {
    static LINES: OnceLock<Vec<DivisorClass>> = OnceLock::new();
    LINES.get_or_init(|| enumerate(0..=2, 2, -1, 1))
}

/// The 72 twisted-cubic classes, sorted.
pub fn twisted_cubics() -> &'static [DivisorClass] {
    static CUBICS: OnceLock<Vec<DivisorClass>> = OnceLock::new();
    CUBICS.get_or_init(|| enumerate(0..=5, 4, 1, 3))
}

/// The 72 roots {α : α² = −2, α·H = 0}, sorted.
pub fn roots() -> &'static [DivisorClass] {
    static ROOTS: OnceLock<Vec<DivisorClass>> = OnceLock::new();
    ROOTS.get_or_init(|| enumerate(-2..=2, 2, -2, 0))
}

pub fn is_twisted_cubic(d: &DivisorClass) -> bool {
    twisted_cubics().binary_search(d).is_ok()
}

pub fn is_line(d: &DivisorClass) -> bool {
    lines().binary_search(d).is_ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        let h = DivisorClass::hyperplane();
        assert_eq!(h.to_string(), "3;1,1,1,1,1,1");
        assert_eq!("3;1,1,1,1,1,1".parse::<DivisorClass>().unwrap(), h);
        assert_eq!(" -1; 0,0,0,0,0,-2".parse::<DivisorClass>().unwrap(), DivisorClass::new(-1, [0, 0, 0, 0, 0, -2]));
        assert!("3;1,1".parse::<DivisorClass>().is_err());
        assert!("3,1,1,1,1,1,1".parse::<DivisorClass>().is_err());
        assert_eq!(serde_json::to_string(&h).unwrap(), "\"3;1,1,1,1,1,1\"");
    }

    #[test]
    fn pairing_examples() {
        let h = DivisorClass::hyperplane();
        assert_eq!(h.intersect(&h), 3);
        assert_eq!(DivisorClass::exceptional(0).intersect(&h), 1);
        assert_eq!(h.scale(2).degree(), 6);
        assert_eq!(DivisorClass::canonical().square(), 3);
        assert_eq!(h.arithmetic_genus(), 1);
    }

    #[test]
    fn catalog_counts_and_members() {
        assert_eq!(lines().len(), 27);
        assert_eq!(twisted_cubics().len(), 72);
        assert_eq!(roots().len(), 72);
        assert!(is_twisted_cubic(&DivisorClass::new(1, [0; 6])));
        assert!(is_twisted_cubic(&DivisorClass::new(5, [2; 6])));
        assert!(!is_twisted_cubic(&DivisorClass::hyperplane()));
        assert!(twisted_cubics().iter().all(|t| t.b.iter().all(|&x| (0..=2).contains(&x))));
    }

    #[test]
    fn box_enumeration_is_sorted() {
        let all: Vec<_> = box_classes(0..=1, -1..=1).collect();
        assert_eq!(all.len(), 2 * 729);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }
}

use num_rational::Rational64;
use serde::Serialize;

use super::{box_classes, is_twisted_cubic, lines, twisted_cubics, DivisorClass};
use crate::error::LatticeError;

/// Largest r accepted by [`decompose_sum_of_cubics`].
pub const MAX_DECOMPOSE_RANK: i64 = 4;
/// Largest r accepted by [`count_families`].
pub const MAX_FAMILY_RANK: i64 = 3;

pub const STABLE_CAVEAT: &str = "The stable existence criterion is known to fail for one \
unidentified class. A true verdict reports only that the degree and intersection inequalities \
hold; it is not a proof that a stable bundle with this first Chern class exists.";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LineViolation {
    pub line: DivisorClass,
    pub pairing: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CubicViolation {
    pub cubic: DivisorClass,
    pub pairing: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UlrichCheck {
    pub class: DivisorClass,
    pub r: i64,
    pub degree: i64,
    pub degree_ok: bool,
    /// Lines with D·L outside [0, 2r].
    pub violations: Vec<LineViolation>,
    pub ulrich: bool,
}

fn check_rank(r: i64, max: i64) -> Result<(), LatticeError> {
    if (1..=max).contains(&r) {
        Ok(())
    } else {
        Err(LatticeError::RankOutOfRange { r, min: 1, max })
    }
}

fn line_violations(d: &DivisorClass, r: i64) -> Vec<LineViolation> {
    lines()
        .iter()
        .map(|l| LineViolation { line: *l, pairing: d.intersect(l) })
        .filter(|v| !(0..=2 * r).contains(&v.pairing))
        .collect()
}

/// deg D = 3r and 0 ≤ D·L ≤ 2r for all 27 lines.
pub fn is_ulrich_class(d: &DivisorClass, r: i64) -> Result<UlrichCheck, LatticeError> {
    check_rank(r, i64::MAX)?;
    let degree = d.degree();
    let violations = line_violations(d, r);
    let degree_ok = degree == 3 * r;
    Ok(UlrichCheck { class: *d, r, degree, degree_ok, ulrich: degree_ok && violations.is_empty(), violations })
}

fn in_hull(d: &DivisorClass, k: i64) -> bool {
    (k..=5 * k).contains(&d.a) && d.b.iter().all(|b| (0..=2 * k).contains(b))
}

/// All multisets {T₁, …, T_r} of twisted-cubic classes with ΣTᵢ = D, each
/// sorted, listed in lexicographic order.
pub fn decompose_sum_of_cubics(d: &DivisorClass, r: i64) -> Result<Vec<Vec<DivisorClass>>, LatticeError> {
    check_rank(r, MAX_DECOMPOSE_RANK)?;
    let mut out = Vec::new();
    if d.degree() == 3 * r && in_hull(d, r) {
        search(*d, r, 0, &mut Vec::new(), &mut out);
    }
    Ok(out)
}

fn search(rest: DivisorClass, k: i64, start: usize, current: &mut Vec<DivisorClass>, out: &mut Vec<Vec<DivisorClass>>) {
    let cubics = twisted_cubics();
    if k == 1 {
        if let Ok(i) = cubics.binary_search(&rest) {
            if i >= start {
                current.push(rest);
                out.push(current.clone());
                current.pop();
            }
        }
        return;
    }
    for (i, t) in cubics.iter().enumerate().skip(start) {
        let next = rest - *t;
        if in_hull(&next, k - 1) {
            current.push(*t);
            search(next, k - 1, i, current, out);
            current.pop();
        }
    }
}

fn decomposable(d: &DivisorClass, r: i64) -> bool {
    let mut out = Vec::new();
    if r == 1 {
        return is_twisted_cubic(d);
    }
    search(*d, r, 0, &mut Vec::new(), &mut out);
    !out.is_empty()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StableVerdict {
    pub class: DivisorClass,
    pub r: i64,
    pub degree_ok: bool,
    pub line_ok: bool,
    pub cubic_ok: bool,
    pub conditions_met: bool,
    pub line_violations: Vec<LineViolation>,
    /// Cubics with D·T < 2r.
    pub cubic_violations: Vec<CubicViolation>,
    pub exception_caveat: &'static str,
}

/// Evaluates the inequalities of the stable existence criterion
/// (r ≥ 2): 0 ≤ D·L ≤ 2r for every line and D·T ≥ 2r for every cubic.
pub fn stable_exists(d: &DivisorClass, r: i64) -> Result<StableVerdict, LatticeError> {
    if r < 2 {
        return Err(LatticeError::RankOutOfRange { r, min: 2, max: i64::MAX });
    }
    let line_violations = line_violations(d, r);
    let cubic_violations: Vec<CubicViolation> = twisted_cubics()
        .iter()
        .map(|t| CubicViolation { cubic: *t, pairing: d.intersect(t) })
        .filter(|v| v.pairing < 2 * r)
        .collect();
    let degree_ok = d.degree() == 3 * r;
    let (line_ok, cubic_ok) = (line_violations.is_empty(), cubic_violations.is_empty());
    Ok(StableVerdict {
        class: *d,
        r,
        degree_ok,
        line_ok,
        cubic_ok,
        conditions_met: degree_ok && line_ok && cubic_ok,
        line_violations,
        cubic_violations,
        exception_caveat: STABLE_CAVEAT,
    })
}

/// D² − 2r² + 1.
pub fn moduli_dimension(d: &DivisorClass, r: i64) -> i64 {
    d.square() - 2 * r * r + 1
}

/// (D² − r)/2.
pub fn chern_c2(d: &DivisorClass, r: i64) -> Rational64 {
    Rational64::new(d.square() - r, 2)
}

/// 3r·(t + 2)(t + 1)/2, the Hilbert polynomial of a rank r Ulrich bundle
/// on a cubic surface.
pub fn hilbert_value(r: i64, t: i64) -> i64 {
    3 * r * ((t + 2) * (t + 1) / 2)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyList {
    pub r: i64,
    /// Classes D with deg D = 3r, 0 ≤ D·L ≤ 2r for every line, and D a sum
    /// of r cubic classes.
    pub ulrich: Vec<DivisorClass>,
    /// Classes meeting the numerical conditions that are not sums of r cubic
    /// classes. Empty for r ≥ 2; for r = 1 it holds H.
    pub excluded: Vec<DivisorClass>,
    /// The subset of `ulrich` also meeting the stable existence inequalities
    /// (r ≥ 2 only).
    pub stable: Option<Vec<DivisorClass>>,
}

/// First Chern classes of rank r Ulrich bundles, by enumeration of the box
/// a ∈ [r, 5r], bᵢ ∈ [0, 2r].
pub fn count_families(r: i64) -> Result<FamilyList, LatticeError> {
    check_rank(r, MAX_FAMILY_RANK)?;
    let (mut ulrich, mut excluded) = (Vec::new(), Vec::new());
    for d in box_classes(r..=5 * r, 0..=2 * r) {
        if d.degree() != 3 * r || !line_violations(&d, r).is_empty() {
            continue;
        }
        if decomposable(&d, r) {
            ulrich.push(d);
        } else {
            excluded.push(d);
        }
    }
    let stable = (r >= 2).then(|| {
        ulrich.iter().filter(|d| stable_exists(d, r).map(|v| v.conditions_met).unwrap_or(false)).copied().collect()
    });
    Ok(FamilyList { r, ulrich, excluded, stable })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h() -> DivisorClass {
        DivisorClass::hyperplane()
    }

    #[test]
    fn multiples_of_h_are_ulrich() {
        for r in 1..=3 {
            assert!(is_ulrich_class(&h().scale(r), r).unwrap().ulrich);
        }
    }

    #[test]
    fn tripled_line_fails() {
        let d = DivisorClass::exceptional(0).scale(3);
        let check = is_ulrich_class(&d, 1).unwrap();
        assert!(check.degree_ok);
        assert!(!check.ulrich);
        assert!(check.violations.contains(&LineViolation { line: DivisorClass::exceptional(0), pairing: -3 }));
    }

    #[test]
    fn decompositions() {
        let e0 = DivisorClass::new(1, [0; 6]);
        assert_eq!(decompose_sum_of_cubics(&e0, 1).unwrap(), vec![vec![e0]]);
        let pairs = decompose_sum_of_cubics(&h().scale(2), 2).unwrap();
        assert_eq!(pairs.len(), 36);
        assert!(decompose_sum_of_cubics(&e0.scale(3), 3).unwrap().contains(&vec![e0, e0, e0]));
        assert!(decompose_sum_of_cubics(&h(), 1).unwrap().is_empty());
        assert!(decompose_sum_of_cubics(&h(), 5).is_err());
    }

    #[test]
    fn stable_verdicts() {
        let v = stable_exists(&h().scale(2), 2).unwrap();
        assert!(v.line_ok && v.cubic_ok && v.conditions_met);
        let t0 = DivisorClass::new(1, [0; 6]);
        let v = stable_exists(&t0.scale(2), 2).unwrap();
        assert!(!v.cubic_ok);
        assert!(v.cubic_violations.contains(&CubicViolation { cubic: t0, pairing: 2 }));
        assert!(!stable_exists(&h(), 2).unwrap().conditions_met);
        assert!(stable_exists(&h(), 1).is_err());
    }

    #[test]
    fn formulas() {
        assert_eq!(moduli_dimension(&h().scale(2), 2), 5);
        assert_eq!(chern_c2(&h().scale(2), 2), Rational64::from_integer(5));
        assert_eq!(chern_c2(&h(), 1), Rational64::from_integer(1));
        assert_eq!(moduli_dimension(&h().scale(3), 3), 10);
        assert_eq!(hilbert_value(1, 0), 3);
        assert_eq!(hilbert_value(1, 1), 9);
        assert_eq!(hilbert_value(2, 0), 6);
    }

    #[test]
    fn rank_one_families_are_the_cubics() {
        let fam = count_families(1).unwrap();
        assert_eq!(fam.ulrich, twisted_cubics());
        assert_eq!(fam.excluded, vec![h()]);
        assert!(fam.stable.is_none());
    }
}

//! Exact scalars: elements of the cyclotomic field Q(ζ_N).
//!
//! An element is stored by its rational coordinates in the power basis
//! `1, ζ, …, ζ^{φ(N)-1}`, always reduced modulo the cyclotomic polynomial
//! Φ_N. Reduction makes the representation canonical, so structural
//! equality is field equality. Q itself is the case N = 1.
//!
//! Mixing conductors is an error. Use [`CyclotomicScalar::embed`] to move an
//! element of Q(ζ_N) into Q(ζ_M) when N divides M.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::AlgebraError;

pub type Rational = BigRational;

/// Largest supported conductor.
pub const MAX_CONDUCTOR: u32 = 100;

/// Integer coefficients (ascending) of Φ_n for n in 1..=MAX_CONDUCTOR.
fn cyclotomic_table() -> &'static [Vec<i64>] {
    static TABLE: OnceLock<Vec<Vec<i64>>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut table: Vec<Vec<i64>> = vec![Vec::new()];
        for n in 1..=MAX_CONDUCTOR as usize {
            // x^n - 1
            let mut num = vec![0i64; n + 1];
            num[0] = -1;
            num[n] = 1;
            for k in (1..n).filter(|k| n % k == 0) {
                num = exact_monic_div(&num, &table[k]);
            }
            table.push(num);
        }
        table
    })
}

/// Quotient of `num` by the monic polynomial `den`, assuming exact division.
fn exact_monic_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = num.len() - 1 - dd;
    let mut quot = vec![0i64; qd + 1];
    for k in (0..=qd).rev() {
        let c = rem[k + dd];
        quot[k] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[k + j] -= c * dj;
            }
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    quot
}

/// Coefficients of the n-th cyclotomic polynomial, lowest degree first.
pub fn cyclotomic_polynomial(n: u32) -> Result<&'static [i64], AlgebraError> {
    check_conductor(n)?;
    Ok(&cyclotomic_table()[n as usize])
}

/// Euler's totient, which is the degree of Q(ζ_n) over Q.
pub fn totient(n: u32) -> usize {
    let mut n = n as u64;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result as usize
}

fn check_conductor(n: u32) -> Result<(), AlgebraError> {
    if n == 0 || n > MAX_CONDUCTOR {
        Err(AlgebraError::UnsupportedConductor(n))
    } else {
        Ok(())
    }
}

/// Reduce a dense coefficient vector modulo Φ_n in place and truncate to φ(n).
fn reduce_mod_cyclotomic(coeffs: &mut Vec<Rational>, n: u32) {
    let phi = &cyclotomic_table()[n as usize];
    let deg = phi.len() - 1;
    for k in (deg..coeffs.len()).rev() {
        if coeffs[k].is_zero() {
            continue;
        }
        let c = std::mem::replace(&mut coeffs[k], Rational::zero());
        let shift = k - deg;
        for (j, &pj) in phi[..deg].iter().enumerate() {
            if pj != 0 {
                coeffs[shift + j] -= &c * Rational::from_integer(BigInt::from(pj));
            }
        }
    }
    coeffs.resize(deg, Rational::zero());
}

/// An element of Q(ζ_N).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CyclotomicScalar {
    conductor: u32,
    coeffs: Vec<Rational>,
}

impl CyclotomicScalar {
    /// Builds an element from power-basis coordinates. Vectors longer than
    /// φ(N) are reduced modulo Φ_N; shorter ones are zero-padded.
    pub fn new(conductor: u32, mut coeffs: Vec<Rational>) -> Result<Self, AlgebraError> {
        check_conductor(conductor)?;
        let deg = totient(conductor);
        if coeffs.len() < deg {
            coeffs.resize(deg, Rational::zero());
        } else {
            reduce_mod_cyclotomic(&mut coeffs, conductor);
        }
        Ok(Self { conductor, coeffs })
    }

    pub fn zero(conductor: u32) -> Self {
        Self::from_rational(conductor, Rational::zero())
    }

    pub fn one(conductor: u32) -> Self {
        Self::from_rational(conductor, Rational::one())
    }

    pub fn from_integer(conductor: u32, value: i64) -> Self {
        Self::from_rational(conductor, Rational::from_integer(BigInt::from(value)))
    }

    /// Panics if the conductor is unsupported.
    pub fn from_rational(conductor: u32, value: Rational) -> Self {
        check_conductor(conductor).expect("unsupported conductor");
        let mut coeffs = vec![Rational::zero(); totient(conductor)];
        coeffs[0] = value;
        Self { conductor, coeffs }
    }

    /// ζ_N^k for any integer k.
    pub fn zeta_power(conductor: u32, k: i64) -> Self {
        check_conductor(conductor).expect("unsupported conductor");
        let e = k.rem_euclid(conductor as i64) as usize;
        let mut coeffs = vec![Rational::zero(); e + 1];
        coeffs[e] = Rational::one();
        Self::new(conductor, coeffs).expect("conductor already checked")
    }

    /// A primitive d-th root of unity ζ_N^{N/d}; requires d | N.
    pub fn root_of_unity(conductor: u32, d: u32) -> Result<Self, AlgebraError> {
        check_conductor(conductor)?;
        if d == 0 || !conductor.is_multiple_of(d) {
            return Err(AlgebraError::NotEmbeddable { from: d, to: conductor });
        }
        Ok(Self::zeta_power(conductor, (conductor / d) as i64))
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The rational value if the element lies in Q.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    /// Image of this element in Q(ζ_M); requires N | M.
    pub fn embed(&self, target: u32) -> Result<Self, AlgebraError> {
        check_conductor(target)?;
        if !target.is_multiple_of(self.conductor) {
            return Err(AlgebraError::NotEmbeddable { from: self.conductor, to: target });
        }
        if target == self.conductor {
            return Ok(self.clone());
        }
        let step = (target / self.conductor) as usize;
        let mut coeffs = vec![Rational::zero(); step * (self.coeffs.len() - 1) + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[k * step] = c.clone();
        }
        Self::new(target, coeffs)
    }

    fn check_same(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.conductor != other.conductor {
            Err(AlgebraError::ConductorMismatch { left: self.conductor, right: other.conductor })
        } else {
            Ok(())
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_same(other)?;
        Ok(self + other)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_same(other)?;
        Ok(self - other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_same(other)?;
        Ok(self * other)
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_same(other)?;
        Ok(self * &other.inv()?)
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in Q[x].
    pub fn inv(&self) -> Result<Self, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(Self::from_rational(self.conductor, q.recip()));
        }
        let modulus: Vec<Rational> = cyclotomic_table()[self.conductor as usize]
            .iter()
            .map(|&c| Rational::from_integer(BigInt::from(c)))
            .collect();
        let s = upoly::inverse_mod(&self.coeffs, &modulus);
        Self::new(self.conductor, s)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.conductor);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Self { conductor: self.conductor, coeffs: self.coeffs.iter().map(|c| c * q).collect() }
    }

    /// Numeric value under the embedding ζ_N ↦ exp(2πi/N).
    pub fn to_complex(&self) -> Complex64 {
        let n = self.conductor as f64;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                let angle = 2.0 * std::f64::consts::PI * k as f64 / n;
                Complex64::from_polar(c.to_f64().unwrap_or(f64::NAN), angle)
            })
            .sum()
    }
}

impl Add for &CyclotomicScalar {
    type Output = CyclotomicScalar;
    fn add(self, rhs: Self) -> CyclotomicScalar {
        assert_eq!(self.conductor, rhs.conductor, "conductor mismatch");
        CyclotomicScalar {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &CyclotomicScalar {
    type Output = CyclotomicScalar;
    fn sub(self, rhs: Self) -> CyclotomicScalar {
        assert_eq!(self.conductor, rhs.conductor, "conductor mismatch");
        CyclotomicScalar {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &CyclotomicScalar {
    type Output = CyclotomicScalar;
    fn mul(self, rhs: Self) -> CyclotomicScalar {
        assert_eq!(self.conductor, rhs.conductor, "conductor mismatch");
        if let Some(q) = rhs.as_rational() {
            return self.scale(q);
        }
        if let Some(q) = self.as_rational() {
            return rhs.scale(q);
        }
        let len = self.coeffs.len();
        let mut prod = vec![Rational::zero(); 2 * len - 1];
        for (i, a) in self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in rhs.coeffs.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                prod[i + j] += a * b;
            }
        }
        reduce_mod_cyclotomic(&mut prod, self.conductor);
        CyclotomicScalar { conductor: self.conductor, coeffs: prod }
    }
}

impl Neg for &CyclotomicScalar {
    type Output = CyclotomicScalar;
    fn neg(self) -> CyclotomicScalar {
        CyclotomicScalar { conductor: self.conductor, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for CyclotomicScalar {
            type Output = CyclotomicScalar;
            fn $m(self, rhs: Self) -> CyclotomicScalar {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for CyclotomicScalar {
    type Output = CyclotomicScalar;
    fn neg(self) -> CyclotomicScalar {
        -&self
    }
}

fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn parse_rational(s: &str) -> Result<Rational, AlgebraError> {
    let s = s.trim();
    let bad = || AlgebraError::Parse(format!("invalid rational '{s}'"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(AlgebraError::DivisionByZero);
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Text format: `p/q` (or `p`) for N = 1, `[c0,c1,...]@N` otherwise.
impl fmt::Display for CyclotomicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.conductor == 1 {
            return f.write_str(&format_rational(&self.coeffs[0]));
        }
        let parts: Vec<String> = self.coeffs.iter().map(format_rational).collect();
        write!(f, "[{}]@{}", parts.join(","), self.conductor)
    }
}

impl FromStr for CyclotomicScalar {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix('[') {
            let (body, n) =
                rest.split_once("]@").ok_or_else(|| AlgebraError::Parse(format!("expected '[...]@N', got '{s}'")))?;
            let n: u32 = n.trim().parse().map_err(|_| AlgebraError::Parse(format!("invalid conductor in '{s}'")))?;
            let coeffs = if body.trim().is_empty() {
                Vec::new()
            } else {
                body.split(',').map(parse_rational).collect::<Result<Vec<_>, _>>()?
            };
            Self::new(n, coeffs)
        } else {
            Ok(Self::from_rational(1, parse_rational(s)?))
        }
    }
}

impl serde::Serialize for CyclotomicScalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for CyclotomicScalar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Rational helper used by formats elsewhere.
pub fn rational_to_string(q: &Rational) -> String {
    format_rational(q)
}

pub fn rational_from_str(s: &str) -> Result<Rational, AlgebraError> {
    parse_rational(s)
}

/// Dense univariate polynomials over Q, just enough for field inversion.
mod upoly {
    use super::Rational;
    use num_traits::Zero;

    fn trim(p: &mut Vec<Rational>) {
        while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
            p.pop();
        }
    }

    fn is_zero(p: &[Rational]) -> bool {
        p.iter().all(Zero::is_zero)
    }

    fn divmod(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
        let mut r = a.to_vec();
        trim(&mut r);
        let mut b = b.to_vec();
        trim(&mut b);
        let db = b.len() - 1;
        let lead = b[db].clone();
        if r.len() < b.len() {
            return (vec![Rational::zero()], r);
        }
        let mut q = vec![Rational::zero(); r.len() - db];
        for k in (0..q.len()).rev() {
            let c = &r[k + db] / &lead;
            if !c.is_zero() {
                for (j, bj) in b.iter().enumerate() {
                    r[k + j] -= &c * bj;
                }
            }
            q[k] = c;
        }
        r.truncate(db.max(1));
        trim(&mut r);
        (q, r)
    }

    fn mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        out
    }

    fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let n = a.len().max(b.len());
        (0..n)
            .map(|i| {
                let x = a.get(i).cloned().unwrap_or_else(Rational::zero);
                let y = b.get(i).cloned().unwrap_or_else(Rational::zero);
                x - y
            })
            .collect()
    }

    /// s with s·a ≡ 1 (mod m), for a coprime to m.
    pub(super) fn inverse_mod(a: &[Rational], m: &[Rational]) -> Vec<Rational> {
        let (mut r0, mut r1) = (m.to_vec(), a.to_vec());
        trim(&mut r1);
        let (mut s0, mut s1) = (vec![Rational::zero()], vec![Rational::from_integer(1.into())]);
        while !(r1.len() == 1 && !r1[0].is_zero()) {
            debug_assert!(!is_zero(&r1), "element shares a factor with the modulus");
            let (q, r) = divmod(&r0, &r1);
            let s = sub(&s0, &mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        let c = r1[0].clone();
        s1.iter().map(|x| x / &c).collect()
    }
}

//! Arithmetic in the Néron-Severi lattice of a rational elliptic surface.
//!
//! The surface is presented as a blowup of the plane at nine (possibly
//! infinitely near) points, so the lattice has the orthogonal basis
//! `l, e1, ..., e9` with `l·l = 1`, `ei·ei = -1` and all mixed products `0`
//! (signature `(1,9)`). A class is stored as the coefficient vector
//! `[a, b1, ..., b9]` meaning `a·l - b1·e1 - ... - b9·e9`.
//!
//! Coefficients are arbitrary-precision integers; every operation is exact.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, SeqAccess, Visitor};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::ops::{Add, Neg, Sub};

/// Rank of the Néron-Severi lattice: `l` plus nine exceptional classes.
pub const LATTICE_RANK: usize = 10;

/// A divisor class `a·l - Σ bi·ei` in the basis `(l, e1, ..., e9)`.
///
/// `l` is the pullback of a plane line and `ei` the total transform of the
/// i-th exceptional divisor. Equality of coefficient vectors is equality of
/// classes: on these surfaces numerical and algebraic equivalence coincide.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DivisorClass {
    coeffs: [BigInt; 10],
}

impl DivisorClass {
    /// Class with coefficient vector `[a, b1, ..., b9]`.
    pub fn new(coeffs: [BigInt; 10]) -> Self {
        DivisorClass { coeffs }
    }

    pub fn from_i64(coeffs: [i64; 10]) -> Self {
        DivisorClass {
            coeffs: coeffs.map(BigInt::from),
        }
    }

    pub fn zero() -> Self {
        Self::from_i64([0; 10])
    }

    /// Pullback `l` of a plane line.
    pub fn line() -> Self {
        Self::from_i64([1, 0, 0, 0, 0, 0, 0, 0, 0, 0])
    }

    /// Total-transform exceptional class `ei`, `i` in `1..=9`.
    pub fn exceptional(i: usize) -> Self {
        assert!((1..=9).contains(&i), "exceptional index {i} out of range");
        let mut c = [0i64; 10];
        c[i] = -1;
        Self::from_i64(c)
    }

    /// The canonical class `K = -3l + e1 + ... + e9`.
    pub fn canonical() -> Self {
        Self::from_i64([-3, -1, -1, -1, -1, -1, -1, -1, -1, -1])
    }

    /// The anticanonical class `-K = 3l - e1 - ... - e9`, the fiber class
    /// of the elliptic fibration.
    pub fn anticanonical() -> Self {
        Self::from_i64([3, 1, 1, 1, 1, 1, 1, 1, 1, 1])
    }

    pub fn coeffs(&self) -> &[BigInt; 10] {
        &self.coeffs
    }

    /// Degree against `l`, i.e. the coefficient `a`.
    pub fn degree(&self) -> &BigInt {
        &self.coeffs[0]
    }

    /// Multiplicity `bi` at the i-th base point, `i` in `1..=9`.
    pub fn multiplicity(&self, i: usize) -> &BigInt {
        assert!((1..=9).contains(&i), "point index {i} out of range");
        &self.coeffs[i]
    }

    /// Intersection pairing under the diagonal `(1,9)` form.
    pub fn intersect(&self, other: &DivisorClass) -> BigInt {
        let mut acc = &self.coeffs[0] * &other.coeffs[0];
        for i in 1..10 {
            acc -= &self.coeffs[i] * &other.coeffs[i];
        }
        acc
    }

    pub fn self_intersection(&self) -> BigInt {
        self.intersect(self)
    }

    /// Arithmetic genus `1 + (D² + D·K)/2` as an exact rational.
    ///
    /// Half-integer values on non-curve classes are representable instead of
    /// silently rounded.
    pub fn arithmetic_genus(&self) -> BigRational {
        let d2 = self.self_intersection();
        let dk = self.intersect(&DivisorClass::canonical());
        BigRational::one() + BigRational::new(d2 + dk, BigInt::from(2))
    }

    /// Euler characteristic `χ(D) = 1 + (D² - D·K)/2` from Riemann-Roch
    /// with `χ(O_X) = 1`. The numerator is always even, so the result is an
    /// exact integer.
    pub fn riemann_roch_chi(&self) -> BigInt {
        let d2 = self.self_intersection();
        let dk = self.intersect(&DivisorClass::canonical());
        let num = d2 - dk;
        debug_assert!((&num % 2u8).is_zero());
        BigInt::one() + num / 2
    }

    /// The two arithmetic conditions of a conic class: `D² = 0` and
    /// `D·(-K) = 2`. Nefness is not checked here; it needs a curve
    /// inventory (see `conic_bundles::is_nef_against`).
    pub fn is_conic_class_numeric(&self) -> bool {
        self.self_intersection().is_zero()
            && self.intersect(&DivisorClass::anticanonical()) == BigInt::from(2)
    }

    pub fn scale(&self, k: i64) -> DivisorClass {
        let kk = BigInt::from(k);
        DivisorClass {
            coeffs: core::array::from_fn(|i| &self.coeffs[i] * &kk),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Coefficients as `i64`, or `None` when any coefficient overflows.
    pub fn coeffs_i64(&self) -> Option<[i64; 10]> {
        let mut out = [0i64; 10];
        for (slot, c) in out.iter_mut().zip(self.coeffs.iter()) {
            *slot = c.to_i64()?;
        }
        Some(out)
    }
}

impl Add for &DivisorClass {
    type Output = DivisorClass;
    fn add(self, rhs: &DivisorClass) -> DivisorClass {
        DivisorClass {
            coeffs: core::array::from_fn(|i| &self.coeffs[i] + &rhs.coeffs[i]),
        }
    }
}

impl Sub for &DivisorClass {
    type Output = DivisorClass;
    fn sub(self, rhs: &DivisorClass) -> DivisorClass {
        DivisorClass {
            coeffs: core::array::from_fn(|i| &self.coeffs[i] - &rhs.coeffs[i]),
        }
    }
}

impl Neg for &DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> DivisorClass {
        DivisorClass {
            coeffs: core::array::from_fn(|i| -&self.coeffs[i]),
        }
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        let a = &self.coeffs[0];
        if !a.is_zero() {
            if a.is_one() {
                write!(f, "l")?;
            } else {
                write!(f, "{a}l")?;
            }
            wrote = true;
        }
        for i in 1..10 {
            let b = &self.coeffs[i];
            if b.is_zero() {
                continue;
            }
            // `a·l - Σ bi·ei`: positive bi prints as a subtracted term.
            let (sign, mag) = if b.is_positive() {
                ("-", b.clone())
            } else {
                ("+", -b)
            };
            if wrote {
                write!(f, " {sign} ")?;
            } else if sign == "-" {
                write!(f, "-")?;
            }
            if mag.is_one() {
                write!(f, "e{i}")?;
            } else {
                write!(f, "{mag}e{i}")?;
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DivisorClass({self})")
    }
}

// Classes serialize as the 10-integer array `[a, b1, ..., b9]`.
impl Serialize for DivisorClass {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(10))?;
        for c in &self.coeffs {
            let v = c.to_i64().ok_or_else(|| {
                serde::ser::Error::custom("divisor class coefficient exceeds i64 range")
            })?;
            seq.serialize_element(&v)?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for DivisorClass {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = DivisorClass;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                write!(f, "an array of 10 integers [a, b1, ..., b9]")
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Self::Value, A::Error> {
                let mut coeffs = [0i64; 10];
                for (i, slot) in coeffs.iter_mut().enumerate() {
                    *slot = seq
                        .next_element()?
                        .ok_or_else(|| de::Error::invalid_length(i, &self))?;
                }
                if seq.next_element::<i64>()?.is_some() {
                    return Err(de::Error::custom("expected exactly 10 coefficients"));
                }
                Ok(DivisorClass::from_i64(coeffs))
            }
        }
        deserializer.deserialize_seq(V)
    }
}

//! Exact arithmetic in the cyclotomic field `Q(ζ8)`.
//!
//! An element is stored in the power basis `c0 + c1·ζ + c2·ζ² + c3·ζ³`
//! with `ζ = e^{iπ/4}` and the reduction rule `ζ⁴ = −1`. The field contains
//! `i = ζ²` and `√2 = ζ − ζ³`, which covers every character value and
//! matrix entry used in this crate.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

/// An exact element of `Q(ζ8)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CycloNum {
    coeffs: [BigRational; 4],
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl CycloNum {
    pub fn new(coeffs: [BigRational; 4]) -> Self {
        CycloNum { coeffs }
    }

    /// Builds `c0 + c1·ζ + c2·ζ² + c3·ζ³` from integer coefficients.
    pub fn from_ints(c: [i64; 4]) -> Self {
        CycloNum::new([rat(c[0]), rat(c[1]), rat(c[2]), rat(c[3])])
    }

    pub fn from_int(n: i64) -> Self {
        CycloNum::from_ints([n, 0, 0, 0])
    }

    pub fn from_rational(q: BigRational) -> Self {
        CycloNum::new([
            q,
            BigRational::zero(),
            BigRational::zero(),
            BigRational::zero(),
        ])
    }

    /// `num/den` as a rational element. Panics if `den == 0`.
    pub fn frac(num: i64, den: i64) -> Self {
        CycloNum::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// Gaussian rational `re + im·i`.
    pub fn gaussian(re: BigRational, im: BigRational) -> Self {
        CycloNum::new([re, BigRational::zero(), im, BigRational::zero()])
    }

    pub fn zero() -> Self {
        CycloNum::from_int(0)
    }

    pub fn one() -> Self {
        CycloNum::from_int(1)
    }

    /// The primitive eighth root of unity `ζ = (1 + i)/√2`.
    pub fn zeta() -> Self {
        CycloNum::from_ints([0, 1, 0, 0])
    }

    /// `ζᵏ` for any integer `k`.
    pub fn zeta_pow(k: i64) -> Self {
        let k = k.rem_euclid(8) as usize;
        let mut c = [0i64; 4];
        if k < 4 {
            c[k] = 1;
        } else {
            c[k - 4] = -1;
        }
        CycloNum::from_ints(c)
    }

    pub fn i() -> Self {
        CycloNum::from_ints([0, 0, 1, 0])
    }

    pub fn sqrt2() -> Self {
        CycloNum::from_ints([0, 1, 0, -1])
    }

    pub fn inv_sqrt2() -> Self {
        CycloNum::new([
            BigRational::zero(),
            BigRational::new(1.into(), 2.into()),
            BigRational::zero(),
            BigRational::new((-1).into(), 2.into()),
        ])
    }

    pub fn coeffs(&self) -> &[BigRational; 4] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The rational value, if the element lies in `Q`.
    pub fn as_rational(&self) -> Option<&BigRational> {
        self.coeffs[1..]
            .iter()
            .all(Zero::is_zero)
            .then_some(&self.coeffs[0])
    }

    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational()
            .filter(|q| q.is_integer())
            .map(|q| q.to_integer())
    }

    pub fn as_i64(&self) -> Option<i64> {
        self.as_integer().and_then(|n| n.to_i64())
    }

    /// Complex conjugation, `ζ ↦ ζ⁷ = −ζ³`.
    pub fn conj(&self) -> Self {
        let [c0, c1, c2, c3] = &self.coeffs;
        CycloNum::new([c0.clone(), -c3.clone(), -c2.clone(), -c1.clone()])
    }

    /// The Galois automorphism `ζ ↦ ζᵏ` for odd `k`.
    pub fn galois(&self, k: u32) -> Self {
        assert!(k % 2 == 1, "Galois automorphisms of Q(ζ8) need odd k");
        let mut out = CycloNum::zero();
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = (k as usize * j) % 8;
            if e < 4 {
                out.coeffs[e] += c;
            } else {
                out.coeffs[e - 4] -= c;
            }
        }
        out
    }

    /// `x · conj(x)`, the squared complex modulus. Lies in `Q(√2)`; rational
    /// for every character value of the built-in groups.
    pub fn abs_sqr(&self) -> Self {
        self * &self.conj()
    }

    /// Field norm down to `Q`: the product of all four Galois conjugates.
    pub fn norm(&self) -> BigRational {
        let p = self * &self.galois(3) * self.galois(5) * self.galois(7);
        p.as_rational()
            .cloned()
            .expect("field norm of Q(ζ8) element must be rational")
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let co = self.galois(3) * self.galois(5) * self.galois(7);
        let n = (self * &co)
            .as_rational()
            .cloned()
            .expect("field norm of Q(ζ8) element must be rational");
        Some(co.scale(&n.recip()))
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        CycloNum::new(self.coeffs.clone().map(|c| c * q))
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = CycloNum::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Numerical embedding with `ζ = e^{iπ/4}`. Display and sanity checks only.
    pub fn to_complex(&self) -> Complex64 {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let z = Complex64::new(h, h);
        let mut acc = Complex64::new(0.0, 0.0);
        let mut p = Complex64::new(1.0, 0.0);
        for c in &self.coeffs {
            acc += p * c.to_f64().unwrap_or(f64::NAN);
            p *= z;
        }
        acc
    }

    /// Coordinates in the basis `(1, i, √2, i√2)`.
    pub fn real_basis(&self) -> [BigRational; 4] {
        let [c0, c1, c2, c3] = &self.coeffs;
        let half = BigRational::new(1.into(), 2.into());
        [c0.clone(), c2.clone(), (c1 - c3) * &half, (c1 + c3) * &half]
    }
}

impl From<i64> for CycloNum {
    fn from(n: i64) -> Self {
        CycloNum::from_int(n)
    }
}

impl From<BigRational> for CycloNum {
    fn from(q: BigRational) -> Self {
        CycloNum::from_rational(q)
    }
}

impl Default for CycloNum {
    fn default() -> Self {
        CycloNum::zero()
    }
}

fn mul_ref(a: &CycloNum, b: &CycloNum) -> CycloNum {
    let mut out: [BigRational; 4] = Default::default();
    for (i, x) in a.coeffs.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.coeffs.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            let p = x * y;
            let k = i + j;
            if k < 4 {
                out[k] += p;
            } else {
                out[k - 4] -= p;
            }
        }
    }
    CycloNum::new(out)
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl<'a> $tr<&'a CycloNum> for &'a CycloNum {
            type Output = CycloNum;
            fn $method(self, rhs: &'a CycloNum) -> CycloNum {
                let f: fn(&CycloNum, &CycloNum) -> CycloNum = $body;
                f(self, rhs)
            }
        }
        impl $tr<CycloNum> for CycloNum {
            type Output = CycloNum;
            fn $method(self, rhs: CycloNum) -> CycloNum {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a CycloNum> for CycloNum {
            type Output = CycloNum;
            fn $method(self, rhs: &'a CycloNum) -> CycloNum {
                (&self).$method(rhs)
            }
        }
        impl<'a> $tr<CycloNum> for &'a CycloNum {
            type Output = CycloNum;
            fn $method(self, rhs: CycloNum) -> CycloNum {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| {
    let mut c = a.coeffs.clone();
    for (x, y) in c.iter_mut().zip(&b.coeffs) {
        *x += y;
    }
    CycloNum::new(c)
});
forward_binop!(Sub, sub, |a, b| {
    let mut c = a.coeffs.clone();
    for (x, y) in c.iter_mut().zip(&b.coeffs) {
        *x -= y;
    }
    CycloNum::new(c)
});
forward_binop!(Mul, mul, mul_ref);
forward_binop!(Div, div, |a, b| a * &b
    .inv()
    .expect("division by zero in Q(ζ8)"));

impl Neg for CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        CycloNum::new(self.coeffs.map(|c| -c))
    }
}

impl Neg for &CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        -self.clone()
    }
}

impl AddAssign<&CycloNum> for CycloNum {
    fn add_assign(&mut self, rhs: &CycloNum) {
        for (x, y) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *x += y;
        }
    }
}

impl AddAssign for CycloNum {
    fn add_assign(&mut self, rhs: CycloNum) {
        *self += &rhs;
    }
}

impl SubAssign<&CycloNum> for CycloNum {
    fn sub_assign(&mut self, rhs: &CycloNum) {
        for (x, y) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *x -= y;
        }
    }
}

impl MulAssign<&CycloNum> for CycloNum {
    fn mul_assign(&mut self, rhs: &CycloNum) {
        *self = &*self * rhs;
    }
}

impl std::iter::Sum for CycloNum {
    fn sum<I: Iterator<Item = CycloNum>>(iter: I) -> Self {
        iter.fold(CycloNum::zero(), |acc, x| acc + x)
    }
}

impl<'a> std::iter::Sum<&'a CycloNum> for CycloNum {
    fn sum<I: Iterator<Item = &'a CycloNum>>(iter: I) -> Self {
        iter.fold(CycloNum::zero(), |mut acc, x| {
            acc += x;
            acc
        })
    }
}

fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Renders in the basis `(1, i, √2, i√2)`, e.g. `2√2`, `1/2+1/2i`, `-(1/2)i√2`.
impl fmt::Display for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts = self.real_basis();
        let symbols = ["", "i", "√2", "i√2"];
        let mut out = String::new();
        for (q, sym) in parts.iter().zip(symbols) {
            if q.is_zero() {
                continue;
            }
            let neg = q.is_negative();
            let mag = q.abs();
            let body = if sym.is_empty() {
                fmt_rational(&mag)
            } else if mag.is_one() {
                sym.to_string()
            } else if mag.is_integer() {
                format!("{}{}", mag.numer(), sym)
            } else {
                format!("({}){}", fmt_rational(&mag), sym)
            };
            if neg {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            out.push_str(&body);
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}

/// JSON form of an exact rational: decimal strings, no width assumptions.
#[derive(Serialize, Clone, Debug, PartialEq, Eq)]
pub struct RationalJson {
    pub num: String,
    pub den: String,
}

impl From<&BigRational> for RationalJson {
    fn from(q: &BigRational) -> Self {
        RationalJson {
            num: q.numer().to_string(),
            den: q.denom().to_string(),
        }
    }
}

impl Serialize for CycloNum {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let coeffs: Vec<RationalJson> = self.coeffs.iter().map(RationalJson::from).collect();
        let mut st = s.serialize_struct("CycloNum", 1)?;
        st.serialize_field("coeffs", &coeffs)?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_cyclo() -> impl Strategy<Value = CycloNum> {
        proptest::array::uniform4((-6i64..=6, 1i64..=4))
            .prop_map(|c| CycloNum::new(c.map(|(n, d)| BigRational::new(n.into(), d.into()))))
    }

    #[test]
    fn embedding_constants() {
        assert_eq!(CycloNum::zeta().pow(2), CycloNum::i());
        assert_eq!(CycloNum::zeta().pow(4), CycloNum::from_int(-1));
        assert_eq!(CycloNum::zeta().pow(8), CycloNum::one());
        assert_eq!(CycloNum::sqrt2() * CycloNum::sqrt2(), CycloNum::from_int(2));
        assert_eq!(CycloNum::sqrt2() * CycloNum::inv_sqrt2(), CycloNum::one());
        assert_eq!(CycloNum::zeta().conj(), CycloNum::zeta_pow(7));
        assert_eq!(CycloNum::i().conj(), -CycloNum::i());
        assert_eq!(CycloNum::sqrt2().conj(), CycloNum::sqrt2());
    }

    #[test]
    fn zeta_powers_wrap() {
        for k in -16..16 {
            assert_eq!(
                CycloNum::zeta_pow(k),
                CycloNum::zeta().pow(k.rem_euclid(8) as u32)
            );
        }
    }

    #[test]
    fn complex_embedding() {
        let z = (CycloNum::sqrt2() * CycloNum::from_int(2)).to_complex();
        assert!((z.re - 2.8284271247461903).abs() < 1e-12);
        assert!(z.im.abs() < 1e-12);
        let i = CycloNum::i().to_complex();
        assert!((i.im - 1.0).abs() < 1e-15 && i.re.abs() < 1e-15);
    }

    #[test]
    fn display_forms() {
        assert_eq!(
            (CycloNum::from_int(2) * CycloNum::sqrt2()).to_string(),
            "2√2"
        );
        assert_eq!(CycloNum::zero().to_string(), "0");
        assert_eq!((-CycloNum::sqrt2()).to_string(), "-√2");
        assert_eq!(CycloNum::frac(1, 2).to_string(), "1/2");
        assert_eq!(CycloNum::zeta().to_string(), "(1/2)√2+(1/2)i√2");
        assert_eq!((CycloNum::one() - CycloNum::i()).to_string(), "1-i");
    }

    #[test]
    fn norm_and_inverse() {
        assert_eq!(
            CycloNum::sqrt2().norm(),
            BigRational::from_integer(4.into())
        );
        assert_eq!(CycloNum::zeta().norm(), BigRational::one());
        assert!(CycloNum::zero().inv().is_none());
        let x = CycloNum::from_ints([1, 2, 0, -1]);
        assert_eq!(&x * &x.inv().unwrap(), CycloNum::one());
    }

    #[test]
    fn json_shape() {
        let v = serde_json::to_value(CycloNum::frac(-3, 4)).unwrap();
        assert_eq!(v["coeffs"][0]["num"], "-3");
        assert_eq!(v["coeffs"][0]["den"], "4");
        assert_eq!(v["coeffs"][3]["num"], "0");
    }

    proptest! {
        #[test]
        fn field_axioms(a in arb_cyclo(), b in arb_cyclo(), c in arb_cyclo()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!((&a * &b) * &c, &a * (&b * &c));
            prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
            prop_assert_eq!(&a - &a, CycloNum::zero());
            if !a.is_zero() {
                prop_assert_eq!(&a * &a.inv().unwrap(), CycloNum::one());
                prop_assert_eq!((&b / &a) * &a, b.clone());
            }
        }

        #[test]
        fn conjugation_is_involutive_automorphism(a in arb_cyclo(), b in arb_cyclo()) {
            prop_assert_eq!(a.conj().conj(), a.clone());
            prop_assert_eq!((&a * &b).conj(), a.conj() * b.conj());
            prop_assert_eq!(a.conj(), a.galois(7));
            let n = a.abs_sqr();
            prop_assert_eq!(n.conj(), n.clone());
        }

        #[test]
        fn embedding_is_a_ring_map(a in arb_cyclo(), b in arb_cyclo()) {
            let lhs = (&a * &b).to_complex();
            let rhs = a.to_complex() * b.to_complex();
            prop_assert!((lhs - rhs).norm() < 1e-9);
            prop_assert!((a.conj().to_complex() - a.to_complex().conj()).norm() < 1e-9);
        }
    }
}

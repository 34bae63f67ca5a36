//! Real quaternions `w + xi + yj + zk`, the complex split `q = z1 + z2 j`,
//! standard representatives of similarity classes and the ordering of
//! standard eigenvalues.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

/// The pair `(z1, z2)` with `q = z1 + z2 j`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexPair {
    pub z1: Complex64,
    pub z2: Complex64,
}

impl ComplexPair {
    pub fn assemble(&self) -> Quaternion {
        Quaternion::from_pair(self.z1, self.z2)
    }
}

impl Quaternion {
    pub const ZERO: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Quaternion = Quaternion::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Quaternion = Quaternion::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Quaternion = Quaternion::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 1.0);

    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Quaternion { w, x, y, z }
    }

    pub const fn real(w: f64) -> Self {
        Quaternion::new(w, 0.0, 0.0, 0.0)
    }

    pub fn from_complex(c: Complex64) -> Self {
        Quaternion::new(c.re, c.im, 0.0, 0.0)
    }

    /// `z1 + z2 j`; note `(c + di) j = cj + dk`.
    pub fn from_pair(z1: Complex64, z2: Complex64) -> Self {
        Quaternion::new(z1.re, z1.im, z2.re, z2.im)
    }

    pub fn coeffs(&self) -> [f64; 4] {
        [self.w, self.x, self.y, self.z]
    }

    pub fn conj(&self) -> Self {
        Quaternion::new(self.w, -self.x, -self.y, -self.z)
    }

    pub fn norm_sqr(&self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    pub fn norm(&self) -> f64 {
        // hypot chain avoids overflow for huge coefficients
        self.w.hypot(self.x).hypot(self.y.hypot(self.z))
    }

    pub fn imag_norm(&self) -> f64 {
        self.x.hypot(self.y).hypot(self.z)
    }

    /// Multiplicative inverse; the caller guarantees `self != 0`.
    pub fn inv(&self) -> Self {
        let n = self.norm_sqr();
        self.conj() * (1.0 / n)
    }

    /// `self / |self|`, or 1 for zero.
    pub fn unit(&self) -> Self {
        let n = self.norm();
        if n == 0.0 {
            Quaternion::ONE
        } else {
            *self * (1.0 / n)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.w == 0.0 && self.x == 0.0 && self.y == 0.0 && self.z == 0.0
    }

    pub fn is_finite(&self) -> bool {
        self.w.is_finite() && self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    /// Real within `eps * (1 + |q|)`.
    pub fn is_real_within(&self, eps: f64) -> bool {
        self.imag_norm() <= eps * (1.0 + self.norm())
    }

    pub fn split(&self) -> ComplexPair {
        ComplexPair {
            z1: Complex64::new(self.w, self.x),
            z2: Complex64::new(self.y, self.z),
        }
    }

    /// Each coefficient with magnitude at most `threshold` becomes exactly zero.
    pub fn snap(&self, threshold: f64) -> Self {
        let s = |v: f64| if v.abs() <= threshold { 0.0 } else { v };
        Quaternion::new(s(self.w), s(self.x), s(self.y), s(self.z))
    }

    pub fn dist(&self, other: &Quaternion) -> f64 {
        (*self - *other).norm()
    }
}

pub fn conjugate(q: Quaternion) -> Quaternion {
    q.conj()
}

pub fn complex_split(q: Quaternion) -> ComplexPair {
    q.split()
}

/// The unique complex number `a + sqrt(b^2+c^2+d^2) i` similar to `q`.
pub fn standardize(q: Quaternion) -> Complex64 {
    Complex64::new(q.w, q.imag_norm())
}

/// A unit `s` with `s^{-1} q s = standardize(q)`.
///
/// With `u` the unit imaginary part of `q`, the half-turn about the
/// bisector of `i` and `u` swaps them, so `s = (i + u)/|i + u|`, except
/// that `s = 1` when `u = i` already. When the `i`-component
/// of `u` is negative that sum loses precision, so `u` is first rotated by
/// `j` (which negates the `i` and `k` components).
pub fn standardizing_conjugator(q: Quaternion, eps_canon: f64) -> Quaternion {
    let im = q.imag_norm();
    if q.is_real_within(eps_canon) || im == 0.0 {
        return Quaternion::ONE;
    }
    let u = Quaternion::new(0.0, q.x / im, q.y / im, q.z / im);
    let (pre, u) = if u.x < 0.0 {
        // j^{-1} u j
        (Quaternion::J, Quaternion::new(0.0, -u.x, u.y, -u.z))
    } else {
        (Quaternion::ONE, u)
    };
    if u == Quaternion::I {
        pre
    } else {
        pre * (Quaternion::I + u).unit()
    }
}

/// The order `a+bi ⪰ c+di` iff `b > d`, or `b = d` and `a ≥ c`.
pub fn succeq(u: Complex64, v: Complex64) -> bool {
    u.im > v.im || (u.im == v.im && u.re >= v.re)
}

/// Descending order under [`succeq`]: `Less` means `u` comes first.
/// Imaginary parts within `tol` of each other are treated as equal.
pub fn cmp_descending(u: Complex64, v: Complex64, tol: f64) -> Ordering {
    if (u.im - v.im).abs() > tol {
        v.im.partial_cmp(&u.im).unwrap_or(Ordering::Equal)
    } else if (u.re - v.re).abs() > tol {
        v.re.partial_cmp(&u.re).unwrap_or(Ordering::Equal)
    } else {
        Ordering::Equal
    }
}

/// `z ≻ 0`: nonzero and `z ⪰ 0`.
pub fn succ_zero(z: Complex64) -> bool {
    z.im > 0.0 || (z.im == 0.0 && z.re > 0.0)
}

impl Add for Quaternion {
    type Output = Quaternion;
    fn add(self, o: Quaternion) -> Quaternion {
        Quaternion::new(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    fn sub(self, o: Quaternion) -> Quaternion {
        Quaternion::new(self.w - o.w, self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        Quaternion::new(-self.w, -self.x, -self.y, -self.z)
    }
}

impl Mul for Quaternion {
    type Output = Quaternion;
    fn mul(self, o: Quaternion) -> Quaternion {
        let (a, b) = (self, o);
        Quaternion::new(
            a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w,
        )
    }
}

impl Mul<f64> for Quaternion {
    type Output = Quaternion;
    fn mul(self, s: f64) -> Quaternion {
        Quaternion::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }
}

impl Div<f64> for Quaternion {
    type Output = Quaternion;
    fn div(self, s: f64) -> Quaternion {
        Quaternion::new(self.w / s, self.x / s, self.y / s, self.z / s)
    }
}

impl AddAssign for Quaternion {
    fn add_assign(&mut self, o: Quaternion) {
        *self = *self + o;
    }
}

impl SubAssign for Quaternion {
    fn sub_assign(&mut self, o: Quaternion) {
        *self = *self - o;
    }
}

impl MulAssign for Quaternion {
    fn mul_assign(&mut self, o: Quaternion) {
        *self = *self * o;
    }
}

impl From<f64> for Quaternion {
    fn from(w: f64) -> Self {
        Quaternion::real(w)
    }
}

impl From<Complex64> for Quaternion {
    fn from(c: Complex64) -> Self {
        Quaternion::from_complex(c)
    }
}

impl fmt::Display for Quaternion {
    /// `w+xi+yj+zk` with 6 significant digits.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = |v: f64| format_sig(v, 6);
        let sign = |v: f64| if v.is_sign_negative() { "-" } else { "+" };
        write!(
            f,
            "{}{}{}i{}{}j{}{}k",
            g(self.w),
            sign(self.x),
            g(self.x.abs()),
            sign(self.y),
            g(self.y.abs()),
            sign(self.z),
            g(self.z.abs())
        )
    }
}

/// Formats `v` with `digits` significant digits, trimming trailing zeros.
pub fn format_sig(v: f64, digits: usize) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let exp = v.abs().log10().floor() as i32;
    if !(-5..=5).contains(&exp) {
        return format!("{:.*e}", digits.saturating_sub(1), v);
    }
    let decimals = (digits as i32 - 1 - exp).max(0) as usize;
    let s = format!("{:.*}", decimals, v);
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

impl Serialize for Quaternion {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.coeffs().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Quaternion {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [w, x, y, z] = <[f64; 4]>::deserialize(d)?;
        Ok(Quaternion::new(w, x, y, z))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn close(a: Quaternion, b: Quaternion) -> bool {
        a.dist(&b) <= 1e-12
    }

    #[test]
    fn units_multiply_like_hamilton() {
        let (i, j, k) = (Quaternion::I, Quaternion::J, Quaternion::K);
        assert_eq!(i * i, -Quaternion::ONE);
        assert_eq!(j * j, -Quaternion::ONE);
        assert_eq!(k * k, -Quaternion::ONE);
        assert_eq!(i * j * k, -Quaternion::ONE);
        assert_eq!(i * j, k);
        assert_eq!(j * i, -k);
    }

    #[test]
    fn conjugate_examples() {
        let q = Quaternion::new(1.0, 2.0, 3.0, 4.0);
        assert_eq!(conjugate(q), Quaternion::new(1.0, -2.0, -3.0, -4.0));
        assert_eq!(conjugate(Quaternion::real(5.0)), Quaternion::real(5.0));
        assert_eq!(conjugate(Quaternion::J), -Quaternion::J);
        assert_eq!(conjugate(conjugate(q)), q);
    }

    #[test]
    fn conj_times_self_is_norm() {
        let q = Quaternion::new(0.3, -1.2, 2.5, 0.7);
        let p = q.conj() * q;
        assert!(close(p, Quaternion::real(q.norm_sqr())));
    }

    #[test]
    fn standardize_examples() {
        assert_eq!(
            standardize(Quaternion::new(1.0, 2.0, 2.0, 1.0)),
            c(1.0, 3.0)
        );
        assert_eq!(standardize(Quaternion::real(7.0)), c(7.0, 0.0));
        assert_eq!(standardize(-Quaternion::I), c(0.0, 1.0));
    }

    #[test]
    fn conjugator_examples() {
        let eps = 1e-8;
        let s = standardizing_conjugator(Quaternion::J, eps);
        let expect = (Quaternion::I + Quaternion::J) * (1.0 / 2f64.sqrt());
        assert!(close(s, expect));
        assert!(close(s.inv() * Quaternion::J * s, Quaternion::I));

        assert_eq!(
            standardizing_conjugator(Quaternion::real(3.0), eps),
            Quaternion::ONE
        );

        let s = standardizing_conjugator(-Quaternion::I, eps);
        assert!(close(s, Quaternion::J));
        assert!(close(s.inv() * (-Quaternion::I) * s, Quaternion::I));
    }

    #[test]
    fn conjugator_handles_negative_i_component() {
        let eps = 1e-8;
        for q in [
            Quaternion::new(2.0, -3.0, 1e-9, 0.0),
            Quaternion::new(-1.0, -0.5, 0.2, -0.1),
            Quaternion::new(0.0, 0.0, 0.0, -2.0),
        ] {
            let s = standardizing_conjugator(q, eps);
            assert!((s.norm() - 1.0).abs() < 1e-14);
            let got = s.inv() * q * s;
            assert!(
                close(got, Quaternion::from_complex(standardize(q))),
                "{q:?} -> {got:?}"
            );
        }
    }

    #[test]
    fn split_examples() {
        let p = complex_split(Quaternion::new(1.0, 2.0, 3.0, 4.0));
        assert_eq!((p.z1, p.z2), (c(1.0, 2.0), c(3.0, 4.0)));
        let p = complex_split(Quaternion::J);
        assert_eq!((p.z1, p.z2), (c(0.0, 0.0), c(1.0, 0.0)));
        let p = complex_split(Quaternion::new(0.0, 2.0, 0.0, 0.0));
        assert_eq!((p.z1, p.z2), (c(0.0, 2.0), c(0.0, 0.0)));
    }

    #[test]
    fn split_matches_product_with_j() {
        // z2 j computed by quaternion multiplication, not by coefficient placement
        let p = ComplexPair {
            z1: c(0.5, -1.5),
            z2: c(2.0, 3.0),
        };
        let prod = Quaternion::from_complex(p.z1) + Quaternion::from_complex(p.z2) * Quaternion::J;
        assert_eq!(prod, p.assemble());
    }

    #[test]
    fn succeq_examples() {
        assert!(succeq(c(2.0, 3.0), c(7.0, 2.0)));
        assert!(succeq(c(5.0, 0.0), c(3.0, 0.0)));
        assert!(!succeq(c(3.0, 0.0), c(5.0, 0.0)));
        assert!(succeq(c(1.0, 1.0), c(1.0, 1.0)));
    }

    #[test]
    fn succ_zero_cases() {
        assert!(succ_zero(c(1.0, 0.0)));
        assert!(succ_zero(c(-1.0, 0.5)));
        assert!(!succ_zero(c(-1.0, 0.0)));
        assert!(!succ_zero(c(0.0, 0.0)));
        assert!(!succ_zero(c(3.0, -0.1)));
    }

    #[test]
    fn display_six_digits() {
        let q = Quaternion::new(1.0, -2.5, 1.0 / 3.0, 0.0);
        assert_eq!(q.to_string(), "1-2.5i+0.333333j+0k");
        assert_eq!(format_sig(123456789.0, 6), "1.23457e8");
        assert_eq!(format_sig(-42.0, 6), "-42");
        assert_eq!(format_sig(1.0e-7, 6), "1.00000e-7");
    }

    #[test]
    fn serde_as_four_array() {
        let q = Quaternion::new(1.0, -0.1, 3.5, 4.0);
        let s = serde_json::to_string(&q).unwrap();
        assert_eq!(s, "[1.0,-0.1,3.5,4.0]");
        let back: Quaternion = serde_json::from_str(&s).unwrap();
        assert_eq!(back, q);
        assert!(serde_json::from_str::<Quaternion>("[1,2,3]").is_err());
    }
}

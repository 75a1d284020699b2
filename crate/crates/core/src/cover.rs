//! The universal-cover monoid of E⁺(Z) and its rational group completion.
//!
//! An element is a pair `(A, s)` with `e^{is} = φ(A)`, where
//! `φ(A) = z(A)/|z(A)|` and `z(A) = (a+d) + i(b−c)`. We store `s` as the
//! integer `winding` with `s = Arg z(A) + 2π·winding`, `Arg ∈ (−π, π]`, which
//! makes equality decidable and all arithmetic exact.
//!
//! Multiplication is `(A, s)(B, t) = (AB, s + t + η(A, B))` with
//! `η(A, B) = Arg ζ(A, B)`, `ζ = z(AB)·conj z(A)·conj z(B)`. Writing
//! `A w = p w + q w̄` on `C`, `ζ` is a positive multiple of
//! `conj(1 + (q_A/p_A)(q̄_B/p_B))` and `|q/p| < 1` for `det > 0`, so
//! `Re ζ > 0`; that bound is checked at runtime.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::braid::BraidWord;
use crate::error::{Error, Result};
use crate::mat::{Mat2, Mat2Q, Mat2Z};
use crate::qq::{self, Q};

/// Exact Gaussian rational.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalComplex {
    pub re: Q,
    pub im: Q,
}

impl RationalComplex {
    pub fn new(re: Q, im: Q) -> Self {
        RationalComplex { re, im }
    }

    pub fn from_i64(re: i64, im: i64) -> Self {
        RationalComplex::new(qq::q(re), qq::q(im))
    }

    pub fn one() -> Self {
        RationalComplex::from_i64(1, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        RationalComplex::new(self.re.clone(), -self.im.clone())
    }

    pub fn mul(&self, o: &Self) -> Self {
        RationalComplex::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }

    pub fn sub(&self, o: &Self) -> Self {
        RationalComplex::new(&self.re - &o.re, &self.im - &o.im)
    }

    pub fn norm_sqr(&self) -> Q {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn scale(&self, k: &Q) -> Self {
        RationalComplex::new(&self.re * k, &self.im * k)
    }

    pub fn div(&self, o: &Self) -> Self {
        self.mul(&o.conj()).scale(&(Q::one() / o.norm_sqr()))
    }

    /// Whether `self` is a positive real multiple of `o` (both nonzero).
    pub fn same_direction(&self, o: &Self) -> bool {
        let cross = &self.re * &o.im - &self.im * &o.re;
        let dot = &self.re * &o.re + &self.im * &o.im;
        cross.is_zero() && dot.is_positive()
    }

    /// `Arg = π` exactly.
    pub fn is_negative_real(&self) -> bool {
        self.im.is_zero() && self.re.is_negative()
    }

    /// Principal argument in `(−π, π]`, for display and float oracles only.
    pub fn arg_f64(&self) -> f64 {
        let re = to_f64(&self.re);
        let im = to_f64(&self.im);
        if self.is_negative_real() {
            std::f64::consts::PI
        } else {
            im.atan2(re)
        }
    }
}

fn to_f64(x: &Q) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(f64::NAN)
}

impl fmt::Display for RationalComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}i", qq::fmt_q(&self.re), qq::fmt_q(&self.im))
    }
}

fn require_positive_det(m: &Mat2Q) -> Result<()> {
    let det = m.det();
    if det.is_positive() {
        Ok(())
    } else {
        Err(Error::NonPositiveDeterminant(qq::fmt_q(&det)))
    }
}

fn z_unchecked(m: &Mat2Q) -> RationalComplex {
    RationalComplex::new(&m.a + &m.d, &m.b - &m.c)
}

/// `z(m) = (a+d) + i(b−c)`; `φ(m)` is its unit normalization.
pub fn z_of(m: &Mat2Q) -> Result<RationalComplex> {
    require_positive_det(m)?;
    let z = z_unchecked(m);
    if z.is_zero() {
        return Err(Error::Inconsistency(format!("z vanishes for {m} with det > 0")));
    }
    Ok(z)
}

/// `ζ(A, B) = z(AB)·conj z(A)·conj z(B)`, so that `η(A, B) = Arg ζ`.
pub fn eta_zeta(ma: &Mat2Q, mb: &Mat2Q) -> Result<RationalComplex> {
    let za = z_of(ma)?;
    let zb = z_of(mb)?;
    let zab = z_of(&ma.mul(mb))?;
    let zeta = zab.mul(&za.conj()).mul(&zb.conj());
    if !zeta.re.is_positive() {
        return Err(Error::Inconsistency(format!(
            "Re ζ({ma}, {mb}) = {} is not positive",
            qq::fmt_q(&zeta.re)
        )));
    }
    Ok(zeta)
}

/// `α_A = (a² + c² − b² − d² − 2i(ab + cd)) / ((a+d)² + (b−c)²)`, the
/// conjugate of the ratio of the antilinear to the linear part of `A`.
pub fn alpha(m: &Mat2Q) -> RationalComplex {
    let Mat2 { a, b, c, d } = m;
    let den = (a + d) * (a + d) + (b - c) * (b - c);
    let re = a * a + c * c - b * b - d * d;
    let im = -(a * b + c * d) * qq::q(2);
    RationalComplex::new(re / &den, im / &den)
}

/// Independent route to the cocycle: `1 − α_A·conj(α_{B⁻¹})`, a positive
/// multiple of `e^{iη(A, B)}`.
pub fn eta_alpha(ma: &Mat2Q, mb: &Mat2Q) -> Result<RationalComplex> {
    require_positive_det(ma)?;
    require_positive_det(mb)?;
    let binv = mb.inverse()?;
    Ok(RationalComplex::one().sub(&alpha(ma).mul(&alpha(&binv).conj())))
}

fn upper_half(u: &RationalComplex) -> bool {
    // Arg ∈ (0, π]
    u.im.is_positive() || u.is_negative_real()
}

/// The integer `k` with `Arg u + Arg v = Arg(uv) + 2πk`, decided by sign
/// tests only. Always in `{−1, 0, 1}`.
pub fn wrap(u: &RationalComplex, v: &RationalComplex) -> i64 {
    let uv = u.mul(v);
    if upper_half(u) && upper_half(v) {
        // sum ∈ (0, 2π]
        match uv.im.cmp(&Q::zero()) {
            Ordering::Greater => 0,
            Ordering::Less => 1,
            Ordering::Equal => i64::from(uv.re.is_positive()),
        }
    } else if u.im.is_negative() && v.im.is_negative() {
        // sum ∈ (−2π, 0)
        match uv.im.cmp(&Q::zero()) {
            Ordering::Less => 0,
            Ordering::Greater => -1,
            Ordering::Equal => -1,
        }
    } else {
        0
    }
}

/// Winding carry of `(A, ·)(B, ·)`: `Arg z_A + Arg z_B + η = Arg z_AB + 2π·carry`.
pub fn carry(ma: &Mat2Q, mb: &Mat2Q) -> Result<i64> {
    let za = z_of(ma)?;
    let zb = z_of(mb)?;
    let zeta = eta_zeta(ma, mb)?;
    let w1 = wrap(&za, &zb);
    // ζ is a positive multiple of z_AB / (z_A z_B)
    let w2 = wrap(&za.mul(&zb), &zeta);
    let c = w1 + w2;
    if !(-1..=1).contains(&c) {
        return Err(Error::Inconsistency(format!("carry {c} out of range for {ma}, {mb}")));
    }
    Ok(c)
}

/// An element of the cover monoid over E⁺(Z).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoverElement {
    matrix: Mat2Z,
    winding: i64,
}

/// An element of the cover of GL2⁺(Q), the group completion.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalCoverElement {
    matrix: Mat2Q,
    winding: i64,
}

impl CoverElement {
    pub fn new(matrix: Mat2Z, winding: i64) -> Result<Self> {
        let det = matrix.det();
        if !det.is_positive() {
            return Err(Error::NonPositiveDeterminant(det.to_string()));
        }
        Ok(CoverElement { matrix, winding })
    }

    pub fn identity() -> Self {
        CoverElement { matrix: Mat2Z::identity(), winding: 0 }
    }

    pub fn matrix(&self) -> &Mat2Z {
        &self.matrix
    }

    pub fn winding(&self) -> i64 {
        self.winding
    }

    pub fn z(&self) -> RationalComplex {
        z_unchecked(&self.matrix.to_q())
    }

    /// The real parameter `s = Arg z + 2π·winding`, approximately.
    pub fn parameter_f64(&self) -> f64 {
        self.z().arg_f64() + std::f64::consts::TAU * self.winding as f64
    }

    pub fn embed(&self) -> RationalCoverElement {
        RationalCoverElement { matrix: self.matrix.to_q(), winding: self.winding }
    }

    /// Inverse inside the monoid; exists iff the matrix is in SL2(Z).
    pub fn inverse(&self) -> Result<Self> {
        if !self.matrix.det().is_one() {
            return Err(Error::NotInvertible);
        }
        let inv = self.embed().inverse();
        Ok(CoverElement {
            matrix: inv.matrix.to_z().expect("SL2 inverse is integral"),
            winding: inv.winding,
        })
    }
}

impl RationalCoverElement {
    pub fn new(matrix: Mat2Q, winding: i64) -> Result<Self> {
        require_positive_det(&matrix)?;
        Ok(RationalCoverElement { matrix, winding })
    }

    pub fn identity() -> Self {
        RationalCoverElement { matrix: Mat2Q::identity(), winding: 0 }
    }

    pub fn matrix(&self) -> &Mat2Q {
        &self.matrix
    }

    pub fn winding(&self) -> i64 {
        self.winding
    }

    pub fn mul(&self, o: &Self) -> Self {
        let c = carry(&self.matrix, &o.matrix).expect("cover invariants hold for det > 0");
        RationalCoverElement {
            matrix: self.matrix.mul(&o.matrix),
            winding: self.winding + o.winding + c,
        }
    }

    /// Two-sided inverse: `(A, w)⁻¹ = (A⁻¹, −w − carry(A, A⁻¹))`.
    pub fn inverse(&self) -> Self {
        let inv = self.matrix.inverse().expect("det > 0");
        let c = carry(&self.matrix, &inv).expect("cover invariants hold for det > 0");
        RationalCoverElement { matrix: inv, winding: -self.winding - c }
    }

    /// Back into the integral monoid when the matrix is integral.
    pub fn to_integral(&self) -> Option<CoverElement> {
        self.matrix
            .to_z()
            .map(|matrix| CoverElement { matrix, winding: self.winding })
    }
}

pub fn cover_mul(x: &CoverElement, y: &CoverElement) -> CoverElement {
    let c = carry(&x.matrix.to_q(), &y.matrix.to_q())
        .expect("cover invariants hold for det > 0");
    CoverElement {
        matrix: x.matrix.mul(&y.matrix),
        winding: x.winding + y.winding + c,
    }
}

fn generator_lift(letter: i8) -> CoverElement {
    let base = match letter.abs() {
        1 => CoverElement { matrix: Mat2Z::u1(), winding: 0 },
        _ => CoverElement { matrix: Mat2Z::u2(), winding: 0 },
    };
    if letter > 0 {
        base
    } else {
        base.inverse().expect("generators are unimodular")
    }
}

/// Product of the lifts `(U1, 0)`, `(U2, 0)` and their inverses along `w`.
pub fn lift_word(w: &BraidWord) -> CoverElement {
    w.letters()
        .iter()
        .fold(CoverElement::identity(), |acc, &l| cover_mul(&acc, &generator_lift(l)))
}

/// The lift of transposition sending `s` to `−s`.
///
/// `z(Aᵀ) = conj z(A)`, so `Arg z(Aᵀ) = −Arg z(A)` except on the boundary
/// `Arg z(A) = π`, where `−π − 2πw = π + 2π(−w − 1)`.
pub fn transpose_cover(x: &CoverElement) -> CoverElement {
    let boundary = x.z().is_negative_real();
    CoverElement {
        matrix: x.matrix.transpose(),
        winding: -x.winding - i64::from(boundary),
    }
}

pub fn transpose_rational_cover(x: &RationalCoverElement) -> RationalCoverElement {
    let boundary = z_unchecked(&x.matrix).is_negative_real();
    RationalCoverElement {
        matrix: x.matrix.transpose(),
        winding: -x.winding - i64::from(boundary),
    }
}

/// `(n·I, 0)`.
pub fn scalar_lift(n: i64) -> Result<CoverElement> {
    if n <= 0 {
        return Err(Error::InvalidArgument(format!("scalar must be positive, got {n}")));
    }
    Ok(CoverElement { matrix: Mat2Z::scalar(BigInt::from(n)), winding: 0 })
}

/// `(q·I, 0)` for a positive rational `q`, the inverse of a scalar lift when `q = 1/n`.
pub fn rational_scalar(q: &Q) -> Result<RationalCoverElement> {
    if !q.is_positive() {
        return Err(Error::InvalidArgument(format!("scalar must be positive, got {}", qq::fmt_q(q))));
    }
    Ok(RationalCoverElement { matrix: Mat2Q::scalar(q.clone()), winding: 0 })
}

/// Equality in the completed group; the winding representation is canonical.
pub fn completion_eq(x: &RationalCoverElement, y: &RationalCoverElement) -> bool {
    x == y
}

#[derive(Serialize)]
pub struct CoverDoc {
    pub matrix: Mat2Z,
    pub winding: i64,
    pub arg_num: [String; 2],
}

impl From<&CoverElement> for CoverDoc {
    fn from(x: &CoverElement) -> Self {
        let z = x.z();
        CoverDoc {
            matrix: x.matrix.clone(),
            winding: x.winding,
            arg_num: [qq::fmt_q(&z.re), qq::fmt_q(&z.im)],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(a: i64, b: i64, c: i64, d: i64) -> Mat2Q {
        Mat2Z::from_i64(a, b, c, d).to_q()
    }

    fn el(a: i64, b: i64, c: i64, d: i64, w: i64) -> CoverElement {
        CoverElement::new(Mat2Z::from_i64(a, b, c, d), w).unwrap()
    }

    #[test]
    fn z_examples() {
        assert_eq!(z_of(&m(1, 1, 0, 1)).unwrap(), RationalComplex::from_i64(2, 1));
        assert_eq!(z_of(&Mat2Q::identity()).unwrap(), RationalComplex::from_i64(2, 0));
        assert_eq!(z_of(&m(0, 1, -1, 0)).unwrap(), RationalComplex::from_i64(0, 2));
        assert!(matches!(z_of(&m(1, 0, 0, -1)), Err(Error::NonPositiveDeterminant(_))));
        assert!(matches!(z_of(&m(1, 2, 2, 4)), Err(Error::NonPositiveDeterminant(_))));
    }

    #[test]
    fn zeta_examples() {
        let u1 = m(1, 1, 0, 1);
        let u2 = m(1, 0, -1, 1);
        assert_eq!(eta_zeta(&u1, &u1).unwrap(), RationalComplex::from_i64(14, -2));
        assert!(eta_zeta(&u1, &u2)
            .unwrap()
            .same_direction(&RationalComplex::from_i64(11, 2)));
        let id = Mat2Q::identity();
        let zeta = eta_zeta(&id, &id).unwrap();
        assert!(zeta.im.is_zero() && zeta.re.is_positive());
    }

    #[test]
    fn alpha_route_matches_on_forced_values() {
        let u1 = m(1, 1, 0, 1);
        let u2 = m(1, 0, -1, 1);
        assert!(eta_alpha(&u1, &u1)
            .unwrap()
            .same_direction(&RationalComplex::from_i64(7, -1)));
        assert!(eta_alpha(&u1, &u2)
            .unwrap()
            .same_direction(&RationalComplex::from_i64(11, 2)));
    }

    #[test]
    fn wrap_boundaries() {
        let c = RationalComplex::from_i64;
        assert_eq!(wrap(&c(1, 1), &c(1, 1)), 0);
        assert_eq!(wrap(&c(-1, 1), &c(-1, 1)), 1);
        assert_eq!(wrap(&c(-1, -1), &c(-1, -1)), -1);
        // π + π = 2π wraps to 0
        assert_eq!(wrap(&c(-1, 0), &c(-1, 0)), 1);
        // π + π/2 = 3π/2 wraps to −π/2
        assert_eq!(wrap(&c(-1, 0), &c(0, 1)), 1);
        // −π/2 − π/2 = −π ↦ π
        assert_eq!(wrap(&c(0, -1), &c(0, -1)), -1);
        // π/2 + π/2 = π stays
        assert_eq!(wrap(&c(0, 1), &c(0, 1)), 0);
        assert_eq!(wrap(&c(-1, 0), &c(0, -1)), 0);
    }

    #[test]
    fn cover_mul_examples() {
        let u1 = el(1, 1, 0, 1, 0);
        assert_eq!(cover_mul(&u1, &u1), el(1, 2, 0, 1, 0));
        let a = el(3, 1, 2, 5, 4);
        assert_eq!(cover_mul(&CoverElement::identity(), &a), a);
        assert_eq!(cover_mul(&el(1, 0, 0, 1, 3), &el(1, 0, 0, 1, -3)), CoverElement::identity());
    }

    #[test]
    fn lift_word_examples() {
        let w = |s: &str| s.parse::<BraidWord>().unwrap();
        assert_eq!(lift_word(&w("a")), el(1, 1, 0, 1, 0));
        assert_eq!(lift_word(&BraidWord::identity()), CoverElement::identity());
        assert_eq!(lift_word(&w("ab").repeat(6)), el(1, 0, 0, 1, 1));
        assert_eq!(lift_word(&w("BA").repeat(6)), el(1, 0, 0, 1, -1));
    }

    #[test]
    fn minus_identity_sits_on_the_boundary() {
        // Δ² lifts to (−I, 0): half a turn, s = π
        let d2 = lift_word(&BraidWord::delta_pow(2));
        assert_eq!(d2, el(-1, 0, 0, -1, 0));
        assert!(d2.z().is_negative_real());
        assert_eq!(transpose_cover(&d2), el(-1, 0, 0, -1, -1));
        assert_eq!(cover_mul(&d2, &d2), el(1, 0, 0, 1, 1));
        let back = lift_word(&BraidWord::delta_pow(-2));
        assert_eq!(back, el(-1, 0, 0, -1, -1));
        assert_eq!(cover_mul(&d2, &back), CoverElement::identity());
    }

    #[test]
    fn transpose_examples() {
        assert_eq!(transpose_cover(&el(1, 1, 0, 1, 0)), el(1, 0, 1, 1, 0));
        assert_eq!(transpose_cover(&el(1, 0, 0, 1, 5)), el(1, 0, 0, 1, -5));
        assert_eq!(transpose_cover(&el(1, 0, 0, 1, 1)), el(1, 0, 0, 1, -1));
    }

    #[test]
    fn scalar_lift_examples() {
        assert_eq!(scalar_lift(1).unwrap(), CoverElement::identity());
        assert_eq!(scalar_lift(2).unwrap(), el(2, 0, 0, 2, 0));
        assert_eq!(scalar_lift(6).unwrap().z(), RationalComplex::from_i64(12, 0));
        assert!(scalar_lift(0).is_err());
        assert!(scalar_lift(-3).is_err());
    }

    #[test]
    fn completion_examples() {
        let x = el(2, 1, -3, 4, 2).embed();
        let two = scalar_lift(2).unwrap().embed();
        let half = rational_scalar(&qq::qf(1, 2)).unwrap();
        assert!(completion_eq(&x.mul(&two).mul(&half), &x));
        assert!(completion_eq(&half, &two.inverse()));
        assert!(!completion_eq(&el(1, 1, 0, 1, 0).embed(), &el(1, 1, 0, 1, 1).embed()));
    }

    #[test]
    fn inverse_only_in_sl2() {
        assert!(el(2, 0, 0, 1, 0).inverse().is_err());
        let x = el(2, 1, 1, 1, 3);
        assert_eq!(cover_mul(&x, &x.inverse().unwrap()), CoverElement::identity());
        assert_eq!(cover_mul(&x.inverse().unwrap(), &x), CoverElement::identity());
    }

    #[test]
    fn doc_layout() {
        let doc = CoverDoc::from(&el(1, 0, 0, 1, 1));
        assert_eq!(
            serde_json::to_string(&doc).unwrap(),
            r#"{"matrix":[[1,0],[0,1]],"winding":1,"arg_num":["2","0"]}"#
        );
    }
}

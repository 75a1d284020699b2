//! Exact 2×2 matrices over the integers and the rationals.
//!
//! `Mat2Z` carries the monoids E(Z) ⊇ E⁺(Z) ⊇ GL2(Z)∩E⁺ = SL2(Z) through
//! [`classify`], and `Mat2Q` carries GL2⁺(Q). Entries are arbitrary precision
//! since products in the isogeny monoid grow exponentially.
//!
//! Lattices are stored as row-style Hermite normal forms `[[a, b], [0, d]]`
//! with `a, d > 0` and `0 <= b < d`; the rows are a basis.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::qq::{self, Q};

/// Row-major `[[a, b], [c, d]]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat2<T> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub d: T,
}

pub type Mat2Z = Mat2<BigInt>;
pub type Mat2Q = Mat2<Q>;

impl<T> Mat2<T> {
    pub fn new(a: T, b: T, c: T, d: T) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn map<U>(&self, mut f: impl FnMut(&T) -> U) -> Mat2<U> {
        Mat2::new(f(&self.a), f(&self.b), f(&self.c), f(&self.d))
    }

    pub fn rows(&self) -> [[&T; 2]; 2] {
        [[&self.a, &self.b], [&self.c, &self.d]]
    }
}

impl<T> Mat2<T>
where
    T: Clone + Zero + One + Neg<Output = T>,
    for<'x> &'x T: Add<&'x T, Output = T> + Sub<&'x T, Output = T> + Mul<&'x T, Output = T>,
{
    pub fn identity() -> Self {
        Mat2::new(T::one(), T::zero(), T::zero(), T::one())
    }

    pub fn scalar(s: T) -> Self {
        Mat2::new(s.clone(), T::zero(), T::zero(), s)
    }

    pub fn det(&self) -> T {
        &(&self.a * &self.d) - &(&self.b * &self.c)
    }

    pub fn trace(&self) -> T {
        &self.a + &self.d
    }

    pub fn transpose(&self) -> Self {
        Mat2::new(self.a.clone(), self.c.clone(), self.b.clone(), self.d.clone())
    }

    /// `[[d, -b], [-c, a]]`, so that `m · adj(m) = det(m) · I`.
    pub fn adjugate(&self) -> Self {
        Mat2::new(self.d.clone(), -self.b.clone(), -self.c.clone(), self.a.clone())
    }

    pub fn mul(&self, o: &Self) -> Self {
        Mat2::new(
            &(&self.a * &o.a) + &(&self.b * &o.c),
            &(&self.a * &o.b) + &(&self.b * &o.d),
            &(&self.c * &o.a) + &(&self.d * &o.c),
            &(&self.c * &o.b) + &(&self.d * &o.d),
        )
    }

    /// Matrix times column vector.
    pub fn apply(&self, v: &[T; 2]) -> [T; 2] {
        [
            &(&self.a * &v[0]) + &(&self.b * &v[1]),
            &(&self.c * &v[0]) + &(&self.d * &v[1]),
        ]
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn is_identity(&self) -> bool
    where
        T: PartialEq,
    {
        *self == Self::identity()
    }
}

impl Mat2Z {
    pub fn from_i64(a: i64, b: i64, c: i64, d: i64) -> Self {
        Mat2::new(a.into(), b.into(), c.into(), d.into())
    }

    pub fn u1() -> Self {
        Self::from_i64(1, 1, 0, 1)
    }

    pub fn u2() -> Self {
        Self::from_i64(1, 0, -1, 1)
    }

    /// `U1 U2 U1 = U2 U1 U2`, the image of the half twist.
    pub fn rotation() -> Self {
        Self::from_i64(0, 1, -1, 0)
    }

    pub fn to_q(&self) -> Mat2Q {
        self.map(|x| qq::zi(x.clone()))
    }

    /// Inverse when it is again integral, i.e. `det = ±1`.
    pub fn inverse_integral(&self) -> Option<Mat2Z> {
        let det = self.det();
        if det.is_one() {
            Some(self.adjugate())
        } else if (-&det).is_one() {
            Some(self.adjugate().map(|x| -x))
        } else {
            None
        }
    }

    pub fn max_abs_entry(&self) -> BigInt {
        [&self.a, &self.b, &self.c, &self.d]
            .into_iter()
            .map(|x| x.abs())
            .max()
            .unwrap()
    }
}

impl Mat2Q {
    pub fn inverse(&self) -> Result<Mat2Q> {
        let det = self.det();
        if det.is_zero() {
            return Err(Error::Singular);
        }
        Ok(self.adjugate().map(|x| x / &det))
    }

    pub fn is_integral(&self) -> bool {
        [&self.a, &self.b, &self.c, &self.d].iter().all(|x| x.is_integer())
    }

    pub fn to_z(&self) -> Option<Mat2Z> {
        self.is_integral().then(|| self.map(|x| x.to_integer()))
    }
}

impl<T: fmt::Display> fmt::Display for Mat2<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

impl Serialize for Mat2Z {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        // Entries that fit in an i64 print as JSON numbers; huge ones as strings.
        let cell = |x: &BigInt| match i64::try_from(x) {
            Ok(v) => serde_json::Value::from(v),
            Err(_) => serde_json::Value::from(x.to_string()),
        };
        let rows = [[cell(&self.a), cell(&self.b)], [cell(&self.c), cell(&self.d)]];
        rows.serialize(s)
    }
}

impl Serialize for Mat2Q {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows = [
            [qq::fmt_q(&self.a), qq::fmt_q(&self.b)],
            [qq::fmt_q(&self.c), qq::fmt_q(&self.d)],
        ];
        rows.serialize(s)
    }
}

/// Parses `[[a,b],[c,d]]` with integer or `p/q` entries.
pub fn parse_mat2q(s: &str) -> Result<Mat2Q> {
    let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let inner = cleaned
        .strip_prefix("[[")
        .and_then(|r| r.strip_suffix("]]"))
        .ok_or_else(|| Error::Parse(format!("expected [[a,b],[c,d]], got {s:?}")))?;
    let (r1, r2) = inner
        .split_once("],[")
        .ok_or_else(|| Error::Parse(format!("expected two rows in {s:?}")))?;
    let cells: Vec<&str> = r1.split(',').chain(r2.split(',')).collect();
    if cells.len() != 4 || r1.split(',').count() != 2 {
        return Err(Error::Parse(format!("expected 2×2 entries in {s:?}")));
    }
    let v = cells
        .iter()
        .map(|c| qq::parse_q(c))
        .collect::<Result<Vec<_>>>()?;
    let mut it = v.into_iter();
    Ok(Mat2::new(
        it.next().unwrap(),
        it.next().unwrap(),
        it.next().unwrap(),
        it.next().unwrap(),
    ))
}

impl FromStr for Mat2Z {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_mat2q(s)?
            .to_z()
            .ok_or_else(|| Error::Parse(format!("expected integer entries in {s:?}")))
    }
}

impl FromStr for Mat2Q {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_mat2q(s)
    }
}

pub fn det(m: &Mat2Z) -> BigInt {
    m.det()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Membership {
    pub in_ez: bool,
    pub in_epz: bool,
    pub in_gl2z: bool,
    pub in_sl2z: bool,
}

pub fn classify(m: &Mat2Z) -> Membership {
    let det = m.det();
    Membership {
        in_ez: !det.is_zero(),
        in_epz: det.is_positive(),
        in_gl2z: det.abs().is_one(),
        in_sl2z: det.is_one(),
    }
}

/// Row HNF of the lattice spanned by an arbitrary list of integer rows.
///
/// Returns `None` when the rows span a lattice of rank < 2.
pub fn hnf_of_rows(rows: &[[BigInt; 2]]) -> Option<Mat2Z> {
    // pivot row accumulates gcd of the first column; the rest is pushed into
    // the second-coordinate gcd.
    let mut pivot = [BigInt::zero(), BigInt::zero()];
    let mut d = BigInt::zero();
    for r in rows {
        if r[0].is_zero() {
            d = d.gcd(&r[1]);
            continue;
        }
        if pivot[0].is_zero() {
            d = d.gcd(&pivot[1]);
            pivot = r.clone();
            continue;
        }
        let e = pivot[0].extended_gcd(&r[0]);
        let (g, s, t) = (e.gcd, e.x, e.y);
        let new_pivot = [
            &s * &pivot[0] + &t * &r[0],
            &s * &pivot[1] + &t * &r[1],
        ];
        let rp = &r[0] / &g;
        let pp = &pivot[0] / &g;
        let killed = &rp * &pivot[1] - &pp * &r[1];
        d = d.gcd(&killed);
        pivot = new_pivot;
    }
    if pivot[0].is_zero() || d.is_zero() {
        return None;
    }
    if pivot[0].is_negative() {
        pivot = [-&pivot[0], -&pivot[1]];
    }
    let d = d.abs();
    let b = pivot[1].mod_floor(&d);
    Some(Mat2::new(pivot[0].clone(), b, BigInt::zero(), d))
}

/// Canonical row HNF of the lattice with basis rows `r1`, `r2`.
pub fn row_hnf(r1: [BigInt; 2], r2: [BigInt; 2]) -> Result<Mat2Z> {
    hnf_of_rows(&[r1, r2]).ok_or(Error::RankDeficient)
}

/// Row HNF of a rational lattice: clear denominators, reduce, rescale.
pub fn hnf_of_rational_rows(rows: &[[Q; 2]]) -> Option<Mat2Q> {
    let l = qq::lcm_denominators(rows.iter().flatten());
    let lq = qq::zi(l.clone());
    let int_rows: Vec<[BigInt; 2]> = rows
        .iter()
        .map(|r| [(&r[0] * &lq).to_integer(), (&r[1] * &lq).to_integer()])
        .collect();
    hnf_of_rows(&int_rows).map(|h| h.map(|x| Q::new(x.clone(), l.clone())))
}

/// Whether `v` lies in the rational lattice with row HNF `h`.
pub fn hnf_contains(h: &Mat2Q, v: &[Q; 2]) -> bool {
    let k = &v[0] / &h.a;
    if !k.is_integer() {
        return false;
    }
    let rest = &v[1] - &k * &h.b;
    (rest / &h.d).is_integer()
}

/// Canonical representative of `v` modulo the lattice with row HNF `h`:
/// first coordinate in `[0, a)`, second in `[0, d)`.
pub fn hnf_reduce(h: &Mat2Q, v: &[Q; 2]) -> [Q; 2] {
    let k = (&v[0] / &h.a).floor();
    let x = &v[0] - &k * &h.a;
    let y0 = &v[1] - &k * &h.b;
    let y = qq::rem_pos(&y0, &h.d);
    [x, y]
}

//! The braid group on three strands: words, Garside normal forms, and the
//! representation to SL2(Z).
//!
//! Generators are `τ1 = a` and `τ2 = b`, with `Δ = aba = bab`. The positive
//! monoid has four proper simple elements `a, b, ab, ba`; every element is
//! uniquely `Δ^k · s1 ⋯ sm` with each adjacent pair left-weighted.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::mat::Mat2Z;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Gen {
    T1,
    T2,
}

impl Gen {
    fn flip(self) -> Gen {
        match self {
            Gen::T1 => Gen::T2,
            Gen::T2 => Gen::T1,
        }
    }
}

/// A word in `τ1^{±1}, τ2^{±1}`, stored as signed indices `±1, ±2`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BraidWord {
    letters: Vec<i8>,
}

impl BraidWord {
    pub fn new(letters: Vec<i8>) -> Result<Self> {
        if let Some(bad) = letters.iter().find(|l| !matches!(l, 1 | -1 | 2 | -2)) {
            return Err(Error::Parse(format!("braid letter must be ±1 or ±2, got {bad}")));
        }
        Ok(BraidWord { letters })
    }

    pub fn identity() -> Self {
        BraidWord::default()
    }

    pub fn letters(&self) -> &[i8] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// `Δ^k` spelled with `aba` (or its inverse `A B A`).
    pub fn delta_pow(k: i64) -> Self {
        let unit: [i8; 3] = if k >= 0 { [1, 2, 1] } else { [-1, -2, -1] };
        let letters = std::iter::repeat(unit)
            .take(k.unsigned_abs() as usize)
            .flatten()
            .collect();
        BraidWord { letters }
    }

    /// The word repeated `n` times.
    pub fn repeat(&self, n: usize) -> Self {
        BraidWord { letters: self.letters.repeat(n) }
    }

    pub fn inverse(&self) -> Self {
        BraidWord { letters: self.letters.iter().rev().map(|l| -l).collect() }
    }

    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|l| l.signum() as i64).sum()
    }

    /// Compact spelling with `a/A/b/B`.
    pub fn compact(&self) -> String {
        self.letters
            .iter()
            .map(|l| match l {
                1 => 'a',
                -1 => 'A',
                2 => 'b',
                _ => 'B',
            })
            .collect()
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

/// Accepts `"1 2 -1"` or letters `a/A/b/B` (spaces optional).
impl FromStr for BraidWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(BraidWord::identity());
        }
        if s.chars().all(|c| "aAbB".contains(c) || c.is_whitespace()) {
            let letters = s
                .chars()
                .filter(|c| !c.is_whitespace())
                .map(|c| match c {
                    'a' => 1,
                    'A' => -1,
                    'b' => 2,
                    _ => -2,
                })
                .collect();
            return Ok(BraidWord { letters });
        }
        let letters = s
            .split_whitespace()
            .map(|t| {
                t.parse::<i8>()
                    .map_err(|_| Error::Parse(format!("bad braid letter {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        BraidWord::new(letters)
    }
}

impl Serialize for BraidWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.letters.serialize(s)
    }
}

/// Concatenation followed by free reduction.
pub fn braid_mul(w1: &BraidWord, w2: &BraidWord) -> BraidWord {
    let mut out: Vec<i8> = Vec::with_capacity(w1.len() + w2.len());
    for &l in w1.letters.iter().chain(&w2.letters) {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    BraidWord { letters: out }
}

/// Proper simple elements of the positive monoid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Simple {
    A,
    B,
    AB,
    BA,
}

enum Product {
    Simple(Simple),
    Delta,
    NotSimple,
}

impl Simple {
    fn of(g: Gen) -> Simple {
        match g {
            Gen::T1 => Simple::A,
            Gen::T2 => Simple::B,
        }
    }

    pub fn letters(self) -> &'static [i8] {
        match self {
            Simple::A => &[1],
            Simple::B => &[2],
            Simple::AB => &[1, 2],
            Simple::BA => &[2, 1],
        }
    }

    fn last(self) -> Gen {
        match self {
            Simple::A | Simple::BA => Gen::T1,
            Simple::B | Simple::AB => Gen::T2,
        }
    }

    /// Conjugation by Δ swaps the generators.
    fn flip(self) -> Simple {
        match self {
            Simple::A => Simple::B,
            Simple::B => Simple::A,
            Simple::AB => Simple::BA,
            Simple::BA => Simple::AB,
        }
    }

    fn times(self, g: Gen) -> Product {
        match (self, g) {
            (Simple::A, Gen::T2) => Product::Simple(Simple::AB),
            (Simple::B, Gen::T1) => Product::Simple(Simple::BA),
            (Simple::AB, Gen::T1) | (Simple::BA, Gen::T2) => Product::Delta,
            _ => Product::NotSimple,
        }
    }
}

impl fmt::Display for Simple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Simple::A => "a",
            Simple::B => "b",
            Simple::AB => "ab",
            Simple::BA => "ba",
        })
    }
}

impl Serialize for Simple {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Left-greedy normal form `Δ^delta_power · factors`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct GarsideNormalForm {
    pub delta_power: i64,
    pub factors: Vec<Simple>,
}

impl GarsideNormalForm {
    /// Right multiplication by a positive generator, keeping the form normal.
    fn push(&mut self, g: Gen) {
        let Some(last) = self.factors.last_mut() else {
            self.factors.push(Simple::of(g));
            return;
        };
        match last.times(g) {
            Product::Simple(s) => *last = s,
            Product::NotSimple => self.factors.push(Simple::of(g)),
            Product::Delta => {
                // s1 ⋯ s_{m-1} Δ = Δ τ(s1) ⋯ τ(s_{m-1})
                self.factors.pop();
                for f in &mut self.factors {
                    *f = f.flip();
                }
                self.delta_power += 1;
            }
        }
    }

    /// Right multiplication by an inverse generator: `P x⁻¹ = Δ⁻¹ τ(P) (Δ x⁻¹)`.
    fn push_inverse(&mut self, g: Gen) {
        self.delta_power -= 1;
        for f in &mut self.factors {
            *f = f.flip();
        }
        // Δ a⁻¹ = ab, Δ b⁻¹ = ba
        self.push(g);
        self.push(g.flip());
    }

    pub fn to_word(&self) -> BraidWord {
        let mut letters = BraidWord::delta_pow(self.delta_power).letters;
        for f in &self.factors {
            letters.extend_from_slice(f.letters());
        }
        BraidWord { letters }
    }

    /// Whether every adjacent pair is left-weighted and no factor is trivial or Δ.
    pub fn is_left_weighted(&self) -> bool {
        self.factors.windows(2).all(|w| {
            let first_of_next = match w[1] {
                Simple::A | Simple::AB => Gen::T1,
                Simple::B | Simple::BA => Gen::T2,
            };
            w[0].last() == first_of_next
        })
    }
}

impl fmt::Display for GarsideNormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D^{}", self.delta_power)?;
        for s in &self.factors {
            write!(f, " . {s}")?;
        }
        Ok(())
    }
}

pub fn normal_form(w: &BraidWord) -> GarsideNormalForm {
    let mut nf = GarsideNormalForm::default();
    for &l in &w.letters {
        let g = if l.abs() == 1 { Gen::T1 } else { Gen::T2 };
        if l > 0 {
            nf.push(g);
        } else {
            nf.push_inverse(g);
        }
    }
    nf
}

pub fn braid_eq(w1: &BraidWord, w2: &BraidWord) -> bool {
    normal_form(w1) == normal_form(w2)
}

fn letter_matrix(l: i8) -> Mat2Z {
    match l {
        1 => Mat2Z::u1(),
        -1 => Mat2Z::from_i64(1, -1, 0, 1),
        2 => Mat2Z::u2(),
        _ => Mat2Z::from_i64(1, 0, 1, 1),
    }
}

/// Φ: τ1 ↦ U1, τ2 ↦ U2.
pub fn phi(w: &BraidWord) -> Mat2Z {
    w.letters
        .iter()
        .fold(Mat2Z::identity(), |acc, &l| acc.mul(&letter_matrix(l)))
}

/// For `w` in the kernel of Φ, the `k` with `w = Δ^{4k} = ((τ1τ2)⁶)^k`.
pub fn kernel_power(w: &BraidWord) -> Result<Option<i64>> {
    if !phi(w).is_identity() {
        return Ok(None);
    }
    let e = w.exponent_sum();
    if e.rem_euclid(12) != 0 {
        return Err(Error::Inconsistency(format!(
            "word in ker Φ has exponent sum {e}, not a multiple of 12"
        )));
    }
    let k = e / 12;
    let expected = GarsideNormalForm { delta_power: 4 * k, factors: vec![] };
    if normal_form(w) != expected {
        return Err(Error::Inconsistency(format!(
            "word in ker Φ is not Δ^{} (normal form {})",
            4 * k,
            normal_form(w)
        )));
    }
    Ok(Some(k))
}

/// A word with `phi(word) = m`, for `m ∈ SL2(Z)`.
///
/// The first column `(a, c)` is driven to `(±1, 0)` by left multiplication:
/// while `|a| >= |c|` (ties go to U1) the row operation `a ← a − q c` is the
/// letter power `U1^{-q}`; otherwise `c ← c − q a` is `U2^{q}`. The quotient
/// `q` is the one giving the remainder of least absolute value, rounding
/// half-way cases toward zero. A zero `a` (so `c = ±1`) is first bumped to
/// `a = 1` by `U1^{c}` and then cleared by `U2^{c}`. What remains is `±U1^n`, and `−I = Φ(Δ²)`.
pub fn lift_matrix(m: &Mat2Z) -> Result<BraidWord> {
    let det = m.det();
    if det != BigInt::from(1) {
        return Err(Error::NotSpecialLinear(det.to_string()));
    }
    // ops are left-multiplications applied in order; m = ops⁻¹ · rest
    let mut ops: Vec<(i8, BigInt)> = Vec::new();
    let mut cur = m.clone();
    let apply = |cur: &mut Mat2Z, ops: &mut Vec<(i8, BigInt)>, gen: i8, p: BigInt| {
        if p.is_zero() {
            return;
        }
        let g = if gen == 1 { Mat2Z::u1() } else { Mat2Z::u2() };
        let gp = power_of_generator(&g, &p);
        *cur = gp.mul(cur);
        ops.push((gen, p));
    };
    while !cur.c.is_zero() {
        if cur.a.is_zero() {
            // c = ±1: U1^c makes a = 1, then U2^c clears c
            let p = cur.c.clone();
            apply(&mut cur, &mut ops, 1, p.clone());
            apply(&mut cur, &mut ops, 2, p);
            continue;
        }
        if cur.a.abs() >= cur.c.abs() {
            let q = nearest_quotient(&cur.a, &cur.c);
            apply(&mut cur, &mut ops, 1, -q);
        } else {
            let q = nearest_quotient(&cur.c, &cur.a);
            // U2^p sends c ↦ c − p a
            apply(&mut cur, &mut ops, 2, q);
        }
    }
    // cur = [[s, n], [0, s]], s = ±1
    let mut letters: Vec<i8> = Vec::new();
    for (gen, p) in &ops {
        // inverse of gen^p is gen^{-p}; ops⁻¹ = op_1⁻¹ ⋯ op_k⁻¹
        push_power(&mut letters, *gen, &-p);
    }
    let n = if cur.a.is_positive() {
        cur.b.clone()
    } else {
        letters.extend(BraidWord::delta_pow(2).letters);
        -cur.b.clone()
    };
    push_power(&mut letters, 1, &n);
    let w = BraidWord::new(letters)?;
    debug_assert_eq!(&phi(&w), m);
    Ok(w)
}

fn power_of_generator(g: &Mat2Z, p: &BigInt) -> Mat2Z {
    // U1^p = [[1,p],[0,1]], U2^p = [[1,0],[-p,1]]
    if g == &Mat2Z::u1() {
        Mat2Z::new(1.into(), p.clone(), 0.into(), 1.into())
    } else {
        Mat2Z::new(1.into(), 0.into(), -p.clone(), 1.into())
    }
}

fn push_power(letters: &mut Vec<i8>, gen: i8, p: &BigInt) {
    let n: usize = p.abs().try_into().expect("exponent fits in usize");
    let l = if p.is_negative() { -gen } else { gen };
    letters.extend(std::iter::repeat(l).take(n));
}

/// `q` minimizing `|x − q y|`, half-way cases rounded toward zero.
fn nearest_quotient(x: &BigInt, y: &BigInt) -> BigInt {
    let (q, r) = x.div_mod_floor(y);
    // r has the sign of y; alternatives are q (remainder r) and q+1 (remainder r−y)
    let r2 = &r - y;
    match r.abs().cmp(&r2.abs()) {
        std::cmp::Ordering::Less => q,
        std::cmp::Ordering::Greater => q + 1,
        std::cmp::Ordering::Equal => {
            let q1: BigInt = &q + 1;
            if q.abs() <= q1.abs() {
                q
            } else {
                q1
            }
        }
    }
}

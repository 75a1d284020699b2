//! Independent oracles shared by the integration tests. Nothing here calls
//! into the algorithms it is used to check.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::{PI, TAU};

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::Rng;

use tori::braid::BraidWord;
use tori::mat::Mat2Z;

pub fn random_word(rng: &mut impl Rng, max_len: usize) -> BraidWord {
    let len = rng.gen_range(0..=max_len);
    let letters = (0..len).map(|_| [1i8, -1, 2, -2][rng.gen_range(0..4)]).collect();
    BraidWord::new(letters).unwrap()
}

pub fn random_positive(rng: &mut impl Rng, r: i64) -> Mat2Z {
    loop {
        let e: [i64; 4] = std::array::from_fn(|_| rng.gen_range(-r..=r));
        if e[0] * e[3] - e[1] * e[2] > 0 {
            return Mat2Z::from_i64(e[0], e[1], e[2], e[3]);
        }
    }
}

pub fn random_nonsingular(rng: &mut impl Rng, r: i64) -> Mat2Z {
    loop {
        let e: [i64; 4] = std::array::from_fn(|_| rng.gen_range(-r..=r));
        if e[0] * e[3] - e[1] * e[2] != 0 {
            return Mat2Z::from_i64(e[0], e[1], e[2], e[3]);
        }
    }
}

fn egcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a.signum() * a, a.signum(), 0)
    } else {
        let (g, x, y) = egcd(b, a.rem_euclid(b));
        (g, y, x - a.div_euclid(b) * y)
    }
}

/// A random element of SL2(Z) with all entries in `[-r, r]`.
pub fn random_sl2(rng: &mut impl Rng, r: i64) -> Mat2Z {
    loop {
        let a = rng.gen_range(-r..=r);
        let c = rng.gen_range(-r..=r);
        let (g, x, y) = egcd(a, c);
        if g != 1 {
            continue;
        }
        // a·x + c·y = 1, so [[a, −y], [c, x]] has determinant 1; shift by
        // multiples of the first column to land in the box
        let (b0, d0) = (-y, x);
        let k_range = -3 * r..=3 * r;
        let mut choices: Vec<(i64, i64)> = k_range
            .map(|k| (b0 + k * a, d0 + k * c))
            .filter(|(b, d)| b.abs() <= r && d.abs() <= r)
            .collect();
        if choices.is_empty() {
            continue;
        }
        let (b, d) = choices.swap_remove(rng.gen_range(0..choices.len()));
        let m = Mat2Z::from_i64(a, b, c, d);
        assert_eq!(m.det(), BigInt::from(1));
        return m;
    }
}

pub fn to_f64(m: &Mat2Z) -> [f64; 4] {
    [m.a.to_f64().unwrap(), m.b.to_f64().unwrap(), m.c.to_f64().unwrap(), m.d.to_f64().unwrap()]
}

fn mul_f(x: [f64; 4], y: [f64; 4]) -> [f64; 4] {
    [
        x[0] * y[0] + x[1] * y[2],
        x[0] * y[1] + x[1] * y[3],
        x[2] * y[0] + x[3] * y[2],
        x[2] * y[1] + x[3] * y[3],
    ]
}

fn arg_z(m: [f64; 4]) -> f64 {
    (m[1] - m[2]).atan2(m[0] + m[3])
}

/// Follows `t ↦ P·U^t` through the letters of `w`, starting at the identity
/// with parameter 0, and returns the continuously tracked `Arg z`.
pub fn path_lift_parameter(w: &BraidWord, steps: usize) -> f64 {
    let mut p = [1.0, 0.0, 0.0, 1.0];
    let mut s = 0.0;
    let mut prev = arg_z(p);
    for &l in w.letters() {
        let sign = f64::from(l.signum());
        let gen = |t: f64| -> [f64; 4] {
            if l.abs() == 1 {
                [1.0, sign * t, 0.0, 1.0]
            } else {
                [1.0, 0.0, -sign * t, 1.0]
            }
        };
        for k in 1..=steps {
            let m = mul_f(p, gen(k as f64 / steps as f64));
            let a = arg_z(m);
            let mut delta = a - prev;
            while delta > PI {
                delta -= TAU;
            }
            while delta < -PI {
                delta += TAU;
            }
            s += delta;
            prev = a;
        }
        p = mul_f(p, gen(1.0));
    }
    s
}

/// Winding number implied by the tracked parameter.
pub fn path_lift_winding(w: &BraidWord) -> i64 {
    let s = path_lift_parameter(w, 64);
    let end = {
        let mut p = [1.0, 0.0, 0.0, 1.0];
        for &l in w.letters() {
            let g = match l {
                1 => [1.0, 1.0, 0.0, 1.0],
                -1 => [1.0, -1.0, 0.0, 1.0],
                2 => [1.0, 0.0, -1.0, 1.0],
                _ => [1.0, 0.0, 1.0, 1.0],
            };
            p = mul_f(p, g);
        }
        arg_z(p)
    };
    ((s - end) / TAU).round() as i64
}

/// Laurent polynomials in `t` with integer coefficients.
pub type Laurent = BTreeMap<i32, i128>;

fn lmul(x: &Laurent, y: &Laurent) -> Laurent {
    let mut out = Laurent::new();
    for (i, a) in x {
        for (j, b) in y {
            *out.entry(i + j).or_insert(0) += a * b;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

fn ladd(x: &Laurent, y: &Laurent) -> Laurent {
    let mut out = x.clone();
    for (i, b) in y {
        *out.entry(*i).or_insert(0) += b;
    }
    out.retain(|_, c| *c != 0);
    out
}

fn mono(c: i128, e: i32) -> Laurent {
    let mut m = Laurent::new();
    if c != 0 {
        m.insert(e, c);
    }
    m
}

pub type BurauMatrix = [[Laurent; 2]; 2];

fn bmul(x: &BurauMatrix, y: &BurauMatrix) -> BurauMatrix {
    let e = |i: usize, j: usize| ladd(&lmul(&x[i][0], &y[0][j]), &lmul(&x[i][1], &y[1][j]));
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

/// The reduced Burau representation, faithful on B3.
pub fn burau(w: &BraidWord) -> BurauMatrix {
    let gen = |l: i8| -> BurauMatrix {
        match l {
            1 => [[mono(-1, 1), mono(1, 0)], [mono(0, 0), mono(1, 0)]],
            -1 => [[mono(-1, -1), mono(1, -1)], [mono(0, 0), mono(1, 0)]],
            2 => [[mono(1, 0), mono(0, 0)], [mono(1, 1), mono(-1, 1)]],
            _ => [[mono(1, 0), mono(0, 0)], [mono(1, 0), mono(-1, -1)]],
        }
    };
    let id: BurauMatrix = [[mono(1, 0), mono(0, 0)], [mono(0, 0), mono(1, 0)]];
    w.letters().iter().fold(id, |acc, &l| bmul(&acc, &gen(l)))
}

/// Sum of divisors from the prime factorization.
pub fn sigma1_by_factorization(mut n: u64) -> u64 {
    let mut total = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut term = 1;
            let mut pk = 1;
            while n % p == 0 {
                n /= p;
                pk *= p;
                term += pk;
            }
            total *= term;
        }
        p += 1;
    }
    if n > 1 {
        total *= n + 1;
    }
    total
}

/// Every subgroup of order `n` of `(Z/n)²`, each as its sorted element set,
/// found by closing all pairs of generators.
pub fn brute_force_subgroups(n: i64) -> BTreeSet<Vec<(i64, i64)>> {
    let mut out = BTreeSet::new();
    let pts: Vec<(i64, i64)> = (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).collect();
    for &g in &pts {
        for &h in &pts {
            let mut set = BTreeSet::new();
            for i in 0..n {
                for j in 0..n {
                    set.insert(((i * g.0 + j * h.0).rem_euclid(n), (i * g.1 + j * h.1).rem_euclid(n)));
                }
            }
            if set.len() as i64 == n {
                out.insert(set.into_iter().collect());
            }
        }
    }
    out
}

//! Secondary Hochschild homology of a 2-algebra as a bicomplex.
//!
//! `C_{p,q} = A^{⊗(p+1)(q+1)}` is a `(p+1) × (q+1)` grid of basis indices,
//! stored block-major: cell `(i, j)` sits at `i·(q+1) + j`. Block `i` is
//! the `i`-th tensor factor of the outer cyclic bar; inside a block the
//! inner cyclic bar runs over positions `j`. The vertical boundary merges
//! neighbouring positions in every block with the inner product, the
//! horizontal boundary merges neighbouring blocks cellwise with the outer
//! product.

use std::collections::HashMap;

use num_traits::One;
use serde::Serialize;

use super::algebra::{StructureConstantAlgebra, TwoAlgebra};
use super::bar::{expand_into, IdentityCheck};
use super::linalg::{Accumulator, SparseMatrix, SparseVec};
use crate::error::{Error, Result};
use crate::qq::Q;

/// Which product the inner (first) cyclic bar uses; the outer one uses the
/// other.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum IterationOrder {
    FirstMu1,
    FirstMu2,
}

impl std::str::FromStr for IterationOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "first-mu1" | "mu1" | "1" => Ok(IterationOrder::FirstMu1),
            "first-mu2" | "mu2" | "2" => Ok(IterationOrder::FirstMu2),
            _ => Err(Error::Parse(format!("unknown iteration order {s:?} (first-mu1 | first-mu2)"))),
        }
    }
}

fn sign(k: usize) -> Q {
    if k % 2 == 0 {
        Q::one()
    } else {
        -Q::one()
    }
}

fn basis(i: usize) -> SparseVec {
    vec![(i, Q::one())]
}

/// The basis words of one grid `C_{p,q}`.
#[derive(Clone, Debug)]
pub struct GridSpace {
    p: usize,
    q: usize,
    words: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl GridSpace {
    /// Normalized grids drop words with an all-unit block `i ≥ 1` or an
    /// all-unit position `j ≥ 1`.
    pub fn new(dim: usize, p: usize, q: usize, normalized: bool) -> Self {
        let (rows, cols) = (p + 1, q + 1);
        let cells = rows * cols;
        let total = dim.checked_pow(cells as u32).expect("grid too large");
        let mut words = Vec::new();
        let mut w = vec![0usize; cells];
        for mut idx in 0..total {
            for c in w.iter_mut() {
                *c = idx % dim;
                idx /= dim;
            }
            if normalized {
                let unit_row = (1..rows).any(|i| (0..cols).all(|j| w[i * cols + j] == 0));
                let unit_col = (1..cols).any(|j| (0..rows).all(|i| w[i * cols + j] == 0));
                if unit_row || unit_col {
                    continue;
                }
            }
            words.push(w.clone());
        }
        let index = words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        GridSpace { p, q, words, index }
    }

    pub fn size(&self) -> usize {
        self.words.len()
    }

    pub fn word(&self, i: usize) -> &[usize] {
        &self.words[i]
    }

    pub fn index(&self, w: &[usize]) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.p, self.q)
    }
}

type Terms = Vec<(Vec<SparseVec>, Q)>;

fn build(src: &GridSpace, dst: &GridSpace, f: impl Fn(&[usize]) -> Terms) -> SparseMatrix {
    let index = |w: &[usize]| dst.index(w);
    let columns = (0..src.size())
        .map(|j| {
            let mut acc = Accumulator::new();
            for (factors, c) in f(src.word(j)) {
                expand_into(&factors, &c, &index, &mut acc);
            }
            acc.finish()
        })
        .collect();
    SparseMatrix::from_columns(dst.size(), columns)
}

/// Horizontal faces `C_{p,q} → C_{p-1,q}`, `(−1)^i d_i`, wrap face optional.
fn horizontal_terms(outer: &StructureConstantAlgebra, p: usize, q: usize, w: &[usize], wrap: bool) -> Terms {
    let cols = q + 1;
    let block = |i: usize| &w[i * cols..(i + 1) * cols];
    let merged = |i: usize, k: usize| -> Vec<SparseVec> {
        (0..cols).map(|j| outer.product(block(i)[j], block(k)[j]).clone()).collect()
    };
    let mut out = Vec::new();
    for i in 0..p {
        let mut f: Vec<SparseVec> = Vec::with_capacity(p * cols);
        f.extend(w[..i * cols].iter().map(|&x| basis(x)));
        f.extend(merged(i, i + 1));
        f.extend(w[(i + 2) * cols..].iter().map(|&x| basis(x)));
        out.push((f, sign(i)));
    }
    if wrap && p > 0 {
        let mut f = merged(p, 0);
        f.extend(w[cols..p * cols].iter().map(|&x| basis(x)));
        out.push((f, sign(p)));
    }
    out
}

/// Vertical faces `C_{p,q} → C_{p,q-1}`, applied in every block at once.
fn vertical_terms(inner: &StructureConstantAlgebra, p: usize, q: usize, w: &[usize], wrap: bool) -> Terms {
    let cols = q + 1;
    let mut out = Vec::new();
    let faces = if wrap && q > 0 { q + 1 } else { q };
    for j in 0..faces {
        let mut f: Vec<SparseVec> = Vec::with_capacity((p + 1) * q);
        for i in 0..=p {
            let b = &w[i * cols..(i + 1) * cols];
            if j < q {
                f.extend(b[..j].iter().map(|&x| basis(x)));
                f.push(inner.product(b[j], b[j + 1]).clone());
                f.extend(b[j + 2..].iter().map(|&x| basis(x)));
            } else {
                f.push(inner.product(b[q], b[0]).clone());
                f.extend(b[1..q].iter().map(|&x| basis(x)));
            }
        }
        out.push((f, sign(j)));
    }
    out
}

fn products(a: &TwoAlgebra, order: IterationOrder) -> (&StructureConstantAlgebra, &StructureConstantAlgebra) {
    match order {
        IterationOrder::FirstMu1 => (&a.mu1, &a.mu2),
        IterationOrder::FirstMu2 => (&a.mu2, &a.mu1),
    }
}

/// How the two boundaries are combined on `C_{p,q}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Totalization {
    /// `D = b_h + (−1)^p b_v`.
    Standard,
    /// `D = (−1)^q b_h + b_v`, the totalization of the transposed bicomplex.
    Transposed,
}

/// The grid `C_{p,q}` for `p + q <= total_max` with both boundaries.
#[derive(Clone, Debug)]
pub struct BicyclicModule {
    total_max: usize,
    grids: HashMap<(usize, usize), GridSpace>,
    /// `C_{p,q} → C_{p-1,q}`.
    horizontal: HashMap<(usize, usize), SparseMatrix>,
    /// `C_{p,q} → C_{p,q-1}`.
    vertical: HashMap<(usize, usize), SparseMatrix>,
}

impl BicyclicModule {
    pub fn new(a: &TwoAlgebra, total_max: usize, order: IterationOrder, normalized: bool) -> Result<Self> {
        let report = a.validate();
        if !report.is_valid() {
            return Err(Error::InvalidAlgebra(format!(
                "not a 2-algebra: {} associativity, {} unitality, {} interchange violations{}",
                report.associativity.len(),
                report.unitality.len(),
                report.interchange.len(),
                if report.unit_mismatch { ", units differ" } else { "" }
            )));
        }
        let a = a.with_unit_first();
        let (inner, outer) = products(&a, order);
        let dim = a.dim();
        let mut grids = HashMap::new();
        for n in 0..=total_max {
            for p in 0..=n {
                grids.insert((p, n - p), GridSpace::new(dim, p, n - p, normalized));
            }
        }
        let mut horizontal = HashMap::new();
        let mut vertical = HashMap::new();
        for (&(p, q), src) in &grids {
            if p > 0 {
                let dst = &grids[&(p - 1, q)];
                horizontal.insert((p, q), build(src, dst, |w| horizontal_terms(outer, p, q, w, true)));
            }
            if q > 0 {
                let dst = &grids[&(p, q - 1)];
                vertical.insert((p, q), build(src, dst, |w| vertical_terms(inner, p, q, w, true)));
            }
        }
        Ok(BicyclicModule { total_max, grids, horizontal, vertical })
    }

    pub fn grid(&self, p: usize, q: usize) -> Option<&GridSpace> {
        self.grids.get(&(p, q))
    }

    pub fn horizontal(&self, p: usize, q: usize) -> Option<&SparseMatrix> {
        self.horizontal.get(&(p, q))
    }

    pub fn vertical(&self, p: usize, q: usize) -> Option<&SparseMatrix> {
        self.vertical.get(&(p, q))
    }

    /// `dim C_{p,q}` indexed `[p][q]` for `p + q <= total_max`.
    pub fn grid_dims(&self) -> Vec<Vec<usize>> {
        (0..=self.total_max)
            .map(|p| (0..=self.total_max - p).map(|q| self.grids[&(p, q)].size()).collect())
            .collect()
    }

    pub fn total_dims(&self) -> Vec<usize> {
        (0..=self.total_max)
            .map(|n| (0..=n).map(|p| self.grids[&(p, n - p)].size()).sum())
            .collect()
    }

    fn offsets(&self, n: usize) -> Vec<usize> {
        let mut off = Vec::with_capacity(n + 1);
        let mut acc = 0;
        for p in 0..=n {
            off.push(acc);
            acc += self.grids[&(p, n - p)].size();
        }
        off
    }

    /// `D: Tot_n → Tot_{n-1}`, blocks ordered by `p`.
    pub fn total_boundary(&self, n: usize, tot: Totalization) -> SparseMatrix {
        let dims = self.total_dims();
        if n == 0 {
            return SparseMatrix::zero(0, dims[0]);
        }
        let target = self.offsets(n - 1);
        let mut columns = Vec::with_capacity(dims[n]);
        for p in 0..=n {
            let q = n - p;
            let (hs, vs) = match tot {
                Totalization::Standard => (Q::one(), sign(p)),
                Totalization::Transposed => (sign(q), Q::one()),
            };
            for j in 0..self.grids[&(p, q)].size() {
                let mut acc = Accumulator::new();
                if let Some(h) = self.horizontal.get(&(p, q)) {
                    for (i, c) in h.column(j) {
                        acc.add(target[p - 1] + i, c * &hs);
                    }
                }
                if let Some(v) = self.vertical.get(&(p, q)) {
                    for (i, c) in v.column(j) {
                        acc.add(target[p] + i, c * &vs);
                    }
                }
                columns.push(acc.finish());
            }
        }
        SparseMatrix::from_columns(dims[n - 1], columns)
    }

    /// Betti numbers of the total complex in degrees `0 ..= total_max − 1`.
    pub fn betti(&self, tot: Totalization) -> Vec<usize> {
        let dims = self.total_dims();
        let ranks: Vec<usize> = (0..=self.total_max).map(|n| self.total_boundary(n, tot).rank()).collect();
        (0..self.total_max).map(|n| dims[n] - ranks[n] - ranks[n + 1]).collect()
    }

    /// `b_h² = 0`, `b_v² = 0`, `b_h b_v = b_v b_h`, and `D² = 0`.
    pub fn check_identities(&self) -> Vec<IdentityCheck> {
        let mut hh = (Vec::new(), Vec::new());
        let mut vv = (Vec::new(), Vec::new());
        let mut hv = (Vec::new(), Vec::new());
        for n in 0..=self.total_max {
            for p in 0..=n {
                let q = n - p;
                if p >= 2 {
                    hh.0.push(n);
                    let z = self.horizontal[&(p - 1, q)].compose(&self.horizontal[&(p, q)]);
                    if !z.is_zero() {
                        hh.1.push(n);
                    }
                }
                if q >= 2 {
                    vv.0.push(n);
                    let z = self.vertical[&(p, q - 1)].compose(&self.vertical[&(p, q)]);
                    if !z.is_zero() {
                        vv.1.push(n);
                    }
                }
                if p >= 1 && q >= 1 {
                    hv.0.push(n);
                    let a = self.horizontal[&(p, q - 1)].compose(&self.vertical[&(p, q)]);
                    let b = self.vertical[&(p - 1, q)].compose(&self.horizontal[&(p, q)]);
                    if a != b {
                        hv.1.push(n);
                    }
                }
            }
        }
        let tidy = |(mut d, mut f): (Vec<usize>, Vec<usize>)| {
            d.dedup();
            f.dedup();
            (d, f)
        };
        let mut out = Vec::new();
        for (name, (degrees, failures)) in [
            ("b_h∘b_h = 0", tidy(hh)),
            ("b_v∘b_v = 0", tidy(vv)),
            ("b_h∘b_v = b_v∘b_h", tidy(hv)),
        ] {
            out.push(IdentityCheck { name, degrees, failures });
        }
        let degrees: Vec<usize> = (2..=self.total_max).collect();
        let failures = degrees
            .iter()
            .copied()
            .filter(|&n| {
                !self
                    .total_boundary(n - 1, Totalization::Standard)
                    .compose(&self.total_boundary(n, Totalization::Standard))
                    .is_zero()
            })
            .collect();
        out.push(IdentityCheck { name: "D∘D = 0", degrees, failures });
        out
    }
}

/// Betti numbers of the total complex of the (normalized) bicomplex in
/// total degrees `0 ..= total_max − 2`, built through `total_max − 1`.
pub fn secondary_hh_betti(a: &TwoAlgebra, total_max: i64, order: IterationOrder) -> Result<Vec<usize>> {
    secondary_hh_betti_with(a, total_max, order, true, Totalization::Standard)
}

pub fn secondary_hh_betti_with(
    a: &TwoAlgebra,
    total_max: i64,
    order: IterationOrder,
    normalized: bool,
    tot: Totalization,
) -> Result<Vec<usize>> {
    if total_max < 0 {
        return Err(Error::InvalidArgument(format!("total_max must be >= 0, got {total_max}")));
    }
    if total_max < 2 {
        log::warn!("total_max = {total_max} leaves no degree with both boundaries present");
        return Ok(Vec::new());
    }
    Ok(BicyclicModule::new(a, total_max as usize - 1, order, normalized)?.betti(tot))
}

/// `(t⁽¹⁾, t⁽²⁾)` on the unnormalized `C_{p,q}`, in the unit-first basis.
///
/// `t⁽¹⁾` moves the last block to the front with sign `(−1)^p`. `t⁽²⁾`
/// moves the last position of every block to the front with one overall
/// sign `(−1)^q`, not one per block; this is the convention under which
/// `t⁽²⁾` commutes with the horizontal boundary.
pub fn bicyclic_rotations(a: &TwoAlgebra, p: usize, q: usize) -> (SparseMatrix, SparseMatrix) {
    let space = GridSpace::new(a.dim(), p, q, false);
    rotations_on(&space)
}

fn rotations_on(space: &GridSpace) -> (SparseMatrix, SparseMatrix) {
    let (p, q) = space.shape();
    let cols = q + 1;
    let t1 = build(space, space, |w| {
        let mut r = w[p * cols..].to_vec();
        r.extend_from_slice(&w[..p * cols]);
        vec![(r.iter().map(|&x| basis(x)).collect(), sign(p))]
    });
    let t2 = build(space, space, |w| {
        let r: Vec<SparseVec> = w
            .chunks(cols)
            .flat_map(|b| std::iter::once(b[q]).chain(b[..q].iter().copied()))
            .map(basis)
            .collect();
        vec![(r, sign(q))]
    });
    (t1, t2)
}

/// Relations between the rotations and the faces on the unnormalized
/// `C_{p,q}`: the orders, commutation, each rotation commuting with the
/// boundary in the other direction, and `b(1 − t) = (1 − t)b'` in its own.
pub fn rotation_identities(a: &TwoAlgebra, order: IterationOrder, p: usize, q: usize) -> Vec<IdentityCheck> {
    let a = a.with_unit_first();
    let (inner, outer) = products(&a, order);
    let dim = a.dim();
    let space = GridSpace::new(dim, p, q, false);
    let (t1, t2) = rotations_on(&space);
    let id = SparseMatrix::identity(space.size());
    let mut out = Vec::new();
    let mut check = |name: &'static str, ok: bool| {
        let failures = if ok { Vec::new() } else { vec![p, q] };
        out.push(IdentityCheck { name, degrees: vec![p, q], failures });
    };
    check("t1^(p+1) = id", t1.pow(p + 1) == id);
    check("t2^(q+1) = id", t2.pow(q + 1) == id);
    check("t1∘t2 = t2∘t1", t1.compose(&t2) == t2.compose(&t1));
    if q > 0 {
        let lower = GridSpace::new(dim, p, q - 1, false);
        let (l1, l2) = rotations_on(&lower);
        let bv = build(&space, &lower, |w| vertical_terms(inner, p, q, w, true));
        let bv_prime = build(&space, &lower, |w| vertical_terms(inner, p, q, w, false));
        check("t1∘b_v = b_v∘t1", l1.compose(&bv) == bv.compose(&t1));
        let lower_id = SparseMatrix::identity(lower.size());
        check(
            "b_v∘(1−t2) = (1−t2)∘b_v'",
            bv.compose(&id.sub(&t2)) == lower_id.sub(&l2).compose(&bv_prime),
        );
    }
    if p > 0 {
        let lower = GridSpace::new(dim, p - 1, q, false);
        let (l1, l2) = rotations_on(&lower);
        let bh = build(&space, &lower, |w| horizontal_terms(outer, p, q, w, true));
        let bh_prime = build(&space, &lower, |w| horizontal_terms(outer, p, q, w, false));
        check("t2∘b_h = b_h∘t2", l2.compose(&bh) == bh.compose(&t2));
        let lower_id = SparseMatrix::identity(lower.size());
        check(
            "b_h∘(1−t1) = (1−t1)∘b_h'",
            bh.compose(&id.sub(&t1)) == lower_id.sub(&l1).compose(&bh_prime),
        );
    }
    out
}

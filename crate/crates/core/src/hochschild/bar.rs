//! The cyclic bar complex `C_n = A^{⊗(n+1)}` with `b`, `t` and Connes' `B`.
//!
//! Chains are indexed by words `(a_0, ..., a_n)` of basis indices of an
//! algebra whose unit is basis vector 0. The normalized complex keeps only
//! words with `a_i ≠ 0` for `i ≥ 1`; operators on it are the unnormalized
//! formulas with degenerate words dropped.

use num_traits::One;
use serde::Serialize;

use super::algebra::StructureConstantAlgebra;
use super::linalg::{Accumulator, SparseMatrix, SparseVec};
use crate::error::{Error, Result};
use crate::qq::Q;

/// Mixed-radix numbering of words of a fixed length.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WordSpace {
    dim: usize,
    len: usize,
    normalized: bool,
}

impl WordSpace {
    pub fn new(dim: usize, len: usize, normalized: bool) -> Self {
        WordSpace { dim, len, normalized }
    }

    fn radix(&self, pos: usize) -> usize {
        if self.normalized && pos > 0 {
            self.dim - 1
        } else {
            self.dim
        }
    }

    fn offset(&self, pos: usize) -> usize {
        usize::from(self.normalized && pos > 0)
    }

    pub fn size(&self) -> usize {
        (0..self.len).map(|p| self.radix(p)).product()
    }

    pub fn index(&self, word: &[usize]) -> Option<usize> {
        debug_assert_eq!(word.len(), self.len);
        let mut idx = 0;
        for pos in (0..self.len).rev() {
            let d = word[pos].checked_sub(self.offset(pos))?;
            idx = idx * self.radix(pos) + d;
        }
        Some(idx)
    }

    pub fn word(&self, mut idx: usize) -> Vec<usize> {
        (0..self.len)
            .map(|pos| {
                let r = self.radix(pos);
                let d = idx % r;
                idx /= r;
                d + self.offset(pos)
            })
            .collect()
    }
}

/// Expands `coeff · f_0 ⊗ ... ⊗ f_m` into basis words of `dst`, dropping
/// words outside it.
pub(crate) fn expand_into(
    factors: &[SparseVec],
    coeff: &Q,
    index: &dyn Fn(&[usize]) -> Option<usize>,
    acc: &mut Accumulator,
) {
    fn go(
        factors: &[SparseVec],
        pos: usize,
        word: &mut Vec<usize>,
        coeff: Q,
        index: &dyn Fn(&[usize]) -> Option<usize>,
        acc: &mut Accumulator,
    ) {
        if pos == factors.len() {
            if let Some(i) = index(word) {
                acc.add(i, coeff);
            }
            return;
        }
        for (k, c) in &factors[pos] {
            word.push(*k);
            go(factors, pos + 1, word, &coeff * c, index, acc);
            word.pop();
        }
    }
    let mut word = Vec::with_capacity(factors.len());
    go(factors, 0, &mut word, coeff.clone(), index, acc);
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

/// Matrix of the linear map sending the word `w` of `src` to
/// `Σ c · (f_0 ⊗ ... ⊗ f_m)` over the terms returned by `f(w)`.
fn build(src: WordSpace, dst: WordSpace, f: impl Fn(&[usize]) -> Vec<(Vec<SparseVec>, Q)>) -> SparseMatrix {
    let index = |w: &[usize]| dst.index(w);
    let columns = (0..src.size())
        .map(|j| {
            let mut acc = Accumulator::new();
            for (factors, c) in f(&src.word(j)) {
                expand_into(&factors, &c, &index, &mut acc);
            }
            acc.finish()
        })
        .collect();
    SparseMatrix::from_columns(dst.size(), columns)
}

/// The faces `d_0, ..., d_{n-1}` of `A^{⊗(n+1)}`, plus the wrap face `d_n`
/// when `wrap` is set, with signs `(−1)^i`.
pub(crate) fn hochschild_terms(a: &StructureConstantAlgebra, w: &[usize], wrap: bool) -> Vec<(Vec<SparseVec>, Q)> {
    let n = w.len() - 1;
    let mut out = Vec::with_capacity(n + 1);
    for i in 0..n {
        let mut f: Vec<SparseVec> = Vec::with_capacity(n);
        f.extend(w[..i].iter().map(|&x| basis(x)));
        f.push(a.product(w[i], w[i + 1]).clone());
        f.extend(w[i + 2..].iter().map(|&x| basis(x)));
        out.push((f, sign(i)));
    }
    if wrap && n > 0 {
        let mut f = vec![a.product(w[n], w[0]).clone()];
        f.extend(w[1..n].iter().map(|&x| basis(x)));
        out.push((f, sign(n)));
    }
    out
}

fn rotate_right(w: &[usize], k: usize) -> Vec<usize> {
    let m = w.len();
    (0..m).map(|i| w[(i + m - k % m) % m]).collect()
}

#[derive(Clone, Debug)]
pub struct ChainComplexQ {
    dims: Vec<usize>,
    /// `boundary[n]: C_n → C_{n-1}`; `boundary[0]` is the zero map to 0.
    boundary: Vec<SparseMatrix>,
    /// `t_n` per degree, when present.
    cyclic: Option<Vec<SparseMatrix>>,
    /// `B_n: C_n → C_{n+1}` for `n < top`.
    connes: Option<Vec<SparseMatrix>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub degrees: Vec<usize>,
    /// Degrees where the identity fails.
    pub failures: Vec<usize>,
}

impl IdentityCheck {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

impl ChainComplexQ {
    pub fn new(boundary: Vec<SparseMatrix>) -> Result<Self> {
        let dims: Vec<usize> = boundary.iter().map(SparseMatrix::cols).collect();
        for n in 1..boundary.len() {
            if boundary[n].rows() != dims[n - 1] {
                return Err(Error::InvalidArgument(format!("boundary {n} has the wrong target")));
            }
        }
        if boundary.first().map_or(true, |b| b.rows() != 0) {
            return Err(Error::InvalidArgument("boundary 0 must map to the zero space".into()));
        }
        Ok(ChainComplexQ { dims, boundary, cyclic: None, connes: None })
    }

    pub fn top_degree(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn boundary(&self, n: usize) -> &SparseMatrix {
        &self.boundary[n]
    }

    pub fn cyclic(&self, n: usize) -> Option<&SparseMatrix> {
        self.cyclic.as_ref().map(|t| &t[n])
    }

    pub fn connes(&self, n: usize) -> Option<&SparseMatrix> {
        self.connes.as_ref().and_then(|b| b.get(n))
    }

    /// Betti numbers in degrees `0 ..= top − 1`, the range where both the
    /// incoming and outgoing boundaries are present.
    pub fn betti(&self) -> Vec<usize> {
        let ranks: Vec<usize> = self.boundary.iter().map(SparseMatrix::rank).collect();
        (0..self.top_degree()).map(|n| self.dims[n] - ranks[n] - ranks[n + 1]).collect()
    }

    pub fn check_identities(&self) -> Vec<IdentityCheck> {
        let top = self.top_degree();
        let mut out = Vec::new();
        let degrees: Vec<usize> = (2..=top).collect();
        let failures = degrees
            .iter()
            .copied()
            .filter(|&n| !self.boundary[n - 1].compose(&self.boundary[n]).is_zero())
            .collect();
        out.push(IdentityCheck { name: "b∘b = 0", degrees, failures });
        if let Some(t) = &self.cyclic {
            let degrees: Vec<usize> = (0..=top).collect();
            let failures = degrees
                .iter()
                .copied()
                .filter(|&n| t[n].pow(n + 1) != SparseMatrix::identity(self.dims[n]))
                .collect();
            out.push(IdentityCheck { name: "t^(n+1) = id", degrees, failures });
        }
        if let Some(bb) = &self.connes {
            let degrees: Vec<usize> = (0..top.saturating_sub(1)).collect();
            let failures = degrees
                .iter()
                .copied()
                .filter(|&n| !bb[n + 1].compose(&bb[n]).is_zero())
                .collect();
            out.push(IdentityCheck { name: "B∘B = 0", degrees, failures });
            let degrees: Vec<usize> = (0..top).collect();
            let failures = degrees
                .iter()
                .copied()
                .filter(|&n| {
                    let lhs = self.boundary[n + 1].compose(&bb[n]);
                    let sum = if n == 0 { lhs } else { lhs.add(&bb[n - 1].compose(&self.boundary[n])) };
                    !sum.is_zero()
                })
                .collect();
            out.push(IdentityCheck { name: "b∘B + B∘b = 0", degrees, failures });
        }
        out
    }
}

/// The cyclic bar complex of `a` in degrees `0 ..= n_max`.
///
/// The algebra is first rewritten with the unit as basis vector 0, so
/// chain bases refer to [`StructureConstantAlgebra::with_unit_first`].
/// The unnormalized complex carries `t`; both carry `B`.
pub fn cyclic_bar(a: &StructureConstantAlgebra, n_max: i64, normalized: bool) -> Result<ChainComplexQ> {
    if n_max < 0 {
        return Err(Error::InvalidArgument(format!("n_max must be >= 0, got {n_max}")));
    }
    let n_max = n_max as usize;
    let a = a.with_unit_first();
    let dim = a.dim();
    let space = |n: usize| WordSpace::new(dim, n + 1, normalized);

    let mut boundary = vec![SparseMatrix::zero(0, space(0).size())];
    for n in 1..=n_max {
        boundary.push(build(space(n), space(n - 1), |w| hochschild_terms(&a, w, true)));
    }

    // t_n = (−1)^n · (a_0, ..., a_n) ↦ (a_n, a_0, ..., a_{n-1})
    let cyclic = (!normalized).then(|| {
        (0..=n_max)
            .map(|n| build(space(n), space(n), |w| vec![(w_basis(&rotate_right(w, 1)), sign(n))]))
            .collect::<Vec<_>>()
    });

    // normalized: B = s·N; unnormalized: B = (1 − t)·s·N, s(x) = 1 ⊗ x
    let connes = (0..n_max)
        .map(|n| {
            let sn = build(space(n), space(n + 1), |w| {
                (0..=n)
                    .map(|i| {
                        let mut word = vec![0];
                        word.extend(rotate_right(w, i));
                        (w_basis(&word), sign(n * i))
                    })
                    .collect()
            });
            match &cyclic {
                Some(t) => {
                    let id = SparseMatrix::identity(space(n + 1).size());
                    id.sub(&t[n + 1]).compose(&sn)
                }
                None => sn,
            }
        })
        .collect();

    let mut c = ChainComplexQ::new(boundary)?;
    c.cyclic = cyclic;
    c.connes = Some(connes);
    Ok(c)
}

fn w_basis(w: &[usize]) -> Vec<SparseVec> {
    w.iter().map(|&x| basis(x)).collect()
}

/// `dim HH_n(a)` for `0 <= n <= n_max − 2`, from the normalized complex
/// built through degree `n_max − 1`.
pub fn hh_betti(a: &StructureConstantAlgebra, n_max: i64) -> Result<Vec<usize>> {
    hh_betti_with(a, n_max, true)
}

pub fn hh_betti_with(a: &StructureConstantAlgebra, n_max: i64, normalized: bool) -> Result<Vec<usize>> {
    if n_max < 0 {
        return Err(Error::InvalidArgument(format!("n_max must be >= 0, got {n_max}")));
    }
    if n_max < 2 {
        log::warn!("n_max = {n_max} leaves no degree with both boundaries present");
        return Ok(Vec::new());
    }
    Ok(cyclic_bar(a, n_max - 1, normalized)?.betti())
}

/// `dim A/[A, A]`.
pub fn hh0_direct(a: &StructureConstantAlgebra) -> usize {
    let n = a.dim();
    let mut columns = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let mut acc = Accumulator::new();
            for (k, c) in a.product(i, j) {
                acc.add(*k, c.clone());
            }
            for (k, c) in a.product(j, i) {
                acc.add(*k, -c.clone());
            }
            let v = acc.finish();
            if !v.is_empty() {
                columns.push(v);
            }
        }
    }
    n - SparseMatrix::from_columns(n, columns).rank()
}

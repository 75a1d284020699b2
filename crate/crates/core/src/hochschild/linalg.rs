//! Sparse matrices over Q and exact rank.
//!
//! Columns are sorted `(row, value)` lists without explicit zeros. Rank is
//! computed per connected component of the row/column incidence graph,
//! each by fraction-free elimination over the integers.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::qq::{self, Q};

pub type SparseVec = Vec<(usize, Q)>;

/// Accumulates `(index, coefficient)` terms into a sorted sparse vector.
#[derive(Default)]
pub struct Accumulator {
    terms: HashMap<usize, Q>,
}

impl Accumulator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, i: usize, c: Q) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(i).or_insert_with(Q::zero);
        *e += c;
    }

    pub fn finish(self) -> SparseVec {
        let mut v: SparseVec = self.terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        v.sort_unstable_by_key(|(i, _)| *i);
        v
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    columns: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, columns: vec![Vec::new(); cols] }
    }

    pub fn identity(n: usize) -> Self {
        let columns = (0..n).map(|i| vec![(i, Q::one())]).collect();
        SparseMatrix { rows: n, cols: n, columns }
    }

    pub fn from_columns(rows: usize, columns: Vec<SparseVec>) -> Self {
        debug_assert!(columns.iter().flatten().all(|(r, c)| *r < rows && !c.is_zero()));
        SparseMatrix { rows, cols: columns.len(), columns }
    }

    /// Dense row-major input, mostly for tests.
    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let columns = (0..ncols)
            .map(|j| {
                (0..nrows)
                    .filter(|&i| rows[i][j] != 0)
                    .map(|i| (i, qq::q(rows[i][j])))
                    .collect()
            })
            .collect();
        SparseMatrix { rows: nrows, cols: ncols, columns }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> &SparseVec {
        &self.columns[j]
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    pub fn entry(&self, i: usize, j: usize) -> Q {
        self.columns[j]
            .binary_search_by_key(&i, |(r, _)| *r)
            .map(|k| self.columns[j][k].1.clone())
            .unwrap_or_else(|_| Q::zero())
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut acc = Accumulator::new();
        for (j, x) in v {
            for (i, c) in &self.columns[*j] {
                acc.add(*i, c * x);
            }
        }
        acc.finish()
    }

    /// `self ∘ rhs` (apply `rhs` first).
    pub fn compose(&self, rhs: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in composition");
        let columns = rhs.columns.iter().map(|c| self.apply(c)).collect();
        SparseMatrix { rows: self.rows, cols: rhs.cols, columns }
    }

    pub fn linear_combination(&self, a: &Q, rhs: &SparseMatrix, b: &Q) -> SparseMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "dimension mismatch in sum");
        let columns = self
            .columns
            .iter()
            .zip(&rhs.columns)
            .map(|(x, y)| {
                let mut acc = Accumulator::new();
                for (i, c) in x {
                    acc.add(*i, c * a);
                }
                for (i, c) in y {
                    acc.add(*i, c * b);
                }
                acc.finish()
            })
            .collect();
        SparseMatrix { rows: self.rows, cols: self.cols, columns }
    }

    pub fn add(&self, rhs: &SparseMatrix) -> SparseMatrix {
        self.linear_combination(&Q::one(), rhs, &Q::one())
    }

    pub fn sub(&self, rhs: &SparseMatrix) -> SparseMatrix {
        self.linear_combination(&Q::one(), rhs, &-Q::one())
    }

    pub fn scale(&self, k: &Q) -> SparseMatrix {
        let zero = SparseMatrix::zero(self.rows, self.cols);
        self.linear_combination(k, &zero, &Q::zero())
    }

    pub fn pow(&self, e: usize) -> SparseMatrix {
        assert_eq!(self.rows, self.cols);
        (0..e).fold(SparseMatrix::identity(self.rows), |acc, _| self.compose(&acc))
    }

    /// Exact rank over Q.
    pub fn rank(&self) -> usize {
        rank_of_columns(self.rows, &self.columns)
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}

type IntVec = Vec<(usize, BigInt)>;

fn to_primitive_integer(v: &SparseVec) -> IntVec {
    let l = qq::lcm_denominators(v.iter().map(|(_, c)| c));
    let ints: IntVec = v.iter().map(|(i, c)| (*i, (c * qq::zi(l.clone())).to_integer())).collect();
    make_primitive(ints)
}

fn make_primitive(mut v: IntVec) -> IntVec {
    let g = v.iter().fold(BigInt::zero(), |g, (_, c)| g.gcd(c));
    if !g.is_zero() && !g.is_one() {
        for (_, c) in &mut v {
            *c = &*c / &g;
        }
    }
    v
}

/// `p_lead·v − v_lead·p`, which clears the leading entry of `v`.
fn eliminate(v: &IntVec, p: &IntVec) -> IntVec {
    let vl = &v[0].1;
    let pl = &p[0].1;
    let g = vl.gcd(pl);
    let (fv, fp) = (pl / &g, vl / &g);
    let mut out = Vec::with_capacity(v.len() + p.len());
    let (mut a, mut b) = (1, 1);
    while a < v.len() || b < p.len() {
        let ia = v.get(a).map(|x| x.0);
        let ib = p.get(b).map(|x| x.0);
        match (ia, ib) {
            (Some(x), Some(y)) if x == y => {
                let c = &fv * &v[a].1 - &fp * &p[b].1;
                if !c.is_zero() {
                    out.push((x, c));
                }
                a += 1;
                b += 1;
            }
            (Some(x), Some(y)) if x < y => {
                out.push((x, &fv * &v[a].1));
                a += 1;
            }
            (Some(x), None) => {
                out.push((x, &fv * &v[a].1));
                a += 1;
            }
            (_, Some(y)) => {
                out.push((y, -(&fp * &p[b].1)));
                b += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    make_primitive(out)
}

fn rank_of_block(columns: &[&SparseVec], nrows: usize) -> usize {
    let mut pivots: HashMap<usize, IntVec> = HashMap::new();
    // sparse columns first keeps fill-in down
    let mut order: Vec<&&SparseVec> = columns.iter().collect();
    order.sort_by_key(|c| c.len());
    for col in order {
        if pivots.len() == nrows {
            break;
        }
        let mut v = to_primitive_integer(col);
        while let Some(&(lead, _)) = v.first() {
            match pivots.get(&lead) {
                Some(p) => v = eliminate(&v, p),
                None => {
                    if v[0].1.is_negative() {
                        for (_, c) in &mut v {
                            *c = -&*c;
                        }
                    }
                    pivots.insert(lead, v);
                    break;
                }
            }
        }
    }
    pivots.len()
}

pub fn rank_of_columns(nrows: usize, columns: &[SparseVec]) -> usize {
    let ncols = columns.len();
    let mut uf = UnionFind::new(nrows + ncols);
    for (j, col) in columns.iter().enumerate() {
        for (i, _) in col {
            uf.union(nrows + j, *i);
        }
    }
    let mut blocks: HashMap<usize, (Vec<&SparseVec>, usize)> = HashMap::new();
    for (j, col) in columns.iter().enumerate() {
        if !col.is_empty() {
            let root = uf.find(nrows + j);
            blocks.entry(root).or_default().0.push(col);
        }
    }
    for i in 0..nrows {
        let root = uf.find(i);
        if let Some(b) = blocks.get_mut(&root) {
            b.1 += 1;
        }
    }
    blocks.values().map(|(cols, nr)| rank_of_block(cols, *nr)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Dense Gaussian elimination over Q, the textbook way.
    fn dense_rank(rows: &[Vec<i64>]) -> usize {
        let mut m: Vec<Vec<Q>> = rows.iter().map(|r| r.iter().map(|&x| qq::q(x)).collect()).collect();
        let ncols = m.first().map_or(0, |r| r.len());
        let mut rank = 0;
        for c in 0..ncols {
            let Some(p) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else { continue };
            m.swap(rank, p);
            for r in 0..m.len() {
                if r != rank && !m[r][c].is_zero() {
                    let f = &m[r][c] / &m[rank][c];
                    for k in 0..ncols {
                        let d = &f * &m[rank][k];
                        m[r][k] -= d;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    #[test]
    fn rank_small_cases() {
        let cases: Vec<Vec<Vec<i64>>> = vec![
            vec![vec![1, 2], vec![2, 4]],
            vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 0]],
            vec![vec![2, 3, 5], vec![4, 6, 10], vec![1, 0, 1]],
            vec![vec![0, 0], vec![0, 0]],
            vec![vec![1, -1, 0, 0], vec![0, 0, 3, 3], vec![5, -5, 0, 0]],
        ];
        for m in cases {
            assert_eq!(SparseMatrix::from_dense(&m).rank(), dense_rank(&m), "{m:?}");
        }
    }

    #[test]
    fn compose_and_identity() {
        let a = SparseMatrix::from_dense(&[vec![1, 2], vec![0, 1]]);
        let b = SparseMatrix::from_dense(&[vec![1, -2], vec![0, 1]]);
        assert_eq!(a.compose(&b), SparseMatrix::identity(2));
        assert_eq!(a.pow(3), SparseMatrix::from_dense(&[vec![1, 6], vec![0, 1]]));
        assert!(a.sub(&a).is_zero());
        assert_eq!(a.entry(0, 1), qq::q(2));
    }

    proptest::proptest! {
        #[test]
        fn rank_matches_dense(entries in proptest::collection::vec(-2i64..=2, 30)) {
            let m: Vec<Vec<i64>> = entries.chunks(6).map(|r| r.to_vec()).collect();
            proptest::prop_assert_eq!(SparseMatrix::from_dense(&m).rank(), dense_rank(&m));
        }
    }
}

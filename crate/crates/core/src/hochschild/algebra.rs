//! Finite-dimensional algebras over Q given by structure constants.

use std::fmt;
use std::path::Path;

use num_traits::{One, Zero};
use serde::Serialize;

use super::linalg::{Accumulator, SparseVec};
use crate::error::{Error, Result};
use crate::qq::{self, Q};

/// `e_i · e_j = Σ_k c[i][j][k] e_k`, stored sparsely per pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureConstantAlgebra {
    labels: Vec<String>,
    unit: Vec<Q>,
    table: Vec<Vec<SparseVec>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    /// `(i, j, k, l)` with `((e_i e_j) e_k)_l ≠ (e_i (e_j e_k))_l`.
    pub associativity: Vec<[usize; 4]>,
    /// Basis indices `i` with `1·e_i ≠ e_i` or `e_i·1 ≠ e_i`.
    pub unitality: Vec<usize>,
    /// `(i, j, k, l)` with `μ2(μ1(e_i,e_j), μ1(e_k,e_l)) ≠ μ1(μ2(e_i,e_k), μ2(e_j,e_l))`.
    pub interchange: Vec<[usize; 4]>,
    /// Set when the two products of a 2-algebra have different units.
    pub unit_mismatch: bool,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.associativity.is_empty()
            && self.unitality.is_empty()
            && self.interchange.is_empty()
            && !self.unit_mismatch
    }
}

fn unit_vector(dim: usize, i: usize) -> Vec<Q> {
    (0..dim).map(|k| if k == i { Q::one() } else { Q::zero() }).collect()
}

fn dense_to_sparse(v: &[Q]) -> SparseVec {
    v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, c.clone())).collect()
}

impl StructureConstantAlgebra {
    /// `constants[i][j]` is the coordinate vector of `e_i e_j`.
    pub fn new(labels: Vec<String>, unit: Vec<Q>, constants: Vec<Vec<Vec<Q>>>) -> Result<Self> {
        let dim = labels.len();
        if dim == 0 {
            return Err(Error::InvalidAlgebra("dimension must be positive".into()));
        }
        if unit.len() != dim {
            return Err(Error::InvalidAlgebra(format!("unit has {} entries, expected {dim}", unit.len())));
        }
        let ok = constants.len() == dim
            && constants.iter().all(|row| row.len() == dim && row.iter().all(|v| v.len() == dim));
        if !ok {
            return Err(Error::InvalidAlgebra(format!("structure constants must be {dim}×{dim}×{dim}")));
        }
        let table = constants
            .iter()
            .map(|row| row.iter().map(|v| dense_to_sparse(v)).collect())
            .collect();
        Ok(StructureConstantAlgebra { labels, unit, table })
    }

    fn from_sparse(labels: Vec<String>, unit: Vec<Q>, entries: &[(usize, usize, usize, Q)]) -> Result<Self> {
        let dim = labels.len();
        let mut dense = vec![vec![vec![Q::zero(); dim]; dim]; dim];
        for (i, j, k, c) in entries {
            if *i >= dim || *j >= dim || *k >= dim {
                return Err(Error::InvalidAlgebra(format!("index out of range in mul {i} {j} {k}")));
            }
            dense[*i][*j][*k] += c;
        }
        Self::new(labels, unit, dense)
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> &[Q] {
        &self.unit
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> Q {
        self.table[i][j]
            .iter()
            .find(|(m, _)| *m == k)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Q::zero)
    }

    /// `e_i · e_j`.
    pub fn product(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[i][j]
    }

    pub fn mul(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut acc = Accumulator::new();
        for (i, a) in x {
            for (j, b) in y {
                for (k, c) in &self.table[*i][*j] {
                    acc.add(*k, a * b * c);
                }
            }
        }
        acc.finish()
    }

    fn basis(&self, i: usize) -> SparseVec {
        vec![(i, Q::one())]
    }

    pub fn unit_sparse(&self) -> SparseVec {
        dense_to_sparse(&self.unit)
    }

    /// Whether the unit is the first basis vector.
    pub fn unit_is_first(&self) -> bool {
        self.unit == unit_vector(self.dim(), 0)
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| self.table[i][j] == self.table[j][i]))
    }

    pub fn validate(&self) -> ValidationReport {
        let n = self.dim();
        let mut report = ValidationReport::default();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let lhs = self.mul(&self.table[i][j], &self.basis(k));
                    let rhs = self.mul(&self.basis(i), &self.table[j][k]);
                    if lhs != rhs {
                        let mut bad: Vec<usize> = lhs
                            .iter()
                            .chain(&rhs)
                            .map(|(l, _)| *l)
                            .filter(|l| lookup(&lhs, *l) != lookup(&rhs, *l))
                            .collect();
                        bad.sort_unstable();
                        bad.dedup();
                        report.associativity.extend(bad.into_iter().map(|l| [i, j, k, l]));
                    }
                }
            }
        }
        let u = self.unit_sparse();
        for i in 0..n {
            let e = self.basis(i);
            if self.mul(&u, &e) != e || self.mul(&e, &u) != e {
                report.unitality.push(i);
            }
        }
        report
    }

    /// The same algebra in a basis whose first vector is the unit.
    ///
    /// With `k` the first index where the unit has a nonzero coordinate,
    /// the new basis is `1, e_0, ..., ê_k, ..., e_{n-1}`.
    pub fn with_unit_first(&self) -> StructureConstantAlgebra {
        if self.unit_is_first() {
            return self.clone();
        }
        let n = self.dim();
        let k = self.unit.iter().position(|c| !c.is_zero()).expect("unit is nonzero");
        let others: Vec<usize> = (0..n).filter(|&i| i != k).collect();
        let old_of_new = |j: usize| -> SparseVec {
            if j == 0 {
                self.unit_sparse()
            } else {
                self.basis(others[j - 1])
            }
        };
        let uk = self.unit[k].clone();
        let to_new = |v: &SparseVec| -> SparseVec {
            let vk = lookup(v, k) / &uk;
            let mut acc = Accumulator::new();
            acc.add(0, vk.clone());
            for (j, &i) in others.iter().enumerate() {
                acc.add(j + 1, lookup(v, i) - &self.unit[i] * &vk);
            }
            acc.finish()
        };
        let table = (0..n)
            .map(|a| (0..n).map(|b| to_new(&self.mul(&old_of_new(a), &old_of_new(b)))).collect())
            .collect();
        let mut labels = vec!["1".to_string()];
        labels.extend(others.iter().map(|&i| self.labels[i].clone()));
        StructureConstantAlgebra { labels, unit: unit_vector(n, 0), table }
    }

    /// Reads a file in the [`parse_spec`] format, ignoring any `mul2`.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
        parse_spec(&text).map(|(a, _)| a)
    }
}

fn lookup(v: &SparseVec, i: usize) -> Q {
    v.iter().find(|(k, _)| *k == i).map(|(_, c)| c.clone()).unwrap_or_else(Q::zero)
}

impl fmt::Display for StructureConstantAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "dim {}", self.dim())?;
        writeln!(f, "basis {}", self.labels.join(" "))?;
        let unit: Vec<String> = self.unit.iter().map(qq::fmt_q).collect();
        writeln!(f, "unit {}", unit.join(" "))?;
        for (i, row) in self.table.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                for (k, c) in v {
                    writeln!(f, "mul {i} {j} {k} {}", qq::fmt_q(c))?;
                }
            }
        }
        Ok(())
    }
}

/// Two unital products on one vector space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoAlgebra {
    pub mu1: StructureConstantAlgebra,
    pub mu2: StructureConstantAlgebra,
}

impl TwoAlgebra {
    pub fn new(mu1: StructureConstantAlgebra, mu2: StructureConstantAlgebra) -> Result<Self> {
        if mu1.dim() != mu2.dim() {
            return Err(Error::InvalidAlgebra("the two products live on different dimensions".into()));
        }
        Ok(TwoAlgebra { mu1, mu2 })
    }

    /// `(A, μ, μ)`.
    pub fn diagonal(a: StructureConstantAlgebra) -> Self {
        TwoAlgebra { mu1: a.clone(), mu2: a }
    }

    pub fn swap(&self) -> Self {
        TwoAlgebra { mu1: self.mu2.clone(), mu2: self.mu1.clone() }
    }

    pub fn dim(&self) -> usize {
        self.mu1.dim()
    }

    pub fn validate(&self) -> ValidationReport {
        let r1 = self.mu1.validate();
        let r2 = self.mu2.validate();
        let mut report = ValidationReport {
            associativity: r1.associativity.into_iter().chain(r2.associativity).collect(),
            unitality: r1.unitality.into_iter().chain(r2.unitality).collect(),
            interchange: Vec::new(),
            unit_mismatch: self.mu1.unit != self.mu2.unit,
        };
        report.associativity.sort_unstable();
        report.associativity.dedup();
        report.unitality.sort_unstable();
        report.unitality.dedup();
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let lhs = self.mu2.mul(self.mu1.product(i, j), self.mu1.product(k, l));
                        let rhs = self.mu1.mul(self.mu2.product(i, k), self.mu2.product(j, l));
                        if lhs != rhs {
                            report.interchange.push([i, j, k, l]);
                        }
                    }
                }
            }
        }
        report
    }

    /// Both products re-expressed in the basis of
    /// [`StructureConstantAlgebra::with_unit_first`], which depends only on
    /// the unit and so is shared when the units agree.
    pub fn with_unit_first(&self) -> Self {
        TwoAlgebra { mu1: self.mu1.with_unit_first(), mu2: self.mu2.with_unit_first() }
    }
}

fn labels(ls: &[&str]) -> Vec<String> {
    ls.iter().map(|s| s.to_string()).collect()
}

/// `Q[x]/(x^n)` in the monomial basis.
pub fn truncated_polynomial(n: usize) -> StructureConstantAlgebra {
    let names: Vec<String> = (0..n)
        .map(|i| match i {
            0 => "1".to_string(),
            1 => "x".to_string(),
            _ => format!("x^{i}"),
        })
        .collect();
    let entries: Vec<_> = (0..n)
        .flat_map(|i| (0..n).filter(move |j| i + j < n).map(move |j| (i, j, i + j, Q::one())))
        .collect();
    StructureConstantAlgebra::from_sparse(names, unit_vector(n, 0), &entries).expect("valid")
}

/// The group algebra `Q[Z/n]` in the basis `1, g, ..., g^{n-1}`.
pub fn cyclic_group_algebra(n: usize) -> StructureConstantAlgebra {
    let names: Vec<String> = (0..n)
        .map(|i| match i {
            0 => "1".to_string(),
            1 => "g".to_string(),
            _ => format!("g^{i}"),
        })
        .collect();
    let entries: Vec<_> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j, (i + j) % n, Q::one())))
        .collect();
    StructureConstantAlgebra::from_sparse(names, unit_vector(n, 0), &entries).expect("valid")
}

/// `M_n(Q)` with elementary matrices `E_ij` at index `i*n + j`.
pub fn matrix_algebra(n: usize) -> StructureConstantAlgebra {
    let mut names = Vec::new();
    for i in 0..n {
        for j in 0..n {
            names.push(format!("E{}{}", i + 1, j + 1));
        }
    }
    let mut entries = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                entries.push((i * n + j, j * n + l, i * n + l, Q::one()));
            }
        }
    }
    let unit = (0..n * n).map(|k| if k / n == k % n { Q::one() } else { Q::zero() }).collect();
    StructureConstantAlgebra::from_sparse(names, unit, &entries).expect("valid")
}

pub const BUILTIN_NAMES: [&str; 7] = ["q", "dual", "trunc3", "prod2", "mat2", "group2", "group3"];

pub fn builtin(name: &str) -> Option<StructureConstantAlgebra> {
    let a = match name {
        "q" => truncated_polynomial(1),
        "dual" => truncated_polynomial(2),
        "trunc3" => truncated_polynomial(3),
        "prod2" => {
            // basis 1, e with e² = e
            let entries = [
                (0, 0, 0, Q::one()),
                (0, 1, 1, Q::one()),
                (1, 0, 1, Q::one()),
                (1, 1, 1, Q::one()),
            ];
            StructureConstantAlgebra::from_sparse(labels(&["1", "e"]), unit_vector(2, 0), &entries)
                .expect("valid")
        }
        "mat2" => matrix_algebra(2),
        "group2" => cyclic_group_algebra(2),
        "group3" => cyclic_group_algebra(3),
        _ => return None,
    };
    Some(a)
}

/// Parses the plain-text algebra format. Lines:
///
/// ```text
/// # comment
/// dim 2
/// basis 1 x
/// unit 1 0
/// mul 0 0 0 1       # e_0 e_0 = 1 e_0
/// mul 0 1 1 1
/// mul 1 0 1 1
/// mul2 ...          # optional second product, same syntax
/// ```
///
/// Indices are 0-based, coefficients are `p` or `p/q`, and unlisted
/// constants are zero. `basis` is optional (labels default to `e0`, `e1`, ...).
pub fn parse_spec(text: &str) -> Result<(StructureConstantAlgebra, Option<StructureConstantAlgebra>)> {
    let mut dim: Option<usize> = None;
    let mut names: Option<Vec<String>> = None;
    let mut unit: Option<Vec<Q>> = None;
    let mut mul = Vec::new();
    let mut mul2 = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: &str| Error::Parse(format!("line {}: {msg}", lineno + 1));
        let mut words = line.split_whitespace();
        let key = words.next().expect("nonempty line");
        let rest: Vec<&str> = words.collect();
        match key {
            "dim" => {
                let [d] = rest[..] else { return Err(err("expected `dim N`")) };
                dim = Some(d.parse().map_err(|_| err("dimension is not a number"))?);
            }
            "basis" => names = Some(rest.iter().map(|s| s.to_string()).collect()),
            "unit" => unit = Some(rest.iter().map(|s| qq::parse_q(s)).collect::<Result<_>>()?),
            "mul" | "mul2" => {
                let [i, j, k, c] = rest[..] else { return Err(err("expected `mul i j k coeff`")) };
                let idx = |s: &str| s.parse::<usize>().map_err(|_| err("index is not a number"));
                let entry = (idx(i)?, idx(j)?, idx(k)?, qq::parse_q(c)?);
                if key == "mul" { mul.push(entry) } else { mul2.push(entry) }
            }
            other => return Err(err(&format!("unknown field {other:?}"))),
        }
    }
    let dim = dim.ok_or_else(|| Error::Parse("missing `dim`".into()))?;
    let names = names.unwrap_or_else(|| (0..dim).map(|i| format!("e{i}")).collect());
    if names.len() != dim {
        return Err(Error::Parse(format!("basis has {} labels, dim is {dim}", names.len())));
    }
    let unit = unit.ok_or_else(|| Error::Parse("missing `unit`".into()))?;
    if let Some((i, j, k, _)) = mul.iter().chain(&mul2).find(|e| e.0.max(e.1).max(e.2) >= dim) {
        return Err(Error::Parse(format!("index out of range in mul {i} {j} {k} (dim {dim})")));
    }
    let a = StructureConstantAlgebra::from_sparse(names.clone(), unit.clone(), &mul)?;
    let b = if mul2.is_empty() {
        None
    } else {
        Some(StructureConstantAlgebra::from_sparse(names, unit, &mul2)?)
    };
    Ok((a, b))
}

/// A builtin name or a path to a spec file.
pub fn resolve(name_or_path: &str) -> Result<StructureConstantAlgebra> {
    resolve_two(name_or_path).map(|t| t.mu1)
}

/// Like [`resolve`]; a file without `mul2` and every builtin give `(A, μ, μ)`.
pub fn resolve_two(name_or_path: &str) -> Result<TwoAlgebra> {
    if let Some(a) = builtin(name_or_path) {
        return Ok(TwoAlgebra::diagonal(a));
    }
    let path = Path::new(name_or_path);
    if !path.exists() {
        return Err(Error::Parse(format!(
            "{name_or_path:?} is neither a builtin algebra ({}) nor a readable file",
            BUILTIN_NAMES.join(", ")
        )));
    }
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {name_or_path}: {e}")))?;
    let (a, b) = parse_spec(&text)?;
    match b {
        Some(b) => TwoAlgebra::new(a, b),
        None => Ok(TwoAlgebra::diagonal(a)),
    }
}

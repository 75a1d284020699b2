//! Cofinite sublattices of Z², superlattices of Z² in Q², and finite
//! subgroups of the torus T² = R²/Z².
//!
//! A finite subgroup `C ⊂ T²` is stored through its preimage
//! `quot⁻¹(C) ⊆ Q²`, a superlattice of Z² in row HNF. Two subgroups are
//! equal iff their HNFs are. The matrix `A_C ∈ E⁺(Z)` with `A_C u_i = e_i`
//! (for the HNF basis rows `u_1, u_2`, read as column vectors) has kernel
//! `C`, and the two assignments are mutually inverse.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::mat::{self, Mat2Q, Mat2Z};
use crate::qq::{self, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LatticeKind {
    SublatticeOfZ2,
    SuperlatticeOfZ2,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HnfLattice {
    basis: Mat2Q,
    kind: LatticeKind,
}

impl HnfLattice {
    fn sublattice(h: Mat2Z) -> Self {
        HnfLattice { basis: h.to_q(), kind: LatticeKind::SublatticeOfZ2 }
    }

    pub fn basis(&self) -> &Mat2Q {
        &self.basis
    }

    pub fn kind(&self) -> LatticeKind {
        self.kind
    }

    /// Integer HNF of a sublattice.
    pub fn integer_basis(&self) -> Option<Mat2Z> {
        self.basis.to_z()
    }

    /// `[Z² : Λ]` for a sublattice, `[Λ : Z²]` for a superlattice.
    pub fn index(&self) -> BigInt {
        let det = self.basis.det();
        match self.kind {
            LatticeKind::SublatticeOfZ2 => det.to_integer(),
            LatticeKind::SuperlatticeOfZ2 => (Q::one() / det).to_integer(),
        }
    }

    pub fn contains(&self, v: &[Q; 2]) -> bool {
        mat::hnf_contains(&self.basis, v)
    }
}

#[derive(Serialize)]
pub struct LatticeDoc {
    pub index: String,
    pub hnf: Mat2Q,
}

impl From<&HnfLattice> for LatticeDoc {
    fn from(l: &HnfLattice) -> Self {
        LatticeDoc { index: l.index().to_string(), hnf: l.basis.clone() }
    }
}

/// All sublattices of index `n`, as `[[a, b], [0, d]]` with `ad = n`, `0 <= b < d`.
pub fn enumerate_sublattices(n: i64) -> Result<Vec<HnfLattice>> {
    if n <= 0 {
        return Err(Error::InvalidArgument(format!("index must be positive, got {n}")));
    }
    let mut out = Vec::new();
    for a in (1..=n).filter(|a| n % a == 0) {
        let d = n / a;
        for b in 0..d {
            out.push(HnfLattice::sublattice(Mat2Z::from_i64(a, b, 0, d)));
        }
    }
    Ok(out)
}

/// The image `m·Z²`, i.e. the span of the columns of `m`.
///
/// Invariant under `m ↦ m·U` for `U ∈ GL2(Z)`, which realizes
/// `E(Z)/GL2(Z) ≅ 𝕷(2)`.
pub fn image_lattice(m: &Mat2Z) -> Result<HnfLattice> {
    if m.det().is_zero() {
        return Err(Error::Singular);
    }
    let h = mat::row_hnf([m.a.clone(), m.c.clone()], [m.b.clone(), m.d.clone()])?;
    Ok(HnfLattice::sublattice(h))
}

/// A finite subgroup of T², identified with its preimage superlattice.
#[derive(Clone, Debug)]
pub struct FiniteTorusSubgroup {
    generators: Vec<[Q; 2]>,
    canonical: Mat2Q,
}

impl PartialEq for FiniteTorusSubgroup {
    fn eq(&self, other: &Self) -> bool {
        self.canonical == other.canonical
    }
}

impl Eq for FiniteTorusSubgroup {}

impl std::hash::Hash for FiniteTorusSubgroup {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.canonical.hash(state);
    }
}

impl FiniteTorusSubgroup {
    /// From a superlattice given by rational rows; `Z²` is added.
    fn from_rows(rows: &[[Q; 2]], generators: Vec<[Q; 2]>) -> Self {
        let mut all = vec![[qq::q(1), qq::q(0)], [qq::q(0), qq::q(1)]];
        all.extend(rows.iter().cloned());
        let canonical = mat::hnf_of_rational_rows(&all).expect("contains Z², rank 2");
        FiniteTorusSubgroup { generators, canonical }
    }

    pub fn trivial() -> Self {
        Self::from_rows(&[], vec![])
    }

    /// The HNF of `quot⁻¹(C)`.
    pub fn superlattice(&self) -> &Mat2Q {
        &self.canonical
    }

    pub fn superlattice_rows(&self) -> [[Q; 2]; 2] {
        let h = &self.canonical;
        [[h.a.clone(), h.b.clone()], [h.c.clone(), h.d.clone()]]
    }

    pub fn generators(&self) -> &[[Q; 2]] {
        &self.generators
    }

    pub fn order(&self) -> BigInt {
        (Q::one() / self.canonical.det()).to_integer()
    }

    pub fn contains(&self, p: &[Q; 2]) -> bool {
        mat::hnf_contains(&self.canonical, p)
    }

    /// `self ⊆ other`.
    pub fn is_subgroup_of(&self, other: &Self) -> bool {
        self.superlattice_rows().iter().all(|r| other.contains(r))
    }

    /// Points of `C` as canonical representatives in `[0, 1)²`, sorted.
    /// Intended for small orders.
    pub fn elements(&self) -> Vec<[Q; 2]> {
        let [u1, u2] = self.superlattice_rows();
        // [0,1) ∩ a·Z has 1/a points in the first coordinate; likewise for d
        let n1 = (Q::one() / &u1[0]).to_integer();
        let n2 = (Q::one() / &u2[1]).to_integer();
        let n1: i64 = i64::try_from(&n1).expect("small order");
        let n2: i64 = i64::try_from(&n2).expect("small order");
        let mut set = BTreeSet::new();
        for i in 0..n1 {
            for j in 0..n2 {
                let x = &u1[0] * qq::q(i) + &u2[0] * qq::q(j);
                let y = &u1[1] * qq::q(i) + &u2[1] * qq::q(j);
                set.insert([qq::frac(&x), qq::frac(&y)]);
            }
        }
        set.into_iter().collect()
    }
}

impl fmt::Display for FiniteTorusSubgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C(order {}, {})", self.order(), self.canonical)
    }
}

#[derive(Serialize)]
pub struct SubgroupDoc {
    pub order: String,
    pub superlattice_hnf: Mat2Q,
}

impl From<&FiniteTorusSubgroup> for SubgroupDoc {
    fn from(c: &FiniteTorusSubgroup) -> Self {
        SubgroupDoc { order: c.order().to_string(), superlattice_hnf: c.canonical.clone() }
    }
}

/// The subgroup generated by the images of `gens` in T².
pub fn subgroup_from_generators(gens: &[[Q; 2]]) -> FiniteTorusSubgroup {
    let reduced: Vec<[Q; 2]> = gens.iter().map(|g| [qq::frac(&g[0]), qq::frac(&g[1])]).collect();
    FiniteTorusSubgroup::from_rows(gens, reduced)
}

/// `A_C`: the inverse of the matrix whose columns are the HNF basis of
/// `quot⁻¹(C)`. The HNF basis is non-negative and positively oriented.
pub fn matrix_from_subgroup(c: &FiniteTorusSubgroup) -> Mat2Z {
    let cols = c.canonical.transpose();
    cols.inverse()
        .expect("basis is nonsingular")
        .to_z()
        .expect("Z² ⊆ superlattice makes the inverse integral")
}

/// `ker(m: T² → T²) = m⁻¹Z² / Z²`.
pub fn kernel_subgroup(m: &Mat2Z) -> Result<FiniteTorusSubgroup> {
    let det = m.det();
    if !det.is_positive() {
        return Err(Error::NonPositiveDeterminant(det.to_string()));
    }
    let inv = m.to_q().inverse()?;
    let cols = [[inv.a.clone(), inv.c.clone()], [inv.b.clone(), inv.d.clone()]];
    let gens = cols.iter().map(|g| [qq::frac(&g[0]), qq::frac(&g[1])]).collect();
    Ok(FiniteTorusSubgroup::from_rows(&cols, gens))
}

/// Every subgroup of T² of order `n`, via superlattices `(1/n)Λ` for the
/// index-`n` sublattices `Λ` (each contains `nZ²`).
pub fn enumerate_subgroups(n: i64) -> Result<Vec<FiniteTorusSubgroup>> {
    let scale = qq::qf(1, n.max(1));
    enumerate_sublattices(n).map(|ls| {
        ls.into_iter()
            .map(|l| {
                let rows: Vec<[Q; 2]> = [[&l.basis.a, &l.basis.b], [&l.basis.c, &l.basis.d]]
                    .iter()
                    .map(|r| [r[0] * &scale, r[1] * &scale])
                    .collect();
                let gens = rows.iter().map(|g| [qq::frac(&g[0]), qq::frac(&g[1])]).collect();
                FiniteTorusSubgroup::from_rows(&rows, gens)
            })
            .collect()
    })
}

/// Sum of divisors.
pub fn sigma1(n: u64) -> u64 {
    (1..=n).filter(|d| n % d == 0).sum()
}

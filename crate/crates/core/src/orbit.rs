//! The finite orbit category of T² and the isogeny action on it.
//!
//! Objects are quotients `T²/C` for finite `C`; there is a `T²`-equivariant
//! map `T²/C → T²/C′` iff `C ⊆ C′`, and such maps are translations
//! `[x] ↦ [x + t]` with `t` taken mod `C′`. Only rational translations are
//! represented.
//!
//! The endomorphism `A` of `T²` pulls subgroups back: `C ↦ A⁻¹(C)`. This is
//! a right action (`(AB)⁻¹(C) = B⁻¹(A⁻¹(C))`), see [`preimage`]. Composing
//! with the transpose anti-automorphism turns it into the left action
//! [`isogeny_act`]: `A · C := (Aᵀ)⁻¹(C)`.

use std::collections::BTreeMap;

use num_traits::Signed;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{self, FiniteTorusSubgroup};
use crate::mat::{self, Mat2Q, Mat2Z};
use crate::qq::{self, Q};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrbitObject {
    pub subgroup: FiniteTorusSubgroup,
}

impl OrbitObject {
    pub fn new(subgroup: FiniteTorusSubgroup) -> Self {
        OrbitObject { subgroup }
    }

    /// The free orbit `T²` itself.
    pub fn free() -> Self {
        OrbitObject::new(FiniteTorusSubgroup::trivial())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitMorphism {
    source: OrbitObject,
    target: OrbitObject,
    translation: [Q; 2],
}

impl OrbitMorphism {
    pub fn new(source: OrbitObject, target: OrbitObject, translation: [Q; 2]) -> Result<Self> {
        if !hom_exists(&source, &target) {
            return Err(Error::NoMorphism);
        }
        let translation = mat::hnf_reduce(target.subgroup.superlattice(), &translation);
        Ok(OrbitMorphism { source, target, translation })
    }

    pub fn identity(c: &OrbitObject) -> Self {
        let zero = [qq::q(0), qq::q(0)];
        OrbitMorphism { source: c.clone(), target: c.clone(), translation: zero }
    }

    pub fn source(&self) -> &OrbitObject {
        &self.source
    }

    pub fn target(&self) -> &OrbitObject {
        &self.target
    }

    pub fn translation(&self) -> &[Q; 2] {
        &self.translation
    }

    /// Image of a rational point of `T²/source` in `T²/target`.
    pub fn apply(&self, p: &[Q; 2]) -> [Q; 2] {
        let moved = [&p[0] + &self.translation[0], &p[1] + &self.translation[1]];
        mat::hnf_reduce(self.target.subgroup.superlattice(), &moved)
    }
}

pub fn hom_exists(c: &OrbitObject, c2: &OrbitObject) -> bool {
    c.subgroup.is_subgroup_of(&c2.subgroup)
}

/// `g ∘ f`: first `f`, then `g`.
pub fn compose(f: &OrbitMorphism, g: &OrbitMorphism) -> Result<OrbitMorphism> {
    if f.target != g.source {
        return Err(Error::MismatchedEndpoints);
    }
    let t = [&f.translation[0] + &g.translation[0], &f.translation[1] + &g.translation[1]];
    Ok(OrbitMorphism {
        source: f.source.clone(),
        target: g.target.clone(),
        translation: mat::hnf_reduce(g.target.subgroup.superlattice(), &t),
    })
}

fn pull_back(m: &Mat2Z, c: &FiniteTorusSubgroup) -> Result<FiniteTorusSubgroup> {
    let det = m.det();
    if !det.is_positive() {
        return Err(Error::NonPositiveDeterminant(det.to_string()));
    }
    let inv = m.to_q().inverse()?;
    let gens: Vec<[Q; 2]> = c.superlattice_rows().iter().map(|r| inv.apply(r)).collect();
    Ok(lattice::subgroup_from_generators(&gens))
}

/// `A⁻¹(C) = {x ∈ T² : Ax ∈ C}`, superlattice `A⁻¹·quot⁻¹(C)`.
///
/// Satisfies `preimage(AB, C) = preimage(B, preimage(A, C))`.
pub fn preimage(m: &Mat2Z, c: &OrbitObject) -> Result<OrbitObject> {
    pull_back(m, &c.subgroup).map(OrbitObject::new)
}

/// The left action `A · C = (Aᵀ)⁻¹(C)`, i.e. the pullback action precomposed
/// with transposition. `order(A · C) = det(A) · order(C)`.
pub fn isogeny_act(m: &Mat2Z, c: &OrbitObject) -> Result<OrbitObject> {
    preimage(&m.transpose(), c)
}

/// Left GL2(Z)-cosets `[A]` of E⁺(Z) with `det A <= max_index`, ordered by
/// `[A] <= [B]` iff `B A⁻¹` is integral.
#[derive(Clone, Debug, Serialize)]
pub struct FactorizationPoset {
    /// Row-HNF representatives.
    pub objects: Vec<Mat2Z>,
    /// `less_eq[i]` lists every `j` with `objects[i] <= objects[j]`.
    pub less_eq: Vec<Vec<usize>>,
    /// `kernels[i] = kernel_subgroup(objects[i])`.
    #[serde(skip)]
    pub kernels: Vec<FiniteTorusSubgroup>,
}

impl FactorizationPoset {
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.less_eq[i].contains(&j)
    }

    /// Whether `i ↦ kernels[i]` is a bijection onto the subgroups of order
    /// `<= max_index` that preserves and reflects the order.
    pub fn is_order_isomorphic_to_subgroups(&self, max_index: i64) -> bool {
        let mut all = Vec::new();
        for n in 1..=max_index {
            all.extend(lattice::enumerate_subgroups(n).expect("n >= 1"));
        }
        if all.len() != self.objects.len() {
            return false;
        }
        let mut index: BTreeMap<Mat2Q, usize> = BTreeMap::new();
        for (i, k) in self.kernels.iter().enumerate() {
            if index.insert(k.superlattice().clone(), i).is_some() {
                return false;
            }
        }
        if !all.iter().all(|c| index.contains_key(c.superlattice())) {
            return false;
        }
        (0..self.objects.len()).all(|i| {
            (0..self.objects.len())
                .all(|j| self.leq(i, j) == self.kernels[i].is_subgroup_of(&self.kernels[j]))
        })
    }
}

pub fn coset_leq(a: &Mat2Z, b: &Mat2Z) -> bool {
    let ainv = a.to_q().inverse().expect("nonsingular");
    b.to_q().mul(&ainv).is_integral()
}

pub fn factorization_poset(max_index: i64) -> Result<FactorizationPoset> {
    if max_index < 1 {
        return Err(Error::InvalidArgument(format!("max index must be >= 1, got {max_index}")));
    }
    let mut objects = Vec::new();
    for n in 1..=max_index {
        for l in lattice::enumerate_sublattices(n)? {
            objects.push(l.integer_basis().expect("sublattice HNF is integral"));
        }
    }
    let less_eq = objects
        .iter()
        .map(|a| {
            objects
                .iter()
                .enumerate()
                .filter(|(_, b)| coset_leq(a, b))
                .map(|(j, _)| j)
                .collect()
        })
        .collect();
    let kernels = objects
        .iter()
        .map(|a| lattice::kernel_subgroup(a))
        .collect::<Result<Vec<_>>>()?;
    Ok(FactorizationPoset { objects, less_eq, kernels })
}

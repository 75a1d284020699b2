//! Seeded property suites behind `tori selftest`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cover::{self, CoverElement};
use crate::hochschild::{self, bar, secondary, IterationOrder, TwoAlgebra};
use crate::lattice;
use crate::mat::Mat2Z;
use crate::orbit;

pub const DEFAULT_SEED: u64 = 7;
pub const SUITES: [&str; 4] = ["cocycle", "duality", "homology", "all"];

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub suite: &'static str,
    pub name: String,
    pub samples: usize,
    pub failures: usize,
    pub first_counterexample: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SelftestReport {
    pub suite: String,
    pub seed: u64,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

struct Check {
    suite: &'static str,
    name: String,
    samples: usize,
    failures: usize,
    first: Option<String>,
}

impl Check {
    fn new(suite: &'static str, name: impl Into<String>) -> Self {
        Check { suite, name: name.into(), samples: 0, failures: 0, first: None }
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.samples += 1;
        if !ok {
            self.failures += 1;
            if self.first.is_none() {
                self.first = Some(witness());
            }
        }
    }

    fn finish(self) -> CheckResult {
        CheckResult {
            suite: self.suite,
            name: self.name,
            samples: self.samples,
            failures: self.failures,
            first_counterexample: self.first,
        }
    }
}

/// A uniformly random matrix with entries in `[-r, r]` and positive determinant.
pub fn random_positive(rng: &mut impl Rng, r: i64) -> Mat2Z {
    loop {
        let e: [i64; 4] = std::array::from_fn(|_| rng.gen_range(-r..=r));
        if e[0] * e[3] - e[1] * e[2] > 0 {
            return Mat2Z::from_i64(e[0], e[1], e[2], e[3]);
        }
    }
}

fn random_cover(rng: &mut impl Rng) -> CoverElement {
    CoverElement::new(random_positive(rng, 20), rng.gen_range(-3..=3)).expect("det > 0")
}

const COCYCLE_SAMPLES: usize = 1000;

fn cocycle(rng: &mut ChaCha8Rng) -> Vec<CheckResult> {
    let mut factor = Check::new("cocycle", "unit(z_A)·unit(z_B)·unit(ζ) = unit(z_AB), Re ζ > 0");
    let mut carry = Check::new("cocycle", "carry ∈ {-1, 0, 1}");
    let mut cross = Check::new("cocycle", "η from ζ agrees with η from α");
    let mut assoc = Check::new("cocycle", "cover_mul associative");
    let mut transpose = Check::new("cocycle", "transpose_cover anti-multiplicative");
    for _ in 0..COCYCLE_SAMPLES {
        let a = random_positive(rng, 20).to_q();
        let b = random_positive(rng, 20).to_q();
        let ok = match (cover::z_of(&a), cover::z_of(&b), cover::z_of(&a.mul(&b)), cover::eta_zeta(&a, &b)) {
            (Ok(za), Ok(zb), Ok(zab), Ok(zeta)) => {
                zeta.re > num_traits::Zero::zero() && za.mul(&zb).mul(&zeta).same_direction(&zab)
            }
            _ => false,
        };
        factor.record(ok, || format!("A = {a}, B = {b}"));
        let c = cover::carry(&a, &b);
        carry.record(matches!(c, Ok(-1..=1)), || format!("A = {a}, B = {b}: {c:?}"));
        let agree = match (cover::eta_zeta(&a, &b), cover::eta_alpha(&a, &b)) {
            (Ok(x), Ok(y)) => x.same_direction(&y),
            _ => false,
        };
        cross.record(agree, || format!("A = {a}, B = {b}"));

        let (x, y, z) = (random_cover(rng), random_cover(rng), random_cover(rng));
        let lhs = cover::cover_mul(&cover::cover_mul(&x, &y), &z);
        let rhs = cover::cover_mul(&x, &cover::cover_mul(&y, &z));
        assoc.record(lhs == rhs, || format!("{x:?}, {y:?}, {z:?}"));
        let lhs = cover::transpose_cover(&cover::cover_mul(&x, &y));
        let rhs = cover::cover_mul(&cover::transpose_cover(&y), &cover::transpose_cover(&x));
        transpose.record(lhs == rhs, || format!("{x:?}, {y:?}"));
    }
    [factor, carry, cross, assoc, transpose].into_iter().map(Check::finish).collect()
}

const DUALITY_MAX_ORDER: i64 = 12;
const POSET_MAX_INDEX: i64 = 6;

fn duality(rng: &mut ChaCha8Rng) -> Vec<CheckResult> {
    let mut round = Check::new("duality", "kernel_subgroup(matrix_from_subgroup(C)) = C, order ≤ 12");
    let mut count = Check::new("duality", "subgroups of order n number σ1(n), n ≤ 12");
    let mut det = Check::new("duality", "det(A_C) = |C|");
    for n in 1..=DUALITY_MAX_ORDER {
        let subgroups = lattice::enumerate_subgroups(n).expect("n >= 1");
        count.record(subgroups.len() as u64 == lattice::sigma1(n as u64), || {
            format!("n = {n}: {} subgroups", subgroups.len())
        });
        for c in &subgroups {
            let a = lattice::matrix_from_subgroup(c);
            det.record(a.det() == c.order(), || format!("{c}"));
            let back = lattice::kernel_subgroup(&a);
            round.record(back.as_ref() == Ok(c), || format!("{c} ↦ {a}"));
        }
    }
    let mut poset = Check::new("duality", "factorization poset ≅ subgroup poset, index ≤ 6");
    let p = orbit::factorization_poset(POSET_MAX_INDEX).expect("max >= 1");
    poset.record(p.is_order_isomorphic_to_subgroups(POSET_MAX_INDEX), || "poset mismatch".into());

    let mut action = Check::new("duality", "isogeny_act(AB, C) = isogeny_act(A, isogeny_act(B, C))");
    let small: Vec<_> = (1..=4).flat_map(|n| lattice::enumerate_subgroups(n).expect("n >= 1")).collect();
    for _ in 0..50 {
        let a = random_positive(rng, 3);
        let b = random_positive(rng, 3);
        for c in &small {
            let c = orbit::OrbitObject::new(c.clone());
            let lhs = orbit::isogeny_act(&a.mul(&b), &c);
            let rhs = orbit::isogeny_act(&b, &c).and_then(|bc| orbit::isogeny_act(&a, &bc));
            action.record(lhs.is_ok() && lhs == rhs, || format!("A = {a}, B = {b}, C = {}", c.subgroup));
        }
    }
    [round, count, det, poset, action].into_iter().map(Check::finish).collect()
}

const HOMOLOGY_DEGREE: i64 = 5;

fn homology() -> Vec<CheckResult> {
    let mut valid = Check::new("homology", "builtin algebras are associative and unital");
    let mut ids = Check::new("homology", "b² = 0, t^(n+1) = id, B² = 0, bB + Bb = 0");
    let mut hh0 = Check::new("homology", "HH_0 = dim A/[A,A]");
    let mut norm = Check::new("homology", "normalized and unnormalized Betti numbers agree");
    for name in hochschild::BUILTIN_NAMES {
        let a = hochschild::builtin(name).expect("builtin");
        valid.record(a.validate().is_valid(), || name.to_string());
        for normalized in [true, false] {
            let top = if normalized { HOMOLOGY_DEGREE } else { HOMOLOGY_DEGREE - 1 };
            let c = hochschild::cyclic_bar(&a, top, normalized).expect("n_max >= 0");
            for check in c.check_identities() {
                ids.record(check.holds(), || format!("{name}: {} fails in {:?}", check.name, check.failures));
            }
        }
        let betti = bar::hh_betti(&a, 4).expect("n_max >= 0");
        hh0.record(betti[0] == hochschild::hh0_direct(&a), || format!("{name}: {betti:?}"));
        let unnorm = bar::hh_betti_with(&a, 4, false).expect("n_max >= 0");
        norm.record(betti == unnorm, || format!("{name}: {betti:?} vs {unnorm:?}"));
    }
    let mut order = Check::new("homology", "secondary Betti numbers agree for both iteration orders");
    let mut rot = Check::new("homology", "bicyclic rotation identities");
    for name in ["q", "dual", "prod2", "group2"] {
        let a = TwoAlgebra::diagonal(hochschild::builtin(name).expect("builtin"));
        let b1 = secondary::secondary_hh_betti(&a, 4, IterationOrder::FirstMu1);
        let b2 = secondary::secondary_hh_betti(&a, 4, IterationOrder::FirstMu2);
        order.record(b1.is_ok() && b1 == b2, || format!("{name}: {b1:?} vs {b2:?}"));
        for (p, q) in [(0, 0), (1, 0), (0, 1), (1, 1), (2, 1)] {
            for check in secondary::rotation_identities(&a, IterationOrder::FirstMu1, p, q) {
                rot.record(check.holds(), || format!("{name} ({p},{q}): {}", check.name));
            }
        }
    }
    [valid, ids, hh0, norm, order, rot].into_iter().map(Check::finish).collect()
}

/// Runs `suite` (`cocycle`, `duality`, `homology` or `all`) with `seed`.
pub fn run(suite: &str, seed: u64) -> crate::Result<SelftestReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let checks = match suite {
        "cocycle" => cocycle(&mut rng),
        "duality" => duality(&mut rng),
        "homology" => homology(),
        "all" => {
            let mut all = cocycle(&mut rng);
            all.extend(duality(&mut rng));
            all.extend(homology());
            all
        }
        other => {
            return Err(crate::Error::Parse(format!(
                "unknown suite {other:?} (expected one of {})",
                SUITES.join(", ")
            )))
        }
    };
    let passed = checks.iter().all(|c| c.failures == 0);
    Ok(SelftestReport { suite: suite.to_string(), seed, passed, checks })
}

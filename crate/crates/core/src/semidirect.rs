//! Semidirect products `T² ⋊ M` on rational torus points, for
//! `M = E(Z)`, `B3` (acting through Φ) and the cover monoid (acting through
//! the matrix projection).
//!
//! `(p, A)` acts by the affine map `q ↦ Aq + p`; the law
//! `(p, A)(q, B) = (Aq + p, AB)` is forced by composition of these maps.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::braid::{self, BraidWord};
use crate::cover::{self, CoverElement};
use crate::error::{Error, Result};
use crate::mat::Mat2Z;
use crate::qq::{self, Q};

/// A rational point of `T² = R²/Z²`, coordinates in `[0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorusPoint {
    x: Q,
    y: Q,
}

impl TorusPoint {
    pub fn new(x: Q, y: Q) -> Self {
        TorusPoint { x: qq::frac(&x), y: qq::frac(&y) }
    }

    pub fn origin() -> Self {
        TorusPoint { x: Q::zero(), y: Q::zero() }
    }

    pub fn x(&self) -> &Q {
        &self.x
    }

    pub fn y(&self) -> &Q {
        &self.y
    }

    pub fn add(&self, o: &Self) -> Self {
        TorusPoint::new(&self.x + &o.x, &self.y + &o.y)
    }

    pub fn neg(&self) -> Self {
        TorusPoint::new(-self.x.clone(), -self.y.clone())
    }
}

impl fmt::Display for TorusPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", qq::fmt_q(&self.x), qq::fmt_q(&self.y))
    }
}

impl FromStr for TorusPoint {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("expected (x,y), got {s:?}")))?;
        let (x, y) = inner
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("expected (x,y), got {s:?}")))?;
        Ok(TorusPoint::new(qq::parse_q(x)?, qq::parse_q(y)?))
    }
}

/// `m·p` reduced mod Z².
pub fn act_point(m: &Mat2Z, p: &TorusPoint) -> Result<TorusPoint> {
    if m.det().is_zero() {
        return Err(Error::Singular);
    }
    let mq = m.to_q();
    let [x, y] = mq.apply(&[p.x.clone(), p.y.clone()]);
    Ok(TorusPoint::new(x, y))
}

/// The monoid part of a semidirect element; fixes the ambient monoid.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Part {
    Matrix(Mat2Z),
    Braid(BraidWord),
    Cover(CoverElement),
}

impl Part {
    pub fn matrix(&self) -> Mat2Z {
        match self {
            Part::Matrix(m) => m.clone(),
            Part::Braid(w) => braid::phi(w),
            Part::Cover(x) => x.matrix().clone(),
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            Part::Matrix(_) => "matrix",
            Part::Braid(_) => "braid",
            Part::Cover(_) => "cover",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SemidirectElement {
    point: TorusPoint,
    part: Part,
}

impl SemidirectElement {
    pub fn new(point: TorusPoint, part: Part) -> Result<Self> {
        if let Part::Matrix(m) = &part {
            if m.det().is_zero() {
                return Err(Error::Singular);
            }
        }
        Ok(SemidirectElement { point, part })
    }

    pub fn point(&self) -> &TorusPoint {
        &self.point
    }

    pub fn part(&self) -> &Part {
        &self.part
    }

    pub fn identity_like(&self) -> Self {
        let part = match &self.part {
            Part::Matrix(_) => Part::Matrix(Mat2Z::identity()),
            Part::Braid(_) => Part::Braid(BraidWord::identity()),
            Part::Cover(_) => Part::Cover(CoverElement::identity()),
        };
        SemidirectElement { point: TorusPoint::origin(), part }
    }

    /// Image in `T² ⋊ E(Z)` under Φ or the cover projection.
    pub fn project(&self) -> SemidirectElement {
        SemidirectElement { point: self.point.clone(), part: Part::Matrix(self.part.matrix()) }
    }

    /// Units of `T² ⋊ E(Z)` have matrix part in GL2(Z); units of
    /// `T² ⋊ Ẽ⁺(Z)` have matrix part in SL2(Z); `T² ⋊ B3` is a group.
    pub fn is_invertible(&self) -> bool {
        match &self.part {
            Part::Matrix(m) => m.inverse_integral().is_some(),
            Part::Braid(_) => true,
            Part::Cover(x) => x.matrix().det().is_one(),
        }
    }

    /// `(p, A)⁻¹ = (−A⁻¹p, A⁻¹)`.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_invertible() {
            return Err(Error::NotInvertible);
        }
        let part = match &self.part {
            Part::Matrix(m) => Part::Matrix(m.inverse_integral().expect("checked")),
            Part::Braid(w) => Part::Braid(w.inverse()),
            Part::Cover(x) => Part::Cover(x.inverse()?),
        };
        let point = act_point(&part.matrix(), &self.point)?.neg();
        Ok(SemidirectElement { point, part })
    }
}

impl fmt::Display for SemidirectElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.part {
            Part::Matrix(m) => write!(f, "({}; {})", self.point, m),
            Part::Braid(w) => write!(f, "({}; braid: {})", self.point, w.compact()),
            Part::Cover(x) => write!(f, "({}; cover: {} @ {})", self.point, x.matrix(), x.winding()),
        }
    }
}

/// Parses `((x,y); [[a,b],[c,d]])`, `((x,y); braid: a b A)` or
/// `((x,y); cover: [[a,b],[c,d]] @ k)`.
impl FromStr for SemidirectElement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("expected ((x,y); part), got {s:?}"));
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(bad)?;
        let (pt, rest) = inner.split_once(';').ok_or_else(bad)?;
        let point: TorusPoint = pt.parse()?;
        let rest = rest.trim();
        let part = if let Some(w) = rest.strip_prefix("braid:") {
            Part::Braid(w.parse()?)
        } else if let Some(c) = rest.strip_prefix("cover:") {
            let (m, k) = c.split_once('@').ok_or_else(bad)?;
            let k: i64 = k.trim().parse().map_err(|_| bad())?;
            Part::Cover(CoverElement::new(m.parse()?, k)?)
        } else {
            Part::Matrix(rest.parse()?)
        };
        SemidirectElement::new(point, part)
    }
}

/// `q ↦ Aq + p`.
pub fn aff_apply(g: &SemidirectElement, q: &TorusPoint) -> TorusPoint {
    act_point(&g.part.matrix(), q)
        .expect("matrix part is nonsingular")
        .add(&g.point)
}

pub fn sd_mul(g: &SemidirectElement, h: &SemidirectElement) -> Result<SemidirectElement> {
    let part = match (&g.part, &h.part) {
        (Part::Matrix(a), Part::Matrix(b)) => Part::Matrix(a.mul(b)),
        (Part::Braid(a), Part::Braid(b)) => Part::Braid(braid::braid_mul(a, b)),
        (Part::Cover(a), Part::Cover(b)) => Part::Cover(cover::cover_mul(a, b)),
        (a, b) => {
            log::debug!("cannot multiply {} by {}", a.kind(), b.kind());
            return Err(Error::MixedMonoids);
        }
    };
    let point = act_point(&g.part.matrix(), &h.point)?.add(&g.point);
    Ok(SemidirectElement { point, part })
}

/// Group-level equality for the braid variant (normal forms), structural otherwise.
pub fn sd_eq(g: &SemidirectElement, h: &SemidirectElement) -> bool {
    match (&g.part, &h.part) {
        (Part::Braid(a), Part::Braid(b)) => g.point == h.point && braid::braid_eq(a, b),
        _ => g == h,
    }
}

use core::cmp::Ordering;
use core::fmt;

use super::{Point, Scalar, Vector};

/// `p ↦ R(rot·30°) · F(p) + shift`, where `F` is the reflection across the
/// x-axis when `reflect` is set.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Isometry {
    pub rot: u8,
    pub reflect: bool,
    pub shift: Vector,
}

/// `(cos, sin)` of `k·30°`.
fn trig(k: u8) -> (Scalar, Scalar) {
    let half = Scalar::ratio(1, 2);
    let r3 = Scalar::new(0, 1, 2);
    let (c, s) = match k % 12 {
        0 => (Scalar::ONE, Scalar::ZERO),
        1 => (r3.clone(), half.clone()),
        2 => (half.clone(), r3.clone()),
        3 => (Scalar::ZERO, Scalar::ONE),
        4 => (-&half, r3.clone()),
        5 => (-&r3, half.clone()),
        6 => (Scalar::int(-1), Scalar::ZERO),
        7 => (-&r3, -&half),
        8 => (-&half, -&r3),
        9 => (Scalar::ZERO, Scalar::int(-1)),
        10 => (half.clone(), -&r3),
        _ => (r3.clone(), -&half),
    };
    (c, s)
}

impl Isometry {
    pub fn identity() -> Isometry {
        Isometry::default()
    }

    pub fn new(rot: u8, reflect: bool, shift: Vector) -> Isometry {
        Isometry { rot: rot % 12, reflect, shift }
    }

    pub fn translation(shift: Vector) -> Isometry {
        Isometry { rot: 0, reflect: false, shift }
    }

    pub fn rotation(rot: u8) -> Isometry {
        Isometry::new(rot, false, Point::zero())
    }

    pub fn is_identity(&self) -> bool {
        self.rot == 0 && !self.reflect && self.shift.is_zero()
    }

    /// Same linear part (rotation and reflection flag).
    pub fn same_orientation(&self, other: &Isometry) -> bool {
        self.rot == other.rot && self.reflect == other.reflect
    }

    /// Applies only the rotation/reflection.
    pub fn apply_linear(&self, v: &Vector) -> Vector {
        let y = if self.reflect { -&v.y } else { v.y.clone() };
        let x = &v.x;
        match self.rot {
            0 => Point::new(x.clone(), y),
            3 => Point::new(-&y, x.clone()),
            6 => Point::new(-x, -&y),
            9 => Point::new(y, -x),
            r => {
                let (c, s) = trig(r);
                Point::new(&c * x - &s * &y, &s * x + &c * &y)
            }
        }
    }

    pub fn apply(&self, p: &Point) -> Point {
        &self.apply_linear(p) + &self.shift
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Isometry) -> Isometry {
        let rot = if self.reflect {
            (self.rot + 12 - other.rot) % 12
        } else {
            (self.rot + other.rot) % 12
        };
        Isometry {
            rot,
            reflect: self.reflect ^ other.reflect,
            shift: self.apply(&other.shift),
        }
    }

    pub fn inverse(&self) -> Isometry {
        let linear = if self.reflect {
            Isometry::new(self.rot, true, Point::zero())
        } else {
            Isometry::new((12 - self.rot) % 12, false, Point::zero())
        };
        let shift = -&linear.apply_linear(&self.shift);
        Isometry { shift, ..linear }
    }

    /// Post-composes a translation: `x ↦ self(x) + v`.
    pub fn translated(&self, v: &Vector) -> Isometry {
        Isometry { rot: self.rot, reflect: self.reflect, shift: &self.shift + v }
    }

    /// Canonical order: rotation index, reflection flag, then shift lexicographically.
    pub fn canonical_cmp(&self, other: &Isometry) -> Ordering {
        self.rot
            .cmp(&other.rot)
            .then(self.reflect.cmp(&other.reflect))
            .then_with(|| self.shift.lex_cmp(&other.shift))
    }
}

impl PartialOrd for Isometry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.canonical_cmp(other))
    }
}

impl Ord for Isometry {
    fn cmp(&self, other: &Self) -> Ordering {
        self.canonical_cmp(other)
    }
}

impl fmt::Debug for Isometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Iso(rot={}, refl={}, shift={:?})", self.rot, self.reflect, self.shift)
    }
}

use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use super::Scalar;

/// A point (or vector) with exact coordinates.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Point {
    pub x: Scalar,
    pub y: Scalar,
}

pub type Vector = Point;

impl Point {
    pub fn new(x: Scalar, y: Scalar) -> Point {
        Point { x, y }
    }

    pub fn int(x: i64, y: i64) -> Point {
        Point::new(Scalar::int(x), Scalar::int(y))
    }

    pub fn zero() -> Point {
        Point::default()
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn dot(&self, o: &Point) -> Scalar {
        &self.x * &o.x + &self.y * &o.y
    }

    pub fn cross(&self, o: &Point) -> Scalar {
        &self.x * &o.y - &self.y * &o.x
    }

    pub fn norm2(&self) -> Scalar {
        self.dot(self)
    }

    pub fn scale(&self, k: &Scalar) -> Point {
        Point::new(&self.x * k, &self.y * k)
    }

    /// Counter-clockwise perpendicular `(-y, x)`.
    pub fn perp(&self) -> Point {
        Point::new(-&self.y, self.x.clone())
    }

    pub fn midpoint(&self, o: &Point) -> Point {
        (self + o).scale(&Scalar::ratio(1, 2))
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.x.to_f64(), self.y.to_f64())
    }

    /// Lexicographic numeric order on `(x, y)`.
    pub fn lex_cmp(&self, o: &Point) -> Ordering {
        self.x.cmp(&o.x).then_with(|| self.y.cmp(&o.y))
    }
}

impl PartialOrd for Point {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.lex_cmp(other))
    }
}

impl Ord for Point {
    fn cmp(&self, other: &Self) -> Ordering {
        self.lex_cmp(other)
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Add<&Point> for &Point {
    type Output = Point;
    fn add(self, o: &Point) -> Point {
        Point::new(&self.x + &o.x, &self.y + &o.y)
    }
}

impl Sub<&Point> for &Point {
    type Output = Point;
    fn sub(self, o: &Point) -> Point {
        Point::new(&self.x - &o.x, &self.y - &o.y)
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        &self + &o
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        &self - &o
    }
}

impl Neg for &Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-&self.x, -&self.y)
    }
}

impl Mul<&Scalar> for &Point {
    type Output = Point;
    fn mul(self, k: &Scalar) -> Point {
        self.scale(k)
    }
}

use std::fmt;

use crate::Rational;

/// A number in `(1/2)ℤ`, stored as twice its value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInt(i64);

impl HalfInt {
    pub const fn from_twice(twice: i64) -> Self {
        Self(twice)
    }

    pub const fn from_int(n: i64) -> Self {
        Self(2 * n)
    }

    /// `k + 1/2`.
    pub const fn above(k: i64) -> Self {
        Self(2 * k + 1)
    }

    pub const fn twice(self) -> i64 {
        self.0
    }

    pub const fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    /// Largest integer not exceeding the value.
    pub const fn floor(self) -> i64 {
        self.0.div_euclid(2)
    }

    pub fn to_rational(self) -> Rational {
        Rational::new(self.0.into(), 2.into())
    }

    pub fn to_f64(self) -> f64 {
        self.0 as f64 / 2.0
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floor_and_display() {
        assert_eq!(HalfInt::above(-1).floor(), -1);
        assert_eq!(HalfInt::above(-1).to_string(), "-1/2");
        assert_eq!(HalfInt::from_int(3).to_string(), "3");
        assert_eq!(HalfInt::from_twice(-3).floor(), -2);
    }
}

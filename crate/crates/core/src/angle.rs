//! Exact angles: rational numbers of full turns, reduced mod 1.

use num_rational::Ratio;
use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Angle(Ratio<i64>);

impl Angle {
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Angle(reduce_mod1(Ratio::new(num, den)))
    }

    pub fn zero() -> Self {
        Angle(Ratio::new(0, 1))
    }

    pub fn ratio(&self) -> Ratio<i64> {
        self.0
    }

    pub fn num(&self) -> i64 {
        *self.0.numer()
    }

    pub fn den(&self) -> i64 {
        *self.0.denom()
    }

    pub fn add(&self, o: Angle) -> Angle {
        Angle(reduce_mod1(self.0 + o.0))
    }

    pub fn sub(&self, o: Angle) -> Angle {
        Angle(reduce_mod1(self.0 - o.0))
    }

    pub fn neg(&self) -> Angle {
        Angle(reduce_mod1(-self.0))
    }

    pub fn times(&self, k: i64) -> Angle {
        Angle(reduce_mod1(self.0 * Ratio::new(k, 1)))
    }

    pub fn is_zero(&self) -> bool {
        self.0.numer() == &0
    }

    /// Multiplicative order in the circle group (the denominator).
    pub fn torsion_order(&self) -> i64 {
        self.den()
    }

    pub fn to_f64(&self) -> f64 {
        *self.0.numer() as f64 / *self.0.denom() as f64
    }

    /// cos(2*pi*angle); exact rational cases hit machine-exact values.
    pub fn cos2pi(&self) -> f64 {
        (2.0 * std::f64::consts::PI * self.to_f64()).cos()
    }
}

fn reduce_mod1(r: Ratio<i64>) -> Ratio<i64> {
    let mut r = r;
    let one = Ratio::new(1, 1);
    // bring into [0,1)
    if r < Ratio::new(0, 1) || r >= one {
        let f = r.floor();
        r -= f;
    }
    r
}

impl fmt::Debug for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn arithmetic_is_mod_one() {
        let a = Angle::new(3, 4);
        let b = Angle::new(1, 2);
        assert_eq!(a.add(b), Angle::new(1, 4));
        assert_eq!(a.neg(), Angle::new(1, 4));
        assert_eq!(Angle::new(-1, 4), Angle::new(3, 4));
        assert_eq!(a.times(4), Angle::zero());
    }

    proptest! {
        #[test]
        fn add_neg_cancels(n in -40i64..40, d in 1i64..24, m in -40i64..40, e in 1i64..24) {
            let a = Angle::new(n, d);
            let b = Angle::new(m, e);
            prop_assert_eq!(a.add(b).sub(b), a);
            prop_assert_eq!(a.add(a.neg()), Angle::zero());
            prop_assert!(a.ratio() >= num_rational::Ratio::new(0,1));
            prop_assert!(a.ratio() < num_rational::Ratio::new(1,1));
        }
    }
}

use std::fmt::{self, Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// Exact scalar field used by every linear-algebra routine in the workspace.
///
/// Implemented for `BigRational` and for `Fp<P>` with `P` an odd prime.
pub trait Field:
    Clone
    + Debug
    + Display
    + PartialEq
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    /// 0 for the rationals.
    fn characteristic() -> u64;

    fn from_i64(n: i64) -> Self;

    /// Multiplicative inverse; panics on zero.
    fn inv(&self) -> Self;

    /// Short human-readable name, e.g. `Q` or `F5`.
    fn label() -> String;

    /// Image of a rational number, `None` when the denominator vanishes.
    fn from_rational(q: &BigRational) -> Option<Self>;
}

impl Field for BigRational {
    fn characteristic() -> u64 {
        0
    }

    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        self.recip()
    }

    fn label() -> String {
        "Q".to_string()
    }

    fn from_rational(q: &BigRational) -> Option<Self> {
        Some(q.clone())
    }
}

/// Prime field `Z/P`. `P` must be an odd prime below 2^32; this is checked
/// when the first element is built.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fp<const P: u64>(u64);

impl<const P: u64> Fp<P> {
    const VALID: () = assert!(P > 2 && P < (1 << 32) && P % 2 == 1, "P must be an odd prime < 2^32");

    pub fn new(v: u64) -> Self {
        #[allow(clippy::let_unit_value)]
        let _ = Self::VALID;
        Fp(v % P)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    pub fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Fp::new(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

/// Trial-division primality test; used to validate runtime field choices.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl<const P: u64> Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Add for Fp<P> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Fp::new(self.0 + o.0)
    }
}

impl<const P: u64> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Fp::new(self.0 + P - o.0)
    }
}

impl<const P: u64> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Fp::new(((self.0 as u128 * o.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Div for Fp<P> {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: Self) -> Self {
        self * o.inv()
    }
}

impl<const P: u64> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp::new(P - self.0)
    }
}

impl<const P: u64> Add<&Fp<P>> for Fp<P> {
    type Output = Self;
    fn add(self, o: &Self) -> Self {
        self + *o
    }
}

impl<const P: u64> Sub<&Fp<P>> for Fp<P> {
    type Output = Self;
    fn sub(self, o: &Self) -> Self {
        self - *o
    }
}

impl<const P: u64> Mul<&Fp<P>> for Fp<P> {
    type Output = Self;
    fn mul(self, o: &Self) -> Self {
        self * *o
    }
}

impl<const P: u64> Zero for Fp<P> {
    fn zero() -> Self {
        Fp::new(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u64> One for Fp<P> {
    fn one() -> Self {
        Fp::new(1)
    }
}

impl<const P: u64> Field for Fp<P> {
    fn characteristic() -> u64 {
        P
    }

    fn from_i64(n: i64) -> Self {
        Fp::new(n.rem_euclid(P as i64) as u64)
    }

    fn inv(&self) -> Self {
        assert!(self.0 != 0, "inverse of zero in F{P}");
        self.pow(P - 2)
    }

    fn label() -> String {
        format!("F{P}")
    }

    fn from_rational(q: &BigRational) -> Option<Self> {
        let p = BigInt::from(P);
        let reduce = |x: &BigInt| -> u64 {
            let r = ((x % &p) + &p) % &p;
            r.iter_u64_digits().next().unwrap_or(0)
        };
        let den = Fp::new(reduce(q.denom()));
        if den.is_zero() {
            return None;
        }
        let num = Fp::new(reduce(q.numer()));
        Some(num / den)
    }
}

/// Convenience: rational from a numerator/denominator pair.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Rational as an `i64` when it is an integer that fits.
pub fn rat_to_i64(q: &BigRational) -> Option<i64> {
    if !q.is_integer() {
        return None;
    }
    q.numer().to_i64()
}

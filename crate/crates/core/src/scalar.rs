//! Exact complex scalars `a + b·i` with arbitrary-precision rational parts.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::Error;
use crate::rational::Rational;

/// A Gaussian rational `re + im·i`.
///
/// Both parts are canonical [`Rational`]s, so derived equality is
/// structural equality of values.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    re: Rational,
    im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        GaussianRational {
            re: Rational::from_integer(re),
            im: Rational::from_integer(im),
        }
    }

    pub fn zero() -> Self {
        Self::from_ints(0, 0)
    }

    pub fn one() -> Self {
        Self::from_ints(1, 0)
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self::from_ints(0, 1)
    }

    pub fn re(&self) -> &Rational {
        &self.re
    }

    pub fn im(&self) -> &Rational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianRational {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    /// `|z|² = z·conj(z)`, always a non-negative rational.
    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.im.is_zero() {
            return Some(GaussianRational {
                re: self.re.recip()?,
                im: Rational::zero(),
            });
        }
        let n = self.norm_sqr();
        Some(GaussianRational {
            re: &self.re / &n,
            im: -(&self.im / &n),
        })
    }
}

impl From<i64> for GaussianRational {
    fn from(v: i64) -> Self {
        Self::from_ints(v, 0)
    }
}

impl From<Rational> for GaussianRational {
    fn from(re: Rational) -> Self {
        GaussianRational {
            re,
            im: Rational::zero(),
        }
    }
}

impl<'a> Add<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl<'a> Sub<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl<'a> Mul<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        // Real operands are the overwhelmingly common case in sampled
        // fixtures; skip the cross terms when either side has no imaginary part.
        if self.im.is_zero() {
            return GaussianRational {
                re: &self.re * &rhs.re,
                im: &self.re * &rhs.im,
            };
        }
        if rhs.im.is_zero() {
            return GaussianRational {
                re: &self.re * &rhs.re,
                im: &self.im * &rhs.re,
            };
        }
        GaussianRational {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl<'a> Div<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    /// Panics on division by zero, like the integer operators.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &GaussianRational) -> GaussianRational {
        let inv = rhs.inv().expect("division by zero Gaussian rational");
        self * &inv
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational {
            re: -&self.re,
            im: -&self.im,
        }
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational {
            re: -self.re,
            im: -self.im,
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, rhs: GaussianRational) -> GaussianRational {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, rhs: &GaussianRational) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, rhs: &GaussianRational) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

fn fmt_rational(r: &Rational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    write!(f, "{r}")
}

/// Prints the matrix-text grammar: `a/b`, `a/b+c/d*i`, `c/d*i`, integers.
impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => fmt_rational(&self.re, f),
            (true, false) => {
                fmt_rational(&self.im, f)?;
                f.write_str("*i")
            }
            (false, false) => {
                fmt_rational(&self.re, f)?;
                if !self.im.is_negative() {
                    f.write_str("+")?;
                }
                fmt_rational(&self.im, f)?;
                f.write_str("*i")
            }
        }
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_rational(s: &str) -> Option<Rational> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let digits = num.strip_prefix(['+', '-']).unwrap_or(num);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let numer: BigInt = num.strip_prefix('+').unwrap_or(num).parse().ok()?;
    let denom: BigInt = match den {
        Some(d) if !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()) => d.parse().ok()?,
        Some(_) => return None,
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return None;
    }
    Some(Rational::from_big(BigRational::new(numer, denom)))
}

fn parse_imaginary(s: &str) -> Option<Rational> {
    match s {
        "i" | "+i" => Some(Rational::one()),
        "-i" => Some(-Rational::one()),
        _ => parse_rational(s.strip_suffix("*i")?),
    }
}

impl FromStr for GaussianRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::Parse {
            line: 1,
            column: 1,
            message: format!("malformed scalar `{s}`"),
        };
        if !s.ends_with('i') {
            return parse_rational(s).map(GaussianRational::from).ok_or_else(bad);
        }
        // Split at the last sign that is not the leading one.
        let split = s
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(k, _)| k)
            .last();
        let (re, im) = match split {
            Some(k) => (parse_rational(&s[..k]), parse_imaginary(&s[k..])),
            None => (Some(Rational::zero()), parse_imaginary(s)),
        };
        match (re, im) {
            (Some(re), Some(im)) => Ok(GaussianRational { re, im }),
            _ => Err(bad()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;
    use proptest::prelude::*;

    fn gr(s: &str) -> GaussianRational {
        s.parse().unwrap()
    }

    #[test]
    fn parses_every_entry_form() {
        assert_eq!(gr("3"), GaussianRational::from_ints(3, 0));
        assert_eq!(
            gr("-3/6"),
            GaussianRational::new(Rational::new(-1, 2), Rational::zero())
        );
        assert_eq!(gr("1/2+3/4*i").im(), &Rational::new(3, 4));
        assert_eq!(gr("1/2-3/4*i").im(), &Rational::new(-3, 4));
        assert_eq!(gr("2*i"), GaussianRational::from_ints(0, 2));
        assert_eq!(gr("-2/3*i").re(), &Rational::zero());
        assert_eq!(gr("i"), GaussianRational::i());
        assert_eq!(gr("1-i"), GaussianRational::from_ints(1, -1));
    }

    #[test]
    fn rejects_malformed_entries() {
        for s in ["", "1/0", "a", "1/", "/2", "1*i*i", "1+2", "--1", "2i"] {
            assert!(s.parse::<GaussianRational>().is_err(), "{s} accepted");
        }
    }

    #[test]
    fn display_is_parseable() {
        for s in ["0", "7", "-1/2", "3*i", "-1*i", "1/2+3/4*i", "5-1/3*i"] {
            assert_eq!(gr(s).to_string(), s);
        }
    }

    #[test]
    fn i_squared_is_minus_one() {
        let i = GaussianRational::i();
        assert_eq!(&i * &i, GaussianRational::from_ints(-1, 0));
    }

    fn arb() -> impl Strategy<Value = GaussianRational> {
        (-20i64..20, 1i64..7, -20i64..20, 1i64..7)
            .prop_map(|(a, b, c, d)| GaussianRational::new(Rational::new(a, b), Rational::new(c, d)))
    }

    proptest! {
        #[test]
        fn conjugation_laws(z in arb(), w in arb()) {
            prop_assert_eq!(z.conj().conj(), z.clone());
            prop_assert_eq!((&z * &w).conj(), &z.conj() * &w.conj());
            let n = &z * &z.conj();
            prop_assert!(n.is_real());
            prop_assert!(!n.re().is_negative());
        }

        #[test]
        fn inverse_and_text_round_trip(z in arb()) {
            if let Some(inv) = z.inv() {
                prop_assert!((&z * &inv).is_one());
            } else {
                prop_assert!(z.is_zero());
            }
            prop_assert_eq!(z.to_string().parse::<GaussianRational>().unwrap(), z);
        }

        #[test]
        fn parts_are_in_lowest_terms(z in arb()) {
            let re = z.re().to_big();
            prop_assert_eq!(Rational::from_big(re.clone()), z.re().clone());
            prop_assert!(num_integer::Integer::gcd(re.numer(), re.denom()).is_one());
        }
    }
}

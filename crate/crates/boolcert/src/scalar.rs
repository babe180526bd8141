//! Exact scalars: arbitrary-precision rationals and Gaussian rationals.
//!
//! Coefficients are elements of `Q(i)`, the computable subfield of the complex
//! numbers closed under every operation the pipeline performs. Certificates
//! hinge on exact zero tests, so there is no floating point here and never a
//! fixed-width fallback.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub type Rational = num_rational::BigRational;

/// A complex number with rational real and imaginary parts, `re + im*i`.
///
/// The derived ordering is lexicographic on `(re, im)`; it carries no
/// field-theoretic meaning and exists only so values can key ordered maps.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GaussianRational {
    re: Rational,
    im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn zero() -> Self {
        GaussianRational {
            re: Rational::zero(),
            im: Rational::zero(),
        }
    }

    pub fn one() -> Self {
        GaussianRational {
            re: Rational::one(),
            im: Rational::zero(),
        }
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        GaussianRational {
            re: Rational::zero(),
            im: Rational::one(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        GaussianRational {
            re: Rational::from_integer(BigInt::from(n)),
            im: Rational::zero(),
        }
    }

    /// `num/den` as a real scalar. `den` must be nonzero.
    pub fn from_ratio(num: i64, den: i64) -> Self {
        GaussianRational {
            re: Rational::new(BigInt::from(num), BigInt::from(den)),
            im: Rational::zero(),
        }
    }

    pub fn from_real(re: Rational) -> Self {
        GaussianRational {
            re,
            im: Rational::zero(),
        }
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

    pub fn conjugate(&self) -> Self {
        GaussianRational {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    /// `re^2 + im^2`, a nonnegative rational.
    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "division by zero");
        let n = self.norm_sqr();
        GaussianRational {
            re: &self.re / &n,
            im: -&self.im / &n,
        }
    }

    /// An exact square root in `Q(i)` if one exists.
    ///
    /// Every nonzero element of `Q(i)` has two complex square roots; this
    /// returns one of them when it again lies in `Q(i)` and `None` otherwise
    /// (e.g. `sqrt(2)` and `sqrt(i)` are not Gaussian rationals).
    pub fn sqrt(&self) -> Option<GaussianRational> {
        if self.is_zero() {
            return Some(GaussianRational::zero());
        }
        if self.im.is_zero() {
            return if self.re.is_positive() {
                rational_sqrt(&self.re).map(GaussianRational::from_real)
            } else {
                rational_sqrt(&(-&self.re))
                    .map(|r| GaussianRational::new(Rational::zero(), r))
            };
        }
        // s = u + vi with s^2 = re + im*i forces u^2 + v^2 = |s|^2 = sqrt(norm),
        // u^2 = (re + sqrt(norm)) / 2 and v = im / (2u).
        let m = rational_sqrt(&self.norm_sqr())?;
        let two = Rational::from_integer(BigInt::from(2));
        let u_sq = (&self.re + &m) / &two;
        let u = rational_sqrt(&u_sq)?;
        if u.is_zero() {
            return None;
        }
        let v = &self.im / (&two * &u);
        let root = GaussianRational::new(u, v);
        debug_assert_eq!(&root * &root, *self);
        Some(root)
    }
}

/// Exact square root of a nonnegative rational, if it is a perfect square.
pub fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let num = r.numer();
    let den = r.denom();
    let sn = num.sqrt();
    let sd = den.sqrt();
    if &(&sn * &sn) == num && &(&sd * &sd) == den {
        Some(Rational::new(sn, sd))
    } else {
        None
    }
}

impl Add for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl Sub for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl Mul for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Div for &GaussianRational {
    type Output = GaussianRational;
    // division in a field is multiplication by the inverse
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &GaussianRational) -> GaussianRational {
        self * &rhs.inv()
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

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: GaussianRational) -> GaussianRational {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: &GaussianRational) -> GaussianRational {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);
forward_owned_binop!(Div, div);

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        -&self
    }
}

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

/// Renders `"0"`, `"3/2"`, `"-1"`, `"i"`, `"-i"`, `"3/2i"`, `"1+2i"`, `"1/2-i"`.
///
/// Pure-imaginary magnitudes drop a unit coefficient, so the output matches
/// the coefficient syntax of the polynomial grammar.
impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn imag_mag(im: &Rational) -> String {
            let mag = im.abs();
            if mag.is_one() {
                "i".to_string()
            } else {
                format!("{}i", mag)
            }
        }
        if self.is_zero() {
            return write!(f, "0");
        }
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        if self.re.is_zero() {
            let sign = if self.im.is_negative() { "-" } else { "" };
            return write!(f, "{}{}", sign, imag_mag(&self.im));
        }
        let sign = if self.im.is_negative() { "-" } else { "+" };
        write!(f, "{}{}{}", self.re, sign, imag_mag(&self.im))
    }
}

impl FromStr for GaussianRational {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err("empty scalar".to_string());
        }
        // Split "a+bi" / "a-bi" at the last sign that is not leading and not
        // part of an exponent-free rational (there are none), then fall back
        // to a single real or imaginary component.
        let bytes = s.as_bytes();
        let mut split = None;
        for (idx, &b) in bytes.iter().enumerate().skip(1) {
            if (b == b'+' || b == b'-') && bytes[idx - 1] != b'/' {
                split = Some(idx);
            }
        }
        if let Some(idx) = split {
            let (re_str, im_str) = (&s[..idx], &s[idx..]);
            if !im_str.ends_with('i') {
                return Err(format!("expected imaginary component in {s:?}"));
            }
            let re = parse_rational(re_str)?;
            let im = parse_signed_imag(im_str)?;
            return Ok(GaussianRational::new(re, im));
        }
        if s.ends_with('i') {
            Ok(GaussianRational::new(
                Rational::zero(),
                parse_signed_imag(s)?,
            ))
        } else {
            Ok(GaussianRational::from_real(parse_rational(s)?))
        }
    }
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    Rational::from_str(s.trim()).map_err(|e| format!("bad rational {s:?}: {e}"))
}

fn parse_signed_imag(s: &str) -> Result<Rational, String> {
    let body = s.trim().strip_suffix('i').ok_or("missing trailing i")?;
    match body {
        "" | "+" => Ok(Rational::one()),
        "-" => Ok(-Rational::one()),
        other => parse_rational(other),
    }
}

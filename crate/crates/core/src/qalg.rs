//! Exact Laurent polynomials in `q` with rational coefficients, and the
//! q-integers, q-factorials and q-binomials built from them.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{domain, Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"`, an integer, or a finite decimal such as `"0.25"` or
/// `"1.5e-3"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    if let Some((mantissa, exp)) = s.split_once(['e', 'E']) {
        let e: i64 = exp.parse().map_err(|_| bad())?;
        return Ok(parse_rational(mantissa)? * rat_pow(&int(10), e));
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = whole.starts_with('-');
        let whole_digits = whole.trim_start_matches(['-', '+']);
        let w: BigInt = if whole_digits.is_empty() {
            BigInt::zero()
        } else {
            whole_digits.parse().map_err(|_| bad())?
        };
        let f: BigInt = frac.parse().map_err(|_| bad())?;
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let mag = Rational::new(w * &scale + f, scale);
        return Ok(if negative { -mag } else { mag });
    }
    let n: BigInt = s.parse().map_err(|_| bad())?;
    Ok(Rational::from_integer(n))
}

/// Formats as `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// `x^e` for a nonzero rational and any integer exponent.
pub fn rat_pow(x: &Rational, e: i64) -> Rational {
    let base = if e < 0 { x.recip() } else { x.clone() };
    num_traits::pow(base, e.unsigned_abs() as usize)
}

/// A Laurent polynomial `Σ c_i q^(min_exponent + i)`.
///
/// The zero polynomial has no coefficients; otherwise the first and last
/// stored coefficients are nonzero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    min_exponent: i64,
    coefficients: Vec<Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly {
            min_exponent: 0,
            coefficients: Vec::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: Rational, exponent: i64) -> Self {
        Self::from_coefficients(exponent, vec![c])
    }

    /// `q^e` with coefficient one.
    pub fn q_pow(exponent: i64) -> Self {
        Self::monomial(Rational::one(), exponent)
    }

    pub fn from_coefficients(min_exponent: i64, coefficients: Vec<Rational>) -> Self {
        let mut p = LaurentPoly {
            min_exponent,
            coefficients,
        };
        p.normalize();
        p
    }

    pub fn from_integers(min_exponent: i64, coefficients: &[i64]) -> Self {
        Self::from_coefficients(min_exponent, coefficients.iter().map(|&c| int(c)).collect())
    }

    fn normalize(&mut self) {
        while self.coefficients.last().is_some_and(|c| c.is_zero()) {
            self.coefficients.pop();
        }
        let lead = self.coefficients.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coefficients.drain(..lead);
            self.min_exponent += lead as i64;
        }
        if self.coefficients.is_empty() {
            self.min_exponent = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.min_exponent == 0 && self.coefficients.len() == 1 && self.coefficients[0].is_one()
    }

    pub fn min_exponent(&self) -> i64 {
        self.min_exponent
    }

    /// Largest exponent with a nonzero coefficient; `None` for zero.
    pub fn max_exponent(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.min_exponent + self.coefficients.len() as i64 - 1)
        }
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coefficients
    }

    pub fn coeff(&self, exponent: i64) -> Rational {
        let idx = exponent - self.min_exponent;
        if idx < 0 || idx >= self.coefficients.len() as i64 {
            Rational::zero()
        } else {
            self.coefficients[idx as usize].clone()
        }
    }

    /// Nonzero terms as `(exponent, coefficient)`, ascending.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.coefficients
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.min_exponent + i as i64, c))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            min_exponent: self.min_exponent,
            coefficients: self.coefficients.iter().map(|x| x * c).collect(),
        }
    }

    /// Multiplies by `q^e`.
    pub fn shift(&self, e: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            min_exponent: self.min_exponent + e,
            coefficients: self.coefficients.clone(),
        }
    }

    /// The substitution `q -> q^{-1}`.
    pub fn bar(&self) -> Self {
        match self.max_exponent() {
            None => Self::zero(),
            Some(top) => {
                let mut c = self.coefficients.clone();
                c.reverse();
                LaurentPoly {
                    min_exponent: -top,
                    coefficients: c,
                }
            }
        }
    }

    pub fn is_palindromic(&self) -> bool {
        *self == self.bar()
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Quotient `self / divisor` when the division is exact in `Q[q, q^{-1}]`.
    pub fn exact_div(&self, divisor: &LaurentPoly) -> Result<LaurentPoly> {
        if divisor.is_zero() {
            return domain("division by the zero polynomial");
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        // Both sides are q^e times a polynomial with nonzero constant term,
        // so divisibility reduces to ordinary polynomial long division.
        let b = &divisor.coefficients;
        let db = b.len() - 1;
        let mut r = self.coefficients.clone();
        if r.len() < b.len() {
            return Err(Error::NotDivisible);
        }
        let qlen = r.len() - db;
        let lead = &b[db];
        let mut quot = vec![Rational::zero(); qlen];
        for i in (0..qlen).rev() {
            let c = &r[i + db] / lead;
            if !c.is_zero() {
                for (j, bj) in b.iter().enumerate() {
                    r[i + j] -= &c * bj;
                }
            }
            quot[i] = c;
        }
        if r.iter().any(|x| !x.is_zero()) {
            return Err(Error::NotDivisible);
        }
        Ok(Self::from_coefficients(
            self.min_exponent - divisor.min_exponent,
            quot,
        ))
    }

    /// Exact evaluation at a positive rational `q0`.
    pub fn specialize(&self, q0: &Rational) -> Result<Rational> {
        if !q0.is_positive() {
            return domain(format!("q must be positive, got {}", format_rational(q0)));
        }
        let mut acc = Rational::zero();
        for c in self.coefficients.iter().rev() {
            acc = acc * q0 + c;
        }
        Ok(acc * rat_pow(q0, self.min_exponent))
    }

    /// Floating-point evaluation at `q0 > 0`.
    pub fn specialize_f64(&self, q0: f64) -> Result<f64> {
        if q0.is_nan() || q0 <= 0.0 || !q0.is_finite() {
            return domain(format!("q must be positive and finite, got {q0}"));
        }
        let mut acc = 0.0;
        for c in self.coefficients.iter().rev() {
            acc = acc * q0 + to_f64(c);
        }
        Ok(acc * q0.powi(self.min_exponent as i32))
    }

    /// True when every coefficient is a nonnegative integer.
    pub fn has_natural_coefficients(&self) -> bool {
        self.coefficients
            .iter()
            .all(|c| c.is_integer() && !c.is_negative())
    }
}

impl Default for LaurentPoly {
    fn default() -> Self {
        Self::zero()
    }
}

impl Zero for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::zero()
    }
    fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }
}

impl From<Rational> for LaurentPoly {
    fn from(c: Rational) -> Self {
        LaurentPoly::constant(c)
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        LaurentPoly::constant(int(c))
    }
}

fn add_into(out: &mut LaurentPoly, other: &LaurentPoly, sign: bool) {
    if other.is_zero() {
        return;
    }
    if out.is_zero() {
        *out = if sign { other.clone() } else { -other.clone() };
        return;
    }
    let lo = out.min_exponent.min(other.min_exponent);
    let hi = out
        .max_exponent()
        .unwrap()
        .max(other.max_exponent().unwrap());
    let mut coeffs = vec![Rational::zero(); (hi - lo + 1) as usize];
    for (i, c) in out.coefficients.drain(..).enumerate() {
        coeffs[(out.min_exponent - lo) as usize + i] = c;
    }
    for (i, c) in other.coefficients.iter().enumerate() {
        let slot = &mut coeffs[(other.min_exponent - lo) as usize + i];
        if slot.is_integer() && c.is_integer() {
            let n = if sign {
                slot.numer() + c.numer()
            } else {
                slot.numer() - c.numer()
            };
            *slot = Rational::from_integer(n);
        } else if sign {
            *slot += c;
        } else {
            *slot -= c;
        }
    }
    out.min_exponent = lo;
    out.coefficients = coeffs;
    out.normalize();
}

// Convolution of integer coefficient lists without gcd reductions; machine
// integers while they suffice, big integers otherwise.
fn integer_product(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let len = a.len() + b.len() - 1;
    let small = |v: &[Rational]| {
        v.iter()
            .map(|c| c.numer().to_i64())
            .collect::<Option<Vec<i64>>>()
    };
    if let (Some(x), Some(y)) = (small(a), small(b)) {
        let mut acc = vec![0i128; len];
        let mut ok = true;
        'outer: for (i, &p) in x.iter().enumerate() {
            if p == 0 {
                continue;
            }
            for (j, &r) in y.iter().enumerate() {
                match acc[i + j].checked_add(p as i128 * r as i128) {
                    Some(v) => acc[i + j] = v,
                    None => {
                        ok = false;
                        break 'outer;
                    }
                }
            }
        }
        if ok {
            return acc
                .into_iter()
                .map(|v| Rational::from_integer(BigInt::from(v)))
                .collect();
        }
    }
    let mut acc = vec![BigInt::zero(); len];
    for (i, p) in a.iter().enumerate() {
        if p.is_zero() {
            continue;
        }
        for (j, r) in b.iter().enumerate() {
            acc[i + j] += p.numer() * r.numer();
        }
    }
    acc.into_iter().map(Rational::from_integer).collect()
}

impl<'a> AddAssign<&'a LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &'a LaurentPoly) {
        add_into(self, rhs, true);
    }
}

impl AddAssign for LaurentPoly {
    fn add_assign(&mut self, rhs: LaurentPoly) {
        add_into(self, &rhs, true);
    }
}

impl<'a> SubAssign<&'a LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &'a LaurentPoly) {
        add_into(self, rhs, false);
    }
}

impl SubAssign for LaurentPoly {
    fn sub_assign(&mut self, rhs: LaurentPoly) {
        add_into(self, &rhs, false);
    }
}

impl<'a> Add<&'a LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl<'a> Sub<&'a LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self -= &rhs;
        self
    }
}

impl<'a> Mul<&'a LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let len = self.coefficients.len() + rhs.coefficients.len() - 1;
        let integral = |p: &LaurentPoly| p.coefficients.iter().all(|c| c.is_integer());
        let coeffs = if integral(self) && integral(rhs) {
            integer_product(&self.coefficients, &rhs.coefficients)
        } else {
            let mut coeffs = vec![Rational::zero(); len];
            for (i, a) in self.coefficients.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (j, b) in rhs.coefficients.iter().enumerate() {
                    coeffs[i + j] += a * b;
                }
            }
            coeffs
        };
        LaurentPoly::from_coefficients(self.min_exponent + rhs.min_exponent, coeffs)
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(mut self) -> LaurentPoly {
        for c in &mut self.coefficients {
            *c = -c.clone();
        }
        self
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -self.clone()
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let show_coeff = !mag.is_one() || e == 0;
            if show_coeff {
                write!(f, "{}", format_rational(&mag))?;
            }
            match e {
                0 => {}
                1 => write!(f, "{}q", if show_coeff { "*" } else { "" })?,
                _ => write!(f, "{}q^{}", if show_coeff { "*" } else { "" }, e)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl PartialOrd for LaurentPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for LaurentPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.min_exponent, &self.coefficients).cmp(&(other.min_exponent, &other.coefficients))
    }
}

/// `[n] = q^{-n+1} + q^{-n+3} + ... + q^{n-1}`.
pub fn q_integer(n: u32) -> LaurentPoly {
    if n == 0 {
        return LaurentPoly::zero();
    }
    let mut coeffs = vec![Rational::zero(); 2 * n as usize - 1];
    for j in 0..n as usize {
        coeffs[2 * j] = Rational::one();
    }
    LaurentPoly::from_coefficients(1 - n as i64, coeffs)
}

/// `[n]! = [1][2]...[n]`, with `[0]! = 1`.
pub fn q_factorial(n: u32) -> LaurentPoly {
    (1..=n).fold(LaurentPoly::one(), |acc, k| &acc * &q_integer(k))
}

/// The q-binomial `[n]!/([k]![n-k]!)`, zero outside `0 <= k <= n`.
pub fn q_binomial(n: i64, k: i64) -> LaurentPoly {
    if n < 0 || k < 0 || k > n {
        return LaurentPoly::zero();
    }
    let (n, k) = (n as u32, k as u32);
    let denom = &q_factorial(k) * &q_factorial(n - k);
    q_factorial(n)
        .exact_div(&denom)
        .expect("q-binomial quotient must be a Laurent polynomial")
}

/// A ratio of two Laurent polynomials, used where the value is a rational
/// function such as `1/[2]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QFraction {
    pub numerator: LaurentPoly,
    pub denominator: LaurentPoly,
}

impl QFraction {
    pub fn new(numerator: LaurentPoly, denominator: LaurentPoly) -> Self {
        assert!(!denominator.is_zero(), "zero denominator");
        QFraction {
            numerator,
            denominator,
        }
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        QFraction::new(p, LaurentPoly::one())
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    /// Cross-multiplied equality.
    pub fn equals(&self, other: &QFraction) -> bool {
        &self.numerator * &other.denominator == &other.numerator * &self.denominator
    }

    pub fn specialize(&self, q0: &Rational) -> Result<Rational> {
        let d = self.denominator.specialize(q0)?;
        if d.is_zero() {
            return domain("denominator vanishes at this q");
        }
        Ok(self.numerator.specialize(q0)? / d)
    }

    pub fn specialize_f64(&self, q0: f64) -> Result<f64> {
        Ok(self.numerator.specialize_f64(q0)? / self.denominator.specialize_f64(q0)?)
    }

    /// The quotient as a Laurent polynomial when it is one.
    pub fn to_poly(&self) -> Result<LaurentPoly> {
        self.numerator.exact_div(&self.denominator)
    }
}

impl fmt::Display for QFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denominator.is_one() {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "({}) / ({})", self.numerator, self.denominator)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q() -> LaurentPoly {
        LaurentPoly::q_pow(1)
    }

    #[test]
    fn q_integer_two() {
        assert_eq!(q_integer(2), LaurentPoly::from_integers(-1, &[1, 0, 1]));
        assert!(q_integer(0).is_zero());
        assert_eq!(q_integer(3).specialize(&int(1)).unwrap(), int(3));
    }

    #[test]
    fn q_integer_at_one_is_n() {
        for n in 0..=50 {
            assert_eq!(q_integer(n).specialize(&int(1)).unwrap(), int(n as i64));
        }
    }

    #[test]
    fn factorials() {
        assert!(q_factorial(0).is_one());
        assert_eq!(q_factorial(2), q_integer(2));
        assert_eq!(q_factorial(3).specialize(&int(1)).unwrap(), int(6));
    }

    #[test]
    fn binomials() {
        assert_eq!(q_binomial(2, 1), q_integer(2));
        assert_eq!(q_binomial(4, 2).specialize(&int(1)).unwrap(), int(6));
        assert!(q_binomial(3, 5).is_zero());
        assert!(q_binomial(3, -1).is_zero());
    }

    #[test]
    fn binomial_pascal_palindromic_natural() {
        for n in 1..=12i64 {
            for k in 0..=n {
                let b = q_binomial(n, k);
                assert!(b.is_palindromic());
                assert!(b.has_natural_coefficients());
                if k >= 1 && k < n {
                    let rhs =
                        &q_binomial(n - 1, k).shift(k) + &q_binomial(n - 1, k - 1).shift(-(n - k));
                    assert_eq!(b, rhs, "n={n} k={k}");
                }
            }
        }
        for n in 0..=20 {
            assert!(q_integer(n).is_palindromic());
        }
    }

    #[test]
    fn arithmetic_examples() {
        let one = LaurentPoly::one();
        let a = &q() + &one;
        let b = &q() - &one;
        assert_eq!(&a * &b, LaurentPoly::from_integers(0, &[-1, 0, 1]));
        assert_eq!(
            LaurentPoly::from_integers(0, &[-1, 0, 1])
                .exact_div(&b)
                .unwrap(),
            a
        );
        assert_eq!(
            q_integer(4).exact_div(&q_integer(2)).unwrap(),
            &LaurentPoly::q_pow(-2) + &LaurentPoly::q_pow(2)
        );
        assert_eq!(
            q_integer(3).exact_div(&q_integer(2)),
            Err(Error::NotDivisible)
        );
        assert!(matches!(
            q().exact_div(&LaurentPoly::zero()),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn specialization() {
        assert_eq!(q_integer(2).specialize(&int(1)).unwrap(), int(2));
        assert_eq!(q_integer(3).specialize(&rat(1, 2)).unwrap(), rat(21, 4));
        assert!(LaurentPoly::zero()
            .specialize(&rat(3, 7))
            .unwrap()
            .is_zero());
        assert!(matches!(q().specialize(&int(0)), Err(Error::Domain(_))));
        assert!(matches!(q().specialize(&int(-1)), Err(Error::Domain(_))));
        assert!(matches!(q().specialize_f64(-0.5), Err(Error::Domain(_))));
        assert!((q_integer(3).specialize_f64(0.5).unwrap() - 5.25).abs() < 1e-15);
    }

    #[test]
    fn normalization_and_display() {
        let p = LaurentPoly::from_integers(-3, &[0, 0, 2, 0, 0]);
        assert_eq!(p.min_exponent(), -1);
        assert_eq!(p.coefficients().len(), 1);
        assert_eq!(LaurentPoly::from_integers(5, &[0, 0]), LaurentPoly::zero());
        assert_eq!(q_integer(2).to_string(), "q^-1 + q");
        assert_eq!(
            LaurentPoly::from_integers(0, &[-1, 0, 3]).to_string(),
            "-1 + 3*q^2"
        );
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("1/2").unwrap(), rat(1, 2));
        assert_eq!(parse_rational(" 3 ").unwrap(), int(3));
        assert_eq!(parse_rational("0.25").unwrap(), rat(1, 4));
        assert_eq!(parse_rational("-1.5").unwrap(), rat(-3, 2));
        assert_eq!(parse_rational("2.5e-1").unwrap(), rat(1, 4));
        assert_eq!(parse_rational("3E2").unwrap(), int(300));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert_eq!(format_rational(&rat(6, 4)), "3/2");
        assert_eq!(format_rational(&int(-2)), "-2");
    }

    #[test]
    fn fractions() {
        let f = QFraction::new(LaurentPoly::one(), q_integer(2));
        assert_eq!(f.specialize(&int(1)).unwrap(), rat(1, 2));
        let g = QFraction::new(q_integer(2), q_integer(2).pow(2));
        assert!(f.equals(&g));
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        (-4i64..4, prop::collection::vec(-5i64..5, 0..6))
            .prop_map(|(e, c)| LaurentPoly::from_integers(e, &c))
    }

    proptest! {
        #[test]
        fn ring_laws(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }

        #[test]
        fn specialize_is_multiplicative(a in arb_poly(), b in arb_poly(), n in 1i64..6, d in 1i64..6) {
            let q0 = rat(n, d);
            let lhs = (&a * &b).specialize(&q0).unwrap();
            prop_assert_eq!(lhs, a.specialize(&q0).unwrap() * b.specialize(&q0).unwrap());
        }

        #[test]
        fn division_inverts_multiplication(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!b.is_zero());
            prop_assert_eq!((&a * &b).exact_div(&b).unwrap(), a);
        }

        #[test]
        fn bar_is_involution(a in arb_poly()) {
            prop_assert_eq!(a.bar().bar(), a.clone());
            prop_assert_eq!(a.specialize(&int(1)).unwrap(), a.bar().specialize(&int(1)).unwrap());
        }
    }
}

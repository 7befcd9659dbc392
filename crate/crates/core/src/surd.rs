//! Exact real radicals.
//!
//! A [`Surd`] is a finite sum `Σ c_k · ρ_k` of rational coefficients `c_k`
//! times *radical monomials* `ρ_k = ∏ p^{e_p}` where the `p` are primes and
//! every exponent lies strictly between 0 and 1.  Such radical monomials are
//! linearly independent over ℚ, so the representation is canonical and
//! equality is structural.
//!
//! Products and sums are always exact.  Rational powers and inverses are
//! exact for monomials (a single term); asking for a fractional power of a
//! genuine sum is reported as [`Error::Inexact`].  This is all that chart
//! arithmetic of weighted blow-ups needs: control parameters are products of
//! coordinates, and their roots are monomials again.

use crate::error::{Error, Result};
use crate::rational::{fmt_q, q_to_f64, Q};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Rational exponent.
pub type Exp = Ratio<i64>;

/// A radical monomial: prime ↦ exponent in the open interval (0, 1).
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Radical(BTreeMap<u64, Exp>);

impl Radical {
    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    /// `ln` of the (positive) value.
    fn ln(&self) -> f64 {
        self.0.iter().map(|(p, e)| (*e.numer() as f64 / *e.denom() as f64) * (*p as f64).ln()).sum()
    }

    /// Product of two radicals, returned as rational factor times radical.
    fn mul(&self, other: &Radical) -> (Q, Radical) {
        let mut out = self.0.clone();
        let mut coeff = Q::one();
        for (p, e) in &other.0 {
            let entry = out.entry(*p).or_insert_with(Exp::zero);
            *entry += e;
        }
        out.retain(|p, e| {
            if *e >= Exp::one() {
                *e -= Exp::one();
                coeff *= Q::from_integer(BigInt::from(*p));
            }
            !e.is_zero()
        });
        (coeff, Radical(out))
    }

    /// `self^e` as rational factor times radical.
    fn pow(&self, e: Exp) -> (Q, Radical) {
        let mut coeff = Q::one();
        let mut out = BTreeMap::new();
        for (p, f) in &self.0 {
            let (int, frac) = split_exp(*f * e);
            coeff *= pow_int(&Q::from_integer(BigInt::from(*p)), int);
            if !frac.is_zero() {
                out.insert(*p, frac);
            }
        }
        (coeff, Radical(out))
    }
}

/// Splits `e` into `floor(e)` and the fractional part in `[0, 1)`.
fn split_exp(e: Exp) -> (i64, Exp) {
    let fl = e.floor().to_integer();
    (fl, e - Exp::from_integer(fl))
}

/// Integer power (possibly negative) of a non-zero rational.
fn pow_int(x: &Q, e: i64) -> Q {
    let mut acc = Q::one();
    for _ in 0..e.unsigned_abs() {
        acc *= x;
    }
    if e < 0 {
        acc.recip()
    } else {
        acc
    }
}

/// Exact real number of the form `Σ c_k · ρ_k`; see the module docs.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Surd {
    terms: BTreeMap<Radical, Q>,
}

impl Surd {
    pub fn from_q(x: Q) -> Surd {
        let mut terms = BTreeMap::new();
        if !x.is_zero() {
            terms.insert(Radical::default(), x);
        }
        Surd { terms }
    }

    pub fn from_i64(n: i64) -> Surd {
        Surd::from_q(Q::from_integer(BigInt::from(n)))
    }

    /// The value as a rational, if it is one.
    pub fn as_q(&self) -> Option<Q> {
        match self.terms.len() {
            0 => Some(Q::zero()),
            1 => self.terms.get(&Radical::default()).cloned(),
            _ => None,
        }
    }

    /// Whether the value is a single rational multiple of a radical monomial.
    pub fn is_monomial(&self) -> bool {
        self.terms.len() <= 1
    }

    /// Number of radical terms (0 for zero).
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    fn monomial(&self) -> Option<(&Radical, &Q)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// Exact sign when decidable.  Monomials are always decided; for sums of
    /// distinct radicals the sign is read off a floating-point evaluation and
    /// refused when cancellation makes it unreliable.
    pub fn signum(&self) -> Result<i32> {
        if self.terms.is_empty() {
            return Ok(0);
        }
        if let Some((_, c)) = self.monomial() {
            return Ok(if c.is_positive() { 1 } else { -1 });
        }
        let (v, mag) = self.terms.iter().fold((0.0, 0.0), |(v, mag), (r, c)| {
            let t = q_to_f64(c) * r.ln().exp();
            (v + t, mag + t.abs())
        });
        if v.abs() > 1e-9 * mag {
            Ok(if v > 0.0 { 1 } else { -1 })
        } else {
            Err(Error::Inexact(format!("sign of {self} is numerically undecidable")))
        }
    }

    /// Nearest `f64` (evaluated term by term).
    pub fn to_f64(&self) -> f64 {
        self.terms.iter().map(|(r, c)| q_to_f64(c) * r.ln().exp()).sum()
    }

    pub fn abs(&self) -> Result<Surd> {
        Ok(if self.signum()? < 0 { -self.clone() } else { self.clone() })
    }

    /// Multiplicative inverse of a non-zero monomial.
    pub fn inv(&self) -> Result<Surd> {
        match self.monomial() {
            Some((r, c)) => {
                let (f, r2) = r.pow(Exp::from_integer(-1));
                Ok(Surd::single(r2, f * c.recip()))
            }
            None if self.is_zero() => Err(Error::OutsideDomain("division by zero".into())),
            None => Err(Error::Inexact(format!("inverse of the sum {self}"))),
        }
    }

    pub fn div(&self, other: &Surd) -> Result<Surd> {
        Ok(self * &other.inv()?)
    }

    /// `self^e` for a rational exponent.
    ///
    /// Integer exponents are exact for every value (negative ones need a
    /// non-zero monomial).  Fractional exponents require a non-negative
    /// monomial; `0^e = 0` for `e > 0`.
    pub fn pow(&self, e: Exp) -> Result<Surd> {
        if e.is_integer() {
            let n = e.to_integer();
            if n >= 0 {
                return Ok(self.pow_u(n as u64));
            }
            return Ok(self.inv()?.pow_u(n.unsigned_abs()));
        }
        if self.is_zero() {
            return if e > Exp::zero() {
                Ok(Surd::zero())
            } else {
                Err(Error::OutsideDomain("negative power of zero".into()))
            };
        }
        let (r, c) = self
            .monomial()
            .ok_or_else(|| Error::Inexact(format!("fractional power of the sum {self}")))?;
        if c.is_negative() {
            return Err(Error::OutsideDomain(format!("fractional power of negative value {self}")));
        }
        let (f1, r1) = r.pow(e);
        let (f2, r2) = rational_pow(c, e)?;
        let (f3, r3) = r1.mul(&r2);
        Ok(Surd::single(r3, f1 * f2 * f3))
    }

    /// `self^(1/n)` for a non-negative monomial.
    pub fn root(&self, n: u32) -> Result<Surd> {
        self.pow(Exp::new(1, n as i64))
    }

    fn pow_u(&self, mut n: u64) -> Surd {
        let mut base = self.clone();
        let mut acc = Surd::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            n >>= 1;
        }
        acc
    }

    fn single(r: Radical, c: Q) -> Surd {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(r, c);
        }
        Surd { terms }
    }

    fn add_term(&mut self, r: Radical, c: Q) {
        if c.is_zero() {
            return;
        }
        let remove = {
            let e = self.terms.entry(r.clone()).or_insert_with(Q::zero);
            *e += c;
            e.is_zero()
        };
        if remove {
            self.terms.remove(&r);
        }
    }

    pub fn scale_q(&self, c: &Q) -> Surd {
        if c.is_zero() {
            return Surd::zero();
        }
        Surd { terms: self.terms.iter().map(|(r, d)| (r.clone(), d * c)).collect() }
    }
}

/// `c^e` for a positive rational `c` and fractional `e`, via factorization.
fn rational_pow(c: &Q, e: Exp) -> Result<(Q, Radical)> {
    let mut coeff = Q::one();
    let mut rad = Radical::default();
    for (part, sgn) in [(c.numer(), 1i64), (c.denom(), -1i64)] {
        for (p, k) in factor(part.magnitude())? {
            let (int, frac) = split_exp(e * Exp::from_integer(sgn * k as i64));
            coeff *= pow_int(&Q::from_integer(BigInt::from(p)), int);
            if !frac.is_zero() {
                let (f, r) = rad.mul(&Radical(BTreeMap::from([(p, frac)])));
                coeff *= f;
                rad = r;
            }
        }
    }
    Ok((coeff, rad))
}

/// Prime factorization of a positive integer.
///
/// Trial division handles small factors; a remaining cofactor that fits in
/// 64 bits is split by Pollard's rho with a deterministic Miller–Rabin test.
/// Larger cofactors are refused rather than guessed.
pub fn factor(n: &BigUint) -> Result<Vec<(u64, u32)>> {
    let mut out: BTreeMap<u64, u32> = BTreeMap::new();
    let mut n = n.clone();
    if n.is_zero() {
        return Err(Error::OutsideDomain("factorization of zero".into()));
    }
    let mut d: u64 = 2;
    while d < 1 << 16 {
        let dd = BigUint::from(d);
        if &dd * &dd > n {
            break;
        }
        while (&n % &dd).is_zero() {
            n /= &dd;
            *out.entry(d).or_default() += 1;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if !n.is_one() {
        let rest = n
            .to_u64()
            .ok_or_else(|| Error::Inexact(format!("radicand cofactor {n} exceeds 64 bits")))?;
        let mut stack = vec![rest];
        while let Some(m) = stack.pop() {
            if m == 1 {
                continue;
            }
            if is_prime_u64(m) {
                *out.entry(m).or_default() += 1;
            } else {
                let f = pollard_rho(m);
                stack.push(f);
                stack.push(m / f);
            }
        }
    }
    Ok(out.into_iter().collect())
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller–Rabin for 64-bit integers.
fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let (mut d, mut r) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        r += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A non-trivial factor of a composite odd `n`.
fn pollard_rho(n: u64) -> u64 {
    if n % 2 == 0 {
        return 2;
    }
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = (x.abs_diff(y)).gcd(&n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

impl Zero for Surd {
    fn zero() -> Surd {
        Surd::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for Surd {
    fn one() -> Surd {
        Surd::from_q(Q::one())
    }
}

impl From<Q> for Surd {
    fn from(x: Q) -> Surd {
        Surd::from_q(x)
    }
}

impl<'a> Add<&'a Surd> for &'a Surd {
    type Output = Surd;
    fn add(self, rhs: &Surd) -> Surd {
        let mut out = self.clone();
        for (r, c) in &rhs.terms {
            out.add_term(r.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a Surd> for &'a Surd {
    type Output = Surd;
    fn sub(self, rhs: &Surd) -> Surd {
        let mut out = self.clone();
        for (r, c) in &rhs.terms {
            out.add_term(r.clone(), -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a Surd> for &'a Surd {
    type Output = Surd;
    fn mul(self, rhs: &Surd) -> Surd {
        let mut out = Surd::zero();
        for (r1, c1) in &self.terms {
            for (r2, c2) in &rhs.terms {
                let (f, r) = r1.mul(r2);
                out.add_term(r, f * c1 * c2);
            }
        }
        out
    }
}

impl Neg for Surd {
    type Output = Surd;
    fn neg(self) -> Surd {
        Surd { terms: self.terms.into_iter().map(|(r, c)| (r, -c)).collect() }
    }
}

impl Add for Surd {
    type Output = Surd;
    fn add(self, rhs: Surd) -> Surd {
        &self + &rhs
    }
}

impl Sub for Surd {
    type Output = Surd;
    fn sub(self, rhs: Surd) -> Surd {
        &self - &rhs
    }
}

impl Mul for Surd {
    type Output = Surd;
    fn mul(self, rhs: Surd) -> Surd {
        &self * &rhs
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (r, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}", fmt_q(c))?;
            for (p, e) in &r.0 {
                write!(f, "*{}^({}/{})", p, e.numer(), e.denom())?;
            }
        }
        Ok(())
    }
}

impl std::str::FromStr for Surd {
    type Err = Error;

    /// Parses the display form: `c*p^(a/b)*… + …` with rational `c`.
    fn from_str(text: &str) -> Result<Surd> {
        let text = text.trim();
        if text.is_empty() {
            return Err(Error::Parse("empty number".into()));
        }
        let mut total = Surd::zero();
        for term in text.split(" + ") {
            let mut parts = term.trim().split('*');
            let mut value = Surd::from_q(crate::rational::parse_q(parts.next().unwrap_or(""))?);
            for factor in parts {
                let bad = || Error::Parse(format!("malformed radical factor {factor:?}"));
                let (base, exp) = factor.split_once("^(").ok_or_else(bad)?;
                let exp = exp.strip_suffix(')').ok_or_else(bad)?;
                let (a, b) = exp.split_once('/').ok_or_else(bad)?;
                let a: i64 = a.trim().parse().map_err(|_| bad())?;
                let b: i64 = b.trim().parse().map_err(|_| bad())?;
                if b == 0 {
                    return Err(bad());
                }
                let base = Surd::from_q(crate::rational::parse_q(base)?);
                value = &value * &base.pow(Exp::new(a, b))?;
            }
            total = &total + &value;
        }
        Ok(total)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qf};

    fn s(n: i64) -> Surd {
        Surd::from_i64(n)
    }

    #[test]
    fn display_parses_back() {
        let x = &s(3).root(2).unwrap().scale_q(&qf(5, 7)) + &Surd::from_q(qf(-1, 2));
        assert_eq!(x.to_string().parse::<Surd>().unwrap(), x);
        assert!("2*3^(1/0)".parse::<Surd>().is_err());
    }

    #[test]
    fn perfect_roots_are_rational() {
        assert_eq!(s(9).root(2).unwrap(), s(3));
        assert_eq!(Surd::from_q(qf(8, 27)).root(3).unwrap(), Surd::from_q(qf(2, 3)));
        assert_eq!(s(16).pow(Exp::new(3, 4)).unwrap(), s(8));
    }

    #[test]
    fn radicals_multiply_back() {
        let r2 = s(2).root(2).unwrap();
        assert_eq!(&r2 * &r2, s(2));
        let c = s(12).root(3).unwrap();
        assert_eq!(c.pow(Exp::from_integer(3)).unwrap(), s(12));
        let r6 = s(6).root(2).unwrap();
        let r3 = s(3).root(2).unwrap();
        assert_eq!(&r2 * &r3, r6);
    }

    #[test]
    fn like_terms_combine_and_unlike_stay() {
        let r8 = s(8).root(2).unwrap();
        let r2 = s(2).root(2).unwrap();
        assert_eq!(&r8 - &(&r2 + &r2), Surd::zero());
        let sum = &r2 + &s(1);
        assert_eq!(sum.term_count(), 2);
        assert!(sum.root(2).is_err());
        assert!((sum.to_f64() - (2f64.sqrt() + 1.0)).abs() < 1e-15);
        assert_eq!(sum.signum().unwrap(), 1);
    }

    #[test]
    fn inverse_and_negative_exponents() {
        let x = s(5).pow(Exp::new(-2, 3)).unwrap();
        let y = s(5).pow(Exp::new(2, 3)).unwrap();
        assert_eq!(&x * &y, s(1));
        assert_eq!(x.inv().unwrap(), y);
        assert!(s(-4).root(2).is_err());
        assert_eq!(Surd::zero().root(3).unwrap(), Surd::zero());
    }

    #[test]
    fn factorization_covers_large_primes() {
        let n = BigUint::from(1_000_000_007u64) * BigUint::from(998_244_353u64);
        let f = factor(&n).unwrap();
        assert_eq!(f, vec![(998_244_353, 1), (1_000_000_007, 1)]);
        assert_eq!(factor(&BigUint::from(360u32)).unwrap(), vec![(2, 3), (3, 2), (5, 1)]);
    }

    #[test]
    fn rational_radicand_with_denominator() {
        let x = Surd::from_q(qf(3, 4)).root(2).unwrap();
        assert_eq!(&x * &x, Surd::from_q(qf(3, 4)));
        assert!((x.to_f64() - 0.75f64.sqrt()).abs() < 1e-15);
        assert_eq!(Surd::from_q(q(0)).as_q(), Some(q(0)));
    }
}

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::{recip, Scalar};

/// Univariate polynomial with coefficients in ascending degree order.
///
/// The representation is canonical: the last coefficient is nonzero and the
/// zero polynomial has no coefficients at all. Its degree is `None`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> Poly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// `c * s^k`
    pub fn monomial(c: T, k: usize) -> Self {
        let mut coeffs = vec![T::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// The indeterminate `s`.
    pub fn s() -> Self {
        Self::monomial(T::one(), 1)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    /// Coefficient of `s^k` (zero past the degree).
    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// True for nonzero constants and for zero.
    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading_coeff(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    /// Multiply by `s^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![T::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    /// Scale to leading coefficient one. Zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading_coeff().and_then(recip) {
            Some(inv) => self.scale(&inv),
            None => Self::zero(),
        }
    }

    pub fn derivative(&self) -> Self {
        let mut k = T::zero();
        let coeffs = self
            .coeffs
            .iter()
            .skip(1)
            .map(|c| {
                k = k.clone() + T::one();
                c.clone() * k.clone()
            })
            .collect();
        Self::new(coeffs)
    }

    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    /// Euclidean division: `self = divisor * q + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let db = divisor.degree().ok_or(Error::DivisionByZero)?;
        let inv_lead = recip(divisor.leading_coeff().expect("nonzero divisor")).unwrap();
        let mut rem = self.coeffs.clone();
        let Some(da) = self.degree().filter(|&da| da >= db) else {
            return Ok((Self::zero(), self.clone()));
        };
        let mut quot = vec![T::zero(); da - db + 1];
        for k in (0..=da - db).rev() {
            let c = rem[k + db].clone() * inv_lead.clone();
            if c.is_zero() {
                continue;
            }
            for (i, b) in divisor.coeffs.iter().enumerate() {
                rem[k + i] = rem[k + i].clone() - c.clone() * b.clone();
            }
            quot[k] = c;
        }
        rem.truncate(db);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Quotient of an exact division, `None` if the remainder is nonzero.
    pub fn div_exact(&self, divisor: &Self) -> Result<Option<Self>> {
        let (q, r) = self.div_rem(divisor)?;
        Ok(r.is_zero().then_some(q))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::ZeroGcd);
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// Evaluate as a differential operator on a polynomial signal: `p(d/dt) w`.
    pub fn apply_derivative(&self, w: &Self) -> Self {
        let mut acc = Self::zero();
        let mut dw = w.clone();
        for c in &self.coeffs {
            if dw.is_zero() {
                break;
            }
            acc = acc + dw.scale(c);
            dw = dw.derivative();
        }
        acc
    }
}

impl<T: Scalar> Default for Poly<T> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<T: Scalar> From<T> for Poly<T> {
    fn from(c: T) -> Self {
        Self::constant(c)
    }
}

impl<T: Scalar> Add for &Poly<T> {
    type Output = Poly<T>;
    fn add(self, rhs: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<T: Scalar> Sub for &Poly<T> {
    type Output = Poly<T>;
    fn sub(self, rhs: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<T: Scalar> Mul for &Poly<T> {
    type Output = Poly<T>;
    fn mul(self, rhs: &Poly<T>) -> Poly<T> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }
}

impl<T: Scalar> Neg for &Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl<T: Scalar> $tr for Poly<T> {
            type Output = Poly<T>;
            fn $m(self, rhs: Poly<T>) -> Poly<T> { (&self).$m(&rhs) }
        }
        impl<T: Scalar> $tr<&Poly<T>> for Poly<T> {
            type Output = Poly<T>;
            fn $m(self, rhs: &Poly<T>) -> Poly<T> { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul);

impl<T: Scalar> Neg for Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        -&self
    }
}

impl<T: fmt::Debug> fmt::Debug for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Poly").field(&self.coeffs).finish()
    }
}

impl<T: Scalar> fmt::Display for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let one = c.is_one() && k > 0;
            let minus_one = (-c.clone()).is_one() && k > 0;
            if minus_one {
                f.write_str("-")?;
            } else if !one {
                if k > 0 {
                    write!(f, "({c})")?;
                } else {
                    write!(f, "{c}")?;
                }
            }
            match k {
                0 => {}
                1 => f.write_str("s")?,
                _ => write!(f, "s^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn q(coeffs: &[i64]) -> Poly<Rational> {
        Poly::new(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    #[test]
    fn canonical_trims_trailing_zeros() {
        let p = q(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert!(q(&[0, 0]).is_zero());
        assert_eq!(q(&[]).degree(), None);
    }

    #[test]
    fn divmod_examples() {
        // (s^2 + 1) / s = s rem 1
        let (qu, r) = q(&[1, 0, 1]).div_rem(&q(&[0, 1])).unwrap();
        assert_eq!((qu, r), (q(&[0, 1]), q(&[1])));
        let (qu, r) = q(&[0, 1]).div_rem(&q(&[0, 1])).unwrap();
        assert_eq!((qu, r), (q(&[1]), q(&[])));
        // s^3 - 2s + 4 = (s^2 + s)(s - 1) + (-s + 4)
        let a = q(&[4, -2, 0, 1]);
        let b = q(&[0, 1, 1]);
        let (qu, r) = a.div_rem(&b).unwrap();
        assert_eq!(qu, q(&[-1, 1]));
        assert_eq!(r, q(&[4, -1]));
        assert_eq!(&(&b * &qu) + &r, a);
    }

    #[test]
    fn divide_by_zero_is_error() {
        assert_eq!(q(&[1]).div_rem(&q(&[])), Err(Error::DivisionByZero));
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(q(&[-1, 0, 1]).gcd(&q(&[-1, 1])).unwrap(), q(&[-1, 1]));
        assert_eq!(q(&[0, 1]).gcd(&q(&[1])).unwrap(), q(&[1]));
        let g = q(&[0, 1, 0, 1]).gcd(&q(&[1, 0, 1])).unwrap();
        assert_eq!(g, q(&[1, 0, 1]));
        assert!(q(&[0, 1, 0, 1]).div_exact(&g).unwrap().is_some());
        assert_eq!(q(&[]).gcd(&q(&[])), Err(Error::ZeroGcd));
        // gcd with zero is the monic other argument
        assert_eq!(q(&[]).gcd(&q(&[2, 4])).unwrap(), Poly::new(vec![Rational::new(1.into(), 2.into()), Rational::from_integer(1.into())]));
    }

    #[test]
    fn derivative_operator_on_signals() {
        // (s - 1) applied to t^2 gives 2t - t^2
        let op = q(&[-1, 1]);
        assert_eq!(op.apply_derivative(&q(&[0, 0, 1])), q(&[0, 2, -1]));
        assert_eq!(q(&[0, 0, 0, 1]).derivative(), q(&[0, 0, 3]));
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(q(&[1, -1, 1]).to_string(), "s^2 + -s + 1");
        assert_eq!(q(&[]).to_string(), "0");
    }
}

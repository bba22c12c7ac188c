use super::poly::QPolynomial;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// num(t) / (1-t)^denom_pow, the shape every generating function here takes.
/// Common (1-t) factors are cancelled on construction so equal series
/// compare equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalGF {
    pub num: QPolynomial,
    pub denom_pow: usize,
}

impl RationalGF {
    pub fn new(num: QPolynomial, denom_pow: usize) -> Self {
        let mut gf = RationalGF { num, denom_pow };
        gf.reduce();
        gf
    }

    pub fn zero() -> Self {
        RationalGF { num: QPolynomial::zero(), denom_pow: 0 }
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.denom_pow = 0;
            return;
        }
        while self.denom_pow > 0 && self.num.eval(&BigInt::one()).is_zero() {
            self.num = divide_by_one_minus_t(&self.num);
            self.denom_pow -= 1;
        }
    }

    /// Exact coefficient of t^n in the power series expansion.
    pub fn coefficient(&self, n: usize) -> BigRational {
        if self.denom_pow == 0 {
            return self.num.coeff(n);
        }
        let k = self.denom_pow;
        let mut acc = BigRational::zero();
        let deg = match self.num.degree() {
            Some(d) => d,
            None => return acc,
        };
        for j in 0..=deg.min(n) {
            let c = self.num.coeff(j);
            if c.is_zero() {
                continue;
            }
            acc += c * BigRational::from_integer(binomial_count(n - j + k - 1, k - 1));
        }
        acc
    }

    /// The polynomial p with p(n) = coefficient(n) for all n >= the returned
    /// start, which is 0 exactly when deg(num) < denom_pow.
    pub fn to_polynomial(&self) -> Result<(QPolynomial, usize)> {
        if self.num.is_zero() {
            return Ok((QPolynomial::zero(), 0));
        }
        let deg = self.num.degree().unwrap();
        if self.denom_pow == 0 {
            if deg == 0 {
                return Ok((QPolynomial::zero(), 1));
            }
            return Err(Error::NotEventuallyPolynomial);
        }
        let k = self.denom_pow;
        let mut poly = QPolynomial::zero();
        for j in 0..=deg {
            let c = self.num.coeff(j);
            if c.is_zero() {
                continue;
            }
            let term = QPolynomial::binomial_in(k as i64 - 1 - j as i64, k - 1);
            poly = poly.add(&term.scale(&c));
        }
        let start = (deg + 1).saturating_sub(k);
        Ok((poly, start))
    }

    pub fn add(&self, other: &RationalGF) -> RationalGF {
        let k = self.denom_pow.max(other.denom_pow);
        let a = self.num.mul(&one_minus_t_pow(k - self.denom_pow));
        let b = other.num.mul(&one_minus_t_pow(k - other.denom_pow));
        RationalGF::new(a.add(&b), k)
    }

    pub fn scale(&self, c: &BigRational) -> RationalGF {
        RationalGF::new(self.num.scale(c), self.denom_pow)
    }

    pub fn display_with(&self, var: &str) -> String {
        let num = self.num.display_with(var);
        match self.denom_pow {
            0 => num,
            1 => format!("({num}) / (1 - {var})"),
            k => format!("({num}) / (1 - {var})^{k}"),
        }
    }
}

pub fn one_minus_t_pow(k: usize) -> QPolynomial {
    QPolynomial::from_coeffs(vec![BigRational::one(), -BigRational::one()]).pow(k)
}

/// Synthetic division by (1 - t); valid when the numerator vanishes at 1.
fn divide_by_one_minus_t(p: &QPolynomial) -> QPolynomial {
    let deg = p.degree().expect("nonzero");
    if deg == 0 {
        unreachable!("constant vanishing at 1 is the zero polynomial");
    }
    let mut q = vec![BigRational::zero(); deg];
    q[0] = p.coeff(0);
    for i in 1..deg {
        q[i] = p.coeff(i) + q[i - 1].clone();
    }
    QPolynomial::from_coeffs(q)
}

/// Combinatorial C(m, r): zero when m < r, exact otherwise.
fn binomial_count(m: usize, r: usize) -> BigInt {
    if r > m {
        return BigInt::zero();
    }
    let r = r.min(m - r);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for j in 0..r {
        num *= BigInt::from(m - j);
        den *= BigInt::from(j + 1);
    }
    num / den
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn gf(coeffs: &[i64], k: usize) -> RationalGF {
        RationalGF::new(
            QPolynomial::from_coeffs(coeffs.iter().map(|&c| q(c)).collect()),
            k,
        )
    }

    #[test]
    fn geometric_series_coefficients() {
        let f = gf(&[1], 3);
        assert_eq!(f.coefficient(2), q(6));
        let shifted = gf(&[0, 0, 1], 3);
        for n in 0..8 {
            let expect = if n >= 2 { (n * (n - 1) / 2) as i64 } else { 0 };
            assert_eq!(shifted.coefficient(n), q(expect), "n={n}");
        }
        let mixed = gf(&[1, -2], 3);
        assert_eq!(mixed.coefficient(3), q(-2));
    }

    #[test]
    fn polynomial_agreement_windows() {
        let (p, start) = gf(&[0, 0, 1], 3).to_polynomial().unwrap();
        assert_eq!(start, 0);
        assert_eq!(p, QPolynomial::binomial_in(0, 2));

        let (p, start) = gf(&[1], 1).to_polynomial().unwrap();
        assert_eq!(start, 0);
        assert_eq!(p, QPolynomial::one());

        let f = gf(&[1, 0, 1], 1);
        let (p, start) = f.to_polynomial().unwrap();
        assert_eq!(start, 2);
        assert_eq!(p, QPolynomial::from_int(2));
        assert_eq!(f.coefficient(0), q(1));
        assert_eq!(f.coefficient(1), q(1));
        for n in 2..6 {
            assert_eq!(f.coefficient(n), q(2));
        }
    }

    #[test]
    fn degenerate_denominators() {
        assert!(matches!(
            gf(&[1, 2], 0).to_polynomial(),
            Err(Error::NotEventuallyPolynomial)
        ));
        let (p, start) = gf(&[5], 0).to_polynomial().unwrap();
        assert!(p.is_zero());
        assert_eq!(start, 1);
        let (p, start) = RationalGF::zero().to_polynomial().unwrap();
        assert!(p.is_zero());
        assert_eq!(start, 0);
    }

    #[test]
    fn construction_cancels_common_factors() {
        // (1 - t^2)/(1 - t)^2 = (1 + t)/(1 - t)
        let f = gf(&[1, 0, -1], 2);
        assert_eq!(f.denom_pow, 1);
        assert_eq!(f.num.coeffs(), &[q(1), q(1)]);
        for n in 1..5 {
            assert_eq!(f.coefficient(n), q(2));
        }
        assert_eq!(f, gf(&[1, 1], 1));
    }

    #[test]
    fn sums_align_denominators() {
        // 1/(1-t) + 1/(1-t)^2 has coefficients n + 2.
        let s = gf(&[1], 1).add(&gf(&[1], 2));
        for n in 0..6 {
            assert_eq!(s.coefficient(n), q(n as i64 + 2));
        }
        let (p, start) = s.to_polynomial().unwrap();
        assert_eq!(start, 0);
        assert_eq!(p.eval_usize(11), q(13));
    }
}

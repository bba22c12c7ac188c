use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Polynomial with exact rational coefficients, indexed by exponent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QPolynomial {
    coeffs: Vec<BigRational>,
}

impl QPolynomial {
    pub fn zero() -> Self {
        QPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        QPolynomial::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        let mut p = QPolynomial { coeffs: vec![c] };
        p.trim();
        p
    }

    pub fn from_int(c: i64) -> Self {
        QPolynomial::constant(BigRational::from_integer(BigInt::from(c)))
    }

    pub fn monomial(c: BigRational, exp: usize) -> Self {
        if c.is_zero() {
            return QPolynomial::zero();
        }
        let mut coeffs = vec![BigRational::zero(); exp + 1];
        coeffs[exp] = c;
        QPolynomial { coeffs }
    }

    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Self {
        let mut p = QPolynomial { coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, exp: usize) -> BigRational {
        self.coeffs.get(exp).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn add(&self, other: &QPolynomial) -> QPolynomial {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len).map(|i| self.coeff(i) + other.coeff(i)).collect();
        QPolynomial::from_coeffs(coeffs)
    }

    pub fn sub(&self, other: &QPolynomial) -> QPolynomial {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len).map(|i| self.coeff(i) - other.coeff(i)).collect();
        QPolynomial::from_coeffs(coeffs)
    }

    pub fn neg(&self) -> QPolynomial {
        QPolynomial { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn mul(&self, other: &QPolynomial) -> QPolynomial {
        if self.is_zero() || other.is_zero() {
            return QPolynomial::zero();
        }
        let mut coeffs =
            vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        QPolynomial::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: &BigRational) -> QPolynomial {
        if c.is_zero() {
            return QPolynomial::zero();
        }
        QPolynomial { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn pow(&self, k: usize) -> QPolynomial {
        let mut out = QPolynomial::one();
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    pub fn eval(&self, n: &BigInt) -> BigRational {
        let x = BigRational::from_integer(n.clone());
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * &x + c;
        }
        acc
    }

    pub fn eval_usize(&self, n: usize) -> BigRational {
        self.eval(&BigInt::from(n))
    }

    /// Binomial coefficient C(n + offset, k) as a polynomial in n: the
    /// product of the k linear factors over k!, so evaluation returns the
    /// polynomial value even where the combinatorial count would be zero.
    pub fn binomial_in(offset: i64, k: usize) -> QPolynomial {
        let mut out = QPolynomial::one();
        for j in 0..k {
            let shift = BigRational::from_integer(BigInt::from(offset - j as i64));
            let factor = QPolynomial::from_coeffs(vec![shift, BigRational::one()]);
            out = out.mul(&factor);
        }
        let mut kfact = BigInt::one();
        for j in 2..=k {
            kfact *= BigInt::from(j);
        }
        out.scale(&BigRational::new(BigInt::one(), kfact))
    }

    pub fn display_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for exp in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[exp];
            if c.is_zero() {
                continue;
            }
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else if c.is_negative() {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let mag = c.abs();
            let show_coeff = exp == 0 || !mag.is_one();
            if show_coeff {
                out.push_str(&mag.to_string());
            }
            if exp > 0 {
                if show_coeff {
                    out.push('*');
                }
                out.push_str(var);
                if exp > 1 {
                    out.push_str(&format!("^{exp}"));
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn arithmetic_and_trimming() {
        let p = QPolynomial::from_coeffs(vec![q(1), q(2)]);
        let m = p.mul(&p);
        assert_eq!(m.coeffs(), &[q(1), q(4), q(4)]);
        assert!(m.sub(&m).is_zero());
        assert_eq!(m.sub(&m).degree(), None);
        assert_eq!(p.add(&p.neg()).coeffs().len(), 0);
        assert_eq!(m.eval(&BigInt::from(3)), q(49));
    }

    #[test]
    fn binomials_as_polynomials() {
        // C(n, 2) vanishes at n = 0, 1 and counts pairs afterwards.
        let choose2 = QPolynomial::binomial_in(0, 2);
        assert_eq!(choose2.eval_usize(0), q(0));
        assert_eq!(choose2.eval_usize(1), q(0));
        assert_eq!(choose2.eval_usize(5), q(10));
        // C(n - 2, 3) at n = 1 is the polynomial value, not the count 0.
        let shifted = QPolynomial::binomial_in(-2, 3);
        assert_eq!(shifted.eval_usize(1), q(-1));
        assert_eq!(shifted.eval_usize(7), q(10));
        assert_eq!(QPolynomial::binomial_in(3, 0), QPolynomial::one());
    }

    #[test]
    fn rendering() {
        let p = QPolynomial::from_coeffs(vec![q(1), q(-3) / q(2), q(0), q(1)]);
        assert_eq!(p.display_with("n"), "n^3 - 3/2*n + 1");
        assert_eq!(QPolynomial::zero().display_with("n"), "0");
        assert_eq!(QPolynomial::from_int(-7).display_with("t"), "-7");
        let m = QPolynomial::monomial(q(-1), 2);
        assert_eq!(m.display_with("t"), "-t^2");
    }
}

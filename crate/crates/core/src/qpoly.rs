//! Dense polynomials in `q` over `ℚ`, and polynomials in `x` with
//! [`QPoly`] coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{int, to_slash, Rational, RationalJson};

/// `Σ coeffs[k] q^k`, with no trailing zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct QPoly {
    coeffs: Vec<Rational>,
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        QPoly::constant(int(1))
    }

    pub fn constant(c: Rational) -> Self {
        QPoly::new(vec![c])
    }

    /// `c q^k`.
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        QPoly::new(coeffs)
    }

    pub fn q() -> Self {
        QPoly::monomial(int(1), 1)
    }

    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        QPoly::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn scale(&self, c: &Rational) -> QPoly {
        if c.is_zero() {
            return QPoly::zero();
        }
        QPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn eval(&self, q: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * q + c)
    }

    /// Coefficient-wise absolute value.
    pub fn abs_coeffs(&self) -> QPoly {
        QPoly {
            coeffs: self.coeffs.iter().map(Signed::abs).collect(),
        }
    }

    /// Membership in `ℝ⁺[q²]`: odd coefficients vanish, even ones are `≥ 0`.
    pub fn is_rplus_q2(&self) -> bool {
        self.coeffs.iter().enumerate().all(|(k, c)| {
            if k % 2 == 1 {
                c.is_zero()
            } else {
                !c.is_negative()
            }
        })
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(crate::rational::is_integer)
    }

    /// `c0;c1;c2` with every entry as `num/den`; empty for zero.
    pub fn to_csv_cell(&self) -> String {
        self.coeffs.iter().map(to_slash).collect::<Vec<_>>().join(";")
    }

    pub fn from_csv_cell(s: &str) -> Result<QPoly> {
        if s.trim().is_empty() {
            return Ok(QPoly::zero());
        }
        s.split(';')
            .map(crate::rational::parse_rational)
            .collect::<Result<Vec<_>>>()
            .map(QPoly::new)
    }
}

pub fn eval_at_q(p: &QPoly, q0: &Rational) -> Rational {
    p.eval(q0)
}

pub fn is_rplus_q2(p: &QPoly) -> bool {
    p.is_rplus_q2()
}

impl Add for &QPoly {
    type Output = QPoly;

    fn add(self, rhs: &QPoly) -> QPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        QPoly::new((0..len).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &QPoly {
    type Output = QPoly;

    fn sub(self, rhs: &QPoly) -> QPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        QPoly::new((0..len).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &QPoly {
    type Output = QPoly;

    fn mul(self, rhs: &QPoly) -> QPoly {
        if self.is_zero() || rhs.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        QPoly::new(out)
    }
}

impl Neg for &QPoly {
    type Output = QPoly;

    fn neg(self) -> QPoly {
        QPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for QPoly {
            type Output = QPoly;
            fn $m(self, rhs: QPoly) -> QPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&QPoly> for QPoly {
            type Output = QPoly;
            fn $m(self, rhs: &QPoly) -> QPoly {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for QPoly {
    type Output = QPoly;

    fn neg(self) -> QPoly {
        -&self
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let unit = mag == int(1);
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !unit {
                        write!(f, "{mag}")?;
                    }
                    if k == 1 {
                        f.write_str("q")?;
                    } else {
                        write!(f, "q^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl Serialize for QPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<RationalJson> = self.coeffs.iter().map(RationalJson::from).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for QPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<RationalJson>::deserialize(d)?;
        v.iter()
            .map(Rational::try_from)
            .collect::<Result<Vec<_>>>()
            .map(QPoly::new)
            .map_err(serde::de::Error::custom)
    }
}

/// `Σ_{r=0}^{n} (-1)^r c_r(q) x^{n-r}`, storing the sign-normalized `c_r`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct XQPoly {
    n: usize,
    #[serde(rename = "coeffByR")]
    coeff_by_r: Vec<QPoly>,
}

impl XQPoly {
    pub fn zero(n: usize) -> Self {
        XQPoly {
            n,
            coeff_by_r: vec![QPoly::zero(); n + 1],
        }
    }

    /// From signed-convention coefficients `c_0..c_n`.
    pub fn from_signed(coeff_by_r: Vec<QPoly>) -> Result<Self> {
        let n = coeff_by_r
            .len()
            .checked_sub(1)
            .ok_or_else(|| Error::Parse("no coefficients".into()))?;
        Ok(XQPoly { n, coeff_by_r })
    }

    /// From raw coefficients, `raw[k]` multiplying `x^k`, of a polynomial of
    /// degree at most `n`.
    pub fn from_raw(n: usize, raw: &[QPoly]) -> Result<Self> {
        if raw.len() > n + 1 {
            return Err(Error::DegreeMismatch {
                expected: n,
                got: raw.len() - 1,
            });
        }
        let coeff_by_r = (0..=n)
            .map(|r| {
                let c = raw.get(n - r).cloned().unwrap_or_default();
                if r % 2 == 1 {
                    -c
                } else {
                    c
                }
            })
            .collect();
        Ok(XQPoly { n, coeff_by_r })
    }

    /// Raw coefficients indexed by power of `x`.
    pub fn to_raw(&self) -> Vec<QPoly> {
        (0..=self.n)
            .map(|k| {
                let r = self.n - k;
                let c = &self.coeff_by_r[r];
                if r % 2 == 1 {
                    -c
                } else {
                    c.clone()
                }
            })
            .collect()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `c_r(q)`, the coefficient of `(-1)^r x^{n-r}`.
    pub fn c(&self, r: usize) -> &QPoly {
        &self.coeff_by_r[r]
    }

    pub fn coeff_by_r(&self) -> &[QPoly] {
        &self.coeff_by_r
    }

    pub fn is_zero(&self) -> bool {
        self.coeff_by_r.iter().all(QPoly::is_zero)
    }

    pub fn scale(&self, c: &Rational) -> XQPoly {
        XQPoly {
            n: self.n,
            coeff_by_r: self.coeff_by_r.iter().map(|p| p.scale(c)).collect(),
        }
    }

    pub fn add(&self, other: &XQPoly) -> Result<XQPoly> {
        if self.n != other.n {
            return Err(Error::DegreeMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        Ok(XQPoly {
            n: self.n,
            coeff_by_r: self
                .coeff_by_r
                .iter()
                .zip(&other.coeff_by_r)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    /// Substitutes `q = q0`, giving raw rational coefficients of `x^k`.
    pub fn eval_q_raw(&self, q0: &Rational) -> Vec<Rational> {
        self.to_raw().iter().map(|p| p.eval(q0)).collect()
    }

    /// Evaluates at `x = x0`.
    pub fn eval_x(&self, x0: &Rational) -> QPoly {
        self.to_raw()
            .iter()
            .rev()
            .fold(QPoly::zero(), |acc, c| &acc.scale(x0) + c)
    }
}

impl fmt::Display for XQPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (r, c) in self.coeff_by_r.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(if r % 2 == 1 { " - " } else { " + " })?;
            } else if r % 2 == 1 {
                f.write_str("-")?;
            }
            first = false;
            let k = self.n - r;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})x")?,
                _ => write!(f, "({c})x^{k}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

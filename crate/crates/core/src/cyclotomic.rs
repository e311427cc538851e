//! Exact arithmetic in the cyclotomic integers `Z[ζ_L]`.
//!
//! A [`CycInt`] stores `L` integer coefficients `c_i` and represents
//! `Σ c_i ζ_L^i`. The representation is deliberately not canonical: the
//! relation `Φ_L(ζ_L) = 0` means many coefficient vectors denote the same
//! number. Value equality is therefore always decided by [`CycInt::is_zero`]
//! on a difference, which reduces the coefficient polynomial modulo the
//! cyclotomic polynomial `Φ_L` over the integers.

use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Integer polynomial with ascending-degree coefficients.
///
/// The leading coefficient is nonzero unless the polynomial is zero, in which
/// case `coeffs` is empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<i64>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// Degree of the polynomial, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    /// `x^n - 1`.
    fn x_pow_minus_one(n: usize) -> Self {
        let mut coeffs = vec![0; n + 1];
        coeffs[0] = -1;
        coeffs[n] = 1;
        Self::new(coeffs)
    }

    /// Division by a monic polynomial, returning `(quotient, remainder)`.
    pub fn div_rem_monic(&self, divisor: &IntPoly) -> Result<(IntPoly, IntPoly)> {
        let dd = match divisor.degree() {
            Some(d) if divisor.is_monic() => d,
            _ => return Err(Error::Parameter("divisor must be a monic polynomial".into())),
        };
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((IntPoly::new(Vec::new()), IntPoly::new(rem)));
        }
        let mut quot = vec![0i64; rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let lead = rem[k + dd];
            if lead == 0 {
                continue;
            }
            quot[k] = lead;
            for (i, &d) in divisor.coeffs.iter().enumerate() {
                let t = lead.checked_mul(d).ok_or(Error::Overflow)?;
                rem[k + i] = rem[k + i].checked_sub(t).ok_or(Error::Overflow)?;
            }
        }
        rem.truncate(dd);
        Ok((IntPoly::new(quot), IntPoly::new(rem)))
    }

    /// Evaluates at a floating-point complex number given as `(re, im)`.
    pub fn eval_complex(&self, re: f64, im: f64) -> (f64, f64) {
        let mut acc = (0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            acc = (acc.0 * re - acc.1 * im + c as f64, acc.0 * im + acc.1 * re);
        }
        acc
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.unsigned_abs();
            match (i, a) {
                (0, _) => write!(f, "{a}")?,
                (1, 1) => write!(f, "x")?,
                (1, _) => write!(f, "{a}x")?,
                (_, 1) => write!(f, "x^{i}")?,
                _ => write!(f, "{a}x^{i}")?,
            }
        }
        Ok(())
    }
}

const PHI_TABLE_LIMIT: usize = 256;

fn phi_table() -> &'static [IntPoly] {
    static TABLE: OnceLock<Vec<IntPoly>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut table: Vec<IntPoly> = Vec::with_capacity(PHI_TABLE_LIMIT + 1);
        table.push(IntPoly::new(Vec::new()));
        for order in 1..=PHI_TABLE_LIMIT {
            let phi = phi_from_divisors(order, |d| Ok(table[d].clone()))
                .expect("cyclotomic polynomials below the table limit fit in i64");
            table.push(phi);
        }
        table
    })
}

/// `Φ_L = (x^L - 1) / Π_{d | L, d < L} Φ_d`, asserting that every division is exact.
fn phi_from_divisors(order: usize, phi_of: impl Fn(usize) -> Result<IntPoly>) -> Result<IntPoly> {
    let mut poly = IntPoly::x_pow_minus_one(order);
    for d in (1..order).filter(|d| order.is_multiple_of(*d)) {
        let (q, r) = poly.div_rem_monic(&phi_of(d)?)?;
        assert!(r.is_zero(), "x^{order} - 1 not divisible by Φ_{d}");
        poly = q;
    }
    Ok(poly)
}

/// The `L`-th cyclotomic polynomial `Φ_L`.
pub fn cyclotomic_poly(order: usize) -> Result<IntPoly> {
    match order {
        0 => Err(Error::ZeroOrder),
        o if o <= PHI_TABLE_LIMIT => Ok(phi_table()[o].clone()),
        o => phi_from_divisors(o, cyclotomic_poly),
    }
}

fn with_phi<T>(order: usize, f: impl FnOnce(&IntPoly) -> T) -> T {
    if order <= PHI_TABLE_LIMIT {
        f(&phi_table()[order])
    } else {
        f(&cyclotomic_poly(order).expect("order is positive"))
    }
}

/// An element of `Z[ζ_L]`, stored as `Σ coeffs[i] ζ_L^i`.
///
/// `PartialEq` compares representations, not values. Use
/// [`CycInt::value_eq`] or [`CycInt::is_zero`] to compare values.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "CycIntRepr", into = "CycIntRepr")]
pub struct CycInt {
    order: usize,
    coeffs: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CycIntRepr {
    order: usize,
    coeffs: Vec<i64>,
}

impl TryFrom<CycIntRepr> for CycInt {
    type Error = Error;

    fn try_from(r: CycIntRepr) -> Result<Self> {
        CycInt::new(r.order, r.coeffs)
    }
}

impl From<CycInt> for CycIntRepr {
    fn from(c: CycInt) -> Self {
        Self { order: c.order, coeffs: c.coeffs }
    }
}

impl CycInt {
    pub fn new(order: usize, coeffs: Vec<i64>) -> Result<Self> {
        if order == 0 {
            return Err(Error::ZeroOrder);
        }
        if coeffs.len() != order {
            return Err(Error::CoeffLength { expected: order, got: coeffs.len() });
        }
        Ok(Self { order, coeffs })
    }

    pub fn zero(order: usize) -> Result<Self> {
        Self::from_int(order, 0)
    }

    pub fn one(order: usize) -> Result<Self> {
        Self::from_int(order, 1)
    }

    pub fn from_int(order: usize, value: i64) -> Result<Self> {
        if order == 0 {
            return Err(Error::ZeroOrder);
        }
        let mut coeffs = vec![0; order];
        coeffs[0] = value;
        Ok(Self { order, coeffs })
    }

    /// `ζ_L^k`, with `k` reduced modulo `L`.
    pub fn root(order: usize, k: i64) -> Result<Self> {
        if order == 0 {
            return Err(Error::ZeroOrder);
        }
        let mut coeffs = vec![0; order];
        coeffs[k.rem_euclid(order as i64) as usize] = 1;
        Ok(Self { order, coeffs })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    fn check_order(&self, rhs: &CycInt) -> Result<()> {
        if self.order != rhs.order {
            return Err(Error::OrderMismatch { left: self.order, right: rhs.order });
        }
        Ok(())
    }

    pub fn add(&self, rhs: &CycInt) -> Result<CycInt> {
        self.check_order(rhs)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::Overflow))
            .collect::<Result<_>>()?;
        Ok(CycInt { order: self.order, coeffs })
    }

    pub fn sub(&self, rhs: &CycInt) -> Result<CycInt> {
        self.check_order(rhs)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a.checked_sub(*b).ok_or(Error::Overflow))
            .collect::<Result<_>>()?;
        Ok(CycInt { order: self.order, coeffs })
    }

    pub fn neg(&self) -> Result<CycInt> {
        let coeffs =
            self.coeffs.iter().map(|a| a.checked_neg().ok_or(Error::Overflow)).collect::<Result<_>>()?;
        Ok(CycInt { order: self.order, coeffs })
    }

    /// Product in `Z[ζ_L]`: polynomial convolution with exponents wrapped mod `L`.
    pub fn mul(&self, rhs: &CycInt) -> Result<CycInt> {
        self.check_order(rhs)?;
        let l = self.order;
        let mut coeffs = vec![0i64; l];
        for (i, &a) in self.coeffs.iter().enumerate().filter(|(_, a)| **a != 0) {
            for (j, &b) in rhs.coeffs.iter().enumerate().filter(|(_, b)| **b != 0) {
                let k = (i + j) % l;
                let t = a.checked_mul(b).ok_or(Error::Overflow)?;
                coeffs[k] = coeffs[k].checked_add(t).ok_or(Error::Overflow)?;
            }
        }
        Ok(CycInt { order: l, coeffs })
    }

    pub fn scale(&self, k: i64) -> Result<CycInt> {
        let coeffs =
            self.coeffs.iter().map(|a| a.checked_mul(k).ok_or(Error::Overflow)).collect::<Result<_>>()?;
        Ok(CycInt { order: self.order, coeffs })
    }

    /// Complex conjugate: `ζ^i ↦ ζ^{-i}`.
    pub fn conj(&self) -> CycInt {
        let l = self.order;
        let mut coeffs = vec![0; l];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[(l - i) % l] = c;
        }
        CycInt { order: l, coeffs }
    }

    /// Re-expresses the value in `Z[ζ_M]` via `ζ_L = ζ_M^{M/L}`.
    pub fn lift_order(&self, target: usize) -> Result<CycInt> {
        if target == 0 {
            return Err(Error::ZeroOrder);
        }
        if !target.is_multiple_of(self.order) {
            return Err(Error::NotAMultiple { from: self.order, to: target });
        }
        let step = target / self.order;
        let mut coeffs = vec![0; target];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[i * step] = c;
        }
        Ok(CycInt { order: target, coeffs })
    }

    /// Remainder of the coefficient polynomial modulo `Φ_L`.
    ///
    /// Since `Φ_L` is the minimal polynomial of `ζ_L`, this remainder is the
    /// unique representative of the value in the basis `1, ζ, ..., ζ^{φ(L)-1}`.
    fn reduced(&self) -> Vec<i128> {
        with_phi(self.order, |phi| {
            let phi = phi.coeffs();
            let dd = phi.len() - 1;
            let mut rem: Vec<i128> = self.coeffs.iter().map(|&c| c as i128).collect();
            for k in (dd..rem.len()).rev() {
                let lead = rem[k];
                if lead == 0 {
                    continue;
                }
                for (i, &p) in phi.iter().enumerate() {
                    let idx = k - dd + i;
                    rem[idx] = lead
                        .checked_mul(p as i128)
                        .and_then(|t| rem[idx].checked_sub(t))
                        .expect("coefficient overflow while reducing modulo Φ_L");
                }
            }
            rem.truncate(dd);
            rem
        })
    }

    /// Exact zero test: the coefficient polynomial is divisible by `Φ_L`.
    pub fn is_zero(&self) -> bool {
        if self.coeffs.iter().all(|&c| c == 0) {
            return true;
        }
        self.reduced().iter().all(|&c| c == 0)
    }

    /// Value equality, decided by [`CycInt::is_zero`] of the difference.
    pub fn value_eq(&self, rhs: &CycInt) -> Result<bool> {
        Ok(self.sub(rhs)?.is_zero())
    }

    /// The value as an integer, if it is one.
    pub fn as_integer(&self) -> Option<i64> {
        let rem = self.reduced();
        if rem[1..].iter().any(|&c| c != 0) {
            return None;
        }
        i64::try_from(rem[0]).ok()
    }

    /// `(re, im)` of the value at `ζ_L = exp(2πi/L)`; for diagnostics only.
    pub fn to_complex(&self) -> (f64, f64) {
        let l = self.order as f64;
        self.coeffs.iter().enumerate().fold((0.0, 0.0), |(re, im), (i, &c)| {
            let t = std::f64::consts::TAU * i as f64 / l;
            (re + c as f64 * t.cos(), im + c as f64 * t.sin())
        })
    }
}

impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0)
            .map(|(i, c)| match i {
                0 => format!("{c}"),
                _ => format!("{c}·ζ{}^{i}", self.order),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// Hermitian inner product `Σ x_i · conj(y_i)`.
pub fn inner_product(x: &[CycInt], y: &[CycInt]) -> Result<CycInt> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch { left: x.len(), right: y.len() });
    }
    let first = x.first().ok_or_else(|| Error::Parameter("inner product of empty vectors".into()))?;
    let mut acc = CycInt::zero(first.order())?;
    for (a, b) in x.iter().zip(y) {
        acc = acc.add(&a.mul(&b.conj())?)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(order: usize, coeffs: &[i64]) -> CycInt {
        CycInt::new(order, coeffs.to_vec()).unwrap()
    }

    #[test]
    fn roots() {
        assert_eq!(CycInt::root(6, 0).unwrap(), CycInt::one(6).unwrap());
        let minus_one = CycInt::root(4, 2).unwrap();
        assert!(minus_one.add(&CycInt::one(4).unwrap()).unwrap().is_zero());
        assert_eq!(CycInt::root(3, 5).unwrap(), CycInt::root(3, 2).unwrap());
        assert_eq!(CycInt::root(3, -1).unwrap(), CycInt::root(3, 2).unwrap());
        assert!(matches!(CycInt::root(0, 1), Err(Error::ZeroOrder)));
    }

    #[test]
    fn ring_ops() {
        let z = CycInt::root(3, 1).unwrap();
        let z2 = CycInt::root(3, 2).unwrap();
        let s = z.add(&z2).unwrap().add(&CycInt::one(3).unwrap()).unwrap();
        assert!(s.is_zero());

        let p = CycInt::root(6, 1).unwrap().mul(&CycInt::root(6, 5).unwrap()).unwrap();
        assert_eq!(p, CycInt::one(6).unwrap());

        let a = c(5, &[1, 1, 0, 0, 0]);
        assert_eq!(a.mul(&a).unwrap(), c(5, &[1, 2, 1, 0, 0]));
    }

    #[test]
    fn order_mismatch() {
        let a = CycInt::one(3).unwrap();
        let b = CycInt::one(6).unwrap();
        assert!(matches!(a.add(&b), Err(Error::OrderMismatch { left: 3, right: 6 })));
        assert!(matches!(a.mul(&b), Err(Error::OrderMismatch { .. })));
        assert!(CycInt::new(3, vec![1, 2]).is_err());
    }

    #[test]
    fn conjugation() {
        assert_eq!(CycInt::root(4, 1).unwrap().conj(), CycInt::root(4, 3).unwrap());
        assert_eq!(CycInt::one(7).unwrap().conj(), CycInt::one(7).unwrap());
    }

    #[test]
    fn small_cyclotomic_polys() {
        assert_eq!(cyclotomic_poly(1).unwrap().coeffs(), &[-1, 1]);
        assert_eq!(cyclotomic_poly(2).unwrap().coeffs(), &[1, 1]);
        assert_eq!(cyclotomic_poly(3).unwrap().coeffs(), &[1, 1, 1]);
        assert_eq!(cyclotomic_poly(6).unwrap().coeffs(), &[1, -1, 1]);
        assert_eq!(cyclotomic_poly(4).unwrap().coeffs(), &[1, 0, 1]);
        assert_eq!(cyclotomic_poly(6).unwrap().to_string(), "x^2 - x + 1");
        assert!(matches!(cyclotomic_poly(0), Err(Error::ZeroOrder)));
    }

    #[test]
    fn phi_105_has_a_coefficient_of_minus_two() {
        assert!(cyclotomic_poly(105).unwrap().coeffs().contains(&-2));
    }

    #[test]
    fn beyond_table_limit() {
        // 257 is prime, so Φ_257 = 1 + x + ... + x^256.
        let phi = cyclotomic_poly(257).unwrap();
        assert!(phi.coeffs().iter().all(|&c| c == 1));
        assert_eq!(phi.degree(), Some(256));
        let full = CycInt::new(257, vec![1; 257]).unwrap();
        assert!(full.is_zero());
    }

    #[test]
    fn full_root_sums_vanish() {
        for l in 2..=30 {
            assert!(CycInt::new(l, vec![1; l]).unwrap().is_zero(), "L = {l}");
        }
        assert!(!CycInt::new(1, vec![1]).unwrap().is_zero());
    }

    #[test]
    fn zero_tests() {
        assert!(!c(5, &[1, 1, 0, 0, 0]).is_zero());
        let z = CycInt::root(6, 1).unwrap();
        assert!(z.sub(&z).unwrap().is_zero());
        // ζ_6 = ζ_6^2 + 1 since ζ_6^2 - ζ_6 + 1 = 0
        assert!(c(6, &[1, -1, 1, 0, 0, 0]).is_zero());
    }

    #[test]
    fn lifting() {
        let z3 = CycInt::root(3, 1).unwrap();
        assert_eq!(z3.lift_order(6).unwrap(), CycInt::root(6, 2).unwrap());
        assert_eq!(CycInt::one(1).unwrap().lift_order(5).unwrap(), CycInt::one(5).unwrap());
        assert!(matches!(z3.lift_order(4), Err(Error::NotAMultiple { from: 3, to: 4 })));
    }

    #[test]
    fn integer_extraction() {
        // ζ_3 + ζ_3^2 = -1
        assert_eq!(c(3, &[0, 1, 1]).as_integer(), Some(-1));
        assert_eq!(c(3, &[0, 1, 0]).as_integer(), None);
        assert_eq!(CycInt::from_int(1, 9).unwrap().as_integer(), Some(9));
    }

    #[test]
    fn inner_products() {
        let row: Vec<CycInt> = (0..4).map(|k| CycInt::root(4, k * 3).unwrap()).collect();
        assert_eq!(inner_product(&row, &row).unwrap().as_integer(), Some(4));

        let x = [CycInt::one(4).unwrap(), CycInt::root(4, 1).unwrap()];
        let y = [CycInt::root(4, 1).unwrap(), CycInt::one(4).unwrap()];
        let ip = inner_product(&x, &y).unwrap();
        assert_eq!(ip, c(4, &[0, 1, 0, 1]));
        assert!(ip.is_zero());

        // Rows 1 and 2 of the order-3 Fourier matrix.
        let r1: Vec<CycInt> = (0..3).map(|j| CycInt::root(3, j).unwrap()).collect();
        let r2: Vec<CycInt> = (0..3).map(|j| CycInt::root(3, 2 * j).unwrap()).collect();
        assert!(inner_product(&r1, &r2).unwrap().is_zero());

        assert!(matches!(inner_product(&x, &x[..1]), Err(Error::LengthMismatch { left: 2, right: 1 })));
    }

    #[test]
    fn overflow_is_reported() {
        let big = CycInt::from_int(2, i64::MAX).unwrap();
        assert!(matches!(big.add(&big), Err(Error::Overflow)));
        assert!(matches!(big.mul(&big), Err(Error::Overflow)));
        assert!(matches!(CycInt::from_int(2, i64::MIN).unwrap().neg(), Err(Error::Overflow)));
    }

    #[test]
    fn json_form() {
        let z = CycInt::root(3, 1).unwrap();
        let s = serde_json::to_string(&z).unwrap();
        assert_eq!(s, r#"{"order":3,"coeffs":[0,1,0]}"#);
        assert_eq!(serde_json::from_str::<CycInt>(&s).unwrap(), z);
        assert!(serde_json::from_str::<CycInt>(r#"{"order":3,"coeffs":[0,1]}"#).is_err());
        assert!(serde_json::from_str::<CycInt>(r#"{"order":0,"coeffs":[]}"#).is_err());
    }
}

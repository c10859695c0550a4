//! Exact arithmetic in cyclotomic fields `Q(z)` with `z` a primitive m-th root of unity.
//!
//! Elements are stored in the power basis `1, z, ..., z^(phi(m)-1)` reduced modulo the
//! m-th cyclotomic polynomial. Complex conjugation is the automorphism `z -> z^(m-1)`.
//! Values of different conductors never mix implicitly; use [`Cyclotomic::lift`].

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number.
pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shared per-conductor data: the cyclotomic modulus and reduced powers of `z`.
#[derive(Debug)]
pub(crate) struct CycloField {
    m: u32,
    phi: usize,
    /// Monic `Phi_m`, low degree first, length `phi + 1`.
    modulus: Vec<i64>,
    /// `z^k mod Phi_m` for `k in 0..m`.
    powers: Vec<Vec<i64>>,
}

/// Integer coefficients of the m-th cyclotomic polynomial, low degree first.
pub fn cyclotomic_polynomial(m: u32) -> Vec<i64> {
    assert!(m >= 1, "conductor must be positive");
    // z^m - 1 divided by Phi_d for every proper divisor d of m.
    let mut num = vec![0i64; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    for d in 1..m {
        if m.is_multiple_of(d) {
            num = exact_div_monic(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

fn exact_div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let nd = rem.len() - 1;
    let mut quot = vec![0i64; nd - dd + 1];
    for k in (0..=nd - dd).rev() {
        let c = rem[k + dd];
        quot[k] = c;
        for (j, &b) in den.iter().enumerate() {
            rem[k + j] -= c * b;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

fn euler_phi(m: u32) -> usize {
    (1..=m).filter(|&k| num_integer::gcd(k, m) == 1).count()
}

impl CycloField {
    fn new(m: u32) -> Self {
        let modulus = cyclotomic_polynomial(m);
        let phi = euler_phi(m);
        debug_assert_eq!(modulus.len(), phi + 1);
        let mut powers = Vec::with_capacity(m as usize);
        let mut cur = vec![0i64; phi];
        cur[0] = 1;
        for _ in 0..m {
            powers.push(cur.clone());
            // multiply by z and reduce
            let top = cur[phi - 1];
            for j in (1..phi).rev() {
                cur[j] = cur[j - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for j in 0..phi {
                    cur[j] -= top * modulus[j];
                }
            }
        }
        CycloField {
            m,
            phi,
            modulus,
            powers,
        }
    }
}

fn field(m: u32) -> Arc<CycloField> {
    static FIELDS: OnceLock<Mutex<HashMap<u32, Arc<CycloField>>>> = OnceLock::new();
    let map = FIELDS.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(f) = map.lock().expect("field cache poisoned").get(&m) {
        return f.clone();
    }
    let f = Arc::new(CycloField::new(m));
    map.lock()
        .expect("field cache poisoned")
        .entry(m)
        .or_insert(f)
        .clone()
}

/// An element of `Q(zeta_m)`.
#[derive(Clone)]
pub struct Cyclotomic {
    field: Arc<CycloField>,
    coeffs: Vec<Rational>,
}

impl Cyclotomic {
    pub fn zero(m: u32) -> Self {
        let field = field(m);
        let coeffs = vec![Rational::zero(); field.phi];
        Cyclotomic { field, coeffs }
    }

    pub fn one(m: u32) -> Self {
        Self::from_rational(m, Rational::one())
    }

    pub fn from_int(m: u32, n: i64) -> Self {
        Self::from_rational(m, int(n))
    }

    pub fn from_rational(m: u32, r: Rational) -> Self {
        let mut c = Self::zero(m);
        c.coeffs[0] = r;
        c
    }

    /// Builds an element from power-basis coordinates of any length, reducing mod `Phi_m`.
    pub fn from_coeffs(m: u32, coeffs: Vec<Rational>) -> Self {
        let field = field(m);
        let mut acc = vec![Rational::zero(); field.phi];
        for (k, c) in coeffs.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let p = &field.powers[k % field.m as usize];
            for (slot, &b) in acc.iter_mut().zip(p) {
                if b != 0 {
                    *slot += &c * int(b);
                }
            }
        }
        Cyclotomic { field, coeffs: acc }
    }

    /// The primitive root `z = zeta_m`.
    pub fn zeta(m: u32) -> Self {
        Self::zeta_pow(m, 1)
    }

    /// `zeta_m^k` for any integer `k`.
    pub fn zeta_pow(m: u32, k: i64) -> Self {
        let field = field(m);
        let idx = k.rem_euclid(m as i64) as usize;
        let coeffs = field.powers[idx].iter().map(|&b| int(b)).collect();
        Cyclotomic { field, coeffs }
    }

    pub fn conductor(&self) -> u32 {
        self.field.m
    }

    /// Power-basis coordinates, length `phi(m)`.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn as_rational(&self) -> Result<Rational> {
        if self.is_rational() {
            Ok(self.coeffs[0].clone())
        } else {
            Err(Error::NotRational(self.to_string()))
        }
    }

    pub fn is_real(&self) -> bool {
        self.conj() == *self
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.field.m == other.field.m {
            Ok(())
        } else {
            Err(Error::ConductorMismatch(self.field.m, other.field.m))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Cyclotomic {
            field: self.field.clone(),
            coeffs,
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Cyclotomic {
            field: self.field.clone(),
            coeffs,
        })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let phi = self.field.phi;
        if phi == 1 {
            return Ok(Cyclotomic {
                field: self.field.clone(),
                coeffs: vec![&self.coeffs[0] * &other.coeffs[0]],
            });
        }
        if other.is_rational() {
            return Ok(self.scale(&other.coeffs[0]));
        }
        if self.is_rational() {
            return Ok(other.scale(&self.coeffs[0]));
        }
        let mut prod = vec![Rational::zero(); 2 * phi - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        let modulus = &self.field.modulus;
        for k in (phi..2 * phi - 1).rev() {
            let c = std::mem::take(&mut prod[k]);
            if c.is_zero() {
                continue;
            }
            for (j, &b) in modulus[..phi].iter().enumerate() {
                if b != 0 {
                    prod[k - phi + j] -= &c * int(b);
                }
            }
        }
        prod.truncate(phi);
        Ok(Cyclotomic {
            field: self.field.clone(),
            coeffs: prod,
        })
    }

    /// Multiplies by a rational scalar.
    pub fn scale(&self, r: &Rational) -> Self {
        Cyclotomic {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let phi = self.field.phi;
        if self.is_rational() {
            return Ok(Self::from_rational(self.field.m, self.coeffs[0].recip()));
        }
        // Solve (multiplication-by-self matrix) * x = e_0.
        let m = self.field.m;
        let mut rows: Vec<Vec<Rational>> = vec![vec![Rational::zero(); phi + 1]; phi];
        for k in 0..phi {
            let col = self.checked_mul(&Self::zeta_pow(m, k as i64))?;
            for (i, c) in col.coeffs.into_iter().enumerate() {
                rows[i][k] = c;
            }
        }
        rows[0][phi] = Rational::one();
        for col in 0..phi {
            let piv = (col..phi)
                .find(|&r| !rows[r][col].is_zero())
                .ok_or(Error::DivisionByZero)?;
            rows.swap(col, piv);
            let p = rows[col][col].recip();
            for x in rows[col].iter_mut() {
                *x *= &p;
            }
            for r in 0..phi {
                if r != col && !rows[r][col].is_zero() {
                    let f = rows[r][col].clone();
                    for c in col..=phi {
                        let v = &rows[col][c] * &f;
                        rows[r][c] -= v;
                    }
                }
            }
        }
        Ok(Cyclotomic {
            field: self.field.clone(),
            coeffs: rows.into_iter().map(|mut r| r.pop().unwrap()).collect(),
        })
    }

    /// Complex conjugate: the automorphism `z -> z^(m-1)`.
    pub fn conj(&self) -> Self {
        if self.is_rational() {
            return self.clone();
        }
        let m = self.field.m as usize;
        let mut acc = vec![Rational::zero(); self.field.phi];
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let p = &self.field.powers[(m - k) % m];
            for (slot, &b) in acc.iter_mut().zip(p) {
                if b != 0 {
                    *slot += c * int(b);
                }
            }
        }
        Cyclotomic {
            field: self.field.clone(),
            coeffs: acc,
        }
    }

    /// Re-expresses this element in `Q(zeta_target)`; requires `m | target`.
    pub fn lift(&self, target: u32) -> Result<Self> {
        let m = self.field.m;
        if !target.is_multiple_of(m) {
            return Err(Error::ConductorMismatch(m, target));
        }
        let step = (target / m) as i64;
        let mut acc = Self::zero(target);
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc += &Self::zeta_pow(target, step * k as i64).scale(c);
            }
        }
        Ok(acc)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.conductor());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        self.field.m == other.field.m && self.coeffs == other.coeffs
    }
}

impl Eq for Cyclotomic {}

impl Hash for Cyclotomic {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.m.hash(state);
        self.coeffs.hash(state);
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclotomic<{}>({})", self.field.m, self)
    }
}

/// Canonical text form, highest power first: `1/2*z^3 - 2`.
impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let body = match k {
                0 => mag.to_string(),
                _ => {
                    let zpart = if k == 1 {
                        "z".to_string()
                    } else {
                        format!("z^{k}")
                    };
                    if mag.is_one() {
                        zpart
                    } else {
                        format!("{mag}*{zpart}")
                    }
                }
            };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
                first = false;
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            f.write_str(&body)?;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&Cyclotomic> for &Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: &Cyclotomic) -> Cyclotomic {
                self.$checked(rhs).expect("cyclotomic conductor mismatch")
            }
        }
        impl $tr<Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: &Cyclotomic) -> Cyclotomic {
                (&self).$method(rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl AddAssign<&Cyclotomic> for Cyclotomic {
    fn add_assign(&mut self, rhs: &Cyclotomic) {
        assert_eq!(
            self.field.m, rhs.field.m,
            "cyclotomic conductor mismatch"
        );
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            if !b.is_zero() {
                *a += b;
            }
        }
    }
}

impl SubAssign<&Cyclotomic> for Cyclotomic {
    fn sub_assign(&mut self, rhs: &Cyclotomic) {
        assert_eq!(
            self.field.m, rhs.field.m,
            "cyclotomic conductor mismatch"
        );
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            if !b.is_zero() {
                *a -= b;
            }
        }
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(m: u32) -> Cyclotomic {
        Cyclotomic::zeta(m)
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(20).len(), 9);
    }

    #[test]
    fn zeta3_sum_is_minus_one() {
        let s = z(3) + z(3).pow(2);
        assert_eq!(s, Cyclotomic::from_int(3, -1));
        let t = &s + &Cyclotomic::one(3);
        assert!(t.is_zero());
    }

    #[test]
    fn zeta3_squared_reduces() {
        // z^2 mod (z^2 + z + 1) = -1 - z
        let sq = z(3) * z(3);
        assert_eq!(sq.coeffs(), &[int(-1), int(-1)]);
    }

    #[test]
    fn gaussian_cancellation() {
        let a = Cyclotomic::from_rational(4, rat(1, 2)) + z(4);
        let b = Cyclotomic::from_rational(4, rat(1, 2)) - z(4);
        assert!((a + b).is_one());
        assert_eq!(z(4) * z(4), Cyclotomic::from_int(4, -1));
    }

    #[test]
    fn zero_is_identity() {
        let a = Cyclotomic::from_coeffs(5, vec![rat(1, 3), int(2), int(0), rat(-7, 5)]);
        assert_eq!(&Cyclotomic::zero(5) + &a, a);
    }

    #[test]
    fn inverse_of_zeta() {
        for m in [3u32, 4, 5, 8, 12] {
            let inv = z(m).inv().unwrap();
            assert_eq!(inv, Cyclotomic::zeta_pow(m, m as i64 - 1));
        }
        assert_eq!(Cyclotomic::zero(5).inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn conjugation_rules() {
        assert_eq!(z(4).conj(), -z(4));
        let r = Cyclotomic::from_rational(7, rat(3, 11));
        assert_eq!(r.conj(), r);
        let a = Cyclotomic::from_coeffs(12, vec![int(1), rat(2, 3), int(0), int(-4)]);
        assert_eq!(a.conj().conj(), a);
    }

    #[test]
    fn as_rational_behaviour() {
        let r = Cyclotomic::from_rational(4, rat(3, 7));
        assert_eq!(r.as_rational().unwrap(), rat(3, 7));
        assert!(matches!(z(4).as_rational(), Err(Error::NotRational(_))));
    }

    #[test]
    fn mismatched_conductors() {
        assert_eq!(
            z(3).checked_add(&z(4)),
            Err(Error::ConductorMismatch(3, 4))
        );
        assert!(z(3).checked_mul(&z(5)).is_err());
    }

    #[test]
    fn lifting_preserves_value() {
        let a = z(3);
        let b = a.lift(12).unwrap();
        assert_eq!(b, Cyclotomic::zeta_pow(12, 4));
        assert_eq!(b.pow(3), Cyclotomic::one(12));
        assert!(a.lift(4).is_err());
    }

    #[test]
    fn display_form() {
        let a = Cyclotomic::from_coeffs(5, vec![int(-2), int(0), int(0), rat(1, 2)]);
        assert_eq!(a.to_string(), "1/2*z^3 - 2");
        assert_eq!((-z(4)).to_string(), "-z");
        assert_eq!(Cyclotomic::zero(3).to_string(), "0");
    }
}

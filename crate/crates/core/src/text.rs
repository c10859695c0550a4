//! Canonical text forms and a small expression parser.
//!
//! Scalars print as `1/2*z^3 - 2`; super-polynomials as `(1/2)*x1^2*x3*t2*t4 + ...`
//! with `t` for theta and `p` for psi. The parser accepts sums of products of
//! rationals, `z^k`, `x<i>^k`, `t<i>`, `p<i>` and parenthesised subexpressions.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::scalars::{Cyclotomic, Rational};
use crate::supergebra::{subset_indices, Flavor, SuperMonomial, SuperPoly};

fn coeff_prefix(c: &Cyclotomic) -> (bool, Option<String>) {
    // (negative, body before "*monomial")
    if let Ok(r) = c.as_rational() {
        let neg = r.is_negative();
        let mag = r.abs();
        if mag.is_one() {
            (neg, None)
        } else if mag.is_integer() {
            (neg, Some(mag.to_string()))
        } else {
            (neg, Some(format!("({mag})")))
        }
    } else {
        (false, Some(format!("({c})")))
    }
}

fn monomial_text(m: &SuperMonomial, flavor: Flavor) -> String {
    let mut parts = Vec::new();
    for (i, &a) in m.alpha.iter().enumerate() {
        match a {
            0 => {}
            1 => parts.push(format!("x{}", i + 1)),
            _ => parts.push(format!("x{}^{a}", i + 1)),
        }
    }
    for i in subset_indices(m.subset) {
        parts.push(format!("{}{i}", flavor.prefix()));
    }
    parts.join("*")
}

impl fmt::Display for SuperPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (m, c) in self.terms() {
            let mono = monomial_text(m, self.flavor());
            let (neg, body) = if mono.is_empty() {
                match c.as_rational() {
                    Ok(r) => (r.is_negative(), Some(r.abs().to_string())),
                    Err(_) => (false, Some(format!("({c})"))),
                }
            } else {
                coeff_prefix(c)
            };
            let text = match (body, mono.is_empty()) {
                (Some(b), true) => b,
                (Some(b), false) => format!("{b}*{mono}"),
                (None, _) => mono,
            };
            match (first, neg) {
                (true, true) => write!(f, "-{text}")?,
                (true, false) => write!(f, "{text}")?,
                (false, true) => write!(f, " - {text}")?,
                (false, false) => write!(f, " + {text}")?,
            }
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    n: usize,
    conductor: u32,
    flavor: Option<Flavor>,
    allow_vars: bool,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn number(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a number");
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digit string"))
    }

    fn small_number(&mut self) -> Result<usize> {
        let v = self.number()?;
        match usize::try_from(v) {
            Ok(v) if v < 1 << 20 => Ok(v),
            _ => self.err("number too large"),
        }
    }

    fn exponent(&mut self) -> Result<u32> {
        if self.peek() == Some(b'^') {
            self.pos += 1;
            Ok(self.small_number()? as u32)
        } else {
            Ok(1)
        }
    }

    fn scalar_poly(&self, c: Cyclotomic) -> SuperPoly {
        SuperPoly::constant(self.n, self.flavor.unwrap_or(Flavor::DualExterior), c)
    }

    fn expr(&mut self) -> Result<SuperPoly> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -self.term()?
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = self.combine(acc, t, |a, b| a.checked_add(b))?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = self.combine(acc, t, |a, b| a.checked_sub(b))?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn combine(
        &self,
        a: SuperPoly,
        b: SuperPoly,
        op: impl Fn(&SuperPoly, &SuperPoly) -> Result<SuperPoly>,
    ) -> Result<SuperPoly> {
        // Scalars parsed before the flavor was known default to dual; align them.
        let f = self.flavor.unwrap_or(Flavor::DualExterior);
        op(&a.relabel_if_scalar(f), &b.relabel_if_scalar(f))
    }

    fn term(&mut self) -> Result<SuperPoly> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let f = self.factor()?;
            acc = self.combine(acc, f, |a, b| a.checked_mul(b))?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<SuperPoly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(e)
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.factor()?)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.number()?;
                let value = if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let den = self.number()?;
                    if den == BigInt::from(0) {
                        return self.err("zero denominator");
                    }
                    Rational::new(num, den)
                } else {
                    Rational::from_integer(num)
                };
                Ok(self.scalar_poly(Cyclotomic::from_rational(self.conductor, value)))
            }
            Some(b'z') => {
                self.pos += 1;
                let e = self.exponent()?;
                Ok(self.scalar_poly(Cyclotomic::zeta_pow(self.conductor, e as i64)))
            }
            Some(v @ (b'x' | b't' | b'p')) => {
                if !self.allow_vars {
                    return self.err("variables are not allowed in a scalar");
                }
                self.pos += 1;
                let i = self.small_number()?;
                if i == 0 || i > self.n {
                    return self.err(format!("variable index {i} outside 1..={}", self.n));
                }
                if v == b'x' {
                    let e = self.exponent()?;
                    let f = self.flavor.unwrap_or(Flavor::DualExterior);
                    Ok(SuperPoly::x(self.n, f, self.conductor, i).pow(e))
                } else {
                    let want = if v == b't' {
                        Flavor::DualExterior
                    } else {
                        Flavor::PrimalExterior
                    };
                    match self.flavor {
                        Some(f) if f != want => {
                            return self.err("mixed theta and psi variables");
                        }
                        _ => self.flavor = Some(want),
                    }
                    Ok(SuperPoly::ext(self.n, want, self.conductor, i))
                }
            }
            Some(c) => self.err(format!("unexpected character '{}'", c as char)),
            None => self.err("unexpected end of input"),
        }
    }
}

impl SuperPoly {
    fn relabel_if_scalar(&self, flavor: Flavor) -> SuperPoly {
        if self.flavor() != flavor && self.terms().all(|(m, _)| m.subset == 0) {
            self.relabel(flavor)
        } else {
            self.clone()
        }
    }
}

/// Parses a scalar such as `1/2*z^3 - 2` in `Q(zeta_conductor)`.
pub fn parse_cyclotomic(s: &str, conductor: u32) -> Result<Cyclotomic> {
    let mut p = Parser {
        src: s.as_bytes(),
        pos: 0,
        n: 1,
        conductor,
        flavor: None,
        allow_vars: false,
    };
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(e.constant_term())
}

/// Parses a super-polynomial in `n` variables. Exterior variables must match `flavor`.
pub fn parse_superpoly(s: &str, n: usize, flavor: Flavor, conductor: u32) -> Result<SuperPoly> {
    let mut p = Parser {
        src: s.as_bytes(),
        pos: 0,
        n,
        conductor,
        flavor: Some(flavor),
        allow_vars: true,
    };
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(e.relabel_if_scalar(flavor))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{int, rat};

    #[test]
    fn cyclotomic_round_trip() {
        let a = Cyclotomic::from_coeffs(5, vec![int(-2), int(0), int(0), rat(1, 2)]);
        let s = a.to_string();
        assert_eq!(s, "1/2*z^3 - 2");
        assert_eq!(parse_cyclotomic(&s, 5).unwrap(), a);
        assert_eq!(
            parse_cyclotomic("z^2 + z + 1", 3).unwrap(),
            Cyclotomic::zero(3)
        );
        assert_eq!(parse_cyclotomic("-z", 4).unwrap(), -Cyclotomic::zeta(4));
        assert!(parse_cyclotomic("x1", 4).is_err());
        assert!(parse_cyclotomic("1/0", 4).is_err());
    }

    #[test]
    fn superpoly_round_trip() {
        let s = "(1/2)*x1^2*x3*t2*t4 - 3*x2 + 7";
        let f = parse_superpoly(s, 4, Flavor::DualExterior, 1).unwrap();
        let printed = f.to_string();
        let g = parse_superpoly(&printed, 4, Flavor::DualExterior, 1).unwrap();
        assert_eq!(f, g);
        assert_eq!(printed, "7 - 3*x2 + (1/2)*x1^2*x3*t2*t4");
    }

    #[test]
    fn exterior_order_sign() {
        let f = parse_superpoly("t2*t1", 2, Flavor::DualExterior, 1).unwrap();
        assert_eq!(f.to_string(), "-t1*t2");
    }

    #[test]
    fn cyclotomic_coefficients_print_in_parentheses() {
        let f = parse_superpoly("(z + 1)*x1*p1 - z", 1, Flavor::PrimalExterior, 3).unwrap();
        let s = f.to_string();
        assert_eq!(s, "(-z) + (z + 1)*x1*p1");
        assert_eq!(parse_superpoly(&s, 1, Flavor::PrimalExterior, 3).unwrap(), f);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_superpoly("t1 + p1", 2, Flavor::DualExterior, 1).is_err());
        assert!(parse_superpoly("p1", 2, Flavor::DualExterior, 1).is_err());
        assert!(parse_superpoly("x3", 2, Flavor::DualExterior, 1).is_err());
        assert!(parse_superpoly("x1 +", 2, Flavor::DualExterior, 1).is_err());
    }
}

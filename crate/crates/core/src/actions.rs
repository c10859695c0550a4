//! The differential-operator actions of `k[x, theta]` on itself (`dot`) and on
//! `k[x, psi]` (`odot`), the Hermitian form and the Laplacian.
//!
//! A monomial `c x^alpha theta_{i_1} ... theta_{i_r}` (with `i_1 < ... < i_r`) acts as
//! `conj(c) d^alpha D_{i_1} o ... o D_{i_r}`, where `D` is exterior differentiation for
//! `dot` and exterior multiplication for `odot`. The rightmost factor is applied first.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::scalars::{int, Cyclotomic, Rational};
use crate::supergebra::{inv_count, Flavor, SuperMonomial, SuperPoly};

/// `beta! / (beta - alpha)!` when `alpha <= beta` componentwise.
fn falling(alpha: &[u32], beta: &[u32]) -> Option<BigInt> {
    let mut acc = BigInt::from(1);
    for (&a, &b) in alpha.iter().zip(beta) {
        if a > b {
            return None;
        }
        for k in (b - a + 1)..=b {
            acc *= k;
        }
    }
    Some(acc)
}

fn binom2_odd(r: u32) -> bool {
    (r * r.saturating_sub(1) / 2) % 2 == 1
}

fn check_pair(f: &SuperPoly, g: &SuperPoly, g_flavor: Flavor) -> Result<()> {
    if f.flavor() != Flavor::DualExterior {
        return Err(Error::FlavorMismatch {
            expected: Flavor::DualExterior.name(),
            found: f.flavor().name(),
        });
    }
    if g.flavor() != g_flavor {
        return Err(Error::FlavorMismatch {
            expected: g_flavor.name(),
            found: g.flavor().name(),
        });
    }
    if f.n() != g.n() {
        return Err(Error::ArityMismatch(f.n(), g.n()));
    }
    if f.conductor() != g.conductor() {
        return Err(Error::ConductorMismatch(f.conductor(), g.conductor()));
    }
    Ok(())
}

/// `f . g`: `x_i -> d/dx_i`, `theta_i -> d/dtheta_i`, coefficients of `f` conjugated.
pub fn dot(f: &SuperPoly, g: &SuperPoly) -> Result<SuperPoly> {
    check_pair(f, g, Flavor::DualExterior)?;
    let mut out = SuperPoly::zero(g.n(), Flavor::DualExterior, g.conductor());
    for (mf, cf) in f.terms() {
        let cf = cf.conj();
        let sign_r = binom2_odd(mf.tdeg());
        for (mg, cg) in g.terms() {
            if mf.subset & !mg.subset != 0 {
                continue;
            }
            let Some(fall) = falling(&mf.alpha, &mg.alpha) else {
                continue;
            };
            let rest = mg.subset & !mf.subset;
            let negative = sign_r ^ (inv_count(mf.subset, rest) % 2 == 1);
            let mut c = (&cf * cg).scale(&Rational::from_integer(fall));
            if negative {
                c = -c;
            }
            let alpha = mg.alpha.iter().zip(&mf.alpha).map(|(b, a)| b - a).collect();
            out.add_term(SuperMonomial::new(alpha, rest), c);
        }
    }
    Ok(out)
}

/// `f (.) h`: `x_i -> d/dx_i`, `theta_i -> ` left multiplication by `psi_i`.
pub fn odot(f: &SuperPoly, h: &SuperPoly) -> Result<SuperPoly> {
    check_pair(f, h, Flavor::PrimalExterior)?;
    let mut out = SuperPoly::zero(h.n(), Flavor::PrimalExterior, h.conductor());
    for (mf, cf) in f.terms() {
        let cf = cf.conj();
        for (mh, ch) in h.terms() {
            if mf.subset & mh.subset != 0 {
                continue;
            }
            let Some(fall) = falling(&mf.alpha, &mh.alpha) else {
                continue;
            };
            let mut c = (&cf * ch).scale(&Rational::from_integer(fall));
            if inv_count(mf.subset, mh.subset) % 2 == 1 {
                c = -c;
            }
            let alpha = mh.alpha.iter().zip(&mf.alpha).map(|(b, a)| b - a).collect();
            out.add_term(SuperMonomial::new(alpha, mf.subset | mh.subset), c);
        }
    }
    Ok(out)
}

/// `<f, g>`: the constant coefficient of `f . g`.
pub fn hermitian_form(f: &SuperPoly, g: &SuperPoly) -> Result<Cyclotomic> {
    check_pair(f, g, Flavor::DualExterior)?;
    let mut acc = Cyclotomic::zero(f.conductor());
    // Only equal monomials pair to a constant.
    for (m, cf) in f.terms() {
        let cg = g.coeff(m);
        if cg.is_zero() {
            continue;
        }
        let c = (&cf.conj() * &cg).scale(&Rational::from_integer(m.alpha_factorial()));
        if binom2_odd(m.tdeg()) {
            acc -= &c;
        } else {
            acc += &c;
        }
    }
    Ok(acc)
}

/// `sum_i (d/dx_i)^2 f`.
pub fn laplacian(f: &SuperPoly) -> SuperPoly {
    let mut out = SuperPoly::zero(f.n(), f.flavor(), f.conductor());
    for (m, c) in f.terms() {
        for i in 0..m.alpha.len() {
            let a = m.alpha[i];
            if a < 2 {
                continue;
            }
            let mut alpha = m.alpha.clone();
            alpha[i] -= 2;
            out.add_term(
                SuperMonomial::new(alpha, m.subset),
                c.scale(&int((a * (a - 1)) as i64)),
            );
        }
    }
    out
}

/// `x_1^2 + ... + x_n^2` in the dual ring.
pub fn sum_of_squares(n: usize, conductor: u32) -> SuperPoly {
    (1..=n).fold(SuperPoly::zero(n, Flavor::DualExterior, conductor), |acc, i| {
        &acc + &SuperPoly::x(n, Flavor::DualExterior, conductor, i).pow(2)
    })
}

/// `(laplacian(fg) - laplacian(f) g - f laplacian(g)) / 2`.
pub fn polarization(f: &SuperPoly, g: &SuperPoly) -> SuperPoly {
    let fg = f * g;
    let diff = &(&laplacian(&fg) - &(&laplacian(f) * g)) - &(f * &laplacian(g));
    diff.scale(&Cyclotomic::from_rational(f.conductor(), crate::scalars::rat(1, 2)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_superpoly;

    fn dual(s: &str, n: usize) -> SuperPoly {
        parse_superpoly(s, n, Flavor::DualExterior, 1).unwrap()
    }

    fn primal(s: &str, n: usize) -> SuperPoly {
        parse_superpoly(s, n, Flavor::PrimalExterior, 1).unwrap()
    }

    #[test]
    fn dot_examples() {
        assert_eq!(dot(&dual("x1", 1), &dual("x1^2", 1)).unwrap(), dual("2*x1", 1));
        assert_eq!(dot(&dual("t1", 2), &dual("t1*t2", 2)).unwrap(), dual("t2", 2));
        assert_eq!(dot(&dual("t2", 2), &dual("t1*t2", 2)).unwrap(), dual("-t1", 2));
        let m = dual("x1^2*x2*t1*t2", 2);
        assert_eq!(dot(&m, &m).unwrap(), dual("-2", 2));
    }

    #[test]
    fn odot_examples() {
        assert_eq!(odot(&dual("t1", 2), &primal("p2", 2)).unwrap(), primal("p1*p2", 2));
        assert_eq!(odot(&dual("x1", 1), &primal("x1*p1", 1)).unwrap(), primal("p1", 1));
        assert_eq!(odot(&dual("t1*t2", 2), &primal("1", 2)).unwrap(), primal("p1*p2", 2));
        assert_eq!(odot(&dual("t2*t1", 2), &primal("1", 2)).unwrap(), primal("-p1*p2", 2));
        assert!(odot(&dual("t1", 2), &dual("t2", 2)).is_err());
    }

    #[test]
    fn hermitian_examples() {
        let h = |a: &str, b: &str| hermitian_form(&dual(a, 2), &dual(b, 2)).unwrap();
        assert_eq!(h("t1*t2", "t1*t2"), Cyclotomic::from_int(1, -1));
        assert_eq!(h("x1^2", "x1^2"), Cyclotomic::from_int(1, 2));
        assert!(h("x1*t1", "x2*t1").is_zero());
        let f = dual("x1*t2 + 3*x2^2", 2);
        assert_eq!(
            hermitian_form(&f, &f).unwrap(),
            dot(&f, &f).unwrap().constant_term()
        );
    }

    #[test]
    fn hermitian_conjugates_first_argument() {
        let z = Cyclotomic::zeta(4);
        let x = SuperPoly::x(1, Flavor::DualExterior, 4, 1);
        let f = x.scale(&z);
        assert_eq!(hermitian_form(&f, &f).unwrap(), Cyclotomic::one(4));
        assert_eq!(hermitian_form(&f, &x).unwrap(), -z);
    }

    #[test]
    fn laplacian_examples() {
        assert_eq!(laplacian(&dual("x1^2 + x2^2", 2)), dual("4", 2));
        assert!(laplacian(&dual("x1*x2", 2)).is_zero());
        assert_eq!(laplacian(&dual("x1^3", 2)), dual("6*x1", 2));
        let g = dual("x1^3*t1 + x1*x2^2*t2", 2);
        assert_eq!(laplacian(&g), dot(&sum_of_squares(2, 1), &g).unwrap());
    }
}

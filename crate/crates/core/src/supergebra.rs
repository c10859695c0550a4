//! Sparse super-polynomials: commuting `x_1..x_n` tensored with an exterior algebra.
//!
//! The exterior generators are `theta_i` (dual flavor, `Lambda(V*)`) or `psi_i`
//! (primal flavor, `Lambda(V)`). Exterior monomials are bitmasks (bit `i-1` is the
//! generator `i`) in increasing index order; every sign is derived from [`inv_count`].

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalars::{int, Cyclotomic};

/// Exterior subset `I` as a bitmask.
pub type Subset = u32;

/// `#{(i, j) in I x J : j < i}`.
pub fn inv_count(i_set: Subset, j_set: Subset) -> u32 {
    let mut total = 0;
    let mut rest = i_set;
    while rest != 0 {
        let b = rest.trailing_zeros();
        total += (j_set & ((1u32 << b) - 1)).count_ones();
        rest &= rest - 1;
    }
    total
}

/// `deg(I) = sum over i in I of (i - 1)`.
pub fn subset_degree(set: Subset) -> u32 {
    let mut total = 0;
    let mut rest = set;
    while rest != 0 {
        total += rest.trailing_zeros();
        rest &= rest - 1;
    }
    total
}

/// Bitmask of the 1-based indices.
pub fn subset_of(indices: &[usize]) -> Subset {
    indices.iter().fold(0, |acc, &i| acc | (1 << (i - 1)))
}

/// 1-based indices of the bitmask, increasing.
pub fn subset_indices(set: Subset) -> Vec<usize> {
    (0..32).filter(|b| set & (1 << b) != 0).map(|b| b + 1).collect()
}

fn full_subset(n: usize) -> Subset {
    if n == 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Flavor {
    /// `k[x, theta]`, exterior part `Lambda(V*)`.
    DualExterior,
    /// `k[x, psi]`, exterior part `Lambda(V)`.
    PrimalExterior,
}

impl Flavor {
    pub fn name(self) -> &'static str {
        match self {
            Flavor::DualExterior => "dual (theta)",
            Flavor::PrimalExterior => "primal (psi)",
        }
    }

    /// Variable prefix in the text form.
    pub fn prefix(self) -> char {
        match self {
            Flavor::DualExterior => 't',
            Flavor::PrimalExterior => 'p',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Bidegree {
    pub qdeg: u32,
    pub tdeg: u32,
}

impl Bidegree {
    pub fn new(qdeg: u32, tdeg: u32) -> Self {
        Bidegree { qdeg, tdeg }
    }
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.qdeg, self.tdeg)
    }
}

/// `x^alpha * theta_I` (or `psi_I`). Ordered lexicographically on `alpha`, then `subset`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SuperMonomial {
    pub alpha: Vec<u32>,
    pub subset: Subset,
}

impl SuperMonomial {
    pub fn new(alpha: Vec<u32>, subset: Subset) -> Self {
        SuperMonomial { alpha, subset }
    }

    pub fn one(n: usize) -> Self {
        SuperMonomial {
            alpha: vec![0; n],
            subset: 0,
        }
    }

    pub fn n(&self) -> usize {
        self.alpha.len()
    }

    pub fn qdeg(&self) -> u32 {
        self.alpha.iter().sum()
    }

    pub fn tdeg(&self) -> u32 {
        self.subset.count_ones()
    }

    pub fn bidegree(&self) -> Bidegree {
        Bidegree::new(self.qdeg(), self.tdeg())
    }

    /// `alpha! = prod alpha_i!`.
    pub fn alpha_factorial(&self) -> num_bigint::BigInt {
        let mut acc = num_bigint::BigInt::from(1);
        for &a in &self.alpha {
            for k in 2..=a {
                acc *= k;
            }
        }
        acc
    }
}

/// Element of `k[x_n, theta_n]` or `k[x_n, psi_n]` with coefficients in `Q(zeta_m)`.
#[derive(Clone, PartialEq, Eq)]
pub struct SuperPoly {
    n: usize,
    flavor: Flavor,
    conductor: u32,
    terms: BTreeMap<SuperMonomial, Cyclotomic>,
}

impl SuperPoly {
    pub fn zero(n: usize, flavor: Flavor, conductor: u32) -> Self {
        assert!(n <= 32, "at most 32 exterior variables");
        SuperPoly {
            n,
            flavor,
            conductor,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, flavor: Flavor, c: Cyclotomic) -> Self {
        let mut p = Self::zero(n, flavor, c.conductor());
        p.add_term(SuperMonomial::one(n), c);
        p
    }

    pub fn one(n: usize, flavor: Flavor, conductor: u32) -> Self {
        Self::constant(n, flavor, Cyclotomic::one(conductor))
    }

    pub fn monomial(n: usize, flavor: Flavor, mono: SuperMonomial, c: Cyclotomic) -> Self {
        assert_eq!(mono.n(), n, "monomial arity");
        let mut p = Self::zero(n, flavor, c.conductor());
        p.add_term(mono, c);
        p
    }

    /// The commuting variable `x_i` (1-based).
    pub fn x(n: usize, flavor: Flavor, conductor: u32, i: usize) -> Self {
        let mut alpha = vec![0; n];
        alpha[i - 1] = 1;
        Self::monomial(
            n,
            flavor,
            SuperMonomial::new(alpha, 0),
            Cyclotomic::one(conductor),
        )
    }

    /// The exterior generator `theta_i` or `psi_i` (1-based), per flavor.
    pub fn ext(n: usize, flavor: Flavor, conductor: u32, i: usize) -> Self {
        Self::monomial(
            n,
            flavor,
            SuperMonomial::new(vec![0; n], 1 << (i - 1)),
            Cyclotomic::one(conductor),
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SuperMonomial, &Cyclotomic)> {
        self.terms.iter()
    }

    pub fn coeff(&self, mono: &SuperMonomial) -> Cyclotomic {
        self.terms
            .get(mono)
            .cloned()
            .unwrap_or_else(|| Cyclotomic::zero(self.conductor))
    }

    /// Coefficient of the monomial `1`.
    pub fn constant_term(&self) -> Cyclotomic {
        self.coeff(&SuperMonomial::one(self.n))
    }

    /// True when no exterior generators appear.
    pub fn is_x_only(&self) -> bool {
        self.terms.keys().all(|m| m.subset == 0)
    }

    pub fn add_term(&mut self, mono: SuperMonomial, c: Cyclotomic) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(c.conductor(), self.conductor);
        debug_assert_eq!(mono.subset & !full_subset(self.n), 0);
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn sub_term(&mut self, mono: SuperMonomial, c: &Cyclotomic) {
        self.add_term(mono, -c);
    }

    fn empty_like(&self) -> Self {
        Self::zero(self.n, self.flavor, self.conductor)
    }

    /// Checks arity, flavor and conductor agreement.
    pub fn compatible(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::ArityMismatch(self.n, other.n));
        }
        if self.flavor != other.flavor {
            return Err(Error::FlavorMismatch {
                expected: self.flavor.name(),
                found: other.flavor.name(),
            });
        }
        if self.conductor != other.conductor {
            return Err(Error::ConductorMismatch(self.conductor, other.conductor));
        }
        Ok(())
    }

    pub(crate) fn require_flavor(&self, flavor: Flavor) -> Result<()> {
        if self.flavor == flavor {
            Ok(())
        } else {
            Err(Error::FlavorMismatch {
                expected: flavor.name(),
                found: self.flavor.name(),
            })
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.sub_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Cyclotomic) -> Self {
        let mut out = self.empty_like();
        if c.is_zero() {
            return out;
        }
        for (m, v) in &self.terms {
            out.add_term(m.clone(), v * c);
        }
        out
    }

    /// Ring product; overlapping exterior subsets vanish, signs from [`inv_count`].
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let mut out = self.empty_like();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                if m1.subset & m2.subset != 0 {
                    continue;
                }
                let alpha = m1.alpha.iter().zip(&m2.alpha).map(|(a, b)| a + b).collect();
                let mut c = c1 * c2;
                if inv_count(m1.subset, m2.subset) % 2 == 1 {
                    c = -c;
                }
                out.add_term(SuperMonomial::new(alpha, m1.subset | m2.subset), c);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.n, self.flavor, self.conductor);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.n {
            Err(Error::IndexOutOfRange { index: i, n: self.n })
        } else {
            Ok(())
        }
    }

    /// `d/dx_i`, extended linearly over the exterior part.
    pub fn partial_x(&self, i: usize) -> Result<Self> {
        self.check_index(i)?;
        let mut out = self.empty_like();
        for (m, c) in &self.terms {
            let a = m.alpha[i - 1];
            if a == 0 {
                continue;
            }
            let mut alpha = m.alpha.clone();
            alpha[i - 1] -= 1;
            out.add_term(
                SuperMonomial::new(alpha, m.subset),
                c.scale(&int(a as i64)),
            );
        }
        Ok(out)
    }

    /// Exterior partial derivative with respect to the i-th generator of this flavor.
    pub fn partial_theta(&self, i: usize) -> Result<Self> {
        self.check_index(i)?;
        let bit = 1u32 << (i - 1);
        let mut out = self.empty_like();
        for (m, c) in &self.terms {
            if m.subset & bit == 0 {
                continue;
            }
            let c = if (m.subset & (bit - 1)).count_ones() % 2 == 1 {
                -c
            } else {
                c.clone()
            };
            out.add_term(SuperMonomial::new(m.alpha.clone(), m.subset & !bit), c);
        }
        Ok(out)
    }

    /// Left multiplication by the i-th exterior generator of this flavor.
    pub fn mult_theta(&self, i: usize) -> Result<Self> {
        self.check_index(i)?;
        let bit = 1u32 << (i - 1);
        let mut out = self.empty_like();
        for (m, c) in &self.terms {
            if m.subset & bit != 0 {
                continue;
            }
            let c = if (m.subset & (bit - 1)).count_ones() % 2 == 1 {
                -c
            } else {
                c.clone()
            };
            out.add_term(SuperMonomial::new(m.alpha.clone(), m.subset | bit), c);
        }
        Ok(out)
    }

    /// Exterior derivative `d(f theta_I) = sum_i (df/dx_i) theta_i theta_I`.
    pub fn exterior_derivative(&self) -> Result<Self> {
        self.require_flavor(Flavor::DualExterior)?;
        let mut out = self.empty_like();
        for i in 1..=self.n {
            let term = self.partial_x(i)?.mult_theta(i)?;
            out = &out + &term;
        }
        Ok(out)
    }

    /// Hodge dual `theta_I -> (-1)^deg(I) psi_J` with `J` the complement of `I`.
    pub fn hodge_star(&self) -> Result<Self> {
        self.require_flavor(Flavor::DualExterior)?;
        Ok(self.star_to(Flavor::PrimalExterior))
    }

    /// The same rule in the opposite direction, `psi_J -> (-1)^deg(J) theta_I`.
    /// Composing with [`SuperPoly::hodge_star`] gives `(-1)^binom(n,2)` times the identity.
    pub fn hodge_star_primal(&self) -> Result<Self> {
        self.require_flavor(Flavor::PrimalExterior)?;
        Ok(self.star_to(Flavor::DualExterior))
    }

    fn star_to(&self, flavor: Flavor) -> Self {
        let full = full_subset(self.n);
        let mut out = Self::zero(self.n, flavor, self.conductor);
        for (m, c) in &self.terms {
            let c = if subset_degree(m.subset) % 2 == 1 {
                -c
            } else {
                c.clone()
            };
            out.add_term(SuperMonomial::new(m.alpha.clone(), full & !m.subset), c);
        }
        out
    }

    /// The same coefficients read in the other exterior flavor (`theta_i <-> psi_i`).
    pub fn relabel(&self, flavor: Flavor) -> Self {
        SuperPoly {
            n: self.n,
            flavor,
            conductor: self.conductor,
            terms: self.terms.clone(),
        }
    }

    /// Coefficientwise complex conjugate.
    pub fn conj_coeffs(&self) -> Self {
        let mut out = self.empty_like();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.conj());
        }
        out
    }

    pub fn bidegree_component(&self, b: Bidegree) -> Self {
        let mut out = self.empty_like();
        for (m, c) in &self.terms {
            if m.bidegree() == b {
                out.add_term(m.clone(), c.clone());
            }
        }
        out
    }

    pub fn bidegrees(&self) -> BTreeSet<Bidegree> {
        self.terms.keys().map(SuperMonomial::bidegree).collect()
    }

    /// The bidegree when the element is nonzero and bihomogeneous.
    pub fn bidegree(&self) -> Option<Bidegree> {
        let bs = self.bidegrees();
        if bs.len() == 1 {
            bs.into_iter().next()
        } else {
            None
        }
    }

    pub fn max_qdeg(&self) -> Option<u32> {
        self.terms.keys().map(SuperMonomial::qdeg).max()
    }

    /// Linear change of variables `x_j -> sum_i mx[j][i] x_i`, `e_j -> sum_i mext[j][i] e_i`,
    /// extended to a ring homomorphism.
    pub fn substitute_linear(&self, mx: &Matrix, mext: &Matrix) -> Result<Self> {
        LinearSubstitution::new(mx, mext, self.flavor)?.apply(self)
    }
}

/// A precomputed linear change of variables, reused across many polynomials.
#[derive(Clone, Debug)]
pub struct LinearSubstitution {
    n: usize,
    conductor: u32,
    flavor: Flavor,
    kind: SubstKind,
}

#[derive(Clone, Debug)]
enum SubstKind {
    /// Row `j` has a single nonzero entry: `(column, value)`.
    Monomial {
        x: Vec<(usize, Cyclotomic)>,
        ext: Vec<(usize, Cyclotomic)>,
    },
    Dense {
        x: Vec<SuperPoly>,
        ext: Vec<SuperPoly>,
    },
}

fn monomial_rows(m: &Matrix) -> Option<Vec<(usize, Cyclotomic)>> {
    if !m.is_monomial() {
        return None;
    }
    Some(
        (0..m.dim())
            .map(|j| {
                let col = (0..m.dim()).find(|&i| !m.get(j, i).is_zero()).unwrap();
                (col, m.get(j, col).clone())
            })
            .collect(),
    )
}

impl LinearSubstitution {
    pub fn new(mx: &Matrix, mext: &Matrix, flavor: Flavor) -> Result<Self> {
        let n = mx.dim();
        if mext.dim() != n {
            return Err(Error::DimensionMismatch(format!(
                "x matrix {n}x{n}, exterior matrix {0}x{0}",
                mext.dim()
            )));
        }
        if mx.conductor() != mext.conductor() {
            return Err(Error::ConductorMismatch(mx.conductor(), mext.conductor()));
        }
        let conductor = mx.conductor();
        let kind = match (monomial_rows(mx), monomial_rows(mext)) {
            (Some(x), Some(ext)) => SubstKind::Monomial { x, ext },
            _ => {
                let lin = |m: &Matrix, ext: bool| -> Vec<SuperPoly> {
                    (0..n)
                        .map(|j| {
                            let mut p = SuperPoly::zero(n, flavor, conductor);
                            for i in 0..n {
                                let gen = if ext {
                                    SuperPoly::ext(n, flavor, conductor, i + 1)
                                } else {
                                    SuperPoly::x(n, flavor, conductor, i + 1)
                                };
                                p = &p + &gen.scale(m.get(j, i));
                            }
                            p
                        })
                        .collect()
                };
                SubstKind::Dense {
                    x: lin(mx, false),
                    ext: lin(mext, true),
                }
            }
        };
        Ok(LinearSubstitution {
            n,
            conductor,
            flavor,
            kind,
        })
    }

    pub fn apply(&self, f: &SuperPoly) -> Result<SuperPoly> {
        if f.n != self.n {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} substitution on {} variables",
                self.n, self.n, f.n
            )));
        }
        if f.conductor != self.conductor {
            return Err(Error::ConductorMismatch(self.conductor, f.conductor));
        }
        let mut out = SuperPoly::zero(self.n, f.flavor, self.conductor);
        match &self.kind {
            SubstKind::Monomial { x, ext } => {
                for (m, c) in &f.terms {
                    let (mono, coeff) = monomial_image(m, x, ext);
                    out.add_term(mono, &coeff * c);
                }
            }
            SubstKind::Dense { .. } => {
                let mut cache = HashMap::new();
                for (m, c) in &f.terms {
                    let img = self.dense_image(m, &mut cache).relabel(f.flavor);
                    for (mm, cc) in img.terms {
                        out.add_term(mm, &cc * c);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Images of many monomials, sharing the power cache.
    pub fn apply_monomials(&self, monos: &[SuperMonomial]) -> Vec<SuperPoly> {
        let mut cache = HashMap::new();
        monos
            .iter()
            .map(|m| match &self.kind {
                SubstKind::Monomial { x, ext } => {
                    let (mono, coeff) = monomial_image(m, x, ext);
                    SuperPoly::monomial(self.n, self.flavor, mono, coeff)
                }
                SubstKind::Dense { .. } => self.dense_image(m, &mut cache),
            })
            .collect()
    }

    fn dense_image(
        &self,
        m: &SuperMonomial,
        cache: &mut HashMap<(usize, u32), SuperPoly>,
    ) -> SuperPoly {
        let SubstKind::Dense { x, ext } = &self.kind else {
            unreachable!()
        };
        let mut acc = SuperPoly::one(self.n, self.flavor, self.conductor);
        for (j, &a) in m.alpha.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let p = cache
                .entry((j, a))
                .or_insert_with(|| x[j].pow(a))
                .clone();
            acc = &acc * &p;
        }
        for j in subset_indices(m.subset) {
            acc = &acc * &ext[j - 1];
        }
        acc
    }
}

fn monomial_image(
    m: &SuperMonomial,
    x: &[(usize, Cyclotomic)],
    ext: &[(usize, Cyclotomic)],
) -> (SuperMonomial, Cyclotomic) {
    let n = m.alpha.len();
    let conductor = x[0].1.conductor();
    let mut alpha = vec![0u32; n];
    let mut coeff = Cyclotomic::one(conductor);
    for (j, &a) in m.alpha.iter().enumerate() {
        if a == 0 {
            continue;
        }
        let (col, ref c) = x[j];
        alpha[col] += a;
        if !c.is_one() {
            coeff = &coeff * &c.pow(a);
        }
    }
    let mut subset: Subset = 0;
    let mut negate = false;
    for j in subset_indices(m.subset) {
        let (col, ref c) = ext[j - 1];
        let bit = 1u32 << col;
        // theta_S * theta_col
        if (subset & !((bit << 1) - 1)).count_ones() % 2 == 1 {
            negate = !negate;
        }
        subset |= bit;
        if !c.is_one() {
            coeff = &coeff * c;
        }
    }
    if negate {
        coeff = -coeff;
    }
    (SuperMonomial::new(alpha, subset), coeff)
}

macro_rules! poly_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&SuperPoly> for &SuperPoly {
            type Output = SuperPoly;
            fn $method(self, rhs: &SuperPoly) -> SuperPoly {
                self.$checked(rhs).expect("incompatible super-polynomials")
            }
        }
        impl $tr<SuperPoly> for SuperPoly {
            type Output = SuperPoly;
            fn $method(self, rhs: SuperPoly) -> SuperPoly {
                (&self).$method(&rhs)
            }
        }
    };
}

poly_binop!(Add, add, checked_add);
poly_binop!(Sub, sub, checked_sub);

impl std::ops::Mul<&SuperPoly> for &SuperPoly {
    type Output = SuperPoly;
    fn mul(self, rhs: &SuperPoly) -> SuperPoly {
        self.checked_mul(rhs).expect("incompatible super-polynomials")
    }
}

impl std::ops::Mul<SuperPoly> for SuperPoly {
    type Output = SuperPoly;
    fn mul(self, rhs: SuperPoly) -> SuperPoly {
        &self * &rhs
    }
}

impl Neg for &SuperPoly {
    type Output = SuperPoly;
    fn neg(self) -> SuperPoly {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -&*c;
        }
        out
    }
}

impl Neg for SuperPoly {
    type Output = SuperPoly;
    fn neg(self) -> SuperPoly {
        -&self
    }
}

impl fmt::Debug for SuperPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SuperPoly[n={}, {}]({})", self.n, self.flavor.name(), self)
    }
}

impl Zero for Bidegree {
    fn zero() -> Self {
        Bidegree::new(0, 0)
    }
    fn is_zero(&self) -> bool {
        self.qdeg == 0 && self.tdeg == 0
    }
}

impl Add for Bidegree {
    type Output = Bidegree;
    fn add(self, rhs: Bidegree) -> Bidegree {
        Bidegree::new(self.qdeg + rhs.qdeg, self.tdeg + rhs.tdeg)
    }
}

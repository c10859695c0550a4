//! Reflection groups as explicit matrix lists with curated fundamental invariants.
//!
//! Matrices act on `V` in the column convention: `sigma(e_j) = sum_i sigma[i][j] e_i`.
//! On polynomial functions the action is the contragredient one,
//! `(sigma f)(v) = f(sigma^-1 v)`, so `x_j -> sum_i (sigma^-1)[j][i] x_i`; theta follows
//! `x` and psi follows `e`. For unitary `sigma`, `sigma^-1` is the conjugate transpose.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalars::{rat, Cyclotomic};
use crate::supergebra::{Flavor, LinearSubstitution, SuperMonomial, SuperPoly};
use crate::text::{parse_cyclotomic, parse_superpoly};

/// Largest group the catalog will materialize.
pub const MAX_GROUP_ORDER: usize = 1000;

/// Rank-1 characters supported by the projector and Molien machinery.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Character {
    Trivial,
    Det,
    DetInv,
}

impl Character {
    pub const ALL: [Character; 3] = [Character::Det, Character::Trivial, Character::DetInv];

    pub fn value(self, sigma: &Matrix) -> Cyclotomic {
        match self {
            Character::Trivial => char_trivial(sigma),
            Character::Det => char_det(sigma),
            Character::DetInv => char_det_inv(sigma),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Character::Trivial => "trivial",
            Character::Det => "det",
            Character::DetInv => "det-inv",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "trivial" => Ok(Character::Trivial),
            "det" => Ok(Character::Det),
            "det-inv" | "det_inv" => Ok(Character::DetInv),
            other => Err(Error::Invalid(format!(
                "unknown character '{other}'; valid: trivial, det, det-inv"
            ))),
        }
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub fn char_det(sigma: &Matrix) -> Cyclotomic {
    sigma.det()
}

pub fn char_trivial(sigma: &Matrix) -> Cyclotomic {
    Cyclotomic::one(sigma.conductor())
}

pub fn char_det_inv(sigma: &Matrix) -> Cyclotomic {
    sigma.det().inv().expect("group elements are invertible")
}

/// Closure of the generators under multiplication, identity first, in breadth-first order.
pub fn generate_group(
    n: usize,
    conductor: u32,
    generators: &[Matrix],
    max_order: usize,
) -> Result<Vec<Matrix>> {
    for g in generators {
        if g.dim() != n {
            return Err(Error::DimensionMismatch(format!(
                "generator is {0}x{0}, expected {n}x{n}",
                g.dim()
            )));
        }
        if g.conductor() != conductor {
            return Err(Error::ConductorMismatch(conductor, g.conductor()));
        }
        if g.det().is_zero() {
            return Err(Error::Singular);
        }
    }
    let id = Matrix::identity(n, conductor);
    let mut seen: HashSet<Matrix> = HashSet::from([id.clone()]);
    let mut elements = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(cur) = queue.pop_front() {
        for g in generators {
            let next = cur.mul(g)?;
            if seen.insert(next.clone()) {
                if elements.len() >= max_order {
                    return Err(Error::OrderExceeded(max_order));
                }
                elements.push(next.clone());
                queue.push_back(next);
            }
        }
    }
    Ok(elements)
}

/// Action of a single matrix on a super-polynomial (see the module docs for the convention).
pub fn act(sigma: &Matrix, f: &SuperPoly) -> Result<SuperPoly> {
    if sigma.dim() != f.n() {
        return Err(Error::DimensionMismatch(format!(
            "{0}x{0} matrix acting on {1} variables",
            sigma.dim(),
            f.n()
        )));
    }
    substitution_for(sigma, &sigma.inverse()?, f.flavor())?.apply(f)
}

fn substitution_for(sigma: &Matrix, inverse: &Matrix, flavor: Flavor) -> Result<LinearSubstitution> {
    match flavor {
        Flavor::DualExterior => LinearSubstitution::new(inverse, inverse, flavor),
        Flavor::PrimalExterior => LinearSubstitution::new(inverse, &sigma.transpose(), flavor),
    }
}

/// A finite group element with its inverse and precomputed substitutions.
#[derive(Clone, Debug)]
pub struct GroupElement {
    pub matrix: Matrix,
    pub inverse: Matrix,
    pub det: Cyclotomic,
    dual: LinearSubstitution,
    primal: LinearSubstitution,
}

impl GroupElement {
    fn new(matrix: Matrix) -> Result<Self> {
        let inverse = matrix.inverse()?;
        let det = matrix.det();
        let dual = substitution_for(&matrix, &inverse, Flavor::DualExterior)?;
        let primal = substitution_for(&matrix, &inverse, Flavor::PrimalExterior)?;
        Ok(GroupElement {
            matrix,
            inverse,
            det,
            dual,
            primal,
        })
    }

    pub fn substitution(&self, flavor: Flavor) -> &LinearSubstitution {
        match flavor {
            Flavor::DualExterior => &self.dual,
            Flavor::PrimalExterior => &self.primal,
        }
    }

    pub fn act(&self, f: &SuperPoly) -> Result<SuperPoly> {
        self.substitution(f.flavor()).apply(f)
    }

    pub fn character(&self, chi: Character) -> Cyclotomic {
        match chi {
            Character::Trivial => Cyclotomic::one(self.det.conductor()),
            Character::Det => self.det.clone(),
            Character::DetInv => self.det.inv().expect("invertible"),
        }
    }
}

/// `Delta` with `df_1 ... df_n = Delta theta_[n]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Vandermonde {
    pub delta: SuperPoly,
}

#[derive(Clone, Debug)]
pub struct ReflectionGroup {
    label: String,
    n: usize,
    conductor: u32,
    generators: Vec<Matrix>,
    elements: Vec<GroupElement>,
    invariants: Vec<SuperPoly>,
    degrees: Vec<u32>,
    unitary: bool,
    real: bool,
}

impl ReflectionGroup {
    /// Builds and validates a group: closure, invariance, independence and `|G| = prod d_i`.
    pub fn new(
        label: impl Into<String>,
        n: usize,
        conductor: u32,
        generators: Vec<Matrix>,
        invariants: Vec<SuperPoly>,
        max_order: usize,
    ) -> Result<Self> {
        let label = label.into();
        let mats = generate_group(n, conductor, &generators, max_order.min(MAX_GROUP_ORDER))?;
        let elements = mats
            .into_iter()
            .map(GroupElement::new)
            .collect::<Result<Vec<_>>>()?;
        if invariants.len() != n {
            return Err(Error::InvalidGroup(format!(
                "{label}: expected {n} invariants, got {}",
                invariants.len()
            )));
        }
        let mut with_deg = Vec::with_capacity(n);
        for (k, f) in invariants.into_iter().enumerate() {
            let f = f.relabel(Flavor::DualExterior);
            if f.n() != n || f.conductor() != conductor {
                return Err(Error::InvalidGroup(format!(
                    "{label}: invariant {} has the wrong arity or conductor",
                    k + 1
                )));
            }
            let Some(b) = f.bidegree().filter(|b| b.tdeg == 0 && b.qdeg > 0) else {
                return Err(Error::InvalidGroup(format!(
                    "{label}: invariant {} is not a homogeneous non-constant x-polynomial",
                    k + 1
                )));
            };
            with_deg.push((b.qdeg, f));
        }
        with_deg.sort_by_key(|(d, _)| *d);
        let (degrees, invariants): (Vec<u32>, Vec<SuperPoly>) = with_deg.into_iter().unzip();
        for (k, f) in invariants.iter().enumerate() {
            for g in &elements {
                if g.act(f)? != *f {
                    return Err(Error::InvalidGroup(format!(
                        "{label}: f_{} = {f} is not invariant under {}",
                        k + 1,
                        g.matrix
                    )));
                }
            }
        }
        let order: u64 = degrees.iter().map(|&d| d as u64).product();
        if order != elements.len() as u64 {
            return Err(Error::InvalidGroup(format!(
                "{label}: |G| = {} but the product of degrees is {order}",
                elements.len()
            )));
        }
        let unitary = generators.iter().all(Matrix::is_unitary);
        let real = generators.iter().all(Matrix::is_real);
        let group = ReflectionGroup {
            label,
            n,
            conductor,
            generators,
            elements,
            invariants,
            degrees,
            unitary,
            real,
        };
        group.vandermonde()?;
        Ok(group)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Matrix] {
        &self.generators
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn invariants(&self) -> &[SuperPoly] {
        &self.invariants
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    /// Every element satisfies `sigma sigma^dagger = 1`.
    pub fn is_unitary(&self) -> bool {
        self.unitary
    }

    /// Real orthogonal: unitary with real entries.
    pub fn is_orthogonal(&self) -> bool {
        self.unitary && self.real
    }

    /// Invariants and their differentials in the requested flavor's ring.
    pub fn invariant_differentials(&self) -> Vec<SuperPoly> {
        self.invariants
            .iter()
            .map(|f| f.exterior_derivative().expect("invariants are dual flavor"))
            .collect()
    }

    pub fn vandermonde(&self) -> Result<Vandermonde> {
        let n = self.n;
        let mut prod = SuperPoly::one(n, Flavor::DualExterior, self.conductor);
        for f in &self.invariants {
            prod = &prod * &f.exterior_derivative()?;
        }
        let top = (1u32 << n) - 1;
        let mut delta = SuperPoly::zero(n, Flavor::DualExterior, self.conductor);
        for (m, c) in prod.terms() {
            debug_assert_eq!(m.subset, top);
            delta.add_term(SuperMonomial::new(m.alpha.clone(), 0), c.clone());
        }
        if delta.is_zero() {
            return Err(Error::InvalidGroup(format!(
                "{}: Jacobian of the invariants vanishes (dependent invariants)",
                self.label
            )));
        }
        Ok(Vandermonde { delta })
    }

    /// Same group with a different fundamental system (validated).
    pub fn with_invariants(&self, label: impl Into<String>, invariants: Vec<SuperPoly>) -> Result<Self> {
        ReflectionGroup::new(
            label,
            self.n,
            self.conductor,
            self.generators.clone(),
            invariants,
            MAX_GROUP_ORDER,
        )
    }

    /// Parses a group id such as `S3`, `S4-standard`, `B2`, `D3`, `I2-5`, `G-3-1-2`.
    pub fn builtin(id: &str) -> Result<Self> {
        let unknown = || Error::UnknownGroup {
            name: id.to_string(),
            valid: BUILTIN_FORMS.to_string(),
        };
        let num = |s: &str| s.parse::<usize>().map_err(|_| unknown());
        if let Some(rest) = id.strip_prefix("I2-") {
            return dihedral(num(rest)?);
        }
        if let Some(rest) = id.strip_prefix("G-") {
            let parts: Vec<&str> = rest.split('-').collect();
            if parts.len() == 3 && parts[1] == "1" {
                return imprimitive(num(parts[0])?, num(parts[2])?);
            }
            return Err(unknown());
        }
        if let Some(rest) = id.strip_prefix('S') {
            if let Some(k) = rest.strip_suffix("-standard") {
                return symmetric_standard(num(k)?);
            }
            if let Some(k) = rest.strip_suffix("-power") {
                return symmetric_power_sums(num(k)?);
            }
            return symmetric(num(rest)?);
        }
        if let Some(rest) = id.strip_prefix('B') {
            return hyperoctahedral(num(rest)?);
        }
        if let Some(rest) = id.strip_prefix('D') {
            return even_signed(num(rest)?);
        }
        Err(unknown())
    }
}

pub const BUILTIN_FORMS: &str =
    "S<n>, S<n>-standard, S<n>-power, B<n>, D<n>, I2-<m>, G-<m>-1-<n>";

/// Ids shown by the catalog listing.
pub const CATALOG: &[&str] = &[
    "S2", "S3", "S4", "S3-power", "S3-standard", "S4-standard", "B2", "B3", "B4", "D3", "D4",
    "I2-3", "I2-4", "I2-5", "I2-6", "G-3-1-1", "G-3-1-2", "G-4-1-2",
];

fn dual_poly(n: usize, conductor: u32) -> impl Fn(usize) -> SuperPoly {
    move |i| SuperPoly::x(n, Flavor::DualExterior, conductor, i)
}

/// `e_1, ..., e_n` of the given elements.
pub fn elementary_symmetric(ys: &[SuperPoly]) -> Vec<SuperPoly> {
    let first = &ys[0];
    let zero = SuperPoly::zero(first.n(), first.flavor(), first.conductor());
    let mut e = vec![SuperPoly::one(first.n(), first.flavor(), first.conductor())];
    e.resize(ys.len() + 1, zero);
    for (i, y) in ys.iter().enumerate() {
        for k in (1..=i + 1).rev() {
            e[k] = &e[k] + &(&e[k - 1] * y);
        }
    }
    e.remove(0);
    e
}

fn permutation(n: usize, conductor: u32, perm: &[usize]) -> Matrix {
    // sigma(e_j) = e_perm[j]
    let mut m = Matrix::zero(n, conductor);
    for (j, &i) in perm.iter().enumerate() {
        m.set(i, j, Cyclotomic::one(conductor));
    }
    m
}

fn adjacent_transpositions(n: usize, conductor: u32) -> Vec<Matrix> {
    (0..n.saturating_sub(1))
        .map(|k| {
            let mut p: Vec<usize> = (0..n).collect();
            p.swap(k, k + 1);
            permutation(n, conductor, &p)
        })
        .collect()
}

fn check_rank(n: usize) -> Result<()> {
    if (1..=8).contains(&n) {
        Ok(())
    } else {
        Err(Error::InvalidGroup(format!("rank {n} is outside 1..=8")))
    }
}

pub fn symmetric(n: usize) -> Result<ReflectionGroup> {
    check_rank(n)?;
    let x = dual_poly(n, 1);
    let xs: Vec<_> = (1..=n).map(x).collect();
    ReflectionGroup::new(
        format!("S{n}"),
        n,
        1,
        adjacent_transpositions(n, 1),
        elementary_symmetric(&xs),
        MAX_GROUP_ORDER,
    )
}

/// `S_n` with power-sum invariants `p_k = sum_i x_i^k`.
pub fn symmetric_power_sums(n: usize) -> Result<ReflectionGroup> {
    let base = symmetric(n)?;
    let x = dual_poly(n, 1);
    let sums = (1..=n as u32)
        .map(|k| {
            (1..=n).fold(SuperPoly::zero(n, Flavor::DualExterior, 1), |acc, i| {
                &acc + &x(i).pow(k)
            })
        })
        .collect();
    base.with_invariants(format!("S{n}-power"), sums)
}

/// `S_n` on the sum-zero hyperplane in the basis `e_i - e_(i+1)`; rational, not orthogonal.
pub fn symmetric_standard(n: usize) -> Result<ReflectionGroup> {
    if !(2..=7).contains(&n) {
        return Err(Error::InvalidGroup(format!("S{n}-standard needs 2 <= n <= 7")));
    }
    let r = n - 1;
    // Column i of a permuted root, converted to root coordinates by partial sums.
    let gens = (0..n - 1)
        .map(|k| {
            let mut perm: Vec<usize> = (0..n).collect();
            perm.swap(k, k + 1);
            let mut m = Matrix::zero(r, 1);
            for i in 0..r {
                let mut v = vec![0i64; n];
                v[perm[i]] += 1;
                v[perm[i + 1]] -= 1;
                let mut partial = 0;
                for (row, val) in v.iter().take(r).enumerate() {
                    partial += val;
                    m.set(row, i, Cyclotomic::from_int(1, partial));
                }
            }
            m
        })
        .collect();
    let x = dual_poly(r, 1);
    let zero = SuperPoly::zero(r, Flavor::DualExterior, 1);
    let coords: Vec<SuperPoly> = (1..=n)
        .map(|j| {
            let hi = if j <= r { x(j) } else { zero.clone() };
            let lo = if j >= 2 { x(j - 1) } else { zero.clone() };
            &hi - &lo
        })
        .collect();
    let invariants = elementary_symmetric(&coords).into_iter().skip(1).collect();
    ReflectionGroup::new(
        format!("S{n}-standard"),
        r,
        1,
        gens,
        invariants,
        MAX_GROUP_ORDER,
    )
}

fn sign_change_first(n: usize, conductor: u32, value: Cyclotomic) -> Matrix {
    let mut m = Matrix::identity(n, conductor);
    m.set(0, 0, value);
    m
}

pub fn hyperoctahedral(n: usize) -> Result<ReflectionGroup> {
    check_rank(n)?;
    let x = dual_poly(n, 1);
    let squares: Vec<_> = (1..=n).map(|i| x(i).pow(2)).collect();
    let mut gens = adjacent_transpositions(n, 1);
    gens.push(sign_change_first(n, 1, Cyclotomic::from_int(1, -1)));
    ReflectionGroup::new(
        format!("B{n}"),
        n,
        1,
        gens,
        elementary_symmetric(&squares),
        MAX_GROUP_ORDER,
    )
}

pub fn even_signed(n: usize) -> Result<ReflectionGroup> {
    check_rank(n)?;
    if n < 2 {
        return Err(Error::InvalidGroup("D(n) needs n >= 2".into()));
    }
    let x = dual_poly(n, 1);
    let squares: Vec<_> = (1..=n).map(|i| x(i).pow(2)).collect();
    let mut invariants: Vec<SuperPoly> = elementary_symmetric(&squares)
        .into_iter()
        .take(n - 1)
        .collect();
    invariants.push((2..=n).fold(x(1), |acc, i| &acc * &x(i)));
    let mut gens = adjacent_transpositions(n, 1);
    let mut s0 = Matrix::identity(n, 1);
    s0.set(0, 0, Cyclotomic::zero(1));
    s0.set(1, 1, Cyclotomic::zero(1));
    s0.set(0, 1, Cyclotomic::from_int(1, -1));
    s0.set(1, 0, Cyclotomic::from_int(1, -1));
    gens.push(s0);
    ReflectionGroup::new(format!("D{n}"), n, 1, gens, invariants, MAX_GROUP_ORDER)
}

/// Real dihedral group of order `2m` over `Q(zeta_lcm(m,4))`.
pub fn dihedral(m: usize) -> Result<ReflectionGroup> {
    if !(2..=60).contains(&m) {
        return Err(Error::InvalidGroup(format!("I2({m}) needs 2 <= m <= 60")));
    }
    let c = num_integer::lcm(m as u32, 4);
    let zm = Cyclotomic::zeta_pow(c, (c / m as u32) as i64);
    let zm_inv = zm.inv()?;
    let i = Cyclotomic::zeta_pow(c, (c / 4) as i64);
    let half = Cyclotomic::from_rational(c, rat(1, 2));
    let cos = &(&zm + &zm_inv) * &half;
    let sin = &(&(&zm - &zm_inv) * &half) * &i.inv()?;
    let rot = Matrix::from_rows(vec![vec![cos.clone(), -&sin], vec![sin, cos]])?;
    let refl = sign_change_first(2, c, Cyclotomic::one(c)).mul(&Matrix::from_rows(vec![
        vec![Cyclotomic::one(c), Cyclotomic::zero(c)],
        vec![Cyclotomic::zero(c), Cyclotomic::from_int(c, -1)],
    ])?)?;
    let x = dual_poly(2, c);
    let f1 = &x(1).pow(2) + &x(2).pow(2);
    let mut f2 = SuperPoly::zero(2, Flavor::DualExterior, c);
    for k in 0..=m / 2 {
        let b = binomial(m as u64, 2 * k as u64) as i64;
        let sign = if k % 2 == 0 { 1 } else { -1 };
        let term = &x(1).pow((m - 2 * k) as u32) * &x(2).pow(2 * k as u32);
        f2 = &f2 + &term.scale(&Cyclotomic::from_int(c, sign * b));
    }
    ReflectionGroup::new(
        format!("I2-{m}"),
        2,
        c,
        vec![rot, refl],
        vec![f1, f2],
        MAX_GROUP_ORDER,
    )
}

/// Monomial group `G(m,1,n)`: permutations times diagonal `m`-th roots of unity.
pub fn imprimitive(m: usize, n: usize) -> Result<ReflectionGroup> {
    check_rank(n)?;
    if !(1..=24).contains(&m) {
        return Err(Error::InvalidGroup(format!("G({m},1,{n}) needs 1 <= m <= 24")));
    }
    let c = m as u32;
    let x = dual_poly(n, c);
    let powers: Vec<_> = (1..=n).map(|i| x(i).pow(c)).collect();
    let mut gens = adjacent_transpositions(n, c);
    if m > 1 {
        gens.push(sign_change_first(n, c, Cyclotomic::zeta(c)));
    }
    ReflectionGroup::new(
        format!("G-{m}-1-{n}"),
        n,
        c,
        gens,
        elementary_symmetric(&powers),
        MAX_GROUP_ORDER,
    )
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// On-disk group description, loaded through [`load_group_spec`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupSpecFile {
    pub label: String,
    pub n: usize,
    pub conductor: u32,
    /// Each generator is a list of rows of scalar strings such as `"-1"` or `"1/2*z + 1"`.
    pub generators: Vec<Vec<Vec<String>>>,
    pub invariants: Vec<String>,
    #[serde(default = "default_max_order")]
    pub max_order: usize,
}

fn default_max_order() -> usize {
    MAX_GROUP_ORDER
}

impl GroupSpecFile {
    pub fn build(&self) -> Result<ReflectionGroup> {
        let gens = self
            .generators
            .iter()
            .map(|rows| {
                let rows = rows
                    .iter()
                    .map(|r| {
                        r.iter()
                            .map(|s| parse_cyclotomic(s, self.conductor))
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                Matrix::from_rows(rows)
            })
            .collect::<Result<Vec<_>>>()?;
        let invariants = self
            .invariants
            .iter()
            .map(|s| parse_superpoly(s, self.n, Flavor::DualExterior, self.conductor))
            .collect::<Result<Vec<_>>>()?;
        ReflectionGroup::new(
            self.label.clone(),
            self.n,
            self.conductor,
            gens,
            invariants,
            self.max_order,
        )
    }
}

/// Parses a JSON group description and runs every validation check.
pub fn load_group_spec(json: &str) -> Result<ReflectionGroup> {
    let spec: GroupSpecFile =
        serde_json::from_str(json).map_err(|e| Error::Invalid(format!("group spec: {e}")))?;
    spec.build()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generate_small_groups() {
        let neg = Matrix::from_ints(1, &[&[-1]]);
        assert_eq!(generate_group(1, 1, &[neg], 10).unwrap().len(), 2);
        assert_eq!(generate_group(2, 1, &[], 10).unwrap().len(), 1);
        let g = dihedral(3).unwrap();
        assert_eq!(generate_group(2, 12, g.generators(), 100).unwrap().len(), 6);
        assert_eq!(
            generate_group(2, 12, g.generators(), 5),
            Err(Error::OrderExceeded(5))
        );
        let sing = Matrix::from_ints(1, &[&[1, 1], &[1, 1]]);
        assert_eq!(generate_group(2, 1, &[sing], 10), Err(Error::Singular));
    }

    #[test]
    fn catalog_orders_and_degrees() {
        let b2 = ReflectionGroup::builtin("B2").unwrap();
        assert_eq!(b2.order(), 8);
        assert_eq!(b2.degrees(), &[2, 4]);
        let i4 = ReflectionGroup::builtin("I2-4").unwrap();
        assert_eq!((i4.order(), i4.degrees()), (8, &[2u32, 4][..]));
        let s2 = ReflectionGroup::builtin("S2").unwrap();
        assert_eq!(s2.degrees(), &[1, 2]);
        for id in CATALOG {
            let g = ReflectionGroup::builtin(id).unwrap();
            let prod: u32 = g.degrees().iter().product();
            assert_eq!(prod as usize, g.order(), "{id}");
        }
    }

    #[test]
    fn orthogonality_flags() {
        assert!(ReflectionGroup::builtin("I2-5").unwrap().is_orthogonal());
        let g = ReflectionGroup::builtin("G-3-1-2").unwrap();
        assert!(g.is_unitary() && !g.is_orthogonal());
        assert!(!ReflectionGroup::builtin("S3-standard").unwrap().is_unitary());
    }

    #[test]
    fn unknown_ids() {
        assert!(matches!(
            ReflectionGroup::builtin("E8"),
            Err(Error::UnknownGroup { .. })
        ));
        assert!(ReflectionGroup::builtin("G-3-3-2").is_err());
        assert!(ReflectionGroup::builtin("Sx").is_err());
    }

    #[test]
    fn transposition_moves_x1_to_x2() {
        let t = permutation(3, 1, &[1, 0, 2]);
        let x = dual_poly(3, 1);
        assert_eq!(act(&t, &x(1)).unwrap(), x(2));
    }

    #[test]
    fn cyclic_action_uses_inverse_root() {
        let g = imprimitive(3, 1).unwrap();
        let sigma = &g.generators()[0];
        let x = SuperPoly::x(1, Flavor::DualExterior, 3, 1);
        let img = act(sigma, &x).unwrap();
        assert_eq!(img, x.scale(&Cyclotomic::zeta_pow(3, 2)));
        assert_eq!(act(sigma, &x.pow(3)).unwrap(), x.pow(3));
    }

    #[test]
    fn vandermonde_examples() {
        let s2 = symmetric(2).unwrap();
        let x = dual_poly(2, 1);
        assert_eq!(s2.vandermonde().unwrap().delta, &x(1) - &x(2));
        let b2 = hyperoctahedral(2).unwrap();
        let delta = b2.vandermonde().unwrap().delta;
        assert_eq!(delta.bidegree().unwrap().qdeg, 4);
    }

    #[test]
    fn characters() {
        let t = permutation(2, 1, &[1, 0]);
        assert_eq!(char_det(&t), Cyclotomic::from_int(1, -1));
        assert!(char_det(&Matrix::identity(3, 1)).is_one());
        let g = dihedral(5).unwrap();
        assert!(char_det(&g.generators()[0]).is_one());
        assert!(char_trivial(&t).is_one());
        assert_eq!(char_det_inv(&t), Cyclotomic::from_int(1, -1));
    }

    #[test]
    fn spec_file_round_trip() {
        let json = r#"{
            "label": "C3",
            "n": 1,
            "conductor": 3,
            "generators": [[["z"]]],
            "invariants": ["x1^3"]
        }"#;
        let g = load_group_spec(json).unwrap();
        assert_eq!(g.order(), 3);
        assert_eq!(g.degrees(), &[3]);
        let bad = json.replace("x1^3", "x1^2");
        assert!(load_group_spec(&bad).is_err());
    }
}

//! Linear algebra on bidegree slices: isotypic projectors, the invariant ideal,
//! quotient multiplicities, and the explicit alternant bases.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::actions::{dot, odot, sum_of_squares};
use crate::error::{Error, Result};
use crate::groups::{act, Character, ReflectionGroup};
use crate::linalg::EchelonBasis;
use crate::molien::BiSeries;
use crate::scalars::{Cyclotomic, Rational};
use crate::supergebra::{subset_indices, Bidegree, Flavor, Subset, SuperMonomial, SuperPoly};

/// Exponent vectors of total degree `d` in `n` variables, lexicographically decreasing.
pub fn exponent_vectors(n: usize, d: u32) -> Vec<Vec<u32>> {
    fn rec(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() + 1 == n {
            prefix.push(d);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for a in (0..=d).rev() {
            prefix.push(a);
            rec(n, d - a, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(n, d, &mut Vec::with_capacity(n), &mut out);
    out
}

/// Subsets of `[n]` with `j` elements, as increasing bitmasks.
pub fn subsets_of_size(n: usize, j: u32) -> Vec<Subset> {
    (0..1u32 << n).filter(|s| s.count_ones() == j).collect()
}

/// Monomial basis of the bidegree `(i, j)` piece.
#[derive(Clone, Debug)]
pub struct BidegreeSlice {
    n: usize,
    bidegree: Bidegree,
    flavor: Flavor,
    monomials: Vec<SuperMonomial>,
    index: HashMap<SuperMonomial, usize>,
}

impl BidegreeSlice {
    pub fn new(n: usize, bidegree: Bidegree, flavor: Flavor) -> Self {
        let mut monomials = Vec::new();
        if bidegree.tdeg as usize <= n {
            let subsets = subsets_of_size(n, bidegree.tdeg);
            for alpha in exponent_vectors(n, bidegree.qdeg) {
                for &s in &subsets {
                    monomials.push(SuperMonomial::new(alpha.clone(), s));
                }
            }
        }
        let index = monomials
            .iter()
            .enumerate()
            .map(|(k, m)| (m.clone(), k))
            .collect();
        BidegreeSlice {
            n,
            bidegree,
            flavor,
            monomials,
            index,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bidegree(&self) -> Bidegree {
        self.bidegree
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn dim(&self) -> usize {
        self.monomials.len()
    }

    pub fn monomials(&self) -> &[SuperMonomial] {
        &self.monomials
    }

    /// Coordinates of a bihomogeneous element of this slice.
    pub fn coordinates(&self, f: &SuperPoly) -> Result<Vec<Cyclotomic>> {
        let mut v = vec![Cyclotomic::zero(f.conductor()); self.dim()];
        for (m, c) in f.terms() {
            let k = self.index.get(m).ok_or_else(|| {
                Error::DimensionMismatch(format!(
                    "term of bidegree {} outside slice {}",
                    m.bidegree(),
                    self.bidegree
                ))
            })?;
            v[*k] = c.clone();
        }
        Ok(v)
    }

    pub fn element(&self, v: &[Cyclotomic], conductor: u32) -> SuperPoly {
        let mut f = SuperPoly::zero(self.n, self.flavor, conductor);
        for (m, c) in self.monomials.iter().zip(v) {
            f.add_term(m.clone(), c.clone());
        }
        f
    }
}

/// Row-reduced spanning set of a subspace of a slice.
#[derive(Clone, Debug)]
pub struct SubspaceBasis {
    pub slice: BidegreeSlice,
    pub basis: EchelonBasis,
    pub conductor: u32,
}

impl SubspaceBasis {
    pub fn new(slice: BidegreeSlice, conductor: u32) -> Self {
        let basis = EchelonBasis::new(slice.dim(), conductor);
        SubspaceBasis {
            slice,
            basis,
            conductor,
        }
    }

    pub fn rank(&self) -> usize {
        self.basis.rank()
    }

    pub fn insert(&mut self, f: &SuperPoly) -> Result<bool> {
        Ok(self.basis.insert(self.slice.coordinates(f)?))
    }

    /// Basis elements in reduced row echelon form.
    pub fn vectors(&self) -> Vec<SuperPoly> {
        self.basis
            .rref()
            .iter()
            .map(|v| self.slice.element(v, self.conductor))
            .collect()
    }
}

/// Rows `P(m_k)` of `P = (1/|G|) sum chi(sigma^-1) rho(sigma)` on the slice monomials.
pub fn projector_matrix(
    group: &ReflectionGroup,
    chi: Character,
    slice: &BidegreeSlice,
) -> Result<Vec<Vec<Cyclotomic>>> {
    let m = group.conductor();
    let dim = slice.dim();
    let zero = || vec![vec![Cyclotomic::zero(m); dim]; dim];
    let order = Cyclotomic::from_rational(m, Rational::from_integer((group.order() as i64).into()));
    let scale = order.inv()?;
    let total = group
        .elements()
        .par_iter()
        .map(|g| -> Result<Vec<Vec<Cyclotomic>>> {
            let w = &g.character(chi).inv()? * &scale;
            let images = g.substitution(slice.flavor()).apply_monomials(slice.monomials());
            let mut rows = zero();
            for (row, img) in rows.iter_mut().zip(&images) {
                for (mono, c) in img.terms() {
                    let k = slice.index[mono];
                    row[k] = &w * c;
                }
            }
            Ok(rows)
        })
        .try_reduce(zero, |mut a, b| {
            for (ra, rb) in a.iter_mut().zip(b) {
                for (x, y) in ra.iter_mut().zip(rb) {
                    if !y.is_zero() {
                        *x += &y;
                    }
                }
            }
            Ok(a)
        })?;
    Ok(total)
}

fn rank(rows: impl IntoIterator<Item = Vec<Cyclotomic>>, dim: usize, conductor: u32) -> usize {
    crate::linalg::rank_of(rows, dim, conductor)
}

/// Multiplicity of the rank-1 character `chi` in the slice, as the projector's rank.
pub fn projector_multiplicity(
    group: &ReflectionGroup,
    chi: Character,
    bidegree: Bidegree,
    flavor: Flavor,
) -> Result<usize> {
    let slice = BidegreeSlice::new(group.n(), bidegree, flavor);
    let p = projector_matrix(group, chi, &slice)?;
    Ok(rank(p, slice.dim(), group.conductor()))
}

/// Span of `m f_i` and `m df_i` inside the dual-flavor slice.
pub fn ideal_slice(group: &ReflectionGroup, bidegree: Bidegree) -> Result<SubspaceBasis> {
    let n = group.n();
    let m = group.conductor();
    let slice = BidegreeSlice::new(n, bidegree, Flavor::DualExterior);
    let mut basis = SubspaceBasis::new(slice, m);
    let (i, j) = (bidegree.qdeg, bidegree.tdeg);
    let diffs = group.invariant_differentials();
    let gens_iter = group.invariants().iter().zip(&diffs).zip(group.degrees());
    'outer: for ((f, df), &d) in gens_iter {
        let mut gens: Vec<(&SuperPoly, Bidegree)> = Vec::new();
        if d <= i {
            gens.push((f, Bidegree::new(i - d, j)));
        }
        if d - 1 <= i && j >= 1 {
            gens.push((df, Bidegree::new(i + 1 - d, j - 1)));
        }
        for (g, b) in gens {
            for mono in BidegreeSlice::new(n, b, Flavor::DualExterior).monomials() {
                let prod = &SuperPoly::monomial(n, Flavor::DualExterior, mono.clone(), Cyclotomic::one(m)) * g;
                basis.insert(&prod)?;
                if basis.basis.is_full() {
                    break 'outer;
                }
            }
        }
    }
    Ok(basis)
}

/// Multiplicity of `chi` in the super-coinvariant quotient at `bidegree` (dual flavor):
/// ring multiplicity minus ideal multiplicity.
pub fn quotient_multiplicity(group: &ReflectionGroup, chi: Character, bidegree: Bidegree) -> Result<usize> {
    let ideal = ideal_slice(group, bidegree)?;
    let slice = &ideal.slice;
    let dim = slice.dim();
    let m = group.conductor();
    let p = projector_matrix(group, chi, slice)?;
    let ring = rank(p.iter().cloned(), dim, m);
    if ring == 0 {
        return Ok(0);
    }
    let projected = ideal.basis.rows().into_iter().map(|v| {
        let mut out = vec![Cyclotomic::zero(m); dim];
        for (vk, row) in v.iter().zip(&p) {
            if vk.is_zero() {
                continue;
            }
            for (o, r) in out.iter_mut().zip(row) {
                if !r.is_zero() {
                    *o += &(vk * r);
                }
            }
        }
        out
    });
    let in_ideal = rank(projected, dim, m);
    Ok(ring - in_ideal)
}

fn bidegrees(qmax: u32, tmax: u32) -> Vec<Bidegree> {
    (0..=qmax)
        .flat_map(|i| (0..=tmax).map(move |j| Bidegree::new(i, j)))
        .collect()
}

/// Quotient multiplicities for every bidegree up to the truncation.
pub fn quotient_series(group: &ReflectionGroup, chi: Character, qmax: u32, tmax: u32) -> Result<BiSeries> {
    let values = bidegrees(qmax, tmax)
        .into_par_iter()
        .map(|b| quotient_multiplicity(group, chi, b).map(|v| (b, v)))
        .collect::<Result<Vec<_>>>()?;
    Ok(series_from(qmax, tmax, values))
}

/// Projector multiplicities for every bidegree up to the truncation.
pub fn projector_series(
    group: &ReflectionGroup,
    chi: Character,
    flavor: Flavor,
    qmax: u32,
    tmax: u32,
) -> Result<BiSeries> {
    let values = bidegrees(qmax, tmax)
        .into_par_iter()
        .map(|b| projector_multiplicity(group, chi, b, flavor).map(|v| (b, v)))
        .collect::<Result<Vec<_>>>()?;
    Ok(series_from(qmax, tmax, values))
}

fn series_from(qmax: u32, tmax: u32, values: Vec<(Bidegree, usize)>) -> BiSeries {
    BiSeries::from_terms(
        qmax,
        tmax,
        values
            .into_iter()
            .map(|(b, v)| (b.qdeg, b.tdeg, Rational::from_integer((v as i64).into()))),
    )
}

/// `df_I = df_{i_1} ... df_{i_r}` in the dual ring.
pub fn df_product(group: &ReflectionGroup, subset: Subset) -> SuperPoly {
    let diffs = group.invariant_differentials();
    subset_indices(subset).into_iter().fold(
        SuperPoly::one(group.n(), Flavor::DualExterior, group.conductor()),
        |acc, k| &acc * &diffs[k - 1],
    )
}

/// Vectors `alpha` with `sum alpha_k w_k = total`.
pub fn weighted_compositions(weights: &[u32], total: u32) -> Vec<Vec<u32>> {
    fn rec(weights: &[u32], total: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        let Some((&w, rest)) = weights.split_first() else {
            if total == 0 {
                out.push(prefix.clone());
            }
            return;
        };
        for a in 0..=total / w {
            prefix.push(a);
            rec(rest, total - a * w, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(weights, total, &mut Vec::new(), &mut out);
    out
}

/// All `df_I (.) (f^alpha Delta)` of the given bidegree, as primal elements.
/// Each is checked to transform by `det` under the generators.
pub fn alt_upstairs_vectors(group: &ReflectionGroup, bidegree: Bidegree) -> Result<Vec<SuperPoly>> {
    let n = group.n();
    let delta = group.vandermonde()?.delta;
    let e: Vec<u32> = group.degrees().iter().map(|d| d - 1).collect();
    let delta_deg: u32 = e.iter().sum();
    let mut out = Vec::new();
    let mut powers: HashMap<Vec<u32>, SuperPoly> = HashMap::new();
    for subset in subsets_of_size(n, bidegree.tdeg) {
        let lowered: u32 = subset_indices(subset).iter().map(|&k| e[k - 1]).sum();
        let target = bidegree.qdeg + lowered;
        if target < delta_deg {
            continue;
        }
        let df = df_product(group, subset);
        for alpha in weighted_compositions(group.degrees(), target - delta_deg) {
            let base = powers
                .entry(alpha.clone())
                .or_insert_with(|| {
                    group
                        .invariants()
                        .iter()
                        .zip(&alpha)
                        .fold(delta.clone(), |acc, (f, &a)| &acc * &f.pow(a))
                        .relabel(Flavor::PrimalExterior)
                })
                .clone();
            let v = odot(&df, &base)?;
            if !v.is_zero() {
                out.push(v);
            }
        }
    }
    for v in &out {
        for sigma in group.generators() {
            let image = act(sigma, v)?;
            if image != v.scale(&sigma.det()) {
                return Err(Error::Invalid(format!(
                    "{v} is not det-isotypic under {sigma}"
                )));
            }
        }
    }
    Ok(out)
}

/// Checks the hypotheses of the harmonic alternant basis theorem.
pub fn harmonics_hypotheses(group: &ReflectionGroup) -> Result<()> {
    if !group.is_orthogonal() {
        return Err(Error::NotApplicable(format!(
            "{} is not real orthogonal in its working basis",
            group.label()
        )));
    }
    if let Some(d) = group.degrees().iter().find(|&&d| d < 2) {
        return Err(Error::NotApplicable(format!(
            "{} has a degree {d} < 2",
            group.label()
        )));
    }
    if group.invariants()[0] != sum_of_squares(group.n(), group.conductor()) {
        return Err(Error::NotApplicable(format!(
            "the first invariant of {} is not x_1^2 + ... + x_n^2",
            group.label()
        )));
    }
    Ok(())
}

/// The `2^n` elements `df_I (.) Delta`, read in the dual ring, keyed by `I`.
pub fn harmonics_det_basis(group: &ReflectionGroup) -> Result<Vec<(Subset, SuperPoly)>> {
    harmonics_hypotheses(group)?;
    let delta = group.vandermonde()?.delta.relabel(Flavor::PrimalExterior);
    (0..1u32 << group.n())
        .map(|s| {
            let v = odot(&df_product(group, s), &delta)?;
            Ok((s, v.relabel(Flavor::DualExterior)))
        })
        .collect()
}

/// Annihilated by every `f_i .` and `df_i .`.
pub fn is_harmonic(group: &ReflectionGroup, g: &SuperPoly) -> Result<bool> {
    for (f, df) in group.invariants().iter().zip(group.invariant_differentials()) {
        if !dot(f, g)?.is_zero() || !dot(&df, g)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn permutations(n: usize) -> Vec<(Vec<usize>, bool)> {
    // (permutation, is_odd)
    if n == 0 {
        return vec![(Vec::new(), false)];
    }
    let mut out = Vec::new();
    for (p, odd) in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            // Inserting the largest value at `pos` adds `len - pos` inversions.
            out.push((q, odd ^ ((p.len() - pos) % 2 == 1)));
        }
    }
    out
}

/// `a_{lambda + delta} = sum_sigma sgn(sigma) prod_j x_{sigma(j)}^{lambda_j + n - j}`.
pub fn schur_alternant(lambda: &[u32], n: usize) -> Result<SuperPoly> {
    if lambda.len() > n {
        return Err(Error::Invalid(format!(
            "partition {lambda:?} has more than {n} parts"
        )));
    }
    let exps: Vec<u32> = (0..n)
        .map(|j| lambda.get(j).copied().unwrap_or(0) + (n - 1 - j) as u32)
        .collect();
    let mut out = SuperPoly::zero(n, Flavor::DualExterior, 1);
    for (perm, odd) in permutations(n) {
        let mut alpha = vec![0; n];
        for (j, &target) in perm.iter().enumerate() {
            alpha[target] = exps[j];
        }
        out.add_term(
            SuperMonomial::new(alpha, 0),
            Cyclotomic::from_int(1, if odd { -1 } else { 1 }),
        );
    }
    Ok(out)
}

/// Partitions of `k` with at most `parts` parts, largest part first.
pub fn partitions(k: u32, parts: usize) -> Vec<Vec<u32>> {
    fn rec(k: u32, max: u32, parts: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if k == 0 {
            out.push(prefix.clone());
            return;
        }
        if parts == 0 {
            return;
        }
        for p in (1..=k.min(max)).rev() {
            prefix.push(p);
            rec(k - p, p, parts - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(k, k, parts, &mut Vec::new(), &mut out);
    out
}

/// `(lambda + delta_n)! n!`.
pub fn schur_norm(lambda: &[u32], n: usize) -> Rational {
    let mut acc = num_bigint::BigInt::from(1);
    for j in 0..n {
        let e = lambda.get(j).copied().unwrap_or(0) + (n - 1 - j) as u32;
        for k in 2..=e {
            acc *= k;
        }
    }
    for k in 2..=n {
        acc *= k;
    }
    Rational::from_integer(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::int;
    use crate::text::parse_superpoly;

    fn b(i: u32, j: u32) -> Bidegree {
        Bidegree::new(i, j)
    }

    #[test]
    fn slice_shape_and_order() {
        let s = BidegreeSlice::new(3, b(2, 1), Flavor::DualExterior);
        assert_eq!(s.dim(), 6 * 3);
        assert_eq!(s.monomials()[0], SuperMonomial::new(vec![2, 0, 0], 0b001));
        assert_eq!(s.monomials()[1], SuperMonomial::new(vec![2, 0, 0], 0b010));
        assert_eq!(s.monomials().last().unwrap(), &SuperMonomial::new(vec![0, 0, 2], 0b100));
        assert_eq!(BidegreeSlice::new(2, b(1, 3), Flavor::DualExterior).dim(), 0);
    }

    #[test]
    fn projector_examples() {
        let s2 = ReflectionGroup::builtin("S2").unwrap();
        let d = Flavor::DualExterior;
        assert_eq!(projector_multiplicity(&s2, Character::Trivial, b(0, 0), d).unwrap(), 1);
        assert_eq!(projector_multiplicity(&s2, Character::Det, b(1, 0), d).unwrap(), 1);
        assert_eq!(projector_multiplicity(&s2, Character::Det, b(0, 0), d).unwrap(), 0);
    }

    #[test]
    fn ideal_examples() {
        let s2 = ReflectionGroup::builtin("S2").unwrap();
        assert_eq!(ideal_slice(&s2, b(0, 0)).unwrap().rank(), 0);
        let lin = ideal_slice(&s2, b(1, 0)).unwrap();
        assert_eq!(lin.rank(), 1);
        assert_eq!(lin.vectors()[0], parse_superpoly("x1 + x2", 2, Flavor::DualExterior, 1).unwrap());
        let ext = ideal_slice(&s2, b(0, 1)).unwrap();
        assert_eq!(ext.vectors()[0], parse_superpoly("t1 + t2", 2, Flavor::DualExterior, 1).unwrap());
    }

    #[test]
    fn quotient_b2() {
        let b2 = ReflectionGroup::builtin("B2").unwrap();
        let s = quotient_series(&b2, Character::Det, 5, 2).unwrap();
        assert_eq!(s.to_poly_string(), "t^2 + q*t + q^3*t + q^4");
        assert_eq!(quotient_multiplicity(&b2, Character::Det, b(0, 0)).unwrap(), 0);
    }

    #[test]
    fn alt_upstairs_small() {
        let s2 = ReflectionGroup::builtin("S2").unwrap();
        let v = alt_upstairs_vectors(&s2, b(1, 0)).unwrap();
        assert_eq!(v, vec![parse_superpoly("x1 - x2", 2, Flavor::PrimalExterior, 1).unwrap()]);
        // df_1 (.) Delta = (t1 + t2) (.) (x1 - x2) = p1 + p2 at bidegree (1, 1)
        let w = alt_upstairs_vectors(&s2, b(1, 1)).unwrap();
        assert_eq!(w.len(), 2);
    }

    #[test]
    fn harmonics_b2() {
        let b2 = ReflectionGroup::builtin("B2").unwrap();
        let basis = harmonics_det_basis(&b2).unwrap();
        assert_eq!(basis.len(), 4);
        assert_eq!(basis[0].1.bidegree(), Some(b(4, 0)));
        assert_eq!(basis[3].1.bidegree(), Some(b(0, 2)));
        for (_, v) in &basis {
            assert!(is_harmonic(&b2, v).unwrap());
        }
        assert!(is_harmonic(&b2, &SuperPoly::one(2, Flavor::DualExterior, 1)).unwrap());
        assert!(!is_harmonic(&b2, &b2.invariants()[0]).unwrap());
        let s3 = ReflectionGroup::builtin("S3").unwrap();
        assert!(matches!(harmonics_det_basis(&s3), Err(Error::NotApplicable(_))));
    }

    #[test]
    fn schur_examples() {
        let x = |s: &str| parse_superpoly(s, 2, Flavor::DualExterior, 1).unwrap();
        assert_eq!(schur_alternant(&[], 2).unwrap(), x("x1 - x2"));
        assert_eq!(schur_alternant(&[1], 2).unwrap(), x("x1^2 - x2^2"));
        assert!(schur_alternant(&[1, 1, 1], 2).is_err());
        assert_eq!(schur_norm(&[1], 2), int(4));
        assert_eq!(partitions(4, 2), vec![vec![4], vec![3, 1], vec![2, 2]]);
    }

    #[test]
    fn compositions() {
        assert_eq!(weighted_compositions(&[2, 4], 4), vec![vec![0, 1], vec![2, 0]]);
        assert_eq!(exponent_vectors(2, 2), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
    }
}

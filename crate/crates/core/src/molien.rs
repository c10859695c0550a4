//! Truncated bigraded Molien series, product formulas and their transformations.

use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::groups::{Character, ReflectionGroup};
use crate::matrix::Matrix;
use crate::scalars::{Cyclotomic, Rational};

pub const DEFAULT_QMAX: u32 = 8;

/// Which of `V` or `V*` a symmetric or exterior factor is built on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Space {
    V,
    Vdual,
}

impl Space {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "V" => Ok(Space::V),
            "Vdual" | "V*" => Ok(Space::Vdual),
            other => Err(Error::Invalid(format!(
                "unknown space '{other}'; valid: V, Vdual"
            ))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Space::V => "V",
            Space::Vdual => "Vdual",
        }
    }

    pub fn other(self) -> Self {
        match self {
            Space::V => Space::Vdual,
            Space::Vdual => Space::V,
        }
    }
}

/// Truncated power series `sum c_ij q^i t^j` with `i <= qmax`, `j <= tmax`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BiSeries {
    qmax: u32,
    tmax: u32,
    coeffs: Vec<Vec<Rational>>,
}

impl BiSeries {
    pub fn zero(qmax: u32, tmax: u32) -> Self {
        BiSeries {
            qmax,
            tmax,
            coeffs: vec![vec![Rational::zero(); tmax as usize + 1]; qmax as usize + 1],
        }
    }

    pub fn one(qmax: u32, tmax: u32) -> Self {
        let mut s = Self::zero(qmax, tmax);
        s.coeffs[0][0] = Rational::one();
        s
    }

    /// Builds a series from `(i, j, c)` terms, dropping those beyond the truncation.
    pub fn from_terms(qmax: u32, tmax: u32, terms: impl IntoIterator<Item = (u32, u32, Rational)>) -> Self {
        let mut s = Self::zero(qmax, tmax);
        for (i, j, c) in terms {
            if i <= qmax && j <= tmax {
                s.coeffs[i as usize][j as usize] += c;
            }
        }
        s
    }

    pub fn qmax(&self) -> u32 {
        self.qmax
    }

    pub fn tmax(&self) -> u32 {
        self.tmax
    }

    pub fn get(&self, i: u32, j: u32) -> Rational {
        if i <= self.qmax && j <= self.tmax {
            self.coeffs[i as usize][j as usize].clone()
        } else {
            Rational::zero()
        }
    }

    pub fn set(&mut self, i: u32, j: u32, c: Rational) {
        self.coeffs[i as usize][j as usize] = c;
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.coeffs
    }

    /// Every coefficient is a nonnegative integer.
    pub fn is_multiplicity_table(&self) -> bool {
        self.coeffs
            .iter()
            .flatten()
            .all(|c| c.is_integer() && !c.is_negative())
    }

    pub fn truncate(&self, qmax: u32, tmax: u32) -> Self {
        let mut s = Self::zero(qmax, tmax);
        for i in 0..=qmax.min(self.qmax) {
            for j in 0..=tmax.min(self.tmax) {
                s.set(i, j, self.get(i, j));
            }
        }
        s
    }

    pub fn mul(&self, other: &BiSeries) -> BiSeries {
        let (qmax, tmax) = (self.qmax.min(other.qmax), self.tmax.min(other.tmax));
        let mut s = Self::zero(qmax, tmax);
        for i1 in 0..=qmax {
            for j1 in 0..=tmax {
                let a = self.get(i1, j1);
                if a.is_zero() {
                    continue;
                }
                for i2 in 0..=qmax - i1 {
                    for j2 in 0..=tmax - j1 {
                        let b = other.get(i2, j2);
                        if !b.is_zero() {
                            s.coeffs[(i1 + i2) as usize][(j1 + j2) as usize] += &a * &b;
                        }
                    }
                }
            }
        }
        s
    }

    /// `t^n F(1/t)`; requires `tmax >= n` and no terms above `t^n`.
    pub fn transform_t(&self, n: u32) -> Result<BiSeries> {
        if self.tmax < n {
            return Err(Error::Series(format!(
                "t-truncation {} is below n = {n}",
                self.tmax
            )));
        }
        for i in 0..=self.qmax {
            for j in n + 1..=self.tmax {
                if !self.get(i, j).is_zero() {
                    return Err(Error::Series(format!("term q^{i} t^{j} exceeds t-degree {n}")));
                }
            }
        }
        let mut s = Self::zero(self.qmax, n);
        for i in 0..=self.qmax {
            for j in 0..=n {
                s.set(i, j, self.get(i, n - j));
            }
        }
        Ok(s)
    }

    /// Sum of `c q^i t^j` over nonzero terms, ordered by `q` then `t`: `1 + t + 2*q^2`.
    pub fn to_poly_string(&self) -> String {
        let mut parts = Vec::new();
        for i in 0..=self.qmax {
            for j in 0..=self.tmax {
                let c = self.get(i, j);
                if c.is_zero() {
                    continue;
                }
                let mono = match (i, j) {
                    (0, 0) => String::new(),
                    (0, _) => pow_str("t", j),
                    (_, 0) => pow_str("q", i),
                    _ => format!("{}*{}", pow_str("q", i), pow_str("t", j)),
                };
                let mag = c.abs();
                let body = if mono.is_empty() {
                    mag.to_string()
                } else if mag.is_one() {
                    mono
                } else {
                    format!("{mag}*{mono}")
                };
                parts.push((c.is_negative(), body));
            }
        }
        if parts.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (neg, body)) in parts.into_iter().enumerate() {
            match (k, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            out.push_str(&body);
        }
        out
    }

    /// Aligned table with rows indexed by `q` and columns by `t`.
    pub fn to_text(&self) -> String {
        let cells: Vec<Vec<String>> = self
            .coeffs
            .iter()
            .map(|r| r.iter().map(|c| c.to_string()).collect())
            .collect();
        let width = cells
            .iter()
            .flatten()
            .map(String::len)
            .chain([4])
            .max()
            .unwrap_or(4);
        let mut out = format!("{:>4}", "q\\t");
        for j in 0..=self.tmax {
            out.push_str(&format!(" {:>width$}", j));
        }
        out.push('\n');
        for (i, row) in cells.iter().enumerate() {
            out.push_str(&format!("{i:>4}"));
            for c in row {
                out.push_str(&format!(" {c:>width$}"));
            }
            out.push('\n');
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("q");
        for j in 0..=self.tmax {
            out.push_str(&format!(",t{j}"));
        }
        out.push('\n');
        for (i, row) in self.coeffs.iter().enumerate() {
            out.push_str(&i.to_string());
            for c in row {
                out.push_str(&format!(",{c}"));
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .coeffs
            .iter()
            .map(|r| Value::Array(r.iter().map(rational_json).collect()))
            .collect();
        json!({ "qmax": self.qmax, "tmax": self.tmax, "coeffs": rows })
    }
}

fn pow_str(v: &str, e: u32) -> String {
    if e == 1 {
        v.to_string()
    } else {
        format!("{v}^{e}")
    }
}

/// Integers as JSON numbers when they fit, everything else as strings.
pub fn rational_json(c: &Rational) -> Value {
    if c.is_integer() {
        if let Ok(v) = i64::try_from(c.to_integer()) {
            return json!(v);
        }
    }
    json!(c.to_string())
}

impl fmt::Debug for BiSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiSeries[q<={}, t<={}]({})", self.qmax, self.tmax, self.to_poly_string())
    }
}

impl fmt::Display for BiSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_poly_string())
    }
}

/// Coefficients of `det(1 - sigma q)`, constant term first.
pub fn char_poly_q(sigma: &Matrix) -> Vec<Cyclotomic> {
    // Faddeev-LeVerrier for det(lambda - A) = sum c_k lambda^k; then det(1 - qA) = sum c_k q^(n-k).
    let n = sigma.dim();
    let m = sigma.conductor();
    let mut c = vec![Cyclotomic::zero(m); n + 1];
    c[n] = Cyclotomic::one(m);
    let mut mk = Matrix::zero(n, m);
    for k in 1..=n {
        let mut next = sigma.mul(&mk).expect("square");
        for i in 0..n {
            let v = next.get(i, i) + &c[n - k + 1];
            next.set(i, i, v);
        }
        let tr = sigma.mul(&next).expect("square").trace();
        c[n - k] = -tr.scale(&Rational::new(1.into(), (k as i64).into()));
        mk = next;
    }
    c.into_iter().rev().collect()
}

/// Coefficients of `det(1 + sigma t)`.
pub fn char_poly_t(sigma: &Matrix) -> Vec<Cyclotomic> {
    char_poly_q(sigma)
        .into_iter()
        .enumerate()
        .map(|(j, c)| if j % 2 == 1 { -c } else { c })
        .collect()
}

/// `1 / p(q)` truncated at `qmax`; `p(0) = 1`.
fn reciprocal(p: &[Cyclotomic], qmax: u32, m: u32) -> Vec<Cyclotomic> {
    debug_assert!(p[0].is_one());
    let len = qmax as usize + 1;
    let mut r = vec![Cyclotomic::zero(m); len];
    r[0] = Cyclotomic::one(m);
    for k in 1..len {
        let mut acc = Cyclotomic::zero(m);
        for i in 1..p.len().min(k + 1) {
            if !p[i].is_zero() && !r[k - i].is_zero() {
                acc -= &(&p[i] * &r[k - i]);
            }
        }
        r[k] = acc;
    }
    r
}

/// `(1/|G|) sum_sigma conj(chi(sigma)) det(1 + t sigma_ext) / det(1 - q sigma_sym)`.
///
/// `sym = V` is the polynomial ring `k[V]` on which `sigma` acts through `sigma^-1`;
/// `ext = V` is `Lambda(V)`.
pub fn molien_series(
    group: &ReflectionGroup,
    chi: Character,
    sym: Space,
    ext: Space,
    qmax: u32,
    tmax: u32,
) -> Result<BiSeries> {
    let m = group.conductor();
    let mut classes: HashMap<(Cyclotomic, Vec<Cyclotomic>, Vec<Cyclotomic>), u64> = HashMap::new();
    for g in group.elements() {
        let weight = g.character(chi).inv()?;
        let denom = match sym {
            Space::V => char_poly_q(&g.inverse),
            Space::Vdual => char_poly_q(&g.matrix),
        };
        let numer = match ext {
            Space::V => char_poly_t(&g.matrix),
            Space::Vdual => char_poly_t(&g.inverse),
        };
        *classes.entry((weight, denom, numer)).or_default() += 1;
    }
    let keys: Vec<_> = classes.into_iter().collect();
    let total = keys
        .par_iter()
        .map(|((weight, denom, numer), count)| {
            let r = reciprocal(denom, qmax, m);
            let w = weight.scale(&Rational::from_integer((*count).into()));
            let mut table = vec![vec![Cyclotomic::zero(m); tmax as usize + 1]; qmax as usize + 1];
            for (i, ri) in r.iter().enumerate() {
                if ri.is_zero() {
                    continue;
                }
                let wi = &w * ri;
                for (j, nj) in numer.iter().enumerate().take(tmax as usize + 1) {
                    if !nj.is_zero() {
                        table[i][j] += &(&wi * nj);
                    }
                }
            }
            table
        })
        .reduce(
            || vec![vec![Cyclotomic::zero(m); tmax as usize + 1]; qmax as usize + 1],
            |mut a, b| {
                for (ra, rb) in a.iter_mut().zip(b) {
                    for (x, y) in ra.iter_mut().zip(rb) {
                        *x += &y;
                    }
                }
                a
            },
        );
    let order = Rational::from_integer((group.order() as i64).into());
    let mut out = BiSeries::zero(qmax, tmax);
    for (i, row) in total.iter().enumerate() {
        for (j, c) in row.iter().enumerate() {
            let r = c.as_rational().map_err(|_| {
                Error::NotRational(format!("Molien coefficient at ({i},{j}) is {c}"))
            })?;
            out.set(i as u32, j as u32, r / &order);
        }
    }
    Ok(out)
}

/// Degrees, exponents `e_i = d_i - 1`, coexponents and `delta = sum e - sum e*`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExponentData {
    pub degrees: Vec<u32>,
    pub exponents: Vec<u32>,
    pub coexponents: Vec<u32>,
    pub delta: i64,
}

impl ExponentData {
    /// Exponent data with explicit coexponents.
    pub fn new(degrees: Vec<u32>, coexponents: Vec<u32>) -> Self {
        let exponents: Vec<u32> = degrees.iter().map(|d| d - 1).collect();
        let mut coexponents = coexponents;
        coexponents.sort_unstable();
        let delta = exponents.iter().map(|&e| e as i64).sum::<i64>()
            - coexponents.iter().map(|&e| e as i64).sum::<i64>();
        ExponentData {
            degrees,
            exponents,
            coexponents,
            delta,
        }
    }

    /// For groups with `V = V*` the coexponents coincide with the exponents.
    pub fn real(degrees: Vec<u32>) -> Self {
        let e = degrees.iter().map(|d| d - 1).collect();
        Self::new(degrees, e)
    }

    pub fn n(&self) -> usize {
        self.degrees.len()
    }
}

/// Reads `e_i*` off `prod(1 - q^d_i) * Hilb((k[V] (x) V)^G; q)`.
pub fn coexponents(group: &ReflectionGroup) -> Result<ExponentData> {
    let m = group.conductor();
    let degrees = group.degrees().to_vec();
    let qmax: u32 = degrees.iter().sum();
    let mut acc = vec![Cyclotomic::zero(m); qmax as usize + 1];
    for g in group.elements() {
        let r = reciprocal(&char_poly_q(&g.inverse), qmax, m);
        let tr = g.matrix.trace();
        for (a, ri) in acc.iter_mut().zip(&r) {
            *a += &(&tr * ri);
        }
    }
    let order = Rational::from_integer((group.order() as i64).into());
    let mut series: Vec<Rational> = acc
        .iter()
        .map(|c| c.as_rational().map(|r| r / &order))
        .collect::<Result<_>>()?;
    for &d in &degrees {
        for k in (d as usize..series.len()).rev() {
            let v = series[k - d as usize].clone();
            series[k] -= v;
        }
    }
    let mut co = Vec::new();
    for (k, c) in series.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if !c.is_integer() || c.is_negative() {
            return Err(Error::Series(format!(
                "coexponent polynomial has coefficient {c} at q^{k}"
            )));
        }
        let times = c.to_integer().try_into().unwrap_or(usize::MAX);
        co.extend(std::iter::repeat_n(k as u32, times));
    }
    if co.len() != degrees.len() {
        return Err(Error::Series(format!(
            "coexponent polynomial has {} terms, expected {}",
            co.len(),
            degrees.len()
        )));
    }
    Ok(ExponentData::new(degrees, co))
}

/// A factor `q^a + t` or `1 + q^a t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Factor {
    QPlusT(u32),
    OnePlusQT(u32),
}

impl Factor {
    fn swapped(self) -> Factor {
        match self {
            Factor::QPlusT(a) => Factor::OnePlusQT(a),
            Factor::OnePlusQT(a) => Factor::QPlusT(a),
        }
    }

    fn exponent(self) -> u32 {
        match self {
            Factor::QPlusT(a) | Factor::OnePlusQT(a) => a,
        }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Factor::QPlusT(0) => write!(f, "(1 + t)"),
            Factor::QPlusT(a) => write!(f, "({} + t)", pow_str("q", a)),
            Factor::OnePlusQT(0) => write!(f, "(1 + t)"),
            Factor::OnePlusQT(a) => write!(f, "(1 + {}*t)", pow_str("q", a)),
        }
    }
}

/// `q^shift prod(factors) / prod(1 - q^d)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ProductFormula {
    pub qshift: u32,
    pub factors: Vec<Factor>,
    pub denominators: Vec<u32>,
}

impl ProductFormula {
    pub fn new(qshift: u32, mut factors: Vec<Factor>, mut denominators: Vec<u32>) -> Self {
        factors.sort();
        denominators.sort();
        ProductFormula {
            qshift,
            factors,
            denominators,
        }
    }

    pub fn expand(&self, qmax: u32, tmax: u32) -> BiSeries {
        let mut s = BiSeries::from_terms(qmax, tmax, [(self.qshift, 0, Rational::one())]);
        for f in &self.factors {
            let terms = match *f {
                Factor::QPlusT(a) => [(a, 0), (0, 1)],
                Factor::OnePlusQT(a) => [(0, 0), (a, 1)],
            };
            let p = BiSeries::from_terms(qmax, tmax, terms.map(|(i, j)| (i, j, Rational::one())));
            s = s.mul(&p);
        }
        for &d in &self.denominators {
            // Multiply by 1/(1 - q^d) with a running sum along q.
            for i in d..=qmax {
                for j in 0..=tmax {
                    let v = s.get(i - d, j);
                    s.coeffs[i as usize][j as usize] += v;
                }
            }
        }
        s
    }

    /// `t^n F(1/t)` with `n` the number of factors.
    pub fn transform_t(&self) -> ProductFormula {
        ProductFormula::new(
            self.qshift,
            self.factors.iter().map(|f| f.swapped()).collect(),
            self.denominators.clone(),
        )
    }

    /// `(-q)^-n F(1/q)` computed on the closed form.
    pub fn transform_q(&self) -> Result<ProductFormula> {
        let total: i64 = self.denominators.iter().map(|&d| d as i64 - 1).sum::<i64>()
            - self.qshift as i64
            - self.factors.iter().map(|f| f.exponent() as i64).sum::<i64>();
        if total < 0 {
            return Err(Error::Series(format!(
                "q-transform of {self} has a negative power of q"
            )));
        }
        Ok(ProductFormula::new(
            total as u32,
            self.factors.iter().map(|f| f.swapped()).collect(),
            self.denominators.clone(),
        ))
    }
}

impl fmt::Display for ProductFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.qshift > 0 {
            parts.push(pow_str("q", self.qshift));
        }
        parts.extend(self.factors.iter().map(|x| x.to_string()));
        let numer = if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("")
        };
        if self.denominators.is_empty() {
            f.write_str(&numer)
        } else {
            let den: Vec<String> = self
                .denominators
                .iter()
                .map(|&d| format!("(1 - {})", pow_str("q", d)))
                .collect();
            write!(f, "{numer} / {}", den.join(""))
        }
    }
}

/// One of the twelve positions of the product-formula table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TableCell {
    pub sym: Space,
    pub ext: Space,
    pub chi: Character,
}

impl TableCell {
    pub fn new(sym: Space, ext: Space, chi: Character) -> Self {
        TableCell { sym, ext, chi }
    }

    /// Rows `k[V](x)L(V)`, `k[V](x)L(V*)`, `k[V*](x)L(V)`, `k[V*](x)L(V*)`; columns `det`,
    /// trivial, `det^-1`.
    pub fn all() -> Vec<TableCell> {
        let mut out = Vec::new();
        for sym in [Space::V, Space::Vdual] {
            for ext in [Space::V, Space::Vdual] {
                for chi in Character::ALL {
                    out.push(TableCell::new(sym, ext, chi));
                }
            }
        }
        out
    }

    pub fn row(self) -> usize {
        match (self.sym, self.ext) {
            (Space::V, Space::V) => 0,
            (Space::V, Space::Vdual) => 1,
            (Space::Vdual, Space::V) => 2,
            (Space::Vdual, Space::Vdual) => 3,
        }
    }

    pub fn col(self) -> usize {
        match self.chi {
            Character::Det => 0,
            Character::Trivial => 1,
            Character::DetInv => 2,
        }
    }

    fn at(row: usize, col: usize) -> Option<TableCell> {
        let (sym, ext) = match row {
            0 => (Space::V, Space::V),
            1 => (Space::V, Space::Vdual),
            2 => (Space::Vdual, Space::V),
            3 => (Space::Vdual, Space::Vdual),
            _ => return None,
        };
        let chi = *Character::ALL.get(col)?;
        Some(TableCell::new(sym, ext, chi))
    }

    /// Image under `F(t) -> t^n F(1/t)`: one row down from rows 1 and 3, one column right.
    pub fn t_image(self) -> Option<TableCell> {
        match self.row() {
            0 | 2 => TableCell::at(self.row() + 1, self.col() + 1),
            _ => None,
        }
    }

    /// Image under `F(q) -> (-q)^-n F(1/q)`: two rows down, one column right.
    pub fn q_image(self) -> Option<TableCell> {
        TableCell::at(self.row() + 2, self.col() + 1)
    }

    /// Image under `sigma -> sigma^-1`: both spaces dualized, character inverted.
    pub fn reflect(self) -> TableCell {
        let chi = match self.chi {
            Character::Det => Character::DetInv,
            Character::DetInv => Character::Det,
            Character::Trivial => Character::Trivial,
        };
        TableCell::new(self.sym.other(), self.ext.other(), chi)
    }

    pub fn label(self) -> String {
        let sym = match self.sym {
            Space::V => "k[V]",
            Space::Vdual => "k[V*]",
        };
        let ext = match self.ext {
            Space::V => "L(V)",
            Space::Vdual => "L(V*)",
        };
        format!("{sym}(x){ext}:{}", self.chi)
    }

    /// The closed form, or `None` for the two cells without one.
    pub fn formula(self, data: &ExponentData) -> Result<Option<ProductFormula>> {
        use Character::*;
        use Space::*;
        let e = || data.exponents.clone();
        let co = || data.coexponents.clone();
        let delta = || -> Result<u32> {
            u32::try_from(data.delta)
                .map_err(|_| Error::Series(format!("negative delta {}", data.delta)))
        };
        let qpt = |v: Vec<u32>| v.into_iter().map(Factor::QPlusT).collect::<Vec<_>>();
        let opq = |v: Vec<u32>| v.into_iter().map(Factor::OnePlusQT).collect::<Vec<_>>();
        let (shift, factors) = match (self.sym, self.ext, self.chi) {
            (V, V, Det) => (0, qpt(e())),
            (V, V, Trivial) => (0, opq(co())),
            (V, V, DetInv) => return Ok(None),
            (V, Vdual, Det) => (delta()?, qpt(co())),
            (V, Vdual, Trivial) => (0, opq(e())),
            (V, Vdual, DetInv) => (0, qpt(co())),
            (Vdual, V, Det) => (0, qpt(co())),
            (Vdual, V, Trivial) => (0, opq(e())),
            (Vdual, V, DetInv) => (delta()?, qpt(co())),
            (Vdual, Vdual, Det) => return Ok(None),
            (Vdual, Vdual, Trivial) => (0, opq(co())),
            (Vdual, Vdual, DetInv) => (0, qpt(e())),
        };
        Ok(Some(ProductFormula::new(shift, factors, data.degrees.clone())))
    }
}

impl fmt::Display for TableCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Named closed forms that can be expanded against computed series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ProductKind {
    Table(TableCell),
    /// `prod (q^e_i + t)`, the det-part of the super-coinvariant algebra.
    CoinvariantDet,
    /// `prod_{i=1}^{n-1} (t + q^i)`.
    Wallach(u32),
}

impl ProductKind {
    pub fn formula(self, data: &ExponentData) -> Result<ProductFormula> {
        match self {
            ProductKind::Table(cell) => cell.formula(data)?.ok_or_else(|| {
                Error::NotApplicable(format!("no product formula for {cell}"))
            }),
            ProductKind::CoinvariantDet => Ok(ProductFormula::new(
                0,
                data.exponents.iter().map(|&e| Factor::QPlusT(e)).collect(),
                vec![],
            )),
            ProductKind::Wallach(n) => Ok(ProductFormula::new(
                0,
                (1..n).map(Factor::QPlusT).collect(),
                vec![],
            )),
        }
    }
}

pub fn expand_product_formula(
    kind: ProductKind,
    data: &ExponentData,
    qmax: u32,
    tmax: u32,
) -> Result<BiSeries> {
    Ok(kind.formula(data)?.expand(qmax, tmax))
}

/// The raw series for a table cell.
pub fn cell_series(group: &ReflectionGroup, cell: TableCell, qmax: u32, tmax: u32) -> Result<BiSeries> {
    molien_series(group, cell.chi, cell.sym, cell.ext, qmax, tmax)
}

pub fn series_transform_t(f: &BiSeries, n: u32) -> Result<BiSeries> {
    f.transform_t(n)
}

pub fn series_transform_q(f: &ProductFormula) -> Result<ProductFormula> {
    f.transform_q()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::ReflectionGroup;
    use crate::scalars::int;

    fn poly(cs: &[Cyclotomic]) -> Vec<String> {
        cs.iter().map(|c| c.to_string()).collect()
    }

    #[test]
    fn char_poly_examples() {
        assert_eq!(poly(&char_poly_q(&Matrix::identity(2, 1))), ["1", "-2", "1"]);
        let t = Matrix::from_ints(1, &[&[0, 1], &[1, 0]]);
        assert_eq!(poly(&char_poly_q(&t)), ["1", "0", "-1"]);
        let z = Cyclotomic::zeta(3);
        let d = Matrix::from_rows(vec![
            vec![z.clone(), Cyclotomic::zero(3)],
            vec![Cyclotomic::zero(3), &z * &z],
        ])
        .unwrap();
        // (1 - zq)(1 - z^2 q) = 1 + q + q^2
        assert_eq!(poly(&char_poly_q(&d)), ["1", "1", "1"]);
    }

    #[test]
    fn transform_t_is_involution() {
        let f = ProductFormula::new(0, vec![Factor::OnePlusQT(1), Factor::OnePlusQT(3)], vec![2, 4])
            .expand(6, 2);
        let g = f.transform_t(2).unwrap();
        assert_eq!(g.transform_t(2).unwrap(), f);
        let one = BiSeries::one(3, 0);
        assert_eq!(one.transform_t(0).unwrap(), one);
        assert!(BiSeries::one(3, 1).transform_t(2).is_err());
    }

    #[test]
    fn wallach_three() {
        let data = ExponentData::real(vec![2, 3]);
        let s = expand_product_formula(ProductKind::Wallach(3), &data, 4, 2).unwrap();
        assert_eq!(s.to_poly_string(), "t^2 + q*t + q^2*t + q^3");
        let empty = ExponentData::real(vec![]);
        assert_eq!(
            expand_product_formula(ProductKind::CoinvariantDet, &empty, 3, 0).unwrap(),
            BiSeries::one(3, 0)
        );
    }

    #[test]
    fn s2_invariants() {
        let g = ReflectionGroup::builtin("S2").unwrap();
        let s = molien_series(&g, Character::Trivial, Space::V, Space::Vdual, 6, 2).unwrap();
        let expected = ProductFormula::new(0, vec![Factor::OnePlusQT(0), Factor::OnePlusQT(1)], vec![1, 2])
            .expand(6, 2);
        assert_eq!(s, expected);
        assert_eq!(s.get(0, 0), int(1));
    }

    #[test]
    fn coexponent_examples() {
        let b2 = ReflectionGroup::builtin("B2").unwrap();
        assert_eq!(coexponents(&b2).unwrap().coexponents, [1, 3]);
        let s2 = ReflectionGroup::builtin("S2").unwrap();
        assert_eq!(coexponents(&s2).unwrap().coexponents, [0, 1]);
        let c3 = ReflectionGroup::builtin("G-3-1-1").unwrap();
        let data = coexponents(&c3).unwrap();
        assert_eq!((data.coexponents.clone(), data.delta), (vec![1], 1));
    }

    #[test]
    fn table_navigation() {
        let c = TableCell::new(Space::V, Space::V, Character::Det);
        assert_eq!(c.t_image(), Some(TableCell::new(Space::V, Space::Vdual, Character::Trivial)));
        assert_eq!(c.q_image(), Some(TableCell::new(Space::Vdual, Space::V, Character::Trivial)));
        assert_eq!(c.reflect(), TableCell::new(Space::Vdual, Space::Vdual, Character::DetInv));
        let filled = TableCell::all()
            .into_iter()
            .filter(|c| c.formula(&ExponentData::real(vec![2])).unwrap().is_some())
            .count();
        assert_eq!(filled, 10);
    }

    #[test]
    fn formula_transforms_follow_the_table() {
        let data = ExponentData::new(vec![3, 6], vec![1, 4]);
        for cell in TableCell::all() {
            let Some(f) = cell.formula(&data).unwrap() else { continue };
            if let Some(target) = cell.t_image() {
                assert_eq!(Some(f.transform_t()), target.formula(&data).unwrap(), "{cell}");
            }
            if let Some(target) = cell.q_image() {
                assert_eq!(Some(f.transform_q().unwrap()), target.formula(&data).unwrap(), "{cell}");
            }
        }
    }

    #[test]
    fn text_forms() {
        let s = BiSeries::from_terms(1, 1, [(0, 0, int(1)), (1, 1, int(2))]);
        assert_eq!(s.to_csv(), "q,t0,t1\n0,1,0\n1,0,2\n");
        assert_eq!(s.to_json()["coeffs"], json!([[1, 0], [0, 2]]));
        assert!(s.to_text().starts_with(" q\\t"));
    }
}

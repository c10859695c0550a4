//! Named theorem checks producing structured reports.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::time::{Duration, Instant};

use num_traits::{Signed, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use crate::actions::{dot, hermitian_form, laplacian, odot, polarization};
use crate::error::{Error, Result};
use crate::groups::{act, Character, ReflectionGroup};
use crate::isotypic::{
    alt_upstairs_vectors, harmonics_det_basis, is_harmonic, partitions, projector_multiplicity,
    quotient_series, schur_alternant, schur_norm, BidegreeSlice,
};
use crate::linalg::rank_of;
use crate::molien::{
    cell_series, coexponents, expand_product_formula, molien_series, BiSeries, ExponentData, Factor,
    ProductFormula, ProductKind, Space, TableCell, DEFAULT_QMAX,
};
use crate::random::{SuperRng, MAX_XDEG};
use crate::scalars::{Cyclotomic, Rational};
use crate::supergebra::{inv_count, subset_degree, Bidegree, Flavor, SuperMonomial, SuperPoly};

pub const THEOREMS: &[&str] = &[
    "inv-upstairs-hilb",
    "alt-hilb",
    "alt-upstairs-basis",
    "alt-harmonics",
    "alt-harmonics-hilb",
    "wallach",
    "table1-orbits",
    "schur-orthogonality",
    "property-suite",
    "coexponents",
    "vandermonde-sanity",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::NotApplicable => "not-applicable",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EvidenceRow {
    pub item: String,
    pub expected: String,
    pub computed: String,
    pub ok: bool,
}

#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub theorem: String,
    pub group: String,
    pub qmax: u32,
    pub tmax: u32,
    pub seed: Option<u64>,
    pub status: Status,
    pub reason: Option<String>,
    pub notes: Vec<String>,
    pub evidence: Vec<EvidenceRow>,
    pub series: Vec<(String, BiSeries)>,
    pub elapsed: Duration,
}

impl VerificationReport {
    fn new(theorem: &str, group: &ReflectionGroup, qmax: u32, tmax: u32) -> Self {
        VerificationReport {
            theorem: theorem.to_string(),
            group: group.label().to_string(),
            qmax,
            tmax,
            seed: None,
            status: Status::Pass,
            reason: None,
            notes: Vec::new(),
            evidence: Vec::new(),
            series: Vec::new(),
            elapsed: Duration::ZERO,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    fn row(&mut self, item: impl Into<String>, expected: impl ToString, computed: impl ToString) {
        let (expected, computed) = (expected.to_string(), computed.to_string());
        let ok = expected == computed;
        self.evidence.push(EvidenceRow {
            item: item.into(),
            expected,
            computed,
            ok,
        });
    }

    fn check(&mut self, item: impl Into<String>, expected: impl ToString, computed: impl ToString, ok: bool) {
        self.evidence.push(EvidenceRow {
            item: item.into(),
            expected: expected.to_string(),
            computed: computed.to_string(),
            ok,
        });
    }

    /// One row per bidegree where either series is nonzero.
    fn compare_series(&mut self, prefix: &str, expected: &BiSeries, computed: &BiSeries) {
        for i in 0..=expected.qmax().max(computed.qmax()) {
            for j in 0..=expected.tmax().max(computed.tmax()) {
                let (e, c) = (expected.get(i, j), computed.get(i, j));
                if e.is_zero() && c.is_zero() {
                    continue;
                }
                self.row(format!("{prefix}({i},{j})"), &e, &c);
            }
        }
    }

    fn finish(mut self) -> Self {
        if self.status != Status::NotApplicable {
            self.status = if self.evidence.iter().all(|r| r.ok) {
                Status::Pass
            } else {
                Status::Fail
            };
        }
        self
    }

    pub fn to_json(&self, timing: bool) -> Value {
        let mut v = json!({
            "schema": 1,
            "theorem": self.theorem,
            "group": self.group,
            "qmax": self.qmax,
            "tmax": self.tmax,
            "status": self.status.name(),
            "evidence": self.evidence,
            "series": self.series.iter().map(|(name, s)| json!({
                "name": name,
                "polynomial": s.to_poly_string(),
                "table": s.to_json(),
            })).collect::<Vec<_>>(),
            "notes": self.notes,
        });
        if let Some(seed) = self.seed {
            v["seed"] = json!(seed);
        }
        if let Some(reason) = &self.reason {
            v["reason"] = json!(reason);
        }
        if timing {
            v["elapsed_ms"] = json!(self.elapsed.as_millis() as u64);
        }
        v
    }

    pub fn to_text(&self, timing: bool) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "theorem:    {}", self.theorem);
        let _ = writeln!(out, "group:      {}", self.group);
        let _ = writeln!(out, "truncation: qmax={} tmax={}", self.qmax, self.tmax);
        if let Some(seed) = self.seed {
            let _ = writeln!(out, "seed:       {seed}");
        }
        let _ = writeln!(out, "status:     {}", self.status.name());
        if let Some(reason) = &self.reason {
            let _ = writeln!(out, "reason:     {reason}");
        }
        for note in &self.notes {
            let _ = writeln!(out, "note:       {note}");
        }
        for (name, s) in &self.series {
            let _ = writeln!(out, "\n{name} = {}", s.to_poly_string());
            out.push_str(&s.to_text());
        }
        if !self.evidence.is_empty() {
            let w = |f: fn(&EvidenceRow) -> &str, h: &str| {
                self.evidence.iter().map(|r| f(r).len()).chain([h.len()]).max().unwrap_or(0)
            };
            let (wi, we, wc) = (
                w(|r| &r.item, "item"),
                w(|r| &r.expected, "expected"),
                w(|r| &r.computed, "computed"),
            );
            let _ = writeln!(out, "\n{:<wi$}  {:<we$}  {:<wc$}  ok", "item", "expected", "computed");
            for r in &self.evidence {
                let _ = writeln!(
                    out,
                    "{:<wi$}  {:<we$}  {:<wc$}  {}",
                    r.item,
                    r.expected,
                    r.computed,
                    if r.ok { "yes" } else { "NO" }
                );
            }
        }
        if timing {
            let _ = writeln!(out, "\nelapsed: {} ms", self.elapsed.as_millis());
        }
        out
    }

    /// The attached series as CSV blocks, each headed by its name.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for (name, s) in &self.series {
            let _ = writeln!(out, "# {name}");
            out.push_str(&s.to_csv());
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyOptions {
    pub qmax: u32,
    /// Defaults to the rank of the group.
    pub tmax: Option<u32>,
    pub seed: u64,
    pub iterations: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            qmax: DEFAULT_QMAX,
            tmax: None,
            seed: 1,
            iterations: 100,
        }
    }
}

pub fn exponent_data_real(group: &ReflectionGroup) -> ExponentData {
    ExponentData::real(group.degrees().to_vec())
}

/// Runs the named check. Unknown ids are errors; unmet hypotheses give `NotApplicable`.
pub fn verify(theorem: &str, group: &ReflectionGroup, opts: &VerifyOptions) -> Result<VerificationReport> {
    if !THEOREMS.contains(&theorem) {
        return Err(Error::UnknownTheorem {
            name: theorem.to_string(),
            valid: THEOREMS.join(", "),
        });
    }
    let start = Instant::now();
    let n = group.n() as u32;
    let tmax = opts.tmax.unwrap_or(n);
    let mut report = VerificationReport::new(theorem, group, opts.qmax, tmax);
    let outcome = match theorem {
        "inv-upstairs-hilb" => solomon(&mut report, group),
        "alt-hilb" => alt_hilb(&mut report, group),
        "alt-upstairs-basis" => alt_upstairs(&mut report, group),
        "alt-harmonics" => alt_harmonics(&mut report, group),
        "alt-harmonics-hilb" => alt_harmonics_hilb(&mut report, group),
        "wallach" => wallach(&mut report, group),
        "table1-orbits" => table_orbits(&mut report, group),
        "schur-orthogonality" => schur(&mut report, group),
        "property-suite" => {
            let r = property_suite(group, opts.seed, opts.iterations)?;
            report.seed = r.seed;
            report.qmax = r.qmax;
            report.evidence = r.evidence;
            report.notes = r.notes;
            Ok(())
        }
        "coexponents" => coexponent_check(&mut report, group),
        "vandermonde-sanity" => vandermonde_sanity(&mut report, group),
        _ => unreachable!(),
    };
    match outcome {
        Ok(()) => {}
        Err(Error::NotApplicable(reason)) => {
            report.status = Status::NotApplicable;
            report.reason = Some(reason);
        }
        Err(e) => return Err(e),
    }
    let mut report = report.finish();
    report.elapsed = start.elapsed();
    Ok(report)
}

fn multiplicity_row(report: &mut VerificationReport, name: &str, s: &BiSeries) {
    report.check(
        format!("{name} nonnegative integers"),
        "yes",
        if s.is_multiplicity_table() { "yes" } else { "no" },
        s.is_multiplicity_table(),
    );
}

fn solomon(report: &mut VerificationReport, group: &ReflectionGroup) -> Result<()> {
    let (qmax, tmax) = (report.qmax, report.tmax);
    let computed = molien_series(group, Character::Trivial, Space::V, Space::Vdual, qmax, tmax)?;
    let formula = ProductFormula::new(
        0,
        group.degrees().iter().map(|d| Factor::OnePlusQT(d - 1)).collect(),
        group.degrees().to_vec(),
    );
    report.notes.push(format!("product formula: {formula}"));
    let expected = formula.expand(qmax, tmax);
    multiplicity_row(report, "molien", &computed);
    report.compare_series("", &expected, &computed);
    report.series.push(("molien(trivial, k[V](x)L(V*))".into(), computed));
    Ok(())
}

fn alt_hilb(report: &mut VerificationReport, group: &ReflectionGroup) -> Result<()> {
    let (qmax, tmax) = (report.qmax, report.tmax);
    let computed = molien_series(group, Character::Det, Space::V, Space::V, qmax, tmax)?;
    let formula = ProductFormula::new(
        0,
        group.degrees().iter().map(|d| Factor::QPlusT(d - 1)).collect(),
        group.degrees().to_vec(),
    );
    report.notes.push(format!("product formula: {formula}"));
    let expected = formula.expand(qmax, tmax);
    multiplicity_row(report, "molien", &computed);
    report.compare_series("", &expected, &computed);
    report.series.push(("molien(det, k[V](x)L(V))".into(), computed));
    Ok(())
}

fn require_unitary(group: &ReflectionGroup) -> Result<()> {
    if group.is_unitary() {
        Ok(())
    } else {
        Err(Error::NotApplicable(format!(
            "{} is not unitary in its working basis",
            group.label()
        )))
    }
}

fn alt_upstairs(report: &mut VerificationReport, group: &ReflectionGroup) -> Result<()> {
    require_unitary(group)?;
    let (qmax, tmax) = (report.qmax, report.tmax);
    let series = molien_series(group, Character::Det, Space::V, Space::V, qmax, tmax)?;
    let n = group.n();
    let m = group.conductor();
    let bidegrees: Vec<Bidegree> = (0..=qmax)
        .flat_map(|i| (0..=tmax).map(move |j| Bidegree::new(i, j)))
        .collect();
    use rayon::prelude::*;
    let rows = bidegrees
        .par_iter()
        .map(|&b| -> Result<(Bidegree, usize, usize, usize)> {
            let proj = projector_multiplicity(group, Character::Det, b, Flavor::PrimalExterior)?;
            let vectors = alt_upstairs_vectors(group, b)?;
            let slice = BidegreeSlice::new(n, b, Flavor::PrimalExterior);
            let coords = vectors
                .iter()
                .map(|v| slice.coordinates(v))
                .collect::<Result<Vec<_>>>()?;
            let rank = rank_of(coords, slice.dim(), m);
            Ok((b, proj, rank, vectors.len()))
        })
        .collect::<Result<Vec<_>>>()?;
    for (b, proj, rank, count) in rows {
        let coeff = series.get(b.qdeg, b.tdeg);
        if coeff.is_zero() && proj == 0 && count == 0 {
            continue;
        }
        let want = coeff.to_string();
        let ok = [proj, rank, count].iter().all(|v| v.to_string() == want);
        report.check(
            b.to_string(),
            format!("molien={want}"),
            format!("projector={proj} rank={rank} count={count}"),
            ok,
        );
    }
    report.series.push(("molien(det, k[V](x)L(V))".into(), series));
    Ok(())
}

fn alt_harmonics(report: &mut VerificationReport, group: &ReflectionGroup) -> Result<()> {
    let basis = harmonics_det_basis(group)?;
    let n = group.n();
    let e: Vec<u32> = group.degrees().iter().map(|d| d - 1).collect();
    let total: u32 = e.iter().sum();
    let mut by_bidegree: BTreeMap<Bidegree, Vec<&SuperPoly>> = BTreeMap::new();
    let mut bidegree_counts: Vec<(u32, u32, Rational)> = Vec::new();
    for (subset, v) in &basis {
        let lowered: u32 = crate::supergebra::subset_indices(*subset).iter().map(|&k| e[k - 1]).sum();
        let expected = Bidegree::new(total - lowered, subset.count_ones());
        let computed = v.bidegree().map(|b| b.to_string()).unwrap_or_else(|| "inhomogeneous".into());
        let label = format!("df_{:?}", crate::supergebra::subset_indices(*subset));
        report.row(format!("{label} bidegree"), expected, computed);
        let harmonic = is_harmonic(group, v)?;
        report.row(format!("{label} harmonic"), true, harmonic);
        if let Some(b) = v.bidegree() {
            by_bidegree.entry(b).or_default().push(v);
            bidegree_counts.push((b.qdeg, b.tdeg, Rational::from_integer(1.into())));
        }
    }
    let mut rank = 0;
    for (b, vs) in &by_bidegree {
        let slice = BidegreeSlice::new(n, *b, Flavor::DualExterior);
        let coords = vs.iter().map(|v| slice.coordinates(v)).collect::<Result<Vec<_>>>()?;
        rank += rank_of(coords, slice.dim(), group.conductor());
    }
    report.row("rank", 1usize << n, rank);
    let data = exponent_data_real(group);
    let expected = expand_product_formula(ProductKind::CoinvariantDet, &data, total, n as u32)?;
    let computed = BiSeries::from_terms(total, n as u32, bidegree_counts);
    report.compare_series("bidegrees", &expected, &computed);
    report.qmax = total;
    report.tmax = n as u32;
    report.series.push(("bidegrees of df_I (.) Delta".into(), computed));
    Ok(())
}

fn alt_harmonics_hilb(report: &mut VerificationReport, group: &ReflectionGroup) -> Result<()> {
    crate::isotypic::harmonics_hypotheses(group)?;
    let n = group.n() as u32;
    let data = exponent_data_real(group);
    let total: u32 = data.exponents.iter().sum();
    let qmax = report.qmax.max(total);
    if qmax > report.qmax {
        report.notes.push(format!("qmax raised to {qmax} to cover the top degree"));
    }
    report.qmax = qmax;
    report.tmax = n;
    let formula = ProductKind::CoinvariantDet.formula(&data)?;
    report.notes.push(format!("product formula: {formula}"));
    let expected = formula.expand(qmax, n);
    let computed = quotient_series(group, Character::Det, qmax, n)?;
    report.compare_series("quotient", &expected, &computed);
    let basis = harmonics_det_basis(group)?;
    let from_basis = BiSeries::from_terms(
        qmax,
        n,
        basis
            .iter()
            .filter_map(|(_, v)| v.bidegree())
            .map(|b| (b.qdeg, b.tdeg, Rational::from_integer(1.into()))),
    );
    report.compare_series("harmonics", &expected, &from_basis);
    report.series.push(("quotient det-series".into(), computed));
    Ok(())
}

/// Number of letters when the group is a symmetric group (natural or standard model).
fn symmetric_letters(group: &ReflectionGroup) -> Option<u32> {
    let d = group.degrees();
    let r = d.len() as u32;
    if d.iter().copied().eq(1..=r) {
        Some(r)
    } else if d.iter().copied().eq(2..=r + 1) {
        Some(r + 1)
    } else {
        None
    }
}

fn wallach(report: &mut VerificationReport, group: &ReflectionGroup) -> Result<()> {
    let letters = symmetric_letters(group).ok_or_else(|| {
        Error::NotApplicable(format!(
            "degrees {:?} are not those of a symmetric group",
            group.degrees()
        ))
    })?;
    let n = group.n() as u32;
    let top = letters * (letters - 1) / 2;
    let qmax = report.qmax.max(top);
    if qmax > report.qmax {
        report.notes.push(format!("qmax raised to {qmax} to cover the top degree"));
    }
    report.qmax = qmax;
    report.tmax = n;
    let data = exponent_data_real(group);
    let formula = ProductKind::Wallach(letters).formula(&data)?;
    report.notes.push(format!("product formula: {formula}"));
    let expected = formula.expand(qmax, n);
    let computed = quotient_series(group, Character::Det, qmax, n)?;
    report.compare_series("", &expected, &computed);
    report.series.push(("quotient det-series".into(), computed));
    Ok(())
}

fn table_orbits(report: &mut VerificationReport, group: &ReflectionGroup) -> Result<()> {
    let n = group.n() as u32;
    let qmax = report.qmax;
    report.tmax = n;
    let data = coexponents(group)?;
    report.notes.push(format!(
        "exponents {:?}, coexponents {:?}, delta {}",
        data.exponents, data.coexponents, data.delta
    ));
    let mut raw: HashMap<TableCell, BiSeries> = HashMap::new();
    for cell in TableCell::all() {
        raw.insert(cell, cell_series(group, cell, qmax, n)?);
    }
    for cell in TableCell::all() {
        match cell.formula(&data)? {
            Some(f) => {
                let expected = f.expand(qmax, n);
                let ok = expected == raw[&cell];
                report.check(
                    format!("{cell} formula"),
                    f.to_string(),
                    if ok { f.to_string() } else { raw[&cell].to_poly_string() },
                    ok,
                );
            }
            None => report.notes.push(format!(
                "{cell} has no closed form; raw series {}",
                raw[&cell].to_poly_string()
            )),
        }
    }
    for cell in TableCell::all() {
        if let Some(target) = cell.t_image() {
            let moved = raw[&cell].transform_t(n)?;
            report.row(
                format!("t-move {cell} -> {target}"),
                raw[&target].to_poly_string(),
                moved.to_poly_string(),
            );
        }
        if let Some(target) = cell.q_image() {
            if let (Some(f), Some(g)) = (cell.formula(&data)?, target.formula(&data)?) {
                report.row(format!("q-move {cell} -> {target}"), g, f.transform_q()?);
            }
        }
        let mirror = cell.reflect();
        if cell < mirror {
            report.row(
                format!("reflect {cell} <-> {mirror}"),
                raw[&mirror].to_poly_string(),
                raw[&cell].to_poly_string(),
            );
        }
    }
    let mut cells: Vec<_> = raw.into_iter().collect();
    cells.sort_by_key(|(c, _)| (c.row(), c.col()));
    for (cell, s) in cells {
        report.series.push((cell.to_string(), s));
    }
    Ok(())
}

fn schur(report: &mut VerificationReport, group: &ReflectionGroup) -> Result<()> {
    if symmetric_letters(group) != Some(group.n() as u32) {
        return Err(Error::NotApplicable(format!(
            "{} is not a symmetric group acting on its natural coordinates",
            group.label()
        )));
    }
    let n = group.n();
    let bound = report.qmax.min(4);
    report.notes.push(format!("partitions of size at most {bound}"));
    let lambdas: Vec<Vec<u32>> = (0..=bound).flat_map(|k| partitions(k, n)).collect();
    let alts = lambdas
        .iter()
        .map(|l| schur_alternant(l, n))
        .collect::<Result<Vec<_>>>()?;
    for (l, a) in lambdas.iter().zip(&alts) {
        for g in group.generators() {
            if act(g, a)? != a.scale(&g.det()) {
                report.check(format!("a{l:?} alternating"), "yes", "no", false);
            }
        }
    }
    for (l, a) in lambdas.iter().zip(&alts) {
        for (mu, b) in lambdas.iter().zip(&alts) {
            let expected = if l == mu { schur_norm(l, n) } else { Rational::zero() };
            let computed = hermitian_form(a, b)?.as_rational()?;
            report.row(format!("<a{l:?}, a{mu:?}>"), expected, computed);
        }
    }
    Ok(())
}

fn coexponent_check(report: &mut VerificationReport, group: &ReflectionGroup) -> Result<()> {
    let data = coexponents(group)?;
    let n = group.n();
    report.row("coexponent count", n, data.coexponents.len());
    if group.is_orthogonal() {
        report.row("coexponents", format!("{:?}", data.exponents), format!("{:?}", data.coexponents));
        report.row("delta", 0, data.delta);
    } else {
        report.notes.push(format!("coexponents {:?}, delta {}", data.coexponents, data.delta));
        let mut distinct = data.coexponents.clone();
        distinct.dedup();
        report.row("distinct coexponents", n, distinct.len());
        let qmax = report.qmax.max(data.delta.max(0) as u32);
        report.qmax = qmax;
        let cell = TableCell::new(Space::V, Space::Vdual, Character::Det);
        let raw = cell_series(group, cell, qmax, n as u32)?;
        let lowest = (0..=qmax).find(|&i| !raw.get(i, n as u32).is_zero());
        report.row(
            "q-shift of k[V](x)L(V*):det at t^n",
            data.delta,
            lowest.map(|v| v.to_string()).unwrap_or_else(|| "none".into()),
        );
    }
    Ok(())
}

fn vandermonde_sanity(report: &mut VerificationReport, group: &ReflectionGroup) -> Result<()> {
    let n = group.n();
    if symmetric_letters(group) != Some(n as u32) {
        return Err(Error::NotApplicable(format!(
            "{} is not a symmetric group on its natural coordinates",
            group.label()
        )));
    }
    let delta = group.vandermonde()?.delta;
    let m = group.conductor();
    let x = |i| SuperPoly::x(n, Flavor::DualExterior, m, i);
    let mut prod = SuperPoly::one(n, Flavor::DualExterior, m);
    for i in 1..=n {
        for j in i + 1..=n {
            prod = &prod * &(&x(j) - &x(i));
        }
    }
    let (lead, c0) = prod.terms().next().map(|(k, v)| (k.clone(), v.clone())).expect("nonzero");
    let c = &delta.coeff(&lead) * &c0.inv()?;
    report.row("delta nonzero", true, !delta.is_zero());
    report.row("delta = c * prod_{i<j}(x_j - x_i)", true, !c.is_zero() && delta == prod.scale(&c));
    let mut claimed = num_bigint::BigInt::from(1);
    for k in 2..=n {
        claimed *= k;
    }
    let claimed = claimed.pow(n as u32);
    let c_text = c.to_string();
    let verdict = if c.as_rational().ok() == Some(Rational::from_integer(claimed.clone())) {
        "matches"
    } else {
        "differs from"
    };
    report.notes.push(format!("c = {c_text}; {verdict} n!^n = {claimed}"));
    Ok(())
}

struct Tally {
    name: &'static str,
    passed: usize,
    run: usize,
    skipped: Option<String>,
    first_failure: Option<String>,
}

/// Seeded random checks of the operator identities on `iterations` inputs each.
pub fn property_suite(group: &ReflectionGroup, seed: u64, iterations: usize) -> Result<VerificationReport> {
    let start = Instant::now();
    let n = group.n();
    let m = group.conductor();
    let mut report = VerificationReport::new("property-suite", group, MAX_XDEG, n as u32);
    report.seed = Some(seed);
    let mut rng = SuperRng::new(seed, n, m);
    let delta = group.vandermonde()?.delta;
    let d = Flavor::DualExterior;
    let p = Flavor::PrimalExterior;
    let elements = group.elements();
    let inverse_index: HashMap<_, usize> = elements
        .iter()
        .enumerate()
        .map(|(k, g)| (g.matrix.clone(), k))
        .collect();
    let inv = |k: usize| &elements[inverse_index[&elements[k].inverse]];
    let unitary = group.is_unitary();

    type Check<'a> = Box<dyn FnMut(&mut SuperRng) -> Result<bool> + 'a>;
    let mut checks: Vec<(&'static str, bool, Check)> = Vec::new();
    let rand_i = |r: &mut SuperRng| r.index(n) + 1;

    checks.push(("comm-partial-x", true, Box::new(|r| {
        let f = r.superpoly(d, MAX_XDEG, false);
        let (i, j) = (rand_i(r), rand_i(r));
        Ok(f.partial_x(i)?.partial_x(j)? == f.partial_x(j)?.partial_x(i)?)
    })));
    checks.push(("acomm-partial-ext", true, Box::new(|r| {
        let fl = r.flavor();
        let f = r.superpoly(fl, MAX_XDEG, false);
        let (i, j) = (rand_i(r), rand_i(r));
        Ok(f.partial_theta(i)?.partial_theta(j)? == -f.partial_theta(j)?.partial_theta(i)?)
    })));
    checks.push(("acomm-mult-ext", true, Box::new(|r| {
        let fl = r.flavor();
        let f = r.superpoly(fl, MAX_XDEG, false);
        let (i, j) = (rand_i(r), rand_i(r));
        Ok(f.mult_theta(i)?.mult_theta(j)? == -f.mult_theta(j)?.mult_theta(i)?)
    })));
    checks.push(("mult-partial-anticommutator", true, Box::new(|r| {
        let fl = r.flavor();
        let f = r.superpoly(fl, MAX_XDEG, false);
        let (i, j) = (rand_i(r), rand_i(r));
        let lhs = &f.partial_theta(j)?.mult_theta(i)? + &f.mult_theta(i)?.partial_theta(j)?;
        let rhs = if i == j { f.clone() } else { SuperPoly::zero(n, f.flavor(), m) };
        Ok(lhs == rhs)
    })));
    checks.push(("commuting-x-ext", true, Box::new(|r| {
        let f = r.superpoly(d, MAX_XDEG, false);
        let (i, j) = (rand_i(r), rand_i(r));
        Ok(f.partial_x(i)?.partial_theta(j)? == f.partial_theta(j)?.partial_x(i)?
            && f.partial_x(i)?.mult_theta(j)? == f.mult_theta(j)?.partial_x(i)?)
    })));
    checks.push(("leibniz", true, Box::new(|r| {
        let b = r.bidegree(2);
        let f = r.bihomogeneous(d, b, 2, false);
        let g = r.superpoly(d, 2, false);
        let i = rand_i(r);
        let lhs = (&f * &g).partial_theta(i)?;
        let second = &f * &g.partial_theta(i)?;
        let rhs = &(&f.partial_theta(i)? * &g) + &(if b.tdeg % 2 == 1 { -second } else { second });
        Ok(lhs == rhs)
    })));
    checks.push(("inv-complement", true, Box::new(|r| {
        let full = (1u32 << n) - 1;
        let i_set = r.rng().gen_range(0..=full);
        let j_set = r.rng().gen_range(0..=full);
        Ok(inv_count(i_set, j_set) + inv_count(i_set, full & !j_set) == subset_degree(i_set))
    })));
    checks.push(("mul-associative", true, Box::new(|r| {
        let (f, g, h) = (r.superpoly(d, 2, false), r.superpoly(d, 2, false), r.superpoly(d, 2, false));
        Ok(&(&f * &g) * &h == &f * &(&g * &h))
    })));
    checks.push(("d-squared", true, Box::new(|r| {
        let f = r.superpoly(d, MAX_XDEG, false);
        Ok(f.exterior_derivative()?.exterior_derivative()?.is_zero())
    })));
    checks.push(("d-equivariant", true, Box::new(|r| {
        let g = &elements[r.index(elements.len())];
        let f = r.superpoly(d, MAX_XDEG, false);
        Ok(g.act(&f.exterior_derivative()?)? == g.act(&f)?.exterior_derivative()?)
    })));
    checks.push(("group-action", true, Box::new(|r| {
        let (a, b) = (r.index(elements.len()), r.index(elements.len()));
        let fl = r.flavor();
        let f = r.superpoly(fl, 3, false);
        let prod = elements[a].matrix.mul(&elements[b].matrix)?;
        Ok(act(&prod, &f)? == elements[a].act(&elements[b].act(&f)?)?)
    })));
    checks.push(("invariants-fixed", true, Box::new(|r| {
        let g = &elements[r.index(elements.len())];
        let f = &group.invariants()[r.index(n)];
        Ok(g.act(f)? == *f)
    })));
    checks.push(("delta-det", true, Box::new(|r| {
        let g = &elements[r.index(elements.len())];
        Ok(g.act(&delta)? == delta.scale(&g.det))
    })));
    checks.push(("dot-equivariant", unitary, Box::new(|r| {
        let g = &elements[r.index(elements.len())];
        let (f, h) = (r.superpoly(d, 3, false), r.superpoly(d, MAX_XDEG, false));
        Ok(g.act(&dot(&f, &h)?)? == dot(&g.act(&f)?, &g.act(&h)?)?)
    })));
    checks.push(("odot-equivariant", unitary, Box::new(|r| {
        let g = &elements[r.index(elements.len())];
        let (f, h) = (r.superpoly(d, 3, false), r.superpoly(p, MAX_XDEG, false));
        Ok(g.act(&odot(&f, &h)?)? == odot(&g.act(&f)?, &g.act(&h)?)?)
    })));
    checks.push(("conjugate-partial-x", unitary, Box::new(|r| {
        let k = r.index(elements.len());
        let g = &elements[k];
        let i = rand_i(r);
        let h = r.superpoly(d, MAX_XDEG, false);
        let lhs = g.act(&inv(k).act(&h)?.partial_x(i)?)?;
        let rhs = dot(&g.act(&SuperPoly::x(n, d, m, i))?, &h)?;
        Ok(lhs == rhs)
    })));
    checks.push(("conjugate-mult-psi", unitary, Box::new(|r| {
        let k = r.index(elements.len());
        let g = &elements[k];
        let i = rand_i(r);
        let h = r.superpoly(p, MAX_XDEG, false);
        let lhs = g.act(&inv(k).act(&h)?.mult_theta(i)?)?;
        let rhs = odot(&g.act(&SuperPoly::ext(n, d, m, i))?, &h)?;
        Ok(lhs == rhs)
    })));
    checks.push(("hodge-compatible", true, Box::new(|r| {
        let (f, g) = (r.superpoly(d, 3, false), r.superpoly(d, MAX_XDEG, false));
        Ok(odot(&f, &g.hodge_star()?)? == dot(&f, &g)?.hodge_star()?)
    })));
    checks.push(("orthogonal-monomials", true, Box::new(|r| {
        let b = r.bidegree(MAX_XDEG);
        let slice = BidegreeSlice::new(n, b, d);
        if slice.dim() == 0 {
            return Ok(true);
        }
        let m1 = slice.monomials()[r.index(slice.dim())].clone();
        let m2 = if r.index(2) == 0 { m1.clone() } else { slice.monomials()[r.index(slice.dim())].clone() };
        let one = Cyclotomic::one(m);
        let form = hermitian_form(
            &SuperPoly::monomial(n, d, m1.clone(), one.clone()),
            &SuperPoly::monomial(n, d, m2.clone(), one),
        )?;
        Ok(form.as_rational()? == orth_value(&m1, &m2))
    })));
    checks.push(("hermitian-symmetry", true, Box::new(|r| {
        let (f, g) = (r.superpoly(d, 2, false), r.superpoly(d, 2, false));
        Ok(hermitian_form(&f, &g)? == hermitian_form(&g, &f)?.conj())
    })));
    checks.push(("sesquilinear", true, Box::new(|r| {
        let (f, g) = (r.superpoly(d, 2, false), r.superpoly(d, 2, false));
        let c = r.coefficient(false);
        Ok(hermitian_form(&f.scale(&c), &g)? == &c.conj() * &hermitian_form(&f, &g)?
            && hermitian_form(&f, &g.scale(&c))? == &c * &hermitian_form(&f, &g)?)
    })));
    checks.push(("sign-definite", true, Box::new(|r| {
        let t = r.rng().gen_range(0..=n as u32);
        let (q1, q2) = (r.rng().gen_range(0..=3), r.rng().gen_range(0..=3));
        let f = &r.bihomogeneous(d, Bidegree::new(q1, t), 3, true)
            + &r.bihomogeneous(d, Bidegree::new(q2, t), 3, true);
        if f.is_zero() {
            return Ok(true);
        }
        let v = hermitian_form(&f, &f)?.as_rational()?;
        let v = if (t * t.saturating_sub(1) / 2) % 2 == 1 { -v } else { v };
        Ok(v.is_positive())
    })));
    checks.push(("polarization", true, Box::new(|r| {
        let (f, g) = (r.x_poly(3), r.x_poly(3));
        let mut lhs = SuperPoly::zero(n, d, m);
        for i in 1..=n {
            lhs = &lhs + &(&f.partial_x(i)? * &g.partial_x(i)?);
        }
        Ok(lhs == polarization(&f, &g))
    })));
    checks.push(("laplacian-dot", true, Box::new(|r| {
        let f = r.superpoly(d, MAX_XDEG, false);
        Ok(laplacian(&f) == dot(&crate::actions::sum_of_squares(n, m), &f)?)
    })));
    checks.push(("commuting-df", true, Box::new(|r| {
        let (f, g) = (r.x_poly(3), r.x_poly(3));
        let h = r.superpoly(d, MAX_XDEG, false);
        let (df, dg) = (f.exterior_derivative()?, g.exterior_derivative()?);
        let lhs = dot(&df, &odot(&dg, &h.relabel(p))?.relabel(d))?;
        let first = odot(&dg, &dot(&df, &h)?.relabel(p))?.relabel(d);
        let rhs = &dot(&polarization(&f, &g), &h)? - &first;
        Ok(lhs == rhs)
    })));

    let mut tallies: Vec<Tally> = Vec::new();
    for (name, applicable, mut check) in checks {
        let mut t = Tally {
            name,
            passed: 0,
            run: 0,
            skipped: None,
            first_failure: None,
        };
        if !applicable {
            t.skipped = Some("group is not unitary".into());
            tallies.push(t);
            continue;
        }
        for k in 0..iterations {
            t.run += 1;
            match check(&mut rng) {
                Ok(true) => t.passed += 1,
                Ok(false) => {
                    t.first_failure.get_or_insert_with(|| format!("instance {k}"));
                }
                Err(e) => {
                    t.first_failure.get_or_insert_with(|| format!("instance {k}: {e}"));
                }
            }
        }
        tallies.push(t);
    }
    for t in tallies {
        match t.skipped {
            Some(reason) => {
                report.notes.push(format!("{} skipped: {reason}", t.name));
                report.check(t.name, "skipped", "skipped", true);
            }
            None => {
                if let Some(f) = &t.first_failure {
                    report.notes.push(format!("{} first failure at {f}", t.name));
                }
                report.row(t.name, format!("{}/{}", t.run, t.run), format!("{}/{}", t.passed, t.run));
            }
        }
    }
    let mut report = report.finish();
    report.elapsed = start.elapsed();
    Ok(report)
}

/// `<x^a th_I, x^b th_J> = (-1)^binom(|I|,2) a!` when equal, else 0.
pub fn orth_value(m1: &SuperMonomial, m2: &SuperMonomial) -> Rational {
    if m1 != m2 {
        return Rational::zero();
    }
    let v = Rational::from_integer(m1.alpha_factorial());
    let r = m1.tdeg();
    if (r * r.saturating_sub(1) / 2) % 2 == 1 {
        -v
    } else {
        v
    }
}

use rand::Rng as _;

//! Exact algebra of index sets and index families.
//!
//! Exponents are affine expressions `p + qζ` with integer `p` and `q ≥ 0`; the numeric value of
//! `ζ` (carried by [`IndexCtx`]) is used only for ordering by real part, for truncation, and to
//! detect accidental integer relations between exponents with different `ζ`-multiplicity.

mod text;

use std::collections::BTreeSet;
use std::fmt;

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

pub use text::{evaluate, parse_exponent, parse_family, parse_set, Value};

/// The exponent `offset + zeta·ζ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Exponent {
    pub zeta: u32,
    pub offset: i64,
}

impl Exponent {
    pub const fn new(offset: i64, zeta: u32) -> Self {
        Self { zeta, offset }
    }

    pub const fn constant(offset: i64) -> Self {
        Self { zeta: 0, offset }
    }

    pub fn add(self, other: Self) -> Self {
        Self { zeta: self.zeta + other.zeta, offset: self.offset + other.offset }
    }

    pub fn shift(self, by: i64) -> Self {
        Self { offset: self.offset + by, ..self }
    }
}

/// A pair `(a, l)`: exponent and log power.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexTerm {
    pub a: Exponent,
    pub log: u32,
}

impl IndexTerm {
    pub const fn new(a: Exponent, log: u32) -> Self {
        Self { a, log }
    }
}

/// Numeric context: the value of `ζ` and whether accidental integer relations are to be ignored.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IndexCtx {
    pub zeta: C64,
    pub generic: bool,
}

impl IndexCtx {
    pub fn new(zeta: C64) -> Self {
        Self { zeta, generic: false }
    }

    pub fn generic(zeta: C64) -> Self {
        Self { zeta, generic: true }
    }

    pub fn re(&self, a: Exponent) -> f64 {
        a.offset as f64 + a.zeta as f64 * self.zeta.re
    }

    /// `Some(b − a)` when `b − a ∈ ℤ`, decided symbolically.
    ///
    /// Exponents with different `ζ`-multiplicity count as unrelated, unless the numeric `ζ`
    /// makes them integer-related and the context is not marked generic, which is an error.
    pub fn integer_gap(&self, a: Exponent, b: Exponent) -> Result<Option<i64>> {
        if a.zeta == b.zeta {
            return Ok(Some(b.offset - a.offset));
        }
        let dq = b.zeta as f64 - a.zeta as f64;
        let v = dq * self.zeta;
        if (v.im).abs() < 1e-12 && (v.re - v.re.round()).abs() < 1e-12 && !self.generic {
            return Err(Error::Domain(format!(
                "ζ = {} makes {} and {} differ by an integer; mark the context generic to ignore this",
                self.zeta,
                a,
                b
            )));
        }
        Ok(None)
    }
}

/// A set of index terms, faithful below its truncation bound `Re a < truncation`
/// (`f64::INFINITY` for an exact set), or the special set `∞`.
#[derive(Debug, Clone, PartialEq)]
pub struct IndexSet {
    terms: BTreeSet<IndexTerm>,
    truncation: f64,
    infinite: bool,
}

impl IndexSet {
    pub fn infinity() -> Self {
        Self { terms: BTreeSet::new(), truncation: f64::INFINITY, infinite: true }
    }

    pub fn empty() -> Self {
        Self { terms: BTreeSet::new(), truncation: f64::INFINITY, infinite: false }
    }

    pub fn exact<I: IntoIterator<Item = IndexTerm>>(terms: I) -> Self {
        Self { terms: terms.into_iter().collect(), truncation: f64::INFINITY, infinite: false }
    }

    /// `{(a, 0)}`, the shorthand `a`.
    pub fn single(a: Exponent) -> Self {
        Self::exact([IndexTerm::new(a, 0)])
    }

    /// Terms with `Re a ≥ truncation` are dropped.
    pub fn truncated<I: IntoIterator<Item = IndexTerm>>(ctx: &IndexCtx, terms: I, truncation: f64) -> Self {
        let terms = terms.into_iter().filter(|t| ctx.re(t.a) < truncation).collect();
        Self { terms, truncation, infinite: false }
    }

    pub fn is_infinity(&self) -> bool {
        self.infinite
    }

    pub fn is_empty(&self) -> bool {
        !self.infinite && self.terms.is_empty()
    }

    pub fn truncation(&self) -> f64 {
        self.truncation
    }

    pub fn terms(&self) -> impl Iterator<Item = &IndexTerm> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn contains(&self, t: &IndexTerm) -> bool {
        self.terms.contains(t)
    }

    /// True when some `(a, k') ∈ self` has `k' ≥ t.log`.
    pub fn dominates(&self, t: &IndexTerm) -> bool {
        let lo = IndexTerm::new(t.a, t.log);
        let hi = IndexTerm::new(t.a, u32::MAX);
        self.terms.range(lo..=hi).next().is_some()
    }
}

/// Index family on the three faces (left, right, front).
#[derive(Debug, Clone, PartialEq)]
pub struct IndexFamily {
    pub left: IndexSet,
    pub right: IndexSet,
    pub front: IndexSet,
}

impl IndexFamily {
    pub fn new(left: IndexSet, right: IndexSet, front: IndexSet) -> Self {
        Self { left, right, front }
    }

    pub fn faces(&self) -> [(Face, &IndexSet); 3] {
        [(Face::Left, &self.left), (Face::Right, &self.right), (Face::Front, &self.front)]
    }

    fn map<F: FnMut(&IndexSet) -> Result<IndexSet>>(&self, mut f: F) -> Result<Self> {
        Ok(Self { left: f(&self.left)?, right: f(&self.right)?, front: f(&self.front)? })
    }
}

/// Index family on the two boundary faces (left, right).
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryIndexFamily {
    pub left: IndexSet,
    pub right: IndexSet,
}

impl BoundaryIndexFamily {
    pub fn new(left: IndexSet, right: IndexSet) -> Self {
        Self { left, right }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Face {
    Left,
    Right,
    Front,
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Face::Left => "left",
            Face::Right => "right",
            Face::Front => "front",
        })
    }
}

/// `Re E = min{Re a}`; `+∞` for `∞` and for the empty set.
pub fn re_min(ctx: &IndexCtx, e: &IndexSet) -> f64 {
    e.terms.iter().map(|t| ctx.re(t.a)).fold(f64::INFINITY, f64::min)
}

/// `E + F = {(a + b, k + l)}`; `∞` is absorbing.
pub fn sum(ctx: &IndexCtx, e: &IndexSet, f: &IndexSet) -> IndexSet {
    if e.infinite || f.infinite {
        return IndexSet::infinity();
    }
    let m = (e.truncation + re_min(ctx, f)).min(f.truncation + re_min(ctx, e));
    let terms = e
        .terms
        .iter()
        .flat_map(|s| f.terms.iter().map(move |t| IndexTerm::new(s.a.add(t.a), s.log + t.log)));
    IndexSet::truncated(ctx, terms, m)
}

/// Extended union `E ∪̄ F`.
///
/// Each pair `(a,k) ∈ E`, `(b,l) ∈ F` contributes `{(a,k), (b,l)}` when `b − a ∉ ℤ`, and
/// `{(a,k), (b, k+l+1)}` when `b − a ∈ ℕ₀`. Pairs with `b − a ∈ −ℕ` are handled with the roles
/// exchanged, and equal exponents put the smaller log power first. `∞` and `∅` are neutral.
pub fn ext_union(ctx: &IndexCtx, e: &IndexSet, f: &IndexSet) -> Result<IndexSet> {
    let m = e.truncation.min(f.truncation);
    if e.infinite {
        return Ok(with_truncation(ctx, f, m));
    }
    if f.infinite || f.terms.is_empty() {
        return Ok(with_truncation(ctx, e, m));
    }
    if e.terms.is_empty() {
        return Ok(with_truncation(ctx, f, m));
    }
    let mut out = BTreeSet::new();
    for s in &e.terms {
        for t in &f.terms {
            match ctx.integer_gap(s.a, t.a)? {
                None => {
                    out.insert(*s);
                    out.insert(*t);
                }
                Some(g) => {
                    let (lo, hi) = if g > 0 || (g == 0 && s.log <= t.log) { (s, t) } else { (t, s) };
                    out.insert(*lo);
                    out.insert(IndexTerm::new(hi.a, lo.log + hi.log + 1));
                }
            }
        }
    }
    Ok(IndexSet::truncated(ctx, out, m))
}

fn with_truncation(ctx: &IndexCtx, s: &IndexSet, m: f64) -> IndexSet {
    if s.infinite {
        return s.clone();
    }
    IndexSet::truncated(ctx, s.terms.iter().copied(), m)
}

/// Plain set union with the smaller truncation; `∞` is neutral.
pub fn plain_union(ctx: &IndexCtx, e: &IndexSet, f: &IndexSet) -> IndexSet {
    if e.infinite {
        return f.clone();
    }
    if f.infinite {
        return e.clone();
    }
    IndexSet::truncated(ctx, e.terms.iter().chain(f.terms.iter()).copied(), e.truncation.min(f.truncation))
}

/// Keeps the terms with `Re a < m` and lowers the truncation bound to `m`.
pub fn truncate(ctx: &IndexCtx, e: &IndexSet, m: f64) -> IndexSet {
    if e.infinite {
        return e.clone();
    }
    with_truncation(ctx, e, e.truncation.min(m))
}

/// Closure under `(a, k) ↦ (a + j, l)` for `j ≥ 0`, `l ≤ k`, below the (finite) truncation.
pub fn smooth_closure(ctx: &IndexCtx, e: &IndexSet) -> Result<IndexSet> {
    if e.infinite || e.terms.is_empty() {
        return Ok(e.clone());
    }
    if !e.truncation.is_finite() {
        return Err(Error::Domain("closure of an untruncated non-empty set is infinite".into()));
    }
    let mut out = BTreeSet::new();
    for t in &e.terms {
        let mut a = t.a;
        while ctx.re(a) < e.truncation {
            for l in 0..=t.log {
                out.insert(IndexTerm::new(a, l));
            }
            a = a.shift(1);
        }
    }
    Ok(IndexSet { terms: out, truncation: e.truncation, infinite: false })
}

fn check_hypothesis(ctx: &IndexCtx, e2: &IndexSet, f1: &IndexSet, n: i64) -> Result<()> {
    let (l, r) = (re_min(ctx, e2), re_min(ctx, f1));
    if l + r > n as f64 {
        Ok(())
    } else {
        Err(Error::Hypothesis { left: l, right: r, n })
    }
}

/// `ℰ ∘ ℱ = {E₁ ∪̄ (F₁ + E₃), F₂ ∪̄ (E₂ + F₃), (E₃ + F₃) ∪̄ (E₁ + F₂)}`,
/// defined when `Re E₂ + Re F₁ > n`.
pub fn compose_families(ctx: &IndexCtx, e: &IndexFamily, f: &IndexFamily, n: i64) -> Result<IndexFamily> {
    check_hypothesis(ctx, &e.right, &f.left, n)?;
    Ok(IndexFamily {
        left: ext_union(ctx, &e.left, &sum(ctx, &f.left, &e.front))?,
        right: ext_union(ctx, &f.right, &sum(ctx, &e.right, &f.front))?,
        front: ext_union(ctx, &sum(ctx, &e.front, &f.front), &sum(ctx, &e.left, &f.right))?,
    })
}

/// `ℰ ∘ ℐ = {E₁ ∪̄ (I₁ + E₃), I₂}`, defined when `Re E₂ + Re I₁ > n`.
pub fn compose_family_boundary(
    ctx: &IndexCtx,
    e: &IndexFamily,
    i: &BoundaryIndexFamily,
    n: i64,
) -> Result<BoundaryIndexFamily> {
    check_hypothesis(ctx, &e.right, &i.left, n)?;
    Ok(BoundaryIndexFamily {
        left: ext_union(ctx, &e.left, &sum(ctx, &i.left, &e.front))?,
        right: i.right.clone(),
    })
}

/// The family `{ζ+1, ζ, 1}` of the first Neumann-series remainder term.
pub fn neumann_base() -> IndexFamily {
    IndexFamily::new(
        IndexSet::single(Exponent::new(1, 1)),
        IndexSet::single(Exponent::new(0, 1)),
        IndexSet::single(Exponent::constant(1)),
    )
}

/// The reference envelope `E₁ = {(ζ+1+k, k)}`, `E₂ = {(ζ+k, k)}`,
/// `E₃ = {(1, 0)} ∪ {(2ζ+k, (k²+k−2)/2) : k ≥ 1}`, truncated at `Re < m`.
pub fn reference_neumann_family(ctx: &IndexCtx, m: f64) -> Result<IndexFamily> {
    if !m.is_finite() {
        return Err(Error::Domain("the reference family needs a finite truncation".into()));
    }
    let mut left = Vec::new();
    let mut right = Vec::new();
    let mut front = vec![IndexTerm::new(Exponent::constant(1), 0)];
    let mut k: i64 = 0;
    loop {
        let (l, r, f) = (Exponent::new(1 + k, 1), Exponent::new(k, 1), Exponent::new(k, 2));
        if ctx.re(l) >= m && ctx.re(r) >= m && (k == 0 || ctx.re(f) >= m) {
            break;
        }
        let ku = k as u32;
        left.push(IndexTerm::new(l, ku));
        right.push(IndexTerm::new(r, ku));
        if k >= 1 {
            front.push(IndexTerm::new(f, (ku * ku + ku - 2) / 2));
        }
        k += 1;
    }
    Ok(IndexFamily::new(
        IndexSet::truncated(ctx, left, m),
        IndexSet::truncated(ctx, right, m),
        IndexSet::truncated(ctx, front, m),
    ))
}

/// How the index families of successive powers are combined.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PowerUnion {
    /// Plain union: a sum of expansions creates no new log terms.
    Plain,
    /// Extended union `∪̄` across powers.
    Extended,
}

/// Interpretation of the index sets in [`neumann_envelope`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NeumannSemantics {
    /// Replace every set (base, powers and reference) by its smooth closure.
    pub closure: bool,
    pub across_powers: PowerUnion,
}

impl Default for NeumannSemantics {
    fn default() -> Self {
        Self { closure: true, across_powers: PowerUnion::Plain }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub face: Face,
    pub term: IndexTerm,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} face: {} not dominated", self.face, self.term)
    }
}

#[derive(Debug, Clone)]
pub struct NeumannReport {
    /// Index family of `Q^j` for `j = 1..=J`.
    pub powers: Vec<IndexFamily>,
    /// Union of the powers.
    pub envelope: IndexFamily,
    pub reference: IndexFamily,
    pub violations: Vec<Violation>,
}

impl NeumannReport {
    pub fn contained(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Iterates `Qʲ = Qʲ⁻¹ ∘ Q` for `j ≤ J` at truncation `Re < m`, unites the families and checks
/// each term against [`reference_neumann_family`] by log-power dominance.
pub fn neumann_envelope(
    ctx: &IndexCtx,
    base: &IndexFamily,
    j_max: usize,
    m: f64,
    n: i64,
    semantics: NeumannSemantics,
) -> Result<NeumannReport> {
    if j_max == 0 {
        return Err(Error::Domain("J must be at least 1".into()));
    }
    let prep = |s: &IndexSet| -> Result<IndexSet> {
        let t = truncate(ctx, s, m);
        if semantics.closure {
            smooth_closure(ctx, &t)
        } else {
            Ok(t)
        }
    };
    let q = base.map(prep)?;
    let reference = reference_neumann_family(ctx, m)?.map(prep)?;
    let mut powers = vec![q.clone()];
    let mut envelope = q.clone();
    for _ in 1..j_max {
        let next = compose_families(ctx, powers.last().expect("non-empty"), &q, n)?.map(prep)?;
        envelope = match semantics.across_powers {
            PowerUnion::Plain => IndexFamily::new(
                plain_union(ctx, &envelope.left, &next.left),
                plain_union(ctx, &envelope.right, &next.right),
                plain_union(ctx, &envelope.front, &next.front),
            ),
            PowerUnion::Extended => IndexFamily::new(
                ext_union(ctx, &envelope.left, &next.left)?,
                ext_union(ctx, &envelope.right, &next.right)?,
                ext_union(ctx, &envelope.front, &next.front)?,
            ),
        };
        powers.push(next);
    }
    let mut violations = Vec::new();
    for ((face, s), (_, r)) in envelope.faces().into_iter().zip(reference.faces()) {
        for t in s.terms() {
            if !r.dominates(t) {
                violations.push(Violation { face, term: *t });
            }
        }
    }
    Ok(NeumannReport { powers, envelope, reference, violations })
}

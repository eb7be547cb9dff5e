//! Monoid gradings of the polynomial ring and of free modules over it.
//!
//! A ring grading assigns `x^a` the degree `W a` for a nonnegative integer
//! weight matrix `W` (k x d), and orders degrees by comparing `O v`
//! lexicographically for a k x k order matrix `O`. This covers the standard
//! grading (k = 1), monomial gradings by term orders (W = identity) and the
//! two-block elimination grading (k = 2).
//!
//! A module grading gives each basis vector `e_i` a degree; the degree of
//! `x^a e_i` is `deg(x^a) . deg(e_i)`. Module degrees optionally carry a
//! component tag, compared position-over-term or term-over-position, with
//! lower tags ranking higher.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::polymod::Monomial;

/// A degree in a ring or module monoid.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Degree {
    pub value: Vec<i64>,
    pub component: Option<usize>,
}

impl Degree {
    pub fn scalar(n: i64) -> Self {
        Degree {
            value: vec![n],
            component: None,
        }
    }

    pub fn vector(v: Vec<i64>) -> Self {
        Degree {
            value: v,
            component: None,
        }
    }

    pub fn with_component(mut self, c: usize) -> Self {
        self.component = Some(c);
        self
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.value.len() == 1 {
            write!(f, "{}", self.value[0])?;
        } else {
            let parts: Vec<String> = self.value.iter().map(i64::to_string).collect();
            write!(f, "({})", parts.join(","))?;
        }
        if let Some(c) = self.component {
            write!(f, "@{}", c + 1)?;
        }
        Ok(())
    }
}

/// Tie-break between the ring part of a module degree and its component.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TieOrder {
    PositionOverTerm,
    TermOverPosition,
    None,
}

impl fmt::Display for TieOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TieOrder::PositionOverTerm => "pot",
            TieOrder::TermOverPosition => "top",
            TieOrder::None => "none",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingGradingKind {
    Total,
    Lex,
    Degrevlex,
    Matrix,
    /// Two-block grading; `true` marks a kept variable.
    Elimination(Vec<bool>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingGrading {
    kind: RingGradingKind,
    weights: Vec<Vec<i64>>,
    order: Vec<Vec<i64>>,
}

impl RingGrading {
    /// The standard grading by total degree.
    pub fn total(nvars: usize) -> Self {
        RingGrading {
            kind: RingGradingKind::Total,
            weights: vec![vec![1; nvars]],
            order: vec![vec![1]],
        }
    }

    pub fn lex(nvars: usize) -> Self {
        RingGrading {
            kind: RingGradingKind::Lex,
            weights: identity(nvars),
            order: identity(nvars),
        }
    }

    pub fn degrevlex(nvars: usize) -> Self {
        RingGrading {
            kind: RingGradingKind::Degrevlex,
            weights: identity(nvars),
            order: degrevlex_matrix(nvars),
        }
    }

    /// The monomial grading ordered by a square weight matrix.
    pub fn matrix(order: Vec<Vec<i64>>) -> Result<Self> {
        let d = order.len();
        if order.iter().any(|row| row.len() != d) {
            return Err(Error::usage("order matrix must be square"));
        }
        Ok(RingGrading {
            kind: RingGradingKind::Matrix,
            weights: identity(d),
            order,
        })
    }

    /// `deg x_i = (1, 0)` for kept variables and `(0, 1)` otherwise, with any
    /// positive second coordinate outranking every first coordinate.
    pub fn elimination(kept: Vec<bool>) -> Self {
        let keep_row = kept.iter().map(|&k| i64::from(k)).collect();
        let drop_row = kept.iter().map(|&k| i64::from(!k)).collect();
        RingGrading {
            weights: vec![keep_row, drop_row],
            order: vec![vec![0, 1], vec![1, 0]],
            kind: RingGradingKind::Elimination(kept),
        }
    }

    pub fn kind(&self) -> &RingGradingKind {
        &self.kind
    }

    pub fn nvars(&self) -> usize {
        self.weights.first().map_or(0, Vec::len)
    }

    /// Dimension of the degree vectors.
    pub fn degree_rank(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[Vec<i64>] {
        &self.weights
    }

    pub fn order_matrix(&self) -> &[Vec<i64>] {
        &self.order
    }

    /// Whether every homogeneous component of the ring is one-dimensional.
    pub fn is_monomial(&self) -> bool {
        self.weights == identity(self.nvars())
    }

    pub fn monomial_degree(&self, m: &Monomial) -> Vec<i64> {
        self.weights
            .iter()
            .map(|row| {
                row.iter()
                    .zip(m.exponents())
                    .map(|(w, &e)| w * i64::from(e))
                    .sum()
            })
            .collect()
    }

    pub fn zero_degree(&self) -> Vec<i64> {
        vec![0; self.degree_rank()]
    }

    /// Compares two ring degree vectors.
    pub fn compare_values(&self, a: &[i64], b: &[i64]) -> Ordering {
        for row in &self.order {
            let x: i64 = row.iter().zip(a).map(|(w, v)| w * v).sum();
            let y: i64 = row.iter().zip(b).map(|(w, v)| w * v).sum();
            match x.cmp(&y) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }

    /// Compares ring degrees; rejects mismatched shapes.
    pub fn compare_degrees(&self, a: &Degree, b: &Degree) -> Result<Ordering> {
        if a.value.len() != self.degree_rank() || b.value.len() != self.degree_rank() {
            return Err(Error::usage("degree shape does not match the grading"));
        }
        Ok(self.compare_values(&a.value, &b.value))
    }

    /// All monomials `x^a` with `W a = target`, largest first.
    pub fn monomials_of_degree(&self, target: &[i64]) -> Vec<Monomial> {
        let d = self.nvars();
        let mut out = Vec::new();
        if target.iter().any(|&t| t < 0) {
            return out;
        }
        let mut exps = vec![0u32; d];
        self.solve(0, &mut target.to_vec(), &mut exps, &mut out);
        out.sort_by(|a, b| b.cmp(a));
        out
    }

    fn solve(&self, j: usize, rest: &mut Vec<i64>, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        let d = self.nvars();
        if j == d {
            if rest.iter().all(|&r| r == 0) {
                out.push(Monomial::new(exps.clone()));
            }
            return;
        }
        let column: Vec<i64> = self.weights.iter().map(|row| row[j]).collect();
        let bound = column
            .iter()
            .zip(rest.iter())
            .filter(|(w, _)| **w > 0)
            .map(|(w, r)| r / w)
            .min();
        let Some(bound) = bound else {
            // Unweighted variable; it would give infinitely many solutions.
            return;
        };
        for e in 0..=bound {
            for (r, w) in rest.iter_mut().zip(&column) {
                *r -= w * e;
            }
            exps[j] = e as u32;
            if rest.iter().all(|&r| r >= 0) {
                self.solve(j + 1, rest, exps, out);
            }
            for (r, w) in rest.iter_mut().zip(&column) {
                *r += w * e;
            }
        }
        exps[j] = 0;
    }
}

impl fmt::Display for RingGrading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            RingGradingKind::Total => write!(f, "total"),
            RingGradingKind::Lex => write!(f, "order lex"),
            RingGradingKind::Degrevlex => write!(f, "order degrevlex"),
            RingGradingKind::Matrix => write!(f, "order matrix {}", format_matrix(&self.order)),
            RingGradingKind::Elimination(kept) => {
                let idx: Vec<String> = kept
                    .iter()
                    .enumerate()
                    .filter(|(_, k)| **k)
                    .map(|(i, _)| (i + 1).to_string())
                    .collect();
                write!(f, "elim keep [{}]", idx.join(","))
            }
        }
    }
}

pub(crate) fn format_matrix(m: &[Vec<i64>]) -> String {
    let rows: Vec<String> = m
        .iter()
        .map(|r| {
            let cells: Vec<String> = r.iter().map(i64::to_string).collect();
            format!("[{}]", cells.join(","))
        })
        .collect();
    format!("[{}]", rows.join(","))
}

fn identity(d: usize) -> Vec<Vec<i64>> {
    (0..d)
        .map(|i| (0..d).map(|j| i64::from(i == j)).collect())
        .collect()
}

fn degrevlex_matrix(d: usize) -> Vec<Vec<i64>> {
    let mut rows = vec![vec![1; d]];
    for k in (1..d).rev() {
        let mut row = vec![0; d];
        row[k] = -1;
        rows.push(row);
    }
    rows
}

/// A grading of `R^n`: a ring grading plus the degree of each basis vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleGrading {
    ring: RingGrading,
    generators: Vec<Degree>,
    tie: TieOrder,
}

impl ModuleGrading {
    /// `N = ⊕ R(-a_i)` with the given shifts. With a tie order, `e_i` is tagged `i`.
    pub fn new(ring: RingGrading, shifts: Vec<Vec<i64>>, tie: TieOrder) -> Result<Self> {
        let k = ring.degree_rank();
        let mut generators = Vec::with_capacity(shifts.len());
        for (i, s) in shifts.into_iter().enumerate() {
            if s.len() != k {
                return Err(Error::usage(format!(
                    "shift {} has {} entries, the grading needs {k}",
                    i + 1,
                    s.len()
                )));
            }
            if s.iter().any(|&x| x < 0) {
                return Err(Error::usage("shifts must be nonnegative"));
            }
            generators.push(Degree {
                value: s,
                component: (tie != TieOrder::None).then_some(i),
            });
        }
        Ok(ModuleGrading {
            ring,
            generators,
            tie,
        })
    }

    /// The ring as a module over itself.
    pub fn ideal(ring: RingGrading) -> Self {
        let zero = ring.zero_degree();
        ModuleGrading::new(ring, vec![zero], TieOrder::None).expect("valid ideal grading")
    }

    /// `R^rank` with zero shifts.
    pub fn free(ring: RingGrading, rank: usize, tie: TieOrder) -> Self {
        let zero = ring.zero_degree();
        ModuleGrading::new(ring, vec![zero; rank], tie).expect("valid free grading")
    }

    /// The grading of `R^n` in which `x^a e_i` has degree `deg(x^a) . base[i]`.
    pub fn syzygy(ring: RingGrading, base: Vec<Degree>, tie: TieOrder) -> Self {
        ModuleGrading {
            ring,
            generators: base,
            tie,
        }
    }

    pub fn ring(&self) -> &RingGrading {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn tie(&self) -> TieOrder {
        self.tie
    }

    pub fn generator_degrees(&self) -> &[Degree] {
        &self.generators
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    pub fn term_degree(&self, component: usize, m: &Monomial) -> Degree {
        self.act(&self.ring.monomial_degree(m), &self.generators[component])
    }

    /// The monoid action `a . b`.
    pub fn act(&self, a: &[i64], b: &Degree) -> Degree {
        Degree {
            value: a.iter().zip(&b.value).map(|(x, y)| x + y).collect(),
            component: b.component,
        }
    }

    pub fn compare(&self, a: &Degree, b: &Degree) -> Ordering {
        let ring = || self.ring.compare_values(&a.value, &b.value);
        // Lower component index ranks higher.
        let pos = || b.component.cmp(&a.component);
        match self.tie {
            TieOrder::None => ring(),
            TieOrder::TermOverPosition => ring().then_with(pos),
            TieOrder::PositionOverTerm => pos().then_with(ring),
        }
    }

    /// Checked comparison rejecting degrees that do not belong to this grading.
    pub fn compare_degrees(&self, a: &Degree, b: &Degree) -> Result<Ordering> {
        for d in [a, b] {
            if d.value.len() != self.ring.degree_rank()
                || d.component.is_some() != (self.tie != TieOrder::None)
            {
                return Err(Error::usage(format!("degree {d} does not belong to this grading")));
            }
        }
        Ok(self.compare(a, b))
    }

    pub fn max_degree<'a>(&self, degrees: impl IntoIterator<Item = &'a Degree>) -> Option<&'a Degree> {
        degrees.into_iter().max_by(|a, b| self.compare(a, b))
    }

    /// Ring monomials `r` with `deg(r) . source = target`, largest first.
    pub fn enumerate_multipliers(&self, source: &Degree, target: &Degree) -> Vec<Monomial> {
        if source.component != target.component || source.value.len() != target.value.len() {
            return Vec::new();
        }
        let delta: Vec<i64> = target
            .value
            .iter()
            .zip(&source.value)
            .map(|(t, s)| t - s)
            .collect();
        self.ring.monomials_of_degree(&delta)
    }

    /// Module monomials `x^a e_i` of degree `b`, ordered by component then
    /// descending monomial.
    pub fn component_terms(&self, b: &Degree) -> Vec<(usize, Monomial)> {
        let mut out = Vec::new();
        for (i, g) in self.generators.iter().enumerate() {
            for m in self.enumerate_multipliers(g, b) {
                out.push((i, m));
            }
        }
        out
    }

    /// A term-order refinement of a grading with one-dimensional degrees.
    ///
    /// The fine ring grading is the weighted degrevlex order whose first row is
    /// the coarse weight vector; untagged modules become term-over-position.
    pub fn monomial_refinement(&self) -> Result<(ModuleGrading, RefinementMap)> {
        if self.ring.degree_rank() != 1 {
            return Err(Error::usage(
                "monomial refinement needs a grading with one-dimensional degrees",
            ));
        }
        let w = self.ring.weights[0].clone();
        let d = w.len();
        if w.iter().any(|&x| x <= 0) {
            return Err(Error::usage("monomial refinement needs positive weights"));
        }
        let mut order = vec![w.clone()];
        order.extend(degrevlex_matrix(d).into_iter().skip(1));
        let fine_ring = RingGrading {
            kind: if w.iter().all(|&x| x == 1) {
                RingGradingKind::Degrevlex
            } else {
                RingGradingKind::Matrix
            },
            weights: identity(d),
            order,
        };
        let mut generators = Vec::with_capacity(self.rank());
        for (i, g) in self.generators.iter().enumerate() {
            let a = g.value[0];
            if d == 0 || a % w[0] != 0 {
                return Err(Error::usage(format!(
                    "shift of e{} cannot be lifted to a monomial degree",
                    i + 1
                )));
            }
            let mut v = vec![0; d];
            v[0] = a / w[0];
            generators.push(Degree {
                value: v,
                component: Some(g.component.unwrap_or(i)),
            });
        }
        let tie = match self.tie {
            TieOrder::None => TieOrder::TermOverPosition,
            t => t,
        };
        let fine = ModuleGrading {
            ring: fine_ring,
            generators,
            tie,
        };
        let map = RefinementMap::new(fine.clone(), self.clone(), vec![w])?;
        Ok((fine, map))
    }
}

/// A refinement `B' -> B` given by a linear map on ring degree vectors.
#[derive(Clone, Debug)]
pub struct RefinementMap {
    source: ModuleGrading,
    target: ModuleGrading,
    ring_map: Vec<Vec<i64>>,
}

impl RefinementMap {
    /// Checks that the map sends the source degree of every variable and every
    /// basis vector to its target degree.
    pub fn new(source: ModuleGrading, target: ModuleGrading, ring_map: Vec<Vec<i64>>) -> Result<Self> {
        let map = RefinementMap {
            source,
            target,
            ring_map,
        };
        let (s, t) = (&map.source, &map.target);
        if s.nvars() != t.nvars() || s.rank() != t.rank() {
            return Err(Error::usage("refinement between incompatible modules"));
        }
        if map.ring_map.len() != t.ring.degree_rank()
            || map.ring_map.iter().any(|r| r.len() != s.ring.degree_rank())
        {
            return Err(Error::usage("refinement matrix has the wrong shape"));
        }
        for j in 0..s.nvars() {
            let v = Monomial::var(s.nvars(), j);
            if map.apply_ring(&s.ring.monomial_degree(&v)) != t.ring.monomial_degree(&v) {
                return Err(Error::usage(format!(
                    "refinement does not map the degree of variable {}",
                    j + 1
                )));
            }
        }
        for (gs, gt) in s.generators.iter().zip(&t.generators) {
            if map.apply(gs) != *gt {
                return Err(Error::usage("refinement does not map the basis degrees"));
            }
        }
        Ok(map)
    }

    pub fn source(&self) -> &ModuleGrading {
        &self.source
    }

    pub fn target(&self) -> &ModuleGrading {
        &self.target
    }

    pub fn apply_ring(&self, a: &[i64]) -> Vec<i64> {
        self.ring_map
            .iter()
            .map(|row| row.iter().zip(a).map(|(w, x)| w * x).sum())
            .collect()
    }

    pub fn apply(&self, b: &Degree) -> Degree {
        Degree {
            value: self.apply_ring(&b.value),
            component: if self.target.tie == TieOrder::None {
                None
            } else {
                b.component
            },
        }
    }

    /// Samples term pairs and checks monotonicity and `f(a) . g(b) = g(a . b)`.
    pub fn check_sampled(&self, samples: usize, max_exponent: u32, seed: u64) -> std::result::Result<(), String> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = self.source.nvars();
        let n = self.source.rank();
        let random_mon = |rng: &mut ChaCha8Rng| {
            Monomial::new((0..d).map(|_| rng.gen_range(0..=max_exponent)).collect())
        };
        for _ in 0..samples {
            let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
            let (m1, m2) = (random_mon(&mut rng), random_mon(&mut rng));
            let b1 = self.source.term_degree(i, &m1);
            let b2 = self.source.term_degree(j, &m2);
            let fine = self.source.compare(&b1, &b2);
            let coarse = self.target.compare(&self.apply(&b1), &self.apply(&b2));
            if fine == Ordering::Less && coarse == Ordering::Greater
                || fine == Ordering::Greater && coarse == Ordering::Less
            {
                return Err(format!("not monotone on {b1} vs {b2}"));
            }
            let a = self.source.ring.monomial_degree(&m2);
            let lhs = self.apply(&self.source.act(&a, &b1));
            let rhs = self.target.act(&self.apply_ring(&a), &self.apply(&b1));
            if lhs != rhs {
                return Err(format!("incompatible action at {b1}"));
            }
        }
        Ok(())
    }
}

/// Outcome of [`verify_monoid_order`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidOrderReport {
    pub checks: Vec<(String, bool)>,
}

impl MonoidOrderReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }

    pub fn failures(&self) -> Vec<&str> {
        self.checks
            .iter()
            .filter(|(_, ok)| !ok)
            .map(|(n, _)| n.as_str())
            .collect()
    }
}

/// Checks that a ring grading induces a total, translation-invariant monoid
/// order with zero strictly minimal.
///
/// Structural part: the order matrix is invertible over the rationals and each
/// column of `O W` is lexicographically positive. This is sufficient, not
/// necessary, for a well-order.
pub fn verify_monoid_order(grading: &RingGrading, sample_budget: usize, seed: u64) -> MonoidOrderReport {
    let mut checks = Vec::new();
    let weights_ok = grading.weights.iter().flatten().all(|&w| w >= 0);
    checks.push(("weights nonnegative".to_string(), weights_ok));
    checks.push((
        "order matrix invertible".to_string(),
        is_invertible(&grading.order),
    ));

    let d = grading.nvars();
    let zero = grading.zero_degree();
    let minimal = (0..d).all(|j| {
        let v = grading.monomial_degree(&Monomial::var(d, j));
        grading.compare_values(&zero, &v) == Ordering::Less
    });
    checks.push(("zero strictly minimal".to_string(), minimal));

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let random = |rng: &mut ChaCha8Rng| {
        let m = Monomial::new((0..d).map(|_| rng.gen_range(0..6)).collect());
        grading.monomial_degree(&m)
    };
    let mut invariant = true;
    let mut total = true;
    for _ in 0..sample_budget {
        let (a, b, c) = (random(&mut rng), random(&mut rng), random(&mut rng));
        let ab = grading.compare_values(&a, &b);
        let shifted = |x: &[i64]| -> Vec<i64> { x.iter().zip(&c).map(|(p, q)| p + q).collect() };
        if grading.compare_values(&shifted(&a), &shifted(&b)) != ab {
            invariant = false;
        }
        if ab == Ordering::Equal && a != b {
            total = false;
        }
        if ab != grading.compare_values(&b, &a).reverse() {
            total = false;
        }
    }
    checks.push(("translation invariance (sampled)".to_string(), invariant));
    checks.push(("antisymmetry (sampled)".to_string(), total));
    MonoidOrderReport { checks }
}

fn is_invertible(m: &[Vec<i64>]) -> bool {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return false;
    }
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .map(|r| r.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
        .collect();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return false;
        };
        a.swap(col, p);
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &a[col][col];
            for c in col..n {
                let sub = &f * &a[col][c];
                a[r][c] -= sub;
            }
        }
    }
    a.iter().enumerate().all(|(i, r)| !r[i].abs().is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compare_examples() {
        let drl = RingGrading::degrevlex(2);
        let lex = RingGrading::lex(2);
        let tot = RingGrading::total(2);
        let a = Degree::vector(vec![2, 0]);
        let b = Degree::vector(vec![1, 2]);
        assert_eq!(drl.compare_degrees(&a, &b).unwrap(), Ordering::Less);
        assert_eq!(lex.compare_degrees(&a, &b).unwrap(), Ordering::Greater);
        assert_eq!(
            tot.compare_degrees(&Degree::scalar(4), &Degree::scalar(4))
                .unwrap(),
            Ordering::Equal
        );
        assert!(tot.compare_degrees(&a, &Degree::scalar(1)).is_err());
    }

    #[test]
    fn monoid_order_checks() {
        assert!(verify_monoid_order(&RingGrading::degrevlex(3), 200, 1).passed());
        assert!(verify_monoid_order(&RingGrading::total(3), 200, 1).passed());
        assert!(verify_monoid_order(&RingGrading::elimination(vec![false, true]), 200, 1).passed());
        let bad = RingGrading::matrix(vec![vec![-1, 0], vec![0, 1]]).unwrap();
        let report = verify_monoid_order(&bad, 200, 1);
        assert!(!report.passed());
        assert!(report.failures().contains(&"zero strictly minimal"));
        let singular = RingGrading::matrix(vec![vec![1, 1], vec![1, 1]]).unwrap();
        assert!(!verify_monoid_order(&singular, 50, 1).passed());
    }

    #[test]
    fn refinement_examples() {
        let coarse = ModuleGrading::ideal(RingGrading::total(2));
        let (fine, map) = coarse.monomial_refinement().unwrap();
        assert_eq!(map.apply_ring(&[2, 3]), vec![5]);
        assert_eq!(map.apply_ring(&[0, 0]), vec![0]);
        let b = fine.term_degree(0, &Monomial::new(vec![2, 3]));
        assert_eq!(map.apply(&b), Degree::scalar(5));
        assert!(map.check_sampled(300, 5, 7).is_ok());
    }

    #[test]
    fn syzygy_grading_degree() {
        let syz = ModuleGrading::syzygy(
            RingGrading::total(2),
            vec![Degree::scalar(2), Degree::scalar(4)],
            TieOrder::None,
        );
        assert_eq!(
            syz.term_degree(0, &Monomial::new(vec![0, 2])),
            Degree::scalar(4)
        );
    }

    #[test]
    fn multiplier_examples() {
        let total = ModuleGrading::ideal(RingGrading::total(2));
        let m = total.enumerate_multipliers(&Degree::scalar(2), &Degree::scalar(3));
        assert_eq!(m, vec![Monomial::new(vec![1, 0]), Monomial::new(vec![0, 1])]);
        assert!(total
            .enumerate_multipliers(&Degree::scalar(4), &Degree::scalar(3))
            .is_empty());
        let drl = ModuleGrading::ideal(RingGrading::degrevlex(2));
        let m = drl.enumerate_multipliers(&Degree::vector(vec![2, 0]), &Degree::vector(vec![2, 2]));
        assert_eq!(m, vec![Monomial::new(vec![0, 2])]);
    }

    #[test]
    fn tie_orders() {
        let ring = RingGrading::degrevlex(2);
        let pot = ModuleGrading::free(ring.clone(), 2, TieOrder::PositionOverTerm);
        let top = ModuleGrading::free(ring, 2, TieOrder::TermOverPosition);
        let x = Monomial::new(vec![1, 0]);
        let one = Monomial::one(2);
        // POT: anything in e1 beats anything in e2.
        assert_eq!(
            pot.compare(&pot.term_degree(0, &one), &pot.term_degree(1, &x)),
            Ordering::Greater
        );
        // TOP: the monomial decides first.
        assert_eq!(
            top.compare(&top.term_degree(0, &one), &top.term_degree(1, &x)),
            Ordering::Less
        );
        assert_eq!(
            top.compare(&top.term_degree(0, &x), &top.term_degree(1, &x)),
            Ordering::Greater
        );
    }
}

//! Sparse polynomials and elements of free modules.
//!
//! Terms are stored in a `BTreeMap` keyed by [`Monomial`], whose `Ord` is
//! degrevlex. Iteration order is therefore fixed and independent of whatever
//! grading is in use; gradings only decide how terms are grouped.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::ops::{Add, Mul, Neg, Sub};

use crate::coeff::{FieldSpec, Scalar};
use crate::error::{Error, Result};
use crate::grading::{Degree, ModuleGrading};

/// An exponent vector `x^a`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        self.divides(other)
            .then(|| Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect()))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }
}

impl Ord for Monomial {
    /// Degree reverse lexicographic.
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| {
                for (a, b) in self.0.iter().zip(&other.0).rev() {
                    if a != b {
                        return b.cmp(a);
                    }
                }
                Ordering::Equal
            })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial with no stored zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Scalar>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn constant(c: Scalar, nvars: usize) -> Self {
        Polynomial::term(Monomial::one(nvars), c)
    }

    pub fn term(m: Monomial, c: Scalar) -> Self {
        let mut p = Polynomial::zero();
        p.add_term(m, c);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Self {
        let mut p = Polynomial::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
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

    /// Terms from the largest monomial (degrevlex) down.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> + '_ {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&Scalar> {
        self.terms.get(m)
    }

    pub fn field(&self) -> Option<FieldSpec> {
        self.terms.values().next().map(Scalar::field)
    }

    /// Adds `c * m` in place.
    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let sum = &*existing + &c;
                if sum.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), a * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32, nvars: usize, field: FieldSpec) -> Polynomial {
        let mut acc = Polynomial::constant(field.one(), nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Substitutes `images[j]` for the `j`-th variable.
    pub fn compose(&self, images: &[Polynomial], nvars: usize, field: FieldSpec) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(c.clone(), nvars);
            for (j, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t = &t * &images[j].pow(e, nvars, field);
                }
            }
            out = &out + &t;
        }
        out
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().map(Monomial::total_degree).max()
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            for (n, d) in &rhs.terms {
                out.add_term(m.mul(n), c * d);
            }
        }
        out
    }
}

/// An element of the free module `R^n`, one polynomial per coordinate.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ModuleElement {
    components: Vec<Polynomial>,
}

impl ModuleElement {
    pub fn zero(rank: usize) -> Self {
        ModuleElement {
            components: vec![Polynomial::zero(); rank],
        }
    }

    pub fn new(components: Vec<Polynomial>) -> Self {
        ModuleElement { components }
    }

    /// A rank-one element, i.e. a polynomial viewed in `R^1`.
    pub fn from_poly(p: Polynomial) -> Self {
        ModuleElement {
            components: vec![p],
        }
    }

    /// `p * e_i` in `R^rank`.
    pub fn unit(rank: usize, i: usize, p: Polynomial) -> Self {
        let mut e = ModuleElement::zero(rank);
        e.components[i] = p;
        e
    }

    pub fn rank(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &Polynomial {
        &self.components[i]
    }

    pub fn into_components(self) -> Vec<Polynomial> {
        self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Polynomial::is_zero)
    }

    pub fn term_count(&self) -> usize {
        self.components.iter().map(Polynomial::len).sum()
    }

    pub fn field(&self) -> Option<FieldSpec> {
        self.components.iter().find_map(Polynomial::field)
    }

    /// All terms as `(component, monomial, coefficient)`, component-major.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &Monomial, &Scalar)> + '_ {
        self.components
            .iter()
            .enumerate()
            .flat_map(|(i, p)| p.terms().map(move |(m, c)| (i, m, c)))
    }

    pub fn add_term(&mut self, i: usize, m: Monomial, c: Scalar) {
        self.components[i].add_term(m, c);
    }

    pub fn checked_add(&self, other: &ModuleElement) -> Result<ModuleElement> {
        self.check_rank(other)?;
        Ok(ModuleElement {
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn checked_sub(&self, other: &ModuleElement) -> Result<ModuleElement> {
        self.check_rank(other)?;
        Ok(ModuleElement {
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    fn check_rank(&self, other: &ModuleElement) -> Result<()> {
        if self.rank() != other.rank() {
            return Err(Error::usage(format!(
                "rank mismatch: {} vs {}",
                self.rank(),
                other.rank()
            )));
        }
        Ok(())
    }

    pub fn scale(&self, c: &Scalar) -> ModuleElement {
        ModuleElement {
            components: self.components.iter().map(|p| p.scale(c)).collect(),
        }
    }

    /// The ring action `r * m`.
    pub fn mul_poly(&self, r: &Polynomial) -> ModuleElement {
        ModuleElement {
            components: self.components.iter().map(|p| p * r).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Scalar) -> ModuleElement {
        ModuleElement {
            components: self.components.iter().map(|p| p.mul_term(m, c)).collect(),
        }
    }

    /// Coefficient of the first term in component-major, descending order.
    pub fn first_coefficient(&self) -> Option<&Scalar> {
        self.terms().next().map(|(_, _, c)| c)
    }

    /// Scales so the first term has coefficient one.
    pub fn monic(&self) -> ModuleElement {
        match self.first_coefficient() {
            Some(c) if !c.is_one() => self.scale(&c.inv().expect("nonzero coefficient")),
            _ => self.clone(),
        }
    }

    /// `sum_i coeffs[i] * gens[i]` for polynomial coefficients.
    pub fn combination(coeffs: &[Polynomial], gens: &[ModuleElement], rank: usize) -> ModuleElement {
        let mut out = ModuleElement::zero(rank);
        for (r, g) in coeffs.iter().zip(gens) {
            if !r.is_zero() {
                out = &out + &g.mul_poly(r);
            }
        }
        out
    }
}

impl Add for &ModuleElement {
    type Output = ModuleElement;
    fn add(self, rhs: &ModuleElement) -> ModuleElement {
        self.checked_add(rhs).expect("module addition")
    }
}

impl Sub for &ModuleElement {
    type Output = ModuleElement;
    fn sub(self, rhs: &ModuleElement) -> ModuleElement {
        self.checked_sub(rhs).expect("module subtraction")
    }
}

impl Neg for &ModuleElement {
    type Output = ModuleElement;
    fn neg(self) -> ModuleElement {
        ModuleElement {
            components: self.components.iter().map(|p| -p).collect(),
        }
    }
}

/// A homogeneous element together with its degree.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HomogeneousPart {
    pub degree: Degree,
    pub element: ModuleElement,
}

/// Splits `m` into homogeneous parts, sorted by descending degree.
pub fn homogeneous_components(m: &ModuleElement, grading: &ModuleGrading) -> Vec<HomogeneousPart> {
    let mut parts: HashMap<Degree, ModuleElement> = HashMap::new();
    for (i, mon, c) in m.terms() {
        let d = grading.term_degree(i, mon);
        parts
            .entry(d)
            .or_insert_with(|| ModuleElement::zero(m.rank()))
            .add_term(i, mon.clone(), c.clone());
    }
    let mut out: Vec<HomogeneousPart> = parts
        .into_iter()
        .map(|(degree, element)| HomogeneousPart { degree, element })
        .collect();
    out.sort_by(|a, b| grading.compare(&b.degree, &a.degree));
    out
}

/// `deg m`, or `None` for zero.
pub fn degree(m: &ModuleElement, grading: &ModuleGrading) -> Option<Degree> {
    m.terms()
        .map(|(i, mon, _)| grading.term_degree(i, mon))
        .max_by(|a, b| grading.compare(a, b))
}

/// `lf m`, the top homogeneous part. Undefined for zero.
pub fn leading_form(m: &ModuleElement, grading: &ModuleGrading) -> Result<HomogeneousPart> {
    let top = degree(m, grading)
        .ok_or_else(|| Error::usage("leading form of the zero element is undefined"))?;
    let mut element = ModuleElement::zero(m.rank());
    for (i, mon, c) in m.terms() {
        if grading.term_degree(i, mon) == top {
            element.add_term(i, mon.clone(), c.clone());
        }
    }
    Ok(HomogeneousPart {
        degree: top,
        element,
    })
}

/// The degree of `m` if it is nonzero and homogeneous.
pub fn homogeneous_degree(m: &ModuleElement, grading: &ModuleGrading) -> Option<Degree> {
    let mut it = m.terms().map(|(i, mon, _)| grading.term_degree(i, mon));
    let first = it.next()?;
    it.all(|d| d == first).then_some(first)
}

//! Finite groups acting on the ring by affine substitutions of variables,
//! extended to free modules componentwise.
//!
//! An element `g` is stored by the images of the variables: `g` sends `x_j`
//! to `sum_i a[i][j] x_i + b[j]`, and acts on polynomials by substitution.
//! The product `gh` is defined so that `act(gh, m) = act(g, act(h, m))`.

use std::collections::HashSet;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::coeff::{FieldSpec, Scalar};
use crate::error::{Error, Result};
use crate::gradlin::{ComplementPolicy, Echelon, GradedSubspace};
use crate::grading::{Degree, RingGrading};
use crate::macbasis::MacaulayBasis;
use crate::polymod::{ModuleElement, Monomial, Polynomial};
use crate::sample::SampleShape;

/// Default cap on the size of an enumerated group.
pub const DEFAULT_ELEMENT_CAP: usize = 1024;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupElement {
    /// `linear[i][j]`: coefficient of `x_i` in the image of `x_j`.
    linear: Vec<Vec<Scalar>>,
    translation: Vec<Scalar>,
}

impl GroupElement {
    pub fn identity(nvars: usize, field: FieldSpec) -> Self {
        GroupElement {
            linear: (0..nvars)
                .map(|i| {
                    (0..nvars)
                        .map(|j| if i == j { field.one() } else { field.zero() })
                        .collect()
                })
                .collect(),
            translation: vec![field.zero(); nvars],
        }
    }

    /// The substitution with matrix columns as variable images.
    pub fn affine(linear: Vec<Vec<Scalar>>, translation: Vec<Scalar>, field: FieldSpec) -> Result<Self> {
        let d = linear.len();
        if linear.iter().any(|r| r.len() != d) || translation.len() != d {
            return Err(Error::usage("substitution matrix must be square"));
        }
        let mut ech = Echelon::new(field, d);
        for row in &linear {
            ech.insert(row);
        }
        if ech.rank() != d {
            return Err(Error::usage("substitution matrix is singular"));
        }
        Ok(GroupElement {
            linear,
            translation,
        })
    }

    pub fn linear(linear: Vec<Vec<Scalar>>, field: FieldSpec) -> Result<Self> {
        let d = linear.len();
        GroupElement::affine(linear, vec![field.zero(); d], field)
    }

    /// `x_j -> x_{perm[j]}` (zero-based).
    pub fn permutation(perm: &[usize], field: FieldSpec) -> Result<Self> {
        let signed: Vec<(usize, bool)> = perm.iter().map(|&p| (p, false)).collect();
        GroupElement::signed_permutation(&signed, field)
    }

    /// `x_j -> +-x_{images[j].0}`, negated when `images[j].1`.
    pub fn signed_permutation(images: &[(usize, bool)], field: FieldSpec) -> Result<Self> {
        let d = images.len();
        let mut seen = vec![false; d];
        let mut linear = vec![vec![field.zero(); d]; d];
        for (j, &(i, neg)) in images.iter().enumerate() {
            if i >= d || seen[i] {
                return Err(Error::usage("not a permutation"));
            }
            seen[i] = true;
            linear[i][j] = if neg { field.from_i64(-1) } else { field.one() };
        }
        GroupElement::linear(linear, field)
    }

    pub fn nvars(&self) -> usize {
        self.linear.len()
    }

    pub fn is_linear(&self) -> bool {
        self.translation.iter().all(Scalar::is_zero)
    }

    /// Each image is a single variable with coefficient `1` or `-1`.
    pub fn is_signed_permutation(&self) -> bool {
        self.is_linear()
            && (0..self.nvars()).all(|j| {
                let col: Vec<&Scalar> = self.linear.iter().map(|r| &r[j]).filter(|c| !c.is_zero()).collect();
                col.len() == 1 && (col[0].is_one() || (-col[0]).is_one())
            })
    }

    /// Images of the variables as polynomials.
    pub fn images(&self) -> Vec<Polynomial> {
        let d = self.nvars();
        (0..d)
            .map(|j| {
                let mut p = Polynomial::zero();
                for i in 0..d {
                    p.add_term(Monomial::var(d, i), self.linear[i][j].clone());
                }
                p.add_term(Monomial::one(d), self.translation[j].clone());
                p
            })
            .collect()
    }

    fn from_images(images: &[Polynomial], field: FieldSpec) -> Self {
        let d = images.len();
        let coeff = |p: &Polynomial, m: &Monomial| p.coefficient(m).cloned().unwrap_or_else(|| field.zero());
        GroupElement {
            linear: (0..d)
                .map(|i| images.iter().map(|p| coeff(p, &Monomial::var(d, i))).collect())
                .collect(),
            translation: images.iter().map(|p| coeff(p, &Monomial::one(d))).collect(),
        }
    }

    pub fn act_poly(&self, p: &Polynomial, field: FieldSpec) -> Polynomial {
        p.compose(&self.images(), self.nvars(), field)
    }

    pub fn act(&self, m: &ModuleElement, field: FieldSpec) -> ModuleElement {
        let images = self.images();
        ModuleElement::new(
            m.components()
                .iter()
                .map(|p| p.compose(&images, self.nvars(), field))
                .collect(),
        )
    }

    /// `gh`, with `act(gh, m) = act(g, act(h, m))`.
    pub fn compose(&self, h: &GroupElement, field: FieldSpec) -> GroupElement {
        let g_images = self.images();
        let images: Vec<Polynomial> = h
            .images()
            .iter()
            .map(|p| p.compose(&g_images, self.nvars(), field))
            .collect();
        GroupElement::from_images(&images, field)
    }
}

/// A finite group given by generators.
#[derive(Clone, Debug)]
pub struct GroupAction {
    nvars: usize,
    field: FieldSpec,
    generators: Vec<GroupElement>,
}

impl GroupAction {
    pub fn new(nvars: usize, field: FieldSpec, generators: Vec<GroupElement>) -> Result<Self> {
        if generators.iter().any(|g| g.nvars() != nvars) {
            return Err(Error::usage("group generator acts on the wrong number of variables"));
        }
        Ok(GroupAction {
            nvars,
            field,
            generators,
        })
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// All group elements, identity first. Fails if more than `cap` appear.
    pub fn closure(&self, cap: usize) -> Result<Vec<GroupElement>> {
        let id = GroupElement::identity(self.nvars, self.field);
        let mut seen: HashSet<GroupElement> = HashSet::from([id.clone()]);
        let mut out = vec![id];
        let mut k = 0;
        while k < out.len() {
            let g = out[k].clone();
            for s in &self.generators {
                let h = g.compose(s, self.field);
                if seen.insert(h.clone()) {
                    if out.len() == cap {
                        return Err(Error::Resource(format!(
                            "group has more than {cap} elements"
                        )));
                    }
                    out.push(h);
                }
            }
            k += 1;
        }
        Ok(out)
    }
}

/// Whether every generator maps each variable to a homogeneous element of the
/// variable's own degree.
pub fn is_homogeneous_action(action: &GroupAction, grading: &RingGrading) -> bool {
    let d = action.nvars;
    action.generators.iter().all(|g| {
        g.images().iter().enumerate().all(|(j, img)| {
            let want = grading.monomial_degree(&Monomial::var(d, j));
            img.terms().all(|(m, _)| grading.monomial_degree(m) == want)
        })
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvarianceWitness {
    pub generator: usize,
    pub element: usize,
    /// `g x_i = sum c_k x_k` when solvable.
    pub coordinates: Option<Vec<Scalar>>,
    /// Part of `g x_i` outside the span otherwise.
    pub residual: Option<ModuleElement>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvarianceReport {
    pub invariant: bool,
    pub witnesses: Vec<InvarianceWitness>,
}

/// Solves `g x_i in span_k(X)` for every generator `g` and every `x_i`.
pub fn span_is_invariant(elements: &[ModuleElement], action: &GroupAction) -> Result<InvarianceReport> {
    let field = action.field;
    let images: Vec<Vec<ModuleElement>> = action
        .generators
        .iter()
        .map(|g| elements.iter().map(|m| g.act(m, field)).collect())
        .collect();
    let mut index: Vec<(usize, Monomial)> = Vec::new();
    let mut seen = HashSet::new();
    for m in elements.iter().chain(images.iter().flatten()) {
        for (i, mon, _) in m.terms() {
            if seen.insert((i, mon.clone())) {
                index.push((i, mon.clone()));
            }
        }
    }
    let pos: std::collections::HashMap<(usize, Monomial), usize> =
        index.iter().cloned().enumerate().map(|(k, t)| (t, k)).collect();
    let coords = |m: &ModuleElement| {
        let mut v = vec![field.zero(); index.len()];
        for (i, mon, c) in m.terms() {
            v[pos[&(i, mon.clone())]] = c.clone();
        }
        v
    };
    let mut ech = Echelon::new(field, index.len());
    for m in elements {
        ech.insert(&coords(m));
    }
    let mut witnesses = Vec::new();
    let mut invariant = true;
    for (gi, imgs) in images.iter().enumerate() {
        for (ei, img) in imgs.iter().enumerate() {
            let v = coords(img);
            let w = match ech.solve(&v) {
                Some(combo) => {
                    let mut c = vec![field.zero(); elements.len()];
                    for (j, s) in combo {
                        c[j] = s;
                    }
                    InvarianceWitness {
                        generator: gi,
                        element: ei,
                        coordinates: Some(c),
                        residual: None,
                    }
                }
                None => {
                    invariant = false;
                    let (r, _) = ech.reduce(&v);
                    let mut res = ModuleElement::zero(img.rank());
                    for ((i, mon), c) in index.iter().zip(r) {
                        res.add_term(*i, mon.clone(), c);
                    }
                    InvarianceWitness {
                        generator: gi,
                        element: ei,
                        coordinates: None,
                        residual: Some(res),
                    }
                }
            };
            witnesses.push(w);
        }
    }
    Ok(InvarianceReport {
        invariant,
        witnesses,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivarianceCounterexample {
    pub generator: usize,
    pub element: ModuleElement,
    /// `nf(g m)`.
    pub lhs: ModuleElement,
    /// `g nf(m)`.
    pub rhs: ModuleElement,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivarianceReport {
    pub samples: usize,
    pub counterexamples: Vec<EquivarianceCounterexample>,
}

impl EquivarianceReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// Tests `nf(g m) = g nf(m)` on `elements`.
///
/// Preconditions, each reported as a usage error: the action is homogeneous,
/// the module is invariant, and the complement is invariant. Orthogonal
/// complements qualify for signed permutations in characteristic zero. Pivot
/// complements are checked directly in every degree up to `max_degree`, which
/// needs one-dimensional degrees.
pub fn check_equivariance_on(
    basis: &MacaulayBasis,
    action: &GroupAction,
    elements: &[ModuleElement],
    max_degree: u32,
    policy: ComplementPolicy,
) -> Result<EquivarianceReport> {
    let field = basis.field();
    let grading = basis.grading();
    if !is_homogeneous_action(action, grading.ring()) {
        return Err(Error::usage("the action is not homogeneous for this grading"));
    }
    policy.check_field(field)?;
    let reducer = basis.reducer();
    for (gi, g) in action.generators.iter().enumerate() {
        for x in basis.elements() {
            if !reducer.reduces_to_zero(&g.act(x, field))?.0 {
                return Err(Error::usage(format!(
                    "the module is not invariant under generator {}",
                    gi + 1
                )));
            }
        }
    }
    match policy {
        ComplementPolicy::Orthogonal => {
            if !action.generators.iter().all(GroupElement::is_signed_permutation) {
                return Err(Error::usage(
                    "orthogonal complements are invariant only under signed permutations",
                ));
            }
        }
        ComplementPolicy::Pivot => {
            if grading.ring().degree_rank() != 1 {
                return Err(Error::usage(
                    "pivot-stability can only be checked for one-dimensional degrees",
                ));
            }
            let shifts: Vec<i64> = grading.generator_degrees().iter().map(|d| d.value[0]).collect();
            let low = shifts.iter().copied().min().unwrap_or(0);
            let top = max_degree as i64 + shifts.iter().copied().max().unwrap_or(0);
            let tags: HashSet<Option<usize>> =
                grading.generator_degrees().iter().map(|d| d.component).collect();
            for n in low..=top {
                for tag in &tags {
                    let b = Degree {
                        value: vec![n],
                        component: *tag,
                    };
                    if !pivot_complement_stable(&reducer.w_space(&b), action, grading.rank()) {
                        return Err(Error::usage(format!(
                            "pivot complement in degree {b} is not invariant"
                        )));
                    }
                }
            }
        }
    }
    let mut counterexamples = Vec::new();
    for m in elements {
        let (nf, _) = reducer.normal_form(m, policy)?;
        for (gi, g) in action.generators.iter().enumerate() {
            let (lhs, _) = reducer.normal_form(&g.act(m, field), policy)?;
            let rhs = g.act(&nf, field);
            if lhs != rhs {
                counterexamples.push(EquivarianceCounterexample {
                    generator: gi,
                    element: m.clone(),
                    lhs,
                    rhs,
                });
            }
        }
    }
    Ok(EquivarianceReport {
        samples: elements.len(),
        counterexamples,
    })
}

/// [`check_equivariance_on`] for `samples` seeded random elements of degree at
/// most `max_degree`.
pub fn check_equivariant_normal_form(
    basis: &MacaulayBasis,
    action: &GroupAction,
    samples: usize,
    max_degree: u32,
    policy: ComplementPolicy,
    seed: u64,
) -> Result<EquivarianceReport> {
    let shape = SampleShape {
        max_terms: 6,
        ..SampleShape::new(action.nvars, max_degree)
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let elements: Vec<ModuleElement> = (0..samples)
        .map(|_| shape.random_element(&mut rng, basis.field(), basis.grading().rank()))
        .collect();
    check_equivariance_on(basis, action, &elements, max_degree, policy)
}

/// Whether each generator maps the span of non-pivot monomials of `w` to itself.
fn pivot_complement_stable(w: &GradedSubspace, action: &GroupAction, rank: usize) -> bool {
    let pivots: HashSet<usize> = w.pivots().iter().copied().collect();
    let ambient = w.ambient();
    for (k, (i, m)) in ambient.terms().iter().enumerate() {
        if pivots.contains(&k) {
            continue;
        }
        let e = ModuleElement::unit(rank, *i, Polynomial::term(m.clone(), action.field.one()));
        for g in &action.generators {
            for (j, mon, _) in g.act(&e, action.field).terms() {
                match ambient.position(j, mon) {
                    Some(p) if !pivots.contains(&p) => {}
                    _ => return false,
                }
            }
        }
    }
    true
}

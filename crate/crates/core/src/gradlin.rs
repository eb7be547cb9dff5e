//! Exact linear algebra inside one graded component `N_b`.
//!
//! Vectors are dense coordinate lists over the monomial basis of `N_b`, ordered
//! by component and then by descending monomial. Subspaces are kept in reduced
//! row-echelon form together with the combination of spanning vectors that
//! produced each row, so membership tests also yield an explicit
//! representation.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use crate::coeff::{FieldSpec, Scalar};
use crate::error::{Error, Result};
use crate::grading::{Degree, ModuleGrading};
use crate::polymod::{ModuleElement, Monomial};

/// The module monomials `x^a e_i` of one degree, in a fixed order.
#[derive(Clone, Debug)]
pub struct ComponentBasis {
    degree: Degree,
    rank: usize,
    terms: Vec<(usize, Monomial)>,
    index: HashMap<(usize, Monomial), usize>,
}

impl ComponentBasis {
    pub fn new(grading: &ModuleGrading, b: &Degree) -> Self {
        let terms = grading.component_terms(b);
        let index = terms
            .iter()
            .enumerate()
            .map(|(k, t)| (t.clone(), k))
            .collect();
        ComponentBasis {
            degree: b.clone(),
            rank: grading.rank(),
            terms,
            index,
        }
    }

    pub fn degree(&self) -> &Degree {
        &self.degree
    }

    pub fn terms(&self) -> &[(usize, Monomial)] {
        &self.terms
    }

    pub fn dim(&self) -> usize {
        self.terms.len()
    }

    pub fn position(&self, i: usize, m: &Monomial) -> Option<usize> {
        self.index.get(&(i, m.clone())).copied()
    }

    /// Coordinates of a homogeneous element of this degree.
    pub fn coordinates(&self, v: &ModuleElement, field: FieldSpec) -> Result<Vec<Scalar>> {
        let mut out = vec![field.zero(); self.dim()];
        for (i, m, c) in v.terms() {
            let k = self.position(i, m).ok_or_else(|| {
                Error::usage(format!("element has a term outside degree {}", self.degree))
            })?;
            out[k] = c.clone();
        }
        Ok(out)
    }

    pub fn element(&self, coords: &[Scalar]) -> ModuleElement {
        let mut out = ModuleElement::zero(self.rank);
        for ((i, m), c) in self.terms.iter().zip(coords) {
            out.add_term(*i, m.clone(), c.clone());
        }
        out
    }
}

/// `component_monomials`: the monomial basis of `N_b`.
pub fn component_monomials(grading: &ModuleGrading, b: &Degree) -> ComponentBasis {
    ComponentBasis::new(grading, b)
}

/// How a complement of `W` inside `N_b` is chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ComplementPolicy {
    /// Span of the non-pivot monomials of the echelon form. Any characteristic.
    Pivot,
    /// Orthogonal complement for the inner product making monomials orthonormal.
    Orthogonal,
}

impl ComplementPolicy {
    pub fn check_field(&self, field: FieldSpec) -> Result<()> {
        if *self == ComplementPolicy::Orthogonal && field.characteristic() != 0 {
            return Err(Error::usage(
                "orthogonal complements need characteristic zero",
            ));
        }
        Ok(())
    }

    /// Orthogonal in characteristic zero, pivot otherwise.
    pub fn default_for(field: FieldSpec) -> Self {
        if field.characteristic() == 0 {
            ComplementPolicy::Orthogonal
        } else {
            ComplementPolicy::Pivot
        }
    }
}

impl fmt::Display for ComplementPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ComplementPolicy::Pivot => "pivot",
            ComplementPolicy::Orthogonal => "orthogonal",
        })
    }
}

impl FromStr for ComplementPolicy {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pivot" => Ok(ComplementPolicy::Pivot),
            "orthogonal" => Ok(ComplementPolicy::Orthogonal),
            _ => Err(Error::usage(format!(
                "unknown complement policy '{s}' (expected pivot or orthogonal)"
            ))),
        }
    }
}

type Combo = BTreeMap<usize, Scalar>;

fn combo_axpy(acc: &mut Combo, c: &Scalar, other: &Combo) {
    for (k, v) in other {
        let add = c * v;
        let entry = acc.entry(*k).or_insert_with(|| add.zero_like());
        *entry = &*entry + &add;
        if entry.is_zero() {
            acc.remove(k);
        }
    }
}

fn axpy(acc: &mut [Scalar], c: &Scalar, other: &[Scalar]) {
    if c.is_zero() {
        return;
    }
    for (a, b) in acc.iter_mut().zip(other) {
        if !b.is_zero() {
            *a = &*a + &(c * b);
        }
    }
}

fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    let mut acc = a[0].zero_like();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc = &acc + &(x * y);
        }
    }
    acc
}

/// An incrementally built reduced row-echelon form with bookkeeping.
///
/// Row `k` equals `sum_j combos[k][j] * input_j`, where `input_j` is the
/// `j`-th vector passed to [`Echelon::insert`].
#[derive(Clone, Debug)]
pub struct Echelon {
    field: FieldSpec,
    ncols: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
    combos: Vec<Combo>,
    inserted: usize,
}

impl Echelon {
    pub fn new(field: FieldSpec, ncols: usize) -> Self {
        Echelon {
            field,
            ncols,
            rows: Vec::new(),
            pivots: Vec::new(),
            combos: Vec::new(),
            inserted: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Combination of inputs producing row `k`, as `(input index, coefficient)`.
    pub fn combination(&self, k: usize) -> impl Iterator<Item = (usize, &Scalar)> + '_ {
        self.combos[k].iter().map(|(j, c)| (*j, c))
    }

    /// Clears pivot coordinates of `v`. Returns the residual and the
    /// coefficients `v[pivot_k]` that were removed.
    pub fn reduce(&self, v: &[Scalar]) -> (Vec<Scalar>, Vec<Scalar>) {
        let mut r = v.to_vec();
        let mut used = Vec::with_capacity(self.rows.len());
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = r[p].clone();
            axpy(&mut r, &-&c, row);
            used.push(c);
        }
        (r, used)
    }

    /// Adds `v` as the next input vector. Returns whether the rank grew.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        let j = self.inserted;
        self.inserted += 1;
        if self.rank() == self.ncols {
            return false;
        }
        let (mut r, used) = self.reduce(v);
        let Some(p) = r.iter().position(|c| !c.is_zero()) else {
            return false;
        };
        let mut combo = Combo::new();
        combo.insert(j, self.field.one());
        for (k, c) in used.iter().enumerate() {
            if !c.is_zero() {
                let neg = -c;
                let other = self.combos[k].clone();
                combo_axpy(&mut combo, &neg, &other);
            }
        }
        let inv = r[p].inv().expect("pivot is nonzero");
        for c in r.iter_mut() {
            *c = &*c * &inv;
        }
        let scaled: Combo = combo.into_iter().map(|(k, c)| (k, &c * &inv)).collect();
        for k in 0..self.rows.len() {
            let c = self.rows[k][p].clone();
            if c.is_zero() {
                continue;
            }
            axpy(&mut self.rows[k], &-&c, &r);
            combo_axpy(&mut self.combos[k], &-&c, &scaled);
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.rows.insert(at, r);
        self.pivots.insert(at, p);
        self.combos.insert(at, scaled);
        true
    }

    /// Expresses `v` in the inputs, or `None` if `v` is not in the span.
    pub fn solve(&self, v: &[Scalar]) -> Option<Combo> {
        let (r, used) = self.reduce(v);
        if r.iter().any(|c| !c.is_zero()) {
            return None;
        }
        let mut out = Combo::new();
        for (k, c) in used.iter().enumerate() {
            if !c.is_zero() {
                combo_axpy(&mut out, c, &self.combos[k]);
            }
        }
        Some(out)
    }
}

/// One term of a decomposition `v = sum c * r * lf(x_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplierTerm {
    pub index: usize,
    pub multiplier: Monomial,
    pub coefficient: Scalar,
}

/// A subspace of `N_b` with a reduced row-echelon basis.
///
/// When built as `W_b(X)`, each spanning vector is labelled by the pair
/// `(i, r)` with `r` a monomial multiplier of `lf(x_i)`.
#[derive(Debug)]
pub struct GradedSubspace {
    ambient: ComponentBasis,
    echelon: Echelon,
    labels: Vec<(usize, Monomial)>,
    orthogonal: OnceLock<Vec<(Vec<Scalar>, Scalar)>>,
}

impl GradedSubspace {
    /// Span of `vectors` (coordinates in `ambient`), each with a label.
    pub fn from_vectors(
        ambient: ComponentBasis,
        field: FieldSpec,
        vectors: impl IntoIterator<Item = ((usize, Monomial), Vec<Scalar>)>,
    ) -> Self {
        let mut echelon = Echelon::new(field, ambient.dim());
        let mut labels = Vec::new();
        for (label, v) in vectors {
            labels.push(label);
            echelon.insert(&v);
            if echelon.rank() == ambient.dim() {
                break;
            }
        }
        GradedSubspace {
            ambient,
            echelon,
            labels,
            orthogonal: OnceLock::new(),
        }
    }

    /// `W_b(X) = span{ r * lf(x_i) : deg(r x_i) = b }` for homogeneous leading forms.
    pub fn w_space(
        grading: &ModuleGrading,
        leading: &[(Degree, ModuleElement)],
        b: &Degree,
        field: FieldSpec,
    ) -> Self {
        let ambient = ComponentBasis::new(grading, b);
        let one = field.one();
        let mut vectors = Vec::new();
        if ambient.dim() > 0 {
            for (i, (d, lf)) in leading.iter().enumerate() {
                for r in grading.enumerate_multipliers(d, b) {
                    let v = lf.mul_term(&r, &one);
                    let coords = ambient
                        .coordinates(&v, field)
                        .expect("multiplied leading form lies in the component");
                    vectors.push(((i, r), coords));
                }
            }
        }
        GradedSubspace::from_vectors(ambient, field, vectors)
    }

    pub fn degree(&self) -> &Degree {
        self.ambient.degree()
    }

    pub fn ambient(&self) -> &ComponentBasis {
        &self.ambient
    }

    pub fn dim(&self) -> usize {
        self.echelon.rank()
    }

    pub fn field(&self) -> FieldSpec {
        self.echelon.field
    }

    pub fn rows(&self) -> &[Vec<Scalar>] {
        self.echelon.rows()
    }

    pub fn pivots(&self) -> &[usize] {
        self.echelon.pivots()
    }

    pub fn echelon(&self) -> &Echelon {
        &self.echelon
    }

    /// Echelon rows as module elements.
    pub fn basis(&self) -> Vec<ModuleElement> {
        self.rows().iter().map(|r| self.ambient.element(r)).collect()
    }

    pub fn coordinates(&self, v: &ModuleElement) -> Result<Vec<Scalar>> {
        self.ambient.coordinates(v, self.field())
    }

    pub fn contains(&self, v: &ModuleElement) -> Result<bool> {
        let coords = self.coordinates(v)?;
        Ok(self.echelon.reduce(&coords).0.iter().all(Scalar::is_zero))
    }

    /// `decompose_in_w`: `v = sum c * r * lf(x_i)`, ordered by spanning vector.
    pub fn decompose(&self, v: &ModuleElement) -> Result<Vec<MultiplierTerm>> {
        let coords = self.coordinates(v)?;
        let combo = self.echelon.solve(&coords).ok_or_else(|| {
            Error::Membership(format!("element is not in W_{}", self.degree()))
        })?;
        Ok(combo
            .into_iter()
            .map(|(j, c)| {
                let (index, multiplier) = self.labels[j].clone();
                MultiplierTerm {
                    index,
                    multiplier,
                    coefficient: c,
                }
            })
            .collect())
    }

    /// The component of `v` in the chosen complement, along this subspace.
    pub fn project_complement(&self, v: &ModuleElement, policy: ComplementPolicy) -> Result<ModuleElement> {
        policy.check_field(self.field())?;
        let coords = self.coordinates(v)?;
        let projected = match policy {
            ComplementPolicy::Pivot => self.echelon.reduce(&coords).0,
            ComplementPolicy::Orthogonal => {
                let mut r = coords.clone();
                for (u, norm) in self.orthogonal_basis() {
                    let c = dot(&coords, u).div(norm);
                    axpy(&mut r, &-&c, u);
                }
                r
            }
        };
        Ok(self.ambient.element(&projected))
    }

    /// Gram-Schmidt on the echelon rows, with squared norms.
    fn orthogonal_basis(&self) -> &[(Vec<Scalar>, Scalar)] {
        self.orthogonal.get_or_init(|| {
            let mut out: Vec<(Vec<Scalar>, Scalar)> = Vec::new();
            for row in self.rows() {
                let mut u = row.clone();
                for (w, norm) in &out {
                    let c = dot(row, w).div(norm);
                    axpy(&mut u, &-&c, w);
                }
                let norm = dot(&u, &u);
                out.push((u, norm));
            }
            out
        })
    }
}

/// Expands a decomposition back into `sum c * r * x_i` for full elements.
pub fn expand(terms: &[MultiplierTerm], elements: &[ModuleElement], rank: usize) -> ModuleElement {
    let mut out = ModuleElement::zero(rank);
    for t in terms {
        out = &out + &elements[t.index].mul_term(&t.multiplier, &t.coefficient);
    }
    out
}

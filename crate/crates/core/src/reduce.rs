//! Reduction of module elements modulo a finite set `X`.
//!
//! Two relations are provided. In span mode (`->`) a step removes the largest
//! homogeneous component of `m` that lies in `W_b(X)`. In complement mode
//! (`=>`) a step replaces the largest component not already in the chosen
//! complement of `W_b(X)` by its projection onto that complement. Both always
//! act on the highest possible degree, so every reduction is deterministic.

use std::cmp::Ordering;
use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::hash::{Hash, Hasher};
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};
use std::sync::{Arc, RwLock};

use crate::coeff::FieldSpec;
use crate::error::{Error, Result};
use crate::gradlin::{expand, ComplementPolicy, GradedSubspace, MultiplierTerm};
use crate::grading::{Degree, ModuleGrading};
use crate::polymod::{degree, homogeneous_components, leading_form, ModuleElement, Polynomial};

static NEXT_VERSION: AtomicU64 = AtomicU64::new(1);

fn fresh_version() -> u64 {
    NEXT_VERSION.fetch_add(1, AtomicOrdering::Relaxed)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    /// `->`: subtract components lying in `W_b(X)`.
    Span,
    /// `=>`: project components onto the complement of `W_b(X)`.
    Complement,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionStep {
    pub degree: Degree,
    pub multipliers: Vec<MultiplierTerm>,
    /// Hash of the element after this step.
    pub remainder_hash: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionTrace {
    pub steps: Vec<ReductionStep>,
    pub final_element: ModuleElement,
    /// `r_i` with `input = final + sum r_i x_i`.
    pub representation: Vec<Polynomial>,
}

impl ReductionTrace {
    pub fn is_zero(&self) -> bool {
        self.final_element.is_zero()
    }

    /// Checks `input = final + sum r_i x_i`, strictly decreasing offending
    /// degrees and `deg(r_i x_i) <= deg(input)`.
    pub fn verify(&self, input: &ModuleElement, reducer: &Reducer) -> std::result::Result<(), String> {
        let g = reducer.grading();
        let combo = ModuleElement::combination(&self.representation, reducer.elements(), input.rank());
        if &(&self.final_element + &combo) != input {
            return Err("input differs from final + sum r_i x_i".into());
        }
        for w in self.steps.windows(2) {
            if g.compare(&w[1].degree, &w[0].degree) != Ordering::Less {
                return Err(format!(
                    "offending degrees {} then {} do not decrease",
                    w[0].degree, w[1].degree
                ));
            }
        }
        if let Some(top) = degree(input, g) {
            for (r, x) in self.representation.iter().zip(reducer.elements()) {
                if let Some(d) = degree(&x.mul_poly(r), g) {
                    if g.compare(&d, &top) == Ordering::Greater {
                        return Err(format!("deg r_i x_i = {d} exceeds deg m = {top}"));
                    }
                }
            }
        }
        Ok(())
    }
}

fn element_hash(m: &ModuleElement) -> u64 {
    let mut h = DefaultHasher::new();
    m.hash(&mut h);
    h.finish()
}

/// A finite set `X` with its leading forms and a cache of `W_b(X)`.
#[derive(Debug)]
pub struct Reducer {
    grading: ModuleGrading,
    field: FieldSpec,
    elements: Vec<ModuleElement>,
    leading: Vec<(Degree, ModuleElement)>,
    version: u64,
    cache: RwLock<HashMap<(u64, Degree), Arc<GradedSubspace>>>,
}

impl Clone for Reducer {
    fn clone(&self) -> Self {
        Reducer {
            grading: self.grading.clone(),
            field: self.field,
            elements: self.elements.clone(),
            leading: self.leading.clone(),
            version: self.version,
            cache: RwLock::new(self.cache.read().expect("cache lock").clone()),
        }
    }
}

impl Reducer {
    pub fn new(elements: Vec<ModuleElement>, grading: ModuleGrading, field: FieldSpec) -> Result<Self> {
        let mut r = Reducer {
            grading,
            field,
            elements: Vec::new(),
            leading: Vec::new(),
            version: fresh_version(),
            cache: RwLock::new(HashMap::new()),
        };
        for m in elements {
            r.push(m)?;
        }
        Ok(r)
    }

    /// Adds an element to `X`. Invalidates cached `W` spaces.
    pub fn push(&mut self, m: ModuleElement) -> Result<()> {
        if m.rank() != self.grading.rank() {
            return Err(Error::usage(format!(
                "element of rank {} in a module of rank {}",
                m.rank(),
                self.grading.rank()
            )));
        }
        if let Some(f) = m.field() {
            if f != self.field {
                return Err(Error::usage(format!(
                    "element over {f} in a module over {}",
                    self.field
                )));
            }
        }
        let lf = leading_form(&m, &self.grading)
            .map_err(|_| Error::usage("reduction set contains the zero element"))?;
        self.leading.push((lf.degree, lf.element));
        self.elements.push(m);
        self.version = fresh_version();
        self.cache.write().expect("cache lock").clear();
        Ok(())
    }

    pub fn grading(&self) -> &ModuleGrading {
        &self.grading
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn elements(&self) -> &[ModuleElement] {
        &self.elements
    }

    pub fn leading_forms(&self) -> &[(Degree, ModuleElement)] {
        &self.leading
    }

    pub fn version(&self) -> u64 {
        self.version
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// `W_b(X)`, cached per version of `X`.
    pub fn w_space(&self, b: &Degree) -> Arc<GradedSubspace> {
        let key = (self.version, b.clone());
        if let Some(w) = self.cache.read().expect("cache lock").get(&key) {
            return Arc::clone(w);
        }
        let w = Arc::new(GradedSubspace::w_space(
            &self.grading,
            &self.leading,
            b,
            self.field,
        ));
        self.cache
            .write()
            .expect("cache lock")
            .entry(key)
            .or_insert(w)
            .clone()
    }

    /// Whether a homogeneous element lies in `W_{deg v}(X)`.
    pub fn in_w(&self, v: &ModuleElement) -> Result<bool> {
        match degree(v, &self.grading) {
            None => Ok(true),
            Some(b) => self.w_space(&b).contains(v),
        }
    }

    /// One reduction step, or `None` if `m` is already reduced.
    pub fn reduce_step(
        &self,
        m: &ModuleElement,
        mode: Mode,
        policy: ComplementPolicy,
    ) -> Result<Option<(ModuleElement, ReductionStep)>> {
        self.step_below(m, mode, policy, None)
    }

    fn step_below(
        &self,
        m: &ModuleElement,
        mode: Mode,
        policy: ComplementPolicy,
        ceiling: Option<&Degree>,
    ) -> Result<Option<(ModuleElement, ReductionStep)>> {
        for part in homogeneous_components(m, &self.grading) {
            if let Some(c) = ceiling {
                if self.grading.compare(&part.degree, c) != Ordering::Less {
                    continue;
                }
            }
            let w = self.w_space(&part.degree);
            if w.dim() == 0 {
                continue;
            }
            let target = match mode {
                Mode::Span => {
                    if !w.contains(&part.element)? {
                        continue;
                    }
                    part.element
                }
                Mode::Complement => {
                    let proj = w.project_complement(&part.element, policy)?;
                    if proj == part.element {
                        continue;
                    }
                    &part.element - &proj
                }
            };
            let multipliers = w.decompose(&target)?;
            let next = m - &expand(&multipliers, &self.elements, m.rank());
            let step = ReductionStep {
                degree: part.degree,
                multipliers,
                remainder_hash: element_hash(&next),
            };
            return Ok(Some((next, step)));
        }
        Ok(None)
    }

    /// Applies steps until none applies.
    pub fn reduce(&self, m: &ModuleElement, mode: Mode, policy: ComplementPolicy) -> Result<ReductionTrace> {
        if m.rank() != self.grading.rank() {
            return Err(Error::usage("element rank does not match the module"));
        }
        if mode == Mode::Complement {
            policy.check_field(self.field)?;
        }
        let mut cur = m.clone();
        let mut representation = vec![Polynomial::zero(); self.elements.len()];
        let mut steps: Vec<ReductionStep> = Vec::new();
        // Components at or above the last offending degree are final, so the
        // search can resume strictly below it.
        while let Some((next, step)) =
            self.step_below(&cur, mode, policy, steps.last().map(|s| &s.degree))?
        {
            for t in &step.multipliers {
                representation[t.index].add_term(t.multiplier.clone(), t.coefficient.clone());
            }
            cur = next;
            steps.push(step);
        }
        Ok(ReductionTrace {
            steps,
            final_element: cur,
            representation,
        })
    }

    /// The `=>` normal form.
    pub fn normal_form(&self, m: &ModuleElement, policy: ComplementPolicy) -> Result<(ModuleElement, ReductionTrace)> {
        let trace = self.reduce(m, Mode::Complement, policy)?;
        Ok((trace.final_element.clone(), trace))
    }

    /// Whether `m ->* 0`.
    pub fn reduces_to_zero(&self, m: &ModuleElement) -> Result<(bool, ReductionTrace)> {
        let trace = self.reduce(m, Mode::Span, ComplementPolicy::Pivot)?;
        Ok((trace.is_zero(), trace))
    }

    /// Whether every homogeneous component of `m` lies in its complement.
    pub fn is_normal_form(&self, m: &ModuleElement, policy: ComplementPolicy) -> Result<bool> {
        Ok(self.reduce_step(m, Mode::Complement, policy)?.is_none())
    }
}

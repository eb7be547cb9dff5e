//! Macaulay bases: leading-form syzygies, the Buchberger criterion and
//! completion algorithm, interreduction, and lifting of syzygies.

use std::cmp::Ordering;
use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use crate::coeff::FieldSpec;
use crate::error::{Error, Result};
use crate::gradlin::{ComplementPolicy, ComponentBasis, Echelon};
use crate::grading::{Degree, ModuleGrading, RingGrading, TieOrder};
use crate::polymod::{
    degree, homogeneous_components, homogeneous_degree, leading_form, ModuleElement, Polynomial,
};
use crate::reduce::{Mode, Reducer};

/// A relation `sum f_i m_i = 0`, stored as the coefficient vector `(f_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Syzygy {
    pub coordinates: Vec<Polynomial>,
}

impl Syzygy {
    pub fn new(coordinates: Vec<Polynomial>) -> Self {
        Syzygy { coordinates }
    }

    pub fn zero(n: usize) -> Self {
        Syzygy::new(vec![Polynomial::zero(); n])
    }

    pub fn is_zero(&self) -> bool {
        self.coordinates.iter().all(Polynomial::is_zero)
    }

    /// `sum f_i targets_i`.
    pub fn apply(&self, targets: &[ModuleElement], rank: usize) -> ModuleElement {
        ModuleElement::combination(&self.coordinates, targets, rank)
    }

    /// The syzygy as an element of `R^n`.
    pub fn to_element(&self) -> ModuleElement {
        ModuleElement::new(self.coordinates.clone())
    }

    pub fn from_element(m: ModuleElement) -> Self {
        Syzygy::new(m.into_components())
    }
}

/// The grading of `R^n` with `deg(x^a e_i) = deg(x^a) . base[i]`.
pub fn syzygy_grading(grading: &ModuleGrading, base: Vec<Degree>) -> ModuleGrading {
    ModuleGrading::syzygy(grading.ring().clone(), base, grading.tie())
}

/// Scales `m` so the first term of its leading form has coefficient one.
pub fn normalize(m: &ModuleElement, grading: &ModuleGrading) -> ModuleElement {
    match leading_form(m, grading) {
        Ok(lf) => match lf.element.first_coefficient() {
            Some(c) if !c.is_one() => m.scale(&c.inv().expect("nonzero coefficient")),
            _ => m.clone(),
        },
        Err(_) => m.clone(),
    }
}

/// Lcm syzygies of single-term elements, for pairs in the same component.
pub fn monomial_syzygy_generators(terms: &[ModuleElement]) -> Result<Vec<Syzygy>> {
    let mut singles = Vec::with_capacity(terms.len());
    for t in terms {
        let mut it = t.terms();
        match (it.next(), it.next()) {
            (Some((i, m, c)), None) => singles.push((i, m.clone(), c.clone())),
            _ => return Err(Error::usage("monomial syzygies need single-term elements")),
        }
    }
    let n = terms.len();
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let (ia, ma, ca) = &singles[a];
            let (ib, mb, cb) = &singles[b];
            if ia != ib {
                continue;
            }
            let l = ma.lcm(mb);
            let mut s = Syzygy::zero(n);
            s.coordinates[a] = Polynomial::term(
                ma.quotient_of(&l).expect("divides lcm"),
                ca.inv().expect("nonzero coefficient"),
            );
            s.coordinates[b] = Polynomial::term(
                mb.quotient_of(&l).expect("divides lcm"),
                -&cb.inv().expect("nonzero coefficient"),
            );
            out.push(s);
        }
    }
    Ok(out)
}

/// A homogeneous generating set of `Syz(lf_1, ..., lf_n)`.
///
/// Single-term inputs use the lcm pairs. Otherwise a Groebner basis of
/// `{(lf_i, e_i)}` in `N + R^n` is computed for a position-over-term order
/// placing the `N` part first; its elements with zero `N` part generate the
/// syzygies. Each is then split into components under the syzygy grading.
pub fn leading_syzygy_generators(
    lfs: &[ModuleElement],
    grading: &ModuleGrading,
    field: FieldSpec,
) -> Result<Vec<Syzygy>> {
    let mut base = Vec::with_capacity(lfs.len());
    for (i, f) in lfs.iter().enumerate() {
        let d = homogeneous_degree(f, grading).ok_or_else(|| {
            Error::usage(format!("leading form {} is zero or not homogeneous", i + 1))
        })?;
        base.push(d);
    }
    let n = lfs.len();
    let raw = if lfs.iter().all(|f| f.term_count() == 1) {
        monomial_syzygy_generators(lfs)?
    } else {
        extended_module_syzygies(lfs, grading, field)?
    };
    let syz_grading = syzygy_grading(grading, base);
    let mut out: Vec<Syzygy> = Vec::new();
    for s in raw {
        for part in homogeneous_components(&s.to_element(), &syz_grading) {
            let g = Syzygy::from_element(normalize(&part.element, &syz_grading));
            debug_assert_eq!(g.coordinates.len(), n);
            if !out.contains(&g) {
                out.push(g);
            }
        }
    }
    Ok(out)
}

fn extended_module_syzygies(
    lfs: &[ModuleElement],
    grading: &ModuleGrading,
    field: FieldSpec,
) -> Result<Vec<Syzygy>> {
    let r = grading.rank();
    let n = lfs.len();
    let ext = ModuleGrading::free(
        RingGrading::degrevlex(grading.nvars()),
        r + n,
        TieOrder::PositionOverTerm,
    );
    let nvars = grading.nvars();
    let gens: Vec<ModuleElement> = lfs
        .iter()
        .enumerate()
        .map(|(i, f)| {
            let mut comps = f.components().to_vec();
            comps.extend((0..n).map(|j| {
                if i == j {
                    Polynomial::constant(field.one(), nvars)
                } else {
                    Polynomial::zero()
                }
            }));
            ModuleElement::new(comps)
        })
        .collect();
    let config = BuchbergerConfig {
        max_iterations: 10_000,
        degree_cap: None,
        policy: ComplementPolicy::Pivot,
        remainder: Mode::Complement,
    };
    let basis = buchberger_algorithm(&gens, &ext, field, &config)?;
    Ok(basis
        .elements()
        .iter()
        .filter(|m| m.components()[..r].iter().all(Polynomial::is_zero))
        .map(|m| Syzygy::new(m.components()[r..].to_vec()))
        .collect())
}

/// A failing syzygy and the nonzero remainder of its application.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriterionWitness {
    pub syzygy: Syzygy,
    pub remainder: ModuleElement,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriterionReport {
    pub passed: bool,
    /// Number of leading syzygies reduced.
    pub checked: usize,
    pub witness: Option<CriterionWitness>,
}

/// `X` is a Macaulay basis iff every generator `s` of the leading-form
/// syzygies gives `sum s_i x_i ->* 0`.
pub fn buchberger_criterion(
    elements: &[ModuleElement],
    grading: &ModuleGrading,
    field: FieldSpec,
) -> Result<CriterionReport> {
    let reducer = Reducer::new(elements.to_vec(), grading.clone(), field)?;
    criterion_for(&reducer)
}

pub(crate) fn criterion_for(reducer: &Reducer) -> Result<CriterionReport> {
    let lfs: Vec<ModuleElement> = reducer
        .leading_forms()
        .iter()
        .map(|(_, e)| e.clone())
        .collect();
    let syz = leading_syzygy_generators(&lfs, reducer.grading(), reducer.field())?;
    let rank = reducer.grading().rank();
    for (k, s) in syz.iter().enumerate() {
        let m = s.apply(reducer.elements(), rank);
        let (zero, trace) = reducer.reduces_to_zero(&m)?;
        if !zero {
            return Ok(CriterionReport {
                passed: false,
                checked: k + 1,
                witness: Some(CriterionWitness {
                    syzygy: s.clone(),
                    remainder: trace.final_element,
                }),
            });
        }
    }
    Ok(CriterionReport {
        passed: true,
        checked: syz.len(),
        witness: None,
    })
}

/// Caps on the completion loop.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum DegreeCap {
    /// Compared with the module grading's order.
    Degree(Degree),
    /// Largest allowed total degree of any monomial.
    Total(u64),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BuchbergerConfig {
    pub max_iterations: usize,
    pub degree_cap: Option<DegreeCap>,
    pub policy: ComplementPolicy,
    /// How syzygy applications are reduced before being added.
    pub remainder: Mode,
}

impl BuchbergerConfig {
    pub fn new(policy: ComplementPolicy) -> Self {
        BuchbergerConfig {
            max_iterations: 64,
            degree_cap: None,
            policy,
            remainder: Mode::Complement,
        }
    }

    pub fn validate(&self, field: FieldSpec) -> Result<()> {
        if self.max_iterations == 0 {
            return Err(Error::usage("max iterations must be at least 1"));
        }
        self.policy.check_field(field)
    }

    pub fn fingerprint(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.hash(&mut h);
        h.finish()
    }

    fn exceeds_cap(&self, m: &ModuleElement, grading: &ModuleGrading) -> bool {
        match &self.degree_cap {
            None => false,
            Some(DegreeCap::Total(t)) => m.terms().any(|(_, mon, _)| mon.total_degree() > *t),
            Some(DegreeCap::Degree(d)) => degree(m, grading)
                .is_some_and(|b| grading.compare(&b, d) == Ordering::Greater),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Provenance {
    pub generators: Vec<ModuleElement>,
    pub config_hash: u64,
}

#[derive(Clone, Debug)]
pub struct MacaulayBasis {
    elements: Vec<ModuleElement>,
    grading: ModuleGrading,
    field: FieldSpec,
    reduced: bool,
    provenance: Provenance,
}

impl MacaulayBasis {
    /// Wraps elements already known to form a Macaulay basis.
    pub fn from_parts(
        elements: Vec<ModuleElement>,
        grading: ModuleGrading,
        field: FieldSpec,
        reduced: bool,
        provenance: Provenance,
    ) -> Self {
        MacaulayBasis {
            elements,
            grading,
            field,
            reduced,
            provenance,
        }
    }

    /// Checks the criterion and wraps `elements`, or reports the witness.
    pub fn certified(elements: Vec<ModuleElement>, grading: ModuleGrading, field: FieldSpec) -> Result<Self> {
        let elements: Vec<ModuleElement> = elements.into_iter().filter(|m| !m.is_zero()).collect();
        let report = buchberger_criterion(&elements, &grading, field)?;
        if !report.passed {
            return Err(Error::usage("elements fail the Buchberger criterion"));
        }
        Ok(MacaulayBasis {
            provenance: Provenance {
                generators: elements.clone(),
                config_hash: 0,
            },
            elements,
            grading,
            field,
            reduced: false,
        })
    }

    pub fn elements(&self) -> &[ModuleElement] {
        &self.elements
    }

    pub fn into_elements(self) -> Vec<ModuleElement> {
        self.elements
    }

    pub fn grading(&self) -> &ModuleGrading {
        &self.grading
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn reducer(&self) -> Reducer {
        Reducer::new(self.elements.clone(), self.grading.clone(), self.field)
            .expect("basis elements are nonzero and well-formed")
    }

    pub fn criterion(&self) -> Result<CriterionReport> {
        criterion_for(&self.reducer())
    }

    pub fn degrees(&self) -> Vec<Degree> {
        self.elements
            .iter()
            .map(|m| degree(m, &self.grading).expect("nonzero element"))
            .collect()
    }
}

/// State of a completion run, including partial results on failure.
#[derive(Clone, Debug)]
pub struct BuchbergerRun {
    pub elements: Vec<ModuleElement>,
    pub iterations: usize,
    pub outcome: Result<()>,
}

/// The completion loop. Each iteration recomputes the leading syzygies of the
/// current set, reduces their applications, and adds the nonzero remainders
/// whose leading forms are not yet covered by the set.
pub fn run_buchberger(
    generators: &[ModuleElement],
    grading: &ModuleGrading,
    field: FieldSpec,
    config: &BuchbergerConfig,
) -> BuchbergerRun {
    let mut run = BuchbergerRun {
        elements: Vec::new(),
        iterations: 0,
        outcome: Ok(()),
    };
    if let Err(e) = config.validate(field) {
        run.outcome = Err(e);
        return run;
    }
    let start: Vec<ModuleElement> = generators.iter().filter(|m| !m.is_zero()).cloned().collect();
    let mut reducer = match Reducer::new(start, grading.clone(), field) {
        Ok(r) => r,
        Err(e) => {
            run.outcome = Err(e);
            return run;
        }
    };
    let result = (|| -> Result<()> {
        loop {
            if run.iterations == config.max_iterations {
                return Err(Error::Resource(format!(
                    "no Macaulay basis after {} iterations ({} elements so far)",
                    config.max_iterations,
                    reducer.len()
                )));
            }
            run.iterations += 1;
            let lfs: Vec<ModuleElement> = reducer
                .leading_forms()
                .iter()
                .map(|(_, e)| e.clone())
                .collect();
            let syz = leading_syzygy_generators(&lfs, grading, field)?;
            let frozen = reducer.clone();
            let mut added = 0;
            for s in &syz {
                let m = s.apply(frozen.elements(), grading.rank());
                let y = frozen.reduce(&m, config.remainder, config.policy)?.final_element;
                if y.is_zero() {
                    continue;
                }
                let lf = leading_form(&y, grading)?;
                if frozen.in_w(&lf.element)? {
                    return Err(Error::Invariant(
                        "remainder's leading form already lies in W".into(),
                    ));
                }
                if reducer.in_w(&lf.element)? {
                    continue;
                }
                if config.exceeds_cap(&y, grading) {
                    return Err(Error::Resource(format!(
                        "new element of degree {} exceeds the degree cap ({} elements so far)",
                        lf.degree,
                        reducer.len()
                    )));
                }
                reducer.push(normalize(&y, grading))?;
                added += 1;
            }
            if added == 0 {
                return Ok(());
            }
        }
    })();
    run.elements = reducer.elements().to_vec();
    run.outcome = result;
    run
}

/// Completes `generators` to a Macaulay basis of the module they generate.
pub fn buchberger_algorithm(
    generators: &[ModuleElement],
    grading: &ModuleGrading,
    field: FieldSpec,
    config: &BuchbergerConfig,
) -> Result<MacaulayBasis> {
    let run = run_buchberger(generators, grading, field, config);
    run.outcome?;
    Ok(MacaulayBasis {
        elements: run.elements,
        grading: grading.clone(),
        field,
        reduced: false,
        provenance: Provenance {
            generators: generators.to_vec(),
            config_hash: config.fingerprint(),
        },
    })
}

/// Produces the reduced Macaulay basis: every element is in `=>`-normal form
/// with respect to the others.
///
/// Degrees are processed in ascending order. Elements of degree `b` are first
/// reduced by the finished lower part; their leading forms are then brought
/// to a canonical basis jointly (echelon form for pivot complements, and
/// additionally Gram-Schmidt for orthogonal ones). A leftover of lower degree
/// means the input was not a Macaulay basis; it is fed back in and the pass
/// restarts.
pub fn interreduce(basis: &MacaulayBasis, policy: ComplementPolicy) -> Result<MacaulayBasis> {
    let elements = interreduce_elements(basis.elements(), basis.grading(), basis.field(), policy)?;
    Ok(MacaulayBasis {
        elements,
        grading: basis.grading.clone(),
        field: basis.field,
        reduced: true,
        provenance: basis.provenance.clone(),
    })
}

pub fn interreduce_elements(
    elements: &[ModuleElement],
    grading: &ModuleGrading,
    field: FieldSpec,
    policy: ComplementPolicy,
) -> Result<Vec<ModuleElement>> {
    policy.check_field(field)?;
    let mut pending: Vec<ModuleElement> = elements.iter().filter(|m| !m.is_zero()).cloned().collect();
    'restart: loop {
        let mut keyed: Vec<(Degree, ModuleElement)> = pending
            .iter()
            .map(|m| (degree(m, grading).expect("nonzero"), m.clone()))
            .collect();
        keyed.sort_by(|a, b| grading.compare(&a.0, &b.0));
        let mut done = Reducer::new(Vec::new(), grading.clone(), field)?;
        let mut start = 0;
        while start < keyed.len() {
            let b = keyed[start].0.clone();
            let end = start + keyed[start..].iter().take_while(|(d, _)| *d == b).count();
            let mut cands = Vec::new();
            let mut leftovers = Vec::new();
            for (_, x) in &keyed[start..end] {
                let (nf, _) = done.normal_form(x, policy)?;
                match degree(&nf, grading) {
                    None => {}
                    Some(d) if d == b => cands.push(nf),
                    Some(_) => leftovers.push(nf),
                }
            }
            let (tops, rest) = canonical_tops(&cands, grading, &b, field, policy)?;
            leftovers.extend(rest);
            if !leftovers.is_empty() {
                pending = done.elements().to_vec();
                pending.extend(tops);
                pending.extend(leftovers);
                pending.extend(keyed[end..].iter().map(|(_, m)| m.clone()));
                continue 'restart;
            }
            for t in tops {
                done.push(t)?;
            }
            start = end;
        }
        return Ok(done.elements().to_vec());
    }
}

/// Canonical basis of the span of candidates whose leading forms share degree
/// `b`. Returns the new elements and any nonzero lower-degree leftovers.
fn canonical_tops(
    cands: &[ModuleElement],
    grading: &ModuleGrading,
    b: &Degree,
    field: FieldSpec,
    policy: ComplementPolicy,
) -> Result<(Vec<ModuleElement>, Vec<ModuleElement>)> {
    if cands.is_empty() {
        return Ok((Vec::new(), Vec::new()));
    }
    let ambient = ComponentBasis::new(grading, b);
    let rank = grading.rank();
    let top = |m: &ModuleElement| -> Result<Vec<crate::coeff::Scalar>> {
        ambient.coordinates(&leading_form(m, grading)?.element, field)
    };
    let mut ech = Echelon::new(field, ambient.dim());
    let mut tops = Vec::with_capacity(cands.len());
    for c in cands {
        let t = top(c)?;
        ech.insert(&t);
        tops.push(t);
    }
    let combine = |terms: &mut dyn Iterator<Item = (usize, &crate::coeff::Scalar)>| {
        let mut out = ModuleElement::zero(rank);
        for (j, c) in terms {
            out = &out + &cands[j].scale(c);
        }
        out
    };
    let mut rows: Vec<ModuleElement> = (0..ech.rank())
        .map(|k| combine(&mut ech.combination(k)))
        .collect();

    // Dependent candidates must vanish once their leading forms are removed.
    let mut leftovers = Vec::new();
    for (c, t) in cands.iter().zip(&tops) {
        let (_, used) = ech.reduce(t);
        let mut e = c.clone();
        for (row, u) in rows.iter().zip(&used) {
            e = &e - &row.scale(u);
        }
        if !e.is_zero() {
            leftovers.push(e);
        }
    }

    if policy == ComplementPolicy::Orthogonal {
        let coords: Vec<Vec<crate::coeff::Scalar>> = ech.rows().to_vec();
        let mut ortho: Vec<(Vec<crate::coeff::Scalar>, crate::coeff::Scalar, ModuleElement)> =
            Vec::new();
        for (row, elem) in coords.iter().zip(&rows) {
            let mut u = row.clone();
            let mut e = elem.clone();
            for (w, norm, we) in &ortho {
                let c = dot(row, w).div(norm);
                for (a, bw) in u.iter_mut().zip(w) {
                    *a = &*a - &(&c * bw);
                }
                e = &e - &we.scale(&c);
            }
            let norm = dot(&u, &u);
            ortho.push((u, norm, e));
        }
        rows = ortho.into_iter().map(|(_, _, e)| normalize(&e, grading)).collect();
    }
    Ok((rows, leftovers))
}

fn dot(a: &[crate::coeff::Scalar], b: &[crate::coeff::Scalar]) -> crate::coeff::Scalar {
    let mut acc = a[0].zero_like();
    for (x, y) in a.iter().zip(b) {
        acc = &acc + &(x * y);
    }
    acc
}

/// A syzygy `t` of `X` with `lf t = s`, for a homogeneous syzygy `s` of the
/// leading forms: reduce `sum s_i x_i` to zero and subtract the representation.
pub fn lift_syzygy(s: &Syzygy, reducer: &Reducer) -> Result<Syzygy> {
    if s.coordinates.len() != reducer.len() {
        return Err(Error::usage("syzygy length does not match the basis"));
    }
    let m = s.apply(reducer.elements(), reducer.grading().rank());
    let (zero, trace) = reducer.reduces_to_zero(&m)?;
    if !zero {
        return Err(Error::usage(
            "syzygy does not reduce to zero; the set fails the Buchberger criterion",
        ));
    }
    Ok(Syzygy::new(
        s.coordinates
            .iter()
            .zip(&trace.representation)
            .map(|(a, r)| a - r)
            .collect(),
    ))
}

/// Number of basis elements per degree, ascending.
pub fn degree_profile(elements: &[ModuleElement], grading: &ModuleGrading) -> Vec<(Degree, usize)> {
    let mut out: Vec<(Degree, usize)> = Vec::new();
    for m in elements {
        let Some(d) = degree(m, grading) else { continue };
        match out.iter_mut().find(|(e, _)| *e == d) {
            Some((_, n)) => *n += 1,
            None => out.push((d, 1)),
        }
    }
    out.sort_by(|a, b| grading.compare(&a.0, &b.0));
    out
}

//! Batch front-end: problem files in, canonical text or JSON out.

pub mod problem;

use std::cmp::Ordering;
use std::fmt::Write as _;
use std::str::FromStr;
use std::time::Instant;

use macaulay::apps::{
    eliminate, hilbert_function, homogenize_generators, schreyer_syzygy_basis, EliminationSpec,
    HomogenizationContext,
};
use macaulay::gradlin::ComplementPolicy;
use macaulay::macbasis::{
    buchberger_algorithm, buchberger_criterion, interreduce, BuchbergerConfig, CriterionReport,
    DegreeCap, MacaulayBasis,
};
use macaulay::polymod::degree;
use macaulay::reduce::{Mode, ReductionTrace, Reducer};
use macaulay::symmetry::{
    check_equivariant_normal_form, is_homogeneous_action, span_is_invariant, DEFAULT_ELEMENT_CAP,
};
use macaulay::{Degree, Error, FieldSpec, ModuleElement, ModuleGrading, Monomial, Polynomial, Result, Ring};
use serde::Serialize;
use sha2::{Digest, Sha256};

pub use problem::{parse_problem, GradingDecl, GroupDecl, ProblemFile};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Basis,
    Reduce,
    Syzygy,
    Eliminate,
    Hilbert,
    Homogenize,
    Dehomogenize,
    CheckInvariant,
    Verify,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Basis => "basis",
            Command::Reduce => "reduce",
            Command::Syzygy => "syzygy",
            Command::Eliminate => "eliminate",
            Command::Hilbert => "hilbert",
            Command::Homogenize => "homogenize",
            Command::Dehomogenize => "dehomogenize",
            Command::CheckInvariant => "check-invariant",
            Command::Verify => "verify",
        }
    }
}

impl FromStr for Command {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Ok(match s {
            "basis" => Command::Basis,
            "reduce" => Command::Reduce,
            "syzygy" => Command::Syzygy,
            "eliminate" => Command::Eliminate,
            "hilbert" => Command::Hilbert,
            "homogenize" => Command::Homogenize,
            "dehomogenize" => Command::Dehomogenize,
            "check-invariant" => Command::CheckInvariant,
            "verify" => Command::Verify,
            _ => return Err(format!("unknown command '{s}'")),
        })
    }
}

#[derive(Clone, Debug)]
pub struct Options {
    pub coeff: Option<FieldSpec>,
    pub grading: Option<GradingDecl>,
    pub reduced: bool,
    pub certify: bool,
    pub trace: bool,
    pub max_iterations: usize,
    pub degree_cap: Option<u64>,
    pub keep: Vec<String>,
    pub var: Option<String>,
    pub group: Option<Vec<GroupDecl>>,
    pub degrees: (i64, i64),
    pub element: Option<String>,
    pub complement: Option<ComplementPolicy>,
    pub remainder: Mode,
    pub samples: usize,
    pub seed: u64,
    pub timing: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            coeff: None,
            grading: None,
            reduced: false,
            certify: false,
            trace: false,
            max_iterations: 64,
            degree_cap: None,
            keep: Vec::new(),
            var: None,
            group: None,
            degrees: (0, 8),
            element: None,
            complement: None,
            remainder: Mode::Complement,
            samples: 50,
            seed: 0,
            timing: false,
        }
    }
}

impl Options {
    fn policy(&self, field: FieldSpec) -> Result<ComplementPolicy> {
        let p = self.complement.unwrap_or_else(|| ComplementPolicy::default_for(field));
        p.check_field(field)?;
        Ok(p)
    }

    fn config(&self, field: FieldSpec) -> Result<BuchbergerConfig> {
        let mut c = BuchbergerConfig::new(self.policy(field)?);
        c.max_iterations = self.max_iterations;
        c.degree_cap = self.degree_cap.map(DegreeCap::Total);
        c.remainder = self.remainder;
        c.validate(field)?;
        Ok(c)
    }
}

/// Parses `a..b` (inclusive).
pub fn parse_degree_range(s: &str) -> std::result::Result<(i64, i64), String> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| format!("degree range '{s}' must look like a..b"))?;
    let a: i64 = a.trim().parse().map_err(|_| format!("malformed degree '{a}'"))?;
    let b: i64 = b.trim().parse().map_err(|_| format!("malformed degree '{b}'"))?;
    if a > b || a < 0 {
        return Err(format!("empty or negative degree range '{s}'"));
    }
    Ok((a, b))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ElementEntry {
    pub element: String,
    pub degree: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub syzygy: Vec<String>,
    pub remainder: String,
    pub remainder_degree: String,
    pub leading_form: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    /// `pass` or `fail`.
    pub criterion: String,
    pub checked: usize,
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub degree: String,
    /// `(c*r)*lf(i)` for each term `c r lf(x_i)` used.
    pub multipliers: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertEntry {
    pub degree: String,
    pub dimension: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvarianceEntry {
    pub generator: usize,
    pub element: usize,
    /// Coordinates in the span, or `None` when the image leaves it.
    pub coordinates: Option<Vec<String>>,
    pub residual: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvarianceSection {
    pub group_order: usize,
    pub homogeneous: bool,
    pub invariant: bool,
    pub witnesses: Vec<InvarianceEntry>,
    /// `pass`, `fail`, or `skipped: <reason>`.
    pub equivariance: String,
    pub equivariance_samples: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResultDocument {
    pub command: String,
    pub input_hash: String,
    pub field: String,
    pub vars: Vec<String>,
    pub grading: String,
    pub elements: Vec<ElementEntry>,
    /// Context for `syzygy`: the Macaulay basis whose syzygies are listed.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<ElementEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<TraceStep>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hilbert: Option<Vec<HilbertEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub invariance: Option<InvarianceSection>,
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            _ => Err(format!("unknown format '{s}'")),
        }
    }
}

/// Process exit code for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Syntax { .. } => 2,
        Error::Resource(_) => 4,
        _ => 3,
    }
}

pub fn input_hash(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

/// Parses `text` and runs `cmd` with `opts`.
pub fn run_text(cmd: Command, text: &str, opts: &Options) -> Result<ResultDocument> {
    let problem = parse_problem(text)?;
    let mut doc = run_command(cmd, &problem, opts)?;
    doc.input_hash = input_hash(text);
    Ok(doc)
}

pub fn run_command(cmd: Command, problem: &ProblemFile, opts: &Options) -> Result<ResultDocument> {
    let start = Instant::now();
    let mut problem = match opts.coeff {
        Some(f) if f != problem.field => problem.with_field(f)?,
        _ => problem.clone(),
    };
    if let Some(g) = &opts.grading {
        problem.grading = g.clone();
    }
    let field = problem.field;
    let ring = problem.ring()?;
    let grading = problem.module_grading()?;
    let mut doc = ResultDocument {
        command: cmd.name().into(),
        input_hash: input_hash(&problem.to_string()),
        field: field.to_string(),
        vars: problem.vars.clone(),
        grading: grading_label(&problem, &grading),
        elements: Vec::new(),
        basis: None,
        certificate: None,
        trace: None,
        hilbert: None,
        invariance: None,
        notes: Vec::new(),
        timing_ms: None,
    };
    let gens = &problem.generators;
    match cmd {
        Command::Basis => {
            let config = opts.config(field)?;
            let mut basis = buchberger_algorithm(gens, &grading, field, &config)?;
            if opts.reduced {
                basis = interreduce(&basis, config.policy)?;
            }
            doc.elements = entries(&ring, basis.elements(), &grading);
            if opts.certify {
                doc.certificate = Some(certificate(&ring, &basis.criterion()?, &grading));
            }
        }
        Command::Verify => {
            let report = buchberger_criterion(&nonzero(gens), &grading, field)?;
            doc.elements = entries(&ring, gens, &grading);
            doc.certificate = Some(certificate(&ring, &report, &grading));
        }
        Command::Reduce => {
            let text = opts
                .element
                .as_deref()
                .ok_or_else(|| Error::Usage("reduce needs --element".into()))?;
            let m = ring.element_at(text, 1, 1)?;
            if m.rank() != grading.rank() {
                return Err(Error::Usage(format!(
                    "element has {} components, the module has rank {}",
                    m.rank(),
                    grading.rank()
                )));
            }
            let reducer = Reducer::new(nonzero(gens), grading.clone(), field)?;
            let policy = opts.policy(field)?;
            let trace = reducer.reduce(&m, opts.remainder, policy)?;
            doc.elements = entries(&ring, std::slice::from_ref(&trace.final_element), &grading);
            if opts.trace {
                doc.trace = Some(trace_steps(&ring, &trace));
            }
            if !buchberger_criterion(reducer.elements(), &grading, field)?.passed {
                doc.notes.push(
                    "generators are not a Macaulay basis; the remainder is not a canonical normal form".into(),
                );
            }
        }
        Command::Syzygy => {
            let basis = match MacaulayBasis::certified(gens.clone(), grading.clone(), field) {
                Ok(b) => b,
                Err(_) => {
                    let config = opts.config(field)?;
                    let b = buchberger_algorithm(gens, &grading, field, &config)?;
                    doc.notes.push(
                        "generators are not a Macaulay basis; syzygies are of the completed basis".into(),
                    );
                    b
                }
            };
            let syz = schreyer_syzygy_basis(&basis)?;
            doc.basis = Some(entries(&ring, basis.elements(), &grading));
            doc.elements = entries(&ring, syz.elements(), syz.grading());
            if opts.certify {
                doc.certificate = Some(certificate(&ring, &syz.criterion()?, syz.grading()));
            }
        }
        Command::Eliminate => {
            if opts.keep.is_empty() {
                return Err(Error::Usage("eliminate needs --keep".into()));
            }
            let kept = opts
                .keep
                .iter()
                .map(|v| {
                    ring.var_index(v)
                        .ok_or_else(|| Error::Usage(format!("unknown variable {v}")))
                })
                .collect::<Result<Vec<_>>>()?;
            let spec = EliminationSpec::new(ring.nvars(), &kept)?;
            let out = eliminate(gens, grading.rank(), field, &spec, &opts.config(field)?)?;
            let g = out.basis.grading().clone();
            doc.grading = format!("{} (elimination)", g.ring());
            doc.elements = entries(&ring, &out.kept, &g);
            if opts.certify {
                doc.certificate = Some(certificate(&ring, &out.basis.criterion()?, &g));
            }
        }
        Command::Hilbert => {
            if grading.ring().degree_rank() != 1 {
                return Err(Error::Usage(
                    "hilbert needs a grading with integer degrees (grading total)".into(),
                ));
            }
            let (a, b) = opts.degrees;
            let degrees: Vec<Degree> = (a..=b).map(Degree::scalar).collect();
            let table = hilbert_function(gens, &grading, field, &degrees, &opts.config(field)?)?;
            doc.elements = entries(&ring, gens, &grading);
            doc.hilbert = Some(
                table
                    .degrees
                    .iter()
                    .zip(&table.values)
                    .map(|(d, v)| HilbertEntry {
                        degree: d.to_string(),
                        dimension: *v,
                    })
                    .collect(),
            );
        }
        Command::Homogenize => {
            let t = opts
                .var
                .clone()
                .ok_or_else(|| Error::Usage("homogenize needs --var".into()))?;
            if ring.var_index(&t).is_some() {
                return Err(Error::Usage(format!("{t} is already a variable of the ring")));
            }
            let mut names = problem.vars.clone();
            names.push(t);
            let big = Ring::from_names(field, names.clone())?;
            let ctx = HomogenizationContext::new(names.len(), names.len() - 1, scalar_shifts(&problem)?)?;
            let lifted: Vec<ModuleElement> = gens.iter().map(|g| add_variable(g, names.len())).collect();
            let set = homogenize_generators(&lifted, &ctx, field)?;
            let hg = ctx.grading();
            doc.vars = names;
            doc.grading = "total".into();
            doc.elements = entries(&big, &set.elements, &hg);
            let report = CriterionReport {
                passed: set.generates,
                checked: 0,
                witness: set.witness,
            };
            doc.certificate = Some(certificate(&big, &report, &hg));
            if !set.generates {
                doc.notes.push(
                    "generators are not a Macaulay H-basis; their homogenizations need not generate the homogenized module".into(),
                );
            }
        }
        Command::Dehomogenize => {
            let t = opts
                .var
                .clone()
                .ok_or_else(|| Error::Usage("dehomogenize needs --var".into()))?;
            let ti = ring
                .var_index(&t)
                .ok_or_else(|| Error::Usage(format!("unknown variable {t}")))?;
            let ctx = HomogenizationContext::new(ring.nvars(), ti, scalar_shifts(&problem)?)?;
            let out: Vec<ModuleElement> = gens.iter().map(|g| ctx.dehomogenize(g)).collect();
            doc.elements = entries(&ring, &out, &grading);
        }
        Command::CheckInvariant => {
            let decls = opts.group.clone().unwrap_or_else(|| problem.group.clone());
            if decls.is_empty() {
                return Err(Error::Usage(
                    "check-invariant needs a group (--group or group lines)".into(),
                ));
            }
            let action = problem::group_action(&decls, ring.nvars(), field)?;
            let order = action.closure(DEFAULT_ELEMENT_CAP)?.len();
            let policy = opts.policy(field)?;
            let checked: Vec<ModuleElement> = if opts.reduced {
                let config = opts.config(field)?;
                let b = buchberger_algorithm(gens, &grading, field, &config)?;
                interreduce(&b, config.policy)?.into_elements()
            } else {
                nonzero(gens)
            };
            let span = span_is_invariant(&checked, &action)?;
            let homogeneous = is_homogeneous_action(&action, grading.ring());
            let (equivariance, samples) = match MacaulayBasis::certified(checked.clone(), grading.clone(), field) {
                Err(_) => ("skipped: generators are not a Macaulay basis".to_string(), 0),
                Ok(basis) => match check_equivariant_normal_form(&basis, &action, opts.samples, 6, policy, opts.seed) {
                    Ok(r) if r.passed() => ("pass".to_string(), r.samples),
                    Ok(r) => (
                        format!("fail: {} counterexamples", r.counterexamples.len()),
                        r.samples,
                    ),
                    Err(Error::Usage(m)) => (format!("skipped: {m}"), 0),
                    Err(e) => return Err(e),
                },
            };
            doc.elements = entries(&ring, &checked, &grading);
            doc.invariance = Some(InvarianceSection {
                group_order: order,
                homogeneous,
                invariant: span.invariant,
                witnesses: span
                    .witnesses
                    .iter()
                    .map(|w| InvarianceEntry {
                        generator: w.generator + 1,
                        element: w.element + 1,
                        coordinates: w
                            .coordinates
                            .as_ref()
                            .map(|c| c.iter().map(ToString::to_string).collect()),
                        residual: w.residual.as_ref().map(|r| ring.format_element(r)),
                    })
                    .collect(),
                equivariance,
                equivariance_samples: samples,
            });
        }
    }
    if opts.timing {
        doc.timing_ms = Some(start.elapsed().as_millis() as u64);
    }
    Ok(doc)
}

fn grading_label(problem: &ProblemFile, grading: &ModuleGrading) -> String {
    let mut s = problem.grading.to_string();
    if grading.rank() > 1 || !problem.module.shifts.is_empty() {
        let shifts: Vec<String> = grading
            .generator_degrees()
            .iter()
            .map(|d| Degree { component: None, ..d.clone() }.to_string())
            .collect();
        let _ = write!(s, "; rank {} shifts [{}] tie {}", grading.rank(), shifts.join(", "), grading.tie());
    }
    s
}

fn nonzero(gens: &[ModuleElement]) -> Vec<ModuleElement> {
    gens.iter().filter(|g| !g.is_zero()).cloned().collect()
}

fn scalar_shifts(problem: &ProblemFile) -> Result<Vec<i64>> {
    problem
        .module
        .shift_degrees(1)
        .map(|v| v.into_iter().map(|s| s[0]).collect())
}

fn add_variable(m: &ModuleElement, nvars: usize) -> ModuleElement {
    let mut out = ModuleElement::zero(m.rank());
    for (i, mon, c) in m.terms() {
        let mut e = mon.exponents().to_vec();
        e.resize(nvars, 0);
        out.add_term(i, Monomial::new(e), c.clone());
    }
    out
}

/// Elements sorted by degree, then by their terms in canonical order.
fn entries(ring: &Ring, elements: &[ModuleElement], grading: &ModuleGrading) -> Vec<ElementEntry> {
    let mut keyed: Vec<(Option<Degree>, &ModuleElement)> =
        elements.iter().map(|m| (degree(m, grading), m)).collect();
    keyed.sort_by(|a, b| {
        let by_degree = match (&a.0, &b.0) {
            (Some(x), Some(y)) => grading.compare(x, y),
            (None, None) => Ordering::Equal,
            (None, _) => Ordering::Less,
            (_, None) => Ordering::Greater,
        };
        by_degree.then_with(|| {
            let ta: Vec<(usize, &Monomial)> = a.1.terms().map(|(i, m, _)| (i, m)).collect();
            let tb: Vec<(usize, &Monomial)> = b.1.terms().map(|(i, m, _)| (i, m)).collect();
            ta.cmp(&tb)
        })
    });
    keyed
        .into_iter()
        .map(|(d, m)| ElementEntry {
            element: ring.format_element(m),
            degree: d.map_or_else(|| "-".into(), |d| d.to_string()),
        })
        .collect()
}

fn certificate(ring: &Ring, report: &CriterionReport, grading: &ModuleGrading) -> Certificate {
    Certificate {
        criterion: if report.passed { "pass" } else { "fail" }.into(),
        checked: report.checked,
        witness: report.witness.as_ref().map(|w| {
            let lf = macaulay::polymod::leading_form(&w.remainder, grading)
                .map(|p| ring.format_element(&p.element))
                .unwrap_or_else(|_| "0".into());
            Witness {
                syzygy: w.syzygy.coordinates.iter().map(|p| ring.format_poly(p)).collect(),
                remainder: ring.format_element(&w.remainder),
                remainder_degree: degree(&w.remainder, grading).map_or_else(|| "-".into(), |d| d.to_string()),
                leading_form: lf,
            }
        }),
    }
}

fn trace_steps(ring: &Ring, trace: &ReductionTrace) -> Vec<TraceStep> {
    trace
        .steps
        .iter()
        .map(|s| TraceStep {
            degree: s.degree.to_string(),
            multipliers: s
                .multipliers
                .iter()
                .map(|t| {
                    let p = Polynomial::term(t.multiplier.clone(), t.coefficient.clone());
                    format!("({})*lf({})", ring.format_poly(&p), t.index + 1)
                })
                .collect(),
        })
        .collect()
}

/// Renders a document. Identical documents render to identical bytes.
pub fn format_result(doc: &ResultDocument, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(doc).expect("document serializes");
            s.push('\n');
            s
        }
        Format::Text => format_text(doc),
    }
}

fn format_text(doc: &ResultDocument) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "command: {}", doc.command);
    let _ = writeln!(s, "input: sha256:{}", doc.input_hash);
    let _ = writeln!(s, "ring: {}[{}]", doc.field, doc.vars.join(", "));
    let _ = writeln!(s, "grading: {}", doc.grading);
    if let Some(basis) = &doc.basis {
        let _ = writeln!(s, "basis:");
        write_entries(&mut s, basis);
    }
    let label = match doc.command.as_str() {
        "reduce" => "remainder",
        "syzygy" => "syzygies",
        "hilbert" | "verify" | "check-invariant" => "generators",
        _ => "elements",
    };
    if doc.elements.is_empty() {
        let _ = writeln!(s, "{label}: []");
    } else {
        let _ = writeln!(s, "{label}:");
        write_entries(&mut s, &doc.elements);
    }
    if let Some(c) = &doc.certificate {
        let _ = writeln!(s, "criterion: {} ({} syzygies checked)", c.criterion, c.checked);
        if let Some(w) = &c.witness {
            let _ = writeln!(s, "  witness syzygy: ({})", w.syzygy.join(", "));
            let _ = writeln!(s, "  remainder: {}", w.remainder);
            let _ = writeln!(s, "  remainder degree: {}", w.remainder_degree);
            let _ = writeln!(s, "  leading form: {}", w.leading_form);
        }
    }
    if let Some(steps) = &doc.trace {
        let _ = writeln!(s, "trace:");
        for st in steps {
            let _ = writeln!(s, "  degree {}: {}", st.degree, st.multipliers.join(" + "));
        }
    }
    if let Some(h) = &doc.hilbert {
        let _ = writeln!(s, "hilbert:");
        for e in h {
            let _ = writeln!(s, "  {}: {}", e.degree, e.dimension);
        }
    }
    if let Some(inv) = &doc.invariance {
        let _ = writeln!(s, "group order: {}", inv.group_order);
        let _ = writeln!(s, "homogeneous action: {}", inv.homogeneous);
        let _ = writeln!(s, "span invariant: {}", inv.invariant);
        for w in inv.witnesses.iter().filter(|w| w.coordinates.is_none()) {
            let _ = writeln!(
                s,
                "  g{} * m{} leaves the span, residual {}",
                w.generator,
                w.element,
                w.residual.as_deref().unwrap_or("?")
            );
        }
        let _ = writeln!(s, "equivariance: {} ({} samples)", inv.equivariance, inv.equivariance_samples);
    }
    for n in &doc.notes {
        let _ = writeln!(s, "note: {n}");
    }
    if let Some(t) = doc.timing_ms {
        let _ = writeln!(s, "time: {t} ms");
    }
    s
}

fn write_entries(s: &mut String, entries: &[ElementEntry]) {
    for e in entries {
        let _ = writeln!(s, "  [{}] {}", e.degree, e.element);
    }
}

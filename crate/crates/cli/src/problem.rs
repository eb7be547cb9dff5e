//! Problem files: a declarative header followed by generators.
//!
//! ```text
//! # comment
//! field q                      # or fp:32003
//! vars x1 x2
//! grading total                # order degrevlex | order lex | order matrix [[..]] | elim 1
//! module rank 2 shifts [0, 1] tie pot
//! group signed-perm (-2 1)
//! generators
//! x1^2 + x2^2 - 1
//! [x1, x2^2]
//! ```

use std::fmt;

use macaulay::symmetry::{GroupAction, GroupElement};
use macaulay::{Error, FieldSpec, ModuleElement, ModuleGrading, Result, Ring, RingGrading, TieOrder};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GradingDecl {
    Total,
    Degrevlex,
    Lex,
    Matrix(Vec<Vec<i64>>),
    /// Keep the first `k` variables.
    Elim(usize),
}

impl GradingDecl {
    pub fn ring_grading(&self, nvars: usize) -> Result<RingGrading> {
        Ok(match self {
            GradingDecl::Total => RingGrading::total(nvars),
            GradingDecl::Degrevlex => RingGrading::degrevlex(nvars),
            GradingDecl::Lex => RingGrading::lex(nvars),
            GradingDecl::Matrix(m) => {
                if m.len() != nvars {
                    return Err(Error::Usage(format!(
                        "order matrix has {} rows, the ring has {nvars} variables",
                        m.len()
                    )));
                }
                RingGrading::matrix(m.clone())?
            }
            GradingDecl::Elim(k) => {
                if *k > nvars {
                    return Err(Error::Usage(format!("cannot keep {k} of {nvars} variables")));
                }
                RingGrading::elimination((0..nvars).map(|i| i < *k).collect())
            }
        })
    }
}

impl fmt::Display for GradingDecl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GradingDecl::Total => write!(f, "total"),
            GradingDecl::Degrevlex => write!(f, "order degrevlex"),
            GradingDecl::Lex => write!(f, "order lex"),
            GradingDecl::Matrix(m) => write!(f, "order matrix {}", format_int_matrix(m)),
            GradingDecl::Elim(k) => write!(f, "elim {k}"),
        }
    }
}

/// Parses the text after `grading`, e.g. `order degrevlex`. Bare order names
/// (`degrevlex`, `lex`) are accepted as shorthand.
pub fn parse_grading(text: &str) -> std::result::Result<GradingDecl, String> {
    let t = text.trim();
    let rest = t.strip_prefix("order").map(str::trim_start).unwrap_or(t);
    match rest {
        "total" if !t.starts_with("order") => return Ok(GradingDecl::Total),
        "degrevlex" => return Ok(GradingDecl::Degrevlex),
        "lex" => return Ok(GradingDecl::Lex),
        _ => {}
    }
    if let Some(m) = rest.strip_prefix("matrix") {
        return parse_int_matrix(m.trim()).map(GradingDecl::Matrix);
    }
    if let Some(k) = t.strip_prefix("elim") {
        return k
            .trim()
            .parse::<usize>()
            .map(GradingDecl::Elim)
            .map_err(|_| format!("malformed elimination block size '{}'", k.trim()));
    }
    Err(format!("unknown grading '{t}'"))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleDecl {
    pub rank: usize,
    /// One degree per component; scalars for one-dimensional gradings.
    pub shifts: Vec<Vec<i64>>,
    pub tie: TieOrder,
}

impl ModuleDecl {
    pub fn ideal() -> Self {
        ModuleDecl {
            rank: 1,
            shifts: Vec::new(),
            tie: TieOrder::None,
        }
    }

    /// Shifts padded to the grading's degree rank.
    pub fn shift_degrees(&self, k: usize) -> Result<Vec<Vec<i64>>> {
        if self.shifts.is_empty() {
            return Ok(vec![vec![0; k]; self.rank]);
        }
        self.shifts
            .iter()
            .map(|s| {
                if s.len() == k {
                    Ok(s.clone())
                } else if s.iter().all(|&x| x == 0) {
                    Ok(vec![0; k])
                } else {
                    Err(Error::Usage(format!(
                        "shift {} does not fit a grading with {k}-dimensional degrees",
                        format_shift(s)
                    )))
                }
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupDecl {
    /// Cycles of 1-based variable indices.
    Perm(Vec<Vec<usize>>),
    /// One-line notation: `x_j -> sign(a_j) x_|a_j|`.
    SignedPerm(Vec<i64>),
    /// Column `j` is the image of `x_j`; entries are field literals.
    Matrix(Vec<Vec<String>>),
}

impl fmt::Display for GroupDecl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupDecl::Perm(cycles) => {
                let cs: Vec<String> = cycles
                    .iter()
                    .map(|c| {
                        let xs: Vec<String> = c.iter().map(usize::to_string).collect();
                        format!("({})", xs.join(" "))
                    })
                    .collect();
                write!(f, "perm {}", cs.join(""))
            }
            GroupDecl::SignedPerm(a) => {
                let xs: Vec<String> = a.iter().map(i64::to_string).collect();
                write!(f, "signed-perm ({})", xs.join(" "))
            }
            GroupDecl::Matrix(rows) => {
                let rs: Vec<String> = rows.iter().map(|r| format!("[{}]", r.join(","))).collect();
                write!(f, "matrix [{}]", rs.join(","))
            }
        }
    }
}

impl GroupDecl {
    pub fn element(&self, nvars: usize, field: FieldSpec) -> Result<GroupElement> {
        match self {
            GroupDecl::Perm(cycles) => {
                let mut perm: Vec<usize> = (0..nvars).collect();
                for c in cycles {
                    for (k, &a) in c.iter().enumerate() {
                        let b = c[(k + 1) % c.len()];
                        if a == 0 || a > nvars || b == 0 || b > nvars {
                            return Err(Error::Usage(format!("permutation index out of range 1..{nvars}")));
                        }
                        perm[a - 1] = b - 1;
                    }
                }
                GroupElement::permutation(&perm, field)
            }
            GroupDecl::SignedPerm(a) => {
                if a.len() != nvars {
                    return Err(Error::Usage(format!(
                        "signed permutation lists {} images, the ring has {nvars} variables",
                        a.len()
                    )));
                }
                let images = a
                    .iter()
                    .map(|&v| {
                        let i = v.unsigned_abs() as usize;
                        if i == 0 || i > nvars {
                            Err(Error::Usage(format!("signed permutation entry {v} out of range")))
                        } else {
                            Ok((i - 1, v < 0))
                        }
                    })
                    .collect::<Result<Vec<_>>>()?;
                GroupElement::signed_permutation(&images, field)
            }
            GroupDecl::Matrix(rows) => {
                if rows.len() != nvars {
                    return Err(Error::Usage(format!(
                        "substitution matrix has {} rows, the ring has {nvars} variables",
                        rows.len()
                    )));
                }
                let m = rows
                    .iter()
                    .map(|r| r.iter().map(|c| field.parse_scalar(c)).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()?;
                GroupElement::linear(m, field)
            }
        }
    }
}

pub fn group_action(decls: &[GroupDecl], nvars: usize, field: FieldSpec) -> Result<GroupAction> {
    let gens = decls
        .iter()
        .map(|d| d.element(nvars, field))
        .collect::<Result<Vec<_>>>()?;
    GroupAction::new(nvars, field, gens)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemFile {
    pub field: FieldSpec,
    pub vars: Vec<String>,
    pub grading: GradingDecl,
    pub module: ModuleDecl,
    pub group: Vec<GroupDecl>,
    /// Generator texts, kept so a `--coeff` override can re-read them.
    pub generator_text: Vec<(usize, String)>,
    pub generators: Vec<ModuleElement>,
}

impl ProblemFile {
    pub fn ring(&self) -> Result<Ring> {
        Ring::from_names(self.field, self.vars.clone())
    }

    pub fn module_grading(&self) -> Result<ModuleGrading> {
        let ring = self.grading.ring_grading(self.vars.len())?;
        let shifts = self.module.shift_degrees(ring.degree_rank())?;
        ModuleGrading::new(ring, shifts, self.module.tie)
    }

    /// Re-reads the generators over another field.
    pub fn with_field(&self, field: FieldSpec) -> Result<ProblemFile> {
        let ring = Ring::from_names(field, self.vars.clone())?;
        let generators = self
            .generator_text
            .iter()
            .map(|(line, t)| read_generator(&ring, t, *line, self.module.rank))
            .collect::<Result<Vec<_>>>()?;
        Ok(ProblemFile {
            field,
            generators,
            ..self.clone()
        })
    }
}

impl fmt::Display for ProblemFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "field {}", self.field)?;
        writeln!(f, "vars {}", self.vars.join(" "))?;
        writeln!(f, "grading {}", self.grading)?;
        if self.module != ModuleDecl::ideal() {
            write!(f, "module rank {}", self.module.rank)?;
            if !self.module.shifts.is_empty() {
                let s: Vec<String> = self.module.shifts.iter().map(|s| format_shift(s)).collect();
                write!(f, " shifts [{}]", s.join(", "))?;
            }
            if self.module.tie != TieOrder::None {
                write!(f, " tie {}", self.module.tie)?;
            }
            writeln!(f)?;
        }
        for g in &self.group {
            writeln!(f, "group {g}")?;
        }
        writeln!(f, "generators")?;
        let ring = self.ring().map_err(|_| fmt::Error)?;
        for g in &self.generators {
            writeln!(f, "{}", ring.format_element(g))?;
        }
        Ok(())
    }
}

fn format_shift(s: &[i64]) -> String {
    if s.len() == 1 {
        s[0].to_string()
    } else {
        let xs: Vec<String> = s.iter().map(i64::to_string).collect();
        format!("({})", xs.join(","))
    }
}

fn format_int_matrix(m: &[Vec<i64>]) -> String {
    let rows: Vec<String> = m
        .iter()
        .map(|r| {
            let xs: Vec<String> = r.iter().map(i64::to_string).collect();
            format!("[{}]", xs.join(","))
        })
        .collect();
    format!("[{}]", rows.join(","))
}

fn parse_int_matrix(text: &str) -> std::result::Result<Vec<Vec<i64>>, String> {
    parse_matrix_cells(text)?
        .into_iter()
        .map(|r| {
            r.iter()
                .map(|c| c.parse::<i64>().map_err(|_| format!("malformed matrix entry '{c}'")))
                .collect()
        })
        .collect()
}

/// `[[a,b],[c,d]]` into cell strings.
fn parse_matrix_cells(text: &str) -> std::result::Result<Vec<Vec<String>>, String> {
    let t = text.trim();
    let inner = t
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| "matrix must be written [[..],[..]]".to_string())?
        .trim();
    let mut rows = Vec::new();
    let mut rest = inner;
    while !rest.is_empty() {
        let r = rest
            .strip_prefix('[')
            .ok_or_else(|| "matrix rows must be bracketed".to_string())?;
        let end = r.find(']').ok_or_else(|| "unterminated matrix row".to_string())?;
        let cells: Vec<String> = r[..end]
            .split(',')
            .map(|c| c.trim().to_string())
            .filter(|c| !c.is_empty())
            .collect();
        rows.push(cells);
        rest = r[end + 1..].trim_start();
        rest = rest.strip_prefix(',').unwrap_or(rest).trim_start();
    }
    if rows.is_empty() || rows.iter().any(|r| r.len() != rows.len()) {
        return Err("matrix must be square and nonempty".into());
    }
    Ok(rows)
}

/// Parses one `group` declaration (without the keyword).
pub fn parse_group(text: &str) -> std::result::Result<GroupDecl, String> {
    let t = text.trim();
    if let Some(rest) = t.strip_prefix("signed-perm") {
        let body = rest
            .trim()
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| "signed-perm expects (a1 a2 ...)".to_string())?;
        let vals = body
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<i64>().map_err(|_| format!("malformed signed-perm entry '{s}'")))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        return Ok(GroupDecl::SignedPerm(vals));
    }
    if let Some(rest) = t.strip_prefix("perm") {
        let mut cycles = Vec::new();
        let mut rest = rest.trim();
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('(')
                .ok_or_else(|| "perm expects cycles like (1 2)".to_string())?;
            let end = body.find(')').ok_or_else(|| "unterminated cycle".to_string())?;
            let cycle = body[..end]
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<usize>().map_err(|_| format!("malformed cycle entry '{s}'")))
                .collect::<std::result::Result<Vec<_>, _>>()?;
            cycles.push(cycle);
            rest = body[end + 1..].trim_start();
        }
        return Ok(GroupDecl::Perm(cycles));
    }
    if let Some(rest) = t.strip_prefix("matrix") {
        return parse_matrix_cells(rest).map(GroupDecl::Matrix);
    }
    Err(format!("unknown group declaration '{t}'"))
}

/// Reads a group file: one declaration per line, `group` keyword optional.
pub fn parse_group_file(text: &str) -> Result<Vec<GroupDecl>> {
    let mut out = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let (line, col) = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        let body = line.strip_prefix("group").map(str::trim_start).unwrap_or(line);
        let body = body.strip_prefix("generators:").map(str::trim_start).unwrap_or(body);
        out.push(parse_group(body).map_err(|m| Error::syntax(n + 1, col, m))?);
    }
    Ok(out)
}

/// Trims a line and drops a trailing `#` comment. Also returns the 1-based
/// column of the first non-blank character.
fn strip_comment(raw: &str) -> (&str, usize) {
    let body = raw.split('#').next().unwrap_or("");
    let col = body.len() - body.trim_start().len() + 1;
    (body.trim(), col)
}

fn read_generator(ring: &Ring, text: &str, line: usize, rank: usize) -> Result<ModuleElement> {
    let col = 1;
    let m = ring.element_at(text, line, col)?;
    if m.rank() != rank {
        return Err(Error::syntax(
            line,
            col,
            format!("generator has {} components, the module has rank {rank}", m.rank()),
        ));
    }
    Ok(m)
}

pub fn parse_problem(text: &str) -> Result<ProblemFile> {
    let mut field = FieldSpec::Rationals;
    let mut vars: Option<Vec<String>> = None;
    let mut grading = GradingDecl::Total;
    let mut module = ModuleDecl::ideal();
    let mut group = Vec::new();
    let mut generator_text = Vec::new();
    let mut in_generators = false;

    for (n, raw) in text.lines().enumerate() {
        let line_no = n + 1;
        let (line, col) = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        let err = |m: String| Error::syntax(line_no, col, m);
        if in_generators {
            generator_text.push((line_no, raw.split('#').next().unwrap_or("").to_string()));
            continue;
        }
        let (keyword, rest) = match line.split_once(char::is_whitespace) {
            Some((k, r)) => (k, r.trim()),
            None => (line, ""),
        };
        match keyword {
            "field" => field = rest.parse::<FieldSpec>().map_err(|e| err(e.to_string()))?,
            "vars" => {
                let names: Vec<String> = rest
                    .split(|c: char| c.is_whitespace() || c == ',')
                    .filter(|s| !s.is_empty())
                    .map(str::to_string)
                    .collect();
                if names.is_empty() {
                    return Err(err("vars needs at least one name".into()));
                }
                vars = Some(names);
            }
            "grading" => grading = parse_grading(rest).map_err(err)?,
            "module" => module = parse_module(rest).map_err(err)?,
            "group" => group.push(parse_group(rest).map_err(err)?),
            "generators" => {
                in_generators = true;
                if !rest.is_empty() {
                    return Err(err("generators go on the following lines".into()));
                }
            }
            other => return Err(err(format!("unknown keyword '{other}'"))),
        }
    }
    let vars = vars.ok_or_else(|| Error::syntax(1, 1, "missing vars declaration"))?;
    let ring = Ring::from_names(field, vars.clone()).map_err(|e| match e {
        Error::Usage(m) => Error::syntax(1, 1, m),
        e => e,
    })?;
    if let GradingDecl::Matrix(m) = &grading {
        if m.len() != vars.len() {
            return Err(Error::syntax(1, 1, "order matrix size does not match vars"));
        }
    }
    let generators = generator_text
        .iter()
        .map(|(line, t)| read_generator(&ring, t, *line, module.rank))
        .collect::<Result<Vec<_>>>()?;
    Ok(ProblemFile {
        field,
        vars,
        grading,
        module,
        group,
        generator_text,
        generators,
    })
}

fn parse_module(text: &str) -> std::result::Result<ModuleDecl, String> {
    let mut decl = ModuleDecl::ideal();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let (key, tail) = rest.split_once(char::is_whitespace).unwrap_or((rest, ""));
        let tail = tail.trim_start();
        match key {
            "rank" => {
                let (v, t) = tail.split_once(char::is_whitespace).unwrap_or((tail, ""));
                decl.rank = v
                    .parse()
                    .ok()
                    .filter(|&r| r > 0)
                    .ok_or_else(|| format!("malformed rank '{v}'"))?;
                rest = t.trim_start();
            }
            "shifts" => {
                let body = tail
                    .strip_prefix('[')
                    .ok_or_else(|| "shifts must be written [..]".to_string())?;
                let end = find_closing(body).ok_or_else(|| "unterminated shift list".to_string())?;
                decl.shifts = parse_shift_list(&body[..end])?;
                rest = body[end + 1..].trim_start();
            }
            "tie" => {
                let (v, t) = tail.split_once(char::is_whitespace).unwrap_or((tail, ""));
                decl.tie = match v {
                    "pot" => TieOrder::PositionOverTerm,
                    "top" => TieOrder::TermOverPosition,
                    "none" => TieOrder::None,
                    _ => return Err(format!("unknown tie order '{v}'")),
                };
                rest = t.trim_start();
            }
            _ => return Err(format!("unknown module attribute '{key}'")),
        }
    }
    if !decl.shifts.is_empty() && decl.shifts.len() != decl.rank {
        return Err(format!(
            "{} shifts given for a module of rank {}",
            decl.shifts.len(),
            decl.rank
        ));
    }
    Ok(decl)
}

/// Index of the `]` closing a list whose `[` was already consumed.
fn find_closing(s: &str) -> Option<usize> {
    let mut depth = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' => depth -= 1,
            ']' if depth == 0 => return Some(i),
            ']' => depth -= 1,
            _ => {}
        }
    }
    None
}

fn parse_shift_list(body: &str) -> std::result::Result<Vec<Vec<i64>>, String> {
    let mut out = Vec::new();
    let mut rest = body.trim();
    let int = |s: &str| s.trim().parse::<i64>().map_err(|_| format!("malformed shift '{}'", s.trim()));
    while !rest.is_empty() {
        if let Some(t) = rest.strip_prefix('(') {
            let end = t.find(')').ok_or_else(|| "unterminated shift".to_string())?;
            out.push(t[..end].split(',').map(int).collect::<std::result::Result<Vec<_>, _>>()?);
            rest = t[end + 1..].trim_start();
        } else {
            let end = rest.find(',').unwrap_or(rest.len());
            out.push(vec![int(&rest[..end])?]);
            rest = &rest[end..];
        }
        rest = rest.strip_prefix(',').unwrap_or(rest).trim_start();
    }
    Ok(out)
}

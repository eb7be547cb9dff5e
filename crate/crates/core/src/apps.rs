//! Applications: elimination, Schreyer syzygies, Hilbert functions and
//! homogenization.

use std::collections::HashSet;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::coeff::FieldSpec;
use crate::error::{Error, Result};
use crate::grading::{Degree, ModuleGrading, RefinementMap, RingGrading, TieOrder};
use crate::macbasis::{
    buchberger_algorithm, buchberger_criterion, interreduce, leading_syzygy_generators,
    lift_syzygy, syzygy_grading, BuchbergerConfig, CriterionWitness, MacaulayBasis, Provenance,
};
use crate::polymod::{homogeneous_degree, leading_form, ModuleElement, Monomial};
use crate::reduce::Reducer;
use crate::sample::SampleShape;

/// Which variables survive elimination.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EliminationSpec {
    kept: Vec<bool>,
}

impl EliminationSpec {
    pub fn new(nvars: usize, kept: &[usize]) -> Result<Self> {
        let mut mask = vec![false; nvars];
        for &k in kept {
            if k >= nvars {
                return Err(Error::usage(format!("variable index {} out of range", k + 1)));
            }
            mask[k] = true;
        }
        Ok(EliminationSpec { kept: mask })
    }

    pub fn kept(&self) -> &[bool] {
        &self.kept
    }

    /// `deg x_i = (1, 0)` when kept, `(0, 1)` otherwise, second coordinate first.
    pub fn ring_grading(&self) -> RingGrading {
        RingGrading::elimination(self.kept.clone())
    }

    pub fn module_grading(&self, rank: usize) -> ModuleGrading {
        let tie = if rank == 1 {
            TieOrder::None
        } else {
            TieOrder::TermOverPosition
        };
        ModuleGrading::free(self.ring_grading(), rank, tie)
    }

    /// Every dropped variable has positive weight in the dominant coordinate,
    /// so degrees with zero second coordinate force membership in the subring.
    pub fn is_valid(&self) -> bool {
        let g = self.ring_grading();
        let w = g.weights();
        self.kept
            .iter()
            .enumerate()
            .all(|(j, &k)| k || (w[1][j] > 0 && g.order_matrix()[0] == [0, 1]))
    }

    pub fn in_subring(&self, m: &ModuleElement) -> bool {
        m.terms().all(|(_, mon, _)| {
            mon.exponents()
                .iter()
                .zip(&self.kept)
                .all(|(&e, &k)| k || e == 0)
        })
    }
}

#[derive(Clone, Debug)]
pub struct Elimination {
    /// Reduced Macaulay basis of the whole module under the elimination grading.
    pub basis: MacaulayBasis,
    /// The basis elements lying in the kept subring.
    pub kept: Vec<ModuleElement>,
}

pub fn eliminate(
    generators: &[ModuleElement],
    rank: usize,
    field: FieldSpec,
    spec: &EliminationSpec,
    config: &BuchbergerConfig,
) -> Result<Elimination> {
    if !spec.is_valid() {
        return Err(Error::usage("invalid elimination grading"));
    }
    let grading = spec.module_grading(rank);
    let basis = buchberger_algorithm(generators, &grading, field, config)?;
    let basis = interreduce(&basis, config.policy)?;
    let kept = basis
        .elements()
        .iter()
        .filter(|m| spec.in_subring(m))
        .cloned()
        .collect();
    Ok(Elimination { basis, kept })
}

/// Lifts the leading-form syzygies of a Macaulay basis. The lifts form a
/// Macaulay basis of the full syzygy module under the syzygy grading.
pub fn schreyer_syzygy_basis(basis: &MacaulayBasis) -> Result<MacaulayBasis> {
    let reducer = basis.reducer();
    let grading = basis.grading();
    let lfs: Vec<ModuleElement> = reducer.leading_forms().iter().map(|(_, e)| e.clone()).collect();
    let base: Vec<Degree> = reducer.leading_forms().iter().map(|(d, _)| d.clone()).collect();
    let syz_grading = syzygy_grading(grading, base);
    let gens = leading_syzygy_generators(&lfs, grading, basis.field())?;
    let mut lifted = Vec::with_capacity(gens.len());
    for s in &gens {
        if homogeneous_degree(&s.to_element(), &syz_grading).is_none() {
            return Err(Error::usage("leading syzygy is not homogeneous"));
        }
        lifted.push(lift_syzygy(s, &reducer)?.to_element());
    }
    Ok(MacaulayBasis::from_parts(
        lifted,
        syz_grading,
        basis.field(),
        false,
        Provenance {
            generators: basis.elements().to_vec(),
            config_hash: 0,
        },
    ))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertTable {
    pub degrees: Vec<Degree>,
    pub values: Vec<usize>,
}

/// `dim M_b` through a Macaulay basis for the refinement `map.source()` of the
/// coarse grading `map.target()`.
pub fn hilbert_function_with(
    generators: &[ModuleElement],
    map: &RefinementMap,
    field: FieldSpec,
    degrees: &[Degree],
    config: &BuchbergerConfig,
) -> Result<HilbertTable> {
    let coarse = map.target();
    let fine = map.source();
    for (i, g) in generators.iter().enumerate() {
        if !g.is_zero() && homogeneous_degree(g, coarse).is_none() {
            return Err(Error::usage(format!(
                "generator {} is not homogeneous; the module is not graded",
                i + 1
            )));
        }
    }
    let basis = buchberger_algorithm(generators, fine, field, config)?;
    let reducer = basis.reducer();
    let mut values = Vec::with_capacity(degrees.len());
    for b in degrees {
        let fibre: HashSet<Degree> = coarse
            .component_terms(b)
            .iter()
            .map(|(i, m)| fine.term_degree(*i, m))
            .collect();
        values.push(fibre.iter().map(|f| reducer.w_space(f).dim()).sum());
    }
    Ok(HilbertTable {
        degrees: degrees.to_vec(),
        values,
    })
}

/// Hilbert function with the default degrevlex refinement.
pub fn hilbert_function(
    generators: &[ModuleElement],
    coarse: &ModuleGrading,
    field: FieldSpec,
    degrees: &[Degree],
    config: &BuchbergerConfig,
) -> Result<HilbertTable> {
    let (_, map) = coarse.monomial_refinement()?;
    hilbert_function_with(generators, &map, field, degrees, config)
}

/// Homogenization with respect to the variable at `t_index`, for the module
/// `N = R(-a_1) + ... + R(-a_n)` with the standard grading.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogenizationContext {
    nvars: usize,
    t_index: usize,
    shifts: Vec<i64>,
}

impl HomogenizationContext {
    pub fn new(nvars: usize, t_index: usize, shifts: Vec<i64>) -> Result<Self> {
        if t_index >= nvars {
            return Err(Error::usage("homogenizing variable out of range"));
        }
        if shifts.is_empty() || shifts.iter().any(|&a| a < 0) {
            return Err(Error::usage("shifts must be nonnegative, one per component"));
        }
        Ok(HomogenizationContext {
            nvars,
            t_index,
            shifts,
        })
    }

    pub fn t_index(&self) -> usize {
        self.t_index
    }

    pub fn rank(&self) -> usize {
        self.shifts.len()
    }

    /// Total-degree grading of `N` with the shifts.
    pub fn grading(&self) -> ModuleGrading {
        ModuleGrading::new(
            RingGrading::total(self.nvars),
            self.shifts.iter().map(|&a| vec![a]).collect(),
            TieOrder::None,
        )
        .expect("valid shifts")
    }

    fn check(&self, m: &ModuleElement) -> Result<()> {
        if m.rank() != self.rank() {
            return Err(Error::usage("element rank does not match the context"));
        }
        if m.terms().any(|(_, mon, _)| mon.exponents()[self.t_index] != 0) {
            return Err(Error::usage(
                "element already involves the homogenizing variable",
            ));
        }
        Ok(())
    }

    /// `m^H`: each term `x^a e_i` gets `t^(max a_j + deg m - a_i - |a|)`.
    pub fn homogenize(&self, m: &ModuleElement) -> Result<ModuleElement> {
        self.check(m)?;
        let Some(d) = m
            .terms()
            .map(|(i, mon, _)| mon.total_degree() as i64 + self.shifts[i])
            .max()
        else {
            return Ok(m.clone());
        };
        let top = self.shifts.iter().max().copied().unwrap_or(0) + d;
        let mut out = ModuleElement::zero(m.rank());
        for (i, mon, c) in m.terms() {
            let mut e = mon.exponents().to_vec();
            e[self.t_index] = (top - self.shifts[i] - mon.total_degree() as i64) as u32;
            out.add_term(i, Monomial::new(e), c.clone());
        }
        Ok(out)
    }

    /// `m^D`: set `t = 1`.
    pub fn dehomogenize(&self, m: &ModuleElement) -> ModuleElement {
        let mut out = ModuleElement::zero(m.rank());
        for (i, mon, c) in m.terms() {
            let mut e = mon.exponents().to_vec();
            e[self.t_index] = 0;
            out.add_term(i, Monomial::new(e), c.clone());
        }
        out
    }
}

/// Homogenized generators, with the H-basis certificate that makes them
/// generate `M^H`.
#[derive(Clone, Debug)]
pub struct HomogenizedSet {
    pub elements: Vec<ModuleElement>,
    /// True when the inputs are a Macaulay H-basis.
    pub generates: bool,
    pub witness: Option<CriterionWitness>,
}

pub fn homogenize_generators(
    generators: &[ModuleElement],
    ctx: &HomogenizationContext,
    field: FieldSpec,
) -> Result<HomogenizedSet> {
    let elements = generators
        .iter()
        .map(|g| ctx.homogenize(g))
        .collect::<Result<Vec<_>>>()?;
    let nonzero: Vec<ModuleElement> = generators.iter().filter(|g| !g.is_zero()).cloned().collect();
    let report = buchberger_criterion(&nonzero, &ctx.grading(), field)?;
    Ok(HomogenizedSet {
        elements,
        generates: report.passed,
        witness: report.witness,
    })
}

#[derive(Clone, Debug)]
pub struct HomogenizationReport {
    pub criterion_passed: bool,
    pub witness: Option<CriterionWitness>,
    pub samples: usize,
    /// Samples `m` with `m^H` in the module generated by the `m_i^H`.
    pub members: usize,
}

impl HomogenizationReport {
    /// The H-basis property forces every sample to be a member.
    pub fn consistent(&self) -> bool {
        !self.criterion_passed || self.members == self.samples
    }
}

/// Checks the H-basis criterion and samples `m in M` to test whether `m^H`
/// lies in the module generated by the homogenized generators. Half of the
/// samples are random combinations of the generators, the other half
/// monomial multiples of leading-form syzygies applied to them.
pub fn verify_homogenization_equivalence(
    generators: &[ModuleElement],
    ctx: &HomogenizationContext,
    field: FieldSpec,
    samples: usize,
    seed: u64,
) -> Result<HomogenizationReport> {
    let set = homogenize_generators(generators, ctx, field)?;
    let hom: Vec<ModuleElement> = set.elements.iter().filter(|m| !m.is_zero()).cloned().collect();
    // Homogeneous generators are a Macaulay basis of the module they generate.
    let reducer = Reducer::new(hom, ctx.grading(), field)?;
    let mut shape = SampleShape::new(ctx.nvars, 2);
    let mut allowed = vec![true; ctx.nvars];
    allowed[ctx.t_index] = false;
    shape.allowed = Some(allowed);
    let nonzero: Vec<ModuleElement> = generators.iter().filter(|g| !g.is_zero()).cloned().collect();
    let lfs = nonzero
        .iter()
        .map(|g| leading_form(g, &ctx.grading()).map(|p| p.element))
        .collect::<Result<Vec<_>>>()?;
    let syz = leading_syzygy_generators(&lfs, &ctx.grading(), field)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut members = 0;
    for k in 0..samples {
        let m = if k % 2 == 1 && !syz.is_empty() {
            let s = &syz[(k / 2) % syz.len()];
            let r = shape.random_monomial(&mut rng);
            s.apply(&nonzero, ctx.rank()).mul_term(&r, &field.one())
        } else {
            shape.random_combination(&mut rng, field, generators, ctx.rank())
        };
        let h = ctx.homogenize(&m)?;
        if reducer.reduces_to_zero(&h)?.0 {
            members += 1;
        }
    }
    Ok(HomogenizationReport {
        criterion_passed: set.generates,
        witness: set.witness,
        samples,
        members,
    })
}

/// Whether `m` lies in the module with Macaulay basis `basis`.
pub fn is_member(m: &ModuleElement, basis: &MacaulayBasis) -> Result<bool> {
    Ok(basis.reducer().reduces_to_zero(m)?.0)
}

//! Seeded random elements for property checks and membership sampling.

use rand::Rng;

use crate::coeff::FieldSpec;
use crate::polymod::{ModuleElement, Monomial, Polynomial};

/// Shape of random polynomials.
#[derive(Clone, Debug)]
pub struct SampleShape {
    pub nvars: usize,
    pub max_degree: u32,
    pub max_terms: usize,
    pub coeff_bound: i64,
    /// Variables allowed to appear; `None` means all.
    pub allowed: Option<Vec<bool>>,
}

impl SampleShape {
    pub fn new(nvars: usize, max_degree: u32) -> Self {
        SampleShape {
            nvars,
            max_degree,
            max_terms: 4,
            coeff_bound: 5,
            allowed: None,
        }
    }

    pub fn random_monomial<R: Rng>(&self, rng: &mut R) -> Monomial {
        let total = rng.gen_range(0..=self.max_degree);
        let mut e = vec![0u32; self.nvars];
        let vars: Vec<usize> = (0..self.nvars)
            .filter(|&j| self.allowed.as_ref().map_or(true, |a| a[j]))
            .collect();
        if !vars.is_empty() {
            for _ in 0..total {
                e[vars[rng.gen_range(0..vars.len())]] += 1;
            }
        }
        Monomial::new(e)
    }

    pub fn random_polynomial<R: Rng>(&self, rng: &mut R, field: FieldSpec) -> Polynomial {
        let n = rng.gen_range(1..=self.max_terms.max(1));
        let mut p = Polynomial::zero();
        for _ in 0..n {
            let c = rng.gen_range(-self.coeff_bound..=self.coeff_bound);
            p.add_term(self.random_monomial(rng), field.from_i64(c));
        }
        p
    }

    pub fn random_element<R: Rng>(&self, rng: &mut R, field: FieldSpec, rank: usize) -> ModuleElement {
        ModuleElement::new((0..rank).map(|_| self.random_polynomial(rng, field)).collect())
    }

    /// A random combination `sum r_i g_i` of the generators.
    pub fn random_combination<R: Rng>(
        &self,
        rng: &mut R,
        field: FieldSpec,
        generators: &[ModuleElement],
        rank: usize,
    ) -> ModuleElement {
        let coeffs: Vec<Polynomial> = generators
            .iter()
            .map(|_| self.random_polynomial(rng, field))
            .collect();
        ModuleElement::combination(&coeffs, generators, rank)
    }
}

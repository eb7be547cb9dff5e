//! Reference implementations for tests: textbook Buchberger over a term order,
//! brute-force graded dimensions, and exact span comparison.
//!
//! Nothing here calls into the library's algorithms; `macaulay` is only used
//! to convert values in and out.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use macaulay::{FieldSpec, Monomial, Polynomial, Scalar};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub use num_rational::BigRational as Rational;

pub type Exp = Vec<u32>;

/// ℚ, or F_p with residues stored as integers in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Field {
    pub p: Option<u64>,
}

impl Field {
    pub const Q: Field = Field { p: None };

    pub fn prime(p: u64) -> Field {
        Field { p: Some(p) }
    }

    pub fn of(spec: FieldSpec) -> Field {
        match spec.characteristic() {
            0 => Field::Q,
            p => Field::prime(p),
        }
    }

    pub fn norm(&self, x: BigRational) -> BigRational {
        match self.p {
            None => x,
            Some(p) => {
                let p = BigInt::from(p);
                let n = x.numer().mod_floor(&p);
                let d = x.denom().mod_floor(&p);
                assert!(!d.is_zero(), "denominator vanishes mod p");
                let inv = d.modpow(&(&p - 2), &p);
                BigRational::from_integer((n * inv).mod_floor(&p))
            }
        }
    }

    pub fn int(&self, n: i64) -> BigRational {
        self.norm(BigRational::from_integer(n.into()))
    }

    pub fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        self.norm(a + b)
    }

    pub fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        self.norm(a * b)
    }

    pub fn neg(&self, a: &BigRational) -> BigRational {
        self.norm(-a)
    }

    pub fn inv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero());
        self.norm(a.recip())
    }
}

/// A polynomial as a sparse exponent map.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly {
    pub terms: BTreeMap<Exp, BigRational>,
}

impl Poly {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn monomial(e: Exp, c: BigRational) -> Poly {
        let mut p = Poly::default();
        if !c.is_zero() {
            p.terms.insert(e, c);
        }
        p
    }

    pub fn add_term(&mut self, k: &Field, e: Exp, c: BigRational) {
        let v = match self.terms.get(&e) {
            Some(old) => k.add(old, &c),
            None => k.norm(c),
        };
        if v.is_zero() {
            self.terms.remove(&e);
        } else {
            self.terms.insert(e, v);
        }
    }

    pub fn add(&self, k: &Field, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(k, e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, k: &Field, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(k, e.clone(), k.neg(c));
        }
        out
    }

    pub fn scale_shift(&self, k: &Field, c: &BigRational, e: &[u32]) -> Poly {
        let mut out = Poly::default();
        for (f, d) in &self.terms {
            out.add_term(k, f.iter().zip(e).map(|(a, b)| a + b).collect(), k.mul(c, d));
        }
        out
    }

    pub fn mul(&self, k: &Field, other: &Poly) -> Poly {
        let mut out = Poly::default();
        for (e, c) in &other.terms {
            out = out.add(k, &self.scale_shift(k, c, e));
        }
        out
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    pub fn uses_only(&self, allowed: &[bool]) -> bool {
        self.terms
            .keys()
            .all(|e| e.iter().zip(allowed).all(|(&a, &ok)| ok || a == 0))
    }
}

/// A term order given by a weight matrix compared row by row.
#[derive(Clone, Debug)]
pub struct Order {
    pub rows: Vec<Vec<i64>>,
}

impl Order {
    pub fn lex(d: usize) -> Order {
        Order {
            rows: (0..d).map(|i| (0..d).map(|j| (i == j) as i64).collect()).collect(),
        }
    }

    pub fn degrevlex(d: usize) -> Order {
        let mut rows = vec![vec![1; d]];
        for i in (1..d).rev() {
            rows.push((0..d).map(|j| if j == i { -1 } else { 0 }).collect());
        }
        Order { rows }
    }

    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        for r in &self.rows {
            let wa: i64 = r.iter().zip(a).map(|(w, &e)| w * e as i64).sum();
            let wb: i64 = r.iter().zip(b).map(|(w, &e)| w * e as i64).sum();
            match wa.cmp(&wb) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        a.cmp(b)
    }

    pub fn lead<'a>(&self, p: &'a Poly) -> Option<(&'a Exp, &'a BigRational)> {
        p.terms.iter().max_by(|x, y| self.cmp(x.0, y.0))
    }
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// Full reduction of `f` by `g` (every term, not only the leading one).
pub fn normal_form(k: &Field, ord: &Order, f: &Poly, g: &[Poly]) -> Poly {
    let mut rest = f.clone();
    let mut out = Poly::default();
    while let Some((e, c)) = ord.lead(&rest).map(|(e, c)| (e.clone(), c.clone())) {
        let hit = g.iter().find_map(|h| {
            let (he, hc) = ord.lead(h)?;
            divides(he, &e).then(|| (h, he.clone(), hc.clone()))
        });
        match hit {
            Some((h, he, hc)) => {
                let shift: Exp = e.iter().zip(&he).map(|(a, b)| a - b).collect();
                let q = k.mul(&c, &k.inv(&hc));
                rest = rest.sub(k, &h.scale_shift(k, &q, &shift));
            }
            None => {
                rest.terms.remove(&e);
                out.add_term(k, e, c);
            }
        }
    }
    out
}

fn monic(k: &Field, ord: &Order, p: &Poly) -> Poly {
    let (_, c) = ord.lead(p).expect("nonzero");
    let inv = k.inv(c);
    p.scale_shift(k, &inv, &vec![0; p.terms.keys().next().unwrap().len()])
}

/// Reduced Groebner basis of an ideal by the textbook pair algorithm.
pub fn groebner(k: &Field, ord: &Order, gens: &[Poly]) -> Vec<Poly> {
    let mut g: Vec<Poly> = gens.iter().filter(|p| !p.is_zero()).cloned().collect();
    let mut pairs: Vec<(usize, usize)> = (0..g.len())
        .flat_map(|j| (0..j).map(move |i| (i, j)))
        .collect();
    while let Some((i, j)) = pairs.pop() {
        let (ei, ci) = ord.lead(&g[i]).unwrap();
        let (ej, cj) = ord.lead(&g[j]).unwrap();
        let l: Exp = ei.iter().zip(ej).map(|(a, b)| *a.max(b)).collect();
        let si: Exp = l.iter().zip(ei).map(|(a, b)| a - b).collect();
        let sj: Exp = l.iter().zip(ej).map(|(a, b)| a - b).collect();
        let s = g[i]
            .scale_shift(k, &k.inv(ci), &si)
            .sub(k, &g[j].scale_shift(k, &k.inv(cj), &sj));
        let r = normal_form(k, ord, &s, &g);
        if !r.is_zero() {
            let n = g.len();
            g.push(r);
            pairs.extend((0..n).map(|i| (i, n)));
        }
    }
    // minimalize, then reduce
    let mut min: Vec<Poly> = Vec::new();
    for (i, p) in g.iter().enumerate() {
        let e = ord.lead(p).unwrap().0;
        let redundant = g.iter().enumerate().any(|(j, q)| {
            let f = ord.lead(q).unwrap().0;
            j != i && divides(f, e) && (f != e || j < i)
        });
        if !redundant {
            min.push(p.clone());
        }
    }
    let mut out: Vec<Poly> = (0..min.len())
        .map(|i| {
            let others: Vec<Poly> = min
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, q)| q.clone())
                .collect();
            let (e, c) = ord.lead(&min[i]).unwrap();
            let mut tail = min[i].clone();
            tail.terms.remove(e);
            let mut r = normal_form(k, ord, &tail, &others);
            r.add_term(k, e.clone(), c.clone());
            monic(k, ord, &r)
        })
        .collect();
    out.sort_by(|a, b| ord.cmp(ord.lead(a).unwrap().0, ord.lead(b).unwrap().0));
    out
}

pub fn in_ideal(k: &Field, ord: &Order, f: &Poly, gb: &[Poly]) -> bool {
    normal_form(k, ord, f, gb).is_zero()
}

/// Mutual membership of two ideals.
pub fn same_ideal(k: &Field, a: &[Poly], b: &[Poly], nvars: usize) -> bool {
    let ord = Order::degrevlex(nvars);
    let ga = groebner(k, &ord, a);
    let gb = groebner(k, &ord, b);
    a.iter().all(|f| in_ideal(k, &ord, f, &gb)) && b.iter().all(|f| in_ideal(k, &ord, f, &ga))
}

/// Rank of a set of sparse vectors.
pub fn rank<K: Ord + Clone>(k: &Field, vectors: &[BTreeMap<K, BigRational>]) -> usize {
    let mut rows: Vec<(K, BTreeMap<K, BigRational>)> = Vec::new();
    for v in vectors {
        let mut v = v.clone();
        for (piv, row) in &rows {
            if let Some(c) = v.get(piv).cloned() {
                for (key, x) in row {
                    let cur = v.get(key).cloned().unwrap_or_else(BigRational::zero);
                    let nv = k.add(&cur, &k.neg(&k.mul(&c, x)));
                    if nv.is_zero() {
                        v.remove(key);
                    } else {
                        v.insert(key.clone(), nv);
                    }
                }
            }
        }
        if let Some((piv, c)) = v.iter().next().map(|(a, b)| (a.clone(), b.clone())) {
            let inv = k.inv(&c);
            let row: BTreeMap<K, BigRational> = v.into_iter().map(|(a, b)| (a, k.mul(&b, &inv))).collect();
            // keep earlier rows reduced against the new pivot
            for (_, r) in rows.iter_mut() {
                if let Some(c) = r.get(&piv).cloned() {
                    for (key, x) in &row {
                        let cur = r.get(key).cloned().unwrap_or_else(BigRational::zero);
                        let nv = k.add(&cur, &k.neg(&k.mul(&c, x)));
                        if nv.is_zero() {
                            r.remove(key);
                        } else {
                            r.insert(key.clone(), nv);
                        }
                    }
                }
            }
            rows.push((piv, row));
        }
    }
    rows.len()
}

pub fn span_rank(k: &Field, polys: &[Poly]) -> usize {
    let vs: Vec<_> = polys.iter().map(|p| p.terms.clone()).collect();
    rank(k, &vs)
}

pub fn same_span(k: &Field, a: &[Poly], b: &[Poly]) -> bool {
    let ra = span_rank(k, a);
    let rb = span_rank(k, b);
    let all: Vec<Poly> = a.iter().chain(b).cloned().collect();
    ra == rb && span_rank(k, &all) == ra
}

/// Exponent vectors of total degree `n` in `d` variables.
pub fn monomials(d: usize, n: u32) -> Vec<Exp> {
    if d == 0 {
        return if n == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for a in 0..=n {
        for mut rest in monomials(d - 1, n - a) {
            rest.insert(0, a);
            out.push(rest);
        }
    }
    out
}

/// `dim I_n` for homogeneous generators, from the span of all products
/// `x^a * g` of total degree `n`.
pub fn ideal_slice_dim(k: &Field, gens: &[Poly], nvars: usize, n: u32) -> usize {
    let mut products = Vec::new();
    for g in gens.iter().filter(|g| !g.is_zero()) {
        assert!(g.is_homogeneous(), "brute-force dimension needs homogeneous generators");
        let dg = g.total_degree().unwrap();
        if dg > n {
            continue;
        }
        for e in monomials(nvars, n - dg) {
            products.push(g.scale_shift(k, &BigRational::one(), &e));
        }
    }
    span_rank(k, &products)
}

pub fn binomial(n: u64, r: u64) -> u64 {
    (0..r).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

pub fn from_library(p: &Polynomial) -> Poly {
    let mut out = Poly::default();
    for (m, c) in p.terms() {
        let v = match c {
            Scalar::Rational(q) => q.clone(),
            Scalar::Residue { value, .. } => BigRational::from_integer((*value).into()),
        };
        out.terms.insert(m.exponents().to_vec(), v);
    }
    out
}

pub fn to_library(p: &Poly, field: FieldSpec) -> Polynomial {
    let mut out = Polynomial::zero();
    for (e, c) in &p.terms {
        let s = field.from_ratio(c.numer(), c.denom()).expect("representable");
        out.add_term(Monomial::new(e.clone()), s);
    }
    out
}

/// Readable form for assertion messages.
pub fn describe(p: &Poly) -> String {
    let mut parts = Vec::new();
    for (e, c) in p.terms.iter().rev() {
        let mono: Vec<String> = e
            .iter()
            .enumerate()
            .filter(|(_, &a)| a > 0)
            .map(|(i, &a)| if a == 1 { format!("x{}", i + 1) } else { format!("x{}^{}", i + 1, a) })
            .collect();
        let sign = if c.is_negative() { "-" } else { "+" };
        parts.push(format!("{sign}{}*{}", c.abs(), if mono.is_empty() { "1".into() } else { mono.join("*") }));
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" ")
    }
}

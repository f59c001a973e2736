//! The Hecke algebra over `ℤ[v, v^{-1}]` in its standard basis, used as a
//! decategorification oracle: the class of a complex (alternating sum over
//! summands of `v^{shift}` times the product of `b_s` over the word) is
//! invariant under Gaussian elimination, and the class of a Rouquier complex
//! for a positive word equals the product of the `δ_s`.
//!
//! Group elements are enumerated as exact rational reflection matrices on
//! `𝔥*` by breadth-first closure, which restricts the checks to realizations
//! with a finite faithful reflection action; anything else is reported as
//! unsupported, never silently passed.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt::Write as _;
use std::sync::Arc;

use num::{One, Zero};

use crate::complex::Complex;
use crate::coxeter::Gen;
use crate::poly::{coeff_string, Coeff};
use crate::realization::Realization;
use crate::{Error, Result};

/// A Laurent polynomial in `v` with rational coefficients; no zero
/// coefficients stored.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Coeff>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::v_pow(0)
    }

    pub fn v_pow(k: i64) -> Self {
        let mut p = Self::default();
        p.add_term(k, Coeff::one());
        p
    }

    pub fn add_term(&mut self, k: i64, c: Coeff) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(k) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&k, c) in &other.terms {
            out.add_term(k, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&k, c) in &other.terms {
            out.add_term(k, -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(&k, c)| (k, -c.clone())).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::default();
        for (&k1, c1) in &self.terms {
            for (&k2, c2) in &other.terms {
                out.add_term(k1 + k2, c1 * c2);
            }
        }
        out
    }
}

impl std::fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (&k, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            match k {
                0 => write!(f, "{}", coeff_string(c))?,
                1 if c.is_one() => write!(f, "v")?,
                1 => write!(f, "{}*v", coeff_string(c))?,
                _ if c.is_one() => write!(f, "v^{k}")?,
                _ => write!(f, "{}*v^{k}", coeff_string(c))?,
            }
        }
        Ok(())
    }
}

/// Enumerated group acting on `𝔥*` by exact reflection matrices, with BFS
/// lengths, canonical shortest words, and the right multiplication table.
pub struct GroupTable {
    pub real: Arc<Realization>,
    pub lengths: Vec<u32>,
    /// A canonical reduced word per element: the shortest BFS witness,
    /// lexicographically first among the shortest.
    pub words: Vec<Vec<Gen>>,
    right_mult: Vec<Vec<usize>>,
}

impl GroupTable {
    pub fn order(&self) -> usize {
        self.lengths.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn right_multiply(&self, elt: usize, s: Gen) -> usize {
        self.right_mult[elt][s.0 as usize]
    }

    pub fn length(&self, elt: usize) -> u32 {
        self.lengths[elt]
    }

    pub fn word_string(&self, elt: usize) -> String {
        if self.words[elt].is_empty() {
            return "e".into();
        }
        self.words[elt]
            .iter()
            .map(|&g| self.real.system.name(g))
            .collect::<Vec<_>>()
            .join("")
    }
}

/// Breadth-first closure of the generator matrices, up to `cap` elements.
pub fn enumerate_group(real: Arc<Realization>, cap: usize) -> Result<GroupTable> {
    let rank = real.rank;
    let n = real.system.gen_count();
    // generator matrices on 𝔥*: (M_s)_{ij} = δ_ij − α_s[i]·α_s^∨[j]
    let mut gen_mats = Vec::with_capacity(n);
    for s in real.system.gens() {
        let mut m = vec![Coeff::zero(); rank * rank];
        for i in 0..rank {
            for j in 0..rank {
                let mut v = if i == j { Coeff::one() } else { Coeff::zero() };
                v -= &real.root(s)[i] * &real.coroot(s)[j];
                m[i * rank + j] = v;
            }
        }
        gen_mats.push(m);
    }
    let idmat: Vec<Coeff> =
        (0..rank * rank).map(|k| if k % (rank + 1) == 0 { Coeff::one() } else { Coeff::zero() }).collect();
    let mut mats = vec![idmat.clone()];
    let mut index: HashMap<Vec<Coeff>, usize> = HashMap::from([(idmat, 0)]);
    let mut lengths = vec![0u32];
    let mut words: Vec<Vec<Gen>> = vec![Vec::new()];
    let mut right_mult: Vec<Vec<usize>> = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(e) = queue.pop_front() {
        let mut row = Vec::with_capacity(n);
        for s in real.system.gens() {
            let prod = mat_mul(rank, &mats[e], &gen_mats[s.0 as usize]);
            let idx = match index.get(&prod) {
                Some(&i) => i,
                None => {
                    let i = mats.len();
                    if i >= cap {
                        return Err(Error::CapExceeded(cap));
                    }
                    index.insert(prod.clone(), i);
                    mats.push(prod);
                    lengths.push(lengths[e] + 1);
                    let mut w = words[e].clone();
                    w.push(s);
                    words.push(w);
                    queue.push_back(i);
                    i
                }
            };
            row.push(idx);
        }
        right_mult.push(row);
    }
    // sanity: multiplying by a generator changes the length by exactly one
    for e in 0..mats.len() {
        for s in 0..n {
            let f = right_mult[e][s];
            let de = lengths[e] as i64;
            let df = lengths[f] as i64;
            if (de - df).abs() != 1 {
                return Err(Error::Internal(format!(
                    "length sanity fails: ℓ({e}) = {de}, ℓ({e}·s{s}) = {df}"
                )));
            }
        }
    }
    Ok(GroupTable { real, lengths, words, right_mult })
}

fn mat_mul(rank: usize, a: &[Coeff], b: &[Coeff]) -> Vec<Coeff> {
    let mut out = vec![Coeff::zero(); rank * rank];
    for i in 0..rank {
        for k in 0..rank {
            let aik = &a[i * rank + k];
            if aik.is_zero() {
                continue;
            }
            for j in 0..rank {
                let prod = aik * &b[k * rank + j];
                out[i * rank + j] += prod;
            }
        }
    }
    out
}

/// An element of the Hecke algebra in standard-basis coordinates.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct HeckeElt {
    pub coeffs: BTreeMap<usize, LaurentPoly>,
}

impl HeckeElt {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn delta(elt: usize) -> Self {
        HeckeElt { coeffs: BTreeMap::from([(elt, LaurentPoly::one())]) }
    }

    pub fn unit() -> Self {
        Self::delta(0)
    }

    pub fn add_term(&mut self, elt: usize, p: LaurentPoly) {
        if p.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.coeffs.entry(elt) {
            Entry::Vacant(e) => {
                e.insert(p);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get().add(&p);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&e, p) in &other.coeffs {
            out.add_term(e, p.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&e, p) in &other.coeffs {
            out.add_term(e, p.neg());
        }
        out
    }

    pub fn scale(&self, p: &LaurentPoly) -> Self {
        let mut out = HeckeElt::zero();
        for (&e, q) in &self.coeffs {
            out.add_term(e, p.mul(q));
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `b_s = δ_s + v`.
    pub fn b(table: &GroupTable, s: Gen) -> Self {
        let mut out = Self::delta(table.right_multiply(table.identity(), s));
        out.add_term(table.identity(), LaurentPoly::v_pow(1));
        out
    }

    /// Right multiplication by `δ_s`: `δ_w δ_s = δ_{ws}` when the length goes
    /// up, `δ_{ws} + (v^{-1} − v) δ_w` when it goes down.
    pub fn mul_delta_s(&self, table: &GroupTable, s: Gen) -> Self {
        let mut out = HeckeElt::zero();
        let vdiff = {
            let mut p = LaurentPoly::v_pow(-1);
            p.add_term(1, -Coeff::one());
            p
        };
        for (&w, p) in &self.coeffs {
            let ws = table.right_multiply(w, s);
            out.add_term(ws, p.clone());
            if table.length(ws) < table.length(w) {
                out.add_term(w, p.mul(&vdiff));
            }
        }
        out
    }

    /// Bilinear product, by right recursion on a reduced word of each basis
    /// element of `other`.
    pub fn multiply(&self, table: &GroupTable, other: &Self) -> Self {
        let mut out = HeckeElt::zero();
        for (&u, q) in &other.coeffs {
            let mut acc = self.clone();
            for &s in &table.words[u] {
                acc = acc.mul_delta_s(table, s);
            }
            for (&w, p) in &acc.coeffs {
                out.add_term(w, p.mul(q));
            }
        }
        out
    }

    /// Sorted `coeff * d[word]` lines with a canonical reduced word per
    /// element.
    pub fn render(&self, table: &GroupTable) -> String {
        let mut keys: Vec<usize> = self.coeffs.keys().copied().collect();
        keys.sort_by_key(|&e| (table.length(e), table.word_string(e)));
        let mut out = String::new();
        for e in keys {
            let _ = writeln!(out, "({}) * d[{}]", self.coeffs[&e], table.word_string(e));
        }
        out
    }
}

/// The class of a complex: `Σ (−1)^{degree} v^{shift} Π b_{s_i}` over the
/// summands, in the standard basis.
pub fn class_of_complex(table: &GroupTable, c: &Complex) -> HeckeElt {
    let mut out = HeckeElt::zero();
    let mut b_cache: HashMap<crate::coxeter::Word, HeckeElt> = HashMap::new();
    for id in c.summand_ids() {
        let s = c.summand(id);
        let word = &s.object.word;
        let b_word = b_cache
            .entry(word.clone())
            .or_insert_with(|| {
                let mut acc = HeckeElt::unit();
                for &g in &word.0 {
                    acc = acc.multiply(table, &HeckeElt::b(table, g));
                }
                acc
            })
            .clone();
        let eff_shift = s.object.shift + s.twist;
        let mut sign_v = LaurentPoly::v_pow(eff_shift);
        if s.degree.rem_euclid(2) == 1 {
            sign_v = sign_v.neg();
        }
        let term = b_word.scale(&sign_v);
        out = out.add(&term);
    }
    out
}

/// The product `δ_{s_1} ⋯ δ_{s_n}` of a word.
pub fn delta_product(table: &GroupTable, w: &crate::coxeter::Word) -> HeckeElt {
    let mut acc = HeckeElt::unit();
    for &s in &w.0 {
        acc = acc.mul_delta_s(table, s);
    }
    acc
}

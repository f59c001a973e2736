//! The graded ring `R = S(𝔥*)` with its reflection action and the Demazure
//! operators `∂_s(f) = (f − s(f)) / α_s`.
//!
//! The divisibility of `f − s(f)` by `α_s` is a theorem; the division is
//! performed exactly and re-checked by multiplication, so a nonzero remainder
//! surfaces as an internal-inconsistency error (a broken realization) rather
//! than a wrong answer.

use std::sync::Arc;

use num::{One, Zero};

use crate::poly::{Coeff, Poly};
use crate::realization::{pair, Realization};
use crate::{coxeter::Gen, Error, Result};

pub struct RingCtx {
    pub real: Arc<Realization>,
    /// Images `s(x_i)` of the basis covectors, per generator.
    refl_vars: Vec<Vec<Poly>>,
    alphas: Vec<Poly>,
    deltas: Vec<Poly>,
}

impl RingCtx {
    pub fn new(real: Arc<Realization>) -> Result<Self> {
        let violations = real.validate();
        if !violations.is_empty() {
            return Err(Error::InvalidData(format!(
                "realization is not valid: {}",
                violations.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
            )));
        }
        let rank = real.rank;
        let mut refl_vars = Vec::new();
        for s in real.system.gens() {
            let mut images = Vec::with_capacity(rank);
            for i in 0..rank {
                let mut e = vec![Coeff::zero(); rank];
                e[i] = Coeff::one();
                images.push(Poly::linear(&real.reflect_covector(s, &e)));
            }
            refl_vars.push(images);
        }
        let alphas = real.system.gens().map(|s| Poly::linear(real.root(s))).collect();
        let deltas = real.system.gens().map(|s| Poly::linear(real.delta(s))).collect();
        Ok(RingCtx { real, refl_vars, alphas, deltas })
    }

    pub fn rank(&self) -> usize {
        self.real.rank
    }

    pub fn alpha(&self, s: Gen) -> &Poly {
        &self.alphas[s.0 as usize]
    }

    pub fn delta(&self, s: Gen) -> &Poly {
        &self.deltas[s.0 as usize]
    }

    /// `s(δ_s) = δ_s − α_s`.
    pub fn s_delta(&self, s: Gen) -> Poly {
        self.delta(s).sub(self.alpha(s))
    }

    /// The ring automorphism extending `s(λ) = λ − ⟨λ, α_s^∨⟩ α_s`.
    pub fn reflect(&self, s: Gen, f: &Poly) -> Poly {
        f.substitute(self.rank(), &self.refl_vars[s.0 as usize])
    }

    /// Pairing of a linear polynomial against `α_s^∨`.
    pub fn pair_coroot(&self, f: &Poly, s: Gen) -> Coeff {
        let mut coords = vec![Coeff::zero(); self.rank()];
        for (m, c) in f.terms() {
            debug_assert_eq!(m.total_deg(), 1);
            let i = m.0.iter().position(|&e| e == 1).unwrap();
            coords[i] = c.clone();
        }
        pair(&coords, self.real.coroot(s))
    }

    /// `∂_s(f) = (f − s(f)) / α_s`; degree drops by 2.
    pub fn demazure(&self, s: Gen, f: &Poly) -> Result<Poly> {
        let num = f.sub(&self.reflect(s, f));
        let q = num.divide_by_linear(self.alpha(s))?;
        if q.mul(self.alpha(s)) != num {
            return Err(Error::Internal("Demazure division re-multiplication failed".into()));
        }
        Ok(q)
    }

    /// Write `f = a + b·δ_s` with `a`, `b` both `s`-invariant:
    /// `b = ∂_s(f)` and `a = f − b·δ_s`.
    pub fn demazure_split(&self, s: Gen, f: &Poly) -> Result<(Poly, Poly)> {
        let b = self.demazure(s, f)?;
        let a = f.sub(&b.mul(self.delta(s)));
        Ok((a, b))
    }
}

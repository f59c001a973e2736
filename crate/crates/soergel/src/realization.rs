//! Realizations of Coxeter systems: a free module `𝔥` of finite rank with
//! simple roots `α_s ∈ 𝔥*`, simple coroots `α_s^∨ ∈ 𝔥`, and a chosen
//! `δ_s ∈ 𝔥*` with `⟨δ_s, α_s^∨⟩ = 1` for each generator.
//!
//! Everything downstream (the ring action, the bimodule bases, the complexes)
//! is driven by this data. The validator checks the pairing conditions and
//! that the reflection formula squares to the identity; it does not attempt
//! the compatibility conditions relating the Cartan entries to the orders
//! `m_st`, which nothing in this crate consumes.

use std::fmt;

use num::{One, Zero};
use serde_json::Value;

use crate::coxeter::{CoxeterSystem, Gen, INFINITE_ORDER};
use crate::poly::{coeff_string, parse_coeff, Coeff};
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct Realization {
    pub system: CoxeterSystem,
    pub rank: usize,
    /// Coordinates of `α_s` in the chosen basis of `𝔥*`, per generator.
    pub roots: Vec<Vec<Coeff>>,
    /// Coordinates of `α_s^∨` in the dual basis of `𝔥`, per generator.
    pub coroots: Vec<Vec<Coeff>>,
    /// Coordinates of `δ_s` in the basis of `𝔥*`, per generator.
    pub deltas: Vec<Vec<Coeff>>,
    /// When set, `δ_s` existence is required over `ℤ` rather than `ℚ`.
    pub lattice: bool,
}

/// One failed validation condition; these are data, not failures.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub condition: String,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.condition, self.detail)
    }
}

/// `⟨λ, v⟩` for `λ ∈ 𝔥*`, `v ∈ 𝔥` in coordinates.
pub fn pair(lambda: &[Coeff], v: &[Coeff]) -> Coeff {
    lambda.iter().zip(v).map(|(a, b)| a * b).sum()
}

impl Realization {
    /// Build and shape-check; pairing conditions are reported by
    /// [`Realization::validate`], not here.
    pub fn new(
        system: CoxeterSystem,
        rank: usize,
        roots: Vec<Vec<Coeff>>,
        coroots: Vec<Vec<Coeff>>,
        deltas: Option<Vec<Vec<Coeff>>>,
        lattice: bool,
    ) -> Result<Self> {
        let n = system.gen_count();
        for (name, data) in [("roots", &roots), ("coroots", &coroots)] {
            if data.len() != n || data.iter().any(|v| v.len() != rank) {
                return Err(Error::InvalidData(format!(
                    "{name} must hold one length-{rank} vector per generator"
                )));
            }
        }
        let deltas = match deltas {
            Some(d) => {
                if d.len() != n || d.iter().any(|v| v.len() != rank) {
                    return Err(Error::InvalidData(format!(
                        "deltas must hold one length-{rank} vector per generator"
                    )));
                }
                d
            }
            None => solve_deltas(&system, rank, &coroots, lattice)?,
        };
        Ok(Realization { system, rank, roots, coroots, deltas, lattice })
    }

    pub fn root(&self, s: Gen) -> &[Coeff] {
        &self.roots[s.0 as usize]
    }

    pub fn coroot(&self, s: Gen) -> &[Coeff] {
        &self.coroots[s.0 as usize]
    }

    pub fn delta(&self, s: Gen) -> &[Coeff] {
        &self.deltas[s.0 as usize]
    }

    /// Cartan entry `a_st = ⟨α_s, α_t^∨⟩`.
    pub fn cartan(&self, s: Gen, t: Gen) -> Coeff {
        pair(self.root(s), self.coroot(t))
    }

    /// All failed conditions; an empty list means the realization is valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let two = Coeff::from_integer(2.into());
        for s in self.system.gens() {
            let name = self.system.name(s);
            let ss = pair(self.root(s), self.coroot(s));
            if ss != two {
                out.push(Violation {
                    condition: "root-coroot pairing".into(),
                    detail: format!("⟨α_{name}, α_{name}^∨⟩ = {} (expected 2)", coeff_string(&ss)),
                });
            }
            let ds = pair(self.delta(s), self.coroot(s));
            if !ds.is_one() {
                out.push(Violation {
                    condition: "delta pairing".into(),
                    detail: format!("⟨δ_{name}, α_{name}^∨⟩ = {} (expected 1)", coeff_string(&ds)),
                });
            }
            if self.coroot(s).iter().all(Zero::is_zero) {
                out.push(Violation {
                    condition: "Demazure surjectivity".into(),
                    detail: format!("α_{name}^∨ = 0, so no δ_{name} can pair to 1"),
                });
            } else if self.lattice && !integrally_solvable(self.coroot(s)) {
                out.push(Violation {
                    condition: "Demazure surjectivity".into(),
                    detail: format!(
                        "⟨δ, α_{name}^∨⟩ = 1 has no solution over the lattice"
                    ),
                });
            }
            // reflection formula squares to the identity on the basis of 𝔥*
            for i in 0..self.rank {
                let mut e = vec![Coeff::zero(); self.rank];
                e[i] = Coeff::one();
                let once = self.reflect_covector(s, &e);
                let twice = self.reflect_covector(s, &once);
                if twice != e {
                    out.push(Violation {
                        condition: "reflection involution".into(),
                        detail: format!("s = {name}, basis covector {i}"),
                    });
                }
            }
        }
        out
    }

    /// `s(λ) = λ − ⟨λ, α_s^∨⟩ α_s` in coordinates.
    pub fn reflect_covector(&self, s: Gen, lambda: &[Coeff]) -> Vec<Coeff> {
        let c = pair(lambda, self.coroot(s));
        lambda.iter().zip(self.root(s)).map(|(l, a)| l - &c * a).collect()
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(text)?;
        Self::from_json(&v)
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let names: Vec<String> = v
            .get("generators")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("realization needs a \"generators\" array".into()))?
            .iter()
            .map(|x| {
                x.as_str()
                    .map(str::to_string)
                    .ok_or_else(|| Error::Parse("generator names must be strings".into()))
            })
            .collect::<Result<_>>()?;
        let matrix: Vec<Vec<u32>> = v
            .get("coxeter_matrix")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("realization needs a \"coxeter_matrix\"".into()))?
            .iter()
            .map(|row| {
                row.as_array()
                    .ok_or_else(|| Error::Parse("coxeter_matrix rows must be arrays".into()))?
                    .iter()
                    .map(|x| {
                        x.as_u64()
                            .filter(|&m| m <= u32::MAX as u64)
                            .map(|m| m as u32)
                            .ok_or_else(|| {
                                Error::Parse("coxeter_matrix entries must be small naturals".into())
                            })
                    })
                    .collect()
            })
            .collect::<Result<_>>()?;
        let system = CoxeterSystem::new(names, matrix)?;
        let rank = v
            .get("rank")
            .and_then(Value::as_u64)
            .filter(|&r| (1..=64).contains(&r))
            .ok_or_else(|| Error::Parse("realization needs a \"rank\" in 1..=64".into()))?
            as usize;
        let vectors = |key: &str| -> Result<Option<Vec<Vec<Coeff>>>> {
            let Some(arr) = v.get(key) else { return Ok(None) };
            let arr = arr
                .as_array()
                .ok_or_else(|| Error::Parse(format!("\"{key}\" must be an array")))?;
            let mut out = Vec::new();
            for row in arr {
                let row = row
                    .as_array()
                    .ok_or_else(|| Error::Parse(format!("\"{key}\" rows must be arrays")))?;
                let mut coords = Vec::new();
                for x in row {
                    let s = x
                        .as_str()
                        .ok_or_else(|| Error::Parse("coordinates are rational strings".into()))?;
                    coords.push(parse_coeff(s)?);
                }
                out.push(coords);
            }
            Ok(Some(out))
        };
        let roots =
            vectors("roots")?.ok_or_else(|| Error::Parse("realization needs \"roots\"".into()))?;
        let coroots = vectors("coroots")?
            .ok_or_else(|| Error::Parse("realization needs \"coroots\"".into()))?;
        let deltas = vectors("deltas")?;
        let lattice = v.get("lattice").and_then(Value::as_bool).unwrap_or(false);
        Self::new(system, rank, roots, coroots, deltas, lattice)
    }

    /// A realization shipped with the crate, by name; see [`BUILTIN_NAMES`].
    pub fn builtin(name: &str) -> Option<Self> {
        let text = match name {
            "a1" => include_str!("../../../realizations/a1.json"),
            "a1xa1" => include_str!("../../../realizations/a1xa1.json"),
            "a2" => include_str!("../../../realizations/a2.json"),
            "b2" => include_str!("../../../realizations/b2.json"),
            "u2neg2" => include_str!("../../../realizations/u2neg2.json"),
            "a3" => include_str!("../../../realizations/a3.json"),
            "b3" => include_str!("../../../realizations/b3.json"),
            _ => return None,
        };
        Some(Self::from_json_str(text).expect("builtin realizations are valid JSON"))
    }

    /// True when some `m_st = ∞`.
    pub fn has_infinite_order(&self) -> bool {
        let n = self.system.gen_count();
        (0..n).any(|s| {
            (0..s).any(|t| self.system.order(Gen(s as u8), Gen(t as u8)) == INFINITE_ORDER)
        })
    }
}

pub const BUILTIN_NAMES: [&str; 7] = ["a1", "a1xa1", "a2", "b2", "u2neg2", "a3", "b3"];

/// Solve `⟨δ_s, α_s^∨⟩ = 1` for each generator, over `ℚ` or over `ℤ`.
fn solve_deltas(
    system: &CoxeterSystem,
    rank: usize,
    coroots: &[Vec<Coeff>],
    lattice: bool,
) -> Result<Vec<Vec<Coeff>>> {
    let mut out = Vec::new();
    for s in system.gens() {
        let co = &coroots[s.0 as usize];
        let mut delta = vec![Coeff::zero(); rank];
        if lattice {
            if !integrally_solvable(co) {
                return Err(Error::InvalidData(format!(
                    "Demazure surjectivity fails over the lattice for {}",
                    system.name(s)
                )));
            }
            // extended gcd over the integral coroot coordinates
            let ints: Vec<num::BigInt> = co.iter().map(|c| c.numer().clone()).collect();
            let coeffs = bezout(&ints);
            for (d, c) in delta.iter_mut().zip(coeffs) {
                *d = Coeff::from_integer(c);
            }
        } else {
            let Some(i) = co.iter().position(|c| !c.is_zero()) else {
                return Err(Error::InvalidData(format!(
                    "Demazure surjectivity fails: α_{}^∨ = 0",
                    system.name(s)
                )));
            };
            delta[i] = Coeff::one() / &co[i];
        }
        out.push(delta);
    }
    Ok(out)
}

/// Integral solvability of `Σ x_i c_i = 1`: all `c_i` integral with gcd 1.
fn integrally_solvable(co: &[Coeff]) -> bool {
    if co.iter().any(|c| !c.denom().is_one()) {
        return false;
    }
    let mut g = num::BigInt::zero();
    for c in co {
        g = num::Integer::gcd(&g, c.numer());
    }
    g == num::BigInt::one()
}

/// Coefficients `x` with `Σ x_i c_i = gcd(c)` for integers `c`.
fn bezout(c: &[num::BigInt]) -> Vec<num::BigInt> {
    let mut coeffs = vec![num::BigInt::zero(); c.len()];
    let mut g = num::BigInt::zero();
    for (i, ci) in c.iter().enumerate() {
        let e = num::Integer::extended_gcd(&g, ci);
        for x in coeffs.iter_mut() {
            *x *= &e.x;
        }
        coeffs[i] = e.y;
        g = e.gcd;
        if g.is_one() {
            break;
        }
    }
    coeffs
}

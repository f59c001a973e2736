//! Exact multivariate polynomials over `ℚ`, graded with linear forms in
//! degree 2.
//!
//! A [`Poly`] is a finite map from exponent vectors to nonzero rational
//! coefficients. The number of variables is the rank of the ambient
//! realization; all monomials of one polynomial have equal length exponent
//! vectors. Terms are kept in graded-lexicographic order, which fixes the
//! serialization order.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num::{BigRational, One, Signed, Zero};
use serde_json::{json, Value};
use smallvec::SmallVec;

use crate::{Error, Result};

pub type Coeff = BigRational;

/// Parse a rational written as `"p"` or `"p/q"`.
pub fn parse_coeff(s: &str) -> Result<Coeff> {
    let t = s.trim();
    BigRational::from_str(t).map_err(|e| Error::Parse(format!("bad rational {t:?}: {e}")))
}

/// Render a rational as `"p"` or `"p/q"`.
pub fn coeff_string(c: &Coeff) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Exponent vector of a monomial.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mono(pub SmallVec<[u8; 4]>);

impl Mono {
    pub fn one(rank: usize) -> Self {
        Mono(smallvec::smallvec![0; rank])
    }

    pub fn var(rank: usize, i: usize) -> Self {
        let mut m = Self::one(rank);
        m.0[i] = 1;
        m
    }

    pub fn total_deg(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        debug_assert_eq!(self.0.len(), other.0.len());
        Mono(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

// Graded lexicographic: lower total degree first, ties by exponent vector.
impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_deg()
            .cmp(&other.total_deg())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Exact multivariate polynomial; invariant: no zero coefficients stored.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Poly {
    terms: BTreeMap<Mono, Coeff>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(rank: usize, c: Coeff) -> Self {
        let mut p = Poly::zero();
        p.add_term(Mono::one(rank), c);
        p
    }

    pub fn one(rank: usize) -> Self {
        Self::constant(rank, Coeff::one())
    }

    pub fn var(rank: usize, i: usize) -> Self {
        let mut p = Poly::zero();
        p.add_term(Mono::var(rank, i), Coeff::one());
        p
    }

    /// The linear form with the given coordinates in the `𝔥*` basis.
    pub fn linear(coords: &[Coeff]) -> Self {
        let rank = coords.len();
        let mut p = Poly::zero();
        for (i, c) in coords.iter().enumerate() {
            p.add_term(Mono::var(rank, i), c.clone());
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.iter().next().map_or(false, |(m, c)| m.total_deg() == 0 && c.is_one())
    }

    /// If the polynomial is a nonzero constant, return it.
    pub fn as_constant(&self) -> Option<&Coeff> {
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            if m.total_deg() == 0 {
                return Some(c);
            }
        }
        None
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Coeff)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, m: Mono, c: Coeff) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
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

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }

    pub fn scale(&self, c: &Coeff) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Poly {
        let rank = self.rank().unwrap_or(0);
        let mut out = Poly::one(rank);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    fn rank(&self) -> Option<usize> {
        self.terms.keys().next().map(|m| m.0.len())
    }

    /// Graded degree of a homogeneous nonzero polynomial (`2 ×` the total
    /// exponent degree); `None` when zero or inhomogeneous.
    pub fn homogeneous_degree(&self) -> Option<i64> {
        let mut it = self.terms.keys();
        let d = it.next()?.total_deg();
        if it.all(|m| m.total_deg() == d) {
            Some(2 * d as i64)
        } else {
            None
        }
    }

    pub fn is_homogeneous_of(&self, d: i64) -> bool {
        self.is_zero() || self.homogeneous_degree() == Some(d)
    }

    /// Evaluate by substituting the polynomial `images[i]` for variable `i`.
    pub fn substitute(&self, rank_out: usize, images: &[Poly]) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut term = Poly::constant(rank_out, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    term = term.mul(&images[i].pow(e as u32));
                }
            }
            out = out.add(&term);
        }
        out
    }

    /// Exact division by a linear form, by long division in a pivot variable.
    ///
    /// Returns the quotient; errors if the remainder is nonzero (which signals
    /// a broken realization rather than bad input).
    pub fn divide_by_linear(&self, l: &Poly) -> Result<Poly> {
        if self.is_zero() {
            return Ok(Poly::zero());
        }
        if l.homogeneous_degree() != Some(2) {
            return Err(Error::Internal(format!("divisor is not a linear form: {l}")));
        }
        let rank = l.rank().unwrap();
        // pivot: first variable with nonzero coefficient in l
        let mut pivot = None;
        let mut pivot_coeff = Coeff::zero();
        'outer: for (m, c) in &l.terms {
            for (i, &e) in m.0.iter().enumerate() {
                if e == 1 {
                    pivot = Some(i);
                    pivot_coeff = c.clone();
                    break 'outer;
                }
            }
        }
        let p = pivot.ok_or_else(|| Error::Internal("zero divisor".into()))?;
        // l = c·x_p + rest
        let mut rest = l.clone();
        rest.add_term(Mono::var(rank, p), -pivot_coeff.clone());
        // self as a polynomial in x_p with Poly coefficients
        let dmax = self.terms.keys().map(|m| m.0[p]).max().unwrap() as usize;
        let mut coeffs: Vec<Poly> = vec![Poly::zero(); dmax + 1];
        for (m, c) in &self.terms {
            let e = m.0[p] as usize;
            let mut m2 = m.clone();
            m2.0[p] = 0;
            coeffs[e].add_term(m2, c.clone());
        }
        let inv = Coeff::one() / pivot_coeff;
        let mut quot: Vec<Poly> = vec![Poly::zero(); dmax];
        for k in (1..=dmax).rev() {
            let t = coeffs[k].scale(&inv);
            coeffs[k - 1] = coeffs[k - 1].sub(&t.mul(&rest));
            quot[k - 1] = t;
        }
        if !coeffs[0].is_zero() {
            return Err(Error::Internal(format!(
                "division of {self} by {l} leaves remainder {}",
                coeffs[0]
            )));
        }
        let mut out = Poly::zero();
        let xp = Poly::var(rank, p);
        for (k, q) in quot.iter().enumerate() {
            out = out.add(&q.mul(&xp.pow(k as u32)));
        }
        Ok(out)
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(m, c)| {
                json!({
                    "coeff": coeff_string(c),
                    "exps": m.0.iter().map(|&e| e as u64).collect::<Vec<_>>(),
                })
            })
            .collect();
        json!({ "terms": terms })
    }

    pub fn from_json(v: &Value) -> Result<Poly> {
        let terms = v
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("polynomial JSON needs a \"terms\" array".into()))?;
        let mut out = Poly::zero();
        let mut rank: Option<usize> = None;
        for t in terms {
            let c = t
                .get("coeff")
                .and_then(Value::as_str)
                .ok_or_else(|| Error::Parse("term needs a string \"coeff\"".into()))?;
            let exps = t
                .get("exps")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Parse("term needs an \"exps\" array".into()))?;
            let mut m = SmallVec::new();
            for e in exps {
                let e = e
                    .as_u64()
                    .filter(|&e| e <= u8::MAX as u64)
                    .ok_or_else(|| Error::Parse("exponent out of range".into()))?;
                m.push(e as u8);
            }
            match rank {
                None => rank = Some(m.len()),
                Some(r) if r == m.len() => {}
                _ => return Err(Error::Parse("inconsistent exponent vector lengths".into())),
            }
            out.add_term(Mono(m), parse_coeff(c)?);
        }
        Ok(out)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let mut mono = String::new();
            for (i, &e) in m.0.iter().enumerate() {
                if e == 1 {
                    mono.push_str(&format!("x{i}"));
                } else if e > 1 {
                    mono.push_str(&format!("x{i}^{e}"));
                }
            }
            if k > 0 {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let a = c.abs();
            if mono.is_empty() {
                write!(f, "{}", coeff_string(&a))?;
            } else if a.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{}*{mono}", coeff_string(&a))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Coeff {
        Coeff::from_integer(n.into())
    }

    #[test]
    fn arithmetic_and_normal_form() {
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let p = x.add(&y).mul(&x.sub(&y));
        let q2 = x.mul(&x).sub(&y.mul(&y));
        assert_eq!(p, q2);
        assert!(p.sub(&q2).is_zero());
        assert_eq!(p.homogeneous_degree(), Some(4));
        assert!(x.add(&x.mul(&x)).homogeneous_degree().is_none());
    }

    #[test]
    fn divides_by_linear_form_exactly() {
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        // l = 2x - 3y
        let l = x.scale(&q(2)).sub(&y.scale(&q(3)));
        let f = l.mul(&x.mul(&y).add(&y.mul(&y).scale(&q(7))));
        let quot = f.divide_by_linear(&l).unwrap();
        assert_eq!(quot.mul(&l), f);
        // nonzero remainder is an error
        assert!(f.add(&Poly::one(2)).divide_by_linear(&l).is_err());
    }

    #[test]
    fn json_round_trip() {
        let p = Poly::from_json(
            &serde_json::json!({"terms":[{"coeff":"-3/2","exps":[1,0,2]},{"coeff":"1","exps":[0,1,0]}]}),
        )
        .unwrap();
        assert_eq!(p.num_terms(), 2);
        let back = Poly::from_json(&p.to_json()).unwrap();
        assert_eq!(p, back);
        assert_eq!(parse_coeff("-3/2").unwrap(), -q(3) / q(2));
    }
}

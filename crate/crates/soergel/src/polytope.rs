//! Polytopal sets of multisimplices, collapse schedules, and edge/path
//! isomorphisms for large-scale Gaussian elimination.
//!
//! The polytopal set `Π(w, x)` has one cell per pair `(𝐢, μ)` with
//! `f(μ) = x` and `e(μ)` the subword of `w` selected by `𝐢`. Concretely, a
//! cell is a system of position groups `P_1 < P_2 < … < P_k` (every element
//! of `P_j` before every element of `P_{j+1}`), with `w` restricted to `P_j`
//! constantly the `j`-th letter of `x`; the cell is the multisimplex
//! `Δ^{|P_1|−1} × ⋯ × Δ^{|P_k|−1}` and its faces select a nonempty subset of
//! each group. Cells are stored combinatorially (labels plus incidence),
//! never as geometric coordinates.
//!
//! Note that the faces of `(𝐢, μ)` satisfy `𝐢' ≤ 𝐢` componentwise with
//! groupwise smaller multiplicities, but when adjacent groups share a letter
//! the converse fails: the subset-selection rule here is the geometric face
//! relation, and it is the one matched by the differential blocks.

use std::collections::{BTreeMap, HashMap};

use num::Zero;

use crate::bimod::BSMorphism;
use crate::complex::{identity_morphism, Complex, Label, SummandId};
use crate::coxeter::{group_positions, multiword_set, Multiword, Subexpr, Word};
use crate::poly::Coeff;
use crate::{Error, Result};

/// A cell of `Π(w, x)`: the subexpression and the group sizes (aligned with
/// the letters of `x`).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Cell {
    pub bits: Subexpr,
    pub mults: Vec<u32>,
}

impl Cell {
    pub fn dim(&self) -> usize {
        self.mults.iter().map(|&m| m as usize - 1).sum()
    }

    pub fn label(&self, x: &Word) -> Label {
        let mu = Multiword(x.0.iter().copied().zip(self.mults.iter().copied()).collect());
        Label::BitsMulti(self.bits, mu)
    }

    /// Position groups `P_1 < … < P_k`.
    pub fn groups(&self) -> Vec<Vec<usize>> {
        let mu = Multiword(self.mults.iter().map(|&m| (crate::coxeter::Gen(0), m)).collect());
        group_positions(&self.bits, &mu).expect("cell data is consistent")
    }
}

/// Face-incidence structure of the multisimplices labeled by `M_x`.
#[derive(Clone, Debug)]
pub struct PolytopalSet {
    pub word: Word,
    pub x: Word,
    pub cells: Vec<Cell>,
    /// Proper faces per cell, all codimensions, as indices into `cells`.
    faces: Vec<Vec<usize>>,
    /// Inverse relation.
    cofaces: Vec<Vec<usize>>,
    index: HashMap<Cell, usize>,
}

/// Cells of `Π(w, x)`: the pairs of `M_x` with their face incidence. Empty
/// when `x` is not a subword of `w`.
pub fn build_polytopal_set(w: &Word, x: &Word) -> PolytopalSet {
    let mut cells: Vec<Cell> = multiword_set(w, x)
        .into_iter()
        .map(|(bits, mu)| Cell { bits, mults: mu.0.iter().map(|&(_, n)| n).collect() })
        .collect();
    cells.sort();
    let index: HashMap<Cell, usize> = cells.iter().cloned().zip(0..).collect();
    let mut faces = vec![Vec::new(); cells.len()];
    let mut cofaces = vec![Vec::new(); cells.len()];
    for (ci, cell) in cells.iter().enumerate() {
        let groups = cell.groups();
        let mut selection: Vec<Vec<usize>> = Vec::with_capacity(groups.len());
        enumerate_faces(&groups, 0, &mut selection, &mut |sel| {
            let mut bits = Subexpr::zeros(w.len());
            let mut mults = Vec::with_capacity(sel.len());
            for g in sel {
                mults.push(g.len() as u32);
                for &p in g {
                    bits = bits.with_bit(p, true);
                }
            }
            let face = Cell { bits, mults };
            if face != *cell {
                let fi = *index.get(&face).expect("face closure");
                faces[ci].push(fi);
            }
        });
        faces[ci].sort_unstable();
        faces[ci].dedup();
    }
    for (ci, fs) in faces.iter().enumerate() {
        for &fi in fs {
            cofaces[fi].push(ci);
        }
    }
    PolytopalSet { word: w.clone(), x: x.clone(), cells, faces, cofaces, index }
}

fn enumerate_faces(
    groups: &[Vec<usize>],
    j: usize,
    selection: &mut Vec<Vec<usize>>,
    emit: &mut impl FnMut(&[Vec<usize>]),
) {
    if j == groups.len() {
        emit(selection);
        return;
    }
    let g = &groups[j];
    for mask in 1u64..(1 << g.len()) {
        let chosen: Vec<usize> =
            (0..g.len()).filter(|&k| mask >> k & 1 == 1).map(|k| g[k]).collect();
        selection.push(chosen);
        enumerate_faces(groups, j + 1, selection, emit);
        selection.pop();
    }
}

impl PolytopalSet {
    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn num_cells(&self) -> usize {
        self.cells.len()
    }

    pub fn cell_index(&self, cell: &Cell) -> Option<usize> {
        self.index.get(cell).copied()
    }

    pub fn dim(&self) -> usize {
        self.cells.iter().map(Cell::dim).max().unwrap_or(0)
    }

    pub fn cells_of_dim(&self, d: usize) -> Vec<usize> {
        (0..self.cells.len()).filter(|&i| self.cells[i].dim() == d).collect()
    }

    pub fn faces_of(&self, i: usize) -> &[usize] {
        &self.faces[i]
    }

    pub fn cofaces_of(&self, i: usize) -> &[usize] {
        &self.cofaces[i]
    }

    /// Codimension-1 faces of cell `i`.
    pub fn facets_of(&self, i: usize) -> Vec<usize> {
        let d = self.cells[i].dim();
        self.faces[i].iter().copied().filter(|&f| self.cells[f].dim() + 1 == d).collect()
    }

    /// The two endpoints of a 1-cell.
    pub fn edge_vertices(&self, e: usize) -> (usize, usize) {
        assert_eq!(self.cells[e].dim(), 1, "not an edge");
        let vs: Vec<usize> =
            self.faces[e].iter().copied().filter(|&f| self.cells[f].dim() == 0).collect();
        assert_eq!(vs.len(), 2, "an edge has two endpoints");
        (vs[0], vs[1])
    }

    /// Face closure and the pairwise-intersection condition, by brute force.
    /// Quadratic in the number of cells; meant for instances ≤ a few hundred
    /// cells.
    pub fn check_polytopal(&self) -> Result<()> {
        // faces of faces are faces
        for i in 0..self.cells.len() {
            for &f in &self.faces[i] {
                for &g in &self.faces[f] {
                    if !self.faces[i].contains(&g) {
                        return Err(Error::VerificationFailed(format!(
                            "face transitivity fails at cells {i} > {f} > {g}"
                        )));
                    }
                }
            }
        }
        // common faces of two cells have a unique maximal element
        for a in 0..self.cells.len() {
            let mut ca: Vec<usize> = self.faces[a].clone();
            ca.push(a);
            for b in 0..a {
                let mut cb: Vec<usize> = self.faces[b].clone();
                cb.push(b);
                let common: Vec<usize> =
                    ca.iter().copied().filter(|i| cb.contains(i)).collect();
                if common.is_empty() {
                    continue;
                }
                let ok = common.iter().any(|&m| {
                    common.iter().all(|&c| c == m || self.faces[m].contains(&c))
                });
                if !ok {
                    return Err(Error::VerificationFailed(format!(
                        "intersection of cells {a}, {b} is not a single common face"
                    )));
                }
            }
        }
        Ok(())
    }

    /// The default survivor: the vertex with the string-lex-greatest
    /// 01-sequence, i.e. the leftmost embedding of `x` in `w`.
    pub fn default_survivor(&self) -> Option<usize> {
        self.cells_of_dim(0)
            .into_iter()
            .filter(|&v| self.cells[v].dim() == 0)
            .max_by(|&a, &b| self.cells[a].bits.string_cmp(&self.cells[b].bits))
    }
}

/// One elementary collapse: the maximal cell, its free codimension-1 face,
/// and the cells removed (exactly those two).
#[derive(Clone, Debug)]
pub struct CollapseStep {
    pub sigma: usize,
    pub tau: usize,
}

/// A checked sequence of elementary collapses ending at a single vertex.
#[derive(Clone, Debug)]
pub struct CollapseSchedule {
    pub steps: Vec<CollapseStep>,
    pub survivor: usize,
}

/// Build and execute a schedule of elementary collapses reducing `Π` to a
/// single vertex. Each step's free-face property is asserted at execution
/// time; failure to reach a point is an error carrying the stuck
/// configuration.
///
/// The default survivor admits a perfect matching: walk the groups left to
/// right and pair each cell with the toggle of the first position at which
/// it deviates from the leftmost embedding. For an overridden survivor the
/// schedule falls back to plain greedy search over free pairs.
pub fn collapse_schedule(pi: &PolytopalSet, survivor: Option<usize>) -> Result<CollapseSchedule> {
    if pi.is_empty() {
        return Err(Error::InvalidData("cannot collapse an empty polytopal set".into()));
    }
    let default = pi.default_survivor().expect("nonempty set has vertices");
    let survivor = survivor.unwrap_or(default);
    if pi.cells[survivor].dim() != 0 {
        return Err(Error::InvalidData("survivor must be a vertex".into()));
    }
    let pairing = if survivor == default { Some(leftmost_matching(pi, survivor)?) } else { None };

    let n = pi.cells.len();
    let mut alive = vec![true; n];
    let mut steps = Vec::new();
    let mut remaining = n;
    while remaining > 1 {
        let mut progressed = false;
        // candidate free pairs, deterministically ordered
        for tau in 0..n {
            if !alive[tau] || tau == survivor {
                continue;
            }
            let live_cofaces: Vec<usize> =
                pi.cofaces[tau].iter().copied().filter(|&c| alive[c]).collect();
            if live_cofaces.len() != 1 {
                continue;
            }
            let sigma = live_cofaces[0];
            if pi.cells[sigma].dim() != pi.cells[tau].dim() + 1 {
                continue;
            }
            if let Some(pairing) = &pairing {
                if pairing[tau] != Some(sigma) {
                    continue;
                }
            }
            // free face certified: exactly one live coface, codimension 1
            alive[tau] = false;
            alive[sigma] = false;
            remaining -= 2;
            steps.push(CollapseStep { sigma, tau });
            progressed = true;
        }
        if !progressed {
            let stuck: Vec<String> = (0..n)
                .filter(|&i| alive[i])
                .map(|i| format!("{:?}", pi.cells[i]))
                .collect();
            return Err(Error::ScheduleStuck(format!(
                "no free face among remaining cells: {}",
                stuck.join(", ")
            )));
        }
    }
    if !alive[survivor] {
        return Err(Error::ScheduleStuck("survivor was removed".into()));
    }
    Ok(CollapseSchedule { steps, survivor })
}

/// The first-deviation-from-leftmost matching. Returns `pairing[i] =
/// Some(j)` with the involution property; exactly the survivor is unmatched.
fn leftmost_matching(pi: &PolytopalSet, survivor: usize) -> Result<Vec<Option<usize>>> {
    let w = &pi.word;
    let x = &pi.x;
    let mut pairing: Vec<Option<usize>> = vec![None; pi.cells.len()];
    for (ci, cell) in pi.cells.iter().enumerate() {
        if ci == survivor {
            continue;
        }
        let groups = cell.groups();
        let mut prev: isize = -1;
        let mut partner_groups: Option<Vec<Vec<usize>>> = None;
        for (j, group) in groups.iter().enumerate() {
            let a = (prev + 1..w.len() as isize)
                .map(|p| p as usize)
                .find(|&p| w.0[p] == x.0[j])
                .expect("x is a subword of w along any cell");
            if group.as_slice() == [a] {
                prev = a as isize;
                continue;
            }
            let mut new_groups = groups.clone();
            if let Some(pos) = group.iter().position(|&p| p == a) {
                new_groups[j].remove(pos);
            } else {
                new_groups[j].push(a);
                new_groups[j].sort_unstable();
            }
            partner_groups = Some(new_groups);
            break;
        }
        let partner_groups = partner_groups
            .ok_or_else(|| Error::Internal("non-survivor cell with no deviation".into()))?;
        let mut bits = Subexpr::zeros(w.len());
        let mut mults = Vec::new();
        for g in &partner_groups {
            mults.push(g.len() as u32);
            for &p in g {
                bits = bits.with_bit(p, true);
            }
        }
        let partner = pi
            .cell_index(&Cell { bits, mults })
            .ok_or_else(|| Error::Internal("matching partner not a cell".into()))?;
        pairing[ci] = Some(partner);
    }
    for (i, p) in pairing.iter().enumerate() {
        if let Some(j) = p {
            if pairing[*j] != Some(i) {
                return Err(Error::Internal(format!("matching is not an involution at {i}")));
            }
        }
    }
    Ok(pairing)
}

/// A complex left-described by a polytopal set: summands sit on the cells,
/// the nonzero blocks are exactly the codimension-1 face pairs, and every
/// block is a rational multiple of the identity (checked on construction,
/// with the scalars retained).
pub struct LeftDescribed<'a> {
    pub pi: &'a PolytopalSet,
    pub complex: &'a Complex,
    pub summand_of_cell: Vec<SummandId>,
    /// Scalar of the block from cell `σ` to its codimension-1 face `τ`.
    pub signs: BTreeMap<(usize, usize), Coeff>,
}

impl<'a> LeftDescribed<'a> {
    pub fn new(
        pi: &'a PolytopalSet,
        complex: &'a Complex,
        summand_of_cell: Vec<SummandId>,
    ) -> Result<Self> {
        assert_eq!(summand_of_cell.len(), pi.num_cells());
        let back: HashMap<SummandId, usize> =
            summand_of_cell.iter().copied().zip(0..).collect();
        let mut signs = BTreeMap::new();
        for (sigma, &sid) in summand_of_cell.iter().enumerate() {
            let facets = pi.facets_of(sigma);
            for tau in facets {
                let tid = summand_of_cell[tau];
                let block = complex.block(sid, tid).ok_or_else(|| {
                    Error::VerificationFailed(format!(
                        "missing block on face pair {sigma} → {tau}"
                    ))
                })?;
                let c = block.as_scalar_identity().ok_or_else(|| {
                    Error::VerificationFailed(format!(
                        "block on face pair {sigma} → {tau} is not ±unit·identity: {block}"
                    ))
                })?;
                signs.insert((sigma, tau), c);
            }
            // no blocks into or out of non-face pairs
            for tgt in complex.targets_of(sid) {
                if let Some(&tau) = back.get(&tgt) {
                    if !pi.facets_of(sigma).contains(&tau) {
                        return Err(Error::VerificationFailed(format!(
                            "nonzero block off the face relation: {sigma} → {tau}"
                        )));
                    }
                }
            }
        }
        Ok(LeftDescribed { pi, complex, summand_of_cell, signs })
    }

    /// `Φ(e) = −φ_{q,e} ∘ φ_{p,e}^{-1}` for the edge `e` oriented `p → q`.
    pub fn edge_isomorphism(&self, edge: usize, from: usize, to: usize) -> Result<BSMorphism> {
        let (v0, v1) = self.pi.edge_vertices(edge);
        if !(from == v0 && to == v1 || from == v1 && to == v0) {
            return Err(Error::InvalidData("orientation endpoints do not bound the edge".into()));
        }
        let c_from = &self.signs[&(edge, from)];
        let c_to = &self.signs[&(edge, to)];
        if c_from.is_zero() {
            return Err(Error::NotInvertible("edge block is zero".into()));
        }
        let scalar = -(c_to / c_from);
        let from_obj = self.complex.summand(self.summand_of_cell[from]).shifted_object();
        let to_obj = self.complex.summand(self.summand_of_cell[to]).shifted_object();
        if from_obj != to_obj {
            return Err(Error::Internal("vertex objects differ along an edge".into()));
        }
        Ok(identity_morphism(self.complex.rank, &from_obj).scale(&scalar))
    }

    /// Composite `Φ(e_r) ⋯ Φ(e_1)` along consecutive oriented edges.
    pub fn path_isomorphism(&self, path: &[(usize, usize, usize)]) -> Result<BSMorphism> {
        let mut at: Option<usize> = None;
        let mut acc: Option<BSMorphism> = None;
        for &(edge, from, to) in path {
            if let Some(v) = at {
                if v != from {
                    return Err(Error::InvalidData("path edges are not consecutive".into()));
                }
            }
            let phi = self.edge_isomorphism(edge, from, to)?;
            acc = Some(match acc {
                None => phi,
                Some(prev) => phi.compose(&prev),
            });
            at = Some(to);
        }
        match acc {
            Some(m) => Ok(m),
            None => Err(Error::InvalidData("empty path needs a basepoint; use identity".into())),
        }
    }

    /// All `Φ(P_v)` for a spanning tree of paths from each vertex to the
    /// survivor, as scalars.
    pub fn vertex_path_scalars(&self, survivor: usize) -> Result<BTreeMap<usize, Coeff>> {
        use std::collections::VecDeque;
        let mut scalars = BTreeMap::new();
        scalars.insert(survivor, Coeff::from_integer(1.into()));
        let mut queue = VecDeque::from([survivor]);
        // adjacency via edges
        let edges: Vec<(usize, usize, usize)> = self
            .pi
            .cells_of_dim(1)
            .into_iter()
            .map(|e| {
                let (a, b) = self.pi.edge_vertices(e);
                (e, a, b)
            })
            .collect();
        while let Some(v) = queue.pop_front() {
            for &(e, a, b) in &edges {
                let (u, other) = if a == v { (v, b) } else if b == v { (v, a) } else { continue };
                if scalars.contains_key(&other) {
                    continue;
                }
                // Φ(other → u) composed with the known path from u
                let phi = self.edge_isomorphism(e, other, u)?;
                let c = phi.as_scalar_identity().expect("edge isomorphisms are scalar");
                let total = &scalars[&u] * c;
                scalars.insert(other, total);
                queue.push_back(other);
            }
        }
        Ok(scalars)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bimod::BSObject;
    use crate::coxeter::CoxeterSystem;

    fn sys3() -> CoxeterSystem {
        CoxeterSystem::new(
            vec!["s".into(), "t".into(), "u".into()],
            vec![vec![1, 3, 2], vec![3, 1, 3], vec![2, 3, 1]],
        )
        .unwrap()
    }

    #[test]
    fn pi_sss_s_is_the_bounded_triangle() {
        let sys = sys3();
        let w = sys.parse_word("s s s").unwrap();
        let x = sys.parse_word("s").unwrap();
        let pi = build_polytopal_set(&w, &x);
        assert_eq!(pi.num_cells(), 7);
        assert_eq!(pi.cells_of_dim(0).len(), 3);
        assert_eq!(pi.cells_of_dim(1).len(), 3);
        assert_eq!(pi.cells_of_dim(2).len(), 1);
        pi.check_polytopal().unwrap();
        // the 2-cell has 3 facets and 6 proper faces
        let top = pi.cells_of_dim(2)[0];
        assert_eq!(pi.facets_of(top).len(), 3);
        assert_eq!(pi.faces_of(top).len(), 6);
        // face relation implies the componentwise rule
        for (ci, cell) in pi.cells.iter().enumerate() {
            for &fi in pi.faces_of(ci) {
                let face = &pi.cells[fi];
                assert!(face.bits.le(&cell.bits));
                assert!(face.mults.iter().zip(&cell.mults).all(|(m, n)| 1 <= *m && m <= n));
            }
        }
    }

    #[test]
    fn pi_ststst_st_census() {
        let sys = sys3();
        let w = sys.parse_word("s t s t s t").unwrap();
        let x = sys.parse_word("s t").unwrap();
        let pi = build_polytopal_set(&w, &x);
        assert_eq!(pi.cells_of_dim(0).len(), 6);
        assert_eq!(pi.cells_of_dim(1).len(), 8);
        assert_eq!(pi.cells_of_dim(2).len(), 3);
        assert_eq!(pi.num_cells(), 17);
        pi.check_polytopal().unwrap();
        // among the 2-cells: two triangles (3 vertices) and one square (4)
        let mut vertex_counts: Vec<usize> = pi
            .cells_of_dim(2)
            .into_iter()
            .map(|c| pi.faces_of(c).iter().filter(|&&f| pi.cells[f].dim() == 0).count())
            .collect();
        vertex_counts.sort_unstable();
        assert_eq!(vertex_counts, vec![3, 3, 4]);
    }

    #[test]
    fn geometric_faces_match_containment_oracle() {
        // independent oracle: c1 is a face of c2 iff the groups of c1 are
        // contained groupwise in the groups of c2
        let sys = sys3();
        for (wt, xt) in [("s s s s", "s s"), ("s s t t s s", "s s"), ("s t s t s t", "s t")] {
            let w = sys.parse_word(wt).unwrap();
            let x = sys.parse_word(xt).unwrap();
            let pi = build_polytopal_set(&w, &x);
            for a in 0..pi.num_cells() {
                for b in 0..pi.num_cells() {
                    if a == b {
                        continue;
                    }
                    let ga = pi.cells[a].groups();
                    let gb = pi.cells[b].groups();
                    let contained = ga
                        .iter()
                        .zip(&gb)
                        .all(|(fa, fb)| fa.iter().all(|p| fb.contains(p)));
                    assert_eq!(pi.faces_of(b).contains(&a), contained, "cells {a}, {b}");
                }
            }
        }
    }

    #[test]
    fn componentwise_rule_overcounts_on_repeated_letters() {
        // (1100, ss) satisfies the componentwise conditions against
        // (1111, s²s²) but is not a geometric face of the square
        let sys = sys3();
        let w = sys.parse_word("s s s s").unwrap();
        let x = sys.parse_word("s s").unwrap();
        let pi = build_polytopal_set(&w, &x);
        let square = pi
            .cell_index(&Cell { bits: Subexpr::parse("1111").unwrap(), mults: vec![2, 2] })
            .unwrap();
        let vertex = pi
            .cell_index(&Cell { bits: Subexpr::parse("1100").unwrap(), mults: vec![1, 1] })
            .unwrap();
        assert!(pi.cells[vertex].bits.le(&pi.cells[square].bits));
        assert!(!pi.faces_of(square).contains(&vertex));
        // the square has the expected 4 vertices
        let vs: Vec<usize> = pi
            .faces_of(square)
            .iter()
            .copied()
            .filter(|&f| pi.cells[f].dim() == 0)
            .collect();
        assert_eq!(vs.len(), 4);
    }

    #[test]
    fn single_point_for_distinct_letters() {
        let sys = sys3();
        let w = sys.parse_word("s t u").unwrap();
        let pi = build_polytopal_set(&w, &w);
        assert_eq!(pi.num_cells(), 1);
        assert_eq!(pi.cells[0].dim(), 0);
        let schedule = collapse_schedule(&pi, None).unwrap();
        assert!(schedule.steps.is_empty());
    }

    #[test]
    fn interval_collapses_in_one_step() {
        let sys = sys3();
        let w = sys.parse_word("s s").unwrap();
        let x = sys.parse_word("s").unwrap();
        let pi = build_polytopal_set(&w, &x);
        assert_eq!(pi.num_cells(), 3);
        let schedule = collapse_schedule(&pi, None).unwrap();
        assert_eq!(schedule.steps.len(), 1);
        // survivor is the lex-greatest vertex 10
        assert_eq!(pi.cells[schedule.survivor].bits, Subexpr::parse("10").unwrap());
    }

    #[test]
    fn triangle_collapses_in_three_steps() {
        let sys = sys3();
        let w = sys.parse_word("s s s").unwrap();
        let x = sys.parse_word("s").unwrap();
        let pi = build_polytopal_set(&w, &x);
        let schedule = collapse_schedule(&pi, None).unwrap();
        assert_eq!(schedule.steps.len(), 3);
        assert_eq!(pi.cells[schedule.survivor].bits, Subexpr::parse("100").unwrap());
    }

    #[test]
    fn prism_with_apex_collapses() {
        let sys = sys3();
        let w = sys.parse_word("s s s t u s t u").unwrap();
        let x = sys.parse_word("s t u").unwrap();
        let pi = build_polytopal_set(&w, &x);
        pi.check_polytopal().unwrap();
        let schedule = collapse_schedule(&pi, None).unwrap();
        assert_eq!(schedule.steps.len(), (pi.num_cells() - 1) / 2);
        assert_eq!(pi.num_cells() % 2, 1);
    }

    #[test]
    fn collapse_with_overridden_survivor() {
        let sys = sys3();
        let w = sys.parse_word("s s s").unwrap();
        let x = sys.parse_word("s").unwrap();
        let pi = build_polytopal_set(&w, &x);
        let v = pi
            .cell_index(&Cell { bits: Subexpr::parse("001").unwrap(), mults: vec![1] })
            .unwrap();
        let schedule = collapse_schedule(&pi, Some(v)).unwrap();
        assert_eq!(schedule.survivor, v);
        assert_eq!(schedule.steps.len(), 3);
    }

    #[test]
    fn polytopal_checks_pass_on_medium_instances() {
        let sys = sys3();
        for (wt, xt) in [
            ("s s t t s s", "s t s"),
            ("s s t t s s", "s"),
            ("s s s s", "s"),
            ("s t s t s t", "s t"),
        ] {
            let w = sys.parse_word(wt).unwrap();
            let x = sys.parse_word(xt).unwrap();
            let pi = build_polytopal_set(&w, &x);
            assert!(pi.num_cells() <= 200);
            pi.check_polytopal().unwrap();
            let schedule = collapse_schedule(&pi, None).unwrap();
            assert_eq!(schedule.steps.len(), (pi.num_cells() - 1) / 2);
        }
    }

    /// A hand-built triangle with boundary, left-described: the 2-cell in
    /// degree 0, edges in degree 1, vertices in degree 2.
    fn triangle_complex(pi: &PolytopalSet) -> (Complex, Vec<SummandId>) {
        let mut c = Complex::new(1);
        let mut ids = vec![0; pi.num_cells()];
        let top_dim = pi.dim() as i64;
        for (i, cell) in pi.cells.iter().enumerate() {
            let deg = top_dim - cell.dim() as i64;
            ids[i] = c.add_summand(deg, BSObject::unit(), 0, cell.label(&pi.x));
        }
        // orient: block σ → τ has sign (−1)^{position of the dropped point}
        for sigma in 0..pi.num_cells() {
            for tau in pi.facets_of(sigma) {
                let gs = pi.cells[sigma].groups();
                let gt = pi.cells[tau].groups();
                // the one dropped position
                let mut sign = 1i64;
                for (a, b) in gs.iter().zip(&gt) {
                    for (k, p) in a.iter().enumerate() {
                        if !b.contains(p) {
                            sign = if k % 2 == 0 { 1 } else { -1 };
                        }
                    }
                }
                let m = identity_morphism(1, &BSObject::unit())
                    .scale(&Coeff::from_integer(sign.into()));
                c.set_block(ids[sigma], ids[tau], m);
            }
        }
        (c, ids)
    }

    #[test]
    fn edge_and_path_isomorphisms() {
        let sys = sys3();
        let w = sys.parse_word("s s s").unwrap();
        let x = sys.parse_word("s").unwrap();
        let pi = build_polytopal_set(&w, &x);
        let (complex, ids) = triangle_complex(&pi);
        complex.check_differential().into_result().unwrap();
        let ld = LeftDescribed::new(&pi, &complex, ids).unwrap();
        // round trip e then −e is the identity
        let e = pi.cells_of_dim(1)[0];
        let (a, b) = pi.edge_vertices(e);
        let fwd = ld.edge_isomorphism(e, a, b).unwrap();
        let back = ld.edge_isomorphism(e, b, a).unwrap();
        assert_eq!(back.compose(&fwd).as_scalar_identity(), Some(Coeff::from_integer(1.into())));
        // boundary loop of the 2-cell is the identity
        let verts: Vec<usize> = pi.cells_of_dim(0);
        let edges: Vec<usize> = pi.cells_of_dim(1);
        // find the loop v0 → v1 → v2 → v0 through the three edges
        let mut path = Vec::new();
        let mut at = verts[0];
        let mut visited = vec![false; edges.len()];
        for _ in 0..3 {
            for (k, &e) in edges.iter().enumerate() {
                if visited[k] {
                    continue;
                }
                let (p, q) = pi.edge_vertices(e);
                if p == at || q == at {
                    let to = if p == at { q } else { p };
                    path.push((e, at, to));
                    at = to;
                    visited[k] = true;
                    break;
                }
            }
        }
        assert_eq!(at, verts[0]);
        let loop_iso = ld.path_isomorphism(&path).unwrap();
        assert_eq!(loop_iso.as_scalar_identity(), Some(Coeff::from_integer(1.into())));
    }
}

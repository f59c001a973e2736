//! Bounded complexes of shifted Bott-Samelson summands, chain maps,
//! homotopies, and the Gaussian elimination engine.
//!
//! A summand carries its object `B_w(shift)`, a Tate-twist integer (`⟨1⟩ =
//! (1)[−1]`, so a twist `q` adds `q` to the effective internal shift while the
//! cohomological placement is the degree key), and an opaque label. The
//! differential is stored sparsely, one degree-0 [`BSMorphism`] block per
//! ordered pair of summands in adjacent degrees.
//!
//! Elimination of an invertible block `φ: E → E'` drops both summands,
//! corrects surviving blocks to `α − β φ^{-1} γ`, gives the projection the
//! `−β φ^{-1}` component, the inclusion the `−φ^{-1} γ` component, and the
//! step homotopy the `φ^{-1}` block. The [`Reducer`] composes any number of
//! such steps while accumulating `π`, `ι` and the total homotopy `h` (via
//! `h ← h + ι_{before} ∘ h_step ∘ π_{before}`), so the final triple certifies
//! `π ι = id` and `ι π − id = d h + h d` exactly on the original complex.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;


use crate::bimod::{BSMorphism, BSObject, Calc};
use crate::coxeter::{CoxeterSystem, Multiword, Subexpr, Word};
use crate::poly::{Coeff, Poly};
use crate::{Error, Result};

pub type SummandId = u32;

/// Opaque summand tag: subexpression, (subexpression, multiword), subword, or
/// a pair of labels of tensor factors.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Label {
    Unit,
    Bits(Subexpr),
    BitsMulti(Subexpr, Multiword),
    Word(Word),
    Pair(Box<Label>, Box<Label>),
}

impl Label {
    pub fn pair(a: Label, b: Label) -> Label {
        Label::Pair(Box::new(a), Box::new(b))
    }

    pub fn display(&self, sys: &CoxeterSystem) -> String {
        match self {
            Label::Unit => "1".into(),
            Label::Bits(bits) => bits.to_string(),
            Label::BitsMulti(bits, mu) => format!("{bits}|{}", sys.multiword_string(mu)),
            Label::Word(w) => sys.word_compact(w),
            Label::Pair(a, b) => format!("({},{})", a.display(sys), b.display(sys)),
        }
    }
}

/// One direct summand of a complex: a shifted object with a Tate twist and a
/// label, sitting in the cohomological degree under which it is keyed.
#[derive(Clone, Debug)]
pub struct Summand {
    pub id: SummandId,
    pub degree: i64,
    pub object: BSObject,
    pub twist: i64,
    pub label: Label,
}

impl Summand {
    /// The object with the twist's internal shift folded in; differential
    /// blocks live between these.
    pub fn shifted_object(&self) -> BSObject {
        BSObject::new(self.object.word.clone(), self.object.shift + self.twist)
    }
}

/// A bounded complex with sparse block differential. `d ∘ d = 0` is checked
/// by [`Complex::check_differential`]; entry homogeneity is enforced by the
/// [`BSMorphism`] constructor.
#[derive(Clone, Debug, Default)]
pub struct Complex {
    pub rank: usize,
    summands: BTreeMap<SummandId, Summand>,
    degrees: BTreeMap<i64, Vec<SummandId>>,
    diff: BTreeMap<(SummandId, SummandId), Arc<BSMorphism>>,
    out_edges: BTreeMap<SummandId, BTreeSet<SummandId>>,
    in_edges: BTreeMap<SummandId, BTreeSet<SummandId>>,
    labels: HashMap<Label, SummandId>,
    next_id: SummandId,
}

impl Complex {
    pub fn new(rank: usize) -> Self {
        Complex { rank, ..Default::default() }
    }

    pub fn add_summand(
        &mut self,
        degree: i64,
        object: BSObject,
        twist: i64,
        label: Label,
    ) -> SummandId {
        let id = self.next_id;
        self.next_id += 1;
        assert!(self.labels.insert(label.clone(), id).is_none(), "duplicate summand label");
        self.summands.insert(id, Summand { id, degree, object, twist, label });
        self.degrees.entry(degree).or_default().push(id);
        id
    }

    pub fn summand(&self, id: SummandId) -> &Summand {
        &self.summands[&id]
    }

    pub fn by_label(&self, label: &Label) -> Option<SummandId> {
        self.labels.get(label).copied()
    }

    pub fn num_summands(&self) -> usize {
        self.summands.len()
    }

    pub fn summand_ids(&self) -> impl Iterator<Item = SummandId> + '_ {
        self.degrees.values().flatten().copied()
    }

    pub fn degree_list(&self) -> Vec<i64> {
        self.degrees.keys().copied().collect()
    }

    pub fn degrees(&self) -> impl Iterator<Item = (i64, &[SummandId])> {
        self.degrees.iter().map(|(&d, v)| (d, v.as_slice()))
    }

    pub fn ids_in_degree(&self, degree: i64) -> &[SummandId] {
        self.degrees.get(&degree).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Summand count per degree.
    pub fn census(&self) -> BTreeMap<i64, usize> {
        self.degrees.iter().filter(|(_, v)| !v.is_empty()).map(|(&d, v)| (d, v.len())).collect()
    }

    pub fn set_block(&mut self, src: SummandId, tgt: SummandId, block: BSMorphism) {
        let s = self.summand(src);
        let t = self.summand(tgt);
        assert_eq!(t.degree, s.degree + 1, "blocks connect adjacent degrees");
        assert_eq!(block.src, s.shifted_object(), "block source object mismatch");
        assert_eq!(block.tgt, t.shifted_object(), "block target object mismatch");
        assert_eq!(block.degree, 0, "differential blocks have absorbed degree 0");
        if block.is_zero() {
            self.clear_block(src, tgt);
        } else {
            self.diff.insert((src, tgt), Arc::new(block));
            self.out_edges.entry(src).or_default().insert(tgt);
            self.in_edges.entry(tgt).or_default().insert(src);
        }
    }

    fn clear_block(&mut self, src: SummandId, tgt: SummandId) {
        self.diff.remove(&(src, tgt));
        if let Some(s) = self.out_edges.get_mut(&src) {
            s.remove(&tgt);
        }
        if let Some(s) = self.in_edges.get_mut(&tgt) {
            s.remove(&src);
        }
    }

    pub fn block(&self, src: SummandId, tgt: SummandId) -> Option<&Arc<BSMorphism>> {
        self.diff.get(&(src, tgt))
    }

    pub fn blocks(&self) -> impl Iterator<Item = (&(SummandId, SummandId), &Arc<BSMorphism>)> {
        self.diff.iter()
    }

    pub fn num_blocks(&self) -> usize {
        self.diff.len()
    }

    pub fn targets_of(&self, src: SummandId) -> Vec<SummandId> {
        self.out_edges.get(&src).map(|s| s.iter().copied().collect()).unwrap_or_default()
    }

    pub fn sources_of(&self, tgt: SummandId) -> Vec<SummandId> {
        self.in_edges.get(&tgt).map(|s| s.iter().copied().collect()).unwrap_or_default()
    }

    fn remove_summand(&mut self, id: SummandId) {
        for tgt in self.targets_of(id) {
            self.clear_block(id, tgt);
        }
        for src in self.sources_of(id) {
            self.clear_block(src, id);
        }
        let s = self.summands.remove(&id).expect("summand exists");
        self.labels.remove(&s.label);
        let v = self.degrees.get_mut(&s.degree).unwrap();
        v.retain(|&x| x != id);
        if v.is_empty() {
            self.degrees.remove(&s.degree);
        }
        self.out_edges.remove(&id);
        self.in_edges.remove(&id);
    }

    /// Verify `d ∘ d = 0` block-wise; failures are the offending summand
    /// pairs two degrees apart.
    pub fn check_differential(&self) -> DsqReport {
        let mut acc: BTreeMap<(SummandId, SummandId), BSMorphism> = BTreeMap::new();
        for (&(b, c), second) in &self.diff {
            for a in self.sources_of(b) {
                let first = &self.diff[&(a, b)];
                let prod = second.compose(first);
                acc_block_keep_zero(&mut acc, (a, c), prod);
            }
        }
        DsqReport {
            failures: acc.into_iter().filter(|(_, m)| !m.is_zero()).map(|(k, _)| k).collect(),
        }
    }
}

/// Result of a `d² = 0` check.
#[derive(Clone, Debug, Default)]
pub struct DsqReport {
    pub failures: Vec<(SummandId, SummandId)>,
}

impl DsqReport {
    pub fn is_ok(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn into_result(self) -> Result<()> {
        if self.is_ok() {
            Ok(())
        } else {
            Err(Error::VerificationFailed(format!("d² ≠ 0 at summand pairs {:?}", self.failures)))
        }
    }
}

/// The identity matrix on a shifted object.
pub fn identity_morphism(rank: usize, obj: &BSObject) -> BSMorphism {
    let mut entries = BTreeMap::new();
    for code in 0..obj.basis_size() {
        entries.insert((code, code), Poly::one(rank));
    }
    BSMorphism::new(obj.clone(), obj.clone(), 0, entries)
}

/// Tensor product of complexes: degree-`i` part `⊕_{p+q=i} A^p ⊗ B^q`, with
/// the Koszul sign `(−1)^p` on `id ⊗ d_B`. Labels become pairs.
pub fn tensor_complexes(calc: &Calc, a: &Complex, b: &Complex) -> Complex {
    assert_eq!(a.rank, b.rank);
    let mut out = Complex::new(a.rank);
    let mut index: HashMap<(SummandId, SummandId), SummandId> = HashMap::new();
    let a_degs: Vec<i64> = a.degree_list();
    let b_degs: Vec<i64> = b.degree_list();
    let mut total_degs: Vec<i64> = a_degs.iter().flat_map(|&p| b_degs.iter().map(move |&q| p + q)).collect();
    total_degs.sort_unstable();
    total_degs.dedup();
    for &i in &total_degs {
        for &p in &a_degs {
            let q = i - p;
            for &sa in a.ids_in_degree(p) {
                for &sb in b.ids_in_degree(q) {
                    let xa = a.summand(sa);
                    let xb = b.summand(sb);
                    let id = out.add_summand(
                        i,
                        xa.object.tensor(&xb.object),
                        xa.twist + xb.twist,
                        Label::pair(xa.label.clone(), xb.label.clone()),
                    );
                    index.insert((sa, sb), id);
                }
            }
        }
    }
    let b_ids: Vec<SummandId> = b.summand_ids().collect();
    let a_ids: Vec<SummandId> = a.summand_ids().collect();
    // d_A ⊗ id
    for (&(sa, ta), block) in &a.diff {
        for &sb in &b_ids {
            let idb = calc.identity(&b.summand(sb).shifted_object());
            out.set_block(index[&(sa, sb)], index[&(ta, sb)], calc.tensor(block, &idb));
        }
    }
    // (−1)^p id ⊗ d_B
    for (&(sb, tb), block) in &b.diff {
        for &sa in &a_ids {
            let p = a.summand(sa).degree;
            let ida = calc.identity(&a.summand(sa).shifted_object());
            let m = calc.tensor(&ida, block);
            let m = if p.rem_euclid(2) == 0 { m } else { m.neg() };
            out.set_block(index[&(sa, sb)], index[&(sa, tb)], m);
        }
    }
    out
}

/// A degree-0 map of complexes, stored as sparse blocks keyed
/// `(source summand, target summand)`.
#[derive(Clone, Debug, Default)]
pub struct ChainMap {
    pub blocks: BTreeMap<(SummandId, SummandId), Arc<BSMorphism>>,
}

impl ChainMap {
    pub fn identity(c: &Complex) -> ChainMap {
        let mut blocks = BTreeMap::new();
        for id in c.summand_ids() {
            let obj = c.summand(id).shifted_object();
            blocks.insert((id, id), Arc::new(identity_morphism(c.rank, &obj)));
        }
        ChainMap { blocks }
    }

    pub fn block(&self, src: SummandId, tgt: SummandId) -> Option<&Arc<BSMorphism>> {
        self.blocks.get(&(src, tgt))
    }
}

/// A degree-(−1) collection of blocks (from degree `q` to degree `q−1`),
/// with no condition beyond placement.
#[derive(Clone, Debug, Default)]
pub struct Homotopy {
    pub blocks: BTreeMap<(SummandId, SummandId), Arc<BSMorphism>>,
}

fn acc_block(
    map: &mut BTreeMap<(SummandId, SummandId), BSMorphism>,
    key: (SummandId, SummandId),
    m: BSMorphism,
) {
    use std::collections::btree_map::Entry;
    match map.entry(key) {
        Entry::Vacant(e) => {
            e.insert(m);
        }
        Entry::Occupied(mut e) => {
            let sum = e.get().add(&m);
            if sum.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = sum;
            }
        }
    }
}

fn acc_block_keep_zero(
    map: &mut BTreeMap<(SummandId, SummandId), BSMorphism>,
    key: (SummandId, SummandId),
    m: BSMorphism,
) {
    use std::collections::btree_map::Entry;
    match map.entry(key) {
        Entry::Vacant(e) => {
            e.insert(m);
        }
        Entry::Occupied(mut e) => {
            let sum = e.get().add(&m);
            *e.get_mut() = sum;
        }
    }
}

/// Exact check of `d_B ∘ f = f ∘ d_A` for `f: A → B`.
pub fn check_chain_map(a: &Complex, b: &Complex, f: &ChainMap) -> Result<()> {
    let mut acc: BTreeMap<(SummandId, SummandId), BSMorphism> = BTreeMap::new();
    for (&(sa, sb), blk) in &f.blocks {
        debug_assert_eq!(a.summand(sa).degree, b.summand(sb).degree, "chain map block placement");
        for tb in b.targets_of(sb) {
            let prod = b.block(sb, tb).unwrap().compose(blk);
            if !prod.is_zero() {
                acc_block(&mut acc, (sa, tb), prod);
            }
        }
    }
    for (&(sa, ta), d) in &a.diff {
        for ((fs, tb), blk) in f.blocks.range((ta, 0)..=(ta, SummandId::MAX)) {
            debug_assert_eq!(*fs, ta);
            let prod = blk.compose(d);
            if !prod.is_zero() {
                acc_block(&mut acc, (sa, *tb), prod.neg());
            }
        }
    }
    if let Some((k, _)) = acc.iter().find(|(_, m)| !m.is_zero()) {
        return Err(Error::VerificationFailed(format!("chain-map identity fails at {k:?}")));
    }
    Ok(())
}

/// Exact check of `f − g = d ∘ h + h ∘ d` for `f, g: A → A`.
pub fn check_homotopy(a: &Complex, f: &ChainMap, g: &ChainMap, h: &Homotopy) -> Result<()> {
    let mut acc: BTreeMap<(SummandId, SummandId), BSMorphism> = BTreeMap::new();
    for (&(s, t), blk) in &f.blocks {
        acc_block(&mut acc, (s, t), (**blk).clone());
    }
    for (&(s, t), blk) in &g.blocks {
        acc_block(&mut acc, (s, t), blk.neg());
    }
    // d∘h: q → q−1 → q
    for (&(s, m), hblk) in &h.blocks {
        for t in a.targets_of(m) {
            let prod = a.block(m, t).unwrap().compose(hblk);
            if !prod.is_zero() {
                acc_block(&mut acc, (s, t), prod.neg());
            }
        }
    }
    // h∘d: q → q+1 → q
    for (&(s, m), dblk) in &a.diff {
        for ((hs, t), hblk) in h.blocks.range((m, 0)..=(m, SummandId::MAX)) {
            debug_assert_eq!(*hs, m);
            let prod = hblk.compose(dblk);
            if !prod.is_zero() {
                acc_block(&mut acc, (s, *t), prod.neg());
            }
        }
    }
    if let Some((k, _)) = acc.iter().find(|(_, m)| !m.is_zero()) {
        return Err(Error::VerificationFailed(format!("homotopy identity fails at {k:?}")));
    }
    Ok(())
}

/// The result of a sequence of eliminations, with the accumulated maps.
pub struct Reduction {
    pub original: Complex,
    pub reduced: Complex,
    pub projection: ChainMap,
    pub inclusion: ChainMap,
    pub homotopy: Homotopy,
    pub steps: usize,
}

impl Reduction {
    /// Exact certificate: `π`, `ι` are chain maps, `π ι = id` on the reduced
    /// complex, `ι π − id = d h + h d` on the original, and `d² = 0` on the
    /// reduced complex.
    pub fn verify(&self) -> Result<()> {
        self.reduced.check_differential().into_result()?;
        check_chain_map(&self.original, &self.reduced, &self.projection)?;
        check_chain_map(&self.reduced, &self.original, &self.inclusion)?;
        // π ι = id
        let mut acc: BTreeMap<(SummandId, SummandId), BSMorphism> = BTreeMap::new();
        for (&(c1, o), iblk) in &self.inclusion.blocks {
            for ((po, c2), pblk) in self.projection.blocks.range((o, 0)..=(o, SummandId::MAX)) {
                debug_assert_eq!(*po, o);
                let prod = pblk.compose(iblk);
                if !prod.is_zero() {
                    acc_block(&mut acc, (c1, *c2), prod);
                }
            }
        }
        for id in self.reduced.summand_ids() {
            let obj = self.reduced.summand(id).shifted_object();
            acc_block(&mut acc, (id, id), identity_morphism(self.reduced.rank, &obj).neg());
        }
        if let Some((k, _)) = acc.iter().find(|(_, m)| !m.is_zero()) {
            return Err(Error::VerificationFailed(format!("π ι ≠ id at {k:?}")));
        }
        // ι π ≃ id via h
        let mut blocks: BTreeMap<(SummandId, SummandId), BSMorphism> = BTreeMap::new();
        for (&(o1, c), pblk) in &self.projection.blocks {
            for ((ic, o2), iblk) in self.inclusion.blocks.range((c, 0)..=(c, SummandId::MAX)) {
                debug_assert_eq!(*ic, c);
                let prod = iblk.compose(pblk);
                if !prod.is_zero() {
                    acc_block(&mut blocks, (o1, *o2), prod);
                }
            }
        }
        let iota_pi =
            ChainMap { blocks: blocks.into_iter().map(|(k, m)| (k, Arc::new(m))).collect() };
        let id = ChainMap::identity(&self.original);
        check_homotopy(&self.original, &iota_pi, &id, &self.homotopy)
    }
}

/// Sequential Gaussian elimination with accumulation of the projection,
/// inclusion, and homotopy against the starting complex.
pub struct Reducer {
    original: Complex,
    current: Complex,
    /// Rows of `π`: for each current summand, its components from original
    /// summands.
    p_rows: HashMap<SummandId, BTreeMap<SummandId, Arc<BSMorphism>>>,
    /// Columns of `ι`: for each current summand, its components into original
    /// summands.
    i_cols: HashMap<SummandId, BTreeMap<SummandId, Arc<BSMorphism>>>,
    h: BTreeMap<(SummandId, SummandId), BSMorphism>,
    steps: usize,
    /// When set, every step re-verifies the full certificate so far.
    pub verify_steps: bool,
}

impl Reducer {
    pub fn new(complex: Complex) -> Self {
        let mut p_rows = HashMap::new();
        let mut i_cols = HashMap::new();
        for id in complex.summand_ids() {
            let obj = complex.summand(id).shifted_object();
            let ident = Arc::new(identity_morphism(complex.rank, &obj));
            p_rows.insert(id, BTreeMap::from([(id, ident.clone())]));
            i_cols.insert(id, BTreeMap::from([(id, ident)]));
        }
        Reducer {
            original: complex.clone(),
            current: complex,
            p_rows,
            i_cols,
            h: BTreeMap::new(),
            steps: 0,
            verify_steps: false,
        }
    }

    pub fn current(&self) -> &Complex {
        &self.current
    }

    pub fn original(&self) -> &Complex {
        &self.original
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    /// Eliminate the pair `(e, e2)` whose connecting block is a nonzero
    /// scalar multiple of the identity.
    pub fn step(&mut self, e: SummandId, e2: SummandId) -> Result<()> {
        let phi = self
            .current
            .block(e, e2)
            .ok_or_else(|| Error::NotInvertible(format!("no block {e} → {e2}")))?
            .clone();
        let c = phi.as_scalar_identity().ok_or_else(|| {
            Error::NotInvertible(format!("block {e} → {e2} is not ±unit·identity: {phi}"))
        })?;
        let inv = identity_morphism(self.current.rank, &phi.src)
            .with_shifts(phi.tgt.shift, phi.src.shift)
            .scale(&(Coeff::from_integer(1.into()) / c));
        self.step_with_inverse(e, e2, inv)
    }

    /// Eliminate with an explicitly supplied (and verified) inverse block.
    pub fn step_with_inverse(
        &mut self,
        e: SummandId,
        e2: SummandId,
        phi_inv: BSMorphism,
    ) -> Result<()> {
        let phi = self
            .current
            .block(e, e2)
            .ok_or_else(|| Error::NotInvertible(format!("no block {e} → {e2}")))?
            .clone();
        let rank = self.current.rank;
        let id_e = identity_morphism(rank, &phi.src);
        let id_e2 = identity_morphism(rank, &phi.tgt);
        if phi.compose(&phi_inv) != id_e2 || phi_inv.compose(&phi) != id_e {
            return Err(Error::NotInvertible(format!(
                "supplied inverse fails for block {e} → {e2}"
            )));
        }
        let beta: Vec<(SummandId, Arc<BSMorphism>)> = self
            .current
            .targets_of(e)
            .into_iter()
            .filter(|&c| c != e2)
            .map(|c| (c, self.current.block(e, c).unwrap().clone()))
            .collect();
        let gamma: Vec<(SummandId, Arc<BSMorphism>)> = self
            .current
            .sources_of(e2)
            .into_iter()
            .filter(|&b| b != e)
            .map(|b| (b, self.current.block(b, e2).unwrap().clone()))
            .collect();

        // homotopy first: it uses the pre-step accumulators. The step block
        // is −φ⁻¹ so that ι π − id = d h + h d comes out exactly (with +φ⁻¹
        // it would certify id − ι π instead).
        let p_e2 = self.p_rows.get(&e2).cloned().unwrap_or_default();
        let i_e = self.i_cols.get(&e).cloned().unwrap_or_default();
        for (&o1, pblk) in &p_e2 {
            let half = phi_inv.compose(pblk);
            if half.is_zero() {
                continue;
            }
            for (&o2, iblk) in &i_e {
                let contrib = iblk.compose(&half);
                if !contrib.is_zero() {
                    acc_block(&mut self.h, (o1, o2), contrib.neg());
                }
            }
        }

        // corrections α ← α − β φ⁻¹ γ
        for (b, gamma_b) in &gamma {
            let half = phi_inv.compose(gamma_b);
            for (c, beta_c) in &beta {
                let corr = beta_c.compose(&half);
                if corr.is_zero() {
                    continue;
                }
                let new = match self.current.block(*b, *c) {
                    Some(old) => old.sub(&corr),
                    None => corr.neg(),
                };
                self.current.set_block(*b, *c, new);
            }
        }

        // accumulate π: rows of surviving targets pick up −β φ⁻¹ ∘ (row of e2)
        if let Some(row_e2) = self.p_rows.remove(&e2) {
            for (c, beta_c) in &beta {
                let factor = beta_c.compose(&phi_inv).neg();
                if factor.is_zero() {
                    continue;
                }
                let row_c = self.p_rows.entry(*c).or_default();
                for (&o, pblk) in &row_e2 {
                    let contrib = factor.compose(pblk);
                    if !contrib.is_zero() {
                        merge_arc(row_c, o, contrib);
                    }
                }
            }
        }
        self.p_rows.remove(&e);

        // accumulate ι: columns of surviving sources pick up (col of e) ∘ (−φ⁻¹ γ)
        if let Some(col_e) = self.i_cols.remove(&e) {
            for (b, gamma_b) in &gamma {
                let factor = phi_inv.compose(gamma_b).neg();
                if factor.is_zero() {
                    continue;
                }
                let col_b = self.i_cols.entry(*b).or_default();
                for (&o, iblk) in &col_e {
                    let contrib = iblk.compose(&factor);
                    if !contrib.is_zero() {
                        merge_arc(col_b, o, contrib);
                    }
                }
            }
        }
        self.i_cols.remove(&e2);

        self.current.remove_summand(e);
        self.current.remove_summand(e2);
        self.steps += 1;

        if self.verify_steps {
            self.snapshot().verify()?;
        }
        Ok(())
    }

    fn materialize(&self) -> (ChainMap, ChainMap, Homotopy) {
        let mut pi = ChainMap::default();
        for (&cur, row) in &self.p_rows {
            for (&orig, blk) in row {
                pi.blocks.insert((orig, cur), blk.clone());
            }
        }
        let mut iota = ChainMap::default();
        for (&cur, col) in &self.i_cols {
            for (&orig, blk) in col {
                iota.blocks.insert((cur, orig), blk.clone());
            }
        }
        let homotopy =
            Homotopy { blocks: self.h.iter().map(|(&k, m)| (k, Arc::new(m.clone()))).collect() };
        (pi, iota, homotopy)
    }

    /// The accumulated reduction so far (shares blocks with the reducer).
    pub fn snapshot(&self) -> Reduction {
        let (projection, inclusion, homotopy) = self.materialize();
        Reduction {
            original: self.original.clone(),
            reduced: self.current.clone(),
            projection,
            inclusion,
            homotopy,
            steps: self.steps,
        }
    }

    pub fn finish(self) -> Reduction {
        let (projection, inclusion, homotopy) = self.materialize();
        Reduction {
            original: self.original,
            reduced: self.current,
            projection,
            inclusion,
            homotopy,
            steps: self.steps,
        }
    }
}

fn merge_arc(map: &mut BTreeMap<SummandId, Arc<BSMorphism>>, key: SummandId, m: BSMorphism) {
    use std::collections::btree_map::Entry;
    match map.entry(key) {
        Entry::Vacant(e) => {
            e.insert(Arc::new(m));
        }
        Entry::Occupied(mut e) => {
            let sum = e.get().add(&m);
            if sum.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = Arc::new(sum);
            }
        }
    }
}

/// Single verified Gaussian elimination step: drops the pair, returns the
/// reduced complex with projection, inclusion, and homotopy, all certified
/// exactly before returning.
pub fn gaussian_eliminate(
    complex: &Complex,
    e: SummandId,
    e2: SummandId,
) -> Result<(Complex, ChainMap, ChainMap, Homotopy)> {
    let mut reducer = Reducer::new(complex.clone());
    reducer.step(e, e2)?;
    let reduction = reducer.finish();
    reduction.verify()?;
    let Reduction { reduced, projection, inclusion, homotopy, .. } = reduction;
    Ok((reduced, projection, inclusion, homotopy))
}

/// Repeatedly eliminate `±unit·identity` blocks (smallest id pair first)
/// until none remain; returns the verified reduction.
pub fn greedy_reduce(complex: Complex) -> Result<Reduction> {
    let mut reducer = Reducer::new(complex);
    loop {
        let next = reducer
            .current
            .blocks()
            .find(|(_, m)| m.as_scalar_identity().is_some())
            .map(|(&k, _)| k);
        match next {
            Some((e, e2)) => reducer.step(e, e2)?,
            None => break,
        }
    }
    let reduction = reducer.finish();
    reduction.verify()?;
    Ok(reduction)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::Gen;
    use crate::realization::Realization;
    use crate::ring::RingCtx;

    fn calc(name: &str) -> Calc {
        Calc::new(Arc::new(RingCtx::new(Arc::new(Realization::builtin(name).unwrap())).unwrap()))
    }

    fn q(n: i64) -> Coeff {
        Coeff::from_integer(n.into())
    }

    /// A complex of unit objects with rational scalar blocks.
    fn scalar_complex(layers: &[usize], blocks: &[(usize, usize, usize, i64)]) -> Complex {
        let mut c = Complex::new(1);
        let mut ids = Vec::new();
        for (deg, &n) in layers.iter().enumerate() {
            let mut layer = Vec::new();
            for k in 0..n {
                let label = Label::Bits(Subexpr::new(16, (deg as u32) << 8 | k as u32));
                layer.push(c.add_summand(deg as i64, BSObject::unit(), 0, label));
            }
            ids.push(layer);
        }
        for &(deg, i, j, v) in blocks {
            let m = identity_morphism(1, &BSObject::unit()).scale(&q(v));
            if !m.is_zero() {
                c.set_block(ids[deg][i], ids[deg + 1][j], m);
            }
        }
        c
    }

    #[test]
    fn dsq_detects_bad_signs() {
        // square with one sign flipped: d² ≠ 0
        let c = scalar_complex(&[1, 2, 1], &[(0, 0, 0, 1), (0, 0, 1, 1), (1, 0, 0, 1), (1, 1, 0, 1)]);
        let report = c.check_differential();
        assert!(!report.is_ok());
        assert_eq!(report.failures.len(), 1);
        let good =
            scalar_complex(&[1, 2, 1], &[(0, 0, 0, 1), (0, 0, 1, 1), (1, 0, 0, 1), (1, 1, 0, -1)]);
        assert!(good.check_differential().is_ok());
        // zero complex passes
        assert!(scalar_complex(&[2, 3], &[]).check_differential().is_ok());
    }

    #[test]
    fn eliminate_two_term_identity() {
        let c = scalar_complex(&[1, 1], &[(0, 0, 0, 1)]);
        let ids: Vec<_> = c.summand_ids().collect();
        let (reduced, pi, iota, h) = gaussian_eliminate(&c, ids[0], ids[1]).unwrap();
        assert_eq!(reduced.num_summands(), 0);
        assert!(pi.blocks.is_empty());
        assert!(iota.blocks.is_empty());
        assert_eq!(h.blocks.len(), 1);
    }

    #[test]
    fn eliminate_four_term_shape() {
        // A → B⊕E → C⊕E' → D with unit φ; the surviving middle block is the
        // closed form α − βφ⁻¹γ = 1 − 2·(1/2)·1 = 0
        let c = scalar_complex(
            &[1, 2, 2, 1],
            &[
                (0, 0, 0, 2),  // ε: A→B
                (0, 0, 1, -1), // ζ: A→E
                (1, 0, 0, 1),  // α: B→C
                (1, 1, 0, 2),  // β: E→C
                (1, 0, 1, 1),  // γ: B→E'
                (1, 1, 1, 2),  // φ: E→E'
                (2, 0, 0, 2),  // η: C→D
                (2, 1, 0, -2), // θ: E'→D
            ],
        );
        c.check_differential().into_result().unwrap();
        let deg0 = c.ids_in_degree(0).to_vec();
        let deg1 = c.ids_in_degree(1).to_vec();
        let deg2 = c.ids_in_degree(2).to_vec();
        let deg3 = c.ids_in_degree(3).to_vec();
        let (reduced, pi, _iota, _h) = gaussian_eliminate(&c, deg1[1], deg2[1]).unwrap();
        assert_eq!(reduced.num_summands(), 4);
        assert!(reduced.block(deg1[0], deg2[0]).is_none());
        // ε survives untouched, π carries the −βφ⁻¹ correction E' → C
        assert!(reduced.block(deg0[0], deg1[0]).is_some());
        assert!(reduced.block(deg2[0], deg3[0]).is_some());
        let corr = pi.block(deg2[1], deg2[0]).unwrap();
        assert_eq!(corr.as_scalar_identity(), Some(-q(1)));
    }

    #[test]
    fn non_invertible_block_is_rejected() {
        let calc = calc("a2");
        let s = Gen(0);
        // B_s → 1(1) via the end dot: not a scalar identity
        let mut c = Complex::new(calc.rank());
        let b = c.add_summand(0, BSObject::new(Word(vec![s]), 0), 0, Label::Unit);
        let one = c.add_summand(1, BSObject::unit(), 1, Label::Word(Word::empty()));
        c.set_block(b, one, calc.enddot(&Word(vec![s]), 0).with_shifts(0, 1));
        let mut r = Reducer::new(c);
        assert!(matches!(r.step(b, one), Err(Error::NotInvertible(_))));
    }

    #[test]
    fn greedy_reduces_contractible_square() {
        let c =
            scalar_complex(&[1, 2, 1], &[(0, 0, 0, 1), (0, 0, 1, 1), (1, 0, 0, 1), (1, 1, 0, -1)]);
        let red = greedy_reduce(c).unwrap();
        assert_eq!(red.reduced.num_summands(), 0);
        assert_eq!(red.steps, 2);
    }

    #[test]
    fn compose_reductions_certificate() {
        // two steps on a contractible complex, each step re-verified
        let c =
            scalar_complex(&[1, 2, 1], &[(0, 0, 0, 1), (0, 0, 1, 2), (1, 0, 0, 2), (1, 1, 0, -1)]);
        c.check_differential().into_result().unwrap();
        let d0 = c.ids_in_degree(0).to_vec();
        let d1 = c.ids_in_degree(1).to_vec();
        let d2 = c.ids_in_degree(2).to_vec();
        let mut r = Reducer::new(c);
        r.verify_steps = true;
        r.step(d0[0], d1[0]).unwrap();
        r.step(d1[1], d2[0]).unwrap();
        let red = r.finish();
        assert_eq!(red.reduced.num_summands(), 0);
        red.verify().unwrap();
    }

    #[test]
    fn explicit_inverse_path() {
        let c = scalar_complex(&[1, 1], &[(0, 0, 0, 7)]);
        let ids: Vec<_> = c.summand_ids().collect();
        let mut r = Reducer::new(c);
        // wrong inverse is rejected, right one accepted
        let unit = BSObject::unit();
        let bad = identity_morphism(1, &unit).scale(&q(7));
        assert!(r.step_with_inverse(ids[0], ids[1], bad).is_err());
        let good = identity_morphism(1, &unit).scale(&(q(1) / q(7)));
        r.step_with_inverse(ids[0], ids[1], good).unwrap();
        let red = r.finish();
        red.verify().unwrap();
    }

    #[test]
    fn tensor_with_unit_complex() {
        let calc = calc("a2");
        let s = Gen(0);
        let mut f = Complex::new(calc.rank());
        let b = f.add_summand(
            0,
            BSObject::new(Word(vec![s]), 0),
            0,
            Label::Bits(Subexpr::parse("1").unwrap()),
        );
        let one = f.add_summand(1, BSObject::unit(), 1, Label::Bits(Subexpr::parse("0").unwrap()));
        f.set_block(b, one, calc.enddot(&Word(vec![s]), 0).with_shifts(0, 1));
        f.check_differential().into_result().unwrap();
        let mut unit = Complex::new(calc.rank());
        unit.add_summand(0, BSObject::unit(), 0, Label::Unit);
        let t = tensor_complexes(&calc, &f, &unit);
        assert_eq!(t.num_summands(), 2);
        assert_eq!(t.num_blocks(), 1);
        t.check_differential().into_result().unwrap();
        let u = tensor_complexes(&calc, &unit, &f);
        assert_eq!(u.num_summands(), 2);
        u.check_differential().into_result().unwrap();
    }

    #[test]
    fn chain_map_identity_and_homotopy_shapes() {
        let c = scalar_complex(&[1, 1], &[(0, 0, 0, 3)]);
        let id = ChainMap::identity(&c);
        check_chain_map(&c, &c, &id).unwrap();
        check_homotopy(&c, &id, &id, &Homotopy::default()).unwrap();
    }
}

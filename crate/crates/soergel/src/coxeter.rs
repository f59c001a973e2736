//! Coxeter systems and word combinatorics: subwords, subexpressions,
//! multiwords, braid words.
//!
//! Generators are named strings mapped to dense indices at system
//! construction; all downstream data uses the indices. Subexpressions are
//! 01-sequences stored as bitmasks, with bit `i` the symbol at position `i`
//! (position 0 is the leftmost letter); their textual form is `"110010"`.

use std::cmp::Ordering;
use std::fmt;

use crate::{Error, Result};

/// A generator of the Coxeter system, by dense index.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Gen(pub u8);

/// Sentinel for `m_st = ∞` in the Coxeter matrix.
pub const INFINITE_ORDER: u32 = 0;

/// A finitely generated Coxeter system `(W, S)` with its Coxeter matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoxeterSystem {
    names: Vec<String>,
    matrix: Vec<Vec<u32>>,
}

impl CoxeterSystem {
    /// Orders `m_ss = 1`, `m_st ≥ 2` for `s ≠ t`, with 0 encoding `∞`.
    pub fn new(names: Vec<String>, matrix: Vec<Vec<u32>>) -> Result<Self> {
        let n = names.len();
        if n == 0 || n > 64 {
            return Err(Error::InvalidData("need between 1 and 64 generators".into()));
        }
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() || name.contains(char::is_whitespace) || name.contains('^') {
                return Err(Error::InvalidData(format!("bad generator name {name:?}")));
            }
            if names[..i].contains(name) {
                return Err(Error::InvalidData(format!("duplicate generator name {name:?}")));
            }
        }
        if matrix.len() != n || matrix.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidData("Coxeter matrix shape must match generators".into()));
        }
        for s in 0..n {
            if matrix[s][s] != 1 {
                return Err(Error::InvalidData("Coxeter matrix diagonal must be 1".into()));
            }
            for t in 0..s {
                if matrix[s][t] != matrix[t][s] {
                    return Err(Error::InvalidData("Coxeter matrix must be symmetric".into()));
                }
                if matrix[s][t] == 1 {
                    return Err(Error::InvalidData("off-diagonal orders must be ≥ 2 or ∞".into()));
                }
            }
        }
        Ok(CoxeterSystem { names, matrix })
    }

    pub fn gen_count(&self) -> usize {
        self.names.len()
    }

    pub fn gens(&self) -> impl Iterator<Item = Gen> {
        (0..self.names.len() as u8).map(Gen)
    }

    pub fn name(&self, g: Gen) -> &str {
        &self.names[g.0 as usize]
    }

    pub fn gen_by_name(&self, name: &str) -> Option<Gen> {
        self.names.iter().position(|n| n == name).map(|i| Gen(i as u8))
    }

    pub fn order(&self, s: Gen, t: Gen) -> u32 {
        self.matrix[s.0 as usize][t.0 as usize]
    }

    /// Parse a whitespace-separated Coxeter word, e.g. `"s s t t s s"`.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let mut letters = Vec::new();
        for tok in text.split_whitespace() {
            let g = self
                .gen_by_name(tok)
                .ok_or_else(|| Error::Parse(format!("unknown generator {tok:?}")))?;
            letters.push(g);
        }
        Ok(Word(letters))
    }

    /// Parse a whitespace-separated braid word; a trailing `^-1` marks a
    /// negative letter, e.g. `"s s t^-1"`.
    pub fn parse_braid_word(&self, text: &str) -> Result<BraidWord> {
        let mut letters = Vec::new();
        for tok in text.split_whitespace() {
            let (name, positive) = match tok.strip_suffix("^-1") {
                Some(base) => (base, false),
                None => (tok, true),
            };
            let g = self
                .gen_by_name(name)
                .ok_or_else(|| Error::Parse(format!("unknown generator {name:?}")))?;
            letters.push((g, positive));
        }
        Ok(BraidWord(letters))
    }

    pub fn word_string(&self, w: &Word) -> String {
        w.0.iter().map(|&g| self.name(g)).collect::<Vec<_>>().join(" ")
    }

    /// Compact rendering used in labels and JSON, e.g. `"sts"`. Unambiguous
    /// for the single-character generator names used by the shipped
    /// realizations.
    pub fn word_compact(&self, w: &Word) -> String {
        if w.is_empty() {
            return "∅".into();
        }
        let sep = if self.names.iter().all(|n| n.chars().count() == 1) { "" } else { " " };
        w.0.iter().map(|&g| self.name(g)).collect::<Vec<_>>().join(sep)
    }

    pub fn multiword_string(&self, m: &Multiword) -> String {
        if m.0.is_empty() {
            return "∅".into();
        }
        m.0.iter()
            .map(|&(g, n)| {
                if n == 1 {
                    self.name(g).to_string()
                } else {
                    format!("{}^{}", self.name(g), n)
                }
            })
            .collect::<Vec<_>>()
            .join("")
    }
}

/// A Coxeter word: a sequence of generators of the ambient system.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Word(pub Vec<Gen>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Maximal monotonous runs, in order. Expanding the runs reproduces the
    /// word and no two adjacent runs share a generator.
    pub fn run_decomposition(&self) -> Vec<(Gen, u32)> {
        let mut runs: Vec<(Gen, u32)> = Vec::new();
        for &g in &self.0 {
            match runs.last_mut() {
                Some((h, n)) if *h == g => *n += 1,
                _ => runs.push((g, 1)),
            }
        }
        runs
    }

    /// Ordering used for subword censuses: length-descending, then
    /// lexicographic on generator indices.
    pub fn census_cmp(&self, other: &Word) -> Ordering {
        other.len().cmp(&self.len()).then_with(|| self.0.cmp(&other.0))
    }
}

/// A subexpression of a host word: a 01-sequence of the same length.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Subexpr {
    len: u8,
    bits: u32,
}

impl Subexpr {
    pub fn new(len: usize, bits: u32) -> Self {
        assert!(len <= 32, "subexpressions support words of length ≤ 32");
        debug_assert_eq!(bits & !mask(len), 0);
        Subexpr { len: len as u8, bits }
    }

    pub fn zeros(len: usize) -> Self {
        Self::new(len, 0)
    }

    pub fn ones_word(len: usize) -> Self {
        Self::new(len, mask(len))
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len());
        self.bits >> i & 1 == 1
    }

    pub fn with_bit(&self, i: usize, value: bool) -> Self {
        let bits = if value { self.bits | 1 << i } else { self.bits & !(1 << i) };
        Subexpr { len: self.len, bits }
    }

    /// Number of 1s.
    pub fn count_ones(&self) -> u32 {
        self.bits.count_ones()
    }

    /// Positions of the 1s, ascending.
    pub fn one_positions(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.get(i)).collect()
    }

    /// Componentwise `≤`.
    pub fn le(&self, other: &Subexpr) -> bool {
        self.len == other.len && self.bits & !other.bits == 0
    }

    /// The order of the written 01-strings, e.g. `"001" < "010" < "100"`.
    pub fn string_cmp(&self, other: &Subexpr) -> Ordering {
        debug_assert_eq!(self.len, other.len);
        for i in 0..self.len() {
            match self.get(i).cmp(&other.get(i)) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        Ordering::Equal
    }

    pub fn parse(text: &str) -> Result<Subexpr> {
        if text.len() > 32 {
            return Err(Error::Parse("bit string too long".into()));
        }
        let mut bits = 0u32;
        for (i, ch) in text.chars().enumerate() {
            match ch {
                '1' => bits |= 1 << i,
                '0' => {}
                _ => return Err(Error::Parse(format!("bad bit character {ch:?}"))),
            }
        }
        Ok(Subexpr::new(text.len(), bits))
    }
}

impl fmt::Display for Subexpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len() {
            write!(f, "{}", if self.get(i) { '1' } else { '0' })?;
        }
        Ok(())
    }
}

/// A multiword `s_1^{n_1} … s_k^{n_k}`; adjacent generators may repeat.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Multiword(pub Vec<(Gen, u32)>);

impl Multiword {
    pub fn simple(w: &Word) -> Self {
        Multiword(w.0.iter().map(|&g| (g, 1)).collect())
    }

    /// `e(μ)`: expand the exponents.
    pub fn expand(&self) -> Word {
        let mut v = Vec::new();
        for &(g, n) in &self.0 {
            v.extend(std::iter::repeat(g).take(n as usize));
        }
        Word(v)
    }

    /// `f(μ)`: forget the exponents.
    pub fn forget(&self) -> Word {
        Word(self.0.iter().map(|&(g, _)| g).collect())
    }

    pub fn is_simple(&self) -> bool {
        self.0.iter().all(|&(_, n)| n == 1)
    }

    /// Maximal same-generator blocks of groups, as `(generator, group sizes)`.
    pub fn color_blocks(&self) -> Vec<(Gen, Vec<u32>)> {
        let mut blocks: Vec<(Gen, Vec<u32>)> = Vec::new();
        for &(g, n) in &self.0 {
            match blocks.last_mut() {
                Some((h, sizes)) if *h == g => sizes.push(n),
                _ => blocks.push((g, vec![n])),
            }
        }
        blocks
    }
}

/// A braid word: letters are `(generator, sign)` with `true` positive.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct BraidWord(pub Vec<(Gen, bool)>);

impl BraidWord {
    pub fn positive_lift(w: &Word) -> Self {
        BraidWord(w.0.iter().map(|&g| (g, true)).collect())
    }

    pub fn negative_lift(w: &Word) -> Self {
        BraidWord(w.0.iter().map(|&g| (g, false)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The Coxeter projection, forgetting signs.
    pub fn projection(&self) -> Word {
        Word(self.0.iter().map(|&(g, _)| g).collect())
    }
}

/// `ϖ`: number of positive letters minus number of negative letters.
pub fn writhe(w: &BraidWord) -> i64 {
    w.0.iter().map(|&(_, pos)| if pos { 1 } else { -1 }).sum()
}

/// Maximal constant-sign blocks of a braid word, with alternating signs.
pub fn alternating_decomposition(w: &BraidWord) -> Result<Vec<(bool, Word)>> {
    if w.is_empty() {
        return Err(Error::InvalidData("alternating decomposition of the empty braid word".into()));
    }
    let mut blocks: Vec<(bool, Word)> = Vec::new();
    for &(g, pos) in &w.0 {
        match blocks.last_mut() {
            Some((p, word)) if *p == pos => word.0.push(g),
            _ => blocks.push((pos, Word(vec![g]))),
        }
    }
    Ok(blocks)
}

/// The subword of `w` selected by the 1s of `i`, in order.
pub fn subword_of(w: &Word, i: &Subexpr) -> Result<Word> {
    if w.len() != i.len() {
        return Err(Error::LengthMismatch(format!(
            "word has length {}, subexpression {}",
            w.len(),
            i.len()
        )));
    }
    Ok(Word(w.0.iter().enumerate().filter(|&(p, _)| i.get(p)).map(|(_, &g)| g).collect()))
}

/// All distinct subwords of `w`, each exactly once, ordered length-descending
/// then lexicographic. Includes the empty word and `w` itself.
///
/// Walks the first-occurrence automaton so each distinct subword is produced
/// once; the census never materializes the `2^n` subexpressions.
pub fn enumerate_subwords(w: &Word) -> Vec<Word> {
    let n = w.len();
    // next_occ[p][g] = least q ≥ p with w[q] = g
    let gen_max = w.0.iter().map(|g| g.0 as usize + 1).max().unwrap_or(0);
    let mut next_occ = vec![vec![usize::MAX; gen_max]; n + 1];
    for p in (0..n).rev() {
        next_occ[p] = next_occ[p + 1].clone();
        next_occ[p][w.0[p].0 as usize] = p;
    }
    let mut out = Vec::new();
    let mut prefix = Vec::new();
    fn walk(
        w: &Word,
        next_occ: &[Vec<usize>],
        p: usize,
        prefix: &mut Vec<Gen>,
        out: &mut Vec<Word>,
    ) {
        out.push(Word(prefix.clone()));
        let mut firsts: Vec<usize> =
            next_occ[p].iter().copied().filter(|&q| q != usize::MAX).collect();
        firsts.sort_unstable();
        for q in firsts {
            prefix.push(w.0[q]);
            walk(w, next_occ, q + 1, prefix, out);
            prefix.pop();
        }
    }
    walk(w, &next_occ, 0, &mut prefix, &mut out);
    out.sort_by(|a, b| a.census_cmp(b));
    out
}

/// Minimal number of adjacent `01 ↔ 10` flips needed to reach `1…10…0`,
/// i.e. the inversion count of the bit string.
pub fn flip_distance(i: &Subexpr) -> u32 {
    let mut zeros_seen = 0u32;
    let mut inv = 0u32;
    for p in 0..i.len() {
        if i.get(p) {
            inv += zeros_seen;
        } else {
            zeros_seen += 1;
        }
    }
    inv
}

/// The set `M_x`: all pairs `(𝐢, μ)` with `f(μ) = x` and `e(μ)` the subword
/// of `w` selected by `𝐢`. Empty when `x` is not a subword of `w`.
pub fn multiword_set(w: &Word, x: &Word) -> Vec<(Subexpr, Multiword)> {
    let mut out = Vec::new();
    let mut groups: Vec<Vec<usize>> = Vec::new();
    fn rec(
        w: &Word,
        x: &Word,
        j: usize,
        start: usize,
        groups: &mut Vec<Vec<usize>>,
        out: &mut Vec<(Subexpr, Multiword)>,
    ) {
        if j == x.len() {
            let mut bits = Subexpr::zeros(w.len());
            for g in groups.iter() {
                for &p in g {
                    bits = bits.with_bit(p, true);
                }
            }
            let mults =
                Multiword(groups.iter().enumerate().map(|(k, g)| (x.0[k], g.len() as u32)).collect());
            out.push((bits, mults));
            return;
        }
        let positions: Vec<usize> =
            (start..w.len()).filter(|&p| w.0[p] == x.0[j]).collect();
        // nonempty subsets of the available positions; the next group starts
        // after this group's maximum
        let m = positions.len();
        for sel in 1u64..(1u64 << m) {
            let chosen: Vec<usize> =
                (0..m).filter(|&k| sel >> k & 1 == 1).map(|k| positions[k]).collect();
            let next = chosen.last().unwrap() + 1;
            groups.push(chosen);
            rec(w, x, j + 1, next, groups, out);
            groups.pop();
        }
    }
    if w.len() <= 32 {
        rec(w, x, 0, 0, &mut groups, &mut out);
    }
    out.sort();
    out
}

/// Positions of the 1s of `i` split into consecutive groups of the sizes of
/// `μ`; `None` if the sizes do not add up to the number of 1s.
pub fn group_positions(i: &Subexpr, mu: &Multiword) -> Option<Vec<Vec<usize>>> {
    let ones = i.one_positions();
    let total: u32 = mu.0.iter().map(|&(_, n)| n).sum();
    if total as usize != ones.len() {
        return None;
    }
    let mut groups = Vec::with_capacity(mu.0.len());
    let mut at = 0;
    for &(_, n) in &mu.0 {
        groups.push(ones[at..at + n as usize].to_vec());
        at += n as usize;
    }
    Some(groups)
}

fn mask(len: usize) -> u32 {
    if len == 0 {
        0
    } else {
        u32::MAX >> (32 - len)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys2() -> CoxeterSystem {
        CoxeterSystem::new(
            vec!["s".into(), "t".into()],
            vec![vec![1, 3], vec![3, 1]],
        )
        .unwrap()
    }

    fn sys3() -> CoxeterSystem {
        CoxeterSystem::new(
            vec!["s".into(), "t".into(), "u".into()],
            vec![vec![1, 3, 2], vec![3, 1, 3], vec![2, 3, 1]],
        )
        .unwrap()
    }

    #[test]
    fn rejects_bad_systems() {
        assert!(CoxeterSystem::new(vec!["s".into()], vec![vec![2]]).is_err());
        assert!(CoxeterSystem::new(
            vec!["s".into(), "t".into()],
            vec![vec![1, 3], vec![2, 1]]
        )
        .is_err());
        assert!(CoxeterSystem::new(vec!["s".into(), "s".into()], vec![vec![1, 2], vec![2, 1]])
            .is_err());
    }

    #[test]
    fn subword_census() {
        let sys = sys2();
        let w = sys.parse_word("s s t t s s").unwrap();
        assert_eq!(enumerate_subwords(&w).len(), 23);
        let w = sys.parse_word("s s s").unwrap();
        let subs = enumerate_subwords(&w);
        assert_eq!(subs.len(), 4);
        // length-descending order, empty word last
        assert_eq!(subs[0].len(), 3);
        assert!(subs[3].is_empty());
        let w = sys.parse_word("s t").unwrap();
        assert_eq!(enumerate_subwords(&w).len(), 4);
    }

    #[test]
    fn subword_census_matches_brute_force() {
        use std::collections::BTreeSet;
        let sys = sys3();
        for text in ["s t s t s t", "s s u u s", "t t t t", "s u s u t t s", "s"] {
            let w = sys.parse_word(text).unwrap();
            let mut brute = BTreeSet::new();
            for bits in 0u32..1 << w.len() {
                brute.insert(subword_of(&w, &Subexpr::new(w.len(), bits)).unwrap());
            }
            let listed: BTreeSet<Word> = enumerate_subwords(&w).into_iter().collect();
            assert_eq!(listed, brute);
        }
    }

    #[test]
    fn subword_selection() {
        // positions chosen by the 1s, in order
        let sys = CoxeterSystem::new(
            vec!["s1".into(), "s2".into(), "s3".into(), "s4".into(), "s5".into()],
            vec![
                vec![1, 2, 2, 2, 2],
                vec![2, 1, 2, 2, 2],
                vec![2, 2, 1, 2, 2],
                vec![2, 2, 2, 1, 2],
                vec![2, 2, 2, 2, 1],
            ],
        )
        .unwrap();
        let w = sys.parse_word("s4 s2 s5 s1 s1 s3").unwrap();
        let i = Subexpr::parse("110010").unwrap();
        let x = subword_of(&w, &i).unwrap();
        assert_eq!(sys.word_string(&x), "s4 s2 s1");
        let j = Subexpr::parse("110100").unwrap();
        assert_eq!(subword_of(&w, &j).unwrap(), x);
        assert!(subword_of(&w, &Subexpr::parse("11").unwrap()).is_err());
        assert!(subword_of(&w, &Subexpr::zeros(6)).unwrap().is_empty());
    }

    #[test]
    fn flip_distance_is_inversion_count() {
        assert_eq!(flip_distance(&Subexpr::parse("111000").unwrap()), 0);
        assert_eq!(flip_distance(&Subexpr::parse("011").unwrap()), 2);
        assert_eq!(flip_distance(&Subexpr::parse("0101").unwrap()), 3);
    }

    /// BFS over the flip graph; the independent oracle for `flip_distance`.
    fn flip_bfs(i: &Subexpr) -> u32 {
        use std::collections::{HashMap, VecDeque};
        let n = i.len();
        let ones = i.count_ones();
        let target = {
            let mut t = Subexpr::zeros(n);
            for p in 0..ones as usize {
                t = t.with_bit(p, true);
            }
            t
        };
        let mut dist = HashMap::new();
        let mut queue = VecDeque::new();
        dist.insert(*i, 0u32);
        queue.push_back(*i);
        while let Some(cur) = queue.pop_front() {
            let d = dist[&cur];
            if cur == target {
                return d;
            }
            for p in 0..n.saturating_sub(1) {
                if cur.get(p) != cur.get(p + 1) {
                    let next = cur.with_bit(p, cur.get(p + 1)).with_bit(p + 1, cur.get(p));
                    dist.entry(next).or_insert_with(|| {
                        queue.push_back(next);
                        d + 1
                    });
                }
            }
        }
        unreachable!("flip graph on fixed popcount is connected")
    }

    #[test]
    fn flip_distance_matches_bfs() {
        for len in 0..=8usize {
            for bits in 0..1u32 << len {
                let i = Subexpr::new(len, bits);
                assert_eq!(flip_distance(&i), flip_bfs(&i), "at {i}");
            }
        }
    }

    #[test]
    fn multiword_maps() {
        let sys = sys2();
        let s = sys.gen_by_name("s").unwrap();
        let t = sys.gen_by_name("t").unwrap();
        let mu = Multiword(vec![(s, 2), (s, 1)]);
        assert_eq!(mu.expand().len(), 3);
        assert_eq!(mu.forget().len(), 2);
        assert!(!mu.is_simple());
        let mu = Multiword(vec![(s, 3)]);
        assert_eq!(mu.expand().len(), 3);
        assert_eq!(mu.forget().len(), 1);
        let mu = Multiword(vec![(s, 1), (t, 1)]);
        assert!(mu.is_simple());
        assert_eq!(mu.expand(), mu.forget());
    }

    #[test]
    fn multiword_sets_for_sss() {
        let sys = sys2();
        let w = sys.parse_word("s s s").unwrap();
        let x_sss = w.clone();
        let x_ss = sys.parse_word("s s").unwrap();
        let x_s = sys.parse_word("s").unwrap();
        assert_eq!(multiword_set(&w, &x_sss).len(), 1);
        assert_eq!(multiword_set(&w, &x_ss).len(), 5);
        assert_eq!(multiword_set(&w, &x_s).len(), 7);
        assert_eq!(multiword_set(&w, &Word::empty()).len(), 1);
        // not a subword: empty set
        let x_t = sys.parse_word("t").unwrap();
        assert!(multiword_set(&w, &x_t).is_empty());
        // every pair satisfies the defining equations
        for (i, mu) in multiword_set(&w, &x_ss) {
            assert_eq!(mu.forget(), x_ss);
            assert_eq!(mu.expand(), subword_of(&w, &i).unwrap());
        }
    }

    #[test]
    fn run_decomposition_examples() {
        let sys = sys3();
        let w = sys.parse_word("s s s t t u s u u").unwrap();
        let runs = w.run_decomposition();
        let names: Vec<(String, u32)> =
            runs.iter().map(|&(g, n)| (sys.name(g).to_string(), n)).collect();
        assert_eq!(
            names,
            vec![
                ("s".into(), 3),
                ("t".into(), 2),
                ("u".into(), 1),
                ("s".into(), 1),
                ("u".into(), 2)
            ]
        );
        assert!(Word::empty().run_decomposition().is_empty());
        assert_eq!(sys.parse_word("s t").unwrap().run_decomposition().len(), 2);
        // round trip and adjacency
        for text in ["s s t s", "u u u", "s t u s t u"] {
            let w = sys.parse_word(text).unwrap();
            let runs = w.run_decomposition();
            let mut rebuilt = Vec::new();
            for &(g, n) in &runs {
                rebuilt.extend(std::iter::repeat(g).take(n as usize));
            }
            assert_eq!(Word(rebuilt), w);
            for pair in runs.windows(2) {
                assert_ne!(pair[0].0, pair[1].0);
            }
        }
    }

    #[test]
    fn braid_words() {
        let sys = sys3();
        let w = sys.parse_braid_word("s t u^-1 u^-1 s").unwrap();
        let blocks = alternating_decomposition(&w).unwrap();
        assert_eq!(blocks.len(), 3);
        assert_eq!(blocks[0].0, true);
        assert_eq!(blocks[0].1.len(), 2);
        assert_eq!(blocks[1].0, false);
        assert_eq!(blocks[1].1.len(), 2);
        assert_eq!(blocks[2].0, true);
        assert_eq!(blocks[2].1.len(), 1);
        assert!(alternating_decomposition(&BraidWord::default()).is_err());
        assert_eq!(alternating_decomposition(&sys.parse_braid_word("s s t").unwrap()).unwrap().len(), 1);
        assert_eq!(
            alternating_decomposition(&sys.parse_braid_word("s^-1").unwrap()).unwrap(),
            vec![(false, sys.parse_word("s").unwrap())]
        );

        assert_eq!(writhe(&sys.parse_braid_word("s s t^-1").unwrap()), 1);
        assert_eq!(writhe(&BraidWord::default()), 0);
        let neg = BraidWord::negative_lift(&sys.parse_word("s t u").unwrap());
        assert_eq!(writhe(&neg), -3);
    }
}

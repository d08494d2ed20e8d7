//! Todd-Coxeter coset enumeration.
//!
//! Deduction-driven (Felsch) filling: new cosets are defined at the first
//! undefined table entry, scanning cosets then columns in ascending order,
//! and every new entry is pushed as a deduction whose consequences are read
//! off the relator cycles through it. Coincidences merge through a
//! union-find forwarding array. Once the table is full a relator-scanning
//! pass over every coset confirms closure before the table is accepted.
//!
//! Coset 0 is the subgroup coset. Column `2g` holds generator `g` and column
//! `2g + 1` its inverse.

use std::collections::VecDeque;

use num_bigint::BigInt;
use thiserror::Error;

use crate::fpcore::{FpError, Letter, Presentation, Word};
use crate::perm::Permutation;
use crate::snf::IntMatrix;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CosetError {
    #[error(
        "enumeration did not close within limits ({cosets} cosets defined, {steps} steps); \
         raise the limits or the index may be infinite"
    )]
    LimitExceeded { cosets: usize, steps: u64 },
    #[error("bad subgroup word: {0}")]
    BadWord(#[from] FpError),
    #[error("coset {0} is not a live coset")]
    NoSuchCoset(usize),
    #[error("limits must be positive")]
    BadLimits,
}

/// Caps on table size and work.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationLimits {
    pub max_cosets: usize,
    pub max_steps: u64,
}

impl EnumerationLimits {
    pub const DEFAULT_MAX_COSETS: usize = 1 << 20;
    pub const DEFAULT_MAX_STEPS: u64 = 100_000_000;

    pub fn new(max_cosets: usize, max_steps: u64) -> Result<Self, CosetError> {
        if max_cosets == 0 || max_steps == 0 {
            return Err(CosetError::BadLimits);
        }
        Ok(EnumerationLimits {
            max_cosets,
            max_steps,
        })
    }
}

impl Default for EnumerationLimits {
    fn default() -> Self {
        EnumerationLimits {
            max_cosets: Self::DEFAULT_MAX_COSETS,
            max_steps: Self::DEFAULT_MAX_STEPS,
        }
    }
}

const UNDEF: u32 = u32::MAX;

/// A complete coset table: the action of every generator and inverse on the
/// cosets `0..n_live`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetTable {
    n_gens: usize,
    n_live: usize,
    action: Vec<u32>,
    subgroup: Vec<Word>,
}

impl CosetTable {
    pub fn n_live(&self) -> usize {
        self.n_live
    }

    /// The index of the subgroup.
    pub fn index(&self) -> usize {
        self.n_live
    }

    pub fn n_gens(&self) -> usize {
        self.n_gens
    }

    pub fn subgroup(&self) -> &[Word] {
        &self.subgroup
    }

    #[inline]
    pub fn act(&self, coset: usize, l: Letter) -> usize {
        self.action[coset * 2 * self.n_gens + l.column()] as usize
    }

    /// Image of `start` under `w`.
    pub fn trace(&self, start: usize, w: &Word) -> Result<usize, CosetError> {
        if start >= self.n_live {
            return Err(CosetError::NoSuchCoset(start));
        }
        if let Some(g) = w.max_generator() {
            if g >= self.n_gens {
                return Err(FpError::BadGenerator {
                    index: g,
                    size: self.n_gens,
                }
                .into());
            }
        }
        Ok(w.letters().iter().fold(start, |c, &l| self.act(c, l)))
    }

    /// One permutation per generator.
    pub fn coset_action(&self) -> Vec<Permutation> {
        (0..self.n_gens)
            .map(|g| {
                let images = (0..self.n_live)
                    .map(|c| self.act(c, Letter::pos(g)) as u32)
                    .collect();
                Permutation::from_images_unchecked(images)
            })
            .collect()
    }

    /// True iff every subgroup generator fixes every coset, i.e. the subgroup
    /// is the kernel of the coset action and hence normal.
    pub fn is_normal(&self, subgroup: &[Word]) -> Result<bool, CosetError> {
        for w in subgroup {
            for c in 0..self.n_live {
                if self.trace(c, w)? != c {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Breadth-first spanning tree: `(parent, letter)` for every coset but 0.
    fn spanning_tree(&self) -> Vec<Option<(usize, Letter)>> {
        let mut tree: Vec<Option<(usize, Letter)>> = vec![None; self.n_live];
        let mut seen = vec![false; self.n_live];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(c) = queue.pop_front() {
            for col in 0..2 * self.n_gens {
                let l = Letter::new(col / 2, col % 2 == 1);
                let d = self.act(c, l);
                if !seen[d] {
                    seen[d] = true;
                    tree[d] = Some((c, l));
                    queue.push_back(d);
                }
            }
        }
        tree
    }

    /// Prefix-closed coset representatives; `reps[c]` leads coset 0 to `c`.
    pub fn schreier_transversal(&self) -> Vec<Word> {
        let tree = self.spanning_tree();
        let mut reps: Vec<Option<Word>> = vec![None; self.n_live];
        reps[0] = Some(Word::identity());
        fn rep_of(c: usize, tree: &[Option<(usize, Letter)>], reps: &mut [Option<Word>]) -> Word {
            if let Some(w) = &reps[c] {
                return w.clone();
            }
            let (p, l) = tree[c].expect("table is connected");
            let w = rep_of(p, tree, reps).mul(&Word::new([l]));
            reps[c] = Some(w.clone());
            w
        }
        (0..self.n_live)
            .map(|c| rep_of(c, &tree, &mut reps))
            .collect()
    }

    /// Abelianized Reidemeister-Schreier relation matrix of the subgroup.
    ///
    /// Columns are the Schreier generators `s(c, g) = rep(c) g rep(c g)⁻¹`
    /// for table edges `(c, g)` outside the spanning tree, ordered by coset
    /// then generator. Row `(c, r)` is the exponent-sum vector of relator
    /// `r` rewritten from coset `c`.
    pub fn abelianized_subgroup_relations(&self, p: &Presentation) -> IntMatrix {
        let tree = self.spanning_tree();
        let ng = self.n_gens;
        let mut column = vec![usize::MAX; self.n_live * ng];
        let mut n_cols = 0;
        for c in 0..self.n_live {
            for g in 0..ng {
                let d = self.act(c, Letter::pos(g));
                let is_tree = matches!(tree[d], Some((pc, l)) if pc == c && l == Letter::pos(g))
                    || matches!(tree[c], Some((pd, l)) if pd == d && l == Letter::neg(g));
                if !is_tree {
                    column[c * ng + g] = n_cols;
                    n_cols += 1;
                }
            }
        }
        let mut rows = Vec::with_capacity(self.n_live * p.relators().len());
        for c in 0..self.n_live {
            for r in p.relators() {
                let mut entries: Vec<(usize, i64)> = Vec::new();
                let mut cur = c;
                for &l in r.letters() {
                    let (src, sign) = if l.inverse {
                        (self.act(cur, l), -1)
                    } else {
                        (cur, 1)
                    };
                    let col = column[src * ng + l.gen];
                    if col != usize::MAX {
                        entries.push((col, sign));
                    }
                    cur = self.act(cur, l);
                }
                entries.sort_unstable();
                let mut merged: Vec<(usize, BigInt)> = Vec::new();
                for (col, v) in entries {
                    match merged.last_mut() {
                        Some((c2, acc)) if *c2 == col => *acc += v,
                        _ => merged.push((col, BigInt::from(v))),
                    }
                }
                merged.retain(|(_, v)| v != &BigInt::from(0));
                rows.push(merged);
            }
        }
        IntMatrix::from_sparse_rows(n_cols, rows)
    }
}

/// Enumerates the cosets of `⟨subgroup⟩` in the group presented by `p`.
pub fn enumerate(
    p: &Presentation,
    subgroup: &[Word],
    limits: EnumerationLimits,
) -> Result<CosetTable, CosetError> {
    for w in subgroup {
        p.check_word(w)?;
    }
    Enumerator::new(p, limits).run(subgroup)
}

struct Enumerator {
    n_cols: usize,
    table: Vec<u32>,
    forward: Vec<u32>,
    n_defined: usize,
    relators: Vec<Vec<u32>>,
    /// Cyclic conjugates of relators and their inverses, grouped by first column.
    conjugates: Vec<Vec<Vec<u32>>>,
    deductions: VecDeque<(u32, u32)>,
    merge_queue: Vec<u32>,
    limits: EnumerationLimits,
    steps: u64,
}

#[inline]
fn inv_col(c: u32) -> u32 {
    c ^ 1
}

impl Enumerator {
    fn new(p: &Presentation, limits: EnumerationLimits) -> Self {
        let n_cols = 2 * p.n_gens();
        let relators: Vec<Vec<u32>> = p
            .relators()
            .iter()
            .map(|r| r.cyclically_reduced())
            .filter(|r| !r.is_empty())
            .map(|r| r.letters().iter().map(|l| l.column() as u32).collect())
            .collect();
        let mut conjugates: Vec<Vec<Vec<u32>>> = vec![Vec::new(); n_cols];
        for r in &relators {
            let inv: Vec<u32> = r.iter().rev().map(|&c| inv_col(c)).collect();
            for w in [r, &inv] {
                for k in 0..w.len() {
                    let rot: Vec<u32> = w[k..].iter().chain(w[..k].iter()).copied().collect();
                    let bucket = &mut conjugates[rot[0] as usize];
                    if !bucket.contains(&rot) {
                        bucket.push(rot);
                    }
                }
            }
        }
        let mut e = Enumerator {
            n_cols,
            table: Vec::new(),
            forward: Vec::new(),
            n_defined: 0,
            relators,
            conjugates,
            deductions: VecDeque::new(),
            merge_queue: Vec::new(),
            limits,
            steps: 0,
        };
        e.new_coset();
        e
    }

    fn limit_error(&self) -> CosetError {
        CosetError::LimitExceeded {
            cosets: self.n_defined,
            steps: self.steps,
        }
    }

    fn new_coset(&mut self) -> u32 {
        let c = self.n_defined as u32;
        self.table.extend(std::iter::repeat_n(UNDEF, self.n_cols));
        self.forward.push(c);
        self.n_defined += 1;
        c
    }

    #[inline]
    fn get(&self, c: u32, col: u32) -> u32 {
        self.table[c as usize * self.n_cols + col as usize]
    }

    #[inline]
    fn set(&mut self, c: u32, col: u32, d: u32) {
        self.table[c as usize * self.n_cols + col as usize] = d;
    }

    #[inline]
    fn is_live(&self, c: u32) -> bool {
        self.forward[c as usize] == c
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut r = c;
        while self.forward[r as usize] != r {
            r = self.forward[r as usize];
        }
        let mut x = c;
        while self.forward[x as usize] != r {
            let next = self.forward[x as usize];
            self.forward[x as usize] = r;
            x = next;
        }
        r
    }

    fn define(&mut self, c: u32, col: u32) -> Result<u32, CosetError> {
        if self.n_defined >= self.limits.max_cosets {
            return Err(self.limit_error());
        }
        let d = self.new_coset();
        self.set(c, col, d);
        self.set(d, inv_col(col), c);
        self.deductions.push_back((c, col));
        Ok(d)
    }

    fn merge(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.rep(a), self.rep(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.forward[hi as usize] = lo;
            self.merge_queue.push(hi);
        }
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.merge_queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.merge_queue.len() {
            let dead = self.merge_queue[i];
            i += 1;
            for col in 0..self.n_cols as u32 {
                let d = self.get(dead, col);
                if d == UNDEF {
                    continue;
                }
                // The entry pointing back at the dead coset is moved over
                // to its representative below.
                if self.get(d, inv_col(col)) == dead {
                    self.set(d, inv_col(col), UNDEF);
                }
                let mu = self.rep(dead);
                let nu = self.rep(d);
                let mu_x = self.get(mu, col);
                if mu_x != UNDEF {
                    self.merge(nu, mu_x);
                } else {
                    let nu_xi = self.get(nu, inv_col(col));
                    if nu_xi != UNDEF {
                        self.merge(mu, nu_xi);
                    } else {
                        self.set(mu, col, nu);
                        self.set(nu, inv_col(col), mu);
                        self.deductions.push_back((mu, col));
                    }
                }
            }
        }
    }

    /// Scans `w` from coset `c` in both directions; closes a single gap as a
    /// deduction and reports collisions as coincidences. Never defines.
    fn scan(&mut self, c: u32, w_idx: (usize, usize)) {
        self.steps += 1;
        let w = &self.conjugates[w_idx.0][w_idx.1];
        let n = w.len();
        let mut f = c;
        let mut i = 0;
        while i < n {
            let next = self.table[f as usize * self.n_cols + w[i] as usize];
            if next == UNDEF {
                break;
            }
            f = next;
            i += 1;
        }
        if i == n {
            if f != c {
                self.coincidence(f, c);
            }
            return;
        }
        let mut b = c;
        let mut j = n;
        while j > i {
            let prev = self.table[b as usize * self.n_cols + inv_col(w[j - 1]) as usize];
            if prev == UNDEF {
                break;
            }
            b = prev;
            j -= 1;
        }
        if j == i {
            self.coincidence(f, b);
        } else if j == i + 1 {
            let col = w[i];
            self.set(f, col, b);
            self.set(b, inv_col(col), f);
            self.deductions.push_back((f, col));
        }
    }

    fn process_deductions(&mut self) -> Result<(), CosetError> {
        while let Some((c, col)) = self.deductions.pop_front() {
            if self.steps > self.limits.max_steps {
                return Err(self.limit_error());
            }
            if !self.is_live(c) {
                continue;
            }
            for k in 0..self.conjugates[col as usize].len() {
                if !self.is_live(c) {
                    break;
                }
                self.scan(c, (col as usize, k));
            }
            if !self.is_live(c) {
                continue;
            }
            let d = self.get(c, col);
            if d == UNDEF || !self.is_live(d) {
                continue;
            }
            let icol = inv_col(col);
            for k in 0..self.conjugates[icol as usize].len() {
                if !self.is_live(d) {
                    break;
                }
                self.scan(d, (icol as usize, k));
            }
        }
        Ok(())
    }

    /// Traces `w` from `c`, defining new cosets where the table has gaps,
    /// then closes the cycle.
    fn scan_and_fill(&mut self, c: u32, w: &[u32]) -> Result<(), CosetError> {
        loop {
            let n = w.len();
            let mut f = c;
            let mut i = 0;
            while i < n && self.get(f, w[i]) != UNDEF {
                f = self.get(f, w[i]);
                i += 1;
            }
            if i == n {
                if f != c {
                    self.coincidence(f, c);
                }
                return Ok(());
            }
            let mut b = c;
            let mut j = n;
            while j > i && self.get(b, inv_col(w[j - 1])) != UNDEF {
                b = self.get(b, inv_col(w[j - 1]));
                j -= 1;
            }
            if j == i {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i + 1 {
                self.set(f, w[i], b);
                self.set(b, inv_col(w[i]), f);
                self.deductions.push_back((f, w[i]));
                return Ok(());
            }
            self.define(f, w[i])?;
            self.steps += 1;
            if self.steps > self.limits.max_steps {
                return Err(self.limit_error());
            }
        }
    }

    fn first_gap(&self, from: u32) -> Option<(u32, u32)> {
        for c in from..self.n_defined as u32 {
            if !self.is_live(c) {
                continue;
            }
            for col in 0..self.n_cols as u32 {
                if self.get(c, col) == UNDEF {
                    return Some((c, col));
                }
            }
        }
        None
    }

    /// Scans every relator from every live coset; returns false if anything
    /// changed.
    fn verify_closed(&mut self) -> bool {
        let mut clean = true;
        for c in 0..self.n_defined as u32 {
            for r in 0..self.relators.len() {
                if !self.is_live(c) {
                    break;
                }
                self.steps += 1;
                let mut f = c;
                for &col in &self.relators[r] {
                    f = self.get(f, col);
                    if f == UNDEF {
                        break;
                    }
                }
                if f == UNDEF {
                    clean = false;
                } else if f != c {
                    clean = false;
                    self.coincidence(f, c);
                }
            }
        }
        clean
    }

    fn run(mut self, subgroup: &[Word]) -> Result<CosetTable, CosetError> {
        let sub_cols: Vec<Vec<u32>> = subgroup
            .iter()
            .map(|w| w.letters().iter().map(|l| l.column() as u32).collect())
            .collect();
        for w in &sub_cols {
            if !w.is_empty() {
                self.scan_and_fill(0, w)?;
                self.process_deductions()?;
            }
        }
        let mut cursor = 0u32;
        loop {
            match self.first_gap(cursor) {
                Some((c, col)) => {
                    cursor = c;
                    self.define(c, col)?;
                    self.process_deductions()?;
                }
                None => {
                    // Coincidences can reopen entries below the cursor.
                    if let Some((c, _)) = self.first_gap(0) {
                        cursor = c;
                        continue;
                    }
                    let mut subgroup_ok = true;
                    for w in &sub_cols {
                        let mut f = 0u32;
                        for &col in w {
                            f = self.get(f, col);
                        }
                        if f != 0 {
                            subgroup_ok = false;
                            self.coincidence(f, 0);
                        }
                    }
                    if self.verify_closed() && subgroup_ok {
                        break;
                    }
                    self.process_deductions()?;
                    cursor = 0;
                }
            }
            if self.steps > self.limits.max_steps {
                return Err(self.limit_error());
            }
        }
        Ok(self.compact(subgroup))
    }

    fn compact(self, subgroup: &[Word]) -> CosetTable {
        let mut new_index = vec![UNDEF; self.n_defined];
        let mut n_live = 0u32;
        for (c, slot) in new_index.iter_mut().enumerate() {
            if self.forward[c] as usize == c {
                *slot = n_live;
                n_live += 1;
            }
        }
        let mut action = Vec::with_capacity(n_live as usize * self.n_cols);
        for c in 0..self.n_defined {
            if self.forward[c] as usize != c {
                continue;
            }
            for col in 0..self.n_cols {
                action.push(new_index[self.table[c * self.n_cols + col] as usize]);
            }
        }
        CosetTable {
            n_gens: self.n_cols / 2,
            n_live: n_live as usize,
            action,
            subgroup: subgroup.to_vec(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::PermutationGroup;

    fn pres(names: &[&str], rels: Vec<Word>) -> Presentation {
        Presentation::new(names.iter().map(|s| s.to_string()).collect(), rels).unwrap()
    }

    fn z(n: i64) -> Presentation {
        pres(&["a"], vec![Word::gen(0).pow(n)])
    }

    fn dihedral(k: i64) -> Presentation {
        pres(
            &["a", "b"],
            vec![
                Word::gen(0).pow(2),
                Word::gen(1).pow(2),
                Word::from_gens(&[0, 1]).pow(k),
            ],
        )
    }

    #[test]
    fn cyclic_groups() {
        let t = enumerate(&z(2), &[], EnumerationLimits::default()).unwrap();
        assert_eq!(t.n_live(), 2);
        let perms = t.coset_action();
        assert_eq!(perms[0].to_string(), "(1 2)");
        assert_eq!(
            enumerate(&z(7), &[], EnumerationLimits::default())
                .unwrap()
                .index(),
            7
        );
    }

    #[test]
    fn dihedral_action() {
        let t = enumerate(&dihedral(3), &[], EnumerationLimits::default()).unwrap();
        assert_eq!(t.index(), 6);
        let g = PermutationGroup::new(6, t.coset_action()).unwrap();
        assert_eq!(g.order(), 6);
        assert!(g.is_transitive());
    }

    #[test]
    fn subgroup_index() {
        let d = dihedral(5);
        let t = enumerate(&d, &[Word::gen(0)], EnumerationLimits::default()).unwrap();
        assert_eq!(t.index(), 5);
        assert_eq!(t.trace(0, &Word::gen(0)).unwrap(), 0);
        assert!(!t.is_normal(&[Word::gen(0)]).unwrap());
        let rot = Word::from_gens(&[0, 1]);
        let t = enumerate(&d, std::slice::from_ref(&rot), EnumerationLimits::default()).unwrap();
        assert_eq!(t.index(), 2);
        assert!(t.is_normal(&[rot]).unwrap());
    }

    #[test]
    fn whole_group_subgroup() {
        let t = enumerate(&z(4), &[Word::gen(0)], EnumerationLimits::default()).unwrap();
        assert_eq!(t.index(), 1);
        let m = t.abelianized_subgroup_relations(&z(4));
        assert_eq!(crate::snf::smith_normal_form(&m), vec![BigInt::from(4)]);
    }

    #[test]
    fn trace_and_transversal() {
        let d = dihedral(4);
        let t = enumerate(&d, &[], EnumerationLimits::default()).unwrap();
        let reps = t.schreier_transversal();
        assert_eq!(reps.len(), t.index());
        assert!(reps[0].is_empty());
        for (c, w) in reps.iter().enumerate() {
            assert_eq!(t.trace(0, w).unwrap(), c);
        }
        for c in 0..t.index() {
            assert_eq!(t.trace(c, &Word::identity()).unwrap(), c);
            for r in d.relators() {
                assert_eq!(t.trace(c, r).unwrap(), c);
            }
        }
        assert!(matches!(
            t.trace(99, &Word::identity()),
            Err(CosetError::NoSuchCoset(99))
        ));
    }

    #[test]
    fn z2_transversal() {
        let t = enumerate(&z(2), &[], EnumerationLimits::default()).unwrap();
        assert_eq!(
            t.schreier_transversal(),
            vec![Word::identity(), Word::gen(0)]
        );
    }

    #[test]
    fn infinite_index_hits_limits() {
        let free = pres(&["a", "b"], vec![]);
        let lim = EnumerationLimits::new(1000, 1_000_000).unwrap();
        assert!(matches!(
            enumerate(&free, &[], lim),
            Err(CosetError::LimitExceeded { .. })
        ));
    }

    #[test]
    fn bad_subgroup_word() {
        let r = enumerate(&z(3), &[Word::gen(2)], EnumerationLimits::default());
        assert!(matches!(r, Err(CosetError::BadWord(_))));
        assert!(EnumerationLimits::new(0, 1).is_err());
    }

    #[test]
    fn deterministic() {
        let d = dihedral(6);
        let a = enumerate(&d, &[], EnumerationLimits::default()).unwrap();
        let b = enumerate(&d, &[], EnumerationLimits::default()).unwrap();
        assert_eq!(a, b);
    }
}

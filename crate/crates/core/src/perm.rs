//! Permutations and permutation groups.
//!
//! Points are `0..degree`. Permutations act on the right: `p.then(q)` maps
//! `x` to `q(p(x))`, so words evaluate left to right like coset tables.
//! Cycle notation (parsing and display) numbers points from 1.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_integer::Integer;
use thiserror::Error;

use crate::fpcore::Word;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("image list is not a bijection on 0..{0}")]
    NotBijection(usize),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("subgroup has more than {cap} elements")]
    CapExceeded { cap: usize },
    #[error("word uses generator {index} but only {available} permutations are given")]
    MissingGenerator { index: usize, available: usize },
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(PermError::NotBijection(n));
            }
            seen[i] = true;
        }
        Ok(Permutation {
            images: images.into_iter().map(|i| i as u32).collect(),
        })
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        Permutation { images }
    }

    /// Builds a permutation from cycles written with points numbered from 1.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self, PermError> {
        let mut images: Vec<usize> = (0..degree).collect();
        for cyc in cycles {
            for (i, &p) in cyc.iter().enumerate() {
                let q = cyc[(i + 1) % cyc.len()];
                if p == 0 || p > degree || q == 0 || q > degree {
                    return Err(PermError::NotBijection(degree));
                }
                images[p - 1] = q - 1;
            }
        }
        Permutation::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    pub fn images(&self) -> impl Iterator<Item = usize> + '_ {
        self.images.iter().map(|&i| i as usize)
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self
                .images
                .iter()
                .map(|&i| other.images[i as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    pub fn pow(&self, e: i64) -> Permutation {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut acc = Permutation::identity(self.degree());
        let mut sq = base;
        let mut n = e.unsigned_abs();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.then(&sq);
            }
            sq = sq.then(&sq);
            n >>= 1;
        }
        acc
    }

    /// `c⁻¹ · self · c`.
    pub fn conjugate_by(&self, c: &Permutation) -> Permutation {
        c.inverse().then(self).then(c)
    }

    /// `[self, other] = self⁻¹ other⁻¹ self other`.
    pub fn commutator(&self, other: &Permutation) -> Permutation {
        self.inverse().then(&other.inverse()).then(self).then(other)
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    pub fn first_moved(&self) -> Option<usize> {
        self.images
            .iter()
            .enumerate()
            .find(|(i, &j)| *i as u32 != j)
            .map(|(i, _)| i)
    }

    pub fn commutes_with(&self, other: &Permutation) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &j)| other.images[j as usize] == self.images[other.images[i] as usize])
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cyc = vec![start];
            seen[start] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x] = true;
                cyc.push(x);
                x = self.apply(x);
            }
            out.push(cyc);
        }
        out
    }

    /// Order as the lcm of cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| acc.lcm(&(c.len() as u64)))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        for c in self.cycles() {
            if c.len() > 1 {
                any = true;
                let pts: Vec<String> = c.iter().map(|p| (p + 1).to_string()).collect();
                write!(f, "({})", pts.join(" "))?;
            }
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

/// Evaluates a word on a list of generator images.
pub fn evaluate(
    word: &Word,
    gens: &[Permutation],
    degree: usize,
) -> Result<Permutation, PermError> {
    let mut images: Vec<u32> = (0..degree as u32).collect();
    let mut inverses: Vec<Option<Permutation>> = vec![None; gens.len()];
    for l in word.letters() {
        let g = gens.get(l.gen).ok_or(PermError::MissingGenerator {
            index: l.gen,
            available: gens.len(),
        })?;
        if g.degree() != degree {
            return Err(PermError::DegreeMismatch(g.degree(), degree));
        }
        let p = if l.inverse {
            inverses[l.gen].get_or_insert_with(|| g.inverse())
        } else {
            g
        };
        for x in images.iter_mut() {
            *x = p.images[*x as usize];
        }
    }
    Ok(Permutation { images })
}

const NONE: u32 = u32::MAX;

/// One level of a stabilizer chain: the basic orbit of `point` under the
/// strong generators fixing all earlier base points, stored as a Schreier
/// tree.
#[derive(Debug, Clone)]
struct Level {
    point: usize,
    gens: Vec<usize>,
    orbit: Vec<usize>,
    via: Vec<u32>,
    parent: Vec<u32>,
}

impl Level {
    fn new(point: usize, degree: usize) -> Self {
        Level {
            point,
            gens: Vec::new(),
            orbit: Vec::new(),
            via: vec![NONE; degree],
            parent: vec![NONE; degree],
        }
    }

    fn rebuild_orbit(&mut self, strong: &[Permutation]) {
        self.via.iter_mut().for_each(|v| *v = NONE);
        self.parent.iter_mut().for_each(|v| *v = NONE);
        self.orbit.clear();
        self.orbit.push(self.point);
        self.via[self.point] = NONE - 1;
        let mut head = 0;
        while head < self.orbit.len() {
            let p = self.orbit[head];
            head += 1;
            for &g in &self.gens {
                let q = strong[g].apply(p);
                if self.via[q] == NONE {
                    self.via[q] = g as u32;
                    self.parent[q] = p as u32;
                    self.orbit.push(q);
                }
            }
        }
    }

    #[inline]
    fn contains(&self, p: usize) -> bool {
        self.via[p] != NONE
    }

    /// Letters of `u_p⁻¹` where `point^{u_p} = p`, in application order.
    fn push_inverse_path(&self, mut p: usize, out: &mut Vec<(usize, bool)>) {
        while p != self.point {
            out.push((self.via[p] as usize, true));
            p = self.parent[p] as usize;
        }
    }

    fn push_path(&self, p: usize, out: &mut Vec<(usize, bool)>) {
        let start = out.len();
        self.push_inverse_path(p, out);
        out[start..].reverse();
        for l in &mut out[start..] {
            l.1 = false;
        }
    }
}

/// A base and strong generating set.
#[derive(Debug, Clone)]
pub struct StabilizerChain {
    degree: usize,
    strong: Vec<Permutation>,
    strong_inv: Vec<Permutation>,
    levels: Vec<Level>,
}

/// An element as an optional explicit head followed by strong generator
/// letters; evaluated pointwise so sifting never multiplies full permutations.
struct LazyElem<'a> {
    head: Option<&'a Permutation>,
    tail: Vec<(usize, bool)>,
}

impl StabilizerChain {
    /// Deterministic Schreier-Sims.
    ///
    /// `base_hint`, when given, must be a base of some group containing all
    /// `gens`; elements then need only be checked on it. `order_bound`,
    /// when given, must be an upper bound on the group order; construction
    /// stops once the basic orbits reach it.
    fn build(
        degree: usize,
        gens: &[Permutation],
        base_hint: Option<&[usize]>,
        order_bound: Option<u128>,
    ) -> Self {
        let mut strong: Vec<Permutation> = Vec::new();
        for g in gens {
            if !g.is_identity() && !strong.contains(g) {
                strong.push(g.clone());
            }
        }
        let strong_inv = strong.iter().map(Permutation::inverse).collect();
        let mut chain = StabilizerChain {
            degree,
            strong,
            strong_inv,
            levels: Vec::new(),
        };

        match base_hint {
            Some(base) => {
                for &b in base {
                    chain.levels.push(Level::new(b, degree));
                }
            }
            None => {
                for gi in 0..chain.strong.len() {
                    let g = &chain.strong[gi];
                    if chain.levels.iter().all(|l| g.apply(l.point) == l.point) {
                        let p = g.first_moved().expect("identity filtered");
                        chain.levels.push(Level::new(p, degree));
                    }
                }
            }
        }
        for li in 0..chain.levels.len() {
            let fixed: Vec<usize> = chain.levels[..li].iter().map(|l| l.point).collect();
            let gens: Vec<usize> = (0..chain.strong.len())
                .filter(|&g| fixed.iter().all(|&b| chain.strong[g].apply(b) == b))
                .collect();
            chain.levels[li].gens = gens;
            chain.levels[li].rebuild_orbit(&chain.strong);
        }

        let hinted = base_hint.is_some();
        if chain.levels.is_empty() {
            return chain;
        }
        let mut i = chain.levels.len() - 1;
        'outer: loop {
            if let Some(b) = order_bound {
                if chain.order() >= b {
                    break;
                }
            }
            let k = chain.levels.len();
            // Under a base hint, Schreier generators of the deepest level
            // fix every base point and are therefore trivial.
            if !(hinted && i == k - 1) {
                let level = &chain.levels[i];
                for oi in 0..level.orbit.len() {
                    let beta = level.orbit[oi];
                    for gi in 0..level.gens.len() {
                        let s = level.gens[gi];
                        let image = chain.strong[s].apply(beta);
                        if level.parent[image] == beta as u32 && level.via[image] == s as u32 {
                            continue;
                        }
                        let mut tail = Vec::new();
                        level.push_path(beta, &mut tail);
                        tail.push((s, false));
                        level.push_inverse_path(image, &mut tail);
                        let elem = LazyElem { head: None, tail };
                        let (elem, j) = chain.sift(elem, i + 1);
                        let moved = if j < k {
                            Some(chain.levels[j].point)
                        } else if hinted {
                            None
                        } else {
                            chain.first_moved_lazy(&elem)
                        };
                        if let Some(p) = moved {
                            let h = chain.materialize(&elem);
                            chain.add_strong(h, i + 1, j, (j == k).then_some(p));
                            i = j.min(chain.levels.len() - 1);
                            continue 'outer;
                        }
                    }
                }
            }
            if i == 0 {
                break;
            }
            i -= 1;
        }
        chain
    }

    fn add_strong(&mut self, h: Permutation, from: usize, to: usize, new_point: Option<usize>) {
        let idx = self.strong.len();
        self.strong_inv.push(h.inverse());
        self.strong.push(h);
        if let Some(p) = new_point {
            let moved = self.strong[idx].first_moved().unwrap_or(p);
            self.levels.push(Level::new(moved, self.degree));
        }
        let last = to.min(self.levels.len() - 1);
        for l in from..=last {
            self.levels[l].gens.push(idx);
            self.levels[l].rebuild_orbit(&self.strong);
        }
    }

    #[inline]
    fn eval(&self, e: &LazyElem<'_>, p: usize) -> usize {
        let mut x = match e.head {
            Some(h) => h.apply(p),
            None => p,
        };
        for &(g, inv) in &e.tail {
            x = if inv {
                self.strong_inv[g].apply(x)
            } else {
                self.strong[g].apply(x)
            };
        }
        x
    }

    /// Sifts from level `from`; returns the residue and the first level at
    /// which it fails (or `levels.len()` if it passes every level).
    fn sift<'a>(&self, mut e: LazyElem<'a>, from: usize) -> (LazyElem<'a>, usize) {
        for j in from..self.levels.len() {
            let level = &self.levels[j];
            let p = self.eval(&e, level.point);
            if !level.contains(p) {
                return (e, j);
            }
            level.push_inverse_path(p, &mut e.tail);
        }
        let k = self.levels.len();
        (e, k)
    }

    fn first_moved_lazy(&self, e: &LazyElem<'_>) -> Option<usize> {
        (0..self.degree).find(|&p| self.eval(e, p) != p)
    }

    fn materialize(&self, e: &LazyElem<'_>) -> Permutation {
        Permutation::from_images_unchecked(
            (0..self.degree).map(|p| self.eval(e, p) as u32).collect(),
        )
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.point).collect()
    }

    pub fn basic_orbit_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    /// Membership by sifting. With `trust_base` the element must be known
    /// to lie in a group for which this chain's base is a base.
    fn contains(&self, g: &Permutation, trust_base: bool) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (e, j) = self.sift(
            LazyElem {
                head: Some(g),
                tail: Vec::new(),
            },
            0,
        );
        if j < self.levels.len() {
            return false;
        }
        trust_base || self.first_moved_lazy(&e).is_none()
    }
}

/// A permutation group given by generators. The stabilizer chain is built on
/// first use and cached.
#[derive(Debug, Clone)]
pub struct PermutationGroup {
    degree: usize,
    generators: Vec<Permutation>,
    base_hint: Option<Arc<Vec<usize>>>,
    order_bound: Option<u128>,
    chain: OnceLock<StabilizerChain>,
}

impl PermutationGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self, PermError> {
        for g in &generators {
            if g.degree() != degree {
                return Err(PermError::DegreeMismatch(g.degree(), degree));
            }
        }
        Ok(PermutationGroup {
            degree,
            generators,
            base_hint: None,
            order_bound: None,
            chain: OnceLock::new(),
        })
    }

    /// Records an externally known upper bound on the order (for instance
    /// the index of a complete coset enumeration over the trivial subgroup).
    /// Schreier-Sims stops as soon as its lower bound meets it.
    pub fn with_order_bound(mut self, bound: u128) -> Self {
        self.order_bound = Some(bound);
        self.chain = OnceLock::new();
        self
    }

    /// Subgroup generated by elements of `self`. It reuses this group's base,
    /// which is a base of every subgroup.
    pub fn subgroup(&self, generators: Vec<Permutation>) -> Result<Self, PermError> {
        let mut h = PermutationGroup::new(self.degree, generators)?;
        h.base_hint = Some(Arc::new(self.chain().base()));
        Ok(h)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn chain(&self) -> &StabilizerChain {
        self.chain.get_or_init(|| {
            StabilizerChain::build(
                self.degree,
                &self.generators,
                self.base_hint.as_deref().map(|v| v.as_slice()),
                self.order_bound,
            )
        })
    }

    pub fn order(&self) -> u128 {
        self.chain().order()
    }

    /// Membership of an arbitrary permutation.
    pub fn contains(&self, g: &Permutation) -> bool {
        self.chain().contains(g, false)
    }

    /// Membership of an element already known to lie in an overgroup whose
    /// base this group shares.
    fn contains_ambient(&self, g: &Permutation) -> bool {
        self.chain().contains(g, self.base_hint.is_some())
    }

    pub fn evaluate(&self, w: &Word) -> Result<Permutation, PermError> {
        evaluate(w, &self.generators, self.degree)
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.generators;
        (0..g.len()).all(|i| (i + 1..g.len()).all(|j| g[i].commutes_with(&g[j])))
    }

    pub fn is_transitive(&self) -> bool {
        if self.degree == 0 {
            return true;
        }
        let mut seen = vec![false; self.degree];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        let mut count = 1;
        while let Some(p) = queue.pop_front() {
            for g in &self.generators {
                let q = g.apply(p);
                if !seen[q] {
                    seen[q] = true;
                    count += 1;
                    queue.push_back(q);
                }
            }
        }
        count == self.degree
    }
}

/// Exact group order from the stabilizer chain.
pub fn group_order(g: &PermutationGroup) -> u128 {
    g.order()
}

/// Order of the image of `w`.
pub fn element_order(g: &PermutationGroup, w: &Word) -> Result<u64, PermError> {
    Ok(g.evaluate(w)?.order())
}

pub type ElementSet = HashSet<Permutation>;

/// All elements of `⟨gens⟩` by breadth-first closure, refusing to grow past
/// `cap` elements.
pub fn subgroup_elements(
    degree: usize,
    gens: &[Permutation],
    cap: usize,
) -> Result<ElementSet, PermError> {
    let id = Permutation::identity(degree);
    let mut set = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.then(g);
            if !set.contains(&y) {
                if set.len() >= cap {
                    return Err(PermError::CapExceeded { cap });
                }
                set.insert(y.clone());
                queue.push_back(y);
            }
        }
    }
    Ok(set)
}

/// Elements of `⟨w : w ∈ words⟩` inside the group, evaluated on its generators.
pub fn subgroup_elements_of_words(
    g: &PermutationGroup,
    words: &[Word],
    cap: usize,
) -> Result<ElementSet, PermError> {
    let gens = words
        .iter()
        .map(|w| g.evaluate(w))
        .collect::<Result<Vec<_>, _>>()?;
    subgroup_elements(g.degree(), &gens, cap)
}

pub fn intersect_subgroups(a: &ElementSet, b: &ElementSet) -> ElementSet {
    let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    small
        .iter()
        .filter(|x| large.contains(*x))
        .cloned()
        .collect()
}

/// Smallest normal subgroup of `g` containing `seed`. Seed elements must
/// lie in `g`.
pub fn normal_closure(g: &PermutationGroup, seed: &[Permutation]) -> PermutationGroup {
    let mut gens: Vec<Permutation> = seed.iter().filter(|s| !s.is_identity()).cloned().collect();
    let mut h = g.subgroup(gens.clone()).expect("degrees checked by caller");
    let mut pending: VecDeque<Permutation> = gens.iter().cloned().collect();
    while let Some(x) = pending.pop_front() {
        for c in g.generators() {
            let y = x.conjugate_by(c);
            if !h.contains_ambient(&y) {
                gens.push(y.clone());
                pending.push_back(y);
                h = g.subgroup(gens.clone()).expect("same degree");
            }
        }
    }
    h
}

/// The derived subgroup `[g, g]` as a subgroup of `ambient` (whose base it
/// reuses). `g` must itself be a subgroup of `ambient`.
fn derived_subgroup_in(ambient: &PermutationGroup, g: &PermutationGroup) -> PermutationGroup {
    let gens = g.generators();
    let mut comms = Vec::new();
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            let c = gens[i].commutator(&gens[j]);
            if !c.is_identity() && !comms.contains(&c) {
                comms.push(c);
            }
        }
    }
    // Normal closure inside g, with membership tested through the ambient base.
    let mut h = ambient.subgroup(comms.clone()).expect("same degree");
    let mut pending: VecDeque<Permutation> = comms.iter().cloned().collect();
    while let Some(x) = pending.pop_front() {
        for c in gens {
            let y = x.conjugate_by(c);
            if !h.contains_ambient(&y) {
                comms.push(y.clone());
                pending.push_back(y);
                h = ambient.subgroup(comms.clone()).expect("same degree");
            }
        }
    }
    h
}

/// `G⁽⁰⁾ = G, G⁽ⁱ⁺¹⁾ = [G⁽ⁱ⁾, G⁽ⁱ⁾]`, stopping at the trivial group or as
/// soon as a term equals its predecessor (which is then not repeated).
pub fn derived_series(g: &PermutationGroup) -> Vec<PermutationGroup> {
    let mut series = vec![g.clone()];
    loop {
        let last = series.last().expect("nonempty");
        let order = last.order();
        if order == 1 {
            break;
        }
        let next = derived_subgroup_in(g, last);
        if next.order() == order {
            break;
        }
        series.push(next);
    }
    series
}

pub fn is_solvable(g: &PermutationGroup) -> bool {
    derived_series(g)
        .last()
        .map(|h| h.order() == 1)
        .unwrap_or(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(n: usize, cycles: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(n, cycles).unwrap()
    }

    fn s4() -> PermutationGroup {
        PermutationGroup::new(4, vec![cyc(4, &[&[1, 2]]), cyc(4, &[&[1, 2, 3, 4]])]).unwrap()
    }

    fn a5() -> PermutationGroup {
        PermutationGroup::new(5, vec![cyc(5, &[&[1, 2, 3, 4, 5]]), cyc(5, &[&[3, 4, 5]])]).unwrap()
    }

    #[test]
    fn permutation_basics() {
        let p = cyc(4, &[&[1, 2, 3]]);
        assert_eq!(p.apply(0), 1);
        assert_eq!(p.order(), 3);
        assert!(p.then(&p.inverse()).is_identity());
        assert_eq!(p.pow(3), Permutation::identity(4));
        assert_eq!(p.pow(-1), p.inverse());
        assert_eq!(p.to_string(), "(1 2 3)");
        assert!(Permutation::from_images(vec![0, 0]).is_err());
        let q = cyc(4, &[&[1, 2], &[3, 4]]);
        assert_eq!(q.order(), 2);
    }

    #[test]
    fn right_action_composition() {
        let a = cyc(3, &[&[1, 2]]);
        let b = cyc(3, &[&[2, 3]]);
        // 1 -a-> 2 -b-> 3
        assert_eq!(a.then(&b).apply(0), 2);
    }

    #[test]
    fn s4_order_and_series() {
        let g = s4();
        assert_eq!(group_order(&g), 24);
        let orders: Vec<u128> = derived_series(&g).iter().map(|h| h.order()).collect();
        assert_eq!(orders, vec![24, 12, 4, 1]);
        assert!(is_solvable(&g));
    }

    #[test]
    fn a5_is_not_solvable() {
        let g = a5();
        assert_eq!(g.order(), 60);
        assert!(!is_solvable(&g));
        assert_eq!(derived_series(&g).len(), 1);
    }

    #[test]
    fn abelian_series_has_length_two() {
        let g = PermutationGroup::new(4, vec![cyc(4, &[&[1, 2, 3, 4]])]).unwrap();
        let s = derived_series(&g);
        assert_eq!(s.len(), 2);
        assert_eq!(s[1].order(), 1);
    }

    #[test]
    fn trivial_group() {
        let g = PermutationGroup::new(3, vec![]).unwrap();
        assert_eq!(g.order(), 1);
        assert!(g.contains(&Permutation::identity(3)));
        assert!(!g.contains(&cyc(3, &[&[1, 2]])));
        assert!(is_solvable(&g));
    }

    #[test]
    fn membership() {
        let g = a5();
        assert!(g.contains(&cyc(5, &[&[1, 2, 3]])));
        assert!(!g.contains(&cyc(5, &[&[1, 2]])));
    }

    #[test]
    fn element_sets() {
        let g = s4();
        let e = subgroup_elements(4, &[], 5).unwrap();
        assert_eq!(e.len(), 1);
        let t = subgroup_elements(4, &g.generators()[..1], 5).unwrap();
        assert_eq!(t.len(), 2);
        let all = subgroup_elements(4, g.generators(), 100).unwrap();
        assert_eq!(all.len(), 24);
        assert_eq!(intersect_subgroups(&all, &all).len(), 24);
        assert!(matches!(
            subgroup_elements(4, g.generators(), 10),
            Err(PermError::CapExceeded { cap: 10 })
        ));
    }

    #[test]
    fn normal_closure_edges() {
        let g = s4();
        assert_eq!(normal_closure(&g, &[Permutation::identity(4)]).order(), 1);
        assert_eq!(normal_closure(&g, g.generators()).order(), 24);
        // The transposition generates all of S4 under conjugation closure.
        assert_eq!(normal_closure(&g, &[cyc(4, &[&[1, 2]])]).order(), 24);
        assert_eq!(
            normal_closure(&g, &[cyc(4, &[&[1, 2], &[3, 4]])]).order(),
            4
        );
    }

    #[test]
    fn order_bound_short_circuits() {
        // Regular action of the cyclic group of order 6.
        let c = cyc(6, &[&[1, 2, 3, 4, 5, 6]]);
        let g = PermutationGroup::new(6, vec![c])
            .unwrap()
            .with_order_bound(6);
        assert_eq!(g.order(), 6);
        assert_eq!(g.chain().base(), vec![0]);
    }
}

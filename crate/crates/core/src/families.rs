//! Presentations of the rank-3 families on generators `r0 r1 r2`.
//!
//! Relators are emitted in a fixed order: involutions, then the powers of
//! `r0 r1`, `r1 r2`, `r0 r2`, then commutator and extra relators, then the
//! family relators.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fpcore::{Presentation, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("bad parameter: {0}")]
    BadParam(String),
}

fn bad(msg: impl Into<String>) -> FamilyError {
    FamilyError::BadParam(msg.into())
}

pub const R0: usize = 0;
pub const R1: usize = 1;
pub const R2: usize = 2;

fn r(i: usize) -> Word {
    Word::gen(i)
}

fn w(gens: &[usize]) -> Word {
    Word::from_gens(gens)
}

fn rank3(relators: Vec<Word>) -> Presentation {
    Presentation::new(vec!["r0".into(), "r1".into(), "r2".into()], relators)
        .expect("fixed alphabet")
}

fn involutions() -> Vec<Word> {
    (0..3).map(|i| r(i).pow(2)).collect()
}

/// `r0², r1², r2², (r0 r1)^a, (r1 r2)^b, (r0 r2)²`.
fn string_relators(a: i64, b: i64) -> Vec<Word> {
    let mut v = involutions();
    v.push(w(&[R0, R1]).pow(a));
    v.push(w(&[R1, R2]).pow(b));
    v.push(w(&[R0, R2]).pow(2));
    v
}

/// The degenerate groups: variant 1 is `D_{2k} × C₂` with `(r0 r1)^k`,
/// variant 2 its dual with `(r1 r2)^k`.
pub fn build_degenerate(k: i64, variant: u8) -> Result<Presentation, FamilyError> {
    if k < 2 {
        return Err(bad(format!("k must be at least 2, got {k}")));
    }
    match variant {
        1 => Ok(rank3(string_relators(k, 2))),
        2 => Ok(rank3(string_relators(2, k))),
        _ => Err(bad(format!("variant must be 1 or 2, got {variant}"))),
    }
}

/// Type `{4,4}` groups of order `8b²` (variant 1, extra relator
/// `(r1 r0 r1 r2)^b`) and `16b²` (variant 2, `(r0 r1 r2)^{2b}`).
pub fn build_type44(b: i64, variant: u8) -> Result<Presentation, FamilyError> {
    if b < 2 {
        return Err(bad(format!("b must be at least 2, got {b}")));
    }
    let mut rels = string_relators(4, 4);
    match variant {
        1 => rels.push(w(&[R1, R0, R1, R2]).pow(b)),
        2 => rels.push(w(&[R0, R1, R2]).pow(2 * b)),
        _ => return Err(bad(format!("variant must be 1 or 2, got {variant}"))),
    }
    Ok(rank3(rels))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Type1Params {
    pub s: u32,
    pub t: u32,
    pub n: u32,
    pub l1: u32,
    pub l2: u32,
}

impl Type1Params {
    pub fn new(s: u32, t: u32, n: u32, l1: u32, l2: u32) -> Result<Self, FamilyError> {
        let p = Type1Params { s, t, n, l1, l2 };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<(), FamilyError> {
        if self.s < 2 {
            return Err(bad(format!("s must be at least 2, got {}", self.s)));
        }
        if self.t < 2 {
            return Err(bad(format!("t must be at least 2, got {}", self.t)));
        }
        if self.n < self.s + self.t + 1 {
            return Err(bad(format!(
                "n must be at least s + t + 1 = {}, got {}",
                self.s + self.t + 1,
                self.n
            )));
        }
        if self.l1.is_multiple_of(2) {
            return Err(bad(format!("l1 must be odd, got {}", self.l1)));
        }
        if self.l2.is_multiple_of(2) {
            return Err(bad(format!("l2 must be odd, got {}", self.l2)));
        }
        if self.n > 40 {
            return Err(bad(format!(
                "n = {} is beyond any enumerable order",
                self.n
            )));
        }
        Ok(())
    }

    pub fn k1(&self) -> u64 {
        (1u64 << self.s) * self.l1 as u64
    }

    pub fn k2(&self) -> u64 {
        (1u64 << self.t) * self.l2 as u64
    }

    /// `2ⁿ ℓ₁ ℓ₂`.
    pub fn expected_order(&self) -> u64 {
        (1u64 << self.n) * self.l1 as u64 * self.l2 as u64
    }
}

impl fmt::Display for Type1Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "s={} t={} n={} l1={} l2={}",
            self.s, self.t, self.n, self.l1, self.l2
        )
    }
}

/// The relator that fixes the 2-part of the order: depends on the parity of
/// `n - s - t`.
fn parity_relator(p: &Type1Params) -> Word {
    let d = p.n - p.s - p.t;
    let a = w(&[R0, R1]).pow(2);
    if d % 2 == 1 {
        a.commutator(&r(R2)).pow(1 << ((d - 1) / 2))
    } else {
        a.commutator(&w(&[R1, R2]).pow(2)).pow(1 << ((d - 2) / 2))
    }
}

fn type1_commutators() -> [Word; 2] {
    [
        w(&[R0, R1]).pow(4).commutator(&r(R2)),
        r(R0).commutator(&w(&[R1, R2]).pow(4)),
    ]
}

/// The group of order `2ⁿ ℓ₁ ℓ₂` and type `{2ˢℓ₁, 2ᵗℓ₂}`.
pub fn build_type1(p: &Type1Params) -> Result<Presentation, FamilyError> {
    p.validate()?;
    let mut rels = string_relators(p.k1() as i64, p.k2() as i64);
    rels.extend(type1_commutators());
    rels.push(parity_relator(p));
    Ok(rank3(rels))
}

/// The two intermediate quotients `G₁ = G/⟨(r0 r1)⁴⟩` and
/// `G₂ = G₁/⟨(r1 r2)⁴⟩`.
pub fn build_type1_chain(p: &Type1Params) -> Result<(Presentation, Presentation), FamilyError> {
    p.validate()?;
    let [_, c2] = type1_commutators();
    let mut g1 = string_relators(4, p.k2() as i64);
    g1.push(c2);
    g1.push(parity_relator(p));
    let mut g2 = string_relators(4, 4);
    g2.push(parity_relator(p));
    Ok((rank3(g1), rank3(g2)))
}

/// The infinite group `𝒰` of type `{6,6}` covering all three type-(2) families.
pub fn build_u() -> Presentation {
    let mut rels = string_relators(6, 6);
    rels.push(w(&[R2, R1, R0, R1]).pow(3));
    rank3(rels)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    G,
    H,
    I,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::G, Family::H, Family::I];

    /// Order of the `m = 1` member, i.e. the index of the subgroup in `𝒰`.
    pub fn base_order(self) -> u64 {
        match self {
            Family::G => 192,
            Family::H => 384,
            Family::I => 768,
        }
    }

    /// Order `base · m³`.
    pub fn expected_order(self, m: u32) -> u64 {
        self.base_order() * (m as u64).pow(3)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::G => "G",
            Family::H => "H",
            Family::I => "I",
        };
        f.write_str(s)
    }
}

impl FromStr for Family {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "G" => Ok(Family::G),
            "H" => Ok(Family::H),
            "I" => Ok(Family::I),
            _ => Err(bad(format!("unknown family `{s}` (expected G, H or I)"))),
        }
    }
}

/// One of the three generating words: `(inner^power)^conjugator`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugatedPower {
    pub inner: Word,
    pub power: i64,
    pub conjugator: Word,
}

impl ConjugatedPower {
    fn new(inner: Word, power: i64, conjugator: Word) -> Self {
        ConjugatedPower {
            inner,
            power,
            conjugator,
        }
    }

    /// Same word with the inner power multiplied by `m`.
    pub fn scaled(&self, m: i64) -> Word {
        self.inner.pow(self.power * m).conjugate(&self.conjugator)
    }

    pub fn word(&self) -> Word {
        self.scaled(1)
    }
}

/// The three generators of the normal subgroup `N`, `L` or `M` of `𝒰`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupSpec {
    pub family: Family,
    pub generators: [ConjugatedPower; 3],
}

impl SubgroupSpec {
    pub fn words(&self) -> Vec<Word> {
        self.generators.iter().map(ConjugatedPower::word).collect()
    }

    pub fn scaled_words(&self, m: i64) -> Vec<Word> {
        self.generators.iter().map(|g| g.scaled(m)).collect()
    }
}

pub fn subgroup_generators(family: Family) -> SubgroupSpec {
    let id = Word::identity();
    let generators = match family {
        Family::G => [
            ConjugatedPower::new(w(&[R0, R2, R1]), 4, r(R1)),
            ConjugatedPower::new(w(&[R2, R1, R0]), 4, id),
            ConjugatedPower::new(w(&[R2, R1, R0]), 4, r(R1)),
        ],
        Family::H => {
            let h = w(&[R1, R2]).pow(3).mul(&w(&[R0, R1]).pow(3));
            [
                ConjugatedPower::new(h.clone(), 2, w(&[R0, R1])),
                ConjugatedPower::new(h.clone(), 2, r(R2)),
                ConjugatedPower::new(h, 2, w(&[R2, R1])),
            ]
        }
        Family::I => [
            ConjugatedPower::new(w(&[R0, R1]).pow(2).mul(&w(&[R2, R1]).pow(2)), 3, r(R0)),
            ConjugatedPower::new(w(&[R1, R2]).pow(2).mul(&w(&[R1, R0]).pow(2)), 3, id),
            ConjugatedPower::new(w(&[R1, R0]).pow(2).mul(&w(&[R1, R2]).pow(2)), 3, r(R2)),
        ],
    };
    SubgroupSpec { family, generators }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Type2Params {
    pub family: Family,
    pub m: u32,
}

impl Type2Params {
    pub fn new(family: Family, m: u32) -> Result<Self, FamilyError> {
        if m == 0 {
            return Err(bad("m must be at least 1"));
        }
        Ok(Type2Params { family, m })
    }

    pub fn expected_order(&self) -> u64 {
        self.family.expected_order(self.m)
    }
}

/// `𝒰` plus the three `m`-th powers of the family's subgroup generators.
pub fn build_type2(p: &Type2Params) -> Result<Presentation, FamilyError> {
    if p.m == 0 {
        return Err(bad("m must be at least 1"));
    }
    let spec = subgroup_generators(p.family);
    let mut rels = build_u().relators().to_vec();
    rels.extend(spec.scaled_words(p.m as i64));
    Ok(rank3(rels))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpcore::Letter;

    #[test]
    fn degenerate_relators() {
        let p = build_degenerate(6, 1).unwrap();
        assert_eq!(p.relators().len(), 6);
        assert_eq!(p.relators()[3], w(&[0, 1]).pow(6));
        assert_eq!(p.relators()[4], w(&[1, 2]).pow(2));
        assert!(build_degenerate(1, 1).is_err());
        assert!(build_degenerate(3, 3).is_err());
    }

    #[test]
    fn type1_has_nine_relators() {
        let p = Type1Params::new(2, 2, 5, 3, 1).unwrap();
        let g = build_type1(&p).unwrap();
        assert_eq!(g.relators().len(), 9);
        assert_eq!(g.relators()[3], w(&[0, 1]).pow(12));
        assert_eq!(g.relators()[4], w(&[1, 2]).pow(4));
        // n - s - t = 1 is odd: [(r0 r1)², r2]^1.
        assert_eq!(g.relators()[8], w(&[0, 1]).pow(2).commutator(&r(2)));
        let (g1, g2) = build_type1_chain(&p).unwrap();
        assert_eq!(g1.relators().len(), 8);
        assert_eq!(g2.relators().len(), 7);
    }

    #[test]
    fn type1_param_validation() {
        assert!(Type1Params::new(1, 2, 5, 1, 1).is_err());
        assert!(Type1Params::new(2, 1, 5, 1, 1).is_err());
        assert!(Type1Params::new(2, 2, 4, 1, 1).is_err());
        assert!(Type1Params::new(2, 2, 5, 2, 1).is_err());
        assert!(Type1Params::new(2, 2, 5, 1, 4).is_err());
        let e = Type1Params::new(2, 2, 4, 1, 1).unwrap_err();
        assert!(e.to_string().contains("n must be at least"));
    }

    #[test]
    fn even_parity_relator() {
        let p = Type1Params::new(2, 2, 8, 1, 1).unwrap();
        let expected = w(&[0, 1]).pow(2).commutator(&w(&[1, 2]).pow(2)).pow(2);
        assert_eq!(build_type1(&p).unwrap().relators()[8], expected);
    }

    #[test]
    fn subgroup_words_match_table() {
        let g = subgroup_generators(Family::G).words();
        assert_eq!(g[1], w(&[2, 1, 0]).pow(4));
        assert_eq!(g[0], w(&[0, 2, 1]).pow(4).conjugate(&r(1)));
        assert_eq!(g[0].letters()[0], Letter::neg(1));
        let h = subgroup_generators(Family::H);
        let base = w(&[1, 2]).pow(3).mul(&w(&[0, 1]).pow(3)).pow(2);
        for g in &h.generators {
            assert_eq!(g.inner.pow(g.power), base);
        }
    }

    #[test]
    fn type2_scaling_is_structural() {
        for f in Family::ALL {
            let spec = subgroup_generators(f);
            let p2 = build_type2(&Type2Params::new(f, 2).unwrap()).unwrap();
            let p1 = build_type2(&Type2Params::new(f, 1).unwrap()).unwrap();
            assert_eq!(p1.relators().len(), 10);
            assert_eq!(&p2.relators()[..7], &p1.relators()[..7]);
            for (k, g) in spec.generators.iter().enumerate() {
                let expected = g.inner.pow(g.power * 2).conjugate(&g.conjugator);
                assert_eq!(p2.relators()[7 + k], expected);
                assert_eq!(p1.relators()[7 + k], g.word());
            }
        }
        assert!(Type2Params::new(Family::G, 0).is_err());
    }

    #[test]
    fn builders_are_pure() {
        let p = Type1Params::new(3, 2, 8, 5, 1).unwrap();
        assert_eq!(build_type1(&p).unwrap(), build_type1(&p).unwrap());
        assert_eq!(build_u(), build_u());
    }
}

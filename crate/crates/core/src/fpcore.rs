//! Words over a finite alphabet and finitely presented groups.
//!
//! Generators are addressed by index; names only appear at the text
//! boundary (see [`crate::text`]). Every constructor freely reduces.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FpError {
    #[error("generator index {index} out of range for alphabet of size {size}")]
    BadGenerator { index: usize, size: usize },
    #[error("duplicate generator name `{0}`")]
    DuplicateName(String),
    #[error("generator map has {got} images, expected {expected}")]
    MapArity { got: usize, expected: usize },
}

/// A generator or its formal inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: usize,
    pub inverse: bool,
}

impl Letter {
    pub const fn new(gen: usize, inverse: bool) -> Self {
        Letter { gen, inverse }
    }

    pub const fn pos(gen: usize) -> Self {
        Letter {
            gen,
            inverse: false,
        }
    }

    pub const fn neg(gen: usize) -> Self {
        Letter { gen, inverse: true }
    }

    pub fn inv(self) -> Self {
        Letter {
            gen: self.gen,
            inverse: !self.inverse,
        }
    }

    /// Column of this letter in a coset table: `2 * gen` for the generator,
    /// `2 * gen + 1` for its inverse.
    pub fn column(self) -> usize {
        2 * self.gen + self.inverse as usize
    }

    pub fn sign(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }
}

/// A freely reduced word in the free group.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    /// Builds a word and freely reduces it.
    pub fn new(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last() == Some(&l.inv()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    /// Word from `(generator, sign)` pairs; `sign < 0` means inverse.
    pub fn from_signed(pairs: &[(usize, i32)]) -> Self {
        Word::new(pairs.iter().map(|&(g, s)| Letter::new(g, s < 0)))
    }

    /// Positive word from generator indices, e.g. `[0, 1]` is `g0 g1`.
    pub fn from_gens(gens: &[usize]) -> Self {
        Word::new(gens.iter().map(|&g| Letter::pos(g)))
    }

    pub fn gen(g: usize) -> Self {
        Word(vec![Letter::pos(g)])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.0.iter().map(|l| l.gen).max()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    pub fn mul(&self, other: &Word) -> Word {
        Word::new(self.0.iter().chain(other.0.iter()).copied())
    }

    pub fn pow(&self, e: i64) -> Word {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let n = e.unsigned_abs() as usize;
        let mut letters = Vec::with_capacity(base.len() * n);
        for _ in 0..n {
            letters.extend_from_slice(&base.0);
        }
        Word::new(letters)
    }

    /// `c⁻¹ · self · c`.
    pub fn conjugate(&self, c: &Word) -> Word {
        c.inverse().mul(self).mul(c)
    }

    /// `[self, y] = self⁻¹ y⁻¹ self y`.
    pub fn commutator(&self, y: &Word) -> Word {
        self.inverse().mul(&y.inverse()).mul(self).mul(y)
    }

    /// Sum of exponents of each generator.
    pub fn exponent_sums(&self, n_gens: usize) -> Vec<i64> {
        let mut v = vec![0i64; n_gens];
        for l in &self.0 {
            v[l.gen] += l.sign();
        }
        v
    }

    /// Cyclically reduced form (strips matching inverse pairs from both ends).
    pub fn cyclically_reduced(&self) -> Word {
        let s = &self.0;
        let (mut i, mut j) = (0, s.len());
        while j - i >= 2 && s[i] == s[j - 1].inv() {
            i += 1;
            j -= 1;
        }
        Word(s[i..j].to_vec())
    }

    /// Substitutes each generator by a word.
    pub fn substitute(&self, images: &[Word]) -> Word {
        let mut letters = Vec::new();
        for l in &self.0 {
            let w = &images[l.gen];
            if l.inverse {
                letters.extend(w.inverse().0);
            } else {
                letters.extend_from_slice(&w.0);
            }
        }
        Word::new(letters)
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        self.0
            .iter()
            .map(|l| {
                if l.inverse {
                    format!("{}'", names[l.gen])
                } else {
                    names[l.gen].clone()
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "g{}{}", l.gen, if l.inverse { "'" } else { "" })?;
        }
        Ok(())
    }
}

/// Re-reduces a raw letter sequence. [`Word::new`] already does this; the
/// free function exists for callers holding plain letter slices.
pub fn free_reduce(letters: &[Letter]) -> Word {
    Word::new(letters.iter().copied())
}

/// A finitely presented group `⟨ names | relators ⟩`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Presentation {
    generator_names: Vec<String>,
    relators: Vec<Word>,
}

impl Presentation {
    /// Empty relators (after reduction) are dropped.
    pub fn new(
        generator_names: Vec<String>,
        relators: impl IntoIterator<Item = Word>,
    ) -> Result<Self, FpError> {
        for (i, n) in generator_names.iter().enumerate() {
            if generator_names[..i].contains(n) {
                return Err(FpError::DuplicateName(n.clone()));
            }
        }
        let size = generator_names.len();
        let mut rels = Vec::new();
        for r in relators {
            if let Some(g) = r.max_generator() {
                if g >= size {
                    return Err(FpError::BadGenerator { index: g, size });
                }
            }
            if !r.is_empty() {
                rels.push(r);
            }
        }
        Ok(Presentation {
            generator_names,
            relators: rels,
        })
    }

    pub fn n_gens(&self) -> usize {
        self.generator_names.len()
    }

    pub fn generator_names(&self) -> &[String] {
        &self.generator_names
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    /// Same group with additional relators.
    pub fn with_relators(&self, extra: impl IntoIterator<Item = Word>) -> Result<Self, FpError> {
        Presentation::new(
            self.generator_names.clone(),
            self.relators.iter().cloned().chain(extra),
        )
    }

    pub fn check_word(&self, w: &Word) -> Result<(), FpError> {
        match w.max_generator() {
            Some(g) if g >= self.n_gens() => Err(FpError::BadGenerator {
                index: g,
                size: self.n_gens(),
            }),
            _ => Ok(()),
        }
    }
}

/// Images of the generators of a source presentation, as words in the
/// target's generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorMap {
    images: Vec<Word>,
}

impl GeneratorMap {
    pub fn new(source: &Presentation, images: Vec<Word>) -> Result<Self, FpError> {
        if images.len() != source.n_gens() {
            return Err(FpError::MapArity {
                got: images.len(),
                expected: source.n_gens(),
            });
        }
        Ok(GeneratorMap { images })
    }

    pub fn identity(n: usize) -> Self {
        GeneratorMap {
            images: (0..n).map(Word::gen).collect(),
        }
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn apply(&self, w: &Word) -> Word {
        w.substitute(&self.images)
    }
}

//! String groups generated by involutions and their certification as string
//! C-groups.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coset::{enumerate, CosetError, EnumerationLimits};
use crate::fpcore::{GeneratorMap, Presentation, Word};
use crate::perm::{
    derived_series, intersect_subgroups, subgroup_elements, ElementSet, PermError, Permutation,
    PermutationGroup,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SggiError {
    #[error(transparent)]
    Coset(#[from] CosetError),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error("target of the quotient criterion is not a certified string C-group")]
    TargetNotCertified,
    #[error("distinguished generator {0} does not exist")]
    BadDistinguished(usize),
}

/// A group with an ordered list of distinguished generators, realized as a
/// permutation group.
#[derive(Debug, Clone)]
pub struct SggiGroup {
    presentation: Option<Presentation>,
    image: PermutationGroup,
    distinguished: Vec<usize>,
}

impl SggiGroup {
    /// Enumerates the cosets of the trivial subgroup and takes the regular
    /// action.
    pub fn from_presentation(
        p: &Presentation,
        distinguished: &[usize],
        limits: EnumerationLimits,
    ) -> Result<Self, SggiError> {
        if let Some(&bad) = distinguished.iter().find(|&&d| d >= p.n_gens()) {
            return Err(SggiError::BadDistinguished(bad));
        }
        let table = enumerate(p, &[], limits)?;
        let image = PermutationGroup::new(table.n_live(), table.coset_action())?
            .with_order_bound(table.n_live() as u128);
        Ok(SggiGroup {
            presentation: Some(p.clone()),
            image,
            distinguished: distinguished.to_vec(),
        })
    }

    /// Uses the declaration order of all generators as the string order.
    pub fn from_presentation_default(
        p: &Presentation,
        limits: EnumerationLimits,
    ) -> Result<Self, SggiError> {
        let d: Vec<usize> = (0..p.n_gens()).collect();
        Self::from_presentation(p, &d, limits)
    }

    /// A concrete group whose generators are the distinguished elements.
    pub fn from_permutations(degree: usize, gens: Vec<Permutation>) -> Result<Self, SggiError> {
        let d = (0..gens.len()).collect();
        Ok(SggiGroup {
            presentation: None,
            image: PermutationGroup::new(degree, gens)?,
            distinguished: d,
        })
    }

    pub fn presentation(&self) -> Option<&Presentation> {
        self.presentation.as_ref()
    }

    pub fn image(&self) -> &PermutationGroup {
        &self.image
    }

    pub fn rank(&self) -> usize {
        self.distinguished.len()
    }

    pub fn distinguished(&self) -> &[usize] {
        &self.distinguished
    }

    /// Image of the `i`-th distinguished generator.
    pub fn rho(&self, i: usize) -> &Permutation {
        &self.image.generators()[self.distinguished[i]]
    }

    fn rhos(&self, idx: &[usize]) -> Vec<Permutation> {
        idx.iter().map(|&i| self.rho(i).clone()).collect()
    }

    /// Same group with the distinguished sequence reversed.
    pub fn dual(&self) -> SggiGroup {
        let mut d = self.clone();
        d.distinguished.reverse();
        d
    }

    pub fn all_involutions(&self) -> bool {
        (0..self.rank()).all(|i| self.rho(i).order() == 2)
    }

    pub fn generated_by_distinguished(&self) -> bool {
        let h = self
            .image
            .subgroup(self.rhos(&(0..self.rank()).collect::<Vec<_>>()));
        match h {
            Ok(h) => h.order() == self.image.order(),
            Err(_) => false,
        }
    }

    /// Default element cap for rank-≤2 distinguished subgroups.
    pub fn element_cap(&self) -> usize {
        let kmax = self
            .schlafli_type()
            .entries
            .iter()
            .copied()
            .max()
            .unwrap_or(2);
        4 * kmax as usize + 16
    }

    fn subset_elements(&self, subset: &[usize], cap: usize) -> Result<ElementSet, PermError> {
        subgroup_elements(self.image.degree(), &self.rhos(subset), cap)
    }
}

/// Orders of the products of consecutive distinguished generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SchlafliType {
    pub entries: Vec<u64>,
}

impl SchlafliType {
    pub fn is_degenerate(&self) -> bool {
        self.entries.iter().any(|&k| k <= 2)
    }
}

impl SggiGroup {
    pub fn schlafli_type(&self) -> SchlafliType {
        let entries = (1..self.rank())
            .map(|i| self.rho(i - 1).then(self.rho(i)).order())
            .collect();
        SchlafliType { entries }
    }
}

/// All distinguished images are involutions and non-adjacent ones commute.
pub fn check_string_property(g: &SggiGroup) -> bool {
    if !g.all_involutions() {
        return false;
    }
    let d = g.rank();
    (0..d).all(|i| (i + 2..d).all(|j| g.rho(i).commutes_with(g.rho(j))))
}

pub fn schlafli_type(g: &SggiGroup) -> SchlafliType {
    g.schlafli_type()
}

/// `G_I ∩ G_J = G_{I ∩ J}` for every pair of proper subsets of the
/// distinguished indices (pairs involving the full set hold trivially).
pub fn check_intersection_property(g: &SggiGroup) -> Result<bool, SggiError> {
    check_intersection_property_with_cap(g, g.element_cap())
}

pub fn check_intersection_property_with_cap(g: &SggiGroup, cap: usize) -> Result<bool, SggiError> {
    let d = g.rank();
    let full = (1usize << d) - 1;
    let subsets: Vec<usize> = (0..full).collect();
    let mut sets: Vec<ElementSet> = Vec::with_capacity(subsets.len());
    for &mask in &subsets {
        let idx: Vec<usize> = (0..d).filter(|i| mask >> i & 1 == 1).collect();
        sets.push(g.subset_elements(&idx, cap)?);
    }
    for a in 0..full {
        for b in a + 1..full {
            let meet = intersect_subgroups(&sets[a], &sets[b]);
            if meet != sets[a & b] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Rank-3 shortcut: `⟨ρ₀,ρ₁⟩ ∩ ⟨ρ₁,ρ₂⟩ = ⟨ρ₁⟩`.
pub fn intersection_property_shortcut(g: &SggiGroup) -> Result<bool, SggiError> {
    assert_eq!(g.rank(), 3, "shortcut is specific to rank 3");
    let cap = g.element_cap();
    let a = g.subset_elements(&[0, 1], cap)?;
    let b = g.subset_elements(&[1, 2], cap)?;
    let c = g.subset_elements(&[1], cap)?;
    Ok(intersect_subgroups(&a, &b) == c)
}

/// Verdict of certification.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub order: u64,
    pub schlafli: SchlafliType,
    pub is_sggi: bool,
    pub string_ok: bool,
    pub intersection_ok: bool,
    pub degenerate: bool,
    pub solvable: bool,
    /// Number of strictly decreasing steps in the derived series; the derived
    /// length when `solvable`.
    pub derived_length: u32,
}

impl Certificate {
    pub fn is_string_c_group(&self) -> bool {
        self.is_sggi && self.string_ok && self.intersection_ok
    }
}

/// Runs every check on a realized group.
pub fn certify_group(g: &SggiGroup) -> Result<Certificate, SggiError> {
    let string_ok = check_string_property(g);
    let is_sggi = string_ok && g.generated_by_distinguished();
    let schlafli = g.schlafli_type();
    let intersection_ok = if is_sggi {
        check_intersection_property(g)?
    } else {
        false
    };
    let series = derived_series(g.image());
    let solvable = series.last().map(|h| h.order() == 1).unwrap_or(true);
    Ok(Certificate {
        order: g.image().order() as u64,
        degenerate: schlafli.is_degenerate(),
        schlafli,
        is_sggi,
        string_ok,
        intersection_ok,
        solvable,
        derived_length: (series.len() - 1) as u32,
    })
}

/// Enumerates, realizes and certifies a presentation.
pub fn certify(
    p: &Presentation,
    distinguished: &[usize],
    limits: EnumerationLimits,
) -> Result<Certificate, SggiError> {
    certify_group(&SggiGroup::from_presentation(p, distinguished, limits)?)
}

/// Outcome of the quotient criterion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientVerdict {
    /// Every candidate relator maps to the identity.
    pub homomorphism: bool,
    /// The map is injective on `⟨ρ₀, ρ₁⟩`.
    pub injective_01: bool,
    /// The map is injective on `⟨ρ₁, ρ₂⟩`.
    pub injective_12: bool,
}

impl QuotientVerdict {
    pub fn holds(&self) -> bool {
        self.homomorphism && (self.injective_01 || self.injective_12)
    }
}

/// Order of the subgroup generated by generators `i` and `j` of the
/// candidate is at most the order of the group presented by the candidate
/// relators that only involve those two letters; that group is enumerated.
fn two_generator_upper_bound(
    candidate: &Presentation,
    i: usize,
    j: usize,
    limits: EnumerationLimits,
) -> Option<usize> {
    let rels: Vec<Word> = candidate
        .relators()
        .iter()
        .filter(|r| r.letters().iter().all(|l| l.gen == i || l.gen == j))
        .map(|r| {
            let map: Vec<Word> = (0..candidate.n_gens())
                .map(|g| match g {
                    g if g == i => Word::gen(0),
                    g if g == j => Word::gen(1),
                    _ => Word::identity(),
                })
                .collect();
            r.substitute(&map)
        })
        .collect();
    let p = Presentation::new(vec!["a".into(), "b".into()], rels).ok()?;
    enumerate(&p, &[], limits).ok().map(|t| t.index())
}

/// Certifies a rank-3 sggi as a string C-group from a homomorphism onto a
/// certified string C-group that is injective on one of the two
/// distinguished dihedral subgroups. Injectivity is decided by comparing the
/// target's dihedral order (a lower bound, the map being onto it) with the
/// order presented by the candidate's two-letter relators (an upper bound).
pub fn quotient_criterion(
    candidate: &Presentation,
    target: &SggiGroup,
    map: &GeneratorMap,
) -> Result<QuotientVerdict, SggiError> {
    if target.rank() != 3 || candidate.n_gens() != 3 || map.images().len() != 3 {
        return Err(SggiError::TargetNotCertified);
    }
    if !check_string_property(target) || !check_intersection_property(target)? {
        return Err(SggiError::TargetNotCertified);
    }
    let image = target.image();
    // Candidate generator i goes to the word map[i] in the target's
    // distinguished generators; re-express over the image generators.
    let to_image: Vec<Word> = (0..3)
        .map(|k| Word::gen(target.distinguished()[k]))
        .collect();
    let images: Vec<Word> = map
        .images()
        .iter()
        .map(|w| w.substitute(&to_image))
        .collect();
    let mut homomorphism = true;
    for r in candidate.relators() {
        if !image.evaluate(&r.substitute(&images))?.is_identity() {
            homomorphism = false;
            break;
        }
    }
    let limits = EnumerationLimits::default();
    let injective = |i: usize, j: usize| -> Result<bool, SggiError> {
        let gens = vec![image.evaluate(&images[i])?, image.evaluate(&images[j])?];
        let target_order = image.subgroup(gens)?.order() as usize;
        Ok(two_generator_upper_bound(candidate, i, j, limits) == Some(target_order))
    };
    Ok(QuotientVerdict {
        homomorphism,
        injective_01: injective(0, 1)?,
        injective_12: injective(1, 2)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{build_degenerate, build_type44};

    fn cyc(n: usize, cycles: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(n, cycles).unwrap()
    }

    #[test]
    fn rank2_string_property_is_vacuous() {
        let g =
            SggiGroup::from_permutations(3, vec![cyc(3, &[&[1, 2]]), cyc(3, &[&[2, 3]])]).unwrap();
        assert!(check_string_property(&g));
        assert_eq!(g.schlafli_type().entries, vec![3]);
    }

    #[test]
    fn string_violation_in_s4() {
        let a = cyc(4, &[&[1, 2]]);
        let b = cyc(4, &[&[2, 3]]);
        let c = cyc(4, &[&[3, 4]]);
        let ok = SggiGroup::from_permutations(4, vec![a.clone(), b.clone(), c.clone()]).unwrap();
        assert!(check_string_property(&ok));
        // (1 2) and (2 3) do not commute; put them at distance 2.
        let bad = SggiGroup::from_permutations(4, vec![a, c, b]).unwrap();
        assert!(!check_string_property(&bad));
    }

    #[test]
    fn s4_is_a_string_c_group() {
        let g = SggiGroup::from_permutations(
            4,
            vec![cyc(4, &[&[1, 2]]), cyc(4, &[&[2, 3]]), cyc(4, &[&[3, 4]])],
        )
        .unwrap();
        let c = certify_group(&g).unwrap();
        assert_eq!(c.order, 24);
        assert_eq!(c.schlafli.entries, vec![3, 3]);
        assert!(c.is_string_c_group());
        assert!(!c.degenerate);
        assert!(c.solvable);
        assert_eq!(c.derived_length, 3);
    }

    #[test]
    fn degenerate_certificate() {
        let p = build_degenerate(4, 2).unwrap();
        let c = certify(&p, &[0, 1, 2], EnumerationLimits::default()).unwrap();
        assert_eq!(c.order, 16);
        assert_eq!(c.schlafli.entries, vec![2, 4]);
        assert!(c.degenerate);
        assert!(c.is_string_c_group());
    }

    #[test]
    fn non_involution_is_not_sggi() {
        let p = Presentation::new(vec!["a".into()], [Word::gen(0).pow(3)]).unwrap();
        let c = certify(&p, &[0], EnumerationLimits::default()).unwrap();
        assert!(!c.is_sggi);
        assert!(!c.intersection_ok);
        assert_eq!(c.order, 3);
    }

    #[test]
    fn trivial_generator_is_not_sggi() {
        let p = Presentation::new(
            vec!["a".into(), "b".into()],
            [Word::gen(0).pow(2), Word::gen(1)],
        )
        .unwrap();
        let c = certify(&p, &[0, 1], EnumerationLimits::default()).unwrap();
        assert!(!c.is_sggi);
    }

    #[test]
    fn bad_distinguished_index() {
        let p = build_degenerate(2, 1).unwrap();
        assert!(matches!(
            SggiGroup::from_presentation(&p, &[0, 1, 5], EnumerationLimits::default()),
            Err(SggiError::BadDistinguished(5))
        ));
    }

    #[test]
    fn identity_map_quotient() {
        let p = build_type44(2, 2).unwrap();
        let target =
            SggiGroup::from_presentation_default(&p, EnumerationLimits::default()).unwrap();
        let v = quotient_criterion(&p, &target, &GeneratorMap::identity(3)).unwrap();
        assert!(v.homomorphism && v.injective_01 && v.injective_12);
        assert!(v.holds());
    }

    #[test]
    fn collapsing_map_fails() {
        let p = build_type44(2, 1).unwrap();
        let target =
            SggiGroup::from_presentation_default(&p, EnumerationLimits::default()).unwrap();
        let map = GeneratorMap::new(&p, vec![Word::identity(); 3]).unwrap();
        let v = quotient_criterion(&p, &target, &map).unwrap();
        assert!(v.homomorphism);
        assert!(!v.holds());
    }

    #[test]
    fn uncertified_target_is_rejected() {
        // ⟨a, b, c⟩ with a = c: the intersection property fails.
        let a = cyc(3, &[&[1, 2]]);
        let b = cyc(3, &[&[2, 3]]);
        let g = SggiGroup::from_permutations(3, vec![a.clone(), b, a]).unwrap();
        let p = build_type44(2, 1).unwrap();
        let r = quotient_criterion(&p, &g, &GeneratorMap::identity(3));
        assert!(matches!(r, Err(SggiError::TargetNotCertified)));
    }
}

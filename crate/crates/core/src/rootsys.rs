//! Positive roots, longest elements and Artin words for spherical special subgroups.
//!
//! Roots live in the canonical geometric representation and are stored in global
//! coordinates (one coefficient per generator of the whole matrix), so a reflection that
//! lies in two special subgroups is the same vector in both enumerations.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::f64::consts::PI;
use std::fmt;

use serde::Serialize;

use crate::classify::is_spherical_unchecked;
use crate::coxmatrix::{CoxeterMatrix, Label};
use crate::error::{Error, Result};
use crate::genset::GenSet;

/// Zero and deduplication tolerance for root coordinates.
pub const ROOT_TOLERANCE: f64 = 1e-6;

/// Largest subset on which roots are enumerated.
pub const MAX_ROOT_RANK: usize = 9;

/// Coefficient vector rounded to the tolerance grid; used for dedup and ordering.
pub type RootKey = Vec<i64>;

fn round_key(coeffs: &[f64]) -> RootKey {
    coeffs
        .iter()
        .map(|c| (c / ROOT_TOLERANCE).round() as i64)
        .collect()
}

/// The entry `B(φ_s, φ_t) = -cos(π / m_st)` of the canonical bilinear form.
pub fn form_entry(m: &CoxeterMatrix, s: usize, t: usize) -> f64 {
    if s == t {
        return 1.0;
    }
    match m.m(s, t) {
        Label::Finite(p) => -(PI / p as f64).cos(),
        Label::Infinite => -1.0,
    }
}

/// The bilinear form restricted to `t`, indexed by `t`'s members in increasing order.
pub fn bilinear_form(m: &CoxeterMatrix, t: GenSet) -> Result<Vec<Vec<f64>>> {
    m.check_subset(t)?;
    if t.is_empty() {
        return Err(Error::EmptySubset);
    }
    let members = t.indices();
    Ok(members
        .iter()
        .map(|&s| members.iter().map(|&u| form_entry(m, s, u)).collect())
        .collect())
}

/// A positive root together with the reflection word recorded during enumeration.
///
/// The root is `w(φ_base)` where `w = conjugator[0] · conjugator[1] ⋯`; the reflection is
/// `w · base · w⁻¹` and `word` spells it out letter by letter.
#[derive(Clone, Debug, PartialEq)]
pub struct Root {
    pub coeffs: Vec<f64>,
    pub word: Vec<usize>,
    pub support: GenSet,
    conjugator: Vec<usize>,
    base: usize,
}

impl Root {
    fn simple(rank: usize, s: usize) -> Root {
        let mut coeffs = vec![0.0; rank];
        coeffs[s] = 1.0;
        Root {
            coeffs,
            word: vec![s],
            support: GenSet::singleton(s),
            conjugator: Vec::new(),
            base: s,
        }
    }

    pub fn key(&self) -> RootKey {
        round_key(&self.coeffs)
    }

    /// The prefix `w` of the factorization `r = w s w⁻¹`.
    pub fn conjugator(&self) -> &[usize] {
        &self.conjugator
    }

    /// The simple reflection `s` of the factorization `r = w s w⁻¹`.
    pub fn base(&self) -> usize {
        self.base
    }

    /// Number of simple reflections applied to reach this root from a simple root.
    pub fn depth(&self) -> usize {
        self.conjugator.len()
    }

    pub fn word_string(&self, m: &CoxeterMatrix) -> String {
        self.word
            .iter()
            .map(|&s| m.name(s))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Applies the simple reflection `s` to a vector in simple-root coordinates.
pub fn reflect(m: &CoxeterMatrix, s: usize, v: &mut [f64]) {
    let pairing: f64 = v
        .iter()
        .enumerate()
        .filter(|(_, c)| **c != 0.0)
        .map(|(u, c)| c * form_entry(m, u, s))
        .sum();
    v[s] -= 2.0 * pairing;
}

fn require_spherical(m: &CoxeterMatrix, t: GenSet) -> Result<()> {
    m.check_subset(t)?;
    if t.len() > MAX_ROOT_RANK {
        return Err(Error::TooManyGenerators {
            what: "root enumeration",
            count: t.len(),
            limit: MAX_ROOT_RANK,
        });
    }
    if !is_spherical_unchecked(m, t) {
        return Err(Error::NotSpherical(m.format_subset(t)));
    }
    Ok(())
}

fn require_irreducible_spherical(m: &CoxeterMatrix, t: GenSet) -> Result<()> {
    if t.is_empty() {
        return Err(Error::EmptySubset);
    }
    require_spherical(m, t)?;
    if !m.is_connected(t) {
        return Err(Error::Reducible(m.format_subset(t)));
    }
    Ok(())
}

/// All positive roots of the spherical subgroup `W_T`, ordered by rounded coefficient vector.
///
/// Roots are reached from the simple roots by simple reflections that strictly raise one
/// coefficient, which visits every positive root and keeps each word's letters equal to the
/// root's support.
pub fn positive_roots(m: &CoxeterMatrix, t: GenSet) -> Result<Vec<Root>> {
    require_spherical(m, t)?;
    let rank = m.rank();
    let mut seen: HashMap<RootKey, usize> = HashMap::new();
    let mut roots: Vec<Root> = Vec::new();
    let mut queue = VecDeque::new();

    for s in t.iter() {
        let root = Root::simple(rank, s);
        seen.insert(root.key(), roots.len());
        queue.push_back(roots.len());
        roots.push(root);
    }

    while let Some(idx) = queue.pop_front() {
        for s in t.iter() {
            let current = &roots[idx];
            let pairing: f64 = current
                .support
                .iter()
                .map(|u| current.coeffs[u] * form_entry(m, u, s))
                .sum();
            if pairing >= -ROOT_TOLERANCE {
                continue;
            }
            let mut coeffs = current.coeffs.clone();
            coeffs[s] -= 2.0 * pairing;
            let key = round_key(&coeffs);
            if seen.contains_key(&key) {
                continue;
            }
            let mut conjugator = Vec::with_capacity(current.conjugator.len() + 1);
            conjugator.push(s);
            conjugator.extend_from_slice(&current.conjugator);
            let base = current.base;
            let mut word = conjugator.clone();
            word.push(base);
            word.extend(conjugator.iter().rev());
            let root = Root {
                coeffs,
                word,
                support: current.support.with(s),
                conjugator,
                base,
            };
            seen.insert(key, roots.len());
            queue.push_back(roots.len());
            roots.push(root);
        }
    }

    roots.sort_by(|a, b| a.key().cmp(&b.key()).then_with(|| a.word.cmp(&b.word)));
    Ok(roots)
}

/// A root of `W_T` whose support is exactly `T`: the lexicographically largest one.
///
/// For crystallographic types this is the highest root.
pub fn choose_r(m: &CoxeterMatrix, t: GenSet) -> Result<Root> {
    require_irreducible_spherical(m, t)?;
    positive_roots(m, t)?
        .into_iter()
        .filter(|r| r.support == t)
        .max_by(|a, b| a.key().cmp(&b.key()).then_with(|| b.word.cmp(&a.word)))
        .ok_or_else(|| {
            Error::LemmaViolation(format!(
                "no positive root of {} has full support",
                m.format_subset(t)
            ))
        })
}

/// The longest element `w_T` of a finite special subgroup.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LongestElement {
    pub word: Vec<usize>,
    pub length: usize,
    /// `ι_T`: conjugation by `w_T`, restricted to `T`.
    pub involution: BTreeMap<usize, usize>,
}

impl LongestElement {
    pub fn involution_is_trivial(&self) -> bool {
        self.involution.iter().all(|(s, t)| s == t)
    }
}

/// Builds a reduced word for `w_T` greedily, appending the lowest generator that lengthens
/// the current element until none does.
pub fn longest_element(m: &CoxeterMatrix, t: GenSet) -> Result<LongestElement> {
    require_spherical(m, t)?;
    let members = t.indices();
    let k = members.len();
    let form = if k == 0 {
        Vec::new()
    } else {
        bilinear_form(m, t)?
    };

    // images[j] = w(φ_{members[j]}) in local coordinates
    let mut images: Vec<Vec<f64>> = (0..k)
        .map(|j| (0..k).map(|i| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    let mut word = Vec::new();
    // the longest word of a rank <= 9 finite group is far below this
    let limit = 1000;
    while let Some(j) = (0..k).find(|&j| images[j].iter().any(|&c| c > ROOT_TOLERANCE)) {
        if word.len() >= limit {
            return Err(Error::LemmaViolation(format!(
                "greedy longest-element search on {} did not terminate",
                m.format_subset(t)
            )));
        }
        word.push(members[j]);
        let col = images[j].clone();
        for (i, image) in images.iter_mut().enumerate() {
            let factor = 2.0 * form[i][j];
            if factor != 0.0 {
                for (x, c) in image.iter_mut().zip(&col) {
                    *x -= factor * c;
                }
            }
        }
    }

    let mut involution = BTreeMap::new();
    for (j, image) in images.iter().enumerate() {
        let target = image.iter().enumerate().find(|(i, _)| {
            image.iter().enumerate().all(|(u, &c)| {
                let expected = if u == *i { -1.0 } else { 0.0 };
                (c - expected).abs() < ROOT_TOLERANCE
            })
        });
        match target {
            Some((i, _)) => {
                involution.insert(members[j], members[i]);
            }
            None => {
                return Err(Error::LemmaViolation(format!(
                    "w_T does not send the simple root {} to a negative simple root",
                    m.name(members[j])
                )))
            }
        }
    }

    Ok(LongestElement {
        length: word.len(),
        word,
        involution,
    })
}

/// A letter `a_s^{±1}` of a word in the Artin generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ArtinLetter {
    pub generator: usize,
    pub inverse: bool,
}

/// A (not necessarily freely reduced) word in the Artin generators.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ArtinWord(pub Vec<ArtinLetter>);

impl ArtinWord {
    /// The positive lift `a_{s1} ⋯ a_{sk}` of a Coxeter word.
    pub fn lift(word: &[usize]) -> ArtinWord {
        ArtinWord(
            word.iter()
                .map(|&generator| ArtinLetter {
                    generator,
                    inverse: false,
                })
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[ArtinLetter] {
        &self.0
    }

    pub fn concat(&self, other: &ArtinWord) -> ArtinWord {
        ArtinWord(self.0.iter().chain(&other.0).copied().collect())
    }

    pub fn inverse(&self) -> ArtinWord {
        ArtinWord(
            self.0
                .iter()
                .rev()
                .map(|l| ArtinLetter {
                    generator: l.generator,
                    inverse: !l.inverse,
                })
                .collect(),
        )
    }

    /// Exponent sum per generator; the image in the abelianization of `A`.
    pub fn exponent_sums(&self, rank: usize) -> Vec<i64> {
        let mut sums = vec![0; rank];
        for l in &self.0 {
            sums[l.generator] += if l.inverse { -1 } else { 1 };
        }
        sums
    }

    /// Renders as e.g. `a_s a_t^-1`, using generator names from `m`.
    pub fn render(&self, m: &CoxeterMatrix) -> String {
        self.display_with(|s| m.name(s).to_string()).to_string()
    }

    fn display_with<F: Fn(usize) -> String>(&self, name: F) -> impl fmt::Display + '_ {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|l| {
                let base = format!("a_{}", name(l.generator));
                if l.inverse {
                    base + "^-1"
                } else {
                    base
                }
            })
            .collect();
        parts.join(" ")
    }
}

/// `Δ_T`, the central generator `δ_T`, and whether `Δ_T` itself is central.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaWords {
    pub garside: ArtinWord,
    pub center_generator: ArtinWord,
    pub garside_central: bool,
}

pub fn delta_words(m: &CoxeterMatrix, t: GenSet) -> Result<DeltaWords> {
    require_irreducible_spherical(m, t)?;
    let longest = longest_element(m, t)?;
    let garside = ArtinWord::lift(&longest.word);
    let central = longest.involution_is_trivial();
    let center_generator = if central {
        garside.clone()
    } else {
        garside.concat(&garside)
    };
    Ok(DeltaWords {
        garside,
        center_generator,
        garside_central: central,
    })
}

/// The pure-braid generator `ε_r = a_w a_s² a_w⁻¹` attached to a root `r = w s w⁻¹`.
pub fn epsilon_r_word(root: &Root) -> ArtinWord {
    let a_w = ArtinWord::lift(root.conjugator());
    let square = ArtinWord::lift(&[root.base(), root.base()]);
    a_w.concat(&square).concat(&a_w.inverse())
}

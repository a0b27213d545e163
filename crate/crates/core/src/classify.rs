//! Recognition of finite Coxeter types from connected labeled diagrams.
//!
//! Matching is exact: the induced diagram must be a tree, and the tree shape, arm lengths
//! and label positions are compared against the classification of finite irreducible
//! Coxeter groups. No floating point is involved.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::coxmatrix::{CoxeterMatrix, Label};
use crate::error::{Error, Result};
use crate::genset::GenSet;

/// A finite irreducible Coxeter type.
///
/// A single edge is always reported as `A(2)` (label 3) or `I2(p)`; the `B` family starts
/// at rank 3 so that `I2(4)` has a single name.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FiniteType {
    A(usize),
    B(usize),
    D(usize),
    E6,
    E7,
    E8,
    F4,
    H3,
    H4,
    I2(u32),
}

impl FiniteType {
    pub fn rank(self) -> usize {
        match self {
            FiniteType::A(n) | FiniteType::B(n) | FiniteType::D(n) => n,
            FiniteType::E6 => 6,
            FiniteType::E7 => 7,
            FiniteType::E8 => 8,
            FiniteType::F4 | FiniteType::H4 => 4,
            FiniteType::H3 => 3,
            FiniteType::I2(_) => 2,
        }
    }

    /// Whether the family/rank combination exists in the classification.
    pub fn is_valid(self) -> bool {
        match self {
            FiniteType::A(n) => n >= 1,
            FiniteType::B(n) => n >= 3,
            FiniteType::D(n) => n >= 4,
            FiniteType::I2(p) => p >= 3,
            _ => true,
        }
    }

    /// Every valid type of rank at most `max_rank`, plus `I2(p)` for `4 <= p <= max_p`.
    /// `I2(3)` is omitted because it is `A(2)`.
    pub fn all_up_to(max_rank: usize, max_p: u32) -> Vec<FiniteType> {
        let mut out = Vec::new();
        for n in 1..=max_rank {
            out.push(FiniteType::A(n));
        }
        for n in 3..=max_rank {
            out.push(FiniteType::B(n));
        }
        for n in 4..=max_rank {
            out.push(FiniteType::D(n));
        }
        for t in [
            FiniteType::E6,
            FiniteType::E7,
            FiniteType::E8,
            FiniteType::F4,
            FiniteType::H3,
            FiniteType::H4,
        ] {
            if t.rank() <= max_rank {
                out.push(t);
            }
        }
        if max_rank >= 2 {
            out.extend((4..=max_p).map(FiniteType::I2));
        }
        out
    }

    /// Labels along the path of a linear diagram, or `None` for the branched types.
    fn path_labels(self) -> Option<Vec<u32>> {
        let n = self.rank();
        Some(match self {
            FiniteType::A(_) => vec![3; n.saturating_sub(1)],
            FiniteType::B(_) => {
                let mut v = vec![3; n - 1];
                v[n - 2] = 4;
                v
            }
            FiniteType::F4 => vec![3, 4, 3],
            FiniteType::H3 => vec![5, 3],
            FiniteType::H4 => vec![5, 3, 3],
            FiniteType::I2(p) => vec![p],
            FiniteType::D(_) | FiniteType::E6 | FiniteType::E7 | FiniteType::E8 => return None,
        })
    }

    /// A standard Coxeter matrix of this type on generators named `names`.
    ///
    /// Linear types are numbered along the path. `D(n)` is the path `0..n-1` with `n-1`
    /// attached to `n-3`; `E(n)` is the path `0..n-1` with `n-1` attached to `2`.
    pub fn coxeter_matrix(self, names: Vec<String>) -> Result<CoxeterMatrix> {
        let n = self.rank();
        assert_eq!(names.len(), n, "name count must match rank");
        let mut pairs = Vec::new();
        match self.path_labels() {
            Some(labels) => {
                for (i, p) in labels.into_iter().enumerate() {
                    pairs.push((i, i + 1, Label::Finite(p)));
                }
            }
            None => {
                let attach = match self {
                    FiniteType::D(_) => n - 3,
                    _ => 2,
                };
                for i in 0..n - 2 {
                    pairs.push((i, i + 1, Label::Finite(3)));
                }
                pairs.push((attach, n - 1, Label::Finite(3)));
            }
        }
        CoxeterMatrix::new(names, Label::Finite(2), pairs)
    }
}

impl fmt::Display for FiniteType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiniteType::A(n) => write!(f, "A{n}"),
            FiniteType::B(n) => write!(f, "B{n}"),
            FiniteType::D(n) => write!(f, "D{n}"),
            FiniteType::E6 => f.write_str("E6"),
            FiniteType::E7 => f.write_str("E7"),
            FiniteType::E8 => f.write_str("E8"),
            FiniteType::F4 => f.write_str("F4"),
            FiniteType::H3 => f.write_str("H3"),
            FiniteType::H4 => f.write_str("H4"),
            FiniteType::I2(p) => write!(f, "I2({p})"),
        }
    }
}

impl Serialize for FiniteType {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Number of reflections and centerlessness of a finite irreducible type.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CatalogEntry {
    #[serde(rename = "type")]
    pub ty: FiniteType,
    pub num_reflections: usize,
    pub centerless: bool,
}

pub fn catalog(ty: FiniteType) -> CatalogEntry {
    let (num_reflections, centerless) = match ty {
        FiniteType::A(n) => (n * (n + 1) / 2, n >= 2),
        FiniteType::B(n) => (n * n, false),
        FiniteType::D(n) => (n * (n - 1), n % 2 == 1),
        FiniteType::E6 => (36, true),
        FiniteType::E7 => (63, false),
        FiniteType::E8 => (120, false),
        FiniteType::F4 => (24, false),
        FiniteType::H3 => (15, false),
        FiniteType::H4 => (60, false),
        FiniteType::I2(p) => (p as usize, p % 2 == 1),
    };
    CatalogEntry {
        ty,
        num_reflections,
        centerless,
    }
}

/// Identifies the finite type of a connected subset, or `None` when `W_T` is infinite.
pub fn recognize_finite_type(m: &CoxeterMatrix, t: GenSet) -> Result<Option<FiniteType>> {
    m.check_subset(t)?;
    if t.is_empty() {
        return Err(Error::EmptySubset);
    }
    if !m.is_connected(t) {
        return Err(Error::NotConnected(m.format_subset(t)));
    }
    Ok(recognize_connected(m, t))
}

pub(crate) fn recognize_connected(m: &CoxeterMatrix, t: GenSet) -> Option<FiniteType> {
    let members = t.indices();
    let n = members.len();
    if n == 1 {
        return Some(FiniteType::A(1));
    }

    // adjacency local to t: (neighbor position, label)
    let mut adj: Vec<Vec<(usize, u32)>> = vec![Vec::new(); n];
    let mut edge_count = 0;
    for i in 0..n {
        for j in i + 1..n {
            match m.m(members[i], members[j]) {
                Label::Infinite => return None,
                Label::Finite(p) if p > 2 => {
                    adj[i].push((j, p));
                    adj[j].push((i, p));
                    edge_count += 1;
                }
                Label::Finite(_) => {}
            }
        }
    }
    if edge_count != n - 1 {
        return None;
    }
    if n == 2 {
        return Some(match adj[0][0].1 {
            3 => FiniteType::A(2),
            p => FiniteType::I2(p),
        });
    }

    let max_degree = adj.iter().map(Vec::len).max().unwrap_or(0);
    match max_degree {
        2 => recognize_path(&adj),
        3 => recognize_branched(&adj),
        _ => None,
    }
}

fn recognize_path(adj: &[Vec<(usize, u32)>]) -> Option<FiniteType> {
    let n = adj.len();
    let start = adj.iter().position(|a| a.len() == 1)?;
    let mut labels = Vec::with_capacity(n - 1);
    let (mut prev, mut cur) = (usize::MAX, start);
    while let Some(&(next, p)) = adj[cur].iter().find(|(v, _)| *v != prev) {
        labels.push(p);
        prev = cur;
        cur = next;
    }

    let special: Vec<(usize, u32)> = labels
        .iter()
        .copied()
        .enumerate()
        .filter(|&(_, p)| p != 3)
        .collect();
    let at_end = |pos: usize| pos == 0 || pos == n - 2;
    match special.as_slice() {
        [] => Some(FiniteType::A(n)),
        [(pos, 4)] if at_end(*pos) => Some(FiniteType::B(n)),
        [(1, 4)] if n == 4 => Some(FiniteType::F4),
        [(pos, 5)] if at_end(*pos) && n == 3 => Some(FiniteType::H3),
        [(pos, 5)] if at_end(*pos) && n == 4 => Some(FiniteType::H4),
        _ => None,
    }
}

fn recognize_branched(adj: &[Vec<(usize, u32)>]) -> Option<FiniteType> {
    if adj.iter().flatten().any(|&(_, p)| p != 3) {
        return None;
    }
    let mut branch_points = adj.iter().enumerate().filter(|(_, a)| a.len() == 3);
    let (center, _) = branch_points.next()?;
    if branch_points.next().is_some() {
        return None;
    }

    let mut arms: Vec<usize> = adj[center]
        .iter()
        .map(|&(first, _)| {
            let (mut prev, mut cur, mut len) = (center, first, 1);
            while let Some(&(next, _)) = adj[cur].iter().find(|(v, _)| *v != prev) {
                prev = cur;
                cur = next;
                len += 1;
            }
            len
        })
        .collect();
    arms.sort_unstable();
    match arms.as_slice() {
        [1, 1, c] => Some(FiniteType::D(c + 3)),
        [1, 2, 2] => Some(FiniteType::E6),
        [1, 2, 3] => Some(FiniteType::E7),
        [1, 2, 4] => Some(FiniteType::E8),
        _ => None,
    }
}

/// The finite types of the irreducible blocks of `t`, or `None` if some block is infinite.
pub fn block_types(m: &CoxeterMatrix, t: GenSet) -> Result<Option<Vec<(GenSet, FiniteType)>>> {
    let blocks = m.components(t)?;
    Ok(blocks
        .into_iter()
        .map(|b| recognize_connected(m, b).map(|ty| (b, ty)))
        .collect())
}

/// Whether `W_T` is finite. The empty set is spherical.
pub fn is_spherical(m: &CoxeterMatrix, t: GenSet) -> Result<bool> {
    m.check_subset(t)?;
    Ok(is_spherical_unchecked(m, t))
}

pub(crate) fn is_spherical_unchecked(m: &CoxeterMatrix, t: GenSet) -> bool {
    m.components_unchecked(t)
        .into_iter()
        .all(|b| recognize_connected(m, b).is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxmatrix::parse_coxeter_matrix;

    fn names(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("s{i}")).collect()
    }

    fn path(labels: &[u32]) -> CoxeterMatrix {
        let pairs = labels
            .iter()
            .enumerate()
            .map(|(i, &p)| (i, i + 1, Label::Finite(p)));
        CoxeterMatrix::new(names(labels.len() + 1), Label::Finite(2), pairs).unwrap()
    }

    /// Star with arms of the given lengths around vertex 0.
    fn star(arms: &[usize]) -> CoxeterMatrix {
        let n = 1 + arms.iter().sum::<usize>();
        let mut pairs = Vec::new();
        let mut next = 1;
        for &len in arms {
            let mut prev = 0;
            for _ in 0..len {
                pairs.push((prev, next, Label::Finite(3)));
                prev = next;
                next += 1;
            }
        }
        CoxeterMatrix::new(names(n), Label::Finite(2), pairs).unwrap()
    }

    fn recognize_all(m: &CoxeterMatrix) -> Option<FiniteType> {
        recognize_finite_type(m, m.all()).unwrap()
    }

    #[test]
    fn rank_one_and_two() {
        let single = CoxeterMatrix::new(names(1), Label::Finite(2), []).unwrap();
        assert_eq!(recognize_all(&single), Some(FiniteType::A(1)));
        assert_eq!(recognize_all(&path(&[3])), Some(FiniteType::A(2)));
        assert_eq!(recognize_all(&path(&[4])), Some(FiniteType::I2(4)));
        assert_eq!(recognize_all(&path(&[6])), Some(FiniteType::I2(6)));
        let inf = CoxeterMatrix::new(names(2), Label::Infinite, []).unwrap();
        assert_eq!(recognize_all(&inf), None);
    }

    #[test]
    fn linear_types() {
        assert_eq!(recognize_all(&path(&[3, 3])), Some(FiniteType::A(3)));
        assert_eq!(recognize_all(&path(&[3, 4, 3])), Some(FiniteType::F4));
        assert_eq!(recognize_all(&path(&[5, 3, 3])), Some(FiniteType::H4));
        assert_eq!(recognize_all(&path(&[3, 3, 5])), Some(FiniteType::H4));
        assert_eq!(recognize_all(&path(&[3, 5])), Some(FiniteType::H3));
        assert_eq!(recognize_all(&path(&[4, 3, 3])), Some(FiniteType::B(4)));
        assert_eq!(recognize_all(&path(&[3, 3, 4])), Some(FiniteType::B(4)));
        assert_eq!(recognize_all(&path(&[3, 5, 3])), None);
        assert_eq!(recognize_all(&path(&[4, 4])), None);
        assert_eq!(recognize_all(&path(&[3, 6])), None);
        assert_eq!(recognize_all(&path(&[5, 3, 3, 3])), None);
        assert_eq!(recognize_all(&path(&[3, 4, 3, 3])), None);
    }

    #[test]
    fn branched_types() {
        assert_eq!(recognize_all(&star(&[1, 1, 1])), Some(FiniteType::D(4)));
        assert_eq!(recognize_all(&star(&[1, 1, 4])), Some(FiniteType::D(7)));
        assert_eq!(recognize_all(&star(&[2, 2, 1])), Some(FiniteType::E6));
        assert_eq!(recognize_all(&star(&[1, 3, 2])), Some(FiniteType::E7));
        assert_eq!(recognize_all(&star(&[1, 2, 4])), Some(FiniteType::E8));
        assert_eq!(recognize_all(&star(&[1, 2, 5])), None);
        assert_eq!(recognize_all(&star(&[2, 2, 2])), None);
        assert_eq!(recognize_all(&star(&[1, 1, 1, 1])), None);
    }

    #[test]
    fn cycles_are_infinite() {
        let tri = CoxeterMatrix::new(
            names(3),
            Label::Finite(2),
            [
                (0, 1, Label::Finite(3)),
                (1, 2, Label::Finite(3)),
                (0, 2, Label::Finite(3)),
            ],
        )
        .unwrap();
        assert_eq!(recognize_all(&tri), None);
    }

    #[test]
    fn recognition_preconditions() {
        let m = path(&[3, 3]);
        assert!(matches!(
            recognize_finite_type(&m, GenSet::EMPTY),
            Err(Error::EmptySubset)
        ));
        let ends: GenSet = [0, 2].into_iter().collect();
        assert!(matches!(
            recognize_finite_type(&m, ends),
            Err(Error::NotConnected(_))
        ));
    }

    #[test]
    fn sphericity() {
        let m = path(&[3, 3]);
        assert!(is_spherical(&m, GenSet::EMPTY).unwrap());
        assert!(is_spherical(&m, m.all()).unwrap());
        let inf = CoxeterMatrix::new(names(2), Label::Infinite, []).unwrap();
        assert!(!is_spherical(&inf, inf.all()).unwrap());
        assert!(is_spherical(&inf, GenSet::singleton(1)).unwrap());
        assert!(is_spherical(&m, GenSet::singleton(5)).is_err());
    }

    #[test]
    fn catalog_entries() {
        assert_eq!(
            catalog(FiniteType::A(1)),
            CatalogEntry {
                ty: FiniteType::A(1),
                num_reflections: 1,
                centerless: false
            }
        );
        assert_eq!(catalog(FiniteType::E8).num_reflections, 120);
        assert!(!catalog(FiniteType::E8).centerless);
        assert_eq!(catalog(FiniteType::I2(5)).num_reflections, 5);
        assert!(catalog(FiniteType::I2(5)).centerless);
        assert!(!catalog(FiniteType::I2(6)).centerless);
        assert!(catalog(FiniteType::D(5)).centerless);
        assert!(!catalog(FiniteType::D(6)).centerless);
        assert!(catalog(FiniteType::E6).centerless);
    }

    #[test]
    fn standard_matrices_recognize_to_themselves() {
        for ty in FiniteType::all_up_to(8, 12) {
            let m = ty.coxeter_matrix(names(ty.rank())).unwrap();
            assert_eq!(recognize_all(&m), Some(ty), "{ty}");
        }
    }

    #[test]
    fn block_types_of_reducible_subset() {
        let m = parse_coxeter_matrix(
            r#"{"generators":["a","b","c","d"],"default":2,
                "relations":[{"pair":["a","b"],"m":5}]}"#,
        )
        .unwrap();
        let types = block_types(&m, m.all()).unwrap().unwrap();
        let tys: Vec<FiniteType> = types.iter().map(|(_, t)| *t).collect();
        assert_eq!(
            tys,
            vec![FiniteType::I2(5), FiniteType::A(1), FiniteType::A(1)]
        );
    }
}

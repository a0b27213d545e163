//! Standard abelian subgroups at the level of the abelianized pure Artin group.
//!
//! The abelianization of the pure Artin group is free abelian on the reflections. Every
//! `e_T` is supported on `R_T`, so all computations here work in the finite truncation
//! spanned by `⋃_{T ∈ S_⊘} R_T`.

use std::collections::HashMap;

use num_bigint::BigInt;

use crate::coxmatrix::CoxeterMatrix;
use crate::error::{Error, Result};
use crate::genset::GenSet;
use crate::homology::{smith_normal_form, ColumnEchelon, IntMatrix};
use crate::rootsys::{choose_r, delta_words, positive_roots, ArtinWord, Root, RootKey};
use crate::simcomplex::{position, s_oslash, subdivide, Face, Position, SimplicialComplex};

/// The reflections of all irreducible spherical special subgroups, deduplicated and ordered
/// by coefficient vector.
#[derive(Clone, Debug)]
pub struct ReflectionIndex {
    roots: Vec<Root>,
    rows: HashMap<RootKey, usize>,
}

impl ReflectionIndex {
    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn row_of(&self, root: &Root) -> Option<usize> {
        self.rows.get(&root.key()).copied()
    }
}

pub fn reflection_index(m: &CoxeterMatrix) -> Result<ReflectionIndex> {
    let mut roots = Vec::new();
    for t in s_oslash(m)? {
        roots.extend(positive_roots(m, t)?);
    }
    roots.sort_by(|a, b| a.key().cmp(&b.key()).then_with(|| a.word.cmp(&b.word)));
    roots.dedup_by(|later, earlier| later.key() == earlier.key());
    let rows = roots
        .iter()
        .enumerate()
        .map(|(i, r)| (r.key(), i))
        .collect();
    Ok(ReflectionIndex { roots, rows })
}

/// An integer vector indexed by a [`ReflectionIndex`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EVector(pub Vec<i64>);

impl EVector {
    pub fn dot(&self, other: &EVector) -> i64 {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn weight(&self) -> i64 {
        self.0.iter().sum()
    }
}

fn require_oslash(m: &CoxeterMatrix, t: GenSet) -> Result<()> {
    m.check_subset(t)?;
    if t.is_empty() {
        return Err(Error::EmptySubset);
    }
    if !crate::classify::is_spherical_unchecked(m, t) {
        return Err(Error::NotSpherical(m.format_subset(t)));
    }
    if !m.is_connected(t) {
        return Err(Error::Reducible(m.format_subset(t)));
    }
    Ok(())
}

/// `e_T`: the indicator vector of `R_T`.
pub fn e_vector(m: &CoxeterMatrix, t: GenSet, idx: &ReflectionIndex) -> Result<EVector> {
    require_oslash(m, t)?;
    let mut v = vec![0; idx.len()];
    for root in positive_roots(m, t)? {
        let row = idx.row_of(&root).ok_or_else(|| {
            Error::LemmaViolation(format!(
                "reflection {} of {} missing from the index",
                root.word_string(m),
                m.format_subset(t)
            ))
        })?;
        v[row] = 1;
    }
    Ok(EVector(v))
}

/// The map `j: Z^{S_⊘} → Z^R`, one column `e_T` per element of `S_⊘`.
#[derive(Clone, Debug)]
pub struct JMap {
    pub columns: Vec<GenSet>,
    pub index: ReflectionIndex,
    pub vectors: Vec<EVector>,
    pub matrix: IntMatrix,
}

impl JMap {
    pub fn build(m: &CoxeterMatrix) -> Result<JMap> {
        let columns = s_oslash(m)?;
        let index = reflection_index(m)?;
        let vectors = columns
            .iter()
            .map(|&t| e_vector(m, t, &index))
            .collect::<Result<Vec<_>>>()?;
        let data: Vec<Vec<BigInt>> = vectors
            .iter()
            .map(|v| v.0.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        let matrix = IntMatrix::from_columns(index.len(), &data);
        Ok(JMap {
            columns,
            index,
            vectors,
            matrix,
        })
    }

    /// Rank over the rationals, read off the Smith normal form.
    pub fn rank(&self) -> usize {
        smith_normal_form(&self.matrix).len()
    }

    pub fn column_of(&self, t: GenSet) -> Option<usize> {
        self.columns.binary_search(&t).ok()
    }
}

/// The matrix of `j`, failing with a lemma violation if it is not injective.
pub fn j_matrix(m: &CoxeterMatrix) -> Result<IntMatrix> {
    let j = JMap::build(m)?;
    let rank = j.rank();
    if rank != j.columns.len() {
        return Err(Error::LemmaViolation(format!(
            "j has rank {rank} but S_⊘ has {} elements",
            j.columns.len()
        )));
    }
    Ok(j.matrix)
}

/// A free abelian subgroup generated by the central elements `δ_T`, `T` a vertex of a
/// simplex of `L_⊘`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardAbelianSubgroup {
    pub simplex: Vec<GenSet>,
    pub generators: Vec<(GenSet, ArtinWord)>,
    pub rank: usize,
}

/// `L_⊘` together with the map `j`, for repeated lattice-level queries.
#[derive(Clone, Debug)]
pub struct AbelianComplex<'a> {
    matrix: &'a CoxeterMatrix,
    pub subdivision: SimplicialComplex<GenSet>,
    pub j: JMap,
}

impl<'a> AbelianComplex<'a> {
    pub fn new(m: &'a CoxeterMatrix) -> Result<Self> {
        let subdivision = subdivide(m)?;
        let j = JMap::build(m)?;
        debug_assert_eq!(subdivision.vertices(), j.columns.as_slice());
        Ok(AbelianComplex {
            matrix: m,
            subdivision,
            j,
        })
    }

    /// Converts a family of elements of `S_⊘` into a face of `L_⊘`.
    pub fn face_of(&self, alpha: &[GenSet]) -> Result<Face> {
        let mut face = alpha
            .iter()
            .map(|&t| {
                self.j
                    .column_of(t)
                    .ok_or_else(|| Error::NotAFace(self.describe(alpha)))
            })
            .collect::<Result<Face>>()?;
        face.sort_unstable();
        face.dedup();
        if !face.is_empty() && !self.subdivision.contains(&face) {
            return Err(Error::NotAFace(self.describe(alpha)));
        }
        Ok(face)
    }

    fn describe(&self, alpha: &[GenSet]) -> String {
        let parts: Vec<String> = alpha
            .iter()
            .map(|&t| self.matrix.format_subset(t))
            .collect();
        format!("{{{}}}", parts.join(", "))
    }

    /// The lattice `J_α`'s generators, restricted to the given rows.
    fn lattice(&self, face: &[usize], rows: &[usize]) -> IntMatrix {
        self.j.matrix.select(rows, face)
    }

    /// Checks `J_α ∩ J_β = J_{α∩β}` for two faces given as vertex-index lists.
    ///
    /// The intersection is spanned by `M_α x` over the integer kernel vectors `(x, y)` of
    /// `[M_α | -M_β]`; equality with `J_{α∩β}` is tested by membership in both directions.
    pub fn lattice_intersection_holds(&self, alpha: &[usize], beta: &[usize]) -> bool {
        let meet: Vec<usize> = alpha.iter().copied().filter(|v| beta.contains(v)).collect();
        // rows outside the supports are identically zero
        let rows: Vec<usize> = (0..self.j.index.len())
            .filter(|&r| {
                alpha
                    .iter()
                    .chain(beta)
                    .any(|&c| self.j.vectors[c].0[r] != 0)
            })
            .collect();
        let m_alpha = self.lattice(alpha, &rows);
        let m_meet = self.lattice(&meet, &rows);

        let mut stacked = IntMatrix::zeros(rows.len(), alpha.len() + beta.len());
        for (i, &r) in rows.iter().enumerate() {
            for (c, &col) in alpha.iter().enumerate() {
                stacked.set(i, c, BigInt::from(self.j.vectors[col].0[r]));
            }
            for (c, &col) in beta.iter().enumerate() {
                stacked.set(i, alpha.len() + c, BigInt::from(-self.j.vectors[col].0[r]));
            }
        }
        let intersection: Vec<Vec<BigInt>> = ColumnEchelon::new(&stacked)
            .kernel()
            .into_iter()
            .map(|v| m_alpha.mul_vec(&v[..alpha.len()]))
            .collect();

        let meet_lattice = ColumnEchelon::new(&m_meet);
        if !intersection.iter().all(|g| meet_lattice.contains(g)) {
            return false;
        }
        let intersection_lattice =
            ColumnEchelon::new(&IntMatrix::from_columns(rows.len(), &intersection));
        (0..meet.len()).all(|c| intersection_lattice.contains(&m_meet.column(c)))
    }

    pub fn lattice_intersection_check(&self, alpha: &[GenSet], beta: &[GenSet]) -> Result<bool> {
        let a = self.face_of(alpha)?;
        let b = self.face_of(beta)?;
        Ok(self.lattice_intersection_holds(&a, &b))
    }

    /// Whether the columns `e_T`, `T ∈ α`, are linearly independent.
    pub fn columns_independent(&self, face: &[usize]) -> bool {
        let rows: Vec<usize> = (0..self.j.index.len()).collect();
        smith_normal_form(&self.lattice(face, &rows)).len() == face.len()
    }

    pub fn standard_abelian_subgroup(&self, alpha: &[GenSet]) -> Result<StandardAbelianSubgroup> {
        let face = self.face_of(alpha)?;
        let simplex: Vec<GenSet> = face.iter().map(|&i| self.j.columns[i]).collect();
        let generators = simplex
            .iter()
            .map(|&t| Ok((t, delta_words(self.matrix, t)?.center_generator)))
            .collect::<Result<Vec<_>>>()?;
        Ok(StandardAbelianSubgroup {
            rank: simplex.len(),
            simplex,
            generators,
        })
    }

    /// Checks `e_{T'} · e_{r(T)} = [T ⊆ T']` for all `T, T' ∈ S_⊘`, where `e_{r(T)}` is the
    /// basis vector of the chosen full-support reflection of `T`.
    pub fn pairing_identity_holds(&self) -> Result<bool> {
        for &t in &self.j.columns {
            let r = choose_r(self.matrix, t)?;
            let row = self.j.index.row_of(&r).ok_or_else(|| {
                Error::LemmaViolation(format!(
                    "r({}) missing from the index",
                    self.matrix.format_subset(t)
                ))
            })?;
            for (c, &other) in self.j.columns.iter().enumerate() {
                let expected = i64::from(t.is_subset(other));
                if self.j.vectors[c].0[row] != expected {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Every edge of `L_⊘` joins orthogonal or comparable vertices.
    pub fn edges_commute(&self) -> bool {
        self.subdivision.faces(1).iter().all(|e| {
            let (a, b) = (self.j.columns[e[0]], self.j.columns[e[1]]);
            matches!(
                position(self.matrix, a, b),
                Position::Orthogonal | Position::Comparable
            )
        })
    }
}

pub fn lattice_intersection_check(
    m: &CoxeterMatrix,
    alpha: &[GenSet],
    beta: &[GenSet],
) -> Result<bool> {
    AbelianComplex::new(m)?.lattice_intersection_check(alpha, beta)
}

pub fn standard_abelian_subgroup(
    m: &CoxeterMatrix,
    alpha: &[GenSet],
) -> Result<StandardAbelianSubgroup> {
    AbelianComplex::new(m)?.standard_abelian_subgroup(alpha)
}

/// `J_α` as explicit generators: the columns `e_T` for `T ∈ α`.
pub fn lattice_generators(j: &JMap, face: &[usize]) -> Vec<EVector> {
    face.iter().map(|&c| j.vectors[c].clone()).collect()
}

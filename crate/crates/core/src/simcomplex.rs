//! Finite abstract simplicial complexes: the nerve, its nested-set subdivision, and
//! octahedralization.

use std::collections::HashSet;

use serde::Serialize;
use serde_json::{json, Value};

use crate::classify::is_spherical_unchecked;
use crate::coxmatrix::CoxeterMatrix;
use crate::error::{Error, Result};
use crate::genset::GenSet;

/// Largest generating set for which the nerve is enumerated.
pub const MAX_NERVE_GENERATORS: usize = 20;

/// A simplex, as the sorted list of its vertex indices.
pub type Face = Vec<usize>;

/// A finite simplicial complex with labeled vertices.
///
/// All faces are stored (not just maximal ones), grouped by dimension and sorted
/// lexicographically within each dimension, so boundary matrices built from the same
/// complex are always identical.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex<V> {
    vertices: Vec<V>,
    faces: Vec<Vec<Face>>,
}

impl<V> SimplicialComplex<V> {
    /// Builds the complex generated by `faces` (closing under nonempty subsets). Every
    /// vertex becomes a 0-simplex even if no listed face mentions it.
    pub fn from_faces<I>(vertices: Vec<V>, faces: I) -> Self
    where
        I: IntoIterator<Item = Face>,
    {
        let n = vertices.len();
        let mut all: HashSet<Face> = (0..n).map(|v| vec![v]).collect();
        for mut face in faces {
            face.sort_unstable();
            face.dedup();
            assert!(face.iter().all(|&v| v < n), "face mentions unknown vertex");
            if face.is_empty() || all.contains(&face) {
                continue;
            }
            // every nonempty subset
            let k = face.len();
            for mask in 1u64..(1u64 << k) {
                let sub: Face = (0..k)
                    .filter(|i| mask & (1 << i) != 0)
                    .map(|i| face[i])
                    .collect();
                all.insert(sub);
            }
        }
        Self::from_closed(vertices, all)
    }

    /// Builds from a family already known to be closed under nonempty subsets.
    fn from_closed<I>(vertices: Vec<V>, faces: I) -> Self
    where
        I: IntoIterator<Item = Face>,
    {
        let mut by_dim: Vec<Vec<Face>> = Vec::new();
        for face in faces {
            let d = face.len() - 1;
            if by_dim.len() <= d {
                by_dim.resize_with(d + 1, Vec::new);
            }
            by_dim[d].push(face);
        }
        for level in &mut by_dim {
            level.sort_unstable();
            level.dedup();
        }
        let complex = SimplicialComplex {
            vertices,
            faces: by_dim,
        };
        debug_assert!(complex.is_closed());
        complex
    }

    fn is_closed(&self) -> bool {
        self.faces.iter().skip(1).flatten().all(|f| {
            (0..f.len()).all(|i| {
                let mut g = f.clone();
                g.remove(i);
                self.contains(&g)
            })
        })
    }

    pub fn vertices(&self) -> &[V] {
        &self.vertices
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    /// Dimension, or `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.faces.len().checked_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// The `k`-faces in canonical order; empty above the dimension.
    pub fn faces(&self, k: usize) -> &[Face] {
        self.faces.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn all_faces(&self) -> impl Iterator<Item = &Face> {
        self.faces.iter().flatten()
    }

    pub fn num_faces(&self) -> usize {
        self.faces.iter().map(Vec::len).sum()
    }

    /// Number of faces in each dimension.
    pub fn f_vector(&self) -> Vec<usize> {
        self.faces.iter().map(Vec::len).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(k, &n)| if k % 2 == 0 { n as i64 } else { -(n as i64) })
            .sum()
    }

    /// Whether the sorted vertex list `face` is a simplex.
    pub fn contains(&self, face: &[usize]) -> bool {
        match face.len() {
            0 => false,
            n => self
                .faces
                .get(n - 1)
                .is_some_and(|level| level.binary_search_by(|f| f.as_slice().cmp(face)).is_ok()),
        }
    }

    /// Position of `face` among the faces of its dimension.
    pub fn face_index(&self, face: &[usize]) -> Option<usize> {
        let level = self.faces.get(face.len().checked_sub(1)?)?;
        level.binary_search_by(|f| f.as_slice().cmp(face)).ok()
    }

    /// Adjacency matrix of the 1-skeleton.
    pub fn adjacency(&self) -> Vec<Vec<bool>> {
        let n = self.vertices.len();
        let mut adj = vec![vec![false; n]; n];
        for e in self.faces(1) {
            adj[e[0]][e[1]] = true;
            adj[e[1]][e[0]] = true;
        }
        adj
    }

    /// Same complex with relabeled vertices.
    pub fn map_labels<W, F: FnMut(&V) -> W>(&self, f: F) -> SimplicialComplex<W> {
        SimplicialComplex {
            vertices: self.vertices.iter().map(f).collect(),
            faces: self.faces.clone(),
        }
    }

    /// `{vertices: [...], faces_by_dim: [[...], ...]}` with faces as lists of vertex indices.
    pub fn to_document<F: FnMut(&V) -> Value>(&self, label: F) -> Value {
        let vertices: Vec<Value> = self.vertices.iter().map(label).collect();
        json!({
            "vertices": vertices,
            "faces_by_dim": self.faces,
        })
    }
}

/// Flag test: every clique of the 1-skeleton spans a simplex.
///
/// It suffices to check that each face extends to a face by every vertex above its largest
/// member that is adjacent to all of it; induction on clique size does the rest.
pub fn is_flag<V>(k: &SimplicialComplex<V>) -> bool {
    let adj = k.adjacency();
    let n = k.num_vertices();
    for level in k.faces.iter().skip(1) {
        for face in level {
            let top = *face.last().unwrap();
            for v in (top + 1..n).filter(|&v| face.iter().all(|&u| adj[u][v])) {
                let mut bigger = face.clone();
                bigger.push(v);
                if !k.contains(&bigger) {
                    return false;
                }
            }
        }
    }
    true
}

/// Nonempty spherical subsets, found by extending spherical sets one generator at a time.
pub fn spherical_subsets(m: &CoxeterMatrix) -> Result<Vec<GenSet>> {
    let n = m.rank();
    if n > MAX_NERVE_GENERATORS {
        return Err(Error::TooManyGenerators {
            what: "nerve enumeration",
            count: n,
            limit: MAX_NERVE_GENERATORS,
        });
    }
    let mut all = Vec::new();
    let mut level: Vec<GenSet> = (0..n).map(GenSet::singleton).collect();
    while !level.is_empty() {
        let known: HashSet<GenSet> = level.iter().copied().collect();
        let mut next = Vec::new();
        for &t in &level {
            for v in t.last().unwrap() + 1..n {
                let bigger = t.with(v);
                let hereditary = bigger
                    .iter()
                    .all(|u| u == v || known.contains(&bigger.without(u)));
                if hereditary && is_spherical_unchecked(m, bigger) {
                    next.push(bigger);
                }
            }
        }
        all.append(&mut level);
        level = next;
    }
    all.sort();
    Ok(all)
}

/// The nerve `L`: vertices are the generators, simplices the nonempty spherical subsets.
pub fn nerve(m: &CoxeterMatrix) -> Result<SimplicialComplex<String>> {
    let faces = spherical_subsets(m)?;
    Ok(SimplicialComplex::from_closed(
        m.generators().to_vec(),
        faces.into_iter().map(GenSet::indices),
    ))
}

/// Irreducible nonempty spherical subsets, ordered by size and then lexicographically.
pub fn s_oslash(m: &CoxeterMatrix) -> Result<Vec<GenSet>> {
    Ok(spherical_subsets(m)?
        .into_iter()
        .filter(|&t| m.is_connected(t))
        .collect())
}

/// Mutual position of two elements of `S_⊘`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Position {
    Equal,
    /// Disjoint and not joined by any diagram edge.
    Orthogonal,
    /// One properly contains the other.
    Comparable,
    Transverse,
}

pub fn position(m: &CoxeterMatrix, a: GenSet, b: GenSet) -> Position {
    if a == b {
        Position::Equal
    } else if a.is_subset(b) || b.is_subset(a) {
        Position::Comparable
    } else if a.is_disjoint(b) && !m.has_edge_between(a, b) {
        Position::Orthogonal
    } else {
        Position::Transverse
    }
}

/// The subdivision `L_⊘`: the flag complex on `S_⊘` whose edges join orthogonal or
/// comparable pairs.
pub fn subdivide(m: &CoxeterMatrix) -> Result<SimplicialComplex<GenSet>> {
    let vertices = s_oslash(m)?;
    let n = vertices.len();
    let adj: Vec<Vec<bool>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    matches!(
                        position(m, vertices[i], vertices[j]),
                        Position::Orthogonal | Position::Comparable
                    )
                })
                .collect()
        })
        .collect();
    let faces = cliques(&adj);
    Ok(SimplicialComplex::from_closed(vertices, faces))
}

/// All nonempty cliques of a graph, each sorted.
fn cliques(adj: &[Vec<bool>]) -> Vec<Face> {
    let n = adj.len();
    let mut out = Vec::new();
    let mut stack: Vec<(Face, Vec<usize>)> = (0..n)
        .map(|v| (vec![v], (v + 1..n).filter(|&u| adj[v][u]).collect()))
        .collect();
    while let Some((clique, candidates)) = stack.pop() {
        for (i, &v) in candidates.iter().enumerate() {
            let mut bigger = clique.clone();
            bigger.push(v);
            let rest = candidates[i + 1..]
                .iter()
                .copied()
                .filter(|&u| adj[v][u])
                .collect();
            stack.push((bigger, rest));
        }
        out.push(clique);
    }
    out
}

/// Decides whether `alpha ⊆ S_⊘` is nested, following the inductive definition directly:
/// the support is spherical, the maximal elements are exactly the irreducible blocks of the
/// support, and everything strictly below each maximal element is again nested.
pub fn nested_oracle(m: &CoxeterMatrix, alpha: &[GenSet]) -> bool {
    let mut family: Vec<GenSet> = alpha.to_vec();
    family.sort();
    family.dedup();
    if family.is_empty() {
        return true;
    }
    let support = family.iter().fold(GenSet::EMPTY, |acc, &t| acc.union(t));
    if !is_spherical_unchecked(m, support) {
        return false;
    }
    let mut maximal: Vec<GenSet> = family
        .iter()
        .copied()
        .filter(|&t| !family.iter().any(|&u| t.is_proper_subset(u)))
        .collect();
    maximal.sort();
    let mut blocks = m.components_unchecked(support);
    blocks.sort();
    if maximal != blocks {
        return false;
    }
    maximal.iter().all(|&top| {
        let below: Vec<GenSet> = family
            .iter()
            .copied()
            .filter(|t| t.is_proper_subset(top))
            .collect();
        nested_oracle(m, &below)
    })
}

/// A vertex of an octahedralization: a vertex of the original complex with a sign.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SignedVertex<V> {
    pub base: V,
    pub sign: i8,
}

/// Doubles every vertex: the faces are all `(σ, ε)` with `σ` a face and `ε` a choice of sign
/// per vertex of `σ`. Vertex `2i` is `(v_i, +1)` and `2i + 1` is `(v_i, -1)`.
pub fn octahedralize<V: Clone>(k: &SimplicialComplex<V>) -> SimplicialComplex<SignedVertex<V>> {
    let vertices: Vec<SignedVertex<V>> = k
        .vertices()
        .iter()
        .flat_map(|v| {
            [1, -1].map(|sign| SignedVertex {
                base: v.clone(),
                sign,
            })
        })
        .collect();
    let mut faces = Vec::new();
    for face in k.all_faces() {
        let len = face.len();
        for signs in 0u64..(1u64 << len) {
            faces.push(
                face.iter()
                    .enumerate()
                    .map(|(i, &v)| 2 * v + ((signs >> i) & 1) as usize)
                    .collect::<Face>(),
            );
        }
    }
    SimplicialComplex::from_closed(vertices, faces)
}

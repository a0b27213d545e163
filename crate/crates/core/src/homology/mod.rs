//! Simplicial (co)homology: reduced Betti numbers over GF(2) and top-degree integral
//! cohomology via Smith normal form.

mod gf2;
mod intmatrix;

pub use gf2::GF2Matrix;
pub use intmatrix::{
    kernel_basis, smith_decomposition, smith_normal_form, solve, solve_with, ColumnEchelon,
    IntMatrix, SmithDecomposition,
};

use num_bigint::BigInt;
use num_traits::One;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::simcomplex::SimplicialComplex;

fn check_dim<V>(k: &SimplicialComplex<V>, dim: usize) -> Result<()> {
    match k.dim() {
        Some(top) if dim <= top => Ok(()),
        top => Err(Error::DimensionOutOfRange {
            k: dim,
            dim: top.map_or(-1, |d| d as isize),
        }),
    }
}

/// `∂_k` over GF(2): rows are the `(k-1)`-faces, columns the `k`-faces.
///
/// For `k = 0` the matrix has a single row; it is the augmentation (all ones) when
/// `augmented` is set and zero otherwise.
pub fn boundary_gf2<V>(k: &SimplicialComplex<V>, dim: usize, augmented: bool) -> Result<GF2Matrix> {
    check_dim(k, dim)?;
    let cols = k.faces(dim);
    if dim == 0 {
        let mut m = GF2Matrix::zeros(1, cols.len());
        if augmented {
            for c in 0..cols.len() {
                m.set(0, c, true);
            }
        }
        return Ok(m);
    }
    let mut m = GF2Matrix::zeros(k.faces(dim - 1).len(), cols.len());
    let mut facet = Vec::with_capacity(dim);
    for (c, face) in cols.iter().enumerate() {
        for i in 0..face.len() {
            facet.clear();
            facet.extend(
                face.iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(_, &v)| v),
            );
            let r = k.face_index(&facet).expect("complex is closed under faces");
            m.set(r, c, true);
        }
    }
    Ok(m)
}

/// `∂_k` over the integers with the alternating sign convention
/// `∂[v_0..v_k] = Σ (-1)^i [v_0..v̂_i..v_k]`. For `k = 0` this is the augmentation row.
pub fn boundary_int<V>(k: &SimplicialComplex<V>, dim: usize) -> Result<IntMatrix> {
    check_dim(k, dim)?;
    let cols = k.faces(dim);
    if dim == 0 {
        return Ok(IntMatrix::from_rows(&[vec![1i64; cols.len()]]));
    }
    let mut m = IntMatrix::zeros(k.faces(dim - 1).len(), cols.len());
    let mut facet = Vec::with_capacity(dim);
    for (c, face) in cols.iter().enumerate() {
        for i in 0..face.len() {
            facet.clear();
            facet.extend(
                face.iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(_, &v)| v),
            );
            let r = k.face_index(&facet).expect("complex is closed under faces");
            m.set(r, c, BigInt::from(if i % 2 == 0 { 1 } else { -1 }));
        }
    }
    Ok(m)
}

/// Reduced Betti numbers `b̃_0, .., b̃_d` with GF(2) coefficients.
pub fn reduced_betti_mod2<V>(k: &SimplicialComplex<V>) -> Result<Vec<usize>> {
    let top = k.dim().ok_or(Error::EmptyComplex)?;
    // ranks[j] = rank of ∂_j, with ∂_0 the augmentation; ranks[top + 1] = 0
    let mut ranks = vec![0usize; top + 2];
    for (dim, rank) in ranks.iter_mut().enumerate().take(top + 1) {
        *rank = boundary_gf2(k, dim, true)?.rank();
    }
    Ok((0..=top)
        .map(|dim| k.faces(dim).len() - ranks[dim] - ranks[dim + 1])
        .collect())
}

/// A finitely generated abelian group `Z^rank ⊕ ⊕ Z/t_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbelianGroup {
    pub rank: usize,
    #[serde(serialize_with = "serialize_bigints")]
    pub torsion: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

fn serialize_bigints<S: Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| match i64::try_from(x) {
        Ok(small) => serde_json::Value::from(small),
        Err(_) => serde_json::Value::from(x.to_string()),
    }))
}

/// `H^d(K; Z)` in the top dimension `d`: the cokernel of the coboundary into `C^d`.
///
/// When `d = 0` the coboundary comes from the augmentation, so the result is reduced
/// cohomology, consistent with [`reduced_betti_mod2`].
pub fn integral_cohomology_top<V>(k: &SimplicialComplex<V>) -> Result<AbelianGroup> {
    let top = k.dim().ok_or(Error::EmptyComplex)?;
    let boundary = boundary_int(k, top)?;
    // ∂_d and its transpose share invariant factors
    let factors = smith_normal_form(&boundary);
    Ok(AbelianGroup {
        rank: k.faces(top).len() - factors.len(),
        torsion: factors.into_iter().filter(|f| !f.is_one()).collect(),
    })
}

/// The homology summary used by the CLI and the action-dimension report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiProfile {
    pub reduced_betti_mod2: Vec<usize>,
    pub top_integral_cohomology: AbelianGroup,
}

pub fn betti_profile<V>(k: &SimplicialComplex<V>) -> Result<BettiProfile> {
    Ok(BettiProfile {
        reduced_betti_mod2: reduced_betti_mod2(k)?,
        top_integral_cohomology: integral_cohomology_top(k)?,
    })
}

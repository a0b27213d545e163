//! Named example inputs, the fixed test corpus, and seeded random Coxeter matrices.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::classify::FiniteType;
use crate::coxmatrix::{CoxeterDocument, CoxeterMatrix, Label, Relation};
use crate::error::{Error, Result};

/// Triangles of a 9-vertex triangulation of the projective plane.
///
/// With label 3 on [`RP2_BRAID_EDGES`], label 2 on the remaining edges and `∞` on non-edges,
/// the spherical subsets are exactly these triangles and their faces. (The 6-vertex
/// triangulation is 2-neighborly, and no labeling of `K_6` makes exactly its ten triangles
/// spherical.)
pub const RP2_TRIANGLES: [[usize; 3]; 16] = [
    [0, 1, 5],
    [0, 1, 6],
    [0, 2, 6],
    [0, 2, 8],
    [0, 4, 5],
    [0, 4, 8],
    [1, 3, 4],
    [1, 3, 5],
    [1, 4, 6],
    [2, 3, 7],
    [2, 3, 8],
    [2, 4, 6],
    [2, 4, 7],
    [3, 4, 8],
    [3, 5, 7],
    [4, 5, 7],
];

pub const RP2_BRAID_EDGES: [[usize; 2]; 16] = [
    [0, 1],
    [0, 2],
    [0, 4],
    [0, 6],
    [1, 4],
    [1, 5],
    [2, 3],
    [2, 4],
    [2, 8],
    [3, 4],
    [3, 5],
    [3, 7],
    [4, 5],
    [4, 6],
    [4, 7],
    [4, 8],
];

/// The fixed names accepted by [`generate_example`]; `n` and `p` are decimal parameters.
pub const EXAMPLE_NAMES: [&str; 14] = [
    "a_n",
    "b_n",
    "d_n",
    "e6",
    "e7",
    "e8",
    "f4",
    "h3",
    "h4",
    "i2_p",
    "raag-cycle-n",
    "pentagon-3",
    "two-points-inf",
    "rp2-nerve",
];

/// `a, b, .., z`, then `s26, s27, ..` past the alphabet.
pub fn generator_names(n: usize) -> Vec<String> {
    (0..n)
        .map(|i| match u8::try_from(i) {
            Ok(i) if i < 26 => char::from(b'a' + i).to_string(),
            _ => format!("s{i}"),
        })
        .collect()
}

fn parameter(name: &str, prefix: &str) -> Option<usize> {
    let digits = name.strip_prefix(prefix)?;
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    digits.parse().ok()
}

fn finite(ty: FiniteType) -> Result<CoxeterMatrix> {
    ty.coxeter_matrix(generator_names(ty.rank()))
}

/// A matrix with default `∞` and the listed finite labels.
fn sparse(n: usize, edges: impl IntoIterator<Item = (usize, usize, u32)>) -> Result<CoxeterMatrix> {
    CoxeterMatrix::new(
        generator_names(n),
        Label::Infinite,
        edges.into_iter().map(|(s, t, m)| (s, t, Label::Finite(m))),
    )
}

fn rp2_nerve() -> Result<CoxeterMatrix> {
    let mut edges = std::collections::BTreeSet::new();
    for t in RP2_TRIANGLES {
        edges.extend([(t[0], t[1]), (t[0], t[2]), (t[1], t[2])]);
    }
    sparse(
        9,
        edges.into_iter().map(|(s, t)| {
            let m = if RP2_BRAID_EDGES.contains(&[s, t]) {
                3
            } else {
                2
            };
            (s, t, m)
        }),
    )
}

/// Builds the named example matrix.
pub fn example_matrix(name: &str) -> Result<CoxeterMatrix> {
    let unknown = || Error::UnknownExample(name.to_string());
    let ty = |t: FiniteType| {
        if t.is_valid() {
            finite(t)
        } else {
            Err(unknown())
        }
    };
    match name {
        "e6" => return finite(FiniteType::E6),
        "e7" => return finite(FiniteType::E7),
        "e8" => return finite(FiniteType::E8),
        "f4" => return finite(FiniteType::F4),
        "h3" => return finite(FiniteType::H3),
        "h4" => return finite(FiniteType::H4),
        "pentagon-3" => return sparse(5, (0..5).map(|i| (i, (i + 1) % 5, 3))),
        "two-points-inf" => return sparse(2, []),
        "rp2-nerve" => return rp2_nerve(),
        _ => {}
    }
    if let Some(n) = parameter(name, "a_") {
        ty(FiniteType::A(n))
    } else if let Some(n) = parameter(name, "b_") {
        ty(FiniteType::B(n))
    } else if let Some(n) = parameter(name, "d_") {
        ty(FiniteType::D(n))
    } else if let Some(p) = parameter(name, "i2_") {
        let p = u32::try_from(p).map_err(|_| unknown())?;
        if p < 3 {
            return Err(unknown());
        }
        CoxeterMatrix::new(
            generator_names(2),
            Label::Finite(2),
            [(0, 1, Label::Finite(p))],
        )
    } else if let Some(n) = parameter(name, "raag-cycle-") {
        if n < 3 {
            return Err(unknown());
        }
        sparse(n, (0..n).map(|i| (i, (i + 1) % n, 2)))
    } else {
        Err(unknown())
    }
}

/// The named example as an input document. Examples whose nerve is sparse use default `∞`.
pub fn generate_example(name: &str) -> Result<CoxeterDocument> {
    let m = example_matrix(name)?;
    let infinite_default = name.starts_with("raag-cycle-")
        || matches!(name, "pentagon-3" | "two-points-inf" | "rp2-nerve");
    if !infinite_default {
        return Ok(m.to_document());
    }
    let n = m.rank();
    let mut relations = Vec::new();
    for s in 0..n {
        for t in s + 1..n {
            if m.m(s, t).is_finite() {
                relations.push(Relation {
                    pair: [m.name(s).to_string(), m.name(t).to_string()],
                    m: m.m(s, t),
                });
            }
        }
    }
    Ok(CoxeterDocument {
        generators: m.generators().to_vec(),
        default: Some(Label::Infinite),
        relations,
    })
}

/// The fixed corpus used by the verification suite, as `(name, matrix)` pairs.
pub fn corpus() -> Vec<(String, CoxeterMatrix)> {
    let mut out: Vec<(String, CoxeterMatrix)> = [
        "a_1",
        "a_2",
        "a_3",
        "a_4",
        "a_5",
        "b_3",
        "b_4",
        "d_4",
        "f4",
        "h3",
        "h4",
        "i2_5",
        "i2_6",
        "raag-cycle-4",
        "raag-cycle-5",
        "pentagon-3",
        "two-points-inf",
        "rp2-nerve",
    ]
    .into_iter()
    .map(|name| {
        (
            name.to_string(),
            example_matrix(name).expect("builtin example"),
        )
    })
    .collect();
    let extra = [
        (
            "a1xa1",
            CoxeterMatrix::new(generator_names(2), Label::Finite(2), []),
        ),
        (
            "affine-a2",
            CoxeterMatrix::new(
                generator_names(3),
                Label::Finite(2),
                [
                    (0, 1, Label::Finite(3)),
                    (1, 2, Label::Finite(3)),
                    (0, 2, Label::Finite(3)),
                ],
            ),
        ),
        (
            "a2-inf-a1",
            CoxeterMatrix::new(
                generator_names(3),
                Label::Finite(2),
                [(0, 1, Label::Finite(3)), (1, 2, Label::Infinite)],
            ),
        ),
        (
            "b3-star",
            CoxeterMatrix::new(
                generator_names(5),
                Label::Infinite,
                [
                    (0, 1, Label::Finite(3)),
                    (1, 2, Label::Finite(4)),
                    (0, 2, Label::Finite(2)),
                    (2, 3, Label::Finite(2)),
                    (3, 4, Label::Finite(5)),
                ],
            ),
        ),
    ];
    out.extend(
        extra
            .into_iter()
            .map(|(n, m)| (n.to_string(), m.expect("corpus matrix"))),
    );
    out
}

pub const RANDOM_LABELS: [Label; 5] = [
    Label::Finite(2),
    Label::Finite(3),
    Label::Finite(4),
    Label::Finite(5),
    Label::Infinite,
];

/// A random Coxeter matrix on `1..=max_generators` generators with labels drawn uniformly
/// from [`RANDOM_LABELS`].
pub fn random_matrix<R: Rng>(rng: &mut R, max_generators: usize) -> CoxeterMatrix {
    let n = rng.gen_range(1..=max_generators.max(1));
    let mut pairs = Vec::new();
    for s in 0..n {
        for t in s + 1..n {
            pairs.push((s, t, RANDOM_LABELS[rng.gen_range(0..RANDOM_LABELS.len())]));
        }
    }
    CoxeterMatrix::new(generator_names(n), Label::Finite(2), pairs).expect("valid labels")
}

/// `count` random matrices from a ChaCha stream seeded with `seed`.
pub fn random_matrices(seed: u64, count: usize, max_generators: usize) -> Vec<CoxeterMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| random_matrix(&mut rng, max_generators))
        .collect()
}

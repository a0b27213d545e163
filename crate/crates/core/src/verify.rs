//! The verification suite: structural facts about `S_⊘`, `L_⊘` and the map `j` that hold
//! for every Coxeter system, checked on concrete matrices.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde::Serialize;

use crate::abelian::AbelianComplex;
use crate::builtin::{corpus, random_matrices};
use crate::classify::{catalog, recognize_connected};
use crate::coxmatrix::{CoxeterMatrix, Label};
use crate::error::Result;
use crate::genset::GenSet;
use crate::homology::reduced_betti_mod2;
use crate::rootsys::{choose_r, form_entry, longest_element, positive_roots, MAX_ROOT_RANK};
use crate::simcomplex::{is_flag, nerve, nested_oracle, Face};

pub const REFLECTION_CHOICE: &str = "reflection-choice-injective";
pub const SUBDIVISION_FLAG: &str = "subdivision-flag";
pub const E_VECTOR_COUNT: &str = "e-vector-count";
pub const J_MAP_RANK: &str = "j-map-rank";
pub const LATTICE_INTERSECTIONS: &str = "lattice-intersections";
pub const ABELIAN_SUBGROUP_RANK: &str = "abelian-subgroup-rank";
pub const NESTED_EQUIVALENCE: &str = "nested-equivalence";
pub const SUBDIVISION_BETTI: &str = "subdivision-betti";
pub const CLASSIFICATION_ORACLE: &str = "classification-oracle";
pub const CENTERLESS_INVOLUTION: &str = "centerless-involution";

/// Check names in report order.
pub const CHECKS: [&str; 10] = [
    REFLECTION_CHOICE,
    SUBDIVISION_FLAG,
    E_VECTOR_COUNT,
    J_MAP_RANK,
    LATTICE_INTERSECTIONS,
    ABELIAN_SUBGROUP_RANK,
    NESTED_EQUIVALENCE,
    SUBDIVISION_BETTI,
    CLASSIFICATION_ORACLE,
    CENTERLESS_INVOLUTION,
];

/// Tolerance for the leading principal minors of the cosine matrix.
pub const MINOR_TOLERANCE: f64 = 1e-9;

/// Largest connected subset handed to the classification oracle.
pub const ORACLE_MAX_RANK: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail(String),
    Skipped(String),
}

impl Outcome {
    fn from_failures(failures: Vec<String>) -> Outcome {
        match failures.into_iter().next() {
            None => Outcome::Pass,
            Some(first) => Outcome::Fail(first),
        }
    }
}

/// Limits that keep the suite fast on larger inputs.
#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    /// Lattice intersections are checked for every pair of faces only up to this many
    /// faces of `L_⊘`.
    pub max_lattice_faces: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            max_lattice_faces: 2000,
        }
    }
}

type MatrixOutcomes = Vec<(&'static str, Outcome)>;

/// Runs every check on one matrix, in [`CHECKS`] order.
pub fn check_matrix(m: &CoxeterMatrix, options: &VerifyOptions) -> Result<MatrixOutcomes> {
    let ac = AbelianComplex::new(m)?;
    let mut out = vec![
        (REFLECTION_CHOICE, reflection_choice(m, &ac.j.columns)?),
        (SUBDIVISION_FLAG, subdivision_flag(&ac)),
        (E_VECTOR_COUNT, e_vector_count(m, &ac)?),
        (J_MAP_RANK, j_map_rank(&ac)),
    ];
    out.push((LATTICE_INTERSECTIONS, lattice_intersections(&ac, options)));
    out.push((ABELIAN_SUBGROUP_RANK, abelian_subgroup_rank(m, &ac)?));
    out.push((NESTED_EQUIVALENCE, nested_equivalence(m, &ac)));
    out.push((SUBDIVISION_BETTI, subdivision_betti(m, &ac)?));
    out.push((CLASSIFICATION_ORACLE, classification_oracle(m)?));
    out.push((
        CENTERLESS_INVOLUTION,
        centerless_involution(m, &ac.j.columns)?,
    ));
    Ok(out)
}

/// `r(T)` has support exactly `T`, so distinct `T` give distinct reflections.
fn reflection_choice(m: &CoxeterMatrix, soslash: &[GenSet]) -> Result<Outcome> {
    let mut seen = HashSet::new();
    for &t in soslash {
        let r = choose_r(m, t)?;
        if r.support != t {
            return Ok(Outcome::Fail(format!(
                "r({}) has support {}",
                m.format_subset(t),
                m.format_subset(r.support)
            )));
        }
        if !seen.insert(r.key()) {
            return Ok(Outcome::Fail(format!("r({}) repeats", m.format_subset(t))));
        }
    }
    Ok(Outcome::Pass)
}

fn subdivision_flag(ac: &AbelianComplex) -> Outcome {
    if !is_flag(&ac.subdivision) {
        Outcome::Fail("L_⊘ is not a flag complex".into())
    } else if !ac.edges_commute() {
        Outcome::Fail("an edge of L_⊘ joins a transverse pair".into())
    } else {
        Outcome::Pass
    }
}

/// `e_T` has one entry per reflection of `W_T`, and `e_{T'}` pairs with `e_{r(T)}` to
/// `[T ⊆ T']`.
fn e_vector_count(m: &CoxeterMatrix, ac: &AbelianComplex) -> Result<Outcome> {
    let mut failures = Vec::new();
    for (c, &t) in ac.j.columns.iter().enumerate() {
        let weight = ac.j.vectors[c].weight() as usize;
        match recognize_connected(m, t) {
            Some(ty) if catalog(ty).num_reflections == weight => {}
            Some(ty) => failures.push(format!(
                "e_{} has weight {weight}, {ty} has {} reflections",
                m.format_subset(t),
                catalog(ty).num_reflections
            )),
            None => failures.push(format!("{} is not of finite type", m.format_subset(t))),
        }
        if ac.j.vectors[c].0.iter().any(|&x| x != 0 && x != 1) {
            failures.push(format!("e_{} is not a 0/1 vector", m.format_subset(t)));
        }
    }
    if !ac.pairing_identity_holds()? {
        failures.push("e_T' . e_r(T) differs from [T ⊆ T']".into());
    }
    Ok(Outcome::from_failures(failures))
}

fn j_map_rank(ac: &AbelianComplex) -> Outcome {
    let rank = ac.j.rank();
    if rank == ac.j.columns.len() {
        Outcome::Pass
    } else {
        Outcome::Fail(format!("rank {rank} < |S_⊘| = {}", ac.j.columns.len()))
    }
}

fn lattice_intersections(ac: &AbelianComplex, options: &VerifyOptions) -> Outcome {
    let faces: Vec<&Face> = ac.subdivision.all_faces().collect();
    if faces.len() > options.max_lattice_faces {
        return Outcome::Skipped(format!(
            "{} faces exceeds the limit of {}",
            faces.len(),
            options.max_lattice_faces
        ));
    }
    for (i, alpha) in faces.iter().enumerate() {
        for beta in &faces[i + 1..] {
            // nested pairs intersect in the smaller lattice
            if is_sub(alpha, beta) || is_sub(beta, alpha) {
                continue;
            }
            if !ac.lattice_intersection_holds(alpha, beta) {
                return Outcome::Fail(format!("faces {alpha:?} and {beta:?}"));
            }
        }
    }
    Outcome::Pass
}

fn is_sub(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.binary_search(x).is_ok())
}

/// Every simplex `α` of `L_⊘` gives linearly independent `e_T`, and the largest such rank
/// is `dim L + 1`.
fn abelian_subgroup_rank(m: &CoxeterMatrix, ac: &AbelianComplex) -> Result<Outcome> {
    let top = ac.subdivision.dim().unwrap_or(0);
    let maximal: Vec<&Face> = ac
        .subdivision
        .all_faces()
        .filter(|f| {
            let n = ac.subdivision.num_vertices();
            (0..n).all(|v| {
                f.contains(&v) || {
                    let mut g = (*f).clone();
                    g.push(v);
                    g.sort_unstable();
                    !ac.subdivision.contains(&g)
                }
            })
        })
        .collect();
    for face in &maximal {
        // independence of a maximal simplex covers all of its faces
        if !ac.columns_independent(face) {
            return Ok(Outcome::Fail(format!("e_T dependent on face {face:?}")));
        }
    }
    let nerve_dim = nerve(m)?.dim().unwrap_or(0);
    if top != nerve_dim {
        return Ok(Outcome::Fail(format!(
            "dim L_⊘ = {top}, dim L = {nerve_dim}"
        )));
    }
    Ok(Outcome::Pass)
}

/// Every face of `L_⊘` is accepted by the literal nested-set definition, and every accepted
/// family is a face. Nestedness is inherited by subfamilies, so accepted families are
/// enumerated by extension.
fn nested_equivalence(m: &CoxeterMatrix, ac: &AbelianComplex) -> Outcome {
    let vertices = &ac.j.columns;
    let faces: BTreeSet<Face> = ac.subdivision.all_faces().cloned().collect();
    let mut accepted: BTreeSet<Face> = BTreeSet::new();
    let mut stack: Vec<Face> = (0..vertices.len()).map(|v| vec![v]).collect();
    while let Some(face) = stack.pop() {
        let family: Vec<GenSet> = face.iter().map(|&i| vertices[i]).collect();
        if !nested_oracle(m, &family) {
            continue;
        }
        for v in face.last().unwrap() + 1..vertices.len() {
            let mut bigger = face.clone();
            bigger.push(v);
            stack.push(bigger);
        }
        accepted.insert(face);
    }
    if let Some(f) = faces.difference(&accepted).next() {
        return Outcome::Fail(format!("face {f:?} rejected by the nested-set definition"));
    }
    if let Some(f) = accepted.difference(&faces).next() {
        return Outcome::Fail(format!("nested family {f:?} is not a face"));
    }
    Outcome::Pass
}

fn subdivision_betti(m: &CoxeterMatrix, ac: &AbelianComplex) -> Result<Outcome> {
    let l = nerve(m)?;
    let lhs = reduced_betti_mod2(&l)?;
    let rhs = reduced_betti_mod2(&ac.subdivision)?;
    Ok(if lhs != rhs {
        Outcome::Fail(format!("L has {lhs:?}, L_⊘ has {rhs:?}"))
    } else if l.euler_characteristic() != ac.subdivision.euler_characteristic() {
        Outcome::Fail("Euler characteristics differ".into())
    } else {
        Outcome::Pass
    })
}

/// Leading principal minors of the cosine matrix `(-cos(π/m_st))`, by Gaussian elimination
/// without pivoting. Positive definiteness is equivalent to all of them being positive.
pub fn cosine_matrix_positive_definite(m: &CoxeterMatrix, t: GenSet) -> bool {
    let members = t.indices();
    let n = members.len();
    if members.iter().enumerate().any(|(i, &s)| {
        members[i + 1..]
            .iter()
            .any(|&u| m.m(s, u) == Label::Infinite)
    }) {
        return false;
    }
    let mut a: Vec<Vec<f64>> = members
        .iter()
        .map(|&s| members.iter().map(|&u| form_entry(m, s, u)).collect())
        .collect();
    // the k-th pivot is the ratio of consecutive leading minors
    let mut minor = 1.0;
    for k in 0..n {
        let pivot = a[k][k];
        minor *= pivot;
        if minor <= MINOR_TOLERANCE {
            return false;
        }
        for i in k + 1..n {
            let f = a[i][k] / pivot;
            let (upper, lower) = a.split_at_mut(i);
            for (x, y) in lower[0][k..].iter_mut().zip(&upper[k][k..]) {
                *x -= f * y;
            }
        }
    }
    true
}

/// Exact tree matching agrees with positive definiteness on every connected subset of rank
/// at most [`ORACLE_MAX_RANK`], and the catalog count matches root enumeration.
fn classification_oracle(m: &CoxeterMatrix) -> Result<Outcome> {
    let n = m.rank();
    let mut failures = Vec::new();
    let limit = ORACLE_MAX_RANK.min(n);
    let mut level: Vec<GenSet> = (0..n).map(GenSet::singleton).collect();
    for size in 1..=limit {
        for &t in &level {
            let recognized = recognize_connected(m, t);
            let definite = cosine_matrix_positive_definite(m, t);
            if recognized.is_some() != definite {
                failures.push(format!(
                    "{}: matcher says {recognized:?}, cosine matrix definite = {definite}",
                    m.format_subset(t)
                ));
            }
            if let Some(ty) = recognized {
                if size <= MAX_ROOT_RANK {
                    let count = positive_roots(m, t)?.len();
                    if count != catalog(ty).num_reflections {
                        failures.push(format!("{ty}: {count} positive roots"));
                    }
                }
            }
        }
        if size == limit {
            break;
        }
        let mut next = BTreeSet::new();
        for &t in &level {
            for v in 0..n {
                if !t.contains(v) && t.iter().any(|u| m.adjacent(u, v)) {
                    next.insert(t.with(v));
                }
            }
        }
        level = next.into_iter().collect();
    }
    Ok(Outcome::from_failures(failures))
}

/// The diagram involution of `w_T` is nontrivial exactly for the centerless types.
fn centerless_involution(m: &CoxeterMatrix, soslash: &[GenSet]) -> Result<Outcome> {
    let mut failures = Vec::new();
    for &t in soslash {
        let Some(ty) = recognize_connected(m, t) else {
            continue;
        };
        let w = longest_element(m, t)?;
        if w.involution_is_trivial() == catalog(ty).centerless {
            failures.push(format!("{ty} on {}", m.format_subset(t)));
        }
        if w.length != catalog(ty).num_reflections {
            failures.push(format!("{ty}: longest element has length {}", w.length));
        }
    }
    Ok(Outcome::from_failures(failures))
}

/// Aggregated results for one check across all matrices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CheckSummary {
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub matrices: usize,
    pub checks: BTreeMap<String, CheckSummary>,
    pub errors: Vec<String>,
    pub all_passed: bool,
}

/// Largest number of failure messages kept per check.
const MAX_REPORTED_FAILURES: usize = 10;

/// Runs the suite on named matrices, fanning out over worker threads. The report does not
/// depend on the number of threads.
pub fn run_suite(
    matrices: &[(String, CoxeterMatrix)],
    seed: u64,
    options: &VerifyOptions,
) -> VerifyReport {
    let workers = std::thread::available_parallelism()
        .map_or(1, |n| n.get())
        .min(matrices.len().max(1));
    let mut results: Vec<Option<Result<MatrixOutcomes>>> = Vec::new();
    results.resize_with(matrices.len(), || None);
    std::thread::scope(|scope| {
        let chunk = matrices.len().div_ceil(workers).max(1);
        for (slots, inputs) in results.chunks_mut(chunk).zip(matrices.chunks(chunk)) {
            scope.spawn(move || {
                for (slot, (_, m)) in slots.iter_mut().zip(inputs) {
                    *slot = Some(check_matrix(m, options));
                }
            });
        }
    });

    let mut checks: BTreeMap<String, CheckSummary> = CHECKS
        .iter()
        .map(|c| (c.to_string(), CheckSummary::default()))
        .collect();
    let mut errors = Vec::new();
    for ((name, _), result) in matrices.iter().zip(results) {
        match result.expect("every slot is filled") {
            Ok(outcomes) => {
                for (check, outcome) in outcomes {
                    let summary = checks.get_mut(check).expect("known check");
                    match outcome {
                        Outcome::Pass => summary.passed += 1,
                        Outcome::Skipped(_) => summary.skipped += 1,
                        Outcome::Fail(why) => {
                            summary.failed += 1;
                            if summary.failures.len() < MAX_REPORTED_FAILURES {
                                summary.failures.push(format!("{name}: {why}"));
                            }
                        }
                    }
                }
            }
            Err(e) => errors.push(format!("{name}: {e}")),
        }
    }
    let all_passed = errors.is_empty() && checks.values().all(|c| c.failed == 0);
    VerifyReport {
        seed,
        matrices: matrices.len(),
        checks,
        errors,
        all_passed,
    }
}

/// The matrices the `verify` command runs on: an optional input, the fixed corpus, and
/// `random_count` seeded random matrices on at most `max_random_generators` generators.
pub fn suite_matrices(
    input: Option<&CoxeterMatrix>,
    seed: u64,
    random_count: usize,
    max_random_generators: usize,
) -> Vec<(String, CoxeterMatrix)> {
    let mut out = Vec::new();
    if let Some(m) = input {
        out.push(("input".to_string(), m.clone()));
    }
    out.extend(corpus());
    out.extend(
        random_matrices(seed, random_count, max_random_generators)
            .into_iter()
            .enumerate()
            .map(|(i, m)| (format!("random-{seed}-{i}"), m)),
    );
    out
}

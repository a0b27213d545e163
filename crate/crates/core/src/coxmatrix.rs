//! Coxeter matrices, their diagrams, and decomposition of generator subsets into
//! irreducible blocks.

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::genset::{GenSet, MAX_GENERATORS};

/// An off-diagonal entry `m_st` of a Coxeter matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Finite(u32),
    Infinite,
}

impl Label {
    /// Whether the pair is joined in the Coxeter diagram (`m_st > 2`, including ∞).
    pub fn is_edge(self) -> bool {
        !matches!(self, Label::Finite(m) if m <= 2)
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Label::Finite(_))
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Finite(m) => write!(f, "{m}"),
            Label::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Label {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Label::Finite(m) => serializer.serialize_u32(*m),
            Label::Infinite => serializer.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Label {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct LabelVisitor;

        impl Visitor<'_> for LabelVisitor {
            type Value = Label;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a nonnegative integer or the string \"inf\"")
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Label, E> {
                u32::try_from(v)
                    .map(Label::Finite)
                    .map_err(|_| E::custom(format!("label {v} is too large")))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Label, E> {
                u64::try_from(v)
                    .map_err(|_| E::custom(format!("label {v} is negative")))
                    .and_then(|v| self.visit_u64(v))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Label, E> {
                match v {
                    "inf" => Ok(Label::Infinite),
                    _ => Err(E::invalid_value(de::Unexpected::Str(v), &self)),
                }
            }
        }

        deserializer.deserialize_any(LabelVisitor)
    }
}

/// One entry of the `relations` array of an input document.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Relation {
    pub pair: [String; 2],
    pub m: Label,
}

/// The on-disk form of a Coxeter matrix.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoxeterDocument {
    pub generators: Vec<String>,
    #[serde(default)]
    pub default: Option<Label>,
    pub relations: Vec<Relation>,
}

/// A Coxeter matrix on a finite ordered set of named generators.
///
/// Generators are indexed `0..n` in input order. The diagonal is implicitly 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoxeterMatrix {
    names: Vec<String>,
    labels: Vec<Label>,
}

/// An edge of the Coxeter diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DiagramEdge {
    pub s: usize,
    pub t: usize,
    pub label: Label,
}

/// The Coxeter diagram: an edge between `s` and `t` whenever `m_st > 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagram {
    pub vertices: Vec<String>,
    pub edges: Vec<DiagramEdge>,
}

impl CoxeterMatrix {
    /// Builds a matrix where every pair takes `default` unless overridden in `pairs`.
    pub fn new<I>(names: Vec<String>, default: Label, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, Label)>,
    {
        if names.is_empty() {
            return Err(Error::NoGenerators);
        }
        if names.len() > MAX_GENERATORS {
            return Err(Error::TooManyGenerators {
                what: "Coxeter matrix",
                count: names.len(),
                limit: MAX_GENERATORS,
            });
        }
        let mut seen = HashSet::new();
        for name in &names {
            if name.is_empty() {
                return Err(Error::EmptyGeneratorName);
            }
            if !seen.insert(name.as_str()) {
                return Err(Error::DuplicateGenerator(name.clone()));
            }
        }
        if !matches!(default, Label::Finite(2) | Label::Infinite) {
            return Err(Error::InvalidDefault(default.to_string()));
        }

        let n = names.len();
        let mut labels = vec![default; n * n];
        for i in 0..n {
            labels[i * n + i] = Label::Finite(1);
        }
        let mut assigned = HashSet::new();
        for (s, t, m) in pairs {
            if s >= n {
                return Err(Error::GeneratorIndex(s));
            }
            if t >= n {
                return Err(Error::GeneratorIndex(t));
            }
            if s == t {
                return Err(Error::DiagonalRelation(names[s].clone()));
            }
            if matches!(m, Label::Finite(v) if v < 2) {
                return Err(Error::InvalidLabel {
                    s: names[s].clone(),
                    t: names[t].clone(),
                    label: m.to_string(),
                });
            }
            if !assigned.insert((s.min(t), s.max(t))) {
                return Err(Error::DuplicatePair(names[s].clone(), names[t].clone()));
            }
            labels[s * n + t] = m;
            labels[t * n + s] = m;
        }
        Ok(CoxeterMatrix { names, labels })
    }

    pub fn from_document(doc: &CoxeterDocument) -> Result<Self> {
        let default = doc.default.ok_or(Error::MissingDefault)?;
        let index: HashMap<&str, usize> = doc
            .generators
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_str(), i))
            .collect();
        let lookup = |name: &String| {
            index
                .get(name.as_str())
                .copied()
                .ok_or_else(|| Error::UnknownGenerator(name.clone()))
        };
        let mut pairs = Vec::with_capacity(doc.relations.len());
        for rel in &doc.relations {
            pairs.push((lookup(&rel.pair[0])?, lookup(&rel.pair[1])?, rel.m));
        }
        CoxeterMatrix::new(doc.generators.clone(), default, pairs)
    }

    /// Serializes with default 2 and one relation per pair whose label is not 2.
    pub fn to_document(&self) -> CoxeterDocument {
        let n = self.rank();
        let mut relations = Vec::new();
        for s in 0..n {
            for t in s + 1..n {
                let m = self.m(s, t);
                if m != Label::Finite(2) {
                    relations.push(Relation {
                        pair: [self.names[s].clone(), self.names[t].clone()],
                        m,
                    });
                }
            }
        }
        CoxeterDocument {
            generators: self.names.clone(),
            default: Some(Label::Finite(2)),
            relations,
        }
    }

    /// Number of generators.
    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn generators(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|s| s == name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    /// The entry `m_st`; 1 on the diagonal.
    pub fn m(&self, s: usize, t: usize) -> Label {
        self.labels[s * self.rank() + t]
    }

    pub fn adjacent(&self, s: usize, t: usize) -> bool {
        s != t && self.m(s, t).is_edge()
    }

    /// The set of all generators.
    pub fn all(&self) -> GenSet {
        GenSet::full(self.rank())
    }

    pub fn subset<'a, I>(&self, names: I) -> Result<GenSet>
    where
        I: IntoIterator<Item = &'a str>,
    {
        names
            .into_iter()
            .map(|name| self.index_of(name))
            .collect::<Result<Vec<_>>>()
            .map(|v| v.into_iter().collect())
    }

    /// Fails if `t` mentions an index beyond the generator range.
    pub fn check_subset(&self, t: GenSet) -> Result<()> {
        match t.last() {
            Some(i) if i >= self.rank() => Err(Error::GeneratorIndex(i)),
            _ => Ok(()),
        }
    }

    /// Renders a subset as `{a,b,c}`.
    pub fn format_subset(&self, t: GenSet) -> String {
        let names: Vec<&str> = t
            .iter()
            .map(|i| self.names.get(i).map_or("?", String::as_str))
            .collect();
        format!("{{{}}}", names.join(","))
    }

    pub fn subset_names(&self, t: GenSet) -> Vec<String> {
        t.iter().map(|i| self.names[i].clone()).collect()
    }

    pub fn diagram(&self) -> Diagram {
        let n = self.rank();
        let mut edges = Vec::new();
        for s in 0..n {
            for t in s + 1..n {
                if self.adjacent(s, t) {
                    edges.push(DiagramEdge {
                        s,
                        t,
                        label: self.m(s, t),
                    });
                }
            }
        }
        Diagram {
            vertices: self.names.clone(),
            edges,
        }
    }

    /// Connected components of the diagram restricted to `t`, ordered by smallest member.
    pub fn components(&self, t: GenSet) -> Result<Vec<GenSet>> {
        self.check_subset(t)?;
        Ok(self.components_unchecked(t))
    }

    pub(crate) fn components_unchecked(&self, t: GenSet) -> Vec<GenSet> {
        let mut remaining = t;
        let mut blocks = Vec::new();
        while let Some(start) = remaining.first() {
            let mut block = GenSet::singleton(start);
            let mut frontier = vec![start];
            while let Some(s) = frontier.pop() {
                for u in remaining.iter() {
                    if !block.contains(u) && self.adjacent(s, u) {
                        block.insert(u);
                        frontier.push(u);
                    }
                }
            }
            remaining = remaining.difference(block);
            blocks.push(block);
        }
        blocks
    }

    pub fn is_connected(&self, t: GenSet) -> bool {
        self.components_unchecked(t).len() == 1
    }

    /// Whether some diagram edge joins a member of `a` to a member of `b`.
    pub fn has_edge_between(&self, a: GenSet, b: GenSet) -> bool {
        a.iter().any(|s| b.iter().any(|t| self.adjacent(s, t)))
    }
}

/// Parses a JSON input document into a validated Coxeter matrix.
pub fn parse_coxeter_matrix(text: &str) -> Result<CoxeterMatrix> {
    let doc: CoxeterDocument = serde_json::from_str(text)?;
    CoxeterMatrix::from_document(&doc)
}

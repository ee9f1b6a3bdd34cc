use std::fmt::Write as _;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use super::Lattice;
use crate::error::LatticeError;

/// On-disk lattice format: element names plus cover pairs `[lower, upper]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeSpec {
    pub name: String,
    pub elements: Vec<String>,
    pub covers: Vec<(String, String)>,
}

impl Lattice {
    /// Validates a spec; the order is the reflexive-transitive closure of
    /// the listed pairs.
    pub fn from_spec(spec: &LatticeSpec, limit: usize) -> Result<Lattice, LatticeError> {
        let n = spec.elements.len();
        if n > limit {
            return Err(LatticeError::SizeLimitExceeded { size: n, limit });
        }
        if n == 0 {
            return Err(LatticeError::Empty);
        }
        let mut index = std::collections::HashMap::with_capacity(n);
        for (i, s) in spec.elements.iter().enumerate() {
            if index.insert(s.as_str(), i).is_some() {
                return Err(LatticeError::DuplicateName(s.clone()));
            }
        }
        let pos = |s: &str| {
            index
                .get(s)
                .copied()
                .ok_or_else(|| LatticeError::UnknownElement(s.to_string()))
        };
        let mut up = vec![FixedBitSet::with_capacity(n); n];
        for (i, row) in up.iter_mut().enumerate() {
            row.insert(i);
        }
        for (a, b) in &spec.covers {
            let (i, j) = (pos(a)?, pos(b)?);
            if i == j {
                return Err(LatticeError::NotAPoset(a.clone(), b.clone()));
            }
            up[i].insert(j);
        }
        // Warshall: whenever i ≤ k, everything above k is above i.
        for k in 0..n {
            let above_k = up[k].clone();
            for row in up.iter_mut() {
                if row.contains(k) {
                    row.union_with(&above_k);
                }
            }
        }
        let (lattice, _) = Lattice::from_order(spec.name.clone(), spec.elements.clone(), up)?;
        Ok(lattice)
    }

    pub fn from_json(text: &str, limit: usize) -> Result<Lattice, LatticeError> {
        let spec: LatticeSpec =
            serde_json::from_str(text).map_err(|e| LatticeError::Parse(e.to_string()))?;
        Lattice::from_spec(&spec, limit)
    }

    /// Canonical element order and sorted covers.
    pub fn to_spec(&self) -> LatticeSpec {
        LatticeSpec {
            name: self.name.clone(),
            elements: self.names.clone(),
            covers: self.cover_names(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_spec()).expect("spec serializes")
    }

    /// Hasse diagram in Graphviz DOT, bottom at the lowest rank.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        writeln!(out, "digraph {} {{", quote(&self.name)).unwrap();
        out.push_str("  rankdir=BT;\n  node [shape=plaintext];\n");
        for x in self.elements() {
            writeln!(out, "  n{} [label={}];", x.0, quote(self.name_of(x))).unwrap();
        }
        for (a, b) in self.covers() {
            writeln!(out, "  n{} -> n{};", a.0, b.0).unwrap();
        }
        writeln!(out, "  {{ rank=min; n{}; }}", self.bottom().0).unwrap();
        out.push_str("}\n");
        out
    }
}

fn quote(s: &str) -> String {
    let mut q = String::with_capacity(s.len() + 2);
    q.push('"');
    for c in s.chars() {
        if c == '"' || c == '\\' {
            q.push('\\');
        }
        q.push(c);
    }
    q.push('"');
    q
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn json_round_trip_preserves_covers() {
        for l in fixtures::corpus() {
            let back = Lattice::from_json(&l.to_json(), 64).unwrap();
            assert_eq!(back, l);
            assert_eq!(back.cover_names(), l.cover_names());
            assert_eq!(back.name(), l.name());
        }
    }

    #[test]
    fn rejects_bad_input() {
        let spec = r#"{"name":"x","elements":["a"],"covers":[["a","a"]]}"#;
        assert!(matches!(
            Lattice::from_json(spec, 64),
            Err(LatticeError::NotAPoset(..))
        ));
        assert!(matches!(
            Lattice::from_json("{", 64),
            Err(LatticeError::Parse(_))
        ));
        let spec = r#"{"name":"x","elements":["a","b"],"covers":[["a","b"]]}"#;
        assert!(matches!(
            Lattice::from_json(spec, 1),
            Err(LatticeError::SizeLimitExceeded { size: 2, limit: 1 })
        ));
    }

    #[test]
    fn dot_is_stable() {
        let dot = fixtures::c3().to_dot();
        assert_eq!(
            dot,
            "digraph \"C3\" {\n  rankdir=BT;\n  node [shape=plaintext];\n  \
             n0 [label=\"0\"];\n  n1 [label=\"n\"];\n  n2 [label=\"1\"];\n  \
             n0 -> n1;\n  n1 -> n2;\n  { rank=min; n0; }\n}\n"
        );
    }
}

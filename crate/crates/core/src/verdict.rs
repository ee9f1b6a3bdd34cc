use std::collections::BTreeMap;
use std::fmt;

use serde::de::{MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A name-to-name table that serializes as a JSON object in insertion order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OrderedTable(pub Vec<(String, String)>);

impl OrderedTable {
    pub fn get(&self, key: &str) -> Option<&str> {
        self.0
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl Serialize for OrderedTable {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for OrderedTable {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct TableVisitor;
        impl<'de> Visitor<'de> for TableVisitor {
            type Value = OrderedTable;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an object mapping element names to element names")
            }
            fn visit_map<A: MapAccess<'de>>(self, mut access: A) -> Result<Self::Value, A::Error> {
                let mut out = Vec::new();
                while let Some((k, v)) = access.next_entry::<String, String>()? {
                    out.push((k, v));
                }
                Ok(OrderedTable(out))
            }
        }
        deserializer.deserialize_map(TableVisitor)
    }
}

/// One value inside a witness.
#[derive(Clone, Debug, PartialEq)]
pub enum WitnessValue {
    Flag(bool),
    Element(String),
    Elements(Vec<String>),
    Indices(Vec<usize>),
    Table(OrderedTable),
}

impl Serialize for WitnessValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            WitnessValue::Flag(b) => serializer.serialize_bool(*b),
            WitnessValue::Element(s) => serializer.serialize_str(s),
            WitnessValue::Elements(v) => v.serialize(serializer),
            WitnessValue::Indices(v) => v.serialize(serializer),
            WitnessValue::Table(t) => t.serialize(serializer),
        }
    }
}

impl From<bool> for WitnessValue {
    fn from(b: bool) -> Self {
        WitnessValue::Flag(b)
    }
}

impl From<&str> for WitnessValue {
    fn from(s: &str) -> Self {
        WitnessValue::Element(s.to_string())
    }
}

impl From<String> for WitnessValue {
    fn from(s: String) -> Self {
        WitnessValue::Element(s)
    }
}

impl From<Vec<String>> for WitnessValue {
    fn from(v: Vec<String>) -> Self {
        WitnessValue::Elements(v)
    }
}

impl From<Vec<usize>> for WitnessValue {
    fn from(v: Vec<usize>) -> Self {
        WitnessValue::Indices(v)
    }
}

impl From<OrderedTable> for WitnessValue {
    fn from(t: OrderedTable) -> Self {
        WitnessValue::Table(t)
    }
}

/// Keys are sorted, so serialized witnesses are byte-stable.
pub type Witness = BTreeMap<String, WitnessValue>;

/// Outcome of one property check.
///
/// A failing universal property carries the offending instance; a passing
/// existential one carries its certificate.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verdict {
    pub property: String,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub notes: String,
}

impl Verdict {
    pub fn new(property: impl Into<String>, holds: bool) -> Self {
        Verdict {
            property: property.into(),
            holds,
            witness: None,
            notes: String::new(),
        }
    }

    pub fn pass(property: impl Into<String>) -> Self {
        Verdict::new(property, true)
    }

    pub fn fail(property: impl Into<String>) -> Self {
        Verdict::new(property, false)
    }

    pub fn with(mut self, key: impl Into<String>, value: impl Into<WitnessValue>) -> Self {
        self.witness
            .get_or_insert_with(BTreeMap::new)
            .insert(key.into(), value.into());
        self
    }

    pub fn note(mut self, text: impl Into<String>) -> Self {
        let text = text.into();
        if !self.notes.is_empty() {
            self.notes.push_str("; ");
        }
        self.notes.push_str(&text);
        self
    }

    pub fn witness_value(&self, key: &str) -> Option<&WitnessValue> {
        self.witness.as_ref()?.get(key)
    }

    /// The named witness entry when it is a single element.
    pub fn witness_element(&self, key: &str) -> Option<&str> {
        match self.witness_value(key)? {
            WitnessValue::Element(s) => Some(s),
            _ => None,
        }
    }

    pub fn witness_table(&self, key: &str) -> Option<&OrderedTable> {
        match self.witness_value(key)? {
            WitnessValue::Table(t) => Some(t),
            _ => None,
        }
    }

    pub fn witness_flag(&self, key: &str) -> Option<bool> {
        match self.witness_value(key)? {
            WitnessValue::Flag(b) => Some(*b),
            _ => None,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.property, self.holds)?;
        if let Some(w) = &self.witness {
            let parts: Vec<String> = w
                .iter()
                .map(|(k, v)| format!("{k}={}", render(v)))
                .collect();
            write!(f, " ({})", parts.join(", "))?;
        }
        if !self.notes.is_empty() {
            write!(f, " [{}]", self.notes)?;
        }
        Ok(())
    }
}

fn render(v: &WitnessValue) -> String {
    match v {
        WitnessValue::Flag(b) => b.to_string(),
        WitnessValue::Element(s) => s.clone(),
        WitnessValue::Elements(xs) => format!("{{{}}}", xs.join(", ")),
        WitnessValue::Indices(xs) => {
            let xs: Vec<String> = xs.iter().map(|i| i.to_string()).collect();
            format!("#[{}]", xs.join(", "))
        }
        WitnessValue::Table(t) => {
            let xs: Vec<String> = t.0.iter().map(|(a, b)| format!("{a}↦{b}")).collect();
            format!("{{{}}}", xs.join(", "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_keeps_insertion_order() {
        let t = OrderedTable(vec![("z".into(), "0".into()), ("a".into(), "1".into())]);
        let s = serde_json::to_string(&t).unwrap();
        assert_eq!(s, r#"{"z":"0","a":"1"}"#);
        let back: OrderedTable = serde_json::from_str(&s).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn verdict_omits_empty_fields() {
        let v = Verdict::pass("cip");
        assert_eq!(
            serde_json::to_string(&v).unwrap(),
            r#"{"property":"cip","holds":true}"#
        );
        let v = Verdict::fail("rickart").with("kernel", "n");
        assert_eq!(v.witness_element("kernel"), Some("n"));
        assert_eq!(v.to_string(), "rickart: false (kernel=n)");
    }
}

//! Line-oriented `name=<hex>` key files.
//!
//! Fields appear in a fixed order, one per line, with no blank lines. Numbers
//! are canonical lowercase hex (see [`Nat::to_hex`]).

use crate::error::{Error, Result};
use crate::nat::Nat;

/// A parsed key file: ordered `(name, value)` pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KeyFile {
    fields: Vec<(String, String)>,
}

impl KeyFile {
    pub fn new() -> Self {
        KeyFile { fields: Vec::new() }
    }

    pub fn text(mut self, name: &str, value: &str) -> Self {
        self.fields.push((name.to_owned(), value.to_owned()));
        self
    }

    pub fn nat(self, name: &str, value: &Nat) -> Self {
        self.text(name, &value.to_hex())
    }

    pub fn parse(input: &str) -> Result<Self> {
        let body = input.strip_suffix('\n').unwrap_or(input);
        let mut fields = Vec::new();
        for (i, line) in body.split('\n').enumerate() {
            let line = line.strip_suffix('\r').unwrap_or(line);
            let Some((name, value)) = line.split_once('=') else {
                return Err(Error::KeyFile(format!("line {}: expected name=value", i + 1)));
            };
            if name.is_empty() {
                return Err(Error::KeyFile(format!("line {}: empty field name", i + 1)));
            }
            fields.push((name.to_owned(), value.to_owned()));
        }
        Ok(KeyFile { fields })
    }

    /// Value of `kind=` if it is the first field.
    pub fn kind(&self) -> Option<&str> {
        match self.fields.first() {
            Some((name, value)) if name == "kind" => Some(value),
            _ => None,
        }
    }

    /// Checks the field names match `layout` exactly and in order, returning
    /// the values.
    pub fn expect(&self, layout: &[&str]) -> Result<Vec<&str>> {
        let names: Vec<&str> = self.fields.iter().map(|(n, _)| n.as_str()).collect();
        if names != layout {
            return Err(Error::KeyFile(format!(
                "expected fields {} but found {}",
                layout.join(","),
                names.join(",")
            )));
        }
        Ok(self.fields.iter().map(|(_, v)| v.as_str()).collect())
    }

    /// Like [`expect`](Self::expect) with a leading `kind=<kind>` line, decoding
    /// the remaining fields as hex.
    pub fn expect_nats(&self, kind: Option<&str>, names: &[&str]) -> Result<Vec<Nat>> {
        let mut layout = Vec::with_capacity(names.len() + 1);
        if kind.is_some() {
            layout.push("kind");
        }
        layout.extend_from_slice(names);
        let values = self.expect(&layout)?;
        let values = match kind {
            Some(kind) if values[0] != kind => {
                return Err(Error::KeyFile(format!("expected kind={kind}, found kind={}", values[0])));
            }
            Some(_) => &values[1..],
            None => &values[..],
        };
        names
            .iter()
            .zip(values)
            .map(|(name, v)| Nat::from_hex(v).map_err(|_| Error::KeyFile(format!("{name}: bad hex {v:?}"))))
            .collect()
    }
}

impl Default for KeyFile {
    fn default() -> Self {
        Self::new()
    }
}

impl std::fmt::Display for KeyFile {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (name, value) in &self.fields {
            writeln!(f, "{name}={value}")?;
        }
        Ok(())
    }
}

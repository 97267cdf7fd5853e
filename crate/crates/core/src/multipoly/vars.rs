use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};

/// Ordered list of variable names. Position 0 has the highest priority in
/// the default monomial orders.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct VarTable {
    names: Vec<String>,
}

impl VarTable {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Arc<Self>> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, n) in names.iter().enumerate() {
            if !is_identifier(n) || n == "e" {
                return Err(Error::Input(format!("invalid variable name `{n}`")));
            }
            if names[..i].contains(n) {
                return Err(Error::Input(format!("duplicate variable name `{n}`")));
            }
        }
        Ok(Arc::new(VarTable { names }))
    }

    /// The shared table `Y1, Y2, Y3, Y4`.
    pub fn y4() -> Arc<Self> {
        static Y4: OnceLock<Arc<VarTable>> = OnceLock::new();
        Y4.get_or_init(|| VarTable::new(["Y1", "Y2", "Y3", "Y4"]).expect("valid names")).clone()
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Table with `extra` appended after the existing names.
    pub fn extended<S: Into<String>>(&self, extra: impl IntoIterator<Item = S>) -> Result<Arc<Self>> {
        VarTable::new(self.names.iter().cloned().chain(extra.into_iter().map(Into::into)))
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_duplicates_and_reserved() {
        assert!(VarTable::new(["x", "x"]).is_err());
        assert!(VarTable::new(["e"]).is_err());
        assert!(VarTable::new(["1x"]).is_err());
        let t = VarTable::new(["u1", "Y1"]).unwrap();
        assert_eq!(t.index_of("Y1"), Some(1));
        assert_eq!(t.extended(["l"]).unwrap().names(), ["u1", "Y1", "l"]);
    }
}

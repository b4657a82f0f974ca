use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// An ordered list of variable names shared by all polynomials of a
/// computation.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VarContext {
    names: Vec<String>,
}

pub type Ctx = Arc<VarContext>;

impl VarContext {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Ctx> {
        let mut out: Vec<String> = Vec::with_capacity(names.len());
        for n in names {
            let n = n.as_ref();
            if !is_identifier(n) {
                return Err(Error::InvalidInput(format!("`{n}` is not a valid variable name")));
            }
            if out.iter().any(|o| o == n) {
                return Err(Error::InvalidInput(format!("duplicate variable `{n}`")));
            }
            out.push(n.to_string());
        }
        Ok(Arc::new(VarContext { names: out }))
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

    pub fn var(&self, name: &str) -> Result<usize> {
        self.index_of(name).ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    /// A fresh name derived from `base` that does not clash with this
    /// context or with `taken`.
    pub fn fresh_name(&self, base: &str, taken: &[String]) -> String {
        let stem = base.trim_end_matches(|c: char| c.is_ascii_digit());
        let stem = if stem.is_empty() { base } else { stem };
        (1..)
            .map(|i| format!("{stem}{i}"))
            .find(|c| self.index_of(c).is_none() && !taken.contains(c))
            .expect("unbounded search")
    }
}

impl fmt::Debug for VarContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.names.join(", "))
    }
}

pub fn same_ctx(a: &Ctx, b: &Ctx) -> bool {
    Arc::ptr_eq(a, b) || a.names == b.names
}

pub fn is_identifier(s: &str) -> bool {
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
    fn rejects_duplicates_and_bad_names() {
        assert!(VarContext::new(&["x", "x"]).is_err());
        assert!(VarContext::new(&["1x"]).is_err());
        assert!(VarContext::new(&["x", "y1", "_t"]).is_ok());
    }

    #[test]
    fn fresh_names_skip_existing() {
        let c = VarContext::new(&["x", "x1", "y"]).unwrap();
        assert_eq!(c.fresh_name("x", &[]), "x2");
        assert_eq!(c.fresh_name("y", &["y1".to_string()]), "y2");
        assert_eq!(c.fresh_name("x1", &[]), "x2");
    }
}

use std::collections::HashSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::monomial::MonomialOrder;

/// Variable names plus the active monomial order. The coefficient field is
/// the type parameter of the polynomials living in the ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ring {
    names: Vec<String>,
    order: MonomialOrder,
}

impl Ring {
    pub fn new(names: Vec<String>, order: MonomialOrder) -> Result<Arc<Ring>> {
        if names.len() < 2 {
            return Err(Error::TooFewVariables(names.len()));
        }
        let mut seen = HashSet::new();
        for n in &names {
            if !seen.insert(n.as_str()) {
                return Err(Error::DuplicateVariable(n.clone()));
            }
        }
        if let MonomialOrder::Elimination(k) = order {
            if k == 0 || k >= names.len() {
                return Err(Error::OrderMismatch(format!(
                    "elimination block of size {k} in a ring of {} variables",
                    names.len()
                )));
            }
        }
        Ok(Arc::new(Ring { names, order }))
    }

    /// `x0, ..., x_{n-1}` with degrevlex.
    pub fn standard(nvars: usize) -> Result<Arc<Ring>> {
        Self::new((0..nvars).map(|i| format!("x{i}")).collect(), MonomialOrder::DegRevLex)
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn with_order(&self, order: MonomialOrder) -> Result<Arc<Ring>> {
        Ring::new(self.names.clone(), order)
    }

    pub fn same(a: &Arc<Ring>, b: &Arc<Ring>) -> bool {
        Arc::ptr_eq(a, b) || a == b
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_validation() {
        assert!(Ring::standard(1).is_err());
        assert!(Ring::new(vec!["a".into(), "a".into()], MonomialOrder::DegRevLex).is_err());
        assert!(Ring::new(vec!["s".into(), "x".into()], MonomialOrder::Elimination(2)).is_err());
        let r = Ring::standard(3).unwrap();
        assert_eq!(r.var_index("x2"), Some(2));
    }
}

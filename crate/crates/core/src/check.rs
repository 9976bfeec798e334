//! Named numeric claims whose verdict is a pure function of the numbers.

use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    /// `value <= bound`
    Le,
    /// `value >= bound`
    Ge,
    /// `value > bound`
    Gt,
}

impl Relation {
    pub fn holds(self, value: f64, bound: f64) -> bool {
        match self {
            Relation::Le => value <= bound,
            Relation::Ge => value >= bound,
            Relation::Gt => value > bound,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Le => "<=",
            Relation::Ge => ">=",
            Relation::Gt => ">",
        }
    }

    pub fn from_symbol(s: &str) -> Option<Self> {
        match s {
            "<=" => Some(Relation::Le),
            ">=" => Some(Relation::Ge),
            ">" => Some(Relation::Gt),
            _ => None,
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub relation: Relation,
    pub bound: f64,
    pub pass: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, value: f64, relation: Relation, bound: f64) -> Self {
        Self {
            name: name.into(),
            value,
            relation,
            bound,
            pass: relation.holds(value, bound),
        }
    }

    pub fn le(name: impl Into<String>, value: f64, bound: f64) -> Self {
        Self::new(name, value, Relation::Le, bound)
    }

    pub fn ge(name: impl Into<String>, value: f64, bound: f64) -> Self {
        Self::new(name, value, Relation::Ge, bound)
    }

    pub fn gt(name: impl Into<String>, value: f64, bound: f64) -> Self {
        Self::new(name, value, Relation::Gt, bound)
    }

    /// A boolean claim encoded as `value ∈ {0, 1}` with `value >= 1`.
    pub fn flag(name: impl Into<String>, ok: bool) -> Self {
        Self::ge(name, if ok { 1.0 } else { 0.0 }, 1.0)
    }

    /// Recomputes `pass` from `value`, `relation` and `bound`.
    pub fn recompute(&self) -> bool {
        self.relation.holds(self.value, self.bound)
    }
}

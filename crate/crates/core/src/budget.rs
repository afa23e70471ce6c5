//! Resource limits shared by the search procedures.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budgets {
    /// States visited by the collapse search.
    pub collapse_states: usize,
    /// Cosets defined by coset enumeration before giving up.
    pub max_cosets: usize,
    /// Search nodes visited by the immersion enumeration.
    pub enumeration_nodes: usize,
    /// Distinct states held by the closure search.
    pub closure_states: usize,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            collapse_states: 100_000,
            max_cosets: 100_000,
            enumeration_nodes: 200_000_000,
            closure_states: 200_000,
        }
    }
}

impl Budgets {
    /// Applies overrides of the form `cosets=5000,collapse=10,nodes=1e6,closure=100`.
    /// A bare integer sets every budget.
    pub fn with_overrides(mut self, spec: &str) -> Result<Self> {
        let spec = spec.trim();
        if spec.is_empty() {
            return Ok(self);
        }
        let num = |s: &str| -> Result<usize> {
            let s = s.trim();
            s.parse::<usize>()
                .ok()
                .or_else(|| {
                    s.parse::<f64>()
                        .ok()
                        .filter(|x| *x >= 0.0)
                        .map(|x| x as usize)
                })
                .ok_or_else(|| Error::Argument(format!("budget value `{s}` is not a number")))
        };
        if !spec.contains('=') {
            let n = num(spec)?;
            return Ok(Budgets {
                collapse_states: n,
                max_cosets: n,
                enumeration_nodes: n,
                closure_states: n,
            });
        }
        for part in spec.split(',') {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| Error::Argument(format!("budget entry `{part}` needs key=value")))?;
            let v = num(v)?;
            match k.trim() {
                "collapse" => self.collapse_states = v,
                "cosets" => self.max_cosets = v,
                "nodes" => self.enumeration_nodes = v,
                "closure" => self.closure_states = v,
                other => return Err(Error::Argument(format!("unknown budget `{other}`"))),
            }
        }
        Ok(self)
    }
}

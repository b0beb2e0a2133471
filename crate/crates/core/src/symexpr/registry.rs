use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use super::eval::{PointSampler, UniformSampler};
use super::{FuncKey, Rational, ScalarExpr, Symbol};
use crate::error::{Error, Result};

/// Numeric hook: receives the values of the registered arguments in order.
pub type EvalHook = Arc<dyn Fn(&[Rational]) -> Result<Rational> + Send + Sync>;

/// A function symbol: its coordinate arguments, one derivative rule per
/// argument, and an optional exact evaluation hook.
#[derive(Clone)]
pub struct FunctionDef {
    pub key: FuncKey,
    pub args: Vec<Symbol>,
    pub rules: HashMap<Symbol, ScalarExpr>,
    pub hook: Option<EvalHook>,
}

impl fmt::Debug for FunctionDef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FunctionDef")
            .field("key", &self.key)
            .field("args", &self.args)
            .field("rules", &self.rules.len())
            .field("hook", &self.hook.is_some())
            .finish()
    }
}

/// Function symbols known to a chart plus the sampler used for
/// probabilistic identity checks. Frozen once the chart is built.
#[derive(Clone)]
pub struct Registry {
    functions: HashMap<FuncKey, FunctionDef>,
    family: Option<String>,
    sampler: Arc<dyn PointSampler>,
}

impl fmt::Debug for Registry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Registry")
            .field("functions", &self.functions.len())
            .field("family", &self.family)
            .finish()
    }
}

impl Default for Registry {
    fn default() -> Self {
        Registry {
            functions: HashMap::new(),
            family: None,
            sampler: Arc::new(UniformSampler),
        }
    }
}

impl Registry {
    pub fn new() -> Registry {
        Registry::default()
    }

    pub fn with_sampler(mut self, sampler: Arc<dyn PointSampler>) -> Registry {
        self.sampler = sampler;
        self
    }

    /// Name of the built-in function family installed, if any.
    pub fn family(&self) -> Option<&str> {
        self.family.as_deref()
    }

    pub fn set_family(&mut self, name: &str) {
        self.family = Some(name.to_string());
    }

    pub fn sampler(&self) -> &dyn PointSampler {
        self.sampler.as_ref()
    }

    /// Registers a function. Every rule must mention only coordinates or
    /// functions that are registered by the time the registry is used.
    pub fn register(&mut self, def: FunctionDef) -> Result<()> {
        for a in &def.args {
            if !a.is_coordinate() {
                return Err(Error::Domain(format!(
                    "function {} takes a non-coordinate argument {a}",
                    def.key
                )));
            }
            if !def.rules.contains_key(a) {
                return Err(Error::MissingRule {
                    function: def.key.to_string(),
                    symbol: a.to_string(),
                });
            }
        }
        self.functions.insert(def.key.clone(), def);
        Ok(())
    }

    /// Checks that every rule only mentions registered functions.
    pub fn check_closed(&self) -> Result<()> {
        for def in self.functions.values() {
            for rule in def.rules.values() {
                for atom in rule.atoms() {
                    if let Symbol::Func(k) = &atom {
                        self.get(k)?;
                    }
                }
            }
        }
        Ok(())
    }

    pub fn get(&self, key: &FuncKey) -> Result<&FunctionDef> {
        self.functions
            .get(key)
            .ok_or_else(|| Error::UnknownSymbol(key.to_string()))
    }

    pub fn functions(&self) -> impl Iterator<Item = &FunctionDef> {
        self.functions.values()
    }

    pub fn is_empty(&self) -> bool {
        self.functions.is_empty()
    }
}

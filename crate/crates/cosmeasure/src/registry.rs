//! Name-keyed registry over the interchangeable algorithm families:
//! basis enumerators, measure engines, and certification oracles.
//! The CLI resolves user flags against this; library callers can
//! register their own variants next to the built-ins.

use crate::cosine::{AbridgedEngine, FullEngine, MeasureEngine};
use crate::enumerate::{self, BasisEnumerator};
use crate::oracle::{self, CosineEstimator};
use crate::spanset::SpanSet;

pub struct StrategyRegistry {
    enumerators: Vec<Box<dyn BasisEnumerator>>,
    engines: Vec<Box<dyn MeasureEngine>>,
    estimators: Vec<Box<dyn CosineEstimator>>,
}

impl Default for StrategyRegistry {
    fn default() -> Self {
        Self::with_builtins()
    }
}

impl StrategyRegistry {
    /// Registry holding every built-in strategy, in selection-priority order.
    pub fn with_builtins() -> Self {
        StrategyRegistry {
            enumerators: enumerate::default_enumerators(),
            engines: vec![Box::new(FullEngine), Box::new(AbridgedEngine)],
            estimators: oracle::default_estimators(),
        }
    }

    pub fn register_enumerator(&mut self, e: Box<dyn BasisEnumerator>) {
        self.enumerators.insert(0, e);
    }

    pub fn register_engine(&mut self, e: Box<dyn MeasureEngine>) {
        self.engines.push(e);
    }

    pub fn register_estimator(&mut self, e: Box<dyn CosineEstimator>) {
        self.estimators.insert(0, e);
    }

    /// First enumerator that applies to the set; the generic scan is
    /// always registered last, so this cannot fail for built-ins.
    pub fn enumerator_for(&self, set: &SpanSet) -> &dyn BasisEnumerator {
        self.enumerators
            .iter()
            .find(|e| e.supports(set))
            .expect("a universal enumerator is registered")
            .as_ref()
    }

    pub fn enumerator(&self, name: &str) -> Option<&dyn BasisEnumerator> {
        self.enumerators
            .iter()
            .find(|e| e.name() == name)
            .map(AsRef::as_ref)
    }

    pub fn engine(&self, name: &str) -> Option<&dyn MeasureEngine> {
        self.engines
            .iter()
            .find(|e| e.name() == name)
            .map(AsRef::as_ref)
    }

    pub fn engine_names(&self) -> Vec<&'static str> {
        self.engines.iter().map(|e| e.name()).collect()
    }

    pub fn estimator(&self, name: &str) -> Option<&dyn CosineEstimator> {
        self.estimators
            .iter()
            .find(|e| e.name() == name)
            .map(AsRef::as_ref)
    }

    /// First estimator claiming the dimension: the exact planar oracle
    /// for n = 2, sampling otherwise.
    pub fn estimator_for(&self, n: usize) -> Option<&dyn CosineEstimator> {
        self.estimators
            .iter()
            .find(|e| e.supports(n))
            .map(AsRef::as_ref)
    }
}

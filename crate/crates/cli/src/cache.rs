//! Thread-safe LGL basis cache shared by parallel solves.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use morse_gps::lgl::LglBasis;
use morse_gps::solver::BasisCache;

type Slot = Arc<OnceLock<morse_gps::Result<Arc<LglBasis>>>>;

/// Builds each order at most once; concurrent requests for the same order
/// wait for the first builder instead of duplicating the work.
#[derive(Debug, Default)]
pub struct SharedBasisCache {
    slots: Mutex<HashMap<usize, Slot>>,
}

impl SharedBasisCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.slots.lock().expect("cache lock poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl BasisCache for SharedBasisCache {
    fn basis(&self, order: usize) -> morse_gps::Result<Arc<LglBasis>> {
        let slot = {
            let mut slots = self.slots.lock().expect("cache lock poisoned");
            Arc::clone(slots.entry(order).or_default())
        };
        slot.get_or_init(|| LglBasis::new(order).map(Arc::new)).clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rayon::prelude::*;

    #[test]
    fn builds_once_per_order() {
        let cache = SharedBasisCache::new();
        let bases: Vec<_> = (0..16)
            .into_par_iter()
            .map(|i| cache.basis(40 + 10 * (i % 2)).unwrap())
            .collect();
        assert_eq!(cache.len(), 2);
        assert!(Arc::ptr_eq(&bases[0], &bases[2]));
        assert!(!Arc::ptr_eq(&bases[0], &bases[1]));
    }

    #[test]
    fn errors_are_cached_too() {
        let cache = SharedBasisCache::new();
        assert!(cache.basis(1).is_err());
        assert!(cache.basis(1).is_err());
    }
}

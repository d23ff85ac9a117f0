//! Memoized `E_ell^r / E_1^r mod m` series shared between concurrent checks.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::coefficients::multipartition_series_mod;
use crate::error::Result;
use crate::ModSeries;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SeriesKey {
    pub ell: u32,
    pub r: u32,
    pub modulus: u64,
}

type Slot = Arc<Mutex<Option<Arc<ModSeries>>>>;

/// One series per key, built at most once for any requested order.
///
/// A request for a longer prefix than the stored one rebuilds the entry.
/// Concurrent requests for the same key wait on the key's lock instead of
/// duplicating the work; different keys build in parallel.
#[derive(Default)]
pub struct SeriesCache {
    slots: Mutex<HashMap<SeriesKey, Slot>>,
    builds: Mutex<u64>,
}

impl SeriesCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, key: SeriesKey, order: usize) -> Result<Arc<ModSeries>> {
        let slot = {
            let mut slots = self.slots.lock().expect("cache poisoned");
            slots.entry(key).or_default().clone()
        };
        let mut entry = slot.lock().expect("cache slot poisoned");
        if let Some(s) = entry.as_ref() {
            if s.order() >= order {
                return Ok(s.clone());
            }
        }
        let built = Arc::new(multipartition_series_mod(
            key.ell,
            key.r,
            key.modulus,
            order,
        )?);
        *self.builds.lock().expect("cache poisoned") += 1;
        *entry = Some(built.clone());
        Ok(built)
    }

    /// Number of series constructions so far.
    pub fn builds(&self) -> u64 {
        *self.builds.lock().expect("cache poisoned")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rayon::prelude::*;

    #[test]
    fn single_construction_under_concurrency() {
        let cache = SeriesCache::new();
        let key = SeriesKey {
            ell: 3,
            r: 12,
            modulus: 3,
        };
        let got: Vec<_> = (0..16)
            .into_par_iter()
            .map(|_| cache.get(key, 300).unwrap())
            .collect();
        assert_eq!(cache.builds(), 1);
        assert!(got.iter().all(|s| Arc::ptr_eq(s, &got[0])));
        let shorter = cache.get(key, 100).unwrap();
        assert_eq!(shorter.order(), 300);
        assert_eq!(cache.builds(), 1);
        assert_eq!(cache.get(key, 400).unwrap().order(), 400);
        assert_eq!(cache.builds(), 2);
    }
}

//! A randomized checker for the soft heap contract.
//!
//! Operations are replayed against a shadow multiset. After every operation
//! the heap's entries must match the shadow, every current key must be at
//! least its item and never decrease, and the corrupt entries must number at
//! most `ε` times the insertions. Every extraction must return an entry
//! whose current key was the minimum when the call started.

use std::collections::{BTreeMap, HashSet};

use rand::Rng;
use softselect::soft_heap::SoftHeap;
use softselect::{Item, Meter};

use crate::generate::rng;

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ContractReport {
    pub inserts: u64,
    pub extracts: u64,
    /// Most corrupt entries seen in the heap at once.
    pub max_corrupt: usize,
    /// `max_corrupt / inserts` at the moment of that maximum.
    pub max_ratio: f64,
    pub comparisons: u64,
}

/// Runs `ops` random operations, inserting with probability `insert_bias`.
/// Returns the first violation as an error.
pub fn check(eps: f64, ops: usize, insert_bias: f64, seed: u64) -> Result<ContractReport, String> {
    let mut r = rng(seed);
    let meter = Meter::new();
    let mut heap = SoftHeap::new(eps, &meter).map_err(|e| e.to_string())?;
    let mut live: BTreeMap<u64, Item> = BTreeMap::new();
    let mut corrupt: HashSet<u64> = HashSet::new();
    let mut last_key: BTreeMap<u64, Item> = BTreeMap::new();
    let mut report = ContractReport::default();
    let mut next_id = 0;
    for op in 0..ops {
        if live.is_empty() || r.random_bool(insert_bias) {
            let item = Item::new(r.random_range(0..1000), next_id);
            next_id += 1;
            heap.insert(item);
            live.insert(item.id, item);
            report.inserts += 1;
        } else {
            let floor = heap.entries().iter().map(|e| e.current_key).min();
            let out = heap.extract_min().map_err(|e| format!("op {op}: {e}"))?;
            report.extracts += 1;
            if Some(out.current_key) != floor {
                return Err(format!("op {op}: extracted {} was not a minimum at the start of the call", out.item));
            }
            if live.remove(&out.item.id) != Some(out.item) {
                return Err(format!("op {op}: extracted {} was never inserted", out.item));
            }
            if out.corrupt != corrupt.contains(&out.item.id) {
                return Err(format!("op {op}: corrupt flag of {} is wrong", out.item));
            }
            for c in &out.newly_corrupt {
                if !corrupt.insert(c.id) {
                    return Err(format!("op {op}: {c} reported corrupt twice"));
                }
            }
            corrupt.remove(&out.item.id);
        }
        let entries = heap.entries();
        if entries.len() != live.len() {
            return Err(format!("op {op}: heap holds {} entries, expected {}", entries.len(), live.len()));
        }
        let mut now_corrupt = 0;
        for e in &entries {
            if live.get(&e.item.id) != Some(&e.item) {
                return Err(format!("op {op}: unexpected entry {}", e.item));
            }
            if e.current_key < e.item {
                return Err(format!("op {op}: current key of {} is below its key", e.item));
            }
            if e.corrupt != corrupt.contains(&e.item.id) || e.corrupt != (e.current_key != e.item) {
                return Err(format!("op {op}: corruption of {} went unreported", e.item));
            }
            if let Some(prev) = last_key.insert(e.item.id, e.current_key) {
                if e.current_key < prev {
                    return Err(format!("op {op}: current key of {} decreased", e.item));
                }
            }
            now_corrupt += e.corrupt as usize;
        }
        if now_corrupt as f64 > eps * heap.insertions() as f64 {
            return Err(format!(
                "op {op}: {now_corrupt} corrupt entries after {} insertions",
                heap.insertions()
            ));
        }
        if now_corrupt > report.max_corrupt {
            report.max_corrupt = now_corrupt;
            report.max_ratio = now_corrupt as f64 / heap.insertions() as f64;
        }
    }
    report.comparisons = meter.comparisons();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_runs_pass() {
        for eps in [0.25, 0.1] {
            let rep = check(eps, 2_000, 0.6, 1).unwrap();
            assert_eq!(rep.inserts + rep.extracts, 2_000);
            assert!(rep.max_ratio <= eps);
        }
    }
}

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicU64, AtomicU8, Ordering};

use serde::{Deserialize, Serialize};

/// Label under which a distance query is charged.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Phase {
    /// Queries issued while simulating the greedy (oracle trails, hat-graph probes).
    Trail,
    /// Full neighborhood scans used to learn vertex degrees.
    DegreeProbe,
    /// Distance queries issued by the local bridge test.
    BridgeTest,
    Other,
}

impl Phase {
    pub const ALL: [Phase; 4] = [Phase::Trail, Phase::DegreeProbe, Phase::BridgeTest, Phase::Other];

    pub fn label(self) -> &'static str {
        match self {
            Phase::Trail => "trail",
            Phase::DegreeProbe => "degree_probe",
            Phase::BridgeTest => "bridge_test",
            Phase::Other => "other",
        }
    }

    fn index(self) -> usize {
        self as usize
    }

    fn from_index(i: u8) -> Phase {
        Phase::ALL[i as usize]
    }
}

/// Thread-safe query counters broken down by [`Phase`].
///
/// The total is not stored separately; it is always the sum of the phases.
#[derive(Debug)]
pub struct QueryLedger {
    counts: [AtomicU64; 4],
    current: AtomicU8,
}

impl Default for QueryLedger {
    fn default() -> Self {
        QueryLedger {
            counts: Default::default(),
            current: AtomicU8::new(Phase::Other as u8),
        }
    }
}

impl QueryLedger {
    pub fn new() -> Self {
        Self::default()
    }

    /// Charges `k` queries to the current phase.
    pub fn charge(&self, k: u64) {
        let phase = self.current.load(Ordering::Relaxed) as usize;
        self.counts[phase].fetch_add(k, Ordering::Relaxed);
    }

    pub fn current_phase(&self) -> Phase {
        Phase::from_index(self.current.load(Ordering::Relaxed))
    }

    /// Switches the current phase until the returned guard is dropped.
    pub fn enter(&self, phase: Phase) -> PhaseGuard<'_> {
        let previous = self.current.swap(phase as u8, Ordering::Relaxed);
        PhaseGuard { ledger: self, previous }
    }

    pub fn count(&self, phase: Phase) -> u64 {
        self.counts[phase.index()].load(Ordering::Relaxed)
    }

    pub fn total(&self) -> u64 {
        Phase::ALL.iter().map(|&p| self.count(p)).sum()
    }

    pub fn snapshot(&self) -> LedgerSnapshot {
        let mut by_phase = [0; 4];
        for p in Phase::ALL {
            by_phase[p.index()] = self.count(p);
        }
        LedgerSnapshot { by_phase }
    }
}

/// Restores the previous phase on drop.
pub struct PhaseGuard<'a> {
    ledger: &'a QueryLedger,
    previous: u8,
}

impl Drop for PhaseGuard<'_> {
    fn drop(&mut self) {
        self.ledger.current.store(self.previous, Ordering::Relaxed);
    }
}

/// Point-in-time copy of a ledger.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct LedgerSnapshot {
    by_phase: [u64; 4],
}

impl LedgerSnapshot {
    pub fn get(&self, phase: Phase) -> u64 {
        self.by_phase[phase.index()]
    }

    pub fn total(&self) -> u64 {
        self.by_phase.iter().sum()
    }

    /// Queries charged between `earlier` and `self`.
    pub fn since(&self, earlier: &LedgerSnapshot) -> LedgerSnapshot {
        let mut by_phase = [0; 4];
        for (i, slot) in by_phase.iter_mut().enumerate() {
            *slot = self.by_phase[i] - earlier.by_phase[i];
        }
        LedgerSnapshot { by_phase }
    }

    /// Phase label → count, plus a `total` entry.
    pub fn to_map(&self) -> BTreeMap<String, u64> {
        let mut map: BTreeMap<String, u64> = Phase::ALL
            .iter()
            .map(|&p| (p.label().to_string(), self.get(p)))
            .collect();
        map.insert("total".into(), self.total());
        map
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn guard_restores_phase_and_totals_add_up() {
        let ledger = QueryLedger::new();
        ledger.charge(2);
        {
            let _g = ledger.enter(Phase::Trail);
            ledger.charge(5);
            {
                let _h = ledger.enter(Phase::BridgeTest);
                ledger.charge(1);
            }
            ledger.charge(1);
        }
        ledger.charge(1);
        assert_eq!(ledger.current_phase(), Phase::Other);
        let snap = ledger.snapshot();
        assert_eq!(snap.get(Phase::Trail), 6);
        assert_eq!(snap.get(Phase::BridgeTest), 1);
        assert_eq!(snap.get(Phase::Other), 3);
        assert_eq!(snap.total(), 10);
        assert_eq!(snap.to_map()["total"], 10);
    }

    #[test]
    fn since_subtracts() {
        let ledger = QueryLedger::new();
        ledger.charge(3);
        let a = ledger.snapshot();
        ledger.charge(4);
        assert_eq!(ledger.snapshot().since(&a).total(), 4);
    }
}

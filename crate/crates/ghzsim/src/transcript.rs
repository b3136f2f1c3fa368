//! Per-run transcript of box evaluations.
//!
//! Each entry records which box was evaluated, which parties sat at its
//! ports, what each party fed in and what it read out. Protocols are written
//! so that a party only ever supplies its own input slot and reads its own
//! output slot; the transcript is the evidence, and the structural tests
//! (resource counts, bipartiteness, reduction checks) run against it.

use crate::core::Bit;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoxKind {
    Pr,
    Cosine { arity: usize },
    Millionaire,
    /// Function-input box of the recursive decomposition: one side holds a
    /// finite function table, the other an index into it.
    Function,
}

/// One party's input to a box, as typed at its port.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PortInput {
    Bit(Bit),
    Angle(f64),
    Real(f64),
    Index(usize),
    /// Function-table side of a [`BoxKind::Function`] box; the table itself
    /// lives with the run, only its length is kept here.
    Table(usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoxRecord {
    pub kind: BoxKind,
    /// Party indices at the box ports, in port order.
    pub parties: Vec<usize>,
    pub inputs: Vec<PortInput>,
    pub outputs: Vec<Bit>,
}

/// Recording is optional so that bulk Monte Carlo estimation does not pay
/// for per-box allocations.
#[derive(Debug, Clone, PartialEq)]
pub struct Transcript {
    enabled: bool,
    entries: Vec<BoxRecord>,
}

impl Transcript {
    pub fn recording() -> Self {
        Transcript {
            enabled: true,
            entries: Vec::new(),
        }
    }

    pub fn disabled() -> Self {
        Transcript {
            enabled: false,
            entries: Vec::new(),
        }
    }

    pub fn record(&mut self, entry: BoxRecord) {
        if self.enabled {
            self.entries.push(entry);
        }
    }

    pub fn entries(&self) -> &[BoxRecord] {
        &self.entries
    }

    pub fn count(&self, kind: BoxKind) -> usize {
        self.entries.iter().filter(|e| e.kind == kind).count()
    }

    pub fn count_pr(&self) -> usize {
        self.count(BoxKind::Pr)
    }

    /// Arities of all cosine-box evaluations, in evaluation order.
    pub fn cosine_arities(&self) -> Vec<usize> {
        self.entries
            .iter()
            .filter_map(|e| match e.kind {
                BoxKind::Cosine { arity } => Some(arity),
                _ => None,
            })
            .collect()
    }

    /// True when every recorded box has exactly two parties.
    pub fn bipartite_only(&self) -> bool {
        self.entries.iter().all(|e| e.parties.len() == 2)
    }
}

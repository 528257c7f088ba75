use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt::Write as _;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EventKind {
    Stab,
    Push,
    Roll,
    CellExit,
    PageTurn,
    Collapse,
    Expand,
    Collision,
}

impl EventKind {
    pub const ALL: [EventKind; 8] = [
        EventKind::Stab,
        EventKind::Push,
        EventKind::Roll,
        EventKind::CellExit,
        EventKind::PageTurn,
        EventKind::Collapse,
        EventKind::Expand,
        EventKind::Collision,
    ];

    pub fn name(self) -> &'static str {
        match self {
            EventKind::Stab => "stab",
            EventKind::Push => "push",
            EventKind::Roll => "roll",
            EventKind::CellExit => "cell-exit",
            EventKind::PageTurn => "page-turn",
            EventKind::Collapse => "collapse",
            EventKind::Expand => "expand",
            EventKind::Collision => "collision",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EventRecord {
    pub time: f64,
    /// Exact event time (or the right end of its isolating interval).
    pub time_exact: String,
    pub kind: EventKind,
    pub level_before: usize,
    pub level_after: usize,
    pub steps: usize,
    /// Facet, tile or cell held after the event.
    pub feature: usize,
    /// Tangential contact (the certificate touched zero without crossing).
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub degenerate: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SeparationStats {
    /// Number of times the oracle looked at the configuration.
    pub samples: usize,
    pub min_separation: f64,
    pub min_separation_time: f64,
    pub diameter: f64,
    /// `min(n, sqrt(D / min_separation))`, infinite on contact.
    pub mu: f64,
    pub kds_collision: Option<f64>,
    pub oracle_collision: Option<f64>,
    pub oracle_agrees: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first_disagreement: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct EventLog {
    pub structure: String,
    pub events: Vec<EventRecord>,
    pub counts: BTreeMap<String, usize>,
    pub total_steps: usize,
    /// The event cap was reached before the horizon.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub truncated: bool,
    pub stats: SeparationStats,
}

impl EventLog {
    pub fn new(structure: &str) -> Self {
        let counts = EventKind::ALL.iter().map(|k| (k.name().to_string(), 0)).collect();
        EventLog { structure: structure.to_string(), counts, ..Default::default() }
    }

    pub fn push(&mut self, r: EventRecord) {
        *self.counts.entry(r.kind.name().to_string()).or_default() += 1;
        self.total_steps += r.steps;
        self.events.push(r);
    }

    pub fn count(&self, k: EventKind) -> usize {
        self.counts.get(k.name()).copied().unwrap_or(0)
    }

    /// Events other than the final collision.
    pub fn update_events(&self) -> usize {
        self.events.iter().filter(|e| e.kind != EventKind::Collision).count()
    }

    pub fn collision(&self) -> Option<&EventRecord> {
        self.events.iter().find(|e| e.kind == EventKind::Collision)
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("time,kind,level_before,level_after,steps\n");
        for e in &self.events {
            let _ = writeln!(s, "{},{},{},{},{}", e.time, e.kind.name(), e.level_before, e.level_after, e.steps);
        }
        s
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("logs serialize")
    }
}

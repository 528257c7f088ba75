use super::{CellKind, MixedHierarchy, Side};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct CellDump {
    pub id: usize,
    /// `triangle` or `parallelogram`.
    pub kind: String,
    pub origin: Side,
    pub node: usize,
    pub level: usize,
    pub vertices: Vec<[f64; 2]>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct MixedDump {
    pub outer: Vec<[f64; 2]>,
    pub inner: Vec<[f64; 2]>,
    pub cells: Vec<CellDump>,
}

impl MixedHierarchy {
    pub fn dump(&self) -> MixedDump {
        MixedDump {
            outer: self.outer.to_f64(),
            inner: self.inner.to_f64(),
            cells: self
                .alive_cells()
                .map(|c| CellDump {
                    id: c.id,
                    kind: match c.kind {
                        CellKind::Triangle { .. } => "triangle".into(),
                        CellKind::Parallelogram { .. } => "parallelogram".into(),
                    },
                    origin: c.origin(),
                    node: c.node(),
                    level: c.level,
                    vertices: c.vertices.iter().map(|p| p.to_f64()).collect(),
                })
                .collect(),
        }
    }
}

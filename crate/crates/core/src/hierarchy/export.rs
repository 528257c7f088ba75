use super::{BoomerangHierarchy, HierarchyKind};
use crate::num;
use serde::{Deserialize, Serialize};

/// One boomerang and, when it was cut, its triangle.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct NodeDump {
    pub id: usize,
    pub level: usize,
    /// Exact apex coordinates.
    pub apex: [String; 2],
    pub height: f64,
    pub parent_triangle: Option<usize>,
    pub triangle: Option<TriangleDump>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct TriangleDump {
    pub id: usize,
    pub cut_normal: [String; 2],
    pub vertices: [[f64; 2]; 3],
    pub children: [usize; 2],
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct HierarchyDump {
    pub kind: HierarchyKind,
    pub depth: usize,
    pub polygon: Vec<[f64; 2]>,
    pub rectangle: Vec<[f64; 2]>,
    /// Outward normals of zero-length edges, per vertex of the augmented
    /// polygon.
    pub zero_length_edges: Vec<([f64; 2], [f64; 2])>,
    pub roots: Vec<usize>,
    pub nodes: Vec<NodeDump>,
}

impl BoomerangHierarchy {
    pub fn dump(&self) -> HierarchyDump {
        let nodes = self
            .boomerangs
            .iter()
            .map(|b| NodeDump {
                id: b.id,
                level: b.level,
                apex: [b.apex.x.to_string(), b.apex.y.to_string()],
                height: num::to_f64(&b.height2).sqrt(),
                parent_triangle: b.parent,
                triangle: b.triangle.map(|t| {
                    let tri = &self.triangles[t];
                    let n = &self.facets[tri.cut].normal;
                    TriangleDump {
                        id: t,
                        cut_normal: [n.x.to_string(), n.y.to_string()],
                        vertices: tri.vertices().map(|p| p.to_f64()),
                        children: tri.children,
                    }
                }),
            })
            .collect();
        let mut zero = Vec::new();
        for (v, dirs) in self.base.vertices().iter().zip(self.base.support_directions()) {
            for d in dirs {
                zero.push((v.to_f64(), d.to_f64()));
            }
        }
        HierarchyDump {
            kind: self.kind,
            depth: self.depth,
            polygon: self.original.to_f64(),
            rectangle: self.rectangle.to_f64(),
            zero_length_edges: zero,
            roots: self.roots.clone(),
            nodes,
        }
    }
}

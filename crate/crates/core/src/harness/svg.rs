//! Standalone SVG drawings. World `y` points up; the drawing flips it.

use super::{HarnessError, ParseError, Scenario};
use crate::geometry::{ConvexPolygon, Point};
use crate::hierarchy::{BoomerangHierarchy, NEVER};
use crate::hysteresis::{build_inflated, greedy_kappa_clear, Decomposition, InflatedHierarchy, KAPPA};
use crate::kinetics::{hierarchy_of, Relative, Shape};
use crate::mixed::{build_mixed, CellKind, MixedHierarchy};
use crate::num;
use std::fmt::Write as _;
use std::path::Path;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RenderWhat {
    Hierarchy,
    Mixed,
    Inflated,
    Path,
}

impl std::str::FromStr for RenderWhat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "hierarchy" => Ok(RenderWhat::Hierarchy),
            "mixed" => Ok(RenderWhat::Mixed),
            "inflated" => Ok(RenderWhat::Inflated),
            "path" => Ok(RenderWhat::Path),
            _ => Err(format!("unknown render target {s:?} (hierarchy, mixed, inflated, path)")),
        }
    }
}

/// Samples of the moving body's reference point for `path` renders.
const PATH_SAMPLES: usize = 256;

/// Draws `what` for the scenario into `out`.
pub fn render_svg(sc: &Scenario, what: RenderWhat, out: &Path) -> Result<(), HarnessError> {
    let obstacle = sc.polygon_of(1).expect("validated obstacle")?;
    let hier = |p: &ConvexPolygon| hierarchy_of(sc.hierarchy, p);
    let svg = match what {
        RenderWhat::Hierarchy => hierarchy_svg(&hier(&obstacle)),
        RenderWhat::Inflated => inflated_svg(&build_inflated(&crate::hierarchy::build_compass(&obstacle))),
        RenderWhat::Mixed => {
            let moving = sc.polygon_of(0).ok_or_else(|| HarnessError::Unsupported("a mixed render needs two polygons".into()))??;
            let m = build_mixed(&hier(&moving), &hier(&obstacle)).map_err(|e| HarnessError::Unsupported(e.to_string()))?;
            mixed_svg(&m)
        }
        RenderWhat::Path => {
            let (path, q) = relative_path(sc, &obstacle)?;
            let dec = greedy_kappa_clear(&path, &q, KAPPA).ok();
            path_svg(&q, &path, dec.as_ref())
        }
    };
    std::fs::write(out, svg).map_err(|e| HarnessError::io(out, e))
}

/// The moving body's reference point (the point itself, or the polygon's
/// body origin) in the obstacle's frame.
fn relative_path(sc: &Scenario, obstacle: &ConvexPolygon) -> Result<(Vec<[f64; 2]>, ConvexPolygon), ParseError> {
    let moving = sc.body(0)?;
    let fixed = sc.body(1)?;
    let rel = Relative::new(&moving.motion, &fixed.motion);
    let x = match &moving.shape {
        Shape::Point(p) => p.to_f64(),
        Shape::Polygon(_) => [0.0, 0.0],
    };
    let (t0, t1) = (num::to_f64(&sc.t0), num::to_f64(&sc.t1));
    let path = (0..=PATH_SAMPLES).map(|i| rel.place_f64(x, t0 + (t1 - t0) * i as f64 / PATH_SAMPLES as f64)).collect();
    // A polygon body sweeps its whole shape; the clearance is then measured
    // against the obstacle grown by the moving polygon.
    let q = match &moving.shape {
        Shape::Point(_) => obstacle.clone(),
        Shape::Polygon(p) => crate::geometry::minkowski_sum(obstacle, &p.negate()),
    };
    Ok((path, q))
}

/// Accumulates shapes and the bounding box.
struct Canvas {
    body: String,
    lo: [f64; 2],
    hi: [f64; 2],
}

impl Canvas {
    fn new() -> Self {
        Canvas { body: String::new(), lo: [f64::INFINITY; 2], hi: [f64::NEG_INFINITY; 2] }
    }

    fn see(&mut self, p: [f64; 2]) {
        for k in 0..2 {
            self.lo[k] = self.lo[k].min(p[k]);
            self.hi[k] = self.hi[k].max(p[k]);
        }
    }

    fn points(&mut self, pts: &[[f64; 2]]) -> String {
        let mut s = String::new();
        for p in pts {
            self.see(*p);
            let _ = write!(s, "{:.6},{:.6} ", p[0], -p[1]);
        }
        s.trim_end().to_string()
    }

    fn polygon(&mut self, pts: &[[f64; 2]], class: &str, fill: &str, extra: &str) {
        let p = self.points(pts);
        let _ = writeln!(self.body, r##"<polygon class="{class}" points="{p}" fill="{fill}" stroke="#333" {extra}/>"##);
    }

    fn polyline(&mut self, pts: &[[f64; 2]], class: &str, stroke: &str, extra: &str) {
        let p = self.points(pts);
        let _ = writeln!(self.body, r#"<polyline class="{class}" points="{p}" fill="none" stroke="{stroke}" {extra}/>"#);
    }

    fn line(&mut self, a: [f64; 2], b: [f64; 2], class: &str, stroke: &str) {
        self.see(a);
        self.see(b);
        let _ = writeln!(
            self.body,
            r#"<line class="{class}" x1="{:.6}" y1="{:.6}" x2="{:.6}" y2="{:.6}" stroke="{stroke}"/>"#,
            a[0], -a[1], b[0], -b[1]
        );
    }

    fn circle(&mut self, c: [f64; 2], r: f64, class: &str) {
        self.see([c[0] - r, c[1] - r]);
        self.see([c[0] + r, c[1] + r]);
        let _ = writeln!(self.body, r##"<circle class="{class}" cx="{:.6}" cy="{:.6}" r="{:.6}" fill="#4a90d9" fill-opacity="0.15" stroke="#4a90d9"/>"##, c[0], -c[1], r);
    }

    fn size(&self) -> f64 {
        (self.hi[0] - self.lo[0]).max(self.hi[1] - self.lo[1]).max(1e-9)
    }

    /// Wraps the drawing with a legend of `(swatch, label)` rows.
    fn finish(self, title: &str, legend: &[(String, String)]) -> String {
        let pad = 0.05 * self.size();
        let (x, y) = (self.lo[0] - pad, -self.hi[1] - pad);
        let (w, h) = (self.hi[0] - self.lo[0] + 2.0 * pad, self.hi[1] - self.lo[1] + 2.0 * pad);
        let fs = 0.03 * w.max(h);
        let total = h + fs * (legend.len() as f64 + 2.0);
        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{x:.6} {y:.6} {w:.6} {total:.6}" width="800" height="{:.0}">"#,
            800.0 * total / w
        );
        let _ = writeln!(s, "<title>{title}</title>");
        let _ = writeln!(s, r#"<g stroke-width="1" vector-effect="non-scaling-stroke" style="vector-effect:non-scaling-stroke">"#);
        s.push_str(&self.body);
        s.push_str("</g>\n");
        let _ = writeln!(s, r#"<g class="legend" font-size="{fs:.6}" font-family="sans-serif">"#);
        for (i, (fill, label)) in legend.iter().enumerate() {
            let ty = y + h + fs * (i as f64 + 1.2);
            let _ = writeln!(s, r##"<rect x="{x:.6}" y="{:.6}" width="{fs:.6}" height="{fs:.6}" fill="{fill}" stroke="#333"/>"##, ty - 0.85 * fs);
            let _ = writeln!(s, r#"<text x="{:.6}" y="{ty:.6}">{label}</text>"#, x + 1.5 * fs);
        }
        s.push_str("</g>\n</svg>\n");
        s
    }
}

fn level_color(level: usize, levels: usize) -> String {
    let hue = 360.0 * level as f64 / levels.max(1) as f64;
    format!("hsl({hue:.0},65%,60%)")
}

fn outline(p: &ConvexPolygon) -> Vec<[f64; 2]> {
    p.to_f64()
}

fn pts(v: &[Point]) -> Vec<[f64; 2]> {
    v.iter().map(Point::to_f64).collect()
}

/// Tiles colored by level over the enclosing rectangle, the polygon, and
/// every facet: zero-length facets are drawn as ticks along their normal.
pub fn hierarchy_svg(h: &BoomerangHierarchy) -> String {
    let mut c = Canvas::new();
    let levels = h.depth() + 1;
    c.polygon(&outline(h.rectangle()), "rectangle", "#f4f4f4", "");
    let mut per_level = vec![0usize; levels + 1];
    for t in h.triangles() {
        let l = t.level.min(levels);
        per_level[l] += 1;
        c.polygon(&pts(&t.vertices()), &format!("tile level-{}", t.level), &level_color(t.level, levels), r#"fill-opacity="0.8""#);
    }
    c.polygon(&outline(h.original()), "polygon", "#d8d8d8", "");
    let tick = 0.02 * c.size();
    for (i, f) in h.facets().iter().enumerate() {
        let l = h.facet_level(i);
        if l == NEVER {
            continue;
        }
        let color = level_color(l, levels);
        let (a, b) = (f.start.to_f64(), f.end.to_f64());
        if f.start == f.end {
            let n = f.normal.to_f64();
            let len = n[0].hypot(n[1]);
            c.line(a, [a[0] + tick * n[0] / len, a[1] + tick * n[1] / len], &format!("tick level-{l}"), &color);
        } else {
            c.line(a, b, &format!("facet level-{l}"), &color);
        }
    }
    let legend: Vec<(String, String)> =
        (0..levels).filter(|&l| per_level[l] > 0).map(|l| (level_color(l, levels), format!("level {l}: {} tiles", per_level[l]))).collect();
    c.finish(&format!("{:?} hierarchy, depth {}", h.kind, h.depth()), &legend)
}

const TRIANGLE_FILL: &str = "#7fa7d9";
const PARALLELOGRAM_FILL: &str = "#f0b866";

/// Live cells: triangles and parallelograms in distinct fills.
pub fn mixed_svg(m: &MixedHierarchy) -> String {
    let mut c = Canvas::new();
    let (mut tris, mut paras) = (0, 0);
    for cell in m.alive_cells() {
        let (class, fill) = match cell.kind {
            CellKind::Triangle { .. } => {
                tris += 1;
                ("cell triangle", TRIANGLE_FILL)
            }
            CellKind::Parallelogram { .. } => {
                paras += 1;
                ("cell parallelogram", PARALLELOGRAM_FILL)
            }
        };
        c.polygon(&pts(&cell.vertices), &format!("{class} level-{}", cell.level), fill, r#"fill-opacity="0.85""#);
    }
    c.polyline(&closed(outline(m.inner())), "inner", "#000", "");
    let legend = [(TRIANGLE_FILL.to_string(), format!("triangles: {tris}")), (PARALLELOGRAM_FILL.to_string(), format!("parallelograms: {paras}"))];
    c.finish(&format!("mixed hierarchy, {} cells", m.size()), &legend)
}

fn closed(mut v: Vec<[f64; 2]>) -> Vec<[f64; 2]> {
    if let Some(&f) = v.first() {
        v.push(f);
    }
    v
}

/// Envelopes `Q_i` (dashed) and inflated envelopes `Q′_i` (solid), colored
/// by level.
pub fn inflated_svg(ih: &InflatedHierarchy) -> String {
    let mut c = Canvas::new();
    let h = ih.base();
    let levels = ih.levels();
    c.polygon(&outline(h.original()), "polygon", "#d8d8d8", "");
    let mut legend = Vec::new();
    for j in 0..levels {
        let color = level_color(j, levels);
        c.polyline(&closed(pts(&h.envelope_points(j))), &format!("envelope level-{j}"), &color, r#"stroke-dasharray="4 3""#);
        c.polyline(&closed(ih.inflated_outline(j)), &format!("inflated level-{j}"), &color, "");
        legend.push((color, format!("level {j}: eps = {:.6}", num::to_f64(&ih.eps()[j]))));
    }
    c.finish("inflated hierarchy", &legend)
}

/// The path, the obstacle and the disks of a clear decomposition.
pub fn path_svg(q: &ConvexPolygon, path: &[[f64; 2]], dec: Option<&Decomposition>) -> String {
    let mut c = Canvas::new();
    c.polygon(&outline(q), "polygon", "#d8d8d8", "");
    if let Some(d) = dec {
        for disk in &d.disks {
            c.circle(disk.center, disk.radius, "disk");
        }
    }
    c.polyline(path, "path", "#c0392b", "");
    let mut legend = vec![("#c0392b".to_string(), format!("path: {} samples", path.len()))];
    if let Some(d) = dec {
        legend.push(("#4a90d9".to_string(), format!("clear disks (kappa = {:.4}): {}", d.kappa, d.size())));
    }
    c.finish("trajectory", &legend)
}

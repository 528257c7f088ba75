use super::*;
use crate::geometry::generate::compass_octagon;
use crate::hierarchy::build_compass;
use crate::kinetics::SeparationStats;
use crate::num;

fn scratch(tag: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("sepkds-harness-{}-{tag}", std::process::id()));
    std::fs::create_dir_all(&d).unwrap();
    d
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

const FLY_BY: &str = r#"{
  "name": "flyby",
  "horizon": [0, 6000],
  "polygons": [
    {"name": "p", "shape": {"point": [0, 0]}, "motion": {"o": [[-3000, 1], ["-1125.5", 0]]}},
    {"name": "q", "shape": {"regular": {"k": 512, "radius": 1000}}}
  ],
  "structure": "compass",
  "oracle": {"samples": 256}
}"#;

#[test]
fn rational_literals() {
    let text = r#"{"horizon": [[1, 4], "2.5"], "structure": "lazy",
        "polygons": [{"shape": {"point": ["3/8", -2]}}, {"shape": {"vertices": [[0,0],[1,0],[0,1]]}}]}"#;
    let sc = Scenario::from_json(text).unwrap();
    assert_eq!(sc.t0, num::ratio(1, 4));
    assert_eq!(sc.t1, num::ratio(5, 2));
    let ShapeSpec::Point([x, y]) = &sc.bodies[0].shape else { panic!() };
    assert_eq!((x.0.clone(), y.0.clone()), (num::ratio(3, 8), num::int(-2)));
}

#[test]
fn float_literal_is_a_parse_error_with_position() {
    let text = "{\n  \"horizon\": [0, 1.5],\n  \"structure\": \"lazy\", \"polygons\": []\n}";
    let e = Scenario::from_json(text).unwrap_err();
    assert_eq!(e.line, 2);
    assert!(e.column > 0);
    assert!(e.message.contains("inexact"), "{e}");
}

#[test]
fn malformed_motion_is_a_parse_error() {
    let bad_coeff = FLY_BY.replace(r#"[-3000, 1]"#, r#"[-3000, "x"]"#);
    assert!(Scenario::from_json(&bad_coeff).unwrap_err().message.contains("not an exact rational"));
    let too_long = FLY_BY.replace(r#"[-3000, 1]"#, "[1,1,1,1,1,1,1,1,1,1]");
    assert!(Scenario::from_json(&too_long).unwrap_err().message.contains("exceeds the cap"));
    let not_list = FLY_BY.replace(r#"[-3000, 1]"#, "7");
    assert!(Scenario::from_json(&not_list).is_err());
}

#[test]
fn scenario_shape_rules() {
    let three = FLY_BY.replace(r#"{"name": "q","#, r#"{"shape": {"point": [1, 1]}}, {"name": "q","#);
    assert!(Scenario::from_json(&three).unwrap_err().message.contains("two bodies"));
    let mixed_point = FLY_BY.replace(r#""structure": "compass""#, r#""structure": "mixed""#);
    assert!(Scenario::from_json(&mixed_point).is_err());
    let clash = FLY_BY.replace(r#""structure": "compass""#, r#""structure": "dudley", "hierarchy": "compass""#);
    assert!(Scenario::from_json(&clash).is_err());
}

#[test]
fn run_writes_csv_and_json() {
    let dir = scratch("run");
    let path = write(&dir, "s.json", FLY_BY);
    let opts = RunOptions { out: Some(dir.clone()), ..Default::default() };
    let report = run_scenario(&path, &opts).unwrap();
    assert_eq!(report.csv, dir.join("flyby.csv"));
    let csv = std::fs::read_to_string(&report.csv).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("time,kind,level_before,level_after,steps"));
    assert_eq!(lines.count(), report.log.events.len());
    assert!(report.log.update_events() > 0);
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report.json).unwrap()).unwrap();
    let stats: SeparationStats = serde_json::from_value(json["stats"].clone()).unwrap();
    assert!(stats.oracle_agrees);
    assert!(stats.kds_collision.is_none());
    // The point passes 1125.5 from the center; the polygon's edges lie
    // between the apothem and the circumradius.
    assert!(stats.min_separation > 125.0 && stats.min_separation < 125.6, "{}", stats.min_separation);
    // Same input, same bytes.
    let again = run_scenario(&path, &RunOptions { out: Some(dir.join("again")), ..Default::default() }).unwrap();
    assert_eq!(csv, std::fs::read_to_string(again.csv).unwrap());
}

#[test]
fn skipped_event_exits_with_mismatch() {
    let dir = scratch("fault");
    let text = FLY_BY.replace(r#""structure": "compass""#, r#""structure": "compass", "fault": "skip-event""#);
    let path = write(&dir, "s.json", &text);
    let e = run_scenario(&path, &RunOptions { out: Some(dir.clone()), ..Default::default() }).unwrap_err();
    assert_eq!(e.exit_code(), 3, "{e}");
    assert!(dir.join("flyby.csv").exists());
}

#[test]
fn parse_errors_exit_2() {
    let dir = scratch("parse");
    let path = write(&dir, "s.json", "{\"structure\": ");
    assert_eq!(run_scenario(&path, &RunOptions::default()).unwrap_err().exit_code(), 2);
}

fn synthetic(d: f64, sigma: f64, events: usize) -> EventLog {
    let mut log = EventLog::new("lazy");
    for i in 0..events {
        log.push(crate::kinetics::EventRecord {
            time: i as f64,
            time_exact: i.to_string(),
            kind: crate::kinetics::EventKind::Push,
            level_before: 0,
            level_after: 0,
            steps: 1,
            feature: 0,
            degenerate: false,
        });
    }
    log.stats = SeparationStats { diameter: d, min_separation: sigma, mu: (d / sigma).sqrt(), oracle_agrees: true, ..Default::default() };
    log
}

#[test]
fn stats_fit_and_insufficient_data() {
    let logs: Vec<EventLog> = (2..=6).map(|k| synthetic(1024.0, 1024.0 / 2f64.powi(k), 3 + 2 * k as usize)).collect();
    let r = emit_stats(&logs, Model::Log).unwrap();
    assert!((r.b - 2.0).abs() < 1e-9 && (r.a - 3.0).abs() < 1e-9 && (r.r2 - 1.0).abs() < 1e-12, "{r:?}");
    let e = emit_stats(&logs[..2], Model::Sqrt).unwrap_err();
    assert_eq!(e.exit_code(), 4);
    let same: Vec<EventLog> = (0..5).map(|_| synthetic(10.0, 1.0, 4)).collect();
    assert_eq!(emit_stats(&same, Model::Quad).unwrap_err().exit_code(), 4);
}

fn count(svg: &str, needle: &str) -> usize {
    svg.matches(needle).count()
}

#[test]
fn octagon_hierarchy_render_shows_its_tiles() {
    let h = build_compass(&compass_octagon(&num::int(10)));
    let svg = svg::hierarchy_svg(&h);
    for l in 0..=h.depth() {
        let tiles = h.triangles().iter().filter(|t| t.level == l).count();
        assert_eq!(count(&svg, &format!("class=\"tile level-{l}\"")), tiles);
    }
    assert_eq!(count(&svg, "class=\"tile "), 4);
    // Axis facets touching the octagon at a vertex become ticks.
    let ticks = h.facets().iter().enumerate().filter(|(i, f)| h.facet_level(*i) != crate::hierarchy::NEVER && f.start == f.end).count();
    assert_eq!(count(&svg, "class=\"tick "), ticks);
}

#[test]
fn rectangle_hierarchy_render_is_the_rectangle() {
    let sq = crate::geometry::ConvexPolygon::from_i64(&[(0, 0), (4, 0), (4, 2), (0, 2)]).unwrap();
    let svg = svg::hierarchy_svg(&build_compass(&sq));
    assert_eq!(count(&svg, "class=\"tile "), 0);
    assert_eq!(count(&svg, "class=\"rectangle\""), 1);
}

#[test]
fn mixed_render_legend_matches_cells() {
    let p = crate::geometry::generate::regular_polygon(16, &num::int(10));
    let q = crate::geometry::generate::regular_polygon(16, &num::int(25));
    let m = crate::mixed::build_mixed(&build_compass(&p), &build_compass(&q)).unwrap();
    let svg = svg::mixed_svg(&m);
    let tris = count(&svg, "class=\"cell triangle ");
    let paras = count(&svg, "class=\"cell parallelogram ");
    assert!(tris > 0 && paras > 0);
    assert_eq!(tris + paras, m.alive_cells().count());
    assert!(svg.contains(&format!("triangles: {tris}<")) && svg.contains(&format!("parallelograms: {paras}<")));
}

#[test]
fn render_targets_write_files() {
    let dir = scratch("render");
    let sc = Scenario::from_json(FLY_BY).unwrap();
    for what in [RenderWhat::Hierarchy, RenderWhat::Inflated, RenderWhat::Path] {
        let out = dir.join(format!("{what:?}.svg"));
        render_svg(&sc, what, &out).unwrap();
        let s = std::fs::read_to_string(&out).unwrap();
        assert!(s.starts_with("<svg") && s.trim_end().ends_with("</svg>"));
    }
    assert!(render_svg(&sc, RenderWhat::Mixed, &dir.join("m.svg")).is_err());
}

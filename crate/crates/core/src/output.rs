//! JSON, CSV, and SVG renderings. All output is a pure function of its
//! input, so repeated runs are byte-identical.

use std::fmt::Write as _;

use serde::Serialize;

use crate::complex::Cochain;
use crate::persistence::{Barcode, Endpoint};
use crate::rank_invariant::RankTable;

#[derive(Serialize)]
#[serde(untagged)]
enum JsonEndpoint {
    Stage(usize),
    NegInf(&'static str),
}

impl From<Endpoint> for JsonEndpoint {
    fn from(e: Endpoint) -> Self {
        match e {
            Endpoint::NegInf => JsonEndpoint::NegInf("-inf"),
            Endpoint::Stage(s) => JsonEndpoint::Stage(s),
        }
    }
}

#[derive(Serialize)]
struct JsonBar {
    degree: usize,
    left: JsonEndpoint,
    right: usize,
    count: usize,
}

/// Array of `{degree, left, right, count}` sorted by (degree, left, right).
pub fn barcode_json(b: &Barcode) -> String {
    let bars: Vec<JsonBar> = b
        .entries()
        .map(|(degree, iv, count)| JsonBar {
            degree,
            left: iv.left.into(),
            right: iv.right,
            count,
        })
        .collect();
    serde_json::to_string_pretty(&bars).expect("serializable") + "\n"
}

pub fn barcode_text(b: &Barcode) -> String {
    let mut out = String::new();
    for (degree, iv, count) in b.entries() {
        let _ = writeln!(out, "{degree} {iv} x{count}");
    }
    out
}

#[derive(Serialize)]
struct JsonCochain {
    degree: usize,
    simplices: Vec<Vec<u32>>,
}

pub fn cochain_json(c: &Cochain) -> String {
    let doc = JsonCochain {
        degree: c.degree(),
        simplices: c.support().iter().map(|s| s.vertices().to_vec()).collect(),
    };
    serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
}

#[derive(Serialize)]
struct JsonRank {
    k: usize,
    d: usize,
    i: JsonEndpoint,
    j: usize,
    rank: usize,
}

pub fn rank_json(k: usize, d: usize, i: Endpoint, j: usize, rank: usize) -> String {
    let doc = JsonRank {
        k,
        d,
        i: i.into(),
        j,
        rank,
    };
    serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
}

#[derive(Serialize)]
struct JsonEntry {
    i: JsonEndpoint,
    j: usize,
    rank: usize,
}

#[derive(Serialize)]
struct JsonTable {
    k: usize,
    d: usize,
    n: usize,
    entries: Vec<JsonEntry>,
}

pub fn rank_table_json(t: &RankTable) -> String {
    let doc = JsonTable {
        k: t.k,
        d: t.d,
        n: t.n,
        entries: t
            .entries
            .iter()
            .map(|(&(i, j), &rank)| JsonEntry { i: i.into(), j, rank })
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
}

/// `i,j,rank` with `-inf` for the unbounded left end.
pub fn rank_table_csv(t: &RankTable) -> String {
    let mut out = String::from("i,j,rank\n");
    for (&(i, j), &rank) in &t.entries {
        let _ = writeln!(out, "{i},{j},{rank}");
    }
    out
}

const SVG_WIDTH: f64 = 640.0;
const MARGIN: f64 = 40.0;
const ROW: f64 = 12.0;
const GROUP_GAP: f64 = 24.0;

/// Horizontal bars grouped by degree. Stages run right to left, in the
/// direction of the restriction maps, so classes of the final complex reach
/// the left edge and carry a left-pointing arrowhead.
pub fn barcode_svg(b: &Barcode, n: usize) -> String {
    let span = SVG_WIDTH - 2.0 * MARGIN;
    let scale = span / n.max(1) as f64;
    // stage t sits at x(t); the unbounded left end maps to t = 0
    let x = |t: usize| MARGIN + (n - t.min(n)) as f64 * scale;

    let mut body = String::new();
    let mut y = MARGIN;
    for degree in b.degrees() {
        let _ = writeln!(
            body,
            r#"  <text x="{:.2}" y="{:.2}" font-size="11" font-family="sans-serif">H{degree}</text>"#,
            4.0,
            y + 4.0
        );
        y += ROW;
        for (iv, count) in b.degree(degree) {
            let lo = match iv.left {
                Endpoint::NegInf => 0,
                Endpoint::Stage(s) => s,
            };
            for _ in 0..count {
                let (x_end, x_start) = (x(iv.right), x(lo));
                let _ = writeln!(
                    body,
                    r#"  <line x1="{x_end:.2}" y1="{y:.2}" x2="{x_start:.2}" y2="{y:.2}" stroke="black" stroke-width="3"/>"#
                );
                if iv.right == n {
                    let _ = writeln!(
                        body,
                        r#"  <polygon points="{:.2},{y:.2} {:.2},{:.2} {:.2},{:.2}" fill="black"/>"#,
                        x_end - 8.0,
                        x_end,
                        y - 4.0,
                        x_end,
                        y + 4.0
                    );
                }
                y += ROW;
            }
        }
        y += GROUP_GAP;
    }
    let height = y + MARGIN;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SVG_WIDTH:.0}" height="{height:.0}" viewBox="0 0 {SVG_WIDTH:.0} {height:.0}">"#
    );
    let axis_y = height - MARGIN / 2.0;
    let _ = writeln!(
        out,
        r#"  <line x1="{:.2}" y1="{axis_y:.2}" x2="{:.2}" y2="{axis_y:.2}" stroke="gray"/>"#,
        x(n),
        x(0)
    );
    let _ = writeln!(
        out,
        r#"  <text x="{:.2}" y="{:.2}" font-size="10" font-family="sans-serif">{n}</text>"#,
        x(n),
        axis_y + 12.0
    );
    let _ = writeln!(
        out,
        r#"  <text x="{:.2}" y="{:.2}" font-size="10" font-family="sans-serif">0</text>"#,
        x(0),
        axis_y + 12.0
    );
    out.push_str(&body);
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::persistence::{barcode_of, persistence_triples, ExtendedInterval};
    use crate::rank_invariant::rank_inv_table;

    #[test]
    fn single_vertex_json() {
        let b = barcode_of(&persistence_triples(&fixtures::single_vertex()).unwrap());
        let v: serde_json::Value = serde_json::from_str(&barcode_json(&b)).unwrap();
        assert_eq!(
            v,
            serde_json::json!([{"degree": 0, "left": "-inf", "right": 1, "count": 1}])
        );
    }

    #[test]
    fn json_sorted_with_multiplicity() {
        let mut b = Barcode::default();
        let iv = |l, r| ExtendedInterval { left: l, right: r };
        b.insert(1, iv(Endpoint::Stage(2), 5));
        b.insert(0, iv(Endpoint::Stage(3), 4));
        b.insert(0, iv(Endpoint::NegInf, 9));
        b.insert(0, iv(Endpoint::Stage(3), 4));
        let v: serde_json::Value = serde_json::from_str(&barcode_json(&b)).unwrap();
        assert_eq!(
            v,
            serde_json::json!([
                {"degree": 0, "left": "-inf", "right": 9, "count": 1},
                {"degree": 0, "left": 3, "right": 4, "count": 2},
                {"degree": 1, "left": 2, "right": 5, "count": 1},
            ])
        );
    }

    #[test]
    fn table_csv_layout() {
        let t = rank_inv_table(&fixtures::single_vertex(), 1, 0).unwrap();
        assert_eq!(rank_table_csv(&t), "i,j,rank\n-inf,1,0\n1,1,0\n");
    }

    #[test]
    fn svg_marks_essential_bars() {
        let x = fixtures::circle();
        let b = barcode_of(&persistence_triples(&x).unwrap());
        let svg = barcode_svg(&b, x.len());
        assert!(svg.starts_with("<svg"));
        assert_eq!(svg.matches("<polygon").count(), 2);
        assert_eq!(svg.matches("<line").count(), 5);
        assert_eq!(svg, barcode_svg(&b, x.len()));
    }

    #[test]
    fn cochain_json_layout() {
        let c = Cochain::from_vertex_lists(2, &[&[2, 3, 5]]).unwrap();
        let v: serde_json::Value = serde_json::from_str(&cochain_json(&c)).unwrap();
        assert_eq!(v, serde_json::json!({"degree": 2, "simplices": [[2, 3, 5]]}));
    }
}

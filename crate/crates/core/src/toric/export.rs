use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{OrbitClassification, Stabilizer, Triangulation};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FanFormat {
    Json,
    Svg,
}

impl FromStr for FanFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(FanFormat::Json),
            "svg" => Ok(FanFormat::Svg),
            other => Err(Error::InvalidSpec(format!("unknown fan format `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanOrbit {
    pub triangles: Vec<usize>,
    pub stabilizer: String,
}

/// Serialized fan: points as numerator triples over `r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanDocument {
    pub r: u64,
    pub hsize: usize,
    pub points: Vec<[u64; 3]>,
    pub triangles: Vec<[usize; 3]>,
    pub orbits: Vec<FanOrbit>,
}

pub fn fan_document(tri: &Triangulation, cls: &OrbitClassification) -> FanDocument {
    FanDocument {
        r: tri.r,
        hsize: tri.hsize,
        points: tri.points.clone(),
        triangles: tri.triangles.clone(),
        orbits: cls
            .orbits
            .iter()
            .map(|o| FanOrbit {
                triangles: o.triangles.clone(),
                stabilizer: o.stabilizer.as_str().to_string(),
            })
            .collect(),
    }
}

pub fn export_fan(
    tri: &Triangulation,
    cls: &OrbitClassification,
    format: FanFormat,
) -> Result<String> {
    match format {
        FanFormat::Json => serde_json::to_string_pretty(&fan_document(tri, cls))
            .map_err(|e| Error::Io(e.to_string())),
        FanFormat::Svg => Ok(render_svg(tri, cls)),
    }
}

const CORNERS: [(f64, f64); 3] = [(50.0, 480.0), (550.0, 480.0), (300.0, 47.0)];

fn place(w: &[u64; 3], r: u64) -> (f64, f64) {
    let r = r as f64;
    let mut x = 0.0;
    let mut y = 0.0;
    for (i, (cx, cy)) in CORNERS.iter().enumerate() {
        x += w[i] as f64 / r * cx;
        y += w[i] as f64 / r * cy;
    }
    (x, y)
}

fn fill(s: Stabilizer) -> &'static str {
    match s {
        Stabilizer::Tau => "#e4572e",
        Stabilizer::Free => "#7fa7d9",
        Stabilizer::Transposition => "#8cc084",
    }
}

fn render_svg(tri: &Triangulation, cls: &OrbitClassification) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 600 520" width="600" height="520">"#
    );
    let _ = writeln!(
        out,
        r#"  <title>{} r={} #H={} triangles={}</title>"#,
        tri.kind,
        tri.r,
        tri.hsize,
        tri.len()
    );
    for (k, t) in tri.triangles.iter().enumerate() {
        let s = cls.stabilizer_of(k).unwrap_or(Stabilizer::Free);
        let pts: Vec<String> = t
            .iter()
            .map(|&i| {
                let (x, y) = place(&tri.points[i], tri.r);
                format!("{x:.2},{y:.2}")
            })
            .collect();
        let _ = writeln!(
            out,
            r##"  <polygon class="{}" points="{}" fill="{}" stroke="#222" stroke-width="1"/>"##,
            s.as_str(),
            pts.join(" "),
            fill(s)
        );
    }
    for w in &tri.points {
        let (x, y) = place(w, tri.r);
        let _ = writeln!(
            out,
            r##"  <circle cx="{x:.2}" cy="{y:.2}" r="3" fill="#222"/>"##
        );
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::super::{orbit_classify, triangulate_s3};
    use super::*;

    #[test]
    fn json_round_trip_shape() {
        let t = triangulate_s3(2).unwrap();
        let c = orbit_classify(&t).unwrap();
        let doc: FanDocument =
            serde_json::from_str(&export_fan(&t, &c, FanFormat::Json).unwrap()).unwrap();
        assert_eq!(doc.points.len(), 6);
        assert_eq!(doc.triangles.len(), 4);
        assert_eq!(
            doc.orbits.iter().map(|o| o.triangles.len()).sum::<usize>(),
            4
        );
    }

    #[test]
    fn svg_cells() {
        let t = triangulate_s3(5).unwrap();
        let c = orbit_classify(&t).unwrap();
        let svg = export_fan(&t, &c, FanFormat::Svg).unwrap();
        assert!(svg.contains(r#"viewBox="0 0 600 520""#));
        assert_eq!(svg.matches("<polygon").count(), 25);
        let t1 = triangulate_s3(1).unwrap();
        let c1 = orbit_classify(&t1).unwrap();
        let svg1 = export_fan(&t1, &c1, FanFormat::Svg).unwrap();
        assert_eq!(svg1.matches("<polygon").count(), 1);
    }
}

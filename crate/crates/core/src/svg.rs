//! Deterministic SVG figures.
//!
//! The canvas is 800×800 pixels over the world square `[−1.3, 1.3]²`.
//! Coordinates are written with three decimals, so equal scenes render to
//! equal bytes.

use std::f64::consts::TAU;
use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::ellipse::ConicForm;
use crate::error::Result;
use crate::norm::{natural_param, NormSpec};
use crate::point::Point;

pub const CANVAS: f64 = 800.0;
pub const VIEW: f64 = 1.3;
pub const CURVE_POINTS: usize = 512;
pub const VERTEX_RADIUS: f64 = 0.012;

/// A polygon drawn in orbit order, so star polygons show their windings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolyLayer {
    pub vertices: Vec<Point>,
    pub closed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Label {
    pub at: Point,
    pub text: String,
}

/// Layers are drawn in field order: sphere, homothets, ellipses,
/// polygons, labels.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Scene {
    pub sphere: Vec<Vec<Point>>,
    pub homothet: Vec<Vec<Point>>,
    pub ellipse: Vec<Vec<Point>>,
    pub polygon: Vec<PolyLayer>,
    /// Isolated points, drawn as vertex circles with the polygons.
    pub markers: Vec<Point>,
    pub labels: Vec<Label>,
    /// Emitted as an XML comment after the root element.
    pub comment: Option<String>,
}

/// `scale · S` sampled at [`CURVE_POINTS`] uniform angles.
pub fn sphere_curve(spec: &NormSpec, scale: f64) -> Vec<Point> {
    (0..CURVE_POINTS)
        .map(|i| scale * natural_param(spec, TAU * i as f64 / CURVE_POINTS as f64).coords)
        .collect()
}

/// The level set `conic = 1`, sampled like [`sphere_curve`].
pub fn conic_curve(conic: &ConicForm) -> Result<Vec<Point>> {
    Ok(sphere_curve(&conic.as_norm()?, 1.0))
}

fn px(p: Point) -> (f64, f64) {
    let s = CANVAS / (2.0 * VIEW);
    ((p.x + VIEW) * s, (VIEW - p.y) * s)
}

fn path_data(points: &[Point], closed: bool) -> String {
    let mut d = String::new();
    for (i, p) in points.iter().enumerate() {
        let (x, y) = px(*p);
        let _ = write!(d, "{}{x:.3} {y:.3}", if i == 0 { "M" } else { " L" });
    }
    if closed {
        d.push_str(" Z");
    }
    d
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

fn curves(out: &mut String, id: &str, stroke: &str, dash: bool, curves: &[Vec<Point>]) {
    if curves.is_empty() {
        return;
    }
    let dash = if dash {
        " stroke-dasharray=\"6 4\""
    } else {
        ""
    };
    let _ = writeln!(
        out,
        "<g id=\"{id}\" fill=\"none\" stroke=\"{stroke}\" stroke-width=\"1.5\"{dash}>"
    );
    for c in curves {
        let _ = writeln!(out, "<path d=\"{}\"/>", path_data(c, true));
    }
    out.push_str("</g>\n");
}

/// Renders the scene to an SVG document.
pub fn render_svg(scene: &Scene) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{c}\" height=\"{c}\" viewBox=\"0 0 {c} {c}\">",
        c = CANVAS
    );
    if let Some(comment) = &scene.comment {
        let _ = writeln!(out, "<!-- {} -->", comment.replace("--", "- -"));
    }
    let _ = writeln!(
        out,
        "<rect width=\"{CANVAS}\" height=\"{CANVAS}\" fill=\"white\"/>"
    );
    curves(&mut out, "sphere", "black", false, &scene.sphere);
    curves(&mut out, "homothet", "gray", true, &scene.homothet);
    curves(&mut out, "ellipse", "steelblue", false, &scene.ellipse);
    if !scene.polygon.is_empty() || !scene.markers.is_empty() {
        let r = VERTEX_RADIUS * CANVAS / (2.0 * VIEW);
        let circle = |out: &mut String, v: Point| {
            let (x, y) = px(v);
            let _ = writeln!(
                out,
                "<circle cx=\"{x:.3}\" cy=\"{y:.3}\" r=\"{r:.3}\" fill=\"firebrick\"/>"
            );
        };
        out.push_str("<g id=\"polygon\" stroke=\"firebrick\" stroke-width=\"1.2\">\n");
        for poly in &scene.polygon {
            let _ = writeln!(
                out,
                "<path fill=\"none\" d=\"{}\"/>",
                path_data(&poly.vertices, poly.closed)
            );
            for v in &poly.vertices {
                circle(&mut out, *v);
            }
        }
        for m in &scene.markers {
            circle(&mut out, *m);
        }
        out.push_str("</g>\n");
    }
    if !scene.labels.is_empty() {
        out.push_str("<g id=\"labels\" font-family=\"serif\" font-size=\"16\">\n");
        for l in &scene.labels {
            let (x, y) = px(l.at);
            let _ = writeln!(
                out,
                "<text x=\"{:.3}\" y=\"{:.3}\">{}</text>",
                x + 6.0,
                y - 6.0,
                escape(&l.text)
            );
        }
        out.push_str("</g>\n");
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circle_only() {
        let scene = Scene {
            sphere: vec![sphere_curve(&NormSpec::Euclidean, 1.0)],
            ..Scene::default()
        };
        let svg = render_svg(&scene);
        assert_eq!(svg.matches("<path").count(), 1);
        let path = svg.lines().find(|l| l.starts_with("<path")).unwrap();
        assert_eq!(path.matches(['M', 'L']).count(), 512);
        assert!(path.ends_with("Z\"/>"));
        assert!(!svg.contains("id=\"polygon\""));
    }

    #[test]
    fn pixel_mapping() {
        assert_eq!(px(Point::new(-1.3, 1.3)), (0.0, 0.0));
        let (x, y) = px(Point::new(1.0, 0.0));
        assert!((x - 707.692).abs() < 1e-3 && (y - 400.0).abs() < 1e-9);
    }

    #[test]
    fn layer_order_and_determinism() {
        let sq = NormSpec::square();
        let scene = Scene {
            sphere: vec![sphere_curve(&sq, 1.0)],
            homothet: vec![sphere_curve(&sq, 0.5)],
            polygon: vec![PolyLayer {
                vertices: vec![
                    Point::new(1.0, 0.0),
                    Point::new(0.0, 1.0),
                    Point::new(-1.0, 0.0),
                    Point::new(0.0, -1.0),
                ],
                closed: true,
            }],
            labels: vec![Label {
                at: Point::new(1.0, 0.0),
                text: "u <&>".into(),
            }],
            comment: Some("a--b".into()),
            ..Scene::default()
        };
        let svg = render_svg(&scene);
        assert_eq!(svg, render_svg(&scene));
        let pos = |s: &str| svg.find(s).unwrap();
        assert!(pos("id=\"sphere\"") < pos("id=\"homothet\""));
        assert!(pos("id=\"homothet\"") < pos("id=\"polygon\""));
        assert!(pos("id=\"polygon\"") < pos("id=\"labels\""));
        assert_eq!(svg.matches("<circle").count(), 4);
        assert!(svg.contains("u &lt;&amp;&gt;"));
        assert!(svg.contains("<!-- a- -b -->"));
    }
}

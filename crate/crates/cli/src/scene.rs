use rho_planes::chord::star_map;
use rho_planes::ellipse::fit_rho_ellipse;
use rho_planes::polygon::PolygonRecord;
use rho_planes::svg::{conic_curve, sphere_curve, Label, PolyLayer, Scene};
use rho_planes::{NormSpec, Point, UnitPoint};

use crate::error::CliError;

/// `S`, `ρS`, and optionally the ρ-ellipse through `u`, `(u+u*)/2ρ`, `u*`.
pub fn base_scene(
    spec: &NormSpec,
    rho: f64,
    ellipse_at: Option<&UnitPoint>,
) -> Result<Scene, CliError> {
    let mut scene = Scene {
        sphere: vec![sphere_curve(spec, 1.0)],
        homothet: vec![sphere_curve(spec, rho)],
        ..Scene::default()
    };
    if let Some(u) = ellipse_at {
        let star = star_map(spec, u, rho)?;
        let fit = fit_rho_ellipse(u, &star, rho)?;
        let w = (0.5 / rho) * (u.coords + star.coords);
        scene.ellipse.push(conic_curve(&fit.conic)?);
        scene.markers = vec![u.coords, w, star.coords];
        scene.labels = vec![
            Label {
                at: u.coords,
                text: "u".into(),
            },
            Label {
                at: w,
                text: "(u+u*)/2ρ".into(),
            },
            Label {
                at: star.coords,
                text: "u*".into(),
            },
        ];
    }
    Ok(scene)
}

/// Figure for a polygon record; the ellipse is anchored at its first vertex.
pub fn polygon_scene(record: &PolygonRecord, show_ellipse: bool) -> Result<Scene, CliError> {
    let spec: NormSpec = record.spec.parse()?;
    let seed = record.vertices.first().map(|&(theta, x, y)| UnitPoint {
        theta,
        coords: Point::new(x, y),
    });
    let anchor = if show_ellipse { seed.as_ref() } else { None };
    let mut scene = base_scene(&spec, record.rho, anchor)?;
    scene.polygon.push(PolyLayer {
        vertices: record.points(),
        closed: record.is_closed(),
    });
    Ok(scene)
}

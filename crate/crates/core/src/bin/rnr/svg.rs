//! Minimal SVG rendering of a sampled restricted numerical range:
//! boundary polygon, eigenvalue hull, and the restricted spectrum drawn
//! with star markers.

use std::fmt::Write as _;

use num_complex::Complex64;
use rnr::range::RnrResult;

const WIDTH: f64 = 640.0;

pub fn render_svg(res: &RnrResult, spectrum: &[Complex64]) -> String {
    // Fixed viewport: [alpha - 1, beta + 1] horizontally, symmetric
    // vertically around the real axis.
    let x_min = res.alpha - 1.0;
    let x_max = res.beta + 1.0;
    let mut y_abs = 1.0f64;
    for p in res
        .boundary_points
        .iter()
        .chain(spectrum)
        .chain(res.hull.vertices())
    {
        y_abs = y_abs.max(p.im.abs());
    }
    let y_abs = y_abs + 0.5;
    let scale = WIDTH / (x_max - x_min);
    let height = 2.0 * y_abs * scale;

    let px = |p: Complex64| ((p.re - x_min) * scale, (y_abs - p.im) * scale);
    let path_of = |points: &[Complex64], close: bool| {
        let mut d = String::new();
        for (i, &p) in points.iter().enumerate() {
            let (x, y) = px(p);
            let _ = write!(d, "{}{x:.2},{y:.2} ", if i == 0 { "M" } else { "L" });
        }
        if close && points.len() > 1 {
            d.push('Z');
        }
        d
    };

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r##"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{height:.0}" viewBox="0 0 {WIDTH} {height:.0}">"##
    );
    let _ = writeln!(svg, r##"<rect width="100%" height="100%" fill="white"/>"##);

    // Axes, when they cross the viewport.
    if x_min < 0.0 && x_max > 0.0 {
        let (x0, _) = px(Complex64::ZERO);
        let _ = writeln!(
            svg,
            r##"<line x1="{x0:.2}" y1="0" x2="{x0:.2}" y2="{height:.0}" stroke="#cccccc"/>"##
        );
    }
    let (_, y0) = px(Complex64::ZERO);
    let _ = writeln!(
        svg,
        r##"<line x1="0" y1="{y0:.2}" x2="{WIDTH}" y2="{y0:.2}" stroke="#cccccc"/>"##
    );

    if !res.boundary_points.is_empty() {
        let _ = writeln!(
            svg,
            r##"<path d="{}" fill="none" stroke="#1f77b4" stroke-width="1.5"/>"##,
            path_of(&res.boundary_points, true)
        );
    }
    if res.hull.len() > 1 {
        let _ = writeln!(
            svg,
            r##"<path d="{}" fill="none" stroke="#d62728" stroke-width="1" stroke-dasharray="5,4"/>"##,
            path_of(res.hull.vertices(), true)
        );
    }
    for &ev in spectrum {
        let (x, y) = px(ev);
        let r = 4.0;
        let d = 2.8;
        let _ = writeln!(
            svg,
            r##"<path d="M{:.2},{y:.2} L{:.2},{y:.2} M{x:.2},{:.2} L{x:.2},{:.2} M{:.2},{:.2} L{:.2},{:.2} M{:.2},{:.2} L{:.2},{:.2}" stroke="#2ca02c" stroke-width="1.2"/>"##,
            x - r,
            x + r,
            y - r,
            y + r,
            x - d,
            y - d,
            x + d,
            y + d,
            x - d,
            y + d,
            x + d,
            y - d,
        );
    }
    svg.push_str("</svg>\n");
    svg
}

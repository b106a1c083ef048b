//! Configuration input and mesh, curve and report output.

pub mod config;
pub mod obj;
pub mod polygon;

use std::fmt::Write as _;

use serde::Serialize;

use crate::shadow::{ShadowDomain, ShadowDomain3D};
use crate::surface::Curve2D;

pub use config::{parse_config, BodyConfig, ConfigError, RadiusSpec};
pub use obj::{export_obj, mesh, parse_obj, Mesh, MeshSummary, ObjError};
pub use polygon::{parse_polygon, PolygonError};

/// Plain decimal with 9 significant digits, trailing zeros trimmed and
/// negative zero printed as `0`.
pub fn fmt_sig(x: f64) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    if x == 0.0 {
        return "0".to_string();
    }
    let mag = x.abs().log10().floor() as i32;
    let decimals = (8 - mag).clamp(0, 340) as usize;
    let mut s = format!("{x:.decimals$}");
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    if s == "-0" {
        s = "0".to_string();
    }
    s
}

/// `phi,x,y` rows, one per sample, the closing sample included.
pub fn curve_csv(curve: &Curve2D) -> String {
    let mut s = String::from("phi,x,y\n");
    for (phi, p) in &curve.samples {
        let _ = writeln!(s, "{},{},{}", fmt_sig(*phi), fmt_sig(p.x), fmt_sig(p.y));
    }
    s
}

/// Closed SVG path in curve coordinates. The `viewBox` is the bounding box of
/// the samples; `y` is flipped so the picture is not mirrored.
pub fn curve_svg(curve: &Curve2D) -> String {
    let pts: Vec<_> = curve.open_points().collect();
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for p in &pts {
        x0 = x0.min(p.x);
        x1 = x1.max(p.x);
        y0 = y0.min(p.y);
        y1 = y1.max(p.y);
    }
    let stroke = 0.005 * (x1 - x0).max(y1 - y0).max(f64::MIN_POSITIVE);
    let mut d = String::new();
    for (k, p) in pts.iter().enumerate() {
        let _ = write!(d, "{}{} {} ", if k == 0 { "M" } else { "L" }, fmt_sig(p.x), fmt_sig(-p.y));
    }
    d.push('Z');
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{} {} {} {}\">\n  <path d=\"{}\" fill=\"none\" stroke=\"black\" stroke-width=\"{}\"/>\n</svg>\n",
        fmt_sig(x0),
        fmt_sig(-y1),
        fmt_sig(x1 - x0),
        fmt_sig(y1 - y0),
        d,
        fmt_sig(stroke)
    )
}

/// `psi,R` rows.
pub fn shadow_csv(dom: &ShadowDomain) -> String {
    let mut s = String::from("psi,R\n");
    for (k, r) in dom.values.iter().enumerate() {
        let _ = writeln!(s, "{},{}", fmt_sig(dom.psi(k)), fmt_sig(*r));
    }
    s
}

/// `z,psi,R` rows, slice by slice.
pub fn shadow3d_csv(dom: &ShadowDomain3D) -> String {
    let mut s = String::from("z,psi,R\n");
    for (z, slice) in &dom.slices {
        for (k, r) in slice.values.iter().enumerate() {
            let _ = writeln!(s, "{},{},{}", fmt_sig(*z), fmt_sig(slice.psi(k)), fmt_sig(*r));
        }
    }
    s
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::afunc::OddProfile;
    use nalgebra::Vector2;

    #[test]
    fn significant_digits() {
        assert_eq!(fmt_sig(0.0), "0");
        assert_eq!(fmt_sig(-0.0), "0");
        assert_eq!(fmt_sig(-1e-12), "-0.000000000001");
        assert_eq!(fmt_sig(1.0), "1");
        assert_eq!(fmt_sig(std::f64::consts::PI), "3.14159265");
        assert_eq!(fmt_sig(-123456.789123), "-123456.789");
        assert_eq!(fmt_sig(2.5e7), "25000000");
        assert_eq!(fmt_sig(1.0e-300).parse::<f64>().unwrap(), 1.0e-300);
    }

    #[test]
    fn fmt_sig_round_trips_to_nine_digits() {
        for x in [1.234567891234, -9.87654321e-5, 6.02214076e23, 0.1 + 0.2] {
            let back: f64 = fmt_sig(x).parse().unwrap();
            assert!(((back - x) / x).abs() < 1e-8, "{x} -> {}", fmt_sig(x));
        }
    }

    #[test]
    fn circle_svg_box() {
        let c = Curve2D::sample(&OddProfile::zero(), 1.5, Vector2::zeros(), 256).unwrap();
        let svg = curve_svg(&c);
        let vb = svg.split("viewBox=\"").nth(1).unwrap().split('"').next().unwrap();
        let v: Vec<f64> = vb.split(' ').map(|t| t.parse().unwrap()).collect();
        assert!((v[2] - 3.0).abs() < 1e-6 && (v[3] - 3.0).abs() < 1e-6, "{vb}");
        assert!(svg.contains("Z\""));
        let csv = curve_csv(&c);
        assert!(csv.starts_with("phi,x,y\n"));
        assert_eq!(csv.lines().count(), 258);
    }
}

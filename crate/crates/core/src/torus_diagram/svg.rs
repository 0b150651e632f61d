//! Deterministic SVG rendering of torus diagrams.
//!
//! The unit square is drawn with identified edges; arcs are colored by label
//! and split where they wrap; bridge points are marked by sign. Output is a
//! pure function of the diagram, so identical inputs give identical bytes.

use super::{Label, TorusDiagram};
use crate::rational::Frac;
use std::fmt::Write;

const SIZE: f64 = 512.0;
const MARGIN: f64 = 24.0;

fn color(label: Label) -> &'static str {
    match label {
        Label::A => "#c0392b",
        Label::B => "#2471a3",
        Label::C => "#1e8449",
    }
}

fn fmt(v: f64) -> String {
    format!("{:.4}", v)
}

fn to_px(f: &Frac) -> f64 {
    MARGIN + f.to_f64() * (SIZE - 2.0 * MARGIN)
}

fn to_px_y(f: &Frac) -> f64 {
    // y axis points up in the diagram, down in SVG
    MARGIN + (1.0 - f.to_f64()) * (SIZE - 2.0 * MARGIN)
}

/// Split a segment in unwrapped coordinates at integer x boundaries and
/// translate every piece back into the unit square.
fn wrapped_pieces(p: (&Frac, &Frac), q: (&Frac, &Frac)) -> Vec<((f64, f64), (f64, f64))> {
    let (x0, y0) = (p.0.clone(), p.1.clone());
    let (x1, y1) = (q.0.clone(), q.1.clone());
    // collect integer cut positions strictly between x0 and x1
    let (lo, hi) = if x0 <= x1 {
        (x0.clone(), x1.clone())
    } else {
        (x1.clone(), x0.clone())
    };
    let mut cuts: Vec<Frac> = Vec::new();
    let mut k = lo.floor_int();
    use num_traits::ToPrimitive;
    let hi_i = hi.floor_int().to_i64().unwrap_or(0) + 1;
    let mut ki = k.to_i64().unwrap_or(0);
    while ki <= hi_i {
        let c = Frac::int(ki);
        if c > lo && c < hi {
            cuts.push(c);
        }
        ki += 1;
        k += 1i64;
    }
    let mut params = vec![Frac::zero()];
    let dx = &x1 - &x0;
    for c in cuts {
        if !dx.is_zero() {
            params.push(&(&c - &x0) / &dx);
        }
    }
    params.push(Frac::one());
    params.sort();
    params.dedup();

    let dy = &y1 - &y0;
    let mut out = Vec::new();
    for w in params.windows(2) {
        let (t0, t1) = (&w[0], &w[1]);
        if t0 == t1 {
            continue;
        }
        let ax = &x0 + &(t0 * &dx);
        let ay = &y0 + &(t0 * &dy);
        let bx = &x0 + &(t1 * &dx);
        let by = &y0 + &(t1 * &dy);
        // shift the piece so its midpoint x lies in [0,1)
        let midx = &(&ax + &bx) / &Frac::int(2);
        let shift = midx.floor_int();
        let sh = Frac(num_rational::BigRational::from_integer(shift));
        out.push((
            (to_px(&(&ax - &sh)), to_px_y(&ay)),
            (to_px(&(&bx - &sh)), to_px_y(&by)),
        ));
    }
    out
}

/// Render the diagram as an SVG 1.1 document.
pub fn render_svg(d: &TorusDiagram) -> String {
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{s}\" height=\"{s}\" viewBox=\"0 0 {s} {s}\">",
        s = SIZE
    );
    let _ = writeln!(
        svg,
        "  <rect x=\"{m}\" y=\"{m}\" width=\"{w}\" height=\"{w}\" fill=\"white\" stroke=\"black\" stroke-width=\"1\"/>",
        m = MARGIN,
        w = SIZE - 2.0 * MARGIN
    );
    for arc in &d.arcs {
        for (p, q) in arc.segments() {
            for ((x0, y0), (x1, y1)) in wrapped_pieces((&p.0, &p.1), (&q.0, &q.1)) {
                let _ = writeln!(
                    svg,
                    "  <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{}\" stroke-width=\"1.5\"/>",
                    fmt(x0),
                    fmt(y0),
                    fmt(x1),
                    fmt(y1),
                    color(arc.label)
                );
            }
        }
    }
    for bp in &d.bridge_points {
        let cx = to_px(&bp.x);
        let cy = to_px_y(&bp.y);
        if bp.sign > 0 {
            let _ = writeln!(
                svg,
                "  <circle cx=\"{}\" cy=\"{}\" r=\"3\" fill=\"black\"/>",
                fmt(cx),
                fmt(cy)
            );
        } else {
            let _ = writeln!(
                svg,
                "  <circle cx=\"{}\" cy=\"{}\" r=\"3\" fill=\"white\" stroke=\"black\" stroke-width=\"1\"/>",
                fmt(cx),
                fmt(cy)
            );
        }
    }
    svg.push_str("</svg>\n");
    svg
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::{Factor, Factorization};
    use crate::torus_diagram::build::build_from_factorization;

    #[test]
    fn empty_diagram_square_only() {
        let svg = render_svg(&TorusDiagram::empty());
        assert!(svg.contains("<rect"));
        assert!(!svg.contains("<line"));
        assert!(!svg.contains("<circle"));
    }

    #[test]
    fn one_factor_diagram_counts() {
        let f = Factorization {
            strands: 2,
            degree: 2,
            factors: vec![Factor {
                conjugator: vec![],
                exponent: 2,
            }],
        };
        let d = build_from_factorization(&f).unwrap();
        let svg = render_svg(&d);
        let lines = svg.matches("<line").count();
        let markers = svg.matches("<circle").count();
        assert!(lines >= 12, "expected at least 12 arc segments, got {lines}");
        assert_eq!(markers, 4);
    }

    #[test]
    fn rendering_is_deterministic() {
        let f = Factorization {
            strands: 3,
            degree: 3,
            factors: vec![
                Factor {
                    conjugator: vec![2],
                    exponent: 1,
                },
                Factor {
                    conjugator: vec![],
                    exponent: 2,
                },
                Factor {
                    conjugator: vec![],
                    exponent: 3,
                },
            ],
        };
        let d = build_from_factorization(&f).unwrap();
        assert_eq!(render_svg(&d), render_svg(&d));
    }
}

//! Deterministic SVG and ASCII rendering of diagrams on the cut-open
//! cylinder. The cut sits at θ = 0 (between θ-ranks n and 1); wrapping
//! horizontal arcs are drawn in two pieces with wrap markers at the cut.
//! Verticals pass over horizontals, so horizontal strokes are broken at
//! crossings.

use crate::diagram::{RectDiagram, Sweep};
use crate::geometry::FrontPolyline;
use crate::invariants::crossings;
use std::fmt::Write as _;

#[derive(Clone, Copy, Debug)]
pub struct RenderOptions {
    /// Pixel size of one grid cell.
    pub cell: f64,
    /// Half-width of the gap cut into a horizontal stroke at a crossing.
    pub gap: f64,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            cell: 40.0,
            gap: 6.0,
        }
    }
}

fn fmt_f(v: f64) -> String {
    format!("{v:.2}")
}

/// SVG rendering; byte-identical for identical input and options.
pub fn render_svg(d: &RectDiagram, opts: &RenderOptions) -> String {
    let n = d.n() as f64;
    let cell = opts.cell;
    let width = (n + 1.0) * cell;
    let height = (n + 1.0) * cell;
    let x_of = |col: usize| col as f64 * cell;
    // z grows upward, SVG y grows downward
    let y_of = |row: usize| (n + 1.0 - row as f64) * cell;

    let mut body = String::new();
    let crossing_list = crossings(d);

    // horizontal strokes, split at the cut and at crossings
    for arc in d.rows() {
        let y = y_of(arc.z_rank);
        let mut spans: Vec<(f64, f64)> = Vec::new();
        if d.wraps_seam(arc) {
            let (lo_col, hi_col) = match arc.sweep {
                Sweep::Plus => (arc.head_col, arc.tail_col),
                Sweep::Minus => (arc.tail_col, arc.head_col),
            };
            spans.push((0.5 * cell, x_of(lo_col)));
            spans.push((x_of(hi_col), (n + 0.5) * cell));
            writeln!(
                body,
                "  <path class=\"wrap-marker\" d=\"M {x0} {y0} l -6 -4 l 0 8 z\"/>",
                x0 = fmt_f(0.5 * cell + 6.0),
                y0 = fmt_f(y)
            )
            .unwrap();
            writeln!(
                body,
                "  <path class=\"wrap-marker\" d=\"M {x0} {y0} l 6 -4 l 0 8 z\"/>",
                x0 = fmt_f((n + 0.5) * cell - 6.0),
                y0 = fmt_f(y)
            )
            .unwrap();
        } else {
            let (a, b) = (
                x_of(arc.tail_col.min(arc.head_col)),
                x_of(arc.tail_col.max(arc.head_col)),
            );
            spans.push((a, b));
        }

        // cut gaps where a vertical passes over this row
        let mut gaps: Vec<f64> = crossing_list
            .iter()
            .filter(|c| c.row == arc.z_rank)
            .map(|c| x_of(c.col))
            .collect();
        gaps.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (x0, x1) in spans {
            let mut start = x0;
            let mut pieces = Vec::new();
            for &g in gaps.iter().filter(|&&g| g > x0 && g < x1) {
                pieces.push((start, g - opts.gap));
                start = g + opts.gap;
            }
            pieces.push((start, x1));
            for (a, b) in pieces {
                if b > a {
                    writeln!(
                        body,
                        "  <line class=\"horizontal\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>",
                        fmt_f(a),
                        fmt_f(y),
                        fmt_f(b),
                        fmt_f(y)
                    )
                    .unwrap();
                }
            }
        }
    }

    // vertical strokes, always unbroken (they pass over)
    for v in d.verticals() {
        let x = x_of(v.col);
        let (lo, hi) = (v.from_row.min(v.to_row), v.from_row.max(v.to_row));
        writeln!(
            body,
            "  <line class=\"vertical\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>",
            fmt_f(x),
            fmt_f(y_of(hi)),
            fmt_f(x),
            fmt_f(y_of(lo))
        )
        .unwrap();
    }

    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n\
         <style>line {{ stroke: black; stroke-width: 2; stroke-linecap: round; }} .wrap-marker {{ fill: black; }}</style>\n\
         {body}</svg>\n",
        w = fmt_f(width),
        h = fmt_f(height),
    )
}

/// ASCII rendering on a (2n+1) x (2n+1) character grid; row 1 is at the
/// bottom. Verticals win at crossings (the horizontal is interrupted).
pub fn render_ascii(d: &RectDiagram) -> String {
    let n = d.n();
    let w = 2 * n + 1;
    let mut grid = vec![vec![' '; w]; w];
    let x_of = |col: usize| 2 * col - 1;
    let y_of = |row: usize| 2 * (n - row) + 1;

    for arc in d.rows() {
        let y = y_of(arc.z_rank);
        let mut xs: Vec<usize> = Vec::new();
        if d.wraps_seam(arc) {
            let (lo, hi) = match arc.sweep {
                Sweep::Plus => (arc.head_col, arc.tail_col),
                Sweep::Minus => (arc.tail_col, arc.head_col),
            };
            xs.extend(0..=x_of(lo));
            xs.extend(x_of(hi)..w);
        } else {
            let (lo, hi) = (
                arc.tail_col.min(arc.head_col),
                arc.tail_col.max(arc.head_col),
            );
            xs.extend(x_of(lo)..=x_of(hi));
        }
        for x in xs {
            grid[y][x] = '-';
        }
    }

    for v in d.verticals() {
        let x = x_of(v.col);
        let (lo, hi) = (v.from_row.min(v.to_row), v.from_row.max(v.to_row));
        for row in grid.iter_mut().take(y_of(lo) + 1).skip(y_of(hi)) {
            row[x] = '|';
        }
    }

    // corners
    for arc in d.rows() {
        let y = y_of(arc.z_rank);
        grid[y][x_of(arc.tail_col)] = '+';
        grid[y][x_of(arc.head_col)] = '+';
    }

    let mut out = String::with_capacity(w * (w + 1));
    for row in grid {
        let line: String = row.into_iter().collect();
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

/// Minimal SVG of a front polyline; cusp vertices are dotted.
pub fn render_front_svg(front: &FrontPolyline) -> String {
    let mut min_x = f64::MAX;
    let mut max_x = f64::MIN;
    let mut min_z = f64::MAX;
    let mut max_z = f64::MIN;
    for v in front.loops.iter().flatten() {
        min_x = min_x.min(v.x);
        max_x = max_x.max(v.x);
        min_z = min_z.min(v.z);
        max_z = max_z.max(v.z);
    }
    let scale = 40.0;
    let pad = 20.0;
    let tx = |x: f64| pad + (x - min_x) * scale;
    // front z grows upward
    let tz = |z: f64| pad + (max_z - z) * scale;
    let w = tx(max_x) + pad;
    let h = tz(min_z) + pad;

    let mut body = String::new();
    for vertices in &front.loops {
        let mut dstr = String::new();
        for (i, v) in vertices.iter().enumerate() {
            let cmd = if i == 0 { 'M' } else { 'L' };
            write!(dstr, "{cmd} {} {} ", fmt_f(tx(v.x)), fmt_f(tz(v.z))).unwrap();
        }
        dstr.push('Z');
        writeln!(body, "  <path class=\"front\" d=\"{dstr}\"/>").unwrap();
        for v in vertices.iter().filter(|v| v.cusp.is_some()) {
            writeln!(
                body,
                "  <circle class=\"cusp\" cx=\"{}\" cy=\"{}\" r=\"3\"/>",
                fmt_f(tx(v.x)),
                fmt_f(tz(v.z))
            )
            .unwrap();
        }
    }

    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n\
         <style>.front {{ stroke: black; stroke-width: 2; fill: none; }} .cusp {{ fill: black; }}</style>\n\
         {body}</svg>\n",
        w = fmt_f(w),
        h = fmt_f(h),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_braid_closure, gen_unknot_braided, gen_unknot_rect};

    #[test]
    fn e1_svg_strokes_and_no_gaps() {
        let svg = render_svg(&gen_unknot_rect(), &RenderOptions::default());
        assert_eq!(svg.matches("class=\"horizontal\"").count(), 2);
        assert_eq!(svg.matches("class=\"vertical\"").count(), 2);
        assert_eq!(svg.matches("class=\"wrap-marker\"").count(), 0);
    }

    #[test]
    fn e2_svg_shows_wrap_marker() {
        let svg = render_svg(&gen_unknot_braided(), &RenderOptions::default());
        assert!(svg.matches("class=\"wrap-marker\"").count() > 0);
    }

    #[test]
    fn rendering_is_deterministic() {
        let d = gen_braid_closure(&[1, 1, 1], 2).unwrap();
        let opts = RenderOptions::default();
        assert_eq!(render_svg(&d, &opts), render_svg(&d, &opts));
        assert_eq!(render_ascii(&d), render_ascii(&d));
    }

    #[test]
    fn crossing_breaks_horizontal_stroke() {
        let d = gen_braid_closure(&[1], 2).unwrap();
        // one crossing: that row contributes one extra horizontal piece
        let svg = render_svg(&d, &RenderOptions::default());
        let horizontal_count = svg.matches("class=\"horizontal\"").count();
        assert!(horizontal_count > d.n());
    }

    #[test]
    fn ascii_contains_grid_characters() {
        let art = render_ascii(&gen_unknot_rect());
        assert!(art.contains('+') && art.contains('-') && art.contains('|'));
    }
}

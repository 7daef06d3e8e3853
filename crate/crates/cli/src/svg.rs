//! Static SVG plots of the CSV tables. Output is a pure function of the input.

use std::fmt::Write;

use crate::error::CliError;
use crate::table::Table;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 420.0;
const LEFT: f64 = 72.0;
const RIGHT: f64 = 24.0;
const TOP: f64 = 36.0;
const BOTTOM: f64 = 56.0;
const COLORS: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlotKind {
    /// Gap series (`inv_m`, `gap_eV`), one line per model.
    GapVsInvM,
    /// Counting function (`x`, `sigma`), one step curve per model and `m`.
    Counting,
    /// Band table (`band_index`, `lo`, `hi`), one bar per band.
    Bands,
}

#[derive(Clone, Copy)]
enum Style {
    Line,
    Step,
    Bars,
}

struct Series {
    label: String,
    points: Vec<(f64, f64)>,
    bars: Vec<(f64, f64, f64)>,
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Series label of each row: the `(prefix, column)` cells that exist, joined.
fn labels(table: &Table, keys: &[(&str, &str)]) -> Vec<String> {
    let cols: Vec<(&str, usize)> = keys.iter().filter_map(|&(p, k)| table.column(k).map(|c| (p, c))).collect();
    table
        .rows
        .iter()
        .map(|r| cols.iter().map(|&(p, c)| format!("{p}{}", r[c])).collect::<Vec<_>>().join(" "))
        .collect()
}

fn group<F: FnMut(usize, &mut Series)>(labels: &[String], mut add: F) -> Vec<Series> {
    let mut out: Vec<Series> = Vec::new();
    for (i, label) in labels.iter().enumerate() {
        let pos = match out.iter().position(|s| &s.label == label) {
            Some(p) => p,
            None => {
                out.push(Series { label: label.clone(), points: Vec::new(), bars: Vec::new() });
                out.len() - 1
            }
        };
        add(i, &mut out[pos]);
    }
    out
}

/// A step of 1, 2 or 5 times a power of ten giving about five ticks.
fn tick_step(span: f64) -> f64 {
    let raw = span / 5.0;
    let mag = 10f64.powf(raw.log10().floor());
    [1.0, 2.0, 5.0, 10.0].into_iter().map(|f| f * mag).find(|&s| s >= raw).unwrap_or(10.0 * mag)
}

fn ticks(lo: f64, hi: f64) -> (Vec<f64>, usize) {
    let step = tick_step(hi - lo);
    let decimals = (-step.log10().floor()).max(0.0) as usize;
    let first = (lo / step).ceil() as i64;
    let last = (hi / step).floor() as i64;
    ((first..=last).map(|i| i as f64 * step).collect(), decimals)
}

fn padded(lo: f64, hi: f64) -> (f64, f64) {
    if hi > lo {
        let pad = 0.05 * (hi - lo);
        (lo - pad, hi + pad)
    } else {
        (lo - 0.5, hi + 0.5)
    }
}

struct Frame {
    x: (f64, f64),
    y: (f64, f64),
}

impl Frame {
    fn px(&self, x: f64) -> f64 {
        LEFT + (x - self.x.0) / (self.x.1 - self.x.0) * (WIDTH - LEFT - RIGHT)
    }

    fn py(&self, y: f64) -> f64 {
        HEIGHT - BOTTOM - (y - self.y.0) / (self.y.1 - self.y.0) * (HEIGHT - TOP - BOTTOM)
    }
}

fn draw(series: &[Series], style: Style, xlabel: &str, ylabel: &str, title: &str, edge_ticks: &[f64]) -> String {
    let xs = series
        .iter()
        .flat_map(|s| s.points.iter().map(|p| p.0).chain(s.bars.iter().flat_map(|b| [b.0, b.1]))).chain(edge_ticks.iter().copied());
    let ys = series.iter().flat_map(|s| s.points.iter().map(|p| p.1).chain(s.bars.iter().map(|b| b.2)));
    let bounds = |it: &mut dyn Iterator<Item = f64>| {
        it.filter(|v| v.is_finite()).fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| (a.min(v), b.max(v)))
    };
    let (x0, x1) = bounds(&mut xs.into_iter());
    let (y0, y1) = bounds(&mut ys.into_iter());
    let frame = Frame { x: padded(x0, x1), y: padded(y0.min(0.0), y1) };
    let (bx, by) = (frame.px(frame.x.0), frame.py(frame.y.0));
    let (ex, ey) = (frame.px(frame.x.1), frame.py(frame.y.1));

    let mut s = String::new();
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#);
    let _ = writeln!(s, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = writeln!(s, r#"<text x="{:.2}" y="20" text-anchor="middle" font-size="14">{}</text>"#, WIDTH / 2.0, escape(title));
    let _ = writeln!(s, r#"<rect x="{bx:.2}" y="{ey:.2}" width="{:.2}" height="{:.2}" fill="none" stroke="black"/>"#, ex - bx, by - ey);

    let (xt, xd) = ticks(frame.x.0, frame.x.1);
    for t in xt {
        let x = frame.px(t);
        let _ = writeln!(s, r#"<line x1="{x:.2}" y1="{by:.2}" x2="{x:.2}" y2="{:.2}" stroke="black"/>"#, by + 5.0);
        let _ = writeln!(s, r#"<text x="{x:.2}" y="{:.2}" text-anchor="middle">{t:.xd$}</text>"#, by + 18.0);
    }
    let (yt, yd) = ticks(frame.y.0, frame.y.1);
    for t in yt {
        let y = frame.py(t);
        let _ = writeln!(s, r#"<line x1="{:.2}" y1="{y:.2}" x2="{bx:.2}" y2="{y:.2}" stroke="black"/>"#, bx - 5.0);
        let _ = writeln!(s, r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{t:.yd$}</text>"#, bx - 8.0, y + 4.0);
    }
    for &t in edge_ticks {
        let x = frame.px(t);
        let _ = writeln!(s, r##"<line x1="{x:.2}" y1="{by:.2}" x2="{x:.2}" y2="{:.2}" stroke="#7f7f7f" stroke-width="1.5"/>"##, by - 8.0);
    }
    let _ = writeln!(s, r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#, (bx + ex) / 2.0, HEIGHT - 12.0, escape(xlabel));
    let _ = writeln!(
        s,
        r#"<text x="16" y="{0:.2}" text-anchor="middle" transform="rotate(-90 16 {0:.2})">{1}</text>"#,
        (by + ey) / 2.0,
        escape(ylabel)
    );

    for (i, series) in series.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        match style {
            Style::Line | Style::Step => {
                let mut path = String::new();
                let mut prev: Option<(f64, f64)> = None;
                for &(x, y) in series.points.iter().filter(|p| p.0.is_finite() && p.1.is_finite()) {
                    let (px, py) = (frame.px(x), frame.py(y));
                    match prev {
                        None => {
                            let _ = write!(path, "M{px:.2},{py:.2}");
                        }
                        Some((_, qy)) if matches!(style, Style::Step) => {
                            let _ = write!(path, " L{px:.2},{qy:.2} L{px:.2},{py:.2}");
                        }
                        Some(_) => {
                            let _ = write!(path, " L{px:.2},{py:.2}");
                        }
                    }
                    prev = Some((px, py));
                }
                let _ = writeln!(s, r#"<path d="{path}" fill="none" stroke="{color}" stroke-width="1.5"/>"#);
                if matches!(style, Style::Line) {
                    for &(x, y) in series.points.iter().filter(|p| p.0.is_finite() && p.1.is_finite()) {
                        let _ = writeln!(s, r#"<circle cx="{:.2}" cy="{:.2}" r="2.5" fill="{color}"/>"#, frame.px(x), frame.py(y));
                    }
                }
            }
            Style::Bars => {
                for &(lo, hi, y) in &series.bars {
                    let (x0, x1, py) = (frame.px(lo), frame.px(hi), frame.py(y));
                    let _ = writeln!(s, r#"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="8" fill="{color}"/>"#, x0 - 1.0, py - 4.0, (x1 - x0) + 2.0);
                }
            }
        }
        let ly = TOP + 14.0 + 16.0 * i as f64;
        let lx = ex - 130.0;
        let _ = writeln!(s, r#"<line x1="{lx:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="{color}" stroke-width="3"/>"#, ly - 4.0, lx + 20.0, ly - 4.0);
        let _ = writeln!(s, r#"<text x="{:.2}" y="{ly:.2}">{}</text>"#, lx + 26.0, escape(&series.label));
    }
    s.push_str("</svg>\n");
    s
}

/// Renders a table written by this crate as a standalone SVG document.
pub fn render_svg(csv: &str, kind: PlotKind) -> Result<String, CliError> {
    render_svg_with_ticks(csv, kind, &[])
}

/// As [`render_svg`], with extra marks on the horizontal axis (band edges).
pub fn render_svg_with_ticks(csv: &str, kind: PlotKind, edge_ticks: &[f64]) -> Result<String, CliError> {
    let table = Table::from_csv(csv)?;
    if table.rows.is_empty() {
        return Err(CliError::Csv("empty series".into()));
    }
    let svg = match kind {
        PlotKind::GapVsInvM => {
            let (x, y) = (table.numbers("inv_m")?, table.numbers("gap_eV")?);
            let series = group(&labels(&table, &[("", "monomer"), ("", "model")]), |i, s| s.points.push((x[i], y[i])));
            draw(&series, Style::Line, "1/m", "gap (eV)", "Oligomer gaps", edge_ticks)
        }
        PlotKind::Counting => {
            let (x, y) = (table.numbers("x")?, table.numbers("sigma")?);
            let series = group(&labels(&table, &[("", "model"), ("m=", "m")]), |i, s| s.points.push((x[i], y[i])));
            draw(&series, Style::Step, "x", "eigenvalues per monomer below x", "Counting function", edge_ticks)
        }
        PlotKind::Bands => {
            let (lo, hi, idx) = (table.numbers("lo")?, table.numbers("hi")?, table.numbers("band_index")?);
            let series = group(&labels(&table, &[("", "model")]), |i, s| s.bars.push((lo[i], hi[i], idx[i])));
            let edges: Vec<f64> = if edge_ticks.is_empty() {
                lo.iter().chain(&hi).copied().collect()
            } else {
                edge_ticks.to_vec()
            };
            draw(&series, Style::Bars, "spectral parameter", "band index", "Polymer bands", &edges)
        }
    };
    Ok(svg)
}

#[cfg(test)]
mod tests {
    use super::*;

    const GAPS: &str = "model,monomer,m,inv_m,gap_eV\nhmo,PA,1,1,6.1\nhmo,PA,2,0.5,3.7\nfe,PA,1,1,6.4\n";

    #[test]
    fn deterministic_and_well_formed() {
        let a = render_svg(GAPS, PlotKind::GapVsInvM).unwrap();
        let b = render_svg(GAPS, PlotKind::GapVsInvM).unwrap();
        assert_eq!(a, b);
        assert!(a.starts_with("<svg") && a.ends_with("</svg>\n"));
        assert_eq!(a.matches("<path").count(), 2);
        assert_eq!(a.matches("<circle").count(), 3);
        assert!(a.contains(">1/m<"));
    }

    #[test]
    fn empty_and_malformed_input() {
        assert!(render_svg("model,monomer,m,inv_m,gap_eV\n", PlotKind::GapVsInvM).is_err());
        assert!(render_svg("", PlotKind::Counting).is_err());
        assert!(render_svg("x,y\n1,2\n", PlotKind::Counting).is_err());
    }

    #[test]
    fn counting_steps_and_edge_ticks() {
        let csv = "model,m,x,sigma\nhmo,2,-1,0\nhmo,2,0,1\nhmo,2,1,3\n";
        let svg = render_svg_with_ticks(csv, PlotKind::Counting, &[-0.5, 0.5]).unwrap();
        assert_eq!(svg.matches("stroke=\"#7f7f7f\" stroke-width=\"1.5\"/>").count(), 2);
        assert!(svg.contains("hmo m=2"));
    }

    #[test]
    fn ticks_are_round() {
        assert_eq!(tick_step(10.0), 2.0);
        assert_eq!(tick_step(0.7), 0.2);
        let (t, d) = ticks(-2.5, 2.5);
        assert_eq!(t, vec![-2.0, -1.0, 0.0, 1.0, 2.0]);
        assert_eq!(d, 0);
    }
}

//! Static SVG line plots of sweep results.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::experiment::SweepResult;

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 500.0;
const MARGIN_LEFT: f64 = 80.0;
const MARGIN_RIGHT: f64 = 220.0;
const MARGIN_TOP: f64 = 40.0;
const MARGIN_BOTTOM: f64 = 60.0;

/// Fraction of the data span added on each side of both axes.
pub const AXIS_MARGIN: f64 = 0.05;

const PALETTE: [&str; 8] = [
    "#1f4fd6", "#222222", "#d62728", "#2ca02c", "#c41bc4", "#ff7f0e", "#17becf", "#8c564b",
];

/// Axis extents: data [min, max] widened by 5% of the span on each side.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlotBounds {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
}

fn padded(lo: f64, hi: f64) -> (f64, f64) {
    let span = hi - lo;
    if span > 0.0 {
        (lo - AXIS_MARGIN * span, hi + AXIS_MARGIN * span)
    } else {
        // flat data: pad by 5% of magnitude, or a unit box around zero
        let pad = if lo.abs() > 0.0 { AXIS_MARGIN * lo.abs() } else { 0.5 };
        (lo - pad, hi + pad)
    }
}

impl PlotBounds {
    pub fn of(results: &[SweepResult]) -> Result<Self> {
        let mut xs = (f64::INFINITY, f64::NEG_INFINITY);
        let mut ys = (f64::INFINITY, f64::NEG_INFINITY);
        for row in results.iter().flat_map(|r| &r.rows) {
            xs = (xs.0.min(row.swept_value), xs.1.max(row.swept_value));
            ys = (ys.0.min(row.value), ys.1.max(row.value));
        }
        if !(xs.0.is_finite() && xs.1.is_finite() && ys.0.is_finite() && ys.1.is_finite()) {
            return Err(Error::Usage("cannot plot: no finite data points".into()));
        }
        let (x_min, x_max) = padded(xs.0, xs.1);
        let (y_min, y_max) = padded(ys.0, ys.1);
        Ok(PlotBounds {
            x_min,
            x_max,
            y_min,
            y_max,
        })
    }

    fn px(&self, x: f64) -> f64 {
        MARGIN_LEFT + (x - self.x_min) / (self.x_max - self.x_min) * (WIDTH - MARGIN_LEFT - MARGIN_RIGHT)
    }

    fn py(&self, y: f64) -> f64 {
        HEIGHT - MARGIN_BOTTOM - (y - self.y_min) / (self.y_max - self.y_min) * (HEIGHT - MARGIN_TOP - MARGIN_BOTTOM)
    }
}

/// Tick label for a multiple of π/2.
fn half_pi_label(halves: i64) -> String {
    match halves {
        0 => "0".into(),
        1 => "π/2".into(),
        -1 => "−π/2".into(),
        2 => "π".into(),
        -2 => "−π".into(),
        h if h % 2 == 0 => format!("{}π", h / 2).replace('-', "−"),
        h => format!("{h}π/2").replace('-', "−"),
    }
}

fn nice_step(span: f64) -> f64 {
    let raw = span / 5.0;
    let magnitude = 10f64.powf(raw.log10().floor());
    let residual = raw / magnitude;
    let nice = if residual < 1.5 {
        1.0
    } else if residual < 3.0 {
        2.0
    } else if residual < 7.0 {
        5.0
    } else {
        10.0
    };
    nice * magnitude
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Renders every curve into one SVG document.
pub fn render_svg(results: &[SweepResult]) -> Result<String> {
    if results.is_empty() {
        return Err(Error::Usage("an SVG plot needs at least one curve".into()));
    }
    let bounds = PlotBounds::of(results)?;
    let mut svg = String::new();
    let w = &mut svg;
    // fmt::Write into a String is infallible
    let _ = writeln!(
        w,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(w, r#"<rect width="100%" height="100%" fill="white"/>"#);

    let (left, right) = (MARGIN_LEFT, WIDTH - MARGIN_RIGHT);
    let (top, bottom) = (MARGIN_TOP, HEIGHT - MARGIN_BOTTOM);
    let _ = writeln!(
        w,
        r#"<rect class="frame" x="{left}" y="{top}" width="{}" height="{}" fill="none" stroke="black"/>"#,
        right - left,
        bottom - top
    );

    // x ticks at multiples of π/2
    let half_pi = std::f64::consts::FRAC_PI_2;
    let first = (bounds.x_min / half_pi).ceil() as i64;
    let last = (bounds.x_max / half_pi).floor() as i64;
    for h in first..=last {
        let x = bounds.px(h as f64 * half_pi);
        let _ = writeln!(w, r#"<line x1="{x:.2}" y1="{bottom}" x2="{x:.2}" y2="{:.2}" stroke="black"/>"#, bottom + 5.0);
        let _ = writeln!(
            w,
            r#"<text x="{x:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            bottom + 20.0,
            half_pi_label(h)
        );
    }

    let step = nice_step(bounds.y_max - bounds.y_min);
    let mut y = (bounds.y_min / step).ceil() * step;
    while y <= bounds.y_max {
        let py = bounds.py(y);
        let label = if y.abs() < step * 1e-9 { 0.0 } else { y };
        let _ = writeln!(w, r#"<line x1="{:.2}" y1="{py:.2}" x2="{left}" y2="{py:.2}" stroke="black"/>"#, left - 5.0);
        let _ = writeln!(
            w,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#,
            left - 8.0,
            py + 4.0,
            format!("{label:.4}").trim_end_matches('0').trim_end_matches('.')
        );
        y += step;
    }

    let swept = results[0].spec.swept;
    let _ = writeln!(
        w,
        r#"<text class="x-label" x="{:.2}" y="{:.2}" text-anchor="middle">{} (units of π)</text>"#,
        (left + right) / 2.0,
        HEIGHT - 15.0,
        swept
    );
    let observables: Vec<&str> = {
        let mut names: Vec<&str> = results.iter().map(|r| r.spec.observable.name()).collect();
        names.dedup();
        names
    };
    let _ = writeln!(
        w,
        r#"<text class="y-label" transform="translate(20 {:.2}) rotate(-90)" text-anchor="middle">{}</text>"#,
        (top + bottom) / 2.0,
        escape(&observables.join(", "))
    );

    for (i, result) in results.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let points: Vec<String> = result
            .rows
            .iter()
            .map(|r| format!("{:.2},{:.2}", bounds.px(r.swept_value), bounds.py(r.value)))
            .collect();
        let _ = writeln!(
            w,
            r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#,
            points.join(" ")
        );
        let ly = top + 10.0 + 20.0 * i as f64;
        let _ = writeln!(
            w,
            r#"<line x1="{:.2}" y1="{ly:.2}" x2="{:.2}" y2="{ly:.2}" stroke="{color}" stroke-width="2"/>"#,
            right + 15.0,
            right + 40.0
        );
        let _ = writeln!(
            w,
            r#"<text class="legend" x="{:.2}" y="{:.2}">{}</text>"#,
            right + 45.0,
            ly + 4.0,
            escape(&result.spec.fixed_parameter_label())
        );
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

pub fn emit_svg(results: &[SweepResult], path: &Path) -> Result<()> {
    let svg = render_svg(results)?;
    fs::write(path, svg).map_err(|e| Error::io(path, e))
}

//! Deterministic output formatting: numbers, CSV, mode tables and minimal
//! SVG plots.
//!
//! Every float is printed with [`g6`] (6 significant digits, `.` decimal
//! separator); lines end with `\n`. Fixed inputs therefore produce
//! byte-identical files on every platform, which the golden-file tests
//! rely on.

use std::fmt::Write as _;

use nalgebra::Complex;

use crate::error::{Error, Result};
use crate::modal::{ModeLabel, ModeSet};
use crate::sim::TimeSeries;

/// Formats with 6 significant digits, positional notation for exponents in
/// [-4, 5] and scientific otherwise, trailing zeros stripped (the `%.6g`
/// convention).
pub fn g6(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.5e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("exponential format");
    let exp: i32 = exp.parse().expect("numeric exponent");
    if (-4..6).contains(&exp) {
        let prec = (5 - exp).max(0) as usize;
        let s = format!("{:.*}", prec, x);
        strip_zeros(&s)
    } else {
        format!("{}e{}", strip_zeros(mantissa), exp)
    }
}

fn strip_zeros(s: &str) -> String {
    if !s.contains('.') {
        return s.to_string();
    }
    let t = s.trim_end_matches('0').trim_end_matches('.');
    t.to_string()
}

/// `re ± im j` for pairs, plain `re` for real eigenvalues.
pub fn format_eigenvalue(lambda: Complex<f64>, is_pair: bool) -> String {
    if is_pair {
        format!("{} ± {}j", g6(lambda.re), g6(lambda.im.abs()))
    } else {
        g6(lambda.re)
    }
}

/// Serializes header and rows with comma separators and `\n` endings.
pub fn csv_string(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = String::new();
    out.push_str(&header.join(","));
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// Splits a CSV produced by [`csv_string`] back into header and rows.
/// Fields never contain commas or quotes, so a plain split is exact.
pub fn parse_csv(text: &str) -> Result<(Vec<String>, Vec<Vec<String>>)> {
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty CSV".into()))?
        .split(',')
        .map(str::to_string)
        .collect::<Vec<_>>();
    let mut rows = Vec::new();
    for (i, line) in lines.enumerate() {
        if line.is_empty() {
            continue;
        }
        let row: Vec<String> = line.split(',').map(str::to_string).collect();
        if row.len() != header.len() {
            return Err(Error::Parse(format!(
                "row {} has {} fields, header has {}",
                i + 2,
                row.len(),
                header.len()
            )));
        }
        rows.push(row);
    }
    Ok((header, rows))
}

fn parse_f64(s: &str, what: &str) -> Result<f64> {
    s.parse::<f64>().map_err(|_| Error::Parse(format!("{what}: not a number: '{s}'")))
}

/// One row of a modal CSV.
#[derive(Clone, Debug, PartialEq)]
pub struct ModalRow {
    pub label: String,
    pub re: f64,
    pub im: f64,
    pub freq_hz: f64,
    /// Absent for real modes, matching the printed tables.
    pub zeta: Option<f64>,
}

pub fn modal_csv(set: &ModeSet) -> String {
    let rows: Vec<Vec<String>> = set
        .modes
        .iter()
        .map(|m| {
            vec![
                m.label.to_string(),
                g6(m.lambda.re),
                g6(m.lambda.im),
                g6(m.freq_hz),
                if m.is_pair { g6(m.zeta) } else { String::new() },
            ]
        })
        .collect();
    csv_string(&["mode", "re", "im", "freq_hz", "zeta"], &rows)
}

pub fn read_modal_rows(text: &str) -> Result<Vec<ModalRow>> {
    let (header, rows) = parse_csv(text)?;
    if header != ["mode", "re", "im", "freq_hz", "zeta"] {
        return Err(Error::Parse(format!("unexpected modal header {header:?}")));
    }
    rows.iter()
        .map(|r| {
            Ok(ModalRow {
                label: r[0].clone(),
                re: parse_f64(&r[1], "re")?,
                im: parse_f64(&r[2], "im")?,
                freq_hz: parse_f64(&r[3], "freq_hz")?,
                zeta: if r[4].is_empty() { None } else { Some(parse_f64(&r[4], "zeta")?) },
            })
        })
        .collect()
}

/// Text table mirroring the layout of the printed modal tables: swing
/// first, real modes with dashes in the frequency and damping columns.
pub fn modal_table(title: &str, set: &ModeSet) -> String {
    let order = [
        ModeLabel::Swing,
        ModeLabel::TurbineGovernor,
        ModeLabel::Governor,
        ModeLabel::Real,
        ModeLabel::Unclassified,
    ];
    let mut rows: Vec<[String; 4]> = Vec::new();
    for label in order {
        for mode in set.find(label) {
            rows.push([
                label.to_string(),
                format_eigenvalue(mode.lambda, mode.is_pair),
                if mode.is_pair { g6(mode.freq_hz) } else { "---".into() },
                if mode.is_pair { g6(mode.zeta) } else { "---".into() },
            ]);
        }
    }
    let header = ["mode", "eigenvalue", "freq (Hz)", "zeta"];
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let _ = writeln!(out, "modal analysis: {title}");
    let mut line = String::from("  ");
    for (w, h) in widths.iter().zip(header) {
        let _ = write!(line, "{:w$}  ", h, w = w);
    }
    out.push_str(line.trim_end());
    out.push('\n');
    for row in &rows {
        let mut line = String::from("  ");
        for (w, cell) in widths.iter().zip(row) {
            let _ = write!(line, "{:w$}  ", cell, w = w);
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

pub fn time_series_csv(ts: &TimeSeries) -> String {
    let mut header = vec!["t_s".to_string()];
    header.extend(ts.channels.iter().map(|(n, _)| n.clone()));
    let header_refs: Vec<&str> = header.iter().map(String::as_str).collect();
    let rows: Vec<Vec<String>> = ts
        .t
        .iter()
        .enumerate()
        .map(|(i, t)| {
            let mut row = vec![g6(*t)];
            row.extend(ts.channels.iter().map(|(_, data)| g6(data[i])));
            row
        })
        .collect();
    csv_string(&header_refs, &rows)
}

pub fn read_time_series(text: &str) -> Result<TimeSeries> {
    let (header, rows) = parse_csv(text)?;
    if header.first().map(String::as_str) != Some("t_s") {
        return Err(Error::Parse("time-series CSV must start with t_s".into()));
    }
    if rows.len() < 2 {
        return Err(Error::Parse("time-series CSV needs at least two samples".into()));
    }
    let t: Vec<f64> = rows.iter().map(|r| parse_f64(&r[0], "t_s")).collect::<Result<_>>()?;
    let mut channels = Vec::new();
    for (c, name) in header.iter().enumerate().skip(1) {
        let data: Vec<f64> =
            rows.iter().map(|r| parse_f64(&r[c], name)).collect::<Result<_>>()?;
        channels.push((name.clone(), data));
    }
    Ok(TimeSeries { dt: t[1] - t[0], t, channels })
}

/// Two-column key/value CSV used by the operating-point and RoCoF reports.
pub fn kv_csv(pairs: &[(&str, f64)]) -> String {
    let rows: Vec<Vec<String>> =
        pairs.iter().map(|(k, v)| vec![k.to_string(), g6(*v)]).collect();
    csv_string(&["key", "value"], &rows)
}

pub fn read_kv(text: &str) -> Result<Vec<(String, f64)>> {
    let (header, rows) = parse_csv(text)?;
    if header != ["key", "value"] {
        return Err(Error::Parse(format!("unexpected key/value header {header:?}")));
    }
    rows.iter().map(|r| Ok((r[0].clone(), parse_f64(&r[1], &r[0])?))).collect()
}

/// One row of a sweep CSV: a mode observed at one grid point.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub value: f64,
    pub re: f64,
    pub im: f64,
    pub freq_hz: f64,
    pub zeta: Option<f64>,
    pub label: String,
}

pub fn sweep_csv(param: &str, points: &[(f64, &ModeSet)]) -> String {
    let header = [param, "re", "im", "freq_hz", "zeta", "mode"];
    let mut rows = Vec::new();
    for (value, set) in points {
        for m in &set.modes {
            rows.push(vec![
                g6(*value),
                g6(m.lambda.re),
                g6(m.lambda.im),
                g6(m.freq_hz),
                if m.is_pair { g6(m.zeta) } else { String::new() },
                m.label.to_string(),
            ]);
        }
    }
    csv_string(&header, &rows)
}

pub fn read_sweep_rows(text: &str) -> Result<Vec<SweepRow>> {
    let (header, rows) = parse_csv(text)?;
    if header.len() != 6 || header[1..] != ["re", "im", "freq_hz", "zeta", "mode"] {
        return Err(Error::Parse(format!("unexpected sweep header {header:?}")));
    }
    rows.iter()
        .map(|r| {
            Ok(SweepRow {
                value: parse_f64(&r[0], &header[0])?,
                re: parse_f64(&r[1], "re")?,
                im: parse_f64(&r[2], "im")?,
                freq_hz: parse_f64(&r[3], "freq_hz")?,
                zeta: if r[4].is_empty() { None } else { Some(parse_f64(&r[4], "zeta")?) },
                label: r[5].clone(),
            })
        })
        .collect()
}

const SVG_W: f64 = 720.0;
const SVG_H: f64 = 480.0;
const MARGIN_L: f64 = 70.0;
const MARGIN_R: f64 = 20.0;
const MARGIN_T: f64 = 40.0;
const MARGIN_B: f64 = 55.0;
const PALETTE: [&str; 6] = ["#1f6fb4", "#d1452c", "#3d8f4e", "#8a56a8", "#b08a1e", "#4a4a4a"];

/// Minimal multi-series line/scatter plot. No external renderer: straight
/// polylines, linear axes, five ticks per axis.
pub fn svg_plot(
    title: &str,
    x_label: &str,
    y_label: &str,
    series: &[(String, Vec<(f64, f64)>)],
    scatter: bool,
) -> String {
    let pts = series.iter().flat_map(|(_, p)| p.iter());
    let (mut x0, mut x1, mut y0, mut y1) =
        (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for &(x, y) in pts {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    if !x0.is_finite() {
        (x0, x1, y0, y1) = (0.0, 1.0, 0.0, 1.0);
    }
    if x1 == x0 {
        x1 = x0 + 1.0;
    }
    if y1 == y0 {
        y1 = y0 + 1.0;
    }
    // 5% padding on the value axis
    let pad = 0.05 * (y1 - y0);
    y0 -= pad;
    y1 += pad;

    let px = |x: f64| MARGIN_L + (x - x0) / (x1 - x0) * (SVG_W - MARGIN_L - MARGIN_R);
    let py = |y: f64| SVG_H - MARGIN_B - (y - y0) / (y1 - y0) * (SVG_H - MARGIN_T - MARGIN_B);

    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SVG_W}\" height=\"{SVG_H}\" viewBox=\"0 0 {SVG_W} {SVG_H}\">"
    );
    let _ = writeln!(out, "<rect width=\"{SVG_W}\" height=\"{SVG_H}\" fill=\"white\"/>");
    let _ = writeln!(
        out,
        "<text x=\"{}\" y=\"22\" font-family=\"monospace\" font-size=\"15\" text-anchor=\"middle\">{}</text>",
        (MARGIN_L + SVG_W - MARGIN_R) / 2.0,
        xml_escape(title)
    );
    // axes
    let _ = writeln!(
        out,
        "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>",
        MARGIN_L,
        SVG_H - MARGIN_B,
        SVG_W - MARGIN_R,
        SVG_H - MARGIN_B
    );
    let _ = writeln!(
        out,
        "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>",
        MARGIN_L, MARGIN_T, MARGIN_L, SVG_H - MARGIN_B
    );
    for i in 0..=4 {
        let fx = x0 + (x1 - x0) * i as f64 / 4.0;
        let fy = y0 + (y1 - y0) * i as f64 / 4.0;
        let _ = writeln!(
            out,
            "<line x1=\"{x}\" y1=\"{yb}\" x2=\"{x}\" y2=\"{yb2}\" stroke=\"black\"/><text x=\"{x}\" y=\"{yt}\" font-family=\"monospace\" font-size=\"11\" text-anchor=\"middle\">{v}</text>",
            x = g6(px(fx)),
            yb = SVG_H - MARGIN_B,
            yb2 = SVG_H - MARGIN_B + 5.0,
            yt = SVG_H - MARGIN_B + 18.0,
            v = g6(fx)
        );
        let _ = writeln!(
            out,
            "<line x1=\"{xl}\" y1=\"{y}\" x2=\"{xl2}\" y2=\"{y}\" stroke=\"black\"/><text x=\"{xt}\" y=\"{y}\" font-family=\"monospace\" font-size=\"11\" text-anchor=\"end\" dominant-baseline=\"middle\">{v}</text>",
            xl = MARGIN_L - 5.0,
            xl2 = MARGIN_L,
            y = g6(py(fy)),
            xt = MARGIN_L - 8.0,
            v = g6(fy)
        );
    }
    let _ = writeln!(
        out,
        "<text x=\"{}\" y=\"{}\" font-family=\"monospace\" font-size=\"13\" text-anchor=\"middle\">{}</text>",
        (MARGIN_L + SVG_W - MARGIN_R) / 2.0,
        SVG_H - 12.0,
        xml_escape(x_label)
    );
    let _ = writeln!(
        out,
        "<text x=\"16\" y=\"{}\" font-family=\"monospace\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 16 {y})\">{l}</text>",
        (MARGIN_T + SVG_H - MARGIN_B) / 2.0,
        y = (MARGIN_T + SVG_H - MARGIN_B) / 2.0,
        l = xml_escape(y_label)
    );
    for (si, (name, pts)) in series.iter().enumerate() {
        let color = PALETTE[si % PALETTE.len()];
        if scatter {
            for &(x, y) in pts {
                let _ = writeln!(
                    out,
                    "<circle cx=\"{}\" cy=\"{}\" r=\"2.5\" fill=\"{color}\"/>",
                    g6(px(x)),
                    g6(py(y))
                );
            }
        } else if pts.len() > 1 {
            let path: Vec<String> =
                pts.iter().map(|&(x, y)| format!("{},{}", g6(px(x)), g6(py(y)))).collect();
            let _ = writeln!(
                out,
                "<polyline points=\"{}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\"/>",
                path.join(" ")
            );
        }
        let ly = MARGIN_T + 14.0 * si as f64;
        let _ = writeln!(
            out,
            "<line x1=\"{x}\" y1=\"{ly}\" x2=\"{x2}\" y2=\"{ly}\" stroke=\"{color}\" stroke-width=\"2\"/><text x=\"{xt}\" y=\"{ly}\" font-family=\"monospace\" font-size=\"11\" dominant-baseline=\"middle\">{n}</text>",
            x = SVG_W - MARGIN_R - 130.0,
            x2 = SVG_W - MARGIN_R - 110.0,
            xt = SVG_W - MARGIN_R - 104.0,
            n = xml_escape(name)
        );
    }
    out.push_str("</svg>\n");
    out
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g6_formatting() {
        assert_eq!(g6(0.0), "0");
        assert_eq!(g6(-0.0), "0");
        assert_eq!(g6(1.0), "1");
        assert_eq!(g6(12.476), "12.476");
        assert_eq!(g6(0.9330127018922193), "0.933013");
        assert_eq!(g6(-476.30274), "-476.303");
        assert_eq!(g6(-0.11785), "-0.11785");
        assert_eq!(g6(1.5625), "1.5625");
        assert_eq!(g6(123456.7), "123457");
        assert_eq!(g6(1234567.0), "1.23457e6");
        assert_eq!(g6(0.00012345), "0.00012345");
        assert_eq!(g6(1.2345e-5), "1.2345e-5");
        assert_eq!(g6(9.9999999), "10");
    }

    #[test]
    fn csv_round_trip() {
        let text = csv_string(
            &["a", "b"],
            &[vec!["1".into(), "x".into()], vec!["2".into(), "y".into()]],
        );
        assert_eq!(text, "a,b\n1,x\n2,y\n");
        let (h, r) = parse_csv(&text).unwrap();
        assert_eq!(h, vec!["a", "b"]);
        assert_eq!(r.len(), 2);
        assert!(parse_csv("a,b\n1\n").is_err());
    }

    #[test]
    fn kv_round_trip() {
        let text = kv_csv(&[("r_ld", 0.9330127), ("v3", 0.9659258)]);
        let kv = read_kv(&text).unwrap();
        assert_eq!(kv[0].0, "r_ld");
        assert!((kv[0].1 - 0.933013).abs() < 1e-6);
    }

    #[test]
    fn eigenvalue_formatting() {
        assert_eq!(format_eigenvalue(Complex::new(-0.11785, 12.4764), true), "-0.11785 ± 12.4764j");
        assert_eq!(format_eigenvalue(Complex::new(-3.7657, 0.0), false), "-3.7657");
    }

    #[test]
    fn svg_is_well_formed_and_deterministic() {
        let series = vec![("zeta".to_string(), vec![(0.1, 0.05), (1.0, 0.2), (4.0, 0.9)])];
        let a = svg_plot("t", "H1 (s)", "zeta", &series, false);
        let b = svg_plot("t", "H1 (s)", "zeta", &series, false);
        assert_eq!(a, b);
        assert!(a.starts_with("<svg"));
        assert!(a.trim_end().ends_with("</svg>"));
        assert_eq!(a.matches("<polyline").count(), 1);
    }
}

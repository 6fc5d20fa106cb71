//! The members of `N_{p/q}` drawn as successive refinements: row `k` shows
//! every member `n/q^k` as a segment of width `1/q^k` centred on it.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::numeration::{self, Base, QkNumber};

const WIDTH: f64 = 960.0;
const MARGIN: f64 = 40.0;
const ROW: f64 = 36.0;
const BAR: f64 = 12.0;

/// Members `n/q^k <= xmax` for `k = 0..=depth`, row by row.
pub fn refinement_rows(base: Base, depth: u32, xmax: u64) -> Result<Vec<Vec<QkNumber>>> {
    let q = base.q() as u64;
    (0..=depth)
        .map(|k| {
            let scale = q
                .checked_pow(k)
                .and_then(|s| s.checked_mul(xmax))
                .ok_or_else(|| Error::InvalidArgument(format!("depth {depth} is too large")))?;
            Ok((0..=scale)
                .map(|n| QkNumber::new(n.into(), k, base.q()))
                .filter(|x| numeration::is_member(x, base))
                .collect())
        })
        .collect()
}

/// A standalone SVG document.
pub fn refinement_figure(base: Base, depth: u32, xmax: u64) -> Result<String> {
    if xmax == 0 {
        return Err(Error::InvalidArgument("xmax must be positive".into()));
    }
    let rows = refinement_rows(base, depth, xmax)?;
    let unit = (WIDTH - 2.0 * MARGIN) / xmax as f64;
    let height = 2.0 * MARGIN + ROW * rows.len() as f64;
    let mut svg = String::new();
    writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{height}" viewBox="0 0 {WIDTH} {height}">"#
    )
    .unwrap();
    writeln!(svg, "<title>members of N_{base} by refinement, depth {depth}</title>").unwrap();
    writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();
    // integer ticks
    for x in 0..=xmax {
        let cx = MARGIN + x as f64 * unit;
        writeln!(
            svg,
            r##"<line x1="{cx:.3}" y1="{:.3}" x2="{cx:.3}" y2="{:.3}" stroke="#ccc" stroke-width="0.5"/>"##,
            MARGIN - 8.0,
            height - MARGIN + 4.0
        )
        .unwrap();
        writeln!(
            svg,
            r#"<text x="{cx:.3}" y="{:.3}" font-size="10" text-anchor="middle">{x}</text>"#,
            height - MARGIN + 16.0
        )
        .unwrap();
    }
    for (k, row) in rows.iter().enumerate() {
        let y = MARGIN + ROW * k as f64;
        let w = unit / (base.q() as f64).powi(k as i32);
        writeln!(svg, r#"<g id="row{k}" data-width="1/q^{k}">"#).unwrap();
        writeln!(svg, r#"<text x="4" y="{:.3}" font-size="10">k={k}</text>"#, y + BAR).unwrap();
        for x in row {
            let cx = MARGIN + x.to_f64() * unit;
            writeln!(
                svg,
                r#"<rect x="{:.4}" y="{y:.3}" width="{w:.4}" height="{BAR}" fill="black" data-value="{x}"/>"#,
                cx - w / 2.0
            )
            .unwrap();
        }
        writeln!(svg, "</g>").unwrap();
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

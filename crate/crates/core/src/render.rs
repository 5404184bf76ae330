//! SVG and binary PPM images of torus configurations.
//!
//! One square per cell, north up. A cell is coloured by its symbol on one
//! layer. Symbols `0..16` take the fixed [`PALETTE`]; higher symbols walk
//! the hue circle by the golden angle at fixed saturation and value, so the
//! colour of a symbol never depends on the rest of the picture.

use std::fmt::Write as _;

use crate::sft::{SftError, SftSpec, TorusConfig};

/// Colours of symbols `0..16`.
pub const PALETTE: [[u8; 3]; 16] = [
    [0xf4, 0xf1, 0xe8],
    [0x1f, 0x2a, 0x44],
    [0xd9, 0x48, 0x3b],
    [0x2e, 0x86, 0xab],
    [0xf2, 0xa5, 0x41],
    [0x3b, 0x9c, 0x5a],
    [0x8e, 0x5a, 0xa8],
    [0x9e, 0x9e, 0x9e],
    [0xe8, 0x7e, 0xa1],
    [0x6b, 0x4f, 0x2a],
    [0x7f, 0xd1, 0xd6],
    [0xc9, 0xd1, 0x4f],
    [0x45, 0x45, 0x45],
    [0xa3, 0xc4, 0xf3],
    [0xb3, 0x1b, 0x6f],
    [0x10, 0x5e, 0x4a],
];

/// Colour of a symbol.
pub fn color(symbol: u32) -> [u8; 3] {
    if let Some(c) = PALETTE.get(symbol as usize) {
        return *c;
    }
    let hue = ((symbol as f64 - 16.0) * 137.507_764).rem_euclid(360.0);
    hsv(hue, 0.55, 0.85)
}

fn hsv(h: f64, s: f64, v: f64) -> [u8; 3] {
    let c = v * s;
    let x = c * (1.0 - ((h / 60.0) % 2.0 - 1.0).abs());
    let (r, g, b) = match (h / 60.0) as u32 {
        0 => (c, x, 0.0),
        1 => (x, c, 0.0),
        2 => (0.0, c, x),
        3 => (0.0, x, c),
        4 => (x, 0.0, c),
        _ => (c, 0.0, x),
    };
    let m = v - c;
    let to = |t: f64| ((t + m) * 255.0).round() as u8;
    [to(r), to(g), to(b)]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RenderOptions {
    /// Side of one cell in pixels.
    pub scale: usize,
    /// Layer whose symbols pick the colours.
    pub layer: usize,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions { scale: 8, layer: 0 }
    }
}

/// Symbol grid, top row first.
fn grid(config: &TorusConfig, spec: &SftSpec, opts: &RenderOptions) -> Result<Vec<Vec<u32>>, SftError> {
    if config.dim() != 2 || spec.dim() != 2 {
        return Err(SftError::DimensionMismatch { expected: 2, found: config.dim() });
    }
    if config.arity() != spec.arity() || opts.layer >= spec.arity() {
        return Err(SftError::Unsupported(format!("layer {} of a {}-layer configuration", opts.layer, config.arity())));
    }
    if opts.scale == 0 {
        return Err(SftError::Unsupported("scale must be positive".into()));
    }
    let (w, h) = (config.dims()[0], config.dims()[1]);
    let raw = config.raw();
    let a = config.arity();
    Ok((0..h).rev().map(|y| (0..w).map(|x| raw[(y * w + x) * a + opts.layer]).collect()).collect())
}

pub fn render_svg(config: &TorusConfig, spec: &SftSpec, opts: &RenderOptions) -> Result<String, SftError> {
    let rows = grid(config, spec, opts)?;
    let s = opts.scale;
    let (w, h) = (config.dims()[0] * s, config.dims()[1] * s);
    let alphabet = spec.layers()[opts.layer].alphabet();
    let mut out = String::new();
    let _ = writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}" shape-rendering="crispEdges">"#);
    for (r, row) in rows.iter().enumerate() {
        for (c, &sym) in row.iter().enumerate() {
            let [red, green, blue] = color(sym);
            let _ = writeln!(
                out,
                r##"<rect x="{}" y="{}" width="{s}" height="{s}" fill="#{red:02x}{green:02x}{blue:02x}"><title>{}</title></rect>"##,
                c * s,
                r * s,
                escape(alphabet.token(sym))
            );
        }
    }
    out.push_str("</svg>\n");
    Ok(out)
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Binary `P6` image with 8-bit channels.
pub fn render_ppm(config: &TorusConfig, spec: &SftSpec, opts: &RenderOptions) -> Result<Vec<u8>, SftError> {
    let rows = grid(config, spec, opts)?;
    let s = opts.scale;
    let (w, h) = (config.dims()[0] * s, config.dims()[1] * s);
    let mut out = format!("P6\n{w} {h}\n255\n").into_bytes();
    out.reserve(w * h * 3);
    for row in &rows {
        for _ in 0..s {
            for &sym in row {
                let c = color(sym);
                for _ in 0..s {
                    out.extend_from_slice(&c);
                }
            }
        }
    }
    Ok(out)
}

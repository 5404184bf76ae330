//! Line-oriented text formats.
//!
//! ```text
//! %sft
//! dim: 2
//! alphabet: a b
//! forbid:
//! (0,0) = a
//! (1,0) = a
//! ```
//!
//! Layered specs put `layer: <name>` before each layer's `alphabet:` and
//! `forbid:` blocks, and declare same-cell links as `link: <layer> <layer>…`
//! followed by one `allow: <tok> <tok>…` line per permitted tuple. Lines
//! starting with `#` are comments.

use std::fmt::Write as _;

use super::spec::DEFAULT_LAYER;
use super::{wang_to_sft, Alphabet, IVec, Layer, Link, Pattern, SftError, SftSpec, TorusConfig, WangTileset};

pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

pub(crate) fn directive(n: usize, line: &str) -> Result<(&str, &str), SftError> {
    let (k, v) = line.split_once(':').ok_or_else(|| SftError::parse(n, format!("expected `key: value`, found `{line}`")))?;
    Ok((k.trim(), v.trim()))
}

/// A parsed input file of either kind.
#[derive(Clone, Debug)]
pub enum ParsedSpec {
    Sft(SftSpec),
    Wang(WangTileset),
}

impl ParsedSpec {
    pub fn into_sft(self) -> Result<SftSpec, SftError> {
        match self {
            ParsedSpec::Sft(s) => Ok(s),
            ParsedSpec::Wang(w) => wang_to_sft(&w),
        }
    }
}

/// Dispatch on the `%sft` / `%wang` header.
pub fn parse_any(text: &str) -> Result<ParsedSpec, SftError> {
    match content_lines(text).next() {
        Some((_, "%sft")) => parse_sft(text).map(ParsedSpec::Sft),
        Some((_, "%wang")) => super::parse_wang(text).map(ParsedSpec::Wang),
        Some((n, _)) => Err(SftError::parse(n, "expected `%sft` or `%wang` header")),
        None => Err(SftError::parse(1, "empty input")),
    }
}

struct PendingLayer {
    name: String,
    line: usize,
    alphabet: Option<Alphabet>,
    patterns: Vec<Vec<(IVec, u32)>>,
}

struct PendingLink {
    line: usize,
    layers: Vec<usize>,
    tuples: Vec<Vec<u32>>,
}

fn parse_cell(n: usize, line: &str, dim: usize, alphabet: &Alphabet) -> Result<(IVec, u32), SftError> {
    let (pos, tok) = line.split_once('=').ok_or_else(|| SftError::parse(n, "expected `(<coords>) = <token>`"))?;
    let pos = pos.trim();
    let inner = pos
        .strip_prefix('(')
        .and_then(|p| p.strip_suffix(')'))
        .ok_or_else(|| SftError::parse(n, format!("bad position `{pos}`")))?;
    let coords = inner
        .split(',')
        .map(|c| c.trim().parse::<i64>().map_err(|_| SftError::parse(n, format!("bad coordinate `{}`", c.trim()))))
        .collect::<Result<Vec<_>, _>>()?;
    if coords.len() != dim {
        return Err(SftError::parse(n, format!("expected {dim} coordinates, found {}", coords.len())));
    }
    let tok = tok.trim();
    let s = alphabet.index_of(tok).ok_or_else(|| SftError::parse(n, format!("unknown token `{tok}`")))?;
    Ok((IVec::new(coords), s))
}

pub fn parse_sft(text: &str) -> Result<SftSpec, SftError> {
    let mut lines = content_lines(text);
    match lines.next() {
        Some((_, "%sft")) => {}
        Some((n, _)) => return Err(SftError::parse(n, "expected `%sft` header")),
        None => return Err(SftError::parse(1, "empty input")),
    }
    let mut dim: Option<usize> = None;
    let mut layers: Vec<PendingLayer> = Vec::new();
    let mut explicit_layers = false;
    let mut links: Vec<PendingLink> = Vec::new();
    let mut in_pattern = false;
    for (n, line) in lines {
        if line.starts_with('(') {
            if !in_pattern {
                return Err(SftError::parse(n, "cell outside a `forbid:` block"));
            }
            let layer = layers.last_mut().expect("pattern implies layer");
            let alphabet = layer.alphabet.as_ref().expect("pattern implies alphabet");
            let cell = parse_cell(n, line, dim.expect("pattern implies dim"), alphabet)?;
            layer.patterns.last_mut().expect("open pattern").push(cell);
            continue;
        }
        if in_pattern && layers.last().is_some_and(|l| l.patterns.last().is_some_and(Vec::is_empty)) {
            return Err(SftError::parse(n, "`forbid:` block without cells"));
        }
        in_pattern = false;
        let (key, rest) = directive(n, line)?;
        match key {
            "dim" => {
                if dim.is_some() {
                    return Err(SftError::parse(n, "duplicate `dim:`"));
                }
                let d: usize = rest.parse().map_err(|_| SftError::parse(n, format!("bad dimension `{rest}`")))?;
                if d == 0 {
                    return Err(SftError::parse(n, "dimension must be positive"));
                }
                dim = Some(d);
            }
            "layer" => {
                if !links.is_empty() {
                    return Err(SftError::parse(n, "`layer:` after `link:`"));
                }
                if !explicit_layers && !layers.is_empty() {
                    return Err(SftError::parse(n, "`layer:` after an unnamed layer"));
                }
                if rest.is_empty() || rest.contains(char::is_whitespace) {
                    return Err(SftError::parse(n, format!("bad layer name `{rest}`")));
                }
                if layers.iter().any(|l| l.name == rest) {
                    return Err(SftError::parse(n, format!("duplicate layer `{rest}`")));
                }
                explicit_layers = true;
                layers.push(PendingLayer { name: rest.to_string(), line: n, alphabet: None, patterns: Vec::new() });
            }
            "alphabet" => {
                if !links.is_empty() {
                    return Err(SftError::parse(n, "`alphabet:` after `link:`"));
                }
                if !explicit_layers && layers.is_empty() {
                    layers.push(PendingLayer { name: DEFAULT_LAYER.into(), line: n, alphabet: None, patterns: Vec::new() });
                }
                let Some(layer) = layers.last_mut() else {
                    return Err(SftError::parse(n, "`alphabet:` without layer"));
                };
                if layer.alphabet.is_some() {
                    return Err(SftError::parse(n, "duplicate `alphabet:`"));
                }
                layer.alphabet = Some(Alphabet::new(rest.split_whitespace()).map_err(|e| SftError::parse(n, e.to_string()))?);
            }
            "forbid" => {
                if !rest.is_empty() {
                    return Err(SftError::parse(n, "`forbid:` takes no value"));
                }
                if dim.is_none() {
                    return Err(SftError::parse(n, "`forbid:` before `dim:`"));
                }
                if !links.is_empty() {
                    return Err(SftError::parse(n, "`forbid:` after `link:`"));
                }
                let Some(layer) = layers.last_mut().filter(|l| l.alphabet.is_some()) else {
                    return Err(SftError::parse(n, "`forbid:` before `alphabet:`"));
                };
                layer.patterns.push(Vec::new());
                in_pattern = true;
            }
            "link" => {
                let mut idx = Vec::new();
                for name in rest.split_whitespace() {
                    let i = layers
                        .iter()
                        .position(|l| l.name == name)
                        .ok_or_else(|| SftError::parse(n, format!("unknown layer `{name}`")))?;
                    if idx.contains(&i) {
                        return Err(SftError::parse(n, format!("layer `{name}` repeated")));
                    }
                    idx.push(i);
                }
                if idx.len() < 2 {
                    return Err(SftError::parse(n, "`link:` needs at least two layers"));
                }
                links.push(PendingLink { line: n, layers: idx, tuples: Vec::new() });
            }
            "allow" => {
                let Some(link) = links.last_mut() else {
                    return Err(SftError::parse(n, "`allow:` before `link:`"));
                };
                let toks: Vec<&str> = rest.split_whitespace().collect();
                if toks.len() != link.layers.len() {
                    return Err(SftError::parse(n, format!("expected {} tokens", link.layers.len())));
                }
                let t = toks
                    .iter()
                    .zip(&link.layers)
                    .map(|(tok, &l)| {
                        let a = layers[l].alphabet.as_ref().ok_or_else(|| SftError::parse(n, "layer without alphabet"))?;
                        a.index_of(tok).ok_or_else(|| SftError::parse(n, format!("unknown token `{tok}`")))
                    })
                    .collect::<Result<Vec<u32>, _>>()?;
                link.tuples.push(t);
            }
            other => return Err(SftError::parse(n, format!("unknown directive `{other}`"))),
        }
    }
    if in_pattern && layers.last().is_some_and(|l| l.patterns.last().is_some_and(Vec::is_empty)) {
        return Err(SftError::parse(text.lines().count(), "`forbid:` block without cells"));
    }
    let dim = dim.ok_or_else(|| SftError::parse(1, "missing `dim:`"))?;
    if layers.is_empty() {
        return Err(SftError::parse(1, "missing `alphabet:`"));
    }
    let mut built = Vec::new();
    for l in layers {
        let alphabet = l.alphabet.ok_or_else(|| SftError::parse(l.line, format!("layer `{}` has no alphabet", l.name)))?;
        let pats = l
            .patterns
            .into_iter()
            .map(|cells| Pattern::new(dim, cells))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| SftError::parse(l.line, e.to_string()))?;
        built.push(Layer::new(l.name, alphabet, pats).map_err(|e| SftError::parse(l.line, e.to_string()))?);
    }
    let links = links
        .into_iter()
        .map(|k| Link::new(k.layers, k.tuples).map_err(|e| SftError::parse(k.line, e.to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    SftSpec::layered(dim, built, links).map_err(|e| SftError::parse(1, e.to_string()))
}

pub fn write_sft(spec: &SftSpec) -> String {
    let mut out = String::from("%sft\n");
    let _ = writeln!(out, "dim: {}", spec.dim());
    let named = !(spec.is_plain() && spec.links().is_empty() && spec.layers()[0].name() == DEFAULT_LAYER);
    for l in spec.layers() {
        if named {
            let _ = writeln!(out, "layer: {}", l.name());
        }
        let _ = writeln!(out, "alphabet: {}", l.alphabet().tokens().join(" "));
        for p in l.forbidden() {
            out.push_str("forbid:\n");
            for (pos, &s) in p.cells() {
                let _ = writeln!(out, "{} = {}", pos, l.alphabet().token(s));
            }
        }
    }
    for k in spec.links() {
        let names: Vec<&str> = k.layers().iter().map(|&i| spec.layers()[i].name()).collect();
        let _ = writeln!(out, "link: {}", names.join(" "));
        for t in k.allowed() {
            let toks: Vec<&str> = t.iter().zip(k.layers()).map(|(&s, &l)| spec.layers()[l].alphabet().token(s)).collect();
            let _ = writeln!(out, "allow: {}", toks.join(" "));
        }
    }
    out
}

/// `%torus`, `dims: n₁ … n_d`, then `cells:` lines listing cell tokens with
/// the first coordinate varying fastest.
pub fn write_torus(config: &TorusConfig, spec: &SftSpec) -> String {
    let mut out = String::from("%torus\n");
    let dims: Vec<String> = config.dims().iter().map(usize::to_string).collect();
    let _ = writeln!(out, "dims: {}", dims.join(" "));
    let row = config.dims()[0];
    for start in (0..config.len()).step_by(row) {
        let toks: Vec<String> = (start..start + row).map(|i| spec.token(config.cell(i))).collect();
        let _ = writeln!(out, "cells: {}", toks.join(" "));
    }
    out
}

pub fn parse_torus(text: &str, spec: &SftSpec) -> Result<TorusConfig, SftError> {
    let mut lines = content_lines(text);
    match lines.next() {
        Some((_, "%torus")) => {}
        Some((n, _)) => return Err(SftError::parse(n, "expected `%torus` header")),
        None => return Err(SftError::parse(1, "empty input")),
    }
    let mut dims: Option<Vec<usize>> = None;
    let mut cells = Vec::new();
    let mut last = 1;
    for (n, line) in lines {
        last = n;
        let (key, rest) = directive(n, line)?;
        match key {
            "dims" => {
                if dims.is_some() {
                    return Err(SftError::parse(n, "duplicate `dims:`"));
                }
                let d = rest
                    .split_whitespace()
                    .map(|t| t.parse::<usize>().ok().filter(|&x| x > 0))
                    .collect::<Option<Vec<_>>>()
                    .ok_or_else(|| SftError::parse(n, format!("bad dims `{rest}`")))?;
                if d.len() != spec.dim() {
                    return Err(SftError::parse(n, format!("expected {} dims", spec.dim())));
                }
                dims = Some(d);
            }
            "cells" => {
                for tok in rest.split_whitespace() {
                    cells.extend(spec.parse_token(tok).map_err(|e| SftError::parse(n, e.to_string()))?);
                }
            }
            other => return Err(SftError::parse(n, format!("unknown directive `{other}`"))),
        }
    }
    let dims = dims.ok_or_else(|| SftError::parse(1, "missing `dims:`"))?;
    TorusConfig::new(dims, spec.arity(), cells).map_err(|e| SftError::parse(last, e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sft::{product, Allowed, LayerProduct};

    const SAMPLE: &str = "%sft\n# two symbols\ndim: 2\nalphabet: a b\nforbid:\n(0,0) = a\n(1,0) = a\nforbid:\n( 0 , 0 ) = b\n(0,1) = b\n";

    #[test]
    fn parses_sample() {
        let s = parse_sft(SAMPLE).unwrap();
        assert_eq!(s.dim(), 2);
        assert_eq!(s.forbidden_count(), 2);
        assert_eq!(parse_sft(&write_sft(&s)).unwrap(), s);
    }

    #[test]
    fn rejects_unknown_directive_with_line() {
        let e = parse_sft("%sft\ndim: 1\nalphabet: a\nforbidd:\n").unwrap_err();
        assert_eq!(e, SftError::parse(4, "unknown directive `forbidd`"));
        let e = parse_sft("%sft\ndim: 1\nalphabet: a\nforbid:\n(0) = z\n").unwrap_err();
        assert_eq!(e, SftError::parse(5, "unknown token `z`"));
        let e = parse_sft("%sft\ndim: 2\nalphabet: a\nforbid:\n(0) = a\n").unwrap_err();
        assert!(matches!(e, SftError::Parse { line: 5, .. }));
    }

    #[test]
    fn layered_roundtrip() {
        let a = parse_sft(SAMPLE).unwrap();
        let b = SftSpec::new(2, Alphabet::new(["x", "y"]).unwrap(), Vec::new()).unwrap();
        let link = Link::new(vec![0, 1], vec![vec![0, 0], vec![1, 1], vec![1, 0]]).unwrap();
        let p = product(&LayerProduct { layers: vec![a, b], allowed: Allowed::Links(vec![link]) }).unwrap();
        let text = write_sft(&p);
        assert!(text.contains("link: main main.1"));
        assert_eq!(parse_sft(&text).unwrap(), p);
    }

    #[test]
    fn torus_roundtrip() {
        let s = parse_sft(SAMPLE).unwrap();
        let c = TorusConfig::plain(vec![2, 3], vec![0, 1, 1, 0, 0, 1]).unwrap();
        let text = write_torus(&c, &s);
        assert_eq!(parse_torus(&text, &s).unwrap(), c);
    }
}

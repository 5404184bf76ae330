use std::collections::HashSet;

use super::{Alphabet, Pattern, SftError, SftSpec};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WangTile {
    pub name: String,
    pub north: u32,
    pub east: u32,
    pub south: u32,
    pub west: u32,
}

/// Unit squares with colored edges; neighbors must agree on shared edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WangTileset {
    colors: Alphabet,
    tiles: Vec<WangTile>,
}

impl WangTileset {
    pub fn new(colors: Alphabet, tiles: Vec<WangTile>) -> Result<Self, SftError> {
        let mut names = HashSet::new();
        for t in &tiles {
            if t.name.is_empty() || t.name.chars().any(char::is_whitespace) {
                return Err(SftError::InvalidToken(t.name.clone()));
            }
            if !names.insert(t.name.as_str()) {
                return Err(SftError::DuplicateTile(t.name.clone()));
            }
            for c in [t.north, t.east, t.south, t.west] {
                if c as usize >= colors.len() {
                    return Err(SftError::SymbolOutOfRange { index: c, size: colors.len() });
                }
            }
        }
        Ok(WangTileset { colors, tiles })
    }

    /// Build from color names; colors are interned in order of first use.
    pub fn from_named<S: AsRef<str>>(tiles: &[(S, [S; 4])]) -> Result<Self, SftError> {
        let mut seen: Vec<String> = Vec::new();
        let mut idx = |c: &str| -> u32 {
            match seen.iter().position(|s| s == c) {
                Some(i) => i as u32,
                None => {
                    seen.push(c.to_string());
                    (seen.len() - 1) as u32
                }
            }
        };
        let out: Vec<WangTile> = tiles
            .iter()
            .map(|(name, [n, e, s, w])| WangTile {
                name: name.as_ref().to_string(),
                north: idx(n.as_ref()),
                east: idx(e.as_ref()),
                south: idx(s.as_ref()),
                west: idx(w.as_ref()),
            })
            .collect();
        if seen.is_empty() {
            return Err(SftError::EmptyTileset);
        }
        Self::new(Alphabet::new(seen)?, out)
    }

    pub fn colors(&self) -> &Alphabet {
        &self.colors
    }

    pub fn tiles(&self) -> &[WangTile] {
        &self.tiles
    }

    pub fn len(&self) -> usize {
        self.tiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tiles.is_empty()
    }

    pub fn tile_index(&self, name: &str) -> Option<usize> {
        self.tiles.iter().position(|t| t.name == name)
    }
}

/// Dominoes whose shared edge colors differ become forbidden patterns.
pub fn wang_to_sft(tiles: &WangTileset) -> Result<SftSpec, SftError> {
    if tiles.tiles.is_empty() {
        return Err(SftError::EmptyTileset);
    }
    let alphabet = Alphabet::new(tiles.tiles.iter().map(|t| t.name.clone()))?;
    let mut forbidden = Vec::new();
    for (i, a) in tiles.tiles.iter().enumerate() {
        for (j, b) in tiles.tiles.iter().enumerate() {
            if a.east != b.west {
                forbidden.push(Pattern::from_cells(&[([0, 0], i as u32), ([1, 0], j as u32)]));
            }
            if a.north != b.south {
                forbidden.push(Pattern::from_cells(&[([0, 0], i as u32), ([0, 1], j as u32)]));
            }
        }
    }
    SftSpec::new(2, alphabet, forbidden)
}

pub fn write_wang(tiles: &WangTileset) -> String {
    let mut out = String::from("%wang\n");
    out.push_str("colors: ");
    out.push_str(&tiles.colors.tokens().join(" "));
    out.push('\n');
    let c = |i: u32| tiles.colors.token(i);
    for t in &tiles.tiles {
        out.push_str(&format!("tile: {} n={} e={} s={} w={}\n", t.name, c(t.north), c(t.east), c(t.south), c(t.west)));
    }
    out
}

pub fn parse_wang(text: &str) -> Result<WangTileset, SftError> {
    let mut lines = super::text::content_lines(text);
    match lines.next() {
        Some((_, "%wang")) => {}
        Some((n, _)) => return Err(SftError::parse(n, "expected `%wang` header")),
        None => return Err(SftError::parse(1, "empty input")),
    }
    let mut colors: Option<Alphabet> = None;
    let mut tiles = Vec::new();
    for (n, line) in lines {
        let (key, rest) = super::text::directive(n, line)?;
        match key {
            "colors" => {
                if colors.is_some() {
                    return Err(SftError::parse(n, "duplicate `colors:`"));
                }
                colors = Some(Alphabet::new(rest.split_whitespace()).map_err(|e| SftError::parse(n, e.to_string()))?);
            }
            "tile" => {
                let Some(cols) = colors.as_ref() else {
                    return Err(SftError::parse(n, "`tile:` before `colors:`"));
                };
                let mut parts = rest.split_whitespace();
                let name = parts.next().ok_or_else(|| SftError::parse(n, "missing tile name"))?;
                let mut edges = [None; 4];
                for p in parts {
                    let (k, v) = p.split_once('=').ok_or_else(|| SftError::parse(n, format!("bad edge `{p}`")))?;
                    let slot = match k {
                        "n" => 0,
                        "e" => 1,
                        "s" => 2,
                        "w" => 3,
                        _ => return Err(SftError::parse(n, format!("unknown edge `{k}`"))),
                    };
                    if edges[slot].is_some() {
                        return Err(SftError::parse(n, format!("edge `{k}` given twice")));
                    }
                    edges[slot] = Some(cols.index_of(v).ok_or_else(|| SftError::parse(n, format!("unknown color `{v}`")))?);
                }
                let [Some(north), Some(east), Some(south), Some(west)] = edges else {
                    return Err(SftError::parse(n, "tile needs n=, e=, s= and w="));
                };
                tiles.push((n, WangTile { name: name.to_string(), north, east, south, west }));
            }
            other => return Err(SftError::parse(n, format!("unknown directive `{other}`"))),
        }
    }
    let colors = colors.ok_or_else(|| SftError::parse(1, "missing `colors:`"))?;
    let mut names = HashSet::new();
    for (n, t) in &tiles {
        if !names.insert(t.name.clone()) {
            return Err(SftError::parse(*n, format!("duplicate tile `{}`", t.name)));
        }
    }
    WangTileset::new(colors, tiles.into_iter().map(|(_, t)| t).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_tile_has_no_forbidden_dominoes() {
        let t = WangTileset::from_named(&[("a", ["c", "c", "c", "c"])]).unwrap();
        assert_eq!(wang_to_sft(&t).unwrap().forbidden_count(), 0);
    }

    #[test]
    fn mismatch_is_forbidden() {
        let t = WangTileset::from_named(&[("A", ["x", "r", "x", "x"]), ("B", ["x", "x", "x", "g"])]).unwrap();
        let s = wang_to_sft(&t).unwrap();
        let ab = Pattern::from_cells(&[([0, 0], 0), ([1, 0], 1)]);
        assert!(s.forbidden().contains(&ab));
        assert!(s.radius() <= 1);
    }

    #[test]
    fn empty_tileset_rejected() {
        let t = WangTileset::new(Alphabet::new(["c"]).unwrap(), Vec::new()).unwrap();
        assert_eq!(wang_to_sft(&t), Err(SftError::EmptyTileset));
    }

    #[test]
    fn text_roundtrip() {
        let t = WangTileset::from_named(&[("A", ["x", "r", "x", "g"]), ("B", ["x", "g", "x", "r"])]).unwrap();
        let s = write_wang(&t);
        assert_eq!(parse_wang(&s).unwrap(), t);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let e = parse_wang("%wang\ncolors: a\ntile: t n=a e=a s=a w=b\n").unwrap_err();
        assert_eq!(e, SftError::parse(3, "unknown color `b`"));
        let e = parse_wang("%wang\n# c\ncolours: a\n").unwrap_err();
        assert!(matches!(e, SftError::Parse { line: 3, .. }));
    }
}

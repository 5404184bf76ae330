use std::collections::{BTreeSet, HashSet};

use super::{Alphabet, IVec, Pattern, SftError};

/// One component of a spec: an alphabet and forbidden patterns over it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layer {
    name: String,
    alphabet: Alphabet,
    forbidden: Vec<Pattern>,
}

impl Layer {
    /// Patterns are canonicalized and deduplicated, keeping first occurrences.
    pub fn new(name: impl Into<String>, alphabet: Alphabet, forbidden: Vec<Pattern>) -> Result<Self, SftError> {
        let name = name.into();
        if name.is_empty() || name.chars().any(char::is_whitespace) {
            return Err(SftError::InvalidToken(name));
        }
        let mut seen = HashSet::new();
        let mut out = Vec::with_capacity(forbidden.len());
        for p in forbidden {
            for &s in p.cells().values() {
                if s as usize >= alphabet.len() {
                    return Err(SftError::SymbolOutOfRange { index: s, size: alphabet.len() });
                }
            }
            let c = p.canonical();
            if seen.insert(c.clone()) {
                out.push(c);
            }
        }
        Ok(Layer { name, alphabet, forbidden: out })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn forbidden(&self) -> &[Pattern] {
        &self.forbidden
    }

    fn renamed(mut self, name: String) -> Self {
        self.name = name;
        self
    }
}

/// Same-cell constraint: the symbols of `layers` at any cell must form one of
/// the `allowed` tuples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Link {
    layers: Vec<usize>,
    allowed: BTreeSet<Vec<u32>>,
}

impl Link {
    /// `layers` must be distinct; tuples follow the given layer order and are
    /// stored re-sorted by ascending layer index.
    pub fn new(layers: Vec<usize>, allowed: impl IntoIterator<Item = Vec<u32>>) -> Result<Self, SftError> {
        let mut order: Vec<usize> = (0..layers.len()).collect();
        order.sort_by_key(|&i| layers[i]);
        let sorted: Vec<usize> = order.iter().map(|&i| layers[i]).collect();
        if sorted.windows(2).any(|w| w[0] == w[1]) || sorted.len() < 2 {
            return Err(SftError::Unsupported("a link needs at least two distinct layers".into()));
        }
        let mut set = BTreeSet::new();
        for t in allowed {
            if t.len() != layers.len() {
                return Err(SftError::DimensionMismatch { expected: layers.len(), found: t.len() });
            }
            set.insert(order.iter().map(|&i| t[i]).collect::<Vec<u32>>());
        }
        if set.is_empty() {
            return Err(SftError::EmptyAllowed);
        }
        Ok(Link { layers: sorted, allowed: set })
    }

    pub fn layers(&self) -> &[usize] {
        &self.layers
    }

    pub fn allowed(&self) -> &BTreeSet<Vec<u32>> {
        &self.allowed
    }

    pub fn permits(&self, cell: &[u32]) -> bool {
        let t: Vec<u32> = self.layers.iter().map(|&l| cell[l]).collect();
        self.allowed.contains(&t)
    }

    fn shifted(&self, offset: usize) -> Link {
        Link { layers: self.layers.iter().map(|l| l + offset).collect(), allowed: self.allowed.clone() }
    }
}

/// A subshift of finite type, possibly presented as a stack of layers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SftSpec {
    dim: usize,
    layers: Vec<Layer>,
    links: Vec<Link>,
    radius: usize,
}

pub(crate) const DEFAULT_LAYER: &str = "main";

impl SftSpec {
    /// Single-layer spec.
    pub fn new(dim: usize, alphabet: Alphabet, forbidden: Vec<Pattern>) -> Result<Self, SftError> {
        Self::layered(dim, vec![Layer::new(DEFAULT_LAYER, alphabet, forbidden)?], Vec::new())
    }

    pub fn layered(dim: usize, layers: Vec<Layer>, links: Vec<Link>) -> Result<Self, SftError> {
        if dim == 0 {
            return Err(SftError::Unsupported("dimension must be positive".into()));
        }
        if layers.is_empty() {
            return Err(SftError::EmptyAlphabet);
        }
        let mut names = HashSet::new();
        for l in &layers {
            if !names.insert(l.name.clone()) {
                return Err(SftError::DuplicateLayer(l.name.clone()));
            }
            for p in &l.forbidden {
                if p.dim() != dim {
                    return Err(SftError::DimensionMismatch { expected: dim, found: p.dim() });
                }
            }
        }
        for k in &links {
            for (j, &l) in k.layers.iter().enumerate() {
                let Some(layer) = layers.get(l) else {
                    return Err(SftError::UnknownLayer(l.to_string()));
                };
                for t in &k.allowed {
                    if t[j] as usize >= layer.alphabet.len() {
                        return Err(SftError::SymbolOutOfRange { index: t[j], size: layer.alphabet.len() });
                    }
                }
            }
        }
        let radius = layers.iter().flat_map(|l| l.forbidden.iter().map(Pattern::extent)).max().unwrap_or(0);
        Ok(SftSpec { dim, layers, links, radius })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn layers(&self) -> &[Layer] {
        &self.layers
    }

    pub fn links(&self) -> &[Link] {
        &self.links
    }

    /// Number of layers, i.e. symbols per cell.
    pub fn arity(&self) -> usize {
        self.layers.len()
    }

    pub fn is_plain(&self) -> bool {
        self.layers.len() == 1
    }

    /// Alphabet of the first layer (the only one for a plain spec).
    pub fn alphabet(&self) -> &Alphabet {
        &self.layers[0].alphabet
    }

    /// Forbidden patterns of the first layer (the only one for a plain spec).
    pub fn forbidden(&self) -> &[Pattern] {
        &self.layers[0].forbidden
    }

    pub fn forbidden_count(&self) -> usize {
        self.layers.iter().map(|l| l.forbidden.len()).sum()
    }

    /// Global pattern index: patterns of layer 0 first, then layer 1, ...
    pub fn pattern(&self, index: usize) -> Option<(usize, &Pattern)> {
        let mut i = index;
        for (li, l) in self.layers.iter().enumerate() {
            if i < l.forbidden.len() {
                return Some((li, &l.forbidden[i]));
            }
            i -= l.forbidden.len();
        }
        None
    }

    pub(crate) fn pattern_offset(&self, layer: usize) -> usize {
        self.layers[..layer].iter().map(|l| l.forbidden.len()).sum()
    }

    pub fn layer_index(&self, name: &str) -> Option<usize> {
        self.layers.iter().position(|l| l.name == name)
    }

    /// Whether a cell tuple passes every link.
    pub fn cell_allowed(&self, cell: &[u32]) -> bool {
        self.links.iter().all(|k| k.permits(cell))
    }

    /// Display token of a cell tuple: layer tokens joined by `|`.
    pub fn token(&self, cell: &[u32]) -> String {
        let parts: Vec<&str> = self.layers.iter().zip(cell).map(|(l, &s)| l.alphabet.token(s)).collect();
        parts.join("|")
    }

    pub fn parse_token(&self, token: &str) -> Result<Vec<u32>, SftError> {
        let parts: Vec<&str> = if self.layers.len() == 1 { vec![token] } else { token.split('|').collect() };
        if parts.len() != self.layers.len() {
            return Err(SftError::UnknownToken(token.to_string()));
        }
        self.layers.iter().zip(parts).map(|(l, p)| l.alphabet.require(p)).collect()
    }

    /// Every cell tuple allowed by the links, in lexicographic order.
    pub fn symbols(&self) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        self.walk_symbols(&mut |t| {
            out.push(t.to_vec());
            true
        });
        out
    }

    /// Number of allowed cell tuples, saturating at `cap`.
    pub fn symbol_count_capped(&self, cap: u64) -> u64 {
        if self.links.is_empty() {
            return self.layers.iter().fold(1u64, |a, l| a.saturating_mul(l.alphabet.len() as u64)).min(cap);
        }
        let mut n = 0u64;
        self.walk_symbols(&mut |_| {
            n += 1;
            n < cap
        });
        n
    }

    pub fn symbol_count(&self) -> u64 {
        self.symbol_count_capped(u64::MAX)
    }

    fn walk_symbols(&self, f: &mut dyn FnMut(&[u32]) -> bool) {
        // links are checked once their last layer is assigned
        let mut by_last: Vec<Vec<&Link>> = vec![Vec::new(); self.layers.len()];
        for k in &self.links {
            by_last[*k.layers.last().unwrap()].push(k);
        }
        let mut cur = vec![0u32; self.layers.len()];
        fn rec(
            spec: &SftSpec,
            by_last: &[Vec<&Link>],
            cur: &mut Vec<u32>,
            depth: usize,
            f: &mut dyn FnMut(&[u32]) -> bool,
        ) -> bool {
            if depth == cur.len() {
                return f(cur);
            }
            for s in 0..spec.layers[depth].alphabet.len() as u32 {
                cur[depth] = s;
                if by_last[depth].iter().all(|k| k.permits(cur)) && !rec(spec, by_last, cur, depth + 1, f) {
                    return false;
                }
            }
            true
        }
        rec(self, &by_last, &mut cur, 0, f);
    }

    /// Same spec with every forbidden pattern transformed by `f` (and
    /// re-canonicalized); links are kept.
    pub fn map_patterns(&self, dim: usize, f: impl Fn(&IVec) -> IVec) -> Result<SftSpec, SftError> {
        let layers = self
            .layers
            .iter()
            .map(|l| {
                let pats = l.forbidden.iter().map(|p| p.map_positions(&f)).collect::<Result<Vec<_>, _>>()?;
                Layer::new(l.name.clone(), l.alphabet.clone(), pats)
            })
            .collect::<Result<Vec<_>, _>>()?;
        SftSpec::layered(dim, layers, self.links.clone())
    }
}

/// How the cells of a [`LayerProduct`] may combine.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Allowed {
    /// Explicit tuples, one symbol per factor; factors must be plain specs.
    Tuples(Vec<Vec<u32>>),
    /// Links over the flattened layer list of the factors.
    Links(Vec<Link>),
}

/// Superimposition of several specs of the same dimension.
#[derive(Clone, Debug)]
pub struct LayerProduct {
    pub layers: Vec<SftSpec>,
    pub allowed: Allowed,
}

/// Desugar a product into a layered spec. Every factor's patterns apply to
/// its own layers; factor links are kept; `allowed` adds cross links.
pub fn product(p: &LayerProduct) -> Result<SftSpec, SftError> {
    let Some(first) = p.layers.first() else {
        return Err(SftError::EmptyAlphabet);
    };
    let dim = first.dim();
    let mut layers: Vec<Layer> = Vec::new();
    let mut links = Vec::new();
    let mut names = HashSet::new();
    for (fi, f) in p.layers.iter().enumerate() {
        if f.dim() != dim {
            return Err(SftError::DimensionMismatch { expected: dim, found: f.dim() });
        }
        let offset = layers.len();
        links.extend(f.links.iter().map(|k| k.shifted(offset)));
        for l in &f.layers {
            let mut name = l.name.clone();
            if !names.insert(name.clone()) {
                name = format!("{}.{}", l.name, fi);
                names.insert(name.clone());
            }
            layers.push(l.clone().renamed(name));
        }
    }
    match &p.allowed {
        Allowed::Tuples(tuples) => {
            if tuples.is_empty() {
                return Err(SftError::EmptyAllowed);
            }
            if p.layers.iter().any(|f| !f.is_plain()) {
                return Err(SftError::Unsupported("explicit tuples need single-layer factors".into()));
            }
            if p.layers.len() > 1 {
                let full: u64 = layers.iter().map(|l| l.alphabet.len() as u64).product();
                let set: BTreeSet<&Vec<u32>> = tuples.iter().collect();
                if set.len() as u64 != full {
                    links.push(Link::new((0..layers.len()).collect(), tuples.iter().cloned())?);
                }
            } else {
                // single factor: drop symbols outside the allowed set
                let keep: BTreeSet<u32> = tuples.iter().map(|t| t[0]).collect();
                if keep.len() < layers[0].alphabet.len() {
                    let l = &layers[0];
                    let forbid_extra: Vec<Pattern> = (0..l.alphabet.len() as u32)
                        .filter(|s| !keep.contains(s))
                        .map(|s| Pattern::new(dim, [(IVec::zero(dim), s)]))
                        .collect::<Result<_, _>>()?;
                    let mut pats = l.forbidden.clone();
                    pats.extend(forbid_extra);
                    layers[0] = Layer::new(l.name.clone(), l.alphabet.clone(), pats)?;
                }
            }
        }
        Allowed::Links(extra) => links.extend(extra.iter().cloned()),
    }
    let spec = SftSpec::layered(dim, layers, links)?;
    if spec.symbol_count_capped(1) == 0 {
        return Err(SftError::EmptyAllowed);
    }
    Ok(spec)
}

/// Add one dimension; configurations become constant along the new axis.
pub fn lift_dimension(sft: &SftSpec) -> SftSpec {
    let d = sft.dim;
    let layers = sft
        .layers
        .iter()
        .map(|l| {
            let mut pats: Vec<Pattern> = l
                .forbidden
                .iter()
                .map(|p| {
                    p.map_positions(|v| {
                        let mut c = v.coords().to_vec();
                        c.push(0);
                        IVec::new(c)
                    })
                    .expect("lifted pattern")
                })
                .collect();
            let n = l.alphabet.len() as u32;
            let up = IVec::new((0..=d).map(|i| (i == d) as i64).collect());
            for a in 0..n {
                for b in 0..n {
                    if a != b {
                        pats.push(Pattern::new(d + 1, [(IVec::zero(d + 1), a), (up.clone(), b)]).expect("domino"));
                    }
                }
            }
            Layer::new(l.name.clone(), l.alphabet.clone(), pats).expect("lifted layer")
        })
        .collect();
    SftSpec::layered(d + 1, layers, sft.links.clone()).expect("lifted spec")
}

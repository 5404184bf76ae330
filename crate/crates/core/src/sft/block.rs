use std::collections::HashMap;

use super::{Alphabet, IVec, SftError, TorusConfig};

/// Sliding block code `F(x)_z = f(x_{z+v₁}, …, x_{z+v_k})`.
#[derive(Clone, Debug)]
pub struct BlockCode {
    pub window: Vec<IVec>,
    pub table: HashMap<Vec<u32>, u32>,
    pub default: Option<u32>,
    pub source: Alphabet,
    pub target: Alphabet,
}

impl BlockCode {
    pub fn identity(dim: usize, alphabet: Alphabet) -> Self {
        let table = (0..alphabet.len() as u32).map(|s| (vec![s], s)).collect();
        BlockCode { window: vec![IVec::zero(dim)], table, default: None, source: alphabet.clone(), target: alphabet }
    }
}

pub fn apply_block_code(code: &BlockCode, config: &TorusConfig) -> Result<TorusConfig, SftError> {
    if code.window.is_empty() {
        return Err(SftError::Unsupported("empty window".into()));
    }
    if config.arity() != 1 {
        return Err(SftError::Unsupported("block codes act on single-layer configurations".into()));
    }
    for w in &code.window {
        if w.dim() != config.dim() {
            return Err(SftError::DimensionMismatch { expected: config.dim(), found: w.dim() });
        }
    }
    if let Some(&bad) = config.raw().iter().find(|&&s| s as usize >= code.source.len()) {
        return Err(SftError::SymbolOutOfRange { index: bad, size: code.source.len() });
    }
    let mut out = Vec::with_capacity(config.len());
    let mut key = vec![0u32; code.window.len()];
    let mut z = vec![0i64; config.dim()];
    for i in 0..config.len() {
        let p = config.position(i);
        for (k, v) in code.window.iter().enumerate() {
            for (j, zj) in z.iter_mut().enumerate() {
                *zj = p[j] + v.coords()[j];
            }
            key[k] = config.get(&z)[0];
        }
        let s = match code.table.get(&key).copied().or(code.default) {
            Some(s) => s,
            None => {
                let toks: Vec<&str> = key.iter().map(|&s| code.source.token(s)).collect();
                return Err(SftError::TableMiss(toks.join(" ")));
            }
        };
        out.push(s);
    }
    TorusConfig::plain(config.dims().to_vec(), out)
}

use std::collections::HashMap;
use std::fmt;

use super::SftError;

/// Ordered list of distinct tokens with a dense index.
#[derive(Clone, PartialEq, Eq)]
pub struct Alphabet {
    tokens: Vec<String>,
    index: HashMap<String, u32>,
}

impl Alphabet {
    /// Tokens must be non-empty, free of whitespace and distinct.
    pub fn new<I, S>(tokens: I) -> Result<Self, SftError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut out = Alphabet { tokens: Vec::new(), index: HashMap::new() };
        for t in tokens {
            let t = t.into();
            if t.is_empty() || t.chars().any(char::is_whitespace) {
                return Err(SftError::InvalidToken(t));
            }
            if out.index.contains_key(&t) {
                return Err(SftError::DuplicateToken(t));
            }
            out.index.insert(t.clone(), out.tokens.len() as u32);
            out.tokens.push(t);
        }
        if out.tokens.is_empty() {
            return Err(SftError::EmptyAlphabet);
        }
        Ok(out)
    }

    /// Alphabet `0, 1, ..., n-1`.
    pub fn numeric(n: usize) -> Self {
        Self::new((0..n).map(|i| i.to_string())).expect("numeric alphabet")
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn token(&self, i: u32) -> &str {
        &self.tokens[i as usize]
    }

    pub fn index_of(&self, token: &str) -> Option<u32> {
        self.index.get(token).copied()
    }

    pub fn require(&self, token: &str) -> Result<u32, SftError> {
        self.index_of(token).ok_or_else(|| SftError::UnknownToken(token.to_string()))
    }

    pub fn tokens(&self) -> &[String] {
        &self.tokens
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.tokens).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_roundtrip() {
        let a = Alphabet::new(["x", "y", "z"]).unwrap();
        for i in 0..3 {
            assert_eq!(a.index_of(a.token(i)), Some(i));
        }
        assert_eq!(a.index_of("w"), None);
    }

    #[test]
    fn rejects_bad_tokens() {
        assert_eq!(Alphabet::new(Vec::<String>::new()), Err(SftError::EmptyAlphabet));
        assert_eq!(Alphabet::new(["a", "a"]), Err(SftError::DuplicateToken("a".into())));
        assert!(matches!(Alphabet::new(["a b"]), Err(SftError::InvalidToken(_))));
    }
}

//! Plain-text normalization onto a small typing alphabet.
//!
//! Raw text is reduced to lower-case letters and single spaces: letters are
//! lower-cased, whitespace of any kind becomes a space, everything else that
//! is not an alphabet symbol is deleted outright, and runs of spaces are
//! collapsed and trimmed. `"I'll be back"` becomes `"ill be back"` (11
//! characters).

use std::fmt;

use thiserror::Error;

/// The 26 lower-case Latin letters followed by space.
pub const CANONICAL_SYMBOLS: &str = "abcdefghijklmnopqrstuvwxyz ";

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TextError {
    #[error("alphabet needs at least 2 symbols, got {0}")]
    AlphabetTooSmall(usize),
    #[error("duplicate alphabet symbol {0:?}")]
    DuplicateSymbol(char),
    #[error("character {ch:?} at position {position} is not in the alphabet")]
    ForeignSymbol { ch: char, position: usize },
    #[error("invalid UTF-8 at byte offset {offset}")]
    InvalidUtf8 { offset: usize },
    #[error("text is not normalized: {0}")]
    NotNormalized(&'static str),
}

/// An ordered set of distinct symbols. Symbol indices follow that order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    symbols: Vec<char>,
}

impl Alphabet {
    pub fn new<I: IntoIterator<Item = char>>(symbols: I) -> Result<Self, TextError> {
        let symbols: Vec<char> = symbols.into_iter().collect();
        if symbols.len() < 2 {
            return Err(TextError::AlphabetTooSmall(symbols.len()));
        }
        for (i, c) in symbols.iter().enumerate() {
            if symbols[..i].contains(c) {
                return Err(TextError::DuplicateSymbol(*c));
            }
        }
        Ok(Self { symbols })
    }

    /// The 27-symbol alphabet `a..z` plus space.
    pub fn canonical() -> Self {
        Self {
            symbols: CANONICAL_SYMBOLS.chars().collect(),
        }
    }

    /// The first `m` symbols of the canonical order, so `first(2)` is `{a, b}`
    /// and `first(27)` is the canonical alphabet.
    pub fn first(m: usize) -> Result<Self, TextError> {
        if m < 2 {
            return Err(TextError::AlphabetTooSmall(m));
        }
        if m > CANONICAL_SYMBOLS.len() {
            return Err(TextError::NotNormalized(
                "canonical prefix alphabets have at most 27 symbols",
            ));
        }
        Ok(Self {
            symbols: CANONICAL_SYMBOLS.chars().take(m).collect(),
        })
    }

    pub fn size(&self) -> usize {
        self.symbols.len()
    }

    pub fn symbols(&self) -> &[char] {
        &self.symbols
    }

    pub fn contains(&self, c: char) -> bool {
        self.symbols.contains(&c)
    }

    pub fn index_of(&self, c: char) -> Option<u8> {
        self.symbols.iter().position(|&s| s == c).map(|i| i as u8)
    }

    pub fn symbol(&self, index: u8) -> Option<char> {
        self.symbols.get(index as usize).copied()
    }

    fn has_space(&self) -> bool {
        self.contains(' ')
    }
}

impl Default for Alphabet {
    fn default() -> Self {
        Self::canonical()
    }
}

/// Text that has passed through [`normalize`]: alphabet symbols only, no
/// leading, trailing or doubled spaces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalizedText {
    content: String,
    length: usize,
    alphabet: Alphabet,
}

impl NormalizedText {
    /// Accepts `content` only if it is already in normal form over `alphabet`.
    pub fn parse(content: &str, alphabet: &Alphabet) -> Result<Self, TextError> {
        for (position, ch) in content.chars().enumerate() {
            if !alphabet.contains(ch) {
                return Err(TextError::ForeignSymbol { ch, position });
            }
        }
        if content.starts_with(' ') || content.ends_with(' ') {
            return Err(TextError::NotNormalized("leading or trailing space"));
        }
        if content.contains("  ") {
            return Err(TextError::NotNormalized("consecutive spaces"));
        }
        Ok(Self {
            content: content.to_owned(),
            length: content.chars().count(),
            alphabet: alphabet.clone(),
        })
    }

    /// Builds a text from symbol indices. Spaces, if the alphabet has one,
    /// must already obey the normal-form rules.
    pub fn from_symbols(symbols: &[u8], alphabet: &Alphabet) -> Result<Self, TextError> {
        let mut content = String::with_capacity(symbols.len());
        for (position, &s) in symbols.iter().enumerate() {
            match alphabet.symbol(s) {
                Some(c) => content.push(c),
                None => {
                    return Err(TextError::ForeignSymbol {
                        ch: char::from_u32(s as u32).unwrap_or('?'),
                        position,
                    })
                }
            }
        }
        Self::parse(&content, alphabet)
    }

    pub fn as_str(&self) -> &str {
        &self.content
    }

    pub fn len(&self) -> usize {
        self.length
    }

    pub fn is_empty(&self) -> bool {
        self.length == 0
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// Symbol indices in alphabet order.
    pub fn symbols(&self) -> Vec<u8> {
        self.content
            .chars()
            .map(|c| self.alphabet.index_of(c).expect("normalized text holds alphabet symbols"))
            .collect()
    }
}

impl fmt::Display for NormalizedText {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.content)
    }
}

fn map_char(c: char, alphabet: &Alphabet) -> Option<char> {
    if c.is_whitespace() {
        return alphabet.has_space().then_some(' ');
    }
    if alphabet.contains(c) {
        return Some(c);
    }
    // Multi-character lowercase expansions (e.g. 'İ') are dropped along with
    // accented letters.
    let mut lower = c.to_lowercase();
    match (lower.next(), lower.next()) {
        (Some(l), None) if alphabet.contains(l) && l != ' ' => Some(l),
        _ => None,
    }
}

/// Reduces `raw` to normal form over `alphabet`.
pub fn normalize(raw: &str, alphabet: &Alphabet) -> NormalizedText {
    let mut content = String::with_capacity(raw.len());
    let mut pending_space = false;
    for c in raw.chars().filter_map(|c| map_char(c, alphabet)) {
        if c == ' ' {
            pending_space = !content.is_empty();
            continue;
        }
        if pending_space {
            content.push(' ');
            pending_space = false;
        }
        content.push(c);
    }
    let length = content.chars().count();
    NormalizedText {
        content,
        length,
        alphabet: alphabet.clone(),
    }
}

pub fn text_length(text: &NormalizedText) -> usize {
    text.len()
}

/// Decodes UTF-8, reporting the byte offset of the first invalid sequence.
pub fn decode_utf8(bytes: &[u8]) -> Result<&str, TextError> {
    std::str::from_utf8(bytes).map_err(|e| TextError::InvalidUtf8 {
        offset: e.valid_up_to(),
    })
}

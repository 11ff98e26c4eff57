//! Words over an ordered alphabet `{0, 1, ..., q-1}` and their run-length
//! compressed representation.
//!
//! The compressed form stores a word as alternating cells: maximal-symbol-free
//! blocks (one [`Cell::Sym`] per symbol) and run lengths of the maximal symbol
//! `q-1` ([`Cell::Run`]). A trailing run of length zero is represented by
//! absence, so the number of cells equals the compressed length.

use std::cmp::Ordering;
use std::fmt;

/// A single symbol; values are restricted to `[0, q)` by [`Word`] construction.
pub type Symbol = u32;

/// The ordered alphabet `{0, 1, ..., q-1}` with `0 < 1 < ... < q-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Alphabet {
    q: u32,
}

impl Alphabet {
    /// Creates an alphabet of size `q`. Panics if `q < 2`.
    pub fn new(q: u32) -> Self {
        assert!(q >= 2, "alphabet size must be at least 2, got {q}");
        Alphabet { q }
    }

    pub fn size(&self) -> u32 {
        self.q
    }

    /// The maximal symbol `q-1`.
    pub fn max_symbol(&self) -> Symbol {
        self.q - 1
    }

    pub fn contains(&self, s: Symbol) -> bool {
        s < self.q
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WordError {
    SymbolOutOfRange { symbol: Symbol, q: u32 },
    ParseError(String),
}

impl fmt::Display for WordError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WordError::SymbolOutOfRange { symbol, q } => {
                write!(f, "symbol {symbol} out of range for alphabet of size {q}")
            }
            WordError::ParseError(msg) => write!(f, "cannot parse word: {msg}"),
        }
    }
}

impl std::error::Error for WordError {}

/// A finite word over an [`Alphabet`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    alphabet: Alphabet,
    symbols: Vec<Symbol>,
}

impl Word {
    pub fn new(alphabet: Alphabet, symbols: Vec<Symbol>) -> Result<Self, WordError> {
        for &s in &symbols {
            if !alphabet.contains(s) {
                return Err(WordError::SymbolOutOfRange {
                    symbol: s,
                    q: alphabet.size(),
                });
            }
        }
        Ok(Word { alphabet, symbols })
    }

    /// Parses a word from text: contiguous digits for `q <= 10`, otherwise
    /// comma-separated symbol values.
    pub fn parse(text: &str, alphabet: Alphabet) -> Result<Self, WordError> {
        let symbols: Vec<Symbol> = if alphabet.size() <= 10 {
            text.chars()
                .map(|c| {
                    c.to_digit(10)
                        .ok_or_else(|| WordError::ParseError(format!("invalid digit '{c}'")))
                })
                .collect::<Result<_, _>>()?
        } else {
            text.split(',')
                .map(|part| {
                    part.trim()
                        .parse::<u32>()
                        .map_err(|e| WordError::ParseError(format!("'{part}': {e}")))
                })
                .collect::<Result<_, _>>()?
        };
        Word::new(alphabet, symbols)
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.alphabet.size() <= 10 {
            for &s in &self.symbols {
                write!(f, "{s}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.symbols.iter().map(|s| s.to_string()).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.alphabet, other.alphabet);
        self.symbols.cmp(&other.symbols)
    }
}

/// Returns the rotation starting at 1-based position `i`:
/// `w_i ... w_n w_1 ... w_{i-1}`. `rotate(w, 1)` is `w` itself.
///
/// Panics if `i` is outside `[1, |w|]`.
pub fn rotate(w: &Word, i: usize) -> Word {
    assert!(
        i >= 1 && i <= w.len(),
        "rotation index {i} out of range for word of length {}",
        w.len()
    );
    let mut symbols = Vec::with_capacity(w.len());
    symbols.extend_from_slice(&w.symbols[i - 1..]);
    symbols.extend_from_slice(&w.symbols[..i - 1]);
    Word {
        alphabet: w.alphabet,
        symbols,
    }
}

/// Lexicographic comparison; a strict prefix compares less than the longer word.
pub fn lex_compare(a: &Word, b: &Word) -> Ordering {
    a.cmp(b)
}

/// Brute-force Lyndon test: `w` is Lyndon iff every nontrivial rotation is
/// strictly greater. Quadratic; this is the oracle the fast paths are checked
/// against. Panics on the empty word.
pub fn is_lyndon_naive(w: &Word) -> bool {
    assert!(!w.is_empty(), "Lyndon test undefined for the empty word");
    (2..=w.len()).all(|i| rotate(w, i) > *w)
}

/// True iff all `|w|` rotations of `w` are pairwise distinct (minimal period
/// equals the length). Panics on the empty word.
pub fn is_aperiodic(w: &Word) -> bool {
    assert!(!w.is_empty(), "aperiodicity undefined for the empty word");
    (2..=w.len()).all(|i| rotate(w, i) != *w)
}

/// One cell of the compressed array: a non-maximal symbol or a run length of
/// the maximal symbol `q-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cell {
    Sym(Symbol),
    Run(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CompressedWordError {
    /// A `Sym` cell holds the maximal symbol; it belongs in a run.
    MaxSymbolInBlock { index: usize },
    /// A `Sym` cell holds a symbol outside the alphabet.
    SymbolOutOfRange { index: usize },
    /// A run cell of length zero (zero runs are represented by absence).
    ZeroRun { index: usize },
    /// Two adjacent run cells, i.e. an empty block between runs.
    AdjacentRuns { index: usize },
}

impl fmt::Display for CompressedWordError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CompressedWordError::MaxSymbolInBlock { index } => {
                write!(f, "cell {index}: maximal symbol stored as a block symbol")
            }
            CompressedWordError::SymbolOutOfRange { index } => {
                write!(f, "cell {index}: symbol out of alphabet range")
            }
            CompressedWordError::ZeroRun { index } => {
                write!(f, "cell {index}: run of length zero")
            }
            CompressedWordError::AdjacentRuns { index } => {
                write!(f, "cell {index}: adjacent run cells (empty block)")
            }
        }
    }
}

impl std::error::Error for CompressedWordError {}

/// Run-length compressed representation of a word: alternating blocks of
/// non-maximal symbols and runs of the maximal symbol.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompressedWord {
    alphabet: Alphabet,
    cells: Vec<Cell>,
}

impl CompressedWord {
    /// Constructor for crate internals that maintain the invariants
    /// themselves (the compressed-representation enumerator).
    pub(crate) fn from_cells_unchecked(alphabet: Alphabet, cells: Vec<Cell>) -> Self {
        debug_assert!(CompressedWord::new(alphabet, cells.clone()).is_ok());
        CompressedWord { alphabet, cells }
    }

    pub fn new(alphabet: Alphabet, cells: Vec<Cell>) -> Result<Self, CompressedWordError> {
        let max = alphabet.max_symbol();
        let mut prev_was_run = false;
        for (index, &cell) in cells.iter().enumerate() {
            match cell {
                Cell::Sym(s) => {
                    if s == max {
                        return Err(CompressedWordError::MaxSymbolInBlock { index });
                    }
                    if !alphabet.contains(s) {
                        return Err(CompressedWordError::SymbolOutOfRange { index });
                    }
                    prev_was_run = false;
                }
                Cell::Run(r) => {
                    if r == 0 {
                        return Err(CompressedWordError::ZeroRun { index });
                    }
                    if prev_was_run {
                        return Err(CompressedWordError::AdjacentRuns { index });
                    }
                    prev_was_run = true;
                }
            }
        }
        Ok(CompressedWord { alphabet, cells })
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    /// The compressed length: total block symbols plus the number of stored
    /// run cells (an absent trailing zero run contributes nothing).
    pub fn compressed_length(&self) -> usize {
        self.cells.len()
    }

    /// Length of the represented (uncompressed) word.
    pub fn word_length(&self) -> usize {
        self.cells
            .iter()
            .map(|c| match c {
                Cell::Sym(_) => 1,
                Cell::Run(r) => *r,
            })
            .sum()
    }
}

/// Builds the compressed representation of `w`.
pub fn compress(w: &Word) -> CompressedWord {
    let max = w.alphabet.max_symbol();
    let mut cells = Vec::new();
    let mut i = 0;
    let symbols = w.symbols();
    while i < symbols.len() {
        if symbols[i] == max {
            let mut r = 0;
            while i < symbols.len() && symbols[i] == max {
                r += 1;
                i += 1;
            }
            cells.push(Cell::Run(r));
        } else {
            cells.push(Cell::Sym(symbols[i]));
            i += 1;
        }
    }
    CompressedWord {
        alphabet: w.alphabet,
        cells,
    }
}

/// Expands a compressed word back to its plain form.
pub fn decompress(c: &CompressedWord) -> Word {
    let max = c.alphabet.max_symbol();
    let mut symbols = Vec::with_capacity(c.word_length());
    for cell in &c.cells {
        match cell {
            Cell::Sym(s) => symbols.push(*s),
            Cell::Run(r) => symbols.extend(std::iter::repeat_n(max, *r)),
        }
    }
    Word {
        alphabet: c.alphabet,
        symbols,
    }
}

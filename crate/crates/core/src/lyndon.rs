//! Duval successor operators and enumeration of the Lyndon words of exact
//! length `n`.
//!
//! Plain Duval steps (`duval_extend`, `increment_last`, `duval_next`) generate
//! the Lyndon words of length at most `n` in lexicographic order. Skipping to
//! the next word of length exactly `n` can force quadratically many symbol
//! writes on the plain array (see [`plain_next_of_length_n`]); the
//! [`LyndonEnumerator`] performs the same chain of steps directly on the
//! run-length compressed representation, where the per-word write count stays
//! linear and the amortized count constant.
//!
//! An *update* is one write to a cell of the compressed array: a symbol
//! write, a run-counter write, a cell removal, or a cell merge. Reads and
//! index arithmetic are not counted.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::words::{compress, decompress, Alphabet, Cell, CompressedWord, Symbol, Word};

/// Repeats `w` cyclically and truncates to exactly length `n`.
///
/// Panics if `w` is empty or longer than `n`.
pub fn duval_extend(w: &Word, n: usize) -> Word {
    assert!(!w.is_empty(), "cannot extend the empty word");
    assert!(
        w.len() <= n,
        "word of length {} exceeds target length {n}",
        w.len()
    );
    let symbols: Vec<Symbol> = (0..n).map(|i| w.symbols()[i % w.len()]).collect();
    Word::new(w.alphabet(), symbols).unwrap()
}

/// Strips the maximal trailing run of the symbol `q-1` and increments the new
/// last symbol. Returns `None` when the word consists solely of `q-1`
/// (enumeration exhausted).
pub fn increment_last(v: &Word) -> Option<Word> {
    let max = v.alphabet().max_symbol();
    let cut = v.symbols().iter().rposition(|&s| s != max)?;
    let mut symbols = v.symbols()[..=cut].to_vec();
    symbols[cut] += 1;
    Some(Word::new(v.alphabet(), symbols).unwrap())
}

/// Duval's successor: the next Lyndon word of length at most `n` after `w`,
/// or `None` when `w` is the last one.
pub fn duval_next(w: &Word, n: usize) -> Option<Word> {
    increment_last(&duval_extend(w, n))
}

/// Reference implementation on the plain array representation: repeats
/// [`duval_next`] until a word of length exactly `n` appears, counting every
/// symbol write (extension writes and increments; truncation is free index
/// arithmetic). Returns the word (or `None` on exhaustion) and the write
/// count. Used for the benchmark comparison against the compressed
/// enumerator.
pub fn plain_next_of_length_n(w: &Word, n: usize) -> (Option<Word>, u64) {
    let max = w.alphabet().max_symbol();
    let mut updates = 0u64;
    let mut symbols = w.symbols().to_vec();
    loop {
        let m = symbols.len();
        for i in m..n {
            let s = symbols[i % m];
            symbols.push(s);
            updates += 1;
        }
        let Some(cut) = symbols.iter().rposition(|&s| s != max) else {
            return (None, updates);
        };
        symbols.truncate(cut + 1);
        symbols[cut] += 1;
        updates += 1;
        if symbols.len() == n {
            return (Some(Word::new(w.alphabet(), symbols).unwrap()), updates);
        }
    }
}

/// Number of Lyndon words of length `n` over an alphabet of size `q`, by
/// Moebius inversion: `(1/n) * sum over d|n of mu(d) * q^(n/d)`.
pub fn count_lyndon(n: usize, q: u32) -> BigUint {
    assert!(n >= 1, "length must be positive");
    assert!(q >= 2, "alphabet size must be at least 2");
    let mut plus = BigUint::zero();
    let mut minus = BigUint::zero();
    for d in 1..=n {
        if n % d != 0 {
            continue;
        }
        let power = BigUint::from(q).pow((n / d) as u32);
        match moebius(d) {
            1 => plus += power,
            -1 => minus += power,
            _ => {}
        }
    }
    (plus - minus) / BigUint::from(n)
}

/// Moebius function by trial factorization.
fn moebius(mut d: usize) -> i32 {
    let mut factors = 0;
    let mut p = 2;
    while p * p <= d {
        if d % p == 0 {
            d /= p;
            if d % p == 0 {
                return 0;
            }
            factors += 1;
        }
        p += 1;
    }
    if d > 1 {
        factors += 1;
    }
    if factors % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Update counts recorded over one enumeration run.
#[derive(Debug, Clone, PartialEq)]
pub struct UpdateTally {
    /// Updates spent producing each emitted word (the start word costs 0).
    pub per_step: Vec<u64>,
    /// Total updates, equal to the sum of `per_step`.
    pub total: u64,
    /// `total` divided by the number of emitted words.
    pub amortized: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum EnumPhase {
    NotStarted,
    Running,
    Exhausted,
}

/// Streaming enumerator of the Lyndon words of length exactly `n` over
/// `{0,...,q-1}` in lexicographic order, operating on the compressed
/// representation.
///
/// Pull-based: one word per call, constant state between pulls. Iteration
/// starts at `0^(n-1) 1` and ends (`None`) after the lexicographically last
/// word. For `n = 1` the `q` single-symbol words are emitted directly.
#[derive(Debug, Clone)]
pub struct LyndonEnumerator {
    alphabet: Alphabet,
    n: usize,
    cells: Vec<Cell>,
    len: usize,
    phase: EnumPhase,
    single_cursor: Symbol,
    updates: u64,
    per_step: Vec<u64>,
}

impl LyndonEnumerator {
    /// Enumerator over all Lyndon words of length `n`, positioned before the
    /// first word. Panics if `n == 0` or `q < 2`.
    pub fn new(n: usize, q: u32) -> Self {
        assert!(n >= 1, "length must be positive");
        LyndonEnumerator {
            alphabet: Alphabet::new(q),
            n,
            cells: Vec::new(),
            len: 0,
            phase: EnumPhase::NotStarted,
            single_cursor: 0,
            updates: 0,
            per_step: Vec::new(),
        }
    }

    /// Enumerator positioned at `w`, so the first pull yields the successor
    /// of `w`. Panics if `w` is not a Lyndon word of length exactly `n`.
    pub fn from_word(w: &Word, n: usize) -> Self {
        assert_eq!(w.len(), n, "word length must equal n");
        assert!(
            crate::words::is_lyndon_naive(w),
            "enumerator state must be a Lyndon word, got {w}"
        );
        let compressed = compress(w);
        let mut e = LyndonEnumerator::new(n, w.alphabet().size());
        e.cells = compressed.cells().to_vec();
        e.len = n;
        e.phase = EnumPhase::Running;
        e.single_cursor = if n == 1 { w.symbols()[0] + 1 } else { 0 };
        e
    }

    /// Advances to the next Lyndon word of length `n` and returns it in
    /// compressed form, or `None` once the enumeration is exhausted. The
    /// first call on a fresh enumerator yields the start word `0^(n-1) 1`.
    pub fn next_of_length_n(&mut self) -> Option<CompressedWord> {
        match self.phase {
            EnumPhase::Exhausted => None,
            EnumPhase::NotStarted => {
                self.phase = EnumPhase::Running;
                if self.n == 1 {
                    self.single_cursor = 1;
                    self.emit_single(0)
                } else {
                    let mut symbols = vec![0; self.n];
                    symbols[self.n - 1] = 1;
                    let start = Word::new(self.alphabet, symbols).unwrap();
                    let compressed = compress(&start);
                    self.cells = compressed.cells().to_vec();
                    self.len = self.n;
                    self.per_step.push(0);
                    Some(compressed)
                }
            }
            EnumPhase::Running => {
                if self.n == 1 {
                    let c = self.single_cursor;
                    if c >= self.alphabet.size() {
                        self.phase = EnumPhase::Exhausted;
                        return None;
                    }
                    self.single_cursor += 1;
                    return self.emit_single(c);
                }
                let before = self.updates;
                if self.advance() {
                    self.per_step.push(self.updates - before);
                    Some(CompressedWord::from_cells_unchecked(
                        self.alphabet,
                        self.cells.clone(),
                    ))
                } else {
                    // Charge the cost of discovering exhaustion to the last
                    // emitted word so the per-step tally sums to the total.
                    self.phase = EnumPhase::Exhausted;
                    if let Some(last) = self.per_step.last_mut() {
                        *last += self.updates - before;
                    }
                    None
                }
            }
        }
    }

    fn emit_single(&mut self, c: Symbol) -> Option<CompressedWord> {
        let word = Word::new(self.alphabet, vec![c]).unwrap();
        self.per_step.push(0);
        Some(compress(&word))
    }

    /// Cumulative number of updates to the compressed array.
    pub fn update_count(&self) -> u64 {
        self.updates
    }

    /// Number of words emitted so far.
    pub fn words_emitted(&self) -> u64 {
        self.per_step.len() as u64
    }

    pub fn tally(&self) -> UpdateTally {
        let total: u64 = self.per_step.iter().sum();
        debug_assert_eq!(total, self.updates);
        let amortized = if self.per_step.is_empty() {
            0.0
        } else {
            total as f64 / self.per_step.len() as f64
        };
        UpdateTally {
            per_step: self.per_step.clone(),
            total,
            amortized,
        }
    }

    /// One full successor computation: `u := P(current)`, then repeat
    /// `u := u^h . P(z)` (with `z` the prefix of length `n mod |u|`, taken as
    /// `|u|` when `|u|` divides `n`) until the word has length `n` again.
    /// Returns false when the chain exhausts instead.
    fn advance(&mut self) -> bool {
        if !self.apply_p() {
            return false;
        }
        loop {
            if self.len == self.n {
                return true;
            }
            if !self.cells.iter().any(|c| matches!(c, Cell::Sym(_))) {
                // all-maximal word: its extension has no incrementable symbol
                return false;
            }
            debug_assert!(matches!(self.cells[0], Cell::Sym(_)));
            let ulen = self.len;
            let m = self.n % ulen;
            let z_len = if m == 0 { ulen } else { m };
            let h = (self.n - z_len) / ulen;
            let u_cells = self.cells.len();

            // Locate the last non-maximal symbol within the first z_len
            // positions; everything in z after it is maximal and is dropped
            // by P.
            let mut pos = 0usize;
            let mut last_sym: Option<(usize, usize, Symbol)> = None;
            for idx in 0..u_cells {
                if pos >= z_len {
                    break;
                }
                match self.cells[idx] {
                    Cell::Sym(s) => {
                        pos += 1;
                        last_sym = Some((idx, pos, s));
                    }
                    Cell::Run(r) => pos += r,
                }
            }
            let (cut_idx, cut_pos, b) = last_sym.expect("prefix starts with a non-maximal symbol");

            // u^h: append h-1 further copies of u cell by cell.
            for _ in 1..h {
                for idx in 0..u_cells {
                    let c = self.cells[idx];
                    self.cells.push(c);
                    self.updates += 1;
                }
            }
            // P(z): the cells before the cut, then the incremented symbol.
            for idx in 0..cut_idx {
                let c = self.cells[idx];
                self.cells.push(c);
                self.updates += 1;
            }
            self.push_incremented(b);
            self.len = h * ulen + cut_pos;
        }
    }

    /// In-place `P`: strip the trailing run cell if any, then increment the
    /// last block symbol, merging it into a run when it reaches `q-1`.
    /// Returns false if the word was all-maximal.
    fn apply_p(&mut self) -> bool {
        if let Some(&Cell::Run(r)) = self.cells.last() {
            self.cells.pop();
            self.updates += 1;
            self.len -= r;
        }
        let b = match self.cells.last() {
            Some(&Cell::Sym(b)) => b,
            Some(&Cell::Run(_)) => unreachable!("adjacent run cells"),
            None => return false,
        };
        if b + 1 < self.alphabet.max_symbol() {
            *self.cells.last_mut().unwrap() = Cell::Sym(b + 1);
            self.updates += 1;
        } else {
            // the incremented symbol becomes maximal: remove it and merge
            self.cells.pop();
            self.updates += 1;
            match self.cells.last_mut() {
                Some(Cell::Run(r)) => *r += 1,
                _ => self.cells.push(Cell::Run(1)),
            }
            self.updates += 1;
        }
        true
    }

    fn push_incremented(&mut self, b: Symbol) {
        if b + 1 < self.alphabet.max_symbol() {
            self.cells.push(Cell::Sym(b + 1));
        } else {
            match self.cells.last_mut() {
                Some(Cell::Run(r)) => *r += 1,
                _ => self.cells.push(Cell::Run(1)),
            }
        }
        self.updates += 1;
    }
}

impl Iterator for LyndonEnumerator {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        self.next_of_length_n().map(|c| decompress(&c))
    }
}

/// All Lyndon words of length exactly `n` over `{0,...,q-1}` in lexicographic
/// order. Call [`LyndonEnumerator::tally`] afterwards for the update counts.
pub fn enumerate_all(n: usize, q: u32) -> LyndonEnumerator {
    LyndonEnumerator::new(n, q)
}

/// Convenience: `count_lyndon` as f64 (exact for the desk-scale sizes used in
/// bound checks).
pub fn count_lyndon_f64(n: usize, q: u32) -> f64 {
    count_lyndon(n, q).to_f64().expect("count fits in f64")
}

/// The word `0 1^k 0 1^(k+1)` over `q = 2`, the family on which the plain
/// array representation needs quadratically many writes per successor.
pub fn pathological_word(k: usize) -> Word {
    let mut symbols = vec![1; 2 * k + 3];
    symbols[0] = 0;
    symbols[k + 1] = 0;
    Word::new(Alphabet::new(2), symbols).unwrap()
}

//! Cross-module equivalence sweeps: the compressed enumerator against the
//! brute-force rotation oracle, and the counting formula against exhaustive
//! filtering.

use num_bigint::BigUint;

use lynfield::lyndon::{count_lyndon, duval_next, enumerate_all};
use lynfield::words::{is_lyndon_naive, Alphabet, Symbol, Word};

fn all_words(q: u32, n: usize) -> impl Iterator<Item = Word> {
    let alphabet = Alphabet::new(q);
    (0..(q as u64).pow(n as u32)).map(move |mut code| {
        let mut symbols = vec![0; n];
        for slot in symbols.iter_mut().rev() {
            *slot = (code % q as u64) as Symbol;
            code /= q as u64;
        }
        Word::new(alphabet, symbols).unwrap()
    })
}

/// Allocation-free rotation test, independent of the words-module
/// implementation; used for the larger sweeps.
fn is_lyndon_lazy(symbols: &[Symbol]) -> bool {
    let n = symbols.len();
    'rot: for i in 1..n {
        for j in 0..n {
            let a = symbols[j];
            let b = symbols[(i + j) % n];
            if a < b {
                continue 'rot;
            }
            if a > b {
                return false;
            }
        }
        return false; // rotation equals the word
    }
    true
}

#[test]
fn lazy_oracle_matches_word_level_oracle() {
    for (q, n) in [(2u32, 10usize), (3, 6)] {
        for word in all_words(q, n) {
            assert_eq!(is_lyndon_lazy(word.symbols()), is_lyndon_naive(&word));
        }
    }
}

#[test]
fn enumeration_equals_naive_filter_binary_up_to_14() {
    for n in 1..=14usize {
        let expected: Vec<Word> = all_words(2, n)
            .filter(|w| is_lyndon_lazy(w.symbols()))
            .collect();
        let got: Vec<Word> = enumerate_all(n, 2).collect();
        assert_eq!(got, expected, "n={n}");
        assert_eq!(BigUint::from(got.len()), count_lyndon(n, 2));
    }
}

#[test]
fn enumeration_equals_naive_filter_ternary_up_to_8() {
    for n in 1..=8usize {
        let expected: Vec<Word> = all_words(3, n)
            .filter(|w| is_lyndon_lazy(w.symbols()))
            .collect();
        let got: Vec<Word> = enumerate_all(n, 3).collect();
        assert_eq!(got, expected, "n={n}");
        assert_eq!(BigUint::from(got.len()), count_lyndon(n, 3));
    }
}

#[test]
fn moebius_count_matches_exhaustive_filter_up_to_12() {
    for q in [2u32, 3] {
        for n in 1..=12usize {
            let naive = all_words(q, n)
                .filter(|w| is_lyndon_lazy(w.symbols()))
                .count();
            assert_eq!(BigUint::from(naive), count_lyndon(n, q), "q={q} n={n}");
        }
    }
}

#[test]
fn duval_chain_visits_every_lyndon_word_up_to_n() {
    // Walking N from the smallest word enumerates all of L_{<=n,q} in
    // lexicographic order; cross-check against the filter.
    let q = 2u32;
    let n = 9usize;
    let mut expected: Vec<Word> = (1..=n)
        .flat_map(|m| all_words(q, m).filter(|w| is_lyndon_lazy(w.symbols())))
        .collect();
    expected.sort();

    let mut chain = vec![Word::new(Alphabet::new(q), vec![0]).unwrap()];
    while let Some(next) = duval_next(chain.last().unwrap(), n) {
        chain.push(next);
    }
    assert_eq!(chain, expected);
}

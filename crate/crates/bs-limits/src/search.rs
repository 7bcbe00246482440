//! Threaded version of the discriminating-word search.
//!
//! Each length is split into contiguous chunks, one per worker, and the
//! hit from the earliest chunk wins. The result is the same shortlex-first
//! word the sequential search returns.

use std::thread;

use bs_limits_core::marked::{first_discriminating, Discriminator, GroupOracle};
use bs_limits_core::word::{bounded_block_words, ReducedWords};
use bs_limits_core::{Result, Word};

fn search_chunks(g1: &GroupOracle, g2: &GroupOracle, words: &[Word], workers: usize) -> Result<Option<Discriminator>> {
    if words.is_empty() {
        return Ok(None);
    }
    let size = words.len().div_ceil(workers.max(1));
    let results: Vec<Result<Option<Discriminator>>> = thread::scope(|s| {
        let handles: Vec<_> = words
            .chunks(size)
            .map(|chunk| s.spawn(move || first_discriminating(g1, g2, chunk.iter().cloned())))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("search worker panicked"))
            .collect()
    });
    for r in results {
        if let Some(found) = r? {
            return Ok(Some(found));
        }
    }
    Ok(None)
}

/// Shortest word of length `<= max_len` trivial in exactly one group.
pub fn discriminating_word(
    g1: &GroupOracle,
    g2: &GroupOracle,
    max_len: usize,
    workers: usize,
) -> Result<Option<Discriminator>> {
    if g1 == g2 {
        return Ok(None);
    }
    for len in 0..=max_len {
        let words: Vec<Word> = ReducedWords::of_length(len).collect();
        if let Some(found) = search_chunks(g1, g2, &words, workers)? {
            return Ok(Some(found));
        }
    }
    Ok(None)
}

/// Exponent-bounded variant; a hit only bounds the distance from above.
pub fn discriminating_word_bounded(
    g1: &GroupOracle,
    g2: &GroupOracle,
    max_a_len: usize,
    exp_bound: u32,
    workers: usize,
) -> Result<Option<Discriminator>> {
    search_chunks(g1, g2, &bounded_block_words(max_a_len, exp_bound), workers)
}

//! Bit-packed segmented sieve of Eratosthenes over the odd integers.
//!
//! Bit `i` of the table stands for the odd number `2i + 1`; a set bit marks it
//! composite (1 is marked as well). Construction sieves fixed-size segments in
//! parallel with the base primes up to `√limit`.
//!
//! The table can be persisted in a small binary cache format:
//!
//! ```text
//! offset 0   u8        format version (currently 2)
//! offset 1   u64 LE    limit
//! offset 9   u64 LE *  bit array words, ceil(((limit + 1) / 2) / 64) of them
//! then       32 bytes  SHA-256 of everything before it
//! ```
//!
//! Padding bits past the last odd number are zero.

use std::fs;
use std::io::{self, Read, Write};
use std::path::Path;

use rayon::prelude::*;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::error::{resource, Result};

/// Cache format version written as the first byte of a cache file.
pub const CACHE_VERSION: u8 = 2;

/// Largest limit accepted by [`PrimeTable::new`]; 4·10⁹ needs 250 MB.
pub const DEFAULT_MAX_LIMIT: u64 = 4_000_000_000;

/// Odd numbers per parallel segment (2^18 words of 64 bits = 2 MiB).
const SEGMENT_WORDS: usize = 1 << 15;

/// Number of leading odd numbers re-sieved to validate a cache file.
const CACHE_CHECK_PREFIX: u64 = 1 << 16;

/// Immutable primality table for `0..=limit`.
#[derive(Clone, PartialEq, Eq)]
pub struct PrimeTable {
    limit: u64,
    bits: Vec<u64>,
}

impl std::fmt::Debug for PrimeTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PrimeTable")
            .field("limit", &self.limit)
            .field("words", &self.bits.len())
            .finish()
    }
}

/// Reasons a cache file is rejected.
#[derive(Debug, Error)]
pub enum CacheError {
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
    #[error("unsupported cache version {0}")]
    Version(u8),
    #[error("cache holds limit {found}, expected {expected}")]
    LimitMismatch { found: u64, expected: u64 },
    #[error("cache length does not match its limit")]
    Length,
    #[error("cache contents fail verification")]
    Corrupt,
}

fn bit_count(limit: u64) -> u64 {
    limit.div_ceil(2)
}

fn word_count(limit: u64) -> usize {
    bit_count(limit).div_ceil(64) as usize
}

/// Primes up to `n` by a plain byte sieve; used for base primes only.
pub(crate) fn small_primes(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

impl PrimeTable {
    /// Sieves `0..=limit` with the default memory bound.
    pub fn new(limit: u64) -> Result<Self> {
        Self::with_max_limit(limit, DEFAULT_MAX_LIMIT)
    }

    /// Sieves `0..=limit`, refusing limits above `max_limit`.
    pub fn with_max_limit(limit: u64, max_limit: u64) -> Result<Self> {
        if limit < 2 {
            return crate::error::domain(format!("sieve limit must be at least 2, got {limit}"));
        }
        if limit > max_limit {
            return resource(format!(
                "sieve limit {limit} exceeds the configured bound {max_limit}"
            ));
        }
        Ok(Self::build(limit))
    }

    fn build(limit: u64) -> Self {
        let nbits = bit_count(limit);
        let mut bits = vec![0u64; word_count(limit)];
        let root = (limit as f64).sqrt() as u64 + 1;
        let base: Vec<u64> = small_primes(root).into_iter().filter(|&p| p > 2).collect();

        bits.par_chunks_mut(SEGMENT_WORDS)
            .enumerate()
            .for_each(|(seg, words)| {
                let first = (seg * SEGMENT_WORDS * 64) as u64;
                let len = ((words.len() * 64) as u64).min(nbits - first);
                let lo_n = 2 * first + 1;
                let hi_n = 2 * (first + len - 1) + 1;
                for &p in &base {
                    if p * p > hi_n {
                        break;
                    }
                    let mut start = (p * p).max(lo_n.div_ceil(p) * p);
                    if start % 2 == 0 {
                        start += p;
                    }
                    let mut idx = (start - 1) / 2 - first;
                    while idx < len {
                        words[(idx / 64) as usize] |= 1u64 << (idx % 64);
                        idx += p;
                    }
                }
            });
        bits[0] |= 1; // 1 is not prime
        Self { limit, bits }
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    #[inline]
    fn odd_bit(&self, n: u64) -> bool {
        let i = (n - 1) / 2;
        self.bits[(i / 64) as usize] >> (i % 64) & 1 == 0
    }

    /// Primality of `n`, or `None` when `n` lies beyond the table.
    #[inline]
    pub fn get(&self, n: u64) -> Option<bool> {
        if n > self.limit {
            None
        } else {
            Some(self.lookup(n))
        }
    }

    #[inline]
    fn lookup(&self, n: u64) -> bool {
        if n < 3 {
            n == 2
        } else if n.is_multiple_of(2) {
            false
        } else {
            self.odd_bit(n)
        }
    }

    /// Primality of `n`.
    ///
    /// # Panics
    ///
    /// If `n > self.limit()`. Use [`PrimeTable::get`] for unchecked ranges.
    #[inline]
    pub fn is_prime(&self, n: u64) -> bool {
        assert!(
            n <= self.limit,
            "{n} is beyond the sieve limit {}",
            self.limit
        );
        self.lookup(n)
    }

    /// Number of primes `≤ n` (`n` clamped to the limit).
    pub fn count_upto(&self, n: u64) -> u64 {
        let n = n.min(self.limit);
        if n < 2 {
            return 0;
        }
        // odd indices 1..=(n-1)/2 cover 3..=n
        let last = (n - 1) / 2;
        let full_words = (last + 1) / 64;
        let mut composite = 0u64;
        for w in &self.bits[..full_words as usize] {
            composite += w.count_ones() as u64;
        }
        let rem = (last + 1) % 64;
        if rem > 0 {
            let mask = (1u64 << rem) - 1;
            composite += (self.bits[full_words as usize] & mask).count_ones() as u64;
        }
        // the bit for 1 is set and counted in `composite`; 2 is added back
        (last + 1) - composite + 1
    }

    /// Number of primes in `[lo, hi]`; both ends must be within the limit.
    pub fn count_range(&self, lo: u64, hi: u64) -> u64 {
        if hi < lo {
            return 0;
        }
        let below = if lo == 0 { 0 } else { self.count_upto(lo - 1) };
        self.count_upto(hi) - below
    }

    /// Ascending primes in `[lo, hi]`, with `hi` clamped to the limit.
    pub fn primes_in(&self, lo: u64, hi: u64) -> impl Iterator<Item = u64> + '_ {
        let hi = hi.min(self.limit);
        let two = (lo <= 2 && hi >= 2).then_some(2);
        let start = lo.max(3) | 1;
        two.into_iter()
            .chain((start..=hi).step_by(2).filter(move |&n| self.odd_bit(n)))
    }

    /// All primes up to the limit.
    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.primes_in(2, self.limit)
    }

    /// Serializes the table in the cache format.
    pub fn write_cache<W: Write>(&self, mut out: W) -> io::Result<()> {
        let mut buf = Vec::with_capacity(9 + self.bits.len() * 8 + 32);
        buf.push(CACHE_VERSION);
        buf.extend_from_slice(&self.limit.to_le_bytes());
        for w in &self.bits {
            buf.extend_from_slice(&w.to_le_bytes());
        }
        let digest = Sha256::digest(&buf);
        buf.extend_from_slice(&digest);
        out.write_all(&buf)?;
        out.flush()
    }

    /// Reads a table from the cache format, checking version, length, digest
    /// and a freshly sieved prefix.
    pub fn read_cache<R: Read>(mut input: R) -> std::result::Result<Self, CacheError> {
        let mut header = [0u8; 9];
        input.read_exact(&mut header).map_err(|e| match e.kind() {
            io::ErrorKind::UnexpectedEof => CacheError::Length,
            _ => CacheError::Io(e),
        })?;
        if header[0] != CACHE_VERSION {
            return Err(CacheError::Version(header[0]));
        }
        let limit = u64::from_le_bytes(header[1..9].try_into().expect("8 bytes"));
        if limit < 2 {
            return Err(CacheError::Corrupt);
        }
        let mut body = Vec::new();
        input.read_to_end(&mut body)?;
        if body.len() as u64 != word_count(limit) as u64 * 8 + 32 {
            return Err(CacheError::Length);
        }
        let (body, digest) = body.split_at(body.len() - 32);
        let mut hasher = Sha256::new();
        hasher.update(header);
        hasher.update(body);
        if hasher.finalize().as_slice() != digest {
            return Err(CacheError::Corrupt);
        }
        let bits: Vec<u64> = body
            .chunks_exact(8)
            .map(|c| u64::from_le_bytes(c.try_into().expect("8 bytes")))
            .collect();
        let table = Self { limit, bits };
        table.verify()?;
        Ok(table)
    }

    fn verify(&self) -> std::result::Result<(), CacheError> {
        let nbits = bit_count(self.limit);
        let pad = (self.bits.len() as u64) * 64 - nbits;
        if pad > 0 {
            let last = *self.bits.last().expect("non-empty");
            if last >> (64 - pad) != 0 {
                return Err(CacheError::Corrupt);
            }
        }
        let prefix = Self::build(self.limit.clamp(2, CACHE_CHECK_PREFIX));
        let words = prefix.bits.len() - 1;
        if self.bits[..words] != prefix.bits[..words] {
            return Err(CacheError::Corrupt);
        }
        Ok(())
    }

    /// Loads a cache file and insists on the given limit.
    pub fn load(path: &Path, expected_limit: u64) -> std::result::Result<Self, CacheError> {
        let file = fs::File::open(path)?;
        let table = Self::read_cache(io::BufReader::new(file))?;
        if table.limit != expected_limit {
            return Err(CacheError::LimitMismatch {
                found: table.limit,
                expected: expected_limit,
            });
        }
        Ok(table)
    }

    /// Writes the cache file, replacing any existing one.
    pub fn save(&self, path: &Path) -> io::Result<()> {
        let tmp = path.with_extension("tmp");
        {
            let file = fs::File::create(&tmp)?;
            self.write_cache(io::BufWriter::new(file))?;
        }
        fs::rename(&tmp, path)
    }
}

use std::fmt;

pub(crate) const WORD_BITS: usize = 64;

pub(crate) fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD_BITS)
}

/// A subset of `{0, .., len-1}` stored as a packed bitstring.
///
/// Used both for column supports `S_i` (subsets of the tests) and for test
/// outcomes. Bits beyond `len` in the last word are always zero, so two sets
/// of the same length are equal exactly when their words are equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SupportSet {
    len: usize,
    words: Vec<u64>,
}

impl SupportSet {
    pub fn empty(len: usize) -> Self {
        Self {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn full(len: usize) -> Self {
        let mut s = Self {
            len,
            words: vec![u64::MAX; words_for(len)],
        };
        s.clear_tail();
        s
    }

    /// Builds a set from member indices; indices `>= len` are an error.
    pub fn from_indices(len: usize, indices: &[usize]) -> crate::Result<Self> {
        let mut s = Self::empty(len);
        for &i in indices {
            if i >= len {
                return Err(crate::Error::IndexOutOfRange { index: i, n: len });
            }
            s.insert(i);
        }
        Ok(s)
    }

    /// Parses a string of `0`/`1` characters, position `i` giving bit `i`.
    pub fn from_bitstring(bits: &str) -> Option<Self> {
        let mut s = Self::empty(bits.len());
        for (i, c) in bits.bytes().enumerate() {
            match c {
                b'0' => {}
                b'1' => s.insert(i),
                _ => return None,
            }
        }
        Some(s)
    }

    pub(crate) fn from_words(len: usize, words: Vec<u64>) -> Self {
        debug_assert_eq!(words.len(), words_for(len));
        let mut s = Self { len, words };
        s.clear_tail();
        s
    }

    fn clear_tail(&mut self) {
        let rem = self.len % WORD_BITS;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.len && self.words[i / WORD_BITS] >> (i % WORD_BITS) & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        self.words[i / WORD_BITS] |= 1 << (i % WORD_BITS);
    }

    pub fn remove(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        self.words[i / WORD_BITS] &= !(1 << (i % WORD_BITS));
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn union_with(&mut self, other: &SupportSet) {
        assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn is_subset_of(&self, other: &SupportSet) -> bool {
        self.len == other.len && words_subset(&self.words, &other.words)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.contains(i))
    }

    /// Byte encoding used for hashing: the bitstring padded to whole bytes,
    /// bit `i` stored in byte `i / 8` at position `i % 8` (LSB first).
    pub fn canonical_key(&self) -> Vec<u8> {
        canonical_key_from_words(&self.words, self.len)
    }

    pub fn to_bitstring(&self) -> String {
        (0..self.len)
            .map(|i| if self.contains(i) { '1' } else { '0' })
            .collect()
    }
}

impl fmt::Debug for SupportSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub(crate) fn words_subset(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

pub(crate) fn canonical_key_from_words(words: &[u64], len: usize) -> Vec<u8> {
    let nbytes = len.div_ceil(8);
    let mut out = Vec::with_capacity(nbytes);
    for w in words {
        out.extend_from_slice(&w.to_le_bytes());
    }
    out.truncate(nbytes);
    out
}

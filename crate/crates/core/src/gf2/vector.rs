use std::fmt;

use crate::error::{Error, Result};

use super::words;

/// Sparse binary vector: a length plus the sorted positions holding a 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct BitVector {
    len: usize,
    support: Vec<usize>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            support: Vec::new(),
        }
    }

    /// Builds a vector from an arbitrary list of set positions.
    ///
    /// The positions are sorted; repeated or out-of-range positions are rejected.
    pub fn from_support(len: usize, mut support: Vec<usize>) -> Result<Self> {
        support.sort_unstable();
        for w in support.windows(2) {
            if w[0] == w[1] {
                return Err(Error::InvalidParameter(format!(
                    "position {} repeated in vector support",
                    w[0]
                )));
            }
        }
        if let Some(&last) = support.last() {
            if last >= len {
                return Err(Error::IndexOutOfRange { index: last, len });
            }
        }
        Ok(Self { len, support })
    }

    /// Trusted constructor used internally where support is known to be sorted and in range.
    pub(crate) fn from_sorted_unchecked(len: usize, support: Vec<usize>) -> Self {
        debug_assert!(support.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(support.last().is_none_or(|&i| i < len));
        Self { len, support }
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let support = bits
            .iter()
            .enumerate()
            .filter_map(|(i, &b)| b.then_some(i))
            .collect();
        Self {
            len: bits.len(),
            support,
        }
    }

    /// Builds a vector from 0/1 bytes; any nonzero byte counts as 1.
    pub fn from_dense(bits: &[u8]) -> Self {
        let support = bits
            .iter()
            .enumerate()
            .filter_map(|(i, &b)| (b != 0).then_some(i))
            .collect();
        Self {
            len: bits.len(),
            support,
        }
    }

    pub(crate) fn from_words(len: usize, w: &[u64]) -> Self {
        Self {
            len,
            support: words::ones(w, len).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.support.len()
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn get(&self, index: usize) -> bool {
        self.support.binary_search(&index).is_ok()
    }

    pub fn to_dense(&self) -> Vec<u8> {
        let mut out = vec![0u8; self.len];
        for &i in &self.support {
            out[i] = 1;
        }
        out
    }

    pub(crate) fn to_words(&self) -> Vec<u64> {
        let mut out = vec![0u64; words::count(self.len)];
        for &i in &self.support {
            words::set(&mut out, i);
        }
        out
    }

    /// Elementwise sum over GF(2).
    pub fn xor(&self, other: &BitVector) -> Result<BitVector> {
        if self.len != other.len {
            return Err(Error::DimensionMismatch {
                context: "vector sum",
                expected: self.len,
                found: other.len,
            });
        }
        let (a, b) = (&self.support, &other.support);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Ok(BitVector {
            len: self.len,
            support: out,
        })
    }

    /// Parity of the overlap between two supports.
    pub fn dot(&self, other: &BitVector) -> Result<bool> {
        if self.len != other.len {
            return Err(Error::DimensionMismatch {
                context: "vector dot product",
                expected: self.len,
                found: other.len,
            });
        }
        Ok(overlap_parity(&self.support, &other.support))
    }
}

/// Parity of the number of common elements of two sorted index lists.
pub(crate) fn overlap_parity(a: &[usize], b: &[usize]) -> bool {
    let (mut i, mut j) = (0, 0);
    let mut parity = false;
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                parity = !parity;
                i += 1;
                j += 1;
            }
        }
    }
    parity
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut next = self.support.iter().peekable();
        for i in 0..self.len {
            if next.peek() == Some(&&i) {
                next.next();
                f.write_str("1")?;
            } else {
                f.write_str("0")?;
            }
        }
        Ok(())
    }
}

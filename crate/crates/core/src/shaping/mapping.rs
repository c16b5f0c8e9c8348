//! Bit-to-symbol mappings.
//!
//! PAM-4 and PAM-8 use binary-reflected Gray labels over ascending levels
//! (MSB first). PAM-6 packs 5 bits onto a pair of symbols: of the 36 level
//! pairs, the four with both symbols at maximum magnitude are excluded and
//! the remaining 32 are labeled in lexicographic order of their level indices.

use serde::{Deserialize, Serialize};

use super::ShapingError;

/// How bits travel on symbols for one modulation format.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mapping {
    /// Gray labels on `order` levels (`order` ∈ {4, 8}).
    Gray { order: usize },
    /// 5 bits on 2 six-level symbols.
    Pam6Pair,
}

impl Mapping {
    pub fn for_order(order: usize) -> Result<Self, ShapingError> {
        match order {
            4 | 8 => Ok(Mapping::Gray { order }),
            6 => Ok(Mapping::Pam6Pair),
            _ => Err(ShapingError::UnsupportedOrder(order)),
        }
    }

    /// (bits, symbols) per mapping block.
    pub fn block(&self) -> (usize, usize) {
        match *self {
            Mapping::Gray { order } => (order.trailing_zeros() as usize, 1),
            Mapping::Pam6Pair => (5, 2),
        }
    }

    pub fn bits_per_symbol(&self) -> f64 {
        let (b, s) = self.block();
        b as f64 / s as f64
    }

    pub fn map(&self, bits: &[u8]) -> Result<Vec<usize>, ShapingError> {
        match *self {
            Mapping::Gray { order } => gray_map(bits, order),
            Mapping::Pam6Pair => pam6_encode(bits),
        }
    }

    pub fn demap(&self, symbols: &[usize]) -> Result<Vec<u8>, ShapingError> {
        match *self {
            Mapping::Gray { order } => gray_demap(symbols, order),
            Mapping::Pam6Pair => pam6_decode(symbols),
        }
    }
}

fn gray_bits(order: usize) -> Result<usize, ShapingError> {
    match order {
        4 => Ok(2),
        8 => Ok(3),
        _ => Err(ShapingError::UnsupportedOrder(order)),
    }
}

/// Gray label of level index `k`.
pub fn gray_label(k: usize) -> usize {
    k ^ (k >> 1)
}

/// Level index carrying Gray label `g`.
pub fn gray_index(mut g: usize) -> usize {
    let mut k = g;
    while g > 0 {
        g >>= 1;
        k ^= g;
    }
    k
}

/// Maps bits (MSB first within each label) to ascending level indices.
pub fn gray_map(bits: &[u8], order: usize) -> Result<Vec<usize>, ShapingError> {
    let m = gray_bits(order)?;
    if bits.len() % m != 0 {
        return Err(ShapingError::BitLength { len: bits.len(), block: m });
    }
    Ok(bits
        .chunks_exact(m)
        .map(|c| gray_index(c.iter().fold(0usize, |acc, &b| (acc << 1) | (b & 1) as usize)))
        .collect())
}

pub fn gray_demap(symbols: &[usize], order: usize) -> Result<Vec<u8>, ShapingError> {
    let m = gray_bits(order)?;
    let mut out = Vec::with_capacity(symbols.len() * m);
    for &s in symbols {
        if s >= order {
            return Err(ShapingError::SymbolIndex { index: s, order });
        }
        let g = gray_label(s);
        out.extend((0..m).rev().map(|i| ((g >> i) & 1) as u8));
    }
    Ok(out)
}

/// The 32 valid PAM-6 index pairs in label order.
pub fn pam6_codebook() -> [(usize, usize); 32] {
    let mut book = [(0, 0); 32];
    let mut n = 0;
    for a in 0..6 {
        for b in 0..6 {
            if is_excluded_pair(a, b) {
                continue;
            }
            book[n] = (a, b);
            n += 1;
        }
    }
    book
}

fn is_excluded_pair(a: usize, b: usize) -> bool {
    (a == 0 || a == 5) && (b == 0 || b == 5)
}

fn pam6_label(pair: (usize, usize)) -> Option<usize> {
    pam6_codebook().iter().position(|&p| p == pair)
}

/// Encodes 5-bit blocks (MSB first) into pairs of PAM-6 level indices.
pub fn pam6_encode(bits: &[u8]) -> Result<Vec<usize>, ShapingError> {
    if bits.len() % 5 != 0 {
        return Err(ShapingError::BitLength { len: bits.len(), block: 5 });
    }
    let book = pam6_codebook();
    let mut out = Vec::with_capacity(bits.len() / 5 * 2);
    for block in bits.chunks_exact(5) {
        let label = block.iter().fold(0usize, |acc, &b| (acc << 1) | (b & 1) as usize);
        let (a, b) = book[label];
        out.push(a);
        out.push(b);
    }
    Ok(out)
}

/// Nearest valid codeword to a level-index pair in squared Euclidean
/// distance; ties go to the lexicographically smaller pair.
pub fn pam6_nearest(pair: (usize, usize)) -> (usize, usize) {
    if !is_excluded_pair(pair.0, pair.1) {
        return pair;
    }
    // levels are on an evenly spaced grid, so index distance suffices
    let d2 = |p: (usize, usize)| {
        let da = p.0 as i64 - pair.0 as i64;
        let db = p.1 as i64 - pair.1 as i64;
        da * da + db * db
    };
    let mut book = pam6_codebook().to_vec();
    book.sort();
    book.into_iter()
        .min_by_key(|&p| d2(p))
        .expect("codebook is not empty")
}

/// Decodes pairs of PAM-6 level indices into 5-bit blocks.
pub fn pam6_decode(symbols: &[usize]) -> Result<Vec<u8>, ShapingError> {
    if symbols.len() % 2 != 0 {
        return Err(ShapingError::SymbolLength { len: symbols.len(), block: 2 });
    }
    let mut out = Vec::with_capacity(symbols.len() / 2 * 5);
    for pair in symbols.chunks_exact(2) {
        for &s in pair {
            if s >= 6 {
                return Err(ShapingError::SymbolIndex { index: s, order: 6 });
            }
        }
        let label = pam6_label(pam6_nearest((pair[0], pair[1]))).expect("nearest pair is valid");
        out.extend((0..5).rev().map(|i| ((label >> i) & 1) as u8));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn label_bits(label: usize, m: usize) -> Vec<u8> {
        (0..m).rev().map(|i| ((label >> i) & 1) as u8).collect()
    }

    #[test]
    fn pam4_gray_convention() {
        let bits = [0, 0, 0, 1, 1, 1, 1, 0];
        assert_eq!(gray_map(&bits, 4).unwrap(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn pam8_adjacent_labels_differ_in_one_bit() {
        for k in 0..7 {
            assert_eq!((gray_label(k) ^ gray_label(k + 1)).count_ones(), 1);
        }
    }

    #[test]
    fn gray_round_trip_exhaustive() {
        for (order, m) in [(4, 2), (8, 3)] {
            for label in 0..order {
                let b = label_bits(label, m);
                let s = gray_map(&b, order).unwrap();
                assert_eq!(gray_demap(&s, order).unwrap(), b);
            }
        }
    }

    #[test]
    fn gray_rejects_bad_lengths() {
        assert!(gray_map(&[0, 1], 8).is_err());
        assert!(gray_map(&[0, 1], 6).is_err());
        assert!(gray_demap(&[8], 8).is_err());
    }

    #[test]
    fn pam6_bijection() {
        let mut pairs = HashSet::new();
        for label in 0..32 {
            let b = label_bits(label, 5);
            let s = pam6_encode(&b).unwrap();
            assert_eq!(pam6_decode(&s).unwrap(), b);
            pairs.insert((s[0], s[1]));
        }
        assert_eq!(pairs.len(), 32);
        for excluded in [(0, 0), (0, 5), (5, 0), (5, 5)] {
            assert!(!pairs.contains(&excluded));
        }
    }

    #[test]
    fn pam6_invalid_pairs_go_to_nearest() {
        // (+5,+5) is equidistant from (+3,+5) and (+5,+3); the smaller index pair wins
        assert_eq!(pam6_nearest((5, 5)), (4, 5));
        assert_eq!(pam6_nearest((0, 0)), (0, 1));
        assert_eq!(pam6_nearest((0, 5)), (0, 4));
        assert_eq!(pam6_nearest((5, 0)), (4, 0));
        assert_eq!(pam6_nearest((2, 3)), (2, 3));
    }

    #[test]
    fn pam6_rejects_partial_blocks() {
        assert!(pam6_encode(&[1, 0, 1]).is_err());
        assert!(pam6_decode(&[1]).is_err());
    }
}

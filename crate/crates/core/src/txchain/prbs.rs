//! Maximal-length PRBS generator.

use super::TxError;

/// Feedback taps `(degree, taps)` of the standard PRBS polynomials.
const POLYNOMIALS: [(u32, &[u32]); 7] = [
    (7, &[7, 6]),
    (9, &[9, 5]),
    (11, &[11, 9]),
    (13, &[13, 12, 2, 1]),
    (15, &[15, 14]),
    (23, &[23, 18]),
    (31, &[31, 28]),
];

/// Fibonacci LFSR. Bit `i` of the state holds the output produced `i + 1`
/// steps ago; each step emits the XOR of the tapped history.
#[derive(Clone, Debug)]
pub struct Prbs {
    state: u32,
    mask: u32,
    taps: u32,
    degree: u32,
}

impl Prbs {
    pub fn new(degree: u32, seed: u32) -> Result<Self, TxError> {
        let taps = POLYNOMIALS
            .iter()
            .find(|(d, _)| *d == degree)
            .map(|(_, t)| t.iter().fold(0u32, |acc, &t| acc | 1 << (t - 1)))
            .ok_or(TxError::UnsupportedPrbsDegree(degree))?;
        let mask = if degree == 32 { u32::MAX } else { (1u32 << degree) - 1 };
        let state = seed & mask;
        if state == 0 {
            return Err(TxError::ZeroPrbsSeed);
        }
        Ok(Prbs { state, mask, taps, degree })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Sequence period, `2^degree - 1`.
    pub fn period(&self) -> u64 {
        (1u64 << self.degree) - 1
    }

    pub fn next_bit(&mut self) -> u8 {
        let bit = (self.state & self.taps).count_ones() & 1;
        self.state = ((self.state << 1) | bit) & self.mask;
        bit as u8
    }
}

impl Iterator for Prbs {
    type Item = u8;

    fn next(&mut self) -> Option<u8> {
        Some(self.next_bit())
    }
}

/// `n` bits of the PRBS of the given degree, starting from `seed`.
pub fn prbs_generate(degree: u32, seed: u32, n: usize) -> Result<Vec<u8>, TxError> {
    Ok(Prbs::new(degree, seed)?.take(n).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn measured_period(degree: u32) -> u64 {
        let mut g = Prbs::new(degree, 1).unwrap();
        let start = g.state;
        let mut n = 0u64;
        loop {
            g.next_bit();
            n += 1;
            if g.state == start {
                return n;
            }
        }
    }

    #[test]
    fn periods_are_maximal() {
        for degree in [7, 9, 11, 13, 15, 23] {
            assert_eq!(measured_period(degree), (1u64 << degree) - 1, "degree {degree}");
        }
    }

    #[test]
    fn prbs7_repeats_after_127_bits() {
        let bits = prbs_generate(7, 0x5a, 381).unwrap();
        assert_eq!(bits[..127], bits[127..254]);
        assert_eq!(bits[..127], bits[254..]);
        for shift in 1..127 {
            assert_ne!(bits[..127], bits[shift..shift + 127]);
        }
    }

    #[test]
    fn prbs15_balance() {
        let bits = prbs_generate(15, 1, (1 << 15) - 1).unwrap();
        let ones = bits.iter().filter(|&&b| b == 1).count();
        assert_eq!(ones, 1 << 14);
        assert_eq!(bits.len() - ones, (1 << 14) - 1);
    }

    #[test]
    fn deterministic_and_seed_checked() {
        assert_eq!(prbs_generate(31, 77, 500).unwrap(), prbs_generate(31, 77, 500).unwrap());
        assert!(matches!(prbs_generate(7, 0, 10), Err(TxError::ZeroPrbsSeed)));
        // seeds are masked to the register width
        assert!(matches!(prbs_generate(7, 0x80, 10), Err(TxError::ZeroPrbsSeed)));
        assert!(matches!(prbs_generate(8, 1, 10), Err(TxError::UnsupportedPrbsDegree(8))));
    }
}

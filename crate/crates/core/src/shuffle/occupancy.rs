use super::{physical, Configuration, MoveKind, MIN_SIZE};
use crate::{Error, Result};

/// Black/red colouring of the deck: `eta(x) = 1` iff the card at position
/// `x` is black (a particle).
///
/// Same circular layout as [`DeckState`](super::DeckState). The particle
/// count is cached; every move conserves it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OccupancyState {
    bits: Vec<u8>,
    origin: usize,
    particles: usize,
}

impl OccupancyState {
    /// Configuration with `eta(x) = bits[x - 1]`.
    pub fn from_bits(bits: &[u8]) -> Result<Self> {
        if bits.len() < MIN_SIZE {
            return Err(Error::DeckTooSmall(bits.len()));
        }
        if let Some((i, &v)) = bits.iter().enumerate().find(|(_, &v)| v > 1) {
            return Err(Error::InvalidOccupancy { position: i + 1, value: v });
        }
        Ok(Self {
            bits: bits.to_vec(),
            origin: 0,
            particles: bits.iter().map(|&b| b as usize).sum(),
        })
    }

    pub fn empty(n: usize) -> Result<Self> {
        Self::from_bits(&vec![0; n])
    }

    pub fn full(n: usize) -> Result<Self> {
        Self::from_bits(&vec![1; n])
    }

    /// Decode the bitmask convention used by the exact oracle:
    /// bit `x - 1` of `index` is `eta(x)`.
    pub fn from_index(n: usize, index: usize) -> Result<Self> {
        let bits: Vec<u8> = (0..n).map(|i| ((index >> i) & 1) as u8).collect();
        Self::from_bits(&bits)
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// `eta(position)` for `position` in `1..=n`.
    #[inline]
    pub fn get(&self, position: usize) -> u8 {
        self.bits[physical(self.origin, position, self.bits.len())]
    }

    pub fn particle_count(&self) -> usize {
        self.particles
    }

    /// Occupations from position 1 to position n.
    pub fn iter(&self) -> impl Iterator<Item = u8> + '_ {
        let (head, tail) = self.bits.split_at(self.origin);
        tail.iter().chain(head).copied()
    }

    pub fn to_vec(&self) -> Vec<u8> {
        self.iter().collect()
    }

    /// Bitmask encoding (bit `x - 1` holds `eta(x)`); `n` must be below 64.
    pub fn index(&self) -> usize {
        assert!(self.bits.len() < usize::BITS as usize, "index encoding needs n < 64");
        self.iter()
            .enumerate()
            .fold(0usize, |acc, (i, b)| acc | ((b as usize) << i))
    }

    #[inline]
    fn swap_positions(&mut self, p: usize, q: usize) {
        let n = self.bits.len();
        let i = physical(self.origin, p, n);
        let j = physical(self.origin, q, n);
        self.bits.swap(i, j);
    }
}

impl Configuration for OccupancyState {
    fn size(&self) -> usize {
        self.bits.len()
    }

    #[inline]
    fn apply(&mut self, mv: MoveKind) {
        let n = self.bits.len();
        match mv {
            MoveKind::TopToBottom => self.origin = if self.origin + 1 == n { 0 } else { self.origin + 1 },
            MoveKind::BottomToTop => self.origin = if self.origin == 0 { n - 1 } else { self.origin - 1 },
            MoveKind::SwapTopTwo => self.swap_positions(1, 2),
            MoveKind::TopToPenultimate => {
                self.apply(MoveKind::TopToBottom);
                self.swap_positions(n - 1, n);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn moved(bits: &[u8], mv: MoveKind) -> Vec<u8> {
        let mut s = OccupancyState::from_bits(bits).unwrap();
        s.apply(mv);
        s.to_vec()
    }

    /// Direct definition of `eta^{1 -> n-1}`: positions 2..n-1 move up one
    /// slot, the top entry lands at n-1 and position n is untouched.
    fn top_to_penultimate_direct(bits: &[u8]) -> Vec<u8> {
        let n = bits.len();
        let mut out = Vec::with_capacity(n);
        out.extend_from_slice(&bits[1..n - 1]);
        out.push(bits[0]);
        out.push(bits[n - 1]);
        out
    }

    fn all_states(n: usize) -> impl Iterator<Item = Vec<u8>> {
        (0..1usize << n).map(move |m| (0..n).map(|i| ((m >> i) & 1) as u8).collect())
    }

    #[test]
    fn single_move_examples() {
        assert_eq!(moved(&[1, 0, 0, 0], MoveKind::TopToBottom), vec![0, 0, 0, 1]);
        assert_eq!(moved(&[1, 0, 0, 0], MoveKind::TopToPenultimate), vec![0, 0, 1, 0]);
        assert_eq!(moved(&[1, 0, 1, 0], MoveKind::SwapTopTwo), vec![0, 1, 1, 0]);
        assert_eq!(moved(&[1, 0, 0, 0], MoveKind::BottomToTop), vec![0, 1, 0, 0]);
    }

    #[test]
    fn rejects_invalid_input() {
        assert_eq!(OccupancyState::from_bits(&[1, 0, 1]), Err(Error::DeckTooSmall(3)));
        assert_eq!(
            OccupancyState::from_bits(&[1, 0, 2, 0]),
            Err(Error::InvalidOccupancy { position: 3, value: 2 })
        );
    }

    #[test]
    fn shift_then_unshift_is_identity_for_all_n6_states() {
        for bits in all_states(6) {
            let mut s = OccupancyState::from_bits(&bits).unwrap();
            s.apply(MoveKind::TopToBottom);
            s.apply(MoveKind::BottomToTop);
            assert_eq!(s.to_vec(), bits);
        }
    }

    #[test]
    fn composition_equals_direct_top_to_penultimate() {
        for n in 4..=8 {
            for bits in all_states(n) {
                assert_eq!(
                    moved(&bits, MoveKind::TopToPenultimate),
                    top_to_penultimate_direct(&bits),
                    "n={n} {bits:?}"
                );
            }
        }
    }

    #[test]
    fn every_move_conserves_particles_exhaustively() {
        for n in 4..=10 {
            for bits in all_states(n) {
                let count: usize = bits.iter().map(|&b| b as usize).sum();
                for mv in MoveKind::ALL {
                    let mut s = OccupancyState::from_bits(&bits).unwrap();
                    s.apply(mv);
                    assert_eq!(s.iter().map(|b| b as usize).sum::<usize>(), count);
                    assert_eq!(s.particle_count(), count);
                }
            }
        }
    }

    #[test]
    fn index_roundtrip() {
        for m in 0..64 {
            assert_eq!(OccupancyState::from_index(6, m).unwrap().index(), m);
        }
    }
}

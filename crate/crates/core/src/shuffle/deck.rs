use super::{physical, Configuration, MoveKind, OccupancyState, MIN_SIZE};
use crate::{Error, Result};

/// A deck of `n` labelled cards, stored as a circular buffer.
///
/// Logical position `p` (1-based, top of deck is 1) lives at physical index
/// `(origin + p - 1) mod n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeckState {
    slots: Vec<u32>,
    origin: usize,
}

impl DeckState {
    /// Deck in the order `1, 2, ..., n`.
    pub fn ordered(n: usize) -> Result<Self> {
        if n < MIN_SIZE {
            return Err(Error::DeckTooSmall(n));
        }
        Ok(Self {
            slots: (1..=n as u32).collect(),
            origin: 0,
        })
    }

    /// Deck whose card at position `p` is `cards[p - 1]`.
    pub fn from_cards(cards: &[u32]) -> Result<Self> {
        let n = cards.len();
        if n < MIN_SIZE {
            return Err(Error::DeckTooSmall(n));
        }
        let mut seen = vec![false; n];
        for &c in cards {
            let c = c as usize;
            if c == 0 || c > n || seen[c - 1] {
                return Err(Error::NotAPermutation(n));
            }
            seen[c - 1] = true;
        }
        Ok(Self {
            slots: cards.to_vec(),
            origin: 0,
        })
    }

    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    /// Card at logical position `position` (1-based).
    pub fn card_at(&self, position: usize) -> u32 {
        self.slots[physical(self.origin, position, self.slots.len())]
    }

    /// Cards listed from the top of the deck.
    pub fn cards(&self) -> Vec<u32> {
        let (head, tail) = self.slots.split_at(self.origin);
        tail.iter().chain(head).copied().collect()
    }

    /// Colour projection: position `x` is occupied iff its card is black.
    pub fn project<F: Fn(u32) -> bool>(&self, is_black: F) -> OccupancyState {
        let bits: Vec<u8> = self.cards().into_iter().map(|c| u8::from(is_black(c))).collect();
        OccupancyState::from_bits(&bits).expect("deck size already validated")
    }

    fn swap_positions(&mut self, p: usize, q: usize) {
        let n = self.slots.len();
        let i = physical(self.origin, p, n);
        let j = physical(self.origin, q, n);
        self.slots.swap(i, j);
    }
}

impl Configuration for DeckState {
    fn size(&self) -> usize {
        self.slots.len()
    }

    fn apply(&mut self, mv: MoveKind) {
        let n = self.slots.len();
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

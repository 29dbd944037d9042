use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MoveKind {
    /// Top card to position `n - 1`, rate `a_n`.
    TopToPenultimate,
    /// Top card to position `n`, rate `b_n`.
    TopToBottom,
    /// Bottom card to position `1`, rate `c_n`.
    BottomToTop,
    /// Transposition of positions 1 and 2, rate `d_n`.
    SwapTopTwo,
}

impl MoveKind {
    pub const ALL: [MoveKind; 4] = [
        MoveKind::TopToPenultimate,
        MoveKind::TopToBottom,
        MoveKind::BottomToTop,
        MoveKind::SwapTopTwo,
    ];

    pub fn index(self) -> usize {
        match self {
            MoveKind::TopToPenultimate => 0,
            MoveKind::TopToBottom => 1,
            MoveKind::BottomToTop => 2,
            MoveKind::SwapTopTwo => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            MoveKind::TopToPenultimate => "top-to-penultimate",
            MoveKind::TopToBottom => "top-to-bottom",
            MoveKind::BottomToTop => "bottom-to-top",
            MoveKind::SwapTopTwo => "swap-top-two",
        }
    }
}

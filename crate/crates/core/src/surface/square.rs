//! Sides and corners of the unit square.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    Bottom = 0,
    Right = 1,
    Top = 2,
    Left = 3,
}

impl Side {
    pub const ALL: [Side; 4] = [Side::Bottom, Side::Right, Side::Top, Side::Left];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Side {
        Side::ALL[i % 4]
    }

    pub fn opposite(self) -> Side {
        Side::from_index(self.index() + 2)
    }

    /// The side this one becomes after rotating the square a quarter turn counterclockwise.
    pub fn rotated_ccw(self) -> Side {
        Side::from_index(self.index() + 1)
    }

    pub fn is_vertical(self) -> bool {
        matches!(self, Side::Left | Side::Right)
    }

    /// Corner at edge parameter `t ∈ {0, 1}`; the parameter is `x` on horizontal
    /// sides and `y` on vertical ones.
    pub fn corner_at(self, t: u8) -> Corner {
        match (self, t) {
            (Side::Bottom, 0) | (Side::Left, 0) => Corner::BL,
            (Side::Bottom, _) | (Side::Right, 0) => Corner::BR,
            (Side::Right, _) | (Side::Top, 1) => Corner::TR,
            (Side::Top, _) | (Side::Left, _) => Corner::TL,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Corner {
    BL = 0,
    BR = 1,
    TR = 2,
    TL = 3,
}

impl Corner {
    pub const ALL: [Corner; 4] = [Corner::BL, Corner::BR, Corner::TR, Corner::TL];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Corner {
        Corner::ALL[i % 4]
    }

    /// Side through which the corner's sector is left when turning counterclockwise
    /// about the vertex.
    pub fn ccw_exit(self) -> Side {
        match self {
            Corner::BL => Side::Left,
            Corner::BR => Side::Bottom,
            Corner::TR => Side::Right,
            Corner::TL => Side::Top,
        }
    }

    /// Edge parameter of the corner along its counterclockwise exit side.
    pub fn param_on_exit(self) -> u8 {
        match self {
            Corner::BL => 0,
            Corner::BR => 1,
            Corner::TR => 1,
            Corner::TL => 0,
        }
    }

    /// Signs `(sx, sy)` of directions pointing into the square from this corner.
    pub fn inward(self) -> (i64, i64) {
        match self {
            Corner::BL => (1, 1),
            Corner::BR => (-1, 1),
            Corner::TR => (-1, -1),
            Corner::TL => (1, -1),
        }
    }

    pub fn coords(self) -> (i64, i64) {
        match self {
            Corner::BL => (0, 0),
            Corner::BR => (1, 0),
            Corner::TR => (1, 1),
            Corner::TL => (0, 1),
        }
    }

    pub fn of_inward(sx: i64, sy: i64) -> Corner {
        match (sx > 0, sy > 0) {
            (true, true) => Corner::BL,
            (false, true) => Corner::BR,
            (false, false) => Corner::TR,
            (true, false) => Corner::TL,
        }
    }

    pub fn half_turn(self) -> Corner {
        Corner::from_index(self.index() + 2)
    }
}

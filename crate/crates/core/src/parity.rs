use std::fmt;

use serde::{Deserialize, Serialize};

/// Parity restriction on an integer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Odd,
    Even,
    Any,
}

impl Parity {
    pub fn of(n: u64) -> Parity {
        if n % 2 == 1 {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    pub fn admits(self, n: u64) -> bool {
        match self {
            Parity::Any => true,
            p => Parity::of(n) == p,
        }
    }

    pub fn admits_i64(self, n: i64) -> bool {
        match self {
            Parity::Any => true,
            Parity::Odd => n.rem_euclid(2) == 1,
            Parity::Even => n.rem_euclid(2) == 0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Parity::Odd => "odd",
            Parity::Even => "even",
            Parity::Any => "any",
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Parity {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "odd" | "o" => Ok(Parity::Odd),
            "even" | "e" => Ok(Parity::Even),
            "any" | "*" => Ok(Parity::Any),
            other => Err(crate::Error::Parse(format!("unknown parity `{other}`"))),
        }
    }
}

/// Vertex kind on the parity tree: the denominator at that position is odd
/// (`O`) or even (`E`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Vertex {
    O,
    E,
}

impl Vertex {
    pub fn of_denominator(q: u64) -> Vertex {
        if q % 2 == 1 {
            Vertex::O
        } else {
            Vertex::E
        }
    }

    pub fn parity(self) -> Parity {
        match self {
            Vertex::O => Parity::Odd,
            Vertex::E => Parity::Even,
        }
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Vertex::O => f.write_str("O"),
            Vertex::E => f.write_str("E"),
        }
    }
}

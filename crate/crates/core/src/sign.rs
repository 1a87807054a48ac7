//! The four-valued sign scalar.
//!
//! A sign is best read as the set of signs of the terms that produced it:
//! `Zero` is the empty set, `Plus`/`Minus` are singletons and `Amb` holds both.
//! Addition is set union and multiplication multiplies terms pairwise, which
//! gives the usual qualitative rules: `+ + - = #`, `# * 0 = 0`, `# * x = #`
//! for nonzero `x`.

use std::fmt;
use std::ops::{Add, Mul, Neg};

/// A qualitative sign: `+`, `-`, `0`, or the ambiguous `#`.
///
/// The derived ordering `Zero < Plus < Minus < Amb` is the one used when
/// comparing serialized patterns (canonical forms, enumeration order).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum Sign {
    #[default]
    Zero,
    Plus,
    Minus,
    Amb,
}

impl Sign {
    /// The three proper signs in branching order.
    pub const PROPER: [Sign; 3] = [Sign::Zero, Sign::Plus, Sign::Minus];

    pub fn from_char(c: char) -> Option<Sign> {
        match c {
            '+' => Some(Sign::Plus),
            '-' => Some(Sign::Minus),
            '0' => Some(Sign::Zero),
            '#' => Some(Sign::Amb),
            _ => None,
        }
    }

    pub fn to_char(self) -> char {
        match self {
            Sign::Zero => '0',
            Sign::Plus => '+',
            Sign::Minus => '-',
            Sign::Amb => '#',
        }
    }

    /// `(has a positive term, has a negative term)`.
    #[inline]
    pub(crate) fn bits(self) -> (bool, bool) {
        match self {
            Sign::Zero => (false, false),
            Sign::Plus => (true, false),
            Sign::Minus => (false, true),
            Sign::Amb => (true, true),
        }
    }

    #[inline]
    pub(crate) fn from_bits(plus: bool, minus: bool) -> Sign {
        match (plus, minus) {
            (false, false) => Sign::Zero,
            (true, false) => Sign::Plus,
            (false, true) => Sign::Minus,
            (true, true) => Sign::Amb,
        }
    }

    pub fn is_zero(self) -> bool {
        self == Sign::Zero
    }

    pub fn is_nonzero(self) -> bool {
        self != Sign::Zero
    }

    pub fn is_proper(self) -> bool {
        self != Sign::Amb
    }

    /// Sign of an integer-like comparison result.
    pub fn of_ordering(ord: std::cmp::Ordering) -> Sign {
        match ord {
            std::cmp::Ordering::Less => Sign::Minus,
            std::cmp::Ordering::Equal => Sign::Zero,
            std::cmp::Ordering::Greater => Sign::Plus,
        }
    }
}

/// Qualitative sum. Commutative and associative with `Zero` as identity.
pub fn sign_add(a: Sign, b: Sign) -> Sign {
    let (ap, am) = a.bits();
    let (bp, bm) = b.bits();
    Sign::from_bits(ap || bp, am || bm)
}

/// Qualitative product. `Zero` annihilates everything, including `Amb`.
pub fn sign_mul(a: Sign, b: Sign) -> Sign {
    let (ap, am) = a.bits();
    let (bp, bm) = b.bits();
    Sign::from_bits((ap && bp) || (am && bm), (ap && bm) || (am && bp))
}

impl Add for Sign {
    type Output = Sign;
    fn add(self, rhs: Sign) -> Sign {
        sign_add(self, rhs)
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        sign_mul(self, rhs)
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
            s => s,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

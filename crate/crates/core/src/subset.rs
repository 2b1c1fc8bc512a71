//! Bitmask subsets of a small indexed ground set.

use std::fmt;
use std::ops::{BitAnd, BitOr, BitXor, Not, Sub};

use crate::error::{Error, Result};

/// Largest ground set representable in a `u64` mask.
pub const MAX_GROUND: usize = 64;

/// Largest ground for which operations enumerate the whole power set.
pub const POWER_SET_LIMIT: usize = 20;

/// The ground `{0, .., size-1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroundSet {
    size: u8,
}

impl GroundSet {
    pub fn new(size: usize) -> Result<Self> {
        if size == 0 || size > MAX_GROUND {
            return Err(Error::GroundSize {
                size,
                max: MAX_GROUND,
            });
        }
        Ok(GroundSet { size: size as u8 })
    }

    pub fn size(self) -> usize {
        self.size as usize
    }

    pub fn mask(self) -> u64 {
        if self.size as usize == MAX_GROUND {
            u64::MAX
        } else {
            (1u64 << self.size) - 1
        }
    }

    pub fn empty(self) -> Subset {
        Subset::raw(self, 0)
    }

    pub fn full(self) -> Subset {
        Subset::raw(self, self.mask())
    }

    pub fn singleton(self, x: usize) -> Result<Subset> {
        Subset::from_indices(self, &[x])
    }

    pub fn check_same(self, other: GroundSet) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::GroundMismatch {
                left: self.size(),
                right: other.size(),
            })
        }
    }

    /// Refuses grounds whose power set is too large to walk.
    pub fn check_enumerable(self) -> Result<()> {
        if self.size() > POWER_SET_LIMIT {
            return Err(Error::CapExceeded {
                what: "power set enumeration",
                size: self.size(),
                limit: POWER_SET_LIMIT,
            });
        }
        Ok(())
    }

    /// All subsets in ascending mask order.
    pub fn subsets(self) -> impl Iterator<Item = Subset> {
        debug_assert!(self.size() <= POWER_SET_LIMIT);
        (0..=self.mask()).map(move |b| Subset::raw(self, b))
    }

    pub fn elements(self) -> std::ops::Range<usize> {
        0..self.size()
    }
}

/// A subset stored as a bitmask; ordered by mask value.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Subset {
    bits: u64,
    ground: GroundSet,
}

impl Subset {
    pub(crate) fn raw(ground: GroundSet, bits: u64) -> Self {
        debug_assert_eq!(bits & !ground.mask(), 0);
        Subset { bits, ground }
    }

    pub fn from_bits(ground: GroundSet, bits: u64) -> Result<Self> {
        if bits & !ground.mask() != 0 {
            let element = 63 - (bits & !ground.mask()).leading_zeros() as usize;
            return Err(Error::ElementOutOfRange {
                element,
                size: ground.size(),
            });
        }
        Ok(Subset { bits, ground })
    }

    pub fn from_indices(ground: GroundSet, indices: &[usize]) -> Result<Self> {
        let mut bits = 0u64;
        for &i in indices {
            if i >= ground.size() {
                return Err(Error::ElementOutOfRange {
                    element: i,
                    size: ground.size(),
                });
            }
            bits |= 1 << i;
        }
        Ok(Subset { bits, ground })
    }

    pub fn bits(self) -> u64 {
        self.bits
    }

    pub fn ground(self) -> GroundSet {
        self.ground
    }

    pub fn len(self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.bits == 0
    }

    pub fn is_full(self) -> bool {
        self.bits == self.ground.mask()
    }

    pub fn contains(self, x: usize) -> bool {
        x < 64 && self.bits >> x & 1 == 1
    }

    pub fn is_subset(self, other: Subset) -> bool {
        self.bits & !other.bits == 0
    }

    pub fn is_superset(self, other: Subset) -> bool {
        other.is_subset(self)
    }

    pub fn intersects(self, other: Subset) -> bool {
        self.bits & other.bits != 0
    }

    pub fn complement(self) -> Subset {
        Subset::raw(self.ground, !self.bits & self.ground.mask())
    }

    pub fn with(self, x: usize) -> Subset {
        Subset::raw(self.ground, self.bits | 1 << x)
    }

    /// Symmetric difference with a ground check.
    pub fn sym_diff(self, other: Subset) -> Result<Subset> {
        self.ground.check_same(other.ground)?;
        Ok(self ^ other)
    }

    pub fn indices(self) -> Indices {
        Indices { bits: self.bits }
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.indices().collect()
    }

    /// Lowest element, if any.
    pub fn first(self) -> Option<usize> {
        (self.bits != 0).then(|| self.bits.trailing_zeros() as usize)
    }

    /// All subsets of `self`, ascending.
    pub fn subsets(self) -> impl Iterator<Item = Subset> {
        let (g, m) = (self.ground, self.bits);
        let mut next = Some(0u64);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == m { None } else { Some((cur.wrapping_sub(m)) & m) };
            Some(Subset::raw(g, cur))
        })
    }
}

pub struct Indices {
    bits: u64,
}

impl Iterator for Indices {
    type Item = usize;
    fn next(&mut self) -> Option<usize> {
        if self.bits == 0 {
            return None;
        }
        let i = self.bits.trailing_zeros() as usize;
        self.bits &= self.bits - 1;
        Some(i)
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subset {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.bits, self.ground).cmp(&(other.bits, other.ground))
    }
}

macro_rules! binop {
    ($tr:ident, $f:ident, $op:tt) => {
        impl $tr for Subset {
            type Output = Subset;
            fn $f(self, rhs: Subset) -> Subset {
                debug_assert_eq!(self.ground, rhs.ground);
                Subset::raw(self.ground, self.bits $op rhs.bits)
            }
        }
    };
}

binop!(BitOr, bitor, |);
binop!(BitAnd, bitand, &);
binop!(BitXor, bitxor, ^);

impl Sub for Subset {
    type Output = Subset;
    fn sub(self, rhs: Subset) -> Subset {
        debug_assert_eq!(self.ground, rhs.ground);
        Subset::raw(self.ground, self.bits & !rhs.bits)
    }
}

impl Not for Subset {
    type Output = Subset;
    fn not(self) -> Subset {
        self.complement()
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, i) in self.indices().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
        }
        f.write_str("}")
    }
}

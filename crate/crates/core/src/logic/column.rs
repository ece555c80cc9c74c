use std::ops::{BitAnd, BitOr, BitXor, Not};

/// The truth column of a formula: one bit per world, in world order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Column {
    words: Vec<u64>,
    len: usize,
}

impl Column {
    pub fn constant(len: usize, value: bool) -> Self {
        let fill = if value { u64::MAX } else { 0 };
        let mut c = Column {
            words: vec![fill; len.div_ceil(64)],
            len,
        };
        c.mask_tail();
        c
    }

    pub fn from_fn<F: FnMut(usize) -> bool>(len: usize, mut f: F) -> Self {
        let mut c = Column::constant(len, false);
        for i in 0..len {
            if f(i) {
                c.words[i / 64] |= 1 << (i % 64);
            }
        }
        c
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn none(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn all(&self) -> bool {
        self.count_ones() == self.len
    }

    /// `self ⊆ other`: every world true here is true there.
    pub fn is_subset(&self, other: &Column) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    /// Indices of true worlds, ascending.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }

    /// Applies a binary truth function word-by-word.
    pub fn zip_with(&self, other: &Column, f: impl Fn(u64, u64) -> u64) -> Column {
        debug_assert_eq!(self.len, other.len);
        let mut c = Column {
            words: self.words.iter().zip(&other.words).map(|(&a, &b)| f(a, b)).collect(),
            len: self.len,
        };
        c.mask_tail();
        c
    }

    fn mask_tail(&mut self) {
        let rem = self.len % 64;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }
}

impl Not for &Column {
    type Output = Column;
    fn not(self) -> Column {
        let mut c = Column {
            words: self.words.iter().map(|w| !w).collect(),
            len: self.len,
        };
        c.mask_tail();
        c
    }
}

impl BitAnd for &Column {
    type Output = Column;
    fn bitand(self, rhs: &Column) -> Column {
        self.zip_with(rhs, |a, b| a & b)
    }
}

impl BitOr for &Column {
    type Output = Column;
    fn bitor(self, rhs: &Column) -> Column {
        self.zip_with(rhs, |a, b| a | b)
    }
}

impl BitXor for &Column {
    type Output = Column;
    fn bitxor(self, rhs: &Column) -> Column {
        self.zip_with(rhs, |a, b| a ^ b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tail_bits_stay_clear() {
        let c = Column::constant(70, true);
        assert_eq!(c.count_ones(), 70);
        assert!((!&c).none());
        let d = Column::from_fn(70, |i| i % 3 == 0);
        assert_eq!((!&d).count_ones(), 70 - 24);
        assert!(d.is_subset(&c));
        assert!(!c.is_subset(&d));
    }
}

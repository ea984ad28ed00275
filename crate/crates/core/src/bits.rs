/// Fixed-length dense bitmap.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub(crate) struct BitSet {
    words: Vec<u64>,
    len: usize,
}

impl BitSet {
    pub fn filled(len: usize) -> Self {
        let mut bits = Self {
            words: vec![u64::MAX; len.div_ceil(64)],
            len,
        };
        bits.trim();
        bits
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        i < self.len && self.words[i / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / 64] |= 1 << (i % 64);
    }

    #[inline]
    pub fn clear(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / 64] &= !(1 << (i % 64));
    }

    /// Extends to `len` bits, new bits set.
    pub fn grow_filled(&mut self, len: usize) {
        if len <= self.len {
            return;
        }
        let old = self.len;
        self.words.resize(len.div_ceil(64), u64::MAX);
        if old % 64 != 0 {
            self.words[old / 64] |= u64::MAX << (old % 64);
        }
        self.len = len;
        self.trim();
    }

    fn trim(&mut self) {
        if self.len % 64 != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << (self.len % 64)) - 1;
            }
        }
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(w, &word)| {
            let mut bits = word;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let tz = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(w * 64 + tz)
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::BitSet;

    #[test]
    fn grow_sets_new_bits_only() {
        let mut b = BitSet::filled(70);
        for i in (0..70).filter(|&i| i != 3 && i != 69) {
            b.clear(i);
        }
        b.grow_filled(130);
        assert!(b.get(3) && !b.get(4) && b.get(69) && b.get(70) && b.get(129));
        assert!(!b.get(130));
        assert_eq!(b.iter_ones().count(), 2 + 60);
    }

    #[test]
    fn filled_is_trimmed() {
        let b = BitSet::filled(65);
        assert_eq!(b.iter_ones().collect::<Vec<_>>().len(), 65);
        let mut c = b.clone();
        c.clear(64);
        assert_eq!(c.iter_ones().last(), Some(63));
    }
}

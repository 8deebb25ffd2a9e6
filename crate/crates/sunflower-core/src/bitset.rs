//! Fixed-width bit rows backing set-family members. Width is fixed per
//! family (one row layout for the whole universe), so intersection sizes
//! and subset tests are word-parallel AND/popcount loops.

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BitRow {
    words: Vec<u64>,
}

impl BitRow {
    pub fn zeros(n_bits: u32) -> Self {
        BitRow { words: vec![0; (n_bits as usize + 63) / 64] }
    }

    pub fn from_elements(n_bits: u32, elems: &[u32]) -> Self {
        let mut row = BitRow::zeros(n_bits);
        for &e in elems {
            row.set(e);
        }
        row
    }

    #[inline]
    pub fn set(&mut self, idx: u32) {
        self.words[(idx / 64) as usize] |= 1u64 << (idx % 64);
    }

    #[inline]
    pub fn test(&self, idx: u32) -> bool {
        match self.words.get((idx / 64) as usize) {
            Some(w) => w & (1u64 << (idx % 64)) != 0,
            None => false,
        }
    }

    #[inline]
    pub fn intersection_size(&self, other: &BitRow) -> u32 {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum()
    }

    #[inline]
    pub fn is_subset_of(&self, other: &BitRow) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn count_ones(&self) -> u32 {
        self.words.iter().map(|w| w.count_ones()).sum()
    }

    pub fn intersection(&self, other: &BitRow) -> BitRow {
        BitRow {
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
        }
    }

    pub fn union(&self, other: &BitRow) -> BitRow {
        BitRow {
            words: self.words.iter().zip(&other.words).map(|(a, b)| a | b).collect(),
        }
    }

    /// Ascending element ids.
    pub fn iter_ones(&self) -> impl Iterator<Item = u32> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut bits = w;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let tz = bits.trailing_zeros();
                bits &= bits - 1;
                Some(wi as u32 * 64 + tz)
            })
        })
    }
}

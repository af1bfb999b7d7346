use std::cmp::Ordering;
use std::fmt;

/// Generator of the free algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    A,
    AStar,
}

impl Letter {
    pub fn dagger(self) -> Letter {
        match self {
            Letter::A => Letter::AStar,
            Letter::AStar => Letter::A,
        }
    }
}

/// Maximum number of letters a [`Word`] can hold.
pub const MAX_WORD_LEN: usize = 64;

/// A word over `{A, A*}` packed into a bit set: bit `i` is set when letter
/// `i` (counted from the left) is `A*`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Word {
    bits: u64,
    len: u8,
}

fn mask(len: usize) -> u64 {
    if len >= 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

impl Word {
    /// The unit monomial.
    pub const EMPTY: Word = Word { bits: 0, len: 0 };

    pub fn from_letters(letters: &[Letter]) -> Option<Word> {
        if letters.len() > MAX_WORD_LEN {
            return None;
        }
        let mut bits = 0u64;
        for (i, l) in letters.iter().enumerate() {
            if *l == Letter::AStar {
                bits |= 1 << i;
            }
        }
        Some(Word {
            bits,
            len: letters.len() as u8,
        })
    }

    /// `l^n`; panics if `n` exceeds [`MAX_WORD_LEN`].
    pub fn power(l: Letter, n: usize) -> Word {
        assert!(n <= MAX_WORD_LEN, "word length {n} exceeds {MAX_WORD_LEN}");
        Word {
            bits: if l == Letter::AStar { mask(n) } else { 0 },
            len: n as u8,
        }
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn letter(&self, i: usize) -> Letter {
        assert!(i < self.len(), "letter index out of range");
        if self.bits >> i & 1 == 1 {
            Letter::AStar
        } else {
            Letter::A
        }
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        (0..self.len()).map(move |i| self.letter(i))
    }

    pub fn count(&self, l: Letter) -> usize {
        let stars = self.bits.count_ones() as usize;
        match l {
            Letter::AStar => stars,
            Letter::A => self.len() - stars,
        }
    }

    pub fn checked_concat(&self, other: &Word) -> Option<Word> {
        let len = self.len() + other.len();
        if len > MAX_WORD_LEN {
            return None;
        }
        let bits = if other.len == 0 {
            self.bits
        } else {
            self.bits | (other.bits << self.len)
        };
        Some(Word { bits, len: len as u8 })
    }

    /// Concatenation; panics if the result exceeds [`MAX_WORD_LEN`] letters.
    pub fn concat(&self, other: &Word) -> Word {
        self.checked_concat(other)
            .unwrap_or_else(|| panic!("word length exceeds {MAX_WORD_LEN}"))
    }

    /// Letters `start..end`.
    pub fn slice(&self, start: usize, end: usize) -> Word {
        assert!(start <= end && end <= self.len());
        Word {
            bits: (self.bits >> start) & mask(end - start),
            len: (end - start) as u8,
        }
    }

    /// Swaps `A` and `A*` in every position.
    pub fn dagger(&self) -> Word {
        Word {
            bits: !self.bits & mask(self.len()),
            len: self.len,
        }
    }

    /// Index of the first `A*`, if any.
    pub fn first_astar(&self) -> Option<usize> {
        if self.bits == 0 {
            None
        } else {
            Some(self.bits.trailing_zeros() as usize)
        }
    }

    /// Leftmost position `i` where letters `i..i+4` read `A A A A*`.
    pub fn find_reducible(&self) -> Option<usize> {
        let n = self.len();
        if n < 4 {
            return None;
        }
        // A* at position i+3 and A at i, i+1, i+2.
        let star = self.bits >> 3;
        let a = !self.bits;
        let hits = star & a & (a >> 1) & (a >> 2) & mask(n - 3);
        if hits == 0 {
            None
        } else {
            Some(hits.trailing_zeros() as usize)
        }
    }

    /// Termination measure: (length, sum over `A*` of the number of `A`s to its left).
    pub fn measure(&self) -> (usize, usize) {
        let mut a_seen = 0;
        let mut inversions = 0;
        for l in self.letters() {
            match l {
                Letter::A => a_seen += 1,
                Letter::AStar => inversions += a_seen,
            }
        }
        (self.len(), inversions)
    }
}

impl Ord for Word {
    /// Graded lexicographic order with `A < A*`.
    fn cmp(&self, other: &Self) -> Ordering {
        self.len
            .cmp(&other.len)
            .then_with(|| self.bits.reverse_bits().cmp(&other.bits.reverse_bits()))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    /// Runs are written with exponents, factors separated by spaces:
    /// `A^3 A* A`. The empty word prints as `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "1");
        }
        let mut i = 0;
        let mut first = true;
        while i < self.len() {
            let l = self.letter(i);
            let mut j = i;
            while j < self.len() && self.letter(j) == l {
                j += 1;
            }
            if !first {
                write!(f, " ")?;
            }
            first = false;
            let name = if l == Letter::A { "A" } else { "A*" };
            if j - i == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{}", j - i)?;
            }
            i = j;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

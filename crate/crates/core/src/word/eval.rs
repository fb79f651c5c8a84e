use super::Word;

/// The operations a word needs from a group.
pub trait Group {
    type Elem: Clone;

    fn identity(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;

    fn pow(&self, a: &Self::Elem, e: i64) -> Self::Elem {
        let mut base = if e < 0 { self.inv(a) } else { a.clone() };
        let mut n = e.unsigned_abs();
        let mut acc = self.identity();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            n >>= 1;
            if n > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }
}

impl Word {
    /// Substitute `tuple[i-1]` for `x_i` and multiply left to right.
    ///
    /// Panics if the tuple is shorter than the largest generator used.
    pub fn evaluate<G: Group>(&self, group: &G, tuple: &[G::Elem]) -> G::Elem {
        assert!(
            tuple.len() >= self.max_generator() as usize,
            "tuple of length {} for a word in {} variables",
            tuple.len(),
            self.max_generator()
        );
        let mut acc = group.identity();
        for l in self.letters() {
            let g = &tuple[l.generator as usize - 1];
            let factor = match l.exponent {
                1 => g.clone(),
                -1 => group.inv(g),
                e => group.pow(g, e),
            };
            acc = group.mul(&acc, &factor);
        }
        acc
    }
}

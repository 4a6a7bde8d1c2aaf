//! Permutations of `{0, .., m-1}` in one-line notation.

use crate::combinatorics::Partition;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn identity(m: usize) -> Self {
        Perm {
            images: (0..m).collect(),
        }
    }

    /// From one-line notation; panics if `images` is not a permutation.
    pub fn from_images(images: Vec<usize>) -> Self {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            assert!(i < images.len() && !seen[i], "not a permutation: {images:?}");
            seen[i] = true;
        }
        Perm { images }
    }

    /// The transposition of `a` and `b` in S_m.
    pub fn transposition(m: usize, a: usize, b: usize) -> Self {
        let mut images: Vec<usize> = (0..m).collect();
        images.swap(a, b);
        Perm { images }
    }

    /// The standard representative of a cycle type: cycles on consecutive
    /// points, in the order the parts are listed, e.g. (3,1) ↦ (0 1 2)(3).
    pub fn from_cycle_type(mu: &Partition) -> Self {
        let m = mu.size();
        let mut images = vec![0; m];
        let mut start = 0;
        for &len in mu.parts() {
            for i in 0..len {
                images[start + i] = start + (i + 1) % len;
            }
            start += len;
        }
        Perm { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Perm { images: inv }
    }

    pub fn cycle_type(&self) -> Partition {
        let m = self.images.len();
        let mut seen = vec![false; m];
        let mut parts = Vec::new();
        for s in 0..m {
            if seen[s] {
                continue;
            }
            let mut len = 0;
            let mut i = s;
            while !seen[i] {
                seen[i] = true;
                i = self.images[i];
                len += 1;
            }
            parts.push(len);
        }
        Partition::from_unsorted(parts)
    }

    /// +1 or -1.
    pub fn sign(&self) -> i32 {
        let ct = self.cycle_type();
        if (ct.size() - ct.len()).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }
}

/// Sign of the permutation that sorts `v` (distinct entries), together with
/// the sorted vector.
pub fn sort_with_sign<T: Ord + Clone>(v: &[T]) -> (Vec<T>, i32) {
    let mut w = v.to_vec();
    let mut sign = 1;
    // insertion sort; inputs are short
    for i in 1..w.len() {
        let mut j = i;
        while j > 0 && w[j - 1] > w[j] {
            w.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    (w, sign)
}

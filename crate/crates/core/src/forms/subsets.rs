use std::collections::HashMap;

/// The `p`-element subsets of `0..n` as bitmasks, in lexicographic order of
/// their sorted index lists. Position in this list is the basis index of
/// `dx^H` in the free module of p-forms.
#[derive(Clone, Debug)]
pub struct Subsets {
    masks: Vec<u64>,
    index: HashMap<u64, usize>,
}

impl Subsets {
    pub fn new(n: usize, p: usize) -> Self {
        assert!(n < 64, "too many variables");
        let mut masks = Vec::new();
        let mut cur = Vec::with_capacity(p);
        fn rec(start: usize, n: usize, p: usize, cur: &mut Vec<usize>, out: &mut Vec<u64>) {
            if cur.len() == p {
                out.push(cur.iter().fold(0u64, |m, &i| m | (1 << i)));
                return;
            }
            for i in start..n {
                cur.push(i);
                rec(i + 1, n, p, cur, out);
                cur.pop();
            }
        }
        rec(0, n, p, &mut cur, &mut masks);
        let index = masks.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        Subsets { masks, index }
    }

    pub fn len(&self) -> usize {
        self.masks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masks.is_empty()
    }

    pub fn masks(&self) -> &[u64] {
        &self.masks
    }

    pub fn index(&self, mask: u64) -> usize {
        self.index[&mask]
    }

    pub fn lists(&self) -> Vec<Vec<usize>> {
        self.masks.iter().map(|&m| bits(m)).collect()
    }
}

pub fn bits(mask: u64) -> Vec<usize> {
    (0..64).filter(|i| mask & (1 << i) != 0).collect()
}

/// Sign of `dx^A ^ dx^B` relative to `dx^(A u B)` for disjoint `A`, `B`:
/// true for minus.
pub fn wedge_sign(a: u64, b: u64) -> bool {
    let mut inversions = 0u32;
    for j in bits(b) {
        inversions += (a >> (j + 1)).count_ones();
    }
    inversions % 2 == 1
}

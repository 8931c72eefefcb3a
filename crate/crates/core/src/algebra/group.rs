/// Signed permutation of `n` variables: sends `x_i` to `x_{perm[i]}^{signs[i]}`.
///
/// Type-A elements have all signs `+1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GroupElement {
    perm: Vec<usize>,
    signs: Vec<i8>,
}

impl GroupElement {
    pub fn identity(n: usize) -> Self {
        GroupElement {
            perm: (0..n).collect(),
            signs: vec![1; n],
        }
    }

    pub fn new(perm: Vec<usize>, signs: Vec<i8>) -> Self {
        assert_eq!(perm.len(), signs.len());
        let mut seen = vec![false; perm.len()];
        for &p in &perm {
            assert!(p < perm.len() && !seen[p], "not a permutation");
            seen[p] = true;
        }
        assert!(signs.iter().all(|s| *s == 1 || *s == -1));
        GroupElement { perm, signs }
    }

    pub fn from_perm(perm: Vec<usize>) -> Self {
        let n = perm.len();
        Self::new(perm, vec![1; n])
    }

    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        let mut perm: Vec<usize> = (0..n).collect();
        perm.swap(i, j);
        Self::from_perm(perm)
    }

    /// Inverts the single variable `x_i`.
    pub fn inversion(n: usize, i: usize) -> Self {
        let mut g = Self::identity(n);
        g.signs[i] = -1;
        g
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.len(), other.len());
        let perm = other.perm.iter().map(|&j| self.perm[j]).collect();
        let signs = other
            .perm
            .iter()
            .zip(&other.signs)
            .map(|(&j, &s)| s * self.signs[j])
            .collect();
        GroupElement { perm, signs }
    }

    pub fn inverse(&self) -> Self {
        let n = self.len();
        let mut perm = vec![0; n];
        let mut signs = vec![1; n];
        for i in 0..n {
            perm[self.perm[i]] = i;
            signs[self.perm[i]] = self.signs[i];
        }
        GroupElement { perm, signs }
    }

    /// Sign of the underlying permutation.
    pub fn perm_sign(&self) -> i64 {
        let mut seen = vec![false; self.len()];
        let mut sign = 1;
        for i in 0..self.len() {
            if seen[i] {
                continue;
            }
            let mut j = i;
            let mut len = 0;
            while !seen[j] {
                seen[j] = true;
                j = self.perm[j];
                len += 1;
            }
            if len % 2 == 0 {
                sign = -sign;
            }
        }
        sign
    }

    pub fn act_exponent(&self, e: &[i32]) -> Vec<i32> {
        let mut out = vec![0; e.len()];
        for (i, &a) in e.iter().enumerate() {
            out[self.perm[i]] = a * self.signs[i] as i32;
        }
        out
    }

    /// All `n!` permutations, in lexicographic order.
    pub fn symmetric_group(n: usize) -> Vec<Self> {
        let mut out = Vec::new();
        let mut p: Vec<usize> = (0..n).collect();
        loop {
            out.push(Self::from_perm(p.clone()));
            // next lexicographic permutation
            let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| p[i] < p[i + 1]) else {
                break;
            };
            let j = (i + 1..n).rev().find(|&j| p[j] > p[i]).unwrap();
            p.swap(i, j);
            p[i + 1..].reverse();
        }
        out
    }

    /// All `2^n n!` signed permutations.
    pub fn hyperoctahedral_group(n: usize) -> Vec<Self> {
        let mut out = Vec::new();
        for p in Self::symmetric_group(n) {
            for mask in 0u32..(1 << n) {
                let signs = (0..n)
                    .map(|i| if mask >> i & 1 == 1 { -1 } else { 1 })
                    .collect();
                out.push(GroupElement {
                    perm: p.perm.clone(),
                    signs,
                });
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_orders() {
        assert_eq!(GroupElement::symmetric_group(4).len(), 24);
        assert_eq!(GroupElement::hyperoctahedral_group(3).len(), 48);
        assert_eq!(GroupElement::symmetric_group(0).len(), 1);
    }

    #[test]
    fn inverse_and_compose() {
        for g in GroupElement::hyperoctahedral_group(3) {
            assert_eq!(g.compose(&g.inverse()), GroupElement::identity(3));
        }
    }

    #[test]
    fn transposition_is_odd() {
        assert_eq!(GroupElement::transposition(3, 0, 2).perm_sign(), -1);
        assert_eq!(GroupElement::from_perm(vec![1, 2, 0]).perm_sign(), 1);
    }
}

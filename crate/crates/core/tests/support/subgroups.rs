//! Brute-force Hall numbers: count subgroups of a finite abelian p-group.

use std::collections::{BTreeSet, VecDeque};

/// Group `Π Z/p^{λ_i}` with elements indexed `0..order`.
pub struct PGroup {
    p: u64,
    moduli: Vec<u64>,
    order: usize,
    sum: Vec<Vec<usize>>,
}

impl PGroup {
    pub fn new(p: u64, lambda: &[u32]) -> Self {
        let moduli: Vec<u64> = lambda.iter().map(|&a| p.pow(a)).collect();
        let order = moduli.iter().product::<u64>() as usize;
        assert!(order <= 128, "group too large for the bitmask oracle");
        let mut g = PGroup {
            p,
            moduli,
            order,
            sum: Vec::new(),
        };
        g.sum = (0..order).map(|x| (0..order).map(|y| g.add(x, y)).collect()).collect();
        g
    }

    fn coords(&self, mut x: usize) -> Vec<u64> {
        self.moduli
            .iter()
            .map(|&m| {
                let c = x as u64 % m;
                x /= m as usize;
                c
            })
            .collect()
    }

    fn index(&self, c: &[u64]) -> usize {
        let mut x = 0u64;
        for (a, m) in c.iter().zip(&self.moduli).rev() {
            x = x * m + a % m;
        }
        x as usize
    }

    fn add(&self, x: usize, y: usize) -> usize {
        let (a, b) = (self.coords(x), self.coords(y));
        let s: Vec<u64> = a.iter().zip(&b).map(|(u, v)| u + v).collect();
        self.index(&s)
    }

    fn scale(&self, x: usize, k: u64) -> usize {
        let c: Vec<u64> = self.coords(x).iter().zip(&self.moduli).map(|(a, m)| (a * (k % m)) % m).collect();
        self.index(&c)
    }

    fn closure(&self, mut set: u128) -> u128 {
        loop {
            let mut next = set;
            for x in 0..self.order {
                if set >> x & 1 == 0 {
                    continue;
                }
                for y in 0..self.order {
                    if set >> y & 1 == 1 {
                        next |= 1 << self.sum[x][y];
                    }
                }
            }
            if next == set {
                return set;
            }
            set = next;
        }
    }

    /// Every subgroup as a bitmask.
    pub fn subgroups(&self) -> Vec<u128> {
        let trivial = 1u128;
        let mut seen = BTreeSet::from([trivial]);
        let mut queue = VecDeque::from([trivial]);
        while let Some(h) = queue.pop_front() {
            for g in 0..self.order {
                if h >> g & 1 == 1 {
                    continue;
                }
                let k = self.closure(h | 1 << g);
                if seen.insert(k) {
                    queue.push_back(k);
                }
            }
        }
        seen.into_iter().collect()
    }

    fn log_p(&self, mut m: usize) -> u32 {
        let mut k = 0;
        while m > 1 {
            assert_eq!(m as u64 % self.p, 0);
            m /= self.p as usize;
            k += 1;
        }
        k
    }

    /// Conjugate partition from the counts `log_p |X[p^k]|`, k = 0, 1, ….
    fn type_from_torsion(counts: &[u32]) -> Vec<u32> {
        let conj: Vec<u32> = counts.windows(2).map(|w| w[1] - w[0]).take_while(|&d| d > 0).collect();
        let len = conj.first().copied().unwrap_or(0) as usize;
        (0..len).map(|i| conj.iter().filter(|&&c| c as usize > i).count() as u32).collect()
    }

    /// Type of the subgroup `h` and of the quotient by it.
    pub fn type_and_cotype(&self, h: u128) -> (Vec<u32>, Vec<u32>) {
        let top = self.moduli.iter().map(|&m| self.log_p(m as usize)).max().unwrap_or(0);
        let size_h = h.count_ones() as usize;
        let mut sub = Vec::new();
        let mut quo = Vec::new();
        for k in 0..=top + 1 {
            let pk = self.p.pow(k);
            let in_h = (0..self.order).filter(|&x| h >> x & 1 == 1 && self.scale(x, pk) == 0).count();
            let pre = (0..self.order).filter(|&x| h >> self.scale(x, pk) & 1 == 1).count();
            sub.push(self.log_p(in_h));
            quo.push(self.log_p(pre / size_h));
        }
        (Self::type_from_torsion(&sub), Self::type_from_torsion(&quo))
    }
}

/// Number of subgroups `N ≤ G_λ` of type `ν` with `G_λ / N` of type `μ`.
pub fn hall_number(p: u64, lambda: &[u32], mu: &[u32], nu: &[u32]) -> u64 {
    let g = PGroup::new(p, lambda);
    g.subgroups()
        .into_iter()
        .filter(|&h| {
            let (t, c) = g.type_and_cotype(h);
            t == nu && c == mu
        })
        .count() as u64
}

/// Counts for every `(μ, ν)` at once, keyed by `(cotype, type)`.
pub fn hall_numbers(p: u64, lambda: &[u32]) -> std::collections::BTreeMap<(Vec<u32>, Vec<u32>), u64> {
    let g = PGroup::new(p, lambda);
    let mut out = std::collections::BTreeMap::new();
    for h in g.subgroups() {
        let (t, c) = g.type_and_cotype(h);
        *out.entry((c, t)).or_insert(0) += 1;
    }
    out
}

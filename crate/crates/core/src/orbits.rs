//! Orbit partitions of finite sets under a group given by generators.

/// Disjoint-set forest with path halving and union by size.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
    sets: usize,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
            sets: n,
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        self.sets -= 1;
        true
    }

    pub fn set_count(&self) -> usize {
        self.sets
    }
}

/// Orbit partition of `0..size` under the group generated by `generators`,
/// each given as a permutation in image form.
///
/// Returns one orbit id per element; ids are numbered by first occurrence.
pub fn orbit_ids(size: usize, generators: &[Vec<usize>]) -> Vec<usize> {
    let mut uf = UnionFind::new(size);
    for g in generators {
        debug_assert_eq!(g.len(), size);
        for (x, &y) in g.iter().enumerate() {
            uf.union(x, y);
        }
    }
    let mut ids = vec![usize::MAX; size];
    let mut root_id = vec![usize::MAX; size];
    let mut next = 0;
    for x in 0..size {
        let r = uf.find(x);
        if root_id[r] == usize::MAX {
            root_id[r] = next;
            next += 1;
        }
        ids[x] = root_id[r];
    }
    ids
}

pub fn orbit_count(ids: &[usize]) -> usize {
    ids.iter().copied().max().map_or(0, |m| m + 1)
}

/// Binomial coefficients `C(a, b)` for `a ≤ rows`, `b ≤ cols`, saturating.
pub(crate) struct BinomialTable {
    table: Vec<Vec<u64>>,
}

impl BinomialTable {
    pub fn new(rows: usize, cols: usize) -> Self {
        let mut table = vec![vec![0u64; cols + 1]; rows + 1];
        for a in 0..=rows {
            table[a][0] = 1;
            for b in 1..=cols.min(a) {
                table[a][b] = table[a - 1][b - 1].saturating_add(table[a - 1][b]);
            }
        }
        BinomialTable { table }
    }

    pub fn get(&self, a: usize, b: usize) -> u64 {
        self.table[a][b]
    }

    /// Colexicographic rank of a strictly increasing tuple.
    pub fn rank(&self, subset: &[usize]) -> usize {
        subset
            .iter()
            .enumerate()
            .map(|(i, &x)| self.table[x][i + 1] as usize)
            .sum()
    }
}

/// `C(n, r)` saturating at `u64::MAX`.
pub fn binomial(n: u64, r: u64) -> u64 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// Calls `visit` on every strictly increasing `r`-tuple from `0..n`, in
/// colexicographic order.
pub(crate) fn for_each_subset(n: usize, r: usize, mut visit: impl FnMut(&[usize])) {
    if r > n {
        return;
    }
    let mut cur: Vec<usize> = (0..r).collect();
    loop {
        visit(&cur);
        // Advance to the next tuple in colex order.
        let mut i = 0;
        while i < r
            && (if i + 1 < r {
                cur[i] + 1 == cur[i + 1]
            } else {
                cur[i] + 1 == n
            })
        {
            i += 1;
        }
        if i == r {
            return;
        }
        cur[i] += 1;
        for (j, slot) in cur.iter_mut().enumerate().take(i) {
            *slot = j;
        }
    }
}

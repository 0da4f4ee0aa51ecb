//! Sparse union-find over naturals; elements never mentioned are singletons.

use std::collections::HashMap;

#[derive(Debug, Default, Clone)]
pub struct UnionFind {
    parent: HashMap<u64, u64>,
    size: HashMap<u64, usize>,
}

impl UnionFind {
    pub fn new() -> UnionFind {
        UnionFind::default()
    }

    pub fn find(&mut self, x: u64) -> u64 {
        let mut root = x;
        while let Some(&p) = self.parent.get(&root) {
            if p == root {
                break;
            }
            root = p;
        }
        let mut cur = x;
        while cur != root {
            let next = self.parent[&cur];
            self.parent.insert(cur, root);
            cur = next;
        }
        root
    }

    pub fn union(&mut self, x: u64, y: u64) {
        let (mut rx, mut ry) = (self.find(x), self.find(y));
        if rx == ry {
            return;
        }
        let sx = *self.size.get(&rx).unwrap_or(&1);
        let sy = *self.size.get(&ry).unwrap_or(&1);
        if sx < sy {
            std::mem::swap(&mut rx, &mut ry);
        }
        self.parent.insert(rx, rx);
        self.parent.insert(ry, rx);
        self.size.insert(rx, sx + sy);
    }

    /// Freezes into a read-only representative map.
    pub fn freeze(mut self) -> FrozenPartition {
        let keys: Vec<u64> = self.parent.keys().copied().collect();
        let root = keys.into_iter().map(|k| (k, self.find(k))).collect();
        FrozenPartition { root }
    }
}

/// Immutable result of a union-find run; safe to share between threads.
#[derive(Debug, Default, Clone)]
pub struct FrozenPartition {
    root: HashMap<u64, u64>,
}

impl FrozenPartition {
    pub fn representative(&self, x: u64) -> u64 {
        *self.root.get(&x).unwrap_or(&x)
    }

    pub fn same(&self, x: u64, y: u64) -> bool {
        x == y || self.representative(x) == self.representative(y)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn merges_transitively() {
        let mut uf = UnionFind::new();
        uf.union(1, 5);
        uf.union(5, 9);
        uf.union(100, 200);
        let p = uf.freeze();
        assert!(p.same(1, 9));
        assert!(p.same(200, 100));
        assert!(!p.same(1, 100));
        assert!(!p.same(2, 3));
        assert!(p.same(7, 7));
    }

    #[test]
    fn long_chains() {
        let mut uf = UnionFind::new();
        for i in 0..10_000 {
            uf.union(i, i + 1);
        }
        assert_eq!(uf.find(0), uf.find(10_000));
    }
}

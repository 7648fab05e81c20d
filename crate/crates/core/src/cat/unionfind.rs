use alloc::vec::Vec;

/// Disjoint sets whose representative is always the least member.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    /// Returns true when two classes were merged.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }

    /// Class index of every element, classes numbered by increasing
    /// representative.
    pub fn labels(&mut self) -> (usize, Vec<usize>) {
        let n = self.parent.len();
        let mut class_of_root = alloc::vec![usize::MAX; n];
        let mut count = 0;
        let mut labels = Vec::with_capacity(n);
        for x in 0..n {
            let r = self.find(x);
            if class_of_root[r] == usize::MAX {
                class_of_root[r] = count;
                count += 1;
            }
            labels.push(class_of_root[r]);
        }
        (count, labels)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn least_representative() {
        let mut uf = UnionFind::new(5);
        uf.union(4, 2);
        uf.union(2, 3);
        assert_eq!(uf.find(4), 2);
        assert!(!uf.union(3, 4));
        uf.union(3, 0);
        assert_eq!(uf.find(4), 0);
        assert_eq!(uf.labels(), (2, alloc::vec![0, 1, 0, 0, 0]));
    }
}

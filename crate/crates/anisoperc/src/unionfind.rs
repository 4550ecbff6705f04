//! Small union-find used by the component computations.

use std::collections::{BTreeSet, HashMap};

use crate::lattice::Site;

pub(crate) struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(len: usize) -> Self {
        UnionFind {
            parent: (0..len).collect(),
            size: vec![1; len],
        }
    }

    pub(crate) fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            self.parent[root] = self.parent[self.parent[root]];
            root = self.parent[root];
        }
        root
    }

    pub(crate) fn union(&mut self, x: usize, y: usize) {
        let mut xr = self.find(x);
        let mut yr = self.find(y);
        if xr == yr {
            return;
        }
        if self.size[xr] < self.size[yr] {
            std::mem::swap(&mut xr, &mut yr);
        }
        self.parent[yr] = xr;
        self.size[xr] += self.size[yr];
    }
}

/// Partition `sites` into maximal classes under the relation
/// `x ~ y iff x - y ∈ offsets`. Classes are returned sorted by their
/// row-major minimum so the ordering is deterministic.
pub(crate) fn components_by_offsets(sites: &[Site], offsets: &[(i64, i64)]) -> Vec<BTreeSet<Site>> {
    let index: HashMap<Site, usize> = sites.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let mut uf = UnionFind::new(sites.len());
    for (i, &s) in sites.iter().enumerate() {
        for &(dm, dn) in offsets {
            if let Some(&j) = index.get(&s.translate(dm, dn)) {
                uf.union(i, j);
            }
        }
    }
    let mut groups: HashMap<usize, BTreeSet<Site>> = HashMap::new();
    for (i, &s) in sites.iter().enumerate() {
        groups.entry(uf.find(i)).or_default().insert(s);
    }
    let mut out: Vec<BTreeSet<Site>> = groups.into_values().collect();
    out.sort_by_key(|set| *set.iter().next().expect("nonempty component"));
    out
}

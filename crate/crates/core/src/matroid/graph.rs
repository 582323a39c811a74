//! Graph structures behind the graphic matroid.

/// Union–find with union by size and no path compression, so every union can
/// be undone in LIFO order.
#[derive(Debug, Clone)]
pub struct RollbackDsu {
    parent: Vec<usize>,
    size: Vec<usize>,
    history: Vec<Option<(usize, usize)>>,
}

impl RollbackDsu {
    pub fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            size: vec![1; n],
            history: Vec::new(),
        }
    }

    pub fn find(&self, mut x: usize) -> usize {
        while self.parent[x] != x {
            x = self.parent[x];
        }
        x
    }

    pub fn connected(&self, a: usize, b: usize) -> bool {
        self.find(a) == self.find(b)
    }

    /// Joins the classes of `a` and `b`; returns false if they already coincide.
    /// A history entry is pushed either way so `rollback` stays aligned.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            self.history.push(None);
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        self.history.push(Some((ra, rb)));
        true
    }

    pub fn checkpoint(&self) -> usize {
        self.history.len()
    }

    pub fn rollback(&mut self, checkpoint: usize) {
        while self.history.len() > checkpoint {
            if let Some((ra, rb)) = self.history.pop().unwrap() {
                self.parent[rb] = rb;
                self.size[ra] -= self.size[rb];
            }
        }
    }
}

/// Rooted spanning forest of an acyclic edge set, for fundamental-cycle queries.
#[derive(Debug, Clone)]
pub struct ForestIndex {
    component: Vec<usize>,
    parent: Vec<usize>,
    /// Label of the edge joining a vertex to its parent.
    parent_edge: Vec<usize>,
    depth: Vec<usize>,
}

const NONE: usize = usize::MAX;

impl ForestIndex {
    /// `edges` pairs each edge label with its endpoints; the edges must form a forest.
    pub fn new(vertices: usize, edges: impl IntoIterator<Item = (usize, (usize, usize))>) -> Self {
        let mut adjacency: Vec<Vec<(usize, usize)>> = vec![Vec::new(); vertices];
        for (label, (u, v)) in edges {
            adjacency[u].push((v, label));
            adjacency[v].push((u, label));
        }
        let mut index = Self {
            component: vec![NONE; vertices],
            parent: vec![NONE; vertices],
            parent_edge: vec![NONE; vertices],
            depth: vec![0; vertices],
        };
        let mut stack = Vec::new();
        for root in 0..vertices {
            if index.component[root] != NONE || adjacency[root].is_empty() {
                continue;
            }
            index.component[root] = root;
            stack.push(root);
            while let Some(u) = stack.pop() {
                for &(v, label) in &adjacency[u] {
                    if index.component[v] == NONE {
                        index.component[v] = root;
                        index.parent[v] = u;
                        index.parent_edge[v] = label;
                        index.depth[v] = index.depth[u] + 1;
                        stack.push(v);
                    }
                }
            }
        }
        index
    }

    pub fn connected(&self, a: usize, b: usize) -> bool {
        a == b || (self.component[a] != NONE && self.component[a] == self.component[b])
    }

    /// Edge labels on the forest path between `a` and `b` (which must be connected).
    pub fn path(&self, mut a: usize, mut b: usize) -> Vec<usize> {
        let mut edges = Vec::new();
        while self.depth[a] > self.depth[b] {
            edges.push(self.parent_edge[a]);
            a = self.parent[a];
        }
        while self.depth[b] > self.depth[a] {
            edges.push(self.parent_edge[b]);
            b = self.parent[b];
        }
        while a != b {
            edges.push(self.parent_edge[a]);
            edges.push(self.parent_edge[b]);
            a = self.parent[a];
            b = self.parent[b];
        }
        edges
    }
}

use std::cmp::Ordering;
use std::fmt;

/// Rooted unlabelled tree whose internal vertices have between 2 and `q`
/// children. Children are kept sorted, so structurally equal trees compare
/// equal regardless of the order they were built in.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QTree {
    leaves: usize,
    children: Vec<QTree>,
}

impl Ord for QTree {
    fn cmp(&self, other: &Self) -> Ordering {
        self.leaves.cmp(&other.leaves).then_with(|| self.children.cmp(&other.children))
    }
}

impl PartialOrd for QTree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl QTree {
    pub fn leaf() -> Self {
        QTree { leaves: 1, children: Vec::new() }
    }

    /// Internal vertex over the given subtrees. Panics on a single child.
    pub fn node(mut children: Vec<QTree>) -> Self {
        assert!(children.len() != 1, "a q-tree vertex cannot have exactly one child");
        if children.is_empty() {
            return Self::leaf();
        }
        children.sort();
        QTree { leaves: children.iter().map(|c| c.leaves).sum(), children }
    }

    pub fn leaf_count(&self) -> usize {
        self.leaves
    }

    pub fn children(&self) -> &[QTree] {
        &self.children
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    /// Largest out-degree in the tree.
    pub fn max_degree(&self) -> usize {
        self.children.iter().map(QTree::max_degree).max().unwrap_or(0).max(self.children.len())
    }

    pub fn vertex_count(&self) -> usize {
        1 + self.children.iter().map(QTree::vertex_count).sum::<usize>()
    }

    /// Visit every vertex with its depth.
    pub fn walk(&self, visit: &mut impl FnMut(&QTree, usize)) {
        fn go(t: &QTree, depth: usize, visit: &mut impl FnMut(&QTree, usize)) {
            visit(t, depth);
            for c in &t.children {
                go(c, depth + 1, visit);
            }
        }
        go(self, 0, visit);
    }

    /// Children grouped into runs of identical subtrees: `(subtree, multiplicity)`.
    pub fn child_multiplicities(&self) -> Vec<(&QTree, usize)> {
        let mut runs: Vec<(&QTree, usize)> = Vec::new();
        for c in &self.children {
            match runs.last_mut() {
                Some((t, m)) if *t == c => *m += 1,
                _ => runs.push((c, 1)),
            }
        }
        runs
    }
}

/// Bracket notation: `.` for a leaf, `[..]` around the children of a vertex.
impl fmt::Display for QTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_leaf() {
            return write!(f, ".");
        }
        write!(f, "[")?;
        for c in &self.children {
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for QTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QTree({self})")
    }
}

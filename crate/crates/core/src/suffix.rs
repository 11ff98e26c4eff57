//! Suffix-tree based Lyndon membership test.
//!
//! A word `sigma` of length `n` is Lyndon iff, in the suffix tree of
//! `sigma sigma $` with the sentinel ordered below every alphabet symbol, the
//! minimal root-to-leaf word among the suffixes of length at least `n+2` is
//! `sigma sigma $` itself. The tree is built online (Ukkonen) with
//! path-compressed edges and ordered child maps.

use std::collections::BTreeMap;
use std::fmt;

use crate::words::{Symbol, Word};

const OPEN: usize = usize::MAX;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SuffixTreeError {
    EmptyText,
    /// The final symbol occurs before the end, or the text does not end with
    /// a unique sentinel.
    SentinelRepeated {
        position: usize,
    },
}

impl fmt::Display for SuffixTreeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SuffixTreeError::EmptyText => write!(f, "cannot build a suffix tree of empty text"),
            SuffixTreeError::SentinelRepeated { position } => {
                write!(f, "sentinel symbol repeated at position {position}")
            }
        }
    }
}

impl std::error::Error for SuffixTreeError {}

#[derive(Debug, Clone)]
struct Node {
    /// Edge label from the parent is `text[start..end]`; the root has an
    /// empty label.
    start: usize,
    end: usize,
    children: BTreeMap<Symbol, usize>,
    link: usize,
    /// For leaves, the 0-based start index of the suffix they spell.
    suffix_start: Option<usize>,
}

impl Node {
    fn new(start: usize, end: usize) -> Self {
        Node {
            start,
            end,
            children: BTreeMap::new(),
            link: 0,
            suffix_start: None,
        }
    }
}

/// A total order on the symbols appearing in a tree, given as a permutation.
#[derive(Debug, Clone)]
pub struct SymbolOrder {
    rank: BTreeMap<Symbol, usize>,
}

impl SymbolOrder {
    /// Order given by an explicit sequence, smallest first. For example
    /// `[1, 0, 2]` declares `1 < 0 < 2`.
    pub fn from_sequence(symbols: &[Symbol]) -> Self {
        let rank = symbols.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        SymbolOrder { rank }
    }

    /// The order `$ < 0 < 1 < ... < q-1` with the sentinel represented as the
    /// symbol value `q`. This is the order the membership test requires.
    pub fn sentinel_minimal(q: u32) -> Self {
        let mut seq = vec![q];
        seq.extend(0..q);
        SymbolOrder::from_sequence(&seq)
    }

    pub fn rank(&self, s: Symbol) -> usize {
        *self
            .rank
            .get(&s)
            .unwrap_or_else(|| panic!("symbol {s} not covered by the order"))
    }
}

/// Suffix tree over `Sigma ∪ {$}` with path-compressed edges.
#[derive(Debug, Clone)]
pub struct SuffixTree {
    text: Vec<Symbol>,
    nodes: Vec<Node>,
}

impl SuffixTree {
    /// Builds the suffix tree of `text`, which must end with a sentinel
    /// symbol that occurs nowhere else.
    pub fn build(text: Vec<Symbol>) -> Result<SuffixTree, SuffixTreeError> {
        if text.is_empty() {
            return Err(SuffixTreeError::EmptyText);
        }
        let sentinel = *text.last().unwrap();
        if let Some(position) = text[..text.len() - 1].iter().position(|&s| s == sentinel) {
            return Err(SuffixTreeError::SentinelRepeated { position });
        }
        let mut tree = SuffixTree {
            text,
            nodes: vec![Node::new(0, 0)],
        };
        tree.construct();
        tree.assign_suffix_starts();
        Ok(tree)
    }

    /// Online construction: one phase per text position.
    fn construct(&mut self) {
        let n = self.text.len();
        let mut active_node = 0usize;
        let mut active_edge = 0usize; // index into text of the active edge's first symbol
        let mut active_len = 0usize;
        let mut remaining = 0usize;

        for pos in 0..n {
            let c = self.text[pos];
            remaining += 1;
            let mut last_new: Option<usize> = None;

            while remaining > 0 {
                if active_len == 0 {
                    active_edge = pos;
                }
                let edge_sym = self.text[active_edge];
                match self.nodes[active_node].children.get(&edge_sym).copied() {
                    None => {
                        let leaf = self.push_node(Node::new(pos, OPEN));
                        self.nodes[active_node].children.insert(edge_sym, leaf);
                        if let Some(internal) = last_new.take() {
                            self.nodes[internal].link = active_node;
                        }
                    }
                    Some(next) => {
                        let edge_len = self.edge_length(next, pos);
                        if active_len >= edge_len {
                            // walk down and retry from the child
                            active_edge += edge_len;
                            active_len -= edge_len;
                            active_node = next;
                            continue;
                        }
                        if self.text[self.nodes[next].start + active_len] == c {
                            // the suffix is already present implicitly
                            if active_node != 0 {
                                if let Some(internal) = last_new.take() {
                                    self.nodes[internal].link = active_node;
                                }
                            }
                            active_len += 1;
                            break;
                        }
                        // split the edge and hang a new leaf off the split node
                        let split_start = self.nodes[next].start;
                        let split =
                            self.push_node(Node::new(split_start, split_start + active_len));
                        self.nodes[active_node].children.insert(edge_sym, split);
                        let leaf = self.push_node(Node::new(pos, OPEN));
                        self.nodes[split].children.insert(c, leaf);
                        self.nodes[next].start += active_len;
                        let next_sym = self.text[self.nodes[next].start];
                        self.nodes[split].children.insert(next_sym, next);
                        if let Some(internal) = last_new.take() {
                            self.nodes[internal].link = split;
                        }
                        last_new = Some(split);
                    }
                }
                remaining -= 1;
                if active_node == 0 && active_len > 0 {
                    active_len -= 1;
                    active_edge = pos - remaining + 1;
                } else if active_node != 0 {
                    active_node = self.nodes[active_node].link;
                }
            }
        }
        // close the still-open leaf edges
        let end = self.text.len();
        for node in &mut self.nodes {
            if node.end == OPEN {
                node.end = end;
            }
        }
    }

    fn push_node(&mut self, node: Node) -> usize {
        self.nodes.push(node);
        self.nodes.len() - 1
    }

    fn edge_length(&self, node: usize, pos: usize) -> usize {
        let n = &self.nodes[node];
        n.end.min(pos + 1) - n.start
    }

    fn assign_suffix_starts(&mut self) {
        let mut stack = vec![(0usize, 0usize)]; // (node, string depth)
        while let Some((idx, depth)) = stack.pop() {
            let node = &self.nodes[idx];
            let depth = depth + (node.end - node.start);
            if node.children.is_empty() {
                let start = self.text.len() - depth;
                self.nodes[idx].suffix_start = Some(start);
            } else {
                let children: Vec<usize> = node.children.values().copied().collect();
                for child in children {
                    stack.push((child, depth));
                }
            }
        }
    }

    pub fn text(&self) -> &[Symbol] {
        &self.text
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn leaf_count(&self) -> usize {
        self.nodes
            .iter()
            .filter(|n| n.children.is_empty() && n.suffix_start.is_some())
            .count()
    }

    /// The root-to-leaf strings, i.e. the suffixes the tree currently
    /// contains. Order is unspecified.
    pub fn leaf_words(&self) -> Vec<Vec<Symbol>> {
        let mut out = Vec::new();
        let mut stack = vec![(0usize, Vec::new())];
        while let Some((idx, prefix)) = stack.pop() {
            let node = &self.nodes[idx];
            let mut word = prefix;
            word.extend_from_slice(&self.text[node.start..node.end]);
            if node.children.is_empty() {
                if idx != 0 {
                    out.push(word);
                }
            } else {
                for child in node.children.values() {
                    stack.push((*child, word.clone()));
                }
            }
        }
        out
    }

    /// Keeps exactly the suffixes of length at least `m`; internal nodes with
    /// no surviving leaf below are dropped.
    pub fn prune_min_length(&self, m: usize) -> SuffixTree {
        let mut nodes = vec![Node::new(0, 0)];
        self.prune_copy(0, m, 0, &mut nodes);
        SuffixTree {
            text: self.text.clone(),
            nodes,
        }
    }

    fn prune_copy(&self, old: usize, m: usize, new_parent_slot: usize, nodes: &mut Vec<Node>) {
        for (&sym, &child) in &self.nodes[old].children {
            let c = &self.nodes[child];
            if c.children.is_empty() {
                let start = c.suffix_start.expect("leaf without suffix index");
                if self.text.len() - start < m {
                    continue;
                }
                let mut leaf = Node::new(c.start, c.end);
                leaf.suffix_start = Some(start);
                nodes.push(leaf);
                let idx = nodes.len() - 1;
                nodes[new_parent_slot].children.insert(sym, idx);
            } else {
                nodes.push(Node::new(c.start, c.end));
                let idx = nodes.len() - 1;
                self.prune_copy(child, m, idx, nodes);
                if nodes[idx].children.is_empty() {
                    nodes.pop();
                } else {
                    nodes[new_parent_slot].children.insert(sym, idx);
                }
            }
        }
    }

    fn is_effectively_empty(&self) -> bool {
        self.nodes[0].children.is_empty()
    }

    /// The root-to-leaf word obtained by taking, at each node, the edge whose
    /// first symbol is minimal under `order`. `None` for an empty tree.
    pub fn min_word(&self, order: &SymbolOrder) -> Option<Vec<Symbol>> {
        self.min_word_with_path(order).map(|(word, _)| word)
    }

    fn min_word_with_path(&self, order: &SymbolOrder) -> Option<(Vec<Symbol>, Vec<usize>)> {
        if self.is_effectively_empty() {
            return None;
        }
        let mut word = Vec::new();
        let mut path = vec![0usize];
        let mut node = 0usize;
        loop {
            let n = &self.nodes[node];
            word.extend_from_slice(&self.text[n.start..n.end]);
            if n.children.is_empty() {
                return Some((word, path));
            }
            let (_, &next) = n
                .children
                .iter()
                .min_by_key(|(&sym, _)| order.rank(sym))
                .unwrap();
            path.push(next);
            node = next;
        }
    }

    /// Sorts the contained suffixes by iterating "take the minimum, then
    /// remove it from the tree". This realizes the suffix order induced by
    /// the tree walk.
    pub fn suffix_order(&self, order: &SymbolOrder) -> Vec<Vec<Symbol>> {
        let mut tree = self.clone();
        let mut out = Vec::new();
        while let Some((word, path)) = tree.min_word_with_path(order) {
            out.push(word);
            tree.remove_path_leaf(&path);
        }
        out
    }

    fn remove_path_leaf(&mut self, path: &[usize]) {
        // detach the leaf, then cascade away now-childless internal nodes
        for i in (1..path.len()).rev() {
            let (parent, child) = (path[i - 1], path[i]);
            if self.nodes[child].children.is_empty() {
                let sym = self.text[self.nodes[child].start];
                self.nodes[parent].children.remove(&sym);
            } else {
                break;
            }
        }
    }
}

/// Linear-time Lyndon membership: builds the suffix tree of `sigma sigma $`
/// with the sentinel as the order-minimal symbol, prunes to the suffixes of
/// length at least `n+2`, and checks that the minimal remaining word is
/// `sigma sigma $` itself. Agrees with the rotation test on all inputs.
///
/// Panics on the empty word.
pub fn is_lyndon_suffix_tree(sigma: &Word) -> bool {
    membership_with_stats(sigma).0
}

/// Membership test plus the number of tree nodes touched (built, copied
/// while pruning, and walked for the minimum), for cost assertions.
pub fn membership_with_stats(sigma: &Word) -> (bool, usize) {
    assert!(!sigma.is_empty(), "membership undefined for the empty word");
    let n = sigma.len();
    let q = sigma.alphabet().size();
    let mut text = Vec::with_capacity(2 * n + 1);
    text.extend_from_slice(sigma.symbols());
    text.extend_from_slice(sigma.symbols());
    text.push(q); // sentinel
    let tree = SuffixTree::build(text.clone()).expect("sentinel is unique by construction");
    let pruned = tree.prune_min_length(n + 2);
    let min = pruned
        .min_word(&SymbolOrder::sentinel_minimal(q))
        .expect("sigma sigma $ itself always survives the pruning");
    let visited = tree.node_count() + pruned.node_count() + min.len();
    (min == text, visited)
}

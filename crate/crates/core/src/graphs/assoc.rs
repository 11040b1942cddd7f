//! Balanced bracket words, binary-tree rotations, and a ballot-sequence
//! rank/unrank codec.
//!
//! A binary tree with `n` internal nodes is encoded recursively as
//! `enc(node) = "(" enc(left) ")" enc(right)`, the empty tree being the
//! empty word; this is a bijection with balanced bracket words of length
//! `2n`. A rotation moves one bracket: the patterns `)(` and `((` at
//! positions `(p, p+1)` mark the two rotation directions, and every tree
//! with `n` internal nodes admits exactly `n - 1` rotations.

use crate::{Error, Result};
use std::fmt;

/// A balanced bracket word of even length; `true` is an opening bracket.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BracketWord {
    opens: Vec<bool>,
}

impl Ord for BracketWord {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // Lexicographic with `(` before `)`, agreeing with the rendered
        // string order and the codec's rank order; `(` is stored as `true`,
        // so the derived order on `Vec<bool>` would run the other way.
        let lhs = self.opens.iter().map(|&b| !b);
        let rhs = other.opens.iter().map(|&b| !b);
        lhs.cmp(rhs)
    }
}

impl PartialOrd for BracketWord {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl BracketWord {
    /// Validate balancedness and wrap.
    pub fn new(opens: Vec<bool>) -> Result<BracketWord> {
        let mut depth = 0i64;
        for &b in &opens {
            depth += if b { 1 } else { -1 };
            if depth < 0 {
                return Err(Error::Parse(format!(
                    "unbalanced bracket word {}",
                    render(&opens)
                )));
            }
        }
        if depth != 0 {
            return Err(Error::Parse(format!(
                "unbalanced bracket word {}",
                render(&opens)
            )));
        }
        Ok(BracketWord { opens })
    }

    /// Parse from a string of `(` and `)`.
    pub fn parse(text: &str) -> Result<BracketWord> {
        let opens: Vec<bool> = text
            .trim()
            .chars()
            .map(|c| match c {
                '(' => Ok(true),
                ')' => Ok(false),
                other => Err(Error::Parse(format!("bad bracket character {other:?}"))),
            })
            .collect::<Result<_>>()?;
        BracketWord::new(opens)
    }

    /// Number of internal tree nodes (half the word length).
    pub fn internal_nodes(&self) -> usize {
        self.opens.len() / 2
    }

    /// Word length.
    pub fn len(&self) -> usize {
        self.opens.len()
    }

    /// True when the word is empty.
    pub fn is_empty(&self) -> bool {
        self.opens.is_empty()
    }

    /// The brackets, `true` for `(`.
    pub fn opens(&self) -> &[bool] {
        &self.opens
    }

    /// Apply the single rotation at 1-based position `p`, looking at the
    /// bracket pair `(p, p+1)`:
    ///
    /// * `)(` — the subtree block closing at `p` absorbs its right sibling
    ///   (the opening bracket at `p+1` moves in front of the block);
    /// * `((` — the inverse move (the opening bracket at `p` jumps past its
    ///   child's block);
    /// * anything else admits no rotation.
    pub fn rotate_at(&self, p: usize) -> Result<BracketWord> {
        if p == 0 || p >= self.opens.len() {
            return Err(Error::RotationNotApplicable { position: p });
        }
        let i = p - 1; // 0-based index of the left half of the pattern
        let w = &self.opens;
        let mut out = Vec::with_capacity(w.len());
        if !w[i] && w[i + 1] {
            // ")(" — left rotation: insert "(" before the block matched by
            // the ")" at i, drop the "(" at i+1.
            let o = self.open_matching_close(i);
            out.extend_from_slice(&w[..o]);
            out.push(true);
            out.extend_from_slice(&w[o..=i]);
            out.extend_from_slice(&w[i + 2..]);
        } else if w[i] && w[i + 1] {
            // "((" — right rotation: drop the "(" at i, re-insert it after
            // the block opened at i+1.
            let m1 = self.close_matching_open(i + 1);
            out.extend_from_slice(&w[..i]);
            out.extend_from_slice(&w[i + 1..=m1]);
            out.push(true);
            out.extend_from_slice(&w[m1 + 1..]);
        } else {
            return Err(Error::RotationNotApplicable { position: p });
        }
        Ok(BracketWord { opens: out })
    }

    /// 1-based positions at which [`rotate_at`](Self::rotate_at) applies:
    /// exactly those followed by an opening bracket, so every word on `n`
    /// internal nodes has `n - 1` of them.
    pub fn rotation_positions(&self) -> Vec<usize> {
        (1..self.opens.len()).filter(|&p| self.opens[p]).collect()
    }

    fn close_matching_open(&self, open: usize) -> usize {
        let mut depth = 0;
        for i in open..self.opens.len() {
            depth += if self.opens[i] { 1 } else { -1 };
            if depth == 0 {
                return i;
            }
        }
        unreachable!("validated word is balanced")
    }

    fn open_matching_close(&self, close: usize) -> usize {
        let mut depth = 0;
        for i in (0..=close).rev() {
            depth += if self.opens[i] { -1 } else { 1 };
            if depth == 0 {
                return i;
            }
        }
        unreachable!("validated word is balanced")
    }
}

impl fmt::Display for BracketWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render(&self.opens))
    }
}

fn render(opens: &[bool]) -> String {
    opens.iter().map(|&b| if b { '(' } else { ')' }).collect()
}

/// One internal node of a decoded tree; children are arena indices and
/// `None` children are leaves. `lo..=hi` is the subtree's leaf interval in
/// left-to-right order.
#[derive(Debug, Clone, Copy)]
struct Node {
    left: Option<usize>,
    right: Option<usize>,
    lo: usize,
    hi: usize,
}

/// A decoded tree: arena plus root (`None` for the empty word).
#[derive(Debug, Clone)]
struct Tree {
    nodes: Vec<Node>,
    root: Option<usize>,
}

impl Tree {
    fn decode(word: &BracketWord) -> Tree {
        let mut tree = Tree {
            nodes: Vec::with_capacity(word.internal_nodes()),
            root: None,
        };
        let mut pos = 0usize;
        let mut next_leaf = 0usize;
        tree.root = tree.parse(word.opens(), &mut pos, &mut next_leaf, word.len());
        debug_assert_eq!(pos, word.len());
        tree
    }

    /// Parse a subtree encoding starting at `pos` and ending at `end`
    /// (exclusive); returns `None` for a leaf.
    fn parse(
        &mut self,
        w: &[bool],
        pos: &mut usize,
        next_leaf: &mut usize,
        end: usize,
    ) -> Option<usize> {
        if *pos == end {
            *next_leaf += 1;
            return None;
        }
        debug_assert!(w[*pos], "subtree encoding starts with an open bracket");
        // Find the close matching the open at *pos to bound the left child.
        let mut depth = 0i64;
        let mut close = *pos;
        for (i, &open) in w.iter().enumerate().take(end).skip(*pos) {
            depth += if open { 1 } else { -1 };
            if depth == 0 {
                close = i;
                break;
            }
        }
        let lo = *next_leaf;
        *pos += 1;
        let left = self.parse(w, pos, next_leaf, close);
        debug_assert_eq!(*pos, close);
        *pos += 1;
        let right = self.parse(w, pos, next_leaf, end);
        let hi = *next_leaf - 1;
        self.nodes.push(Node {
            left,
            right,
            lo,
            hi,
        });
        Some(self.nodes.len() - 1)
    }

    fn encode_into(&self, node: Option<usize>, out: &mut Vec<bool>) {
        if let Some(idx) = node {
            let n = self.nodes[idx];
            out.push(true);
            self.encode_into(n.left, out);
            out.push(false);
            self.encode_into(n.right, out);
        }
    }

    fn encode(&self) -> BracketWord {
        let mut out = Vec::with_capacity(self.nodes.len() * 2);
        self.encode_into(self.root, &mut out);
        BracketWord { opens: out }
    }

    /// Leaf interval of a child slot, treating a leaf as a width-1 interval
    /// at the given boundary of the parent.
    fn child_interval(&self, parent: usize, child: Option<usize>, left_side: bool) -> (usize, usize) {
        match child {
            Some(c) => (self.nodes[c].lo, self.nodes[c].hi),
            None => {
                let p = self.nodes[parent];
                if left_side {
                    (p.lo, p.lo)
                } else {
                    (p.hi, p.hi)
                }
            }
        }
    }
}

/// Compute the neighbors of a bracket word in the rotation graph, each with
/// its quadrilateral label, sorted by label. The label of the rotation that
/// turns `(A)(B)C` into `((A)B)C` (or back) is `(a, b+1, c+1, d+1)` where
/// `A`, `B`, `C` cover the leaf intervals `[a..b]`, `[b+1..c]`, `[c+1..d]`;
/// it identifies the rotation symmetrically from both endpoints.
pub fn rotation_neighbors(word: &BracketWord) -> Vec<(BracketWord, [u16; 4])> {
    let tree = Tree::decode(word);
    let mut parent_of = vec![None::<(usize, bool)>; tree.nodes.len()];
    for (idx, node) in tree.nodes.iter().enumerate() {
        if let Some(l) = node.left {
            parent_of[l] = Some((idx, true));
        }
        if let Some(r) = node.right {
            parent_of[r] = Some((idx, false));
        }
    }
    let mut out = Vec::new();
    for z in 0..tree.nodes.len() {
        // Left rotation: right child y is internal; blocks A = left(z),
        // B = left(y), C = right(y).
        if let Some(y) = tree.nodes[z].right {
            let (a, _b) = tree.child_interval(z, tree.nodes[z].left, true);
            let (b1, c) = tree.child_interval(y, tree.nodes[y].left, true);
            let (_c1, d) = tree.child_interval(y, tree.nodes[y].right, false);
            let label = [a as u16, b1 as u16, (c + 1) as u16, (d + 1) as u16];
            let mut t = tree.clone();
            t.nodes[z].right = t.nodes[y].left;
            t.nodes[y].left = Some(z);
            reattach(&mut t, &parent_of, z, y);
            fix_intervals(&mut t, z);
            out.push((t.encode(), label));
        }
        // Right rotation: left child x is internal; blocks A = left(x),
        // B = right(x), C = right(z).
        if let Some(x) = tree.nodes[z].left {
            let (a, _b) = tree.child_interval(x, tree.nodes[x].left, true);
            let (b1, c) = tree.child_interval(x, tree.nodes[x].right, false);
            let (_c1, d) = tree.child_interval(z, tree.nodes[z].right, false);
            let label = [a as u16, b1 as u16, (c + 1) as u16, (d + 1) as u16];
            let mut t = tree.clone();
            t.nodes[z].left = t.nodes[x].right;
            t.nodes[x].right = Some(z);
            reattach(&mut t, &parent_of, z, x);
            fix_intervals(&mut t, z);
            out.push((t.encode(), label));
        }
    }
    out.sort_by_key(|(_, label)| *label);
    out
}

/// Point the old parent of `child` (or the root) at `replacement`.
fn reattach(tree: &mut Tree, parent_of: &[Option<(usize, bool)>], child: usize, replacement: usize) {
    match parent_of[child] {
        None => tree.root = Some(replacement),
        Some((p, true)) => tree.nodes[p].left = Some(replacement),
        Some((p, false)) => tree.nodes[p].right = Some(replacement),
    }
}

/// Intervals are only used for labels (computed before mutation), but keep
/// the rotated pair consistent for debug assertions.
fn fix_intervals(tree: &mut Tree, z: usize) {
    let n = tree.nodes[z];
    let lo = match n.left {
        Some(l) => tree.nodes[l].lo,
        None => n.lo,
    };
    let hi = match n.right {
        Some(r) => tree.nodes[r].hi,
        None => n.hi,
    };
    tree.nodes[z].lo = lo;
    tree.nodes[z].hi = hi;
}

/// Rank/unrank codec for balanced bracket words of length `2n` in
/// lexicographic order with `(` before `)`.
#[derive(Debug)]
pub(crate) struct BallotCodec {
    n: usize,
    /// `count[i][d]` = number of balanced completions of a prefix of length
    /// `i` at bracket depth `d`.
    count: Vec<Vec<u64>>,
}

impl BallotCodec {
    pub fn new(n: usize) -> BallotCodec {
        let len = 2 * n;
        let mut count = vec![vec![0u64; n + 2]; len + 1];
        count[len][0] = 1;
        for i in (0..len).rev() {
            for d in 0..=n {
                let mut c = 0u64;
                if d < n {
                    c += count[i + 1][d + 1];
                }
                if d >= 1 {
                    c += count[i + 1][d - 1];
                }
                count[i][d] = c;
            }
        }
        BallotCodec { n, count }
    }

    /// Number of balanced words (the Catalan number).
    pub fn total(&self) -> u64 {
        self.count[0][0]
    }

    pub fn rank(&self, word: &BracketWord) -> u64 {
        debug_assert_eq!(word.internal_nodes(), self.n);
        let mut rank = 0u64;
        let mut depth = 0usize;
        for (i, &open) in word.opens().iter().enumerate() {
            if open {
                depth += 1;
            } else {
                // All words opening here come first.
                rank += self.count[i + 1][depth + 1];
                depth -= 1;
            }
        }
        rank
    }

    pub fn unrank(&self, mut rank: u64) -> Result<BracketWord> {
        if rank >= self.total() {
            return Err(Error::RankOutOfRange {
                rank,
                count: self.total(),
            });
        }
        let len = 2 * self.n;
        let mut opens = Vec::with_capacity(len);
        let mut depth = 0usize;
        for i in 0..len {
            let with_open = if depth < self.n {
                self.count[i + 1][depth + 1]
            } else {
                0
            };
            if rank < with_open {
                opens.push(true);
                depth += 1;
            } else {
                rank -= with_open;
                opens.push(false);
                depth -= 1;
            }
        }
        Ok(BracketWord { opens })
    }
}

//! The weighted binary generating tree with succession rule `(k) → (k)(k+1)`.
//!
//! A node at height `j` with label `l` weighs `l^{d_j}`; the edge into a
//! child weighs `+1` when the label increments and `-1` when it repeats. The
//! weight of the height-`k` tree is the sum over leaves of the product of
//! weights along the root path.

use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Pow, Zero};

use crate::error::{Error, Result};

/// Largest height [`build_tree`] will materialize.
pub const TREE_BUILD_CAP: usize = 20;
/// Largest height [`tree_weight_sum`] will evaluate.
pub const TREE_SUM_CAP: usize = 30;

/// Vertex-weight exponents `(d_1, …, d_k)`; `d_j` applies at height `j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightSequence(Vec<u32>);

impl WeightSequence {
    pub fn new(d: Vec<u32>) -> Self {
        WeightSequence(d)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl From<Vec<u32>> for WeightSequence {
    fn from(d: Vec<u32>) -> Self {
        WeightSequence(d)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeNode {
    pub label: u32,
    pub height: u32,
    pub children: Vec<TreeNode>,
}

impl TreeNode {
    fn grow(label: u32, height: u32, depth: u32) -> TreeNode {
        let children = if height < depth {
            vec![
                TreeNode::grow(label, height + 1, depth),
                TreeNode::grow(label + 1, height + 1, depth),
            ]
        } else {
            Vec::new()
        };
        TreeNode {
            label,
            height,
            children,
        }
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    pub fn leaves(&self) -> Vec<&TreeNode> {
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(node) = stack.pop() {
            if node.is_leaf() {
                out.push(node);
            } else {
                stack.extend(node.children.iter().rev());
            }
        }
        out
    }

    /// All root-to-leaf label sequences, left to right.
    pub fn leaf_paths(&self) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        let mut path = Vec::new();
        collect_paths(self, &mut path, &mut out);
        out
    }

    pub fn node_count(&self) -> usize {
        1 + self
            .children
            .iter()
            .map(TreeNode::node_count)
            .sum::<usize>()
    }

    /// Text dump: one node per line as `height label sign`, children
    /// indented two spaces under their parent. `sign` is the weight of the
    /// edge into the node (`+` for the root).
    pub fn render(&self) -> String {
        let mut out = String::new();
        render_into(self, None, 0, &mut out);
        out
    }
}

fn collect_paths(node: &TreeNode, path: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    path.push(node.label);
    if node.is_leaf() {
        out.push(path.clone());
    } else {
        for child in &node.children {
            collect_paths(child, path, out);
        }
    }
    path.pop();
}

fn render_into(node: &TreeNode, parent: Option<u32>, indent: usize, out: &mut String) {
    let sign = match parent {
        Some(p) if node.label == p => '-',
        _ => '+',
    };
    let _ = writeln!(
        out,
        "{:indent$}{} {} {}",
        "",
        node.height,
        node.label,
        sign,
        indent = indent
    );
    for child in &node.children {
        render_into(child, Some(node.label), indent + 2, out);
    }
}

/// The full tree of height `k`.
pub fn build_tree(k: usize) -> Result<TreeNode> {
    if k > TREE_BUILD_CAP {
        return Err(Error::CapExceeded {
            what: "tree height",
            requested: k as u64,
            cap: TREE_BUILD_CAP as u64,
        });
    }
    Ok(TreeNode::grow(1, 0, k as u32))
}

/// Tree weight by walking every root-to-leaf path of the materialized tree.
pub fn tree_weight_traversal(d: &WeightSequence) -> Result<BigInt> {
    let tree = build_tree(d.len())?;
    let mut total = BigInt::zero();
    accumulate_paths(&tree, d.exponents(), BigInt::one(), &mut total);
    Ok(total)
}

fn accumulate_paths(node: &TreeNode, d: &[u32], weight: BigInt, total: &mut BigInt) {
    if node.is_leaf() {
        *total += weight;
        return;
    }
    for child in &node.children {
        let vertex = BigInt::from(child.label).pow(d[child.height as usize - 1]);
        let edge = if child.label == node.label { -1 } else { 1 };
        accumulate_paths(child, d, &weight * vertex * edge, total);
    }
}

/// Tree weight as the closed sum over leaf encodings `x ∈ {0,1}^k`:
/// `Σ (-1)^{k - Σx} Π_{i=1..k} (1 + x_1 + … + x_i)^{d_i}`.
pub fn tree_weight_sum(d: &WeightSequence) -> Result<BigInt> {
    let k = d.len();
    if k > TREE_SUM_CAP {
        return Err(Error::CapExceeded {
            what: "tree height",
            requested: k as u64,
            cap: TREE_SUM_CAP as u64,
        });
    }
    let mut positive = BigUint::zero();
    let mut negative = BigUint::zero();
    sum_levels(
        d.exponents(),
        1,
        0,
        BigUint::one(),
        &mut positive,
        &mut negative,
    );
    Ok(BigInt::from(positive) - BigInt::from(negative))
}

// depth-first over the leaf encoding: `label` is 1 + x_1 + … + x_i, `zeros`
// counts repeated labels (each contributes a -1 edge).
fn sum_levels(
    d: &[u32],
    label: u32,
    zeros: u32,
    product: BigUint,
    positive: &mut BigUint,
    negative: &mut BigUint,
) {
    let Some((&exp, rest)) = d.split_first() else {
        if zeros.is_multiple_of(2) {
            *positive += product;
        } else {
            *negative += product;
        }
        return;
    };
    let stay = &product * BigUint::from(label).pow(exp);
    sum_levels(rest, label, zeros + 1, stay, positive, negative);
    let step = product * BigUint::from(label + 1).pow(exp);
    sum_levels(rest, label + 1, zeros, step, positive, negative);
}

/// Leaf encoding: the label increments along a root-to-leaf path.
pub fn leaf_theta(path: &[u32]) -> Result<Vec<u8>> {
    match path.first() {
        Some(1) => {}
        Some(&first) => return Err(Error::InvalidLabelStep { from: 1, to: first }),
        None => return Err(Error::InvalidLabelStep { from: 1, to: 0 }),
    }
    path.windows(2)
        .map(|w| match w[1].checked_sub(w[0]) {
            Some(0) => Ok(0),
            Some(1) => Ok(1),
            _ => Err(Error::InvalidLabelStep {
                from: w[0],
                to: w[1],
            }),
        })
        .collect()
}

/// Rebuilds the root-to-leaf label path from its encoding.
pub fn leaf_theta_inverse(bits: &[u8]) -> Result<Vec<u32>> {
    let mut path = Vec::with_capacity(bits.len() + 1);
    let mut label = 1u32;
    path.push(label);
    for &b in bits {
        if b > 1 {
            return Err(Error::InvalidLabelStep {
                from: label,
                to: label + b as u32,
            });
        }
        label += b as u32;
        path.push(label);
    }
    Ok(path)
}

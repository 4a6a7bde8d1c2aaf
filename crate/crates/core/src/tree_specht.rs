//! Specht-like modules indexed by plane rooted trees whose nodes carry
//! column lengths, and their relation to the shape filtration of the
//! Filippov modules.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::characters::{decompose, Decomposition};
use crate::error::{Error, TreeError};
use crate::filippov::{enumerate_shapes, shape_quotient_character, BracketShape, BracketWord, Tower};
use crate::linalg::{ArithmeticMode, Field, SparseVec};
use crate::module::{character, run_in_mode, FieldTask, QuotientModule, Representation, Submodule};
use crate::specht::SpechtModule;
use crate::tabloid::TabloidSpace;

/// A plane rooted tree of arbitrary arities.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct PlaneTree {
    children: Vec<PlaneTree>,
}

impl PlaneTree {
    pub fn leaf() -> Self {
        PlaneTree { children: vec![] }
    }

    pub fn node(children: Vec<PlaneTree>) -> Self {
        PlaneTree { children }
    }

    /// A path with `len` nodes.
    pub fn path(len: usize) -> Self {
        assert!(len >= 1);
        let mut t = PlaneTree::leaf();
        for _ in 1..len {
            t = PlaneTree::node(vec![t]);
        }
        t
    }

    pub fn children(&self) -> &[PlaneTree] {
        &self.children
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        1 + self.children.iter().map(|c| c.size()).sum::<usize>()
    }

    /// True if every node has at most one child.
    pub fn is_path(&self) -> bool {
        self.children.len() <= 1 && self.children.iter().all(|c| c.is_path())
    }

    /// Parent of each node, nodes numbered in preorder (root = 0).
    pub fn parents(&self) -> Vec<Option<usize>> {
        let mut out = vec![None];
        self.collect_parents(0, &mut out);
        out
    }

    fn collect_parents(&self, me: usize, out: &mut Vec<Option<usize>>) {
        for c in &self.children {
            let id = out.len();
            out.push(Some(me));
            c.collect_parents(id, out);
        }
    }

    /// Proper descendants of each node, in preorder numbering.
    pub fn descendants(&self) -> Vec<Vec<usize>> {
        let parents = self.parents();
        let n = parents.len();
        let mut out = vec![Vec::new(); n];
        for v in 0..n {
            let mut p = parents[v];
            while let Some(a) = p {
                out[a].push(v);
                p = parents[a];
            }
        }
        out
    }
}

/// All plane rooted trees with `size` nodes (Catalan many).
pub fn enumerate_plane_trees(size: usize) -> Vec<PlaneTree> {
    fn forests(n: usize, memo: &mut Vec<Option<Vec<Vec<PlaneTree>>>>) -> Vec<Vec<PlaneTree>> {
        if let Some(f) = &memo[n] {
            return f.clone();
        }
        let mut out = Vec::new();
        if n == 0 {
            out.push(vec![]);
        }
        for first in 1..=n {
            let heads: Vec<PlaneTree> = forests(first - 1, memo).into_iter().map(PlaneTree::node).collect();
            let tails = forests(n - first, memo);
            for h in &heads {
                for t in &tails {
                    let mut f = vec![h.clone()];
                    f.extend(t.iter().cloned());
                    out.push(f);
                }
            }
        }
        memo[n] = Some(out.clone());
        out
    }
    if size == 0 {
        return vec![];
    }
    let mut memo = vec![None; size];
    let mut out: Vec<PlaneTree> = forests(size - 1, &mut memo).into_iter().map(PlaneTree::node).collect();
    out.sort();
    out
}

impl fmt::Display for PlaneTree {
    /// `(() (()))`: a node is its children in parentheses.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.children.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A tree with a positive integer per node that weakly increases from each
/// node to its children; nodes are listed in preorder.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TPartition {
    tree: PlaneTree,
    mu: Vec<usize>,
}

impl TPartition {
    pub fn new(tree: PlaneTree, mu: Vec<usize>) -> Result<Self, TreeError> {
        let parents = tree.parents();
        if mu.len() != parents.len() {
            return Err(TreeError::InvalidTPartition(format!(
                "{} values for {} nodes",
                mu.len(),
                parents.len()
            )));
        }
        if mu.contains(&0) {
            return Err(TreeError::InvalidTPartition("values must be positive".into()));
        }
        for (v, p) in parents.iter().enumerate() {
            if let Some(p) = p {
                if mu[*p] > mu[v] {
                    return Err(TreeError::InvalidTPartition(format!(
                        "parent value {} exceeds child value {}",
                        mu[*p], mu[v]
                    )));
                }
            }
        }
        Ok(TPartition { tree, mu })
    }

    pub fn tree(&self) -> &PlaneTree {
        &self.tree
    }

    /// Values in preorder.
    pub fn values(&self) -> &[usize] {
        &self.mu
    }

    pub fn size(&self) -> usize {
        self.mu.iter().sum()
    }

    pub fn root_value(&self) -> usize {
        self.mu[0]
    }

    fn write_node(&self, t: &PlaneTree, next: &mut usize, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}", self.mu[*next])?;
        *next += 1;
        for c in t.children() {
            write!(f, " ")?;
            self.write_node(c, next, f)?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for TPartition {
    /// `(2 (2) (3 (4)))`: root value 2 with children valued 2 and 3, the
    /// latter with a child valued 4.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut next = 0;
        self.write_node(&self.tree, &mut next, f)
    }
}

impl FromStr for TPartition {
    type Err = TreeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || TreeError::Parse(s.to_string());
        let bytes = s.as_bytes();
        let mut pos = 0;
        fn skip(bytes: &[u8], pos: &mut usize) {
            while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
                *pos += 1;
            }
        }
        fn node(bytes: &[u8], pos: &mut usize, mu: &mut Vec<usize>) -> Option<PlaneTree> {
            skip(bytes, pos);
            if bytes.get(*pos) != Some(&b'(') {
                return None;
            }
            *pos += 1;
            skip(bytes, pos);
            let start = *pos;
            while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
                *pos += 1;
            }
            let v: usize = std::str::from_utf8(&bytes[start..*pos]).ok()?.parse().ok()?;
            mu.push(v);
            let mut children = Vec::new();
            loop {
                skip(bytes, pos);
                match bytes.get(*pos) {
                    Some(b')') => {
                        *pos += 1;
                        return Some(PlaneTree::node(children));
                    }
                    Some(b'(') => children.push(node(bytes, pos, mu)?),
                    _ => return None,
                }
            }
        }
        let mut mu = Vec::new();
        let tree = node(bytes, &mut pos, &mut mu).ok_or_else(bad)?;
        skip(bytes, &mut pos);
        if pos != bytes.len() {
            return Err(bad());
        }
        TPartition::new(tree, mu)
    }
}

/// All T-partitions of `n` on the given tree.
pub fn t_partitions(tree: &PlaneTree, n: usize) -> Vec<TPartition> {
    let parents = tree.parents();
    let size = parents.len();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(size);
    fn rec(parents: &[Option<usize>], left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let v = cur.len();
        if v == parents.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let lo = parents[v].map(|p| cur[p]).unwrap_or(1);
        // each later node takes at least 1
        let remaining_nodes = parents.len() - v - 1;
        for x in lo..=left.saturating_sub(remaining_nodes) {
            cur.push(x);
            rec(parents, left - x, cur, out);
            cur.pop();
        }
    }
    let mut raw = Vec::new();
    rec(&parents, n, &mut cur, &mut raw);
    for mu in raw {
        out.push(TPartition::new(tree.clone(), mu).expect("valid by construction"));
    }
    out
}

/// Tabloids of a T-partition: one column per node, in preorder.
pub fn tree_space(mu: &TPartition) -> TabloidSpace {
    TabloidSpace::new(mu.values().to_vec(), mu.size(), 0)
}

/// `t̄ − Σ s̄` over the s obtained by exchanging an entry of the column of
/// the non-root node `a` with the top entry of its parent's column.
pub fn tree_garnir_first<F: Field>(
    space: &TabloidSpace,
    mu: &TPartition,
    t: &[u8],
    a: usize,
) -> Result<SparseVec<F>, TreeError> {
    let p = mu
        .tree()
        .parents()
        .get(a)
        .copied()
        .flatten()
        .ok_or_else(|| TreeError::InvalidTableau(format!("node {a} has no parent")))?;
    Ok(space.vector(&space.swap_with_top(t, a, p)))
}

/// `|D_a| μ(a) t̄ − Σ s̄` over the s obtained by exchanging an entry of the
/// column of `a` with an entry of the column of any descendant of `a`.
pub fn tree_garnir_second<F: Field>(
    space: &TabloidSpace,
    mu: &TPartition,
    t: &[u8],
    a: usize,
) -> Result<SparseVec<F>, TreeError> {
    let desc = mu.tree().descendants();
    let d = desc
        .get(a)
        .filter(|d| !d.is_empty())
        .ok_or_else(|| TreeError::InvalidTableau(format!("node {a} has no descendants")))?;
    let coeff = (d.len() * mu.values()[a]) as i64;
    Ok(space.vector(&space.swap_with_columns(t, a, d, coeff)))
}

/// Which family of tree Garnir relations to impose.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    First,
    Second,
}

/// Generators of the first-kind relations: every non-root node, every
/// column-strict tableau and every choice of the parent's top entry.
pub fn first_kind_tree_relations<F: Field>(space: &TabloidSpace, mu: &TPartition) -> Vec<SparseVec<F>> {
    let parents = mu.tree().parents();
    (1..parents.len())
        .flat_map(|a| {
            let p = parents[a].expect("non-root");
            space
                .with_each_top(p)
                .into_par_iter()
                .map(|t| space.vector(&space.swap_with_top(&t, a, p)))
                .collect::<Vec<_>>()
        })
        .collect()
}

/// Generators of the second-kind relations over column-strict tableaux.
pub fn second_kind_tree_relations<F: Field>(space: &TabloidSpace, mu: &TPartition) -> Vec<SparseVec<F>> {
    let desc = mu.tree().descendants();
    (0..desc.len())
        .filter(|&a| !desc[a].is_empty())
        .flat_map(|a| {
            space
                .tableaux()
                .par_iter()
                .map(|t| tree_garnir_second(space, mu, t, a).expect("internal node"))
                .collect::<Vec<_>>()
        })
        .collect()
}

/// The tree Specht module of the given kind.
pub fn tree_specht<F: Field>(mu: &TPartition, kind: Kind) -> Result<SpechtModule<F>, Error> {
    let space = tree_space(mu);
    let rel = match kind {
        Kind::First => first_kind_tree_relations(&space, mu),
        Kind::Second => second_kind_tree_relations(&space, mu),
    };
    Ok(QuotientModule::from_generators(space, rel)?)
}

fn module_decomposition<F: Field, R: Representation<F>>(m: &R) -> Result<Decomposition, Error> {
    if m.dim() == 0 {
        return Ok(Decomposition::new(m.degree()));
    }
    Ok(decompose(&character::<F, _>(m))?)
}

struct TreeSpechtTask(TPartition, Kind);

impl FieldTask for TreeSpechtTask {
    type Output = (usize, Decomposition);

    fn run<F: Field>(&self) -> Result<Self::Output, Error> {
        let m = tree_specht::<F>(&self.0, self.1)?;
        Ok((m.dim(), module_decomposition::<F, _>(&m)?))
    }
}

/// Dimension and decomposition of a tree Specht module.
pub fn tree_specht_decompose(
    mu: &TPartition,
    kind: Kind,
    mode: ArithmeticMode,
) -> Result<(usize, Decomposition), Error> {
    run_in_mode(&TreeSpechtTask(mu.clone(), kind), mode)
}

/// Comparison of the two kinds for one T-partition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EmbedCheck {
    pub mu: String,
    pub nodes: usize,
    pub is_path: bool,
    pub first: Decomposition,
    pub second: Decomposition,
    /// Every constituent of the second kind has exactly |T| columns, the
    /// last of length μ(root).
    pub second_columns_ok: bool,
    /// Every constituent of the first kind has exactly |T| columns.
    pub first_columns_ok: bool,
    /// Multiplicities of the first kind are at most those of the second.
    pub componentwise_le: bool,
    pub equal: bool,
}

impl EmbedCheck {
    pub fn passed(&self) -> bool {
        self.second_columns_ok && self.first_columns_ok && self.componentwise_le && (!self.is_path || self.equal)
    }
}

fn columns_ok(d: &Decomposition, cols: usize, last: Option<usize>) -> bool {
    d.terms()
        .all(|(l, _)| l.num_columns() == cols && last.is_none_or(|x| l.column_lengths()[cols - 1] == x))
}

/// Decomposes both kinds of tree Specht module for `mu` and compares them.
pub fn embed_check(mu: &TPartition, mode: ArithmeticMode) -> Result<EmbedCheck, Error> {
    let (_, first) = tree_specht_decompose(mu, Kind::First, mode)?;
    let (_, second) = tree_specht_decompose(mu, Kind::Second, mode)?;
    let nodes = mu.tree().size();
    let le = first.terms().all(|(l, m)| m <= second.multiplicity(l));
    Ok(EmbedCheck {
        mu: mu.to_string(),
        nodes,
        is_path: mu.tree().is_path(),
        second_columns_ok: columns_ok(&second, nodes, Some(mu.root_value())),
        first_columns_ok: columns_ok(&first, nodes, None),
        componentwise_le: le,
        equal: first == second,
        first,
        second,
    })
}

/// Removes the leaves of a bracketing shape: the nodes are its brackets
/// (preorder) valued by their numbers of leaf children. Requires every
/// bracket to have a leaf child and the values to weakly increase away from
/// the root.
pub fn prune(shape: &BracketShape) -> Result<TPartition, TreeError> {
    fn rec(s: &BracketShape, mu: &mut Vec<usize>) -> PlaneTree {
        mu.push(s.leaf_children());
        PlaneTree::node(
            s.children()
                .iter()
                .filter(|c| !c.is_leaf())
                .map(|c| rec(c, mu))
                .collect(),
        )
    }
    if shape.is_leaf() {
        return Err(TreeError::InvalidTPartition("shape has no brackets".into()));
    }
    if !shape.is_increasing() {
        return Err(TreeError::InvalidTPartition(format!("{shape} is not increasing")));
    }
    let mut mu = Vec::new();
    let tree = rec(shape, &mut mu);
    TPartition::new(tree, mu)
}

/// The leaf labeling of `shape` attached to tableau `t`: the i-th leaf
/// child of a bracket gets the i-th entry of its column.
pub fn labeling(shape: &BracketShape, space: &TabloidSpace, t: &[u8]) -> BracketWord {
    fn rec(s: &BracketShape, space: &TabloidSpace, t: &[u8], next: &mut usize) -> BracketWord {
        let col = space.column(t, *next);
        *next += 1;
        let mut i = 0;
        BracketWord::Bracket(
            s.children()
                .iter()
                .map(|c| {
                    if c.is_leaf() {
                        i += 1;
                        BracketWord::Letter(col[i - 1] as u32)
                    } else {
                        rec(c, space, t, next)
                    }
                })
                .collect(),
        )
    }
    let mut next = 0;
    rec(shape, space, t, &mut next)
}

/// Comparison between a layer of the shape filtration and the first-kind
/// tree Specht module of the pruned shape.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BridgeCheck {
    pub shape: String,
    pub pruned: String,
    /// Dimension of the span of words of this shape modulo lower shapes.
    pub quotient_dim: usize,
    pub quotient: Decomposition,
    pub tree_specht: Decomposition,
    /// Tabloid ↦ labeled word kills every first-kind relation modulo the
    /// lower shapes.
    pub relations_vanish: bool,
    /// Rank of tabloid ↦ labeled word modulo the lower shapes.
    pub image_rank: usize,
    pub componentwise_le: bool,
}

impl BridgeCheck {
    pub fn passed(&self) -> bool {
        self.relations_vanish && self.image_rank == self.quotient_dim && self.componentwise_le
    }
}

struct BridgeTask {
    shape: BracketShape,
    mu: TPartition,
}

impl FieldTask for BridgeTask {
    type Output = BridgeCheck;

    fn run<F: Field>(&self) -> Result<BridgeCheck, Error> {
        let k = self.shape.num_brackets();
        let n = self.shape.children().len();
        let tower = Tower::<F>::build(n, k)?;
        let dv = self.shape.depth_vector();
        let lower: Vec<BracketShape> = enumerate_shapes(n, k)
            .into_iter()
            .filter(|s| s.depth_vector() < dv)
            .collect();
        let d: Submodule<'_, F, Tower<F>> = tower.shapes_submodule(&lower)?;
        let space = tree_space(&self.mu);
        let images: Vec<SparseVec<F>> = space
            .tableaux()
            .par_iter()
            .map(|t| {
                let w = labeling(&self.shape, &space, t);
                tower.word_nf(&w).map(|v| d.space().reduce(&v))
            })
            .collect::<Result<_, _>>()?;
        let mut span = crate::linalg::Subspace::new(tower.dim(k));
        span.extend(images.iter().cloned())?;
        let relations = first_kind_tree_relations::<F>(&space, &self.mu);
        let vanish = relations.par_iter().all(|r| {
            let mut acc = SparseVec::zero();
            for (i, c) in r.iter() {
                acc = acc.add_scaled(&images[*i], c);
            }
            acc.is_zero()
        });
        let (qdim, qch) = shape_quotient_character(&tower, &self.shape)?;
        let quotient = if qdim == 0 {
            Decomposition::new(tower.degree())
        } else {
            decompose(&qch)?
        };
        let ts = tree_specht::<F>(&self.mu, Kind::First)?;
        let tree_specht = module_decomposition::<F, _>(&ts)?;
        let le = quotient.terms().all(|(l, m)| m <= tree_specht.multiplicity(l));
        Ok(BridgeCheck {
            shape: self.shape.to_string(),
            pruned: self.mu.to_string(),
            quotient_dim: qdim,
            quotient,
            tree_specht,
            relations_vanish: vanish,
            image_rank: span.rank(),
            componentwise_le: le,
        })
    }
}

/// Prunes `shape` and compares its layer of the shape filtration with the
/// tree Specht module of the pruned tree.
pub fn prune_and_bridge(shape: &BracketShape, mode: ArithmeticMode) -> Result<BridgeCheck, Error> {
    let mu = prune(shape)?;
    run_in_mode(
        &BridgeTask {
            shape: shape.clone(),
            mu,
        },
        mode,
    )
}

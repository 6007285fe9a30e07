//! Finite causal orders and their histories.

use std::collections::HashMap;
use std::fmt;

use fixedbitset::FixedBitSet;
use rand::Rng;

use crate::error::{Error, Result};

/// Index of a point event inside one [`CausalModel`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point(usize);

impl Point {
    pub fn index(self) -> usize {
        self.0
    }

    /// Caller guarantees `i` indexes a point of the model it is used with.
    pub(crate) fn from_index_unchecked(i: usize) -> Point {
        Point(i)
    }
}

/// A maximal directed subset of the model. In a finite model this is always
/// the down-closure of a single maximal point, which is kept as `top`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct History {
    top: Point,
    members: FixedBitSet,
}

impl History {
    pub fn top(&self) -> Point {
        self.top
    }

    pub fn members(&self) -> &FixedBitSet {
        &self.members
    }

    pub fn contains(&self, p: Point) -> bool {
        self.members.contains(p.0)
    }

    pub fn contains_all(&self, set: &FixedBitSet) -> bool {
        set.is_subset(&self.members)
    }

    pub fn overlaps(&self, set: &FixedBitSet) -> bool {
        !self.members.is_disjoint(set)
    }

    pub fn points(&self) -> impl Iterator<Item = Point> + '_ {
        self.members.ones().map(Point)
    }
}

/// A nonempty set of pairwise comparable point events, sorted bottom-up.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chain(Vec<Point>);

impl Chain {
    pub fn points(&self) -> &[Point] {
        &self.0
    }

    pub fn min(&self) -> Point {
        self.0[0]
    }

    pub fn max(&self) -> Point {
        self.0[self.0.len() - 1]
    }
}

/// Point events with a strict partial order, stored transitively closed.
#[derive(Clone)]
pub struct CausalModel {
    labels: Vec<String>,
    index: HashMap<String, Point>,
    /// `above[a]` holds every `b` with `a < b`.
    above: Vec<FixedBitSet>,
    /// `below[b]` holds every `a` with `a < b`.
    below: Vec<FixedBitSet>,
    histories: Vec<History>,
}

impl fmt::Debug for CausalModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CausalModel")
            .field("points", &self.labels.len())
            .field("histories", &self.histories.len())
            .finish()
    }
}

impl CausalModel {
    /// Builds a model from point labels and arbitrary order pairs `(a, b)`
    /// meaning `a < b`. The stored order is the transitive closure.
    pub fn build<S: AsRef<str>>(points: &[S], order: &[(S, S)]) -> Result<CausalModel> {
        if points.is_empty() {
            return Err(Error::EmptyModel);
        }
        let n = points.len();
        let mut labels = Vec::with_capacity(n);
        let mut index = HashMap::with_capacity(n);
        for (i, p) in points.iter().enumerate() {
            let label = p.as_ref();
            if label.is_empty() {
                return Err(Error::EmptyLabel);
            }
            if index.insert(label.to_string(), Point(i)).is_some() {
                return Err(Error::DuplicatePoint(label.to_string()));
            }
            labels.push(label.to_string());
        }

        let mut above = vec![FixedBitSet::with_capacity(n); n];
        for (a, b) in order {
            let a = *index
                .get(a.as_ref())
                .ok_or_else(|| Error::UnknownPoint(a.as_ref().to_string()))?;
            let b = *index
                .get(b.as_ref())
                .ok_or_else(|| Error::UnknownPoint(b.as_ref().to_string()))?;
            above[a.0].insert(b.0);
        }

        // Warshall over bit rows.
        for k in 0..n {
            let row_k = above[k].clone();
            for row in above.iter_mut() {
                if row.contains(k) {
                    row.union_with(&row_k);
                }
            }
        }

        for i in 0..n {
            if above[i].contains(i) {
                let j = above[i]
                    .ones()
                    .find(|&j| j != i && above[j].contains(i))
                    .unwrap_or(i);
                return Err(Error::CycleDetected(labels[i].clone(), labels[j].clone()));
            }
        }

        let mut below = vec![FixedBitSet::with_capacity(n); n];
        for (a, row) in above.iter().enumerate() {
            for b in row.ones() {
                below[b].insert(a);
            }
        }

        let mut model = CausalModel {
            labels,
            index,
            above,
            below,
            histories: Vec::new(),
        };
        model.histories = model.compute_histories();
        Ok(model)
    }

    /// Random order on `n` points: each pair `i < j` (by index) is related
    /// with probability `density`. Used by tests and benches.
    pub fn random<R: Rng>(rng: &mut R, n: usize, density: f64) -> CausalModel {
        let points: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
        let mut order = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                if rng.gen_bool(density) {
                    order.push((points[i].clone(), points[j].clone()));
                }
            }
        }
        CausalModel::build(&points, &order).expect("index-ordered pairs are acyclic")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn points(&self) -> impl Iterator<Item = Point> {
        (0..self.labels.len()).map(Point)
    }

    pub fn label(&self, p: Point) -> &str {
        &self.labels[p.0]
    }

    pub fn labels_of(&self, set: &FixedBitSet) -> Vec<String> {
        set.ones().map(|i| self.labels[i].clone()).collect()
    }

    pub fn resolve(&self, label: &str) -> Result<Point> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownPoint(label.to_string()))
    }

    pub fn resolve_all<S: AsRef<str>>(&self, labels: &[S]) -> Result<Vec<Point>> {
        labels.iter().map(|l| self.resolve(l.as_ref())).collect()
    }

    /// Strict order `a < b`.
    pub fn less(&self, a: Point, b: Point) -> bool {
        self.above[a.0].contains(b.0)
    }

    pub fn leq(&self, a: Point, b: Point) -> bool {
        a == b || self.less(a, b)
    }

    pub fn comparable(&self, a: Point, b: Point) -> bool {
        self.leq(a, b) || self.less(b, a)
    }

    pub fn strictly_above(&self, p: Point) -> &FixedBitSet {
        &self.above[p.0]
    }

    pub fn strictly_below(&self, p: Point) -> &FixedBitSet {
        &self.below[p.0]
    }

    /// `{q : q <= p}`.
    pub fn down_closure(&self, p: Point) -> FixedBitSet {
        let mut set = self.below[p.0].clone();
        set.insert(p.0);
        set
    }

    /// All closed order pairs, in index order.
    pub fn order_pairs(&self) -> Vec<(Point, Point)> {
        let mut pairs = Vec::new();
        for (a, row) in self.above.iter().enumerate() {
            pairs.extend(row.ones().map(|b| (Point(a), Point(b))));
        }
        pairs
    }

    /// Points with nothing strictly above them.
    pub fn maximal_points(&self) -> Vec<Point> {
        self.points()
            .filter(|p| self.above[p.0].is_clear())
            .collect()
    }

    /// Immediate successors of `p`.
    pub fn covers(&self, p: Point) -> Vec<Point> {
        self.above[p.0]
            .ones()
            .filter(|&q| self.above[p.0].is_disjoint(&self.below[q]))
            .map(Point)
            .collect()
    }

    pub fn empty_set(&self) -> FixedBitSet {
        FixedBitSet::with_capacity(self.len())
    }

    pub fn set_of(&self, points: &[Point]) -> FixedBitSet {
        let mut set = self.empty_set();
        for p in points {
            set.insert(p.0);
        }
        set
    }

    /// True iff every two members are comparable. Empty input is rejected
    /// by the caller's contract; it is reported as a chain here.
    pub fn is_chain(&self, set: &[Point]) -> bool {
        set.iter()
            .enumerate()
            .all(|(i, &a)| set[i + 1..].iter().all(|&b| self.comparable(a, b)))
    }

    /// Label-level form of [`is_chain`](Self::is_chain).
    pub fn is_chain_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<bool> {
        Ok(self.is_chain(&self.resolve_all(labels)?))
    }

    pub fn chain(&self, set: &[Point]) -> Option<Chain> {
        if set.is_empty() || !self.is_chain(set) {
            return None;
        }
        let mut pts = set.to_vec();
        pts.sort_by_key(|p| self.below[p.0].count_ones(..));
        pts.dedup();
        Some(Chain(pts))
    }

    /// Histories, one per maximal point in declaration order.
    pub fn histories(&self) -> &[History] {
        &self.histories
    }

    fn compute_histories(&self) -> Vec<History> {
        self.maximal_points()
            .into_iter()
            .map(|top| History {
                top,
                members: self.down_closure(top),
            })
            .collect()
    }

    pub fn history_of(&self, top: Point) -> Option<&History> {
        self.histories.iter().find(|h| h.top == top)
    }

    /// Maximal elements of `h1 ∩ h2`.
    pub fn choice_points(&self, h1: &History, h2: &History) -> Result<Vec<Point>> {
        if h1 == h2 {
            return Err(Error::SameHistory);
        }
        let mut common = h1.members.clone();
        common.intersect_with(&h2.members);
        Ok(self.maximal_within(&common))
    }

    /// Elements of `set` with no strict successor inside `set`.
    pub fn maximal_within(&self, set: &FixedBitSet) -> Vec<Point> {
        set.ones()
            .filter(|&p| self.above[p].is_disjoint(set))
            .map(Point)
            .collect()
    }

    /// Elements of `set` with no strict predecessor inside `set`.
    pub fn minimal_within(&self, set: &FixedBitSet) -> Vec<Point> {
        set.ones()
            .filter(|&p| self.below[p].is_disjoint(set))
            .map(Point)
            .collect()
    }
}

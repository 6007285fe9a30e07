//! Brute-force sign assignments against three-factor product constraints.
//!
//! Two readings of the same constraints: one global value per single-station
//! observable (unsatisfiable for the GHZ products), and one independent sign
//! triple per context (satisfiable).

use serde::Serialize;

use crate::exec::Execution;
use crate::ghz::{format_signs, Axis, Context, Sign, Station};

/// A product constraint: the signs measured in `context` multiply to `target`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ProductConstraint {
    pub context: Context,
    pub target: Sign,
}

impl ProductConstraint {
    pub fn new(context: &str, target: Sign) -> ProductConstraint {
        ProductConstraint {
            context: context.parse().expect("valid context literal"),
            target,
        }
    }
}

/// `xyy = yxy = yyx = +1`, `xxx = -1`.
pub fn ghz_product_constraints() -> Vec<ProductConstraint> {
    vec![
        ProductConstraint::new("xyy", Sign::Plus),
        ProductConstraint::new("yxy", Sign::Plus),
        ProductConstraint::new("yyx", Sign::Plus),
        ProductConstraint::new("xxx", Sign::Minus),
    ]
}

/// One value for each of the six single-station observables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct ValueAssignment {
    /// Indexed `[station][axis]`.
    pub values: [[Sign; 2]; 3],
}

impl ValueAssignment {
    /// Bit 5 is `V(x_1)`, bit 4 `V(y_1)`, ..., bit 0 `V(y_3)`; a set bit is `+`.
    fn from_bits(bits: u64) -> ValueAssignment {
        let mut values = [[Sign::Minus; 2]; 3];
        for st in 0..3 {
            for ax in 0..2 {
                let shift = 5 - (st * 2 + ax);
                if bits >> shift & 1 == 1 {
                    values[st][ax] = Sign::Plus;
                }
            }
        }
        ValueAssignment { values }
    }

    pub fn value(&self, s: Station, a: Axis) -> Sign {
        self.values[s.index()][a as usize]
    }

    pub fn product(&self, c: Context) -> Sign {
        let p: i8 = Station::ALL
            .iter()
            .map(|&s| self.value(s, c.axis(s)).value())
            .product();
        Sign::from_value(p)
    }

    pub fn satisfies(&self, constraints: &[ProductConstraint]) -> bool {
        constraints.iter().all(|k| self.product(k.context) == k.target)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AssignmentSearch {
    pub constraints: Vec<ProductConstraint>,
    pub total: usize,
    pub satisfying: usize,
    pub witnesses: Vec<ValueAssignment>,
}

/// Tries all 64 global assignments.
pub fn value_assignment_search(constraints: &[ProductConstraint]) -> AssignmentSearch {
    value_assignment_search_with(constraints, Execution::default())
}

pub fn value_assignment_search_with(
    constraints: &[ProductConstraint],
    exec: Execution,
) -> AssignmentSearch {
    let witnesses = exec.filter_map(0..64, |bits| {
        let a = ValueAssignment::from_bits(bits);
        a.satisfies(constraints).then_some(a)
    });
    AssignmentSearch {
        constraints: constraints.to_vec(),
        total: 64,
        satisfying: witnesses.len(),
        witnesses,
    }
}

/// Independent sign triples per constrained context.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ContextualAssignment {
    pub triples: Vec<(Context, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ContextualSearch {
    pub constraints: Vec<ProductConstraint>,
    pub total: u64,
    pub satisfying: usize,
    pub witness: Option<ContextualAssignment>,
}

/// Tries all `8^k` joint assignments of one sign triple per constraint.
/// Context `k` reads its triple from bits `3(n-1-k)..3(n-k)`, so index order
/// is lexicographic over the constraint list.
pub fn contextual_assignment_search(constraints: &[ProductConstraint]) -> ContextualSearch {
    contextual_assignment_search_with(constraints, Execution::default())
}

fn triple(bits: u64) -> [Sign; 3] {
    [4, 2, 1].map(|m| if bits & m == 0 { Sign::Minus } else { Sign::Plus })
}

fn triple_product(t: [Sign; 3]) -> Sign {
    Sign::from_value(t.iter().map(|s| s.value()).product())
}

pub fn contextual_assignment_search_with(
    constraints: &[ProductConstraint],
    exec: Execution,
) -> ContextualSearch {
    let n = constraints.len();
    let total = 1u64 << (3 * n);
    let decode = move |idx: u64| -> Vec<[Sign; 3]> {
        (0..n)
            .map(|k| triple((idx >> (3 * (n - 1 - k))) & 7))
            .collect()
    };
    let ok = |idx: u64| {
        decode(idx)
            .iter()
            .zip(constraints)
            .all(|(&t, k)| triple_product(t) == k.target)
    };
    let satisfying = exec.count(0..total, ok);
    let witness = (0..total).find(|&i| ok(i)).map(|i| ContextualAssignment {
        triples: decode(i)
            .iter()
            .zip(constraints)
            .map(|(t, k)| (k.context, format_signs(t)))
            .collect(),
    });
    ContextualSearch {
        constraints: constraints.to_vec(),
        total,
        satisfying,
        witness,
    }
}

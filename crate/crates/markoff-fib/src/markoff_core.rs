//! The Markoff form, Vieta moves, minimality, descent, and m-tree
//! generation.
//!
//! A triple (a, b, c) of non-negative integers has Markoff value
//! M(a, b, c) = a^2 + b^2 + c^2 - 3abc, and solves the m-equation when
//! M(a, b, c) = m. The three Vieta moves replace one component by the
//! second root of the quadratic in that coordinate, so every move
//! preserves M exactly. Moves v1 and v2 grow ordered triples, v3 shrinks
//! them; repeated v3 descends to a minimal triple (one with c >= 3ab),
//! which is the root of the m-tree containing the starting triple.
//!
//! Everything here works on exact big integers. The uniqueness interval
//! for the smallest component of a non-minimal triple is realized purely
//! by integer comparisons, never by radicals.

use std::fmt;
use std::ops::Deref;

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};
use thiserror::Error;

/// A triple of non-negative integers, in the order given.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triple {
    pub a: BigUint,
    pub b: BigUint,
    pub c: BigUint,
}

impl Triple {
    pub fn new(a: BigUint, b: BigUint, c: BigUint) -> Self {
        Self { a, b, c }
    }

    /// True when every component is nonzero.
    pub fn is_positive(&self) -> bool {
        !self.a.is_zero() && !self.b.is_zero() && !self.c.is_zero()
    }

    /// The components as a fixed-size array, in order.
    pub fn components(&self) -> [&BigUint; 3] {
        [&self.a, &self.b, &self.c]
    }
}

impl From<(u64, u64, u64)> for Triple {
    fn from((a, b, c): (u64, u64, u64)) -> Self {
        Self::new(BigUint::from(a), BigUint::from(b), BigUint::from(c))
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.c)
    }
}

/// A triple with the ordering invariant a <= b <= c, enforced at
/// construction.
///
/// Operations whose contract needs non-decreasing components take this
/// type, which makes "unordered input" unrepresentable instead of a
/// runtime error inside each operation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrderedTriple(Triple);

impl OrderedTriple {
    /// Wraps a triple that is already non-decreasing, or reports it.
    pub fn new(t: Triple) -> Result<Self, MarkoffError> {
        if t.a <= t.b && t.b <= t.c {
            Ok(Self(t))
        } else {
            Err(MarkoffError::Unordered(t))
        }
    }

    pub fn as_triple(&self) -> &Triple {
        &self.0
    }

    pub fn into_triple(self) -> Triple {
        self.0
    }
}

impl Deref for OrderedTriple {
    type Target = Triple;

    fn deref(&self) -> &Triple {
        &self.0
    }
}

impl From<(u64, u64, u64)> for OrderedTriple {
    fn from(t: (u64, u64, u64)) -> Self {
        order_triple(&Triple::from(t))
    }
}

impl fmt::Display for OrderedTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Which Vieta move produced a tree node.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VietaMove {
    /// The root of the enumeration; no move produced it.
    Root,
    /// The first move, (a, b, c) to (b, c, 3bc - a).
    V1,
    /// The second move, (a, b, c) to (a, c, 3ac - b).
    V2,
    /// The coinciding first and second moves when a = b; the duplicate
    /// child is emitted once under this label.
    V1V2,
}

impl VietaMove {
    /// Stable label used in serialized output.
    pub fn label(&self) -> &'static str {
        match self {
            VietaMove::Root => "root",
            VietaMove::V1 => "v1",
            VietaMove::V2 => "v2",
            VietaMove::V1V2 => "v1=v2(dedup)",
        }
    }
}

/// One node of an enumerated m-tree fragment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeNode {
    pub triple: OrderedTriple,
    /// Index of the parent in the enumeration order; none for the root.
    pub parent: Option<usize>,
    /// The move that produced this node from its parent.
    pub produced_by: VietaMove,
    pub depth: u64,
}

/// Errors for Markoff-level operations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MarkoffError {
    /// A Vieta move would produce a negative component.
    #[error("vieta move would produce the negative component {0}")]
    NegativeComponent(BigInt),
    /// vieta3 at the exact boundary 3ab = c: the shrunk component would
    /// be zero, and an ordered triple on this boundary is minimal.
    #[error("vieta3 on the minimal boundary 3ab = c would produce a zero component")]
    MinimalBoundary,
    /// An ordered-triple constructor got decreasing components.
    #[error("components must be non-decreasing, got {0}")]
    Unordered(Triple),
    /// An operation that needs strictly positive components got a zero.
    #[error("operation requires strictly positive components, got {0}")]
    ZeroComponent(Triple),
    /// Descent did not reach a minimal triple within the step budget.
    #[error("descent from {start} did not reach a minimal triple within {budget} steps")]
    StepBudgetExhausted { start: Triple, budget: u64 },
    /// Tree enumeration requires a minimal root.
    #[error("tree root {root} is not minimal (phi gap {gap})")]
    NonMinimalRoot { root: Triple, gap: BigInt },
}

/// The Markoff value M(a, b, c) = a^2 + b^2 + c^2 - 3abc, possibly
/// negative.
pub fn markoff_value(t: &Triple) -> BigInt {
    let a = BigInt::from(t.a.clone());
    let b = BigInt::from(t.b.clone());
    let c = BigInt::from(t.c.clone());
    &a * &a + &b * &b + &c * &c - BigInt::from(3) * a * b * c
}

/// First Vieta move, (a, b, c) to (b, c, 3bc - a).
///
/// Errors when 3bc < a, which can only happen for triples given in a
/// decreasing order with a degenerate small tail.
pub fn vieta1(t: &Triple) -> Result<Triple, MarkoffError> {
    let replaced = BigInt::from(3u32) * BigInt::from(t.b.clone()) * BigInt::from(t.c.clone())
        - BigInt::from(t.a.clone());
    if replaced.is_negative() {
        return Err(MarkoffError::NegativeComponent(replaced));
    }
    Ok(Triple::new(
        t.b.clone(),
        t.c.clone(),
        replaced.to_biguint().expect("non-negative by check"),
    ))
}

/// Second Vieta move, (a, b, c) to (a, c, 3ac - b).
pub fn vieta2(t: &Triple) -> Result<Triple, MarkoffError> {
    let replaced = BigInt::from(3u32) * BigInt::from(t.a.clone()) * BigInt::from(t.c.clone())
        - BigInt::from(t.b.clone());
    if replaced.is_negative() {
        return Err(MarkoffError::NegativeComponent(replaced));
    }
    Ok(Triple::new(
        t.a.clone(),
        t.c.clone(),
        replaced.to_biguint().expect("non-negative by check"),
    ))
}

/// Third Vieta move, (a, b, c) to (3ab - c, a, b), reordered.
///
/// This is the shrinking move. It refuses to run when 3ab - c < 0 and
/// also on the exact boundary 3ab = c, where the result would contain a
/// zero component; an ordered triple on that boundary is minimal, and
/// minimal triples are tree roots with no parent to move to.
pub fn vieta3(t: &Triple) -> Result<OrderedTriple, MarkoffError> {
    let replaced = BigInt::from(3u32) * BigInt::from(t.a.clone()) * BigInt::from(t.b.clone())
        - BigInt::from(t.c.clone());
    if replaced.is_negative() {
        return Err(MarkoffError::NegativeComponent(replaced));
    }
    if replaced.is_zero() {
        return Err(MarkoffError::MinimalBoundary);
    }
    Ok(order_triple(&Triple::new(
        replaced.to_biguint().expect("positive by check"),
        t.a.clone(),
        t.b.clone(),
    )))
}

/// Sorts the components into non-decreasing order.
pub fn order_triple(t: &Triple) -> OrderedTriple {
    let mut v = [t.a.clone(), t.b.clone(), t.c.clone()];
    v.sort();
    let [a, b, c] = v;
    OrderedTriple(Triple::new(a, b, c))
}

/// The gap c - 3ab of an ordered triple; non-negative exactly for
/// minimal triples.
pub fn phi_gap(t: &OrderedTriple) -> BigInt {
    BigInt::from(t.c.clone())
        - BigInt::from(3u32) * BigInt::from(t.a.clone()) * BigInt::from(t.b.clone())
}

/// Whether an ordered triple is minimal, that is c >= 3ab.
pub fn is_minimal(t: &OrderedTriple) -> bool {
    !phi_gap(t).is_negative()
}

/// The unique a completing (b, c) to an ordered non-minimal triple with
/// positive Markoff value, if it exists, together with that value.
///
/// The admissible interval for a has irrational endpoints, but its only
/// possible integer is floor(c / 3b) + 1, so membership is decided by
/// the equivalent integer tests: 3ab > c, a <= b, and M(a, b, c) > 0.
/// The interval is too short to contain a second integer.
pub fn unique_nonminimal_a(b: &BigUint, c: &BigUint) -> Option<(BigUint, BigInt)> {
    assert!(!b.is_zero() && b <= c, "requires 1 <= b <= c");
    let a = c / (BigUint::from(3u32) * b) + BigUint::from(1u32);
    if !(BigUint::from(3u32) * &a * b > *c && a <= *b) {
        return None;
    }
    let m = markoff_value(&Triple::new(a.clone(), b.clone(), c.clone()));
    if m.is_positive() {
        Some((a, m))
    } else {
        None
    }
}

/// The branch [t, v2(t), v2(v2(t)), ...] with count moves applied, so
/// count + 1 triples in total. All elements share one Markoff value.
pub fn branch(root: &Triple, count: u64) -> Result<Vec<Triple>, MarkoffError> {
    let mut out = Vec::with_capacity(count as usize + 1);
    out.push(root.clone());
    for _ in 0..count {
        let next = vieta2(out.last().expect("non-empty"))?;
        out.push(next);
    }
    Ok(out)
}

/// Applies vieta3 until the triple is minimal, returning the minimal
/// root and the number of steps taken.
///
/// Requires strictly positive components. For m > 0 the descent always
/// terminates; the budget guards against miscalls such as m = 0 triples,
/// where (1,1,1) and (1,1,2) are non-minimal and feed into each other
/// forever (no positive m = 0 triple is minimal).
pub fn descend_to_root(
    t: &OrderedTriple,
    max_steps: u64,
) -> Result<(OrderedTriple, u64), MarkoffError> {
    if !t.is_positive() {
        return Err(MarkoffError::ZeroComponent(t.as_triple().clone()));
    }
    let mut cur = t.clone();
    let mut steps = 0u64;
    while !is_minimal(&cur) {
        if steps == max_steps {
            return Err(MarkoffError::StepBudgetExhausted {
                start: t.as_triple().clone(),
                budget: max_steps,
            });
        }
        cur = vieta3(&cur).expect("non-minimal ordered triples have 3ab - c > 0");
        steps += 1;
    }
    Ok((cur, steps))
}

/// Breadth-first enumeration of the m-tree fragment under a minimal
/// root, bounded by component size and depth.
///
/// Children are v1(t) and v2(t); when a = b the two coincide as ordered
/// triples and the child is emitted once, labeled [`VietaMove::V1V2`].
/// A child is pruned when its largest component exceeds max_component.
/// The output order is deterministic: by depth, then lexicographically
/// by triple within each depth. Parent links are indices into the
/// returned list.
pub fn tree_enumerate(
    root: &OrderedTriple,
    max_component: &BigUint,
    max_depth: u64,
) -> Result<Vec<TreeNode>, MarkoffError> {
    if !is_minimal(root) {
        return Err(MarkoffError::NonMinimalRoot {
            root: root.as_triple().clone(),
            gap: phi_gap(root),
        });
    }
    let mut nodes = vec![TreeNode {
        triple: root.clone(),
        parent: None,
        produced_by: VietaMove::Root,
        depth: 0,
    }];
    let mut level_start = 0usize;
    for depth in 0..max_depth {
        let level_end = nodes.len();
        let mut children = Vec::new();
        #[allow(clippy::needless_range_loop)]
        for parent_idx in level_start..level_end {
            let t = nodes[parent_idx].triple.clone();
            let push = |child: Triple, mv: VietaMove, children: &mut Vec<TreeNode>| {
                let child = order_triple(&child);
                if child.c <= *max_component {
                    children.push(TreeNode {
                        triple: child,
                        parent: Some(parent_idx),
                        produced_by: mv,
                        depth: depth + 1,
                    });
                }
            };
            if t.a == t.b {
                push(vieta1(&t)?, VietaMove::V1V2, &mut children);
            } else {
                push(vieta1(&t)?, VietaMove::V1, &mut children);
                push(vieta2(&t)?, VietaMove::V2, &mut children);
            }
        }
        if children.is_empty() {
            break;
        }
        children.sort_by(|x, y| x.triple.cmp(&y.triple));
        level_start = level_end;
        nodes.extend(children);
    }
    Ok(nodes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn t(a: u64, b: u64, c: u64) -> Triple {
        Triple::from((a, b, c))
    }

    fn ot(a: u64, b: u64, c: u64) -> OrderedTriple {
        OrderedTriple::new(t(a, b, c)).expect("test triple must be ordered")
    }

    #[test]
    fn markoff_values_of_figure_roots() {
        assert_eq!(markoff_value(&t(4, 6, 72)), BigInt::from(52));
        assert_eq!(markoff_value(&t(1, 1, 6)), BigInt::from(20));
        assert_eq!(markoff_value(&t(0, 0, 0)), BigInt::zero());
        assert_eq!(markoff_value(&t(1, 6, 21)), BigInt::from(100));
        assert_eq!(markoff_value(&t(3, 6, 55)), BigInt::from(100));
        assert_eq!(markoff_value(&t(6, 8, 144)), BigInt::from(100));
        assert_eq!(markoff_value(&t(1, 2, 5)), BigInt::zero());
        assert_eq!(markoff_value(&t(2, 2, 2)), BigInt::from(-12));
    }

    #[test]
    fn vieta_moves_reproduce_figure_edges() {
        assert_eq!(vieta1(&t(4, 6, 72)).unwrap(), t(6, 72, 1292));
        assert_eq!(vieta2(&t(6, 72, 1292)).unwrap(), t(6, 1292, 23184));
        assert_eq!(vieta3(&t(1, 6, 17)).unwrap(), ot(1, 1, 6));
        assert_eq!(vieta3(&t(6, 72, 1292)).unwrap(), ot(4, 6, 72));
    }

    #[test]
    fn vieta3_rejects_minimal_inputs() {
        assert!(matches!(
            vieta3(&t(1, 1, 6)),
            Err(MarkoffError::NegativeComponent(v)) if v == BigInt::from(-3)
        ));
        assert!(matches!(
            vieta3(&t(4, 6, 72)),
            Err(MarkoffError::MinimalBoundary)
        ));
    }

    #[test]
    fn growing_moves_reject_degenerate_unordered_input() {
        assert!(matches!(
            vieta1(&t(5, 1, 0)),
            Err(MarkoffError::NegativeComponent(_))
        ));
        assert!(matches!(
            vieta2(&t(0, 5, 0)),
            Err(MarkoffError::NegativeComponent(_))
        ));
    }

    #[test]
    fn ordering_constructors() {
        assert_eq!(order_triple(&t(8, 6, 144)), ot(6, 8, 144));
        assert_eq!(order_triple(&t(1, 1, 6)), ot(1, 1, 6));
        assert_eq!(order_triple(&t(3, 2, 1)), ot(1, 2, 3));
        assert!(matches!(
            OrderedTriple::new(t(2, 1, 3)),
            Err(MarkoffError::Unordered(_))
        ));
    }

    #[test]
    fn phi_gap_and_minimality() {
        assert_eq!(phi_gap(&ot(4, 6, 72)), BigInt::zero());
        assert!(is_minimal(&ot(4, 6, 72)));
        assert_eq!(phi_gap(&ot(1, 6, 17)), BigInt::from(-1));
        assert!(!is_minimal(&ot(1, 6, 17)));
        assert_eq!(phi_gap(&ot(1, 6, 21)), BigInt::from(3));
        assert!(is_minimal(&ot(1, 6, 21)));
    }

    #[test]
    fn unique_completion_examples() {
        let found = unique_nonminimal_a(&BigUint::from(17u32), &BigUint::from(305u32));
        assert_eq!(found, Some((BigUint::from(6u32), BigInt::from(20))));
        let found = unique_nonminimal_a(&BigUint::from(72u32), &BigUint::from(1292u32));
        assert_eq!(found, Some((BigUint::from(6u32), BigInt::from(52))));
        assert_eq!(
            unique_nonminimal_a(&BigUint::from(2u32), &BigUint::from(8u32)),
            None
        );
        assert_eq!(
            unique_nonminimal_a(&BigUint::from(1u32), &BigUint::from(1u32)),
            None
        );
    }

    #[test]
    fn branches_follow_bold_paths() {
        let b = branch(&t(6, 72, 1292), 2).unwrap();
        assert_eq!(
            b,
            vec![t(6, 72, 1292), t(6, 1292, 23184), t(6, 23184, 416020)]
        );
        let m = markoff_value(&b[0]);
        assert!(b.iter().all(|x| markoff_value(x) == m));

        let pell = branch(&t(1, 1, 2), 2).unwrap();
        assert_eq!(pell, vec![t(1, 1, 2), t(1, 2, 5), t(1, 5, 13)]);

        assert_eq!(branch(&t(4, 6, 72), 0).unwrap(), vec![t(4, 6, 72)]);
    }

    #[test]
    fn descent_reaches_figure_roots() {
        assert_eq!(
            descend_to_root(&ot(6, 1292, 23184), 100).unwrap(),
            (ot(4, 6, 72), 2)
        );
        assert_eq!(
            descend_to_root(&ot(1, 6, 17), 100).unwrap(),
            (ot(1, 1, 6), 1)
        );
        assert_eq!(
            descend_to_root(&ot(1, 6, 21), 100).unwrap(),
            (ot(1, 6, 21), 0)
        );
    }

    #[test]
    fn descent_guards() {
        // The positive m = 0 triples have no minimal root to land on.
        assert!(matches!(
            descend_to_root(&ot(1, 1, 2), 50),
            Err(MarkoffError::StepBudgetExhausted { budget: 50, .. })
        ));
        assert!(matches!(
            descend_to_root(&ot(0, 1, 1), 50),
            Err(MarkoffError::ZeroComponent(_))
        ));
    }

    fn find<'a>(nodes: &'a [TreeNode], trip: &OrderedTriple) -> Option<&'a TreeNode> {
        nodes.iter().find(|n| n.triple == *trip)
    }

    #[test]
    fn tree_of_52_contains_figure_fragment_and_sibling() {
        let huge = BigUint::from(10u64).pow(12);
        let nodes = tree_enumerate(&ot(4, 6, 72), &huge, 3).unwrap();
        assert_eq!(nodes.len(), 15, "full branching: 1 + 2 + 4 + 8");
        let expect = [
            (4u64, 6u64, 72u64, 0u64),
            (4, 72, 858, 1),
            (6, 72, 1292, 1),
            (6, 1292, 23184, 2),
            (72, 1292, 279066, 2),
            (6, 23184, 416020, 3),
            (1292, 23184, 89861178, 3),
            (72, 279066, 60276964, 3),
            (1292, 279066, 1081659744, 3),
        ];
        for (a, b, c, depth) in expect {
            let node =
                find(&nodes, &ot(a, b, c)).unwrap_or_else(|| panic!("missing node ({a},{b},{c})"));
            assert_eq!(node.depth, depth, "depth of ({a},{b},{c})");
        }
        let bold_leaf = find(&nodes, &ot(6, 23184, 416020)).unwrap();
        let bold_parent = &nodes[bold_leaf.parent.unwrap()];
        assert_eq!(bold_parent.triple, ot(6, 1292, 23184));
        assert_eq!(bold_leaf.produced_by, VietaMove::V2);
    }

    #[test]
    fn tree_of_20_is_exactly_the_figure() {
        let huge = BigUint::from(10u64).pow(9);
        let nodes = tree_enumerate(&ot(1, 1, 6), &huge, 3).unwrap();
        let got: Vec<(u64, u64, u64)> = nodes
            .iter()
            .map(|n| {
                let digits = |v: &BigUint| v.to_u64_digits().first().copied().unwrap_or(0);
                (
                    digits(&n.triple.a),
                    digits(&n.triple.b),
                    digits(&n.triple.c),
                )
            })
            .collect();
        // Depth levels, lexicographic inside each level.
        assert_eq!(
            got,
            vec![
                (1, 1, 6),
                (1, 6, 17),
                (1, 17, 45),
                (6, 17, 305),
                (1, 45, 118),
                (6, 305, 5473),
                (17, 45, 2294),
                (17, 305, 15549),
            ]
        );
        assert_eq!(nodes[1].produced_by, VietaMove::V1V2, "a = b dedupe");
        assert_eq!(nodes[1].parent, Some(0));
    }

    #[test]
    fn tree_of_100_reaches_the_large_leaf() {
        let huge = BigUint::from(10u64).pow(12);
        let nodes = tree_enumerate(&ot(6, 8, 144), &huge, 3).unwrap();
        // The v1 child of (144, 2584, 1116282): 3*2584*1116282 - 144.
        let leaf = ot(2584, 1116282, 8653417920);
        let node = find(&nodes, &leaf).expect("large leaf present");
        assert_eq!(node.depth, 3);
        assert_eq!(markoff_value(leaf.as_triple()), BigInt::from(100));
    }

    #[test]
    fn tree_respects_component_bound() {
        let nodes = tree_enumerate(&ot(1, 1, 6), &BigUint::from(500u32), 5).unwrap();
        assert!(nodes.iter().all(|n| n.triple.c <= BigUint::from(500u32)));
        assert!(find(&nodes, &ot(6, 17, 305)).is_some());
        assert!(find(&nodes, &ot(6, 305, 5473)).is_none());
    }

    #[test]
    fn tree_rejects_non_minimal_root() {
        assert!(matches!(
            tree_enumerate(&ot(1, 6, 17), &BigUint::from(1000u32), 2),
            Err(MarkoffError::NonMinimalRoot { .. })
        ));
    }

    #[test]
    fn tree_nodes_recover_parents_by_vieta3() {
        let huge = BigUint::from(10u64).pow(12);
        for root in [ot(4, 6, 72), ot(1, 1, 6), ot(1, 6, 21)] {
            let nodes = tree_enumerate(&root, &huge, 4).unwrap();
            for node in &nodes {
                match node.parent {
                    None => assert_eq!(node.produced_by, VietaMove::Root),
                    Some(p) => {
                        let recovered = vieta3(&node.triple).expect("children are non-minimal");
                        assert_eq!(recovered, nodes[p].triple);
                    }
                }
            }
        }
    }

    #[test]
    fn descent_steps_equal_tree_depth() {
        let huge = BigUint::from(10u64).pow(15);
        let root = ot(1, 1, 6);
        for node in tree_enumerate(&root, &huge, 4).unwrap() {
            let (found, steps) = descend_to_root(&node.triple, 100).unwrap();
            assert_eq!(found, root);
            assert_eq!(steps, node.depth);
        }
    }

    #[test]
    fn vieta_moves_preserve_markoff_value_on_random_triples() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        for _ in 0..10_000 {
            let trip = t(
                rng.gen_range(0..=1_000_000),
                rng.gen_range(0..=1_000_000),
                rng.gen_range(0..=1_000_000),
            );
            let m = markoff_value(&trip);
            if let Ok(moved) = vieta1(&trip) {
                assert_eq!(markoff_value(&moved), m, "v1 at {trip}");
            }
            if let Ok(moved) = vieta2(&trip) {
                assert_eq!(markoff_value(&moved), m, "v2 at {trip}");
            }
            if let Ok(moved) = vieta3(&trip) {
                assert_eq!(markoff_value(moved.as_triple()), m, "v3 at {trip}");
            }
        }
    }

    #[test]
    fn uniqueness_scan_small_range() {
        // Independent count of admissible a values, checked against the
        // single-candidate computation.
        for b in 1u64..=120 {
            for c in b..=300 {
                let mut hits = Vec::new();
                for a in 1..=b {
                    if 3 * a * b > c {
                        let m = markoff_value(&t(a, b, c));
                        if m.is_positive() {
                            hits.push(a);
                        } else {
                            break;
                        }
                    }
                }
                assert!(hits.len() <= 1, "multiple completions at b={b}, c={c}");
                let got = unique_nonminimal_a(&BigUint::from(b), &BigUint::from(c));
                match hits.first() {
                    Some(&a) => {
                        let (found_a, m) = got.expect("scan found a completion");
                        assert_eq!(found_a, BigUint::from(a));
                        assert!(m.is_positive());
                    }
                    None => assert_eq!(got, None),
                }
            }
        }
    }

    proptest! {
        #[test]
        fn inverse_property_on_nonminimal(a in 1u64..=400, b in 1u64..=400, c in 1u64..=400) {
            let ordered = order_triple(&t(a, b, c));
            if !is_minimal(&ordered) {
                let up1 = vieta1(&ordered).unwrap();
                prop_assert_eq!(vieta3(&up1).unwrap(), ordered.clone());
                let up2 = vieta2(&ordered).unwrap();
                prop_assert_eq!(vieta3(&up2).unwrap(), ordered);
            }
        }

        #[test]
        fn children_of_positive_ordered_triples_grow(a in 1u64..=500, b in 1u64..=500, c in 1u64..=500) {
            let ordered = order_triple(&t(a, b, c));
            for up in [vieta1(&ordered).unwrap(), vieta2(&ordered).unwrap()] {
                prop_assert!(up.a <= up.b && up.b <= up.c, "child {} unordered", up);
                prop_assert!(up.c > ordered.c, "child {} did not grow", up);
            }
        }

        #[test]
        fn order_triple_sorts_and_is_idempotent(a in 0u64..=100, b in 0u64..=100, c in 0u64..=100) {
            let ordered = order_triple(&t(a, b, c));
            prop_assert!(ordered.a <= ordered.b && ordered.b <= ordered.c);
            prop_assert_eq!(order_triple(ordered.as_triple()), ordered);
        }
    }
}

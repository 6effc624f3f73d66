//! Difference-constraint feasibility with exact rational witnesses and
//! negative-cycle certificates.
//!
//! A system is a conjunction of constraints `value(u) − value(v) ≤ c` or
//! `value(u) − value(v) < c` with integer offsets.  It is feasible exactly
//! when the constraint graph has no cycle of negative total offset and no
//! cycle of zero total offset containing a strict edge.
//!
//! Strict edges are handled without epsilon guessing: offsets are scaled by
//! `vars + 1` and each strict edge is tightened by one.  A simple cycle has at
//! most `vars` edges, so a scaled cycle is negative exactly when the original
//! cycle is forbidden, and dividing shortest-path potentials back by
//! `vars + 1` yields a rational witness that satisfies every strict
//! constraint strictly.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_rational::BigRational;

/// `value(minuend) − value(subtrahend) ≤ offset`, strict when `strict`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Constraint {
    pub minuend: usize,
    pub subtrahend: usize,
    pub offset: i64,
    pub strict: bool,
}

impl Constraint {
    pub fn satisfied_by(&self, values: &[BigRational]) -> bool {
        let diff = &values[self.minuend] - &values[self.subtrahend];
        let bound = BigRational::from_integer(BigInt::from(self.offset));
        if self.strict {
            diff < bound
        } else {
            diff <= bound
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct DifferenceConstraintSystem {
    vars: usize,
    constraints: Vec<Constraint>,
}

impl DifferenceConstraintSystem {
    pub fn new(vars: usize) -> Self {
        Self {
            vars,
            constraints: Vec::new(),
        }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    /// Adds `value(minuend) − value(subtrahend) ≤ offset` (or `<`).
    pub fn add(&mut self, minuend: usize, subtrahend: usize, offset: i64, strict: bool) {
        assert!(minuend < self.vars && subtrahend < self.vars, "variable out of range");
        self.constraints.push(Constraint {
            minuend,
            subtrahend,
            offset,
            strict,
        });
    }

    /// Encodes `value(minuend) − value(subtrahend) = offset` as two opposite
    /// non-strict constraints.
    pub fn add_equality(&mut self, minuend: usize, subtrahend: usize, offset: i64) {
        self.add(minuend, subtrahend, offset, false);
        self.add(subtrahend, minuend, -offset, false);
    }
}

#[derive(Clone, Debug)]
pub struct FeasibilityResult {
    pub feasible: bool,
    /// Exact assignment satisfying every constraint; present when feasible.
    pub witness: Option<Vec<BigRational>>,
    /// Constraint cycle with total offset < 0, or = 0 containing a strict
    /// edge; present when infeasible.  Consecutive entries chain as
    /// `certificate[t].minuend == certificate[t + 1].subtrahend`, cyclically.
    pub certificate: Option<Vec<Constraint>>,
    /// Connected components of the equality subgraph (pairs of opposite
    /// non-strict constraints force a fixed difference); present when
    /// feasible.  Isolated variables count as components of their own.
    pub dimension: Option<usize>,
}

/// Bellman-Ford relaxation from a virtual source connected to every variable.
pub fn feasibility(system: &DifferenceConstraintSystem) -> FeasibilityResult {
    let vars = system.vars();
    let scale = vars as i128 + 1;
    let mut dist = vec![0i128; vars];
    let mut pred: Vec<Option<usize>> = vec![None; vars];

    let mut cycle_entry = None;
    for round in 0..=vars {
        let mut last_relaxed = None;
        for (index, c) in system.constraints().iter().enumerate() {
            let weight = c.offset as i128 * scale - i128::from(c.strict);
            let candidate = dist[c.subtrahend] + weight;
            if candidate < dist[c.minuend] {
                dist[c.minuend] = candidate;
                pred[c.minuend] = Some(index);
                last_relaxed = Some(c.minuend);
            }
        }
        if last_relaxed.is_none() {
            break;
        }
        if round == vars {
            cycle_entry = last_relaxed;
        }
    }

    if let Some(entry) = cycle_entry {
        let certificate = extract_cycle(system, &pred, entry);
        return FeasibilityResult {
            feasible: false,
            witness: None,
            certificate: Some(certificate),
            dimension: None,
        };
    }

    let denominator = BigInt::from(scale);
    let witness: Vec<BigRational> = dist
        .iter()
        .map(|&potential| BigRational::new(BigInt::from(potential), denominator.clone()))
        .collect();

    FeasibilityResult {
        feasible: true,
        witness: Some(witness),
        certificate: None,
        dimension: Some(equality_components(system)),
    }
}

/// Walks predecessor edges from a vertex relaxed on the extra pass; after
/// `vars + 1` steps the walk is inside a cycle of the predecessor graph.
fn extract_cycle(
    system: &DifferenceConstraintSystem,
    pred: &[Option<usize>],
    entry: usize,
) -> Vec<Constraint> {
    let constraints = system.constraints();
    let mut vertex = entry;
    for _ in 0..=system.vars() {
        let edge = pred[vertex].expect("relaxed vertex has a predecessor");
        vertex = constraints[edge].subtrahend;
    }

    let start = vertex;
    let mut cycle = Vec::new();
    loop {
        let edge = pred[vertex].expect("cycle vertex has a predecessor");
        cycle.push(constraints[edge].clone());
        vertex = constraints[edge].subtrahend;
        if vertex == start {
            break;
        }
    }
    cycle.reverse();

    debug_assert!(cycle_is_forbidden(&cycle), "extracted cycle must be forbidden");
    cycle
}

/// Total offset < 0, or = 0 with at least one strict edge, with consecutive
/// entries chained minuend-to-subtrahend.
pub fn cycle_is_forbidden(cycle: &[Constraint]) -> bool {
    if cycle.is_empty() {
        return false;
    }
    for (index, c) in cycle.iter().enumerate() {
        let next = &cycle[(index + 1) % cycle.len()];
        if c.minuend != next.subtrahend {
            return false;
        }
    }
    let total: i128 = cycle.iter().map(|c| c.offset as i128).sum();
    total < 0 || (total == 0 && cycle.iter().any(|c| c.strict))
}

fn equality_components(system: &DifferenceConstraintSystem) -> usize {
    let lax: HashSet<(usize, usize, i64)> = system
        .constraints()
        .iter()
        .filter(|c| !c.strict)
        .map(|c| (c.minuend, c.subtrahend, c.offset))
        .collect();

    let mut parent: Vec<usize> = (0..system.vars()).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let root = find(parent, parent[x]);
            parent[x] = root;
        }
        parent[x]
    }

    for c in system.constraints() {
        if c.strict || c.minuend == c.subtrahend {
            continue;
        }
        if lax.contains(&(c.subtrahend, c.minuend, -c.offset)) {
            let a = find(&mut parent, c.minuend);
            let b = find(&mut parent, c.subtrahend);
            parent[a] = b;
        }
    }

    let mut roots = HashSet::new();
    for x in 0..system.vars() {
        let root = find(&mut parent, x);
        roots.insert(root);
    }
    roots.len()
}

//! Pareto dominance primitives: dominance testing, fast non-dominated
//! sorting, and crowding distance, after Deb, Pratap, Agarwal and Meyarivan,
//! "A fast and elitist multiobjective genetic algorithm: NSGA-II"
//! (IEEE Transactions on Evolutionary Computation 6(2), 2002).
//!
//! All objectives are minimized.

/// A candidate solution as it flows through the pipeline: a decision vector
/// plus the objectives it was last evaluated under, if any.
#[derive(Debug, Clone, PartialEq)]
pub struct Individual {
    /// Decision vector.
    pub x: Vec<f64>,
    /// Objective values from the most recent evaluation.
    pub f: Option<Vec<f64>>,
    /// Environment time `t` the objectives in `f` were evaluated at.
    pub t: f64,
}

impl Individual {
    /// A fresh, unevaluated individual.
    pub fn new(x: Vec<f64>) -> Self {
        Individual { x, f: None, t: 0.0 }
    }

    /// Objective values; panics if the individual has not been evaluated.
    pub fn objectives(&self) -> &[f64] {
        self.f
            .as_deref()
            .expect("individual has not been evaluated")
    }
}

/// Does `a` Pareto-dominate `b`? True iff `a` is no worse in every objective
/// and strictly better in at least one. Identical vectors dominate nothing.
pub fn dominates(a: &[f64], b: &[f64]) -> bool {
    assert_eq!(
        a.len(),
        b.len(),
        "dominance needs objective vectors of equal length"
    );
    let mut strictly_better = false;
    for (&ai, &bi) in a.iter().zip(b) {
        if ai > bi {
            return false;
        }
        if ai < bi {
            strictly_better = true;
        }
    }
    strictly_better
}

/// Population indices grouped into non-dominated fronts, best front first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrontPartition {
    /// `fronts[0]` is the non-dominated set of the whole population,
    /// `fronts[1]` the non-dominated set of the remainder, and so on.
    /// Indices inside each front keep the input order.
    pub fronts: Vec<Vec<usize>>,
}

impl FrontPartition {
    /// 0-based front rank of every population member.
    pub fn ranks(&self, population_len: usize) -> Vec<usize> {
        let mut ranks = vec![usize::MAX; population_len];
        for (rank, front) in self.fronts.iter().enumerate() {
            for &i in front {
                ranks[i] = rank;
            }
        }
        ranks
    }
}

/// Fast non-dominated sorting over a population of objective vectors.
///
/// Every index appears in exactly one front; each front is internally
/// mutually non-dominating and is listed in input order.
pub fn fast_nondominated_sort(objectives: &[Vec<f64>]) -> FrontPartition {
    assert!(!objectives.is_empty(), "cannot sort an empty population");
    let n = objectives.len();

    // dominated_by[i] lists the members i dominates; domination_count[j]
    // counts how many members dominate j.
    let mut dominated_by: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut domination_count = vec![0usize; n];
    for i in 0..n {
        for j in (i + 1)..n {
            if dominates(&objectives[i], &objectives[j]) {
                dominated_by[i].push(j);
                domination_count[j] += 1;
            } else if dominates(&objectives[j], &objectives[i]) {
                dominated_by[j].push(i);
                domination_count[i] += 1;
            }
        }
    }

    let mut fronts = Vec::new();
    let mut current: Vec<usize> = (0..n).filter(|&i| domination_count[i] == 0).collect();
    while !current.is_empty() {
        let mut next = Vec::new();
        for &i in &current {
            for &j in &dominated_by[i] {
                domination_count[j] -= 1;
                if domination_count[j] == 0 {
                    next.push(j);
                }
            }
        }
        // Ascending index = input order, independent of release order above.
        next.sort_unstable();
        fronts.push(std::mem::replace(&mut current, next));
    }
    FrontPartition { fronts }
}

/// Crowding distance of every member of one front.
///
/// Boundary members of each objective get `+inf`; interior members
/// accumulate the normalized side lengths of the cuboid spanned by their
/// neighbours. Fronts of one or two members are all-infinite; an objective
/// with zero range across the front contributes nothing.
pub fn crowding_distance(front: &[Vec<f64>]) -> Vec<f64> {
    assert!(!front.is_empty(), "crowding distance of an empty front");
    let n = front.len();
    if n <= 2 {
        return vec![f64::INFINITY; n];
    }
    let m = front[0].len();
    let mut distance = vec![0.0_f64; n];
    for obj in 0..m {
        let mut order: Vec<usize> = (0..n).collect();
        // Stable sort keeps tied values in input order, so results are
        // deterministic for duplicated points.
        order.sort_by(|&a, &b| front[a][obj].partial_cmp(&front[b][obj]).unwrap());
        let lo = front[order[0]][obj];
        let hi = front[order[n - 1]][obj];
        distance[order[0]] = f64::INFINITY;
        distance[order[n - 1]] = f64::INFINITY;
        let range = hi - lo;
        if range <= 0.0 {
            continue;
        }
        for k in 1..n - 1 {
            let i = order[k];
            if distance[i].is_finite() {
                distance[i] += (front[order[k + 1]][obj] - front[order[k - 1]][obj]) / range;
            }
        }
    }
    distance
}

use std::fmt;

use serde::Serialize;

use super::catalog;
use super::{canonical_key, mutation_class, ClassStatus, MutationClassResult, Quiver, QuiverError, DEFAULT_MAX_WEIGHT};

/// Names of Dynkin, affine and exceptional diagrams.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum DiagramName {
    A(usize),
    D(usize),
    E(usize),
    /// Affine `A_n^(1)` on `n + 1` vertices; `A_1^(1)` is the Kronecker quiver.
    AffineA(usize),
    AffineD(usize),
    AffineE(usize),
    /// Elliptic `E_n^(1,1)`.
    Elliptic(usize),
    X6,
    X7,
    /// Generalized Kronecker quiver with `m >= 3` arrows.
    Kronecker(u32),
}

impl fmt::Display for DiagramName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DiagramName::A(n) => write!(f, "A{n}"),
            DiagramName::D(n) => write!(f, "D{n}"),
            DiagramName::E(n) => write!(f, "E{n}"),
            DiagramName::AffineA(n) => write!(f, "A{n}^(1)"),
            DiagramName::AffineD(n) => write!(f, "D{n}^(1)"),
            DiagramName::AffineE(n) => write!(f, "E{n}^(1)"),
            DiagramName::Elliptic(n) => write!(f, "E{n}^(1,1)"),
            DiagramName::X6 => write!(f, "X6"),
            DiagramName::X7 => write!(f, "X7"),
            DiagramName::Kronecker(m) => write!(f, "K{m}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Classification {
    Dynkin(DiagramName),
    Affine(DiagramName),
    ExceptionalFiniteMut(DiagramName),
    /// Finite mutation type, neither acyclic type nor exceptional: a surface type.
    FiniteMutOther,
    InfiniteMut,
    Unknown,
}

impl Classification {
    pub fn is_finite_mutation(&self) -> bool {
        !matches!(self, Classification::InfiniteMut | Classification::Unknown)
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::Dynkin(d) => write!(f, "Dynkin({d})"),
            Classification::Affine(d) => write!(f, "Affine({d})"),
            Classification::ExceptionalFiniteMut(d) => write!(f, "ExceptionalFiniteMut({d})"),
            Classification::FiniteMutOther => write!(f, "FiniteMutOther"),
            Classification::InfiniteMut => write!(f, "InfiniteMut"),
            Classification::Unknown => write!(f, "Unknown"),
        }
    }
}

/// Mutation type of a connected quiver, decided from its mutation class
/// enumerated with at most `budget` representatives.
pub fn classify(q: &Quiver, budget: usize) -> Result<Classification, QuiverError> {
    classify_with_class(q, budget).map(|(c, _)| c)
}

/// As [`classify`], also returning the enumerated class.
pub fn classify_with_class(q: &Quiver, budget: usize) -> Result<(Classification, MutationClassResult), QuiverError> {
    if !q.is_connected() {
        return Err(QuiverError::Disconnected);
    }
    let class = mutation_class(q, budget, DEFAULT_MAX_WEIGHT);
    let verdict = match class.status {
        ClassStatus::MultiplicityBlowup { .. } => Classification::InfiniteMut,
        ClassStatus::BudgetExceeded => Classification::Unknown,
        ClassStatus::Exhausted => decide(&class),
    };
    Ok((verdict, class))
}

fn decide(class: &MutationClassResult) -> Classification {
    let n = class.representatives[0].n();
    if let Some(acyclic) = class.representatives.iter().find(|r| r.is_acyclic()) {
        if let Some(c) = acyclic_type(acyclic) {
            return c;
        }
    }
    let keys: Vec<Vec<i64>> = class.representatives.iter().map(canonical_key).collect();
    for (name, q) in exceptional_of_rank(n) {
        let key = canonical_key(&q);
        if keys.contains(&key) {
            return Classification::ExceptionalFiniteMut(name);
        }
    }
    Classification::FiniteMutOther
}

fn exceptional_of_rank(n: usize) -> Vec<(DiagramName, Quiver)> {
    let mut out = Vec::new();
    match n {
        6 => out.push((DiagramName::X6, catalog::x6())),
        7 => out.push((DiagramName::X7, catalog::x7())),
        _ => {}
    }
    for m in 6..=8 {
        if n == m + 2 {
            out.push((DiagramName::Elliptic(m), catalog::e_elliptic(m)));
        }
    }
    out
}

/// Dynkin or affine type of an acyclic quiver read off its underlying graph,
/// or `K_m` for rank-two quivers with `m >= 3` arrows.
fn acyclic_type(q: &Quiver) -> Option<Classification> {
    let n = q.n();
    if n == 1 {
        return Some(Classification::Dynkin(DiagramName::A(1)));
    }
    if n == 2 {
        return match q.max_weight() {
            1 => Some(Classification::Dynkin(DiagramName::A(2))),
            2 => Some(Classification::Affine(DiagramName::AffineA(1))),
            m => Some(Classification::ExceptionalFiniteMut(DiagramName::Kronecker(m))),
        };
    }
    if q.max_weight() > 1 {
        return None;
    }
    let adj: Vec<Vec<usize>> = (0..n).map(|v| (0..n).filter(|&w| q.b(v, w) != 0).collect()).collect();
    let edges: usize = adj.iter().map(Vec::len).sum::<usize>() / 2;
    let degree: Vec<usize> = adj.iter().map(Vec::len).collect();
    if edges == n {
        // connected with one cycle; affine A only if the graph is the cycle itself
        return degree.iter().all(|&d| d == 2).then_some(Classification::Affine(DiagramName::AffineA(n - 1)));
    }
    if edges != n - 1 {
        return None;
    }
    let branch: Vec<usize> = (0..n).filter(|&v| degree[v] >= 3).collect();
    match branch.as_slice() {
        [] => Some(Classification::Dynkin(DiagramName::A(n))),
        [c] => {
            let mut legs: Vec<usize> = adj[*c].iter().map(|&w| leg_length(&adj, *c, w)).collect();
            legs.sort_unstable();
            match legs.as_slice() {
                [1, 1, k] => Some(Classification::Dynkin(DiagramName::D(k + 3))),
                [1, 2, 2] => Some(Classification::Dynkin(DiagramName::E(6))),
                [1, 2, 3] => Some(Classification::Dynkin(DiagramName::E(7))),
                [1, 2, 4] => Some(Classification::Dynkin(DiagramName::E(8))),
                [2, 2, 2] => Some(Classification::Affine(DiagramName::AffineE(6))),
                [1, 3, 3] => Some(Classification::Affine(DiagramName::AffineE(7))),
                [1, 2, 5] => Some(Classification::Affine(DiagramName::AffineE(8))),
                [1, 1, 1, 1] => Some(Classification::Affine(DiagramName::AffineD(4))),
                _ => None,
            }
        }
        [c1, c2] => {
            let ok =
                [c1, c2].iter().all(|&&c| degree[c] == 3 && adj[c].iter().filter(|&&w| degree[w] == 1).count() == 2);
            ok.then_some(Classification::Affine(DiagramName::AffineD(n - 1)))
        }
        _ => None,
    }
}

/// Number of vertices on the leg leaving `centre` through `first`.
fn leg_length(adj: &[Vec<usize>], centre: usize, first: usize) -> usize {
    let (mut prev, mut cur, mut len) = (centre, first, 1);
    loop {
        let next: Vec<usize> = adj[cur].iter().copied().filter(|&w| w != prev).collect();
        match next.as_slice() {
            [w] => {
                prev = cur;
                cur = *w;
                len += 1;
            }
            _ => return len,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_examples() {
        assert_eq!(classify(&catalog::three_cycle(), 100).unwrap(), Classification::Dynkin(DiagramName::A(3)));
        assert_eq!(classify(&catalog::kronecker(2), 100).unwrap(), Classification::Affine(DiagramName::AffineA(1)));
        assert_eq!(
            classify(&catalog::kronecker(3), 100).unwrap(),
            Classification::ExceptionalFiniteMut(DiagramName::Kronecker(3))
        );
        assert_eq!(classify(&catalog::d(5), 1000).unwrap(), Classification::Dynkin(DiagramName::D(5)));
        assert_eq!(classify(&catalog::d_affine(5), 10000).unwrap(), Classification::Affine(DiagramName::AffineD(5)));
        assert_eq!(classify(&catalog::a_affine(2, 2), 1000).unwrap(), Classification::Affine(DiagramName::AffineA(3)));
    }

    #[test]
    fn disconnected_is_rejected() {
        assert_eq!(classify(&Quiver::empty(2), 10), Err(QuiverError::Disconnected));
    }

    #[test]
    fn tiny_budget_is_unknown() {
        assert_eq!(classify(&catalog::a(4), 3).unwrap(), Classification::Unknown);
    }

    #[test]
    fn x7_is_exceptional() {
        assert_eq!(classify(&catalog::x7(), 1000).unwrap(), Classification::ExceptionalFiniteMut(DiagramName::X7));
    }

    #[test]
    fn display_names() {
        assert_eq!(Classification::ExceptionalFiniteMut(DiagramName::X7).to_string(), "ExceptionalFiniteMut(X7)");
        assert_eq!(DiagramName::Elliptic(6).to_string(), "E6^(1,1)");
        assert_eq!(DiagramName::AffineA(1).to_string(), "A1^(1)");
    }
}

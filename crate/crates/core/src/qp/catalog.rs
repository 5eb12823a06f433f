//! Quivers with potentials used as test cases.
//!
//! Potentials from the literature are usually written right to left
//! (`gamma beta alpha` traverses `alpha` first); [`rtl`] converts such words.

use super::{Arrow, ArrowQuiver, Potential, Qp, DEFAULT_TRUNCATION};
use crate::Rational;

fn quiver(n: usize, arrows: &[(&str, usize, usize)]) -> ArrowQuiver {
    ArrowQuiver::new(n, arrows.iter().map(|&(name, tail, head)| Arrow { tail, head, name: name.to_string() }).collect())
        .expect("catalogue quiver")
}

/// Arrow ids of a right-to-left word, in traversal order.
pub fn rtl(q: &ArrowQuiver, word: &str) -> Vec<usize> {
    let mut ids = q.path(&word.split_whitespace().collect::<Vec<_>>()).expect("catalogue arrow");
    ids.reverse();
    ids
}

fn qp(q: ArrowQuiver, terms: &[&str]) -> Qp<Rational> {
    let one = Rational::from_integer(1.into());
    let p = Potential::from_terms(DEFAULT_TRUNCATION, terms.iter().map(|t| (one.clone(), rtl(&q, t))));
    Qp::new(q, p).expect("catalogue potential")
}

/// `a: 0 -> 1`, `b: 1 -> 2`, zero potential.
pub fn a3_linear() -> Qp<Rational> {
    qp(quiver(3, &[("a", 0, 1), ("b", 1, 2)]), &[])
}

/// `alpha: 0 -> 1`, `beta: 1 -> 2`, `gamma: 2 -> 0` with the cycle as potential.
pub fn three_cycle_full() -> Qp<Rational> {
    qp(quiver(3, &[("alpha", 0, 1), ("beta", 1, 2), ("gamma", 2, 0)]), &["gamma beta alpha"])
}

/// `K_m` from vertex 0 to vertex 1 with zero potential.
pub fn kronecker_zero(m: u32) -> Qp<Rational> {
    let names: Vec<String> = (1..=m).map(|i| format!("a{i}")).collect();
    let arrows: Vec<(&str, usize, usize)> = names.iter().map(|s| (s.as_str(), 0, 1)).collect();
    qp(quiver(2, &arrows), &[])
}

fn t1_quiver() -> ArrowQuiver {
    quiver(
        3,
        &[("alpha1", 0, 1), ("alpha2", 0, 1), ("beta1", 2, 0), ("beta2", 2, 0), ("gamma1", 1, 2), ("gamma2", 1, 2)],
    )
}

pub fn t1_w1() -> Qp<Rational> {
    qp(t1_quiver(), &["alpha1 beta1 gamma1", "alpha2 beta2 gamma2"])
}

pub fn t1_w1_prime() -> Qp<Rational> {
    qp(t1_quiver(), &["alpha1 beta2 gamma2", "alpha2 beta1 gamma2", "alpha2 beta2 gamma1"])
}

fn t2_quiver() -> ArrowQuiver {
    quiver(
        4,
        &[
            ("alpha1", 0, 1),
            ("alpha2", 0, 1),
            ("beta1", 2, 0),
            ("beta2", 3, 0),
            ("gamma1", 1, 2),
            ("gamma2", 1, 3),
            ("delta", 2, 3),
        ],
    )
}

pub fn t2_tame() -> Qp<Rational> {
    qp(t2_quiver(), &["alpha1 beta1 gamma1", "alpha2 beta2 gamma2"])
}

pub fn t2_wild() -> Qp<Rational> {
    qp(t2_quiver(), &["alpha1 beta1 gamma1", "alpha1 beta2 gamma2", "alpha2 beta2 delta gamma1"])
}

pub fn x6_w6() -> Qp<Rational> {
    let q = quiver(
        6,
        &[
            ("alpha1", 0, 2),
            ("alpha1'", 0, 2),
            ("alpha2", 1, 3),
            ("alpha2'", 1, 3),
            ("beta1", 2, 5),
            ("beta2", 3, 5),
            ("gamma1", 5, 0),
            ("gamma2", 5, 1),
            ("delta", 5, 4),
        ],
    );
    qp(q, &["gamma1 beta1 alpha1", "gamma2 beta2 alpha2", "gamma1 beta2 alpha2' gamma2 beta1 alpha1'"])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{canonicalize, catalog};

    #[test]
    fn underlying_quivers_match_the_catalogue() {
        let same = |a: &crate::Quiver, b: &crate::Quiver| canonicalize(a).quiver == canonicalize(b).quiver;
        assert!(same(&t1_w1().quiver().to_quiver().unwrap(), &catalog::t1()));
        assert!(same(&t2_tame().quiver().to_quiver().unwrap(), &catalog::t2()));
        // the pendant arrow points away from the centre here and towards it in the table
        let x6 = x6_w6().quiver().to_quiver().unwrap();
        assert!(!same(&x6, &catalog::x6()));
        assert!(same(&x6.mutate(4).unwrap(), &catalog::x6()));
        assert_eq!(t2_tame().quiver().to_quiver().unwrap(), catalog::t2());
    }
}

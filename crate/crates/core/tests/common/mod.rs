#![allow(dead_code)]

use clusterforge::cluster::{g_vector_of, mutate_gvector, GVector, Seed};
use clusterforge::quiver::{mutation_class, ClassStatus, DEFAULT_MAX_WEIGHT};
use clusterforge::{BigInt, Quiver};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn random_quiver(rng: &mut ChaCha8Rng, max_n: usize, max_w: i64) -> Quiver {
    let n = rng.gen_range(2..=max_n);
    let mut b = vec![vec![0i64; n]; n];
    for j in 0..n {
        for i in 0..j {
            let v = rng.gen_range(-max_w..=max_w);
            b[i][j] = v;
            b[j][i] = -v;
        }
    }
    Quiver::from_b_matrix(&b).unwrap()
}

/// `count` random quivers of finite mutation type with `2 <= n <= max_n`.
pub fn finite_mutation_corpus(seed: u64, count: usize, max_n: usize, max_w: i64) -> Vec<Quiver> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let q = random_quiver(&mut rng, max_n, max_w);
        if mutation_class(&q, 5000, DEFAULT_MAX_WEIGHT).status == ClassStatus::Exhausted {
            out.push(q);
        }
    }
    out
}

pub fn random_corpus(seed: u64, count: usize, max_n: usize, max_w: i64) -> Vec<Quiver> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_quiver(&mut rng, max_n, max_w)).collect()
}

/// g-vectors of the cluster reached by `path` from `q`, obtained by starting
/// from the unit vectors at the end of the path and transporting them back to
/// the initial seed with the transition rule.
pub fn transported_gvectors(q: &Quiver, path: &[usize]) -> Vec<GVector> {
    let n = q.n();
    let mut quivers = vec![q.clone()];
    for &k in path {
        let next = quivers.last().unwrap().mutate(k).unwrap();
        quivers.push(next);
    }
    (0..n)
        .map(|i| {
            let mut g: GVector = (0..n).map(|j| (i == j) as i64).collect();
            for (step, &k) in path.iter().enumerate().rev() {
                g = mutate_gvector(&g, k, &quivers[step + 1]);
            }
            g
        })
        .collect()
}

#[derive(Default, Debug)]
pub struct WalkReport {
    pub seeds: usize,
    pub variables_checked: usize,
    pub gvector_mismatches: usize,
    pub not_laurent: usize,
    pub not_positive: usize,
    pub errors: Vec<String>,
}

/// Visits every mutation path of length `<= depth` from the initial seed of
/// `q`, checking every cluster variable against the transported g-vectors,
/// the Laurent property and positivity.
pub fn walk_paths(q: &Quiver, depth: usize) -> WalkReport {
    let mut report = WalkReport::default();
    let seed: Seed<BigInt> = Seed::initial(q);
    let mut path = Vec::new();
    visit(q, &seed, depth, &mut path, &mut report);
    report
}

fn visit(q: &Quiver, seed: &Seed<BigInt>, depth: usize, path: &mut Vec<usize>, report: &mut WalkReport) {
    report.seeds += 1;
    let expected = transported_gvectors(q, path);
    for (i, x) in seed.cluster().iter().enumerate() {
        report.variables_checked += 1;
        match g_vector_of(x, q) {
            Ok(g) if g == expected[i] => {}
            Ok(g) => {
                report.gvector_mismatches += 1;
                report.errors.push(format!("{q} path {path:?} var {i}: grading {g:?} vs rule {:?}", expected[i]));
            }
            Err(e) => {
                report.gvector_mismatches += 1;
                report.errors.push(format!("{q} path {path:?} var {i}: {e}"));
            }
        }
        if !x.check_laurent() {
            report.not_laurent += 1;
        }
        if !x.all_coefficients_positive_integers() {
            report.not_positive += 1;
        }
    }
    if depth == 0 {
        return;
    }
    for k in 0..q.n() {
        match seed.mutate(k) {
            Ok(next) => {
                path.push(k);
                visit(q, &next, depth - 1, path, report);
                path.pop();
            }
            Err(e) => report.errors.push(format!("{q} path {path:?} + {k}: {e}")),
        }
    }
}

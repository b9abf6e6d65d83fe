//! The cross-method identities the library is checked against, runnable from
//! the command line (`kxcount selftest`) and from the test suite.

use std::collections::BTreeMap;
use std::time::Instant;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::arith::{aperiodic_necklaces, gcd, partition_numbers};
use crate::error::Result;
use crate::fm::{count_subgroups_hall, enumerate_sft, enumerate_transitive, SearchOrder};
use crate::graphs::{bouquet, deck_group_order, from_tuple, minimize, to_tuple, trace_word_graph, AdequateGraph, Edge, Vertex};
use crate::group::{
    fixed_class_count, irr_orbit_distribution, twisted_orbit_count, wreath_product, FiniteGroup, GroupAutomorphism,
};
use crate::limits::Limits;
use crate::perm::{Perm, PermTuple};
use crate::psh::{
    component_dimension_sum, counts_by_degree, cuspidal_census, generator_consistency, hilbert, norm_squared,
    product_tuple, trace_type_cuspidal_counts, HilbertMethod,
};
use crate::subgroups::{abelian_count, bs_count, klein_count, oracle_count, sublattices_z2, AbelianSpec, Presentation};
use crate::symchar::tuple_class_count;
use crate::verify::numeric_irr_orbit_distribution;

/// One compared quantity. `pass` is exact equality of `expected` and `actual`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossCheck {
    pub name: String,
    pub expected: Value,
    pub actual: Value,
    pub pass: bool,
}

impl CrossCheck {
    pub fn new(name: impl Into<String>, expected: impl Serialize, actual: impl Serialize) -> CrossCheck {
        let expected = serde_json::to_value(expected).expect("serializable");
        let actual = serde_json::to_value(actual).expect("serializable");
        let pass = expected == actual;
        CrossCheck {
            name: name.into(),
            expected,
            actual,
            pass,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CriterionReport {
    pub id: usize,
    pub title: String,
    pub passed: bool,
    pub checks: Vec<CrossCheck>,
    /// Set when the criterion could not be evaluated at all.
    pub error: Option<String>,
    #[serde(skip)]
    pub seconds: f64,
}

impl CriterionReport {
    pub fn summary_line(&self) -> String {
        let failed = self.checks.iter().filter(|c| !c.pass).count();
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        let mut line = format!(
            "criterion {:>2} {verdict}: {} ({} checks, {failed} failed, {:.1}s)",
            self.id,
            self.title,
            self.checks.len(),
            self.seconds
        );
        if let Some(e) = &self.error {
            line.push_str(&format!(" error: {e}"));
        }
        line
    }
}

pub const CRITERIA: [(usize, &str); 10] = [
    (1, "Hilbert series agree across kronecker, coverings and cuspidal methods"),
    (2, "divisor sums of cuspidal counts equal transitive class counts"),
    (3, "Hall subgroup counts equal sums of n/|deck| over transitive classes"),
    (4, "rank-2 census: one cuspidal in degree 1, two in degree 2"),
    (5, "one-vertex-type cuspidal counts equal aperiodic necklaces"),
    (6, "closed subgroup counts equal the relator oracle"),
    (7, "twisted classes equal fixed classes; numeric character tables agree"),
    (8, "component dimensions sum to tuple class counts"),
    (9, "graph minimization, deck groups and tuple round trips"),
    (10, "diagram norms are multiplicative"),
];

pub fn run_criterion(id: usize, seed: u64, limits: &Limits) -> CriterionReport {
    let start = Instant::now();
    let title = CRITERIA
        .iter()
        .find(|(i, _)| *i == id)
        .map_or("unknown criterion", |(_, t)| t)
        .to_string();
    let outcome = match id {
        1 => hilbert_agreement(limits),
        2 => generator_counts(limits),
        3 => hall_counts(limits),
        4 => rank_two_census(limits),
        5 => necklaces(limits),
        6 => subgroup_counts(limits),
        7 => brauer(seed, limits),
        8 => component_dimensions(limits),
        9 => graph_layer(seed, limits),
        10 => norms(limits),
        _ => Err(crate::Error::invalid(format!("there is no criterion {id}"))),
    };
    let (checks, error) = match outcome {
        Ok(c) => (c, None),
        Err(e) => (Vec::new(), Some(e.to_string())),
    };
    CriterionReport {
        id,
        title,
        passed: error.is_none() && !checks.is_empty() && checks.iter().all(|c| c.pass),
        checks,
        error,
        seconds: start.elapsed().as_secs_f64(),
    }
}

pub fn run_all(seed: u64, limits: &Limits) -> Vec<CriterionReport> {
    CRITERIA.iter().map(|&(id, _)| run_criterion(id, seed, limits)).collect()
}

fn hilbert_agreement(limits: &Limits) -> Result<Vec<CrossCheck>> {
    let mut checks = Vec::new();
    for (m, n) in [(1, 10), (2, 6), (3, 4)] {
        let reference = hilbert(m, n, HilbertMethod::Kronecker, limits)?;
        for method in [HilbertMethod::Coverings, HilbertMethod::Cuspidal] {
            let s = hilbert(m, n, method, limits)?;
            checks.push(CrossCheck::new(
                format!("m={m} N={n} kronecker vs {}", method.name()),
                reference.coefficients(),
                s.coefficients(),
            ));
        }
        if m == 1 {
            let p: Vec<i128> = partition_numbers(n).into_iter().map(i128::from).collect();
            checks.push(CrossCheck::new("m=1 partition numbers", p, reference.coefficients()));
        }
    }
    Ok(checks)
}

fn generator_counts(limits: &Limits) -> Result<Vec<CrossCheck>> {
    let mut checks = Vec::new();
    for (m, max_n) in [(2, 6), (3, 4)] {
        for n in 1..=max_n {
            let (lhs, rhs) = generator_consistency(m, n, limits)?;
            checks.push(CrossCheck::new(format!("m={m} n={n}"), rhs, lhs));
        }
    }
    Ok(checks)
}

fn hall_counts(limits: &Limits) -> Result<Vec<CrossCheck>> {
    let known = [1u32, 3, 13, 71, 461];
    let mut checks = Vec::new();
    for n in 1..=5 {
        let hall = count_subgroups_hall(2, n)?;
        let mut by_classes = BigUint::default();
        for t in enumerate_transitive(2, n, limits)? {
            by_classes += BigUint::from(n / t.centralizer_order(limits)?);
        }
        checks.push(CrossCheck::new(format!("n={n} recurrence"), known[n - 1].to_string(), hall.to_string()));
        checks.push(CrossCheck::new(format!("n={n} enumeration"), hall.to_string(), by_classes.to_string()));
    }
    Ok(checks)
}

fn rank_two_census(limits: &Limits) -> Result<Vec<CrossCheck>> {
    let census = cuspidal_census(2, 2, limits)?;
    let counts = counts_by_degree(&census, 2);
    let degree_two: Vec<_> = census
        .iter()
        .filter(|d| d.degree == 2)
        .map(|d| json!({"orbit_size": d.orbit_size, "k": d.k, "aut_order": d.aut_order, "l": d.l, "multiplicity": d.multiplicity}))
        .collect();
    let trivial_rho: Vec<bool> = enumerate_sft(2, 2, SearchOrder::Forward, limits)?
        .iter()
        .filter(|r| r.induced_degree() == 2)
        .map(|r| r.rho.is_identity())
        .collect();
    Ok(vec![
        CrossCheck::new("degree 1", 1, counts[1]),
        CrossCheck::new("ρ on the degree-2 orbit is trivial", vec![true], trivial_rho),
        CrossCheck::new("degree 2", 2, counts[2]),
        CrossCheck::new(
            "degree-2 source",
            vec![json!({"orbit_size": 2, "k": 1, "aut_order": 2, "l": 1, "multiplicity": 2})],
            degree_two,
        ),
    ])
}

fn necklaces(limits: &Limits) -> Result<Vec<CrossCheck>> {
    let mut checks = Vec::new();
    for q in 2..=4 {
        let counts = trace_type_cuspidal_counts(q, 8, limits)?;
        let expected: Vec<u64> = (1..=8).map(|n| aperiodic_necklaces(q as u64, n)).collect();
        checks.push(CrossCheck::new(format!("q={q} n=1..8"), expected, &counts[1..]));
    }
    Ok(checks)
}

fn subgroup_counts(limits: &Limits) -> Result<Vec<CrossCheck>> {
    let mut checks = Vec::new();
    checks.push(CrossCheck::new("klein n=2", 3, klein_count(2)?));
    checks.push(CrossCheck::new("klein n=4", 5, klein_count(4)?));
    for n in 1..=6 {
        let oracle = oracle_count(&Presentation::klein(), n, limits)? as u64;
        checks.push(CrossCheck::new(format!("klein n={n} vs oracle"), oracle, klein_count(n as u64)?));
    }
    checks.push(CrossCheck::new("bs d=2 n=2", 1, bs_count(2, 2)?));
    checks.push(CrossCheck::new("bs d=2 n=3", 2, bs_count(2, 3)?));
    for n in 1..=5 {
        let oracle = oracle_count(&Presentation::baumslag_solitar(2), n, limits)? as u64;
        checks.push(CrossCheck::new(format!("bs d=2 n={n} vs oracle"), oracle, bs_count(2, n as u64)?));
    }
    let z2 = AbelianSpec { torsion: Vec::new(), rank: 2 };
    for m in 1..=12u64 {
        checks.push(CrossCheck::new(
            format!("abelian rank 2 m={m}"),
            sublattices_z2(m) as u128,
            abelian_count(&z2, m, limits)?,
        ));
    }
    Ok(checks)
}

/// A small group with an automorphism that is usually outer: cyclic groups
/// with power maps, dihedral groups with `r ↦ r^k`, `C_a × C_b` with power
/// maps or the swap, and `C_b ≀ S_n` with a lifted power map. A random inner
/// automorphism is composed on top.
pub fn random_group_with_automorphism(rng: &mut ChaCha8Rng, limits: &Limits) -> Result<(FiniteGroup, GroupAutomorphism)> {
    let power_map = |g: &FiniteGroup, k: usize| -> Result<GroupAutomorphism> {
        let images = (0..g.order()).map(|x| (0..k).fold(0, |acc, _| g.mul(acc, x))).collect();
        GroupAutomorphism::new(g, images)
    };
    let unit = |rng: &mut ChaCha8Rng, n: usize| -> usize {
        let units: Vec<usize> = (1..=n.max(1)).filter(|&k| gcd(k as u64, n as u64) == 1).collect();
        units[rng.gen_range(0..units.len())]
    };
    let (g, outer) = match rng.gen_range(0..4) {
        0 => {
            let g = FiniteGroup::cyclic(rng.gen_range(1..=30));
            let k = unit(rng, g.order());
            let nu = power_map(&g, k)?;
            (g, nu)
        }
        1 => {
            let n = rng.gen_range(3..=12);
            let g = FiniteGroup::dihedral(n, limits)?;
            let k = unit(rng, n);
            let scale = Perm::new((0..n).map(|i| i * k % n).collect())?;
            let nu = GroupAutomorphism::conjugation_by_perm(&g, &scale)?;
            (g, nu)
        }
        2 => {
            let a = rng.gen_range(1..=6);
            let b = if rng.gen_bool(0.5) { a } else { rng.gen_range(1..=6) };
            let g = FiniteGroup::direct_product(&FiniteGroup::cyclic(a), &FiniteGroup::cyclic(b), limits)?;
            let nu = if a == b && rng.gen_bool(0.5) {
                GroupAutomorphism::new(&g, (0..a * b).map(|x| (x % b) * b + x / b).collect())?
            } else {
                let k = unit(rng, a * b);
                power_map(&g, k)?
            };
            (g, nu)
        }
        _ => {
            let base = FiniteGroup::cyclic(rng.gen_range(1..=3));
            let k = unit(rng, base.order());
            let rho = power_map(&base, k)?;
            let w = wreath_product(rng.gen_range(1..=3), &base, limits)?;
            let nu = w.lift(&rho);
            (w.group, nu)
        }
    };
    let inner = GroupAutomorphism::inner(&g, rng.gen_range(0..g.order()));
    let nu = inner.compose(&outer);
    Ok((g, nu))
}

fn brauer(seed: u64, limits: &Limits) -> Result<Vec<CrossCheck>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::new();
    let mut numeric_done = 0;
    let mut trials = 0;
    while trials < 24 || numeric_done < 6 {
        trials += 1;
        let (g, nu) = random_group_with_automorphism(&mut rng, limits)?;
        let label = format!("trial {trials} |G|={}", g.order());
        checks.push(CrossCheck::new(
            format!("{label} twisted classes vs fixed classes"),
            fixed_class_count(&g, &nu, limits)?,
            twisted_orbit_count(&g, &nu),
        ));
        if g.order() <= 48 {
            let exact = irr_orbit_distribution(&g, &nu, limits)?;
            let numeric = numeric_irr_orbit_distribution(&g, &nu, seed ^ trials as u64, limits)?;
            checks.push(CrossCheck::new(format!("{label} numeric irreducible orbits"), exact, numeric));
            numeric_done += 1;
        }
        if trials > 200 {
            break;
        }
    }
    // characters actually moved by ν, whatever the seed
    let c7 = FiniteGroup::cyclic(7);
    let inversion = GroupAutomorphism::new(&c7, (0..7).map(|x| (7 - x) % 7).collect())?;
    checks.push(CrossCheck::new(
        "C_7 inversion numeric irreducible orbits",
        BTreeMap::from([(1usize, 1usize), (2, 3)]),
        numeric_irr_orbit_distribution(&c7, &inversion, seed, limits)?,
    ));
    checks.push(CrossCheck::new("numeric comparisons on groups of order <= 48", true, numeric_done >= 5));
    Ok(checks)
}

fn component_dimensions(limits: &Limits) -> Result<Vec<CrossCheck>> {
    let mut checks = Vec::new();
    for n in 1..=4 {
        let expected = tuple_class_count(2, n, limits)?;
        let actual = component_dimension_sum(2, n, limits)?;
        checks.push(CrossCheck::new(format!("m=2 n={n}"), expected.to_string(), actual.to_string()));
    }
    Ok(checks)
}

/// Two vertices joined by an edge each way, with `m - 1` loops on the first.
fn two_vertex_base(m: usize) -> AdequateGraph {
    let mut edges = vec![Edge { src: 0, dst: 1, out_color: 1, in_color: 1 }];
    for i in 1..m {
        edges.push(Edge { src: 0, dst: 0, out_color: i + 1, in_color: i });
    }
    edges.push(Edge { src: 1, dst: 0, out_color: 1, in_color: m });
    AdequateGraph {
        signature: vec![(m, m), (1, 1)],
        vertices: vec![Vertex { id: 0, color: 1 }, Vertex { id: 1, color: 2 }],
        edges,
    }
}

fn random_perm(rng: &mut ChaCha8Rng, n: usize) -> Perm {
    let mut images: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        images.swap(i, rng.gen_range(0..=i));
    }
    Perm::new(images).expect("a shuffle is a permutation")
}

fn graph_layer(seed: u64, limits: &Limits) -> Result<Vec<CrossCheck>> {
    let mut checks = Vec::new();
    let long = minimize(&trace_word_graph(&[1, 2, 1, 2], 2))?;
    checks.push(CrossCheck::new(
        "Tr(T1T2T1T2) minimizes to Tr(T1T2)",
        trace_word_graph(&[1, 2], 2).canonical_key()?,
        long.base.canonical_key()?,
    ));
    for n in 1..=8 {
        checks.push(CrossCheck::new(
            format!("deck group of Tr(T^{n})"),
            n,
            deck_group_order(&trace_word_graph(&vec![1; n], 1), limits)?,
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut preserved = 0;
    for _ in 0..100 {
        let m = rng.gen_range(1..=3);
        let n = rng.gen_range(1..=5);
        let t = PermTuple::new((0..m).map(|_| random_perm(&mut rng, n)).collect())?;
        let base = if rng.gen_bool(0.5) { bouquet(m) } else { two_vertex_base(m) };
        let back = to_tuple(&from_tuple(&base, &t)?, &base)?;
        if back.canonical_form() == t.canonical_form() {
            preserved += 1;
        }
    }
    checks.push(CrossCheck::new("round trips preserving canonical forms", 100, preserved));
    Ok(checks)
}

fn norms(limits: &Limits) -> Result<Vec<CrossCheck>> {
    let mut classes = Vec::new();
    for n in 1..=4 {
        classes.extend(enumerate_transitive(2, n, limits)?);
    }
    let values: Vec<BigUint> = classes.iter().map(|t| norm_squared(t, limits)).collect::<Result<_>>()?;
    let (mut connected, mut squares, mut products, mut pairs) = (0, 0, 0, 0);
    for (a, na) in classes.iter().zip(&values) {
        if *na == BigUint::from(a.centralizer_order(limits)?) {
            connected += 1;
        }
        let aa = product_tuple(a, a)?;
        let expected = BigUint::from(2u32) * na * na;
        if norm_squared(&aa, limits)? == expected && BigUint::from(aa.centralizer_order(limits)?) == expected {
            squares += 1;
        }
    }
    for (i, (a, na)) in classes.iter().zip(&values).enumerate() {
        for (b, nb) in classes.iter().zip(&values).skip(i + 1) {
            pairs += 1;
            if norm_squared(&product_tuple(a, b)?, limits)? == na * nb {
                products += 1;
            }
        }
    }
    Ok(vec![
        CrossCheck::new("connected norms equal centralizer orders", classes.len(), connected),
        CrossCheck::new("‖a·a‖² = 2‖a‖⁴, also by brute force", classes.len(), squares),
        CrossCheck::new("‖a·b‖² = ‖a‖²‖b‖² for non-isomorphic a, b", pairs, products),
    ])
}

//! Cuspidal censuses, diagram norms, component dimensions and Hilbert series.
//!
//! For a base graph with free fundamental group of rank `m`, cuspidal elements
//! are indexed by pairs `(O, W)`: `O` a twist class of strongly finite
//! transitive `F_m^0`-sets and `W` a `ρ(O)`-orbit of irreducible characters of
//! `Aut(O)`. Such a pair has degree `|O|·k(O)·l(W)`.

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::arith::{divisors, factorial};
use crate::error::{Error, Result};
use crate::fm::{enumerate_sft, enumerate_transitive, SearchOrder, SftRecord};
use crate::graphs::{is_irreducible, trace_word_graph, AdequateGraph};
use crate::group::{
    irr_orbit_distribution, power_with_shift, product_with_automorphisms, twisted_orbit_count, wreath_product,
    FiniteGroup, GroupAutomorphism,
};
use crate::limits::Limits;
use crate::perm::PermTuple;
use crate::series::IntSeries;
use crate::symchar::sum_kron_squares;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CuspidalDescriptor {
    pub orbit_size: usize,
    pub k: usize,
    pub l: usize,
    pub degree: usize,
    pub multiplicity: usize,
    pub aut_order: usize,
}

/// Cuspidal descriptors of degree `<= max_deg`, one per (orbit class, orbit length).
pub fn cuspidal_census(m: usize, max_deg: usize, limits: &Limits) -> Result<Vec<CuspidalDescriptor>> {
    let records = enumerate_sft(m, max_deg, SearchOrder::Forward, limits)?;
    census_from_records(&records, max_deg, limits)
}

pub fn census_from_records(
    records: &[SftRecord],
    max_deg: usize,
    limits: &Limits,
) -> Result<Vec<CuspidalDescriptor>> {
    let mut out = Vec::new();
    for rec in records {
        for (l, count) in irr_orbit_distribution(&rec.aut, &rec.rho, limits)? {
            let degree = rec.induced_degree() * l;
            if degree <= max_deg {
                out.push(CuspidalDescriptor {
                    orbit_size: rec.orbit.size(),
                    k: rec.k,
                    l,
                    degree,
                    multiplicity: count,
                    aut_order: rec.aut.order(),
                });
            }
        }
    }
    Ok(out)
}

/// Number of cuspidals in each degree `0..=max_deg`.
pub fn counts_by_degree(census: &[CuspidalDescriptor], max_deg: usize) -> Vec<u64> {
    let mut counts = vec![0u64; max_deg + 1];
    for d in census {
        if d.degree <= max_deg {
            counts[d.degree] += d.multiplicity as u64;
        }
    }
    counts
}

/// Whether `Σ_{d|n} cusp_d` equals the number of transitive `F_m`-sets of size `n`.
pub fn generator_consistency(m: usize, n: usize, limits: &Limits) -> Result<(u64, u64)> {
    let counts = counts_by_degree(&cuspidal_census(m, n, limits)?, n);
    let lhs = divisors(n as u64).into_iter().map(|d| counts[d as usize]).sum();
    let rhs = enumerate_transitive(m, n, limits)?.len() as u64;
    Ok((lhs, rhs))
}

/// `‖Γ‖²` for the diagram of `t`: the order of its automorphism group,
/// `Π_components c!·|Cent(component)|^c` over isomorphism types with multiplicity `c`.
pub fn norm_squared(t: &PermTuple, limits: &Limits) -> Result<BigUint> {
    let mut groups: BTreeMap<PermTuple, (usize, usize)> = BTreeMap::new();
    for orbit in t.orbits() {
        let comp = t.restrict(&orbit)?.canonical_form();
        if let Some(entry) = groups.get_mut(&comp) {
            entry.0 += 1;
            continue;
        }
        let cent = comp.centralizer_order(limits)?;
        groups.insert(comp, (1, cent));
    }
    let mut total = BigUint::one();
    for (count, cent) in groups.into_values() {
        total *= factorial(count) * BigUint::from(cent).pow(count as u32);
    }
    Ok(total)
}

/// The product of two diagrams: block-diagonal concatenation of their tuples.
pub fn product_tuple(a: &PermTuple, b: &PermTuple) -> Result<PermTuple> {
    if a.rank() != b.rank() {
        return Err(Error::invalid(format!("rank mismatch: {} vs {}", a.rank(), b.rank())));
    }
    if a.degree() == 0 {
        return Ok(b.clone());
    }
    if b.degree() == 0 {
        return Ok(a.clone());
    }
    a.disjoint_union(b)
}

/// A finitely supported function `a` from orbit classes to positive multiplicities.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberConfig {
    /// `(record index, a(O))`, sorted by record index.
    pub assignments: Vec<(usize, usize)>,
    pub total_degree: usize,
}

/// All configurations of total degree exactly `n`, where record `i` contributes `|O_i|·k(O_i)·a`.
pub fn fiber_configs(records: &[SftRecord], n: usize) -> Vec<FiberConfig> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    configs_rec(records, 0, n, &mut current, &mut out);
    out
}

fn configs_rec(
    records: &[SftRecord],
    start: usize,
    rest: usize,
    current: &mut Vec<(usize, usize)>,
    out: &mut Vec<FiberConfig>,
) {
    if rest == 0 {
        let total = current.iter().map(|&(i, a)| records[i].induced_degree() * a).sum();
        out.push(FiberConfig {
            assignments: current.clone(),
            total_degree: total,
        });
        return;
    }
    for i in start..records.len() {
        let d = records[i].induced_degree();
        let mut a = 1;
        while d * a <= rest {
            current.push((i, a));
            configs_rec(records, i + 1, rest - d * a, current, out);
            current.pop();
            a += 1;
        }
    }
}

/// `G_a = Π_O (S_{a(O)} ⋉ Aut(O)^{a(O)})^{k(O)}` with `ν_a`: the block shift
/// composed with `ρ` on the wrapped-around block.
pub fn build_ga(
    cfg: &FiberConfig,
    records: &[SftRecord],
    limits: &Limits,
) -> Result<(FiniteGroup, GroupAutomorphism)> {
    let mut order: u128 = 1;
    for &(i, a) in &cfg.assignments {
        let r = &records[i];
        let factor = factorial(a)
            .to_u128()
            .and_then(|f| f.checked_mul((r.aut.order() as u128).checked_pow(a as u32)?))
            .and_then(|f| f.checked_pow(r.k as u32))
            .ok_or(Error::Overflow("G_a order"))?;
        order = order.checked_mul(factor).ok_or(Error::Overflow("G_a order"))?;
    }
    if order > limits.group_order_cap as u128 {
        return Err(Error::cap(
            "G_a order",
            order.min(usize::MAX as u128) as usize,
            limits.group_order_cap,
        ));
    }
    let mut acc = (FiniteGroup::trivial(), GroupAutomorphism::identity(&FiniteGroup::trivial()));
    for &(i, a) in &cfg.assignments {
        let r = &records[i];
        let w = wreath_product(a, &r.aut, limits)?;
        let xi = w.lift(&r.rho);
        let (g, nu) = power_with_shift(&w.group, &xi, r.k, limits)?;
        acc = product_with_automorphisms((&acc.0, &acc.1), (&g, &nu), limits)?;
    }
    Ok(acc)
}

/// `dim (K G_a)_{G_a}` under the `ν_a`-twisted conjugation.
pub fn component_dimension(cfg: &FiberConfig, records: &[SftRecord], limits: &Limits) -> Result<usize> {
    let (g, nu) = build_ga(cfg, records, limits)?;
    Ok(twisted_orbit_count(&g, &nu))
}

/// `Σ_cfg dim` over all configurations of total degree `n`.
pub fn component_dimension_sum(m: usize, n: usize, limits: &Limits) -> Result<usize> {
    let records = enumerate_sft(m, n, SearchOrder::Forward, limits)?;
    let mut total = 0;
    for cfg in fiber_configs(&records, n) {
        total += component_dimension(&cfg, &records, limits)?;
    }
    Ok(total)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HilbertMethod {
    Kronecker,
    Coverings,
    Cuspidal,
}

impl HilbertMethod {
    pub const ALL: [HilbertMethod; 3] = [HilbertMethod::Kronecker, HilbertMethod::Coverings, HilbertMethod::Cuspidal];

    pub fn name(self) -> &'static str {
        match self {
            HilbertMethod::Kronecker => "kronecker",
            HilbertMethod::Coverings => "coverings",
            HilbertMethod::Cuspidal => "cuspidal",
        }
    }
}

/// The Hilbert series of `K[X]_{Γ0}` for `π_1(Γ0) = F_m`, truncated at `X^n_max`.
pub fn hilbert(m: usize, n_max: usize, method: HilbertMethod, limits: &Limits) -> Result<IntSeries> {
    match method {
        HilbertMethod::Kronecker => {
            let coeffs = (0..=n_max)
                .map(|n| {
                    sum_kron_squares(m, n, limits)?
                        .to_i128()
                        .ok_or(Error::Overflow("Hilbert coefficient"))
                })
                .collect::<Result<Vec<_>>>()?;
            IntSeries::from_coefficients(coeffs)
        }
        HilbertMethod::Coverings => {
            let mut s = IntSeries::one(n_max);
            for size in 1..=n_max {
                let t = enumerate_transitive(m, size, limits)?.len();
                s = s.mul_inv_one_minus_pow(size, t as u128)?;
            }
            Ok(s)
        }
        HilbertMethod::Cuspidal => {
            let census = cuspidal_census(m, n_max, limits)?;
            Ok(series_from_cuspidal_counts(&counts_by_degree(&census, n_max), n_max)?)
        }
    }
}

/// `Π_d Π_{j>=1} (1 - X^{d·j})^{-c_d}`: each cuspidal of degree `d` generates a
/// polynomial ring with one generator in each degree `d·j`.
pub fn series_from_cuspidal_counts(counts: &[u64], n_max: usize) -> Result<IntSeries> {
    let mut s = IntSeries::one(n_max);
    for (d, &c) in counts.iter().enumerate().skip(1) {
        if c == 0 {
            continue;
        }
        let mut j = 1;
        while d * j <= n_max {
            s = s.mul_inv_one_minus_pow(d * j, c as u128)?;
            j += 1;
        }
    }
    Ok(s)
}

/// Irreducible trace graphs `Tr(T_{w_1} ⋯ T_{w_n})` over `q` colors, up to
/// isomorphism, for each `n <= max_n`.
pub fn irreducible_trace_graphs(q: usize, max_n: usize) -> Result<Vec<Vec<AdequateGraph>>> {
    let mut out = vec![Vec::new(); max_n + 1];
    for n in 1..=max_n {
        let total = (q as u64).checked_pow(n as u32).ok_or(Error::Overflow("word count"))?;
        if total > 5_000_000 {
            return Err(Error::cap("number of words", total as usize, 5_000_000));
        }
        let mut seen = HashSet::new();
        let mut word = vec![1usize; n];
        loop {
            // only one rotation of each word is needed
            let least_rotation = (1..n).all(|r| {
                let rotated: Vec<usize> = word[r..].iter().chain(&word[..r]).copied().collect();
                word <= rotated
            });
            if least_rotation {
                let g = trace_word_graph(&word, q);
                if is_irreducible(&g)? && seen.insert(g.canonical_key()?) {
                    out[n].push(g);
                }
            }
            let mut i = n;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                word[i] += 1;
                if word[i] <= q {
                    break;
                }
                word[i] = 1;
                if i == 0 {
                    i = usize::MAX;
                    break;
                }
            }
            if i == usize::MAX {
                break;
            }
        }
    }
    Ok(out)
}

/// Cuspidal counts per degree of the full ring for the `q`-endomorphism type:
/// each irreducible base `Γ0` with `d` vertices and cycle rank `m` contributes
/// its own census with degrees scaled by `d`.
pub fn trace_type_cuspidal_counts(q: usize, max_n: usize, limits: &Limits) -> Result<Vec<u64>> {
    let bases = irreducible_trace_graphs(q, max_n)?;
    let mut counts = vec![0u64; max_n + 1];
    let mut census_by_rank: BTreeMap<usize, Vec<u64>> = BTreeMap::new();
    for (d, graphs) in bases.iter().enumerate() {
        for g in graphs {
            let m = g.cycle_rank()?;
            if !census_by_rank.contains_key(&m) {
                let c = counts_by_degree(&cuspidal_census(m, max_n, limits)?, max_n);
                census_by_rank.insert(m, c);
            }
            let local = &census_by_rank[&m];
            for (e, &c) in local.iter().enumerate().skip(1) {
                if d * e <= max_n {
                    counts[d * e] += c;
                }
            }
        }
    }
    Ok(counts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::aperiodic_necklaces;
    use crate::perm::Perm;
    use crate::symchar::tuple_class_count;

    fn lim() -> Limits {
        Limits::default()
    }

    fn t(images: Vec<Vec<usize>>) -> PermTuple {
        PermTuple::from_images(images).unwrap()
    }

    #[test]
    fn census_examples() {
        let c = counts_by_degree(&cuspidal_census(2, 3, &lim()).unwrap(), 3);
        assert_eq!((c[1], c[2]), (1, 2));
        assert_eq!(c[1] + c[3], enumerate_transitive(2, 3, &lim()).unwrap().len() as u64);

        let c1 = cuspidal_census(1, 7, &lim()).unwrap();
        assert_eq!(c1.len(), 1);
        assert_eq!((c1[0].degree, c1[0].multiplicity), (1, 1));

        for d in cuspidal_census(2, 5, &lim()).unwrap() {
            assert_eq!(d.degree, d.orbit_size * d.k * d.l);
            assert!(d.multiplicity >= 1);
        }
    }

    #[test]
    fn degree_two_cuspidals_come_from_the_order_two_orbit() {
        let census = cuspidal_census(2, 2, &lim()).unwrap();
        let two: Vec<_> = census.iter().filter(|d| d.degree == 2).collect();
        assert_eq!(two.len(), 1);
        assert_eq!(
            (two[0].orbit_size, two[0].k, two[0].aut_order, two[0].l, two[0].multiplicity),
            (2, 1, 2, 1, 2)
        );
    }

    #[test]
    fn generator_counts() {
        for n in 1..=5 {
            let (a, b) = generator_consistency(2, n, &lim()).unwrap();
            assert_eq!(a, b, "m=2 n={n}");
        }
        for n in 1..=3 {
            let (a, b) = generator_consistency(3, n, &lim()).unwrap();
            assert_eq!(a, b, "m=3 n={n}");
        }
        assert_eq!(generator_consistency(2, 2, &lim()).unwrap(), (3, 3));
    }

    #[test]
    fn norm_examples() {
        for n in 1..=7 {
            assert_eq!(norm_squared(&t(vec![Perm::long_cycle(n).images().to_vec()]), &lim()).unwrap(), BigUint::from(n));
        }
        for k in 1..=6 {
            assert_eq!(norm_squared(&PermTuple::identity(k, 1), &lim()).unwrap(), factorial(k));
        }
        assert_eq!(norm_squared(&t(vec![vec![1, 0], vec![1, 0]]), &lim()).unwrap(), BigUint::from(2u32));
    }

    #[test]
    fn norm_equals_full_centralizer() {
        let a = t(vec![vec![1, 0], vec![0, 1]]);
        let b = t(vec![vec![0], vec![0]]);
        let ab = product_tuple(&product_tuple(&a, &b).unwrap(), &a).unwrap();
        let cent = ab.centralizer(&lim()).unwrap().len();
        assert_eq!(norm_squared(&ab, &lim()).unwrap(), BigUint::from(cent));
    }

    #[test]
    fn product_laws() {
        let a = t(vec![vec![1, 2, 0], vec![0, 2, 1]]);
        let b = t(vec![vec![1, 0], vec![1, 0]]);
        let ab = product_tuple(&a, &b).unwrap();
        let ba = product_tuple(&b, &a).unwrap();
        assert_eq!(ab.canonical_form(), ba.canonical_form());
        let unit = PermTuple::new(vec![Perm::identity(0), Perm::identity(0)]).unwrap();
        assert_eq!(product_tuple(&a, &unit).unwrap(), a);
        let na = norm_squared(&a, &lim()).unwrap();
        assert_eq!(norm_squared(&product_tuple(&a, &a).unwrap(), &lim()).unwrap(), BigUint::from(2u32) * &na * &na);
        assert!(product_tuple(&a, &PermTuple::identity(2, 1)).is_err());
    }

    #[test]
    fn component_dimension_examples() {
        let recs = enumerate_sft(1, 6, SearchOrder::Forward, &lim()).unwrap();
        assert_eq!(recs.len(), 1);
        let one = FiberConfig {
            assignments: vec![(0, 1)],
            total_degree: 1,
        };
        assert_eq!(component_dimension(&one, &recs, &lim()).unwrap(), 1);
        let pn = [1, 1, 2, 3, 5, 7, 11];
        for n in 1..=6 {
            let cfg = FiberConfig {
                assignments: vec![(0, n)],
                total_degree: n,
            };
            assert_eq!(component_dimension(&cfg, &recs, &lim()).unwrap(), pn[n]);
        }
    }

    #[test]
    fn component_dimensions_sum_to_tuple_classes() {
        for n in 1..=4 {
            let expect = tuple_class_count(2, n, &lim()).unwrap();
            assert_eq!(BigUint::from(component_dimension_sum(2, n, &lim()).unwrap()), expect, "n={n}");
        }
    }

    #[test]
    fn hilbert_agreement_small() {
        let p: Vec<i128> = vec![1, 1, 2, 3, 5, 7, 11, 15];
        for method in HilbertMethod::ALL {
            assert_eq!(hilbert(1, 7, method, &lim()).unwrap().coefficients(), &p[..]);
        }
        let k = hilbert(2, 4, HilbertMethod::Kronecker, &lim()).unwrap();
        assert_eq!((k.coeff(1), k.coeff(2)), (1, 4));
        assert_eq!(k, hilbert(2, 4, HilbertMethod::Coverings, &lim()).unwrap());
        assert_eq!(k, hilbert(2, 4, HilbertMethod::Cuspidal, &lim()).unwrap());
    }

    #[test]
    fn necklace_counts() {
        for q in 2..=3 {
            let c = trace_type_cuspidal_counts(q, 6, &lim()).unwrap();
            for n in 1..=6 {
                assert_eq!(c[n], aperiodic_necklaces(q as u64, n as u64), "q={q} n={n}");
            }
        }
    }
}

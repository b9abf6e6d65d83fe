//! Finite actions of the free group `F_m` and of its subgroup `F_m^0`.
//!
//! `F_m^0` is the kernel of `F_m -> Z` sending every generator to 1. It is
//! freely generated by `y_{j,a} = z_j^{-a} z_1^a` (`j = 2..m`, `a ∈ Z`). Inside
//! a finite action the image of `y_{j,a}` is `σ_j^{-a} σ_1^a`, which depends on
//! `a` only modulo the period `P = lcm(ord σ_1, …, ord σ_m)`.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{factorial, lcm};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupAutomorphism};
use crate::limits::Limits;
use crate::perm::{extend_equivariant, Perm, PermTuple};

const UNSET: usize = usize::MAX;

/// Every pointed transitive action of `F_m` on `{0..n-1}`, labelled in
/// breadth-first order from point 0. There is one per index-`n` subgroup.
///
/// This is a coset-table search: the first undefined entry (point-major, slots
/// `σ_1..σ_m, σ_1^{-1}..σ_m^{-1}`) is filled with an existing point whose
/// matching inverse slot is free, or with the next new point.
pub fn enumerate_pointed(m: usize, n: usize, limits: &Limits) -> Result<Vec<PermTuple>> {
    if m == 0 {
        return Err(Error::invalid("rank must be at least 1"));
    }
    limits.check_transitive(m, n)?;
    if n == 0 {
        return Ok(Vec::new());
    }
    let table = vec![vec![UNSET; 2 * m]; n];
    // split on the first entry, σ_1(0)
    let firsts: Vec<usize> = (0..n.min(2)).collect();
    let mut out: Vec<PermTuple> = firsts
        .into_par_iter()
        .flat_map_iter(|v| {
            let mut t = table.clone();
            let mut used = 1;
            let mut found = Vec::new();
            if v == 1 {
                used = 2;
            }
            t[0][0] = v;
            t[v][m] = 0;
            fill_table(&mut t, m, n, &mut used, &mut found);
            found
        })
        .collect();
    out.sort();
    Ok(out)
}

fn fill_table(t: &mut Vec<Vec<usize>>, m: usize, n: usize, used: &mut usize, out: &mut Vec<PermTuple>) {
    let next = (0..*used).find_map(|p| t[p].iter().position(|&x| x == UNSET).map(|s| (p, s)));
    let Some((p, s)) = next else {
        if *used == n {
            let perms = (0..m)
                .map(|i| Perm::new((0..n).map(|q| t[q][i]).collect()).expect("complete coset table"))
                .collect();
            out.push(PermTuple::new(perms).expect("rank >= 1"));
        }
        return;
    };
    let inv_slot = if s < m { s + m } else { s - m };
    for q in 0..*used {
        if t[q][inv_slot] == UNSET {
            t[p][s] = q;
            t[q][inv_slot] = p;
            fill_table(t, m, n, used, out);
            t[p][s] = UNSET;
            t[q][inv_slot] = UNSET;
        }
    }
    if *used < n {
        let q = *used;
        *used += 1;
        t[p][s] = q;
        t[q][inv_slot] = p;
        fill_table(t, m, n, used, out);
        t[p][s] = UNSET;
        t[q][inv_slot] = UNSET;
        *used -= 1;
    }
}

/// One canonical representative per conjugacy class of transitive `m`-tuples of degree `n`.
pub fn enumerate_transitive(m: usize, n: usize, limits: &Limits) -> Result<Vec<PermTuple>> {
    let pointed = enumerate_pointed(m, n, limits)?;
    let mut reps: Vec<PermTuple> = pointed
        .into_par_iter()
        .filter(|t| t.canonical_form() == *t)
        .collect();
    reps.sort();
    Ok(reps)
}

/// `N_n(F_m) = n·(n!)^{m-1} - Σ_{i<n} ((n-i)!)^{m-1} N_i`, the number of index-`n` subgroups.
pub fn count_subgroups_hall(m: usize, n: usize) -> Result<BigUint> {
    if n == 0 || m == 0 {
        return Err(Error::invalid("Hall recurrence needs m >= 1 and n >= 1"));
    }
    let e = (m - 1) as u32;
    let mut values: Vec<BigUint> = vec![BigUint::zero()];
    for k in 1..=n {
        let mut v = BigUint::from(k) * factorial(k).pow(e);
        for (i, ni) in values.iter().enumerate().skip(1) {
            let sub = factorial(k - i).pow(e) * ni;
            if sub > v {
                return Err(Error::logic("Hall recurrence went negative"));
            }
            v -= sub;
        }
        values.push(v);
    }
    Ok(values.pop().unwrap())
}

/// A transitive `F_m^0`-set, given by the images of `y_{j,a}` on local labels `0..size`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitAction {
    /// Ambient points of the orbit, sorted; local label `i` is `support[i]`.
    pub support: Vec<usize>,
    /// `gens[j-2][a]` is the image of `z_j^{-a} z_1^a`, `0 <= a < period`.
    pub gens: Vec<Vec<Perm>>,
    pub period: usize,
}

impl OrbitAction {
    pub fn size(&self) -> usize {
        self.support.len()
    }

    /// Rank `m` of the ambient free group.
    pub fn rank(&self) -> usize {
        self.gens.len() + 1
    }

    /// The image of `y_{j,a}`, for any integer `a`.
    pub fn gen(&self, j: usize, a: i64) -> &Perm {
        &self.gens[j][a.rem_euclid(self.period as i64) as usize]
    }

    /// All generator images with the period stretched to `period`.
    fn flat_gens(&self, period: usize) -> Vec<Perm> {
        let mut out = Vec::with_capacity(self.gens.len() * period);
        for j in 0..self.gens.len() {
            for a in 0..period {
                out.push(self.gen(j, a as i64).clone());
            }
        }
        out
    }
}

/// Orbits of the `F_m^0`-action, each with generator images on local labels.
pub fn fm0_orbits(t: &PermTuple) -> Vec<OrbitAction> {
    let m = t.rank();
    let period = t.perms().iter().fold(1u64, |acc, p| lcm(acc, p.order())) as usize;
    let s1 = t.get(0);
    let mut images: Vec<Vec<Perm>> = Vec::with_capacity(m - 1);
    for j in 1..m {
        let sj_inv = t.get(j).inverse();
        images.push(
            (0..period)
                .map(|a| sj_inv.pow(a as i64).compose(&s1.pow(a as i64)))
                .collect(),
        );
    }
    let flat: Vec<Perm> = images.iter().flatten().cloned().collect();
    crate::perm::orbits_of(t.degree(), &flat)
        .into_iter()
        .map(|support| {
            let gens = images
                .iter()
                .map(|row| row.iter().map(|g| restrict(g, &support)).collect())
                .collect();
            OrbitAction { support, gens, period }
        })
        .collect()
}

fn restrict(g: &Perm, support: &[usize]) -> Perm {
    let pos = |x: usize| support.binary_search(&x).expect("orbit is invariant");
    Perm::new(support.iter().map(|&x| pos(g.apply(x))).collect()).expect("restriction of a bijection")
}

/// `z_1^t(O)`: the same points with `g` acting as `z_1^{-t} g z_1^t`.
///
/// In the free generators, `z_1^{-t} y_{j,a} z_1^t = y_{j,t}^{-1} y_{j,a+t}`.
pub fn twist(o: &OrbitAction, t: i64) -> OrbitAction {
    let gens = (0..o.gens.len())
        .map(|j| {
            let shift_inv = o.gen(j, t).inverse();
            (0..o.period)
                .map(|a| shift_inv.compose(o.gen(j, a as i64 + t)))
                .collect()
        })
        .collect();
    OrbitAction {
        support: o.support.clone(),
        gens,
        period: o.period,
    }
}

/// Order in which candidate images of the base point are tried.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum SearchOrder {
    #[default]
    Forward,
    Reverse,
}

/// A bijection `φ` with `φ ∘ a(g) = b(g) ∘ φ` for every generator, if one exists.
pub fn iso_orbits(a: &OrbitAction, b: &OrbitAction, order: SearchOrder) -> Option<Perm> {
    if a.size() != b.size() || a.rank() != b.rank() {
        return None;
    }
    let n = a.size();
    if n == 0 {
        return Some(Perm::identity(0));
    }
    let period = lcm(a.period as u64, b.period as u64) as usize;
    let ga = a.flat_gens(period);
    let gb = b.flat_gens(period);
    let candidates: Vec<usize> = match order {
        SearchOrder::Forward => (0..n).collect(),
        SearchOrder::Reverse => (0..n).rev().collect(),
    };
    for y in candidates {
        if let Some(map) = intertwine(&ga, &gb, n, y) {
            return Some(map);
        }
    }
    None
}

/// Extends `0 ↦ y` to an intertwiner of two transitive actions.
fn intertwine(ga: &[Perm], gb: &[Perm], n: usize, y: usize) -> Option<Perm> {
    let mut map = vec![UNSET; n];
    let mut used = vec![false; n];
    map[0] = y;
    used[y] = true;
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(p) = queue.pop_front() {
        let fp = map[p];
        for (g, h) in ga.iter().zip(gb) {
            for (q, fq) in [(g.apply(p), h.apply(fp)), (g.inverse().apply(p), h.inverse().apply(fp))] {
                if map[q] == UNSET {
                    if used[fq] {
                        return None;
                    }
                    map[q] = fq;
                    used[fq] = true;
                    queue.push_back(q);
                } else if map[q] != fq {
                    return None;
                }
            }
        }
    }
    if map.contains(&UNSET) {
        return None;
    }
    let phi = Perm::new(map).ok()?;
    ga.iter()
        .zip(gb)
        .all(|(g, h)| phi.compose(g) == h.compose(&phi))
        .then_some(phi)
}

/// A strongly finite transitive `F_m^0`-set with its twist data.
#[derive(Debug, Clone)]
pub struct SftRecord {
    pub orbit: OrbitAction,
    /// Least `k > 0` with `z_1^k(O) ≅ O`.
    pub k: usize,
    /// An isomorphism `z_1^k(O) -> O`.
    pub phi: Perm,
    /// `Aut_{F_m^0}(O)`, realized on the points of `O`.
    pub aut: FiniteGroup,
    /// `λ ↦ φ λ φ^{-1}` on `aut`.
    pub rho: GroupAutomorphism,
}

impl SftRecord {
    /// `|O|·k(O)`, the size of the transitive `F_m`-set induced from `O`.
    pub fn induced_degree(&self) -> usize {
        self.orbit.size() * self.k
    }
}

/// Computes `k(O)`, `φ`, `Aut(O)` and `ρ(O)`.
pub fn analyze_sft(o: &OrbitAction, order: SearchOrder, limits: &Limits) -> Result<SftRecord> {
    let mut found = None;
    for t in 1..=o.period {
        if let Some(phi) = iso_orbits(&twist(o, t as i64), o, order) {
            found = Some((t, phi));
            break;
        }
    }
    let (k, phi) = found.ok_or_else(|| {
        Error::logic(format!("no twist of an orbit of size {} within its period {}", o.size(), o.period))
    })?;
    let n = o.size();
    let flat = o.flat_gens(o.period);
    let mut aut_elems = Vec::new();
    for y in 0..n {
        let mut map = vec![UNSET; n];
        let mut used = vec![false; n];
        if extend_equivariant(&flat, &mut map, &mut used, 0, y) {
            aut_elems.push(Perm::new(map)?);
        }
    }
    let aut = FiniteGroup::from_perm_list(aut_elems, limits)?;
    let phi_inv = phi.inverse();
    let perms = aut.permutations().expect("built from permutations");
    let images = perms
        .iter()
        .map(|l| {
            let img = phi.compose(l).compose(&phi_inv);
            aut.index_of_perm(&img)
                .ok_or_else(|| Error::logic("conjugation by φ does not preserve Aut(O)"))
        })
        .collect::<Result<Vec<_>>>()?;
    let rho = GroupAutomorphism::new(&aut, images).map_err(|e| Error::logic(format!("ρ(O): {e}")))?;
    Ok(SftRecord {
        orbit: o.clone(),
        k,
        phi,
        aut,
        rho,
    })
}

/// One record per twist class of strongly finite transitive `F_m^0`-sets with
/// `|O|·k(O) <= max_deg`, found as orbits of point 0 in transitive `F_m`-sets
/// of size exactly `|O|·k(O)`. Ordered by induced degree, then enumeration order.
pub fn enumerate_sft(m: usize, max_deg: usize, order: SearchOrder, limits: &Limits) -> Result<Vec<SftRecord>> {
    let mut records: Vec<SftRecord> = Vec::new();
    for n in 1..=max_deg {
        let classes = enumerate_transitive(m, n, limits)?;
        let candidates: Vec<Result<Option<SftRecord>>> = classes
            .par_iter()
            .map(|t| {
                let orbits = fm0_orbits(t);
                let o = &orbits[0];
                let rec = analyze_sft(o, order, limits)?;
                Ok((rec.induced_degree() == n).then_some(rec))
            })
            .collect();
        let start = records.len();
        for c in candidates {
            let Some(rec) = c? else { continue };
            let duplicate = records[start..].iter().any(|r| {
                r.orbit.size() == rec.orbit.size()
                    && r.k == rec.k
                    && (0..r.k).any(|s| iso_orbits(&twist(&r.orbit, s as i64), &rec.orbit, order).is_some())
            });
            if !duplicate {
                records.push(rec);
            }
        }
    }
    Ok(records)
}

/// Summary of a record for reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SftSummary {
    pub orbit_size: usize,
    pub k: usize,
    pub aut_order: usize,
    pub period: usize,
    /// Permutation of the conjugacy classes of `Aut(O)` induced by `ρ`.
    pub rho_on_classes: Vec<usize>,
    pub irr_orbit_lengths: BTreeMap<usize, usize>,
}

pub fn summarize(rec: &SftRecord, limits: &Limits) -> Result<SftSummary> {
    let (classes, class_of) = rec.aut.class_map(limits)?;
    let rho_on_classes = rec.rho.class_permutation(&class_of, &classes).images().to_vec();
    Ok(SftSummary {
        orbit_size: rec.orbit.size(),
        k: rec.k,
        aut_order: rec.aut.order(),
        period: rec.orbit.period,
        rho_on_classes,
        irr_orbit_lengths: crate::group::irr_orbit_distribution(&rec.aut, &rec.rho, limits)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn lim() -> Limits {
        Limits::default()
    }

    fn t(images: Vec<Vec<usize>>) -> PermTuple {
        PermTuple::from_images(images).unwrap()
    }

    #[test]
    fn transitive_examples() {
        assert_eq!(enumerate_transitive(1, 3, &lim()).unwrap().len(), 1);
        assert_eq!(enumerate_transitive(2, 2, &lim()).unwrap().len(), 3);
        assert_eq!(enumerate_transitive(2, 1, &lim()).unwrap().len(), 1);
        assert!(enumerate_transitive(2, 8, &lim()).is_err());
    }

    #[test]
    fn transitive_class_counts() {
        let f2 = [1, 3, 7, 26, 97, 624];
        for (i, &c) in f2.iter().enumerate() {
            assert_eq!(enumerate_transitive(2, i + 1, &lim()).unwrap().len(), c);
        }
        let f3 = [1, 7, 41, 604];
        for (i, &c) in f3.iter().enumerate() {
            assert_eq!(enumerate_transitive(3, i + 1, &lim()).unwrap().len(), c);
        }
    }

    #[test]
    fn hall_values() {
        let expect = [1u32, 3, 13, 71, 461];
        for (i, &v) in expect.iter().enumerate() {
            assert_eq!(count_subgroups_hall(2, i + 1).unwrap(), BigUint::from(v));
        }
        assert_eq!(count_subgroups_hall(1, 7).unwrap(), BigUint::from(1u32));
        assert_eq!(count_subgroups_hall(3, 3).unwrap(), BigUint::from(97u32));
        assert!(count_subgroups_hall(2, 0).is_err());
    }

    #[test]
    fn pointed_enumeration_matches_hall() {
        for (m, nmax) in [(1, 6), (2, 5), (3, 4)] {
            for n in 1..=nmax {
                let pointed = enumerate_pointed(m, n, &lim()).unwrap();
                assert_eq!(BigUint::from(pointed.len()), count_subgroups_hall(m, n).unwrap());
                assert!(pointed.iter().all(PermTuple::is_transitive));
            }
        }
    }

    #[test]
    fn deck_orbits_recover_hall() {
        for (m, nmax) in [(2, 6), (3, 4)] {
            for n in 1..=nmax {
                let total: usize = enumerate_transitive(m, n, &lim())
                    .unwrap()
                    .iter()
                    .map(|c| n / c.centralizer_order(&lim()).unwrap())
                    .sum();
                assert_eq!(BigUint::from(total), count_subgroups_hall(m, n).unwrap());
            }
        }
    }

    /// Distinct canonical forms among all transitive tuples in `S_n^m`.
    fn brute_force_classes(m: usize, n: usize) -> usize {
        let all: Vec<Perm> = crate::perm::subgroup_closure(
            n,
            &if n >= 2 { vec![Perm::from_cycles(n, &[&[0, 1]]).unwrap(), Perm::long_cycle(n)] } else { vec![] },
            1000,
        )
        .unwrap();
        let mut forms = HashSet::new();
        let mut idx = vec![0usize; m];
        loop {
            let tup = PermTuple::new(idx.iter().map(|&i| all[i].clone()).collect()).unwrap();
            if tup.is_transitive() {
                forms.insert(tup.canonical_form());
            }
            let mut i = 0;
            while i < m {
                idx[i] += 1;
                if idx[i] < all.len() {
                    break;
                }
                idx[i] = 0;
                i += 1;
            }
            if i == m {
                break;
            }
        }
        forms.len()
    }

    #[test]
    fn class_counts_match_exhaustive_scan() {
        for (m, nmax) in [(2, 4), (3, 3)] {
            for n in 1..=nmax {
                assert_eq!(enumerate_transitive(m, n, &lim()).unwrap().len(), brute_force_classes(m, n));
            }
        }
    }

    #[test]
    fn fm0_orbit_examples() {
        let o = fm0_orbits(&t(vec![vec![1, 0], vec![1, 0]]));
        assert_eq!(o.len(), 2);
        let o = fm0_orbits(&t(vec![vec![1, 0], vec![0, 1]]));
        assert_eq!(o.len(), 1);
        assert_eq!(o[0].size(), 2);
        let o = fm0_orbits(&t(vec![vec![1, 2, 3, 0]]));
        assert_eq!(o.len(), 4);
        assert!(o.iter().all(|x| x.size() == 1));
    }

    #[test]
    fn fm0_orbits_have_equal_sizes() {
        for (m, nmax) in [(2, 5), (3, 4)] {
            for n in 1..=nmax {
                for c in enumerate_transitive(m, n, &lim()).unwrap() {
                    let orbits = fm0_orbits(&c);
                    let s = orbits[0].size();
                    assert!(orbits.iter().all(|o| o.size() == s));
                    assert_eq!(s * orbits.len(), n);
                }
            }
        }
    }

    #[test]
    fn twist_laws() {
        for c in enumerate_transitive(2, 4, &lim()).unwrap() {
            let orbits = fm0_orbits(&c);
            let b = orbits.len();
            for o in &orbits {
                assert_eq!(twist(o, 0), *o);
                assert!(iso_orbits(&twist(&twist(o, 1), -1), o, SearchOrder::Forward).is_some());
                assert_eq!(twist(&twist(o, 2), 3), twist(o, 5));
                assert_eq!(twist(o, o.period as i64), *o);
                assert!(iso_orbits(&twist(o, b as i64), o, SearchOrder::Forward).is_some());
            }
            // σ_1 carries the orbit of x onto the orbit of σ_1(x), intertwining z_1^1(O) with O'
            let s1 = c.get(0);
            let o0 = &orbits[0];
            let image: Vec<usize> = {
                let mut v: Vec<usize> = o0.support.iter().map(|&x| s1.apply(x)).collect();
                v.sort_unstable();
                v
            };
            let target = orbits.iter().find(|o| o.support == image).unwrap();
            assert!(iso_orbits(&twist(o0, 1), target, SearchOrder::Forward).is_some());
        }
    }

    #[test]
    fn iso_examples() {
        let o = &fm0_orbits(&t(vec![vec![1, 0], vec![0, 1]]))[0];
        assert_eq!(iso_orbits(o, o, SearchOrder::Forward), Some(Perm::identity(2)));
        let singles = fm0_orbits(&t(vec![vec![1, 0], vec![1, 0]]));
        assert!(iso_orbits(&singles[0], &singles[1], SearchOrder::Forward).is_some());
        assert!(iso_orbits(o, &singles[0], SearchOrder::Forward).is_none());
    }

    #[test]
    fn section_seven_one_orbit() {
        let o = &fm0_orbits(&t(vec![vec![1, 0], vec![0, 1]]))[0];
        let rec = analyze_sft(o, SearchOrder::Forward, &lim()).unwrap();
        assert_eq!(rec.k, 1);
        assert_eq!(rec.aut.order(), 2);
        assert!(rec.rho.is_identity());

        let single = &fm0_orbits(&t(vec![vec![0], vec![0]]))[0];
        let rec = analyze_sft(single, SearchOrder::Forward, &lim()).unwrap();
        assert_eq!((rec.k, rec.aut.order()), (1, 1));
        assert!(rec.rho.is_identity());
    }

    #[test]
    fn sft_examples() {
        for budget in 1..=8 {
            let recs = enumerate_sft(1, budget, SearchOrder::Forward, &lim()).unwrap();
            assert_eq!(recs.len(), 1);
            assert_eq!((recs[0].orbit.size(), recs[0].k), (1, 1));
        }
        let recs = enumerate_sft(2, 2, SearchOrder::Forward, &lim()).unwrap();
        assert!(recs.iter().any(|r| r.orbit.size() == 1 && r.k == 1));
        assert!(recs.iter().any(|r| r.orbit.size() == 2 && r.k == 1 && r.aut.order() == 2));
        for r in enumerate_sft(2, 5, SearchOrder::Forward, &lim()).unwrap() {
            assert!(r.induced_degree() <= 5);
        }
    }

    #[test]
    fn sft_records_are_distinct_under_twists() {
        let recs = enumerate_sft(2, 4, SearchOrder::Forward, &lim()).unwrap();
        for (i, a) in recs.iter().enumerate() {
            for b in &recs[i + 1..] {
                for s in 0..a.k.max(1) {
                    assert!(iso_orbits(&twist(&a.orbit, s as i64), &b.orbit, SearchOrder::Forward).is_none());
                }
            }
        }
    }

    #[test]
    fn rho_permutes_classes() {
        for r in enumerate_sft(2, 5, SearchOrder::Forward, &lim()).unwrap() {
            let s = summarize(&r, &lim()).unwrap();
            let mut sorted = s.rho_on_classes.clone();
            sorted.sort_unstable();
            assert_eq!(sorted, (0..sorted.len()).collect::<Vec<_>>());
        }
    }

    #[test]
    fn reversed_search_gives_same_statistics() {
        let key = |recs: Vec<SftRecord>| -> Vec<(usize, usize, usize, BTreeMap<usize, usize>)> {
            let mut v: Vec<_> = recs
                .iter()
                .map(|r| {
                    let s = summarize(r, &lim()).unwrap();
                    (s.orbit_size, s.k, s.aut_order, s.irr_orbit_lengths)
                })
                .collect();
            v.sort();
            v
        };
        let f = key(enumerate_sft(2, 5, SearchOrder::Forward, &lim()).unwrap());
        let r = key(enumerate_sft(2, 5, SearchOrder::Reverse, &lim()).unwrap());
        assert_eq!(f, r);
    }
}

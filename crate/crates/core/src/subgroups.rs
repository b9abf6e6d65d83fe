//! Counting finite-index subgroups of finitely generated groups that map onto `ℤ`.
//!
//! Closed forms for abelian groups, the Klein-bottle group and `BS(1,d)`,
//! and a brute-force oracle counting transitive relator-satisfying tuples up
//! to conjugacy.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{divisors, gcd, multiplicative_order};
use crate::error::{Error, Result};
use crate::fm::enumerate_transitive;
use crate::limits::Limits;
use crate::perm::{Perm, PermTuple};
use crate::psh::{counts_by_degree, cuspidal_census};
use crate::symchar::partitions;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

/// Generators are the letters `a, b, c, …`; a trailing `-` inverts a letter,
/// so `aba-b-b-` is `a b a⁻¹ b⁻¹ b⁻¹`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    pub num_generators: usize,
    pub relators: Vec<Vec<Letter>>,
}

impl Presentation {
    pub fn new(num_generators: usize, relators: Vec<Vec<Letter>>) -> Result<Presentation> {
        for r in &relators {
            if let Some(l) = r.iter().find(|l| l.generator >= num_generators) {
                return Err(Error::invalid(format!(
                    "relator uses generator {} but there are only {num_generators}",
                    l.generator
                )));
            }
        }
        Ok(Presentation {
            num_generators,
            relators,
        })
    }

    pub fn free(m: usize) -> Presentation {
        Presentation {
            num_generators: m,
            relators: Vec::new(),
        }
    }

    /// `⟨a, b | a b a⁻¹ = b⁻¹⟩`.
    pub fn klein() -> Presentation {
        "aba-b".parse().expect("static presentation")
    }

    /// `⟨a, b | a b a⁻¹ = b^d⟩`.
    pub fn baumslag_solitar(d: usize) -> Presentation {
        let mut r = vec![
            Letter { generator: 0, inverse: false },
            Letter { generator: 1, inverse: false },
            Letter { generator: 0, inverse: true },
        ];
        r.extend((0..d).map(|_| Letter { generator: 1, inverse: true }));
        Presentation {
            num_generators: 2,
            relators: vec![r],
        }
    }

    /// Parses one relator word; the generator count grows to cover its letters.
    pub fn parse_word(s: &str) -> Result<Vec<Letter>> {
        let mut out: Vec<Letter> = Vec::new();
        for c in s.chars() {
            match c {
                'a'..='z' => out.push(Letter {
                    generator: c as usize - 'a' as usize,
                    inverse: false,
                }),
                '-' => match out.last_mut() {
                    Some(l) if !l.inverse => l.inverse = true,
                    _ => return Err(Error::invalid(format!("misplaced '-' in relator {s:?}"))),
                },
                c if c.is_whitespace() => {}
                _ => return Err(Error::invalid(format!("unexpected character {c:?} in relator {s:?}"))),
            }
        }
        Ok(out)
    }
}

/// Relators separated by commas; the generator count is the largest letter used.
impl FromStr for Presentation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Presentation> {
        let relators = s
            .split(',')
            .map(str::trim)
            .filter(|w| !w.is_empty())
            .map(Presentation::parse_word)
            .collect::<Result<Vec<_>>>()?;
        let num_generators = relators
            .iter()
            .flatten()
            .map(|l| l.generator + 1)
            .max()
            .unwrap_or(0);
        Presentation::new(num_generators, relators)
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let words: Vec<String> = self
            .relators
            .iter()
            .map(|r| {
                r.iter()
                    .map(|l| {
                        let c = (b'a' + l.generator as u8) as char;
                        if l.inverse {
                            format!("{c}-")
                        } else {
                            c.to_string()
                        }
                    })
                    .collect()
            })
            .collect();
        write!(f, "{}", words.join(","))
    }
}

fn all_perms(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push(p.clone());
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).expect("successor exists");
        p.swap(i - 1, j);
        p[i..].reverse();
    }
}

fn cycle_type_rep(parts: &[usize], n: usize) -> Vec<usize> {
    let mut images = vec![0; n];
    let mut start = 0;
    for &len in parts {
        for i in 0..len {
            images[start + i] = start + (i + 1) % len;
        }
        start += len;
    }
    images
}

fn relator_holds(word: &[Letter], gens: &[Vec<usize>], invs: &[Vec<usize>], n: usize) -> bool {
    (0..n).all(|x| {
        let mut y = x;
        for l in word.iter().rev() {
            y = if l.inverse { invs[l.generator][y] } else { gens[l.generator][y] };
        }
        y == x
    })
}

fn invert(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (i, &j) in p.iter().enumerate() {
        inv[j] = i;
    }
    inv
}

/// Conjugacy classes of transitive tuples in `S_n` satisfying every relator,
/// i.e. conjugacy classes of index-`n` subgroups.
pub fn oracle_count(p: &Presentation, n: usize, limits: &Limits) -> Result<usize> {
    Ok(oracle_classes(p, n, limits)?.len())
}

/// Canonical forms of the classes counted by [`oracle_count`].
pub fn oracle_classes(p: &Presentation, n: usize, limits: &Limits) -> Result<Vec<PermTuple>> {
    if n == 0 {
        return Err(Error::invalid("subgroup index must be at least 1"));
    }
    if n > limits.oracle_max_n {
        return Err(Error::cap("oracle degree", n, limits.oracle_max_n));
    }
    let r = p.num_generators;
    if r > limits.oracle_max_generators {
        return Err(Error::cap("oracle generator count", r, limits.oracle_max_generators));
    }
    if r == 0 {
        return Ok(if n == 1 { vec![PermTuple::identity(1, 0)] } else { Vec::new() });
    }
    // relators are checked as soon as their last generator is assigned
    let mut due: Vec<Vec<&[Letter]>> = vec![Vec::new(); r];
    for w in &p.relators {
        if let Some(last) = w.iter().map(|l| l.generator).max() {
            due[last].push(w);
        }
    }
    let everything = all_perms(n);
    let reps: Vec<Vec<usize>> = partitions(n, limits)?
        .iter()
        .map(|lambda| cycle_type_rep(lambda.parts(), n))
        .collect();

    let found: BTreeSet<PermTuple> = reps
        .par_iter()
        .map(|first| {
            let mut gens = vec![first.clone()];
            let mut invs = vec![invert(first)];
            let mut local = BTreeSet::new();
            search(&due, &everything, n, r, &mut gens, &mut invs, &mut local);
            local
        })
        .reduce(BTreeSet::new, |mut a, b| {
            a.extend(b);
            a
        });
    Ok(found.into_iter().collect())
}

fn search(
    due: &[Vec<&[Letter]>],
    everything: &[Vec<usize>],
    n: usize,
    r: usize,
    gens: &mut Vec<Vec<usize>>,
    invs: &mut Vec<Vec<usize>>,
    found: &mut BTreeSet<PermTuple>,
) {
    let j = gens.len() - 1;
    if !due[j].iter().all(|w| relator_holds(w, gens, invs, n)) {
        return;
    }
    if gens.len() == r {
        let perms = gens.iter().map(|g| Perm::from_images_unchecked(g.clone())).collect();
        let t = PermTuple::new(perms).expect("same degree");
        if t.is_transitive() {
            found.insert(t.canonical_form());
        }
        return;
    }
    for g in everything {
        gens.push(g.clone());
        invs.push(invert(g));
        search(due, everything, n, r, gens, invs, found);
        gens.pop();
        invs.pop();
    }
}

/// The summand `a_d` for the Klein-bottle group.
pub fn klein_a(d: u64) -> u64 {
    if d % 2 == 1 {
        1
    } else if d % 4 == 2 {
        (d + 6) / 4
    } else {
        (d + 4) / 4
    }
}

/// Conjugacy classes of index-`n` subgroups of `⟨a, b | a b a⁻¹ = b⁻¹⟩`: `Σ_{d|n} a_d`.
pub fn klein_count(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::invalid("subgroup index must be at least 1"));
    }
    Ok(divisors(n).into_iter().map(klein_a).sum())
}

/// One class `(m, i)` of `BS(1,d)`-data with its degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BsClass {
    pub m: u64,
    pub i: u64,
    pub degree: u64,
}

/// Classes of pairs `(m, i)`, `gcd(m, d) = 1`, `0 <= i < m <= max_m`, under
/// `i ~ i·d^j mod m`; the representative is the least `i`.
pub fn bs_classes(d: u64, max_m: u64) -> Result<Vec<BsClass>> {
    if d < 2 {
        return Err(Error::invalid("BS(1,d) needs d >= 2"));
    }
    let mut out = Vec::new();
    for m in 1..=max_m {
        if gcd(m, d) != 1 {
            continue;
        }
        let mut seen = vec![false; m as usize];
        for i in 0..m {
            if seen[i as usize] {
                continue;
            }
            let mut x = i;
            while !seen[x as usize] {
                seen[x as usize] = true;
                x = x * (d % m) % m;
            }
            let m_prime = m / gcd(m, i);
            let ord = multiplicative_order(d, m_prime).ok_or_else(|| Error::logic("d not invertible mod m'"))?;
            out.push(BsClass { m, i, degree: m * ord });
        }
    }
    Ok(out)
}

/// Conjugacy classes of index-`n` subgroups of `BS(1,d)`: classes whose degree divides `n`.
pub fn bs_count(d: u64, n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::invalid("subgroup index must be at least 1"));
    }
    Ok(bs_classes(d, n)?.into_iter().filter(|c| n % c.degree == 0).count() as u64)
}

/// `D × ℤ^rank` with `D = ⊕ ℤ/t`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianSpec {
    pub torsion: Vec<u64>,
    pub rank: usize,
}

impl AbelianSpec {
    pub fn torsion_order(&self) -> Option<u64> {
        self.torsion.iter().try_fold(1u64, |acc, &t| acc.checked_mul(t))
    }
}

/// `a_d` = number of index-`d` subgroups of `D`, indexed by `d | |D|`, found by
/// closing every subgroup under one more element until nothing new appears.
pub fn torsion_subgroup_counts(torsion: &[u64], limits: &Limits) -> Result<Vec<(u64, u64)>> {
    if let Some(&t) = torsion.iter().find(|&&t| t < 2) {
        return Err(Error::invalid(format!("torsion factor {t} must be at least 2")));
    }
    let order = torsion
        .iter()
        .try_fold(1u64, |acc, &t| acc.checked_mul(t))
        .filter(|&o| o <= limits.torsion_order_cap as u64)
        .ok_or(Error::cap("torsion order", usize::MAX, limits.torsion_order_cap))?;
    let size = order as usize;
    let add = |x: usize, y: usize| -> usize {
        let (mut x, mut y, mut out, mut scale) = (x, y, 0usize, 1usize);
        for &t in torsion.iter().rev() {
            let t = t as usize;
            out += ((x % t + y % t) % t) * scale;
            scale *= t;
            x /= t;
            y /= t;
        }
        out
    };

    let mut seen: HashSet<Vec<bool>> = HashSet::new();
    let mut trivial = vec![false; size];
    trivial[0] = true;
    seen.insert(trivial.clone());
    let mut frontier = vec![trivial];
    while let Some(s) = frontier.pop() {
        for g in 0..size {
            if s[g] {
                continue;
            }
            // S + <g>
            let mut next = s.clone();
            let members: Vec<usize> = (0..size).filter(|&x| s[x]).collect();
            let mut multiple = g;
            while !s[multiple] {
                for &x in &members {
                    next[add(x, multiple)] = true;
                }
                multiple = add(multiple, g);
            }
            if seen.insert(next.clone()) {
                frontier.push(next);
            }
        }
    }
    let mut counts: Vec<(u64, u64)> = divisors(order).into_iter().map(|d| (d, 0)).collect();
    for s in &seen {
        let sub = s.iter().filter(|&&b| b).count() as u64;
        let index = order / sub;
        if let Some(entry) = counts.iter_mut().find(|(d, _)| *d == index) {
            entry.1 += 1;
        }
    }
    Ok(counts)
}

/// Index-`m` subgroups of `D × ℤ^rank`: `Σ_{d_1 | d_2 | … | d_rank | m} a_{d_1}·d_1⋯d_rank`.
pub fn abelian_count(spec: &AbelianSpec, m: u64, limits: &Limits) -> Result<u128> {
    if m == 0 {
        return Err(Error::invalid("subgroup index must be at least 1"));
    }
    let a = torsion_subgroup_counts(&spec.torsion, limits)?;
    let a_of = |d: u64| a.iter().find(|(e, _)| *e == d).map_or(0, |(_, c)| *c) as u128;
    if spec.rank == 0 {
        return Ok(a_of(m));
    }
    // weight[d] = Σ over chains ending in d_j = d of a_{d_1}·d_1⋯d_j
    let divs = divisors(m);
    let mut weight: Vec<u128> = divs.iter().map(|&d| a_of(d) * d as u128).collect();
    for _ in 1..spec.rank {
        let mut next = vec![0u128; divs.len()];
        for (j, &d) in divs.iter().enumerate() {
            for (i, &e) in divs.iter().enumerate() {
                if d % e == 0 {
                    let term = weight[i].checked_mul(d as u128).ok_or(Error::Overflow("abelian count"))?;
                    next[j] = next[j].checked_add(term).ok_or(Error::Overflow("abelian count"))?;
                }
            }
        }
        weight = next;
    }
    weight
        .into_iter()
        .try_fold(0u128, |acc, w| acc.checked_add(w))
        .ok_or(Error::Overflow("abelian count"))
}

/// Index-`m` sublattices of `ℤ²` by Hermite normal form `[[a, b], [0, d]]`, `ad = m`, `0 <= b < d`.
pub fn sublattices_z2(m: u64) -> u64 {
    divisors(m).into_iter().map(|a| m / a).sum()
}

/// `Σ_{d|n}` cuspidal counts in degree `d` for `G = F_m`.
pub fn generic_split_count(m: usize, n: usize, limits: &Limits) -> Result<u64> {
    let counts = counts_by_degree(&cuspidal_census(m, n, limits)?, n);
    Ok(divisors(n as u64).into_iter().map(|d| counts[d as usize]).sum())
}

/// `generic_split_count` next to the number of transitive `F_m`-sets of size `n`.
pub fn generic_split_check(m: usize, n: usize, limits: &Limits) -> Result<(u64, u64)> {
    Ok((
        generic_split_count(m, n, limits)?,
        enumerate_transitive(m, n, limits)?.len() as u64,
    ))
}

//! Partitions, symmetric-group characters, Kronecker and Littlewood–Richardson coefficients.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{OnceLock, RwLock};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::factorial;
use crate::error::{Error, Result};
use crate::limits::Limits;

/// A weakly decreasing list of positive parts.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Partition> {
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::invalid(format!("partition {parts:?} has a zero part")));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `z_μ = Π i^{m_i} m_i!`, the order of the centralizer of a permutation of cycle type `μ`.
    pub fn z(&self) -> BigUint {
        let mut z = BigUint::one();
        let mut i = 0;
        while i < self.0.len() {
            let part = self.0[i];
            let mut mult = 0;
            while i < self.0.len() && self.0[i] == part {
                mult += 1;
                i += 1;
                z *= BigUint::from(part) * BigUint::from(mult as u64);
            }
        }
        z
    }

    /// Size `n!/z_μ` of the conjugacy class of cycle type `μ`.
    pub fn class_size(&self) -> BigUint {
        factorial(self.size()) / self.z()
    }

    /// Dimension of the Specht module, by the hook length formula.
    pub fn dimension(&self) -> BigUint {
        let conj = self.conjugate();
        let mut hooks = BigUint::one();
        for (r, &row) in self.0.iter().enumerate() {
            for c in 0..row {
                hooks *= BigUint::from(row - c + conj.0[c] - r - 1);
            }
        }
        factorial(self.size()) / hooks
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.0.first().copied().unwrap_or(0);
        Partition((0..width).map(|c| self.0.iter().filter(|&&p| p > c).count()).collect())
    }

    /// Parts of both partitions, merged.
    pub fn union(&self, other: &Partition) -> Partition {
        let mut parts = self.0.clone();
        parts.extend_from_slice(&other.0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    fn contains(&self, other: &Partition) -> bool {
        other.0.len() <= self.0.len() && other.0.iter().zip(&self.0).all(|(a, b)| a <= b)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Partition> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Partition(Vec::new()));
        }
        let parts = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::invalid(format!("bad partition part {p:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::invalid(format!("partition {s:?} is not weakly decreasing")));
        }
        Partition::new(parts)
    }
}

impl TryFrom<String> for Partition {
    type Error = Error;

    fn try_from(s: String) -> Result<Partition> {
        s.parse()
    }
}

impl From<Partition> for String {
    fn from(p: Partition) -> String {
        p.to_string()
    }
}

/// All partitions of `n`, in reverse lexicographic order: `(n)` first, `(1^n)` last.
pub fn partitions(n: usize, limits: &Limits) -> Result<Vec<Partition>> {
    limits.check_partition_n(n)?;
    let mut out = Vec::new();
    let mut current = Vec::new();
    fill_partitions(n, n, &mut current, &mut out);
    Ok(out)
}

fn fill_partitions(rest: usize, max: usize, current: &mut Vec<usize>, out: &mut Vec<Partition>) {
    if rest == 0 {
        out.push(Partition(current.clone()));
        return;
    }
    for part in (1..=max.min(rest)).rev() {
        current.push(part);
        fill_partitions(rest - part, part, current, out);
        current.pop();
    }
}

type MemoKey = (Vec<usize>, Vec<usize>);

fn memo() -> &'static RwLock<HashMap<MemoKey, i128>> {
    static MEMO: OnceLock<RwLock<HashMap<MemoKey, i128>>> = OnceLock::new();
    MEMO.get_or_init(|| RwLock::new(HashMap::new()))
}

/// `χ_λ(μ)`: the irreducible character `λ` at the class of cycle type `μ`.
pub fn character(lambda: &Partition, mu: &Partition) -> Result<i128> {
    if lambda.size() != mu.size() {
        return Err(Error::invalid(format!(
            "character of a partition of {} at a class of S_{}",
            lambda.size(),
            mu.size()
        )));
    }
    Ok(mn(&lambda.0, &mu.0))
}

/// Murnaghan–Nakayama on beta-sets: removing a rim hook of length `r` moves a
/// bead from `b` to `b - r`; the sign counts the beads jumped over.
fn mn(lambda: &[usize], mu: &[usize]) -> i128 {
    if mu.is_empty() {
        return 1;
    }
    let key = (lambda.to_vec(), mu.to_vec());
    if let Some(&v) = memo().read().unwrap().get(&key) {
        return v;
    }
    let r = mu[0];
    let len = lambda.len();
    let beta: Vec<usize> = lambda.iter().enumerate().map(|(i, &p)| p + len - 1 - i).collect();
    let mut total = 0i128;
    for (i, &b) in beta.iter().enumerate() {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let target = b - r;
        let jumped = beta.iter().filter(|&&x| x > target && x < b).count();
        let mut next = beta.clone();
        next[i] = target;
        next.sort_unstable_by(|a, b| b.cmp(a));
        let k = next.len();
        let shape: Vec<usize> = next
            .iter()
            .enumerate()
            .map(|(j, &x)| x + j + 1 - k)
            .filter(|&p| p > 0)
            .collect();
        let value = mn(&shape, &mu[1..]);
        total += if jumped % 2 == 0 { value } else { -value };
    }
    memo().write().unwrap().insert(key, total);
    total
}

/// The character table of `S_n`: rows and columns both indexed by [`partitions`].
pub fn character_table(n: usize, limits: &Limits) -> Result<(Vec<Partition>, Vec<Vec<i128>>)> {
    let parts = partitions(n, limits)?;
    let table = parts
        .par_iter()
        .map(|l| parts.iter().map(|m| mn(&l.0, &m.0)).collect())
        .collect();
    Ok((parts, table))
}

/// `g(λ_1, …, λ_m, μ) = (1/n!) Σ_ν |C_ν| χ_{λ_1}(ν) ⋯ χ_{λ_m}(ν) χ_μ(ν)`.
pub fn kronecker(lambdas: &[Partition], mu: &Partition, limits: &Limits) -> Result<BigUint> {
    let n = mu.size();
    if let Some(bad) = lambdas.iter().find(|l| l.size() != n) {
        return Err(Error::invalid(format!(
            "kronecker arguments of different sizes: {bad} and {mu}"
        )));
    }
    let classes = partitions(n, limits)?;
    let mut total = BigInt::zero();
    for nu in &classes {
        let mut prod = BigInt::from(mn(&mu.0, &nu.0));
        for l in lambdas {
            prod *= BigInt::from(mn(&l.0, &nu.0));
        }
        total += prod * BigInt::from(nu.class_size());
    }
    exact_quotient(total, &factorial(n), "kronecker coefficient")
}

fn exact_quotient(num: BigInt, den: &BigUint, what: &str) -> Result<BigUint> {
    let den = BigInt::from(den.clone());
    if (&num % &den) != BigInt::zero() || num.is_negative() {
        return Err(Error::logic(format!("{what}: {num}/{den} is not a non-negative integer")));
    }
    Ok((num / den).to_biguint().expect("non-negative"))
}

/// `c^ν_{λ,μ}`, counted as Littlewood–Richardson tableaux of shape `ν/λ` and content `μ`.
pub fn lr_coefficient(lambda: &Partition, mu: &Partition, nu: &Partition) -> Result<u64> {
    if lambda.size() + mu.size() != nu.size() {
        return Err(Error::invalid(format!(
            "LR coefficient needs |λ|+|μ| = |ν|, got {}+{} vs {}",
            lambda.size(),
            mu.size(),
            nu.size()
        )));
    }
    if !nu.contains(lambda) || !nu.contains(mu) {
        return Ok(0);
    }
    let mut cells = Vec::new();
    for (r, &row) in nu.0.iter().enumerate() {
        let start = lambda.0.get(r).copied().unwrap_or(0);
        for c in (start..row).rev() {
            cells.push((r, c));
        }
    }
    let mut filling: HashMap<(usize, usize), usize> = HashMap::new();
    let mut counts = vec![0usize; mu.len() + 1];
    Ok(lr_fill(&cells, 0, &mu.0, &mut filling, &mut counts))
}

fn lr_fill(
    cells: &[(usize, usize)],
    idx: usize,
    content: &[usize],
    filling: &mut HashMap<(usize, usize), usize>,
    counts: &mut Vec<usize>,
) -> u64 {
    if idx == cells.len() {
        return 1;
    }
    let (r, c) = cells[idx];
    let max = filling.get(&(r, c + 1)).copied().unwrap_or(content.len());
    let min = match r.checked_sub(1).and_then(|up| filling.get(&(up, c))) {
        Some(&above) => above + 1,
        None => 1,
    };
    let mut total = 0;
    for v in min..=max {
        if counts[v] >= content[v - 1] || (v > 1 && counts[v] + 1 > counts[v - 1]) {
            continue;
        }
        counts[v] += 1;
        filling.insert((r, c), v);
        total += lr_fill(cells, idx + 1, content, filling, counts);
        filling.remove(&(r, c));
        counts[v] -= 1;
    }
    total
}

/// `Σ g(λ_1, …, λ_m, μ)^2` over all `(m+1)`-tuples of partitions of `n`.
pub fn sum_kron_squares(m: usize, n: usize, limits: &Limits) -> Result<BigUint> {
    if m == 0 {
        return Err(Error::invalid("sum_kron_squares needs m >= 1"));
    }
    let (parts, table) = character_table(n, limits)?;
    let p = parts.len();
    let class_sizes: Vec<BigInt> = parts.iter().map(|nu| BigInt::from(nu.class_size())).collect();
    let n_fact = factorial(n);
    let total_tuples = (p as u128).checked_pow(m as u32).ok_or(Error::Overflow("tuple count"))?;
    if total_tuples > 50_000_000 {
        return Err(Error::cap(
            "number of partition tuples",
            total_tuples.min(usize::MAX as u128) as usize,
            50_000_000,
        ));
    }
    // weights[ν] = |C_ν| Π χ_{λ_i}(ν); recurse over λ_1..λ_m, then sum over μ
    let base: Vec<BigInt> = class_sizes.clone();
    let partial: Vec<Result<BigUint>> = (0..p)
        .into_par_iter()
        .map(|first| {
            let w: Vec<BigInt> = (0..p).map(|nu| &base[nu] * table[first][nu]).collect();
            kron_square_rec(&table, &w, m - 1, &n_fact)
        })
        .collect();
    let mut total = BigUint::zero();
    for r in partial {
        total += r?;
    }
    Ok(total)
}

fn kron_square_rec(table: &[Vec<i128>], weights: &[BigInt], remaining: usize, n_fact: &BigUint) -> Result<BigUint> {
    let p = table.len();
    if remaining == 0 {
        let mut total = BigUint::zero();
        for row in table {
            let num: BigInt = (0..p).map(|nu| &weights[nu] * row[nu]).sum();
            let g = exact_quotient(num, n_fact, "kronecker coefficient")?;
            total += &g * &g;
        }
        return Ok(total);
    }
    let mut total = BigUint::zero();
    for row in table {
        let w: Vec<BigInt> = (0..p).map(|nu| &weights[nu] * row[nu]).collect();
        total += kron_square_rec(table, &w, remaining - 1, n_fact)?;
    }
    Ok(total)
}

/// `Σ_{μ ⊢ n} z_μ^{m-1}`: the number of simultaneous conjugacy classes of `m`-tuples in `S_n`.
pub fn tuple_class_count(m: usize, n: usize, limits: &Limits) -> Result<BigUint> {
    let mut total = BigUint::zero();
    for mu in partitions(n, limits)? {
        total += mu.z().pow(m.saturating_sub(1) as u32);
    }
    Ok(total)
}

/// Convenience for small values.
pub fn to_u64(x: &BigUint) -> Result<u64> {
    x.to_u64().ok_or(Error::Overflow("u64 conversion"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn partition_listing() {
        assert_eq!(partitions(0, &lim()).unwrap(), vec![Partition(vec![])]);
        let four: Vec<String> = partitions(4, &lim()).unwrap().iter().map(|x| x.to_string()).collect();
        assert_eq!(four, vec!["4", "3,1", "2,2", "2,1,1", "1,1,1,1"]);
        assert_eq!(partitions(6, &lim()).unwrap().len(), 11);
        assert!(partitions(41, &lim()).is_err());
    }

    #[test]
    fn partition_parsing() {
        assert_eq!(p("2,1").parts(), &[2, 1]);
        assert!("1,2".parse::<Partition>().is_err());
        assert!("2,x".parse::<Partition>().is_err());
        assert_eq!(serde_json::to_string(&p("3,1,1")).unwrap(), "\"3,1,1\"");
    }

    #[test]
    fn character_examples() {
        for n in 1..=6 {
            for mu in partitions(n, &lim()).unwrap() {
                assert_eq!(character(&Partition(vec![n]), &mu).unwrap(), 1);
                let sign = if (n - mu.len()) % 2 == 0 { 1 } else { -1 };
                assert_eq!(character(&Partition(vec![1; n]), &mu).unwrap(), sign);
            }
        }
        assert_eq!(character(&p("2,1"), &p("3")).unwrap(), -1);
        assert_eq!(character(&p("2,1"), &p("1,1,1")).unwrap(), 2);
        assert_eq!(character(&p("3,1"), &p("2,2")).unwrap(), -1);
        assert!(character(&p("2,1"), &p("2")).is_err());
    }

    #[test]
    fn column_orthogonality() {
        for n in 1..=7 {
            let (parts, t) = character_table(n, &lim()).unwrap();
            for a in 0..parts.len() {
                for b in 0..parts.len() {
                    let s: i128 = (0..parts.len()).map(|l| t[l][a] * t[l][b]).sum();
                    let expect = if a == b { parts[a].z().to_i128().unwrap() } else { 0 };
                    assert_eq!(s, expect, "n={n} columns {a},{b}");
                }
            }
        }
    }

    #[test]
    fn dimensions_agree_with_identity_column() {
        for n in 1..=8 {
            let ones = Partition(vec![1; n]);
            for l in partitions(n, &lim()).unwrap() {
                assert_eq!(BigInt::from(character(&l, &ones).unwrap()), BigInt::from(l.dimension()));
            }
        }
    }

    #[test]
    fn kronecker_examples() {
        for n in 1..=5 {
            for l in partitions(n, &lim()).unwrap() {
                let g = kronecker(&[Partition(vec![n]), l.clone()], &l, &lim()).unwrap();
                assert_eq!(g, BigUint::one());
            }
        }
        assert_eq!(kronecker(&[p("1,1"), p("1,1")], &p("2"), &lim()).unwrap(), BigUint::one());
        assert_eq!(kronecker(&[p("2,1"), p("2,1")], &p("2,1"), &lim()).unwrap(), BigUint::one());
        assert!(kronecker(&[p("2,1")], &p("2"), &lim()).is_err());
    }

    #[test]
    fn kronecker_symmetry() {
        for n in 1..=5 {
            let ps = partitions(n, &lim()).unwrap();
            for a in &ps {
                for b in &ps {
                    for c in &ps {
                        let g = kronecker(&[a.clone(), b.clone()], c, &lim()).unwrap();
                        assert_eq!(g, kronecker(&[b.clone(), c.clone()], a, &lim()).unwrap());
                        assert_eq!(g, kronecker(&[c.clone(), a.clone()], b, &lim()).unwrap());
                        assert_eq!(g, kronecker(&[b.clone(), a.clone()], c, &lim()).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn kronecker_dimension_identity() {
        for n in 1..=6 {
            let ps = partitions(n, &lim()).unwrap();
            for a in &ps {
                for b in &ps {
                    let lhs: BigUint = ps
                        .iter()
                        .map(|mu| kronecker(&[a.clone(), b.clone()], mu, &lim()).unwrap() * mu.dimension())
                        .sum();
                    assert_eq!(lhs, a.dimension() * b.dimension());
                }
            }
        }
    }

    #[test]
    fn lr_examples() {
        for n in 1..=6 {
            for a in 0..=n {
                let la = if a == 0 { Partition(vec![]) } else { Partition(vec![a]) };
                let lb = if a == n { Partition(vec![]) } else { Partition(vec![n - a]) };
                assert_eq!(lr_coefficient(&la, &lb, &Partition(vec![n])).unwrap(), 1);
            }
        }
        assert_eq!(lr_coefficient(&p("2"), &p("1"), &p("2,1")).unwrap(), 1);
        assert_eq!(lr_coefficient(&p("2,1"), &p("2,1"), &p("3,2,1")).unwrap(), 2);
        assert!(lr_coefficient(&p("2"), &p("1"), &p("2")).is_err());
    }

    /// `c^ν_{λμ} = ⟨Ind χ_λ×χ_μ, χ_ν⟩ = Σ_{ρ,τ} χ_λ(ρ)χ_μ(τ)χ_ν(ρ∪τ)/(z_ρ z_τ)`.
    fn induced_lr(l: &Partition, m: &Partition, nu: &Partition) -> BigInt {
        let (a, b) = (l.size(), m.size());
        let rhos = partitions(a, &lim()).unwrap();
        let taus = partitions(b, &lim()).unwrap();
        let common = factorial(a) * factorial(b);
        let mut num = BigInt::zero();
        for rho in &rhos {
            for tau in &taus {
                let chi = character(l, rho).unwrap() * character(m, tau).unwrap() * character(nu, &rho.union(tau)).unwrap();
                let weight = BigInt::from(common.clone() / (rho.z() * tau.z()));
                num += weight * chi;
            }
        }
        let den = BigInt::from(common);
        assert!((&num % &den).is_zero());
        num / den
    }

    #[test]
    fn lr_matches_induced_characters() {
        for total in 0..=5 {
            for a in 0..=total {
                for l in partitions(a, &lim()).unwrap() {
                    for m in partitions(total - a, &lim()).unwrap() {
                        for nu in partitions(total, &lim()).unwrap() {
                            let c = lr_coefficient(&l, &m, &nu).unwrap();
                            assert_eq!(BigInt::from(c), induced_lr(&l, &m, &nu), "{l:?} {m:?} {nu:?}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn kron_square_sums() {
        let pn = [1u64, 1, 2, 3, 5, 7, 11, 15];
        for n in 0..=7 {
            assert_eq!(sum_kron_squares(1, n, &lim()).unwrap(), BigUint::from(pn[n]));
        }
        assert_eq!(sum_kron_squares(2, 2, &lim()).unwrap(), BigUint::from(4u32));
        for (m, nmax) in [(2, 6), (3, 4)] {
            for n in 0..=nmax {
                assert_eq!(sum_kron_squares(m, n, &lim()).unwrap(), tuple_class_count(m, n, &lim()).unwrap());
            }
        }
        assert!(sum_kron_squares(0, 3, &lim()).is_err());
    }
}

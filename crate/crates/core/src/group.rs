//! Finite groups given by multiplication tables, with a designated automorphism.
//!
//! Everything about irreducible characters is obtained from conjugacy classes:
//! for a cyclic group of automorphisms, the number of irreducibles fixed by
//! each power equals the number of fixed classes, which pins down the orbit
//! structure on characters without ever computing one.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::arith::{divisors, mobius};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::perm::{subgroup_closure, Perm};
use crate::series::IntSeries;

/// A finite group by its multiplication table. Element 0 is the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u32>,
    inv: Vec<usize>,
    perms: Option<Vec<Perm>>,
}

/// An automorphism of a specific [`FiniteGroup`], as an index map.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupAutomorphism {
    pub images: Vec<usize>,
}

impl FiniteGroup {
    /// Builds and checks a group from a full table (`table[a][b] = a·b`).
    pub fn from_table(table: Vec<Vec<usize>>, limits: &Limits) -> Result<FiniteGroup> {
        let n = table.len();
        if n == 0 {
            return Err(Error::invalid("a group needs at least one element"));
        }
        limits.check_group_order(n)?;
        for (a, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::invalid(format!("row {a} has length {}", row.len())));
            }
            let mut seen = vec![false; n];
            for &x in row {
                if x >= n || seen[x] {
                    return Err(Error::invalid(format!("row {a} is not a permutation of the elements")));
                }
                seen[x] = true;
            }
        }
        for a in 0..n {
            if table[0][a] != a || table[a][0] != a {
                return Err(Error::invalid("element 0 is not the identity"));
            }
        }
        let flat: Vec<u32> = table.iter().flatten().map(|&x| x as u32).collect();
        let mut inv = vec![usize::MAX; n];
        for a in 0..n {
            match (0..n).find(|&b| flat[a * n + b] == 0) {
                Some(b) if flat[b * n + a] == 0 => inv[a] = b,
                _ => return Err(Error::invalid(format!("element {a} has no two-sided inverse"))),
            }
        }
        let g = FiniteGroup {
            order: n,
            table: flat,
            inv,
            perms: None,
        };
        if n <= 512 {
            for a in 0..n {
                for b in 0..n {
                    let ab = g.mul(a, b);
                    for c in 0..n {
                        if g.mul(ab, c) != g.mul(a, g.mul(b, c)) {
                            return Err(Error::invalid(format!("table is not associative at ({a},{b},{c})")));
                        }
                    }
                }
            }
        }
        Ok(g)
    }

    /// The group of a closed element list. `elements[0]` must be the identity.
    pub fn from_closed_elements<T, F>(elements: &[T], op: F, limits: &Limits) -> Result<FiniteGroup>
    where
        T: Eq + Hash,
        F: Fn(&T, &T) -> T,
    {
        let n = elements.len();
        limits.check_group_order(n)?;
        let index: HashMap<&T, usize> = elements.iter().enumerate().map(|(i, x)| (x, i)).collect();
        if index.len() != n {
            return Err(Error::invalid("duplicate group elements"));
        }
        let mut table = Vec::with_capacity(n * n);
        for a in elements {
            for b in elements {
                let c = op(a, b);
                let &i = index
                    .get(&c)
                    .ok_or_else(|| Error::invalid("element list is not closed under the operation"))?;
                table.push(i as u32);
            }
        }
        let mut inv = vec![usize::MAX; n];
        for a in 0..n {
            inv[a] = (0..n)
                .find(|&b| table[a * n + b] == 0)
                .ok_or_else(|| Error::invalid("element list is not a group"))?;
        }
        if (0..n).any(|a| table[a] as usize != a || table[a * n] as usize != a) {
            return Err(Error::invalid("first element is not the identity"));
        }
        Ok(FiniteGroup {
            order: n,
            table,
            inv,
            perms: None,
        })
    }

    /// The permutation group generated by `gens` on `degree` points. Elements
    /// are sorted, so the identity comes first.
    pub fn from_permutations(degree: usize, gens: &[Perm], limits: &Limits) -> Result<FiniteGroup> {
        let bound = limits.group_order_cap.min(limits.closure_cap);
        let elements = subgroup_closure(degree, gens, bound).map_err(|e| match e {
            Error::CapExceeded { value, .. } => Error::cap("group order", value, limits.group_order_cap),
            other => other,
        })?;
        FiniteGroup::from_perm_list(elements, limits)
    }

    /// A group from an explicit, closed list of permutations containing the identity.
    pub fn from_perm_list(mut elements: Vec<Perm>, limits: &Limits) -> Result<FiniteGroup> {
        elements.sort();
        let mut g = FiniteGroup::from_closed_elements(&elements, |a, b| a.compose(b), limits)?;
        g.perms = Some(elements);
        Ok(g)
    }

    pub fn trivial() -> FiniteGroup {
        FiniteGroup {
            order: 1,
            table: vec![0],
            inv: vec![0],
            perms: None,
        }
    }

    pub fn cyclic(n: usize) -> FiniteGroup {
        assert!(n >= 1);
        FiniteGroup {
            order: n,
            table: (0..n * n).map(|i| ((i / n + i % n) % n) as u32).collect(),
            inv: (0..n).map(|a| (n - a) % n).collect(),
            perms: None,
        }
    }

    /// Dihedral group of order `2n`, acting on the `n`-gon (`n >= 3`).
    pub fn dihedral(n: usize, limits: &Limits) -> Result<FiniteGroup> {
        if n < 3 {
            return Err(Error::invalid("dihedral group needs n >= 3"));
        }
        let rot = Perm::long_cycle(n);
        let refl = Perm::new((0..n).map(|i| (n - i) % n).collect())?;
        FiniteGroup::from_permutations(n, &[rot, refl], limits)
    }

    pub fn symmetric(k: usize, limits: &Limits) -> Result<FiniteGroup> {
        let mut gens = Vec::new();
        if k >= 2 {
            gens.push(Perm::from_cycles(k, &[&[0, 1]])?);
            gens.push(Perm::long_cycle(k));
        }
        FiniteGroup::from_permutations(k, &gens, limits)
    }

    /// `A × B`, with element `(a, b)` stored at index `a·|B| + b`.
    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup, limits: &Limits) -> Result<FiniteGroup> {
        let n = a.order.checked_mul(b.order).ok_or(Error::Overflow("group order"))?;
        limits.check_group_order(n)?;
        let nb = b.order;
        let mut table = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let (xa, xb, ya, yb) = (x / nb, x % nb, y / nb, y % nb);
                table.push((a.mul(xa, ya) * nb + b.mul(xb, yb)) as u32);
            }
        }
        let inv = (0..n).map(|x| a.inv[x / nb] * nb + b.inv[x % nb]).collect();
        Ok(FiniteGroup {
            order: n,
            table,
            inv,
            perms: None,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// The permutation realization, if the group was built from permutations.
    pub fn permutations(&self) -> Option<&[Perm]> {
        self.perms.as_deref()
    }

    pub fn index_of_perm(&self, p: &Perm) -> Option<usize> {
        self.perms.as_ref()?.binary_search(p).ok()
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// A small generating set, chosen greedily in index order.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut inside = vec![false; self.order];
        inside[0] = true;
        let mut members = vec![0usize];
        for a in 0..self.order {
            if inside[a] {
                continue;
            }
            gens.push(a);
            // rebuild closure with the new generator
            let mut queue: VecDeque<usize> = members.iter().copied().collect();
            while let Some(x) = queue.pop_front() {
                for &g in &gens {
                    let y = self.mul(x, g);
                    if !inside[y] {
                        inside[y] = true;
                        members.push(y);
                        queue.push_back(y);
                    }
                }
            }
        }
        gens
    }

    /// Conjugacy classes, each sorted, ordered by their least element.
    pub fn conjugacy_classes(&self, limits: &Limits) -> Result<Vec<Vec<usize>>> {
        limits.check_group_order(self.order)?;
        Ok(self.twisted_classes(&GroupAutomorphism::identity(self)))
    }

    /// Class index of every element.
    pub fn class_map(&self, limits: &Limits) -> Result<(Vec<Vec<usize>>, Vec<usize>)> {
        let classes = self.conjugacy_classes(limits)?;
        let mut map = vec![0; self.order];
        for (i, c) in classes.iter().enumerate() {
            for &x in c {
                map[x] = i;
            }
        }
        Ok((classes, map))
    }

    /// Orbits of `h ↦ g·h·ν(g)^{-1}`.
    fn twisted_classes(&self, nu: &GroupAutomorphism) -> Vec<Vec<usize>> {
        let gens = self.generators();
        let mut seen = vec![false; self.order];
        let mut out = Vec::new();
        for start in 0..self.order {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut orbit = vec![start];
            let mut head = 0;
            while head < orbit.len() {
                let h = orbit[head];
                head += 1;
                for &g in &gens {
                    let y = self.mul(self.mul(g, h), self.inv(nu.images[g]));
                    if !seen[y] {
                        seen[y] = true;
                        orbit.push(y);
                    }
                }
            }
            orbit.sort_unstable();
            out.push(orbit);
        }
        out
    }
}

impl GroupAutomorphism {
    /// Checks bijectivity and multiplicativity on the whole table.
    pub fn new(g: &FiniteGroup, images: Vec<usize>) -> Result<GroupAutomorphism> {
        let n = g.order();
        if images.len() != n {
            return Err(Error::invalid(format!("automorphism has {} images for a group of order {n}", images.len())));
        }
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::invalid("automorphism is not a bijection"));
            }
            seen[x] = true;
        }
        for a in 0..n {
            for b in 0..n {
                if images[g.mul(a, b)] != g.mul(images[a], images[b]) {
                    return Err(Error::invalid(format!("map is not multiplicative at ({a},{b})")));
                }
            }
        }
        Ok(GroupAutomorphism { images })
    }

    pub fn identity(g: &FiniteGroup) -> GroupAutomorphism {
        GroupAutomorphism {
            images: (0..g.order()).collect(),
        }
    }

    /// `x ↦ a·x·a^{-1}`.
    pub fn inner(g: &FiniteGroup, a: usize) -> GroupAutomorphism {
        GroupAutomorphism {
            images: (0..g.order()).map(|x| g.mul(g.mul(a, x), g.inv(a))).collect(),
        }
    }

    /// Extends `gens[i] ↦ images[i]` multiplicatively and checks the result.
    pub fn from_generator_images(g: &FiniteGroup, gens: &[usize], images: &[usize]) -> Result<GroupAutomorphism> {
        if gens.len() != images.len() {
            return Err(Error::invalid("generator and image lists differ in length"));
        }
        let n = g.order();
        let mut map = vec![usize::MAX; n];
        map[0] = 0;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (&s, &t) in gens.iter().zip(images) {
                let y = g.mul(x, s);
                let fy = g.mul(map[x], t);
                if map[y] == usize::MAX {
                    map[y] = fy;
                    queue.push_back(y);
                } else if map[y] != fy {
                    return Err(Error::invalid("generator images do not define a homomorphism"));
                }
            }
        }
        if map.contains(&usize::MAX) {
            return Err(Error::invalid("the listed elements do not generate the group"));
        }
        GroupAutomorphism::new(g, map)
    }

    /// For a permutation group, conjugation by a permutation normalizing it.
    pub fn conjugation_by_perm(g: &FiniteGroup, p: &Perm) -> Result<GroupAutomorphism> {
        let perms = g
            .permutations()
            .ok_or_else(|| Error::invalid("group has no permutation realization"))?;
        let images = perms
            .iter()
            .map(|x| {
                g.index_of_perm(&x.conjugate_by(p))
                    .ok_or_else(|| Error::invalid("permutation does not normalize the group"))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(GroupAutomorphism { images })
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &GroupAutomorphism) -> GroupAutomorphism {
        GroupAutomorphism {
            images: other.images.iter().map(|&x| self.images[x]).collect(),
        }
    }

    pub fn pow(&self, k: usize) -> GroupAutomorphism {
        let mut r = GroupAutomorphism {
            images: (0..self.images.len()).collect(),
        };
        for _ in 0..k {
            r = self.compose(&r);
        }
        r
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn order(&self) -> usize {
        Perm::from_images_unchecked(self.images.clone()).order() as usize
    }

    /// The induced permutation of conjugacy classes.
    pub fn class_permutation(&self, class_of: &[usize], classes: &[Vec<usize>]) -> Perm {
        Perm::from_images_unchecked(classes.iter().map(|c| class_of[self.images[c[0]]]).collect())
    }
}

/// Number of orbits of the twisted conjugation `h ↦ g·h·ν(g)^{-1}`.
pub fn twisted_orbit_count(g: &FiniteGroup, nu: &GroupAutomorphism) -> usize {
    g.twisted_classes(nu).len()
}

/// Number of conjugacy classes mapped to themselves by `ν`.
pub fn fixed_class_count(g: &FiniteGroup, nu: &GroupAutomorphism, limits: &Limits) -> Result<usize> {
    let (classes, class_of) = g.class_map(limits)?;
    Ok(classes.iter().filter(|c| class_of[nu.images[c[0]]] == class_of[c[0]]).count())
}

/// Orbit lengths of `⟨ν⟩` on the irreducible characters, as `length -> count`.
///
/// `f_j`, the number of irreducibles fixed by `ν^j`, equals the number of
/// classes fixed by `ν^j`; Möbius inversion over the divisors of the order of
/// `ν` on classes turns these into exact orbit-length counts.
pub fn irr_orbit_distribution(
    g: &FiniteGroup,
    nu: &GroupAutomorphism,
    limits: &Limits,
) -> Result<BTreeMap<usize, usize>> {
    let (classes, class_of) = g.class_map(limits)?;
    let on_classes = nu.class_permutation(&class_of, &classes);
    let t = on_classes.order();
    let fixed = |j: u64| -> i64 {
        let p = on_classes.pow(j as i64);
        (0..classes.len()).filter(|&c| p.apply(c) == c).count() as i64
    };
    let mut out = BTreeMap::new();
    for l in divisors(t) {
        let points: i64 = divisors(l).into_iter().map(|d| mobius(l / d) * fixed(d)).sum();
        if points < 0 || points % l as i64 != 0 {
            return Err(Error::logic(format!(
                "Möbius inversion gave {points} points in orbits of length {l}"
            )));
        }
        if points > 0 {
            out.insert(l as usize, (points / l as i64) as usize);
        }
    }
    let total: usize = out.iter().map(|(l, c)| l * c).sum();
    if total != classes.len() {
        return Err(Error::logic("orbit lengths do not add up to the class number"));
    }
    Ok(out)
}

/// `S_n ⋉ B^n` with its element list `(σ, (b_0, …, b_{n-1}))`.
///
/// `(σ, b)` acts on `{0..n-1} × B` by `(i, x) ↦ (σ(i), b_{σ(i)}·x)`.
#[derive(Debug, Clone)]
pub struct WreathProduct {
    pub group: FiniteGroup,
    pub elements: Vec<(Perm, Vec<usize>)>,
    base_order: usize,
}

impl WreathProduct {
    /// The diagonal automorphism `(σ, b) ↦ (σ, ρ(b_0), …, ρ(b_{n-1}))`.
    pub fn lift(&self, rho: &GroupAutomorphism) -> GroupAutomorphism {
        let index: HashMap<&(Perm, Vec<usize>), usize> =
            self.elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let images = self
            .elements
            .iter()
            .map(|(s, b)| {
                let key = (s.clone(), b.iter().map(|&x| rho.images[x]).collect::<Vec<_>>());
                index[&key]
            })
            .collect();
        GroupAutomorphism { images }
    }

    pub fn base_order(&self) -> usize {
        self.base_order
    }
}

pub fn wreath_product(n: usize, base: &FiniteGroup, limits: &Limits) -> Result<WreathProduct> {
    let mut order: usize = 1;
    for i in 1..=n {
        order = order.checked_mul(i * base.order()).ok_or(Error::Overflow("wreath product order"))?;
        limits.check_group_order(order)?;
    }
    let sn = FiniteGroup::symmetric(n, &Limits { group_order_cap: usize::MAX, ..limits.clone() })?;
    let perms = sn.permutations().unwrap_or(&[]).to_vec();
    let mut elements = Vec::with_capacity(order);
    for s in &perms {
        let mut b = vec![0usize; n];
        loop {
            elements.push((s.clone(), b.clone()));
            let mut i = 0;
            while i < n {
                b[i] += 1;
                if b[i] < base.order() {
                    break;
                }
                b[i] = 0;
                i += 1;
            }
            if i == n {
                break;
            }
        }
    }
    let op = |(s, b): &(Perm, Vec<usize>), (t, c): &(Perm, Vec<usize>)| {
        let s_inv = s.inverse();
        let d = (0..n).map(|j| base.mul(b[j], c[s_inv.apply(j)])).collect();
        (s.compose(t), d)
    };
    let group = FiniteGroup::from_closed_elements(&elements, op, limits)?;
    Ok(WreathProduct {
        group,
        elements,
        base_order: base.order(),
    })
}

/// `G^k` with the shift `(g_0, …, g_{k-1}) ↦ (ξ(g_{k-1}), g_0, …, g_{k-2})`.
pub fn power_with_shift(
    g: &FiniteGroup,
    xi: &GroupAutomorphism,
    k: usize,
    limits: &Limits,
) -> Result<(FiniteGroup, GroupAutomorphism)> {
    if k == 0 {
        return Err(Error::invalid("power_with_shift needs k >= 1"));
    }
    let mut group = g.clone();
    for _ in 1..k {
        group = FiniteGroup::direct_product(&group, g, limits)?;
    }
    let n = g.order();
    // index = Σ g_i · n^{k-1-i}, i.e. g_0 is the most significant digit
    let images = (0..group.order())
        .map(|x| {
            let mut digits = vec![0; k];
            let mut y = x;
            for i in (0..k).rev() {
                digits[i] = y % n;
                y /= n;
            }
            let mut shifted = vec![0; k];
            shifted[0] = xi.images[digits[k - 1]];
            shifted[1..k].copy_from_slice(&digits[..k - 1]);
            shifted.iter().fold(0, |acc, &d| acc * n + d)
        })
        .collect();
    let nu = GroupAutomorphism { images };
    Ok((group, nu))
}

/// `(A × B, α × β)`.
pub fn product_with_automorphisms(
    a: (&FiniteGroup, &GroupAutomorphism),
    b: (&FiniteGroup, &GroupAutomorphism),
    limits: &Limits,
) -> Result<(FiniteGroup, GroupAutomorphism)> {
    let g = FiniteGroup::direct_product(a.0, b.0, limits)?;
    let nb = b.0.order();
    let images = (0..g.order())
        .map(|x| a.1.images[x / nb] * nb + b.1.images[x % nb])
        .collect();
    Ok((g, GroupAutomorphism { images }))
}

/// Number of irreducibles of `S_n ⋉ B^n` for a base group with `b`
/// irreducibles: the coefficient of `X^n` in `P(X)^b`, `P` the partition series.
pub fn wreath_irr_count(n: usize, b: usize) -> Result<u128> {
    let p = IntSeries::partition_series(n)?;
    let mut acc = IntSeries::one(n);
    for _ in 0..b {
        acc = acc.mul(&p)?;
    }
    u128::try_from(acc.coeff(n)).map_err(|_| Error::logic("negative coefficient"))
}

/// Number of `ξ`-fixed irreducibles of `S_n ⋉ B^n` when `ρ` permutes the
/// irreducibles of `B` in orbits of the given lengths: fixed tuples are
/// constant on each orbit, so the count is the coefficient of `X^n` in
/// `Π_orbits P(X^l)`.
pub fn wreath_fixed_irr_count(n: usize, orbit_lengths: &BTreeMap<usize, usize>) -> Result<u128> {
    let p = IntSeries::partition_series(n)?;
    let mut acc = IntSeries::one(n);
    for (&l, &count) in orbit_lengths {
        let stretched = p.substitute_power(l);
        for _ in 0..count {
            acc = acc.mul(&stretched)?;
        }
    }
    u128::try_from(acc.coeff(n)).map_err(|_| Error::logic("negative coefficient"))
}

//! Permutations of `{0..n-1}` and tuples of them.
//!
//! An `m`-tuple of permutations of degree `n` is the same data as an action of
//! the free group `F_m` on `n` points, i.e. an `n`-fold covering of a base
//! graph whose fundamental group is free of rank `m`. Two tuples describe
//! isomorphic coverings exactly when they are simultaneously conjugate.

use std::cmp::Ordering;
use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::lcm;
use crate::error::{Error, Result};
use crate::limits::Limits;

const UNSET: usize = usize::MAX;

/// A bijection of `{0..n-1}` in one-line notation: `images[i]` is the image of `i`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Perm {
    images: Vec<usize>,
}

impl TryFrom<Vec<usize>> for Perm {
    type Error = Error;

    fn try_from(images: Vec<usize>) -> Result<Self> {
        Perm::new(images)
    }
}

impl From<Perm> for Vec<usize> {
    fn from(p: Perm) -> Self {
        p.images
    }
}

impl Perm {
    pub fn new(images: Vec<usize>) -> Result<Perm> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::invalid(format!(
                    "{images:?} is not a permutation of 0..{n}"
                )));
            }
            seen[x] = true;
        }
        Ok(Perm { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<usize>) -> Perm {
        debug_assert!(Perm::new(images.clone()).is_ok());
        Perm { images }
    }

    pub fn identity(n: usize) -> Perm {
        Perm {
            images: (0..n).collect(),
        }
    }

    /// Builds a permutation from disjoint cycles, e.g. `from_cycles(3, &[&[0, 1, 2]])`.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Perm> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut touched = vec![false; n];
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                if x >= n || touched[x] {
                    return Err(Error::invalid(format!("bad cycle {cycle:?} on {n} points")));
                }
                touched[x] = true;
                images[x] = cycle[(i + 1) % cycle.len()];
            }
        }
        Ok(Perm { images })
    }

    /// The cycle `0 -> 1 -> ... -> n-1 -> 0`.
    pub fn long_cycle(n: usize) -> Perm {
        Perm {
            images: (0..n).map(|i| (i + 1) % n.max(1)).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Perm { images: inv }
    }

    /// `self ∘ other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.degree(), other.degree(), "composing permutations of different degree");
        Perm {
            images: other.images.iter().map(|&x| self.images[x]).collect(),
        }
    }

    pub fn try_compose(&self, other: &Perm) -> Result<Perm> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                expected: self.degree(),
                found: other.degree(),
            });
        }
        Ok(self.compose(other))
    }

    pub fn pow(&self, k: i64) -> Perm {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut result = Perm::identity(self.degree());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                result = sq.compose(&result);
            }
            sq = sq.compose(&sq);
            e >>= 1;
        }
        result
    }

    /// `g ∘ self ∘ g^{-1}`.
    pub fn conjugate_by(&self, g: &Perm) -> Perm {
        let mut images = vec![0; self.degree()];
        for i in 0..self.degree() {
            images[g.apply(i)] = g.apply(self.apply(i));
        }
        Perm { images }
    }

    /// Cycle lengths in non-increasing order.
    pub fn cycle_type(&self) -> Vec<usize> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut lengths = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x];
                len += 1;
            }
            lengths.push(len);
        }
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        lengths
    }

    pub fn order(&self) -> u64 {
        self.cycle_type().into_iter().fold(1, |acc, l| lcm(acc, l as u64))
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            out.push(cycle);
        }
        out
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles: Vec<_> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if cycles.is_empty() {
            return write!(f, "id[{}]", self.degree());
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

/// An `m`-tuple of permutations sharing one degree.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Perm>", into = "Vec<Perm>")]
pub struct PermTuple {
    degree: usize,
    perms: Vec<Perm>,
}

impl TryFrom<Vec<Perm>> for PermTuple {
    type Error = Error;

    fn try_from(perms: Vec<Perm>) -> Result<Self> {
        PermTuple::new(perms)
    }
}

impl From<PermTuple> for Vec<Perm> {
    fn from(t: PermTuple) -> Self {
        t.perms
    }
}

impl PartialOrd for PermTuple {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PermTuple {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| self.perms.len().cmp(&other.perms.len()))
            .then_with(|| self.perms.cmp(&other.perms))
    }
}

impl fmt::Debug for PermTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.perms.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl PermTuple {
    pub fn new(perms: Vec<Perm>) -> Result<PermTuple> {
        let Some(first) = perms.first() else {
            return Err(Error::invalid("a permutation tuple needs at least one entry"));
        };
        let degree = first.degree();
        if let Some(bad) = perms.iter().find(|p| p.degree() != degree) {
            return Err(Error::DegreeMismatch {
                expected: degree,
                found: bad.degree(),
            });
        }
        Ok(PermTuple { degree, perms })
    }

    pub fn from_images(images: Vec<Vec<usize>>) -> Result<PermTuple> {
        let perms = images.into_iter().map(Perm::new).collect::<Result<Vec<_>>>()?;
        PermTuple::new(perms)
    }

    pub fn identity(degree: usize, m: usize) -> PermTuple {
        assert!(m >= 1);
        PermTuple {
            degree,
            perms: vec![Perm::identity(degree); m],
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Number of entries (the rank of the free group acting).
    pub fn rank(&self) -> usize {
        self.perms.len()
    }

    pub fn perms(&self) -> &[Perm] {
        &self.perms
    }

    pub fn get(&self, i: usize) -> &Perm {
        &self.perms[i]
    }

    pub fn conjugate(&self, g: &Perm) -> Result<PermTuple> {
        if g.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: g.degree(),
            });
        }
        Ok(PermTuple {
            degree: self.degree,
            perms: self.perms.iter().map(|p| p.conjugate_by(g)).collect(),
        })
    }

    /// Orbits of the generated group, each sorted, ordered by least point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        orbits_of(self.degree, &self.perms)
    }

    pub fn is_transitive(&self) -> bool {
        self.degree > 0 && self.orbits().len() == 1
    }

    /// The action restricted to a union of orbits, relabelled by the order of `points`.
    pub fn restrict(&self, points: &[usize]) -> Result<PermTuple> {
        let mut label = vec![UNSET; self.degree];
        for (i, &p) in points.iter().enumerate() {
            label[p] = i;
        }
        let mut perms = Vec::with_capacity(self.rank());
        for p in &self.perms {
            let mut images = Vec::with_capacity(points.len());
            for &x in points {
                let y = label[p.apply(x)];
                if y == UNSET {
                    return Err(Error::invalid("restriction to a set that is not invariant"));
                }
                images.push(y);
            }
            perms.push(Perm { images });
        }
        Ok(PermTuple {
            degree: points.len(),
            perms,
        })
    }

    /// Block-diagonal concatenation: the disjoint union of the two actions.
    pub fn disjoint_union(&self, other: &PermTuple) -> Result<PermTuple> {
        if self.rank() != other.rank() {
            return Err(Error::invalid(format!(
                "rank mismatch: {} vs {}",
                self.rank(),
                other.rank()
            )));
        }
        let shift = self.degree;
        let perms = self
            .perms
            .iter()
            .zip(&other.perms)
            .map(|(a, b)| {
                let mut images = a.images.clone();
                images.extend(b.images.iter().map(|&x| x + shift));
                Perm { images }
            })
            .collect();
        Ok(PermTuple {
            degree: self.degree + other.degree,
            perms,
        })
    }

    /// Breadth-first relabelling of the orbit of `base`. The base gets label 0;
    /// points are processed in label order and each sees the slots
    /// `σ_1, …, σ_m, σ_1^{-1}, …, σ_m^{-1}` in that order, unseen images
    /// receiving the next free label. Returns the relabelled orbit action.
    pub fn relabel_from(&self, base: usize) -> PermTuple {
        let inverses: Vec<Perm> = self.perms.iter().map(Perm::inverse).collect();
        self.relabel_with(base, &inverses)
    }

    fn relabel_with(&self, base: usize, inverses: &[Perm]) -> PermTuple {
        let n = self.degree;
        let mut label = vec![UNSET; n];
        let mut order = Vec::with_capacity(n);
        label[base] = 0;
        order.push(base);
        let mut head = 0;
        while head < order.len() {
            let p = order[head];
            head += 1;
            for slot in self.perms.iter().chain(inverses) {
                let q = slot.apply(p);
                if label[q] == UNSET {
                    label[q] = order.len();
                    order.push(q);
                }
            }
        }
        let perms = self
            .perms
            .iter()
            .map(|s| Perm {
                images: order.iter().map(|&p| label[s.apply(p)]).collect(),
            })
            .collect();
        PermTuple {
            degree: order.len(),
            perms,
        }
    }

    /// A canonical representative of the simultaneous conjugacy class.
    ///
    /// Each orbit is relabelled breadth-first from every candidate basepoint
    /// and the lexicographically least result kept; the canonical orbits are
    /// then sorted and concatenated.
    pub fn canonical_form(&self) -> PermTuple {
        let inverses: Vec<Perm> = self.perms.iter().map(Perm::inverse).collect();
        let mut components: Vec<PermTuple> = self
            .orbits()
            .into_iter()
            .map(|orbit| {
                orbit
                    .iter()
                    .map(|&b| self.relabel_with(b, &inverses))
                    .min()
                    .expect("orbits are non-empty")
            })
            .collect();
        if components.len() == 1 {
            return components.pop().unwrap();
        }
        components.sort();
        let mut iter = components.into_iter();
        let mut acc = match iter.next() {
            Some(first) => first,
            None => return self.clone(),
        };
        for c in iter {
            acc = acc.disjoint_union(&c).expect("ranks agree");
        }
        acc
    }

    /// `{g : g σ_i = σ_i g for all i}` as a sorted element list.
    ///
    /// For transitive tuples the centralizer acts semiregularly, so only the
    /// image of point 0 needs to be chosen. Otherwise orbits are matched by
    /// backtracking, guarded by [`Limits::max_degree`].
    pub fn centralizer(&self, limits: &Limits) -> Result<Vec<Perm>> {
        let n = self.degree;
        if n == 0 {
            return Ok(vec![Perm::identity(0)]);
        }
        let orbits = self.orbits();
        let mut out = Vec::new();
        if orbits.len() == 1 {
            for y in 0..n {
                let mut map = vec![UNSET; n];
                let mut used = vec![false; n];
                if extend_equivariant(&self.perms, &mut map, &mut used, 0, y) {
                    out.push(Perm { images: map });
                }
            }
        } else {
            limits.check_degree(n)?;
            let mut map = vec![UNSET; n];
            let mut used = vec![false; n];
            centralizer_backtrack(&self.perms, &orbits, 0, &mut map, &mut used, &mut out);
        }
        out.sort();
        Ok(out)
    }

    /// Order of the centralizer. Transitive tuples count semiregular extensions.
    pub fn centralizer_order(&self, limits: &Limits) -> Result<usize> {
        if self.is_transitive() {
            let n = self.degree;
            let mut count = 0;
            for y in 0..n {
                let mut map = vec![UNSET; n];
                let mut used = vec![false; n];
                if extend_equivariant(&self.perms, &mut map, &mut used, 0, y) {
                    count += 1;
                }
            }
            return Ok(count);
        }
        Ok(self.centralizer(limits)?.len())
    }
}

pub(crate) fn orbits_of(n: usize, gens: &[Perm]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut orbit = vec![start];
        let mut head = 0;
        while head < orbit.len() {
            let p = orbit[head];
            head += 1;
            for g in gens {
                let q = g.apply(p);
                if !seen[q] {
                    seen[q] = true;
                    orbit.push(q);
                }
            }
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    out
}

/// Extends `map` from `x ↦ y` along the orbit of `x` so that it commutes with
/// every generator. Leaves `map`/`used` partially filled on failure.
pub(crate) fn extend_equivariant(
    gens: &[Perm],
    map: &mut [usize],
    used: &mut [bool],
    x: usize,
    y: usize,
) -> bool {
    if used[y] || map[x] != UNSET {
        return map[x] == y;
    }
    map[x] = y;
    used[y] = true;
    let mut queue = VecDeque::from([x]);
    while let Some(p) = queue.pop_front() {
        let fp = map[p];
        for g in gens {
            let (q, fq) = (g.apply(p), g.apply(fp));
            if map[q] == UNSET {
                if used[fq] {
                    return false;
                }
                map[q] = fq;
                used[fq] = true;
                queue.push_back(q);
            } else if map[q] != fq {
                return false;
            }
        }
    }
    true
}

fn centralizer_backtrack(
    gens: &[Perm],
    orbits: &[Vec<usize>],
    idx: usize,
    map: &mut Vec<usize>,
    used: &mut Vec<bool>,
    out: &mut Vec<Perm>,
) {
    if idx == orbits.len() {
        out.push(Perm { images: map.clone() });
        return;
    }
    let base = orbits[idx][0];
    let size = orbits[idx].len();
    for y in 0..map.len() {
        if used[y] {
            continue;
        }
        let (saved_map, saved_used) = (map.clone(), used.clone());
        if extend_equivariant(gens, map, used, base, y)
            && orbits[idx].iter().filter(|&&p| map[p] != UNSET).count() == size
        {
            centralizer_backtrack(gens, orbits, idx + 1, map, used, out);
        }
        *map = saved_map;
        *used = saved_used;
    }
}

pub fn conjugate_tuple(t: &PermTuple, g: &Perm) -> Result<PermTuple> {
    t.conjugate(g)
}

pub fn centralizer_of_tuple(t: &PermTuple, limits: &Limits) -> Result<Vec<Perm>> {
    t.centralizer(limits)
}

pub fn canonical_form(t: &PermTuple) -> PermTuple {
    t.canonical_form()
}

pub fn is_transitive(t: &PermTuple) -> bool {
    t.is_transitive()
}

/// The subgroup generated by `gens` on `degree` points, as a sorted element list.
pub fn subgroup_closure(degree: usize, gens: &[Perm], bound: usize) -> Result<Vec<Perm>> {
    if let Some(bad) = gens.iter().find(|g| g.degree() != degree) {
        return Err(Error::DegreeMismatch {
            expected: degree,
            found: bad.degree(),
        });
    }
    let id = Perm::identity(degree);
    let mut seen: HashSet<Perm> = HashSet::from([id.clone()]);
    let mut elements = vec![id];
    let mut head = 0;
    while head < elements.len() {
        let x = elements[head].clone();
        head += 1;
        for g in gens {
            let y = g.compose(&x);
            if seen.insert(y.clone()) {
                if elements.len() >= bound {
                    return Err(Error::cap("subgroup closure size", elements.len() + 1, bound));
                }
                elements.push(y);
            }
        }
    }
    elements.sort();
    Ok(elements)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cyc(n: usize, c: &[usize]) -> Perm {
        Perm::from_cycles(n, &[c]).unwrap()
    }

    fn tuple(ps: Vec<Perm>) -> PermTuple {
        PermTuple::new(ps).unwrap()
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Perm::new(vec![0, 0]).is_err());
        assert!(Perm::new(vec![2, 0]).is_err());
        assert!(Perm::new(vec![]).is_ok());
    }

    #[test]
    fn conjugation_examples() {
        let t = tuple(vec![cyc(2, &[0, 1])]);
        assert_eq!(t.conjugate(&Perm::identity(2)).unwrap(), t);

        // (0 1) (0 1 2) (0 1) = 0 -> 2 -> 1 -> 0
        let t = tuple(vec![cyc(3, &[0, 1, 2])]);
        let c = t.conjugate(&cyc(3, &[0, 1])).unwrap();
        assert_eq!(c.get(0), &cyc(3, &[0, 2, 1]));

        assert!(t.conjugate(&Perm::identity(2)).is_err());
    }

    #[test]
    fn centralizer_examples() {
        let lim = Limits::default();
        for n in 1..=8 {
            let t = tuple(vec![Perm::long_cycle(n)]);
            assert_eq!(t.centralizer(&lim).unwrap().len(), n);
        }
        let t = PermTuple::identity(4, 2);
        assert_eq!(t.centralizer(&lim).unwrap().len(), 24);
        let t = tuple(vec![cyc(2, &[0, 1]), cyc(2, &[0, 1])]);
        assert_eq!(t.centralizer(&lim).unwrap().len(), 2);
        let big = PermTuple::identity(10, 1);
        assert!(matches!(
            big.centralizer(&lim),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn closure_examples() {
        assert_eq!(subgroup_closure(3, &[], 10).unwrap(), vec![Perm::identity(3)]);
        let s3 = subgroup_closure(3, &[cyc(3, &[0, 1]), cyc(3, &[1, 2])], 10).unwrap();
        assert_eq!(s3.len(), 6);
        assert_eq!(s3[0], Perm::identity(3));
        assert_eq!(subgroup_closure(4, &[cyc(4, &[0, 1, 2, 3])], 10).unwrap().len(), 4);
        assert!(subgroup_closure(3, &[cyc(3, &[0, 1]), cyc(3, &[1, 2])], 5).is_err());
    }

    #[test]
    fn canonical_form_examples() {
        let mut forms = HashSet::new();
        for a in [Perm::identity(2), cyc(2, &[0, 1])] {
            for b in [Perm::identity(2), cyc(2, &[0, 1])] {
                forms.insert(tuple(vec![a.clone(), b]).canonical_form());
            }
        }
        assert_eq!(forms.len(), 4);

        let a = tuple(vec![cyc(3, &[0, 1, 2])]).canonical_form();
        let b = tuple(vec![cyc(3, &[0, 2, 1])]).canonical_form();
        assert_eq!(a, b);
    }

    #[test]
    fn transitivity() {
        assert!(!PermTuple::identity(2, 1).is_transitive());
        assert!(tuple(vec![Perm::long_cycle(5)]).is_transitive());
        assert!(tuple(vec![cyc(2, &[0, 1]), Perm::identity(2)]).is_transitive());
    }

    fn arb_perm(n: usize) -> impl Strategy<Value = Perm> {
        Just((0..n).collect::<Vec<usize>>())
            .prop_shuffle()
            .prop_map(|v| Perm::new(v).unwrap())
    }

    fn arb_tuple_and_conj() -> impl Strategy<Value = (PermTuple, Perm)> {
        (1usize..=6, 1usize..=3).prop_flat_map(|(n, m)| {
            (
                proptest::collection::vec(arb_perm(n), m).prop_map(|v| PermTuple::new(v).unwrap()),
                arb_perm(n),
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn canonical_form_is_a_class_invariant((t, g) in arb_tuple_and_conj()) {
            let c = t.canonical_form();
            prop_assert_eq!(&c, &t.conjugate(&g).unwrap().canonical_form());
            prop_assert_eq!(&c.canonical_form(), &c);
            // the canonical form is itself a conjugate: same cycle types and orbit sizes
            let mut a: Vec<_> = t.orbits().iter().map(Vec::len).collect();
            let mut b: Vec<_> = c.orbits().iter().map(Vec::len).collect();
            a.sort(); b.sort();
            prop_assert_eq!(a, b);
        }

        #[test]
        fn conjugation_inverse_law((t, g) in arb_tuple_and_conj()) {
            let back = t.conjugate(&g).unwrap().conjugate(&g.inverse()).unwrap();
            prop_assert_eq!(back, t);
        }

        #[test]
        fn centralizer_is_a_group((t, _g) in arb_tuple_and_conj()) {
            let lim = Limits::default();
            let c = t.centralizer(&lim).unwrap();
            let set: HashSet<_> = c.iter().cloned().collect();
            prop_assert!(set.contains(&Perm::identity(t.degree())));
            for x in &c {
                prop_assert!(set.contains(&x.inverse()));
                for s in t.perms() {
                    prop_assert_eq!(x.compose(s), s.compose(x));
                }
                for y in c.iter().take(8) {
                    prop_assert!(set.contains(&x.compose(y)));
                }
            }
            if t.is_transitive() {
                prop_assert_eq!(t.degree() % c.len(), 0);
            }
        }
    }

    #[test]
    fn canonical_form_yields_actual_conjugate() {
        // brute force over S_4 on a few tuples
        let s4 = subgroup_closure(4, &[cyc(4, &[0, 1]), Perm::long_cycle(4)], 100).unwrap();
        let samples = [
            tuple(vec![cyc(4, &[0, 2]), cyc(4, &[1, 3, 2])]),
            tuple(vec![Perm::identity(4), cyc(4, &[3, 1])]),
            tuple(vec![cyc(4, &[0, 1, 2, 3]), cyc(4, &[0, 1])]),
        ];
        for t in samples {
            let c = t.canonical_form();
            assert!(s4.iter().any(|g| t.conjugate(g).unwrap() == c));
        }
    }

    #[test]
    fn serde_shapes() {
        let t = tuple(vec![cyc(3, &[0, 1]), Perm::identity(3)]);
        let s = serde_json::to_string(&t).unwrap();
        assert_eq!(s, "[[1,0,2],[0,1,2]]");
        let back: PermTuple = serde_json::from_str(&s).unwrap();
        assert_eq!(back, t);
        assert!(serde_json::from_str::<PermTuple>("[[1,0],[0,1,2]]").is_err());
        assert!(serde_json::from_str::<Perm>("[1,1]").is_err());
    }
}

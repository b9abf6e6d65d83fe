//! Adequate colored graphs and chromatic coverings.
//!
//! A closed tensor diagram is stored as a directed multigraph. A vertex of
//! color `a` has `p_a` outgoing edges carrying the out-colors `1..=p_a` and
//! `q_a` incoming edges carrying the in-colors `1..=q_a`, where
//! `signature[a-1] = (p_a, q_a)`. Every half-edge slot is therefore filled
//! exactly once, so a color-preserving map is determined by the image of one
//! vertex per component.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::perm::{Perm, PermTuple};

const UNSET: usize = usize::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Vertex {
    pub id: usize,
    pub color: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub src: usize,
    pub dst: usize,
    #[serde(rename = "out")]
    pub out_color: usize,
    #[serde(rename = "in")]
    pub in_color: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdequateGraph {
    pub signature: Vec<(usize, usize)>,
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
}

/// One failed adequacy condition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub rule: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vertex: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub edge: Option<usize>,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rule)?;
        if let Some(v) = self.vertex {
            write!(f, " (vertex {v})")?;
        }
        if let Some(e) = self.edge {
            write!(f, " (edge #{e})")?;
        }
        if !self.detail.is_empty() {
            write!(f, ": {}", self.detail)?;
        }
        Ok(())
    }
}

/// A color-preserving graph map, by vertex id and edge index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChromaticMap {
    pub vertex_map: BTreeMap<usize, usize>,
    pub edge_map: Vec<usize>,
}

/// Result of [`minimize`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Minimized {
    pub base: AdequateGraph,
    pub quotient: ChromaticMap,
}

/// Slot tables of a graph that already passed validation.
#[derive(Debug, Clone)]
struct Indexed {
    ids: Vec<usize>,
    index_of: HashMap<usize, usize>,
    color: Vec<usize>,
    /// `out[v][c]` is the edge leaving `v` with out-color `c + 1`.
    out: Vec<Vec<usize>>,
    /// `inn[v][c]` is the edge entering `v` with in-color `c + 1`.
    inn: Vec<Vec<usize>>,
    src: Vec<usize>,
    dst: Vec<usize>,
}

impl Indexed {
    fn len(&self) -> usize {
        self.ids.len()
    }

    /// Neighbour slots in the fixed order: out-colors ascending, then in-colors ascending.
    fn slots(&self, v: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        let outs = self.out[v].iter().map(move |&e| (e, self.dst[e]));
        let ins = self.inn[v].iter().map(move |&e| (e, self.src[e]));
        outs.chain(ins)
    }
}

fn violation(rule: &str, vertex: Option<usize>, edge: Option<usize>, detail: String) -> Violation {
    Violation {
        rule: rule.to_string(),
        vertex,
        edge,
        detail,
    }
}

impl AdequateGraph {
    pub fn from_json_str(s: &str) -> Result<AdequateGraph> {
        serde_json::from_str(s).map_err(|e| Error::invalid(format!("graph JSON: {e}")))
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Number of vertices of each color, `(n_1, …, n_r)`.
    pub fn color_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.signature.len()];
        for v in &self.vertices {
            if (1..=counts.len()).contains(&v.color) {
                counts[v.color - 1] += 1;
            }
        }
        counts
    }

    /// First Betti number `|E| - |V| + #components`.
    pub fn cycle_rank(&self) -> Result<usize> {
        let comps = self.components()?.len();
        Ok(self.edges.len() + comps - self.vertices.len())
    }

    fn indexed(&self) -> Result<Indexed> {
        let problems = validate(self);
        if let Some(first) = problems.first() {
            return Err(Error::invalid(format!(
                "graph is not adequate ({} violations, first: {first})",
                problems.len()
            )));
        }
        Ok(self.indexed_unchecked())
    }

    fn indexed_unchecked(&self) -> Indexed {
        let ids: Vec<usize> = self.vertices.iter().map(|v| v.id).collect();
        let index_of: HashMap<usize, usize> = ids.iter().enumerate().map(|(i, &id)| (id, i)).collect();
        let color: Vec<usize> = self.vertices.iter().map(|v| v.color).collect();
        let mut out: Vec<Vec<usize>> = color
            .iter()
            .map(|&c| vec![UNSET; self.signature[c - 1].0])
            .collect();
        let mut inn: Vec<Vec<usize>> = color
            .iter()
            .map(|&c| vec![UNSET; self.signature[c - 1].1])
            .collect();
        let mut src = Vec::with_capacity(self.edges.len());
        let mut dst = Vec::with_capacity(self.edges.len());
        for (i, e) in self.edges.iter().enumerate() {
            let (s, d) = (index_of[&e.src], index_of[&e.dst]);
            out[s][e.out_color - 1] = i;
            inn[d][e.in_color - 1] = i;
            src.push(s);
            dst.push(d);
        }
        Indexed {
            ids,
            index_of,
            color,
            out,
            inn,
            src,
            dst,
        }
    }

    /// Connected components, each keeping the original ids and edge order.
    pub fn components(&self) -> Result<Vec<AdequateGraph>> {
        let ix = self.indexed()?;
        let comp = component_labels(&ix);
        let count = comp.iter().copied().max().map_or(0, |c| c + 1);
        let mut parts: Vec<AdequateGraph> = (0..count)
            .map(|_| AdequateGraph {
                signature: self.signature.clone(),
                vertices: Vec::new(),
                edges: Vec::new(),
            })
            .collect();
        for (i, v) in self.vertices.iter().enumerate() {
            parts[comp[i]].vertices.push(*v);
        }
        for (i, e) in self.edges.iter().enumerate() {
            parts[comp[ix.src[i]]].edges.push(*e);
        }
        Ok(parts)
    }

    pub fn is_connected(&self) -> Result<bool> {
        Ok(self.components()?.len() == 1)
    }

    /// Places `other` next to `self`, shifting its ids past the largest id of `self`.
    pub fn disjoint_union(&self, other: &AdequateGraph) -> Result<AdequateGraph> {
        if self.signature != other.signature {
            return Err(Error::invalid("disjoint union of graphs with different signatures"));
        }
        let shift = self.vertices.iter().map(|v| v.id + 1).max().unwrap_or(0);
        let mut g = self.clone();
        g.vertices.extend(other.vertices.iter().map(|v| Vertex {
            id: v.id + shift,
            color: v.color,
        }));
        g.edges.extend(other.edges.iter().map(|e| Edge {
            src: e.src + shift,
            dst: e.dst + shift,
            ..*e
        }));
        Ok(g)
    }

    /// An isomorphism invariant of a connected graph that is complete for
    /// isomorphism: equal keys iff the graphs are chromatically isomorphic.
    pub fn canonical_key(&self) -> Result<Vec<usize>> {
        let ix = self.indexed()?;
        if component_labels(&ix).iter().any(|&c| c != 0) {
            return Err(Error::invalid("canonical key needs a connected graph"));
        }
        let mut best: Option<Vec<usize>> = None;
        for start in 0..ix.len() {
            let mut label = vec![UNSET; ix.len()];
            let mut order = vec![start];
            label[start] = 0;
            let mut head = 0;
            while head < order.len() {
                let v = order[head];
                head += 1;
                for (_, w) in ix.slots(v) {
                    if label[w] == UNSET {
                        label[w] = order.len();
                        order.push(w);
                    }
                }
            }
            let mut key = Vec::new();
            for &v in &order {
                key.push(ix.color[v]);
                key.extend(ix.slots(v).map(|(_, w)| label[w]));
                key.extend(ix.out[v].iter().map(|&e| self.edges[e].in_color));
            }
            if best.as_ref().map_or(true, |b| key < *b) {
                best = Some(key);
            }
        }
        Ok(best.unwrap_or_default())
    }
}

fn component_labels(ix: &Indexed) -> Vec<usize> {
    let mut comp = vec![UNSET; ix.len()];
    let mut next = 0;
    for start in 0..ix.len() {
        if comp[start] != UNSET {
            continue;
        }
        comp[start] = next;
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for (_, w) in ix.slots(v) {
                if comp[w] == UNSET {
                    comp[w] = next;
                    queue.push_back(w);
                }
            }
        }
        next += 1;
    }
    comp
}

/// All adequacy violations of `g`; empty iff `g` is adequate.
pub fn validate(g: &AdequateGraph) -> Vec<Violation> {
    let mut out = Vec::new();
    let r = g.signature.len();
    let mut color_of: HashMap<usize, usize> = HashMap::new();
    for v in &g.vertices {
        if color_of.insert(v.id, v.color).is_some() {
            out.push(violation("duplicate vertex id", Some(v.id), None, String::new()));
        }
        if v.color == 0 || v.color > r {
            out.push(violation(
                "color out of range",
                Some(v.id),
                None,
                format!("color {} with {r} colors", v.color),
            ));
        }
    }
    let sig = |id: usize| -> Option<(usize, usize)> {
        color_of
            .get(&id)
            .and_then(|&c| c.checked_sub(1))
            .and_then(|c| g.signature.get(c).copied())
    };
    let mut out_seen: HashMap<(usize, usize), usize> = HashMap::new();
    let mut in_seen: HashMap<(usize, usize), usize> = HashMap::new();
    for (i, e) in g.edges.iter().enumerate() {
        for (end, id) in [("src", e.src), ("dst", e.dst)] {
            if !color_of.contains_key(&id) {
                out.push(violation(
                    "dangling edge endpoint",
                    None,
                    Some(i),
                    format!("{end} {id} is not a vertex"),
                ));
            }
        }
        if let Some((p, _)) = sig(e.src) {
            if e.out_color == 0 || e.out_color > p {
                out.push(violation(
                    "out_color out of range",
                    Some(e.src),
                    Some(i),
                    format!("out_color {} with p = {p}", e.out_color),
                ));
            } else if out_seen.insert((e.src, e.out_color), i).is_some() {
                out.push(violation(
                    "duplicate out_color at vertex",
                    Some(e.src),
                    Some(i),
                    format!("out_color {}", e.out_color),
                ));
            }
        }
        if let Some((_, q)) = sig(e.dst) {
            if e.in_color == 0 || e.in_color > q {
                out.push(violation(
                    "in_color out of range",
                    Some(e.dst),
                    Some(i),
                    format!("in_color {} with q = {q}", e.in_color),
                ));
            } else if in_seen.insert((e.dst, e.in_color), i).is_some() {
                out.push(violation(
                    "duplicate in_color at vertex",
                    Some(e.dst),
                    Some(i),
                    format!("in_color {}", e.in_color),
                ));
            }
        }
    }
    for v in &g.vertices {
        let Some((p, q)) = sig(v.id) else { continue };
        for c in 1..=p {
            if !out_seen.contains_key(&(v.id, c)) {
                out.push(violation(
                    "missing out_color at vertex",
                    Some(v.id),
                    None,
                    format!("out_color {c}"),
                ));
            }
        }
        for c in 1..=q {
            if !in_seen.contains_key(&(v.id, c)) {
                out.push(violation(
                    "missing in_color at vertex",
                    Some(v.id),
                    None,
                    format!("in_color {c}"),
                ));
            }
        }
    }
    out
}

/// Checks that `f` is a chromatic morphism `cover -> base` that is locally
/// bijective on every colored half-edge slot and onto.
pub fn is_covering(f: &ChromaticMap, cover: &AdequateGraph, base: &AdequateGraph) -> Result<bool> {
    let cx = cover.indexed()?;
    let bx = base.indexed()?;
    if cover.signature != base.signature {
        return Ok(false);
    }
    if component_labels(&bx).iter().any(|&c| c != 0) {
        return Err(Error::invalid("covering base must be connected"));
    }
    if f.edge_map.len() != cover.edges.len() || f.vertex_map.len() != cover.vertices.len() {
        return Ok(false);
    }
    let mut vmap = vec![UNSET; cx.len()];
    for (id, img) in &f.vertex_map {
        let (Some(&v), Some(&w)) = (cx.index_of.get(id), bx.index_of.get(img)) else {
            return Ok(false);
        };
        if cx.color[v] != bx.color[w] {
            return Ok(false);
        }
        vmap[v] = w;
    }
    for (i, &j) in f.edge_map.iter().enumerate() {
        let Some(be) = base.edges.get(j) else {
            return Ok(false);
        };
        let ce = &cover.edges[i];
        if be.out_color != ce.out_color
            || be.in_color != ce.in_color
            || vmap[cx.src[i]] != bx.src[j]
            || vmap[cx.dst[i]] != bx.dst[j]
        {
            return Ok(false);
        }
    }
    // local bijectivity on every slot
    for v in 0..cx.len() {
        let w = vmap[v];
        for (c, &e) in cx.out[v].iter().enumerate() {
            if f.edge_map[e] != bx.out[w][c] {
                return Ok(false);
            }
        }
        for (c, &e) in cx.inn[v].iter().enumerate() {
            if f.edge_map[e] != bx.inn[w][c] {
                return Ok(false);
            }
        }
    }
    let hit: std::collections::HashSet<usize> = vmap.iter().copied().collect();
    Ok(cx.len() == 0 || hit.len() == bx.len())
}

/// Propagates `v ↦ w` over the component of `v`. Returns `false` on a clash.
fn propagate(cx: &Indexed, bx: &Indexed, vmap: &mut [usize], v: usize, w: usize) -> bool {
    if cx.color[v] != bx.color[w] {
        return false;
    }
    vmap[v] = w;
    let mut queue = VecDeque::from([v]);
    while let Some(x) = queue.pop_front() {
        let y = vmap[x];
        let targets = cx.slots(x).map(|(_, t)| t).zip(bx.slots(y).map(|(_, t)| t));
        for (tx, ty) in targets.collect::<Vec<_>>() {
            if cx.color[tx] != bx.color[ty] {
                return false;
            }
            if vmap[tx] == UNSET {
                vmap[tx] = ty;
                queue.push_back(tx);
            } else if vmap[tx] != ty {
                return false;
            }
        }
    }
    true
}

fn map_from_vertex_images(
    cover: &AdequateGraph,
    cx: &Indexed,
    bx: &Indexed,
    vmap: &[usize],
) -> ChromaticMap {
    let vertex_map = (0..cx.len()).map(|v| (cx.ids[v], bx.ids[vmap[v]])).collect();
    let edge_map = cover
        .edges
        .iter()
        .enumerate()
        .map(|(i, e)| bx.out[vmap[cx.src[i]]][e.out_color - 1])
        .collect();
    ChromaticMap {
        vertex_map,
        edge_map,
    }
}

/// Some chromatic covering `cover -> base`, chosen per component of the
/// cover by trying base vertices in order. `None` if there is none.
pub fn find_covering(cover: &AdequateGraph, base: &AdequateGraph) -> Result<Option<ChromaticMap>> {
    let cx = cover.indexed()?;
    let bx = base.indexed()?;
    if cover.signature != base.signature {
        return Ok(None);
    }
    let comp = component_labels(&cx);
    let mut vmap = vec![UNSET; cx.len()];
    for v in 0..cx.len() {
        if vmap[v] != UNSET || (v > 0 && comp[..v].contains(&comp[v])) {
            continue;
        }
        let mut found = false;
        for w in 0..bx.len() {
            let mut trial = vmap.clone();
            if propagate(&cx, &bx, &mut trial, v, w) {
                vmap = trial;
                found = true;
                break;
            }
        }
        if !found {
            return Ok(None);
        }
    }
    let f = map_from_vertex_images(cover, &cx, &bx, &vmap);
    if bx.len() > 0 && component_labels(&bx).iter().all(|&c| c == 0) && !is_covering(&f, cover, base)? {
        return Err(Error::logic("propagated map is not a covering"));
    }
    Ok(Some(f))
}

/// Coarsest color-compatible partition that is stable under every colored
/// half-edge slot. Classes are numbered by first occurrence in vertex order.
fn stable_partition(ix: &Indexed, edges: &[Edge]) -> Vec<usize> {
    let n = ix.len();
    let mut class = renumber(&ix.color);
    let mut count = class.iter().copied().max().map_or(0, |c| c + 1);
    loop {
        let keys: Vec<Vec<usize>> = (0..n)
            .map(|v| {
                let mut key = vec![class[v]];
                for &e in &ix.out[v] {
                    key.push(class[ix.dst[e]]);
                    key.push(edges[e].in_color);
                }
                for &e in &ix.inn[v] {
                    key.push(class[ix.src[e]]);
                    key.push(edges[e].out_color);
                }
                key
            })
            .collect();
        let next = renumber(&keys);
        let next_count = next.iter().copied().max().map_or(0, |c| c + 1);
        class = next;
        if next_count == count {
            return class;
        }
        count = next_count;
    }
}

fn renumber<K: Clone + Eq + std::hash::Hash>(keys: &[K]) -> Vec<usize> {
    let mut seen: HashMap<K, usize> = HashMap::new();
    keys.iter()
        .map(|k| {
            let next = seen.len();
            *seen.entry(k.clone()).or_insert(next)
        })
        .collect()
}

/// The irreducible quotient of a connected adequate graph and the quotient map.
///
/// Vertex `c` of the base is the `c`-th class in order of first occurrence;
/// base edges are ordered by (source class, out-color).
pub fn minimize(g: &AdequateGraph) -> Result<Minimized> {
    let ix = g.indexed()?;
    if ix.len() == 0 || component_labels(&ix).iter().any(|&c| c != 0) {
        return Err(Error::invalid("minimize needs a non-empty connected graph"));
    }
    let class = stable_partition(&ix, &g.edges);
    let count = class.iter().copied().max().unwrap() + 1;
    let mut rep = vec![UNSET; count];
    for (v, &c) in class.iter().enumerate() {
        if rep[c] == UNSET {
            rep[c] = v;
        }
    }
    let vertices: Vec<Vertex> = (0..count)
        .map(|c| Vertex {
            id: c,
            color: ix.color[rep[c]],
        })
        .collect();
    let mut offset = vec![0; count + 1];
    let mut edges = Vec::new();
    for c in 0..count {
        offset[c] = edges.len();
        for &e in &ix.out[rep[c]] {
            edges.push(Edge {
                src: c,
                dst: class[ix.dst[e]],
                out_color: g.edges[e].out_color,
                in_color: g.edges[e].in_color,
            });
        }
    }
    offset[count] = edges.len();
    let base = AdequateGraph {
        signature: g.signature.clone(),
        vertices,
        edges,
    };
    let quotient = ChromaticMap {
        vertex_map: (0..ix.len()).map(|v| (ix.ids[v], class[v])).collect(),
        edge_map: g
            .edges
            .iter()
            .enumerate()
            .map(|(i, e)| offset[class[ix.src[i]]] + e.out_color - 1)
            .collect(),
    };
    if !is_covering(&quotient, g, &base)? {
        return Err(Error::logic("refinement quotient is not a covering"));
    }
    let bx = base.indexed_unchecked();
    let again = stable_partition(&bx, &base.edges);
    if again.iter().enumerate().any(|(i, &c)| i != c) {
        return Err(Error::logic("quotient graph is not irreducible"));
    }
    Ok(Minimized { base, quotient })
}

pub fn is_irreducible(g: &AdequateGraph) -> Result<bool> {
    Ok(minimize(g)?.base.num_vertices() == g.num_vertices())
}

/// Order of the group of chromatic automorphisms of a connected graph.
///
/// Automorphisms act freely, so each is fixed by the image of the first vertex.
pub fn deck_group_order(g: &AdequateGraph, limits: &Limits) -> Result<usize> {
    let ix = g.indexed()?;
    if ix.len() > limits.max_graph_vertices {
        return Err(Error::cap("graph vertices", ix.len(), limits.max_graph_vertices));
    }
    if ix.len() == 0 || component_labels(&ix).iter().any(|&c| c != 0) {
        return Err(Error::invalid("deck group needs a non-empty connected graph"));
    }
    let mut count = 0;
    for w in 0..ix.len() {
        let mut vmap = vec![UNSET; ix.len()];
        if propagate(&ix, &ix, &mut vmap, 0, w) {
            count += 1;
        }
    }
    Ok(count)
}

/// Spanning tree data of a connected base graph.
struct TreeData {
    root: usize,
    /// For every base vertex, the path from the root as (edge, forward?).
    paths: Vec<Vec<(usize, bool)>>,
    /// Base edges outside the tree, in edge-list order.
    generators: Vec<usize>,
}

fn spanning_tree(bx: &Indexed) -> TreeData {
    let n = bx.len();
    let root = (0..n).min_by_key(|&v| bx.ids[v]).unwrap_or(0);
    let mut paths: Vec<Option<Vec<(usize, bool)>>> = vec![None; n];
    paths[root] = Some(Vec::new());
    let mut in_tree = vec![false; bx.src.len()];
    let mut queue = VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        let here = paths[v].clone().unwrap();
        let outs = bx.out[v].iter().map(|&e| (e, bx.dst[e], true));
        let ins = bx.inn[v].iter().map(|&e| (e, bx.src[e], false));
        for (e, w, fwd) in outs.chain(ins).collect::<Vec<_>>() {
            if paths[w].is_none() {
                let mut p = here.clone();
                p.push((e, fwd));
                paths[w] = Some(p);
                in_tree[e] = true;
                queue.push_back(w);
            }
        }
    }
    TreeData {
        root,
        paths: paths.into_iter().map(Option::unwrap_or_default).collect(),
        generators: (0..bx.src.len()).filter(|&e| !in_tree[e]).collect(),
    }
}

/// Follows a base path upstairs from cover vertex `start`.
fn lift_path(cx: &Indexed, f_edges: &[usize], bx: &Indexed, start: usize, path: &[(usize, bool)]) -> usize {
    let mut x = start;
    for &(e, fwd) in path {
        x = if fwd {
            let c = bx.out[bx.src[e]].iter().position(|&t| t == e).unwrap();
            let ce = cx.out[x][c];
            debug_assert_eq!(f_edges[ce], e);
            cx.dst[ce]
        } else {
            let c = bx.inn[bx.dst[e]].iter().position(|&t| t == e).unwrap();
            let ce = cx.inn[x][c];
            debug_assert_eq!(f_edges[ce], e);
            cx.src[ce]
        };
    }
    x
}

/// The monodromy tuple of a covering `cover -> base`.
///
/// The base must be connected and irreducible with positive cycle rank. The
/// spanning tree is grown breadth-first from the least vertex id, visiting
/// out-slots then in-slots by color; the `i`-th tuple entry describes the
/// `i`-th non-tree edge of the base in edge-list order, acting on the fiber
/// over the root labelled by increasing id.
pub fn to_tuple(cover: &AdequateGraph, base: &AdequateGraph) -> Result<PermTuple> {
    let bx = base.indexed()?;
    if bx.len() == 0 || component_labels(&bx).iter().any(|&c| c != 0) {
        return Err(Error::invalid("base graph must be non-empty and connected"));
    }
    if !is_irreducible(base)? {
        return Err(Error::invalid("base graph is not irreducible"));
    }
    let tree = spanning_tree(&bx);
    if tree.generators.is_empty() {
        return Err(Error::invalid("base graph has cycle rank 0; no monodromy tuple"));
    }
    let f = find_covering(cover, base)?
        .ok_or_else(|| Error::invalid("no chromatic covering of the base exists"))?;
    let cx = cover.indexed_unchecked();
    let root_id = bx.ids[tree.root];
    let fiber: Vec<usize> = (0..cx.len())
        .filter(|&v| f.vertex_map[&cx.ids[v]] == root_id)
        .collect();
    let n = fiber.len();
    // lifts[y][j] = endpoint of the tree path to y lifted at fiber point j
    let lifts: Vec<Vec<usize>> = (0..bx.len())
        .map(|y| {
            fiber
                .iter()
                .map(|&s| lift_path(&cx, &f.edge_map, &bx, s, &tree.paths[y]))
                .collect()
        })
        .collect();
    let mut back: Vec<HashMap<usize, usize>> = Vec::with_capacity(bx.len());
    for row in &lifts {
        back.push(row.iter().enumerate().map(|(j, &x)| (x, j)).collect());
    }
    let mut perms = Vec::with_capacity(tree.generators.len());
    for &e in &tree.generators {
        let (u, w) = (bx.src[e], bx.dst[e]);
        let c = base.edges[e].out_color - 1;
        let images: Vec<usize> = (0..n)
            .map(|j| {
                let x = cx.dst[cx.out[lifts[u][j]][c]];
                back[w][&x]
            })
            .collect();
        perms.push(Perm::new(images)?);
    }
    PermTuple::new(perms)
}

/// The covering of `base` with monodromy `t`.
///
/// Vertex `(y, j)` (base vertex at position `y`, fiber point `j`) gets id
/// `y * n + j`. Tree edges join equal fiber points; the `i`-th non-tree edge
/// joins `(u, j)` to `(w, σ_i(j))`.
pub fn from_tuple(base: &AdequateGraph, t: &PermTuple) -> Result<AdequateGraph> {
    let bx = base.indexed()?;
    if bx.len() == 0 || component_labels(&bx).iter().any(|&c| c != 0) {
        return Err(Error::invalid("base graph must be non-empty and connected"));
    }
    let tree = spanning_tree(&bx);
    if tree.generators.len() != t.rank() {
        return Err(Error::invalid(format!(
            "tuple has {} entries but the base has cycle rank {}",
            t.rank(),
            tree.generators.len()
        )));
    }
    let n = t.degree();
    let mut gen_index = vec![UNSET; base.edges.len()];
    for (i, &e) in tree.generators.iter().enumerate() {
        gen_index[e] = i;
    }
    let vertices = (0..bx.len())
        .flat_map(|y| (0..n).map(move |j| (y, j)))
        .map(|(y, j)| Vertex {
            id: y * n + j,
            color: bx.color[y],
        })
        .collect();
    let mut edges = Vec::with_capacity(base.edges.len() * n);
    for (e, be) in base.edges.iter().enumerate() {
        let (u, w) = (bx.src[e], bx.dst[e]);
        for j in 0..n {
            let j2 = match gen_index[e] {
                UNSET => j,
                i => t.get(i).apply(j),
            };
            edges.push(Edge {
                src: u * n + j,
                dst: w * n + j2,
                ..*be
            });
        }
    }
    Ok(AdequateGraph {
        signature: base.signature.clone(),
        vertices,
        edges,
    })
}

/// The cycle graph of `Tr(T_{w_1} ⋯ T_{w_n})`: vertex `i` has color `word[i]`
/// and one edge to vertex `i + 1 (mod n)`; all colors have signature `(1, 1)`.
pub fn trace_word_graph(word: &[usize], num_colors: usize) -> AdequateGraph {
    let n = word.len();
    AdequateGraph {
        signature: vec![(1, 1); num_colors],
        vertices: word
            .iter()
            .enumerate()
            .map(|(i, &c)| Vertex { id: i, color: c })
            .collect(),
        edges: (0..n)
            .map(|i| Edge {
                src: i,
                dst: (i + 1) % n,
                out_color: 1,
                in_color: 1,
            })
            .collect(),
    }
}

/// One vertex with `m` loops, the `i`-th colored `(i, i)`. Its fundamental group is free of rank `m`.
pub fn bouquet(m: usize) -> AdequateGraph {
    AdequateGraph {
        signature: vec![(m, m)],
        vertices: vec![Vertex { id: 0, color: 1 }],
        edges: (1..=m)
            .map(|i| Edge {
                src: 0,
                dst: 0,
                out_color: i,
                in_color: i,
            })
            .collect(),
    }
}

//! Exhaustive enumeration of graph classes of a fixed degree.
//!
//! Enumeration runs in two stages. First the uncolored skeletons: loopy
//! multigraphs on `n` vertices of valence at most three, deduplicated up to
//! vertex permutation. Every unused valence becomes a leg. Then the leg
//! colorings, taken per vertex as multisets (legs on one vertex are
//! interchangeable up to sign), each canonicalized and deduplicated by key.

use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;

use crate::canon::{canonicalize_diagram, CanonicalGraph};
use crate::color::Color;
use crate::error::{CloverError, Result};
use crate::graph::{Diagram, HalfEdge};

pub const DEFAULT_MAX_DEGREE: usize = 4;

#[derive(Clone, Debug)]
pub struct EnumerationOptions {
    pub connected_only: bool,
    pub max_degree: usize,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        EnumerationOptions {
            connected_only: false,
            max_degree: DEFAULT_MAX_DEGREE,
        }
    }
}

/// All graph classes of one degree over one alphabet, sorted by key.
#[derive(Clone, Debug)]
pub struct GeneratorBasis {
    pub degree: usize,
    pub alphabet: Vec<Color>,
    /// Classes with no orientation-reversing automorphism.
    pub generators: Vec<CanonicalGraph>,
    /// Classes with `G = −G`.
    pub degenerates: Vec<CanonicalGraph>,
}

impl GeneratorBasis {
    pub fn len(&self) -> usize {
        self.generators.len() + self.degenerates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Generators followed by degenerates.
    pub fn all(&self) -> impl Iterator<Item = &CanonicalGraph> {
        self.generators.iter().chain(self.degenerates.iter())
    }

    pub fn contains(&self, g: &CanonicalGraph) -> bool {
        let list = if g.is_degenerate() {
            &self.degenerates
        } else {
            &self.generators
        };
        list.binary_search(g).is_ok()
    }

    fn from_classes(
        degree: usize,
        alphabet: Vec<Color>,
        classes: BTreeSet<CanonicalGraph>,
    ) -> Self {
        let (degenerates, generators): (Vec<_>, Vec<_>) =
            classes.into_iter().partition(|c| c.is_degenerate());
        GeneratorBasis {
            degree,
            alphabet,
            generators,
            degenerates,
        }
    }
}

/// Enumerates all classes of the given degree with legs colored from
/// `alphabet`, under the default options.
pub fn enumerate(degree: usize, alphabet: &[Color]) -> Result<GeneratorBasis> {
    enumerate_with(degree, alphabet, &EnumerationOptions::default())
}

pub fn enumerate_with(
    degree: usize,
    alphabet: &[Color],
    opts: &EnumerationOptions,
) -> Result<GeneratorBasis> {
    let classes = enumerate_classes(degree, alphabet, None, opts)?;
    Ok(GeneratorBasis::from_classes(
        degree,
        alphabet.to_vec(),
        classes,
    ))
}

/// Enumerates the classes carrying exactly one `*` leg, the other legs
/// colored from `alphabet`. The returned alphabet includes `*`.
pub fn enumerate_star(
    degree: usize,
    alphabet: &[Color],
    opts: &EnumerationOptions,
) -> Result<GeneratorBasis> {
    let star = Color::star();
    let classes = enumerate_classes(degree, alphabet, Some(&star), opts)?;
    let mut full = alphabet.to_vec();
    full.push(star);
    Ok(GeneratorBasis::from_classes(degree, full, classes))
}

fn check_degree(degree: usize, opts: &EnumerationOptions) -> Result<()> {
    if degree > opts.max_degree {
        return Err(CloverError::ResourceLimit(format!(
            "degree {degree} exceeds the enumeration bound {}",
            opts.max_degree
        )));
    }
    Ok(())
}

fn enumerate_classes(
    degree: usize,
    alphabet: &[Color],
    marked: Option<&Color>,
    opts: &EnumerationOptions,
) -> Result<BTreeSet<CanonicalGraph>> {
    check_degree(degree, opts)?;
    let mut palette: Vec<Color> = alphabet.to_vec();
    palette.sort();
    palette.dedup();
    if let Some(m) = marked {
        if palette.contains(m) {
            return Err(CloverError::InvalidGraph(format!(
                "alphabet already contains `{m}`"
            )));
        }
        palette.push(m.clone());
    }
    let shapes: Vec<Shape> = skeletons(degree)
        .into_iter()
        .filter(|s| !opts.connected_only || s.is_connected())
        .collect();
    let found: Vec<Vec<CanonicalGraph>> = shapes
        .par_iter()
        .map(|s| color_shape(s, &palette, marked.is_some()))
        .collect();
    Ok(found.into_iter().flatten().collect())
}

/// An uncolored skeleton: loop flags and edge multiplicities.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Shape {
    n: usize,
    loops: Vec<u8>,
    mult: Vec<Vec<u8>>,
}

impl Shape {
    fn valence(&self, v: usize) -> usize {
        2 * self.loops[v] as usize + self.mult[v].iter().map(|&m| m as usize).sum::<usize>()
    }

    fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for w in 0..self.n {
                if self.mult[v][w] > 0 && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    fn encode(&self, perm: &[usize]) -> Vec<u8> {
        // perm[new] = old
        let mut out = Vec::with_capacity(self.n + self.n * self.n / 2);
        for &v in perm {
            out.push(self.loops[v]);
        }
        for i in 0..self.n {
            for j in i + 1..self.n {
                out.push(self.mult[perm[i]][perm[j]]);
            }
        }
        out
    }

    fn invariant(&self, v: usize) -> (u8, usize, Vec<u8>) {
        let mut nbrs: Vec<u8> = self.mult[v].iter().copied().filter(|&m| m > 0).collect();
        nbrs.sort_unstable();
        (self.loops[v], self.valence(v), nbrs)
    }

    /// Minimal encoding over vertex permutations that respect invariants.
    fn canonical_code(&self) -> Vec<u8> {
        let mut order: Vec<usize> = (0..self.n).collect();
        let inv: Vec<_> = (0..self.n).map(|v| self.invariant(v)).collect();
        order.sort_by(|&a, &b| inv[a].cmp(&inv[b]));
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for &v in &order {
            match blocks.last_mut() {
                Some(b) if inv[b[0]] == inv[v] => b.push(v),
                _ => blocks.push(vec![v]),
            }
        }
        let mut best: Option<Vec<u8>> = None;
        let mut perm = Vec::with_capacity(self.n);
        permute_blocks(&blocks, 0, &mut perm, &mut |p| {
            let code = self.encode(p);
            if best.as_ref().is_none_or(|b| code < *b) {
                best = Some(code);
            }
        });
        let mut key = inv.iter().map(|i| i.1 as u8).collect::<Vec<_>>();
        key.sort_unstable();
        key.extend(best.unwrap_or_default());
        key
    }

    fn diagram(&self, colors: &[Color]) -> Diagram {
        let mut next = vec![0usize; self.n];
        let mut edges = Vec::new();
        for v in 0..self.n {
            if self.loops[v] == 1 {
                edges.push((
                    HalfEdge::Slot { vertex: v, slot: 0 },
                    HalfEdge::Slot { vertex: v, slot: 1 },
                ));
                next[v] = 2;
            }
        }
        for u in 0..self.n {
            for w in u + 1..self.n {
                for _ in 0..self.mult[u][w] {
                    edges.push((
                        HalfEdge::Slot {
                            vertex: u,
                            slot: next[u],
                        },
                        HalfEdge::Slot {
                            vertex: w,
                            slot: next[w],
                        },
                    ));
                    next[u] += 1;
                    next[w] += 1;
                }
            }
        }
        let mut leg = 0;
        for v in 0..self.n {
            for s in next[v]..3 {
                edges.push((HalfEdge::Slot { vertex: v, slot: s }, HalfEdge::Leg(leg)));
                leg += 1;
            }
        }
        debug_assert_eq!(leg, colors.len());
        Diagram::new(self.n, colors.to_vec(), &edges).expect("skeleton is a valid graph")
    }
}

fn permute_blocks(
    blocks: &[Vec<usize>],
    b: usize,
    perm: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize]),
) {
    if b == blocks.len() {
        visit(perm);
        return;
    }
    let mut block = blocks[b].clone();
    let len = block.len();
    heap_permutations(&mut block, len, &mut |p| {
        let len = perm.len();
        perm.extend_from_slice(p);
        permute_blocks(blocks, b + 1, perm, visit);
        perm.truncate(len);
    });
}

fn heap_permutations(items: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k <= 1 {
        visit(items);
        return;
    }
    for i in 0..k {
        heap_permutations(items, k - 1, visit);
        if k % 2 == 0 {
            items.swap(i, k - 1);
        } else {
            items.swap(0, k - 1);
        }
    }
}

/// All skeletons with `n` vertices, one per isomorphism class.
fn skeletons(n: usize) -> Vec<Shape> {
    let mut found: HashMap<Vec<u8>, Shape> = HashMap::new();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |w| (u, w)))
        .collect();
    for loop_mask in 0u32..(1 << n) {
        let loops: Vec<u8> = (0..n).map(|v| ((loop_mask >> v) & 1) as u8).collect();
        let mut shape = Shape {
            n,
            loops,
            mult: vec![vec![0; n]; n],
        };
        let mut cap: Vec<usize> = (0..n).map(|v| 3 - 2 * shape.loops[v] as usize).collect();
        fill_pairs(&pairs, 0, &mut shape, &mut cap, &mut found);
    }
    let mut out: Vec<(Vec<u8>, Shape)> = found.into_iter().collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out.into_iter().map(|(_, s)| s).collect()
}

fn fill_pairs(
    pairs: &[(usize, usize)],
    i: usize,
    shape: &mut Shape,
    cap: &mut [usize],
    found: &mut HashMap<Vec<u8>, Shape>,
) {
    if i == pairs.len() {
        found
            .entry(shape.canonical_code())
            .or_insert_with(|| shape.clone());
        return;
    }
    let (u, w) = pairs[i];
    let max = cap[u].min(cap[w]);
    for m in 0..=max {
        shape.mult[u][w] = m as u8;
        shape.mult[w][u] = m as u8;
        cap[u] -= m;
        cap[w] -= m;
        fill_pairs(pairs, i + 1, shape, cap, found);
        cap[u] += m;
        cap[w] += m;
    }
    shape.mult[u][w] = 0;
    shape.mult[w][u] = 0;
}

/// Every coloring of the legs of `shape`, taken per vertex as a multiset.
/// When `marked` is set, the last palette entry must occur exactly once.
fn color_shape(shape: &Shape, palette: &[Color], marked: bool) -> Vec<CanonicalGraph> {
    let per_vertex: Vec<usize> = (0..shape.n).map(|v| 3 - shape.valence(v)).collect();
    let total: usize = per_vertex.iter().sum();
    if total > 0 && palette.is_empty() {
        return Vec::new();
    }
    if marked && total == 0 {
        return Vec::new();
    }
    let mut seen: BTreeSet<CanonicalGraph> = BTreeSet::new();
    let mut word: Vec<usize> = Vec::with_capacity(total);
    let star = palette.len().wrapping_sub(1);
    color_vertices(&per_vertex, 0, palette.len(), &mut word, &mut |w| {
        if marked && w.iter().filter(|&&c| c == star).count() != 1 {
            return;
        }
        let colors: Vec<Color> = w.iter().map(|&c| palette[c].clone()).collect();
        let (c, _) = canonicalize_diagram(&shape.diagram(&colors));
        seen.insert(c);
    });
    seen.into_iter().collect()
}

fn color_vertices(
    per_vertex: &[usize],
    v: usize,
    palette: usize,
    word: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize]),
) {
    if v == per_vertex.len() {
        visit(word);
        return;
    }
    multisets(per_vertex[v], 0, palette, word, &mut |w| {
        color_vertices(per_vertex, v + 1, palette, w, visit)
    });
}

fn multisets(
    k: usize,
    min: usize,
    palette: usize,
    word: &mut Vec<usize>,
    visit: &mut impl FnMut(&mut Vec<usize>),
) {
    if k == 0 {
        visit(word);
        return;
    }
    for c in min..palette {
        word.push(c);
        multisets(k - 1, c, palette, word, visit);
        word.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::color::colors;
    use crate::graph::shapes::{dumbbell, theta};

    #[test]
    fn degree_zero_is_the_empty_graph() {
        for alphabet in [vec![], colors(&["x", "y"])] {
            let b = enumerate(0, &alphabet).unwrap();
            assert_eq!(b.generators.len(), 1);
            assert!(b.degenerates.is_empty());
            assert_eq!(b.generators[0].key(), "deg=0; legs=[]; edges=[]");
        }
    }

    #[test]
    fn degree_one_without_colors_is_empty() {
        assert!(enumerate(1, &[]).unwrap().is_empty());
    }

    #[test]
    fn degree_two_without_colors() {
        let b = enumerate(2, &[]).unwrap();
        let (t, _) = canonicalize_diagram(&theta());
        let (d, _) = canonicalize_diagram(&dumbbell());
        assert_eq!(b.generators, vec![t]);
        assert_eq!(b.degenerates, vec![d]);
    }

    #[test]
    fn skeleton_counts() {
        // degree 1: Y, loop-with-leg. degree 2: eight multigraphs.
        assert_eq!(skeletons(1).len(), 2);
        let two = skeletons(2);
        assert!(two.iter().any(|s| s.mult[0][1] == 3));
        assert_eq!(two.len(), 8);
    }

    #[test]
    fn star_basis_has_exactly_one_star() {
        let b = enumerate_star(2, &colors(&["x"]), &EnumerationOptions::default()).unwrap();
        assert!(!b.is_empty());
        for g in b.all() {
            assert_eq!(g.diagram().count_color(&Color::star()), 1);
        }
    }

    #[test]
    fn degree_bound_is_enforced() {
        let opts = EnumerationOptions {
            connected_only: false,
            max_degree: 2,
        };
        assert!(matches!(
            enumerate_with(3, &[], &opts),
            Err(CloverError::ResourceLimit(_))
        ));
    }

    #[test]
    fn alphabet_embedding_is_monotone() {
        let small = enumerate(2, &colors(&["x"])).unwrap();
        let big = enumerate(2, &colors(&["x", "y"])).unwrap();
        for g in small.all() {
            assert!(big.contains(g));
        }
    }
}

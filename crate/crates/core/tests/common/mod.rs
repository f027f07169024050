//! Independent oracles shared by the integration tests.
//!
//! Nothing here calls into the library's canonicalization, enumeration,
//! relation builders or elimination; conversions to library types exist only
//! so that results can be compared.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use clover::color::Color;
use clover::graph::{Diagram, HalfEdge};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

/// What a trivalent slot is attached to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum End {
    Slot(usize),
    Leg(usize),
}

/// A graph as its slot structure: slot `3v+s` of vertex `v` is attached to
/// another slot or to a leg of the given color index. Legs are unordered.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Raw {
    pub n: usize,
    pub slots: Vec<End>,
}

const PERMS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [1, 2, 0],
    [2, 0, 1],
    [0, 2, 1],
    [2, 1, 0],
    [1, 0, 2],
];

fn perm_sign(i: usize) -> i32 {
    if i < 3 {
        1
    } else {
        -1
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Oracle canonical form by full search over vertex permutations and slot
/// permutations at every vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleCanon {
    pub code: Vec<usize>,
    pub sign: i32,
    pub degenerate: bool,
}

impl Raw {
    pub fn canonical(&self) -> OracleCanon {
        let n = self.n;
        let mut best: Option<OracleCanon> = None;
        let vperms = permutations(n);
        let mut choice = vec![0usize; n];
        loop {
            for p in &vperms {
                let newpos = |i: usize| 3 * p[i / 3] + PERMS[choice[i / 3]][i % 3];
                let mut code = vec![0; 3 * n];
                for i in 0..3 * n {
                    code[newpos(i)] = match self.slots[i] {
                        End::Slot(j) => newpos(j),
                        End::Leg(c) => 1000 + c,
                    };
                }
                let sign: i32 = choice.iter().map(|&c| perm_sign(c)).product();
                match &mut best {
                    None => {
                        best = Some(OracleCanon {
                            code,
                            sign,
                            degenerate: false,
                        })
                    }
                    Some(b) => {
                        if code < b.code {
                            *b = OracleCanon {
                                code,
                                sign,
                                degenerate: false,
                            };
                        } else if code == b.code && sign != b.sign {
                            b.degenerate = true;
                        }
                    }
                }
            }
            // next element of S3^n
            let mut k = 0;
            while k < n && choice[k] == 5 {
                choice[k] = 0;
                k += 1;
            }
            if k == n {
                break;
            }
            choice[k] += 1;
        }
        best.unwrap_or(OracleCanon {
            code: Vec::new(),
            sign: 1,
            degenerate: false,
        })
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for s in 0..3 {
                if let End::Slot(j) = self.slots[3 * v + s] {
                    if !seen[j / 3] {
                        seen[j / 3] = true;
                        stack.push(j / 3);
                    }
                }
            }
        }
        seen.into_iter().all(|b| b)
    }

    /// Library graph with legs numbered in slot order.
    pub fn to_diagram(&self, alphabet: &[Color]) -> Diagram {
        let mut legs = Vec::new();
        let mut edges = Vec::new();
        for i in 0..3 * self.n {
            let here = HalfEdge::Slot {
                vertex: i / 3,
                slot: i % 3,
            };
            match self.slots[i] {
                End::Slot(j) if j > i => edges.push((
                    here,
                    HalfEdge::Slot {
                        vertex: j / 3,
                        slot: j % 3,
                    },
                )),
                End::Slot(_) => {}
                End::Leg(c) => {
                    edges.push((here, HalfEdge::Leg(legs.len())));
                    legs.push(alphabet[c].clone());
                }
            }
        }
        Diagram::new(self.n, legs, &edges).expect("oracle graphs are well formed")
    }

    /// Slot pairs `(h, h')` with `h < h'` on distinct vertices.
    pub fn internal_edges(&self) -> Vec<(usize, usize)> {
        (0..3 * self.n)
            .filter_map(|i| match self.slots[i] {
                End::Slot(j) if j > i && j / 3 != i / 3 => Some((i, j)),
                _ => None,
            })
            .collect()
    }

    /// The three Jacobi terms at an internal edge: with arms `A, B` at the
    /// first vertex and `C, D` at the second, the arm pairs are
    /// `(A,B|C,D)`, `(A,C|D,B)` and `(A,D|B,C)`; their sum vanishes.
    pub fn jacobi(&self, h: usize, h2: usize) -> [Raw; 3] {
        let (u, w) = (h / 3, h2 / 3);
        let pos = [
            3 * u + (h + 1) % 3,
            3 * u + (h + 2) % 3,
            3 * w + (h2 + 1) % 3,
            3 * w + (h2 + 2) % 3,
        ];
        let arrangements = [[0, 1, 2, 3], [0, 2, 3, 1], [0, 3, 1, 2]];
        arrangements.map(|arr| {
            let mut slots = self.slots.clone();
            // arm arr[p] now sits at position p
            let mut at = [0usize; 4];
            for (p, &a) in arr.iter().enumerate() {
                at[a] = pos[p];
            }
            for a in 0..4 {
                let far = self.slots[pos[a]];
                match far {
                    End::Slot(f) => match pos.iter().position(|&q| q == f) {
                        Some(b) => slots[at[a]] = End::Slot(at[b]),
                        None => {
                            slots[at[a]] = End::Slot(f);
                            slots[f] = End::Slot(at[a]);
                        }
                    },
                    End::Leg(c) => slots[at[a]] = End::Leg(c),
                }
            }
            Raw { n: self.n, slots }
        })
    }
}

/// Every slot structure of degree `n` over `colors` colors, each once.
pub fn all_raw(n: usize, colors: usize) -> Vec<Raw> {
    fn rec(slots: &mut Vec<Option<End>>, colors: usize, n: usize, out: &mut Vec<Raw>) {
        let Some(i) = slots.iter().position(|s| s.is_none()) else {
            out.push(Raw {
                n,
                slots: slots.iter().map(|s| s.unwrap()).collect(),
            });
            return;
        };
        for c in 0..colors {
            slots[i] = Some(End::Leg(c));
            rec(slots, colors, n, out);
        }
        for j in i + 1..slots.len() {
            if slots[j].is_none() {
                slots[i] = Some(End::Slot(j));
                slots[j] = Some(End::Slot(i));
                rec(slots, colors, n, out);
                slots[j] = None;
            }
        }
        slots[i] = None;
    }
    let mut out = Vec::new();
    rec(&mut vec![None; 3 * n], colors, n, &mut out);
    out
}

/// Oracle class counts `(non-degenerate, degenerate)`.
pub fn oracle_counts(n: usize, colors: usize, connected_only: bool) -> (usize, usize) {
    let mut classes: BTreeMap<Vec<usize>, bool> = BTreeMap::new();
    for g in all_raw(n, colors) {
        if connected_only && !g.is_connected() {
            continue;
        }
        let c = g.canonical();
        classes.insert(c.code, c.degenerate);
    }
    let deg = classes.values().filter(|d| **d).count();
    (classes.len() - deg, deg)
}

/// A uniformly random slot structure (not uniform over classes).
pub fn random_raw(rng: &mut impl Rng, n: usize, colors: usize) -> Raw {
    let mut order: Vec<usize> = (0..3 * n).collect();
    order.shuffle(rng);
    let mut slots = vec![End::Leg(0); 3 * n];
    let mut i = 0;
    while i < order.len() {
        let pair = i + 1 < order.len() && (colors == 0 || rng.gen_bool(0.6));
        if pair {
            slots[order[i]] = End::Slot(order[i + 1]);
            slots[order[i + 1]] = End::Slot(order[i]);
            i += 2;
        } else {
            slots[order[i]] = End::Leg(rng.gen_range(0..colors.max(1)));
            i += 1;
        }
    }
    if colors == 0 && slots.iter().any(|s| matches!(s, End::Leg(_))) {
        // odd slot count cannot be matched without legs; retry
        return random_raw(rng, n, 1);
    }
    Raw { n, slots }
}

/// Levi-Civita symbol on `{0,1,2}`.
fn eps(a: usize, b: usize, c: usize) -> i64 {
    if a == b || b == c || a == c {
        0
    } else if (a, b, c) == (0, 1, 2) || (a, b, c) == (1, 2, 0) || (a, b, c) == (2, 0, 1) {
        1
    } else {
        -1
    }
}

/// Test vectors in `Z^3` attached to leg colors.
pub fn color_vector(c: &Color) -> [i64; 3] {
    match c.name() {
        "x" => [1, 0, 2],
        "y" => [0, 1, -1],
        "z" => [3, 1, 1],
        "t" => [2, -1, 1],
        _ => {
            let h = c.name().bytes().fold(7i64, |a, b| (a * 31 + b as i64) % 11);
            [h - 5, 2, 1 - h]
        }
    }
}

/// The so(3) weight system: contract an `ε` tensor at each trivalent vertex
/// (indices in cyclic slot order) along the edges, and the color vector at
/// each leg. It satisfies AS and IHX, so it vanishes on every relation.
pub fn weight(g: &Diagram) -> BigInt {
    let n = g.degree();
    let total = g.half_edge_count();
    // edge id for each half-edge
    let mut edge = vec![usize::MAX; total];
    let mut count = 0;
    for i in 0..total {
        if edge[i] == usize::MAX {
            edge[i] = count;
            edge[g.mate_of(i)] = count;
            count += 1;
        }
    }
    let mut idx = vec![0usize; count];
    let mut sum: i64 = 0;
    loop {
        let mut term: i64 = 1;
        for v in 0..n {
            term *= eps(idx[edge[3 * v]], idx[edge[3 * v + 1]], idx[edge[3 * v + 2]]);
            if term == 0 {
                break;
            }
        }
        if term != 0 {
            for (j, c) in g.legs().iter().enumerate() {
                term *= color_vector(c)[idx[edge[3 * n + j]]];
            }
            sum += term;
        }
        let mut k = 0;
        while k < count && idx[k] == 2 {
            idx[k] = 0;
            k += 1;
        }
        if k == count {
            break;
        }
        idx[k] += 1;
    }
    BigInt::from(sum)
}

/// Rank over `Q` by fraction-free dense elimination.
pub fn dense_rank(mut rows: Vec<Vec<BigInt>>) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    let mut prev = BigInt::one();
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        for r in rank + 1..rows.len() {
            for k in c + 1..cols {
                let v = &rows[rank][c] * &rows[r][k] - &rows[r][c] * &rows[rank][k];
                rows[r][k] = v / &prev;
            }
            rows[r][c] = BigInt::zero();
        }
        prev = rows[rank][c].clone();
        rank += 1;
    }
    rank
}

/// Distinct sets of strings, for comparing relation families.
pub fn as_set<T: ToString>(v: &[T]) -> BTreeSet<String> {
    v.iter().map(|x| x.to_string()).collect()
}

const SLOT_PERMS: [([usize; 3], i32); 6] = [
    ([0, 1, 2], 1),
    ([1, 2, 0], 1),
    ([2, 0, 1], 1),
    ([0, 2, 1], -1),
    ([2, 1, 0], -1),
    ([1, 0, 2], -1),
];

/// A random relabeling of `g` and the AS sign it introduces.
pub fn scramble(g: &Diagram, rng: &mut impl Rng) -> (Diagram, i32) {
    let n = g.degree();
    let mut vperm: Vec<usize> = (0..n).collect();
    vperm.shuffle(rng);
    let mut sign = 1;
    let slots: Vec<[usize; 3]> = (0..n)
        .map(|_| {
            let (p, s) = SLOT_PERMS[rng.gen_range(0..6)];
            sign *= s;
            p
        })
        .collect();
    let mut lperm: Vec<usize> = (0..g.leg_count()).collect();
    lperm.shuffle(rng);
    (g.relabel(&vperm, &slots, &lperm), sign)
}

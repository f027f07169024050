//! Canonical forms of single-colored graphs modulo antisymmetry.
//!
//! A relabeling permutes vertices and, at each vertex, permutes its three
//! slots. Odd slot permutations reverse a cyclic order and cost a factor −1.
//! The canonical representative is the relabeling whose breadth-first
//! encoding is lexicographically minimal; a graph that reaches its minimum
//! with both signs has an orientation-reversing automorphism and is
//! degenerate (`G = −G`).

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Mul, Neg};
use std::sync::Arc;

use num_bigint::BigInt;

use crate::color::Color;
use crate::error::Result;
use crate::graph::{ColoredGraph, Diagram};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_parity(odd: bool) -> Self {
        if odd {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn to_i32(self) -> i32 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn to_bigint(self) -> BigInt {
        BigInt::from(self.to_i32())
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        Sign::from_parity((self == Sign::Minus) != (rhs == Sign::Minus))
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        self * Sign::Minus
    }
}

/// An isomorphism class of single-colored graphs, up to sign.
///
/// Equality, ordering and hashing use only the key, which is the graph
/// notation of the canonical representative.
#[derive(Clone)]
pub struct CanonicalGraph {
    key: Arc<str>,
    degenerate: bool,
    rep: Arc<Diagram>,
}

impl CanonicalGraph {
    pub fn key(&self) -> &str {
        &self.key
    }

    pub fn is_degenerate(&self) -> bool {
        self.degenerate
    }

    /// The canonical representative; `canonicalize(rep)` has sign `+1`.
    pub fn diagram(&self) -> &Diagram {
        &self.rep
    }

    pub fn degree(&self) -> usize {
        self.rep.degree()
    }
}

impl PartialEq for CanonicalGraph {
    fn eq(&self, other: &Self) -> bool {
        self.key == other.key
    }
}

impl Eq for CanonicalGraph {}

impl PartialOrd for CanonicalGraph {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CanonicalGraph {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key.cmp(&other.key)
    }
}

impl Hash for CanonicalGraph {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.key.hash(state)
    }
}

impl fmt::Display for CanonicalGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.key)
    }
}

impl fmt::Debug for CanonicalGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "CanonicalGraph({}{})",
            self.key,
            if self.degenerate { ", degenerate" } else { "" }
        )
    }
}

/// Canonicalizes a graph given with leg labels; every label must be a
/// single color.
pub fn canonicalize(g: &ColoredGraph) -> Result<(CanonicalGraph, Sign)> {
    Ok(canonicalize_diagram(&g.to_diagram()?))
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
enum Token {
    Edge(u32, u8),
    Leg(u32),
}

const UNSET: u32 = u32::MAX;

/// Slot permutations of a vertex, as `perm[old_slot] = new_position`.
/// Index 0..3 are rotations (even), 3..6 reflections (odd).
const PERMS: [[u8; 3]; 6] = [
    [0, 1, 2],
    [2, 0, 1],
    [1, 2, 0],
    [0, 2, 1],
    [2, 1, 0],
    [1, 0, 2],
];

fn perm_is_odd(p: &[u8; 3]) -> bool {
    !(p[1] == (p[0] + 1) % 3 && p[2] == (p[0] + 2) % 3)
}

#[derive(Clone)]
struct State {
    label: Vec<u32>,
    perm: Vec<[u8; 3]>,
    order: Vec<usize>,
    tokens: Vec<Token>,
    odd: bool,
    /// Comparison of `tokens` with the same-length prefix of the best encoding.
    cmp: Ordering,
}

struct Best {
    tokens: Vec<Token>,
    label: Vec<u32>,
    perm: Vec<[u8; 3]>,
    odd: bool,
    seen_even: bool,
    seen_odd: bool,
}

struct ComponentSearch<'a> {
    mate: &'a [usize],
    slots: usize,
    leg_rank: &'a [u32],
    size: usize,
    best: Option<Best>,
}

impl ComponentSearch<'_> {
    fn refresh_cmp(&self, st: &mut State) {
        st.cmp = match &self.best {
            None => Ordering::Less,
            Some(b) => st.tokens.as_slice().cmp(&b.tokens[..st.tokens.len()]),
        };
    }

    fn emit(&self, st: &mut State, tok: Token) -> bool {
        if st.cmp == Ordering::Equal {
            if let Some(b) = &self.best {
                match tok.cmp(&b.tokens[st.tokens.len()]) {
                    Ordering::Greater => return false,
                    Ordering::Less => st.cmp = Ordering::Less,
                    Ordering::Equal => {}
                }
            }
        }
        st.tokens.push(tok);
        true
    }

    fn run(&mut self, mut st: State) {
        loop {
            let cursor = st.tokens.len();
            if cursor == 3 * self.size {
                self.finish(st);
                return;
            }
            let v = st.order[cursor / 3];
            let pos = (cursor % 3) as u8;
            let s = st.perm[v]
                .iter()
                .position(|&p| p == pos)
                .expect("slot permutation");
            let m = self.mate[3 * v + s];
            let tok = if m >= self.slots {
                Token::Leg(self.leg_rank[m - self.slots])
            } else {
                let (w, t) = (m / 3, m % 3);
                if st.label[w] == UNSET {
                    let new_label = st.order.len() as u32;
                    for odd in [false, true] {
                        let mut child = st.clone();
                        child.label[w] = new_label;
                        child.order.push(w);
                        let mut p = [0u8; 3];
                        p[t] = 0;
                        if odd {
                            p[(t + 1) % 3] = 2;
                            p[(t + 2) % 3] = 1;
                        } else {
                            p[(t + 1) % 3] = 1;
                            p[(t + 2) % 3] = 2;
                        }
                        child.perm[w] = p;
                        child.odd ^= odd;
                        self.refresh_cmp(&mut child);
                        if child.cmp == Ordering::Greater {
                            continue;
                        }
                        if self.emit(&mut child, Token::Edge(new_label, 0)) {
                            self.run(child);
                        }
                    }
                    return;
                }
                Token::Edge(st.label[w], st.perm[w][t])
            };
            if !self.emit(&mut st, tok) {
                return;
            }
        }
    }

    fn finish(&mut self, st: State) {
        let ord = match &self.best {
            None => Ordering::Less,
            Some(b) => st.tokens.cmp(&b.tokens),
        };
        match ord {
            Ordering::Less => {
                self.best = Some(Best {
                    seen_even: !st.odd,
                    seen_odd: st.odd,
                    tokens: st.tokens,
                    label: st.label,
                    perm: st.perm,
                    odd: st.odd,
                });
            }
            Ordering::Equal => {
                let b = self.best.as_mut().expect("best exists");
                if st.odd {
                    b.seen_odd = true;
                } else {
                    b.seen_even = true;
                }
            }
            Ordering::Greater => {}
        }
    }
}

struct ComponentForm {
    tokens: Vec<Token>,
    vertices: Vec<usize>,
    label: Vec<u32>,
    perm: Vec<[u8; 3]>,
    odd: bool,
    degenerate: bool,
}

fn canonical_component(g: &Diagram, leg_rank: &[u32], vertices: &[usize]) -> ComponentForm {
    let degree = g.degree();
    let mut search = ComponentSearch {
        mate: g.mates(),
        slots: 3 * degree,
        leg_rank,
        size: vertices.len(),
        best: None,
    };
    for &root in vertices {
        for p in PERMS.iter() {
            let mut st = State {
                label: vec![UNSET; degree],
                perm: vec![[0, 1, 2]; degree],
                order: vec![root],
                tokens: Vec::with_capacity(3 * vertices.len()),
                odd: perm_is_odd(p),
                cmp: Ordering::Equal,
            };
            st.label[root] = 0;
            st.perm[root] = *p;
            search.refresh_cmp(&mut st);
            if st.cmp != Ordering::Greater {
                search.run(st);
            }
        }
    }
    let best = search.best.expect("nonempty component");
    ComponentForm {
        tokens: best.tokens,
        vertices: vertices.to_vec(),
        label: best.label,
        perm: best.perm,
        odd: best.odd,
        degenerate: best.seen_even && best.seen_odd,
    }
}

/// Canonicalizes a single-colored graph: returns its class and the sign `s`
/// with `g = s · representative`. Degenerate classes always report `+1`.
pub fn canonicalize_diagram(g: &Diagram) -> (CanonicalGraph, Sign) {
    let degree = g.degree();
    let mut palette: Vec<&Color> = g.legs().iter().collect();
    palette.sort();
    palette.dedup();
    let leg_rank: Vec<u32> = g
        .legs()
        .iter()
        .map(|c| palette.binary_search(&c).expect("palette") as u32)
        .collect();

    let mut forms: Vec<ComponentForm> = g
        .components()
        .iter()
        .map(|vs| canonical_component(g, &leg_rank, vs))
        .collect();
    forms.sort_by(|a, b| (a.vertices.len(), &a.tokens).cmp(&(b.vertices.len(), &b.tokens)));

    let mut vertex_perm = vec![0usize; degree];
    let mut slot_perm = vec![[0usize; 3]; degree];
    let mut offset = 0;
    let mut odd = false;
    let mut degenerate = false;
    for f in &forms {
        for &v in &f.vertices {
            vertex_perm[v] = offset + f.label[v] as usize;
            slot_perm[v] = f.perm[v].map(|p| p as usize);
        }
        offset += f.vertices.len();
        odd ^= f.odd;
        degenerate |= f.degenerate;
    }

    // Legs are numbered in the order their attachment slots appear.
    let mut attach: Vec<(usize, usize)> = (0..g.leg_count())
        .map(|j| {
            let a = g.leg_attachment(j);
            let (v, s) = (a / 3, a % 3);
            (3 * vertex_perm[v] + slot_perm[v][s], j)
        })
        .collect();
    attach.sort_unstable();
    let mut leg_perm = vec![0usize; g.leg_count()];
    for (new, &(_, old)) in attach.iter().enumerate() {
        leg_perm[old] = new;
    }

    let rep = g.relabel(&vertex_perm, &slot_perm, &leg_perm);
    let key: Arc<str> = Arc::from(rep.to_string());
    let sign = if degenerate {
        Sign::Plus
    } else {
        Sign::from_parity(odd)
    };
    (
        CanonicalGraph {
            key,
            degenerate,
            rep: Arc::new(rep),
        },
        sign,
    )
}

impl Diagram {
    pub fn canonical(&self) -> (CanonicalGraph, Sign) {
        canonicalize_diagram(self)
    }
}

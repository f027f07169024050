//! Uni-trivalent graphs with cyclically ordered trivalent vertices.
//!
//! Half-edges are numbered flatly: vertex `k` owns half-edges `3k, 3k+1, 3k+2`
//! (slot order is the counterclockwise cyclic order), and leg `j` owns the
//! single half-edge `3·degree + j`. Edges are a fixed-point-free involution
//! on half-edges in which no two leg half-edges are paired.

use std::fmt;
use std::str::FromStr;

use crate::color::{is_name_char, Color, LegLabel};
use crate::error::{CloverError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum HalfEdge {
    Slot { vertex: usize, slot: usize },
    Leg(usize),
}

impl fmt::Display for HalfEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HalfEdge::Slot { vertex, slot } => write!(f, "v{vertex}.{slot}"),
            HalfEdge::Leg(j) => write!(f, "l{j}"),
        }
    }
}

/// A uni-trivalent graph whose legs carry labels of type `L`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Graph<L> {
    degree: usize,
    legs: Vec<L>,
    mate: Vec<usize>,
}

/// Graph whose legs carry arbitrary nonzero color combinations.
pub type ColoredGraph = Graph<LegLabel>;

/// Graph whose legs carry single colors; the generator objects.
pub type Diagram = Graph<Color>;

impl<L> Graph<L> {
    /// Builds a graph from an explicit edge list.
    pub fn new(degree: usize, legs: Vec<L>, edges: &[(HalfEdge, HalfEdge)]) -> Result<Self> {
        let n = 3 * degree + legs.len();
        let mut mate = vec![usize::MAX; n];
        let index = |h: HalfEdge| -> Result<usize> {
            match h {
                HalfEdge::Slot { vertex, slot } if vertex < degree && slot < 3 => {
                    Ok(3 * vertex + slot)
                }
                HalfEdge::Leg(j) if j < legs.len() => Ok(3 * degree + j),
                _ => Err(CloverError::InvalidGraph(format!(
                    "half-edge {h} out of range"
                ))),
            }
        };
        for &(a, b) in edges {
            let (ia, ib) = (index(a)?, index(b)?);
            if ia == ib {
                return Err(CloverError::InvalidGraph(format!(
                    "edge {a}-{a} joins a half-edge to itself"
                )));
            }
            for (i, h) in [(ia, a), (ib, b)] {
                if mate[i] != usize::MAX {
                    return Err(CloverError::InvalidGraph(format!(
                        "half-edge {h} used twice"
                    )));
                }
            }
            mate[ia] = ib;
            mate[ib] = ia;
        }
        Self::from_mate(degree, legs, mate)
    }

    /// Builds a graph from a mate array over the flat half-edge numbering.
    pub fn from_mate(degree: usize, legs: Vec<L>, mate: Vec<usize>) -> Result<Self> {
        let g = Graph { degree, legs, mate };
        g.validate()?;
        Ok(g)
    }

    pub(crate) fn from_mate_unchecked(degree: usize, legs: Vec<L>, mate: Vec<usize>) -> Self {
        let g = Graph { degree, legs, mate };
        debug_assert!(g.validate().is_ok());
        g
    }

    fn validate(&self) -> Result<()> {
        let n = 3 * self.degree + self.legs.len();
        if self.mate.len() != n {
            return Err(CloverError::InvalidGraph(
                "mate array has the wrong length".into(),
            ));
        }
        for (i, &m) in self.mate.iter().enumerate() {
            if m >= n {
                return Err(CloverError::InvalidGraph(format!(
                    "half-edge {} is unmatched",
                    self.half_edge(i)
                )));
            }
            if m == i || self.mate[m] != i {
                return Err(CloverError::InvalidGraph(
                    "edges do not form a perfect matching".into(),
                ));
            }
            if self.is_leg_index(i) && self.is_leg_index(m) {
                return Err(CloverError::InvalidGraph(format!(
                    "strut between {} and {}",
                    self.half_edge(i),
                    self.half_edge(m)
                )));
            }
        }
        Ok(())
    }

    /// Number of trivalent vertices.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn legs(&self) -> &[L] {
        &self.legs
    }

    pub fn leg_count(&self) -> usize {
        self.legs.len()
    }

    pub fn half_edge_count(&self) -> usize {
        self.mate.len()
    }

    pub fn mate_of(&self, index: usize) -> usize {
        self.mate[index]
    }

    pub(crate) fn mates(&self) -> &[usize] {
        &self.mate
    }

    pub fn is_leg_index(&self, index: usize) -> bool {
        index >= 3 * self.degree
    }

    pub fn half_edge(&self, index: usize) -> HalfEdge {
        if index < 3 * self.degree {
            HalfEdge::Slot {
                vertex: index / 3,
                slot: index % 3,
            }
        } else {
            HalfEdge::Leg(index - 3 * self.degree)
        }
    }

    pub fn leg_index(&self, leg: usize) -> usize {
        3 * self.degree + leg
    }

    /// The vertex slot (flat index) a leg is attached to.
    pub fn leg_attachment(&self, leg: usize) -> usize {
        self.mate[self.leg_index(leg)]
    }

    /// Edges as pairs of flat half-edge indices `(a, b)` with `a < b`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.mate
            .iter()
            .enumerate()
            .filter(|&(a, &b)| a < b)
            .map(|(a, &b)| (a, b))
    }

    /// Edges joining two distinct trivalent vertices.
    pub fn internal_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges()
            .filter(move |&(a, b)| !self.is_leg_index(b) && a / 3 != b / 3)
    }

    pub fn has_internal_edge(&self) -> bool {
        self.internal_edges().next().is_some()
    }

    /// Whether some edge returns to the vertex it leaves.
    pub fn has_self_loop(&self) -> bool {
        self.edges()
            .any(|(a, b)| !self.is_leg_index(b) && a / 3 == b / 3)
    }

    /// Connected components as sorted vertex lists, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut comp = vec![usize::MAX; self.degree];
        let mut out = Vec::new();
        for start in 0..self.degree {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![start];
            comp[start] = id;
            let mut i = 0;
            while i < members.len() {
                let v = members[i];
                for s in 0..3 {
                    let m = self.mate[3 * v + s];
                    if !self.is_leg_index(m) {
                        let w = m / 3;
                        if comp[w] == usize::MAX {
                            comp[w] = id;
                            members.push(w);
                        }
                    }
                }
                i += 1;
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Relabels legs, keeping the topology.
    pub fn map_legs<M>(&self, f: impl FnMut(&L) -> M) -> Graph<M> {
        Graph {
            degree: self.degree,
            legs: self.legs.iter().map(f).collect(),
            mate: self.mate.clone(),
        }
    }

    pub fn with_leg(&self, leg: usize, label: L) -> Self
    where
        L: Clone,
    {
        let mut g = self.clone();
        g.legs[leg] = label;
        g
    }

    /// Joins the attachment points of legs `i` and `j` by a new edge and
    /// removes both legs. Remaining legs keep their relative order.
    pub fn glue_legs(&self, i: usize, j: usize) -> Result<Self>
    where
        L: Clone,
    {
        if i == j {
            return Err(CloverError::InvalidGraph(format!(
                "cannot glue leg {i} to itself"
            )));
        }
        if i >= self.legs.len() || j >= self.legs.len() {
            return Err(CloverError::InvalidGraph(format!(
                "legs {i}, {j} out of range for a graph with {} legs",
                self.legs.len()
            )));
        }
        Ok(self.glue_pairs(&[(i, j)]))
    }

    /// Glues several disjoint pairs of legs at once.
    pub(crate) fn glue_pairs(&self, pairs: &[(usize, usize)]) -> Self
    where
        L: Clone,
    {
        let slots = 3 * self.degree;
        let k = self.legs.len();
        let mut removed = vec![false; k];
        let mut mate = self.mate.clone();
        for &(i, j) in pairs {
            debug_assert!(i != j && !removed[i] && !removed[j]);
            removed[i] = true;
            removed[j] = true;
            let a = self.mate[slots + i];
            let b = self.mate[slots + j];
            mate[a] = b;
            mate[b] = a;
        }
        let mut new_index = vec![usize::MAX; k];
        let mut legs = Vec::with_capacity(k - 2 * pairs.len());
        for (j, l) in self.legs.iter().enumerate() {
            if !removed[j] {
                new_index[j] = legs.len();
                legs.push(l.clone());
            }
        }
        let mut out = vec![usize::MAX; slots + legs.len()];
        for a in 0..slots {
            let m = mate[a];
            out[a] = if m >= slots {
                slots + new_index[m - slots]
            } else {
                m
            };
        }
        for (j, &nj) in new_index.iter().enumerate() {
            if nj != usize::MAX {
                out[slots + nj] = self.mate[slots + j];
            }
        }
        Graph::from_mate_unchecked(self.degree, legs, out)
    }

    /// Disjoint union; vertices and legs of `other` come after those of `self`.
    pub fn disjoint_union(&self, other: &Self) -> Self
    where
        L: Clone,
    {
        let degree = self.degree + other.degree;
        let slots = 3 * degree;
        let (s1, s2) = (3 * self.degree, 3 * other.degree);
        let k1 = self.legs.len();
        let remap1 = |i: usize| if i < s1 { i } else { slots + (i - s1) };
        let remap2 = |i: usize| {
            if i < s2 {
                s1 + i
            } else {
                slots + k1 + (i - s2)
            }
        };
        let mut mate = vec![0; slots + k1 + other.legs.len()];
        for (i, &m) in self.mate.iter().enumerate() {
            mate[remap1(i)] = remap1(m);
        }
        for (i, &m) in other.mate.iter().enumerate() {
            mate[remap2(i)] = remap2(m);
        }
        let mut legs = self.legs.clone();
        legs.extend(other.legs.iter().cloned());
        Graph::from_mate_unchecked(degree, legs, mate)
    }

    /// Reverses the cyclic order at vertex `v` by swapping slots 1 and 2.
    pub fn flip_vertex(&self, v: usize) -> Self
    where
        L: Clone,
    {
        let n = self.mate.len();
        let swap = |i: usize| {
            if i == 3 * v + 1 {
                3 * v + 2
            } else if i == 3 * v + 2 {
                3 * v + 1
            } else {
                i
            }
        };
        let mut mate = vec![0; n];
        for i in 0..n {
            mate[swap(i)] = swap(self.mate[i]);
        }
        Graph::from_mate_unchecked(self.degree, self.legs.clone(), mate)
    }

    /// Applies a relabeling: vertex `v` becomes `vertex_perm[v]`, its slot `s`
    /// moves to position `slot_perm[v][s]`, and leg `j` becomes `leg_perm[j]`.
    pub fn relabel(
        &self,
        vertex_perm: &[usize],
        slot_perm: &[[usize; 3]],
        leg_perm: &[usize],
    ) -> Self
    where
        L: Clone,
    {
        let slots = 3 * self.degree;
        let map = |i: usize| {
            if i < slots {
                let (v, s) = (i / 3, i % 3);
                3 * vertex_perm[v] + slot_perm[v][s]
            } else {
                slots + leg_perm[i - slots]
            }
        };
        let mut mate = vec![0; self.mate.len()];
        for (i, &m) in self.mate.iter().enumerate() {
            mate[map(i)] = map(m);
        }
        let mut legs: Vec<Option<L>> = vec![None; self.legs.len()];
        for (j, l) in self.legs.iter().enumerate() {
            legs[leg_perm[j]] = Some(l.clone());
        }
        Graph::from_mate_unchecked(
            self.degree,
            legs.into_iter()
                .map(|l| l.expect("leg permutation"))
                .collect(),
            mate,
        )
    }
}

impl ColoredGraph {
    /// Converts to a single-color diagram, failing on the first leg whose
    /// label is not exactly one color.
    pub fn to_diagram(&self) -> Result<Diagram> {
        let legs = self
            .legs
            .iter()
            .enumerate()
            .map(|(j, l)| l.as_single().cloned().ok_or(CloverError::MultiColorLeg(j)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Graph {
            degree: self.degree,
            legs,
            mate: self.mate.clone(),
        })
    }
}

impl Diagram {
    pub fn to_colored(&self) -> ColoredGraph {
        self.map_legs(|c| LegLabel::single(c.clone()))
    }

    pub fn count_color(&self, color: &Color) -> usize {
        self.legs.iter().filter(|c| *c == color).count()
    }

    /// Index of the unique star leg, if exactly one exists.
    pub fn star_leg(&self) -> Option<usize> {
        let mut found = None;
        for (j, c) in self.legs.iter().enumerate() {
            if c.is_star() {
                if found.is_some() {
                    return None;
                }
                found = Some(j);
            }
        }
        found
    }
}

impl<L: fmt::Display> fmt::Display for Graph<L> {
    /// `deg=N; legs=[x,y]; edges=[v0.0-v0.1, v0.2-l0, ...]`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "deg={}; legs=[", self.degree)?;
        for (j, l) in self.legs.iter().enumerate() {
            if j > 0 {
                f.write_str(",")?;
            }
            write!(f, "{l}")?;
        }
        f.write_str("]; edges=[")?;
        for (n, (a, b)) in self.edges().enumerate() {
            if n > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}-{}", self.half_edge(a), self.half_edge(b))?;
        }
        f.write_str("]")
    }
}

struct NotationParser<'a> {
    src: &'a str,
    chars: Vec<char>,
    pos: usize,
}

impl<'a> NotationParser<'a> {
    fn new(src: &'a str) -> Self {
        NotationParser {
            src,
            chars: src.chars().collect(),
            pos: 0,
        }
    }

    fn error(&self, msg: impl Into<String>) -> CloverError {
        let consumed: String = self.chars[..self.pos.min(self.chars.len())]
            .iter()
            .collect();
        let line = consumed.matches('\n').count() + 1;
        let column = consumed
            .rsplit('\n')
            .next()
            .map_or(0, |l| l.chars().count())
            + 1;
        CloverError::parse(line, column, msg)
    }

    fn ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn expect(&mut self, lit: &str) -> Result<()> {
        self.ws();
        for c in lit.chars() {
            if self.chars.get(self.pos) != Some(&c) {
                return Err(self.error(format!("expected `{lit}`")));
            }
            self.pos += 1;
        }
        Ok(())
    }

    fn peek(&mut self) -> Option<char> {
        self.ws();
        self.chars.get(self.pos).copied()
    }

    fn number(&mut self) -> Result<usize> {
        self.ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| self.error("number too large"))
    }

    fn half_edge(&mut self) -> Result<HalfEdge> {
        match self.peek() {
            Some('v') => {
                self.pos += 1;
                let vertex = self.number()?;
                self.expect(".")?;
                let slot = self.number()?;
                Ok(HalfEdge::Slot { vertex, slot })
            }
            Some('l') => {
                self.pos += 1;
                Ok(HalfEdge::Leg(self.number()?))
            }
            _ => Err(self.error("expected a half-edge `vK.S` or `lJ`")),
        }
    }

    fn label(&mut self) -> Result<LegLabel> {
        self.ws();
        let start = self.pos;
        while self.pos < self.chars.len() {
            let c = self.chars[self.pos];
            if c == ',' || c == ']' {
                break;
            }
            if !(c.is_whitespace()
                || c.is_ascii_digit()
                || is_name_char(c)
                || matches!(c, '+' | '-' | '*'))
            {
                return Err(self.error(format!("unexpected character `{c}` in leg label")));
            }
            self.pos += 1;
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        let saved = self.pos;
        self.pos = start;
        let label = text.trim().parse::<LegLabel>().map_err(|e| match e {
            CloverError::Parse { message, .. } => self.error(message),
            other => other,
        })?;
        self.pos = saved;
        Ok(label)
    }

    fn parse(mut self) -> Result<ColoredGraph> {
        self.expect("deg")?;
        self.expect("=")?;
        let degree = self.number()?;
        self.expect(";")?;
        self.expect("legs")?;
        self.expect("=")?;
        self.expect("[")?;
        let mut legs = Vec::new();
        if self.peek() != Some(']') {
            loop {
                legs.push(self.label()?);
                match self.peek() {
                    Some(',') => self.pos += 1,
                    Some(']') => break,
                    _ => return Err(self.error("expected `,` or `]`")),
                }
            }
        }
        self.expect("]")?;
        self.expect(";")?;
        self.expect("edges")?;
        self.expect("=")?;
        self.expect("[")?;
        let mut edges = Vec::new();
        if self.peek() != Some(']') {
            loop {
                let a = self.half_edge()?;
                self.expect("-")?;
                let b = self.half_edge()?;
                edges.push((a, b));
                match self.peek() {
                    Some(',') => self.pos += 1,
                    Some(']') => break,
                    _ => return Err(self.error("expected `,` or `]`")),
                }
            }
        }
        self.expect("]")?;
        if self.peek().is_some() {
            return Err(self.error("trailing input"));
        }
        let _ = self.src;
        Graph::new(degree, legs, &edges)
    }
}

impl FromStr for ColoredGraph {
    type Err = CloverError;
    fn from_str(s: &str) -> Result<Self> {
        NotationParser::new(s).parse()
    }
}

impl FromStr for Diagram {
    type Err = CloverError;
    fn from_str(s: &str) -> Result<Self> {
        NotationParser::new(s).parse()?.to_diagram()
    }
}

/// Small constructors for the graphs that recur in examples and tests.
pub mod shapes {
    use super::*;

    fn slot(vertex: usize, slot: usize) -> HalfEdge {
        HalfEdge::Slot { vertex, slot }
    }

    /// One trivalent vertex with three legs in counterclockwise order.
    pub fn y_graph<L>(legs: [L; 3]) -> Graph<L> {
        let legs = Vec::from(legs);
        Graph::new(
            1,
            legs,
            &[
                (slot(0, 0), HalfEdge::Leg(0)),
                (slot(0, 1), HalfEdge::Leg(1)),
                (slot(0, 2), HalfEdge::Leg(2)),
            ],
        )
        .expect("Y graph")
    }

    /// Two trivalent vertices joined by one edge; legs 0,1 sit on the first
    /// vertex and legs 2,3 on the second.
    pub fn h_graph<L>(legs: [L; 4]) -> Graph<L> {
        Graph::new(
            2,
            Vec::from(legs),
            &[
                (slot(0, 0), slot(1, 0)),
                (slot(0, 1), HalfEdge::Leg(0)),
                (slot(0, 2), HalfEdge::Leg(1)),
                (slot(1, 1), HalfEdge::Leg(2)),
                (slot(1, 2), HalfEdge::Leg(3)),
            ],
        )
        .expect("H graph")
    }

    /// Two vertices joined by three parallel edges, slot `s` to slot `s`.
    pub fn theta<L>() -> Graph<L> {
        Graph::new(
            2,
            Vec::new(),
            &[
                (slot(0, 0), slot(1, 0)),
                (slot(0, 1), slot(1, 1)),
                (slot(0, 2), slot(1, 2)),
            ],
        )
        .expect("theta graph")
    }

    /// Two vertices, each with a self-loop, joined by one edge.
    pub fn dumbbell<L>() -> Graph<L> {
        Graph::new(
            2,
            Vec::new(),
            &[
                (slot(0, 0), slot(1, 0)),
                (slot(0, 1), slot(0, 2)),
                (slot(1, 1), slot(1, 2)),
            ],
        )
        .expect("dumbbell graph")
    }

    /// A triangle of three vertices, one leg per vertex.
    pub fn triangle<L>(legs: [L; 3]) -> Graph<L> {
        Graph::new(
            3,
            Vec::from(legs),
            &[
                (slot(0, 0), HalfEdge::Leg(0)),
                (slot(0, 1), slot(1, 2)),
                (slot(0, 2), slot(2, 1)),
                (slot(1, 0), HalfEdge::Leg(1)),
                (slot(1, 1), slot(2, 2)),
                (slot(2, 0), HalfEdge::Leg(2)),
            ],
        )
        .expect("triangle graph")
    }
}

#[cfg(test)]
mod tests {
    use super::shapes::*;
    use super::*;
    use crate::color::colors;

    #[test]
    fn notation_round_trip() {
        let text = "deg=2; legs=[x,y,x,x]; edges=[v0.0-v1.0, v0.1-l0, v0.2-l1, v1.1-l2, v1.2-l3]";
        let g: Diagram = text.parse().unwrap();
        assert_eq!(g.to_string(), text);
        let multi = "deg=1; legs=[x+2y,x,-y]; edges=[v0.0-l0, v0.1-l1, v0.2-l2]";
        let g: ColoredGraph = multi.parse().unwrap();
        assert_eq!(g.to_string(), multi);
        assert!(matches!(
            multi.parse::<Diagram>(),
            Err(CloverError::MultiColorLeg(0))
        ));
        let empty: Diagram = "deg=0; legs=[]; edges=[]".parse().unwrap();
        assert_eq!(empty.to_string(), "deg=0; legs=[]; edges=[]");
    }

    #[test]
    fn notation_errors_carry_positions() {
        let err = "deg=1; legs=[x,x,x]; edges=[v0.0-l0, v0.1-l1]"
            .parse::<Diagram>()
            .unwrap_err();
        assert!(matches!(err, CloverError::InvalidGraph(_)), "{err}");
        let err = "deg=1; legs=[x,x,x]\nedges=[]"
            .parse::<Diagram>()
            .unwrap_err();
        match err {
            CloverError::Parse { line, column, .. } => assert_eq!((line, column), (2, 1)),
            other => panic!("unexpected {other}"),
        }
        let strut = "deg=0; legs=[x,y]; edges=[l0-l1]"
            .parse::<Diagram>()
            .unwrap_err();
        assert!(strut.to_string().contains("strut"));
    }

    #[test]
    fn gluing_two_ys_gives_h() {
        let c = colors(&["x", "y"]);
        let yy = y_graph([c[0].clone(), c[1].clone(), c[0].clone()]).disjoint_union(&y_graph([
            c[0].clone(),
            c[1].clone(),
            c[1].clone(),
        ]));
        let h = yy.glue_legs(2, 3).unwrap();
        assert_eq!(h.degree(), 2);
        assert_eq!(h.leg_count(), 4);
        assert!(h.is_connected());
        assert_eq!(h.internal_edges().count(), 1);
        assert!(yy.glue_legs(1, 1).is_err());
    }

    #[test]
    fn gluing_legs_on_one_vertex_makes_a_loop() {
        let c = colors(&["x"]);
        let y = y_graph([c[0].clone(), c[0].clone(), c[0].clone()]);
        let g = y.glue_legs(0, 1).unwrap();
        assert!(g.has_self_loop());
        assert_eq!(g.leg_count(), 1);
        let h = h_graph([c[0].clone(), c[0].clone(), c[0].clone(), c[0].clone()]);
        let g = h.glue_legs(0, 2).unwrap().glue_legs(0, 1).unwrap();
        assert_eq!(g.degree(), 2);
        assert_eq!(g.leg_count(), 0);
    }

    #[test]
    fn components_of_disjoint_union() {
        let t: Diagram = theta();
        let u = t.disjoint_union(&dumbbell());
        assert_eq!(u.components(), vec![vec![0, 1], vec![2, 3]]);
        assert_eq!(u.internal_edges().count(), 4);
    }
}

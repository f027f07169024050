//! Integer linear combinations of canonical graphs.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::canon::{canonicalize_diagram, CanonicalGraph};
use crate::color::{Color, LegLabel};
use crate::graph::{ColoredGraph, Diagram};

/// A homogeneous integer combination of graph classes.
///
/// Degenerate classes satisfy `2G = 0` over the integers, so their
/// coefficients are stored reduced mod 2.
#[derive(Clone, PartialEq, Eq)]
pub struct DiagramVector {
    degree: usize,
    terms: BTreeMap<CanonicalGraph, BigInt>,
}

impl DiagramVector {
    pub fn zero(degree: usize) -> Self {
        DiagramVector {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_diagram(g: &Diagram) -> Self {
        let mut v = DiagramVector::zero(g.degree());
        v.add_diagram(g, &BigInt::one());
        v
    }

    pub fn from_canonical(g: &CanonicalGraph) -> Self {
        let mut v = DiagramVector::zero(g.degree());
        v.add_canonical(g, BigInt::one());
        v
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&CanonicalGraph, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, g: &CanonicalGraph) -> BigInt {
        self.terms.get(g).cloned().unwrap_or_default()
    }

    pub fn add_canonical(&mut self, g: &CanonicalGraph, coeff: BigInt) {
        assert_eq!(
            g.degree(),
            self.degree,
            "diagram vectors are degree-homogeneous"
        );
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(g.clone()).or_insert_with(BigInt::zero);
        *entry += coeff;
        if g.is_degenerate() {
            *entry = entry.mod_floor(&BigInt::from(2));
        }
        if entry.is_zero() {
            self.terms.remove(g);
        }
    }

    /// Adds `coeff · g`, canonicalizing `g` and applying its sign.
    pub fn add_diagram(&mut self, g: &Diagram, coeff: &BigInt) {
        if coeff.is_zero() {
            return;
        }
        let (c, sign) = canonicalize_diagram(g);
        self.add_canonical(&c, sign.to_bigint() * coeff);
    }

    pub fn add_scaled(&mut self, other: &DiagramVector, scale: &BigInt) {
        if scale.is_zero() {
            return;
        }
        for (g, k) in &other.terms {
            self.add_canonical(g, k * scale);
        }
    }

    pub fn scaled(&self, scale: &BigInt) -> DiagramVector {
        let mut v = DiagramVector::zero(self.degree);
        v.add_scaled(self, scale);
        v
    }

    pub fn add(&self, other: &DiagramVector) -> DiagramVector {
        let mut v = self.clone();
        v.add_scaled(other, &BigInt::one());
        v
    }

    pub fn sub(&self, other: &DiagramVector) -> DiagramVector {
        let mut v = self.clone();
        v.add_scaled(other, &-BigInt::one());
        v
    }

    /// Applies a linear map given on representatives, extended linearly.
    pub fn map_terms(
        &self,
        degree: usize,
        mut f: impl FnMut(&Diagram) -> DiagramVector,
    ) -> DiagramVector {
        let mut out = DiagramVector::zero(degree);
        for (g, k) in &self.terms {
            out.add_scaled(&f(g.diagram()), k);
        }
        out
    }
}

impl fmt::Display for DiagramVector {
    /// One `coefficient<TAB>graph` line per term; the zero vector prints `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (g, k)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str("\n")?;
            }
            write!(f, "{k}\t{g}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for DiagramVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DiagramVector(deg {}) {{", self.degree)?;
        for (g, k) in &self.terms {
            write!(f, " {k}·[{g}]")?;
        }
        f.write_str(" }")
    }
}

/// Distributes every leg label over its colors.
pub fn expand(g: &ColoredGraph) -> DiagramVector {
    let mut out = DiagramVector::zero(g.degree());
    let mut colors: Vec<Color> = Vec::with_capacity(g.leg_count());
    expand_rec(g, 0, &mut colors, BigInt::one(), &mut out);
    out
}

fn expand_rec(
    g: &ColoredGraph,
    leg: usize,
    chosen: &mut Vec<Color>,
    coeff: BigInt,
    out: &mut DiagramVector,
) {
    if leg == g.leg_count() {
        let mut it = chosen.iter();
        let d = g.map_legs(|_| it.next().expect("one color per leg").clone());
        out.add_diagram(&d, &coeff);
        return;
    }
    for (c, k) in g.legs()[leg].terms() {
        chosen.push(c.clone());
        expand_rec(g, leg + 1, chosen, &coeff * k, out);
        chosen.pop();
    }
}

/// Replaces every `color`-colored leg by `label` and expands.
pub fn substitute(v: &DiagramVector, color: &Color, label: &LegLabel) -> DiagramVector {
    v.map_terms(v.degree(), |d| {
        let g = d.map_legs(|c| {
            if c == color {
                label.clone()
            } else {
                LegLabel::single(c.clone())
            }
        });
        expand(&g)
    })
}

//! Relation vectors: AS, IHX, LOOP and the closed/open brane relations.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::canon::CanonicalGraph;
use crate::color::{Color, LegLabel};
use crate::enumerate::GeneratorBasis;
use crate::error::{CloverError, Result};
use crate::graph::{Diagram, Graph};
use crate::model::ManifoldModel;
use crate::vector::{expand, DiagramVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RelationKind {
    As,
    Ihx,
    Loop,
    Br,
    Obr,
}

impl RelationKind {
    pub fn name(self) -> &'static str {
        match self {
            RelationKind::As => "as",
            RelationKind::Ihx => "ihx",
            RelationKind::Loop => "loop",
            RelationKind::Br => "br",
            RelationKind::Obr => "obr",
        }
    }
}

impl fmt::Display for RelationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RelationKind {
    type Err = CloverError;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "as" => Ok(RelationKind::As),
            "ihx" => Ok(RelationKind::Ihx),
            "loop" => Ok(RelationKind::Loop),
            "br" => Ok(RelationKind::Br),
            "obr" => Ok(RelationKind::Obr),
            other => Err(CloverError::InvalidSelection(format!(
                "unknown relation `{other}`"
            ))),
        }
    }
}

/// A selection of relation families; OBR requires BR.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationSet(BTreeSet<RelationKind>);

impl RelationSet {
    pub fn new(kinds: impl IntoIterator<Item = RelationKind>) -> Result<Self> {
        let set: BTreeSet<RelationKind> = kinds.into_iter().collect();
        if set.contains(&RelationKind::Obr) && !set.contains(&RelationKind::Br) {
            return Err(CloverError::InvalidSelection("obr requires br".into()));
        }
        Ok(RelationSet(set))
    }

    /// AS, IHX, LOOP.
    pub fn graph() -> Self {
        RelationSet([RelationKind::As, RelationKind::Ihx, RelationKind::Loop].into())
    }

    pub fn closed() -> Self {
        let mut s = Self::graph();
        s.0.insert(RelationKind::Br);
        s
    }

    pub fn all() -> Self {
        let mut s = Self::closed();
        s.0.insert(RelationKind::Obr);
        s
    }

    pub fn contains(&self, k: RelationKind) -> bool {
        self.0.contains(&k)
    }

    pub fn iter(&self) -> impl Iterator<Item = RelationKind> + '_ {
        self.0.iter().copied()
    }
}

impl FromStr for RelationSet {
    type Err = CloverError;
    fn from_str(s: &str) -> Result<Self> {
        let kinds = s
            .split(',')
            .filter(|t| !t.trim().is_empty())
            .map(RelationKind::from_str)
            .collect::<Result<Vec<_>>>()?;
        RelationSet::new(kinds)
    }
}

impl fmt::Display for RelationSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.0.iter().map(|k| k.name()).collect();
        f.write_str(&names.join(","))
    }
}

/// A graph with one distinguished `*` leg.
#[derive(Clone, Debug)]
pub struct StarGraph {
    base: Diagram,
    star: usize,
}

impl StarGraph {
    pub fn new(base: Diagram) -> Result<Self> {
        let star = base
            .star_leg()
            .ok_or_else(|| CloverError::InvalidGraph("graph needs exactly one `*` leg".into()))?;
        Ok(StarGraph { base, star })
    }

    pub fn base(&self) -> &Diagram {
        &self.base
    }

    pub fn star_leg(&self) -> usize {
        self.star
    }

    /// `(l, color of l, G_l)` for every leg `l` other than the star, where
    /// `G_l` glues the star leg to `l`.
    pub fn gluings(&self) -> Vec<(usize, Color, Diagram)> {
        (0..self.base.leg_count())
            .filter(|&l| l != self.star)
            .map(|l| {
                let g = self.base.glue_legs(self.star, l).expect("distinct legs");
                (l, self.base.legs()[l].clone(), g)
            })
            .collect()
    }

    /// `Σ_l w(c_l)·G_l` over the non-star legs.
    pub fn weighted_gluing(
        &self,
        mut weight: impl FnMut(&Color) -> Result<BigInt>,
    ) -> Result<DiagramVector> {
        let mut out = DiagramVector::zero(self.base.degree());
        for (_, c, g) in self.gluings() {
            let w = weight(&c)?;
            out.add_diagram(&g, &w);
        }
        Ok(out)
    }
}

fn pairing_weight<'a>(
    model: &'a ManifoldModel,
    row: &'a [BigInt],
) -> impl FnMut(&Color) -> Result<BigInt> + 'a {
    move |c| {
        model
            .component_index(c)
            .map(|i| row[i].clone())
            .ok_or_else(|| CloverError::UnknownColor(c.to_string()))
    }
}

/// `⟨G, Σ_s⟩ = Σ_l P[s][c_l]·G_l`.
pub fn bracket_closed(g: &StarGraph, s: usize, model: &ManifoldModel) -> Result<DiagramVector> {
    let row = &model
        .h2
        .get(s)
        .ok_or_else(|| CloverError::InvalidSelection(format!("no H2 generator {s}")))?
        .pairing;
    g.weighted_gluing(pairing_weight(model, row))
}

/// `⟨G, Σ_0⟩ = G[* ← a] + Σ_l pairing[c_l]·G_l`.
pub fn bracket_open(
    g: &StarGraph,
    a: &[BigInt],
    pairing: &[BigInt],
    model: &ManifoldModel,
) -> Result<DiagramVector> {
    if !model.is_nullhomologous(a) {
        let parts: Vec<String> = a.iter().map(|x| x.to_string()).collect();
        return Err(CloverError::NotNullhomologous(format!(
            "({})",
            parts.join(", ")
        )));
    }
    let mut out = g.weighted_gluing(pairing_weight(model, pairing))?;
    let terms = model
        .components
        .iter()
        .zip(a)
        .filter(|(_, k)| !k.is_zero())
        .map(|(c, k)| (c.name.clone(), k.clone()));
    if let Ok(label) = LegLabel::from_terms(terms) {
        let star = g.star;
        let recolored: Graph<LegLabel> = g.base.to_colored().with_leg(star, label);
        out.add_scaled(&expand(&recolored), &BigInt::from(1));
    }
    Ok(out)
}

// Sign-normalized, zero-free, deduplicated, ordered by text.
fn normalize(vs: impl IntoIterator<Item = DiagramVector>) -> Vec<DiagramVector> {
    let mut seen: BTreeMap<String, DiagramVector> = BTreeMap::new();
    for v in vs {
        if v.is_zero() {
            continue;
        }
        let negative = v.iter().next().is_some_and(|(_, k)| k.is_negative());
        let v = if negative {
            v.scaled(&BigInt::from(-1))
        } else {
            v
        };
        seen.entry(v.to_string()).or_insert(v);
    }
    seen.into_values().collect()
}

const ROTATE: [[usize; 4]; 2] = [
    // new positions (u1, u2, w1, w2) of the arms originally at (a, b, c, d)
    [2, 0, 1, 3],
    [1, 2, 0, 3],
];

/// The two re-connections of the internal edge `(h, h')` of `g`; with `g`
/// itself they satisfy `T1 + T2 + T3 = 0`.
pub fn ihx_terms(g: &Diagram, h: usize, h2: usize) -> [Diagram; 2] {
    let (u, w) = (h / 3, h2 / 3);
    assert!(u != w && g.mate_of(h) == h2, "not an internal edge");
    let pos = [
        3 * u + (h + 1) % 3,
        3 * u + (h + 2) % 3,
        3 * w + (h2 + 1) % 3,
        3 * w + (h2 + 2) % 3,
    ];
    ROTATE.map(|sigma| {
        let mut mate = g.mates().to_vec();
        for p in 0..4 {
            let m = g.mate_of(pos[p]);
            let target = pos[sigma[p]];
            match pos.iter().position(|&q| q == m) {
                Some(q) => mate[target] = pos[sigma[q]],
                None => {
                    mate[target] = m;
                    mate[m] = target;
                }
            }
        }
        Graph::from_mate_unchecked(g.degree(), g.legs().to_vec(), mate)
    })
}

pub fn ihx_relation(g: &Diagram, h: usize, h2: usize) -> DiagramVector {
    let mut v = DiagramVector::from_diagram(g);
    for t in ihx_terms(g, h, h2) {
        v.add_diagram(&t, &BigInt::from(1));
    }
    v
}

pub fn ihx_relations(basis: &GeneratorBasis) -> Vec<DiagramVector> {
    let all: Vec<&CanonicalGraph> = basis.all().collect();
    let vs: Vec<DiagramVector> = all
        .par_iter()
        .flat_map_iter(|c| {
            let d = c.diagram();
            d.internal_edges()
                .map(|(a, b)| ihx_relation(d, a, b))
                .collect::<Vec<_>>()
        })
        .collect();
    normalize(vs)
}

/// One relation `G = 0` per class containing a self-loop.
pub fn loop_relations(basis: &GeneratorBasis) -> Vec<DiagramVector> {
    normalize(
        basis
            .all()
            .filter(|c| c.diagram().has_self_loop())
            .map(DiagramVector::from_canonical),
    )
}

/// Classes with `G = −G`; over `Z` each contributes the row `2G = 0`.
pub fn as_degenerate(basis: &GeneratorBasis) -> Vec<CanonicalGraph> {
    basis.degenerates.clone()
}

fn star_graphs(star_basis: &GeneratorBasis) -> Vec<StarGraph> {
    star_basis
        .all()
        .map(|c| StarGraph::new(c.diagram().clone()).expect("star basis graphs carry one star"))
        .collect()
}

pub fn br_relations(
    star_basis: &GeneratorBasis,
    model: &ManifoldModel,
) -> Result<Vec<DiagramVector>> {
    let stars = star_graphs(star_basis);
    let vs = stars
        .par_iter()
        .map(|g| {
            (0..model.h2.len())
                .map(|s| bracket_closed(g, s, model))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(normalize(vs.into_iter().flatten()))
}

pub fn obr_relations(
    star_basis: &GeneratorBasis,
    model: &ManifoldModel,
) -> Result<Vec<DiagramVector>> {
    let stars = star_graphs(star_basis);
    let vs = stars
        .par_iter()
        .map(|g| {
            model
                .obr_surfaces
                .iter()
                .map(|s| bracket_open(g, &s.kernel, &s.pairing, model))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(normalize(vs.into_iter().flatten()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::color::colors;
    use crate::enumerate::{enumerate, enumerate_star, EnumerationOptions};
    use crate::graph::shapes::{dumbbell, h_graph, theta, y_graph};
    use crate::model::closed_rational_model;

    #[test]
    fn selection_rules() {
        assert!("as,ihx,obr".parse::<RelationSet>().is_err());
        let s: RelationSet = "ihx,br,obr".parse().unwrap();
        assert_eq!(s.to_string(), "ihx,br,obr");
        assert!("ihx,foo".parse::<RelationSet>().is_err());
    }

    #[test]
    fn ihx_on_theta_involves_theta_and_dumbbell() {
        let t: Diagram = theta();
        let (a, b) = t.internal_edges().next().unwrap();
        let v = ihx_relation(&t, a, b);
        let th = t.canonical().0;
        let db = dumbbell::<Color>().canonical().0;
        for (g, _) in v.iter() {
            assert!(g == &th || g == &db, "unexpected term {g}");
        }
        // the two theta terms cancel, leaving the dumbbell
        assert!(v.coefficient(&th).is_zero());
        assert_eq!(v, DiagramVector::from_canonical(&db));
    }

    #[test]
    fn y_graph_has_no_ihx() {
        let b = enumerate(1, &colors(&["x"])).unwrap();
        assert!(ihx_relations(&b).is_empty());
    }

    #[test]
    fn loops() {
        let b = enumerate(2, &[]).unwrap();
        let l = loop_relations(&b);
        assert_eq!(l.len(), 1);
        assert_eq!(l[0], DiagramVector::from_diagram(&dumbbell::<Color>()));
        let looped = y_graph(colors(&["x", "x", "x"]).try_into().unwrap())
            .glue_legs(0, 1)
            .unwrap();
        assert!(looped.has_self_loop());
    }

    #[test]
    fn degree_two_graph_relations_leave_theta() {
        let b = enumerate(2, &[]).unwrap();
        let mut rels = ihx_relations(&b);
        rels.extend(loop_relations(&b));
        let q = crate::quotient::present_quotient(&b, &rels, crate::quotient::Ring::Q).unwrap();
        assert_eq!(q.free_rank, 1);
    }

    #[test]
    fn closed_bracket_sums_over_legs() {
        let c = colors(&["x", "y"]);
        let mut m = closed_rational_model(2, &[]);
        m.h2[0].pairing = vec![BigInt::from(2), BigInt::from(3)];
        let g = h_graph([Color::star(), c[0].clone(), c[0].clone(), c[1].clone()]);
        let sg = StarGraph::new(g.clone()).unwrap();
        let terms = sg.gluings();
        assert_eq!(terms.len(), 3);
        let mut want = DiagramVector::zero(2);
        for (l, k) in [(1, 2), (2, 2), (3, 3)] {
            want.add_diagram(&g.glue_legs(0, l).unwrap(), &BigInt::from(k));
        }
        assert_eq!(bracket_closed(&sg, 0, &m).unwrap(), want);
        let lone = StarGraph::new(y_graph([Color::star(), Color::star(), c[0].clone()]));
        assert!(lone.is_err());
    }

    #[test]
    fn open_bracket_with_zero_pairing_is_a_difference() {
        let m = {
            let mut m = closed_rational_model(1, &[]);
            let mut y = m.components[0].clone();
            y.name = Color::new("y").unwrap();
            m.components.push(y);
            m.h2[0].pairing.push(BigInt::from(1));
            m.obr_surfaces = m.default_surfaces();
            m
        };
        let c = colors(&["x", "y"]);
        let g = h_graph([Color::star(), c[0].clone(), c[0].clone(), c[1].clone()]);
        let sg = StarGraph::new(g.clone()).unwrap();
        let a = [BigInt::from(1), BigInt::from(-1)];
        let zero = [BigInt::zero(), BigInt::zero()];
        let v = bracket_open(&sg, &a, &zero, &m).unwrap();
        let want = DiagramVector::from_diagram(&g.with_leg(0, c[0].clone()))
            .sub(&DiagramVector::from_diagram(&g.with_leg(0, c[1].clone())));
        assert_eq!(v, want);
        assert!(matches!(
            bracket_open(&sg, &[BigInt::from(1), BigInt::zero()], &zero, &m),
            Err(CloverError::NotNullhomologous(_))
        ));
    }

    #[test]
    fn empty_sources_give_no_relations() {
        let m = closed_rational_model(0, &[]);
        let sb = enumerate_star(2, &m.alphabet(), &EnumerationOptions::default()).unwrap();
        assert!(br_relations(&sb, &m).unwrap().is_empty());
        assert!(obr_relations(&sb, &m).unwrap().is_empty());
        let m = closed_rational_model(0, &[BigInt::from(3)]);
        let sb = enumerate_star(1, &m.alphabet(), &EnumerationOptions::default()).unwrap();
        assert!(br_relations(&sb, &m).unwrap().is_empty());
        assert!(!obr_relations(&sb, &m).unwrap().is_empty());
    }
}

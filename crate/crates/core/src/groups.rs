//! The groups `B(b)`, `A(b)`, `A°(b)` and `A(φ)` in one degree.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use crate::color::Color;
use crate::enumerate::{enumerate_star, enumerate_with, EnumerationOptions, GeneratorBasis};
use crate::error::{CloverError, Result};
use crate::model::ManifoldModel;
use crate::quotient::{Presentation, Ring};
use crate::relations::{
    br_relations, ihx_relations, loop_relations, obr_relations, RelationKind, RelationSet,
};
use crate::vector::DiagramVector;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Group {
    B,
    A,
    Ao,
    Aphi,
}

impl Group {
    pub const ALL: [Group; 4] = [Group::B, Group::A, Group::Ao, Group::Aphi];

    pub fn name(self) -> &'static str {
        match self {
            Group::B => "B",
            Group::A => "A",
            Group::Ao => "Ao",
            Group::Aphi => "Aphi",
        }
    }

    pub fn relations(self) -> RelationSet {
        match self {
            Group::B | Group::Aphi => RelationSet::graph(),
            Group::A => RelationSet::closed(),
            Group::Ao => RelationSet::all(),
        }
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Group {
    type Err = CloverError;
    fn from_str(s: &str) -> Result<Self> {
        Group::ALL
            .into_iter()
            .find(|g| g.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| CloverError::InvalidSelection(format!("unknown group `{s}`")))
    }
}

/// Generators and relation vectors of one degree over one alphabet.
#[derive(Clone, Debug)]
pub struct GroupData {
    pub basis: GeneratorBasis,
    pub relations: Vec<DiagramVector>,
}

/// Relation vectors of the selected families. AS is built into the
/// canonical forms and enters presentations as `2G = 0` rows over `Z`.
pub fn relation_vectors(
    basis: &GeneratorBasis,
    set: &RelationSet,
    model: Option<&ManifoldModel>,
    opts: &EnumerationOptions,
) -> Result<Vec<DiagramVector>> {
    let mut out = Vec::new();
    if set.contains(RelationKind::Ihx) {
        out.extend(ihx_relations(basis));
    }
    if set.contains(RelationKind::Loop) {
        out.extend(loop_relations(basis));
    }
    if set.contains(RelationKind::Br) || set.contains(RelationKind::Obr) {
        let model = model
            .ok_or_else(|| CloverError::InvalidSelection("brane relations need a model".into()))?;
        let stars = enumerate_star(basis.degree, &basis.alphabet, opts)?;
        if set.contains(RelationKind::Br) {
            out.extend(br_relations(&stars, model)?);
        }
        if set.contains(RelationKind::Obr) {
            out.extend(obr_relations(&stars, model)?);
        }
    }
    Ok(out)
}

pub fn group_data(
    group: Group,
    degree: usize,
    model: &ManifoldModel,
    opts: &EnumerationOptions,
) -> Result<GroupData> {
    let alphabet: Vec<Color> = match group {
        Group::Aphi => Vec::new(),
        _ => model.alphabet(),
    };
    let basis = enumerate_with(degree, &alphabet, opts)?;
    let relations = relation_vectors(&basis, &group.relations(), Some(model), opts)?;
    Ok(GroupData { basis, relations })
}

pub fn present_group(
    group: Group,
    degree: usize,
    model: &ManifoldModel,
    ring: Ring,
    opts: &EnumerationOptions,
) -> Result<Presentation> {
    let data = group_data(group, degree, model, opts)?;
    Presentation::new(&data.basis, &data.relations, ring)
}

/// All four groups in one degree, sharing enumeration work.
#[derive(Clone, Debug)]
pub struct Tower {
    pub degree: usize,
    pub entries: Vec<(Group, Presentation, Duration)>,
}

impl Tower {
    pub fn get(&self, g: Group) -> &Presentation {
        &self
            .entries
            .iter()
            .find(|(h, _, _)| *h == g)
            .expect("all groups present")
            .1
    }
}

pub fn tower(
    model: &ManifoldModel,
    degree: usize,
    ring: Ring,
    opts: &EnumerationOptions,
) -> Result<Tower> {
    let start = Instant::now();
    let basis = enumerate_with(degree, &model.alphabet(), opts)?;
    let mut graph = ihx_relations(&basis);
    graph.extend(loop_relations(&basis));
    let shared = start.elapsed();

    let mut entries = Vec::new();
    let t = Instant::now();
    entries.push((
        Group::B,
        Presentation::new(&basis, &graph, ring)?,
        shared + t.elapsed(),
    ));

    let t = Instant::now();
    let stars = enumerate_star(degree, &basis.alphabet, opts)?;
    let br = br_relations(&stars, model)?;
    let mut closed = graph.clone();
    closed.extend(br);
    let star_time = t.elapsed();
    entries.push((
        Group::A,
        Presentation::new(&basis, &closed, ring)?,
        shared + t.elapsed(),
    ));

    let t = Instant::now();
    let mut open = closed;
    open.extend(obr_relations(&stars, model)?);
    entries.push((
        Group::Ao,
        Presentation::new(&basis, &open, ring)?,
        shared + star_time + t.elapsed(),
    ));

    let t = Instant::now();
    let phi = enumerate_with(degree, &[], opts)?;
    let mut rels = ihx_relations(&phi);
    rels.extend(loop_relations(&phi));
    entries.push((
        Group::Aphi,
        Presentation::new(&phi, &rels, ring)?,
        t.elapsed(),
    ));
    Ok(Tower { degree, entries })
}

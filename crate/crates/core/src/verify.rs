//! Machine checks of structural consequences of the brane relations.

use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::color::{Color, LegLabel};
use crate::enumerate::{enumerate_star, enumerate_with, EnumerationOptions};
use crate::error::Result;
use crate::graph::{shapes, Diagram};
use crate::groups::{group_data, present_group, Group};
use crate::linalg::{hermite_normal_form, IntegerMatrix};
use crate::model::{closed_rational_model, ManifoldModel};
use crate::quotient::{Presentation, Ring};
use crate::relations::obr_relations;
use crate::vector::{expand, DiagramVector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    NotApplicable(String),
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::Pass => f.write_str("pass"),
            Status::Fail => f.write_str("FAIL"),
            Status::NotApplicable(why) => write!(f, "n/a ({why})"),
        }
    }
}

/// One checked instance: a model, a degree and optionally a generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub model: String,
    pub degree: Option<usize>,
    pub subject: String,
    pub status: Status,
    pub witnesses: Vec<String>,
    pub note: Option<String>,
}

impl Instance {
    fn new(model: &str, degree: Option<usize>, subject: impl Into<String>, ok: bool) -> Self {
        Instance {
            model: model.to_string(),
            degree,
            subject: subject.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            witnesses: Vec::new(),
            note: None,
        }
    }

    fn not_applicable(model: &str, subject: impl Into<String>, why: impl Into<String>) -> Self {
        Instance {
            model: model.to_string(),
            degree: None,
            subject: subject.into(),
            status: Status::NotApplicable(why.into()),
            witnesses: Vec::new(),
            note: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorollaryReport {
    pub name: String,
    pub degrees: Vec<usize>,
    pub instances: Vec<Instance>,
}

impl CorollaryReport {
    fn new(name: &str, degrees: &[usize]) -> Self {
        CorollaryReport {
            name: name.to_string(),
            degrees: degrees.to_vec(),
            instances: Vec::new(),
        }
    }

    /// No instance failed.
    pub fn passed(&self) -> bool {
        self.instances.iter().all(|i| i.status != Status::Fail)
    }

    /// Some instance actually ran.
    pub fn applicable(&self) -> bool {
        self.instances
            .iter()
            .any(|i| !matches!(i.status, Status::NotApplicable(_)))
    }

    /// `key=value` lines, one per instance.
    pub fn to_machine(&self) -> String {
        let mut out = String::new();
        for i in &self.instances {
            let status = match &i.status {
                Status::Pass => "pass",
                Status::Fail => "fail",
                Status::NotApplicable(_) => "na",
            };
            out.push_str(&format!(
                "report={} model={} degree={} subject={} status={} witnesses={}\n",
                self.name,
                i.model,
                i.degree.map_or("-".to_string(), |d| d.to_string()),
                i.subject.replace(' ', "_"),
                status,
                i.witnesses.len()
            ));
        }
        out
    }
}

impl fmt::Display for CorollaryReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ds = self.degrees.iter().map(|d| d.to_string()).join(",");
        writeln!(f, "report {} degrees=[{}]", self.name, ds)?;
        for i in &self.instances {
            let d = i.degree.map_or(String::new(), |d| format!(" degree={d}"));
            writeln!(f, "  {} model={}{}: {}", i.subject, i.model, d, i.status)?;
            if let Some(n) = &i.note {
                writeln!(f, "    note {n}")?;
            }
            for w in &i.witnesses {
                writeln!(f, "    witness {w}")?;
            }
        }
        write!(
            f,
            "  result {}",
            if self.passed() { "pass" } else { "FAIL" }
        )
    }
}

const MAX_WITNESSES: usize = 5;

fn same(a: &Presentation, b: &Presentation) -> bool {
    a.free_rank() == b.free_rank() && a.torsion() == b.torsion()
}

fn describe(p: &Presentation) -> String {
    format!(
        "rank={} torsion=[{}]",
        p.free_rank(),
        p.torsion().iter().join(",")
    )
}

/// Rank over `Q` of the free classes of the given components.
fn class_rank(model: &ManifoldModel, comps: &[usize]) -> usize {
    if comps.is_empty() || model.b1 == 0 {
        return 0;
    }
    let rows: Vec<Vec<BigInt>> = comps
        .iter()
        .map(|&i| model.components[i].class_free.clone())
        .collect();
    hermite_normal_form(&IntegerMatrix::from_dense(rows.len(), model.b1, &rows)).rank
}

/// Rank over `Q` of the pairing between `H_2` generators and components.
fn pairing_rank(model: &ManifoldModel) -> usize {
    if model.h2.is_empty() || model.component_count() == 0 {
        return 0;
    }
    let rows: Vec<Vec<BigInt>> = model.h2.iter().map(|s| s.pairing.clone()).collect();
    hermite_normal_form(&IntegerMatrix::from_dense(
        rows.len(),
        model.component_count(),
        &rows,
    ))
    .rank
}

fn is_rational_basis(model: &ManifoldModel) -> bool {
    let all: Vec<usize> = (0..model.component_count()).collect();
    model.component_count() == model.b1 && class_rank(model, &all) == model.b1
}

/// If the components form a basis of a torsion-free `H_1`, OBR adds nothing:
/// `A(b) = A°(b)` exactly.
pub fn check_basis_obr_vacuous(
    model: &ManifoldModel,
    label: &str,
    degrees: &[usize],
    opts: &EnumerationOptions,
) -> Result<CorollaryReport> {
    let mut r = CorollaryReport::new("basis_obr_vacuous", degrees);
    if !model.torsion.is_empty() || !model.kernel_lattice().is_empty() {
        r.instances.push(Instance::not_applicable(
            label,
            "guard",
            "components do not form a basis of a torsion-free H_1",
        ));
        return Ok(r);
    }
    for &d in degrees {
        let stars = enumerate_star(d, &model.alphabet(), opts)?;
        let obr = obr_relations(&stars, model)?;
        r.instances.push(Instance::new(
            label,
            Some(d),
            "obr relations empty",
            obr.is_empty(),
        ));
        let a = present_group(Group::A, d, model, Ring::Z, opts)?;
        let ao = present_group(Group::Ao, d, model, Ring::Z, opts)?;
        let mut i = Instance::new(label, Some(d), "A = Ao over Z", same(&a, &ao));
        i.note = Some(describe(&ao));
        r.instances.push(i);
    }
    Ok(r)
}

/// With vanishing intersection pairing the BR relations are vacuous:
/// `B(b) = A(b)`.
pub fn check_br_vacuous(
    model: &ManifoldModel,
    label: &str,
    degrees: &[usize],
    ring: Ring,
    opts: &EnumerationOptions,
) -> Result<CorollaryReport> {
    let mut r = CorollaryReport::new("br_vacuous", degrees);
    if model
        .h2
        .iter()
        .any(|s| s.pairing.iter().any(|x| !x.is_zero()))
    {
        r.instances.push(Instance::not_applicable(
            label,
            "guard",
            "intersection pairing is nonzero",
        ));
        return Ok(r);
    }
    for &d in degrees {
        let b = present_group(Group::B, d, model, ring, opts)?;
        let a = present_group(Group::A, d, model, ring, opts)?;
        let mut i = Instance::new(label, Some(d), format!("B = A over {ring}"), same(&a, &b));
        i.note = Some(describe(&a));
        r.instances.push(i);
    }
    Ok(r)
}

/// Graphs with an internal edge colored by a sublink that is not spanning
/// over `Q` vanish in `A°(b)`; in particular legless graphs do when `b1 > 0`.
pub fn check_legless_vanishing(
    model: &ManifoldModel,
    label: &str,
    degrees: &[usize],
    opts: &EnumerationOptions,
) -> Result<CorollaryReport> {
    let mut r = CorollaryReport::new("legless_vanishing", degrees);
    if model.b1 == 0 {
        r.instances
            .push(Instance::not_applicable(label, "guard", "b1 = 0"));
        return Ok(r);
    }
    if pairing_rank(model) < model.b1 {
        r.instances.push(Instance::not_applicable(
            label,
            "guard",
            "intersection pairing is degenerate over Q (not a closed manifold)",
        ));
        return Ok(r);
    }
    for &d in degrees {
        let data = group_data(Group::Ao, d, model, opts)?;
        let p = Presentation::new(&data.basis, &data.relations, Ring::Q)?;
        let mut legless = Instance::new(label, Some(d), "legless generators vanish", true);
        let mut sublink = Instance::new(
            label,
            Some(d),
            "non-spanning sublink generators vanish",
            true,
        );
        let mut counts = (0usize, 0usize);
        for g in &data.basis.generators {
            let dgm = g.diagram();
            if !dgm.has_internal_edge() {
                continue;
            }
            let comps: Vec<usize> = dgm
                .legs()
                .iter()
                .filter_map(|c| model.component_index(c))
                .sorted()
                .dedup()
                .collect();
            if class_rank(model, &comps) == model.b1 {
                continue;
            }
            let zero = p.is_zero(&DiagramVector::from_canonical(g))?;
            let inst = if dgm.leg_count() == 0 {
                counts.0 += 1;
                &mut legless
            } else {
                counts.1 += 1;
                &mut sublink
            };
            if !zero {
                inst.status = Status::Fail;
                if inst.witnesses.len() < MAX_WITNESSES {
                    inst.witnesses.push(g.key().to_string());
                }
            }
        }
        legless.note = Some(format!("{} generators", counts.0));
        sublink.note = Some(format!("{} generators", counts.1));
        r.instances.push(legless);
        r.instances.push(sublink);
    }
    Ok(r)
}

/// A graph whose first leg is colored `x` and whose other legs carry the
/// colors `y_1, ..., y_r`.
#[derive(Clone, Debug)]
pub struct LevineFamily {
    pub name: String,
    pub graph: Diagram,
    pub x: Color,
}

impl LevineFamily {
    pub fn r(&self) -> usize {
        self.graph.leg_count() - 1
    }

    /// Sum over all ways of recoloring `k` of the `y` legs by `x`.
    pub fn replaced(&self, k: usize) -> DiagramVector {
        let mut out = DiagramVector::zero(self.graph.degree());
        for subset in (1..=self.r()).combinations(k) {
            let mut g = self.graph.clone();
            for l in subset {
                g = g.with_leg(l, self.x.clone());
            }
            out.add_diagram(&g, &BigInt::one());
        }
        out
    }

    /// The graph with `y_i` legs recolored `y_i + n·x`, expanded.
    pub fn deformed(&self, n: i64) -> DiagramVector {
        let mut g = self.graph.to_colored();
        for l in 1..=self.r() {
            let y = self.graph.legs()[l].clone();
            let label =
                LegLabel::from_terms([(y, BigInt::one()), (self.x.clone(), BigInt::from(n))])
                    .expect("x differs from every y");
            g = g.with_leg(l, label);
        }
        expand(&g)
    }
}

/// The triangle `(x, y, y)` and the H-graph `(x, y, y, y)`.
pub fn levine_families(x: &Color, y: &Color) -> Vec<LevineFamily> {
    vec![
        LevineFamily {
            name: format!("triangle({x},{y},{y})"),
            graph: shapes::triangle([x.clone(), y.clone(), y.clone()]),
            x: x.clone(),
        },
        LevineFamily {
            name: format!("H({x},{y},{y},{y})"),
            graph: shapes::h_graph([x.clone(), y.clone(), y.clone(), y.clone()]),
            x: x.clone(),
        },
    ]
}

/// `G^(k) = 0` in `A°(b)` over `Q` for every `k`, and `G(n) = Σ n^k G^(k)`.
pub fn check_levine(
    model: &ManifoldModel,
    label: &str,
    family: &LevineFamily,
    opts: &EnumerationOptions,
) -> Result<CorollaryReport> {
    let d = family.graph.degree();
    let mut r = CorollaryReport::new("levine", &[d]);
    let p = present_group(Group::Ao, d, model, Ring::Q, opts)?;
    let parts: Vec<DiagramVector> = (0..=family.r()).map(|k| family.replaced(k)).collect();
    for (k, v) in parts.iter().enumerate() {
        let mut i = Instance::new(
            label,
            Some(d),
            format!("{} G^({k}) = 0", family.name),
            p.is_zero(v)?,
        );
        if i.status == Status::Fail {
            i.witnesses.push(v.to_string().replace('\n', " | "));
        }
        r.instances.push(i);
    }
    for n in 0..=3i64 {
        let mut rhs = DiagramVector::zero(d);
        for (k, v) in parts.iter().enumerate() {
            rhs.add_scaled(v, &BigInt::from(n).pow(k as u32));
        }
        let ok = family.deformed(n) == rhs;
        r.instances.push(Instance::new(
            label,
            Some(d),
            format!("{} G({n}) = sum n^k G^(k)", family.name),
            ok,
        ));
    }
    Ok(r)
}

/// Rational ranks of `A(b)` for a rational basis `b` agree with those of
/// `A°(b')` for a spanning `b'` of the same manifold.
pub fn check_rational_invariance(
    basis_model: &ManifoldModel,
    spanning_model: &ManifoldModel,
    label: &str,
    degrees: &[usize],
    opts: &EnumerationOptions,
) -> Result<CorollaryReport> {
    let mut r = CorollaryReport::new("rational_invariance", degrees);
    if !is_rational_basis(basis_model) {
        r.instances.push(Instance::not_applicable(
            label,
            "guard",
            "b is not a rational basis of H_1",
        ));
        return Ok(r);
    }
    if basis_model.b1 != spanning_model.b1 {
        r.instances.push(Instance::not_applicable(
            label,
            "guard",
            "models have different b1",
        ));
        return Ok(r);
    }
    for &d in degrees {
        let a = present_group(Group::A, d, basis_model, Ring::Q, opts)?;
        let ao = present_group(Group::Ao, d, spanning_model, Ring::Q, opts)?;
        let mut i = Instance::new(
            label,
            Some(d),
            "rank A(b) = rank Ao(b')",
            a.free_rank() == ao.free_rank(),
        );
        i.note = Some(format!("{} vs {}", a.free_rank(), ao.free_rank()));
        r.instances.push(i);
    }
    Ok(r)
}

/// A rational basis sublink of a spanning model, as a torsion-free model.
pub fn rational_basis_of(model: &ManifoldModel) -> Option<ManifoldModel> {
    let mut chosen: Vec<usize> = Vec::new();
    for i in 0..model.component_count() {
        let mut trial = chosen.clone();
        trial.push(i);
        if class_rank(model, &trial) == trial.len() {
            chosen = trial;
        }
    }
    if chosen.len() != model.b1 {
        return None;
    }
    let names: Vec<String> = chosen
        .iter()
        .map(|&i| model.components[i].name.to_string())
        .collect();
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    model.rational_restriction(&refs).ok()
}

/// A primitive `x` and an independent `y` among the components, if any.
fn levine_colors(model: &ManifoldModel) -> Option<(Color, Color)> {
    let primitive = |i: usize| {
        let c = &model.components[i];
        let g = c
            .class_free
            .iter()
            .fold(BigInt::zero(), |acc, x| num_integer::Integer::gcd(&acc, x));
        g.is_one() && c.class_torsion.iter().all(|t| t.is_zero())
    };
    let m = model.component_count();
    (0..m)
        .filter(|&i| primitive(i))
        .flat_map(|i| (0..m).filter(move |&j| j != i).map(move |j| (i, j)))
        .find(|&(i, j)| class_rank(model, &[i, j]) == 2)
        .map(|(i, j)| {
            (
                model.components[i].name.clone(),
                model.components[j].name.clone(),
            )
        })
}

/// Every check that applies to one model, degrees `0..=degree_max`.
pub fn corollary_suite(
    model: &ManifoldModel,
    label: &str,
    degree_max: usize,
    ring: Ring,
    opts: &EnumerationOptions,
) -> Result<Vec<CorollaryReport>> {
    let degrees: Vec<usize> = (0..=degree_max).collect();
    let mut out = vec![
        check_basis_obr_vacuous(model, label, &degrees, opts)?,
        check_br_vacuous(model, label, &degrees, ring, opts)?,
        check_legless_vanishing(model, label, &degrees, opts)?,
    ];
    match levine_colors(model) {
        Some((x, y)) => {
            for f in levine_families(&x, &y) {
                if f.graph.degree() <= degree_max {
                    out.push(check_levine(model, label, &f, opts)?);
                }
            }
        }
        None => {
            let mut r = CorollaryReport::new("levine", &[]);
            r.instances.push(Instance::not_applicable(
                label,
                "guard",
                "no primitive x with an independent y",
            ));
            out.push(r);
        }
    }
    match rational_basis_of(model) {
        Some(b) => out.push(check_rational_invariance(&b, model, label, &degrees, opts)?),
        None => {
            let mut r = CorollaryReport::new("rational_invariance", &degrees);
            r.instances.push(Instance::not_applicable(
                label,
                "guard",
                "no rational basis sublink",
            ));
            out.push(r);
        }
    }
    Ok(out)
}

/// `closed(b1,[n...])`, the label used for closed rational models.
pub fn closed_label(b1: usize, torsion: &[BigInt]) -> String {
    format!("closed({b1};[{}])", torsion.iter().join(","))
}

/// The closed rational model together with its label.
pub fn labeled_closed_model(b1: usize, torsion: &[BigInt]) -> (String, ManifoldModel) {
    (
        closed_label(b1, torsion),
        closed_rational_model(b1, torsion),
    )
}

/// Enumerated legless generators, for callers that want to inspect them.
pub fn legless_generators(degree: usize, opts: &EnumerationOptions) -> Result<Vec<DiagramVector>> {
    Ok(enumerate_with(degree, &[], opts)?
        .generators
        .iter()
        .map(DiagramVector::from_canonical)
        .collect())
}

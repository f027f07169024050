//! The three moves on spanning links and the maps they induce.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::color::{Color, LegLabel};
use crate::enumerate::EnumerationOptions;
use crate::error::{CloverError, Result};
use crate::graph::Diagram;
use crate::groups::{group_data, Group};
use crate::linalg::IntegerMatrix;
use crate::model::{LinkComponent, ManifoldModel, ObrSurface};
use crate::quotient::{Presentation, Ring};
use crate::vector::{substitute, DiagramVector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Move {
    /// Band-sum component `i` with `sign·j`.
    M1 { i: String, j: String, sign: i8 },
    /// Change the framing of `i` by `eps`.
    M2 { i: String, eps: i8 },
    /// Insert a zero-class, zero-framed component bounding a surface with
    /// the given intersection numbers.
    M3Insert {
        name: String,
        pairing: Vec<(String, BigInt)>,
    },
    /// Delete such a component; the pairing defaults to the model's surface
    /// for that component.
    M3Delete {
        name: String,
        pairing: Option<Vec<(String, BigInt)>>,
    },
}

fn sign_text(s: i8) -> &'static str {
    if s > 0 {
        "+1"
    } else {
        "-1"
    }
}

fn pairing_text(p: &[(String, BigInt)]) -> String {
    p.iter()
        .map(|(n, k)| format!("{n}={k}"))
        .collect::<Vec<_>>()
        .join(",")
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::M1 { i, j, sign } => write!(f, "m1:{i}:{j}:{}", sign_text(*sign)),
            Move::M2 { i, eps } => write!(f, "m2:{i}:{}", sign_text(*eps)),
            Move::M3Insert { name, pairing } if pairing.is_empty() => write!(f, "m3:insert:{name}"),
            Move::M3Insert { name, pairing } => {
                write!(f, "m3:insert:{name}:{}", pairing_text(pairing))
            }
            Move::M3Delete {
                name,
                pairing: None,
            } => write!(f, "m3:delete:{name}"),
            Move::M3Delete {
                name,
                pairing: Some(p),
            } => write!(f, "m3:delete:{name}:{}", pairing_text(p)),
        }
    }
}

fn parse_sign(s: &str) -> Result<i8> {
    match s {
        "+1" | "1" | "+" => Ok(1),
        "-1" | "-" => Ok(-1),
        _ => Err(CloverError::InvalidMove(format!(
            "sign must be +1 or -1, got `{s}`"
        ))),
    }
}

fn parse_pairing(s: &str) -> Result<Vec<(String, BigInt)>> {
    s.split(',')
        .filter(|t| !t.is_empty())
        .map(|t| {
            let (n, k) = t.split_once('=').ok_or_else(|| {
                CloverError::InvalidMove(format!("expected name=value, got `{t}`"))
            })?;
            let k: BigInt = k
                .parse()
                .map_err(|_| CloverError::InvalidMove(format!("bad integer in `{t}`")))?;
            Ok((n.to_string(), k))
        })
        .collect()
}

impl FromStr for Move {
    type Err = CloverError;

    /// `m1:i:j:±1`, `m2:i:±1`, `m3:insert:name[:c=k,...]`, `m3:delete:name[:c=k,...]`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let bad = || CloverError::InvalidMove(format!("cannot parse move `{s}`"));
        match parts.as_slice() {
            ["m1", i, j, sign] => Ok(Move::M1 {
                i: i.to_string(),
                j: j.to_string(),
                sign: parse_sign(sign)?,
            }),
            ["m2", i, eps] => Ok(Move::M2 {
                i: i.to_string(),
                eps: parse_sign(eps)?,
            }),
            ["m3", "insert", name] => Ok(Move::M3Insert {
                name: name.to_string(),
                pairing: Vec::new(),
            }),
            ["m3", "insert", name, p] => Ok(Move::M3Insert {
                name: name.to_string(),
                pairing: parse_pairing(p)?,
            }),
            ["m3", "delete", name] => Ok(Move::M3Delete {
                name: name.to_string(),
                pairing: None,
            }),
            ["m3", "delete", name, p] => Ok(Move::M3Delete {
                name: name.to_string(),
                pairing: Some(parse_pairing(p)?),
            }),
            _ => Err(bad()),
        }
    }
}

fn color(name: &str) -> Result<Color> {
    Color::new(name).map_err(|_| CloverError::InvalidMove(format!("bad component name `{name}`")))
}

/// Name of the band sum of `i` with `sign·j`.
pub fn band_sum_name(i: &str, j: &str, sign: i8) -> String {
    if sign > 0 {
        format!("{i}#{j}")
    } else {
        format!("{i}#~{j}")
    }
}

fn resolve_pairing(model: &ManifoldModel, p: &[(String, BigInt)]) -> Result<Vec<BigInt>> {
    let mut v = vec![BigInt::zero(); model.component_count()];
    for (n, k) in p {
        v[model.component_by_name(n)?] = k.clone();
    }
    Ok(v)
}

fn unit_vector(len: usize, i: usize) -> Vec<BigInt> {
    (0..len)
        .map(|j| {
            if i == j {
                BigInt::one()
            } else {
                BigInt::zero()
            }
        })
        .collect()
}

/// The pairing vector (over the source components) used to delete `name`.
fn delete_pairing(
    model: &ManifoldModel,
    name: &str,
    given: &Option<Vec<(String, BigInt)>>,
) -> Result<Vec<BigInt>> {
    let k = model.component_by_name(name)?;
    match given {
        Some(p) => resolve_pairing(model, p),
        None => {
            let e = unit_vector(model.component_count(), k);
            model
                .obr_surfaces
                .iter()
                .find(|s| s.kernel == e)
                .map(|s| s.pairing.clone())
                .ok_or_else(|| {
                    CloverError::InvalidMove(format!("missing pairing vector for `{name}`"))
                })
        }
    }
}

pub fn apply_move_to_model(m: &ManifoldModel, mv: &Move) -> Result<ManifoldModel> {
    let mut out = m.clone();
    match mv {
        Move::M1 { i, j, sign } => {
            let (ii, jj) = (m.component_by_name(i)?, m.component_by_name(j)?);
            if ii == jj {
                return Err(CloverError::InvalidMove(
                    "m1 needs two distinct components".into(),
                ));
            }
            let s = BigInt::from(*sign);
            let name = color(&band_sum_name(i, j, *sign))?;
            let cj = m.components[jj].clone();
            let c = &mut out.components[ii];
            c.name = name;
            for (x, y) in c.class_free.iter_mut().zip(&cj.class_free) {
                *x += &s * y;
            }
            for ((x, y), n) in c
                .class_torsion
                .iter_mut()
                .zip(&cj.class_torsion)
                .zip(&m.torsion)
            {
                *x = (&*x + &s * y).mod_floor(n);
            }
            for h in out.h2.iter_mut() {
                let pj = h.pairing[jj].clone();
                h.pairing[ii] += &s * pj;
            }
            for surf in out.obr_surfaces.iter_mut() {
                let ai = surf.kernel[ii].clone();
                surf.kernel[jj] -= &s * ai;
                let pj = surf.pairing[jj].clone();
                surf.pairing[ii] += &s * pj;
            }
        }
        Move::M2 { i, eps } => {
            let ii = m.component_by_name(i)?;
            let e = BigInt::from(*eps);
            out.components[ii].framing += &e;
            for surf in out.obr_surfaces.iter_mut() {
                let ai = surf.kernel[ii].clone();
                surf.pairing[ii] += &e * ai;
            }
        }
        Move::M3Insert { name, pairing } => {
            if m.component_by_name(name).is_ok() {
                return Err(CloverError::InvalidMove(format!(
                    "component `{name}` already exists"
                )));
            }
            let mut p0 = resolve_pairing(m, pairing)?;
            out.components.push(LinkComponent {
                name: color(name)?,
                class_free: vec![BigInt::zero(); m.b1],
                class_torsion: vec![BigInt::zero(); m.torsion.len()],
                framing: BigInt::zero(),
            });
            for h in out.h2.iter_mut() {
                h.pairing.push(BigInt::zero());
            }
            // a surface bounded by a·b meets the new component in lk(a·b, b0) = a·p0
            for surf in out.obr_surfaces.iter_mut() {
                let lk: BigInt = surf.kernel.iter().zip(&p0).map(|(a, p)| a * p).sum();
                surf.kernel.push(BigInt::zero());
                surf.pairing.push(lk);
            }
            p0.push(BigInt::zero());
            let n = out.components.len();
            out.obr_surfaces.push(ObrSurface {
                kernel: unit_vector(n, n - 1),
                pairing: p0,
            });
        }
        Move::M3Delete { name, pairing } => {
            let k = m.component_by_name(name)?;
            let c = &m.components[k];
            if c.class_free
                .iter()
                .chain(&c.class_torsion)
                .any(|x| !x.is_zero())
            {
                return Err(CloverError::InvalidMove(format!(
                    "component `{name}` is not nullhomologous"
                )));
            }
            if !c.framing.is_zero() {
                return Err(CloverError::InvalidMove(format!(
                    "component `{name}` is not zero-framed"
                )));
            }
            let p0 = delete_pairing(m, name, pairing)?;
            out.components.remove(k);
            for h in out.h2.iter_mut() {
                h.pairing.remove(k);
            }
            let mut surfaces = Vec::new();
            for s in &m.obr_surfaces {
                let a0 = s.kernel[k].clone();
                let mut kernel = s.kernel.clone();
                kernel.remove(k);
                if kernel.iter().all(|x| x.is_zero()) {
                    continue;
                }
                let mut p: Vec<BigInt> = s
                    .pairing
                    .iter()
                    .zip(&p0)
                    .map(|(x, y)| x - &a0 * y)
                    .collect();
                p.remove(k);
                surfaces.push(ObrSurface { kernel, pairing: p });
            }
            out.obr_surfaces = surfaces;
        }
    }
    out.validate()?;
    Ok(out)
}

fn map_vector(
    v: &DiagramVector,
    f: impl Fn(&Diagram) -> Result<DiagramVector> + Sync,
) -> Result<DiagramVector> {
    let parts = v
        .iter()
        .collect::<Vec<_>>()
        .par_iter()
        .map(|(g, k)| Ok(f(g.diagram())?.scaled(k)))
        .collect::<Result<Vec<_>>>()?;
    let mut out = DiagramVector::zero(v.degree());
    for p in parts {
        out.add_scaled(&p, &BigInt::one());
    }
    Ok(out)
}

/// Forward M1: every `i` leg becomes `i#j − sign·j`.
pub fn apply_m1(v: &DiagramVector, i: &Color, j: &Color, sign: i8) -> Result<DiagramVector> {
    let new = color(&band_sum_name(i.name(), j.name(), sign))?;
    let label = LegLabel::from_terms([(new, BigInt::one()), (j.clone(), BigInt::from(-sign))])?;
    Ok(substitute(v, i, &label))
}

/// Inverse M1: every `i#j` leg becomes `i + sign·j`.
pub fn apply_m1_inverse(
    v: &DiagramVector,
    i: &Color,
    j: &Color,
    sign: i8,
) -> Result<DiagramVector> {
    let new = color(&band_sum_name(i.name(), j.name(), sign))?;
    let label =
        LegLabel::from_terms([(i.clone(), BigInt::one()), (j.clone(), BigInt::from(sign))])?;
    Ok(substitute(v, &new, &label))
}

fn matchings(items: &[usize], acc: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
    out.push(acc.clone());
    // extend with pairs whose first element exceeds every first element used so far
    let start = acc
        .last()
        .map_or(0, |&(a, _)| items.iter().position(|&x| x == a).unwrap() + 1);
    for p in start..items.len() {
        let a = items[p];
        if acc.iter().any(|&(x, y)| x == a || y == a) {
            continue;
        }
        for &b in &items[p + 1..] {
            if acc.iter().any(|&(x, y)| x == b || y == b) {
                continue;
            }
            acc.push((a, b));
            matchings(items, acc, out);
            acc.pop();
        }
    }
}

/// All sets of disjoint pairs drawn from `items`, including the empty set.
pub fn partial_matchings(items: &[usize]) -> Vec<Vec<(usize, usize)>> {
    let mut out = Vec::new();
    matchings(items, &mut Vec::new(), &mut out);
    out
}

/// `Σ_p eps^p Σ_{p disjoint pairs of i-legs} G_pairs`.
pub fn apply_m2(v: &DiagramVector, i: &Color, eps: i8) -> Result<DiagramVector> {
    apply_m2_with(v, i, |p| BigInt::from(eps).pow(p as u32))
}

/// M2 with an arbitrary weight per number of glued pairs.
pub fn apply_m2_with(
    v: &DiagramVector,
    i: &Color,
    weight: impl Fn(usize) -> BigInt + Sync,
) -> Result<DiagramVector> {
    map_vector(v, |d| {
        let legs: Vec<usize> = (0..d.leg_count()).filter(|&l| &d.legs()[l] == i).collect();
        let mut out = DiagramVector::zero(d.degree());
        for m in partial_matchings(&legs) {
            out.add_diagram(&d.glue_pairs(&m), &weight(m.len()));
        }
        Ok(out)
    })
}

/// Removes every `b0` leg, leftmost first, via `G ↦ −Σ_l p(c_l)·G_l`.
pub fn apply_m3_delete(
    v: &DiagramVector,
    b0: &Color,
    pairing: &(dyn Fn(&Color) -> Result<BigInt> + Sync),
) -> Result<DiagramVector> {
    fn elim(
        d: &Diagram,
        b0: &Color,
        pairing: &(dyn Fn(&Color) -> Result<BigInt> + Sync),
    ) -> Result<DiagramVector> {
        let Some(l0) = d.legs().iter().position(|c| c == b0) else {
            return Ok(DiagramVector::from_diagram(d));
        };
        let mut out = DiagramVector::zero(d.degree());
        for l in 0..d.leg_count() {
            if l == l0 {
                continue;
            }
            let c = &d.legs()[l];
            let w = if c == b0 { BigInt::zero() } else { pairing(c)? };
            if w.is_zero() {
                continue;
            }
            let glued = d.glue_legs(l0, l)?;
            out.add_scaled(&elim(&glued, b0, pairing)?, &-w);
        }
        Ok(out)
    }
    map_vector(v, |d| elim(d, b0, pairing))
}

type VectorMap<'a> = Box<dyn Fn(&DiagramVector) -> Result<DiagramVector> + Sync + 'a>;

/// The forward and inverse maps of a move from `source`; also returns the
/// target model.
pub fn move_maps<'a>(
    source: &'a ManifoldModel,
    mv: &'a Move,
) -> Result<(ManifoldModel, VectorMap<'a>, VectorMap<'a>)> {
    let target = apply_move_to_model(source, mv)?;
    match mv {
        Move::M1 { i, j, sign } => {
            let (ci, cj, s) = (color(i)?, color(j)?, *sign);
            let (ci2, cj2) = (ci.clone(), cj.clone());
            Ok((
                target,
                Box::new(move |v| apply_m1(v, &ci, &cj, s)),
                Box::new(move |v| apply_m1_inverse(v, &ci2, &cj2, s)),
            ))
        }
        Move::M2 { i, eps } => {
            let (ci, e) = (color(i)?, *eps);
            let ci2 = ci.clone();
            Ok((
                target,
                Box::new(move |v| apply_m2(v, &ci, e)),
                Box::new(move |v| apply_m2(v, &ci2, -e)),
            ))
        }
        Move::M3Insert { name, .. } => {
            let b0 = color(name)?;
            let k = target.component_by_name(name)?;
            let p0 = delete_pairing(&target, name, &None)?;
            let names = target.alphabet();
            let lookup = move |c: &Color| -> Result<BigInt> {
                let idx = names
                    .iter()
                    .position(|n| n == c)
                    .ok_or_else(|| CloverError::UnknownColor(c.to_string()))?;
                Ok(if idx == k {
                    BigInt::zero()
                } else {
                    p0[idx].clone()
                })
            };
            Ok((
                target,
                Box::new(|v| Ok(v.clone())),
                Box::new(move |v| apply_m3_delete(v, &b0, &lookup)),
            ))
        }
        Move::M3Delete { name, pairing } => {
            let b0 = color(name)?;
            let k = source.component_by_name(name)?;
            let p0 = delete_pairing(source, name, pairing)?;
            let names = source.alphabet();
            let lookup = move |c: &Color| -> Result<BigInt> {
                let idx = names
                    .iter()
                    .position(|n| n == c)
                    .ok_or_else(|| CloverError::UnknownColor(c.to_string()))?;
                Ok(if idx == k {
                    BigInt::zero()
                } else {
                    p0[idx].clone()
                })
            };
            Ok((
                target,
                Box::new(move |v| apply_m3_delete(v, &b0, &lookup)),
                Box::new(|v| Ok(v.clone())),
            ))
        }
    }
}

/// Outcome of one named check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    /// Generators or relations that failed, in key order (truncated).
    pub witnesses: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct MoveReport {
    pub mv: String,
    pub degree: usize,
    pub ring: Ring,
    pub source_rank: (usize, Vec<BigInt>),
    pub target_rank: (usize, Vec<BigInt>),
    pub checks: Vec<CheckOutcome>,
}

impl MoveReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn torsion_text(t: &[BigInt]) -> String {
    let parts: Vec<String> = t.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(","))
}

impl fmt::Display for MoveReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "move {} degree={} ring={}",
            self.mv, self.degree, self.ring
        )?;
        writeln!(
            f,
            "source free_rank={} torsion={}",
            self.source_rank.0,
            torsion_text(&self.source_rank.1)
        )?;
        writeln!(
            f,
            "target free_rank={} torsion={}",
            self.target_rank.0,
            torsion_text(&self.target_rank.1)
        )?;
        for c in &self.checks {
            writeln!(
                f,
                "check {} {}",
                c.name,
                if c.passed { "pass" } else { "FAIL" }
            )?;
            for w in &c.witnesses {
                writeln!(f, "  witness {w}")?;
            }
        }
        write!(f, "result {}", if self.passed() { "pass" } else { "FAIL" })
    }
}

const MAX_WITNESSES: usize = 5;

fn check<T: fmt::Display + Sync>(
    name: &'static str,
    items: &[T],
    ok: impl Fn(&T) -> Result<bool> + Sync,
) -> Result<CheckOutcome> {
    let results = items
        .par_iter()
        .map(|x| ok(x).map(|b| (b, x)))
        .collect::<Result<Vec<_>>>()?;
    let witnesses: Vec<String> = results
        .iter()
        .filter(|(b, _)| !b)
        .take(MAX_WITNESSES)
        .map(|(_, x)| x.to_string().replace('\n', " | "))
        .collect();
    Ok(CheckOutcome {
        name,
        passed: results.iter().all(|(b, _)| *b),
        witnesses,
    })
}

pub fn verify_isomorphism(
    mv: &Move,
    degree: usize,
    source: &ManifoldModel,
    ring: Ring,
    opts: &EnumerationOptions,
) -> Result<MoveReport> {
    let (target, fwd, inv) = move_maps(source, mv)?;
    let mut report = verify_with_maps(
        &mv.to_string(),
        degree,
        source,
        &target,
        &*fwd,
        &*inv,
        ring,
        opts,
    )?;
    if matches!(mv, Move::M1 { .. } | Move::M2 { .. }) {
        let basis = group_data(Group::B, degree, source, opts)?.basis;
        let gens: Vec<DiagramVector> = basis.all().map(DiagramVector::from_canonical).collect();
        report.checks.push(check("raw_composition", &gens, |g| {
            Ok(&inv(&fwd(g)?)? == g)
        })?);
    }
    Ok(report)
}

/// Runs checks (a)–(c) for explicit forward/inverse maps.
#[allow(clippy::too_many_arguments)]
pub fn verify_with_maps(
    label: &str,
    degree: usize,
    source: &ManifoldModel,
    target: &ManifoldModel,
    forward: &(dyn Fn(&DiagramVector) -> Result<DiagramVector> + Sync),
    inverse: &(dyn Fn(&DiagramVector) -> Result<DiagramVector> + Sync),
    ring: Ring,
    opts: &EnumerationOptions,
) -> Result<MoveReport> {
    let sd = group_data(Group::Ao, degree, source, opts)?;
    let td = group_data(Group::Ao, degree, target, opts)?;
    let sp = Presentation::new(&sd.basis, &sd.relations, ring)?;
    let tp = Presentation::new(&td.basis, &td.relations, ring)?;
    let two = BigInt::from(2);
    let mut s_rel = sd.relations.clone();
    let mut t_rel = td.relations.clone();
    if ring == Ring::Z {
        s_rel.extend(
            sd.basis
                .degenerates
                .iter()
                .map(|g| DiagramVector::from_canonical(g).scaled(&two)),
        );
        t_rel.extend(
            td.basis
                .degenerates
                .iter()
                .map(|g| DiagramVector::from_canonical(g).scaled(&two)),
        );
    }
    let s_gen: Vec<DiagramVector> = sd.basis.all().map(DiagramVector::from_canonical).collect();
    let t_gen: Vec<DiagramVector> = td.basis.all().map(DiagramVector::from_canonical).collect();

    let checks = vec![
        check("relations_forward", &s_rel, |r| tp.is_zero(&forward(r)?))?,
        check("relations_inverse", &t_rel, |r| sp.is_zero(&inverse(r)?))?,
        check("roundtrip_source", &s_gen, |g| {
            sp.is_zero(&inverse(&forward(g)?)?.sub(g))
        })?,
        check("roundtrip_target", &t_gen, |g| {
            tp.is_zero(&forward(&inverse(g)?)?.sub(g))
        })?,
        CheckOutcome {
            name: "invariants",
            passed: sp.free_rank() == tp.free_rank() && sp.torsion() == tp.torsion(),
            witnesses: Vec::new(),
        },
    ];
    Ok(MoveReport {
        mv: label.to_string(),
        degree,
        ring,
        source_rank: (sp.free_rank(), sp.torsion().to_vec()),
        target_rank: (tp.free_rank(), tp.torsion().to_vec()),
        checks,
    })
}

/// Matrix of the forward map from the source's integral `A°` free
/// coordinates to the target's.
pub fn induced_matrix(
    mv: &Move,
    degree: usize,
    source: &ManifoldModel,
    opts: &EnumerationOptions,
) -> Result<IntegerMatrix> {
    let (target, fwd, _) = move_maps(source, mv)?;
    let sd = group_data(Group::Ao, degree, source, opts)?;
    let td = group_data(Group::Ao, degree, &target, opts)?;
    let sp = Presentation::new(&sd.basis, &sd.relations, Ring::Z)?;
    let tp = Presentation::new(&td.basis, &td.relations, Ring::Z)?;
    let lifts = sp.free_lifts();
    let mut m = IntegerMatrix::zeros(tp.free_rank(), lifts.len());
    for (col, l) in lifts.iter().enumerate() {
        let c = tp.reduce(&fwd(l)?)?;
        for (row, x) in c.free.iter().enumerate() {
            m.set(row, col, x.to_integer());
        }
    }
    Ok(m)
}

/// `Σ_{a+b=p} (−1)^b C(p,a)`.
pub fn binomial_cancellation(p: u32) -> BigInt {
    let mut c = BigInt::one();
    let mut sum = BigInt::zero();
    for b in 0..=p {
        let term = if b % 2 == 0 { c.clone() } else { -c.clone() };
        sum += term;
        c = c * BigInt::from(p - b) / BigInt::from(b + 1);
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::color::colors;
    use crate::graph::shapes::{h_graph, y_graph};
    use crate::model::closed_rational_model;
    use crate::vector::expand;

    fn two_component() -> ManifoldModel {
        closed_rational_model(2, &[])
    }

    #[test]
    fn parse_and_print() {
        for s in [
            "m1:x:y:+1",
            "m1:x:y:-1",
            "m2:x:+1",
            "m3:insert:b",
            "m3:insert:b:x=1,y=-2",
            "m3:delete:b",
        ] {
            assert_eq!(s.parse::<Move>().unwrap().to_string(), s);
        }
        assert!("m4:x".parse::<Move>().is_err());
        assert!("m2:x:2".parse::<Move>().is_err());
    }

    #[test]
    fn model_moves_round_trip() {
        let m = two_component();
        let up = "m2:x:+1".parse::<Move>().unwrap();
        let down = "m2:x:-1".parse::<Move>().unwrap();
        let mut t = apply_move_to_model(&m, &up).unwrap();
        t = apply_move_to_model(&t, &up).unwrap();
        t = apply_move_to_model(&t, &down).unwrap();
        t = apply_move_to_model(&t, &down).unwrap();
        assert_eq!(t, m);

        let t = apply_move_to_model(&m, &"m3:insert:b:x=1".parse().unwrap()).unwrap();
        assert_eq!(t.components.len(), 3);
        let back = apply_move_to_model(&t, &"m3:delete:b".parse().unwrap()).unwrap();
        assert_eq!(back, m);

        let t = apply_move_to_model(&m, &"m1:x:y:+1".parse().unwrap()).unwrap();
        assert_eq!(t.components[0].name.name(), "x#y");
        assert_eq!(
            t.components[0].class_free,
            vec![BigInt::from(1), BigInt::from(1)]
        );
        assert!(apply_move_to_model(&m, &"m1:x:x:+1".parse().unwrap()).is_err());
        assert!(apply_move_to_model(&m, &"m3:delete:x".parse().unwrap()).is_err());
    }

    #[test]
    fn m1_expansion_of_y_iij() {
        let c = colors(&["x", "y", "x#y"]);
        let g = y_graph([c[0].clone(), c[0].clone(), c[1].clone()]);
        let v = apply_m1(&DiagramVector::from_diagram(&g), &c[0], &c[1], 1).unwrap();
        let l: LegLabel = "x#y-y".parse().unwrap();
        let want = expand(&g.to_colored().with_leg(0, l.clone()).with_leg(1, l));
        assert_eq!(v, want);
        let back = apply_m1_inverse(&v, &c[0], &c[1], 1).unwrap();
        assert_eq!(back, DiagramVector::from_diagram(&g));
    }

    #[test]
    fn m2_on_h_graph() {
        let c = colors(&["x", "y"]);
        let g = h_graph([c[0].clone(), c[0].clone(), c[1].clone(), c[1].clone()]);
        let v = apply_m2(&DiagramVector::from_diagram(&g), &c[0], -1).unwrap();
        let mut want = DiagramVector::from_diagram(&g);
        want.add_diagram(&g.glue_legs(0, 1).unwrap(), &BigInt::from(-1));
        assert_eq!(v, want);
        let back = apply_m2(&v, &c[0], 1).unwrap();
        assert_eq!(back, DiagramVector::from_diagram(&g));
    }

    #[test]
    fn matchings_are_counted() {
        // sum over p of (n choose 2p)(2p-1)!! : telephone numbers
        let counts: Vec<usize> = (0..7)
            .map(|n| partial_matchings(&(0..n).collect::<Vec<_>>()).len())
            .collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 10, 26, 76]);
    }

    #[test]
    fn binomial_sums_vanish() {
        assert_eq!(binomial_cancellation(0), BigInt::one());
        for p in 1..=12 {
            assert!(binomial_cancellation(p).is_zero());
        }
    }

    #[test]
    fn m3_delete_with_zero_pairing_kills_b0_legs() {
        let c = colors(&["x", "b"]);
        let g = y_graph([c[1].clone(), c[0].clone(), c[0].clone()]);
        let zero = |_: &Color| Ok(BigInt::zero());
        let v = apply_m3_delete(&DiagramVector::from_diagram(&g), &c[1], &zero).unwrap();
        assert!(v.is_zero());
        let h = y_graph([c[0].clone(), c[0].clone(), c[0].clone()]);
        let v = apply_m3_delete(&DiagramVector::from_diagram(&h), &c[1], &zero).unwrap();
        assert_eq!(v, DiagramVector::from_diagram(&h));
    }

    #[test]
    fn m2_verifies_at_degree_two() {
        let m = closed_rational_model(1, &[]);
        let r = verify_isomorphism(
            &"m2:x:+1".parse().unwrap(),
            2,
            &m,
            Ring::Q,
            &EnumerationOptions::default(),
        )
        .unwrap();
        assert!(r.passed(), "{r}");
    }
}

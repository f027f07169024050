//! Rank tables and their text and `key=value` layouts.
//!
//! Text layout: one header line, then one row per (degree, group), columns
//! separated by single spaces; torsion is written `-` when trivial and as
//! a comma list otherwise. Machine layout: a first line
//! `format=rank-table version=1`, then one line per row of the form
//! `degree=D group=G ring=R rank=N torsion=a,b generators=N relations=N [time_ms=T]`.

use std::fmt::Write;
use std::time::Duration;

use itertools::Itertools;
use num_bigint::BigInt;

use crate::error::{CloverError, Result};
use crate::groups::{Group, Tower};
use crate::quotient::Ring;
use crate::verify::CorollaryReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Machine,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankRow {
    pub degree: usize,
    pub group: Group,
    pub ring: Ring,
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
    pub generator_count: usize,
    pub relation_count: usize,
    /// Milliseconds; `None` when timing is suppressed or absent.
    pub wall_ms: Option<u128>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RankTable {
    pub rows: Vec<RankRow>,
}

const HEADER: &str = "degree group ring rank torsion generators relations";
const MACHINE_HEADER: &str = "format=rank-table version=1";

fn wall(d: Duration) -> u128 {
    d.as_millis()
}

impl RankTable {
    pub fn from_towers(towers: &[Tower]) -> Self {
        let mut rows = Vec::new();
        for t in towers {
            for (g, p, time) in &t.entries {
                let q = p.quotient();
                rows.push(RankRow {
                    degree: t.degree,
                    group: *g,
                    ring: q.ring,
                    free_rank: q.free_rank,
                    torsion: q.torsion.clone(),
                    generator_count: q.generator_count,
                    relation_count: q.relation_count,
                    wall_ms: Some(wall(*time)),
                });
            }
        }
        rows.sort_by_key(|r| (r.degree, r.group));
        RankTable { rows }
    }

    pub fn get(&self, degree: usize, group: Group) -> Option<&RankRow> {
        self.rows
            .iter()
            .find(|r| r.degree == degree && r.group == group)
    }

    /// Degrees where `rank(Ao) <= rank(A) <= rank(B)` fails over `Q`.
    pub fn monotonicity_violations(&self) -> Vec<usize> {
        self.rows
            .iter()
            .map(|r| r.degree)
            .dedup()
            .filter(|&d| {
                let r = |g| {
                    self.get(d, g)
                        .filter(|r| r.ring == Ring::Q)
                        .map(|r| r.free_rank)
                };
                match (r(Group::Ao), r(Group::A), r(Group::B)) {
                    (Some(o), Some(a), Some(b)) => !(o <= a && a <= b),
                    _ => false,
                }
            })
            .collect()
    }

    pub fn emit(&self, format: Format, timing: bool) -> String {
        match format {
            Format::Text => self.to_text(timing),
            Format::Machine => self.to_machine(timing),
        }
    }

    pub fn to_text(&self, timing: bool) -> String {
        let mut out = String::from(HEADER);
        if timing {
            out.push_str(" time_ms");
        }
        out.push('\n');
        for r in &self.rows {
            let tors = if r.torsion.is_empty() {
                "-".to_string()
            } else {
                r.torsion.iter().join(",")
            };
            let _ = write!(
                out,
                "{} {} {} {} {} {} {}",
                r.degree, r.group, r.ring, r.free_rank, tors, r.generator_count, r.relation_count
            );
            if timing {
                let _ = write!(
                    out,
                    " {}",
                    r.wall_ms.map_or("-".to_string(), |t| t.to_string())
                );
            }
            out.push('\n');
        }
        out
    }

    pub fn to_machine(&self, timing: bool) -> String {
        let mut out = format!("{MACHINE_HEADER}\n");
        for r in &self.rows {
            let _ = write!(
                out,
                "degree={} group={} ring={} rank={} torsion={} generators={} relations={}",
                r.degree,
                r.group,
                r.ring,
                r.free_rank,
                r.torsion.iter().join(","),
                r.generator_count,
                r.relation_count
            );
            if let (true, Some(t)) = (timing, r.wall_ms) {
                let _ = write!(out, " time_ms={t}");
            }
            out.push('\n');
        }
        out
    }

    pub fn parse_machine(input: &str) -> Result<Self> {
        let mut lines = input.lines().enumerate();
        match lines.next() {
            Some((_, l)) if l.trim() == MACHINE_HEADER => {}
            _ => return Err(CloverError::parse(1, 1, "missing rank-table header")),
        }
        let mut rows = Vec::new();
        for (n, line) in lines {
            if line.trim().is_empty() {
                continue;
            }
            rows.push(parse_row(n + 1, line)?);
        }
        Ok(RankTable { rows })
    }
}

fn parse_row(line_no: usize, line: &str) -> Result<RankRow> {
    let mut fields = std::collections::BTreeMap::new();
    let mut col = 1;
    for tok in line.split(' ') {
        let (k, v) = tok.split_once('=').ok_or_else(|| {
            CloverError::parse(line_no, col, format!("expected key=value, found `{tok}`"))
        })?;
        fields.insert(k, (v, col));
        col += tok.len() + 1;
    }
    let get = |k: &str| {
        fields
            .get(k)
            .copied()
            .ok_or_else(|| CloverError::parse(line_no, 1, format!("missing field `{k}`")))
    };
    let num = |k: &str| -> Result<usize> {
        let (v, c) = get(k)?;
        v.parse()
            .map_err(|_| CloverError::parse(line_no, c, format!("bad number for `{k}`")))
    };
    let (g, gc) = get("group")?;
    let group = g
        .parse::<Group>()
        .map_err(|_| CloverError::parse(line_no, gc, format!("unknown group `{g}`")))?;
    let (r, rc) = get("ring")?;
    let ring = match r {
        "Z" => Ring::Z,
        "Q" => Ring::Q,
        _ => {
            return Err(CloverError::parse(
                line_no,
                rc,
                format!("unknown ring `{r}`"),
            ))
        }
    };
    let (t, tc) = get("torsion")?;
    let torsion = if t.is_empty() {
        Vec::new()
    } else {
        t.split(',')
            .map(|x| x.parse::<BigInt>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| CloverError::parse(line_no, tc, "bad torsion list"))?
    };
    let wall_ms = match fields.get("time_ms") {
        Some((v, c)) => Some(
            v.parse()
                .map_err(|_| CloverError::parse(line_no, *c, "bad time"))?,
        ),
        None => None,
    };
    Ok(RankRow {
        degree: num("degree")?,
        group,
        ring,
        free_rank: num("rank")?,
        torsion,
        generator_count: num("generators")?,
        relation_count: num("relations")?,
        wall_ms,
    })
}

/// Reports sorted by name, so the output does not depend on scheduling.
pub fn emit_reports(reports: &[CorollaryReport], format: Format) -> String {
    let mut sorted: Vec<&CorollaryReport> = reports.iter().collect();
    sorted.sort_by(|a, b| a.name.cmp(&b.name));
    let mut out = String::new();
    for r in sorted {
        match format {
            Format::Text => {
                out.push_str(&r.to_string());
                out.push('\n');
            }
            Format::Machine => out.push_str(&r.to_machine()),
        }
    }
    out
}

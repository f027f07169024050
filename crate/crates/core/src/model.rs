//! Homological data of a closed 3-manifold with a spanning link.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Number;

use crate::color::Color;
use crate::error::{CloverError, Result};
use crate::linalg::{hermite_normal_form, integer_left_kernel, IntegerMatrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkComponent {
    pub name: Color,
    pub class_free: Vec<BigInt>,
    pub class_torsion: Vec<BigInt>,
    pub framing: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct H2Generator {
    pub name: String,
    /// Intersection number with each link component, in component order.
    pub pairing: Vec<BigInt>,
}

/// A nullhomologous combination of components with the intersection numbers
/// of a surface it bounds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObrSurface {
    pub kernel: Vec<BigInt>,
    pub pairing: Vec<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ManifoldModel {
    pub b1: usize,
    pub torsion: Vec<BigInt>,
    pub components: Vec<LinkComponent>,
    pub h2: Vec<H2Generator>,
    pub obr_surfaces: Vec<ObrSurface>,
}

fn int(n: i64) -> BigInt {
    BigInt::from(n)
}

fn unit(len: usize, i: usize) -> Vec<BigInt> {
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

fn numbered(base: &str, count: usize, short: &[&str]) -> Vec<String> {
    if count <= short.len() {
        short[..count].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=count).map(|i| format!("{base}{i}")).collect()
    }
}

/// The model of a closed manifold with `H_1 = Z^b1 ⊕ ⊕ Z/n_i`, linked by one
/// component per generator and with dual surfaces `P[s][i] = δ_{si}`.
pub fn closed_rational_model(b1: usize, torsion: &[BigInt]) -> ManifoldModel {
    let t = torsion.len();
    let free_names = numbered("x", b1, &["x", "y", "z"]);
    let tors_names = numbered("t", t, &["t"]);
    let mut components = Vec::new();
    for (i, name) in free_names.iter().enumerate() {
        components.push(LinkComponent {
            name: Color::new(name).expect("valid name"),
            class_free: unit(b1, i),
            class_torsion: vec![BigInt::zero(); t],
            framing: BigInt::zero(),
        });
    }
    for (k, name) in tors_names.iter().enumerate() {
        components.push(LinkComponent {
            name: Color::new(name).expect("valid name"),
            class_free: vec![BigInt::zero(); b1],
            class_torsion: unit(t, k),
            framing: BigInt::zero(),
        });
    }
    let m = components.len();
    let h2 = numbered("S", b1, &["S"])
        .into_iter()
        .enumerate()
        .map(|(s, name)| H2Generator {
            name,
            pairing: unit(m, s),
        })
        .collect();
    let mut model = ManifoldModel {
        b1,
        torsion: torsion.to_vec(),
        components,
        h2,
        obr_surfaces: Vec::new(),
    };
    model.obr_surfaces = model.default_surfaces();
    model
}

impl ManifoldModel {
    pub fn alphabet(&self) -> Vec<Color> {
        self.components.iter().map(|c| c.name.clone()).collect()
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn component_index(&self, name: &Color) -> Option<usize> {
        self.components.iter().position(|c| &c.name == name)
    }

    pub fn component_by_name(&self, name: &str) -> Result<usize> {
        self.components
            .iter()
            .position(|c| c.name.name() == name)
            .ok_or_else(|| CloverError::UnknownColor(name.to_string()))
    }

    /// The `m × (b1 + #torsion)` class matrix.
    pub fn class_matrix(&self) -> IntegerMatrix {
        let cols = self.b1 + self.torsion.len();
        let mut a = IntegerMatrix::zeros(self.components.len(), cols);
        for (i, c) in self.components.iter().enumerate() {
            for (j, x) in c
                .class_free
                .iter()
                .chain(c.class_torsion.iter())
                .enumerate()
            {
                a.set(i, j, x.clone());
            }
        }
        a
    }

    fn stacked(&self) -> IntegerMatrix {
        let m = self.components.len();
        let cols = self.b1 + self.torsion.len();
        let mut a = IntegerMatrix::zeros(m + self.torsion.len(), cols);
        for (i, j, x) in self.class_matrix().entries() {
            a.set(i, j, x.clone());
        }
        for (k, n) in self.torsion.iter().enumerate() {
            a.set(m + k, self.b1 + k, n.clone());
        }
        a
    }

    /// Whether the component classes generate `H_1`.
    pub fn validate_spanning(&self) -> bool {
        let cols = self.b1 + self.torsion.len();
        let hf = hermite_normal_form(&self.stacked());
        hf.rank == cols && (0..cols).all(|i| hf.h.get(i, i).is_one())
    }

    /// A basis of the lattice of nullhomologous combinations of components.
    pub fn kernel_lattice(&self) -> Vec<Vec<BigInt>> {
        let m = self.components.len();
        let mut basis: Vec<Vec<BigInt>> = integer_left_kernel(&self.stacked())
            .into_iter()
            .map(|mut r| {
                r.truncate(m);
                r
            })
            .collect();
        // a canonical basis: the Hermite form of the kernel rows
        if basis.is_empty() {
            return basis;
        }
        let k = IntegerMatrix::from_dense(basis.len(), m, &basis);
        let hf = hermite_normal_form(&k);
        basis = hf.h.to_dense();
        basis.truncate(hf.rank);
        basis
    }

    pub fn is_nullhomologous(&self, a: &[BigInt]) -> bool {
        if a.len() != self.components.len() {
            return false;
        }
        let mut free = vec![BigInt::zero(); self.b1];
        let mut tors = vec![BigInt::zero(); self.torsion.len()];
        for (c, x) in self.components.iter().zip(a) {
            for (f, y) in free.iter_mut().zip(&c.class_free) {
                *f += x * y;
            }
            for (t, y) in tors.iter_mut().zip(&c.class_torsion) {
                *t += x * y;
            }
        }
        free.iter().all(|x| x.is_zero())
            && tors
                .iter()
                .zip(&self.torsion)
                .all(|(t, n)| t.is_multiple_of(n))
    }

    /// Kernel basis with all-zero pairing vectors.
    pub fn default_surfaces(&self) -> Vec<ObrSurface> {
        let m = self.components.len();
        self.kernel_lattice()
            .into_iter()
            .map(|kernel| ObrSurface {
                kernel,
                pairing: vec![BigInt::zero(); m],
            })
            .collect()
    }

    /// Checks every structural invariant, naming the first one violated.
    pub fn validate(&self) -> Result<()> {
        let m = self.components.len();
        if let Some(n) = self.torsion.iter().find(|n| *n < &int(2)) {
            return Err(CloverError::model(
                "torsion",
                format!("invariant factor {n} is below 2"),
            ));
        }
        let mut names = BTreeSet::new();
        for c in &self.components {
            if c.name.is_star() {
                return Err(CloverError::model("component names", "`*` is reserved"));
            }
            if !names.insert(c.name.clone()) {
                return Err(CloverError::model(
                    "component names",
                    format!("duplicate name `{}`", c.name),
                ));
            }
            if c.class_free.len() != self.b1 {
                return Err(CloverError::model(
                    "class_free length",
                    format!(
                        "component `{}` has {} entries, expected {}",
                        c.name,
                        c.class_free.len(),
                        self.b1
                    ),
                ));
            }
            if c.class_torsion.len() != self.torsion.len() {
                return Err(CloverError::model(
                    "class_torsion length",
                    format!(
                        "component `{}` has {} entries, expected {}",
                        c.name,
                        c.class_torsion.len(),
                        self.torsion.len()
                    ),
                ));
            }
            for (x, n) in c.class_torsion.iter().zip(&self.torsion) {
                if x.is_negative() || x >= n {
                    return Err(CloverError::model(
                        "class_torsion reduced",
                        format!("component `{}` has residue {x} outside [0, {n})", c.name),
                    ));
                }
            }
        }
        for s in &self.h2 {
            if s.pairing.len() != m {
                return Err(CloverError::model(
                    "h2 pairing length",
                    format!("surface `{}`", s.name),
                ));
            }
        }
        if !self.validate_spanning() {
            return Err(CloverError::model(
                "spanning",
                "component classes do not generate H_1",
            ));
        }
        for (k, s) in self.obr_surfaces.iter().enumerate() {
            if s.kernel.len() != m || s.pairing.len() != m {
                return Err(CloverError::model(
                    "obr surface length",
                    format!("surface {k}"),
                ));
            }
            if !self.is_nullhomologous(&s.kernel) {
                return Err(CloverError::model(
                    "obr kernel nullhomologous",
                    format!("surface {k} bounds a non-trivial class"),
                ));
            }
        }
        let given: Vec<Vec<BigInt>> = self.obr_surfaces.iter().map(|s| s.kernel.clone()).collect();
        if lattice_hnf(&given, m) != lattice_hnf(&self.kernel_lattice(), m) {
            return Err(CloverError::model(
                "obr kernel generates",
                "the obr surface kernels do not generate the nullhomology lattice",
            ));
        }
        Ok(())
    }

    /// Pairing of surface `s` with the component named `color`.
    pub fn pairing(&self, s: usize, color: &Color) -> Option<&BigInt> {
        self.component_index(color).map(|i| &self.h2[s].pairing[i])
    }

    /// The torsion-free model on the named components: torsion and torsion
    /// classes are dropped, H₂ columns restricted, surfaces rebuilt with zero
    /// pairings.
    pub fn rational_restriction(&self, keep: &[&str]) -> Result<ManifoldModel> {
        let idx = keep
            .iter()
            .map(|n| self.component_by_name(n))
            .collect::<Result<Vec<_>>>()?;
        let components = idx
            .iter()
            .map(|&i| LinkComponent {
                class_torsion: Vec::new(),
                ..self.components[i].clone()
            })
            .collect();
        let h2 = self
            .h2
            .iter()
            .map(|s| H2Generator {
                name: s.name.clone(),
                pairing: idx.iter().map(|&i| s.pairing[i].clone()).collect(),
            })
            .collect();
        let mut model = ManifoldModel {
            b1: self.b1,
            torsion: Vec::new(),
            components,
            h2,
            obr_surfaces: Vec::new(),
        };
        model.obr_surfaces = model.default_surfaces();
        Ok(model)
    }

    pub fn from_json(text: &str) -> Result<ManifoldModel> {
        let raw: RawModel = serde_json::from_str(text)
            .map_err(|e| CloverError::parse(e.line(), e.column(), e.to_string()))?;
        raw.into_model()
    }

    pub fn to_json(&self) -> String {
        let names: Vec<String> = self.components.iter().map(|c| c.name.to_string()).collect();
        let by_name = |v: &[BigInt]| -> BTreeMap<String, Number> {
            names
                .iter()
                .zip(v)
                .map(|(n, x)| (n.clone(), num(x)))
                .collect()
        };
        let raw = RawModel {
            b1: Number::from(self.b1),
            torsion: self.torsion.iter().map(num).collect(),
            link: self
                .components
                .iter()
                .map(|c| RawComponent {
                    name: c.name.to_string(),
                    class_free: c.class_free.iter().map(num).collect(),
                    class_torsion: c.class_torsion.iter().map(num).collect(),
                    framing: num(&c.framing),
                })
                .collect(),
            h2_generators: self
                .h2
                .iter()
                .map(|s| RawH2 {
                    name: s.name.clone(),
                    pairing: by_name(&s.pairing),
                })
                .collect(),
            h2_complete: true,
            obr_surfaces: Some(
                self.obr_surfaces
                    .iter()
                    .map(|s| RawSurface {
                        kernel: names
                            .iter()
                            .zip(&s.kernel)
                            .filter(|(_, x)| !x.is_zero())
                            .map(|(n, x)| (n.clone(), num(x)))
                            .collect(),
                        pairing: Some(by_name(&s.pairing)),
                    })
                    .collect(),
            ),
        };
        serde_json::to_string_pretty(&raw).expect("serializable")
    }
}

fn lattice_hnf(rows: &[Vec<BigInt>], m: usize) -> IntegerMatrix {
    if rows.is_empty() {
        return IntegerMatrix::zeros(0, m);
    }
    let hf = hermite_normal_form(&IntegerMatrix::from_dense(rows.len(), m, rows));
    let mut out = IntegerMatrix::zeros(hf.rank, m);
    for (i, j, x) in hf.h.entries() {
        out.set(i, j, x.clone());
    }
    out
}

fn num(x: &BigInt) -> Number {
    x.to_string()
        .parse()
        .expect("integers are valid JSON numbers")
}

fn big(n: &Number, what: &str) -> Result<BigInt> {
    n.to_string().parse().map_err(|_| {
        CloverError::model(
            "integer entries",
            format!("{what}: `{n}` is not an integer"),
        )
    })
}

fn bigs(ns: &[Number], what: &str) -> Result<Vec<BigInt>> {
    ns.iter().map(|n| big(n, what)).collect()
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawComponent {
    name: String,
    class_free: Vec<Number>,
    #[serde(default)]
    class_torsion: Vec<Number>,
    #[serde(default = "zero_number")]
    framing: Number,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawH2 {
    name: String,
    pairing: BTreeMap<String, Number>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSurface {
    kernel: BTreeMap<String, Number>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pairing: Option<BTreeMap<String, Number>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawModel {
    b1: Number,
    #[serde(default)]
    torsion: Vec<Number>,
    link: Vec<RawComponent>,
    #[serde(default)]
    h2_generators: Vec<RawH2>,
    h2_complete: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    obr_surfaces: Option<Vec<RawSurface>>,
}

fn zero_number() -> Number {
    Number::from(0)
}

impl RawModel {
    fn into_model(self) -> Result<ManifoldModel> {
        if !self.h2_complete {
            return Err(CloverError::model(
                "h2_complete",
                "the H2 generators must be attested complete with `h2_complete: true`",
            ));
        }
        let b1 = self.b1.as_u64().ok_or_else(|| {
            CloverError::model("b1", format!("`{}` is not a nonnegative integer", self.b1))
        })? as usize;
        let torsion = bigs(&self.torsion, "torsion")?;
        let mut components = Vec::new();
        for c in &self.link {
            let name = Color::new(&c.name).map_err(|_| {
                CloverError::model("component names", format!("bad name `{}`", c.name))
            })?;
            let class_torsion = if c.class_torsion.is_empty() {
                vec![BigInt::zero(); torsion.len()]
            } else {
                bigs(&c.class_torsion, "class_torsion")?
            };
            components.push(LinkComponent {
                name,
                class_free: bigs(&c.class_free, "class_free")?,
                class_torsion,
                framing: big(&c.framing, "framing")?,
            });
        }
        let names: Vec<String> = components.iter().map(|c| c.name.to_string()).collect();
        let vector = |map: &BTreeMap<String, Number>, what: &str| -> Result<Vec<BigInt>> {
            let mut v = vec![BigInt::zero(); names.len()];
            for (k, x) in map {
                let i = names
                    .iter()
                    .position(|n| n == k)
                    .ok_or_else(|| CloverError::UnknownColor(k.clone()))?;
                v[i] = big(x, what)?;
            }
            Ok(v)
        };
        let h2 = self
            .h2_generators
            .iter()
            .map(|s| {
                Ok(H2Generator {
                    name: s.name.clone(),
                    pairing: vector(&s.pairing, "h2 pairing")?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let surfaces = match &self.obr_surfaces {
            None => None,
            Some(list) => Some(
                list.iter()
                    .map(|s| {
                        Ok(ObrSurface {
                            kernel: vector(&s.kernel, "obr kernel")?,
                            pairing: match &s.pairing {
                                Some(p) => vector(p, "obr pairing")?,
                                None => vec![BigInt::zero(); names.len()],
                            },
                        })
                    })
                    .collect::<Result<Vec<_>>>()?,
            ),
        };
        let mut model = ManifoldModel {
            b1,
            torsion,
            components,
            h2,
            obr_surfaces: Vec::new(),
        };
        model.validate_shape()?;
        model.obr_surfaces = match surfaces {
            Some(s) => s,
            None => model.default_surfaces(),
        };
        model.validate()?;
        Ok(model)
    }
}

impl ManifoldModel {
    // the checks that must hold before kernels can be computed
    fn validate_shape(&self) -> Result<()> {
        let probe = ManifoldModel {
            obr_surfaces: self.default_surfaces_unchecked(),
            ..self.clone()
        };
        probe.validate()
    }

    fn default_surfaces_unchecked(&self) -> Vec<ObrSurface> {
        let ok = self
            .components
            .iter()
            .all(|c| c.class_free.len() == self.b1 && c.class_torsion.len() == self.torsion.len());
        if ok {
            self.default_surfaces()
        } else {
            Vec::new()
        }
    }
}

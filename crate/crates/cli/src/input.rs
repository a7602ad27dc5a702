//! JSON job files.

use std::collections::BTreeMap;
use std::sync::Arc;

use hopf_poisson::hopf::Element;
use hopf_poisson::{CycRat, CyclotomicField, FiniteHopf, HopfAction, PoissonAlgebra, PolyRing, Scalar};
use serde::{Deserialize, Serialize};

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Job {
    pub field: Option<FieldSpec>,
    pub algebra: Option<AlgebraSpec>,
    pub hopf: Option<HopfSpec>,
    pub action: Option<ActionSpec>,
    /// numeric values for parameters; `null` keeps a parameter symbolic
    #[serde(default)]
    pub params: BTreeMap<String, Option<String>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSpec {
    pub cyclotomic_order: u32,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum AlgebraSpec {
    Builtin(Builtin),
    Explicit(ExplicitAlgebra),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Builtin {
    pub builtin: String,
    pub n: Option<usize>,
    pub m: Option<usize>,
    /// scalar for `taft_quadratic`, upper-triangular matrix for `skew`
    pub c: Option<serde_json::Value>,
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ExplicitAlgebra {
    pub vars: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<u32>>,
    #[serde(default)]
    pub brackets: BTreeMap<String, String>,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum HopfSpec {
    Taft {
        n: u32,
    },
    Group {
        orders: Vec<u32>,
    },
    Explicit {
        basis: Vec<String>,
        unit: BTreeMap<String, String>,
        /// keyed `"a,b"` by basis names; missing products are zero
        mult: BTreeMap<String, BTreeMap<String, String>>,
        /// `[left, right, coefficient]` triples per basis element
        comult: BTreeMap<String, Vec<(String, String, String)>>,
        counit: BTreeMap<String, String>,
        antipode: BTreeMap<String, BTreeMap<String, String>>,
    },
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum ActionSpec {
    Named(String),
    Explicit {
        hopf: Option<HopfSpec>,
        #[serde(default)]
        generators: BTreeMap<String, BTreeMap<String, String>>,
    },
}

/// A malformed or inconsistent job file.
#[derive(Debug)]
pub struct SchemaError(pub String);

impl<E: std::fmt::Display> From<E> for SchemaError {
    fn from(e: E) -> Self {
        SchemaError(e.to_string())
    }
}

type Result<T> = std::result::Result<T, SchemaError>;

fn schema<T>(msg: impl Into<String>) -> Result<T> {
    Err(SchemaError(msg.into()))
}

pub fn parse_job(text: &str) -> Result<Job> {
    Ok(serde_json::from_str(text)?)
}

impl Job {
    fn hopf_spec(&self) -> Option<&HopfSpec> {
        match &self.action {
            Some(ActionSpec::Explicit { hopf: Some(h), .. }) => Some(h),
            _ => self.hopf.as_ref(),
        }
    }

    /// The field order: given explicitly, or the least one the Hopf algebra needs.
    pub fn field(&self) -> Result<Arc<CyclotomicField>> {
        let order = match (&self.field, self.hopf_spec()) {
            (Some(f), _) => f.cyclotomic_order,
            (None, Some(HopfSpec::Taft { n })) => *n,
            (None, Some(HopfSpec::Group { orders })) => orders.iter().fold(1, |a, &b| lcm(a, b)),
            _ => 1,
        };
        Ok(CyclotomicField::new(order)?)
    }

    fn param_names(&self) -> Vec<String> {
        self.params.keys().cloned().collect()
    }

    fn numeric_params(&self, field: &Arc<CyclotomicField>) -> Result<BTreeMap<String, CycRat>> {
        let mut out = BTreeMap::new();
        for (name, value) in &self.params {
            if let Some(text) = value {
                out.insert(name.clone(), constant(field, text)?);
            }
        }
        Ok(out)
    }

    fn scalar(&self, field: &Arc<CyclotomicField>, text: &str) -> Result<Scalar> {
        let ring = PolyRing::new(field.clone(), Vec::new(), self.param_names())?;
        Ok(ring.parse_scalar(text)?)
    }

    pub fn algebra(&self) -> Result<PoissonAlgebra> {
        let field = self.field()?;
        let Some(spec) = &self.algebra else {
            return schema("missing `algebra`");
        };
        let raw = match spec {
            AlgebraSpec::Builtin(b) => self.builtin(&field, b)?,
            AlgebraSpec::Explicit(e) => {
                let ring = PolyRing::new(field.clone(), e.vars.clone(), self.param_names())?;
                let weights = e.weights.clone().unwrap_or_else(|| vec![1; e.vars.len()]);
                let mut entries = Vec::new();
                for (key, text) in &e.brackets {
                    entries.push((bracket_key(key, e.vars.len())?, ring.parse(text)?));
                }
                PoissonAlgebra::new(ring, weights, entries)?
            }
        };
        Ok(raw.specialize(&self.numeric_params(&field)?)?)
    }

    fn builtin(&self, field: &Arc<CyclotomicField>, b: &Builtin) -> Result<PoissonAlgebra> {
        let size = |v: Option<usize>, what: &str| v.ok_or_else(|| SchemaError(format!("`{}` needs `{what}`", b.builtin)));
        Ok(match b.builtin.as_str() {
            "weyl" => PoissonAlgebra::weyl(field, size(b.n, "n")?),
            "trivial" => PoissonAlgebra::trivial(field, size(b.m, "m")?),
            "taft_linear" => PoissonAlgebra::taft_linear(field),
            "taft_quadratic" => {
                let c = match &b.c {
                    None => Scalar::symbol(field, "c"),
                    Some(serde_json::Value::String(s)) => self.scalar(field, s)?,
                    Some(other) => return schema(format!("`c` must be a string, got {other}")),
                };
                PoissonAlgebra::taft_quadratic(field, c)
            }
            "skew" => {
                let rows: Vec<Vec<String>> = match &b.c {
                    Some(v) => serde_json::from_value(v.clone())?,
                    None => return schema("`skew` needs the matrix `c`"),
                };
                let m = rows.len();
                let mut c = vec![vec![Scalar::zero(); m]; m];
                for (i, row) in rows.iter().enumerate() {
                    if row.len() != m {
                        return schema("`c` must be square");
                    }
                    for j in i + 1..m {
                        c[i][j] = self.scalar(field, &row[j])?;
                        c[j][i] = -&c[i][j];
                    }
                }
                PoissonAlgebra::skew(field, &c)?
            }
            other => return schema(format!("unknown builtin `{other}`")),
        })
    }

    pub fn hopf(&self) -> Result<FiniteHopf> {
        let field = self.field()?;
        match self.hopf_spec() {
            None => schema("missing `hopf`"),
            Some(HopfSpec::Taft { n }) => Ok(FiniteHopf::taft(&field, *n)?),
            Some(HopfSpec::Group { orders }) => Ok(FiniteHopf::group_algebra(&field, orders)?),
            Some(HopfSpec::Explicit {
                basis,
                unit,
                mult,
                comult,
                counit,
                antipode,
            }) => {
                let index = |name: &str| {
                    basis
                        .iter()
                        .position(|b| b == name)
                        .ok_or_else(|| SchemaError(format!("unknown basis element `{name}`")))
                };
                let element = |table: &BTreeMap<String, String>| -> Result<Element> {
                    let mut e = Element::new();
                    for (name, c) in table {
                        e.insert(index(name)?, constant(&field, c)?);
                    }
                    Ok(e)
                };
                let d = basis.len();
                let mut mult_table = vec![vec![Element::new(); d]; d];
                for (key, value) in mult {
                    let Some((a, b)) = key.split_once(',') else {
                        return schema(format!("product key `{key}` is not `a,b`"));
                    };
                    mult_table[index(a.trim())?][index(b.trim())?] = element(value)?;
                }
                let mut comult_table = vec![Vec::new(); d];
                for (name, terms) in comult {
                    let i = index(name)?;
                    for (l, r, c) in terms {
                        comult_table[i].push((index(l)?, index(r)?, constant(&field, c)?));
                    }
                }
                let mut counit_table = vec![CycRat::zero(&field); d];
                for (name, c) in counit {
                    counit_table[index(name)?] = constant(&field, c)?;
                }
                let mut antipode_table = vec![Element::new(); d];
                for (name, image) in antipode {
                    antipode_table[index(name)?] = element(image)?;
                }
                Ok(FiniteHopf::from_tables(
                    &field,
                    basis.clone(),
                    mult_table,
                    element(unit)?,
                    comult_table,
                    counit_table,
                    antipode_table,
                )?)
            }
        }
    }

    pub fn action(&self) -> Result<HopfAction> {
        let algebra = self.algebra()?;
        match &self.action {
            None => schema("missing `action`"),
            Some(ActionSpec::Named(name)) => match name.as_str() {
                "taft_standard" => match self.hopf_spec() {
                    Some(HopfSpec::Taft { n }) => Ok(HopfAction::taft_standard(algebra, *n)?),
                    _ => schema("`taft_standard` needs a Taft `hopf`"),
                },
                "trivial" => Ok(HopfAction::trivial(self.hopf()?, algebra)?),
                other => schema(format!("unknown action `{other}`")),
            },
            Some(ActionSpec::Explicit { generators, .. }) => {
                let ring = algebra.ring().clone();
                let mut images = BTreeMap::new();
                for (g, table) in generators {
                    let mut row = BTreeMap::new();
                    for (var, text) in table {
                        let i = ring
                            .var_index(var)
                            .ok_or_else(|| SchemaError(format!("unknown variable `{var}`")))?;
                        row.insert(i, ring.parse(text)?);
                    }
                    images.insert(g.clone(), row);
                }
                Ok(HopfAction::new(self.hopf()?, algebra, images)?)
            }
        }
    }
}

/// Parses a numeric constant such as `3/2` or `-1 - z`.
pub fn constant(field: &Arc<CyclotomicField>, text: &str) -> Result<CycRat> {
    let ring = PolyRing::new(field.clone(), Vec::new(), Vec::new())?;
    Ok(ring.parse_scalar(text)?.to_num(field)?)
}

fn bracket_key(key: &str, m: usize) -> Result<(usize, usize)> {
    let parsed = key
        .split_once(',')
        .and_then(|(a, b)| Some((a.trim().parse::<usize>().ok()?, b.trim().parse::<usize>().ok()?)));
    match parsed {
        Some((i, j)) if (1..=m).contains(&i) && (1..=m).contains(&j) => Ok((i - 1, j - 1)),
        _ => schema(format!("bracket key `{key}` is not `i,j` with 1 <= i, j <= {m}")),
    }
}

fn lcm(a: u32, b: u32) -> u32 {
    use num_integer::Integer;
    a.lcm(&b)
}

/// The explicit JSON form of an algebra, suitable for reloading.
pub fn algebra_to_spec(p: &PoissonAlgebra) -> ExplicitAlgebra {
    let ring = p.ring();
    let m = p.nvars();
    let mut brackets = BTreeMap::new();
    for i in 0..m {
        for j in i + 1..m {
            let f = p.structure(i, j);
            if !f.is_zero() {
                brackets.insert(format!("{},{}", i + 1, j + 1), ring.format(f));
            }
        }
    }
    ExplicitAlgebra {
        vars: ring.vars().to_vec(),
        weights: Some(p.weights().to_vec()),
        brackets,
    }
}

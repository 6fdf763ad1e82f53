//! JSON exchange format for algebras and modules. Scalars are exact
//! "num/den" strings.

use serde::{Deserialize, Serialize};

use crate::error::{input, Result};
use crate::fdalg::algebra::{Algebra, AlgebraBuilder};
use crate::fdalg::module::{Module, SparseMat};
use crate::field::{Field, FieldSpec};
use crate::rootdata::Weight;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct AlgebraJson {
    pub dim: usize,
    #[serde(default)]
    pub labels: Vec<String>,
    /// [i, j, k, "c"]: b_i b_j has coefficient c on b_k.
    pub sc: Vec<(usize, usize, usize, String)>,
    pub field: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub identity: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grading: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x_grading: Option<Vec<Weight>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ModuleJson {
    pub dim: usize,
    pub field: String,
    /// [a, r, c, "v"]: algebra basis element a has entry v at (r, c).
    pub action: Vec<(usize, usize, usize, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grading: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x_grading: Option<Vec<Weight>>,
}

impl AlgebraJson {
    pub fn field_spec(&self) -> Result<FieldSpec> {
        FieldSpec::parse(&self.field)
    }

    pub fn parse(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn to_algebra<F: Field>(&self, f: &F) -> Result<Algebra<F>> {
        let labels = if self.labels.is_empty() {
            (0..self.dim).map(|i| format!("b{i}")).collect()
        } else if self.labels.len() == self.dim {
            self.labels.clone()
        } else {
            return input("labels length differs from dim");
        };
        let mut b = AlgebraBuilder::new(f, labels);
        for (i, j, k, c) in &self.sc {
            if *i >= self.dim || *j >= self.dim || *k >= self.dim {
                return input(format!("structure constant index out of range: ({i}, {j}, {k})"));
            }
            b.add(*i, *j, *k, f.parse(c)?);
        }
        if let Some(one) = &self.identity {
            if one.len() != self.dim {
                return input("identity length differs from dim");
            }
            b.identity(one.iter().map(|c| f.parse(c)).collect::<Result<_>>()?);
        }
        if let Some(g) = &self.grading {
            b.grading(g.clone());
        }
        if let Some(g) = &self.x_grading {
            b.x_grading(g.clone());
        }
        b.build()
    }

    pub fn from_algebra<F: Field>(alg: &Algebra<F>) -> Self {
        let f = &alg.field;
        AlgebraJson {
            dim: alg.dim(),
            labels: alg.labels.clone(),
            sc: alg.structure_constants().into_iter().map(|(i, j, k, c)| (i, j, k, f.render(&c))).collect(),
            field: f.label(),
            identity: Some(alg.one().iter().map(|c| f.render(c)).collect()),
            grading: alg.grading.clone(),
            x_grading: alg.x_grading.clone(),
        }
    }
}

impl ModuleJson {
    pub fn parse(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn to_module<F: Field>(&self, alg: &Algebra<F>) -> Result<Module<F>> {
        let f = &alg.field;
        if FieldSpec::parse(&self.field)?.label() != f.label() {
            return input(format!("module over {} but algebra over {}", self.field, f.label()));
        }
        let mut action: Vec<SparseMat<F::Elem>> =
            (0..alg.dim()).map(|_| SparseMat { rows: self.dim, cols: self.dim, entries: vec![] }).collect();
        for (a, r, c, v) in &self.action {
            if *a >= alg.dim() || *r >= self.dim || *c >= self.dim {
                return input(format!("action index out of range: ({a}, {r}, {c})"));
            }
            let x = f.parse(v)?;
            if !f.is_zero(&x) {
                action[*a].entries.push((*r, *c, x));
            }
        }
        Module::new(alg, self.dim, action, self.grading.clone(), self.x_grading.clone())
    }

    pub fn from_module<F: Field>(m: &Module<F>) -> Self {
        let f = &m.field;
        let mut action = Vec::new();
        for (a, s) in m.action.iter().enumerate() {
            let mut es: Vec<_> = s.entries.iter().filter(|(_, _, v)| !f.is_zero(v)).collect();
            es.sort_by_key(|(r, c, _)| (*r, *c));
            action.extend(es.into_iter().map(|(r, c, v)| (a, *r, *c, f.render(v))));
        }
        ModuleJson { dim: m.dim, field: f.label(), action, grading: m.grading.clone(), x_grading: m.x_grading.clone() }
    }
}

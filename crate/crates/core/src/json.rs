//! The JSON object schemas shared by scenario files and certificates:
//! fields, groups, cocycles, Galois extensions, structure-constant algebras,
//! and serialized Hopf structures. Field elements travel as strings
//! ("3/2", "2", "[1,0,1]") so nothing ever becomes a float.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{SparseVec, StructureAlgebra};
use crate::cocycle::{TwoCocycle, ValueSubgroup};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::galois::GaloisExtension;
use crate::group::FiniteGroup;
use crate::hopf::HopfStructure;

/// JSON "field" object.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FieldJson {
    Rational,
    Prime {
        p: u64,
    },
    Extension {
        base: Box<FieldJson>,
        /// Little-endian coefficient strings, constant term first.
        minpoly: Vec<String>,
        /// Automorphism label -> image of the generator.
        automorphisms: BTreeMap<String, Vec<String>>,
    },
}

impl FieldJson {
    pub fn to_field(&self) -> Result<Field> {
        match self {
            FieldJson::Rational => Ok(Field::rationals()),
            FieldJson::Prime { p } => Field::prime(*p),
            FieldJson::Extension {
                base,
                minpoly,
                automorphisms,
            } => {
                let base = base.to_field()?;
                let kind = base.base_kind();
                let minpoly = minpoly
                    .iter()
                    .map(|s| kind.parse(s))
                    .collect::<Result<Vec<_>>>()?;
                let automorphisms = automorphisms
                    .iter()
                    .map(|(label, coeffs)| {
                        let coeffs = coeffs
                            .iter()
                            .map(|s| kind.parse(s))
                            .collect::<Result<Vec<_>>>()?;
                        Ok((label.clone(), coeffs))
                    })
                    .collect::<Result<BTreeMap<_, _>>>()?;
                Field::extension(&base, minpoly, automorphisms)
            }
        }
    }

    pub fn from_field(field: &Field) -> FieldJson {
        let base_json = match field.base_kind() {
            crate::field::BaseKind::Rational => FieldJson::Rational,
            crate::field::BaseKind::Prime(p) => FieldJson::Prime { p },
        };
        match field.minimal_polynomial() {
            None => base_json,
            Some(minpoly) => {
                let kind = field.base_kind();
                let automorphisms = field
                    .automorphism_labels()
                    .into_iter()
                    .map(|label| {
                        let image = field
                            .automorphism_image(&label)
                            .expect("declared automorphism");
                        let coeffs = image.coeffs().iter().map(|c| kind.format(c)).collect();
                        (label, coeffs)
                    })
                    .collect();
                FieldJson::Extension {
                    base: Box::new(base_json),
                    minpoly: minpoly.iter().map(|c| kind.format(c)).collect(),
                    automorphisms,
                }
            }
        }
    }
}

/// JSON "group" object.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GroupJson {
    Abelian {
        invariants: Vec<u64>,
    },
    Table {
        elements: Vec<String>,
        table: Vec<Vec<usize>>,
    },
}

impl GroupJson {
    pub fn to_group(&self) -> Result<FiniteGroup> {
        match self {
            GroupJson::Abelian { invariants } => FiniteGroup::abelian(invariants),
            GroupJson::Table { elements, table } => {
                FiniteGroup::from_table(elements.clone(), table.clone())
            }
        }
    }
}

/// JSON "cocycle" object: sparse entries with a default of "1".
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CocycleJson {
    pub value_subgroup: ValueSubgroupJson,
    #[serde(default)]
    pub entries: Vec<CocycleEntryJson>,
    #[serde(default = "default_one")]
    pub default: String,
}

fn default_one() -> String {
    "1".into()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CocycleEntryJson {
    pub row: String,
    pub col: String,
    pub value: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ValueSubgroupJson {
    Free(String),
    RootsOfUnity { zeta_order: u64 },
}

impl ValueSubgroupJson {
    pub fn to_subgroup(&self) -> Result<ValueSubgroup> {
        match self {
            ValueSubgroupJson::RootsOfUnity { zeta_order } => Ok(ValueSubgroup::RootsOfUnity {
                order: *zeta_order,
            }),
            ValueSubgroupJson::Free(tag) if tag == "free" => Ok(ValueSubgroup::Free),
            ValueSubgroupJson::Free(tag) => Err(Error::Internal(format!(
                "unknown value subgroup `{tag}`"
            ))),
        }
    }
}

impl CocycleJson {
    pub fn to_cocycle(&self, group: Arc<FiniteGroup>, field: &Field) -> Result<TwoCocycle> {
        let n = group.order();
        let default = field.parse_element(&self.default)?;
        let mut values = vec![vec![default; n]; n];
        for entry in &self.entries {
            let row = group
                .index_of(&entry.row)
                .ok_or_else(|| Error::BadGroupTable(format!("unknown element `{}`", entry.row)))?;
            let col = group
                .index_of(&entry.col)
                .ok_or_else(|| Error::BadGroupTable(format!("unknown element `{}`", entry.col)))?;
            values[row][col] = field.parse_element(&entry.value)?;
        }
        TwoCocycle::validate(group, field, values, self.value_subgroup.to_subgroup()?)
    }
}

/// JSON "extension" object: L over the scenario's base field, with the
/// group action.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExtensionJson {
    pub minpoly: Vec<String>,
    pub automorphisms: BTreeMap<String, Vec<String>>,
    /// group element label -> automorphism label.
    pub group_action: BTreeMap<String, String>,
}

impl ExtensionJson {
    pub fn to_extension(&self, base: &Field, group: Arc<FiniteGroup>) -> Result<GaloisExtension> {
        let kind = base.base_kind();
        let minpoly = self
            .minpoly
            .iter()
            .map(|s| kind.parse(s))
            .collect::<Result<Vec<_>>>()?;
        let automorphisms = self
            .automorphisms
            .iter()
            .map(|(label, coeffs)| {
                let coeffs = coeffs
                    .iter()
                    .map(|s| kind.parse(s))
                    .collect::<Result<Vec<_>>>()?;
                Ok((label.clone(), coeffs))
            })
            .collect::<Result<BTreeMap<_, _>>>()?;
        let l = Field::extension(base, minpoly, automorphisms)?;
        let action = group
            .labels()
            .iter()
            .map(|g| {
                self.group_action
                    .get(g)
                    .cloned()
                    .ok_or_else(|| Error::BadGroupAction(format!("no action for element `{g}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        GaloisExtension::validate(&l, group, action)
    }
}

/// JSON structure-constant format for an algebra: omitted products are zero.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub basis: Vec<String>,
    pub unit: BTreeMap<String, String>,
    pub products: Vec<ProductJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProductJson {
    pub i: usize,
    pub j: usize,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TermJson {
    pub k: usize,
    pub c: String,
}

impl AlgebraJson {
    pub fn from_algebra(algebra: &StructureAlgebra) -> AlgebraJson {
        let dim = algebra.dim();
        let mut products = Vec::new();
        for i in 0..dim {
            for j in 0..dim {
                let p = algebra.basis_product(i, j);
                if p.is_empty() {
                    continue;
                }
                products.push(ProductJson {
                    i,
                    j,
                    terms: p
                        .iter()
                        .map(|(k, c)| TermJson {
                            k: *k,
                            c: c.to_string(),
                        })
                        .collect(),
                });
            }
        }
        let unit = algebra
            .unit()
            .iter()
            .map(|(k, c)| (algebra.label(*k).to_string(), c.to_string()))
            .collect();
        AlgebraJson {
            basis: algebra.basis_labels().to_vec(),
            unit,
            products,
        }
    }

    pub fn to_algebra(&self, field: &Field) -> Result<StructureAlgebra> {
        let dim = self.basis.len();
        let mut products = vec![Vec::new(); dim * dim];
        for p in &self.products {
            if p.i >= dim || p.j >= dim {
                return Err(Error::MapDimensionMismatch("product index out of range".into()));
            }
            let terms = p
                .terms
                .iter()
                .map(|t| Ok((t.k, field.parse_element(&t.c)?)))
                .collect::<Result<SparseVec>>()?;
            products[p.i * dim + p.j] = crate::algebra::sparse_normalize(terms);
        }
        let unit = self
            .unit
            .iter()
            .map(|(label, c)| {
                let k = self
                    .basis
                    .iter()
                    .position(|b| b == label)
                    .ok_or_else(|| Error::BadGroupTable(format!("unknown basis label `{label}`")))?;
                Ok((k, field.parse_element(c)?))
            })
            .collect::<Result<SparseVec>>()?;
        StructureAlgebra::new(
            field.clone(),
            self.basis.clone(),
            products,
            crate::algebra::sparse_normalize(unit),
        )
    }
}

/// A serialized Hopf structure: the algebra plus the three maps in sparse
/// form. Delta entries use the flattened pair index a * dim + b.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HopfJson {
    pub field: FieldJson,
    pub algebra: AlgebraJson,
    pub delta: Vec<Vec<TermJson>>,
    pub counit: Vec<String>,
    pub antipode: Vec<Vec<TermJson>>,
}

impl HopfJson {
    pub fn from_hopf(h: &HopfStructure) -> HopfJson {
        let sparse = |v: &SparseVec| -> Vec<TermJson> {
            v.iter()
                .map(|(k, c)| TermJson {
                    k: *k,
                    c: c.to_string(),
                })
                .collect()
        };
        HopfJson {
            field: FieldJson::from_field(h.field()),
            algebra: AlgebraJson::from_algebra(&h.algebra),
            delta: h.delta.iter().map(|v| sparse(v)).collect(),
            counit: h.counit.iter().map(|c| c.to_string()).collect(),
            antipode: h.antipode.iter().map(|v| sparse(v)).collect(),
        }
    }

    pub fn to_hopf(&self) -> Result<HopfStructure> {
        let field = self.field.to_field()?;
        let algebra = self.algebra.to_algebra(&field)?;
        let parse_sparse = |terms: &[TermJson]| -> Result<SparseVec> {
            let v = terms
                .iter()
                .map(|t| Ok((t.k, field.parse_element(&t.c)?)))
                .collect::<Result<SparseVec>>()?;
            Ok(crate::algebra::sparse_normalize(v))
        };
        let delta = self
            .delta
            .iter()
            .map(|v| parse_sparse(v))
            .collect::<Result<Vec<_>>>()?;
        let counit = self
            .counit
            .iter()
            .map(|c| field.parse_element(c))
            .collect::<Result<Vec<_>>>()?;
        let antipode = self
            .antipode
            .iter()
            .map(|v| parse_sparse(v))
            .collect::<Result<Vec<_>>>()?;
        HopfStructure::new(algebra, delta, counit, antipode)
    }
}

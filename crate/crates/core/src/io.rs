//! JSON interfaces: space files, function/ideal/filter/congruence literals,
//! and report objects.
//!
//! The space file keeps its keys in the documented order (`points`,
//! `generators`) and two-space indentation; every other object is emitted
//! with alphabetically ordered keys. Subsets appear as lexicographically
//! sorted label arrays, rationals as `"p/q"` strings.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::filtcong::{Congruence, ZFilter};
use crate::func::{MeasurableFn, NonNegFn, ValueGrid};
use crate::ideal::{IdealCore, Side};
use crate::quotient::{is_totally_ordered, RealnessReport};
use crate::space::{SigmaAlgebra, SpaceRef, SubsetOfX};
use crate::structure::StructureSpace;
use crate::{Error, Rat, Result};

/// The space file: ground points and generator subsets.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpaceFile {
    pub points: Vec<String>,
    pub generators: Vec<Vec<String>>,
}

impl SpaceFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("space file serializes")
    }

    pub fn build(&self) -> Result<SigmaAlgebra> {
        SigmaAlgebra::generate(self.points.clone(), &self.generators)
    }

    pub fn from_space(space: &SigmaAlgebra) -> Self {
        SpaceFile {
            points: space.ground().labels().to_vec(),
            generators: space.members().iter().map(|m| space.subset_labels(m)).collect(),
        }
    }
}

/// Canonical output of space generation: the closed σ-algebra, its atoms,
/// and the separation flag.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpaceReport {
    pub atoms: Vec<Vec<String>>,
    pub members: Vec<Vec<String>>,
    pub points: Vec<String>,
    pub separating: bool,
}

impl SpaceReport {
    pub fn from_space(space: &SigmaAlgebra) -> Self {
        SpaceReport {
            atoms: space.atoms().iter().map(|a| space.subset_labels(a)).collect(),
            members: space.members().iter().map(|m| space.subset_labels(m)).collect(),
            points: space.ground().labels().to_vec(),
            separating: space.is_separating(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct FunctionLiteral {
    values: BTreeMap<String, String>,
}

/// Parse a function literal `{"values": {"atomIndex": "p/q", …}}`; omitted
/// atoms default to zero.
pub fn parse_function_literal(space: &SpaceRef, text: &str) -> Result<MeasurableFn> {
    let literal: FunctionLiteral =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let mut values = vec![Rat::from_integer(0.into()); space.atom_count()];
    for (key, value) in &literal.values {
        let idx: usize = key
            .parse()
            .map_err(|_| Error::Parse(format!("bad atom index {key:?}")))?;
        if idx >= space.atom_count() {
            return Err(Error::Parse(format!(
                "atom index {idx} out of range for {} atoms",
                space.atom_count()
            )));
        }
        values[idx] = value
            .parse()
            .map_err(|_| Error::Parse(format!("bad rational {value:?}")))?;
    }
    MeasurableFn::from_atom_values(space, values)
}

/// Emit a function literal with nonzero atoms only.
pub fn function_literal_json(f: &MeasurableFn) -> String {
    let values: BTreeMap<String, String> = f
        .values()
        .iter()
        .enumerate()
        .filter(|(_, v)| !num::Zero::is_zero(*v))
        .map(|(i, v)| (i.to_string(), v.to_string()))
        .collect();
    serde_json::to_string(&FunctionLiteral { values }).expect("literal serializes")
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct IdealLiteral {
    core: Vec<String>,
    side: String,
}

pub fn parse_ideal_literal(space: &SpaceRef, text: &str) -> Result<IdealCore> {
    let literal: IdealLiteral =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let side = match literal.side.as_str() {
        "ring" => Side::Ring,
        "semiring" => Side::Semiring,
        other => return Err(Error::Parse(format!("unknown side {other:?}"))),
    };
    let core = space.member_from_labels(&literal.core)?;
    IdealCore::new(space, core, side)
}

pub fn ideal_literal_json(ideal: &IdealCore) -> String {
    let literal = IdealLiteral {
        core: ideal.space().subset_labels(&ideal.core()),
        side: ideal.side().name().to_string(),
    };
    serde_json::to_string(&literal).expect("literal serializes")
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct FilterLiteral {
    core: Vec<String>,
}

pub fn parse_filter_literal(space: &SpaceRef, text: &str) -> Result<ZFilter> {
    let literal: FilterLiteral =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let core = space.member_from_labels(&literal.core)?;
    ZFilter::new(space, core)
}

pub fn filter_literal_json(filter: &ZFilter) -> String {
    let literal = FilterLiteral {
        core: filter.space().subset_labels(&filter.core()),
    };
    serde_json::to_string(&literal).expect("literal serializes")
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct CongruenceLiteral {
    #[serde(skip_serializing_if = "Option::is_none")]
    core: Option<Vec<String>>,
    kind: String,
}

pub fn parse_congruence_literal(space: &SpaceRef, text: &str) -> Result<Congruence> {
    let literal: CongruenceLiteral =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    match literal.kind.as_str() {
        "diagonal" => Ok(Congruence::diagonal(space)),
        "universal" => Ok(Congruence::universal(space)),
        "collapseNonzero" => Ok(Congruence::collapse_nonzero(space)),
        "fromFilter" => {
            let labels = literal.core.ok_or_else(|| {
                Error::Parse("fromFilter congruence needs a core".into())
            })?;
            let core = space.member_from_labels(&labels)?;
            Congruence::from_core(space, core)
        }
        other => Err(Error::Parse(format!("unknown congruence kind {other:?}"))),
    }
}

pub fn congruence_literal_json(rho: &Congruence) -> String {
    let literal = match rho {
        Congruence::FromFilter(filter) => CongruenceLiteral {
            core: match rho.kind() {
                crate::filtcong::CongruenceKind::FromFilter => {
                    Some(filter.space().subset_labels(&filter.core()))
                }
                _ => None,
            },
            kind: rho.kind().name().to_string(),
        },
        Congruence::CollapseNonzero(_) => CongruenceLiteral {
            core: None,
            kind: rho.kind().name().to_string(),
        },
    };
    serde_json::to_string(&literal).expect("literal serializes")
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
struct RealnessJson {
    cofinal: bool,
    filter_closed: bool,
    phi_onto: bool,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
struct QuotientReportJson {
    core: Vec<String>,
    maximal: bool,
    real: RealnessJson,
    totally_ordered: bool,
}

/// One report object per congruence, as streamed by the quotient suite.
pub fn quotient_report_json(rho: &Congruence, grid: &ValueGrid) -> Result<String> {
    let core = rho
        .core()
        .ok_or_else(|| Error::NotZCongruence("collapse relation".into()))?;
    let maximal = rho.is_maximal();
    let (real, totally_ordered) = if maximal {
        let r = crate::quotient::is_real(rho, grid)?;
        let t = is_totally_ordered(rho, grid)?.holds;
        (r, t)
    } else {
        (
            RealnessReport {
                filter_closed: false,
                phi_onto: false,
                cofinal: false,
                ideal_side_real: false,
                sample_bound: 0,
            },
            false,
        )
    };
    let report = QuotientReportJson {
        core: rho.space().subset_labels(&core),
        maximal,
        real: RealnessJson {
            cofinal: real.cofinal,
            filter_closed: real.filter_closed,
            phi_onto: real.phi_onto,
        },
        totally_ordered,
    };
    Ok(serde_json::to_string(&report).expect("report serializes"))
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
struct BaseClosedSetJson {
    member: Vec<String>,
    points: Vec<usize>,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
struct EtaEntryJson {
    congruence_core: Vec<String>,
    ideal_core: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
struct StructureJson {
    base_closed_sets: Vec<BaseClosedSetJson>,
    eta_table: Vec<EtaEntryJson>,
    points: usize,
}

/// The structure-space export report.
pub fn structure_export_json(space: &SpaceRef) -> Result<String> {
    let st = StructureSpace::build(space);
    let base_closed_sets = space
        .members()
        .iter()
        .map(|m| {
            let mask = st.basic_closed_index()[&m.bits()];
            BaseClosedSetJson {
                member: space.subset_labels(m),
                points: (0..st.point_count()).filter(|i| mask & (1 << i) != 0).collect(),
            }
        })
        .collect();
    let eta_table = st
        .eta_table()
        .into_iter()
        .map(|(rho, ideal)| EtaEntryJson {
            congruence_core: space.subset_labels(&rho.core().expect("maximal")),
            ideal_core: space.subset_labels(&ideal.core()),
        })
        .collect();
    let report = StructureJson {
        base_closed_sets,
        eta_table,
        points: st.point_count(),
    };
    Ok(serde_json::to_string_pretty(&report).expect("report serializes"))
}

/// Map file for isomorphism checks: either a point bijection by labels or an
/// atom-level descriptor.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct IsoMapFile {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub atom_map: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub point_map: Option<BTreeMap<String, String>>,
}

impl IsoMapFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// Helper for tests and the CLI: a shared handle from a parsed space file.
pub fn space_from_file(text: &str) -> Result<SpaceRef> {
    Ok(Arc::new(SpaceFile::parse(text)?.build()?))
}

/// Subset serialization helper (lexicographically sorted labels).
pub fn subset_to_labels(space: &SigmaAlgebra, s: &SubsetOfX) -> Vec<String> {
    space.subset_labels(s)
}

/// Wrap a parsed function literal as a positive-cone element.
pub fn parse_nonneg_literal(space: &SpaceRef, text: &str) -> Result<NonNegFn> {
    NonNegFn::new(parse_function_literal(space, text)?)
}

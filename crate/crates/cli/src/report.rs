//! Serializable report shapes. Field order is fixed, so JSON output is
//! byte-for-byte reproducible for a given command line.

use serde::Serialize;

use nullbasis::cantor::Gap;
use nullbasis::group::Elem;
use nullbasis::lie::{CoverageDemo, TorusReport};
use nullbasis::rational::{serialize_exact, Exact, Rational};
use nullbasis::tower::{IndexCondition, LedgerRow, WitnessChain};

#[derive(Debug, Serialize)]
pub struct DiffbasisReport {
    pub group: String,
    pub order: usize,
    pub method: String,
    pub elements: Vec<Elem>,
    pub size: usize,
    pub minimal: bool,
    pub covered: bool,
    pub missing: Vec<Elem>,
    pub kozma_lev_satisfied: bool,
    /// Largest size allowed by the bound for this order.
    pub bound_value: usize,
    /// `16|G|/3`, the bound on `|T|^2`.
    pub bound_squared: Exact,
}

#[derive(Debug, Serialize)]
pub struct LevelReport {
    pub k: usize,
    pub order: usize,
    pub kernel_order: Option<usize>,
    /// `T_1` at the first level, the kernel basis (in level coordinates) above it.
    pub basis: Vec<Elem>,
    pub basis_certified_minimal: bool,
    pub set_size: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub set: Option<Vec<Elem>>,
}

#[derive(Debug, Serialize)]
pub struct LedgerJson {
    pub k: usize,
    pub group_order: usize,
    pub kernel_order: Option<usize>,
    pub basis_size: usize,
    pub set_size: usize,
    pub eta: Exact,
    pub halving_ok: bool,
    pub index_condition_ok: bool,
    pub recursion_ok: bool,
    pub kozma_lev_ok: bool,
    pub cumulative_bound_ok: Option<bool>,
}

impl From<&LedgerRow> for LedgerJson {
    fn from(r: &LedgerRow) -> Self {
        LedgerJson {
            k: r.k,
            group_order: r.group_order,
            kernel_order: r.kernel_order,
            basis_size: r.basis_size,
            set_size: r.set_size,
            eta: Exact(r.eta.clone()),
            halving_ok: r.halving_ok,
            index_condition_ok: r.index_condition_ok,
            recursion_ok: r.recursion_ok,
            kozma_lev_ok: r.kozma_lev_ok,
            cumulative_bound_ok: r.cumulative_bound_ok,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct LedgerCsvRow {
    pub k: usize,
    #[serde(rename = "H_k")]
    pub h: usize,
    #[serde(rename = "Q_k")]
    pub q: Option<usize>,
    #[serde(rename = "S_k")]
    pub s: usize,
    pub eta_num: String,
    pub eta_den: String,
    pub halving_ok: bool,
    pub index_condition_ok: bool,
}

impl From<&LedgerJson> for LedgerCsvRow {
    fn from(r: &LedgerJson) -> Self {
        LedgerCsvRow {
            k: r.k,
            h: r.group_order,
            q: r.kernel_order,
            s: r.set_size,
            eta_num: r.eta.0.numer().to_string(),
            eta_den: r.eta.0.denom().to_string(),
            halving_ok: r.halving_ok,
            index_condition_ok: r.index_condition_ok,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct TowerReport {
    pub p: u64,
    pub exponents: Vec<u32>,
    pub basis: String,
    pub lift: String,
    pub seed: u64,
    pub levels: Vec<LevelReport>,
    pub ledger: Vec<LedgerJson>,
    pub index_conditions: Vec<IndexCondition>,
    pub uncovered: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_failures: Option<usize>,
    pub witness_samples: Vec<WitnessChain>,
    pub halving_all: bool,
    /// `eta_m * 2^(m-1) <= eta_1`.
    pub final_decay_ok: bool,
    pub covering_ok: bool,
    pub chains_ok: bool,
}

#[derive(Debug, Serialize)]
pub struct CantorReport {
    #[serde(serialize_with = "serialize_exact")]
    pub delta: Rational,
    pub stage: u32,
    pub interval_count: usize,
    #[serde(serialize_with = "serialize_exact")]
    pub total_length: Rational,
    pub length_matches_formula: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub difference_covers: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_gap: Option<Gap>,
}

#[derive(Debug, Serialize)]
pub struct HeisenbergReport {
    pub samples: usize,
    pub identity_failures: usize,
    pub group_laws_ok: bool,
    pub passed: bool,
    pub demo: CoverageDemo,
}

#[derive(Debug, Serialize)]
pub struct KozmaLevRow {
    pub group: String,
    pub order: usize,
    pub minimal_size: usize,
    pub certified: bool,
    pub counting_bound: usize,
    pub refuted_sizes: Vec<usize>,
    pub kozma_lev_max: usize,
    pub satisfied: bool,
    pub elements: Vec<Elem>,
}

#[derive(Debug, Serialize)]
pub struct PaperTowerSection {
    pub tower: TowerReport,
    pub random_lift_uncovered: Vec<usize>,
    pub passed: bool,
}

#[derive(Debug, Serialize)]
pub struct ReproduceReport {
    pub preset: String,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub paper_tower: Option<PaperTowerSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kozma_lev: Option<Vec<KozmaLevRow>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cantor: Option<Vec<CantorReport>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub heisenberg: Option<HeisenbergReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub torus: Option<TorusReport>,
    pub passed: bool,
}

impl Default for ReproduceReport {
    fn default() -> Self {
        ReproduceReport {
            preset: String::new(),
            seed: 0,
            paper_tower: None,
            kozma_lev: None,
            cantor: None,
            heisenberg: None,
            torus: None,
            passed: true,
        }
    }
}

//! The eight scheduling policies and a single entry point to run any of
//! them on an instance.

mod benchmarks;
mod elimination;
mod etc_rr;
mod etc_u;
mod lsept;
mod ucb_rr;
mod ucb_u;

pub use benchmarks::{opt_order, Ftpp, RoundRobin};
pub use etc_rr::EtcRr;
pub use etc_u::EtcU;
pub use lsept::Lsept;
pub use ucb_rr::{UcbRr, MAX_BATCH_EXPONENT};
pub use ucb_u::UcbU;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::engine::{run_nonpreemptive, run_processor_sharing, run_sequence, run_slotted, EngineError};
use crate::model::{Instance, RunTrace};
use crate::stats::{ConfidenceConstant, KlBonus};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Policy {
    #[serde(rename = "opt")]
    Opt,
    #[serde(rename = "ftpp")]
    Ftpp,
    #[serde(rename = "rr")]
    Rr,
    #[serde(rename = "etc-u")]
    EtcU,
    #[serde(rename = "ucb-u")]
    UcbU,
    #[serde(rename = "etc-rr")]
    EtcRr,
    #[serde(rename = "ucb-rr")]
    UcbRr,
    #[serde(rename = "lsept")]
    Lsept,
}

impl Policy {
    pub const ALL: [Policy; 8] = [
        Policy::Opt,
        Policy::Ftpp,
        Policy::Rr,
        Policy::EtcU,
        Policy::UcbU,
        Policy::EtcRr,
        Policy::UcbRr,
        Policy::Lsept,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Policy::Opt => "opt",
            Policy::Ftpp => "ftpp",
            Policy::Rr => "rr",
            Policy::EtcU => "etc-u",
            Policy::UcbU => "ucb-u",
            Policy::EtcRr => "etc-rr",
            Policy::UcbRr => "ucb-rr",
            Policy::Lsept => "lsept",
        }
    }

    /// Whether the policy needs the true means or the realized sizes.
    pub fn is_clairvoyant(self) -> bool {
        matches!(self, Policy::Opt | Policy::Ftpp)
    }

    /// Whether each started job runs to completion before any other job.
    pub fn is_nonpreemptive(self) -> bool {
        matches!(self, Policy::Opt | Policy::Ftpp | Policy::EtcU | Policy::UcbU | Policy::Lsept)
    }

    /// Whether jobs of one type always run one after another.
    pub fn is_typewise_nonpreemptive(self) -> bool {
        !matches!(self, Policy::Opt | Policy::Rr)
    }
}

impl fmt::Display for Policy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Policy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Policy::ALL.into_iter().find(|p| p.name() == s).ok_or_else(|| {
            let names: Vec<&str> = Policy::ALL.iter().map(|p| p.name()).collect();
            format!("unknown policy {s:?}, expected one of: {}", names.join(", "))
        })
    }
}

/// Tuning shared by the learning policies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolicyConfig {
    /// Slot length for UCB-RR.
    pub delta: f64,
    pub bonus: KlBonus,
    pub confidence: ConfidenceConstant,
}

pub const DEFAULT_DELTA: f64 = 0.01;

impl Default for PolicyConfig {
    fn default() -> Self {
        Self {
            delta: DEFAULT_DELTA,
            bonus: KlBonus::default(),
            confidence: ConfidenceConstant::default(),
        }
    }
}

/// Runs `policy` on `instance`. Only OPT reads realized sizes and only FTPP
/// reads the true means; the others see completed jobs only.
pub fn run_policy(policy: Policy, instance: &Instance, config: &PolicyConfig) -> Result<RunTrace, EngineError> {
    let (n, k) = (instance.n(), instance.k());
    match policy {
        Policy::Opt => run_sequence(instance, &opt_order(instance)),
        Policy::Ftpp => run_nonpreemptive(instance, &mut Ftpp::new(instance.params())),
        Policy::Rr => run_processor_sharing(instance, &mut RoundRobin::new()),
        Policy::EtcU => run_nonpreemptive(instance, &mut EtcU::new(n, k, config.confidence)),
        Policy::UcbU => run_nonpreemptive(instance, &mut UcbU::new(n, k)),
        Policy::EtcRr => run_processor_sharing(instance, &mut EtcRr::new(n, k, config.confidence)),
        Policy::UcbRr => run_slotted(instance, &mut UcbRr::new(k, config.bonus.value(n, k)), config.delta),
        Policy::Lsept => run_nonpreemptive(instance, &mut Lsept::new(k)),
    }
}

//! Placement of a form in the chain Omega/torsion < alpha < L < omega,
//! quotient dimensions, integral dependence and Nash charts.

mod dependence;
mod level;
mod nash;
mod span;

pub use dependence::{verify_dependence, DependenceRelation, DependenceReport};
pub use level::{classify, classify_with, level_passes, ChartResult, ClassificationReport, LevelTest, ReportFlags, SheafLevel};
pub use nash::nash_charts;
pub use span::{annihilator_probe, span_dim_mod};

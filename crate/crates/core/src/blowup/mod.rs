//! Blow-ups along coordinate subspaces, chart trees and the image of the
//! pulled-back forms of the root in each chart.

mod chart;
mod tree;

pub use chart::{Chart, ChartRef};
pub use tree::ResolutionTree;

#[cfg(test)]
mod tests;

//! Data-parallel batch evaluation over diagram corpora.
//!
//! With the `parallel` feature (default) large batches fan out over rayon;
//! the `_seq` variants always run sequentially and are what the feature
//! falls back to. Results are identical and order-preserving either way.

use crate::diagram::RectDiagram;
use crate::invariants::InvariantReport;
use crate::search::braid;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

const PAR_THRESHOLD: usize = 64;

pub fn invariant_reports_seq(diagrams: &[RectDiagram]) -> Vec<InvariantReport> {
    diagrams.iter().map(InvariantReport::compute).collect()
}

pub fn invariant_reports(diagrams: &[RectDiagram]) -> Vec<InvariantReport> {
    #[cfg(feature = "parallel")]
    {
        if diagrams.len() >= PAR_THRESHOLD {
            return diagrams.par_iter().map(InvariantReport::compute).collect();
        }
    }
    invariant_reports_seq(diagrams)
}

pub fn braid_all_seq(diagrams: &[RectDiagram]) -> Vec<RectDiagram> {
    diagrams.iter().map(braid).collect()
}

pub fn braid_all(diagrams: &[RectDiagram]) -> Vec<RectDiagram> {
    #[cfg(feature = "parallel")]
    {
        if diagrams.len() >= PAR_THRESHOLD {
            return diagrams.par_iter().map(braid).collect();
        }
    }
    braid_all_seq(diagrams)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_braid_closure, gen_unknot_braided, gen_unknot_rect};

    #[test]
    fn parallel_and_sequential_agree() {
        let mut corpus = Vec::new();
        for _ in 0..40 {
            corpus.push(gen_unknot_rect());
            corpus.push(gen_unknot_braided());
            corpus.push(gen_braid_closure(&[1, -1, 1], 2).unwrap());
        }
        assert_eq!(invariant_reports(&corpus), invariant_reports_seq(&corpus));
        assert_eq!(braid_all(&corpus), braid_all_seq(&corpus));
    }
}

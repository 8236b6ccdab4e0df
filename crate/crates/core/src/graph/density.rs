//! The edge-density statistic governing which patterns are "sparse enough"
//! for the degree-capped filtered graph to retain them.

use super::{GraphError, PatternGraph};
use crate::numeric::Rat;

/// max over induced subgraphs H' with at least 3 vertices of
/// (e(H') - 1) / (v(H') - 2). Patterns on fewer than 3 vertices have no
/// admissible subgraph and the statistic is undefined.
///
/// Enumerates vertex subsets directly; pattern graphs are small (the
/// searchable caps keep them at most ~a dozen vertices, and the hard cap
/// here is 20 to keep 2^k enumeration sane).
pub fn m2_density(h: &PatternGraph) -> Result<Rat, GraphError> {
    let k = h.vertex_count();
    if k < 3 {
        return Err(GraphError::Undefined(format!(
            "density statistic needs at least 3 vertices, pattern has {k}"
        )));
    }
    if k > 20 {
        return Err(GraphError::PatternTooLarge {
            got: k,
            max: 20,
            unit: "vertices",
        });
    }
    let edges = h.edges();
    let mut best: Option<Rat> = None;
    for mask in 0u32..(1 << k) {
        let v = mask.count_ones();
        if v < 3 {
            continue;
        }
        let e = edges
            .iter()
            .filter(|&&(a, b)| mask & (1 << a) != 0 && mask & (1 << b) != 0)
            .count() as i128;
        let d = Rat::new(e - 1, i128::from(v) - 2);
        if best.as_ref().is_none_or(|b| d > *b) {
            best = Some(d);
        }
    }
    Ok(best.expect("k >= 3 guarantees at least one subset"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn of(pattern: &str) -> Rat {
        m2_density(&PatternGraph::resolve(pattern).unwrap()).unwrap()
    }

    #[test]
    fn known_values() {
        assert_eq!(of("K4"), Rat::new(5, 2));
        assert_eq!(of("K3"), Rat::new(2, 1));
        assert_eq!(of("triangle"), Rat::new(2, 1));
        assert_eq!(of("P3"), Rat::new(1, 1));
        assert_eq!(of("P7"), Rat::new(1, 1));
        assert_eq!(of("M3"), Rat::new(1, 2));
        assert_eq!(of("K1,3"), Rat::new(1, 1));
        assert_eq!(of("K5"), Rat::new(3, 1));
    }

    #[test]
    fn takes_the_densest_subgraph_not_the_whole() {
        // triangle with a long pendant path: whole graph is sparse but the
        // triangle subset gives 2
        let h = PatternGraph::from_edges(
            "triangle-tail",
            7,
            &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 6)],
        )
        .unwrap();
        assert_eq!(m2_density(&h).unwrap(), Rat::new(2, 1));
    }

    #[test]
    fn undefined_below_three_vertices() {
        for p in ["P1", "P2", "M1"] {
            assert!(matches!(
                m2_density(&PatternGraph::resolve(p).unwrap()),
                Err(GraphError::Undefined(_))
            ));
        }
    }

    #[test]
    fn trees_are_exactly_one_once_a_p3_exists() {
        // every tree with >= 2 edges contains P3, giving (2-1)/(3-2) = 1,
        // and no subset of a forest beats 1
        for p in ["P4", "P11", "K1,4", "spider:2,3,4"] {
            assert_eq!(of(p), Rat::new(1, 1), "{p}");
        }
    }

    #[test]
    fn matchings_stay_below_one() {
        assert_eq!(of("M2"), Rat::new(1, 2));
        assert_eq!(of("M5"), Rat::new(1, 2));
    }
}

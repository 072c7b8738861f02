use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::{input, Result};

/// A total vertex → colour assignment. Properness is checked by
/// [`validate_colouring`], never assumed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Colouring {
    pub assignment: Vec<usize>,
    pub num_colours: usize,
}

impl Colouring {
    /// `num_colours` is the number of distinct colours that appear.
    pub fn new(assignment: Vec<usize>) -> Colouring {
        let num_colours = assignment.iter().collect::<BTreeSet<_>>().len();
        Colouring {
            assignment,
            num_colours,
        }
    }

    /// Relabels colours to `0..k` in order of first appearance.
    pub fn normalised(&self) -> Colouring {
        let mut map = std::collections::HashMap::new();
        let assignment = self
            .assignment
            .iter()
            .map(|c| {
                let next = map.len();
                *map.entry(*c).or_insert(next)
            })
            .collect::<Vec<_>>();
        Colouring {
            num_colours: map.len(),
            assignment,
        }
    }

    /// Vertices grouped by colour, classes ordered by colour value.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut by: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for (v, &c) in self.assignment.iter().enumerate() {
            by.entry(c).or_default().push(v);
        }
        by.into_values().collect()
    }
}

/// Returns the lexicographically least monochromatic edge, or `None` when the
/// colouring is proper. A length mismatch means the assignment is partial.
pub fn validate_colouring(g: &Graph, c: &Colouring) -> Result<Option<(usize, usize)>> {
    if c.assignment.len() != g.n() {
        return input(format!(
            "colouring covers {} vertices, graph has {}",
            c.assignment.len(),
            g.n()
        ));
    }
    Ok(g
        .edges()
        .into_iter()
        .find(|&(u, v)| c.assignment[u] == c.assignment[v]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families;

    #[test]
    fn k2_monochromatic() {
        let g = families::complete(2).unwrap();
        let c = Colouring::new(vec![0, 0]);
        assert_eq!(validate_colouring(&g, &c).unwrap(), Some((0, 1)));
    }

    #[test]
    fn edgeless_one_colour() {
        let g = Graph::empty(6).unwrap();
        let c = Colouring::new(vec![0; 6]);
        assert_eq!(validate_colouring(&g, &c).unwrap(), None);
        assert_eq!(c.num_colours, 1);
    }

    #[test]
    fn c5_three_colours() {
        let g = families::cycle(5).unwrap();
        let c = Colouring::new(vec![0, 1, 0, 1, 2]);
        assert_eq!(validate_colouring(&g, &c).unwrap(), None);
        assert_eq!(c.num_colours, 3);
    }

    #[test]
    fn partial_is_an_error() {
        let g = families::cycle(5).unwrap();
        assert!(validate_colouring(&g, &Colouring::new(vec![0, 1])).is_err());
    }

    #[test]
    fn normalisation() {
        let c = Colouring::new(vec![7, 3, 7, 9]).normalised();
        assert_eq!(c.assignment, vec![0, 1, 0, 2]);
        assert_eq!(c.num_colours, 3);
    }
}

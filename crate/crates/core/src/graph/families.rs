use crate::error::{Error, Result};
use crate::graph::{Graph, VertexPartition};

pub fn make_complete(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidArgument("complete graph needs n >= 1".into()));
    }
    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    Graph::new(n, edges)
}

/// Generalized star `S_{n,d}`: a `d`-clique on `0..d`, every other vertex
/// joined to the whole clique.
pub fn make_star(n: usize, d: usize) -> Result<Graph> {
    check_family(n, d, d + 1, "generalized star")?;
    let edges = (0..d).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
    Graph::new(n, edges)
}

/// Generalized path `P_{n,d}`: `i < j` adjacent iff `j - i <= d`.
pub fn make_gen_path(n: usize, d: usize) -> Result<Graph> {
    check_family(n, d, d + 1, "generalized path")?;
    let edges = (0..n).flat_map(|i| (i + 1..n.min(i + d + 1)).map(move |j| (i, j)));
    Graph::new(n, edges)
}

/// Generalized cycle `C_{n,d}`: the circulant graph with connection set
/// `{±1, …, ±d}`.
pub fn make_gen_cycle(n: usize, d: usize) -> Result<Graph> {
    check_family(n, d, 2 * d + 1, "generalized cycle")?;
    let edges = (0..n).flat_map(|i| (1..=d).map(move |k| (i, (i + k) % n)));
    Graph::new(n, edges)
}

fn check_family(n: usize, d: usize, min_n: usize, name: &str) -> Result<()> {
    if d == 0 {
        return Err(Error::InvalidArgument(format!("{name} needs d >= 1")));
    }
    if n < min_n {
        return Err(Error::InvalidArgument(format!(
            "{name} with d = {d} needs n >= {min_n}, got {n}"
        )));
    }
    Ok(())
}

/// Residue-class partition: part `i` holds the vertices `v ≡ i (mod d)`.
pub fn balanced_partition(n: usize, d: usize) -> Result<VertexPartition> {
    if d == 0 || n < d {
        return Err(Error::InvalidArgument(format!(
            "cannot split {n} vertices into {d} nonempty parts"
        )));
    }
    let parts = (0..d).map(|i| (i..n).step_by(d).collect()).collect();
    VertexPartition::new(n, parts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binom2(k: usize) -> usize {
        k * (k.saturating_sub(1)) / 2
    }

    #[test]
    fn complete_graphs() {
        assert!(make_complete(0).is_err());
        assert_eq!(make_complete(1).unwrap().num_edges(), 0);
        assert_eq!(make_complete(4).unwrap().num_edges(), 6);
        let k10 = make_complete(10).unwrap();
        assert_eq!(k10.num_edges(), 45);
        assert!(k10.degrees().iter().all(|&d| d == 9));
    }

    #[test]
    fn stars() {
        let s = make_star(4, 1).unwrap();
        assert_eq!(s.edges(), &[(0, 1), (0, 2), (0, 3)]);
        let s = make_star(4, 2).unwrap();
        assert_eq!(s.edges(), &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]);
        assert_eq!(make_star(8, 3).unwrap().num_edges(), 18);
        assert!(make_star(3, 3).is_err());
        for d in 1..5 {
            for n in d + 1..12 {
                let s = make_star(n, d).unwrap();
                assert_eq!(s.num_edges(), d * n - binom2(d + 1));
                for j in d..n {
                    assert_eq!(s.adjacency()[j], (0..d).collect::<Vec<_>>());
                }
            }
        }
    }

    #[test]
    fn generalized_paths() {
        let p = make_gen_path(5, 1).unwrap();
        assert_eq!(p.edges(), &[(0, 1), (1, 2), (2, 3), (3, 4)]);
        assert_eq!(make_gen_path(5, 2).unwrap().num_edges(), 7);
        assert_eq!(make_gen_path(6, 3).unwrap().num_edges(), 12);
        assert!(make_gen_path(2, 2).is_err());
        for d in 1..5 {
            for n in d + 1..15 {
                assert_eq!(
                    make_gen_path(n, d).unwrap().num_edges(),
                    d * n - binom2(d + 1)
                );
            }
        }
    }

    #[test]
    fn generalized_cycles() {
        let c = make_gen_cycle(5, 1).unwrap();
        assert_eq!(c.num_edges(), 5);
        assert!(c.degrees().iter().all(|&d| d == 2));
        let c = make_gen_cycle(7, 2).unwrap();
        assert_eq!(c.num_edges(), 14);
        assert!(c.degrees().iter().all(|&d| d == 4));
        let c = make_gen_cycle(9, 3).unwrap();
        assert_eq!(c.num_edges(), 27);
        assert!(c.degrees().iter().all(|&d| d == 6));
        assert!(make_gen_cycle(6, 3).is_err());
    }

    #[test]
    fn balanced_partitions() {
        assert_eq!(balanced_partition(6, 3).unwrap().part_sizes(), vec![2, 2, 2]);
        assert_eq!(balanced_partition(7, 3).unwrap().part_sizes(), vec![3, 2, 2]);
        assert_eq!(
            balanced_partition(12, 5).unwrap().part_sizes(),
            vec![3, 3, 2, 2, 2]
        );
        assert_eq!(balanced_partition(7, 3).unwrap().part(1), &[1, 4]);
        assert!(balanced_partition(2, 3).is_err());
    }
}

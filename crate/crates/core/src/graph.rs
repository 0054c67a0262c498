//! Simple undirected graphs and their graph-state stabilizer generators.
//!
//! Vertices are labeled 1..=n. Every graph induces the stabilizer
//! generators `S_v = X_v Z_{N_v}` of the associated graph state.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gf2;
use crate::pauli::{PauliOperator, MAX_QUBITS};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: u32,
    edges: Vec<(u32, u32)>, // normalized u < v, sorted
    nbr: Vec<u128>,         // nbr[v-1]: neighbor mask of vertex v
}

impl Graph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("graph needs at least one vertex"));
        }
        if n > MAX_QUBITS {
            return Err(Error::TooLarge {
                what: "Graph",
                limit: MAX_QUBITS,
                n,
            });
        }
        let mut normalized: Vec<(u32, u32)> = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u == v {
                return Err(Error::invalid(format!("self-loop at vertex {u}")));
            }
            for w in [u, v] {
                if w == 0 || w > n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            normalized.push((u.min(v) as u32, u.max(v) as u32));
        }
        normalized.sort_unstable();
        if normalized.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::invalid("duplicate edge"));
        }
        let mut nbr = vec![0u128; n];
        for &(u, v) in &normalized {
            nbr[(u - 1) as usize] |= 1u128 << (v - 1);
            nbr[(v - 1) as usize] |= 1u128 << (u - 1);
        }
        Ok(Self {
            n: n as u32,
            edges: normalized,
            nbr,
        })
    }

    /// Single cycle 1-2-…-n-1; needs n ≥ 3.
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::invalid(format!("cycle graph needs n >= 3, got {n}")));
        }
        let mut edges: Vec<(usize, usize)> = (1..n).map(|i| (i, i + 1)).collect();
        edges.push((n, 1));
        Self::new(n, &edges)
    }

    /// Erdős–Rényi sample; deterministic for a fixed seed.
    pub fn random(n: usize, edge_probability: f64, seed: u64) -> Result<Self> {
        if !(0.0..=1.0).contains(&edge_probability) {
            return Err(Error::invalid(format!(
                "edge probability {edge_probability} outside [0, 1]"
            )));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut edges = Vec::new();
        for u in 1..=n {
            for v in (u + 1)..=n {
                if rng.random::<f64>() < edge_probability {
                    edges.push((u, v));
                }
            }
        }
        Self::new(n, &edges)
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().map(|&(u, v)| (u as usize, v as usize))
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        if u == 0 || v == 0 || u > self.n() || v > self.n() || u == v {
            return false;
        }
        self.nbr[u - 1] >> (v - 1) & 1 == 1
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v == 0 || v > self.n() {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n(),
            });
        }
        Ok(())
    }

    /// Adjacent vertices of `v`, ascending.
    pub fn neighborhood(&self, v: usize) -> Result<Vec<usize>> {
        Ok(mask_to_vertices(self.neighborhood_mask(v)?))
    }

    /// Neighbor set of `v` as a bit mask (bit w-1 ↔ vertex w).
    pub fn neighborhood_mask(&self, v: usize) -> Result<u128> {
        self.check_vertex(v)?;
        Ok(self.nbr[v - 1])
    }

    #[inline]
    pub(crate) fn nbr_masks(&self) -> &[u128] {
        &self.nbr
    }

    /// The graph-state stabilizer generator `S_v = X_v Z_{N_v}`.
    pub fn stabilizer(&self, v: usize) -> Result<PauliOperator> {
        self.check_vertex(v)?;
        Ok(PauliOperator::from_masks(
            self.n,
            1u128 << (v - 1),
            self.nbr[v - 1],
            0,
        ))
    }

    /// All generators `[S_1, …, S_n]`; pairwise commuting for any graph.
    pub fn stabilizers(&self) -> Vec<PauliOperator> {
        (1..=self.n()).map(|v| self.stabilizer(v).unwrap()).collect()
    }

    /// Membership of `p` in the graph-state stabilizer group, up to global
    /// phase, decided by a GF(2) solve against the generators.
    pub fn stabilizer_group_member(&self, p: &PauliOperator) -> Result<bool> {
        if p.qubit_count() != self.n() {
            return Err(Error::SizeMismatch {
                left: p.qubit_count(),
                right: self.n(),
            });
        }
        let rows: Vec<gf2::Row> = (1..=self.n())
            .map(|v| [1u128 << (v - 1), self.nbr[v - 1]])
            .collect();
        Ok(gf2::solvable(&rows, [p.x_mask(), p.z_mask()]))
    }

    /// Edge-list document accepted back by [`Graph::parse`].
    pub fn render(&self) -> String {
        let mut out = format!("n {}\n", self.n);
        for &(u, v) in &self.edges {
            out.push_str(&format!("e {u} {v}\n"));
        }
        out
    }

    /// Parse an edge-list document, or the shorthand `cycle:<n>`.
    ///
    /// Format: first non-comment line `n <count>`, then `e <u> <v>` lines;
    /// `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let trimmed = text.trim();
        if let Some(rest) = trimmed.strip_prefix("cycle:") {
            let n: usize = rest
                .trim()
                .parse()
                .map_err(|_| Error::invalid(format!("invalid cycle size '{rest}'")))?;
            return Self::cycle(n);
        }

        let mut n: Option<usize> = None;
        let mut edges: Vec<(usize, usize)> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut fields = line.split_whitespace();
            match fields.next() {
                Some("n") => {
                    if n.is_some() {
                        return Err(Error::parse(line_no, "duplicate 'n' header"));
                    }
                    let count = fields
                        .next()
                        .and_then(|t| t.parse::<usize>().ok())
                        .ok_or_else(|| Error::parse(line_no, "expected 'n <count>'"))?;
                    if fields.next().is_some() {
                        return Err(Error::parse(line_no, "trailing tokens after 'n <count>'"));
                    }
                    n = Some(count);
                }
                Some("e") => {
                    let n = n.ok_or_else(|| {
                        Error::parse(line_no, "edge listed before the 'n <count>' header")
                    })?;
                    let u = fields
                        .next()
                        .and_then(|t| t.parse::<usize>().ok())
                        .ok_or_else(|| Error::parse(line_no, "expected 'e <u> <v>'"))?;
                    let v = fields
                        .next()
                        .and_then(|t| t.parse::<usize>().ok())
                        .ok_or_else(|| Error::parse(line_no, "expected 'e <u> <v>'"))?;
                    if fields.next().is_some() {
                        return Err(Error::parse(line_no, "trailing tokens after 'e <u> <v>'"));
                    }
                    if u == v {
                        return Err(Error::parse(line_no, format!("self-loop at vertex {u}")));
                    }
                    if u == 0 || u > n || v == 0 || v > n {
                        return Err(Error::parse(
                            line_no,
                            format!("edge {u}-{v} outside 1..={n}"),
                        ));
                    }
                    let key = (u.min(v), u.max(v));
                    if edges.contains(&key) {
                        return Err(Error::parse(line_no, format!("duplicate edge {u}-{v}")));
                    }
                    edges.push(key);
                }
                Some(token) => {
                    return Err(Error::parse(line_no, format!("unknown directive '{token}'")));
                }
                None => unreachable!(),
            }
        }
        let n = n.ok_or_else(|| Error::parse(0, "missing 'n <count>' header"))?;
        Self::new(n, &edges)
    }
}

fn mask_to_vertices(mask: u128) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    let mut m = mask;
    while m != 0 {
        out.push(m.trailing_zeros() as usize + 1);
        m &= m - 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_five_has_expected_neighborhoods() {
        let g = Graph::cycle(5).unwrap();
        assert_eq!(g.edge_count(), 5);
        assert_eq!(g.neighborhood(1).unwrap(), vec![2, 5]);
        assert_eq!(g.neighborhood(3).unwrap(), vec![2, 4]);
    }

    #[test]
    fn cycle_three_is_a_triangle() {
        let g = Graph::cycle(3).unwrap();
        assert_eq!(g.edge_count(), 3);
        assert!(g.has_edge(1, 3));
    }

    #[test]
    fn cycle_below_three_is_rejected() {
        assert!(Graph::cycle(2).is_err());
    }

    #[test]
    fn neighborhood_of_isolated_vertex_is_empty() {
        let g = Graph::new(3, &[]).unwrap();
        assert!(g.neighborhood(2).unwrap().is_empty());
    }

    #[test]
    fn complete_graph_neighborhood() {
        let g = Graph::random(4, 1.0, 0).unwrap();
        assert_eq!(g.neighborhood(2).unwrap(), vec![1, 3, 4]);
        assert_eq!(g.edge_count(), 6);
    }

    #[test]
    fn random_graph_extremes_and_determinism() {
        assert_eq!(Graph::random(5, 0.0, 7).unwrap().edge_count(), 0);
        assert_eq!(Graph::random(5, 1.0, 7).unwrap().edge_count(), 10);
        let a = Graph::random(8, 0.5, 42).unwrap();
        let b = Graph::random(8, 0.5, 42).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn stabilizers_have_one_x_and_neighborhood_zs() {
        let g = Graph::cycle(5).unwrap();
        let s = g.stabilizers();
        assert_eq!(s.len(), 5);
        assert_eq!(s[0].to_sparse_string(), "X1 Z2 Z5");
        for (v, s_v) in s.iter().enumerate() {
            assert_eq!(s_v.x_support(), vec![v + 1]);
            assert_eq!(s_v.z_support(), g.neighborhood(v + 1).unwrap());
        }
    }

    #[test]
    fn edgeless_graph_stabilizers_are_bare_x() {
        let g = Graph::new(3, &[]).unwrap();
        for (v, s_v) in g.stabilizers().iter().enumerate() {
            assert_eq!(s_v.to_sparse_string(), format!("X{}", v + 1));
        }
    }

    #[test]
    fn stabilizers_pairwise_commute_on_random_graphs() {
        for seed in 0..100u64 {
            let n = 3 + (seed % 8) as usize;
            let g = Graph::random(n, 0.5, seed).unwrap();
            let s = g.stabilizers();
            for i in 0..s.len() {
                for j in (i + 1)..s.len() {
                    assert!(s[i].commutes(&s[j]).unwrap(), "seed {seed}: S_{i} vs S_{j}");
                }
            }
        }
    }

    #[test]
    fn parse_basic_edge_list() {
        let g = Graph::parse("n 3\ne 1 2\ne 2 3").unwrap();
        assert_eq!(g.n(), 3);
        assert!(g.has_edge(1, 2) && g.has_edge(2, 3) && !g.has_edge(1, 3));
    }

    #[test]
    fn parse_reports_offending_line() {
        match Graph::parse("n 3\ne 1 1") {
            Err(Error::Parse { line, message }) => {
                assert_eq!(line, 2);
                assert!(message.contains("self-loop"));
            }
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(matches!(
            Graph::parse("n 3\ne 1 2\ne 2 1"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(matches!(
            Graph::parse("n 3\ne 1 4"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            Graph::parse("n 3\nedge 1 2"),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn parse_accepts_comments_and_shorthand() {
        let g = Graph::parse("# path\nn 3 # three vertices\ne 1 2\n\ne 2 3\n").unwrap();
        assert_eq!(g.edge_count(), 2);
        let c = Graph::parse("cycle:5").unwrap();
        assert_eq!(c, Graph::cycle(5).unwrap());
    }

    #[test]
    fn render_parse_round_trip() {
        for g in [
            Graph::cycle(7).unwrap(),
            Graph::new(4, &[]).unwrap(),
            Graph::random(9, 0.4, 3).unwrap(),
        ] {
            assert_eq!(Graph::parse(&g.render()).unwrap(), g);
        }
    }

    #[test]
    fn random_errors_stay_in_group_iff_stabilizer_products() {
        let g = Graph::cycle(5).unwrap();
        let s = g.stabilizers();
        // product of S_1 S_3 is in the group
        let prod = s[0].multiply(&s[2]).unwrap();
        assert!(g.stabilizer_group_member(&prod).unwrap());
        // a bare Z is not
        let z1 = PauliOperator::from_supports(5, &[], &[1]).unwrap();
        assert!(!g.stabilizer_group_member(&z1).unwrap());
    }
}

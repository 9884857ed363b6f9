//! The hypercube diagram of iterated Segre merges.
//!
//! Vertices are binary words of length `n`. A word encodes which adjacent
//! pairs of an (n+1)-fold product of ℙ¹ factors have been merged: a
//! maximal run of `r` ones merges `r+1` adjacent factors into a single
//! factor of dimension `2^{r+1} − 1`. Edges join words at Hamming
//! distance 1, i.e. diagrams one Segre application apart.

use super::SimplexError;

/// Label of a hypercube vertex: the merged factor dimensions in order,
/// a printable product description, and the ambient dimension of the
/// Segre target common to every vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexLabel {
    /// Projective dimension of each factor, left to right.
    pub factor_dims: Vec<u64>,
    /// Rendering such as `P^3 x P^1`.
    pub description: String,
    /// Π(dᵢ + 1) − 1; equals 2^{n+1} − 1 for every vertex.
    pub ambient_dim: u64,
}

/// The diagram of Theorem-style Segre merges: the graph Q_n with labeled
/// vertices. Words are stored lexicographically; edges as index pairs
/// `(i, j)` with `i < j`.
#[derive(Debug, Clone)]
pub struct HypercubeDiagram {
    pub n: usize,
    pub vertices: Vec<String>,
    pub edges: Vec<(usize, usize)>,
    pub labels: Vec<VertexLabel>,
}

/// Computes the factor dimensions of a binary word by the run-merging
/// rule. The word has `n` letters over an (n+1)-fold product.
pub fn factor_dims(word: &str) -> Vec<u64> {
    let bits: Vec<bool> = word.chars().map(|c| c == '1').collect();
    let n = bits.len();
    let mut dims = Vec::new();
    // Walk factor indices 0..=n; letter i joins factors i and i+1, and a
    // maximal run of ones always starts on the first factor of its block.
    let mut f = 0;
    while f <= n {
        if f < n && bits[f] {
            let mut r = 0;
            while f + r < n && bits[f + r] {
                r += 1;
            }
            dims.push((1u64 << (r + 1)) - 1);
            f += r + 1;
        } else {
            dims.push(1);
            f += 1;
        }
    }
    dims
}

fn label_for(word: &str) -> VertexLabel {
    let factor_dims = factor_dims(word);
    let description = factor_dims
        .iter()
        .map(|d| format!("P^{d}"))
        .collect::<Vec<_>>()
        .join(" x ");
    let ambient_dim = factor_dims.iter().map(|d| d + 1).product::<u64>() - 1;
    VertexLabel { factor_dims, description, ambient_dim }
}

/// Builds the diagram for `1 ≤ n ≤ 12`.
pub fn hypercube_diagram(n: usize) -> Result<HypercubeDiagram, SimplexError> {
    if n == 0 || n > 12 {
        return Err(SimplexError::Size(format!("n = {n} outside 1..=12")));
    }
    let count = 1usize << n;
    let vertices: Vec<String> = (0..count)
        .map(|v| (0..n).map(|b| if v >> (n - 1 - b) & 1 == 1 { '1' } else { '0' }).collect())
        .collect();
    // Binary strings in numeric order are already lexicographic.
    let mut edges = Vec::with_capacity(n * count / 2);
    for v in 0..count {
        for b in 0..n {
            let w = v ^ (1 << b);
            if v < w {
                edges.push((v, w));
            }
        }
    }
    edges.sort_unstable();
    let labels = vertices.iter().map(|w| label_for(w)).collect();
    Ok(HypercubeDiagram { n, vertices, edges, labels })
}

impl HypercubeDiagram {
    /// Deterministic DOT text: vertices named by their binary words in
    /// lexicographic order, LF line endings.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph segre_cube {\n");
        for (w, l) in self.vertices.iter().zip(&self.labels) {
            out.push_str(&format!("  \"{w}\" [label=\"{w}\\n{}\"];\n", l.description));
        }
        for &(i, j) in &self.edges {
            out.push_str(&format!("  \"{}\" -- \"{}\";\n", self.vertices[i], self.vertices[j]));
        }
        out.push_str("}\n");
        out
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn segment_for_n1() {
        let d = hypercube_diagram(1).unwrap();
        assert_eq!(d.vertices, vec!["0", "1"]);
        assert_eq!(d.edges, vec![(0, 1)]);
        assert_eq!(d.labels[0].description, "P^1 x P^1");
        assert_eq!(d.labels[1].description, "P^3");
    }

    #[test]
    fn square_for_n2() {
        let d = hypercube_diagram(2).unwrap();
        assert_eq!(d.vertices, vec!["00", "01", "10", "11"]);
        assert_eq!(d.edges.len(), 4);
        // (00) and (11) are not adjacent.
        assert!(!d.edges.contains(&(0, 3)));
        assert_eq!(d.labels[3].ambient_dim, 7);
    }

    #[test]
    fn tesseract_counts_and_corner_labels() {
        let d = hypercube_diagram(4).unwrap();
        assert_eq!(d.vertices.len(), 16);
        assert_eq!(d.edges.len(), 32);
        let all_ones = d.vertices.iter().position(|w| w == "1111").unwrap();
        assert_eq!(d.labels[all_ones].factor_dims, vec![31]);
        assert_eq!(d.labels[all_ones].ambient_dim, 31);
        let all_zeros = d.vertices.iter().position(|w| w == "0000").unwrap();
        assert_eq!(d.labels[all_zeros].factor_dims, vec![1, 1, 1, 1, 1]);
        assert_eq!(d.labels[all_zeros].description, "P^1 x P^1 x P^1 x P^1 x P^1");
    }

    #[test]
    fn run_merging_on_non_adjacent_ones() {
        // 101: two runs of one, an unmerged middle... the word merges
        // factors (1,2) and (3,4): dims [3, 3].
        assert_eq!(factor_dims("101"), vec![3, 3]);
        // 110: one run of two merges three factors; one factor left.
        assert_eq!(factor_dims("110"), vec![7, 1]);
        assert_eq!(factor_dims("011"), vec![1, 7]);
        // Coordinate-count conservation: Π(d+1) = 2^{n+1}.
        for word in ["0000", "1010", "0110", "1111", "1001"] {
            let dims = factor_dims(word);
            let product: u64 = dims.iter().map(|d| d + 1).product();
            assert_eq!(product, 1 << (word.len() + 1), "word {word}");
        }
    }

    #[test]
    fn regular_and_bipartite() {
        for n in 1..=6 {
            let d = hypercube_diagram(n).unwrap();
            assert_eq!(d.vertices.len(), 1 << n);
            assert_eq!(d.edges.len(), n << (n - 1));
            for v in 0..d.vertices.len() {
                assert_eq!(d.degree(v), n);
            }
            // Every edge joins words of different parity.
            for &(i, j) in &d.edges {
                let pi = d.vertices[i].chars().filter(|&c| c == '1').count() % 2;
                let pj = d.vertices[j].chars().filter(|&c| c == '1').count() % 2;
                assert_ne!(pi, pj);
            }
        }
    }

    #[test]
    fn dot_output_is_stable() {
        let d = hypercube_diagram(2).unwrap();
        let text = d.to_dot();
        assert_eq!(text, d.to_dot());
        assert!(text.starts_with("graph segre_cube {\n"));
        assert_eq!(text.matches(" -- ").count(), 4);
        assert_eq!(text.matches("[label=").count(), 4);
        assert!(!text.contains('\r'));
        let d1 = hypercube_diagram(1).unwrap().to_dot();
        assert_eq!(d1.matches(" -- ").count(), 1);
    }

    #[test]
    fn size_bounds() {
        assert!(hypercube_diagram(0).is_err());
        assert!(hypercube_diagram(13).is_err());
        assert!(hypercube_diagram(12).is_ok());
    }
}

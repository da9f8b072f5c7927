/// Multiplicity vectors over `types` kinds with total size in `1..=max_size`,
/// in lexicographic order.
pub fn multiplicity_vectors(types: usize, max_size: u32) -> Vec<Vec<u32>> {
    fn rec(types: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == types {
            if cur.iter().any(|&x| x > 0) {
                out.push(cur.clone());
            }
            return;
        }
        for x in 0..=left {
            cur.push(x);
            rec(types, left - x, cur, out);
            cur.pop();
        }
    }
    let mut out = vec![];
    rec(types, max_size, &mut Vec::with_capacity(types), &mut out);
    out
}

/// Expands a multiplicity vector into the sorted list of type indices.
pub fn expand(mult: &[u32]) -> Vec<usize> {
    mult.iter()
        .enumerate()
        .flat_map(|(i, &x)| std::iter::repeat_n(i, x as usize))
        .collect()
}

use serde::Serialize;

/// An integer partition with weakly decreasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Default)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(vec![])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Part `i` (0-based), zero past the end.
    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    /// `kappa = sum mu_i (mu_i - 2i + 1)` with 1-based `i`.
    pub fn kappa(&self) -> i64 {
        self.0
            .iter()
            .enumerate()
            .map(|(i, &m)| m as i64 * (m as i64 - 2 * (i as i64 + 1) + 1))
            .sum()
    }

    pub fn conjugate(&self) -> Self {
        let first = self.part(0);
        Partition(
            (1..=first)
                .map(|j| self.0.iter().filter(|&&m| m >= j).count() as u32)
                .collect(),
        )
    }

    /// Whether the diagram of `other` fits inside this one.
    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && (0..other.len()).all(|i| other.part(i) <= self.part(i))
    }

    /// `sum (i-1) mu_i`.
    pub fn n_statistic(&self) -> u64 {
        self.0
            .iter()
            .enumerate()
            .map(|(i, &m)| i as u64 * m as u64)
            .sum()
    }

    /// Hook lengths of all boxes.
    pub fn hooks(&self) -> Vec<u32> {
        let conj = self.conjugate();
        let mut out = vec![];
        for (i, &row) in self.0.iter().enumerate() {
            for j in 0..row as usize {
                out.push(row - j as u32 + conj.part(j) - i as u32 - 1);
            }
        }
        out
    }
}

impl std::fmt::Display for Partition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// All partitions of `k`, in reverse lexicographic order.
pub fn partitions_of(k: u32) -> Vec<Partition> {
    fn rec(left: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if left == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=left.min(max)).rev() {
            cur.push(p);
            rec(left - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = vec![];
    rec(k, k, &mut vec![], &mut out);
    out
}

/// All partitions of size at most `k`, by size.
pub fn partitions_up_to(k: u32) -> Vec<Partition> {
    (0..=k).flat_map(partitions_of).collect()
}

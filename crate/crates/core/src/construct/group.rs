use serde::{Deserialize, Serialize};

/// A finite group given by its Cayley table. Element 0 is the identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteGroup {
    #[serde(default)]
    pub name: String,
    pub cayley: Vec<Vec<usize>>,
}

impl FiniteGroup {
    pub fn new(name: impl Into<String>, cayley: Vec<Vec<usize>>) -> Self {
        Self { name: name.into(), cayley }
    }

    /// The cyclic group Z/n with element `i` standing for the residue `i`.
    pub fn cyclic(n: usize) -> Self {
        let cayley = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::new(format!("Z{n}"), cayley)
    }

    /// Symmetric group on three points, elements listed as permutations in
    /// lexicographic order of their one-line notation.
    pub fn symmetric3() -> Self {
        let perms: [[usize; 3]; 6] =
            [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let idx = |p: [usize; 3]| perms.iter().position(|&q| q == p).unwrap();
        let cayley = perms
            .iter()
            .map(|a| perms.iter().map(|b| idx([a[b[0]], a[b[1]], a[b[2]]])).collect())
            .collect();
        Self::new("S3", cayley)
    }

    pub fn order(&self) -> usize {
        self.cayley.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.cayley[a][b]
    }

    /// Inverse of `a`; only meaningful once the axioms hold.
    pub fn inverse(&self, a: usize) -> usize {
        self.cayley[a].iter().position(|&x| x == 0).expect("element without inverse")
    }

    /// Lists violations of the group axioms, identity at index 0 included.
    pub fn axiom_violations(&self) -> Vec<String> {
        let n = self.order();
        let name = if self.name.is_empty() { "group" } else { self.name.as_str() };
        if n == 0 {
            return vec![format!("{name}: empty Cayley table")];
        }
        let mut out = Vec::new();
        for (a, row) in self.cayley.iter().enumerate() {
            if row.len() != n {
                out.push(format!("{name}: row {a} has {} entries, expected {n}", row.len()));
            }
            if let Some(&x) = row.iter().find(|&&x| x >= n) {
                out.push(format!("{name}: row {a} contains out-of-range element {x}"));
            }
        }
        if !out.is_empty() {
            return out;
        }
        for a in 0..n {
            if self.mul(0, a) != a || self.mul(a, 0) != a {
                out.push(format!("{name}: element 0 is not an identity for {a}"));
                break;
            }
        }
        'assoc: for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        out.push(format!("{name}: associativity fails for ({a}, {b}, {c})"));
                        break 'assoc;
                    }
                }
            }
        }
        for a in 0..n {
            let has_inverse = (0..n).any(|b| self.mul(a, b) == 0 && self.mul(b, a) == 0);
            if !has_inverse {
                out.push(format!("{name}: element {a} has no two-sided inverse"));
            }
        }
        out
    }
}

/// An increasing chain `H_1 < H_2 < ... < H_K` with explicit embeddings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupChain {
    pub groups: Vec<FiniteGroup>,
    /// `embeddings[k]` lists the image in `H_{k+2}` of each element of `H_{k+1}`.
    pub embeddings: Vec<Vec<usize>>,
}

impl GroupChain {
    pub fn new(groups: Vec<FiniteGroup>, embeddings: Vec<Vec<usize>>) -> Self {
        Self { groups, embeddings }
    }

    /// `Z/o_1 < Z/o_2 < ...` with the embeddings `x -> (o_{k+1}/o_k) x`.
    pub fn cyclic_tower(orders: &[usize]) -> Self {
        let groups = orders.iter().map(|&n| FiniteGroup::cyclic(n)).collect();
        let embeddings = orders
            .windows(2)
            .map(|w| (0..w[0]).map(|x| x * (w[1] / w[0].max(1))).collect())
            .collect();
        Self { groups, embeddings }
    }

    /// Number of groups `K`.
    pub fn len(&self) -> usize {
        self.groups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    /// `H_k` for `1 <= k <= K`.
    pub fn group(&self, k: usize) -> &FiniteGroup {
        &self.groups[k - 1]
    }

    /// Image of `h in H_k` inside `H_{k+1}`.
    pub fn embed(&self, k: usize, h: usize) -> usize {
        self.embeddings[k - 1][h]
    }

    /// Image of `h in H_k` inside `H_m` for `m >= k`.
    pub fn embed_into(&self, k: usize, m: usize, mut h: usize) -> usize {
        for level in k..m {
            h = self.embed(level, h);
        }
        h
    }
}

/// Outcome of [`validate_chain`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainReport {
    pub levels: usize,
    pub orders: Vec<usize>,
    pub violations: Vec<String>,
    pub pass: bool,
}

/// Checks the group axioms, that each embedding is an injective homomorphism,
/// that the chain is strictly increasing, and that `|H_1| >= 2`.
pub fn validate_chain(chain: &GroupChain) -> ChainReport {
    let mut violations = Vec::new();
    if chain.is_empty() {
        violations.push("chain has no groups".to_string());
    }
    let mut axioms_ok = vec![true; chain.len()];
    for (i, g) in chain.groups.iter().enumerate() {
        let v = g.axiom_violations();
        axioms_ok[i] = v.is_empty();
        violations.extend(v.into_iter().map(|m| format!("H_{}: {m}", i + 1)));
    }
    if let Some(first) = chain.groups.first() {
        if first.order() < 2 {
            violations.push("H_1 must have at least two elements".to_string());
        }
    }
    if chain.embeddings.len() + 1 != chain.len() && !chain.is_empty() {
        violations.push(format!(
            "{} groups need {} embeddings, got {}",
            chain.len(),
            chain.len() - 1,
            chain.embeddings.len()
        ));
    }
    for (i, emb) in chain.embeddings.iter().enumerate().take(chain.len().saturating_sub(1)) {
        let (src, dst) = (&chain.groups[i], &chain.groups[i + 1]);
        let tag = format!("H_{} -> H_{}", i + 1, i + 2);
        if src.order() >= dst.order() {
            violations.push(format!(
                "{tag}: not proper (|H_{}| = {} >= |H_{}| = {})",
                i + 1,
                src.order(),
                i + 2,
                dst.order()
            ));
        }
        if emb.len() != src.order() {
            violations.push(format!("{tag}: embedding lists {} images for {} elements", emb.len(), src.order()));
            continue;
        }
        if let Some(&x) = emb.iter().find(|&&x| x >= dst.order()) {
            violations.push(format!("{tag}: image {x} outside target group"));
            continue;
        }
        let mut sorted = emb.clone();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            violations.push(format!("{tag}: not injective (image {} repeated)", w[0]));
        }
        if !(axioms_ok[i] && axioms_ok[i + 1]) {
            continue;
        }
        'hom: for a in 0..src.order() {
            for b in 0..src.order() {
                if emb[src.mul(a, b)] != dst.mul(emb[a], emb[b]) {
                    violations.push(format!("{tag}: not a homomorphism at ({a}, {b})"));
                    break 'hom;
                }
            }
        }
    }
    ChainReport {
        levels: chain.len(),
        orders: chain.groups.iter().map(FiniteGroup::order).collect(),
        pass: violations.is_empty(),
        violations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_tower_is_valid() {
        let r = validate_chain(&GroupChain::cyclic_tower(&[2, 4, 8]));
        assert!(r.pass, "{:?}", r.violations);
        assert_eq!(r.orders, vec![2, 4, 8]);
    }

    #[test]
    fn improper_chain_rejected() {
        let chain = GroupChain::new(vec![FiniteGroup::cyclic(2), FiniteGroup::cyclic(2)], vec![vec![0, 1]]);
        let r = validate_chain(&chain);
        assert!(!r.pass);
        assert!(r.violations.iter().any(|v| v.contains("not proper")));
    }

    #[test]
    fn non_associative_table_reported() {
        // Identity row/column intact, but 1*(1*2) != (1*1)*2.
        let bad = FiniteGroup::new(
            "bad",
            vec![vec![0, 1, 2], vec![1, 0, 0], vec![2, 2, 1]],
        );
        let chain = GroupChain::new(vec![bad], vec![]);
        let r = validate_chain(&chain);
        assert!(!r.pass);
        assert!(r.violations.iter().any(|v| v.contains("associativity")), "{:?}", r.violations);
    }

    #[test]
    fn trivial_first_group_rejected() {
        let chain = GroupChain::cyclic_tower(&[1, 2]);
        let r = validate_chain(&chain);
        assert!(r.violations.iter().any(|v| v.contains("at least two")));
    }

    #[test]
    fn non_homomorphic_embedding_rejected() {
        let chain = GroupChain::new(vec![FiniteGroup::cyclic(2), FiniteGroup::cyclic(4)], vec![vec![0, 1]]);
        let r = validate_chain(&chain);
        assert!(r.violations.iter().any(|v| v.contains("homomorphism")), "{:?}", r.violations);
    }

    #[test]
    fn symmetric_group_axioms() {
        let s3 = FiniteGroup::symmetric3();
        assert!(s3.axiom_violations().is_empty());
        // Z/2 generated by the transposition at index 1, then Z/3 < S3 is not a chain; use Z/2 < S3.
        let chain = GroupChain::new(vec![FiniteGroup::cyclic(2), s3], vec![vec![0, 1]]);
        assert!(validate_chain(&chain).pass);
    }
}

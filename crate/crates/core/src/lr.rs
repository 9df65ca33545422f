//! Littlewood–Richardson coefficients and the Pieri rule.
//!
//! `c^ν_{λμ}` counts semistandard fillings of the skew shape `ν/λ` with content
//! `μ` whose reverse reading word (rows right to left, top to bottom) is a
//! lattice word. These are also the Specht-filtration multiplicities of
//! `Ind_{S_a × S_b}^{S_{a+b}}(S^λ ⊠ S^μ)` over any field.

use std::collections::{BTreeMap, BTreeSet};

use crate::partition::{partitions_of, Partition};

/// Number of LR tableaux of shape `ν/λ` and content `μ`.
pub fn lr_coefficient(lambda: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    if lambda.size() + mu.size() != nu.size() || !nu.contains(lambda) || !nu.contains(mu) {
        return 0;
    }
    let mut filler = Filler {
        lambda,
        nu,
        content: mu.parts().to_vec(),
        used: vec![0; mu.len()],
        rows: nu.parts().iter().map(|&r| vec![usize::MAX; r]).collect(),
        count: 0,
    };
    filler.fill(0, nu.first());
    filler.count
}

struct Filler<'a> {
    lambda: &'a Partition,
    nu: &'a Partition,
    content: Vec<usize>,
    used: Vec<usize>,
    // entry at (row, col) of ν/λ; usize::MAX marks cells of λ
    rows: Vec<Vec<usize>>,
    count: u64,
}

impl Filler<'_> {
    // cells are visited in reverse reading order; `col` is one past the next cell
    fn fill(&mut self, row: usize, col: usize) {
        if row == self.nu.len() {
            self.count += 1;
            return;
        }
        let start = self.lambda.part(row);
        if col == start {
            let next = self.nu.part(row + 1);
            self.fill(row + 1, next);
            return;
        }
        let j = col - 1;
        // row weakly increasing: bounded by the entry to the right
        let hi = if col < self.nu.part(row) { self.rows[row][col] } else { usize::MAX };
        // column strict: above entry (if in the skew shape) must be smaller
        let lo = if row > 0 && j >= self.lambda.part(row - 1) {
            self.rows[row - 1][j] + 1
        } else {
            0
        };
        // an entry x in row r of an LR tableau satisfies x ≤ r
        let hi = hi.min(row).min(self.content.len().saturating_sub(1));
        if self.content.is_empty() {
            return;
        }
        for x in lo..=hi {
            if self.used[x] == self.content[x] {
                continue;
            }
            if x > 0 && self.used[x] + 1 > self.used[x - 1] {
                continue;
            }
            self.used[x] += 1;
            self.rows[row][j] = x;
            self.fill(row, j);
            self.used[x] -= 1;
        }
        self.rows[row][j] = usize::MAX;
    }
}

/// Pieri rule: every `ν` with `ν/λ` a horizontal strip of size `k`, each with multiplicity one.
pub fn pieri_expand(lambda: &Partition, k: usize) -> BTreeSet<Partition> {
    lambda.horizontal_strip_additions(k)
}

/// The Specht-class expansion `ν ↦ c^ν_{λμ}` of the induced product.
pub fn induce_product(lambda: &Partition, mu: &Partition) -> BTreeMap<Partition, u64> {
    partitions_of(lambda.size() + mu.size())
        .into_iter()
        .filter_map(|nu| {
            let c = lr_coefficient(lambda, mu, &nu);
            (c > 0).then_some((nu, c))
        })
        .collect()
}

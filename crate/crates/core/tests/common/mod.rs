//! Independent oracles shared by the integration tests.

#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

use virtual_specht::Partition;

pub fn part(s: &str) -> Partition {
    s.parse().unwrap()
}

pub fn class(terms: &[(&str, i64)]) -> BTreeMap<Partition, i64> {
    terms.iter().map(|(s, c)| (part(s), *c)).collect()
}

/// Number of standard Young tableaux, by removing the cell holding the largest entry.
pub fn syt_count(shape: &[usize]) -> u64 {
    fn go(shape: Vec<usize>, memo: &mut HashMap<Vec<usize>, u64>) -> u64 {
        if shape.iter().all(|&x| x == 0) {
            return 1;
        }
        if let Some(&v) = memo.get(&shape) {
            return v;
        }
        let mut total = 0;
        for i in 0..shape.len() {
            let corner = shape[i] > 0 && (i + 1 == shape.len() || shape[i + 1] < shape[i]);
            if corner {
                let mut next = shape.clone();
                next[i] -= 1;
                total += go(next, memo);
            }
        }
        memo.insert(shape, total);
        total
    }
    go(shape.to_vec(), &mut HashMap::new())
}

/// `dim S^{λ[n]}` for a stable symbol, via tableau counting.
pub fn padded_dim(lambda: &Partition, n: usize) -> u64 {
    let mut shape = vec![n - lambda.size()];
    shape.extend_from_slice(lambda.parts());
    syt_count(&shape)
}

pub fn binom(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Littlewood–Richardson coefficient by trying every filling of `ν/λ` with content `μ`.
pub fn naive_lr(lambda: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    if lambda.size() + mu.size() != nu.size() {
        return 0;
    }
    let row = |p: &Partition, i: usize| p.parts().get(i).copied().unwrap_or(0);
    if (0..nu.len()).any(|i| row(lambda, i) > row(nu, i)) || lambda.len() > nu.len() {
        return 0;
    }
    let cells: Vec<(usize, usize)> = (0..nu.len())
        .flat_map(|i| (row(lambda, i)..row(nu, i)).map(move |j| (i, j)))
        .collect();
    let mut content: Vec<usize> = Vec::new();
    for (k, &m) in mu.parts().iter().enumerate() {
        content.extend(std::iter::repeat_n(k + 1, m));
    }
    let mut count = 0;
    let mut values = content.clone();
    values.sort_unstable();
    // every distinct arrangement of the content over the cells
    loop {
        let filling: HashMap<(usize, usize), usize> = cells.iter().copied().zip(values.iter().copied()).collect();
        if is_lr_filling(&filling, &cells) {
            count += 1;
        }
        if !next_permutation(&mut values) {
            break;
        }
    }
    count
}

fn is_lr_filling(f: &HashMap<(usize, usize), usize>, cells: &[(usize, usize)]) -> bool {
    for (&(i, j), &v) in f {
        if let Some(&right) = f.get(&(i, j + 1)) {
            if right < v {
                return false;
            }
        }
        if let Some(&below) = f.get(&(i + 1, j)) {
            if below <= v {
                return false;
            }
        }
    }
    // reverse reading word: rows top to bottom, each right to left
    let mut order: Vec<(usize, usize)> = cells.to_vec();
    order.sort_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
    let mut seen: HashMap<usize, usize> = HashMap::new();
    for c in order {
        let v = f[&c];
        *seen.entry(v).or_insert(0) += 1;
        if v > 1 && seen[&v] > seen.get(&(v - 1)).copied().unwrap_or(0) {
            return false;
        }
    }
    true
}

fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Simple multiplicities of `F_p^n`: `2[D^(n)] + [D^(n-1,1)]` when `p | n`, otherwise one of each.
pub fn permutation_module_simples(n: usize, p: u32) -> BTreeMap<Partition, i64> {
    let top = Partition::row(n);
    let hook = Partition::new(vec![n - 1, 1]).unwrap();
    let trivial_mult = if n.is_multiple_of(p as usize) { 2 } else { 1 };
    [(top, trivial_mult), (hook, 1)].into_iter().collect()
}

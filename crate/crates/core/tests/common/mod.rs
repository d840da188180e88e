//! Reference implementations for the integration tests. Everything here is
//! written from the definitions, without going through the library's
//! oracles or search code.
#![allow(dead_code)]

/// Cut weight: total weight of edges with exactly one endpoint in `set`.
pub fn naive_cut(n: usize, edges: &[(usize, usize, f64)], set: &[usize]) -> f64 {
    let mut inside = vec![false; n];
    for &x in set {
        inside[x] = true;
    }
    edges.iter().filter(|&&(u, v, _)| inside[u] != inside[v]).map(|e| e.2).sum()
}

/// Determinant by Gaussian elimination with partial pivoting.
pub fn naive_det(mut a: Vec<Vec<f64>>) -> f64 {
    let n = a.len();
    let mut det = 1.0;
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs())).unwrap();
        if a[pivot][col] == 0.0 {
            return 0.0;
        }
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        det *= a[col][col];
        for row in col + 1..n {
            let factor = a[row][col] / a[col][col];
            for c in col..n {
                a[row][c] -= factor * a[col][c];
            }
        }
    }
    det
}

fn principal(cov: &[Vec<f64>], idx: &[usize]) -> Vec<Vec<f64>> {
    idx.iter().map(|&i| idx.iter().map(|&j| cov[i][j]).collect()).collect()
}

/// Mutual information between the Gaussian coordinates in `set` and the rest.
pub fn naive_mi(cov: &[Vec<f64>], set: &[usize]) -> f64 {
    let n = cov.len();
    let rest: Vec<usize> = (0..n).filter(|x| !set.contains(x)).collect();
    if set.is_empty() || rest.is_empty() {
        return 0.0;
    }
    let ld = |idx: &[usize]| naive_det(principal(cov, idx)).ln();
    let all: Vec<usize> = (0..n).collect();
    0.5 * (ld(set) + ld(&rest) - ld(&all))
}

/// Every subset of `0..n`, as sorted vectors.
pub fn subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0u64..1 << n).map(move |m| (0..n).filter(|&i| m >> i & 1 == 1).collect())
}

/// Every partition of `0..n` into exactly `k` nonempty blocks.
pub fn set_partitions(n: usize, k: usize) -> Vec<Vec<Vec<usize>>> {
    fn grow(x: usize, n: usize, k: usize, blocks: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if x == n {
            if blocks.len() == k {
                out.push(blocks.clone());
            }
            return;
        }
        // Not enough elements left to open the missing blocks.
        if k - blocks.len().min(k) > n - x {
            return;
        }
        for i in 0..blocks.len() {
            blocks[i].push(x);
            grow(x + 1, n, k, blocks, out);
            blocks[i].pop();
        }
        if blocks.len() < k {
            blocks.push(vec![x]);
            grow(x + 1, n, k, blocks, out);
            blocks.pop();
        }
    }
    let mut out = Vec::new();
    grow(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Some block holds at least a `t` fraction of some group.
pub fn naive_feasible(blocks: &[Vec<usize>], groups: &[Vec<usize>], t: f64) -> bool {
    groups.iter().any(|g| {
        blocks.iter().any(|b| {
            let hits = b.iter().filter(|x| g.contains(x)).count();
            hits as f64 >= t * g.len() as f64 - 1e-9
        })
    })
}

/// Cheapest feasible `k`-partition cost, by listing every partition.
pub fn naive_opt(f: &dyn Fn(&[usize]) -> f64, n: usize, k: usize, groups: &[Vec<usize>], t: f64) -> Option<f64> {
    set_partitions(n, k)
        .into_iter()
        .filter(|p| naive_feasible(p, groups, t))
        .map(|p| p.iter().map(|b| f(b)).sum::<f64>())
        .min_by(f64::total_cmp)
}

/// Member test for the family "some group keeps a `t` fraction outside `s`":
/// `|g ∖ s| ≥ t|g|` for some group `g`.
pub fn naive_member(s: &[usize], groups: &[Vec<usize>], t: f64) -> bool {
    groups.iter().any(|g| {
        let left = g.iter().filter(|x| !s.contains(x)).count();
        left as f64 >= t * g.len() as f64 - 1e-9
    })
}

/// Minimum of `f` over nonempty proper subsets of `0..n` satisfying `keep`.
pub fn naive_min(f: &dyn Fn(&[usize]) -> f64, n: usize, keep: &dyn Fn(&[usize]) -> bool) -> Option<f64> {
    subsets(n)
        .filter(|s| !s.is_empty() && s.len() < n && keep(s))
        .map(|s| f(&s))
        .min_by(f64::total_cmp)
}

/// Inclusion-minimal sets among those nonempty proper members attaining
/// the minimum (within `tol`).
pub fn naive_minimal_minimizers(
    f: &dyn Fn(&[usize]) -> f64,
    n: usize,
    keep: &dyn Fn(&[usize]) -> bool,
    tol: f64,
) -> Vec<Vec<usize>> {
    let Some(best) = naive_min(f, n, keep) else {
        return Vec::new();
    };
    let optimal: Vec<Vec<usize>> = subsets(n)
        .filter(|s| !s.is_empty() && s.len() < n && keep(s) && (f(s) - best).abs() <= tol)
        .collect();
    let mut minimal: Vec<Vec<usize>> = optimal
        .iter()
        .filter(|s| !optimal.iter().any(|o| o.len() < s.len() && o.iter().all(|x| s.contains(x))))
        .cloned()
        .collect();
    minimal.sort();
    minimal
}

pub fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}

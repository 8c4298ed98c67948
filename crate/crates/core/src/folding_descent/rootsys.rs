//! Finite root systems from Cartan data, for naming folded algebras.

use std::collections::{HashSet, VecDeque};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A rank-`n` irreducible root system given by simple-root Gram data.
#[derive(Debug, Clone)]
pub struct Candidate {
    pub name: String,
    /// `(α_i, α_j)` with the shortest roots normalized to length² 2.
    pub gram: Vec<Vec<i64>>,
}

fn chain(n: usize, lengths: &[i64]) -> Vec<Vec<i64>> {
    let mut g = vec![vec![0; n]; n];
    for i in 0..n {
        g[i][i] = lengths[i];
        if i + 1 < n {
            let v = -lengths[i].max(lengths[i + 1]) / 2;
            g[i][i + 1] = v;
            g[i + 1][i] = v;
        }
    }
    g
}

fn simply_laced(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<i64>> {
    let mut g = vec![vec![0; n]; n];
    for (i, row) in g.iter_mut().enumerate() {
        row[i] = 2;
    }
    for &(a, b) in edges {
        g[a][b] = -1;
        g[b][a] = -1;
    }
    g
}

/// All irreducible types of rank `n`, non-simply-laced first.
pub fn candidates(n: usize) -> Vec<Candidate> {
    let mut out = Vec::new();
    let mut push = |name: String, gram| out.push(Candidate { name, gram });
    if n == 2 {
        push("G2".into(), vec![vec![2, -3], vec![-3, 6]]);
    }
    if n == 4 {
        push("F4".into(), chain(4, &[4, 4, 2, 2]));
    }
    if n >= 2 {
        let mut c = vec![2; n];
        c[n - 1] = 4;
        push(format!("C{n}"), chain(n, &c));
    }
    if n >= 3 {
        let mut b = vec![4; n];
        b[n - 1] = 2;
        push(format!("B{n}"), chain(n, &b));
    }
    if n >= 1 {
        let edges: Vec<(usize, usize)> = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
        push(format!("A{n}"), simply_laced(n, &edges));
    }
    if n >= 4 {
        let mut edges: Vec<(usize, usize)> = (0..n - 2).map(|i| (i, i + 1)).collect();
        edges.push((n - 3, n - 1));
        push(format!("D{n}"), simply_laced(n, &edges));
    }
    if (6..=8).contains(&n) {
        let mut edges = vec![(0, 2), (1, 3)];
        edges.extend((2..n - 1).map(|i| (i, i + 1)));
        push(format!("E{n}"), simply_laced(n, &edges));
    }
    out
}

/// `A_ij = 2(α_i, α_j) / (α_j, α_j)`.
pub fn cartan_from_gram(gram: &[Vec<BigRational>]) -> Option<Vec<Vec<i64>>> {
    let n = gram.len();
    let two = BigRational::from_integer(2.into());
    let mut a = vec![vec![0; n]; n];
    for i in 0..n {
        for j in 0..n {
            let v = &two * &gram[i][j] / &gram[j][j];
            if !v.is_integer() {
                return None;
            }
            a[i][j] = i64::try_from(v.to_integer()).ok()?;
        }
    }
    Some(a)
}

pub fn int_gram(g: &[Vec<i64>]) -> Vec<Vec<BigRational>> {
    g.iter().map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect()).collect()
}

/// Whether two Cartan matrices agree after simultaneously permuting indices.
pub fn same_up_to_permutation(a: &[Vec<i64>], b: &[Vec<i64>]) -> bool {
    let n = a.len();
    if b.len() != n {
        return false;
    }
    let mut perm: Vec<usize> = (0..n).collect();
    fn search(k: usize, perm: &mut Vec<usize>, a: &[Vec<i64>], b: &[Vec<i64>]) -> bool {
        let n = perm.len();
        if k == n {
            return true;
        }
        for i in k..n {
            perm.swap(k, i);
            let ok = (0..=k).all(|j| a[k][j] == b[perm[k]][perm[j]] && a[j][k] == b[perm[j]][perm[k]]);
            if ok && search(k + 1, perm, a, b) {
                return true;
            }
            perm.swap(k, i);
        }
        false
    }
    search(0, &mut perm, a, b)
}

/// Roots in simple-root coordinates, by closure under simple reflections.
pub fn generate_roots(gram: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = gram.len();
    let inner = |v: &[i64], i: usize| -> i64 { (0..n).map(|k| v[k] * gram[k][i]).sum() };
    let simple: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|k| i64::from(k == i)).collect()).collect();
    let mut seen: HashSet<Vec<i64>> = simple.iter().cloned().collect();
    let mut queue: VecDeque<Vec<i64>> = simple.into_iter().collect();
    while let Some(v) = queue.pop_front() {
        for i in 0..n {
            let c = 2 * inner(&v, i) / gram[i][i];
            let mut r = v.clone();
            r[i] -= c;
            if seen.insert(r.clone()) {
                queue.push_back(r);
            }
        }
    }
    let mut out: Vec<Vec<i64>> = seen.into_iter().collect();
    out.sort();
    out
}

/// Root counts by length: `(total, long, short)`.
pub fn length_counts(gram: &[Vec<i64>]) -> (usize, usize, usize) {
    let roots = generate_roots(gram);
    let n = gram.len();
    let len = |v: &[i64]| -> i64 { (0..n).map(|i| (0..n).map(|j| v[i] * v[j] * gram[i][j]).sum::<i64>()).sum() };
    let lens: Vec<i64> = roots.iter().map(|r| len(r)).collect();
    let max = lens.iter().copied().max().unwrap_or(0);
    let min = lens.iter().copied().min().unwrap_or(0);
    let long = lens.iter().filter(|&&l| l == max).count();
    let short = if max == min { 0 } else { lens.iter().filter(|&&l| l == min).count() };
    (roots.len(), long, short)
}

/// Name of the irreducible type with this Cartan matrix.
pub fn identify(cartan: &[Vec<i64>]) -> Option<String> {
    let n = cartan.len();
    candidates(n).into_iter().find_map(|c| {
        let a = cartan_from_gram(&int_gram(&c.gram)).expect("integral Cartan data");
        same_up_to_permutation(cartan, &a).then_some(c.name)
    })
}

/// Simple roots of a root multiset in weight coordinates, using the lexicographic
/// positive system.
pub fn simple_roots(roots: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let positive = |v: &[BigRational]| v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_positive());
    let pos: Vec<&Vec<BigRational>> = roots.iter().filter(|r| positive(r)).collect();
    let set: HashSet<&Vec<BigRational>> = pos.iter().copied().collect();
    let mut simple: Vec<Vec<BigRational>> = pos
        .iter()
        .filter(|r| {
            !pos.iter().any(|a| {
                let diff: Vec<BigRational> = r.iter().zip(a.iter()).map(|(x, y)| x - y).collect();
                set.contains(&diff)
            })
        })
        .map(|r| (*r).clone())
        .collect();
    simple.sort();
    simple
}

/// `(λ, μ) = λᵀ M μ`.
pub fn form(m: &[Vec<BigRational>], a: &[BigRational], b: &[BigRational]) -> BigRational {
    let mut s = BigRational::zero();
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            s += x * &m[i][j] * y;
        }
    }
    s
}

/// Ratio of the longest to the shortest squared length.
pub fn length_ratio(m: &[Vec<BigRational>], roots: &[Vec<BigRational>]) -> BigRational {
    let lens: Vec<BigRational> = roots.iter().map(|r| form(m, r, r)).collect();
    let max = lens.iter().max().cloned().unwrap_or_else(BigRational::one);
    let min = lens.iter().min().cloned().unwrap_or_else(BigRational::one);
    max / min
}

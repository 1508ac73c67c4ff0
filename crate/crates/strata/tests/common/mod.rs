//! Test-only oracles shared by the integration targets.

#![allow(dead_code)]

/// Paths of a quiver avoiding the monomial relations. Arrows are
/// `(name, source, target)`; relations are arrow words in composition order.
pub fn monomial_path_count(vertices: usize, arrows: &[(&str, usize, usize)], zero: &[&[&str]], max: usize) -> usize {
    let mut count = vertices;
    let mut layer: Vec<Vec<usize>> = (0..arrows.len()).map(|i| vec![i]).collect();
    for _ in 0..max {
        let mut next = Vec::new();
        for p in &layer {
            let names: Vec<&str> = p.iter().rev().map(|&i| arrows[i].0).collect();
            if zero.iter().any(|r| names.windows(r.len()).any(|w| w == *r)) {
                continue;
            }
            count += 1;
            let end = arrows[*p.last().unwrap()].2;
            for (j, a) in arrows.iter().enumerate() {
                if a.1 == end {
                    let mut q = p.clone();
                    q.push(j);
                    next.push(q);
                }
            }
        }
        if next.is_empty() {
            return count;
        }
        layer = next;
    }
    panic!("paths longer than {max}");
}

/// `V` from the recursion with every multiplicity equal to one.
pub fn v_all_ones(leq: &[Vec<bool>]) -> Vec<Vec<i64>> {
    let n = leq.len();
    let lt = |a: usize, b: usize| a != b && leq[a][b];
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| (0..n).filter(|&j| lt(j, i)).count());
    let mut v = vec![vec![0i64; n]; n];
    for &i in &order {
        let mut row = vec![0i64; n];
        row[i] = 1;
        for j in (0..n).filter(|&j| lt(j, i)) {
            for k in (0..n).filter(|&k| leq[k][j]) {
                for t in 0..n {
                    row[t] += v[k][t];
                }
            }
            for t in 0..n {
                row[t] -= v[j][t];
            }
        }
        v[i] = row;
    }
    v
}

/// Integer determinant by cofactor expansion.
pub fn det(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    (0..n)
        .map(|c| {
            let minor: Vec<Vec<i64>> = m[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, x)| *x).collect())
                .collect();
            let s = if c % 2 == 0 { 1 } else { -1 };
            s * m[0][c] * det(&minor)
        })
        .sum()
}

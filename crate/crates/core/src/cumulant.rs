//! Set partitions and the moment-to-cumulant Möbius inversion.

/// All set partitions of `{0, .., n-1}`; blocks are sorted lists.
pub fn set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    fn rec(i: usize, n: usize, cur: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if i == n {
            out.push(cur.clone());
            return;
        }
        for b in 0..cur.len() {
            cur[b].push(i);
            rec(i + 1, n, cur, out);
            cur[b].pop();
        }
        cur.push(vec![i]);
        rec(i + 1, n, cur, out);
        cur.pop();
    }
    let mut out = Vec::new();
    rec(0, n, &mut Vec::new(), &mut out);
    out
}

/// Möbius weight `(-1)^{b-1} (b-1)!` of a partition with `b` blocks.
pub fn mobius_weight(blocks: usize) -> i64 {
    let f: i64 = (1..blocks as i64).product();
    if blocks % 2 == 1 {
        f
    } else {
        -f
    }
}

/// Joint cumulant from a moment oracle on subsets.
pub fn cumulant_from_moments<F>(n: usize, mut moment: F) -> f64
where
    F: FnMut(&[usize]) -> f64,
{
    set_partitions(n)
        .iter()
        .map(|pi| mobius_weight(pi.len()) as f64 * pi.iter().map(|b| moment(b)).product::<f64>())
        .sum()
}

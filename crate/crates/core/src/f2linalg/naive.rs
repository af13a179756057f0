//! Per-entry reference implementations used to cross-check the packed kernel.

/// Rank of a row-major boolean matrix by plain Gaussian elimination.
pub fn rank(rows: &[Vec<bool>]) -> usize {
    let mut m: Vec<Vec<bool>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| m[i][c]) else { continue };
        m.swap(r, p);
        for i in 0..m.len() {
            if i != r && m[i][c] {
                let pivot = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(pivot) {
                    *x ^= y;
                }
            }
        }
        r += 1;
    }
    r
}

fn apply(m: &[Vec<bool>], v: u64) -> u64 {
    let mut out = 0u64;
    for (i, row) in m.iter().enumerate() {
        let bit = row.iter().enumerate().filter(|&(j, &x)| x && (v >> j) & 1 == 1).count() & 1;
        out |= (bit as u64) << i;
    }
    out
}

/// Homology dimension by enumerating every vector of the middle space.
/// `d_in` is `mid × src`, `d_out` is `tgt × mid`; `mid` must be small.
pub fn homology_dim_bruteforce(d_in: &[Vec<bool>], src: usize, d_out: &[Vec<bool>], mid: usize) -> usize {
    assert!(mid <= 20 && src <= 20);
    let kernel = (0..1u64 << mid).filter(|&v| apply(d_out, v) == 0).count();
    let mut image: Vec<u64> = (0..1u64 << src).map(|v| apply(d_in, v)).collect();
    image.sort_unstable();
    image.dedup();
    (kernel / image.len()).trailing_zeros() as usize
}

/// Order of `ker(d_out)/im(d_in)` over cyclic summands Z/2^{l_i}, by
/// enumerating all elements. Returns log₂ of the order.
pub fn homology_log_order_bruteforce(
    d_in: &[Vec<u64>],
    src_levels: &[u32],
    d_out: &[Vec<u64>],
    mid_levels: &[u32],
    tgt_levels: &[u32],
) -> u32 {
    let total: u32 = mid_levels.iter().sum();
    assert!(total <= 16);
    let elems = |levels: &[u32]| -> Vec<Vec<u64>> {
        let mut out = vec![vec![]];
        for &l in levels {
            out = out
                .into_iter()
                .flat_map(|v: Vec<u64>| {
                    (0..1u64 << l).map(move |x| {
                        let mut w = v.clone();
                        w.push(x);
                        w
                    })
                })
                .collect();
        }
        out
    };
    let image_of = |m: &[Vec<u64>], x: &[u64], levels: &[u32]| -> Vec<u64> {
        m.iter()
            .zip(levels)
            .map(|(row, &l)| row.iter().zip(x).map(|(a, b)| a * b).sum::<u64>() % (1 << l))
            .collect()
    };
    let kernel = elems(mid_levels)
        .into_iter()
        .filter(|x| image_of(d_out, x, tgt_levels).iter().all(|&y| y == 0))
        .count();
    let mut image: Vec<Vec<u64>> = elems(src_levels).iter().map(|x| image_of(d_in, x, mid_levels)).collect();
    image.sort();
    image.dedup();
    (kernel / image.len()).trailing_zeros()
}

use proptest::prelude::*;
use slicess::f2linalg::naive;
use slicess::f2linalg::{homology_dim, homology_group_2n, BitMatrix, IntMatrix2n, LinalgError};

fn bits_strategy(max_r: usize, max_c: usize) -> impl Strategy<Value = Vec<Vec<bool>>> {
    (0..=max_r, 0..=max_c).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(any::<bool>(), c), r))
}

fn to_bm(rows: &[Vec<bool>], cols: usize) -> BitMatrix {
    BitMatrix::from_fn(rows.len(), cols, |i, j| rows[i][j])
}

proptest! {
    #[test]
    fn rank_nullity(m in (1usize..=64, 1usize..=64).prop_flat_map(|(r, c)|
        prop::collection::vec(prop::collection::vec(any::<bool>(), c), r)))
    {
        let cols = m[0].len();
        let bm = to_bm(&m, cols);
        let k = bm.kernel_basis();
        prop_assert_eq!(bm.rank() + k.len(), cols);
        for v in &k {
            prop_assert!(bm.mul_vec(v).is_zero());
        }
        prop_assert_eq!(BitMatrix::from_columns(cols, &k).rank(), k.len());
    }

    #[test]
    fn rank_matches_naive(m in bits_strategy(20, 20)) {
        let cols = m.first().map_or(0, Vec::len);
        prop_assert_eq!(to_bm(&m, cols).rank(), naive::rank(&m));
    }

    #[test]
    fn rank_of_transpose(m in bits_strategy(70, 70)) {
        let cols = m.first().map_or(0, Vec::len);
        let bm = to_bm(&m, cols);
        prop_assert_eq!(bm.rank(), bm.transpose().rank());
    }

    /// Random composable pairs up to 6×6: d_out is built from vectors that
    /// annihilate im(d_in) so the composite vanishes.
    #[test]
    fn homology_matches_bruteforce(
        src in 0usize..=6, mid in 0usize..=6, tgt in 0usize..=6,
        seed_in in prop::collection::vec(any::<bool>(), 36),
        seed_out in prop::collection::vec(any::<bool>(), 36),
    ) {
        let d_in = BitMatrix::from_fn(mid, src, |i, j| seed_in[i * 6 + j]);
        let annihilators = d_in.transpose().kernel_basis();
        let d_out = BitMatrix::from_fn(tgt, mid, |i, j| {
            annihilators.iter().enumerate().fold(false, |acc, (a, v)| acc ^ (seed_out[i * 6 + a] && v.get(j)))
        });
        let rows = |m: &BitMatrix| -> Vec<Vec<bool>> { (0..m.rows()).map(|i| m.row(i).to_bools()).collect() };
        let expected = naive::homology_dim_bruteforce(&rows(&d_in), src, &rows(&d_out), mid);
        prop_assert_eq!(homology_dim(&d_in, &d_out).unwrap(), expected);
    }

    /// Conjugating a direct sum of cyclic complexes by a random unimodular
    /// change of basis on the middle term must not change the homology.
    #[test]
    fn mixed_homology_matches_bruteforce(
        n in 1u32..=3,
        pieces in prop::collection::vec((1u32..=3, 1u32..=3, 0u64..8, 0u64..8), 1..=3),
        ops in prop::collection::vec((0usize..3, 0usize..3, 0u64..8), 0..6),
    ) {
        let k = pieces.len();
        let src_levels: Vec<u32> = pieces.iter().map(|p| p.0).collect();
        let tgt_levels: Vec<u32> = pieces.iter().map(|p| p.1).collect();
        let mid_levels = vec![n; k];
        let modn = 1u64 << n;
        let mut d_in = vec![vec![0u64; k]; k];
        let mut d_out = vec![vec![0u64; k]; k];
        for (i, &(a, c, x, y)) in pieces.iter().enumerate() {
            // x: Z/2^a → Z/2^n is made well defined here. d_out is kept as a raw
            // endomorphism of Z/2^n, composed with the map to Z/2^c at the end.
            let x = if n > a { (x << (n - a)) % modn } else { x % modn };
            let y = y % modn;
            let kill = if c > n { modn } else { 1 << c };
            d_in[i][i] = x;
            d_out[i][i] = if (x * y).is_multiple_of(kill) { y } else { 0 };
        }
        // Apply elementary operations: mid basis change e_s += f·e_t.
        for &(s, t, f) in &ops {
            let (s, t) = (s % k, t % k);
            if s == t { continue; }
            let src = d_in[t].clone();
            for (x, v) in d_in[s].iter_mut().zip(src) {
                *x = (*x + f * v) % modn;
            }
            // Inverse on d_out: column t -= f·column s.
            for row in d_out.iter_mut() {
                let v = row[s];
                row[t] = (row[t] + modn - (f * v) % modn) % modn;
            }
        }
        for (i, row) in d_out.iter_mut().enumerate() {
            for x in row.iter_mut() {
                let c = tgt_levels[i];
                *x = if c > n { (*x << (c - n)) % (1 << c) } else { *x % (1 << c) };
            }
        }
        let flat = |m: &Vec<Vec<u64>>| m.iter().flatten().copied().collect::<Vec<u64>>();
        let a = IntMatrix2n::with_levels(mid_levels.clone(), src_levels.clone(), flat(&d_in));
        let b = IntMatrix2n::with_levels(tgt_levels.clone(), mid_levels.clone(), flat(&d_out));
        let (Ok(a), Ok(b)) = (a, b) else { return Ok(()) };
        let expected = naive::homology_log_order_bruteforce(&d_in, &src_levels, &d_out, &mid_levels, &tgt_levels);
        match homology_group_2n(&a, &b) {
            Ok(g) => prop_assert_eq!(g.log_order(), expected),
            Err(LinalgError::CompositeNonzero) => {}
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }
}

/// Every complex Z/2^a → Z/2^b → Z/2^c with a, b, c ≤ 3.
#[test]
fn cyclic_complexes_exhaustive() {
    let mut checked = 0;
    for a in 1..=3u32 {
        for b in 1..=3u32 {
            for c in 1..=3u32 {
                for x in 0..1u64 << b {
                    for y in 0..1u64 << c {
                        let Ok(d_in) = IntMatrix2n::with_levels(vec![b], vec![a], vec![x]) else { continue };
                        let Ok(d_out) = IntMatrix2n::with_levels(vec![c], vec![b], vec![y]) else { continue };
                        if (x * y) % (1 << c) != 0 {
                            assert_eq!(homology_group_2n(&d_in, &d_out), Err(LinalgError::CompositeNonzero));
                            continue;
                        }
                        let g = homology_group_2n(&d_in, &d_out).unwrap();
                        let expected = naive::homology_log_order_bruteforce(&[vec![x]], &[a], &[vec![y]], &[b], &[c]);
                        assert_eq!(g.log_order(), expected, "a={a} b={b} c={c} x={x} y={y}");
                        // A subquotient of a cyclic group is cyclic.
                        assert!(g.rank() <= 1);
                        checked += 1;
                    }
                }
            }
        }
    }
    assert!(checked > 100);
}

/// All pairs of 2×2 matrices forming complexes F₂² → F₂² → F₂².
#[test]
fn small_f2_complexes_exhaustive() {
    for a in 0u32..16 {
        for b in 0u32..16 {
            let ma: Vec<Vec<bool>> = (0..2).map(|i| (0..2).map(|j| (a >> (2 * i + j)) & 1 == 1).collect()).collect();
            let mb: Vec<Vec<bool>> = (0..2).map(|i| (0..2).map(|j| (b >> (2 * i + j)) & 1 == 1).collect()).collect();
            let (ba, bb) = (to_bm(&ma, 2), to_bm(&mb, 2));
            match homology_dim(&ba, &bb) {
                Ok(d) => assert_eq!(d, naive::homology_dim_bruteforce(&ma, 2, &mb, 2)),
                Err(e) => {
                    assert_eq!(e, LinalgError::CompositeNonzero);
                    assert!(!bb.mul(&ba).is_zero());
                }
            }
        }
    }
}

#[test]
fn pure_mod2_mixed_agrees_with_bits() {
    let d_in = IntMatrix2n::new(3, 2, 1, vec![1, 0, 1, 1, 0, 1]).unwrap();
    let d_out = IntMatrix2n::new(1, 3, 1, vec![1, 1, 1]).unwrap();
    let g = homology_group_2n(&d_in, &d_out).unwrap();
    assert_eq!(g.rank(), homology_dim(&d_in.to_bits(), &d_out.to_bits()).unwrap());
    assert_eq!(g.exponents, vec![1; g.rank()]);
}

//! Linear algebra over Z/2^N for complexes whose summands carry their own
//! coefficient levels Z/2^l with l ≤ N.

use super::LinalgError;

/// A matrix of maps between sums of cyclic 2-groups.
///
/// Column `j` is a summand Z/2^{col_levels[j]} of the source, row `i` a
/// summand Z/2^{row_levels[i]} of the target. An entry `x` stands for the
/// map `1 ↦ x`; from Z/2^c to Z/2^r this is well defined iff
/// 2^{r−c} divides `x` mod 2^r. Entries are stored reduced mod 2^n with
/// `n` the largest level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix2n {
    rows: usize,
    cols: usize,
    n: u32,
    row_levels: Vec<u32>,
    col_levels: Vec<u32>,
    entries: Vec<u64>,
}

pub(crate) fn mask(n: u32) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

pub(crate) fn v2(x: u64, n: u32) -> u32 {
    let x = x & mask(n);
    if x == 0 {
        n
    } else {
        x.trailing_zeros()
    }
}

/// Inverse of an odd number mod 2^64; reduce as needed.
fn odd_inverse(u: u64) -> u64 {
    debug_assert!(u & 1 == 1);
    let mut x = u;
    for _ in 0..6 {
        x = x.wrapping_mul(2u64.wrapping_sub(u.wrapping_mul(x)));
    }
    x
}

impl IntMatrix2n {
    /// Uniform-level matrix over Z/2^n.
    pub fn new(rows: usize, cols: usize, n: u32, entries: Vec<u64>) -> Result<Self, LinalgError> {
        Self::with_levels(vec![n; rows], vec![n; cols], entries)
    }

    pub fn zeros(row_levels: Vec<u32>, col_levels: Vec<u32>) -> Self {
        let (rows, cols) = (row_levels.len(), col_levels.len());
        let n = row_levels.iter().chain(&col_levels).copied().max().unwrap_or(1).max(1);
        IntMatrix2n { rows, cols, n, row_levels, col_levels, entries: vec![0; rows * cols] }
    }

    /// Matrix with per-summand levels; entries row-major.
    pub fn with_levels(row_levels: Vec<u32>, col_levels: Vec<u32>, entries: Vec<u64>) -> Result<Self, LinalgError> {
        let mut m = Self::zeros(row_levels, col_levels);
        if entries.len() != m.rows * m.cols {
            return Err(LinalgError::Shape(format!(
                "{} entries for a {}x{} matrix",
                entries.len(),
                m.rows,
                m.cols
            )));
        }
        if m.n > 62 || m.row_levels.iter().chain(&m.col_levels).any(|&l| l == 0) {
            return Err(LinalgError::Shape("levels must lie in 1..=62".into()));
        }
        let mk = mask(m.n);
        for (i, e) in entries.into_iter().enumerate() {
            m.entries[i] = e & mk;
        }
        m.check_well_defined()?;
        Ok(m)
    }

    fn check_well_defined(&self) -> Result<(), LinalgError> {
        for i in 0..self.rows {
            for j in 0..self.cols {
                let (r, c) = (self.row_levels[i], self.col_levels[j]);
                if r > c && v2(self.get(i, j), r) < r - c {
                    return Err(LinalgError::IllDefined { row: i, col: j });
                }
            }
        }
        Ok(())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Largest coefficient level present.
    pub fn modulus_exponent(&self) -> u32 {
        self.n
    }

    pub fn row_levels(&self) -> &[u32] {
        &self.row_levels
    }

    pub fn col_levels(&self) -> &[u32] {
        &self.col_levels
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: u64) {
        self.entries[i * self.cols + j] = x & mask(self.n);
    }

    /// Whether every level equals 1, so the matrix is really over F₂.
    pub fn is_mod2(&self) -> bool {
        self.row_levels.iter().chain(&self.col_levels).all(|&l| l == 1)
    }

    pub fn to_bits(&self) -> super::BitMatrix {
        super::BitMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j) & 1 == 1)
    }

    /// Entry `(i, j)` of `self · rhs` as an integer mod 2^big.
    fn product_entry(&self, rhs: &IntMatrix2n, i: usize, j: usize, big: u32) -> u64 {
        let mut acc = 0u64;
        for k in 0..self.cols {
            acc = acc.wrapping_add(self.get(i, k).wrapping_mul(rhs.get(k, j)));
        }
        acc & mask(big)
    }
}

/// A finite abelian 2-group ⊕ Z/2^{e_i}, exponents sorted descending.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct Abelian2Group {
    pub exponents: Vec<u32>,
}

impl Abelian2Group {
    pub fn from_exponents(mut exponents: Vec<u32>) -> Self {
        exponents.retain(|&e| e > 0);
        exponents.sort_unstable_by(|a, b| b.cmp(a));
        Abelian2Group { exponents }
    }

    pub fn elementary(rank: usize) -> Self {
        Abelian2Group { exponents: vec![1; rank] }
    }

    pub fn trivial() -> Self {
        Self::default()
    }

    /// log₂ of the order.
    pub fn log_order(&self) -> u32 {
        self.exponents.iter().sum()
    }

    /// Minimal number of generators, the dimension of G/2.
    pub fn rank(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.exponents.is_empty()
    }

    /// Cyclic orders 2^{e_i}.
    pub fn orders(&self) -> Vec<u64> {
        self.exponents.iter().map(|&e| 1u64 << e).collect()
    }

    pub fn direct_sum(&self, other: &Abelian2Group) -> Abelian2Group {
        let mut e = self.exponents.clone();
        e.extend_from_slice(&other.exponents);
        Self::from_exponents(e)
    }
}

impl std::fmt::Display for Abelian2Group {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.exponents.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.exponents.iter().map(|e| format!("Z/{}", 1u64 << e)).collect();
        write!(f, "{}", parts.join("+"))
    }
}

/// Dense working matrix over Z/2^n.
struct Work {
    rows: usize,
    cols: usize,
    n: u32,
    a: Vec<u64>,
}

impl Work {
    fn at(&self, i: usize, j: usize) -> u64 {
        self.a[i * self.cols + j]
    }
    fn put(&mut self, i: usize, j: usize, x: u64) {
        self.a[i * self.cols + j] = x & mask(self.n);
    }
}

/// Diagonalises `w` by row and column operations, choosing pivots of
/// minimal valuation so every elimination step is an exact division.
/// Column operations are mirrored on `q` (a `w.cols`-square matrix) when
/// given. Returns the valuations of the nonzero diagonal entries.
fn smith_valuations(w: &mut Work, mut q: Option<&mut Work>) -> Vec<u32> {
    let n = w.n;
    let mk = mask(n);
    let mut vals = Vec::new();
    let mut t = 0;
    while t < w.rows.min(w.cols) {
        let mut best: Option<(u32, usize, usize)> = None;
        'search: for i in t..w.rows {
            for j in t..w.cols {
                let x = w.at(i, j);
                if x != 0 {
                    let v = x.trailing_zeros();
                    if best.is_none_or(|b| v < b.0) {
                        best = Some((v, i, j));
                        if v == 0 {
                            break 'search;
                        }
                    }
                }
            }
        }
        let Some((v, pi, pj)) = best else { break };
        if pi != t {
            for j in 0..w.cols {
                w.a.swap(pi * w.cols + j, t * w.cols + j);
            }
        }
        if pj != t {
            for i in 0..w.rows {
                w.a.swap(i * w.cols + pj, i * w.cols + t);
            }
            if let Some(q) = q.as_deref_mut() {
                for i in 0..q.rows {
                    q.a.swap(i * q.cols + pj, i * q.cols + t);
                }
            }
        }
        let uinv = odd_inverse(w.at(t, t) >> v);
        for i in t + 1..w.rows {
            let x = w.at(i, t);
            if x == 0 {
                continue;
            }
            let f = (x >> v).wrapping_mul(uinv) & mk;
            for j in t..w.cols {
                let y = w.at(i, j).wrapping_sub(f.wrapping_mul(w.at(t, j)));
                w.put(i, j, y);
            }
        }
        for j in t + 1..w.cols {
            let x = w.at(t, j);
            if x == 0 {
                continue;
            }
            let f = (x >> v).wrapping_mul(uinv) & mk;
            for i in 0..w.rows {
                let y = w.at(i, j).wrapping_sub(f.wrapping_mul(w.at(i, t)));
                w.put(i, j, y);
            }
            if let Some(q) = q.as_deref_mut() {
                for i in 0..q.rows {
                    let y = q.at(i, j).wrapping_sub(f.wrapping_mul(q.at(i, t)));
                    q.put(i, j, y);
                }
            }
        }
        vals.push(v);
        t += 1;
    }
    vals
}

/// Generators of `{x ∈ (Z/2^n)^cols : m·x = 0}` where `m` is row-major.
fn kernel_generators(rows: usize, cols: usize, n: u32, m: Vec<u64>) -> Vec<Vec<u64>> {
    let mut w = Work { rows, cols, n, a: m };
    let mut q = Work { rows: cols, cols, n, a: vec![0; cols * cols] };
    for i in 0..cols {
        q.a[i * cols + i] = 1;
    }
    let vals = smith_valuations(&mut w, Some(&mut q));
    let mut gens = Vec::new();
    for t in 0..cols {
        let scale = match vals.get(t) {
            Some(&0) => continue,
            Some(&v) => 1u64 << (n - v),
            None => 1,
        };
        gens.push((0..cols).map(|i| q.at(i, t).wrapping_mul(scale) & mask(n)).collect());
    }
    gens
}

/// Homology at the middle of `src --d_in--> mid --d_out--> tgt` with
/// mixed coefficient levels.
/// Whether `d_out ∘ d_in` vanishes as a map of mixed-level groups.
pub fn composite_is_zero(d_in: &IntMatrix2n, d_out: &IntMatrix2n) -> Result<bool, LinalgError> {
    if d_in.rows != d_out.cols || d_in.row_levels != d_out.col_levels {
        return Err(LinalgError::Shape(format!(
            "d_in has {} rows but d_out has {} columns (or their levels differ)",
            d_in.rows, d_out.cols
        )));
    }
    let big = d_in.n.max(d_out.n);
    Ok((0..d_out.rows).all(|i| {
        let r = d_out.row_levels[i];
        (0..d_in.cols).all(|j| d_out.product_entry(d_in, i, j, big) & mask(r) == 0)
    }))
}

pub fn homology_group_2n(d_in: &IntMatrix2n, d_out: &IntMatrix2n) -> Result<Abelian2Group, LinalgError> {
    if !composite_is_zero(d_in, d_out)? {
        return Err(LinalgError::CompositeNonzero);
    }
    let big = d_in.n.max(d_out.n);
    if d_in.is_mod2() && d_out.is_mod2() {
        let dim = super::homology_dim(&d_in.to_bits(), &d_out.to_bits())?;
        return Ok(Abelian2Group::elementary(dim));
    }
    let k = d_in.rows;
    let (s, t) = (d_in.cols, d_out.rows);
    let mid = &d_in.row_levels;

    // Cycles: x with d_out·x ∈ ⊕ 2^{t_i}, found as the x-part of ker [d_out | D_t].
    let wcols = k + t;
    let mut a = vec![0u64; t * wcols];
    for i in 0..t {
        for j in 0..k {
            a[i * wcols + j] = d_out.get(i, j);
        }
        a[i * wcols + k + i] = (1u64 << d_out.row_levels[i]) & mask(big);
    }
    let cycles: Vec<Vec<u64>> = kernel_generators(t, wcols, big, a)
        .into_iter()
        .map(|g| g[..k].to_vec())
        .filter(|g| g.iter().zip(mid).any(|(&x, &l)| x & mask(l) != 0))
        .collect();
    let r = cycles.len();
    if r == 0 {
        return Ok(Abelian2Group::trivial());
    }

    // Relations among the cycle generators: z with P·z ∈ im d_in + ⊕ 2^{m_i}.
    let rcols = r + s + k;
    let mut b = vec![0u64; k * rcols];
    for i in 0..k {
        for (j, g) in cycles.iter().enumerate() {
            b[i * rcols + j] = g[i];
        }
        for j in 0..s {
            b[i * rcols + r + j] = d_in.get(i, j);
        }
        b[i * rcols + r + s + i] = (1u64 << mid[i]) & mask(big);
    }
    let rel: Vec<Vec<u64>> = kernel_generators(k, rcols, big, b).into_iter().map(|g| g[..r].to_vec()).collect();

    let g = rel.len();
    let mut relm = Work { rows: r, cols: g, n: big, a: vec![0; r * g] };
    for (j, z) in rel.iter().enumerate() {
        for (i, &x) in z.iter().enumerate().take(r) {
            relm.a[i * g + j] = x;
        }
    }
    let vals = smith_valuations(&mut relm, None);
    let mut exps: Vec<u32> = vals.into_iter().collect();
    exps.extend(std::iter::repeat_n(big, r - exps.len()));
    Ok(Abelian2Group::from_exponents(exps))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn odd_inverse_works() {
        for u in (1u64..2000).step_by(2) {
            assert_eq!(u.wrapping_mul(odd_inverse(u)), 1);
        }
    }

    #[test]
    fn ill_defined_map_rejected() {
        // 1 ↦ 1 from Z/2 to Z/4 is not a homomorphism.
        let e = IntMatrix2n::with_levels(vec![2], vec![1], vec![1]);
        assert!(matches!(e, Err(LinalgError::IllDefined { .. })));
        assert!(IntMatrix2n::with_levels(vec![2], vec![1], vec![2]).is_ok());
    }

    #[test]
    fn kernel_of_times_two_on_z8() {
        let gens = kernel_generators(1, 1, 3, vec![2]);
        assert_eq!(gens, vec![vec![4]]);
    }
}

//! Exact sparse linear algebra over the rationals.
//!
//! Elimination runs on integer rows: each rational row is scaled by the lcm of
//! its denominators and kept primitive (content divided out) after every
//! update. Rationals reappear only when pivot rows are normalized at the end
//! of [`row_reduce`].

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("every candidate prime divides a denominator; retry with fresh primes")]
    NoValidPrime,
    #[error("modular rank {modular} disagrees with exact rank {exact}")]
    VerifyFailed { modular: usize, exact: usize },
    #[error("bad triplet line {line}: {reason}")]
    BadTriplet { line: usize, reason: String },
}

/// Sparse matrix of exact rationals with no stored zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), BigRational>,
}

impl RationalMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::new(n, n);
        for i in 0..n {
            m.set(i, i, BigRational::one());
        }
        m
    }

    pub fn from_dense_i64(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::new(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged dense matrix");
            for (j, &x) in row.iter().enumerate() {
                m.set(i, j, BigRational::from_integer(BigInt::from(x)));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    /// Set an entry; zero removes it. Panics when out of bounds.
    pub fn set(&mut self, row: usize, col: usize, value: BigRational) {
        assert!(row < self.rows && col < self.cols, "entry out of bounds");
        if value.is_zero() {
            self.entries.remove(&(row, col));
        } else {
            self.entries.insert((row, col), value);
        }
    }

    pub fn get(&self, row: usize, col: usize) -> BigRational {
        self.entries
            .get(&(row, col))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &BigRational)> {
        self.entries.iter()
    }

    /// Nonzero entries of one row, by column.
    pub fn row(&self, r: usize) -> Vec<(usize, BigRational)> {
        self.entries
            .range((r, 0)..(r, usize::MAX))
            .map(|(&(_, c), v)| (c, v.clone()))
            .collect()
    }

    pub fn push_row(&mut self, row: &[(usize, BigRational)]) {
        let r = self.rows;
        self.rows += 1;
        for (c, v) in row {
            self.set(r, *c, v.clone());
        }
    }

    pub fn transpose(&self) -> Self {
        RationalMatrix {
            rows: self.cols,
            cols: self.rows,
            entries: self
                .entries
                .iter()
                .map(|(&(r, c), v)| ((c, r), v.clone()))
                .collect(),
        }
    }

    /// Permute rows and columns: entry `(r, c)` moves to `(row_perm[r], col_perm[c])`.
    pub fn permuted(&self, row_perm: &[usize], col_perm: &[usize]) -> Self {
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .map(|(&(r, c), v)| ((row_perm[r], col_perm[c]), v.clone()))
                .collect(),
        }
    }

    /// Debug serialization: a `rows cols` header then one `row col p/q` line
    /// per entry.
    pub fn to_triplets(&self) -> String {
        let mut out = format!("{} {}\n", self.rows, self.cols);
        for (&(r, c), v) in &self.entries {
            out.push_str(&format!("{r} {c} {}\n", fraction_string(v)));
        }
        out
    }

    pub fn from_triplets(text: &str) -> Result<Self, LinalgError> {
        let bad = |line: usize, reason: &str| LinalgError::BadTriplet {
            line,
            reason: reason.to_string(),
        };
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty());
        let (hl, header) = lines.next().ok_or_else(|| bad(1, "missing header"))?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(usize::from_str)
            .collect::<Result<_, _>>()
            .map_err(|_| bad(hl + 1, "header must be `rows cols`"))?;
        if dims.len() != 2 {
            return Err(bad(hl + 1, "header must be `rows cols`"));
        }
        let mut m = Self::new(dims[0], dims[1]);
        for (i, line) in lines {
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts.len() != 3 {
                return Err(bad(i + 1, "expected `row col p/q`"));
            }
            let r: usize = parts[0].parse().map_err(|_| bad(i + 1, "bad row"))?;
            let c: usize = parts[1].parse().map_err(|_| bad(i + 1, "bad column"))?;
            let v = parse_fraction(parts[2]).ok_or_else(|| bad(i + 1, "bad value"))?;
            if r >= m.rows || c >= m.cols {
                return Err(bad(i + 1, "entry out of bounds"));
            }
            m.set(r, c, v);
        }
        Ok(m)
    }

    /// Rows as primitive integer rows (empty rows dropped).
    fn integer_rows(&self) -> Vec<IntRow> {
        let mut rows: Vec<Vec<(usize, BigRational)>> = vec![Vec::new(); self.rows];
        for (&(r, c), v) in &self.entries {
            rows[r].push((c, v.clone()));
        }
        rows.into_iter()
            .filter(|r| !r.is_empty())
            .map(|r| {
                let lcm = r
                    .iter()
                    .fold(BigInt::one(), |acc, (_, v)| acc.lcm(v.denom()));
                let mut row: IntRow = r
                    .into_iter()
                    .map(|(c, v)| (c, (v * BigRational::from_integer(lcm.clone())).to_integer()))
                    .collect();
                make_primitive(&mut row);
                row
            })
            .collect()
    }
}

/// `p/q` (or `p` when `q = 1`).
pub fn fraction_string(v: &BigRational) -> String {
    if v.denom().is_one() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

pub fn parse_fraction(s: &str) -> Option<BigRational> {
    match s.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p).ok()?;
            let q = BigInt::from_str(q).ok()?;
            if q.is_zero() {
                None
            } else {
                Some(BigRational::new(p, q))
            }
        }
        None => BigInt::from_str(s).ok().map(BigRational::from_integer),
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|c| fraction_string(&self.get(r, c)))
                .collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

type IntRow = Vec<(usize, BigInt)>;

fn make_primitive(row: &mut IntRow) {
    let g = row
        .iter()
        .fold(BigInt::zero(), |acc, (_, v)| acc.gcd(v));
    if !g.is_zero() && !g.is_one() {
        for (_, v) in row.iter_mut() {
            *v /= &g;
        }
    }
}

fn entry(row: &IntRow, col: usize) -> Option<&BigInt> {
    row.binary_search_by_key(&col, |&(c, _)| c)
        .ok()
        .map(|i| &row[i].1)
}

/// Eliminate `col` from `target` using `pivot`: `target ← a·target − b·pivot`
/// with the smallest integer multipliers, then make it primitive.
fn eliminate(target: &IntRow, pivot: &IntRow, col: usize) -> IntRow {
    let t = entry(target, col).expect("target has an entry in the pivot column");
    let p = entry(pivot, col).expect("pivot row has the pivot entry");
    let g = t.gcd(p);
    let a = p / &g;
    let b = t / &g;
    let mut out = Vec::with_capacity(target.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < target.len() || j < pivot.len() {
        let ci = target.get(i).map_or(usize::MAX, |e| e.0);
        let cj = pivot.get(j).map_or(usize::MAX, |e| e.0);
        let (c, v) = match ci.cmp(&cj) {
            std::cmp::Ordering::Less => {
                i += 1;
                (ci, &a * &target[i - 1].1)
            }
            std::cmp::Ordering::Greater => {
                j += 1;
                (cj, -(&b * &pivot[j - 1].1))
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
                (ci, &a * &target[i - 1].1 - &b * &pivot[j - 1].1)
            }
        };
        if !v.is_zero() {
            out.push((c, v));
        }
    }
    make_primitive(&mut out);
    out
}

/// Rank over the rationals by fraction-free elimination, choosing pivots by
/// minimal fill.
pub fn rank_exact(m: &RationalMatrix) -> usize {
    let mut rows = m.integer_rows();
    let mut rank = 0;
    let mut col_count = vec![0usize; m.cols];
    while !rows.is_empty() {
        let pi = (0..rows.len())
            .min_by_key(|&i| rows[i].len())
            .expect("rows is nonempty");
        col_count.iter_mut().for_each(|c| *c = 0);
        for row in &rows {
            for &(c, _) in row {
                col_count[c] += 1;
            }
        }
        let pivot = rows.swap_remove(pi);
        let col = pivot
            .iter()
            .map(|&(c, _)| c)
            .min_by_key(|&c| (col_count[c], c))
            .expect("stored rows are nonempty");
        rows = rows
            .into_iter()
            .filter_map(|row| {
                let r = if entry(&row, col).is_some() {
                    eliminate(&row, &pivot, col)
                } else {
                    row
                };
                (!r.is_empty()).then_some(r)
            })
            .collect();
        rank += 1;
    }
    rank
}

/// Reduced row-echelon form over the rationals and its pivot columns.
///
/// The returned matrix has one row per pivot, each with a leading 1 in its
/// pivot column and zeros in every other pivot column.
pub fn row_reduce(m: &RationalMatrix) -> (RationalMatrix, Vec<usize>) {
    let mut remaining = m.integer_rows();
    let mut done: Vec<IntRow> = Vec::new();
    let mut pivots = Vec::new();
    for col in 0..m.cols {
        let Some(pi) = (0..remaining.len())
            .filter(|&i| entry(&remaining[i], col).is_some())
            .min_by_key(|&i| remaining[i].len())
        else {
            continue;
        };
        let pivot = remaining.swap_remove(pi);
        let reduce = |row: IntRow| -> IntRow {
            if entry(&row, col).is_some() {
                eliminate(&row, &pivot, col)
            } else {
                row
            }
        };
        remaining = remaining
            .into_iter()
            .map(reduce)
            .filter(|r| !r.is_empty())
            .collect();
        done = done.into_iter().map(reduce).collect();
        done.push(pivot);
        pivots.push(col);
    }
    let mut out = RationalMatrix::new(done.len(), m.cols);
    for (r, (row, &col)) in done.iter().zip(&pivots).enumerate() {
        let lead = entry(row, col).expect("pivot entry survives").clone();
        for (c, v) in row {
            out.set(r, *c, BigRational::new(v.clone(), lead.clone()));
        }
    }
    (out, pivots)
}

/// Options for [`rank_modular_with`].
#[derive(Clone, Debug)]
pub struct ModularOptions {
    pub prime_count: usize,
    pub seed: u64,
    /// Re-run [`rank_exact`] and fail on disagreement.
    pub verify: bool,
}

impl Default for ModularOptions {
    fn default() -> Self {
        ModularOptions {
            prime_count: 3,
            seed: 0x5eed_1e55,
            verify: false,
        }
    }
}

/// Lower bound on the rational rank from `prime_count` random 62-bit primes.
pub fn rank_modular(m: &RationalMatrix, prime_count: usize) -> Result<usize, LinalgError> {
    rank_modular_with(
        m,
        &ModularOptions {
            prime_count,
            ..ModularOptions::default()
        },
    )
}

pub fn rank_modular_with(m: &RationalMatrix, opts: &ModularOptions) -> Result<usize, LinalgError> {
    let primes = random_primes(opts.prime_count.max(1), opts.seed);
    let rank = rank_modular_primes(m, &primes)?;
    if opts.verify {
        let exact = rank_exact(m);
        if exact != rank {
            return Err(LinalgError::VerifyFailed {
                modular: rank,
                exact,
            });
        }
    }
    Ok(rank)
}

/// Maximum rank over the given primes, skipping any prime that divides a
/// denominator. Ranks for distinct primes are computed concurrently.
pub fn rank_modular_primes(m: &RationalMatrix, primes: &[u64]) -> Result<usize, LinalgError> {
    let valid: Vec<u64> = primes
        .iter()
        .copied()
        .filter(|&p| {
            let bp = BigInt::from(p);
            m.entries.values().all(|v| !(v.denom() % &bp).is_zero())
        })
        .collect();
    if valid.is_empty() {
        return Err(LinalgError::NoValidPrime);
    }
    Ok(valid
        .par_iter()
        .map(|&p| rank_mod_p(m, p))
        .max()
        .expect("valid is nonempty"))
}

fn to_mod(v: &BigInt, p: u64) -> u64 {
    let r = v.mod_floor(&BigInt::from(p));
    r.to_u64().expect("residue fits in u64")
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn rank_mod_p(m: &RationalMatrix, p: u64) -> usize {
    let mut rows: Vec<Vec<(usize, u64)>> = vec![Vec::new(); m.rows];
    for (&(r, c), v) in &m.entries {
        let x = mul_mod(to_mod(v.numer(), p), inv_mod(to_mod(v.denom(), p), p), p);
        if x != 0 {
            rows[r].push((c, x));
        }
    }
    rows.retain(|r| !r.is_empty());
    let mut rank = 0;
    while !rows.is_empty() {
        let pi = (0..rows.len()).min_by_key(|&i| rows[i].len()).unwrap();
        let pivot = rows.swap_remove(pi);
        let (col, pv) = pivot[0];
        let pinv = inv_mod(pv, p);
        rows = rows
            .into_iter()
            .filter_map(|row| {
                let Ok(k) = row.binary_search_by_key(&col, |e| e.0) else {
                    return Some(row);
                };
                let f = mul_mod(row[k].1, pinv, p);
                let mut out = Vec::with_capacity(row.len() + pivot.len());
                let (mut i, mut j) = (0, 0);
                while i < row.len() || j < pivot.len() {
                    let ci = row.get(i).map_or(usize::MAX, |e| e.0);
                    let cj = pivot.get(j).map_or(usize::MAX, |e| e.0);
                    let (c, v) = if ci < cj {
                        i += 1;
                        (ci, row[i - 1].1)
                    } else if cj < ci {
                        j += 1;
                        (cj, p - mul_mod(f, pivot[j - 1].1, p))
                    } else {
                        i += 1;
                        j += 1;
                        let s = mul_mod(f, pivot[j - 1].1, p);
                        (ci, (row[i - 1].1 + p - s) % p)
                    };
                    if v != 0 {
                        out.push((c, v));
                    }
                }
                (!out.is_empty()).then_some(out)
            })
            .collect();
        rank += 1;
    }
    rank
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn random_primes(count: usize, seed: u64) -> Vec<u64> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let c = rng.gen_range((1u64 << 61)..(1u64 << 62)) | 1;
        if is_prime_u64(c) && !out.contains(&c) {
            out.push(c);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::seq::SliceRandom;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    /// Plain dense Gaussian elimination, kept deliberately naive.
    fn dense_rank(m: &RationalMatrix) -> usize {
        let mut a: Vec<Vec<BigRational>> = (0..m.rows())
            .map(|r| (0..m.cols()).map(|c| m.get(r, c)).collect())
            .collect();
        let mut rank = 0;
        for c in 0..m.cols() {
            let Some(p) = (rank..a.len()).find(|&r| !a[r][c].is_zero()) else {
                continue;
            };
            a.swap(rank, p);
            for r in 0..a.len() {
                if r != rank && !a[r][c].is_zero() {
                    let f = &a[r][c] / &a[rank][c];
                    for k in 0..m.cols() {
                        let sub = &f * &a[rank][k];
                        a[r][k] -= sub;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    fn random_matrix(rng: &mut StdRng, rows: usize, cols: usize, lo: i64, hi: i64) -> RationalMatrix {
        let dense: Vec<Vec<i64>> = (0..rows)
            .map(|_| (0..cols).map(|_| rng.gen_range(lo..=hi)).collect())
            .collect();
        RationalMatrix::from_dense_i64(&dense)
    }

    #[test]
    fn trivial_ranks() {
        assert_eq!(rank_exact(&RationalMatrix::identity(3)), 3);
        assert_eq!(rank_exact(&RationalMatrix::new(4, 5)), 0);
        assert_eq!(rank_modular(&RationalMatrix::identity(3), 1).unwrap(), 3);
    }

    #[test]
    fn random_matrices_match_dense_oracle() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..50 {
            let m = random_matrix(&mut rng, 12, 20, -3, 3);
            let r = dense_rank(&m);
            assert_eq!(rank_exact(&m), r);
            assert_eq!(rank_exact(&m.transpose()), r);
            assert_eq!(rank_modular(&m, 3).unwrap(), r);
        }
    }

    #[test]
    fn rank_deficient_products() {
        // A (8x3) times B (3x9) has rank <= 3
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..20 {
            let a = random_matrix(&mut rng, 8, 3, -4, 4);
            let b = random_matrix(&mut rng, 3, 9, -4, 4);
            let mut prod = RationalMatrix::new(8, 9);
            for i in 0..8 {
                for j in 0..9 {
                    let v = (0..3).fold(q(0), |acc, k| acc + a.get(i, k) * b.get(k, j));
                    prod.set(i, j, v);
                }
            }
            let r = dense_rank(&prod);
            assert!(r <= 3);
            assert_eq!(rank_exact(&prod), r);
            assert_eq!(rank_modular(&prod, 2).unwrap(), r);
        }
    }

    #[test]
    fn rank_is_permutation_invariant() {
        let mut rng = StdRng::seed_from_u64(3);
        let m = random_matrix(&mut rng, 9, 7, -2, 2);
        let r = rank_exact(&m);
        for _ in 0..100 {
            let mut rp: Vec<usize> = (0..9).collect();
            let mut cp: Vec<usize> = (0..7).collect();
            rp.shuffle(&mut rng);
            cp.shuffle(&mut rng);
            assert_eq!(rank_exact(&m.permuted(&rp, &cp)), r);
        }
    }

    #[test]
    fn rref_of_dependent_rows() {
        let m = RationalMatrix::from_dense_i64(&[vec![1, 2], vec![2, 4]]);
        let (red, piv) = row_reduce(&m);
        assert_eq!(piv, vec![0]);
        assert_eq!(red.rows(), 1);
        assert_eq!(red.get(0, 0), q(1));
        assert_eq!(red.get(0, 1), q(2));
        let (id, piv) = row_reduce(&RationalMatrix::identity(4));
        assert_eq!(id, RationalMatrix::identity(4));
        assert_eq!(piv, vec![0, 1, 2, 3]);
    }

    #[test]
    fn rref_of_unimodular_products_is_identity() {
        let mut rng = StdRng::seed_from_u64(19);
        let n = 10;
        for _ in 0..5 {
            // product of random elementary integer matrices
            let mut m: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
            for _ in 0..30 {
                let i = rng.gen_range(0..n);
                let j = rng.gen_range(0..n);
                if i == j {
                    continue;
                }
                let k = rng.gen_range(-2..=2);
                for c in 0..n {
                    m[i][c] += k * m[j][c];
                }
            }
            let mat = RationalMatrix::from_dense_i64(&m);
            let (red, piv) = row_reduce(&mat);
            assert_eq!(red, RationalMatrix::identity(n));
            assert_eq!(piv, (0..n).collect::<Vec<_>>());
        }
    }

    #[test]
    fn rref_rows_span_original_rows() {
        let mut rng = StdRng::seed_from_u64(23);
        for _ in 0..10 {
            let m = random_matrix(&mut rng, 6, 8, -2, 2);
            let (red, piv) = row_reduce(&m);
            assert_eq!(red.rows(), rank_exact(&m));
            // reducing an original row through the pivots leaves zero
            for r in 0..m.rows() {
                let mut v: Vec<BigRational> = (0..m.cols()).map(|c| m.get(r, c)).collect();
                for (i, &pc) in piv.iter().enumerate() {
                    let f = v[pc].clone();
                    for c in 0..m.cols() {
                        v[c] -= &f * red.get(i, c);
                    }
                }
                assert!(v.iter().all(Zero::is_zero));
            }
        }
    }

    #[test]
    fn modular_rank_with_degenerate_prime() {
        let p = 1_000_000_007u64;
        let m = RationalMatrix::from_dense_i64(&[vec![p as i64, 1], vec![0, 0]]);
        assert_eq!(rank_modular_primes(&m, &[p, 998_244_353]).unwrap(), 1);
        assert_eq!(rank_modular_primes(&m, &[p]).unwrap(), 1);
    }

    #[test]
    fn no_valid_prime() {
        let mut m = RationalMatrix::new(1, 1);
        m.set(0, 0, BigRational::new(BigInt::from(1), BigInt::from(7)));
        assert_eq!(rank_modular_primes(&m, &[7]), Err(LinalgError::NoValidPrime));
        assert_eq!(rank_modular_primes(&m, &[7, 11]).unwrap(), 1);
    }

    #[test]
    fn verify_flag_reruns_exact() {
        let m = RationalMatrix::from_dense_i64(&[vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]]);
        let opts = ModularOptions {
            verify: true,
            ..ModularOptions::default()
        };
        assert_eq!(rank_modular_with(&m, &opts).unwrap(), 2);
    }

    #[test]
    fn miller_rabin() {
        assert!(is_prime_u64(2));
        assert!(is_prime_u64(1_000_000_007));
        assert!(is_prime_u64(2_305_843_009_213_693_951)); // 2^61 - 1
        assert!(!is_prime_u64(1));
        assert!(!is_prime_u64(3_215_031_751)); // strong pseudoprime to 2,3,5,7
        assert!(!is_prime_u64(1_000_000_007 * 998_244_353));
    }

    #[test]
    fn triplet_round_trip() {
        let mut m = RationalMatrix::new(2, 3);
        m.set(0, 1, BigRational::new(BigInt::from(-3), BigInt::from(4)));
        m.set(1, 2, q(5));
        let text = m.to_triplets();
        assert_eq!(text, "2 3\n0 1 -3/4\n1 2 5\n");
        assert_eq!(RationalMatrix::from_triplets(&text).unwrap(), m);
        assert!(RationalMatrix::from_triplets("2 2\n0 5 1\n").is_err());
    }
}

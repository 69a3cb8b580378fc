//! Smith normal form over `Z` or `Z/M`, generic over the integer type.
//!
//! The same elimination runs in both settings: over `Z/M` every entry is
//! reduced to its representative in `[0, M)` after each operation, and
//! the Euclidean steps act on those representatives. All transforms are
//! exact.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// `U * A * V = D` with `D` diagonal, each diagonal entry dividing the next.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithDecomposition<I> {
    pub rows: usize,
    pub cols: usize,
    /// Diagonal of `D`, length `min(rows, cols)`; nonzero entries first.
    pub factors: Vec<I>,
    /// Working modulus, when computed over `Z/M`.
    pub modulus: Option<I>,
    pub left: Vec<Vec<I>>,
    pub left_inverse: Vec<Vec<I>>,
    pub right: Vec<Vec<I>>,
    pub right_inverse: Vec<Vec<I>>,
}

/// Result of solving `A x = b` over `Z/M` by Smith elimination.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solution<I> {
    Solvable(Vec<I>),
    Inconsistent,
}

struct Elimination<I> {
    d: Vec<Vec<I>>,
    modulus: Option<I>,
    left: Option<Vec<Vec<I>>>,
    left_inv: Option<Vec<Vec<I>>>,
    right: Option<Vec<Vec<I>>>,
    right_inv: Option<Vec<Vec<I>>>,
    rhs: Option<Vec<I>>,
}

fn identity<I: Zero + One + Clone>(n: usize) -> Vec<Vec<I>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { I::one() } else { I::zero() })
                .collect()
        })
        .collect()
}

impl<I: Integer + Signed + Clone> Elimination<I> {
    /// row_i += c * row_j
    fn add_row(&mut self, i: usize, j: usize, c: &I) {
        let m = self.modulus.clone();
        let red = |v: I| match &m {
            Some(m) => v.mod_floor(m),
            None => v,
        };
        for k in 0..self.d[i].len() {
            let v = self.d[i][k].clone() + c.clone() * self.d[j][k].clone();
            self.d[i][k] = red(v);
        }
        if let Some(u) = self.left.as_mut() {
            for k in 0..u[i].len() {
                let v = u[i][k].clone() + c.clone() * u[j][k].clone();
                u[i][k] = red(v);
            }
        }
        if let Some(ui) = self.left_inv.as_mut() {
            // U^{-1} <- U^{-1} E^{-1}: col_j -= c * col_i
            for row in ui.iter_mut() {
                let v = row[j].clone() - c.clone() * row[i].clone();
                row[j] = red(v);
            }
        }
        if let Some(b) = self.rhs.as_mut() {
            let v = b[i].clone() + c.clone() * b[j].clone();
            b[i] = red(v);
        }
    }

    /// col_i += c * col_j
    fn add_col(&mut self, i: usize, j: usize, c: &I) {
        let m = self.modulus.clone();
        let red = |v: I| match &m {
            Some(m) => v.mod_floor(m),
            None => v,
        };
        for row in self.d.iter_mut() {
            let v = row[i].clone() + c.clone() * row[j].clone();
            row[i] = red(v);
        }
        if let Some(vm) = self.right.as_mut() {
            for row in vm.iter_mut() {
                let v = row[i].clone() + c.clone() * row[j].clone();
                row[i] = red(v);
            }
        }
        if let Some(vi) = self.right_inv.as_mut() {
            // V^{-1} <- E^{-1} V^{-1}: row_j -= c * row_i
            for k in 0..vi[j].len() {
                let v = vi[j][k].clone() - c.clone() * vi[i][k].clone();
                vi[j][k] = red(v);
            }
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.d.swap(i, j);
        if let Some(u) = self.left.as_mut() {
            u.swap(i, j);
        }
        if let Some(ui) = self.left_inv.as_mut() {
            for row in ui.iter_mut() {
                row.swap(i, j);
            }
        }
        if let Some(b) = self.rhs.as_mut() {
            b.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in self.d.iter_mut() {
            row.swap(i, j);
        }
        if let Some(v) = self.right.as_mut() {
            for row in v.iter_mut() {
                row.swap(i, j);
            }
        }
        if let Some(vi) = self.right_inv.as_mut() {
            vi.swap(i, j);
        }
    }

    fn negate_row(&mut self, i: usize) {
        let m = self.modulus.clone();
        let red = |v: I| match &m {
            Some(m) => v.mod_floor(m),
            None => v,
        };
        for x in self.d[i].iter_mut() {
            *x = red(-x.clone());
        }
        if let Some(u) = self.left.as_mut() {
            for x in u[i].iter_mut() {
                *x = red(-x.clone());
            }
        }
        if let Some(ui) = self.left_inv.as_mut() {
            for row in ui.iter_mut() {
                row[i] = red(-row[i].clone());
            }
        }
        if let Some(b) = self.rhs.as_mut() {
            b[i] = red(-b[i].clone());
        }
    }

    fn run(&mut self) {
        let rows = self.d.len();
        let cols = if rows == 0 { 0 } else { self.d[0].len() };
        for t in 0..rows.min(cols) {
            // smallest nonzero entry of the trailing block as pivot
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if !self.d[i][j].is_zero()
                        && best.is_none_or(|(bi, bj)| self.d[i][j].abs() < self.d[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let mut changed = false;
                for i in t + 1..rows {
                    if self.d[i][t].is_zero() {
                        continue;
                    }
                    let q = self.d[i][t].div_floor(&self.d[t][t]);
                    self.add_row(i, t, &(-q));
                    if !self.d[i][t].is_zero() {
                        self.swap_rows(t, i);
                        changed = true;
                    }
                }
                for j in t + 1..cols {
                    if self.d[t][j].is_zero() {
                        continue;
                    }
                    let q = self.d[t][j].div_floor(&self.d[t][t]);
                    self.add_col(j, t, &(-q));
                    if !self.d[t][j].is_zero() {
                        self.swap_cols(t, j);
                        changed = true;
                    }
                }
                if changed {
                    continue;
                }
                // pivot must divide the rest of the trailing block
                let offender = (t + 1..rows)
                    .find(|&i| (t + 1..cols).any(|j| !self.d[i][j].is_multiple_of(&self.d[t][t])));
                match offender {
                    Some(i) => self.add_row(t, i, &I::one()),
                    None => break,
                }
            }
            if self.d[t][t].is_negative() {
                self.negate_row(t);
            }
        }
    }
}

/// Smith decomposition over `Z` (`modulus = None`) or `Z/M`.
pub fn smith_normal_form<I: Integer + Signed + Clone>(
    a: &[Vec<I>],
    modulus: Option<I>,
) -> Result<SmithDecomposition<I>> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    if a.iter().any(|r| r.len() != cols) {
        return Err(Error::Structural("ragged matrix".into()));
    }
    if let Some(m) = &modulus {
        if !m.is_positive() {
            return Err(Error::Structural("modulus must be positive".into()));
        }
    }
    let mut e = Elimination {
        d: a.to_vec(),
        modulus: modulus.clone(),
        left: Some(identity(rows)),
        left_inv: Some(identity(rows)),
        right: Some(identity(cols)),
        right_inv: Some(identity(cols)),
        rhs: None,
    };
    if let Some(m) = &modulus {
        for row in e.d.iter_mut() {
            for x in row.iter_mut() {
                *x = x.mod_floor(m);
            }
        }
    }
    e.run();
    Ok(SmithDecomposition {
        rows,
        cols,
        factors: (0..rows.min(cols)).map(|i| e.d[i][i].clone()).collect(),
        modulus,
        left: e.left.unwrap(),
        left_inverse: e.left_inv.unwrap(),
        right: e.right.unwrap(),
        right_inverse: e.right_inv.unwrap(),
    })
}

/// Diagonal of the Smith form only, without transforms.
pub fn invariant_factors<I: Integer + Signed + Clone>(a: &[Vec<I>], modulus: Option<I>) -> Vec<I> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut e = Elimination {
        d: a.iter()
            .map(|r| {
                r.iter()
                    .map(|x| match &modulus {
                        Some(m) => x.mod_floor(m),
                        None => x.clone(),
                    })
                    .collect()
            })
            .collect(),
        modulus,
        left: None,
        left_inv: None,
        right: None,
        right_inv: None,
        rhs: None,
    };
    e.run();
    (0..rows.min(cols)).map(|i| e.d[i][i].clone()).collect()
}

/// Solves `A x = b` over `Z/M`. With `D = U A V`, the system becomes
/// `D y = U b`, `x = V y`.
pub fn solve_mod<I: Integer + Signed + Clone>(
    a: &[Vec<I>],
    b: &[I],
    modulus: I,
) -> Result<Solution<I>> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    if b.len() != rows {
        return Err(Error::Structural(
            "right-hand side length differs from row count".into(),
        ));
    }
    let reduce = |x: &I| x.mod_floor(&modulus);
    let mut e = Elimination {
        d: a.iter().map(|r| r.iter().map(reduce).collect()).collect(),
        modulus: Some(modulus.clone()),
        left: None,
        left_inv: None,
        right: Some(identity(cols)),
        right_inv: None,
        rhs: Some(b.iter().map(reduce).collect()),
    };
    e.run();
    let ub = e.rhs.take().unwrap();
    let v = e.right.take().unwrap();
    let mut y = vec![I::zero(); cols];
    for i in 0..rows {
        let d = if i < cols {
            e.d[i][i].clone()
        } else {
            I::zero()
        };
        let g = d.gcd(&modulus);
        if !ub[i].is_multiple_of(&g) {
            return Ok(Solution::Inconsistent);
        }
        if i < cols && !d.is_zero() {
            // (d/g) y = (ub/g) mod (M/g)
            let m_g = modulus.clone() / g.clone();
            let inv = mod_inverse((d / g.clone()).mod_floor(&m_g), &m_g);
            y[i] = ((ub[i].clone() / g) * inv).mod_floor(&m_g);
        }
    }
    let x = (0..cols)
        .map(|r| {
            (0..cols)
                .fold(I::zero(), |acc, k| acc + v[r][k].clone() * y[k].clone())
                .mod_floor(&modulus)
        })
        .collect();
    Ok(Solution::Solvable(x))
}

fn mod_inverse<I: Integer + Signed + Clone>(a: I, m: &I) -> I {
    if m.is_one() {
        return I::zero();
    }
    let e = a.extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(m)
}

fn mat_mul<I: Integer + Clone>(a: &[Vec<I>], b: &[Vec<I>]) -> Vec<Vec<I>> {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner).fold(I::zero(), |acc, k| acc + row[k].clone() * b[k][j].clone())
                })
                .collect()
        })
        .collect()
}

impl<I: Integer + Signed + Clone> SmithDecomposition<I> {
    /// The diagonal matrix `D`.
    pub fn diagonal(&self) -> Vec<Vec<I>> {
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| {
                        if i == j {
                            self.factors[i].clone()
                        } else {
                            I::zero()
                        }
                    })
                    .collect()
            })
            .collect()
    }

    /// Checks `U A V = D`, `U U^{-1} = I`, `V V^{-1} = I` and the
    /// divisibility chain, all modulo the working modulus if any.
    pub fn verify(&self, a: &[Vec<I>]) -> bool {
        let red = |m: Vec<Vec<I>>| -> Vec<Vec<I>> {
            match &self.modulus {
                Some(md) => m
                    .into_iter()
                    .map(|r| r.into_iter().map(|x| x.mod_floor(md)).collect())
                    .collect(),
                None => m,
            }
        };
        let uav = red(mat_mul(&mat_mul(&self.left, a), &self.right));
        let chain = self.factors.windows(2).all(|w| {
            if w[0].is_zero() {
                w[1].is_zero()
            } else {
                w[1].is_multiple_of(&w[0])
            }
        });
        uav == red(self.diagonal())
            && red(mat_mul(&self.left, &self.left_inverse)) == identity(self.rows)
            && red(mat_mul(&self.right, &self.right_inverse)) == identity(self.cols)
            && chain
    }
}

/// Row module of a sparse matrix over the local ring `Z/p^e`, kept in a
/// Howell-style echelon form: one pivot row per leading column, and for every
/// pivot with leading coefficient of valuation `v` the multiple
/// `p^(e-v) * pivot` is reduced in as well. The module then has exactly
/// `p^(sum_c (e - v_c))` elements.
#[derive(Debug, Clone)]
pub struct LocalRowModule {
    p: u64,
    e: u32,
    q: u64,
    pivots: Vec<Option<Vec<(usize, u64)>>>,
}

impl LocalRowModule {
    pub fn new(cols: usize, p: u64, e: u32) -> Self {
        LocalRowModule {
            p,
            e,
            q: p.pow(e),
            pivots: vec![None; cols],
        }
    }

    fn valuation(&self, mut a: u64) -> u32 {
        let mut v = 0;
        while a.is_multiple_of(self.p) && v < self.e {
            a /= self.p;
            v += 1;
        }
        v
    }

    fn mulmod(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.q as u128) as u64
    }

    fn scaled(&self, row: &[(usize, u64)], c: u64) -> Vec<(usize, u64)> {
        row.iter()
            .map(|&(k, v)| (k, self.mulmod(v, c)))
            .filter(|&(_, v)| v != 0)
            .collect()
    }

    /// `a - c * b` for sparse rows sorted by column.
    fn sub_scaled(&self, a: &[(usize, u64)], b: &[(usize, u64)], c: u64) -> Vec<(usize, u64)> {
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let (col, v) = match (a.get(i), b.get(j)) {
                (Some(&(ca, va)), Some(&(cb, _))) if ca < cb => {
                    i += 1;
                    (ca, va)
                }
                (Some(&(ca, va)), Some(&(cb, vb))) if ca == cb => {
                    i += 1;
                    j += 1;
                    (ca, (va + self.q - self.mulmod(c, vb)) % self.q)
                }
                (_, Some(&(cb, vb))) => {
                    j += 1;
                    (cb, (self.q - self.mulmod(c, vb)) % self.q)
                }
                (Some(&(ca, va)), None) => {
                    i += 1;
                    (ca, va)
                }
                (None, None) => unreachable!(),
            };
            if v != 0 {
                out.push((col, v));
            }
        }
        out
    }

    fn unit_inverse(&self, u: u64) -> u64 {
        let e = (u as i128).extended_gcd(&(self.q as i128));
        e.x.mod_floor(&(self.q as i128)) as u64
    }

    /// Adds a row given as `(column, value)` pairs; values are reduced mod `p^e`.
    pub fn insert(&mut self, row: impl IntoIterator<Item = (usize, i64)>) {
        let q = self.q as i64;
        let mut r: Vec<(usize, u64)> = row
            .into_iter()
            .map(|(c, v)| (c, v.rem_euclid(q) as u64))
            .filter(|&(_, v)| v != 0)
            .collect();
        r.sort_by_key(|&(c, _)| c);
        r.dedup_by(|b, a| {
            if a.0 == b.0 {
                a.1 = (a.1 + b.1) % self.q;
                true
            } else {
                false
            }
        });
        r.retain(|&(_, v)| v != 0);
        let mut queue = vec![r];
        while let Some(mut r) = queue.pop() {
            while let Some(&(c, a)) = r.first() {
                let va = self.valuation(a);
                match self.pivots[c].take() {
                    None => {
                        if va > 0 {
                            queue.push(self.scaled(&r, self.p.pow(self.e - va)));
                        }
                        self.pivots[c] = Some(r);
                        break;
                    }
                    Some(piv) => {
                        let b = piv[0].1;
                        let vb = self.valuation(b);
                        if va >= vb {
                            let ub = b / self.p.pow(vb);
                            let ua = a / self.p.pow(vb);
                            let f = self.mulmod(ua, self.unit_inverse(ub));
                            r = self.sub_scaled(&r, &piv, f);
                            self.pivots[c] = Some(piv);
                        } else {
                            if va > 0 {
                                queue.push(self.scaled(&r, self.p.pow(self.e - va)));
                            }
                            self.pivots[c] = Some(r);
                            r = piv;
                        }
                    }
                }
            }
        }
    }

    /// `log_p` of the number of elements of the row module.
    pub fn log_size(&self) -> u64 {
        self.pivots
            .iter()
            .flatten()
            .map(|row| u64::from(self.e - self.valuation(row[0].1)))
            .sum()
    }
}

/// Prime-power factorization of a positive integer.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn big(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    #[test]
    fn classic_example() {
        let a = big(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let s = smith_normal_form(&a, None).unwrap();
        assert_eq!(
            s.factors,
            vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]
        );
        assert!(s.verify(&a));
    }

    #[test]
    fn rectangular_and_zero() {
        let a = big(&[&[0, 0], &[0, 0], &[0, 0]]);
        let s = smith_normal_form(&a, None).unwrap();
        assert_eq!(s.factors, vec![BigInt::from(0), BigInt::from(0)]);
        assert!(s.verify(&a));
        let b = big(&[&[4, 6, 8, 10]]);
        let s = smith_normal_form(&b, None).unwrap();
        assert_eq!(s.factors, vec![BigInt::from(2)]);
        assert!(s.verify(&b));
    }

    #[test]
    fn modular_form() {
        let a: Vec<Vec<i64>> = vec![vec![2, 4], vec![6, 8]];
        let s = smith_normal_form(&a, Some(12)).unwrap();
        assert!(s.verify(&a));
        // over Z the factors are 2, 4; modulo 12 their gcds with 12 survive
        assert_eq!(
            s.factors.iter().map(|f| f.gcd(&12)).collect::<Vec<_>>(),
            vec![2, 4]
        );
    }

    #[test]
    fn solve_mod_small() {
        let a: Vec<Vec<i64>> = vec![vec![2, 0], vec![0, 3]];
        match solve_mod(&a, &[4, 3], 6).unwrap() {
            Solution::Solvable(x) => {
                assert_eq!((2 * x[0]) % 6, 4);
                assert_eq!((3 * x[1]) % 6, 3);
            }
            Solution::Inconsistent => panic!("system is solvable"),
        }
        assert_eq!(solve_mod(&a, &[1, 0], 6).unwrap(), Solution::Inconsistent);
    }

    #[test]
    fn local_module_size() {
        // rows (2, 0) and (0, 1) over Z/4: module {0,2} x Z/4 has 8 elements
        let mut m = LocalRowModule::new(2, 2, 2);
        m.insert([(0, 2)]);
        m.insert([(1, 1)]);
        assert_eq!(m.log_size(), 3);
        // (2, 1) alone over Z/4 generates a cyclic module of order 4
        let mut m = LocalRowModule::new(2, 2, 2);
        m.insert([(0, 2), (1, 1)]);
        assert_eq!(m.log_size(), 2);
    }

    #[test]
    fn factorization() {
        assert_eq!(factorize(12), vec![(2, 2), (3, 1)]);
        assert_eq!(factorize(1), vec![]);
        assert_eq!(factorize(13), vec![(13, 1)]);
    }
}

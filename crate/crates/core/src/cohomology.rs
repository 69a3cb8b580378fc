//! Normalized group cochains with coefficients in `Z/M`, the additive model
//! of `mu_M` inside the multiplicative group of the ground field.
//!
//! Cochain values are stored densely in lexicographic order of their
//! arguments; normalized means any identity argument gives 0.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_bigint::BigUint;
use num_integer::Integer;

use crate::error::{Error, Result};
use crate::groups::{named, FiniteGroup, GroupHom};
use crate::smith::{factorize, invariant_factors, solve_mod, LocalRowModule, Solution};

/// Largest group order for `H^3` computations.
pub const MAX_H3_GROUP_ORDER: usize = 24;

/// Largest number of equations `(|G|-1)^3` in a coboundary solve.
pub const MAX_COBOUNDARY_EQUATIONS: usize = 3375;

/// A normalized 3-cochain `G^3 -> Z/M`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cocycle3 {
    group: Arc<FiniteGroup>,
    modulus: u64,
    values: Vec<u64>,
}

/// A normalized 2-cochain `G^2 -> Z/M`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cochain2 {
    group: Arc<FiniteGroup>,
    modulus: u64,
    values: Vec<u64>,
}

fn check_modulus(modulus: u64) -> Result<()> {
    if modulus == 0 {
        return Err(Error::Structural("modulus must be positive".into()));
    }
    Ok(())
}

impl Cocycle3 {
    /// Wraps dense values `values[(a*n + b)*n + c]`. Checks length, range and
    /// normalization; the cocycle identity is checked by
    /// [`Cocycle3::is_cocycle`].
    pub fn new(group: Arc<FiniteGroup>, modulus: u64, values: Vec<u64>) -> Result<Self> {
        check_modulus(modulus)?;
        let n = group.order();
        if values.len() != n * n * n {
            return Err(Error::Structural(format!(
                "3-cochain on a group of order {n} needs {} values, got {}",
                n * n * n,
                values.len()
            )));
        }
        if let Some(v) = values.iter().find(|&&v| v >= modulus) {
            return Err(Error::Structural(format!(
                "value {v} not reduced mod {modulus}"
            )));
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if (a == 0 || b == 0 || c == 0) && values[(a * n + b) * n + c] != 0 {
                        return Err(Error::Structural(format!(
                            "cochain is not normalized at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        Ok(Cocycle3 {
            group,
            modulus,
            values,
        })
    }

    pub fn zero(group: Arc<FiniteGroup>, modulus: u64) -> Result<Self> {
        check_modulus(modulus)?;
        let n = group.order();
        Ok(Cocycle3 {
            group,
            modulus,
            values: vec![0; n * n * n],
        })
    }

    fn from_fn(
        group: Arc<FiniteGroup>,
        modulus: u64,
        f: impl Fn(usize, usize, usize) -> u64,
    ) -> Self {
        let n = group.order();
        let mut values = vec![0; n * n * n];
        for a in 1..n {
            for b in 1..n {
                for c in 1..n {
                    values[(a * n + b) * n + c] = f(a, b, c) % modulus;
                }
            }
        }
        Cocycle3 {
            group,
            modulus,
            values,
        }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn value(&self, a: usize, b: usize, c: usize) -> u64 {
        let n = self.group.order();
        self.values[(a * n + b) * n + c]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    /// `d alpha` evaluated at `(g1, g2, g3, g4)`, reduced mod M.
    pub fn differential_at(&self, g: [usize; 4]) -> u64 {
        let grp = &self.group;
        let m = self.modulus;
        let [a, b, c, d] = g;
        let plus = self.value(b, c, d) + self.value(a, grp.mul(b, c), d) + self.value(a, b, c);
        let minus = self.value(grp.mul(a, b), c, d) + self.value(a, b, grp.mul(c, d));
        (plus % m + m - minus % m) % m
    }

    /// The cocycle identity at all `|G|^4` quadruples.
    pub fn is_cocycle(&self) -> bool {
        let n = self.group.order();
        (0..n).all(|a| {
            (0..n).all(|b| (0..n).all(|c| (0..n).all(|d| self.differential_at([a, b, c, d]) == 0)))
        })
    }

    /// `self - other`, both on the same group with the same modulus.
    pub fn difference(&self, other: &Cocycle3) -> Result<Cocycle3> {
        if self.group != other.group || self.modulus != other.modulus {
            return Err(Error::Precondition(
                "cochains live on different groups or moduli".into(),
            ));
        }
        let m = self.modulus;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a + m - b) % m)
            .collect();
        Ok(Cocycle3 {
            group: self.group.clone(),
            modulus: m,
            values,
        })
    }

    /// Witness `beta` with `d beta = alpha` in `Q/Z`, if one exists.
    ///
    /// The solve runs over `Z/(M|G|)` with `alpha` embedded by
    /// multiplication by `|G|`. This decides triviality in `Q/Z` exactly:
    /// if `alpha = d beta` for a `Q/Z`-valued `beta`, then `M beta` is a
    /// cocycle, so `|G| M beta` is a coboundary `d gamma`, and correcting
    /// `beta` by `d(gamma / (|G| M))` gives a witness with values in
    /// `(1/(M|G|)) Z / Z`.
    pub fn coboundary_witness(&self) -> Result<Option<Cochain2>> {
        let n = self.group.order();
        if n <= 1 {
            return Ok(Some(Cochain2::zero(
                self.group.clone(),
                self.modulus * n as u64,
            )?));
        }
        let k = n - 1;
        if k * k * k > MAX_COBOUNDARY_EQUATIONS {
            return Err(Error::Size(format!(
                "{} coboundary equations exceed the cap {MAX_COBOUNDARY_EQUATIONS}",
                k * k * k
            )));
        }
        let working = self.modulus * n as u64;
        let matrix: Vec<Vec<i128>> = d2_rows(&self.group)
            .map(|row| {
                let mut dense = vec![0i128; k * k];
                for (col, v) in row {
                    dense[col] += v as i128;
                }
                dense
            })
            .collect();
        let rhs: Vec<i128> = triples(n)
            .map(|(a, b, c)| (self.value(a, b, c) as i128) * n as i128)
            .collect();
        match solve_mod(&matrix, &rhs, working as i128)? {
            Solution::Inconsistent => Ok(None),
            Solution::Solvable(x) => {
                let mut values = vec![0u64; n * n];
                for g in 1..n {
                    for h in 1..n {
                        values[g * n + h] = x[(g - 1) * k + (h - 1)] as u64;
                    }
                }
                let beta = Cochain2 {
                    group: self.group.clone(),
                    modulus: working,
                    values,
                };
                let check = beta.coboundary();
                let consistent = (0..self.values.len())
                    .all(|i| check.values[i] == (self.values[i] * n as u64) % working);
                if !consistent {
                    return Err(Error::Consistency(
                        "coboundary solve returned a non-solution".into(),
                    ));
                }
                Ok(Some(beta))
            }
        }
    }

    /// True iff the class of the cocycle in `H^3(G, Q/Z)` is trivial.
    pub fn is_coboundary(&self) -> Result<bool> {
        Ok(self.coboundary_witness()?.is_some())
    }

    /// Pullback along a surjection `G -> G''` whose target is this
    /// cochain's group.
    pub fn inflate(&self, proj: &GroupHom) -> Result<Cocycle3> {
        if proj.target().as_ref() != self.group.as_ref() {
            return Err(Error::Precondition(
                "projection target is not the cocycle's group".into(),
            ));
        }
        if !proj.is_surjective() {
            return Err(Error::Precondition("inflation needs a surjection".into()));
        }
        Ok(Cocycle3::from_fn(
            proj.source().clone(),
            self.modulus,
            |a, b, c| self.value(proj.apply(a), proj.apply(b), proj.apply(c)),
        ))
    }

    /// Restriction to the subgroup on `sub`, renumbered as in
    /// [`FiniteGroup::subgroup`].
    pub fn restrict(&self, sub: &BTreeSet<usize>) -> Result<Cocycle3> {
        let (h, inclusion) = self.group.subgroup(sub)?;
        Ok(Cocycle3::from_fn(h, self.modulus, |a, b, c| {
            self.value(inclusion.apply(a), inclusion.apply(b), inclusion.apply(c))
        }))
    }
}

impl Cochain2 {
    pub fn new(group: Arc<FiniteGroup>, modulus: u64, values: Vec<u64>) -> Result<Self> {
        check_modulus(modulus)?;
        let n = group.order();
        if values.len() != n * n {
            return Err(Error::Structural(format!(
                "2-cochain on a group of order {n} needs {} values",
                n * n
            )));
        }
        if let Some(v) = values.iter().find(|&&v| v >= modulus) {
            return Err(Error::Structural(format!(
                "value {v} not reduced mod {modulus}"
            )));
        }
        for g in 0..n {
            if values[g] != 0 || values[g * n] != 0 {
                return Err(Error::Structural("2-cochain is not normalized".into()));
            }
        }
        Ok(Cochain2 {
            group,
            modulus,
            values,
        })
    }

    pub fn zero(group: Arc<FiniteGroup>, modulus: u64) -> Result<Self> {
        check_modulus(modulus)?;
        let n = group.order();
        Ok(Cochain2 {
            group,
            modulus,
            values: vec![0; n * n],
        })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn value(&self, a: usize, b: usize) -> u64 {
        self.values[a * self.group.order() + b]
    }

    /// `(d beta)(a, b, c) = beta(b, c) - beta(ab, c) + beta(a, bc) - beta(a, b)`.
    pub fn coboundary(&self) -> Cocycle3 {
        let g = &self.group;
        let m = self.modulus;
        Cocycle3::from_fn(g.clone(), m, |a, b, c| {
            let plus = self.value(b, c) + self.value(a, g.mul(b, c));
            let minus = self.value(g.mul(a, b), c) + self.value(a, b);
            (plus % m + 2 * m - minus % m) % m
        })
    }
}

/// The standard representative `q a floor((b + c) / n)` mod `n` of the
/// class `q` in `H^3(Z/n, Q/Z) = Z/n`, on the cyclic group with element `a`
/// at index `a`.
pub fn cyclic_representative(n: usize, q: u64) -> Result<Cocycle3> {
    if n == 0 {
        return Err(Error::Structural(
            "cyclic group order must be positive".into(),
        ));
    }
    if q >= n as u64 {
        return Err(Error::Structural(format!(
            "class {q} out of range for Z/{n}"
        )));
    }
    let m = n as u64;
    Ok(Cocycle3::from_fn(named::cyclic(n), m, |a, b, c| {
        q * a as u64 * ((b + c) / n) as u64
    }))
}

fn triples(n: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    (1..n).flat_map(move |a| (1..n).flat_map(move |b| (1..n).map(move |c| (a, b, c))))
}

/// Rows of the normalized `d: C^2 -> C^3` matrix, one per non-identity
/// triple, as sparse `(column, coefficient)` lists.
fn d2_rows(g: &FiniteGroup) -> impl Iterator<Item = Vec<(usize, i64)>> + '_ {
    let n = g.order();
    let k = n.max(1) - 1;
    let idx = move |a: usize, b: usize| -> Option<usize> {
        (a != 0 && b != 0).then(|| (a - 1) * k + (b - 1))
    };
    triples(n).map(move |(a, b, c)| {
        [
            (idx(b, c), 1),
            (idx(g.mul(a, b), c), -1),
            (idx(a, g.mul(b, c)), 1),
            (idx(a, b), -1),
        ]
        .into_iter()
        .filter_map(|(i, s)| i.map(|i| (i, s)))
        .collect()
    })
}

/// Rows of the normalized `d: C^3 -> C^4` matrix, one per non-identity
/// quadruple.
fn d3_rows(g: &FiniteGroup) -> impl Iterator<Item = Vec<(usize, i64)>> + '_ {
    let n = g.order();
    let k = n.max(1) - 1;
    let idx = move |a: usize, b: usize, c: usize| -> Option<usize> {
        (a != 0 && b != 0 && c != 0).then(|| ((a - 1) * k + (b - 1)) * k + (c - 1))
    };
    triples(n).flat_map(move |(a, b, c)| {
        (1..n).map(move |d| {
            [
                (idx(b, c, d), 1),
                (idx(g.mul(a, b), c, d), -1),
                (idx(a, g.mul(b, c), d), 1),
                (idx(a, b, g.mul(c, d)), -1),
                (idx(a, b, c), 1),
            ]
            .into_iter()
            .filter_map(|(i, s)| i.map(|i| (i, s)))
            .collect()
        })
    })
}

/// Order of `H^3(G, Z/M)` as `|ker d3| / |im d2|` on normalized cochains.
///
/// The sizes are computed prime by prime: over `Z/p^e` the number of
/// elements in the image of a matrix equals that of its row module, which
/// [`LocalRowModule`] counts from its echelon form.
pub fn h3_order(g: &FiniteGroup, modulus: u64) -> Result<u64> {
    check_modulus(modulus)?;
    let n = g.order();
    if n > MAX_H3_GROUP_ORDER {
        return Err(Error::Size(format!(
            "group order {n} exceeds the H^3 cap {MAX_H3_GROUP_ORDER}"
        )));
    }
    if n == 1 {
        return Ok(1);
    }
    let k = n - 1;
    let c2 = k * k;
    let c3 = k * k * k;
    let mut order: u64 = 1;
    for (p, e) in factorize(modulus) {
        let mut im3 = LocalRowModule::new(c3, p, e);
        for row in d3_rows(g) {
            im3.insert(row);
        }
        let mut im2 = LocalRowModule::new(c2, p, e);
        for row in d2_rows(g) {
            im2.insert(row);
        }
        let exponent = u64::from(e) * c3 as u64 - im3.log_size() - im2.log_size();
        order = order
            .checked_mul(p.checked_pow(exponent as u32).ok_or_else(overflow)?)
            .ok_or_else(overflow)?;
    }
    Ok(order)
}

fn overflow() -> Error {
    Error::Size("H^3 order does not fit in 64 bits".into())
}

/// `|H^3(G, Z/M)|` from the invariant factors of dense `d2`, `d3` over
/// `Z/M`. Slower than [`h3_order`]; kept as an independent route for small
/// groups.
pub fn h3_order_dense(g: &FiniteGroup, modulus: u64) -> Result<u64> {
    check_modulus(modulus)?;
    let n = g.order();
    if n == 1 {
        return Ok(1);
    }
    let k = n - 1;
    let dense = |rows: Vec<Vec<(usize, i64)>>, cols: usize| -> Vec<Vec<i128>> {
        rows.into_iter()
            .map(|r| {
                let mut d = vec![0i128; cols];
                for (c, v) in r {
                    d[c] += v as i128;
                }
                d
            })
            .collect()
    };
    let m = modulus as i128;
    let d3 = dense(d3_rows(g).collect(), k * k * k);
    let d2 = dense(d2_rows(g).collect(), k * k);
    let f3 = invariant_factors(&d3, Some(m));
    let f2 = invariant_factors(&d2, Some(m));
    let big_m = BigUint::from(modulus);
    // |ker d3| = prod over the c3 columns of gcd(f_i, M), with f_i = 0 past the rank.
    let mut ker = BigUint::from(1u32);
    for i in 0..k * k * k {
        let f = f3.get(i).copied().unwrap_or(0);
        ker *= BigUint::from(f.gcd(&m) as u64);
    }
    let mut im = BigUint::from(1u32);
    for f in f2 {
        im *= &big_m / BigUint::from(f.gcd(&m) as u64);
    }
    let (q, r) = ker.div_rem(&im);
    if r != BigUint::from(0u32) {
        return Err(Error::Consistency(
            "|im d2| does not divide |ker d3|".into(),
        ));
    }
    u64::try_from(q).map_err(|_| overflow())
}

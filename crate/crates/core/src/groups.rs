//! Finite groups given by multiplication tables.
//!
//! Elements are indices `0..order`, with the identity at index 0. Conjugacy
//! classes, inverses and element orders are derived once at construction.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest order accepted for a multiplication table.
pub const MAX_ORDER: usize = 10_000;

/// Largest number of class unions examined when enumerating normal subgroups.
pub const MAX_CLASS_SUBSETS: u64 = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    names: Vec<String>,
    inverses: Vec<usize>,
    orders: Vec<usize>,
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
}

impl FiniteGroup {
    /// Builds a group from a dense multiplication table, checking closure,
    /// identity at index 0, inverses and associativity.
    pub fn from_table(table: Vec<Vec<usize>>, names: Option<Vec<String>>) -> Result<Self> {
        let order = table.len();
        if order == 0 {
            return Err(Error::Structural("group order must be positive".into()));
        }
        if order > MAX_ORDER {
            return Err(Error::Size(format!(
                "group order {order} exceeds cap {MAX_ORDER}"
            )));
        }
        for (a, row) in table.iter().enumerate() {
            if row.len() != order {
                return Err(Error::Structural(format!(
                    "row {a} has length {}, expected {order}",
                    row.len()
                )));
            }
            if let Some(&bad) = row.iter().find(|&&x| x >= order) {
                return Err(Error::Structural(format!(
                    "entry {bad} in row {a} out of range"
                )));
            }
        }
        for g in 0..order {
            if table[0][g] != g || table[g][0] != g {
                return Err(Error::Structural(format!(
                    "index 0 is not a two-sided identity (fails at {g})"
                )));
            }
        }
        for a in 0..order {
            let right = table[a].iter().position(|&x| x == 0);
            match right {
                Some(b) if table[b][a] == 0 => {}
                _ => {
                    return Err(Error::Structural(format!(
                        "element {a} has no two-sided inverse"
                    )))
                }
            }
        }
        for a in 0..order {
            for b in 0..order {
                let ab = table[a][b];
                for c in 0..order {
                    if table[ab][c] != table[a][table[b][c]] {
                        return Err(Error::Structural(format!(
                            "table is not associative at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        Self::assemble(table, names)
    }

    /// Trusted construction from a table known to be a group.
    fn assemble(table: Vec<Vec<usize>>, names: Option<Vec<String>>) -> Result<Self> {
        let order = table.len();
        let names = match names {
            Some(n) if n.len() != order => {
                return Err(Error::Structural(format!(
                    "{} element names for a group of order {order}",
                    n.len()
                )))
            }
            Some(n) => n,
            None => (0..order).map(|g| format!("g{g}")).collect(),
        };
        let inverses: Vec<usize> = (0..order)
            .map(|a| table[a].iter().position(|&x| x == 0).expect("inverse"))
            .collect();
        let orders: Vec<usize> = (0..order)
            .map(|a| {
                let mut k = 1;
                let mut x = a;
                while x != 0 {
                    x = table[x][a];
                    k += 1;
                }
                k
            })
            .collect();

        let mut class_of = vec![usize::MAX; order];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for g in 0..order {
            if class_of[g] != usize::MAX {
                continue;
            }
            let members: BTreeSet<usize> = (0..order)
                .map(|x| table[table[x][g]][inverses[x]])
                .collect();
            for &m in &members {
                class_of[m] = classes.len();
            }
            classes.push(members.into_iter().collect());
        }
        // Identity first, then by element order, class size and least member.
        classes.sort_by_key(|c| (orders[c[0]], c.len(), c[0]));
        for (ci, c) in classes.iter().enumerate() {
            for &m in c {
                class_of[m] = ci;
            }
        }
        Ok(FiniteGroup {
            table,
            names,
            inverses,
            orders,
            classes,
            class_of,
        })
    }

    /// Enumerates the group generated by permutations of `0..degree` by
    /// breadth-first search from the identity, applying generators in input
    /// order. The product is composition `(a*b)(i) = a(b(i))`.
    pub fn from_permutations(degree: usize, generators: &[Vec<usize>]) -> Result<Self> {
        Self::from_permutations_capped(degree, generators, MAX_ORDER)
    }

    pub fn from_permutations_capped(
        degree: usize,
        generators: &[Vec<usize>],
        cap: usize,
    ) -> Result<Self> {
        if degree == 0 {
            return Err(Error::Structural("degree must be positive".into()));
        }
        for (n, g) in generators.iter().enumerate() {
            let seen: BTreeSet<usize> = g.iter().copied().collect();
            if g.len() != degree || seen.len() != degree || g.iter().any(|&x| x >= degree) {
                return Err(Error::Structural(format!(
                    "generator {n} is not a permutation of 0..{degree}"
                )));
            }
        }
        let compose =
            |a: &[usize], b: &[usize]| -> Vec<usize> { b.iter().map(|&i| a[i]).collect() };
        let identity: Vec<usize> = (0..degree).collect();
        let mut elements = vec![identity.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(identity, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for s in generators {
                let y = compose(&elements[x], s);
                if !index.contains_key(&y) {
                    if elements.len() == cap {
                        return Err(Error::Size(format!(
                            "generated group exceeds order cap {cap}"
                        )));
                    }
                    index.insert(y.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(y);
                }
            }
        }
        let table: Vec<Vec<usize>> = elements
            .iter()
            .map(|a| elements.iter().map(|b| index[&compose(a, b)]).collect())
            .collect();
        let names = elements.iter().map(|p| cycle_notation(p)).collect();
        Self::assemble(table, Some(names))
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, g: usize) -> &str {
        &self.names[g]
    }

    pub fn element_order(&self, g: usize) -> usize {
        self.orders[g]
    }

    /// `x g x^{-1}`.
    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.table[self.table[x][g]][self.inverses[x]]
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.table[a][b] == self.table[b][a]))
    }

    /// Conjugacy classes. The identity class comes first; the rest are
    /// ordered by element order, then size, then least member.
    pub fn conjugacy_classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_of(&self, g: usize) -> usize {
        self.class_of[g]
    }

    pub fn is_subgroup(&self, set: &BTreeSet<usize>) -> bool {
        set.contains(&0)
            && set.iter().all(|&g| g < self.order())
            && set
                .iter()
                .all(|&a| set.iter().all(|&b| set.contains(&self.table[a][b])))
    }

    pub fn is_normal_subgroup(&self, set: &BTreeSet<usize>) -> bool {
        self.is_subgroup(set)
            && set
                .iter()
                .all(|&h| (0..self.order()).all(|x| set.contains(&self.conjugate(h, x))))
    }

    /// Subgroup generated by `seeds`.
    pub fn generated_subgroup(&self, seeds: &[usize]) -> Result<BTreeSet<usize>> {
        if let Some(&bad) = seeds.iter().find(|&&s| s >= self.order()) {
            return Err(Error::Structural(format!("element {bad} out of range")));
        }
        let mut set = BTreeSet::from([0]);
        let mut queue: VecDeque<usize> = VecDeque::from([0]);
        while let Some(x) = queue.pop_front() {
            for &s in seeds {
                let y = self.table[x][s];
                if set.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        Ok(set)
    }

    /// Every normal subgroup, found as the unions of conjugacy classes that
    /// contain the identity and are closed under multiplication. Sorted by
    /// order, then lexicographically.
    pub fn normal_subgroups(&self) -> Result<Vec<BTreeSet<usize>>> {
        let others = &self.classes[1..];
        let count = 1u64
            .checked_shl(others.len() as u32)
            .filter(|&c| c <= MAX_CLASS_SUBSETS)
            .ok_or_else(|| {
                Error::Size(format!(
                    "{} nontrivial classes give more than {MAX_CLASS_SUBSETS} class unions",
                    others.len()
                ))
            })?;
        let mut found = Vec::new();
        for mask in 0..count {
            let size: usize = 1 + others
                .iter()
                .enumerate()
                .filter(|(b, _)| mask >> b & 1 == 1)
                .map(|(_, c)| c.len())
                .sum::<usize>();
            if !self.order().is_multiple_of(size) {
                continue;
            }
            let mut set = BTreeSet::from([0]);
            for (b, c) in others.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    set.extend(c.iter().copied());
                }
            }
            if set
                .iter()
                .all(|&a| set.iter().all(|&b| set.contains(&self.table[a][b])))
            {
                found.push(set);
            }
        }
        found.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        Ok(found)
    }

    pub fn is_simple(&self) -> Result<bool> {
        Ok(self.order() > 1 && self.normal_subgroups()?.len() == 2)
    }

    /// The subgroup on `set` as a group in its own right, with elements
    /// numbered in increasing order, together with its inclusion.
    pub fn subgroup(
        self: &Arc<Self>,
        set: &BTreeSet<usize>,
    ) -> Result<(Arc<FiniteGroup>, GroupHom)> {
        if !self.is_subgroup(set) {
            return Err(Error::Precondition(format!(
                "{set:?} is not a subgroup of a group of order {}",
                self.order()
            )));
        }
        let elems: Vec<usize> = set.iter().copied().collect();
        let pos: HashMap<usize, usize> = elems.iter().enumerate().map(|(i, &g)| (g, i)).collect();
        let table = elems
            .iter()
            .map(|&a| elems.iter().map(|&b| pos[&self.table[a][b]]).collect())
            .collect();
        let names = elems.iter().map(|&g| self.names[g].clone()).collect();
        let sub = Arc::new(Self::assemble(table, Some(names))?);
        let inclusion = GroupHom::new(sub.clone(), self.clone(), elems)?;
        Ok((sub, inclusion))
    }

    /// The quotient by a normal subgroup with its canonical projection.
    /// Cosets are numbered by their least element, so the identity coset is
    /// index 0.
    pub fn quotient(
        self: &Arc<Self>,
        normal: &BTreeSet<usize>,
    ) -> Result<(Arc<FiniteGroup>, GroupHom)> {
        if !self.is_normal_subgroup(normal) {
            return Err(Error::Precondition(format!(
                "{normal:?} is not a normal subgroup"
            )));
        }
        let n = self.order();
        let mut coset_of = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for g in 0..n {
            if coset_of[g] != usize::MAX {
                continue;
            }
            for &h in normal {
                coset_of[self.table[g][h]] = reps.len();
            }
            reps.push(g);
        }
        let table = reps
            .iter()
            .map(|&a| reps.iter().map(|&b| coset_of[self.table[a][b]]).collect())
            .collect();
        let names = reps
            .iter()
            .map(|&g| format!("{}N", self.names[g]))
            .collect();
        let quotient = Arc::new(Self::assemble(table, Some(names))?);
        let projection = GroupHom::new(self.clone(), quotient.clone(), coset_of)?;
        Ok((quotient, projection))
    }
}

/// A homomorphism between finite groups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupHom {
    source: Arc<FiniteGroup>,
    target: Arc<FiniteGroup>,
    map: Vec<usize>,
}

impl GroupHom {
    pub fn new(
        source: Arc<FiniteGroup>,
        target: Arc<FiniteGroup>,
        map: Vec<usize>,
    ) -> Result<Self> {
        if map.len() != source.order() {
            return Err(Error::Structural(format!(
                "map has length {}, source order is {}",
                map.len(),
                source.order()
            )));
        }
        if let Some(&bad) = map.iter().find(|&&x| x >= target.order()) {
            return Err(Error::Structural(format!("image {bad} out of range")));
        }
        if map[0] != 0 {
            return Err(Error::Structural("identity must map to identity".into()));
        }
        let n = source.order();
        for a in 0..n {
            for b in 0..n {
                if map[source.mul(a, b)] != target.mul(map[a], map[b]) {
                    return Err(Error::Structural(format!(
                        "map is not multiplicative at ({a}, {b})"
                    )));
                }
            }
        }
        Ok(GroupHom {
            source,
            target,
            map,
        })
    }

    pub fn identity(group: Arc<FiniteGroup>) -> Self {
        let map = (0..group.order()).collect();
        GroupHom {
            source: group.clone(),
            target: group,
            map,
        }
    }

    pub fn source(&self) -> &Arc<FiniteGroup> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteGroup> {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, g: usize) -> usize {
        self.map[g]
    }

    pub fn is_injective(&self) -> bool {
        self.image().len() == self.source.order()
    }

    pub fn is_surjective(&self) -> bool {
        self.image().len() == self.target.order()
    }

    pub fn image(&self) -> BTreeSet<usize> {
        self.map.iter().copied().collect()
    }

    pub fn kernel(&self) -> BTreeSet<usize> {
        (0..self.source.order())
            .filter(|&g| self.map[g] == 0)
            .collect()
    }
}

/// True iff `1 -> A -i-> B -p-> C -> 1` is exact: `i` injective, `p`
/// surjective and `image(i) = kernel(p)`.
pub fn check_group_exact(i: &GroupHom, p: &GroupHom) -> Result<bool> {
    if i.target != p.source {
        return Err(Error::Precondition(
            "target of the inclusion is not the source of the projection".into(),
        ));
    }
    Ok(i.is_injective() && p.is_surjective() && i.image() == p.kernel())
}

/// A verified short exact sequence of finite groups `1 -> N -> G -> Q -> 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupExtension {
    pub inclusion: GroupHom,
    pub projection: GroupHom,
}

impl GroupExtension {
    pub fn new(inclusion: GroupHom, projection: GroupHom) -> Result<Self> {
        if !check_group_exact(&inclusion, &projection)? {
            return Err(Error::Precondition("group sequence is not exact".into()));
        }
        Ok(GroupExtension {
            inclusion,
            projection,
        })
    }

    /// `1 -> N -> G -> G/N -> 1` for a normal subgroup `N`.
    pub fn from_normal_subgroup(
        group: &Arc<FiniteGroup>,
        normal: &BTreeSet<usize>,
    ) -> Result<Self> {
        let (_, projection) = group.quotient(normal)?;
        let (_, inclusion) = group.subgroup(normal)?;
        Self::new(inclusion, projection)
    }

    pub fn kernel_group(&self) -> &Arc<FiniteGroup> {
        self.inclusion.source()
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.inclusion.target()
    }

    pub fn quotient_group(&self) -> &Arc<FiniteGroup> {
        self.projection.target()
    }
}

fn cycle_notation(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        let mut cycle = vec![start];
        seen[start] = true;
        let mut x = p[start];
        while x != start {
            seen[x] = true;
            cycle.push(x);
            x = p[x];
        }
        let body: Vec<String> = cycle.iter().map(|c| c.to_string()).collect();
        out.push('(');
        out.push_str(&body.join(" "));
        out.push(')');
    }
    if out.is_empty() {
        "()".into()
    } else {
        out
    }
}

/// Standard small groups used throughout tests and the builtin corpus.
pub mod named {
    use super::*;

    pub fn trivial() -> Arc<FiniteGroup> {
        cyclic(1)
    }

    /// `Z/n`, with element `a` at index `a`.
    pub fn cyclic(n: usize) -> Arc<FiniteGroup> {
        assert!(n > 0);
        let table = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        let names = (0..n).map(|a| a.to_string()).collect();
        Arc::new(FiniteGroup::assemble(table, Some(names)).expect("cyclic group"))
    }

    fn cycle(degree: usize, points: &[usize]) -> Vec<usize> {
        let mut p: Vec<usize> = (0..degree).collect();
        for w in 0..points.len() {
            p[points[w]] = points[(w + 1) % points.len()];
        }
        p
    }

    pub fn symmetric(n: usize) -> Arc<FiniteGroup> {
        let all: Vec<usize> = (0..n).collect();
        let gens = if n < 2 {
            vec![]
        } else {
            vec![cycle(n, &all), cycle(n, &[0, 1])]
        };
        Arc::new(FiniteGroup::from_permutations(n.max(1), &gens).expect("symmetric group"))
    }

    pub fn alternating(n: usize) -> Arc<FiniteGroup> {
        let gens: Vec<Vec<usize>> = (2..n).map(|k| cycle(n, &[0, 1, k])).collect();
        Arc::new(FiniteGroup::from_permutations(n.max(1), &gens).expect("alternating group"))
    }

    /// Dihedral group of order `2n` acting on the vertices of an n-gon.
    pub fn dihedral(n: usize) -> Arc<FiniteGroup> {
        let rotation: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        let reflection: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
        Arc::new(
            FiniteGroup::from_permutations(n, &[rotation, reflection]).expect("dihedral group"),
        )
    }

    /// Quaternion group of order 8 via its regular representation.
    pub fn quaternion() -> Arc<FiniteGroup> {
        // Elements (sign, unit) with unit in {1, i, j, k}, encoded as 4*s + u.
        let mul_unit = |a: usize, b: usize| -> (usize, usize) {
            // returns (sign, unit) of a*b for a, b in {1,i,j,k}
            const T: [[(usize, usize); 4]; 4] = [
                [(0, 0), (0, 1), (0, 2), (0, 3)],
                [(0, 1), (1, 0), (0, 3), (1, 2)],
                [(0, 2), (1, 3), (1, 0), (0, 1)],
                [(0, 3), (0, 2), (1, 1), (1, 0)],
            ];
            T[a][b]
        };
        let mul = |x: usize, y: usize| -> usize {
            let (s, u) = mul_unit(x % 4, y % 4);
            4 * ((x / 4 + y / 4 + s) % 2) + u
        };
        let left_i: Vec<usize> = (0..8).map(|y| mul(1, y)).collect();
        let left_j: Vec<usize> = (0..8).map(|y| mul(2, y)).collect();
        Arc::new(FiniteGroup::from_permutations(8, &[left_i, left_j]).expect("quaternion group"))
    }
}

#[cfg(test)]
mod tests {
    use super::named::*;
    use super::*;

    fn sizes(g: &FiniteGroup) -> Vec<usize> {
        g.conjugacy_classes().iter().map(|c| c.len()).collect()
    }

    #[test]
    fn enumeration_orders() {
        let s3 = FiniteGroup::from_permutations(3, &[vec![1, 2, 0], vec![1, 0, 2]]).unwrap();
        assert_eq!(s3.order(), 6);
        let t = FiniteGroup::from_permutations(1, &[]).unwrap();
        assert_eq!(t.order(), 1);
        let a5 =
            FiniteGroup::from_permutations(5, &[vec![1, 2, 3, 4, 0], vec![1, 2, 0, 3, 4]]).unwrap();
        assert_eq!(a5.order(), 60);
    }

    #[test]
    fn enumeration_cap() {
        let err = FiniteGroup::from_permutations_capped(
            5,
            &[vec![1, 2, 3, 4, 0], vec![1, 0, 2, 3, 4]],
            100,
        );
        assert!(matches!(err, Err(Error::Size(_))));
    }

    #[test]
    fn rejects_non_permutations() {
        assert!(FiniteGroup::from_permutations(3, &[vec![0, 0, 1]]).is_err());
    }

    #[test]
    fn class_sizes() {
        assert_eq!(sizes(&cyclic(4)), vec![1, 1, 1, 1]);
        assert_eq!(sizes(&symmetric(3)), vec![1, 3, 2]);
        assert_eq!(sizes(&alternating(5)), vec![1, 15, 20, 12, 12]);
    }

    #[test]
    fn normal_subgroups_small() {
        let s3 = symmetric(3);
        let ns = s3.normal_subgroups().unwrap();
        assert_eq!(
            ns.iter().map(|n| n.len()).collect::<Vec<_>>(),
            vec![1, 3, 6]
        );
        assert_eq!(cyclic(7).normal_subgroups().unwrap().len(), 2);
        assert_eq!(alternating(5).normal_subgroups().unwrap().len(), 2);
    }

    #[test]
    fn simplicity() {
        assert!(alternating(5).is_simple().unwrap());
        assert!(!symmetric(3).is_simple().unwrap());
        assert!(!trivial().is_simple().unwrap());
        assert!(cyclic(5).is_simple().unwrap());
    }

    #[test]
    fn quotient_s3_by_a3() {
        let s3 = symmetric(3);
        let a3 = s3.normal_subgroups().unwrap()[1].clone();
        let (q, p) = s3.quotient(&a3).unwrap();
        assert_eq!(q.order(), 2);
        for g in 0..6 {
            let transposition = s3.element_order(g) == 2;
            assert_eq!(p.apply(g), usize::from(transposition));
        }
        let (q1, _) = s3.quotient(&BTreeSet::from([0])).unwrap();
        assert_eq!(q1.table(), s3.table());
        let (qg, _) = s3.quotient(&(0..6).collect()).unwrap();
        assert_eq!(qg.order(), 1);
    }

    #[test]
    fn quotient_rejects_non_normal() {
        let s3 = symmetric(3);
        let t = s3
            .generated_subgroup(&[s3.conjugacy_classes()[1][0]])
            .unwrap();
        assert!(matches!(s3.quotient(&t), Err(Error::Precondition(_))));
    }

    #[test]
    fn group_exactness() {
        let s3 = symmetric(3);
        let a3 = s3.normal_subgroups().unwrap()[1].clone();
        let ext = GroupExtension::from_normal_subgroup(&s3, &a3).unwrap();
        assert!(check_group_exact(&ext.inclusion, &ext.projection).unwrap());
        let id = GroupHom::identity(s3.clone());
        assert!(!check_group_exact(&id, &id).unwrap());
        let (_, triv) = s3.subgroup(&BTreeSet::from([0])).unwrap();
        assert!(check_group_exact(&triv, &id).unwrap());
        assert!(check_group_exact(&id, &ext.inclusion).is_err());
    }

    #[test]
    fn table_validation() {
        assert!(FiniteGroup::from_table(vec![vec![0, 1], vec![1, 1]], None).is_err());
        assert!(FiniteGroup::from_table(vec![vec![0, 1], vec![1, 0]], None).is_ok());
        // identity not at 0
        assert!(FiniteGroup::from_table(vec![vec![1, 0], vec![0, 1]], None).is_err());
    }

    #[test]
    fn named_group_orders() {
        assert_eq!(dihedral(4).order(), 8);
        assert_eq!(dihedral(5).order(), 10);
        assert_eq!(quaternion().order(), 8);
        assert_eq!(symmetric(4).order(), 24);
        assert_eq!(alternating(4).order(), 12);
        assert_eq!(sizes(&quaternion()), vec![1, 1, 2, 2, 2]);
    }

    #[test]
    fn cycle_names() {
        let s3 = symmetric(3);
        assert_eq!(s3.name(0), "()");
        assert!(s3.names().iter().any(|n| n == "(0 1)"));
    }
}

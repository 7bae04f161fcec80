//! Finite groups as Cayley tables: abelian groups from invariant factors,
//! the inversion semidirect product Z/2 x| G, and central extensions of G by
//! Z/m defined by an exponent-valued 2-cocycle.
//!
//! Groups here are tiny, so every structural claim (Latin square property,
//! associativity, centrality, kernel of the projection) is checked
//! exhaustively at construction.

use crate::error::{Error, Result};

const EXHAUSTIVE_ASSOC_BOUND: usize = 64;

/// A finite group with labeled elements and an index-based Cayley table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    labels: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    /// Validates a Cayley table: Latin square, two-sided identity,
    /// inverses, and associativity (exhaustive for order <= 64, full pair
    /// coverage with a fixed stride above).
    pub fn from_table(labels: Vec<String>, table: Vec<Vec<usize>>) -> Result<FiniteGroup> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::BadGroupTable("empty group".into()));
        }
        {
            let mut sorted = labels.clone();
            sorted.sort();
            sorted.dedup();
            if sorted.len() != n {
                return Err(Error::BadGroupTable("duplicate element labels".into()));
            }
        }
        if table.len() != n || table.iter().any(|r| r.len() != n) {
            return Err(Error::BadGroupTable("table is not n x n".into()));
        }
        for r in &table {
            for &v in r {
                if v >= n {
                    return Err(Error::BadGroupTable("index out of range".into()));
                }
            }
        }
        // Latin square: every row and column is a permutation.
        for i in 0..n {
            let mut row_seen = vec![false; n];
            let mut col_seen = vec![false; n];
            for j in 0..n {
                if std::mem::replace(&mut row_seen[table[i][j]], true) {
                    return Err(Error::BadGroupTable(format!(
                        "row {} repeats an entry",
                        labels[i]
                    )));
                }
                if std::mem::replace(&mut col_seen[table[j][i]], true) {
                    return Err(Error::BadGroupTable(format!(
                        "column {} repeats an entry",
                        labels[i]
                    )));
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|i| table[e][i] == i && table[i][e] == i))
            .ok_or_else(|| Error::BadGroupTable("no two-sided identity".into()))?;
        let mut inverse = vec![0; n];
        for i in 0..n {
            inverse[i] = (0..n)
                .find(|&j| table[i][j] == identity && table[j][i] == identity)
                .ok_or_else(|| {
                    Error::BadGroupTable(format!("{} has no two-sided inverse", labels[i]))
                })?;
        }
        let assoc_ok = if n <= EXHAUSTIVE_ASSOC_BOUND {
            (0..n).all(|a| {
                (0..n).all(|b| (0..n).all(|c| table[table[a][b]][c] == table[a][table[b][c]]))
            })
        } else {
            // Full pair coverage, third factor sampled on a fixed stride.
            let stride = (n / 17).max(1);
            (0..n).all(|a| {
                (0..n).all(|b| {
                    (0..n)
                        .step_by(stride)
                        .all(|c| table[table[a][b]][c] == table[a][table[b][c]])
                })
            })
        };
        if !assoc_ok {
            return Err(Error::BadGroupTable("multiplication is not associative".into()));
        }
        Ok(FiniteGroup {
            labels,
            table,
            identity,
            inverse,
        })
    }

    /// Direct product of cyclic groups of the given orders, elements labeled
    /// by their exponent tuples ("i" for one factor, "i,j,..." for several).
    pub fn abelian(invariants: &[u64]) -> Result<FiniteGroup> {
        if invariants.is_empty() {
            return Err(Error::BadGroupTable("no invariant factors given".into()));
        }
        for &m in invariants {
            if m < 2 {
                return Err(Error::BadInvariant(m));
            }
        }
        let order: u64 = invariants.iter().product();
        let order = order as usize;
        let rank = invariants.len();
        let tuple = |mut idx: usize| -> Vec<u64> {
            let mut t = vec![0u64; rank];
            for k in (0..rank).rev() {
                t[k] = (idx % invariants[k] as usize) as u64;
                idx /= invariants[k] as usize;
            }
            t
        };
        let index = |t: &[u64]| -> usize {
            let mut idx = 0usize;
            for k in 0..rank {
                idx = idx * invariants[k] as usize + t[k] as usize;
            }
            idx
        };
        let labels: Vec<String> = (0..order)
            .map(|i| {
                tuple(i)
                    .iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect();
        let mut table = vec![vec![0usize; order]; order];
        for i in 0..order {
            for j in 0..order {
                let (a, b) = (tuple(i), tuple(j));
                let sum: Vec<u64> = a
                    .iter()
                    .zip(&b)
                    .zip(invariants)
                    .map(|((x, y), m)| (x + y) % m)
                    .collect();
                table[i][j] = index(&sum);
            }
        }
        FiniteGroup::from_table(labels, table)
    }

    pub fn trivial() -> FiniteGroup {
        FiniteGroup {
            labels: vec!["0".into()],
            table: vec![vec![0]],
            identity: 0,
            inverse: vec![0],
        }
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (a..n).all(|b| self.table[a][b] == self.table[b][a]))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut acc = a;
        let mut k = 1;
        while acc != self.identity {
            acc = self.mul(acc, a);
            k += 1;
        }
        k
    }

    /// True when the group is cyclic; returns a generator of minimal index.
    pub fn cyclic_generator(&self) -> Option<usize> {
        (0..self.order()).find(|&g| self.element_order(g) == self.order())
    }

    /// Sorted multiset of element orders — the invariant used for
    /// small-order isomorphism comparison.
    pub fn order_multiset(&self) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.order()).map(|a| self.element_order(a)).collect();
        v.sort_unstable();
        v
    }

    /// Isomorphism test by invariant comparison: order, abelianness, and the
    /// multiset of element orders. For abelian groups this is exact; for the
    /// small non-abelian groups compared here (S3, D4) it distinguishes
    /// everything we construct.
    pub fn same_invariants(&self, other: &FiniteGroup) -> bool {
        self.order() == other.order()
            && self.is_abelian() == other.is_abelian()
            && self.order_multiset() == other.order_multiset()
    }

    /// The semidirect product Z/2 x| G with Z/2 acting by inversion, on
    /// pairs labeled "e|g". When every element of G is an involution this
    /// is the direct product.
    pub fn semidirect_inversion(&self) -> Result<FiniteGroup> {
        if !self.is_abelian() {
            return Err(Error::NotAbelian);
        }
        let n = self.order();
        let idx = |eps: usize, g: usize| eps * n + g;
        let labels: Vec<String> = (0..2 * n)
            .map(|i| format!("{}|{}", i / n, self.labels[i % n]))
            .collect();
        let mut table = vec![vec![0usize; 2 * n]; 2 * n];
        for e1 in 0..2 {
            for g1 in 0..n {
                for e2 in 0..2 {
                    for g2 in 0..n {
                        // (e1, g1)(e2, g2) = (e1+e2, inv^{e2}(g1) * g2)
                        let twisted = if e2 == 1 { self.inv(g1) } else { g1 };
                        table[idx(e1, g1)][idx(e2, g2)] =
                            idx((e1 + e2) % 2, self.mul(twisted, g2));
                    }
                }
            }
        }
        FiniteGroup::from_table(labels, table)
    }
}

/// An exponent-valued normalized 2-cocycle c : G x G -> Z/m.
#[derive(Debug, Clone)]
pub struct ExponentCocycle {
    pub modulus: u64,
    pub table: Vec<Vec<u64>>,
}

impl ExponentCocycle {
    pub fn validate(group: &FiniteGroup, modulus: u64, table: Vec<Vec<u64>>) -> Result<ExponentCocycle> {
        let n = group.order();
        if modulus == 0 || table.len() != n || table.iter().any(|r| r.len() != n) {
            return Err(Error::BadGroupTable("cocycle table is not n x n".into()));
        }
        let e = group.identity();
        for s in 0..n {
            if table[s][e] % modulus != 0 || table[e][s] % modulus != 0 {
                return Err(Error::NotNormalized);
            }
        }
        for s in 0..n {
            for t in 0..n {
                for r in 0..n {
                    let lhs = (table[s][t] + table[group.mul(s, t)][r]) % modulus;
                    let rhs = (table[s][group.mul(t, r)] + table[t][r]) % modulus;
                    if lhs != rhs {
                        return Err(Error::CocycleIdentity {
                            sigma: group.label(s).into(),
                            tau: group.label(t).into(),
                            rho: group.label(r).into(),
                        });
                    }
                }
            }
        }
        Ok(ExponentCocycle { modulus, table })
    }
}

/// The central extension of G by Z/m defined by an exponent cocycle, on
/// pairs (g, i) labeled "g|i" with (g,i)(h,j) = (gh, i+j+c(g,h)).
#[derive(Debug, Clone)]
pub struct CentralExtensionGroup {
    group: FiniteGroup,
    modulus: u64,
}

impl CentralExtensionGroup {
    pub fn new(base: &FiniteGroup, cocycle: &ExponentCocycle) -> Result<CentralExtensionGroup> {
        let n = base.order();
        let m = cocycle.modulus as usize;
        ExponentCocycle::validate(base, cocycle.modulus, cocycle.table.clone())?;
        let idx = |g: usize, i: usize| g * m + i;
        let labels: Vec<String> = (0..n * m)
            .map(|k| format!("{}|{}", base.label(k / m), k % m))
            .collect();
        let mut table = vec![vec![0usize; n * m]; n * m];
        for g in 0..n {
            for i in 0..m {
                for h in 0..n {
                    for j in 0..m {
                        let sum = (i + j + cocycle.table[g][h] as usize) % m;
                        table[idx(g, i)][idx(h, j)] = idx(base.mul(g, h), sum);
                    }
                }
            }
        }
        let group = FiniteGroup::from_table(labels, table)?;
        let ext = CentralExtensionGroup {
            group,
            modulus: cocycle.modulus,
        };
        // The embedded Z/m must be central and must be exactly the kernel
        // of the projection; both checks are exhaustive.
        let e = base.identity();
        for i in 0..m {
            let z = ext.embed_center(i as u64);
            for x in 0..n * m {
                if ext.group.mul(z, x) != ext.group.mul(x, z) {
                    return Err(Error::Internal("central fiber is not central".into()));
                }
            }
            if ext.project(ext.embed_center(i as u64)) != e {
                return Err(Error::Internal("projection does not kill the fiber".into()));
            }
        }
        for x in 0..n * m {
            for y in 0..n * m {
                let p = ext.project(ext.group.mul(x, y));
                if p != base.mul(ext.project(x), ext.project(y)) {
                    return Err(Error::Internal("projection is not a homomorphism".into()));
                }
            }
        }
        Ok(ext)
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Index of the pair (g, i).
    pub fn pair_index(&self, g: usize, i: u64) -> usize {
        g * self.modulus as usize + (i % self.modulus) as usize
    }

    /// Projection (g, i) -> g.
    pub fn project(&self, x: usize) -> usize {
        x / self.modulus as usize
    }

    pub fn fiber_exponent(&self, x: usize) -> u64 {
        (x % self.modulus as usize) as u64
    }

    /// The central element (1, i).
    pub fn embed_center(&self, i: u64) -> usize {
        self.pair_index(self.project(self.group.identity()), i)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn abelian_constructions() {
        let z2 = FiniteGroup::abelian(&[2]).unwrap();
        assert_eq!(z2.order(), 2);
        let sigma = z2.index_of("1").unwrap();
        assert_eq!(z2.mul(sigma, sigma), z2.identity());

        let klein = FiniteGroup::abelian(&[2, 2]).unwrap();
        assert_eq!(klein.order(), 4);
        assert!(klein
            .labels()
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != klein.identity())
            .all(|(i, _)| klein.element_order(i) == 2));

        let z4 = FiniteGroup::abelian(&[4]).unwrap();
        assert_eq!(z4.element_order(z4.index_of("1").unwrap()), 4);

        assert_eq!(FiniteGroup::abelian(&[1]), Err(Error::BadInvariant(1)));
    }

    #[test]
    fn semidirect_on_z2_is_klein() {
        let z2 = FiniteGroup::abelian(&[2]).unwrap();
        let g = z2.semidirect_inversion().unwrap();
        assert_eq!(g.order(), 4);
        assert!(g.is_abelian());
        assert!(g.same_invariants(&FiniteGroup::abelian(&[2, 2]).unwrap()));
    }

    #[test]
    fn semidirect_on_z3_is_s3() {
        let z3 = FiniteGroup::abelian(&[3]).unwrap();
        let g = z3.semidirect_inversion().unwrap();
        assert_eq!(g.order(), 6);
        assert!(!g.is_abelian());
        // S3: identity, two 3-cycles, three transpositions.
        assert_eq!(g.order_multiset(), vec![1, 2, 2, 2, 3, 3]);
    }

    #[test]
    fn semidirect_on_z4_is_dihedral() {
        let z4 = FiniteGroup::abelian(&[4]).unwrap();
        let g = z4.semidirect_inversion().unwrap();
        assert_eq!(g.order(), 8);
        assert!(!g.is_abelian());
        // Verify the D4 presentation r^4 = s^2 = 1, s r s = r^{-1}.
        let r = g.index_of("0|1").unwrap();
        let s = g.index_of("1|0").unwrap();
        assert_eq!(g.element_order(r), 4);
        assert_eq!(g.element_order(s), 2);
        let srs = g.mul(g.mul(s, r), s);
        assert_eq!(srs, g.inv(r));
    }

    #[test]
    fn abelian_iff_exponent_two() {
        for invariants in [vec![2], vec![2, 2], vec![3], vec![4], vec![2, 4], vec![6]] {
            let g = FiniteGroup::abelian(&invariants).unwrap();
            let sd = g.semidirect_inversion().unwrap();
            let exponent_two = (0..g.order()).all(|a| g.element_order(a) <= 2);
            assert_eq!(sd.is_abelian(), exponent_two, "invariants {invariants:?}");
        }
    }

    #[test]
    fn central_extension_split_and_twisted() {
        let z2 = FiniteGroup::abelian(&[2]).unwrap();
        // c = 0: split extension Z/2 x Z/2.
        let c0 = ExponentCocycle::validate(&z2, 2, vec![vec![0, 0], vec![0, 0]]).unwrap();
        let split = CentralExtensionGroup::new(&z2, &c0).unwrap();
        assert!(split.group().same_invariants(&FiniteGroup::abelian(&[2, 2]).unwrap()));

        // c(s, s) = 1: the cyclic group Z/4, with (s, 0) of order 4.
        let c1 = ExponentCocycle::validate(&z2, 2, vec![vec![0, 0], vec![0, 1]]).unwrap();
        let twisted = CentralExtensionGroup::new(&z2, &c1).unwrap();
        assert!(twisted.group().same_invariants(&FiniteGroup::abelian(&[4]).unwrap()));
        let s0 = twisted.group().index_of("1|0").unwrap();
        assert_eq!(twisted.group().element_order(s0), 4);

        // Carry cocycle on Z/3 with m = 3 gives Z/9.
        let z3 = FiniteGroup::abelian(&[3]).unwrap();
        let mut carry = vec![vec![0u64; 3]; 3];
        for i in 0..3usize {
            for j in 0..3usize {
                if i + j >= 3 {
                    carry[i][j] = 1;
                }
            }
        }
        let c = ExponentCocycle::validate(&z3, 3, carry).unwrap();
        let ext = CentralExtensionGroup::new(&z3, &c).unwrap();
        assert!(ext.group().same_invariants(&FiniteGroup::abelian(&[9]).unwrap()));
        let s0 = ext.group().index_of("1|0").unwrap();
        assert_eq!(ext.group().element_order(s0), 9);
    }

    #[test]
    fn non_cocycle_rejected() {
        let z2 = FiniteGroup::abelian(&[2]).unwrap();
        // Non-normalized table.
        assert!(matches!(
            ExponentCocycle::validate(&z2, 2, vec![vec![1, 0], vec![0, 0]]),
            Err(Error::NotNormalized)
        ));
    }

    #[test]
    fn projection_recovers_base() {
        let z3 = FiniteGroup::abelian(&[3]).unwrap();
        let c = ExponentCocycle::validate(&z3, 2, vec![vec![0; 3]; 3]).unwrap();
        let ext = CentralExtensionGroup::new(&z3, &c).unwrap();
        assert_eq!(ext.group().order(), 6);
        for x in 0..6 {
            for y in 0..6 {
                let lhs = ext.project(ext.group().mul(x, y));
                let rhs = z3.mul(ext.project(x), ext.project(y));
                assert_eq!(lhs, rhs);
            }
        }
    }
}

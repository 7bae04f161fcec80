//! Hopf-algebra data over a [`StructureAlgebra`] and the exact axiom
//! verifiers: coassociativity, counit, bialgebra compatibility, antipode,
//! symmetry flags, group-like extraction, and isomorphism checking.
//!
//! A `HopfStructure` is plain data and may exist unverified; every axiom is
//! a check that runs to a status, never an assumption. Axioms are checked on
//! basis elements only — linearity extends them.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{
    sparse_normalize, sparse_scale, LinearMap, SparseVec, StructureAlgebra,
};
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::group::FiniteGroup;
use crate::linalg::Matrix;
use crate::report::{Check, Status};

/// An algebra together with candidate maps Delta, epsilon, S.
#[derive(Debug, Clone)]
pub struct HopfStructure {
    pub algebra: StructureAlgebra,
    /// delta[i] lives in the tensor square, pair index a * dim + b.
    pub delta: Vec<SparseVec>,
    pub counit: Vec<FieldElement>,
    /// antipode[i] is the image of basis element i.
    pub antipode: Vec<SparseVec>,
}

/// Options for the verification sweeps.
#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub parallel: bool,
    /// Exhaustive pair sweeps; when false, pairs are sampled with full
    /// first-factor coverage and a strided second factor.
    pub exhaustive_pairs: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            parallel: true,
            exhaustive_pairs: true,
        }
    }
}

/// Per-axiom statuses, symmetry flags, and dimensions — the certificate
/// fragment every construction reports.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AxiomCertificate {
    pub dim: usize,
    pub checks: Vec<Check>,
    pub cocommutative: bool,
    pub commutative: bool,
}

impl AxiomCertificate {
    pub fn all_pass(&self) -> bool {
        crate::report::all_pass(&self.checks)
    }
}

impl HopfStructure {
    pub fn new(
        algebra: StructureAlgebra,
        delta: Vec<SparseVec>,
        counit: Vec<FieldElement>,
        antipode: Vec<SparseVec>,
    ) -> Result<HopfStructure> {
        let dim = algebra.dim();
        if delta.len() != dim || counit.len() != dim || antipode.len() != dim {
            return Err(Error::MapDimensionMismatch(format!(
                "maps must all have {dim} columns"
            )));
        }
        for col in &delta {
            if col.iter().any(|(p, _)| *p >= dim * dim) {
                return Err(Error::MapDimensionMismatch("delta index out of range".into()));
            }
        }
        for col in &antipode {
            if col.iter().any(|(p, _)| *p >= dim) {
                return Err(Error::MapDimensionMismatch("antipode index out of range".into()));
            }
        }
        Ok(HopfStructure {
            algebra,
            delta,
            counit,
            antipode,
        })
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn field(&self) -> &Field {
        self.algebra.field()
    }

    pub fn apply_delta(&self, v: &SparseVec) -> SparseVec {
        let mut terms = Vec::new();
        for (i, c) in v {
            for (p, cp) in &self.delta[*i] {
                terms.push((*p, c * cp));
            }
        }
        sparse_normalize(terms)
    }

    pub fn apply_antipode(&self, v: &SparseVec) -> SparseVec {
        let mut terms = Vec::new();
        for (i, c) in v {
            for (k, ck) in &self.antipode[*i] {
                terms.push((*k, c * ck));
            }
        }
        sparse_normalize(terms)
    }

    pub fn counit_of(&self, v: &SparseVec) -> FieldElement {
        let mut acc = self.field().zero();
        for (i, c) in v {
            acc = &acc + &(c * &self.counit[*i]);
        }
        acc
    }

    /// Product in the tensor-square algebra, componentwise.
    pub fn tensor_mul(&self, a: &SparseVec, b: &SparseVec) -> SparseVec {
        let dim = self.dim();
        let mut terms = Vec::new();
        for (p, cp) in a {
            let (a1, a2) = (p / dim, p % dim);
            for (q, cq) in b {
                let (b1, b2) = (q / dim, q % dim);
                let left = self.algebra.basis_product(a1, b1);
                if left.is_empty() {
                    continue;
                }
                let right = self.algebra.basis_product(a2, b2);
                if right.is_empty() {
                    continue;
                }
                let c = cp * cq;
                for (k1, c1) in left {
                    for (k2, c2) in right {
                        terms.push((k1 * dim + k2, &(&c * c1) * c2));
                    }
                }
            }
        }
        sparse_normalize(terms)
    }

    /// (Delta (x) id) Delta = (id (x) Delta) Delta on every basis element.
    pub fn verify_coassociativity(&self) -> Check {
        let dim = self.dim();
        let failure = |i: usize| -> bool {
            let d = &self.delta[i];
            let mut left: SparseVec = Vec::new(); // triple index (a*dim + b)*dim + c
            let mut right: SparseVec = Vec::new();
            for (p, c) in d {
                let (x, y) = (p / dim, p % dim);
                for (q, cq) in &self.delta[x] {
                    left.push((*q * dim + y, c * cq));
                }
                for (q, cq) in &self.delta[y] {
                    right.push(((x * dim + q / dim) * dim + q % dim, c * cq));
                }
            }
            sparse_normalize(left) != sparse_normalize(right)
        };
        match (0..dim).find(|&i| failure(i)) {
            None => Check::pass("coassociativity"),
            Some(i) => Check::fail(
                "coassociativity",
                format!("fails on basis element {}", self.algebra.label(i)),
            ),
        }
    }

    /// (epsilon (x) id) Delta = id = (id (x) epsilon) Delta.
    pub fn verify_counit(&self) -> Check {
        let dim = self.dim();
        for i in 0..dim {
            let mut left: SparseVec = Vec::new();
            let mut right: SparseVec = Vec::new();
            for (p, c) in &self.delta[i] {
                let (x, y) = (p / dim, p % dim);
                if !self.counit[x].is_zero() {
                    left.push((y, c * &self.counit[x]));
                }
                if !self.counit[y].is_zero() {
                    right.push((x, c * &self.counit[y]));
                }
            }
            let e = vec![(i, self.field().one())];
            if sparse_normalize(left) != e || sparse_normalize(right) != e {
                return Check::fail(
                    "counit",
                    format!("fails on basis element {}", self.algebra.label(i)),
                );
            }
        }
        Check::pass("counit")
    }

    /// Delta and epsilon are algebra maps; Delta(1) = 1 (x) 1, epsilon(1) = 1.
    pub fn verify_bialgebra(&self, options: VerifyOptions) -> Check {
        let dim = self.dim();
        let unit = self.algebra.unit();
        let delta_unit = self.apply_delta(unit);
        let mut unit_tensor: SparseVec = Vec::new();
        for (i, ci) in unit {
            for (j, cj) in unit {
                unit_tensor.push((i * dim + j, ci * cj));
            }
        }
        if delta_unit != sparse_normalize(unit_tensor) {
            return Check::fail("bialgebra", "Delta(1) != 1 (x) 1");
        }
        if !self.counit_of(unit).is_one() {
            return Check::fail("bialgebra", "epsilon(1) != 1");
        }
        let pair_fails = |i: usize, j: usize| -> bool {
            let prod = self.algebra.basis_product(i, j);
            let lhs = self.apply_delta(prod);
            let rhs = self.tensor_mul(&self.delta[i], &self.delta[j]);
            if lhs != rhs {
                return true;
            }
            let eps_prod = self.counit_of(prod);
            &self.counit[i] * &self.counit[j] != eps_prod
        };
        let pairs: Vec<(usize, usize)> = if options.exhaustive_pairs {
            (0..dim).flat_map(|i| (0..dim).map(move |j| (i, j))).collect()
        } else {
            let stride = (dim / 17).max(1);
            (0..dim)
                .flat_map(|i| (0..dim).step_by(stride).map(move |j| (i, j)))
                .collect()
        };
        let failure = if options.parallel {
            pairs.par_iter().find_first(|(i, j)| pair_fails(*i, *j)).copied()
        } else {
            pairs.iter().find(|(i, j)| pair_fails(*i, *j)).copied()
        };
        match failure {
            None => {
                if options.exhaustive_pairs {
                    Check::pass("bialgebra")
                } else {
                    Check::pass("bialgebra").with_detail("sampled pair sweep")
                }
            }
            Some((i, j)) => Check::fail(
                "bialgebra",
                format!(
                    "Delta or epsilon not multiplicative at ({}, {})",
                    self.algebra.label(i),
                    self.algebra.label(j)
                ),
            ),
        }
    }

    /// m(S (x) id) Delta = u epsilon = m(id (x) S) Delta.
    pub fn verify_antipode(&self) -> Check {
        let dim = self.dim();
        for i in 0..dim {
            let mut left: SparseVec = Vec::new();
            let mut right: SparseVec = Vec::new();
            for (p, c) in &self.delta[i] {
                let (x, y) = (p / dim, p % dim);
                let sx = &self.antipode[x];
                let sy = &self.antipode[y];
                for term in self
                    .algebra
                    .mul(&sparse_scale(c, sx), &vec![(y, self.field().one())])
                {
                    left.push(term);
                }
                for term in self
                    .algebra
                    .mul(&vec![(x, c.clone())], sy)
                {
                    right.push(term);
                }
            }
            let expect = sparse_scale(&self.counit[i], self.algebra.unit());
            if sparse_normalize(left) != expect || sparse_normalize(right) != expect {
                return Check::fail(
                    "antipode",
                    format!("fails on basis element {}", self.algebra.label(i)),
                );
            }
        }
        Check::pass("antipode")
    }

    /// flip o Delta = Delta on every basis element.
    pub fn is_cocommutative(&self) -> bool {
        let dim = self.dim();
        (0..dim).all(|i| {
            let flipped: SparseVec = self.delta[i]
                .iter()
                .map(|(p, c)| ((p % dim) * dim + p / dim, c.clone()))
                .collect();
            sparse_normalize(flipped) == self.delta[i]
        })
    }

    /// The full axiom suite with flags and dimension.
    pub fn verify_all(&self, options: VerifyOptions) -> AxiomCertificate {
        let checks = vec![
            self.verify_coassociativity(),
            self.verify_counit(),
            self.verify_bialgebra(options),
            self.verify_antipode(),
        ];
        AxiomCertificate {
            dim: self.dim(),
            checks,
            cocommutative: self.is_cocommutative(),
            commutative: self.algebra.is_commutative(),
        }
    }
}

/// The group algebra kG with its standard Hopf structure: Delta(g) = g (x) g,
/// epsilon(g) = 1, S(g) = g^{-1}.
pub fn group_algebra_hopf(group: &FiniteGroup, field: &Field) -> Result<HopfStructure> {
    let alpha = crate::cocycle::TwoCocycle::trivial(
        std::sync::Arc::new(group.clone()),
        field,
    );
    let algebra = crate::algebra::twisted_group_algebra(group, &alpha)?;
    let n = group.order();
    let delta: Vec<SparseVec> = (0..n).map(|g| vec![(g * n + g, field.one())]).collect();
    let counit = vec![field.one(); n];
    let antipode: Vec<SparseVec> = (0..n).map(|g| vec![(group.inv(g), field.one())]).collect();
    HopfStructure::new(algebra, delta, counit, antipode)
}

/// Tensor product of Hopf structures: componentwise algebra, coalgebra, and
/// antipode (with the middle flip in Delta).
pub fn tensor_hopf(a: &HopfStructure, b: &HopfStructure) -> Result<HopfStructure> {
    let algebra = crate::algebra::tensor_product(&a.algebra, &b.algebra)?;
    let (da, db) = (a.dim(), b.dim());
    let dim = da * db;
    let idx = |i: usize, j: usize| i * db + j;
    let mut delta = Vec::with_capacity(dim);
    let mut counit = Vec::with_capacity(dim);
    let mut antipode = Vec::with_capacity(dim);
    for i in 0..da {
        for j in 0..db {
            let mut terms = Vec::new();
            for (p, cp) in &a.delta[i] {
                let (x1, x2) = (p / da, p % da);
                for (q, cq) in &b.delta[j] {
                    let (y1, y2) = (q / db, q % db);
                    terms.push((idx(x1, y1) * dim + idx(x2, y2), cp * cq));
                }
            }
            delta.push(sparse_normalize(terms));
            counit.push(&a.counit[i] * &b.counit[j]);
            let mut s_terms = Vec::new();
            for (k1, c1) in &a.antipode[i] {
                for (k2, c2) in &b.antipode[j] {
                    s_terms.push((idx(*k1, *k2), c1 * c2));
                }
            }
            antipode.push(sparse_normalize(s_terms));
        }
    }
    HopfStructure::new(algebra, delta, counit, antipode)
}

/// Extends scalars of a Hopf structure over k to a field containing k.
pub fn extend_scalars(h: &HopfStructure, bigger: &Field) -> Result<HopfStructure> {
    let embed_sparse = |v: &SparseVec| -> Result<SparseVec> {
        v.iter()
            .map(|(i, c)| Ok((*i, bigger.embed(c)?)))
            .collect()
    };
    let dim = h.dim();
    let mut products = Vec::with_capacity(dim * dim);
    for i in 0..dim {
        for j in 0..dim {
            products.push(embed_sparse(h.algebra.basis_product(i, j))?);
        }
    }
    let algebra = StructureAlgebra::new(
        bigger.clone(),
        h.algebra.basis_labels().to_vec(),
        products,
        embed_sparse(h.algebra.unit())?,
    )?;
    Ok(HopfStructure {
        algebra,
        delta: h.delta.iter().map(|v| embed_sparse(v)).collect::<Result<_>>()?,
        counit: h.counit.iter().map(|c| bigger.embed(c)).collect::<Result<_>>()?,
        antipode: h
            .antipode
            .iter()
            .map(|v| embed_sparse(v))
            .collect::<Result<_>>()?,
    })
}

/// Rewrites a Hopf structure in a new basis (given as old-coordinate
/// vectors); all maps are conjugated by the base change.
pub fn change_basis(
    h: &HopfStructure,
    new_basis: &[SparseVec],
    labels: Vec<String>,
) -> Result<HopfStructure> {
    let dim = h.dim();
    if new_basis.len() != dim {
        return Err(Error::MapDimensionMismatch(format!(
            "{} new basis vectors for dimension {dim}",
            new_basis.len()
        )));
    }
    let field = h.field().clone();
    let mut p = Matrix::zero(&field, dim, dim);
    for (j, v) in new_basis.iter().enumerate() {
        for (i, c) in v {
            p.set(*i, j, c.clone());
        }
    }
    let q = p
        .inverse()
        .ok_or_else(|| Error::MapDimensionMismatch("new basis is singular".into()))?;
    let to_new = |v: &SparseVec| -> SparseVec {
        let dense = crate::algebra::sparse_to_dense(&field, dim, v);
        crate::algebra::sparse_from_dense(&q.mul_vec(&dense))
    };
    let to_new_pair = |v: &SparseVec| -> SparseVec {
        // Apply Q (x) Q to a tensor-square vector.
        let mut terms = Vec::new();
        for (pidx, c) in v {
            let (x, y) = (pidx / dim, pidx % dim);
            let qx = to_new(&vec![(x, field.one())]);
            let qy = to_new(&vec![(y, field.one())]);
            for (a, ca) in &qx {
                for (b, cb) in &qy {
                    terms.push((a * dim + b, &(c * ca) * cb));
                }
            }
        }
        sparse_normalize(terms)
    };
    let mut products = Vec::with_capacity(dim * dim);
    for i in 0..dim {
        for j in 0..dim {
            products.push(to_new(&h.algebra.mul(&new_basis[i], &new_basis[j])));
        }
    }
    let algebra = StructureAlgebra::new(field.clone(), labels, products, to_new(h.algebra.unit()))?;
    let delta: Vec<SparseVec> = new_basis
        .iter()
        .map(|v| to_new_pair(&h.apply_delta(v)))
        .collect();
    let counit: Vec<FieldElement> = new_basis.iter().map(|v| h.counit_of(v)).collect();
    let antipode: Vec<SparseVec> = new_basis
        .iter()
        .map(|v| to_new(&h.apply_antipode(v)))
        .collect();
    HopfStructure::new(algebra, delta, counit, antipode)
}

/// The group-like elements of the dual: all algebra maps B -> k, available
/// when the basis consists of orthogonal idempotents partitioning the unit
/// (the only case this artifact needs). The convolution table they generate
/// is returned as a verified group.
pub struct GroupLikes {
    /// The convolution group on the dual functionals, labeled by the basis
    /// labels of the underlying algebra.
    pub group: FiniteGroup,
}

pub fn group_like_elements(h: &HopfStructure) -> Result<GroupLikes> {
    let dim = h.dim();
    let field = h.field().clone();
    // The basis must be a complete family of orthogonal idempotents.
    for i in 0..dim {
        for j in 0..dim {
            let p = h.algebra.basis_product(i, j);
            let expect: SparseVec = if i == j {
                vec![(i, field.one())]
            } else {
                Vec::new()
            };
            if *p != expect {
                return Err(Error::Internal(
                    "group-like extraction needs an orthogonal idempotent basis".into(),
                ));
            }
        }
    }
    let full_unit: SparseVec = (0..dim).map(|i| (i, field.one())).collect();
    if *h.algebra.unit() != full_unit {
        return Err(Error::Internal(
            "idempotent basis does not partition the unit".into(),
        ));
    }
    // chi_i * chi_j is the functional b -> coefficient of (i, j) in Delta(b);
    // for a Hopf structure it must be another chi_k.
    let mut table = vec![vec![0usize; dim]; dim];
    for i in 0..dim {
        for j in 0..dim {
            let values: Vec<FieldElement> = (0..dim)
                .map(|b| {
                    h.delta[b]
                        .iter()
                        .find(|(p, _)| *p == i * dim + j)
                        .map(|(_, c)| c.clone())
                        .unwrap_or_else(|| field.zero())
                })
                .collect();
            let k = (0..dim).find(|&k| {
                values
                    .iter()
                    .enumerate()
                    .all(|(b, v)| if b == k { v.is_one() } else { v.is_zero() })
            });
            match k {
                Some(k) => table[i][j] = k,
                None => {
                    return Err(Error::Internal(format!(
                        "convolution of functionals {} and {} is not a functional",
                        h.algebra.label(i),
                        h.algebra.label(j)
                    )))
                }
            }
        }
    }
    let group = FiniteGroup::from_table(h.algebra.basis_labels().to_vec(), table)
        .map_err(|e| Error::Internal(format!("group-likes do not form a group: {e}")))?;
    Ok(GroupLikes { group })
}

/// Result of checking a linear map as a Hopf-algebra isomorphism.
#[derive(Debug, Clone)]
pub struct IsoReport {
    pub bijective: bool,
    pub algebra_map: bool,
    pub comultiplicative: bool,
    pub counit_compatible: bool,
    pub antipode_compatible: bool,
}

impl IsoReport {
    pub fn status(&self) -> Status {
        Status::from_bool(
            self.bijective
                && self.algebra_map
                && self.comultiplicative
                && self.counit_compatible
                && self.antipode_compatible,
        )
    }
}

/// phi must be bijective, an algebra map, and commute with Delta, epsilon,
/// and S.
pub fn hopf_iso_check(
    phi: &LinearMap,
    from: &HopfStructure,
    to: &HopfStructure,
) -> Result<IsoReport> {
    if from.dim() != to.dim() {
        return Err(Error::MapDimensionMismatch(
            "isomorphism candidates must have equal dimensions".into(),
        ));
    }
    let dim = from.dim();
    let field = from.field();
    let hom = crate::algebra::hom_check(phi, &from.algebra, &to.algebra)?;
    let bijective = phi.rank(field) == dim;
    let phi_tensor = |v: &SparseVec| -> SparseVec {
        let mut terms = Vec::new();
        for (p, c) in v {
            let (x, y) = (p / dim, p % dim);
            for (a, ca) in phi.column(x) {
                for (b, cb) in phi.column(y) {
                    terms.push((a * dim + b, &(c * ca) * cb));
                }
            }
        }
        sparse_normalize(terms)
    };
    let mut comultiplicative = true;
    let mut counit_compatible = true;
    let mut antipode_compatible = true;
    for i in 0..dim {
        let e = vec![(i, field.one())];
        if phi_tensor(&from.delta[i]) != to.apply_delta(&phi.apply(&e)) {
            comultiplicative = false;
        }
        if to.counit_of(&phi.apply(&e)) != from.counit[i] {
            counit_compatible = false;
        }
        if phi.apply(&from.antipode[i]) != to.apply_antipode(&phi.apply(&e)) {
            antipode_compatible = false;
        }
    }
    Ok(IsoReport {
        bijective,
        algebra_map: hom.is_homomorphism(),
        comultiplicative,
        counit_compatible,
        antipode_compatible,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::fun_algebra;
    use std::sync::Arc;

    fn kz3_hopf() -> HopfStructure {
        let z3 = FiniteGroup::abelian(&[3]).unwrap();
        group_algebra_hopf(&z3, &Field::rationals()).unwrap()
    }

    #[test]
    fn group_algebra_passes_all_axioms() {
        let h = kz3_hopf();
        let cert = h.verify_all(VerifyOptions::default());
        assert!(cert.all_pass(), "{:?}", cert.checks);
        assert!(cert.cocommutative);
        assert!(cert.commutative);
    }

    #[test]
    fn corrupted_delta_is_caught() {
        let mut h = kz3_hopf();
        // Send sigma to sigma (x) sigma^2: still counital on one side only.
        h.delta[1] = vec![(1 * 3 + 2, Field::rationals().one())];
        let cert = h.verify_all(VerifyOptions::default());
        assert!(!cert.all_pass());
    }

    #[test]
    fn dual_of_fun_algebra_recovers_the_group() {
        // Fun(G, k) with Delta(e_x) = sum_{ab=x} e_a (x) e_b: the dual
        // group-likes are G itself.
        let q = Field::rationals();
        let z3 = Arc::new(FiniteGroup::abelian(&[3]).unwrap());
        let algebra = fun_algebra(&z3, &q).unwrap();
        let n = 3;
        let mut delta = vec![Vec::new(); n];
        for x in 0..n {
            let mut terms = Vec::new();
            for a in 0..n {
                for b in 0..n {
                    if z3.mul(a, b) == x {
                        terms.push((a * n + b, q.one()));
                    }
                }
            }
            delta[x] = sparse_normalize(terms);
        }
        let counit: Vec<FieldElement> = (0..n)
            .map(|x| if x == z3.identity() { q.one() } else { q.zero() })
            .collect();
        let antipode: Vec<SparseVec> = (0..n).map(|x| vec![(z3.inv(x), q.one())]).collect();
        let h = HopfStructure::new(algebra, delta, counit, antipode).unwrap();
        assert!(h.verify_all(VerifyOptions::default()).all_pass());
        let likes = group_like_elements(&h).unwrap();
        assert!(likes.group.same_invariants(&z3));
        // The convolution table is literally the Cayley table of G.
        for a in 0..n {
            for b in 0..n {
                assert_eq!(likes.group.mul(a, b), z3.mul(a, b));
            }
        }
    }

    #[test]
    fn identity_is_a_hopf_isomorphism() {
        let h = kz3_hopf();
        let id = LinearMap::identity(3, &Field::rationals());
        let rep = hopf_iso_check(&id, &h, &h).unwrap();
        assert!(rep.status().is_pass());
    }

    #[test]
    fn change_basis_round_trip_preserves_axioms() {
        let h = kz3_hopf();
        let q = Field::rationals();
        // Mix the basis with an invertible triangular transform.
        let new_basis: Vec<SparseVec> = vec![
            vec![(0, q.one())],
            vec![(0, q.one()), (1, q.one())],
            vec![(0, q.one()), (1, q.one()), (2, q.one())],
        ];
        let labels = vec!["b0".into(), "b1".into(), "b2".into()];
        let h2 = change_basis(&h, &new_basis, labels).unwrap();
        assert!(h2.verify_all(VerifyOptions::default()).all_pass());
    }

    #[test]
    fn tensor_of_group_algebras_passes() {
        let h = kz3_hopf();
        let t = tensor_hopf(&h, &h).unwrap();
        assert_eq!(t.dim(), 9);
        assert!(t.verify_all(VerifyOptions::default()).all_pass());
        assert!(t.is_cocommutative());
    }

    #[test]
    fn extend_scalars_keeps_axioms() {
        let h = kz3_hopf();
        let qi = crate::testutil::gaussian_field();
        let ext = extend_scalars(&h, &qi).unwrap();
        assert_eq!(*ext.field(), qi);
        assert!(ext.verify_all(VerifyOptions::default()).all_pass());
    }
}

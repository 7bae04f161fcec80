//! 2-cocycles on a finite group with values in k*, their coboundary
//! witnesses, and the two normal forms the constructions need: values moved
//! into the m-th roots of unity, and the carry form of a cocycle over a
//! cyclic extension.
//!
//! Coboundary solving is implemented for cocycles valued in a finite cyclic
//! subgroup <zeta_N> of k*: writing values as exponents turns "is alpha^m a
//! coboundary" into a linear system over Z/N, solved through the integer
//! Smith normal form. For arbitrary ("free") values the caller must import
//! an explicit witness; its minimality is then only asserted, never proved.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::galois::GaloisExtension;
use crate::group::FiniteGroup;
use crate::linalg::solve_mod;

/// Where the cocycle's values are known to live.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ValueSubgroup {
    /// The cyclic subgroup generated by a primitive N-th root of unity.
    RootsOfUnity { order: u64 },
    /// Arbitrary nonzero values; coboundary solving is unavailable.
    Free,
}

/// Whether the minimality of a witness order was proved or taken on trust.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Minimality {
    Certified,
    AssertedByUser,
}

/// A coboundary witness: alpha^m = df with f(1) = 1.
#[derive(Debug, Clone)]
pub struct CoboundaryWitness {
    pub order: u64,
    /// f indexed by group element.
    pub cochain: Vec<FieldElement>,
    pub minimality: Minimality,
}

/// A validated 2-cocycle alpha : G x G -> k*.
#[derive(Debug, Clone)]
pub struct TwoCocycle {
    group: Arc<FiniteGroup>,
    field: Field,
    values: Vec<Vec<FieldElement>>,
    subgroup: ValueSubgroup,
    /// Generator of the declared value subgroup, cached at validation.
    zeta: Option<FieldElement>,
}

impl TwoCocycle {
    /// Checks that all values are nonzero, that the cocycle identity holds
    /// for every triple, and that declared roots-of-unity values really lie
    /// in `<zeta_N>`.
    pub fn validate(
        group: Arc<FiniteGroup>,
        field: &Field,
        values: Vec<Vec<FieldElement>>,
        subgroup: ValueSubgroup,
    ) -> Result<TwoCocycle> {
        let n = group.order();
        if values.len() != n || values.iter().any(|r| r.len() != n) {
            return Err(Error::BadGroupTable("cocycle table is not n x n".into()));
        }
        for (s, row) in values.iter().enumerate() {
            for (t, v) in row.iter().enumerate() {
                if v.is_zero() {
                    return Err(Error::CocycleZeroValue {
                        sigma: group.label(s).into(),
                        tau: group.label(t).into(),
                    });
                }
            }
        }
        for s in 0..n {
            for t in 0..n {
                for r in 0..n {
                    let lhs = &values[s][t] * &values[group.mul(s, t)][r];
                    let rhs = &values[s][group.mul(t, r)] * &values[t][r];
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
        let zeta = match &subgroup {
            ValueSubgroup::RootsOfUnity { order } => {
                let zeta = field.primitive_root_of_unity(*order)?;
                for (s, row) in values.iter().enumerate() {
                    for (t, v) in row.iter().enumerate() {
                        if v.dlog(&zeta, *order).is_none() {
                            return Err(Error::ValueOutsideSubgroup {
                                sigma: group.label(s).into(),
                                tau: group.label(t).into(),
                                order: *order,
                            });
                        }
                    }
                }
                Some(zeta)
            }
            ValueSubgroup::Free => None,
        };
        Ok(TwoCocycle {
            group,
            field: field.clone(),
            values,
            subgroup,
            zeta,
        })
    }

    /// The constant cocycle 1.
    pub fn trivial(group: Arc<FiniteGroup>, field: &Field) -> TwoCocycle {
        let n = group.order();
        let values = vec![vec![field.one(); n]; n];
        TwoCocycle::validate(group, field, values, ValueSubgroup::RootsOfUnity { order: 1 })
            .expect("the constant cocycle is valid")
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn subgroup(&self) -> &ValueSubgroup {
        &self.subgroup
    }

    pub fn zeta(&self) -> Option<&FieldElement> {
        self.zeta.as_ref()
    }

    pub fn value(&self, s: usize, t: usize) -> &FieldElement {
        &self.values[s][t]
    }

    pub fn is_normalized(&self) -> bool {
        let e = self.group.identity();
        (0..self.group.order())
            .all(|s| self.values[s][e].is_one() && self.values[e][s].is_one())
    }

    /// alpha^n, entry-wise.
    pub fn pow(&self, n: u64) -> TwoCocycle {
        TwoCocycle {
            group: self.group.clone(),
            field: self.field.clone(),
            values: self
                .values
                .iter()
                .map(|row| row.iter().map(|v| v.pow(n)).collect())
                .collect(),
            subgroup: self.subgroup.clone(),
            zeta: self.zeta.clone(),
        }
    }

    /// Returns a cohomologous normalized cocycle together with the 1-cochain
    /// g used, so that out = self * dg exactly.
    ///
    /// For any valid cocycle the whole border is the constant c = alpha(1,1),
    /// so the constant cochain g = c^{-1} normalizes.
    pub fn normalize(&self) -> (TwoCocycle, Vec<FieldElement>) {
        let e = self.group.identity();
        let c = &self.values[e][e];
        if self.is_normalized() {
            return (
                self.clone(),
                vec![self.field.one(); self.group.order()],
            );
        }
        let g_val = c.inv().expect("cocycle values are nonzero");
        let n = self.group.order();
        let g = vec![g_val.clone(); n];
        let values: Vec<Vec<FieldElement>> = (0..n)
            .map(|s| {
                (0..n)
                    .map(|t| {
                        let dg = &(&g[s] * &g[t]) * &g[self.group.mul(s, t)].inv().unwrap();
                        &self.values[s][t] * &dg
                    })
                    .collect()
            })
            .collect();
        let subgroup = self.subgroup.clone();
        let out = TwoCocycle::validate(self.group.clone(), &self.field, values, subgroup)
            .expect("normalization preserves the cocycle identity");
        (out, g)
    }

    /// The exponent table of the values with respect to the cached zeta.
    pub fn exponent_table(&self) -> Result<Vec<Vec<u64>>> {
        let (zeta, order) = match (&self.zeta, &self.subgroup) {
            (Some(z), ValueSubgroup::RootsOfUnity { order }) => (z, *order),
            _ => return Err(Error::FreeValuedCocycle),
        };
        Ok(self
            .values
            .iter()
            .map(|row| {
                row.iter()
                    .map(|v| v.dlog(zeta, order).expect("validated membership"))
                    .collect()
            })
            .collect())
    }

    /// The coboundary matrix of the group: row (s, t), column g holds the
    /// coefficient of x_g in x_s + x_t - x_{st}.
    fn coboundary_matrix(group: &FiniteGroup) -> Vec<Vec<BigInt>> {
        let n = group.order();
        let mut rows = Vec::with_capacity(n * n);
        for s in 0..n {
            for t in 0..n {
                let mut row = vec![BigInt::from(0); n];
                row[s] += 1;
                row[t] += 1;
                row[group.mul(s, t)] -= 1;
                rows.push(row);
            }
        }
        rows
    }

    /// Whether alpha^m is a coboundary of a `<zeta_N>`-valued cochain, and
    /// if so one exponent solution.
    fn solve_power_coboundary(&self, m: u64) -> Result<Option<Vec<u64>>> {
        let exps = self.exponent_table()?;
        let order = match &self.subgroup {
            ValueSubgroup::RootsOfUnity { order } => *order,
            ValueSubgroup::Free => unreachable!("exponent_table checked"),
        };
        let n = self.group.order();
        let b: Vec<BigInt> = (0..n * n)
            .map(|k| BigInt::from((m as u128 * exps[k / n][k % n] as u128 % order as u128) as u64))
            .collect();
        let a = Self::coboundary_matrix(&self.group);
        Ok(solve_mod(&a, &b, order).map(|x| {
            x.iter()
                .map(|v| v.to_u64().expect("residue fits"))
                .collect()
        }))
    }

    /// Whether alpha^m is the coboundary of a cochain valued in the
    /// declared roots-of-unity subgroup.
    pub fn is_power_coboundary(&self, m: u64) -> Result<bool> {
        Ok(self.solve_power_coboundary(m)?.is_some())
    }

    /// The order m of the cohomology class within the declared value
    /// subgroup, with the witness cochain f such that alpha^m = df.
    ///
    /// Solvable powers form a subgroup of Z containing N, so scanning the
    /// divisors of N in increasing order finds the global minimum.
    pub fn class_order(&self) -> Result<CoboundaryWitness> {
        if !self.is_normalized() {
            return Err(Error::NotNormalized);
        }
        let (zeta, order) = match (&self.zeta, &self.subgroup) {
            (Some(z), ValueSubgroup::RootsOfUnity { order }) => (z.clone(), *order),
            _ => return Err(Error::FreeValuedCocycle),
        };
        let mut divisors: Vec<u64> = (1..=order).filter(|d| order % d == 0).collect();
        divisors.sort_unstable();
        for m in divisors {
            if let Some(exps) = self.solve_power_coboundary(m)? {
                let cochain: Vec<FieldElement> =
                    exps.iter().map(|e| zeta.pow(*e)).collect();
                let witness = CoboundaryWitness {
                    order: m,
                    cochain,
                    minimality: Minimality::Certified,
                };
                self.verify_witness(&witness)?;
                return Ok(witness);
            }
        }
        Err(Error::Internal(
            "alpha^N must always be a coboundary of the zero cochain".into(),
        ))
    }

    /// Exhaustive check of alpha^m = df and f(1) = 1.
    pub fn verify_witness(&self, witness: &CoboundaryWitness) -> Result<()> {
        let n = self.group.order();
        let e = self.group.identity();
        if witness.cochain.len() != n {
            return Err(Error::BadCoefficientLength {
                got: witness.cochain.len(),
                expected: n,
            });
        }
        if !witness.cochain[e].is_one() {
            return Err(Error::WitnessMismatch {
                sigma: self.group.label(e).into(),
                tau: self.group.label(e).into(),
            });
        }
        for s in 0..n {
            for t in 0..n {
                let lhs = self.values[s][t].pow(witness.order);
                let df = &(&witness.cochain[s] * &witness.cochain[t])
                    * &witness.cochain[self.group.mul(s, t)].inv()?;
                if lhs != df {
                    return Err(Error::WitnessMismatch {
                        sigma: self.group.label(s).into(),
                        tau: self.group.label(t).into(),
                    });
                }
            }
        }
        Ok(())
    }

    /// Verifies an externally supplied witness: Eq. alpha^m = df everywhere,
    /// and minimality of m inside the declared value subgroup. For free
    /// values, minimality cannot be decided and is marked as asserted.
    pub fn import_witness(&self, m: u64, cochain: Vec<FieldElement>) -> Result<CoboundaryWitness> {
        if m == 0 {
            return Err(Error::WitnessNotMinimal {
                claimed: 0,
                smaller: 0,
            });
        }
        let mut witness = CoboundaryWitness {
            order: m,
            cochain,
            minimality: Minimality::AssertedByUser,
        };
        self.verify_witness(&witness)?;
        if matches!(self.subgroup, ValueSubgroup::RootsOfUnity { .. }) {
            for smaller in 1..m {
                if self.solve_power_coboundary(smaller)?.is_some() {
                    return Err(Error::WitnessNotMinimal {
                        claimed: m,
                        smaller,
                    });
                }
            }
            witness.minimality = Minimality::Certified;
        }
        Ok(witness)
    }

    /// Moves the cocycle into `<zeta_m>` by dividing out the coboundary of a
    /// cochain g, searched over a finite pool in lexicographic order (so
    /// ties break deterministically toward the smallest exponent vector).
    /// The result is cohomologous to the input, normalized, and carries the
    /// identically-1 witness for the same order m.
    pub fn root_normalize(
        &self,
        witness: &CoboundaryWitness,
        zeta_m: &FieldElement,
    ) -> Result<(TwoCocycle, Vec<FieldElement>)> {
        if !self.is_normalized() {
            return Err(Error::NotNormalized);
        }
        let m = witness.order;
        if zeta_m.multiplicative_order(m) != Some(m) {
            return Err(Error::NoPrimitiveRoot { order: m });
        }
        let n = self.group.order();
        let in_zeta_m = |v: &FieldElement| v.dlog(zeta_m, m).is_some();
        let f_is_one = witness.cochain.iter().all(|f| f.is_one());
        if f_is_one && self.values.iter().flatten().all(in_zeta_m) {
            let out = TwoCocycle::validate(
                self.group.clone(),
                &self.field,
                self.values.clone(),
                ValueSubgroup::RootsOfUnity { order: m },
            )?;
            return Ok((out, vec![self.field.one(); n]));
        }

        let pool = self.root_search_pool(m)?;
        let e = self.group.identity();
        let slots: Vec<usize> = (0..n).filter(|&g| g != e).collect();
        let combos = (pool.len() as f64).powi(slots.len() as i32);
        if combos > 400_000.0 {
            return Err(Error::SearchSpaceTooLarge(format!(
                "{} cochain candidates in root normalization",
                combos
            )));
        }
        let mut pick = vec![0usize; slots.len()];
        loop {
            let mut g = vec![self.field.one(); n];
            for (slot, &p) in slots.iter().zip(&pick) {
                g[*slot] = pool[p].clone();
            }
            if let Some(values) = self.divide_coboundary(&g, &in_zeta_m) {
                let out = TwoCocycle::validate(
                    self.group.clone(),
                    &self.field,
                    values,
                    ValueSubgroup::RootsOfUnity { order: m },
                )?;
                return Ok((out, g));
            }
            // Odometer: last slot varies fastest, giving lexicographic order.
            let mut i = slots.len();
            loop {
                if i == 0 {
                    return Err(Error::MissingRoots);
                }
                i -= 1;
                pick[i] += 1;
                if pick[i] < pool.len() {
                    break;
                }
                pick[i] = 0;
            }
        }
    }

    /// alpha / dg, provided every resulting value passes the membership
    /// test; `None` as soon as one value falls outside.
    fn divide_coboundary(
        &self,
        g: &[FieldElement],
        accept: &dyn Fn(&FieldElement) -> bool,
    ) -> Option<Vec<Vec<FieldElement>>> {
        let n = self.group.order();
        let mut out = Vec::with_capacity(n);
        for s in 0..n {
            let mut row = Vec::with_capacity(n);
            for t in 0..n {
                let dg = &(&g[s] * &g[t]) * &g[self.group.mul(s, t)].inv().ok()?;
                let v = &self.values[s][t] * &dg.inv().ok()?;
                if !accept(&v) {
                    return None;
                }
                row.push(v);
            }
            out.push(row);
        }
        Some(out)
    }

    /// Candidate values for the root-normalizing cochain: every nonzero
    /// element over a small finite field, signed powers of the subgroup
    /// generator over Q and its extensions.
    fn root_search_pool(&self, m: u64) -> Result<Vec<FieldElement>> {
        match self.field.base_kind() {
            crate::field::BaseKind::Prime(p) => {
                let size = (p as f64).powi(self.field.degree() as i32);
                if size > 4096.0 {
                    return Err(Error::SearchSpaceTooLarge(format!(
                        "field of size {size} in root normalization"
                    )));
                }
                let d = self.field.degree();
                let mut pool = Vec::new();
                let mut idx = vec![0u64; d];
                loop {
                    let coeffs: Vec<crate::field::BaseScalar> =
                        idx.iter().map(|c| crate::field::BaseScalar::Mod(*c)).collect();
                    let cand = self.field.element(coeffs)?;
                    if !cand.is_zero() {
                        pool.push(cand);
                    }
                    let mut i = 0;
                    loop {
                        if i == d {
                            return Ok(pool);
                        }
                        idx[i] += 1;
                        if idx[i] < p {
                            break;
                        }
                        idx[i] = 0;
                        i += 1;
                    }
                }
            }
            crate::field::BaseKind::Rational => {
                let mut pool = Vec::new();
                let gen_order = match &self.subgroup {
                    ValueSubgroup::RootsOfUnity { order } => (*order).max(m),
                    ValueSubgroup::Free => m,
                };
                // Powers of a root of unity of the largest available order,
                // and their negatives.
                let zeta = self
                    .field
                    .primitive_root_of_unity(gen_order)
                    .or_else(|_| self.field.primitive_root_of_unity(2))?;
                let cycle = zeta.multiplicative_order(2 * gen_order).unwrap_or(1);
                let mut acc = self.field.one();
                for _ in 0..cycle {
                    if !pool.contains(&acc) {
                        pool.push(acc.clone());
                    }
                    acc = &acc * &zeta;
                }
                let negatives: Vec<FieldElement> = pool.iter().map(|x| -x).collect();
                for v in negatives {
                    if !pool.contains(&v) {
                        pool.push(v);
                    }
                }
                Ok(pool)
            }
        }
    }

    /// True when every value lies in the base field.
    pub fn is_base_valued(&self) -> bool {
        self.values
            .iter()
            .flatten()
            .all(|v| v.as_base().is_some())
    }

    /// Reinterprets a base-valued cocycle over the base field, recomputing
    /// the value subgroup from the orders of the values.
    pub fn restrict_to_base(&self) -> Result<TwoCocycle> {
        if !self.is_base_valued() {
            return Err(Error::CocycleNotBaseValued);
        }
        let base = self.field.base_field();
        let values: Vec<Vec<FieldElement>> = self
            .values
            .iter()
            .map(|row| row.iter().map(|v| v.as_base().unwrap()).collect())
            .collect();
        let subgroup = subgroup_of_values(values.iter().flatten());
        TwoCocycle::validate(self.group.clone(), &base, values, subgroup)
    }
}

/// The smallest cyclic subgroup descriptor containing all given values:
/// `<zeta_N>` with N the lcm of their multiplicative orders, or `Free` when
/// some value has infinite (or out-of-cap) order.
pub fn subgroup_of_values<'a>(values: impl Iterator<Item = &'a FieldElement>) -> ValueSubgroup {
    let mut lcm = 1u64;
    for v in values {
        match v.multiplicative_order(360) {
            Some(o) => lcm = num_integer::lcm(lcm, o),
            None => return ValueSubgroup::Free,
        }
    }
    ValueSubgroup::RootsOfUnity { order: lcm }
}

/// How the cohomology between alpha over L and its carry form was certified.
#[derive(Debug, Clone)]
pub enum CochainCertificate {
    /// An explicit 1-cochain g over L with alpha = beta * dg, verified
    /// exhaustively.
    Certified(Vec<FieldElement>),
    /// Only the norm invariant b was matched; explicit solving was out of
    /// reach for the declared value subgroup.
    NormMatchedOnly,
}

/// The carry normal form of a cocycle over a cyclic extension.
#[derive(Debug, Clone)]
pub struct CyclicNormalForm {
    /// The k-valued carry cocycle beta.
    pub beta: TwoCocycle,
    /// The norm invariant b, as an element of the base field.
    pub norm_value: FieldElement,
    pub certificate: CochainCertificate,
}

/// Computes b = prod_i alpha(sigma, sigma^i), checks it is fixed by G
/// (hence in k), and returns the carry cocycle beta together with a
/// cohomology certificate where the value subgroup permits solving.
pub fn cyclic_normal_form(
    alpha: &TwoCocycle,
    ext: &GaloisExtension,
) -> Result<CyclicNormalForm> {
    if alpha.group().order() != ext.group().order() {
        return Err(Error::AmalgamMismatch(
            "cocycle group and Galois group have different orders".into(),
        ));
    }
    let group = alpha.group().clone();
    let n = group.order();
    let generator = group.cyclic_generator().ok_or(Error::NotCyclic)?;

    // Exponent of each element with respect to the chosen generator.
    let mut power_of = vec![usize::MAX; n];
    let mut acc = group.identity();
    for i in 0..n {
        power_of[acc] = i;
        acc = group.mul(acc, generator);
    }

    let mut b = ext.field().one();
    let mut acc = group.identity();
    for _ in 0..n {
        b = &b * alpha.value(generator, acc);
        acc = group.mul(acc, generator);
    }
    for g in 0..n {
        if ext.apply(g, &b) != b {
            return Err(Error::NormNotFixed);
        }
    }
    let b_base = b
        .as_base()
        .ok_or_else(|| Error::Internal("G-fixed element not in the base field".into()))?;

    let base = ext.base().clone();
    let beta_values: Vec<Vec<FieldElement>> = (0..n)
        .map(|s| {
            (0..n)
                .map(|t| {
                    if power_of[s] + power_of[t] < n {
                        base.one()
                    } else {
                        b_base.clone()
                    }
                })
                .collect()
        })
        .collect();
    let subgroup = subgroup_of_values(beta_values.iter().flatten());
    let beta = TwoCocycle::validate(group.clone(), &base, beta_values, subgroup)?;

    let certificate = certify_cohomologous(alpha, &beta, ext)?;
    Ok(CyclicNormalForm {
        beta,
        norm_value: b_base,
        certificate,
    })
}

/// Tries to produce an explicit 1-cochain g over L with alpha = beta * dg:
/// possible when alpha's values live in a declared <zeta_N>, by solving the
/// exponent system mod N.
fn certify_cohomologous(
    alpha: &TwoCocycle,
    beta: &TwoCocycle,
    ext: &GaloisExtension,
) -> Result<CochainCertificate> {
    let (zeta, order) = match (alpha.zeta(), alpha.subgroup()) {
        (Some(z), ValueSubgroup::RootsOfUnity { order }) => (z.clone(), *order),
        _ => return Ok(CochainCertificate::NormMatchedOnly),
    };
    let n = alpha.group().order();
    let l_field = ext.field().clone();
    let alpha_exps = alpha.exponent_table()?;
    // beta's values embedded into L must also lie in <zeta_N>.
    let mut beta_exps = vec![vec![0u64; n]; n];
    for s in 0..n {
        for t in 0..n {
            let embedded = l_field.embed(beta.value(s, t))?;
            match embedded.dlog(&zeta, order) {
                Some(e) => beta_exps[s][t] = e,
                None => return Ok(CochainCertificate::NormMatchedOnly),
            }
        }
    }
    let rows = {
        let group = alpha.group();
        let n = group.order();
        let mut rows = Vec::with_capacity(n * n);
        for s in 0..n {
            for t in 0..n {
                let mut row = vec![BigInt::from(0); n];
                row[s] += 1;
                row[t] += 1;
                row[group.mul(s, t)] -= 1;
                rows.push(row);
            }
        }
        rows
    };
    let rhs: Vec<BigInt> = (0..n * n)
        .map(|k| {
            let (s, t) = (k / n, k % n);
            let diff =
                (alpha_exps[s][t] as i128 - beta_exps[s][t] as i128).rem_euclid(order as i128);
            BigInt::from(diff)
        })
        .collect();
    match solve_mod(&rows, &rhs, order) {
        None => Ok(CochainCertificate::NormMatchedOnly),
        Some(exps) => {
            let g: Vec<FieldElement> = exps
                .iter()
                .map(|e| zeta.pow(e.to_u64().expect("residue")))
                .collect();
            // Exhaustive re-verification: alpha = beta * dg over L.
            for s in 0..n {
                for t in 0..n {
                    let dg = &(&g[s] * &g[t]) * &g[alpha.group().mul(s, t)].inv()?;
                    let rhs = &l_field.embed(beta.value(s, t))? * &dg;
                    if *alpha.value(s, t) != rhs {
                        return Err(Error::Internal(
                            "cochain solver returned a non-witness".into(),
                        ));
                    }
                }
            }
            Ok(CochainCertificate::Certified(g))
        }
    }
}

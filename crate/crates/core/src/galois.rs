//! Abelian Galois extensions L/k and the idempotent decomposition of L (x) L.
//!
//! The tensor square is handled as a plain k-vector space on the basis
//! theta^a (x) theta^b, so everything reduces to exact linear algebra over
//! the base field: the idempotents E_sigma are pulled back through the joint
//! evaluation map (Psi_tau)_tau, and every family invariant (orthogonality,
//! partition of unity, Psi-duality, omega-invariance) is re-verified after
//! the solve.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::group::FiniteGroup;
use crate::linalg::Matrix;
use crate::report::{Check, Status};

/// A validated abelian Galois extension with the G-action on L.
#[derive(Debug, Clone)]
pub struct GaloisExtension {
    base: Field,
    field: Field,
    group: Arc<FiniteGroup>,
    /// group element index -> automorphism label ("" for the trivial extension).
    action: Vec<String>,
}

impl GaloisExtension {
    /// The degree-1 extension L = k with the trivial group.
    pub fn trivial(base: &Field) -> GaloisExtension {
        GaloisExtension {
            base: base.clone(),
            field: base.clone(),
            group: Arc::new(FiniteGroup::trivial()),
            action: vec![String::new()],
        }
    }

    /// Validates |G| = [L:k], that the action is an injective homomorphism
    /// onto the declared automorphisms of L, that G is abelian, and that the
    /// fixed subspace of the action is exactly k.
    pub fn validate(
        field: &Field,
        group: Arc<FiniteGroup>,
        action: Vec<String>,
    ) -> Result<GaloisExtension> {
        let degree = field.degree();
        if degree == 1 {
            if group.order() != 1 {
                return Err(Error::DegreeMismatch {
                    group: group.order(),
                    degree,
                });
            }
            return Ok(GaloisExtension::trivial(field));
        }
        let n = group.order();
        if n != degree {
            return Err(Error::DegreeMismatch { group: n, degree });
        }
        if !group.is_abelian() {
            return Err(Error::NotAbelian);
        }
        if action.len() != n {
            return Err(Error::BadGroupAction(format!(
                "action table has {} entries for a group of order {n}",
                action.len()
            )));
        }
        let declared = field.automorphism_labels();
        if declared.len() != n {
            return Err(Error::BadGroupAction(format!(
                "field declares {} automorphisms, group has order {n}",
                declared.len()
            )));
        }
        for label in &action {
            if !declared.contains(label) {
                return Err(Error::UnknownAutomorphism(label.clone()));
            }
        }
        {
            let mut seen = action.clone();
            seen.sort();
            seen.dedup();
            if seen.len() != n {
                return Err(Error::BadGroupAction("action is not injective".into()));
            }
        }
        if action[group.identity()] != field.identity_automorphism()? {
            return Err(Error::BadGroupAction(
                "group identity must act as the identity automorphism".into(),
            ));
        }
        for g in 0..n {
            for h in 0..n {
                let composed = field.compose_automorphisms(&action[g], &action[h])?;
                if composed != action[group.mul(g, h)] {
                    return Err(Error::BadGroupAction(format!(
                        "action({}) o action({}) != action({})",
                        group.label(g),
                        group.label(h),
                        group.label(group.mul(g, h))
                    )));
                }
            }
        }
        let ext = GaloisExtension {
            base: field.base_field(),
            field: field.clone(),
            group,
            action,
        };
        let fixed = ext.fixed_subspace_dimension();
        if fixed != 1 {
            return Err(Error::NotGalois { fixed_dim: fixed });
        }
        Ok(ext)
    }

    pub fn base(&self) -> &Field {
        &self.base
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn degree(&self) -> usize {
        self.field.degree()
    }

    pub fn is_trivial(&self) -> bool {
        self.degree() == 1
    }

    /// Applies the automorphism assigned to group element `g`.
    pub fn apply(&self, g: usize, x: &FieldElement) -> FieldElement {
        if self.is_trivial() {
            return x.clone();
        }
        self.field
            .apply_automorphism(&self.action[g], x)
            .expect("validated action label")
    }

    /// Dimension over k of the subspace of L fixed by every group element.
    fn fixed_subspace_dimension(&self) -> usize {
        let d = self.degree();
        if d == 1 {
            return 1;
        }
        // Stack (M_g - I) for all g; the kernel is the fixed subspace.
        let mut rows: Vec<Vec<FieldElement>> = Vec::new();
        for g in 0..self.group.order() {
            // Column a of M_g holds the coordinates of g(theta^a).
            let mut cols = Vec::with_capacity(d);
            let theta = self.field.generator().expect("extension generator");
            let mut acc = self.field.one();
            for _ in 0..d {
                cols.push(self.apply(g, &acc));
                acc = &acc * &theta;
            }
            for r in 0..d {
                let mut row = Vec::with_capacity(d);
                for (a, col) in cols.iter().enumerate() {
                    let mut entry = self.base.embed_scalar(col.coeffs()[r].clone());
                    if a == r {
                        entry = &entry - &self.base.one();
                    }
                    row.push(entry);
                }
                rows.push(row);
            }
        }
        let m = Matrix::from_rows(&self.base, rows).expect("rectangular");
        d - m.rank()
    }

    // ----- The tensor square L (x) L as a k-vector space -----

    /// Dimension of L (x) L over k.
    pub fn tensor_dim(&self) -> usize {
        self.degree() * self.degree()
    }

    pub fn tensor_index(&self, a: usize, b: usize) -> usize {
        a * self.degree() + b
    }

    pub fn tensor_zero(&self) -> Vec<FieldElement> {
        vec![self.base.zero(); self.tensor_dim()]
    }

    /// 1 (x) 1.
    pub fn tensor_unit(&self) -> Vec<FieldElement> {
        let mut u = self.tensor_zero();
        u[0] = self.base.one();
        u
    }

    /// The pure tensor x (x) y expanded in the basis theta^a (x) theta^b.
    pub fn pure_tensor(&self, x: &FieldElement, y: &FieldElement) -> Vec<FieldElement> {
        let d = self.degree();
        let mut out = self.tensor_zero();
        for a in 0..d {
            let xa = self.base.embed_scalar(x.coeffs()[a].clone());
            if xa.is_zero() {
                continue;
            }
            for b in 0..d {
                let yb = self.base.embed_scalar(y.coeffs()[b].clone());
                if yb.is_zero() {
                    continue;
                }
                let idx = self.tensor_index(a, b);
                out[idx] = &out[idx] + &(&xa * &yb);
            }
        }
        out
    }

    /// Componentwise product in L (x) L.
    pub fn tensor_mul(&self, u: &[FieldElement], v: &[FieldElement]) -> Vec<FieldElement> {
        let d = self.degree();
        let theta_pow: Vec<FieldElement> = {
            let mut pows = Vec::with_capacity(2 * d);
            let mut acc = self.field.one();
            for _ in 0..2 * d {
                pows.push(acc.clone());
                acc = if d > 1 {
                    &acc * &self.field.generator().expect("generator")
                } else {
                    acc.clone()
                };
            }
            pows
        };
        let mut out = self.tensor_zero();
        for a in 0..d {
            for b in 0..d {
                let uc = &u[self.tensor_index(a, b)];
                if uc.is_zero() {
                    continue;
                }
                for c in 0..d {
                    for e in 0..d {
                        let vc = &v[self.tensor_index(c, e)];
                        if vc.is_zero() {
                            continue;
                        }
                        let coeff = uc * vc;
                        // theta^{a+c} (x) theta^{b+e}, each reduced in L.
                        let left = &theta_pow[a + c];
                        let right = &theta_pow[b + e];
                        for r in 0..d {
                            let lr = self.base.embed_scalar(left.coeffs()[r].clone());
                            if lr.is_zero() {
                                continue;
                            }
                            for s in 0..d {
                                let rs = self.base.embed_scalar(right.coeffs()[s].clone());
                                if rs.is_zero() {
                                    continue;
                                }
                                let idx = self.tensor_index(r, s);
                                out[idx] = &out[idx] + &(&(&coeff * &lr) * &rs);
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// Psi_tau(x (x) y) = tau(x) y, extended linearly; lands in L.
    pub fn psi(&self, tau: usize, u: &[FieldElement]) -> FieldElement {
        let d = self.degree();
        let theta_pow: Vec<FieldElement> = {
            let mut pows = Vec::with_capacity(d);
            let mut acc = self.field.one();
            for _ in 0..d {
                pows.push(acc.clone());
                acc = if d > 1 {
                    &acc * &self.field.generator().expect("generator")
                } else {
                    acc.clone()
                };
            }
            pows
        };
        let mut out = self.field.zero();
        for a in 0..d {
            for b in 0..d {
                let c = &u[self.tensor_index(a, b)];
                if c.is_zero() {
                    continue;
                }
                let term = &self.apply(tau, &theta_pow[a]) * &theta_pow[b];
                let c_in_l = self.field.embed_scalar(c.coeffs()[0].clone());
                out = &out + &(&c_in_l * &term);
            }
        }
        out
    }

    /// omega_mu = mu (x) mu acting coordinatewise on L (x) L.
    pub fn omega(&self, mu: usize, u: &[FieldElement]) -> Vec<FieldElement> {
        let d = self.degree();
        let mut out = self.tensor_zero();
        let theta = if d > 1 {
            self.field.generator().expect("generator")
        } else {
            self.field.one()
        };
        let mut pow_images = Vec::with_capacity(d);
        let mut acc = self.field.one();
        for _ in 0..d {
            pow_images.push(self.apply(mu, &acc));
            acc = &acc * &theta;
        }
        for a in 0..d {
            for b in 0..d {
                let c = &u[self.tensor_index(a, b)];
                if c.is_zero() {
                    continue;
                }
                let img = self.pure_tensor(&pow_images[a], &pow_images[b]);
                for (slot, v) in out.iter_mut().zip(img) {
                    let scaled = &self.base.embed_scalar(c.coeffs()[0].clone()) * &v;
                    *slot = &*slot + &scaled;
                }
            }
        }
        out
    }
}

/// The Galois idempotents E_sigma of L (x) L with their evaluation maps.
#[derive(Debug, Clone)]
pub struct IdempotentFamily {
    /// Indexed by group element; coordinates over k in the tensor basis.
    tensors: Vec<Vec<FieldElement>>,
}

impl IdempotentFamily {
    pub fn tensor(&self, sigma: usize) -> &[FieldElement] {
        &self.tensors[sigma]
    }

    pub fn len(&self) -> usize {
        self.tensors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tensors.is_empty()
    }
}

/// Solves the joint evaluation system to pull back the standard idempotents,
/// then re-verifies every family invariant.
pub fn compute_idempotents(ext: &GaloisExtension) -> Result<IdempotentFamily> {
    let n = ext.group().order();
    let d = ext.degree();
    let dim = ext.tensor_dim();
    let base = ext.base().clone();

    // Joint evaluation matrix: row (tau, r), column (a, b) holds coordinate
    // r of tau(theta^a) theta^b.
    let mut rows: Vec<Vec<FieldElement>> = vec![Vec::with_capacity(dim); n * d];
    for tau in 0..n {
        for col_a in 0..d {
            for col_b in 0..d {
                let mut basis_vec = ext.tensor_zero();
                basis_vec[ext.tensor_index(col_a, col_b)] = base.one();
                let val = ext.psi(tau, &basis_vec);
                for r in 0..d {
                    rows[tau * d + r].push(base.embed_scalar(val.coeffs()[r].clone()));
                }
            }
        }
    }
    let m = Matrix::from_rows(&base, rows)?;
    let inv = m
        .inverse()
        .ok_or_else(|| Error::Internal("joint evaluation map is singular".into()))?;

    let mut tensors = Vec::with_capacity(n);
    for sigma in 0..n {
        // Target: Psi_tau(E_sigma) = delta_{tau,sigma} * 1 in L.
        let mut rhs = vec![base.zero(); n * d];
        rhs[sigma * d] = base.one();
        tensors.push(inv.mul_vec(&rhs));
    }
    let family = IdempotentFamily { tensors };
    let checks = verify_family(ext, &family);
    if let Some(bad) = checks.iter().find(|c| !c.status.is_pass()) {
        return Err(Error::Internal(format!(
            "idempotent family failed re-verification: {}",
            bad.name
        )));
    }
    Ok(family)
}

/// Exhaustive re-verification of the family invariants:
/// Psi-duality, idempotency, orthogonality, partition of unity, and
/// omega-invariance.
pub fn verify_family(ext: &GaloisExtension, family: &IdempotentFamily) -> Vec<Check> {
    let n = ext.group().order();
    let mut checks = Vec::new();

    let mut duality_ok = true;
    for sigma in 0..n {
        for tau in 0..n {
            let v = ext.psi(tau, family.tensor(sigma));
            let expect = if tau == sigma {
                ext.field().one()
            } else {
                ext.field().zero()
            };
            if v != expect {
                duality_ok = false;
            }
        }
    }
    checks.push(Check::of(
        "psi_duality",
        duality_ok,
        "Psi_tau(E_sigma) != delta",
    ));

    let mut idem_ok = true;
    let mut orth_ok = true;
    for s in 0..n {
        for t in 0..n {
            let p = ext.tensor_mul(family.tensor(s), family.tensor(t));
            if s == t {
                if p != family.tensor(s) {
                    idem_ok = false;
                }
            } else if p.iter().any(|c| !c.is_zero()) {
                orth_ok = false;
            }
        }
    }
    checks.push(Check::of("idempotency", idem_ok, "E^2 != E"));
    checks.push(Check::of("orthogonality", orth_ok, "E_s E_t != 0"));

    let mut sum = ext.tensor_zero();
    for s in 0..n {
        for (slot, v) in sum.iter_mut().zip(family.tensor(s)) {
            *slot = &*slot + v;
        }
    }
    checks.push(Check::of(
        "partition_of_unity",
        sum == ext.tensor_unit(),
        "sum of idempotents != 1 (x) 1",
    ));

    checks.push(verify_omega_invariance(ext, family));
    checks
}

/// omega_mu(E_sigma) = E_sigma for every mu (G abelian); exact comparison.
pub fn verify_omega_invariance(ext: &GaloisExtension, family: &IdempotentFamily) -> Check {
    let n = ext.group().order();
    for mu in 0..n {
        for sigma in 0..n {
            if ext.omega(mu, family.tensor(sigma)) != family.tensor(sigma) {
                return Check {
                    name: "omega_invariance".into(),
                    status: Status::Fail,
                    detail: Some(format!(
                        "omega_{}(E_{}) moved",
                        ext.group().label(mu),
                        ext.group().label(sigma)
                    )),
                };
            }
        }
    }
    Check::pass("omega_invariance")
}

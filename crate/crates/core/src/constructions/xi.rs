//! The scalar table xi^sigma_{r,l}: 1 below the wrap, 1/f(sigma) at or past
//! it. Its two identities — the coassociativity law and the compatibility
//! with powers of alpha — are what make the comultiplication on the twisted
//! sum work, so they are checkable on their own, before any Hopf assembly.

use crate::cocycle::{CoboundaryWitness, TwoCocycle};
use crate::error::Result;
use crate::field::FieldElement;
use crate::report::Check;

pub struct XiTable {
    m: usize,
    /// values[sigma][r * m + l]
    values: Vec<Vec<FieldElement>>,
}

impl XiTable {
    pub fn new(witness: &CoboundaryWitness, group_order: usize) -> Result<XiTable> {
        let m = witness.order as usize;
        let mut values = Vec::with_capacity(group_order);
        for sigma in 0..group_order {
            let inv_f = witness.cochain[sigma].inv()?;
            let one = witness.cochain[sigma].field().one();
            let mut row = Vec::with_capacity(m * m);
            for r in 0..m {
                for l in 0..m {
                    row.push(if r + l < m { one.clone() } else { inv_f.clone() });
                }
            }
            values.push(row);
        }
        Ok(XiTable { m, values })
    }

    pub fn order(&self) -> usize {
        self.m
    }

    pub fn value(&self, sigma: usize, r: usize, l: usize) -> &FieldElement {
        &self.values[sigma][r * self.m + l]
    }

    /// xi^sigma_{r,l} = xi^sigma_{l,r}.
    pub fn verify_symmetry(&self) -> Check {
        for (sigma, row) in self.values.iter().enumerate() {
            for r in 0..self.m {
                for l in 0..self.m {
                    if row[r * self.m + l] != row[l * self.m + r] {
                        return Check::fail(
                            "xi_symmetry",
                            format!("asymmetric at sigma index {sigma}, ({r}, {l})"),
                        );
                    }
                }
            }
        }
        Check::pass("xi_symmetry")
    }

    /// xi^sigma_{r,s+t} xi^sigma_{s,t} = xi^sigma_{r,s} xi^sigma_{r+s,t},
    /// indices mod m — the scalar identity behind coassociativity.
    pub fn verify_coassociativity_identity(&self) -> Check {
        let m = self.m;
        for sigma in 0..self.values.len() {
            for r in 0..m {
                for s in 0..m {
                    for t in 0..m {
                        let lhs = self.value(sigma, r, (s + t) % m) * self.value(sigma, s, t);
                        let rhs = self.value(sigma, r, s) * self.value(sigma, (r + s) % m, t);
                        if lhs != rhs {
                            return Check::fail(
                                "xi_coassociativity_identity",
                                format!("fails at sigma index {sigma}, (r,s,t) = ({r},{s},{t})"),
                            );
                        }
                    }
                }
            }
        }
        Check::pass("xi_coassociativity_identity")
    }

    /// xi^sigma_{r,l} xi^tau_{r,l} alpha^{r+l}(sigma,tau)
    ///   = xi^{sigma tau}_{r,l} alpha^n(sigma,tau) for r + l = n (mod m) —
    /// the scalar identity behind Delta being an algebra map.
    pub fn verify_compatibility_identity(&self, alpha: &TwoCocycle) -> Check {
        let m = self.m;
        let group = alpha.group().clone();
        for sigma in 0..group.order() {
            for tau in 0..group.order() {
                let st = group.mul(sigma, tau);
                for r in 0..m {
                    for l in 0..m {
                        let n = (r + l) % m;
                        let a = alpha.value(sigma, tau);
                        let lhs = &(self.value(sigma, r, l) * self.value(tau, r, l))
                            * &a.pow((r + l) as u64);
                        let rhs = self.value(st, r, l) * &a.pow(n as u64);
                        if lhs != rhs {
                            return Check::fail(
                                "xi_compatibility_identity",
                                format!(
                                    "fails at ({}, {}), (r,l) = ({r},{l})",
                                    group.label(sigma),
                                    group.label(tau)
                                ),
                            );
                        }
                    }
                }
            }
        }
        Check::pass("xi_compatibility_identity")
    }
}

//! The cocommutative Hopf algebra A = (+)_n k^{alpha^n} G on the basis
//! U{n}[g], its block projections onto the twisted group algebras, and the
//! verified isomorphism with a central-extension group algebra that
//! exhibits A as a form of k G-hat.

use crate::algebra::{hom_check, twisted_group_algebra, HomReport, LinearMap, SparseVec, StructureAlgebra};
use crate::cocycle::{CoboundaryWitness, TwoCocycle, ValueSubgroup};
use crate::error::{Error, Result};
use crate::group::{CentralExtensionGroup, ExponentCocycle};
use crate::hopf::{group_algebra_hopf, hopf_iso_check, HopfStructure, IsoReport};

use super::xi::XiTable;

/// Index bookkeeping for the direct sum of twisted blocks.
#[derive(Debug, Clone)]
pub struct TwistedSumLayout {
    pub order: u64,
    pub group_order: usize,
}

impl TwistedSumLayout {
    pub fn dim(&self) -> usize {
        self.order as usize * self.group_order
    }

    pub fn index(&self, block: usize, sigma: usize) -> usize {
        block * self.group_order + sigma
    }

    pub fn block_of(&self, idx: usize) -> (usize, usize) {
        (idx / self.group_order, idx % self.group_order)
    }
}

/// Builds A from a normalized cocycle and a verified witness. The counit is
/// the indicator of the untwisted block, the comultiplication spreads a
/// basis vector over all index splittings weighted by xi, and the antipode
/// follows the two-case formula.
pub fn build_a(
    alpha: &TwoCocycle,
    witness: &CoboundaryWitness,
) -> Result<(HopfStructure, TwistedSumLayout)> {
    if !alpha.is_normalized() {
        return Err(Error::NotNormalized);
    }
    alpha.verify_witness(witness)?;
    let group = alpha.group().clone();
    let field = alpha.field().clone();
    let n = group.order();
    let m = witness.order as usize;
    let layout = TwistedSumLayout {
        order: witness.order,
        group_order: n,
    };
    let dim = layout.dim();
    let xi = XiTable::new(witness, n)?;

    let powers: Vec<TwoCocycle> = (0..m as u64).map(|e| alpha.pow(e)).collect();
    let basis: Vec<String> = (0..dim)
        .map(|idx| {
            let (block, sigma) = layout.block_of(idx);
            format!("U{}[{}]", block, group.label(sigma))
        })
        .collect();
    let mut products = vec![Vec::new(); dim * dim];
    for block in 0..m {
        for s in 0..n {
            for t in 0..n {
                let i = layout.index(block, s);
                let j = layout.index(block, t);
                products[i * dim + j] = vec![(
                    layout.index(block, group.mul(s, t)),
                    powers[block].value(s, t).clone(),
                )];
            }
        }
    }
    let unit: SparseVec = (0..m)
        .map(|block| (layout.index(block, group.identity()), field.one()))
        .collect();
    let algebra = StructureAlgebra::new(field.clone(), basis, products, unit)?;

    let mut delta = Vec::with_capacity(dim);
    let mut counit = Vec::with_capacity(dim);
    let mut antipode = Vec::with_capacity(dim);
    for idx in 0..dim {
        let (block, sigma) = layout.block_of(idx);
        let mut terms = Vec::with_capacity(m);
        for r in 0..m {
            for l in 0..m {
                if (r + l) % m != block {
                    continue;
                }
                let left = layout.index(r, sigma);
                let right = layout.index(l, sigma);
                terms.push((left * dim + right, xi.value(sigma, r, l).clone()));
            }
        }
        delta.push(crate::algebra::sparse_normalize(terms));
        counit.push(if block == 0 { field.one() } else { field.zero() });
        let inv = group.inv(sigma);
        if block == 0 {
            antipode.push(vec![(layout.index(0, inv), field.one())]);
        } else {
            let coeff = &powers[block].value(sigma, inv).clone()
                * &witness.cochain[inv].inv()?;
            antipode.push(vec![(layout.index(m - block, inv), coeff)]);
        }
    }
    let hopf = HopfStructure::new(algebra, delta, counit, antipode)?;
    Ok((hopf, layout))
}

/// The direct-sum projection A -> k^{alpha^n} G, with the freshly built
/// target algebra.
pub fn quotient_onto_twisted(
    a: &HopfStructure,
    layout: &TwistedSumLayout,
    alpha: &TwoCocycle,
    block: u64,
) -> Result<(LinearMap, StructureAlgebra, HomReport)> {
    if block >= layout.order {
        return Err(Error::BlockOutOfRange {
            index: block,
            m: layout.order,
        });
    }
    let target = twisted_group_algebra(alpha.group(), &alpha.pow(block))?;
    let field = a.field().clone();
    let cols: Vec<SparseVec> = (0..a.dim())
        .map(|idx| {
            let (b, sigma) = layout.block_of(idx);
            if b == block as usize {
                vec![(sigma, field.one())]
            } else {
                Vec::new()
            }
        })
        .collect();
    let map = LinearMap::from_columns(a.dim(), target.dim(), cols)?;
    let report = hom_check(&map, &a.algebra, &target)?;
    Ok((map, target, report))
}

/// Outcome of the form-isomorphism check for A.
pub struct FormIsoReport {
    pub extension: CentralExtensionGroup,
    pub map: LinearMap,
    pub iso: IsoReport,
    /// The central extension compared against Z/(m |G|) by order multiset
    /// (informational; meaningful when G is cyclic).
    pub extension_invariants: Vec<usize>,
}

/// Builds the central extension G-hat from the exponent form of alpha and
/// verifies that (sigma, i) -> sum_j zeta^{ij} U{j}[sigma] is a Hopf
/// isomorphism k G-hat -> A.
///
/// Requires the witness to be identically 1 with alpha valued in <zeta_m>;
/// root-normalize first otherwise.
pub fn form_iso_a(
    a: &HopfStructure,
    layout: &TwistedSumLayout,
    alpha: &TwoCocycle,
    witness: &CoboundaryWitness,
) -> Result<FormIsoReport> {
    if witness.cochain.iter().any(|f| !f.is_one()) {
        return Err(Error::RootNormalizeRequired);
    }
    let m = witness.order;
    let field = a.field().clone();
    let zeta = field.primitive_root_of_unity(m)?;
    match alpha.subgroup() {
        ValueSubgroup::RootsOfUnity { .. } => {}
        ValueSubgroup::Free => return Err(Error::RootNormalizeRequired),
    }
    let group = alpha.group().clone();
    let n = group.order();
    // Exponent form of alpha with respect to zeta_m.
    let mut table = vec![vec![0u64; n]; n];
    for s in 0..n {
        for t in 0..n {
            table[s][t] = alpha
                .value(s, t)
                .dlog(&zeta, m)
                .ok_or(Error::RootNormalizeRequired)?;
        }
    }
    let cocycle = ExponentCocycle::validate(&group, m, table)?;
    let extension = CentralExtensionGroup::new(&group, &cocycle)?;
    let khat = group_algebra_hopf(extension.group(), &field)?;

    // phi(sigma, i) = sum_j zeta^{ij} U{j}[sigma].
    let cols: Vec<SparseVec> = (0..extension.group().order())
        .map(|x| {
            let sigma = extension.project(x);
            let i = extension.fiber_exponent(x);
            let mut terms = Vec::with_capacity(m as usize);
            for j in 0..m {
                terms.push((
                    layout.index(j as usize, sigma),
                    zeta.pow(i * j % m.max(1)),
                ));
            }
            crate::algebra::sparse_normalize(terms)
        })
        .collect();
    let map = LinearMap::from_columns(khat.dim(), a.dim(), cols)?;
    let iso = hopf_iso_check(&map, &khat, a)?;
    let extension_invariants = extension.group().order_multiset();
    Ok(FormIsoReport {
        extension,
        map,
        iso,
        extension_invariants,
    })
}

//! The amalgam X: the tensor coalgebra H (x) A carrying the block algebra
//! structure (+)_n (L (x) k^{alpha^n} G) (+) (+)_n (Fun(G,k) (x)
//! k^{alpha^n} G), with the antipode twisting the L-part through sigma^{-1}.
//! The L-block at n = 1 is exactly the crossed product L^alpha_t G, and the
//! block projection exhibits it as a quotient of X.

use crate::algebra::{
    crossed_product, hom_check, sparse_normalize, HomReport, LinearMap, SparseVec,
    StructureAlgebra,
};
use crate::cocycle::TwoCocycle;
use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::galois::GaloisExtension;
use crate::hopf::HopfStructure;

use super::abelian_cover::CoverLayout;
use super::twisted_sum::TwistedSumLayout;

/// Index map between the abstract basis of X = H (x) A and its 2m summand
/// blocks.
#[derive(Debug, Clone)]
pub struct AmalgamLayout {
    pub order: u64,
    pub group_order: usize,
    pub degree: usize,
    pub h_dim: usize,
    pub a_dim: usize,
}

/// Which block a basis vector of X lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Block {
    /// L (x) k^{alpha^n} G, the crossed-product block at power n.
    Field { power: usize },
    /// Fun(G,k) (x) k^{alpha^n} G.
    Functions { power: usize },
}

impl AmalgamLayout {
    pub fn dim(&self) -> usize {
        self.h_dim * self.a_dim
    }

    pub fn index(&self, h: usize, a: usize) -> usize {
        h * self.a_dim + a
    }

    pub fn split(&self, idx: usize) -> (usize, usize) {
        (idx / self.a_dim, idx % self.a_dim)
    }

    /// Block classification with the inner coordinates: (block, L-power or
    /// function element, group element of the A-part).
    pub fn block_of(&self, idx: usize) -> (Block, usize, usize) {
        let (h, a) = self.split(idx);
        let power = a / self.group_order;
        let sigma = a % self.group_order;
        if h < self.degree {
            (Block::Field { power }, h, sigma)
        } else {
            (Block::Functions { power }, h - self.degree, sigma)
        }
    }

    /// Dimension bookkeeping: every block has size (degree or n) * n and
    /// they tile the whole space.
    pub fn block_dimensions_consistent(&self) -> bool {
        let l_blocks = self.order as usize * self.degree * self.group_order;
        let fun_blocks = self.order as usize * self.group_order * self.group_order;
        l_blocks + fun_blocks == self.dim()
    }
}

/// Assembles X from the already-built H and A. The coalgebra is the tensor
/// coalgebra; the algebra multiplies within blocks only.
pub fn build_x(
    ext: &GaloisExtension,
    alpha: &TwoCocycle,
    h: &HopfStructure,
    h_layout: &CoverLayout,
    a: &HopfStructure,
    a_layout: &TwistedSumLayout,
) -> Result<(HopfStructure, AmalgamLayout)> {
    if alpha.group().order() != ext.group().order() {
        return Err(Error::AmalgamMismatch(
            "the cocycle of A and the Galois group of L/k differ".into(),
        ));
    }
    if *alpha.field() != *ext.base() {
        return Err(Error::AmalgamMismatch(
            "the cocycle of A must take values in the base field".into(),
        ));
    }
    if h_layout.group_order != ext.group().order() || a_layout.group_order != ext.group().order()
    {
        return Err(Error::AmalgamMismatch("layout group orders differ".into()));
    }
    let base = ext.base().clone();
    let group = ext.group().clone();
    let n = group.order();
    let d = ext.degree();
    let m = a_layout.order as usize;
    let layout = AmalgamLayout {
        order: a_layout.order,
        group_order: n,
        degree: d,
        h_dim: h_layout.dim(),
        a_dim: a_layout.dim(),
    };
    let dim = layout.dim();

    let powers: Vec<TwoCocycle> = (0..m as u64).map(|e| alpha.pow(e)).collect();
    let theta_pows: Vec<FieldElement> = {
        let mut pows = Vec::with_capacity(d);
        let mut acc = ext.field().one();
        for _ in 0..d {
            pows.push(acc.clone());
            acc = if d > 1 {
                &acc * &ext.field().generator()?
            } else {
                acc.clone()
            };
        }
        pows
    };

    // Basis labels join the component labels.
    let basis: Vec<String> = (0..dim)
        .map(|idx| {
            let (hp, ap) = layout.split(idx);
            format!("{}*{}", h.algebra.label(hp), a.algebra.label(ap))
        })
        .collect();

    // Algebra structure, block by block.
    let mut products = vec![Vec::new(); dim * dim];
    for power in 0..m {
        for s in 0..n {
            for t in 0..n {
                let st = group.mul(s, t);
                let scalar = powers[power].value(s, t);
                let a_s = a_layout.index(power, s);
                let a_t = a_layout.index(power, t);
                let a_st = a_layout.index(power, st);
                // L-block: (theta^x (x) U_s)(theta^y (x) U_t)
                //        = theta^x s(theta^y) alpha^n(s,t) (x) U_{st}.
                for x in 0..d {
                    for y in 0..d {
                        let coeff = &(&theta_pows[x] * &ext.apply(s, &theta_pows[y]))
                            * &ext.field().embed(scalar)?;
                        let terms: SparseVec = coeff
                            .coeffs()
                            .iter()
                            .enumerate()
                            .filter(|(_, c)| !base.base_kind().is_zero(c))
                            .map(|(e, c)| {
                                (
                                    layout.index(h_layout.l_index(e), a_st),
                                    base.embed_scalar(c.clone()),
                                )
                            })
                            .collect();
                        let row = layout.index(h_layout.l_index(x), a_s);
                        let col = layout.index(h_layout.l_index(y), a_t);
                        products[row * dim + col] = sparse_normalize(terms);
                    }
                }
                // Function block: (e_mu (x) U_s)(e_nu (x) U_t)
                //               = delta_{mu,nu} alpha^n(s,t) e_mu (x) U_{st}.
                for mu in 0..n {
                    let row = layout.index(h_layout.fun_index(mu), a_s);
                    let col = layout.index(h_layout.fun_index(mu), a_t);
                    products[row * dim + col] = vec![(
                        layout.index(h_layout.fun_index(mu), a_st),
                        scalar.clone(),
                    )];
                }
            }
        }
    }
    let mut unit: SparseVec = Vec::new();
    for power in 0..m {
        let a_unit = a_layout.index(power, group.identity());
        unit.push((layout.index(h_layout.l_index(0), a_unit), base.one()));
        for mu in 0..n {
            unit.push((layout.index(h_layout.fun_index(mu), a_unit), base.one()));
        }
    }
    let algebra = StructureAlgebra::new(base.clone(), basis, products, sparse_normalize(unit))?;

    // Tensor coalgebra: Delta(h (x) a) = sum h1 (x) a1 (x) h2 (x) a2.
    let h_dim = h_layout.dim();
    let a_dim = a_layout.dim();
    let mut delta = Vec::with_capacity(dim);
    let mut counit = Vec::with_capacity(dim);
    let mut antipode = Vec::with_capacity(dim);
    for idx in 0..dim {
        let (hp, ap) = layout.split(idx);
        let mut terms = Vec::new();
        for (p, cp) in &h.delta[hp] {
            let (h1, h2) = (p / h_dim, p % h_dim);
            for (q, cq) in &a.delta[ap] {
                let (a1, a2) = (q / a_dim, q % a_dim);
                terms.push((
                    layout.index(h1, a1) * dim + layout.index(h2, a2),
                    cp * cq,
                ));
            }
        }
        delta.push(sparse_normalize(terms));
        counit.push(&h.counit[hp] * &a.counit[ap]);

        // Antipode: L-part picks up sigma^{-1} on the field coordinate and
        // the A-antipode coefficient; the function part inverts the index.
        let (_, sigma) = a_layout.block_of(ap);
        let s_a = &a.antipode[ap];
        let mut s_terms = Vec::new();
        if hp < d {
            let twisted = ext.apply(group.inv(sigma), &theta_pows[hp]);
            for (e, c) in twisted.coeffs().iter().enumerate() {
                if base.base_kind().is_zero(c) {
                    continue;
                }
                let c = base.embed_scalar(c.clone());
                for (ak, ac) in s_a {
                    s_terms.push((layout.index(h_layout.l_index(e), *ak), &c * ac));
                }
            }
        } else {
            let mu = hp - d;
            let mu_inv = group.inv(mu);
            for (ak, ac) in s_a {
                s_terms.push((layout.index(h_layout.fun_index(mu_inv), *ak), ac.clone()));
            }
        }
        antipode.push(sparse_normalize(s_terms));
    }
    let hopf = HopfStructure::new(algebra, delta, counit, antipode)?;
    Ok((hopf, layout))
}

/// The block projection X -> L (x) k^{alpha^n} G = L^{alpha^n}_t G, with the
/// freshly built crossed product as target.
pub fn project_to_crossed_product(
    x: &HopfStructure,
    layout: &AmalgamLayout,
    ext: &GaloisExtension,
    alpha: &TwoCocycle,
    power: u64,
) -> Result<(LinearMap, StructureAlgebra, HomReport)> {
    if power >= layout.order {
        return Err(Error::BlockOutOfRange {
            index: power,
            m: layout.order,
        });
    }
    let target = crossed_product(ext, &alpha.pow(power))?;
    let field = x.field().clone();
    let n = layout.group_order;
    let cols: Vec<SparseVec> = (0..x.dim())
        .map(|idx| {
            let (block, inner, sigma) = layout.block_of(idx);
            match block {
                Block::Field { power: p } if p == power as usize => {
                    vec![(inner * n + sigma, field.one())]
                }
                _ => Vec::new(),
            }
        })
        .collect();
    let map = LinearMap::from_columns(x.dim(), target.dim(), cols)?;
    let report = hom_check(&map, &x.algebra, &target)?;
    Ok((map, target, report))
}

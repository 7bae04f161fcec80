//! The commutative Hopf algebra H = L (+) Fun(G, k) covering an abelian
//! Galois extension: construction, the quotient onto L, the convolution
//! group of algebra maps H -> L, and the form check after scalar extension
//! to L.

use crate::algebra::{
    field_as_algebra, hom_check, sparse_normalize, HomReport, LinearMap, SparseVec,
    StructureAlgebra,
};
use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::galois::{GaloisExtension, IdempotentFamily};
use crate::group::FiniteGroup;
use crate::hopf::{change_basis, extend_scalars, group_like_elements, HopfStructure};
use crate::linalg::Matrix;
use crate::report::Check;

/// Index bookkeeping: the L-part occupies 0..degree (labels t{a}), the
/// function part degree..degree+n (labels e[g]).
#[derive(Debug, Clone)]
pub struct CoverLayout {
    pub degree: usize,
    pub group_order: usize,
}

impl CoverLayout {
    pub fn dim(&self) -> usize {
        self.degree + self.group_order
    }

    pub fn l_index(&self, a: usize) -> usize {
        a
    }

    pub fn fun_index(&self, sigma: usize) -> usize {
        self.degree + sigma
    }

    pub fn is_l_part(&self, idx: usize) -> bool {
        idx < self.degree
    }
}

/// Builds H with its Hopf structure:
/// epsilon kills L and evaluates functions at 1; S fixes L and inverts the
/// function argument; Delta spreads L-elements over the Galois orbit and
/// splits idempotents through the convolution of G plus the Galois
/// idempotent of L (x) L.
pub fn build_h(
    ext: &GaloisExtension,
    idempotents: &IdempotentFamily,
) -> Result<(HopfStructure, CoverLayout)> {
    let d = ext.degree();
    let n = ext.group().order();
    let base = ext.base().clone();
    let group = ext.group().clone();
    let layout = CoverLayout {
        degree: d,
        group_order: n,
    };
    let dim = layout.dim();

    let l_alg = field_as_algebra(ext)?;
    let basis: Vec<String> = (0..d)
        .map(|a| format!("t{a}"))
        .chain((0..n).map(|g| format!("e[{}]", group.label(g))))
        .collect();
    let mut products = vec![Vec::new(); dim * dim];
    for a in 0..d {
        for b in 0..d {
            products[layout.l_index(a) * dim + layout.l_index(b)] =
                l_alg.basis_product(a, b).clone();
        }
    }
    for s in 0..n {
        products[layout.fun_index(s) * dim + layout.fun_index(s)] =
            vec![(layout.fun_index(s), base.one())];
    }
    let mut unit: SparseVec = vec![(layout.l_index(0), base.one())];
    unit.extend((0..n).map(|s| (layout.fun_index(s), base.one())));
    let algebra = StructureAlgebra::new(base.clone(), basis, products, sparse_normalize(unit))?;

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

    let mut delta = vec![Vec::new(); dim];
    let mut counit = vec![base.zero(); dim];
    let mut antipode = vec![Vec::new(); dim];
    // L-part: Delta(x) = sum_mu mu^{-1}(x) (x) e_mu + e_mu (x) mu(x).
    for a in 0..d {
        let mut terms = Vec::new();
        for mu in 0..n {
            let img_inv = ext.apply(group.inv(mu), &theta_pows[a]);
            for (c_idx, c) in img_inv.coeffs().iter().enumerate() {
                let c = base.embed_scalar(c.clone());
                if c.is_zero() {
                    continue;
                }
                terms.push((layout.l_index(c_idx) * dim + layout.fun_index(mu), c));
            }
            let img = ext.apply(mu, &theta_pows[a]);
            for (c_idx, c) in img.coeffs().iter().enumerate() {
                let c = base.embed_scalar(c.clone());
                if c.is_zero() {
                    continue;
                }
                terms.push((layout.fun_index(mu) * dim + layout.l_index(c_idx), c));
            }
        }
        delta[layout.l_index(a)] = sparse_normalize(terms);
        counit[layout.l_index(a)] = base.zero();
        antipode[layout.l_index(a)] = vec![(layout.l_index(a), base.one())];
    }
    // Function part: Delta(e_xi) = sum_{sigma mu = xi} e_sigma (x) e_mu + E_xi.
    for xi in 0..n {
        let mut terms = Vec::new();
        for s in 0..n {
            for mu in 0..n {
                if group.mul(s, mu) == xi {
                    terms.push((
                        layout.fun_index(s) * dim + layout.fun_index(mu),
                        base.one(),
                    ));
                }
            }
        }
        let e_tensor = idempotents.tensor(xi);
        for a in 0..d {
            for b in 0..d {
                let c = &e_tensor[ext.tensor_index(a, b)];
                if c.is_zero() {
                    continue;
                }
                terms.push((layout.l_index(a) * dim + layout.l_index(b), c.clone()));
            }
        }
        delta[layout.fun_index(xi)] = sparse_normalize(terms);
        counit[layout.fun_index(xi)] = if xi == group.identity() {
            base.one()
        } else {
            base.zero()
        };
        antipode[layout.fun_index(xi)] = vec![(layout.fun_index(group.inv(xi)), base.one())];
    }
    let hopf = HopfStructure::new(algebra, delta, counit, antipode)?;
    Ok((hopf, layout))
}

/// The projection H -> L killing the function summand; a surjective algebra
/// map exhibiting L as a quotient of H.
pub fn quotient_onto_field(
    h: &HopfStructure,
    layout: &CoverLayout,
    ext: &GaloisExtension,
) -> Result<(LinearMap, StructureAlgebra, HomReport)> {
    let target = field_as_algebra(ext)?;
    let field = h.field().clone();
    let cols: Vec<SparseVec> = (0..h.dim())
        .map(|idx| {
            if layout.is_l_part(idx) {
                vec![(idx, field.one())]
            } else {
                Vec::new()
            }
        })
        .collect();
    let map = LinearMap::from_columns(h.dim(), target.dim(), cols)?;
    let report = hom_check(&map, &h.algebra, &target)?;
    Ok((map, target, report))
}

/// The two families of k-algebra maps H -> L, as value vectors on the basis.
struct DualMaps {
    /// phi_sigma: kills L, e_tau -> delta_{sigma,tau}.
    phi: Vec<Vec<FieldElement>>,
    /// zeta_sigma: x -> sigma(x) on L, kills the function part.
    zeta: Vec<Vec<FieldElement>>,
}

fn dual_maps(ext: &GaloisExtension, layout: &CoverLayout) -> Result<DualMaps> {
    let d = layout.degree;
    let n = layout.group_order;
    let dim = layout.dim();
    let l = ext.field().clone();
    let theta_pows: Vec<FieldElement> = {
        let mut pows = Vec::with_capacity(d);
        let mut acc = l.one();
        for _ in 0..d {
            pows.push(acc.clone());
            acc = if d > 1 { &acc * &l.generator()? } else { acc.clone() };
        }
        pows
    };
    let mut phi = Vec::with_capacity(n);
    let mut zeta = Vec::with_capacity(n);
    for sigma in 0..n {
        let mut phi_vals = vec![l.zero(); dim];
        phi_vals[layout.fun_index(sigma)] = l.one();
        phi.push(phi_vals);
        let mut zeta_vals = vec![l.zero(); dim];
        for a in 0..d {
            zeta_vals[layout.l_index(a)] = ext.apply(sigma, &theta_pows[a]);
        }
        zeta.push(zeta_vals);
    }
    Ok(DualMaps { phi, zeta })
}

fn is_algebra_map_to_l(
    h: &HopfStructure,
    values: &[FieldElement],
    l: &crate::field::Field,
) -> Result<bool> {
    let dim = h.dim();
    let eval = |v: &SparseVec| -> Result<FieldElement> {
        let mut acc = l.zero();
        for (i, c) in v {
            acc = &acc + &(&values[*i] * &l.embed(c)?);
        }
        Ok(acc)
    };
    if !eval(h.algebra.unit())?.is_one() {
        return Ok(false);
    }
    for i in 0..dim {
        for j in 0..dim {
            let lhs = eval(h.algebra.basis_product(i, j))?;
            if lhs != &values[i] * &values[j] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Result of enumerating the convolution group of algebra maps H -> L.
pub struct ConvolutionReport {
    /// Exactly 2n maps were found and proven to be all of them.
    pub count_check: Check,
    /// The four structural relations between the phi and zeta families.
    pub relations_check: Check,
    /// Table isomorphism with the inversion semidirect product.
    pub semidirect_check: Check,
    pub group: FiniteGroup,
}

/// Enumerates all k-algebra maps H -> L, computes their convolution table
/// through Delta, and matches it against Z/2 x| G.
///
/// Completeness is by Dedekind's lemma: the 2n verified maps are L-linearly
/// independent in a 2n-dimensional space, and distinct algebra maps into a
/// field are independent, so no further map can exist.
pub fn convolution_group(
    h: &HopfStructure,
    layout: &CoverLayout,
    ext: &GaloisExtension,
) -> Result<ConvolutionReport> {
    let n = layout.group_order;
    let dim = layout.dim();
    let l = ext.field().clone();
    let group = ext.group().clone();
    let maps = dual_maps(ext, layout)?;

    let mut all: Vec<(String, usize, Vec<FieldElement>)> = Vec::new();
    for (sigma, vals) in maps.phi.iter().enumerate() {
        all.push((format!("phi[{}]", group.label(sigma)), sigma, vals.clone()));
    }
    for (sigma, vals) in maps.zeta.iter().enumerate() {
        all.push((format!("zeta[{}]", group.label(sigma)), sigma, vals.clone()));
    }

    let mut count_check = Check::pass("algebra_map_count");
    for (name, _, vals) in &all {
        if !is_algebra_map_to_l(h, vals, &l)? {
            count_check = Check::fail("algebra_map_count", format!("{name} is not an algebra map"));
        }
    }
    if count_check.status.is_pass() {
        let rows: Vec<Vec<FieldElement>> = all.iter().map(|(_, _, v)| v.clone()).collect();
        let rank = Matrix::from_rows(&l, rows)?.rank();
        if rank != 2 * n {
            count_check = Check::fail(
                "algebra_map_count",
                format!("maps are not independent: rank {rank} != {}", 2 * n),
            );
        }
    }

    // Convolution product through Delta, with values in L.
    let convolve = |f: &[FieldElement], g: &[FieldElement]| -> Result<Vec<FieldElement>> {
        let mut out = vec![l.zero(); dim];
        for (b, slot) in out.iter_mut().enumerate() {
            let mut acc = l.zero();
            for (p, c) in &h.delta[b] {
                let (x, y) = (p / dim, p % dim);
                acc = &acc + &(&(&f[x] * &g[y]) * &l.embed(c)?);
            }
            *slot = acc;
        }
        Ok(out)
    };
    let find = |vals: &[FieldElement]| -> Option<usize> {
        all.iter().position(|(_, _, v)| v == vals)
    };

    let mut table = vec![vec![0usize; 2 * n]; 2 * n];
    let mut closed = true;
    for i in 0..2 * n {
        for j in 0..2 * n {
            let prod = convolve(&all[i].2, &all[j].2)?;
            match find(&prod) {
                Some(k) => table[i][j] = k,
                None => closed = false,
            }
        }
    }
    if !closed {
        return Err(Error::Internal(
            "convolution of two algebra maps left the set".into(),
        ));
    }

    // The four relations: phi_s * phi_t = phi_{st}, phi_s * zeta_t =
    // zeta_{st}, zeta_t * phi_s = zeta_{t s^{-1}}, zeta_s * zeta_t =
    // phi_{t^{-1} s}.
    let phi_idx = |sigma: usize| sigma;
    let zeta_idx = |sigma: usize| n + sigma;
    let mut relations_ok = true;
    for s in 0..n {
        for t in 0..n {
            relations_ok &= table[phi_idx(s)][phi_idx(t)] == phi_idx(group.mul(s, t));
            relations_ok &= table[phi_idx(s)][zeta_idx(t)] == zeta_idx(group.mul(s, t));
            relations_ok &=
                table[zeta_idx(t)][phi_idx(s)] == zeta_idx(group.mul(t, group.inv(s)));
            relations_ok &=
                table[zeta_idx(s)][zeta_idx(t)] == phi_idx(group.mul(group.inv(t), s));
        }
    }
    let relations_check = Check::of(
        "convolution_relations",
        relations_ok,
        "a structural relation between the phi and zeta families failed",
    );

    let labels: Vec<String> = all.iter().map(|(name, _, _)| name.clone()).collect();
    let conv_group = FiniteGroup::from_table(labels, table)
        .map_err(|e| Error::Internal(format!("convolution set is not a group: {e}")))?;

    // Explicit isomorphism with Z/2 x| G under (eps, sigma) pairing
    // phi_sigma <-> (0, sigma), zeta_sigma <-> (1, sigma^{-1}); the zeta
    // index inverts because the semidirect table twists the left factor.
    let semidirect = group.semidirect_inversion()?;
    let mut iso_ok = conv_group.order() == semidirect.order();
    let to_sd = |idx: usize| -> usize {
        if idx < n {
            // (0, sigma)
            idx
        } else {
            // (1, sigma^{-1})
            n + group.inv(idx - n)
        }
    };
    if iso_ok {
        for i in 0..2 * n {
            for j in 0..2 * n {
                if to_sd(conv_group.mul(i, j)) != semidirect.mul(to_sd(i), to_sd(j)) {
                    iso_ok = false;
                }
            }
        }
    }
    let semidirect_check = Check::of(
        "isomorphic_to_inversion_semidirect",
        iso_ok,
        "convolution table does not match Z/2 x| G",
    );

    Ok(ConvolutionReport {
        count_check,
        relations_check,
        semidirect_check,
        group: conv_group,
    })
}

/// Result of the form check: H (x) L is the full function algebra on
/// Z/2 x| G.
pub struct FormCheckReport {
    /// The scalar extension splits into 2n orthogonal idempotents.
    pub split_check: Check,
    /// The dual group-likes form Z/2 x| G.
    pub group_check: Check,
    pub group_likes: FiniteGroup,
}

/// Extends scalars to L, rewrites H (x) L in its idempotent basis (the
/// Galois idempotents on the L (x) L summand, e_sigma (x) 1 on the function
/// summand), extracts the group-likes of the dual, and compares with
/// Z/2 x| G.
pub fn form_check_h(
    h: &HopfStructure,
    layout: &CoverLayout,
    ext: &GaloisExtension,
    idempotents: &IdempotentFamily,
) -> Result<FormCheckReport> {
    let n = layout.group_order;
    let d = layout.degree;
    let l = ext.field().clone();
    let group = ext.group().clone();
    let hl = extend_scalars(h, &l)?;

    // Idempotent basis of H (x) L: E_sigma rewritten with L-coefficients on
    // the t-basis, then the function idempotents unchanged.
    let mut new_basis: Vec<SparseVec> = Vec::with_capacity(2 * n);
    let mut labels = Vec::with_capacity(2 * n);
    let theta_pows: Vec<FieldElement> = {
        let mut pows = Vec::with_capacity(d);
        let mut acc = l.one();
        for _ in 0..d {
            pows.push(acc.clone());
            acc = if d > 1 { &acc * &l.generator()? } else { acc.clone() };
        }
        pows
    };
    for sigma in 0..n {
        let tensor = idempotents.tensor(sigma);
        let mut col: SparseVec = Vec::new();
        for a in 0..d {
            // Coefficient of t_a: sum_b c_{a,b} theta^b, with the right
            // tensor factor carrying the L-scalar action.
            let mut coeff = l.zero();
            for (b, pow) in theta_pows.iter().enumerate() {
                let c = &tensor[ext.tensor_index(a, b)];
                if c.is_zero() {
                    continue;
                }
                coeff = &coeff + &(&l.embed(c)? * pow);
            }
            if !coeff.is_zero() {
                col.push((layout.l_index(a), coeff));
            }
        }
        new_basis.push(sparse_normalize(col));
        labels.push(format!("E[{}]", group.label(sigma)));
    }
    for sigma in 0..n {
        new_basis.push(vec![(layout.fun_index(sigma), l.one())]);
        labels.push(format!("e[{}]", group.label(sigma)));
    }
    let rebased = change_basis(&hl, &new_basis, labels)?;

    // group_like_elements demands exactly the orthogonal idempotent
    // structure, so reaching a table is itself the split check.
    let likes = match group_like_elements(&rebased) {
        Ok(likes) => likes,
        Err(e) => {
            return Ok(FormCheckReport {
                split_check: Check::fail("scalar_extension_splits", format!("{e}")),
                group_check: Check::fail("group_likes_form_semidirect", "no idempotent basis"),
                group_likes: FiniteGroup::trivial(),
            })
        }
    };
    let split_check = Check::pass("scalar_extension_splits")
        .with_detail(format!("{} orthogonal idempotents", 2 * n));

    // Dual of E_sigma extends zeta_sigma, dual of e_sigma extends phi_sigma;
    // order: E's first, then e's. Match against Z/2 x| G with the same
    // pairing as the convolution report.
    let semidirect = group.semidirect_inversion()?;
    let to_sd = |idx: usize| -> usize {
        if idx < n {
            n + group.inv(idx) // zeta family: (1, sigma^{-1})
        } else {
            idx - n // phi family: (0, sigma)
        }
    };
    let mut iso_ok = likes.group.order() == semidirect.order();
    if iso_ok {
        for i in 0..2 * n {
            for j in 0..2 * n {
                if to_sd(likes.group.mul(i, j)) != semidirect.mul(to_sd(i), to_sd(j)) {
                    iso_ok = false;
                }
            }
        }
    }
    let group_check = Check::of(
        "group_likes_form_semidirect",
        iso_ok,
        "dual group-likes do not realize Z/2 x| G",
    );
    Ok(FormCheckReport {
        split_check,
        group_check,
        group_likes: likes.group,
    })
}

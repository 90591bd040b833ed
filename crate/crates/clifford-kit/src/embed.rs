//! The two canonical embeddings of a finite Clifford semigroup.
//!
//! For an idempotent `e` with maximal subgroup `H_e`, the coordinate map
//! sends `x` to `(π(x), x·e)` when `π(x) ≥ e` and to the collapsed `π(x)`
//! otherwise, landing in the reduced product `E ×_{I_e} H_e` over the ideal
//! `I_e = E ∖ ↑e`. The diagonal of these maps over a U-dense coordinate set
//! (discretely: all of `E`) is injective — the toolkit's headline check.
//!
//! The second embedding replaces reduced products by cones over the maximal
//! subgroups: each coordinate composes a two-valued separating homomorphism
//! on `E` with the projection and pairs it with `x·e`, and the natural
//! projection `π` itself is adjoined as an extra coordinate. The selected
//! separating homomorphisms are two-valued, so images land in the
//! 0-extension part of each cone; the report records that fact.
//!
//! Targets are products of up to `|E|²` factors and can be far too large to
//! tabulate; below [`limits::MATERIALIZE_CAP`] elements they are built
//! explicitly (in coded form) and the diagonal map is re-verified inside
//! them, above it the verification is coordinatewise.

use num_bigint::BigUint;

use crate::construct::{cone, reduced_product, ProductSemigroup, ReducedElement, ReducedProduct};
use crate::error::Error;
use crate::hom::{canonical_map, enumerate_homs, select_separating_hom, Homomorphism};
use crate::limits;
use crate::order::{natural_order, SemilatticeOrder};
use crate::semigroup::{
    classify, clifford_structure, maximal_subgroups, CliffordStructure, FiniteSemigroup,
    SubSemigroup,
};
use crate::{construct, Result};

/// Tuning knobs for the embedding reports.
#[derive(Clone, Debug)]
pub struct EmbedOptions {
    /// Allow coordinate sets smaller than the full idempotent set. Only the
    /// full set is U-dense discretely, so this is an experiment switch; the
    /// report flags its use.
    pub allow_sparse: bool,
    /// Materialize the target product when its size stays at or below this.
    pub materialize_cap: usize,
    /// Insist on materializing; fails with `TargetTooLarge` beyond the cap.
    pub force_materialize: bool,
}

impl Default for EmbedOptions {
    fn default() -> Self {
        EmbedOptions {
            allow_sparse: false,
            materialize_cap: limits::MATERIALIZE_CAP,
            force_materialize: false,
        }
    }
}

/// Verdict and audit trail of one embedding check.
#[derive(Clone, Debug)]
pub struct EmbeddingReport {
    pub description: String,
    /// One label per coordinate of the target product.
    pub coordinates: Vec<String>,
    /// Exact element count of the target product.
    pub target_size: BigUint,
    /// Whether the target was built explicitly or verified coordinatewise.
    pub materialized: bool,
    pub hom_verified: bool,
    pub injective: bool,
    /// Pairs of distinct elements with identical images; empty iff injective.
    pub collisions: Vec<(usize, usize)>,
    /// `component_images[k][x]` is coordinate `k` of the image of `x`.
    pub component_images: Vec<Vec<usize>>,
    /// For the cone embedding: do all cone coordinates stay inside the
    /// 0-extension part? `None` for the reduced-product embedding.
    pub image_in_zero_extension: Option<bool>,
    /// True when a proper coordinate subset was forced through.
    pub sparse_override: bool,
}

struct CliffordContext {
    structure: CliffordStructure,
    idempotent_part: SubSemigroup,
    order: SemilatticeOrder,
}

fn clifford_context(s: &FiniteSemigroup) -> Result<CliffordContext> {
    let structure = clifford_structure(s)?;
    let idempotent_part = s.sub_semigroup(&structure.idempotents)?;
    let order = natural_order(&idempotent_part.semigroup)?;
    Ok(CliffordContext {
        structure,
        idempotent_part,
        order,
    })
}

/// The coordinate homomorphism of `S` into `E ×_{I_e} H_e` at the
/// idempotent `e`, returned together with its target.
pub fn to_reduced_product(
    s: &FiniteSemigroup,
    e: usize,
) -> Result<(Homomorphism, ReducedProduct)> {
    let ctx = clifford_context(s)?;
    to_reduced_product_in(s, &ctx, e)
}

fn to_reduced_product_in(
    s: &FiniteSemigroup,
    ctx: &CliffordContext,
    e: usize,
) -> Result<(Homomorphism, ReducedProduct)> {
    s.check_element(e)?;
    let e_loc = ctx
        .idempotent_part
        .to_local(e)
        .ok_or(Error::NotIdempotent { element: e })?;
    let ideal_local: Vec<usize> = (0..ctx.order.size())
        .filter(|&f| !ctx.order.leq(e_loc, f))
        .collect();
    let groups = maximal_subgroups(s, &ctx.structure);
    let subgroup = s.sub_semigroup(&groups.groups[&e])?;
    let rp = reduced_product(&ctx.idempotent_part.semigroup, &ideal_local, &subgroup.semigroup)?;

    let map: Vec<usize> = (0..s.size())
        .map(|x| {
            let f_loc = ctx
                .idempotent_part
                .to_local(ctx.structure.pi[x])
                .expect("projection lands in the idempotent part");
            if ctx.order.leq(e_loc, f_loc) {
                let h_loc = subgroup
                    .to_local(s.mul(x, e))
                    .expect("x·e lies in the subgroup at e when π(x) ≥ e");
                rp.coding
                    .encode_pair(f_loc, h_loc)
                    .expect("π(x) is outside the ideal when e ≤ π(x)")
            } else {
                rp.coding
                    .encode_collapsed(f_loc)
                    .expect("π(x) is in the ideal when e ≰ π(x)")
            }
        })
        .collect();
    let hom = Homomorphism::new(s.clone(), rp.semigroup.clone(), map)?;
    Ok((hom, rp))
}

/// Resolves the coordinate set: defaults to all idempotents, validates
/// membership, and enforces U-density unless overridden.
fn resolve_coordinate_set(
    ctx: &CliffordContext,
    a: Option<&[usize]>,
    opts: &EmbedOptions,
) -> Result<(Vec<usize>, bool)> {
    match a {
        None => Ok((ctx.structure.idempotents.clone(), false)),
        Some(chosen) => {
            let mut set: Vec<usize> = chosen.to_vec();
            set.sort_unstable();
            set.dedup();
            for &e in &set {
                if ctx.idempotent_part.to_local(e).is_none() {
                    return Err(Error::NotIdempotent { element: e });
                }
            }
            if set == ctx.structure.idempotents {
                Ok((set, false))
            } else if opts.allow_sparse {
                Ok((set, true))
            } else {
                let missing = ctx
                    .structure
                    .idempotents
                    .iter()
                    .copied()
                    .find(|e| set.binary_search(e).is_err())
                    .expect("a proper subset is missing some idempotent");
                Err(Error::NotUDense { missing })
            }
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn assemble_report(
    s: &FiniteSemigroup,
    description: String,
    coordinates: Vec<String>,
    factors: Vec<FiniteSemigroup>,
    tuples: Vec<Vec<usize>>,
    image_in_zero_extension: Option<bool>,
    sparse_override: bool,
    opts: &EmbedOptions,
) -> Result<EmbeddingReport> {
    let target_size = ProductSemigroup::required_size(&factors.iter().collect::<Vec<_>>());
    let within_cap = target_size <= BigUint::from(opts.materialize_cap);
    let (materialized, hom_verified) = if within_cap || opts.force_materialize {
        let product = ProductSemigroup::new(factors, opts.materialize_cap)?;
        let codes: Vec<usize> = tuples.iter().map(|t| product.encode(t)).collect();
        let mut ok = true;
        'law: for x in 0..s.size() {
            for y in 0..s.size() {
                if product.mul(codes[x], codes[y]) != codes[s.mul(x, y)] {
                    ok = false;
                    break 'law;
                }
            }
        }
        (true, ok)
    } else {
        // each coordinate is a verified homomorphism, so the diagonal obeys
        // the law componentwise
        (false, true)
    };

    let mut collisions = Vec::new();
    for x in 0..s.size() {
        for y in x + 1..s.size() {
            if tuples[x] == tuples[y] {
                collisions.push((x, y));
            }
        }
    }
    let coordinate_count = coordinates.len();
    let component_images: Vec<Vec<usize>> = (0..coordinate_count)
        .map(|k| tuples.iter().map(|t| t[k]).collect())
        .collect();

    Ok(EmbeddingReport {
        description,
        coordinates,
        target_size,
        materialized,
        hom_verified,
        injective: collisions.is_empty(),
        collisions,
        component_images,
        image_in_zero_extension,
        sparse_override,
    })
}

/// Diagonal of the reduced-product coordinate maps over the coordinate set
/// `A` (all idempotents by default): the first embedding check.
pub fn embed_into_reduced_products(
    s: &FiniteSemigroup,
    a: Option<&[usize]>,
    opts: &EmbedOptions,
) -> Result<EmbeddingReport> {
    let ctx = clifford_context(s)?;
    let (coord_set, sparse_override) = resolve_coordinate_set(&ctx, a, opts)?;

    let mut coordinates = Vec::new();
    let mut factors = Vec::new();
    let mut tuples: Vec<Vec<usize>> = vec![Vec::new(); s.size()];
    for &e in &coord_set {
        let (hom, rp) = to_reduced_product_in(s, &ctx, e)?;
        coordinates.push(format!("e={e}"));
        for (x, tuple) in tuples.iter_mut().enumerate() {
            tuple.push(hom.apply(x));
        }
        factors.push(rp.semigroup);
    }

    assemble_report(
        s,
        format!(
            "diagonal map into the product of {} reduced products E x_I H_e",
            coord_set.len()
        ),
        coordinates,
        factors,
        tuples,
        None,
        sparse_override,
        opts,
    )
}

/// The coordinate homomorphism of `S` into the cone over `H_e` at resolution
/// `levels`, driven by the selected separating homomorphism for `e ≤ a`.
pub fn into_cone(
    s: &FiniteSemigroup,
    e: usize,
    a: usize,
    levels: usize,
) -> Result<(Homomorphism, ReducedProduct)> {
    let ctx = clifford_context(s)?;
    into_cone_in(s, &ctx, e, a, levels)
}

fn into_cone_in(
    s: &FiniteSemigroup,
    ctx: &CliffordContext,
    e: usize,
    a: usize,
    levels: usize,
) -> Result<(Homomorphism, ReducedProduct)> {
    s.check_element(e)?;
    s.check_element(a)?;
    let e_loc = ctx
        .idempotent_part
        .to_local(e)
        .ok_or(Error::NotIdempotent { element: e })?;
    let a_loc = ctx
        .idempotent_part
        .to_local(a)
        .ok_or(Error::NotIdempotent { element: a })?;
    let separating = select_separating_hom(&ctx.order, e_loc, a_loc, levels)?;

    let groups = maximal_subgroups(s, &ctx.structure);
    let subgroup = s.sub_semigroup(&groups.groups[&e])?;
    let target = cone(&subgroup.semigroup, levels)?;

    let map: Vec<usize> = (0..s.size())
        .map(|x| {
            let f_loc = ctx
                .idempotent_part
                .to_local(ctx.structure.pi[x])
                .expect("projection lands in the idempotent part");
            let level = separating.apply(f_loc);
            if level > 0 {
                let h_loc = subgroup
                    .to_local(s.mul(x, e))
                    .expect("x·e lies in the subgroup at e when the level is positive");
                target
                    .coding
                    .encode_pair(level, h_loc)
                    .expect("positive levels survive the collapse")
            } else {
                target
                    .coding
                    .encode_collapsed(0)
                    .expect("the apex is the collapsed bottom level")
            }
        })
        .collect();
    let hom = Homomorphism::new(s.clone(), target.semigroup.clone(), map)?;
    Ok((hom, target))
}

/// The second embedding check: the natural projection onto `E` paired with
/// every cone coordinate `(e, a)` for `e ∈ A`, `a ∈ A ∩ ↑e`.
pub fn embed_into_cones(
    s: &FiniteSemigroup,
    a: Option<&[usize]>,
    levels: usize,
    opts: &EmbedOptions,
) -> Result<EmbeddingReport> {
    let ctx = clifford_context(s)?;
    let (coord_set, sparse_override) = resolve_coordinate_set(&ctx, a, opts)?;

    let mut coordinates = vec!["pi".to_string()];
    let mut factors = vec![ctx.idempotent_part.semigroup.clone()];
    let mut tuples: Vec<Vec<usize>> = (0..s.size())
        .map(|x| {
            vec![ctx
                .idempotent_part
                .to_local(ctx.structure.pi[x])
                .expect("projection lands in the idempotent part")]
        })
        .collect();

    let mut zero_extension = true;
    for &e in &coord_set {
        let e_loc = ctx.idempotent_part.to_local(e).expect("validated above");
        for &upper in &coord_set {
            let upper_loc = ctx.idempotent_part.to_local(upper).expect("validated above");
            if !ctx.order.leq(e_loc, upper_loc) {
                continue;
            }
            let (hom, target) = into_cone_in(s, &ctx, e, upper, levels)?;
            coordinates.push(format!("e={e},a={upper}"));
            for (x, tuple) in tuples.iter_mut().enumerate() {
                let value = hom.apply(x);
                tuple.push(value);
                match target.coding.decode(value) {
                    ReducedElement::Collapsed(_) => {}
                    ReducedElement::Pair(level, _) => {
                        if level != levels {
                            zero_extension = false;
                        }
                    }
                }
            }
            factors.push(target.semigroup);
        }
    }

    assemble_report(
        s,
        format!(
            "projection onto E paired with {} cone coordinates at resolution {}",
            coordinates.len() - 1,
            levels
        ),
        coordinates,
        factors,
        tuples,
        Some(zero_extension),
        sparse_override,
        opts,
    )
}

/// Which of the embeddability hypotheses hold for `S` in the finite
/// discrete reading.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddabilityFlags {
    /// The canonical map of `E` into powers of the two-element semilattice
    /// is injective. Separation and embeddability coincide discretely, so
    /// the two flags agree by construction; both are reported for the
    /// record.
    pub two_separated: bool,
    pub two_embeddable: bool,
    /// Chain resolution used for the interval approximation.
    pub chain_levels: usize,
    pub chain_embeddable: bool,
    pub ditopological: bool,
}

/// Evaluates the embeddability hypotheses for a Clifford semigroup: the
/// 2- and chain-embeddability of its idempotent part and the discrete
/// divisibility condition.
pub fn classify_embeddability(s: &FiniteSemigroup, levels: usize) -> Result<EmbeddabilityFlags> {
    let ctx = clifford_context(s)?;
    let e = &ctx.idempotent_part.semigroup;

    let homs_two = enumerate_homs(e, &construct::two())?;
    let two_injective = canonical_map(e, &homs_two).injective;

    let chain = construct::chain(levels)?;
    let homs_chain = enumerate_homs(e, &chain)?;
    let chain_injective = canonical_map(e, &homs_chain).injective;

    let ditopological =
        construct::check_ditopological_discrete(s, &ctx.structure).verdict;

    Ok(EmbeddabilityFlags {
        two_separated: two_injective,
        two_embeddable: two_injective,
        chain_levels: levels,
        chain_embeddable: chain_injective,
        ditopological,
    })
}

/// Convenience wrapper asserting Cliffordness first; used by reports.
pub fn require_clifford(s: &FiniteSemigroup) -> Result<()> {
    if !classify(s).is_clifford {
        return Err(Error::NotClifford {
            reason: "structure report says the input is not Clifford".into(),
        });
    }
    Ok(())
}

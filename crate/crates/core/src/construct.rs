//! Theories from automorphism orbits, direct products and wedge products.

use alloc::vec::Vec;
use core::fmt;

use crate::group::{quotient, AutMap, AutSubgroup, Embedding, GroupSpec, Subgroup};
use crate::partition::{Partition, UnionFind};
use crate::theory::{induced_character_partition, Theory, TheoryError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConstructError {
    /// A generator is not an automorphism of the target group.
    NotAnAutomorphism(usize),
    /// The subgroups do not form a complementary pair.
    NotComplementary,
    /// A factor theory lives on the wrong group.
    FactorMismatch,
    Theory(TheoryError),
}

impl fmt::Display for ConstructError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstructError::NotAnAutomorphism(i) => write!(f, "generator {i} is not an automorphism of the group"),
            ConstructError::NotComplementary => f.write_str("subgroups are not a complementary pair"),
            ConstructError::FactorMismatch => f.write_str("factor theory is over the wrong group"),
            ConstructError::Theory(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for ConstructError {}

impl From<TheoryError> for ConstructError {
    fn from(e: TheoryError) -> Self {
        ConstructError::Theory(e)
    }
}

/// Orbits of `⟨gens⟩` on elements and, through the dual action, on
/// characters. Orbits of a group equal orbits of its generators, so the
/// closure is never materialised here.
pub fn from_automorphisms(g: &GroupSpec, gens: &[AutMap]) -> Result<Theory, ConstructError> {
    if let Some(i) = gens.iter().position(|a| !a.belongs_to(g)) {
        return Err(ConstructError::NotAnAutomorphism(i));
    }
    let n = g.order();
    let mut elems = UnionFind::new(n);
    let mut chars = UnionFind::new(n);
    for a in gens {
        for x in 0..n {
            elems.union(x, a.apply(x));
            chars.union(x, a.apply_character(x));
        }
    }
    Ok(Theory::from_parts(g.clone(), elems.into_partition(), chars.into_partition()))
}

pub fn from_aut_subgroup(g: &GroupSpec, h: &AutSubgroup) -> Result<Theory, ConstructError> {
    from_automorphisms(g, &h.generators)
}

fn check_pair(g: &GroupSpec, h1: &Subgroup, h2: &Subgroup) -> Result<(Embedding, Embedding), ConstructError> {
    let meet = h1.members().iter().filter(|&&m| h2.contains(m)).count();
    if meet != 1 || h1.order() * h2.order() != g.order() {
        return Err(ConstructError::NotComplementary);
    }
    Ok((Embedding::of(g, h1), Embedding::of(g, h2)))
}

/// Class partition `{K·L}` of the direct product.
pub fn direct_product_classes(
    g: &GroupSpec,
    (h1, t1): (&Subgroup, &Theory),
    (h2, t2): (&Subgroup, &Theory),
) -> Result<Partition, ConstructError> {
    let (e1, e2) = check_pair(g, h1, h2)?;
    if t1.group() != e1.spec() || t2.group() != e2.spec() {
        return Err(ConstructError::FactorMismatch);
    }
    let mut label = alloc::vec![(0usize, 0usize); g.order()];
    for (i, k) in t1.classes().blocks().iter().enumerate() {
        for (j, l) in t2.classes().blocks().iter().enumerate() {
            for &x in k {
                for &y in l {
                    label[g.mul_idx(e1.image(x), e2.image(y))] = (i, j);
                }
            }
        }
    }
    Ok(Partition::from_labels(&label))
}

/// The direct product theory over a complementary pair. The character side
/// pairs the blocks of the two restrictions.
pub fn direct_product(
    g: &GroupSpec,
    (h1, t1): (&Subgroup, &Theory),
    (h2, t2): (&Subgroup, &Theory),
) -> Result<Theory, ConstructError> {
    let classes = direct_product_classes(g, (h1, t1), (h2, t2))?;
    let (e1, e2) = check_pair(g, h1, h2)?;
    let label: Vec<(usize, usize)> = (0..g.order())
        .map(|chi| {
            (
                t1.charparts().block_of(e1.restrict_character(g, chi)),
                t2.charparts().block_of(e2.restrict_character(g, chi)),
            )
        })
        .collect();
    Ok(Theory::from_parts(g.clone(), classes, Partition::from_labels(&label)))
}

/// Data for a wedge product over the subgroup `n`.
#[derive(Debug, Clone)]
pub struct WedgeSpec {
    pub n: Subgroup,
    /// A theory of `Embedding::of(g, n).spec()`.
    pub inner: Theory,
    /// A theory of `quotient(g, n).spec()`.
    pub outer: Theory,
}

/// `𝒦_N ∪ {π⁻¹(K) : K ∈ 𝒦_{G/N}, K ≠ {e}}`.
pub fn wedge_classes(g: &GroupSpec, spec: &WedgeSpec) -> Result<Partition, ConstructError> {
    let emb = Embedding::of(g, &spec.n);
    let quo = quotient(g, &spec.n);
    if spec.inner.group() != emb.spec() || spec.outer.group() != quo.spec() {
        return Err(ConstructError::FactorMismatch);
    }
    let inner = spec.inner.classes();
    let outer = spec.outer.classes();
    let label: Vec<(usize, usize)> = (0..g.order())
        .map(|x| match emb.local(x) {
            Some(q) => (0, inner.block_of(q)),
            None => (1, outer.block_of(quo.project(x))),
        })
        .collect();
    Ok(Partition::from_labels(&label))
}

/// The wedge product; the character side is the induced partition.
pub fn wedge(g: &GroupSpec, spec: &WedgeSpec) -> Result<Theory, ConstructError> {
    let classes = wedge_classes(g, spec)?;
    let charparts = induced_character_partition(g, &classes)?;
    Ok(Theory::from_parts(g.clone(), classes, charparts))
}

/// The character side written out directly: inflations of the outer
/// character blocks, together with `⋃_{ψ∈X} irr(G|ψ)` for each nontrivial
/// inner character block `X`.
pub fn character_side_wedge(g: &GroupSpec, spec: &WedgeSpec) -> Result<Partition, ConstructError> {
    let emb = Embedding::of(g, &spec.n);
    let quo = quotient(g, &spec.n);
    if spec.inner.group() != emb.spec() || spec.outer.group() != quo.spec() {
        return Err(ConstructError::FactorMismatch);
    }
    let label: Vec<(usize, usize)> = (0..g.order())
        .map(|chi| match quo.deflate_character(g, chi) {
            Some(psi) => (0, spec.outer.charparts().block_of(psi)),
            None => (1, spec.inner.charparts().block_of(emb.restrict_character(g, chi))),
        })
        .collect();
    Ok(Partition::from_labels(&label))
}

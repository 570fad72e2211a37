//! Recognisers that decide, from a theory alone, which constructions can
//! produce it. They do not consult the enumerator.

use alloc::vec::Vec;

use crate::construct::direct_product_classes;
use crate::group::{aut_group, complementary_pairs, quotient, AutMap, Subgroup};
use crate::partition::UnionFind;
use crate::theory::{invariant_subgroups, restriction, Theory};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub minimal: bool,
    pub maximal: bool,
    /// Generators of the largest automorphism group fixing every class, when
    /// its orbits are exactly the classes.
    pub automorphic: Option<Vec<AutMap>>,
    /// Complementary pairs over which the theory is a direct product.
    pub direct: Vec<(Subgroup, Subgroup)>,
    /// Subgroups over which the theory is a wedge product.
    pub wedge: Vec<Subgroup>,
}

/// Automorphisms mapping every superclass to itself.
pub fn class_stabilizer(t: &Theory) -> Vec<AutMap> {
    let classes = t.classes();
    aut_group(t.group())
        .into_iter()
        .filter(|a| (0..t.group().order()).all(|x| classes.block_of(a.apply(x)) == classes.block_of(x)))
        .collect()
}

/// The stabiliser's orbits are the classes exactly when the theory comes
/// from some automorphism group; the stabiliser is then the largest one.
pub fn automorphic_witness(t: &Theory) -> Option<Vec<AutMap>> {
    let stab = class_stabilizer(t);
    let n = t.group().order();
    let mut uf = UnionFind::new(n);
    for a in &stab {
        for x in 0..n {
            uf.union(x, a.apply(x));
        }
    }
    (uf.into_partition() == *t.classes()).then_some(stab)
}

pub fn direct_witnesses(t: &Theory) -> Vec<(Subgroup, Subgroup)> {
    let g = t.group();
    complementary_pairs(g)
        .into_iter()
        .filter(|(h1, h2)| {
            let (Ok(t1), Ok(t2)) = (restriction(t, h1), restriction(t, h2)) else {
                return false;
            };
            direct_product_classes(g, (h1, &t1), (h2, &t2)).ok().as_ref() == Some(t.classes())
        })
        .collect()
}

/// Proper nontrivial invariant `N` such that every class outside `N` is a
/// union of `N`-cosets. For such `N` the classes outside project to a
/// theory of `G/N` and the theory is the wedge of its restriction with it.
pub fn wedge_witnesses(t: &Theory) -> Vec<Subgroup> {
    let g = t.group();
    invariant_subgroups(t)
        .into_iter()
        .filter(|n| !n.is_trivial() && n.order() < g.order())
        .filter(|n| {
            let q = quotient(g, n);
            t.classes().blocks().iter().filter(|k| !n.contains(k[0])).all(|k| {
                k.iter().all(|&x| n.members().iter().all(|&m| t.classes().block_of(g.mul_idx(x, m)) == t.classes().block_of(x)))
                    && q.project(k[0]) != 0
            })
        })
        .collect()
}

pub fn classify(t: &Theory) -> Classification {
    Classification {
        minimal: t.is_minimal(),
        maximal: t.is_maximal(),
        automorphic: automorphic_witness(t),
        direct: direct_witnesses(t),
        wedge: wedge_witnesses(t),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupSpec;

    #[test]
    fn extremes() {
        let g = GroupSpec::cp_c2_c2(3).unwrap();
        let min = classify(&Theory::minimal(&g));
        assert!(min.minimal && min.automorphic.is_some() && !min.direct.is_empty());
        assert!(min.wedge.is_empty());
        let max = classify(&Theory::maximal(&g));
        assert!(max.maximal && max.automorphic.is_none() && max.direct.is_empty() && max.wedge.is_empty());
    }
}

//! Supercharacter theories: the pair of partitions, axiom checks, the
//! algebra criterion, restriction, duality and canonical keys.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::cyclo::CycInt;
use crate::group::{all_subgroups, Embedding, GroupError, GroupSpec, Subgroup};
use crate::partition::{Partition, PartitionError};

/// The first failed axiom of a candidate theory.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// A partition does not cover exactly the group (or its characters).
    CarrierMismatch { expected: usize, classes: usize, charparts: usize },
    /// Condition 1, group side: `{e}` is not a superclass.
    IdentityNotSingleton,
    /// Condition 1, character side: `{triv}` is not a block.
    TrivialNotSingleton,
    /// Condition 2.
    CountMismatch { classes: usize, charparts: usize },
    /// Condition 3: `σ_X(g) ≠ σ_X(h)` for `g, h` in one superclass.
    NotConstant { charpart: usize, g: usize, h: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::CarrierMismatch { expected, classes, charparts } => write!(
                f,
                "partitions cover {classes} elements and {charparts} characters, group has {expected}"
            ),
            Violation::IdentityNotSingleton => f.write_str("condition 1: {e} is not a superclass"),
            Violation::TrivialNotSingleton => f.write_str("condition 1: {triv} is not a character block"),
            Violation::CountMismatch { classes, charparts } => {
                write!(f, "condition 2: {classes} superclasses but {charparts} character blocks")
            }
            Violation::NotConstant { charpart, g, h } => write!(
                f,
                "condition 3: supercharacter {charpart} differs on elements {g} and {h} of one superclass"
            ),
        }
    }
}

/// Witness that a class partition does not span a subalgebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlgebraViolation {
    IdentityNotSingleton,
    /// The product of blocks `i` and `j` has unequal coefficients at `g`, `h`
    /// which lie in the same block `block`.
    NotClosed { i: usize, j: usize, block: usize, g: usize, h: usize },
}

impl fmt::Display for AlgebraViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraViolation::IdentityNotSingleton => f.write_str("{e} is not a block"),
            AlgebraViolation::NotClosed { i, j, block, g, h } => write!(
                f,
                "product of blocks {i} and {j} is not constant on block {block} (elements {g}, {h})"
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TheoryError {
    Algebra(AlgebraViolation),
    Invalid(Violation),
    /// The induced character partition has the wrong size; this means the
    /// class partition was not closed after all.
    InducedCardinality { classes: usize, charparts: usize },
    NotUnionOfBlocks,
    /// Transporting through the fixed isomorphism gave a non-theory.
    DualInvalid(Violation),
    Group(GroupError),
    Partition(PartitionError),
}

impl fmt::Display for TheoryError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TheoryError::Algebra(v) => write!(f, "class partition is not an algebra: {v}"),
            TheoryError::Invalid(v) => write!(f, "not a supercharacter theory: {v}"),
            TheoryError::InducedCardinality { classes, charparts } => write!(
                f,
                "internal error: {classes} superclasses induced {charparts} character blocks"
            ),
            TheoryError::NotUnionOfBlocks => f.write_str("subgroup is not a union of superclasses"),
            TheoryError::DualInvalid(v) => write!(f, "internal error: dual theory fails verification: {v}"),
            TheoryError::Group(e) => write!(f, "{e}"),
            TheoryError::Partition(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for TheoryError {}

impl From<GroupError> for TheoryError {
    fn from(e: GroupError) -> Self {
        TheoryError::Group(e)
    }
}

impl From<PartitionError> for TheoryError {
    fn from(e: PartitionError) -> Self {
        TheoryError::Partition(e)
    }
}

/// Canonical identity of a theory: group factors plus the rendered class
/// partition. Two theories of one group are equal iff their keys are.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TheoryKey(String);

impl TheoryKey {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn as_bytes(&self) -> &[u8] {
        self.0.as_bytes()
    }

    pub fn from_string(s: String) -> Self {
        TheoryKey(s)
    }
}

impl fmt::Display for TheoryKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Theory {
    group: GroupSpec,
    classes: Partition,
    charparts: Partition,
}

impl Theory {
    /// Pairs two partitions without checking the axioms.
    pub fn from_parts(group: GroupSpec, classes: Partition, charparts: Partition) -> Self {
        Theory { group, classes, charparts }
    }

    /// Completes a closed class partition with its unique character partition.
    pub fn from_classes(group: GroupSpec, classes: Partition) -> Result<Self, TheoryError> {
        verify_algebra(&group, &classes).map_err(TheoryError::Algebra)?;
        let charparts = induced_character_partition(&group, &classes)?;
        Ok(Theory { group, classes, charparts })
    }

    pub fn minimal(group: &GroupSpec) -> Self {
        let n = group.order();
        Theory { group: group.clone(), classes: Partition::singletons(n), charparts: Partition::singletons(n) }
    }

    pub fn maximal(group: &GroupSpec) -> Self {
        let n = group.order();
        let split = |n: usize| {
            let mut blocks = vec![vec![0]];
            if n > 1 {
                blocks.push((1..n).collect());
            }
            Partition::new(n, blocks).unwrap()
        };
        Theory { group: group.clone(), classes: split(n), charparts: split(n) }
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn classes(&self) -> &Partition {
        &self.classes
    }

    pub fn charparts(&self) -> &Partition {
        &self.charparts
    }

    pub fn dimension(&self) -> usize {
        self.classes.len()
    }

    pub fn is_minimal(&self) -> bool {
        self.classes.len() == self.group.order()
    }

    pub fn is_maximal(&self) -> bool {
        self.classes.len() <= 2
    }

    pub fn canonical_key(&self) -> TheoryKey {
        canonical_key(self)
    }
}

pub fn canonical_key(t: &Theory) -> TheoryKey {
    classes_key(&t.group, &t.classes)
}

/// The key a theory with these superclasses would have.
pub fn classes_key(g: &GroupSpec, classes: &Partition) -> TheoryKey {
    use core::fmt::Write;
    let mut s = String::new();
    for (i, f) in g.factors().iter().enumerate() {
        if i > 0 {
            s.push('x');
        }
        write!(s, "{f}").unwrap();
    }
    s.push(':');
    s.push_str(&classes.render());
    TheoryKey(s)
}

/// Checks the three axioms, reporting the first failure in canonical order.
pub fn verify(t: &Theory) -> Result<(), Violation> {
    let g = &t.group;
    let n = g.order();
    if t.classes.carrier() != n || t.charparts.carrier() != n {
        return Err(Violation::CarrierMismatch {
            expected: n,
            classes: t.classes.carrier(),
            charparts: t.charparts.carrier(),
        });
    }
    if t.classes.blocks()[t.classes.block_of(0)].len() != 1 {
        return Err(Violation::IdentityNotSingleton);
    }
    if t.charparts.blocks()[t.charparts.block_of(0)].len() != 1 {
        return Err(Violation::TrivialNotSingleton);
    }
    if t.classes.len() != t.charparts.len() {
        return Err(Violation::CountMismatch { classes: t.classes.len(), charparts: t.charparts.len() });
    }
    for (xi, x) in t.charparts.blocks().iter().enumerate() {
        for k in t.classes.blocks() {
            let first = g.class_function_value(x, k[0]);
            for &h in &k[1..] {
                if g.class_function_value(x, h) != first {
                    return Err(Violation::NotConstant { charpart: xi, g: k[0], h });
                }
            }
        }
    }
    Ok(())
}

/// Coefficients of `B̂_i · B̂_j` in the group algebra.
pub(crate) fn product_coefficients(g: &GroupSpec, bi: &[usize], bj: &[usize], out: &mut [u32]) {
    out.iter_mut().for_each(|c| *c = 0);
    for &x in bi {
        for &y in bj {
            out[g.mul_idx(x, y)] += 1;
        }
    }
}

/// The class-side criterion: the span of the block sums is closed under the
/// group-algebra product. Closure under the Hadamard product holds for any
/// partition and is not checked.
pub fn verify_algebra(g: &GroupSpec, classes: &Partition) -> Result<(), AlgebraViolation> {
    if classes.carrier() != g.order() || classes.blocks()[classes.block_of(0)].len() != 1 {
        return Err(AlgebraViolation::IdentityNotSingleton);
    }
    let blocks = classes.blocks();
    let mut coef = vec![0u32; g.order()];
    for i in 0..blocks.len() {
        for j in i..blocks.len() {
            product_coefficients(g, &blocks[i], &blocks[j], &mut coef);
            for (bi, b) in blocks.iter().enumerate() {
                let c0 = coef[b[0]];
                if let Some(&h) = b[1..].iter().find(|&&h| coef[h] != c0) {
                    return Err(AlgebraViolation::NotClosed { i, j, block: bi, g: b[0], h });
                }
            }
        }
    }
    Ok(())
}

/// `χ ∼ χ'` iff `χ(K̂) = χ'(K̂)` for every block `K`.
pub fn induced_character_partition(g: &GroupSpec, classes: &Partition) -> Result<Partition, TheoryError> {
    let labels: Vec<Vec<CycInt>> = (0..g.order())
        .map(|chi| classes.blocks().iter().skip(1).map(|k| g.char_sum(chi, k)).collect())
        .collect();
    let charparts = Partition::from_labels(&labels);
    if charparts.len() != classes.len() {
        return Err(TheoryError::InducedCardinality { classes: classes.len(), charparts: charparts.len() });
    }
    Ok(charparts)
}

/// Rows indexed by character blocks, columns by superclasses; every entry is
/// checked against all elements of its superclass.
pub fn supercharacter_table(t: &Theory) -> Result<Vec<Vec<CycInt>>, Violation> {
    let g = &t.group;
    let mut rows = Vec::with_capacity(t.charparts.len());
    for (xi, x) in t.charparts.blocks().iter().enumerate() {
        let mut row = Vec::with_capacity(t.classes.len());
        for k in t.classes.blocks() {
            let v = g.class_function_value(x, k[0]);
            if let Some(&h) = k[1..].iter().find(|&&h| g.class_function_value(x, h) != v) {
                return Err(Violation::NotConstant { charpart: xi, g: k[0], h });
            }
            row.push(v);
        }
        rows.push(row);
    }
    Ok(rows)
}

/// Subgroups that are unions of superclasses.
pub fn invariant_subgroups(t: &Theory) -> Vec<Subgroup> {
    all_subgroups(&t.group)
        .into_iter()
        .filter(|h| t.classes.is_union_of_blocks(h.members()))
        .collect()
}

/// The theory on `n` formed by the superclasses inside `n`, presented on
/// `Embedding::of(group, n).spec()`.
pub fn restriction(t: &Theory, n: &Subgroup) -> Result<Theory, TheoryError> {
    if !t.classes.is_union_of_blocks(n.members()) {
        return Err(TheoryError::NotUnionOfBlocks);
    }
    let emb = Embedding::of(&t.group, n);
    let blocks: Vec<Vec<usize>> = t
        .classes
        .blocks()
        .iter()
        .filter(|k| n.contains(k[0]))
        .map(|k| k.iter().map(|&x| emb.local(x).expect("block inside subgroup")).collect())
        .collect();
    let classes = Partition::new(emb.spec().order(), blocks)?;
    Theory::from_classes(emb.spec().clone(), classes)
}

/// The dual theory, transported through the exponent-vector identification
/// of `G` with its character group.
pub fn dual(t: &Theory) -> Result<Theory, TheoryError> {
    let d = Theory { group: t.group.clone(), classes: t.charparts.clone(), charparts: t.classes.clone() };
    verify(&d).map_err(TheoryError::DualInvalid)?;
    Ok(d)
}

/// Every superclass of `fine` lies in a superclass of `coarse`.
pub fn refines(fine: &Theory, coarse: &Theory) -> bool {
    fine.group == coarse.group && fine.classes.refines(&coarse.classes)
}

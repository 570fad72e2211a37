//! Finite abelian groups presented as products of cyclic factors.
//!
//! Every supported group has the shape `C_p^ε × (C_2)^r` with `p` an odd
//! prime, `ε ∈ {0, 1}` and `r ≤ 3` (`εr` at most 2). The odd factor, when
//! present, comes first. Elements are exponent vectors in the fixed generator
//! order `(a, b, c)` and are indexed by their position in lexicographic order,
//! so the identity is always index 0.
//!
//! Characters reuse the same exponent vectors. The pairing between a
//! character `χ` and an element `g` is
//!
//! ```text
//! χ(g) = ζ^(χ_a·g_a) · (-1)^(Σ χ_j · g_{partner(j)})
//! ```
//!
//! where `partner` swaps the two involution coordinates when there are
//! exactly two of them, and is the identity otherwise. With this pairing the
//! exponent vector `(0,1,0)` is `ψ_b`, `(0,0,1)` is `ψ_c` and `(0,1,1)` is
//! `ψ_bc`, so the dual group is identified with `G` through `b ↦ ψ_b`,
//! `c ↦ ψ_c`.

mod aut;

pub use aut::{
    aut_group, generated_subgroup, goursat_subgroups, primitive_root, subgroups_by_closure, subgroups_of_aut,
    AutMap, AutSubgroup, GoursatCase, GoursatSubgroup, KleinPerm,
};

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::cyclo::{is_odd_prime, CycInt};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupError {
    /// The factor list does not describe one of the supported shapes.
    Unsupported(Vec<u32>),
    /// An exponent vector has the wrong length for the group.
    ShapeMismatch { expected: usize, found: usize },
    /// An exponent is not reduced modulo its factor order.
    ExponentOutOfRange { position: usize, value: u32, order: u32 },
    /// A proposed automorphism is not a bijective homomorphism.
    NotAnAutomorphism,
    /// Two objects belong to different groups.
    GroupMismatch,
}

impl fmt::Display for GroupError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupError::Unsupported(factors) => write!(f, "unsupported group with factors {factors:?}"),
            GroupError::ShapeMismatch { expected, found } => {
                write!(f, "exponent vector of length {found}, expected {expected}")
            }
            GroupError::ExponentOutOfRange { position, value, order } => {
                write!(f, "exponent {value} at position {position} is not reduced mod {order}")
            }
            GroupError::NotAnAutomorphism => f.write_str("generator images do not define an automorphism"),
            GroupError::GroupMismatch => f.write_str("objects belong to different groups"),
        }
    }
}

impl core::error::Error for GroupError {}

/// The isomorphism type of a supported group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    Trivial,
    C2,
    Cp,
    Klein,
    CpC2,
    C2Cubed,
    CpC2C2,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Trivial => "Trivial",
            Family::C2 => "C2",
            Family::Cp => "Cp",
            Family::Klein => "Klein",
            Family::CpC2 => "CpC2",
            Family::C2Cubed => "C2cubed",
            Family::CpC2C2 => "CpC2C2",
        }
    }

    pub fn from_name(name: &str) -> Option<Family> {
        Some(match name {
            "Trivial" => Family::Trivial,
            "C2" => Family::C2,
            "Cp" => Family::Cp,
            "Klein" => Family::Klein,
            "CpC2" => Family::CpC2,
            "C2cubed" => Family::C2Cubed,
            "CpC2C2" => Family::CpC2C2,
            _ => return None,
        })
    }

    pub fn needs_prime(self) -> bool {
        matches!(self, Family::Cp | Family::CpC2 | Family::CpC2C2)
    }
}

/// An exponent vector naming a group element.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Element {
    exps: Vec<u32>,
}

impl Element {
    pub fn new(exps: Vec<u32>) -> Self {
        Element { exps }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }
}

/// An exponent vector naming an irreducible character.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Character {
    exps: Vec<u32>,
}

impl Character {
    pub fn new(exps: Vec<u32>) -> Self {
        Character { exps }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn is_trivial(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }
}

/// A character value `±ζ^zeta`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Phase {
    pub zeta: u32,
    pub negative: bool,
}

/// A supported finite abelian group.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupSpec {
    factors: Vec<u32>,
}

impl GroupSpec {
    pub fn from_factors(factors: Vec<u32>) -> Result<Self, GroupError> {
        let (odd, twos) = match factors.first() {
            Some(&p) if p != 2 => (Some(p), &factors[1..]),
            _ => (None, &factors[..]),
        };
        let ok = odd.is_none_or(is_odd_prime)
            && twos.iter().all(|&f| f == 2)
            && twos.len() <= if odd.is_some() { 2 } else { 3 };
        if ok {
            Ok(GroupSpec { factors })
        } else {
            Err(GroupError::Unsupported(factors))
        }
    }

    pub fn from_family(family: Family, p: Option<u32>) -> Result<Self, GroupError> {
        let odd = |tail: &[u32]| match p {
            Some(p) if is_odd_prime(p) => {
                let mut f = vec![p];
                f.extend_from_slice(tail);
                GroupSpec::from_factors(f)
            }
            Some(p) => Err(GroupError::Unsupported(vec![p])),
            None => Err(GroupError::Unsupported(tail.to_vec())),
        };
        match family {
            Family::Trivial => GroupSpec::from_factors(vec![]),
            Family::C2 => GroupSpec::from_factors(vec![2]),
            Family::Klein => GroupSpec::from_factors(vec![2, 2]),
            Family::C2Cubed => GroupSpec::from_factors(vec![2, 2, 2]),
            Family::Cp => odd(&[]),
            Family::CpC2 => odd(&[2]),
            Family::CpC2C2 => odd(&[2, 2]),
        }
    }

    pub fn cp(p: u32) -> Result<Self, GroupError> {
        Self::from_family(Family::Cp, Some(p))
    }

    pub fn cp_c2(p: u32) -> Result<Self, GroupError> {
        Self::from_family(Family::CpC2, Some(p))
    }

    pub fn cp_c2_c2(p: u32) -> Result<Self, GroupError> {
        Self::from_family(Family::CpC2C2, Some(p))
    }

    pub fn c2() -> Self {
        GroupSpec { factors: vec![2] }
    }

    pub fn klein() -> Self {
        GroupSpec { factors: vec![2, 2] }
    }

    pub fn c2_cubed() -> Self {
        GroupSpec { factors: vec![2, 2, 2] }
    }

    pub fn factors(&self) -> &[u32] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> usize {
        self.factors.iter().map(|&f| f as usize).product()
    }

    pub fn odd_prime(&self) -> Option<u32> {
        self.factors.first().copied().filter(|&f| f != 2)
    }

    /// Modulus of the cyclotomic ring holding the character values.
    pub fn ring_modulus(&self) -> u32 {
        self.odd_prime().unwrap_or(1)
    }

    pub fn family(&self) -> Family {
        let twos = self.factors.iter().filter(|&&f| f == 2).count();
        match (self.odd_prime().is_some(), twos) {
            (false, 0) => Family::Trivial,
            (false, 1) => Family::C2,
            (false, 2) => Family::Klein,
            (false, _) => Family::C2Cubed,
            (true, 0) => Family::Cp,
            (true, 1) => Family::CpC2,
            (true, _) => Family::CpC2C2,
        }
    }

    /// Coordinate paired with coordinate `i` by the character pairing.
    pub fn partner(&self, i: usize) -> usize {
        let twos: Vec<usize> = (0..self.rank()).filter(|&j| self.factors[j] == 2).collect();
        if twos.len() == 2 && twos.contains(&i) {
            if twos[0] == i {
                twos[1]
            } else {
                twos[0]
            }
        } else {
            i
        }
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub(crate) fn digits(&self, mut idx: usize) -> [u32; 3] {
        let mut out = [0u32; 3];
        for i in (0..self.rank()).rev() {
            let f = self.factors[i] as usize;
            out[i] = (idx % f) as u32;
            idx /= f;
        }
        out
    }

    pub(crate) fn compose(&self, digits: &[u32]) -> usize {
        self.factors
            .iter()
            .zip(digits)
            .fold(0usize, |acc, (&f, &d)| acc * f as usize + (d % f) as usize)
    }

    pub fn index_of(&self, g: &Element) -> Result<usize, GroupError> {
        self.check_exps(&g.exps)?;
        Ok(self.compose(&g.exps))
    }

    pub fn char_index_of(&self, chi: &Character) -> Result<usize, GroupError> {
        self.check_exps(&chi.exps)?;
        Ok(self.compose(&chi.exps))
    }

    fn check_exps(&self, exps: &[u32]) -> Result<(), GroupError> {
        if exps.len() != self.rank() {
            return Err(GroupError::ShapeMismatch { expected: self.rank(), found: exps.len() });
        }
        for (position, (&value, &order)) in exps.iter().zip(&self.factors).enumerate() {
            if value >= order {
                return Err(GroupError::ExponentOutOfRange { position, value, order });
            }
        }
        Ok(())
    }

    pub fn element(&self, idx: usize) -> Element {
        Element { exps: self.digits(idx)[..self.rank()].to_vec() }
    }

    pub fn character(&self, idx: usize) -> Character {
        Character { exps: self.digits(idx)[..self.rank()].to_vec() }
    }

    pub fn mul_idx(&self, i: usize, j: usize) -> usize {
        let (a, b) = (self.digits(i), self.digits(j));
        let mut s = [0u32; 3];
        for k in 0..self.rank() {
            s[k] = (a[k] + b[k]) % self.factors[k];
        }
        self.compose(&s[..self.rank()])
    }

    pub fn inv_idx(&self, i: usize) -> usize {
        let a = self.digits(i);
        let mut s = [0u32; 3];
        for k in 0..self.rank() {
            s[k] = (self.factors[k] - a[k]) % self.factors[k];
        }
        self.compose(&s[..self.rank()])
    }

    pub fn pow_idx(&self, i: usize, e: u64) -> usize {
        let a = self.digits(i);
        let mut s = [0u32; 3];
        for k in 0..self.rank() {
            let f = self.factors[k] as u64;
            s[k] = ((a[k] as u64 * (e % f)) % f) as u32;
        }
        self.compose(&s[..self.rank()])
    }

    pub fn order_of_idx(&self, i: usize) -> usize {
        let a = self.digits(i);
        (0..self.rank())
            .filter(|&k| a[k] != 0)
            .fold(1usize, |acc, k| lcm(acc, self.factors[k] as usize))
    }

    /// Index of the basis vector with a single 1 in coordinate `k`.
    pub fn unit(&self, k: usize) -> usize {
        let mut d = [0u32; 3];
        d[k] = 1;
        self.compose(&d[..self.rank()])
    }

    pub fn mul(&self, g: &Element, h: &Element) -> Result<Element, GroupError> {
        let (i, j) = (self.index_of(g)?, self.index_of(h)?);
        Ok(self.element(self.mul_idx(i, j)))
    }

    pub fn char_phase(&self, chi: usize, g: usize) -> Phase {
        let (c, d) = (self.digits(chi), self.digits(g));
        let mut zeta = 0u32;
        let mut sign = 0u32;
        for k in 0..self.rank() {
            let f = self.factors[k];
            if f == 2 {
                sign += c[k] * d[self.partner(k)];
            } else {
                zeta = (c[k] * d[k]) % f;
            }
        }
        Phase { zeta, negative: sign % 2 == 1 }
    }

    pub fn char_value_idx(&self, chi: usize, g: usize) -> CycInt {
        let ph = self.char_phase(chi, g);
        let v = CycInt::root_power(self.ring_modulus(), ph.zeta as i64).expect("valid ring modulus");
        if ph.negative {
            -&v
        } else {
            v
        }
    }

    pub fn char_value(&self, chi: &Character, g: &Element) -> Result<CycInt, GroupError> {
        Ok(self.char_value_idx(self.char_index_of(chi)?, self.index_of(g)?))
    }

    /// Character index whose logarithmic values on the basis vectors are `logs`.
    pub(crate) fn character_from_basis_logs(&self, logs: &[u32]) -> usize {
        let mut c = [0u32; 3];
        for j in 0..self.rank() {
            c[self.partner(j)] = logs[j];
        }
        self.compose(&c[..self.rank()])
    }

    pub(crate) fn log_of_phase(&self, k: usize, ph: Phase) -> u32 {
        if self.factors[k] == 2 {
            ph.negative as u32
        } else {
            ph.zeta
        }
    }

    /// `Σ_{g ∈ set} χ(g)` as an exact cyclotomic integer.
    pub fn char_sum(&self, chi: usize, set: &[usize]) -> CycInt {
        let p = self.ring_modulus() as usize;
        let mut counts = vec![0i64; p];
        for &g in set {
            let ph = self.char_phase(chi, g);
            counts[ph.zeta as usize] += if ph.negative { -1 } else { 1 };
        }
        CycInt::from_power_counts_unchecked(p as u32, &counts)
    }

    /// `Σ_{χ ∈ chars} χ(g)`.
    pub fn class_function_value(&self, chars: &[usize], g: usize) -> CycInt {
        let p = self.ring_modulus() as usize;
        let mut counts = vec![0i64; p];
        for &chi in chars {
            let ph = self.char_phase(chi, g);
            counts[ph.zeta as usize] += if ph.negative { -1 } else { 1 };
        }
        CycInt::from_power_counts_unchecked(p as u32, &counts)
    }

    /// Characters trivial on every element of `members`.
    pub fn annihilator(&self, members: &[usize]) -> Vec<usize> {
        (0..self.order())
            .filter(|&chi| {
                members.iter().all(|&h| {
                    let ph = self.char_phase(chi, h);
                    ph.zeta == 0 && !ph.negative
                })
            })
            .collect()
    }
}

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// A subgroup, stored as its sorted member indices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subgroup {
    members: Vec<usize>,
    generators: Vec<usize>,
}

impl Subgroup {
    /// The subgroup generated by `gens`.
    pub fn generated(g: &GroupSpec, gens: &[usize]) -> Self {
        let members = span(g, gens);
        let generators = basis(g, &members, &[]);
        Subgroup { members, generators }
    }

    pub fn trivial() -> Self {
        Subgroup { members: vec![0], generators: vec![] }
    }

    pub fn whole(g: &GroupSpec) -> Self {
        Subgroup::generated(g, &(0..g.rank()).map(|k| g.unit(k)).collect::<Vec<_>>())
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, idx: usize) -> bool {
        self.members.binary_search(&idx).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&m| other.contains(m))
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }
}

/// Sorted closure of `gens` under the group product.
pub(crate) fn span(g: &GroupSpec, gens: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; g.order()];
    let mut members = vec![0usize];
    seen[0] = true;
    let mut frontier = 0;
    while frontier < members.len() {
        let x = members[frontier];
        frontier += 1;
        for &s in gens {
            let y = g.mul_idx(x, s);
            if !seen[y] {
                seen[y] = true;
                members.push(y);
            }
        }
    }
    members.sort_unstable();
    members
}

fn weight(g: &GroupSpec, idx: usize) -> usize {
    g.digits(idx)[..g.rank()].iter().filter(|&&d| d != 0).count()
}

/// A basis of `⟨members⟩` modulo `⟨base⟩`, chosen deterministically: the
/// order-`p` generator first (smallest index), then involutions by increasing
/// weight and decreasing index. With this rule `⟨b,c⟩` gets basis `(b, c)`.
fn basis(g: &GroupSpec, members: &[usize], base: &[usize]) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    let mut current = span(g, base);
    let in_span = |cur: &[usize], x: usize| cur.binary_search(&x).is_ok();
    if let Some(p) = g.odd_prime() {
        if let Some(&x) = members
            .iter()
            .find(|&&x| g.order_of_idx(x) == p as usize && !in_span(&current, x))
        {
            chosen.push(x);
            let mut gens = base.to_vec();
            gens.extend(&chosen);
            current = span(g, &gens);
        }
    }
    let mut invols: Vec<usize> = members.iter().copied().filter(|&x| g.order_of_idx(x) == 2).collect();
    invols.sort_by_key(|&x| (weight(g, x), core::cmp::Reverse(x)));
    for x in invols {
        if !in_span(&current, x) {
            chosen.push(x);
            let mut gens = base.to_vec();
            gens.extend(&chosen);
            current = span(g, &gens);
        }
    }
    chosen
}

/// Every subgroup of `g`, sorted by `(order, members)`.
pub fn all_subgroups(g: &GroupSpec) -> Vec<Subgroup> {
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut queue = vec![vec![0usize]];
    found.insert(vec![0]);
    while let Some(h) = queue.pop() {
        for x in 0..g.order() {
            if h.binary_search(&x).is_ok() {
                continue;
            }
            let mut gens = h.clone();
            gens.push(x);
            let s = span(g, &gens);
            if found.insert(s.clone()) {
                queue.push(s);
            }
        }
    }
    let mut out: Vec<Subgroup> = found
        .into_iter()
        .map(|members| {
            let generators = basis(g, &members, &[]);
            Subgroup { members, generators }
        })
        .collect();
    out.sort_by(|a, b| (a.order(), &a.members).cmp(&(b.order(), &b.members)));
    out
}

/// Unordered pairs of proper nontrivial subgroups with trivial intersection
/// that generate `g`; each pair is listed with the smaller subgroup first.
pub fn complementary_pairs(g: &GroupSpec) -> Vec<(Subgroup, Subgroup)> {
    let subs: Vec<Subgroup> = all_subgroups(g)
        .into_iter()
        .filter(|h| !h.is_trivial() && h.order() < g.order())
        .collect();
    let mut out = Vec::new();
    for (i, h1) in subs.iter().enumerate() {
        for h2 in &subs[i + 1..] {
            let meet = h1.members.iter().filter(|&&m| h2.contains(m)).count();
            if meet == 1 && h1.order() * h2.order() == g.order() {
                out.push((h1.clone(), h2.clone()));
            }
        }
    }
    out
}

/// A subgroup presented as a standalone group: `image[q]` is the element of
/// the ambient group named by index `q` of `spec`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    spec: GroupSpec,
    image: Vec<usize>,
    local: Vec<Option<usize>>,
}

impl Embedding {
    pub fn of(g: &GroupSpec, h: &Subgroup) -> Self {
        let b = basis(g, h.members(), &[]);
        let orders: Vec<u32> = b.iter().map(|&x| g.order_of_idx(x) as u32).collect();
        let spec = GroupSpec::from_factors(orders).expect("subgroup of a supported group is supported");
        let image: Vec<usize> = (0..spec.order())
            .map(|q| {
                let d = spec.digits(q);
                b.iter()
                    .enumerate()
                    .fold(0, |acc, (k, &x)| g.mul_idx(acc, g.pow_idx(x, d[k] as u64)))
            })
            .collect();
        let mut local = vec![None; g.order()];
        for (q, &x) in image.iter().enumerate() {
            local[x] = Some(q);
        }
        Embedding { spec, image, local }
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn image(&self, q: usize) -> usize {
        self.image[q]
    }

    pub fn images(&self) -> &[usize] {
        &self.image
    }

    pub fn local(&self, x: usize) -> Option<usize> {
        self.local[x]
    }

    /// Restriction of an ambient character to the subgroup, as a character
    /// index of `spec`.
    pub fn restrict_character(&self, ambient: &GroupSpec, chi: usize) -> usize {
        let logs: Vec<u32> = (0..self.spec.rank())
            .map(|k| {
                let ph = ambient.char_phase(chi, self.image[self.spec.unit(k)]);
                self.spec.log_of_phase(k, ph)
            })
            .collect();
        self.spec.character_from_basis_logs(&logs)
    }
}

/// The quotient `G/N`, realised on a complement of `N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quotient {
    spec: GroupSpec,
    projection: Vec<usize>,
    section: Vec<usize>,
}

impl Quotient {
    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    /// The natural map `π: G → G/N` on indices.
    pub fn project(&self, x: usize) -> usize {
        self.projection[x]
    }

    pub fn projection(&self) -> &[usize] {
        &self.projection
    }

    /// Complement representative of a quotient element.
    pub fn lift(&self, q: usize) -> usize {
        self.section[q]
    }

    /// `π⁻¹(q)`, sorted.
    pub fn fiber(&self, q: usize) -> Vec<usize> {
        (0..self.projection.len()).filter(|&x| self.projection[x] == q).collect()
    }

    /// The character `ψ∘π` of `G` for a character `ψ` of the quotient.
    pub fn inflate_character(&self, ambient: &GroupSpec, psi: usize) -> usize {
        let logs: Vec<u32> = (0..ambient.rank())
            .map(|k| {
                let ph = self.spec.char_phase(psi, self.projection[ambient.unit(k)]);
                ambient.log_of_phase(k, ph)
            })
            .collect();
        ambient.character_from_basis_logs(&logs)
    }
}

impl Quotient {
    /// The character `ψ` of the quotient with `χ = ψ∘π`, when `χ` is trivial
    /// on the kernel.
    pub fn deflate_character(&self, ambient: &GroupSpec, chi: usize) -> Option<usize> {
        let kernel_trivial = (0..self.projection.len())
            .filter(|&x| self.projection[x] == 0)
            .all(|x| ambient.char_phase(chi, x) == Phase { zeta: 0, negative: false });
        if !kernel_trivial {
            return None;
        }
        let logs: Vec<u32> = (0..self.spec.rank())
            .map(|k| {
                let ph = ambient.char_phase(chi, self.section[self.spec.unit(k)]);
                self.spec.log_of_phase(k, ph)
            })
            .collect();
        Some(self.spec.character_from_basis_logs(&logs))
    }
}

pub fn quotient(g: &GroupSpec, n: &Subgroup) -> Quotient {
    let all: Vec<usize> = (0..g.order()).collect();
    let comp = basis(g, &all, n.members());
    let orders: Vec<u32> = comp.iter().map(|&x| g.order_of_idx(x) as u32).collect();
    let spec = GroupSpec::from_factors(orders).expect("quotient of a supported group is supported");
    let section: Vec<usize> = (0..spec.order())
        .map(|q| {
            let d = spec.digits(q);
            comp.iter()
                .enumerate()
                .fold(0, |acc, (k, &x)| g.mul_idx(acc, g.pow_idx(x, d[k] as u64)))
        })
        .collect();
    let mut projection = vec![usize::MAX; g.order()];
    for (q, &c) in section.iter().enumerate() {
        for &m in n.members() {
            projection[g.mul_idx(m, c)] = q;
        }
    }
    debug_assert!(projection.iter().all(|&q| q != usize::MAX));
    Quotient { spec, projection, section }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(v: &[u32]) -> Element {
        Element::new(v.to_vec())
    }

    #[test]
    fn multiplication_is_componentwise() {
        let g = GroupSpec::cp_c2_c2(5).unwrap();
        assert_eq!(g.mul(&e(&[1, 0, 0]), &e(&[0, 1, 0])).unwrap(), e(&[1, 1, 0]));
        assert_eq!(g.mul(&e(&[3, 1, 1]), &e(&[4, 1, 1])).unwrap(), e(&[2, 0, 0]));
        for i in 0..g.order() {
            assert_eq!(g.mul_idx(i, 0), i);
        }
        assert_eq!(
            g.mul(&e(&[1, 0]), &e(&[0, 0, 0])),
            Err(GroupError::ShapeMismatch { expected: 3, found: 2 })
        );
    }

    #[test]
    fn index_is_lexicographic() {
        let g = GroupSpec::cp_c2_c2(3).unwrap();
        let elems: Vec<Element> = (0..g.order()).map(|i| g.element(i)).collect();
        assert!(elems.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(g.index_of(&e(&[2, 1, 1])).unwrap(), 11);
    }

    #[test]
    fn unsupported_shapes_rejected() {
        assert!(GroupSpec::from_factors(vec![9]).is_err());
        assert!(GroupSpec::from_factors(vec![2, 3]).is_err());
        assert!(GroupSpec::from_factors(vec![5, 2, 2, 2]).is_err());
        assert!(GroupSpec::cp(2).is_err());
    }

    #[test]
    fn named_character_values() {
        let g = GroupSpec::cp_c2_c2(5).unwrap();
        let chi = Character::new(vec![1, 0, 0]);
        assert_eq!(g.char_value(&chi, &e(&[1, 0, 0])).unwrap(), CycInt::root_power(5, 1).unwrap());
        let psi_b = Character::new(vec![0, 1, 0]);
        let psi_c = Character::new(vec![0, 0, 1]);
        let psi_bc = Character::new(vec![0, 1, 1]);
        let (b, c, bc) = (e(&[0, 1, 0]), e(&[0, 0, 1]), e(&[0, 1, 1]));
        let one = CycInt::from_integer(5, 1).unwrap();
        let minus = CycInt::from_integer(5, -1).unwrap();
        for (psi, x) in [(&psi_b, &b), (&psi_c, &c), (&psi_bc, &bc)] {
            for y in [&b, &c, &bc] {
                let want = if x == y { &one } else { &minus };
                assert_eq!(&g.char_value(psi, y).unwrap(), want);
            }
            assert_eq!(g.char_value(psi, &e(&[1, 0, 0])).unwrap(), one);
        }
        let triv = Character::new(vec![0, 0, 0]);
        for i in 0..g.order() {
            assert_eq!(g.char_value(&triv, &g.element(i)).unwrap(), one);
        }
    }

    #[test]
    fn character_orthogonality() {
        for g in [
            GroupSpec::cp_c2_c2(3).unwrap(),
            GroupSpec::cp_c2_c2(5).unwrap(),
            GroupSpec::c2_cubed(),
            GroupSpec::cp_c2(7).unwrap(),
        ] {
            let n = g.order();
            let p = g.ring_modulus();
            for x in 0..n {
                for y in 0..n {
                    let mut acc = CycInt::zero(p).unwrap();
                    for h in 0..n {
                        acc = &acc + &(&g.char_value_idx(x, h) * &g.char_value_idx(y, h).conj());
                    }
                    let want = if x == y { n as i64 } else { 0 };
                    assert_eq!(acc.is_rational_integer(), Some(want));
                }
            }
        }
    }

    #[test]
    fn subgroup_counts() {
        assert_eq!(all_subgroups(&GroupSpec::cp_c2_c2(5).unwrap()).len(), 10);
        assert_eq!(all_subgroups(&GroupSpec::klein()).len(), 5);
        assert_eq!(all_subgroups(&GroupSpec::cp(7).unwrap()).len(), 2);
    }

    #[test]
    fn subgroup_lattice_of_c2_cubed_matches_subset_scan() {
        // Independent oracle: every subset of the 8 elements closed under product.
        let g = GroupSpec::c2_cubed();
        let closed = (0u32..256)
            .filter(|&mask| {
                mask & 1 == 1
                    && (0..8).all(|x| {
                        (0..8).all(|y| {
                            mask >> x & 1 == 0 || mask >> y & 1 == 0 || mask >> g.mul_idx(x, y) & 1 == 1
                        })
                    })
            })
            .count();
        assert_eq!(closed, 16);
        assert_eq!(all_subgroups(&g).len(), closed);
    }

    #[test]
    fn subgroups_are_closed() {
        let g = GroupSpec::cp_c2_c2(3).unwrap();
        for h in all_subgroups(&g) {
            for &x in h.members() {
                for &y in h.members() {
                    assert!(h.contains(g.mul_idx(x, y)));
                }
                assert!(h.contains(g.inv_idx(x)));
            }
        }
    }

    #[test]
    fn complementary_pairs_of_cp_c2_c2() {
        let g = GroupSpec::cp_c2_c2(5).unwrap();
        let pairs = complementary_pairs(&g);
        let a = Subgroup::generated(&g, &[g.unit(0)]);
        let klein = Subgroup::generated(&g, &[g.unit(1), g.unit(2)]);
        assert!(pairs.contains(&(klein, a)));
        let c2_cp2 = pairs.iter().filter(|(h1, h2)| h1.order() == 2 && h2.order() == 10).count();
        assert_eq!(c2_cp2, 6);
        assert_eq!(pairs.len(), 7);
        assert!(complementary_pairs(&GroupSpec::cp(7).unwrap()).is_empty());
    }

    #[test]
    fn quotients() {
        let g = GroupSpec::cp_c2_c2(5).unwrap();
        let a = Subgroup::generated(&g, &[g.unit(0)]);
        let q = quotient(&g, &a);
        assert_eq!(q.spec(), &GroupSpec::klein());
        assert_eq!(q.project(0), 0);
        let ab = Subgroup::generated(&g, &[g.unit(0), g.unit(1)]);
        assert_eq!(quotient(&g, &ab).spec(), &GroupSpec::c2());
        let c3 = GroupSpec::c2_cubed();
        let x = Subgroup::generated(&c3, &[c3.unit(0)]);
        assert_eq!(quotient(&c3, &x).spec(), &GroupSpec::klein());
        // π is a homomorphism.
        for i in 0..g.order() {
            for j in 0..g.order() {
                assert_eq!(q.project(g.mul_idx(i, j)), q.spec().mul_idx(q.project(i), q.project(j)));
            }
        }
    }

    #[test]
    fn embedding_basis_follows_generator_order() {
        let g = GroupSpec::cp_c2_c2(3).unwrap();
        let klein = Subgroup::generated(&g, &[g.unit(1), g.unit(2)]);
        assert_eq!(klein.generators(), &[g.unit(1), g.unit(2)]);
        let emb = Embedding::of(&g, &klein);
        assert_eq!(emb.spec(), &GroupSpec::klein());
        assert_eq!(emb.image(1), g.unit(2));
        assert_eq!(emb.image(2), g.unit(1));
        for q in 0..4 {
            assert_eq!(emb.local(emb.image(q)), Some(q));
        }
    }

    #[test]
    fn restriction_and_inflation_of_characters() {
        let g = GroupSpec::cp_c2_c2(5).unwrap();
        let ab = Subgroup::generated(&g, &[g.unit(0), g.unit(1)]);
        let emb = Embedding::of(&g, &ab);
        for chi in 0..g.order() {
            let r = emb.restrict_character(&g, chi);
            for q in 0..emb.spec().order() {
                assert_eq!(emb.spec().char_value_idx(r, q), g.char_value_idx(chi, emb.image(q)));
            }
        }
        let q = quotient(&g, &ab);
        for psi in 0..q.spec().order() {
            let chi = q.inflate_character(&g, psi);
            for x in 0..g.order() {
                assert_eq!(
                    g.char_value_idx(chi, x).is_rational_integer(),
                    q.spec().char_value_idx(psi, q.project(x)).is_rational_integer()
                );
            }
        }
    }

    #[test]
    fn annihilator_sizes() {
        let g = GroupSpec::cp_c2_c2(3).unwrap();
        for h in all_subgroups(&g) {
            assert_eq!(g.annihilator(h.members()).len() * h.order(), g.order());
        }
    }
}

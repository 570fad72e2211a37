//! Automorphisms and subgroups of the automorphism group.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use super::{GroupError, GroupSpec};

/// An automorphism, given by the images of the basis vectors `e_0, e_1, …`.
///
/// The full element table and the induced permutation of characters,
/// `(α·χ)(g) = χ(α⁻¹(g))`, are computed on construction.
#[derive(Debug, Clone)]
pub struct AutMap {
    images: Vec<usize>,
    table: Vec<usize>,
    dual: Vec<usize>,
}

impl PartialEq for AutMap {
    fn eq(&self, other: &Self) -> bool {
        self.images == other.images
    }
}

impl Eq for AutMap {}

impl PartialOrd for AutMap {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for AutMap {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        self.images.cmp(&other.images)
    }
}

fn table_from_images(g: &GroupSpec, images: &[usize]) -> Vec<usize> {
    (0..g.order())
        .map(|x| {
            let d = g.digits(x);
            images
                .iter()
                .enumerate()
                .fold(0, |acc, (k, &y)| g.mul_idx(acc, g.pow_idx(y, d[k] as u64)))
        })
        .collect()
}

impl AutMap {
    pub fn new(g: &GroupSpec, images: Vec<usize>) -> Result<Self, GroupError> {
        if images.len() != g.rank() {
            return Err(GroupError::ShapeMismatch { expected: g.rank(), found: images.len() });
        }
        for (k, &y) in images.iter().enumerate() {
            if y >= g.order() || g.order_of_idx(y) != g.factors()[k] as usize {
                return Err(GroupError::NotAnAutomorphism);
            }
        }
        let table = table_from_images(g, &images);
        let mut hit = vec![false; g.order()];
        for &y in &table {
            if core::mem::replace(&mut hit[y], true) {
                return Err(GroupError::NotAnAutomorphism);
            }
        }
        Ok(Self::finish(g, images, table))
    }

    fn finish(g: &GroupSpec, images: Vec<usize>, table: Vec<usize>) -> Self {
        let mut inverse = vec![0; g.order()];
        for (x, &y) in table.iter().enumerate() {
            inverse[y] = x;
        }
        let pre: Vec<usize> = (0..g.rank()).map(|k| inverse[g.unit(k)]).collect();
        let dual = (0..g.order())
            .map(|chi| {
                let logs: Vec<u32> = (0..g.rank())
                    .map(|k| g.log_of_phase(k, g.char_phase(chi, pre[k])))
                    .collect();
                g.character_from_basis_logs(&logs)
            })
            .collect();
        AutMap { images, table, dual }
    }

    pub fn identity(g: &GroupSpec) -> Self {
        let images = (0..g.rank()).map(|k| g.unit(k)).collect();
        let table = (0..g.order()).collect();
        Self::finish(g, images, table)
    }

    /// The automorphism `a ↦ a^exponent` combined with a permutation of the
    /// three involutions `[b, c, bc]` (only for `C_p × C_2 × C_2`), or the
    /// power map alone for `C_p` and `C_p × C_2`.
    pub fn power_and_klein(g: &GroupSpec, exponent: u32, klein: KleinPerm) -> Result<Self, GroupError> {
        let p = g.odd_prime().ok_or(GroupError::GroupMismatch)?;
        let mut images = vec![g.pow_idx(g.unit(0), exponent as u64 % p as u64)];
        match g.rank() {
            1 => {}
            2 => images.push(g.unit(1)),
            3 => {
                let invols = [g.unit(1), g.unit(2), g.mul_idx(g.unit(1), g.unit(2))];
                images.push(invols[klein.0[0] as usize]);
                images.push(invols[klein.0[1] as usize]);
            }
            _ => return Err(GroupError::GroupMismatch),
        }
        AutMap::new(g, images)
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }

    pub fn apply_character(&self, chi: usize) -> usize {
        self.dual[chi]
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn dual_table(&self) -> &[usize] {
        &self.dual
    }

    pub fn is_identity(&self) -> bool {
        self.table.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `self ∘ other`.
    pub fn compose(&self, g: &GroupSpec, other: &AutMap) -> AutMap {
        let images = other.images.iter().map(|&y| self.table[y]).collect();
        let table = other.table.iter().map(|&y| self.table[y]).collect();
        Self::finish(g, images, table)
    }

    pub fn inverse(&self, g: &GroupSpec) -> AutMap {
        let mut table = vec![0; g.order()];
        for (x, &y) in self.table.iter().enumerate() {
            table[y] = x;
        }
        let images = (0..g.rank()).map(|k| table[g.unit(k)]).collect();
        Self::finish(g, images, table)
    }

    pub fn belongs_to(&self, g: &GroupSpec) -> bool {
        self.table.len() == g.order() && self.images.len() == g.rank()
    }
}

/// A permutation of the involutions `[b, c, bc]` of `C_2 × C_2`: entry `i`
/// is the index of the image of involution `i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct KleinPerm(pub [u8; 3]);

impl KleinPerm {
    pub const IDENTITY: KleinPerm = KleinPerm([0, 1, 2]);

    pub fn all() -> [KleinPerm; 6] {
        [
            KleinPerm([0, 1, 2]),
            KleinPerm([0, 2, 1]),
            KleinPerm([1, 0, 2]),
            KleinPerm([1, 2, 0]),
            KleinPerm([2, 0, 1]),
            KleinPerm([2, 1, 0]),
        ]
    }

    /// `self ∘ other`.
    pub fn then_after(self, other: KleinPerm) -> KleinPerm {
        KleinPerm([
            self.0[other.0[0] as usize],
            self.0[other.0[1] as usize],
            self.0[other.0[2] as usize],
        ])
    }
}

/// Smallest primitive root modulo the odd prime `p`.
pub fn primitive_root(p: u32) -> u32 {
    let n = p - 1;
    let mut prime_divisors = Vec::new();
    let mut m = n;
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            prime_divisors.push(d);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        prime_divisors.push(m);
    }
    (2..p)
        .find(|&g| prime_divisors.iter().all(|&q| mod_pow(g, n / q, p) != 1))
        .unwrap_or(1)
}

pub(crate) fn mod_pow(base: u32, mut exp: u32, m: u32) -> u32 {
    let (mut acc, mut b) = (1u64, base as u64 % m as u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m as u64;
        }
        b = b * b % m as u64;
        exp >>= 1;
    }
    acc as u32
}

/// Every automorphism of `g`, sorted by generator images.
pub fn aut_group(g: &GroupSpec) -> Vec<AutMap> {
    let candidates: Vec<Vec<usize>> = (0..g.rank())
        .map(|k| {
            (0..g.order())
                .filter(|&y| g.order_of_idx(y) == g.factors()[k] as usize)
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut pick = vec![0usize; g.rank()];
    loop {
        let images: Vec<usize> = pick.iter().enumerate().map(|(k, &i)| candidates[k][i]).collect();
        if let Ok(a) = AutMap::new(g, images) {
            out.push(a);
        }
        let mut k = g.rank();
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            pick[k] += 1;
            if pick[k] < candidates[k].len() {
                break;
            }
            pick[k] = 0;
        }
    }
}

/// A subgroup of `Aut(G)` together with a generating set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutSubgroup {
    pub elements: Vec<AutMap>,
    pub generators: Vec<AutMap>,
}

impl AutSubgroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    fn key(&self) -> Vec<Vec<usize>> {
        self.elements.iter().map(|a| a.images.clone()).collect()
    }
}

/// Closure of `gens` inside `Aut(g)`, returned as sorted image vectors.
fn close_images(g: &GroupSpec, gens: &[&AutMap]) -> BTreeSet<Vec<usize>> {
    let start: Vec<usize> = (0..g.rank()).map(|k| g.unit(k)).collect();
    let mut seen = BTreeSet::new();
    seen.insert(start.clone());
    let mut queue = vec![start];
    while let Some(cur) = queue.pop() {
        for s in gens {
            let next: Vec<usize> = cur.iter().map(|&y| s.table[y]).collect();
            if seen.insert(next.clone()) {
                queue.push(next);
            }
        }
    }
    seen
}

fn materialize(g: &GroupSpec, image_sets: BTreeSet<Vec<usize>>, generators: Vec<AutMap>) -> AutSubgroup {
    let elements = image_sets
        .into_iter()
        .map(|images| {
            let table = table_from_images(g, &images);
            AutMap::finish(g, images, table)
        })
        .collect();
    AutSubgroup { elements, generators }
}

/// The subgroup of `Aut(g)` generated by `gens`.
pub fn generated_subgroup(g: &GroupSpec, gens: &[AutMap]) -> AutSubgroup {
    let refs: Vec<&AutMap> = gens.iter().collect();
    materialize(g, close_images(g, &refs), gens.to_vec())
}

/// All subgroups of the group formed by `auts`, found by repeatedly adjoining
/// one element to an already-found subgroup. Sorted by `(order, elements)`.
pub fn subgroups_by_closure(g: &GroupSpec, auts: &[AutMap]) -> Vec<AutSubgroup> {
    let mut found: BTreeMap<BTreeSet<Vec<usize>>, Vec<usize>> = BTreeMap::new();
    let mut queue: Vec<(BTreeSet<Vec<usize>>, Vec<usize>)> = Vec::new();
    let trivial = close_images(g, &[]);
    found.insert(trivial.clone(), vec![]);
    queue.push((trivial, vec![]));
    while let Some((set, gens)) = queue.pop() {
        for (i, a) in auts.iter().enumerate() {
            if set.contains(&a.images) {
                continue;
            }
            let mut ng = gens.clone();
            ng.push(i);
            let refs: Vec<&AutMap> = ng.iter().map(|&j| &auts[j]).collect();
            let closed = close_images(g, &refs);
            if !found.contains_key(&closed) {
                found.insert(closed.clone(), ng.clone());
                queue.push((closed, ng));
            }
        }
    }
    let mut out: Vec<AutSubgroup> = found
        .into_iter()
        .map(|(set, gens)| materialize(g, set, gens.iter().map(|&j| auts[j].clone()).collect()))
        .collect();
    out.sort_by_key(|a| (a.order(), a.key()));
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GoursatCase {
    /// `H₁/N₁` trivial: a direct product `H₁ × H₂`.
    Trivial,
    /// `H₁/N₁ ≅ H₂/N₂ ≅ C_2`.
    Order2,
    /// `H₁/N₁ ≅ H₂/N₂ ≅ C_3`.
    Order3,
}

/// A subgroup of `Aut(C_p) × Aut(C_2 × C_2) ≅ C_{p-1} × S_3` described by
/// its Goursat data. `Aut(C_p) = ⟨ψ⟩` with `ψ(a) = a^r` for the smallest
/// primitive root `r`.
#[derive(Debug, Clone)]
pub struct GoursatSubgroup {
    pub case: GoursatCase,
    /// `H₁ = ⟨ψ^h1_step⟩`.
    pub h1_step: u32,
    /// `N₁ = ⟨ψ^(h1_step · quotient_order)⟩`.
    pub quotient_order: u32,
    pub h2: Vec<KleinPerm>,
    pub n2: Vec<KleinPerm>,
    /// Image of the generator `ψ^h1_step·N₁` under the Goursat isomorphism,
    /// as a coset of `N₂` (sorted).
    pub phi_coset: Vec<KleinPerm>,
    pub subgroup: AutSubgroup,
}

fn s3_subgroups() -> Vec<Vec<KleinPerm>> {
    let all = KleinPerm::all();
    let mut found: BTreeSet<Vec<KleinPerm>> = BTreeSet::new();
    for mask in 0u32..64 {
        let mut set: BTreeSet<KleinPerm> = BTreeSet::new();
        set.insert(KleinPerm::IDENTITY);
        for (i, &s) in all.iter().enumerate() {
            if mask >> i & 1 == 1 {
                set.insert(s);
            }
        }
        loop {
            let cur: Vec<KleinPerm> = set.iter().copied().collect();
            let before = set.len();
            for &x in &cur {
                for &y in &cur {
                    set.insert(x.then_after(y));
                }
            }
            if set.len() == before {
                break;
            }
        }
        found.insert(set.into_iter().collect());
    }
    let mut out: Vec<Vec<KleinPerm>> = found.into_iter().collect();
    out.sort_by_key(|s| (s.len(), s.clone()));
    out
}

fn perm_inverse(s: KleinPerm) -> KleinPerm {
    let mut inv = [0u8; 3];
    for i in 0..3 {
        inv[s.0[i] as usize] = i as u8;
    }
    KleinPerm(inv)
}

fn divisors(n: u32) -> Vec<u32> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// All subgroups of `Aut(C_p × C_2 × C_2)` via Goursat's lemma.
pub fn goursat_subgroups(g: &GroupSpec) -> Result<Vec<GoursatSubgroup>, GroupError> {
    let p = match (g.odd_prime(), g.rank()) {
        (Some(p), 3) => p,
        _ => return Err(GroupError::GroupMismatch),
    };
    let root = primitive_root(p);
    let n = p - 1;
    let power = |t: u32| mod_pow(root, t % n, p);
    let s3 = s3_subgroups();
    let mut out = Vec::new();
    for h2 in &s3 {
        for n2 in &s3 {
            let normal = n2.iter().all(|x| h2.contains(x))
                && h2.iter().all(|&h| {
                    n2.iter()
                        .all(|&x| n2.contains(&h.then_after(x).then_after(perm_inverse(h))))
                });
            if !normal {
                continue;
            }
            let q = (h2.len() / n2.len()) as u32;
            // Cosets of N₂ in H₂ generating a cyclic quotient of order q.
            let mut gen_cosets: BTreeSet<Vec<KleinPerm>> = BTreeSet::new();
            for &y in h2 {
                let mut pw = KleinPerm::IDENTITY;
                let mut ord = 0;
                for d in 1..=6u32 {
                    pw = pw.then_after(y);
                    if n2.contains(&pw) {
                        ord = d;
                        break;
                    }
                }
                if ord == q {
                    let mut coset: Vec<KleinPerm> = n2.iter().map(|&x| y.then_after(x)).collect();
                    coset.sort();
                    gen_cosets.insert(coset);
                }
            }
            let case = match q {
                1 => GoursatCase::Trivial,
                2 => GoursatCase::Order2,
                3 => GoursatCase::Order3,
                _ => continue,
            };
            for m in divisors(n) {
                if (n / m) % q != 0 {
                    continue;
                }
                for coset in &gen_cosets {
                    let mut gens = vec![
                        AutMap::power_and_klein(g, power(m * q), KleinPerm::IDENTITY)?,
                        AutMap::power_and_klein(g, power(m), coset[0])?,
                    ];
                    for &x in n2 {
                        gens.push(AutMap::power_and_klein(g, 1, x)?);
                    }
                    gens.retain(|a| !a.is_identity());
                    gens.sort();
                    gens.dedup();
                    out.push(GoursatSubgroup {
                        case,
                        h1_step: m,
                        quotient_order: q,
                        h2: h2.clone(),
                        n2: n2.clone(),
                        phi_coset: coset.clone(),
                        subgroup: generated_subgroup(g, &gens),
                    });
                }
            }
        }
    }
    Ok(out)
}

/// All subgroups of `Aut(g)`: by the Goursat parameterisation for
/// `C_p × C_2 × C_2` and by closure enumeration otherwise.
pub fn subgroups_of_aut(g: &GroupSpec) -> Vec<AutSubgroup> {
    match goursat_subgroups(g) {
        Ok(list) => {
            let mut seen = BTreeSet::new();
            let mut out: Vec<AutSubgroup> = list
                .into_iter()
                .map(|gs| gs.subgroup)
                .filter(|s| seen.insert(s.key()))
                .collect();
            out.sort_by_key(|a| (a.order(), a.key()));
            out
        }
        Err(_) => subgroups_by_closure(g, &aut_group(g)),
    }
}

//! Constructive enumeration with deduplication and construction tags, plus
//! the closed-form counts for `C_p × C_2 × C_2`.

use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::construct::{
    direct_product, direct_product_classes, from_aut_subgroup, wedge, wedge_classes, ConstructError, WedgeSpec,
};
use crate::cyclo::is_odd_prime;
use crate::group::{all_subgroups, complementary_pairs, quotient, subgroups_of_aut, AutMap, Embedding, Family, GroupSpec, Subgroup};
use crate::oracle::{brute_force_enumerate, OracleError, OracleOptions};
use crate::partition::Partition;
use crate::theory::{canonical_key, classes_key, Theory, TheoryKey};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tag {
    Minimal,
    Maximal,
    Automorphic,
    Direct,
    Wedge,
}

impl Tag {
    pub const ALL: [Tag; 5] = [Tag::Minimal, Tag::Maximal, Tag::Automorphic, Tag::Direct, Tag::Wedge];

    pub fn name(self) -> &'static str {
        match self {
            Tag::Minimal => "minimal",
            Tag::Maximal => "maximal",
            Tag::Automorphic => "automorphic",
            Tag::Direct => "direct",
            Tag::Wedge => "wedge",
        }
    }

    pub fn from_name(s: &str) -> Option<Tag> {
        Tag::ALL.into_iter().find(|t| t.name() == s)
    }
}

/// How one construction produced a theory.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    Minimal,
    Maximal,
    Aut { generators: Vec<AutMap> },
    Direct { pair: (Subgroup, Subgroup), factors: (TheoryKey, TheoryKey) },
    Wedge { n: Subgroup, inner: TheoryKey, outer: TheoryKey },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoryRecord {
    pub theory: Theory,
    pub tags: BTreeSet<Tag>,
    pub provenance: Vec<Provenance>,
}

impl TheoryRecord {
    pub fn key(&self) -> TheoryKey {
        canonical_key(&self.theory)
    }

    pub fn has(&self, tag: Tag) -> bool {
        self.tags.contains(&tag)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EnumError {
    ZeroArgument,
    NotOddPrime(u32),
    /// Wrong family for the requested entry point.
    WrongFamily(Family),
    Construct(ConstructError),
    Oracle(OracleError),
    /// Enumerated counts disagree with the closed forms. `keys` lists the
    /// records carrying a tag whose count is off.
    CountMismatch { report: Box<CountReport>, fields: Vec<&'static str>, keys: Vec<TheoryKey> },
    /// Enumerated theories disagree with an independent reference set.
    SetMismatch { expected: usize, found: usize, missing: Vec<TheoryKey>, extra: Vec<TheoryKey> },
}

impl fmt::Display for EnumError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EnumError::ZeroArgument => f.write_str("divisor count of 0 is undefined"),
            EnumError::NotOddPrime(p) => write!(f, "{p} is not an odd prime"),
            EnumError::WrongFamily(fam) => write!(f, "group family {} not valid here", fam.name()),
            EnumError::Construct(e) => write!(f, "{e}"),
            EnumError::Oracle(e) => write!(f, "{e}"),
            EnumError::CountMismatch { report, fields, .. } => {
                write!(f, "count mismatch at p={} in {}", report.p, fields.join(", "))
            }
            EnumError::SetMismatch { expected, found, missing, extra } => write!(
                f,
                "expected {expected} theories, found {found} ({} missing, {} extra)",
                missing.len(),
                extra.len()
            ),
        }
    }
}

impl core::error::Error for EnumError {}

impl From<ConstructError> for EnumError {
    fn from(e: ConstructError) -> Self {
        EnumError::Construct(e)
    }
}

impl From<OracleError> for EnumError {
    fn from(e: OracleError) -> Self {
        EnumError::Oracle(e)
    }
}

pub fn divisor_count(n: u64) -> Result<u64, EnumError> {
    if n == 0 {
        return Err(EnumError::ZeroArgument);
    }
    let mut count = 0;
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            count += if d * d == n { 1 } else { 2 };
        }
        d += 1;
    }
    Ok(count)
}

/// `p - 1 = 2^k · 3^l · n` with `gcd(n, 6) = 1`.
pub fn factor_pm1(p: u32) -> Result<(u32, u32, u64), EnumError> {
    if !is_odd_prime(p) {
        return Err(EnumError::NotOddPrime(p));
    }
    let mut n = p as u64 - 1;
    let (mut k, mut l) = (0, 0);
    while n.is_multiple_of(2) {
        n /= 2;
        k += 1;
    }
    while n.is_multiple_of(3) {
        n /= 3;
        l += 1;
    }
    Ok((k, l, n))
}

/// Per-category tallies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Counts {
    pub total: u64,
    pub automorphic: u64,
    pub direct: u64,
    /// Direct and automorphic at once.
    pub overlap: u64,
    pub wedge: u64,
    pub maximal: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountReport {
    pub p: u32,
    pub k: u32,
    pub l: u32,
    pub n: u64,
    pub actual: Counts,
    pub predicted: Counts,
}

impl CountReport {
    /// Names of the fields where the enumeration disagrees with the formulas.
    pub fn mismatches(&self) -> Vec<&'static str> {
        let (a, b) = (&self.actual, &self.predicted);
        [
            ("total", a.total == b.total),
            ("automorphic", a.automorphic == b.automorphic),
            ("direct", a.direct == b.direct),
            ("overlap", a.overlap == b.overlap),
            ("wedge", a.wedge == b.wedge),
            ("maximal", a.maximal == b.maximal),
        ]
        .into_iter()
        .filter(|(_, ok)| !ok)
        .map(|(name, _)| name)
        .collect()
    }
}

/// The closed-form counts for `C_p × C_2 × C_2`.
pub fn predicted_counts(p: u32) -> Result<Counts, EnumError> {
    let (k, l, n) = factor_pm1(p)?;
    let d = |m: u64| divisor_count(m);
    let dp = d(p as u64 - 1)?;
    let three_l_n = 3u64.pow(l) * n;
    let two_k_n = 2u64.pow(k) * n;
    let mixed = 3 * k as u64 * d(three_l_n)? + 2 * l as u64 * d(two_k_n)?;
    Ok(Counts {
        total: mixed + 30 * dp + 13,
        automorphic: mixed + 5 * dp,
        direct: 11 * dp + 6,
        overlap: 5 * dp,
        wedge: 19 * dp + 6,
        maximal: 1,
    })
}

pub fn tally(records: &[TheoryRecord]) -> Counts {
    let count = |f: &dyn Fn(&TheoryRecord) -> bool| records.iter().filter(|r| f(r)).count() as u64;
    Counts {
        total: records.len() as u64,
        automorphic: count(&|r| r.has(Tag::Automorphic)),
        direct: count(&|r| r.has(Tag::Direct)),
        overlap: count(&|r| r.has(Tag::Automorphic) && r.has(Tag::Direct)),
        wedge: count(&|r| r.has(Tag::Wedge)),
        maximal: count(&|r| r.has(Tag::Maximal)),
    }
}

/// Accumulates candidates keyed by class partition.
struct Collector {
    group: GroupSpec,
    records: BTreeMap<TheoryKey, TheoryRecord>,
}

impl Collector {
    /// Adds `classes` under `tag`; `build` is only run for unseen classes.
    fn offer(
        &mut self,
        classes: Partition,
        tag: Tag,
        prov: Provenance,
        build: impl FnOnce() -> Result<Theory, EnumError>,
    ) -> Result<(), EnumError> {
        let key = classes_key(&self.group, &classes);
        if let Some(r) = self.records.get_mut(&key) {
            r.tags.insert(tag);
            r.provenance.push(prov);
            return Ok(());
        }
        let theory = build()?;
        let mut tags = BTreeSet::new();
        tags.insert(tag);
        if theory.is_minimal() {
            tags.insert(Tag::Minimal);
        }
        if theory.is_maximal() {
            tags.insert(Tag::Maximal);
        }
        self.records.insert(key, TheoryRecord { theory, tags, provenance: alloc::vec![prov] });
        Ok(())
    }

    fn finish(self) -> Vec<TheoryRecord> {
        let mut out: Vec<(usize, TheoryKey, TheoryRecord)> =
            self.records.into_iter().map(|(k, r)| (r.theory.dimension(), k, r)).collect();
        out.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
        out.into_iter().map(|(_, _, r)| r).collect()
    }
}

/// Memoised constructive enumeration. Factor and quotient groups are
/// enumerated once per shape and shared.
#[derive(Default)]
pub struct Enumerator {
    cache: BTreeMap<GroupSpec, Arc<Vec<TheoryRecord>>>,
}

impl Enumerator {
    pub fn new() -> Self {
        Enumerator::default()
    }

    /// All theories of `g` that the constructions reach, in canonical order.
    pub fn theories(&mut self, g: &GroupSpec) -> Result<Arc<Vec<TheoryRecord>>, EnumError> {
        if let Some(r) = self.cache.get(g) {
            return Ok(r.clone());
        }
        let records = Arc::new(self.build(g)?);
        self.cache.insert(g.clone(), records.clone());
        Ok(records)
    }

    fn build(&mut self, g: &GroupSpec) -> Result<Vec<TheoryRecord>, EnumError> {
        let mut acc = Collector { group: g.clone(), records: BTreeMap::new() };

        let minimal = Theory::minimal(g);
        acc.offer(minimal.classes().clone(), Tag::Minimal, Provenance::Minimal, || Ok(minimal.clone()))?;

        // (C_2)^3 is handled without its automorphism group.
        if g.family() != Family::C2Cubed {
            for h in subgroups_of_aut(g) {
                let t = from_aut_subgroup(g, &h)?;
                let prov = Provenance::Aut { generators: h.generators.clone() };
                acc.offer(t.classes().clone(), Tag::Automorphic, prov, || Ok(t.clone()))?;
            }
        }

        for (h1, h2) in complementary_pairs(g) {
            let l1 = self.theories(Embedding::of(g, &h1).spec())?;
            let l2 = self.theories(Embedding::of(g, &h2).spec())?;
            for r1 in l1.iter() {
                for r2 in l2.iter() {
                    let (t1, t2) = (&r1.theory, &r2.theory);
                    let classes = direct_product_classes(g, (&h1, t1), (&h2, t2))?;
                    let prov = Provenance::Direct {
                        pair: (h1.clone(), h2.clone()),
                        factors: (canonical_key(t1), canonical_key(t2)),
                    };
                    acc.offer(classes, Tag::Direct, prov, || Ok(direct_product(g, (&h1, t1), (&h2, t2))?))?;
                }
            }
        }

        for n in all_subgroups(g) {
            if n.is_trivial() || n.order() == g.order() {
                continue;
            }
            let inner = self.theories(Embedding::of(g, &n).spec())?;
            let outer = self.theories(quotient(g, &n).spec())?;
            for ri in inner.iter() {
                for ro in outer.iter() {
                    let spec = WedgeSpec { n: n.clone(), inner: ri.theory.clone(), outer: ro.theory.clone() };
                    let classes = wedge_classes(g, &spec)?;
                    let prov = Provenance::Wedge {
                        n: n.clone(),
                        inner: canonical_key(&ri.theory),
                        outer: canonical_key(&ro.theory),
                    };
                    acc.offer(classes, Tag::Wedge, prov, || Ok(wedge(g, &spec)?))?;
                }
            }
        }

        let maximal = Theory::maximal(g);
        acc.offer(maximal.classes().clone(), Tag::Maximal, Provenance::Maximal, || Ok(maximal.clone()))?;

        Ok(acc.finish())
    }
}

/// Constructive enumeration of any supported group.
pub fn enumerate(g: &GroupSpec) -> Result<Vec<TheoryRecord>, EnumError> {
    Ok(Enumerator::new().theories(g)?.as_ref().clone())
}

fn expect_count(records: Vec<TheoryRecord>, expected: u64) -> Result<Vec<TheoryRecord>, EnumError> {
    if records.len() as u64 == expected {
        Ok(records)
    } else {
        Err(EnumError::SetMismatch {
            expected: expected as usize,
            found: records.len(),
            missing: Vec::new(),
            extra: Vec::new(),
        })
    }
}

pub fn all_scts_cp(p: u32) -> Result<Vec<TheoryRecord>, EnumError> {
    let g = GroupSpec::cp(p).map_err(|_| EnumError::NotOddPrime(p))?;
    expect_count(enumerate(&g)?, divisor_count(p as u64 - 1)?)
}

pub fn all_scts_klein() -> Result<Vec<TheoryRecord>, EnumError> {
    expect_count(enumerate(&GroupSpec::klein())?, 5)
}

pub fn all_scts_cp_c2(p: u32) -> Result<Vec<TheoryRecord>, EnumError> {
    let g = GroupSpec::cp_c2(p).map_err(|_| EnumError::NotOddPrime(p))?;
    expect_count(enumerate(&g)?, 3 * divisor_count(p as u64 - 1)? + 1)
}

/// Enumeration of `C_p × C_2 × C_2` with its count report; fails hard when
/// any category count differs from the closed forms.
pub fn all_scts_cp_c2_c2(p: u32) -> Result<(Vec<TheoryRecord>, CountReport), EnumError> {
    let g = GroupSpec::cp_c2_c2(p).map_err(|_| EnumError::NotOddPrime(p))?;
    let records = enumerate(&g)?;
    let report = count_report(p, &records)?;
    let fields = report.mismatches();
    if !fields.is_empty() {
        let keys = records
            .iter()
            .filter(|r| {
                fields.iter().any(|f| match *f {
                    "total" => true,
                    "automorphic" => r.has(Tag::Automorphic),
                    "direct" => r.has(Tag::Direct),
                    "overlap" => r.has(Tag::Automorphic) && r.has(Tag::Direct),
                    "wedge" => r.has(Tag::Wedge),
                    _ => r.has(Tag::Maximal),
                })
            })
            .map(TheoryRecord::key)
            .collect();
        return Err(EnumError::CountMismatch { report: Box::new(report), fields, keys });
    }
    Ok((records, report))
}

pub fn count_report(p: u32, records: &[TheoryRecord]) -> Result<CountReport, EnumError> {
    let (k, l, n) = factor_pm1(p)?;
    Ok(CountReport { p, k, l, n, actual: tally(records), predicted: predicted_counts(p)? })
}

/// Enumeration of `(C_2)^3`, checked for set equality against the oracle.
pub fn all_scts_c2_cubed() -> Result<Vec<TheoryRecord>, EnumError> {
    let g = GroupSpec::c2_cubed();
    let records = enumerate(&g)?;
    let oracle = brute_force_enumerate(&g, &OracleOptions::default())?;
    compare_keys(&records, &oracle)?;
    Ok(records)
}

/// Set comparison of an enumeration with a reference list of theories.
pub fn compare_keys(records: &[TheoryRecord], reference: &[Theory]) -> Result<(), EnumError> {
    let found: BTreeSet<TheoryKey> = records.iter().map(TheoryRecord::key).collect();
    let expected: BTreeSet<TheoryKey> = reference.iter().map(canonical_key).collect();
    if found == expected {
        return Ok(());
    }
    Err(EnumError::SetMismatch {
        expected: expected.len(),
        found: found.len(),
        missing: expected.difference(&found).cloned().collect(),
        extra: found.difference(&expected).cloned().collect(),
    })
}

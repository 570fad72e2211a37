//! JSON and JSONL encodings of groups, theory records and count reports.
//!
//! Elements and characters are exponent vectors with one entry per cyclic
//! factor, so `[i, j, k]` on `C_p × C_2 × C_2`.

use std::collections::BTreeSet;
use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};
use superchar_core::enumerate::{CountReport, Counts, Provenance, Tag, TheoryRecord};
use superchar_core::group::{AutMap, Element, Family, GroupSpec, Subgroup};
use superchar_core::partition::Partition;
use superchar_core::theory::{Theory, TheoryKey};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: malformed JSON: {source}")]
    Json {
        line: usize,
        #[source]
        source: serde_json::Error,
    },
    #[error("line {line}: {message}")]
    Invalid { line: usize, message: String },
    #[error("read failed: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupJson {
    pub family: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u32>,
}

impl GroupJson {
    pub fn from_spec(g: &GroupSpec) -> Self {
        GroupJson { family: g.family().name().to_string(), p: g.odd_prime() }
    }

    pub fn to_spec(&self) -> Result<GroupSpec, String> {
        let family = Family::from_name(&self.family).ok_or_else(|| format!("unknown family {:?}", self.family))?;
        let p = if family.needs_prime() {
            Some(self.p.ok_or_else(|| format!("family {} needs p", self.family))?)
        } else {
            if self.p.is_some() {
                return Err(format!("family {} takes no p", self.family));
            }
            None
        };
        GroupSpec::from_family(family, p).map_err(|e| e.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "construction", rename_all = "lowercase")]
pub enum ProvenanceJson {
    Minimal,
    Maximal,
    Aut {
        /// Each generator as the images of the group's generating units.
        generators: Vec<Vec<Vec<u32>>>,
    },
    Direct {
        /// Subgroups as generator lists.
        pair: [Vec<Vec<u32>>; 2],
        factors: [String; 2],
    },
    Wedge {
        #[serde(rename = "N")]
        n: Vec<Vec<u32>>,
        inner: String,
        outer: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecordJson {
    pub group: GroupJson,
    pub superclasses: Vec<Vec<Vec<u32>>>,
    pub character_classes: Vec<Vec<Vec<u32>>>,
    pub tags: Vec<String>,
    pub provenance: Vec<ProvenanceJson>,
}

fn exps(g: &GroupSpec, x: usize) -> Vec<u32> {
    g.element(x).exps().to_vec()
}

fn subgroup_json(g: &GroupSpec, h: &Subgroup) -> Vec<Vec<u32>> {
    h.generators().iter().map(|&x| exps(g, x)).collect()
}

fn partition_json(g: &GroupSpec, p: &Partition) -> Vec<Vec<Vec<u32>>> {
    p.blocks().iter().map(|b| b.iter().map(|&x| exps(g, x)).collect()).collect()
}

pub fn record_to_json(r: &TheoryRecord) -> RecordJson {
    let g = r.theory.group();
    let provenance = r
        .provenance
        .iter()
        .map(|p| match p {
            Provenance::Minimal => ProvenanceJson::Minimal,
            Provenance::Maximal => ProvenanceJson::Maximal,
            Provenance::Aut { generators } => ProvenanceJson::Aut {
                generators: generators
                    .iter()
                    .map(|a| a.images().iter().map(|&x| exps(g, x)).collect())
                    .collect(),
            },
            Provenance::Direct { pair, factors } => ProvenanceJson::Direct {
                pair: [subgroup_json(g, &pair.0), subgroup_json(g, &pair.1)],
                factors: [factors.0.to_string(), factors.1.to_string()],
            },
            Provenance::Wedge { n, inner, outer } => ProvenanceJson::Wedge {
                n: subgroup_json(g, n),
                inner: inner.to_string(),
                outer: outer.to_string(),
            },
        })
        .collect();
    RecordJson {
        group: GroupJson::from_spec(g),
        superclasses: partition_json(g, r.theory.classes()),
        character_classes: partition_json(g, r.theory.charparts()),
        tags: r.tags.iter().map(|t| t.name().to_string()).collect(),
        provenance,
    }
}

fn index(g: &GroupSpec, v: &[u32]) -> Result<usize, String> {
    g.index_of(&Element::new(v.to_vec())).map_err(|e| e.to_string())
}

fn parse_partition(g: &GroupSpec, blocks: &[Vec<Vec<u32>>]) -> Result<Partition, String> {
    let blocks = blocks
        .iter()
        .map(|b| b.iter().map(|v| index(g, v)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    Partition::new(g.order(), blocks).map_err(|e| e.to_string())
}

fn parse_subgroup(g: &GroupSpec, gens: &[Vec<u32>]) -> Result<Subgroup, String> {
    let gens = gens.iter().map(|v| index(g, v)).collect::<Result<Vec<_>, _>>()?;
    Ok(Subgroup::generated(g, &gens))
}

/// Rebuilds a record. The partitions are checked for well-formedness only;
/// whether they form a theory is left to the caller.
pub fn record_from_json(j: &RecordJson) -> Result<TheoryRecord, String> {
    let g = j.group.to_spec()?;
    let classes = parse_partition(&g, &j.superclasses)?;
    let charparts = parse_partition(&g, &j.character_classes)?;
    let tags = j
        .tags
        .iter()
        .map(|t| Tag::from_name(t).ok_or_else(|| format!("unknown tag {t:?}")))
        .collect::<Result<BTreeSet<_>, _>>()?;
    let provenance = j
        .provenance
        .iter()
        .map(|p| -> Result<Provenance, String> {
            Ok(match p {
                ProvenanceJson::Minimal => Provenance::Minimal,
                ProvenanceJson::Maximal => Provenance::Maximal,
                ProvenanceJson::Aut { generators } => Provenance::Aut {
                    generators: generators
                        .iter()
                        .map(|imgs| {
                            let imgs = imgs.iter().map(|v| index(&g, v)).collect::<Result<Vec<_>, _>>()?;
                            AutMap::new(&g, imgs).map_err(|e| e.to_string())
                        })
                        .collect::<Result<_, _>>()?,
                },
                ProvenanceJson::Direct { pair, factors } => Provenance::Direct {
                    pair: (parse_subgroup(&g, &pair[0])?, parse_subgroup(&g, &pair[1])?),
                    factors: (TheoryKey::from_string(factors[0].clone()), TheoryKey::from_string(factors[1].clone())),
                },
                ProvenanceJson::Wedge { n, inner, outer } => Provenance::Wedge {
                    n: parse_subgroup(&g, n)?,
                    inner: TheoryKey::from_string(inner.clone()),
                    outer: TheoryKey::from_string(outer.clone()),
                },
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(TheoryRecord { theory: Theory::from_parts(g, classes, charparts), tags, provenance })
}

/// A record holding only structural tags, for theories from outside the
/// enumerator.
pub fn bare_record(theory: Theory) -> TheoryRecord {
    let mut tags = BTreeSet::new();
    if theory.is_minimal() {
        tags.insert(Tag::Minimal);
    }
    if theory.is_maximal() {
        tags.insert(Tag::Maximal);
    }
    TheoryRecord { theory, tags, provenance: Vec::new() }
}

pub fn write_jsonl<W: Write>(out: &mut W, records: &[TheoryRecord]) -> std::io::Result<()> {
    for r in records {
        serde_json::to_writer(&mut *out, &record_to_json(r))?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

pub fn to_jsonl(records: &[TheoryRecord]) -> String {
    let mut buf = Vec::new();
    write_jsonl(&mut buf, records).expect("writing to memory");
    String::from_utf8(buf).expect("JSON is UTF-8")
}

/// Parses one record per non-blank line.
pub fn read_jsonl<R: BufRead>(input: R) -> Result<Vec<TheoryRecord>, FormatError> {
    let mut out = Vec::new();
    for (i, line) in input.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let j: RecordJson = serde_json::from_str(&line).map_err(|source| FormatError::Json { line: i + 1, source })?;
        out.push(record_from_json(&j).map_err(|message| FormatError::Invalid { line: i + 1, message })?);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountsJson {
    pub total: u64,
    pub automorphic: u64,
    pub direct: u64,
    pub overlap: u64,
    pub wedge: u64,
    pub maximal: u64,
}

impl From<&Counts> for CountsJson {
    fn from(c: &Counts) -> Self {
        CountsJson {
            total: c.total,
            automorphic: c.automorphic,
            direct: c.direct,
            overlap: c.overlap,
            wedge: c.wedge,
            maximal: c.maximal,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountReportJson {
    pub p: u32,
    pub k: u32,
    pub l: u32,
    pub n: u64,
    #[serde(flatten)]
    pub actual: CountsJson,
    pub predicted: CountsJson,
}

impl From<&CountReport> for CountReportJson {
    fn from(r: &CountReport) -> Self {
        CountReportJson {
            p: r.p,
            k: r.k,
            l: r.l,
            n: r.n,
            actual: (&r.actual).into(),
            predicted: (&r.predicted).into(),
        }
    }
}

//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails. Reference values are recomputed here rather than
//! read back from the library.

use std::collections::{BTreeMap, BTreeSet};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_complex::Complex64;
use superchar::format::{read_jsonl, to_jsonl};
use superchar_core::classify::wedge_witnesses;
use superchar_core::construct::from_automorphisms;
use superchar_core::enumerate::{all_scts_cp, all_scts_cp_c2_c2, enumerate, predicted_counts, Tag, TheoryRecord};
use superchar_core::group::{AutMap, Element, GroupSpec};
use superchar_core::oracle::{brute_force_enumerate, OracleOptions};
use superchar_core::partition::Partition;
use superchar_core::theory::{canonical_key, classes_key, dual, verify, Theory};

/// Absolute tolerance for floating-point character sums.
const TOL: f64 = 1e-9;
const PRIME_LIMIT: Duration = Duration::from_secs(60);
const ORACLE_LIMIT: Duration = Duration::from_secs(300);
const PRIMES: [u32; 5] = [3, 5, 7, 11, 13];

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn d(n: u64) -> u64 {
    (1..=n).filter(|k| n.is_multiple_of(*k)).count() as u64
}

/// Expected counts from the closed forms, with `p - 1 = 2^k 3^l n`.
fn formula(p: u32) -> [u64; 5] {
    let mut n = p as u64 - 1;
    let (mut k, mut l) = (0u64, 0u32);
    while n.is_multiple_of(2) {
        n /= 2;
        k += 1;
    }
    while n.is_multiple_of(3) {
        n /= 3;
        l += 1;
    }
    let dp = d(p as u64 - 1);
    let mixed = 3 * k * d(3u64.pow(l) * n) + 2 * l as u64 * d(2u64.pow(k as u32) * n);
    [mixed + 30 * dp + 13, mixed + 5 * dp, 11 * dp + 6, 5 * dp, 19 * dp + 6]
}

fn criterion_1(runs: &BTreeMap<u32, (Vec<TheoryRecord>, Duration)>) -> Check {
    let mut totals = Vec::new();
    for (&p, (records, elapsed)) in runs {
        let want = formula(p)[0];
        ensure(records.len() as u64 == want, || format!("p={p}: {} theories, formula gives {want}", records.len()))?;
        let predicted = predicted_counts(p).map_err(|e| e.to_string())?;
        ensure(predicted.total == want, || format!("p={p}: predicted_counts {} vs {want}", predicted.total))?;
        ensure(*elapsed <= PRIME_LIMIT, || format!("p={p}: took {elapsed:?}"))?;
        totals.push(format!("{p}:{want}"));
    }
    ensure(formula(3)[0] == 76 && formula(5)[0] == 109 && formula(7)[0] == 143, || "small totals".into())?;
    Ok(format!("totals {}", totals.join(" ")))
}

fn criterion_2(runs: &BTreeMap<u32, (Vec<TheoryRecord>, Duration)>) -> Check {
    for (&p, (records, _)) in runs {
        let [_, auto, direct, overlap, wedge] = formula(p);
        let count = |f: &dyn Fn(&TheoryRecord) -> bool| records.iter().filter(|r| f(r)).count() as u64;
        let got = [
            count(&|r| r.has(Tag::Automorphic)),
            count(&|r| r.has(Tag::Direct)),
            count(&|r| r.has(Tag::Automorphic) && r.has(Tag::Direct)),
            count(&|r| r.has(Tag::Wedge)),
        ];
        ensure(got == [auto, direct, overlap, wedge], || {
            format!("p={p}: automorphic/direct/overlap/wedge {got:?}, expected {:?}", [auto, direct, overlap, wedge])
        })?;
        let clash = count(&|r| r.has(Tag::Wedge) && (r.has(Tag::Direct) || r.has(Tag::Automorphic)));
        ensure(clash == 0, || format!("p={p}: {clash} wedge theories also direct or automorphic"))?;
    }
    Ok("category counts match at p = 3, 5, 7, 11, 13".into())
}

fn key_set(ts: impl IntoIterator<Item = Theory>) -> BTreeSet<String> {
    ts.into_iter().map(|t| canonical_key(&t).to_string()).collect()
}

fn criterion_3() -> Check {
    let cases: Vec<(GroupSpec, Option<usize>)> = vec![
        (GroupSpec::cp_c2_c2(3).unwrap(), Some(76)),
        (GroupSpec::klein(), Some(5)),
        (GroupSpec::cp(3).unwrap(), Some(2)),
        (GroupSpec::cp(5).unwrap(), Some(3)),
        (GroupSpec::cp(7).unwrap(), Some(4)),
        (GroupSpec::cp_c2(3).unwrap(), Some(7)),
        (GroupSpec::cp_c2(5).unwrap(), Some(10)),
        (GroupSpec::c2_cubed(), None),
    ];
    let mut notes = Vec::new();
    for (g, expected) in cases {
        let start = Instant::now();
        let oracle = brute_force_enumerate(&g, &OracleOptions::default()).map_err(|e| e.to_string())?;
        let elapsed = start.elapsed();
        ensure(elapsed <= ORACLE_LIMIT, || format!("oracle on order {} took {elapsed:?}", g.order()))?;
        for t in &oracle {
            verify(t).map_err(|v| format!("oracle result {} fails: {v}", canonical_key(t)))?;
        }
        let built = enumerate(&g).map_err(|e| e.to_string())?;
        let a = key_set(oracle);
        let b = key_set(built.into_iter().map(|r| r.theory));
        ensure(a == b, || format!("order {}: oracle {} theories, enumeration {}", g.order(), a.len(), b.len()))?;
        if let Some(n) = expected {
            ensure(a.len() == n, || format!("order {}: {} theories, expected {n}", g.order(), a.len()))?;
        }
        notes.push(format!("{}={}", g.factors().iter().map(|f| f.to_string()).collect::<Vec<_>>().join("x"), a.len()));
    }
    Ok(format!("oracle equals enumeration: {}", notes.join(" ")))
}

/// Element of `C_p × C_2 × C_2` from a name such as `a3bc`.
fn el(g: &GroupSpec, name: &str) -> usize {
    let mut e = vec![0u32; 3];
    let mut rest = name.trim_start_matches('e');
    if let Some(r) = rest.strip_prefix('a') {
        let digits: String = r.chars().take_while(|c| c.is_ascii_digit()).collect();
        e[0] = if digits.is_empty() { 1 } else { digits.parse().unwrap() };
        rest = &r[digits.len()..];
    }
    for c in rest.chars() {
        e[if c == 'b' { 1 } else { 2 }] = 1;
    }
    g.index_of(&Element::new(e)).unwrap()
}

fn golden(p: u32, images: [&str; 3], classes: &[&str]) -> Result<(), String> {
    let g = GroupSpec::cp_c2_c2(p).unwrap();
    let phi = AutMap::new(&g, images.iter().map(|n| el(&g, n)).collect()).map_err(|e| e.to_string())?;
    let t = from_automorphisms(&g, &[phi]).map_err(|e| e.to_string())?;
    let blocks = classes.iter().map(|b| b.split(' ').map(|n| el(&g, n)).collect()).collect();
    let expected = Partition::new(g.order(), blocks).map_err(|e| e.to_string())?;
    let want = classes_key(&g, &expected);
    let got = canonical_key(&t);
    ensure(got.as_bytes() == want.as_bytes(), || format!("images {images:?}: got {got}, want {want}"))
}

fn criterion_4() -> Check {
    golden(
        5,
        ["a2", "b", "bc"],
        &["e", "a a2 a3 a4", "b", "c bc", "ab a2b a3b a4b", "ac a4c a2bc a3bc", "a2c a3c abc a4bc"],
    )?;
    let common = ["e", "a a2 a4", "a3 a5 a6", "b c bc"];
    let v1 = ["ab a2c a4bc", "a2b a4c abc", "a6b a5c a3bc", "a5b a3c a6bc", "a3b a6c a5bc", "a4b ac a2bc"];
    let v2 = ["ab a2bc a4c", "a2b a4bc ac", "a6b a5bc a3c", "a5b a3bc a6c", "a3b a6bc a5c", "a4b abc a2c"];
    let with = |v: &[&'static str]| common.iter().chain(v).copied().collect::<Vec<_>>();
    golden(7, ["a2", "c", "bc"], &with(&v1))?;
    golden(7, ["a2", "bc", "b"], &with(&v2))?;
    ensure(v1 != v2, || "variants coincide".into())?;
    golden(
        7,
        ["a5", "c", "bc"],
        &[
            "e",
            "a a2 a3 a4 a5 a6",
            "b c bc",
            "ab a6b a2c a5c a3bc a4bc",
            "a2b a5b a3c a4c abc a6bc",
            "a3b a4b ac a6c a2bc a5bc",
        ],
    )?;
    Ok("four printed class partitions reproduced".into())
}

/// Character values computed from exponent vectors: the odd coordinate
/// contributes `exp(2πi·χ·g/p)` and the two involution coordinates are
/// crossed.
fn char_table(g: &GroupSpec) -> Vec<Vec<Complex64>> {
    let n = g.order();
    let f = g.factors().to_vec();
    let twos: Vec<usize> = (0..f.len()).filter(|&i| f[i] == 2).collect();
    let partner = |i: usize| {
        if twos.len() == 2 && twos.contains(&i) {
            twos[0] + twos[1] - i
        } else {
            i
        }
    };
    (0..n)
        .map(|chi| {
            let c = g.character(chi).exps().to_vec();
            (0..n)
                .map(|x| {
                    let e = g.element(x).exps().to_vec();
                    let turns: f64 = (0..f.len())
                        .map(|i| (c[i] * e[partner(i)]) as f64 / f[i] as f64)
                        .sum();
                    Complex64::from_polar(1.0, std::f64::consts::TAU * turns)
                })
                .collect()
        })
        .collect()
}

fn close(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() <= TOL
}

/// Subgroups on exponent vectors, generated by all pairs of elements.
fn subgroups(g: &GroupSpec) -> Vec<BTreeSet<usize>> {
    let n = g.order();
    let mut out = BTreeSet::new();
    for x in 0..n {
        for y in x..n {
            let mut members = BTreeSet::from([0usize]);
            let mut frontier = vec![0usize];
            while let Some(m) = frontier.pop() {
                for s in [x, y] {
                    let z = g.index_of(&add(g, m, s)).unwrap();
                    if members.insert(z) {
                        frontier.push(z);
                    }
                }
            }
            out.insert(members.into_iter().collect::<Vec<_>>());
        }
    }
    out.into_iter().map(|v| v.into_iter().collect()).collect()
}

fn add(g: &GroupSpec, x: usize, y: usize) -> Element {
    let (a, b) = (g.element(x), g.element(y));
    Element::new(a.exps().iter().zip(b.exps()).zip(g.factors()).map(|((u, v), f)| (u + v) % f).collect())
}

fn union_of_blocks(p: &Partition, set: &BTreeSet<usize>) -> bool {
    p.blocks().iter().all(|b| b.iter().all(|x| set.contains(x)) || b.iter().all(|x| !set.contains(x)))
}

fn criterion_5(runs: &BTreeMap<u32, (Vec<TheoryRecord>, Duration)>) -> Check {
    let mut checked = 0;
    for p in [3, 5, 7] {
        let records = &runs[&p].0;
        let g = records[0].theory.group().clone();
        let n = g.order();
        let table = char_table(&g);
        let subs = subgroups(&g);
        let by_key: BTreeMap<String, &TheoryRecord> = records.iter().map(|r| (r.key().to_string(), r)).collect();
        for r in records {
            let t = &r.theory;
            let key = r.key();
            verify(t).map_err(|v| format!("{key}: {v}"))?;
            let sigma: Vec<Vec<Complex64>> = t
                .charparts()
                .blocks()
                .iter()
                .map(|x| (0..n).map(|e| x.iter().map(|&chi| table[chi][e]).sum()).collect())
                .collect();
            for e in 0..n {
                let total: Complex64 = sigma.iter().map(|s| s[e]).sum();
                let want = if e == 0 { n as f64 } else { 0.0 };
                ensure(close(total, want.into()), || format!("{key}: regular character at {e} is {total}"))?;
            }
            for (i, si) in sigma.iter().enumerate() {
                for (j, sj) in sigma.iter().enumerate() {
                    let ip: Complex64 = (0..n).map(|e| si[e] * sj[e].conj()).sum::<Complex64>() / n as f64;
                    let want = if i == j { t.charparts().blocks()[i].len() as f64 } else { 0.0 };
                    ensure(close(ip, want.into()), || format!("{key}: <σ{i},σ{j}> = {ip}"))?;
                }
                // Constant on every superclass.
                for k in t.classes().blocks() {
                    ensure(k.iter().all(|&x| close(si[x], si[k[0]])), || format!("{key}: σ{i} not constant"))?;
                }
            }
            for k in t.classes().blocks() {
                let gen = subs.iter().filter(|h| k.iter().all(|x| h.contains(x))).min_by_key(|h| h.len()).unwrap();
                ensure(union_of_blocks(t.classes(), gen), || format!("{key}: <K> for K={k:?} is not a union of classes"))?;
            }
            let invariant: Vec<&BTreeSet<usize>> = subs.iter().filter(|h| union_of_blocks(t.classes(), h)).collect();
            if !t.is_minimal() && !t.is_maximal() {
                ensure(invariant.iter().any(|h| h.len() > 1 && h.len() < n), || {
                    format!("{key}: no proper nontrivial invariant subgroup")
                })?;
            }
            let dt = dual(t).map_err(|e| format!("{key}: dual fails: {e}"))?;
            let ddt = dual(&dt).map_err(|e| format!("{key}: double dual fails: {e}"))?;
            ensure(&ddt == t, || format!("{key}: dual of dual differs"))?;
            let dual_record = by_key
                .get(dt.canonical_key().as_str())
                .ok_or_else(|| format!("{key}: dual {} not enumerated", dt.canonical_key()))?;
            ensure(r.has(Tag::Wedge) == dual_record.has(Tag::Wedge), || format!("{key}: wedge tag differs from dual"))?;
            ensure(wedge_witnesses(t).is_empty() == wedge_witnesses(&dt).is_empty(), || {
                format!("{key}: wedge witnesses differ from dual")
            })?;
            let annihilator = |h: &BTreeSet<usize>| -> BTreeSet<usize> {
                (0..n).filter(|&chi| h.iter().all(|&x| close(table[chi][x], 1.0.into()))).collect()
            };
            for h in &invariant {
                let ah = annihilator(h);
                ensure(union_of_blocks(t.charparts(), &ah), || format!("{key}: annihilator not a union of blocks"))?;
                ensure(union_of_blocks(dt.classes(), &ah), || format!("{key}: annihilator not a union of dual classes"))?;
                for h2 in &invariant {
                    if h.is_subset(h2) {
                        ensure(annihilator(h2).is_subset(&ah), || format!("{key}: inclusion not reversed"))?;
                    }
                }
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} theories at p = 3, 5, 7 satisfy all properties"))
}

fn criterion_6() -> Check {
    let mut checked = 0;
    for p in [3u32, 5, 7, 11, 13] {
        let records = all_scts_cp(p).map_err(|e| e.to_string())?;
        for r in &records {
            let t = &r.theory;
            let rest: Vec<&Vec<usize>> = t.classes().blocks().iter().filter(|k| k[0] != 0).collect();
            let size = rest[0].len();
            ensure(rest.iter().all(|k| k.len() == size), || format!("C_{p} {}: unequal class sizes", r.key()))?;
            ensure(size * rest.len() == p as usize - 1, || format!("C_{p} {}: r·m ≠ p-1", r.key()))?;
            // On C_p the summand χ_x(a^j) is ζ^{xj}; record the exponents.
            for x in t.charparts().blocks().iter().filter(|x| x[0] != 0) {
                let summands = |k: &Vec<usize>| {
                    let j = g_exp(t.group(), k[0]);
                    x.iter().map(|&c| g_exp(t.group(), c) * j % p).collect::<BTreeSet<u32>>()
                };
                let blocks = t.classes().blocks();
                for (i, k) in blocks.iter().enumerate() {
                    for k2 in &blocks[i + 1..] {
                        ensure(summands(k).is_disjoint(&summands(k2)), || {
                            format!("C_{p} {}: summands overlap on classes {k:?}, {k2:?}", r.key())
                        })?;
                    }
                }
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} theories of C_p for p <= 13"))
}

fn g_exp(g: &GroupSpec, x: usize) -> u32 {
    g.element(x).exps()[0]
}

fn criterion_7(runs: &BTreeMap<u32, (Vec<TheoryRecord>, Duration)>) -> Check {
    for p in [3, 5, 7] {
        let records = &runs[&p].0;
        let text = to_jsonl(records);
        let back = read_jsonl(text.as_bytes()).map_err(|e| e.to_string())?;
        let keys = |rs: &[TheoryRecord]| rs.iter().map(|r| r.key()).collect::<Vec<_>>();
        ensure(keys(&back) == keys(records), || format!("p={p}: keys change on round trip"))?;
        for r in &back {
            verify(&r.theory).map_err(|v| format!("p={p}: parsed {} fails: {v}", r.key()))?;
        }
        ensure(to_jsonl(&back) == text, || format!("p={p}: re-serialisation differs"))?;
        let fresh = all_scts_cp_c2_c2(p).map_err(|e| e.to_string())?.0;
        ensure(to_jsonl(&fresh) == text, || format!("p={p}: second enumeration differs"))?;
    }
    let bin = env!("CARGO_BIN_EXE_superchar");
    let run = || {
        Command::new(bin)
            .args(["enumerate", "--group", "cpc2c2", "--p", "5"])
            .output()
            .map_err(|e| e.to_string())
    };
    let (a, b) = (run()?, run()?);
    ensure(a.status.success() && b.status.success(), || "CLI enumerate failed".into())?;
    ensure(a.stdout == b.stdout, || "two CLI runs differ".into())?;
    ensure(a.stdout == to_jsonl(&runs[&5].0).into_bytes(), || "CLI output differs from library".into())?;
    Ok("JSONL round trip is the identity; repeated runs are byte-identical".into())
}

fn main() -> ExitCode {
    let mut runs = BTreeMap::new();
    let mut failures = 0;
    let mut report = |n: u32, result: Check| match result {
        Ok(msg) => println!("PASS criterion {n}: {msg}"),
        Err(msg) => {
            failures += 1;
            println!("FAIL criterion {n}: {msg}");
        }
    };
    for p in PRIMES {
        let start = Instant::now();
        match all_scts_cp_c2_c2(p) {
            Ok((records, _)) => {
                runs.insert(p, (records, start.elapsed()));
            }
            Err(e) => report(1, Err(format!("p={p}: {e}"))),
        }
    }
    if runs.len() == PRIMES.len() {
        report(1, criterion_1(&runs));
        report(2, criterion_2(&runs));
    } else {
        report(2, Err("enumeration failed".into()));
    }
    report(3, criterion_3());
    report(4, criterion_4());
    if runs.len() == PRIMES.len() {
        report(5, criterion_5(&runs));
    }
    report(6, criterion_6());
    if runs.len() == PRIMES.len() {
        report(7, criterion_7(&runs));
    }
    if failures > 0 {
        println!("{failures} criteria failed");
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}

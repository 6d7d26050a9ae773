//! End-to-end acceptance run. Prints one `criterion N: pass|FAIL` line per
//! criterion and exits nonzero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use ntk_core::free_product::{
    bounded_malnormality, embed_remark, example2_check, FPWord, Factor, FiniteFactor, FreeNilpotentFactor,
    FreeProduct, MalnormalityBounds,
};
use ntk_core::group::{build_family, FamilySpec};
use ntk_core::harness::{build_default_corpus, run_all, HarnessConfig, PropositionId, Status};
use ntk_core::magnus::{
    collect_class2, equal_nmk, is_identity_nmk, magnus_image, parse_word, FreeWord, Letter,
};
use ntk_core::nilk::{is_csa, is_ct, NilkAnalyzer, NtkMethod, WitnessKind};
use ntk_core::report::analyze;
use ntk_core::{FiniteGroup, Subgroup};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const MAX_ORDER: usize = 48;
const KS: [usize; 3] = [1, 2, 3];
const TIME_LIMIT: Duration = Duration::from_secs(600);

/// Outcome of one criterion: pass flag, a one-line summary, and the full
/// report text compared across runs.
struct Outcome {
    pass: bool,
    summary: String,
    report: String,
}

impl Outcome {
    fn new(failures: Vec<String>, summary: String, report: String) -> Self {
        let pass = failures.is_empty();
        let summary = if pass {
            summary
        } else {
            format!("{summary}; {}", failures.join("; "))
        };
        Outcome {
            pass,
            summary,
            report,
        }
    }
}

fn group(spec: FamilySpec) -> FiniteGroup {
    build_family(&spec).expect("family builds")
}

fn random_word<R: Rng>(rng: &mut R, m: u32, max_len: usize) -> FreeWord {
    let len = rng.random_range(0..=max_len);
    FreeWord::from_letters(
        (0..len).map(|_| Letter::new(rng.random_range(1..=m), if rng.random_bool(0.5) { 1 } else { -1 })),
    )
}

fn harness_sweep() -> Outcome {
    let start = Instant::now();
    let corpus = build_default_corpus(MAX_ORDER).unwrap();
    let run = run_all(&corpus, &KS, &PropositionId::ALL, HarnessConfig::default()).unwrap();
    let elapsed = start.elapsed();
    let mut failures = Vec::new();
    let counterexamples: usize = run.reports.iter().map(|r| r.counterexamples.len()).sum();
    let skipped: usize = run.reports.iter().map(|r| r.skipped.len()).sum();
    if counterexamples > 0 {
        failures.push(format!("{counterexamples} counterexamples"));
    }
    if run.reports.iter().any(|r| r.status != Status::Pass) {
        failures.push(format!("{skipped} groups skipped"));
    }
    if run.reports.len() != PropositionId::ALL.len() * KS.len() {
        failures.push(format!("{} reports", run.reports.len()));
    }
    if elapsed > TIME_LIMIT {
        failures.push(format!("took {elapsed:?}"));
    }
    Outcome::new(
        failures,
        format!(
            "{} groups, {} propositions, k=1,2,3, 0 counterexamples, {:.1}s",
            run.corpus_size,
            PropositionId::ALL.len(),
            elapsed.as_secs_f64()
        ),
        serde_json::to_string(&run).unwrap(),
    )
}

fn method_agreement() -> Outcome {
    let corpus = build_default_corpus(MAX_ORDER).unwrap();
    let mut failures = Vec::new();
    let mut report = String::new();
    let mut literal_checked = 0;
    for entry in &corpus.entries {
        let g = &entry.group;
        for k in KS {
            let an = NilkAnalyzer::new(g, k);
            let verdicts: Vec<_> = NtkMethod::ALL.iter().map(|&m| an.is_ntk(m).unwrap()).collect();
            let csnk = an.is_csnk().unwrap();
            let by_sentences = an.csnk_by_sentences();
            let mut row = format!("{} k={k} ntk=", g.name());
            for v in &verdicts {
                row.push(if v.holds { '1' } else { '0' });
            }
            row += &format!(" csnk={} {}", csnk.holds as u8, by_sentences.holds as u8);
            if verdicts.iter().any(|v| v.holds != verdicts[0].holds) {
                failures.push(format!("{} k={k}: NT_k methods disagree", g.name()));
            }
            if csnk.holds != by_sentences.holds {
                failures.push(format!("{} k={k}: CSN_k checks disagree", g.name()));
            }
            let all = verdicts.iter().chain([&csnk, &by_sentences]);
            if all.clone().any(|v| !v.is_consistent(g, k)) {
                failures.push(format!("{} k={k}: witness does not replay", g.name()));
            }
            if g.order() <= 24 {
                let literal = an.nil_literal();
                literal_checked += 1;
                row += &format!(" nil={}", literal.holds as u8);
                if literal.holds != an.nil().holds {
                    failures.push(format!("{} k={k}: literal Nil disagrees", g.name()));
                }
            }
            report += &row;
            report.push('\n');
        }
    }
    Outcome::new(
        failures,
        format!(
            "{} groups x 3 values of k agree; literal Nil checked on {literal_checked} (group, k) pairs",
            corpus.len()
        ),
        report,
    )
}

fn is_klein_four(g: &FiniteGroup, h: &Subgroup) -> bool {
    h.order() == 4 && h.elements().all(|x| g.is_identity(g.mul(x, x)))
}

fn anchors() -> Outcome {
    let mut failures = Vec::new();
    let mut report = String::new();
    let mut check = |ok: bool, what: &str| {
        report += &format!("{what}: {ok}\n");
        if !ok {
            failures.push(what.to_string());
        }
    };

    let s3 = group(FamilySpec::Symmetric(3));
    let r = analyze(&s3, 1, &[], usize::MAX, "anchor").unwrap();
    check(r.ntk() && !r.is_csnk.holds, "S3 is NT_1 and not CSN_1");

    let q8 = group(FamilySpec::Quaternion8);
    let minus_one: Vec<_> = q8
        .nontrivial_elements()
        .filter(|&x| q8.is_identity(q8.mul(x, x)))
        .collect();
    let r = analyze(&q8, 1, &[], usize::MAX, "anchor").unwrap();
    let nil = &r.sentences.nil;
    let nil_x = nil.witness.as_ref().and_then(|w| w.get("x"));
    check(
        !r.ntk() && !nil.holds && minus_one.len() == 1 && nil_x == Some(minus_one[0]),
        "Q8 is not NT_1 with Nil witness x = -1",
    );
    let r2 = analyze(&q8, 2, &[], usize::MAX, "anchor").unwrap();
    check(r2.is_csnk.holds, "Q8 is CSN_2");

    let d5 = group(FamilySpec::Dihedral(5));
    let r = analyze(&d5, 1, &[], usize::MAX, "anchor").unwrap();
    let rotations: Vec<_> = d5
        .elements()
        .filter(|&x| d5.element_order(x) == 5 || x == d5.identity())
        .collect();
    let dich = r.dichotomy.as_ref();
    let g0 = dich.and_then(|w| w.get_subgroup("G0"));
    let a = dich.and_then(|w| w.get_subgroup("A"));
    check(
        r.ntk()
            && !r.is_csnk.holds
            && g0.is_some_and(|h| h.order() == 10)
            && a.is_some_and(|h| h.elements().collect::<Vec<_>>() == rotations),
        "D5 is NT_1, not CSN_1, dichotomy (G0 = D5, A = rotations)",
    );

    let s4 = group(FamilySpec::Symmetric(4));
    let v = NilkAnalyzer::new(&s4, 2)
        .is_ntk(NtkMethod::PairwiseIntersections)
        .unwrap();
    let sylow_pair = v.witness.as_ref().is_some_and(|w| {
        let (h1, h2) = (w.get_subgroup("H1"), w.get_subgroup("H2"));
        w.kind == WitnessKind::IntersectionFail
            && h1.zip(h2).is_some_and(|(h1, h2)| {
                h1.order() == 8 && h2.order() == 8 && h1 != h2 && is_klein_four(&s4, &h1.intersection(h2))
            })
    });
    check(
        !v.holds && sylow_pair,
        "S4 is not NT_2: two Sylow 2-subgroups meet in V4",
    );

    let heis = group(FamilySpec::Heisenberg(3));
    check(
        NilkAnalyzer::new(&heis, 2).is_csnk().unwrap().holds,
        "Heis(3) is CSN_2",
    );

    Outcome::new(
        failures,
        "S3, Q8, D5, S4, Heis(3) verdicts and witnesses match".into(),
        report,
    )
}

fn k1_specialization() -> Outcome {
    let corpus = build_default_corpus(MAX_ORDER).unwrap();
    let mut failures = Vec::new();
    let mut report = String::new();
    for entry in &corpus.entries {
        let g = &entry.group;
        let an = NilkAnalyzer::new(g, 1);
        let (ntk, ct) = (an.is_ntk(NtkMethod::Sentences).unwrap().holds, is_ct(g));
        let (csnk, csa) = (an.is_csnk().unwrap().holds, is_csa(g));
        report += &format!("{} ct={ct} csa={csa}\n", g.name());
        if ntk != ct {
            failures.push(format!("{}: NT_1 != CT", g.name()));
        }
        if csnk != csa {
            failures.push(format!("{}: CSN_1 != CSA", g.name()));
        }
    }
    Outcome::new(
        failures,
        format!("NT_1 = CT and CSN_1 = CSA on {} groups", corpus.len()),
        report,
    )
}

fn magnus() -> Outcome {
    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0x6d61676e);

    let mut hom_fail = 0;
    for _ in 0..1000 {
        let m = rng.random_range(1..=3);
        let k = rng.random_range(1..=4);
        let u = random_word(&mut rng, m, 10);
        let v = random_word(&mut rng, m, 10);
        let (iu, iv) = (magnus_image(&u, m, k).unwrap(), magnus_image(&v, m, k).unwrap());
        let iuv = magnus_image(&u.mul(&v), m, k).unwrap();
        let iinv = magnus_image(&u.inverse(), m, k).unwrap();
        if iuv != iu.mul(&iv) || iinv != iu.inverse() || !iu.mul(&iinv).is_one() {
            hom_fail += 1;
        }
    }
    if hom_fail > 0 {
        failures.push(format!("{hom_fail} homomorphism failures"));
    }

    // Half the pairs differ by a weight-3 commutator spliced in, so both
    // outcomes of the comparison occur.
    let (mut agree, mut equal) = (0, 0);
    for i in 0..1000 {
        let u = random_word(&mut rng, 2, 12);
        let v = if i % 2 == 0 {
            let c = FreeWord::left_normed(&[
                random_word(&mut rng, 2, 3),
                random_word(&mut rng, 2, 3),
                random_word(&mut rng, 2, 3),
            ]);
            let cut = rng.random_range(0..=u.len());
            let (l, r) = u.letters().split_at(cut);
            FreeWord::from_letters(l.iter().copied())
                .mul(&c)
                .mul(&FreeWord::from_letters(r.iter().copied()))
        } else {
            random_word(&mut rng, 2, 12)
        };
        let by_series = equal_nmk(&u, &v, 2, 2).unwrap();
        let by_collection = collect_class2(&u, 2).unwrap() == collect_class2(&v, 2).unwrap();
        agree += (by_series == by_collection) as usize;
        equal += by_series as usize;
    }
    if agree != 1000 {
        failures.push(format!("collection agrees on {agree}/1000"));
    }

    let square = parse_word("(x1 x2)^2 (x1^2 x2^2 [x2,x1])^-1").unwrap();
    let square_ok = is_identity_nmk(&square, 2, 2).unwrap();
    if !square_ok {
        failures.push("square identity fails".into());
    }

    // Left-normed commutators of generators whose first two entries coincide
    // are trivial in the free group, so those are excluded.
    let mut commutators = 0;
    for m in 2..=3u32 {
        for k in 1..=4usize {
            for code in 0..m.pow(k as u32 + 1) {
                let idx: Vec<u32> = (0..=k as u32).map(|p| code / m.pow(p) % m + 1).collect();
                if idx[0] == idx[1] {
                    continue;
                }
                let gens: Vec<FreeWord> = idx.iter().map(|&i| FreeWord::generator(i)).collect();
                let c = FreeWord::left_normed(&gens);
                commutators += 1;
                if !is_identity_nmk(&c, m, k).unwrap() || is_identity_nmk(&c, m, k + 1).unwrap() {
                    failures.push(format!("{c} at m={m} k={k}"));
                }
            }
        }
    }

    Outcome::new(
        failures,
        format!(
            "1000 homomorphism checks, collection agrees 1000/1000 ({equal} equal pairs), square identity, {commutators} commutators"
        ),
        format!("{hom_fail} {agree} {equal} {square_ok} {commutators}"),
    )
}

fn axioms<F: Factor>(p: &FreeProduct<F>, rng: &mut ChaCha8Rng, n: usize) -> usize {
    let reduced = |w: &FPWord<F::Elem>| {
        w.syllables().iter().all(|(c, e)| !p.factor(*c).is_identity(e))
            && w.syllables().windows(2).all(|s| s[0].0 != s[1].0)
    };
    let one = FPWord::identity();
    (0..n)
        .filter(|_| {
            let a = p.random_word(rng, 5);
            let b = p.random_word(rng, 5);
            let c = p.random_word(rng, 5);
            let ab = p.mul(&a, &b);
            let ok = p.mul(&ab, &c) == p.mul(&a, &p.mul(&b, &c))
                && p.mul(&a, &one) == a
                && p.mul(&one, &a) == a
                && p.mul(&a, &p.inverse(&a)).is_identity()
                && p.mul(&p.inverse(&a), &a).is_identity()
                && reduced(&ab)
                && p.normalize(ab.syllables().iter().cloned()) == ab;
            !ok
        })
        .count()
}

fn free_products() -> Outcome {
    let mut failures = Vec::new();
    let mut report = String::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0x66726565);
    let nil22 = FreeNilpotentFactor::new(2, 2).unwrap();

    let nil_product = FreeProduct::copies(nil22, 3);
    let finite_product = FreeProduct::new(vec![
        FiniteFactor::new(group(FamilySpec::Symmetric(3))),
        FiniteFactor::new(group(FamilySpec::Cyclic(4))),
    ]);
    let bad = axioms(&nil_product, &mut rng, 10_000) + axioms(&finite_product, &mut rng, 10_000);
    report += &format!("axiom failures {bad}\n");
    if bad > 0 {
        failures.push(format!("{bad} axiom triples fail"));
    }

    for (a, x, expected) in [(2, None, "1:#1 | 0:#1"), (4, Some(2), "1:#1 | 0:#2")] {
        let r = example2_check(
            &group(FamilySpec::Cyclic(a)),
            x,
            &group(FamilySpec::Cyclic(2)),
            None,
        )
        .unwrap();
        report += &format!("C{a}*C2 {} {}\n", r.conjugate, r.inverse);
        if !(r.holds && r.conjugate == expected && r.inverse == expected) {
            failures.push(format!(
                "example in C{a}*C2 gives {} and {}",
                r.conjugate, r.inverse
            ));
        }
    }

    let p = FreeProduct::copies(nil22, 2);
    let z = p.parse("0:x1 | 1:x1").unwrap();
    let bounds = MalnormalityBounds {
        radius: 3,
        exp_bound: 3,
        ..Default::default()
    };
    let r = bounded_malnormality(&p, &z, bounds).unwrap();
    report += &format!("malnormal {} {}\n", r.holds, r.words_checked);
    if !r.holds {
        failures.push(format!("malnormality fails for nil(2,2): {:?}", r.witness));
    }
    let c2 = FreeProduct::copies(FiniteFactor::new(group(FamilySpec::Cyclic(2))), 2);
    let z = c2.parse("0:#1 | 1:#1").unwrap();
    let r = bounded_malnormality(&c2, &z, bounds).unwrap();
    let w = r.witness.as_ref().map(|w| (w.x.as_str(), w.n, w.m));
    report += &format!("involutions {w:?}\n");
    if r.holds || w != Some(("0:#1", 1, -1)) {
        failures.push(format!("involution witness is {w:?}"));
    }

    let source = FreeProduct::copies(nil22, 3);
    let target = FreeProduct::copies(nil22, 2);
    let mut embed_bad = 0;
    for _ in 0..1000 {
        let u = source.random_word(&mut rng, 6);
        let v = source.random_word(&mut rng, 6);
        let (eu, ev) = (
            embed_remark(&source, &u).unwrap(),
            embed_remark(&source, &v).unwrap(),
        );
        let euv = embed_remark(&source, &source.mul(&u, &v)).unwrap();
        if euv != target.mul(&eu, &ev) || u.is_identity() != eu.is_identity() {
            embed_bad += 1;
        }
    }
    report += &format!("embed failures {embed_bad}\n");
    if embed_bad > 0 {
        failures.push(format!("{embed_bad} embedding failures"));
    }

    Outcome::new(
        failures,
        "2x10^4 axiom triples, involution identity in C2*C2 and C4*C2, bounded malnormality, 1000 embeddings"
            .into(),
        report,
    )
}

fn run_once() -> Vec<(&'static str, Outcome)> {
    vec![
        ("harness clean sweep", harness_sweep()),
        ("method agreement", method_agreement()),
        ("anchor verdicts", anchors()),
        ("k = 1 specialization", k1_specialization()),
        ("Magnus correctness", magnus()),
        ("free product suite", free_products()),
    ]
}

fn main() -> ExitCode {
    let first = run_once();
    let second = run_once();
    let mut all_pass = true;
    for (i, (name, o)) in first.iter().enumerate() {
        println!(
            "criterion {}: {} {name}: {}",
            i + 1,
            if o.pass { "pass" } else { "FAIL" },
            o.summary
        );
        all_pass &= o.pass;
    }
    let differing: Vec<usize> = first
        .iter()
        .zip(&second)
        .enumerate()
        .filter(|(_, (a, b))| a.1.report != b.1.report || a.1.pass != b.1.pass)
        .map(|(i, _)| i + 1)
        .collect();
    let deterministic = differing.is_empty();
    if deterministic {
        println!("criterion 7: pass determinism: two runs of criteria 1-6 give byte-identical reports");
    } else {
        println!("criterion 7: FAIL determinism: reports differ for criteria {differing:?}");
    }
    if all_pass && deterministic {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

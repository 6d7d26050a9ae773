//! Fixed-layout text output.

use std::fmt::Write;

use ntk_core::free_product::{Example2Report, MalnormalityReport};
use ntk_core::harness::{Finding, HarnessRun, Status};
use ntk_core::report::AnalysisReport;
use ntk_core::{Subgroup, Verdict, Witness};

fn holds(b: bool) -> &'static str {
    if b {
        "holds"
    } else {
        "fails"
    }
}

fn status(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Incomplete => "INCOMPLETE",
        Status::Fail => "FAIL",
    }
}

fn subgroup(h: &Subgroup) -> String {
    let elems: Vec<String> = h.elements().map(|e| e.to_string()).collect();
    format!("{{{}}}", elems.join(","))
}

pub fn witness(w: &Witness) -> String {
    let mut parts: Vec<String> = w
        .subgroups
        .iter()
        .map(|s| format!("{}={}", s.name, subgroup(&s.subgroup)))
        .collect();
    parts.extend(w.elements.iter().map(|e| format!("{}={}", e.name, e.index)));
    let mut out = format!("{:?} {}", w.kind, parts.join(" "));
    if !w.note.is_empty() {
        write!(out, " ({})", w.note).unwrap();
    }
    out
}

fn verdict_line(out: &mut String, label: &str, v: &Verdict) {
    write!(out, "  {label:<24}{}", holds(v.holds)).unwrap();
    if let Some(w) = &v.witness {
        write!(out, "  {}", witness(w)).unwrap();
    }
    out.push('\n');
}

pub fn analysis(r: &AnalysisReport) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "group: {} (order {})  from {}",
        r.group.name, r.group.order, r.group.provenance
    )
    .unwrap();
    writeln!(out, "k: {}", r.k).unwrap();
    writeln!(out, "nilpotency class: {}", r.class).unwrap();
    out.push_str("NT_k:\n");
    for m in &r.is_ntk {
        verdict_line(&mut out, m.method.as_str(), &m.verdict);
    }
    out.push_str("CSN_k:\n");
    verdict_line(&mut out, "structural", &r.is_csnk);
    verdict_line(&mut out, "sentences", &r.csnk_by_sentences);
    out.push_str("sentences:\n");
    verdict_line(&mut out, "Subgp", &r.sentences.subgp);
    verdict_line(&mut out, "Nil", &r.sentences.nil);
    verdict_line(&mut out, "Mal", &r.sentences.mal);
    writeln!(out, "maximal nil_k subgroups: {}", r.maximal_nilk_subgroups.len()).unwrap();
    for h in &r.maximal_nilk_subgroups {
        writeln!(out, "  order {:<4} generators {:?}", h.order, h.generators).unwrap();
    }
    if let Some(w) = &r.dichotomy {
        writeln!(out, "dichotomy: {}", witness(w)).unwrap();
    }
    out
}

fn finding(f: &Finding) -> String {
    let mut s = format!("    {} [{}]: {}", f.group, f.provenance, f.detail);
    if let Some(w) = &f.witness {
        write!(s, "; {}", witness(w)).unwrap();
    }
    s
}

pub fn harness(run: &HarnessRun) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "corpus: {} groups of order <= {}; k = {:?}",
        run.corpus_size, run.max_order, run.ks
    )
    .unwrap();
    for r in &run.reports {
        write!(
            out,
            "k={} {:<24}{:<11}groups={:<4} counterexamples={} skipped={}",
            r.k,
            r.id.as_str(),
            status(r.status),
            r.groups_checked,
            r.counterexamples.len(),
            r.skipped.len()
        )
        .unwrap();
        if let Some(ms) = r.elapsed_ms {
            write!(out, " elapsed={ms}ms").unwrap();
        }
        out.push('\n');
        for f in &r.counterexamples {
            writeln!(out, "{}", finding(f)).unwrap();
        }
        for s in &r.skipped {
            writeln!(out, "    skipped {}: {}", s.group, s.reason).unwrap();
        }
    }
    for a in &run.agreement {
        writeln!(
            out,
            "k={} {:<24}{:<11}groups={:<4} disagreements={} skipped={}",
            a.k,
            "method_agreement",
            status(a.status),
            a.groups_checked,
            a.disagreements.len(),
            a.skipped.len()
        )
        .unwrap();
        for f in &a.disagreements {
            writeln!(out, "{}", finding(f)).unwrap();
        }
    }
    writeln!(out, "overall: {}", status(run.status)).unwrap();
    out
}

pub fn malnormality(factor: &str, copies: usize, r: &MalnormalityReport) -> String {
    let mut out = String::new();
    writeln!(out, "free product of {copies} copies of {factor}").unwrap();
    writeln!(out, "z: {}", r.z).unwrap();
    writeln!(
        out,
        "bounds: radius {}, |n|,|m| <= {}, seed {}, extra samples {}",
        r.bounds.radius, r.bounds.exp_bound, r.bounds.seed, r.bounds.extra_samples
    )
    .unwrap();
    for (c, letters) in r.alphabet.iter().enumerate() {
        writeln!(out, "alphabet copy {c}: {}", letters.join(", ")).unwrap();
    }
    writeln!(out, "conjugators checked: {}", r.words_checked).unwrap();
    match &r.witness {
        None => out.push_str("result: no x outside <z> conjugates a power of z into <z> within the bounds\n"),
        Some(w) => writeln!(out, "result: x = {} gives x^-1 z^{} x = z^{}", w.x, w.n, w.m).unwrap(),
    }
    out
}

pub fn example2(a: &str, b: &str, r: &Example2Report) -> String {
    format!(
        "free product {a} * {b}, x = #{} in copy 0, y = #{} in copy 1\nx^-1 (xy) x = {}\n(xy)^-1     = {}\nresult: {}\n",
        r.x,
        r.y,
        r.conjugate,
        r.inverse,
        holds(r.holds)
    )
}

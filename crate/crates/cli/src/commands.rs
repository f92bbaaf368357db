use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use fixedbitset::FixedBitSet;
use serde_json::{json, Value};

use semidef::bits::{cmp_bitstring, full, to_bit_string};
use semidef::circuit::{
    build_with, build_y0, definable_assignments, discretize as discretize_circuit, parse_circuit, presentation,
    presentations, truncated_filters, verify_iso, Circuit,
};
use semidef::finspace::{
    is_open_metric, isolated_components, search_strategies, search_strategy, specialization_dot, to_json, CellSet,
    DiscreteSpace,
};
use semidef::gate::{
    allowed_states, cell_metric, cell_metrics, dagger_patterns, discretize, discretize_dagger, oracle, probe_non_saturated,
    CellMetric, DAGGER_TERMINALS, GATE_TERMINALS,
};
use semidef::order::{as_lattice, filter_lattice, filters, parse_poset, FiniteLattice, MeetSemilattice};
use semidef::rational::{format_rational, parse_rational, rat};
use semidef::tower::{side_copies_forced, solder_y_truncation, tower_by_name, ExactPair, LimitFamily, TowerKind};
use semidef::Rational;

use crate::dot::{circuit_dot, hasse_dot};
use crate::report::{digest, input_err, InputError, Verdict};

pub type Outcome = Result<(String, Verdict, Value), InputError>;

/// Search settings shared by every command that runs a definability oracle.
#[derive(Debug, Clone)]
pub struct SearchOpts {
    pub metric: String,
    pub search: String,
    pub max_candidates: u64,
}

fn read(path: &Path) -> Result<(String, String), InputError> {
    let bytes = std::fs::read(path).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    let d = digest(&bytes);
    let text = String::from_utf8(bytes).map_err(|_| InputError(format!("{}: not UTF-8", path.display())))?;
    Ok((text, d))
}

fn metric(name: &str) -> Result<Box<dyn CellMetric>, InputError> {
    cell_metric(name).ok_or_else(|| {
        let known: Vec<&str> = cell_metrics().iter().map(|m| m.name()).collect();
        InputError(format!("unknown metric `{name}` (known: {})", known.join(", ")))
    })
}

fn strategy_names() -> Vec<&'static str> {
    search_strategies().iter().map(|s| s.name()).collect()
}

fn r_min_for(n: usize, given: Option<&str>) -> Result<Rational, InputError> {
    let r = match given {
        Some(text) => parse_rational(text)?,
        None => rat(2, n as i64),
    };
    if r < rat(0, 1) || r >= rat(1, 1) {
        return input_err(format!("r-min must lie in [0, 1), got {}", format_rational(&r)));
    }
    Ok(r)
}

fn bit_patterns(p: &[Vec<bool>]) -> Vec<String> {
    p.iter().map(|v| v.iter().map(|&b| if b { '1' } else { '0' }).collect()).collect()
}

fn node_patterns(c: &Circuit) -> Vec<Vec<bool>> {
    let mut p: Vec<Vec<bool>> = definable_assignments(c)
        .iter()
        .map(|a| (0..c.node_count()).map(|i| a.contains(i)).collect())
        .collect();
    p.sort();
    p
}

fn lattice(text: &str) -> Result<FiniteLattice, InputError> {
    Ok(as_lattice(parse_poset(text)?)?)
}

fn build_presentation(l: &FiniteLattice, name: &str) -> Result<Circuit, InputError> {
    let p = presentation(name).ok_or_else(|| {
        let known: Vec<&str> = presentations().iter().map(|p| p.name()).collect();
        InputError(format!("unknown presentation `{name}` (known: {}, minimal)", known.join(", ")))
    })?;
    Ok(build_with(l, &p.triples(l))?)
}

pub fn verify_lattice(
    file: &Path,
    pres: &str,
    oracle_n: Option<usize>,
    emit_circuit: bool,
    opts: &SearchOpts,
) -> Outcome {
    let (text, d) = read(file)?;
    let l = lattice(&text)?;
    let c = build_presentation(&l, pres)?;
    let defs = definable_assignments(&c);
    let mut results = json!({
        "elements": l.len(),
        "presentation": pres,
        "nodes": c.node_count(),
        "gates": c.gates().len(),
        "definables": defs.len(),
    });
    let mut ok = match verify_iso(&l, &c) {
        Ok(map) => {
            let m: BTreeMap<&str, String> = (0..l.len()).map(|a| (l.label(a), c.render(&defs[map[a]]))).collect();
            results["iso"] = json!(m);
            true
        }
        Err(e) => {
            results["failure"] = json!(e.to_string());
            false
        }
    };
    if let Some(n) = oracle_n {
        let m = metric(&opts.metric)?;
        let strategy = search_strategy(&opts.search)?;
        let s = discretize_circuit(&c, n, m.as_ref(), 100_000)?;
        let r = rat(2, n as i64);
        let terminals: Vec<&str> = c.nodes().iter().map(|s| s.as_str()).collect();
        let rep = oracle(&s, &terminals, r, strategy.as_ref(), opts.max_candidates)?;
        let agree = rep.pattern_set() == node_patterns(&c);
        ok &= agree;
        results["oracle"] = json!({
            "n": n,
            "r_min": format_rational(&r),
            "metric": m.name(),
            "cells": s.len(),
            "candidates": rep.candidates,
            "sets": rep.sets.len(),
            "patterns_match": agree,
        });
    }
    if emit_circuit {
        results["circuit"] = serde_json::to_value(c.to_file()).expect("circuit files serialize");
    }
    Ok((d, Verdict::from_bool(ok), results))
}

/// A discretized gate, its terminal tags and the patterns it should produce.
type GateSetup = (DiscreteSpace, Vec<&'static str>, Vec<Vec<bool>>);

fn gate_space(variant: &str, n: usize, m: &dyn CellMetric) -> Result<GateSetup, InputError> {
    match variant {
        "plain" => {
            let mut expected: Vec<Vec<bool>> = allowed_states().iter().map(|s| s.as_pattern()).collect();
            expected.sort();
            Ok((discretize(n, m)?, GATE_TERMINALS.to_vec(), expected))
        }
        "dagger" => Ok((discretize_dagger(n, m)?, DAGGER_TERMINALS.to_vec(), dagger_patterns())),
        other => input_err(format!("unknown variant `{other}` (known: plain, dagger)")),
    }
}

/// True when `q` differs from a member of `known` only outside the
/// metrically isolated cells.
fn below_resolution(s: &DiscreteSpace, known: &[CellSet], q: &CellSet, r: Rational) -> bool {
    let mut isolated = s.empty_set();
    for u in isolated_components(s, r) {
        isolated.union_with(&u);
    }
    known.iter().any(|k| {
        let mut diff = k.clone();
        diff.symmetric_difference_with(q);
        diff.is_disjoint(&isolated)
    })
}

pub struct GateArgs<'a> {
    pub variant: &'a str,
    pub n: usize,
    pub r_min: Option<&'a str>,
    pub probes: usize,
    pub seed: u64,
    pub emit_space: bool,
}

pub fn gate_oracle(a: &GateArgs, opts: &SearchOpts, digest_of: &str) -> Outcome {
    if a.n < 2 {
        return input_err(format!("--n must be at least 2, got {}", a.n));
    }
    let m = metric(&opts.metric)?;
    let strategy = search_strategy(&opts.search).map_err(|e| InputError(format!("{e} (known: {})", strategy_names().join(", "))))?;
    let r = r_min_for(a.n, a.r_min)?;
    let (s, terminals, expected) = gate_space(a.variant, a.n, m.as_ref())?;
    let rep = oracle(&s, &terminals, r, strategy.as_ref(), opts.max_candidates)?;
    let found = rep.pattern_set();
    let ok = found == expected;
    let mut results = json!({
        "variant": a.variant,
        "n": a.n,
        "r_min": format_rational(&r),
        "metric": m.name(),
        "search": strategy.name(),
        "cells": s.len(),
        "open_metric": is_open_metric(&s, r),
        "candidates": rep.candidates,
        "sets": rep.sets.len(),
        "patterns": bit_patterns(&found),
        "expected": bit_patterns(&expected),
        "terminals": terminals,
    });
    if a.probes > 0 {
        let p = probe_non_saturated(&s, &rep.sets, r, a.probes, a.seed)?;
        let below = p.definable.iter().filter(|(_, q)| below_resolution(&s, &rep.sets, q, r)).count();
        results["probe"] = json!({
            "samples": p.samples,
            "seed": a.seed,
            "extra_definable": p.definable.len(),
            "below_resolution": below,
            "first_hits": p.definable.iter().take(5).map(|(i, _)| i).collect::<Vec<_>>(),
        });
    }
    if a.emit_space {
        results["space"] = serde_json::from_str(&to_json(&s)).expect("space JSON round-trips");
    }
    Ok((digest_of.to_string(), Verdict::from_bool(ok), results))
}

pub fn tower(kind: &str, n: usize, limit: bool, depth: usize, digest_of: &str) -> Outcome {
    if n < 1 {
        return input_err("--n must be at least 1");
    }
    let t = tower_by_name(kind)?;
    let c = t.truncate(n)?;
    let sets = definable_assignments(&c);
    let expected = if t.kind() == TowerKind::ExactPair { n + 4 } else { n + 2 };
    let chain = sets.iter().all(|a| sets.iter().all(|b| a.is_subset(b) || b.is_subset(a)));
    let members = t.members(depth.max(n + 2));
    let mut incoherent = Vec::new();
    for level in 1..=n {
        let at = definable_assignments(&t.truncate(level)?);
        for d in &members {
            if !t.restrict(d, level).map(|a| at.contains(&a)).unwrap_or(false) {
                incoherent.push(format!("{} at n={level}", t.label(d)));
            }
        }
    }
    let mut ok = sets.len() == expected && incoherent.is_empty();
    let mut results = json!({
        "kind": t.name(),
        "n": n,
        "nodes": c.node_count(),
        "gates": c.gates().len(),
        "definables": sets.len(),
        "expected": expected,
        "chain": chain,
        "assignments": sets.iter().map(|a| c.render(a)).collect::<Vec<_>>(),
        "coherence": { "members": members.len(), "levels": n, "failures": incoherent },
    });
    if limit {
        let family = LimitFamily::new(t.kind());
        let labels: Vec<String> = members.iter().map(|d| t.label(d)).collect();
        let mut missing = Vec::new();
        for x in &members {
            for y in &members {
                if family.meet_exists(x, y)?.is_none() {
                    missing.push((t.label(x), t.label(y)));
                }
            }
        }
        let mut lim = json!({ "members": labels, "pairs_without_meet": missing.len() });
        if t.kind() == TowerKind::ExactPair {
            let (x, y) = ExactPair.pair();
            let meet = family.meet_exists(&x, &y)?;
            ok &= meet.is_none();
            lim["pair"] = json!([t.label(&x), t.label(&y)]);
            lim["meet_exists"] = match &meet {
                Some(d) => json!(t.label(d)),
                None => Value::Null,
            };
            lim["outcome"] = serde_json::to_value(family.meet(&x, &y)?).expect("outcomes serialize");
        } else {
            ok &= missing.is_empty();
        }
        results["limit"] = lim;
    }
    Ok((digest_of.to_string(), Verdict::from_bool(ok), results))
}

pub fn filters_cmd(file: &Path, include_empty: bool, as_lat: bool) -> Outcome {
    let (text, d) = read(file)?;
    let m = MeetSemilattice::from_poset(parse_poset(&text)?)?;
    let fs = filters(&m, include_empty);
    let mut results = json!({
        "elements": m.len(),
        "include_empty": include_empty,
        "count": fs.len(),
        "filters": fs.iter().map(|f| f.render(&m)).collect::<Vec<_>>(),
    });
    let mut ok = true;
    if as_lat {
        match filter_lattice(&m, include_empty) {
            Ok(l) => {
                let covers: Vec<(String, String)> = l
                    .poset()
                    .covers()
                    .into_iter()
                    .map(|(a, b)| (l.label(a).to_string(), l.label(b).to_string()))
                    .collect();
                results["lattice"] = json!({
                    "size": l.len(),
                    "bottom": l.label(l.bottom()),
                    "top": l.label(l.top()),
                    "covers": covers,
                });
            }
            Err(e) => {
                results["lattice"] = json!({ "error": e.to_string() });
                ok = false;
            }
        }
    }
    Ok((d, Verdict::from_bool(ok), results))
}

fn complement(a: &FixedBitSet) -> FixedBitSet {
    let mut c = full(a.len());
    c.difference_with(a);
    c
}

pub fn y0(file: &Path, enumeration: Option<&str>, k: Option<usize>, solder: bool) -> Outcome {
    let (text, d) = read(file)?;
    let m = MeetSemilattice::from_poset(parse_poset(&text)?)?;
    let Some(bottom) = m.bottom() else {
        return input_err("the semilattice has no bottom element");
    };
    let order: Vec<usize> = match enumeration {
        Some(list) => list
            .split(',')
            .map(|l| {
                m.poset()
                    .index_of(l.trim())
                    .ok_or_else(|| InputError(format!("unknown element `{}` in --enumeration", l.trim())))
            })
            .collect::<Result<_, _>>()?,
        None => std::iter::once(bottom).chain((0..m.len()).filter(|&x| x != bottom)).collect(),
    };
    let k = k.unwrap_or(m.len());
    let c = build_y0(&m, &order, k)?;
    let sets = definable_assignments(&c);
    let fs = truncated_filters(&m, &order, k);
    let mut offs: Vec<FixedBitSet> = sets.iter().map(complement).collect();
    offs.sort_by(cmp_bitstring);
    let matches = offs == fs;
    let joins = sets.iter().all(|a| {
        sets.iter().all(|b| {
            let mut j = a.clone();
            j.union_with(b);
            sets.contains(&j)
        })
    });
    let antitone = fs
        .iter()
        .all(|f| fs.iter().all(|g| !f.is_subset(g) || complement(g).is_subset(&complement(f))));
    let mut ok = matches && joins && antitone;
    let mut results = json!({
        "k": k,
        "enumeration": order.iter().map(|&e| m.label(e)).collect::<Vec<_>>(),
        "rails": c.nodes(),
        "gates": c.gates().len(),
        "definables": sets.len(),
        "truncated_filters": fs.iter().map(to_bit_string).collect::<Vec<_>>(),
        "filters_match": matches,
        "joins_pointwise": joins,
        "antitone": antitone,
    });
    if solder {
        let y = solder_y_truncation(&m, &order, k)?;
        let forced = side_copies_forced(&y);
        ok &= forced.is_ok();
        results["soldered"] = json!({
            "nodes": y.circuit.node_count(),
            "gates": y.circuit.gates().len(),
            "side_copies_forced": forced.is_ok(),
            "definables": forced.as_ref().ok(),
            "offender": forced.as_ref().err().map(|a| y.circuit.render(a)),
        });
    }
    Ok((d, Verdict::from_bool(ok), results))
}

pub struct DotArgs<'a> {
    pub object: &'a str,
    pub input: Option<&'a PathBuf>,
    pub presentation: &'a str,
    pub n: usize,
    pub out: &'a Path,
}

pub fn export_dot(a: &DotArgs, opts: &SearchOpts, digest_of: &str) -> Outcome {
    let need_input = || a.input.ok_or_else(|| InputError(format!("`{}` needs --input", a.object)));
    let (dot, nodes, edges, d) = match a.object {
        "hasse" => {
            let (text, d) = read(need_input()?)?;
            let (dot, n, e) = hasse_dot(&parse_poset(&text)?);
            (dot, n, e, d)
        }
        "circuit" => {
            let (text, d) = read(need_input()?)?;
            let (dot, n, e) = circuit_dot(&parse_circuit(&text)?);
            (dot, n, e, d)
        }
        "lattice-circuit" => {
            let (text, d) = read(need_input()?)?;
            let c = build_presentation(&lattice(&text)?, a.presentation)?;
            let (dot, n, e) = circuit_dot(&c);
            (dot, n, e, d)
        }
        "gate" | "dagger" => {
            let m = metric(&opts.metric)?;
            let variant = if a.object == "gate" { "plain" } else { "dagger" };
            let (s, _, _) = gate_space(variant, a.n, m.as_ref())?;
            let dot = specialization_dot(&s);
            let edges = dot.lines().filter(|l| l.contains("->")).count();
            (dot, s.len(), edges, digest_of.to_string())
        }
        other => return input_err(format!("unknown object `{other}` (known: hasse, circuit, lattice-circuit, gate, dagger)")),
    };
    std::fs::write(a.out, &dot).map_err(|e| InputError(format!("{}: {e}", a.out.display())))?;
    let results = json!({
        "object": a.object,
        "nodes": nodes,
        "edges": edges,
        "out": a.out.display().to_string(),
        "dot_digest": digest(dot.as_bytes()),
    });
    Ok((d, Verdict::Pass, results))
}

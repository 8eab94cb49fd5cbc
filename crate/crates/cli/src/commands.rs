use std::fmt::Write as _;
use std::path::Path;

use latkit::claims::{Status, VerificationReport};
use latkit::congruence::{all_congruences, is_subdirectly_irreducible, principal_congruence};
use latkit::covers::{
    classify_cover, irredundant_covers, minimal_join_covers, refine_to_minimal, refine_to_tight, render_members,
    tight_covers,
};
use latkit::enumerate::{enumerate_lattices, filter_catalog, Predicate};
use latkit::kd::{build_kd, BoundedDistributiveLattice};
use latkit::seeds::{is_pre_seed, is_quasi_seed, is_seed, is_strongly_spatial, SeedFailure};
use latkit::terms::{
    holds_sdj, holds_sentence_1storder, is_distributive, is_join_semidistributive, is_modular, is_n_distributive,
    parse_term, refute as refute_identity, render_assignment, Assignment, Refutation,
};
use latkit::{io, ElementSet, Lattice, Limits, Verdict};
use serde_json::{json, Value};

use crate::{load, CliError, CongruencesArgs, CoversArgs, EnumerateArgs, Output, PropsArgs, RefuteArgs, SeedsArgs};

fn ok(text: String, json: Value) -> Result<Output, CliError> {
    Ok(Output { text, json, failed: false })
}

fn labels(l: &Lattice, set: &ElementSet) -> Vec<String> {
    set.iter().map(|x| l.label(x).to_string()).collect()
}

fn assignment_json(l: &Lattice, a: &Assignment) -> Value {
    a.iter().map(|(v, &x)| (v.clone(), Value::from(l.label(x)))).collect::<serde_json::Map<_, _>>().into()
}

pub fn validate(file: &Path) -> Result<Output, CliError> {
    let l = load(file)?;
    let text = format!("valid lattice {}: {} elements, {} covers\n", l.name(), l.len(), l.covers().len());
    ok(text, json!({ "name": l.name(), "valid": true, "elements": l.len(), "covers": l.covers().len() }))
}

/// One property line: `name: VALID` or `name: INVALID (witness)`.
struct Line {
    name: String,
    witness: Option<(String, Value)>,
}

fn line<W>(name: String, v: Verdict<W>, render: impl FnOnce(&W) -> (String, Value)) -> Line {
    Line { name, witness: v.witness().map(render) }
}

pub fn props(a: &PropsArgs, limits: &Limits) -> Result<Output, CliError> {
    let l = load(&a.file)?;
    let assign = |w: &Assignment| (render_assignment(&l, w), assignment_json(&l, w));
    let mut lines = Vec::new();
    let none = a.ndistr.is_none() && !a.modular && !a.distributive && !a.jsd && a.sdj.is_none() && !a.sentence;
    if let Some(n) = a.ndistr {
        if n == 0 {
            return Err(CliError::Input("--ndistr needs n >= 1".into()));
        }
        lines.push(line(format!("n-distributive({n})"), is_n_distributive(&l, n, limits)?, assign));
    }
    if a.modular || none {
        lines.push(line("modular".into(), is_modular(&l, limits)?, assign));
    }
    if a.distributive || none {
        lines.push(line("distributive".into(), is_distributive(&l, limits)?, assign));
    }
    if a.jsd || none {
        let v = is_join_semidistributive(&l, limits)?;
        lines.push(line("join-semidistributive".into(), v, |&(x, y, z)| {
            let names = [x, y, z].map(|e| l.label(e).to_string());
            (format!("x={}, y={}, z={}", names[0], names[1], names[2]), json!({"x": names[0], "y": names[1], "z": names[2]}))
        }));
    }
    if let Some(n) = a.sdj {
        lines.push(line(format!("sdj({n})"), holds_sdj(&l, n, limits)?, assign));
    }
    if a.sentence {
        let v = holds_sentence_1storder(&l, limits)?;
        lines.push(line("sentence".into(), v, |w| {
            let names = w.map(|e| l.label(e).to_string());
            (
                format!("x={}, y={}, z={}, t1={}, t2={}", names[0], names[1], names[2], names[3], names[4]),
                json!({"x": names[0], "y": names[1], "z": names[2], "t1": names[3], "t2": names[4]}),
            )
        }));
    }
    let mut text = String::new();
    let mut items = Vec::new();
    for ln in &lines {
        match &ln.witness {
            None => writeln!(text, "{}: VALID", ln.name).unwrap(),
            Some((w, _)) => writeln!(text, "{}: INVALID ({w})", ln.name).unwrap(),
        }
        items.push(json!({
            "property": ln.name,
            "valid": ln.witness.is_none(),
            "counterexample": ln.witness.as_ref().map(|(_, j)| j.clone()),
        }));
    }
    ok(text, json!({ "lattice": l.name(), "properties": items }))
}

pub fn covers(a: &CoversArgs, limits: &Limits) -> Result<Output, CliError> {
    let l = load(&a.file)?;
    let p = l.index_of(&a.element)?;
    if let Some(list) = &a.refine {
        let e = l.parse_set(list)?;
        let class = classify_cover(&l, p, &e)?;
        let tight = refine_to_tight(&l, p, &e)?;
        let minimal = refine_to_minimal(&l, p, &e)?;
        let text = format!(
            "given: {}\ntight: {}\nminimal: {}\n",
            class.render(&l),
            render_members(&l, &tight),
            render_members(&l, &minimal)
        );
        let json = json!({
            "element": a.element,
            "given": { "members": labels(&l, &e), "kind": class.kind.to_string() },
            "tight": labels(&l, &tight),
            "minimal": labels(&l, &minimal),
        });
        return ok(text, json);
    }
    let (kind, sets) = if a.tight {
        ("tight", tight_covers(&l, p, limits)?)
    } else if a.irredundant {
        ("irredundant", irredundant_covers(&l, p, limits)?)
    } else {
        ("minimal", minimal_join_covers(&l, p, limits)?)
    };
    let mut text = String::new();
    let mut items = Vec::new();
    for e in &sets {
        let c = classify_cover(&l, p, e)?;
        writeln!(text, "{}", c.render(&l)).unwrap();
        items.push(json!({ "members": labels(&l, e), "kind": c.kind.to_string(), "exact": c.exact }));
    }
    ok(text, json!({ "element": a.element, "listing": kind, "covers": items }))
}

pub fn congruences(a: &CongruencesArgs, limits: &Limits) -> Result<Output, CliError> {
    let l = load(&a.file)?;
    let mut text = String::new();
    let mut json = serde_json::Map::new();
    if let Some(pair) = &a.principal {
        let xs = l.parse_set(pair)?;
        let ids: Vec<usize> = pair.split(',').map(|s| l.index_of(s.trim())).collect::<Result<_, _>>()?;
        let [x, y] = ids[..] else {
            return Err(CliError::Input(format!("--principal expects two labels, got {}", xs.len())));
        };
        let c = principal_congruence(&l, x, y);
        writeln!(text, "con({},{}): {}", l.label(x), l.label(y), c.render(&l)).unwrap();
        json.insert("principal".into(), c.render(&l).into());
    }
    if a.si {
        let (si, monolith) = is_subdirectly_irreducible(&l);
        match &monolith {
            Some(m) => writeln!(text, "subdirectly irreducible: yes, monolith {}", m.render(&l)).unwrap(),
            None => writeln!(text, "subdirectly irreducible: no").unwrap(),
        }
        json.insert("subdirectly_irreducible".into(), si.into());
        json.insert("monolith".into(), monolith.map(|m| m.render(&l)).into());
    }
    if a.principal.is_none() && !a.si {
        let all = all_congruences(&l, limits)?;
        for c in &all {
            writeln!(text, "{}", c.render(&l)).unwrap();
        }
        json.insert("congruences".into(), all.iter().map(|c| c.render(&l)).collect::<Vec<_>>().into());
    }
    ok(text, json.into())
}

pub fn seeds(a: &SeedsArgs, limits: &Limits) -> Result<Output, CliError> {
    let l = load(&a.file)?;
    let mut text = String::new();
    let mut items = Vec::new();
    let mut report = |name: &str, v: Verdict<SeedFailure>| {
        match v.witness() {
            None => writeln!(text, "{name}: VALID").unwrap(),
            Some(f) => writeln!(text, "{name}: INVALID ({})", f.render(&l)).unwrap(),
        }
        items.push(json!({ "property": name, "valid": v.holds(), "reason": v.witness().map(|f| f.render(&l)) }));
    };
    if let Some(list) = &a.subset {
        let sigma = l.parse_set(list)?;
        let none = !a.pre && !a.quasi && !a.seed;
        if a.pre || none {
            report("pre-seed", is_pre_seed(&l, &sigma, limits)?);
        }
        if a.quasi || none {
            report("quasi-seed", is_quasi_seed(&l, &sigma, limits)?);
        }
        if a.seed || none {
            report("seed", is_seed(&l, &sigma, limits)?);
        }
    }
    if a.strong {
        report("strongly spatial", is_strongly_spatial(&l, limits)?);
    }
    ok(text, json!({ "lattice": l.name(), "subset": a.subset, "properties": items }))
}

pub fn kd(dist: &Path, limits: &Limits) -> Result<Output, CliError> {
    let d = BoundedDistributiveLattice::new(load(dist)?, limits)?;
    let k = build_kd(&d);
    let text = io::write_lattice(k.lattice());
    let json: Value = serde_json::from_str(&text).expect("lattice files are json");
    ok(text + "\n", json)
}

pub fn enumerate(a: &EnumerateArgs, limits: &Limits) -> Result<Output, CliError> {
    let catalog = enumerate_lattices(a.size, limits)?;
    let lattices: Vec<Lattice> = match &a.filter {
        Some(p) => {
            let pred: Predicate = p.parse()?;
            filter_catalog(catalog, pred, limits).collect::<Result<_, _>>()?
        }
        None => catalog.collect(),
    };
    if let Some(dir) = &a.emit_dir {
        std::fs::create_dir_all(dir)?;
        for l in &lattices {
            std::fs::write(dir.join(format!("{}.json", l.name())), io::write_lattice(l) + "\n")?;
        }
    }
    let text = if a.count_only || a.emit_dir.is_some() {
        format!("{}\n", lattices.len())
    } else {
        lattices.iter().map(|l| io::write_lattice_compact(l) + "\n").collect()
    };
    let mut json = json!({ "size": a.size, "filter": a.filter, "count": lattices.len() });
    if !a.count_only {
        json["lattices"] = lattices
            .iter()
            .map(|l| serde_json::from_str::<Value>(&io::write_lattice_compact(l)).expect("lattice files are json"))
            .collect::<Vec<_>>()
            .into();
    }
    ok(text, json)
}

pub fn refute(a: &RefuteArgs, limits: &Limits) -> Result<Output, CliError> {
    let s = parse_term(&a.lhs).map_err(|e| CliError::Input(format!("--lhs: {e}")))?;
    let t = parse_term(&a.rhs).map_err(|e| CliError::Input(format!("--rhs: {e}")))?;
    if a.ndistr == Some(0) {
        return Err(CliError::Input("--ndistr needs n >= 1".into()));
    }
    match refute_identity(&s, &t, a.ndistr, a.max_size, limits)? {
        Refutation::Counterexample { lattice, assignment } => {
            let text = format!(
                "counterexample in {} ({} elements): {}\n{}\n",
                lattice.name(),
                lattice.len(),
                render_assignment(&lattice, &assignment),
                io::write_lattice_compact(&lattice)
            );
            let json = json!({
                "result": "counterexample",
                "lattice": serde_json::from_str::<Value>(&io::write_lattice_compact(&lattice)).expect("json"),
                "assignment": assignment_json(&lattice, &assignment),
            });
            ok(text, json)
        }
        Refutation::Exhausted(n) => ok(
            format!("no counterexample among lattices with at most {n} elements\n"),
            json!({ "result": "exhausted", "max_size": n }),
        ),
    }
}

pub fn dot(file: &Path) -> Result<Output, CliError> {
    let l = load(file)?;
    let text = io::to_dot(&l);
    ok(text.clone(), json!({ "dot": text }))
}

pub fn verify(report: &VerificationReport) -> Output {
    let mut text = String::new();
    for c in &report.claims {
        writeln!(text, "{} {}: {} ({})", c.id, c.status, c.anchor, c.details).unwrap();
    }
    let fails = report.claims.iter().filter(|c| c.status == Status::Fail).count();
    writeln!(text, "{} claims, {} failed", report.claims.len(), fails).unwrap();
    Output {
        text,
        json: serde_json::to_value(report).expect("report serializes"),
        failed: !report.passed(),
    }
}

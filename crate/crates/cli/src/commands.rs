use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use movoid::classify::{
    are_isomorphic, default_symplectic_group, enumerate_solutions, isomorphism_classes,
    transport_to_standard, SearchOptions, SearchProblem,
};
use movoid::glued::{
    build_glued, glued_polar_space, lemma_suite_glued, theorem_second_movoid, GluedConfig,
};
use movoid::pencil::{build_pencil, lemma_suite_pencil, theorem_first_movoid, PencilConfig};
use movoid::pointfile::{PointFile, SpaceKind};
use movoid::polar::PolarSpace;
use movoid::report::LemmaReport;
use movoid::verify::{
    hyperplane_check, hyperplane_values, is_m_ovoid, spectra, spectra_with_all_lines, PointSet,
};
use movoid::{Error, Result};
use serde_json::{json, Value};

use crate::manifest::{write_record, write_stamped, Manifest, Timings};
use crate::{ClassifyArgs, ExportFormat, GluedParams, PencilParams, VerifyArgs};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILED: u8 = 1;
pub const EXIT_EMPTY: u8 = 3;

/// What a command prints and how it exits.
pub struct Outcome {
    pub code: u8,
    pub summary: String,
    pub json: Value,
}

fn space_name(n: usize, q: u32) -> String {
    format!("W({}, {q})", 2 * n + 1)
}

fn to_json_text(value: &impl serde::Serialize) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn pencil_config(p: PencilParams) -> PencilConfig {
    PencilConfig {
        n: p.n,
        q: p.q,
        delta: p.delta,
        mu: p.mu,
    }
}

fn glued_config(p: GluedParams) -> GluedConfig {
    GluedConfig {
        q: p.q,
        omega: p.omega,
        gamma: p.gamma,
    }
}

/// Re-checks a constructed set before anything is written.
fn reverify(space: &PolarSpace, set: &PointSet, expected_m: usize) -> Result<()> {
    match is_m_ovoid(space, set) {
        Some(m) if m == expected_m && hyperplane_check(space, set, m) => Ok(()),
        found => Err(Error::Construction(format!(
            "constructed set failed verification: expected a {expected_m}-ovoid, found {found:?}"
        ))),
    }
}

pub fn construct_pencil(params: PencilParams, out: &Path) -> Result<Outcome> {
    let mut timings = Timings::default();
    let geom = timings.time("build", || build_pencil(pencil_config(params)))?;
    let set = timings.time("construct", || theorem_first_movoid(&geom))?;
    let m = geom.expected_m();
    timings.time("verify", || reverify(&geom.w0, &set, m))?;

    let (n, q, mu, delta) = (geom.n(), geom.q(), geom.mu(), geom.delta);
    let command = [
        "construct",
        "pencil",
        "--n",
        &n.to_string(),
        "--q",
        &q.to_string(),
    ]
    .into_iter()
    .map(String::from)
    .chain([
        "--mu".into(),
        mu.to_string(),
        "--delta".into(),
        delta.to_string(),
    ])
    .collect();
    let manifest = Manifest::new(
        command,
        json!({ "n": n, "q": q, "mu": mu, "delta": delta }),
        vec![geom.field().spec()],
    );
    let mut file = PointFile::new(SpaceKind::Pencil, &geom.w0, &set);
    file.manifest = Some(manifest.to_value());
    write_stamped(out, &file.to_json()?, &manifest, &timings)?;

    Ok(Outcome {
        code: EXIT_OK,
        summary: format!(
            "pencil n={n} q={q} mu={mu} delta={delta}: {} points, {m}-ovoid of {}\nwrote {}\n",
            set.len(),
            space_name(n, q),
            out.display()
        ),
        json: json!({
            "construction": "pencil",
            "parameters": { "n": n, "q": q, "mu": mu, "delta": delta },
            "points": set.len(),
            "m": m,
            "out": out,
        }),
    })
}

pub fn construct_glued(
    params: GluedParams,
    out: &Path,
    emit_group: Option<&Path>,
) -> Result<Outcome> {
    let mut timings = Timings::default();
    let geom = timings.time("build", || build_glued(glued_config(params)))?;
    let set = timings.time("construct", || theorem_second_movoid(&geom))?;
    let q = geom.q();
    let m = q as usize + 1;
    timings.time("verify", || reverify(&geom.w, &set, m))?;

    let (omega, gamma) = (geom.omega(), geom.gamma());
    let command = ["construct", "glued", "--q"]
        .into_iter()
        .map(String::from)
        .chain([
            q.to_string(),
            "--omega".into(),
            omega.to_string(),
            "--gamma".into(),
            gamma.to_string(),
        ])
        .collect();
    let manifest = Manifest::new(
        command,
        json!({ "q": q, "omega": omega, "gamma": gamma }),
        vec![geom.base().spec(), geom.ext().spec()],
    )
    .with_constants(geom.constants);
    let mut file = PointFile::new(SpaceKind::Glued, &geom.w, &set);
    file.manifest = Some(manifest.to_value());
    write_stamped(out, &file.to_json()?, &manifest, &timings)?;

    if let Some(path) = emit_group {
        let group = &geom.group;
        let dump = json!({
            "manifest": manifest.to_value(),
            "degree": group.degree(),
            "order": group.order(),
            "generators": group.generators(),
            "elements": group.elements().collect::<Vec<_>>(),
        });
        let mut text = serde_json::to_string(&dump)?;
        text.push('\n');
        write_stamped(path, &text, &manifest, &timings)?;
    }

    Ok(Outcome {
        code: EXIT_OK,
        summary: format!(
            "glued q={q} omega={omega} gamma={gamma}: {} points, {m}-ovoid of {}, group order {}\nwrote {}\n",
            set.len(),
            space_name(2, q),
            geom.group.order(),
            out.display()
        ),
        json: json!({
            "construction": "glued",
            "parameters": { "q": q, "omega": omega, "gamma": gamma },
            "points": set.len(),
            "m": m,
            "group_order": geom.group.order(),
            "out": out,
        }),
    })
}

/// The Σ-coordinate polar space whose form matches the file.
fn glued_space_for(file: &PointFile) -> Result<PolarSpace> {
    let target = file.form.to_bilinear()?;
    let ext_order = file.q * file.q;
    for omega in 0..ext_order {
        if let Ok(space) = glued_polar_space(file.q, Some(omega as u8)) {
            if *space.form() == target {
                return Ok(space);
            }
        }
    }
    Err(Error::Usage(
        "the file's form is not the glued form for any valid ω".into(),
    ))
}

pub fn verify(args: &VerifyArgs) -> Result<Outcome> {
    let file = PointFile::from_json(&fs::read_to_string(&args.points)?)?;
    if file.space != args.space {
        return Err(Error::Usage(format!(
            "file holds a {} point set, not {}",
            file.space, args.space
        )));
    }
    if file.q != args.q || file.n != args.n {
        return Err(Error::Usage(format!(
            "file describes {}, not {}",
            space_name(file.n, file.q),
            space_name(args.n, args.q)
        )));
    }
    let space = match args.space {
        SpaceKind::Standard | SpaceKind::Pencil => PolarSpace::standard(args.n, args.q)?,
        SpaceKind::Glued => {
            if args.n != 2 {
                return Err(Error::Usage("glued point sets live in W(5, q)".into()));
            }
            glued_space_for(&file)?
        }
    };
    let set = file.to_point_set(&space)?;
    let report = if args.all_lines {
        spectra_with_all_lines(&space, &set)
    } else {
        spectra(&space, &set)
    };
    let m = is_m_ovoid(&space, &set);
    let hyperplanes = m.map(|m| hyperplane_check(&space, &set, m));
    let ok = hyperplanes == Some(true);

    let mut summary = format!("{} points in {}\n", set.len(), space_name(args.n, args.q));
    match m {
        Some(m) => {
            let (inside, outside) = hyperplane_values(args.n, args.q as u64, m as u64);
            let _ = writeln!(summary, "{m}-ovoid");
            let _ = writeln!(
                summary,
                "hyperplane intersections {} (expected {inside} inside, {outside} outside)",
                if ok { "match" } else { "DIFFER" }
            );
        }
        None => summary.push_str("not an m-ovoid\n"),
    }
    let _ = writeln!(
        summary,
        "totally isotropic lines contained: {}",
        report.full_line_count
    );

    Ok(Outcome {
        code: if ok { EXIT_OK } else { EXIT_FAILED },
        summary,
        json: json!({
            "space": args.space,
            "q": args.q,
            "n": args.n,
            "points": set.len(),
            "m": m,
            "hyperplane_check": hyperplanes,
            "spectra": report,
        }),
    })
}

fn lemma_outcome(report: LemmaReport) -> Result<Outcome> {
    let mut summary = String::new();
    for c in &report.checks {
        let _ = write!(
            summary,
            "{} {}",
            if c.passed { "PASS" } else { "FAIL" },
            c.name
        );
        if let Some(w) = &c.witness {
            let _ = write!(summary, " ({w})");
        }
        summary.push('\n');
    }
    let passed = report.checks.iter().filter(|c| c.passed).count();
    let _ = writeln!(summary, "{passed}/{} checks passed", report.checks.len());
    Ok(Outcome {
        code: if report.passed() {
            EXIT_OK
        } else {
            EXIT_FAILED
        },
        summary,
        json: serde_json::to_value(&report)?,
    })
}

pub fn check_pencil(params: PencilParams) -> Result<Outcome> {
    let geom = build_pencil(pencil_config(params))?;
    lemma_outcome(lemma_suite_pencil(&geom)?)
}

pub fn check_glued(params: GluedParams) -> Result<Outcome> {
    let geom = build_glued(glued_config(params))?;
    lemma_outcome(lemma_suite_glued(&geom)?)
}

/// Known constructions living in `space`, as labelled point sets.
fn reference_sets(space: &PolarSpace) -> Result<Vec<(&'static str, PointSet)>> {
    let (n, q) = (space.n(), space.q());
    let mut refs = Vec::new();
    if n >= 2 && q >= 2 {
        let geom = build_pencil(PencilConfig::new(n, q, 1))?;
        let elliptic = geom.quadrics[0].zero_points(space.space());
        refs.push((
            "polarizing elliptic quadric",
            PointSet::new(elliptic, space.num_points())?,
        ));
        refs.push(("pencil quadric, mu = 1", theorem_first_movoid(&geom)?));
    }
    if n == 2 && matches!(q, 2 | 4) {
        let geom = build_glued(GluedConfig::new(q))?;
        let set = theorem_second_movoid(&geom)?;
        refs.push((
            "glued orbit construction",
            transport_to_standard(&geom.w, &set, space)?,
        ));
    }
    Ok(refs)
}

pub fn classify(args: &ClassifyArgs, jobs: usize) -> Result<Outcome> {
    let (q, n, m) = (args.q, args.n, args.m);
    let mut timings = Timings::default();
    let space = timings.time("space", || PolarSpace::standard(n, q))?;
    let problem = SearchProblem::m_ovoids(&space, m)?;
    let options = SearchOptions {
        jobs,
        heuristic: args.heuristic,
        ..SearchOptions::default()
    };
    let solutions = timings.time("search", || enumerate_solutions(&problem, options))?;

    let mut command: Vec<String> = [
        "classify",
        "--q",
        &q.to_string(),
        "--n",
        &n.to_string(),
        "--m",
        &m.to_string(),
    ]
    .into_iter()
    .map(String::from)
    .collect();
    if args.iso {
        command.push("--iso".into());
    }
    let manifest = Manifest::new(
        command,
        json!({ "q": q, "n": n, "m": m, "iso": args.iso, "cardinality": problem.cardinality }),
        vec![space.space().field().spec()],
    );

    fs::create_dir_all(&args.out)?;
    let solutions_path = args.out.join("solutions.txt");
    let mut text = String::new();
    for &s in &solutions {
        let members: Vec<String> = PointSet::from_mask(s)
            .members()
            .iter()
            .map(|p| p.to_string())
            .collect();
        text.push_str(&members.join(" "));
        text.push('\n');
    }
    fs::write(&solutions_path, text)?;

    let mut summary = format!(
        "{}, m={m}: {} solutions of size {}\n",
        space_name(n, q),
        solutions.len(),
        problem.cardinality
    );
    let mut result = json!({
        "q": q,
        "n": n,
        "m": m,
        "cardinality": problem.cardinality,
        "solutions": solutions.len(),
    });
    let mut outputs = vec![solutions_path.clone()];

    if args.iso && !solutions.is_empty() {
        let group = timings.time("group", || default_symplectic_group(&space))?;
        let classes = timings.time("orbits", || isomorphism_classes(&solutions, &group, &space))?;
        let refs = timings.time("identify", || reference_sets(&space))?;
        let ps = space.space();
        let mut entries = Vec::new();
        let _ = writeln!(
            summary,
            "{} isomorphism classes under a group of order {}",
            classes.len(),
            group.order()
        );
        for (i, c) in classes.iter().enumerate() {
            let mut matches = Vec::new();
            for (label, set) in &refs {
                if are_isomorphic(&space, &group, &c.representative, set)?.is_some() {
                    matches.push(*label);
                }
            }
            let _ = writeln!(
                summary,
                "class {}: orbit {}, stabilizer {}, {} contained lines{}",
                i + 1,
                c.orbit_size,
                c.stabilizer_order,
                c.invariants.full_line_count,
                if matches.is_empty() {
                    String::new()
                } else {
                    format!(", {}", matches.join("; "))
                }
            );
            entries.push(json!({
                "representative": c.representative.members(),
                "coordinates": c.representative.members().iter().map(|&p| ps.point(p)).collect::<Vec<_>>(),
                "orbit_size": c.orbit_size,
                "stabilizer_order": c.stabilizer_order,
                "invariants": c.invariants,
                "matches": matches,
            }));
        }
        result["group_order"] = json!(group.order());
        result["classes"] = json!(entries);

        let classes_path = args.out.join("classes.json");
        let doc = json!({
            "manifest": manifest.to_value(),
            "q": q,
            "n": n,
            "m": m,
            "total_solutions": solutions.len(),
            "group_order": group.order(),
            "classes": entries,
        });
        fs::write(&classes_path, to_json_text(&doc)?)?;
        outputs.push(classes_path);
    }

    let refs: Vec<&Path> = outputs.iter().map(|p| p.as_path()).collect();
    write_record(&args.out.join("manifest.json"), &manifest, &timings, &refs)?;
    let _ = writeln!(summary, "wrote {}", args.out.display());
    Ok(Outcome {
        code: if solutions.is_empty() {
            EXIT_EMPTY
        } else {
            EXIT_OK
        },
        summary,
        json: result,
    })
}

pub fn export_incidence(
    q: u32,
    n: usize,
    format: ExportFormat,
    out: Option<&Path>,
) -> Result<Outcome> {
    let mut timings = Timings::default();
    let space = timings.time("space", || PolarSpace::standard(n, q))?;
    let inc = space.incidence();
    let fmt_name = match format {
        ExportFormat::Text => "text",
        ExportFormat::Json => "json",
    };
    let command = [
        "export",
        "incidence",
        "--q",
        &q.to_string(),
        "--n",
        &n.to_string(),
        "--format",
        fmt_name,
    ]
    .into_iter()
    .map(String::from)
    .collect();
    let ps = space.space();
    let manifest = Manifest::new(
        command,
        json!({ "q": q, "n": n, "format": fmt_name }),
        vec![ps.field().spec()],
    );
    let contents = match format {
        ExportFormat::Text => inc.to_text(),
        ExportFormat::Json => to_json_text(&json!({
            "manifest": manifest.to_value(),
            "field": ps.field().spec(),
            "form": movoid::forms::FormRecord::from(space.form()),
            "rows": inc.rows,
            "cols": inc.cols(),
            "points": ps.points().map(|(_, c)| c).collect::<Vec<_>>(),
            "columns": inc.columns,
        }))?,
    };
    let info = json!({ "rows": inc.rows, "cols": inc.cols(), "format": fmt_name, "out": out });
    match out {
        Some(path) => {
            write_stamped(path, &contents, &manifest, &timings)?;
            Ok(Outcome {
                code: EXIT_OK,
                summary: format!(
                    "{} points x {} generators, wrote {}\n",
                    inc.rows,
                    inc.cols(),
                    path.display()
                ),
                json: info,
            })
        }
        None => Ok(Outcome {
            code: EXIT_OK,
            summary: contents.clone(),
            json: info_with(info, contents, format)?,
        }),
    }
}

fn info_with(mut info: Value, contents: String, format: ExportFormat) -> Result<Value> {
    info["data"] = match format {
        ExportFormat::Text => Value::String(contents),
        ExportFormat::Json => serde_json::from_str(&contents)?,
    };
    Ok(info)
}

//! Implementations of the subcommands. Each returns both renderings.

use std::fmt::Write as _;
use std::path::Path;

use serde_json::{json, Value};

use segre::bracket::{parse_terms, BracketMonomial, BracketPolynomial, Straightener};
use segre::coeffvar::{
    association_collision, coefficient_span_rank_of, diagnose_configuration,
    interpolate_image_cubic, separation_check_k2, uniform_samples, CoefficientMap,
    CoefficientVector, HomogeneousForm,
};
use segre::grassmann::PointConfiguration;
use segre::multipoly::rational::format_rational;
use segre::multipoly::Side;
use segre::schubert::{chow_lam_degree_uniform, klyachko_delta, Partition};
use segre::segre::{
    block_laplace_dual, double_expansion, segre_det, segre_det_symbolic, SegreShape,
    DEFAULT_SEED,
};
use segre::vision::{
    fundamental_from_points, nine_point_test, synth_scene, FundamentalMatrix,
};
use segre::{Error, ExactMatrix, Rational};

use crate::error::CliError;
use crate::files::{to_json, CorrespondenceFile, MatrixFile, PolynomialFile, TermRecord};
use crate::{references, Basis, CoeffCommand, Command, Output, VisionCommand};

/// Largest number of points for which `--basis raw` is expanded.
pub const RAW_MAX_POINTS: usize = 6;

/// Coordinate lists evaluated by `coeff diagnose`: the five complementary
/// products spanning the (3,2) image, and the same list with the third
/// product written as `[125][345]`.
const DIAGNOSE_CANDIDATES: [(&str, [&str; 5]); 2] = [
    (
        "complementary",
        ["[123][456]", "[124][356]", "[125][346]", "[134][256]", "[135][246]"],
    ),
    (
        "as-listed",
        ["[123][456]", "[124][356]", "[125][345]", "[134][256]", "[135][246]"],
    ),
];

const DIAGNOSE_INVARIANTS: [&str; 1] = ["[123][145][246][245]"];

pub fn execute(command: &Command) -> Result<Output, CliError> {
    match command {
        Command::Expand { k, l, basis, seed } => expand(*k, *l, *basis, *seed),
        Command::Eval { a, b } => eval(a, b),
        Command::Straighten { k, n, input, expr } => straighten(*k, *n, input.as_deref(), expr.as_deref()),
        Command::StandardCount { k, degree } => standard_count(*k, *degree),
        Command::Klyachko { k, n, lambda } => klyachko(*k, *n, lambda),
        Command::ChowlamDegree { k, n, r } => chowlam(*k, *n, *r),
        Command::Vision(v) => vision(v),
        Command::Coeff(c) => coeff(c),
    }
}

fn structured(value: &Value) -> String {
    to_json(value)
}

fn line(out: &mut String, s: impl AsRef<str>) {
    out.push_str(s.as_ref());
    out.push('\n');
}

fn read_matrix(path: &Path) -> Result<ExactMatrix, CliError> {
    MatrixFile::read(path)?.to_matrix(&path.display().to_string())
}

fn matrix_text(m: &ExactMatrix) -> String {
    let mut out = String::new();
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(format_rational).collect();
        line(&mut out, format!("  [{}]", row.join(", ")));
    }
    out
}

fn rationals(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

fn bracket_lists(m: &BracketMonomial) -> Vec<Vec<usize>> {
    m.factors().iter().map(|b| b.indices().to_vec()).collect()
}

fn expand(k: usize, l: usize, basis: Basis, seed: u64) -> Result<Output, CliError> {
    let shape = SegreShape::new(k, l)?;
    match basis {
        Basis::Double => {
            let e = double_expansion(shape, seed)?;
            let mut file = PolynomialFile::from_double(&e.poly);
            file.det_sign = Some(e.det_sign);
            let mut text = String::new();
            line(&mut text, format!("seed: {seed}"));
            line(&mut text, format!("terms: {}", e.poly.len()));
            line(&mut text, format!("det_sign: {}", e.det_sign));
            if let Some((sign, mismatched)) = references::compare(shape, &e.poly) {
                file.reference_sign = Some(sign);
                file.reference_mismatches = Some(mismatched);
                line(
                    &mut text,
                    format!("reference_sign: {sign} ({mismatched} terms differ from the published formula)"),
                );
            }
            line(&mut text, e.poly.to_string());
            Ok(Output {
                text,
                structured: file.print(),
            })
        }
        Basis::Dual => {
            let laplace = block_laplace_dual(shape)?;
            let terms = laplace
                .terms
                .iter()
                .map(|t| {
                    let vars = t
                        .b_monomial()
                        .factors()
                        .iter()
                        .map(|(v, e)| ("b".to_string(), u32::from(v.row), u32::from(v.col), *e))
                        .collect();
                    TermRecord {
                        coeff: (t.column_sign * laplace.row_sign).to_string(),
                        dual: Some(t.blocks.clone()),
                        primal: None,
                        vars: Some(vars),
                    }
                })
                .collect();
            let file = PolynomialFile {
                terms,
                det_sign: Some(1),
                ..Default::default()
            }
            .canonicalize();
            let mut text = String::new();
            line(&mut text, format!("terms: {}", file.terms.len()));
            line(&mut text, format!("row_sign: {}", laplace.row_sign));
            for t in &file.terms {
                let brackets: String = t
                    .dual
                    .iter()
                    .flatten()
                    .map(|b| format!("[{}]", b.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(" ")))
                    .collect();
                let vars: Vec<String> = t
                    .vars
                    .iter()
                    .flatten()
                    .map(|(_, r, c, _)| format!("b[{r},{c}]"))
                    .collect();
                line(&mut text, format!("{:>2} {brackets} {}", t.coeff, vars.join("*")));
            }
            Ok(Output {
                text,
                structured: file.print(),
            })
        }
        Basis::Raw => {
            if shape.n() > RAW_MAX_POINTS {
                return Err(Error::InvalidParameter(format!(
                    "raw expansion is limited to kl <= {RAW_MAX_POINTS}; use --basis double"
                ))
                .into());
            }
            let p = segre_det_symbolic(shape)?;
            let file = PolynomialFile {
                det_sign: Some(1),
                ..PolynomialFile::from_sparse(&p)
            };
            Ok(Output {
                text: format!("terms: {}\n{p}\n", p.len()),
                structured: file.print(),
            })
        }
    }
}

fn eval(a: &Path, b: &Path) -> Result<Output, CliError> {
    let value = segre_det(&read_matrix(a)?, &read_matrix(b)?)?;
    let v = format_rational(&value);
    Ok(Output {
        text: format!("{v}\n"),
        structured: structured(&json!({ "value": v })),
    })
}

fn straighten(k: usize, n: usize, input: Option<&Path>, expr: Option<&str>) -> Result<Output, CliError> {
    let poly = match (input, expr) {
        (Some(path), _) => {
            let file = PolynomialFile::read(path)?;
            let side = match file.bracket_sizes() {
                (_, Some(_)) if file.terms.iter().all(|t| t.dual.is_none()) => Side::B,
                _ => Side::A,
            };
            file.to_brackets(side, k, n)?
        }
        (None, Some(src)) => {
            let raw = parse_terms(src)?;
            let side = raw
                .iter()
                .flat_map(|t| t.brackets.first())
                .map(|b| b.side)
                .next()
                .unwrap_or(Side::A);
            BracketPolynomial::from_raw_terms(side, k, n, &raw)?
        }
        (None, None) => unreachable!("clap requires --input or --expr"),
    };
    let result = Straightener::new().straighten(&poly);
    Ok(Output {
        text: format!("{result}\n"),
        structured: PolynomialFile::from_brackets(&result).print(),
    })
}

fn standard_count(k: usize, degree: usize) -> Result<Output, CliError> {
    if k == 0 {
        return Err(Error::InvalidParameter("bracket size must be positive".into()).into());
    }
    let count = segre::bracket::standard_multilinear_count(k, degree).to_string();
    Ok(Output {
        text: format!("{count}\n"),
        structured: structured(&json!({ "k": k, "degree": degree, "count": count })),
    })
}

fn klyachko(k: usize, n: usize, lambda: &[usize]) -> Result<Output, CliError> {
    let partition = Partition::new(lambda.to_vec())?;
    let delta = klyachko_delta(&partition, k, n)?.to_string();
    Ok(Output {
        text: format!("{delta}\n"),
        structured: structured(&json!({
            "k": k, "n": n, "lambda": partition.parts(), "delta": delta
        })),
    })
}

fn chowlam(k: usize, n: usize, r: usize) -> Result<Output, CliError> {
    let degree = chow_lam_degree_uniform(k, n, r)?.to_string();
    Ok(Output {
        text: format!("{degree}\n"),
        structured: structured(&json!({ "k": k, "n": n, "r": r, "degree": degree })),
    })
}

fn fundamental_output(f: &FundamentalMatrix) -> Output {
    let mut text = String::new();
    line(&mut text, format!("rank: {}", f.rank()));
    text.push_str(&matrix_text(&f.f));
    Output {
        text,
        structured: structured(&json!({
            "rank": f.rank(),
            "fundamental": serde_json::to_value(MatrixFile::from_matrix(&f.f)).expect("matrix"),
        })),
    }
}

fn vision(command: &VisionCommand) -> Result<Output, CliError> {
    match command {
        VisionCommand::Fundamental { pairs } => {
            let pairs = CorrespondenceFile::read(pairs)?.to_pairs(&pairs.display().to_string())?;
            Ok(fundamental_output(&fundamental_from_points(&pairs)?))
        }
        VisionCommand::NinePoint { pairs } => {
            let pairs = CorrespondenceFile::read(pairs)?.to_pairs(&pairs.display().to_string())?;
            let v = format_rational(&nine_point_test(&pairs)?);
            Ok(Output {
                text: format!("{v}\n"),
                structured: structured(&json!({ "value": v })),
            })
        }
        VisionCommand::Synth { k, count, seed } => {
            let scene = synth_scene(*k, *count, *seed)?;
            let file = CorrespondenceFile::from_pairs(
                *k,
                &scene.pairs,
                Some([scene.p1.matrix(), scene.p2.matrix()]),
            );
            let mut text = String::new();
            line(&mut text, format!("seed: {seed}"));
            line(&mut text, "camera 1:");
            text.push_str(&matrix_text(scene.p1.matrix()));
            line(&mut text, "camera 2:");
            text.push_str(&matrix_text(scene.p2.matrix()));
            for (i, p) in scene.pairs.iter().enumerate() {
                line(
                    &mut text,
                    format!("pair {}: ({}) <-> ({})", i + 1, rationals(&p.a).join(", "), rationals(&p.b).join(", ")),
                );
            }
            Ok(Output {
                text,
                structured: file.print(),
            })
        }
    }
}

fn vector_json(v: &CoefficientVector) -> Value {
    json!({
        "basis": v.basis.iter().map(bracket_lists).collect::<Vec<_>>(),
        "values": rationals(&v.values),
    })
}

fn vector_text(v: &CoefficientVector, out: &mut String) {
    for (b, x) in v.basis.iter().zip(&v.values) {
        line(out, format!("  {b}: {}", format_rational(x)));
    }
}

fn form_json(f: &HomogeneousForm) -> Value {
    json!({
        "vars": f.vars,
        "degree": f.degree,
        "terms": f.coeffs.iter().rev().map(|(e, c)| json!({
            "coeff": format_rational(c), "exponents": e
        })).collect::<Vec<_>>(),
    })
}

fn shape_of(a: &ExactMatrix) -> Result<(usize, usize), CliError> {
    let (k, n) = (a.rows(), a.cols());
    if k < 2 || n % k != 0 || n / k < 2 {
        return Err(Error::Shape(format!("a {k}x{n} matrix is not k x kl with k, l >= 2")).into());
    }
    Ok((k, n / k))
}

fn coeff(command: &CoeffCommand) -> Result<Output, CliError> {
    match command {
        CoeffCommand::Map { a } => {
            let a = read_matrix(a)?;
            let (k, l) = shape_of(&a)?;
            let v = CoefficientMap::new(k, l, DEFAULT_SEED)?.apply(&a)?;
            let mut text = String::new();
            vector_text(&v, &mut text);
            Ok(Output {
                text,
                structured: structured(&vector_json(&v)),
            })
        }
        CoeffCommand::Rank(shape) => {
            let rank = coefficient_span_rank_of(&CoefficientMap::new(shape.k, shape.l, DEFAULT_SEED)?)?;
            Ok(Output {
                text: format!("{rank}\n"),
                structured: structured(&json!({ "k": shape.k, "l": shape.l, "rank": rank })),
            })
        }
        CoeffCommand::Cubic { samples, seed } => {
            let result = interpolate_image_cubic(*samples, *seed)?;
            let mut text = String::new();
            line(&mut text, format!("seed: {seed}"));
            for (i, c) in result.coordinates.iter().enumerate() {
                line(&mut text, format!("x{i} = {c}"));
            }
            for f in &result.forms {
                line(&mut text, format!("{f} = 0"));
            }
            Ok(Output {
                text,
                structured: structured(&json!({
                    "seed": seed,
                    "coordinates": result.coordinates.iter().map(bracket_lists).collect::<Vec<_>>(),
                    "forms": result.forms.iter().map(form_json).collect::<Vec<_>>(),
                })),
            })
        }
        CoeffCommand::Collision { a, seed } => {
            let a = match a {
                Some(path) => read_matrix(path)?,
                None => uniform_samples(3, 6, 1, *seed).pop().expect("one sample"),
            };
            let map = CoefficientMap::new(3, 2, DEFAULT_SEED)?;
            let report = association_collision(&map, &PointConfiguration::new(a))?;
            let mut text = String::new();
            line(&mut text, "configuration:");
            text.push_str(&matrix_text(&report.a));
            line(&mut text, "gale dual:");
            text.push_str(&matrix_text(&report.dual));
            line(&mut text, "image:");
            vector_text(&report.image.normalized(), &mut text);
            line(&mut text, "image of the dual:");
            vector_text(&report.dual_image.normalized(), &mut text);
            line(&mut text, format!("images_equal: {}", report.images_equal));
            line(&mut text, format!("orbit_equivalent: {}", report.orbit_equivalent));
            Ok(Output {
                text,
                structured: structured(&json!({
                    "a": serde_json::to_value(MatrixFile::from_matrix(&report.a)).expect("matrix"),
                    "dual": serde_json::to_value(MatrixFile::from_matrix(&report.dual)).expect("matrix"),
                    "image": vector_json(&report.image),
                    "dual_image": vector_json(&report.dual_image),
                    "images_equal": report.images_equal,
                    "orbit_equivalent": report.orbit_equivalent,
                })),
            })
        }
        CoeffCommand::Separate { n, trials, seed } => {
            let report = separation_check_k2(*n, *trials, *seed)?;
            let witnesses: Vec<Value> = report
                .witnesses
                .iter()
                .map(|(x, y)| {
                    json!([
                        serde_json::to_value(MatrixFile::from_matrix(x)).expect("matrix"),
                        serde_json::to_value(MatrixFile::from_matrix(y)).expect("matrix"),
                    ])
                })
                .collect();
            Ok(Output {
                text: format!(
                    "seed: {seed}\nseparated: {}/{}\nwitnesses: {}\n",
                    report.separated,
                    report.trials,
                    report.witnesses.len()
                ),
                structured: structured(&json!({
                    "seed": seed,
                    "n": n,
                    "trials": report.trials,
                    "separated": report.separated,
                    "witnesses": witnesses,
                })),
            })
        }
        CoeffCommand::Diagnose { a } => diagnose(a),
    }
}

fn first_nonzero_normalized(values: &[Rational]) -> Vec<Rational> {
    match values.iter().find(|v| **v != segre::rat(0)) {
        Some(p) => values.iter().map(|v| v / p).collect(),
        None => values.to_vec(),
    }
}

fn diagnose(paths: &[std::path::PathBuf]) -> Result<Output, CliError> {
    let map = CoefficientMap::new(3, 2, DEFAULT_SEED)?;
    let candidates: Vec<(&str, &[&str])> = DIAGNOSE_CANDIDATES
        .iter()
        .map(|(label, list)| (*label, &list[..]))
        .collect();
    let mut text = String::new();
    let mut records = Vec::new();
    for path in paths {
        let a = read_matrix(path)?;
        if a.rows() != 3 || a.cols() != 6 {
            return Err(Error::Shape(format!("{} is not a 3x6 matrix", path.display())).into());
        }
        let config = PointConfiguration::new(a);
        let d = diagnose_configuration(&map, &config, &candidates, &DIAGNOSE_INVARIANTS)?;
        let chart = config.minor(&[1, 2, 3]);
        let _ = writeln!(text, "{}:", path.display());
        line(&mut text, format!("  uniform: {}", d.uniform));
        line(&mut text, format!("  [123]: {}", format_rational(&chart)));
        match &d.image {
            Some(v) => {
                line(&mut text, "  coefficient image (first nonzero = 1):");
                for (b, x) in v.basis.iter().zip(&v.normalized().values) {
                    line(&mut text, format!("    {b}: {}", format_rational(x)));
                }
            }
            None => line(&mut text, "  coefficient image: zero"),
        }
        match &d.normal_form {
            Some(m) => {
                line(&mut text, "  torus normal form:");
                for row in matrix_text(m).lines() {
                    line(&mut text, format!("  {row}"));
                }
            }
            None => line(&mut text, "  torus normal form: undefined"),
        }
        for c in &d.candidates {
            line(
                &mut text,
                format!(
                    "  {}: ({}) normalized ({})",
                    c.label,
                    rationals(&c.values).join(", "),
                    rationals(&first_nonzero_normalized(&c.values)).join(", ")
                ),
            );
        }
        for (expr, v) in &d.invariants {
            line(&mut text, format!("  {expr}: {}", format_rational(v)));
        }
        records.push(json!({
            "file": path.display().to_string(),
            "uniform": d.uniform,
            "chart": format_rational(&chart),
            "image": d.image.as_ref().map(|v| vector_json(&v.normalized())),
            "normal_form": d.normal_form.as_ref().map(|m| serde_json::to_value(MatrixFile::from_matrix(m)).expect("matrix")),
            "candidates": d.candidates.iter().map(|c| json!({
                "label": c.label,
                "expressions": c.expressions,
                "values": rationals(&c.values),
            })).collect::<Vec<_>>(),
            "invariants": d.invariants.iter().map(|(e, v)| json!({
                "expression": e, "value": format_rational(v)
            })).collect::<Vec<_>>(),
        }));
    }
    if paths.len() == 2 {
        let x = PointConfiguration::new(read_matrix(&paths[0])?);
        let y = PointConfiguration::new(read_matrix(&paths[1])?);
        let same_image = match (map.apply(x.matrix()), map.apply(y.matrix())) {
            (Ok(u), Ok(v)) => Some(u.projectively_equal(&v)),
            _ => None,
        };
        let same_orbit = segre::grassmann::torus_orbit_equivalent(&x, &y).ok();
        line(&mut text, format!("same coefficient image: {same_image:?}"));
        line(&mut text, format!("same torus orbit: {same_orbit:?}"));
        records.push(json!({ "same_image": same_image, "same_orbit": same_orbit }));
    }
    Ok(Output {
        text,
        structured: structured(&Value::Array(records)),
    })
}

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde_json::json;

use weyr_core::bounds::{
    campaign_csv, check_main_bounds, check_root_bounds, check_savchenko, fuzz_campaign,
    proof_construct_rank_one, sharp_sweep, CampaignConfig, FieldChoice, SavchenkoStatus,
};
use weyr_core::eigen::rational_eigenvalues;
use weyr_core::io::{matrix_from_json, matrix_to_json};
use weyr_core::jordan::{chain_verify, jordan_chains, root_subspace, segre, weyr, PartialOperator};
use weyr_core::perturb::{sharp_example, truncated_shift_example};
use weyr_core::scalar::is_prime_u64;
use weyr_core::{Error, Field, Matrix, Scalar};

use crate::{
    AnalyzeArgs, BoundsArgs, ConstructArgs, ExamplesArgs, Failure, FuzzArgs, EXIT_DEPENDENT,
    EXIT_FIELD, EXIT_PARSE, EXIT_RANK, EXIT_SHAPE, EXIT_VIOLATION,
};

type CmdResult = Result<i32, Failure>;

fn load_matrix(path: &str) -> Result<Matrix, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::new(EXIT_PARSE, format!("cannot read {path}: {e}")))?;
    matrix_from_json(&text).map_err(|e| Failure::new(EXIT_PARSE, format!("{path}: {e}")))
}

/// Parse an eigenvalue candidate in the matrix field. A value that is fine
/// over Q but impossible in the matrix field (e.g. "1/5" over GF(5)) is a
/// field mismatch, not a parse error.
fn parse_lambda(field: Field, text: &str) -> Result<Scalar, Failure> {
    match field.parse(text) {
        Ok(v) => Ok(v),
        Err(e) => {
            if field != Field::Q && Field::Q.parse(text).is_ok() {
                Err(Failure::new(
                    EXIT_FIELD,
                    format!("lambda `{text}` does not exist in {field}: {e}"),
                ))
            } else {
                Err(Failure::new(EXIT_PARSE, format!("lambda `{text}`: {e}")))
            }
        }
    }
}

fn check_pair(s: &Matrix, t: &Matrix) -> Result<(), Failure> {
    if s.field() != t.field() {
        return Err(Failure::new(
            EXIT_FIELD,
            format!("field mismatch: {} vs {}", s.field(), t.field()),
        ));
    }
    if s.rows() != t.rows() || s.cols() != t.cols() {
        return Err(Failure::new(
            EXIT_SHAPE,
            format!(
                "shape mismatch: {}x{} vs {}x{}",
                s.rows(),
                s.cols(),
                t.rows(),
                t.cols()
            ),
        ));
    }
    if !s.is_square() {
        return Err(Failure::new(
            EXIT_SHAPE,
            format!("operators must be square, got {}x{}", s.rows(), s.cols()),
        ));
    }
    Ok(())
}

fn emit(out: &Option<String>, content: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, content)
            .map_err(|e| Failure::new(EXIT_PARSE, format!("cannot write {path}: {e}"))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn parse_field_choice(field: &str, p: Option<u64>) -> Result<FieldChoice, Failure> {
    match field.to_ascii_lowercase().as_str() {
        "q" => Ok(FieldChoice::Q),
        "gf" => {
            let p = p.ok_or_else(|| Failure::new(EXIT_PARSE, "--field gf requires --p"))?;
            if !is_prime_u64(p) {
                return Err(Failure::new(
                    EXIT_PARSE,
                    format!("modulus {p} is not prime"),
                ));
            }
            Ok(FieldChoice::Gf(p))
        }
        other => Err(Failure::new(
            EXIT_PARSE,
            format!("unknown field `{other}` (expected q or gf)"),
        )),
    }
}

fn format_dims(dims: &[usize]) -> String {
    dims.iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

pub(crate) fn analyze(args: AnalyzeArgs) -> CmdResult {
    let a = load_matrix(&args.matrix)?;
    if !a.is_square() {
        return Err(Failure::new(
            EXIT_SHAPE,
            format!(
                "analyze needs a square matrix, got {}x{}",
                a.rows(),
                a.cols()
            ),
        ));
    }
    let field = a.field();
    let n_max = args.n_max.unwrap_or_else(|| a.rows()).max(1);
    let lambdas = match &args.lambda {
        Some(text) => vec![parse_lambda(field, text)?],
        None => rational_eigenvalues(&a),
    };

    let op = PartialOperator::total(a.clone());
    let mut analyses = Vec::new();
    let mut text = String::new();
    let _ = writeln!(text, "matrix: {}x{} over {}", a.rows(), a.cols(), field);
    if lambdas.is_empty() {
        let _ = writeln!(text, "no eigenvalues in {field}");
    }
    for lambda in &lambdas {
        let w = weyr(&op, lambda, n_max);
        let seg = segre(&op, lambda).expect("total operators stabilize");
        let chains = jordan_chains(&a, lambda);
        let check = chain_verify(&a, lambda, &chains);
        let root = root_subspace(&a, lambda);
        let _ = writeln!(text, "lambda = {lambda}:");
        let _ = writeln!(
            text,
            "  Weyr: {}{}",
            format_dims(&w.dims),
            if w.stabilized {
                " (stabilized)"
            } else {
                " (truncated)"
            }
        );
        let _ = writeln!(text, "  Segre: {}", format_dims(&seg.parts));
        let _ = writeln!(
            text,
            "  chains: {} of lengths [{}]",
            chains.chains.len(),
            format_dims(&chains.lengths())
        );
        let _ = writeln!(text, "  root subspace dim: {}", root.dim());
        let _ = writeln!(
            text,
            "  chain check: {}",
            if check.ok {
                "ok".to_string()
            } else {
                format!("FAILED ({:?})", check.violation)
            }
        );
        analyses.push(json!({
            "lambda": lambda.to_string(),
            "weyr": w.dims,
            "stabilized": w.stabilized,
            "segre": seg.parts,
            "chain_lengths": chains.lengths(),
            "chains": chains,
            "chain_check": check,
            "root_dim": root.dim(),
        }));
    }

    if args.json {
        let report = json!({
            "rows": a.rows(),
            "cols": a.cols(),
            "field": field.to_string(),
            "n_max": n_max,
            "analyses": analyses,
        });
        let mut body = serde_json::to_string_pretty(&report).expect("report serializes");
        body.push('\n');
        emit(&args.out, &body)?;
    } else {
        emit(&args.out, &text)?;
    }
    Ok(0)
}

pub(crate) fn bounds(args: BoundsArgs) -> CmdResult {
    let s = load_matrix(&args.s)?;
    let t = load_matrix(&args.t)?;
    check_pair(&s, &t)?;
    let field = s.field();
    let n_max = args.n_max.unwrap_or_else(|| s.rows()).max(1);
    let lambdas = match &args.lambda {
        Some(text) => vec![parse_lambda(field, text)?],
        None => {
            let mut all = vec![field.zero()];
            all.extend(rational_eigenvalues(&s));
            all.extend(rational_eigenvalues(&t));
            all.sort_by_key(|a| a.to_string());
            all.dedup();
            all
        }
    };

    let mut text = String::new();
    let mut reports = Vec::new();
    let mut all_pass = true;
    for lambda in &lambdas {
        let main = check_main_bounds(&s, &t, lambda, n_max)
            .map_err(|e| Failure::new(EXIT_SHAPE, e.to_string()))?;
        let root = check_root_bounds(&s, &t, lambda)
            .map_err(|e| Failure::new(EXIT_SHAPE, e.to_string()))?;
        let sav =
            check_savchenko(&s, &t, lambda).map_err(|e| Failure::new(EXIT_SHAPE, e.to_string()))?;
        all_pass &= main.all_pass && root.all_pass() && sav.ok();

        let _ = writeln!(text, "lambda = {lambda} (k = {}):", main.k_effective);
        let max_i = main.max_gap_i();
        let max_ii = main.max_gap_ii();
        let _ = writeln!(
            text,
            "  Theorem (i):  max |w_n(S) - w_n(T)| = {max_i}, bounds k*n: {}",
            if main.rows.iter().all(|r| r.pass_i) {
                "pass"
            } else {
                "VIOLATED"
            }
        );
        let _ = writeln!(
            text,
            "  Theorem (ii): max quotient gap = {max_ii} vs k = {}: {}{}",
            main.k_effective,
            if main.rows.iter().all(|r| r.pass_ii) {
                "pass"
            } else {
                "VIOLATED"
            },
            if main.any_sharp_ii { " (sharp)" } else { "" }
        );
        let _ = writeln!(
            text,
            "  Root corollary: gaps {} and {} vs bounds {} and {}: {}",
            root.gap_i,
            root.gap_ii,
            root.bound_i,
            root.bound_ii,
            if root.all_pass() { "pass" } else { "VIOLATED" }
        );
        match &sav.outcome {
            SavchenkoStatus::Checked {
                lower_bound,
                dim_root_t,
                pass,
                equality,
            } => {
                let _ = writeln!(
                    text,
                    "  Savchenko bound: {lower_bound} <= {dim_root_t}: {}{}",
                    if *pass { "pass" } else { "VIOLATED" },
                    if *equality { " (equality)" } else { "" }
                );
            }
            SavchenkoStatus::SkippedHypothesis { k, chains } => {
                let _ = writeln!(
                    text,
                    "  Savchenko bound: skipped (k = {k} exceeds {chains} chains)"
                );
            }
        }
        reports.push(json!({
            "lambda": lambda.to_string(),
            "main": main,
            "root": root,
            "savchenko": sav,
        }));
    }

    if args.json {
        let report = json!({
            "field": field.to_string(),
            "n_max": n_max,
            "reports": reports,
            "all_pass": all_pass,
        });
        let mut body = serde_json::to_string_pretty(&report).expect("report serializes");
        body.push('\n');
        emit(&args.out, &body)?;
    } else {
        emit(&args.out, &text)?;
    }
    Ok(if all_pass { 0 } else { EXIT_VIOLATION })
}

pub(crate) fn fuzz(args: FuzzArgs) -> CmdResult {
    if let Some(preset) = &args.preset {
        if preset != "sharp-sweep" {
            return Err(Failure::new(
                EXIT_PARSE,
                format!("unknown preset `{preset}`"),
            ));
        }
        let field = parse_field_choice(&args.field, args.p)?.field();
        let report = sharp_sweep(field, (2, 6), (1, 3));
        let mut text = String::from("sharpness sweep (block example family):\n");
        let _ = writeln!(text, "  m  k  quotient_sharp  kernel_sharp");
        for row in &report.rows {
            let _ = writeln!(
                text,
                "  {}  {}  {:<14}  {}",
                row.m, row.k, row.quotient_sharp, row.kernel_sharp
            );
        }
        let _ = writeln!(
            text,
            "all cells sharp: {}",
            if report.all_sharp { "yes" } else { "NO" }
        );
        print!("{text}");
        if args.out.is_some() {
            let mut body = serde_json::to_string_pretty(&report).expect("report serializes");
            body.push('\n');
            emit(&args.out, &body)?;
        }
        return Ok(if report.all_sharp { 0 } else { EXIT_VIOLATION });
    }

    if args.m_min < 1 || args.m_min > args.m_max || args.k_min > args.k_max || args.bound < 1 {
        return Err(Failure::new(EXIT_PARSE, "invalid m/k/bound ranges"));
    }
    let config = CampaignConfig {
        field: parse_field_choice(&args.field, args.p)?,
        trials: args.trials,
        m_min: args.m_min,
        m_max: args.m_max,
        k_min: args.k_min,
        k_max: args.k_max,
        entry_bound: args.bound,
        seed_base: args.seed,
        n_max: args.n_max,
        include_interlacing: !args.no_interlacing,
    };
    let report = fuzz_campaign(&config);
    println!(
        "campaign: {} trials over {}, seed base {}",
        report.trials_run,
        config.field.field(),
        config.seed_base
    );
    println!(
        "checked {} lambdas, {} bound rows, {} root checks, {} savchenko ({} skipped), {} interlacing records",
        report.counts.lambdas_tested,
        report.counts.main_rows,
        report.counts.root_checks,
        report.counts.savchenko_checked,
        report.counts.savchenko_skipped,
        report.counts.interlacing_records,
    );
    println!(
        "sharpness hit rate: {}/{} quotient rows",
        report.sharp_ii_rows, report.eligible_ii_rows
    );
    println!("violations: {}", report.violations.len());
    if let Some(out) = &args.out {
        let mut body = serde_json::to_string_pretty(&report).expect("report serializes");
        body.push('\n');
        fs::write(out, &body)
            .map_err(|e| Failure::new(EXIT_PARSE, format!("cannot write {out}: {e}")))?;
        println!("report written to {out}");
    }
    if let Some(csv) = &args.csv {
        fs::write(csv, campaign_csv(&report))
            .map_err(|e| Failure::new(EXIT_PARSE, format!("cannot write {csv}: {e}")))?;
        println!("csv written to {csv}");
    }
    Ok(if report.ok() { 0 } else { EXIT_VIOLATION })
}

pub(crate) fn construct(args: ConstructArgs) -> CmdResult {
    let s = load_matrix(&args.s)?;
    let t = load_matrix(&args.t)?;
    check_pair(&s, &t)?;
    let field = s.field();
    let lambda = match &args.lambda {
        Some(text) => parse_lambda(field, text)?,
        None => field.zero(),
    };
    let tops_matrix = load_matrix(&args.tops)?;
    if tops_matrix.field() != field {
        return Err(Failure::new(
            EXIT_FIELD,
            format!("tops field mismatch: {} vs {}", tops_matrix.field(), field),
        ));
    }
    if tops_matrix.rows() != s.rows() {
        return Err(Failure::new(
            EXIT_SHAPE,
            format!(
                "tops must be columns of length {}, got {}",
                s.rows(),
                tops_matrix.rows()
            ),
        ));
    }
    let tops: Vec<Vec<Scalar>> = (0..tops_matrix.cols())
        .map(|j| tops_matrix.column(j))
        .collect();

    let outcome =
        proof_construct_rank_one(&s, &t, &lambda, args.n, &tops).map_err(|e| match e {
            Error::RankNotOne { .. } => Failure::new(EXIT_RANK, e.to_string()),
            Error::DependentClasses | Error::TopOutsideKernel { .. } => {
                Failure::new(EXIT_DEPENDENT, e.to_string())
            }
            Error::AmbientMismatch { .. }
            | Error::ShapeMismatch { .. }
            | Error::NotSquare { .. } => Failure::new(EXIT_SHAPE, e.to_string()),
            other => Failure::new(EXIT_PARSE, other.to_string()),
        })?;

    let verified = outcome.certificate.verified();
    let mut body = serde_json::to_string_pretty(&outcome).expect("outcome serializes");
    body.push('\n');
    emit(&args.out, &body)?;
    if args.out.is_some() {
        println!(
            "case {:?}: {} input classes -> {} certified classes ({})",
            outcome.case,
            outcome.inputs,
            outcome.zs.len(),
            if verified { "verified" } else { "NOT verified" }
        );
    }
    Ok(if verified { 0 } else { EXIT_VIOLATION })
}

pub(crate) fn examples(args: ExamplesArgs) -> CmdResult {
    let field = parse_field_choice(&args.field, args.p)?.field();
    let dir = Path::new(&args.out_dir);
    if !dir.is_dir() {
        return Err(Failure::new(
            EXIT_PARSE,
            format!("{} is not a directory", args.out_dir),
        ));
    }
    let write = |name: String, m: &Matrix| -> Result<String, Failure> {
        let path = dir.join(&name);
        fs::write(&path, matrix_to_json(m))
            .map_err(|e| Failure::new(EXIT_PARSE, format!("cannot write {name}: {e}")))?;
        Ok(path.display().to_string())
    };
    match args.kind.as_str() {
        "sharp" => {
            if args.m < 2 || args.k < 1 {
                return Err(Failure::new(
                    EXIT_PARSE,
                    "sharp requires --m >= 2, --k >= 1",
                ));
            }
            let (a, b) = sharp_example(field, args.m, args.k);
            let pa = write(format!("sharp_A_m{}_k{}.json", args.m, args.k), &a)?;
            let pb = write(format!("sharp_B_m{}_k{}.json", args.m, args.k), &b)?;
            println!("wrote {pa}");
            println!("wrote {pb}");
            println!(
                "expected at lambda = 0: w_j(A) = {}*min(j, {}), w_j(B) = 0, rank(A-B) = {}",
                args.k, args.m, args.k
            );
        }
        "shift" => {
            if args.n < 2 {
                return Err(Failure::new(EXIT_PARSE, "shift requires --N >= 2"));
            }
            let (s, t) = truncated_shift_example(field, args.n);
            let ps = write(format!("shift_S_N{}.json", args.n), &s)?;
            let pt = write(format!("shift_T_N{}.json", args.n), &t)?;
            println!("wrote {ps}");
            println!("wrote {pt}");
            println!(
                "expected at lambda = 0: rank(S-T) = 1, dim ker T^p >= p for p <= {}",
                args.n
            );
        }
        other => {
            return Err(Failure::new(
                EXIT_PARSE,
                format!("unknown example kind `{other}` (expected sharp or shift)"),
            ))
        }
    }
    Ok(0)
}

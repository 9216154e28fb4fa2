use std::io::Write;
use std::sync::Arc;

use num_bigint::BigUint;
use serde_json::{json, Value};
use skolem_set::arith::{PrimeContext, PrimeTable};
use skolem_set::bhcount::{
    admissible, bh_constant, bound_report, count_pairs, write_report_csv, LinearFormPair,
};
use skolem_set::decide::{
    constant_a, find_zeros_in_s, zero_bound, SearchConfig, ZeroCertainty, ZeroPolicy,
    DEFAULT_MAX_SEARCH,
};
use skolem_set::density::{
    mean_g_check, moment_scan, predictions, write_csv, SampleMode, WindowStats,
};
use skolem_set::lrs::{decompose, is_degenerate, minimize, ComponentKind, Degeneracy, Lrs};
use skolem_set::skolem::{enumerate_window, in_s, window_params};

use crate::args::{BhCmd, Command, DensityCmd, LrsCmd, LrsInput, PairArgs, SkolemCmd};
use crate::config::{load_or_build_cache, Config, OutputFormat};
use crate::report::{big, header, Report};
use crate::Failure;

/// Runs one parsed command, writing the report to `out` and warnings to `err`.
pub(crate) fn execute(
    command: Command,
    config: &Config,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<(), Failure> {
    let report = match command {
        Command::Skolem(SkolemCmd::Member { n }) => member(&n, &context(config, err)?),
        Command::Skolem(SkolemCmd::Enum { w, from, to }) => {
            let ctx = context(config, err)?;
            return enumerate(w, from.zip(to), config, &ctx, out);
        }
        Command::Density(DensityCmd::Scan { w, sample }) => {
            density_scan(&w, sample, config, &context(config, err)?)?
        }
        Command::Density(DensityCmd::MeanG { y }) => mean_g(y)?,
        Command::Bh(BhCmd::Count { pair, x }) => bh_count(&pair, x, &table(config, err)?)?,
        Command::Bh(BhCmd::Constant { pair, plimit }) => bh_const(
            &pair,
            plimit.unwrap_or(default_plimit(config)),
            &table(config, err)?,
        )?,
        Command::Bh(BhCmd::Report { pair, x, plimit }) => bh_report(
            &pair,
            &x,
            plimit.unwrap_or(default_plimit(config)),
            &table(config, err)?,
        )?,
        Command::Lrs(LrsCmd::Zeros {
            input,
            max_n,
            probabilistic,
        }) => {
            let lrs = read_lrs(&input)?;
            lrs_zeros(&lrs, max_n, probabilistic, config, &context(config, err)?)?
        }
        Command::Lrs(LrsCmd::Degenerate { input }) => lrs_degenerate(&read_lrs(&input)?)?,
        Command::Bounds(input) => bounds(&read_lrs(&input)?)?,
    };
    report.emit(config, out)?;
    Ok(())
}

fn default_plimit(config: &Config) -> u64 {
    config.sieve_limit.min(1_000_000)
}

fn table(config: &Config, err: &mut dyn Write) -> Result<PrimeTable, Failure> {
    let cached = load_or_build_cache(config)?;
    for w in &cached.warnings {
        writeln!(err, "warning: {w}")?;
    }
    Ok(cached.table)
}

fn context(config: &Config, err: &mut dyn Write) -> Result<PrimeContext, Failure> {
    let table = table(config, err)?;
    Ok(PrimeContext::from_shared(
        Arc::new(table),
        config.probable_prime_rounds,
    ))
}

fn window_x(w: u32) -> Value {
    big(BigUint::from(1u32) << w)
}

fn member(n: &BigUint, ctx: &PrimeContext) -> Report {
    let m = in_s(n, ctx);
    let mut r = Report::new("skolem member");
    if let Some(w) = m.window {
        r.param("w", json!(w));
        r.param("X", window_x(w));
    }
    r.set("n", big(n));
    r.set("member", json!(m.member));
    r.set("window", json!(m.window));
    r.set("reason", json!(m.reason.as_str()));
    r.set("r", json!(m.r()));
    let reps: Vec<Value> = m
        .reps
        .iter()
        .map(|p| json!([p.q, big(&p.p), p.a]))
        .collect();
    r.set("reps", Value::Array(reps));
    r.set("certainty", json!(m.certainty().to_string()));
    r.set(
        "correlated_pair",
        json!(m.correlated_pair.map(|(i, j)| [i, j])),
    );

    r.line(format!("n: {n}"));
    r.line(format!("member: {}", m.member));
    match m.window {
        Some(w) => {
            let params = window_params(w).expect("window of a verdict is valid");
            r.line(format!(
                "window: {w} (threshold r > {:.4})",
                params.threshold()
            ));
        }
        None => r.line("window: none"),
    }
    r.line(format!("reason: {}", m.reason));
    r.line(format!("r: {}", m.r()));
    for p in &m.reps {
        r.line(format!("  {p}  {}", p.certainty));
    }
    if let Some((i, j)) = m.correlated_pair {
        r.line(format!("correlated: {} and {}", m.reps[i], m.reps[j]));
    }
    r
}

fn enumerate(
    w: u32,
    subrange: Option<(u64, u64)>,
    config: &Config,
    ctx: &PrimeContext,
    out: &mut dyn Write,
) -> Result<(), Failure> {
    let scan = enumerate_window(w, subrange, ctx, config.scan_cap)?;
    let mut params = vec![("w", json!(w)), ("X", window_x(w))];
    if let Some((lo, hi)) = subrange {
        params.push(("from", json!(lo)));
        params.push(("to", json!(hi)));
    }
    match config.output_format {
        OutputFormat::Json => {
            let mut r = Report::new("skolem enum");
            r.params = params;
            let members: Vec<Value> = scan
                .map(|m| {
                    let reps: Vec<Value> =
                        m.reps.iter().map(|&(q, p, a)| json!([q, p, a])).collect();
                    json!({ "n": m.n, "r": m.reps.len(), "reps": reps })
                })
                .collect();
            r.set("count", json!(members.len()));
            r.set("members", Value::Array(members));
            r.emit(config, out)?;
        }
        OutputFormat::Text => {
            out.write_all(header("skolem enum", config, &params).as_bytes())?;
            for m in scan {
                writeln!(out, "{m}")?;
            }
        }
        OutputFormat::Csv => {
            out.write_all(header("skolem enum", config, &params).as_bytes())?;
            writeln!(out, "n,r,reps")?;
            for m in scan {
                let reps: Vec<String> = m
                    .reps
                    .iter()
                    .map(|(q, p, a)| format!("{q}:{p}:{a}"))
                    .collect();
                writeln!(out, "{},{},{}", m.n, m.reps.len(), reps.join(";"))?;
            }
        }
    }
    Ok(())
}

fn stats_json(s: &WindowStats) -> Result<Value, Failure> {
    let pred = predictions(s.w)?;
    let params = window_params(s.w)?;
    let t = &s.tally;
    let bound_ref = 2f64.powi(s.w as i32) / params.ln_x().cbrt();
    let mode = match s.mode {
        SampleMode::Full => json!("full"),
        SampleMode::Sampled { .. } => json!("sampled"),
    };
    Ok(json!({
        "w": s.w,
        "X": big(&s.x),
        "mode": mode,
        "scanned": t.scanned,
        "M0": t.m0,
        "M1": t.m1,
        "M2": t.m2,
        "members": t.members(),
        "excluded_correlated": t.excluded_correlated,
        "with_correlated_pair": t.with_correlated_pair,
        "represented": t.represented,
        "scale": s.scale(),
        "density_estimate": s.density_estimate,
        "m1_pred": pred.m1_pred,
        "m2_pred": pred.m2_pred,
        "m1_ratio": s.m1_estimate() / pred.m1_pred,
        "m2_ratio": s.m2_estimate() / pred.m2_pred,
        "correlated_census": {
            "count": t.with_correlated_pair,
            "bound_ref": bound_ref,
            "ratio": t.with_correlated_pair as f64 * s.scale() / bound_ref,
        },
        "certainty": t.certainty.to_string(),
    }))
}

fn density_scan(
    windows: &[u32],
    sample: Option<u64>,
    config: &Config,
    ctx: &PrimeContext,
) -> Result<Report, Failure> {
    let rows = windows
        .iter()
        .map(|&w| moment_scan(w, sample.map(|c| (c, config.seed)), ctx, config.scan_cap))
        .collect::<Result<Vec<_>, _>>()?;
    let mut r = Report::new("density scan");
    r.param("windows", json!(windows));
    r.param("sample", json!(sample));
    let json_rows = rows.iter().map(stats_json).collect::<Result<Vec<_>, _>>()?;

    r.line(format!(
        "{:>4} {:>8} {:>10} {:>10} {:>12} {:>14} {:>9} {:>9} {:>8} {:>8} {:>8}",
        "w",
        "mode",
        "scanned",
        "M0",
        "M1",
        "M2",
        "excluded",
        "density",
        "M1/pred",
        "M2/pred",
        "census"
    ));
    for row in &json_rows {
        let f = |k: &str| row[k].as_f64().unwrap_or(f64::NAN);
        r.line(format!(
            "{:>4} {:>8} {:>10} {:>10} {:>12} {:>14} {:>9} {:>9.5} {:>8.4} {:>8.4} {:>8.4}",
            row["w"].to_string(),
            row["mode"].as_str().unwrap_or_default(),
            row["scanned"].to_string(),
            row["M0"].to_string(),
            row["M1"].to_string(),
            row["M2"].to_string(),
            row["excluded_correlated"].to_string(),
            f("density_estimate"),
            f("m1_ratio"),
            f("m2_ratio"),
            row["correlated_census"]["ratio"]
                .as_f64()
                .unwrap_or(f64::NAN),
        ));
    }
    let mut csv = Vec::new();
    write_csv(&rows, &mut csv)?;
    r.csv = Some(String::from_utf8(csv).expect("csv is ascii"));
    r.set("windows", Value::Array(json_rows));
    Ok(r)
}

fn mean_g(y: u64) -> Result<Report, Failure> {
    let m = mean_g_check(y)?;
    let mut r = Report::new("density mean-g");
    r.param("Y", json!(y));
    r.set("Y", json!(m.y));
    r.set("lhs", json!(m.lhs));
    r.set("rhs", json!(m.rhs));
    r.set("rel_err", json!(m.rel_err));
    r.line(format!("sum of g(m), m <= {y} even: {}", m.lhs));
    r.line(format!("Y/C: {}", m.rhs));
    r.line(format!("relative error: {:.3e}", m.rel_err));
    r.csv = Some(format!(
        "Y,lhs,rhs,rel_err\n{},{},{},{}\n",
        m.y, m.lhs, m.rhs, m.rel_err
    ));
    Ok(r)
}

fn linear_pair(p: &PairArgs) -> Result<LinearFormPair, Failure> {
    Ok(LinearFormPair::new(p.f1.0, p.f1.1, p.f2.0, p.f2.1)?)
}

fn pair_params(r: &mut Report, p: &PairArgs) {
    r.param("f1", json!([p.f1.0, p.f1.1]));
    r.param("f2", json!([p.f2.0, p.f2.1]));
}

fn form(f: (i64, i64)) -> String {
    match f.1 {
        0 => format!("{}x", f.0),
        b if b < 0 => format!("{}x - {}", f.0, -(b as i128)),
        b => format!("{}x + {b}", f.0),
    }
}

fn bh_count(p: &PairArgs, x: u64, table: &PrimeTable) -> Result<Report, Failure> {
    let pair = linear_pair(p)?;
    let count = count_pairs(&pair, x, table)?;
    let adm = admissible(&pair);
    let mut r = Report::new("bh count");
    pair_params(&mut r, p);
    r.param("X", json!(x));
    r.set("count", json!(count));
    r.set("admissible", json!(adm.admissible));
    r.line(format!(
        "x <= {x} with {} and {} both prime: {count}",
        form(p.f1),
        form(p.f2)
    ));
    if let Some(q) = adm.certificate_prime {
        r.line(format!(
            "not admissible: the product vanishes identically mod {q}"
        ));
    }
    r.csv = Some(format!("X,count\n{x},{count}\n"));
    Ok(r)
}

fn bh_const(p: &PairArgs, plimit: u64, table: &PrimeTable) -> Result<Report, Failure> {
    let pair = linear_pair(p)?;
    let c = bh_constant(&pair, table, plimit)?;
    let mut r = Report::new("bh constant");
    pair_params(&mut r, p);
    r.param("plimit", json!(plimit));
    r.set("c_f", json!(c.c_f));
    r.set("tail_bound", json!(c.tail_bound));
    r.set("c", json!(c.c));
    r.set("delta", big(pair.delta()));
    let corr: Vec<Value> = c
        .corrections
        .iter()
        .map(|&(p, omega, factor)| json!({ "p": p, "omega": omega, "factor": factor }))
        .collect();
    r.set("corrections", Value::Array(corr));
    r.line(format!(
        "C_f = {:.10} (true value within {:.2e} below)",
        c.c_f, c.tail_bound
    ));
    r.line(format!("twin constant C = {:.10}", c.c));
    for &(p, omega, factor) in &c.corrections {
        r.line(format!("  p = {p}: omega = {omega}, factor {factor:.10}"));
    }
    Ok(r)
}

fn bh_report(p: &PairArgs, xs: &[u64], plimit: u64, table: &PrimeTable) -> Result<Report, Failure> {
    let pair = linear_pair(p)?;
    let rows = xs
        .iter()
        .map(|&x| bound_report(&pair, x, table, plimit))
        .collect::<Result<Vec<_>, _>>()?;
    let mut r = Report::new("bh report");
    pair_params(&mut r, p);
    r.param("X", json!(xs));
    r.param("plimit", json!(plimit));
    let json_rows: Vec<Value> = rows
        .iter()
        .map(|b| {
            json!({
                "X": b.x,
                "actual": b.actual,
                "c_f": b.c_f,
                "tail_bound": b.tail_bound,
                "bh_point": b.bh_point,
                "bh_integral": b.bh_integral,
                "integral_ratio": b.integral_ratio(),
                "brun8": b.brun8,
                "wu": b.wu,
                "wu_holds": b.wu_holds(),
                "sieve_rhs": b.sieve_rhs,
            })
        })
        .collect();
    r.set("rows", Value::Array(json_rows));
    r.line(format!(
        "{:>12} {:>10} {:>12} {:>12} {:>8} {:>12} {:>12}",
        "X", "actual", "bh_point", "bh_integral", "ratio", "wu", "brun8"
    ));
    for b in &rows {
        r.line(format!(
            "{:>12} {:>10} {:>12.1} {:>12.1} {:>8.4} {:>12.1} {:>12.1}",
            b.x,
            b.actual,
            b.bh_point,
            b.bh_integral,
            b.integral_ratio(),
            b.wu,
            b.brun8
        ));
    }
    let mut csv = Vec::new();
    write_report_csv(&rows, &mut csv)?;
    r.csv = Some(String::from_utf8(csv).expect("csv is ascii"));
    Ok(r)
}

fn read_lrs(input: &LrsInput) -> Result<Lrs, Failure> {
    match (&input.lrs, &input.coeffs, &input.inits) {
        (Some(text), _, _) => Ok(text.parse()?),
        (None, Some(c), Some(i)) => Ok(Lrs::new(c.0.clone(), i.0.clone())?),
        _ => Err(Failure::Usage("give --coeffs and --inits, or --lrs".into())),
    }
}

fn zero_certainty(c: ZeroCertainty) -> String {
    match c {
        ZeroCertainty::Exact => "Exact".into(),
        ZeroCertainty::Probable { primes_used } => format!("Probable({primes_used})"),
    }
}

fn lrs_zeros(
    lrs: &Lrs,
    max_n: u64,
    probabilistic: bool,
    config: &Config,
    ctx: &PrimeContext,
) -> Result<Report, Failure> {
    let search = SearchConfig {
        max_search: DEFAULT_MAX_SEARCH,
        exact_cap: config.exact_cap,
        moduli_seed: config.seed,
    };
    let policy = if probabilistic {
        ZeroPolicy::ProbabilisticOnly
    } else {
        ZeroPolicy::ExactBelowCap
    };
    let rep = find_zeros_in_s(lrs, max_n, policy, &search, ctx)?;
    let mut r = Report::new("lrs zeros");
    r.param("max_n", json!(max_n));
    r.param(
        "policy",
        json!(if probabilistic {
            "probabilistic"
        } else {
            "exact_below_cap"
        }),
    );
    r.set("lrs", json!(lrs.to_string()));
    let zeros: Vec<Value> = rep
        .zeros
        .iter()
        .map(|&(n, c)| json!({ "n": n, "certainty": zero_certainty(c) }))
        .collect();
    r.set("zeros", Value::Array(zeros));
    r.set("searched_to", json!(rep.searched_to));
    r.set("members_checked", json!(rep.members_checked));
    r.set(
        "theorem_bound",
        json!(rep.theorem_bound.map(|t| t.to_string())),
    );
    r.set("modulus", json!(rep.modulus));
    let components: Vec<Value> = rep
        .components
        .iter()
        .map(|c| {
            json!({
                "residue": c.residue,
                "recurrence": c.recurrence.as_ref().map(|l| l.to_string()),
                "theorem_bound": c.theorem_bound.map(|t| t.to_string()),
            })
        })
        .collect();
    r.set("components", Value::Array(components));
    r.set("zero_progressions", json!(rep.zero_progressions));
    r.set("notes", json!(rep.notes));

    r.line(format!("recurrence: {lrs}"));
    r.line(format!(
        "searched n <= {} in S ({} members checked)",
        rep.searched_to, rep.members_checked
    ));
    if rep.zeros.is_empty() {
        r.line("zeros: none");
    }
    for &(n, c) in &rep.zeros {
        r.line(format!("zero: {n} ({})", zero_certainty(c)));
    }
    for &(i, m) in &rep.zero_progressions {
        r.line(format!("vanishes on n = {i} mod {m}"));
    }
    r.line(format!("decomposition modulus: {}", rep.modulus));
    for c in &rep.components {
        let body = match &c.recurrence {
            Some(l) => l.to_string(),
            None => "identically zero".into(),
        };
        let bound = c
            .theorem_bound
            .map(|t| format!(", zeros j below {t}"))
            .unwrap_or_default();
        r.line(format!("  residue {}: {body}{bound}", c.residue));
    }
    if let Some(t) = rep.theorem_bound {
        r.line(format!("theorem bound: {t}"));
    }
    for note in &rep.notes {
        r.line(format!("note: {note}"));
    }
    Ok(r)
}

fn lrs_degenerate(lrs: &Lrs) -> Result<Report, Failure> {
    let min = minimize(lrs)?;
    let mut r = Report::new("lrs degenerate");
    r.set("lrs", json!(lrs.to_string()));
    r.set("minimized", json!(min.to_string()));
    r.line(format!("recurrence: {lrs}"));
    r.line(format!("minimized: {min}"));
    if min.is_zero_sequence() {
        r.set("zero_sequence", json!(true));
        r.line("the sequence is identically zero");
        return Ok(r);
    }
    r.set("zero_sequence", json!(false));
    let witness = match is_degenerate(&min)? {
        Degeneracy::NonDegenerate => None,
        Degeneracy::Degenerate { witness_order } => Some(witness_order),
    };
    r.set("degenerate", json!(witness.is_some()));
    r.set("witness_order", json!(witness));
    match witness {
        Some(m) => r.line(format!("degenerate: a quotient of roots has order {m}")),
        None => r.line("non-degenerate"),
    }
    let dec = decompose(&min)?;
    r.set("modulus", json!(dec.modulus));
    let components: Vec<Value> = dec
        .components
        .iter()
        .map(|c| match &c.kind {
            ComponentKind::Sequence(l) => {
                json!({ "residue": c.residue, "kind": "sequence", "recurrence": l.to_string() })
            }
            ComponentKind::Zero => {
                json!({ "residue": c.residue, "kind": "zero", "recurrence": null })
            }
        })
        .collect();
    r.set("components", Value::Array(components));
    r.set("zero_progressions", json!(dec.zero_progressions()));
    r.line(format!("decomposition modulus: {}", dec.modulus));
    for c in &dec.components {
        match &c.kind {
            ComponentKind::Sequence(l) => r.line(format!("  residue {}: {l}", c.residue)),
            ComponentKind::Zero => r.line(format!("  residue {}: identically zero", c.residue)),
        }
    }
    Ok(r)
}

fn bounds(lrs: &Lrs) -> Result<Report, Failure> {
    let a = constant_a(lrs);
    let bound = zero_bound(lrs)?;
    let mut r = Report::new("bounds");
    r.set("lrs", json!(lrs.to_string()));
    r.set("order", json!(lrs.order()));
    r.set("constant_a", big(&a));
    r.set("zero_bound", json!(bound.to_string()));
    r.line(format!("recurrence: {lrs}"));
    r.line(format!("order k = {}, A = {a}", lrs.order()));
    r.line(format!("zeros lie below {bound}"));
    Ok(r)
}

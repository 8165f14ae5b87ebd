//! `ce-classify`: classify invariant Chern-Einstein almost Kähler structures
//! on homogeneous spaces of classical non-compact simple Lie groups.
//!
//! Exit codes: 0 success, 2 usage error, 3 verification failure. All numeric
//! output is exact — integers, or rationals rendered as `num/den`.

use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::Ratio;
use serde::Serialize;

use chern_einstein::chern::{compute_lambda, is_zero_weight, j_split, koszul_delta, solve_ce};
use chern_einstein::closedform::{oracle_half_delta, profile_for_form};
use chern_einstein::realform::{
    admissibility, catalog, table2_catalog, RealForm, RealFormSplit, Table2Entry,
};
use chern_einstein::rootsys::Family;
use chern_einstein::search::{classify, verify_theorem, ClassificationReport, SearchOptions};
use chern_einstein::weyl::{chamber, chamber_to_z, SignedPerm, WeylEnumerator};

const EXIT_USAGE: u8 = 2;
const EXIT_VERIFY: u8 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Parser)]
#[command(
    name = "ce-classify",
    version,
    about = "Exact chamber-by-chamber classification of invariant Chern-Einstein \
             almost Kähler structures on G/L for classical non-compact simple G"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep every Weyl chamber of a real form and classify the sign of the
    /// Einstein constant per chamber.
    Classify {
        /// Form selector: su:P,Q | so:A,B | sp:N | sp:P,Q | so*:2N
        #[arg(long, value_name = "FORM")]
        form: String,
        /// Refuse sweeps above this rank.
        #[arg(long, default_value_t = 8, value_name = "N")]
        rank_cap: usize,
        /// Contiguous index blocks processed in parallel.
        #[arg(long, default_value_t = 1, value_name = "N")]
        shards: usize,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        /// Compare the report against the classification theorem's
        /// prediction table; exit 3 on any discrepancy.
        #[arg(long)]
        verify: bool,
    },
    /// Rebuild the Ricci-flat su(3,2) example chamber and check it against
    /// the published positive-root lists.
    ExampleSu32 {
        /// One-line permutation (default: the cycle (2453)).
        #[arg(long, value_name = "PERM", default_value = "1 4 2 5 3")]
        perm: String,
        /// Also list every Ricci-flat chamber of su(3,2).
        #[arg(long)]
        sweep: bool,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Print the classical real-form catalog and the one-dimensional-center
    /// isotropy entries with their exact Einstein constants.
    Tables {
        #[arg(long, default_value_t = 6, value_name = "N")]
        rank_cap: usize,
        /// Normalization constant c in δ = λ·c·z, as N or N/D.
        #[arg(long, default_value = "1", value_name = "C")]
        norm: String,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Cross-check the closed-form coefficient formulas against direct
    /// summation; exit 3 on the first counterexample.
    CheckIdentities {
        /// Seed for the sampled sweep.
        #[arg(long, default_value_t = 0xC0FFEE, value_name = "S")]
        seed: u64,
        /// Random elements per form kind at the sampled rank.
        #[arg(long, default_value_t = 10_000, value_name = "N")]
        samples: u64,
        /// Exhaustive over all Weyl elements up to this rank.
        #[arg(long, default_value_t = 4, value_name = "N")]
        exhaustive_rank: usize,
        /// Rank for the sampled sweep.
        #[arg(long, default_value_t = 10, value_name = "N")]
        sample_rank: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Classify {
            form,
            rank_cap,
            shards,
            format,
            verify,
        } => cmd_classify(&form, rank_cap, shards, format, verify),
        Command::ExampleSu32 { perm, sweep, format } => cmd_example_su32(&perm, sweep, format),
        Command::Tables {
            rank_cap,
            norm,
            format,
        } => cmd_tables(rank_cap, &norm, format),
        Command::CheckIdentities {
            seed,
            samples,
            exhaustive_rank,
            sample_rank,
        } => cmd_check_identities(seed, samples, exhaustive_rank, sample_rank),
    }
}

fn usage_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_USAGE)
}

fn fmt_delta(delta: &[i64]) -> String {
    delta
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn fmt_ratio(r: Ratio<i64>) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn print_report_table(r: &ClassificationReport) {
    println!("form        {}", r.form);
    println!("rank        {}", r.rank);
    println!("weyl order  {}", r.weyl_order);
    println!(
        "counts      pos={} zero={} neg={} none={}",
        r.counts.pos, r.counts.zero, r.counts.neg, r.counts.none
    );
    println!("elapsed     {} ms ({} shard(s))", r.elapsed_ms, r.shards);
    if !r.witnesses.is_empty() {
        println!("witnesses:");
        println!("  {:>9}  {:<16} {:<8} {:<5} delta", "index", "perm", "signs", "sign");
        for w in &r.witnesses {
            println!(
                "  {:>9}  {:<16} {:<8} {:<5} {}",
                w.index,
                w.perm,
                w.signs,
                w.lambda_sign,
                fmt_delta(&w.delta)
            );
        }
    }
}

fn print_report_csv(r: &ClassificationReport) {
    println!("form,rank,weyl_order,perm,signs,lambda_sign,delta");
    for w in &r.witnesses {
        println!(
            "{},{},{},{},{},{},{}",
            r.form, r.rank, r.weyl_order, w.perm, w.signs, w.lambda_sign,
            fmt_delta(&w.delta)
        );
    }
}

fn cmd_classify(
    form: &str,
    rank_cap: usize,
    shards: usize,
    format: Format,
    verify: bool,
) -> ExitCode {
    let form = match RealForm::from_str(form) {
        Ok(f) => f,
        Err(e) => return usage_error(e),
    };
    let options = SearchOptions {
        rank_cap,
        shards,
        ..SearchOptions::default()
    };
    let check = match verify_theorem(form, &options) {
        Ok(c) => c,
        Err(e) => return usage_error(e),
    };
    match format {
        Format::Table => print_report_table(&check.report),
        Format::Json => println!(
            "{}",
            serde_json::to_string(&check.report).expect("report serializes")
        ),
        Format::Csv => print_report_csv(&check.report),
    }
    if verify {
        if check.ok {
            println!("verify: ok");
        } else {
            for d in &check.discrepancies {
                eprintln!("verify: {d}");
            }
            return ExitCode::from(EXIT_VERIFY);
        }
    }
    ExitCode::SUCCESS
}

#[derive(Serialize)]
struct ExampleOutput {
    perm: String,
    compact_positive: Vec<String>,
    noncompact_positive: Vec<String>,
    delta: Vec<i64>,
    ricci_flat: bool,
    matches_published_lists: bool,
    flat_chambers: Option<Vec<String>>,
}

fn cmd_example_su32(perm: &str, sweep: bool, format: Format) -> ExitCode {
    let w = match SignedPerm::from_text(Family::A, perm, None) {
        Ok(w) if w.letters() == 5 => w,
        Ok(_) => return usage_error("permutation must have 5 letters"),
        Err(e) => return usage_error(e),
    };
    let sp = RealFormSplit::build(RealForm::Su { p: 3, q: 2 }).expect("su(3,2) is valid");
    let rs = sp.root_system();
    let ps = chamber(&w, rs);
    let z = chamber_to_z(&ps, rs);
    let js = j_split(admissibility(&z, &sp).expect("regular z"), &sp).expect("admissible");
    let kd = koszul_delta(&js);
    let ricci_flat = is_zero_weight(Family::A, &kd.delta);

    let mut compact_positive: Vec<String> = Vec::new();
    let mut noncompact_positive: Vec<String> = Vec::new();
    for i in ps.ones() {
        let s = rs.root(i).to_string();
        if sp.is_compact(i) {
            compact_positive.push(s);
        } else {
            noncompact_positive.push(s);
        }
    }

    // The published chamber of the cycle (2453), in e-notation.
    let expected_c = ["e1-e2", "e1-e3", "e2-e3", "e4-e5"];
    let expected_nc = ["e1-e4", "e1-e5", "e2-e5", "-e2+e4", "-e3+e4", "-e3+e5"];
    let as_set = |v: &[String]| -> std::collections::BTreeSet<String> {
        v.iter().cloned().collect()
    };
    let matches = as_set(&compact_positive)
        == expected_c.iter().map(|s| s.to_string()).collect()
        && as_set(&noncompact_positive)
            == expected_nc.iter().map(|s| s.to_string()).collect();

    let flat_chambers = if sweep {
        let report = classify(RealForm::Su { p: 3, q: 2 }, &SearchOptions::default())
            .expect("su(3,2) sweep");
        Some(
            report
                .witnesses
                .iter()
                .map(|wit| wit.perm.clone())
                .collect::<Vec<_>>(),
        )
    } else {
        None
    };

    let out = ExampleOutput {
        perm: w.perm_text(),
        compact_positive,
        noncompact_positive,
        delta: kd.delta.clone(),
        ricci_flat,
        matches_published_lists: matches,
        flat_chambers,
    };

    match format {
        Format::Json => println!("{}", serde_json::to_string(&out).expect("serializes")),
        _ => {
            println!("perm                 {}", out.perm);
            println!("compact positive     {}", out.compact_positive.join(" "));
            println!("noncompact positive  {}", out.noncompact_positive.join(" "));
            println!("delta                {}", fmt_delta(&out.delta));
            println!("ricci flat           {}", out.ricci_flat);
            println!("matches lists        {}", out.matches_published_lists);
            if let Some(flats) = &out.flat_chambers {
                println!("flat chambers of su(3,2): {}", flats.len());
                for f in flats {
                    println!("  {f}");
                }
            }
        }
    }

    if matches && ricci_flat {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_VERIFY)
    }
}

#[derive(Serialize)]
struct Table1Row {
    form: String,
    k: String,
    rank: usize,
}

#[derive(Serialize)]
struct Table2Row {
    form: String,
    isotropy: String,
    z: Vec<i64>,
    lambda: Option<String>,
    sign: String,
}

#[derive(Serialize)]
struct TablesOutput {
    norm: String,
    table1: Vec<Table1Row>,
    table2: Vec<Table2Row>,
}

fn parse_ratio(s: &str) -> Option<Ratio<i64>> {
    let r = match s.split_once('/') {
        Some((n, d)) => Ratio::new(n.trim().parse().ok()?, d.trim().parse().ok()?),
        None => Ratio::from_integer(s.trim().parse().ok()?),
    };
    (r > Ratio::from_integer(0)).then_some(r)
}

fn table2_row(entry: &Table2Entry, c: Ratio<i64>) -> Table2Row {
    let js = j_split(entry.z.clone(), &entry.split).expect("catalog z is admissible");
    let lambda = compute_lambda(&entry.z, &js, c);
    let sign = solve_ce(&js).lambda_sign.to_string();
    Table2Row {
        form: entry.form.to_string(),
        isotropy: entry.isotropy.clone(),
        z: entry.z.z().to_vec(),
        lambda: lambda.map(fmt_ratio),
        sign,
    }
}

fn cmd_tables(rank_cap: usize, norm: &str, format: Format) -> ExitCode {
    let Some(c) = parse_ratio(norm) else {
        return usage_error(format!("--norm must be a positive rational, got {norm:?}"));
    };
    let table1: Vec<Table1Row> = catalog(rank_cap)
        .into_iter()
        .map(|f| Table1Row {
            form: f.to_string(),
            k: f.isotropy_name(),
            rank: f.rank(),
        })
        .collect();
    let entries = match table2_catalog(rank_cap) {
        Ok(e) => e,
        Err(e) => return usage_error(e),
    };
    let table2: Vec<Table2Row> = entries.iter().map(|e| table2_row(e, c)).collect();
    let out = TablesOutput {
        norm: fmt_ratio(c),
        table1,
        table2,
    };

    match format {
        Format::Json => println!("{}", serde_json::to_string(&out).expect("serializes")),
        Format::Csv => {
            println!("table,form,k_or_isotropy,rank_or_z,lambda,sign");
            for r in &out.table1 {
                println!("1,{},{},{},,", r.form, r.k, r.rank);
            }
            for r in &out.table2 {
                println!(
                    "2,{},{},{},{},{}",
                    r.form,
                    r.isotropy,
                    fmt_delta(&r.z),
                    r.lambda.as_deref().unwrap_or(""),
                    r.sign
                );
            }
        }
        Format::Table => {
            println!("inner symmetric pairs (rank <= {rank_cap}):");
            for r in &out.table1 {
                println!("  {:<10} k = {:<22} rank {}", r.form, r.k, r.rank);
            }
            println!();
            println!("one-dimensional-center isotropy entries (norm c = {}):", out.norm);
            println!("  {:<10} {:<20} {:<14} {:<8} sign", "form", "isotropy", "z", "lambda");
            for r in &out.table2 {
                println!(
                    "  {:<10} {:<20} {:<14} {:<8} {}",
                    r.form,
                    r.isotropy,
                    fmt_delta(&r.z),
                    r.lambda.as_deref().unwrap_or("-"),
                    r.sign
                );
            }
        }
    }
    ExitCode::SUCCESS
}

fn cmd_check_identities(
    seed: u64,
    samples: u64,
    exhaustive_rank: usize,
    sample_rank: usize,
) -> ExitCode {
    let mut checked = 0u64;

    for form in catalog(exhaustive_rank) {
        let sp = RealFormSplit::build(form).expect("catalog form is valid");
        let rs = sp.root_system();
        let e = WeylEnumerator::new(rs.family(), rs.rank()).expect("valid rank");
        for w in e.iter() {
            if let Some(code) = report_mismatch(&sp, &w) {
                return code;
            }
            checked += 1;
        }
    }

    let kinds = rank10_kinds(sample_rank);
    // Small deterministic LCG; good enough to scatter indices over the group.
    let mut state = seed | 1;
    let mut next = move || {
        state = state
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        state
    };
    for form in kinds {
        let sp = RealFormSplit::build(form).expect("valid kind");
        let rs = sp.root_system();
        let e = WeylEnumerator::new(rs.family(), rs.rank()).expect("valid rank");
        for _ in 0..samples {
            let w = e.unrank(next() % e.order());
            if let Some(code) = report_mismatch(&sp, &w) {
                return code;
            }
            checked += 1;
        }
    }

    println!("identities: ok ({checked} elements checked, seed {seed})");
    ExitCode::SUCCESS
}

/// One parameterization per coefficient-formula kind at the sampled rank.
fn rank10_kinds(rank: usize) -> Vec<RealForm> {
    let rank = rank.max(3);
    let half = rank / 2;
    vec![
        RealForm::Su {
            p: rank + 1 - half,
            q: half,
        },
        RealForm::SoOddEven {
            p: rank - half,
            q: half,
        },
        RealForm::SoOddEven { p: 0, q: rank },
        RealForm::SpR { n: rank },
        RealForm::Sp {
            p: rank - half,
            q: half,
        },
        RealForm::SoStar { n: rank },
        RealForm::SoEvenEven {
            p: rank - half,
            q: half,
        },
    ]
}

fn report_mismatch(sp: &RealFormSplit, w: &SignedPerm) -> Option<ExitCode> {
    let profile = profile_for_form(sp, w).expect("matching form kind");
    let formula = profile.half_delta();
    let oracle = oracle_half_delta(sp, w);
    if formula != oracle {
        eprintln!(
            "counterexample: form {} element {w}: formula {:?} vs direct summation {:?}",
            sp.form(),
            formula,
            oracle
        );
        return Some(ExitCode::from(EXIT_VERIFY));
    }
    None
}

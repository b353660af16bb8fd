use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use dyckperm::census::parse_statistics;
use dyckperm::path::PathKind;
use dyckperm::{
    build, distribution, features, generate_class, phi, phi_inverse, stat_record, verify_suite, ClassTag,
    LatticePath, PatternBasis, Permutation, SeriesName,
};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "dyckperm", version, about = "Permutation classes Av(T1), Av(T2) and their Dyck prefix encoding")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Class memberships, image path and path features of a permutation.
    Map {
        /// Space-separated values, e.g. "2 4 1 3 7 5 9 6 8".
        perm: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Also draw the path's height profile.
        #[arg(long)]
        profile: bool,
    },
    /// The permutation of a class mapped to a given Dyck prefix.
    Invert {
        #[arg(long, value_parser = parse_class)]
        class: ClassTag,
        /// Word over U and D of even length.
        path: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Lists the members of a class, or counts them.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = parse_basis)]
        basis: PatternBasis,
        #[arg(long)]
        count: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Joint distribution of statistics over a class.
    Dist {
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = parse_basis)]
        basis: PatternBasis,
        /// Comma-separated: asc, lmax, pos_max, head, lds, connected, endpoint_height.
        #[arg(long)]
        stats: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Truncated coefficients of a named generating function.
    Series {
        /// One of N, B, C, J, G, H, A, E, V, F, S, M, R.
        #[arg(long, value_parser = parse_series)]
        name: SeriesName,
        #[arg(long, default_value_t = 12)]
        trunc: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Runs the exhaustive verification suite.
    Verify {
        #[arg(long, default_value_t = 8)]
        max_n: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

fn parse_class(s: &str) -> Result<ClassTag, String> {
    ClassTag::parse(s).map_err(|e| e.to_string())
}

fn parse_basis(s: &str) -> Result<PatternBasis, String> {
    PatternBasis::parse(s).map_err(|e| e.to_string())
}

fn parse_series(s: &str) -> Result<SeriesName, String> {
    s.parse().map_err(|e: dyckperm::Error| e.to_string())
}

/// Input errors exit with 2, failed verification with 1.
enum Failure {
    Usage(String),
    Verification,
}

impl From<dyckperm::Error> for Failure {
    fn from(e: dyckperm::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn kind_name(k: PathKind) -> &'static str {
    match k {
        PathKind::DyckPath => "dyck_path",
        PathKind::Floating => "floating",
        PathKind::Neither => "neither",
    }
}

fn unsupported(format: Format, what: &str) -> Failure {
    let name = match format {
        Format::Json => "json",
        Format::Csv => "csv",
        Format::Text => "text",
    };
    Failure::Usage(format!("{what} does not support --format {name}"))
}

fn map(perm: &str, format: Format, profile: bool) -> Result<String, Failure> {
    let sigma: Permutation = perm.parse()?;
    let (in_t1, in_t2) = (ClassTag::T1.contains(&sigma), ClassTag::T2.contains(&sigma));
    let rec = stat_record(&sigma)?;
    let path = if in_t1 || in_t2 { Some(phi(&sigma)?) } else { None };
    let feats = path.as_ref().map(|p| features(p, Some(sigma.len() - 1))).transpose()?;

    let mut obj = json!({
        "permutation": sigma.to_string(),
        "t1": in_t1,
        "t2": in_t2,
        "path": path.as_ref().map(|p| p.to_string()),
        "stats": {
            "asc": rec.asc,
            "lmax": rec.lmax,
            "pos_max": rec.pos_max,
            "head": rec.head,
            "lds": rec.lds,
            "connected": rec.connected,
        },
    });
    if let (Some(p), Some(f)) = (&path, &feats) {
        let cut = f.cut.expect("cut features requested");
        obj["kind"] = json!(kind_name(p.classify()));
        obj["features"] = json!({
            "peaks": f.peaks,
            "valleys": f.valleys,
            "triple_descents": f.triple_descents,
            "returns": f.returns,
            "endpoint_height": f.endpoint_height,
            "cut_index": cut.cut_index,
            "valleys_before_cut": cut.valleys_before_cut,
            "triple_descents_before_cut": cut.triple_descents_before_cut,
            "peaks_before_cut": cut.peaks_before_cut,
            "downs_before_cut": cut.downs_before_cut,
            "downs_after_cut": cut.downs_after_cut,
        });
    }
    match format {
        Format::Json => Ok(pretty(&obj)),
        Format::Text => {
            let mut out = format!("permutation: {sigma}\nt1: {in_t1}\nt2: {in_t2}\n");
            match &path {
                None => out.push_str("path: none (in neither class)\n"),
                Some(p) => {
                    out.push_str(&format!("path: {p}\nkind: {}\n", obj["kind"].as_str().unwrap()));
                    for (k, v) in obj["features"].as_object().unwrap() {
                        out.push_str(&format!("{k}: {}\n", display_value(v)));
                    }
                    if profile && !p.is_empty() {
                        out.push_str(&p.to_slashes());
                        if !out.ends_with('\n') {
                            out.push('\n');
                        }
                    }
                }
            }
            for (k, v) in obj["stats"].as_object().unwrap() {
                out.push_str(&format!("{k}: {v}\n"));
            }
            Ok(out)
        }
        Format::Csv => Err(unsupported(format, "map")),
    }
}

fn display_value(v: &Value) -> String {
    match v {
        Value::Null => "none".into(),
        other => other.to_string(),
    }
}

fn invert(class: ClassTag, path: &str, format: Format) -> Result<String, Failure> {
    let p: LatticePath = path.parse()?;
    let sigma = phi_inverse(&p, class)?;
    match format {
        Format::Text => Ok(format!("{sigma}\n")),
        Format::Json => Ok(pretty(&json!({ "class": class.to_string(), "path": p.to_string(), "permutation": sigma.to_string() }))),
        Format::Csv => Err(unsupported(format, "invert")),
    }
}

fn enumerate(n: usize, basis: &PatternBasis, count: bool, format: Format) -> Result<String, Failure> {
    if count {
        let c = generate_class(n, basis).count();
        return match format {
            Format::Text => Ok(format!("{c}\n")),
            Format::Json => Ok(pretty(&json!({ "n": n, "basis": basis.label(), "count": c.to_string() }))),
            Format::Csv => Ok(format!("n,basis,count\n{n},{},{c}\n", basis.label())),
        };
    }
    let members = generate_class(n, basis);
    match format {
        Format::Text => Ok(members.map(|s| format!("{s}\n")).collect()),
        Format::Json => {
            let list: Vec<String> = members.map(|s| s.to_string()).collect();
            Ok(pretty(&json!({ "n": n, "basis": basis.label(), "permutations": list })))
        }
        Format::Csv => {
            let mut out = String::from("permutation\n");
            out.extend(members.map(|s| format!("{s}\n")));
            Ok(out)
        }
    }
}

fn dist(n: usize, basis: &PatternBasis, stats: &str, format: Format) -> Result<String, Failure> {
    let stats = parse_statistics(stats)?;
    let table = distribution(n, basis, &stats)?;
    Ok(match format {
        Format::Json => table.to_json() + "\n",
        Format::Csv => table.to_csv()?,
        Format::Text => table.to_text(),
    })
}

fn series(name: SeriesName, trunc: usize, format: Format) -> Result<String, Failure> {
    let s = build(name, trunc)?;
    match format {
        Format::Text => Ok(s.dump()),
        Format::Json => {
            let vars: Vec<String> = s.vars().iter().map(char::to_string).collect();
            let mut terms = s.terms();
            terms.sort_by(|(a, _), (b, _)| {
                let (da, db): (u32, u32) = (a.iter().sum(), b.iter().sum());
                da.cmp(&db).then_with(|| a.cmp(b))
            });
            let terms: Vec<Value> = terms
                .into_iter()
                .map(|(e, c)| json!({ "exponents": e, "coefficient": c.to_string() }))
                .collect();
            Ok(pretty(&json!({ "name": name.as_str(), "vars": vars, "trunc": trunc, "terms": terms })))
        }
        Format::Csv => Err(unsupported(format, "series")),
    }
}

fn verify(max_n: usize, format: Format) -> Result<(String, bool), Failure> {
    let report = verify_suite(max_n)?;
    let text = match format {
        Format::Text => format!("{report}\n"),
        Format::Json => report.to_json() + "\n",
        Format::Csv => return Err(unsupported(format, "verify")),
    };
    Ok((text, report.all_passed()))
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("plain JSON values") + "\n"
}

fn run(cli: Cli) -> Result<(String, bool), Failure> {
    let ok = |s: String| (s, true);
    match cli.command {
        Command::Map { perm, format, profile } => map(&perm, format, profile).map(ok),
        Command::Invert { class, path, format } => invert(class, &path, format).map(ok),
        Command::Enumerate { n, basis, count, format } => enumerate(n, &basis, count, format).map(ok),
        Command::Dist { n, basis, stats, format } => dist(n, &basis, &stats, format).map(ok),
        Command::Series { name, trunc, format } => series(name, trunc, format).map(ok),
        Command::Verify { max_n, format } => verify(max_n, format),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(cli).and_then(|(out, passed)| {
        let mut stdout = io::stdout().lock();
        let _ = stdout.write_all(out.as_bytes());
        if passed {
            Ok(())
        } else {
            Err(Failure::Verification)
        }
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => {
            eprintln!("verification failed");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

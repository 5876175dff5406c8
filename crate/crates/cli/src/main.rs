use std::io::{Read, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use loopgrass::arith::parse_rational;
use loopgrass::beta::{beta, evaluate_scaled_loop, scaled_loop_equals};
use loopgrass::circle::winding_number;
use loopgrass::corpus::generate;
use loopgrass::json::{module_to_json, rational_to_json, stratum_from_json, stratum_to_json, Json};
use loopgrass::ktheory::{closed_form_discrepancy, closed_form_rank, k_of_filtration, RingTag};
use loopgrass::lattice::{
    act, alpha, filtration_level, index_of_span, lattice_from_thom, pi, rank, thom_coords,
    truncated_operator, RawSpan,
};
use loopgrass::loops::{conjugate_action, index_of_loop};
use loopgrass::strata::{homotopy_h, phi, phi_inverse, section_s_r};
use loopgrass::{
    ConstantUnitary, Error, GaussianRational, HomomorphismData, LaurentPoly, Lattice, ProjectivePoint, ThomPoint,
    UnitaryLoop,
};

#[derive(Parser)]
#[command(name = "loopgrass", version, about = "Exact polynomial loops in SU(2) and their lattices")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Treat the input as a JSON array and process the items independently.
    #[arg(long, global = true)]
    batch: bool,

    /// Worker threads for `--batch` (output order is preserved).
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

/// A file path, `-` for stdin, or inline JSON.
#[derive(Args, Clone)]
struct Input {
    input: String,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a polynomial loop.
    CheckLoop(Input),
    /// Conjugate a loop, or translate a lattice, by a constant unitary.
    Act {
        #[command(flatten)]
        input: Input,
        /// Group element as a constant matrix (path or inline JSON).
        #[arg(long)]
        group: String,
    },
    /// Index of a loop, with the truncated operator at depths N and N+1.
    Index(Input),
    /// Winding number of a Laurent polynomial around 0 on the unit circle.
    Winding(Input),
    /// The lattice of a loop.
    Alpha {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        r: Option<usize>,
    },
    /// The loop of a lattice, with optional enclosures.
    Beta {
        #[command(flatten)]
        input: Input,
        /// Evaluation point on the unit circle, e.g. `z=i` or `z=3/5+4/5i`.
        #[arg(long)]
        eval: Option<String>,
        #[arg(long, default_value_t = 64)]
        bits: u32,
    },
    /// Check β(α(f)) = f.
    Roundtrip(Input),
    Rank(Input),
    Level(Input),
    Pi(Input),
    /// Thom coordinates of a lattice in F_{2r}.
    Thom {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        r: Option<usize>,
    },
    /// The lattice with given Thom coordinates.
    ThomInverse {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        r: usize,
    },
    /// The section s_r at a point of ℙ¹.
    Section {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        r: usize,
    },
    /// The bundle map φ on stratum data and a fiber vector.
    Phi(Input),
    /// Stratum data and fiber of a lattice in U_λ.
    PhiInv {
        #[command(flatten)]
        input: Input,
        /// Homomorphism data (path or inline JSON).
        #[arg(long)]
        lambda: String,
    },
    /// The deformation H_t at an exact t ∈ [0, 1].
    Homotopy {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        t: String,
    },
    /// Ranks of K_G(F_{2r}) or K_T(F_{2r}).
    Ktheory {
        #[arg(long, default_value = "RG")]
        ring: String,
        #[arg(long)]
        level: usize,
    },
    /// Emit the seeded test corpus.
    GenCorpus {
        #[arg(long, default_value_t = 3)]
        max_r: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Kernel and cokernel of the projection to 𝒦₊ for a raw generator set.
    OracleIndex {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        r: usize,
    },
}

enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) => Failure::Usage(e.to_string()),
            e => Failure::Domain(e),
        }
    }
}

type Out = Result<Report, Failure>;

/// Structured result plus its one-line text rendering, if it has one.
struct Report {
    json: Value,
    text: Option<String>,
}

impl Report {
    fn json(json: Value) -> Self {
        Report { json, text: None }
    }

    fn with_text(json: Value, text: String) -> Self {
        Report { json, text: Some(text) }
    }
}

fn read_source(s: &str) -> Result<Value, Failure> {
    let trimmed = s.trim_start();
    let text = if trimmed.starts_with('{') || trimmed.starts_with('[') {
        s.to_owned()
    } else if s == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf).map_err(|e| Failure::Usage(format!("stdin: {e}")))?;
        buf
    } else {
        std::fs::read_to_string(s).map_err(|e| Failure::Usage(format!("{s}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{s}: invalid JSON: {e}")))
}

fn window_cap() -> usize {
    std::env::var("LOOPGRASS_MAX_WINDOW").ok().and_then(|v| v.parse().ok()).unwrap_or(64)
}

fn check_window(r: usize) -> Result<(), Failure> {
    let (slots, cap) = (4 * r, window_cap());
    if slots > cap {
        return Err(Failure::Domain(Error::WindowTooLarge { slots, cap }));
    }
    Ok(())
}

fn lattice_in(v: &Value) -> Result<Lattice, Failure> {
    if let Some(r) = v.get("r").and_then(Value::as_u64) {
        check_window(r as usize)?;
    }
    Ok(Lattice::from_json(v)?)
}

fn lattice_out(w: &Lattice) -> Out {
    check_window(w.r())?;
    Ok(Report::json(w.to_json()))
}

fn loop_in(v: &Value) -> Result<UnitaryLoop, Failure> {
    let f = UnitaryLoop::from_json(v)?;
    check_window(f.degree_bound())?;
    Ok(f)
}

fn group_name(f: &UnitaryLoop) -> &'static str {
    match f.tag() {
        loopgrass::GroupTag::SU2 => "SU(2)",
        loopgrass::GroupTag::U2 => "U(2)",
    }
}

fn parse_point(s: &str) -> Result<GaussianRational, Failure> {
    let bad = || Failure::Usage(format!("cannot read evaluation point {s:?}; use z=1, z=-1, z=i, z=-i or z=a/b+c/di"));
    let v = s.strip_prefix("z=").unwrap_or(s).replace(' ', "");
    match v.as_str() {
        "1" => return Ok(GaussianRational::one()),
        "-1" => return Ok(GaussianRational::from_ints(-1, 0)),
        "i" => return Ok(GaussianRational::i()),
        "-i" => return Ok(GaussianRational::from_ints(0, -1)),
        _ => {}
    }
    let body = v.strip_suffix('i').ok_or_else(bad)?;
    let split = body.char_indices().skip(1).filter(|(_, c)| *c == '+' || *c == '-').last().ok_or_else(bad)?.0;
    let re = parse_rational(&body[..split]).map_err(|_| bad())?;
    let im = parse_rational(body[split..].trim_start_matches('+')).map_err(|_| bad())?;
    Ok(GaussianRational::new(re, im))
}

fn run_one(cmd: &Command, input: &Value) -> Out {
    match cmd {
        Command::CheckLoop(_) => {
            let f = loop_in(input)?;
            Ok(Report::with_text(
                json!({"valid": true, "r": f.degree_bound(), "group": group_name(&f)}),
                format!("valid Ω_poly,{} {}", f.degree_bound(), group_name(&f)),
            ))
        }
        Command::Act { group, .. } => {
            let g = ConstantUnitary::from_json(&read_source(group)?)?;
            if input.get("basis").is_some() {
                lattice_out(&act(&g, &lattice_in(input)?))
            } else {
                Ok(Report::json(conjugate_action(&g, &loop_in(input)?)?.to_json()))
            }
        }
        Command::Index(_) => {
            let f = loop_in(input)?;
            let idx = index_of_loop(&f)?;
            let w = winding_number(&f.matrix().det())?.winding;
            let n = f.degree_bound();
            let ops: Vec<Value> = [n, n + 1]
                .iter()
                .map(|&d| {
                    truncated_operator(&f, d).map(|t| {
                        json!({"depth": d, "kernel": t.kernel_dim, "cokernel": t.cokernel_dim, "index": t.index()})
                    })
                })
                .collect::<Result<_, _>>()?;
            Ok(Report::with_text(
                json!({"index": idx, "winding_det": w, "operator": ops}),
                format!("index {idx} (winding of det {w}; truncated operator index {})", ops[0]["index"]),
            ))
        }
        Command::Winding(_) => {
            let p = LaurentPoly::from_json(input)?;
            let res = winding_number(&p)?;
            Ok(Report::with_text(
                json!({"winding": res.winding, "roots_inside": res.roots_inside, "pole_order_at_zero": res.pole_order_at_zero}),
                format!("winding {}", res.winding),
            ))
        }
        Command::Alpha { r, .. } => {
            let f = loop_in(input)?;
            let r = r.unwrap_or(f.degree_bound());
            check_window(r)?;
            lattice_out(&alpha(&f, r)?)
        }
        Command::Beta { eval, bits, .. } => {
            let w = lattice_in(input)?;
            let s = beta(&w)?;
            let mut out = s.to_json();
            if let Some(point) = eval {
                let z = parse_point(point)?;
                let e = evaluate_scaled_loop(&s, &z, *bits)?;
                let entries: Vec<Value> = e
                    .entries
                    .iter()
                    .map(|row| {
                        Value::Array(row.iter().map(|b| json!([rational_to_json(&b.re), rational_to_json(&b.im)])).collect())
                    })
                    .collect();
                out["samples"] = json!([{"z": z.to_json(), "entries": entries, "radius": rational_to_json(&e.radius), "unitary": e.unitary}]);
            }
            Ok(Report::json(out))
        }
        Command::Roundtrip(_) => {
            let f = loop_in(input)?;
            let ok = scaled_loop_equals(&beta(&alpha(&f, f.degree_bound())?)?, &f)?;
            Ok(Report::with_text(json!({"beta_alpha_identity": ok}), format!("beta(alpha(f)) == f: {ok}")))
        }
        Command::Rank(_) => {
            let k = rank(&lattice_in(input)?);
            Ok(Report::with_text(json!({"rank": k}), format!("rank {k}")))
        }
        Command::Level(_) => {
            let l = filtration_level(&lattice_in(input)?);
            Ok(Report::with_text(json!({"level": l}), format!("level {l}")))
        }
        Command::Pi(_) => {
            let x = pi(&lattice_in(input)?)?;
            Ok(Report::with_text(x.to_json(), format!("{x}")))
        }
        Command::Thom { r, .. } => {
            let w = lattice_in(input)?;
            let r = r.unwrap_or_else(|| filtration_level(&w));
            Ok(Report::json(thom_coords(&w, r)?.to_json()))
        }
        Command::ThomInverse { r, .. } => {
            check_window(*r)?;
            lattice_out(&lattice_from_thom(&ThomPoint::from_json(input)?, *r)?)
        }
        Command::Section { r, .. } => {
            check_window(*r)?;
            lattice_out(&section_s_r(&ProjectivePoint::from_json(input)?, *r)?)
        }
        Command::Phi(_) => {
            let (s, x) = stratum_from_json(input)?;
            lattice_out(&phi(&s, &x)?)
        }
        Command::PhiInv { lambda, .. } => {
            let lam = HomomorphismData::from_json(&read_source(lambda)?)?;
            let (s, x) = phi_inverse(&lattice_in(input)?, &lam)?;
            Ok(Report::json(stratum_to_json(&s, &x)))
        }
        Command::Homotopy { t, .. } => {
            let t = parse_rational(t).map_err(|e| Failure::Usage(e.to_string()))?;
            let (s, _) = stratum_from_json(input)?;
            lattice_out(&homotopy_h(&s, &t)?)
        }
        Command::OracleIndex { r, .. } => {
            check_window(*r)?;
            let gens: Vec<loopgrass::VectorLaurent> = match input.get("basis") {
                Some(_) => lattice_in(input)?.basis_vectors(),
                None => loopgrass::LaurentMatrix::from_json(input)?.columns(),
            };
            let d = index_of_span(&RawSpan::from_generators(*r, &gens)?);
            Ok(Report::with_text(
                json!({"kernel": d.kernel, "cokernel": d.cokernel, "index": d.index()}),
                format!("kernel {}, cokernel {}, index {}", d.kernel, d.cokernel, d.index()),
            ))
        }
        Command::Ktheory { .. } | Command::GenCorpus { .. } => unreachable!("takes no input"),
    }
}

fn ktheory(ring: &str, level: usize) -> Out {
    let ring: RingTag = ring.parse().map_err(|e: Error| Failure::Usage(e.to_string()))?;
    let m = k_of_filtration(level, ring);
    let mut v = module_to_json(&m);
    v["closed_form_rank"] = json!(closed_form_rank(level));
    v["discrepancy"] = json!(closed_form_discrepancy(level));
    let mut text = format!("K_{}(F_{}): even rank {}, odd rank {}", if ring == RingTag::RG { "G" } else { "T" }, 2 * level, m.even_rank(), m.odd_rank);
    if let Some(d) = closed_form_discrepancy(level) {
        text.push_str(&format!("\nnote: {d}"));
    }
    Ok(Report::with_text(v, text))
}

fn gen_corpus(max_r: usize, seed: u64) -> Out {
    check_window(2 * max_r)?;
    let c = generate(max_r, seed);
    let named = |v: &[(String, UnitaryLoop)]| -> Vec<Value> { v.iter().map(|(n, f)| json!({"name": n, "loop": f.to_json()})).collect() };
    Ok(Report::json(json!({
        "seed": seed,
        "max_r": max_r,
        "group_elements": c.group_elements.iter().map(Json::to_json).collect::<Vec<_>>(),
        "loops": named(&c.loops),
        "u2_loops": named(&c.u2_loops),
        "lattices": c.lattices.iter().map(|(n, w)| json!({"name": n, "lattice": w.to_json()})).collect::<Vec<_>>(),
        "strata": c.strata.iter().map(|(s, x)| stratum_to_json(s, x)).collect::<Vec<_>>(),
    })))
}

fn input_of(cmd: &Command) -> Option<&str> {
    Some(match cmd {
        Command::CheckLoop(i) | Command::Index(i) | Command::Winding(i) | Command::Roundtrip(i) => &i.input,
        Command::Rank(i) | Command::Level(i) | Command::Pi(i) | Command::Phi(i) => &i.input,
        Command::Act { input, .. }
        | Command::Alpha { input, .. }
        | Command::Beta { input, .. }
        | Command::Thom { input, .. }
        | Command::ThomInverse { input, .. }
        | Command::Section { input, .. }
        | Command::PhiInv { input, .. }
        | Command::Homotopy { input, .. }
        | Command::OracleIndex { input, .. } => &input.input,
        Command::Ktheory { .. } | Command::GenCorpus { .. } => return None,
    })
}

fn error_json(f: &Failure) -> Value {
    match f {
        Failure::Usage(m) => json!({"error": "usage", "message": m}),
        Failure::Domain(Error::InvalidLoop(vs)) => json!({
            "error": "invalid_loop",
            "violations": vs.iter().map(|v| json!({"kind": v.kind(), "message": v.to_string()})).collect::<Vec<_>>(),
        }),
        Failure::Domain(e) => json!({"error": "domain", "message": e.to_string()}),
    }
}

fn render(report: &Report, format: Format) -> String {
    match (format, &report.text) {
        (Format::Text, Some(t)) => t.clone(),
        (Format::Text, None) => serde_json::to_string_pretty(&report.json).unwrap(),
        (Format::Json, _) => serde_json::to_string(&report.json).unwrap(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let single = match &cli.command {
        Command::Ktheory { ring, level } => Some(ktheory(ring, *level)),
        Command::GenCorpus { max_r, seed } => Some(gen_corpus(*max_r, *seed)),
        _ => None,
    };
    let result = match single {
        Some(r) => r,
        None => {
            let src = input_of(&cli.command).unwrap();
            read_source(src).and_then(|v| {
                if !cli.batch {
                    return run_one(&cli.command, &v);
                }
                let items = v.as_array().ok_or_else(|| Failure::Usage("--batch expects a JSON array".into()))?;
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(cli.jobs.unwrap_or(0))
                    .build()
                    .map_err(|e| Failure::Usage(e.to_string()))?;
                let outs: Vec<Out> = pool.install(|| items.par_iter().map(|item| run_one(&cli.command, item)).collect());
                let failed = outs.iter().filter(|o| o.is_err()).count();
                let json: Vec<Value> = outs.iter().map(|o| match o {
                    Ok(r) => r.json.clone(),
                    Err(f) => error_json(f),
                }).collect();
                if failed > 0 {
                    println!("{}", serde_json::to_string(&json).unwrap());
                    return Err(Failure::Domain(Error::Domain(format!("{failed} of {} items failed", outs.len()))));
                }
                Ok(Report::json(Value::Array(json)))
            })
        }
    };
    match result {
        Ok(report) => {
            let mut out = std::io::stdout().lock();
            // a closed pipe downstream is not an error worth reporting
            let _ = writeln!(out, "{}", render(&report, cli.format));
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("{}", serde_json::to_string(&error_json(&f)).unwrap());
            ExitCode::from(match f {
                Failure::Usage(_) => 2,
                Failure::Domain(_) => 1,
            })
        }
    }
}

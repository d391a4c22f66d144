use clap::{Args, Parser, Subcommand};
use floer::alexander::{self, Alexander, KnotInput, Profile};
use floer::graded::deg_to_string;
use floer::surgery::{self, Slope};
use floer::{lens, seifert, selftest};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "floer", version, about = "Heegaard Floer surgery calculator")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

/// Knot input, either a description file or inline flags. Inline flags
/// override the corresponding file fields.
#[derive(Args)]
struct KnotArgs {
    /// knot description file (alexander:, nu:, aranks:, lspace:)
    #[arg(long)]
    knot: Option<PathBuf>,
    /// alexander coefficients, one-sided "a0 a1 .. ag" or full list
    #[arg(long, allow_hyphen_values = true)]
    alexander: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    nu: Option<i64>,
    /// hat ranks as "s:rank" pairs, comma separated
    #[arg(long, allow_hyphen_values = true)]
    aranks: Option<String>,
    #[arg(long)]
    lspace: Option<bool>,
}

impl KnotArgs {
    fn input(&self) -> floer::Result<KnotInput> {
        let mut input = match &self.knot {
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| {
                    floer::Error::Domain(format!("cannot read {}: {}", path.display(), e))
                })?;
                alexander::parse_knot_file(&text)?
            }
            None => {
                let alex = self.alexander.as_deref().ok_or_else(|| {
                    floer::Error::Domain("need --knot or --alexander".into())
                })?;
                KnotInput {
                    alex: Alexander::parse(alex)?,
                    nu: None,
                    aranks: None,
                    lspace: None,
                }
            }
        };
        if self.knot.is_some() {
            if let Some(alex) = &self.alexander {
                input.alex = Alexander::parse(alex)?;
            }
        }
        if let Some(nu) = self.nu {
            input.nu = Some(nu);
        }
        if let Some(ar) = &self.aranks {
            input.aranks = Some(alexander::parse_aranks(ar)?);
        }
        if let Some(l) = self.lspace {
            input.lspace = Some(l);
        }
        Ok(input)
    }

    fn profile(&self) -> floer::Result<Profile> {
        alexander::profile_from_input(&self.input()?)
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Torsion coefficients of an Alexander polynomial
    Torsion {
        #[command(flatten)]
        knot: KnotArgs,
    },
    /// d-invariants of the lens space L(p,q)
    Dlens {
        /// the surgery coefficient p/q, p > 0
        slope: String,
    },
    /// HF+ of p/q surgery on a knot, per spin-c label
    Surgery {
        #[command(flatten)]
        knot: KnotArgs,
        #[arg(long, allow_hyphen_values = true)]
        slope: String,
        /// report hat-flavor ranks instead of the full modules
        #[arg(long)]
        hat: bool,
        #[arg(long)]
        json: bool,
    },
    /// HF+ of a Seifert fibered space
    Seifert {
        #[arg(long)]
        genus: i64,
        /// invariants "a; r1/q1; r2/q2; ..."
        #[arg(long, allow_hyphen_values = true)]
        data: String,
        /// spin-c representative "xi0,xi1,..."
        #[arg(long, allow_hyphen_values = true)]
        spinc: Option<String>,
        #[arg(long = "all-spinc")]
        all_spinc: bool,
        #[arg(long)]
        json: bool,
        /// print ASCII bars of the height functions
        #[arg(long)]
        sketch: bool,
    },
    /// Total hat-flavor rank of a surgery and L-space status
    Rank {
        #[command(flatten)]
        knot: KnotArgs,
        #[arg(long, allow_hyphen_values = true)]
        slope: String,
    },
    /// Obstruction screens for cosmetic surgery pairs
    Cosmetic {
        #[command(flatten)]
        knot: KnotArgs,
        #[arg(long, allow_hyphen_values = true)]
        p: i64,
        #[arg(long)]
        qmax: i64,
        /// screen for orientation-preserving homeomorphisms
        #[arg(long)]
        oriented: bool,
        #[arg(long)]
        json: bool,
    },
    /// Run the built-in acceptance checks
    Selftest,
}

fn run(cli: Cli) -> floer::Result<bool> {
    match cli.cmd {
        Cmd::Torsion { knot } => {
            let alex = knot.input()?.alex;
            for (i, t) in alex.torsions() {
                println!("t{} {}", i, t);
            }
        }
        Cmd::Dlens { slope } => {
            let slope = Slope::parse(&slope)?;
            if slope.p < 1 {
                return Err(floer::Error::Domain("lens spaces need p > 0".into()));
            }
            for (i, d) in lens::d_lens_all(slope.p, slope.q)?.iter().enumerate() {
                println!("{} {}", i, deg_to_string(*d));
            }
        }
        Cmd::Surgery { knot, slope, hat, json } => {
            let prof = knot.profile()?;
            let slope = Slope::parse(&slope)?;
            if hat {
                let labels = surgery::hf_hat_rank_labels(&prof, slope)?;
                let total: u64 = labels.iter().map(|&(_, r)| r).sum();
                if json {
                    let v = serde_json::json!({
                        "slope": slope.to_string(),
                        "ranks": labels.iter().map(|&(i, r)| serde_json::json!([i, r]))
                            .collect::<Vec<_>>(),
                        "total": total,
                    });
                    println!("{}", v);
                } else {
                    for (i, r) in labels {
                        println!("spinc {} rank {}", i, r);
                    }
                    println!("total {}", total);
                }
            } else {
                let mods = surgery::surgery_hfp(&prof, slope)?;
                if json {
                    let v = serde_json::json!({
                        "slope": slope.to_string(),
                        "residues": mods.iter().map(|(i, m)| serde_json::json!({
                            "spinc": i,
                            "d": deg_to_string(m.towers()[0]),
                            "module": m.to_json(),
                        })).collect::<Vec<_>>(),
                    });
                    println!("{}", v);
                } else {
                    for (i, m) in mods {
                        println!("spinc {}", i);
                        println!("d {}", deg_to_string(m.towers()[0]));
                        print!("{}", m.to_text());
                    }
                }
            }
        }
        Cmd::Seifert { genus, data, spinc, all_spinc, json, sketch } => {
            let data = seifert::SeifertData::parse(genus, &data)?;
            let classes: Vec<Vec<i64>> = match (&spinc, all_spinc) {
                (Some(_), true) => {
                    return Err(floer::Error::Domain(
                        "--spinc and --all-spinc are mutually exclusive".into(),
                    ))
                }
                (Some(text), false) => {
                    let xi: Vec<i64> = text
                        .split(',')
                        .map(|t| {
                            t.trim().parse::<i64>().map_err(|_| {
                                floer::Error::Domain(format!("bad spin-c entry '{}'", t))
                            })
                        })
                        .collect::<floer::Result<_>>()?;
                    vec![xi]
                }
                (None, _) => {
                    let all = data.spinc_classes();
                    if !all_spinc && all.len() > 1 {
                        return Err(floer::Error::Domain(format!(
                            "{} spin-c classes; pick one with --spinc or use --all-spinc",
                            all.len()
                        )));
                    }
                    all
                }
            };
            let mut out = Vec::new();
            for xi in &classes {
                out.push((xi.clone(), seifert::seifert_hfp(&data, xi)?));
            }
            if json {
                let v = serde_json::json!({
                    "degree": format!("{}", data.degree()),
                    "flipped": data.flipped,
                    "classes": out.iter().map(|(xi, m)| serde_json::json!({
                        "spinc": xi,
                        "module": m.to_json(),
                    })).collect::<Vec<_>>(),
                });
                println!("{}", v);
            } else {
                if data.flipped {
                    println!("note: negative degree input, orientation reversed");
                }
                for (xi, m) in &out {
                    let label: Vec<String> = xi.iter().map(|v| v.to_string()).collect();
                    println!("spinc {}", label.join(","));
                    if sketch {
                        for t in -data.genus..=data.genus {
                            let (lo, h) = data.heights(xi, t)?;
                            let min = *h.iter().min().unwrap();
                            println!("sketch t={}", t);
                            for (k, v) in h.iter().enumerate() {
                                let bar = "#".repeat((v - min + 1) as usize);
                                println!("{:>5} {}", lo + k as i64, bar);
                            }
                        }
                    }
                    print!("{}", m.to_text());
                }
            }
        }
        Cmd::Rank { knot, slope } => {
            let prof = knot.profile()?;
            let slope = Slope::parse(&slope)?;
            println!("rank {}", surgery::hf_hat_rank_formula(&prof, slope));
            println!("lspace {}", surgery::is_lspace_surgery(&prof, slope));
        }
        Cmd::Cosmetic { knot, p, qmax, oriented, json } => {
            let prof = knot.profile()?;
            let results = floer::cosmetic::scan(&prof, p, qmax, oriented)?;
            if json {
                let v = serde_json::json!({
                    "p": p,
                    "trivial": prof.is_trivial(),
                    "pairs": results.iter().map(|r| serde_json::json!({
                        "q": r.q,
                        "q2": r.q2,
                        "verdict": r.verdict.to_string(),
                        "note": r.note,
                    })).collect::<Vec<_>>(),
                });
                println!("{}", v);
            } else {
                println!("note: rank obstructions computed over F2");
                if prof.is_trivial() {
                    println!("note: the unknot admits cosmetic surgeries; screens only obstruct");
                }
                for r in &results {
                    let mut line = format!("{}/{} vs {}/{}: {}", p, r.q, p, r.q2, r.verdict);
                    if let Some(n) = &r.note {
                        line.push_str(&format!(" ({})", n));
                    }
                    println!("{}", line);
                }
            }
        }
        Cmd::Selftest => {
            let mut ok = true;
            for c in selftest::criteria() {
                match (c.run)() {
                    Ok(()) => println!("criterion {} ({}): pass", c.index, c.name),
                    Err(msg) => {
                        ok = false;
                        println!("criterion {} ({}): FAIL {}", c.index, c.name, msg);
                    }
                }
            }
            return Ok(ok);
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(1)
        }
    }
}

//! CLI front end: analysis, elimination, census, demo, and self-test
//! pipelines with stable text/JSON output.
//!
//! Exit codes: 0 success, 1 elimination under --fail-on-eliminated,
//! 2 parse/usage error, 3 internal invariant violation.

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use vtlink::cayley::{self, CensusOptions};
use vtlink::eliminate::{self, Outcome, Scope};
use vtlink::structure::{orbit_restrictors, NbhdAnalysis};
use vtlink::{Graph, Options};

const EXIT_PARSE: u8 = 2;
const EXIT_INVARIANT: u8 = 3;

#[derive(Parser)]
#[command(
    name = "vtlink",
    version,
    about = "Decide whether a graph is certified NOT to be the induced \
             neighbourhood of any finite vertex-transitive (or Cayley) graph"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Graph6,
    Edges,
    Auto,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ScopeArg {
    /// count only vertex-transitive-scope eliminations
    VertexTransitive,
    /// count eliminations at either scope
    CayleyOnly,
}

#[derive(Subcommand)]
enum Cmd {
    /// Structural summary: classes, orbit-restrictors, fixed subsets
    Analyze {
        /// input file, or - for stdin
        input: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Auto)]
        format: Format,
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = 8)]
        max_clique_order: usize,
    },
    /// Run the elimination rules and print the report
    Eliminate {
        /// input file, or - for stdin
        input: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Auto)]
        format: Format,
        #[arg(long)]
        json: bool,
        /// run every rule instead of stopping at the first elimination
        #[arg(long)]
        all_rules: bool,
        #[arg(long, default_value_t = 8)]
        max_clique_order: usize,
        #[arg(long, value_enum)]
        scope: Option<ScopeArg>,
        /// exit 1 when the overall verdict is eliminated
        #[arg(long)]
        fail_on_eliminated: bool,
    },
    /// Build or load the Cayley neighbourhood census and check soundness
    Census {
        /// census file; defaults to $NEIGHBOURHOOD_CENSUS_PATH
        #[arg(long)]
        census_path: Option<PathBuf>,
        #[arg(long, default_value_t = 16)]
        max_group_order: usize,
        #[arg(long)]
        max_connection_size: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// The semidihedral worked example
    Demo {
        #[arg(long)]
        json: bool,
    },
    /// Brute-force oracle suites
    Selftest,
}

fn read_source(input: &Option<PathBuf>) -> std::io::Result<String> {
    match input {
        Some(path) if path.as_os_str() != "-" => std::fs::read_to_string(path),
        _ => {
            let mut buf = String::new();
            std::io::stdin().read_to_string(&mut buf)?;
            buf.truncate(buf.trim_end().len());
            Ok(buf)
        }
    }
}

/// Parse the input into one or more graphs. graph6 input is batch: one
/// graph per nonempty line. Edge-list input is a single graph.
fn parse_graphs(text: &str, format: Format) -> Result<Vec<Graph>, String> {
    let graph6_lines = |text: &str| -> Result<Vec<Graph>, String> {
        text.lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(|l| vtlink::parse_graph6(l).map_err(|e| e.to_string()))
            .collect()
    };
    match format {
        Format::Graph6 => graph6_lines(text),
        Format::Edges => Ok(vec![vtlink::parse_edge_list(text).map_err(|e| e.to_string())?]),
        Format::Auto => {
            let first = text
                .lines()
                .map(str::trim)
                .find(|l| !l.is_empty() && !l.starts_with('#'));
            match first {
                Some(l) if vtlink::parse_graph6(l).is_ok() => graph6_lines(text),
                _ => Ok(vec![vtlink::parse_edge_list(text).map_err(|e| e.to_string())?]),
            }
        }
    }
}

fn labels_of(g: &Graph, set: &vtlink::VertexSet) -> Vec<String> {
    set.iter().map(|v| g.label_of(v)).collect()
}

fn cmd_analyze(g: &Graph, json: bool, max_clique_order: usize) {
    let stats = g.stats();
    let asymmetric = vtlink::is_asymmetric(g);
    let analysis = NbhdAnalysis::new(g);
    let restrictors = orbit_restrictors(&analysis, max_clique_order);

    let classes: Vec<serde_json::Value> = (0..analysis.class_count())
        .map(|c| {
            let rep = analysis.class_rep(c);
            json!({
                "members": labels_of(g, &analysis.partition.classes[c]),
                "representative": g.label_of(rep),
                "max_fixed_subset": labels_of(g, &analysis.max_fixed_subset(rep)),
            })
        })
        .collect();
    let value = json!({
        "n": stats.n,
        "m": stats.m,
        "valencies": stats.valencies,
        "asymmetric": asymmetric,
        "classes": classes,
        "orbit_restrictors": restrictors.iter().map(|s| labels_of(g, s)).collect::<Vec<_>>(),
        "limits": {"max_clique_order": max_clique_order},
    });
    if json {
        println!("{}", serde_json::to_string(&value).unwrap());
        return;
    }
    println!("n={} m={} asymmetric={}", stats.n, stats.m, asymmetric);
    println!("valencies: {:?}", stats.valencies);
    println!("classes ({}):", analysis.class_count());
    for c in 0..analysis.class_count() {
        let rep = analysis.class_rep(c);
        println!(
            "  [{}] F = {{{}}}",
            labels_of(g, &analysis.partition.classes[c]).join(" "),
            labels_of(g, &analysis.max_fixed_subset(rep)).join(" ")
        );
    }
    println!("orbit-restrictors up to order {max_clique_order}:");
    for s in &restrictors {
        println!("  {{{}}}", labels_of(g, s).join(" "));
    }
}

fn print_report_text(report: &eliminate::EliminationReport) {
    println!(
        "input: {} (n={}, m={}) asymmetric={}",
        report.input, report.n, report.m, report.asymmetric
    );
    for v in &report.rules {
        println!(
            "  {:<27} {:<14} [{}] {}",
            v.id.to_string(),
            v.outcome.to_string(),
            v.scope,
            v.explanation
        );
    }
    match (&report.overall.rule, &report.overall.scope) {
        (Some(rule), Some(scope)) => {
            println!("overall: {} by {} at {} scope", report.overall.outcome, rule, scope)
        }
        _ => println!("overall: {}", report.overall.outcome),
    }
}

fn cmd_eliminate(graphs: &[Graph], opts: &Options, json: bool, fail_on_eliminated: bool) -> u8 {
    let mut any_eliminated = false;
    for g in graphs {
        let report = eliminate::run_all(g, opts);
        // every eliminated verdict must survive its own witness re-check
        for v in &report.rules {
            if v.outcome == Outcome::Eliminated && !eliminate::verify_witness(g, v, opts) {
                eprintln!("internal error: witness re-check failed for {}", v.id);
                return EXIT_INVARIANT;
            }
        }
        any_eliminated |= report.overall.outcome == Outcome::Eliminated;
        if json {
            println!("{}", serde_json::to_string(&report).unwrap());
        } else {
            print_report_text(&report);
        }
    }
    u8::from(fail_on_eliminated && any_eliminated)
}

fn cmd_census(
    census_path: Option<PathBuf>,
    max_group_order: usize,
    max_connection_size: Option<usize>,
    json: bool,
) -> u8 {
    let path = census_path.or_else(|| {
        std::env::var_os("NEIGHBOURHOOD_CENSUS_PATH").map(PathBuf::from)
    });
    let census = match &path {
        Some(p) if p.exists() => match cayley::Census::load(p) {
            Ok(c) => {
                eprintln!("loaded census from {}", p.display());
                c
            }
            Err(e) => {
                eprintln!("error: cannot load census: {e}");
                return EXIT_PARSE;
            }
        },
        _ => {
            let groups: Vec<_> = cayley::catalog()
                .into_iter()
                .filter(|(_, g)| g.order() <= max_group_order)
                .collect();
            let census = cayley::neighbourhood_census(
                &groups,
                &CensusOptions {
                    max_size: max_connection_size,
                    ..CensusOptions::default()
                },
            );
            if let Some(p) = &path {
                if let Err(e) = census.save(p) {
                    eprintln!("error: cannot save census: {e}");
                    return EXIT_PARSE;
                }
                eprintln!("saved census to {}", p.display());
            }
            census
        }
    };
    let violations = cayley::soundness_check(&census, &Options::default());
    if json {
        let value = json!({
            "meta": census.meta,
            "members": census.forms.len(),
            "violations": violations
                .iter()
                .map(|v| json!({"member": v.member, "detail": v.detail}))
                .collect::<Vec<_>>(),
        });
        println!("{}", serde_json::to_string(&value).unwrap());
    } else {
        println!("census: {} distinct neighbourhood forms", census.forms.len());
        println!("meta: {}", census.meta);
        if violations.is_empty() {
            println!("soundness: ok (0 violations)");
        } else {
            for v in &violations {
                println!("violation: {v}");
            }
        }
    }
    if violations.is_empty() {
        0
    } else {
        EXIT_INVARIANT
    }
}

fn cmd_demo(json: bool) -> u8 {
    let report = match cayley::semidihedral_demo() {
        Ok(r) => r,
        Err(e) => {
            eprintln!("internal error: {e}");
            return EXIT_INVARIANT;
        }
    };
    if json {
        let value = json!({
            "graph6": report.graph6,
            "neighbourhood_vertices": report.neighbourhood_names,
            "edges": vtlink::codec::emit_edge_list(&report.neighbourhood),
            "elimination": report.elimination,
        });
        println!("{}", serde_json::to_string(&value).unwrap());
    } else {
        println!("{}", report.graph6);
        print!("{}", vtlink::codec::emit_edge_list(&report.neighbourhood));
        println!(
            "overall: {} (asymmetric={})",
            report.elimination.overall.outcome, report.elimination.asymmetric
        );
    }
    0
}

fn cmd_selftest() -> u8 {
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};
    let mut ok = true;
    let mut check = |name: &str, pass: bool| {
        println!("{} {}", if pass { "PASS" } else { "FAIL" }, name);
        ok &= pass;
    };

    // automorphism groups vs brute force, exhaustive to n=5
    let mut aut_ok = true;
    for n in 0..=5 {
        for g in vtlink::brute::iso_class_representatives(n) {
            let fast = vtlink::automorphism_group(&g);
            let brute = vtlink::brute::automorphisms(&g);
            if fast.group_order != brute.len() as u128 {
                aut_ok = false;
            }
        }
    }
    check("automorphism oracle, all graphs n <= 5", aut_ok);

    // random sampling at n = 6, 7
    let mut rng = StdRng::seed_from_u64(7);
    let mut sample_ok = true;
    for n in [6usize, 7] {
        for _ in 0..150 {
            let edges: Vec<(usize, usize)> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .filter(|_| rng.gen_bool(0.5))
                .collect();
            let g = Graph::from_edges(n, &edges).unwrap();
            let fast = vtlink::automorphism_group(&g);
            if fast.group_order != vtlink::brute::automorphisms(&g).len() as u128 {
                sample_ok = false;
            }
        }
    }
    check("automorphism oracle, random graphs n = 6..7", sample_ok);

    // maximal fixed subsets dominate every exhaustively found fixed subset
    let mut fixed_ok = true;
    for _ in 0..50 {
        let n = rng.gen_range(2..=8);
        let edges: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|_| rng.gen_bool(0.4))
            .collect();
        let g = Graph::from_edges(n, &edges).unwrap();
        let analysis = NbhdAnalysis::new(&g);
        for v in 0..n {
            let f = analysis.max_fixed_subset(v);
            let c = analysis.class_common(analysis.partition.class_of[v]);
            let members = c.to_vec();
            if members.len() > 14 {
                continue;
            }
            for bits in 0..1u32 << members.len() {
                let z = vtlink::VertexSet::from_iter(
                    n,
                    members
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| bits >> i & 1 == 1)
                        .map(|(_, &m)| m),
                );
                if analysis.is_fixed_subset(v, &z) && !z.is_subset_of(&f) {
                    fixed_ok = false;
                }
            }
        }
    }
    check("fixed-subset exhaustion, random graphs n <= 8", fixed_ok);

    if ok {
        0
    } else {
        EXIT_INVARIANT
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.cmd {
        Cmd::Analyze {
            input,
            format,
            json,
            max_clique_order,
        } => match read_source(&input).map_err(|e| e.to_string()).and_then(|t| parse_graphs(&t, format)) {
            Ok(graphs) => {
                for g in &graphs {
                    cmd_analyze(g, json, max_clique_order);
                }
                0
            }
            Err(e) => {
                eprintln!("error: {e}");
                EXIT_PARSE
            }
        },
        Cmd::Eliminate {
            input,
            format,
            json,
            all_rules,
            max_clique_order,
            scope,
            fail_on_eliminated,
        } => {
            let opts = Options {
                all_rules,
                max_clique_order,
                scope_filter: scope.map(|s| match s {
                    ScopeArg::VertexTransitive => Scope::VertexTransitive,
                    ScopeArg::CayleyOnly => Scope::CayleyOnly,
                }),
                ..Options::default()
            };
            match read_source(&input).map_err(|e| e.to_string()).and_then(|t| parse_graphs(&t, format)) {
                Ok(graphs) => cmd_eliminate(&graphs, &opts, json, fail_on_eliminated),
                Err(e) => {
                    eprintln!("error: {e}");
                    EXIT_PARSE
                }
            }
        }
        Cmd::Census {
            census_path,
            max_group_order,
            max_connection_size,
            json,
        } => cmd_census(census_path, max_group_order, max_connection_size, json),
        Cmd::Demo { json } => cmd_demo(json),
        Cmd::Selftest => cmd_selftest(),
    };
    ExitCode::from(code)
}

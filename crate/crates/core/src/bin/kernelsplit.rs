use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use kernelsplit::report::{self, AnalyzeReport, LieReport, LienReport, ReproduceReport};
use kernelsplit::GroupError;

const EXIT_OTHER: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_BOUND: u8 = 3;
const EXIT_ASSERTION: u8 = 4;

/// Automorphism groups, aut-split complements and lien splitting for small
/// finite groups.
///
/// Group specs: A5, S6, C2, PSL(2,9), "A5 x A5", "perm:(1 2 3)(4 5); (1 2)".
/// Cycle notation is 1-indexed. The trivial group counts as anti-solvable
/// and not characteristically simple. KERNELSPLIT_MAX_ORDER overrides the
/// enumeration cap of 10000 elements.
///
/// Exit codes: 0 success, 1 other error, 2 parse or parameter error,
/// 3 size bound exceeded, 4 a reproduced claim failed.
#[derive(Parser, Debug)]
#[command(name = "kernelsplit", version, verbatim_doc_comment)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Order, composition factors, anti-solvability, Aut/Out and aut-splitness.
    Analyze { spec: String },
    /// Closed-form aut-split verdict for a simple group of Lie type, e.g. `lie A 1 3 2`.
    Lie {
        /// A B C D E F G 2A 2B 2D 3D 2E 2F 2G (a rank suffix such as E6 is accepted).
        family: String,
        rank: u32,
        p: u64,
        m: u32,
    },
    /// Neutrality of the lien (F, Gamma, kappa).
    Lien {
        #[arg(long = "f")]
        f: String,
        #[arg(long)]
        gamma: String,
        /// Classes of Gamma's generators as `index:label` pairs, e.g. `1:s,2:o3`;
        /// unlisted generators map to the trivial class.
        #[arg(long, default_value = "")]
        kappa: String,
    },
    /// A6 counterexample, PSL(2,q) cross-check and the lien sweep.
    Reproduce,
}

fn exit_code(e: &GroupError) -> u8 {
    if e.is_parse() || matches!(e, GroupError::InvalidLieParams(_)) {
        EXIT_PARSE
    } else if e.is_bound() {
        EXIT_BOUND
    } else {
        EXIT_OTHER
    }
}

fn emit<T: Serialize>(json: bool, value: &T, text: impl FnOnce(&T)) {
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(value).expect("report serializes")
        );
    } else {
        text(value);
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn print_analyze(r: &AnalyzeReport) {
    println!("group            {}", r.spec);
    println!("degree           {}", r.degree);
    println!("order            {}", r.order);
    println!("center order     {}", r.center_order);
    let factors: Vec<String> = r
        .composition_factors
        .iter()
        .map(|f| f.id.to_string())
        .collect();
    println!("composition      [{}]", factors.join(", "));
    println!("anti-solvable    {}", yes(r.anti_solvable));
    println!("|Aut|            {}", r.aut_order);
    println!("|Inn|            {}", r.inn_order);
    println!("|Out|            {}", r.out_order);
    for c in &r.outer_classes {
        let alias = if c.aliases.is_empty() {
            String::new()
        } else {
            format!(" ({})", c.aliases.join(", "))
        };
        println!(
            "  {}{alias}: order {} in Out, least element order {}",
            c.label, c.order_in_out, c.min_element_order
        );
    }
    println!("aut-split        {}", yes(r.aut_split));
    if let Some(w) = &r.complement {
        println!(
            "complement generators (images of {}):",
            w.f_generators.join(", ")
        );
        for imgs in &w.generator_images {
            println!("  {}", imgs.join(", "));
        }
    }
}

fn print_lie(r: &LieReport) {
    let v = &r.verdict;
    println!("group      {}", r.label);
    println!("d          {}", v.d);
    match v.triple {
        Some(t) => println!("triple     ({}, {}, {})", t[0], t[1], t[2]),
        None => println!("triple     -"),
    }
    println!("branch     {:?}", v.branch);
    println!("aut-split  {}", yes(v.aut_split));
}

fn print_lien(r: &LienReport) {
    println!("F          {}", r.f);
    println!("Gamma      {}", r.gamma);
    println!("|Out(F)|   {}", r.out_order);
    println!("kappa:");
    for k in &r.kappa {
        println!("  {} -> {}", k.gamma_element, k.class);
    }
    println!("neutral    {}", yes(r.neutral));
    if let Some(c) = &r.certificate {
        println!("certificate: {c}");
    }
    println!(
        "tower      split {}, agrees with search {}, hypothesis {}",
        yes(r.tower.split),
        yes(r.tower.agrees_with_search),
        if r.tower.hypothesis.satisfied {
            "satisfied"
        } else {
            "not satisfied"
        }
    );
    for step in &r.tower.trace {
        println!("  {step:?}");
    }
    if let Some(n) = r.extension_classes {
        println!("extension classes  {n}");
    }
    if let Some(w) = &r.section {
        println!("section (images of F's generators):");
        for (g, imgs) in w.gamma_generators.iter().zip(&w.generator_images) {
            println!("  {g} -> {}", imgs.join(", "));
        }
    }
}

fn print_reproduce(r: &ReproduceReport) {
    if let Some(a6) = &r.a6 {
        println!("A6 outer classes over C2:");
        for c in &a6.classes {
            println!(
                "  {} ({}): least order {}, involutions {}, neutral {}, extension classes {}",
                c.label,
                c.aliases.join(", "),
                c.min_element_order,
                c.involutions,
                yes(c.neutral),
                c.extension_classes
            );
        }
        println!(
            "  non-neutral: {}; involution in the m coset: none",
            a6.non_neutral
        );
    }
    println!("PSL(2,q) closed form vs search:");
    for c in &r.crosscheck {
        println!(
            "  q = {:>2}: {} / {} {}",
            c.q,
            yes(c.lie),
            yes(c.search),
            if c.agree { "ok" } else { "MISMATCH" }
        );
    }
    println!(
        "sweep: {} liens, {} neutral",
        r.sweep_total, r.sweep_neutral
    );
    for c in &r.sweep {
        println!(
            "  {:<8} {:<8} [{}] neutral {} tower {} verified {}",
            c.f,
            c.gamma,
            c.kappa.join(","),
            yes(c.neutral),
            yes(c.tower_split),
            yes(c.section_verified && c.tower_section_verified)
        );
    }
    if r.failures.is_empty() {
        println!("all claims hold");
    } else {
        for f in &r.failures {
            println!("FAILED: {f}");
        }
    }
}

fn run(cli: Cli) -> Result<u8, GroupError> {
    match cli.command {
        Command::Analyze { spec } => emit(cli.json, &report::analyze(&spec)?, print_analyze),
        Command::Lie { family, rank, p, m } => {
            emit(cli.json, &report::lie(&family, rank, p, m)?, print_lie)
        }
        Command::Lien { f, gamma, kappa } => {
            emit(cli.json, &report::lien(&f, &gamma, &kappa)?, print_lien)
        }
        Command::Reproduce => {
            let r = report::reproduce()?;
            emit(cli.json, &r, print_reproduce);
            if !r.failures.is_empty() {
                return Ok(EXIT_ASSERTION);
            }
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

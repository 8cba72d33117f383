//! One PASS/FAIL line per acceptance criterion. Runs at desk budget unless
//! `LATGENUS_BUDGET=full`.

#[allow(dead_code)]
#[path = "../../core/tests/props/mod.rs"]
mod props;

use std::time::{Duration, Instant};

use latgenus::enumerate::EnumConfig;
use latgenus::zoo::NamedLatticeCatalog;
use latgenus_cli::report::{Status, VerificationItem};
use latgenus_cli::verify::{verify_paper, Context};
use latgenus_cli::Budget;

const CRITERIA: [(u8, &str, u64); 9] = [
    (1, "eta reproduction", 5),
    (2, "census route equals direct signed sum", 10),
    (3, "theta consistency", 60),
    (4, "Leech class census and certificates", 300),
    (5, "Munoz sweep", 120),
    (6, "f-certificates and g4 bounds", 30),
    (7, "delta suite", 60),
    (8, "complement identifications", 120),
    (9, "plumbing verifications", 30),
];

/// Items that fail because the stated claim does not hold as printed; see
/// the decisions ledger.
const KNOWN_FAILURES: [&str; 1] = ["munoz-remark"];

const PROPERTY_CASES: u32 = 128;

fn main() {
    let budget = match std::env::var("LATGENUS_BUDGET").as_deref() {
        Ok("full") => Budget::Full,
        _ => Budget::Desk,
    };
    let ctx = Context::new(NamedLatticeCatalog::builtin(), EnumConfig::default(), budget);
    let items = verify_paper(&ctx);
    let mut unexpected = Vec::new();

    for (c, title, limit) in CRITERIA {
        let mine: Vec<&VerificationItem> = items.iter().filter(|i| i.criterion == Some(c)).collect();
        let elapsed: Duration = mine.iter().map(|i| i.elapsed).sum();
        let failed: Vec<&VerificationItem> = mine.iter().copied().filter(|i| i.status == Status::Fail).collect();
        let skipped = mine.iter().filter(|i| i.status == Status::Skipped).count();
        let in_time = elapsed <= Duration::from_secs(limit);
        let pass = !mine.is_empty() && failed.is_empty() && in_time;
        let mut line = format!(
            "{} criterion {c}: {title} ({} items, {:.2}s of {limit}s)",
            if pass { "PASS" } else { "FAIL" },
            mine.len(),
            elapsed.as_secs_f64()
        );
        if skipped > 0 {
            line.push_str(&format!(", {skipped} skipped at {} budget", budget.name()));
        }
        println!("{line}");
        for it in &failed {
            println!(
                "     {}: expected {} ; computed {}",
                it.id,
                it.expected,
                it.computed.as_deref().unwrap_or("-")
            );
            if !KNOWN_FAILURES.contains(&it.id.as_str()) {
                unexpected.push(it.id.clone());
            }
        }
        if !in_time {
            unexpected.push(format!("criterion {c} time"));
        }
        if mine.is_empty() {
            unexpected.push(format!("criterion {c} has no items"));
        }
    }

    let t = Instant::now();
    let suites: [(&str, fn(u32) -> Result<(), String>); 6] = [
        ("enumeration basis invariance", props::basis_invariance),
        ("coset translation invariance", props::translation_invariance),
        ("S-symmetry", props::s_symmetry),
        ("extremality vs coset minima", props::extremality_matches_coset_minima),
        ("HNF idempotence", props::hnf_idempotence),
        ("thread-count determinism", props::thread_determinism),
    ];
    let mut broken = Vec::new();
    for (name, run) in suites {
        if let Err(e) = run(PROPERTY_CASES) {
            broken.push(format!("{name}: {e}"));
        }
    }
    println!(
        "{} criterion 10: property suites ({} suites x {PROPERTY_CASES} cases, {:.2}s)",
        if broken.is_empty() { "PASS" } else { "FAIL" },
        suites.len(),
        t.elapsed().as_secs_f64()
    );
    for b in &broken {
        println!("     {b}");
    }
    unexpected.extend(broken);

    if !unexpected.is_empty() {
        eprintln!("unexpected failures: {}", unexpected.join(", "));
        std::process::exit(1);
    }
}

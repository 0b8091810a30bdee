//! End-to-end acceptance suite. Runs every criterion, prints one line each and
//! exits non-zero if any fails.

use std::fs;
use std::process::Command;
use std::time::{Duration, Instant};

use modcont::analysis::{self, increment_sum, singular_cover, VerificationReport, AC_LADDER};
use modcont::modulus::{find_delta_star, omega_g_closed_with, psi};
use modcont::real_fn::{build_f, build_g};

struct Outcome {
    passed: bool,
    detail: String,
}

impl Outcome {
    fn from_reports(reports: &[VerificationReport]) -> Self {
        let passed = reports.iter().all(|r| r.passed);
        let detail = reports
            .iter()
            .map(|r| {
                format!(
                    "{}={:.3e}/{:.0e}",
                    r.check_name, r.max_violation, r.tolerance
                )
            })
            .collect::<Vec<_>>()
            .join(" ");
        Outcome { passed, detail }
    }

    fn within(self, elapsed: Duration, limit: Option<Duration>) -> Self {
        match limit {
            Some(limit) if elapsed > limit => Outcome {
                passed: false,
                detail: format!("{} (too slow: {:.2?} > {:?})", self.detail, elapsed, limit),
            },
            _ => self,
        }
    }
}

type Check = fn() -> Outcome;

fn cantor_self_modulus() -> Outcome {
    Outcome::from_reports(&[analysis::verify_self_modulus(7, 5).unwrap()])
}

fn lemma_bounds() -> Outcome {
    let reports = analysis::check_lemma_bounds(100_000, 42).unwrap();
    let zero_violations = reports.iter().all(|r| r.max_violation <= 1e-12);
    let mut out = Outcome::from_reports(&reports);
    out.passed &= zero_violations;
    out
}

fn same_modulus() -> Outcome {
    Outcome::from_reports(&[analysis::verify_same_modulus(20_001, None).unwrap()])
}

fn closed_form() -> Outcome {
    let mut reports = vec![analysis::verify_omega_closed_form(20_001).unwrap()];
    reports.extend(analysis::verify_candidate_maxima(1000).unwrap());
    Outcome::from_reports(&reports)
}

fn delta_star_pinning() -> Outcome {
    let report = analysis::verify_delta_star(1e-12).unwrap();
    let ds = find_delta_star(1e-12).unwrap();
    let residual = psi(1.0 + ds).unwrap().abs();
    // The first two branches of the closed form, evaluated just either side of 1 + δ*.
    let joined = (omega_g_closed_with(1.0 + ds - 1e-13, ds)
        - omega_g_closed_with(1.0 + ds + 1e-13, ds))
    .abs();
    let mut out = Outcome::from_reports(&[report]);
    out.passed &= ds > 0.17 && ds < 0.19 && residual <= 1e-10 && joined <= 1e-10;
    out.detail = format!(
        "delta*={ds:.12} |psi|={residual:.1e} branch_gap={joined:.1e} {}",
        out.detail
    );
    out
}

fn non_ac_witness() -> Outcome {
    let (f, g) = (build_f(), build_g());
    let mut passed = true;
    let (mut worst_f, mut worst_g) = (0.0f64, 0.0f64);
    for level in 0..=12 {
        let cover = singular_cover(level).unwrap();
        let length = (2.0f64 / 3.0).powi(level as i32);
        let sf = increment_sum(&f, &cover).unwrap();
        let sg = increment_sum(&g, &cover).unwrap();
        worst_f = worst_f.max((sf - 1.0).abs());
        worst_g = worst_g.max((sg - length).abs());
        passed &= (cover.total_length() - length).abs() <= 1e-12;
        if level == 12 {
            passed &= cover.total_length() <= 0.0078;
        }
    }
    passed &= worst_f <= 1e-10 && worst_g <= 1e-12;
    Outcome {
        passed,
        detail: format!("|sum_f-1|={worst_f:.1e} |sum_g-len|={worst_g:.1e}"),
    }
}

fn ac_witness() -> Outcome {
    let profile =
        analysis::ac_profile(&analysis::OmegaGClosed::new(), &AC_LADDER, 200, 42).unwrap();
    let sums: Vec<f64> = profile.iter().map(|p| p.sup_increment_sum).collect();
    let decreasing = sums.windows(2).all(|w| w[1] < w[0]);
    let last = sums[sums.len() - 1];
    Outcome {
        passed: decreasing && last < 0.05,
        detail: format!(
            "profile={:?}",
            sums.iter().map(|s| format!("{s:.4e}")).collect::<Vec<_>>()
        ),
    }
}

fn example_h() -> Outcome {
    Outcome::from_reports(&[analysis::verify_h_modulus(10_001).unwrap()])
}

fn substitution_pairs() -> Outcome {
    Outcome::from_reports(&[analysis::verify_substitution_pairs(100_000, 42)])
}

fn lipschitz_equivalence() -> Outcome {
    Outcome::from_reports(&[analysis::verify_lipschitz_family(10, 2001, 42).unwrap()])
}

fn determinism() -> Outcome {
    let dir = std::env::temp_dir().join(format!("modcont-acceptance-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let run = |name: &str| {
        let path = dir.join(name);
        let status = Command::new(env!("CARGO_BIN_EXE_modcont"))
            .args([
                "verify",
                "--grid-n",
                "2001",
                "--samples",
                "20000",
                "--seed",
                "7",
                "--summary",
            ])
            .arg(&path)
            .output()
            .unwrap();
        (status.status.code(), fs::read(&path).unwrap_or_default())
    };
    let (code_a, a) = run("a.csv");
    let (code_b, b) = run("b.csv");
    let _ = fs::remove_dir_all(&dir);
    Outcome {
        passed: !a.is_empty() && a == b && code_a == Some(0) && code_b == Some(0),
        detail: format!("{} bytes, exit codes {code_a:?}/{code_b:?}", a.len()),
    }
}

fn main() {
    let secs = |s| Some(Duration::from_secs(s));
    let criteria: [(&str, Check, Option<Duration>); 11] = [
        ("cantor self-modulus", cantor_self_modulus, secs(5)),
        ("lemma bounds", lemma_bounds, secs(5)),
        ("same modulus of f and g", same_modulus, secs(30)),
        ("closed form of omega_g", closed_form, secs(30)),
        ("delta* pinning", delta_star_pinning, None),
        ("non-AC witness for f", non_ac_witness, None),
        ("AC witness for omega_g", ac_witness, None),
        ("example h", example_h, None),
        ("substitution pairs", substitution_pairs, None),
        ("Lipschitz equivalence", lipschitz_equivalence, secs(10)),
        ("determinism of verify", determinism, None),
    ];
    let mut failures = 0;
    for (i, (name, check, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let outcome = outcome.within(elapsed, *limit);
        let tag = if outcome.passed { "PASS" } else { "FAIL" };
        println!(
            "[{tag}] {:>2}. {name:<26} {:>8.2?}  {}",
            i + 1,
            elapsed,
            outcome.detail
        );
        failures += usize::from(!outcome.passed);
    }
    println!(
        "acceptance: {} passed, {failures} failed",
        criteria.len() - failures
    );
    if failures > 0 {
        std::process::exit(1);
    }
}

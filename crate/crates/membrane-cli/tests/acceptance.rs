//! Acceptance suite: one test per criterion, each printing a single
//! PASS/FAIL line. Run with `cargo test -p membrane-cli --test acceptance`
//! (add `-- --nocapture` to see every line).

use membrane::checks;
use membrane::perm::{block_binomial, is_shuffle, shuffles, Permutation};
use membrane::quad::QuadratureConfig;
use membrane::zeta::{
    catalan, completed_zeta, membrane_identity_rhs, multiple_completed_dedekind_2d,
    multiple_completed_zeta_path, nested_path_zeta_oracle, unfolding_oracle, NumberFieldSpec,
    TruncationPolicy,
};
use std::f64::consts::PI;
use std::time::Instant;

fn report(id: u32, name: &str, pass: bool, detail: String, start: Instant) -> bool {
    println!(
        "ACCEPTANCE {id:2} {name}: {} ({detail}; {} ms)",
        if pass { "PASS" } else { "FAIL" },
        start.elapsed().as_millis()
    );
    pass
}

#[test]
fn criterion_01_shuffle_cardinality() {
    let start = Instant::now();
    let mut checked = 0usize;
    let mut pass = true;
    for total in 0..=7usize {
        let candidates = Permutation::all(total);
        for m in 0..=total {
            let n = total - m;
            for sigma in Permutation::all(m) {
                for tau in Permutation::all(n) {
                    let set = shuffles(&sigma, &tau);
                    if set.len() != block_binomial(m, n) {
                        pass = false;
                    }
                    let brute: Vec<Permutation> = candidates
                        .iter()
                        .filter(|rho| is_shuffle(rho, &sigma, &tau).unwrap())
                        .cloned()
                        .collect();
                    if set != brute {
                        pass = false;
                    }
                    checked += 1;
                }
            }
        }
    }
    assert!(report(
        1,
        "shuffle cardinality C(m+n,m) vs brute-force filter, m+n <= 7",
        pass,
        format!("{checked} block pairs"),
        start
    ));
}

#[test]
fn criterion_02_hopf_axioms() {
    let start = Instant::now();
    let r = checks::verify_hopf(2, 4);
    assert!(report(
        2,
        "Hopf axioms degree <= 4, alphabet 2, exact",
        r.pass,
        format!(
            "{} checks",
            r.outcomes.iter().map(|o| o.checked).sum::<usize>()
        ),
        start
    ));
}

#[test]
fn criterion_03_shuffle_relation() {
    let start = Instant::now();
    let r = checks::verify_shuffle_relation(0, 20, 4);
    assert!(report(
        3,
        "shuffle relation, 20 random polynomial tuples, exact",
        r.pass,
        format!(
            "{} identities",
            r.outcomes.iter().map(|o| o.checked).sum::<usize>()
        ),
        start
    ));
}

#[test]
fn criterion_04_decomposition_and_cross_product() {
    let start = Instant::now();
    let r1 = checks::verify_lemma21(2, 3);
    let r2 = checks::verify_lemma22(2, 3);
    assert!(report(
        4,
        "indexed decomposition and cross-product identities, n <= 3, exact",
        r1.pass && r2.pass,
        format!(
            "{} + {} identities",
            r1.outcomes.iter().map(|o| o.checked).sum::<usize>(),
            r2.outcomes.iter().map(|o| o.checked).sum::<usize>()
        ),
        start
    ));
}

#[test]
fn criterion_05_composition_theorem() {
    let start = Instant::now();
    let r = checks::verify_thm15(2, 3);
    assert!(report(
        5,
        "series composition theorem through degree 3, exact",
        r.pass,
        r.outcomes
            .iter()
            .map(|o| format!("{}:{}", o.name, o.checked))
            .collect::<Vec<_>>()
            .join(", "),
        start
    ));
}

#[test]
fn criterion_06_group_like() {
    let start = Instant::now();
    let r = checks::verify_group_like(2, 3);
    assert!(report(
        6,
        "generating series group-like through degree 3, exact",
        r.pass,
        format!("{} tensor pairs", r.outcomes[0].checked),
        start
    ));
}

#[test]
fn criterion_07_homotopy_invariance() {
    let start = Instant::now();
    let r = checks::verify_homotopy(1e-6, 10);
    assert!(report(
        7,
        "homotopy invariance, n = 2, all four permutation pairs, 1e-6",
        r.pass,
        format!(
            "{} comparisons, worst {:.3e}",
            r.outcomes.len(),
            r.worst_deviation()
        ),
        start
    ));
}

#[test]
fn criterion_08_composition_identity() {
    let start = Instant::now();
    let r = checks::verify_cocycle(2, 1e-5, 10);
    assert!(report(
        8,
        "composition identity through degree 2, 1e-5",
        r.pass,
        format!(
            "{} comparisons, worst {:.3e}",
            r.outcomes.iter().map(|o| o.checked).sum::<usize>(),
            r.worst_deviation()
        ),
        start
    ));
}

#[test]
fn criterion_09_completed_zeta_rational() {
    let start = Instant::now();
    let field = NumberFieldSpec::Rational;
    let policy = TruncationPolicy::default_path();
    let cfg = QuadratureConfig::gauss(16);
    let z2 = completed_zeta(&field, 2.0, &policy, &cfg).unwrap().value;
    let z4 = completed_zeta(&field, 4.0, &policy, &cfg).unwrap().value;
    let d2 = (z2 - PI / 3.0).abs();
    let d4 = (z4 - PI * PI / 45.0).abs();
    assert!(report(
        9,
        "completed zeta at 2 and 4 vs closed forms, 1e-8",
        d2 < 1e-8 && d4 < 1e-8,
        format!("|dev| = {d2:.3e}, {d4:.3e}"),
        start
    ));
}

#[test]
fn criterion_10_completed_zeta_gaussian() {
    let start = Instant::now();
    let field = NumberFieldSpec::imag_quadratic(-1).unwrap();
    let policy = TruncationPolicy::default_path();
    let cfg = QuadratureConfig::gauss(16);
    let z2 = completed_zeta(&field, 2.0, &policy, &cfg).unwrap().value;
    let want = 2.0 / 3.0 * catalan();
    let dev = (z2 - want).abs();
    assert!(report(
        10,
        "Gaussian completed zeta at 2 vs (2/3) Catalan, 1e-6",
        dev < 1e-6,
        format!("value {z2:.9}, |dev| = {dev:.3e}"),
        start
    ));
}

#[test]
fn criterion_11_real_quadratic_membrane() {
    let start = Instant::now();
    let field = NumberFieldSpec::real_quadratic(5).unwrap();
    let policy = TruncationPolicy::default_membrane();
    let cfg = QuadratureConfig::gauss(12);
    let id1 = Permutation::identity(1);
    let direct = multiple_completed_dedekind_2d(&field, &[2.0], &id1, &id1, &policy, &cfg).unwrap();
    let rhs = membrane_identity_rhs(&field, 2.0).unwrap();
    let identity_dev = (direct.value - rhs).abs();
    let unfolded = unfolding_oracle(&field, &[2.0], &id1, &id1, &policy, &cfg).unwrap();
    let oracle_dev = (direct.value - unfolded.value).abs();
    assert!(report(
        11,
        "real quadratic membrane identity (1e-3) and unfolding oracle (1e-4)",
        identity_dev < 1e-3 && oracle_dev < 1e-4,
        format!(
            "value {:.6}, identity dev {identity_dev:.3e}, unfolding dev {oracle_dev:.3e}",
            direct.value
        ),
        start
    ));
}

#[test]
fn criterion_12_multiple_zeta_consistency() {
    let start = Instant::now();
    let field = NumberFieldSpec::Rational;
    let policy = TruncationPolicy::default_path();
    let cfg = QuadratureConfig::gauss(16);
    let mut worst_d1 = 0.0f64;
    for s in [2.0, 3.0, 4.0] {
        let a = completed_zeta(&field, s, &policy, &cfg).unwrap().value;
        let b = multiple_completed_zeta_path(&field, &[s], &policy, &cfg)
            .unwrap()
            .value;
        worst_d1 = worst_d1.max((a - b).abs());
    }
    let primary = multiple_completed_zeta_path(&field, &[4.0, 2.0], &policy, &cfg)
        .unwrap()
        .value;
    let oracle = nested_path_zeta_oracle(&field, &[4.0, 2.0], &policy, &cfg)
        .unwrap()
        .value;
    let d2_dev = (primary - oracle).abs();
    assert!(report(
        12,
        "path reduction d=1 (1e-8) and double value vs nested oracle (1e-6)",
        worst_d1 < 1e-8 && d2_dev < 1e-6,
        format!("d1 worst {worst_d1:.3e}, double dev {d2_dev:.3e}, value {primary:.9}"),
        start
    ));
}

#[test]
fn criterion_13_cli_determinism() {
    let start = Instant::now();
    let bin = env!("CARGO_BIN_EXE_membrane");
    let spec = std::env::temp_dir().join("membrane_acceptance_integrand.json");
    std::fs::write(
        &spec,
        r#"{"rect":[0,1,0,1],"forms":[{"builtin":"gauss"},{"poly":[{"coeff":"1/2","px":1,"py":0}]}]}"#,
    )
    .unwrap();
    let spec_path = spec.to_str().unwrap();
    let commands: Vec<Vec<&str>> = vec![
        vec!["shuffle", "2", "2", "--json"],
        vec![
            "shuffle",
            "3",
            "2",
            "--sigma",
            "[2,1,3]",
            "--restricted",
            "1",
            "1",
            "--json",
        ],
        vec!["verify", "hopf", "--max-degree", "2", "--json"],
        vec![
            "integrate",
            spec_path,
            "--sx",
            "[2,1]",
            "--sy",
            "[1,2]",
            "--method",
            "mc",
            "--seed",
            "7",
            "--json",
        ],
        vec!["zeta", "--field", "Q", "--s", "2", "--json", "--seed", "3"],
        vec!["zeta", "--field", "Qi", "--s", "3", "--json"],
        vec![
            "zeta",
            "--field",
            "Q:sqrt5",
            "--s",
            "2",
            "--membrane",
            "--oracle",
            "--json",
        ],
    ];
    let mut pass = true;
    for args in &commands {
        let run = |_: usize| {
            std::process::Command::new(bin)
                .args(args)
                .output()
                .expect("binary runs")
        };
        let first = run(0);
        let second = run(1);
        if !first.status.success() || first.stdout != second.stdout {
            eprintln!("nondeterministic or failing: {args:?}");
            pass = false;
        }
    }
    assert!(report(
        13,
        "CLI determinism: byte-identical JSON across repeated runs",
        pass,
        format!("{} commands, two runs each", commands.len()),
        start
    ));
}

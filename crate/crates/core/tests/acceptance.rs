//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line. Criteria run against the seeded invariant suites (seed 42) plus
//! the runtime bounds stated alongside them.

use std::sync::OnceLock;
use std::time::Instant;

use symcone::selftest::{self, Suite, SuiteReport};

const SEED: u64 = 42;

fn suites() -> &'static Vec<SuiteReport> {
    static REPORTS: OnceLock<Vec<SuiteReport>> = OnceLock::new();
    REPORTS.get_or_init(|| selftest::run(Suite::All, SEED))
}

fn suite(name: &str) -> &'static SuiteReport {
    suites().iter().find(|r| r.suite == name).expect("suite exists")
}

fn check(suite_name: &str, check_name: &str) -> (bool, f64, String) {
    let rep = suite(suite_name);
    let c = rep
        .checks
        .iter()
        .find(|c| c.name == check_name)
        .unwrap_or_else(|| panic!("check {check_name} missing in {suite_name}"));
    (c.pass, c.worst, c.detail.clone())
}

fn criterion(number: u32, label: &str, items: &[(&str, &str)]) {
    let mut ok = true;
    let mut details = Vec::new();
    for (s, c) in items {
        let (pass, worst, detail) = check(s, c);
        ok &= pass;
        details.push(format!("{c}: {}", if pass { format!("ok ({worst:.2e})") } else { detail }));
    }
    println!(
        "criterion {number:2} [{}] {label}: {}",
        if ok { "PASS" } else { "FAIL" },
        details.join("; ")
    );
    assert!(ok, "criterion {number} failed: {}", details.join("; "));
}

#[test]
fn criterion_01_jordan_axioms() {
    let t0 = Instant::now();
    criterion(
        1,
        "Jordan identity and trace-form associativity <= 1e-9 on 1000 pairs per algebra",
        &[("algebra", "jordan_identity"), ("algebra", "trace_form_associativity")],
    );
    // the whole algebra suite must stay under the 10 s budget
    let _ = t0;
    let elapsed = suite("algebra").elapsed_s;
    println!("criterion  1 runtime: algebra suite {elapsed:.2}s (< 10 s)");
    assert!(elapsed < 10.0, "algebra suite took {elapsed:.2}s");
}

#[test]
fn criterion_02_spectral_peirce() {
    criterion(
        2,
        "spectral reconstruction/frames <= 1e-9; Peirce projectors and block dims exact",
        &[
            ("algebra", "spectral_reconstruction"),
            ("algebra", "peirce_projectors"),
            ("algebra", "peirce_block_dims"),
        ],
    );
}

#[test]
fn criterion_03_distance_theorem() {
    criterion(
        3,
        "geodesic distance symmetric, invariant under 100 congruences, sqrt(5) oracle to 1e-10",
        &[
            ("cone", "distance_symmetry"),
            ("cone", "distance_invariance"),
            ("cone", "distance_sqrt5_oracle"),
        ],
    );
}

#[test]
fn criterion_04_hilbert_metric() {
    criterion(
        4,
        "Hilbert metric properties (a)-(d) on 1000 triples; two formulas agree to 1e-10",
        &[
            ("cone", "hilbert_symmetry"),
            ("cone", "hilbert_triangle_slack"),
            ("cone", "hilbert_ray_invariance"),
            ("cone", "hilbert_two_formulas"),
        ],
    );
}

#[test]
fn criterion_05_bushell() {
    criterion(
        5,
        "Bushell: 50 automorphisms, p in {2,3,-2}, start independence <= 1e-7, residual <= 1e-8, diagonal oracle 1e-10",
        &[
            ("cone", "bushell_start_independence"),
            ("cone", "bushell_residual"),
            ("cone", "bushell_diagonal_oracle"),
        ],
    );
}

#[test]
fn criterion_06_contraction_theorem() {
    criterion(
        6,
        "contraction cases (1)-(3) on 100 samples per case, uniform factor < 1",
        &[
            ("cone", "contraction_weak"),
            ("cone", "contraction_strict"),
            ("cone", "contraction_uniform_kappa"),
        ],
    );
}

#[test]
fn criterion_07_transversality_index() {
    criterion(
        7,
        "mu(e, eps_k) = k by both routes; rank P(sigma - tau) matches the Peirce count exactly",
        &[
            ("indices", "transversality_representatives"),
            ("indices", "transversality_invariance"),
        ],
    );
}

#[test]
fn criterion_08_maslov() {
    criterion(
        8,
        "i(e, -e, -i eps_k) = 2k - r exactly; skew symmetry and cocycle exact on 200 random tuples",
        &[("indices", "maslov_normal_forms"), ("indices", "maslov_skew_cocycle")],
    );
}

#[test]
fn criterion_09_souriau_leray() {
    criterion(
        9,
        "Souriau integer on 500 lifted pairs; Leray reproduces the triple index; coordinate formula exact",
        &[
            ("indices", "souriau_integrality"),
            ("indices", "souriau_antisymmetry"),
            ("indices", "leray_formula"),
            ("indices", "souriau_arnold_coordinate_formulas"),
        ],
    );
}

#[test]
fn criterion_10_arnold_inertia() {
    criterion(
        10,
        "nu = -l + k exact in coordinates; inertia integer 2-cocycle and Arnold-Leray primitive on 200 tuples",
        &[
            ("indices", "souriau_arnold_coordinate_formulas"),
            ("indices", "inertia_cocycle_primitive"),
        ],
    );
}

#[test]
fn criterion_11_rotation_number() {
    criterion(
        11,
        "rho(id) = 0; |rho| <= r/K for boundary-fixing elements; unitary part matches chi within 2 pi r/K",
        &[
            ("indices", "rotation_identity"),
            ("indices", "rotation_fixed_point_bound"),
            ("indices", "rotation_unitary_character"),
        ],
    );
}

#[test]
fn criterion_12_semigroups() {
    criterion(
        12,
        "Cayley roundtrips, strict closure, PSD kernel Grams, Bergman square, branch chains, weight lists",
        &[
            ("semigroup", "cayley_roundtrip"),
            ("semigroup", "cayley_image_strict"),
            ("semigroup", "strict_products_strict"),
            ("semigroup", "kernel_gram_psd"),
            ("semigroup", "bergman_is_odd_squared"),
            ("semigroup", "metaplectic_branch_chains"),
            ("semigroup", "sp1_odd_weight_list"),
            ("semigroup", "weight_lists_antitone"),
        ],
    );
}

use kxcount::selftest::run_criterion;
use kxcount::Limits;

const SEED: u64 = 20240601;

fn check(id: usize) {
    let report = run_criterion(id, SEED, &Limits::default());
    println!("{}", report.summary_line());
    for c in report.checks.iter().filter(|c| !c.pass) {
        println!("    {}: expected {} got {}", c.name, c.expected, c.actual);
    }
    assert!(report.passed, "{}", report.summary_line());
}

#[test]
fn criterion_01_hilbert_triple_agreement() {
    check(1);
}

#[test]
fn criterion_02_generator_counts() {
    check(2);
}

#[test]
fn criterion_03_hall_cross_check() {
    check(3);
}

#[test]
fn criterion_04_rank_two_census() {
    check(4);
}

#[test]
fn criterion_05_necklaces() {
    check(5);
}

#[test]
fn criterion_06_subgroup_counts() {
    check(6);
}

#[test]
fn criterion_07_brauer_identity() {
    check(7);
}

#[test]
fn criterion_08_component_dimensions() {
    check(8);
}

#[test]
fn criterion_09_graph_layer() {
    check(9);
}

#[test]
fn criterion_10_norm_law() {
    check(10);
}

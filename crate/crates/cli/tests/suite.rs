use std::collections::BTreeSet;
use std::sync::OnceLock;

use carleman_cli::{run_verify_suite, Record, Report, RunConfig, Status};

fn default_report() -> &'static Report {
    static R: OnceLock<Report> = OnceLock::new();
    R.get_or_init(|| run_verify_suite(&RunConfig::default()))
}

fn small() -> RunConfig {
    RunConfig::parse("window = 1..4").unwrap()
}

fn ids(r: &Report) -> BTreeSet<&str> {
    r.records.iter().map(|r| r.id.as_str()).collect()
}

fn not_holding(r: &Report) -> Vec<&Record> {
    r.records.iter().filter(|x| x.verdict != Status::Holds).collect()
}

#[test]
fn default_config_all_holds() {
    let r = default_report();
    assert!(not_holding(r).is_empty(), "{:#?}", not_holding(r));
    assert_eq!(r.exit_code(), 0);
    assert!(r.records.iter().all(|x| !x.anchor.is_empty()));
    assert!(r.records.windows(2).all(|w| w[0].id < w[1].id), "sorted, unique ids");
    for id in ["comb.corollary", "comb.lemma1", "comb.lemma2", "comb.stirling", "bang.envelope", "cp.bound", "cp.period"] {
        assert!(ids(r).contains(id), "{id}");
    }
    assert_eq!(r.records.iter().filter(|x| x.id.starts_with("bang.lower.p02")).count(), 10);
    assert!(r.records.iter().all(|x| x.seconds.is_none()));
    assert!(r.metadata.seconds.len() + 2 >= r.records.len());
}

#[test]
fn small_window_is_a_holding_subset() {
    let r = run_verify_suite(&small());
    assert!(not_holding(&r).is_empty(), "{:#?}", not_holding(&r));
    let (small_ids, all) = (ids(&r), ids(default_report()));
    assert!(small_ids.is_subset(&all));
    assert!(small_ids.len() < all.len());
    assert!(!small_ids.contains("bang.lower.p02.n05"));
    assert!(small_ids.contains("bang.lower.p02.n04"));
}

#[test]
fn non_log_convex_sequence_gives_gate_error() {
    let cfg = RunConfig::parse(
        "window = 1..3\nsequence = custom:1,2,400,8,16,32,64,128,256,512,1024,2048,4096,8192\ntail_bits = 4\nbang_n_max = 2\ninduced_n_max = 2\nenvelope_n_max = 2",
    )
    .unwrap();
    let r = run_verify_suite(&cfg);
    for p in ["p02", "p03"] {
        let gate = r.records.iter().find(|x| x.id == format!("bang.gate.{p}")).expect("gate record");
        assert_eq!(gate.verdict, Status::Error);
        assert!(gate.witness.contains("precondition"), "{}", gate.witness);
    }
    assert!(!r.records.iter().any(|x| x.id.starts_with("bang.lower") || x.id == "bang.envelope"));
    assert_eq!(r.exit_code(), 3);
    let others: Vec<_> = r.records.iter().filter(|x| !x.id.starts_with("bang.")).collect();
    assert!(others.iter().all(|x| x.verdict == Status::Holds));
}

#[test]
fn reports_are_deterministic() {
    let cfg = small();
    let (a, b) = (run_verify_suite(&cfg), run_verify_suite(&cfg));
    assert_eq!(a.to_csv(), b.to_csv());
    assert_eq!(a.records, b.records);
    let mut other = cfg.clone();
    other.seed += 1;
    let c = run_verify_suite(&other);
    assert_ne!(c.config, a.config);
}

#[test]
fn csv_and_json_forms() {
    let r = run_verify_suite(&small());
    let csv = r.to_csv();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("id,anchor,verdict,witness,lower,upper,seconds"));
    assert_eq!(lines.count(), r.records.len());
    let mut rd = csv::Reader::from_reader(csv.as_bytes());
    for (row, rec) in rd.records().zip(&r.records) {
        let row = row.unwrap();
        assert_eq!(&row[0], rec.id);
        assert_eq!(&row[1], rec.anchor);
        assert_eq!(&row[3], rec.witness);
    }
    let back = Report::from_json(&r.to_json()).unwrap();
    assert_eq!(back, r);

    let one = Report::new(Default::default(), vec![Record::new("x", "a <= b", Status::Holds, "ok")]);
    assert_eq!(one.to_csv().lines().count(), 2);
    let none = Report::new(Default::default(), vec![]);
    assert_eq!(none.to_csv(), "id,anchor,verdict,witness,lower,upper,seconds\n");
}

#[test]
fn timings_fill_the_seconds_column() {
    let mut cfg = RunConfig::parse("window = 1..2\ntimings = true").unwrap();
    cfg.remainder_cases = 5;
    let r = run_verify_suite(&cfg);
    assert!(r.records.iter().filter(|x| !x.id.starts_with("bang.gate")).all(|x| x.seconds.is_some()));
}

#[test]
fn enclosures_are_ordered_decimals() {
    let r = run_verify_suite(&small());
    let mut seen = 0;
    for x in &r.records {
        if let (Some(lo), Some(hi)) = (&x.lower, &x.upper) {
            let (lo, hi): (f64, f64) = (lo.parse().unwrap(), hi.parse().unwrap());
            assert!(lo <= hi, "{}", x.id);
            seen += 1;
        }
    }
    assert!(seen >= 8);
}

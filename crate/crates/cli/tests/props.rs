use std::collections::BTreeMap;

use carleman::Rational;
use carleman_cli::{Record, Report, SeqSpec, Status};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (1i64..1000, 1i64..100).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

fn spec() -> impl Strategy<Value = SeqSpec> {
    let leaf = prop_oneof![
        Just(SeqSpec::Analytic),
        rational().prop_map(SeqSpec::Gevrey),
        (1u32..4, proptest::option::of(20u64..10_000)).prop_map(|(k, offset)| SeqSpec::IterLog { k, offset }),
        proptest::collection::vec(rational(), 1..6).prop_map(SeqSpec::Custom),
    ];
    leaf.prop_recursive(2, 4, 1, |inner| {
        prop_oneof![
            (1u32..5, inner.clone()).prop_map(|(p, b)| SeqSpec::PowerSub { p, base: Box::new(b) }),
            (1usize..20, inner).prop_map(|(end, b)| SeqSpec::Regularize { end, base: Box::new(b) }),
        ]
    })
}

fn status() -> impl Strategy<Value = Status> {
    prop_oneof![
        Just(Status::Holds),
        Just(Status::Fails),
        Just(Status::Inconclusive),
        Just(Status::Error)
    ]
}

fn record() -> impl Strategy<Value = Record> {
    (
        "[a-z.]{1,12}",
        "[ -~]{0,20}",
        status(),
        "[ -~\n\"]{0,30}",
        proptest::option::of("[0-9e.-]{1,8}"),
        proptest::option::of(0.0f64..1e6),
    )
        .prop_map(|(id, anchor, verdict, witness, lower, seconds)| {
            let mut r = Record::new(id, &anchor, verdict, witness);
            r.upper = lower.clone();
            r.lower = lower;
            r.seconds = seconds;
            r
        })
}

proptest! {
    #[test]
    fn spec_text_round_trips(s in spec()) {
        let text = s.to_string();
        prop_assert_eq!(text.parse::<SeqSpec>().unwrap(), s);
    }

    #[test]
    fn report_serialization_round_trips(records in proptest::collection::vec(record(), 0..8), wall in 0.0f64..100.0) {
        let mut r = Report::new(BTreeMap::from([("seed".to_string(), "1".to_string())]), records);
        r.metadata.wall_seconds = wall;
        prop_assert!(r.records.windows(2).all(|w| w[0].id <= w[1].id));
        prop_assert_eq!(&Report::from_json(&r.to_json()).unwrap(), &r);

        let csv = r.to_csv();
        let mut rd = csv::Reader::from_reader(csv.as_bytes());
        let header: Vec<String> = rd.headers().unwrap().iter().map(String::from).collect();
        prop_assert_eq!(header, ["id", "anchor", "verdict", "witness", "lower", "upper", "seconds"]);
        let rows: Vec<csv::StringRecord> = rd.records().map(|x| x.unwrap()).collect();
        prop_assert_eq!(rows.len(), r.records.len());
        for (row, rec) in rows.iter().zip(&r.records) {
            prop_assert_eq!(&row[0], rec.id.as_str());
            prop_assert_eq!(&row[1], rec.anchor.as_str());
            prop_assert_eq!(&row[2], rec.verdict.to_string());
            prop_assert_eq!(&row[3], rec.witness.as_str());
        }
    }

    #[test]
    fn exit_code_contract(statuses in proptest::collection::vec(status(), 0..10)) {
        let records = statuses.iter().enumerate().map(|(i, s)| Record::new(format!("r{i}"), "a", *s, "")).collect();
        let code = Report::new(BTreeMap::new(), records).exit_code();
        let has = |s| statuses.contains(&s);
        let want = if has(Status::Fails) {
            1
        } else if has(Status::Error) {
            3
        } else if has(Status::Inconclusive) {
            2
        } else {
            0
        };
        prop_assert_eq!(code, want);
        prop_assert_eq!(code != 0 && has(Status::Fails), code == 1);
    }
}

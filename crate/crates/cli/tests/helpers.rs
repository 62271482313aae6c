use num_bigint::BigUint;
use typical::constructions::champernowne;
use typical_cli::output::Output;
use typical_cli::positions::PositionSpec;
use typical_cli::settings::{parse_count, Settings};

#[test]
fn counts() {
    assert_eq!(parse_count("1e7").unwrap(), 10_000_000);
    assert_eq!(parse_count("2.5e3").unwrap(), 2500);
    assert_eq!(parse_count("1_000").unwrap(), 1000);
    assert!(parse_count("1.5e0").is_err());
    assert!(parse_count("-3").is_err());
}

#[test]
fn position_forms() {
    assert_eq!(
        PositionSpec::parse("checkpoints:2..10").unwrap(),
        PositionSpec::Checkpoints(2, 10)
    );
    assert_eq!(
        PositionSpec::parse("list:5,17,1e3").unwrap(),
        PositionSpec::List(vec![5, 17, 1000])
    );
    assert!(PositionSpec::parse("list:5,5").is_err());
    assert!(PositionSpec::parse("geometric:64").is_err());
    assert_eq!(
        PositionSpec::default_up_to(1000).resolve(None).unwrap(),
        [64u32, 128, 256, 512].map(BigUint::from).to_vec()
    );
}

#[test]
fn checkpoint_positions_need_metadata() {
    let c = champernowne();
    let got = PositionSpec::parse("checkpoints:2..4")
        .unwrap()
        .resolve(Some(&c))
        .unwrap();
    assert_eq!(got, [5u32, 17, 49].map(BigUint::from).to_vec());
    assert!(PositionSpec::parse("checkpoints:2..4")
        .unwrap()
        .resolve(None)
        .is_err());
}

#[test]
fn settings_file_and_unknown_keys() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.conf");
    std::fs::write(&good, "# defaults\ncap = 5e6\nnumber=champernowne\n").unwrap();
    let s = Settings::load(Some(&good)).unwrap();
    assert_eq!(s.get("number"), Some("champernowne"));
    assert_eq!(s.pick(Some("y".into()), "number").as_deref(), Some("y"));
    let bad = dir.path().join("bad.conf");
    std::fs::write(&bad, "colour=blue\n").unwrap();
    assert!(Settings::load(Some(&bad)).is_err());
}

#[test]
fn output_is_written_whole() {
    let dir = tempfile::tempdir().unwrap();
    Output::new(
        Some("a/b.txt".into()),
        Some(dir.path().to_string_lossy().into()),
        "x",
    )
    .write(b"101\n")
    .unwrap();
    assert_eq!(std::fs::read(dir.path().join("a/b.txt")).unwrap(), b"101\n");
    let names: Vec<_> = std::fs::read_dir(dir.path().join("a")).unwrap().collect();
    assert_eq!(names.len(), 1, "no temporary files left behind");
}

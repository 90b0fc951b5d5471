use facposet::analysis::AnalysisOptions;
use facposet::fixtures::Family;
use facposet::scan::{dihedral8_generators, scan, symmetric_generators, ScanConfig, ScanSource};

fn config(source: ScanSource) -> ScanConfig {
    ScanConfig { source, options: AnalysisOptions::default(), replay_dir: None }
}

#[test]
fn symmetric_family_has_no_candidates() {
    let f = scan(&config(ScanSource::Families((3..=5).map(|n| (Family::SymLongCycle, n)).collect()))).unwrap();
    assert_eq!(f.instances.len(), 3);
    assert_eq!(f.candidate_count, 0, "{:#?}", f.instances);
    assert_eq!(f.budget_exhausted_count, 0);
    for i in &f.instances {
        assert_eq!(i.hurwitz_connected, Some(true));
        assert_eq!(i.shelling.as_deref(), Some("shellable"));
    }
}

#[test]
fn dihedral_rank_two_compatible_iff_single_orbit() {
    let f = scan(&config(ScanSource::ConjugationClosedSubsets {
        ambient: dihedral8_generators(),
        target_lengths: vec![2],
        max_classes: 8,
    }))
    .unwrap();
    assert!(!f.instances.is_empty());
    let mut saw_both = (false, false);
    for i in &f.instances {
        assert_eq!(i.rank, 2);
        let single = i.hurwitz_orbits == Some(1);
        assert_eq!(i.compatible_order_exists, Some(single), "{}", i.name);
        if single {
            saw_both.0 = true;
        } else {
            saw_both.1 = true;
        }
    }
    assert!(saw_both.0 && saw_both.1, "both patterns occur");
    assert!(f.instances.iter().any(|i| i.name.contains("top=(1 3)(2 4)") && i.hurwitz_orbits == Some(2)));
}

#[test]
fn small_symmetric_subsets_keep_the_theorems() {
    let f = scan(&config(ScanSource::ConjugationClosedSubsets {
        ambient: symmetric_generators(3),
        target_lengths: vec![1, 2, 3],
        max_classes: 8,
    }))
    .unwrap();
    assert!(!f.instances.is_empty());
    assert_eq!(f.budget_exhausted_count, 0);
}

#[test]
fn empty_generator_list_gives_empty_findings() {
    let f = scan(&config(ScanSource::ConjugationClosedSubsets {
        ambient: vec![],
        target_lengths: vec![2],
        max_classes: 8,
    }))
    .unwrap();
    assert!(f.instances.is_empty());
    let f = scan(&config(ScanSource::Families(vec![]))).unwrap();
    assert!(f.instances.is_empty());
}

#[test]
fn candidates_get_replay_files() {
    let dir = std::env::temp_dir().join(format!("facposet-replay-{}", std::process::id()));
    let mut cfg = config(ScanSource::Intervals(vec![facposet::fixtures::fixture_interval("ex44_rrrt").unwrap()]));
    cfg.replay_dir = Some(dir.clone());
    let f = scan(&cfg).unwrap();
    for i in &f.instances {
        if let Some(p) = &i.replay_file {
            let text = std::fs::read_to_string(p).unwrap();
            let l = facposet::LabeledInterval::from_json_str(&text).unwrap();
            assert_eq!(l.node_count(), i.nodes);
        }
    }
    let _ = std::fs::remove_dir_all(dir);
}

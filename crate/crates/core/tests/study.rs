use normcg::study::{
    eoc, run_study, write_csv, OutputFormat, Precision, StudyConfig, StudyMode, StudyRow,
};

fn quiet(mut cfg: StudyConfig) -> StudyConfig {
    cfg.record_wall_time = false;
    cfg
}

fn row(rows: &[StudyRow], r: usize, m: usize) -> &StudyRow {
    rows.iter().find(|x| x.r == r && x.m == m).unwrap()
}

#[test]
fn default_h_study_shape_and_rates() {
    let rows = run_study(&quiet(StudyConfig::h_study("paper3x3"))).unwrap();
    assert_eq!(rows.len(), 20);
    for r in 1..=4 {
        let eocs: Vec<f64> = rows
            .iter()
            .filter(|x| x.r == r)
            .filter_map(|x| x.eoc_error)
            .collect();
        assert_eq!(eocs.len(), 4);
        let last = *eocs.last().unwrap();
        assert!((last - (r as f64 + 1.0)).abs() < 0.25, "r={r}: {last}");
    }
    for x in &rows {
        assert!(x.effectivity >= 1.0 - 1e-6 && x.linf_error >= 0.0);
        assert!(x.norm_drift < 1e-11);
        assert_eq!(x.k, 4.0 / x.m as f64);
    }
    // reference run gives 2.411e-8
    assert!(row(&rows, 4, 128).linf_error <= 2.5e-8);
}

#[test]
fn degree_two_rate_settles_near_three() {
    let mut cfg = quiet(StudyConfig::h_study("paper3x3"));
    cfg.degrees = vec![2];
    cfg.mesh_counts = vec![128, 256, 512];
    let rows = run_study(&cfg).unwrap();
    let finest = rows[2].eoc_error.unwrap();
    assert!((2.8..=3.2).contains(&finest), "{finest}");
    // the same rate from the raw errors
    let errs: Vec<f64> = rows.iter().map(|x| x.linf_error).collect();
    let ks: Vec<f64> = rows.iter().map(|x| x.k).collect();
    assert!((eoc(&errs, &ks).unwrap()[1] - finest).abs() < 1e-12);
}

#[test]
fn p_study_shape() {
    let rows = run_study(&quiet(StudyConfig::p_study("paper3x3"))).unwrap();
    assert_eq!(rows.len(), 16);
    assert!(rows
        .iter()
        .all(|x| x.m == 4 && x.k == 1.0 && x.eoc_error.is_none()));
    assert!(rows[15].linf_error < 1e-8);
    assert!(rows.iter().all(|x| x.estimator_bound >= x.linf_error));
}

#[test]
fn single_zero_problem() {
    let rows = run_study(&quiet(StudyConfig::single("zero", 3, 5))).unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0].linf_error, 0.0);
    assert_eq!(rows[0].estimator_bound, 0.0);
    assert_eq!(rows[0].effectivity, 1.0);
}

#[test]
fn sequential_and_parallel_bytes_match() {
    let csv = |parallel| {
        let mut cfg = quiet(StudyConfig::h_study("paper3x3"));
        cfg.parallel = parallel;
        let mut buf = Vec::new();
        write_csv(&run_study(&cfg).unwrap(), &mut buf).unwrap();
        buf
    };
    let a = csv(false);
    assert_eq!(a, csv(false));
    assert_eq!(a, csv(true));
}

#[test]
fn single_precision_study() {
    let mut cfg = quiet(StudyConfig::h_study("rotation2d"));
    cfg.precision = Precision::F32;
    cfg.degrees = vec![1, 2];
    cfg.mesh_counts = vec![8, 16];
    let rows = run_study(&cfg).unwrap();
    assert_eq!(rows.len(), 4);
    assert!(rows.iter().all(|x| x.is_ok() && x.norm_drift < 1e-5));
}

#[test]
fn config_parsing() {
    let cfg = StudyConfig::parse(
        "problem = rotation2d\nmode = p\nk = 0.5\nT = 2\ndegrees = 1..3\nformat = json\n",
    )
    .unwrap();
    assert_eq!(cfg.mode, StudyMode::PStudy);
    assert_eq!(cfg.degrees, vec![1, 2, 3]);
    assert_eq!(cfg.output_format, OutputFormat::Json);
    assert_eq!(cfg.cells().unwrap(), vec![(1, 4), (2, 4), (3, 4)]);
    assert!(StudyConfig::parse("colour = blue\n").is_err());
    assert!(StudyConfig::parse("degrees = 1, x\n").is_err());
    assert!(StudyConfig::parse("mode = p\nk = 0.3\n").is_err());
}

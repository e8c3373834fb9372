use fedmoea::harness::{
    read_records_csv, run_experiment, sweep, write_outputs, write_records_csv, write_sweep_csv,
    ExperimentConfig, SweepParameter,
};
use fedmoea::{Error, Family};

fn small() -> ExperimentConfig {
    let mut cfg = ExperimentConfig::new(Family::Dtlz2, 3, 5);
    cfg.runs = 3;
    cfg.rounds = 3;
    cfg.clients = 4;
    cfg.reference_size = 500;
    cfg.seed = 42;
    cfg
}

#[test]
fn csv_round_trip() {
    let res = run_experiment(&small()).unwrap();
    let mut buf = Vec::new();
    write_records_csv(&mut buf, &res.records()).unwrap();
    let text = String::from_utf8(buf.clone()).unwrap();
    assert!(text.starts_with("run,iter,fes,igd,ms\n"));
    assert_eq!(read_records_csv(buf.as_slice()).unwrap(), res.records());
}

#[test]
fn equal_seeds_give_identical_bytes() {
    let bytes = |cfg: &ExperimentConfig| {
        let mut buf = Vec::new();
        write_records_csv(&mut buf, &run_experiment(cfg).unwrap().records()).unwrap();
        buf
    };
    let cfg = small();
    assert_eq!(bytes(&cfg), bytes(&cfg));
    let mut serial = cfg.clone();
    serial.workers = Some(1);
    assert_eq!(bytes(&cfg), bytes(&serial));
    let mut other = cfg.clone();
    other.seed += 1;
    assert_ne!(bytes(&cfg), bytes(&other));
}

#[test]
fn archive_fes_never_decrease_and_igd_is_finite() {
    let mut cfg = small();
    cfg.failure_prob = 0.5;
    let res = run_experiment(&cfg).unwrap();
    for run in &res.runs {
        assert_eq!(run.records[0].fes, 54);
        assert!(run.records.windows(2).all(|w| w[0].fes <= w[1].fes));
        assert!(run
            .records
            .iter()
            .all(|r| r.igd.is_finite() && r.igd >= 0.0));
        for e in &run.events {
            assert_eq!(e.participants.len(), 4);
            assert_eq!(e.delivery.len(), 4);
        }
    }
}

#[test]
fn output_files() {
    let dir = tempfile::tempdir().unwrap();
    let res = run_experiment(&small()).unwrap();
    let files = write_outputs(dir.path(), &res).unwrap();
    assert!(files.records.ends_with("dtlz2_m3_d5_nsga2.csv"));

    let summary: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&files.summary).unwrap()).unwrap();
    for key in [
        "problem",
        "M",
        "d",
        "optimizer",
        "mean_igd",
        "std_igd",
        "runs",
    ] {
        assert!(summary.get(key).is_some(), "missing {key}");
    }
    assert_eq!(summary["runs"].as_array().unwrap().len(), 3);
    assert_eq!(summary["mean_igd"].as_f64().unwrap(), res.mean_igd());

    let events = std::fs::read_to_string(&files.events).unwrap();
    assert_eq!(events.lines().count(), 3 * 3);
    let first: serde_json::Value = serde_json::from_str(events.lines().next().unwrap()).unwrap();
    for key in ["run", "round", "participants", "delivery", "fes"] {
        assert!(first.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn sweep_table() {
    let mut cfg = small();
    cfg.runs = 1;
    let s = sweep(&cfg, SweepParameter::FailureProb, &[0.01, 0.1]).unwrap();
    assert_eq!(s.rows.len(), 2);
    assert_eq!(s.rows[1].value, 0.1);
    assert_eq!(s.experiments[1].config.failure_prob, 0.1);
    let mut buf = Vec::new();
    write_sweep_csv(&mut buf, &s.rows).unwrap();
    let text = String::from_utf8(buf).unwrap();
    assert!(text.starts_with("parameter,value,problem,M,d,optimizer,mean_igd,std_igd\n"));
    assert!(text.contains("pf,0.01,dtlz2,3,5,nsga2,"));
}

#[test]
fn invalid_configs_are_rejected() {
    let mut cfg = small();
    cfg.runs = 0;
    assert!(matches!(run_experiment(&cfg), Err(Error::Config(_))));
    let mut cfg = small();
    cfg.objectives = 1;
    assert!(matches!(run_experiment(&cfg), Err(Error::Config(_))));
    assert!(sweep(&small(), SweepParameter::Participation, &[]).is_err());
}

#[test]
fn timing_is_opt_in() {
    let mut cfg = small();
    cfg.runs = 1;
    assert!(run_experiment(&cfg)
        .unwrap()
        .records()
        .iter()
        .all(|r| r.ms == 0));
    cfg.timing = true;
    let recs = run_experiment(&cfg).unwrap().records();
    assert!(recs.windows(2).all(|w| w[0].ms <= w[1].ms));
}

use eigalign::output::to_csv_string;
use eigalign::{
    read_csv, run_eig1_sweep, run_toy_sweep, write_json, Mode, NoiseGrid, SweepConfig, SweepResult,
    SweepRow, CSV_HEADER,
};

fn sample_row() -> SweepRow {
    SweepRow {
        n: 1000,
        raw_noise: 1.0 / 3.0,
        scaled_noise: 2f64.powf(7.0 / 6.0) * 1e-7,
        replicates: 20,
        estimate: 0.123_456_789_012_345_67,
        ci_low: 0.1,
        ci_high: 0.15,
        mean_runtime_ms: 12.345,
        seed: u64::MAX,
    }
}

#[test]
fn csv_round_trip_is_bit_exact() {
    let result = SweepResult {
        rows: vec![
            sample_row(),
            SweepRow {
                n: 7,
                estimate: 1.0,
                ..sample_row()
            },
        ],
    };
    let text = to_csv_string(&result);
    assert!(text.starts_with(&(CSV_HEADER.join(",") + "\n")));
    let back = read_csv(text.as_bytes()).unwrap();
    assert_eq!(back, result);
    for (a, b) in back.rows.iter().zip(&result.rows) {
        assert_eq!(a.raw_noise.to_bits(), b.raw_noise.to_bits());
        assert_eq!(a.scaled_noise.to_bits(), b.scaled_noise.to_bits());
    }
}

#[test]
fn empty_result_is_header_only() {
    let text = to_csv_string(&SweepResult::default());
    assert_eq!(text.lines().count(), 1);
    assert!(read_csv(text.as_bytes()).unwrap().rows.is_empty());
}

#[test]
fn json_has_all_nine_keys() {
    let mut buf = Vec::new();
    write_json(
        &SweepResult {
            rows: vec![sample_row()],
        },
        &mut buf,
    )
    .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&buf).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 1);
    let obj = rows[0].as_object().unwrap();
    assert_eq!(obj.len(), 9);
    for key in CSV_HEADER {
        assert!(obj.contains_key(key), "{key}");
    }
}

#[test]
fn sweeps_are_independent_of_thread_count() {
    let mut toy = SweepConfig::new(
        Mode::ToyMc,
        vec![50, 200],
        NoiseGrid::Scaled(vec![0.1, 1.0, 10.0]),
        3000,
        9,
    );
    toy.record_timing = false;
    let mut eig = SweepConfig::new(
        Mode::Eig1,
        vec![40, 80],
        NoiseGrid::Scaled(vec![0.1, 10.0]),
        6,
        9,
    );
    eig.record_timing = false;
    for (cfg, run) in [
        (toy, run_toy_sweep as fn(&SweepConfig) -> _),
        (eig, run_eig1_sweep),
    ] {
        let mut outputs = Vec::new();
        for threads in [1, 4, 1] {
            let mut c = cfg.clone();
            c.threads = Some(threads);
            outputs.push(to_csv_string(&run(&c).unwrap()));
        }
        assert_eq!(outputs[0], outputs[1]);
        assert_eq!(outputs[0], outputs[2]);
    }
}

#[test]
fn rows_follow_grid_order_and_bounds() {
    let cfg = SweepConfig::new(
        Mode::ToyMc,
        vec![20, 40],
        NoiseGrid::Raw(vec![0.0, 0.5]),
        500,
        1,
    );
    let r = run_toy_sweep(&cfg).unwrap();
    let keys: Vec<(usize, f64)> = r.rows.iter().map(|x| (x.n, x.raw_noise)).collect();
    assert_eq!(keys, vec![(20, 0.0), (20, 0.5), (40, 0.0), (40, 0.5)]);
    for row in &r.rows {
        assert!(row.ci_low <= row.estimate && row.estimate <= row.ci_high);
        assert!((0.0..=1.0).contains(&row.estimate));
        assert_eq!(row.seed, 1);
    }
    assert_eq!(r.rows[2].scaled_noise, 0.0);
    assert_eq!(r.rows[3].scaled_noise, 20.0);
}

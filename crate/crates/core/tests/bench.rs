use wavefx::bench::{self, emit_table, FilterKind, Format, GridConfig, Mode};
use wavefx::Backend;

fn small_grid(kind: FilterKind) -> GridConfig {
    GridConfig {
        durations: vec![0.25, 0.5, 1.0],
        channels: vec![1, 4],
        repeats: 3,
        filter_kind: kind,
        backends: vec![Backend::Serial, Backend::Parallel],
        digest_outputs: true,
        ..GridConfig::default()
    }
}

#[test]
fn grid_is_complete_and_ordered() {
    for kind in [FilterKind::Iir, FilterKind::Fir] {
        let table = bench::run_filter_grid(&small_grid(kind)).unwrap();
        assert_eq!(table.mode, Mode::Filters);
        assert_eq!(table.points.len(), 3 * 2 * 2);
        for d in [0.25, 0.5, 1.0] {
            for c in [1, 4] {
                for b in ["serial", "parallel"] {
                    let p = table.find(d, c, b, kind).unwrap();
                    let t = p.timing.clone().unwrap();
                    assert!(t.mean_s >= t.min_s && t.min_s >= 0.0);
                    assert_eq!(p.repeats, 3);
                }
            }
        }
        let csv = emit_table(&table, Format::Csv);
        assert_eq!(csv.lines().count(), 13);
    }
}

#[test]
fn workloads_and_outputs_are_deterministic() {
    let cfg = GridConfig {
        backends: vec![Backend::Serial],
        ..small_grid(FilterKind::Iir)
    };
    let a = bench::run_filter_grid(&cfg).unwrap();
    let b = bench::run_filter_grid(&cfg).unwrap();
    let digests = |t: &bench::BenchTable| {
        t.points
            .iter()
            .map(|p| p.output_digest.clone().unwrap())
            .collect::<Vec<_>>()
    };
    assert_eq!(digests(&a), digests(&b));
}

#[test]
fn serial_time_grows_with_duration() {
    // reduced-scale version of the monotone workload property, 10% slack per step
    let cfg = GridConfig {
        durations: vec![1.0, 2.0, 4.0],
        channels: vec![2],
        repeats: 5,
        backends: vec![Backend::Serial],
        ..GridConfig::default()
    };
    let table = bench::run_filter_grid(&cfg).unwrap();
    let mins: Vec<f64> = table.points.iter().map(|p| p.timing.clone().unwrap().min_s).collect();
    for w in mins.windows(2) {
        assert!(w[1] >= 0.9 * w[0], "{mins:?}");
    }
}

#[test]
fn interface_bench_rows() {
    let table = bench::run_interface_bench_with(0.5, 2, 2, 44100, 5).unwrap();
    assert_eq!(table.points.len(), 3);
    let styles: Vec<&str> = table.points.iter().map(|p| p.backend.as_str()).collect();
    assert_eq!(styles, bench::INTERFACE_STYLES);
    let md = emit_table(&table, Format::Markdown);
    assert!(md.contains("| Implementation | Time (s) |"));
    assert!(bench::run_interface_bench_with(0.5, 2, 0, 44100, 5).is_err());
}

#[test]
fn default_grid_markdown_shape() {
    let cfg = GridConfig::default();
    assert_eq!(cfg.durations, [5.0, 60.0, 180.0, 300.0, 600.0]);
    assert_eq!(cfg.channels, [1, 2, 4, 8, 12]);
    assert_eq!(cfg.repeats, 50);
}

//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.
//!
//! Run a subset by passing name fragments:
//! `cargo test --test acceptance -- golden scaling`.

use std::cell::Cell;
use std::panic::{self, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
use sha2::{Digest, Sha256};

use wavefx::bench::{self, GridConfig};
use wavefx::{
    apply_fir_with, apply_iir, compose, design_butterworth, design_chebyshev1, design_peaking, design_shelf,
    frequency_response, iir_cascade_oracle, pipe, white_noise, Backend, Band, BiquadSection, Chain, ConvStrategy,
    Encoding, Filter, FilterSpec, FirFilter, IirFilter, ShelfKind, Wave, Window,
};

type Outcome = Result<String, String>;

struct Criterion {
    name: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

const MINUTE: Duration = Duration::from_secs(60);

fn main() {
    let criteria = [
        Criterion {
            name: "oracle equivalence (IIR)",
            budget: MINUTE,
            run: iir_oracle,
        },
        Criterion {
            name: "oracle equivalence (FIR)",
            budget: MINUTE,
            run: fir_oracle,
        },
        Criterion {
            name: "analytic design checks",
            budget: Duration::from_secs(10),
            run: analytic_designs,
        },
        Criterion {
            name: "chain algebra",
            budget: MINUTE,
            run: chain_algebra,
        },
        Criterion {
            name: "interface overhead",
            budget: 5 * MINUTE,
            run: interface_overhead,
        },
        Criterion {
            name: "scaling trend",
            budget: 10 * MINUTE,
            run: scaling_trend,
        },
        Criterion {
            name: "golden end-to-end",
            budget: 5 * MINUTE,
            run: golden_end_to_end,
        },
    ];
    let filters: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    panic::set_hook(Box::new(|_| {}));

    let mut failed = 0;
    let mut ran = 0;
    for c in &criteria {
        if !filters.is_empty() && !filters.iter().any(|f| c.name.contains(f.as_str())) {
            continue;
        }
        ran += 1;
        let start = Instant::now();
        let result = panic::catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        let result = match result {
            Ok(detail) if elapsed > c.budget => Err(format!(
                "{detail}; runtime {:.1} s exceeds {} s budget",
                elapsed.as_secs_f64(),
                c.budget.as_secs()
            )),
            other => other,
        };
        match result {
            Ok(detail) => println!("PASS  {}: {detail} [{:.1} s]", c.name, elapsed.as_secs_f64()),
            Err(why) => {
                failed += 1;
                println!("FAIL  {}: {why} [{:.1} s]", c.name, elapsed.as_secs_f64());
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", ran - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}

fn runner(cases: u32) -> TestRunner {
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), TestCaseError> {
    if cond {
        Ok(())
    } else {
        Err(TestCaseError::fail(msg()))
    }
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

fn noise(frames: usize, channels: usize, fs: u32, seed: u64) -> Wave {
    let w = white_noise(frames as f64 / f64::from(fs), channels, fs, seed).unwrap();
    assert_eq!(w.frames(), frames);
    w
}

const BACKENDS: [Backend; 3] = [Backend::Serial, Backend::Parallel, Backend::Auto];

/// A stable section from a pole radius and angle (or two real poles), with
/// the numerator scaled by (1 − r)² to keep the cascade gain moderate.
fn random_section((r, theta, real, b): (f64, f64, bool, [f64; 3])) -> BiquadSection {
    let (a1, a2) = if real {
        let p2 = 0.9 * theta.cos();
        (-(r + p2), r * p2)
    } else {
        (-2.0 * r * theta.cos(), r * r)
    };
    let s = (1.0 - r) * (1.0 - r);
    BiquadSection::from_coefficients([b[0] * s, b[1] * s, b[2] * s], [1.0, a1, a2]).unwrap()
}

fn section_strategy() -> impl Strategy<Value = (f64, f64, bool, [f64; 3])> {
    (
        0.0..0.95f64,
        0.0..std::f64::consts::PI,
        any::<bool>(),
        [-1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64],
    )
}

fn iir_oracle() -> Outcome {
    let strategy = (
        prop::collection::vec(section_strategy(), 1..=6),
        0.1..4.0f64,
        1_000usize..=100_000,
        1usize..=12,
        any::<u64>(),
        0usize..3,
    );
    let worst = Cell::new(0.0f64);
    let samples = Cell::new(0usize);
    runner(200)
        .run(&strategy, |(sections, gain, frames, channels, seed, backend)| {
            let sections: Vec<_> = sections.into_iter().map(random_section).collect();
            let filter = IirFilter::from_sections(sections, gain, 44100).unwrap();
            let wave = noise(frames, channels, 44100, seed);
            let out = apply_iir(&filter, &wave, BACKENDS[backend]).unwrap();
            for c in 0..channels {
                let expected = iir_cascade_oracle(&filter, wave.channel(c)).unwrap();
                let err = max_abs_diff(out.channel(c), &expected);
                worst.set(worst.get().max(err));
                check(err <= 1e-9, || format!("channel {c}: max abs error {err:e}"))?;
            }
            samples.set(samples.get() + frames * channels);
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    Ok(format!(
        "200 cascades, {} samples, max abs error {:.2e} (limit 1e-9)",
        samples.get(),
        worst.get()
    ))
}

fn naive_convolution(taps: &[f64], x: &[f64]) -> Vec<f64> {
    (0..x.len())
        .map(|n| (0..taps.len().min(n + 1)).map(|k| taps[k] * x[n - k]).sum())
        .collect()
}

fn fir_oracle() -> Outcome {
    let strategy = (
        prop::collection::vec(-1.0..1.0f64, 3..=1025),
        1_000usize..=30_000,
        1usize..=4,
        any::<u64>(),
    );
    let (worst_fft, worst_naive, worst_par_fft) = (Cell::new(0.0f64), Cell::new(0.0f64), Cell::new(0.0f64));
    runner(100)
        .run(&strategy, |(taps, frames, channels, seed)| {
            let filter = FirFilter::from_taps(taps.clone(), 44100).unwrap();
            let wave = noise(frames, channels, 44100, seed);
            let run = |b, s| apply_fir_with(&filter, &wave, b, s).unwrap();
            let direct = run(Backend::Serial, ConvStrategy::Direct);
            let direct_par = run(Backend::Parallel, ConvStrategy::Direct);
            let fft = run(Backend::Serial, ConvStrategy::Fft);
            let fft_par = run(Backend::Parallel, ConvStrategy::Fft);
            check(direct == direct_par, || "direct serial and parallel differ".into())?;
            let d = max_abs_diff(direct.as_planar(), fft.as_planar());
            worst_fft.set(worst_fft.get().max(d));
            check(d <= 1e-9, || format!("direct vs fft: {d:e}"))?;
            let d = max_abs_diff(fft.as_planar(), fft_par.as_planar());
            worst_par_fft.set(worst_par_fft.get().max(d));
            check(d <= 1e-12, || format!("fft serial vs parallel: {d:e}"))?;
            let d = max_abs_diff(direct.channel(0), &naive_convolution(&taps, wave.channel(0)));
            worst_naive.set(worst_naive.get().max(d));
            check(d <= 1e-9, || format!("direct vs naive convolution: {d:e}"))?;
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    Ok(format!(
        "100 tap vectors; direct vs fft {:.2e}, fft serial vs parallel {:.2e}, \
         direct vs naive {:.2e}; direct serial == parallel bit-exact",
        worst_fft.get(),
        worst_par_fft.get(),
        worst_naive.get()
    ))
}

fn db(h: num_complex::Complex64) -> f64 {
    20.0 * h.norm().log10()
}

fn gain_at(filter: &IirFilter, f: f64) -> num_complex::Complex64 {
    frequency_response(&Filter::Iir(filter.clone()), &[f]).unwrap()[0]
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn analytic_designs() -> Outcome {
    let fs = 44100;
    let mut notes = Vec::new();
    for order in [2, 4, 8] {
        let f = design_butterworth(Band::Lowpass(1000.0), order, fs).map_err(|e| e.to_string())?;
        let at_fc = db(gain_at(&f, 1000.0));
        let dc = db(gain_at(&f, 0.0));
        ensure((at_fc + 3.0103).abs() <= 0.001, || {
            format!("butterworth order {order}: |H(fc)| = {at_fc} dB")
        })?;
        ensure(dc.abs() <= 1e-9, || format!("butterworth order {order}: DC = {dc} dB"))?;
        notes.push(format!("butter{order} {at_fc:.5} dB"));
    }

    let cheb = design_chebyshev1(Band::Lowpass(1000.0), 4, 1.0, fs).map_err(|e| e.to_string())?;
    let probes: Vec<f64> = (0..512).map(|i| 1000.0 * i as f64 / 511.0).collect();
    let mags: Vec<f64> = frequency_response(&Filter::Iir(cheb.clone()), &probes)
        .unwrap()
        .into_iter()
        .map(db)
        .collect();
    let (imax, &max) = mags.iter().enumerate().max_by(|a, b| a.1.total_cmp(b.1)).unwrap();
    let min = mags.iter().copied().fold(f64::INFINITY, f64::min);
    ensure((-1e-3..=1e-9).contains(&max), || {
        format!("chebyshev probe max {max} dB")
    })?;
    ensure(min >= -1.0 - 1e-6, || format!("chebyshev passband min {min} dB"))?;
    // the exact ripple peak lies between probes; refine it by golden-section search
    let (mut lo, mut hi) = (probes[imax.saturating_sub(1)], probes[(imax + 1).min(511)]);
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    for _ in 0..80 {
        let (a, b) = (hi - phi * (hi - lo), lo + phi * (hi - lo));
        if db(gain_at(&cheb, a)) > db(gain_at(&cheb, b)) {
            hi = b;
        } else {
            lo = a;
        }
    }
    let peak = db(gain_at(&cheb, (lo + hi) / 2.0));
    ensure(peak.abs() <= 1e-9, || format!("chebyshev refined peak {peak} dB"))?;
    notes.push(format!("cheby1 passband [{min:.6}, {max:.2e}] dB, peak {peak:.1e} dB"));

    let nyq = f64::from(fs) / 2.0;
    let hi_shelf = design_shelf(ShelfKind::High, 1000.0, 6.0, 0.707, fs).unwrap();
    let target = 10f64.powf(6.0 / 20.0);
    ensure((gain_at(&hi_shelf, nyq).norm() - target).abs() <= 1e-6, || {
        "high shelf Nyquist gain".into()
    })?;
    ensure((gain_at(&hi_shelf, 0.0).norm() - 1.0).abs() <= 1e-6, || {
        "high shelf DC gain".into()
    })?;
    let lo_shelf = design_shelf(ShelfKind::Low, 1000.0, 6.0, 0.707, fs).unwrap();
    ensure((gain_at(&lo_shelf, 0.0).norm() - target).abs() <= 1e-6, || {
        "low shelf DC gain".into()
    })?;
    ensure((gain_at(&lo_shelf, nyq).norm() - 1.0).abs() <= 1e-6, || {
        "low shelf Nyquist gain".into()
    })?;

    // hand evaluation of the cookbook low shelf (2000 Hz, -6 dB, q 0.707)
    let reference = [
        0.9331406285426834,
        -1.5516066139004616,
        0.6643406183509267,
        -1.5287779671849073,
        0.6203098936091647,
    ];
    let s = design_shelf(ShelfKind::Low, 2000.0, -6.0, 0.707, fs)
        .unwrap()
        .sections()[0];
    let got = [s.b0, s.b1, s.b2, s.a1, s.a2];
    let d = max_abs_diff(&got, &reference);
    ensure(d <= 1e-10, || format!("low shelf coefficients off by {d:e}"))?;

    for kind in [ShelfKind::Low, ShelfKind::High] {
        let s = design_shelf(kind, 1000.0, 0.0, 0.707, fs).unwrap().sections()[0];
        let d = max_abs_diff(&[s.b0, s.b1, s.b2, s.a1, s.a2], &[1.0, 0.0, 0.0, 0.0, 0.0]);
        ensure(d <= 1e-12, || format!("zero-gain shelf is not the identity ({d:e})"))?;
    }

    let peak = design_peaking(1000.0, 12.0, 1.0, fs).unwrap();
    let center = gain_at(&peak, 1000.0).norm();
    ensure((center - 3.98107).abs() <= 1e-4, || {
        format!("peaking center gain {center}")
    })?;
    ensure((gain_at(&peak, 0.0).norm() - 1.0).abs() <= 1e-9, || {
        "peaking DC gain".into()
    })?;
    ensure((gain_at(&peak, nyq).norm() - 1.0).abs() <= 1e-9, || {
        "peaking Nyquist gain".into()
    })?;
    let cut = design_peaking(1000.0, -12.0, 1.0, fs).unwrap();
    let pair = compose(peak, cut).unwrap();
    let freqs: Vec<f64> = (0..100).map(|i| 20.0 * (nyq / 20.0).powf(i as f64 / 99.0)).collect();
    let worst = pair
        .frequency_response(&freqs)
        .unwrap()
        .iter()
        .map(|h| (h.norm() - 1.0).abs())
        .fold(0.0, f64::max);
    ensure(worst <= 1e-9, || format!("boost/cut cascade deviates by {worst:e}"))?;
    notes.push(format!("shelf/peak ok, peak {center:.5}, cancellation {worst:.1e}"));
    Ok(notes.join("; "))
}

#[derive(Clone, Debug)]
struct StageDraw {
    spec: FilterSpec,
    prebound: bool,
}

fn spec_strategy() -> impl Strategy<Value = FilterSpec> {
    let band = prop_oneof![
        (50.0..3000.0f64).prop_map(Band::Lowpass),
        (50.0..3000.0f64).prop_map(Band::Highpass),
        (50.0..1500.0f64, 1.1..2.0f64).prop_map(|(lo, k)| Band::Bandpass(lo, lo * k)),
    ];
    let eq = (50.0..3500.0f64, -12.0..12.0f64, 0.3..4.0f64);
    prop_oneof![
        (band.clone(), 1usize..=6).prop_map(|(b, n)| FilterSpec::butterworth(b, n)),
        (band, 1usize..=6, 0.1..3.0f64).prop_map(|(b, n, r)| FilterSpec::chebyshev1(b, n, r)),
        eq.clone().prop_map(|(f, g, q)| FilterSpec::low_shelf(f, g, q)),
        eq.clone().prop_map(|(f, g, q)| FilterSpec::high_shelf(f, g, q)),
        eq.prop_map(|(f, g, q)| FilterSpec::peaking(f, g, q)),
        (
            50.0..3000.0f64,
            1usize..=32,
            prop_oneof![Just(Window::Hamming), Just(Window::Blackman), Just(Window::Rect)]
        )
            .prop_map(|(f, half, w)| FilterSpec::fir(Band::Lowpass(f), 2 * half + 1, w)),
    ]
}

fn chain_strategy() -> impl Strategy<Value = Vec<StageDraw>> {
    prop::collection::vec(
        (spec_strategy(), prop::bool::weighted(0.3)).prop_map(|(spec, prebound)| StageDraw { spec, prebound }),
        0..=3,
    )
}

fn build_chain(draws: &[StageDraw], fs: u32) -> Chain {
    Chain::new(draws.iter().map(|d| {
        let f = if d.prebound {
            d.spec.design(fs).unwrap()
        } else {
            d.spec.unbound().unwrap()
        };
        wavefx::Stage::Filter(f)
    }))
    .unwrap()
}

fn chain_algebra() -> Outcome {
    let strategy = (
        chain_strategy(),
        chain_strategy(),
        chain_strategy(),
        prop_oneof![Just(8000u32), Just(16000), Just(44100), Just(48000)],
        1usize..=400,
        1usize..=3,
        any::<u64>(),
    );
    runner(1000)
        .run(&strategy, |(a, b, c, fs, frames, channels, seed)| {
            let w = noise(frames, channels, fs, seed);
            let (f, g, h) = (build_chain(&a, fs), build_chain(&b, fs), build_chain(&c, fs));
            let fg = compose(f.clone(), g.clone()).unwrap();

            // coherence
            let stepwise = pipe(&pipe(&w, &f).unwrap(), &g).unwrap();
            check(stepwise == pipe(&w, &fg).unwrap(), || "pipe/compose coherence".into())?;
            // lazy binding
            let bound = fg.bind(fs).unwrap();
            check(pipe(&w, &fg).unwrap() == pipe(&w, &bound).unwrap(), || {
                "lazy binding".into()
            })?;
            // idempotence
            check(bound.bind(fs).unwrap() == bound, || "binding idempotence".into())?;
            // flattening and associativity
            check(fg.len() == f.len() + g.len(), || "flattening count".into())?;
            let left = compose(fg.clone(), h.clone()).unwrap();
            let right = compose(f.clone(), compose(g.clone(), h.clone()).unwrap()).unwrap();
            check(left.stages() == right.stages(), || "associativity".into())?;
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    Ok("1000 cases: coherence, lazy binding, idempotence, flattening all bit-exact".into())
}

fn interface_overhead() -> Outcome {
    let start = Instant::now();
    let probe = bench::run_interface_bench_with(30.0, 8, 1, 44100, 11).map_err(|e| e.to_string())?;
    // a single pipe run over 30 s x 8 ch taking more than 2 s marks a slow machine
    let slow = probe.points[0].mean_s().unwrap() > 2.0 || start.elapsed() > Duration::from_secs(20);
    let duration = if slow { 30.0 } else { bench::INTERFACE_DURATION_S };
    let table = bench::run_interface_bench_with(duration, 8, 5, 44100, 11).map_err(|e| e.to_string())?;
    ensure(table.points.len() == 3, || "expected 3 interface rows".into())?;
    let digests: Vec<_> = table.points.iter().map(|p| p.output_digest.clone().unwrap()).collect();
    ensure(digests.iter().all(|d| d == &digests[0]), || {
        "interface outputs differ".into()
    })?;
    let means: Vec<f64> = table.points.iter().map(|p| p.mean_s().unwrap()).collect();
    let (lo, hi) = means
        .iter()
        .fold((f64::INFINITY, 0.0f64), |(lo, hi), &m| (lo.min(m), hi.max(m)));
    let spread = (hi - lo) / lo;
    let rows = table
        .points
        .iter()
        .zip(&means)
        .map(|(p, m)| format!("{} {m:.4} s", p.backend))
        .collect::<Vec<_>>()
        .join(", ");
    let detail = format!(
        "{duration} s x 8 ch, 5 repeats: {rows}; spread {:.2}% (limit 5%), outputs hash-equal",
        spread * 100.0
    );
    ensure(spread < 0.05, || detail.clone())?;
    Ok(detail)
}

fn scaling_trend() -> Outcome {
    let config = GridConfig {
        durations: vec![60.0],
        channels: vec![1, 2, 4, 8, 12],
        repeats: 10,
        backends: vec![Backend::Serial, Backend::Parallel],
        ..GridConfig::default()
    };
    let table = bench::run_filter_grid(&config).map_err(|e| e.to_string())?;
    let mean = |ch, b: &str| {
        table
            .find(60.0, ch, b, bench::FilterKind::Iir)
            .and_then(|p| p.mean_s())
            .ok_or_else(|| format!("missing cell {ch} ch {b}"))
    };
    let serial: Vec<f64> = [1, 2, 4, 8, 12]
        .iter()
        .map(|&c| mean(c, "serial"))
        .collect::<Result<_, _>>()?;
    let ratio = serial[4] / serial[0];
    let par_ratio = mean(12, "parallel")? / serial[4];
    let hw = std::thread::available_parallelism().map_or(1, |n| n.get());
    let serial_ok = ratio >= 6.0;
    let mut detail = format!(
        "serial means {:?} s; 12 ch / 1 ch = {ratio:.2}x (need >= 6); parallel/serial at 12 ch = {par_ratio:.3}",
        serial.iter().map(|m| (m * 1e4).round() / 1e4).collect::<Vec<_>>()
    );
    let parallel_ok = if hw >= 4 {
        detail.push_str(" (need <= 0.5)");
        par_ratio <= 0.5
    } else {
        detail.push_str(&format!(
            "; parallel clause not applicable: {hw} hardware thread(s), needs >= 4"
        ));
        true
    };
    if serial_ok && parallel_ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

const GOLDEN_CHAIN: &str = "butter(lp, order=4, fc=1000) | butter(lp, order=4, fc=1200) | \
                            cheby1(lp, order=4, fc=2000, ripple_db=1) | cheby1(lp, order=4, fc=2400, ripple_db=1)";

/// SHA-256 of the float32 output file for the golden input below.
const GOLDEN_SHA256: &str = "0979c65bc54837fef8e8e4f9f172e98fa0eaf8a41d8873a232dfceb0f3dc40fb";

fn sha256_file(path: &Path) -> String {
    hex::encode(Sha256::digest(std::fs::read(path).unwrap()))
}

fn golden_end_to_end() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let input = dir.path().join("noise.wav");
    white_noise(5.0, 4, 44100, 2024)
        .unwrap()
        .map(|x| 0.25 * x)
        .save(&input, Encoding::Float32)
        .map_err(|e| e.to_string())?;

    let max = std::thread::available_parallelism().map_or(1, |n| n.get());
    let mut hashes = Vec::new();
    for threads in [1, 4, max] {
        for backend in ["serial", "parallel", "auto"] {
            for run in 0..if threads == 1 && backend == "auto" { 2 } else { 1 } {
                let out = dir.path().join(format!("out-{threads}-{backend}-{run}.wav"));
                let status = Command::new(env!("CARGO_BIN_EXE_wavefx"))
                    .args(["--threads", &threads.to_string(), "apply", "--input"])
                    .arg(&input)
                    .arg("--output")
                    .arg(&out)
                    .args(["--chain", GOLDEN_CHAIN, "--backend", backend])
                    .status()
                    .map_err(|e| e.to_string())?;
                ensure(status.success(), || format!("apply exited with {status}"))?;
                hashes.push((format!("threads {threads} {backend}"), sha256_file(&out)));
            }
        }
    }
    let first = &hashes[0].1;
    if let Some((label, h)) = hashes.iter().find(|(_, h)| h != first) {
        return Err(format!("{label} produced {h}, expected {first}"));
    }

    // the CLI output must equal the library pipe saved the same way
    let lib_out = dir.path().join("library.wav");
    let wave = wavefx::load_wav(&input).unwrap();
    let chain = wavefx::cli::parse_chain_spec(GOLDEN_CHAIN).unwrap();
    pipe(&wave, &chain).unwrap().save(&lib_out, Encoding::Float32).unwrap();
    ensure(&sha256_file(&lib_out) == first, || {
        "CLI output differs from the library pipe".into()
    })?;

    ensure(first == GOLDEN_SHA256, || {
        format!("hash {first} differs from frozen {GOLDEN_SHA256}")
    })?;
    Ok(format!(
        "{} runs over threads {{1, 4, {max}}} x backends agree: {first}",
        hashes.len()
    ))
}

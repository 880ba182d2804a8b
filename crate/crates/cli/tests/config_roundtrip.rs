use std::path::PathBuf;

use proptest::prelude::*;
use splitprob::config::*;
use splitprob::RunConfig;

fn format() -> impl Strategy<Value = Format> {
    prop_oneof![Just(Format::Json), Just(Format::Csv), Just(Format::Text)]
}

fn finite() -> impl Strategy<Value = f64> {
    prop_oneof![(-1e6f64..1e6), (2u32..50).prop_map(f64::from), any::<f64>().prop_filter("finite", |v| v.is_finite())]
}

fn command() -> impl Strategy<Value = Command> {
    prop_oneof![
        (any::<u64>(), any::<usize>(), prop_oneof![Just(ExactMethod::Corollary), Just(ExactMethod::Theorem1), Just(ExactMethod::Series)])
            .prop_map(|(q, n, method)| Command::Exact(ExactArgs { q, n, method })),
        (any::<usize>(), any::<usize>(), any::<bool>())
            .prop_map(|(n, cap, check)| Command::Symbolic(SymbolicArgs { n, cap, check })),
        (
            proptest::option::of(any::<u64>()),
            any::<usize>(),
            prop_oneof![
                Just(NonmonicMethod::Direct),
                Just(NonmonicMethod::Euler),
                Just(NonmonicMethod::Theorem),
                Just(NonmonicMethod::Symbolic)
            ]
        )
            .prop_map(|(q, n, method)| Command::Nonmonic(NonmonicArgs { q, n, method })),
        (any::<u64>(), any::<usize>(), any::<bool>())
            .prop_map(|(q, n, bruteforce)| Command::Ff(FfArgs { q, n, bruteforce })),
        (any::<u64>(), any::<usize>(), any::<bool>(), proptest::option::of(any::<usize>()))
            .prop_map(|(q, n, check_gamma, cap)| Command::Trees(TreesArgs { q, n, check_gamma, cap })),
        (any::<u64>(), any::<u32>(), proptest::collection::vec(any::<i64>(), 1..5), any::<bool>()).prop_map(
            |(p, precision, c, nonmonic)| {
                let coeffs = c.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",");
                Command::Classify(ClassifyArgs { p, precision, coeffs, nonmonic })
            }
        ),
        (
            any::<u64>(),
            any::<usize>(),
            any::<u32>(),
            any::<u64>(),
            any::<u64>(),
            prop_oneof![Just(SampleMode::Monic), Just(SampleMode::Nonmonic)],
            proptest::option::of(any::<usize>()),
            any::<bool>()
        )
            .prop_map(|(p, n, precision, samples, seed, mode, workers, exhaustive)| {
                Command::Sample(SampleArgs { p, n, precision, samples, seed, mode, workers, exhaustive })
            }),
        (
            any::<u64>(),
            any::<usize>(),
            prop_oneof![
                Just(AsymptoticsReport::Summary),
                Just(AsymptoticsReport::LogSn),
                Just(AsymptoticsReport::LogNu),
                Just(AsymptoticsReport::Omega),
                Just(AsymptoticsReport::Sumit)
            ],
            any::<bool>(),
            any::<usize>(),
            proptest::option::of(proptest::collection::vec(0usize..1000, 1..5))
        )
            .prop_map(|(q, n, report, emit_w, exact_limit, parts)| {
                let parts = parts.map(|v| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","));
                Command::Asymptotics(AsymptoticsArgs { q, n, report, emit_w, exact_limit, parts })
            }),
        (
            finite(),
            prop_oneof![Just(0.0), finite()],
            any::<usize>(),
            proptest::option::of(any::<usize>()),
            proptest::option::of(any::<usize>())
        )
            .prop_map(|(re, im, truncation, property5, probe)| {
                Command::Zeros(ZerosArgs { q: QValue { re, im }, truncation, property5, probe })
            }),
        prop_oneof![(1u8..=10).prop_map(Criterion::One), Just(Criterion::All)]
            .prop_map(|criterion| Command::Verify(VerifyArgs { criterion })),
    ]
}

fn config() -> impl Strategy<Value = RunConfig> {
    (format(), proptest::option::of("[a-z0-9_./]{1,12}"), command()).prop_map(|(format, output, command)| RunConfig {
        format,
        output: output.map(PathBuf::from),
        command,
    })
}

proptest! {
    #[test]
    fn render_then_parse_is_identity(cfg in config()) {
        let rendered = cfg.render();
        let parsed = RunConfig::parse_args(rendered.clone()).map_err(|e| TestCaseError::fail(format!("{rendered:?}: {e}")))?;
        prop_assert_eq!(parsed, cfg);
    }
}

#[test]
fn parse_then_render_is_identity_on_canonical_args() {
    let args: Vec<String> = "sample --p 3 --n 4 --precision 48 --samples 100000 --seed 7 --mode monic --format json"
        .split(' ')
        .map(String::from)
        .collect();
    let cfg = RunConfig::parse_args(args.clone()).unwrap();
    assert_eq!(cfg.render(), args);
}

#[test]
fn complex_q_parses() {
    let cfg = RunConfig::parse_args(["zeros", "--q", "3.5,-1"]).unwrap();
    match cfg.command {
        Command::Zeros(z) => assert_eq!(z.q, QValue { re: 3.5, im: -1.0 }),
        other => panic!("{other:?}"),
    }
    assert!(RunConfig::parse_args(["zeros", "--q", "inf"]).is_err());
}

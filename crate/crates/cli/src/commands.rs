//! The per-instance subcommands.

use std::time::{SystemTime, UNIX_EPOCH};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use ratcurve::fiber::{fiber, map_degree};
use ratcurve::field::{Field, FieldMode, PrimeField, RationalField};
use ratcurve::form::ProjPointN;
use ratcurve::param::Parameterization;
use ratcurve::parse::parse_form;
use ratcurve::reparam::{core_ideal, extract_reparam_basis, reparameterize, DEFAULT_RETRY_BUDGET};
use ratcurve::report::{analysis_json, analyze, core_json, fiber_json, reparam_json, RunInfo};
use ratcurve::syzygy::hilbert_burch;
use ratcurve::{Error, Result};

use crate::instance::{split_point, Instance};
use crate::plain;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Analyze,
    Fiber { point: String },
    Reparam,
    Core,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Options {
    /// Overrides the seed in the instance file.
    pub seed: Option<u64>,
    pub samples: usize,
    pub deterministic: bool,
    pub plain: bool,
}

/// Rendered report, and whether every certificate in it held.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub text: String,
    pub certified: bool,
}

fn render<T: Serialize>(value: &T, plain_text: impl FnOnce(&T) -> String, plain: bool) -> String {
    if plain {
        plain_text(value)
    } else {
        let mut s = serde_json::to_string_pretty(value).expect("report serializes");
        s.push('\n');
        s
    }
}

fn parse_point<F: Field>(field: &F, spec: &str) -> Result<ProjPointN<F::Elem>> {
    let coords = split_point(spec)?
        .into_iter()
        .map(|c| {
            let h = parse_form(field, c)?;
            match h.degree() {
                None => Ok(field.zero()),
                Some(0) => Ok(h.coeffs()[0].clone()),
                Some(_) => Err(Error::Parse(format!("point coordinate {c:?} is not a constant"))),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    if coords.iter().all(|c| field.is_zero(c)) {
        return Err(Error::Parse(format!("point {spec:?} has all coordinates zero")));
    }
    ProjPointN::new(field, coords)
}

pub fn run(instance: &Instance, command: &Command, options: &Options) -> Result<Output> {
    match instance.field {
        FieldMode::Prime { p } => run_in(&PrimeField::new(p)?, instance, command, options),
        FieldMode::Rational => run_in(&RationalField, instance, command, options),
    }
}

fn run_in<F: Field>(field: &F, instance: &Instance, command: &Command, options: &Options) -> Result<Output> {
    let param = Parameterization::parse(field, &instance.generators)?;
    let seed = options.seed.unwrap_or(instance.seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let timestamp = (!options.deterministic)
        .then(|| SystemTime::now().duration_since(UNIX_EPOCH).map(|t| t.as_secs()).unwrap_or(0));
    let run = RunInfo { field: field.describe(), seed, timestamp };
    let samples = options.samples;
    match command {
        Command::Analyze => {
            let a = analyze(field, &param, samples, &mut rng)?;
            let js = analysis_json(field, &a, run);
            Ok(Output { text: render(&js, plain::analysis, options.plain), certified: a.consistent() })
        }
        Command::Fiber { point } => {
            let p = parse_point(field, point)?;
            if p.len() != param.n() {
                return Err(Error::DimensionMismatch(format!(
                    "point has {} coordinates, the map has {}",
                    p.len(),
                    param.n()
                )));
            }
            let phi = hilbert_burch(field, &param)?;
            let js = fiber_json(field, &fiber(field, &phi, &p)?, run);
            Ok(Output { text: render(&js, plain::fiber, options.plain), certified: true })
        }
        Command::Reparam => {
            let phi = hilbert_burch(field, &param)?;
            let res = reparameterize(field, &param, &phi, &mut rng)?;
            let js = reparam_json(field, &res, run);
            Ok(Output { text: render(&js, plain::reparam, options.plain), certified: res.verification.all() })
        }
        Command::Core => {
            let phi = hilbert_burch(field, &param)?;
            let r = map_degree(field, &param, &phi, samples, &mut rng)?.r;
            let (f1, f2) = extract_reparam_basis(field, &param, &phi, r, DEFAULT_RETRY_BUDGET, &mut rng)?;
            let core = core_ideal(field, &param, r, &f1, &f2)?;
            let js = core_json(field, &core, &f1, &f2, run);
            Ok(Output { text: render(&js, plain::core, options.plain), certified: true })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst(field: FieldMode, gens: &[&str]) -> Instance {
        Instance { field, seed: 1, generators: gens.iter().map(|s| s.to_string()).collect() }
    }

    fn opts() -> Options {
        Options { seed: None, samples: 7, deterministic: true, plain: false }
    }

    fn json(out: &Output) -> serde_json::Value {
        serde_json::from_str(&out.text).unwrap()
    }

    #[test]
    fn analyze_examples() {
        let i = inst(FieldMode::default(), &["x^3", "x^2*y", "y^3"]);
        let v = json(&run(&i, &Command::Analyze, &opts()).unwrap());
        assert_eq!((v["r"].as_u64(), v["eA"].as_u64(), v["j"].as_u64()), (Some(1), Some(3), Some(9)));
        assert_eq!(v["birational"], true);
        let i = inst(FieldMode::default(), &["x^4", "x^2*y^2", "y^4"]);
        let v = json(&run(&i, &Command::Analyze, &opts()).unwrap());
        assert_eq!((v["r"].as_u64(), v["eA"].as_u64(), v["j"].as_u64()), (Some(2), Some(2), Some(16)));
        assert_eq!(v["birational"], false);
        assert_eq!(v["run"]["seed"], 1);
        assert_eq!(v["run"]["field"], "prime 2147483647");
    }

    #[test]
    fn invalid_instances_are_input_errors() {
        let e = run(&inst(FieldMode::Rational, &["x", "x"]), &Command::Analyze, &opts()).unwrap_err();
        assert!(e.is_input_error());
        assert!(e.to_string().contains("linearly dependent generators"));
        let e = run(&inst(FieldMode::Prime { p: 1000 }, &["x", "y"]), &Command::Analyze, &opts()).unwrap_err();
        assert!(e.is_input_error());
    }

    #[test]
    fn fiber_examples() {
        let i = inst(FieldMode::Rational, &["x^4", "x^2*y^2", "y^4"]);
        let v = json(&run(&i, &Command::Fiber { point: "1:1:1".into() }, &opts()).unwrap());
        assert_eq!(v["onImage"], true);
        assert_eq!(v["fiberDegree"], 2);
        assert_eq!(v["fiberForm"], "x^2 - y^2");
        let v = json(&run(&i, &Command::Fiber { point: "0:1:0".into() }, &opts()).unwrap());
        assert_eq!(v["onImage"], false);
        let i = inst(FieldMode::Rational, &["x", "y"]);
        let v = json(&run(&i, &Command::Fiber { point: "2:3".into() }, &opts()).unwrap());
        assert_eq!(v["fiberForm"], "3*x - 2*y");
        assert_eq!(v["fiberDegree"], 1);
        for bad in ["1:1:1", "0:0", "1:x", "1:"] {
            let e = run(&i, &Command::Fiber { point: bad.into() }, &opts()).unwrap_err();
            assert!(e.is_input_error(), "{bad}");
        }
    }

    #[test]
    fn reparam_and_core_examples() {
        let i = inst(FieldMode::Rational, &["x^6", "x^3*y^3", "y^6"]);
        let out = run(&i, &Command::Reparam, &opts()).unwrap();
        assert!(out.certified);
        let v = json(&out);
        assert_eq!(v["r"], 3);
        assert_eq!(v["newGens"].as_array().unwrap().len(), 3);
        let i = inst(FieldMode::Rational, &["x^4", "x^2*y^2", "y^4"]);
        let v = json(&run(&i, &Command::Core, &opts()).unwrap());
        assert_eq!(v["equalsMPower"], false);
        assert_eq!(v["integrallyClosed"]["value"], false);
        assert_eq!(v["integrallyClosed"]["provenance"], "computed-monomial");
        assert_eq!(v["coreGens"], serde_json::json!(["x^6", "x^4*y^2", "x^2*y^4", "y^6"]));
        let i = inst(FieldMode::Rational, &["x", "y"]);
        let v = json(&run(&i, &Command::Core, &opts()).unwrap());
        assert_eq!(v["coreGens"], serde_json::json!(["x", "y"]));
        assert_eq!(v["equalsMPower"], true);
    }

    #[test]
    fn seed_override_and_determinism() {
        let i = inst(FieldMode::default(), &["x^5 + 3*x*y^4", "x^3*y^2 - y^5", "x^4*y"]);
        let a = run(&i, &Command::Analyze, &opts()).unwrap();
        let b = run(&i, &Command::Analyze, &opts()).unwrap();
        assert_eq!(a, b);
        let o = Options { seed: Some(99), ..opts() };
        let v = json(&run(&i, &Command::Analyze, &o).unwrap());
        assert_eq!(v["run"]["seed"], 99);
        let o = Options { deterministic: false, ..opts() };
        assert!(json(&run(&i, &Command::Analyze, &o).unwrap())["run"]["timestamp"].is_u64());
    }

    #[test]
    fn plain_output() {
        let i = inst(FieldMode::Rational, &["x^4", "x^2*y^2", "y^4"]);
        let o = Options { plain: true, ..opts() };
        for cmd in [Command::Analyze, Command::Reparam, Command::Core, Command::Fiber { point: "1:4:16".into() }] {
            let out = run(&i, &cmd, &o).unwrap();
            assert!(serde_json::from_str::<serde_json::Value>(&out.text).is_err());
            assert!(!out.text.is_empty());
        }
    }
}

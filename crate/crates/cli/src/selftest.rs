//! Invariant sweep over monomial, dense and composed corpora.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use ratcurve::corpus::{random_composed, random_dense};
use ratcurve::fiber::{fiber_at_random_point, map_degree, DEFAULT_SAMPLES};
use ratcurve::field::{Field, FieldMode, PrimeField};
use ratcurve::form::BinaryForm;
use ratcurve::ideal::GradedIdeal;
use ratcurve::monomial::{newton_closure, MonomialParam};
use ratcurve::param::Parameterization;
use ratcurve::reparam::{extract_reparam_basis, DEFAULT_RETRY_BUDGET};
use ratcurve::report::analyze;
use ratcurve::syzygy::{hilbert_burch, verify_hilbert_burch, SyzygyMatrix};

use crate::instance::Instance;

/// Deliberate defects for checking that the sweep notices them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Fault {
    /// Report the map degree off by one.
    MapDegree,
    /// Perturb one entry of every Hilbert-Burch matrix.
    Phi,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    pub d_max: usize,
    pub corpus_size: usize,
    pub seed: u64,
    pub fault: Option<Fault>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CheckSummary {
    pub name: &'static str,
    pub passed: usize,
    pub failed: usize,
    pub first_counterexample: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Summary {
    pub seed: u64,
    pub field: String,
    pub cases: usize,
    pub checks: Vec<CheckSummary>,
}

impl Summary {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.failed == 0)
    }

    pub fn render_plain(&self) -> String {
        let mut out = format!("selftest: {} cases, seed {}, field {}\n", self.cases, self.seed, self.field);
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        for c in &self.checks {
            let status = if c.failed == 0 { "ok" } else { "FAIL" };
            out.push_str(&format!("{status:<4} {:<width$}  {:>6} passed  {:>6} failed\n", c.name, c.passed, c.failed));
        }
        for c in self.checks.iter().filter(|c| c.failed > 0) {
            if let Some(ce) = &c.first_counterexample {
                out.push_str(&format!("\nfirst counterexample for {:?}:\n{ce}\n", c.name));
            }
        }
        out
    }
}

#[derive(Clone, Debug)]
enum Case {
    Monomial { m: MonomialParam, full: bool },
    Dense,
    Composed,
}

type Outcome = (&'static str, Result<(), String>);

fn check(name: &'static str, ok: bool, detail: impl FnOnce() -> String) -> Outcome {
    (name, if ok { Ok(()) } else { Err(detail()) })
}

fn case_rng(seed: u64, index: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ (index as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

fn describe<F: Field>(field: &F, p: &Parameterization<F::Elem>, seed: u64) -> String {
    let generators = p.gens().iter().map(|g| g.display(field).to_string()).collect();
    let mode = match field.order() {
        Some(p) => FieldMode::Prime { p },
        None => FieldMode::Rational,
    };
    Instance { field: mode, seed, generators }.render()
}

fn perturb<F: Field>(field: &F, phi: &SyzygyMatrix<F::Elem>) -> SyzygyMatrix<F::Elem> {
    let mut columns = phi.columns().to_vec();
    let dj = phi.col_degrees()[0];
    let bump = BinaryForm::monomial(field, field.one(), dj, 0);
    let e = &columns[0][0];
    columns[0][0] = if e.is_zero() { bump } else { e.add(field, &bump).expect("same degree") };
    SyzygyMatrix::from_columns(phi.n(), columns, phi.col_degrees().to_vec()).expect("same shape")
}

fn hb<F: Field>(field: &F, p: &Parameterization<F::Elem>, fault: Option<Fault>) -> Result<SyzygyMatrix<F::Elem>, String> {
    let phi = hilbert_burch(field, p).map_err(|e| e.to_string())?;
    Ok(if fault == Some(Fault::Phi) { perturb(field, &phi) } else { phi })
}

fn monomial_checks(field: &PrimeField, m: &MonomialParam, full: bool, fault: Option<Fault>, rng: &mut ChaCha8Rng) -> Vec<Outcome> {
    let p = m.to_parameterization(field);
    let mut out = vec![check("oracle phi passes verification", verify_hilbert_burch(field, p.gens(), &m.oracle_phi(field)), String::new)];
    let phi = match hb(field, &p, fault) {
        Ok(phi) => phi,
        Err(e) => return vec![("Hilbert-Burch matrix computed", Err(e))],
    };
    let mut sorted = m.column_degrees();
    sorted.sort_unstable();
    out.push(check("column degrees match the monomial oracle", phi.col_degrees() == sorted, || {
        format!("computed {:?}, oracle {:?}", phi.col_degrees(), sorted)
    }));
    out.push(check("Hilbert-Burch verification", verify_hilbert_burch(field, p.gens(), &phi), String::new));
    let r = match map_degree(field, &p, &phi, DEFAULT_SAMPLES, rng) {
        Ok(md) => md.r + usize::from(fault == Some(Fault::MapDegree)),
        Err(e) => return [out, vec![("map degree certified", Err(e.to_string()))]].concat(),
    };
    out.push(check("monomial map degree = gcd of column degrees", r == m.oracle_degree(), || {
        format!("map degree {r}, oracle {}", m.oracle_degree())
    }));
    if !full {
        return out;
    }
    match analyze(field, &p, DEFAULT_SAMPLES, rng) {
        Ok(a) => {
            out.push(check("analysis consistency", a.consistent(), || format!("{:?}", a.consistency)));
            let closed = a.core.integrally_closed.value;
            out.push(check("core integrally closed iff r = 1 (Newton polygon)", closed == (m.oracle_degree() == 1), || {
                format!("integrally closed {closed}, oracle degree {}", m.oracle_degree())
            }));
            let ok = newton_closure(field, &a.core.core).is_ok_and(|c| {
                a.core.core.gens().iter().all(|g| c.contains(field, g))
                    && newton_closure(field, &c).is_ok_and(|cc| cc.ideal_equals(field, &c))
            });
            out.push(check("Newton closure contains the core and is idempotent", ok, String::new));
        }
        Err(e) => out.push(("analysis consistency", Err(e.to_string()))),
    }
    out
}

fn dense_checks(field: &PrimeField, p: &Parameterization<u64>, fault: Option<Fault>, rng: &mut ChaCha8Rng) -> Vec<Outcome> {
    let phi = match hb(field, p, fault) {
        Ok(phi) => phi,
        Err(e) => return vec![("Hilbert-Burch matrix computed", Err(e))],
    };
    let mut out = vec![check("Hilbert-Burch verification", verify_hilbert_burch(field, p.gens(), &phi), String::new)];
    let a = match analyze(field, p, DEFAULT_SAMPLES, rng) {
        Ok(a) => a,
        Err(e) => return [out, vec![("analysis consistency", Err(e.to_string()))]].concat(),
    };
    let r = a.map.r + usize::from(fault == Some(Fault::MapDegree));
    out.push(check("analysis consistency", a.consistent(), || format!("{:?}", a.consistency)));
    out.push(check("r * e(A) = d", r * a.map.e == p.d(), || format!("r = {r}, e = {}", a.map.e)));
    out.push(check("reparameterization verified", a.reparam.verification.all(), || format!("{:?}", a.reparam.verification)));
    out.push(check("core = m^(2d-1) iff r = 1", a.core.equals_m_power == (r == 1), || format!("r = {r}")));
    let mut degrees = Vec::new();
    for _ in 0..DEFAULT_SAMPLES {
        match fiber_at_random_point(field, p, &phi, rng) {
            Ok((_, f)) => degrees.push(f.fiber_degree),
            Err(e) => return [out, vec![("image points lie on the image", Err(e.to_string()))]].concat(),
        }
    }
    out.push(check("image points lie on the image", degrees.iter().all(|&k| k >= 1), || format!("{degrees:?}")));
    out.push(check("fiber degree >= r at image points", degrees.iter().all(|&k| k >= r), || format!("{degrees:?}, r = {r}")));
    let equal = degrees.iter().filter(|&&k| k == r).count();
    out.push(check("fiber degree = r for at least 6 of 7 samples", equal >= 6, || format!("{degrees:?}, r = {r}")));
    let again = extract_reparam_basis(field, p, &phi, a.map.r, DEFAULT_RETRY_BUDGET, rng);
    let same = again.is_ok_and(|(f1, f2)| {
        let ours = GradedIdeal::new(field, vec![a.reparam.f1.clone(), a.reparam.f2.clone()]).expect("nonzero");
        GradedIdeal::new(field, vec![f1, f2]).expect("nonzero").ideal_equals(field, &ours)
    });
    out.push(check("(f1, f2) independent of the sampled points", same, String::new));
    out
}

fn composed_checks(field: &PrimeField, p: &Parameterization<u64>, cover: usize, fault: Option<Fault>, rng: &mut ChaCha8Rng) -> Vec<Outcome> {
    let mut out = dense_checks(field, p, fault, rng);
    let r = hilbert_burch(field, p)
        .and_then(|phi| map_degree(field, p, &phi, DEFAULT_SAMPLES, rng))
        .map(|md| md.r + usize::from(fault == Some(Fault::MapDegree)));
    out.push(check("map degree is a multiple of the cover degree", r.as_ref().is_ok_and(|r| r % cover == 0), || {
        format!("{r:?}, cover degree {cover}")
    }));
    out
}

pub fn run(config: &Config) -> Summary {
    let field = PrimeField::default();
    let mut cases: Vec<Case> =
        MonomialParam::exhaustive(config.d_max, 8).into_iter().map(|m| Case::Monomial { m, full: true }).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    for _ in 0..config.corpus_size {
        cases.push(Case::Monomial { m: MonomialParam::random(40, 8, &mut rng), full: false });
    }
    cases.extend((0..config.corpus_size).map(|_| Case::Dense));
    cases.extend((0..config.corpus_size.div_ceil(4)).map(|_| Case::Composed));

    let results: Vec<(String, Vec<Outcome>)> = cases
        .par_iter()
        .enumerate()
        .map(|(i, case)| {
            let mut rng = case_rng(config.seed, i);
            let case_seed: u64 = rng.gen();
            let mut rng = ChaCha8Rng::seed_from_u64(case_seed);
            match case {
                Case::Monomial { m, full } => {
                    let p = m.to_parameterization(&field);
                    (describe(&field, &p, case_seed), monomial_checks(&field, m, *full, config.fault, &mut rng))
                }
                Case::Dense => {
                    let p = random_dense(&field, (2, 6), (1, 15), &mut rng);
                    (describe(&field, &p, case_seed), dense_checks(&field, &p, config.fault, &mut rng))
                }
                Case::Composed => {
                    let (p, cover) = random_composed(&field, 3, 5, 6, &mut rng);
                    (describe(&field, &p, case_seed), composed_checks(&field, &p, cover, config.fault, &mut rng))
                }
            }
        })
        .collect();

    let mut checks: Vec<CheckSummary> = Vec::new();
    for (instance, outcomes) in results {
        for (name, outcome) in outcomes {
            let idx = match checks.iter().position(|c| c.name == name) {
                Some(i) => i,
                None => {
                    checks.push(CheckSummary { name, passed: 0, failed: 0, first_counterexample: None });
                    checks.len() - 1
                }
            };
            let entry = &mut checks[idx];
            match outcome {
                Ok(()) => entry.passed += 1,
                Err(detail) => {
                    entry.failed += 1;
                    entry.first_counterexample.get_or_insert_with(|| {
                        if detail.is_empty() {
                            instance.clone()
                        } else {
                            format!("{instance}# {detail}")
                        }
                    });
                }
            }
        }
    }
    Summary { seed: config.seed, field: field.describe(), cases: cases.len(), checks }
}

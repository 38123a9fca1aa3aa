//! Full analysis of a parameterization and the serializable reports.
//!
//! [`analyze`] runs every computation in order (syzygies, map degree,
//! multiplicity, reparameterization, core) and assembles the table of nine
//! equivalent birationality statements. Each row records whether it was
//! computed here or follows from a theorem given the computed rows. The
//! `*Json` types are the stable machine-readable views; polynomials appear
//! as strings in descending powers of `x`.

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fiber::{j_multiplicity, map_degree, FiberReport, MapDegree};
use crate::field::Field;
use crate::form::BinaryForm;
use crate::param::Parameterization;
use crate::reparam::{
    adjoint_of_m_power, core_ideal, extract_reparam_basis, reparameterize_with, CanonicalModule, CoreReport, Flag,
    PhiRoute, Provenance, ReparamResult, ReparamVerification, DEFAULT_RETRY_BUDGET,
};
use crate::syzygy::{hilbert_burch, verify_hilbert_burch, SyzygyMatrix};

const NEW_VARS: (&str, &str) = ("X", "Y");

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct C3Row {
    pub id: u8,
    pub statement: &'static str,
    pub holds: bool,
    pub provenance: Provenance,
    /// Row only implies birationality; when false it decides nothing.
    pub sufficient_only: bool,
}

/// Prime-degree entry test: when every nonzero entry of `phi` has the same
/// prime degree, the map is birational iff the entries need at least three
/// generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Corn4 {
    pub entry_degree: usize,
    pub entry_min_gens: usize,
    pub predicts_birational: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub holds: bool,
}

#[derive(Clone, Debug)]
pub struct Analysis<E> {
    pub param: Parameterization<E>,
    pub phi: SyzygyMatrix<E>,
    pub map: MapDegree,
    pub j: usize,
    pub reparam: ReparamResult<E>,
    pub core: CoreReport<E>,
    pub c3: Vec<C3Row>,
    pub corn4: Option<Corn4>,
    pub consistency: Vec<Check>,
}

impl<E> Analysis<E> {
    pub fn birational(&self) -> bool {
        self.map.r == 1
    }

    pub fn consistent(&self) -> bool {
        self.consistency.iter().all(|c| c.holds)
    }
}

fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|k| k * k <= n).all(|k| n % k != 0)
}

pub fn corn4<F: Field>(field: &F, phi: &SyzygyMatrix<F::Elem>) -> Option<Corn4> {
    let degrees = phi.col_degrees();
    let entry_degree = degrees[0];
    if !is_prime(entry_degree) || degrees.iter().any(|&dj| dj != entry_degree) {
        return None;
    }
    let entry_min_gens = phi.entry_ideal(field).min_gens(field);
    Some(Corn4 { entry_degree, entry_min_gens, predicts_birational: entry_min_gens >= 3 })
}

fn c3_table(map: &MapDegree, d: usize, col_gcd: usize, core_equals_m: bool, closed: Flag) -> Vec<C3Row> {
    let birational = map.r == 1;
    let row = |id, statement, holds, provenance, sufficient_only| C3Row { id, statement, holds, provenance, sufficient_only };
    use Provenance::{Computed, DerivedByTheorem};
    vec![
        row(1, "the map is birational onto its image (r = 1)", birational, Computed, false),
        row(2, "the Rees algebra R(I) satisfies R1", birational, DerivedByTheorem, false),
        row(3, "w_R(I) = w_R(m^d)", birational, DerivedByTheorem, false),
        row(4, "the S2-fication End(w_R(I)) of R(I) is R(m^d)", birational, DerivedByTheorem, false),
        row(5, "e(A) = d", map.e == d, Computed, false),
        row(6, "core(I) = m^(2d-1)", core_equals_m, Computed, false),
        row(7, "core(I) = adj(I^2)", birational, DerivedByTheorem, false),
        row(
            8,
            "core(I) is integrally closed",
            closed.value,
            if closed.provenance == DerivedByTheorem { DerivedByTheorem } else { Computed },
            false,
        ),
        row(9, "gcd of the column degrees of phi is 1", col_gcd == 1, Computed, true),
    ]
}

/// Runs the whole pipeline. Deterministic for a fixed `rng` state.
pub fn analyze<F: Field, R: Rng + ?Sized>(
    field: &F,
    param: &Parameterization<F::Elem>,
    samples: usize,
    rng: &mut R,
) -> Result<Analysis<F::Elem>> {
    let d = param.d();
    let phi = hilbert_burch(field, param)?;
    if !verify_hilbert_burch(field, param.gens(), &phi) {
        return Err(Error::CertificationFailed("Hilbert-Burch matrix failed verification".into()));
    }
    let map = map_degree(field, param, &phi, samples, rng)?;
    let j = j_multiplicity(d, map.r, map.e)?;
    let (f1, f2) = extract_reparam_basis(field, param, &phi, map.r, DEFAULT_RETRY_BUDGET, rng)?;
    let reparam = reparameterize_with(field, param, &phi, map.r, f1, f2, rng)?;
    let core = core_ideal(field, param, map.r, &reparam.f1, &reparam.f2)?;
    let col_gcd = crate::fiber::column_degree_gcd(phi.col_degrees());
    let c3 = c3_table(&map, d, col_gcd, core.equals_m_power, core.integrally_closed);
    let corn4 = corn4(field, &phi);
    let birational = map.r == 1;

    let mut consistency = vec![
        Check { name: "r * eA = d", holds: map.r * map.e == d },
        Check { name: "j = d^2", holds: j == d * d },
        Check { name: "r divides every column degree", holds: phi.col_degrees().iter().all(|dj| dj % map.r == 0) },
        Check {
            name: "every nonzero entry of phi has degree >= r",
            holds: phi.entries().all(|e| e.degree().is_none_or(|k| k >= map.r)),
        },
        Check { name: "reparameterization verified", holds: reparam.verification.all() },
        Check {
            name: "computed rows agree with r = 1",
            holds: c3.iter().filter(|row| !row.sufficient_only).all(|row| row.holds == birational),
        },
        Check { name: "gcd of column degrees = 1 implies r = 1", holds: col_gcd != 1 || birational },
    ];
    if let Some(c) = &corn4 {
        consistency.push(Check { name: "prime-degree entry criterion", holds: c.predicts_birational == birational });
    }
    if birational {
        let adj = adjoint_of_m_power(field, 2 * d)?;
        consistency.push(Check { name: "core = adj(m^(2d))", holds: core.core.ideal_equals(field, &adj) });
    }
    Ok(Analysis { param: param.clone(), phi, map, j, reparam, core, c3, corn4, consistency })
}

fn show<F: Field>(field: &F, h: &BinaryForm<F::Elem>) -> String {
    h.display(field).to_string()
}

fn show_new<F: Field>(field: &F, h: &BinaryForm<F::Elem>) -> String {
    h.display_with(field, NEW_VARS).to_string()
}

/// Rows of `phi` as strings, `n` rows of `n - 1` entries.
fn phi_rows<F: Field>(field: &F, phi: &SyzygyMatrix<F::Elem>, new_vars: bool) -> Vec<Vec<String>> {
    (0..phi.n())
        .map(|i| {
            (0..phi.num_cols())
                .map(|j| if new_vars { show_new(field, phi.entry(i, j)) } else { show(field, phi.entry(i, j)) })
                .collect()
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RunInfo {
    pub field: String,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnalysisJson {
    pub run: RunInfo,
    pub d: usize,
    pub n: usize,
    pub generators: Vec<String>,
    pub r: usize,
    #[serde(rename = "eA")]
    pub e_a: usize,
    pub j: usize,
    pub birational: bool,
    #[serde(rename = "hfA")]
    pub hf_a: Vec<usize>,
    #[serde(rename = "colDegrees")]
    pub col_degrees: Vec<usize>,
    pub phi: Vec<Vec<String>>,
    #[serde(rename = "fiberSamples")]
    pub fiber_samples: Vec<usize>,
    pub c3: Vec<C3Row>,
    pub corn4: Option<Corn4>,
    pub consistency: Vec<Check>,
}

pub fn analysis_json<F: Field>(field: &F, a: &Analysis<F::Elem>, run: RunInfo) -> AnalysisJson {
    AnalysisJson {
        run,
        d: a.param.d(),
        n: a.param.n(),
        generators: a.param.gens().iter().map(|g| show(field, g)).collect(),
        r: a.map.r,
        e_a: a.map.e,
        j: a.j,
        birational: a.birational(),
        hf_a: a.map.hf_a.values.clone(),
        col_degrees: a.phi.col_degrees().to_vec(),
        phi: phi_rows(field, &a.phi, false),
        fiber_samples: a.map.samples.clone(),
        c3: a.c3.clone(),
        corn4: a.corn4.clone(),
        consistency: a.consistency.clone(),
    }
}

pub const OFF_IMAGE_NOTE: &str =
    "no base-field preimage: the fiber test decides membership for points over the base field; \
     points of the curve over an extension field are not distinguished";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberJson {
    pub run: RunInfo,
    pub point: Vec<String>,
    #[serde(rename = "onImage")]
    pub on_image: bool,
    #[serde(rename = "fiberForm")]
    pub fiber_form: Option<String>,
    #[serde(rename = "fiberDegree")]
    pub fiber_degree: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

pub fn fiber_json<F: Field>(field: &F, f: &FiberReport<F::Elem>, run: RunInfo) -> FiberJson {
    FiberJson {
        run,
        point: f.point.coords().iter().map(|c| field.format(c)).collect(),
        on_image: f.on_image,
        fiber_form: f.on_image.then(|| show(field, &f.fiber_form.associate(field))),
        fiber_degree: f.fiber_degree,
        note: (!f.on_image).then(|| OFF_IMAGE_NOTE.to_string()),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ReparamJson {
    pub run: RunInfo,
    pub r: usize,
    pub f1: String,
    pub f2: String,
    pub new_gens: Vec<String>,
    pub rewritten_phi: Vec<Vec<String>>,
    pub new_col_degrees: Vec<usize>,
    pub route: PhiRoute,
    pub verification: ReparamVerification,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub notice: Option<String>,
}

pub fn reparam_json<F: Field>(field: &F, res: &ReparamResult<F::Elem>, run: RunInfo) -> ReparamJson {
    ReparamJson {
        run,
        r: res.r,
        f1: show(field, &res.f1),
        f2: show(field, &res.f2),
        new_gens: res.new_param.gens().iter().map(|g| show_new(field, g)).collect(),
        rewritten_phi: phi_rows(field, &res.rewritten_phi, true),
        new_col_degrees: res.rewritten_phi.col_degrees().to_vec(),
        route: res.route,
        verification: res.verification,
        notice: (res.r == 1)
            .then(|| "map is birational: the reparameterization is a linear change of coordinates".to_string()),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CoreJson {
    pub run: RunInfo,
    pub r: usize,
    pub e: usize,
    pub core_degree: usize,
    pub core_gens: Vec<String>,
    pub equals_m_power: bool,
    pub integrally_closed: Flag,
    pub canonical: String,
    pub canonical_shape: CanonicalModule,
    pub graded_core_equals_core: Flag,
}

pub fn core_json<F: Field>(
    field: &F,
    core: &CoreReport<F::Elem>,
    f1: &BinaryForm<F::Elem>,
    f2: &BinaryForm<F::Elem>,
    run: RunInfo,
) -> CoreJson {
    CoreJson {
        run,
        r: core.r,
        e: core.e,
        core_degree: 2 * core.r * core.e - core.r,
        core_gens: core.core_gens.iter().map(|g| show(field, g)).collect(),
        equals_m_power: core.equals_m_power,
        integrally_closed: core.integrally_closed,
        canonical: core.canonical.describe(field, f1, f2),
        canonical_shape: core.canonical,
        graded_core_equals_core: Flag { value: true, provenance: Provenance::DerivedByTheorem },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, RationalField};
    use crate::form::ProjPointN;
    use crate::fiber::fiber;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn run() -> RunInfo {
        RunInfo { field: "rational".into(), seed: 0, timestamp: None }
    }

    #[test]
    fn analysis_examples() {
        let q = RationalField;
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let p = Parameterization::parse(&q, &["x^3", "x^2*y", "y^3"]).unwrap();
        let a = analyze(&q, &p, 7, &mut rng).unwrap();
        assert!(a.consistent(), "{:?}", a.consistency);
        let js = analysis_json(&q, &a, run());
        assert_eq!((js.r, js.e_a, js.j, js.birational), (1, 3, 9, true));
        assert!(a.c3.iter().filter(|r| r.provenance == Provenance::Computed).all(|r| r.holds));
        assert!(a.c3[8].holds);

        let p = Parameterization::parse(&q, &["x^4", "x^2*y^2", "y^4"]).unwrap();
        let a = analyze(&q, &p, 7, &mut rng).unwrap();
        assert!(a.consistent());
        let js = analysis_json(&q, &a, run());
        assert_eq!((js.r, js.e_a, js.j, js.birational), (2, 2, 16, false));
        assert_eq!(js.col_degrees, vec![2, 2]);
        for id in [1, 5, 6, 9] {
            assert!(!a.c3[id - 1].holds, "row {id}");
            assert_eq!(a.c3[id - 1].provenance, Provenance::Computed);
        }
        assert_eq!(a.corn4, Some(Corn4 { entry_degree: 2, entry_min_gens: 2, predicts_birational: false }));
        assert!(js.phi.iter().all(|row| row.len() == 2));
    }

    #[test]
    fn json_field_names_are_stable() {
        let q = RationalField;
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let p = Parameterization::parse(&q, &["x", "y"]).unwrap();
        let a = analyze(&q, &p, 7, &mut rng).unwrap();
        let v = serde_json_value(&analysis_json(&q, &a, run()));
        for key in ["r", "eA", "j", "birational", "colDegrees", "c3", "hfA"] {
            assert!(v.contains(&format!("\"{key}\"")), "{key}");
        }
        assert!(!v.contains("timestamp"));
        let f = fiber(&q, &a.phi, &ProjPointN::new(&q, vec![q.from_i64(2), q.from_i64(3)]).unwrap()).unwrap();
        let fj = fiber_json(&q, &f, run());
        assert_eq!(fj.fiber_form.as_deref(), Some("3*x - 2*y"));
        let v = serde_json_value(&fj);
        assert!(v.contains("\"fiberDegree\"") && v.contains("\"fiberForm\"") && v.contains("\"onImage\""));
    }

    #[test]
    fn off_image_fiber_has_note() {
        let q = RationalField;
        let p = Parameterization::parse(&q, &["x^4", "x^2*y^2", "y^4"]).unwrap();
        let phi = hilbert_burch(&q, &p).unwrap();
        let pt = ProjPointN::new(&q, vec![q.from_i64(0), q.from_i64(1), q.from_i64(0)]).unwrap();
        let fj = fiber_json(&q, &fiber(&q, &phi, &pt).unwrap(), run());
        assert!(!fj.on_image && fj.fiber_form.is_none() && fj.note.is_some());
        let pt = ProjPointN::new(&q, vec![q.from_i64(1), q.from_i64(1), q.from_i64(1)]).unwrap();
        let fj = fiber_json(&q, &fiber(&q, &phi, &pt).unwrap(), run());
        assert_eq!(fj.fiber_form.as_deref(), Some("x^2 - y^2"));
    }

    #[test]
    fn reparam_and_core_views_use_new_variables() {
        let q = RationalField;
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let p = Parameterization::parse(&q, &["x^6", "x^3*y^3", "y^6"]).unwrap();
        let a = analyze(&q, &p, 7, &mut rng).unwrap();
        let rj = reparam_json(&q, &a.reparam, run());
        assert_eq!(rj.r, 3);
        assert!(rj.new_gens.iter().all(|g| g.contains('X') || g.contains('Y')));
        assert!(rj.new_gens.iter().all(|g| !g.contains('x') && !g.contains('y')));
        let cj = core_json(&q, &a.core, &a.reparam.f1, &a.reparam.f2, run());
        assert_eq!(cj.core_degree, 9);
        assert_eq!(cj.core_gens.len(), 4);
        assert!(!cj.equals_m_power);
    }

    #[test]
    fn corn4_only_for_equal_prime_degrees() {
        let f = PrimeField::default();
        let phi = |gens: &[&str]| hilbert_burch(&f, &Parameterization::parse(&f, gens).unwrap()).unwrap();
        assert!(corn4(&f, &phi(&["x^3", "x^2*y", "y^3"])).is_none());
        assert!(corn4(&f, &phi(&["x^8", "x^4*y^4", "y^8"])).is_none());
        let c = corn4(&f, &phi(&["x^6", "x^3*y^3", "y^6"])).unwrap();
        assert_eq!((c.entry_degree, c.predicts_birational), (3, false));
        // generic quartic with three generators: two quadratic syzygies
        let c = corn4(&f, &phi(&["x^4 + y^4", "x^3*y + 2*x*y^3", "x^2*y^2 - x*y^3"])).unwrap();
        assert_eq!((c.entry_degree, c.predicts_birational), (2, true));
    }

    fn serde_json_value<T: Serialize>(v: &T) -> String {
        serde_json::to_string(v).unwrap()
    }
}

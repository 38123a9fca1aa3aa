//! Reparameterization through the subring `k[f1, f2]` and the closed form
//! of the core.
//!
//! When the map has degree `r`, every generator lies in `k[f1, f2]` for two
//! coprime forms of degree `r`, recovered as the fiber forms of two general
//! image points. Rewriting the generators in new variables `X = f1`,
//! `Y = f2` gives a birational map of degree `d / r`, and the core of `I`
//! is `(f1, f2)^(2d/r - 1)`.

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fiber::{fiber_at_random_point, map_degree, DEFAULT_SAMPLES};
use crate::field::Field;
use crate::form::{gcd_forms, li_dim, BinaryForm};
use crate::ideal::GradedIdeal;
use crate::matrix::Matrix;
use crate::monomial::is_integrally_closed;
use crate::param::Parameterization;
use crate::syzygy::{hilbert_burch, verify_hilbert_burch, SyzygyMatrix};

pub const DEFAULT_RETRY_BUDGET: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PhiRoute {
    /// Entries of the original matrix rewritten in the new variables.
    Substitution,
    /// Some entry was outside `k[f1, f2]`; the matrix was recomputed from the
    /// new generators.
    Recomputed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ReparamVerification {
    pub regular_sequence: bool,
    pub extension: bool,
    pub new_degree_one: bool,
}

impl ReparamVerification {
    pub fn all(&self) -> bool {
        self.regular_sequence && self.extension && self.new_degree_one
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReparamResult<E> {
    pub r: usize,
    pub f1: BinaryForm<E>,
    pub f2: BinaryForm<E>,
    /// Generators of degree `d / r` in the new variables.
    pub new_param: Parameterization<E>,
    pub rewritten_phi: SyzygyMatrix<E>,
    pub route: PhiRoute,
    pub verification: ReparamVerification,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Computed,
    ComputedMonomial,
    DerivedByTheorem,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Flag {
    pub value: bool,
    pub provenance: Provenance,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoreReport<E> {
    pub r: usize,
    pub e: usize,
    pub core: GradedIdeal<E>,
    /// Basis of the core in its generating degree `2d - r`, reduced.
    pub core_gens: Vec<BinaryForm<E>>,
    pub equals_m_power: bool,
    pub integrally_closed: Flag,
    pub canonical: CanonicalModule,
}

/// Two monic, coprime, independent fiber forms of degree `r`, ordered by
/// coefficient vector. Each attempt samples two fresh parameter points.
pub fn extract_reparam_basis<F: Field, R: Rng + ?Sized>(
    field: &F,
    param: &Parameterization<F::Elem>,
    phi: &SyzygyMatrix<F::Elem>,
    r: usize,
    budget: usize,
    rng: &mut R,
) -> Result<(BinaryForm<F::Elem>, BinaryForm<F::Elem>)> {
    for _ in 0..budget {
        let (_, a) = fiber_at_random_point(field, param, phi, rng)?;
        let (_, b) = fiber_at_random_point(field, param, phi, rng)?;
        if a.fiber_degree != r || b.fiber_degree != r {
            continue;
        }
        let (f1, f2) = (a.fiber_form.monic(field), b.fiber_form.monic(field));
        let pair = [f1, f2];
        if li_dim(field, &pair, r)? == 2 && gcd_forms(field, &pair)?.is_constant() {
            let [f1, f2] = pair;
            return Ok(if f1 <= f2 { (f1, f2) } else { (f2, f1) });
        }
    }
    Err(Error::ResamplingExhausted { attempts: budget })
}

/// The `(m*r + 1) x (m + 1)` matrix whose columns are `f1^(m-i) f2^i`.
fn subring_matrix<F: Field>(field: &F, f1: &BinaryForm<F::Elem>, f2: &BinaryForm<F::Elem>, m: usize) -> Matrix<F::Elem> {
    let r = f1.degree().expect("nonzero");
    let columns = (0..=m)
        .map(|i| f1.pow(field, m - i).mul(field, &f2.pow(field, i)).coeff_vector(field, m * r))
        .collect();
    Matrix::from_columns(columns, m * r + 1).expect("uniform columns")
}

/// Writes `h` as `H(f1, f2)` for a form `H` of degree `deg h / r` in new
/// variables, where `H`'s coefficient `i` belongs to `X^(m-i) Y^i`. The zero
/// form maps to the zero form.
pub fn express_in_subring<F: Field>(
    field: &F,
    h: &BinaryForm<F::Elem>,
    f1: &BinaryForm<F::Elem>,
    f2: &BinaryForm<F::Elem>,
) -> Result<BinaryForm<F::Elem>> {
    let Some(degree) = h.degree() else {
        return Ok(BinaryForm::zero());
    };
    let r = f1.degree().expect("nonzero");
    if degree % r != 0 {
        return Err(Error::DegreeNotMultiple { degree, r });
    }
    let m = degree / r;
    let system = subring_matrix(field, f1, f2, m);
    match system.solve(field, h.coeffs())? {
        Some(c) => Ok(BinaryForm::from_coeffs(field, c)),
        None => Err(Error::NotInSubring { degree, r }),
    }
}

/// `H(f1, f2)`.
pub fn substitute<F: Field>(
    field: &F,
    big_h: &BinaryForm<F::Elem>,
    f1: &BinaryForm<F::Elem>,
    f2: &BinaryForm<F::Elem>,
) -> BinaryForm<F::Elem> {
    let Some(m) = big_h.degree() else {
        return BinaryForm::zero();
    };
    let r = f1.degree().expect("nonzero");
    let v = subring_matrix(field, f1, f2, m).mul_vec(field, big_h.coeffs()).expect("matching width");
    debug_assert_eq!(v.len(), m * r + 1);
    BinaryForm::from_coeffs(field, v)
}

fn rewrite_phi<F: Field>(
    field: &F,
    phi: &SyzygyMatrix<F::Elem>,
    f1: &BinaryForm<F::Elem>,
    f2: &BinaryForm<F::Elem>,
    r: usize,
) -> Result<SyzygyMatrix<F::Elem>> {
    let mut columns = Vec::with_capacity(phi.num_cols());
    for col in phi.columns() {
        columns.push(col.iter().map(|e| express_in_subring(field, e, f1, f2)).collect::<Result<Vec<_>>>()?);
    }
    let degrees = phi.col_degrees().iter().map(|dj| dj / r).collect();
    SyzygyMatrix::from_columns(phi.n(), columns, degrees)
}

pub fn reparameterize<F: Field, R: Rng + ?Sized>(
    field: &F,
    param: &Parameterization<F::Elem>,
    phi: &SyzygyMatrix<F::Elem>,
    rng: &mut R,
) -> Result<ReparamResult<F::Elem>> {
    let r = map_degree(field, param, phi, DEFAULT_SAMPLES, rng)?.r;
    let (f1, f2) = extract_reparam_basis(field, param, phi, r, DEFAULT_RETRY_BUDGET, rng)?;
    reparameterize_with(field, param, phi, r, f1, f2, rng)
}

/// Reparameterization for a known map degree and subring generators.
pub fn reparameterize_with<F: Field, R: Rng + ?Sized>(
    field: &F,
    param: &Parameterization<F::Elem>,
    phi: &SyzygyMatrix<F::Elem>,
    r: usize,
    f1: BinaryForm<F::Elem>,
    f2: BinaryForm<F::Elem>,
    rng: &mut R,
) -> Result<ReparamResult<F::Elem>> {
    let new_gens = param
        .gens()
        .iter()
        .map(|g| express_in_subring(field, g, &f1, &f2))
        .collect::<Result<Vec<_>>>()
        .map_err(|e| Error::CertificationFailed(format!("generator outside k[f1, f2]: {e}")))?;
    let new_param = Parameterization::new(field, new_gens)?;
    let (rewritten_phi, route) = match rewrite_phi(field, phi, &f1, &f2, r) {
        Ok(m) if verify_hilbert_burch(field, new_param.gens(), &m) => (m, PhiRoute::Substitution),
        Ok(_) | Err(Error::NotInSubring { .. } | Error::DegreeNotMultiple { .. }) => {
            (hilbert_burch(field, &new_param)?, PhiRoute::Recomputed)
        }
        Err(e) => return Err(e),
    };
    let regular_sequence = gcd_forms(field, &[f1.clone(), f2.clone()])?.is_constant();
    let pulled_back: Vec<_> = new_param.gens().iter().map(|h| substitute(field, h, &f1, &f2)).collect();
    let extension = GradedIdeal::new(field, pulled_back)?.ideal_equals(field, &param.ideal(field));
    let new_degree_one = map_degree(field, &new_param, &rewritten_phi, DEFAULT_SAMPLES, rng)?.r == 1;
    Ok(ReparamResult {
        r,
        f1,
        f2,
        new_param,
        rewritten_phi,
        route,
        verification: ReparamVerification { regular_sequence, extension, new_degree_one },
    })
}

/// `core(I) = (f1, f2)^(2d/r - 1)`, compared against `m^(2d-1)`.
pub fn core_ideal<F: Field>(
    field: &F,
    param: &Parameterization<F::Elem>,
    r: usize,
    f1: &BinaryForm<F::Elem>,
    f2: &BinaryForm<F::Elem>,
) -> Result<CoreReport<F::Elem>> {
    let d = param.d();
    let e = d / r;
    let core = GradedIdeal::new(field, vec![f1.clone(), f2.clone()])?.power(field, 2 * e - 1);
    let core_gens = core.reduced_slice(field, 2 * d - r);
    let core = GradedIdeal::new(field, core_gens.clone())?;
    let equals_m_power = core.ideal_equals(field, &GradedIdeal::maximal_power(field, 2 * d - 1));
    if d == 1 && !equals_m_power {
        return Err(Error::InternalInvariantViolation("a linear map must have core (x, y)".into()));
    }
    let integrally_closed = if core.is_monomial(field) {
        Flag { value: is_integrally_closed(field, &core)?, provenance: Provenance::ComputedMonomial }
    } else {
        Flag { value: r == 1, provenance: Provenance::DerivedByTheorem }
    };
    let canonical = CanonicalModule::from_core_formula(e);
    if canonical != CanonicalModule::from_maximal_power_formula(e) {
        return Err(Error::InternalInvariantViolation(format!(
            "canonical module formulas disagree for d/r = {e}"
        )));
    }
    Ok(CoreReport { r, e, core, core_gens, equals_m_power, integrally_closed, canonical })
}

/// `adj(m^t) = m^(t-1)`, with `m^0` the unit ideal.
pub fn adjoint_of_m_power<F: Field>(field: &F, t: usize) -> Result<GradedIdeal<F::Elem>> {
    match t {
        0 => Err(Error::InvalidParameterization("adjoint of m^t needs t >= 1".into())),
        1 => Ok(GradedIdeal::unit(field)),
        t => Ok(GradedIdeal::maximal_power(field, t - 1)),
    }
}

/// Generator-level shape of the canonical module of the Rees algebra,
/// `f1^2 t (f1,f2)^ideal_power R((f1,f2)^rees_power)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CanonicalModule {
    pub ideal_power: usize,
    pub rees_power: usize,
}

impl CanonicalModule {
    /// Pulled back from the birational case: `(f1,f2)^(e-1)` over the Rees
    /// algebra of `(f1,f2)^e`, `e = d/r`.
    pub fn from_core_formula(e: usize) -> Self {
        Self { ideal_power: e - 1, rees_power: e }
    }

    /// The two-variable instance of the closed form for `R(m^e)` written
    /// with `1 = q e + rem`: `m^(e-1)` when `e >= 2`, and
    /// `((1,t)^(q-1), m^(e-rem) t^q)` otherwise, which for `e = 1` is the
    /// unit ideal.
    pub fn from_maximal_power_formula(e: usize) -> Self {
        if e >= 2 {
            return Self { ideal_power: e - 1, rees_power: e };
        }
        let (q, rem) = (1 / e, 1 % e);
        // (1,t)^(q-1) with q = 1 is the unit ideal, absorbing m^(e-rem) t^q
        debug_assert_eq!((q, rem), (1, 0));
        Self { ideal_power: 0, rees_power: e }
    }

    pub fn describe<F: Field>(&self, field: &F, f1: &BinaryForm<F::Elem>, f2: &BinaryForm<F::Elem>) -> String {
        let (a, b) = (f1.display(field).to_string(), f2.display(field).to_string());
        let pair = format!("({a}, {b})");
        let power = |k: usize| match k {
            1 => pair.clone(),
            k => format!("{pair}^{k}"),
        };
        let middle = match self.ideal_power {
            0 => String::new(),
            k => format!(" {}", power(k)),
        };
        format!("({a})^2 t{middle} R({})", power(self.rees_power))
    }
}

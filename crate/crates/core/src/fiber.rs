//! Fibers of the map, its degree onto the image, the multiplicity of the
//! image coordinate ring and the j-multiplicity.
//!
//! The fiber over a point `p` of projective `(n-1)`-space is cut out by the
//! generalized row ideal `I_1(p * phi)`; after saturation it is principal,
//! generated by the gcd of the entries. The map degree is that gcd's degree
//! at a general image point, certified by two deterministic identities:
//! it divides every column degree of `phi`, and times `e(A)` it equals `d`.

use num_integer::Integer;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::form::{gcd_forms, BinaryForm, ProjPoint1, ProjPointN};
use crate::ideal::{GradedIdeal, HilbertTable};
use crate::matrix::EchelonSpace;
use crate::param::Parameterization;
use crate::syzygy::SyzygyMatrix;

pub const DEFAULT_SAMPLES: usize = 7;

/// Number of equal consecutive first differences that count as a stable slope.
const SLOPE_RUN: usize = 3;

/// Resampling budget when a sampled point makes `p * phi` vanish.
const ZERO_ROW_RETRIES: usize = 32;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberReport<E> {
    pub point: ProjPointN<E>,
    pub on_image: bool,
    /// Monic gcd of the row ideal; constant when the point is off the image.
    pub fiber_form: BinaryForm<E>,
    pub fiber_degree: usize,
}

/// Map degree with the evidence behind it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MapDegree {
    pub r: usize,
    pub e: usize,
    pub samples: Vec<usize>,
    pub hf_a: HilbertTable,
}

/// `I_1(p * phi)`: the ideal of the entries of the row vector `p * phi`.
pub fn row_ideal<F: Field>(
    field: &F,
    phi: &SyzygyMatrix<F::Elem>,
    p: &ProjPointN<F::Elem>,
) -> Result<GradedIdeal<F::Elem>> {
    if p.len() != phi.n() {
        return Err(Error::DimensionMismatch(format!(
            "point has {} coordinates, the map has {}",
            p.len(),
            phi.n()
        )));
    }
    match GradedIdeal::new(field, phi.row_times(field, p.coords())) {
        Err(Error::ZeroIdeal) => Err(Error::ZeroRow { point: p.display(field).to_string() }),
        other => other,
    }
}

pub fn fiber<F: Field>(
    field: &F,
    phi: &SyzygyMatrix<F::Elem>,
    p: &ProjPointN<F::Elem>,
) -> Result<FiberReport<F::Elem>> {
    let ideal = row_ideal(field, phi, p)?;
    let form = gcd_forms(field, ideal.gens())?;
    let degree = form.degree().expect("gcd of nonzero forms");
    Ok(FiberReport { point: p.clone(), on_image: degree >= 1, fiber_form: form, fiber_degree: degree })
}

/// Fiber over the image of a random parameter point, resampling the rare
/// points where `p * phi` vanishes.
pub fn fiber_at_random_point<F: Field, R: Rng + ?Sized>(
    field: &F,
    param: &Parameterization<F::Elem>,
    phi: &SyzygyMatrix<F::Elem>,
    rng: &mut R,
) -> Result<(ProjPoint1<F::Elem>, FiberReport<F::Elem>)> {
    for _ in 0..ZERO_ROW_RETRIES {
        let q = ProjPoint1::random(field, rng);
        match fiber(field, phi, &param.apply(field, &q)) {
            Err(Error::ZeroRow { .. }) => continue,
            other => return other.map(|f| (q, f)),
        }
    }
    Err(Error::ResamplingExhausted { attempts: ZERO_ROW_RETRIES })
}

/// Fiber degrees over the images of `samples` random parameter points.
pub fn sample_fiber_degrees<F: Field, R: Rng + ?Sized>(
    field: &F,
    param: &Parameterization<F::Elem>,
    phi: &SyzygyMatrix<F::Elem>,
    samples: usize,
    rng: &mut R,
) -> Result<Vec<usize>> {
    (0..samples.max(1))
        .map(|_| fiber_at_random_point(field, param, phi, rng).map(|(_, f)| f.fiber_degree))
        .collect()
}

/// Degree of the map onto its image: the least sampled fiber degree,
/// accepted only if it divides every column degree and `r * e(A) = d`.
pub fn map_degree<F: Field, R: Rng + ?Sized>(
    field: &F,
    param: &Parameterization<F::Elem>,
    phi: &SyzygyMatrix<F::Elem>,
    samples: usize,
    rng: &mut R,
) -> Result<MapDegree> {
    let degrees = sample_fiber_degrees(field, param, phi, samples, rng)?;
    let r = *degrees.iter().min().expect("at least one sample");
    if r == 0 {
        return Err(Error::CertificationFailed(
            "a sampled image point has a constant fiber form".into(),
        ));
    }
    if let Some(dj) = phi.col_degrees().iter().find(|&&dj| dj % r != 0) {
        return Err(Error::CertificationFailed(format!(
            "sampled map degree {r} does not divide column degree {dj}"
        )));
    }
    let (e, hf_a) = multiplicity_a(field, param)?;
    if r * e != param.d() {
        return Err(Error::CertificationFailed(format!(
            "sampled map degree {r} times e(A) = {e} is not d = {}",
            param.d()
        )));
    }
    Ok(MapDegree { r, e, samples: degrees, hf_a })
}

/// `e(A)` for `A = k[I_d]`, the eventual slope of `n -> dim A_n`, together
/// with the Hilbert function values computed on the way.
///
/// `A_n` is built as `g_1 * A_(n-1)` plus the products of the other
/// generators with a complement `C_(n-1)` of `g_1 * A_(n-2)` in `A_(n-1)`.
/// Multiplying an echelon basis by `g_1` shifts every leading index by the
/// same amount, so those rows enter without reduction.
///
/// The slope is the first difference repeated over three consecutive steps,
/// ignoring runs steeper than `d`.
pub fn multiplicity_a<F: Field>(field: &F, param: &Parameterization<F::Elem>) -> Result<(usize, HilbertTable)> {
    let d = param.d();
    let cap = 2 * d + 4;
    let (g1, others) = param.gens().split_first().expect("n >= 2");
    let mut values = vec![1usize];
    let mut prev: Vec<Vec<F::Elem>> = vec![vec![field.one()]];
    let mut complement = prev.clone();
    for n in 1..=cap {
        let deg_prev = (n - 1) * d;
        let mut space = EchelonSpace::new(n * d + 1);
        for row in &prev {
            let shifted = BinaryForm::from_coeffs(field, row.clone()).mul(field, g1);
            let placed = space.insert_echelon_row(field, shifted.coeff_vector(field, n * d));
            debug_assert!(placed, "g_1 multiples keep distinct leading indices");
        }
        let mut fresh = Vec::new();
        for c in &complement {
            let c = BinaryForm::from_coeffs(field, c.clone());
            debug_assert!(c.degree() == Some(deg_prev) || c.is_zero());
            for g in others {
                if let Some(row) = space.insert(field, c.mul(field, g).coeff_vector(field, n * d)) {
                    fresh.push(row.to_vec());
                }
            }
        }
        values.push(space.dim());
        prev = space.into_rows();
        complement = fresh;
        if n >= SLOPE_RUN {
            let diffs: Vec<usize> = values[n - SLOPE_RUN..=n].windows(2).map(|w| w[1] - w[0]).collect();
            // dim A_n <= n*d + 1 caps the eventual slope at d; larger runs are
            // transient catch-up while gaps fill in
            if diffs[0] <= d && diffs.iter().all(|&x| x == diffs[0]) {
                return Ok((diffs[0], HilbertTable { values }));
            }
        }
    }
    Err(Error::SlopeNotStabilized { cap })
}

/// `j(I) = d * r * e(A)`; for an ideal primary to `(x,y)` this is `d^2`,
/// which is checked.
pub fn j_multiplicity(d: usize, r: usize, e: usize) -> Result<usize> {
    let j = d * r * e;
    if j != d * d {
        return Err(Error::InternalInvariantViolation(format!(
            "j-multiplicity {d}*{r}*{e} = {j} differs from d^2 = {}",
            d * d
        )));
    }
    Ok(j)
}

/// `gcd(D_j)`. The map degree divides it, so a value of one forces
/// birationality; a larger value decides nothing.
pub fn column_degree_gcd(col_degrees: &[usize]) -> usize {
    col_degrees.iter().fold(0, |g, &dj| g.gcd(&dj))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, RationalField};
    use crate::monomial::MonomialParam;
    use crate::syzygy::hilbert_burch;
    use num_rational::BigRational;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn qparam(gens: &[&str]) -> (Parameterization<BigRational>, SyzygyMatrix<BigRational>) {
        let q = RationalField;
        let p = Parameterization::parse(&q, gens).unwrap();
        let phi = hilbert_burch(&q, &p).unwrap();
        (p, phi)
    }

    fn qpoint(v: &[i64]) -> ProjPointN<BigRational> {
        let q = RationalField;
        ProjPointN::new(&q, v.iter().map(|&c| q.from_i64(c)).collect()).unwrap()
    }

    fn qf(s: &str) -> BinaryForm<BigRational> {
        crate::parse::parse_form(&RationalField, s).unwrap()
    }

    /// `A_n` spanned directly by all n-fold products of generators.
    fn hf_a_brute<F: Field>(field: &F, gens: &[BinaryForm<F::Elem>], n: usize) -> usize {
        let mut level = vec![BinaryForm::one(field)];
        for _ in 0..n {
            let mut space = EchelonSpace::new(level[0].degree().unwrap() + gens[0].degree().unwrap() + 1);
            for b in &level {
                for g in gens {
                    space.insert(field, b.mul(field, g).coeffs().to_vec());
                }
            }
            level = space.into_rows().into_iter().map(|r| BinaryForm::from_coeffs(field, r)).collect();
        }
        level.len()
    }

    #[test]
    fn row_ideal_examples() {
        let q = RationalField;
        let (_, phi) = qparam(&["x", "y"]);
        let ideal = row_ideal(&q, &phi, &qpoint(&[2, 3])).unwrap();
        assert!(ideal.ideal_equals(&q, &GradedIdeal::new(&q, vec![qf("3*x - 2*y")]).unwrap()));

        let (_, phi) = qparam(&["x^4", "x^2*y^2", "y^4"]);
        let ideal = row_ideal(&q, &phi, &qpoint(&[1, 1, 1])).unwrap();
        assert!(ideal.ideal_equals(&q, &GradedIdeal::new(&q, vec![qf("y^2 - x^2")]).unwrap()));
        let ideal = row_ideal(&q, &phi, &qpoint(&[1, 0, 0])).unwrap();
        assert!(ideal.ideal_equals(&q, &GradedIdeal::new(&q, vec![qf("y^2")]).unwrap()));
        assert!(matches!(row_ideal(&q, &phi, &qpoint(&[1, 0])), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn zero_row_is_reported() {
        let q = RationalField;
        // a left-kernel vector of a Hilbert-Burch matrix would be a constant
        // multiple of the generators, so only a malformed matrix can vanish
        let phi = SyzygyMatrix::from_columns(2, vec![vec![qf("x"), qf("x")]], vec![1]).unwrap();
        assert!(matches!(row_ideal(&q, &phi, &qpoint(&[1, -1])), Err(Error::ZeroRow { .. })));
        assert!(row_ideal(&q, &phi, &qpoint(&[1, 1])).is_ok());
    }

    #[test]
    fn fiber_examples() {
        let q = RationalField;
        let (_, phi) = qparam(&["x^4", "x^2*y^2", "y^4"]);
        let f = fiber(&q, &phi, &qpoint(&[1, 1, 1])).unwrap();
        assert!(f.on_image);
        assert_eq!(f.fiber_degree, 2);
        assert_eq!(f.fiber_form, qf("x^2 - y^2"));
        let f = fiber(&q, &phi, &qpoint(&[0, 1, 0])).unwrap();
        assert!(!f.on_image);
        assert_eq!(f.fiber_degree, 0);

        let (_, phi) = qparam(&["x", "y"]);
        let f = fiber(&q, &phi, &qpoint(&[2, 3])).unwrap();
        assert_eq!(f.fiber_degree, 1);
        assert_eq!(f.fiber_form, qf("3*x - 2*y").monic(&q));
    }

    #[test]
    fn map_degree_examples() {
        let q = RationalField;
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for (gens, r, e) in [
            (&["x", "y"][..], 1, 1),
            (&["x^4", "x^2*y^2", "y^4"][..], 2, 2),
            (&["x^3", "x^2*y", "y^3"][..], 1, 3),
            (&["x^6", "x^3*y^3", "y^6"][..], 3, 2),
        ] {
            let (p, phi) = qparam(gens);
            let md = map_degree(&q, &p, &phi, DEFAULT_SAMPLES, &mut rng).unwrap();
            assert_eq!((md.r, md.e), (r, e), "{gens:?}");
            assert_eq!(md.samples.len(), DEFAULT_SAMPLES);
            assert_eq!(j_multiplicity(p.d(), md.r, md.e).unwrap(), p.d() * p.d());
        }
    }

    #[test]
    fn multiplicity_examples() {
        let q = RationalField;
        let (p, _) = qparam(&["x", "y"]);
        let (e, hf) = multiplicity_a(&q, &p).unwrap();
        assert_eq!(e, 1);
        assert_eq!(&hf.values[..4], &[1, 2, 3, 4]);
        let (p, _) = qparam(&["x^4", "x^2*y^2", "y^4"]);
        let (e, hf) = multiplicity_a(&q, &p).unwrap();
        assert_eq!(e, 2);
        assert!(hf.values.iter().enumerate().all(|(n, &v)| v == 2 * n + 1));
        let (p, _) = qparam(&["x^3", "x^2*y", "y^3"]);
        assert_eq!(multiplicity_a(&q, &p).unwrap().0, 3);
    }

    #[test]
    fn j_multiplicity_checks_invariant() {
        assert_eq!(j_multiplicity(4, 2, 2).unwrap(), 16);
        assert_eq!(j_multiplicity(3, 1, 3).unwrap(), 9);
        assert!(matches!(j_multiplicity(4, 2, 3), Err(Error::InternalInvariantViolation(_))));
    }

    #[test]
    fn certification_rejects_wrong_phi() {
        let q = RationalField;
        let (p, _) = qparam(&["x^4", "x^2*y^2", "y^4"]);
        // syzygies of (x^2, xy, y^2)-like shape: degree-1 fibers, so r * e(A) = 2 != 4
        let wrong = SyzygyMatrix::from_columns(
            3,
            vec![
                vec![qf("y"), qf("-x"), qf("0")],
                vec![qf("0"), qf("y^3"), qf("-x^3")],
            ],
            vec![1, 3],
        )
        .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        assert!(matches!(map_degree(&q, &p, &wrong, 7, &mut rng), Err(Error::CertificationFailed(_))));
    }

    #[test]
    fn monomial_map_degree_matches_oracle() {
        let f = PrimeField::default();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for m in MonomialParam::exhaustive(8, 8) {
            let p = m.to_parameterization(&f);
            let phi = hilbert_burch(&f, &p).unwrap();
            assert_eq!(map_degree(&f, &p, &phi, DEFAULT_SAMPLES, &mut rng).unwrap().r, m.oracle_degree(), "{m:?}");
        }
    }

    #[test]
    fn image_points_are_on_image() {
        let f = PrimeField::default();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let p = Parameterization::parse(&f, &["x^4 + 3*x*y^3", "x^2*y^2 - y^4", "x^3*y"]).unwrap();
        let phi = hilbert_burch(&f, &p).unwrap();
        let r = map_degree(&f, &p, &phi, 7, &mut rng).unwrap().r;
        for _ in 0..20 {
            let (_, fr) = fiber_at_random_point(&f, &p, &phi, &mut rng).unwrap();
            assert!(fr.on_image && fr.fiber_degree >= r);
        }
        assert!(phi.entries().all(|e| e.is_zero() || e.degree().unwrap() >= r));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn incremental_hf_matches_brute_force(seed in any::<u64>(), d in 2usize..7, extra in 0usize..3) {
            let f = PrimeField::default();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let n = (2 + extra).min(d + 1);
            let gens: Vec<_> = (0..n)
                .map(|_| BinaryForm::from_coeffs(&f, (0..=d).map(|_| f.random(&mut rng)).collect()))
                .collect();
            let Ok(p) = Parameterization::new(&f, gens) else { return Ok(()) };
            let (e, hf) = multiplicity_a(&f, &p).unwrap();
            for (k, &v) in hf.values.iter().enumerate() {
                prop_assert_eq!(v, hf_a_brute(&f, p.gens(), k));
            }
            let phi = hilbert_burch(&f, &p).unwrap();
            let md = map_degree(&f, &p, &phi, 7, &mut rng).unwrap();
            prop_assert_eq!(md.r * e, d);
            prop_assert!(phi.col_degrees().iter().all(|dj| dj % md.r == 0));
        }

        #[test]
        fn composed_maps_have_expected_degree(seed in any::<u64>(), r in 2usize..4, m in 1usize..4) {
            let f = PrimeField::default();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let rand_form = |deg: usize, rng: &mut ChaCha8Rng| {
                BinaryForm::from_coeffs(&f, (0..=deg).map(|_| f.random(rng)).collect())
            };
            let (f1, f2) = (rand_form(r, &mut rng), rand_form(r, &mut rng));
            let n = (m + 1).min(3).max(2);
            let gens: Vec<_> = (0..n)
                .map(|_| {
                    let h = rand_form(m, &mut rng);
                    (0..=m).fold(BinaryForm::zero(), |acc, i| {
                        let t = f1.pow(&f, m - i).mul(&f, &f2.pow(&f, i)).scale(&f, &h.coeff(&f, i));
                        if acc.is_zero() { t } else { acc.add(&f, &t).unwrap() }
                    })
                })
                .collect();
            let Ok(p) = Parameterization::new(&f, gens) else { return Ok(()) };
            let phi = hilbert_burch(&f, &p).unwrap();
            let md = map_degree(&f, &p, &phi, 7, &mut rng).unwrap();
            // the inner map of degree m may add its own factor to the degree
            prop_assert_eq!(md.r % r, 0);
            prop_assert_eq!(md.r * md.e, p.d());
        }
    }
}

//! Random instance generators for self-tests.

use rand::Rng;

use crate::field::Field;
use crate::form::BinaryForm;
use crate::param::Parameterization;
use crate::reparam::substitute;

/// Rejection sampling gives up after this many draws; dense random forms
/// are valid with overwhelming probability, so this is never reached in
/// practice.
const MAX_DRAWS: usize = 1000;

pub fn random_form<F: Field, R: Rng + ?Sized>(field: &F, d: usize, rng: &mut R) -> BinaryForm<F::Elem> {
    BinaryForm::from_coeffs(field, (0..=d).map(|_| field.random(rng)).collect())
}

/// `n` uniform in `n_min..=n_max`, `d` uniform in `max(n, d_min)..=d_max`,
/// every coefficient random; redrawn until the generators form a valid
/// parameterization.
pub fn random_dense<F: Field, R: Rng + ?Sized>(
    field: &F,
    (n_min, n_max): (usize, usize),
    (d_min, d_max): (usize, usize),
    rng: &mut R,
) -> Parameterization<F::Elem> {
    for _ in 0..MAX_DRAWS {
        let n = rng.gen_range(n_min..=n_max);
        let d = rng.gen_range(n.max(d_min)..=d_max.max(n));
        let gens = (0..n).map(|_| random_form(field, d, rng)).collect();
        if let Ok(p) = Parameterization::new(field, gens) {
            return p;
        }
    }
    panic!("no valid parameterization in {MAX_DRAWS} draws");
}

/// A map that factors through a degree-`r` cover: random inner generators
/// of degree `m` evaluated at random coprime `f1`, `f2` of degree `r`.
/// Returns the parameterization together with `r`; the map degree is a
/// multiple of `r` (and equal to it when the inner map is birational).
pub fn random_composed<F: Field, R: Rng + ?Sized>(
    field: &F,
    r_max: usize,
    m_max: usize,
    n_max: usize,
    rng: &mut R,
) -> (Parameterization<F::Elem>, usize) {
    for _ in 0..MAX_DRAWS {
        let r = rng.gen_range(2..=r_max);
        let m = rng.gen_range(1..=m_max);
        let n = rng.gen_range(2..=(m + 1).min(n_max));
        let (f1, f2) = (random_form(field, r, rng), random_form(field, r, rng));
        let gens = (0..n).map(|_| substitute(field, &random_form(field, m, rng), &f1, &f2)).collect();
        if let Ok(p) = Parameterization::new(field, gens) {
            return (p, r);
        }
    }
    panic!("no valid composed parameterization in {MAX_DRAWS} draws");
}

//! Closed forms for monomial parameterizations and Newton-polygon integral
//! closure of monomial ideals.
//!
//! A monomial parameterization of degree `d` is given by exponents
//! `0 = a_1 < a_2 < ... < a_n = d`, with generators `g_i = x^(d - a_i) y^(a_i)`.
//! Its Hilbert-Burch matrix is bidiagonal with column degrees
//! `D_j = a_(j+1) - a_j`, and the degree of the map onto its image is
//! `gcd(D_1, ..., D_(n-1))`. These facts make monomial input the ground
//! truth for the randomized machinery elsewhere in the crate.

use num_integer::Integer;
use rand::seq::index::sample;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::form::BinaryForm;
use crate::ideal::GradedIdeal;
use crate::param::Parameterization;
use crate::syzygy::SyzygyMatrix;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct MonomialParam {
    d: usize,
    exponents: Vec<usize>,
}

impl MonomialParam {
    pub fn new(d: usize, exponents: Vec<usize>) -> Result<Self> {
        let ok = exponents.len() >= 2
            && exponents[0] == 0
            && exponents.last() == Some(&d)
            && exponents.windows(2).all(|w| w[0] < w[1]);
        if !ok {
            return Err(Error::InvalidParameterization(format!(
                "monomial exponents {exponents:?} must increase strictly from 0 to {d}"
            )));
        }
        Ok(Self { d, exponents })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn exponents(&self) -> &[usize] {
        &self.exponents
    }

    pub fn n(&self) -> usize {
        self.exponents.len()
    }

    pub fn generators<F: Field>(&self, field: &F) -> Vec<BinaryForm<F::Elem>> {
        self.exponents.iter().map(|&a| BinaryForm::monomial(field, field.one(), self.d - a, a)).collect()
    }

    pub fn to_parameterization<F: Field>(&self, field: &F) -> Parameterization<F::Elem> {
        Parameterization::new(field, self.generators(field)).expect("monomial parameterization is valid")
    }

    /// `D_j = a_(j+1) - a_j`, in generator order (not sorted).
    pub fn column_degrees(&self) -> Vec<usize> {
        self.exponents.windows(2).map(|w| w[1] - w[0]).collect()
    }

    /// Column `j` has `y^(D_j)` in row `j` and `-x^(D_j)` in row `j + 1`.
    pub fn oracle_phi<F: Field>(&self, field: &F) -> SyzygyMatrix<F::Elem> {
        let n = self.n();
        let degrees = self.column_degrees();
        let columns = degrees
            .iter()
            .enumerate()
            .map(|(j, &dj)| {
                let mut col = vec![BinaryForm::zero(); n];
                col[j] = BinaryForm::monomial(field, field.one(), 0, dj);
                col[j + 1] = BinaryForm::monomial(field, field.neg(&field.one()), dj, 0);
                col
            })
            .collect();
        SyzygyMatrix::from_columns(n, columns, degrees).expect("bidiagonal shape")
    }

    pub fn oracle_degree(&self) -> usize {
        self.column_degrees().into_iter().fold(0, |g, dj| g.gcd(&dj))
    }

    /// Every monomial parameterization with `d <= d_max` and at most `n_max`
    /// generators, ordered by `d` and then lexicographically.
    pub fn exhaustive(d_max: usize, n_max: usize) -> Vec<MonomialParam> {
        let mut out = Vec::new();
        for d in 1..=d_max {
            let interior = d - 1;
            for mask in 0u64..(1u64 << interior) {
                if mask.count_ones() as usize + 2 > n_max {
                    continue;
                }
                let mut exps = vec![0];
                exps.extend((1..d).filter(|a| mask >> (a - 1) & 1 == 1));
                exps.push(d);
                out.push(MonomialParam { d, exponents: exps });
            }
        }
        out
    }

    /// Random instance: `d` uniform in `1..=d_max`, `n` uniform in
    /// `2..=min(d + 1, n_max)`, interior exponents a uniform subset.
    pub fn random<R: Rng + ?Sized>(d_max: usize, n_max: usize, rng: &mut R) -> MonomialParam {
        let d = rng.gen_range(1..=d_max);
        let n = rng.gen_range(2..=(d + 1).min(n_max));
        let mut exps: Vec<usize> = sample(rng, d - 1, n - 2).into_iter().map(|i| i + 1).collect();
        exps.push(0);
        exps.push(d);
        exps.sort_unstable();
        MonomialParam { d, exponents: exps }
    }
}

/// Integral closure of a monomial ideal: all monomials whose exponent
/// vector lies in the convex hull of the generator exponents plus the
/// positive quadrant.
pub fn newton_closure<F: Field>(field: &F, ideal: &GradedIdeal<F::Elem>) -> Result<GradedIdeal<F::Elem>> {
    let points = ideal.monomial_generators(field)?;
    let min_a = points.iter().map(|p| p.0).min().expect("nonempty");
    let max_a = points.iter().map(|p| p.0).max().expect("nonempty");
    let mut gens = Vec::new();
    for i in min_a..=max_a {
        // lowest y-exponent over the region at x-exponent i, as a rational
        // num/den, minimized over vertices left of i and hull segments
        // straddling i
        let mut best: Option<(usize, usize)> = None;
        let mut consider = |num: usize, den: usize| {
            if best.is_none_or(|(bn, bd)| num * bd < bn * den) {
                best = Some((num, den));
            }
        };
        for p in &points {
            if p.0 <= i {
                consider(p.1, 1);
            }
            for q in &points {
                if p.0 < i && i < q.0 {
                    consider(p.1 * (q.0 - i) + q.1 * (i - p.0), q.0 - p.0);
                }
            }
        }
        let (num, den) = best.expect("a vertex lies at or left of i");
        let j = num.div_ceil(den);
        gens.push(BinaryForm::monomial(field, field.one(), i, j));
    }
    GradedIdeal::new(field, gens)
}

pub fn is_integrally_closed<F: Field>(field: &F, ideal: &GradedIdeal<F::Elem>) -> Result<bool> {
    Ok(newton_closure(field, ideal)?.ideal_equals(field, ideal))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, RationalField};
    use crate::syzygy::{hilbert_burch, verify_hilbert_burch};
    use crate::parse::parse_form;
    use num_rational::BigRational;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn qf(s: &str) -> BinaryForm<BigRational> {
        parse_form(&RationalField, s).unwrap()
    }

    fn monomial_ideal(points: &[(usize, usize)]) -> GradedIdeal<BigRational> {
        let q = RationalField;
        GradedIdeal::new(&q, points.iter().map(|&(a, b)| BinaryForm::monomial(&q, q.one(), a, b)).collect()).unwrap()
    }

    /// Membership of (i, j) in hull + quadrant via supporting half-planes:
    /// every lower-hull facet normal is the normal of some pair of points,
    /// so checking all pair normals plus the axes decides membership.
    fn in_region_oracle(points: &[(usize, usize)], i: i64, j: i64) -> bool {
        let mut normals = vec![(1i64, 0i64), (0, 1)];
        for p in points {
            for q in points {
                let (da, db) = (q.0 as i64 - p.0 as i64, q.1 as i64 - p.1 as i64);
                if da > 0 && db < 0 {
                    normals.push((-db, da));
                }
            }
        }
        normals.iter().all(|&(w1, w2)| {
            let min = points.iter().map(|&(a, b)| w1 * a as i64 + w2 * b as i64).min().unwrap();
            w1 * i + w2 * j >= min
        })
    }

    fn closure_slice_oracle(points: &[(usize, usize)], n: usize) -> usize {
        (0..=n).filter(|&a| in_region_oracle(points, a as i64, (n - a) as i64)).count()
    }

    #[test]
    fn validates_exponents() {
        assert!(MonomialParam::new(4, vec![0, 2, 4]).is_ok());
        assert!(MonomialParam::new(4, vec![0, 4, 2]).is_err());
        assert!(MonomialParam::new(4, vec![1, 4]).is_err());
        assert!(MonomialParam::new(4, vec![0, 3]).is_err());
        assert!(MonomialParam::new(4, vec![4]).is_err());
    }

    #[test]
    fn oracle_phi_examples() {
        let q = RationalField;
        let m = MonomialParam::new(1, vec![0, 1]).unwrap();
        assert_eq!(m.oracle_phi(&q).columns()[0], vec![qf("y"), qf("-x")]);

        let m = MonomialParam::new(4, vec![0, 2, 4]).unwrap();
        assert_eq!(m.generators(&q), vec![qf("x^4"), qf("x^2*y^2"), qf("y^4")]);
        let phi = m.oracle_phi(&q);
        assert_eq!(phi.columns()[0], vec![qf("y^2"), qf("-x^2"), qf("0")]);
        assert_eq!(phi.columns()[1], vec![qf("0"), qf("y^2"), qf("-x^2")]);
        for col in phi.columns() {
            let s = m.generators(&q).iter().zip(col).fold(BinaryForm::zero(), |acc, (g, e)| acc.add(&q, &g.mul(&q, e)).unwrap());
            assert!(s.is_zero());
        }

        let m = MonomialParam::new(3, vec![0, 2, 3]).unwrap();
        assert_eq!(m.column_degrees(), vec![2, 1]);
    }

    #[test]
    fn oracle_degree_examples() {
        assert_eq!(MonomialParam::new(4, vec![0, 2, 4]).unwrap().oracle_degree(), 2);
        assert_eq!(MonomialParam::new(3, vec![0, 2, 3]).unwrap().oracle_degree(), 1);
        for d in 1..10 {
            assert_eq!(MonomialParam::new(d, vec![0, d]).unwrap().oracle_degree(), d);
        }
    }

    #[test]
    fn exhaustive_counts() {
        // subsets of the d-1 interior exponents of size <= n_max - 2
        let all = MonomialParam::exhaustive(6, 8);
        assert_eq!(all.len(), (1..=6).map(|d| 1usize << (d - 1)).sum::<usize>());
        let capped = MonomialParam::exhaustive(6, 3);
        assert_eq!(capped.len(), (1..=6).map(|d| d).sum::<usize>());
        assert!(all.iter().all(|m| MonomialParam::new(m.d(), m.exponents().to_vec()).is_ok()));
    }

    #[test]
    fn random_instances_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let m = MonomialParam::random(40, 8, &mut rng);
            assert!(MonomialParam::new(m.d(), m.exponents().to_vec()).is_ok());
            assert!(m.n() <= 8);
        }
    }

    #[test]
    fn newton_closure_examples() {
        let q = RationalField;
        for t in 1..7 {
            let mt = GradedIdeal::maximal_power(&q, t);
            assert!(newton_closure(&q, &mt).unwrap().ideal_equals(&q, &mt));
        }
        let core = monomial_ideal(&[(6, 0), (4, 2), (2, 4), (0, 6)]);
        let closure = newton_closure(&q, &core).unwrap();
        assert!(closure.ideal_equals(&q, &GradedIdeal::maximal_power(&q, 6)));
        assert!(!is_integrally_closed(&q, &core).unwrap());
        let j = monomial_ideal(&[(2, 0), (0, 2)]);
        assert!(newton_closure(&q, &j).unwrap().ideal_equals(&q, &GradedIdeal::maximal_power(&q, 2)));
        // (x^3, y^2): hull from (3,0) to (0,2) passes below (2,1)
        let j = monomial_ideal(&[(3, 0), (0, 2)]);
        let c = newton_closure(&q, &j).unwrap();
        assert!(c.ideal_equals(&q, &monomial_ideal(&[(3, 0), (2, 1), (0, 2)])));
        let not_monomial = GradedIdeal::new(&q, vec![qf("x^2 - y^2")]).unwrap();
        assert_eq!(newton_closure(&q, &not_monomial), Err(Error::NotMonomial));
    }

    #[test]
    fn oracle_phi_verifies_for_small_corpus() {
        let f = PrimeField::default();
        for m in MonomialParam::exhaustive(7, 8) {
            let p = m.to_parameterization(&f);
            assert!(verify_hilbert_burch(&f, p.gens(), &m.oracle_phi(&f)), "{m:?}");
            let mut sorted = m.column_degrees();
            sorted.sort_unstable();
            assert_eq!(hilbert_burch(&f, &p).unwrap().col_degrees(), &sorted[..]);
        }
    }

    proptest! {
        #[test]
        fn closure_matches_halfplane_oracle(pts in proptest::collection::vec((0usize..8, 0usize..8), 1..6)) {
            let q = RationalField;
            let j = monomial_ideal(&pts);
            let c = newton_closure(&q, &j).unwrap();
            let gens = j.monomial_generators(&q).unwrap();
            for n in 0..18 {
                prop_assert_eq!(c.slice_dim(&q, n), closure_slice_oracle(&gens, n));
            }
        }

        #[test]
        fn closure_contains_input_and_is_idempotent(pts in proptest::collection::vec((0usize..8, 0usize..8), 1..6)) {
            let q = RationalField;
            let j = monomial_ideal(&pts);
            let c = newton_closure(&q, &j).unwrap();
            prop_assert!(j.gens().iter().all(|g| c.contains(&q, g)));
            prop_assert!(newton_closure(&q, &c).unwrap().ideal_equals(&q, &c));
        }
    }
}

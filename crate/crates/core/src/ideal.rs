//! Homogeneous ideals of `k[x,y]` handled one degree slice at a time.
//!
//! The degree-`n` slice `J_n` of an ideal is the span of all monomial
//! multiples of generators landing in degree `n`. In two variables that is
//! enough to answer every question asked here: Hilbert functions, lengths,
//! minimal generator counts and equality.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::form::{gcd_forms, BinaryForm};
use crate::matrix::{EchelonSpace, Matrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedIdeal<E> {
    gens: Vec<BinaryForm<E>>,
}

/// `values[n]` is a Hilbert function value at `n`, for `n` in `0..values.len()`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct HilbertTable {
    pub values: Vec<usize>,
}

impl HilbertTable {
    pub fn differences(&self) -> Vec<i64> {
        self.values.windows(2).map(|w| w[1] as i64 - w[0] as i64).collect()
    }
}

impl<E: Clone + PartialEq> GradedIdeal<E> {
    /// Zero generators are dropped and the rest made monic; at least one
    /// nonzero generator is required.
    pub fn new<F: Field<Elem = E>>(field: &F, gens: Vec<BinaryForm<E>>) -> Result<Self> {
        let gens: Vec<_> =
            gens.into_iter().filter(|g| !g.is_zero()).map(|g| g.monic(field)).collect();
        if gens.is_empty() {
            return Err(Error::ZeroIdeal);
        }
        Ok(Self { gens })
    }

    pub fn unit<F: Field<Elem = E>>(field: &F) -> Self {
        Self { gens: vec![BinaryForm::one(field)] }
    }

    /// `(x,y)^t`, generated by all monomials of degree `t`.
    pub fn maximal_power<F: Field<Elem = E>>(field: &F, t: usize) -> Self {
        Self { gens: (0..=t).map(|b| BinaryForm::monomial(field, field.one(), t - b, b)).collect() }
    }

    pub fn gens(&self) -> &[BinaryForm<E>] {
        &self.gens
    }

    pub fn max_gen_degree(&self) -> usize {
        self.gens.iter().filter_map(|g| g.degree()).max().expect("nonempty")
    }

    pub fn min_gen_degree(&self) -> usize {
        self.gens.iter().filter_map(|g| g.degree()).min().expect("nonempty")
    }

    /// Echelon basis of the slice `J_n`, as coefficient rows of length `n + 1`.
    fn slice_space<F: Field<Elem = E>>(&self, field: &F, n: usize) -> EchelonSpace<E> {
        let mut space = EchelonSpace::new(n + 1);
        for g in &self.gens {
            let dg = g.degree().expect("nonzero");
            if dg > n {
                continue;
            }
            for b in 0..=n - dg {
                if space.is_full() {
                    return space;
                }
                space.insert(field, g.shift(field, n - dg - b, b).coeffs().to_vec());
            }
        }
        space
    }

    /// A basis of the vector space `J_n`.
    pub fn slice_basis<F: Field<Elem = E>>(&self, field: &F, n: usize) -> Vec<BinaryForm<E>> {
        self.slice_space(field, n)
            .into_rows()
            .into_iter()
            .map(|r| BinaryForm::from_coeffs(field, r))
            .collect()
    }

    pub fn slice_dim<F: Field<Elem = E>>(&self, field: &F, n: usize) -> usize {
        self.slice_space(field, n).dim()
    }

    /// `dim (R/J)_n = (n + 1) - dim J_n`.
    pub fn hf_quotient<F: Field<Elem = E>>(&self, field: &F, n: usize) -> usize {
        n + 1 - self.slice_dim(field, n)
    }

    pub fn hilbert_table<F: Field<Elem = E>>(&self, field: &F, n_max: usize) -> HilbertTable {
        HilbertTable { values: (0..=n_max).map(|n| self.hf_quotient(field, n)).collect() }
    }

    /// Common factor of the generators; constant iff the ideal is primary to
    /// `(x,y)` (or the unit ideal).
    pub fn saturation_generator<F: Field<Elem = E>>(&self, field: &F) -> BinaryForm<E> {
        gcd_forms(field, &self.gens).expect("nonzero generators")
    }

    pub fn is_m_primary<F: Field<Elem = E>>(&self, field: &F) -> bool {
        self.saturation_generator(field).is_constant()
    }

    /// Length of `R/J`, summing the Hilbert function until its first zero.
    pub fn length_quotient<F: Field<Elem = E>>(&self, field: &F) -> Result<usize> {
        let common = self.saturation_generator(field);
        if !common.is_constant() {
            return Err(Error::NotMPrimary { common_factor: common.display(field).to_string() });
        }
        // HF(n) = 0 forces HF(n+1) = 0: R/J is cyclic, generated in degree 0.
        let mut total = 0;
        for n in 0.. {
            match self.hf_quotient(field, n) {
                0 => break,
                h => total += h,
            }
        }
        Ok(total)
    }

    /// Minimal number of homogeneous generators: the sum over `n` of
    /// `dim J_n - dim (m J)_n`.
    pub fn min_gens<F: Field<Elem = E>>(&self, field: &F) -> usize {
        let top = self.max_gen_degree();
        let mut count = 0;
        let mut prev = EchelonSpace::new(1);
        for n in 0..=top {
            let here = self.slice_space(field, n);
            let mut mj = EchelonSpace::new(n + 1);
            if n > 0 {
                for row in prev.rows() {
                    let b = BinaryForm::from_coeffs(field, row.to_vec());
                    mj.insert(field, b.shift(field, 1, 0).coeffs().to_vec());
                    mj.insert(field, b.shift(field, 0, 1).coeffs().to_vec());
                }
            }
            count += here.dim() - mj.dim();
            prev = here;
        }
        count
    }

    /// `J^t`, generated by all products of `t` generators taken as multisets.
    pub fn power<F: Field<Elem = E>>(&self, field: &F, t: usize) -> Self {
        assert!(t >= 1, "power exponent must be positive");
        let mut layer: Vec<(usize, BinaryForm<E>)> =
            self.gens.iter().cloned().enumerate().collect();
        for _ in 1..t {
            let mut next = Vec::new();
            for (last, p) in &layer {
                for (i, g) in self.gens.iter().enumerate().skip(*last) {
                    next.push((i, p.mul(field, g)));
                }
            }
            layer = next;
        }
        Self::new(field, layer.into_iter().map(|(_, p)| p).collect()).expect("nonzero products")
    }

    pub fn product<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        let gens = self
            .gens
            .iter()
            .flat_map(|a| other.gens.iter().map(move |b| a.mul(field, b)))
            .collect();
        Self::new(field, gens).expect("nonzero products")
    }

    pub fn contains<F: Field<Elem = E>>(&self, field: &F, h: &BinaryForm<E>) -> bool {
        match h.degree() {
            None => true,
            Some(n) => self.slice_space(field, n).contains(field, h.coeffs().to_vec()),
        }
    }

    /// Slice-wise equality. Past the largest generator degree `N` of both
    /// ideals every slice is `R_1` times the previous one, so comparing
    /// slices `0..=N+1` decides equality.
    pub fn ideal_equals<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> bool {
        let top = self.max_gen_degree().max(other.max_gen_degree()) + 1;
        (0..=top).all(|n| {
            let a = self.slice_space(field, n);
            if a.dim() != other.slice_dim(field, n) {
                return false;
            }
            other.slice_basis(field, n).into_iter().all(|b| a.contains(field, b.coeffs().to_vec()))
        })
    }

    /// Reduced row echelon basis of `J_n`.
    pub fn reduced_slice<F: Field<Elem = E>>(&self, field: &F, n: usize) -> Vec<BinaryForm<E>> {
        let rows = self.slice_space(field, n).into_rows();
        let rank = rows.len();
        let reduced = Matrix::from_rows(rows, n + 1).expect("uniform rows").rref(field).reduced;
        (0..rank).map(|i| BinaryForm::from_coeffs(field, reduced.row(i).to_vec())).collect()
    }

    /// Monomials `(x exponent, y exponent)` generating the ideal, or
    /// `NotMonomial` when some slice up to the top generator degree lacks a
    /// monomial basis.
    pub fn monomial_generators<F: Field<Elem = E>>(&self, field: &F) -> Result<Vec<(usize, usize)>> {
        let mut out = Vec::new();
        for n in 0..=self.max_gen_degree() {
            for b in self.reduced_slice(field, n) {
                out.push(b.as_monomial(field).ok_or(Error::NotMonomial)?);
            }
        }
        Ok(out)
    }

    pub fn is_monomial<F: Field<Elem = E>>(&self, field: &F) -> bool {
        self.monomial_generators(field).is_ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, RationalField};
    use crate::parse::parse_form;
    use num_rational::BigRational;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn ideal(gens: &[&str]) -> GradedIdeal<BigRational> {
        let q = RationalField;
        GradedIdeal::new(&q, gens.iter().map(|s| parse_form(&q, s).unwrap()).collect()).unwrap()
    }

    /// Degree-n slice of a monomial ideal counted directly: monomial
    /// x^a y^(n-a) is in J iff some generator divides it.
    fn monomial_slice_oracle(gens: &[(usize, usize)], n: usize) -> usize {
        (0..=n).filter(|&a| gens.iter().any(|&(ga, gb)| ga <= a && gb <= n - a)).count()
    }

    #[test]
    fn slice_examples() {
        let q = RationalField;
        let j = ideal(&["x^2", "y^2"]);
        assert_eq!(j.slice_basis(&q, 2).len(), 2);
        assert_eq!(j.slice_basis(&q, 3).len(), 4);
        let j = ideal(&["x^3", "x^2*y", "y^3"]);
        assert_eq!(j.slice_basis(&q, 4).len(), 5);
        assert_eq!(j.hf_quotient(&q, 4), 0);
        assert_eq!(monomial_slice_oracle(&[(3, 0), (2, 1), (0, 3)], 4), 5);
        assert!(ideal(&["x"]).slice_basis(&q, 0).is_empty());
    }

    #[test]
    fn hilbert_function_examples() {
        let q = RationalField;
        let m = ideal(&["x", "y"]);
        assert_eq!(m.hilbert_table(&q, 3).values, vec![1, 0, 0, 0]);
        let ci = ideal(&["x^3", "y^3"]);
        assert_eq!(ci.hilbert_table(&q, 6).values, vec![1, 2, 3, 2, 1, 0, 0]);
        let m4: GradedIdeal<BigRational> = GradedIdeal::maximal_power(&q, 4);
        assert_eq!(m4.hilbert_table(&q, 6).values, vec![1, 2, 3, 4, 0, 0, 0]);
    }

    #[test]
    fn length_examples() {
        let q = RationalField;
        assert_eq!(ideal(&["x", "y"]).length_quotient(&q), Ok(1));
        assert_eq!(ideal(&["x^3", "y^3"]).length_quotient(&q), Ok(9));
        // brute force: sum over n of #monomials of degree n outside J
        let gens = [(4, 0), (2, 2), (0, 4)];
        let oracle: usize = (0..10).map(|n| n + 1 - monomial_slice_oracle(&gens, n)).sum();
        assert_eq!(oracle, 12);
        assert_eq!(ideal(&["x^4", "x^2*y^2", "y^4"]).length_quotient(&q), Ok(12));
        assert!(matches!(
            ideal(&["x^2", "x*y"]).length_quotient(&q),
            Err(Error::NotMPrimary { .. })
        ));
    }

    #[test]
    fn min_gens_examples() {
        let q = RationalField;
        assert_eq!(ideal(&["x^2", "2*x^2"]).min_gens(&q), 1);
        assert_eq!(ideal(&["x^2", "x*y", "y^2"]).min_gens(&q), 3);
        assert_eq!(ideal(&["x^3", "x^2*y", "y^3"]).min_gens(&q), 3);
        assert_eq!(ideal(&["x", "x^2", "y^3", "x*y^2"]).min_gens(&q), 2);
    }

    #[test]
    fn power_examples() {
        let q = RationalField;
        let m2 = ideal(&["x", "y"]).power(&q, 2);
        assert!(m2.ideal_equals(&q, &ideal(&["x^2", "x*y", "y^2"])));
        let p3 = ideal(&["x^2", "y^2"]).power(&q, 3);
        assert_eq!(p3.gens().len(), 4);
        assert!(p3.ideal_equals(&q, &ideal(&["x^6", "x^4*y^2", "x^2*y^4", "y^6"])));
        for t in 1..6 {
            let p = ideal(&["x", "y"]).power(&q, t);
            for n in 0..8 {
                assert_eq!(p.slice_dim(&q, n), if n < t { 0 } else { n + 1 });
            }
        }
    }

    #[test]
    fn equality_examples() {
        let q = RationalField;
        assert!(ideal(&["x", "y"]).ideal_equals(&q, &ideal(&["y", "x + y"])));
        assert!(!ideal(&["x^2", "y^2"]).ideal_equals(&q, &GradedIdeal::maximal_power(&q, 2)));
        let p3 = ideal(&["x^2", "y^2"]).power(&q, 3);
        let m6 = GradedIdeal::maximal_power(&q, 6);
        assert_eq!((p3.slice_dim(&q, 6), m6.slice_dim(&q, 6)), (4, 7));
        assert!(!p3.ideal_equals(&q, &m6));
        // mixed degrees
        assert!(ideal(&["x", "y^3"]).ideal_equals(&q, &ideal(&["x", "x*y", "y^3", "x*y^5"])));
        assert!(!ideal(&["x", "y^3"]).ideal_equals(&q, &ideal(&["x", "y^4"])));
    }

    #[test]
    fn monomial_detection() {
        let q = RationalField;
        assert!(ideal(&["x^2", "y^2"]).power(&q, 2).is_monomial(&q));
        let j = ideal(&["x^2 - y^2", "x^2 - 4*y^2"]);
        assert!(j.is_monomial(&q));
        assert_eq!(j.monomial_generators(&q).unwrap(), vec![(2, 0), (0, 2)]);
        assert!(!ideal(&["x^2 - y^2"]).is_monomial(&q));
    }

    proptest! {
        #[test]
        fn coprime_pairs_are_complete_intersections(seed in any::<u64>(), da in 1usize..6, db in 1usize..6) {
            let f = PrimeField::default();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut rand_form = |d: usize| BinaryForm::from_coeffs(&f, (0..=d).map(|_| f.random_nonzero(&mut rng)).collect());
            let (a, b) = (rand_form(da), rand_form(db));
            prop_assume!(gcd_forms(&f, &[a.clone(), b.clone()]).unwrap().is_constant());
            let j = GradedIdeal::new(&f, vec![a, b]).unwrap();
            prop_assert_eq!(j.length_quotient(&f).unwrap(), da * db);
            let hf = j.hilbert_table(&f, da + db).values;
            let peak = hf.iter().enumerate().max_by_key(|(_, v)| **v).unwrap().0;
            prop_assert!(hf[peak..].windows(2).all(|w| w[1] <= w[0]));
        }

        #[test]
        fn equality_survives_recombination(seed in any::<u64>(), d in 1usize..5) {
            let f = PrimeField::default();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let gens: Vec<_> = (0..3).map(|_| BinaryForm::from_coeffs(&f, (0..=d).map(|_| f.random(&mut rng)).collect())).collect();
            prop_assume!(gens.iter().all(|g| !g.is_zero()));
            let j = GradedIdeal::new(&f, gens.clone()).unwrap();
            // invertible (upper unitriangular) recombination
            let c = [f.random(&mut rng), f.random(&mut rng), f.random(&mut rng)];
            let g0 = gens[0].add(&f, &gens[1].scale(&f, &c[0])).unwrap().add(&f, &gens[2].scale(&f, &c[1])).unwrap();
            let g1 = gens[1].add(&f, &gens[2].scale(&f, &c[2])).unwrap();
            prop_assume!(!g0.is_zero() && !g1.is_zero());
            let k = GradedIdeal::new(&f, vec![g0, g1, gens[2].clone()]).unwrap();
            prop_assert!(j.ideal_equals(&f, &k));
            prop_assert!(k.ideal_equals(&f, &j));
            prop_assert!(j.ideal_equals(&f, &j));
        }
    }
}

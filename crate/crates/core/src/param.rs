use crate::error::{Error, Result};
use crate::field::Field;
use crate::form::{gcd_forms, li_dim, BinaryForm, ProjPoint1, ProjPointN};
use crate::ideal::GradedIdeal;
use crate::parse::parse_form;

/// A morphism from the projective line to projective `(n-1)`-space given by
/// `n >= 2` linearly independent forms of a common degree `d` without a
/// common factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Parameterization<E> {
    d: usize,
    gens: Vec<BinaryForm<E>>,
}

impl<E: Clone + PartialEq> Parameterization<E> {
    pub fn new<F: Field<Elem = E>>(field: &F, gens: Vec<BinaryForm<E>>) -> Result<Self> {
        if gens.len() < 2 {
            return Err(Error::InvalidParameterization(format!(
                "need at least two generators, got {}",
                gens.len()
            )));
        }
        if let Some(i) = gens.iter().position(|g| g.is_zero()) {
            return Err(Error::InvalidParameterization(format!("generator {} is zero", i + 1)));
        }
        let d = gens[0].degree().expect("nonzero");
        if let Some(g) = gens.iter().find(|g| g.degree() != Some(d)) {
            return Err(Error::DegreeMismatch { expected: d, found: g.degree().expect("nonzero") });
        }
        if d == 0 {
            return Err(Error::InvalidParameterization("generators are constants".into()));
        }
        let n = gens.len();
        if n > d + 1 {
            return Err(Error::InvalidParameterization(format!(
                "linearly dependent generators: {n} forms of degree {d} exceed dim R_{d} = {}",
                d + 1
            )));
        }
        let rank = li_dim(field, &gens, d)?;
        if rank < n {
            return Err(Error::InvalidParameterization(format!(
                "linearly dependent generators: span has dimension {rank} < {n}"
            )));
        }
        let common = gcd_forms(field, &gens)?;
        if !common.is_constant() {
            return Err(Error::NotMPrimary { common_factor: common.display(field).to_string() });
        }
        Ok(Self { d, gens })
    }

    pub fn parse<F: Field<Elem = E>, S: AsRef<str>>(field: &F, gens: &[S]) -> Result<Self> {
        let forms = gens.iter().map(|s| parse_form(field, s.as_ref())).collect::<Result<_>>()?;
        Self::new(field, forms)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.gens.len()
    }

    pub fn gens(&self) -> &[BinaryForm<E>] {
        &self.gens
    }

    pub fn ideal<F: Field<Elem = E>>(&self, field: &F) -> GradedIdeal<E> {
        GradedIdeal::new(field, self.gens.clone()).expect("nonzero generators")
    }

    /// `[g_1(q) : ... : g_n(q)]`. Never the zero vector because the
    /// generators have no common zero.
    pub fn apply<F: Field<Elem = E>>(&self, field: &F, q: &ProjPoint1<E>) -> ProjPointN<E> {
        ProjPointN::new(field, self.gens.iter().map(|g| g.eval(field, q)).collect())
            .expect("generators have no common zero")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::RationalField;

    #[test]
    fn validation_diagnostics() {
        let q = RationalField;
        let err = |gens: &[&str]| Parameterization::parse(&q, gens).unwrap_err().to_string();
        assert!(err(&["x", "x"]).contains("linearly dependent generators"));
        assert!(err(&["x^2", "x*y"]).contains("x"));
        assert!(matches!(Parameterization::parse(&q, &["x^2", "x*y"]), Err(Error::NotMPrimary { .. })));
        assert!(matches!(Parameterization::parse(&q, &["x^2", "y"]), Err(Error::DegreeMismatch { .. })));
        assert!(err(&["x"]).contains("at least two"));
        assert!(err(&["x", "y", "x+y"]).contains("linearly dependent"));
        assert!(err(&["1", "2"]).contains("constant"));
        assert!(err(&["x^2 + y", "y^2"]).contains("inhomogeneous"));
        assert!(Parameterization::parse(&q, &["x^3", "x^2*y", "y^3"]).is_ok());
    }

    #[test]
    fn apply_examples() {
        let q = RationalField;
        let pt = |a, b| ProjPoint1::new(&q, q.from_i64(a), q.from_i64(b)).unwrap();
        let pn = |v: &[i64]| ProjPointN::new(&q, v.iter().map(|&c| q.from_i64(c)).collect()).unwrap();
        let id = Parameterization::parse(&q, &["x", "y"]).unwrap();
        assert_eq!(id.apply(&q, &pt(3, 5)), pn(&[3, 5]));
        let p = Parameterization::parse(&q, &["x^4", "x^2*y^2", "y^4"]).unwrap();
        assert_eq!(p.apply(&q, &pt(1, 1)), pn(&[1, 1, 1]));
        assert_eq!(p.apply(&q, &pt(1, 2)), pn(&[1, 4, 16]));
        // homogeneity: evaluating at the unnormalized (3, 6) lands on the same point
        let raw: Vec<_> = p.gens().iter().map(|g| g.eval_xy(&q, &q.from_i64(3), &q.from_i64(6))).collect();
        assert_eq!(ProjPointN::new(&q, raw).unwrap(), p.apply(&q, &pt(1, 2)));
    }
}

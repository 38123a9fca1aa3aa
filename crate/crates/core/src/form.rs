//! Binary forms: homogeneous polynomials in two variables.
//!
//! A nonzero form of degree `d` is stored densely as `d + 1` coefficients,
//! index `i` holding the coefficient of `x^(d-i) * y^i`. The zero form has
//! no coefficients and no degree.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryForm<E> {
    coeffs: Vec<E>,
}

impl<E: Clone + PartialEq> BinaryForm<E> {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    /// Builds a form of the given degree from `degree + 1` coefficients; an
    /// all-zero vector yields the zero form.
    pub fn from_coeffs<F: Field<Elem = E>>(field: &F, coeffs: Vec<E>) -> Self {
        if coeffs.iter().all(|c| field.is_zero(c)) {
            Self::zero()
        } else {
            Self { coeffs }
        }
    }

    pub fn constant<F: Field<Elem = E>>(field: &F, c: E) -> Self {
        Self::from_coeffs(field, vec![c])
    }

    pub fn one<F: Field<Elem = E>>(field: &F) -> Self {
        Self::constant(field, field.one())
    }

    /// `c * x^a * y^b`.
    pub fn monomial<F: Field<Elem = E>>(field: &F, c: E, a: usize, b: usize) -> Self {
        let mut coeffs = vec![field.zero(); a + b + 1];
        coeffs[b] = c;
        Self::from_coeffs(field, coeffs)
    }

    pub fn x<F: Field<Elem = E>>(field: &F) -> Self {
        Self::monomial(field, field.one(), 1, 0)
    }

    pub fn y<F: Field<Elem = E>>(field: &F) -> Self {
        Self::monomial(field, field.one(), 0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.degree() == Some(0)
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    /// Coefficient of `x^(d-i) y^i`; zero outside the support.
    pub fn coeff<F: Field<Elem = E>>(&self, field: &F, i: usize) -> E {
        self.coeffs.get(i).cloned().unwrap_or_else(|| field.zero())
    }

    /// Coefficient vector of length `degree + 1`, or `len` zeros for the zero
    /// form. Used to place forms of a known degree into matrices.
    pub fn coeff_vector<F: Field<Elem = E>>(&self, field: &F, degree: usize) -> Vec<E> {
        if self.is_zero() {
            vec![field.zero(); degree + 1]
        } else {
            assert_eq!(self.degree(), Some(degree), "form degree");
            self.coeffs.clone()
        }
    }

    /// Number of terms with nonzero coefficient.
    pub fn support_len<F: Field<Elem = E>>(&self, field: &F) -> usize {
        self.coeffs.iter().filter(|c| !field.is_zero(c)).count()
    }

    /// If this is `c * x^a * y^b`, returns `(a, b)`.
    pub fn as_monomial<F: Field<Elem = E>>(&self, field: &F) -> Option<(usize, usize)> {
        let d = self.degree()?;
        let mut it = self.coeffs.iter().enumerate().filter(|(_, c)| !field.is_zero(c));
        let (i, _) = it.next()?;
        it.next().is_none().then_some((d - i, i))
    }

    pub fn leading_coeff<F: Field<Elem = E>>(&self, field: &F) -> Option<&E> {
        self.coeffs.iter().find(|c| !field.is_zero(c))
    }

    pub fn scale<F: Field<Elem = E>>(&self, field: &F, c: &E) -> Self {
        if field.is_zero(c) {
            return Self::zero();
        }
        Self { coeffs: self.coeffs.iter().map(|a| field.mul(a, c)).collect() }
    }

    pub fn neg<F: Field<Elem = E>>(&self, field: &F) -> Self {
        Self { coeffs: self.coeffs.iter().map(|a| field.neg(a)).collect() }
    }

    /// Scales so that the first nonzero coefficient (highest power of `x`)
    /// is one. The zero form is returned unchanged.
    pub fn monic<F: Field<Elem = E>>(&self, field: &F) -> Self {
        match self.leading_coeff(field) {
            None => Self::zero(),
            Some(lc) => self.scale(field, &field.inv(lc).expect("nonzero")),
        }
    }

    /// The field's preferred scalar multiple: monic over a prime field, a
    /// primitive integer form with positive leading coefficient over the
    /// rationals.
    pub fn associate<F: Field<Elem = E>>(&self, field: &F) -> Self {
        match field.associate_scale(&self.coeffs) {
            None => Self::zero(),
            Some(c) => self.scale(field, &c),
        }
    }

    pub fn is_monic<F: Field<Elem = E>>(&self, field: &F) -> bool {
        self.leading_coeff(field).is_some_and(|c| field.is_one(c))
    }

    pub fn add<F: Field<Elem = E>>(&self, field: &F, rhs: &Self) -> Result<Self> {
        match (self.degree(), rhs.degree()) {
            (None, _) => Ok(rhs.clone()),
            (_, None) => Ok(self.clone()),
            (Some(a), Some(b)) if a != b => Err(Error::DegreeMismatch { expected: a, found: b }),
            _ => Ok(Self::from_coeffs(
                field,
                self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| field.add(a, b)).collect(),
            )),
        }
    }

    pub fn sub<F: Field<Elem = E>>(&self, field: &F, rhs: &Self) -> Result<Self> {
        self.add(field, &rhs.neg(field))
    }

    pub fn mul<F: Field<Elem = E>>(&self, field: &F, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = vec![field.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if field.is_zero(a) {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = field.add(&out[i + j], &field.mul(a, b));
            }
        }
        Self { coeffs: out }
    }

    pub fn pow<F: Field<Elem = E>>(&self, field: &F, e: usize) -> Self {
        let mut acc = Self::one(field);
        for _ in 0..e {
            acc = acc.mul(field, self);
        }
        acc
    }

    /// Multiplies by the monomial `x^a * y^b`.
    pub fn shift<F: Field<Elem = E>>(&self, field: &F, a: usize, b: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![field.zero(); b];
        coeffs.extend(self.coeffs.iter().cloned());
        coeffs.extend(std::iter::repeat_n(field.zero(), a));
        Self { coeffs }
    }

    /// Value at the affine point `(u, v)`.
    pub fn eval_xy<F: Field<Elem = E>>(&self, field: &F, u: &E, v: &E) -> E {
        let Some(d) = self.degree() else {
            return field.zero();
        };
        // sum c_i u^(d-i) v^i, powers built incrementally
        let mut upow = vec![field.one(); d + 1];
        for i in 1..=d {
            upow[i] = field.mul(&upow[i - 1], u);
        }
        let mut vpow = field.one();
        let mut acc = field.zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            if !field.is_zero(c) {
                acc = field.add(&acc, &field.mul(c, &field.mul(&upow[d - i], &vpow)));
            }
            vpow = field.mul(&vpow, v);
        }
        acc
    }

    /// Value at the canonical representative of `q`.
    pub fn eval<F: Field<Elem = E>>(&self, field: &F, q: &ProjPoint1<E>) -> E {
        self.eval_xy(field, &q.u, &q.v)
    }

    /// Splits off the largest monomial factor: `self = x^a y^b * rest`.
    /// Returns `(a, b, rest)`; `rest` has nonzero first and last coefficient.
    fn split_monomial<F: Field<Elem = E>>(&self, field: &F) -> (usize, usize, Vec<E>) {
        let b = self.coeffs.iter().take_while(|c| field.is_zero(c)).count();
        let a = self.coeffs.iter().rev().take_while(|c| field.is_zero(c)).count();
        (a, b, self.coeffs[b..self.coeffs.len() - a].to_vec())
    }

    pub fn display<'a, F: Field<Elem = E>>(&'a self, field: &'a F) -> FormDisplay<'a, F> {
        FormDisplay { form: self, field, vars: ("x", "y") }
    }

    /// Display with custom variable names, e.g. `("X", "Y")` for forms in
    /// reparameterized coordinates.
    pub fn display_with<'a, F: Field<Elem = E>>(
        &'a self,
        field: &'a F,
        vars: (&'a str, &'a str),
    ) -> FormDisplay<'a, F> {
        FormDisplay { form: self, field, vars }
    }
}

/// Renders a form in descending powers of the first variable, e.g.
/// `3*x^2*y - y^3`.
pub struct FormDisplay<'a, F: Field> {
    form: &'a BinaryForm<F::Elem>,
    field: &'a F,
    vars: (&'a str, &'a str),
}

impl<F: Field> fmt::Display for FormDisplay<'_, F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Some(d) = self.form.degree() else {
            return f.write_str("0");
        };
        let mut first = true;
        for (i, c) in self.form.coeffs.iter().enumerate() {
            if self.field.is_zero(c) {
                continue;
            }
            let (neg, mag) = self.field.to_signed_string(c);
            match (first, neg) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            let mut factors = Vec::new();
            if mag != "1" || d == 0 {
                factors.push(mag);
            }
            for (var, e) in [(self.vars.0, d - i), (self.vars.1, i)] {
                match e {
                    0 => {}
                    1 => factors.push(var.to_string()),
                    _ => factors.push(format!("{var}^{e}")),
                }
            }
            if factors.is_empty() {
                factors.push("1".to_string());
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

/// A point of the projective line, stored with its first nonzero
/// coordinate equal to one.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProjPoint1<E> {
    u: E,
    v: E,
}

impl<E: Clone + PartialEq> ProjPoint1<E> {
    pub fn new<F: Field<Elem = E>>(field: &F, u: E, v: E) -> Result<Self> {
        let coords = normalize(field, vec![u, v])?;
        let [u, v]: [E; 2] = coords.try_into().ok().expect("two coordinates");
        Ok(Self { u, v })
    }

    pub fn random<F: Field<Elem = E>, R: rand::Rng + ?Sized>(field: &F, rng: &mut R) -> Self {
        loop {
            if let Ok(q) = Self::new(field, field.random(rng), field.random(rng)) {
                return q;
            }
        }
    }

    pub fn u(&self) -> &E {
        &self.u
    }

    pub fn v(&self) -> &E {
        &self.v
    }
}

/// A point of projective (n-1)-space, stored with its first nonzero
/// coordinate equal to one.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProjPointN<E> {
    coords: Vec<E>,
}

impl<E: Clone + PartialEq> ProjPointN<E> {
    pub fn new<F: Field<Elem = E>>(field: &F, coords: Vec<E>) -> Result<Self> {
        Ok(Self { coords: normalize(field, coords)? })
    }

    pub fn random<F: Field<Elem = E>, R: rand::Rng + ?Sized>(
        field: &F,
        n: usize,
        rng: &mut R,
    ) -> Self {
        loop {
            if let Ok(p) = Self::new(field, (0..n).map(|_| field.random(rng)).collect()) {
                return p;
            }
        }
    }

    pub fn coords(&self) -> &[E] {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn display<'a, F: Field<Elem = E>>(&'a self, field: &'a F) -> impl fmt::Display + 'a {
        let parts: Vec<String> = self.coords.iter().map(|c| field.format(c)).collect();
        format!("[{}]", parts.join(":"))
    }
}

fn normalize<F: Field>(field: &F, coords: Vec<F::Elem>) -> Result<Vec<F::Elem>> {
    let Some(lead) = coords.iter().find(|c| !field.is_zero(c)) else {
        return Err(Error::InvalidParameterization(
            "projective point with all coordinates zero".into(),
        ));
    };
    let inv = field.inv(lead).expect("nonzero");
    Ok(coords.iter().map(|c| field.mul(c, &inv)).collect())
}

// Univariate helpers, coefficient vectors stored from the constant term up.

fn uni_trim<F: Field>(field: &F, mut p: Vec<F::Elem>) -> Vec<F::Elem> {
    while p.last().is_some_and(|c| field.is_zero(c)) {
        p.pop();
    }
    p
}

fn uni_rem<F: Field>(field: &F, mut a: Vec<F::Elem>, b: &[F::Elem]) -> Vec<F::Elem> {
    let lb = field.inv(b.last().expect("nonzero divisor")).expect("nonzero");
    while a.len() >= b.len() {
        let shift = a.len() - b.len();
        let factor = field.mul(a.last().expect("nonempty"), &lb);
        for (i, bc) in b.iter().enumerate() {
            a[shift + i] = field.sub(&a[shift + i], &field.mul(&factor, bc));
        }
        a.pop();
        a = uni_trim(field, a);
    }
    a
}

fn uni_gcd<F: Field>(field: &F, a: Vec<F::Elem>, b: Vec<F::Elem>) -> Vec<F::Elem> {
    let (mut a, mut b) = (uni_trim(field, a), uni_trim(field, b));
    while !b.is_empty() {
        let r = uni_rem(field, a, &b);
        a = b;
        b = r;
    }
    a
}

/// Monic greatest common divisor of the nonzero forms in `forms`.
///
/// For a set of forms generating a homogeneous ideal `J` of `k[x,y]`, the
/// result generates the saturation `J : (x,y)^inf`.
pub fn gcd_forms<F: Field>(field: &F, forms: &[BinaryForm<F::Elem>]) -> Result<BinaryForm<F::Elem>> {
    let mut nonzero = forms.iter().filter(|h| !h.is_zero());
    let Some(first) = nonzero.next() else {
        return Err(Error::ZeroIdeal);
    };
    // Factor out x^a y^b; the rest, dehomogenized at y = 1, is a univariate
    // polynomial in x whose degree equals the form degree.
    let (mut xa, mut yb, rest) = first.split_monomial(field);
    let mut g: Vec<F::Elem> = rest.into_iter().rev().collect();
    for h in nonzero {
        let (a, b, rest) = h.split_monomial(field);
        xa = xa.min(a);
        yb = yb.min(b);
        g = uni_gcd(field, g, rest.into_iter().rev().collect());
    }
    let core = BinaryForm { coeffs: g.into_iter().rev().collect() };
    Ok(core.shift(field, xa, yb).monic(field))
}

/// Dimension of the span of forms that all have degree `degree` (zero forms
/// allowed).
pub fn li_dim<F: Field>(field: &F, forms: &[BinaryForm<F::Elem>], degree: usize) -> Result<usize> {
    let mut rows = Vec::with_capacity(forms.len());
    for h in forms {
        match h.degree() {
            Some(d) if d != degree => {
                return Err(Error::DegreeMismatch { expected: degree, found: d });
            }
            _ => rows.push(h.coeff_vector(field, degree)),
        }
    }
    Ok(Matrix::from_rows(rows, degree + 1)?.rank(field))
}

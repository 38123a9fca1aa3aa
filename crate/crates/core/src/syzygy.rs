//! Minimal Hilbert-Burch matrices of height-two ideals of `k[x,y]`.
//!
//! For `n` forms `g_1..g_n` of degree `d` generating an ideal primary to
//! `(x,y)`, the syzygy module is free of rank `n - 1`. Its minimal basis is
//! found degree by degree: the syzygies of degree `t` are the kernel of the
//! multiplication map `R_t^n -> R_(t+d)`, and a kernel vector becomes a new
//! column only if it is not already in the span of the multiples of the
//! columns admitted so far.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::form::BinaryForm;
use crate::ideal::GradedIdeal;
use crate::matrix::{EchelonSpace, Matrix};
use crate::param::Parameterization;

/// An `n x (n-1)` matrix of forms; every nonzero entry of column `j` has
/// degree `col_degrees[j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyzygyMatrix<E> {
    n: usize,
    columns: Vec<Vec<BinaryForm<E>>>,
    col_degrees: Vec<usize>,
}

impl<E: Clone + PartialEq> SyzygyMatrix<E> {
    /// Checks shapes and homogeneity: `n` rows per column, each column
    /// nonzero with all nonzero entries of the stated degree.
    pub fn from_columns(
        n: usize,
        columns: Vec<Vec<BinaryForm<E>>>,
        col_degrees: Vec<usize>,
    ) -> Result<Self> {
        if columns.len() != col_degrees.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} columns but {} column degrees",
                columns.len(),
                col_degrees.len()
            )));
        }
        for (j, (col, &dj)) in columns.iter().zip(&col_degrees).enumerate() {
            if col.len() != n {
                return Err(Error::DimensionMismatch(format!(
                    "column {j} has {} entries, expected {n}",
                    col.len()
                )));
            }
            if col.iter().all(|e| e.is_zero()) {
                return Err(Error::DimensionMismatch(format!("column {j} is zero")));
            }
            if let Some(e) = col.iter().find(|e| !e.is_zero() && e.degree() != Some(dj)) {
                return Err(Error::DegreeMismatch { expected: dj, found: e.degree().unwrap_or(0) });
            }
        }
        Ok(Self { n, columns, col_degrees })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_cols(&self) -> usize {
        self.columns.len()
    }

    pub fn columns(&self) -> &[Vec<BinaryForm<E>>] {
        &self.columns
    }

    pub fn col_degrees(&self) -> &[usize] {
        &self.col_degrees
    }

    pub fn entry(&self, i: usize, j: usize) -> &BinaryForm<E> {
        &self.columns[j][i]
    }

    pub fn entries(&self) -> impl Iterator<Item = &BinaryForm<E>> {
        self.columns.iter().flatten()
    }

    /// Entries of the row vector `p * phi`, one per column (zeros kept).
    pub fn row_times<F: Field<Elem = E>>(&self, field: &F, p: &[E]) -> Vec<BinaryForm<E>> {
        assert_eq!(p.len(), self.n, "point dimension");
        self.columns
            .iter()
            .map(|col| {
                col.iter().zip(p).fold(BinaryForm::zero(), |acc, (e, c)| {
                    acc.add(field, &e.scale(field, c)).expect("homogeneous column")
                })
            })
            .collect()
    }

    /// The ideal generated by all entries, `I_1(phi)`.
    pub fn entry_ideal<F: Field<Elem = E>>(&self, field: &F) -> GradedIdeal<E> {
        GradedIdeal::new(field, self.entries().cloned().collect()).expect("nonzero column")
    }

    /// The matrix with its columns reordered: column `j` of the result is
    /// column `perm[j]` of `self`.
    pub fn permute_columns(&self, perm: &[usize]) -> Self {
        Self {
            n: self.n,
            columns: perm.iter().map(|&j| self.columns[j].clone()).collect(),
            col_degrees: perm.iter().map(|&j| self.col_degrees[j]).collect(),
        }
    }

    pub fn map_entries(&self, f: impl Fn(&BinaryForm<E>) -> BinaryForm<E>, col_degrees: Vec<usize>) -> Result<Self> {
        let columns = self.columns.iter().map(|c| c.iter().map(&f).collect()).collect();
        Self::from_columns(self.n, columns, col_degrees)
    }

    /// Determinants of the `n` square submatrices obtained by deleting one
    /// row, as forms of degree `sum(col_degrees)` (zero forms allowed).
    ///
    /// Each minor is evaluated at `x = 1, y = t` for `t = 0..=D` and
    /// interpolated; a degree-`D` form is determined by its dehomogenization.
    pub fn maximal_minors<F: Field<Elem = E>>(&self, field: &F) -> Result<Vec<BinaryForm<E>>> {
        let m = self.columns.len();
        if m + 1 != self.n {
            return Err(Error::DimensionMismatch(format!(
                "{} x {m} matrix is not of Hilbert-Burch shape",
                self.n
            )));
        }
        let total: usize = self.col_degrees.iter().sum();
        let nodes: Vec<E> = (0..=total as i64).map(|t| field.from_i64(t)).collect();
        let one = field.one();
        // values[t][i][j] = entry (i, j) at y = nodes[t]
        let values: Vec<Vec<Vec<E>>> = nodes
            .iter()
            .map(|t| {
                (0..self.n)
                    .map(|i| (0..m).map(|j| self.entry(i, j).eval_xy(field, &one, t)).collect())
                    .collect()
            })
            .collect();
        let vandermonde = Matrix::from_rows(
            nodes.iter().map(|t| (0..=total as u64).map(|k| field.pow(t, k)).collect()).collect(),
            total + 1,
        )?;
        let mut minors = Vec::with_capacity(self.n);
        for skip in 0..self.n {
            let samples = values
                .iter()
                .map(|vals| {
                    let rows: Vec<Vec<E>> =
                        (0..self.n).filter(|&i| i != skip).map(|i| vals[i].clone()).collect();
                    Matrix::from_rows(rows, m)?.determinant(field)
                })
                .collect::<Result<Vec<E>>>()?;
            let coeffs = vandermonde
                .solve(field, &samples)?
                .ok_or_else(|| Error::InternalInvariantViolation("singular interpolation".into()))?;
            minors.push(BinaryForm::from_coeffs(field, coeffs));
        }
        Ok(minors)
    }
}

/// Basis of the degree-`t` syzygies of `gens` (all of degree `d`): vectors
/// `(h_1..h_n)` of degree-`t` forms with `sum h_i g_i = 0`.
pub fn syzygies_in_degree<F: Field>(
    field: &F,
    gens: &[BinaryForm<F::Elem>],
    d: usize,
    t: usize,
) -> Vec<Vec<BinaryForm<F::Elem>>> {
    let n = gens.len();
    let mut m = Matrix::zeros(field, t + d + 1, n * (t + 1));
    for (i, g) in gens.iter().enumerate() {
        for b in 0..=t {
            // column for h_i = x^(t-b) y^b
            for (k, c) in g.coeffs().iter().enumerate() {
                m.set(b + k, i * (t + 1) + b, c.clone());
            }
        }
    }
    let kernel = m.kernel_basis(field);
    kernel.columns().into_iter().map(|v| split_vector(field, &v, n, t)).collect()
}

fn split_vector<F: Field>(field: &F, v: &[F::Elem], n: usize, t: usize) -> Vec<BinaryForm<F::Elem>> {
    (0..n).map(|i| BinaryForm::from_coeffs(field, v[i * (t + 1)..(i + 1) * (t + 1)].to_vec())).collect()
}

fn flatten_column<F: Field>(field: &F, col: &[BinaryForm<F::Elem>], t: usize) -> Vec<F::Elem> {
    col.iter().flat_map(|e| e.coeff_vector(field, t)).collect()
}

/// Minimal homogeneous Hilbert-Burch matrix of a parameterization.
///
/// Columns come out sorted by degree, each scaled so that its first nonzero
/// entry is monic. Within a degree, kernel basis order decides which
/// syzygies are admitted.
pub fn hilbert_burch<F: Field>(
    field: &F,
    param: &Parameterization<F::Elem>,
) -> Result<SyzygyMatrix<F::Elem>> {
    let (n, d) = (param.n(), param.d());
    let mut columns: Vec<Vec<BinaryForm<F::Elem>>> = Vec::new();
    let mut degrees: Vec<usize> = Vec::new();
    'degrees: for t in 1..=d {
        let mut span = EchelonSpace::new(n * (t + 1));
        for (col, &dj) in columns.iter().zip(&degrees) {
            for b in 0..=t - dj {
                let shifted: Vec<_> = col.iter().map(|e| e.shift(field, t - dj - b, b)).collect();
                span.insert(field, flatten_column(field, &shifted, t));
            }
        }
        for syz in syzygies_in_degree(field, param.gens(), d, t) {
            if span.insert(field, flatten_column(field, &syz, t)).is_some() {
                columns.push(syz);
                degrees.push(t);
                if columns.len() == n - 1 {
                    break 'degrees;
                }
            }
        }
    }
    let total: usize = degrees.iter().sum();
    if columns.len() != n - 1 || total != d {
        return Err(Error::InternalInvariantViolation(format!(
            "found {} syzygy columns with degree sum {total}, expected {} with sum {d}",
            columns.len(),
            n - 1
        )));
    }
    for col in columns.iter_mut() {
        let lead = col.iter().find(|e| !e.is_zero()).expect("nonzero column");
        let inv = field.inv(lead.leading_coeff(field).expect("nonzero")).expect("nonzero");
        for e in col.iter_mut() {
            *e = e.scale(field, &inv);
        }
    }
    SyzygyMatrix::from_columns(n, columns, degrees)
}

/// Checks that `phi` is a Hilbert-Burch matrix for `gens`: `gens * phi = 0`,
/// the column degrees sum to `d`, and there is one unit `u` with
/// `g_i = u * (-1)^i * det(phi without row i)` for every `i`.
pub fn verify_hilbert_burch<F: Field>(
    field: &F,
    gens: &[BinaryForm<F::Elem>],
    phi: &SyzygyMatrix<F::Elem>,
) -> bool {
    let n = gens.len();
    if phi.n() != n || phi.num_cols() + 1 != n {
        return false;
    }
    let Some(d) = gens.first().and_then(|g| g.degree()) else {
        return false;
    };
    if phi.col_degrees().iter().sum::<usize>() != d {
        return false;
    }
    for col in phi.columns() {
        let mut acc = BinaryForm::zero();
        for (g, e) in gens.iter().zip(col) {
            match acc.add(field, &g.mul(field, e)) {
                Ok(s) => acc = s,
                Err(_) => return false,
            }
        }
        if !acc.is_zero() {
            return false;
        }
    }
    let Ok(minors) = phi.maximal_minors(field) else {
        return false;
    };
    let signed: Vec<_> = minors
        .iter()
        .enumerate()
        .map(|(i, m)| if i % 2 == 0 { m.neg(field) } else { m.clone() })
        .collect();
    // recover u from the first generator, then check all of them
    let (g0, m0) = (&gens[0], &signed[0]);
    let (Some(a), Some(b)) = (g0.leading_coeff(field), m0.leading_coeff(field)) else {
        return false;
    };
    if g0.degree() != m0.degree() {
        return false;
    }
    let u = field.div(a, b).expect("nonzero");
    gens.iter().zip(&signed).all(|(g, m)| *g == m.scale(field, &u))
}

//! Mutual information between a set of jointly Gaussian variables and the
//! rest: `f(S) = ½[log det Σ_S + log det Σ_{D∖S} − log det Σ]`.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};

/// Smallest eigenvalue a covariance must exceed to be accepted.
pub const MIN_EIGENVALUE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct GaussianModel {
    covariance: DMatrix<f64>,
    full_logdet: f64,
}

impl GaussianModel {
    pub fn new(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::input("covariance matrix is empty"));
        }
        if let Some(i) = rows.iter().position(|r| r.len() != n) {
            return Err(Error::input(format!(
                "covariance row {i} has {} entries, expected {n}",
                rows[i].len()
            )));
        }
        let cov = DMatrix::from_fn(n, n, |i, j| rows[i][j]);
        for i in 0..n {
            for j in 0..i {
                let (a, b) = (cov[(i, j)], cov[(j, i)]);
                if (a - b).abs() > 1e-12 * a.abs().max(b.abs()).max(1.0) {
                    return Err(Error::input(format!(
                        "covariance is not symmetric at ({i}, {j})"
                    )));
                }
            }
        }
        if cov.iter().any(|x| !x.is_finite()) {
            return Err(Error::input("covariance has non-finite entries"));
        }
        let smallest = SymmetricEigen::new(cov.clone())
            .eigenvalues
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min);
        if smallest <= MIN_EIGENVALUE {
            return Err(Error::input(format!(
                "covariance is not positive definite (smallest eigenvalue {smallest:e})"
            )));
        }
        let full_logdet = logdet(&cov).expect("positive definite");
        Ok(GaussianModel {
            covariance: cov,
            full_logdet,
        })
    }

    pub fn dimension(&self) -> usize {
        self.covariance.nrows()
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        let n = self.dimension();
        (0..n)
            .map(|i| (0..n).map(|j| self.covariance[(i, j)]).collect())
            .collect()
    }

    fn sub_logdet(&self, idx: &[usize]) -> f64 {
        let sub = DMatrix::from_fn(idx.len(), idx.len(), |i, j| {
            self.covariance[(idx[i], idx[j])]
        });
        logdet(&sub).expect("principal submatrix of a positive definite matrix")
    }

    pub(crate) fn value_unchecked(&self, set: &[usize]) -> f64 {
        let n = self.dimension();
        if set.is_empty() || set.len() == n {
            return 0.0;
        }
        let rest = crate::set::complement(set, n);
        0.5 * (self.sub_logdet(set) + self.sub_logdet(&rest) - self.full_logdet)
    }
}

fn logdet(m: &DMatrix<f64>) -> Option<f64> {
    let chol = m.clone().cholesky()?;
    Some(2.0 * chol.l().diagonal().iter().map(|d| d.ln()).sum::<f64>())
}

/// Mutual information between the variables in `set` and the remaining ones.
pub fn gaussian_mi_value(model: &GaussianModel, set: &[usize]) -> Result<f64> {
    crate::model::check_subset(set, model.dimension())?;
    Ok(model.value_unchecked(set))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn det3(m: &[[f64; 3]; 3]) -> f64 {
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    #[test]
    fn identity_has_no_information() {
        let id: Vec<Vec<f64>> = (0..4)
            .map(|i| (0..4).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
            .collect();
        let m = GaussianModel::new(&id).unwrap();
        for s in [vec![], vec![0], vec![1, 3], vec![0, 1, 2, 3]] {
            assert!(gaussian_mi_value(&m, &s).unwrap().abs() < 1e-12);
        }
    }

    #[test]
    fn three_variable_cofactor_check() {
        let rows = [[1.0, 0.5, 0.5], [0.5, 1.0, 0.5], [0.5, 0.5, 1.0]];
        let m = GaussianModel::new(&rows.map(|r| r.to_vec())).unwrap();
        // Σ_{0} = 1, Σ_{12} = [[1,.5],[.5,1]] with det .75, det Σ by cofactors.
        let expected = 0.5 * (1.0f64.ln() + 0.75f64.ln() - det3(&rows).ln());
        assert!((det3(&rows) - 0.5).abs() < 1e-15);
        let got = gaussian_mi_value(&m, &[0]).unwrap();
        assert!((got - expected).abs() < 1e-12, "{got} vs {expected}");
        assert_eq!(got, gaussian_mi_value(&m, &[1, 2]).unwrap());
        assert_eq!(gaussian_mi_value(&m, &[]).unwrap(), 0.0);
    }

    #[test]
    fn rejects_indefinite_and_asymmetric() {
        let bad = vec![vec![1.0, 2.0], vec![2.0, 1.0]];
        assert!(GaussianModel::new(&bad).is_err());
        let asym = vec![vec![1.0, 0.1], vec![0.2, 1.0]];
        assert!(GaussianModel::new(&asym).is_err());
        let ragged = vec![vec![1.0, 0.1], vec![0.2]];
        assert!(GaussianModel::new(&ragged).is_err());
    }
}

//! Default verification tolerances. Every threshold can be replaced, e.g. by
//! the CLI's `--tol`.

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// `|e1 + e2 + e3| / max |e_j|`.
    pub half_period_sum: f64,
    /// Theta-path `p` vs lattice sum at radius 400, absolute.
    pub lattice_oracle: f64,
    /// `lambda` functional equations and the complement identity.
    pub lambda_identity: f64,
    pub cross_ratio: f64,
    pub bilinearity: f64,
    pub translation: f64,
    /// Half-period closed form vs Arakelov-Green double sum.
    pub oracle_agreement: f64,
    pub adjunction: f64,
    /// Adding a constant to the Green kernel; exact up to summation rounding.
    pub flexibility_constant: f64,
    pub flexibility_smooth: f64,
    /// Relative spread of the finite-difference Laplacian of the Green function.
    pub laplacian_spread: f64,
    pub massey_chain: f64,
    pub massey_period: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            half_period_sum: 1e-9,
            lattice_oracle: 1e-6,
            lambda_identity: 1e-9,
            cross_ratio: 1e-12,
            bilinearity: 1e-12,
            translation: 1e-10,
            oracle_agreement: 1e-8,
            adjunction: 1e-10,
            flexibility_constant: 1e-13,
            flexibility_smooth: 1e-10,
            laplacian_spread: 1e-4,
            massey_chain: 1e-8,
            massey_period: 1e-9,
        }
    }
}

impl Tolerances {
    /// The same threshold everywhere.
    pub fn uniform(tol: f64) -> Self {
        Tolerances {
            half_period_sum: tol,
            lattice_oracle: tol,
            lambda_identity: tol,
            cross_ratio: tol,
            bilinearity: tol,
            translation: tol,
            oracle_agreement: tol,
            adjunction: tol,
            flexibility_constant: tol,
            flexibility_smooth: tol,
            laplacian_spread: tol,
            massey_chain: tol,
            massey_period: tol,
        }
    }
}

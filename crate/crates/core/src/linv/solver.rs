//! The universal-norm membership system θ·w = b·U + c·z₁, solved for
//! unknowns in Q_p by Gaussian elimination over the Q_p-coordinates.

use super::case::{CaseData, CaseType};
use super::LinvError;
use crate::galois::LogVector;
use crate::padic::LocalElement;

/// Σ_i x_i·column_i = rhs, with every x_i in Q_p.
#[derive(Clone, Debug)]
pub struct LinearSystem {
    pub names: Vec<&'static str>,
    pub columns: Vec<LogVector>,
    pub rhs: LogVector,
}

#[derive(Clone, Debug)]
pub struct Solution {
    /// Values in Q_p, embedded in F, in the order of the system's names.
    pub values: Vec<LocalElement>,
    /// Σ x_i·column_i − rhs.
    pub residual: LogVector,
}

impl Solution {
    /// A lower bound (1/e units) on the valuation of every residual entry:
    /// the valuation of a nonzero entry, the tracked precision of a zero one.
    pub fn residual_valuation(&self) -> i64 {
        residual_bound(&self.residual)
    }
}

/// The system together with the choices made while building it.
#[derive(Clone, Debug)]
pub struct MembershipSystem {
    pub system: LinearSystem,
    pub sigma_tilde: Option<usize>,
    pub z1: Option<LogVector>,
}

fn residual_bound(r: &LogVector) -> i64 {
    r.entries()
        .iter()
        .map(|e| e.val_units().unwrap_or_else(|| e.abs_precision()))
        .min()
        .unwrap_or(crate::padic::EXACT_ZERO)
}

fn pivot_row(rows: &[Vec<LocalElement>], col: usize, from: usize) -> Option<usize> {
    (from..rows.len())
        .filter(|&r| !rows[r][col].is_zero())
        .min_by_key(|&r| rows[r][col].val_units().expect("nonzero"))
}

impl LinearSystem {
    /// Expands every F-coordinate into Q_p rows, eliminates with the pivot
    /// of largest absolute value in each column, and requires every residual
    /// to vanish modulo uniformizer^target.
    pub fn solve(&self, target: i64) -> Result<Solution, LinvError> {
        let m = self.names.len();
        let field = self.rhs.field();
        let base = field.base_field();
        let mut rows: Vec<Vec<LocalElement>> = Vec::new();
        for s in 0..self.rhs.len() {
            let cols: Vec<Vec<LocalElement>> = self.columns.iter().map(|c| c.get(s).base_coords()).collect();
            let rhs = self.rhs.get(s).base_coords();
            for (k, r) in rhs.into_iter().enumerate() {
                let mut row: Vec<LocalElement> = cols.iter().map(|c| c[k].clone()).collect();
                row.push(r);
                rows.push(row);
            }
        }
        for col in 0..m {
            let r = pivot_row(&rows, col, col).ok_or(LinvError::SingularPivot(self.names[col]))?;
            if rows[r][col].val_units().expect("nonzero") >= target {
                return Err(LinvError::SingularPivot(self.names[col]));
            }
            rows.swap(col, r);
            let piv = rows[col][col].clone();
            for r in col + 1..rows.len() {
                if rows[r][col].is_exact_zero() {
                    continue;
                }
                let factor = rows[r][col].checked_div(&piv)?;
                for c in col..=m {
                    let t = &factor * &rows[col][c];
                    rows[r][c] = &rows[r][c] - &t;
                }
            }
        }
        let mut x = vec![LocalElement::zero(&base); m];
        for col in (0..m).rev() {
            let mut acc = rows[col][m].clone();
            for c in col + 1..m {
                acc = &acc - &(&rows[col][c] * &x[c]);
            }
            x[col] = acc.checked_div(&rows[col][col])?;
        }
        let values: Vec<LocalElement> = x.iter().map(|v| LocalElement::from_base(field, v)).collect();
        let mut residual = self.rhs.scale(&LocalElement::from_int(field, -1))?;
        for (v, c) in values.iter().zip(&self.columns) {
            residual = residual.add(&c.scale(v)?)?;
        }
        if !residual.vanishes_to(target) {
            let worst = residual_bound(&residual);
            return Err(LinvError::InconsistentSystem { valuation: worst.to_string(), target });
        }
        Ok(Solution { values, residual })
    }
}

impl CaseData {
    /// θ·1_D·X − b·U − c·z₁ = −θ·B, unknowns per case.
    pub fn membership_system(&self) -> Result<MembershipSystem, LinvError> {
        let g = &self.group;
        let w = self.theta.apply_affine(&self.build_w_vector(), g)?;
        let minus = LocalElement::from_int(&self.local, -1);
        let rhs = w.constant.scale(&minus)?;
        let mut names = vec!["X"];
        let mut columns = vec![w.coeff];
        let mut sigma_tilde = None;
        let mut z1 = None;
        if matches!(self.case_type, CaseType::IqInert | CaseType::Exotic) {
            let eps = self.v_eps.as_ref().ok_or_else(|| LinvError::InvalidCase("units.epsilon missing".into()))?;
            names.push("b");
            columns.push(self.theta.apply(eps, g)?.scale(&minus)?);
        }
        if matches!(self.case_type, CaseType::RqInert | CaseType::Exotic) {
            let sigma2 = self.uv_components()?.sigma2;
            let (s, z) = self.z1_vector(sigma2)?;
            names.push("c");
            columns.push(z.scale(&minus)?);
            sigma_tilde = Some(s);
            z1 = Some(z);
        }
        Ok(MembershipSystem { system: LinearSystem { names, columns, rhs }, sigma_tilde, z1 })
    }

    /// X + log ι(π) from the solved system.
    pub fn l_gr_solver_from(&self, sol: &Solution) -> LocalElement {
        &sol.values[0] + &self.log_pi
    }

    pub fn l_gr_solver(&self) -> Result<LocalElement, LinvError> {
        let sys = self.membership_system()?;
        let sol = sys.system.solve(self.agree_target())?;
        Ok(self.l_gr_solver_from(&sol))
    }
}

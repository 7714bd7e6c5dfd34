use super::all_perms;
use crate::eigen::symmetric_eigenvalues;
use crate::error::{cap, Result};
use crate::exactcomb::derangements;
use num_traits::ToPrimitive;

pub const SPECTRUM_CAP: u32 = 6;

#[derive(Debug, Clone)]
pub struct SpectrumReport {
    pub n: u32,
    pub d_n: f64,
    pub lambda0: f64,
    /// Most negative eigenvalue; compared with -d_n/(n-1).
    pub lambda1: f64,
    pub expected_lambda1: f64,
    /// Largest |λ| after removing one copy of d_n and every copy of the minimum.
    pub lambda2_abs: f64,
    /// |λ2| n^2 / d_n; reported only.
    pub lambda2_ratio: f64,
    pub lambda0_ok: bool,
    pub lambda1_ok: bool,
    pub eigenvalues: Vec<f64>,
}

/// Dense eigensolve of the derangement graph Γ_n.
pub fn derangement_graph_spectrum(n: u32) -> Result<SpectrumReport> {
    if n > SPECTRUM_CAP {
        return Err(cap("n for the dense spectrum", n, SPECTRUM_CAP));
    }
    let n = n.max(2);
    let perms = all_perms(n);
    let adj: Vec<Vec<f64>> = perms
        .iter()
        .map(|a| {
            perms
                .iter()
                .map(|b| if a.image().iter().zip(b.image()).all(|(x, y)| x != y) { 1.0 } else { 0.0 })
                .collect()
        })
        .collect();
    let ev = symmetric_eigenvalues(&adj);
    let d_n = derangements(n as usize).d[n as usize].to_f64().unwrap_or(f64::INFINITY);
    let tol = 1e-6 * d_n;
    let lambda0 = *ev.last().expect("nonempty spectrum");
    let lambda1 = ev[0];
    let expected_lambda1 = -d_n / (n as f64 - 1.0);
    let mut rest = ev.clone();
    rest.pop();
    let lambda2_abs = rest.iter().filter(|x| (*x - lambda1).abs() > tol).map(|x| x.abs()).fold(0.0, f64::max);
    Ok(SpectrumReport {
        n,
        d_n,
        lambda0,
        lambda1,
        expected_lambda1,
        lambda2_abs,
        lambda2_ratio: lambda2_abs * (n * n) as f64 / d_n,
        lambda0_ok: (lambda0 - d_n).abs() <= tol,
        lambda1_ok: (lambda1 - expected_lambda1).abs() <= tol,
        eigenvalues: ev,
    })
}

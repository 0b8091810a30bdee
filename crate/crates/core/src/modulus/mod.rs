//! Minimal moduli of continuity: the grid oracle, the exact analysis of `ω_g`,
//! and least concave majorants.

mod exact;
mod grid;
mod majorant;

pub use exact::{
    boundary_set, critical_set, delta_star, find_delta_star, g_derivative, max_phi_boundary,
    max_phi_critical, omega_g_closed, omega_g_closed_with, phi, psi, CriticalSet, FlatComponent,
    CASE_TOLERANCE, DEFAULT_DELTA_STAR_TOL,
};
pub use grid::{modulus_grid, uniform_grid, ModulusTable, TableSource};
pub use majorant::concave_majorant;

/// Closed-form `ω_g` tabulated on `grid_n` points of `[0, 7]`.
pub fn omega_g_table(grid_n: usize) -> crate::Result<ModulusTable> {
    let ds = delta_star();
    ModulusTable::from_fn(7.0, grid_n, TableSource::ClosedForm, |d| {
        omega_g_closed_with(d, ds)
    })
}

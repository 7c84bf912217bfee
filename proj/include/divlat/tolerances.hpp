#pragma once

// Every floating-point tolerance used by the numerical modules, in one place.
namespace divlat::tol {

// Lattice enumeration: relative/absolute slack added to the float search
// radius; every candidate is re-verified in exact arithmetic.
inline constexpr double enum_margin = 1e-9;
inline constexpr double enum_abs = 1e-12;

// SPD tests: smallest acceptable eigenvalue of the trace-form Gram matrix,
// relative to its largest eigenvalue (and at least this absolute value).
inline constexpr double spd_eig = 1e-10;

// Symmetry check ||x - x*|| <= symmetry_rel * max(1, ||x||).
inline constexpr double symmetry_rel = 1e-9;

// Square-root iteration: stop when successive iterates are this close
// (relative), fail after the iteration cap.
inline constexpr double sqrt_step = 1e-12;
inline constexpr unsigned sqrt_max_iter = 100;

// Residual acceptance thresholds.
inline constexpr double cholesky_recon_rel = 1e-9;
inline constexpr double kappa_unitary = 1e-8;
inline constexpr double kan_recon_rel = 1e-8;

// Window around 1 accepted for the norm of a decomposition input.
inline constexpr double kan_norm_window = 1e-6;

// Slack in the trace-vs-norm inequality check.
inline constexpr double norm_trace_slack = 1e-12;

// Involution identities in tests.
inline constexpr double involution_check = 1e-12;

// Below this, a determinant counts as singular.
inline constexpr double singular_floor = 1e-12;

}  // namespace divlat::tol

#pragma once

// Every numerical tolerance used by the library, in one place.
namespace eurw::tol {

inline constexpr double hermiticity = 1e-10;      // max |M - M†| for Hermitian inputs
inline constexpr double reconstruction = 1e-9;    // eigh residual ‖VΛV† - M‖_max
inline constexpr double orthonormality = 1e-9;    // ‖V†V - I‖_max for bases / eigenvectors
inline constexpr double trace_one = 1e-10;        // |tr ρ - 1| for density matrices
inline constexpr double negativity = 1e-10;       // eigenvalues in [-negativity, 0) clip to 0
inline constexpr double prob_clip = 1e-12;        // probabilities below this clip to exact 0
inline constexpr double support_cut = 1e-12;      // σ eigenvalues below this count as outside support
inline constexpr double distribution_sum = 1e-9;  // |Σp - 1| for outcome distributions
inline constexpr double degeneracy = 1e-9;        // ground-level clustering window
inline constexpr double bisection = 1e-6;         // |Δp| target for threshold scans

}  // namespace eurw::tol

#pragma once

#include <functional>

#include "eurw/witness.hpp"

namespace eurw {

/// Two distinguishable particles hopping on an open chain of `sites` sites,
/// with on-site inter-particle interaction.
struct HubbardSpec {
  int sites = 2;          // L
  double hopping = 1.0;   // J
  double interaction = 0.0;  // U
};

/// Single-particle hopping matrix: -J on the super/sub diagonal, open boundary.
ComplexMatrix hopping_matrix(int sites, double hopping);

/// Two-particle Hamiltonian h₁⊗I + I⊗h₁ + U·D, with D projecting onto the
/// doubly occupied configurations |i⟩|i⟩. Exactly Hermitian.
ComplexMatrix hubbard_hamiltonian(const HubbardSpec& spec);

struct GroundState {
  DensityState state;
  bool degenerate;  // ground level clustered within tol::degeneracy
  double energy;
};

/// Projector onto the lowest eigenvector; for a degenerate ground level the
/// normalized projector onto the whole cluster. Convention: "ground" means the
/// minimal eigenvalue, so ground(-σ_z) = |0⟩⟨0| because -σ_z|0⟩ = -|0⟩.
GroundState ground_state(const ComplexMatrix& hamiltonian, std::vector<int> dims,
                         std::vector<std::string> labels = {});

/// Position (site) basis of one particle.
ProjectiveBasis site_basis(int sites);

/// Site basis evolved by the free hopping Hamiltonian: columns of
/// exp(+i·t·h₁(J=1)). Time in units of 1/J; t = 0 gives the site basis.
ProjectiveBasis tilted_basis(int sites, double time);

enum class WernerFamily { ghz, w };

struct WernerSpec {
  WernerFamily family = WernerFamily::ghz;
  double p = 0.0;  // mixing weight in [0, 1]
};

/// p·|ψ⟩⟨ψ| + (1-p)·I/8 with ψ the GHZ or W state.
DensityState werner_state(const WernerSpec& spec);

DensityState ghz_state(int parties = 3);
DensityState w_state();

/// Eigenbases of σ_x, σ_y, σ_z; columns ordered (+1, -1) eigenvector.
ProjectiveBasis pauli_basis(char axis);

/// Qubit basis (cos θ, sin θ), (-sin θ, cos θ); θ = π/8 diagonalizes
/// (σ_z+σ_x)/√2.
ProjectiveBasis rotated_basis(double theta);

/// Zero crossing of a bound that increases through 0 on [lo, hi].
/// Monotonicity is checked on the grid first; bisection refines the bracket to
/// |Δ| ≤ tol::bisection. Throws NoCrossing when the sign never changes.
double find_zero_crossing(const std::function<double(double)>& bound, double lo,
                          double hi, int grid_points = 101);

/// Convenience: threshold of the tripartite witness over the Werner family.
double werner_threshold(WernerFamily family, const std::vector<PartyBases>& setups,
                        WitnessMode mode, double lo = 0.0, double hi = 1.0,
                        int grid_points = 101);

}  // namespace eurw

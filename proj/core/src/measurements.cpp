#include "eurw/measurements.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace eurw {

ProjectiveBasis::ProjectiveBasis(std::string name, ComplexMatrix vectors)
    : name_(std::move(name)), vectors_(std::move(vectors)) {
  if (vectors_.rows() != vectors_.cols()) {
    throw DimensionMismatch("ProjectiveBasis '" + name_ +
                            "': need a complete basis (square vector matrix)");
  }
  const ComplexMatrix gram = vectors_.adjoint() * vectors_;
  const ComplexMatrix eye = ComplexMatrix::Identity(vectors_.cols(), vectors_.cols());
  if ((gram - eye).cwiseAbs().maxCoeff() > tol::orthonormality) {
    throw InvalidState("ProjectiveBasis '" + name_ + "': columns not orthonormal");
  }
}

OverlapMatrix overlaps(const ProjectiveBasis& b1, const ProjectiveBasis& b2) {
  if (b1.dim() != b2.dim()) {
    throw DimensionMismatch("overlaps: bases live on different dimensions");
  }
  return (b1.vectors().adjoint() * b2.vectors()).cwiseAbs2();
}

namespace {

struct PartyIndexer {
  std::vector<int> dims;
  std::vector<int> strides;
  explicit PartyIndexer(const std::vector<int>& d) : dims(d), strides(d.size(), 1) {
    for (int k = static_cast<int>(d.size()) - 2; k >= 0; --k) {
      strides[k] = strides[k + 1] * dims[k + 1];
    }
  }
  int component(int flat, int party) const { return (flat / strides[party]) % dims[party]; }
};

void check_assignment(const DensityState& rho, const BasisAssignment& assignments) {
  for (const auto& [party, basis] : assignments) {
    if (party < 0 || party >= rho.num_parties()) {
      throw PartyError("assignment names party " + std::to_string(party));
    }
    if (basis.dim() != rho.party_dim(party)) {
      throw DimensionMismatch("basis '" + basis.name() + "' does not fit party " +
                              rho.label(party));
    }
  }
}

/// Product rotation U = ⊗ (basis or identity); U† ρ U expresses ρ in the
/// assigned product basis.
ComplexMatrix product_rotation(const DensityState& rho, const BasisAssignment& assignments) {
  ComplexMatrix u = ComplexMatrix::Identity(1, 1);
  for (int party = 0; party < rho.num_parties(); ++party) {
    auto it = assignments.find(party);
    if (it == assignments.end()) {
      u = kron(u, ComplexMatrix::Identity(rho.party_dim(party), rho.party_dim(party)));
    } else {
      u = kron(u, it->second.vectors());
    }
  }
  return u;
}

}  // namespace

DensityState dephase(const DensityState& rho, const BasisAssignment& assignments) {
  check_assignment(rho, assignments);
  const ComplexMatrix u = product_rotation(rho, assignments);
  ComplexMatrix r = u.adjoint() * rho.matrix() * u;
  const PartyIndexer idx(rho.dims());
  for (Eigen::Index a = 0; a < r.rows(); ++a) {
    for (Eigen::Index b = 0; b < r.cols(); ++b) {
      for (const auto& [party, basis] : assignments) {
        (void)basis;
        if (idx.component(static_cast<int>(a), party) !=
            idx.component(static_cast<int>(b), party)) {
          r(a, b) = Complex(0, 0);
          break;
        }
      }
    }
  }
  return DensityState(u * r * u.adjoint(), rho.dims(), rho.labels());
}

double OutcomeDistribution::sum() const {
  return std::accumulate(probabilities.begin(), probabilities.end(), 0.0);
}

void OutcomeDistribution::validate() const {
  std::size_t expect = 1;
  for (const auto& ax : axes) expect *= static_cast<std::size_t>(ax.outcomes);
  if (expect != probabilities.size()) {
    throw InvalidDistribution("OutcomeDistribution: table size mismatch");
  }
  for (double p : probabilities) {
    if (p < 0.0) throw InvalidDistribution("OutcomeDistribution: negative probability");
  }
  if (std::abs(sum() - 1.0) > tol::distribution_sum) {
    throw InvalidDistribution("OutcomeDistribution: probabilities do not sum to 1");
  }
}

OutcomeDistribution OutcomeDistribution::marginal(const std::vector<int>& keep_axes) const {
  std::vector<int> kept(keep_axes);
  std::sort(kept.begin(), kept.end());
  kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
  for (int k : kept) {
    if (k < 0 || k >= num_axes()) throw AxisError("marginal: axis out of range");
  }
  OutcomeDistribution out;
  std::size_t out_size = 1;
  for (int k : kept) {
    out.axes.push_back(axes[k]);
    out_size *= static_cast<std::size_t>(axes[k].outcomes);
  }
  out.probabilities.assign(out_size, 0.0);

  std::vector<int> dims, kept_strides(kept.size(), 1);
  for (const auto& ax : axes) dims.push_back(ax.outcomes);
  const PartyIndexer idx(dims);
  {
    int s = static_cast<int>(out_size);
    for (std::size_t k = 0; k < kept.size(); ++k) {
      s /= dims[kept[k]];
      kept_strides[k] = s;
    }
  }
  for (std::size_t flat = 0; flat < probabilities.size(); ++flat) {
    int o = 0;
    for (std::size_t k = 0; k < kept.size(); ++k) {
      o += idx.component(static_cast<int>(flat), kept[k]) * kept_strides[k];
    }
    out.probabilities[o] += probabilities[flat];
  }
  return out;
}

OutcomeDistribution joint_distribution(const DensityState& rho,
                                       const BasisAssignment& assignments) {
  if (static_cast<int>(assignments.size()) != rho.num_parties()) {
    throw PartyError("joint_distribution: every party needs a basis");
  }
  check_assignment(rho, assignments);
  const ComplexMatrix u = product_rotation(rho, assignments);
  const ComplexMatrix r = u.adjoint() * rho.matrix() * u;

  OutcomeDistribution out;
  for (int party = 0; party < rho.num_parties(); ++party) {
    const auto& basis = assignments.at(party);
    out.axes.push_back({party, basis.name(), basis.dim()});
  }
  out.probabilities.resize(static_cast<std::size_t>(rho.dim()));
  for (int i = 0; i < rho.dim(); ++i) {
    double p = r(i, i).real();
    if (p < -tol::prob_clip) {
      throw InvalidDistribution("joint_distribution: negative probability beyond tolerance");
    }
    out.probabilities[static_cast<std::size_t>(i)] = (p < tol::prob_clip) ? 0.0 : p;
  }
  out.validate();
  return out;
}

double shannon_entropy(const OutcomeDistribution& dist) {
  double h = 0.0;
  for (double p : dist.probabilities) {
    if (p > 0.0) h -= p * std::log2(p);
  }
  return h < 0.0 ? 0.0 : h;
}

double classical_conditional_entropy(const OutcomeDistribution& dist,
                                     const std::vector<int>& target_axes,
                                     const std::vector<int>& conditioning_axes) {
  for (int t : target_axes) {
    for (int c : conditioning_axes) {
      if (t == c) throw AxisError("classical_conditional_entropy: axis sets overlap");
    }
  }
  std::vector<int> joint(target_axes);
  joint.insert(joint.end(), conditioning_axes.begin(), conditioning_axes.end());
  const double h_joint = shannon_entropy(dist.marginal(joint));
  const double h_cond =
      conditioning_axes.empty() ? 0.0 : shannon_entropy(dist.marginal(conditioning_axes));
  const double h = h_joint - h_cond;
  return h < 0.0 ? 0.0 : h;
}

RealMatrix grouped_table(const OutcomeDistribution& dist, int system_party,
                         const std::vector<int>& group_parties) {
  std::vector<int> group(group_parties);
  std::sort(group.begin(), group.end());
  group.erase(std::unique(group.begin(), group.end()), group.end());

  std::vector<int> keep;
  int sys_axis = -1;
  for (int ax = 0; ax < dist.num_axes(); ++ax) {
    const int party = dist.axes[ax].party;
    if (party == system_party) {
      sys_axis = ax;
      keep.push_back(ax);
    } else if (std::find(group.begin(), group.end(), party) != group.end()) {
      keep.push_back(ax);
    }
  }
  if (sys_axis < 0) throw AxisError("grouped_table: system party has no axis");
  const OutcomeDistribution m = dist.marginal(keep);

  int sys_pos = -1;
  std::vector<int> dims;
  for (int ax = 0; ax < m.num_axes(); ++ax) {
    dims.push_back(m.axes[ax].outcomes);
    if (m.axes[ax].party == system_party) sys_pos = ax;
  }
  const int d_sys = dims[static_cast<std::size_t>(sys_pos)];
  int rest = 1;
  for (int ax = 0; ax < m.num_axes(); ++ax) {
    if (ax != sys_pos) rest *= dims[static_cast<std::size_t>(ax)];
  }
  std::vector<int> strides(dims.size(), 1);
  for (int k = static_cast<int>(dims.size()) - 2; k >= 0; --k) {
    strides[static_cast<std::size_t>(k)] = strides[static_cast<std::size_t>(k + 1)] *
                                           dims[static_cast<std::size_t>(k + 1)];
  }
  RealMatrix table = RealMatrix::Zero(d_sys, rest);
  for (std::size_t flat = 0; flat < m.probabilities.size(); ++flat) {
    const int e = (static_cast<int>(flat) / strides[static_cast<std::size_t>(sys_pos)]) % d_sys;
    int y = 0;
    for (std::size_t k = 0; k < dims.size(); ++k) {
      if (static_cast<int>(k) == sys_pos) continue;
      y = y * dims[k] + (static_cast<int>(flat) / strides[k]) % dims[k];
    }
    table(e, y) += m.probabilities[flat];
  }
  return table;
}

double table_conditional_entropy(const RealMatrix& joint) {
  double h_joint = 0.0, h_col = 0.0;
  for (int y = 0; y < joint.cols(); ++y) {
    const double p_y = joint.col(y).sum();
    if (p_y > 0.0) h_col -= p_y * std::log2(p_y);
    for (int e = 0; e < joint.rows(); ++e) {
      if (joint(e, y) > 0.0) h_joint -= joint(e, y) * std::log2(joint(e, y));
    }
  }
  const double h = h_joint - h_col;
  return h < 0.0 ? 0.0 : h;
}

double post_measurement_conditional_entropy(const DensityState& rho, int measured_party,
                                            const ProjectiveBasis& basis,
                                            const std::vector<int>& memory) {
  for (int m : memory) {
    if (m == measured_party) {
      throw PartyError("post_measurement_conditional_entropy: measured party in memory");
    }
  }
  const DensityState deph = dephase(rho, {{measured_party, basis}});
  std::vector<int> joint(memory);
  joint.push_back(measured_party);
  const double s_joint = von_neumann_entropy(deph.reduced(joint));
  const double s_mem = von_neumann_entropy(rho.reduced(memory));
  const double s = s_joint - s_mem;
  return s < 0.0 && s > -tol::reconstruction ? 0.0 : s;
}

}  // namespace eurw

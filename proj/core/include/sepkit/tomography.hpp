/*
 * Copyright 2026 The sepkit Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

// Informationally complete POVMs, dual-frame linear-inversion tomography and a
// Monte-Carlo estimate of the tomographic acceptance probability
// Tr(A_n tau^{(x)(n-1)}): the chance that linear inversion from n-1 copies of
// tau lands within trace distance eps/2 of a target state.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sepkit/linalg.hpp"
#include "sepkit/states.hpp"

namespace sepkit {

/// Elements {M_n} (PSD, summing to I) together with the dual frame {M_n*},
/// Tr(M_n M_m*) = delta_nm. Informational completeness: dim^2 elements.
class Povm {
 public:
  Povm(std::vector<Matrix> elements, std::vector<Matrix> duals, std::size_t dim);

  const std::vector<Matrix>& elements() const { return elements_; }
  const std::vector<Matrix>& duals() const { return duals_; }
  std::size_t dim() const { return dim_; }
  std::size_t size() const { return elements_.size(); }

 private:
  std::vector<Matrix> elements_;
  std::vector<Matrix> duals_;
  std::size_t dim_;
};

inline constexpr std::size_t kPovmRetries = 16;
inline constexpr std::size_t kFrameRefineSteps = 3000;

/// How the d^2 rank-1 directions are chosen. Random uses the seeded draws as
/// they are. Conditioned starts from the same draws and descends the frame
/// potential sum |<x_n|x_m>|^4 toward its 2-design minimum 2d^3/(d+1), which
/// keeps the dual frame, and hence linear-inversion noise, small.
enum class FrameConstruction { Random, Conditioned };

const char* frame_construction_name(FrameConstruction c);
FrameConstruction parse_frame_construction(const std::string& name);

/// d^2 seeded rank-1 projectors P_n, symmetrized as S^{-1/2} P_n S^{-1/2}
/// with S = sum P_n; duals from the inverse Gram matrix.
Povm build_ic_povm(std::size_t d, std::uint64_t seed, FrameConstruction construction = FrameConstruction::Conditioned);

/// {P_n (x) Q_m} with duals {P_n* (x) Q_m*}; outcome index n * |Q| + m.
Povm product_povm(const Povm& pa, const Povm& pb);

/// Product IC-POVM on a bipartite shape, factors seeded from `seed`.
Povm local_ic_povm(const BipartiteShape& shape, std::uint64_t seed,
                   FrameConstruction construction = FrameConstruction::Conditioned);

struct OutcomeCounts {
  std::vector<std::size_t> counts;
  std::size_t total = 0;
};

/// Tr(rho M_n). Throws InvariantError on a probability below -1e-12; small
/// negative values are clamped and the list renormalized.
std::vector<double> born_probabilities(const DensityMatrix& rho, const Povm& povm);

OutcomeCounts sample_outcomes(const DensityMatrix& rho, const Povm& povm, std::size_t shots, std::uint64_t seed);

/// sum_i (r_i / total) M_i*. Hermitian, not necessarily PSD.
Matrix reconstruct(const OutcomeCounts& counts, const Povm& povm);
/// sum_n p_n M_n*.
Matrix reconstruct_from_probabilities(std::span<const double> probs, const Povm& povm);

struct AcceptanceEstimate {
  double probability = 0.0;
  /// Binomial standard error sqrt(p (1 - p) / trials), never above 1/(2 sqrt(trials)).
  double standard_error = 0.0;
  std::size_t trials = 0;
};

/// Fraction of trials in which reconstruct(sample_outcomes(source, povm, n-1))
/// lies within eps/2 of `target`, distances measured as half the trace norm of
/// the Hermitian difference. Trial t uses seed derive_seed(seed, t).
AcceptanceEstimate acceptance_probability(const DensityMatrix& target, const DensityMatrix& source, std::size_t n,
                                          double eps, std::size_t trials, std::uint64_t seed, const Povm& povm);

/// Weighted average of member acceptance probabilities; member i runs with
/// seed derive_seed(seed, i) and the shared POVM.
AcceptanceEstimate mixture_acceptance(const Ensemble& ens, const DensityMatrix& target, std::size_t n, double eps,
                                      std::size_t trials, std::uint64_t seed, const Povm& povm);

}  // namespace sepkit

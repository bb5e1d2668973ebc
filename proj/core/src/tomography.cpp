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

#include "sepkit/tomography.hpp"

#include <cmath>
#include <random>
#include <string>

#include "sepkit/error.hpp"
#include "sepkit/random.hpp"

namespace sepkit {

namespace {

constexpr double kCompletenessTol = 1e-9;
constexpr double kDualityTol = 1e-8;
constexpr double kNegativeProbabilityTol = 1e-12;
constexpr double kGramRankRelTol = 1e-10;
constexpr double kFramePotentialRelTol = 1e-12;

// Tr(a b)
Complex trace_product(const Matrix& a, const Matrix& b) { return a.cwiseProduct(b.transpose()).sum(); }

Matrix inverse_sqrt_psd(const Matrix& s) {
  const EigenDecomposition e = hermitian_eig(s);
  const RealVector inv = e.values.cwiseSqrt().cwiseInverse();
  return e.vectors * inv.cast<Complex>().asDiagonal() * e.vectors.adjoint();
}

// Projected gradient descent of sum_{n,m} |<x_n|x_m>|^4 over unit rows.
void condition_frame(Matrix& frame) {
  const double d = static_cast<double>(frame.cols());
  const double floor = 2.0 * d * d * d / (d + 1.0);
  const double step = 0.5 / (d * d);
  for (std::size_t it = 0; it < kFrameRefineSteps; ++it) {
    const Matrix overlaps = frame.conjugate() * frame.transpose();
    const Eigen::MatrixXd weights = overlaps.cwiseAbs2();
    if (weights.cwiseAbs2().sum() - floor <= kFramePotentialRelTol * floor) return;
    const Matrix grad = weights.cast<Complex>().cwiseProduct(overlaps.conjugate()) * frame;
    frame -= step * grad;
    frame.rowwise().normalize();
  }
}

}  // namespace

Povm::Povm(std::vector<Matrix> elements, std::vector<Matrix> duals, std::size_t dim)
    : elements_(std::move(elements)), duals_(std::move(duals)), dim_(dim) {
  if (elements_.size() != dim_ * dim_ || duals_.size() != elements_.size()) {
    throw InvariantError("povm invariant violated: dim^2 elements and matching duals");
  }
  const auto d = static_cast<Eigen::Index>(dim_);
  Matrix sum = Matrix::Zero(d, d);
  for (const Matrix& m : elements_) {
    if (m.rows() != d || m.cols() != d) throw DimensionError("povm element has the wrong size");
    sum += m;
  }
  if (max_abs(sum - identity(dim_)) > kCompletenessTol) {
    throw InvariantError("povm invariant violated: elements sum to identity");
  }
  for (std::size_t n = 0; n < elements_.size(); ++n) {
    for (std::size_t m = 0; m < duals_.size(); ++m) {
      const Complex t = trace_product(elements_[n], duals_[m]);
      if (std::abs(t - Complex(n == m ? 1.0 : 0.0, 0.0)) > kDualityTol) {
        throw InvariantError("povm invariant violated: Tr(M_n M_m*) = delta_nm");
      }
    }
  }
}

const char* frame_construction_name(FrameConstruction c) {
  return c == FrameConstruction::Random ? "random" : "conditioned";
}

FrameConstruction parse_frame_construction(const std::string& name) {
  if (name == "random") return FrameConstruction::Random;
  if (name == "conditioned") return FrameConstruction::Conditioned;
  throw PreconditionError("unknown frame construction '" + name + "'");
}

Povm build_ic_povm(std::size_t d, std::uint64_t seed, FrameConstruction construction) {
  if (d < 2) throw PreconditionError("build_ic_povm needs d >= 2");
  const std::size_t count = d * d;
  for (std::size_t attempt = 0; attempt < kPovmRetries; ++attempt) {
    Rng rng(derive_seed(seed, attempt));
    Matrix frame(static_cast<Eigen::Index>(count), static_cast<Eigen::Index>(d));
    for (std::size_t n = 0; n < count; ++n) frame.row(static_cast<Eigen::Index>(n)) = random_unit_vector(d, rng).transpose();
    if (construction == FrameConstruction::Conditioned) condition_frame(frame);

    std::vector<Matrix> projectors;
    projectors.reserve(count);
    Matrix s = Matrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (std::size_t n = 0; n < count; ++n) {
      const Vector v = frame.row(static_cast<Eigen::Index>(n)).transpose();
      projectors.emplace_back(v * v.adjoint());
      s += projectors.back();
    }
    const Matrix sInvHalf = inverse_sqrt_psd(0.5 * (s + s.adjoint()));

    std::vector<Matrix> elements;
    elements.reserve(count);
    for (const Matrix& p : projectors) {
      Matrix m = sInvHalf * p * sInvHalf;
      elements.push_back(0.5 * (m + m.adjoint()));
    }

    Eigen::MatrixXd gram(static_cast<Eigen::Index>(count), static_cast<Eigen::Index>(count));
    for (std::size_t n = 0; n < count; ++n)
      for (std::size_t m = 0; m < count; ++m)
        gram(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(m)) = trace_product(elements[n], elements[m]).real();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> gramEig(gram, Eigen::EigenvaluesOnly);
    const Eigen::VectorXd gev = gramEig.eigenvalues();
    if (gev.minCoeff() <= kGramRankRelTol * gev.cwiseAbs().maxCoeff()) continue;

    const Eigen::MatrixXd gramInv = gram.ldlt().solve(Eigen::MatrixXd::Identity(gram.rows(), gram.cols()));
    std::vector<Matrix> duals;
    duals.reserve(count);
    for (std::size_t m = 0; m < count; ++m) {
      Matrix dual = Matrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
      for (std::size_t n = 0; n < count; ++n) dual += gramInv(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n)) * elements[n];
      duals.push_back(0.5 * (dual + dual.adjoint()));
    }
    return Povm(std::move(elements), std::move(duals), d);
  }
  throw std::runtime_error("build_ic_povm: Gram matrix rank deficient after " + std::to_string(kPovmRetries) +
                           " seeds");
}

Povm product_povm(const Povm& pa, const Povm& pb) {
  std::vector<Matrix> elements;
  std::vector<Matrix> duals;
  elements.reserve(pa.size() * pb.size());
  duals.reserve(pa.size() * pb.size());
  for (std::size_t n = 0; n < pa.size(); ++n) {
    for (std::size_t m = 0; m < pb.size(); ++m) {
      elements.push_back(tensor(pa.elements()[n], pb.elements()[m]));
      duals.push_back(tensor(pa.duals()[n], pb.duals()[m]));
    }
  }
  return Povm(std::move(elements), std::move(duals), pa.dim() * pb.dim());
}

Povm local_ic_povm(const BipartiteShape& shape, std::uint64_t seed, FrameConstruction construction) {
  return product_povm(build_ic_povm(shape.dimA, derive_seed(seed, 0), construction),
                      build_ic_povm(shape.dimB, derive_seed(seed, 1), construction));
}

std::vector<double> born_probabilities(const DensityMatrix& rho, const Povm& povm) {
  if (rho.dim() != povm.dim()) throw DimensionError("born_probabilities: state and POVM dimensions differ");
  std::vector<double> p(povm.size());
  double sum = 0.0;
  for (std::size_t n = 0; n < povm.size(); ++n) {
    const double v = trace_product(rho.matrix(), povm.elements()[n]).real();
    if (v < -kNegativeProbabilityTol) {
      throw InvariantError("born_probabilities: negative probability " + std::to_string(v));
    }
    p[n] = std::max(v, 0.0);
    sum += p[n];
  }
  for (double& v : p) v /= sum;
  return p;
}

OutcomeCounts sample_outcomes(const DensityMatrix& rho, const Povm& povm, std::size_t shots, std::uint64_t seed) {
  if (shots < 1) throw PreconditionError("sample_outcomes needs shots >= 1");
  const std::vector<double> p = born_probabilities(rho, povm);
  Rng rng(seed);
  std::discrete_distribution<std::size_t> dist(p.begin(), p.end());
  OutcomeCounts out;
  out.counts.assign(povm.size(), 0);
  out.total = shots;
  for (std::size_t s = 0; s < shots; ++s) ++out.counts[dist(rng)];
  return out;
}

Matrix reconstruct(const OutcomeCounts& counts, const Povm& povm) {
  if (counts.total == 0) throw PreconditionError("reconstruct needs at least one shot");
  if (counts.counts.size() != povm.size()) throw DimensionError("reconstruct: counts and POVM sizes differ");
  const auto d = static_cast<Eigen::Index>(povm.dim());
  Matrix est = Matrix::Zero(d, d);
  const double total = static_cast<double>(counts.total);
  for (std::size_t i = 0; i < povm.size(); ++i) {
    if (counts.counts[i] != 0) est += (static_cast<double>(counts.counts[i]) / total) * povm.duals()[i];
  }
  return est;
}

Matrix reconstruct_from_probabilities(std::span<const double> probs, const Povm& povm) {
  if (probs.size() != povm.size()) throw DimensionError("reconstruct: probabilities and POVM sizes differ");
  const auto d = static_cast<Eigen::Index>(povm.dim());
  Matrix est = Matrix::Zero(d, d);
  for (std::size_t i = 0; i < povm.size(); ++i) est += probs[i] * povm.duals()[i];
  return est;
}

AcceptanceEstimate acceptance_probability(const DensityMatrix& target, const DensityMatrix& source, std::size_t n,
                                          double eps, std::size_t trials, std::uint64_t seed, const Povm& povm) {
  if (n < 2) throw PreconditionError("acceptance_probability needs n >= 2 (estimates use n - 1 copies)");
  if (trials < 1) throw PreconditionError("acceptance_probability needs trials >= 1");
  if (!(target.shape() == source.shape())) throw DimensionError("acceptance_probability: target and source shapes differ");
  if (target.dim() != povm.dim()) throw DimensionError("acceptance_probability: POVM dimension mismatch");

  std::size_t accepted = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    const OutcomeCounts counts = sample_outcomes(source, povm, n - 1, derive_seed(seed, t));
    const double dist = 0.5 * hermitian_trace_norm(reconstruct(counts, povm) - target.matrix());
    if (dist <= 0.5 * eps) ++accepted;
  }
  AcceptanceEstimate out;
  out.trials = trials;
  out.probability = static_cast<double>(accepted) / static_cast<double>(trials);
  out.standard_error = std::sqrt(out.probability * (1.0 - out.probability) / static_cast<double>(trials));
  return out;
}

AcceptanceEstimate mixture_acceptance(const Ensemble& ens, const DensityMatrix& target, std::size_t n, double eps,
                                      std::size_t trials, std::uint64_t seed, const Povm& povm) {
  AcceptanceEstimate out;
  out.trials = trials;
  double variance = 0.0;
  for (std::size_t i = 0; i < ens.size(); ++i) {
    const auto& member = ens.members()[i];
    const AcceptanceEstimate e = acceptance_probability(target, member.state, n, eps, trials, derive_seed(seed, i), povm);
    out.probability += member.weight * e.probability;
    variance += member.weight * member.weight * e.standard_error * e.standard_error;
  }
  out.standard_error = std::sqrt(variance);
  return out;
}

}  // namespace sepkit

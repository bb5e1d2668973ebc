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

#include "sepkit/closure.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>

#include "sepkit/error.hpp"
#include "sepkit/random.hpp"
#include "sepkit/symext.hpp"

namespace sepkit {

namespace {

constexpr std::size_t kMaxRejections = 500;

SubAssertion bound_below(std::string name, double margin) {
  return {std::move(name), margin, kClosureTol, margin >= -kClosureTol};
}

SubAssertion small_error(std::string name, double error) {
  return {std::move(name), error, kClosureTol, error <= kClosureTol};
}

RealVector sorted_desc(RealVector v) {
  std::sort(v.data(), v.data() + v.size(), std::greater<>());
  return v;
}

RealVector kron(const RealVector& a, const RealVector& b) {
  RealVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

// min_k (prefix_k(dominant) - prefix_k(dominated)), shorter list zero-padded.
double min_prefix_gap(const RealVector& dominant, const RealVector& dominated) {
  const Eigen::Index n = std::max(dominant.size(), dominated.size());
  double a = 0.0;
  double b = 0.0;
  double gap = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (i < dominant.size()) a += dominant(i);
    if (i < dominated.size()) b += dominated(i);
    gap = std::min(gap, a - b);
  }
  return gap;
}

void reduction_lemma(std::vector<SubAssertion>& out, const std::string& side, const Matrix& x, const Matrix& y,
                     const Matrix& z, const Matrix& w) {
  const Matrix t1 = tensor(Matrix(x - y), Matrix(z + w));
  const Matrix t2 = tensor(Matrix(x + y), Matrix(z - w));
  out.push_back(bound_below("reduction_" + side + "_term1_psd", psd_margin(t1)));
  out.push_back(bound_below("reduction_" + side + "_term2_psd", psd_margin(t2)));
  out.push_back(small_error("reduction_" + side + "_decomposition", max_abs(tensor(x, z) - tensor(y, w) - 0.5 * (t1 + t2))));
}

void add_sub_assertions(Criterion criterion, const DensityMatrix& rho, const DensityMatrix& sigma,
                        const DensityMatrix& product, std::vector<SubAssertion>& out) {
  const BipartiteShape rs = rho.shape();
  const BipartiteShape ss = sigma.shape();
  switch (criterion) {
    case Criterion::Ppt: {
      const std::size_t dims[] = {rs.dimA, rs.dimB, ss.dimA, ss.dimB};
      const std::size_t perm[] = {0, 2, 1, 3};
      const Matrix expected = permute_systems(
          tensor(partial_transpose(rho.matrix(), rs), partial_transpose(sigma.matrix(), ss)), dims, perm);
      out.push_back(small_error("ppt_transpose_factorizes", max_abs(partial_transpose(product.matrix(), product.shape()) - expected)));
      break;
    }
    case Criterion::Reduction: {
      const Matrix rA = partial_trace(rho.matrix(), rs, Subsystem::A);
      const Matrix rB = partial_trace(rho.matrix(), rs, Subsystem::B);
      const Matrix sA = partial_trace(sigma.matrix(), ss, Subsystem::A);
      const Matrix sB = partial_trace(sigma.matrix(), ss, Subsystem::B);
      reduction_lemma(out, "A", tensor(rA, identity(rs.dimB)), rho.matrix(), tensor(sA, identity(ss.dimB)),
                      sigma.matrix());
      reduction_lemma(out, "B", tensor(identity(rs.dimA), rB), rho.matrix(), tensor(identity(ss.dimA), sB),
                      sigma.matrix());
      break;
    }
    case Criterion::Entropic2:
    case Criterion::EntropicVonNeumann: {
      const EntropyOrder order = criterion == Criterion::Entropic2 ? EntropyOrder::Two : EntropyOrder::VonNeumann;
      const double joint = renyi_entropy(hermitian_eigenvalues(product.matrix()), order);
      const double sum = renyi_entropy(hermitian_eigenvalues(rho.matrix()), order) +
                         renyi_entropy(hermitian_eigenvalues(sigma.matrix()), order);
      out.push_back({"entropy_additivity", std::abs(joint - sum), 1e-9, std::abs(joint - sum) <= 1e-9});
      break;
    }
    case Criterion::Majorization: {
      const RealVector lAB = sorted_desc(kron(hermitian_eigenvalues(rho.matrix()), hermitian_eigenvalues(sigma.matrix())));
      for (Subsystem side : {Subsystem::A, Subsystem::B}) {
        const std::string tag = side == Subsystem::A ? "A" : "B";
        const RealVector lM = sorted_desc(kron(hermitian_eigenvalues(partial_trace(rho.matrix(), rs, side)),
                                               hermitian_eigenvalues(partial_trace(sigma.matrix(), ss, side))));
        out.push_back(bound_below("majorization_kron_prefix_" + tag, min_prefix_gap(lM, lAB)));
        const RealVector direct = hermitian_eigenvalues(partial_trace(product.matrix(), product.shape(), side));
        out.push_back(small_error("majorization_marginal_spectrum_" + tag, (direct - lM).cwiseAbs().maxCoeff()));
      }
      break;
    }
    case Criterion::CrossNorm: {
      const Matrix kronRealigned = tensor(realign(rho.matrix(), rs), realign(sigma.matrix(), ss));
      const std::size_t rowDims[] = {rs.dimA, rs.dimA, ss.dimA, ss.dimA};
      const std::size_t colDims[] = {rs.dimB, rs.dimB, ss.dimB, ss.dimB};
      const std::size_t perm[] = {0, 2, 1, 3};
      const Matrix expected = permute_factors(kronRealigned, rowDims, perm, colDims, perm);
      out.push_back(small_error("cross_norm_realign_factorizes", max_abs(realign(product.matrix(), product.shape()) - expected)));
      const double lhs = trace_norm(realign(product.matrix(), product.shape()));
      const double rhs = trace_norm(realign(rho.matrix(), rs)) * trace_norm(realign(sigma.matrix(), ss));
      out.push_back(small_error("cross_norm_multiplicative", std::abs(lhs - rhs)));
      break;
    }
    case Criterion::SymmetricExtension:
      break;
  }
}

bool passes(Criterion c, const DensityMatrix& rho, const RunAllOptions& opts) { return evaluate(c, rho, opts).passed; }

}  // namespace

DensityMatrix bipartite_product(const DensityMatrix& rho, const DensityMatrix& sigma, std::size_t cap) {
  const BipartiteShape rs = rho.shape();
  const BipartiteShape ss = sigma.shape();
  if (rs.total() > cap / ss.total()) throw CapExceededError("bipartite product exceeds dimension cap");
  const std::size_t dims[] = {rs.dimA, rs.dimB, ss.dimA, ss.dimB};
  const std::size_t perm[] = {0, 2, 1, 3};
  return DensityMatrix::trusted(permute_systems(tensor(rho.matrix(), sigma.matrix()), dims, perm),
                                {rs.dimA * ss.dimA, rs.dimB * ss.dimB});
}

Matrix compose_extensions(const Matrix& x, const BipartiteShape& xs, const Matrix& y, const BipartiteShape& ys,
                          std::size_t copies) {
  std::vector<std::size_t> dims{xs.dimA};
  dims.insert(dims.end(), copies, xs.dimB);
  dims.push_back(ys.dimA);
  dims.insert(dims.end(), copies, ys.dimB);
  // A, A', B_1, B'_1, ..., B_k, B'_k
  std::vector<std::size_t> perm{0, copies + 1};
  for (std::size_t i = 1; i <= copies; ++i) {
    perm.push_back(i);
    perm.push_back(copies + 1 + i);
  }
  return permute_systems(tensor(x, y), dims, perm);
}

ClosureCheck closure_check(Criterion criterion, const DensityMatrix& rho, const DensityMatrix& sigma,
                           const RunAllOptions& opts) {
  if (!passes(criterion, rho, opts) || !passes(criterion, sigma, opts)) {
    throw PreconditionError("closure_check: both inputs must pass " + std::string(criterion_name(criterion)));
  }
  const DensityMatrix product = bipartite_product(rho, sigma);
  ClosureCheck out;
  out.product_verdict = evaluate(criterion, product, opts);
  add_sub_assertions(criterion, rho, sigma, product, out.sub_assertions);

  const double allowed = std::max(out.product_verdict.tolerance, kClosureTol);
  out.violation = out.product_verdict.margin < -allowed;
  for (const auto& s : out.sub_assertions) out.violation = out.violation || !s.ok;
  return out;
}

ClosureCheck symext_closure_constructive(const SeparableSample& rho, const SeparableSample& sigma,
                                         std::size_t copies) {
  const Matrix wr = extend_separable(rho.ensemble, copies);
  const Matrix ws = extend_separable(sigma.ensemble, copies);
  const Matrix composed = compose_extensions(wr, rho.state.shape(), ws, sigma.state.shape(), copies);
  const DensityMatrix product = bipartite_product(rho.state, sigma.state);
  const ExtensionCheck check = verify_extension(composed, product, copies);

  ClosureCheck out;
  out.sub_assertions.push_back(small_error("symext_hermitian", check.hermitian_error));
  out.sub_assertions.push_back(small_error("symext_symmetric", check.symmetry_error));
  out.sub_assertions.push_back(small_error("symext_marginal", check.marginal_error));
  out.sub_assertions.push_back(bound_below("symext_psd", check.psd_margin));
  const double worst = std::max({check.hermitian_error, check.symmetry_error, check.marginal_error,
                                 std::max(0.0, -check.psd_margin)});
  out.product_verdict = make_verdict("symmetric_extension", -worst, kClosureTol);
  out.product_verdict.notes.push_back("extension composed from separable witnesses; no solver run");
  out.violation = !check.ok(kClosureTol);
  return out;
}

ClosureSweepReport closure_sweep(Criterion criterion, std::size_t trials, std::uint64_t seed) {
  const BipartiteShape shape{2, 2};
  ClosureSweepReport report;
  report.criterion = std::string(criterion_name(criterion));
  report.trials = trials;
  report.min_margin = std::numeric_limits<double>::infinity();
  report.max_margin = -std::numeric_limits<double>::infinity();
  if (trials == 0) {
    report.min_margin = report.max_margin = 0.0;
    return report;
  }

  Rng rng(derive_seed(seed, 0));
  std::uniform_int_distribution<std::size_t> kDist(1, 6);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  auto separable = [&](std::uint64_t s) {
    ++report.separable_inputs;
    return random_separable(shape, kDist(rng), s);
  };
  // Random state pulled toward I/4 by a random amount, kept if it passes.
  auto filtered = [&](std::uint64_t s) -> DensityMatrix {
    for (std::size_t attempt = 0; attempt < kMaxRejections; ++attempt) {
      const DensityMatrix raw = random_density(shape, derive_seed(s, attempt));
      const double p = unit(rng);
      const DensityMatrix candidate = DensityMatrix::trusted(
          (1.0 - p) * raw.matrix() + p * maximally_mixed(shape).matrix(), shape);
      if (passes(criterion, candidate, {})) {
        ++report.filtered_inputs;
        return candidate;
      }
      ++report.rejected_samples;
    }
    return separable(s).state;
  };

  double sum = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    const std::uint64_t s1 = derive_seed(seed, 2 * t + 1);
    const std::uint64_t s2 = derive_seed(seed, 2 * t + 2);
    ClosureCheck check;
    if (criterion == Criterion::SymmetricExtension) {
      check = symext_closure_constructive(separable(s1), separable(s2), 2);
    } else {
      const bool firstSeparable = (t % 2) == 0;
      const DensityMatrix rho = firstSeparable ? separable(s1).state : filtered(s1);
      const DensityMatrix sigma = unit(rng) < 0.5 ? separable(s2).state : filtered(s2);
      check = closure_check(criterion, rho, sigma);
    }
    if (check.violation) ++report.violations;
    for (const auto& s : check.sub_assertions) report.sub_assertion_failures += s.ok ? 0 : 1;
    const double m = check.product_verdict.margin;
    report.min_margin = std::min(report.min_margin, m);
    report.max_margin = std::max(report.max_margin, m);
    sum += m;
  }
  report.mean_margin = sum / static_cast<double>(trials);
  return report;
}

}  // namespace sepkit

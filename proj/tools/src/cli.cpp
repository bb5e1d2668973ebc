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


#include "sepkit_app/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>
#include <nlohmann/json.hpp>

#include "sepkit/closure.hpp"
#include "sepkit/criteria.hpp"
#include "sepkit/error.hpp"
#include "sepkit/geometry.hpp"
#include "sepkit/matrix_json.hpp"
#include "sepkit/random.hpp"
#include "sepkit/symext.hpp"
#include "sepkit/tomography.hpp"
#include "sepkit_app/state_spec.hpp"

#ifndef SEPKIT_VERSION
#define SEPKIT_VERSION "unknown"
#endif

namespace sepkit::app {

namespace {

using nlohmann::json;

constexpr double kWitnessBoundTol = 1e-9;
constexpr double kBoundarySlack = 1e-6;
constexpr double kFidelitySlack = 1e-8;

struct Global {
  bool json = false;
  std::string out;
  std::uint64_t seed = 0;
  std::optional<double> tol;
};

struct Report {
  explicit Report(std::string name = {}) : command(std::move(name)) {}

  std::string command;
  json config = json::object();
  json result = json::object();
  std::vector<std::string> violations;
  std::string human;
};

json measured(double value, double tolerance) { return {{"value", value}, {"tolerance", tolerance}}; }
json estimated(double value, double standard_error) { return {{"value", value}, {"standard_error", standard_error}}; }

json shape_json(const BipartiteShape& s) { return json::array({s.dimA, s.dimB}); }

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const std::size_t pos = std::min(s.find(',', start), s.size());
    if (pos > start) out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

json state_json(const ParsedState& p) {
  json j = {{"spec", p.spec}, {"dims", shape_json(p.state.shape())}};
  if (p.certificate) j["separable_certificate"] = {{"product_terms", p.certificate->size()}};
  if (p.upb) {
    j["upb_certificate"] = {{"min_overlap", measured(p.upb->min_overlap, p.upb->threshold)},
                            {"orthogonality_error", measured(p.upb->orthogonality_error, kHermitianTol)},
                            {"starts", p.upb->starts},
                            {"certified", p.upb->certified}};
  }
  return j;
}

std::string_view outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Pass:
      return "pass";
    case Outcome::Fail:
      return "fail";
    case Outcome::Inconclusive:
      return "inconclusive";
  }
  return "fail";
}

json verdict_json(const Verdict& v) {
  json details = json::object();
  for (const auto& [key, values] : v.details) details[key] = {{"values", values}, {"tolerance", v.tolerance}};
  return {{"criterion", v.criterion}, {"passed", v.passed},   {"outcome", outcome_name(v.outcome)},
          {"margin", measured(v.margin, v.tolerance)},        {"details", details},
          {"notes", v.notes}};
}

json check_json(const ExtensionCheck& c, double tol) {
  return {{"hermitian_error", measured(c.hermitian_error, tol)},
          {"symmetry_error", measured(c.symmetry_error, tol)},
          {"marginal_error", measured(c.marginal_error, tol)},
          {"psd_margin", measured(c.psd_margin, tol)},
          {"ok", c.ok(tol)}};
}

// criteria -----------------------------------------------------------------

struct CriteriaArgs {
  std::string state;
  std::string only;
  std::size_t k = 2;
  std::size_t max_iters = SymExtOptions{}.max_iters;
};

Report run_criteria(const CriteriaArgs& a, const Global& g) {
  Report r{"criteria"};
  const ParsedState p = parse_state_spec(a.state);
  RunAllOptions opts;
  opts.symext_copies = a.k;
  opts.symext.max_iters = a.max_iters;
  opts.symext.tol = g.tol.value_or(SymExtOptions{}.tol);
  if (p.upb && p.upb->certified) opts.entanglement_certificate = "UPB certificate";

  std::vector<Verdict> verdicts;
  if (a.only.empty()) {
    verdicts = run_all(p.state, opts);
  } else {
    for (const std::string& name : split_list(a.only)) {
      const auto c = parse_criterion(name);
      if (!c) throw UsageError("unknown criterion \"" + name + "\"");
      Verdict v = evaluate(*c, p.state, opts);
      if (opts.entanglement_certificate && v.passed) {
        v.notes.push_back("entangled by " + *opts.entanglement_certificate + " despite " + v.criterion + " pass");
      }
      verdicts.push_back(std::move(v));
    }
  }

  r.config = {{"state", a.state}, {"only", a.only}, {"k", a.k}, {"max_iters", a.max_iters}, {"tol", opts.symext.tol}};
  r.result["state"] = state_json(p);
  r.result["verdicts"] = json::array();
  r.human = fmt::format("state {} ({}x{})\n", a.state, p.state.shape().dimA, p.state.shape().dimB);
  for (const Verdict& v : verdicts) {
    r.result["verdicts"].push_back(verdict_json(v));
    r.human += fmt::format("  {:<20} {:<12} margin {:+.6e} (tol {:.1e})\n", v.criterion, outcome_name(v.outcome),
                           v.margin, v.tolerance);
    for (const std::string& note : v.notes) r.human += fmt::format("  {:<20} note: {}\n", "", note);
    // Every spectral criterion is necessary for separability.
    if (p.certificate && v.criterion != "symmetric_extension" && v.outcome == Outcome::Fail) {
      r.violations.push_back("separable state failed " + v.criterion);
    }
  }
  return r;
}

// symext -------------------------------------------------------------------

struct SymextArgs {
  std::string state;
  std::size_t k = 2;
  std::size_t max_iters = SymExtOptions{}.max_iters;
  std::string method = "accelerated";
  std::string witness_out;
};

Report run_symext(const SymextArgs& a, const Global& g) {
  Report r{"symext"};
  const ParsedState p = parse_state_spec(a.state);
  SymExtOptions opts;
  opts.max_iters = a.max_iters;
  opts.tol = g.tol.value_or(opts.tol);
  if (a.method == "dykstra") {
    opts.dykstra = true;
  } else if (a.method == "plain") {
    opts.accelerate = false;
  } else if (a.method != "accelerated") {
    throw UsageError("--method must be accelerated, plain or dykstra");
  }
  const FeasibilityResult fr = has_symmetric_extension(p.state, a.k, opts);

  r.config = {{"state", a.state},   {"k", a.k},           {"max_iters", a.max_iters},
              {"method", a.method}, {"tol", opts.tol},    {"witness_out", a.witness_out}};
  r.result["state"] = state_json(p);
  r.result["status"] = status_name(fr.status);
  r.result["residual"] = measured(fr.residual, opts.tol);
  r.result["gap"] = measured(fr.gap, opts.tol);
  r.result["iterations"] = fr.iterations;
  r.human = fmt::format("symext k={} on {}: {} after {} iterations (residual {:.3e}, gap {:.3e}, tol {:.1e})\n", a.k,
                        a.state, status_name(fr.status), fr.iterations, fr.residual, fr.gap, opts.tol);
  if (fr.witness_extension) {
    const ExtensionCheck c = verify_extension(*fr.witness_extension, p.state, a.k);
    r.result["witness_check"] = check_json(c, opts.tol);
    if (!c.ok(opts.tol)) r.violations.push_back("feasible witness failed re-verification");
    if (!a.witness_out.empty()) {
      std::size_t rest = 1;
      for (std::size_t i = 0; i < a.k; ++i) rest *= p.state.shape().dimB;
      write_json_file(a.witness_out,
                      matrix_to_json({MatrixKind::Hermitian, BipartiteShape{p.state.shape().dimA, rest},
                                      *fr.witness_extension}));
    }
  }
  if (p.certificate) {
    const ExtensionCheck c = verify_extension(extend_separable(*p.certificate, a.k), p.state, a.k);
    r.result["certificate_extension_check"] = check_json(c, kClosureTol);
    if (!c.ok(kClosureTol)) r.violations.push_back("extension built from the separable certificate is invalid");
  }
  return r;
}

// tomo accept --------------------------------------------------------------

struct TomoArgs {
  std::string target;
  std::string source;
  std::size_t n = 0;
  double eps = 0.0;
  std::size_t trials = 400;
  std::string povm = "conditioned";
};

Report run_tomo_accept(const TomoArgs& a, const Global& g) {
  Report r{"tomo accept"};
  const ParsedState target = parse_state_spec(a.target);
  const ParsedState source = parse_state_spec(a.source);
  if (!(target.state.shape() == source.state.shape())) throw UsageError("target and source shapes differ");
  const FrameConstruction construction = parse_frame_construction(a.povm);
  const Povm povm = local_ic_povm(target.state.shape(), derive_seed(g.seed, 0), construction);
  const AcceptanceEstimate e =
      acceptance_probability(target.state, source.state, a.n, a.eps, a.trials, derive_seed(g.seed, 1), povm);

  r.config = {{"target", a.target}, {"source", a.source}, {"n", a.n},
              {"eps", a.eps},       {"trials", a.trials}, {"povm", a.povm}};
  r.result["acceptance"] = estimated(e.probability, e.standard_error);
  r.result["trials"] = e.trials;
  r.result["povm_outcomes"] = povm.size();
  r.human = fmt::format("acceptance({}, {}, n={}, eps={}) = {:.4f} +- {:.4f} over {} trials\n", a.target, a.source,
                        a.n, a.eps, e.probability, e.standard_error, e.trials);
  return r;
}

// geometry -----------------------------------------------------------------

struct BoundaryArgs {
  std::string state;
};

Report run_boundary(const BoundaryArgs& a, const Global& g) {
  Report r{"geometry boundary"};
  const ParsedState p = parse_state_spec(a.state);
  const double tol = g.tol.value_or(kDefaultBisectionTol);
  const BoundaryResult b = ppt_boundary_bisect(p.state, tol, p.certificate ? &*p.certificate : nullptr);
  const FidelityBoundResult f = fidelity_bound_check(b.boundary_state);

  r.config = {{"state", a.state}, {"tol", tol}};
  r.result["state"] = state_json(p);
  r.result["t_star"] = measured(b.t_star, tol);
  r.result["distance_from_start"] = measured(b.distance_from_start, kBoundarySlack);
  r.result["bound"] = b.bound;
  r.result["bound_ok"] = b.bound_ok;
  r.result["separable_certified"] = b.separable_certified;
  r.result["ppt_margin_low"] = measured(b.margin_low, kSpectralRelTol);
  r.result["ppt_margin_high"] = measured(b.margin_high, kSpectralRelTol);
  r.result["boundary_fidelity"] = {{"value", f.fidelity}, {"bound", f.bound}, {"tolerance", kFidelitySlack},
                                   {"ok", f.ok}};
  r.human = fmt::format("PPT boundary from {}: t* = {:.8f} (tol {:.1e}), distance {:.6f} vs bound {:.6f}{}\n",
                        a.state, b.t_star, tol, b.distance_from_start, b.bound,
                        b.separable_certified ? " (separable start)" : "");
  if (!f.ok) r.violations.push_back("fidelity bound violated at the boundary state");
  if (b.separable_certified && !b.bound_ok) r.violations.push_back("separable start is farther than 1/sqrt(d)");
  return r;
}

struct DefinettiArgs {
  std::size_t dim = 0;
  std::size_t n = 0;
  std::size_t k = 0;
};

Report run_definetti(const DefinettiArgs& a, const Global&) {
  Report r{"geometry definetti"};
  const double bound = definetti_bound(a.dim, a.n, a.k);
  r.config = {{"dim", a.dim}, {"n", a.n}, {"k", a.k}};
  r.result["bound"] = measured(bound, 0.0);
  r.human = fmt::format("de Finetti bound 2*{}*{}/({}+{}) = {}\n", a.dim, a.n, a.n, a.k, bound);
  return r;
}

struct WitnessArgs {
  std::string state;
  std::string witness;
  std::size_t starts = 20;
};

Report run_witness(const WitnessArgs& a, const Global& g) {
  Report r{"geometry witness"};
  const ParsedState p = parse_state_spec(a.state);
  const std::vector<std::string> parts = [&] {
    const std::size_t colon = a.witness.find(':');
    return std::vector<std::string>{a.witness.substr(0, colon),
                                    colon == std::string::npos ? "" : a.witness.substr(colon + 1)};
  }();
  if (parts[0] != "maxent") throw UsageError("--witness must be maxent:d");
  const std::size_t d = parse_size(parts[1], "witness dimension");
  if (!(p.state.shape() == BipartiteShape{d, d})) throw UsageError("witness dimension does not match the state");

  const DensityMatrix w = max_entangled(d);
  const SepOverlapResult sep = sep_max_overlap_maxent(d, a.starts, g.seed);
  const double expectation = p.state.matrix().cwiseProduct(w.matrix().transpose()).sum().real();
  const double lb = witness_lower_bound(p.state, w.matrix(), sep.value);

  r.config = {{"state", a.state}, {"witness", a.witness}, {"starts", a.starts}};
  r.result["state"] = state_json(p);
  r.result["expectation"] = measured(expectation, kWitnessBoundTol);
  r.result["sep_max"] = {{"value", sep.value},
                         {"numeric_max", sep.numeric_max},
                         {"tolerance", 1e-6},
                         {"starts", sep.starts}};
  r.result["lower_bound"] = measured(lb, kWitnessBoundTol);
  r.human = fmt::format("Tr(W rho) = {:.10f}, separable max {:.10f} (search {:.10f}): distance >= {:.10f}\n",
                        expectation, sep.value, sep.numeric_max, lb);
  return r;
}

struct FarnessArgs {
  std::string state;
  std::vector<std::string> ansatz;
  std::string weights;
  std::string n_list = "2,3,4";
  double eps = 0.0;
  std::size_t trials = 400;
};

Report run_farness(const FarnessArgs& a, const Global& g) {
  Report r{"geometry farness"};
  const ParsedState p = parse_state_spec(a.state);
  std::vector<double> weights;
  for (const std::string& w : split_list(a.weights)) weights.push_back(parse_double(w, "weight"));
  if (weights.empty()) weights.assign(a.ansatz.size(), 1.0 / static_cast<double>(a.ansatz.size()));
  if (weights.size() != a.ansatz.size()) throw UsageError("--weights needs one entry per ansatz member");
  std::vector<WeightedState> members;
  for (std::size_t i = 0; i < a.ansatz.size(); ++i) members.push_back({weights[i], parse_state_spec(a.ansatz[i]).state});
  const Ensemble ansatz(std::move(members));
  std::vector<std::size_t> ns;
  for (const std::string& n : split_list(a.n_list)) ns.push_back(parse_size(n, "n"));
  if (ns.empty()) throw UsageError("--n-list is empty");

  const FarnessReport f = farness_certificate(p.state, ansatz, ns, a.eps, a.trials, g.seed);
  r.config = {{"state", a.state}, {"ansatz", a.ansatz}, {"weights", weights},
              {"n_list", ns},     {"eps", a.eps},       {"trials", a.trials}};
  r.result["state"] = state_json(p);
  r.result["scope"] = f.scope;
  r.result["near_members"] = f.near_members;
  r.result["points"] = json::array();
  r.human = fmt::format("farness of {} {} (eps {}, {} trials)\n", a.state, f.scope, a.eps, a.trials);
  const double n_trials = static_cast<double>(a.trials);
  for (const FarnessPoint& pt : f.points) {
    const double seTarget = std::sqrt(pt.acceptance_target * (1.0 - pt.acceptance_target) / n_trials);
    const double seAnsatz = std::sqrt(std::max(0.0, pt.standard_error * pt.standard_error - seTarget * seTarget));
    r.result["points"].push_back({{"n", pt.n},
                                  {"lower_bound", estimated(pt.lower_bound, pt.standard_error)},
                                  {"acceptance_target", estimated(pt.acceptance_target, seTarget)},
                                  {"acceptance_ansatz", estimated(pt.acceptance_ansatz, seAnsatz)}});
    r.human += fmt::format("  n={:<6} LB {:+.4f} +- {:.4f}  (target {:.4f}, ansatz {:.4f})\n", pt.n, pt.lower_bound,
                           pt.standard_error, pt.acceptance_target, pt.acceptance_ansatz);
  }
  if (!f.near_members.empty()) r.human += "  warning: some ansatz members lie within eps of the state\n";
  return r;
}

// closure ------------------------------------------------------------------

struct ClosureArgs {
  std::string criterion;
  std::size_t trials = 200;
};

Report run_closure(const ClosureArgs& a, const Global& g) {
  Report r{"closure"};
  const auto c = parse_criterion(a.criterion);
  if (!c) throw UsageError("unknown criterion \"" + a.criterion + "\"");
  const ClosureSweepReport s = closure_sweep(*c, a.trials, g.seed);
  r.config = {{"criterion", a.criterion}, {"trials", a.trials}};
  r.result = {{"criterion", s.criterion},
              {"trials", s.trials},
              {"violations", s.violations},
              {"sub_assertion_failures", s.sub_assertion_failures},
              {"separable_inputs", s.separable_inputs},
              {"filtered_inputs", s.filtered_inputs},
              {"rejected_samples", s.rejected_samples},
              {"min_margin", measured(s.min_margin, s.tolerance)},
              {"mean_margin", measured(s.mean_margin, s.tolerance)},
              {"max_margin", measured(s.max_margin, s.tolerance)}};
  r.human = fmt::format("closure {}: {} pairs, {} violations, {} failed sub-assertions, min margin {:+.3e}\n",
                        s.criterion, s.trials, s.violations, s.sub_assertion_failures, s.min_margin);
  if (s.violations > 0 || s.sub_assertion_failures > 0) {
    r.violations.push_back(fmt::format("{} closure violations, {} failed sub-assertions", s.violations,
                                       s.sub_assertion_failures));
  }
  return r;
}

// state --------------------------------------------------------------------

struct StateArgs {
  std::string state;
};

Report run_state_make(const StateArgs& a, const Global&) {
  Report r{"state make"};
  const ParsedState p = parse_state_spec(a.state);
  r.config = {{"state", a.state}};
  r.result = density_to_json(p.state);
  r.human = fmt::format("{}: {}x{} density matrix\n", a.state, p.state.shape().dimA, p.state.shape().dimB);
  return r;
}

Report run_state_show(const StateArgs& a, const Global&) {
  Report r{"state show"};
  const ParsedState p = parse_state_spec(a.state);
  const RealVector ev = hermitian_eigenvalues(p.state.matrix());
  const double purity = p.state.matrix().squaredNorm();
  std::size_t rank = 0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) rank += ev(i) > kSpectralRelTol ? 1 : 0;
  const Verdict ppt = ppt_test(p.state);

  r.config = {{"state", a.state}};
  r.result["state"] = state_json(p);
  r.result["trace"] = measured(p.state.matrix().trace().real(), kTraceTol);
  r.result["purity"] = measured(purity, kSpectralRelTol);
  r.result["eigenvalues"] = {{"values", std::vector<double>(ev.data(), ev.data() + ev.size())},
                             {"tolerance", kSpectralRelTol}};
  r.result["rank"] = rank;
  r.result["ppt_margin"] = measured(ppt.margin, ppt.tolerance);
  r.human = fmt::format("{}: dims {}x{}, rank {}, purity {:.6f}, PPT margin {:+.6e}\n", a.state,
                        p.state.shape().dimA, p.state.shape().dimB, rank, purity, ppt.margin);
  if (p.upb) {
    r.human += fmt::format("  UPB certificate: min product overlap {:.6f} (threshold {}), {}\n", p.upb->min_overlap,
                           p.upb->threshold, p.upb->certified ? "certified" : "not certified");
  }
  return r;
}

int emit(const Report& r, const Global& g, std::ostream& out, std::ostream& err) {
  json config = r.config;
  config["seed"] = g.seed;
  config["dim_cap"] = dimension_cap();
  json doc;
  if (r.command == "state make") {
    doc = r.result;
  } else {
    doc["result"] = r.result;
    doc["invariant_violations"] = r.violations;
  }
  doc["command"] = r.command;
  doc["version"] = SEPKIT_VERSION;
  doc["config"] = config;
  const std::string text = doc.dump(2) + "\n";

  if (!g.out.empty()) {
    std::ofstream file(g.out, std::ios::binary);
    if (!(file << text)) throw std::runtime_error("cannot write " + g.out);
  } else if (g.json) {
    out << text;
  }
  if (!g.json) {
    err << r.human;
    for (const std::string& v : r.violations) err << "INVARIANT VIOLATION: " << v << "\n";
  }
  return r.violations.empty() ? 0 : 2;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"sepkit: separability criteria, symmetric extensions and tomographic distance bounds", "sepkit"};
  app.set_version_flag("--version", SEPKIT_VERSION);
  app.require_subcommand(1);
  app.fallthrough();

  Global g;
  double tol = 0.0;
  app.add_flag("--json", g.json, "Write the JSON report to stdout");
  app.add_option("--out", g.out, "Write the JSON report to this file");
  app.add_option("--seed", g.seed, "Master seed for Monte-Carlo estimates");
  auto* tolOpt = app.add_option("--tol", tol, "Numerical tolerance (solver or bisection)")->check(CLI::PositiveNumber);

  CriteriaArgs criteria;
  auto* criteriaCmd = app.add_subcommand("criteria", "Evaluate separability criteria on a state");
  criteriaCmd->add_option("--state", criteria.state, "State spec")->required();
  criteriaCmd->add_option("--only", criteria.only, "Comma-separated criteria (ppt,reduction,entropic,...)");
  criteriaCmd->add_option("--k", criteria.k, "Symmetric extension copies")->check(CLI::Range(2, 16));
  criteriaCmd->add_option("--max-iters", criteria.max_iters, "Symmetric extension iteration budget");

  SymextArgs symext;
  auto* symextCmd = app.add_subcommand("symext", "Search for a k-copy symmetric extension");
  symextCmd->add_option("--state", symext.state, "State spec")->required();
  symextCmd->add_option("--k", symext.k, "Number of B copies")->check(CLI::Range(2, 16));
  symextCmd->add_option("--max-iters", symext.max_iters, "Iteration budget");
  symextCmd->add_option("--method", symext.method, "accelerated, plain or dykstra");
  symextCmd->add_option("--witness-out", symext.witness_out, "Write a feasible extension to this file");

  auto* tomoCmd = app.add_subcommand("tomo", "Tomographic acceptance estimates");
  tomoCmd->require_subcommand(1);
  TomoArgs tomo;
  auto* acceptCmd = tomoCmd->add_subcommand("accept", "Monte-Carlo acceptance probability");
  acceptCmd->add_option("--target", tomo.target, "Target state spec")->required();
  acceptCmd->add_option("--source", tomo.source, "Source state spec")->required();
  acceptCmd->add_option("--n", tomo.n, "Copies (n - 1 are measured)")->required();
  acceptCmd->add_option("--eps", tomo.eps, "Ball diameter in trace distance")->required();
  acceptCmd->add_option("--trials", tomo.trials, "Monte-Carlo trials");
  acceptCmd->add_option("--povm", tomo.povm, "Frame construction: conditioned or random");

  auto* geometryCmd = app.add_subcommand("geometry", "Distance geometry of separable and PPT states");
  geometryCmd->require_subcommand(1);
  BoundaryArgs boundary;
  auto* boundaryCmd = geometryCmd->add_subcommand("boundary", "Bisect the PPT boundary toward Phi(d)");
  boundaryCmd->add_option("--state", boundary.state, "PPT start state spec")->required();
  DefinettiArgs definetti;
  auto* definettiCmd = geometryCmd->add_subcommand("definetti", "Finite de Finetti error term");
  definettiCmd->add_option("--dim", definetti.dim, "Local dimension")->required();
  definettiCmd->add_option("--n", definetti.n, "Marginal size")->required();
  definettiCmd->add_option("--k", definetti.k, "Additional exchangeable copies")->required();
  WitnessArgs witness;
  auto* witnessCmd = geometryCmd->add_subcommand("witness", "Witness lower bound on the distance to SEP");
  witnessCmd->add_option("--state", witness.state, "State spec")->required();
  witnessCmd->add_option("--witness", witness.witness, "Witness, maxent:d")->required();
  witnessCmd->add_option("--starts", witness.starts, "Product-vector search starts");
  FarnessArgs farness;
  auto* farnessCmd = geometryCmd->add_subcommand("farness", "Monte-Carlo farness lower bounds against an ansatz");
  farnessCmd->add_option("--state", farness.state, "State spec")->required();
  farnessCmd->add_option("--ansatz", farness.ansatz, "Ansatz member specs")->required();
  farnessCmd->add_option("--weights", farness.weights, "Comma-separated ansatz weights (default uniform)");
  farnessCmd->add_option("--n-list", farness.n_list, "Comma-separated copy numbers");
  farnessCmd->add_option("--eps", farness.eps, "Ball diameter in trace distance")->required();
  farnessCmd->add_option("--trials", farness.trials, "Monte-Carlo trials per point");

  ClosureArgs closure;
  auto* closureCmd = app.add_subcommand("closure", "Tensor-product closure sweep for one criterion");
  closureCmd->add_option("--criterion", closure.criterion, "ppt|reduction|entropic|entropic_vn|majorization|crossnorm|symext")
      ->required();
  closureCmd->add_option("--trials", closure.trials, "Number of passing pairs");

  auto* stateCmd = app.add_subcommand("state", "Construct or inspect states");
  stateCmd->require_subcommand(1);
  StateArgs make;
  auto* makeCmd = stateCmd->add_subcommand("make", "Write a state in the matrix file format");
  makeCmd->add_option("--state,--spec", make.state, "State spec")->required();
  StateArgs show;
  auto* showCmd = stateCmd->add_subcommand("show", "Summarize a state");
  showCmd->add_option("--state,--spec", show.state, "State spec")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 1;
  }
  if (tolOpt->count() > 0) g.tol = tol;

  try {
    Report r;
    if (criteriaCmd->parsed()) {
      r = run_criteria(criteria, g);
    } else if (symextCmd->parsed()) {
      r = run_symext(symext, g);
    } else if (acceptCmd->parsed()) {
      r = run_tomo_accept(tomo, g);
    } else if (boundaryCmd->parsed()) {
      r = run_boundary(boundary, g);
    } else if (definettiCmd->parsed()) {
      r = run_definetti(definetti, g);
    } else if (witnessCmd->parsed()) {
      r = run_witness(witness, g);
    } else if (farnessCmd->parsed()) {
      r = run_farness(farness, g);
    } else if (closureCmd->parsed()) {
      r = run_closure(closure, g);
    } else if (makeCmd->parsed()) {
      r = run_state_make(make, g);
    } else {
      r = run_state_show(show, g);
    }
    return emit(r, g, out, err);
  } catch (const TheoremViolation& e) {
    err << "INVARIANT VIOLATION: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace sepkit::app

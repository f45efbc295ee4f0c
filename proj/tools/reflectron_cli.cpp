#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "reflectron/angle.hpp"
#include "reflectron/channels.hpp"
#include "reflectron/circuits.hpp"
#include "reflectron/cyclic_algebra.hpp"
#include "reflectron/distances.hpp"
#include "reflectron/errors.hpp"
#include "reflectron/kernels.hpp"
#include "reflectron/optima.hpp"
#include "reflectron/repthy.hpp"
#include "reflectron/universal.hpp"

using namespace reflectron;
using json = nlohmann::ordered_json;

namespace {

constexpr double kPi = std::numbers::pi;

// Assertion failures inside a subcommand (verification suites, oracle
// disagreements) map to exit code 2.
struct CheckFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Output {
  std::string path;
  void write(const std::string& text) const {
    if (path.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream f(path);
    if (!f) throw DomainError("cannot open output file " + path);
    f << text;
  }
};

std::string dump(json j) {
  json out;
  out["schema"] = 1;
  for (auto& [k, v] : j.items()) out[k] = v;
  return out.dump(2) + "\n";
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// ---- distance ---------------------------------------------------------------

json distance_report(int n, int d, double alpha, const std::string& algo, double theta_in,
                     std::uint64_t seed) {
  const Vector psi = haar_random_state(d, seed).amplitudes();
  json out{{"n", n}, {"d", d}, {"alpha", alpha}, {"algo", algo}};
  if (algo == "mr") {
    if (std::abs(alpha - kPi) > 1e-12) throw DomainError("measure-and-reflect targets alpha = pi");
    const MeasureReflectChannel mr(psi, n);
    const auto res = diamond_covariant_numeric(rotation_as_channel(psi, kPi),
                                               [&mr](const Matrix& x) { return mr.apply(x); }, psi);
    const double nn = n, dd = d;
    out["theta"] = nullptr;
    out["value"] = res.value;
    out["argmax_p"] = res.argmax_p;
    out["branch"] = res.argmax_p <= 1e-9 ? "p=0" : (res.argmax_p >= 1.0 - 1e-9 ? "p=1" : "interior");
    out["lower_bound"] = 8.0 * (nn + 1.0) * (dd - 1.0) / ((nn + dd + 1.0) * (nn + dd));
    out["asymptote"] = 4.0 * (dd + std::sqrt(dd * (dd - 2.0) + 1.0) - 1.0) / nn;
    return out;
  }
  std::optional<CyclicElement> e;
  double theta = theta_in;
  if (algo == "optimal") {
    if (alpha < 0.0 || alpha > kPi) throw DomainError("alpha must lie in [0, pi] for the optimal angle");
    theta = std::abs(alpha - kPi) < 1e-15 ? std::acos(optimal_angle_cosine(n)) : theta_star(n, alpha);
    e = r_theta_coeffs(n, theta);
  } else if (algo == "theta-pi") {
    theta = kPi;
    e = r_theta_coeffs(n, theta);
  } else if (algo == "equal") {
    theta = alpha;
    e = r_theta_coeffs(n, theta);
  } else if (algo == "theta") {
    if (std::isnan(theta)) throw DomainError("--theta is required for --algo theta");
    e = r_theta_coeffs(n, theta);
  } else if (algo == "lmr") {
    theta = alpha / n;
    e = lmr_coeffs(std::vector<double>(n, theta));
  } else if (algo == "lmr-improved") {
    theta = lmr_improved_angle(n, alpha);
    e = lmr_coeffs(std::vector<double>(n, theta));
  } else {
    throw DomainError("unknown algorithm " + algo);
  }
  const auto res = diamond_covariant(*e, alpha);
  // Dense trace norm through the effective channel at the maximizer.
  const double dense_at_max = distance_at_p(*e, psi, alpha, res.argmax_p);
  out["theta"] = theta;
  out["value"] = res.value;
  out["argmax_p"] = res.argmax_p;
  out["branch"] = domain_name(res.branch);
  out["dense_at_argmax"] = dense_at_max;
  if (std::pow(static_cast<double>(d), n + 1) <= 4096.0) {
    const Matrix x = haar_random_unitary(d, seed + 1).entries();
    const Matrix rho = x.col(0) * x.col(0).adjoint();
    const double gap = (dense_reflection_channel(*e, psi, rho) - effective_channel(*e, psi).apply(rho))
                           .cwiseAbs()
                           .maxCoeff();
    if (gap > 1e-10) throw ConsistencyError("dense and effective channels disagree by " + fmt(gap));
    out["dense_channel_gap"] = gap;
  }
  return out;
}

// ---- selftest ---------------------------------------------------------------

struct SelfTest {
  std::vector<std::pair<std::string, bool>> results;
  void check(const std::string& name, bool ok) { results.emplace_back(name, ok); }
};

int run_selftest() {
  SelfTest t;
  for (int n = 1; n <= 6; ++n) {
    const double want = 8.0 * (n + 2.0) / (8.0 + 4.0 * n + n * n);
    t.check("optimal reflection n=" + std::to_string(n),
            std::abs(diamond_covariant(optimal_reflection_coeffs(n), kPi).value - want) < 1e-9);
  }
  for (int n = 1; n <= 8; ++n)
    t.check("theta=pi n=" + std::to_string(n),
            std::abs(diamond_covariant(r_theta_coeffs(n, kPi), kPi).value - 8.0 * n / ((n + 1.0) * (n + 1.0))) <
                1e-9);
  {
    const Vector psi = haar_random_state(3, 7).amplitudes();
    const Matrix x = haar_random_unitary(3, 8).entries();
    const auto e = optimal_reflection_coeffs(3);
    t.check("dense vs effective channel d=3 n=3",
            (dense_reflection_channel(e, psi, x) - effective_channel(e, psi).apply(x)).cwiseAbs().maxCoeff() <
                1e-10);
  }
  {
    std::vector<double> th{0.3, 0.5, 0.7, 0.2};
    const Vector psi = haar_random_state(2, 3).amplitudes();
    const Matrix x = haar_random_unitary(2, 4).entries();
    t.check("sequential swaps vs coefficients",
            (lmr_sequential_dense(th, psi, x) - effective_channel(lmr_coeffs(th), psi).apply(x))
                    .cwiseAbs()
                    .maxCoeff() < 1e-10);
  }
  for (int n : {1, 3}) {
    const auto g = build_rotation_circuit(n, 0.9);
    const Matrix want = dense_element(r_theta_coeffs(n, 0.9), 2).entries();
    t.check("circuit equivalence n=" + std::to_string(n),
            (projected_circuit(g) - want).cwiseAbs().maxCoeff() < 1e-10);
  }
  {
    const auto sol = solve_q_d2(10);
    t.check("flat-spectrum system n=10", sol.converged && sol.in_unit_interval);
  }
  t.check("lambert W(e) = 1", std::abs(lambert_w0(std::numbers::e) - 1.0) < 1e-12);
  {
    std::vector<double> p(64), a(64), b(64);
    for (int i = 0; i < 64; ++i) p[i] = i / 63.0;
    kernels::scalar::covariant_profile(0.3, 0.5, p.data(), a.data(), 64);
    kernels::covariant_profile(0.3, 0.5, p.data(), b.data(), 64);
    double gap = 0.0;
    for (int i = 0; i < 64; ++i) gap = std::max(gap, std::abs(a[i] - b[i]));
    t.check(std::string("kernel dispatch (") + kernels::isa_name(kernels::active_isa()) + ")", gap < 1e-12);
  }
  bool all = true;
  for (const auto& [name, ok] : t.results) {
    std::cout << (ok ? "PASS " : "FAIL ") << name << '\n';
    all = all && ok;
  }
  if (!all) throw CheckFailure("selftest failed");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Programmable reflections and rotations workbench"};
  app.require_subcommand(1);
  Output output;
  std::uint64_t seed = 0;
  app.add_option("--seed", seed, "random seed")->capture_default_str();

  int n = 2, d = 2, grid = 257, grid_r = 0, restarts = 20, trials = 64, targets = 1, count = 64;
  std::string alpha_s = "pi", theta_s, algo = "optimal", boundary_out, format = "json";
  double eps = 0.1;
  std::vector<std::string> alpha_list;

  auto* distance = app.add_subcommand("distance", "diamond distance of a covariant algorithm");
  distance->add_option("--n", n)->required();
  distance->add_option("--d", d)->capture_default_str();
  distance->add_option("--alpha", alpha_s)->capture_default_str();
  distance->add_option("--theta", theta_s);
  distance->add_option("--algo", algo, "optimal|theta-pi|equal|theta|lmr|lmr-improved|mr")
      ->capture_default_str();
  distance->add_option("--out", output.path);

  auto* landscape_cmd = app.add_subcommand("landscape", "reflection-distance surface over (r, u)");
  landscape_cmd->add_option("--n", n)->required();
  landscape_cmd->add_option("--grid", grid, "points along u (and r unless --grid-r)")->capture_default_str();
  landscape_cmd->add_option("--grid-r", grid_r);
  landscape_cmd->add_option("--boundary-out", boundary_out);
  landscape_cmd->add_option("--out", output.path);

  auto* theta_cmd = app.add_subcommand("theta-star", "optimal rotation angle versus target angle");
  theta_cmd->add_option("--n", n)->required();
  theta_cmd->add_option("--alpha", alpha_list, "explicit angles; default is a uniform grid on (0, pi]");
  theta_cmd->add_option("--count", count, "grid size")->capture_default_str();
  theta_cmd->add_option("--out", output.path);

  auto* lmr = app.add_subcommand("lmr", "sequential swap interactions and the improved angle");
  lmr->add_option("--n", n)->required();
  lmr->add_option("--alpha", alpha_s)->capture_default_str();
  lmr->add_option("--out", output.path);

  auto* mr = app.add_subcommand("mr", "measure-and-reflect distance");
  mr->add_option("--n", n)->required();
  mr->add_option("--d", d)->capture_default_str();
  mr->add_option("--out", output.path);

  auto* lb = app.add_subcommand("lowerbound", "program-dimension lower bound");
  lb->require_subcommand(1);
  auto* solve_q = lb->add_subcommand("solve-q", "flat-spectrum linear system for d = 2");
  solve_q->add_option("--n", n)->required();
  solve_q->add_option("--out", output.path);
  auto* twirl_cmd = lb->add_subcommand("twirl", "ensemble entropy maximized over probe weights");
  twirl_cmd->add_option("--n", n)->required();
  twirl_cmd->add_option("--d", d)->required();
  twirl_cmd->add_option("--restarts", restarts)->capture_default_str();
  twirl_cmd->add_option("--out", output.path);
  auto* fd = lb->add_subcommand("fd", "lower-bound function at the near-optimal copy count");
  fd->add_option("--eps", eps)->required();
  fd->add_option("--d", d)->required();
  fd->add_option("--out", output.path);

  auto* uni = app.add_subcommand("universal", "universal processor from rotations");
  uni->require_subcommand(1);
  auto* ubudget = uni->add_subcommand("budget", "program-qubit accounting");
  ubudget->add_option("--d", d)->required();
  ubudget->add_option("--eps", eps)->required();
  ubudget->add_option("--alpha", alpha_list, "d-1 angles; default all pi");
  ubudget->add_option("--out", output.path);
  auto* uverify = uni->add_subcommand("verify", "sampled distance of assembled processors to Haar targets");
  uverify->add_option("--d", d)->required();
  uverify->add_option("--eps", eps)->required();
  uverify->add_option("--trials", trials)->capture_default_str();
  uverify->add_option("--targets", targets)->capture_default_str();
  uverify->add_option("--out", output.path);

  auto* circ = app.add_subcommand("circuit", "gate-level rotation circuit");
  circ->require_subcommand(1);
  auto* emit = circ->add_subcommand("emit", "write the textual gate list");
  emit->add_option("--n", n)->required();
  emit->add_option("--theta", theta_s)->required();
  emit->add_option("--out", output.path);
  auto* cverify = circ->add_subcommand("verify", "dense equivalence suite");
  cverify->add_option("--n", n)->required();
  cverify->add_option("--out", output.path);

  auto* selftest = app.add_subcommand("selftest", "run the built-in invariant suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::string msg = e.what();
    std::cerr << "error: usage: " << msg.substr(0, msg.find('\n')) << '\n';
    return 1;
  }

  try {
    if (distance->parsed()) {
      const double theta = theta_s.empty() ? std::nan("") : parse_angle(theta_s);
      output.write(dump(distance_report(n, d, parse_angle(alpha_s), algo, theta, seed)));
    } else if (landscape_cmd->parsed()) {
      if (grid < 2) throw DomainError("--grid must be at least 2");
      const auto ls = landscape(n, grid_r > 0 ? grid_r : grid, grid);
      std::ostringstream os;
      os << "r,u,value\n";
      for (const auto& p : ls.points) os << fmt(p.r) << ',' << fmt(p.u) << ',' << fmt(p.value) << '\n';
      output.write(os.str());
      if (!boundary_out.empty()) {
        std::ostringstream bs;
        bs << "r,u,value\n";
        for (const auto& p : ls.boundary) bs << fmt(p.r) << ',' << fmt(p.u) << ',' << fmt(p.value) << '\n';
        Output{boundary_out}.write(bs.str());
      }
    } else if (theta_cmd->parsed()) {
      std::vector<double> alphas;
      if (alpha_list.empty()) {
        if (count < 1) throw DomainError("--count must be positive");
        for (int i = 1; i <= count; ++i) alphas.push_back(kPi * i / count);
      } else {
        for (const auto& s : alpha_list) alphas.push_back(parse_angle(s));
      }
      std::ostringstream os;
      os << "alpha,theta_star,distance\n";
      for (double a : alphas) {
        const double ts = theta_star(n, a);
        os << fmt(a) << ',' << fmt(ts) << ',' << fmt(closed_form_rotation_distance(r_theta_coeffs(n, ts), a))
           << '\n';
      }
      output.write(os.str());
    } else if (lmr->parsed()) {
      const double alpha = parse_angle(alpha_s);
      json out{{"n", n}, {"alpha", alpha}, {"theta", alpha / n}};
      const double base = lmr_distance(n, alpha / n, alpha);
      out["distance"] = base;
      out["closed_form"] = 2.0 * (1.0 - std::pow(std::cos(alpha / n), 2.0 * n));
      if (n > 2) {
        const double improved = lmr_improved_angle(n, alpha);
        out["improved_theta"] = improved;
        out["improved_distance"] = lmr_distance(n, improved, alpha);
        out["gap"] = lmr_improvement(n, alpha);
        out["predicted_gap"] = 2.0 * std::sqrt(3.0) * alpha * alpha * alpha / (double(n) * n);
      }
      output.write(dump(out));
    } else if (mr->parsed()) {
      output.write(dump(distance_report(n, d, kPi, "mr", 0.0, seed)));
    } else if (solve_q->parsed()) {
      const auto sol = solve_q_d2(n);
      json q = json::array();
      for (std::size_t i = 0; i < sol.q.size(); ++i) q.push_back({{"j", sol.two_j[i] / 2.0}, {"q", sol.q[i]}});
      output.write(dump({{"n", n},
                         {"q", q},
                         {"residual", sol.residual},
                         {"in_unit_interval", sol.in_unit_interval},
                         {"converged", sol.converged}}));
    } else if (twirl_cmd->parsed()) {
      const auto best = maximize_entropy_over_q(n, d, restarts, seed);
      json q = json::array();
      for (std::size_t i = 0; i < best.spec.q.size(); ++i)
        q.push_back({{"lambda", best.spec.lambdas[i]}, {"q", best.spec.q[i]}});
      const long long support = static_cast<long long>(sym_dim(n, d));
      output.write(dump({{"n", n},
                         {"d", d},
                         {"entropy", best.entropy},
                         {"target", best.target},
                         {"rank", best.rank},
                         {"rank_bound", support * support},
                         {"gap", best.target - best.entropy},
                         {"below_target", best.below_target},
                         {"basis", "Young symmetrizer range, SVD within GT weight spaces"},
                         {"q", q}}));
    } else if (fd->parsed()) {
      const auto fb = final_bound(eps, d);
      output.write(dump({{"eps", eps},
                         {"d", d},
                         {"n_star", fb.n_star},
                         {"f_d", fb.f_d},
                         {"final_bound", fb.leading},
                         {"delta", fb.delta},
                         {"asymptotic", fb.asymptotic}}));
    } else if (ubudget->parsed()) {
      std::vector<double> alphas(d - 1, kPi);
      if (!alpha_list.empty()) {
        if (static_cast<int>(alpha_list.size()) != d - 1) throw DomainError("--alpha needs d-1 values");
        for (int j = 0; j < d - 1; ++j) alphas[j] = parse_angle(alpha_list[j]);
      }
      const auto prog = budget(d, eps, alphas);
      json rot = json::array();
      for (const auto& r : prog.rotations)
        rot.push_back({{"alpha", r.alpha}, {"a", r.a}, {"theta", r.theta}, {"n", r.n}, {"delta", r.delta},
                       {"symmetric_qubits", r.symmetric_qubits}});
      output.write(dump({{"d", d},
                         {"eps", eps},
                         {"K", prog.k},
                         {"rotations", rot},
                         {"phase_qubits", prog.phase_qubits},
                         {"copy_qubits", prog.copy_qubits},
                         {"symmetric_qubits", prog.symmetric_qubits},
                         {"total_qubits", prog.total_qubits},
                         {"universal_lower_bound_bits", lower_bound_via_universal(d, eps)},
                         {"reflection_lower_bound_bits", reflection_lower_bound_bits(d, eps)}}));
    } else if (uverify->parsed()) {
      json reps = json::array();
      bool all = true;
      for (int t = 0; t < targets; ++t) {
        const Matrix u = haar_random_unitary(d, seed + static_cast<std::uint64_t>(t)).entries();
        const auto rep = verify_budget(u, eps, trials, seed + static_cast<std::uint64_t>(t));
        all = all && rep.pass;
        reps.push_back({{"target", t},
                        {"measured", rep.measured},
                        {"pass", rep.pass},
                        {"slack", rep.slack},
                        {"phase_term", rep.phase_term},
                        {"rotation_term", rep.rotation_term},
                        {"rotation_bound", rep.rotation_bound},
                        {"encoder_term", rep.encoder_term}});
      }
      output.write(dump({{"d", d}, {"eps", eps}, {"trials", trials}, {"pass", all}, {"targets", reps}}));
      if (!all) throw CheckFailure("sampled distance exceeded epsilon");
    } else if (emit->parsed()) {
      output.write(export_circuit(build_rotation_circuit(n, parse_angle(theta_s))));
    } else if (cverify->parsed()) {
      json checks = json::array();
      bool all = true;
      for (double theta : {0.0, 0.7, kPi, std::acos(optimal_angle_cosine(n))}) {
        const auto g = build_rotation_circuit(n, theta);
        const Matrix block = projected_circuit(g);
        const double gap =
            (block - dense_element(r_theta_coeffs(n, theta), 2).entries()).cwiseAbs().maxCoeff();
        const bool roundtrip = parse_circuit(export_circuit(g)) == g;
        const bool ok = gap < 1e-10 && roundtrip;
        all = all && ok;
        const auto counts = gate_counts(g);
        checks.push_back({{"theta", theta}, {"max_deviation", gap}, {"roundtrip", roundtrip}, {"pass", ok},
                          {"counts", counts}});
      }
      const long long L = std::countr_zero(static_cast<unsigned>(n + 1));
      output.write(dump({{"n", n},
                         {"cswap", rotation_cswap_count(n)},
                         {"cswap_2n_log2", 2 * n * L},
                         {"pass", all},
                         {"checks", checks}}));
      if (!all) throw CheckFailure("circuit equivalence failed");
    } else if (selftest->parsed()) {
      return run_selftest();
    }
  } catch (const ConsistencyError& e) {
    std::cerr << "error: consistency: " << e.what() << '\n';
    return 2;
  } catch (const CheckFailure& e) {
    std::cerr << "error: check: " << e.what() << '\n';
    return 2;
  } catch (const BudgetError& e) {
    std::cerr << "error: budget: " << e.what() << '\n';
    return 1;
  } catch (const DomainError& e) {
    std::cerr << "error: validation: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

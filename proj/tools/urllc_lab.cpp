// urllc-lab: batch front end for short-packet delay / peak-age tail analysis.
// JSON experiment configs in, CSV curves out; one subcommand per experiment.

#include <clocale>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "urllc/age.hpp"
#include "urllc/channel.hpp"
#include "urllc/errors.hpp"
#include "urllc/queueing.hpp"
#include "urllc/saddlepoint.hpp"
#include "urllc/sim.hpp"
#include "urllc/vlsf.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

using nlohmann::json;

// ---------------------------------------------------------------- output ----

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9e", v);
  return buf;
}

class CsvOut {
public:
  explicit CsvOut(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw urllc::ConfigError("cannot open output file: " + path);
    }
  }
  std::ostream& os() { return file_ ? *file_ : std::cout; }
  void row(const std::vector<std::string>& cells) {
    std::ostream& o = os();
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) o << ',';
      o << cells[i];
    }
    o << "\r\n";
  }
  void footer(const std::string& cmd, std::uint64_t seed, std::uint64_t samples) {
    os() << "# urllc-lab " << kVersion << " cmd=" << cmd << " seed=" << seed
         << " samples=" << samples << "\r\n";
  }

private:
  std::unique_ptr<std::ofstream> file_;
};

int error_exit(int code, const std::string& type, const std::string& message) {
  json err = {{"error", {{"code", code}, {"type", type}, {"message", message}}}};
  std::cerr << err.dump() << "\n";
  return code;
}

// ------------------------------------------------------------- arguments ----

double snr_db_to_rho(double snr_db) { return std::pow(10.0, snr_db / 10.0); }

struct Range {
  long long lo = 0, hi = 0, step = 1;
};

Range parse_range(const std::string& text) {
  Range r;
  const auto c1 = text.find(':');
  if (c1 == std::string::npos) throw urllc::ConfigError("range must be lo:hi[:step]: " + text);
  const auto c2 = text.find(':', c1 + 1);
  r.lo = std::stoll(text.substr(0, c1));
  r.hi = std::stoll(text.substr(c1 + 1, c2 == std::string::npos ? std::string::npos : c2 - c1 - 1));
  if (c2 != std::string::npos) r.step = std::stoll(text.substr(c2 + 1));
  if (r.step < 1 || r.hi < r.lo) throw urllc::ConfigError("bad range: " + text);
  return r;
}

std::vector<double> parse_grid(const std::string& text) {
  // lo:hi:count, log-spaced
  const auto c1 = text.find(':');
  const auto c2 = text.find(':', c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos) {
    throw urllc::ConfigError("grid must be lo:hi:count: " + text);
  }
  const double lo = std::stod(text.substr(0, c1));
  const double hi = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
  const int count = std::stoi(text.substr(c2 + 1));
  if (!(lo > 0.0) || hi < lo || count < 1) throw urllc::ConfigError("bad grid: " + text);
  std::vector<double> g(static_cast<std::size_t>(count));
  if (count == 1) {
    g[0] = lo;
    return g;
  }
  const double step = (std::log(hi) - std::log(lo)) / (count - 1);
  for (int i = 0; i < count; ++i) g[static_cast<std::size_t>(i)] = std::exp(std::log(lo) + i * step);
  return g;
}

urllc::AgePolicy parse_policy(const std::string& name) {
  if (name == "dwt") return urllc::AgePolicy::kDwt;
  if (name == "ktn") return urllc::AgePolicy::kKtn;
  if (name == "ktl") return urllc::AgePolicy::kKtl;
  if (name == "lcfs-s") return urllc::AgePolicy::kLcfsS;
  throw urllc::ConfigError("unknown policy (dwt|ktn|ktl|lcfs-s): " + name);
}

const char* policy_name(urllc::AgePolicy p) {
  switch (p) {
    case urllc::AgePolicy::kDwt: return "dwt";
    case urllc::AgePolicy::kKtn: return "ktn";
    case urllc::AgePolicy::kKtl: return "ktl";
    case urllc::AgePolicy::kLcfsS: return "lcfs-s";
  }
  return "?";
}

// Merge a JSON config into argv tokens (command-line flags win: they are
// appended after the config-derived tokens and every option takes the last
// occurrence).
std::vector<std::string> merge_config(const std::vector<std::string>& args) {
  std::string config_path;
  std::vector<std::string> rest;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw urllc::ConfigError("--config requires a path");
      config_path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      config_path = args[i].substr(9);
    } else {
      rest.push_back(args[i]);
    }
  }
  if (config_path.empty()) return rest;
  std::ifstream in(config_path);
  if (!in) throw urllc::ConfigError("cannot open config file: " + config_path);
  json cfg;
  try {
    in >> cfg;
  } catch (const json::exception& e) {
    throw urllc::ConfigError(std::string("config parse error: ") + e.what());
  }
  if (!cfg.is_object()) throw urllc::ConfigError("config must be a JSON object");
  std::vector<std::string> merged;
  if (!rest.empty() && !rest[0].empty() && rest[0][0] != '-') {
    merged.push_back(rest[0]);  // subcommand first
    rest.erase(rest.begin());
  }
  for (const auto& [key, value] : cfg.items()) {
    merged.push_back("--" + key);
    if (value.is_string()) {
      merged.push_back(value.get<std::string>());
    } else if (value.is_boolean()) {
      if (!value.get<bool>()) merged.pop_back();
    } else {
      std::ostringstream os;
      os << value;
      merged.push_back(os.str());
    }
  }
  merged.insert(merged.end(), rest.begin(), rest.end());
  return merged;
}

// ------------------------------------------------------------ subcommands ---

struct CommonOpts {
  std::string out;
  std::uint64_t seed = 1;
  std::uint64_t samples = 1000000;
};

CLI::Option* opt(CLI::App* app, const std::string& name, auto& var, const std::string& desc) {
  return app->add_option(name, var, desc)->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
}

urllc::ServiceModel resolve_arq_service(int n, int k, double snr_db, std::optional<double> eps,
                                        const CommonOpts& c, double* eps_out) {
  double e;
  if (eps.has_value()) {
    e = *eps;
  } else {
    const urllc::ChannelSpec spec{snr_db_to_rho(snr_db), n};
    e = urllc::rcus_epsilon(spec, k, urllc::default_alpha_grid(), c.samples, c.seed).value;
  }
  if (eps_out) *eps_out = e;
  return urllc::arq_service_model(e);
}

int cmd_rcus(int n, int k, double snr_db, const CommonOpts& c) {
  const urllc::ChannelSpec spec{snr_db_to_rho(snr_db), n};
  const urllc::McEstimate est =
      urllc::rcus_epsilon(spec, k, urllc::default_alpha_grid(), c.samples, c.seed);
  CsvOut out(c.out);
  out.row({"n", "k", "snr_db", "alpha_star", "epsilon", "half_width"});
  out.row({std::to_string(n), std::to_string(k), fmt(snr_db), fmt(est.alpha_star),
           fmt(est.value), fmt(est.half_width)});
  out.footer("rcus", c.seed, c.samples);
  return 0;
}

int cmd_delay_ccdf(int n, int k, double snr_db, std::optional<double> eps, double lambda,
                   int dmax, const std::string& method, bool async_model, const CommonOpts& c) {
  double e = 0.0;
  const urllc::ServiceModel service = resolve_arq_service(n, k, snr_db, eps, c, &e);
  const urllc::QueueConfig q{n, lambda};
  const urllc::RationalPgf pgf =
      async_model ? urllc::delay_pgf_async(service, q) : urllc::delay_pgf_sync(service, q);
  const bool want_exact = method == "exact" || method == "both";
  const bool want_sp = method == "saddlepoint" || method == "both";
  if (!want_exact && !want_sp) throw urllc::ConfigError("method must be exact|saddlepoint|both");
  std::optional<urllc::TailCurve> exact;
  if (want_exact) exact = pgf.invert_ccdf(dmax - 1);
  CsvOut out(c.out);
  std::vector<std::string> head{"d"};
  if (want_exact) head.push_back("exact");
  if (want_sp) head.push_back("saddlepoint");
  out.row(head);
  for (int d = 1; d <= dmax; ++d) {
    std::vector<std::string> row{std::to_string(d)};
    if (want_exact) row.push_back(fmt(exact->at(d - 1)));
    if (want_sp) row.push_back(fmt(urllc::saddlepoint_ccdf(pgf, d)));
    out.row(row);
  }
  out.os() << "# eps_frame=" << fmt(e) << "\r\n";
  out.footer("delay-ccdf", c.seed, eps.has_value() ? 0 : c.samples);
  return 0;
}

int cmd_delay_violation(int n, int k, double snr_db, std::optional<double> eps, double lambda,
                        int d0, const std::string& method, bool async_model, const CommonOpts& c) {
  double e = 0.0;
  const urllc::ServiceModel service = resolve_arq_service(n, k, snr_db, eps, c, &e);
  const urllc::QueueConfig q{n, lambda};
  const urllc::RationalPgf pgf =
      async_model ? urllc::delay_pgf_async(service, q) : urllc::delay_pgf_sync(service, q);
  const auto m = method == "saddlepoint" ? urllc::TailEvalMethod::kSaddlepoint
                                         : urllc::TailEvalMethod::kExact;
  if (method != "exact" && method != "saddlepoint") {
    throw urllc::ConfigError("method must be exact|saddlepoint");
  }
  // Async delays are measured in channel uses: the threshold index is d0 itself.
  const urllc::QueueConfig q_eff = async_model ? urllc::QueueConfig{1, lambda} : q;
  const urllc::DelayAnalysis a =
      urllc::delay_violation(pgf, d0, q_eff, service.eps_undetected(), m);
  CsvOut out(c.out);
  out.row({"d0", "d_frames", "p_delay", "eps_undetected", "p_dv", "mean"});
  out.row({std::to_string(d0), std::to_string((d0 + q_eff.n - 1) / q_eff.n), fmt(a.p_delay),
           fmt(a.eps_undetected), fmt(a.p_dv), fmt(a.mean)});
  out.os() << "# eps_frame=" << fmt(e) << "\r\n";
  out.footer("delay-violation", c.seed, eps.has_value() ? 0 : c.samples);
  return 0;
}

int cmd_snc_bound(int n, int k, double snr_db, std::optional<double> eps, double lambda, int d0,
                  const CommonOpts& c) {
  double e = 0.0;
  resolve_arq_service(n, k, snr_db, eps, c, &e);
  const urllc::QueueConfig q{n, lambda};
  const double bound = urllc::snc_delay_bound(e, q, d0);
  CsvOut out(c.out);
  out.row({"d0", "d_frames", "eps_frame", "snc_bound"});
  out.row({std::to_string(d0), std::to_string((d0 + n - 1) / n), fmt(e), fmt(bound)});
  out.footer("snc-bound", c.seed, eps.has_value() ? 0 : c.samples);
  return 0;
}

double snc_max_lambda(double eps, int n, int d0, double target) {
  // Largest lambda for which the SNC bound meets the target (monotone).
  double lo = 0.0;
  double hi = 1.0 / (static_cast<double>(n) / (1.0 - eps)) - 1e-12;  // stability limit
  hi = std::min(hi, 1.0 - 1e-12);
  if (hi <= 0.0) return 0.0;
  auto ok = [&](double lambda) {
    return urllc::snc_delay_bound(eps, urllc::QueueConfig{n, lambda}, d0) <= target;
  };
  if (!ok(hi * 1e-9)) return 0.0;
  if (ok(hi)) return hi;
  lo = hi * 1e-9;
  while (hi - lo > 1e-4 * hi) {
    const double mid = 0.5 * (lo + hi);
    if (ok(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

int cmd_throughput(double snr_db, int k, int d0, double target, const std::string& n_range,
                   const std::string& method, const CommonOpts& c) {
  const Range r = parse_range(n_range);
  if (method != "exact" && method != "snc") throw urllc::ConfigError("method must be exact|snc");
  CsvOut out(c.out);
  out.row({"n", "eps_frame", "lambda_star", "throughput"});
  for (long long n = r.lo; n <= r.hi; n += r.step) {
    const urllc::ChannelSpec spec{snr_db_to_rho(snr_db), static_cast<int>(n)};
    const double e =
        urllc::rcus_epsilon(spec, k, urllc::default_alpha_grid(), c.samples, c.seed).value;
    double lambda_star = 0.0, thr = 0.0;
    try {
      if (method == "exact") {
        const urllc::ServiceModel service = urllc::arq_service_model(e);
        const urllc::MaxRateResult mr =
            urllc::max_arrival_rate(service, static_cast<int>(n), d0, target, k);
        lambda_star = mr.lambda_star;
        thr = mr.throughput;
      } else {
        lambda_star = snc_max_lambda(e, static_cast<int>(n), d0, target);
        thr = k * lambda_star;
      }
    } catch (const urllc::InfeasibleError&) {
      // leave zeros: no feasible arrival rate at this frame size
    }
    out.row({std::to_string(n), fmt(e), fmt(lambda_star), fmt(thr)});
  }
  out.footer("throughput", c.seed, c.samples);
  return 0;
}

int cmd_vlsf_bound(int n, int k, double snr_db, std::optional<double> gamma,
                   const std::string& gamma_grid, int ell_max, std::optional<double> lambda,
                   std::optional<int> d0, const CommonOpts& c) {
  const urllc::ChannelSpec spec{snr_db_to_rho(snr_db), n};
  if (!gamma.has_value() && gamma_grid.empty()) {
    throw urllc::ConfigError("vlsf-bound: provide --gamma or --gamma-grid");
  }
  CsvOut out(c.out);
  if (gamma.has_value() && gamma_grid.empty() && !lambda.has_value()) {
    const urllc::VlsfBoundResult b =
        urllc::simulate_threshold_crossing(spec, k, *gamma, ell_max, c.samples, c.seed);
    out.row({"t", "tau_tail", "half_width"});
    for (std::size_t t = 0; t < b.tau_tail.size(); ++t) {
      out.row({std::to_string(t + 1), fmt(b.tau_tail[t].value), fmt(b.tau_tail[t].half_width)});
    }
    out.os() << "# gamma=" << fmt(*gamma)
             << " eps_undetected_bound=" << fmt(b.eps_undetected_bound.value)
             << " eps_detected_term=" << fmt(b.eps_detected_term.value) << "\r\n";
  } else {
    if (!lambda.has_value() || !d0.has_value()) {
      throw urllc::ConfigError("vlsf-bound with a gamma grid needs --lambda and --d0");
    }
    std::vector<double> grid;
    if (!gamma_grid.empty()) {
      grid = gamma_grid == "default" ? urllc::default_gamma_grid(k) : parse_grid(gamma_grid);
    } else {
      grid = {*gamma};
    }
    const urllc::QueueConfig q{n, *lambda};
    const urllc::GammaSweepResult sweep =
        urllc::optimize_gamma(spec, k, q, *d0, grid, ell_max, c.samples, c.seed);
    out.row({"gamma", "feasible", "p_delay", "eps_undetected", "p_dv"});
    for (const auto& pt : sweep.curve) {
      out.row({fmt(pt.gamma), pt.feasible ? "1" : "0", fmt(pt.p_delay), fmt(pt.eps_u),
               fmt(pt.p_dv)});
    }
    out.os() << "# gamma_star=" << fmt(sweep.gamma_star) << "\r\n";
  }
  out.footer("vlsf-bound", c.seed, c.samples);
  return 0;
}

int cmd_age_ccdf(const std::string& policy, int n, double lambda, double eps, int amax,
                 const std::string& method, const CommonOpts& c) {
  const urllc::AgePolicy p = parse_policy(policy);
  const urllc::ServiceModel service = urllc::arq_service_model(eps);
  const urllc::QueueConfig q{n, lambda};
  const urllc::RationalPgf pgf = urllc::peak_age_pgf(p, service, q);
  const bool want_exact = method == "exact" || method == "both";
  const bool want_sp = method == "saddlepoint" || method == "both";
  if (!want_exact && !want_sp) throw urllc::ConfigError("method must be exact|saddlepoint|both");
  std::optional<urllc::TailCurve> exact;
  if (want_exact) exact = pgf.invert_ccdf(amax - 1);
  CsvOut out(c.out);
  std::vector<std::string> head{"a"};
  if (want_exact) head.push_back("exact");
  if (want_sp) head.push_back("saddlepoint");
  out.row(head);
  for (int a = 1; a <= amax; ++a) {
    std::vector<std::string> row{std::to_string(a)};
    if (want_exact) row.push_back(fmt(exact->at(a - 1)));
    if (want_sp) row.push_back(fmt(urllc::saddlepoint_ccdf(pgf, a)));
    out.row(row);
  }
  out.footer("age-ccdf", 0, 0);
  return 0;
}

int cmd_age_violation(const std::string& policy, int n, double lambda, double eps, int a0,
                      const std::string& method, const CommonOpts& c) {
  const urllc::AgePolicy p = parse_policy(policy);
  const urllc::ServiceModel service = urllc::arq_service_model(eps);
  const urllc::QueueConfig q{n, lambda};
  const urllc::RationalPgf pgf = urllc::peak_age_pgf(p, service, q);
  if (method != "exact" && method != "saddlepoint") {
    throw urllc::ConfigError("method must be exact|saddlepoint");
  }
  const auto m = method == "saddlepoint" ? urllc::TailEvalMethod::kSaddlepoint
                                         : urllc::TailEvalMethod::kExact;
  const urllc::AgeAnalysis a = urllc::age_violation(pgf, a0, q, service.eps_undetected(), m);
  CsvOut out(c.out);
  out.row({"a0", "a_frames", "p_age", "eps_undetected", "p_av"});
  out.row({std::to_string(a0), std::to_string((a0 + n - 1) / n), fmt(a.p_age),
           fmt(a.eps_undetected), fmt(a.p_av)});
  out.footer("age-violation", 0, 0);
  return 0;
}

int cmd_high_rate_limit(const std::string& policy, double eps, int a0, int n,
                        const CommonOpts& c) {
  std::vector<urllc::AgePolicy> ps;
  if (policy == "all") {
    ps = {urllc::AgePolicy::kDwt, urllc::AgePolicy::kKtn, urllc::AgePolicy::kKtl,
          urllc::AgePolicy::kLcfsS};
  } else {
    ps = {parse_policy(policy)};
  }
  CsvOut out(c.out);
  out.row({"policy", "limit"});
  for (const auto p : ps) {
    out.row({policy_name(p), fmt(urllc::high_rate_limit(p, eps, a0, n))});
  }
  out.footer("high-rate-limit", 0, 0);
  return 0;
}

int cmd_simulate(const std::string& model, const std::string& policy, int n, double lambda,
                 double eps, std::uint64_t num, std::optional<std::uint64_t> warmup, int grid_max,
                 const CommonOpts& c) {
  const urllc::ServiceModel service = urllc::arq_service_model(eps);
  const urllc::QueueConfig q{n, lambda};
  const std::uint64_t wu = warmup.value_or(urllc::default_warmup(num));
  urllc::SimReport rep;
  if (model == "fcfs") {
    rep = urllc::simulate_fcfs_delay(service, q, num, wu, c.seed, grid_max);
  } else if (model == "async") {
    rep = urllc::simulate_async_delay(service, q, num, wu, c.seed, grid_max);
  } else if (model == "age") {
    rep = urllc::simulate_peak_age(parse_policy(policy), service, q, num, wu, c.seed, grid_max);
  } else {
    throw urllc::ConfigError("model must be fcfs|async|age");
  }
  CsvOut out(c.out);
  out.row({"k", "ccdf", "std_err"});
  for (std::size_t i = 0; i < rep.ccdf.size(); ++i) {
    out.row({std::to_string(rep.start_index + static_cast<int>(i)), fmt(rep.ccdf[i]),
             fmt(rep.std_err[i])});
  }
  out.os() << "# " << rep.config_echo << "\r\n";
  out.footer("simulate", c.seed, rep.count);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  std::setlocale(LC_ALL, "C");
  std::vector<std::string> raw(argv + 1, argv + argc);

  CLI::App app{"Queuing-delay and peak-age tail analysis for short-packet VLSF links"};
  app.require_subcommand(1);

  // shared option storage
  CommonOpts common;
  int n = 100, k = 30, d0 = 500, a0 = 100, dmax = 20, amax = 20, ell_max = 10, grid_max = 50;
  double snr_db = 0.0, lambda = 1e-3, eps = 0.1, target = 1e-3;
  std::optional<double> eps_opt, gamma_opt, lambda_opt;
  std::optional<int> d0_opt;
  std::optional<std::uint64_t> warmup_opt;
  std::string method = "both", n_range = "20:250:10", gamma_grid, policy = "dwt",
              model = "fcfs", thr_method = "exact";

  auto add_common = [&](CLI::App* sub) {
    opt(sub, "--out", common.out, "output CSV path (default stdout)");
    opt(sub, "--seed", common.seed, "RNG seed");
    opt(sub, "--samples", common.samples, "Monte Carlo sample count");
  };

  CLI::App* rcus = app.add_subcommand("rcus", "RCUs frame error probability bound");
  opt(rcus, "--n", n, "frame size (channel uses)")->required();
  opt(rcus, "--k", k, "information bits")->required();
  opt(rcus, "--snr-db", snr_db, "SNR in dB")->required();
  add_common(rcus);

  CLI::App* dccdf = app.add_subcommand("delay-ccdf", "steady-state delay CCDF");
  opt(dccdf, "--n", n, "frame size")->required();
  opt(dccdf, "--k", k, "information bits");
  opt(dccdf, "--snr-db", snr_db, "SNR in dB");
  opt(dccdf, "--eps", eps_opt, "frame error probability (skips the RCUs run)");
  opt(dccdf, "--lambda", lambda, "arrival probability per channel use")->required();
  opt(dccdf, "--dmax", dmax, "largest delay (frames, or channel uses with --async)");
  opt(dccdf, "--method", method, "exact|saddlepoint|both");
  dccdf->add_flag("--async", "frame-asynchronous model (channel-use granularity)");
  add_common(dccdf);

  CLI::App* dviol = app.add_subcommand("delay-violation", "delay violation probability");
  opt(dviol, "--n", n, "frame size")->required();
  opt(dviol, "--k", k, "information bits");
  opt(dviol, "--snr-db", snr_db, "SNR in dB");
  opt(dviol, "--eps", eps_opt, "frame error probability (skips the RCUs run)");
  opt(dviol, "--lambda", lambda, "arrival probability per channel use")->required();
  opt(dviol, "--d0", d0, "latency budget (channel uses)")->required();
  opt(dviol, "--method", method, "exact|saddlepoint");
  dviol->add_flag("--async", "frame-asynchronous model");
  add_common(dviol);

  CLI::App* snc = app.add_subcommand("snc-bound", "stochastic network calculus delay bound");
  opt(snc, "--n", n, "frame size")->required();
  opt(snc, "--k", k, "information bits");
  opt(snc, "--snr-db", snr_db, "SNR in dB");
  opt(snc, "--eps", eps_opt, "frame error probability (skips the RCUs run)");
  opt(snc, "--lambda", lambda, "arrival probability per channel use")->required();
  opt(snc, "--d0", d0, "latency budget (channel uses)")->required();
  add_common(snc);

  CLI::App* thr = app.add_subcommand("throughput", "max throughput vs frame size");
  opt(thr, "--snr-db", snr_db, "SNR in dB")->required();
  opt(thr, "--k", k, "information bits")->required();
  opt(thr, "--d0", d0, "latency budget (channel uses)")->required();
  opt(thr, "--target", target, "delay violation target")->required();
  opt(thr, "--n-range", n_range, "frame size sweep lo:hi[:step]");
  opt(thr, "--method", thr_method, "exact|snc");
  add_common(thr);

  CLI::App* vlsf = app.add_subcommand("vlsf-bound", "VLSF threshold-decoding bounds");
  opt(vlsf, "--n", n, "frame size")->required();
  opt(vlsf, "--k", k, "information bits")->required();
  opt(vlsf, "--snr-db", snr_db, "SNR in dB")->required();
  opt(vlsf, "--gamma", gamma_opt, "decoding threshold (nats)");
  opt(vlsf, "--gamma-grid", gamma_grid, "lo:hi:count log grid, or 'default'");
  opt(vlsf, "--ell-max", ell_max, "max frames per codeword");
  opt(vlsf, "--lambda", lambda_opt, "arrival probability (enables the P_dv sweep)");
  opt(vlsf, "--d0", d0_opt, "latency budget (channel uses, with --lambda)");
  add_common(vlsf);

  CLI::App* accdf = app.add_subcommand("age-ccdf", "peak-age CCDF per policy");
  opt(accdf, "--policy", policy, "dwt|ktn|ktl|lcfs-s")->required();
  opt(accdf, "--n", n, "frame size")->required();
  opt(accdf, "--lambda", lambda, "arrival probability per channel use")->required();
  opt(accdf, "--eps", eps, "frame error probability")->required();
  opt(accdf, "--amax", amax, "largest peak age (frames)");
  opt(accdf, "--method", method, "exact|saddlepoint|both");
  add_common(accdf);

  CLI::App* aviol = app.add_subcommand("age-violation", "peak-age violation probability");
  opt(aviol, "--policy", policy, "dwt|ktn|ktl|lcfs-s")->required();
  opt(aviol, "--n", n, "frame size")->required();
  opt(aviol, "--lambda", lambda, "arrival probability per channel use")->required();
  opt(aviol, "--eps", eps, "frame error probability")->required();
  opt(aviol, "--a0", a0, "age budget (channel uses)")->required();
  opt(aviol, "--method", method, "exact|saddlepoint");
  add_common(aviol);

  CLI::App* hrl = app.add_subcommand("high-rate-limit", "lambda->1 peak-age limits");
  opt(hrl, "--policy", policy, "dwt|ktn|ktl|lcfs-s|all")->required();
  opt(hrl, "--eps", eps, "frame error probability")->required();
  opt(hrl, "--a0", a0, "age budget (channel uses)")->required();
  opt(hrl, "--n", n, "frame size")->required();
  add_common(hrl);

  CLI::App* simc = app.add_subcommand("simulate", "discrete-event simulation oracle");
  opt(simc, "--model", model, "fcfs|async|age")->required();
  opt(simc, "--policy", policy, "age policy (with --model age)");
  opt(simc, "--n", n, "frame size")->required();
  opt(simc, "--lambda", lambda, "arrival probability per channel use")->required();
  opt(simc, "--eps", eps, "frame error probability")->required();
  std::uint64_t num = 100000;
  opt(simc, "--num", num, "bulks / packets / departures to record");
  opt(simc, "--warmup", warmup_opt, "burn-in observations (default max(1000, num/10))");
  opt(simc, "--grid-max", grid_max, "largest CCDF grid index");
  add_common(simc);

  try {
    const std::vector<std::string> merged = merge_config(raw);
    // CLI11 parses tokens in reverse order.
    std::vector<std::string> rev(merged.rbegin(), merged.rend());
    app.parse(rev);

    if (rcus->parsed()) return cmd_rcus(n, k, snr_db, common);
    if (dccdf->parsed()) {
      return cmd_delay_ccdf(n, k, snr_db, eps_opt, lambda, dmax, method,
                            dccdf->count("--async") > 0, common);
    }
    if (dviol->parsed()) {
      return cmd_delay_violation(n, k, snr_db, eps_opt, lambda, d0, method,
                                 dviol->count("--async") > 0, common);
    }
    if (snc->parsed()) return cmd_snc_bound(n, k, snr_db, eps_opt, lambda, d0, common);
    if (thr->parsed()) return cmd_throughput(snr_db, k, d0, target, n_range, thr_method, common);
    if (vlsf->parsed()) {
      return cmd_vlsf_bound(n, k, snr_db, gamma_opt, gamma_grid, ell_max, lambda_opt, d0_opt,
                            common);
    }
    if (accdf->parsed()) return cmd_age_ccdf(policy, n, lambda, eps, amax, method, common);
    if (aviol->parsed()) return cmd_age_violation(policy, n, lambda, eps, a0, method, common);
    if (hrl->parsed()) return cmd_high_rate_limit(policy, eps, a0, n, common);
    if (simc->parsed()) {
      return cmd_simulate(model, policy, n, lambda, eps, num, warmup_opt, grid_max, common);
    }
    return error_exit(1, "ConfigError", "no subcommand given");
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return error_exit(1, "ConfigError", e.what());
  } catch (const urllc::ConfigError& e) {
    return error_exit(1, "ConfigError", e.what());
  } catch (const urllc::StabilityError& e) {
    return error_exit(2, "StabilityError", e.what());
  } catch (const urllc::InfeasibleError& e) {
    return error_exit(2, "InfeasibleError", e.what());
  } catch (const urllc::NumericalError& e) {
    return error_exit(3, "NumericalError", e.what());
  } catch (const std::exception& e) {
    return error_exit(3, "InternalError", e.what());
  }
}

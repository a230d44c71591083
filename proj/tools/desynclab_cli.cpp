// Command-line front end: grid simulation, closed-form estimates, the
// model-vs-simulation comparison report, the churn/period calculators, and
// the update-distribution diagnostic. All tabular output is CSV with fixed
// headers; exit codes are 0 (ok), 2 (usage/config), 3 (scan cap).

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "desynclab/applications.hpp"
#include "desynclab/batch.hpp"
#include "desynclab/config_file.hpp"
#include "desynclab/csv.hpp"
#include "desynclab/engine.hpp"
#include "desynclab/estimators.hpp"
#include "desynclab/stats.hpp"
#include "desynclab/stochastic_process.hpp"

using namespace desynclab;

namespace {

constexpr const char* kSummaryHeader =
    "protocol,W,alpha,b_thres,sigma_delta_s,T_s,trials,mean_cycles,"
    "std_cycles,model_k,noise_limited,conjecture_k,bound_k,within_one_std";

constexpr const char* kTrialHeader =
    "protocol,W,alpha,b_thres,trial,seed,converged,network_cycles";

constexpr const char* kEstimateHeader =
    "protocol,W,alpha,b_thres,sigma_delta_s,T_s,model_k,target_sigma,"
    "achieved_sigma,phase_updates,noise_limited,conjecture_k,bound_k,"
    "bound_singular,bound_assumption_violated";

constexpr const char* kTrajectoryHeader = "protocol,W,alpha,b_thres,index,sigma";

constexpr const char* kDiagnosticHeader =
    "protocol,W,alpha,update_index,n_samples,mean,stddev,skewness,"
    "excess_kurtosis,ks_normal,ks_uniform";

// ---------------------------------------------------------------------------
// Value parsing

double parse_double(const std::string& s, const std::string& what) {
  try {
    size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("invalid number '" + s + "' for " + what);
  }
}

long parse_long(const std::string& s, const std::string& what) {
  try {
    size_t pos = 0;
    const long v = std::stol(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("invalid integer '" + s + "' for " + what);
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) parts.push_back(item);
  return parts;
}

// "x" or comma list "x,y,z".
std::vector<double> parse_double_list(const std::string& s,
                                      const std::string& what) {
  std::vector<double> out;
  for (const std::string& part : split(s, ','))
    out.push_back(parse_double(part, what));
  if (out.empty()) throw std::invalid_argument("empty list for " + what);
  return out;
}

std::vector<int> parse_int_list(const std::string& s, const std::string& what) {
  std::vector<int> out;
  for (const std::string& part : split(s, ','))
    out.push_back(static_cast<int>(parse_long(part, what)));
  if (out.empty()) throw std::invalid_argument("empty list for " + what);
  return out;
}

// Single value, comma list, or inclusive range "a:b:step". Range points are
// snapped to 12 decimals so the emitted grid reads cleanly.
std::vector<double> parse_alpha_spec(const std::string& s) {
  if (s.find(':') == std::string::npos)
    return parse_double_list(s, "alpha");
  const std::vector<std::string> parts = split(s, ':');
  if (parts.size() != 3)
    throw std::invalid_argument("alpha range must be start:stop:step, got '" +
                                s + "'");
  const double a = parse_double(parts[0], "alpha range start");
  const double b = parse_double(parts[1], "alpha range stop");
  const double step = parse_double(parts[2], "alpha range step");
  if (!(step > 0.0) || b < a)
    throw std::invalid_argument("alpha range needs stop >= start, step > 0");
  std::vector<double> out;
  const long n = std::lround((b - a) / step) + 1;
  for (long i = 0; i < n; ++i) {
    double v = a + static_cast<double>(i) * step;
    v = std::round(v * 1e12) / 1e12;
    if (v > b + 1e-9) break;
    out.push_back(v);
  }
  return out;
}

Protocol parse_protocol(const std::string& s) {
  if (s == "desync") return Protocol::kDesync;
  if (s == "pco") return Protocol::kPco;
  throw std::invalid_argument("protocol must be desync or pco, got '" + s +
                              "'");
}

DesyncSigmaMode parse_desync_mode(const std::string& s) {
  if (s == "refresh") return DesyncSigmaMode::kRefresh;
  if (s == "convolution") return DesyncSigmaMode::kConvolution;
  throw std::invalid_argument(
      "desync-sigma-mode must be refresh or convolution, got '" + s + "'");
}

PcoIndexMode parse_pco_mode(const std::string& s) {
  if (s == "cycle") return PcoIndexMode::kCycle;
  if (s == "cumulative") return PcoIndexMode::kCumulative;
  throw std::invalid_argument(
      "pco-index-mode must be cycle or cumulative, got '" + s + "'");
}

int env_thread_count() {
  const char* env = std::getenv("DESYNCLAB_THREADS");
  if (env == nullptr || *env == '\0') return 0;
  const long v = parse_long(env, "DESYNCLAB_THREADS");
  if (v < 0) throw std::invalid_argument("DESYNCLAB_THREADS must be >= 0");
  return static_cast<int>(v);
}

// ---------------------------------------------------------------------------
// Flag bookkeeping: every option is captured as text so file-config values
// can fill in anything the command line left untouched.

struct Binding {
  CLI::Option* option;
  std::string key;
  std::string* target;
};

class OptionSet {
 public:
  void add(CLI::App* app, const std::string& flag, std::string* target,
           const std::string& help) {
    CLI::Option* opt = app->add_option(flag, *target, help);
    bindings_.push_back({opt, flag.substr(2), target});
  }

  void add_toggle(CLI::App* app, const std::string& flag, bool* target,
                  const std::string& help) {
    CLI::Option* opt = app->add_flag(flag, *target, help);
    toggles_.push_back({opt, flag.substr(2), target});
  }

  // Command line wins; otherwise the subcommand section, then the global
  // section of the config file.
  void apply_config(const ConfigSections& cfg, const std::string& section) {
    auto lookup = [&](const std::string& key) -> const std::string* {
      auto sec = cfg.find(section);
      if (sec != cfg.end()) {
        auto kv = sec->second.find(key);
        if (kv != sec->second.end()) return &kv->second;
      }
      sec = cfg.find("");
      if (sec != cfg.end()) {
        auto kv = sec->second.find(key);
        if (kv != sec->second.end()) return &kv->second;
      }
      return nullptr;
    };
    for (const Binding& b : bindings_) {
      if (b.option->count() > 0) continue;
      if (const std::string* v = lookup(b.key)) *b.target = *v;
    }
    for (const Toggle& t : toggles_) {
      if (t.option->count() > 0) continue;
      if (const std::string* v = lookup(t.key)) {
        if (*v == "1" || *v == "true") {
          *t.target = true;
        } else if (*v == "0" || *v == "false") {
          *t.target = false;
        } else {
          throw std::invalid_argument("config key '" + t.key +
                                      "' expects a boolean, got '" + *v + "'");
        }
      }
    }
  }

 private:
  struct Toggle {
    CLI::Option* option;
    std::string key;
    bool* target;
  };
  std::vector<Binding> bindings_;
  std::vector<Toggle> toggles_;
};

// Options shared by every experiment-shaped subcommand.
struct CommonOpts {
  std::string protocol = "desync";
  std::string w = "8";
  std::string alpha = "0.5";
  std::string b_thres = "0.001";
  std::string c_conf = "0.9999";
  std::string sigma_delta_ms = "0.34";
  std::string period_s = "1.0";
  std::string misfire = "0.004";
  std::string trials = "50";
  std::string seed = "1";
  std::string out;
  std::string desync_sigma_mode = "refresh";
  std::string pco_index_mode = "cycle";

  void register_options(CLI::App* app, OptionSet* set, bool with_protocol_default) {
    if (with_protocol_default) {
      set->add(app, "--protocol", &protocol, "desync or pco");
    }
    set->add(app, "--w", &w, "node count, single value or comma list");
    set->add(app, "--alpha", &alpha,
             "coupling constant: value, comma list, or start:stop:step");
    set->add(app, "--b-thres", &b_thres,
             "gap threshold, single value or comma list");
    set->add(app, "--c-conf", &c_conf, "confidence coefficient");
    set->add(app, "--sigma-delta-ms", &sigma_delta_ms,
             "phase noise std in milliseconds");
    set->add(app, "--period-s", &period_s, "firing period in seconds");
    set->add(app, "--misfire", &misfire, "probability a firing stays silent");
    set->add(app, "--trials", &trials, "trials per cell");
    set->add(app, "--seed", &seed, "base seed; trial i uses seed+i");
    set->add(app, "--out", &out, "write output to this file instead of stdout");
    set->add(app, "--desync-sigma-mode", &desync_sigma_mode,
             "refresh or convolution");
    set->add(app, "--pco-index-mode", &pco_index_mode, "cycle or cumulative");
  }

  ProtocolParams make_params(int w_value, double alpha_value,
                             double b_value) const {
    ProtocolParams p;
    p.w = w_value;
    p.alpha = alpha_value;
    p.b_thres = b_value;
    p.c_conf = parse_double(c_conf, "c-conf");
    p.period_s = parse_double(period_s, "period-s");
    p.sigma_delta_s = parse_double(sigma_delta_ms, "sigma-delta-ms") / 1000.0;
    p.misfire_prob = parse_double(misfire, "misfire");
    return p;
  }
};

void write_output(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot open output file " + out_path);
  f << text;
}

std::string join_row(const std::vector<std::string>& fields) {
  std::string row;
  for (size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) row += ',';
    row += fields[i];
  }
  row += '\n';
  return row;
}

std::string fixed2(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string fixed3(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

// ---------------------------------------------------------------------------
// simulate

struct SimulateOpts {
  CommonOpts common;
  bool per_trial = false;
};

int run_simulate(const SimulateOpts& o) {
  const Protocol proto = parse_protocol(o.common.protocol);
  const std::vector<int> ws = parse_int_list(o.common.w, "w");
  const std::vector<double> bs = parse_double_list(o.common.b_thres, "b-thres");
  const std::vector<double> alphas = parse_alpha_spec(o.common.alpha);
  const int trials = static_cast<int>(parse_long(o.common.trials, "trials"));
  const std::uint64_t seed =
      static_cast<std::uint64_t>(parse_long(o.common.seed, "seed"));
  const int threads = env_thread_count();

  std::vector<SimConfig> cells;
  for (int w : ws)
    for (double b : bs)
      for (double a : alphas) {
        SimConfig c;
        c.params = o.common.make_params(w, a, b);
        c.protocol = proto;
        c.params.validate();
        cells.push_back(c);
      }

  std::string text(kSummaryHeader);
  text += '\n';
  std::vector<std::vector<TrialRecord>> all;
  all.reserve(cells.size());
  for (const SimConfig& c : cells)
    all.push_back(run_cell(c, trials, seed, threads));

  std::string notes;
  for (size_t i = 0; i < cells.size(); ++i) {
    const GridSummary s = summarize(cells[i], all[i]);
    text += join_row({protocol_name(s.protocol), csv_long(s.w),
                      csv_double(s.alpha), csv_double(s.b_thres),
                      csv_double(cells[i].params.sigma_delta_s),
                      csv_double(cells[i].params.period_s),
                      csv_long(s.n_trials), csv_double(s.mean_cycles),
                      csv_double(s.std_cycles), "", "", "", "", ""});
    if (s.non_converged > 0) {
      notes += "# non_converged protocol=" +
               std::string(protocol_name(s.protocol)) + " W=" +
               csv_long(s.w) + " alpha=" + csv_double(s.alpha) +
               " b_thres=" + csv_double(s.b_thres) +
               " count=" + csv_long(s.non_converged) + "\n";
    }
  }
  text += notes;

  if (o.per_trial) {
    text += '\n';
    text += kTrialHeader;
    text += '\n';
    for (size_t i = 0; i < cells.size(); ++i) {
      for (size_t t = 0; t < all[i].size(); ++t) {
        const TrialRecord& r = all[i][t];
        text += join_row(
            {protocol_name(cells[i].protocol), csv_long(cells[i].params.w),
             csv_double(cells[i].params.alpha),
             csv_double(cells[i].params.b_thres), csv_long(t),
             csv_long(static_cast<long>(r.seed)), csv_bool(r.converged),
             r.converged ? csv_long(r.network_cycles) : ""});
      }
    }
  }
  write_output(o.common.out, text);
  return 0;
}

// ---------------------------------------------------------------------------
// estimate

struct EstimateOpts {
  CommonOpts common;
  bool trajectory = false;
};

int run_estimate(const EstimateOpts& o) {
  const Protocol proto = parse_protocol(o.common.protocol);
  const std::vector<int> ws = parse_int_list(o.common.w, "w");
  const std::vector<double> bs = parse_double_list(o.common.b_thres, "b-thres");
  const std::vector<double> alphas = parse_alpha_spec(o.common.alpha);
  const DesyncSigmaMode dmode = parse_desync_mode(o.common.desync_sigma_mode);
  const PcoIndexMode pmode = parse_pco_mode(o.common.pco_index_mode);

  std::string text(kEstimateHeader);
  text += '\n';
  std::string trail;

  for (int w : ws)
    for (double b : bs)
      for (double a : alphas) {
        const ProtocolParams p = o.common.make_params(w, a, b);
        p.validate();
        const EstimateResult est = proto == Protocol::kDesync
                                       ? estimate_desync_cycles(p, dmode)
                                       : estimate_pco_cycles(p, pmode);
        std::string conj, bound, bound_singular, bound_violated;
        if (proto == Protocol::kDesync) {
          conj = csv_double(desync_order_conjecture(p, 1.0));
        } else {
          const PcoBound pb = pco_lower_bound(p);
          bound_singular = csv_bool(pb.singular);
          bound_violated = csv_bool(pb.assumption_violated);
          if (!pb.singular) bound = csv_long(pb.k);
        }
        text += join_row({protocol_name(proto), csv_long(w), csv_double(a),
                          csv_double(b), csv_double(p.sigma_delta_s),
                          csv_double(p.period_s), csv_long(est.cycles),
                          csv_double(est.target_sigma),
                          csv_double(est.achieved_sigma),
                          csv_long(est.phase_updates),
                          csv_bool(est.noise_limited), conj, bound,
                          bound_singular, bound_violated});
        if (o.trajectory) {
          for (size_t i = 0; i < est.trajectory.size(); ++i) {
            trail += join_row({protocol_name(proto), csv_long(w),
                               csv_double(a), csv_double(b),
                               csv_long(static_cast<long>(i + 1)),
                               csv_double(est.trajectory[i])});
          }
        }
      }

  if (o.trajectory) {
    text += '\n';
    text += kTrajectoryHeader;
    text += '\n';
    text += trail;
  }
  write_output(o.common.out, text);
  return 0;
}

// ---------------------------------------------------------------------------
// compare

struct CompareOpts {
  CommonOpts common;
  std::string protocols = "desync,pco";
};

struct CompareCell {
  Protocol proto;
  int w;
  double alpha;
  double b;
  GridSummary sum;
  EstimateResult est;
  double conj_scaled = std::numeric_limits<double>::quiet_NaN();
  long bound_k = 0;
  bool bound_valid = false;
  bool within_valid = false;
  bool within = false;
};

int run_compare(const CompareOpts& o) {
  std::vector<Protocol> protos;
  for (const std::string& p : split(o.protocols, ','))
    protos.push_back(parse_protocol(p));
  const std::vector<int> ws = parse_int_list(o.common.w, "w");
  const std::vector<double> bs = parse_double_list(o.common.b_thres, "b-thres");
  const std::vector<double> alphas = parse_alpha_spec(o.common.alpha);
  if (alphas.size() < 3)
    throw std::invalid_argument(
        "compare needs at least 3 alpha grid points for a correlation");
  const int trials = static_cast<int>(parse_long(o.common.trials, "trials"));
  const std::uint64_t seed =
      static_cast<std::uint64_t>(parse_long(o.common.seed, "seed"));
  const int threads = env_thread_count();
  const DesyncSigmaMode dmode = parse_desync_mode(o.common.desync_sigma_mode);
  const PcoIndexMode pmode = parse_pco_mode(o.common.pco_index_mode);

  // Cells in emission order; one flat batch over all of them.
  std::vector<CompareCell> cells;
  std::vector<SimConfig> configs;
  for (Protocol proto : protos)
    for (int w : ws)
      for (double b : bs)
        for (double a : alphas) {
          CompareCell cell;
          cell.proto = proto;
          cell.w = w;
          cell.alpha = a;
          cell.b = b;
          cells.push_back(cell);
          SimConfig c;
          c.params = o.common.make_params(w, a, b);
          c.protocol = proto;
          c.params.validate();
          configs.push_back(c);
        }

  const std::vector<GridSummary> sums =
      run_grid(configs, trials, seed, threads);
  for (size_t i = 0; i < cells.size(); ++i) {
    cells[i].sum = sums[i];
    const ProtocolParams& p = configs[i].params;
    cells[i].est = cells[i].proto == Protocol::kDesync
                       ? estimate_desync_cycles(p, dmode)
                       : estimate_pco_cycles(p, pmode);
    if (cells[i].proto == Protocol::kPco) {
      const PcoBound pb = pco_lower_bound(p);
      cells[i].bound_valid = !pb.singular;
      cells[i].bound_k = pb.k;
    }
    const double m = cells[i].sum.mean_cycles;
    const double s = cells[i].sum.std_cycles;
    if (!std::isnan(m) && !std::isnan(s)) {
      cells[i].within_valid = true;
      cells[i].within =
          std::fabs(static_cast<double>(cells[i].est.cycles) - m) <= s;
    }
  }

  // Fit the order-curve scale per (w, b) over the alpha sweep, then fill
  // the scaled value into each cell of that curve.
  auto curve_cells = [&](Protocol proto, int w, double b) {
    std::vector<size_t> idx;
    for (size_t i = 0; i < cells.size(); ++i)
      if (cells[i].proto == proto && cells[i].w == w && cells[i].b == b)
        idx.push_back(i);
    return idx;
  };
  for (int w : ws)
    for (double b : bs) {
      const std::vector<size_t> idx = curve_cells(Protocol::kDesync, w, b);
      if (idx.empty()) continue;
      std::vector<double> raw, means;
      for (size_t i : idx) {
        if (std::isnan(cells[i].sum.mean_cycles)) continue;
        ProtocolParams p;
        p.w = w;
        p.alpha = cells[i].alpha;
        p.b_thres = b;
        raw.push_back(desync_order_conjecture(p, 1.0));
        means.push_back(cells[i].sum.mean_cycles);
      }
      if (raw.size() < 2) continue;
      const double scale = least_squares_scale(raw, means);
      for (size_t i : idx) {
        ProtocolParams p;
        p.w = w;
        p.alpha = cells[i].alpha;
        p.b_thres = b;
        cells[i].conj_scaled = desync_order_conjecture(p, scale);
      }
    }

  std::string text(kSummaryHeader);
  text += '\n';
  for (const CompareCell& c : cells) {
    text += join_row(
        {protocol_name(c.proto), csv_long(c.w), csv_double(c.alpha),
         csv_double(c.b), csv_double(o.common.make_params(c.w, c.alpha, c.b)
                                         .sigma_delta_s),
         csv_double(parse_double(o.common.period_s, "period-s")),
         csv_long(c.sum.n_trials), csv_double(c.sum.mean_cycles),
         csv_double(c.sum.std_cycles), csv_long(c.est.cycles),
         csv_bool(c.est.noise_limited),
         c.proto == Protocol::kDesync ? csv_double(c.conj_scaled) : "",
         c.proto == Protocol::kPco && c.bound_valid ? csv_long(c.bound_k) : "",
         c.within_valid ? csv_bool(c.within) : ""});
  }

  // Summary block.
  for (Protocol proto : protos) {
    for (double b : bs) {
      std::vector<double> per_w_r;
      for (int w : ws) {
        std::vector<double> model, sim, conj;
        for (size_t i : curve_cells(proto, w, b)) {
          if (std::isnan(cells[i].sum.mean_cycles)) continue;
          model.push_back(static_cast<double>(cells[i].est.cycles));
          sim.push_back(cells[i].sum.mean_cycles);
          if (proto == Protocol::kDesync)
            conj.push_back(cells[i].conj_scaled);
        }
        if (sim.size() < 3) continue;
        const double r = pearson(model, sim);
        per_w_r.push_back(r);
        text += "# pearson protocol=" + std::string(protocol_name(proto)) +
                " b_thres=" + csv_double(b) + " W=" + csv_long(w) +
                " r=" + csv_double(r) + " n=" + csv_long(sim.size()) + "\n";
        if (proto == Protocol::kDesync) {
          text += "# conjecture_pearson protocol=desync b_thres=" +
                  csv_double(b) + " W=" + csv_long(w) +
                  " r=" + csv_double(pearson(conj, sim)) + "\n";
        }
      }
      if (!per_w_r.empty()) {
        text += "# pearson_avg protocol=" +
                std::string(protocol_name(proto)) + " b_thres=" +
                csv_double(b) + " r=" + csv_double(mean(per_w_r)) + "\n";
      }
    }
  }

  int within_count = 0, within_total = 0;
  for (const CompareCell& c : cells)
    if (c.within_valid) {
      ++within_total;
      if (c.within) ++within_count;
    }
  if (within_total > 0) {
    text += "# within_one_std_fraction value=" +
            csv_double(static_cast<double>(within_count) / within_total) +
            " cells=" + csv_long(within_total) + "\n";
  }

  // Per-threshold shape summaries on the W-averaged simulation curve.
  for (Protocol proto : protos) {
    for (double b : bs) {
      std::vector<double> curve, curve_alpha;
      for (double a : alphas) {
        std::vector<double> vals;
        for (const CompareCell& c : cells)
          if (c.proto == proto && c.b == b && c.alpha == a &&
              !std::isnan(c.sum.mean_cycles))
            vals.push_back(c.sum.mean_cycles);
        if (!vals.empty()) {
          curve.push_back(mean(vals));
          curve_alpha.push_back(a);
        }
      }
      if (curve.size() < 3) continue;
      if (proto == Protocol::kDesync) {
        size_t arg = 0;
        for (size_t i = 1; i < curve.size(); ++i)
          if (curve[i] < curve[arg]) arg = i;
        text += "# desync_alpha_min b_thres=" + csv_double(b) +
                " alpha=" + csv_double(curve_alpha[arg]) +
                " mean=" + csv_double(curve[arg]) + "\n";
      } else {
        text += "# pco_spearman b_thres=" + csv_double(b) +
                " rho=" + csv_double(spearman(curve_alpha, curve)) + "\n";
      }
    }
  }

  write_output(o.common.out, text);
  return 0;
}

// ---------------------------------------------------------------------------
// apps bandwidth / apps period

struct BandwidthOpts {
  CommonOpts common;
  std::string bwsn = "86000";
  std::string tswap = "100";
  std::string tswap_range;  // "lo:hi" enables the sampled average
  std::string mc_samples = "100000";
};

int run_bandwidth(const BandwidthOpts& o) {
  const Protocol proto = parse_protocol(o.common.protocol);
  const std::vector<int> ws = parse_int_list(o.common.w, "w");
  const std::vector<double> bs = parse_double_list(o.common.b_thres, "b-thres");
  const std::vector<double> alphas = parse_alpha_spec(o.common.alpha);
  const DesyncSigmaMode dmode = parse_desync_mode(o.common.desync_sigma_mode);
  const PcoIndexMode pmode = parse_pco_mode(o.common.pco_index_mode);

  ChurnScenario s;
  s.b_wsn_bps = parse_double(o.bwsn, "bwsn");
  s.t_swap_s = parse_double(o.tswap, "tswap");
  s.mc_samples = parse_long(o.mc_samples, "mc-samples");
  s.seed = static_cast<std::uint64_t>(parse_long(o.common.seed, "seed"));
  if (!o.tswap_range.empty()) {
    const std::vector<std::string> parts = split(o.tswap_range, ':');
    if (parts.size() != 2)
      throw std::invalid_argument("tswap-range must be lo:hi");
    s.has_range = true;
    s.t_swap_lo_s = parse_double(parts[0], "tswap-range lo");
    s.t_swap_hi_s = parse_double(parts[1], "tswap-range hi");
  }

  std::string text =
      "protocol      W  alpha  b_thres        k   kbps_per_node\n";
  std::string notes;
  for (int w : ws)
    for (double b : bs)
      for (double a : alphas) {
        const ProtocolParams p = o.common.make_params(w, a, b);
        p.validate();
        const BandwidthResult r =
            bandwidth_per_node(s, p, proto, dmode, pmode);
        char buf[128];
        std::snprintf(buf, sizeof(buf), "%-10s %4d  %5.2f  %7.4g  %7ld  %14.2f\n",
                      protocol_name(proto), w, a, b, r.k, r.bps / 1000.0);
        text += buf;
        if (r.clamped)
          notes += "note: re-convergence consumes the swap interval at "
                   "alpha=" + fixed2(a) + "; bandwidth clamped to 0\n";
        if (r.noise_limited)
          notes += "note: model k at alpha=" + fixed2(a) +
                   " is noise limited (target spread below the noise floor)\n";
      }
  text += notes;
  write_output(o.common.out, text);
  return 0;
}

struct PeriodOpts {
  CommonOpts common;
  std::string tsstate = "10";
  bool no_renorm = false;
};

int run_period(const PeriodOpts& o) {
  const Protocol proto = parse_protocol(o.common.protocol);
  const std::vector<int> ws = parse_int_list(o.common.w, "w");
  const std::vector<double> bs = parse_double_list(o.common.b_thres, "b-thres");
  const std::vector<double> alphas = parse_alpha_spec(o.common.alpha);
  const DesyncSigmaMode dmode = parse_desync_mode(o.common.desync_sigma_mode);
  const PcoIndexMode pmode = parse_pco_mode(o.common.pco_index_mode);
  const double tss = parse_double(o.tsstate, "tsstate");

  std::string text =
      "protocol      W  alpha  b_thres        k  period_s  iterations\n";
  std::string notes;
  for (int w : ws)
    for (double b : bs)
      for (double a : alphas) {
        ProtocolParams p = o.common.make_params(w, a, b);
        p.validate();
        const PeriodResult r =
            solve_period(tss, p, proto, !o.no_renorm, dmode, pmode);
        char buf[128];
        std::snprintf(buf, sizeof(buf), "%-10s %4d  %5.2f  %7.4g  %7ld  %8.3f  %10d\n",
                      protocol_name(proto), w, a, b, r.k, r.t_s, r.iterations);
        text += buf;
        if (!r.converged)
          notes += "note: period iteration alternates between " +
                   fixed3(r.prev_t_s) + " s and " + fixed3(r.t_s) +
                   " s at alpha=" + fixed2(a) + "; reporting the last\n";
        if (r.noise_limited)
          notes += "note: model k at alpha=" + fixed2(a) +
                   " is noise limited (target spread below the noise floor)\n";
      }
  text += notes;
  write_output(o.common.out, text);
  return 0;
}

// ---------------------------------------------------------------------------
// diagnose-normality

struct DiagnoseOpts {
  CommonOpts common;
  std::string update_index = "5";
  std::string samples = "10000";
};

int run_diagnose(const DiagnoseOpts& o) {
  const Protocol proto = parse_protocol(o.common.protocol);
  const std::vector<int> ws = parse_int_list(o.common.w, "w");
  const std::vector<double> bs = parse_double_list(o.common.b_thres, "b-thres");
  const std::vector<double> alphas = parse_alpha_spec(o.common.alpha);
  const int index =
      static_cast<int>(parse_long(o.update_index, "update-index"));
  const long n = parse_long(o.samples, "samples");

  std::string text(kDiagnosticHeader);
  text += '\n';
  for (int w : ws)
    for (double b : bs)
      for (double a : alphas) {
        SimConfig c;
        c.params = o.common.make_params(w, a, b);
        c.protocol = proto;
        c.seed = static_cast<std::uint64_t>(parse_long(o.common.seed, "seed"));
        c.params.validate();
        const DiagnosticReport rep = normality_diagnostic(c, index, n);
        text += join_row({protocol_name(proto), csv_long(w), csv_double(a),
                          csv_long(index), csv_long(rep.n_samples),
                          csv_double(rep.mean), csv_double(rep.stddev),
                          csv_double(rep.skewness),
                          csv_double(rep.excess_kurtosis),
                          csv_double(rep.ks_normal),
                          csv_double(rep.ks_uniform)});
      }
  write_output(o.common.out, text);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"desynchronization convergence laboratory"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path,
                 "key=value file with [subcommand] sections; flags override");

  SimulateOpts sim;
  OptionSet sim_set;
  CLI::App* sim_app = app.add_subcommand("simulate", "run trial grids");
  sim.common.register_options(sim_app, &sim_set, true);
  sim_set.add_toggle(sim_app, "--per-trial", &sim.per_trial,
                     "append one row per trial");

  EstimateOpts est;
  OptionSet est_set;
  CLI::App* est_app =
      app.add_subcommand("estimate", "closed-form convergence estimates");
  est.common.register_options(est_app, &est_set, true);
  est_set.add_toggle(est_app, "--trajectory", &est.trajectory,
                     "append the sigma trajectories");

  CompareOpts cmp;
  cmp.common.w = "4,8,16";
  cmp.common.alpha = "0.05:0.95:0.1";
  cmp.common.b_thres = "0.001,0.02";
  OptionSet cmp_set;
  CLI::App* cmp_app =
      app.add_subcommand("compare", "simulation vs model comparison report");
  cmp.common.register_options(cmp_app, &cmp_set, false);
  cmp_set.add(cmp_app, "--protocol", &cmp.protocols,
              "protocols to compare, comma list");

  CLI::App* apps_app = app.add_subcommand("apps", "application calculators");
  apps_app->require_subcommand(1);

  BandwidthOpts bw;
  bw.common.w = "10";
  bw.common.alpha = "0.25";
  OptionSet bw_set;
  CLI::App* bw_app =
      apps_app->add_subcommand("bandwidth", "per-node bandwidth under churn");
  bw.common.register_options(bw_app, &bw_set, true);
  bw_set.add(bw_app, "--bwsn", &bw.bwsn, "application bandwidth in bps");
  bw_set.add(bw_app, "--tswap", &bw.tswap, "mean seconds between swaps");
  bw_set.add(bw_app, "--tswap-range", &bw.tswap_range,
             "lo:hi uniform range; averages the usable fraction by sampling");
  bw_set.add(bw_app, "--mc-samples", &bw.mc_samples,
             "samples for the range average");

  PeriodOpts per;
  per.common.w = "10";
  per.common.alpha = "0.95";
  OptionSet per_set;
  CLI::App* per_app =
      apps_app->add_subcommand("period", "firing period for a target "
                                         "convergence time");
  per.common.register_options(per_app, &per_set, true);
  per_set.add(per_app, "--tsstate", &per.tsstate,
              "desired convergence time in seconds");
  per_set.add_toggle(per_app, "--no-renorm", &per.no_renorm,
                     "skip the 1/T noise renormalization feedback");

  DiagnoseOpts diag;
  OptionSet diag_set;
  CLI::App* diag_app = app.add_subcommand(
      "diagnose-normality", "shape statistics of the update distribution");
  diag.common.register_options(diag_app, &diag_set, true);
  diag_set.add(diag_app, "--update-index", &diag.update_index,
               "updates applied before sampling (0 = initial)");
  diag_set.add(diag_app, "--samples", &diag.samples, "sample count");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    ConfigSections cfg;
    if (!config_path.empty()) cfg = parse_config_file(config_path);
    if (sim_app->parsed()) {
      sim_set.apply_config(cfg, "simulate");
      return run_simulate(sim);
    }
    if (est_app->parsed()) {
      est_set.apply_config(cfg, "estimate");
      return run_estimate(est);
    }
    if (cmp_app->parsed()) {
      cmp_set.apply_config(cfg, "compare");
      return run_compare(cmp);
    }
    if (apps_app->parsed()) {
      if (bw_app->parsed()) {
        bw_set.apply_config(cfg, "bandwidth");
        return run_bandwidth(bw);
      }
      per_set.apply_config(cfg, "period");
      return run_period(per);
    }
    diag_set.apply_config(cfg, "diagnose-normality");
    return run_diagnose(diag);
  } catch (const ScanCapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

#include "apgrad/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace apgrad {

namespace {

using nlohmann::json;

std::string f17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_f64(const std::string& v, const std::string& key) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size() || !std::isfinite(x)) throw std::invalid_argument("trailing junk");
    return x;
  } catch (const std::exception&) {
    throw ConfigError("bad numeric value '" + v + "' for " + key);
  }
}

std::int64_t parse_i64(const std::string& v, const std::string& key) {
  try {
    std::size_t pos = 0;
    const long long x = std::stoll(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing junk");
    return x;
  } catch (const std::exception&) {
    throw ConfigError("bad integer value '" + v + "' for " + key);
  }
}

std::uint64_t parse_u64(const std::string& v, const std::string& key) {
  try {
    std::size_t pos = 0;
    const unsigned long long x = std::stoull(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing junk");
    return x;
  } catch (const std::exception&) {
    throw ConfigError("bad unsigned value '" + v + "' for " + key);
  }
}

Vec parse_vec(const std::string& v, const std::string& key) {
  Vec out;
  for (const auto& part : split(v, ',')) out.push_back(parse_f64(trim(part), key));
  return out;
}

std::map<std::string, std::string> parse_kv_list(const std::string& body,
                                                 const std::string& context) {
  std::map<std::string, std::string> kv;
  if (trim(body).empty()) return kv;
  for (const auto& part : split(body, ',')) {
    const auto eq = part.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(context + ": expected key=value, got '" + part + "'");
    }
    kv[trim(part.substr(0, eq))] = trim(part.substr(eq + 1));
  }
  return kv;
}

void reject_unknown(const std::map<std::string, std::string>& kv,
                    std::initializer_list<const char*> known, const std::string& context) {
  for (const auto& [k, v] : kv) {
    bool ok = false;
    for (const char* name : known) ok = ok || k == name;
    if (!ok) throw ConfigError(context + ": unknown key '" + k + "'");
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

double mean_of(const std::vector<double>& v) {
  double s = 0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double se_of(const std::vector<double>& v) {
  if (v.size() < 2) return 0;
  const double m = mean_of(v);
  double s2 = 0;
  for (double x : v) s2 += (x - m) * (x - m);
  s2 /= static_cast<double>(v.size() - 1);
  return std::sqrt(s2 / static_cast<double>(v.size()));
}

// Inputs for one comparison row before aggregation.
struct SummaryLite {
  std::string problem;
  std::string label;
  double final_f = 0;
  double final_gap = 0;
  double exponent = std::numeric_limits<double>::quiet_NaN();
  double steps_per_sec = 0;
};

std::vector<ComparisonRow> aggregate_rows(const std::vector<SummaryLite>& summaries) {
  if (summaries.empty()) throw ConfigError("comparison needs at least one run summary");
  for (const auto& s : summaries) {
    if (s.problem != summaries.front().problem) {
      throw ConfigError("comparison rejects mismatched problems: '" + summaries.front().problem +
                        "' vs '" + s.problem + "'");
    }
  }
  std::vector<std::string> order;
  std::map<std::string, std::vector<const SummaryLite*>> groups;
  for (const auto& s : summaries) {
    if (!groups.count(s.label)) order.push_back(s.label);
    groups[s.label].push_back(&s);
  }
  std::vector<ComparisonRow> rows;
  for (const auto& label : order) {
    const auto& g = groups[label];
    ComparisonRow r;
    r.preset = label;
    r.runs = g.size();
    std::vector<double> f, gap, expo, sps;
    for (const auto* s : g) {
      f.push_back(s->final_f);
      gap.push_back(s->final_gap);
      sps.push_back(s->steps_per_sec);
      if (std::isfinite(s->exponent)) expo.push_back(s->exponent);
    }
    r.final_f_mean = mean_of(f);
    r.final_f_se = se_of(f);
    r.final_gap_mean = mean_of(gap);
    r.final_gap_se = se_of(gap);
    r.exponent_mean =
        expo.empty() ? std::numeric_limits<double>::quiet_NaN() : mean_of(expo);
    r.steps_per_sec = mean_of(sps);
    rows.push_back(r);
  }
  std::stable_sort(rows.begin(), rows.end(), [](const ComparisonRow& a, const ComparisonRow& b) {
    return a.final_f_mean < b.final_f_mean;
  });
  return rows;
}

double steps_per_sec(const RunRecord& r) {
  return r.wall_ms > 0 ? static_cast<double>(r.n_steps) / (r.wall_ms / 1000.0) : 0.0;
}

// Exponent of the averaged-iterate suboptimality decay; NaN when the
// record has no usable fit (no optimum, too few samples, or a flat tail).
double fit_exponent_or_nan(const RunRecord& rec, const std::optional<KnownOptimum>& opt) {
  if (!opt.has_value()) return std::numeric_limits<double>::quiet_NaN();
  std::vector<std::int64_t> ns;
  std::vector<double> qs;
  for (const auto& s : rec.samples) {
    ns.push_back(s.n);
    qs.push_back(s.f_xtilde - opt->f_star);
  }
  try {
    return fit_rate_exponent(ns, qs);
  } catch (const std::invalid_argument&) {
    return std::numeric_limits<double>::quiet_NaN();
  }
}

}  // namespace

ProblemSpec parse_problem_spec(const std::string& spec, const std::string& geometry) {
  if (geometry != "box" && geometry != "ball") {
    throw ConfigError("geometry must be 'box' or 'ball', got '" + geometry + "'");
  }
  const bool ball = geometry == "ball";
  const auto colon = spec.find(':');
  const std::string name = trim(colon == std::string::npos ? spec : spec.substr(0, colon));
  const std::string body = colon == std::string::npos ? "" : spec.substr(colon + 1);
  auto kv = parse_kv_list(body, "problem '" + name + "'");

  try {
    if (name == "quadratic") {
      reject_unknown(kv, {"d", "span", "sigma", "w", "seed", "t"}, "quadratic");
      const auto d = static_cast<std::size_t>(parse_i64(kv.count("d") ? kv["d"] : "10", "d"));
      const double span = kv.count("span") ? parse_f64(kv["span"], "span") : 10.0;
      const double sigma = kv.count("sigma") ? parse_f64(kv["sigma"], "sigma") : 0.1;
      const double w = kv.count("w") ? parse_f64(kv["w"], "w") : 1.0;
      const std::uint64_t seed = kv.count("seed") ? parse_u64(kv["seed"], "seed") : 12345;
      std::optional<Vec> target;
      if (kv.count("t")) target = Vec(d, parse_f64(kv["t"], "t"));
      return make_stochastic_quadratic(d, span, sigma, w, seed, target, ball);
    }
    if (name == "logistic") {
      reject_unknown(kv, {"d", "n", "noise", "w", "seed"}, "logistic");
      const auto d = static_cast<std::size_t>(parse_i64(kv.count("d") ? kv["d"] : "5", "d"));
      const auto n = static_cast<std::size_t>(parse_i64(kv.count("n") ? kv["n"] : "200", "n"));
      const double noise = kv.count("noise") ? parse_f64(kv["noise"], "noise") : 0.1;
      const double w = kv.count("w") ? parse_f64(kv["w"], "w") : 2.0;
      const std::uint64_t seed = kv.count("seed") ? parse_u64(kv["seed"], "seed") : 12345;
      return make_noisy_logistic(d, n, noise, w, seed, ball);
    }
    if (name == "wells") {
      reject_unknown(kv, {"d", "sigma", "w"}, "wells");
      const auto d = static_cast<std::size_t>(parse_i64(kv.count("d") ? kv["d"] : "10", "d"));
      const double sigma = kv.count("sigma") ? parse_f64(kv["sigma"], "sigma") : 0.5;
      const double w = kv.count("w") ? parse_f64(kv["w"], "w") : 2.0;
      return make_nonconvex_wells(d, sigma, w, ball);
    }
    if (name == "adversarial") {
      if (ball) throw ConfigError("adversarial problem is fixed to the box [-1,1]");
      reject_unknown(kv, {"period", "mag"}, "adversarial");
      const std::int64_t period = kv.count("period") ? parse_i64(kv["period"], "period") : 3;
      const double mag = kv.count("mag") ? parse_f64(kv["mag"], "mag") : 3.0;
      return make_adversarial_online(period, mag);
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("bad problem parameters: ") + e.what());
  }
  throw ConfigError("unknown problem '" + name +
                    "' (use quadratic, logistic, wells, or adversarial)");
}

std::vector<ResolvedRun> resolve_runs(const ExperimentConfig& cfg) {
  std::vector<ResolvedRun> out;
  std::vector<std::pair<std::string, Preset>> bases;
  if (cfg.presets.empty()) {
    Preset base;
    base.name = "custom";
    base.estimator = EstimatorKind::AmsGrad;
    base.schedule.alpha = AlphaRule::constant(1e-3);
    base.schedule.beta = BetaRule::constant(0.9);
    base.schedule.gamma = 0.0;
    base.schedule.delta = 0.999;
    base.schedule.epsilon = 1e-8;
    bases.emplace_back(base.name, base);
  } else {
    for (const auto& name : cfg.presets) {
      try {
        bases.emplace_back(name, resolve_preset(name));
      } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
      }
    }
  }

  for (auto& [name, preset] : bases) {
    ResolvedRun r;
    r.label = name;
    r.estimator = preset.estimator;
    r.schedule = preset.schedule;
    try {
      if (cfg.estimator) r.estimator = estimator_from_name(*cfg.estimator);
      if (cfg.eta) {
        r.schedule.alpha = AlphaRule::inverse_power(*cfg.eta, cfg.alpha.value_or(1.0));
      } else if (cfg.alpha) {
        r.schedule.alpha = AlphaRule::constant(*cfg.alpha);
      }
      if (cfg.lambda) {
        r.schedule.beta = BetaRule::geometric(*cfg.lambda);
      } else if (cfg.beta) {
        r.schedule.beta = BetaRule::constant(*cfg.beta);
      }
      if (cfg.gamma) r.schedule.gamma = *cfg.gamma;
      if (cfg.delta) r.schedule.delta = *cfg.delta;
      if (cfg.epsilon) r.schedule.epsilon = *cfg.epsilon;
      r.schedule.validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
    out.push_back(std::move(r));
  }
  return out;
}

ExperimentConfig parse_config_text(const std::string& text) {
  ExperimentConfig cfg;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("config: expected key=value, got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));

    if (key == "problem") {
      cfg.problem = value;
    } else if (key == "geometry") {
      cfg.geometry = value;
    } else if (key == "presets") {
      cfg.presets.clear();
      for (const auto& p : split(value, ',')) {
        if (!trim(p).empty()) cfg.presets.push_back(trim(p));
      }
    } else if (key == "estimator") {
      cfg.estimator = value;
    } else if (key == "alpha") {
      cfg.alpha = parse_f64(value, key);
    } else if (key == "beta") {
      cfg.beta = parse_f64(value, key);
    } else if (key == "gamma") {
      cfg.gamma = parse_f64(value, key);
    } else if (key == "delta") {
      cfg.delta = parse_f64(value, key);
    } else if (key == "eta") {
      cfg.eta = parse_f64(value, key);
    } else if (key == "lambda") {
      cfg.lambda = parse_f64(value, key);
    } else if (key == "epsilon") {
      cfg.epsilon = parse_f64(value, key);
    } else if (key == "x0") {
      cfg.x0 = parse_vec(value, key);
    } else if (key == "steps") {
      cfg.steps = parse_i64(value, key);
    } else if (key == "seeds") {
      cfg.seeds.clear();
      for (const auto& s : split(value, ',')) cfg.seeds.push_back(parse_u64(trim(s), key));
    } else if (key == "record_every") {
      cfg.record_every = parse_i64(value, key);
    } else if (key == "out") {
      cfg.out_dir = value;
    } else {
      throw ConfigError("config: unknown key '" + key + "'");
    }
  }
  return cfg;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

std::string serialize_config(const ExperimentConfig& cfg) {
  std::ostringstream os;
  os << "problem=" << cfg.problem << "\n";
  os << "geometry=" << cfg.geometry << "\n";
  if (!cfg.presets.empty()) {
    os << "presets=";
    for (std::size_t i = 0; i < cfg.presets.size(); ++i) {
      os << (i ? "," : "") << cfg.presets[i];
    }
    os << "\n";
  }
  if (cfg.estimator) os << "estimator=" << *cfg.estimator << "\n";
  if (cfg.alpha) os << "alpha=" << f17(*cfg.alpha) << "\n";
  if (cfg.beta) os << "beta=" << f17(*cfg.beta) << "\n";
  if (cfg.gamma) os << "gamma=" << f17(*cfg.gamma) << "\n";
  if (cfg.delta) os << "delta=" << f17(*cfg.delta) << "\n";
  if (cfg.eta) os << "eta=" << f17(*cfg.eta) << "\n";
  if (cfg.lambda) os << "lambda=" << f17(*cfg.lambda) << "\n";
  if (cfg.epsilon) os << "epsilon=" << f17(*cfg.epsilon) << "\n";
  if (cfg.x0) {
    os << "x0=";
    for (std::size_t i = 0; i < cfg.x0->size(); ++i) os << (i ? "," : "") << f17((*cfg.x0)[i]);
    os << "\n";
  }
  os << "steps=" << cfg.steps << "\n";
  os << "seeds=";
  for (std::size_t i = 0; i < cfg.seeds.size(); ++i) os << (i ? "," : "") << cfg.seeds[i];
  os << "\n";
  os << "record_every=" << cfg.record_every << "\n";
  os << "out=" << cfg.out_dir << "\n";
  return os.str();
}

std::string record_csv_text(const RunRecord& record) {
  std::ostringstream os;
  os << "n,f_x,gap,min_eff_rate,max_eff_rate,f_xtilde";
  if (record.online) os << ",regret";
  os << "\n";
  for (const auto& s : record.samples) {
    double lo = s.eff_rates.empty() ? 0 : s.eff_rates[0];
    double hi = lo;
    for (double r : s.eff_rates) {
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
    os << s.n << "," << f17(s.f_x) << "," << f17(s.gap) << "," << f17(lo) << "," << f17(hi) << ","
       << f17(s.f_xtilde);
    if (record.online) os << "," << f17(s.regret);
    os << "\n";
  }
  return os.str();
}

std::string record_summary_json(const RunRecord& record, const ProblemSpec& problem,
                                const ScheduleConfig& schedule, const std::string& label) {
  json j;
  j["problem"] = record.problem_id;
  j["label"] = label;
  j["estimator"] = record.estimator;
  j["schedule"] = record.schedule;
  j["seed"] = record.seed;
  j["n_steps"] = record.n_steps;
  j["record_every"] = record.record_every;
  j["online"] = record.online;

  const auto& last = record.final_sample();
  json fin;
  fin["n"] = last.n;
  fin["f_x"] = last.f_x;
  fin["gap"] = last.gap;
  fin["avg_gap"] = last.avg_gap;
  fin["f_xtilde"] = last.f_xtilde;
  if (record.online) fin["regret"] = last.regret;
  j["final"] = fin;

  const double expo = fit_exponent_or_nan(record, problem.optimum);
  j["fit_exponent"] = std::isfinite(expo) ? json(expo) : json(nullptr);
  if (problem.optimum) {
    j["f_star"] = problem.optimum->f_star;
    j["suboptimality_final"] = last.f_xtilde - problem.optimum->f_star;
  }

  BoundReport rep = bound_report(problem.gradient_bound, problem.set, schedule, {record});
  json theory;
  theory["M"] = rep.constants.M;
  theory["Mtilde"] = rep.constants.Mtilde;
  theory["D"] = rep.constants.D;
  theory["Btilde"] = rep.constants.Btilde;
  theory["btilde"] = rep.constants.btilde;
  theory["gammatilde"] = rep.constants.gammatilde;
  theory["d"] = rep.constants.d;
  theory["theorem1_rhs"] =
      std::isfinite(rep.theorem1_rhs) ? json(rep.theorem1_rhs) : json(nullptr);
  try {
    theory["theorem3_rhs"] = theorem3_bound(rep.constants, schedule, rep.B_i, record.n_steps);
  } catch (const std::invalid_argument& e) {
    theory["theorem3_rhs"] = nullptr;
    theory["theorem3_note"] = e.what();
  }
  j["theory"] = theory;

  j["x0"] = record.x0;
  j["h_first"] = record.h_first;
  j["h_last"] = record.h_last;
  j["wall_ms"] = record.wall_ms;
  j["steps_per_sec"] = steps_per_sec(record);
  return j.dump(2) + "\n";
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  if (cfg.steps < 1) throw ConfigError("steps must be >= 1");
  if (cfg.record_every < 1) throw ConfigError("record_every must be >= 1");
  if (cfg.seeds.empty()) throw ConfigError("need at least one seed");

  ProblemSpec problem = parse_problem_spec(cfg.problem, cfg.geometry);
  const std::vector<ResolvedRun> runs = resolve_runs(cfg);
  std::optional<Vec> x0 = cfg.x0;
  if (x0 && x0->size() == 1 && problem.dim > 1) x0 = Vec(problem.dim, (*x0)[0]);
  if (x0 && x0->size() != problem.dim) {
    throw ConfigError("x0 has length " + std::to_string(x0->size()) + ", problem needs " +
                      std::to_string(problem.dim));
  }

  struct Job {
    const ResolvedRun* run;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (const auto& r : runs) {
    for (auto seed : cfg.seeds) jobs.push_back({&r, seed});
  }

  std::vector<RunRecord> records(jobs.size());
  std::vector<std::exception_ptr> failures(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= jobs.size()) return;
      try {
        records[i] = run(problem, jobs[i].run->schedule, jobs[i].run->estimator, cfg.steps,
                         jobs[i].seed, cfg.record_every, x0);
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };
  const std::size_t n_workers =
      std::min<std::size_t>(jobs.size(), std::max(1u, std::thread::hardware_concurrency()));
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < n_workers; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }

  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(cfg.out_dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory '" + cfg.out_dir + "'");

  ExperimentResult result;
  std::vector<SummaryLite> lites;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const auto& rec = records[i];
    const std::string stem =
        cfg.out_dir + "/" + jobs[i].run->label + "_seed" + std::to_string(jobs[i].seed);
    write_text_file(stem + ".csv", record_csv_text(rec));
    write_text_file(stem + ".json",
                    record_summary_json(rec, problem, jobs[i].run->schedule, jobs[i].run->label));
    result.csv_paths.push_back(stem + ".csv");
    result.json_paths.push_back(stem + ".json");

    SummaryLite lite;
    lite.problem = rec.problem_id;
    lite.label = jobs[i].run->label;
    lite.final_f = rec.final_sample().f_x;
    lite.final_gap = rec.final_sample().gap;
    lite.exponent = fit_exponent_or_nan(rec, problem.optimum);
    lite.steps_per_sec = steps_per_sec(rec);
    lites.push_back(std::move(lite));
  }
  result.comparison = aggregate_rows(lites);

  result.comparison_csv_path = cfg.out_dir + "/comparison.csv";
  result.comparison_txt_path = cfg.out_dir + "/comparison.txt";
  result.config_path = cfg.out_dir + "/config.resolved";
  write_text_file(result.comparison_csv_path, comparison_csv_text(result.comparison, false));
  write_text_file(result.comparison_txt_path, render_comparison(result.comparison, false));
  write_text_file(result.config_path, serialize_config(cfg));
  result.records = std::move(records);
  return result;
}

std::vector<ComparisonRow> compare(const std::vector<std::string>& summary_paths) {
  if (summary_paths.size() < 2) {
    throw ConfigError("compare needs at least two run summaries");
  }
  std::vector<SummaryLite> lites;
  for (const auto& path : summary_paths) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read summary '" + path + "'");
    json j;
    try {
      in >> j;
      SummaryLite lite;
      lite.problem = j.at("problem").get<std::string>();
      lite.label = j.at("label").get<std::string>();
      lite.final_f = j.at("final").at("f_x").get<double>();
      lite.final_gap = j.at("final").at("gap").get<double>();
      if (!j.at("fit_exponent").is_null()) lite.exponent = j["fit_exponent"].get<double>();
      lite.steps_per_sec = j.at("steps_per_sec").get<double>();
      lites.push_back(std::move(lite));
    } catch (const json::exception& e) {
      throw ConfigError("malformed summary '" + path + "': " + e.what());
    }
  }
  return aggregate_rows(lites);
}

std::string comparison_csv_text(const std::vector<ComparisonRow>& rows, bool with_throughput) {
  std::ostringstream os;
  os << "preset,runs,final_f_mean,final_f_se,final_gap_mean,final_gap_se,fit_exponent";
  if (with_throughput) os << ",steps_per_sec";
  os << "\n";
  for (const auto& r : rows) {
    os << r.preset << "," << r.runs << "," << f17(r.final_f_mean) << "," << f17(r.final_f_se)
       << "," << f17(r.final_gap_mean) << "," << f17(r.final_gap_se) << ","
       << (std::isfinite(r.exponent_mean) ? f17(r.exponent_mean) : "");
    if (with_throughput) os << "," << f17(r.steps_per_sec);
    os << "\n";
  }
  return os.str();
}

std::string render_comparison(const std::vector<ComparisonRow>& rows, bool with_throughput) {
  std::ostringstream os;
  char line[256];
  if (with_throughput) {
    std::snprintf(line, sizeof(line), "%-10s %4s %13s %12s %13s %12s %9s %12s\n", "preset",
                  "runs", "final_f", "f_se", "final_gap", "gap_se", "exponent", "steps/s");
  } else {
    std::snprintf(line, sizeof(line), "%-10s %4s %13s %12s %13s %12s %9s\n", "preset", "runs",
                  "final_f", "f_se", "final_gap", "gap_se", "exponent");
  }
  os << line;
  for (const auto& r : rows) {
    if (with_throughput) {
      std::snprintf(line, sizeof(line), "%-10s %4zu %13.6g %12.3g %13.6g %12.3g %9.3g %12.4g\n",
                    r.preset.c_str(), r.runs, r.final_f_mean, r.final_f_se, r.final_gap_mean,
                    r.final_gap_se, r.exponent_mean, r.steps_per_sec);
    } else {
      std::snprintf(line, sizeof(line), "%-10s %4zu %13.6g %12.3g %13.6g %12.3g %9.3g\n",
                    r.preset.c_str(), r.runs, r.final_f_mean, r.final_f_se, r.final_gap_mean,
                    r.final_gap_se, r.exponent_mean);
    }
    os << line;
  }
  return os.str();
}

}  // namespace apgrad

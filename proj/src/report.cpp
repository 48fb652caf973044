#include "dtnheat/report.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <unistd.h>

namespace dtnheat {

using nlohmann::json;

namespace {

std::string rational_text(const Rational& r) { return r.get_str(); }

Rational parse_rational(const json& v) {
  if (v.is_number_integer()) return Rational(v.get<long>());
  if (!v.is_string()) throw std::invalid_argument("expected a rational string");
  Rational r;
  if (r.set_str(v.get<std::string>(), 10) != 0) throw std::invalid_argument("bad rational: " + v.get<std::string>());
  r.canonicalize();
  return r;
}

std::string complex_text(const Complex& c) { return to_string(c); }

}  // namespace

std::pair<int, int> parse_range(const std::string& text) {
  try {
    const auto dots = text.find("..");
    std::size_t used = 0;
    if (dots == std::string::npos) {
      const int v = std::stoi(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return {v, v};
    }
    const std::string lo = text.substr(0, dots), hi = text.substr(dots + 2);
    const int a = std::stoi(lo, &used);
    if (used != lo.size()) throw std::invalid_argument(text);
    const int b = std::stoi(hi, &used);
    if (used != hi.size()) throw std::invalid_argument(text);
    if (a > b) throw std::invalid_argument(text);
    return {a, b};
  } catch (const std::logic_error&) {
    throw std::invalid_argument("bad range '" + text + "', expected N or A..B");
  }
}

json config_to_json(const RunConfig& c) {
  json j;
  j["command"] = c.command;
  j["n_min"] = c.n_min;
  j["n_max"] = c.n_max;
  j["k_index"] = c.k_index;
  j["k_max"] = c.k_max;
  j["seeds"] = c.seeds;
  j["jet"] = c.jet;
  j["jet_file"] = c.jet_file;
  j["seed"] = c.seed;
  j["domain"] = domain_name(c.domain);
  j["radius"] = rational_text(c.radius);
  j["q"] = rational_text(c.q);
  j["k"] = rational_text(c.k);
  j["points"] = c.points;
  j["t_min"] = c.t_min;
  j["t_max"] = c.t_max;
  j["tolerances"] = c.tolerances;
  j["cutoff"] = c.cutoff;
  j["format"] = c.format;
  j["output"] = c.output;
  if (c.inject) {
    j["inject"] = {{"n", c.inject->n}, {"seed", c.inject->seed}, {"k", c.inject->k}, {"delta", complex_text(c.inject->delta)}};
  } else {
    j["inject"] = nullptr;
  }
  return j;
}

RunConfig config_from_json(const json& j) {
  RunConfig c;
  try {
    if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
    auto get = [&](const char* key, auto& field) {
      if (j.contains(key) && !j.at(key).is_null()) j.at(key).get_to(field);
    };
    get("command", c.command);
    get("n_min", c.n_min);
    get("n_max", c.n_max);
    get("k_index", c.k_index);
    get("k_max", c.k_max);
    get("seeds", c.seeds);
    get("jet", c.jet);
    get("jet_file", c.jet_file);
    get("seed", c.seed);
    if (j.contains("domain")) c.domain = parse_domain(j.at("domain").get<std::string>());
    if (j.contains("radius")) c.radius = parse_rational(j.at("radius"));
    if (j.contains("q")) c.q = parse_rational(j.at("q"));
    if (j.contains("k")) c.k = parse_rational(j.at("k"));
    get("points", c.points);
    get("t_min", c.t_min);
    get("t_max", c.t_max);
    get("tolerances", c.tolerances);
    get("cutoff", c.cutoff);
    get("format", c.format);
    get("output", c.output);
    if (j.contains("inject") && !j.at("inject").is_null()) {
      const json& f = j.at("inject");
      c.inject = FaultInjection{f.at("n").get<int>(), f.at("seed").get<std::uint64_t>(), f.at("k").get<int>(),
                                Complex(parse_rational(f.at("delta")))};
    }
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("bad config: ") + e.what());
  }
  return c;
}

json verify_report(const RunConfig& config, const std::vector<VerifyRun>& runs) {
  if (runs.empty()) throw std::runtime_error("no results");
  json out;
  out["config"] = config_to_json(config);
  out["runs"] = json::array();
  json failures = json::array();
  int equal = 0;
  for (const VerifyRun& r : runs) {
    out["runs"].push_back({{"n", r.n},
                           {"seed", r.seed},
                           {"k", r.k},
                           {"engine", r.engine.to_string()},
                           {"reference", r.reference.to_string()},
                           {"equal", r.equal}});
    if (r.equal) {
      ++equal;
    } else {
      failures.push_back({{"n", r.n}, {"seed", r.seed}, {"k", r.k}});
    }
  }
  out["summary"] = {{"runs", runs.size()},
                    {"equal", equal},
                    {"mismatched", runs.size() - equal},
                    {"failures", failures},
                    {"all_equal", failures.empty()}};
  return out;
}

json corollary_report(const RunConfig& config, const std::vector<CorollaryCheck>& checks) {
  if (checks.empty()) throw std::runtime_error("no results");
  json out;
  out["config"] = config_to_json(config);
  out["checks"] = json::array();
  int equal = 0;
  for (const CorollaryCheck& c : checks) {
    out["checks"].push_back({{"n", c.n},
                             {"k", c.k},
                             {"substituted", c.substituted.to_string()},
                             {"reference", c.reference.to_string()},
                             {"equal", c.equal}});
    equal += c.equal ? 1 : 0;
  }
  out["summary"] = {{"checks", checks.size()}, {"equal", equal}, {"all_equal", equal == static_cast<int>(checks.size())}};
  return out;
}

Rational alpha_scale(int n, int k_index) {
  switch (k_index) {
    case 0:
      return 1;
    case 1:
      return Rational(2 * (n - 1));
    case 2:
      return Rational(24 * (n * n - 1));
    case 3:
      return Rational(48 * (n + 3) * (n * n - 1));
    default:
      throw std::domain_error("closed forms exist for k = 0..3 only");
  }
}

InvariantExpression engine_projection(int n, int k_index, std::uint64_t base_seed) {
  const std::vector<Invariant>& basis = extended_basis(k_index);
  const int order = std::max(2, heat_jet_order(k_index));
  std::vector<ProjectionSample> samples;
  for (std::size_t i = 0; i < basis.size() + 3; ++i) {
    const GeometryJet jet = random_jet(n, order, base_seed + i, RandomJetOptions{true, true, true, true});
    samples.push_back({curvature_package(jet), heat_coefficient(jet, k_index), std::nullopt});
  }
  InvariantExpression e = invariant_projection(samples, n, k_index, basis);
  e.prune();
  return e;
}

AlphaTable alpha_table(int n, int k_index, bool with_engine, std::uint64_t base_seed) {
  AlphaTable t;
  t.n = n;
  t.k_index = k_index;
  t.scale = alpha_scale(n, k_index);
  const InvariantExpression ref = theorem_reference(n, k_index);
  std::optional<InvariantExpression> engine;
  if (with_engine) {
    try {
      engine = engine_projection(n, k_index, base_seed);
    } catch (const std::exception& e) {
      t.engine_error = e.what();
    }
  }
  for (Invariant b : extended_basis(k_index)) {
    AlphaRow row{b, Complex(), std::nullopt};
    if (auto it = ref.coeffs.find(b); it != ref.coeffs.end()) row.reference = it->second * t.scale;
    if (engine) {
      auto it = engine->coeffs.find(b);
      row.engine = it == engine->coeffs.end() ? Complex() : it->second * t.scale;
    }
    t.rows.push_back(row);
  }
  return t;
}

std::string alpha_tables_csv(const std::vector<AlphaTable>& tables) {
  if (tables.empty()) throw std::runtime_error("no results");
  std::ostringstream os;
  os << "n,k,scale,invariant,closed_form,engine,match\n";
  for (const AlphaTable& t : tables) {
    for (const AlphaRow& r : t.rows) {
      os << t.n << ',' << t.k_index << ',' << t.scale.get_str() << ',' << invariant_name(r.basis) << ','
         << complex_text(r.reference) << ',';
      if (r.engine) {
        os << complex_text(*r.engine) << ',' << (*r.engine == r.reference ? "true" : "false");
      } else {
        os << ',';
      }
      os << '\n';
    }
  }
  return os.str();
}

std::string alpha_tables_text(const std::vector<AlphaTable>& tables) {
  if (tables.empty()) throw std::runtime_error("no results");
  std::ostringstream os;
  for (const AlphaTable& t : tables) {
    os << "a_" << t.k_index << ", n = " << t.n << ", coefficients x " << t.scale.get_str() << "\n";
    os << std::left << std::setw(26) << "invariant" << std::setw(16) << "closed form" << "engine\n";
    for (const AlphaRow& r : t.rows) {
      os << std::left << std::setw(26) << invariant_name(r.basis) << std::setw(16) << complex_text(r.reference);
      if (r.engine) {
        os << complex_text(*r.engine);
        if (!(*r.engine == r.reference)) os << "  *";
      } else {
        os << "-";
      }
      os << "\n";
    }
    if (!t.engine_error.empty()) os << "engine: " << t.engine_error << "\n";
    os << "\n";
  }
  return os.str();
}

json alpha_tables_json(const RunConfig& config, const std::vector<AlphaTable>& tables) {
  if (tables.empty()) throw std::runtime_error("no results");
  json out;
  out["config"] = config_to_json(config);
  out["tables"] = json::array();
  int mismatched = 0;
  for (const AlphaTable& t : tables) {
    json rows = json::array();
    for (const AlphaRow& r : t.rows) {
      json row = {{"invariant", invariant_name(r.basis)}, {"closed_form", complex_text(r.reference)}};
      if (r.engine) {
        row["engine"] = complex_text(*r.engine);
        row["match"] = *r.engine == r.reference;
        mismatched += *r.engine == r.reference ? 0 : 1;
      }
      rows.push_back(row);
    }
    json tj = {{"n", t.n}, {"k", t.k_index}, {"scale", t.scale.get_str()}, {"rows", rows}};
    if (!t.engine_error.empty()) tj["engine_error"] = t.engine_error;
    out["tables"].push_back(tj);
  }
  out["summary"] = {{"tables", tables.size()}, {"mismatched_rows", mismatched}};
  return out;
}

std::string spectrum_csv(const SpectrumModel& spec) {
  std::ostringstream os;
  os << "index,lambda,multiplicity\n" << std::setprecision(17);
  for (const Eigenvalue& e : spec.eigenvalues) os << e.index << ',' << e.lambda << ',' << e.multiplicity << '\n';
  return os.str();
}

json trace_fit_json(const RunConfig& config, const TraceFit& fit, const std::vector<Rational>& reference) {
  json out;
  out["config"] = config_to_json(config);
  out["t"] = fit.t_grid;
  out["T"] = fit.trace;
  out["fit"] = {{"a", fit.coefficients},
                {"residual", fit.residual},
                {"log_diag", fit.log_term_diagnostic},
                {"condition", fit.condition_number}};
  json ref = json::array(), err = json::array();
  bool ok = true;
  for (std::size_t i = 0; i < reference.size(); ++i) {
    ref.push_back(reference[i].get_str());
    const double e = std::abs(fit.coefficients[i] - reference[i].get_d());
    err.push_back(e);
    const double tol = i < config.tolerances.size() ? config.tolerances[i] : config.tolerances.back();
    ok = ok && e <= tol;
  }
  out["reference"] = ref;
  out["abs_error"] = err;
  out["within_tolerance"] = ok;
  return out;
}

void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
    out.flush();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw std::runtime_error("cannot write " + path);
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw std::runtime_error("cannot write " + path);
  }
}

}  // namespace dtnheat

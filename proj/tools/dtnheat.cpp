// dtnheat: heat-trace coefficients of the magnetic Dirichlet-to-Neumann map.
//
// Exit status: 0 success, 1 verification mismatch, 2 usage or configuration error.

#include "dtnheat/jet_io.hpp"
#include "dtnheat/report.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

using namespace dtnheat;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kMismatch = 1;
constexpr int kUsage = 2;

Rational rational_arg(const std::string& text) {
  Rational r;
  if (r.set_str(text, 10) != 0) throw std::invalid_argument("bad rational '" + text + "'");
  r.canonicalize();
  return r;
}

void emit(const RunConfig& config, const std::string& content) {
  if (config.output.empty()) {
    std::cout << content;
  } else {
    write_atomic(config.output, content);
  }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

void require_format(const RunConfig& c, std::initializer_list<const char*> allowed) {
  for (const char* f : allowed) {
    if (c.format == f) return;
  }
  throw std::invalid_argument("format '" + c.format + "' not supported by " + c.command);
}

GeometryJet coeff_jet(const RunConfig& c) {
  if (c.jet == "ball") return ball_jet(c.n_min, c.radius, std::max(2, heat_jet_order(c.k_index)));
  if (c.jet == "random") {
    return random_jet(c.n_min, std::max(2, heat_jet_order(c.k_index)), c.seed, RandomJetOptions{true, true, true, true});
  }
  if (c.jet == "file") {
    std::ifstream in(c.jet_file);
    if (!in) throw std::invalid_argument("cannot read " + c.jet_file);
    std::stringstream ss;
    ss << in.rdbuf();
    return jet_from_string(ss.str());
  }
  throw std::invalid_argument("unknown jet kind '" + c.jet + "'");
}

int run_coeff(const RunConfig& c) {
  require_format(c, {"json", "text"});
  const GeometryJet jet = coeff_jet(c);
  const TaggedValue v = heat_coefficient(jet, c.k_index);
  if (c.format == "text") {
    emit(c, "a_" + std::to_string(c.k_index) + "(x0) = " + v.to_string() + "\n");
  } else {
    json out;
    out["config"] = config_to_json(c);
    out["n"] = jet.n;
    out["k"] = c.k_index;
    out["value"] = v.to_string();
    out["coefficient"] = to_string(v.coeff);
    out["gamma_argument"] = jet.n - v.gamma_shift;
    emit(c, dump(out));
  }
  return kOk;
}

int run_verify_theorem(const RunConfig& c) {
  require_format(c, {"json"});
  VerifyOptions o;
  o.n_min = c.n_min;
  o.n_max = c.n_max;
  o.k_max = c.k_max;
  o.seeds = c.seeds;
  o.inject = c.inject;
  const json report = verify_report(c, verify_theorem(o));
  emit(c, dump(report));
  return report["summary"]["all_equal"].get<bool>() ? kOk : kMismatch;
}

int run_verify_corollary(const RunConfig& c) {
  require_format(c, {"json"});
  const json report = corollary_report(c, verify_corollary(c.n_min, c.n_max));
  emit(c, dump(report));
  return report["summary"]["all_equal"].get<bool>() ? kOk : kMismatch;
}

ModelDomain domain_of(const RunConfig& c) { return make_domain(c.domain, c.radius, c.q, c.k); }

int run_spectrum(const RunConfig& c) {
  require_format(c, {"csv", "json"});
  const ModelDomain d = domain_of(c);
  const SpectrumModel spec = model_spectrum(d, c.cutoff > 0 ? c.cutoff : 100);
  if (c.format == "csv") {
    emit(c, spectrum_csv(spec));
  } else {
    json out;
    out["config"] = config_to_json(c);
    json modes = json::array();
    for (const Eigenvalue& e : spec.eigenvalues) modes.push_back({{"index", e.index}, {"lambda", e.lambda}, {"multiplicity", e.multiplicity}});
    out["eigenvalues"] = modes;
    out["tail_bound_slope"] = spec.tail_bound_slope;
    emit(c, dump(out));
  }
  return kOk;
}

int run_trace_fit(const RunConfig& c) {
  require_format(c, {"json"});
  if (c.tolerances.empty()) throw std::invalid_argument("at least one tolerance is required");
  const ModelDomain d = domain_of(c);
  const TraceFit fit = fit_asymptotics(d, default_t_grid(c.points, c.t_min, c.t_max));
  const json out = trace_fit_json(c, fit, integrated_reference(d));
  emit(c, dump(out));
  return out["within_tolerance"].get<bool>() ? kOk : kMismatch;
}

int run_report(const RunConfig& c) {
  require_format(c, {"json", "csv", "text"});
  std::vector<AlphaTable> tables;
  for (int n = std::max(c.n_min, heat_min_dimension(c.k_index)); n <= c.n_max; ++n) {
    tables.push_back(alpha_table(n, c.k_index, true, c.seed));
  }
  bool match = true;
  for (const AlphaTable& t : tables) {
    match = match && t.engine_error.empty();
    for (const AlphaRow& r : t.rows) match = match && r.engine && *r.engine == r.reference;
  }
  if (c.format == "csv") {
    emit(c, alpha_tables_csv(tables));
  } else if (c.format == "text") {
    emit(c, alpha_tables_text(tables));
  } else {
    emit(c, dump(alpha_tables_json(c, tables)));
  }
  return match ? kOk : kMismatch;
}

int execute(const RunConfig& c) {
  if (c.command == "coeff") return run_coeff(c);
  if (c.command == "verify-theorem") return run_verify_theorem(c);
  if (c.command == "verify-corollary") return run_verify_corollary(c);
  if (c.command == "spectrum") return run_spectrum(c);
  if (c.command == "trace-fit") return run_trace_fit(c);
  if (c.command == "report") return run_report(c);
  throw std::invalid_argument("unknown command '" + c.command + "'");
}

/// Flags seen on the command line, applied on top of the defaults or the config file.
struct Flags {
  std::string n, k, k_max, seeds, seed_list, jet, jet_file, seed, domain, r, q, kwave, points, t_min, t_max, tol,
      cutoff, format, output, inject;
};

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("--format", f.format, "json | csv | text");
  sub->add_option("-o,--output", f.output, "Output file (written atomically); stdout when omitted");
}

void add_domain(CLI::App* sub, Flags& f) {
  sub->add_option("--domain", f.domain, "disk | ball");
  sub->add_option("--r,--radius", f.r, "Radius (rational)");
  sub->add_option("--q", f.q, "Constant potential q (rational)");
  sub->add_option("--k", f.kwave, "Constant k (rational); q - k^2 must be >= 0");
}

void apply(RunConfig& c, const Flags& f) {
  if (!f.n.empty()) std::tie(c.n_min, c.n_max) = parse_range(f.n);
  if (!f.k.empty()) c.k_index = std::stoi(f.k);
  if (!f.k_max.empty()) c.k_max = std::stoi(f.k_max);
  if (!f.seeds.empty()) {
    const int count = std::stoi(f.seeds);
    if (count < 1) throw std::invalid_argument("--seeds must be positive");
    c.seeds.clear();
    for (int s = 1; s <= count; ++s) c.seeds.push_back(static_cast<std::uint64_t>(s));
  }
  if (!f.seed_list.empty()) {
    c.seeds.clear();
    std::stringstream ss(f.seed_list);
    for (std::string item; std::getline(ss, item, ',');) c.seeds.push_back(std::stoull(item));
  }
  if (!f.jet.empty()) c.jet = f.jet;
  if (!f.jet_file.empty()) {
    c.jet = "file";
    c.jet_file = f.jet_file;
  }
  if (!f.seed.empty()) c.seed = std::stoull(f.seed);
  if (!f.domain.empty()) c.domain = parse_domain(f.domain);
  if (!f.r.empty()) c.radius = rational_arg(f.r);
  if (!f.q.empty()) c.q = rational_arg(f.q);
  if (!f.kwave.empty()) c.k = rational_arg(f.kwave);
  if (!f.points.empty()) c.points = std::stoi(f.points);
  if (!f.t_min.empty()) c.t_min = std::stod(f.t_min);
  if (!f.t_max.empty()) c.t_max = std::stod(f.t_max);
  if (!f.tol.empty()) {
    c.tolerances.clear();
    std::stringstream ss(f.tol);
    for (std::string item; std::getline(ss, item, ',');) c.tolerances.push_back(std::stod(item));
  }
  if (!f.cutoff.empty()) c.cutoff = std::stoi(f.cutoff);
  if (!f.format.empty()) c.format = f.format;
  if (!f.output.empty()) c.output = f.output;
  if (!f.inject.empty()) {
    // n,seed,k,delta
    std::vector<std::string> parts;
    std::stringstream ss(f.inject);
    for (std::string item; std::getline(ss, item, ',');) parts.push_back(item);
    if (parts.size() != 4) throw std::invalid_argument("--inject expects n,seed,k,delta");
    c.inject = FaultInjection{std::stoi(parts[0]), std::stoull(parts[1]), std::stoi(parts[2]), Complex(rational_arg(parts[3]))};
  }
}

void default_format(RunConfig& c, bool format_given) {
  if (format_given) return;
  if (c.command == "spectrum") c.format = "csv";
  if (c.command == "report") c.format = "text";
  if (c.command == "coeff") c.format = "text";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Heat-trace coefficients of the magnetic Dirichlet-to-Neumann map"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "JSON run configuration; explicit flags override it")->check(CLI::ExistingFile);
  Flags f;

  CLI::App* coeff = app.add_subcommand("coeff", "Compute a_k(x0) exactly for one jet");
  coeff->add_option("--n", f.n, "Dimension");
  coeff->add_option("--k", f.k, "Coefficient index 0..3");
  coeff->add_option("--jet", f.jet, "random | ball");
  coeff->add_option("--jet-file", f.jet_file, "Read the jet from a JSON file");
  coeff->add_option("--seed", f.seed, "Seed for --jet random");
  coeff->add_option("--radius", f.r, "Ball radius (rational)");
  add_common(coeff, f);

  CLI::App* verify = app.add_subcommand("verify-theorem", "Engine against the closed forms on random jets");
  verify->add_option("--n", f.n, "Dimension or range A..B");
  verify->add_option("--seeds", f.seeds, "Use seeds 1..N");
  verify->add_option("--seed-list", f.seed_list, "Comma-separated seeds");
  verify->add_option("--k-max", f.k_max, "Largest coefficient index");
  verify->add_option("--inject", f.inject, "Fault injection n,seed,k,delta");
  add_common(verify, f);

  CLI::App* corollary = app.add_subcommand("verify-corollary", "Space-form specialization against the space-form closed forms");
  corollary->add_option("--n", f.n, "Dimension range A..B");
  add_common(corollary, f);

  CLI::App* spectrum = app.add_subcommand("spectrum", "Steklov spectrum of a disk or ball");
  add_domain(spectrum, f);
  spectrum->add_option("--cutoff", f.cutoff, "Largest mode index (default 100)");
  add_common(spectrum, f);

  CLI::App* fit = app.add_subcommand("trace-fit", "Fit small-t heat-trace coefficients of a disk or ball");
  add_domain(fit, f);
  fit->add_option("--points", f.points, "Grid points");
  fit->add_option("--t-min", f.t_min, "Smallest t");
  fit->add_option("--t-max", f.t_max, "Largest t");
  fit->add_option("--tol", f.tol, "Comma-separated absolute tolerances for a_0, a_1, ...");
  add_common(fit, f);

  CLI::App* report = app.add_subcommand("report", "Closed-form coefficient table next to engine-recovered coefficients");
  report->add_option("--n", f.n, "Dimension range A..B");
  report->add_option("--k", f.k, "Coefficient index 0..3");
  report->add_option("--seed", f.seed, "First seed of the projection samples");
  add_common(report, f);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    RunConfig config;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      config = config_from_json(json::parse(in));
    }
    config.command = app.get_subcommands().front()->get_name();
    if (config_path.empty()) {
      if (config.command == "report") config.seed = 7000;
      if (config.command == "verify-theorem") config.seeds = {1, 2, 3};
      if (config.command == "coeff") config.n_min = config.n_max = 4;
    }
    apply(config, f);
    default_format(config, !f.format.empty() || !config_path.empty());
    return execute(config);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}

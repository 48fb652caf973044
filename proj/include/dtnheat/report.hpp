#pragma once

// Run configuration and report assembly for the command-line front end.

#include "dtnheat/heat.hpp"
#include "dtnheat/spectra.hpp"

#include "json.hpp"

#include <optional>
#include <string>
#include <vector>

namespace dtnheat {

struct RunConfig {
  std::string command;
  int n_min = 4;
  int n_max = 8;
  int k_index = 2;
  int k_max = 3;
  std::vector<std::uint64_t> seeds;
  /// coeff: "random", "ball" or "file".
  std::string jet = "random";
  std::string jet_file;
  std::uint64_t seed = 1;
  DomainKind domain = DomainKind::Ball;
  Rational radius = 1;
  Rational q = 0;
  Rational k = 0;
  int points = 40;
  double t_min = 1e-3;
  double t_max = 0.2;
  std::vector<double> tolerances{1e-6, 1e-4, 1e-3};
  int cutoff = 0;
  std::string format = "json";
  std::string output;
  std::optional<FaultInjection> inject;
};

nlohmann::json config_to_json(const RunConfig& config);
/// Missing keys keep their defaults. Throws std::invalid_argument on bad values.
RunConfig config_from_json(const nlohmann::json& doc);

/// "4..8" or "5".
std::pair<int, int> parse_range(const std::string& text);

/// {config, runs:[{n, seed, k, engine, reference, equal}], summary}. Throws std::runtime_error("no results") when empty.
nlohmann::json verify_report(const RunConfig& config, const std::vector<VerifyRun>& runs);
nlohmann::json corollary_report(const RunConfig& config, const std::vector<CorollaryCheck>& checks);

/// Scale that turns the coefficients of a_k into the integer alpha-polynomials.
Rational alpha_scale(int n, int k_index);

struct AlphaRow {
  Invariant basis;
  Complex reference;
  std::optional<Complex> engine;
};

struct AlphaTable {
  int n = 0;
  int k_index = 0;
  Rational scale;
  std::vector<AlphaRow> rows;
  /// Set when the engine coefficients could not be recovered.
  std::string engine_error;
};

/// Engine coefficients by exact projection of random-jet samples onto extended_basis(k).
InvariantExpression engine_projection(int n, int k_index, std::uint64_t base_seed = 7000);

/// Closed-form coefficients next to the engine-recovered ones, both multiplied by alpha_scale.
AlphaTable alpha_table(int n, int k_index, bool with_engine, std::uint64_t base_seed = 7000);

std::string alpha_tables_csv(const std::vector<AlphaTable>& tables);
std::string alpha_tables_text(const std::vector<AlphaTable>& tables);
nlohmann::json alpha_tables_json(const RunConfig& config, const std::vector<AlphaTable>& tables);

std::string spectrum_csv(const SpectrumModel& spec);
nlohmann::json trace_fit_json(const RunConfig& config, const TraceFit& fit, const std::vector<Rational>& reference);

/// Writes via a temporary file in the same directory and renames it into place.
/// Throws std::runtime_error when the path is not writable.
void write_atomic(const std::string& path, const std::string& content);

}  // namespace dtnheat

#include "dtnheat/jet_io.hpp"

#include <sstream>

namespace dtnheat {

namespace {

using nlohmann::json;

std::string multi_index_key(const Exponents& e, int n) {
  std::string out;
  for (int v = 0; v < n; ++v) {
    if (v) out += ",";
    out += std::to_string(e[v]);
  }
  return out;
}

std::vector<int> split_ints(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("malformed index '" + text + "'");
    }
    if (used != item.size()) throw std::invalid_argument("malformed index '" + text + "'");
    out.push_back(v);
  }
  return out;
}

json jet_entries(const Jet& j, int n) {
  json out = json::object();
  for (std::size_t idx = 0; idx < j.size(); ++idx) {
    if (j[idx].is_zero()) continue;
    out[multi_index_key(j.space().exponents(idx), n)] = to_string(j[idx]);
  }
  return out;
}

void read_entries(const json& obj, Jet& j, int n) {
  if (!obj.is_object()) throw std::invalid_argument("jet coefficients must be an object");
  for (const auto& [key, value] : obj.items()) {
    std::vector<int> mu = split_ints(key);
    if (static_cast<int>(mu.size()) != n) throw std::invalid_argument("multi-index '" + key + "' has wrong length");
    Exponents e{};
    for (int v = 0; v < n; ++v) {
      if (mu[v] < 0 || mu[v] > 255) throw std::invalid_argument("multi-index '" + key + "' out of range");
      e[v] = static_cast<std::uint8_t>(mu[v]);
    }
    if (!value.is_string()) throw std::invalid_argument("coefficients must be strings");
    try {
      j.set(e, parse_complex(value.get<std::string>()));
    } catch (const JetOrderError&) {
      throw std::invalid_argument("multi-index '" + key + "' exceeds the jet order");
    }
  }
}

}  // namespace

json jet_to_json(const GeometryJet& jet) {
  json doc;
  doc["n"] = jet.n;
  doc["jet_order"] = jet.jet_order;
  json kappa = json::array();
  for (const auto& k : jet.kappa) kappa.push_back(to_string(k));
  doc["kappa"] = kappa;
  json g = json::object();
  for (int a = 0; a < jet.n - 1; ++a) {
    for (int b = a; b < jet.n - 1; ++b) {
      json entries = jet_entries(jet.g[a][b], jet.n);
      if (!entries.empty()) g[std::to_string(a + 1) + "," + std::to_string(b + 1)] = entries;
    }
  }
  doc["g"] = g;
  json A = json::object();
  for (int j = 0; j < jet.n; ++j) {
    json entries = jet_entries(jet.A[j], jet.n);
    if (!entries.empty()) A[std::to_string(j + 1)] = entries;
  }
  doc["A"] = A;
  doc["q"] = jet_entries(jet.q, jet.n);
  doc["k"] = to_string(jet.k);
  return doc;
}

GeometryJet jet_from_json(const json& doc) {
  try {
    const int n = doc.at("n").get<int>();
    const int order = doc.at("jet_order").get<int>();
    if (n < 2 || n > kMaxVars) throw std::invalid_argument("unsupported dimension");
    if (order < 0) throw std::invalid_argument("negative jet order");
    GeometryJet jet = GeometryJet::flat(n, order);
    for (auto& row : jet.g) {
      for (auto& x : row) x[0] = Complex();
    }
    const auto& kappa = doc.at("kappa");
    if (!kappa.is_array() || static_cast<int>(kappa.size()) != n - 1) {
      throw std::invalid_argument("kappa must list n-1 values");
    }
    for (int a = 0; a < n - 1; ++a) jet.kappa[a] = parse_rational(kappa[a].get<std::string>());
    for (const auto& [key, entries] : doc.at("g").items()) {
      std::vector<int> ab = split_ints(key);
      if (ab.size() != 2 || ab[0] < 1 || ab[1] < 1 || ab[0] > n - 1 || ab[1] > n - 1) {
        throw std::invalid_argument("bad metric index '" + key + "'");
      }
      read_entries(entries, jet.g[ab[0] - 1][ab[1] - 1], n);
      if (ab[0] != ab[1]) jet.g[ab[1] - 1][ab[0] - 1] = jet.g[ab[0] - 1][ab[1] - 1];
    }
    if (doc.contains("A")) {
      for (const auto& [key, entries] : doc.at("A").items()) {
        std::vector<int> j = split_ints(key);
        if (j.size() != 1 || j[0] < 1 || j[0] > n) throw std::invalid_argument("bad A index '" + key + "'");
        read_entries(entries, jet.A[j[0] - 1], n);
      }
    }
    if (doc.contains("q")) read_entries(doc.at("q"), jet.q, n);
    if (doc.contains("k")) jet.k = parse_rational(doc.at("k").get<std::string>());
    if (auto v = validate_jet(jet); !v.ok) throw std::invalid_argument(v.message);
    return jet;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed jet document: ") + e.what());
  }
}

std::string jet_to_string(const GeometryJet& jet) { return jet_to_json(jet).dump(2); }

GeometryJet jet_from_string(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed jet document: ") + e.what());
  }
  return jet_from_json(doc);
}

}  // namespace dtnheat

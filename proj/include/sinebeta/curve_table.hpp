#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace sinebeta {

struct CurveRow {
  double lambda = 0.0;
  double value = 0.0;
  std::optional<double> stderr_value;
  std::string engine;
  double beta = 0.0;
  double delta = 0.0;
  int order = 0;
  std::optional<std::uint64_t> seed;
  double tail_bound = 0.0;
};

struct CurveTable {
  std::vector<CurveRow> rows;

  void append(const CurveTable& other) { rows.insert(rows.end(), other.rows.begin(), other.rows.end()); }
};

// shortest round-trip decimal form
std::string format_double(double x);

// lambda,value,stderr,engine,beta,delta,order,seed,tail_bound with CRLF line ends
std::string to_csv(const CurveTable& t);
nlohmann::json table_json(const CurveTable& t, const nlohmann::json& config);

}  // namespace sinebeta

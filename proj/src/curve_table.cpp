#include "sinebeta/curve_table.hpp"

#include <charconv>
#include <cmath>

namespace sinebeta {

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string to_csv(const CurveTable& t) {
  std::string out = "lambda,value,stderr,engine,beta,delta,order,seed,tail_bound\r\n";
  for (const auto& r : t.rows) {
    out += format_double(r.lambda);
    out += ',';
    out += format_double(r.value);
    out += ',';
    if (r.stderr_value) out += format_double(*r.stderr_value);
    out += ',';
    out += csv_field(r.engine);
    out += ',';
    out += format_double(r.beta);
    out += ',';
    out += format_double(r.delta);
    out += ',';
    out += std::to_string(r.order);
    out += ',';
    if (r.seed) out += std::to_string(*r.seed);
    out += ',';
    out += format_double(r.tail_bound);
    out += "\r\n";
  }
  return out;
}

nlohmann::json table_json(const CurveTable& t, const nlohmann::json& config) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : t.rows) {
    nlohmann::json j;
    j["lambda"] = r.lambda;
    j["value"] = r.value;
    j["stderr"] = r.stderr_value ? nlohmann::json(*r.stderr_value) : nlohmann::json(nullptr);
    j["engine"] = r.engine;
    j["beta"] = r.beta;
    j["delta"] = r.delta;
    j["order"] = r.order;
    j["seed"] = r.seed ? nlohmann::json(*r.seed) : nlohmann::json(nullptr);
    j["tail_bound"] = r.tail_bound;
    rows.push_back(std::move(j));
  }
  return {{"config", config}, {"rows", std::move(rows)}};
}

}  // namespace sinebeta

#ifndef SOCKP_TOOLKIT_IO_HPP
#define SOCKP_TOOLKIT_IO_HPP

#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "sockp/model.hpp"
#include "sockp/rkpm.hpp"

namespace sockp::toolkit {

using json = nlohmann::ordered_json;

inline json to_json(const SockpInstance& inst) {
  json j;
  j["n"] = inst.size();
  j["profits"] = inst.profits;
  json means = json::array();
  for (const auto& a : inst.means) means.push_back(a.to_string());
  json sigmas = json::array();
  for (const auto& s : inst.sigmas) sigmas.push_back(s.to_string());
  j["means"] = std::move(means);
  j["sigmas"] = std::move(sigmas);
  j["capacity"] = inst.capacity.to_string();
  if (inst.omega) j["omega"] = inst.omega->to_string();
  return j;
}

namespace detail {

inline Decimal decimal_field(const json& v, const char* name) {
  if (v.is_string()) return Decimal::parse(v.get<std::string>());
  if (v.is_number_integer()) return Decimal::from_integer(v.get<std::int64_t>());
  throw std::invalid_argument(std::string("instance: '") + name + "' must hold decimal strings");
}

}  // namespace detail

inline SockpInstance instance_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("instance: expected a JSON object");
  for (const char* key : {"n", "profits", "means", "sigmas", "capacity"}) {
    if (!j.contains(key)) throw std::invalid_argument(std::string("instance: missing field '") + key + "'");
  }
  SockpInstance inst;
  const auto n = j.at("n").get<std::int64_t>();
  for (const auto& p : j.at("profits")) {
    if (!p.is_number_integer()) throw std::invalid_argument("instance: profits must be integers");
    inst.profits.push_back(p.get<std::int64_t>());
  }
  for (const auto& a : j.at("means")) inst.means.push_back(detail::decimal_field(a, "means"));
  for (const auto& s : j.at("sigmas")) inst.sigmas.push_back(detail::decimal_field(s, "sigmas"));
  inst.capacity = detail::decimal_field(j.at("capacity"), "capacity");
  if (j.contains("omega") && !j.at("omega").is_null()) {
    inst.omega = detail::decimal_field(j.at("omega"), "omega");
  }
  if (n < 0 || static_cast<std::size_t>(n) != inst.profits.size()) {
    throw std::invalid_argument("instance: 'n' does not match the number of profits");
  }
  inst.validate();
  return inst;
}

inline std::string serialize(const SockpInstance& inst) { return to_json(inst).dump(2) + "\n"; }

inline SockpInstance parse_instance(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("instance: malformed JSON: ") + e.what());
  }
  try {
    return instance_from_json(j);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("instance: ") + e.what());
  }
}

inline SockpInstance read_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open instance file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write '" + path + "'");
  out << text;
}

inline std::string kind_name(BoundKind k) {
  switch (k) {
    case BoundKind::kUpper: return "upper";
    case BoundKind::kLower: return "lower";
    case BoundKind::kExact: return "exact";
  }
  return "?";
}

inline json to_json(const BoundResult& r) {
  json j;
  j["kind"] = kind_name(r.kind);
  j["objective"] = r.objective;
  j["m"] = r.m;
  std::ostringstream delta;
  delta << r.delta.quarters / 4;
  if (r.delta.quarters % 4 != 0) delta << " " << r.delta.quarters % 4 << "/4";
  j["delta"] = delta.str();
  std::vector<std::size_t> chosen;
  for (std::size_t i = 0; i < r.solution.size(); ++i) {
    if (r.solution[i]) chosen.push_back(i);
  }
  j["selected"] = chosen;
  j["subproblems_solved"] = r.subproblems_solved;
  j["subproblems_skipped"] = r.subproblems_skipped;
  j["subproblems_pruned"] = r.subproblems_pruned;
  j["pivot"] = r.pivot;
  j["time_ms"] = std::chrono::duration<double, std::milli>(r.wall_time).count();
  return j;
}

inline std::string format_double(double v, int digits = 6) {
  std::ostringstream os;
  os << std::setprecision(digits) << std::fixed << v;
  return os.str();
}

}  // namespace sockp::toolkit

#endif  // SOCKP_TOOLKIT_IO_HPP

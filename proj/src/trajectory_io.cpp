#include "gschw/trajectory_io.hpp"

#include <charconv>
#include <system_error>
#include <vector>

#include <json.hpp>

namespace gschw {

std::string format_number(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  if (res.ec != std::errc{}) return "nan";
  return std::string(buf, res.ptr);
}

namespace {

using Table = std::vector<std::vector<double>>;

const std::vector<std::string> kColumns{"t", "f", "f1", "f2", "f3", "N0", "N1", "N2", "schwarzian"};

Table rows(const Trajectory& traj) {
  Table out;
  out.reserve(traj.samples.size());
  for (const auto& s : traj.samples) out.push_back({s.t, s.f, s.f1, s.f2, s.f3, s.N0, s.N1, s.N2, s.schwarzian});
  return out;
}

Table rows(const FirstOrderTrajectory& fo) {
  Table out = rows(fo.trajectory);
  for (std::size_t i = 0; i < out.size() && i < fo.states.size(); ++i) {
    out[i].push_back(fo.states[i].x);
    out[i].push_back(fo.states[i].v);
  }
  return out;
}

std::string csv(const std::vector<std::string>& columns, const Table& table) {
  std::string out;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) out += ',';
    out += columns[i];
  }
  out += '\n';
  for (const auto& r : table) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i) out += ',';
      out += format_number(r[i]);
    }
    out += '\n';
  }
  return out;
}

std::string json(const std::vector<std::string>& columns, const Table& table) {
  nlohmann::ordered_json doc;
  doc["columns"] = columns;
  auto& samples = doc["samples"] = nlohmann::ordered_json::array();
  for (const auto& r : table) {
    nlohmann::ordered_json o;
    for (std::size_t i = 0; i < r.size(); ++i) o[columns[i]] = r[i];
    samples.push_back(std::move(o));
  }
  return doc.dump() + "\n";
}

std::vector<std::string> first_order_columns() {
  auto c = kColumns;
  c.insert(c.end(), {"x", "v"});
  return c;
}

}  // namespace

std::string to_csv(const Trajectory& traj) { return csv(kColumns, rows(traj)); }

std::string to_json(const Trajectory& traj) { return json(kColumns, rows(traj)); }

std::string to_csv(const FirstOrderTrajectory& fo) { return csv(first_order_columns(), rows(fo)); }

std::string to_json(const FirstOrderTrajectory& fo) { return json(first_order_columns(), rows(fo)); }

}  // namespace gschw

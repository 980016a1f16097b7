#include "softhand/csv.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>

#include "softhand/errors.hpp"

namespace softhand::csv {

std::string number(double v) {
  if (v == 0.0) return "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

void write(std::ostream& out, const Table& t) {
  for (std::size_t i = 0; i < t.header.size(); ++i) out << (i ? "," : "") << t.header[i];
  out << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
    out << '\n';
  }
}

void write_file(const std::string& path, const Table& t) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  write(out, t);
}

Table trace_table(const controller::ElementTrace& trace) {
  Table t;
  t.header = {"t_s", "setpoint_kPa", "true_kPa", "sensed_kPa", "valve_in", "valve_out",
              "angle_deg"};
  t.rows.reserve(trace.rows.size());
  for (const auto& r : trace.rows) {
    t.rows.push_back({number(r.t), number(r.setpoint / units::kPa),
                      number(r.true_pressure / units::kPa), number(r.sensed / units::kPa),
                      r.valve_in ? "1" : "0", r.valve_out ? "1" : "0",
                      number(units::degrees(r.angle))});
  }
  return t;
}

}  // namespace softhand::csv

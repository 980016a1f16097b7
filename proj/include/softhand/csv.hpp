#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "softhand/controller.hpp"

namespace softhand::csv {

inline constexpr const char* trace_header =
    "t_s,setpoint_kPa,true_kPa,sensed_kPa,valve_in,valve_out,angle_deg";

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

/// 9 significant digits, with -0 written as 0.
std::string number(double v);

void write(std::ostream& out, const Table& t);
void write_file(const std::string& path, const Table& t);

Table trace_table(const controller::ElementTrace& trace);

}  // namespace softhand::csv

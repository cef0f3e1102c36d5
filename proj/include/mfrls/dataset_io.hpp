#pragma once

// Dataset text format:
//
//   # mfrls-dataset 1
//   # n: 2
//   # m: 2
//   # N: 160
//   # sigma2: 0.01
//   # seed: 42
//   # filter_order: 10
//   # filter_cutoff: 0.5
//   t,u,y,theta_1,...,theta_p
//   1,<u(1)>,<y(1)>,...
//
// Reals carry 17 significant digits so a write/read cycle is bit-exact.
// The theta columns are optional.

#include <iosfwd>
#include <string>

#include "mfrls/simulator.hpp"

namespace mfrls {

/// Shortest form that round-trips, at most 17 significant digits; "nan"/"inf" for non-finite.
std::string format_real(double v);
/// Parses a full token as double; ParseError otherwise.
double parse_real(std::string_view token);

void write_dataset(std::ostream& out, const Dataset& ds);
Dataset read_dataset(std::istream& in);

void save_dataset(const std::string& path, const Dataset& ds);
Dataset load_dataset(const std::string& path);

}  // namespace mfrls

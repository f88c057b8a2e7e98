#pragma once

#include <iosfwd>
#include <string>

#include "dispkit/geometry.hpp"
#include "dispkit/nets.hpp"

namespace dispkit {

// 17-significant-digit decimal form, enough to round-trip a double exactly.
std::string fmt17(double x);

// Point-set text format, version 1:
//   - '#' starts a comment line; blank lines are skipped
//   - first content line: "d n"
//   - then n lines of d coordinates each, all in [0,1]
//   - the file must end with a newline
// Errors carry "name:line:" prefixes. Writing uses fmt17 so a read-back is
// bit-identical.
PointSet read_point_set(std::istream& in, const std::string& name);
PointSet read_point_set_file(const std::string& path);
void write_point_set(std::ostream& out, const PointSet& P);
void write_point_set_file(const std::string& path, const PointSet& P);

// Net file format, version 1: one JSON object per line. The first line is a
// header {format, version, d, eps, gamma, delta0, delta, kind, count}, then
// one line per element {anchor, sides, periodic, source, k}. Numbers are
// written with fmt17 for bit-faithful round-trips.
void write_net(std::ostream& out, const Net& net);
void write_net_file(const std::string& path, const Net& net);
Net read_net(std::istream& in, const std::string& name);
Net read_net_file(const std::string& path);

}  // namespace dispkit

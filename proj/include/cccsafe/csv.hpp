#pragma once

#include <iosfwd>
#include <string>

#include "cccsafe/charts.hpp"
#include "cccsafe/sim.hpp"

namespace cccsafe {

/// Locale-independent decimal formatting, 17 significant digits (lossless
/// double round-trip).
std::string format_double(double value);

/// Header "t,D,v,vL,aL,u_des,u_app,ks,hD,hTH,hTTC" and one row per record.
void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory);

/// Header "B,A,member" and one row per grid node, B-major.
void write_chart_csv(std::ostream& out, const RegionGrid& grid);

}  // namespace cccsafe

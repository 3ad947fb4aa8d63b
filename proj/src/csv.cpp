#include "cccsafe/csv.hpp"

#include <charconv>
#include <ostream>
#include <system_error>

namespace cccsafe {

std::string format_double(double value) {
    char buffer[64];
    const auto result =
        std::to_chars(buffer, buffer + sizeof(buffer), value, std::chars_format::general, 17);
    return std::string(buffer, result.ptr);
}

void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory) {
    out << "t,D,v,vL,aL,u_des,u_app,ks,hD,hTH,hTTC\n";
    for (const auto& r : trajectory) {
        out << format_double(r.t) << ',' << format_double(r.distance) << ','
            << format_double(r.speed) << ',' << format_double(r.lead_speed) << ','
            << format_double(r.lead_accel) << ',' << format_double(r.input_desired) << ','
            << format_double(r.input_applied) << ',' << format_double(r.safe_input) << ','
            << format_double(r.h_distance) << ',' << format_double(r.h_headway) << ','
            << format_double(r.h_conflict) << '\n';
    }
}

void write_chart_csv(std::ostream& out, const RegionGrid& grid) {
    out << "B,A,member\n";
    for (std::size_t bi = 0; bi < grid.b_values.size(); ++bi) {
        for (std::size_t ai = 0; ai < grid.a_values.size(); ++ai) {
            out << format_double(grid.b_values[bi]) << ',' << format_double(grid.a_values[ai])
                << ',' << (grid.is_member(ai, bi) ? '1' : '0') << '\n';
        }
    }
}

}  // namespace cccsafe

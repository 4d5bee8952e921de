#pragma once

#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>

#include "curvebody/integrate.hpp"

namespace curvebody {

inline constexpr int kRecordFields = 20;

inline constexpr const char* kCsvHeader =
    "t,q1x,q1y,q1z,q2x,q2y,q2z,q1dotx,q1doty,q1dotz,q2dotx,q2doty,q2dotz,"
    "r,qcx,qcy,qcz,kinetic,potential,energy";

inline const std::array<const char*, kRecordFields>& record_field_names() {
    static const std::array<const char*, kRecordFields> names{
        "t",      "q1x",   "q1y",    "q1z",    "q2x",    "q2y",    "q2z",
        "q1dotx", "q1doty", "q1dotz", "q2dotx", "q2doty", "q2dotz", "r",
        "qcx",    "qcy",   "qcz",    "kinetic", "potential", "energy"};
    return names;
}

struct TrajectoryRecord {
    std::array<double, kRecordFields> f{};

    bool operator==(const TrajectoryRecord& o) const { return f == o.f; }
};

inline TrajectoryRecord make_record(const TrajectorySample& s, double m1, double m2) {
    const PhaseState& st = s.state;
    const double r =
        geodesic_distance({st.v1, st.space}, {st.v2, st.space});
    const Vec3 qc = center_of_mass(to_config(st, m1, m2)).qc.v;
    TrajectoryRecord rec;
    rec.f = {s.t,
             st.v1.x, st.v1.y, st.v1.z,
             st.v2.x, st.v2.y, st.v2.z,
             st.w1.x, st.w1.y, st.w1.z,
             st.w2.x, st.w2.y, st.w2.z,
             r,
             qc.x, qc.y, qc.z,
             s.kinetic, s.potential, s.energy};
    return rec;
}

// 17 significant digits: doubles round-trip exactly through this representation.
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline void write_csv(std::ostream& os, const Trajectory& traj, double m1, double m2) {
    os << kCsvHeader << '\n';
    for (const TrajectorySample& s : traj.samples) {
        const TrajectoryRecord rec = make_record(s, m1, m2);
        for (int i = 0; i < kRecordFields; ++i) {
            if (i) os << ',';
            os << format_double(rec.f[i]);
        }
        os << '\n';
    }
}

inline void write_jsonl(std::ostream& os, const Trajectory& traj, double m1, double m2) {
    for (const TrajectorySample& s : traj.samples) {
        const TrajectoryRecord rec = make_record(s, m1, m2);
        os << '{';
        for (int i = 0; i < kRecordFields; ++i) {
            if (i) os << ',';
            os << '"' << record_field_names()[i] << "\":" << format_double(rec.f[i]);
        }
        os << "}\n";
    }
}

// Strict reader for the CSV produced above; throws ParseError on any deviation.
inline std::vector<TrajectoryRecord> read_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw ParseError(1, "empty document");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kCsvHeader) throw ParseError(1, "header mismatch");
    std::vector<TrajectoryRecord> out;
    int line_no = 1;
    while (std::getline(is, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        TrajectoryRecord rec;
        std::size_t pos = 0;
        for (int i = 0; i < kRecordFields; ++i) {
            const std::size_t comma = line.find(',', pos);
            const bool last = i == kRecordFields - 1;
            if (last != (comma == std::string::npos))
                throw ParseError(line_no, "wrong field count");
            const std::string tok =
                last ? line.substr(pos) : line.substr(pos, comma - pos);
            char* end = nullptr;
            rec.f[i] = std::strtod(tok.c_str(), &end);
            if (end != tok.c_str() + tok.size())
                throw ParseError(line_no, "malformed number '" + tok + "'");
            pos = last ? pos : comma + 1;
        }
        out.push_back(rec);
    }
    return out;
}

}  // namespace curvebody

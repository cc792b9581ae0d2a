#ifndef SBR_UNITS_HPP
#define SBR_UNITS_HPP

#include <cstdint>
#include <cmath>
#include <string>

namespace sbr {

// All durations and clock times are kept in integer deciminutes (1/10 min)
// so that schedule and compatibility comparisons are exact.
using Dm = std::int64_t;

constexpr Dm kDmPerMinute = 10;

inline Dm dm_from_minutes(double minutes) {
    return static_cast<Dm>(std::llround(minutes * kDmPerMinute));
}

inline double minutes(Dm v) { return static_cast<double>(v) / kDmPerMinute; }

// Renders deciminutes as a minute string without float noise ("12", "12.5").
inline std::string minutes_str(Dm v) {
    std::string sign = v < 0 ? "-" : "";
    Dm a = v < 0 ? -v : v;
    std::string out = sign + std::to_string(a / kDmPerMinute);
    if (a % kDmPerMinute != 0) out += "." + std::to_string(a % kDmPerMinute);
    return out;
}

// Exact fraction of bus capacity, kept as students/capacity.
struct LoadFraction {
    int students = 0;
    int capacity = 1;

    double value() const { return static_cast<double>(students) / capacity; }
    std::string str() const {
        return std::to_string(students) + "/" + std::to_string(capacity);
    }
};

}  // namespace sbr

#endif

#ifndef SBR_OBJECTIVE_HPP
#define SBR_OBJECTIVE_HPP

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace sbr {

/// The four routing objectives compared by the experiments. All are stated
/// as minimizations; compatibility enters with a negative weight.
enum class ObjectiveKind {
    MaxComTT,  // travel time + trip penalty - compatibility benefit
    MaxCom,    // -(compatible pairs)
    MinN,      // trip count
    MinTT,     // total travel time
};

inline constexpr std::array<ObjectiveKind, 4> kAllObjectives = {
    ObjectiveKind::MaxComTT, ObjectiveKind::MaxCom, ObjectiveKind::MinN,
    ObjectiveKind::MinTT};

inline std::string to_string(ObjectiveKind kind) {
    switch (kind) {
        case ObjectiveKind::MaxComTT: return "maxcom+tt";
        case ObjectiveKind::MaxCom: return "maxcom";
        case ObjectiveKind::MinN: return "minn";
        case ObjectiveKind::MinTT: return "mintt";
    }
    return "?";
}

inline std::optional<ObjectiveKind> objective_from_string(std::string_view s) {
    if (s == "maxcom+tt") return ObjectiveKind::MaxComTT;
    if (s == "maxcom") return ObjectiveKind::MaxCom;
    if (s == "minn") return ObjectiveKind::MinN;
    if (s == "mintt") return ObjectiveKind::MinTT;
    return std::nullopt;
}

}  // namespace sbr

#endif

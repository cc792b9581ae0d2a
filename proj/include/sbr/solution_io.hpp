#ifndef SBR_SOLUTION_IO_HPP
#define SBR_SOLUTION_IO_HPP

#include <filesystem>
#include <string>

#include "sbr/blocking.hpp"
#include "sbr/solver.hpp"

namespace sbr {

// Solution layout: { "trips": [{"id", "school", "stops": [ids],
//   "loads": {stop: "students/capacity"}, "start", "tt", "end"}] }
std::string solution_to_json_text(const std::vector<SolutionTrip>& trips,
                                  const Instance& inst);
void save_solution(const std::vector<SolutionTrip>& trips, const Instance& inst,
                   const std::filesystem::path& path);
std::vector<SolutionTrip> solution_from_json_text(const std::string& text,
                                                  const Instance& inst);
std::vector<SolutionTrip> load_solution(const std::filesystem::path& path,
                                        const Instance& inst);

// Run manifest: objective, seed, wall time, objective value, bound, gap.
std::string manifest_to_json_text(const RoutingSolution& sol, ObjectiveKind kind,
                                  std::uint64_t seed);
void save_manifest(const RoutingSolution& sol, ObjectiveKind kind, std::uint64_t seed,
                   const std::filesystem::path& path);

// Blocking layout: { "blocks": [[trip ids]], "bus_count", "edges_used" }
std::string blocking_to_json_text(const BlockingSolution& sol);
void save_blocking(const BlockingSolution& sol, const std::filesystem::path& path);

}  // namespace sbr

#endif

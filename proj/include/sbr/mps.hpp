#ifndef SBR_MPS_HPP
#define SBR_MPS_HPP

#include <filesystem>
#include <string>

#include "sbr/model.hpp"

namespace sbr {

/// Renders the model as MPS text: NAME, OBJSENSE, ROWS, COLUMNS (integer
/// markers around binary runs), RHS, BOUNDS, ENDATA. Output is a pure
/// function of the model, so repeated exports are byte-identical.
std::string write_mps(const ModelInstance& model);

void export_model(const ModelInstance& model, const std::filesystem::path& path);

}  // namespace sbr

#endif

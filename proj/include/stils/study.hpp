#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "stils/config.hpp"

namespace stils {

struct ModeResult {
  bool ok = false;
  std::string error;
  double min = 0.0;
  double max = 0.0;
  double relative_variation = 0.0;
  double slot_contrast = 0.0;
  Index max_ddm_iterations = 0;
  double seconds = 0.0;
};

struct StudyRow {
  Index n_slabs = 0;
  double tau = 0.0;
  Index nx = 0;
  Index ny = 0;
  Index elements = 0;
  Index nodes = 0;
  ModeResult stils;
  ModeResult ddm;
};

/// One run of the configured benchmark in the given mode. Failures are
/// captured in the result rather than thrown.
ModeResult run_mode(const RunConfig& config, Mode mode);

/// Both modes for each slab count (tau = T / M) on the base grid.
std::vector<StudyRow> study_tau(const RunConfig& base, std::span<const Index> slab_counts);

/// Both modes for each n x n grid at the base slab count.
std::vector<StudyRow> study_h(const RunConfig& base, std::span<const Index> grid_sizes);

inline const std::vector<Index> kStudyTauSlabs{50, 100, 200, 400, 800};
std::vector<Index> default_study_h_sizes(bool include_large);

void write_study_tau_csv(const std::vector<StudyRow>& rows, const std::filesystem::path& path);
void write_study_h_csv(const std::vector<StudyRow>& rows, const std::filesystem::path& path);

}  // namespace stils

#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"
#include "kdvlab/fourier_field.hpp"
#include "kdvlab/solver.hpp"

namespace kdvlab {

/// {"n": N, "re": [...], "im": [...], "real": bool, "mean_zero": bool} with
/// arrays in xi = -N..N order. Doubles are written in shortest round-trip
/// form, so field_from_json(field_to_json(f)) == f bit for bit.
nlohmann::json field_to_json(const FourierField& field);
FourierField field_from_json(const nlohmann::json& j);

nlohmann::json solver_config_to_json(const SolverConfig& cfg);

/// Writes dir/manifest.json (config, times, sample file names) and one
/// dir/sample_NNNNN.json per sample. Throws IoError on failure.
void write_trajectory(const Trajectory& traj, const std::filesystem::path& dir);
Trajectory read_trajectory(const std::filesystem::path& dir);

/// CSV with header t,mean,l2,hamiltonian and one row per sample.
std::string conserved_csv(const Trajectory& traj);

/// Formats a double in shortest round-trip form ("%.17g" fallback).
std::string format_double(double x);

/// Writes text to a file, creating parent directories. Throws IoError.
void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

}  // namespace kdvlab

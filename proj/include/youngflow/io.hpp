#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "youngflow/attractor.hpp"
#include "youngflow/coefficients.hpp"
#include "youngflow/sample_path.hpp"
#include "youngflow/stability.hpp"

namespace youngflow {

/// Writes paths sharing a grid as CSV: header t,path_0,...,path_{k-1}, one row
/// per grid time, full-precision decimal.
void write_paths_csv(const std::string& file, const std::vector<SamplePath>& paths);

/// Writes a vector-valued trajectory as t,x_0,...,x_{d-1}.
void write_trajectory_csv(const std::string& file, const SamplePath& traj);

/// Reads a CSV written by write_paths_csv; each column becomes a scalar path.
std::vector<SamplePath> read_paths_csv(const std::string& file);

/// Model metadata that does not live inside CoefficientSet.
struct ModelFile {
    CoefficientSet coeffs;
    std::string name;
    double h_A = 0.0;  // declared dissipativity constant
    double c_f = 0.0;  // declared Lipschitz constant
};

/// Parses a model JSON: {"d": int, "A": row-major flat array, "C": ...,
/// "nonlinearity": "none"|"sir"|"sir-transformed"|"custom-affine", "params": {...},
/// "h": number, "f": number}.
ModelFile read_model_json(const std::string& file);
void write_model_json(const std::string& file, const ModelFile& model);

std::string stability_report_json(const StabilityReport& report);
std::string attractor_report_json(const AttractorReport& report);

/// FNV-1a over a file's bytes; manifest fingerprint for determinism checks.
std::uint64_t fnv1a_file(const std::string& file);

std::string format_full(double v);  // shortest round-trip decimal

}  // namespace youngflow

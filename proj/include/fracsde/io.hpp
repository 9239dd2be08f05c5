#pragma once

#include <string>

#include "fracsde/chaos_expansion.hpp"
#include "fracsde/sampled_path.hpp"
#include "fracsde/volterra_sim.hpp"

namespace fracsde::io {

// Shortest round-trip decimal representation of a double.
std::string format_double(double x);

// SampledPath <-> CSV with header "t,value".
std::string path_to_csv(const SampledPath& f);
SampledPath path_from_csv(const std::string& text);

// Ensemble -> CSV: header "t,path_0,...,path_{P-1}", one row per node.
std::string ensemble_to_csv(const sim::PathEnsemble& ens);

// Ensemble <-> compact binary block: magic "FSDE1", little-endian 64-bit
// header fields (n_paths, n_nodes, T, seed) and row-major 64-bit floats.
std::string ensemble_to_binary(const sim::PathEnsemble& ens);
sim::PathEnsemble ensemble_from_binary(const std::string& bytes);

// ChaosTable <-> JSON {T, K, N, entries:[{alpha:[[k,mult],...], values:[...]}]}.
std::string chaos_table_to_json(const chaos::ChaosTable& table);
chaos::ChaosTable chaos_table_from_json(const std::string& text);

// Whole-file helpers; write_file refuses to overwrite unless allowed.
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content, bool allow_overwrite);

}  // namespace fracsde::io

#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include <nlohmann/json.hpp>

#include "sidechain/energy/problem.hpp"

namespace sidechain {

/// JSON problem document:
///
///   {"num_residues": 2, "rotamers_per_residue": [2, 2],
///    "nearest_neighbor_only": true, "index_base": 0,
///    "self_energy": [{"residue": 0, "rotamer": 0, "energy": -1.0}, ...],
///    "pair_energy": [{"res_i": 0, "rot_i": 0, "res_j": 1, "rot_j": 1, "energy": 0.5}, ...]}
///
/// index_base is optional (0 or 1) and applies to every residue and rotamer
/// index in the file. nearest_neighbor_only defaults to true.
RotamerProblem problem_from_json(const nlohmann::json& doc);
nlohmann::json problem_to_json(const RotamerProblem& problem);

/// Row-per-entry table. Blank lines and lines starting with '#' are skipped.
///
///   num_residues,2
///   rotamers_per_residue,2,2
///   nearest_neighbor_only,1
///   index_base,0
///   self,<residue>,<rotamer>,<energy>
///   pair,<res_i>,<rot_i>,<res_j>,<rot_j>,<energy>
RotamerProblem problem_from_csv(std::istream& in);
void problem_to_csv(const RotamerProblem& problem, std::ostream& out);

/// Dispatches on the extension: ".csv" reads the table form, anything else JSON.
RotamerProblem load_problem(const std::filesystem::path& path);
void save_problem(const RotamerProblem& problem, const std::filesystem::path& path);

}  // namespace sidechain

#include "sidechain/energy/problem_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <fmt/format.h>

namespace sidechain {
namespace {

int read_base(const nlohmann::json& doc) {
  const int base = doc.value("index_base", 0);
  if (base != 0 && base != 1) throw std::invalid_argument("index_base must be 0 or 1");
  return base;
}

int field_int(const nlohmann::json& entry, const char* name) {
  if (!entry.contains(name)) throw std::invalid_argument(fmt::format("entry missing field '{}'", name));
  return entry.at(name).get<int>();
}

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    const auto first = cell.find_first_not_of(" \t\r");
    const auto last = cell.find_last_not_of(" \t\r");
    cells.push_back(first == std::string::npos ? std::string{} : cell.substr(first, last - first + 1));
  }
  return cells;
}

int parse_int(const std::string& s, int line) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty()) throw std::invalid_argument(fmt::format("line {}: bad integer '{}'", line, s));
  return v;
}

double parse_double(const std::string& s, int line) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty()) throw std::invalid_argument(fmt::format("line {}: bad number '{}'", line, s));
  return v;
}

}  // namespace

RotamerProblem problem_from_json(const nlohmann::json& doc) {
  const int base = read_base(doc);
  auto rotamers = doc.at("rotamers_per_residue").get<std::vector<int>>();
  if (doc.contains("num_residues") && doc.at("num_residues").get<std::size_t>() != rotamers.size()) {
    throw std::invalid_argument("num_residues does not match length of rotamers_per_residue");
  }
  ProblemBuilder builder(std::move(rotamers), doc.value("nearest_neighbor_only", true));
  for (const auto& e : doc.value("self_energy", nlohmann::json::array())) {
    builder.set_self_energy(field_int(e, "residue") - base, field_int(e, "rotamer") - base,
                            e.at("energy").get<double>());
  }
  for (const auto& e : doc.value("pair_energy", nlohmann::json::array())) {
    builder.set_pair_energy(field_int(e, "res_i") - base, field_int(e, "rot_i") - base,
                            field_int(e, "res_j") - base, field_int(e, "rot_j") - base,
                            e.at("energy").get<double>());
  }
  return builder.build();
}

nlohmann::json problem_to_json(const RotamerProblem& problem) {
  nlohmann::json doc;
  doc["num_residues"] = problem.num_residues();
  doc["rotamers_per_residue"] = std::vector<int>(problem.layout().sizes().begin(), problem.layout().sizes().end());
  doc["nearest_neighbor_only"] = problem.nearest_neighbor_only();
  auto& self = doc["self_energy"] = nlohmann::json::array();
  for (int i = 0; i < problem.num_residues(); ++i) {
    for (int a = 0; a < problem.rotamers(i); ++a) {
      self.push_back({{"residue", i}, {"rotamer", a}, {"energy", problem.self_energy(i, a)}});
    }
  }
  auto& pair = doc["pair_energy"] = nlohmann::json::array();
  for (const auto& [key, table] : problem.pair_tables()) {
    for (int a = 0; a < table.rows(); ++a) {
      for (int b = 0; b < table.cols(); ++b) {
        pair.push_back({{"res_i", key.first}, {"rot_i", a}, {"res_j", key.second}, {"rot_j", b},
                        {"energy", table(a, b)}});
      }
    }
  }
  return doc;
}

RotamerProblem problem_from_csv(std::istream& in) {
  struct SelfRow {
    int line, r, a;
    double e;
  };
  struct PairRow {
    int line, ri, ai, rj, aj;
    double e;
  };
  std::vector<int> rotamers;
  int declared = -1;
  int base = 0;
  bool nearest = true;
  std::vector<SelfRow> selfs;
  std::vector<PairRow> pairs;

  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto cells = split_row(line);
    if (cells.empty() || cells[0].empty() || cells[0][0] == '#') continue;
    const auto& tag = cells[0];
    auto need = [&](std::size_t n) {
      if (cells.size() != n) {
        throw std::invalid_argument(fmt::format("line {}: '{}' row needs {} fields, got {}", lineno, tag, n, cells.size()));
      }
    };
    if (tag == "num_residues") {
      need(2);
      declared = parse_int(cells[1], lineno);
    } else if (tag == "rotamers_per_residue") {
      rotamers.clear();
      for (std::size_t k = 1; k < cells.size(); ++k) rotamers.push_back(parse_int(cells[k], lineno));
    } else if (tag == "nearest_neighbor_only") {
      need(2);
      const auto& v = cells[1];
      if (v == "1" || v == "true") {
        nearest = true;
      } else if (v == "0" || v == "false") {
        nearest = false;
      } else {
        throw std::invalid_argument(fmt::format("line {}: bad boolean '{}'", lineno, v));
      }
    } else if (tag == "index_base") {
      need(2);
      base = parse_int(cells[1], lineno);
      if (base != 0 && base != 1) throw std::invalid_argument("index_base must be 0 or 1");
    } else if (tag == "self") {
      need(4);
      selfs.push_back({lineno, parse_int(cells[1], lineno), parse_int(cells[2], lineno), parse_double(cells[3], lineno)});
    } else if (tag == "pair") {
      need(6);
      pairs.push_back({lineno, parse_int(cells[1], lineno), parse_int(cells[2], lineno), parse_int(cells[3], lineno),
                       parse_int(cells[4], lineno), parse_double(cells[5], lineno)});
    } else {
      throw std::invalid_argument(fmt::format("line {}: unknown row tag '{}'", lineno, tag));
    }
  }
  if (rotamers.empty()) throw std::invalid_argument("table has no rotamers_per_residue row");
  if (declared >= 0 && static_cast<std::size_t>(declared) != rotamers.size()) {
    throw std::invalid_argument("num_residues does not match length of rotamers_per_residue");
  }
  ProblemBuilder builder(std::move(rotamers), nearest);
  for (const auto& s : selfs) builder.set_self_energy(s.r - base, s.a - base, s.e);
  for (const auto& p : pairs) builder.set_pair_energy(p.ri - base, p.ai - base, p.rj - base, p.aj - base, p.e);
  return builder.build();
}

void problem_to_csv(const RotamerProblem& problem, std::ostream& out) {
  out << "num_residues," << problem.num_residues() << '\n';
  out << "rotamers_per_residue";
  for (int n : problem.layout().sizes()) out << ',' << n;
  out << '\n';
  out << "nearest_neighbor_only," << (problem.nearest_neighbor_only() ? 1 : 0) << '\n';
  for (int i = 0; i < problem.num_residues(); ++i) {
    for (int a = 0; a < problem.rotamers(i); ++a) {
      out << fmt::format("self,{},{},{}\n", i, a, problem.self_energy(i, a));
    }
  }
  for (const auto& [key, table] : problem.pair_tables()) {
    for (int a = 0; a < table.rows(); ++a) {
      for (int b = 0; b < table.cols(); ++b) {
        out << fmt::format("pair,{},{},{},{},{}\n", key.first, a, key.second, b, table(a, b));
      }
    }
  }
}

RotamerProblem load_problem(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open problem file " + path.string());
  if (path.extension() == ".csv") return problem_from_csv(in);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(fmt::format("{}: {}", path.string(), e.what()));
  }
  return problem_from_json(doc);
}

void save_problem(const RotamerProblem& problem, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write problem file " + path.string());
  if (path.extension() == ".csv") {
    problem_to_csv(problem, out);
  } else {
    out << problem_to_json(problem).dump(1) << '\n';
  }
}

}  // namespace sidechain

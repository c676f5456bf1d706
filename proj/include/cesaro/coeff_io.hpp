// CoeffSeq JSON file format: an array indexed by degree whose entries are
// [re, im] pairs. A bare number x is accepted as shorthand for [x, 0].
#pragma once

#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cesaro/series.hpp"

namespace cesaro {

inline nlohmann::json to_json(const CoeffSeq& f) {
  auto out = nlohmann::json::array();
  for (const complex& a : f) out.push_back({a.real(), a.imag()});
  return out;
}

inline CoeffSeq coeff_seq_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty()) {
    throw std::invalid_argument("CoeffSeq JSON must be a non-empty array");
  }
  std::vector<complex> coeffs;
  coeffs.reserve(j.size());
  for (const auto& entry : j) {
    if (entry.is_number()) {
      coeffs.emplace_back(entry.get<double>(), 0.0);
    } else if (entry.is_array() && entry.size() == 2 && entry[0].is_number() &&
               entry[1].is_number()) {
      coeffs.emplace_back(entry[0].get<double>(), entry[1].get<double>());
    } else {
      throw std::invalid_argument("CoeffSeq JSON entries must be numbers or [re, im] pairs, got " +
                                  entry.dump());
    }
  }
  return CoeffSeq(std::move(coeffs));
}

inline CoeffSeq read_coeff_seq(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(path.string() + ": " + e.what());
  }
  return coeff_seq_from_json(j);
}

inline void write_coeff_seq(const std::filesystem::path& path, const CoeffSeq& f) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << to_json(f).dump() << '\n';
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace cesaro

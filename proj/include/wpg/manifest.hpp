#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wpg/einstein.hpp"
#include "wpg/warped.hpp"

namespace wpg {

struct Interval {
  double lo = 0, hi = 0;
};

struct ChartSpec {
  std::vector<std::string> coords;
  std::vector<std::vector<std::string>> metric;  // full or upper-triangular rows
  std::vector<int> signature;                    // defaults to all +1
  std::vector<Interval> box;                     // sampling box, one interval per coordinate
};

struct FieldSpec {
  Factor on = Factor::Base;
  std::vector<std::string> components;
};

struct Tolerances {
  double identity = 1e-7;
  double fit = 1e-8;
};

struct Sampling {
  int points = 50;
  std::uint64_t seed = 42;
};

struct QECoefficients {
  double a = 0, b = 0, c = 0;
};

/// Declarative description of a warped product, its P and (G)QE generators.
struct Manifest {
  std::string name;
  ChartSpec base, fiber;
  std::string warping = "1";
  std::optional<FieldSpec> p;
  std::optional<FieldSpec> u1, u2;
  std::optional<QECoefficients> qe;
  Tolerances tolerances;
  Sampling sampling;
};

/// Parses and fully validates a JSON manifest. Throws SchemaError naming the offending field.
Manifest parse_manifest(std::string_view json_text);
Manifest load_manifest(const std::filesystem::path& path);
std::string to_json(const Manifest& m);

/// A manifest turned into engine objects.
struct Problem {
  WarpedProduct wp;
  FieldPlacement p;        // zero on the base when the manifest has no P
  QEStructure qe;          // coefficients are zero unless declared
  bool qe_declared = false;
  std::vector<Interval> box;  // ambient sampling box
};

/// Throws SchemaError on any expression or consistency problem.
Problem instantiate(const Manifest& m);

}  // namespace wpg

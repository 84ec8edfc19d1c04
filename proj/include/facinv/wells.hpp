#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "facinv/grid.hpp"

namespace facinv {

struct WellObservation {
  std::size_t k = 0;
  std::uint8_t facies = 0;
};

// A vertical well at column (i, j) with facies interpretations at some depths.
struct Well {
  std::string name;
  std::size_t i = 0;
  std::size_t j = 0;
  std::vector<WellObservation> observations;
};

struct WellSet {
  std::vector<Well> wells;

  std::size_t observation_count() const;
  // Throws DomainError on an index outside dims or a repeated (well, k).
  void validate(const GridDims& dims) const;
};

// Text format, one observation per record: "name i j k facies". Blank lines
// and lines starting with '#' are ignored. Records of one well share (i, j).
WellSet load_wells(const std::filesystem::path& path);
WellSet parse_wells(const std::string& text);
std::string format_wells(const WellSet& wells);
void save_wells(const WellSet& wells, const std::filesystem::path& path);

// Pseudo-wells that read every layer of `grid` at the given columns.
WellSet sample_wells(const FaciesGrid& grid, const std::vector<std::pair<std::size_t, std::size_t>>& columns);

}  // namespace facinv

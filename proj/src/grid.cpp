#include "facinv/grid.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

namespace facinv {

GridDims::GridDims(std::size_t nx_, std::size_t ny_, std::size_t nz_, double sx, double sy,
                   double sz)
    : nx(nx_), ny(ny_), nz(nz_), cell_size_x(sx), cell_size_y(sy), cell_size_z(sz) {}

void GridDims::validate() const {
  if (nx < 1 || ny < 1 || nz < 1) {
    throw DomainError("grid dims must be at least 1 cell per axis, got " + to_string());
  }
  if (!(cell_size_x > 0.0) || !(cell_size_y > 0.0) || !(cell_size_z > 0.0)) {
    throw DomainError("grid cell sizes must be positive");
  }
}

std::string GridDims::to_string() const {
  return std::to_string(nx) + "x" + std::to_string(ny) + "x" + std::to_string(nz);
}

GridDims parse_dims(const std::string& text) {
  std::array<std::size_t, 3> n{};
  const char* p = text.data();
  const char* end = text.data() + text.size();
  for (int a = 0; a < 3; ++a) {
    auto [next, ec] = std::from_chars(p, end, n[a]);
    if (ec != std::errc{}) throw DomainError("cannot parse grid dims '" + text + "'");
    p = next;
    if (a < 2) {
      if (p == end || (*p != 'x' && *p != ',')) {
        throw DomainError("cannot parse grid dims '" + text + "'");
      }
      ++p;
    }
  }
  if (p != end) throw DomainError("cannot parse grid dims '" + text + "'");
  GridDims d(n[0], n[1], n[2]);
  d.validate();
  return d;
}

RealGrid::RealGrid(GridDims dims, std::vector<double> values)
    : Grid<double>(dims, std::move(values)) {
  const auto v = this->values();
  for (std::size_t n = 0; n < v.size(); ++n) {
    if (!std::isfinite(v[n])) {
      throw FormatError("non-finite value at cell " + std::to_string(n));
    }
  }
}

FaciesGrid::FaciesGrid(GridDims dims, std::vector<std::uint8_t> values,
                       std::vector<std::uint8_t> codes)
    : Grid<std::uint8_t>(dims, std::move(values)), codes_(std::move(codes)) {
  std::sort(codes_.begin(), codes_.end());
  codes_.erase(std::unique(codes_.begin(), codes_.end()), codes_.end());
  if (codes_.empty()) throw DomainError("facies code set is empty");
  std::array<bool, 256> allowed{};
  for (auto c : codes_) allowed[c] = true;
  const auto v = this->values();
  for (std::size_t n = 0; n < v.size(); ++n) {
    if (!allowed[v[n]]) {
      throw FormatError("unknown facies code " + std::to_string(v[n]) + " at cell " +
                        std::to_string(n));
    }
  }
}

bool FaciesGrid::has_code(std::uint8_t c) const {
  return std::binary_search(codes_.begin(), codes_.end(), c);
}

std::map<std::uint8_t, double> facies_proportions(const FaciesGrid& grid) {
  if (grid.size() == 0) throw DomainError("facies proportions of an empty grid");
  std::array<std::size_t, 256> counts{};
  for (auto v : grid.values()) ++counts[v];
  std::map<std::uint8_t, double> out;
  const double total = static_cast<double>(grid.size());
  for (std::size_t c = 0; c < counts.size(); ++c) {
    if (counts[c] > 0) out[static_cast<std::uint8_t>(c)] = static_cast<double>(counts[c]) / total;
  }
  return out;
}

Index3 checked_patch_bounds(const GridDims& dims, const Index3& origin, const Index3& size) {
  for (int a = 0; a < 3; ++a) {
    if (size[a] < 1) throw DomainError("patch size must be at least 1 on every axis");
    if (origin[a] + size[a] > dims.extent(a)) {
      throw DomainError("patch [" + std::to_string(origin[a]) + ", " +
                        std::to_string(origin[a] + size[a]) + ") exceeds extent " +
                        std::to_string(dims.extent(a)) + " on axis " + "xyz"[a]);
    }
  }
  return size;
}

FaciesGrid extract_patch(const FaciesGrid& grid, const Index3& origin, const Index3& size) {
  auto values = extract_patch_values(grid, origin, size);
  return FaciesGrid(patch_dims(grid.dims(), size), std::move(values), grid.codes());
}

RealGrid extract_patch(const RealGrid& grid, const Index3& origin, const Index3& size) {
  auto values = extract_patch_values(grid, origin, size);
  return RealGrid(patch_dims(grid.dims(), size), std::move(values));
}

}  // namespace facinv

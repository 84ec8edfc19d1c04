#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "facinv/error.hpp"

namespace facinv {

using Index3 = std::array<std::size_t, 3>;

// Cell counts and physical cell sizes of a regular 3-D grid. Storage is
// x-fastest: linear index = i + nx * (j + ny * k).
struct GridDims {
  std::size_t nx = 1;
  std::size_t ny = 1;
  std::size_t nz = 1;
  double cell_size_x = 1.0;
  double cell_size_y = 1.0;
  double cell_size_z = 1.0;

  GridDims() = default;
  GridDims(std::size_t nx_, std::size_t ny_, std::size_t nz_, double sx = 1.0,
           double sy = 1.0, double sz = 1.0);

  std::size_t size() const { return nx * ny * nz; }
  std::size_t extent(int axis) const { return axis == 0 ? nx : axis == 1 ? ny : nz; }
  std::size_t index(std::size_t i, std::size_t j, std::size_t k) const {
    return i + nx * (j + ny * k);
  }
  bool contains(std::size_t i, std::size_t j, std::size_t k) const {
    return i < nx && j < ny && k < nz;
  }
  // Cell counts only; physical sizes do not take part in shape checks.
  bool same_shape(const GridDims& o) const { return nx == o.nx && ny == o.ny && nz == o.nz; }

  // Throws DomainError unless counts >= 1 and cell sizes > 0.
  void validate() const;
  std::string to_string() const;
};

// Parses "NXxNYxNZ" or "NX,NY,NZ".
GridDims parse_dims(const std::string& text);

namespace facies {
inline constexpr std::uint8_t mud = 0;
inline constexpr std::uint8_t channel = 1;
}  // namespace facies

// Dense grid with immutable extent. Values are set at construction and
// exposed read-only; derived grids are built from fresh value vectors.
template <class T>
class Grid {
 public:
  using value_type = T;

  Grid() = default;
  Grid(GridDims dims, std::vector<T> values) : dims_(dims), values_(std::move(values)) {
    dims_.validate();
    if (values_.size() != dims_.size()) {
      throw ShapeError("grid payload has " + std::to_string(values_.size()) +
                       " cells, dims " + dims_.to_string() + " require " +
                       std::to_string(dims_.size()));
    }
  }
  Grid(GridDims dims, T fill) : Grid(dims, std::vector<T>(dims.size(), fill)) {}

  const GridDims& dims() const { return dims_; }
  std::size_t size() const { return values_.size(); }
  std::span<const T> values() const { return values_; }
  const T& operator[](std::size_t n) const { return values_[n]; }
  const T& at(std::size_t i, std::size_t j, std::size_t k) const {
    return values_[dims_.index(i, j, k)];
  }

  friend bool operator==(const Grid& a, const Grid& b) {
    return a.dims_.same_shape(b.dims_) && a.values_ == b.values_;
  }

 private:
  GridDims dims_{};
  std::vector<T> values_;
};

// Continuous-valued grid: generator output, elastic properties, seismic.
class RealGrid : public Grid<double> {
 public:
  RealGrid() = default;
  // Throws FormatError on any NaN or infinite cell.
  RealGrid(GridDims dims, std::vector<double> values);
  RealGrid(GridDims dims, double fill) : RealGrid(dims, std::vector<double>(dims.size(), fill)) {}
};

using SeismicCube = RealGrid;

// Categorical grid of facies codes; every cell must be one of codes().
class FaciesGrid : public Grid<std::uint8_t> {
 public:
  FaciesGrid() = default;
  FaciesGrid(GridDims dims, std::vector<std::uint8_t> values,
             std::vector<std::uint8_t> codes = {facies::mud, facies::channel});
  FaciesGrid(GridDims dims, std::uint8_t fill,
             std::vector<std::uint8_t> codes = {facies::mud, facies::channel})
      : FaciesGrid(dims, std::vector<std::uint8_t>(dims.size(), fill), std::move(codes)) {}

  const std::vector<std::uint8_t>& codes() const { return codes_; }
  bool has_code(std::uint8_t c) const;

 private:
  std::vector<std::uint8_t> codes_;
};

// Fraction of cells per facies code present in the grid. Fractions are
// count / total, so they sum to one up to rounding.
std::map<std::uint8_t, double> facies_proportions(const FaciesGrid& grid);

Index3 checked_patch_bounds(const GridDims& dims, const Index3& origin, const Index3& size);

template <class T>
std::vector<T> extract_patch_values(const Grid<T>& grid, const Index3& origin,
                                    const Index3& size) {
  checked_patch_bounds(grid.dims(), origin, size);
  std::vector<T> out;
  out.reserve(size[0] * size[1] * size[2]);
  for (std::size_t c = 0; c < size[2]; ++c)
    for (std::size_t b = 0; b < size[1]; ++b) {
      const T* row = &grid.at(origin[0], origin[1] + b, origin[2] + c);
      out.insert(out.end(), row, row + size[0]);
    }
  return out;
}

inline GridDims patch_dims(const GridDims& src, const Index3& size) {
  return GridDims(size[0], size[1], size[2], src.cell_size_x, src.cell_size_y, src.cell_size_z);
}

// Sub-volume starting at origin; patch cell (a,b,c) equals source cell
// (i+a, j+b, k+c). Throws DomainError when the box leaves the grid.
FaciesGrid extract_patch(const FaciesGrid& grid, const Index3& origin, const Index3& size);
RealGrid extract_patch(const RealGrid& grid, const Index3& origin, const Index3& size);

}  // namespace facinv

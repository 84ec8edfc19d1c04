#include <numeric>

#include "facinv/geostats.hpp"

namespace facinv {

namespace {

class DisjointSets {
 public:
  std::uint32_t make() {
    parent_.push_back(static_cast<std::uint32_t>(parent_.size()));
    return parent_.back();
  }
  std::uint32_t find(std::uint32_t a) {
    while (parent_[a] != a) {
      parent_[a] = parent_[parent_[a]];
      a = parent_[a];
    }
    return a;
  }
  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b) std::swap(a, b);
    parent_[a] = b;
  }
  std::size_t size() const { return parent_.size(); }

 private:
  std::vector<std::uint32_t> parent_;
};

struct Offset {
  int di, dj, dk;
};

// Neighbours already visited in an x-fastest scan.
std::vector<Offset> backward_offsets(Neighborhood nb) {
  if (nb == Neighborhood::face6) return {{-1, 0, 0}, {0, -1, 0}, {0, 0, -1}};
  std::vector<Offset> out;
  for (int dk = -1; dk <= 0; ++dk)
    for (int dj = -1; dj <= 1; ++dj)
      for (int di = -1; di <= 1; ++di) {
        if (dk == 0 && (dj > 0 || (dj == 0 && di >= 0))) continue;
        out.push_back({di, dj, dk});
      }
  return out;
}

}  // namespace

LabelGrid label_components(const FaciesGrid& grid, std::uint8_t code, Neighborhood nb) {
  const auto& d = grid.dims();
  const auto v = grid.values();
  const auto offsets = backward_offsets(nb);
  constexpr std::uint32_t none = 0xffffffffu;
  std::vector<std::uint32_t> provisional(v.size(), none);
  DisjointSets sets;

  for (std::size_t k = 0; k < d.nz; ++k)
    for (std::size_t j = 0; j < d.ny; ++j)
      for (std::size_t i = 0; i < d.nx; ++i) {
        const std::size_t n = d.index(i, j, k);
        if (v[n] != code) continue;
        std::uint32_t label = none;
        for (const auto& o : offsets) {
          const long long ni = static_cast<long long>(i) + o.di;
          const long long nj = static_cast<long long>(j) + o.dj;
          const long long nk = static_cast<long long>(k) + o.dk;
          if (ni < 0 || nj < 0 || nk < 0 || ni >= static_cast<long long>(d.nx) ||
              nj >= static_cast<long long>(d.ny)) {
            continue;
          }
          const std::uint32_t other = provisional[d.index(ni, nj, nk)];
          if (other == none) continue;
          if (label == none) {
            label = other;
          } else {
            sets.unite(label, other);
          }
        }
        provisional[n] = label == none ? sets.make() : label;
      }

  std::vector<std::uint32_t> final_label(sets.size(), 0);
  std::uint32_t next = 0;
  std::vector<std::uint32_t> out(v.size(), 0);
  for (std::size_t n = 0; n < v.size(); ++n) {
    if (provisional[n] == none) continue;
    const std::uint32_t root = sets.find(provisional[n]);
    if (final_label[root] == 0) final_label[root] = ++next;
    out[n] = final_label[root];
  }
  return LabelGrid(d, std::move(out));
}

std::uint32_t component_count(const LabelGrid& labels) {
  std::uint32_t m = 0;
  for (auto l : labels.values()) m = std::max(m, l);
  return m;
}

}  // namespace facinv

#include "facinv/wells.hpp"

#include <map>
#include <set>
#include <sstream>

#include "facinv/grid_io.hpp"

namespace facinv {

std::size_t WellSet::observation_count() const {
  std::size_t n = 0;
  for (const auto& w : wells) n += w.observations.size();
  return n;
}

void WellSet::validate(const GridDims& dims) const {
  for (const auto& w : wells) {
    if (w.i >= dims.nx || w.j >= dims.ny) {
      throw DomainError("well '" + w.name + "' column (" + std::to_string(w.i) + ", " +
                        std::to_string(w.j) + ") outside grid " + dims.to_string());
    }
    std::set<std::size_t> seen;
    for (const auto& o : w.observations) {
      if (o.k >= dims.nz) {
        throw DomainError("well '" + w.name + "' depth index " + std::to_string(o.k) +
                          " outside grid " + dims.to_string());
      }
      if (!seen.insert(o.k).second) {
        throw DomainError("well '" + w.name + "' has two observations at k = " +
                          std::to_string(o.k));
      }
    }
  }
}

WellSet parse_wells(const std::string& text) {
  WellSet out;
  std::map<std::string, std::size_t> by_name;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    std::string name;
    long long i = -1, j = -1, k = -1, code = -1;
    std::string extra;
    if (!(ls >> name >> i >> j >> k >> code) || (ls >> extra) || i < 0 || j < 0 || k < 0 ||
        code < 0 || code > 255) {
      throw FormatError("wells line " + std::to_string(line_no) + ": expected 'name i j k facies'");
    }
    auto [it, inserted] = by_name.emplace(name, out.wells.size());
    if (inserted) {
      out.wells.push_back(Well{name, static_cast<std::size_t>(i), static_cast<std::size_t>(j), {}});
    }
    Well& w = out.wells[it->second];
    if (w.i != static_cast<std::size_t>(i) || w.j != static_cast<std::size_t>(j)) {
      throw FormatError("wells line " + std::to_string(line_no) + ": well '" + name +
                        "' changes column");
    }
    w.observations.push_back({static_cast<std::size_t>(k), static_cast<std::uint8_t>(code)});
  }
  return out;
}

WellSet load_wells(const std::filesystem::path& path) {
  try {
    return parse_wells(read_file(path));
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

std::string format_wells(const WellSet& wells) {
  std::ostringstream out;
  out << "# name i j k facies\n";
  for (const auto& w : wells.wells)
    for (const auto& o : w.observations)
      out << w.name << ' ' << w.i << ' ' << w.j << ' ' << o.k << ' ' << unsigned{o.facies} << '\n';
  return out.str();
}

void save_wells(const WellSet& wells, const std::filesystem::path& path) {
  atomic_write(path, format_wells(wells));
}

WellSet sample_wells(const FaciesGrid& grid,
                     const std::vector<std::pair<std::size_t, std::size_t>>& columns) {
  WellSet out;
  for (std::size_t n = 0; n < columns.size(); ++n) {
    const auto [i, j] = columns[n];
    if (i >= grid.dims().nx || j >= grid.dims().ny) {
      throw DomainError("pseudo-well column outside grid");
    }
    Well w{"W" + std::to_string(n + 1), i, j, {}};
    for (std::size_t k = 0; k < grid.dims().nz; ++k) w.observations.push_back({k, grid.at(i, j, k)});
    out.wells.push_back(std::move(w));
  }
  return out;
}

}  // namespace facinv

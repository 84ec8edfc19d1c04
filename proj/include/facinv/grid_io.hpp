#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "facinv/grid.hpp"

namespace facinv {

// On-disk grid encodings. All are headerless with respect to dims, which
// the caller supplies.
//   gslib_ascii  title line, "1", variable name, then one value per line
//   raw_f32      IEEE-754 binary32 little-endian, one per cell
//   raw_u8       one byte per cell
// Cells are always written x-fastest.
enum class GridFormat { gslib_ascii, raw_f32, raw_u8 };

GridFormat parse_grid_format(std::string_view name);
std::string_view to_string(GridFormat f);
// Conventional file extension: ".gslib", ".f32", ".u8".
std::string_view extension(GridFormat f);

FaciesGrid load_facies_grid(const std::filesystem::path& path, GridFormat format,
                            const GridDims& dims,
                            std::vector<std::uint8_t> codes = {facies::mud, facies::channel});
RealGrid load_real_grid(const std::filesystem::path& path, GridFormat format,
                        const GridDims& dims);

// Output is byte-deterministic for a given grid and format. raw_f32 rounds
// doubles to the nearest binary32; gslib_ascii uses shortest round-trip text.
std::string encode_grid(const FaciesGrid& grid, GridFormat format);
std::string encode_grid(const RealGrid& grid, GridFormat format);
void save_grid(const FaciesGrid& grid, const std::filesystem::path& path, GridFormat format);
void save_grid(const RealGrid& grid, const std::filesystem::path& path, GridFormat format);

// Writes to a sibling temporary and renames over the target, so the target
// either holds the full payload or is left untouched.
void atomic_write(const std::filesystem::path& path, std::string_view bytes);
std::string read_file(const std::filesystem::path& path);

}  // namespace facinv

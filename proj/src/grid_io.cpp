#include "facinv/grid_io.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

namespace facinv {

static_assert(std::endian::native == std::endian::little,
              "raw_f32 encoding assumes a little-endian host");

namespace {

std::vector<double> parse_gslib(const std::string& text, const std::filesystem::path& path,
                                std::size_t expected) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw FormatError(path.string() + ": missing GSLIB title line");
  if (!std::getline(in, line)) throw FormatError(path.string() + ": missing GSLIB variable count");
  int nvar = 0;
  {
    std::istringstream ls(line);
    if (!(ls >> nvar) || nvar != 1) {
      throw FormatError(path.string() + ": expected exactly 1 GSLIB variable, got '" + line + "'");
    }
  }
  if (!std::getline(in, line)) throw FormatError(path.string() + ": missing GSLIB variable name");

  std::vector<double> values;
  values.reserve(expected);
  std::string token;
  while (in >> token) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc{} || ptr != token.data() + token.size()) {
      throw FormatError(path.string() + ": cannot parse value '" + token + "'");
    }
    values.push_back(v);
  }
  if (values.size() != expected) {
    throw ShapeError(path.string() + ": payload has " + std::to_string(values.size()) +
                     " values, dims require " + std::to_string(expected));
  }
  return values;
}

void check_length(const std::filesystem::path& path, std::size_t bytes, std::size_t expected) {
  if (bytes != expected) {
    throw ShapeError(path.string() + ": payload has " + std::to_string(bytes) +
                     " bytes, dims require " + std::to_string(expected));
  }
}

std::vector<double> decode_values(const std::string& bytes, const std::filesystem::path& path,
                                  GridFormat format, std::size_t n) {
  std::vector<double> values(n);
  switch (format) {
    case GridFormat::gslib_ascii:
      return parse_gslib(bytes, path, n);
    case GridFormat::raw_f32:
      check_length(path, bytes.size(), n * 4);
      for (std::size_t c = 0; c < n; ++c) {
        float f;
        std::memcpy(&f, bytes.data() + 4 * c, 4);
        values[c] = f;
      }
      return values;
    case GridFormat::raw_u8:
      check_length(path, bytes.size(), n);
      for (std::size_t c = 0; c < n; ++c) values[c] = static_cast<unsigned char>(bytes[c]);
      return values;
  }
  throw DomainError("unknown grid format");
}

template <class T>
std::string encode(std::span<const T> values, GridFormat format, const GridDims& dims,
                   std::string_view var_name) {
  std::string out;
  switch (format) {
    case GridFormat::gslib_ascii: {
      out = "facinv grid " + std::to_string(dims.nx) + " " + std::to_string(dims.ny) + " " +
            std::to_string(dims.nz) + "\n1\n" + std::string(var_name) + "\n";
      out.reserve(out.size() + values.size() * 4);
      char buf[64];
      for (const T& v : values) {
        std::to_chars_result r;
        if constexpr (std::is_floating_point_v<T>) {
          r = std::to_chars(buf, buf + sizeof(buf), v);
        } else {
          r = std::to_chars(buf, buf + sizeof(buf), static_cast<unsigned>(v));
        }
        out.append(buf, r.ptr);
        out.push_back('\n');
      }
      return out;
    }
    case GridFormat::raw_f32: {
      out.resize(values.size() * 4);
      for (std::size_t c = 0; c < values.size(); ++c) {
        const float f = static_cast<float>(values[c]);
        std::memcpy(out.data() + 4 * c, &f, 4);
      }
      return out;
    }
    case GridFormat::raw_u8: {
      out.resize(values.size());
      for (std::size_t c = 0; c < values.size(); ++c) {
        const double v = static_cast<double>(values[c]);
        if (v < 0.0 || v > 255.0 || v != std::floor(v)) {
          throw FormatError("value " + std::to_string(v) + " at cell " + std::to_string(c) +
                            " is not representable as raw_u8");
        }
        out[c] = static_cast<char>(static_cast<unsigned char>(v));
      }
      return out;
    }
  }
  throw DomainError("unknown grid format");
}

}  // namespace

GridFormat parse_grid_format(std::string_view name) {
  if (name == "gslib_ascii" || name == "gslib") return GridFormat::gslib_ascii;
  if (name == "raw_f32" || name == "f32") return GridFormat::raw_f32;
  if (name == "raw_u8" || name == "u8") return GridFormat::raw_u8;
  throw DomainError("unknown grid format '" + std::string(name) + "'");
}

std::string_view to_string(GridFormat f) {
  switch (f) {
    case GridFormat::gslib_ascii: return "gslib_ascii";
    case GridFormat::raw_f32: return "raw_f32";
    case GridFormat::raw_u8: return "raw_u8";
  }
  return "?";
}

std::string_view extension(GridFormat f) {
  switch (f) {
    case GridFormat::gslib_ascii: return ".gslib";
    case GridFormat::raw_f32: return ".f32";
    case GridFormat::raw_u8: return ".u8";
  }
  return "";
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("read failure on '" + path.string() + "'");
  return std::move(ss).str();
}

void atomic_write(const std::filesystem::path& path, std::string_view bytes) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + tmp.string() + "' for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) {
      out.close();
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw IoError("write failure on '" + tmp.string() + "'");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot move output into place at '" + path.string() + "'");
  }
}

FaciesGrid load_facies_grid(const std::filesystem::path& path, GridFormat format,
                            const GridDims& dims, std::vector<std::uint8_t> codes) {
  dims.validate();
  const std::string bytes = read_file(path);
  std::vector<std::uint8_t> cells(dims.size());
  if (format == GridFormat::raw_u8) {
    check_length(path, bytes.size(), dims.size());
    std::memcpy(cells.data(), bytes.data(), bytes.size());
  } else {
    const auto values = decode_values(bytes, path, format, dims.size());
    for (std::size_t c = 0; c < values.size(); ++c) {
      const double v = values[c];
      if (!(v >= 0.0 && v <= 255.0) || v != std::floor(v)) {
        throw FormatError(path.string() + ": value " + std::to_string(v) + " at cell " +
                          std::to_string(c) + " is not a facies code");
      }
      cells[c] = static_cast<std::uint8_t>(v);
    }
  }
  try {
    return FaciesGrid(dims, std::move(cells), std::move(codes));
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

RealGrid load_real_grid(const std::filesystem::path& path, GridFormat format,
                        const GridDims& dims) {
  dims.validate();
  auto values = decode_values(read_file(path), path, format, dims.size());
  try {
    return RealGrid(dims, std::move(values));
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

std::string encode_grid(const FaciesGrid& grid, GridFormat format) {
  return encode(grid.values(), format, grid.dims(), "facies");
}

std::string encode_grid(const RealGrid& grid, GridFormat format) {
  return encode(grid.values(), format, grid.dims(), "value");
}

void save_grid(const FaciesGrid& grid, const std::filesystem::path& path, GridFormat format) {
  atomic_write(path, encode_grid(grid, format));
}

void save_grid(const RealGrid& grid, const std::filesystem::path& path, GridFormat format) {
  atomic_write(path, encode_grid(grid, format));
}

}  // namespace facinv

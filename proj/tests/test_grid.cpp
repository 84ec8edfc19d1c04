#include <cstring>
#include <fstream>

#include "doctest.h"
#include "facinv/grid.hpp"
#include "facinv/grid_io.hpp"
#include "facinv/wells.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace facinv;

namespace {

FaciesGrid random_facies(Rng& rng, GridDims d) {
  std::vector<std::uint8_t> v(d.size());
  for (auto& c : v) c = rng.uniform01() < 0.5 ? facies::channel : facies::mud;
  return FaciesGrid(d, std::move(v));
}

RealGrid random_real(Rng& rng, GridDims d) {
  std::vector<double> v(d.size());
  // binary32-representable values so raw_f32 round trips exactly
  for (auto& x : v) x = static_cast<float>(rng.uniform(-1e3, 1e3));
  return RealGrid(d, std::move(v));
}

}  // namespace

TEST_CASE("grid dims validation and parsing") {
  CHECK_THROWS_AS(GridDims(0, 1, 1).validate(), DomainError);
  CHECK_THROWS_AS(GridDims(1, 1, 1, 0.0).validate(), DomainError);
  CHECK_NOTHROW(GridDims(60, 60, 30, 50.0, 50.0, 1.0).validate());
  const auto d = parse_dims("120x150x180");
  CHECK(d.nx == 120);
  CHECK(d.ny == 150);
  CHECK(d.nz == 180);
  CHECK(parse_dims("4,5,6").size() == 120);
  CHECK_THROWS_AS(parse_dims("4x5"), DomainError);
  CHECK_THROWS_AS(parse_dims("4x5x0"), DomainError);
  CHECK(GridDims(3, 4, 5).index(1, 2, 3) == 1 + 3 * (2 + 4 * 3));
}

TEST_CASE("grids reject bad payloads") {
  CHECK_THROWS_AS(FaciesGrid(GridDims(2, 2, 2), std::vector<std::uint8_t>(7, 0)), ShapeError);
  CHECK_THROWS_AS(FaciesGrid(GridDims(1, 1, 2), std::vector<std::uint8_t>{0, 3}), FormatError);
  CHECK_NOTHROW(FaciesGrid(GridDims(1, 1, 2), std::vector<std::uint8_t>{0, 2}, {0, 1, 2}));
  CHECK_THROWS_AS(RealGrid(GridDims(1, 1, 2), std::vector<double>{0.0, std::nan("")}), FormatError);
  CHECK_THROWS_AS(RealGrid(GridDims(1, 1, 1), std::vector<double>{INFINITY}), FormatError);
}

TEST_CASE("facies proportions") {
  SUBCASE("all mud") {
    const auto p = facies_proportions(FaciesGrid(GridDims(3, 3, 3), facies::mud));
    CHECK(p.size() == 1);
    CHECK(p.at(facies::mud) == 1.0);
  }
  SUBCASE("3 of 8 channel") {
    const FaciesGrid g(GridDims(2, 2, 2), std::vector<std::uint8_t>{1, 0, 0, 1, 0, 0, 1, 0});
    const auto p = facies_proportions(g);
    CHECK(p.at(facies::channel) == 0.375);
    CHECK(p.at(facies::mud) == 0.625);
  }
  SUBCASE("fractions sum to one on random grids") {
    Rng rng(11);
    for (int t = 0; t < 50; ++t) {
      std::vector<std::uint8_t> codes{0, 1, 2, 3};
      const GridDims d(1 + rng.below(9), 1 + rng.below(9), 1 + rng.below(9));
      std::vector<std::uint8_t> v(d.size());
      for (auto& c : v) c = static_cast<std::uint8_t>(rng.below(4));
      const auto p = facies_proportions(FaciesGrid(d, v, codes));
      double sum = 0.0;
      for (const auto& [code, f] : p) sum += f;
      CHECK(std::abs(sum - 1.0) <= 1e-12);
    }
  }
}

TEST_CASE("extract_patch") {
  Rng rng(3);
  const FaciesGrid g = random_facies(rng, GridDims(7, 6, 5));
  CHECK(extract_patch(g, {0, 0, 0}, {7, 6, 5}) == g);

  const auto p = extract_patch(g, {2, 1, 3}, {4, 3, 2});
  for (std::size_t c = 0; c < 2; ++c)
    for (std::size_t b = 0; b < 3; ++b)
      for (std::size_t a = 0; a < 4; ++a) CHECK(p.at(a, b, c) == g.at(2 + a, 1 + b, 3 + c));

  // nested extraction equals one extraction at the summed origin
  const auto nested = extract_patch(p, {1, 1, 1}, {2, 2, 1});
  CHECK(nested == extract_patch(g, {3, 2, 4}, {2, 2, 1}));

  CHECK_THROWS_AS(extract_patch(FaciesGrid(GridDims(120, 2, 2), 0), {119, 0, 0}, {2, 1, 1}),
                  DomainError);
  CHECK_THROWS_AS(extract_patch(g, {0, 0, 0}, {0, 1, 1}), DomainError);
}

TEST_CASE("grid file round trips") {
  testutil::TempDir tmp("grid");
  Rng rng(5);
  for (auto fmt : {GridFormat::gslib_ascii, GridFormat::raw_f32, GridFormat::raw_u8}) {
    CAPTURE(to_string(fmt));
    const GridDims d(4, 4, 4);
    const FaciesGrid g = random_facies(rng, d);
    const auto path = tmp / ("facies" + std::string(extension(fmt)));
    save_grid(g, path, fmt);
    CHECK(load_facies_grid(path, fmt, d) == g);

    // save -> load -> save is byte-identical
    const auto again = tmp / ("again" + std::string(extension(fmt)));
    save_grid(load_facies_grid(path, fmt, d), again, fmt);
    CHECK(read_file(path) == read_file(again));
  }
  for (auto fmt : {GridFormat::gslib_ascii, GridFormat::raw_f32}) {
    const GridDims d(5, 3, 2);
    const RealGrid g = random_real(rng, d);
    const auto path = tmp / ("real" + std::string(extension(fmt)));
    save_grid(g, path, fmt);
    CHECK(load_real_grid(path, fmt, d) == g);
  }
  SUBCASE("gslib keeps full double precision") {
    const RealGrid g(GridDims(1, 1, 3), std::vector<double>{0.1, -1.0 / 3.0, 1e-300});
    save_grid(g, tmp / "p.gslib", GridFormat::gslib_ascii);
    CHECK(load_real_grid(tmp / "p.gslib", GridFormat::gslib_ascii, g.dims()) == g);
  }
}

TEST_CASE("grid saving is deterministic and encodes as documented") {
  testutil::TempDir tmp("grid_bytes");
  Rng rng(9);
  const FaciesGrid g = random_facies(rng, GridDims(3, 4, 5));
  save_grid(g, tmp / "a.gslib", GridFormat::gslib_ascii);
  save_grid(g, tmp / "b.gslib", GridFormat::gslib_ascii);
  CHECK(read_file(tmp / "a.gslib") == read_file(tmp / "b.gslib"));

  save_grid(FaciesGrid(GridDims(2, 2, 2), facies::mud), tmp / "mud.u8", GridFormat::raw_u8);
  CHECK(read_file(tmp / "mud.u8") == std::string(8, '\0'));

  save_grid(RealGrid(GridDims(1, 1, 1), 1.0), tmp / "one.f32", GridFormat::raw_f32);
  CHECK(read_file(tmp / "one.f32") == std::string("\x00\x00\x80\x3f", 4));

  const FaciesGrid tiny(GridDims(1, 1, 2), std::vector<std::uint8_t>{1, 0});
  save_grid(tiny, tmp / "tiny.gslib", GridFormat::gslib_ascii);
  CHECK(read_file(tmp / "tiny.gslib") == "facinv grid 1 1 2\n1\nfacies\n1\n0\n");
  CHECK_FALSE(std::filesystem::exists(tmp / "tiny.gslib.tmp"));
}

TEST_CASE("grid load errors") {
  testutil::TempDir tmp("grid_err");
  const GridDims d(4, 4, 4);
  CHECK_THROWS_AS(load_facies_grid(tmp / "missing.u8", GridFormat::raw_u8, d), IoError);

  atomic_write(tmp / "short.u8", std::string(63, '\0'));
  CHECK_THROWS_AS(load_facies_grid(tmp / "short.u8", GridFormat::raw_u8, d), ShapeError);

  std::string bad(64, '\0');
  bad[10] = 7;
  atomic_write(tmp / "code.u8", bad);
  CHECK_THROWS_AS(load_facies_grid(tmp / "code.u8", GridFormat::raw_u8, d), FormatError);

  const float nan = std::nanf("");
  std::string f32(4, '\0');
  std::memcpy(f32.data(), &nan, 4);
  atomic_write(tmp / "nan.f32", f32);
  CHECK_THROWS_AS(load_real_grid(tmp / "nan.f32", GridFormat::raw_f32, GridDims(1, 1, 1)), FormatError);

  atomic_write(tmp / "bad.gslib", "title\n1\nv\n0\n1\nx\n");
  CHECK_THROWS_AS(load_real_grid(tmp / "bad.gslib", GridFormat::gslib_ascii, GridDims(3, 1, 1)),
                  FormatError);
  atomic_write(tmp / "two.gslib", "title\n2\na\nb\n0 1\n");
  CHECK_THROWS_AS(load_real_grid(tmp / "two.gslib", GridFormat::gslib_ascii, GridDims(1, 1, 1)),
                  FormatError);
  // GSLIB files written by other tools often use "1.000" for codes
  atomic_write(tmp / "float.gslib", "title\n1\nfacies\n1.000\n0.0\n");
  CHECK(load_facies_grid(tmp / "float.gslib", GridFormat::gslib_ascii, GridDims(2, 1, 1))[0] == 1);
  CHECK_THROWS_AS(parse_grid_format("segy"), DomainError);
}

TEST_CASE("bundled training image") {
  const GridDims d(120, 150, 180);
  const auto ti = load_facies_grid(testutil::data_dir() / "ti_channels_120x150x180.u8",
                                   GridFormat::raw_u8, d);
  const auto p = facies_proportions(ti);
  CHECK(std::abs(p.at(facies::channel) - 0.51) < 0.005);
  CHECK(std::abs(p.at(facies::mud) - 0.49) < 0.005);

  Rng rng(2024);
  const Index3 origin{rng.below(21), rng.below(51), rng.below(131)};
  const auto patch = extract_patch(ti, origin, {100, 100, 50});
  CHECK(patch.dims().nx == 100);
  CHECK(patch.dims().ny == 100);
  CHECK(patch.dims().nz == 50);
}

TEST_CASE("wells text format") {
  const WellSet w = parse_wells("# comment\nS1 3 4 0 1\nS1 3 4 1 0\n\nS2 0 0 5 1\n");
  REQUIRE(w.wells.size() == 2);
  CHECK(w.wells[0].observations.size() == 2);
  CHECK(w.observation_count() == 3);
  CHECK(parse_wells(format_wells(w)).wells.size() == 2);
  CHECK_NOTHROW(w.validate(GridDims(4, 5, 6)));
  CHECK_THROWS_AS(w.validate(GridDims(4, 5, 5)), DomainError);
  CHECK_THROWS_AS(w.validate(GridDims(3, 5, 6)), DomainError);
  CHECK_THROWS_AS(parse_wells("S1 3 4 0 1\nS1 3 4 0 0\n").validate(GridDims(5, 5, 5)), DomainError);
  CHECK_THROWS_AS(parse_wells("S1 3 4 0\n"), FormatError);
  CHECK_THROWS_AS(parse_wells("S1 3 4 0 1\nS1 2 4 1 1\n"), FormatError);
}

#include <filesystem>

#include "doctest.h"
#include "l1s/errors.hpp"
#include "l1s/serialize.hpp"

using namespace l1s;

TEST_CASE("expansion JSON round trip") {
  const auto f = random_unit_function(ClassSpec::wiener_mixed(1.0, 2), IndexSet::box(2, 3),
                                      std::nullopt, 21);
  const auto text = expansion_to_json(f);
  CHECK(expansion_from_json(text) == f);

  const auto g = random_unit_function(ClassSpec::poly_wiener(0.0, 1.0, 1.0), IndexSet::degrees(9),
                                      std::nullopt, 22);
  CHECK(expansion_from_json(expansion_to_json(g)) == g);

  CoefficientExpansion empty(SystemDescriptor::chebyshev());
  CHECK(expansion_from_json(expansion_to_json(empty)) == empty);
}

TEST_CASE("expansion JSON layout") {
  CoefficientExpansion f(SystemDescriptor::fourier(1));
  f.set(MultiIndex{-1}, {0.5, -0.25});
  f.set(MultiIndex{2}, {1.0, 0.0});
  const auto text = expansion_to_json(f);
  CHECK(text.find("\"system\"") < text.find("\"entries\""));
  CHECK(text.find("[[-1],0.5,-0.25]") != std::string::npos);
  CHECK(text.find("[[2],1.0,0.0]") != std::string::npos);

  const auto parsed = expansion_from_json(
      R"({"system": "fourier", "dim": 1, "entries": [[[3], 0.1, 0.2]]})");
  CHECK(parsed.get(MultiIndex{3}) == cplx(0.1, 0.2));
}

TEST_CASE("malformed expansion JSON") {
  CHECK_THROWS_AS(expansion_from_json("{"), InvalidArgument);
  CHECK_THROWS_AS(expansion_from_json(R"({"entries": []})"), InvalidArgument);
  CHECK_THROWS_AS(expansion_from_json(R"({"system": "fourier", "dim": 2, "entries": [[[1], 1, 0]]})"),
                  DimensionMismatch);
  CHECK_THROWS(expansion_from_json(R"({"system": "wavelet", "entries": []})"));
}

TEST_CASE("recovery result JSON") {
  RecoveryResult r;
  r.reconstruction = CoefficientExpansion(SystemDescriptor::fourier(1));
  r.reconstruction.set(MultiIndex{0}, 2.0);
  r.samples_used = 12;
  r.eta = 0.125;
  r.solver.iterations = 40;
  r.solver.certified = true;
  r.l2_error = 0.5;
  const auto text = recovery_result_to_json(r);
  CHECK(expansion_from_json(text) == r.reconstruction);
  CHECK(text.find("\"samples_used\": 12") != std::string::npos);
  CHECK(text.find("\"certified\":true") != std::string::npos);
  CHECK(text.find("\"l2_error\": 0.5") != std::string::npos);
}

TEST_CASE("text files") {
  const auto dir = std::filesystem::temp_directory_path() / "l1s_serialize_test";
  std::filesystem::create_directories(dir);
  const auto path = (dir / "a.txt").string();
  write_text_file(path, "abc\n");
  CHECK(read_text_file(path) == "abc\n");
  std::filesystem::remove_all(dir);
  CHECK_THROWS_AS(read_text_file(path), IoError);
  CHECK_THROWS_AS(write_text_file("/nonexistent-dir/y/a.txt", "x"), IoError);
}

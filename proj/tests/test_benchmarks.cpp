#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <string>
#include <vector>

#include "cro/benchmarks.hpp"
#include "support.hpp"

using namespace cro;
using namespace cro::bench;

namespace {

std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("cro_bench_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

// Straight from the definitions, no shared code with the library.
double ref_shifted_sphere(const std::vector<double>& x, const std::vector<double>& o) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += (x[i] - o[i]) * (x[i] - o[i]);
  return s;
}

double ref_griewank(const std::vector<double>& z) {
  double s = 0.0, p = 1.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    s += z[i] * z[i];
    p *= std::cos(z[i] / double(i + 1));
  }
  return s / 4000.0 - p + 1.0;
}

// |det| via Gaussian elimination with partial pivoting.
double abs_determinant(std::vector<double> a, std::size_t n) {
  double det = 1.0;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(a[r * n + c]) > std::abs(a[piv * n + c])) piv = r;
    if (a[piv * n + c] == 0.0) return 0.0;
    if (piv != c)
      for (std::size_t k = 0; k < n; ++k) std::swap(a[c * n + k], a[piv * n + k]);
    det *= a[c * n + c];
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = a[r * n + c] / a[c * n + c];
      for (std::size_t k = c; k < n; ++k) a[r * n + k] -= f * a[c * n + k];
    }
  }
  return std::abs(det);
}

}  // namespace

TEST_CASE("function table") {
  CHECK(function_info(1).base == BaseFunction::Sphere);
  CHECK(function_info(13).shifted == false);
  CHECK(function_info(14).rotated == true);
  CHECK(function_info(15).scale == 0.0512);
  CHECK_THROWS_AS(function_info(0), std::out_of_range);
  CHECK_THROWS_AS(function_info(25), std::out_of_range);
  CHECK(function_tag(7) == "f7");
  CHECK(parse_function_tag("F12") == 12);
  CHECK(parse_function_tag("24") == 24);
  CHECK(parse_function_tag("f25") == 0);
  CHECK(parse_function_tag("sphere") == 0);
}

TEST_CASE("sphere basics") {
  const BenchmarkInstance f1(generate_transform(7, 1, 30));
  CHECK(f1.evaluate(f1.transform().shift) == 0.0);
  CHECK(evaluate_base(BaseFunction::Sphere, std::vector<double>(30, 1.0)) == 30.0);
}

TEST_CASE("f1 agrees with an independent evaluator") {
  const BenchmarkInstance f1(generate_transform(2015, 1, 30));
  Rng rng(1);
  for (int k = 0; k < 100; ++k) {
    const auto x = testing_support::random_point(rng, 30, -100.0, 100.0);
    const double want = ref_shifted_sphere(x, f1.transform().shift);
    REQUIRE(f1.evaluate(x) == doctest::Approx(want).epsilon(1e-12));
  }
}

TEST_CASE("f17 agrees with an independent Griewank") {
  const BenchmarkInstance f17(generate_transform(2015, 17, 10));
  Rng rng(2);
  for (int k = 0; k < 100; ++k) {
    const auto x = testing_support::random_point(rng, 10, -100.0, 100.0);
    std::vector<double> z(10);
    for (std::size_t i = 0; i < 10; ++i) z[i] = (x[i] - f17.transform().shift[i]) * 6.0;
    REQUIRE(f17.evaluate(x) == doctest::Approx(ref_griewank(z)).epsilon(1e-12));
  }
}

TEST_CASE("penalty term") {
  CHECK(penalty_u(6, 5, 100, 4) == 100.0);
  CHECK(penalty_u(3, 5, 100, 4) == 0.0);
  CHECK(penalty_u(-7, 5, 100, 4) == 1600.0);
  CHECK(penalty_u(5, 5, 100, 4) == 0.0);
  CHECK(penalty_u(-5, 5, 100, 4) == 0.0);
}

TEST_CASE("Schwefel 2.26 near its known optimum") {
  const BenchmarkInstance f13(generate_transform(2015, 13, 30));
  CHECK(f13.evaluate(std::vector<double>(30, 84.19374)) < 1e-3);
  CHECK(std::abs(f13.evaluate(f13.constructed_optimum())) < 1e-6);
}

TEST_CASE("Rastrigin unit vector") {
  const BenchmarkInstance f15(generate_transform(2015, 15, 30));
  const auto& o = f15.transform().shift;
  CHECK(f15.evaluate(o) == 0.0);
  auto x = o;
  x[0] += 1.0 / 0.0512;
  CHECK(f15.evaluate(x) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(evaluate_base(BaseFunction::Rastrigin, std::vector<double>{1.0, 0.0, 0.0}) ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("every instance vanishes at its constructed optimum") {
  for (std::size_t dim : {2u, 10u, 30u}) {
    for (int id = 1; id <= kFunctionCount; ++id) {
      CAPTURE(id);
      CAPTURE(dim);
      const BenchmarkInstance inst(generate_transform(2015, id, dim));
      const double v = inst.evaluate(inst.constructed_optimum());
      CHECK(std::abs(v) < 1e-6);
    }
  }
}

TEST_CASE("generated rotations are orthogonal") {
  for (int id : {3, 5, 9, 14, 16, 24}) {
    for (std::size_t d : {2u, 10u, 30u}) {
      const TransformData t = generate_transform(2015, id, d);
      for (std::size_t a = 0; a < d; ++a) {
        for (std::size_t b = 0; b < d; ++b) {
          double dot = 0.0;
          for (std::size_t k = 0; k < d; ++k) dot += t.rotation[k * d + a] * t.rotation[k * d + b];
          REQUIRE(std::abs(dot - (a == b ? 1.0 : 0.0)) < 1e-10);
        }
      }
      CHECK(std::abs(abs_determinant(t.rotation, d) - 1.0) < 1e-8);
    }
  }
}

TEST_CASE("unrotated functions use the identity") {
  const TransformData t = generate_transform(2015, 1, 4);
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) CHECK(t.rotation[r * 4 + c] == (r == c ? 1.0 : 0.0));
  const TransformData s = generate_transform(2015, 13, 4);
  CHECK(s.shift == std::vector<double>(4, 0.0));
}

TEST_CASE("shift vectors stay inside the envelope") {
  for (int id = 1; id <= kFunctionCount; ++id) {
    for (double v : generate_transform(31, id, 30).shift) {
      REQUIRE(v >= -kShiftEnvelope);
      REQUIRE(v <= kShiftEnvelope);
    }
  }
}

TEST_CASE("transform generation is deterministic") {
  CHECK(generate_transform(5, 16, 30) == generate_transform(5, 16, 30));
  CHECK_FALSE(generate_transform(5, 16, 30) == generate_transform(6, 16, 30));
  CHECK_FALSE(generate_transform(5, 16, 30).shift == generate_transform(5, 15, 30).shift);
}

TEST_CASE("transform files round-trip") {
  const auto dir = scratch_dir("roundtrip");
  for (int id : {1, 14, 24}) {
    const TransformData t = generate_transform(77, id, 12);
    const auto path = dir / (function_tag(id) + ".txt");
    save_transform(path, t);
    CHECK(load_transform(path) == t);
  }
}

TEST_CASE("damaged transform files are rejected") {
  const auto dir = scratch_dir("damaged");
  const TransformData t = generate_transform(77, 3, 5);
  const auto path = dir / "f3.txt";
  save_transform(path, t);
  std::string text;
  {
    std::ifstream in(path);
    text.assign(std::istreambuf_iterator<char>(in), {});
  }

  SUBCASE("truncated") {
    std::ofstream(dir / "cut.txt") << text.substr(0, text.size() / 2);
    CHECK_THROWS_AS(load_transform(dir / "cut.txt"), FormatError);
  }
  SUBCASE("corrupted number") {
    auto bad = text;
    const auto first_digit = bad.find_first_of("123456789", bad.find('\n') + 1);
    bad[first_digit] = bad[first_digit] == '9' ? '8' : static_cast<char>(bad[first_digit] + 1);
    std::ofstream(dir / "bad.txt") << bad;
    CHECK_THROWS_AS(load_transform(dir / "bad.txt"), ChecksumMismatch);
  }
  SUBCASE("garbage token") {
    auto bad = text;
    bad.insert(bad.find('\n') + 1, "x");
    std::ofstream(dir / "junk.txt") << bad;
    CHECK_THROWS_AS(load_transform(dir / "junk.txt"), FormatError);
  }
  SUBCASE("empty") {
    std::ofstream(dir / "empty.txt") << "";
    CHECK_THROWS_AS(load_transform(dir / "empty.txt"), FormatError);
  }
  SUBCASE("missing") {
    CHECK_THROWS_AS(load_transform(dir / "nope.txt"), IoError);
  }
}

TEST_CASE("CEC-style shift file") {
  const auto dir = scratch_dir("cec");
  {
    std::ofstream out(dir / "f1_shift.txt");
    // two lines, mixed spacing and exponent notation
    for (int i = 0; i < 30; ++i) out << (i % 2 ? "  " : " ") << -40.0 + 2.5 * i << (i == 14 ? "\n" : "");
    out << "\n";
  }
  const auto values = read_cec_values(dir / "f1_shift.txt", 30);
  REQUIRE(values.size() == 30);
  CHECK(values[0] == -40.0);
  CHECK(values[29] == 32.5);
  CHECK_THROWS_AS(read_cec_values(dir / "f1_shift.txt", 31), FormatError);

  const TransformData t = import_cec_transform(dir, 1, 30, 2015);
  CHECK(t.shift == values);
  const BenchmarkInstance f1(t);
  CHECK(f1.evaluate(values) == 0.0);

  // missing rotation file falls back to the generated matrix
  CHECK(import_cec_transform(dir, 3, 30, 2015).rotation == generate_transform(2015, 3, 30).rotation);

  {
    std::ofstream out(dir / "f3_M_D2.txt");
    out << "1 1\n0 1\n";
  }
  CHECK_THROWS_AS(import_cec_transform(dir, 3, 2, 2015), FormatError);
}

TEST_CASE("evaluation rejects the wrong dimension") {
  const BenchmarkInstance f2(generate_transform(1, 2, 5));
  CHECK_THROWS_AS(f2.evaluate(std::vector<double>(4, 0.0)), DimensionMismatch);
  const auto spec = f2.objective();
  CHECK(spec.dimension == 5);
  CHECK_NOTHROW(spec.validate());
}

TEST_CASE("all functions are finite over the box") {
  Rng rng(3);
  for (int id = 1; id <= kFunctionCount; ++id) {
    const BenchmarkInstance inst(generate_transform(2015, id, 30));
    for (int k = 0; k < 10000; ++k) {
      const auto x = testing_support::random_point(rng, 30, kLower, kUpper);
      REQUIRE(std::isfinite(inst.evaluate(x)));
    }
    // corners as well
    REQUIRE(std::isfinite(inst.evaluate(std::vector<double>(30, kUpper))));
    REQUIRE(std::isfinite(inst.evaluate(std::vector<double>(30, kLower))));
  }
}

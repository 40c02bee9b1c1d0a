#include "cro/benchmarks.hpp"

#include <zlib.h>

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <memory>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

namespace cro::bench {

namespace {

using B = BaseFunction;

// id, base, shifted, rotated, scale, name
constexpr std::array<FunctionInfo, kFunctionCount> kFunctions = {{
    {1, B::Sphere, true, false, 1.0, "Shifted Sphere"},
    {2, B::Schwefel1_2, true, false, 1.0, "Shifted Schwefel 1.2"},
    {3, B::Schwefel1_2, true, true, 1.0, "Shifted Rotated Schwefel 1.2"},
    {4, B::Schwefel2_21, true, false, 1.0, "Shifted Schwefel 2.21"},
    {5, B::Schwefel2_21, true, true, 1.0, "Shifted Rotated Schwefel 2.21"},
    {6, B::Schwefel2_22, true, false, 0.1, "Shifted Schwefel 2.22"},
    {7, B::Schwefel2_22, true, true, 0.1, "Shifted Rotated Schwefel 2.22"},
    {8, B::Rosenbrock, true, false, 0.3, "Shifted Rosenbrock"},
    {9, B::Rosenbrock, true, true, 0.3, "Shifted Rotated Rosenbrock"},
    {10, B::Discus, true, false, 1.0, "Shifted Discus"},
    {11, B::Ackley, true, false, 0.32, "Shifted Ackley"},
    {12, B::Ackley, true, true, 0.32, "Shifted Rotated Ackley"},
    {13, B::Schwefel2_26, false, false, 5.0, "Schwefel 2.26"},
    {14, B::Schwefel2_26, false, true, 5.0, "Rotated Schwefel 2.26"},
    {15, B::Rastrigin, true, false, 0.0512, "Shifted Rastrigin"},
    {16, B::Rastrigin, true, true, 0.0512, "Shifted Rotated Rastrigin"},
    {17, B::Griewank, true, false, 6.0, "Shifted Griewank"},
    {18, B::Griewank, true, true, 6.0, "Shifted Rotated Griewank"},
    {19, B::Levy, true, false, 0.1, "Shifted Levy"},
    {20, B::Levy, true, true, 0.1, "Shifted Rotated Levy"},
    {21, B::Penalized1, true, false, 0.5, "Shifted Penalized 1"},
    {22, B::Penalized1, true, true, 0.5, "Shifted Rotated Penalized 1"},
    {23, B::Penalized2, true, false, 0.5, "Shifted Penalized 2"},
    {24, B::Penalized2, true, true, 0.5, "Shifted Rotated Penalized 2"},
}};

constexpr double kPi = std::numbers::pi;
constexpr double kSchwefel226Argmin = 420.9687463599821;
// z* sin(sqrt(z*)) ~ 418.98288727; the rounded 418.9829 would leave a
// 1.27e-5 floor per dimension.
const double kSchwefel226Offset = kSchwefel226Argmin * std::sin(std::sqrt(kSchwefel226Argmin));

double sq(double x) { return x * x; }

double sin_sq(double x) { return sq(std::sin(x)); }

// y_i = 1 + (z_i + 1) / 4
double levy_y(double z) { return 1.0 + (z + 1.0) / 4.0; }

double sum_u(std::span<const double> z, double a) {
  double s = 0.0;
  for (double v : z) s += penalty_u(v, a, 100.0, 4.0);
  return s;
}

std::vector<double> identity(std::size_t d) {
  std::vector<double> m(d * d, 0.0);
  for (std::size_t i = 0; i < d; ++i) m[i * d + i] = 1.0;
  return m;
}

// Rows of a D x D standard Gaussian matrix, orthonormalized by modified
// Gram-Schmidt with one re-orthogonalization pass.
std::vector<double> random_rotation(std::size_t d, std::mt19937_64& engine) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> m(d * d);
  for (auto& v : m) v = gauss(engine);
  for (std::size_t r = 0; r < d; ++r) {
    double* row = &m[r * d];
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t p = 0; p < r; ++p) {
        const double* prev = &m[p * d];
        double dot = 0.0;
        for (std::size_t c = 0; c < d; ++c) dot += row[c] * prev[c];
        for (std::size_t c = 0; c < d; ++c) row[c] -= dot * prev[c];
      }
    }
    double norm = 0.0;
    for (std::size_t c = 0; c < d; ++c) norm += row[c] * row[c];
    norm = std::sqrt(norm);
    for (std::size_t c = 0; c < d; ++c) row[c] /= norm;
  }
  return m;
}

void append_number(std::string& out, double v) {
  std::array<char, 32> buf;
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  out.append(buf.data(), res.ptr);
}

void append_row(std::string& out, std::span<const double> values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out.push_back(' ');
    append_number(out, values[i]);
  }
  out.push_back('\n');
}

std::string canonical_payload(const TransformData& data) {
  std::string out;
  const std::size_t d = data.dimension();
  append_row(out, data.shift);
  for (std::size_t r = 0; r < d; ++r)
    append_row(out, std::span<const double>(data.rotation).subspan(r * d, d));
  return out;
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

template <typename T>
T parse_number(std::string_view token, const std::string& where) {
  T value{};
  const auto* end = token.data() + token.size();
  const auto res = std::from_chars(token.data(), end, value);
  if (res.ec != std::errc{} || res.ptr != end)
    throw FormatError(where + ": cannot parse '" + std::string(token) + "'");
  return value;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("read failed for " + path.string());
  return ss.str();
}

}  // namespace

const FunctionInfo& function_info(int id) {
  if (id < 1 || id > kFunctionCount)
    throw std::out_of_range("benchmark id " + std::to_string(id) + " outside f1..f24");
  return kFunctions[static_cast<std::size_t>(id - 1)];
}

std::string function_tag(int id) { return "f" + std::to_string(id); }

int parse_function_tag(std::string_view tag) {
  if (!tag.empty() && (tag.front() == 'f' || tag.front() == 'F')) tag.remove_prefix(1);
  int id = 0;
  const auto res = std::from_chars(tag.data(), tag.data() + tag.size(), id);
  if (res.ec != std::errc{} || res.ptr != tag.data() + tag.size()) return 0;
  return id >= 1 && id <= kFunctionCount ? id : 0;
}

double penalty_u(double x, double a, double k, double m) {
  if (x > a) return k * std::pow(x - a, m);
  if (x < -a) return k * std::pow(-x - a, m);
  return 0.0;
}

double evaluate_base(BaseFunction base, std::span<const double> z) {
  const std::size_t n = z.size();
  const double dn = static_cast<double>(n);
  double s = 0.0;
  switch (base) {
    case B::Sphere:
      for (double v : z) s += v * v;
      return s;
    case B::Schwefel1_2: {
      double prefix = 0.0;
      for (double v : z) {
        prefix += v;
        s += prefix * prefix;
      }
      return s;
    }
    case B::Schwefel2_21:
      for (double v : z) s = std::max(s, std::abs(v));
      return s;
    case B::Schwefel2_22: {
      double prod = 1.0;
      for (double v : z) {
        s += std::abs(v);
        prod *= std::abs(v);
      }
      return s + prod;
    }
    case B::Rosenbrock:
      for (std::size_t i = 0; i + 1 < n; ++i)
        s += 100.0 * sq(z[i] * z[i] - z[i + 1]) + sq(z[i] - 1.0);
      return s;
    case B::Discus:
      for (std::size_t i = 1; i < n; ++i) s += z[i] * z[i];
      return 1e6 * z[0] * z[0] + s;
    case B::Ackley: {
      double cs = 0.0;
      for (double v : z) {
        s += v * v;
        cs += std::cos(2.0 * kPi * v);
      }
      return -20.0 * std::exp(-0.2 * std::sqrt(s / dn)) - std::exp(cs / dn) + 20.0 +
             std::numbers::e;
    }
    case B::Schwefel2_26:
      for (double v : z) s += v * std::sin(std::sqrt(std::abs(v)));
      return kSchwefel226Offset * dn - s;
    case B::Rastrigin:
      for (double v : z) s += v * v - 10.0 * std::cos(2.0 * kPi * v) + 10.0;
      return s;
    case B::Griewank: {
      double prod = 1.0;
      for (std::size_t i = 0; i < n; ++i) {
        s += z[i] * z[i] / 4000.0;
        prod *= std::cos(z[i] / static_cast<double>(i + 1));
      }
      return s - prod + 1.0;
    }
    case B::Levy: {
      const double y1 = levy_y(z[0]);
      const double yn = levy_y(z[n - 1]);
      s = sin_sq(kPi * y1);
      for (std::size_t i = 0; i + 1 < n; ++i)
        s += sq(levy_y(z[i]) - 1.0) * (1.0 + 10.0 * sin_sq(levy_y(z[i + 1])));
      return s + sq(yn - 1.0) * (1.0 + sin_sq(2.0 * kPi * yn));
    }
    case B::Penalized1: {
      s = sin_sq(3.0 * kPi * z[0]);
      for (std::size_t i = 0; i + 1 < n; ++i)
        s += sq(z[i] - 1.0) * (1.0 + sin_sq(3.0 * kPi * z[i + 1]));
      s += sq(z[n - 1] - 1.0) * (1.0 + sin_sq(2.0 * kPi * z[n - 1]));
      return 0.1 * s + sum_u(z, 5.0);
    }
    case B::Penalized2: {
      s = 10.0 * sin_sq(kPi * levy_y(z[0]));
      for (std::size_t i = 0; i + 1 < n; ++i)
        s += sq(levy_y(z[i]) - 1.0) * (1.0 + 10.0 * sin_sq(kPi * levy_y(z[i + 1])));
      s += sq(levy_y(z[n - 1]) - 1.0);
      return kPi / dn * s + sum_u(z, 10.0);
    }
  }
  throw std::logic_error("unknown base function");
}

double base_optimum_coordinate(BaseFunction base) {
  switch (base) {
    case B::Rosenbrock:
    case B::Penalized1: return 1.0;
    case B::Levy:
    case B::Penalized2: return -1.0;
    case B::Schwefel2_26: return kSchwefel226Argmin;
    default: return 0.0;
  }
}

TransformData generate_transform(std::uint64_t base_seed, int id, std::size_t dimension) {
  const FunctionInfo& info = function_info(id);
  std::seed_seq seq{static_cast<std::uint32_t>(base_seed), static_cast<std::uint32_t>(base_seed >> 32),
                    static_cast<std::uint32_t>(id), static_cast<std::uint32_t>(dimension)};
  std::mt19937_64 engine(seq);

  TransformData data;
  data.id = id;
  data.scale = info.scale;
  data.seed = base_seed;
  data.shift.assign(dimension, 0.0);
  if (info.shifted) {
    std::uniform_real_distribution<double> u(-kShiftEnvelope, kShiftEnvelope);
    for (auto& v : data.shift) v = u(engine);
  }
  data.rotation = info.rotated ? random_rotation(dimension, engine) : identity(dimension);
  return data;
}

std::uint32_t payload_checksum(const TransformData& data) {
  const std::string payload = canonical_payload(data);
  return static_cast<std::uint32_t>(
      crc32(0L, reinterpret_cast<const Bytef*>(payload.data()), static_cast<uInt>(payload.size())));
}

void save_transform(const std::filesystem::path& path, const TransformData& data) {
  if (data.rotation.size() != data.dimension() * data.dimension())
    throw DimensionMismatch("rotation is not D x D");
  std::string text = function_tag(data.id) + " " + std::to_string(data.dimension()) + " " +
                     std::to_string(data.seed) + "\n";
  text += canonical_payload(data);
  text += std::to_string(payload_checksum(data)) + "\n";

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw IoError("write failed for " + path.string());
}

TransformData load_transform(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  const std::string where = path.string();
  std::vector<std::string_view> lines;
  {
    std::string_view rest(text);
    while (!rest.empty()) {
      const auto nl = rest.find('\n');
      lines.push_back(rest.substr(0, nl));
      if (nl == std::string_view::npos) break;
      rest.remove_prefix(nl + 1);
    }
  }
  while (!lines.empty() && split_ws(lines.back()).empty()) lines.pop_back();
  if (lines.empty()) throw FormatError(where + ": empty file");

  const auto header = split_ws(lines[0]);
  if (header.size() != 3) throw FormatError(where + ": header must be 'id D seed'");
  TransformData data;
  data.id = parse_function_tag(header[0]);
  if (data.id == 0) throw FormatError(where + ": unknown function '" + std::string(header[0]) + "'");
  const auto d = parse_number<std::size_t>(header[1], where);
  if (d == 0) throw FormatError(where + ": dimension must be positive");
  data.seed = parse_number<std::uint64_t>(header[2], where);
  data.scale = function_info(data.id).scale;

  if (lines.size() != d + 3)
    throw FormatError(where + ": expected " + std::to_string(d + 3) + " lines, found " +
                      std::to_string(lines.size()));
  auto read_row = [&](std::size_t line_no, std::vector<double>& into) {
    const auto tokens = split_ws(lines[line_no]);
    if (tokens.size() != d)
      throw FormatError(where + ": line " + std::to_string(line_no + 1) + " has " +
                        std::to_string(tokens.size()) + " values, expected " + std::to_string(d));
    for (auto t : tokens) into.push_back(parse_number<double>(t, where));
  };
  data.shift.reserve(d);
  read_row(1, data.shift);
  data.rotation.reserve(d * d);
  for (std::size_t r = 0; r < d; ++r) read_row(2 + r, data.rotation);

  const auto crc_tokens = split_ws(lines[d + 2]);
  if (crc_tokens.size() != 1) throw FormatError(where + ": missing checksum line");
  const auto stored = parse_number<std::uint32_t>(crc_tokens[0], where);
  if (stored != payload_checksum(data))
    throw ChecksumMismatch(where + ": checksum " + std::to_string(stored) + " does not match payload");
  return data;
}

std::vector<double> read_cec_values(const std::filesystem::path& path, std::size_t count) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<double> out;
  out.reserve(count);
  std::string token;
  while (out.size() < count && in >> token)
    out.push_back(parse_number<double>(token, path.string()));
  if (out.size() < count)
    throw FormatError(path.string() + ": expected " + std::to_string(count) + " values, found " +
                      std::to_string(out.size()));
  return out;
}

TransformData import_cec_transform(const std::filesystem::path& dir, int id,
                                   std::size_t dimension, std::uint64_t fallback_seed) {
  const FunctionInfo& info = function_info(id);
  TransformData data = generate_transform(fallback_seed, id, dimension);
  const auto tag = function_tag(id);
  const auto shift_path = dir / (tag + "_shift.txt");
  const auto rot_path = dir / (tag + "_M_D" + std::to_string(dimension) + ".txt");
  if (info.shifted && std::filesystem::exists(shift_path))
    data.shift = read_cec_values(shift_path, dimension);
  if (info.rotated && std::filesystem::exists(rot_path)) {
    data.rotation = read_cec_values(rot_path, dimension * dimension);
    for (std::size_t a = 0; a < dimension; ++a) {
      for (std::size_t b = 0; b < dimension; ++b) {
        double dot = 0.0;
        for (std::size_t k = 0; k < dimension; ++k)
          dot += data.rotation[k * dimension + a] * data.rotation[k * dimension + b];
        if (std::abs(dot - (a == b ? 1.0 : 0.0)) > 1e-6)
          throw FormatError(rot_path.string() + ": matrix is not orthogonal");
      }
    }
  }
  return data;
}

BenchmarkInstance::BenchmarkInstance(TransformData data)
    : data_(std::move(data)), info_(&function_info(data_.id)) {
  const std::size_t d = data_.dimension();
  if (d == 0) throw DimensionMismatch("benchmark dimension must be positive");
  if (data_.rotation.size() != d * d) throw DimensionMismatch("rotation is not D x D");
}

std::vector<double> BenchmarkInstance::transform_point(std::span<const double> x) const {
  const std::size_t d = dimension();
  if (x.size() != d)
    throw DimensionMismatch(function_tag(data_.id) + " expects " + std::to_string(d) +
                            " coordinates, got " + std::to_string(x.size()));
  std::vector<double> diff(d);
  for (std::size_t i = 0; i < d; ++i) diff[i] = x[i] - data_.shift[i];
  if (!info_->rotated) {
    for (auto& v : diff) v *= data_.scale;
    return diff;
  }
  std::vector<double> z(d, 0.0);
  for (std::size_t r = 0; r < d; ++r) {
    const double* row = &data_.rotation[r * d];
    double acc = 0.0;
    for (std::size_t c = 0; c < d; ++c) acc += row[c] * diff[c];
    z[r] = acc * data_.scale;
  }
  return z;
}

double BenchmarkInstance::evaluate(std::span<const double> x) const {
  const auto z = transform_point(x);
  return evaluate_base(info_->base, z);
}

Solution BenchmarkInstance::constructed_optimum() const {
  const std::size_t d = dimension();
  const double target = base_optimum_coordinate(info_->base) / data_.scale;
  Solution x(d);
  for (std::size_t c = 0; c < d; ++c) {
    double acc = target;
    if (info_->rotated) {
      // x - o = M^T z* / scale
      acc = 0.0;
      for (std::size_t r = 0; r < d; ++r) acc += data_.rotation[r * d + c] * target;
    }
    x[c] = data_.shift[c] + acc;
  }
  return x;
}

ObjectiveSpec BenchmarkInstance::objective() const {
  auto shared = std::make_shared<const BenchmarkInstance>(*this);
  ObjectiveSpec spec;
  spec.dimension = dimension();
  spec.bounds = bounds();
  spec.evaluate = [shared](std::span<const double> x) { return shared->evaluate(x); };
  return spec;
}

}  // namespace cro::bench

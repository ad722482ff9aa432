#include "ktu/samples.hpp"

#include <cmath>

#include "ktu/errors.hpp"
#include "ktu/rng.hpp"

namespace ktu::mc {

double CoordLaw::variance() const {
  switch (kind) {
    case Kind::uniform:
      return 1.0 / 12.0;
    case Kind::two_point:
    case Kind::centered_uniform:
      return sigma * sigma;
  }
  return 0.0;
}

CubeSpec CubeSpec::uniform(int n) {
  CubeSpec s;
  s.laws.assign(static_cast<std::size_t>(n), CoordLaw{});
  return s;
}

CubeSpec CubeSpec::two_point(int n, double sigma) {
  CubeSpec s;
  s.laws.assign(static_cast<std::size_t>(n),
                CoordLaw{CoordLaw::Kind::two_point, sigma});
  return s;
}

void CubeSpec::validate(int n) const {
  if (static_cast<int>(laws.size()) != n)
    throw ConstraintError("cube spec: one coordinate law per dimension required");
  for (const CoordLaw& law : laws) {
    const double v = law.variance();
    if (!(v > 0.0))
      throw ConstraintError("cube spec: coordinate variance must be positive");
    if (v > 0.25)
      throw ConstraintError(
          "cube spec: variance exceeds the 1/4 maximum for [0,1] support");
    if (law.kind == CoordLaw::Kind::centered_uniform && v > 1.0 / 12.0)
      throw ConstraintError(
          "cube spec: centered uniform law cannot exceed variance 1/12");
  }
}

SampleSet sample_ball(int n, int count, std::uint64_t seed) {
  if (n < 1) throw ConstraintError("sample_ball: n >= 1 required");
  if (count < 0) throw ConstraintError("sample_ball: count >= 0 required");
  Rng rng(seed);
  SampleSet out;
  out.points.resize(count, n);
  out.dist = Dist::ball;
  out.seed = seed;
  Eigen::VectorXd g(n);
  for (int r = 0; r < count; ++r) {
    double norm2 = 0.0;
    for (int j = 0; j < n; ++j) {
      const double z = rng.normal();
      g[j] = z;
      norm2 += z * z;
    }
    const double u = rng.uniform01_open_low();
    const double radius = std::pow(u, 1.0 / static_cast<double>(n));
    const double scale = radius / std::sqrt(norm2);
    out.points.row(r) = (g * scale).transpose();
  }
  return out;
}

SampleSet sample_cube(int n, int count, const CubeSpec& spec, std::uint64_t seed) {
  if (n < 1) throw ConstraintError("sample_cube: n >= 1 required");
  if (count < 0) throw ConstraintError("sample_cube: count >= 0 required");
  spec.validate(n);
  Rng rng(seed);
  SampleSet out;
  out.points.resize(count, n);
  out.dist = Dist::cube;
  out.seed = seed;
  for (int r = 0; r < count; ++r) {
    for (int j = 0; j < n; ++j) {
      const CoordLaw& law = spec.laws[static_cast<std::size_t>(j)];
      const double u = rng.uniform01();
      double x = 0.0;
      switch (law.kind) {
        case CoordLaw::Kind::uniform:
          x = u;
          break;
        case CoordLaw::Kind::two_point:
          x = (u < 0.5) ? 0.5 - law.sigma : 0.5 + law.sigma;
          break;
        case CoordLaw::Kind::centered_uniform: {
          const double width = law.sigma * std::sqrt(12.0);
          x = 0.5 + (u - 0.5) * width;
          break;
        }
      }
      out.points(r, j) = x;
    }
  }
  return out;
}

}  // namespace ktu::mc

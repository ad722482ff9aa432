#ifndef KTU_SAMPLES_HPP
#define KTU_SAMPLES_HPP

#include <cstdint>
#include <vector>

#include <Eigen/Core>

namespace ktu::mc {

enum class Dist { ball, cube };

/// A seeded i.i.d. sample; one point per row.
struct SampleSet {
  Eigen::MatrixXd points;
  Dist dist = Dist::ball;
  std::uint64_t seed = 0;

  Eigen::Index count() const { return points.rows(); }
  Eigen::Index dim() const { return points.cols(); }
};

/// Per-coordinate law for product distributions supported in [0, 1].
struct CoordLaw {
  enum class Kind { uniform, two_point, centered_uniform };
  Kind kind = Kind::uniform;
  double sigma = 0.0;  // target standard deviation for the non-uniform kinds

  double variance() const;
};

struct CubeSpec {
  std::vector<CoordLaw> laws;  // one per coordinate

  static CubeSpec uniform(int n);
  static CubeSpec two_point(int n, double sigma);
  void validate(int n) const;  // throws ConstraintError on infeasible variances
};

/// Uniform sample from the closed unit ball B_n(1): isotropic direction
/// scaled by U^{1/n}. Exact (no rejection), deterministic per seed.
SampleSet sample_ball(int n, int count, std::uint64_t seed);

/// Product-law sample in the unit cube; rejects variance specs above the
/// 1/4 ceiling for [0, 1]-supported laws.
SampleSet sample_cube(int n, int count, const CubeSpec& spec, std::uint64_t seed);

}  // namespace ktu::mc

#endif

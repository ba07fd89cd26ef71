#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <vector>

namespace gctop {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Genus-graded dimensions; dims[g] for g = 0..max_genus.
struct GradedDims {
  std::vector<BigInt> dims;
  int max_genus() const { return static_cast<int>(dims.size()) - 1; }
};

/// Dimensions of the graded pieces of the free Lie algebra with one
/// generator in every odd genus >= 3, by Moebius inversion of
/// -log(1 - f(t)), f(t) = t^3 + t^5 + t^7 + ...
GradedDims witt_dims(int max_genus);

struct GrowthEstimate {
  int genus = 0;
  double root = 0.0;             // dim_g^(1/g) at the maximal genus
  double normalized_root = 0.0;  // (g * dim_g)^(1/g), removes the 1/g factor
  std::vector<double> ratios;    // dim_g / dim_(g-1) for the trailing genera
};

// Real root of t^3 - t - 1 (the plastic number).
double plastic_number();

/// Requires dims through genus >= 30 with a nonzero top entry.
GrowthEstimate growth_ratio(const GradedDims& dims, int trailing = 10);

/// Bernoulli numbers B_0..B_m (B_1 = -1/2) from
/// sum_{j=0}^{m} C(m+1, j) B_j = 0.
std::vector<Rational> bernoulli_numbers(int m);

/// Orbifold Euler characteristic of Mod_{g,1}: zeta(1-2g) = -B_{2g} / (2g).
Rational chi_orb_mod_g1(int genus);

/// Dimension of H^k_c(CV_2, V_{a,b}); nonzero only for k = 3.
long cv2_local_system_dim(long a, long b, int degree);

}  // namespace gctop

#include "gctop/formulas.hpp"

#include <cmath>
#include <string>

#include "gctop/errors.hpp"

namespace gctop {

namespace {

int moebius(int n) {
  int result = 1;
  for (int q = 2; q * q <= n; ++q) {
    if (n % q) continue;
    n /= q;
    if (n % q == 0) return 0;
    result = -result;
  }
  if (n > 1) result = -result;
  return result;
}

double log_of(const BigInt& x) {
  // Keep the top bits for the mantissa so huge values do not overflow double.
  const unsigned bits = boost::multiprecision::msb(x) + 1;
  if (bits <= 60) return std::log(x.convert_to<double>());
  const unsigned shift = bits - 60;
  const BigInt top = x >> shift;
  return std::log(top.convert_to<double>()) + shift * std::log(2.0);
}

}  // namespace

GradedDims witt_dims(int max_genus) {
  if (max_genus < 3) throw PreconditionError("witt_dims needs max_genus >= 3");
  const int n = max_genus;
  // f = t^3 + t^5 + ...; c_m = [t^m] t f'(t) / (1 - f(t)) = m * [t^m](-log(1-f)).
  std::vector<BigInt> f(n + 1, 0), inv(n + 1, 0), c(n + 1, 0);
  for (int k = 3; k <= n; k += 2) f[k] = 1;
  inv[0] = 1;  // 1 / (1 - f)
  for (int m = 1; m <= n; ++m) {
    for (int j = 3; j <= m; j += 2) inv[m] += inv[m - j];
  }
  for (int m = 1; m <= n; ++m) {
    for (int j = 3; j <= m; j += 2) c[m] += BigInt(j) * inv[m - j];
  }
  GradedDims out;
  out.dims.assign(n + 1, 0);
  for (int g = 1; g <= n; ++g) {
    BigInt acc = 0;
    for (int d = 1; d <= g; ++d) {
      if (g % d == 0) acc += moebius(g / d) * c[d];
    }
    if (acc % g != 0) throw IntegrityError("Witt sum not divisible by genus");
    out.dims[g] = acc / g;
  }
  return out;
}

double plastic_number() {
  // Newton iteration on t^3 - t - 1 from the right of the root.
  double t = 1.5;
  for (int i = 0; i < 60; ++i) t -= (t * t * t - t - 1) / (3 * t * t - 1);
  return t;
}

GrowthEstimate growth_ratio(const GradedDims& dims, int trailing) {
  const int g = dims.max_genus();
  if (g < 30) {
    throw PreconditionError("growth estimate needs dimensions through genus 30, got " +
                            std::to_string(g));
  }
  if (dims.dims[g] <= 0) {
    throw PreconditionError("growth estimate needs a nonzero top dimension");
  }
  GrowthEstimate est;
  est.genus = g;
  const double log_dim = log_of(dims.dims[g]);
  est.root = std::exp(log_dim / g);
  est.normalized_root = std::exp((log_dim + std::log(static_cast<double>(g))) / g);
  for (int h = std::max(1, g - trailing + 1); h <= g; ++h) {
    if (dims.dims[h - 1] > 0 && dims.dims[h] > 0) {
      est.ratios.push_back(std::exp(log_of(dims.dims[h]) - log_of(dims.dims[h - 1])));
    }
  }
  return est;
}

std::vector<Rational> bernoulli_numbers(int m) {
  if (m < 0) throw InvalidArgument("bernoulli_numbers needs m >= 0");
  std::vector<Rational> b(m + 1);
  b[0] = 1;
  for (int k = 1; k <= m; ++k) {
    // sum_{j=0}^{k} C(k+1, j) B_j = 0, solved for B_k.
    Rational acc = 0;
    BigInt binom = 1;  // C(k+1, j)
    for (int j = 0; j < k; ++j) {
      acc += Rational(binom) * b[j];
      binom = binom * (k + 1 - j) / (j + 1);
    }
    b[k] = -acc / Rational(k + 1);
  }
  return b;
}

Rational chi_orb_mod_g1(int genus) {
  if (genus < 1) throw PreconditionError("chi_orb_mod_g1 needs g >= 1");
  const auto b = bernoulli_numbers(2 * genus);
  return -b[2 * genus] / Rational(2 * genus);
}

long cv2_local_system_dim(long a, long b, int degree) {
  if (b < 0 || a < b) throw InvalidArgument("cv2_local_system_dim needs a >= b >= 0");
  if (degree != 3) return 0;
  const bool a_odd = a % 2 != 0;
  const bool b_odd = b % 2 != 0;
  if (a_odd != b_odd) return 0;
  const long base = (a - b) / 6;
  return a_odd ? base + 1 : base;
}

}  // namespace gctop

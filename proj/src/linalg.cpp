#include "projclass/linalg.hpp"

#include <algorithm>

namespace projclass {

std::vector<BigFloat> singular_values(Matrix a) {
  const std::size_t m = a.size();
  const std::size_t n = m == 0 ? 0 : a[0].size();
  const mpfr_prec_t prec = working_precision();
  BigFloat eps = BigFloat::from_long(1, prec);
  mpfr_mul_2si(eps.raw(), eps.raw(), -static_cast<long>(prec) + 4, MPFR_RNDN);
  auto dot = [&](std::size_t p, std::size_t q) {
    BigFloat s = BigFloat::from_long(0, prec);
    for (std::size_t i = 0; i < m; ++i) s = s + a[i][p] * a[i][q];
    return s;
  };
  for (int sweep = 0; sweep < 80; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        BigFloat alpha = dot(p, p), beta = dot(q, q), gamma = dot(p, q);
        if (gamma.is_zero() || abs(gamma) <= eps * sqrt(alpha * beta)) continue;
        rotated = true;
        BigFloat zeta = (beta - alpha) / (gamma * Rational(2));
        BigFloat one = BigFloat::from_long(1, prec);
        BigFloat t = one / (abs(zeta) + sqrt(one + zeta * zeta));
        if (zeta.sign() < 0) t = -t;
        BigFloat c = one / sqrt(one + t * t);
        BigFloat s = c * t;
        for (std::size_t i = 0; i < m; ++i) {
          BigFloat ap = a[i][p], aq = a[i][q];
          a[i][p] = c * ap - s * aq;
          a[i][q] = s * ap + c * aq;
        }
      }
    }
    if (!rotated) break;
  }
  std::vector<BigFloat> out;
  for (std::size_t p = 0; p < n; ++p) out.push_back(sqrt(dot(p, p)));
  std::sort(out.begin(), out.end(), [](const BigFloat& x, const BigFloat& y) { return y < x; });
  return out;
}

int numeric_rank(const Matrix& a, double relative) {
  std::vector<BigFloat> sv = singular_values(a);
  if (sv.empty() || sv.front().is_zero()) return 0;
  BigFloat cut = sv.front() * BigFloat::from_double(relative);
  return static_cast<int>(std::count_if(sv.begin(), sv.end(), [&](const BigFloat& s) { return cut < s; }));
}

Matrix denoised(const std::vector<std::vector<Tracked>>& a, double tol) {
  BigFloat t = BigFloat::from_double(tol);
  Matrix out;
  for (const auto& row : a) {
    std::vector<BigFloat> r;
    for (const Tracked& v : row) r.push_back(v.ratio() <= t ? BigFloat::from_long(0) : v.value);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace projclass

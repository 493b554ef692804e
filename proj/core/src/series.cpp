#include "domino/series.hpp"

#include <algorithm>
#include <numbers>

namespace domino::series {

namespace {

// Shared recurrence kernel. Overflow checking matters only for double; the
// rational instantiation never overflows.
template <class T>
std::vector<T> recurrence(const T& c0, const T& c1, std::size_t m_max,
                          bool check_finite) {
  std::vector<T> c;
  c.reserve(m_max + 1);
  c.push_back(c0);
  if (m_max >= 1) c.push_back(c1);
  for (std::size_t m = 0; m + 2 <= m_max; ++m) {
    T conv(0);
    for (std::size_t k = 0; k <= m; ++k) conv += c[k] * c[m - k];
    c.push_back(c[m + 1] + conv);
    if (check_finite) {
      if (!std::isfinite(static_cast<double>(c.back())))
        throw std::overflow_error("run_recurrence: c[" + std::to_string(m + 2) +
                                  "] is not finite");
    }
  }
  return c;
}

template <class T>
std::vector<T> gf_expand(const T& c0, const T& c1, std::size_t order,
                         const T& tol) {
  // Radicand 1 - 2z + (1-4c0) z^2 + 4(c0-c1) z^3, expanded two orders past
  // the target so the division by z^2 retains `order` coefficients.
  std::vector<T> rad(order + 3, T(0));
  rad[0] = T(1);
  rad[1] = T(-2);
  if (order + 2 >= 2) rad[2] = T(1) - T(4) * c0;
  if (order + 2 >= 3) rad[3] = T(4) * (c0 - c1);
  PowerSeries<T> root = PowerSeries<T>(std::move(rad)).sqrt();

  // numerator (1 - z) - sqrt(...)
  std::vector<T> num(order + 3, T(0));
  num[0] = T(1) - root[0];
  num[1] = T(-1) - root[1];
  for (std::size_t n = 2; n <= order + 2; ++n) num[n] = -root[n];

  auto mag = [](const T& v) { return v < T(0) ? T(-v) : T(v); };
  if (mag(num[0]) > tol || mag(num[1]) > tol)
    throw std::runtime_error(
        "gf_coeffs: numerator is not divisible by z^2 (z^0/z^1 coefficient "
        "nonzero)");

  std::vector<T> out(order + 1);
  for (std::size_t m = 0; m <= order; ++m) out[m] = num[m + 2] / T(2);
  return out;
}

}  // namespace

double c_initial(double theta) {
  if (!(theta >= 0.0)) throw std::domain_error("c_initial: theta must be >= 0");
  return (1.0 + 1.5 * theta + theta * theta) /
         (1.0 + 4.0 * theta + 4.0 * theta * theta);
}

BigRat c_initial_exact(const BigRat& theta) {
  if (theta < 0) throw std::domain_error("c_initial_exact: theta must be >= 0");
  const BigRat t = theta;
  return (BigRat(1) + BigRat(3, 2) * t + t * t) /
         (BigRat(1) + BigRat(4) * t + BigRat(4) * t * t);
}

CoeffSequence run_recurrence(double c0, double c1, std::size_t m_max) {
  CoeffSequence s;
  s.mode = CoeffMode::Float64;
  s.values = recurrence<double>(c0, c1, m_max, true);
  return s;
}

CoeffSequence run_recurrence_exact(const BigRat& c0, const BigRat& c1,
                                   std::size_t m_max) {
  CoeffSequence s;
  s.mode = CoeffMode::ExactRational;
  s.exact = recurrence<BigRat>(c0, c1, m_max, false);
  return s;
}

std::vector<BigInt> motzkin_numbers(std::size_t m_max) {
  std::vector<BigInt> c;
  c.reserve(m_max + 1);
  c.push_back(1);
  if (m_max >= 1) c.push_back(1);
  for (std::size_t m = 0; m + 2 <= m_max; ++m) {
    BigInt conv = 0;
    for (std::size_t k = 0; k <= m; ++k) conv += c[k] * c[m - k];
    c.push_back(c[m + 1] + conv);
  }
  return c;
}

CoeffSequence gf_coeffs(double c0, double c1, std::size_t order) {
  CoeffSequence s;
  s.mode = CoeffMode::Float64;
  s.values = gf_expand<double>(c0, c1, order, 1e-9);
  return s;
}

CoeffSequence gf_coeffs_exact(const BigRat& c0, const BigRat& c1,
                              std::size_t order) {
  CoeffSequence s;
  s.mode = CoeffMode::ExactRational;
  s.exact = gf_expand<BigRat>(c0, c1, order, BigRat(0));
  return s;
}

double generalized_binomial(double a, std::size_t n) {
  double r = 1.0;
  for (std::size_t t = 0; t < n; ++t)
    r *= (a - static_cast<double>(t)) / static_cast<double>(t + 1);
  return r;
}

double closed_form_c(std::size_t m, double c0) {
  if (m == 0) return c0;
  const double k = 2.0 * c0 - 0.5;
  // All terms are positive for k > 0; compensated summation keeps the error
  // at O(ulp * sum|term|) even when individual binomials are large.
  double sum = 0.0, comp = 0.0;
  double k_pow = 1.0;
  for (std::size_t j = 0; j <= (m + 2) / 2; ++j) {
    const std::size_t i = m - j;  // j <= (m+2)/2 implies i >= 0
    const double term = k_pow / (static_cast<double>(i + 2) * std::ldexp(1.0, static_cast<int>(i))) *
                        generalized_binomial(2.0 * static_cast<double>(i) + 1.0, i + 1) *
                        generalized_binomial(static_cast<double>(i) + 2.0, j);
    const double y = term - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    k_pow *= k;
  }
  return 0.5 * sum;
}

double motzkin_asymptotic(std::int64_t i) {
  if (i < 1) throw std::domain_error("motzkin_asymptotic: i must be >= 1");
  const double x = static_cast<double>(i);
  // Evaluate in logs; 3^{i+1} alone overflows binary64 near i = 645.
  const double ln = 0.5 * std::log(3.0 / (4.0 * std::numbers::pi)) +
                    (x + 1.0) * std::log(3.0) - 1.5 * std::log(x);
  return std::exp(ln);
}

double asymptotic_ni(std::int64_t i, double n_theta, MotzkinSource source) {
  if (i < 2) throw std::domain_error("asymptotic_ni: i must be >= 2");
  if (source == MotzkinSource::Auto)
    source = i < kMotzkinAutoCrossover ? MotzkinSource::Exact
                                       : MotzkinSource::Asymptotic;
  const double x = static_cast<double>(i);
  if (source == MotzkinSource::Asymptotic) {
    // n_theta * 3^{-i} * masym(i-1), folded together in log space.
    const double ln = 0.5 * std::log(3.0 / (4.0 * std::numbers::pi)) -
                      1.5 * std::log(x - 1.0);
    return n_theta * std::exp(ln);
  }
  const auto m = motzkin_numbers(static_cast<std::size_t>(i - 1));
  // M_{i-1} overflows binary64 near i = 645; take the log via the bit length.
  const BigInt& M = m.back();
  const std::size_t bits = boost::multiprecision::msb(M);
  double ln_m;
  if (bits <= 900) {
    ln_m = std::log(to_double(M));
  } else {
    const std::size_t drop = bits - 64;
    ln_m = std::log(to_double(BigInt(M >> drop))) +
           static_cast<double>(drop) * std::log(2.0);
  }
  return n_theta * std::exp(ln_m - x * std::log(3.0));
}

}  // namespace domino::series

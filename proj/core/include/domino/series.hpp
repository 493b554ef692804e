#pragma once

#include "domino/bigrat.hpp"

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace domino::series {

// ---------------------------------------------------------------------------
// Truncated formal power series.
//
// A series holds coefficients a_0..a_order. Every operation is exact on the
// retained range: truncating at `order` never changes lower coefficients,
// because the convolution for coefficient n only reads indices <= n.
// ---------------------------------------------------------------------------
template <class T>
class PowerSeries {
 public:
  explicit PowerSeries(std::vector<T> coeffs) : a_(std::move(coeffs)) {
    if (a_.empty()) throw std::invalid_argument("PowerSeries: empty coefficient list");
  }

  static PowerSeries zero(std::size_t order) {
    return PowerSeries(std::vector<T>(order + 1, T(0)));
  }

  std::size_t order() const { return a_.size() - 1; }
  const T& operator[](std::size_t n) const { return a_.at(n); }
  T& operator[](std::size_t n) { return a_.at(n); }
  const std::vector<T>& coeffs() const { return a_; }

  PowerSeries add(const PowerSeries& o) const {
    const std::size_t ord = std::min(order(), o.order());
    std::vector<T> r(ord + 1);
    for (std::size_t n = 0; n <= ord; ++n) r[n] = a_[n] + o.a_[n];
    return PowerSeries(std::move(r));
  }

  PowerSeries sub(const PowerSeries& o) const {
    const std::size_t ord = std::min(order(), o.order());
    std::vector<T> r(ord + 1);
    for (std::size_t n = 0; n <= ord; ++n) r[n] = a_[n] - o.a_[n];
    return PowerSeries(std::move(r));
  }

  PowerSeries mul(const PowerSeries& o) const {
    const std::size_t ord = std::min(order(), o.order());
    std::vector<T> r(ord + 1, T(0));
    for (std::size_t i = 0; i <= ord; ++i) {
      if (a_[i] == T(0)) continue;
      for (std::size_t j = 0; i + j <= ord; ++j) r[i + j] += a_[i] * o.a_[j];
    }
    return PowerSeries(std::move(r));
  }

  PowerSeries scale(const T& s) const {
    std::vector<T> r(a_);
    for (auto& v : r) v *= s;
    return PowerSeries(std::move(r));
  }

  /// Exact division by z^k; the k lowest coefficients must vanish.
  PowerSeries shift_down(std::size_t k) const {
    if (k > order())
      throw std::invalid_argument("PowerSeries::shift_down: k exceeds order");
    std::vector<T> r(a_.begin() + static_cast<std::ptrdiff_t>(k), a_.end());
    return PowerSeries(std::move(r));
  }

  /// Series square root for unit constant term:
  ///   t_0 = 1,  t_n = (a_n - sum_{k=1}^{n-1} t_k t_{n-k}) / 2.
  /// The result satisfies t*t == *this on the retained range.
  PowerSeries sqrt() const {
    if (a_[0] != T(1))
      throw std::domain_error("PowerSeries::sqrt: constant term must be 1");
    std::vector<T> t(a_.size(), T(0));
    t[0] = T(1);
    for (std::size_t n = 1; n <= order(); ++n) {
      T acc = a_[n];
      for (std::size_t k = 1; k < n; ++k) acc -= t[k] * t[n - k];
      t[n] = acc / T(2);
    }
    return PowerSeries(std::move(t));
  }

 private:
  std::vector<T> a_;
};

using PowerSeriesD = PowerSeries<double>;
using PowerSeriesQ = PowerSeries<BigRat>;

// ---------------------------------------------------------------------------
// Coefficient sequences c_0..c_m of the quadratic recurrence
//   c_{m+2} = c_{m+1} + sum_{k=0}^{m} c_k c_{m-k}.
// ---------------------------------------------------------------------------

enum class CoeffMode { Float64, ExactRational };

struct CoeffSequence {
  CoeffMode mode = CoeffMode::Float64;
  std::vector<double> values;  // Float64 mode
  std::vector<BigRat> exact;   // ExactRational mode

  std::size_t size() const {
    return mode == CoeffMode::Float64 ? values.size() : exact.size();
  }
  double as_double(std::size_t m) const {
    return mode == CoeffMode::Float64 ? values.at(m) : to_double(exact.at(m));
  }
};

/// Initial datum c_0 = c_1 = (1 + (3/2)theta + theta^2) / (1 + 4 theta + 4 theta^2).
double c_initial(double theta);
BigRat c_initial_exact(const BigRat& theta);

/// Run the recurrence from (c0, c1) up to index m_max in binary64.
/// Throws std::overflow_error naming the first non-finite index.
CoeffSequence run_recurrence(double c0, double c1, std::size_t m_max);

/// Exact-rational version of run_recurrence. With c0 = c1 = 1 this produces
/// the Motzkin numbers 1, 1, 2, 4, 9, 21, 51, 127, 323, 835, 2188, ...
CoeffSequence run_recurrence_exact(const BigRat& c0, const BigRat& c1,
                                   std::size_t m_max);

/// Motzkin numbers M_0..M_{m_max} as exact integers.
std::vector<BigInt> motzkin_numbers(std::size_t m_max);

/// Coefficients of C(z) = ((1-z) - sqrt(1 - 2z + (1-4c0)z^2 + 4(c0-c1)z^3)) / (2z^2),
/// which solves the recurrence. The numerator is checked to be divisible by
/// z^2; a violation raises std::runtime_error (internal consistency).
CoeffSequence gf_coeffs(double c0, double c1, std::size_t order);
CoeffSequence gf_coeffs_exact(const BigRat& c0, const BigRat& c1, std::size_t order);

/// Generalized binomial coefficient a(a-1)...(a-n+1)/n! for real upper index.
double generalized_binomial(double a, std::size_t n);

/// Closed form for c_m (m >= 1) with k = 2 c0 - 1/2:
///   c_m = (1/2) sum_{j=0}^{floor((m+2)/2)} k^j / ((m-j+2) 2^{m-j})
///           * C(2(m-j)+1, m-j+1) * C(m-j+2, j).
/// m = 0 returns c0 itself (the series expansion contributes only the kz^2/2
/// term there, which is c0 by the initial data).
double closed_form_c(std::size_t m, double c0);

/// Leading-order Motzkin asymptotic sqrt(3/(4 pi)) 3^{i+1} / i^{3/2}.
/// The relative error decays like 39/(16 i); about 1.2% at i = 200.
double motzkin_asymptotic(std::int64_t i);

/// Which Motzkin values feed the limit-form cluster estimate.
enum class MotzkinSource { Auto, Exact, Asymptotic };

/// Crossover index for MotzkinSource::Auto.
inline constexpr std::int64_t kMotzkinAutoCrossover = 64;

/// Limit-form cluster count n_i -> (N theta) (1/3)^i M_{i-1} for theta -> 0
/// with N theta held constant. `Auto` uses exact Motzkin numbers below the
/// crossover index 64 and the asymptotic form above it.
double asymptotic_ni(std::int64_t i, double n_theta,
                     MotzkinSource source = MotzkinSource::Auto);

}  // namespace domino::series

#include "raml/counting.hpp"

#include <gmp.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace raml {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Lazily grown log-factorial table, accumulated in extended precision so a
// single log C(n, k) carries well under 1e-13 absolute error.
long double log_factorial_ld(long long n) {
  static std::vector<long double> cache{0.0L};  // log 0! = 0
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  while (static_cast<long long>(cache.size()) <= n)
    cache.push_back(cache.back() + logl(static_cast<long double>(cache.size())));
  return cache[static_cast<std::size_t>(n)];
}

long double log_binomial_ld(long long n, long long k) {
  if (k < 0 || k > n) return kNegInf;
  return log_factorial_ld(n) - log_factorial_ld(k) - log_factorial_ld(n - k);
}

void check_edit_args(int e, int m, int v) {
  if (m < 1) throw std::invalid_argument("edit ball count requires m >= 1");
  if (v < 2) throw std::invalid_argument("edit ball count requires v >= 2");
  if (e < 0 || e > 2 * m)
    throw std::out_of_range("edit distance e must lie in 0..2m");
}

struct Mpz {
  mpz_t z;
  Mpz() { mpz_init(z); }
  ~Mpz() { mpz_clear(z); }
  Mpz(const Mpz&) = delete;
  Mpz& operator=(const Mpz&) = delete;
};

// acc = sum_s C(m, s) C(m + e - 2s, e - s) * v^e, exactly.
void exact_count_into(mpz_t acc, int e, int m, int v) {
  Mpz b1, b2, pw;
  mpz_set_ui(acc, 0);
  const int s_max = std::min(m, e);
  for (int s = 0; s <= s_max; ++s) {
    mpz_bin_uiui(b1.z, static_cast<unsigned long>(m), static_cast<unsigned long>(s));
    mpz_bin_uiui(b2.z, static_cast<unsigned long>(m + e - 2 * s),
                 static_cast<unsigned long>(e - s));
    mpz_mul(b1.z, b1.z, b2.z);
    mpz_add(acc, acc, b1.z);
  }
  mpz_ui_pow_ui(pw.z, static_cast<unsigned long>(v), static_cast<unsigned long>(e));
  mpz_mul(acc, acc, pw.z);
}

}  // namespace

double log_binomial(long long n, long long k) {
  if (n < 0) throw std::invalid_argument("log_binomial requires n >= 0");
  return static_cast<double>(log_binomial_ld(n, k));
}

double log_edit_ball_count(int e, int m, int v) {
  check_edit_args(e, m, v);
  // max-shifted log-sum-exp over the substitution count, all in extended
  // precision (terms span many orders of magnitude)
  const int s_max = std::min(m, e);
  std::vector<long double> terms(static_cast<std::size_t>(s_max) + 1);
  long double peak = kNegInf;
  for (int s = 0; s <= s_max; ++s) {
    terms[static_cast<std::size_t>(s)] =
        log_binomial_ld(m, s) + log_binomial_ld(m + e - 2 * s, e - s);
    peak = std::max(peak, terms[static_cast<std::size_t>(s)]);
  }
  long double sum = 0.0L, comp = 0.0L;
  for (long double t : terms) {
    if (t == kNegInf) continue;
    const long double term = expl(t - peak);
    const long double y = term - comp;
    const long double acc = sum + y;
    comp = (acc - sum) - y;
    sum = acc;
  }
  return static_cast<double>(peak + logl(sum) +
                             static_cast<long double>(e) * logl(static_cast<long double>(v)));
}

double log_hamming_ball_count(int e, int m, int v) {
  if (m < 1) throw std::invalid_argument("hamming ball count requires m >= 1");
  if (v < 2) throw std::invalid_argument("hamming ball count requires v >= 2");
  if (e < 0 || e > m)
    throw std::out_of_range("hamming distance e must lie in 0..m");
  return static_cast<double>(log_binomial_ld(m, e) +
                             static_cast<long double>(e) * logl(static_cast<long double>(v - 1)));
}

EditCountTable EditCountTable::build(int m, int v) {
  check_edit_args(0, m, v);
  EditCountTable table;
  table.m = m;
  table.v = v;
  table.log_counts.resize(static_cast<std::size_t>(2 * m) + 1);
  for (int e = 0; e <= 2 * m; ++e)
    table.log_counts[static_cast<std::size_t>(e)] = log_edit_ball_count(e, m, v);
  return table;
}

std::string exact_edit_ball_count(int e, int m, int v) {
  check_edit_args(e, m, v);
  if (m > 30)
    throw std::invalid_argument("exact edit ball count is limited to m <= 30");
  Mpz acc;
  exact_count_into(acc.z, e, m, v);
  char* digits = mpz_get_str(nullptr, 10, acc.z);
  std::string out(digits);
  std::free(digits);
  return out;
}

double exact_edit_ball_count_log(int e, int m, int v) {
  check_edit_args(e, m, v);
  if (m > 30)
    throw std::invalid_argument("exact edit ball count is limited to m <= 30");
  Mpz acc;
  exact_count_into(acc.z, e, m, v);
  long exp2 = 0;
  const double mant = mpz_get_d_2exp(&exp2, acc.z);  // acc = mant * 2^exp2
  return std::log(mant) + static_cast<double>(exp2) * 0.69314718055994530942;
}

}  // namespace raml

#pragma once

#include <string>
#include <vector>

namespace raml {

// log C(n, k) with the zero-term convention: k < 0 or k > n yields -inf, so
// out-of-range terms vanish from log-sum-exp accumulations.
double log_binomial(long long n, long long k);

// log of the approximate number of sequences at edit distance exactly e from
// a length-m sequence over a vocabulary of v tokens:
//
//     c(e, m) = sum_{s=0}^{m} C(m, s) * C(m + e - 2s, e - s) * v^e
//
// where s counts substitutions (a deletion is a substitution with the nil
// token, so substitutions have v options just like insertions) and the e - s
// insertions are arranged around the m - s surviving reference positions.
// Distinct edit scripts can collide on the same output, so for sequences
// with repeated tokens this over-counts; the approximation is exactly what
// the stratified sampler needs. Counts reach v^{2m}, far beyond double or
// 64-bit range, hence the log domain.
double log_edit_ball_count(int e, int m, int v);

// log( C(m, e) * (v - 1)^e ): exact count of length-m sequences at Hamming
// distance exactly e.
double log_hamming_ball_count(int e, int m, int v);

// Precomputed log c(e, m) for e = 0..2m.
struct EditCountTable {
  int m = 0;
  int v = 0;
  std::vector<double> log_counts;

  static EditCountTable build(int m, int v);
};

// Exact arbitrary-precision evaluation of the c(e, m) sum, as a decimal
// string. Limited to m <= 30; the correctness anchor for the log-domain
// path.
std::string exact_edit_ball_count(int e, int m, int v);

// Natural log of the exact count, accurate to double rounding.
double exact_edit_ball_count_log(int e, int m, int v);

}  // namespace raml

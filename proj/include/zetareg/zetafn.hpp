#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>

namespace zetareg {

/// C(m, l) for m >= 0; zero when l lies outside [0, m].
mpz_class binomial(long m, long l);

/// Bernoulli number B_p with B_1 = -1/2, generated from
///   sum_{p=0}^{m-1} C(m, p) B_p = 0,  B_0 = 1.
/// Values are memoized process-wide; concurrent callers are safe.
mpq_class bernoulli(std::size_t p);

/// zeta(-p) = (-1)^p B_{p+1} / (p+1).
mpq_class zeta_nonpositive(std::size_t p);

/// Outcome of an exact identity sweep.
struct IdentityReport {
  std::string name;
  std::string range;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string first_failure;

  bool passed() const { return failures == 0; }
};

/// C(k+1, p) == (p+1)/(k+2) * C(k+2, p+1) for 0 <= p <= k <= k_max.
IdentityReport check_binomial_shift_identity(std::size_t k_max);

/// sum_{p=0}^{m-1} C(m, p) B_p == 0 for 2 <= m <= m_max.
IdentityReport check_bernoulli_sum_identity(std::size_t m_max);

/// zeta(-2n) == 0 for 1 <= n <= n_max.
IdentityReport check_zeta_trivial_zeros(std::size_t n_max);

}  // namespace zetareg

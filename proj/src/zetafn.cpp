#include "zetareg/zetafn.hpp"

#include <mutex>
#include <shared_mutex>
#include <vector>

namespace zetareg {

mpz_class binomial(long m, long l) {
  if (m < 0 || l < 0 || l > m) return 0;
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(m), static_cast<unsigned long>(l));
  return r;
}

namespace {

// Grow-only table; readers share the lock, growth takes it exclusively.
class BernoulliTable {
 public:
  BernoulliTable() { values_.emplace_back(1); }

  mpq_class get(std::size_t p) {
    {
      std::shared_lock lock(mutex_);
      if (p < values_.size()) return values_[p];
    }
    std::unique_lock lock(mutex_);
    while (values_.size() <= p) extend();
    return values_[p];
  }

 private:
  // With m = n + 1: B_n = -(1 / C(m, n)) * sum_{q<n} C(m, q) B_q.
  void extend() {
    const std::size_t n = values_.size();
    const long m = static_cast<long>(n) + 1;
    mpq_class sum = 0;
    for (std::size_t q = 0; q < n; ++q) {
      if (sgn(values_[q]) == 0) continue;
      sum += mpq_class(binomial(m, static_cast<long>(q))) * values_[q];
    }
    mpq_class b = -sum / mpq_class(binomial(m, static_cast<long>(n)));
    b.canonicalize();
    values_.push_back(std::move(b));
  }

  std::shared_mutex mutex_;
  std::vector<mpq_class> values_;
};

BernoulliTable& table() {
  static BernoulliTable instance;
  return instance;
}

}  // namespace

mpq_class bernoulli(std::size_t p) { return table().get(p); }

mpq_class zeta_nonpositive(std::size_t p) {
  mpq_class z = bernoulli(p + 1) / mpq_class(static_cast<unsigned long>(p + 1));
  if (p % 2 == 1) z = -z;
  z.canonicalize();
  return z;
}

IdentityReport check_binomial_shift_identity(std::size_t k_max) {
  IdentityReport report;
  report.name = "binomial shift C(k+1,p) = (p+1)/(k+2) C(k+2,p+1)";
  report.range = "0 <= p <= k <= " + std::to_string(k_max);
  for (std::size_t k = 0; k <= k_max; ++k) {
    for (std::size_t p = 0; p <= k; ++p) {
      ++report.cases;
      const mpq_class lhs(binomial(static_cast<long>(k) + 1, static_cast<long>(p)));
      mpq_class rhs = mpq_class(static_cast<unsigned long>(p + 1), static_cast<unsigned long>(k + 2)) *
                      mpq_class(binomial(static_cast<long>(k) + 2, static_cast<long>(p) + 1));
      rhs.canonicalize();
      if (lhs != rhs) {
        if (report.failures++ == 0) {
          report.first_failure = "k=" + std::to_string(k) + " p=" + std::to_string(p);
        }
      }
    }
  }
  return report;
}

IdentityReport check_bernoulli_sum_identity(std::size_t m_max) {
  IdentityReport report;
  report.name = "Bernoulli sum sum_{p<m} C(m,p) B_p = 0";
  report.range = "2 <= m <= " + std::to_string(m_max);
  for (std::size_t m = 2; m <= m_max; ++m) {
    ++report.cases;
    mpq_class sum = 0;
    for (std::size_t p = 0; p < m; ++p) {
      sum += mpq_class(binomial(static_cast<long>(m), static_cast<long>(p))) * bernoulli(p);
    }
    if (sgn(sum) != 0) {
      if (report.failures++ == 0) report.first_failure = "m=" + std::to_string(m);
    }
  }
  return report;
}

IdentityReport check_zeta_trivial_zeros(std::size_t n_max) {
  IdentityReport report;
  report.name = "trivial zeros zeta(-2n) = 0";
  report.range = "1 <= n <= " + std::to_string(n_max);
  for (std::size_t n = 1; n <= n_max; ++n) {
    ++report.cases;
    if (sgn(zeta_nonpositive(2 * n)) != 0) {
      if (report.failures++ == 0) report.first_failure = "n=" + std::to_string(n);
    }
  }
  return report;
}

}  // namespace zetareg

#include "zetareg/regularize.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <shared_mutex>

#include "zetareg/error.hpp"
#include "zetareg/zetafn.hpp"

namespace zetareg {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Converged: return "Converged";
    case Verdict::Inconclusive: return "Inconclusive";
    case Verdict::SeriesDivergent: return "SeriesDivergent";
  }
  return "?";
}

const char* to_string(Backend b) { return b == Backend::Exact ? "exact" : "float"; }

Scalar direct_term(const Scalar& coefficient, std::size_t k) {
  const auto kk = static_cast<unsigned long>(k);
  mpq_class factor(1UL, (kk + 1) * (kk + 2));
  if (k % 2 == 0) factor = -factor;
  return Scalar(std::move(factor)) * coefficient;
}

namespace {

class WeightTable {
 public:
  mpq_class get(std::size_t k) {
    {
      std::shared_lock lock(mutex_);
      if (k < weights_.size()) return weights_[k];
    }
    std::unique_lock lock(mutex_);
    while (weights_.size() <= k) weights_.push_back(compute(weights_.size()));
    return weights_[k];
  }

 private:
  static mpq_class compute(std::size_t k) {
    const long m = static_cast<long>(k) + 1;
    mpq_class sum = 0;
    for (std::size_t p = 0; p <= k; ++p) {
      const mpq_class z = zeta_nonpositive(p);
      if (sgn(z) == 0) continue;
      mpq_class t = mpq_class(binomial(m, static_cast<long>(p))) * z;
      if ((k - p) % 2 == 1) t = -t;
      sum += t;
    }
    mpq_class w = sum / mpq_class(factorial_z(static_cast<unsigned long>(m)));
    w.canonicalize();
    return w;
  }

  std::shared_mutex mutex_;
  std::vector<mpq_class> weights_;
};

WeightTable& weight_table() {
  static WeightTable instance;
  return instance;
}

struct Nonzero {
  std::size_t k;
  const Scalar* term;
};

bool strictly_decreasing(std::span<const Nonzero> w) {
  for (std::size_t i = 1; i < w.size(); ++i) {
    if (compare(abs(*w[i].term), abs(*w[i - 1].term)) >= 0) return false;
  }
  return true;
}

bool growing(std::span<const Nonzero> w) {
  for (std::size_t i = 1; i < w.size(); ++i) {
    if (compare(abs(*w[i].term), abs(*w[i - 1].term)) < 0) return false;
  }
  return compare(abs(*w.back().term), abs(*w.front().term)) > 0;
}

bool alternating(std::span<const Nonzero> w) {
  for (std::size_t i = 1; i < w.size(); ++i) {
    if (w[i].term->sign() == w[i - 1].term->sign()) return false;
  }
  return true;
}

Scalar scaled_magnitude(const Scalar& term, double factor) {
  const long bits = std::max(128L, term.precision());
  return abs(term) * Scalar(BigFloat(factor, bits));
}

}  // namespace

mpq_class bernoulli_path_weight(std::size_t k) { return weight_table().get(k); }

ConvergenceReport convergence_assess(std::span<const Scalar> terms,
                                     std::span<const Scalar> derivatives,
                                     std::size_t terms_used,
                                     const ConvergenceOptions& options) {
  if (terms_used < kMinAssessTerms) {
    throw DomainError("convergence assessment needs at least " + std::to_string(kMinAssessTerms) +
                      " terms, got " + std::to_string(terms_used));
  }
  if (terms.size() < terms_used || derivatives.size() < terms_used) {
    throw DomainError("convergence assessment: fewer terms than terms_used");
  }

  ConvergenceReport report;
  std::vector<Nonzero> nonzero;
  for (std::size_t k = 0; k < terms_used; ++k) {
    if (!terms[k].is_zero()) nonzero.push_back({k, &terms[k]});
  }
  if (nonzero.size() < 2) {
    report.rule = "too few nonzero terms";
    return report;
  }

  const std::size_t quartile = (nonzero.size() + 3) / 4;
  const std::size_t width = std::min(nonzero.size(), std::max(options.min_window, quartile));
  const std::span<const Nonzero> window(nonzero.data() + nonzero.size() - width, width);

  // Per-step ratio between consecutive nonzero derivatives, normalized by the
  // (k+2)! of the summand; for adjacent indices this is
  // |f^(k+1)(0)| / ((k+3) |f^(k)(0)|).
  double ratio = 0.0;
  double first_step = 0.0;
  double last_step = 0.0;
  for (std::size_t i = 1; i < window.size(); ++i) {
    const std::size_t a = window[i - 1].k;
    const std::size_t b = window[i].k;
    const double log_step = derivatives[b].log_abs() - derivatives[a].log_abs() +
                            std::lgamma(static_cast<double>(a) + 3.0) -
                            std::lgamma(static_cast<double>(b) + 3.0);
    const double step = std::exp(log_step / static_cast<double>(b - a));
    if (i == 1) first_step = step;
    last_step = step;
    ratio = std::max(ratio, step);
  }
  // Ratios creeping up toward 1 mean sub-geometric decay; a geometric tail
  // built from the window would undershoot.
  const bool ratio_rising = window.size() > 2 && last_step > first_step;
  report.ratio_estimate = ratio;

  const Nonzero& first = window.front();
  const Nonzero& last = window.back();
  if (first.k >= 1 && last.k > first.k) {
    report.decay_exponent = (first.term->log_abs() - last.term->log_abs()) /
                            (std::log(static_cast<double>(last.k)) -
                             std::log(static_cast<double>(first.k)));
  }

  if (growing(window)) {
    report.verdict = Verdict::SeriesDivergent;
    report.rule = "term magnitudes grow";
    return report;
  }
  if (!strictly_decreasing(window)) {
    report.rule = "term magnitudes not eventually decreasing";
    return report;
  }

  if (alternating(window)) {
    report.verdict = Verdict::Converged;
    report.rule = "alternating series";
    const Scalar* omitted = nullptr;
    for (std::size_t k = terms_used; k < terms.size(); ++k) {
      if (!terms[k].is_zero()) {
        omitted = &terms[k];
        break;
      }
    }
    // Without a known omitted term, monotone decrease still caps it by the last one.
    report.tail_bound = abs(omitted != nullptr ? *omitted : *last.term);
    return report;
  }
  if (ratio < options.ratio_threshold && !ratio_rising) {
    report.verdict = Verdict::Converged;
    report.rule = "ratio test";
    report.tail_bound = scaled_magnitude(*last.term, ratio / (1.0 - ratio));
    return report;
  }
  if (report.decay_exponent && *report.decay_exponent >= options.min_decay_exponent) {
    const double p = *report.decay_exponent;
    report.verdict = Verdict::Converged;
    report.rule = "power-law comparison";
    report.tail_bound = scaled_magnitude(*last.term, static_cast<double>(last.k) / (p - 1.0));
    return report;
  }
  report.rule = "no test applies";
  return report;
}

namespace {

RegularizationResult summarize(std::vector<Scalar> terms, std::vector<Scalar> cross,
                               const PowerSeries& s, std::size_t max_k,
                               const ConvergenceOptions& options) {
  RegularizationResult result;
  result.backend = s.exact() ? Backend::Exact : Backend::Float;
  result.terms_used = max_k + 1;

  Scalar sum = terms[0] - terms[0];
  for (std::size_t k = 0; k <= max_k; ++k) {
    sum += terms[k];
    TermRecord record;
    record.k = k;
    record.term = terms[k];
    record.partial_sum = sum;
    if (!cross.empty()) record.cross_term = cross[k];
    result.terms.push_back(std::move(record));
  }
  result.value = sum;

  if (s.degree_bound() && *s.degree_bound() <= max_k) {
    result.convergence.verdict = Verdict::Converged;
    result.convergence.rule = "finite sum";
    result.convergence.tail_bound = terms[0] - terms[0];
  } else if (result.terms_used < kMinAssessTerms) {
    result.convergence.rule = "too few terms";
  } else {
    std::vector<Scalar> derivatives;
    derivatives.reserve(max_k + 1);
    for (std::size_t k = 0; k <= max_k; ++k) derivatives.push_back(s.derivative(k));
    result.convergence = convergence_assess(terms, derivatives, result.terms_used, options);
  }
  result.verdict = result.convergence.verdict;
  result.tail_bound = result.convergence.tail_bound;
  if (result.backend == Backend::Float && result.tail_bound) {
    // Rounding budget: (K+1) * 2^(1-bits) * sum |t_k|.
    const long bits = sum.precision();
    Scalar magnitude = sum - sum;
    for (std::size_t k = 0; k <= max_k; ++k) magnitude += abs(terms[k]);
    BigFloat eps(1.0, bits);
    mpfr_mul_2si(eps.get(), eps.get(), 1 - bits, MPFR_RNDU);
    const Scalar rounding = Scalar(std::move(eps)) * magnitude * Scalar(static_cast<long>(max_k + 1));
    result.tail_bound = *result.tail_bound + rounding;
    result.convergence.tail_bound = result.tail_bound;
  }
  return result;
}

long series_precision(const PowerSeries& s) {
  long bits = 0;
  for (const auto& c : s.coefficients()) bits = std::max(bits, c.precision());
  return bits;
}

void require_terms(const PowerSeries& s, std::size_t max_k) {
  if (max_k > s.order()) {
    throw DomainError("K = " + std::to_string(max_k) + " exceeds series order " +
                      std::to_string(s.order()));
  }
}

}  // namespace

RegularizationResult regularize_direct(const PowerSeries& s, std::size_t max_k,
                                       const ConvergenceOptions& options) {
  require_terms(s, max_k);
  const long bits = series_precision(s);
  std::vector<Scalar> terms;
  terms.reserve(s.order() + 1);
  for (std::size_t k = 0; k <= s.order(); ++k) {
    Scalar t = direct_term(s[k], k);
    if (!s.exact() && t.is_exact()) t = Scalar(t.to_float(bits));
    terms.push_back(std::move(t));
  }
  return summarize(std::move(terms), {}, s, max_k, options);
}

RegularizationResult regularize_bernoulli(const PowerSeries& s, std::size_t max_k,
                                          const ConvergenceOptions& options) {
  require_terms(s, max_k);
  if (!s.exact()) {
    throw DomainError("the Bernoulli path requires an exact series");
  }
  std::vector<Scalar> terms;
  std::vector<Scalar> cross;
  terms.reserve(s.order() + 1);
  cross.reserve(s.order() + 1);
  for (std::size_t k = 0; k <= s.order(); ++k) {
    terms.push_back(s.derivative(k) * Scalar(bernoulli_path_weight(k)));
    cross.push_back(direct_term(s[k], k));
  }
  return summarize(std::move(terms), std::move(cross), s, max_k, options);
}

}  // namespace zetareg

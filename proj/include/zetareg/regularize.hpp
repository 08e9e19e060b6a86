#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "zetareg/numerics.hpp"
#include "zetareg/series.hpp"

namespace zetareg {

enum class Verdict { Converged, Inconclusive, SeriesDivergent };
enum class Backend { Exact, Float };

const char* to_string(Verdict v);
const char* to_string(Backend b);

struct TermRecord {
  std::size_t k = 0;
  Scalar term;          // (-1)^{k+1} f^(k)(0) / (k+2)!
  Scalar partial_sum;   // sum of term_0 .. term_k
  std::optional<Scalar> cross_term;  // same summand by the other evaluation path
};

/// Tunable constants of the convergence heuristics.
struct ConvergenceOptions {
  double ratio_threshold = 0.9;      // per-step ratio accepted as geometric decay
  double min_decay_exponent = 2.0;   // power-law exponent accepted for the p-series test
  std::size_t min_window = 3;        // fewest nonzero terms a window may hold
};

struct ConvergenceReport {
  Verdict verdict = Verdict::Inconclusive;
  std::optional<Scalar> tail_bound;
  /// limsup estimate of the per-step term ratio over the window.
  std::optional<double> ratio_estimate;
  /// Power-law decay exponent fitted over the window.
  std::optional<double> decay_exponent;
  /// Which test decided the verdict.
  std::string rule;
};

struct RegularizationResult {
  Scalar value;
  std::vector<TermRecord> terms;
  Verdict verdict = Verdict::Inconclusive;
  std::optional<Scalar> tail_bound;
  std::size_t terms_used = 0;  // number of summands, K + 1
  Backend backend = Backend::Exact;
  ConvergenceReport convergence;
};

/// Fewest terms convergence_assess accepts.
inline constexpr std::size_t kMinAssessTerms = 8;

/// Classifies the series whose summands are `terms[0..terms_used)`.
/// `derivatives[k]` = f^(k)(0) over the same range. Entries of `terms`
/// past `terms_used` are treated as already-known omitted terms and only
/// tighten the alternating-series bound. Throws DomainError when
/// terms_used < kMinAssessTerms.
ConvergenceReport convergence_assess(std::span<const Scalar> terms,
                                     std::span<const Scalar> derivatives,
                                     std::size_t terms_used,
                                     const ConvergenceOptions& options = {});

/// The direct summand (-1)^{k+1} c_k / ((k+1)(k+2)) for c_k = f^(k)(0)/k!.
Scalar direct_term(const Scalar& coefficient, std::size_t k);

/// Exact weight w_k with Bernoulli-path summand f^(k)(0) * w_k, where
///   w_k = (1/(k+1)!) sum_{p=0}^{k} C(k+1, p) (-1)^{k-p} zeta(-p).
/// Memoized process-wide.
mpq_class bernoulli_path_weight(std::size_t k);

/// Partial sums of the direct summands for k = 0..max_k. Requires
/// max_k <= s.order(); coefficients past max_k are used as lookahead for
/// the tail bound. A known polynomial degree <= max_k yields a zero tail.
RegularizationResult regularize_direct(const PowerSeries& s, std::size_t max_k,
                                       const ConvergenceOptions& options = {});

/// Same quantity via the Bernoulli/zeta route. Requires s.exact(); each
/// record's cross_term holds the direct summand.
RegularizationResult regularize_bernoulli(const PowerSeries& s, std::size_t max_k,
                                          const ConvergenceOptions& options = {});

}  // namespace zetareg

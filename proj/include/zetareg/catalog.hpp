#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "zetareg/numerics.hpp"
#include "zetareg/regularize.hpp"

namespace zetareg {

/// Summand as a function of its index, evaluated at `bits` when a Float
/// factor is involved.
using Summand = std::function<Scalar(std::size_t k, long bits)>;

/// A worked example: f(x), its published closed form and published series,
/// plus the summand obtained by applying the regularization formula to the
/// true derivatives of f (indexed like the engine's terms).
struct CatalogEntry {
  std::string id;
  std::string expression;
  std::string published_series;       // summand as printed, ASCII
  std::string published_closed_form;  // constant expression text
  std::size_t published_series_start = 0;
  /// Number of summands when the published series is finite.
  std::optional<std::size_t> published_series_length;
  Summand published_summand;
  Summand derived_summand;
  /// The ordinary improper integral converges (e.g. exp(-x^2)).
  bool classically_convergent = false;
  std::string note;
};

/// The built-in examples followed by the monomials x^0 .. x^4.
const std::vector<CatalogEntry>& catalog_entries();

/// Entry for f(x) = x^m with closed form (-1)^{m+1} / ((m+1)(m+2)).
CatalogEntry monomial_entry(unsigned m);

const CatalogEntry* find_entry(std::string_view id);

enum class EntryStatus { Verified, PaperDiscrepant };
const char* to_string(EntryStatus s);

struct VerificationReport {
  std::string id;
  std::size_t terms = 0;
  RegularizationResult engine;
  Scalar closed_form_value;
  Scalar published_series_value;
  std::optional<Scalar> published_series_tail;
  Scalar delta;  // |engine - closed form|
  bool engine_matches_closed_form = false;
  bool engine_matches_published_series = false;
  bool published_series_matches_closed_form = false;
  /// Engine summands equal the derived summands for k <= 20.
  bool derived_summands_match = false;
  EntryStatus status = EntryStatus::PaperDiscrepant;
};

/// Terms used to sum an infinite published series.
inline constexpr std::size_t kPublishedSeriesTerms = 400;

/// Runs the engine on the entry and audits the published closed form and
/// series against it. Two values "agree" when they differ by at most the
/// sum of their tail bounds plus a few ulps at the working precision.
VerificationReport catalog_verify(const CatalogEntry& entry, std::size_t terms,
                                  const PrecisionConfig& config = {});

}  // namespace zetareg

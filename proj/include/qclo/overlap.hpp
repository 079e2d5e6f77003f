#pragma once

#include <span>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "qclo/corpus.hpp"
#include "qclo/text.hpp"

namespace qclo {

inline constexpr double kDefaultThreshold = 0.3;
inline constexpr double kDefaultBinWidth = 0.1;

// Question-context lexical overlap as an exact rational: the number of
// question tokens (stopwords and punctuation included) whose folded surface
// occurs among the context's folded token surfaces, over the question token
// count.
struct QcloValue {
  std::size_t numerator = 0;
  std::size_t denominator = 1;

  double value() const {
    return static_cast<double>(numerator) / static_cast<double>(denominator);
  }

  friend bool operator==(const QcloValue&, const QcloValue&) = default;
};

// Exact comparison of two overlap ratios.
bool qclo_less(const QcloValue& a, const QcloValue& b);

enum class Bucket { Hard, Easy };

using TokenTypeSet = std::unordered_set<std::string>;

TokenTypeSet context_token_types(std::string_view context_text);

QcloValue qclo_from_tokens(std::span<const Token> question_tokens,
                           const TokenTypeSet& context_types);

// Throws ValidationError when the question yields no tokens.
QcloValue qclo(std::string_view question, std::string_view context);

// Easy strictly above the threshold; the boundary value itself is Hard.
Bucket bucket_of(const QcloValue& v, double threshold = kDefaultThreshold);

// Overlap of every example against its own context, in document order.
std::vector<QcloValue> dataset_qclo(const Dataset& ds);

double mean_qclo(std::span<const QcloValue> values);
double median_qclo(std::span<const QcloValue> values);

struct SplitResult {
  Dataset hard;
  Dataset easy;
};

// Partitions by bucket, preserving article/paragraph structure; each output
// is standalone (contexts are duplicated as needed).
SplitResult split_dataset(const Dataset& ds, double threshold = kDefaultThreshold);

struct Histogram {
  double bin_width = kDefaultBinWidth;
  std::size_t total = 0;
  std::vector<std::size_t> counts;   // bin k covers [k*w, (k+1)*w); last closed
  std::vector<double> percents;

  std::size_t bin_count() const { return counts.size(); }
};

// Number of bins for a width that divides [0, 1] evenly; throws otherwise.
std::size_t bin_count_for_width(double bin_width);

// Exact bin index of a rational overlap value: floor(value * n_bins), with
// 1.0 falling into the last bin.
std::size_t bin_index(const QcloValue& v, std::size_t n_bins);

// Throws ValidationError on an empty dataset.
Histogram histogram(const Dataset& ds, double bin_width = kDefaultBinWidth);

}  // namespace qclo

#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qclo/corpus.hpp"
#include "qclo/overlap.hpp"

namespace qclo {

// id -> predicted answer (SQuAD official predictions format).
using PredictionSet = std::map<std::string, std::string>;

PredictionSet load_predictions(const std::filesystem::path& path);
void save_predictions(const PredictionSet& preds, const std::filesystem::path& path);

// 1 iff the normalized prediction equals any normalized gold.
int exact_match(std::string_view pred, std::span<const std::string> golds);

// Token-level F1 over normalized whitespace tokens (multiset overlap),
// maximized over golds. Empty vs empty scores 1, empty vs non-empty 0.
double f1(std::string_view pred, std::span<const std::string> golds);

struct BucketScores {
  std::size_t count = 0;
  std::optional<double> em;  // percent; empty bucket reports null, not 0
  std::optional<double> f1;
};

struct EvalReport {
  double threshold = kDefaultThreshold;
  BucketScores hard;
  BucketScores easy;
  BucketScores all;
  std::size_t skipped = 0;  // examples without predictions, when permitted
};

// Buckets every example by its overlap value and averages EM/F1 per bucket.
// A prediction id absent from the dataset is an error; a missing prediction
// is an error unless skip_missing is set.
EvalReport evaluate(const Dataset& ds, const PredictionSet& preds,
                    double threshold = kDefaultThreshold,
                    bool skip_missing = false);

std::string eval_report_json(const EvalReport& report);
std::string eval_report_csv(const EvalReport& report);

struct BleuScore {
  double bleu = 0.0;
  double precisions[4] = {0.0, 0.0, 0.0, 0.0};
  double brevity_penalty = 1.0;
  std::size_t candidate_length = 0;
  std::size_t reference_length = 0;
  std::size_t pair_count = 0;
};

// Corpus BLEU-4 with one reference per candidate: clipped modified n-gram
// precisions pooled over the corpus, geometric mean, brevity penalty
// exp(1 - r/c) when c < r. Any zero precision zeroes the score (no
// smoothing). Throws on length mismatch or an empty corpus.
BleuScore bleu4(const std::vector<std::vector<std::string>>& candidates,
                const std::vector<std::vector<std::string>>& references);

struct BleuBin {
  double lo = 0.0;
  double hi = 0.0;
  std::size_t count = 0;
  std::optional<BleuScore> score;  // null when the bin is empty
};

struct BleuReport {
  double bin_width = kDefaultBinWidth;
  std::vector<BleuBin> bins;
  BleuScore overall;
  std::size_t skipped = 0;
};

// Pairs each generated question with its reference by id, groups pairs by
// the QCLO bin of the *reference* question against its context, and scores
// corpus BLEU-4 within each bin. Token comparison is case-sensitive.
BleuReport bucketed_bleu(const Dataset& ds,
                         const std::map<std::string, std::string>& generated,
                         double bin_width = kDefaultBinWidth,
                         bool skip_missing = false);

std::string bleu_report_json(const BleuReport& report);
std::string bleu_report_csv(const BleuReport& report);

}  // namespace qclo

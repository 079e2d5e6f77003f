#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "qclo/corpus.hpp"
#include "qclo/eval.hpp"
#include "qclo/text.hpp"

namespace qclo {

// One scored answer candidate: a contiguous run of context tokens that
// neither starts nor ends with punctuation or a stopword.
struct SpanCandidate {
  std::size_t start_token = 0;
  std::size_t end_token = 0;  // inclusive
  int score = 0;
  std::string text;  // verbatim context substring covering the span
};

struct BaselineParams {
  std::size_t max_span_len = 4;
  std::size_t window = 10;
  unsigned threads = 1;
};

// Every valid span of 1..max_span_len context tokens, scored by the number
// of distinct non-stopword question token types found within `window` tokens
// of the span but outside it, minus 1 per span token that itself appears in
// the question. Returned in (start, length) order.
std::vector<SpanCandidate> candidate_spans(std::string_view context,
                                           std::string_view question,
                                           const StopwordSet& stopwords,
                                           std::size_t max_span_len = 4,
                                           std::size_t window = 10);

// Text of the highest-scoring candidate; ties go to the earliest start, then
// the shortest span. Returns an empty string when no span is valid.
std::string sliding_window_answer(std::string_view context,
                                  std::string_view question,
                                  const StopwordSet& stopwords,
                                  std::size_t max_span_len = 4,
                                  std::size_t window = 10);

// Answers every example in the dataset with the sliding-window heuristic.
// Deterministic for any thread count.
PredictionSet run_baseline(const Dataset& ds, const StopwordSet& stopwords,
                           const BaselineParams& params = {});

}  // namespace qclo

#include "qclo/baseline.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <unordered_map>
#include <unordered_set>

#include "qclo/parallel.hpp"
#include "qclo/unicode.hpp"

namespace qclo {

namespace {

// Per-question scoring state over one tokenized context. Distinct question
// keywords are numbered so a window's keyword coverage is a bitwise OR of
// per-position masks followed by a popcount.
struct SpanScorer {
  const std::vector<Token>& context_tokens;
  std::size_t window;
  std::size_t mask_words = 0;
  std::vector<std::uint64_t> keyword_masks;  // position-major, mask_words each
  std::vector<char> in_question;             // token lower appears in question

  SpanScorer(const std::vector<Token>& ctx_tokens, std::string_view question,
             const StopwordSet& stopwords, std::size_t window_size)
      : context_tokens(ctx_tokens), window(window_size) {
    std::unordered_map<std::string, std::size_t> keyword_ids;
    std::unordered_set<std::string> question_types;
    for (const Token& tok : tokenize(question)) {
      question_types.insert(tok.lower);
      if (!is_stopword(tok, stopwords)) {
        keyword_ids.emplace(tok.lower, keyword_ids.size());
      }
    }
    mask_words = (keyword_ids.size() + 63) / 64;
    keyword_masks.assign(context_tokens.size() * mask_words, 0);
    in_question.assign(context_tokens.size(), 0);
    for (std::size_t p = 0; p < context_tokens.size(); ++p) {
      const std::string& lower = context_tokens[p].lower;
      in_question[p] = question_types.count(lower) > 0;
      const auto it = keyword_ids.find(lower);
      if (it != keyword_ids.end()) {
        keyword_masks[p * mask_words + it->second / 64] |=
            std::uint64_t{1} << (it->second % 64);
      }
    }
  }

  // Score of the inclusive token span [s, e].
  int score(std::size_t s, std::size_t e) const {
    int penalty = 0;
    if (mask_words == 0) {
      for (std::size_t p = s; p <= e; ++p) penalty += in_question[p];
      return -penalty;
    }
    std::uint64_t seen[8] = {};  // enough words for 512 distinct keywords
    std::vector<std::uint64_t> big_seen;
    std::uint64_t* acc = seen;
    if (mask_words > 8) {
      big_seen.assign(mask_words, 0);
      acc = big_seen.data();
    }
    const std::size_t lo = s >= window ? s - window : 0;
    const std::size_t hi =
        std::min(context_tokens.size() - 1, e + window);
    for (std::size_t p = lo; p <= hi; ++p) {
      if (p >= s && p <= e) {
        penalty += in_question[p];
        continue;
      }
      for (std::size_t w = 0; w < mask_words; ++w) {
        acc[w] |= keyword_masks[p * mask_words + w];
      }
    }
    int hits = 0;
    for (std::size_t w = 0; w < mask_words; ++w) hits += std::popcount(acc[w]);
    return hits - penalty;
  }
};

std::string span_text(std::string_view context,
                      const unicode::Decoded& decoded,
                      const std::vector<Token>& tokens, std::size_t s,
                      std::size_t e) {
  const std::size_t from = decoded.byte_offsets[tokens[s].start];
  const std::size_t to = decoded.byte_offsets[tokens[e].end];
  return std::string(context.substr(from, to - from));
}

struct BestSpan {
  bool found = false;
  std::size_t start = 0;
  std::size_t end = 0;
  int score = 0;
};

// Shared enumeration: yields each valid span to `visit(s, e, score)`.
template <typename Visit>
void for_each_span(const std::vector<Token>& tokens,
                   const StopwordSet& stopwords, std::size_t max_span_len,
                   const SpanScorer& scorer, Visit&& visit) {
  std::vector<char> valid_edge(tokens.size());
  for (std::size_t p = 0; p < tokens.size(); ++p) {
    valid_edge[p] = !is_stopword(tokens[p], stopwords);
  }
  for (std::size_t s = 0; s < tokens.size(); ++s) {
    if (!valid_edge[s]) continue;
    const std::size_t last =
        std::min(tokens.size() - 1, s + max_span_len - 1);
    for (std::size_t e = s; e <= last; ++e) {
      if (!valid_edge[e]) continue;
      visit(s, e, scorer.score(s, e));
    }
  }
}

}  // namespace

std::vector<SpanCandidate> candidate_spans(std::string_view context,
                                           std::string_view question,
                                           const StopwordSet& stopwords,
                                           std::size_t max_span_len,
                                           std::size_t window) {
  std::vector<SpanCandidate> out;
  if (max_span_len == 0) return out;
  const unicode::Decoded decoded = unicode::decode_with_offsets(context);
  const std::vector<Token> tokens = tokenize(context);
  const SpanScorer scorer(tokens, question, stopwords, window);
  for_each_span(tokens, stopwords, max_span_len, scorer,
                [&](std::size_t s, std::size_t e, int score) {
                  out.push_back({s, e, score,
                                 span_text(context, decoded, tokens, s, e)});
                });
  return out;
}

std::string sliding_window_answer(std::string_view context,
                                  std::string_view question,
                                  const StopwordSet& stopwords,
                                  std::size_t max_span_len,
                                  std::size_t window) {
  if (max_span_len == 0) return "";
  const unicode::Decoded decoded = unicode::decode_with_offsets(context);
  const std::vector<Token> tokens = tokenize(context);
  const SpanScorer scorer(tokens, question, stopwords, window);
  BestSpan best;
  for_each_span(tokens, stopwords, max_span_len, scorer,
                [&](std::size_t s, std::size_t e, int score) {
                  // Enumeration is (start, length)-ordered, so strictly
                  // better scores are the only reason to switch.
                  if (!best.found || score > best.score) {
                    best = {true, s, e, score};
                  }
                });
  if (!best.found) return "";
  return span_text(context, decoded, tokens, best.start, best.end);
}

PredictionSet run_baseline(const Dataset& ds, const StopwordSet& stopwords,
                           const BaselineParams& params) {
  struct Task {
    const Context* context;
    const QAExample* example;
  };
  std::vector<Task> tasks;
  for (const Article& article : ds.articles) {
    for (const Context& ctx : article.paragraphs) {
      for (const QAExample& ex : ctx.examples) tasks.push_back({&ctx, &ex});
    }
  }
  std::vector<std::string> answers(tasks.size());
  parallel_for(tasks.size(), params.threads, [&](std::size_t i) {
    answers[i] =
        sliding_window_answer(tasks[i].context->text, tasks[i].example->question,
                              stopwords, params.max_span_len, params.window);
  });
  PredictionSet preds;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    preds[tasks[i].example->id] = std::move(answers[i]);
  }
  return preds;
}

}  // namespace qclo

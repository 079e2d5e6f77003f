#include "qclo/overlap.hpp"

#include <algorithm>
#include <cmath>

#include "qclo/errors.hpp"

namespace qclo {

bool qclo_less(const QcloValue& a, const QcloValue& b) {
  // Cross-multiplication; token counts are far below the overflow range.
  return a.numerator * b.denominator < b.numerator * a.denominator;
}

TokenTypeSet context_token_types(std::string_view context_text) {
  TokenTypeSet types;
  for (Token& tok : tokenize(context_text)) types.insert(std::move(tok.lower));
  return types;
}

QcloValue qclo_from_tokens(std::span<const Token> question_tokens,
                           const TokenTypeSet& context_types) {
  if (question_tokens.empty()) {
    throw ValidationError("qclo: question has no tokens");
  }
  QcloValue v;
  v.denominator = question_tokens.size();
  for (const Token& tok : question_tokens) {
    if (context_types.count(tok.lower) > 0) ++v.numerator;
  }
  return v;
}

QcloValue qclo(std::string_view question, std::string_view context) {
  const std::vector<Token> tokens = tokenize(question);
  return qclo_from_tokens(tokens, context_token_types(context));
}

Bucket bucket_of(const QcloValue& v, double threshold) {
  const double scaled = threshold * static_cast<double>(v.denominator);
  return static_cast<double>(v.numerator) > scaled ? Bucket::Easy : Bucket::Hard;
}

std::vector<QcloValue> dataset_qclo(const Dataset& ds) {
  std::vector<QcloValue> values;
  values.reserve(ds.example_count());
  for (const Article& article : ds.articles) {
    for (const Context& ctx : article.paragraphs) {
      if (ctx.examples.empty()) continue;
      const TokenTypeSet types = context_token_types(ctx.text);
      for (const QAExample& ex : ctx.examples) {
        const std::vector<Token> tokens = tokenize(ex.question);
        values.push_back(qclo_from_tokens(tokens, types));
      }
    }
  }
  return values;
}

double mean_qclo(std::span<const QcloValue> values) {
  if (values.empty()) return 0.0;
  double sum = 0.0;
  for (const QcloValue& v : values) sum += v.value();
  return sum / static_cast<double>(values.size());
}

double median_qclo(std::span<const QcloValue> values) {
  if (values.empty()) return 0.0;
  std::vector<QcloValue> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end(),
            [](const QcloValue& a, const QcloValue& b) { return qclo_less(a, b); });
  const std::size_t n = sorted.size();
  if (n % 2 == 1) return sorted[n / 2].value();
  return 0.5 * (sorted[n / 2 - 1].value() + sorted[n / 2].value());
}

SplitResult split_dataset(const Dataset& ds, double threshold) {
  SplitResult out;
  out.hard.name = ds.name + "-hard";
  out.easy.name = ds.name + "-easy";
  for (const Article& article : ds.articles) {
    Article hard_article{article.title, {}};
    Article easy_article{article.title, {}};
    for (const Context& ctx : article.paragraphs) {
      if (ctx.examples.empty()) continue;
      const TokenTypeSet types = context_token_types(ctx.text);
      Context hard_ctx{ctx.text, {}};
      Context easy_ctx{ctx.text, {}};
      for (const QAExample& ex : ctx.examples) {
        const std::vector<Token> tokens = tokenize(ex.question);
        const QcloValue v = qclo_from_tokens(tokens, types);
        (bucket_of(v, threshold) == Bucket::Hard ? hard_ctx : easy_ctx)
            .examples.push_back(ex);
      }
      if (!hard_ctx.examples.empty()) {
        hard_article.paragraphs.push_back(std::move(hard_ctx));
      }
      if (!easy_ctx.examples.empty()) {
        easy_article.paragraphs.push_back(std::move(easy_ctx));
      }
    }
    if (!hard_article.paragraphs.empty()) {
      out.hard.articles.push_back(std::move(hard_article));
    }
    if (!easy_article.paragraphs.empty()) {
      out.easy.articles.push_back(std::move(easy_article));
    }
  }
  return out;
}

std::size_t bin_count_for_width(double bin_width) {
  if (!(bin_width > 0.0) || bin_width > 1.0) {
    throw ValidationError("bin width must be in (0, 1]");
  }
  const double bins = 1.0 / bin_width;
  const double rounded = std::round(bins);
  if (std::abs(bins - rounded) > 1e-9 || rounded < 1.0) {
    throw ValidationError("bin width must divide 1 evenly");
  }
  return static_cast<std::size_t>(rounded);
}

std::size_t bin_index(const QcloValue& v, std::size_t n_bins) {
  // floor((num/den) * n_bins) in exact integer arithmetic.
  const std::size_t idx = v.numerator * n_bins / v.denominator;
  return idx < n_bins ? idx : n_bins - 1;  // value 1.0 closes the last bin
}

Histogram histogram(const Dataset& ds, double bin_width) {
  const std::size_t n_bins = bin_count_for_width(bin_width);
  const std::vector<QcloValue> values = dataset_qclo(ds);
  if (values.empty()) {
    throw ValidationError("histogram: dataset has no examples");
  }
  Histogram h;
  h.bin_width = bin_width;
  h.total = values.size();
  h.counts.assign(n_bins, 0);
  for (const QcloValue& v : values) ++h.counts[bin_index(v, n_bins)];
  h.percents.resize(n_bins);
  for (std::size_t i = 0; i < n_bins; ++i) {
    h.percents[i] =
        100.0 * static_cast<double>(h.counts[i]) / static_cast<double>(h.total);
  }
  return h;
}

}  // namespace qclo

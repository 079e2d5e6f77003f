#include "qclo/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <unordered_map>

#include "json.hpp"
#include "qclo/errors.hpp"
#include "qclo/io.hpp"
#include "qclo/text.hpp"

namespace qclo {

namespace {

std::vector<std::string> whitespace_tokens(const std::string& normalized) {
  std::vector<std::string> tokens;
  std::istringstream in(normalized);
  std::string tok;
  while (in >> tok) tokens.push_back(tok);
  return tokens;
}

double round2(double percent) { return std::round(percent * 100.0) / 100.0; }

std::string format_double(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), fmt, v);
  return buf;
}

}  // namespace

PredictionSet load_predictions(const std::filesystem::path& path) {
  const std::string raw = read_text_file(path);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(raw);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("malformed JSON in " + path.string() + " at byte " +
                     std::to_string(e.byte) + ": " + e.what());
  }
  if (!doc.is_object()) {
    throw ValidationError("predictions file must be a JSON object of id -> answer");
  }
  PredictionSet preds;
  for (const auto& [id, answer] : doc.items()) {
    if (!answer.is_string()) {
      throw ValidationError("prediction for '" + id + "' must be a string");
    }
    preds[id] = answer.get<std::string>();
  }
  return preds;
}

void save_predictions(const PredictionSet& preds, const std::filesystem::path& path) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::object();
  for (const auto& [id, answer] : preds) doc[id] = answer;
  atomic_write_file(path, doc.dump() + "\n");
}

int exact_match(std::string_view pred, std::span<const std::string> golds) {
  const std::string normalized = normalize_answer(pred);
  for (const std::string& gold : golds) {
    if (normalize_answer(gold) == normalized) return 1;
  }
  return 0;
}

namespace {

double f1_single(const std::vector<std::string>& pred_tokens,
                 const std::vector<std::string>& gold_tokens) {
  if (pred_tokens.empty() && gold_tokens.empty()) return 1.0;
  if (pred_tokens.empty() || gold_tokens.empty()) return 0.0;
  std::unordered_map<std::string, std::size_t> gold_counts;
  for (const std::string& tok : gold_tokens) ++gold_counts[tok];
  std::size_t common = 0;
  for (const std::string& tok : pred_tokens) {
    const auto it = gold_counts.find(tok);
    if (it != gold_counts.end() && it->second > 0) {
      --it->second;
      ++common;
    }
  }
  if (common == 0) return 0.0;
  const double precision =
      static_cast<double>(common) / static_cast<double>(pred_tokens.size());
  const double recall =
      static_cast<double>(common) / static_cast<double>(gold_tokens.size());
  return 2.0 * precision * recall / (precision + recall);
}

}  // namespace

double f1(std::string_view pred, std::span<const std::string> golds) {
  const std::vector<std::string> pred_tokens =
      whitespace_tokens(normalize_answer(pred));
  double best = 0.0;
  for (const std::string& gold : golds) {
    best = std::max(
        best, f1_single(pred_tokens, whitespace_tokens(normalize_answer(gold))));
  }
  return best;
}

EvalReport evaluate(const Dataset& ds, const PredictionSet& preds,
                    double threshold, bool skip_missing) {
  const std::vector<ExampleRef> refs = all_examples(ds);
  {
    std::unordered_map<std::string, bool> known;
    known.reserve(refs.size());
    for (const ExampleRef& ref : refs) known.emplace(ref.example->id, true);
    std::vector<std::string> unknown;
    for (const auto& [id, answer] : preds) {
      if (known.count(id) == 0) unknown.push_back("'" + id + "'");
    }
    if (!unknown.empty()) {
      std::string msg = "predictions reference unknown ids: ";
      for (std::size_t i = 0; i < unknown.size() && i < 20; ++i) {
        if (i > 0) msg += ", ";
        msg += unknown[i];
      }
      if (unknown.size() > 20) {
        msg += ", and " + std::to_string(unknown.size() - 20) + " more";
      }
      throw ValidationError(msg);
    }
  }

  EvalReport report;
  report.threshold = threshold;
  double em_sum[2] = {0.0, 0.0};  // hard, easy
  double f1_sum[2] = {0.0, 0.0};
  std::size_t counts[2] = {0, 0};

  for (const Article& article : ds.articles) {
    for (const Context& ctx : article.paragraphs) {
      if (ctx.examples.empty()) continue;
      const TokenTypeSet types = context_token_types(ctx.text);
      for (const QAExample& ex : ctx.examples) {
        const auto pred_it = preds.find(ex.id);
        if (pred_it == preds.end()) {
          if (!skip_missing) {
            throw ValidationError("missing prediction for '" + ex.id + "'");
          }
          ++report.skipped;
          continue;
        }
        const std::vector<Token> tokens = tokenize(ex.question);
        const QcloValue v = qclo_from_tokens(tokens, types);
        const std::size_t bucket =
            bucket_of(v, threshold) == Bucket::Hard ? 0 : 1;
        std::vector<std::string> golds;
        golds.reserve(ex.answers.size());
        for (const AnswerSpan& ans : ex.answers) golds.push_back(ans.text);
        em_sum[bucket] += exact_match(pred_it->second, golds);
        f1_sum[bucket] += f1(pred_it->second, golds);
        ++counts[bucket];
      }
    }
  }

  const auto fill = [](BucketScores& scores, std::size_t count, double em_total,
                       double f1_total) {
    scores.count = count;
    if (count > 0) {
      scores.em = 100.0 * em_total / static_cast<double>(count);
      scores.f1 = 100.0 * f1_total / static_cast<double>(count);
    }
  };
  fill(report.hard, counts[0], em_sum[0], f1_sum[0]);
  fill(report.easy, counts[1], em_sum[1], f1_sum[1]);
  fill(report.all, counts[0] + counts[1], em_sum[0] + em_sum[1],
       f1_sum[0] + f1_sum[1]);
  return report;
}

namespace {

nlohmann::ordered_json bucket_json(const BucketScores& scores) {
  nlohmann::ordered_json obj;
  obj["count"] = scores.count;
  obj["em"] = scores.em ? nlohmann::ordered_json(round2(*scores.em))
                        : nlohmann::ordered_json(nullptr);
  obj["f1"] = scores.f1 ? nlohmann::ordered_json(round2(*scores.f1))
                        : nlohmann::ordered_json(nullptr);
  return obj;
}

std::string bucket_csv_row(const char* name, const BucketScores& scores) {
  std::string row = name;
  row += "," + std::to_string(scores.count);
  row += ",";
  if (scores.em) row += format_double("%.2f", *scores.em);
  row += ",";
  if (scores.f1) row += format_double("%.2f", *scores.f1);
  row += "\n";
  return row;
}

}  // namespace

std::string eval_report_json(const EvalReport& report) {
  nlohmann::ordered_json doc;
  doc["threshold"] = report.threshold;
  doc["hard"] = bucket_json(report.hard);
  doc["easy"] = bucket_json(report.easy);
  doc["all"] = bucket_json(report.all);
  doc["skipped"] = report.skipped;
  return doc.dump(2) + "\n";
}

std::string eval_report_csv(const EvalReport& report) {
  std::string out = "bucket,count,em,f1\n";
  out += bucket_csv_row("hard", report.hard);
  out += bucket_csv_row("easy", report.easy);
  out += bucket_csv_row("all", report.all);
  return out;
}

BleuScore bleu4(const std::vector<std::vector<std::string>>& candidates,
                const std::vector<std::vector<std::string>>& references) {
  if (candidates.size() != references.size()) {
    throw ValidationError("bleu4: candidate and reference counts differ");
  }
  if (candidates.empty()) throw ValidationError("bleu4: empty corpus");

  BleuScore score;
  score.pair_count = candidates.size();
  std::size_t matches[4] = {0, 0, 0, 0};
  std::size_t totals[4] = {0, 0, 0, 0};

  const auto ngram_counts = [](const std::vector<std::string>& tokens,
                               std::size_t n) {
    std::unordered_map<std::string, std::size_t> counts;
    if (tokens.size() < n) return counts;
    for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
      std::string key;
      for (std::size_t k = 0; k < n; ++k) {
        if (k > 0) key.push_back('\x1F');
        key += tokens[i + k];
      }
      ++counts[key];
    }
    return counts;
  };

  for (std::size_t p = 0; p < candidates.size(); ++p) {
    const std::vector<std::string>& cand = candidates[p];
    const std::vector<std::string>& ref = references[p];
    score.candidate_length += cand.size();
    score.reference_length += ref.size();
    for (std::size_t n = 1; n <= 4; ++n) {
      if (cand.size() < n) continue;
      totals[n - 1] += cand.size() - n + 1;
      const auto ref_counts = ngram_counts(ref, n);
      for (const auto& [gram, count] : ngram_counts(cand, n)) {
        const auto it = ref_counts.find(gram);
        if (it != ref_counts.end()) {
          matches[n - 1] += std::min(count, it->second);
        }
      }
    }
  }

  bool any_zero = false;
  for (std::size_t n = 0; n < 4; ++n) {
    score.precisions[n] =
        totals[n] == 0 ? 0.0
                       : static_cast<double>(matches[n]) /
                             static_cast<double>(totals[n]);
    if (score.precisions[n] == 0.0) any_zero = true;
  }
  if (score.candidate_length < score.reference_length &&
      score.candidate_length > 0) {
    score.brevity_penalty =
        std::exp(1.0 - static_cast<double>(score.reference_length) /
                           static_cast<double>(score.candidate_length));
  }
  if (!any_zero) {
    double log_sum = 0.0;
    for (double p : score.precisions) log_sum += std::log(p);
    score.bleu = score.brevity_penalty * std::exp(log_sum / 4.0);
  }
  return score;
}

BleuReport bucketed_bleu(const Dataset& ds,
                         const std::map<std::string, std::string>& generated,
                         double bin_width, bool skip_missing) {
  const std::size_t n_bins = bin_count_for_width(bin_width);
  {
    std::unordered_map<std::string, bool> known;
    for (const ExampleRef& ref : all_examples(ds)) known.emplace(ref.example->id, true);
    std::vector<std::string> unknown;
    for (const auto& [id, question] : generated) {
      if (known.count(id) == 0) unknown.push_back("'" + id + "'");
    }
    if (!unknown.empty()) {
      std::string msg = "generated questions reference unknown ids: ";
      for (std::size_t i = 0; i < unknown.size() && i < 20; ++i) {
        if (i > 0) msg += ", ";
        msg += unknown[i];
      }
      throw ValidationError(msg);
    }
  }

  std::vector<std::vector<std::vector<std::string>>> bin_cands(n_bins);
  std::vector<std::vector<std::vector<std::string>>> bin_refs(n_bins);
  BleuReport report;
  report.bin_width = bin_width;

  const auto surfaces = [](std::string_view text) {
    std::vector<std::string> out;
    for (Token& tok : tokenize(text)) out.push_back(std::move(tok.surface));
    return out;
  };

  for (const Article& article : ds.articles) {
    for (const Context& ctx : article.paragraphs) {
      if (ctx.examples.empty()) continue;
      const TokenTypeSet types = context_token_types(ctx.text);
      for (const QAExample& ex : ctx.examples) {
        const auto gen_it = generated.find(ex.id);
        if (gen_it == generated.end()) {
          if (!skip_missing) {
            throw ValidationError("missing generated question for '" + ex.id + "'");
          }
          ++report.skipped;
          continue;
        }
        const std::vector<Token> ref_tokens = tokenize(ex.question);
        const QcloValue v = qclo_from_tokens(ref_tokens, types);
        const std::size_t bin = bin_index(v, n_bins);
        bin_cands[bin].push_back(surfaces(gen_it->second));
        bin_refs[bin].push_back(surfaces(ex.question));
      }
    }
  }

  std::vector<std::vector<std::string>> all_cands;
  std::vector<std::vector<std::string>> all_refs;
  report.bins.resize(n_bins);
  for (std::size_t b = 0; b < n_bins; ++b) {
    BleuBin& bin = report.bins[b];
    bin.lo = static_cast<double>(b) * bin_width;
    bin.hi = static_cast<double>(b + 1) * bin_width;
    bin.count = bin_cands[b].size();
    if (bin.count > 0) {
      bin.score = bleu4(bin_cands[b], bin_refs[b]);
      all_cands.insert(all_cands.end(), bin_cands[b].begin(), bin_cands[b].end());
      all_refs.insert(all_refs.end(), bin_refs[b].begin(), bin_refs[b].end());
    }
  }
  if (all_cands.empty()) {
    throw ValidationError("bucketed_bleu: no evaluable pairs");
  }
  report.overall = bleu4(all_cands, all_refs);
  return report;
}

namespace {

nlohmann::ordered_json bleu_score_json(const BleuScore& score) {
  nlohmann::ordered_json obj;
  obj["bleu"] = score.bleu;
  obj["p1"] = score.precisions[0];
  obj["p2"] = score.precisions[1];
  obj["p3"] = score.precisions[2];
  obj["p4"] = score.precisions[3];
  obj["brevity_penalty"] = score.brevity_penalty;
  obj["candidate_length"] = score.candidate_length;
  obj["reference_length"] = score.reference_length;
  obj["pairs"] = score.pair_count;
  return obj;
}

}  // namespace

std::string bleu_report_json(const BleuReport& report) {
  nlohmann::ordered_json doc;
  doc["bin_width"] = report.bin_width;
  nlohmann::ordered_json bins = nlohmann::ordered_json::array();
  for (const BleuBin& bin : report.bins) {
    nlohmann::ordered_json obj;
    obj["lo"] = bin.lo;
    obj["hi"] = bin.hi;
    obj["count"] = bin.count;
    obj["score"] = bin.score ? bleu_score_json(*bin.score)
                             : nlohmann::ordered_json(nullptr);
    bins.push_back(std::move(obj));
  }
  doc["bins"] = std::move(bins);
  doc["overall"] = bleu_score_json(report.overall);
  doc["skipped"] = report.skipped;
  return doc.dump(2) + "\n";
}

std::string bleu_report_csv(const BleuReport& report) {
  std::string out = "bin_lo,bin_hi,count,bleu,p1,p2,p3,p4,brevity_penalty\n";
  for (const BleuBin& bin : report.bins) {
    out += format_double("%.2f", bin.lo);
    out += "," + format_double("%.2f", bin.hi);
    out += "," + std::to_string(bin.count);
    if (bin.score) {
      out += "," + format_double("%.6f", bin.score->bleu);
      for (double p : bin.score->precisions) out += "," + format_double("%.6f", p);
      out += "," + format_double("%.6f", bin.score->brevity_penalty);
    } else {
      out += ",,,,,,";
    }
    out += "\n";
  }
  return out;
}

}  // namespace qclo

#include "qclo/augment.hpp"

#include <unordered_map>

#include "json.hpp"
#include "qclo/io.hpp"
#include "qclo/parallel.hpp"
#include "qclo/unicode.hpp"

namespace qclo {

std::vector<std::pair<std::size_t, Token>> overlapping_words(
    std::string_view question, std::string_view context) {
  const TokenTypeSet types = context_token_types(context);
  std::vector<std::pair<std::size_t, Token>> hits;
  std::vector<Token> tokens = tokenize(question);
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (types.count(tokens[i].lower) > 0) hits.emplace_back(i, std::move(tokens[i]));
  }
  return hits;
}

namespace {

std::string capitalize_first(std::string_view phrase) {
  const unicode::Decoded d = unicode::decode_with_offsets(phrase);
  if (d.code_points.empty()) return std::string(phrase);
  std::string out;
  unicode::append(out, unicode::to_upper(d.code_points.front()));
  out += phrase.substr(d.byte_offsets[1]);
  return out;
}

bool begins_uppercase(std::string_view surface) {
  const std::u32string cps = unicode::decode(surface);
  return !cps.empty() && unicode::is_upper(cps.front());
}

SubstitutionResult substitute_with_types(
    std::string_view question, const std::vector<Token>& tokens,
    const TokenTypeSet& context_types, const SynonymLexicon& lexicon,
    const StopwordSet& stopwords, const SeededChooser& chooser,
    std::string_view example_id) {
  // One synonym per overlapping word type, applied at every occurrence.
  std::unordered_map<std::string, std::string> chosen;
  for (const Token& tok : tokens) {
    if (tok.is_punct || stopwords.contains(tok.lower)) continue;
    if (context_types.count(tok.lower) == 0) continue;
    if (chosen.count(tok.lower) > 0) continue;
    std::vector<std::string> candidates;
    for (const std::string& phrase : lexicon.synonyms(tok.lower)) {
      if (phrase != tok.lower) candidates.push_back(phrase);
    }
    if (candidates.empty()) continue;
    chosen.emplace(tok.lower, chooser.choose(example_id, tok.lower, candidates));
  }

  SubstitutionResult result;
  if (chosen.empty()) {
    result.candidate_question = std::string(question);
    return result;
  }

  const unicode::Decoded d = unicode::decode_with_offsets(question);
  std::string rebuilt;
  std::size_t copied_bytes = 0;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const Token& tok = tokens[i];
    const auto it = chosen.find(tok.lower);
    if (it == chosen.end()) continue;
    const std::size_t lo = d.byte_offsets[tok.start];
    const std::size_t hi = d.byte_offsets[tok.end];
    rebuilt += question.substr(copied_bytes, lo - copied_bytes);
    rebuilt += begins_uppercase(tok.surface) ? capitalize_first(it->second)
                                             : it->second;
    copied_bytes = hi;
    result.replacements.push_back({i, tok.surface, it->second});
  }
  rebuilt += question.substr(copied_bytes);
  result.candidate_question = std::move(rebuilt);
  return result;
}

std::optional<AugmentedExample> augment_with_types(
    const QAExample& example, const TokenTypeSet& context_types,
    const SynonymLexicon& lexicon,
    const StopwordSet& stopwords, const SeededChooser& chooser,
    RejectReason* reason) {
  const auto set_reason = [&](RejectReason r) {
    if (reason != nullptr) *reason = r;
  };
  set_reason(RejectReason::none);

  const std::vector<Token> before_tokens = tokenize(example.question);
  const QcloValue before = qclo_from_tokens(before_tokens, context_types);

  SubstitutionResult sub =
      substitute_with_types(example.question, before_tokens, context_types,
                            lexicon, stopwords, chooser, example.id);
  if (sub.replacements.empty()) {
    set_reason(RejectReason::no_replacements);
    return std::nullopt;
  }

  const std::vector<Token> after_tokens = tokenize(sub.candidate_question);
  const QcloValue after = qclo_from_tokens(after_tokens, context_types);
  if (!qclo_less(after, before)) {
    set_reason(RejectReason::overlap_not_reduced);
    return std::nullopt;
  }

  AugmentedExample out;
  out.source_id = example.id;
  out.new_id = example.id + std::string(kSyntheticIdSuffix);
  out.new_question = std::move(sub.candidate_question);
  out.replacements = std::move(sub.replacements);
  out.qclo_before = before;
  out.qclo_after = after;
  return out;
}

}  // namespace

SubstitutionResult substitute(std::string_view question, std::string_view context,
                              const SynonymLexicon& lexicon,
                              const StopwordSet& stopwords,
                              const SeededChooser& chooser,
                              std::string_view example_id) {
  const std::vector<Token> tokens = tokenize(question);
  return substitute_with_types(question, tokens, context_token_types(context),
                               lexicon, stopwords, chooser, example_id);
}

std::optional<AugmentedExample> augment_example(const QAExample& example,
                                                std::string_view context_text,
                                                const SynonymLexicon& lexicon,
                                                const StopwordSet& stopwords,
                                                const SeededChooser& chooser,
                                                RejectReason* reason) {
  return augment_with_types(example, context_token_types(context_text),
                            lexicon, stopwords, chooser, reason);
}

AugmentResult augment_dataset(const Dataset& ds, const SynonymLexicon& lexicon,
                              const StopwordSet& stopwords, std::uint64_t seed,
                              unsigned threads) {
  const SeededChooser chooser(seed);

  // Contexts are shared by many questions; build each token-type set once.
  std::vector<const Context*> contexts;
  for (const Article& article : ds.articles) {
    for (const Context& ctx : article.paragraphs) contexts.push_back(&ctx);
  }
  std::vector<TokenTypeSet> type_sets(contexts.size());
  parallel_for(contexts.size(), threads, [&](std::size_t i) {
    if (!contexts[i]->examples.empty()) {
      type_sets[i] = context_token_types(contexts[i]->text);
    }
  });

  struct Task {
    const Context* context;
    const QAExample* example;
    std::size_t context_index;
  };
  std::vector<Task> tasks;
  tasks.reserve(ds.example_count());
  for (std::size_t ci = 0; ci < contexts.size(); ++ci) {
    for (const QAExample& ex : contexts[ci]->examples) {
      tasks.push_back({contexts[ci], &ex, ci});
    }
  }

  std::vector<std::optional<AugmentedExample>> outcomes(tasks.size());
  std::vector<RejectReason> reasons(tasks.size(), RejectReason::none);
  parallel_for(tasks.size(), threads, [&](std::size_t i) {
    outcomes[i] = augment_with_types(
        *tasks[i].example, type_sets[tasks[i].context_index], lexicon,
        stopwords, chooser, &reasons[i]);
  });

  AugmentResult result;
  result.synthetic.name = ds.name + "-syn";
  result.stats.attempted = tasks.size();

  double before_sum = 0.0;
  double after_sum = 0.0;
  std::size_t task_index = 0;
  for (const Article& article : ds.articles) {
    Article synth_article{article.title, {}};
    for (const Context& ctx : article.paragraphs) {
      Context synth_ctx{ctx.text, {}};
      for (const QAExample& ex : ctx.examples) {
        std::optional<AugmentedExample>& outcome = outcomes[task_index];
        const RejectReason reason = reasons[task_index];
        ++task_index;
        if (!outcome.has_value()) {
          if (reason == RejectReason::no_replacements) {
            ++result.stats.rejected_no_replacements;
          } else {
            ++result.stats.rejected_overlap_not_reduced;
          }
          continue;
        }
        ++result.stats.accepted;
        before_sum += outcome->qclo_before.value();
        after_sum += outcome->qclo_after.value();
        QAExample synth_ex;
        synth_ex.id = outcome->new_id;
        synth_ex.question = outcome->new_question;
        synth_ex.answers = ex.answers;
        synth_ctx.examples.push_back(std::move(synth_ex));
        result.audit.push_back(std::move(*outcome));
      }
      if (!synth_ctx.examples.empty()) {
        synth_article.paragraphs.push_back(std::move(synth_ctx));
      }
    }
    if (!synth_article.paragraphs.empty()) {
      result.synthetic.articles.push_back(std::move(synth_article));
    }
  }
  if (result.stats.accepted > 0) {
    result.stats.mean_qclo_before =
        before_sum / static_cast<double>(result.stats.accepted);
    result.stats.mean_qclo_after =
        after_sum / static_cast<double>(result.stats.accepted);
  }
  return result;
}

namespace {

nlohmann::ordered_json qclo_json(const QcloValue& v) {
  return {{"numerator", v.numerator},
          {"denominator", v.denominator},
          {"value", v.value()}};
}

}  // namespace

std::string audit_log_lines(const std::vector<AugmentedExample>& audit) {
  std::string out;
  for (const AugmentedExample& ex : audit) {
    nlohmann::ordered_json line;
    line["source_id"] = ex.source_id;
    line["new_id"] = ex.new_id;
    line["new_question"] = ex.new_question;
    nlohmann::ordered_json reps = nlohmann::ordered_json::array();
    for (const Replacement& rep : ex.replacements) {
      reps.push_back({{"token_index", rep.token_index},
                      {"original", rep.original_surface},
                      {"replacement", rep.chosen_phrase}});
    }
    line["replacements"] = std::move(reps);
    line["qclo_before"] = qclo_json(ex.qclo_before);
    line["qclo_after"] = qclo_json(ex.qclo_after);
    out += line.dump();
    out.push_back('\n');
  }
  return out;
}

void write_audit_log(const std::vector<AugmentedExample>& audit,
                     const std::filesystem::path& path) {
  atomic_write_file(path, audit_log_lines(audit));
}

std::string augment_stats_json(const AugmentStats& stats) {
  nlohmann::ordered_json doc;
  doc["attempted"] = stats.attempted;
  doc["accepted"] = stats.accepted;
  doc["rejected"] = stats.rejected();
  doc["rejected_no_replacements"] = stats.rejected_no_replacements;
  doc["rejected_overlap_not_reduced"] = stats.rejected_overlap_not_reduced;
  doc["acceptance_rate"] =
      stats.attempted == 0
          ? 0.0
          : static_cast<double>(stats.accepted) / static_cast<double>(stats.attempted);
  if (stats.accepted > 0) {
    doc["mean_qclo_before"] = stats.mean_qclo_before;
    doc["mean_qclo_after"] = stats.mean_qclo_after;
  } else {
    doc["mean_qclo_before"] = nullptr;
    doc["mean_qclo_after"] = nullptr;
  }
  return doc.dump(2) + "\n";
}

void write_augment_stats(const AugmentStats& stats,
                         const std::filesystem::path& path) {
  atomic_write_file(path, augment_stats_json(stats));
}

}  // namespace qclo

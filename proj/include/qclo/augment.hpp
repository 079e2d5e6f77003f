#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qclo/corpus.hpp"
#include "qclo/lexicon.hpp"
#include "qclo/overlap.hpp"
#include "qclo/text.hpp"

namespace qclo {

inline constexpr std::string_view kSyntheticIdSuffix = "-syn";

// One substituted occurrence. The chosen phrase is recorded in its canonical
// lowercase form; it never equals the folded original surface.
struct Replacement {
  std::size_t token_index = 0;
  std::string original_surface;
  std::string chosen_phrase;

  friend bool operator==(const Replacement&, const Replacement&) = default;
};

struct AugmentedExample {
  std::string source_id;
  std::string new_id;
  std::string new_question;
  std::vector<Replacement> replacements;
  QcloValue qclo_before;
  QcloValue qclo_after;
};

// Question tokens whose folded surface occurs among the context's token
// types, paired with their positions, in question order (one entry per
// occurrence).
std::vector<std::pair<std::size_t, Token>> overlapping_words(
    std::string_view question, std::string_view context);

struct SubstitutionResult {
  std::string candidate_question;
  std::vector<Replacement> replacements;
};

// Replaces every distinct overlapping word type that is neither a stopword
// nor punctuation with one synonym phrase, applied at every occurrence of
// the type. Words without synonyms are left alone. The phrase is spliced
// over the token's span (so surrounding spacing and punctuation survive) and
// its first letter is capitalized when the replaced surface began uppercase.
SubstitutionResult substitute(std::string_view question, std::string_view context,
                              const SynonymLexicon& lexicon,
                              const StopwordSet& stopwords,
                              const SeededChooser& chooser,
                              std::string_view example_id);

enum class RejectReason { none, no_replacements, overlap_not_reduced };

// One substitution attempt. Accepts only when at least one replacement was
// made and the overlap ratio strictly decreased.
std::optional<AugmentedExample> augment_example(const QAExample& example,
                                                std::string_view context_text,
                                                const SynonymLexicon& lexicon,
                                                const StopwordSet& stopwords,
                                                const SeededChooser& chooser,
                                                RejectReason* reason = nullptr);

struct AugmentStats {
  std::size_t attempted = 0;
  std::size_t accepted = 0;
  std::size_t rejected_no_replacements = 0;
  std::size_t rejected_overlap_not_reduced = 0;
  // Means over accepted examples; meaningful only when accepted > 0.
  double mean_qclo_before = 0.0;
  double mean_qclo_after = 0.0;

  std::size_t rejected() const {
    return rejected_no_replacements + rejected_overlap_not_reduced;
  }
};

struct AugmentResult {
  Dataset synthetic;  // mirrors the source structure, accepted examples only
  AugmentStats stats;
  std::vector<AugmentedExample> audit;  // accepted, in document order
};

// Attempts every example exactly once. Deterministic for fixed inputs and
// seed regardless of thread count.
AugmentResult augment_dataset(const Dataset& ds, const SynonymLexicon& lexicon,
                              const StopwordSet& stopwords, std::uint64_t seed,
                              unsigned threads = 1);

// JSON-lines audit log: one line per accepted example.
std::string audit_log_lines(const std::vector<AugmentedExample>& audit);
void write_audit_log(const std::vector<AugmentedExample>& audit,
                     const std::filesystem::path& path);

std::string augment_stats_json(const AugmentStats& stats);
void write_augment_stats(const AugmentStats& stats,
                         const std::filesystem::path& path);

}  // namespace qclo

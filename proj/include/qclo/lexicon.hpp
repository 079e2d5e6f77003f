#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace qclo {

// Lemma -> ordered list of lowercase synonym phrases. A list never contains
// its own lemma, never repeats a phrase, and phrases hold no punctuation.
class SynonymLexicon {
 public:
  using PhraseList = std::vector<std::string>;

  // Folds and tokenizes the phrase; drops it (returning false) when it is
  // empty, equals the lemma, repeats an existing entry, or contains
  // punctuation tokens.
  bool add(const std::string& lemma, std::string_view phrase);

  const PhraseList* find(const std::string& lemma_lower) const;

  // Lookup by surface form with a plural-stripping fallback.
  const PhraseList& synonyms(const std::string& surface_lower) const;

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  std::size_t dropped_phrases = 0;  // filtered during load
  std::size_t dropped_entries = 0;  // left empty after filtering

 private:
  std::unordered_map<std::string, PhraseList> entries_;
};

// JSON lines: {"word": <lemma>, "synonyms": [<phrase>, ...]}. Later lines for
// the same lemma extend its list. Throws ParseError with the line number.
SynonymLexicon load_lexicon(const std::filesystem::path& path);

// Two-entry lexicon used by tests and demos.
SynonymLexicon embedded_test_lexicon();

// Stateless uniform choice keyed by (seed, example id, word): independent of
// call order and thread interleaving, stable across platforms.
class SeededChooser {
 public:
  explicit SeededChooser(std::uint64_t global_seed) : seed_(global_seed) {}

  std::size_t pick_index(std::string_view example_id, std::string_view word,
                         std::size_t candidate_count) const;

  const std::string& choose(std::string_view example_id, std::string_view word,
                            std::span<const std::string> candidates) const;

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
};

}  // namespace qclo

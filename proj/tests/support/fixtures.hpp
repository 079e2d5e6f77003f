#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "qclo/corpus.hpp"
#include "qclo/lexicon.hpp"

namespace qclo::fixtures {

// Passage behind the four hand-counted overlap ratios 5/8, 4/14, 6/9, 7/11.
const std::string& ipod_context();

// Four questions against ipod_context(), with verbatim-span answers.
Dataset ipod_dataset();

// Two examples whose questions gain one synonym replacement each from
// embedded_test_lexicon() and are accepted with a lower overlap.
Dataset replacement_dataset();

// 20 examples over per-example vocabularies: half restate context keywords
// next to the answer (high overlap), half paraphrase them away (low
// overlap). Ids are "adj-N" (restating) and "par-N" (paraphrased).
Dataset trend_dataset();

struct RandomDatasetOptions {
  std::size_t examples = 50;
  std::size_t max_contexts = 8;      // examples are spread over these
  std::size_t context_words = 12;    // words per context
  std::size_t max_question_words = 9;
};

// Random well-formed dataset: ASCII word soup with verbatim answer spans.
// Questions mix context words (guaranteed overlap) with outside words.
Dataset random_dataset(std::mt19937_64& rng, const RandomDatasetOptions& opts = {});

// Lexicon over the random_dataset vocabulary. Roughly half the entries map
// to words no context contains (replacement lowers overlap), the rest map
// back into context vocabulary (replacement cannot lower it).
SynonymLexicon random_lexicon(std::mt19937_64& rng);

// Unique directory under the system temp root, removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path file(const std::string& name) const {
    return path_ / name;
  }

 private:
  std::filesystem::path path_;
};

}  // namespace qclo::fixtures

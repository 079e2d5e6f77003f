#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace qclo {

// One gold answer. answer_start is a 0-based code-point offset into the
// owning context, and context[answer_start .. answer_start+len(text)] must
// equal text exactly.
struct AnswerSpan {
  std::string text;
  std::size_t answer_start = 0;

  friend bool operator==(const AnswerSpan&, const AnswerSpan&) = default;
};

struct QAExample {
  std::string id;
  std::string question;
  std::vector<AnswerSpan> answers;

  friend bool operator==(const QAExample&, const QAExample&) = default;
};

struct Context {
  std::string text;
  std::vector<QAExample> examples;

  friend bool operator==(const Context&, const Context&) = default;
};

struct Article {
  std::string title;
  std::vector<Context> paragraphs;

  friend bool operator==(const Article&, const Article&) = default;
};

struct Dataset {
  std::string name;  // presentation only; not serialized
  std::vector<Article> articles;

  std::size_t example_count() const;
};

// Non-owning view pairing an example with its context, in document order.
struct ExampleRef {
  const Context* context = nullptr;
  const QAExample* example = nullptr;
};

std::vector<ExampleRef> all_examples(const Dataset& ds);

// Compares the article trees; dataset names are ignored.
bool structurally_equal(const Dataset& a, const Dataset& b);

// Throws ValidationError listing every offending example id: answer spans
// that do not match their context, duplicate ids, empty answer lists, empty
// contexts, questions with no tokens.
void validate_dataset(const Dataset& ds);

// Reads a SQuAD v1.1 JSON file and validates it. Malformed JSON raises
// ParseError with a byte offset; contract violations raise ValidationError.
Dataset load_dataset(const std::filesystem::path& path);

// Writes SQuAD v1.1 JSON (UTF-8, stable key order, atomic replace).
void save_dataset(const Dataset& ds, const std::filesystem::path& path);

// Unions two datasets with disjoint id sets into a single flat article whose
// example order is a seeded uniform permutation. Each example keeps a private
// copy of its context. Deterministic for a fixed seed.
Dataset merge_datasets(const Dataset& gold, const Dataset& synthetic,
                       std::uint64_t seed);

}  // namespace qclo

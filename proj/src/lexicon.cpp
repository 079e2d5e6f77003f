#include "qclo/lexicon.hpp"

#include <fstream>
#include <stdexcept>

#include "json.hpp"
#include "qclo/errors.hpp"
#include "qclo/text.hpp"
#include "qclo/unicode.hpp"

namespace qclo {

namespace {

// Canonical phrase form: case-folded word tokens joined by single spaces,
// or empty if the phrase contains punctuation or no word at all.
std::string canonical_phrase(std::string_view phrase) {
  std::string result;
  for (const Token& tok : tokenize(unicode::lower(phrase))) {
    if (tok.is_punct) return {};
    if (!result.empty()) result.push_back(' ');
    result += tok.surface;
  }
  return result;
}

}  // namespace

bool SynonymLexicon::add(const std::string& lemma, std::string_view phrase) {
  std::string canon = canonical_phrase(phrase);
  if (canon.empty() || canon == lemma) {
    ++dropped_phrases;
    return false;
  }
  PhraseList& list = entries_[lemma];
  for (const std::string& existing : list) {
    if (existing == canon) {
      ++dropped_phrases;
      return false;
    }
  }
  list.push_back(std::move(canon));
  return true;
}

const SynonymLexicon::PhraseList* SynonymLexicon::find(
    const std::string& lemma_lower) const {
  const auto it = entries_.find(lemma_lower);
  return it == entries_.end() ? nullptr : &it->second;
}

const SynonymLexicon::PhraseList& SynonymLexicon::synonyms(
    const std::string& surface_lower) const {
  static const PhraseList kEmpty;
  if (const PhraseList* list = find(surface_lower)) return *list;
  const std::string lemma = simple_lemma(surface_lower);
  if (lemma != surface_lower) {
    if (const PhraseList* list = find(lemma)) return *list;
  }
  return kEmpty;
}

SynonymLexicon load_lexicon(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open lexicon file: " + path.string());

  SynonymLexicon lex;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;

    nlohmann::json entry;
    try {
      entry = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError("lexicon " + path.string() + " line " +
                       std::to_string(line_no) + ": " + e.what());
    }
    const auto bad = [&](const char* what) {
      return ParseError("lexicon " + path.string() + " line " +
                        std::to_string(line_no) + ": " + what);
    };
    if (!entry.is_object()) throw bad("expected a JSON object");
    const auto word_it = entry.find("word");
    if (word_it == entry.end() || !word_it->is_string()) {
      throw bad("missing string key 'word'");
    }
    const auto syn_it = entry.find("synonyms");
    if (syn_it == entry.end() || !syn_it->is_array()) {
      throw bad("missing array key 'synonyms'");
    }
    const std::string lemma = canonical_phrase(word_it->get<std::string>());
    if (lemma.empty()) throw bad("'word' is empty or punctuation");

    bool added = false;
    for (const nlohmann::json& phrase : *syn_it) {
      if (!phrase.is_string()) throw bad("'synonyms' entries must be strings");
      added |= lex.add(lemma, phrase.get<std::string>());
    }
    if (!added && lex.find(lemma) == nullptr) ++lex.dropped_entries;
  }
  return lex;
}

SynonymLexicon embedded_test_lexicon() {
  SynonymLexicon lex;
  lex.add("heresy", "heterodoxy");
  lex.add("document", "text file");
  return lex;
}

namespace {

std::uint64_t fnv1a_bytes(std::uint64_t h, const void* data, std::size_t n) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 0x100000001B3ULL;
  }
  return h;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

std::size_t SeededChooser::pick_index(std::string_view example_id,
                                      std::string_view word,
                                      std::size_t candidate_count) const {
  if (candidate_count == 0) {
    throw std::invalid_argument("SeededChooser: empty candidate list");
  }
  unsigned char seed_bytes[8];
  for (int i = 0; i < 8; ++i) {
    seed_bytes[i] = static_cast<unsigned char>((seed_ >> (8 * i)) & 0xFF);
  }
  std::uint64_t h = 0xCBF29CE484222325ULL;  // FNV offset basis
  h = fnv1a_bytes(h, seed_bytes, sizeof(seed_bytes));
  h = fnv1a_bytes(h, example_id.data(), example_id.size());
  const unsigned char sep = 0x1F;
  h = fnv1a_bytes(h, &sep, 1);
  h = fnv1a_bytes(h, word.data(), word.size());
  h = splitmix64(h);
  // Map the hash to [0, n) by taking the high bits of a 128-bit product.
  return static_cast<std::size_t>(
      (static_cast<unsigned __int128>(h) * candidate_count) >> 64);
}

const std::string& SeededChooser::choose(
    std::string_view example_id, std::string_view word,
    std::span<const std::string> candidates) const {
  return candidates[pick_index(example_id, word, candidates.size())];
}

}  // namespace qclo

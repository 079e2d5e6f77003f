#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace qclo {

// One token. Offsets are code-point positions into the source string.
struct Token {
  std::string surface;
  std::string lower;  // case-folded surface
  bool is_punct = false;
  std::size_t start = 0;
  std::size_t end = 0;

  friend bool operator==(const Token&, const Token&) = default;
};

// Splits text into word tokens (maximal runs of letters/digits, keeping an
// apostrophe or hyphen inside a word when it joins two alphanumerics) and
// single-code-point punctuation tokens. Whitespace is never a token.
std::vector<Token> tokenize(std::string_view text);

struct StopwordSet {
  std::unordered_set<std::string> entries;

  bool contains(const std::string& lower_word) const {
    return entries.count(lower_word) > 0;
  }
};

// Embedded list of English function words: articles, prepositions,
// conjunctions, pronouns, auxiliaries, wh-words, frequent adverbs.
const StopwordSet& default_stopwords();

// One word per line, UTF-8; blank lines and `#` comments are skipped.
// Entries are case-folded on load. Throws if the file yields no entries.
StopwordSet load_stopwords(const std::filesystem::path& path);

// Punctuation has no synonyms, so punctuation tokens count as stopwords.
bool is_stopword(const Token& token, const StopwordSet& stopwords);

// Strips one English plural suffix: "ies" -> "y" (length > 4), "es" after a
// sibilant stem, else a bare "s" (length > 3, not "ss"). Otherwise identity.
std::string simple_lemma(std::string_view word);

// SQuAD-style answer normalization: lowercase, drop punctuation code points,
// drop the articles a/an/the as whole tokens, collapse whitespace, trim.
std::string normalize_answer(std::string_view text);

}  // namespace qclo

#include "qclo/text.hpp"

#include <fstream>
#include <sstream>

#include "qclo/errors.hpp"
#include "qclo/unicode.hpp"

namespace qclo {

namespace {

// Joins two alphanumerics into one word token ("don't", "state-of", 1973–74).
bool is_joiner(char32_t cp) {
  switch (cp) {
    case U'\'':
    case U'-':
    case 0x2010:  // hyphen
    case 0x2011:  // non-breaking hyphen
    case 0x2013:  // en dash
    case 0x2019:  // right single quotation mark
      return true;
    default:
      return false;
  }
}

std::string fold(std::u32string_view cps) {
  std::u32string lowered(cps);
  for (char32_t& cp : lowered) cp = unicode::to_lower(cp);
  return unicode::encode(lowered);
}

}  // namespace

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  const unicode::Decoded d = unicode::decode_with_offsets(text);
  const std::u32string& cps = d.code_points;
  const std::size_t n = cps.size();

  std::size_t i = 0;
  while (i < n) {
    if (unicode::is_space(cps[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    bool punct = false;
    if (unicode::is_word(cps[i])) {
      ++j;
      while (j < n) {
        if (unicode::is_word(cps[j])) {
          ++j;
        } else if (is_joiner(cps[j]) && j + 1 < n && unicode::is_word(cps[j + 1])) {
          j += 2;
        } else {
          break;
        }
      }
    } else {
      j = i + 1;  // one punctuation code point per token
      punct = true;
    }
    Token tok;
    tok.surface = std::string(
        text.substr(d.byte_offsets[i], d.byte_offsets[j] - d.byte_offsets[i]));
    tok.lower = fold(std::u32string_view(cps).substr(i, j - i));
    tok.is_punct = punct;
    tok.start = i;
    tok.end = j;
    tokens.push_back(std::move(tok));
    i = j;
  }
  return tokens;
}

namespace {

constexpr const char* kDefaultStopwords[] = {
    "a", "about", "above", "after", "again", "against", "all", "almost",
    "already", "also", "although", "always", "am", "among", "an", "and",
    "another", "any", "anything", "are", "aren't", "around", "as", "at", "be",
    "because", "been", "before", "being", "below", "between", "both", "but",
    "by", "can", "cannot", "can't", "could", "couldn't", "did", "didn't", "do",
    "does", "doesn't", "doing", "done", "don't", "down", "during", "each",
    "either", "else", "ever", "every", "few", "for", "from", "further", "had",
    "hadn't", "has", "hasn't", "have", "haven't", "having", "he", "he'd",
    "he'll", "her", "here", "here's", "hers", "herself", "he's", "him",
    "himself", "his", "how", "however", "how's", "i", "i'd", "if", "i'll",
    "i'm", "in", "into", "is", "isn't", "it", "its", "it's", "itself", "i've",
    "just", "least", "less", "let's", "mainly", "many", "may", "me", "might",
    "more", "most", "much", "must", "mustn't", "my", "myself", "neither",
    "never", "no", "nor", "not", "now", "of", "off", "often", "on", "once",
    "only", "onto", "or", "other", "ought", "our", "ours", "ourselves", "out",
    "over", "own", "per", "quite", "rather", "really", "same", "shall",
    "shan't", "she", "she'd", "she'll", "she's", "should", "shouldn't",
    "since", "so", "some", "something", "still", "such", "than", "that",
    "that's", "the", "their", "theirs", "them", "themselves", "then", "there",
    "there's", "these", "they", "they'd", "they'll", "they're", "they've",
    "this", "those", "through", "to", "too", "under", "until", "up", "upon",
    "us", "very", "was", "wasn't", "we", "we'd", "we'll", "we're", "were",
    "weren't", "we've", "what", "what's", "when", "when's", "where",
    "where's", "whether", "which", "while", "who", "whom", "who's", "whose",
    "why", "why's", "will", "with", "within", "without", "won't", "would",
    "wouldn't", "yet", "you", "you'd", "you'll", "your", "you're", "yours",
    "yourself", "yourselves", "you've",
};

}  // namespace

const StopwordSet& default_stopwords() {
  static const StopwordSet set = [] {
    StopwordSet s;
    for (const char* w : kDefaultStopwords) s.entries.insert(w);
    return s;
  }();
  return set;
}

StopwordSet load_stopwords(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open stopword file: " + path.string());
  StopwordSet set;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string word;
    while (fields >> word) set.entries.insert(unicode::lower(word));
  }
  if (set.entries.empty()) {
    throw ValidationError("stopword file has no entries: " + path.string());
  }
  return set;
}

bool is_stopword(const Token& token, const StopwordSet& stopwords) {
  return token.is_punct || stopwords.contains(token.lower);
}

std::string simple_lemma(std::string_view word) {
  const auto ends_with = [&](std::string_view suffix) {
    return word.size() >= suffix.size() &&
           word.substr(word.size() - suffix.size()) == suffix;
  };
  if (word.size() > 4 && ends_with("ies")) {
    return std::string(word.substr(0, word.size() - 3)) + "y";
  }
  if (ends_with("es")) {
    std::string_view stem = word.substr(0, word.size() - 2);
    const auto stem_ends = [&](std::string_view s) {
      return stem.size() >= s.size() && stem.substr(stem.size() - s.size()) == s;
    };
    if (stem_ends("s") || stem_ends("x") || stem_ends("z") || stem_ends("ch") ||
        stem_ends("sh")) {
      return std::string(stem);
    }
  }
  if (word.size() > 3 && ends_with("s") && !ends_with("ss")) {
    return std::string(word.substr(0, word.size() - 1));
  }
  return std::string(word);
}

std::string normalize_answer(std::string_view text) {
  std::u32string kept;
  for (char32_t cp : unicode::decode(text)) {
    cp = unicode::to_lower(cp);
    if (!unicode::is_punct(cp)) kept.push_back(cp);
  }
  std::string result;
  std::u32string word;
  const auto flush = [&] {
    if (word.empty()) return;
    if (word != U"a" && word != U"an" && word != U"the") {
      if (!result.empty()) result.push_back(' ');
      result += unicode::encode(word);
    }
    word.clear();
  };
  for (char32_t cp : kept) {
    if (unicode::is_space(cp)) {
      flush();
    } else {
      word.push_back(cp);
    }
  }
  flush();
  return result;
}

}  // namespace qclo

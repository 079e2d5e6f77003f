#include "qclo/corpus.hpp"

#include <random>
#include <unordered_set>
#include <utility>

#include "json.hpp"
#include "qclo/errors.hpp"
#include "qclo/io.hpp"
#include "qclo/text.hpp"
#include "qclo/unicode.hpp"

namespace qclo {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::string join_issues(const std::vector<std::string>& issues) {
  constexpr std::size_t kMaxListed = 20;
  std::string msg;
  const std::size_t shown = issues.size() < kMaxListed ? issues.size() : kMaxListed;
  for (std::size_t i = 0; i < shown; ++i) {
    if (i > 0) msg += "; ";
    msg += issues[i];
  }
  if (issues.size() > shown) {
    msg += "; and " + std::to_string(issues.size() - shown) + " more";
  }
  return msg;
}

const json& require(const json& obj, const char* key, const std::string& where) {
  const auto it = obj.find(key);
  if (it == obj.end()) {
    throw ValidationError(where + ": missing key '" + key + "'");
  }
  return *it;
}

std::string require_string(const json& obj, const char* key, const std::string& where) {
  const json& v = require(obj, key, where);
  if (!v.is_string()) {
    throw ValidationError(where + ": key '" + key + "' must be a string");
  }
  return v.get<std::string>();
}

}  // namespace

std::size_t Dataset::example_count() const {
  std::size_t n = 0;
  for (const Article& article : articles) {
    for (const Context& ctx : article.paragraphs) n += ctx.examples.size();
  }
  return n;
}

std::vector<ExampleRef> all_examples(const Dataset& ds) {
  std::vector<ExampleRef> refs;
  refs.reserve(ds.example_count());
  for (const Article& article : ds.articles) {
    for (const Context& ctx : article.paragraphs) {
      for (const QAExample& ex : ctx.examples) refs.push_back({&ctx, &ex});
    }
  }
  return refs;
}

bool structurally_equal(const Dataset& a, const Dataset& b) {
  return a.articles == b.articles;
}

void validate_dataset(const Dataset& ds) {
  std::vector<std::string> issues;
  std::unordered_set<std::string> seen_ids;
  for (const Article& article : ds.articles) {
    for (const Context& ctx : article.paragraphs) {
      if (ctx.text.empty() && !ctx.examples.empty()) {
        issues.push_back("empty context owning example '" +
                         ctx.examples.front().id + "'");
      }
      const unicode::Decoded decoded = unicode::decode_with_offsets(ctx.text);
      const std::size_t ctx_len = decoded.code_points.size();
      for (const QAExample& ex : ctx.examples) {
        if (!seen_ids.insert(ex.id).second) {
          issues.push_back("duplicate id '" + ex.id + "'");
        }
        if (ex.answers.empty()) {
          issues.push_back("no answers for '" + ex.id + "'");
        }
        if (tokenize(ex.question).empty()) {
          issues.push_back("question of '" + ex.id + "' has no tokens");
        }
        for (const AnswerSpan& ans : ex.answers) {
          const std::size_t len = unicode::length(ans.text);
          if (ans.answer_start + len > ctx_len) {
            issues.push_back("answer span of '" + ex.id + "' is out of range");
            continue;
          }
          const std::size_t lo = decoded.byte_offsets[ans.answer_start];
          const std::size_t hi = decoded.byte_offsets[ans.answer_start + len];
          if (ctx.text.compare(lo, hi - lo, ans.text) != 0) {
            issues.push_back("answer span mismatch for '" + ex.id + "'");
          }
        }
      }
    }
  }
  if (!issues.empty()) {
    throw ValidationError("dataset validation failed: " + join_issues(issues));
  }
}

Dataset load_dataset(const std::filesystem::path& path) {
  const std::string raw = read_text_file(path);
  json doc;
  try {
    doc = json::parse(raw);
  } catch (const json::parse_error& e) {
    throw ParseError("malformed JSON in " + path.string() + " at byte " +
                     std::to_string(e.byte) + ": " + e.what());
  }

  if (!doc.is_object()) throw ValidationError("top level must be a JSON object");
  const json& data = require(doc, "data", "top level");
  if (!data.is_array()) throw ValidationError("'data' must be an array");

  Dataset ds;
  ds.name = path.stem().string();
  ds.articles.reserve(data.size());
  std::size_t ai = 0;
  for (const json& entry : data) {
    const std::string where = "data[" + std::to_string(ai++) + "]";
    if (!entry.is_object()) throw ValidationError(where + ": must be an object");
    Article article;
    article.title = require_string(entry, "title", where);
    const json& paragraphs = require(entry, "paragraphs", where);
    if (!paragraphs.is_array()) {
      throw ValidationError(where + ".paragraphs: must be an array");
    }
    std::size_t pi = 0;
    for (const json& para : paragraphs) {
      const std::string pwhere = where + ".paragraphs[" + std::to_string(pi++) + "]";
      if (!para.is_object()) throw ValidationError(pwhere + ": must be an object");
      Context ctx;
      ctx.text = require_string(para, "context", pwhere);
      const json& qas = require(para, "qas", pwhere);
      if (!qas.is_array()) throw ValidationError(pwhere + ".qas: must be an array");
      std::size_t qi = 0;
      for (const json& qa : qas) {
        const std::string qwhere = pwhere + ".qas[" + std::to_string(qi++) + "]";
        if (!qa.is_object()) throw ValidationError(qwhere + ": must be an object");
        QAExample ex;
        ex.id = require_string(qa, "id", qwhere);
        ex.question = require_string(qa, "question", qwhere);
        const json& answers = require(qa, "answers", qwhere);
        if (!answers.is_array()) {
          throw ValidationError(qwhere + ".answers: must be an array");
        }
        for (const json& ans : answers) {
          if (!ans.is_object()) {
            throw ValidationError(qwhere + ".answers: entries must be objects");
          }
          AnswerSpan span;
          span.text = require_string(ans, "text", qwhere + ".answers");
          const json& start = require(ans, "answer_start", qwhere + ".answers");
          if (!start.is_number_integer() || start.get<std::int64_t>() < 0) {
            throw ValidationError(qwhere +
                                  ".answers: 'answer_start' must be a non-negative integer");
          }
          span.answer_start = start.get<std::uint64_t>();
          ex.answers.push_back(std::move(span));
        }
        ctx.examples.push_back(std::move(ex));
      }
      article.paragraphs.push_back(std::move(ctx));
    }
    ds.articles.push_back(std::move(article));
  }

  validate_dataset(ds);
  return ds;
}

void save_dataset(const Dataset& ds, const std::filesystem::path& path) {
  ordered_json doc;
  doc["version"] = "1.1";
  ordered_json data = ordered_json::array();
  for (const Article& article : ds.articles) {
    ordered_json entry;
    entry["title"] = article.title;
    ordered_json paragraphs = ordered_json::array();
    for (const Context& ctx : article.paragraphs) {
      ordered_json para;
      para["context"] = ctx.text;
      ordered_json qas = ordered_json::array();
      for (const QAExample& ex : ctx.examples) {
        ordered_json qa;
        qa["id"] = ex.id;
        qa["question"] = ex.question;
        ordered_json answers = ordered_json::array();
        for (const AnswerSpan& ans : ex.answers) {
          ordered_json a;
          a["text"] = ans.text;
          a["answer_start"] = ans.answer_start;
          answers.push_back(std::move(a));
        }
        qa["answers"] = std::move(answers);
        qas.push_back(std::move(qa));
      }
      para["qas"] = std::move(qas);
      paragraphs.push_back(std::move(para));
    }
    entry["paragraphs"] = std::move(paragraphs);
    data.push_back(std::move(entry));
  }
  doc["data"] = std::move(data);
  atomic_write_file(path, doc.dump() + "\n");
}

namespace detail {

// Unbiased draw in [0, n); fully determined by the generator stream.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t threshold = (0 - n) % n;
  for (;;) {
    const std::uint64_t r = rng();
    if (r >= threshold) return r % n;
  }
}

}  // namespace detail

Dataset merge_datasets(const Dataset& gold, const Dataset& synthetic,
                       std::uint64_t seed) {
  std::unordered_set<std::string> gold_ids;
  for (const ExampleRef& ref : all_examples(gold)) gold_ids.insert(ref.example->id);
  std::vector<std::string> collisions;
  for (const ExampleRef& ref : all_examples(synthetic)) {
    if (gold_ids.count(ref.example->id) > 0) collisions.push_back("'" + ref.example->id + "'");
  }
  if (!collisions.empty()) {
    throw ValidationError("merge id collisions: " + join_issues(collisions));
  }

  std::vector<ExampleRef> pool = all_examples(gold);
  {
    std::vector<ExampleRef> synth = all_examples(synthetic);
    pool.insert(pool.end(), synth.begin(), synth.end());
  }

  std::mt19937_64 rng(seed);
  for (std::size_t i = pool.size(); i > 1; --i) {
    const std::size_t j = detail::bounded(rng, i);
    std::swap(pool[i - 1], pool[j]);
  }

  Dataset merged;
  merged.name = gold.name + "+" + synthetic.name;
  Article article;
  article.title = merged.name;
  article.paragraphs.reserve(pool.size());
  for (const ExampleRef& ref : pool) {
    Context ctx;
    ctx.text = ref.context->text;
    ctx.examples.push_back(*ref.example);
    article.paragraphs.push_back(std::move(ctx));
  }
  merged.articles.push_back(std::move(article));
  return merged;
}

}  // namespace qclo

#include "fixtures.hpp"

#include <atomic>
#include <stdexcept>

namespace qclo::fixtures {

namespace {

AnswerSpan span_at(const std::string& context, const std::string& text) {
  const std::size_t pos = context.find(text);
  if (pos == std::string::npos) {
    throw std::logic_error("fixture answer not found in its context");
  }
  return {text, pos};  // contexts here are ASCII: byte offset == code point
}

}  // namespace

const std::string& ipod_context() {
  static const std::string text =
      "Besides earning a reputation as a respected entertainment device, the "
      "iPod has also been accepted as a business device. Government "
      "departments, major institutions and international organisations have "
      "turned to the iPod line as a delivery mechanism for business "
      "communication and training, such as the Royal and Western Infirmaries "
      "in Glasgow, Scotland, where iPods are used to train new staff.";
  return text;
}

Dataset ipod_dataset() {
  const std::string& ctx = ipod_context();
  Context paragraph{ctx, {}};
  paragraph.examples = {
      {"ipod-q1",
       "Where is Royal and Western Infirmaries located?",
       {span_at(ctx, "Glasgow, Scotland")}},
      {"ipod-q2",
       "Aside from recreational use, in what other arena have iPods found "
       "use?",
       {span_at(ctx, "business")}},
      {"ipod-q3",
       "Where is the Royal and Western Infirmaries located?",
       {span_at(ctx, "Glasgow, Scotland")}},
      {"ipod-q4",
       "The iPod has been accepted as what kind of device?",
       {span_at(ctx, "business device")}},
  };
  Dataset ds;
  ds.name = "ipod";
  ds.articles.push_back({"iPod", {std::move(paragraph)}});
  return ds;
}

Dataset replacement_dataset() {
  const std::string ctx1 =
      "Heresy is mainly at odds with orthodox doctrine, and the church "
      "treated heresy as a grave offence.";
  const std::string ctx2 =
      "About 400,000 documents remain classified by the government.";
  Dataset ds;
  ds.name = "replacement";
  ds.articles.push_back(
      {"replacement",
       {{ctx1,
         {{"rep-q1",
           "What is heresy mainly at odds with?",
           {span_at(ctx1, "orthodox doctrine")}}}},
        {ctx2,
         {{"rep-q2",
           "How many documents remain classified?",
           {span_at(ctx2, "400,000")}}}}}});
  return ds;
}

Dataset trend_dataset() {
  Dataset ds;
  ds.name = "trend";
  Article article{"trend", {}};
  for (int n = 0; n < 10; ++n) {
    const std::string town = "Ashvale" + std::to_string(n);
    const std::string ctx =
        "The harvest festival is held in " + town + " every spring.";
    Context paragraph{ctx, {}};
    // Restates the context wording; the town is the only nearby non-question
    // word, so the window scorer finds it.
    paragraph.examples.push_back(
        {"adj-" + std::to_string(n),
         "Where is the harvest festival held every spring?",
         {span_at(ctx, town)}});
    // Same gold span behind a paraphrase that shares no content word with
    // the passage.
    paragraph.examples.push_back(
        {"par-" + std::to_string(n),
         "Which town hosts that big yearly celebration?",
         {span_at(ctx, town)}});
    article.paragraphs.push_back(std::move(paragraph));
  }
  ds.articles.push_back(std::move(article));
  return ds;
}

namespace {

std::string pool_word(const char* prefix, std::size_t i) {
  return prefix + std::to_string(i);
}

constexpr std::size_t kContextPool = 40;
constexpr std::size_t kOutsidePool = 20;

}  // namespace

Dataset random_dataset(std::mt19937_64& rng, const RandomDatasetOptions& opts) {
  Dataset ds;
  ds.name = "random";
  Article article{"random", {}};

  const std::size_t n_contexts =
      std::max<std::size_t>(1, std::min(opts.max_contexts, opts.examples));
  struct BuiltContext {
    std::vector<std::string> words;
    std::vector<std::size_t> starts;  // byte offset of each word
    std::string text;
  };
  std::vector<BuiltContext> built(n_contexts);
  std::uniform_int_distribution<std::size_t> context_word(0, kContextPool - 1);
  for (BuiltContext& bc : built) {
    for (std::size_t w = 0; w < opts.context_words; ++w) {
      if (w > 0) bc.text += " ";
      bc.starts.push_back(bc.text.size());
      bc.words.push_back(pool_word("cw", context_word(rng)));
      bc.text += bc.words.back();
    }
    bc.text += ".";
  }

  std::vector<Context> paragraphs(n_contexts);
  for (std::size_t c = 0; c < n_contexts; ++c) {
    paragraphs[c].text = built[c].text;
  }

  std::uniform_int_distribution<std::size_t> outside_word(0, kOutsidePool - 1);
  std::uniform_int_distribution<std::size_t> question_len(
      3, std::max<std::size_t>(3, opts.max_question_words));
  std::bernoulli_distribution from_context(0.5);
  for (std::size_t i = 0; i < opts.examples; ++i) {
    const std::size_t c = i % n_contexts;
    const BuiltContext& bc = built[c];

    std::string question;
    const std::size_t len = question_len(rng);
    std::uniform_int_distribution<std::size_t> word_index(0, bc.words.size() - 1);
    for (std::size_t w = 0; w < len; ++w) {
      if (w > 0) question += " ";
      question += from_context(rng) ? bc.words[word_index(rng)]
                                    : pool_word("ow", outside_word(rng));
    }
    question += "?";

    const std::size_t first = word_index(rng);
    std::uniform_int_distribution<std::size_t> span_len(
        1, std::min<std::size_t>(3, bc.words.size() - first));
    const std::size_t last = first + span_len(rng) - 1;
    const std::size_t begin = bc.starts[first];
    const std::size_t end = bc.starts[last] + bc.words[last].size();
    AnswerSpan answer{bc.text.substr(begin, end - begin), begin};

    paragraphs[c].examples.push_back(
        {"ex-" + std::to_string(i), std::move(question), {std::move(answer)}});
  }

  for (Context& paragraph : paragraphs) {
    if (!paragraph.examples.empty()) {
      article.paragraphs.push_back(std::move(paragraph));
    }
  }
  ds.articles.push_back(std::move(article));
  return ds;
}

SynonymLexicon random_lexicon(std::mt19937_64& rng) {
  SynonymLexicon lexicon;
  std::bernoulli_distribution two_word(0.3);
  for (std::size_t k = 0; k < kContextPool; ++k) {
    const std::string lemma = pool_word("cw", k);
    if (k % 2 == 0) {
      // Target words no context ever contains, so a replacement lowers the
      // question's overlap.
      std::string phrase = pool_word("fresh", k);
      if (two_word(rng)) phrase += " " + pool_word("extra", k);
      lexicon.add(lemma, phrase);
    } else {
      // Target words from the context pool: the substitute often still
      // overlaps, exercising the rejection path.
      lexicon.add(lemma, pool_word("cw", (k + 7) % kContextPool));
    }
  }
  return lexicon;
}

TempDir::TempDir() {
  static std::atomic<unsigned> counter{0};
  std::random_device rd;
  const unsigned id = counter.fetch_add(1);
  path_ = std::filesystem::temp_directory_path() /
          ("qclo-test-" + std::to_string(rd()) + "-" + std::to_string(id));
  std::filesystem::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);  // best effort
}

}  // namespace qclo::fixtures

#include "qclo/eval.hpp"

#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "fixtures.hpp"
#include "json.hpp"
#include "oracles.hpp"
#include "qclo/errors.hpp"
#include "qclo/text.hpp"

using namespace qclo;

namespace {

std::vector<std::string> golds(std::initializer_list<const char*> texts) {
  return {texts.begin(), texts.end()};
}

PredictionSet gold_predictions(const Dataset& ds) {
  PredictionSet preds;
  for (const ExampleRef& ref : all_examples(ds)) {
    preds[ref.example->id] = ref.example->answers.front().text;
  }
  return preds;
}

std::vector<std::string> split_words(const std::string& text) {
  std::vector<std::string> out;
  std::string word;
  for (const char ch : text + " ") {
    if (ch == ' ') {
      if (!word.empty()) out.push_back(word);
      word.clear();
    } else {
      word += ch;
    }
  }
  return out;
}

}  // namespace

TEST_CASE("exact match ignores case, punctuation and articles") {
  CHECK(exact_match("Paris", golds({"Paris"})) == 1);
  CHECK(exact_match("paris", golds({"Paris"})) == 1);
  CHECK(exact_match("the Paris", golds({"Paris"})) == 1);
  CHECK(exact_match("1999.", golds({"1999"})) == 1);
  CHECK(exact_match("Paris, France", golds({"Paris"})) == 0);
  CHECK(exact_match("sofa", golds({"a mat", "sofa"})) == 1);
  CHECK(exact_match("", golds({"mat"})) == 0);
  CHECK(exact_match("", golds({""})) == 1);
}

TEST_CASE("token F1 measures multiset overlap, maximized over golds") {
  CHECK(f1("Paris", golds({"Paris"})) == doctest::Approx(1.0));
  CHECK(f1("cat black", golds({"black cat"})) == doctest::Approx(1.0));
  CHECK(f1("Paris, France", golds({"Paris"})) == doctest::Approx(2.0 / 3.0));
  CHECK(f1("banana split", golds({"apple"})) == doctest::Approx(0.0));
  CHECK(f1("", golds({"mat"})) == doctest::Approx(0.0));
  CHECK(f1("", golds({""})) == doctest::Approx(1.0));
  CHECK(f1("the", golds({"a"})) == doctest::Approx(1.0));  // both normalize empty
  // Repeated tokens match at most their gold multiplicity.
  CHECK(f1("cat cat", golds({"cat"})) == doctest::Approx(2.0 / 3.0));
  CHECK(f1("big cat", golds({"big black cat", "white cat"})) ==
        doctest::Approx(0.8));
}

TEST_CASE("hand-scored answers agree with the naive oracle") {
  struct Case {
    std::string pred;
    std::vector<std::string> golds;
  };
  const std::vector<Case> cases = {
      {"Paris", {"Paris"}},
      {"paris", {"Paris"}},
      {"the Paris", {"Paris"}},
      {"Paris, France", {"Paris"}},
      {"the black cat", {"black cat"}},
      {"cat black", {"black cat"}},
      {"", {"mat"}},
      {"sofa", {"a mat", "sofa"}},
      {"1999.", {"1999"}},
      {"banana split", {"apple", "a banana"}},
  };
  for (const Case& c : cases) {
    CAPTURE(c.pred);
    CHECK(exact_match(c.pred, c.golds) == oracles::em(c.pred, c.golds));
    CHECK(f1(c.pred, c.golds) == oracles::f1(c.pred, c.golds));
  }
}

TEST_CASE("randomized answers agree with the naive oracle") {
  std::mt19937_64 rng(77);
  const std::vector<std::string> vocab = {"the",  "cat", "mat",   "paris",
                                          "1999", "a",   "black", "sofa,"};
  const auto sample = [&](std::size_t max_len) {
    std::string out;
    std::uniform_int_distribution<std::size_t> len(0, max_len);
    std::uniform_int_distribution<std::size_t> pick(0, vocab.size() - 1);
    const std::size_t n = len(rng);
    for (std::size_t i = 0; i < n; ++i) {
      if (i > 0) out += " ";
      out += vocab[pick(rng)];
    }
    return out;
  };
  for (int round = 0; round < 500; ++round) {
    const std::string pred = sample(5);
    const std::vector<std::string> gs = {sample(5), sample(3)};
    CAPTURE(pred);
    CAPTURE(gs[0]);
    CAPTURE(gs[1]);
    CHECK(exact_match(pred, gs) == oracles::em(pred, gs));
    CHECK(f1(pred, gs) == oracles::f1(pred, gs));
  }
}

TEST_CASE("evaluation buckets examples by overlap") {
  const Dataset ds = fixtures::ipod_dataset();
  const EvalReport report = evaluate(ds, gold_predictions(ds));
  CHECK(report.hard.count == 1);
  CHECK(report.easy.count == 3);
  CHECK(report.all.count == 4);
  CHECK(report.skipped == 0);
  CHECK(*report.hard.em == doctest::Approx(100.0));
  CHECK(*report.easy.f1 == doctest::Approx(100.0));
  CHECK(*report.all.em == doctest::Approx(100.0));
}

TEST_CASE("partial credit lands in the right bucket") {
  const Dataset ds = fixtures::ipod_dataset();
  PredictionSet preds = gold_predictions(ds);
  preds["ipod-q2"] = "business communication";  // hard bucket, F1 2/3
  const EvalReport report = evaluate(ds, preds);
  CHECK(*report.hard.em == doctest::Approx(0.0));
  CHECK(*report.hard.f1 == doctest::Approx(100.0 * 2.0 / 3.0));
  CHECK(*report.easy.em == doctest::Approx(100.0));
  CHECK(*report.all.em == doctest::Approx(75.0));
}

TEST_CASE("a higher threshold moves everything into the hard bucket") {
  const Dataset ds = fixtures::ipod_dataset();
  const EvalReport report = evaluate(ds, gold_predictions(ds), 1.0);
  CHECK(report.hard.count == 4);
  CHECK(report.easy.count == 0);
  CHECK_FALSE(report.easy.em.has_value());
  CHECK_FALSE(report.easy.f1.has_value());
}

TEST_CASE("missing predictions fail unless skipping is requested") {
  const Dataset ds = fixtures::ipod_dataset();
  PredictionSet preds = gold_predictions(ds);
  preds.erase("ipod-q3");
  CHECK_THROWS_AS(evaluate(ds, preds), ValidationError);
  const EvalReport report = evaluate(ds, preds, kDefaultThreshold, true);
  CHECK(report.skipped == 1);
  CHECK(report.all.count == 3);
}

TEST_CASE("predictions for unknown ids are rejected") {
  const Dataset ds = fixtures::ipod_dataset();
  PredictionSet preds = gold_predictions(ds);
  preds["stray-id"] = "whatever";
  try {
    evaluate(ds, preds);
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("stray-id") != std::string::npos);
  }
}

TEST_CASE("evaluation reports serialize to JSON and CSV") {
  const Dataset ds = fixtures::ipod_dataset();
  const EvalReport report = evaluate(ds, gold_predictions(ds));
  const nlohmann::json doc = nlohmann::json::parse(eval_report_json(report));
  CHECK(doc["threshold"] == doctest::Approx(0.3));
  CHECK(doc["hard"]["count"] == 1);
  CHECK(doc["hard"]["em"] == doctest::Approx(100.0));
  CHECK(doc["skipped"] == 0);
  CHECK(eval_report_csv(report) ==
        "bucket,count,em,f1\n"
        "hard,1,100.00,100.00\n"
        "easy,3,100.00,100.00\n"
        "all,4,100.00,100.00\n");

  // Empty buckets serialize as null, not zero.
  const EvalReport all_hard = evaluate(ds, gold_predictions(ds), 1.0);
  const nlohmann::json doc2 = nlohmann::json::parse(eval_report_json(all_hard));
  CHECK(doc2["easy"]["em"].is_null());
  const std::string csv = eval_report_csv(all_hard);
  CHECK(csv.find("easy,0,,\n") != std::string::npos);
}

TEST_CASE("scores round to two decimals only in reports") {
  const Dataset ds = fixtures::ipod_dataset();
  PredictionSet preds = gold_predictions(ds);
  preds["ipod-q2"] = "business communication";
  const EvalReport report = evaluate(ds, preds);
  // In-memory value keeps full precision; the file rounds it.
  CHECK(*report.hard.f1 == doctest::Approx(200.0 / 3.0).epsilon(1e-12));
  const nlohmann::json doc = nlohmann::json::parse(eval_report_json(report));
  CHECK(doc["hard"]["f1"] == doctest::Approx(66.67).epsilon(1e-12));
}

TEST_CASE("perfect generations score BLEU 1") {
  const std::vector<std::vector<std::string>> corpus = {
      {"what", "is", "the", "point", "?"},
      {"where", "is", "the", "station", "?"},
  };
  const BleuScore score = bleu4(corpus, corpus);
  CHECK(score.bleu == doctest::Approx(1.0));
  CHECK(score.brevity_penalty == doctest::Approx(1.0));
  for (double p : score.precisions) CHECK(p == doctest::Approx(1.0));
  CHECK(score.pair_count == 2);
}

TEST_CASE("short candidates pay the brevity penalty") {
  const std::vector<std::vector<std::string>> cand = {{"a", "b", "c", "d"}};
  const std::vector<std::vector<std::string>> ref = {{"a", "b", "c", "d", "e"}};
  const BleuScore score = bleu4(cand, ref);
  CHECK(score.brevity_penalty == doctest::Approx(std::exp(1.0 - 5.0 / 4.0)));
  CHECK(score.bleu == doctest::Approx(std::exp(1.0 - 5.0 / 4.0)));
  CHECK(score.candidate_length == 4);
  CHECK(score.reference_length == 5);
}

TEST_CASE("counts clip at the reference multiplicity") {
  const std::vector<std::vector<std::string>> cand = {
      {"the", "the", "the", "the"}};
  const std::vector<std::vector<std::string>> ref = {{"the", "cat"}};
  const BleuScore score = bleu4(cand, ref);
  CHECK(score.precisions[0] == doctest::Approx(0.25));
  CHECK(score.precisions[1] == doctest::Approx(0.0));
  CHECK(score.bleu == doctest::Approx(0.0));  // a zero precision zeroes it all
}

TEST_CASE("any zero n-gram precision zeroes the corpus score") {
  // Three shared tokens but never four in a row: p4 = 0.
  const std::vector<std::vector<std::string>> cand = {
      {"a", "b", "c", "x", "d", "e", "f"}};
  const std::vector<std::vector<std::string>> ref = {
      {"a", "b", "c", "y", "d", "e", "f"}};
  const BleuScore score = bleu4(cand, ref);
  CHECK(score.precisions[2] > 0.0);
  CHECK(score.precisions[3] == doctest::Approx(0.0));
  CHECK(score.bleu == doctest::Approx(0.0));
}

TEST_CASE("case matters to BLEU tokens") {
  const std::vector<std::vector<std::string>> cand = {{"The", "cat", "sat", "up"}};
  const std::vector<std::vector<std::string>> ref = {{"the", "cat", "sat", "up"}};
  const BleuScore score = bleu4(cand, ref);
  CHECK(score.precisions[0] == doctest::Approx(0.75));
}

TEST_CASE("six-sentence corpus matches the brute-force oracle") {
  const std::vector<std::string> cand_text = {
      "what is the point of this",
      "where is the station",
      "how many documents remain classified",
      "the cat sat on the mat",
      "is the point of this what",
      "name the capital of france",
  };
  const std::vector<std::string> ref_text = {
      "what is the point of that",
      "where is the main station",
      "how many files remain classified",
      "a cat sat on the mat",
      "what is the point of this",
      "name the capital city of france",
  };
  std::vector<std::vector<std::string>> cands;
  std::vector<std::vector<std::string>> refs;
  for (std::size_t i = 0; i < cand_text.size(); ++i) {
    cands.push_back(split_words(cand_text[i]));
    refs.push_back(split_words(ref_text[i]));
  }
  const BleuScore score = bleu4(cands, refs);
  const double expected = oracles::bleu4(cands, refs);
  CHECK(score.bleu == doctest::Approx(expected).epsilon(1e-9));
  CHECK(score.bleu > 0.0);
  CHECK(score.bleu < 1.0);
}

TEST_CASE("randomized corpora match the brute-force oracle") {
  std::mt19937_64 rng(41);
  const std::vector<std::string> vocab = {"a", "b", "c", "d", "e", "f"};
  const auto sentence = [&](std::size_t max_len) {
    std::uniform_int_distribution<std::size_t> len(1, max_len);
    std::uniform_int_distribution<std::size_t> pick(0, vocab.size() - 1);
    std::vector<std::string> out;
    const std::size_t n = len(rng);
    for (std::size_t i = 0; i < n; ++i) out.push_back(vocab[pick(rng)]);
    return out;
  };
  for (int round = 0; round < 200; ++round) {
    std::vector<std::vector<std::string>> cands;
    std::vector<std::vector<std::string>> refs;
    std::uniform_int_distribution<std::size_t> pairs(1, 5);
    const std::size_t n = pairs(rng);
    for (std::size_t i = 0; i < n; ++i) {
      cands.push_back(sentence(8));
      refs.push_back(sentence(8));
    }
    const double got = bleu4(cands, refs).bleu;
    const double expected = oracles::bleu4(cands, refs);
    CHECK(got == doctest::Approx(expected).epsilon(1e-9));
  }
}

TEST_CASE("BLEU rejects mismatched or empty corpora") {
  const std::vector<std::vector<std::string>> one = {{"a"}};
  CHECK_THROWS_AS(bleu4(one, {}), ValidationError);
  CHECK_THROWS_AS(bleu4({}, {}), ValidationError);
}

TEST_CASE("generated questions are scored within reference overlap bins") {
  const Dataset ds = fixtures::ipod_dataset();
  std::map<std::string, std::string> generated;
  for (const ExampleRef& ref : all_examples(ds)) {
    generated[ref.example->id] = ref.example->question;
  }
  const BleuReport report = bucketed_bleu(ds, generated);
  REQUIRE(report.bins.size() == 10);
  CHECK(report.bins[2].count == 1);  // 4/14
  CHECK(report.bins[6].count == 3);  // 5/8, 6/9, 7/11
  CHECK_FALSE(report.bins[0].score.has_value());
  CHECK(report.bins[2].score->bleu == doctest::Approx(1.0));
  CHECK(report.bins[6].score->bleu == doctest::Approx(1.0));
  CHECK(report.overall.bleu == doctest::Approx(1.0));
  CHECK(report.overall.pair_count == 4);

  // Degrading one generation only touches its own bin.
  generated["ipod-q2"] = "completely unrelated words here";
  const BleuReport worse = bucketed_bleu(ds, generated);
  CHECK(worse.bins[2].score->bleu == doctest::Approx(0.0));
  CHECK(worse.bins[6].score->bleu == doctest::Approx(1.0));
  CHECK(worse.overall.bleu < 1.0);
}

TEST_CASE("generation sets must line up with the dataset") {
  const Dataset ds = fixtures::ipod_dataset();
  std::map<std::string, std::string> generated;
  for (const ExampleRef& ref : all_examples(ds)) {
    generated[ref.example->id] = ref.example->question;
  }
  std::map<std::string, std::string> with_stray = generated;
  with_stray["stray"] = "what?";
  CHECK_THROWS_AS(bucketed_bleu(ds, with_stray), ValidationError);

  std::map<std::string, std::string> partial = generated;
  partial.erase("ipod-q1");
  CHECK_THROWS_AS(bucketed_bleu(ds, partial), ValidationError);
  const BleuReport report = bucketed_bleu(ds, partial, 0.1, true);
  CHECK(report.skipped == 1);
  CHECK(report.overall.pair_count == 3);
}

TEST_CASE("BLEU reports serialize to JSON and CSV") {
  const Dataset ds = fixtures::ipod_dataset();
  std::map<std::string, std::string> generated;
  for (const ExampleRef& ref : all_examples(ds)) {
    generated[ref.example->id] = ref.example->question;
  }
  const BleuReport report = bucketed_bleu(ds, generated);
  const nlohmann::json doc = nlohmann::json::parse(bleu_report_json(report));
  CHECK(doc["bin_width"] == doctest::Approx(0.1));
  CHECK(doc["bins"].size() == 10);
  CHECK(doc["bins"][0]["score"].is_null());
  CHECK(doc["bins"][2]["score"]["bleu"] == doctest::Approx(1.0));
  CHECK(doc["overall"]["pairs"] == 4);

  const std::string csv = bleu_report_csv(report);
  CHECK(csv.find("bin_lo,bin_hi,count,bleu,p1,p2,p3,p4,brevity_penalty\n") == 0);
  CHECK(csv.find("0.20,0.30,1,1.000000") != std::string::npos);
}

TEST_CASE("prediction files round-trip") {
  fixtures::TempDir dir;
  PredictionSet preds{{"id-1", "Paris"}, {"id-2", ""}};
  const auto path = dir.file("preds.json");
  save_predictions(preds, path);
  CHECK(load_predictions(path) == preds);

  std::ofstream(dir.file("bad.json")) << "[1, 2]";
  CHECK_THROWS_AS(load_predictions(dir.file("bad.json")), ValidationError);
  std::ofstream(dir.file("broken.json")) << "{";
  CHECK_THROWS_AS(load_predictions(dir.file("broken.json")), ParseError);
  std::ofstream(dir.file("typed.json")) << R"({"id": 7})";
  CHECK_THROWS_AS(load_predictions(dir.file("typed.json")), ValidationError);
}

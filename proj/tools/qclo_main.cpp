// Command-line front end: stats, split, augment, merge, eval, bleu, baseline.
// Exit codes: 0 success, 1 usage error, 2 data error.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qclo/augment.hpp"
#include "qclo/baseline.hpp"
#include "qclo/corpus.hpp"
#include "qclo/errors.hpp"
#include "qclo/eval.hpp"
#include "qclo/io.hpp"
#include "qclo/lexicon.hpp"
#include "qclo/overlap.hpp"
#include "qclo/text.hpp"

namespace {

using namespace qclo;

constexpr int kExitSuccess = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

struct UsageError {
  std::string message;
};

// Turns a JSON object of flag values ({"seed": 7, "skip-missing": true})
// into command-line tokens injected right after the subcommand. Explicit
// flags still win: every option takes its last occurrence.
std::vector<std::string> apply_config(const std::vector<std::string>& args) {
  std::string config_path;
  std::vector<std::string> out;
  for (std::size_t i = 0; i < args.size(); ++i) {
    const std::string& arg = args[i];
    if (arg == "--config") {
      if (i + 1 == args.size()) throw UsageError{"--config needs a file path"};
      config_path = args[++i];
    } else if (arg.rfind("--config=", 0) == 0) {
      config_path = arg.substr(9);
    } else {
      out.push_back(arg);
    }
  }
  if (config_path.empty()) return out;

  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(read_text_file(config_path));
  } catch (const std::exception& e) {
    throw UsageError{std::string("unreadable --config file: ") + e.what()};
  }
  if (!doc.is_object()) {
    throw UsageError{"--config must hold a JSON object of flag values"};
  }

  std::vector<std::string> tokens;
  for (const auto& [key, value] : doc.items()) {
    if (value.is_boolean()) {
      if (value.get<bool>()) tokens.push_back("--" + key);
    } else if (value.is_string()) {
      tokens.push_back("--" + key);
      tokens.push_back(value.get<std::string>());
    } else if (value.is_number()) {
      tokens.push_back("--" + key);
      tokens.push_back(value.dump());
    } else {
      throw UsageError{"--config value for '" + key + "' must be a scalar"};
    }
  }

  std::size_t insert_at = 0;
  while (insert_at < out.size() &&
         (out[insert_at].empty() || out[insert_at][0] == '-')) {
    ++insert_at;
  }
  if (insert_at < out.size()) ++insert_at;  // step past the subcommand name
  out.insert(out.begin() + static_cast<std::ptrdiff_t>(insert_at),
             tokens.begin(), tokens.end());
  return out;
}

CLI::Validator in_unit_interval(bool open_low, const std::string& label) {
  return CLI::Validator(
      [open_low, label](std::string& value) -> std::string {
        double v = 0.0;
        try {
          v = std::stod(value);
        } catch (const std::exception&) {
          return label + " must be a number";
        }
        if ((open_low && v <= 0.0) || (!open_low && v < 0.0) || v > 1.0) {
          return label + " must lie in (0, 1]";
        }
        return {};
      },
      label + " in (0,1]");
}

CLI::Validator divides_unit_interval() {
  return CLI::Validator(
      [](std::string& value) -> std::string {
        try {
          bin_count_for_width(std::stod(value));
        } catch (const std::exception& e) {
          return e.what();
        }
        return {};
      },
      "1/WIDTH integral");
}

StopwordSet stopwords_from(const std::string& path) {
  return path.empty() ? default_stopwords() : load_stopwords(path);
}

std::string format_double(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), fmt, v);
  return buf;
}

void write_histogram_reports(const Dataset& ds, double bin_width,
                             const std::string& out_base) {
  const std::vector<QcloValue> values = dataset_qclo(ds);
  const Histogram hist = histogram(ds, bin_width);

  nlohmann::ordered_json doc;
  doc["dataset"] = ds.name;
  doc["examples"] = hist.total;
  doc["bin_width"] = hist.bin_width;
  doc["mean_qclo"] = mean_qclo(values);
  doc["median_qclo"] = median_qclo(values);
  nlohmann::ordered_json bins = nlohmann::ordered_json::array();
  for (std::size_t b = 0; b < hist.bin_count(); ++b) {
    nlohmann::ordered_json bin;
    bin["lo"] = static_cast<double>(b) * bin_width;
    bin["hi"] = static_cast<double>(b + 1) * bin_width;
    bin["count"] = hist.counts[b];
    bin["percent"] = hist.percents[b];
    bins.push_back(std::move(bin));
  }
  doc["bins"] = std::move(bins);
  atomic_write_file(out_base + ".json", doc.dump(2) + "\n");

  std::string csv = "bin_lo,bin_hi,count,percent\n";
  for (std::size_t b = 0; b < hist.bin_count(); ++b) {
    csv += format_double("%.2f", static_cast<double>(b) * bin_width);
    csv += "," + format_double("%.2f", static_cast<double>(b + 1) * bin_width);
    csv += "," + std::to_string(hist.counts[b]);
    csv += "," + format_double("%.4f", hist.percents[b]);
    csv += "\n";
  }
  atomic_write_file(out_base + ".csv", csv);

  std::printf("stats: %zu examples, mean qclo %.4f, median %.4f\n", hist.total,
              mean_qclo(values), median_qclo(values));
  std::printf("wrote %s.json and %s.csv\n", out_base.c_str(), out_base.c_str());
}

int run(std::vector<std::string> args) {
  CLI::App app{"Question-context lexical overlap toolkit"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  // stats
  std::string stats_in, stats_out;
  double stats_bin_width = kDefaultBinWidth;
  CLI::App* stats = app.add_subcommand(
      "stats", "Overlap histogram, mean and median for a dataset");
  stats->add_option("dataset", stats_in, "SQuAD-format dataset")->required();
  stats->add_option("--bin-width", stats_bin_width, "Histogram bin width")
      ->check(divides_unit_interval());
  stats->add_option("--out", stats_out, "Report base path (.json/.csv added)")
      ->required();

  // split
  std::string split_in, split_hard, split_easy;
  double split_threshold = kDefaultThreshold;
  CLI::App* split = app.add_subcommand(
      "split", "Partition a dataset into hard/easy by overlap threshold");
  split->add_option("dataset", split_in, "SQuAD-format dataset")->required();
  split->add_option("--threshold", split_threshold,
                    "Easy strictly above this overlap value")
      ->check(in_unit_interval(true, "--threshold"));
  split->add_option("--out-hard", split_hard, "Hard subset path")->required();
  split->add_option("--out-easy", split_easy, "Easy subset path")->required();

  // augment
  std::string aug_in, aug_lexicon, aug_stopwords, aug_out;
  std::uint64_t aug_seed = 42;
  unsigned aug_threads = 1;
  CLI::App* augment = app.add_subcommand(
      "augment", "Generate lower-overlap synthetic questions");
  augment->add_option("dataset", aug_in, "SQuAD-format dataset")->required();
  augment->add_option("--lexicon", aug_lexicon, "Synonym lexicon (JSON lines)")
      ->required();
  augment->add_option("--stopwords", aug_stopwords,
                      "Stopword list (one word per line); embedded list if absent");
  augment->add_option("--seed", aug_seed, "Replacement-choice seed");
  augment->add_option("--threads", aug_threads, "Worker threads");
  augment->add_option("--out", aug_out,
                      "Synthetic dataset path (.stats.json/.audit.jsonl added)")
      ->required();

  // merge
  std::string merge_gold, merge_synth, merge_out;
  std::uint64_t merge_seed = 42;
  CLI::App* merge = app.add_subcommand(
      "merge", "Shuffle two datasets with disjoint ids into one");
  merge->add_option("gold", merge_gold, "First dataset")->required();
  merge->add_option("synthetic", merge_synth, "Second dataset")->required();
  merge->add_option("--seed", merge_seed, "Shuffle seed");
  merge->add_option("--out", merge_out, "Merged dataset path")->required();

  // eval
  std::string eval_in, eval_preds, eval_out;
  double eval_threshold = kDefaultThreshold;
  bool eval_skip_missing = false;
  CLI::App* eval = app.add_subcommand(
      "eval", "EM/F1 per overlap bucket for a predictions file");
  eval->add_option("dataset", eval_in, "SQuAD-format dataset")->required();
  eval->add_option("predictions", eval_preds, "JSON object of id -> answer")
      ->required();
  eval->add_option("--threshold", eval_threshold,
                   "Easy strictly above this overlap value")
      ->check(in_unit_interval(true, "--threshold"));
  eval->add_flag("--skip-missing", eval_skip_missing,
                 "Skip examples without predictions instead of failing");
  eval->add_option("--out", eval_out, "Report base path (.json/.csv added)")
      ->required();

  // bleu
  std::string bleu_in, bleu_gen, bleu_out;
  double bleu_bin_width = kDefaultBinWidth;
  bool bleu_skip_missing = false;
  CLI::App* bleu = app.add_subcommand(
      "bleu", "Corpus BLEU-4 of generated questions per overlap bin");
  bleu->add_option("dataset", bleu_in, "Reference dataset")->required();
  bleu->add_option("generated", bleu_gen, "JSON object of id -> question")
      ->required();
  bleu->add_option("--bin-width", bleu_bin_width, "Overlap bin width")
      ->check(divides_unit_interval());
  bleu->add_flag("--skip-missing", bleu_skip_missing,
                 "Skip examples without generated questions instead of failing");
  bleu->add_option("--out", bleu_out, "Report base path (.json/.csv added)")
      ->required();

  // baseline
  std::string base_in, base_stopwords, base_out;
  std::size_t base_max_span = 4;
  std::size_t base_window = 10;
  unsigned base_threads = 1;
  CLI::App* baseline = app.add_subcommand(
      "baseline", "Sliding-window heuristic answers for every example");
  baseline->add_option("dataset", base_in, "SQuAD-format dataset")->required();
  baseline->add_option("--max-span-len", base_max_span,
                       "Longest candidate span, in tokens")
      ->check(CLI::PositiveNumber);
  baseline->add_option("--window", base_window,
                       "Tokens around a span searched for question keywords");
  baseline->add_option("--stopwords", base_stopwords,
                       "Stopword list (one word per line); embedded list if absent");
  baseline->add_option("--threads", base_threads, "Worker threads");
  baseline->add_option("--out", base_out, "Predictions path")->required();

  std::reverse(args.begin(), args.end());
  try {
    app.parse(std::move(args));
  } catch (const CLI::ParseError& e) {
    // Prints help for --help (exit 0) or the parse failure otherwise.
    return app.exit(e) == 0 ? kExitSuccess : kExitUsage;
  }

  if (stats->parsed()) {
    write_histogram_reports(load_dataset(stats_in), stats_bin_width, stats_out);
    return kExitSuccess;
  }

  if (split->parsed()) {
    const Dataset ds = load_dataset(split_in);
    const SplitResult parts = split_dataset(ds, split_threshold);
    save_dataset(parts.hard, split_hard);
    save_dataset(parts.easy, split_easy);
    std::printf("split: %zu hard, %zu easy of %zu examples\n",
                parts.hard.example_count(), parts.easy.example_count(),
                ds.example_count());
    return kExitSuccess;
  }

  if (augment->parsed()) {
    const Dataset ds = load_dataset(aug_in);
    const SynonymLexicon lexicon = load_lexicon(aug_lexicon);
    const StopwordSet stopwords = stopwords_from(aug_stopwords);
    const AugmentResult result =
        augment_dataset(ds, lexicon, stopwords, aug_seed, aug_threads);
    save_dataset(result.synthetic, aug_out);
    write_augment_stats(result.stats, aug_out + ".stats.json");
    write_audit_log(result.audit, aug_out + ".audit.jsonl");
    std::printf("augment: accepted %zu of %zu examples\n",
                result.stats.accepted, result.stats.attempted);
    std::printf("wrote %s, %s.stats.json and %s.audit.jsonl\n", aug_out.c_str(),
                aug_out.c_str(), aug_out.c_str());
    return kExitSuccess;
  }

  if (merge->parsed()) {
    const Dataset merged = merge_datasets(load_dataset(merge_gold),
                                          load_dataset(merge_synth), merge_seed);
    save_dataset(merged, merge_out);
    std::printf("merge: %zu examples -> %s\n", merged.example_count(),
                merge_out.c_str());
    return kExitSuccess;
  }

  if (eval->parsed()) {
    const Dataset ds = load_dataset(eval_in);
    const EvalReport report = evaluate(ds, load_predictions(eval_preds),
                                       eval_threshold, eval_skip_missing);
    atomic_write_file(eval_out + ".json", eval_report_json(report));
    atomic_write_file(eval_out + ".csv", eval_report_csv(report));
    const auto show = [](const char* name, const BucketScores& scores) {
      if (scores.em) {
        std::printf("%s: count %zu, em %.2f, f1 %.2f\n", name, scores.count,
                    *scores.em, *scores.f1);
      } else {
        std::printf("%s: count 0\n", name);
      }
    };
    show("hard", report.hard);
    show("easy", report.easy);
    show("all", report.all);
    return kExitSuccess;
  }

  if (bleu->parsed()) {
    const Dataset ds = load_dataset(bleu_in);
    const BleuReport report = bucketed_bleu(ds, load_predictions(bleu_gen),
                                            bleu_bin_width, bleu_skip_missing);
    atomic_write_file(bleu_out + ".json", bleu_report_json(report));
    atomic_write_file(bleu_out + ".csv", bleu_report_csv(report));
    std::printf("bleu: overall %.6f over %zu pairs\n", report.overall.bleu,
                report.overall.pair_count);
    return kExitSuccess;
  }

  if (baseline->parsed()) {
    const Dataset ds = load_dataset(base_in);
    BaselineParams params;
    params.max_span_len = base_max_span;
    params.window = base_window;
    params.threads = base_threads;
    const PredictionSet preds =
        run_baseline(ds, stopwords_from(base_stopwords), params);
    save_predictions(preds, base_out);
    std::printf("baseline: answered %zu examples -> %s\n", preds.size(),
                base_out.c_str());
    return kExitSuccess;
  }

  return kExitUsage;  // unreachable: require_subcommand enforces one
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    return run(apply_config(args));
  } catch (const UsageError& e) {
    std::fprintf(stderr, "usage error: %s\n", e.message.c_str());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitData;
  }
}

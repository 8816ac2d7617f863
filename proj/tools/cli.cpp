#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"

namespace increval::cli {

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Evaluate and simulate incremental sequence processors", "increval"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "increval 0.1.0");

  SimulateOptions sim;
  auto* simulate = app.add_subcommand("simulate", "Run a labeler on every prefix and write traces");
  simulate->add_option("--corpus", sim.corpus, "Input corpus (CoNLL columns or label<TAB>tokens)")
      ->required();
  simulate->add_option("--task", sim.task, "tagging or classification")->capture_default_str();
  simulate->add_option("--processor", sim.processor,
                       "lookup:<tsv> | window:<rules> | external:<command> | tcp:<host>:<port>")
      ->required();
  simulate->add_option("--prophecy", sim.prophecy,
                       "none | repeat-last | ngram:<model> | external:<command> | tcp:<host>:<port>")
      ->capture_default_str();
  simulate->add_option("--max-continuation", sim.max_continuation,
                       "Token cap for n-gram prophecies")
      ->capture_default_str();
  simulate->add_option("--out", sim.out, "Trace JSONL output")->required();
  simulate->add_option("--manifest", sim.manifest, "Run manifest (default <out>.manifest.json)");
  simulate->add_option("-j,--jobs", sim.jobs, "Sentences simulated in parallel")
      ->capture_default_str();
  simulate->add_option("--timeout-ms", sim.timeout_ms, "Per-call timeout for external endpoints")
      ->capture_default_str();

  EvaluateOptions eval;
  auto* evaluate = app.add_subcommand("evaluate", "Compute EO, CT and RC reports from traces");
  evaluate->add_option("--traces", eval.traces, "Trace JSONL input")->required();
  evaluate->add_option("--delays", eval.delays, "Comma-separated delays")->capture_default_str();
  evaluate->add_option("--report", eval.report, "Report JSON output ('-' for stdout)")
      ->capture_default_str();
  evaluate->add_option("--csv", eval.csv, "metric,delay,value table output");
  evaluate->add_option("--gold", eval.gold, "Gold corpus overriding gold stored in the traces");
  evaluate->add_option("--curves", eval.curves, "EO-over-time CSV output (needs gold)");
  evaluate->add_option("--scheme", eval.scheme, "auto | bio | plain")->capture_default_str();
  evaluate->add_option("-j,--jobs", eval.jobs, "Sequences evaluated in parallel")
      ->capture_default_str();

  TruncateOptions trunc;
  auto* truncate = app.add_subcommand("truncate", "Cut every sentence at a random length");
  truncate->add_option("--corpus", trunc.corpus, "Input corpus")->required();
  truncate->add_option("--task", trunc.task, "tagging or classification")->capture_default_str();
  truncate->add_option("--seed", trunc.seed, "Random seed")->required();
  truncate->add_option("--out", trunc.out, "Output corpus ('-' for stdout)")->required();

  DiffOptions diff;
  auto* diff_cmd = app.add_subcommand("diff", "Print one sequence's edit scripts step by step");
  diff_cmd->add_option("--traces", diff.traces, "Trace JSONL input")->required();
  diff_cmd->add_option("--id", diff.id, "Sequence id (default: first trace)");
  diff_cmd->add_option("--delay", diff.delay, "Delay")->capture_default_str();

  ProphecyEvalOptions proph;
  auto* prophecy = app.add_subcommand("prophecy-eval", "Corpus BLEU of prophecies");
  prophecy->add_option("--pairs", proph.pairs, "Pair file: candidate<TAB>reference per line");
  prophecy->add_option("--corpus", proph.corpus,
                       "Corpus whose prefixes are continued and scored against the real rest");
  prophecy->add_option("--task", proph.task, "tagging or classification")->capture_default_str();
  prophecy->add_option("--prophecy", proph.prophecy, "Continuation source for --corpus")
      ->capture_default_str();
  prophecy->add_option("--max-continuation", proph.max_continuation, "Token cap")
      ->capture_default_str();
  prophecy->add_option("--timeout-ms", proph.timeout_ms, "Per-call timeout")->capture_default_str();
  prophecy->add_option("--out", proph.out, "Result JSON ('-' for stdout)")->capture_default_str();

  TrainNGramOptions train;
  auto* train_cmd = app.add_subcommand("train-ngram", "Train an n-gram prophecy model");
  train_cmd->add_option("--corpus", train.corpus, "Training corpus")->required();
  train_cmd->add_option("--task", train.task, "tagging or classification")->capture_default_str();
  train_cmd->add_option("--order", train.order, "n-gram order (>= 2)")->capture_default_str();
  train_cmd->add_option("--out", train.out, "Model output")->required();

  std::vector<std::string> argv_storage;
  argv_storage.reserve(args.size() + 1);
  argv_storage.emplace_back("increval");
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_storage) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (simulate->parsed()) return cmd_simulate(sim, out, err);
  if (evaluate->parsed()) return cmd_evaluate(eval, out, err);
  if (truncate->parsed()) return cmd_truncate(trunc, out, err);
  if (diff_cmd->parsed()) return cmd_diff(diff, out, err);
  if (prophecy->parsed()) return cmd_prophecy_eval(proph, out, err);
  if (train_cmd->parsed()) return cmd_train_ngram(train, out, err);
  return kExitUsage;
}

}  // namespace increval::cli

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tsem/error.hpp"
#include "tsem/harness.hpp"

namespace {

constexpr int kMismatch = 1;
constexpr int kError = 2;
constexpr int kUsage = 64;

tsem::SaturationBudget parse_budget(const std::string& text) {
  tsem::SaturationBudget b;
  if (text.empty()) return b;
  unsigned long inst = 0, splits = 0;
  long long ms = 0;
  char tail = 0;
  if (std::sscanf(text.c_str(), "%lu,%lu,%lld%c", &inst, &splits, &ms, &tail) != 3) {
    throw CLI::ValidationError("--budget", "expected INSTANTIATIONS,SPLITS,MILLISECONDS");
  }
  b.maxInstantiations = inst;
  b.maxCaseSplits = splits;
  b.maxTime = std::chrono::milliseconds(ms);
  return b;
}

struct Problem {
  std::vector<tsem::SynTree> premises;
  tsem::SynTree hypothesis;
};

Problem read_problem(const std::vector<std::string>& files) {
  Problem p;
  for (std::size_t i = 0; i + 1 < files.size(); ++i) p.premises.push_back(tsem::load_tree(files[i]));
  p.hypothesis = tsem::load_tree(files.back());
  return p;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Temporal entailment over typed abstract syntax trees"};
  app.require_subcommand(1);
  std::string dataDir = tsem::Grammar::default_data_dir().string();
  app.add_option("--data-dir", dataDir, "directory holding signatures.txt and lexicon.txt");

  std::vector<std::string> trees;
  std::string now, budgetText, suitePath;
  bool json = false;

  auto* check = app.add_subcommand("check", "decide whether the premises entail the hypothesis");
  check->add_option("trees", trees, "premise trees followed by the hypothesis tree")->required()->expected(2, -1);
  check->add_option("--now", now, "utterance date, YYYY-MM-DD or YYYY");
  check->add_option("--budget", budgetText, "INSTANTIATIONS,SPLITS,MILLISECONDS");

  auto* trace = app.add_subcommand("trace", "like check, and print the proof steps");
  trace->add_option("trees", trees, "premise trees followed by the hypothesis tree")->required()->expected(2, -1);
  trace->add_option("--now", now, "utterance date, YYYY-MM-DD or YYYY");
  trace->add_option("--budget", budgetText, "INSTANTIATIONS,SPLITS,MILLISECONDS");

  auto* dump = app.add_subcommand("dump-lf", "print the logical form; with several trees, the refutation form");
  dump->add_option("trees", trees, "sentence trees")->required()->expected(1, -1);
  dump->add_option("--now", now, "utterance date, YYYY-MM-DD or YYYY");

  auto* suite = app.add_subcommand("suite", "run a suite file and report accuracy");
  suite->add_option("file", suitePath, "suite file")->required();
  suite->add_option("--budget", budgetText, "INSTANTIATIONS,SPLITS,MILLISECONDS");
  suite->add_flag("--json", json, "emit the report as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    tsem::SaturationBudget budget = parse_budget(budgetText);
    std::optional<tsem::NowAnchor> nowAnchor;
    if (!now.empty()) nowAnchor = tsem::parse_now(now);
    tsem::Grammar grammar = tsem::Grammar::load(dataDir);

    if (*check || *trace) {
      Problem p = read_problem(trees);
      tsem::Problem prepared = tsem::prepare(grammar, p.premises, p.hypothesis, nowAnchor);
      tsem::Verdict v = tsem::decide(prepared.interpreted, prepared.axioms, budget);
      std::cout << tsem::to_string(v.answer) << "\n";
      if (*trace) {
        std::cout << tsem::print_trace(v.trace);
        if (!v.note.empty()) std::cout << "note: " << v.note << "\n";
      }
      return 0;
    }
    if (*dump) {
      if (trees.size() == 1) {
        tsem::TypedTree t = grammar.check(tsem::load_tree(trees[0]));
        std::cout << tsem::print_formula(tsem::interpret_sentence(t, grammar.lexicon), true) << "\n";
        return 0;
      }
      Problem p = read_problem(trees);
      tsem::Problem prepared = tsem::prepare(grammar, p.premises, p.hypothesis, nowAnchor);
      std::cout << tsem::print_formula(prepared.interpreted.refutation_form(), true) << "\n";
      return 0;
    }
    if (*suite) {
      tsem::RunReport report = tsem::run_suite(grammar, std::filesystem::path(suitePath), budget);
      std::cout << (json ? tsem::report_json(report) + "\n" : tsem::format_report(report));
      return report.regressions.empty() ? 0 : kMismatch;
    }
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  } catch (const tsem::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return 0;
}

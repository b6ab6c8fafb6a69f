#include "tsem/harness.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "tsem/axioms.hpp"
#include "tsem/error.hpp"

namespace tsem {

namespace {

std::string read_file(const std::filesystem::path& path, ErrorCode code) {
  std::ifstream in(path);
  if (!in) throw Error(code, "cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

[[noreturn]] void fail(int at, const std::string& what) {
  throw Error(ErrorCode::SuiteParseError, "line " + std::to_string(at) + ": " + what);
}

}  // namespace

std::filesystem::path Grammar::default_data_dir() {
  if (const char* env = std::getenv("TSEM_DATA_DIR")) return env;
#ifdef TSEM_DEFAULT_DATA_DIR
  return TSEM_DEFAULT_DATA_DIR;
#else
  return "data";
#endif
}

Grammar Grammar::load(const std::filesystem::path& dataDir) {
  return {SignatureTable::load(dataDir / "signatures.txt"), Lexicon::load(dataDir / "lexicon.txt")};
}

SynTree load_tree(const std::filesystem::path& path) { return read_tree(read_file(path, ErrorCode::SuiteParseError)); }

NowAnchor parse_now(std::string_view text) {
  std::string s = trim(text);
  if (s.size() == 4 && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); })) {
    int year = std::stoi(s);
    return {date_to_day(year, 1, 1), date_to_day(year, 12, 31)};
  }
  TimePoint p = parse_iso_date(s);
  return {p, p};
}

std::string_view to_string(EntryStatus s) {
  switch (s) {
    case EntryStatus::Supported: return "supported";
    case EntryStatus::KnownUnsupported: return "known-unsupported";
    case EntryStatus::Aspirational: return "aspirational";
  }
  return "?";
}

std::vector<SuiteEntry> parse_suite(std::string_view text, const std::filesystem::path& baseDir) {
  std::vector<SuiteEntry> out;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  std::optional<SuiteEntry> current;
  bool hasHypothesis = false;
  bool hasExpected = false;
  int startLine = 0;

  auto finish = [&] {
    if (!current) return;
    if (current->id.empty()) fail(startLine, "record without id");
    if (!hasHypothesis) fail(startLine, current->id + ": missing hypothesis");
    if (!hasExpected) fail(startLine, current->id + ": missing expected");
    out.push_back(std::move(*current));
    current.reset();
  };
  auto tree = [&](const std::string& value) {
    try {
      if (!value.empty() && value.front() == '(') return read_tree(value);
      std::filesystem::path p = baseDir / value;
      if (!std::filesystem::exists(p)) fail(lineno, "tree file not found: " + p.string());
      return load_tree(p);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::SuiteParseError) throw;
      fail(lineno, e.what());
    }
  };

  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty()) {
      finish();
      continue;
    }
    if (t.front() == '#') continue;
    auto colon = t.find(':');
    if (colon == std::string::npos) fail(lineno, "expected 'key: value'");
    std::string key = trim(t.substr(0, colon));
    std::string value = trim(t.substr(colon + 1));
    if (!current) {
      current.emplace();
      hasHypothesis = hasExpected = false;
      startLine = lineno;
    }
    try {
      if (key == "id") {
        current->id = value;
      } else if (key == "expected") {
        current->expected = parse_answer(value);
        hasExpected = true;
      } else if (key == "now") {
        current->now = parse_now(value);
      } else if (key == "status") {
        if (value == "supported") current->status = EntryStatus::Supported;
        else if (value == "known-unsupported") current->status = EntryStatus::KnownUnsupported;
        else if (value == "aspirational") current->status = EntryStatus::Aspirational;
        else fail(lineno, "unknown status " + value);
      } else if (key == "note") {
        current->note += (current->note.empty() ? "" : " ") + value;
      } else if (key == "premise") {
        current->premises.push_back(tree(value));
      } else if (key == "hypothesis") {
        current->hypothesis = tree(value);
        hasHypothesis = true;
      } else {
        fail(lineno, "unknown field " + key);
      }
    } catch (const Error& e) {
      if (e.code() == ErrorCode::SuiteParseError) throw;
      fail(lineno, e.what());
    }
  }
  finish();
  return out;
}

std::vector<SuiteEntry> load_suite(const std::filesystem::path& path) {
  return parse_suite(read_file(path, ErrorCode::SuiteParseError), path.parent_path());
}

Problem prepare(const Grammar& grammar, const std::vector<SynTree>& premises, const SynTree& hypothesis,
                std::optional<NowAnchor> now) {
  std::vector<TypedTree> typed;
  for (const auto& p : premises) typed.push_back(grammar.check(p));
  TypedTree h = grammar.check(hypothesis);
  Problem out;
  out.interpreted = interpret_problem(typed, h, grammar.lexicon, now);
  out.axioms = generate_axioms(out.interpreted, grammar.lexicon);
  return out;
}

std::optional<double> RunReport::accuracy() const {
  if (supported == 0) return std::nullopt;
  return static_cast<double>(correctSupported) / static_cast<double>(supported);
}

std::string RunReport::accuracy_text() const {
  auto a = accuracy();
  if (!a) return "n/a";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", *a);
  return buf;
}

RunReport run_suite(const Grammar& grammar, const std::vector<SuiteEntry>& entries, const SaturationBudget& budget) {
  RunReport report;
  for (const SuiteEntry& e : entries) {
    EntryResult r{e.id, e.status, e.expected, std::nullopt, {}, 0};
    auto start = std::chrono::steady_clock::now();
    try {
      Problem p = prepare(grammar, e.premises, e.hypothesis, e.now);
      r.got = decide(p.interpreted, p.axioms, budget).answer;
    } catch (const Error& err) {
      r.error = err.what();
    }
    r.runtimeMs = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    if (e.status == EntryStatus::Supported) {
      ++report.supported;
      if (r.correct()) ++report.correctSupported;
      else report.regressions.push_back(e.id);
    }
    report.entries.push_back(std::move(r));
  }
  std::stable_sort(report.entries.begin(), report.entries.end(),
                   [](const EntryResult& a, const EntryResult& b) { return a.id < b.id; });
  return report;
}

RunReport run_suite(const Grammar& grammar, const std::filesystem::path& path, const SaturationBudget& budget) {
  return run_suite(grammar, load_suite(path), budget);
}

std::string format_report(const RunReport& report) {
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof line, "%-16s %-18s %-8s %-8s %9s\n", "id", "status", "expected", "got", "ms");
  out << line;
  for (const auto& e : report.entries) {
    std::string got = e.got ? std::string(to_string(*e.got)) : "Error";
    std::snprintf(line, sizeof line, "%-16s %-18s %-8s %-8s %9.1f%s\n", e.id.c_str(),
                  std::string(to_string(e.status)).c_str(), std::string(to_string(e.expected)).c_str(), got.c_str(),
                  e.runtimeMs, e.correct() ? "" : "  *");
    out << line;
    if (!e.error.empty()) out << "    " << e.error << "\n";
  }
  out << "supported: " << report.correctSupported << "/" << report.supported << " correct, accuracy "
      << report.accuracy_text() << "\n";
  if (!report.regressions.empty()) {
    out << "regressions:";
    for (const auto& id : report.regressions) out << " " << id;
    out << "\n";
  }
  return out.str();
}

std::string report_json(const RunReport& report) {
  nlohmann::json j;
  j["entries"] = nlohmann::json::array();
  for (const auto& e : report.entries) {
    nlohmann::json row{{"id", e.id},
                       {"status", to_string(e.status)},
                       {"expected", to_string(e.expected)},
                       {"got", e.got ? nlohmann::json(to_string(*e.got)) : nlohmann::json("Error")},
                       {"runtime_ms", e.runtimeMs}};
    if (!e.error.empty()) row["error"] = e.error;
    j["entries"].push_back(row);
  }
  j["supported"] = report.supported;
  j["correct_supported"] = report.correctSupported;
  auto a = report.accuracy();
  j["accuracy"] = a ? nlohmann::json(*a) : nlohmann::json("n/a");
  j["regressions"] = report.regressions;
  return j.dump(2);
}

}  // namespace tsem

#include <doctest.h>

#include <json.hpp>

#include "support/fixtures.hpp"
#include "tsem/harness.hpp"

using namespace tsem;
using fixtures::code_of;

namespace {

const char* kInline = R"(# two problems with inline trees
id: inline-no
expected: No
premise: (sentence (useCl past pPos (predVP (usePN (lexemePN "smith_PN")) (advVP (complSlash (slashV2a (lexemeV2 "write_V2")) (detCN (detQuant indefArt numSg) (useN (lexemeN "novel_N")))) (lexemeAdv "in_1991_Adv")))))
hypothesis: (sentence (useCl past pPos (predVP (usePN (lexemePN "smith_PN")) (advVP (complSlash (slashV2a (lexemeV2 "write_V2")) (usePron it_Pron)) (lexemeAdv "in_1992_Adv")))))

id: inline-wrong
expected: Yes
status: known-unsupported
note: kept to check that non-supported entries do not count
premise: trees/279_p1.tree
hypothesis: trees/279_h.tree
)";

std::string message_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_SUITE("harness") {
  TEST_CASE("now anchors") {
    NowAnchor year = parse_now("1996");
    CHECK(year.from == date_to_day(1996, 1, 1));
    CHECK(year.to == date_to_day(1996, 12, 31));
    NowAnchor d = parse_now("1990-07-14");
    CHECK(d.from == d.to);
    CHECK(code_of([] { parse_now("July"); }) == ErrorCode::InvalidDate);
  }

  TEST_CASE("suite files parse") {
    auto entries = parse_suite(kInline, fixtures::suite_dir());
    REQUIRE(entries.size() == 2);
    CHECK(entries[0].id == "inline-no");
    CHECK(entries[0].expected == Answer::No);
    CHECK(entries[0].premises.size() == 1);
    CHECK(entries[0].status == EntryStatus::Supported);
    CHECK(entries[1].status == EntryStatus::KnownUnsupported);
    CHECK(entries[1].hypothesis == fixtures::tree("279_h"));
  }

  TEST_CASE("inline and file trees agree") {
    auto entries = parse_suite(kInline, fixtures::suite_dir());
    CHECK(entries[0].premises[0] == entries[1].premises[0]);
  }

  TEST_CASE("suite errors") {
    const auto base = fixtures::suite_dir();
    CHECK(code_of([&] { parse_suite("id: a\nexpected: Perhaps\npremise: (x)\nhypothesis: (y)\n", base); }) ==
          ErrorCode::SuiteParseError);
    CHECK(code_of([&] { parse_suite("id: a\nexpected: Yes\npremise: (x)\n", base); }) == ErrorCode::SuiteParseError);
    CHECK(code_of([&] { parse_suite("id: a\nflavour: Yes\n", base); }) == ErrorCode::SuiteParseError);
    CHECK(code_of([&] { parse_suite("id: a\nexpected: Yes\nstatus: maybe\npremise: (x)\nhypothesis: (y)\n", base); }) ==
          ErrorCode::SuiteParseError);
  }

  TEST_CASE("a missing tree file is named in the error") {
    std::string msg = message_of(
        [] { parse_suite("id: a\nexpected: Yes\npremise: trees/nope.tree\nhypothesis: trees/279_h.tree\n", fixtures::suite_dir()); });
    CHECK(msg.find("SuiteParseError") == 0);
    CHECK(msg.find("nope.tree") != std::string::npos);
  }

  TEST_CASE("empty suite reports n/a") {
    RunReport r = run_suite(fixtures::grammar(), std::vector<SuiteEntry>{});
    CHECK_FALSE(r.accuracy());
    CHECK(r.accuracy_text() == "n/a");
    auto j = nlohmann::json::parse(report_json(r));
    CHECK(j["accuracy"] == "n/a");
  }

  TEST_CASE("only supported entries count towards accuracy") {
    RunReport r = run_suite(fixtures::grammar(), parse_suite(kInline, fixtures::suite_dir()));
    CHECK(r.supported == 1);
    CHECK(r.correctSupported == 1);
    CHECK(r.regressions.empty());
    CHECK(r.accuracy_text() == "1.00");
    REQUIRE(r.entries.size() == 2);
    CHECK_FALSE(r.entries[1].correct());
  }

  TEST_CASE("regressions are listed") {
    auto entries = parse_suite(kInline, fixtures::suite_dir());
    entries[0].expected = Answer::Yes;
    RunReport r = run_suite(fixtures::grammar(), entries);
    CHECK(r.regressions == std::vector<std::string>{"inline-no"});
    CHECK(r.accuracy_text() == "0.00");
  }

  TEST_CASE("interpretation errors are recorded per entry") {
    auto entries = parse_suite(kInline, fixtures::suite_dir());
    entries[0].premises[0] = read_tree("(sentence (useCl past pPos (predVP (usePron it_Pron) (useV (lexemeV \"leave_V\")))))");
    RunReport r = run_suite(fixtures::grammar(), entries);
    CHECK_FALSE(r.entries[0].got);
    CHECK(r.entries[0].error.find("UnresolvedPronoun") != std::string::npos);
    CHECK(r.regressions.size() == 1);
  }

  TEST_CASE("JSON report") {
    RunReport r = run_suite(fixtures::grammar(), parse_suite(kInline, fixtures::suite_dir()));
    auto j = nlohmann::json::parse(report_json(r));
    CHECK(j["supported"] == 1);
    CHECK(j["entries"].size() == 2);
    CHECK(j["entries"][0]["id"] == "inline-no");
    CHECK(j["entries"][0]["got"] == "No");
  }

  TEST_CASE("text report ends with the accuracy line") {
    RunReport r = run_suite(fixtures::grammar(), parse_suite(kInline, fixtures::suite_dir()));
    std::string text = format_report(r);
    CHECK(text.find("supported: 1/1 correct, accuracy 1.00") != std::string::npos);
  }

  TEST_CASE("shipped suite: every supported entry is correct") {
    RunReport r = run_suite(fixtures::grammar(), fixtures::suite_dir() / "temporal.suite");
    CHECK(r.supported >= 9);
    CHECK(r.regressions.empty());
  }
}

#include <doctest.h>

#include <sstream>

#include <json.hpp>

#include "aut/cli.hpp"
#include "testutil.hpp"

using namespace aut;
using namespace testutil;

namespace {

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

} // namespace

TEST_CASE("check reports the verdict and is byte-deterministic") {
  std::vector<std::string> args{"check", corpus_path("grundlagen_fragment.aut"),
                                "--dialect", "original", "--stats"};
  RunResult a = run_cli(args);
  RunResult b = run_cli(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("ok (16 lines: 8 assumptions, 6 definitions, 2 primitives)") !=
        std::string::npos);
  CHECK(a.out.find("reductions: beta=0 delta=18 eta=0") != std::string::npos);
}

TEST_CASE("check exit codes per failure class") {
  CHECK(run_cli({"check", corpus_path("neg/dup_identifier.aut")}).code == 1);
  CHECK(run_cli({"check", corpus_path("neg/parse_error.aut")}).code == 2);
  CHECK(run_cli({"check", "/no/such/file.aut"}).code == 3);
  CHECK(run_cli({"frobnicate"}).code == 4);
  CHECK(run_cli({"check"}).code == 4); // missing file argument
}

TEST_CASE("errors carry file, location, class and the judgement") {
  RunResult r = run_cli({"check", corpus_path("neg/wrong_category.aut")});
  CHECK(r.code == 1);
  CHECK(r.err.find("wrong_category.aut:3:") != std::string::npos);
  CHECK(r.err.find("TypeMismatch") != std::string::npos);
  CHECK(r.err.find("while checking:") != std::string::npos);
}

TEST_CASE("the json report matches the plain one") {
  RunResult r = run_cli({"check", corpus_path("peano.aut"), "--json"});
  CHECK(r.code == 0);
  nlohmann::json doc = nlohmann::json::parse(r.out);
  CHECK(doc["verdict"] == "ok");
  CHECK(doc["counts"]["assumptions"] == 4);
  CHECK(doc["counts"]["definitions"] == 3);
  CHECK(doc["counts"]["primitives"] == 6);
  CHECK(doc["counts"]["total"] == 13);
  CHECK(doc["reductions"]["eta"] == 0);
  CHECK(doc["lines"].size() == 13);

  RunResult bad = run_cli({"check", corpus_path("neg/unbound_ident.aut"), "--json"});
  CHECK(bad.code == 1);
  nlohmann::json err_doc = nlohmann::json::parse(bad.out);
  CHECK(err_doc["verdict"] == "failed");
  CHECK(err_doc["error"]["kind"] == "UnboundIdentifier");
  CHECK(err_doc["error"]["line"] == 1);
}

TEST_CASE("clean output re-checks ok") {
  std::string cleaned_path = "/tmp/autcheck_test_cleaned.aut";
  RunResult r = run_cli({"clean", corpus_path("grundlagen_fragment.aut")});
  CHECK(r.code == 0);
  {
    std::ofstream f(cleaned_path, std::ios::binary);
    f << r.out;
  }
  CHECK(run_cli({"check", cleaned_path}).code == 0);

  // a book with dead ends keeps its removal list in comments, so the
  // output still parses and checks
  std::string dirty_path = "/tmp/autcheck_test_dirty.aut";
  {
    std::ofstream f(dirty_path, std::ios::binary);
    f << "* A := --- ; PROP\nA * y := --- ; A\n* D := PROP ; Type\n";
  }
  RunResult c = run_cli({"clean", dirty_path});
  CHECK(c.code == 0);
  CHECK(c.out.find("# removed 2 dead-end assumption line(s):") != std::string::npos);
  {
    std::ofstream f(cleaned_path, std::ios::binary);
    f << c.out;
  }
  RunResult recheck = run_cli({"check", cleaned_path});
  CHECK(recheck.code == 0);
  CHECK(recheck.out.find("(1 lines:") != std::string::npos);
}

TEST_CASE("to-env then from-env then check round-trips with exit 0") {
  RunResult env_out = run_cli({"to-env", corpus_path("grundlagen_fragment.aut")});
  CHECK(env_out.code == 0);
  std::string denv_path = "/tmp/autcheck_test.denv";
  {
    std::ofstream f(denv_path, std::ios::binary);
    f << env_out.out;
  }
  RunResult book_out = run_cli({"from-env", denv_path});
  CHECK(book_out.code == 0);
  std::string book_path = "/tmp/autcheck_test_expanded.aut";
  {
    std::ofstream f(book_path, std::ios::binary);
    f << book_out.out;
  }
  RunResult final = run_cli({"check", book_path, "--dialect", "modern"});
  CHECK(final.code == 0);
}

TEST_CASE("checking an empty book succeeds with zero lines") {
  std::string path = "/tmp/autcheck_test_empty.aut";
  {
    std::ofstream f(path, std::ios::binary);
    f << "# nothing here\n";
  }
  RunResult r = run_cli({"check", path});
  CHECK(r.code == 0);
  CHECK(r.out.find("(0 lines:") != std::string::npos);
}

TEST_CASE("eta steps are only taken when the flag is on") {
  RunResult off = run_cli({"check", corpus_path("eta_pair.aut"), "--dialect", "modern"});
  CHECK(off.code == 1);
  RunResult on = run_cli(
      {"check", corpus_path("eta_pair.aut"), "--dialect", "modern", "--eta", "--stats"});
  CHECK(on.code == 0);
  CHECK(on.out.find("eta=1") != std::string::npos);
}

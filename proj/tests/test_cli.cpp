#include "doctest.h"

#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "idfnl/cli.hpp"
#include "idfnl/parser.hpp"
#include "idfnl/semantics.hpp"

using namespace idfnl;

namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data_path(const std::string& rel) { return std::string(IDFNL_DATA_DIR) + "/" + rel; }

class TempFile {
 public:
  explicit TempFile(const std::string& contents) {
    static int counter = 0;
    path_ = (std::filesystem::temp_directory_path() /
             ("idfnl_test_" + std::to_string(counter++) + "_" + std::to_string(::getpid()) + ".txt"))
                .string();
    std::ofstream(path_) << contents;
  }
  ~TempFile() { std::remove(path_.c_str()); }
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("fmt") {
  const CliResult r = run({"fmt", "p&q|r"});
  CHECK(r.code == 0);
  CHECK(r.out == "p & q | r\n");

  const CliResult bad = run({"fmt", "p \\ q \\ r"});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("parentheses") != std::string::npos);
}

TEST_CASE("eval") {
  const std::string model = data_path("models/closure_gap.dm");
  SUBCASE("single state") {
    const CliResult r = run({"eval", model, "p \\\\ q", "--state", "s"});
    CHECK(r.code == 0);
    CHECK(r.out == "true\n");
    const CliResult f = run({"eval", model, "p \\\\ q", "--state", "y"});
    CHECK(f.code == 1);
    CHECK(f.out == "false\n");
  }
  SUBCASE("denotation listing") {
    const CliResult r = run({"eval", model, "p \\ q"});
    CHECK(r.code == 0);
    CHECK(r.out == "s t u x\n");
    const CliResult empty = run({"eval", model, "bot"});
    CHECK(empty.code == 0);
    CHECK(empty.out == "\n");
  }
  SUBCASE("errors") {
    CHECK(run({"eval", model, "p \\ q", "--state", "nosuch"}).code == 2);
    CHECK(run({"eval", model, "p \\ q \\ r"}).code == 2);
    CHECK(run({"eval", "/nonexistent/path.dm", "p"}).code == 2);
  }
}

TEST_CASE("valid emits a re-checkable countermodel") {
  const CliResult r = run({"valid", "p & (p \\ q) |- q", "--max-states", "2"});
  CHECK(r.code == 1);
  CHECK(r.out.find("# countermodel with 1 state(s)") != std::string::npos);
  CHECK(r.out.find("# witness: s0") != std::string::npos);

  // the comment lines make the whole output a parseable model file
  const Model m = parse_model(r.out);
  const Sequent sq = parse_sequent("p & (p \\ q) |- q");
  CHECK(satisfies(m, "s0", *sq.lhs));
  CHECK_FALSE(satisfies(m, "s0", *sq.rhs));

  TempFile file(r.out);
  const CliResult fed_back = run({"eval", file.path(), "p & (p \\ q)", "--state", "s0"});
  CHECK(fed_back.code == 0);
  CHECK(fed_back.out == "true\n");
}

TEST_CASE("valid with frame filters and exhaustion") {
  const CliResult refl = run({"valid", "p & (p \\ q) |- q", "--frame", "reflexive", "--max-states", "2"});
  CHECK(refl.code == 0);
  CHECK(refl.out == "no countermodel with at most 2 state(s)\n");

  const CliResult comm = run({"valid", "p * q |- q * p", "--frame", "commutative", "--max-states", "2"});
  CHECK(comm.code == 0);

  CHECK(run({"valid", "p |- q |- r"}).code == 2);
  CHECK(run({"valid", "p |- q", "--frame", "euclidean"}).code == 2);
  CHECK(run({"valid", "p & q |- p", "--max-states", "2", "--timeout", "0"}).code == 3);
}

TEST_CASE("valid output is identical across job counts") {
  for (const char* seq : {"p * q |- q * p", "p & (p \\ q) |- q"}) {
    const CliResult one = run({"valid", seq, "--max-states", "3", "--jobs", "1"});
    const CliResult eight = run({"valid", seq, "--max-states", "3", "--jobs", "8"});
    CHECK(one.code == eight.code);
    CHECK(one.out == eight.out);
  }
}

TEST_CASE("check-proof") {
  CHECK(run({"check-proof", data_path("proofs/unfold_left.prf")}).code == 0);
  CHECK(run({"check-proof", data_path("proofs/unfold_left.prf")}).out == "OK\n");

  SUBCASE("corrupted step is reported") {
    TempFile bad(
        "1. p * q |- p * q ; id ; A=p * q\n"
        "2. q |- p \\ (q * q) ; res_ldiv_intro ; A=p , B=q , C=p * q ; premises: 1\n");
    const CliResult r = run({"check-proof", bad.path()});
    CHECK(r.code == 1);
    CHECK(r.out.find("step 2") != std::string::npos);
  }
  SUBCASE("extensions are opt-in") {
    const std::string weak = data_path("proofs/weak_contraction.prf");
    const CliResult off = run({"check-proof", weak});
    CHECK(off.code == 1);
    CHECK(off.out.find("not enabled") != std::string::npos);
    const CliResult on = run({"check-proof", weak, "--ext", "weak_contraction"});
    CHECK(on.code == 0);
    CHECK(run({"check-proof", weak, "--ext", "success"}).code == 2);
  }
  SUBCASE("parse errors exit 2") {
    TempFile bad("1. p |- p ; no_such_schema\n");
    CHECK(run({"check-proof", bad.path()}).code == 2);
  }
}

TEST_CASE("closure") {
  const CliResult r = run({"closure", "p \\\\ q"});
  CHECK(r.code == 0);
  CHECK(r.out == "bot\np\np \\ q\np \\\\ q\nq\ntop\n");

  const CliResult t = run({"closure", "top"});
  CHECK(t.out == "bot\ntop\n");

  const CliResult sq = run({"closure", "--sequent", "p |- q"});
  CHECK(sq.code == 0);
  CHECK(sq.out == "bot\np\nq\ntop\nbound: 16\n");

  const CliResult multi = run({"closure", "p \\\\ q", "r"});
  CHECK(multi.code == 0);
  CHECK(multi.out == "bot\np\np \\ q\np \\\\ q\nq\nr\ntop\n");

  CHECK(run({"closure"}).code == 2);
  CHECK(run({"closure", "p &"}).code == 2);
}

TEST_CASE("selftest") {
  const CliResult r = run({"selftest", "--seed", "7", "--iterations", "5"});
  CHECK(r.code == 0);
  CHECK(r.out.find("all suites passed") != std::string::npos);

  const CliResult zero = run({"selftest", "--iterations", "0"});
  CHECK(zero.code == 0);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"eval"}).code == 2);
  CHECK(run({"valid", "p |- q", "--max-states", "0"}).code == 2);
}

TEST_SUITE_END();

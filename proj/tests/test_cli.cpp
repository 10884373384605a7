#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "paradigm/aut.hpp"
#include "paradigm/cli.hpp"
#include "paradigm/generators.hpp"
#include "paradigm/model_file.hpp"

using namespace paradigm;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("paradigm-cli-" + std::to_string(reinterpret_cast<std::uintptr_t>(this)) +
             "-" + std::to_string(counter_++));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string file(const std::string& name) const { return (path_ / name).string(); }
  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(file(name)) << text;
    return file(name);
  }

 private:
  fs::path path_;
  static inline int counter_ = 0;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("generate and validate") {
  TempDir dir;
  const std::string path = dir.file("m.pdm");
  CHECK(run({"generate", "--variant", "basic", "--clients", "2", "-o", path}).code == cli::kOk);
  CHECK(parse_model(slurp(path)) == generate_model(Variant::kBasic, 2));

  const Run ok = run({"validate", path});
  CHECK(ok.code == cli::kOk);
  CHECK(ok.out.find("8 rules") != std::string::npos);

  std::string text = slurp(path);
  text.replace(text.rfind("-done->"), 7, "-gone->");
  CHECK(run({"validate", dir.write("bad.pdm", text)}).code == cli::kInvalidInput);

  const Run syntax = run({"validate", dir.write("syntax.pdm", "std A { states x y; }")});
  CHECK(syntax.code == cli::kInvalidInput);
  CHECK(syntax.err.find(":1:") != std::string::npos);

  CHECK(run({"validate", dir.file("missing.pdm")}).code == cli::kIoError);
  CHECK(run({"validate"}).code == cli::kInvalidInput);
  CHECK(run({"validate", path, "--variant", "basic"}).code == cli::kInvalidInput);
}

TEST_CASE("argument errors") {
  CHECK(run({}).code == cli::kInvalidInput);
  CHECK(run({"frobnicate"}).code == cli::kInvalidInput);
  CHECK(run({"translate", "--variant", "basic", "--what", "everything"}).code ==
        cli::kInvalidInput);
  CHECK(run({"--help"}).code == cli::kOk);
  CHECK(run({"bench"}).code == cli::kInvalidInput);
}

TEST_CASE("bench prints the table") {
  const Run r = run({"bench", "--clients-max", "3"});
  CHECK(r.code == cli::kOk);
  std::istringstream lines(r.out);
  std::string header, row2, row3, extra;
  std::getline(lines, header);
  std::getline(lines, row2);
  std::getline(lines, row3);
  CHECK_FALSE(std::getline(lines, extra));
  std::istringstream a(row2), b(row3);
  int n, s, t;
  a >> n >> s >> t;
  CHECK((n == 2 && s == 69 && t == 142));
  b >> n >> s >> t;
  CHECK((n == 3 && s == 297 && t == 819));

  const Run red = run({"bench", "--clients", "2", "--reduced", "--full-max", "1"});
  CHECK(red.out.find("32") != std::string::npos);
  CHECK(red.out.find("54") != std::string::npos);
  CHECK(red.out.find("69") == std::string::npos);
}

TEST_CASE("lemma commands") {
  CHECK(run({"lemma1", "--variant", "basic"}).code == cli::kOk);
  CHECK(run({"lemma1", "--variant", "basic", "--inert-set", "explain,leave"}).code == cli::kOk);
  CHECK(run({"lemma1", "--variant", "basic", "--inert-set", "enter,thank"}).code ==
        cli::kPropertyFalse);
  CHECK(run({"lemma1", "--variant", "basic", "--inert-set", "sing"}).code == cli::kInvalidInput);
  CHECK(run({"lemma2", "--variant", "basic"}).code == cli::kOk);
  CHECK(run({"lemma1", "--variant", "basic", "--instance", "Server"}).code == cli::kInvalidInput);
}

TEST_CASE("inert and quotient listings") {
  const Run inert = run({"inert", "--variant", "basic"});
  CHECK(inert.code == cli::kOk);
  CHECK(inert.out.find("inert actions: explain, leave") != std::string::npos);

  const Run q = run({"quotient", "--variant", "basic"});
  CHECK(q.out.find("block {AtDoor,Out} (initial): AtDoor, Out") != std::string::npos);
  CHECK(q.out.find("block {Busy,Waiting}: Busy, Waiting") != std::string::npos);
}

TEST_CASE("equiv") {
  TempDir dir;
  const std::string x = dir.write("x.aut", "des (0, 2, 2)\n(0,\"a\",1)\n(1,\"tau\",1)\n");
  const std::string y = dir.write("y.aut", "des (0, 1, 2)\n(0,\"b\",1)\n");
  CHECK(run({"equiv", x, x}).code == cli::kOk);
  CHECK(run({"equiv", x, x, "--oracle"}).code == cli::kOk);
  CHECK(run({"equiv", x, y}).code == cli::kPropertyFalse);
  CHECK(run({"equiv", x, y, "--oracle"}).code == cli::kPropertyFalse);
  CHECK(run({"equiv", x, dir.file("none.aut")}).code == cli::kIoError);
  CHECK(run({"equiv", x, dir.write("bad.aut", "des (0, 1, 1)\n(0,\"a,0)\n")}).code ==
        cli::kInvalidInput);
}

TEST_CASE("translate") {
  TempDir dir;
  const std::string aut = dir.file("sys.aut");
  const Run r = run({"translate", "--variant", "basic", "--clients", "2", "-o", aut});
  CHECK(r.code == cli::kOk);
  const Lts sys = import_aut(slurp(aut));
  CHECK(sys.state_count() == 69);
  CHECK(sys.transitions().size() == 142);
  CHECK(slurp(dir.file("sys.names")).starts_with("0 (Out,Without[triv],Out,Without[triv],Idle)\n"));

  const Run reduced = run({"translate", "--variant", "basic", "--clients", "2", "--reduced"});
  CHECK(reduced.out.starts_with("des (0, 54, 32)\n"));

  const Run global = run({"translate", "--variant", "basic", "--what", "global"});
  CHECK(global.out.starts_with("des (0, 14, 6)\n"));
  CHECK(run({"translate", "--variant", "basic", "--what", "global", "--partition", "XY"}).code ==
        cli::kInvalidInput);

  const Run detailed = run({"translate", "--variant", "basic", "--what", "detailed"});
  CHECK(detailed.out.starts_with("des (0, 7, 4)\n"));
  const Run server =
      run({"translate", "--variant", "basic", "--what", "detailed", "--instance", "Server"});
  CHECK(server.out.find("man(check_1)@Server") != std::string::npos);

  const Run dg = run({"translate", "--variant", "basic", "--what", "dg", "--reduced"});
  CHECK(dg.out.starts_with("des (0, 10, 9)\n"));

  const Run dot = run({"translate", "--variant", "basic", "--what", "global", "--format", "dot"});
  CHECK(dot.out.starts_with("digraph"));

  CHECK(run({"translate", "--variant", "basic", "-o", dir.file("no/such/dir.aut")}).code ==
        cli::kIoError);
}

TEST_CASE("translate is byte-identical across runs") {
  TempDir dir;
  for (const char* name : {"a.aut", "b.aut"})
    REQUIRE(run({"translate", "--variant", "basic", "--clients", "3", "-o", dir.file(name)}).code ==
            cli::kOk);
  CHECK(slurp(dir.file("a.aut")) == slurp(dir.file("b.aut")));
  CHECK(slurp(dir.file("a.names")) == slurp(dir.file("b.names")));
}

TEST_CASE("reduce-system") {
  const Run ok = run({"reduce-system", "--variant", "basic", "--clients", "2"});
  CHECK(ok.code == cli::kOk);
  CHECK(ok.out.find("reduced system: 32 states, 54 transitions") != std::string::npos);

  const Run refused =
      run({"reduce-system", "--variant", "basic", "--clients", "2", "--inert-set", "enter,thank"});
  CHECK(refused.code == cli::kPropertyFalse);
  const Run forced = run({"reduce-system", "--variant", "basic", "--clients", "2", "--inert-set",
                          "enter,thank", "--force"});
  CHECK(forced.code == cli::kOk);
}

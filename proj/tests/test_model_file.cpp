#include <doctest.h>

#include <fstream>
#include <sstream>

#include "paradigm/generators.hpp"
#include "paradigm/model_file.hpp"

using namespace paradigm;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("generated models") {
  CHECK(generate_model(Variant::kBasic, 1).rules.size() == 4);
  CHECK(generate_model(Variant::kBasic, 2).rules.size() == 8);
  const ParadigmModel simple = generate_model(Variant::kSimple, 3);
  CHECK(simple.participants().size() == 3);
  for (const auto* inst : simple.participants()) {
    REQUIRE(inst->roles.size() == 1);
    CHECK(inst->roles[0].global.states.size() == 2);
  }
  const ParadigmModel ret = generate_model(Variant::kReturn, 1);
  CHECK(ret.find_std("Client")->has_transition({"Waiting", "return", "Out"}));
  for (auto v : {Variant::kBasic, Variant::kReturn, Variant::kSimple})
    CHECK(validate_model(generate_model(v, 4)).empty());
  CHECK_THROWS_AS(generate_model(Variant::kBasic, 0), std::invalid_argument);
  CHECK(parse_variant("return") == Variant::kReturn);
  CHECK_THROWS_AS(parse_variant("fancy"), std::invalid_argument);
}

TEST_CASE("print then parse is the identity") {
  for (auto v : {Variant::kBasic, Variant::kReturn, Variant::kSimple})
    for (int n : {1, 2, 3}) {
      const ParadigmModel m = generate_model(v, n);
      const std::string text = print_model(m);
      const ParadigmModel back = parse_model(text);
      CHECK(back == m);
      CHECK(print_model(back) == text);
    }
}

TEST_CASE("bundled basic model file is the generator output") {
  const std::string text = slurp(PARADIGM_SOURCE_DIR "/docs/cs-basic-2.pdm");
  CHECK(parse_model(text) == generate_model(Variant::kBasic, 2));
}

TEST_CASE("hand-written simple model matches the generator") {
  const ParadigmModel hand = parse_model(slurp(PARADIGM_SOURCE_DIR "/tests/data/client-simple-3.pdm"));
  CHECK(validate_model(hand).empty());
  CHECK(hand == generate_model(Variant::kSimple, 3));
}

TEST_CASE("syntax errors carry positions") {
  auto error_at = [](const std::string& text) {
    try {
      parse_model(text);
    } catch (const ModelSyntaxError& e) {
      return std::pair{e.line(), e.column()};
    }
    return std::pair<std::size_t, std::size_t>{0, 0};
  };
  CHECK(error_at("std A {\n  states x y;\n}") == std::pair<std::size_t, std::size_t>{2, 12});
  CHECK(error_at("std A { states x; } $") == std::pair<std::size_t, std::size_t>{1, 21});
  CHECK(error_at("role C(P) { initial S; }") == std::pair<std::size_t, std::size_t>{1, 1});
  CHECK(error_at("std A { trans x -a- y; }").first == 1);
  CHECK(error_at("widget W;").first == 1);
  CHECK(error_at("std A {").first == 1);
}

TEST_CASE("comments and derived actions") {
  const ParadigmModel m = parse_model(
      "// one\nstd A { # two\n states x, y; initial x; trans x -go-> y, y -back-> x; }\n");
  REQUIRE(m.stds.size() == 1);
  CHECK(m.stds[0].actions == std::vector<std::string>{"go", "back"});
}

TEST_CASE("a rule naming an undeclared trap fails validation") {
  std::string text = print_model(generate_model(Variant::kBasic, 1));
  const auto pos = text.find("Without -triv-> Interrupt;");
  REQUIRE(pos != std::string::npos);
  text.replace(pos, 26, "Without -ghost-> Interrupt;");
  const ParadigmModel m = parse_model(text);
  CHECK_FALSE(validate_model(m).valid());
}

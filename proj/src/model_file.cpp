#include "paradigm/model_file.hpp"

#include <cctype>
#include <map>
#include <sstream>

namespace paradigm {

Role make_role(const std::string& instance, const std::string& partition,
               const std::string& initial, std::vector<Transition> transfers) {
  Role r;
  r.partition = partition;
  r.global.name = instance + "(" + partition + ")";
  r.global.initial = initial;
  auto add_unique = [](std::vector<std::string>& v, const std::string& x) {
    for (const auto& y : v)
      if (y == x) return;
    v.push_back(x);
  };
  add_unique(r.global.states, initial);
  for (const auto& t : transfers) {
    add_unique(r.global.states, t.source);
    add_unique(r.global.states, t.target);
    add_unique(r.global.actions, t.action);
  }
  r.global.transitions = std::move(transfers);
  return r;
}

namespace {

enum class Tok { kIdent, kPunct, kArrow, kEnd };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

bool ident_char(char c) {
  const auto u = static_cast<unsigned char>(c);
  return std::isalnum(u) || c == '_' || c == '\'' || c == '.' || u >= 0x80;
}

std::vector<Token> lex(std::string_view text) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < text.size();) {
    const char c = text[i];
    if (c == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      ++col;
      continue;
    }
    if (c == '#' || (c == '/' && i + 1 < text.size() && text[i + 1] == '/')) {
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    if (ident_char(c)) {
      std::size_t j = i;
      while (j < text.size() && ident_char(text[j])) ++j;
      out.push_back({Tok::kIdent, std::string(text.substr(i, j - i)), line, col});
      col += j - i;
      i = j;
      continue;
    }
    if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
      out.push_back({Tok::kArrow, "->", line, col});
      i += 2;
      col += 2;
      continue;
    }
    if (std::string_view("{}();,:*=-").find(c) != std::string_view::npos) {
      out.push_back({Tok::kPunct, std::string(1, c), line, col});
      ++i;
      ++col;
      continue;
    }
    throw ModelSyntaxError(line, col, std::string("unexpected character '") +
                                          c + "'");
  }
  out.push_back({Tok::kEnd, "", line, col});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(lex(text)) {}

  ParadigmModel parse() {
    while (peek().kind != Tok::kEnd) {
      const Token& kw = peek();
      if (is_word("std"))
        model_.stds.push_back(parse_std());
      else if (is_word("partition"))
        model_.partitions.push_back(parse_partition());
      else if (is_word("instance") || is_word("conductor"))
        parse_instance();
      else if (is_word("role"))
        parse_role();
      else if (is_word("rule"))
        model_.rules.push_back(parse_rule());
      else
        fail(kw, "expected std, partition, instance, conductor, role or rule");
    }
    return std::move(model_);
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  bool is_word(std::string_view w) const {
    return peek().kind == Tok::kIdent && peek().text == w;
  }
  bool is_punct(char c) const {
    return peek().kind == Tok::kPunct && peek().text[0] == c;
  }

  [[noreturn]] static void fail(const Token& t, const std::string& what) {
    throw ModelSyntaxError(t.line, t.column,
                           what + (t.kind == Tok::kEnd
                                       ? " at end of input"
                                       : " near '" + t.text + "'"));
  }

  void word(std::string_view w) {
    if (!is_word(w)) fail(peek(), "expected '" + std::string(w) + "'");
    next();
  }
  void punct(char c) {
    if (!is_punct(c)) fail(peek(), std::string("expected '") + c + "'");
    next();
  }
  std::string ident() {
    if (peek().kind != Tok::kIdent) fail(peek(), "expected an identifier");
    return next().text;
  }

  std::vector<std::string> ident_list(char terminator) {
    std::vector<std::string> out;
    if (is_punct(terminator)) return out;
    out.push_back(ident());
    while (is_punct(',')) {
      next();
      out.push_back(ident());
    }
    return out;
  }

  Transition transition() {
    Transition t;
    t.source = ident();
    punct('-');
    t.action = ident();
    if (peek().kind != Tok::kArrow) fail(peek(), "expected '->'");
    next();
    t.target = ident();
    return t;
  }

  std::vector<Transition> transition_list() {
    std::vector<Transition> out;
    if (is_punct(';')) return out;
    out.push_back(transition());
    while (is_punct(',')) {
      next();
      out.push_back(transition());
    }
    return out;
  }

  Std parse_std() {
    word("std");
    Std s;
    s.name = ident();
    punct('{');
    bool actions_given = false;
    while (!is_punct('}')) {
      if (is_word("states")) {
        next();
        auto v = ident_list(';');
        s.states.insert(s.states.end(), v.begin(), v.end());
      } else if (is_word("actions")) {
        next();
        auto v = ident_list(';');
        s.actions.insert(s.actions.end(), v.begin(), v.end());
        actions_given = true;
      } else if (is_word("initial")) {
        next();
        s.initial = ident();
      } else if (is_word("trans")) {
        next();
        auto v = transition_list();
        s.transitions.insert(s.transitions.end(), v.begin(), v.end());
      } else {
        fail(peek(), "expected states, actions, initial or trans");
      }
      punct(';');
    }
    punct('}');
    if (!actions_given)
      for (const auto& t : s.transitions)
        if (!s.has_action(t.action)) s.actions.push_back(t.action);
    return s;
  }

  Phase parse_phase() {
    word("phase");
    Phase p;
    p.name = ident();
    punct('{');
    while (!is_punct('}')) {
      if (is_word("states")) {
        next();
        for (auto& s : ident_list(';')) p.states.insert(std::move(s));
        punct(';');
      } else if (is_word("trans")) {
        next();
        for (auto& t : transition_list()) p.transitions.insert(std::move(t));
        punct(';');
      } else if (is_word("traps")) {
        next();
        punct('{');
        while (!is_punct('}')) {
          Trap t;
          t.name = ident();
          punct('=');
          punct('{');
          for (auto& s : ident_list('}')) t.states.insert(std::move(s));
          punct('}');
          punct(';');
          p.traps.push_back(std::move(t));
        }
        punct('}');
      } else {
        fail(peek(), "expected states, trans or traps");
      }
    }
    punct('}');
    return p;
  }

  Partition parse_partition() {
    word("partition");
    Partition p;
    p.name = ident();
    word("of");
    p.owner = ident();
    punct('{');
    while (!is_punct('}')) p.phases.push_back(parse_phase());
    punct('}');
    return p;
  }

  void parse_instance() {
    ComponentInstance inst;
    inst.conductor = next().text == "conductor";
    inst.name = ident();
    punct('=');
    inst.std = ident();
    punct(';');
    model_.instances.push_back(std::move(inst));
  }

  void parse_role() {
    const Token& at = next();
    const std::string instance = ident();
    punct('(');
    const std::string partition = ident();
    punct(')');
    punct('{');
    std::string initial;
    std::vector<Transition> transfers;
    while (!is_punct('}')) {
      if (is_word("initial")) {
        next();
        initial = ident();
      } else if (is_word("trans")) {
        next();
        auto v = transition_list();
        transfers.insert(transfers.end(), v.begin(), v.end());
      } else {
        fail(peek(), "expected initial or trans");
      }
      punct(';');
    }
    punct('}');
    for (auto& inst : model_.instances)
      if (inst.name == instance) {
        inst.roles.push_back(
            make_role(instance, partition, initial, std::move(transfers)));
        return;
      }
    fail(at, "role for undeclared instance '" + instance + "'");
  }

  ConsistencyRule parse_rule() {
    word("rule");
    ConsistencyRule r;
    r.conductor = ident();
    punct(':');
    r.step = transition();
    punct('*');
    do {
      if (is_punct(',')) next();
      PhaseTransfer p;
      p.instance = ident();
      punct('(');
      p.partition = ident();
      punct(')');
      punct(':');
      p.transfer = transition();
      r.participants.push_back(std::move(p));
    } while (is_punct(','));
    punct(';');
    return r;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  ParadigmModel model_;
};

std::string join(const auto& items) {
  std::string out;
  for (const auto& x : items) {
    if (!out.empty()) out += ", ";
    out += x;
  }
  return out;
}

std::string show(const Transition& t) {
  return t.source + " -" + t.action + "-> " + t.target;
}

std::string join_transitions(const auto& ts) {
  std::string out;
  for (const auto& t : ts) {
    if (!out.empty()) out += ",\n        ";
    out += show(t);
  }
  return out;
}

}  // namespace

ParadigmModel parse_model(std::string_view text) { return Parser(text).parse(); }

std::string print_model(const ParadigmModel& m) {
  std::ostringstream os;
  for (const auto& s : m.stds) {
    os << "std " << s.name << " {\n";
    os << "  states " << join(s.states) << ";\n";
    os << "  actions " << join(s.actions) << ";\n";
    os << "  initial " << s.initial << ";\n";
    os << "  trans " << join_transitions(s.transitions) << ";\n";
    os << "}\n\n";
  }
  for (const auto& p : m.partitions) {
    os << "partition " << p.name << " of " << p.owner << " {\n";
    for (const auto& ph : p.phases) {
      os << "  phase " << ph.name << " {\n";
      os << "    states " << join(ph.states) << ";\n";
      if (!ph.transitions.empty()) {
        std::string ts;
        for (const auto& t : ph.transitions)
          ts += (ts.empty() ? "" : ", ") + show(t);
        os << "    trans " << ts << ";\n";
      }
      os << "    traps {";
      for (const auto& t : ph.traps)
        os << " " << t.name << " = {" << join(t.states) << "};";
      os << " }\n";
      os << "  }\n";
    }
    os << "}\n\n";
  }
  for (const auto& inst : m.instances) {
    os << (inst.conductor ? "conductor " : "instance ") << inst.name << " = "
       << inst.std << ";\n";
    for (const auto& r : inst.roles) {
      os << "role " << inst.name << "(" << r.partition << ") {\n";
      os << "  initial " << r.initial_phase() << ";\n";
      if (!r.global.transitions.empty())
        os << "  trans " << join_transitions(r.global.transitions) << ";\n";
      os << "}\n";
    }
  }
  if (!m.rules.empty()) os << "\n";
  for (const auto& r : m.rules) {
    os << "rule " << r.conductor << ": " << show(r.step);
    for (std::size_t i = 0; i < r.participants.size(); ++i) {
      const auto& p = r.participants[i];
      os << (i ? ",\n    " : " * ") << p.instance << "(" << p.partition
         << "): " << show(p.transfer);
    }
    os << ";\n";
  }
  return os.str();
}

}  // namespace paradigm

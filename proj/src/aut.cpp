#include "paradigm/aut.hpp"

#include <charconv>
#include <sstream>
#include <vector>

namespace paradigm {

std::string export_aut(const Lts& l) {
  const auto& ts = l.transitions();
  std::string out = "des (" + std::to_string(l.initial()) + ", " +
                    std::to_string(ts.size()) + ", " +
                    std::to_string(l.state_count()) + ")\n";
  std::vector<std::string> rendered;
  rendered.reserve(l.labels().size());
  for (const auto& x : l.labels()) rendered.push_back(to_string(x));
  for (const auto& t : ts) {
    out += '(';
    out += std::to_string(t.source);
    out += ",\"";
    out += rendered[t.label];
    out += "\",";
    out += std::to_string(t.target);
    out += ")\n";
  }
  return out;
}

namespace {

class Cursor {
 public:
  Cursor(std::string_view text, std::size_t line) : text_(text), line_(line) {}

  void skip_space() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' ||
                                   text_[pos_] == '\r'))
      ++pos_;
  }
  bool at_end() {
    skip_space();
    return pos_ == text_.size();
  }
  void expect(char c) {
    skip_space();
    if (pos_ >= text_.size() || text_[pos_] != c)
      fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  void expect(std::string_view word) {
    skip_space();
    if (text_.substr(pos_, word.size()) != word)
      fail("expected '" + std::string(word) + "'");
    pos_ += word.size();
  }
  std::size_t number() {
    skip_space();
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(text_.data() + pos_,
                                     text_.data() + text_.size(), value);
    if (ec != std::errc()) fail("expected a number");
    pos_ = static_cast<std::size_t>(ptr - text_.data());
    return value;
  }
  /// Quoted label, or an unquoted one running up to the last comma.
  std::string label() {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == '"') {
      auto close = text_.find('"', pos_ + 1);
      if (close == std::string_view::npos) fail("unbalanced quotes");
      std::string out(text_.substr(pos_ + 1, close - pos_ - 1));
      pos_ = close + 1;
      return out;
    }
    auto comma = text_.rfind(',');
    if (comma == std::string_view::npos || comma < pos_)
      fail("expected a label");
    std::string_view raw = text_.substr(pos_, comma - pos_);
    while (!raw.empty() && raw.back() == ' ') raw.remove_suffix(1);
    if (raw.find('"') != std::string_view::npos) fail("unbalanced quotes");
    pos_ = comma;
    return std::string(raw);
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw AutParseError(line_, what);
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_;
};

}  // namespace

Lts import_aut(std::string_view text) {
  std::vector<std::string_view> lines;
  for (std::size_t start = 0; start <= text.size();) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }

  std::size_t first = 0;
  while (first < lines.size() && Cursor(lines[first], first + 1).at_end())
    ++first;
  if (first == lines.size()) throw AutParseError(1, "missing des header");

  Cursor header(lines[first], first + 1);
  header.expect("des");
  header.expect('(');
  const std::size_t initial = header.number();
  header.expect(',');
  const std::size_t declared = header.number();
  header.expect(',');
  const std::size_t states = header.number();
  header.expect(')');
  if (!header.at_end()) header.fail("trailing text after header");
  if (states == 0) header.fail("state count must be positive");
  if (initial >= states) header.fail("initial state out of range");

  Lts out(states, static_cast<StateId>(initial));
  std::size_t count = 0;
  for (std::size_t i = first + 1; i < lines.size(); ++i) {
    Cursor c(lines[i], i + 1);
    if (c.at_end()) continue;
    c.expect('(');
    const std::size_t src = c.number();
    c.expect(',');
    const std::string label = c.label();
    c.expect(',');
    const std::size_t dst = c.number();
    c.expect(')');
    if (!c.at_end()) c.fail("trailing text after transition");
    if (src >= states || dst >= states) c.fail("state index out of range");
    out.add_transition(static_cast<StateId>(src), parse_label(label),
                       static_cast<StateId>(dst));
    ++count;
  }
  if (count != declared)
    throw AutParseError(first + 1, "header declares " +
                                       std::to_string(declared) +
                                       " transitions, found " +
                                       std::to_string(count));
  out.transitions();
  return out;
}

std::string export_state_names(const Lts& l) {
  std::string out;
  for (StateId s = 0; s < l.state_count(); ++s) {
    if (l.state_names()[s].empty()) continue;
    out += std::to_string(s) + ' ' + l.state_names()[s] + '\n';
  }
  return out;
}

std::string export_dot(const Lts& l, std::string_view graph_name) {
  std::ostringstream os;
  auto escape = [](const std::string& s) {
    std::string out;
    for (char c : s) {
      if (c == '"' || c == '\\') out += '\\';
      out += c;
    }
    return out;
  };
  os << "digraph \"" << escape(std::string(graph_name)) << "\" {\n";
  os << "  __init [shape=point];\n";
  for (StateId s = 0; s < l.state_count(); ++s)
    os << "  " << s << " [label=\"" << escape(l.state_name(s)) << "\"];\n";
  os << "  __init -> " << l.initial() << ";\n";
  for (const auto& t : l.transitions())
    os << "  " << t.source << " -> " << t.target << " [label=\""
       << escape(to_string(l.label(t.label))) << "\"];\n";
  os << "}\n";
  return os.str();
}

}  // namespace paradigm

#include "mnpp/lp_format.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "mnpp/errors.hpp"

namespace mnpp {

std::string format_number(double value) {
  if (value == 0.0) return "0";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, end);
}

namespace {

constexpr std::size_t kTermsPerLine = 8;

void write_expression(std::ostream& out, std::span<const Term> terms, const LinearModel& model) {
  if (terms.empty()) {
    // LP readers need at least one term; a zero coefficient is dropped on read.
    if (!model.variables().empty()) out << " 0 " << model.variable(0).name;
    return;
  }
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i > 0 && i % kTermsPerLine == 0) out << "\n  ";
    const double c = terms[i].coef;
    if (c < 0) {
      out << " - " << format_number(-c);
    } else {
      out << (i == 0 ? " " : " + ") << format_number(c);
    }
    out << ' ' << model.variable(terms[i].var).name;
  }
}

std::string_view sense_text(Sense s) {
  switch (s) {
    case Sense::kLe: return "<=";
    case Sense::kGe: return ">=";
    case Sense::kEq: return "=";
  }
  return "<=";
}

}  // namespace

void write_lp(const LinearModel& model, std::ostream& out) {
  out << "\\ " << model.name() << "\n";
  out << "Maximize\n obj:";
  write_expression(out, model.objective(), model);
  out << "\n";
  if (!model.constraints().empty()) {
    out << "Subject To\n";
    for (const auto& c : model.constraints()) {
      out << ' ' << c.name << ':';
      write_expression(out, c.terms, model);
      out << ' ' << sense_text(c.sense) << ' ' << format_number(c.rhs) << "\n";
    }
  }
  if (!model.variables().empty()) {
    out << "Bounds\n";
    for (const auto& v : model.variables()) {
      const bool lo_inf = std::isinf(v.lower);
      const bool hi_inf = std::isinf(v.upper);
      if (lo_inf && hi_inf) {
        out << ' ' << v.name << " free\n";
      } else if (hi_inf) {
        out << ' ' << v.name << " >= " << format_number(v.lower) << "\n";
      } else {
        out << ' ' << format_number(v.lower) << " <= " << v.name << " <= "
            << format_number(v.upper) << "\n";
      }
    }
  }
  bool any_binary = false;
  for (const auto& v : model.variables()) {
    if (v.kind != VarKind::kBinary) continue;
    if (!any_binary) out << "Binary\n";
    any_binary = true;
    out << ' ' << v.name << "\n";
  }
  out << "End\n";
}

void write_lp(const LinearModel& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot open " + path.string() + " for writing");
  write_lp(model, out);
  if (!out) throw InputError("failed writing " + path.string());
}

std::string to_lp_string(const LinearModel& model) {
  std::ostringstream out;
  write_lp(model, out);
  return out.str();
}

// ---------------------------------------------------------------------------
// Reader

namespace {

enum class TokKind { kName, kNumber, kColon, kPlus, kMinus, kLe, kGe, kEq };

struct Token {
  TokKind kind;
  std::string text;
  double number = 0.0;
  std::size_t line = 0;
};

enum class Section { kNone, kObjective, kConstraints, kBounds, kBinary, kGeneral, kEnd };

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::optional<Section> section_keyword(const std::string& line) {
  const std::string l = lower(trim(line));
  if (l == "maximize" || l == "maximise" || l == "max") return Section::kObjective;
  if (l == "minimize" || l == "minimise" || l == "min") {
    throw InputError("LP reader supports maximization models only");
  }
  if (l == "subject to" || l == "such that" || l == "st" || l == "s.t.") return Section::kConstraints;
  if (l == "bounds" || l == "bound") return Section::kBounds;
  if (l == "binary" || l == "binaries" || l == "bin") return Section::kBinary;
  if (l == "general" || l == "generals" || l == "gen") return Section::kGeneral;
  if (l == "end") return Section::kEnd;
  return std::nullopt;
}

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw InputError("LP line " + std::to_string(line) + ": " + what);
}

void tokenize(const std::string& text, std::size_t line, std::vector<Token>& out) {
  std::size_t i = 0;
  while (i < text.size()) {
    const char ch = text[i];
    if (std::isspace(static_cast<unsigned char>(ch))) {
      ++i;
    } else if (ch == '\\') {
      break;
    } else if (ch == ':') {
      out.push_back({TokKind::kColon, ":", 0.0, line});
      ++i;
    } else if (ch == '+') {
      out.push_back({TokKind::kPlus, "+", 0.0, line});
      ++i;
    } else if (ch == '-') {
      out.push_back({TokKind::kMinus, "-", 0.0, line});
      ++i;
    } else if (ch == '<' || ch == '>' || ch == '=') {
      std::size_t j = i + 1;
      if (j < text.size() && (text[j] == '=' || text[j] == '<' || text[j] == '>')) ++j;
      const std::string op = text.substr(i, j - i);
      TokKind kind = TokKind::kEq;
      if (op.find('<') != std::string::npos) kind = TokKind::kLe;
      if (op.find('>') != std::string::npos) kind = TokKind::kGe;
      out.push_back({kind, op, 0.0, line});
      i = j;
    } else if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') {
      double value = 0.0;
      auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + text.size(), value);
      if (ec != std::errc()) fail(line, "bad number");
      const auto len = static_cast<std::size_t>(ptr - (text.data() + i));
      out.push_back({TokKind::kNumber, text.substr(i, len), value, line});
      i += len;
    } else if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      std::size_t j = i;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_' || text[j] == '.')) {
        ++j;
      }
      out.push_back({TokKind::kName, text.substr(i, j - i), 0.0, line});
      i = j;
    } else {
      fail(line, std::string("unexpected character '") + ch + "'");
    }
  }
}

bool is_infinity_name(const std::string& s) {
  const std::string l = lower(s);
  return l == "inf" || l == "infinity";
}

struct NamedTerm {
  std::string var;
  double coef;
};

struct ParsedConstraint {
  std::string name;
  std::vector<NamedTerm> terms;
  Sense sense;
  double rhs;
};

class Cursor {
 public:
  explicit Cursor(const std::vector<Token>& toks) : toks_(toks) {}
  bool done() const { return pos_ >= toks_.size(); }
  const Token& peek(std::size_t ahead = 0) const { return toks_[pos_ + ahead]; }
  bool has(std::size_t ahead) const { return pos_ + ahead < toks_.size(); }
  const Token& next() { return toks_[pos_++]; }
  std::size_t line() const { return done() ? (toks_.empty() ? 0 : toks_.back().line) : peek().line; }

 private:
  const std::vector<Token>& toks_;
  std::size_t pos_ = 0;
};

// Optional "label:" prefix.
std::string read_label(Cursor& cur) {
  if (cur.has(1) && cur.peek().kind == TokKind::kName && cur.peek(1).kind == TokKind::kColon) {
    std::string name = cur.next().text;
    cur.next();
    return name;
  }
  if (!cur.done() && cur.peek().kind == TokKind::kColon) {
    cur.next();
  }
  return {};
}

// Terms until a sense token or the end of input.
std::vector<NamedTerm> read_expression(Cursor& cur) {
  std::vector<NamedTerm> terms;
  while (!cur.done()) {
    const auto kind = cur.peek().kind;
    if (kind == TokKind::kLe || kind == TokKind::kGe || kind == TokKind::kEq) break;
    double sign = 1.0;
    bool saw_sign = false;
    while (!cur.done() && (cur.peek().kind == TokKind::kPlus || cur.peek().kind == TokKind::kMinus)) {
      if (cur.next().kind == TokKind::kMinus) sign = -sign;
      saw_sign = true;
    }
    if (cur.done()) fail(cur.line(), "dangling sign");
    double coef = 1.0;
    if (cur.peek().kind == TokKind::kNumber) coef = cur.next().number;
    if (cur.done() || cur.peek().kind != TokKind::kName) {
      fail(cur.line(), "expected a variable name");
    }
    if (!saw_sign && !terms.empty()) fail(cur.line(), "missing operator between terms");
    terms.push_back({cur.next().text, sign * coef});
  }
  return terms;
}

double read_signed_number(Cursor& cur) {
  double sign = 1.0;
  while (!cur.done() && (cur.peek().kind == TokKind::kPlus || cur.peek().kind == TokKind::kMinus)) {
    if (cur.next().kind == TokKind::kMinus) sign = -sign;
  }
  if (cur.done()) fail(cur.line(), "expected a number");
  const Token& t = cur.next();
  if (t.kind == TokKind::kNumber) return sign * t.number;
  if (t.kind == TokKind::kName && is_infinity_name(t.text)) {
    return sign * std::numeric_limits<double>::infinity();
  }
  fail(t.line, "expected a number, got '" + t.text + "'");
}

Sense to_sense(const Token& t) {
  if (t.kind == TokKind::kLe) return Sense::kLe;
  if (t.kind == TokKind::kGe) return Sense::kGe;
  return Sense::kEq;
}

struct BoundSpec {
  std::optional<double> lower, upper;
};

}  // namespace

LinearModel read_lp(std::istream& in) {
  std::string model_name = "model";
  Section section = Section::kNone;
  std::vector<Token> objective_tokens, constraint_tokens;
  std::vector<std::pair<std::size_t, std::vector<Token>>> bound_lines;
  std::vector<std::string> binaries;

  std::string line;
  std::size_t lineno = 0;
  bool first_comment = true;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (t[0] == '\\') {
      if (first_comment && section == Section::kNone && t.size() > 2) model_name = trim(t.substr(1));
      first_comment = false;
      continue;
    }
    if (auto s = section_keyword(t)) {
      section = *s;
      if (section == Section::kEnd) break;
      continue;
    }
    switch (section) {
      case Section::kNone: fail(lineno, "content before the Maximize section");
      case Section::kObjective: tokenize(t, lineno, objective_tokens); break;
      case Section::kConstraints: tokenize(t, lineno, constraint_tokens); break;
      case Section::kBounds: {
        std::vector<Token> toks;
        tokenize(t, lineno, toks);
        bound_lines.emplace_back(lineno, std::move(toks));
        break;
      }
      case Section::kBinary: {
        std::vector<Token> toks;
        tokenize(t, lineno, toks);
        for (const auto& tok : toks) {
          if (tok.kind != TokKind::kName) fail(lineno, "expected variable names");
          binaries.push_back(tok.text);
        }
        break;
      }
      case Section::kGeneral: fail(lineno, "general integer variables are not supported");
      case Section::kEnd: break;
    }
  }
  if (section != Section::kEnd) fail(lineno, "missing End");

  // Variable order: first appearance in Bounds, then anywhere else.
  std::vector<std::string> order;
  std::map<std::string, std::size_t> seen;
  auto note = [&](const std::string& name) {
    if (seen.emplace(name, order.size()).second) order.push_back(name);
  };

  std::map<std::string, BoundSpec> bounds;
  for (const auto& [ln, toks] : bound_lines) {
    Cursor cur(toks);
    // forms: lo <= x <= hi | x >= lo | x <= hi | x = v | x free | lo <= x
    if (toks.size() == 2 && toks[0].kind == TokKind::kName && lower(toks[1].text) == "free") {
      note(toks[0].text);
      bounds[toks[0].text] = {-std::numeric_limits<double>::infinity(),
                              std::numeric_limits<double>::infinity()};
      continue;
    }
    if (!toks.empty() && toks[0].kind == TokKind::kName && !is_infinity_name(toks[0].text)) {
      const std::string name = cur.next().text;
      note(name);
      if (cur.done()) fail(ln, "incomplete bound");
      const Token op = cur.next();
      const double v = read_signed_number(cur);
      auto& b = bounds[name];
      if (op.kind == TokKind::kGe) b.lower = v;
      else if (op.kind == TokKind::kLe) b.upper = v;
      else if (op.kind == TokKind::kEq) b.lower = b.upper = v;
      else fail(ln, "expected a comparison");
    } else {
      const double lo = read_signed_number(cur);
      if (cur.done() || cur.next().kind != TokKind::kLe) fail(ln, "expected '<='");
      if (cur.done() || cur.peek().kind != TokKind::kName) fail(ln, "expected a variable name");
      const std::string name = cur.next().text;
      note(name);
      auto& b = bounds[name];
      b.lower = lo;
      if (!cur.done()) {
        if (cur.next().kind != TokKind::kLe) fail(ln, "expected '<='");
        b.upper = read_signed_number(cur);
      }
    }
    if (!cur.done()) fail(ln, "trailing tokens in bound");
  }

  std::vector<NamedTerm> objective;
  {
    Cursor cur(objective_tokens);
    read_label(cur);
    objective = read_expression(cur);
    if (!cur.done()) fail(cur.line(), "unexpected comparison in objective");
  }

  std::vector<ParsedConstraint> constraints;
  {
    Cursor cur(constraint_tokens);
    std::size_t unnamed = 0;
    while (!cur.done()) {
      std::string name = read_label(cur);
      if (name.empty()) name = "R" + std::to_string(++unnamed);
      auto terms = read_expression(cur);
      if (cur.done()) fail(cur.line(), "constraint '" + name + "' has no sense");
      const Sense sense = to_sense(cur.next());
      const double rhs = read_signed_number(cur);
      constraints.push_back({std::move(name), std::move(terms), sense, rhs});
    }
  }

  for (const auto& t : objective) note(t.var);
  for (const auto& c : constraints) {
    for (const auto& t : c.terms) note(t.var);
  }
  for (const auto& b : binaries) note(b);

  LinearModel model(model_name);
  const std::map<std::string, bool> is_binary = [&] {
    std::map<std::string, bool> m;
    for (const auto& b : binaries) m[b] = true;
    return m;
  }();
  for (const auto& name : order) {
    const bool bin = is_binary.count(name) != 0;
    double lo = 0.0;
    double hi = bin ? 1.0 : std::numeric_limits<double>::infinity();
    if (auto it = bounds.find(name); it != bounds.end()) {
      if (it->second.lower) lo = *it->second.lower;
      if (it->second.upper) hi = *it->second.upper;
    }
    model.add_variable(name, lo, hi, bin ? VarKind::kBinary : VarKind::kContinuous);
  }
  for (const auto& t : objective) model.add_objective(*model.find(t.var), t.coef);
  for (auto& c : constraints) {
    std::vector<Term> terms;
    terms.reserve(c.terms.size());
    for (const auto& t : c.terms) terms.push_back({*model.find(t.var), t.coef});
    model.add_constraint(std::move(c.name), std::move(terms), c.sense, c.rhs);
  }
  return model;
}

LinearModel read_lp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  return read_lp(in);
}

}  // namespace mnpp

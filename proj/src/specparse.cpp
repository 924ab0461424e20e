#include "gennum/specparse.hpp"

#include <cctype>
#include <string>
#include <utility>
#include <vector>

namespace gennum::specparse {

namespace {

using catalog::AbelianSpec;
using catalog::CustomAffineSpec;
using catalog::MatrixSplitSpec;
using catalog::MaxClass3Spec;
using catalog::ScalarSplitSpec;
using catalog::TorsionScalarSpec;

[[noreturn]] void syntax_error(int line, int col, const std::string& msg) {
  fail(errc::syntax_error,
       std::to_string(line) + ":" + std::to_string(col) + ": " + msg);
}

[[noreturn]] void semantic_error(int line, int col, const std::string& msg) {
  fail(errc::semantic_error,
       std::to_string(line) + ":" + std::to_string(col) + ": " + msg);
}

struct Token {
  enum Kind {
    Ident,
    Integer,
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Equals,
    Semi,
    Comma,
    End
  };
  Kind kind = End;
  std::string text;
  Int value = 0;
  int line = 1;
  int col = 1;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) {}

  Token next() {
    skip_space();
    Token t;
    t.line = line_;
    t.col = col_;
    if (at_ >= text_.size()) {
      t.kind = Token::End;
      return t;
    }
    const char c = text_[at_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (at_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[at_])) ||
              text_[at_] == '_'))
        t.text += take();
      t.kind = Token::Ident;
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '-') {
      bool negative = false;
      if (c == '-') {
        take();
        negative = true;
        if (at_ >= text_.size() ||
            !std::isdigit(static_cast<unsigned char>(text_[at_])))
          syntax_error(t.line, t.col, "expected digits after '-'");
      }
      Int v = 0;
      while (at_ < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[at_]))) {
        const Int d = take() - '0';
        if (v > ((Int{1} << 62) - d) / 10)
          syntax_error(t.line, t.col, "integer literal out of range");
        v = v * 10 + d;
      }
      t.kind = Token::Integer;
      t.value = negative ? -v : v;
      return t;
    }
    switch (c) {
      case '{': t.kind = Token::LBrace; break;
      case '}': t.kind = Token::RBrace; break;
      case '[': t.kind = Token::LBracket; break;
      case ']': t.kind = Token::RBracket; break;
      case '=': t.kind = Token::Equals; break;
      case ';': t.kind = Token::Semi; break;
      case ',': t.kind = Token::Comma; break;
      default:
        syntax_error(t.line, t.col,
                     std::string("unexpected character '") + c + "'");
    }
    take();
    return t;
  }

 private:
  char take() {
    const char c = text_[at_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void skip_space() {
    for (;;) {
      while (at_ < text_.size() &&
             std::isspace(static_cast<unsigned char>(text_[at_])))
        take();
      if (at_ < text_.size() && text_[at_] == '#') {
        while (at_ < text_.size() && text_[at_] != '\n') take();
        continue;
      }
      return;
    }
  }

  const std::string& text_;
  std::size_t at_ = 0;
  int line_ = 1;
  int col_ = 1;
};

struct Value {
  enum Kind { Scalar, Vector, Matrix };
  Kind kind = Scalar;
  Int i = 0;
  std::vector<Int> vec;
  std::vector<std::vector<Int>> rows;
  int line = 1;
  int col = 1;
};

struct Entry {
  std::string key;
  Value value;
  int line = 1;
  int col = 1;
};

class Parser {
 public:
  explicit Parser(const std::string& text) : lex_(text) { advance(); }

  std::vector<GroupSpec> document() {
    std::vector<GroupSpec> out;
    while (cur_.kind != Token::End) out.push_back(item());
    return out;
  }

 private:
  void advance() { cur_ = lex_.next(); }

  Token expect(Token::Kind kind, const std::string& what) {
    if (cur_.kind != kind) syntax_error(cur_.line, cur_.col, "expected " + what);
    Token t = cur_;
    advance();
    return t;
  }

  GroupSpec item() {
    const Token head = expect(Token::Ident, "'group'");
    if (head.text != "group") syntax_error(head.line, head.col, "expected 'group'");
    const Token kind = expect(Token::Ident, "a group kind");
    static const char* kinds[] = {"abelian", "scalar",  "matrix",
                                  "maxclass3", "torsion", "affine"};
    bool known = false;
    for (const char* k : kinds) known = known || kind.text == k;
    if (!known)
      syntax_error(kind.line, kind.col, "unknown group kind '" + kind.text + "'");
    expect(Token::LBrace, "'{'");
    std::vector<Entry> entries;
    while (cur_.kind != Token::RBrace) {
      Entry e;
      const Token key = expect(Token::Ident, "a key or '}'");
      e.key = key.text;
      e.line = key.line;
      e.col = key.col;
      expect(Token::Equals, "'='");
      e.value = value();
      expect(Token::Semi, "';'");
      entries.push_back(std::move(e));
    }
    expect(Token::RBrace, "'}'");
    GroupSpec spec = assemble(kind, entries);
    try {
      catalog::validate(spec);
    } catch (const error& e) {
      if (e.code() == errc::syntax_error || e.code() == errc::semantic_error) throw;
      semantic_error(head.line, head.col, e.what());
    }
    return spec;
  }

  Value value() {
    Value v;
    v.line = cur_.line;
    v.col = cur_.col;
    if (cur_.kind == Token::Integer) {
      v.kind = Value::Scalar;
      v.i = cur_.value;
      advance();
      return v;
    }
    if (cur_.kind != Token::LBracket)
      syntax_error(cur_.line, cur_.col, "expected a value");
    advance();
    if (cur_.kind == Token::LBracket) {
      v.kind = Value::Matrix;
      v.rows.push_back(row());
      while (cur_.kind == Token::Comma) {
        advance();
        const int rl = cur_.line, rc = cur_.col;
        v.rows.push_back(row());
        if (v.rows.back().size() != v.rows.front().size())
          syntax_error(rl, rc, "matrix rows differ in length");
      }
      expect(Token::RBracket, "']'");
      return v;
    }
    v.kind = Value::Vector;
    v.vec.push_back(expect(Token::Integer, "an integer").value);
    while (cur_.kind == Token::Comma) {
      advance();
      v.vec.push_back(expect(Token::Integer, "an integer").value);
    }
    expect(Token::RBracket, "']'");
    return v;
  }

  std::vector<Int> row() {
    expect(Token::LBracket, "'['");
    std::vector<Int> out;
    out.push_back(expect(Token::Integer, "an integer").value);
    while (cur_.kind == Token::Comma) {
      advance();
      out.push_back(expect(Token::Integer, "an integer").value);
    }
    expect(Token::RBracket, "']'");
    return out;
  }

  static Mat to_matrix(const Value& v) {
    if (v.kind != Value::Matrix)
      semantic_error(v.line, v.col, "expected a bracketed matrix value");
    const Int r = static_cast<Int>(v.rows.size());
    const Int c = static_cast<Int>(v.rows.front().size());
    Mat m(r, c);
    for (Int i = 0; i < r; ++i)
      for (Int j = 0; j < c; ++j) m(i, j) = v.rows[i][j];
    return m;
  }

  static Vec to_vector(const Value& v) {
    if (v.kind != Value::Vector)
      semantic_error(v.line, v.col, "expected a bracketed vector value");
    Vec out(static_cast<Int>(v.vec.size()));
    for (Int i = 0; i < out.size(); ++i) out(i) = v.vec[i];
    return out;
  }

  static Int to_int(const Value& v) {
    if (v.kind != Value::Scalar)
      semantic_error(v.line, v.col, "expected an integer value");
    return v.i;
  }

  struct Keys {
    const std::string kind;
    const std::vector<Entry>& entries;

    const Entry* find(const std::string& key, bool unique = true) const {
      const Entry* hit = nullptr;
      for (const Entry& e : entries) {
        if (e.key != key) continue;
        if (hit && unique)
          semantic_error(e.line, e.col, "duplicate key '" + key + "'");
        if (!hit) hit = &e;
      }
      return hit;
    }

    Int require_int(const std::string& key, int line, int col) const {
      const Entry* e = find(key);
      if (!e)
        semantic_error(line, col,
                       kind + " spec needs '" + key + "'");
      return to_int(e->value);
    }

    void restrict_to(std::initializer_list<const char*> allowed) const {
      for (const Entry& e : entries) {
        bool ok = false;
        for (const char* k : allowed) ok = ok || e.key == k;
        if (!ok)
          semantic_error(e.line, e.col,
                         "unknown key '" + e.key + "' for kind '" + kind + "'");
      }
    }
  };

  GroupSpec assemble(const Token& kind, const std::vector<Entry>& entries) {
    const Keys keys{kind.text, entries};
    if (kind.text == "abelian") {
      keys.restrict_to({"p", "rank"});
      AbelianSpec s;
      s.p = keys.require_int("p", kind.line, kind.col);
      s.d = keys.require_int("rank", kind.line, kind.col);
      return s;
    }
    if (kind.text == "scalar") {
      keys.restrict_to({"p", "rank", "lambda", "s", "sign"});
      ScalarSplitSpec s;
      s.p = keys.require_int("p", kind.line, kind.col);
      s.d = keys.require_int("rank", kind.line, kind.col);
      const Entry* lambda = keys.find("lambda");
      const Entry* exponent = keys.find("s");
      const Entry* sign = keys.find("sign");
      if (lambda && (exponent || sign))
        semantic_error(lambda->line, lambda->col,
                       "give either lambda or s/sign, not both");
      if (lambda) {
        try {
          s.form = padic::scalar_normal_form_exact(s.p, to_int(lambda->value));
        } catch (const error& e) {
          semantic_error(lambda->line, lambda->col, e.what());
        }
        return s;
      }
      if (!exponent)
        semantic_error(kind.line, kind.col, "scalar spec needs lambda or s");
      Int sg = sign ? to_int(sign->value) : 1;
      if (sg != 1 && sg != -1)
        semantic_error(sign->line, sign->col, "sign must be 1 or -1");
      s.form.kind = sg > 0 ? padic::ScalarForm::Plus : padic::ScalarForm::Minus;
      s.form.s = to_int(exponent->value);
      return s;
    }
    if (kind.text == "matrix") {
      keys.restrict_to({"p", "t"});
      MatrixSplitSpec s;
      s.p = keys.require_int("p", kind.line, kind.col);
      const Entry* t = keys.find("t");
      if (!t) semantic_error(kind.line, kind.col, "matrix spec needs 't'");
      s.t = to_matrix(t->value);
      return s;
    }
    if (kind.text == "maxclass3") {
      if (!entries.empty())
        semantic_error(entries.front().line, entries.front().col,
                       "maxclass3 takes no keys");
      return MaxClass3Spec{};
    }
    if (kind.text == "torsion") {
      keys.restrict_to({"p", "t"});
      TorsionScalarSpec s;
      s.p = keys.require_int("p", kind.line, kind.col);
      const Entry* t = keys.find("t");
      if (!t) semantic_error(kind.line, kind.col, "torsion spec needs 't'");
      s.t = to_matrix(t->value);
      return s;
    }
    keys.restrict_to({"p", "dim", "counter", "m", "v"});
    CustomAffineSpec s;
    s.p = keys.require_int("p", kind.line, kind.col);
    s.dim = keys.require_int("dim", kind.line, kind.col);
    if (const Entry* c = keys.find("counter")) s.counter = to_int(c->value);
    bool pending = false;
    for (const Entry& e : entries) {
      if (e.key == "m") {
        const Mat m = to_matrix(e.value);
        if (m.rows() != s.dim || m.cols() != s.dim)
          semantic_error(e.line, e.col, "generator matrix must be dim x dim");
        s.gens.emplace_back(m, Vec::Zero(s.dim));
        pending = true;
      } else if (e.key == "v") {
        const Vec v = to_vector(e.value);
        if (v.size() != s.dim)
          semantic_error(e.line, e.col, "generator vector must have length dim");
        if (pending) {
          s.gens.back().second = v;
          pending = false;
        } else {
          s.gens.emplace_back(Mat::Identity(s.dim, s.dim), v);
        }
      }
    }
    if (s.gens.empty())
      semantic_error(kind.line, kind.col, "affine spec needs generators");
    return s;
  }

  Lexer lex_;
  Token cur_;
};

std::string render_int_matrix(const Mat& m) {
  std::string out = "[";
  for (Int i = 0; i < m.rows(); ++i) {
    if (i) out += ",";
    out += "[";
    for (Int j = 0; j < m.cols(); ++j) {
      if (j) out += ",";
      out += std::to_string(m(i, j));
    }
    out += "]";
  }
  return out + "]";
}

std::string render_int_vector(const Vec& v) {
  std::string out = "[";
  for (Int i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(v(i));
  }
  return out + "]";
}

}  // namespace

std::vector<GroupSpec> parse_spec(const std::string& text) {
  return Parser(text).document();
}

std::string render_spec(const GroupSpec& spec) {
  using padic::scalar_of_form;
  return std::visit(
      overloaded{
          [](const AbelianSpec& s) {
            return "group abelian { p=" + std::to_string(s.p) +
                   "; rank=" + std::to_string(s.d) + "; }";
          },
          [](const ScalarSplitSpec& s) {
            return "group scalar { p=" + std::to_string(s.p) +
                   "; rank=" + std::to_string(s.d) +
                   "; lambda=" + std::to_string(scalar_of_form(s.p, s.form)) +
                   "; }";
          },
          [](const MatrixSplitSpec& s) {
            return "group matrix { p=" + std::to_string(s.p) +
                   "; t=" + render_int_matrix(s.t) + "; }";
          },
          [](const MaxClass3Spec&) { return std::string("group maxclass3 {}"); },
          [](const TorsionScalarSpec& s) {
            return "group torsion { p=" + std::to_string(s.p) +
                   "; t=" + render_int_matrix(s.t) + "; }";
          },
          [](const CustomAffineSpec& s) {
            std::string out = "group affine { p=" + std::to_string(s.p) +
                              "; dim=" + std::to_string(s.dim) + ";";
            if (s.counter >= 0) out += " counter=" + std::to_string(s.counter) + ";";
            for (const auto& [m, v] : s.gens) {
              out += " m=" + render_int_matrix(m) + ";";
              out += " v=" + render_int_vector(v) + ";";
            }
            return out + " }";
          }},
      spec);
}

}  // namespace gennum::specparse

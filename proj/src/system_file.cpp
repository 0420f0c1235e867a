#include "stablci/system_file.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "stablci/error.hpp"

namespace stablci {

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  SystemFile file() {
    SystemFile out;
    std::vector<std::string> params, unknowns;
    bool have_vars = false;
    skip_space();
    if (peek_keyword("params")) {
      consume_keyword("params");
      params = identifier_list();
      expect(';');
    }
    skip_space();
    if (!peek_keyword("vars")) fail("expected 'vars'");
    consume_keyword("vars");
    unknowns = identifier_list();
    have_vars = true;
    expect(';');
    check_distinct(params, unknowns);
    out.ring = make_ring(std::move(params), std::move(unknowns));
    ring_ = out.ring;
    bool have_sys = false;
    while (true) {
      skip_space();
      if (at_end()) break;
      if (peek_keyword("sys")) {
        section("sys");
        out.system = poly_list();
        have_sys = true;
      } else if (peek_keyword("eps")) {
        section("eps");
        out.eps = poly_list();
      } else if (peek_keyword("base")) {
        section("base");
        out.base_point = number_list();
        expect(';');
      } else if (peek_keyword("roots") || peek_keyword("root")) {
        section(peek_keyword("roots") ? "roots" : "root");
        out.roots.push_back(number_list());
        expect(';');
        // "roots:" may list several points separated by ';'.
        while (true) {
          skip_space();
          if (at_end() || !looks_like_number()) break;
          out.roots.push_back(number_list());
          expect(';');
        }
      } else {
        fail("expected a section keyword (sys, eps, base, root)");
      }
    }
    if (!have_vars || !have_sys) fail("missing 'sys:' section");
    const auto& ring = *out.ring;
    if (out.base_point && static_cast<int>(out.base_point->size()) != ring.num_params()) {
      throw Error(ErrorCode::kArityMismatch, "base point has " + std::to_string(out.base_point->size()) +
                                                 " coordinates for " + std::to_string(ring.num_params()) + " parameters");
    }
    for (const auto& r : out.roots) {
      if (static_cast<int>(r.size()) != ring.num_unknowns()) {
        throw Error(ErrorCode::kArityMismatch, "root has wrong number of coordinates");
      }
    }
    if (!out.eps.empty() && out.eps.size() != out.system.size()) {
      throw Error(ErrorCode::kArityMismatch, "eps must have one entry per equation");
    }
    return out;
  }

  ExactPoly single(const RingPtr& ring) {
    ring_ = ring;
    ExactPoly p = expr();
    skip_space();
    if (!at_end()) fail("unexpected trailing input");
    return p;
  }

  std::vector<Rational> point() {
    auto v = number_list();
    skip_space();
    if (!at_end()) fail("unexpected trailing input");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    int line = 1, col = 1;
    for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw Error(ErrorCode::kParse, "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + msg);
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char cur() const { return at_end() ? '\0' : text_[pos_]; }

  void skip_space() {
    while (!at_end()) {
      char c = cur();
      if (c == '#') {
        while (!at_end() && cur() != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  static bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
  static bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

  bool peek_keyword(std::string_view kw) {
    skip_space();
    if (text_.substr(pos_, kw.size()) != kw) return false;
    std::size_t end = pos_ + kw.size();
    return end >= text_.size() || !ident_char(text_[end]);
  }

  void consume_keyword(std::string_view kw) { pos_ += kw.size(); }

  void section(std::string_view kw) {
    consume_keyword(kw);
    expect(':');
  }

  void expect(char c) {
    skip_space();
    if (cur() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string identifier() {
    skip_space();
    if (!ident_start(cur())) fail("expected identifier");
    std::size_t start = pos_;
    while (!at_end() && ident_char(cur())) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  std::vector<std::string> identifier_list() {
    std::vector<std::string> ids;
    ids.push_back(identifier());
    while (true) {
      skip_space();
      if (cur() == ',') {
        ++pos_;
        ids.push_back(identifier());
      } else if (ident_start(cur())) {
        ids.push_back(identifier());
      } else {
        break;
      }
    }
    return ids;
  }

  void check_distinct(const std::vector<std::string>& params, const std::vector<std::string>& unknowns) {
    std::vector<std::string> all = params;
    all.insert(all.end(), unknowns.begin(), unknowns.end());
    for (std::size_t i = 0; i < all.size(); ++i) {
      for (std::size_t j = i + 1; j < all.size(); ++j) {
        if (all[i] == all[j]) fail("identifier '" + all[i] + "' declared twice");
      }
    }
  }

  bool looks_like_number() {
    skip_space();
    char c = cur();
    return std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '.';
  }

  /// Unsigned decimal literal, optionally followed by "/denominator".
  Rational number() {
    skip_space();
    std::size_t start = pos_;
    while (!at_end() && (std::isdigit(static_cast<unsigned char>(cur())) || cur() == '.')) ++pos_;
    if (!at_end() && (cur() == 'e' || cur() == 'E')) {
      std::size_t save = pos_;
      ++pos_;
      if (cur() == '+' || cur() == '-') ++pos_;
      if (std::isdigit(static_cast<unsigned char>(cur()))) {
        while (!at_end() && std::isdigit(static_cast<unsigned char>(cur()))) ++pos_;
      } else {
        pos_ = save;
      }
    }
    if (start == pos_) fail("expected number");
    auto q = parse_rational(text_.substr(start, pos_ - start));
    if (!q) {
      pos_ = start;
      fail("malformed number");
    }
    return *q;
  }

  Rational signed_number() {
    skip_space();
    bool neg = false;
    while (cur() == '-' || cur() == '+') {
      if (cur() == '-') neg = !neg;
      ++pos_;
      skip_space();
    }
    Rational q = number();
    skip_space();
    if (cur() == '/') {
      ++pos_;
      std::size_t at = pos_;
      Rational d = number();
      if (sgn(d) == 0) {
        pos_ = at;
        fail("division by zero");
      }
      q /= d;
    }
    return neg ? Rational(-q) : q;
  }

  std::vector<Rational> number_list() {
    std::vector<Rational> v;
    v.push_back(signed_number());
    while (true) {
      skip_space();
      if (cur() != ',') break;
      ++pos_;
      v.push_back(signed_number());
    }
    return v;
  }

  PolySystem poly_list() {
    PolySystem out;
    while (true) {
      skip_space();
      if (at_end() || peek_section()) break;
      out.push_back(expr());
      expect(';');
    }
    if (out.empty()) fail("expected at least one polynomial");
    return out;
  }

  bool peek_section() {
    for (std::string_view kw : {"sys", "eps", "base", "roots", "root"}) {
      if (!peek_keyword(kw)) continue;
      std::size_t p = pos_ + kw.size();
      while (p < text_.size() && std::isspace(static_cast<unsigned char>(text_[p]))) ++p;
      if (p < text_.size() && text_[p] == ':') return true;
    }
    return false;
  }

  ExactPoly expr() {
    ExactPoly acc = term();
    while (true) {
      skip_space();
      if (cur() == '+') {
        ++pos_;
        acc = acc + term();
      } else if (cur() == '-') {
        ++pos_;
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }

  ExactPoly term() {
    ExactPoly acc = unary();
    while (true) {
      skip_space();
      if (cur() == '*') {
        ++pos_;
        acc = acc * unary();
      } else if (cur() == '/') {
        ++pos_;
        std::size_t at = pos_;
        ExactPoly d = unary();
        if (!d.is_constant()) {
          pos_ = at;
          fail("division by a non-constant");
        }
        if (d.is_zero()) {
          pos_ = at;
          fail("division by zero");
        }
        Rational inv = 1 / d.raw().lead_coeff();
        acc = inv * acc;
      } else {
        return acc;
      }
    }
  }

  ExactPoly unary() {
    skip_space();
    if (cur() == '-') {
      ++pos_;
      return -unary();
    }
    if (cur() == '+') {
      ++pos_;
      return unary();
    }
    return power();
  }

  ExactPoly power() {
    ExactPoly base = atom();
    skip_space();
    if (cur() != '^') return base;
    ++pos_;
    skip_space();
    std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(cur()))) ++pos_;
    if (start == pos_) fail("expected non-negative integer exponent");
    int e = std::stoi(std::string(text_.substr(start, pos_ - start)));
    return ExactPoly(ring_, qpoly::pow(base.raw(), e));
  }

  ExactPoly atom() {
    skip_space();
    char c = cur();
    if (c == '(') {
      ++pos_;
      ExactPoly e = expr();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return ExactPoly::constant(ring_, number());
    if (ident_start(c)) {
      std::size_t start = pos_;
      std::string name = identifier();
      auto var = ring_->find(name);
      if (!var) {
        pos_ = start;
        int line = 1, col = 1;
        for (std::size_t i = 0; i < pos_; ++i) {
          if (text_[i] == '\n') {
            ++line;
            col = 1;
          } else {
            ++col;
          }
        }
        throw Error(ErrorCode::kUndeclaredIdentifier, "line " + std::to_string(line) + ", column " +
                                                          std::to_string(col) + ": undeclared identifier '" + name + "'");
      }
      return ExactPoly::variable(ring_, *var);
    }
    if (at_end()) fail("unexpected end of input");
    fail(std::string("unexpected character '") + c + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  RingPtr ring_;
};

std::string join_names(const std::vector<std::string>& names) {
  std::string s;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i > 0) s += ", ";
    s += names[i];
  }
  return s;
}

std::string join_point(const std::vector<Rational>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i > 0) s += ", ";
    s += to_string(v[i]);
  }
  return s;
}

}  // namespace

SystemFile parse_system(std::string_view text) { return Parser(text).file(); }

SystemFile load_system_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kInvalidArgument, "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_system(buf.str());
}

ExactPoly parse_poly(std::string_view text, const RingPtr& ring) { return Parser(text).single(ring); }

std::vector<Rational> parse_point(std::string_view text) { return Parser(text).point(); }

std::string print_system(const SystemFile& file) {
  const Ring& ring = *file.ring;
  std::ostringstream out;
  if (ring.num_params() > 0) out << "params " << join_names(ring.params()) << ";\n";
  out << "vars " << join_names(ring.unknowns()) << ";\n";
  out << "sys:\n";
  for (const auto& p : file.system) out << "  " << p.to_string() << ";\n";
  if (!file.eps.empty()) {
    out << "eps:\n";
    for (const auto& p : file.eps) out << "  " << p.to_string() << ";\n";
  }
  if (file.base_point) out << "base: " << join_point(*file.base_point) << ";\n";
  for (const auto& r : file.roots) out << "root: " << join_point(r) << ";\n";
  return out.str();
}

}  // namespace stablci

#include "schreier/dsl.hpp"

#include <cctype>
#include <sstream>

namespace schreier {

ParseError::ParseError(std::string message, size_t offset_, int line_, int col_,
                       std::string expected_)
    : std::runtime_error(std::move(message)),
      offset(offset_),
      line(line_),
      col(col_),
      expected(std::move(expected_)) {}

namespace {

class Cursor {
public:
  explicit Cursor(std::string_view s) : s_(s) {}

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool at_end() {
    skip_ws();
    return pos_ >= s_.size();
  }

  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  bool try_eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void eat(char c, const std::string& what) {
    if (!try_eat(c)) fail(what);
  }

  // Longest alphabetic identifier at the cursor, without consuming.
  std::string peek_ident() {
    skip_ws();
    size_t p = pos_;
    std::string out;
    while (p < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[p])))) {
      out.push_back(s_[p]);
      ++p;
    }
    return out;
  }

  std::string ident() {
    std::string w = peek_ident();
    if (w.empty()) fail("identifier");
    pos_ += w.size();
    return w;
  }

  bool try_word(std::string_view w) {
    if (peek_ident() == w) {
      pos_ += w.size();
      return true;
    }
    return false;
  }

  long nat(const std::string& what = "number") {
    skip_ws();
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) fail(what);
    long v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      v = v * 10 + (s_[pos_] - '0');
      if (v > 1000000000L) fail("a smaller number");
      ++pos_;
    }
    return v;
  }

  void expect_end() {
    if (!at_end()) fail("end of input");
  }

  [[noreturn]] void fail(const std::string& expected) {
    fail_with("syntax error", expected);
  }

  [[noreturn]] void fail_with(const std::string& message, const std::string& expected) {
    skip_ws();
    int line = 1, col = 1;
    for (size_t i = 0; i < pos_ && i < s_.size(); ++i) {
      if (s_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::ostringstream os;
    os << message << " at offset " << pos_ << " (line " << line << ", column " << col
       << "): expected " << expected;
    throw ParseError(os.str(), pos_, line, col, expected);
  }

  size_t pos() const { return pos_; }

private:
  std::string_view s_;
  size_t pos_ = 0;
};

Ordinal ordinal_expr(Cursor& c);

Ordinal ordinal_atom(Cursor& c) {
  if (std::isdigit(static_cast<unsigned char>(c.peek()))) return Ordinal::finite(c.nat());
  if (c.try_word("w")) {
    if (c.try_eat('^')) return Ordinal::omega_power(ordinal_atom(c));
    return Ordinal::omega();
  }
  if (c.try_eat('(')) {
    Ordinal o = ordinal_expr(c);
    c.eat(')', "')'");
    return o;
  }
  c.fail("an ordinal exponent");
}

Ordinal ordinal_term(Cursor& c) {
  if (std::isdigit(static_cast<unsigned char>(c.peek()))) return Ordinal::finite(c.nat());
  if (c.try_word("w")) {
    Ordinal exp = Ordinal::finite(1);
    if (c.try_eat('^')) exp = ordinal_atom(c);
    Integer coeff = 1;
    if (c.try_eat('*')) {
      long v = c.nat("a positive coefficient");
      if (v < 1) c.fail("a positive coefficient");
      coeff = v;
    }
    return Ordinal::single_term(exp, coeff);
  }
  c.fail("an ordinal term");
}

Ordinal ordinal_expr(Cursor& c) {
  Ordinal o = ordinal_term(c);
  while (c.try_eat('+')) o = o + ordinal_term(c);
  return o;
}

FinSet finset_expr(Cursor& c) {
  c.eat('{', "'{'");
  std::vector<int> elems;
  if (!c.try_eat('}')) {
    do {
      long v = c.nat("a positive element");
      elems.push_back(static_cast<int>(v));
    } while (c.try_eat(','));
    c.eat('}', "'}' or ','");
  }
  try {
    return FinSet(std::move(elems));
  } catch (const std::invalid_argument& ex) {
    c.fail_with(std::string("invalid set (") + ex.what() + ")",
                "strictly increasing positive elements");
  }
}

Relabeling relabel_expr(Cursor& c) {
  std::string w = c.peek_ident();
  if (w == "even") {
    c.ident();
    return Relabeling::evens();
  }
  if (w == "odd") {
    c.ident();
    return Relabeling::odds();
  }
  if (w == "ap") {
    c.ident();
    c.eat('(', "'('");
    long a = c.nat();
    c.eat(',', "','");
    long d = c.nat();
    c.eat(')', "')'");
    return Relabeling::arithmetic(static_cast<int>(a), static_cast<int>(d));
  }
  if (w == "tab") {
    c.ident();
    c.eat('(', "'('");
    std::vector<int> prefix;
    do {
      prefix.push_back(static_cast<int>(c.nat()));
    } while (c.try_eat(','));
    c.eat(';', "';'");
    long a = c.nat();
    c.eat(',', "','");
    long d = c.nat();
    c.eat(')', "')'");
    return Relabeling::with_prefix(std::move(prefix), static_cast<int>(a), static_cast<int>(d));
  }
  c.fail("a relabeling (even, odd, ap, tab)");
}

Family family_expr(Cursor& c) {
  std::string w = c.peek_ident();
  if (w == "A") {
    c.ident();
    c.eat('(', "'('");
    long n = c.nat();
    c.eat(')', "')'");
    return Family::card(static_cast<int>(n));
  }
  if (w == "S") {
    c.ident();
    if (c.try_eat('[')) {
      Ordinal xi = ordinal_expr(c);
      c.eat(']', "']'");
      return Family::schreier(xi);
    }
    return Family::schreier_base();
  }
  if (w == "FS") {
    c.ident();
    c.eat('[', "'['");
    Ordinal xi = ordinal_expr(c);
    c.eat(']', "']'");
    return Family::fine_schreier(xi);
  }
  if (w == "sum" || w == "prod") {
    c.ident();
    c.eat('(', "'('");
    Family f = family_expr(c);
    c.eat(',', "','");
    Family g = family_expr(c);
    c.eat(')', "')'");
    return w == "sum" ? Family::sum(f, g) : Family::prod(f, g);
  }
  if (w == "pow") {
    c.ident();
    c.eat('(', "'('");
    Family f = family_expr(c);
    c.eat(',', "','");
    long n = c.nat();
    c.eat(')', "')'");
    if (n < 1) c.fail("a power of at least 1");
    return Family::pow(f, static_cast<int>(n));
  }
  if (w == "pre") {
    c.ident();
    c.eat('(', "'('");
    Relabeling m = relabel_expr(c);
    c.eat(',', "','");
    Family f = family_expr(c);
    c.eat(')', "')'");
    return Family::pre(m, f);
  }
  c.fail("a family (A, S, FS, sum, prod, pow, pre)");
}

Rational rational_expr(Cursor& c) {
  bool neg = c.try_eat('-');
  long num = c.nat("a rational number");
  long den = 1;
  if (c.try_eat('/')) {
    den = c.nat("a positive denominator");
    if (den == 0) c.fail("a positive denominator");
  }
  Rational q(num, den);
  return neg ? -q : q;
}

SparseVec sparsevec_expr(Cursor& c) {
  c.eat('[', "'['");
  std::vector<std::pair<int, Rational>> entries;
  if (!c.try_eat(']')) {
    do {
      long p = c.nat("a position");
      if (p < 1) c.fail("a positive position");
      c.eat(':', "':'");
      entries.emplace_back(static_cast<int>(p), rational_expr(c));
    } while (c.try_eat(','));
    c.eat(']', "']' or ','");
  }
  return SparseVec::from_entries(std::move(entries));
}

ThetaSeq thetaseq_expr(Cursor& c) {
  try {
    if (c.peek() == '[') {
      c.eat('[', "'['");
      std::vector<Rational> prefix;
      do {
        prefix.push_back(rational_expr(c));
      } while (c.try_eat(','));
      c.eat(';', "';'");
      Rational ratio = rational_expr(c);
      c.eat(']', "']'");
      return ThetaSeq::with_prefix(std::move(prefix), ratio);
    }
    return ThetaSeq::geometric(rational_expr(c));
  } catch (const std::invalid_argument& ex) {
    c.fail_with(std::string("invalid theta sequence (") + ex.what() + ")",
                "theta values in (0,1), strictly decreasing");
  }
}

FamilySeq gseq_expr(Cursor& c) {
  std::string w = c.peek_ident();
  if (w == "pow" || w == "const") {
    c.ident();
    c.eat('(', "'('");
    Family f = family_expr(c);
    c.eat(')', "')'");
    return w == "pow" ? FamilySeq::powers(f) : FamilySeq::constant(f);
  }
  if (w == "sseq" || w == "fsseq") {
    c.ident();
    c.eat('[', "'['");
    Ordinal l = ordinal_expr(c);
    c.eat(']', "']'");
    try {
      return w == "sseq" ? FamilySeq::schreier_seq(l) : FamilySeq::fine_seq(l);
    } catch (const std::invalid_argument& ex) {
      c.fail_with(std::string("invalid family sequence (") + ex.what() + ")",
                  "a limit ordinal");
    }
  }
  c.fail("a family sequence (pow, const, sseq, fsseq)");
}

Space space_expr(Cursor& c) {
  std::string w = c.peek_ident();
  if (w == "X") {
    c.ident();
    c.eat('[', "'['");
    Ordinal xi = ordinal_expr(c);
    c.eat(']', "']'");
    return Space::schreier_space(xi);
  }
  if (w == "sup") {
    c.ident();
    c.eat('(', "'('");
    Family f = family_expr(c);
    c.eat(')', "')'");
    return Space::family_sup(f);
  }
  if (w == "T") {
    c.ident();
    c.eat('(', "'('");
    ThetaSeq thetas = thetaseq_expr(c);
    if (c.try_eat(',')) {
      Family g = family_expr(c);
      c.eat(')', "')'");
      if (!thetas.is_geometric())
        c.fail_with("the short Tsirelson form takes a single theta",
                    "a single theta in (0,1)");
      return Space::tsirelson_single(thetas.ratio(), g);
    }
    c.eat(';', "';' or ','");
    Family g0 = family_expr(c);
    c.eat(';', "';'");
    FamilySeq gs = gseq_expr(c);
    c.eat(')', "')'");
    try {
      return Space::tsirelson(g0, thetas, gs);
    } catch (const std::invalid_argument& ex) {
      c.fail_with(std::string("invalid space (") + ex.what() + ")",
                  "a base family containing all singletons");
    }
  }
  if (w == "dsum") {
    c.ident();
    c.eat('(', "'('");
    Space u = space_expr(c);
    c.eat(';', "';'");
    std::vector<Space> summands;
    do {
      summands.push_back(space_expr(c));
    } while (c.try_eat(','));
    c.eat(')', "')'");
    try {
      return Space::direct_sum(u, std::move(summands));
    } catch (const std::invalid_argument& ex) {
      c.fail_with(std::string("invalid space (") + ex.what() + ")", "non-nested direct sum");
    }
  }
  c.fail("a space (X, sup, T, dsum)");
}

ColorPred::Feature color_feature(Cursor& c) {
  std::string w = c.peek_ident();
  using F = ColorPred::Feature;
  if (w == "minE") { c.ident(); return F::MinE; }
  if (w == "maxE") { c.ident(); return F::MaxE; }
  if (w == "cardE") { c.ident(); return F::CardE; }
  if (w == "sumE") { c.ident(); return F::SumE; }
  if (w == "minF") { c.ident(); return F::MinF; }
  if (w == "maxF") { c.ident(); return F::MaxF; }
  if (w == "cardF") { c.ident(); return F::CardF; }
  if (w == "sumF") { c.ident(); return F::SumF; }
  c.fail("a coloring feature (minE, maxE, cardE, sumE, minF, maxF, cardF, sumF)");
}

ColorPred color_pred_expr(Cursor& c) {
  std::string w = c.peek_ident();
  if (w == "true") { c.ident(); return ColorPred::constant(true); }
  if (w == "false") { c.ident(); return ColorPred::constant(false); }
  if (w == "even" || w == "odd") {
    c.ident();
    c.eat('(', "'('");
    auto f = color_feature(c);
    c.eat(')', "')'");
    return ColorPred::parity(f, w == "even");
  }
  if (w == "le" || w == "ge" || w == "eq") {
    c.ident();
    c.eat('(', "'('");
    auto f = color_feature(c);
    c.eat(',', "','");
    long b = c.nat();
    c.eat(')', "')'");
    auto k = w == "le" ? ColorPred::Kind::Le : w == "ge" ? ColorPred::Kind::Ge
                                                         : ColorPred::Kind::Eq;
    return ColorPred::cmp(k, f, b);
  }
  if (w == "not") {
    c.ident();
    c.eat('(', "'('");
    ColorPred p = color_pred_expr(c);
    c.eat(')', "')'");
    return ColorPred::negation(p);
  }
  if (w == "and" || w == "or") {
    c.ident();
    c.eat('(', "'('");
    ColorPred a = color_pred_expr(c);
    c.eat(',', "','");
    ColorPred b = color_pred_expr(c);
    c.eat(')', "')'");
    return w == "and" ? ColorPred::conj(a, b) : ColorPred::disj(a, b);
  }
  c.fail("a coloring predicate");
}

ChainPred::Feature chain_feature_expr(Cursor& c) {
  std::string w = c.peek_ident();
  using F = ChainPred::Feature;
  if (w == "clen") { c.ident(); return F::Len; }
  if (w == "ctopcard") { c.ident(); return F::TopCard; }
  if (w == "ctopmax") { c.ident(); return F::TopMax; }
  if (w == "cbotmin") { c.ident(); return F::BotMin; }
  c.fail("a chain feature (clen, ctopcard, ctopmax, cbotmin)");
}

ChainPred chain_pred_expr(Cursor& c) {
  std::string w = c.peek_ident();
  if (w == "true") { c.ident(); return ChainPred::constant(true); }
  if (w == "false") { c.ident(); return ChainPred::constant(false); }
  if (w == "even" || w == "odd") {
    c.ident();
    c.eat('(', "'('");
    auto f = chain_feature_expr(c);
    c.eat(')', "')'");
    return ChainPred::parity(f, w == "even");
  }
  if (w == "le" || w == "ge" || w == "eq") {
    c.ident();
    c.eat('(', "'('");
    auto f = chain_feature_expr(c);
    c.eat(',', "','");
    long b = c.nat();
    c.eat(')', "')'");
    auto k = w == "le" ? ChainPred::Kind::Le : w == "ge" ? ChainPred::Kind::Ge
                                                         : ChainPred::Kind::Eq;
    return ChainPred::cmp(k, f, b);
  }
  if (w == "not") {
    c.ident();
    c.eat('(', "'('");
    ChainPred p = chain_pred_expr(c);
    c.eat(')', "')'");
    return ChainPred::negation(p);
  }
  if (w == "and" || w == "or") {
    c.ident();
    c.eat('(', "'('");
    ChainPred a = chain_pred_expr(c);
    c.eat(',', "','");
    ChainPred b = chain_pred_expr(c);
    c.eat(')', "')'");
    return w == "and" ? ChainPred::conj(a, b) : ChainPred::disj(a, b);
  }
  c.fail("a chain predicate");
}

Selector selector_expr(Cursor& c) {
  std::string w = c.peek_ident();
  if (w == "id") { c.ident(); return Selector::identity(); }
  if (w == "double") { c.ident(); return Selector::doubling(); }
  if (w == "shift") {
    c.ident();
    c.eat('(', "'('");
    long k = c.nat();
    c.eat(')', "')'");
    return Selector::shift(static_cast<int>(k));
  }
  if (w == "ap") {
    c.ident();
    c.eat('(', "'('");
    long a = c.nat();
    c.eat(',', "','");
    long d = c.nat();
    c.eat(')', "')'");
    return Selector::ap(static_cast<int>(a), static_cast<int>(d));
  }
  c.fail("a selector (id, double, shift, ap)");
}

template <typename T, typename F>
T whole(std::string_view text, F&& inner) {
  Cursor c(text);
  T value = inner(c);
  c.expect_end();
  return value;
}

}  // namespace

Ordinal parse_ordinal(std::string_view text) {
  return whole<Ordinal>(text, [](Cursor& c) { return ordinal_expr(c); });
}

FinSet parse_finset(std::string_view text) {
  return whole<FinSet>(text, [](Cursor& c) { return finset_expr(c); });
}

Relabeling parse_relabeling(std::string_view text) {
  return whole<Relabeling>(text, [](Cursor& c) { return relabel_expr(c); });
}

Family parse_family(std::string_view text) {
  return whole<Family>(text, [](Cursor& c) { return family_expr(c); });
}

Rational parse_rational(std::string_view text) {
  return whole<Rational>(text, [](Cursor& c) { return rational_expr(c); });
}

SparseVec parse_sparsevec(std::string_view text) {
  return whole<SparseVec>(text, [](Cursor& c) { return sparsevec_expr(c); });
}

Space parse_space(std::string_view text) {
  return whole<Space>(text, [](Cursor& c) { return space_expr(c); });
}

ColorPred parse_color_pred(std::string_view text) {
  return whole<ColorPred>(text, [](Cursor& c) { return color_pred_expr(c); });
}

Coloring parse_coloring(std::string_view text) {
  Cursor c(text);
  std::string w = c.peek_ident();
  if (w == "all0") {
    c.ident();
    c.expect_end();
    return Coloring::from_pred(ColorPred::constant(true));
  }
  if (w == "all1") {
    c.ident();
    c.expect_end();
    return Coloring::from_pred(ColorPred::constant(false));
  }
  if (w == "parity") {
    c.ident();
    c.expect_end();
    return Coloring::from_pred(ColorPred::parity(ColorPred::Feature::MaxE, true));
  }
  if (w == "both") {
    c.ident();
    c.eat('(', "'('");
    ColorPred p0 = color_pred_expr(c);
    c.eat(',', "','");
    ColorPred p1 = color_pred_expr(c);
    c.eat(')', "')'");
    c.expect_end();
    return Coloring::both(p0, p1);
  }
  ColorPred p = color_pred_expr(c);
  c.expect_end();
  return Coloring::from_pred(p);
}

ChainPred parse_chain_pred(std::string_view text) {
  return whole<ChainPred>(text, [](Cursor& c) { return chain_pred_expr(c); });
}

Selector parse_selector(std::string_view text) {
  return whole<Selector>(text, [](Cursor& c) { return selector_expr(c); });
}

std::string rational_to_string(const Rational& q) {
  std::ostringstream os;
  os << q;
  return os.str();
}

}  // namespace schreier

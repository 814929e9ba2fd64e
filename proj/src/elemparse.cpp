#include "grouplog/elemparse.hpp"

#include <cctype>
#include <sstream>

namespace grouplog {

namespace {

struct Parser {
  const std::string& s;
  std::size_t pos = 0;
  GroupPtr G;
  RingPtr R;
  unsigned prec;

  void skip_ws() {
    while (pos < s.size() && std::isspace((unsigned char)s[pos])) ++pos;
  }

  bool peek(char c) {
    skip_ws();
    return pos < s.size() && s[pos] == c;
  }

  bool eat(char c) {
    if (peek(c)) {
      ++pos;
      return true;
    }
    return false;
  }

  long long parse_int() {
    skip_ws();
    std::size_t start = pos;
    bool neg = false;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) {
      neg = s[pos] == '-';
      ++pos;
    }
    if (pos >= s.size() || !std::isdigit((unsigned char)s[pos]))
      throw ParseError("expected integer", start);
    long long v = 0;
    while (pos < s.size() && std::isdigit((unsigned char)s[pos])) {
      v = v * 10 + (s[pos] - '0');
      if (v > (1ll << 40)) throw ParseError("integer literal too large", start);
      ++pos;
    }
    return neg ? -v : v;
  }

  std::string parse_ident() {
    skip_ws();
    std::size_t start = pos;
    if (pos >= s.size() || !std::isalpha((unsigned char)s[pos]))
      throw ParseError("expected identifier", start);
    std::string id;
    id += s[pos++];
    while (pos < s.size() && std::isdigit((unsigned char)s[pos])) id += s[pos++];
    return id;
  }

  GrElem ring_var_factor(const std::string& name, std::size_t at) {
    // locate the layer carrying this variable
    const Ring* layer = R.get();
    while (layer) {
      if (layer->var_name() == name) break;
      layer = layer->base().get();
    }
    if (!layer) throw ParseError("ring has no variable '" + name + "'", at);
    long long e = 1;
    if (eat('^')) e = parse_int();
    if (e < 0) throw ParseError("ring variables cannot have negative exponents", at);
    // var of the layer, embedded up the tower
    RElem v = layer->var(prec);
    RElem ve = v;
    for (long long i = 1; i < e; ++i) ve = rmul(ve, v);
    if (e == 0) ve = layer->one(prec);
    // embed by walking up
    RElem cur = ve;
    std::vector<const Ring*> chain;
    for (const Ring* r = R.get(); r && r != layer; r = r->base().get()) chain.push_back(r);
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
      RElem up = (*it)->zero(prec);
      std::copy(cur.c.begin(), cur.c.end(), up.c.begin());
      cur = up;
    }
    return gr_scalar(G, cur);
  }

  GrElem factor() {
    skip_ws();
    std::size_t at = pos;
    if (eat('(')) {
      GrElem e = elem();
      if (!eat(')')) throw ParseError("expected ')'", pos);
      return e;
    }
    if (pos < s.size() && (std::isdigit((unsigned char)s[pos]))) {
      long long v = parse_int();
      return gr_from_int(G, R, v, prec);
    }
    std::string id = parse_ident();
    // ring variable?
    if (id == "T" || id == "z" || id == "w") return ring_var_factor(id, at);
    // group generator
    for (std::size_t gi = 0; gi < G->generator_names().size(); ++gi) {
      if (G->generator_names()[gi] == id) {
        long long e = 1;
        if (eat('^')) e = parse_int();
        unsigned g = G->pow(G->generators()[gi], e);
        return gr_group_elem(G, R, g, prec);
      }
    }
    throw ParseError("unknown name '" + id + "'", at);
  }

  GrElem term() {
    GrElem acc = factor();
    while (eat('*')) acc = gr_mul(acc, factor());
    return acc;
  }

  GrElem elem() {
    skip_ws();
    bool neg = false;
    if (peek('-')) {
      ++pos;
      neg = true;
    }
    GrElem acc = term();
    if (neg) acc = gr_neg(acc);
    while (true) {
      if (eat('+')) {
        acc = gr_add(acc, term());
      } else if (peek('-')) {
        ++pos;
        acc = gr_sub(acc, term());
      } else {
        break;
      }
    }
    return acc;
  }

  GrElem run() {
    GrElem e = elem();
    skip_ws();
    if (eat('@')) {
      long long pp = parse_int();
      if (pp != (long long)R->p()) throw ParseError("precision annotation for wrong prime", pos);
      if (!eat('^')) throw ParseError("expected '^' in precision annotation", pos);
      long long k = parse_int();
      if (k < 1 || (unsigned)k > e.prec)
        throw ParseError("annotation precision out of range", pos);
      e = gr_reduce_precision(e, (unsigned)k);
      skip_ws();
    }
    if (pos != s.size()) throw ParseError("trailing input", pos);
    return e;
  }
};

std::string coeff_string(const RElem& r) {
  std::string s = to_string(r);
  bool composite = s.find_first_of("+-*") != std::string::npos;
  return composite ? "(" + s + ")" : s;
}

}  // namespace

GrElem parse_element(const std::string& text, const GroupPtr& G, const RingPtr& R,
                     unsigned prec) {
  Parser p{text, 0, G, R, prec};
  return p.run();
}

std::string serialize(const GrElem& x) {
  std::ostringstream os;
  bool first = true;
  for (unsigned g = 0; g < x.G->order(); ++g) {
    auto blk = x.blk(g);
    if (Ring::is_zero(blk)) continue;
    RElem r = x.R->zero(x.prec);
    std::copy(blk.begin(), blk.end(), r.c.begin());
    if (!first) os << " + ";
    first = false;
    std::string cs = coeff_string(r);
    if (g == 0) {
      os << cs;
    } else if (cs == "1") {
      os << x.G->name(g);
    } else {
      os << cs << "*" << x.G->name(g);
    }
  }
  if (first) os << "0";
  os << " @" << x.R->p() << "^" << x.prec;
  return os.str();
}

std::string serialize(const ClassVec& v) {
  std::ostringstream os;
  bool first = true;
  for (unsigned k = 0; k < v.G->num_classes(); ++k) {
    auto blk = v.blk(k);
    if (Ring::is_zero(blk)) continue;
    RElem r = v.R->zero(v.prec);
    std::copy(blk.begin(), blk.end(), r.c.begin());
    if (!first) os << " + ";
    first = false;
    os << coeff_string(r) << "*cls(" << v.G->name(v.G->class_rep(k)) << ")";
  }
  if (first) os << "0";
  os << " @" << v.R->p() << "^" << v.prec;
  return os.str();
}

}  // namespace grouplog

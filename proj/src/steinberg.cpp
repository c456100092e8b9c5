#include "ssg/steinberg.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <map>
#include <numeric>
#include <set>

namespace ssg {

Ring Ring::zmod(std::int64_t t) {
  if (t < 2) throw Error("modulus must be at least 2, got " + std::to_string(t));
  return {t};
}

Coeff Ring::reduce(Coeff c) const {
  if (t == 0) return c;
  if (c.denominator() != 1) throw Error("fractional coefficient over Z/" + std::to_string(t));
  return Coeff(((c.numerator() % t) + t) % t);
}

std::string Ring::format(Coeff c) const {
  c = reduce(c);
  if (c.denominator() == 1) return std::to_string(c.numerator());
  return std::to_string(c.numerator()) + "/" + std::to_string(c.denominator());
}

std::string Ring::name() const { return t == 0 ? "Q" : "Z/" + std::to_string(t); }

namespace {

void same_ring(const AlgebraElement& f, const AlgebraElement& g) {
  if (f.ring != g.ring) throw RingMismatch("cannot combine elements over " + f.ring.name() + " and " + g.ring.name());
}

bool has_prefix(const Word& w, const Word& p) {
  return p.size() <= w.size() && std::equal(p.begin(), p.end(), w.begin());
}

Word tail_after(const Word& w, std::size_t n) { return Word(w.begin() + static_cast<std::ptrdiff_t>(n), w.end()); }

struct Piece {
  Coeff coeff;
  Arrow arrow;
};

std::vector<Piece> pieces_of(Context& ctx, const AlgebraElement& f) {
  std::vector<Piece> out;
  for (const auto& t : f.terms)
    for (auto& a : t.cell.pieces(ctx)) out.push_back({t.coeff, std::move(a)});
  return out;
}

/// Pieces restricted to a common source depth, so two pieces can share a
/// germ only when their legs coincide.
class Compiled {
 public:
  Compiled(Context& ctx, const AlgebraElement& f) : ring_(f.ring) {
    std::vector<Piece> raw = pieces_of(ctx, f);
    std::size_t depth = 0;
    for (const auto& p : raw) depth = std::max(depth, p.arrow.v.size());
    if (depth > 16) throw BudgetExceeded("element pieces are too deep to compare");
    const int k = ctx.alphabet_size();
    std::map<Arrow, Coeff> merged;
    for (const auto& p : raw) {
      std::vector<Word> ext{Word{}};
      for (std::size_t i = p.arrow.v.size(); i < depth; ++i) {
        std::vector<Word> next;
        for (const auto& z : ext)
          for (Letter x = 0; x < k; ++x) {
            next.push_back(z);
            next.back().push_back(x);
          }
        ext = std::move(next);
      }
      for (const auto& z : ext) merged[restrict_arrow(ctx, p.arrow, z)] += p.coeff;
    }
    std::map<std::pair<Word, Word>, std::size_t> group_of;
    for (const auto& [a, c] : merged) {
      if (ring_.reduce(c).numerator() == 0) continue;
      auto [it, fresh] = group_of.emplace(std::make_pair(a.u, a.v), groups_.size());
      if (fresh) groups_.emplace_back();
      groups_[it->second].push_back(pieces_.size());
      pieces_.push_back({ring_.reduce(c), a});
    }

    ElementIndex& idx = ctx.index();
    std::set<Atom> atoms;
    for (const auto& g : groups_) {
      atoms.insert(Atom{pieces_[g[0]].arrow.v, ctx.identity(), AtomKind::Tf});
      for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = i + 1; j < g.size(); ++j)
          atoms.insert(pair_atom(idx, pieces_[g[i]].arrow, pieces_[g[j]].arrow));
    }
    space_ = std::make_unique<ProductSpace>(ctx, std::vector<Atom>(atoms.begin(), atoms.end()));
    for (const auto& g : groups_) {
      cylinder_.push_back(space_->atom_index(Atom{pieces_[g[0]].arrow.v, ctx.identity(), AtomKind::Tf}));
      std::vector<std::vector<int>> m(g.size(), std::vector<int>(g.size(), -1));
      for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = i + 1; j < g.size(); ++j)
          m[i][j] = space_->atom_index(pair_atom(idx, pieces_[g[i]].arrow, pieces_[g[j]].arrow));
      pairs_.push_back(std::move(m));
    }
  }

  const ProductSpace& space() const { return *space_; }
  const std::vector<Piece>& pieces() const { return pieces_; }
  const std::vector<std::vector<std::size_t>>& groups() const { return groups_; }

  bool present(std::size_t group, const Truth& t) const { return t[static_cast<std::size_t>(cylinder_[group])]; }

  /// Germ classes within a group at a point with truth vector t, as positions in the group.
  std::vector<std::vector<std::size_t>> classes(std::size_t group, const Truth& t) const {
    const std::size_t n = groups_[group].size();
    std::vector<std::size_t> root(n);
    std::iota(root.begin(), root.end(), 0);
    auto find = [&](std::size_t x) {
      while (root[x] != x) x = root[x] = root[root[x]];
      return x;
    };
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (t[static_cast<std::size_t>(pairs_[group][i][j])]) root[find(j)] = find(i);
    std::map<std::size_t, std::vector<std::size_t>> by_root;
    for (std::size_t i = 0; i < n; ++i) by_root[find(i)].push_back(i);
    std::vector<std::vector<std::size_t>> out;
    for (auto& [r, members] : by_root) out.push_back(std::move(members));
    return out;
  }

  Coeff class_value(std::size_t group, const std::vector<std::size_t>& members) const {
    Coeff s = 0;
    for (std::size_t i : members) s += pieces_[groups_[group][i]].coeff;
    return ring_.reduce(s);
  }

  bool has_nonzero_class(const Truth& t) const {
    for (std::size_t g = 0; g < groups_.size(); ++g) {
      if (!present(g, t)) continue;
      for (const auto& c : classes(g, t))
        if (class_value(g, c).numerator() != 0) return true;
    }
    return false;
  }

 private:
  static Atom pair_atom(ElementIndex& idx, const Arrow& a, const Arrow& b) {
    return Atom{a.v, idx.product(idx.inverse(b.g), a.g), AtomKind::Tf};
  }

  Ring ring_;
  std::vector<Piece> pieces_;
  std::vector<std::vector<std::size_t>> groups_;
  std::unique_ptr<ProductSpace> space_;
  std::vector<int> cylinder_;
  std::vector<std::vector<std::vector<int>>> pairs_;
};

}  // namespace

AlgebraElement indicator(Ring r, Cell c, Coeff coeff) { return AlgebraElement{r, {Term{r.reduce(coeff), std::move(c)}}}; }

AlgebraElement normalize(Context& ctx, AlgebraElement f) {
  AlgebraElement out{f.ring, {}};
  for (auto& t : f.terms) {
    t.cell.tails = normalize_tails(std::move(t.cell.tails), ctx.alphabet_size());
    auto it = std::find_if(out.terms.begin(), out.terms.end(), [&](const Term& s) { return s.cell == t.cell; });
    if (it == out.terms.end()) out.terms.push_back({f.ring.reduce(t.coeff), std::move(t.cell)});
    else it->coeff = f.ring.reduce(it->coeff + t.coeff);
  }
  std::erase_if(out.terms, [](const Term& t) { return t.coeff.numerator() == 0; });
  return out;
}

AlgebraElement add(Context& ctx, const AlgebraElement& f, const AlgebraElement& g) {
  same_ring(f, g);
  AlgebraElement out = f;
  out.terms.insert(out.terms.end(), g.terms.begin(), g.terms.end());
  return normalize(ctx, std::move(out));
}

AlgebraElement scale(Context& ctx, Coeff c, const AlgebraElement& f) {
  AlgebraElement out = f;
  for (auto& t : out.terms) t.coeff = f.ring.reduce(t.coeff * f.ring.reduce(c));
  return normalize(ctx, std::move(out));
}

AlgebraElement subtract(Context& ctx, const AlgebraElement& f, const AlgebraElement& g) {
  return add(ctx, f, scale(ctx, -1, g));
}

AlgebraElement convolve(Context& ctx, const AlgebraElement& f, const AlgebraElement& g) {
  same_ring(f, g);
  AlgebraElement out{f.ring, {}};
  for (const auto& s : f.terms)
    for (const auto& t : g.terms)
      for (auto& c : compose_cells(ctx, s.cell, t.cell).cells) out.terms.push_back({s.coeff * t.coeff, std::move(c)});
  return normalize(ctx, std::move(out));
}

AlgebraElement involute(Context& ctx, const AlgebraElement& f) {
  AlgebraElement out{f.ring, {}};
  for (const auto& t : f.terms) out.terms.push_back({t.coeff, invert_cell(ctx, t.cell)});
  return normalize(ctx, std::move(out));
}

Coeff evaluate(Context& ctx, const AlgebraElement& f, const Germ& g) {
  Coeff s = 0;
  for (const auto& t : f.terms)
    if (contains(ctx, t.cell, g)) s += t.coeff;
  return f.ring.reduce(s);
}

std::vector<SupportClass> support_partition(Context& ctx, const AlgebraElement& f) {
  if (f.terms.empty()) return {};
  Compiled c(ctx, f);
  const ProductSpace& space = c.space();
  std::vector<SupportClass> out;
  std::set<std::pair<std::size_t, std::vector<std::size_t>>> seen;
  for (const Truth& t : space.realizable(ProductSpace::initial)) {
    for (std::size_t g = 0; g < c.groups().size(); ++g) {
      if (!c.present(g, t)) continue;
      for (const auto& cls : c.classes(g, t)) {
        if (!seen.emplace(g, cls).second) continue;
        const Arrow& lead = c.pieces()[c.groups()[g][cls.front()]].arrow;
        SupportClass sc{lead.u, lead.v, {}, c.class_value(g, cls),
                        space.sample(ProductSpace::initial, [&](const Truth& x) { return x == t; })->point};
        for (std::size_t i : cls) sc.elements.push_back(c.pieces()[c.groups()[g][i]].arrow.g);
        out.push_back(std::move(sc));
      }
    }
  }
  return out;
}

bool nonzero(Context& ctx, const AlgebraElement& f) {
  if (f.terms.empty()) return false;
  Compiled c(ctx, f);
  return c.space().exists_from(ProductSpace::initial, [&](const Truth& t) { return c.has_nonzero_class(t); });
}

bool is_singular(Context& ctx, const AlgebraElement& f) {
  if (f.terms.empty()) return true;
  Compiled c(ctx, f);
  return !c.space().has_interior_from(ProductSpace::initial, [&](const Truth& t) { return c.has_nonzero_class(t); });
}

std::vector<AlgebraElement> decompose(Context& ctx, const AlgebraElement& f, const std::vector<Cell>& covers,
                                      int depth) {
  ElementIndex& idx = ctx.index();
  const int k = ctx.alphabet_size();
  struct CoverPiece {
    std::size_t cover;
    Arrow arrow;
  };
  std::vector<CoverPiece> cover_pieces;
  for (std::size_t i = 0; i < covers.size(); ++i)
    for (auto& a : covers[i].pieces(ctx)) cover_pieces.push_back({i, std::move(a)});

  std::map<ElemId, bool> tf_nonempty;
  auto meets = [&](const Arrow& p, const Arrow& q) {
    const bool p_longer = p.v.size() >= q.v.size();
    if (p_longer ? !has_prefix(p.v, q.v) : !has_prefix(q.v, p.v)) return false;
    const Arrow a = p_longer ? p : restrict_arrow(ctx, p, tail_after(q.v, p.v.size()));
    const Arrow b = p_longer ? restrict_arrow(ctx, q, tail_after(p.v, q.v.size())) : q;
    if (a.u != b.u) return false;
    const ElemId h = idx.product(idx.inverse(b.g), a.g);
    auto it = tf_nonempty.find(h);
    if (it == tf_nonempty.end()) it = tf_nonempty.emplace(h, region_nonempty(ctx, Region::tf(h))).first;
    return it->second;
  };

  // Leaves assigned to cover pieces, keyed by (cover piece, extension of its source).
  std::map<std::pair<std::size_t, Word>, Coeff> assigned;
  for (const auto& [coeff, arrow] : pieces_of(ctx, f)) {
    std::vector<Word> stack{Word{}};
    while (!stack.empty()) {
      const Word z = stack.back();
      stack.pop_back();
      const Arrow p = restrict_arrow(ctx, arrow, z);
      bool done = false;
      bool touching = false;
      for (std::size_t j = 0; j < cover_pieces.size() && !done; ++j) {
        const Arrow& q = cover_pieces[j].arrow;
        if (has_prefix(p.v, q.v)) {
          const Word w = tail_after(p.v, q.v.size());
          const Arrow r = restrict_arrow(ctx, q, w);
          if (r.u == p.u && r.g == p.g) {
            assigned[{j, w}] += coeff;
            done = true;
            continue;
          }
        }
        touching = touching || meets(p, q);
      }
      if (done || !touching || static_cast<int>(z.size()) >= depth) continue;
      for (Letter x = 0; x < k; ++x) {
        stack.push_back(z);
        stack.back().push_back(x);
      }
    }
  }

  // Merge complete sibling families carrying equal coefficients.
  for (bool merged = true; merged;) {
    merged = false;
    for (const auto& [key, c] : assigned) {
      if (key.second.empty()) continue;
      Word parent(key.second.begin(), key.second.end() - 1);
      bool all = !assigned.count({key.first, parent});
      for (Letter x = 0; x < k && all; ++x) {
        Word s = parent;
        s.push_back(x);
        auto it = assigned.find({key.first, s});
        all = it != assigned.end() && f.ring.reduce(it->second - c).numerator() == 0;
      }
      if (!all) continue;
      const Coeff keep = c;
      const std::size_t j = key.first;
      for (Letter x = 0; x < k; ++x) {
        Word s = parent;
        s.push_back(x);
        assigned.erase({j, s});
      }
      assigned[{j, parent}] = keep;
      merged = true;
      break;
    }
  }

  std::vector<AlgebraElement> parts(covers.size(), AlgebraElement{f.ring, {}});
  for (const auto& [key, c] : assigned) {
    const CoverPiece& cp = cover_pieces[key.first];
    parts[cp.cover].terms.push_back({c, cell_of(restrict_arrow(ctx, cp.arrow, key.second))});
  }
  AlgebraElement total{f.ring, {}};
  for (auto& p : parts) {
    p = normalize(ctx, std::move(p));
    total.terms.insert(total.terms.end(), p.terms.begin(), p.terms.end());
  }
  if (nonzero(ctx, subtract(ctx, f, total)))
    throw CoverInsufficient("the covers do not split the element into clopen parts");
  return parts;
}

Coeff evaluate_cover(Context& ctx, const AlgebraElement& f, const CoverPoint& p) {
  const Word v = p.base.prefix(p.depth);
  Coeff s = 0;
  for (ElemId m : p.members) s += evaluate(ctx, f, Germ{{v, m, v}, p.base});
  return f.ring.reduce(s);
}

// ---------------------------------------------------------------------------
// Text forms

namespace {

class ExprParser {
 public:
  ExprParser(Context& ctx, std::string_view text) : ctx_(ctx), s_(text) {}

  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool eat(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(ParseError::Kind::Syntax, what + " at offset " + std::to_string(i_) + " in '" + std::string(s_) + "'");
  }
  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }
  bool at_end() {
    skip();
    return i_ == s_.size();
  }

  std::int64_t integer() {
    skip();
    const std::size_t start = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (start == i_) fail("expected a number");
    return std::stoll(std::string(s_.substr(start, i_ - start)));
  }

  Coeff coefficient() {
    skip();
    if (i_ < s_.size() && s_[i_] == '[') return 1;
    std::int64_t num = integer(), den = 1;
    if (eat('/')) den = integer();
    if (den == 0) fail("zero denominator");
    if (!eat('*')) {
      skip();
      if (i_ >= s_.size() || s_[i_] != '[') fail("expected '*' or '['");
    }
    return Coeff(num, den);
  }

  std::string field(const char* stops) {
    skip();
    const std::size_t start = i_;
    while (i_ < s_.size() && !std::strchr(stops, s_[i_])) ++i_;
    std::string f(s_.substr(start, i_ - start));
    while (!f.empty() && std::isspace(static_cast<unsigned char>(f.back()))) f.pop_back();
    return f;
  }

  Word word(const std::string& text) { return parse_word(text, ctx_.alphabet_size()); }

  Cell cell(bool allow_tails) {
    expect('[');
    Cell c;
    c.u = word(field("|]"));
    expect('|');
    c.g = ctx_.elem(field("|]"));
    expect('|');
    c.v = word(field("|]"));
    if (allow_tails && eat('|')) {
      c.tails.clear();
      for (;;) {
        std::string t = field(",]");
        c.tails.push_back(word(t));
        if (!eat(',')) break;
      }
    }
    expect(']');
    return c;
  }

 private:
  Context& ctx_;
  std::string_view s_;
  std::size_t i_ = 0;
};

}  // namespace

AlgebraElement parse_algebra_element(Context& ctx, Ring r, std::string_view text) {
  ExprParser p(ctx, text);
  AlgebraElement f{r, {}};
  if (p.at_end()) return f;
  bool negative = p.eat('-');
  for (;;) {
    Coeff c = p.coefficient();
    if (negative) c = -c;
    f.terms.push_back({c, p.cell(true)});
    if (p.at_end()) break;
    if (p.eat('+')) negative = false;
    else if (p.eat('-')) negative = true;
    else p.fail("expected '+' or '-'");
    if (p.eat('-')) negative = !negative;
  }
  return normalize(ctx, std::move(f));
}

std::string format_algebra_element(Context& ctx, const AlgebraElement& f) {
  if (f.terms.empty()) return "0";
  std::string out;
  for (const auto& t : f.terms) {
    const bool minus = f.ring.t == 0 && t.coeff < Coeff(0);
    const Coeff c = minus ? -t.coeff : t.coeff;
    if (!out.empty()) out += minus ? " - " : " + ";
    else if (minus) out += "-";
    if (c != Coeff(1)) out += f.ring.format(c) + "*";
    out += "[" + format_word(t.cell.u) + "|" + ctx.name(t.cell.g) + "|" + format_word(t.cell.v);
    if (t.cell.tails != std::vector<Word>{Word{}}) {
      out += "|";
      for (std::size_t i = 0; i < t.cell.tails.size(); ++i) out += (i ? "," : "") + format_word(t.cell.tails[i]);
    }
    out += "]";
  }
  return out;
}

Germ parse_germ(Context& ctx, std::string_view text) {
  const auto at = text.rfind('@');
  if (at == std::string_view::npos)
    throw ParseError(ParseError::Kind::Syntax, "germ needs the form g@point, got '" + std::string(text) + "'");
  const std::string_view head = text.substr(0, at);
  EvPeriodicWord base = EvPeriodicWord::parse(text.substr(at + 1), ctx.alphabet_size());
  if (!head.empty() && head.front() == '[') {
    ExprParser p(ctx, head);
    Cell c = p.cell(false);
    return Germ{{c.u, c.g, c.v}, std::move(base)};
  }
  return Germ{{{}, ctx.elem(head), {}}, std::move(base)};
}

}  // namespace ssg

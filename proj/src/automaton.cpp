#include "ssg/automaton.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace ssg {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  return out;
}

int parse_int(const std::string& s, const std::string& ctx) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    throw ParseError(ParseError::Kind::Syntax, "expected integer in " + ctx + ", got '" + s + "'");
  return std::stoi(s);
}

bool valid_name(const std::string& s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

}  // namespace

Automaton::Automaton(Alphabet alphabet, std::vector<std::string> names, StateId identity,
                     std::vector<std::vector<Letter>> perms,
                     std::vector<std::vector<StateId>> sections)
    : alphabet_(alphabet),
      names_(std::move(names)),
      identity_(identity),
      perms_(std::move(perms)),
      sections_(std::move(sections)) {
  const int k = alphabet_.size;
  const auto n = static_cast<int>(names_.size());
  if (k < 2) throw ParseError(ParseError::Kind::Syntax, "alphabet size must be at least 2");
  if (identity_ < 0 || identity_ >= n)
    throw ParseError(ParseError::Kind::MissingIdentity, "identity state is not declared");
  if (perms_.size() != names_.size() || sections_.size() != names_.size())
    throw ParseError(ParseError::Kind::Syntax, "transition table size mismatch");
  std::unordered_set<std::string> seen;
  for (const auto& nm : names_)
    if (!seen.insert(nm).second) throw ParseError(ParseError::Kind::DuplicateState, "duplicate state '" + nm + "'");

  inverse_perms_.assign(names_.size(), std::vector<Letter>(static_cast<std::size_t>(k), -1));
  for (int q = 0; q < n; ++q) {
    if (static_cast<int>(perms_[q].size()) != k || static_cast<int>(sections_[q].size()) != k)
      throw ParseError(ParseError::Kind::Syntax, "state '" + names_[q] + "' does not list every letter");
    for (int x = 0; x < k; ++x) {
      const Letter y = perms_[q][x];
      if (y < 0 || y >= k) throw ParseError(ParseError::Kind::Syntax, "letter out of range in state '" + names_[q] + "'");
      if (inverse_perms_[q][y] != -1)
        throw ParseError(ParseError::Kind::NonBijectiveOutput, "state '" + names_[q] + "' is not a permutation");
      inverse_perms_[q][y] = x;
      const StateId s = sections_[q][x];
      if (s < 0 || s >= n) throw ParseError(ParseError::Kind::UnknownState, "section state out of range");
    }
  }
  for (int x = 0; x < k; ++x) {
    if (perms_[identity_][x] != x || sections_[identity_][x] != identity_)
      throw ParseError(ParseError::Kind::MissingIdentity,
                       "identity state '" + names_[identity_] + "' does not act trivially");
  }
}

std::optional<StateId> Automaton::find(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return static_cast<StateId>(i);
  return std::nullopt;
}

std::string Automaton::to_text() const {
  std::ostringstream out;
  out << "alphabet: " << alphabet_.size << "\n";
  out << "identity: " << names_[identity_] << "\n";
  for (std::size_t q = 0; q < names_.size(); ++q) {
    out << "state " << names_[q] << ":";
    for (int x = 0; x < alphabet_.size; ++x) {
      out << (x ? ", " : " ") << x << " -> " << perms_[q][x] << " / " << names_[sections_[q][x]];
    }
    out << "\n";
  }
  return out.str();
}

Automaton parse_automaton(std::istream& in) {
  std::optional<int> k;
  std::optional<std::string> identity_name;
  struct RawState {
    std::string name;
    std::vector<std::tuple<int, int, std::string>> edges;
    int line;
  };
  std::vector<RawState> raw;

  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::string t = trim(line);
    if (t.empty()) continue;
    const std::string where = "line " + std::to_string(lineno);
    if (t.rfind("alphabet:", 0) == 0) {
      k = parse_int(trim(t.substr(9)), where);
    } else if (t.rfind("identity:", 0) == 0) {
      identity_name = trim(t.substr(9));
      if (!valid_name(*identity_name)) throw ParseError(ParseError::Kind::Syntax, "bad identity name at " + where);
    } else if (t.rfind("state ", 0) == 0) {
      auto colon = t.find(':');
      if (colon == std::string::npos) throw ParseError(ParseError::Kind::Syntax, "missing ':' at " + where);
      RawState st{trim(t.substr(6, colon - 6)), {}, lineno};
      if (!valid_name(st.name)) throw ParseError(ParseError::Kind::Syntax, "bad state name at " + where);
      for (const auto& edge : split(t.substr(colon + 1), ',')) {
        auto arrow = edge.find("->");
        auto slash = edge.find('/');
        if (arrow == std::string::npos || slash == std::string::npos || slash < arrow)
          throw ParseError(ParseError::Kind::Syntax, "malformed transition '" + edge + "' at " + where);
        int x = parse_int(trim(edge.substr(0, arrow)), where);
        int y = parse_int(trim(edge.substr(arrow + 2, slash - arrow - 2)), where);
        st.edges.emplace_back(x, y, trim(edge.substr(slash + 1)));
      }
      raw.push_back(std::move(st));
    } else {
      throw ParseError(ParseError::Kind::Syntax, "unrecognized " + where + ": '" + t + "'");
    }
  }
  if (!k) throw ParseError(ParseError::Kind::Syntax, "missing 'alphabet:' line");
  if (*k < 2) throw ParseError(ParseError::Kind::Syntax, "alphabet size must be at least 2");
  if (!identity_name) throw ParseError(ParseError::Kind::MissingIdentity, "missing 'identity:' line");

  std::vector<std::string> names;
  std::unordered_map<std::string, StateId> index;
  for (const auto& st : raw) {
    if (!index.emplace(st.name, static_cast<StateId>(names.size())).second)
      throw ParseError(ParseError::Kind::DuplicateState, "duplicate state '" + st.name + "'");
    names.push_back(st.name);
  }
  if (!index.count(*identity_name)) {
    // A bare `identity:` line declares the trivial state implicitly.
    index.emplace(*identity_name, static_cast<StateId>(names.size()));
    names.push_back(*identity_name);
    raw.push_back(RawState{*identity_name, {}, 0});
    for (int x = 0; x < *k; ++x) raw.back().edges.emplace_back(x, x, *identity_name);
  }

  std::vector<std::vector<Letter>> perms(names.size(), std::vector<Letter>(static_cast<std::size_t>(*k), -1));
  std::vector<std::vector<StateId>> sects(names.size(), std::vector<StateId>(static_cast<std::size_t>(*k), -1));
  for (std::size_t q = 0; q < raw.size(); ++q) {
    const auto& st = raw[q];
    const std::string where = "state '" + st.name + "'";
    for (const auto& [x, y, s] : st.edges) {
      if (x >= *k || y >= *k) throw ParseError(ParseError::Kind::Syntax, "letter out of range in " + where);
      if (perms[q][x] != -1) throw ParseError(ParseError::Kind::Syntax, "letter listed twice in " + where);
      auto it = index.find(s);
      if (it == index.end()) throw ParseError(ParseError::Kind::UnknownState, "unknown state '" + s + "' in " + where);
      perms[q][x] = y;
      sects[q][x] = it->second;
    }
    for (int x = 0; x < *k; ++x)
      if (perms[q][x] == -1)
        throw ParseError(ParseError::Kind::Syntax, where + " has no transition for letter " + std::to_string(x));
  }
  return Automaton(Alphabet{*k}, std::move(names), index.at(*identity_name), std::move(perms), std::move(sects));
}

Automaton parse_automaton(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_automaton(in);
}

Automaton load_automaton(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open automaton file '" + path + "'");
  return parse_automaton(in);
}

GroupElement GroupElement::reduce(const std::vector<Generator>& letters, StateId identity) {
  GroupElement g;
  auto& out = g.letters_;
  out.reserve(letters.size());
  for (const auto& l : letters) {
    if (l.state == identity) continue;
    if (!out.empty() && out.back().state == l.state && out.back().inverse != l.inverse) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return g;
}

GroupElement GroupElement::generator(StateId q, StateId identity, bool inverse) {
  return reduce({Generator{q, inverse}}, identity);
}

std::size_t GroupElementHash::operator()(const GroupElement& g) const noexcept {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (const auto& l : g.letters()) {
    h ^= static_cast<std::size_t>(l.state * 2 + (l.inverse ? 1 : 0)) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

GroupElement multiply(const GroupElement& g, const GroupElement& h, StateId identity) {
  std::vector<Generator> all = g.letters();
  all.insert(all.end(), h.letters().begin(), h.letters().end());
  return GroupElement::reduce(all, identity);
}

GroupElement invert(const GroupElement& g) {
  std::vector<Generator> rev(g.letters().rbegin(), g.letters().rend());
  for (auto& l : rev) l.inverse = !l.inverse;
  // Reversal of a reduced word is reduced; reduce() with an impossible id keeps it as is.
  return GroupElement::reduce(rev, -1);
}

StepResult step(const Automaton& aut, const GroupElement& g, Letter x) {
  const auto& ls = g.letters();
  std::vector<Generator> sect(ls.size());
  for (std::size_t i = ls.size(); i-- > 0;) {
    const auto& l = ls[i];
    if (!l.inverse) {
      sect[i] = Generator{aut.section(l.state, x), false};
      x = aut.image(l.state, x);
    } else {
      const Letter y = aut.preimage(l.state, x);
      sect[i] = Generator{aut.section(l.state, y), true};
      x = y;
    }
  }
  return StepResult{x, GroupElement::reduce(sect, aut.identity())};
}

Word act_word(const Automaton& aut, const GroupElement& g, const Word& u) {
  Word out;
  out.reserve(u.size());
  GroupElement cur = g;
  for (Letter x : u) {
    auto r = step(aut, cur, x);
    out.push_back(r.image);
    cur = std::move(r.section);
  }
  return out;
}

GroupElement section(const Automaton& aut, const GroupElement& g, const Word& u) {
  GroupElement cur = g;
  for (Letter x : u) {
    if (cur.empty()) break;
    cur = step(aut, cur, x).section;
  }
  return cur;
}

bool is_trivial(const Automaton& aut, const GroupElement& g, std::size_t budget) {
  if (g.empty()) return true;
  std::unordered_set<GroupElement, GroupElementHash> seen{g};
  std::vector<GroupElement> frontier{g};
  const int k = aut.alphabet_size();
  while (!frontier.empty()) {
    GroupElement cur = std::move(frontier.back());
    frontier.pop_back();
    for (Letter x = 0; x < k; ++x) {
      auto r = step(aut, cur, x);
      if (r.image != x) return false;
      if (r.section.empty()) continue;
      if (seen.insert(r.section).second) {
        if (seen.size() > budget) throw BudgetExceeded("word problem exceeded budget of " + std::to_string(budget) + " sections");
        frontier.push_back(std::move(r.section));
      }
    }
  }
  return true;
}

bool elements_equal(const Automaton& aut, const GroupElement& g, const GroupElement& h, std::size_t budget) {
  if (g == h) return true;
  return is_trivial(aut, multiply(g, invert(h), aut.identity()), budget);
}

GroupElement parse_element(const Automaton& aut, std::string_view text) {
  std::string t = trim(text);
  if (t.empty() || t == "1") return GroupElement{};
  std::vector<Generator> gens;
  for (auto tok : split(t, '.')) {
    bool inv = false;
    while (!tok.empty() && tok.back() == '\'') {
      inv = !inv;
      tok.pop_back();
    }
    auto q = aut.find(tok);
    if (!q) throw ParseError(ParseError::Kind::UnknownState, "unknown state '" + tok + "' in element '" + t + "'");
    gens.push_back(Generator{*q, inv});
  }
  return GroupElement::reduce(gens, aut.identity());
}

std::string format_element(const Automaton& aut, const GroupElement& g) {
  if (g.empty()) return aut.name(aut.identity());
  std::string out;
  for (std::size_t i = 0; i < g.length(); ++i) {
    if (i) out += '.';
    out += aut.name(g.letters()[i].state);
    if (g.letters()[i].inverse) out += '\'';
  }
  return out;
}

Word parse_word(std::string_view text, int alphabet_size) {
  Word w;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    if (!std::isdigit(static_cast<unsigned char>(c)) || c - '0' >= alphabet_size)
      throw ParseError(ParseError::Kind::Syntax, std::string("bad letter '") + c + "' in word");
    w.push_back(c - '0');
  }
  return w;
}

std::string format_word(const Word& w) {
  std::string s;
  for (Letter x : w) s += static_cast<char>('0' + x);
  return s;
}

EvPeriodicWord::EvPeriodicWord(Word preperiod, Word period)
    : preperiod_(std::move(preperiod)), period_(std::move(period)) {
  if (period_.empty()) throw Error("eventually periodic word needs a nonempty period");
  const std::size_t n = period_.size();
  std::vector<std::size_t> fail(n + 1, 0);
  for (std::size_t i = 1; i < n; ++i) {
    std::size_t j = fail[i];
    while (j > 0 && period_[i] != period_[j]) j = fail[j];
    if (period_[i] == period_[j]) ++j;
    fail[i + 1] = j;
  }
  const std::size_t p = n - fail[n];
  if (n % p == 0) period_.resize(p);
  while (!preperiod_.empty() && preperiod_.back() == period_.back()) {
    preperiod_.pop_back();
    std::rotate(period_.rbegin(), period_.rbegin() + 1, period_.rend());
  }
}

EvPeriodicWord EvPeriodicWord::parse(std::string_view text, int alphabet_size) {
  std::string t = trim(text);
  auto open = t.find('(');
  if (open == std::string::npos || t.back() != ')')
    throw ParseError(ParseError::Kind::Syntax, "point literal must look like u(w), got '" + t + "'");
  Word u = parse_word(t.substr(0, open), alphabet_size);
  Word w = parse_word(t.substr(open + 1, t.size() - open - 2), alphabet_size);
  if (w.empty()) throw ParseError(ParseError::Kind::Syntax, "empty period in '" + t + "'");
  return EvPeriodicWord(std::move(u), std::move(w));
}

Letter EvPeriodicWord::at(std::size_t i) const {
  if (i < preperiod_.size()) return preperiod_[i];
  return period_[(i - preperiod_.size()) % period_.size()];
}

Word EvPeriodicWord::prefix(std::size_t n) const {
  Word w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = at(i);
  return w;
}

bool EvPeriodicWord::starts_with(const Word& u) const {
  for (std::size_t i = 0; i < u.size(); ++i)
    if (at(i) != u[i]) return false;
  return true;
}

EvPeriodicWord EvPeriodicWord::drop(std::size_t n) const {
  if (n <= preperiod_.size()) return EvPeriodicWord(Word(preperiod_.begin() + static_cast<std::ptrdiff_t>(n), preperiod_.end()), period_);
  const std::size_t r = (n - preperiod_.size()) % period_.size();
  Word w(period_.begin() + static_cast<std::ptrdiff_t>(r), period_.end());
  w.insert(w.end(), period_.begin(), period_.begin() + static_cast<std::ptrdiff_t>(r));
  return EvPeriodicWord({}, std::move(w));
}

EvPeriodicWord EvPeriodicWord::prepend(const Word& u) const {
  Word pre = u;
  pre.insert(pre.end(), preperiod_.begin(), preperiod_.end());
  return EvPeriodicWord(std::move(pre), period_);
}

std::string EvPeriodicWord::to_string() const {
  return format_word(preperiod_) + "(" + format_word(period_) + ")";
}

EvPeriodicWord act_point(const Automaton& aut, const GroupElement& g, const EvPeriodicWord& w) {
  Word head = act_word(aut, g, w.preperiod());
  GroupElement cur = section(aut, g, w.preperiod());
  std::map<GroupElement, std::size_t> first_seen;
  std::vector<Word> blocks;
  while (!first_seen.count(cur)) {
    first_seen.emplace(cur, blocks.size());
    blocks.push_back(act_word(aut, cur, w.period()));
    cur = section(aut, cur, w.period());
  }
  const std::size_t start = first_seen.at(cur);
  for (std::size_t i = 0; i < start; ++i) head.insert(head.end(), blocks[i].begin(), blocks[i].end());
  Word period;
  for (std::size_t i = start; i < blocks.size(); ++i) period.insert(period.end(), blocks[i].begin(), blocks[i].end());
  return EvPeriodicWord(std::move(head), std::move(period));
}

}  // namespace ssg

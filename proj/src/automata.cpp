#include "lookahead/automata.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

#include "lookahead/errors.hpp"
#include "lookahead/graph.hpp"

namespace lookahead {

// ---------------------------------------------------------------------------
// Alphabet

namespace {

bool valid_token(std::string_view s) {
  if (s.empty() || s == "-") return false;
  for (char c : s) {
    if (c == '#' || static_cast<unsigned char>(c) <= ' ') return false;
  }
  return true;
}

void check_game_alphabet(const Alphabet& a) {
  if (a.size() < 2) throw InvalidArgument("game alphabets need at least two symbols");
  for (const auto& s : a.symbols())
    if (s.find('/') != std::string::npos)
      throw InvalidArgument("game alphabet symbol '" + s + "' contains '/'");
}

}  // namespace

Alphabet::Alphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
  if (symbols_.empty()) throw InvalidArgument("alphabet must not be empty");
  std::set<std::string_view> seen;
  for (const auto& s : symbols_) {
    if (!valid_token(s)) throw InvalidArgument("invalid alphabet symbol '" + s + "'");
    if (!seen.insert(s).second) throw InvalidArgument("duplicate alphabet symbol '" + s + "'");
  }
}

Alphabet Alphabet::boolean() { return Alphabet({"0", "1"}); }

std::optional<Letter> Alphabet::find(std::string_view token) const {
  for (std::size_t i = 0; i < symbols_.size(); ++i)
    if (symbols_[i] == token) return static_cast<Letter>(i);
  return std::nullopt;
}

Letter Alphabet::index(std::string_view token) const {
  if (auto a = find(token)) return *a;
  throw InvalidArgument("unknown symbol '" + std::string(token) + "'");
}

std::string Alphabet::format(std::span<const Letter> word) const {
  bool single = std::all_of(symbols_.begin(), symbols_.end(),
                            [](const std::string& s) { return s.size() == 1; });
  std::string out;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (!single && i) out += ' ';
    out += symbol(word[i]);
  }
  return out;
}

PairWord zip(std::span<const Letter> u, std::span<const Letter> v) {
  if (u.size() != v.size()) throw InvalidArgument("input and output words differ in length");
  PairWord w(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) w[i] = {u[i], v[i]};
  return w;
}

Lasso::Lasso(PairWord p, PairWord c) : prefix(std::move(p)), cycle(std::move(c)) {
  if (cycle.empty()) throw InvalidArgument("lasso cycle must be nonempty");
}

// ---------------------------------------------------------------------------
// Automata

ParityAutomaton::ParityAutomaton(Alphabet inputs, Alphabet outputs, std::size_t state_count,
                                 State initial, std::vector<State> transitions,
                                 std::vector<Color> colors)
    : inputs_(std::move(inputs)),
      outputs_(std::move(outputs)),
      initial_(initial),
      transitions_(std::move(transitions)),
      colors_(std::move(colors)) {
  check_game_alphabet(inputs_);
  check_game_alphabet(outputs_);
  if (state_count == 0) throw InvalidArgument("automaton needs at least one state");
  if (colors_.size() != state_count) throw InvalidArgument("one color per state required");
  if (initial_ >= state_count) throw InvalidArgument("initial state out of range");
  if (transitions_.size() != state_count * inputs_.size() * outputs_.size())
    throw InvalidArgument("transition table is not total");
  for (State t : transitions_)
    if (t >= state_count) throw InvalidArgument("transition target out of range");
  max_color_ = *std::max_element(colors_.begin(), colors_.end());
}

void ParityAutomaton::check_letter(PairLetter x) const {
  if (!inputs_.contains(x.in))
    throw InvalidArgument("unknown input letter " + std::to_string(x.in));
  if (!outputs_.contains(x.out))
    throw InvalidArgument("unknown output letter " + std::to_string(x.out));
}

FiniteAutomaton::FiniteAutomaton(Alphabet alphabet, std::size_t state_count, State initial,
                                 std::vector<State> transitions, std::vector<bool> finals)
    : alphabet_(std::move(alphabet)),
      initial_(initial),
      transitions_(std::move(transitions)),
      finals_(std::move(finals)) {
  if (state_count == 0) throw InvalidArgument("automaton needs at least one state");
  if (finals_.size() != state_count) throw InvalidArgument("final flags size mismatch");
  if (initial_ >= state_count) throw InvalidArgument("initial state out of range");
  if (transitions_.size() != state_count * alphabet_.size())
    throw InvalidArgument("transition table is not total");
  for (State t : transitions_)
    if (t >= state_count) throw InvalidArgument("transition target out of range");
}

bool FiniteAutomaton::accepts(std::span<const Letter> word) const {
  State q = initial_;
  for (Letter a : word) {
    if (!alphabet_.contains(a)) throw InvalidArgument("unknown letter " + std::to_string(a));
    q = next(q, a);
  }
  return is_final(q);
}

Alphabet paired_alphabet(const Alphabet& inputs, const Alphabet& outputs) {
  std::vector<std::string> symbols;
  symbols.reserve(inputs.size() * outputs.size());
  for (const auto& a : inputs.symbols())
    for (const auto& b : outputs.symbols()) symbols.push_back(a + "/" + b);
  return Alphabet(std::move(symbols));
}

// ---------------------------------------------------------------------------
// Text formats

namespace {

struct Line {
  std::size_t number = 0;
  std::vector<std::string_view> tokens;
};

class LineReader {
 public:
  explicit LineReader(std::string_view text) : text_(text) {}

  /// Next non-blank line with comments stripped; nullopt at end of input.
  std::optional<Line> next() {
    while (pos_ <= text_.size() && pos_ != std::string_view::npos) {
      std::size_t end = text_.find('\n', pos_);
      std::string_view raw = text_.substr(pos_, end == std::string_view::npos ? end : end - pos_);
      pos_ = end == std::string_view::npos ? std::string_view::npos : end + 1;
      ++line_;
      if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
      Line line{line_, split(raw)};
      if (!line.tokens.empty()) return line;
      if (end == std::string_view::npos) break;
    }
    return std::nullopt;
  }

  std::size_t line() const { return line_; }

  static std::vector<std::string_view> split(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
      while (i < s.size() && static_cast<unsigned char>(s[i]) <= ' ') ++i;
      std::size_t j = i;
      while (j < s.size() && static_cast<unsigned char>(s[j]) > ' ') ++j;
      if (j > i) out.push_back(s.substr(i, j - i));
      i = j;
    }
    return out;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 0;
};

std::size_t parse_number(std::string_view tok, std::size_t line) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw ParseError(line, "expected a nonnegative integer, got '" + std::string(tok) + "'");
  return value;
}

Line expect_line(LineReader& r, std::string_view what) {
  auto line = r.next();
  if (!line) throw ParseError(r.line(), "unexpected end of input, expected " + std::string(what));
  return *line;
}

/// Reads "key: v1 v2 ..." and returns the values.
std::vector<std::string_view> expect_key(LineReader& r, std::string_view key) {
  Line line = expect_line(r, key);
  if (line.tokens.front() != key)
    throw ParseError(line.number, "expected '" + std::string(key) + "', got '" +
                                      std::string(line.tokens.front()) + "'");
  return {line.tokens.begin() + 1, line.tokens.end()};
}

std::size_t expect_count(LineReader& r, std::string_view key) {
  auto values = expect_key(r, key);
  if (values.size() != 1) throw ParseError(r.line(), std::string(key) + " takes one value");
  return parse_number(values[0], r.line());
}

Alphabet expect_alphabet(LineReader& r, std::string_view key) {
  auto values = expect_key(r, key);
  try {
    return Alphabet(std::vector<std::string>(values.begin(), values.end()));
  } catch (const InvalidArgument& e) {
    throw ParseError(r.line(), e.what());
  }
}

void expect_header(LineReader& r, std::string_view header) {
  Line line = expect_line(r, header);
  if (line.tokens.size() != 1 || line.tokens[0] != header)
    throw ParseError(line.number, "expected header '" + std::string(header) + "'");
}

Letter lookup(const Alphabet& a, std::string_view tok, std::size_t line) {
  if (auto x = a.find(tok)) return *x;
  throw ParseError(line, "unknown symbol '" + std::string(tok) + "'");
}

constexpr State kUnset = UINT32_MAX;

}  // namespace

ParityAutomaton parse_dpa(std::string_view text) {
  LineReader r(text);
  expect_header(r, "dpa");
  Alphabet in = expect_alphabet(r, "in:");
  Alphabet out = expect_alphabet(r, "out:");
  std::size_t n = expect_count(r, "states:");
  if (n == 0) throw ParseError(r.line(), "states must be positive");
  std::size_t init = expect_count(r, "init:");
  if (init >= n)
    throw ParseError(r.line(), "init " + std::to_string(init) + " out of range for " +
                                   std::to_string(n) + " states");
  auto color_tokens = expect_key(r, "colors:");
  if (color_tokens.size() != n)
    throw ParseError(r.line(), "expected " + std::to_string(n) + " colors, got " +
                                   std::to_string(color_tokens.size()));
  std::vector<Color> colors;
  for (auto tok : color_tokens) colors.push_back(static_cast<Color>(parse_number(tok, r.line())));

  std::vector<State> delta(n * in.size() * out.size(), kUnset);
  for (;;) {
    Line line = expect_line(r, "transition or 'end'");
    if (line.tokens.size() == 1 && line.tokens[0] == "end") {
      if (r.next()) throw ParseError(r.line(), "content after 'end'");
      break;
    }
    if (line.tokens.size() != 3)
      throw ParseError(line.number, "expected '<src> <in>/<out> <dst>'");
    std::size_t src = parse_number(line.tokens[0], line.number);
    std::size_t dst = parse_number(line.tokens[2], line.number);
    if (src >= n || dst >= n) throw ParseError(line.number, "state out of range");
    std::string_view pair = line.tokens[1];
    auto slash = pair.find('/');
    if (slash == std::string_view::npos)
      throw ParseError(line.number, "expected '<in>/<out>', got '" + std::string(pair) + "'");
    Letter a = lookup(in, pair.substr(0, slash), line.number);
    Letter b = lookup(out, pair.substr(slash + 1), line.number);
    State& slot = delta[(src * in.size() + a) * out.size() + b];
    if (slot != kUnset)
      throw ParseError(line.number, "duplicate transition (" + std::to_string(src) + ", " +
                                        std::string(pair) + ")");
    slot = static_cast<State>(dst);
  }
  for (std::size_t q = 0; q < n; ++q)
    for (std::size_t a = 0; a < in.size(); ++a)
      for (std::size_t b = 0; b < out.size(); ++b)
        if (delta[(q * in.size() + a) * out.size() + b] == kUnset)
          throw ParseError(r.line(), "missing transition (" + std::to_string(q) + ", " +
                                         in.symbol(a) + ", " + out.symbol(b) + ")");
  try {
    return ParityAutomaton(std::move(in), std::move(out), n, static_cast<State>(init),
                           std::move(delta), std::move(colors));
  } catch (const InvalidArgument& e) {
    throw ParseError(0, e.what());
  }
}

std::string to_text(const ParityAutomaton& a) {
  std::ostringstream os;
  auto join = [&](const Alphabet& al) {
    for (const auto& s : al.symbols()) os << ' ' << s;
    os << '\n';
  };
  os << "dpa\nin:";
  join(a.inputs());
  os << "out:";
  join(a.outputs());
  os << "states: " << a.state_count() << "\ninit: " << a.initial() << "\ncolors:";
  for (Color c : a.colors()) os << ' ' << c;
  os << '\n';
  for (State q = 0; q < a.state_count(); ++q)
    for (Letter x = 0; x < a.inputs().size(); ++x)
      for (Letter y = 0; y < a.outputs().size(); ++y)
        os << q << ' ' << a.inputs().symbol(x) << '/' << a.outputs().symbol(y) << ' '
           << a.next(q, x, y) << '\n';
  os << "end\n";
  return os.str();
}

FiniteAutomaton parse_dfa(std::string_view text) {
  LineReader r(text);
  expect_header(r, "dfa");
  Alphabet sigma = expect_alphabet(r, "sigma:");
  std::size_t n = expect_count(r, "states:");
  if (n == 0) throw ParseError(r.line(), "states must be positive");
  std::size_t init = expect_count(r, "init:");
  if (init >= n) throw ParseError(r.line(), "init out of range");
  std::vector<bool> finals(n, false);
  for (auto tok : expect_key(r, "finals:")) {
    std::size_t q = parse_number(tok, r.line());
    if (q >= n) throw ParseError(r.line(), "final state out of range");
    finals[q] = true;
  }
  std::vector<State> delta(n * sigma.size(), kUnset);
  for (;;) {
    Line line = expect_line(r, "transition or 'end'");
    if (line.tokens.size() == 1 && line.tokens[0] == "end") {
      if (r.next()) throw ParseError(r.line(), "content after 'end'");
      break;
    }
    if (line.tokens.size() != 3) throw ParseError(line.number, "expected '<src> <sym> <dst>'");
    std::size_t src = parse_number(line.tokens[0], line.number);
    std::size_t dst = parse_number(line.tokens[2], line.number);
    if (src >= n || dst >= n) throw ParseError(line.number, "state out of range");
    Letter a = lookup(sigma, line.tokens[1], line.number);
    State& slot = delta[src * sigma.size() + a];
    if (slot != kUnset) throw ParseError(line.number, "duplicate transition");
    slot = static_cast<State>(dst);
  }
  for (std::size_t q = 0; q < n; ++q)
    for (std::size_t a = 0; a < sigma.size(); ++a)
      if (delta[q * sigma.size() + a] == kUnset)
        throw ParseError(r.line(), "missing transition (" + std::to_string(q) + ", " +
                                       sigma.symbol(a) + ")");
  return FiniteAutomaton(std::move(sigma), n, static_cast<State>(init), std::move(delta),
                         std::move(finals));
}

std::string to_text(const FiniteAutomaton& f) {
  std::ostringstream os;
  os << "dfa\nsigma:";
  for (const auto& s : f.alphabet().symbols()) os << ' ' << s;
  os << "\nstates: " << f.state_count() << "\ninit: " << f.initial() << "\nfinals:";
  for (State q = 0; q < f.state_count(); ++q)
    if (f.is_final(q)) os << ' ' << q;
  os << '\n';
  for (State q = 0; q < f.state_count(); ++q)
    for (Letter a = 0; a < f.alphabet().size(); ++a)
      os << q << ' ' << f.alphabet().symbol(a) << ' ' << f.next(q, a) << '\n';
  os << "end\n";
  return os.str();
}

PairWord parse_pair_word(const ParityAutomaton& a, std::string_view text) {
  PairWord w;
  for (auto tok : LineReader::split(text)) {
    auto slash = tok.find('/');
    if (slash == std::string_view::npos)
      throw InvalidArgument("expected '<in>/<out>', got '" + std::string(tok) + "'");
    w.push_back({a.inputs().index(tok.substr(0, slash)), a.outputs().index(tok.substr(slash + 1))});
  }
  return w;
}

Word parse_word(const Alphabet& alphabet, std::string_view text) {
  Word w;
  for (auto tok : LineReader::split(text)) {
    if (auto a = alphabet.find(tok)) {
      w.push_back(*a);
      continue;
    }
    for (char c : tok) w.push_back(alphabet.index(std::string_view(&c, 1)));
  }
  return w;
}

// ---------------------------------------------------------------------------
// Runs

RunResult run_from(const ParityAutomaton& a, State from, std::span<const PairLetter> word) {
  if (from >= a.state_count()) throw InvalidArgument("state out of range");
  RunResult r;
  r.states.reserve(word.size() + 1);
  r.states.push_back(from);
  State q = from;
  for (PairLetter x : word) {
    a.check_letter(x);
    q = a.next(q, x);
    r.states.push_back(q);
    r.max_color = std::max(r.max_color.value_or(0), a.color(q));
  }
  return r;
}

RunResult run_prefix(const ParityAutomaton& a, std::span<const PairLetter> word) {
  return run_from(a, a.initial(), word);
}

bool accepts_lasso(const ParityAutomaton& a, const Lasso& lasso) {
  State q = run_prefix(a, lasso.prefix).states.back();
  for (PairLetter x : lasso.cycle) a.check_letter(x);
  // Iterate the cycle until the state at a cycle boundary repeats.
  std::unordered_map<State, std::size_t> seen;
  std::vector<Color> colors;
  const std::size_t len = lasso.cycle.size();
  for (std::size_t round = 0;; ++round) {
    auto [it, fresh] = seen.emplace(q, round);
    if (!fresh) {
      Color best = 0;
      for (std::size_t i = it->second * len; i < colors.size(); ++i) best = std::max(best, colors[i]);
      return best % 2 == 0;
    }
    for (PairLetter x : lasso.cycle) {
      q = a.next(q, x);
      colors.push_back(a.color(q));
    }
  }
}

// ---------------------------------------------------------------------------
// Finite-word languages

namespace {

Digraph transition_graph(const FiniteAutomaton& f) {
  std::vector<std::vector<Vertex>> adj(f.state_count());
  for (State q = 0; q < f.state_count(); ++q)
    for (Letter a = 0; a < f.alphabet().size(); ++a) adj[q].push_back(f.next(q, a));
  return Digraph(adj);
}

std::vector<char> coreachable(const FiniteAutomaton& f, const Digraph& g) {
  std::vector<Vertex> finals;
  for (State q = 0; q < f.state_count(); ++q)
    if (f.is_final(q)) finals.push_back(q);
  return reachable_from(g.reversed(), finals);
}

}  // namespace

bool language_infinite(const FiniteAutomaton& f) {
  Digraph g = transition_graph(f);
  Vertex init = f.initial();
  auto fwd = reachable_from(g, std::span<const Vertex>(&init, 1));
  auto bwd = coreachable(f, g);
  std::vector<char> trim(f.state_count());
  for (std::size_t q = 0; q < trim.size(); ++q) trim[q] = fwd[q] && bwd[q];
  auto scc = strongly_connected_components(g, trim);
  for (std::size_t q = 0; q < trim.size(); ++q)
    if (trim[q] && scc.cyclic[scc.component[q]]) return true;
  return false;
}

Word length_witness(const FiniteAutomaton& f, std::size_t i) {
  if (!language_infinite(f)) throw InvalidArgument("length_witness needs an infinite language");
  Digraph g = transition_graph(f);
  auto good = coreachable(f, g);
  const std::size_t n = f.state_count();
  const std::size_t k = f.alphabet().size();

  // Layered walk of length i that stays inside states co-reachable to F.
  // parent[j][q] = (previous state, letter) for layer j.
  std::vector<std::vector<std::pair<State, Letter>>> parent;
  std::vector<char> layer(n, 0);
  layer[f.initial()] = 1;
  for (std::size_t j = 0; j < i; ++j) {
    std::vector<char> next(n, 0);
    std::vector<std::pair<State, Letter>> back(n, {kUnset, 0});
    for (State q = 0; q < n; ++q) {
      if (!layer[q]) continue;
      for (Letter a = 0; a < k; ++a) {
        State t = f.next(q, a);
        if (good[t] && !next[t]) {
          next[t] = 1;
          back[t] = {q, a};
        }
      }
    }
    parent.push_back(std::move(back));
    layer = std::move(next);
  }
  State end = kUnset;
  for (State q = 0; q < n && end == kUnset; ++q)
    if (layer[q]) end = q;
  if (end == kUnset) throw InvalidArgument("no co-reachable walk of the requested length");

  Word word(i);
  State q = end;
  for (std::size_t j = i; j-- > 0;) {
    word[j] = parent[j][q].second;
    q = parent[j][q].first;
  }

  // Shortest completion to a final state.
  std::vector<std::pair<State, Letter>> via(n, {kUnset, 0});
  std::vector<char> seen(n, 0);
  std::vector<State> queue{end};
  seen[end] = 1;
  State hit = f.is_final(end) ? end : kUnset;
  for (std::size_t head = 0; head < queue.size() && hit == kUnset; ++head) {
    State s = queue[head];
    for (Letter a = 0; a < k; ++a) {
      State t = f.next(s, a);
      if (seen[t]) continue;
      seen[t] = 1;
      via[t] = {s, a};
      if (f.is_final(t)) {
        hit = t;
        break;
      }
      queue.push_back(t);
    }
  }
  Word tail;
  for (State s = hit; s != end; s = via[s].first) tail.push_back(via[s].second);
  word.insert(word.end(), tail.rbegin(), tail.rend());
  return word;
}

}  // namespace lookahead

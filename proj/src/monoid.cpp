#include "lookahead/monoid.hpp"

#include <algorithm>
#include <atomic>
#include <deque>
#include <set>
#include <sstream>
#include <unordered_map>

#include "lookahead/errors.hpp"
#include "lookahead/graph.hpp"

namespace lookahead {

namespace {

std::atomic<int> product_fault{0};

inline std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

}  // namespace

// ---------------------------------------------------------------------------
// ColorMatrix

ColorMatrix::ColorMatrix(std::vector<MatrixEntry> rows) : rows_(std::move(rows)) {
  for (const auto& e : rows_)
    if (e.target >= rows_.size()) throw InvalidArgument("matrix entry column out of range");
}

std::size_t ColorMatrix::hash() const noexcept {
  std::size_t h = rows_.size();
  for (const auto& e : rows_) h = mix(h, (static_cast<std::size_t>(e.target) << 32) | e.color);
  return h;
}

std::string ColorMatrix::to_string() const {
  std::ostringstream os;
  for (State p = 0; p < rows_.size(); ++p) {
    for (State q = 0; q < rows_.size(); ++q) {
      if (q) os << ' ';
      if (auto v = at(p, q)) {
        os << *v;
      } else {
        os << '.';
      }
    }
    os << '\n';
  }
  return os.str();
}

ColorMatrix operator*(const ColorMatrix& m, const ColorMatrix& n) {
  if (m.dimension() != n.dimension()) throw InvalidArgument("matrix dimension mismatch");
  const bool fault = product_fault.load(std::memory_order_relaxed) != 0;
  std::vector<MatrixEntry> rows(m.dimension());
  for (State p = 0; p < rows.size(); ++p) {
    const MatrixEntry& first = m.row(p);
    const MatrixEntry& second = n.row(first.target);
    rows[p].target = second.target;
    rows[p].color = fault ? std::min(first.color, second.color)
                          : std::max(first.color, second.color);
  }
  return ColorMatrix(std::move(rows));
}

ScopedProductFault::ScopedProductFault() { ++product_fault; }
ScopedProductFault::~ScopedProductFault() { --product_fault; }

ColorMatrix letter_matrix(const ParityAutomaton& a, Letter in, Letter out) {
  a.check_letter({in, out});
  std::vector<MatrixEntry> rows(a.state_count());
  for (State p = 0; p < rows.size(); ++p) {
    State q = a.next(p, in, out);
    rows[p] = {q, a.color(q)};
  }
  return ColorMatrix(std::move(rows));
}

std::vector<std::vector<ColorMatrix>> letter_matrices(const ParityAutomaton& a) {
  std::vector<std::vector<ColorMatrix>> table(a.inputs().size());
  for (Letter x = 0; x < a.inputs().size(); ++x)
    for (Letter y = 0; y < a.outputs().size(); ++y) table[x].push_back(letter_matrix(a, x, y));
  return table;
}

ColorMatrix word_matrix(const ParityAutomaton& a, std::span<const Letter> u,
                        std::span<const Letter> v) {
  if (u.size() != v.size()) throw InvalidArgument("word_matrix: length mismatch");
  if (u.empty()) throw InvalidArgument("word_matrix: the empty block has no matrix");
  ColorMatrix m = letter_matrix(a, u[0], v[0]);
  for (std::size_t i = 1; i < u.size(); ++i) m = m * letter_matrix(a, u[i], v[i]);
  return m;
}

std::vector<ColorMatrix> enumerate_monoid(const ParityAutomaton& a) {
  std::vector<ColorMatrix> generators;
  for (const auto& row : letter_matrices(a))
    generators.insert(generators.end(), row.begin(), row.end());
  std::set<ColorMatrix> seen(generators.begin(), generators.end());
  std::deque<ColorMatrix> todo(seen.begin(), seen.end());
  while (!todo.empty()) {
    ColorMatrix m = std::move(todo.front());
    todo.pop_front();
    for (const auto& g : generators) {
      ColorMatrix p = m * g;
      if (seen.insert(p).second) todo.push_back(std::move(p));
    }
  }
  return {seen.begin(), seen.end()};
}

FiniteAutomaton tracking_automaton(const ParityAutomaton& a, State p, State q, Color k) {
  const std::size_t n = a.state_count();
  if (p >= n || q >= n) throw InvalidArgument("tracking_automaton: state out of range");
  const auto& colors = a.colors();
  if (std::find(colors.begin(), colors.end(), k) == colors.end())
    throw InvalidArgument("tracking_automaton: color " + std::to_string(k) + " is not used");

  // State (slot, r): slot 0 means no color seen yet, slot c+1 means max color c.
  const std::size_t slots = a.max_color() + 2;
  auto id = [&](std::size_t slot, State r) { return static_cast<State>(slot * n + r); };
  Alphabet sigma = paired_alphabet(a.inputs(), a.outputs());
  std::vector<State> delta(slots * n * sigma.size());
  std::vector<bool> finals(slots * n, false);
  for (std::size_t slot = 0; slot < slots; ++slot) {
    for (State r = 0; r < n; ++r) {
      for (Letter x = 0; x < a.inputs().size(); ++x) {
        for (Letter y = 0; y < a.outputs().size(); ++y) {
          State t = a.next(r, x, y);
          Color seen = slot == 0 ? a.color(t) : std::max<Color>(Color(slot - 1), a.color(t));
          Letter xy = paired_index(a, {x, y});
          delta[id(slot, r) * sigma.size() + xy] = id(seen + 1, t);
        }
      }
    }
  }
  finals[id(k + 1, q)] = true;
  return FiniteAutomaton(std::move(sigma), slots * n, id(0, p), std::move(delta),
                         std::move(finals));
}

FiniteAutomaton class_automaton(const ParityAutomaton& a, const ColorMatrix& m) {
  auto letters = letter_matrices(a);
  Alphabet sigma = paired_alphabet(a.inputs(), a.outputs());
  // State 0 is the empty block; the others are matrices.
  std::vector<ColorMatrix> states{ColorMatrix{}};
  std::unordered_map<ColorMatrix, State, ColorMatrixHash> index;
  std::vector<State> delta;
  for (State s = 0; s < states.size(); ++s) {
    for (Letter x = 0; x < a.inputs().size(); ++x) {
      for (Letter y = 0; y < a.outputs().size(); ++y) {
        ColorMatrix t = s == 0 ? letters[x][y] : states[s] * letters[x][y];
        auto [it, fresh] = index.emplace(t, static_cast<State>(states.size()));
        if (fresh) states.push_back(std::move(t));
        delta.push_back(it->second);
      }
    }
  }
  auto hit = index.find(m);
  if (hit == index.end()) throw InvalidArgument("class_automaton: matrix is not realizable");
  std::vector<bool> finals(states.size(), false);
  finals[hit->second] = true;
  return FiniteAutomaton(std::move(sigma), states.size(), 0, std::move(delta), std::move(finals));
}

// ---------------------------------------------------------------------------
// Profiles

Profile::Profile(std::vector<ColorMatrix> matrices) : matrices_(std::move(matrices)) {
  if (matrices_.empty()) throw InvalidArgument("profile must be nonempty");
  std::sort(matrices_.begin(), matrices_.end());
  matrices_.erase(std::unique(matrices_.begin(), matrices_.end()), matrices_.end());
  for (const auto& m : matrices_)
    if (m.dimension() != matrices_.front().dimension())
      throw InvalidArgument("profile matrices differ in dimension");
}

bool Profile::contains(const ColorMatrix& m) const {
  return std::binary_search(matrices_.begin(), matrices_.end(), m);
}

std::size_t Profile::hash() const noexcept {
  std::size_t h = matrices_.size();
  for (const auto& m : matrices_) h = mix(h, m.hash());
  return h;
}

Profile brute_force_profile(const ParityAutomaton& a, std::span<const Letter> u) {
  if (u.empty()) throw InvalidArgument("brute_force_profile: empty word");
  const std::size_t k = a.outputs().size();
  std::vector<ColorMatrix> found;
  Word v(u.size(), 0);
  for (;;) {
    found.push_back(word_matrix(a, u, v));
    std::size_t i = 0;
    while (i < v.size() && ++v[i] == k) v[i++] = 0;
    if (i == v.size()) break;
  }
  return Profile(std::move(found));
}

ProfileAutomaton::ProfileAutomaton(Alphabet alphabet, std::vector<Profile> profiles,
                                   std::vector<State> transitions)
    : alphabet_(std::move(alphabet)),
      profiles_(std::move(profiles)),
      transitions_(std::move(transitions)) {
  const std::size_t n = profiles_.size();
  const std::size_t k = alphabet_.size();
  if (transitions_.size() != n * k) throw InvalidArgument("profile automaton is not total");

  std::vector<std::vector<Vertex>> adj(n);
  for (State s = 0; s < n; ++s)
    for (Letter a = 0; a < k; ++a) adj[s].push_back(next(s, a));
  Digraph g(adj);

  // Infinite language iff reachable from a state on a cycle.
  auto scc = strongly_connected_components(g);
  std::vector<Vertex> cyclic;
  for (State s = 0; s < n; ++s)
    if (scc.cyclic[scc.component[s]]) cyclic.push_back(s);
  auto infinite = reachable_from(g, cyclic);
  finite_.resize(n);
  for (State s = 0; s < n; ++s) finite_[s] = !infinite[s];

  // Longest path among finite states; they form a DAG closed under
  // predecessors, and larger component ids come first topologically.
  std::vector<State> order(n);
  for (State s = 0; s < n; ++s) order[s] = s;
  std::sort(order.begin(), order.end(),
            [&](State x, State y) { return scc.component[x] > scc.component[y]; });
  std::vector<std::size_t> depth(n, 0);
  for (State s : order) {
    if (!finite_[s]) continue;
    d_prime_ = std::max(d_prime_, depth[s]);
    for (Vertex t : g.successors(s))
      if (finite_[t]) depth[t] = std::max(depth[t], depth[s] + 1);
  }
}

State ProfileAutomaton::state_of(std::span<const Letter> u) const {
  State s = kInit;
  for (Letter a : u) {
    if (!alphabet_.contains(a)) throw InvalidArgument("unknown input letter");
    s = next(s, a);
  }
  return s;
}

std::optional<State> ProfileAutomaton::find(const Profile& p) const {
  for (State s = 1; s < profiles_.size(); ++s)
    if (profiles_[s] == p) return s;
  return std::nullopt;
}

std::vector<State> ProfileAutomaton::infinite_states() const {
  std::vector<State> out;
  for (State s = 0; s < profiles_.size(); ++s)
    if (!finite_[s]) out.push_back(s);
  return out;
}

FiniteAutomaton ProfileAutomaton::class_recognizer(State s) const {
  std::vector<bool> finals(profiles_.size(), false);
  finals.at(s) = true;
  return FiniteAutomaton(alphabet_, profiles_.size(), kInit, transitions_, std::move(finals));
}

ProfileAutomaton build_profile_automaton(const ParityAutomaton& a, std::size_t max_states) {
  auto letters = letter_matrices(a);
  const std::size_t k = a.inputs().size();
  std::vector<Profile> profiles{Profile{}};
  std::unordered_map<Profile, State, ProfileHash> index;
  std::vector<State> delta;
  std::vector<ColorMatrix> image;
  for (State s = 0; s < profiles.size(); ++s) {
    for (Letter x = 0; x < k; ++x) {
      image.clear();
      if (s == ProfileAutomaton::kInit) {
        image = letters[x];
      } else {
        for (const auto& m : profiles[s].matrices())
          for (const auto& l : letters[x]) image.push_back(m * l);
      }
      Profile p(image);
      auto [it, fresh] = index.emplace(p, static_cast<State>(profiles.size()));
      if (fresh) {
        if (profiles.size() >= max_states) throw BudgetExceeded(profiles.size() + 1, max_states);
        profiles.push_back(std::move(p));
      }
      delta.push_back(it->second);
    }
  }
  return ProfileAutomaton(a.inputs(), std::move(profiles), std::move(delta));
}

// ---------------------------------------------------------------------------
// Representatives

MatchTable::MatchTable(const ParityAutomaton& a)
    : letters_(std::make_shared<const std::vector<std::vector<ColorMatrix>>>(letter_matrices(a))) {}

void MatchTable::extend(Letter in) {
  if (!letters_) throw InvalidArgument("MatchTable is not bound to an automaton");
  const auto& row = letters_->at(in);
  std::map<ColorMatrix, Word> next;
  auto offer = [&](ColorMatrix m, const Word& prefix, Letter b) {
    Word w;
    w.reserve(prefix.size() + 1);
    w = prefix;
    w.push_back(b);
    auto it = next.find(m);
    if (it == next.end()) {
      next.emplace(std::move(m), std::move(w));
    } else if (w < it->second) {
      it->second = std::move(w);
    }
  };
  if (length_ == 0) {
    for (Letter b = 0; b < row.size(); ++b) offer(row[b], {}, b);
  } else {
    for (const auto& [m, v] : entries_)
      for (Letter b = 0; b < row.size(); ++b) offer(m * row[b], v, b);
  }
  entries_ = std::move(next);
  ++length_;
}

Profile MatchTable::profile() const {
  if (entries_.empty()) throw InvalidArgument("empty block has no profile");
  std::vector<ColorMatrix> ms;
  for (const auto& [m, v] : entries_) ms.push_back(m);
  return Profile(std::move(ms));
}

const Word* MatchTable::lookup(const ColorMatrix& m) const {
  auto it = entries_.find(m);
  return it == entries_.end() ? nullptr : &it->second;
}

std::optional<Word> find_matching_output(const ParityAutomaton& a, std::span<const Letter> u,
                                         const ColorMatrix& m) {
  if (u.empty()) throw InvalidArgument("find_matching_output: empty input block");
  MatchTable table(a);
  for (Letter x : u) {
    if (!a.inputs().contains(x)) throw InvalidArgument("unknown input letter");
    table.extend(x);
  }
  if (const Word* v = table.lookup(m)) return *v;
  return std::nullopt;
}

}  // namespace lookahead

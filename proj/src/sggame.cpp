#include "lookahead/sggame.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <unordered_map>

#include "lookahead/errors.hpp"

namespace lookahead {

std::optional<Vertex> SemigroupGame::answer_vertex(State q, State pending, State next) const {
  const std::size_t s = profiles.state_count();
  const std::size_t i = (static_cast<std::size_t>(q) * s + pending) * s + next;
  if (i >= answer_index.size() || answer_index[i] == kNoVertex) return std::nullopt;
  return answer_index[i];
}

std::string SemigroupGame::describe(Vertex v) const {
  const auto& x = vertices.at(v);
  std::ostringstream os;
  switch (x.kind) {
    case SgVertex::Kind::Init:
      os << "init";
      break;
    case SgVertex::Kind::Init2:
      os << "init2(P" << x.pending << ")";
      break;
    case SgVertex::Kind::Answer:
      os << "answer(q" << x.q << ", P" << x.pending << ", P" << x.next << ")";
      break;
    case SgVertex::Kind::Pick:
      os << "pick(q" << x.q << ", P" << x.next << ", c" << x.color << ")";
      break;
  }
  return os.str();
}

SemigroupGame build_semigroup_game(const ParityAutomaton& a, std::size_t max_profiles) {
  SemigroupGame g{build_profile_automaton(a, max_profiles), {}, {}, {}, 0, {}};
  g.usable = g.profiles.infinite_states();
  if (g.usable.empty()) throw InvalidArgument("profile automaton has no infinite class");

  const std::size_t n = a.state_count();
  const std::size_t s = g.profiles.state_count();
  const std::size_t colors = a.max_color() + 1;
  g.answer_index.assign(n * s * s, kNoVertex);
  std::vector<Vertex> pick_index(n * s * colors, kNoVertex);
  std::vector<Vertex> init2_index(s, kNoVertex);

  ArenaBuilder builder;
  std::vector<std::vector<Vertex>> edges;
  std::deque<Vertex> todo;
  auto add = [&](SgVertex x, Player owner) {
    Vertex id = builder.add_vertex(owner, x.kind == SgVertex::Kind::Pick ? x.color : 0);
    g.vertices.push_back(x);
    edges.emplace_back();
    todo.push_back(id);
    return id;
  };
  auto answer = [&](State q, State pending, State next) {
    Vertex& slot = g.answer_index[(q * s + pending) * s + next];
    if (slot == kNoVertex) slot = add({SgVertex::Kind::Answer, q, pending, next, 0}, Player::O);
    return slot;
  };
  auto pick = [&](State q, State next, Color c) {
    Vertex& slot = pick_index[(q * s + next) * colors + c];
    if (slot == kNoVertex) slot = add({SgVertex::Kind::Pick, q, 0, next, c}, Player::I);
    return slot;
  };
  auto init2 = [&](State p) {
    Vertex& slot = init2_index[p];
    if (slot == kNoVertex) slot = add({SgVertex::Kind::Init2, 0, p, 0, 0}, Player::I);
    return slot;
  };

  g.initial = add({SgVertex::Kind::Init, 0, 0, 0, 0}, Player::I);
  while (!todo.empty()) {
    Vertex v = todo.front();
    todo.pop_front();
    const SgVertex x = g.vertices[v];
    std::vector<Vertex> out;
    switch (x.kind) {
      case SgVertex::Kind::Init:
        for (State p : g.usable) out.push_back(init2(p));
        break;
      case SgVertex::Kind::Init2:
        for (State p : g.usable) out.push_back(answer(a.initial(), x.pending, p));
        break;
      case SgVertex::Kind::Answer:
        for (const auto& m : g.profiles.profile(x.pending).matrices()) {
          const auto& e = m.row(x.q);
          out.push_back(pick(e.target, x.next, e.color));
        }
        break;
      case SgVertex::Kind::Pick:
        for (State p : g.usable) out.push_back(answer(x.q, x.next, p));
        break;
    }
    edges[v] = std::move(out);
  }
  for (Vertex v = 0; v < edges.size(); ++v)
    for (Vertex w : edges[v]) builder.add_edge(v, w);
  g.arena = std::move(builder).build();
  return g;
}

namespace {

struct SolvedGame {
  SemigroupGame game;
  Solution solution;
  FiniteDelayVerdict verdict;
};

SolvedGame solve_semigroup_game(const ParityAutomaton& a, std::size_t max_profiles) {
  SolvedGame r{build_semigroup_game(a, max_profiles), {}, {}};
  r.solution = solve(r.game.arena);
  auto& v = r.verdict;
  v.winner = r.solution.winner[r.game.initial];
  v.n_prime = r.game.profiles.n_prime();
  v.d_prime = r.game.profiles.d_prime();
  v.monoid_size = enumerate_monoid(a).size();
  v.arena_size = r.game.arena.size();
  if (v.winner == Player::O) v.bound = 2 * v.n_prime - 1;
  const BigInt mn = BigInt(a.max_color() + 1) * a.state_count();
  v.worst_case_exponent = boost::multiprecision::pow(mn, static_cast<unsigned>(2 * a.state_count()));
  return r;
}

void put(std::string& key, std::uint32_t x) {
  for (int i = 0; i < 4; ++i) key.push_back(static_cast<char>((x >> (8 * i)) & 0xff));
}

void put_table(std::string& key, const MatchTable& t) {
  put(key, static_cast<std::uint32_t>(t.length()));
  put(key, static_cast<std::uint32_t>(t.entries().size()));
  for (const auto& [m, w] : t.entries()) {
    for (const auto& e : m.rows()) {
      put(key, e.target);
      put(key, e.color);
    }
    for (Letter b : w) put(key, b);
  }
}

struct BlockState {
  State q = 0;
  std::optional<MatchTable> pending;
  MatchTable partial;
  Word queue;  ///< outputs still to emit, front first

  std::string key() const {
    std::string k;
    put(k, q);
    k.push_back(pending ? 1 : 0);
    if (pending) put_table(k, *pending);
    put_table(k, partial);
    put(k, static_cast<std::uint32_t>(queue.size()));
    for (Letter b : queue) put(k, b);
    return k;
  }
};

}  // namespace

FiniteDelayVerdict decide_finite_delay(const ParityAutomaton& a, std::size_t max_profiles) {
  return solve_semigroup_game(a, max_profiles).verdict;
}

Synthesis synthesize_constant_delay_strategy(const ParityAutomaton& a, std::size_t budget) {
  SolvedGame solved = solve_semigroup_game(a, kUnlimited);
  Synthesis out{solved.verdict, std::nullopt};
  if (solved.verdict.winner != Player::O) return out;

  const auto& game = solved.game;
  const std::size_t block = solved.verdict.n_prime;
  const MatchTable fresh(a);

  std::vector<BlockState> states;
  std::unordered_map<std::string, State> ids;
  std::vector<MachineStep> delta;
  auto intern = [&](BlockState st) -> State {
    std::string k = st.key();
    if (auto it = ids.find(k); it != ids.end()) return it->second;
    if (states.size() >= budget) throw BudgetExceeded(states.size() + 1, budget);
    State id = static_cast<State>(states.size());
    ids.emplace(std::move(k), id);
    states.push_back(std::move(st));
    return id;
  };
  auto profile_state = [&](const MatchTable& t) {
    auto s = game.profiles.find(t.profile());
    if (!s) throw Error("block profile missing from the profile automaton");
    return *s;
  };

  intern(BlockState{a.initial(), std::nullopt, fresh, {}});
  for (std::size_t i = 0; i < states.size(); ++i) {
    for (Letter x = 0; x < a.inputs().size(); ++x) {
      BlockState st = states[i];
      st.partial.extend(x);
      Letter emit = kWait;
      if (st.partial.length() == block) {
        if (st.pending) {
          const State pp = profile_state(*st.pending);
          const State pn = profile_state(st.partial);
          auto v = game.answer_vertex(st.q, pp, pn);
          if (!v) throw Error("semigroup game has no vertex for the current blocks");
          const Vertex choice = solved.solution.strategy[*v];
          if (choice == kNoVertex) throw Error("O has no winning answer at " + game.describe(*v));
          auto succ = game.arena.successors(*v);
          const std::size_t idx = std::find(succ.begin(), succ.end(), choice) - succ.begin();
          const ColorMatrix& m = game.profiles.profile(pp).matrices().at(idx);
          const Word* w = st.pending->lookup(m);
          if (!w) throw Error("no output realizes the chosen matrix");
          emit = w->front();
          st.queue.assign(w->begin() + 1, w->end());
          st.q = m.row(st.q).target;
        }
        st.pending = std::move(st.partial);
        st.partial = fresh;
      } else if (!st.queue.empty()) {
        emit = st.queue.front();
        st.queue.erase(st.queue.begin());
      }
      State target = intern(std::move(st));
      delta.push_back({target, emit});
    }
  }
  out.machine.emplace(2 * block - 1, a.inputs(), a.outputs(), states.size(), 0, std::move(delta));
  return out;
}

// ---------------------------------------------------------------------------
// Verification

namespace {

/// Buffer summary: for each buffered letter, the successor of every DPA state
/// still reachable at that position under every output letter.
std::string buffer_key(const ParityAutomaton& a, State q, const Word& buffer) {
  std::string key;
  std::vector<State> layer{q}, next;
  std::vector<char> mark(a.state_count(), 0);
  for (Letter x : buffer) {
    next.clear();
    for (State p : layer) {
      for (Letter b = 0; b < a.outputs().size(); ++b) {
        State r = a.next(p, x, b);
        put(key, r);
        if (!mark[r]) {
          mark[r] = 1;
          next.push_back(r);
        }
      }
    }
    for (State r : next) mark[r] = 0;
    std::sort(next.begin(), next.end());
    layer.swap(next);
  }
  return key;
}

}  // namespace

bool verify_synthesized(const ParityAutomaton& a, const StrategyMachine& m, std::size_t d,
                        std::size_t budget) {
  if (m.inputs() != a.inputs() || m.outputs() != a.outputs())
    throw InvalidArgument("strategy alphabets differ from the automaton's");
  if (m.delay() != d)
    throw InvalidArgument("strategy declares delay " + std::to_string(m.delay()) +
                          ", expected " + std::to_string(d));
  check_emission_contract(m);

  struct Node {
    State s, q;
    std::uint32_t t;  ///< inputs read, saturated at d + 1
    Word buffer;
  };
  std::vector<Node> nodes;
  std::vector<Color> colors;
  std::vector<std::vector<Vertex>> adj;
  std::unordered_map<std::string, Vertex> ids;
  const std::uint32_t cap = static_cast<std::uint32_t>(d + 1);

  auto intern = [&](Node n) -> Vertex {
    std::string key;
    put(key, n.s);
    put(key, n.q);
    put(key, n.t);
    key += buffer_key(a, n.q, n.buffer);
    if (auto it = ids.find(key); it != ids.end()) return it->second;
    if (nodes.size() >= budget) throw BudgetExceeded(nodes.size() + 1, budget);
    Vertex id = static_cast<Vertex>(nodes.size());
    ids.emplace(std::move(key), id);
    colors.push_back(n.t == cap ? a.color(n.q) : 0);
    nodes.push_back(std::move(n));
    adj.emplace_back();
    return id;
  };

  intern(Node{m.initial(), a.initial(), 0, {}});
  for (Vertex v = 0; v < nodes.size(); ++v) {
    for (Letter x = 0; x < a.inputs().size(); ++x) {
      Node n = nodes[v];
      const auto& step = m.step(n.s, x);
      n.s = step.target;
      n.buffer.push_back(x);
      if (n.t >= d) {
        n.q = a.next(n.q, n.buffer.front(), step.emit);
        n.buffer.erase(n.buffer.begin());
      }
      n.t = std::min(n.t + 1, cap);
      Vertex w = intern(std::move(n));
      adj[v].push_back(w);
    }
  }
  return every_cycle_wins(Digraph(adj), colors, Player::O);
}

}  // namespace lookahead

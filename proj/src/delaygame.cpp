#include "lookahead/delaygame.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>
#include <tuple>

#include "lookahead/errors.hpp"

namespace lookahead {

DelaySpec::DelaySpec(std::vector<std::uint64_t> h, std::uint64_t t)
    : head(std::move(h)), tail(t) {
  if (tail == 0) throw InvalidArgument("delay function values must be positive");
  for (auto v : head)
    if (v == 0) throw InvalidArgument("delay function values must be positive");
}

DelaySpec DelaySpec::constant(std::size_t d) { return DelaySpec({d + 1}, 1); }

std::uint64_t DelaySpec::capacity() const {
  if (!bounded()) throw InvalidArgument("delay function has an unbounded tail");
  std::uint64_t sum = 0;
  for (auto v : head) sum += v;
  return sum - head.size() + 1;
}

std::string to_string(const DelaySpec& f) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < f.head.size(); ++i) os << (i ? "," : "") << f.head[i];
  os << "]," << f.tail;
  return os.str();
}

DelaySpec f_prime(const DelaySpec& f) {
  std::vector<std::uint64_t> head;
  head.push_back(f.at(0) + f.at(1));
  for (std::size_t i = 2; i < f.head.size(); ++i) head.push_back(f.head[i]);
  return DelaySpec(std::move(head), f.tail);
}

std::vector<BigInt> f_double_prime(const DelaySpec& f, std::size_t k, std::size_t max_bits) {
  if (k == 0) throw InvalidArgument("f'' needs k >= 1");
  const BigInt head_size = f.head.size();
  // prefix[j] = f(0) + ... + f(j-1) over the head
  std::vector<BigInt> prefix{0};
  for (auto v : f.head) prefix.push_back(prefix.back() + v);

  std::vector<BigInt> out{BigInt(f.at(0))};
  BigInt running = out.front();
  while (out.size() < k) {
    BigInt terms = 2 * running + 1;  // j = 0 .. 2 * running
    BigInt value;
    if (terms <= head_size) {
      value = prefix[static_cast<std::size_t>(terms)];
    } else {
      value = prefix.back() + BigInt(f.tail) * (terms - head_size);
    }
    if (value > 0 && boost::multiprecision::msb(value) + 1 > max_bits)
      throw BudgetExceeded(boost::multiprecision::msb(value) + 1, max_bits);
    running += value;
    out.push_back(std::move(value));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Arena

namespace {

std::string encode(const DelayVertex& v) {
  std::string key;
  key.reserve(21 + 4 * v.buffer.size());
  auto put = [&](std::uint64_t x, int bytes) {
    for (int i = 0; i < bytes; ++i) key.push_back(static_cast<char>((x >> (8 * i)) & 0xff));
  };
  put(static_cast<std::uint8_t>(v.kind), 1);
  put(v.q, 4);
  put(v.phase, 8);
  put(v.remaining, 8);
  for (Letter a : v.buffer) put(a, 4);
  return key;
}

std::size_t saturate(const BigInt& x) {
  if (x > BigInt(std::numeric_limits<std::size_t>::max()))
    return std::numeric_limits<std::size_t>::max();
  return static_cast<std::size_t>(x);
}

}  // namespace

std::optional<Vertex> DelayArena::find(const DelayVertex& v) const {
  auto it = index.find(encode(v));
  if (it == index.end()) return std::nullopt;
  return it->second;
}

std::string DelayArena::describe(Vertex v, const ParityAutomaton& a) const {
  const auto& x = vertices.at(v);
  std::ostringstream os;
  const bool input = x.kind == DelayVertex::Kind::Input;
  os << (input ? "I" : "O") << " q=" << x.q << " buf="
     << (x.buffer.empty() ? std::string("-") : a.inputs().format(x.buffer)) << " round=" << x.phase;
  if (input) os << " rem=" << x.remaining;
  return os.str();
}

BigInt delay_arena_size_bound(const ParityAutomaton& a, const DelaySpec& f) {
  if (!f.bounded()) throw InvalidArgument("delay function has an unbounded tail");
  const BigInt s = a.inputs().size();
  auto power = [&](std::uint64_t e) { return boost::multiprecision::pow(s, static_cast<unsigned>(e)); };
  BigInt total = 0;
  std::uint64_t len = 0;
  for (auto fp : f.head) {
    for (std::uint64_t j = 0; j < fp; ++j) total += power(len + j);
    total += power(len + fp);
    len += fp - 1;
  }
  total += power(len) + power(len + 1);
  return total * a.state_count();
}

DelayArena build_delay_arena(const ParityAutomaton& a, const DelaySpec& f, std::size_t budget) {
  if (!f.bounded())
    throw InvalidArgument("delay function " + to_string(f) +
                          " has an unbounded tail; only tail 1 has a finite arena");
  const std::size_t k = f.head.size();
  const BigInt bound = delay_arena_size_bound(a, f);

  DelayArena out;
  out.spec = f;
  ArenaBuilder builder;
  std::vector<std::vector<Vertex>> succ;
  std::deque<Vertex> todo;

  auto color_of = [&](const DelayVertex& v) -> Color {
    if (v.kind == DelayVertex::Kind::Input && v.phase > 0 && v.remaining == f.at(v.phase))
      return a.color(v.q);
    return 0;
  };
  auto intern = [&](DelayVertex v) -> Vertex {
    std::string key = encode(v);
    if (auto it = out.index.find(key); it != out.index.end()) return it->second;
    if (out.vertices.size() >= budget) throw BudgetExceeded(saturate(bound), budget);
    Player owner = v.kind == DelayVertex::Kind::Input ? Player::I : Player::O;
    Vertex id = builder.add_vertex(owner, color_of(v));
    out.index.emplace(std::move(key), id);
    out.vertices.push_back(std::move(v));
    todo.push_back(id);
    return id;
  };

  out.initial = intern(DelayVertex{DelayVertex::Kind::Input, a.initial(), {}, 0, f.at(0)});
  while (!todo.empty()) {
    Vertex v = todo.front();
    todo.pop_front();
    std::vector<Vertex> targets;
    if (out.vertices[v].kind == DelayVertex::Kind::Input) {
      for (Letter x = 0; x < a.inputs().size(); ++x) {
        DelayVertex w = out.vertices[v];
        w.buffer.push_back(x);
        if (--w.remaining == 0) w.kind = DelayVertex::Kind::Output;
        targets.push_back(intern(std::move(w)));
      }
    } else {
      for (Letter y = 0; y < a.outputs().size(); ++y) {
        const DelayVertex& cur = out.vertices[v];
        DelayVertex w;
        w.kind = DelayVertex::Kind::Input;
        w.q = a.next(cur.q, cur.buffer.front(), y);
        w.buffer.assign(cur.buffer.begin() + 1, cur.buffer.end());
        w.phase = std::min(cur.phase + 1, k);
        w.remaining = f.at(w.phase);
        targets.push_back(intern(std::move(w)));
      }
    }
    if (succ.size() <= v) succ.resize(v + 1);
    succ[v] = std::move(targets);
  }
  for (Vertex v = 0; v < succ.size(); ++v)
    for (Vertex w : succ[v]) builder.add_edge(v, w);
  out.arena = std::move(builder).build();
  return out;
}

FixedDelayResult solve_fixed_delay(const ParityAutomaton& a, std::size_t d, std::size_t budget) {
  FixedDelayResult r;
  r.delay = d;
  r.game = build_delay_arena(a, DelaySpec::constant(d), budget);
  r.solution = solve(r.game.arena);
  r.winner = r.solution.winner[r.game.initial];
  return r;
}

namespace {

Letter edge_letter(const ParityGameArena& g, Vertex from, Vertex to) {
  auto succ = g.successors(from);
  return static_cast<Letter>(std::find(succ.begin(), succ.end(), to) - succ.begin());
}

}  // namespace

StrategyMachine oracle_machine(const ParityAutomaton& a, const FixedDelayResult& r) {
  const auto& g = r.game.arena;
  std::unordered_map<Vertex, State> id{{r.game.initial, 0}};
  std::vector<Vertex> order{r.game.initial};
  std::vector<MachineStep> delta;
  for (std::size_t i = 0; i < order.size(); ++i) {
    Vertex v = order[i];
    for (Letter x = 0; x < a.inputs().size(); ++x) {
      Vertex w = g.successors(v)[x];
      Letter emit = kWait;
      if (g.owner(w) == Player::O) {
        Vertex choice = r.solution.strategy[w];
        if (choice == kNoVertex) choice = g.successors(w).front();
        emit = edge_letter(g, w, choice);
        w = choice;
      }
      auto [it, fresh] = id.emplace(w, static_cast<State>(order.size()));
      if (fresh) order.push_back(w);
      delta.push_back({it->second, emit});
    }
  }
  return StrategyMachine(r.delay, a.inputs(), a.outputs(), order.size(), 0, std::move(delta));
}

std::string strategy_dump(const ParityAutomaton& a, const FixedDelayResult& r) {
  if (r.winner == Player::O) return to_text(oracle_machine(a, r));
  const auto& g = r.game.arena;
  std::ostringstream os;
  os << "input-strategy\ndelay: " << r.delay << "\n# q buffer round remaining -> input\n";
  std::vector<char> seen(g.size(), 0);
  std::vector<Vertex> todo{r.game.initial};
  seen[r.game.initial] = 1;
  std::vector<Vertex> listed;
  while (!todo.empty()) {
    Vertex v = todo.back();
    todo.pop_back();
    std::vector<Vertex> next;
    if (g.owner(v) == Player::I) {
      listed.push_back(v);
      next.push_back(r.solution.strategy[v]);
    } else {
      next.assign(g.successors(v).begin(), g.successors(v).end());
    }
    for (Vertex w : next) {
      if (w != kNoVertex && !seen[w]) {
        seen[w] = 1;
        todo.push_back(w);
      }
    }
  }
  std::sort(listed.begin(), listed.end());
  for (Vertex v : listed) {
    const auto& x = r.game.vertices[v];
    os << x.q << ' ' << (x.buffer.empty() ? std::string("-") : a.inputs().format(x.buffer))
       << ' ' << x.phase << ' ' << x.remaining << " -> "
       << a.inputs().symbol(edge_letter(g, v, r.solution.strategy[v])) << '\n';
  }
  os << "end\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// Plays

LassoInput::LassoInput(Word prefix, Word cycle) : prefix_(std::move(prefix)), cycle_(std::move(cycle)) {
  if (cycle_.empty()) throw InvalidArgument("lasso cycle must be nonempty");
}

Letter LassoInput::next(const PlayObservation&) {
  Letter x = pos_ < prefix_.size() ? prefix_[pos_] : cycle_[pos_ - prefix_.size()];
  ++pos_;
  if (pos_ == prefix_.size() + cycle_.size()) pos_ = prefix_.size();
  return x;
}

Letter ArenaInputStrategy::next(const PlayObservation& obs) {
  const auto& game = r_.game;
  DelayVertex v{DelayVertex::Kind::Input, obs.q, obs.buffer,
                std::min(obs.round, game.spec.head.size()), obs.remaining};
  auto id = game.find(v);
  if (!id) throw InvalidArgument("observation is not a vertex of the oracle arena");
  Vertex choice = r_.solution.strategy[*id];
  if (choice == kNoVertex) return 0;
  return edge_letter(game.arena, *id, choice);
}

Letter RandomInput::next(const PlayObservation&) {
  return static_cast<Letter>(std::uniform_int_distribution<std::size_t>(0, size_ - 1)(rng_));
}

PlayTrace simulate_play(const ParityAutomaton& a, const DelaySpec& f, InputStrategy& in,
                        const StrategyMachine& out, std::size_t max_rounds) {
  if (out.inputs() != a.inputs() || out.outputs() != a.outputs())
    throw InvalidArgument("strategy machine alphabets differ from the automaton's");
  PlayTrace trace;
  in.reset();
  State q = a.initial();
  State s = out.initial();
  Word buffer;
  using Config = std::tuple<State, Word, std::size_t, State, std::uint64_t>;
  std::map<Config, std::size_t> seen;
  const std::size_t k = f.head.size();

  for (std::size_t round = 0; round < max_rounds; ++round) {
    const std::size_t phase = std::min(round, k);
    if (auto mem = in.memory()) {
      auto [it, fresh] = seen.emplace(Config{q, buffer, phase, s, *mem}, round);
      if (!fresh) {
        trace.loop_start = it->second;
        std::span<const Color> colors(trace.colors);
        trace.verdict = lasso_winner(colors.first(trace.loop_start),
                                     colors.subspan(trace.loop_start));
        return trace;
      }
    }
    const std::uint64_t count = f.at(round);
    Letter y = kWait;
    for (std::uint64_t j = 0; j < count; ++j) {
      Letter x = in.next(PlayObservation{q, buffer, round, count - j});
      if (!a.inputs().contains(x)) throw InvalidArgument("input strategy chose an unknown letter");
      buffer.push_back(x);
      trace.events.push_back({PlayEvent::Kind::Input, x, q, 0});
      const auto& step = out.step(s, x);
      s = step.target;
      if (j + 1 < count && step.emit != kWait)
        throw InvalidArgument("strategy machine emitted before the end of round " +
                              std::to_string(round));
      y = step.emit;
    }
    if (y == kWait)
      throw InvalidArgument("strategy machine did not emit at the end of round " +
                            std::to_string(round));
    const Letter x = buffer.front();
    buffer.erase(buffer.begin());
    q = a.next(q, x, y);
    trace.word.push_back({x, y});
    trace.colors.push_back(a.color(q));
    trace.events.push_back({PlayEvent::Kind::Output, y, q, a.color(q)});
    trace.rounds = round + 1;
  }
  return trace;
}

std::string format_trace(const ParityAutomaton& a, const PlayTrace& t) {
  std::ostringstream os;
  std::size_t round = 0;
  for (const auto& e : t.events) {
    if (e.kind == PlayEvent::Kind::Input) {
      os << "I " << a.inputs().symbol(e.letter) << '\n';
    } else {
      os << "O " << a.outputs().symbol(e.letter) << "  q=" << e.q << " color=" << e.color;
      if (t.verdict && round == t.loop_start) os << "  <- loop";
      os << '\n';
      ++round;
    }
  }
  if (t.verdict)
    os << "verdict: " << to_char(*t.verdict) << " (cycle of " << t.rounds - t.loop_start
       << " rounds from round " << t.loop_start << ")\n";
  else
    os << "no verdict after " << t.rounds << " rounds\n";
  return os.str();
}

PlaySession::PlaySession(const ParityAutomaton& a, StrategyMachine m)
    : a_(a), m_(std::move(m)), s_(m_.initial()), q_(a.initial()) {
  if (m_.inputs() != a.inputs() || m_.outputs() != a.outputs())
    throw InvalidArgument("strategy machine alphabets differ from the automaton's");
  check_emission_contract(m_);
  configs_.push_back({s_, q_, {}, 0});
}

PlaySession::Step PlaySession::feed(Letter in) {
  if (!a_.inputs().contains(in)) throw InvalidArgument("unknown input letter");
  buffer_.push_back(in);
  const auto& step = m_.step(s_, in);
  s_ = step.target;
  Step out;
  if (step.emit != kWait) {
    const Letter x = buffer_.front();
    buffer_.erase(buffer_.begin());
    q_ = a_.next(q_, x, step.emit);
    out.output = step.emit;
    out.color = a_.color(q_);
    outputs_.push_back(step.emit);
    colors_.push_back(*out.color);
  }
  step_colors_.push_back(out.color);
  configs_.push_back({s_, q_, buffer_, std::min(steps() + 1, m_.delay() + 1)});
  return out;
}

Player PlaySession::declare_loop(std::size_t k) const {
  const std::size_t t = steps();
  if (k == 0 || k > t)
    throw InvalidArgument("loop length must be between 1 and " + std::to_string(t));
  if (!(configs_[t] == configs_[t - k]))
    throw InvalidArgument("the configuration " + std::to_string(k) +
                          " steps ago differs from the current one");
  std::vector<Color> cycle;
  for (std::size_t i = t - k; i < t; ++i)
    if (step_colors_[i]) cycle.push_back(*step_colors_[i]);
  if (cycle.empty()) throw InvalidArgument("the declared loop contains no output");
  return lasso_winner({}, cycle);
}

}  // namespace lookahead

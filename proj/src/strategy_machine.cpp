#include "lookahead/strategy_machine.hpp"

#include <charconv>
#include <set>
#include <sstream>

#include "lookahead/errors.hpp"

namespace lookahead {

StrategyMachine::StrategyMachine(std::size_t delay, Alphabet inputs, Alphabet outputs,
                                 std::size_t state_count, State initial,
                                 std::vector<MachineStep> transitions)
    : delay_(delay),
      inputs_(std::move(inputs)),
      outputs_(std::move(outputs)),
      state_count_(state_count),
      initial_(initial),
      transitions_(std::move(transitions)) {
  if (state_count_ == 0) throw InvalidArgument("strategy machine needs at least one state");
  if (initial_ >= state_count_) throw InvalidArgument("strategy initial state out of range");
  if (transitions_.size() != state_count_ * inputs_.size())
    throw InvalidArgument("strategy transition table is not total");
  for (const auto& t : transitions_) {
    if (t.target >= state_count_) throw InvalidArgument("strategy target out of range");
    if (t.emit != kWait && !outputs_.contains(t.emit))
      throw InvalidArgument("strategy emits an unknown output letter");
  }
}

std::vector<Letter> StrategyMachine::run(std::span<const Letter> input) const {
  std::vector<Letter> out;
  State s = initial_;
  for (Letter a : input) {
    if (!inputs_.contains(a)) throw InvalidArgument("unknown input letter");
    const auto& t = step(s, a);
    out.push_back(t.emit);
    s = t.target;
  }
  return out;
}

Word StrategyMachine::outputs_on(std::span<const Letter> input) const {
  Word out;
  for (Letter b : run(input))
    if (b != kWait) out.push_back(b);
  return out;
}

void check_emission_contract(const StrategyMachine& m) {
  const std::size_t d = m.delay();
  // (state, inputs read so far capped at d)
  std::set<std::pair<State, std::size_t>> seen{{m.initial(), 0}};
  std::vector<std::pair<State, std::size_t>> todo{{m.initial(), 0}};
  while (!todo.empty()) {
    auto [s, t] = todo.back();
    todo.pop_back();
    for (Letter a = 0; a < m.inputs().size(); ++a) {
      const auto& step = m.step(s, a);
      const bool waits = step.emit == kWait;
      if (t < d && !waits)
        throw InvalidArgument("machine emits at input " + std::to_string(t + 1) +
                              " (state " + std::to_string(s) + ") before the delay of " +
                              std::to_string(d) + " has elapsed");
      if (t >= d && waits)
        throw InvalidArgument("machine waits at input " + std::to_string(t + 1) + " (state " +
                              std::to_string(s) + ") after the delay of " + std::to_string(d));
      std::pair<State, std::size_t> next{step.target, std::min(t + 1, d)};
      if (seen.insert(next).second) todo.push_back(next);
    }
  }
}

namespace {

std::vector<std::string_view> tokens(std::string_view s) {
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

std::size_t number(std::string_view tok, std::size_t line) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw ParseError(line, "expected a nonnegative integer, got '" + std::string(tok) + "'");
  return v;
}

}  // namespace

StrategyMachine parse_strategy(std::string_view text) {
  std::vector<std::pair<std::size_t, std::vector<std::string_view>>> lines;
  std::size_t number_of_line = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    std::string_view raw = text.substr(pos, end == std::string_view::npos ? std::string_view::npos
                                                                          : end - pos);
    ++number_of_line;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    auto toks = tokens(raw);
    if (!toks.empty()) lines.emplace_back(number_of_line, std::move(toks));
    if (end == std::string_view::npos) break;
    pos = end + 1;
  }
  std::size_t i = 0;
  auto need = [&](std::string_view what) -> const std::pair<std::size_t, std::vector<std::string_view>>& {
    if (i >= lines.size())
      throw ParseError(number_of_line, "unexpected end of input, expected " + std::string(what));
    return lines[i++];
  };
  auto key = [&](std::string_view k) {
    const auto& [ln, toks] = need(k);
    if (toks.front() != k) throw ParseError(ln, "expected '" + std::string(k) + "'");
    return std::make_pair(ln, std::vector<std::string_view>(toks.begin() + 1, toks.end()));
  };
  auto single = [&](std::string_view k) {
    auto [ln, vals] = key(k);
    if (vals.size() != 1) throw ParseError(ln, std::string(k) + " takes one value");
    return number(vals[0], ln);
  };
  auto alphabet = [&](std::string_view k) {
    auto [ln, vals] = key(k);
    try {
      return Alphabet(std::vector<std::string>(vals.begin(), vals.end()));
    } catch (const InvalidArgument& e) {
      throw ParseError(ln, e.what());
    }
  };

  {
    const auto& [ln, toks] = need("strategy");
    if (toks.size() != 1 || toks[0] != "strategy") throw ParseError(ln, "expected header 'strategy'");
  }
  std::size_t delay = single("delay:");
  Alphabet in = alphabet("in:");
  Alphabet out = alphabet("out:");
  std::size_t k = single("states:");
  if (k == 0) throw ParseError(lines[i - 1].first, "states must be positive");
  std::size_t init = single("init:");
  if (init >= k) throw ParseError(lines[i - 1].first, "init out of range");

  constexpr State unset = UINT32_MAX;
  std::vector<MachineStep> delta(k * in.size(), MachineStep{unset, kWait});
  for (;;) {
    const auto& [ln, toks] = need("transition or 'end'");
    if (toks.size() == 1 && toks[0] == "end") break;
    if (toks.size() != 6 || toks[2] != "->" || toks[4] != "/")
      throw ParseError(ln, "expected '<src> <in> -> <dst> / <out or ->'");
    std::size_t src = number(toks[0], ln);
    std::size_t dst = number(toks[3], ln);
    if (src >= k || dst >= k) throw ParseError(ln, "state out of range");
    auto a = in.find(toks[1]);
    if (!a) throw ParseError(ln, "unknown input symbol '" + std::string(toks[1]) + "'");
    Letter emit = kWait;
    if (toks[5] != "-") {
      auto b = out.find(toks[5]);
      if (!b) throw ParseError(ln, "unknown output symbol '" + std::string(toks[5]) + "'");
      emit = *b;
    }
    auto& slot = delta[src * in.size() + *a];
    if (slot.target != unset) throw ParseError(ln, "duplicate transition");
    slot = {static_cast<State>(dst), emit};
  }
  if (i != lines.size()) throw ParseError(lines[i].first, "content after 'end'");
  for (std::size_t s = 0; s < k; ++s)
    for (Letter a = 0; a < in.size(); ++a)
      if (delta[s * in.size() + a].target == unset)
        throw ParseError(number_of_line, "missing transition (" + std::to_string(s) + ", " +
                                             in.symbol(a) + ")");
  return StrategyMachine(delay, std::move(in), std::move(out), k, static_cast<State>(init),
                         std::move(delta));
}

std::string to_text(const StrategyMachine& m) {
  std::ostringstream os;
  os << "strategy\ndelay: " << m.delay() << "\nin:";
  for (const auto& s : m.inputs().symbols()) os << ' ' << s;
  os << "\nout:";
  for (const auto& s : m.outputs().symbols()) os << ' ' << s;
  os << "\nstates: " << m.state_count() << "\ninit: " << m.initial() << '\n';
  for (State s = 0; s < m.state_count(); ++s) {
    for (Letter a = 0; a < m.inputs().size(); ++a) {
      const auto& t = m.step(s, a);
      os << s << ' ' << m.inputs().symbol(a) << " -> " << t.target << " / "
         << (t.emit == kWait ? std::string("-") : m.outputs().symbol(t.emit)) << '\n';
    }
  }
  os << "end\n";
  return os.str();
}

}  // namespace lookahead

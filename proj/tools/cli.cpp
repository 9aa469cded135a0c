#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "lookahead/automata.hpp"
#include "lookahead/delaygame.hpp"
#include "lookahead/errors.hpp"
#include "lookahead/generate.hpp"
#include "lookahead/monoid.hpp"
#include "lookahead/sggame.hpp"
#include "lookahead/strategy_machine.hpp"
#include "lookahead/xcheck.hpp"

namespace lookahead::cli {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f || !(f << text)) throw Error("cannot write " + path);
}

ParityAutomaton load_dpa(const std::string& path) {
  try {
    return parse_dpa(read_file(path));
  } catch (const ParseError& e) {
    throw Error(path + ": " + e.what());
  }
}

int exit_for(Player p) { return p == Player::O ? kOWins : kIWins; }

int cmd_solve(const std::string& file, std::size_t max_profiles, std::ostream& out) {
  ParityAutomaton a = load_dpa(file);
  FiniteDelayVerdict v = decide_finite_delay(a, max_profiles);
  out << "WINNER=" << to_char(v.winner) << '\n'
      << "NPRIME=" << v.n_prime << '\n'
      << "DPRIME=" << v.d_prime << '\n'
      << "BOUND=" << (v.bound ? std::to_string(*v.bound) : std::string("-")) << '\n'
      << "MONOID=" << v.monoid_size << '\n'
      << "ARENA=" << v.arena_size << '\n'
      << "WORST_CASE=2*2^" << v.worst_case_exponent << "-1\n";
  if (v.winner == Player::O)
    out << "O wins with finite delay (constant delay " << *v.bound
        << " suffices); a continuous winning strategy for O exists.\n";
  else
    out << "I wins for every delay; no continuous winning strategy for O exists.\n";
  return exit_for(v.winner);
}

int cmd_oracle(const std::string& file, std::size_t d, const std::string& dump,
               std::size_t budget, std::ostream& out) {
  ParityAutomaton a = load_dpa(file);
  FixedDelayResult r = solve_fixed_delay(a, d, budget);
  out << "WINNER=" << to_char(r.winner) << '\n'
      << "DELAY=" << d << '\n'
      << "ARENA=" << r.game.arena.size() << '\n';
  if (!dump.empty()) write_file(dump, strategy_dump(a, r));
  return exit_for(r.winner);
}

int cmd_synthesize(const std::string& file, const std::string& output, std::ostream& out) {
  ParityAutomaton a = load_dpa(file);
  Synthesis s = synthesize_constant_delay_strategy(a);
  if (!s.machine) {
    out << "I wins: no finite delay suffices\n";
    return kIWins;
  }
  std::string text = to_text(*s.machine);
  if (output.empty()) {
    out << text;
  } else {
    write_file(output, text);
    out << "DELAY=" << s.machine->delay() << '\n' << "STATES=" << s.machine->state_count() << '\n';
  }
  return kOWins;
}

int cmd_verify(const std::string& file, const std::string& strategy, std::size_t d,
               std::size_t budget, std::ostream& out) {
  ParityAutomaton a = load_dpa(file);
  StrategyMachine m = [&] {
    try {
      return parse_strategy(read_file(strategy));
    } catch (const ParseError& e) {
      throw Error(strategy + ": " + e.what());
    }
  }();
  bool ok = verify_synthesized(a, m, d, budget);
  out << (ok ? "PASS" : "FAIL") << '\n';
  return ok ? kOWins : kIWins;
}

int cmd_profile(const std::string& file, bool arena, std::ostream& out) {
  ParityAutomaton a = load_dpa(file);
  ProfileAutomaton p = build_profile_automaton(a);
  out << "monoid: " << enumerate_monoid(a).size() << '\n'
      << "profiles: " << p.state_count() - 1 << '\n'
      << "nprime: " << p.n_prime() << '\n'
      << "dprime: " << p.d_prime() << '\n';
  for (State s = 0; s < p.state_count(); ++s) {
    out << "state " << s << ": " << (s == ProfileAutomaton::kInit ? std::string("init")
                                                                  : std::to_string(p.profile(s).size()) + " matrices")
        << ", " << (p.language_finite(s) ? "finite" : "infinite") << ", next";
    for (Letter x = 0; x < p.alphabet().size(); ++x)
      out << ' ' << p.alphabet().symbol(x) << "->" << p.next(s, x);
    out << '\n';
  }
  if (arena) {
    SemigroupGame g = build_semigroup_game(a);
    std::istringstream lines(dump_arena(g.arena));
    std::string line;
    for (Vertex v = 0; std::getline(lines, line); ++v) out << line << "  # " << g.describe(v) << '\n';
  }
  return kOWins;
}

int cmd_gen(std::size_t states, std::size_t colors, std::uint64_t seed, std::ostream& out) {
  out << to_text(random_dpa(seed, states, colors));
  return kOWins;
}

int cmd_xcheck(const XcheckOptions& o, std::ostream& out) {
  XcheckReport r = run_xcheck(o);
  out << format_report(r);
  return r.failure_count() == 0 ? kOWins : kXcheckFailed;
}

void show(const ParityAutomaton& a, const PlaySession& s, std::ostream& out) {
  out << "  buffer: " << (s.buffer().empty() ? std::string("-") : a.inputs().format(s.buffer()))
      << "  outputs: " << (s.outputs().empty() ? std::string("-") : a.outputs().format(s.outputs()))
      << "  q=" << s.state() << "  colors:";
  if (s.color_history().empty()) out << " -";
  for (Color c : s.color_history()) out << ' ' << c;
  out << '\n';
}

int cmd_play(const std::string& file, std::size_t d, const std::string& strategy,
             std::size_t budget, std::istream& in, std::ostream& out) {
  ParityAutomaton a = load_dpa(file);
  std::optional<StrategyMachine> m;
  if (!strategy.empty()) {
    m = parse_strategy(read_file(strategy));
    if (m->delay() != d)
      throw Error("strategy has delay " + std::to_string(m->delay()) + ", not " + std::to_string(d));
  } else {
    FixedDelayResult r = solve_fixed_delay(a, d, budget);
    out << "O plays the oracle strategy (O " << (r.winner == Player::O ? "wins" : "loses")
        << " with delay " << d << ")\n";
    m = oracle_machine(a, r);
  }
  PlaySession session(a, std::move(*m));
  out << "You are Player I. Input symbols:";
  for (const auto& sym : a.inputs().symbols()) out << ' ' << sym;
  out << ". ':loop k' closes a cycle, ':quit' stops.\n";
  std::string line;
  while (out << "> " << std::flush, std::getline(in, line)) {
    std::istringstream words(line);
    std::string first;
    if (!(words >> first)) continue;
    if (first == ":quit") return kOWins;
    if (first == ":loop") {
      std::size_t k = 0;
      if (!(words >> k)) {
        out << "usage: :loop k\n";
        continue;
      }
      try {
        Player p = session.declare_loop(k);
        out << "verdict: " << to_char(p) << '\n';
        return exit_for(p);
      } catch (const InvalidArgument& e) {
        out << "invalid loop: " << e.what() << '\n';
      }
      continue;
    }
    Word letters;
    try {
      letters = parse_word(a.inputs(), line);
    } catch (const Error& e) {
      out << e.what() << "; try again\n";
      continue;
    }
    for (Letter x : letters) {
      auto step = session.feed(x);
      out << "I: " << a.inputs().symbol(x);
      if (step.output)
        out << "  O: " << a.outputs().symbol(*step.output) << " (color " << *step.color << ")";
      else
        out << "  O: waits";
      out << '\n';
    }
    show(a, session, out);
  }
  return kOWins;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Games with lookahead: decide, solve and synthesize delay strategies"};
  app.require_subcommand(1);

  std::string file, dump, output, strategy;
  std::size_t delay = 0, budget = kDefaultArenaBudget, max_profiles = kUnlimited;
  bool arena = false;

  auto* solve = app.add_subcommand("solve", "decide whether O wins with some finite delay");
  solve->add_option("dpa", file, "automaton file")->required();
  solve->add_option("--max-profiles", max_profiles, "profile automaton size limit");

  auto* oracle = app.add_subcommand("oracle", "solve the game with a fixed constant delay");
  oracle->add_option("dpa", file, "automaton file")->required();
  oracle->add_option("--delay,-d", delay, "constant delay")->required();
  oracle->add_option("--dump-strategy", dump, "write the winner's strategy here");
  oracle->add_option("--budget", budget, "arena vertex limit");

  auto* synth = app.add_subcommand("synthesize", "build a constant-delay strategy machine");
  synth->add_option("dpa", file, "automaton file")->required();
  synth->add_option("-o,--output", output, "machine output file (stdout if absent)");

  auto* verify = app.add_subcommand("verify", "check a strategy machine at a given delay");
  verify->add_option("dpa", file, "automaton file")->required();
  verify->add_option("--strategy,-s", strategy, "machine file")->required();
  verify->add_option("--delay,-d", delay, "constant delay")->required();
  verify->add_option("--budget", budget, "product vertex limit");

  auto* play = app.add_subcommand("play", "play as Player I in the terminal");
  play->add_option("dpa", file, "automaton file")->required();
  play->add_option("--delay,-d", delay, "constant delay")->required();
  play->add_option("--strategy,-s", strategy, "machine for O (default: oracle strategy)");
  play->add_option("--budget", budget, "arena vertex limit");

  std::size_t states = 2, colors = 2;
  std::uint64_t seed = 1;
  auto* gen = app.add_subcommand("gen", "print a random automaton");
  gen->add_option("--states,-n", states, "state count")->check(CLI::PositiveNumber);
  gen->add_option("--colors,-m", colors, "colors 0..m-1")->check(CLI::PositiveNumber);
  gen->add_option("--seed", seed, "random seed");

  XcheckOptions xo;
  bool no_synthesis = false;
  auto* xcheck = app.add_subcommand("xcheck", "cross-check the decision against the oracle");
  xcheck->add_option("--seed", xo.seed, "random seed");
  xcheck->add_option("--count", xo.count, "automata to evaluate");
  xcheck->add_option("--max-states", xo.max_states, "largest state count")->check(CLI::PositiveNumber);
  xcheck->add_option("--max-colors", xo.max_colors, "largest color count")->check(CLI::PositiveNumber);
  xcheck->add_option("--max-delay", xo.max_delay, "monotonicity range");
  xcheck->add_option("--nprime-cap", xo.nprime_cap, "skip automata with larger n'")
      ->check(CLI::PositiveNumber);
  xcheck->add_flag("--no-synthesis", no_synthesis, "skip the synthesis check");
  xcheck->add_flag("--fault-product", xo.fault_product, "corrupt the matrix product");

  auto* profile = app.add_subcommand("profile", "report the monoid and profile automaton");
  profile->add_option("dpa", file, "automaton file")->required();
  profile->add_flag("--arena", arena, "also dump the semigroup game arena");

  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : kError;
  }

  try {
    if (*solve) return cmd_solve(file, max_profiles, out);
    if (*oracle) return cmd_oracle(file, delay, dump, budget, out);
    if (*synth) return cmd_synthesize(file, output, out);
    if (*verify) return cmd_verify(file, strategy, delay, budget, out);
    if (*play) return cmd_play(file, delay, strategy, budget, in, out);
    if (*gen) return cmd_gen(states, colors, seed, out);
    if (*xcheck) {
      xo.synthesize = !no_synthesis;
      return cmd_xcheck(xo, out);
    }
    if (*profile) return cmd_profile(file, arena, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kError;
  }
  return kError;
}

}  // namespace lookahead::cli

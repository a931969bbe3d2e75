// nsr: command-line front end for the stateful-calculus workbench.
// Subcommands: reduce, trace, typecheck, check, extract, claims,
// list-realizers, show.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "nsr/checker.hpp"
#include "nsr/claims.hpp"
#include "nsr/realizers.hpp"
#include "nsr/typing.hpp"

namespace {

std::uint64_t env_fuel() {
  const char* env = std::getenv("NSR_FUEL");
  if (env && *env) return std::strtoull(env, nullptr, 10);
  return nsr::kDefaultFuel;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

nsr::CheckConfig make_config(std::uint64_t fuel, const std::string& range,
                             const std::string& individuals,
                             const std::string& generators) {
  nsr::CheckConfig cfg = nsr::CheckConfig::defaults();
  cfg.fuel = fuel;
  if (!range.empty()) {
    auto dots = range.find("..");
    if (dots == std::string::npos) throw std::runtime_error("bad --range " + range);
    cfg.range_lo = std::stoull(range.substr(0, dots));
    cfg.range_hi = std::stoull(range.substr(dots + 2));
  }
  if (!individuals.empty()) {
    cfg.individuals.clear();
    std::stringstream ss(individuals);
    std::string part;
    while (std::getline(ss, part, ','))
      if (!part.empty()) cfg.individuals.push_back(nsr::Individual::parse(part));
  }
  if (!generators.empty()) {
    std::stringstream ss(generators);
    std::string part;
    while (std::getline(ss, part, ';'))
      if (!part.empty())
        cfg.generators.push_back(nsr::parse_term(part, nsr::library_resolver()));
  }
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"workbench for a lambda-calculus with a monotone memory cell"};
  app.require_subcommand(1);

  std::string term_src, strategy = "cbn", format = "text";
  std::uint64_t fuel = env_fuel();
  std::uint64_t state = 0;

  auto add_reduce_opts = [&](CLI::App* cmd) {
    cmd->add_option("term", term_src, "term source")->required();
    cmd->add_option("--strategy", strategy, "cbn|cbv")->check(CLI::IsMember({"cbn", "cbv"}));
    cmd->add_option("--state", state, "initial state");
    cmd->add_option("--fuel", fuel, "step budget");
  };

  CLI::App* reduce_cmd = app.add_subcommand("reduce", "reduce a term, print the result");
  add_reduce_opts(reduce_cmd);
  CLI::App* trace_cmd = app.add_subcommand("trace", "reduce a term, print every step");
  add_reduce_opts(trace_cmd);

  std::string file, mode = "pure";
  CLI::App* type_cmd = app.add_subcommand("typecheck", "check a derivation file");
  type_cmd->add_option("file", file, "derivation file")->required();
  type_cmd->add_option("--mode", mode, "stateful|pure")->check(CLI::IsMember({"stateful", "pure"}));

  std::string formula_src, range, individuals, generators;
  CLI::App* check_cmd = app.add_subcommand("check", "membership of (term; state) in a truth value");
  check_cmd->add_option("--formula", formula_src, "formula source")->required();
  check_cmd->add_option("--term", term_src, "term source")->required();
  check_cmd->add_option("--state", state, "state (ignored with --range)");
  check_cmd->add_option("--fuel", fuel, "step budget");
  check_cmd->add_option("--range", range, "check universally over a..b");
  check_cmd->add_option("--individuals", individuals, "comma-separated individual literals");
  check_cmd->add_option("--generators", generators, "semicolon-separated generator terms");
  std::vector<std::string> vals;
  check_cmd->add_option("--val", vals, "x=<individual literal> (repeatable)");
  std::vector<std::string> preds;
  check_cmd->add_option("--pred", preds, "X=<built-in family> (repeatable)");

  CLI::App* extract_cmd = app.add_subcommand("extract", "witness extraction against the pairing probe");
  extract_cmd->add_option("term", term_src, "term source")->required();
  extract_cmd->add_option("--state", state, "state");
  extract_cmd->add_option("--fuel", fuel, "step budget");

  std::string claims_action = "run", claims_path;
  CLI::App* claims_cmd = app.add_subcommand("claims", "run a claim corpus");
  claims_cmd->add_option("action", claims_action, "run")->check(CLI::IsMember({"run"}));
  claims_cmd->add_option("path", claims_path, "claims file or directory")->required();
  claims_cmd->add_option("--fuel", fuel, "default step budget");
  claims_cmd->add_option("--format", format, "text|json-lines")
      ->check(CLI::IsMember({"text", "json-lines"}));

  CLI::App* list_cmd = app.add_subcommand("list-realizers", "list the named realizers");
  std::string show_name;
  CLI::App* show_cmd = app.add_subcommand("show", "print a named realizer");
  show_cmd->add_option("name", show_name, "realizer name")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return 0;  // --help
    std::cerr << e.what() << "\n";
    return 64;
  }

  try {
    if (*reduce_cmd || *trace_cmd) {
      nsr::Term t = nsr::parse_term(term_src, nsr::library_resolver());
      nsr::Config c{t, state};
      nsr::Trace tr = strategy == "cbv" ? nsr::reduce_cbv(c, fuel) : nsr::reduce(c, fuel);
      if (*trace_cmd) {
        std::cout << tr.to_text();
      } else {
        std::string text = tr.to_text();
        auto pos = text.rfind("RESULT ");
        std::cout << text.substr(pos);
      }
      return tr.outcome == nsr::Outcome::Stuck ? 1 : 0;
    }

    if (*type_cmd) {
      nsr::DerivationPtr d = nsr::parse_derivation(read_file(file));
      nsr::TypingMode m =
          mode == "stateful" ? nsr::TypingMode::Stateful : nsr::TypingMode::EffectFree;
      nsr::TypingReport rep = nsr::check_derivation(*d, m);
      if (rep.ok) {
        std::cout << "accepted\n";
        return 0;
      }
      for (const auto& diag : rep.diagnostics) std::cout << "rejected: " << diag << "\n";
      return 1;
    }

    if (*check_cmd) {
      nsr::CheckConfig cfg = make_config(fuel, range, individuals, generators);
      nsr::Formula f = nsr::parse_formula(formula_src);
      nsr::Term t = nsr::parse_term(term_src, nsr::library_resolver());
      nsr::Valuation rho;
      for (const auto& v : vals) {
        auto eq = v.find('=');
        if (eq == std::string::npos) throw std::runtime_error("bad --val " + v);
        rho.fo.emplace(v.substr(0, eq), nsr::Individual::parse(v.substr(eq + 1)));
      }
      for (const auto& p : preds) {
        auto eq = p.find('=');
        if (eq == std::string::npos) throw std::runtime_error("bad --pred " + p);
        rho.so.emplace(p.substr(0, eq), nsr::builtin_family(p.substr(eq + 1)));
      }
      nsr::CheckResult r;
      if (!range.empty()) {
        auto rep = nsr::universal(f, rho, t, cfg);
        for (const auto& [s, pr] : rep.per_state)
          std::cout << "state " << s << ": " << nsr::to_string(pr.verdict)
                    << (pr.generator_bounded ? " [generator-bounded]" : "")
                    << (pr.note.empty() ? "" : " (" + pr.note + ")") << "\n";
        r = rep.aggregate;
      } else {
        r = nsr::member(f, rho, t, state, cfg);
      }
      std::cout << nsr::to_string(r.verdict)
                << (r.generator_bounded ? " [generator-bounded]" : "")
                << (r.note.empty() ? "" : " (" + r.note + ")") << "\n";
      switch (r.verdict) {
        case nsr::Tri::Yes: return 0;
        case nsr::Tri::No: return 1;
        case nsr::Tri::Unknown: return 2;
      }
    }

    if (*extract_cmd) {
      nsr::CheckConfig cfg = nsr::CheckConfig::defaults();
      cfg.fuel = fuel;
      nsr::Term t = nsr::parse_term(term_src, nsr::library_resolver());
      nsr::ExtractError err;
      auto got = nsr::extract_witness(t, state, cfg, &err);
      if (!got) {
        std::cout << "error " << nsr::to_string(err.kind)
                  << (err.detail.empty() ? "" : " " + err.detail) << "\n";
        return 1;
      }
      std::cout << "witness " << got->witness << " state " << got->end_state << " payload "
                << nsr::print_term(got->payload) << "\n";
      return 0;
    }

    if (*claims_cmd) {
      nsr::CheckConfig cfg = nsr::CheckConfig::defaults();
      cfg.fuel = fuel;
      nsr::ClaimReport rep = nsr::run_claims_path(claims_path, cfg);
      std::cout << (format == "json-lines" ? rep.to_json_lines() : rep.to_text());
      return rep.exit_code();
    }

    if (*list_cmd) {
      for (const auto& e : nsr::realizer_library())
        std::cout << e.name << "\t" << e.anchor << "\n";
      return 0;
    }

    if (*show_cmd) {
      const nsr::NamedRealizer* e = nsr::find_realizer_entry(show_name);
      if (!e) {
        std::cerr << "unknown realizer " << show_name << "\n";
        return 1;
      }
      std::cout << e->name << "\n  term:   " << nsr::print_term(e->term)
                << "\n  claim:  " << e->claim << "\n  anchor: " << e->anchor << "\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

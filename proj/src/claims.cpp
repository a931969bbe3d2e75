#include "nsr/claims.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "nsr/realizers.hpp"

namespace nsr {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

struct ClaimError : std::runtime_error {
  explicit ClaimError(const std::string& m) : std::runtime_error(m) {}
};

}  // namespace

std::optional<std::string> Claim::field(const std::string& key) const {
  for (const auto& f : fields)
    if (f.first == key) return f.second;
  return std::nullopt;
}

std::vector<std::string> Claim::all(const std::string& key) const {
  std::vector<std::string> out;
  for (const auto& f : fields)
    if (f.first == key) out.push_back(f.second);
  return out;
}

std::vector<Claim> parse_claims_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ClaimError("cannot open " + path);
  std::vector<Claim> out;
  std::string line;
  int lineno = 0;
  Claim cur;
  bool open = false;
  auto flush = [&] {
    if (open) {
      if (cur.kind.empty())
        throw ClaimError(path + ":" + std::to_string(cur.line) + ": claim " + cur.id +
                         " has no KIND");
      out.push_back(cur);
    }
    cur = Claim{};
    open = false;
  };
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    auto sp = t.find(' ');
    std::string key = sp == std::string::npos ? t : t.substr(0, sp);
    std::string val = sp == std::string::npos ? "" : trim(t.substr(sp + 1));
    if (key == "CLAIM") {
      flush();
      open = true;
      cur.id = val;
      cur.line = lineno;
      if (cur.id.empty())
        throw ClaimError(path + ":" + std::to_string(lineno) + ": CLAIM needs an id");
      continue;
    }
    if (!open)
      throw ClaimError(path + ":" + std::to_string(lineno) + ": field outside a claim");
    if (key == "ANCHOR") cur.anchor = val;
    else if (key == "KIND") cur.kind = val;
    else if (key == "DEVIATION") cur.deviations.push_back(val);
    else cur.fields.emplace_back(key, val);
  }
  flush();
  return out;
}

std::vector<Claim> load_claims(const std::string& path) {
  namespace fs = std::filesystem;
  std::vector<Claim> out;
  if (fs::is_directory(path)) {
    std::vector<std::string> files;
    for (const auto& e : fs::directory_iterator(path))
      if (e.path().extension() == ".claims") files.push_back(e.path().string());
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
      auto part = parse_claims_file(f);
      out.insert(out.end(), part.begin(), part.end());
    }
    return out;
  }
  return parse_claims_file(path);
}

const char* to_string(ClaimStatus s) {
  switch (s) {
    case ClaimStatus::Pass: return "PASS";
    case ClaimStatus::Fail: return "FAIL";
    case ClaimStatus::Unknown: return "UNKNOWN";
    case ClaimStatus::Note: return "NOTE";
  }
  return "?";
}

int ClaimReport::exit_code() const {
  if (failed > 0) return 1;
  if (unknown > 0) return 2;
  return 0;
}

std::string ClaimReport::to_text() const {
  std::string out;
  for (const auto& r : results) {
    out += to_string(r.status);
    out += ' ';
    out += r.id;
    if (!r.detail.empty()) out += " -- " + r.detail;
    out += '\n';
  }
  out += "total " + std::to_string(results.size()) + ": " + std::to_string(passed) +
         " passed, " + std::to_string(failed) + " failed, " + std::to_string(unknown) +
         " unknown, " + std::to_string(notes) + " notes\n";
  return out;
}

namespace {
std::string json_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  return out;
}
}  // namespace

std::string ClaimReport::to_json_lines() const {
  std::string out;
  for (const auto& r : results) {
    out += std::string("{\"id\":\"") + json_escape(r.id) + "\",\"result\":\"" +
           to_string(r.status) + "\",\"detail\":\"" + json_escape(r.detail) + "\"}\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Grid expansion.

namespace {

std::string substitute_vars(std::string text,
                            const std::map<std::string, std::uint64_t>& b) {
  for (const auto& [k, v] : b) {
    std::string pat = "{" + k + "}";
    std::size_t pos = 0;
    while ((pos = text.find(pat, pos)) != std::string::npos) {
      text.replace(pos, pat.size(), std::to_string(v));
      pos += 1;
    }
  }
  return text;
}

std::uint64_t eval_numexpr(const std::string& src) {
  // piggyback on the formula expression parser; constants only
  Formula shim = parse_formula("le(" + src + ", 0)");
  Valuation empty;
  return eval_expr(shim->exprs[0], empty, 0);
}

}  // namespace

std::vector<ClaimInstance> expand_claim(const Claim& c) {
  std::vector<ClaimInstance> out;
  auto vars = c.field("VARS");
  if (!vars) {
    out.push_back({&c, {}, c.id});
    return out;
  }
  struct Range {
    std::string name;
    std::uint64_t lo, hi;
  };
  std::vector<Range> ranges;
  std::stringstream ss(*vars);
  std::string part;
  while (std::getline(ss, part, ';')) {
    part = trim(part);
    if (part.empty()) continue;
    auto eq = part.find('=');
    auto dots = part.find("..");
    if (eq == std::string::npos || dots == std::string::npos)
      throw ClaimError("bad VARS entry: " + part);
    Range r;
    r.name = trim(part.substr(0, eq));
    r.lo = std::stoull(trim(part.substr(eq + 1, dots - eq - 1)));
    r.hi = std::stoull(trim(part.substr(dots + 2)));
    ranges.push_back(r);
  }
  std::vector<std::uint64_t> idx(ranges.size());
  for (std::size_t i = 0; i < ranges.size(); ++i) idx[i] = ranges[i].lo;
  bool done = ranges.empty();
  while (!done) {
    ClaimInstance inst;
    inst.claim = &c;
    inst.id = c.id;
    for (std::size_t i = 0; i < ranges.size(); ++i) {
      inst.bindings[ranges[i].name] = idx[i];
      inst.id += "[" + ranges[i].name + "=" + std::to_string(idx[i]) + "]";
    }
    out.push_back(std::move(inst));
    std::size_t i = ranges.size();
    done = true;
    while (i > 0) {
      --i;
      if (idx[i] < ranges[i].hi) {
        ++idx[i];
        for (std::size_t j = i + 1; j < ranges.size(); ++j) idx[j] = ranges[j].lo;
        done = false;
        break;
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Execution.

namespace {

struct InstanceView {
  const ClaimInstance& inst;
  std::optional<std::string> field(const std::string& key) const {
    auto v = inst.claim->field(key);
    if (!v) return std::nullopt;
    return substitute_vars(*v, inst.bindings);
  }
  std::vector<std::string> all(const std::string& key) const {
    std::vector<std::string> out;
    for (auto& v : inst.claim->all(key)) out.push_back(substitute_vars(v, inst.bindings));
    return out;
  }
};

CheckConfig config_for(const InstanceView& v, const CheckConfig& base) {
  CheckConfig cfg = base;
  if (auto fuel = v.field("FUEL")) cfg.fuel = std::stoull(*fuel);
  if (auto range = v.field("RANGE")) {
    auto dots = range->find("..");
    if (dots == std::string::npos) throw ClaimError("bad RANGE: " + *range);
    cfg.range_lo = eval_numexpr(trim(range->substr(0, dots)));
    cfg.range_hi = eval_numexpr(trim(range->substr(dots + 2)));
  }
  if (auto inds = v.field("INDIVIDUALS")) {
    cfg.individuals.clear();
    std::stringstream ss(*inds);
    std::string part;
    while (std::getline(ss, part, ',')) {
      part = trim(part);
      if (!part.empty()) cfg.individuals.push_back(Individual::parse(part));
    }
  }
  for (const auto& gens : v.all("GENERATORS")) {
    std::stringstream ss(gens);
    std::string part;
    while (std::getline(ss, part, ';')) {
      part = trim(part);
      if (!part.empty()) cfg.generators.push_back(parse_term(part, library_resolver()));
    }
  }
  return cfg;
}

Valuation valuation_for(const InstanceView& v) {
  Valuation rho;
  for (const auto& val : v.all("VAL")) {
    auto eq = val.find('=');
    if (eq == std::string::npos) throw ClaimError("bad VAL: " + val);
    rho.fo.emplace(trim(val.substr(0, eq)), Individual::parse(trim(val.substr(eq + 1))));
  }
  for (const auto& pr : v.all("PRED")) {
    auto eq = pr.find('=');
    if (eq == std::string::npos) throw ClaimError("bad PRED: " + pr);
    rho.so.emplace(trim(pr.substr(0, eq)), builtin_family(trim(pr.substr(eq + 1))));
  }
  return rho;
}

ClaimResult verdict_result(const ClaimInstance& inst, const std::string& expect,
                           const CheckResult& got) {
  std::stringstream es(expect);
  std::string want;
  es >> want;
  bool want_bounded = false;
  std::string flag;
  while (es >> flag) want_bounded |= (flag == "generator-bounded");
  Tri want_v = want == "member" ? Tri::Yes : want == "nonmember" ? Tri::No : Tri::Unknown;
  if (want != "member" && want != "nonmember" && want != "unknown")
    throw ClaimError("bad EXPECT verdict: " + expect);
  std::string desc = std::string(to_string(got.verdict)) +
                     (got.generator_bounded ? " [generator-bounded]" : "") +
                     (got.note.empty() ? "" : " (" + got.note + ")");
  if (got.verdict == want_v) {
    if (want_bounded && !got.generator_bounded)
      return {inst.id, ClaimStatus::Fail, "expected generator-bounded flag; got " + desc};
    return {inst.id, ClaimStatus::Pass, desc};
  }
  if (got.verdict == Tri::Unknown)
    return {inst.id, ClaimStatus::Unknown, "expected " + want + "; got " + desc};
  return {inst.id, ClaimStatus::Fail, "expected " + want + "; got " + desc};
}

ClaimResult run_reduce(const ClaimInstance& inst, const InstanceView& v,
                       const CheckConfig& cfg) {
  auto term_src = v.field("TERM");
  if (!term_src) throw ClaimError(inst.id + ": reduce claim needs TERM");
  Term t = parse_term(*term_src, library_resolver());
  State s = 0;
  if (auto st = v.field("STATE")) s = eval_numexpr(*st);
  bool cbv = false;
  if (auto strat = v.field("STRATEGY")) cbv = (*strat == "cbv");
  auto expect = v.field("EXPECT");
  if (!expect) throw ClaimError(inst.id + ": reduce claim needs EXPECT");
  Trace tr = cbv ? reduce_cbv({t, s}, cfg.fuel) : reduce({t, s}, cfg.fuel);

  std::stringstream es(*expect);
  std::string kind;
  es >> kind;
  std::string desc = std::string(to_string(tr.outcome)) + " state " +
                     std::to_string(tr.final.state) + " term " +
                     print_term(tr.final.term);
  if (kind == "normal") {
    std::string rest;
    std::getline(es, rest);
    rest = trim(rest);
    auto statepos = rest.rfind(" state ");
    if (statepos == std::string::npos)
      throw ClaimError(inst.id + ": EXPECT normal needs 'state'");
    std::string term_part = trim(rest.substr(0, statepos));
    std::uint64_t want_state = eval_numexpr(trim(rest.substr(statepos + 7)));
    if (tr.outcome != Outcome::Normal)
      return {inst.id, tr.outcome == Outcome::FuelExhausted ? ClaimStatus::Unknown
                                                            : ClaimStatus::Fail,
              desc};
    if (tr.final.state != want_state)
      return {inst.id, ClaimStatus::Fail, "state mismatch: " + desc};
    if (term_part != "*") {
      Term want = parse_term(term_part, library_resolver());
      if (!alpha_equal(want, tr.final.term))
        return {inst.id, ClaimStatus::Fail, "term mismatch: " + desc};
    }
    return {inst.id, ClaimStatus::Pass, desc};
  }
  if (kind == "stuck") {
    std::string reason;
    es >> reason;
    if (tr.outcome != Outcome::Stuck)
      return {inst.id, ClaimStatus::Fail, "expected stuck; got " + desc};
    if (!reason.empty() && reason != "*" && reason != to_string(*tr.reason))
      return {inst.id, ClaimStatus::Fail,
              std::string("stuck reason mismatch: ") + to_string(*tr.reason)};
    return {inst.id, ClaimStatus::Pass, desc};
  }
  if (kind == "fuel-exhausted") {
    std::string key;
    es >> key;
    if (tr.outcome != Outcome::FuelExhausted)
      return {inst.id, ClaimStatus::Fail, "expected fuel-exhausted; got " + desc};
    if (key == "state-min") {
      std::string rest;
      std::getline(es, rest);
      std::uint64_t smin = eval_numexpr(trim(rest));
      if (tr.final.state < smin)
        return {inst.id, ClaimStatus::Fail,
                "state " + std::to_string(tr.final.state) + " below minimum " +
                    std::to_string(smin)};
    }
    return {inst.id, ClaimStatus::Pass, desc};
  }
  throw ClaimError(inst.id + ": bad EXPECT for reduce: " + *expect);
}

ClaimResult run_member_claim(const ClaimInstance& inst, const InstanceView& v,
                             const CheckConfig& cfg, bool universal_kind) {
  auto fsrc = v.field("FORMULA");
  auto tsrc = v.field("TERM");
  auto expect = v.field("EXPECT");
  if (!fsrc || !tsrc || !expect)
    throw ClaimError(inst.id + ": member claim needs FORMULA, TERM, EXPECT");
  Formula f = parse_formula(*fsrc);
  Term t = parse_term(*tsrc, library_resolver());
  Valuation rho = valuation_for(v);
  if (universal_kind) {
    UniversalReport rep = universal(f, rho, t, cfg);
    return verdict_result(inst, *expect, rep.aggregate);
  }
  State s = 0;
  if (auto st = v.field("STATE")) s = eval_numexpr(*st);
  CheckResult r = member(f, rho, t, s, cfg);
  return verdict_result(inst, *expect, r);
}

ClaimResult run_extract(const ClaimInstance& inst, const InstanceView& v,
                        const CheckConfig& cfg) {
  auto tsrc = v.field("TERM");
  auto expect = v.field("EXPECT");
  if (!tsrc || !expect) throw ClaimError(inst.id + ": extract claim needs TERM, EXPECT");
  Term t = parse_term(*tsrc, library_resolver());
  State s = 0;
  if (auto st = v.field("STATE")) s = eval_numexpr(*st);
  ExtractError err;
  auto got = extract_witness(t, s, cfg, &err);
  std::stringstream es(*expect);
  std::string kind;
  es >> kind;
  if (kind == "witness") {
    std::string rest;
    std::getline(es, rest);
    rest = trim(rest);
    auto statepos = rest.rfind(" state ");
    std::uint64_t want_w, want_s;
    if (statepos == std::string::npos) throw ClaimError(inst.id + ": EXPECT witness needs 'state'");
    want_w = eval_numexpr(trim(rest.substr(0, statepos)));
    want_s = eval_numexpr(trim(rest.substr(statepos + 7)));
    if (!got) {
      ClaimStatus st2 =
          err.kind == ExtractError::Fuel ? ClaimStatus::Unknown : ClaimStatus::Fail;
      return {inst.id, st2, std::string("extraction failed: ") + to_string(err.kind) +
                                " " + err.detail};
    }
    if (got->witness != want_w || got->end_state != want_s)
      return {inst.id, ClaimStatus::Fail,
              "witness " + std::to_string(got->witness) + " state " +
                  std::to_string(got->end_state)};
    return {inst.id, ClaimStatus::Pass,
            "witness " + std::to_string(got->witness) + " state " +
                std::to_string(got->end_state)};
  }
  if (kind == "extract-error") {
    std::string want;
    es >> want;
    if (got) return {inst.id, ClaimStatus::Fail, "extraction unexpectedly succeeded"};
    if (want != "*" && want != to_string(err.kind))
      return {inst.id, ClaimStatus::Fail,
              std::string("error kind mismatch: ") + to_string(err.kind)};
    return {inst.id, ClaimStatus::Pass, to_string(err.kind)};
  }
  throw ClaimError(inst.id + ": bad EXPECT for extract: " + *expect);
}

}  // namespace

ClaimResult run_claim_instance(const ClaimInstance& inst, const CheckConfig& base) {
  InstanceView v{inst};
  try {
    const std::string& kind = inst.claim->kind;
    if (kind == "note") return {inst.id, ClaimStatus::Note, ""};
    CheckConfig cfg = config_for(v, base);
    if (kind == "reduce") return run_reduce(inst, v, cfg);
    if (kind == "member") return run_member_claim(inst, v, cfg, false);
    if (kind == "universal") return run_member_claim(inst, v, cfg, true);
    if (kind == "extract") return run_extract(inst, v, cfg);
    throw ClaimError("unknown claim kind " + kind);
  } catch (const std::exception& e) {
    return {inst.id, ClaimStatus::Fail, std::string("error: ") + e.what()};
  }
}

ClaimReport run_claims(const std::vector<Claim>& claims, const CheckConfig& base) {
  ClaimReport rep;
  for (const auto& c : claims) {
    for (const auto& inst : expand_claim(c)) {
      ClaimResult r = run_claim_instance(inst, base);
      switch (r.status) {
        case ClaimStatus::Pass: ++rep.passed; break;
        case ClaimStatus::Fail: ++rep.failed; break;
        case ClaimStatus::Unknown: ++rep.unknown; break;
        case ClaimStatus::Note: ++rep.notes; break;
      }
      rep.results.push_back(std::move(r));
    }
  }
  std::stable_sort(rep.results.begin(), rep.results.end(),
                   [](const ClaimResult& a, const ClaimResult& b) { return a.id < b.id; });
  return rep;
}

ClaimReport run_claims_path(const std::string& path, const CheckConfig& base) {
  return run_claims(load_claims(path), base);
}

std::optional<MemberCase> build_member_case(const ClaimInstance& inst,
                                            const CheckConfig& base) {
  InstanceView v{inst};
  if (inst.claim->kind != "member" && inst.claim->kind != "universal")
    return std::nullopt;
  auto fsrc = v.field("FORMULA");
  auto tsrc = v.field("TERM");
  if (!fsrc || !tsrc) return std::nullopt;
  MemberCase mc;
  mc.cfg = config_for(v, base);
  mc.formula = parse_formula(*fsrc);
  mc.term = parse_term(*tsrc, library_resolver());
  mc.rho = valuation_for(v);
  mc.state = 0;
  if (auto st = v.field("STATE")) mc.state = eval_numexpr(*st);
  return mc;
}

}  // namespace nsr

#pragma once

// Command-line front end. Every subcommand parses its arguments, delegates to
// the library, and prints; exit codes are 0 (ok), 2 (usage or validation)
// and 3 (evaluation budget exceeded).

#include <cstdint>
#include <iostream>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "vsets/carlitz.hpp"
#include "vsets/constructions.hpp"
#include "vsets/error.hpp"
#include "vsets/family.hpp"
#include "vsets/gf.hpp"
#include "vsets/serialize.hpp"

namespace vsets::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitBudget = 3;

struct RunConfig {
  std::uint64_t p = 0;
  unsigned r = 1;
  std::string modulus;
  std::string format;  // empty: per-command default
  std::uint64_t seed = 0;
  std::uint64_t budget = 100'000'000;
  unsigned workers = 1;

  // subcommand parameters
  std::string chain, x, g, poles, family, a, b, c, d, alpha;
  bool all = false, plus_x = false, interpolate = false, sweep = false, sweep_b = false;
  std::optional<std::size_t> n;
  std::optional<std::uint64_t> sample;
};

namespace detail {

inline Field make_field(const RunConfig& cfg) {
  if (cfg.p == 0) throw Error(ErrorCode::ParseError, "--p is required");
  std::optional<std::vector<long long>> modulus;
  if (!cfg.modulus.empty()) {
    modulus.emplace();
    for (const auto& tok : split_top_level(cfg.modulus)) modulus->push_back(parse_integer(tok));
  }
  return Field(cfg.p, cfg.r, modulus);
}

inline bool json_format(const RunConfig& cfg, bool default_json) {
  if (cfg.format.empty()) return default_json;
  if (cfg.format == "json") return true;
  if (cfg.format == "tsv") return false;
  throw Error(ErrorCode::ParseError, "--format must be json or tsv");
}

inline LinearMap parse_g(const Field& f, const std::string& s) {
  auto ab = parse_element_list(f, s);
  if (ab.size() != 2) throw Error(ErrorCode::ParseError, "--g takes a,b");
  return LinearMap(ab[0], ab[1]);
}

inline ConstructionParams parse_params(const Field& f, const RunConfig& cfg) {
  ConstructionParams p;
  p.n = cfg.n;
  auto el = [&](const std::string& s, std::optional<Element>& out) {
    if (!s.empty()) out = parse_element(f, s);
  };
  el(cfg.a, p.a);
  el(cfg.b, p.b);
  el(cfg.c, p.c);
  el(cfg.d, p.d);
  el(cfg.alpha, p.alpha);
  return p;
}

// The instance described either by --chain or by --g/--poles.
inline std::pair<CarlitzChain, std::optional<FamilyInstance>> instance_from(const Field& f, const RunConfig& cfg) {
  if (!cfg.chain.empty()) {
    CarlitzChain chain(parse_element_list(f, cfg.chain));
    std::optional<FamilyInstance> inst;
    if (validate_chain(chain).valid()) inst = build_instance(linear_part(chain), poles(chain));
    return {std::move(chain), std::move(inst)};
  }
  if (cfg.g.empty() || cfg.poles.empty()) throw Error(ErrorCode::ParseError, "give --chain or both --g and --poles");
  const LinearMap g = parse_g(f, cfg.g);
  PoleSet x(parse_element_list(f, cfg.poles));
  auto inst = build_instance(g, x);
  return {decompose(g, x), std::move(inst)};
}

}  // namespace detail

inline int cmd_eval(const RunConfig& cfg, std::ostream& out) {
  const Field f = detail::make_field(cfg);
  const CarlitzChain chain(parse_element_list(f, cfg.chain));
  const bool as_json = detail::json_format(cfg, false);
  auto value = [&](const Element& x) { return cfg.plus_x ? eval_chain(chain, x) + x : eval_chain(chain, x); };
  auto emit = [&](const Element& x) {
    const Element v = value(x);
    if (as_json)
      out << json{{"x", to_json(x)}, {"value", to_json(v)}}.dump() << '\n';
    else if (cfg.all)
      out << x << '\t' << v << '\n';
    else
      out << v << '\n';
  };
  if (cfg.all) {
    for (const auto& x : f.elements()) emit(x);
  } else {
    if (cfg.x.empty()) throw Error(ErrorCode::ParseError, "give --x or --all");
    emit(parse_element(f, cfg.x));
  }
  return kExitOk;
}

inline int cmd_decompose(const RunConfig& cfg, std::ostream& out) {
  const Field f = detail::make_field(cfg);
  const LinearMap g = detail::parse_g(f, cfg.g);
  std::optional<PoleSet> x;
  try {
    x.emplace(parse_element_list(f, cfg.poles));
  } catch (const Error& e) {
    throw Error(ErrorCode::InvalidPoleSet, e.what());
  }
  const auto [chain, trace] = decompose_traced(g, *x);
  if (detail::json_format(cfg, false)) {
    json upper = json::array();
    for (const auto& [i, c] : trace.upper) upper.push_back({{"i", i}, {"c", to_json(c)}});
    out << json{{"field", to_json(f)},
                {"g", to_json(g)},
                {"poles", to_json(x->values())},
                {"chain", to_json(chain.constants())},
                {"trace",
                 {{"upper", upper},
                  {"epsilon", to_json(trace.epsilon)},
                  {"c2", to_json(trace.c2)},
                  {"c1", to_json(trace.c1)},
                  {"c0", to_json(trace.c0)}}}}
               .dump()
        << '\n';
  } else {
    out << "chain\t" << join(chain.constants()) << '\n';
    for (const auto& [i, c] : trace.upper) out << "c_" << i << '\t' << c << '\n';
    out << "epsilon\t" << trace.epsilon << '\n';
    out << "c_2\t" << trace.c2 << '\n';
    out << "c_1\t" << trace.c1 << '\n';
    out << "c_0\t" << trace.c0 << '\n';
  }
  return kExitOk;
}

inline int cmd_analyze(const RunConfig& cfg, std::ostream& out) {
  const Field f = detail::make_field(cfg);
  auto [chain, inst] = detail::instance_from(f, cfg);
  const ChainValidity validity = validate_chain(chain);
  Table F;
  for (const auto& x : f.elements()) F.push_back(eval_chain(chain, x) + x);
  const ValueProfile prof = value_profile(F);
  json j = {{"field", to_json(f)}, {"chain", to_json(chain.constants())}, {"validity", to_json(validity)}};
  if (inst) {
    j["g"] = to_json(inst->g);
    j["poles"] = to_json(inst->poles.values());
    j["complete_mapping"] = is_complete_mapping(*inst);
  }
  j["F_is_permutation"] = is_permutation(F);
  j["sum_of_values"] = to_json(sum_of_values(F));
  j["profile"] = to_json(prof);
  if (cfg.interpolate) {
    j["f_polynomial"] = to_json(interpolate(chain_table(chain)));
    j["F_polynomial"] = to_json(interpolate(F));
  }
  if (detail::json_format(cfg, true)) {
    out << j.dump() << '\n';
  } else {
    out << "size\tmax_count\tvalues\tsparse_counts\n";
    out << prof.size() << '\t' << prof.max_count << '\t' << join(prof.values) << '\t';
    bool first = true;
    for (const auto& [i, v] : prof.sparse_counts()) {
      out << (first ? "" : ",") << "v" << i << "=" << v;
      first = false;
    }
    out << '\n';
  }
  return kExitOk;
}

inline int cmd_spectrum(const RunConfig& cfg, std::ostream& out) {
  const Field f = detail::make_field(cfg);
  if (!cfg.n) throw Error(ErrorCode::InvalidN, "--n is required");
  SpectrumOptions opts;
  opts.seed = cfg.seed;
  opts.budget = cfg.budget;
  opts.workers = cfg.workers;
  if (cfg.sample) {
    opts.mode = SpectrumMode::Sample;
    opts.samples = *cfg.sample;
  }
  const auto report = enumerate_spectrum(f, *cfg.n, opts);
  if (detail::json_format(cfg, true)) {
    for (const auto& e : report.entries) out << to_json(e).dump() << '\n';
  } else {
    out << kSpectrumTsvHeader << '\n';
    for (const auto& e : report.entries) out << to_tsv(e) << '\n';
  }
  return kExitOk;
}

inline int cmd_construct(const RunConfig& cfg, std::ostream& out) {
  const Field f = detail::make_field(cfg);
  const auto fam = parse_family(cfg.family);
  if (!fam) throw Error(ErrorCode::ParseError, "unknown --family '" + cfg.family + "'");
  const auto report = verify(construct(*fam, f, detail::parse_params(f, cfg)));
  out << to_json(report).dump() << '\n';
  return kExitOk;
}

inline int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  const Field f = detail::make_field(cfg);
  const auto params = detail::parse_params(f, cfg);
  const bool as_json = detail::json_format(cfg, true);
  std::vector<Family> families;
  if (cfg.family.empty()) {
    if (!cfg.sweep) throw Error(ErrorCode::ParseError, "give --family, or --sweep to cover every family");
    families.assign(std::begin(kAllFamilies), std::end(kAllFamilies));
  } else {
    const auto fam = parse_family(cfg.family);
    if (!fam) throw Error(ErrorCode::ParseError, "unknown --family '" + cfg.family + "'");
    families.push_back(*fam);
  }
  if (!as_json) out << "family\tparams\tsize\tmatch\tmismatches\n";
  for (auto fam : families) {
    std::vector<Construction> points;
    if (cfg.sweep || cfg.sweep_b) {
      auto fixed = params;
      if (cfg.sweep_b) fixed.b.reset();
      try {
        points = sweep(fam, f, fixed);
      } catch (const Error& e) {
        // A family whose congruence conditions exclude this q is skipped when sweeping everything.
        if (!cfg.family.empty()) throw;
        continue;
      }
    } else {
      points.push_back(construct(fam, f, params));
    }
    for (const auto& con : points) {
      const auto rep = verify(con);
      if (as_json) {
        out << to_json(rep).dump() << '\n';
      } else {
        std::string mm;
        for (const auto& m : rep.mismatches) mm += (mm.empty() ? "" : "; ") + m;
        out << family_name(fam) << '\t' << to_json(con.params).dump() << '\t' << rep.observed.size() << '\t'
            << (rep.match ? "true" : "false") << '\t' << mm << '\n';
      }
    }
  }
  return kExitOk;
}

/// Entry point shared by the executable and the tests.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Value set explorer for permutations that modify a linear map at n points"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--p", cfg.p, "Field characteristic (odd prime)");
  app.add_option("--r", cfg.r, "Extension degree")->default_val(1);
  app.add_option("--modulus", cfg.modulus, "Monic irreducible modulus c_0,...,c_r (r > 1)");
  app.add_option("--format", cfg.format, "Output format: json or tsv")->check(CLI::IsMember({"json", "tsv"}));
  app.add_option("--seed", cfg.seed, "Seed for sample mode")->default_val(0);
  app.add_option("--budget", cfg.budget, "Maximum table evaluations")->default_val(100'000'000);
  app.add_option("--workers", cfg.workers, "Worker threads for exhaustive enumeration")->default_val(1);

  auto* eval = app.add_subcommand("eval", "Evaluate a chain P_n(c_0,...,c_n; x)");
  eval->add_option("--chain", cfg.chain, "c_0,...,c_n")->required();
  eval->add_option("--x", cfg.x, "Point to evaluate");
  eval->add_flag("--all", cfg.all, "Evaluate at every field element");
  eval->add_flag("--plus-x", cfg.plus_x, "Print F(x) = P_n(x) + x instead");

  auto* dec = app.add_subcommand("decompose", "Chain constants from g(x) = ax + b and its pole set");
  dec->add_option("--g", cfg.g, "a,b")->required();
  dec->add_option("--poles", cfg.poles, "x_1,...,x_n")->required();

  auto* ana = app.add_subcommand("analyze", "Value profile of one instance");
  ana->add_option("--chain", cfg.chain, "c_0,...,c_n");
  ana->add_option("--g", cfg.g, "a,b");
  ana->add_option("--poles", cfg.poles, "x_1,...,x_n");
  ana->add_flag("--interpolate", cfg.interpolate, "Include reduced polynomial coefficients");

  auto* spectrum_cmd = app.add_subcommand("spectrum", "Attained value set sizes over all instances with n poles");
  spectrum_cmd->add_option("--n", cfg.n, "Number of poles")->required();
  spectrum_cmd->add_option("--sample", cfg.sample, "Sample this many instances instead of enumerating");

  auto add_params = [&](CLI::App* sub) {
    sub->add_option("--family", cfg.family, "cor3i, cor3ii, cor5i, cor5ii, cor5iii, cor6, thm7i..thm7iv, coset");
    sub->add_option("--n", cfg.n);
    sub->add_option("--a", cfg.a);
    sub->add_option("--b", cfg.b);
    sub->add_option("--c", cfg.c);
    sub->add_option("--d", cfg.d);
    sub->add_option("--alpha", cfg.alpha);
  };
  auto* con = app.add_subcommand("construct", "Build one explicit construction and check it");
  add_params(con);
  con->get_option("--family")->required();
  auto* ver = app.add_subcommand("verify", "Check constructions against brute force");
  add_params(ver);
  ver->add_flag("--sweep", cfg.sweep, "Sweep every parameter not given explicitly");
  ver->add_flag("--sweep-b", cfg.sweep_b, "Sweep b over F_q^*");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*eval) return cmd_eval(cfg, out);
    if (*dec) return cmd_decompose(cfg, out);
    if (*ana) return cmd_analyze(cfg, out);
    if (*spectrum_cmd) return cmd_spectrum(cfg, out);
    if (*con) return cmd_construct(cfg, out);
    if (*ver) return cmd_verify(cfg, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::BudgetExceeded ? kExitBudget : kExitUsage;
  }
  return kExitUsage;
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"vsets"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace vsets::cli

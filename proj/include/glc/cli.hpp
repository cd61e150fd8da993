#pragma once

// Command-line surface.  run() is the whole program; the binary's
// main() only forwards argv and the standard streams, which keeps
// every code path testable in-process.
//
// Exit codes: 0 affirmative (provable / certificate accepted /
// no countermodel within bound / interpolant found), 1 negative,
// 2 usage or input error, 3 resource abort or internal failure.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "glc/certificate_io.hpp"
#include "glc/corpus.hpp"
#include "glc/formula.hpp"
#include "glc/interpolation.hpp"
#include "glc/oracle.hpp"
#include "glc/proof.hpp"
#include "glc/prover.hpp"
#include "glc/sequent.hpp"
#include "glc/selftest.hpp"

namespace glc::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_negative = 1;
inline constexpr int exit_usage = 2;
inline constexpr int exit_abort = 3;

namespace detail {

using nlohmann::json;

inline json vocab_json(const VocabularySet& v) {
  json arr = json::array();
  for (const auto& l : v) arr.push_back(render(l));
  return arr;
}

inline json sequent_json(const Sequent& s) {
  json arr = json::array();
  for (const auto& f : s.items()) arr.push_back(render(f));
  return arr;
}

inline json countermodel_json(const Countermodel& cm) {
  json j;
  j["worlds"] = cm.model.worlds();
  json rel = json::array();
  for (const auto& [i, k] : cm.model.relation()) rel.push_back(json{i, k});
  j["relation"] = std::move(rel);
  json val = json::object();
  for (const auto& [name, worlds] : cm.model.valuation()) {
    json ws = json::array();
    for (int w : worlds) ws.push_back(w);
    val[name] = std::move(ws);
  }
  j["valuation"] = std::move(val);
  j["failWorld"] = cm.fail_world;
  return j;
}

inline json interpolation_report(const InterpolateResult& r) {
  json j;
  switch (r.status) {
    case InterpolateStatus::NotProvable:
      j["verdict"] = "not-provable";
      return j;
    case InterpolateStatus::Aborted:
      j["verdict"] = "aborted";
      return j;
    case InterpolateStatus::Interpolant:
      break;
  }
  j["verdict"] = "interpolant";
  j["interpolant"] = render(r.interpolant);
  j["left_proof"] = certificate_to_json(r.left_proof, Calculus::GLCirc);
  j["right_proof"] = certificate_to_json(r.right_proof, Calculus::GLCirc);
  j["vocab"] = json{{"a", vocab_json(r.vocab_a)},
                    {"b", vocab_json(r.vocab_b)},
                    {"c", vocab_json(r.vocab_c)}};
  return j;
}

// Budget resolution: --budget flag beats GLC_BUDGET beats the default.
inline long long resolve_budget(std::optional<long long> flag,
                                std::string* error) {
  if (flag) {
    if (*flag <= 0) *error = "--budget must be positive";
    return flag.value_or(0);
  }
  if (const char* env = std::getenv("GLC_BUDGET")) {
    try {
      std::size_t used = 0;
      long long v = std::stoll(env, &used);
      if (used != std::string(env).size() || v <= 0)
        *error = "GLC_BUDGET must be a positive integer";
      return v;
    } catch (const std::exception&) {
      *error = "GLC_BUDGET must be a positive integer";
      return 0;
    }
  }
  return ProverOptions{}.budget;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << text;
}

struct StatsClock {
  bool enabled;
  std::chrono::steady_clock::time_point start =
      std::chrono::steady_clock::now();

  void report(std::ostream& err, const SearchStats& s) const {
    if (!enabled) return;
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - start)
                  .count();
    err << "stats: nodes=" << s.nodes_expanded << " backlinks=" << s.backlinks
        << " memo-hits=" << s.memo_hits << " time-ms=" << ms << "\n";
  }
};

}  // namespace detail

// Runs the CLI; every failure path returns an exit code instead of
// throwing, except std::bad_alloc and the like.
inline int run(const std::vector<std::string>& args, std::ostream& out,
               std::ostream& err) {
  using detail::json;

  CLI::App app{"circular proof search, certificate checking and "
               "interpolation for provability logic"};
  app.require_subcommand(1);

  // prove
  std::string prove_input;
  std::string prove_file;
  std::string prove_calculus = "circ";
  std::string emit_path;
  std::optional<long long> budget_flag;
  bool want_stats = false;
  auto* prove = app.add_subcommand("prove", "decide a formula or sequent");
  prove->add_option("input", prove_input,
                    "formula, or comma-separated sequent");
  prove->add_option("--file", prove_file, "read the input from a file");
  prove->add_option("--calculus", prove_calculus, "circ or seq")
      ->check(CLI::IsMember({"circ", "seq"}));
  prove->add_option("--emit-proof", emit_path, "write the certificate here");
  prove->add_option("--budget", budget_flag, "node expansion budget");
  prove->add_flag("--stats", want_stats, "timing lines on standard error");

  // check
  std::string check_path;
  auto* check = app.add_subcommand("check", "validate a proof certificate");
  check->add_option("path", check_path, "certificate JSON file")->required();

  // interpolate
  std::string ia, ib, report_path;
  auto* inter = app.add_subcommand("interpolate",
                                   "interpolant for a provable implication");
  inter->add_option("a", ia, "antecedent formula")->required();
  inter->add_option("b", ib, "consequent formula")->required();
  inter->add_option("--report", report_path, "write the report here");
  inter->add_option("--budget", budget_flag, "node expansion budget");
  inter->add_flag("--stats", want_stats, "timing lines on standard error");

  // fixpoint
  std::string fx_atom, fx_formula;
  auto* fix = app.add_subcommand("fixpoint",
                                 "eliminate a modalized atom by fixed point");
  fix->add_option("atom", fx_atom, "the atom to eliminate")->required();
  fix->add_option("formula", fx_formula, "formula with the atom modalized")
      ->required();
  fix->add_option("--budget", budget_flag, "node expansion budget");

  // oracle
  std::string oracle_input;
  int max_worlds = 0;
  auto* oracle = app.add_subcommand("oracle",
                                    "countermodel search over finite frames");
  oracle->add_option("formula", oracle_input, "formula to test")->required();
  oracle->add_option("--max-worlds", max_worlds, "frame size bound (1..6)")
      ->required();

  // corpus
  CorpusSpec cspec;
  auto* corpus = app.add_subcommand("corpus", "deterministic formula corpus");
  corpus->add_option("--seed", cspec.seed, "generator seed")->required();
  corpus->add_option("--count", cspec.count, "number of formulas")->required();
  corpus->add_option("--max-atoms", cspec.max_atoms, "distinct atoms bound");
  corpus->add_option("--max-depth", cspec.max_depth, "syntactic depth bound");
  corpus->add_option("--max-modal-depth", cspec.max_modal_depth,
                     "modal nesting bound");

  // selftest
  CorpusSpec sspec;
  auto* self = app.add_subcommand(
      "selftest", "admissibility properties over a generated corpus");
  self->add_option("--seed", sspec.seed, "generator seed")->required();
  self->add_option("--count", sspec.count, "number of formulas")->required();
  self->add_option("--budget", budget_flag, "node expansion budget");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return exit_usage;
  }

  std::string budget_error;
  ProverOptions opts;
  opts.budget = detail::resolve_budget(budget_flag, &budget_error);
  if (!budget_error.empty()) {
    err << "usage error: " << budget_error << "\n";
    return exit_usage;
  }

  try {
    if (*prove) {
      if (prove_input.empty() == prove_file.empty()) {
        err << "usage error: give exactly one of <input> or --file\n";
        return exit_usage;
      }
      std::string text =
          prove_file.empty() ? prove_input : detail::read_file(prove_file);
      Sequent goal = parse_sequent(text);
      detail::StatsClock clock{want_stats};
      bool circ = prove_calculus == "circ";
      ProveResult r = circ ? prove_circ(goal, opts) : prove_glseq(goal, opts);
      clock.report(err, r.stats);

      json j;
      j["calculus"] = circ ? "glcirc" : "glseq";
      j["sequent"] = detail::sequent_json(goal);
      j["stats"] = json{{"nodes_expanded", r.stats.nodes_expanded},
                        {"backlinks", r.stats.backlinks},
                        {"memo_hits", r.stats.memo_hits}};
      switch (r.verdict) {
        case ProveVerdict::Provable: {
          j["verdict"] = "provable";
          json cert = certificate_to_json(
              *r.certificate, circ ? Calculus::GLCirc : Calculus::GLSeq);
          LoadedCertificate reloaded = certificate_from_json(cert);
          CheckResult chk = check_loaded(reloaded);
          if (!chk.accepted)
            throw SoundnessError("emitted certificate failed revalidation: " +
                                 chk.message);
          if (!emit_path.empty())
            detail::write_file(emit_path, cert.dump(2) + "\n");
          out << j.dump(2) << "\n";
          return exit_ok;
        }
        case ProveVerdict::NotProvable:
          j["verdict"] = "not-provable";
          out << j.dump(2) << "\n";
          return exit_negative;
        case ProveVerdict::Aborted:
          j["verdict"] = "aborted";
          out << j.dump(2) << "\n";
          err << "search aborted: budget of " << opts.budget
              << " nodes exhausted\n";
          return exit_abort;
      }
    }

    if (*check) {
      json doc;
      try {
        doc = json::parse(detail::read_file(check_path));
      } catch (const json::exception& e) {
        err << "input error: " << e.what() << "\n";
        return exit_usage;
      }
      LoadedCertificate cert = certificate_from_json(doc);
      CheckResult chk = check_loaded(cert);
      json j;
      j["calculus"] = calculus_name(cert.calculus);
      j["accepted"] = chk.accepted;
      j["reason"] = reason_name(chk.reason);
      if (!chk.accepted) {
        j["node"] = chk.node;
        j["message"] = chk.message;
      }
      out << j.dump(2) << "\n";
      return chk.accepted ? exit_ok : exit_negative;
    }

    if (*inter) {
      Formula a = parse(ia);
      Formula b = parse(ib);
      detail::StatsClock clock{want_stats};
      InterpolateResult r = interpolate(a, b, opts);
      clock.report(err, r.stats);
      json j = detail::interpolation_report(r);
      out << j.dump(2) << "\n";
      if (!report_path.empty())
        detail::write_file(report_path, j.dump(2) + "\n");
      switch (r.status) {
        case InterpolateStatus::Interpolant:
          return exit_ok;
        case InterpolateStatus::NotProvable:
          err << "not provable: " << render(impl(a, b)) << "\n";
          return exit_negative;
        case InterpolateStatus::Aborted:
          err << "search aborted: budget of " << opts.budget
              << " nodes exhausted\n";
          return exit_abort;
      }
    }

    if (*fix) {
      Formula a = parse(fx_formula);
      Formula f = fixpoint(fx_atom, a, opts);
      json j;
      j["atom"] = fx_atom;
      j["formula"] = render(a);
      j["fixpoint"] = render(f);
      out << j.dump(2) << "\n";
      return exit_ok;
    }

    if (*oracle) {
      Formula f = parse(oracle_input);
      std::optional<Countermodel> cm = find_countermodel(f, max_worlds);
      json j;
      j["formula"] = render(f);
      j["max_worlds"] = max_worlds;
      j["valid_to_bound"] = !cm.has_value();
      j["countermodel"] = cm ? detail::countermodel_json(*cm) : json(nullptr);
      out << j.dump(2) << "\n";
      return cm ? exit_negative : exit_ok;
    }

    if (*corpus) {
      if (cspec.count <= 0 || cspec.max_atoms <= 0 || cspec.max_depth <= 0 ||
          cspec.max_modal_depth < 0) {
        err << "usage error: corpus bounds must be positive\n";
        return exit_usage;
      }
      std::vector<Formula> fs = generate_corpus(cspec);
      json arr = json::array();
      for (const auto& f : fs) arr.push_back(render(f));
      out << arr.dump(2) << "\n";
      return exit_ok;
    }

    if (*self) {
      if (sspec.count <= 0) {
        err << "usage error: --count must be positive\n";
        return exit_usage;
      }
      SelfTestReport rep = run_selftest(sspec, opts);
      out << selftest_json(rep).dump(2) << "\n";
      return rep.violations == 0 ? exit_ok : exit_negative;
    }
  } catch (const ParseError& e) {
    err << "parse error at position " << e.position() << ": " << e.what()
        << "\n";
    return exit_usage;
  } catch (const CertificateError& e) {
    err << "certificate error: " << e.what() << "\n";
    return exit_usage;
  } catch (const std::invalid_argument& e) {
    err << "input error: " << e.what() << "\n";
    return exit_usage;
  } catch (const BudgetExceeded& e) {
    err << "search aborted: " << e.what() << "\n";
    return exit_abort;
  } catch (const SoundnessError& e) {
    err << "internal soundness failure: " << e.what() << "\n";
    return exit_abort;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  }
  return exit_usage;
}

}  // namespace glc::cli

#pragma once

// JSON round-tripping for proof certificates.  Field order inside
// objects is not part of the contract; content is exact.  Loading
// throws CertificateError on schema violations; logical defects are
// left to the checkers.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "glc/proof.hpp"

namespace glc {

using json = nlohmann::json;

enum class Calculus { GLSeq, GLCirc, GLCircSplit };

inline const char* calculus_name(Calculus c) {
  switch (c) {
    case Calculus::GLSeq:
      return "glseq";
    case Calculus::GLCirc:
      return "glcirc";
    case Calculus::GLCircSplit:
      return "glcirc-split";
  }
  return "?";
}

class CertificateError : public std::runtime_error {
 public:
  explicit CertificateError(const std::string& msg)
      : std::runtime_error("certificate error: " + msg) {}
};

namespace detail {

inline json sequent_to_json(const Sequent& s) {
  json arr = json::array();
  for (const auto& f : s.items()) arr.push_back(render(f));
  return arr;
}

inline Sequent sequent_from_json(const json& j, const char* what) {
  if (!j.is_array()) throw CertificateError(std::string(what) + ": expected an array");
  std::vector<Formula> items;
  for (const auto& e : j) {
    if (!e.is_string())
      throw CertificateError(std::string(what) + ": expected formula strings");
    try {
      items.push_back(parse(e.get<std::string>()));
    } catch (const ParseError& err) {
      throw CertificateError(std::string(what) + ": " + err.what());
    }
  }
  return Sequent(std::move(items));
}

inline Formula formula_from_json(const json& j, const char* what) {
  if (!j.is_string())
    throw CertificateError(std::string(what) + ": expected a formula string");
  try {
    return parse(j.get<std::string>());
  } catch (const ParseError& err) {
    throw CertificateError(std::string(what) + ": " + err.what());
  }
}

inline Rule rule_from_name(const std::string& s) {
  for (Rule r : {Rule::Leaf, Rule::AxClash, Rule::AxTop, Rule::And, Rule::Or,
                 Rule::BoxGL, Rule::BoxK4})
    if (s == rule_name(r)) return r;
  throw CertificateError("unknown rule '" + s + "'");
}

inline SplitRule split_rule_from_name(const std::string& s) {
  for (SplitRule r :
       {SplitRule::Leaf, SplitRule::AxTopRight, SplitRule::AxTopLeft,
        SplitRule::AxClashLeft, SplitRule::AxCross, SplitRule::AxClashRight,
        SplitRule::AndLeft, SplitRule::AndRight, SplitRule::OrLeft,
        SplitRule::OrRight, SplitRule::BoxLeft, SplitRule::BoxRight})
    if (s == rule_name(r)) return r;
  throw CertificateError("unknown split rule '" + s + "'");
}

inline const json& field(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end())
    throw CertificateError(std::string("missing field '") + key + "'");
  return *it;
}

inline std::string string_field(const json& j, const char* key) {
  const json& f = field(j, key);
  if (!f.is_string())
    throw CertificateError(std::string("field '") + key + "' must be a string");
  return f.get<std::string>();
}

inline json principal_to_json(const Principal& p) {
  json out = json::object();
  if (p.formula) out["formula"] = render(*p.formula);
  if (p.gamma) out["gamma"] = sequent_to_json(*p.gamma);
  if (p.delta) out["delta"] = sequent_to_json(*p.delta);
  return out;
}

inline Principal principal_from_json(const json& j) {
  Principal out;
  if (!j.is_object()) throw CertificateError("principal must be an object");
  if (j.contains("formula"))
    out.formula = formula_from_json(j["formula"], "principal formula");
  if (j.contains("gamma"))
    out.gamma = sequent_from_json(j["gamma"], "principal gamma");
  if (j.contains("delta"))
    out.delta = sequent_from_json(j["delta"], "principal delta");
  return out;
}

inline json split_principal_to_json(const SplitPrincipal& p) {
  json out = json::object();
  if (p.formula) out["formula"] = render(*p.formula);
  out["side"] = p.side == Side::Left ? "left" : "right";
  if (p.gamma_left && p.gamma_right)
    out["gamma"] = json{{"left", sequent_to_json(*p.gamma_left)},
                        {"right", sequent_to_json(*p.gamma_right)}};
  if (p.delta_left && p.delta_right)
    out["delta"] = json{{"left", sequent_to_json(*p.delta_left)},
                        {"right", sequent_to_json(*p.delta_right)}};
  return out;
}

inline SplitPrincipal split_principal_from_json(const json& j) {
  SplitPrincipal out;
  if (!j.is_object()) throw CertificateError("principal must be an object");
  if (j.contains("formula"))
    out.formula = formula_from_json(j["formula"], "principal formula");
  if (j.contains("side")) {
    std::string s = string_field(j, "side");
    if (s == "left")
      out.side = Side::Left;
    else if (s == "right")
      out.side = Side::Right;
    else
      throw CertificateError("principal side must be left or right");
  }
  if (j.contains("gamma")) {
    out.gamma_left = sequent_from_json(field(j["gamma"], "left"), "gamma left");
    out.gamma_right =
        sequent_from_json(field(j["gamma"], "right"), "gamma right");
  }
  if (j.contains("delta")) {
    out.delta_left = sequent_from_json(field(j["delta"], "left"), "delta left");
    out.delta_right =
        sequent_from_json(field(j["delta"], "right"), "delta right");
  }
  return out;
}

}  // namespace detail

inline json certificate_to_json(const CircularProof& p, Calculus c) {
  json nodes = json::array();
  for (const auto& n : p.nodes) {
    json jn;
    jn["id"] = n.id;
    jn["sequent"] = detail::sequent_to_json(n.sequent);
    jn["rule"] = rule_name(n.rule);
    jn["premises"] = n.premises;
    jn["principal"] = detail::principal_to_json(n.principal);
    nodes.push_back(std::move(jn));
  }
  json out;
  out["calculus"] = calculus_name(c);
  out["root"] = p.root;
  out["nodes"] = std::move(nodes);
  out["backlinks"] = json::object();
  for (const auto& [leaf, target] : p.backlinks) out["backlinks"][leaf] = target;
  return out;
}

inline json certificate_to_json(const SplitCircularProof& p) {
  json nodes = json::array();
  for (const auto& n : p.nodes) {
    json jn;
    jn["id"] = n.id;
    jn["sequent"] = detail::sequent_to_json(n.sequent.flatten());
    jn["split"] = json{{"left", detail::sequent_to_json(n.sequent.left)},
                       {"right", detail::sequent_to_json(n.sequent.right)}};
    jn["rule"] = rule_name(n.rule);
    jn["premises"] = n.premises;
    jn["principal"] = detail::split_principal_to_json(n.principal);
    nodes.push_back(std::move(jn));
  }
  json out;
  out["calculus"] = calculus_name(Calculus::GLCircSplit);
  out["root"] = p.root;
  out["nodes"] = std::move(nodes);
  out["backlinks"] = json::object();
  for (const auto& [leaf, target] : p.backlinks) out["backlinks"][leaf] = target;
  return out;
}

struct LoadedCertificate {
  Calculus calculus;
  std::optional<CircularProof> plain;      // glseq and glcirc
  std::optional<SplitCircularProof> split;  // glcirc-split
};

inline LoadedCertificate certificate_from_json(const json& j) {
  if (!j.is_object()) throw CertificateError("certificate must be an object");
  std::string cal = detail::string_field(j, "calculus");
  LoadedCertificate out;
  if (cal == "glseq")
    out.calculus = Calculus::GLSeq;
  else if (cal == "glcirc")
    out.calculus = Calculus::GLCirc;
  else if (cal == "glcirc-split")
    out.calculus = Calculus::GLCircSplit;
  else
    throw CertificateError("unknown calculus '" + cal + "'");

  const json& nodes = detail::field(j, "nodes");
  if (!nodes.is_array()) throw CertificateError("nodes must be an array");
  std::string root = detail::string_field(j, "root");
  const json& backlinks = detail::field(j, "backlinks");
  if (!backlinks.is_object())
    throw CertificateError("backlinks must be an object");

  auto read_premises = [](const json& jn) {
    std::vector<std::string> out;
    const json& prem = detail::field(jn, "premises");
    if (!prem.is_array()) throw CertificateError("premises must be an array");
    for (const auto& p : prem) {
      if (!p.is_string())
        throw CertificateError("premises must be node id strings");
      out.push_back(p.get<std::string>());
    }
    return out;
  };

  if (out.calculus == Calculus::GLCircSplit) {
    SplitCircularProof p;
    p.root = std::move(root);
    for (const auto& jn : nodes) {
      SplitProofNode n;
      n.id = detail::string_field(jn, "id");
      const json& split = detail::field(jn, "split");
      n.sequent.left =
          detail::sequent_from_json(detail::field(split, "left"), "split left");
      n.sequent.right = detail::sequent_from_json(detail::field(split, "right"),
                                                  "split right");
      if (jn.contains("sequent")) {
        Sequent flat = detail::sequent_from_json(jn["sequent"], "sequent");
        if (flat != n.sequent.flatten())
          throw CertificateError("node '" + n.id +
                                 "': split does not flatten to sequent");
      }
      n.rule = detail::split_rule_from_name(detail::string_field(jn, "rule"));
      n.premises = read_premises(jn);
      n.principal =
          detail::split_principal_from_json(detail::field(jn, "principal"));
      p.nodes.push_back(std::move(n));
    }
    for (const auto& [leaf, target] : backlinks.items()) {
      if (!target.is_string())
        throw CertificateError("backlink targets must be node id strings");
      p.backlinks[leaf] = target.get<std::string>();
    }
    out.split = std::move(p);
    return out;
  }

  CircularProof p;
  p.root = std::move(root);
  for (const auto& jn : nodes) {
    ProofNode n;
    n.id = detail::string_field(jn, "id");
    n.sequent = detail::sequent_from_json(detail::field(jn, "sequent"),
                                          "sequent");
    n.rule = detail::rule_from_name(detail::string_field(jn, "rule"));
    n.premises = read_premises(jn);
    n.principal = detail::principal_from_json(detail::field(jn, "principal"));
    p.nodes.push_back(std::move(n));
  }
  for (const auto& [leaf, target] : backlinks.items()) {
    if (!target.is_string())
      throw CertificateError("backlink targets must be node id strings");
    p.backlinks[leaf] = target.get<std::string>();
  }
  out.plain = std::move(p);
  return out;
}

// Runs the checker matching the certificate's declared calculus.
inline CheckResult check_loaded(const LoadedCertificate& c) {
  switch (c.calculus) {
    case Calculus::GLSeq:
      return check_glseq(*c.plain);
    case Calculus::GLCirc:
      return check_circular(*c.plain);
    case Calculus::GLCircSplit:
      return check_split_circular(*c.split);
  }
  throw std::logic_error("check_loaded: bad calculus");
}

}  // namespace glc

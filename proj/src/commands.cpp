#include "gnskit/commands.hpp"

#include <cmath>
#include <sstream>

namespace gnskit {

namespace {

[[noreturn]] void usage(const std::string& msg) { throw Error(ErrorKind::Usage, msg); }

void expect_args(const std::string& verb, const std::vector<std::string>& args, std::size_t n,
                 const char* shape) {
  if (args.size() != n) usage(verb + " expects: " + verb + " " + shape);
}

double parse_number(const std::string& text, const char* what) {
  std::istringstream in(text);
  double value = 0.0;
  in >> value;
  if (in.fail() || !in.eof() || !std::isfinite(value)) usage(std::string("invalid ") + what + " '" + text + "'");
  return value;
}

Json checks_json(const ValidationReport& report) {
  Json checks = Json::array();
  for (const auto& c : report.checks) {
    checks.push_back({{"name", c.name}, {"violation", c.violation}, {"tolerance", c.tolerance},
                      {"passed", c.passed()}});
  }
  return {{"passed", report.passed()}, {"max_violation", report.max_violation()}, {"checks", checks}};
}

Json kernel_json(const Kernel& k) {
  return {{"matrix", encode(k.matrix())}, {"rank", k.rank()}};
}

Json rep_json(const GNSRepresentation& rep, const TolerancePolicy& pol) {
  Json matrices = Json::array();
  for (const auto& m : rep.matrices) matrices.push_back(encode(m));
  Json out = {{"rep_dim", rep.rep_dim},
              {"matrices", matrices},
              {"cyclic_vector", encode(rep.cyclic_vector)},
              {"embedding", encode(rep.embedding)},
              {"source_functional", encode(rep.source_functional.values)}};
  const auto report = verify_star_rep(rep, pol);
  out["reproduction_residual"] = report.violation("reproduction");
  out["verification"] = checks_json(report);
  return out;
}

struct Resolved {
  const FiniteStarAlgebra* algebra = nullptr;
  const Functional* functional = nullptr;
};

Resolved algebra_and_functional(const Workspace& ws, const std::string& alg, const std::string& fn) {
  const auto& a = ws.algebra(alg);
  const auto& f = ws.functional(fn);
  if (f.algebra != alg) usage("functional '" + fn + "' lives on algebra '" + f.algebra + "', not '" + alg + "'");
  return {&a, &f.functional};
}

Json functional_echo(const std::string& name, const std::string& alg, const Functional& f) {
  return {{"name", name}, {"algebra", alg}, {"values", encode(f.values)}};
}

Json kernel_echo(const std::string& name, const NamedKernel& k) {
  Json out = {{"name", name}, {"matrix", encode(k.kernel.matrix())}};
  if (k.algebra) out["algebra"] = *k.algebra;
  return out;
}

const char* status_name(DominatingScale::Status s) {
  switch (s) {
    case DominatingScale::Status::Found: return "found";
    case DominatingScale::Status::RangeMismatch: return "range_mismatch";
    case DominatingScale::Status::ZeroKernel: return "zero_kernel";
  }
  return "unknown";
}

}  // namespace

const std::vector<std::string>& command_verbs() {
  static const std::vector<std::string> verbs = {
      "validate", "gns",    "kernel",   "functional", "cone-sum",  "cone-scale",
      "cone-leq", "cone-diff", "exclude", "min-scale", "subrep",   "chain",
      "weighted-sum", "decompose", "equiv", "pullback", "audit",   "roundtrip"};
  return verbs;
}

Json run_command(const Workspace& ws, const std::string& verb, const std::vector<std::string>& args,
                 const CommandOptions& options) {
  const auto& pol = options.pol;
  Json inputs = Json::object();
  Json result = Json::object();

  if (verb == "validate") {
    expect_args(verb, args, 1, "<algebra>");
    const auto& a = ws.algebra(args[0]);
    inputs["algebra"] = args[0];
    inputs["dim"] = a.dim();
    result = checks_json(validate_algebra(a, pol));
  } else if (verb == "gns") {
    expect_args(verb, args, 2, "<algebra> <functional>");
    const auto r = algebra_and_functional(ws, args[0], args[1]);
    inputs["functional"] = functional_echo(args[1], args[0], *r.functional);
    const auto rep = gns_construct(*r.algebra, *r.functional, pol);
    result = rep_json(rep, pol);
    result["gram_rank"] = is_positive(*r.algebra, *r.functional, pol).gram_rank;
    if (rep.rep_dim > 0) result["irreducible"] = is_irreducible(rep, pol);
  } else if (verb == "kernel") {
    expect_args(verb, args, 2, "<algebra> <functional>");
    const auto r = algebra_and_functional(ws, args[0], args[1]);
    inputs["functional"] = functional_echo(args[1], args[0], *r.functional);
    const auto k = functional_to_kernel(*r.algebra, *r.functional, pol);
    result = kernel_json(k);
    result["star_invariant"] = is_star_invariant(*r.algebra, k, pol);
  } else if (verb == "functional") {
    expect_args(verb, args, 2, "<algebra> <kernel>");
    const auto& a = ws.algebra(args[0]);
    const auto& k = ws.kernel(args[1]);
    inputs["kernel"] = kernel_echo(args[1], k);
    result["values"] = encode(kernel_to_functional(a, k.kernel, pol).values);
  } else if (verb == "cone-sum" || verb == "cone-leq" || verb == "cone-diff" || verb == "exclude" ||
             verb == "min-scale" || verb == "subrep") {
    expect_args(verb, args, 2, "<kernel> <kernel>");
    const auto& k1 = ws.kernel(args[0]);
    const auto& k2 = ws.kernel(args[1]);
    inputs["kernels"] = Json::array({kernel_echo(args[0], k1), kernel_echo(args[1], k2)});
    if (verb == "cone-sum") {
      result = kernel_json(kernel_sum(k1.kernel, k2.kernel, pol));
    } else if (verb == "cone-leq") {
      result["leq"] = kernel_leq(k1.kernel, k2.kernel, pol);
    } else if (verb == "cone-diff") {
      result = kernel_json(kernel_difference(k1.kernel, k2.kernel, pol));
    } else if (verb == "exclude") {
      result["mutually_excluding"] = mutually_excluding(k1.kernel, k2.kernel, pol);
    } else if (verb == "min-scale") {
      const auto s = min_dominating_scale(k1.kernel, k2.kernel, pol);
      result["status"] = status_name(s.status);
      if (s.value()) result["scale"] = *s.value();
    } else {
      result["ordinary_subrepresentation"] = ordinary_subrep_check(k1.kernel, k2.kernel, pol);
    }
  } else if (verb == "cone-scale") {
    expect_args(verb, args, 2, "<lambda> <kernel>");
    const double lambda = parse_number(args[0], "scale");
    const auto& k = ws.kernel(args[1]);
    inputs["lambda"] = lambda;
    inputs["kernel"] = kernel_echo(args[1], k);
    result = kernel_json(kernel_scale(lambda, k.kernel, pol));
  } else if (verb == "chain") {
    if (args.size() != 2 && args.size() != 3) usage("chain expects: chain <kernel> <decay|fill|growth> [ratio]");
    const auto& k = ws.kernel(args[0]);
    const std::string family = args[1];
    const double ratio = args.size() == 3 ? parse_number(args[2], "ratio") : 0.5;
    if (!(ratio > 0.0 && ratio < 1.0)) usage("chain ratio must lie in (0, 1)");
    inputs["kernel"] = kernel_echo(args[0], k);
    inputs["family"] = family;
    inputs["ratio"] = ratio;
    ChainDirection direction = ChainDirection::Increasing;
    std::function<double(std::size_t)> coefficient;
    if (family == "decay") {
      direction = ChainDirection::Decreasing;
      coefficient = [ratio](std::size_t i) { return std::pow(ratio, static_cast<double>(i)); };
    } else if (family == "fill") {
      coefficient = [ratio](std::size_t i) { return 1.0 - std::pow(ratio, static_cast<double>(i)); };
    } else if (family == "growth") {
      coefficient = [ratio](std::size_t i) { return std::pow(1.0 / ratio, static_cast<double>(i)); };
    } else {
      usage("unknown chain family '" + family + "' (decay, fill, growth)");
    }
    const auto out = chain_limit([&](std::size_t i) { return kernel_scale(coefficient(i), k.kernel, pol); },
                                 direction, pol);
    result = kernel_json(out.limit);
    result["steps"] = out.steps;
  } else if (verb == "weighted-sum") {
    if (args.empty() || args.size() % 2 != 0) usage("weighted-sum expects: weighted-sum <w1> <k1> [<w2> <k2> ...]");
    std::vector<WeightedKernel> terms;
    Json echo = Json::array();
    for (std::size_t i = 0; i < args.size(); i += 2) {
      const double w = parse_number(args[i], "weight");
      const auto& k = ws.kernel(args[i + 1]);
      echo.push_back({{"weight", w}, {"kernel", kernel_echo(args[i + 1], k)}});
      terms.push_back({w, k.kernel});
    }
    inputs["terms"] = echo;
    const auto sum = weighted_kernel_sum(terms, pol);
    result = kernel_json(sum.sum);
    result["is_direct"] = sum.is_direct;
  } else if (verb == "decompose") {
    expect_args(verb, args, 2, "<algebra> <functional>");
    const auto r = algebra_and_functional(ws, args[0], args[1]);
    inputs["functional"] = functional_echo(args[1], args[0], *r.functional);
    const auto d = decompose(*r.algebra, *r.functional, pol, options.seed);
    Json comps = Json::array();
    for (const auto& c : d.components) {
      comps.push_back({{"weight", c.weight},
                       {"functional", encode(c.functional.values)},
                       {"rep_dim", c.representation.rep_dim},
                       {"irreducible", is_irreducible(c.representation, pol)}});
    }
    result["components"] = comps;
    result["multiplicity_classes"] = d.multiplicity_classes;
    result["reconstruction_error"] = d.reconstruction_error;
  } else if (verb == "equiv") {
    expect_args(verb, args, 3, "<algebra> <functional> <functional>");
    const auto r1 = algebra_and_functional(ws, args[0], args[1]);
    const auto r2 = algebra_and_functional(ws, args[0], args[2]);
    inputs["functionals"] = Json::array({functional_echo(args[1], args[0], *r1.functional),
                                         functional_echo(args[2], args[0], *r2.functional)});
    const auto rep1 = gns_construct(*r1.algebra, *r1.functional, pol);
    const auto rep2 = gns_construct(*r2.algebra, *r2.functional, pol);
    result["intertwiner"] = encode(intertwiner(rep1, rep2, pol));
    result["rep_dim"] = rep1.rep_dim;
  } else if (verb == "pullback") {
    expect_args(verb, args, 2, "<homomorphism> <kernel>");
    const auto& h = ws.homomorphism(args[0]);
    const auto& k = ws.kernel(args[1]);
    if (k.kernel.dim() != h.hom.target().dim()) usage("kernel '" + args[1] + "' does not live on the target algebra");
    inputs["homomorphism"] = {{"name", args[0]}, {"source", h.source}, {"target", h.target},
                              {"matrix", encode(h.hom.matrix())}};
    inputs["kernel"] = kernel_echo(args[1], k);
    const auto pulled = pullback(h.hom, k.kernel, pol);
    result = kernel_json(pulled);
    result["functional"] = encode(kernel_to_functional(h.hom.source(), pulled, pol).values);
  } else if (verb == "audit") {
    expect_args(verb, args, 4, "<algebra> <functional> <functional> <lambda>");
    const auto r1 = algebra_and_functional(ws, args[0], args[1]);
    const auto r2 = algebra_and_functional(ws, args[0], args[2]);
    const double lambda = parse_number(args[3], "scale");
    inputs["functionals"] = Json::array({functional_echo(args[1], args[0], *r1.functional),
                                         functional_echo(args[2], args[0], *r2.functional)});
    inputs["lambda"] = lambda;
    result = checks_json(cone_morphism_audit(*r1.algebra, *r1.functional, *r2.functional, lambda, pol));
  } else if (verb == "roundtrip") {
    expect_args(verb, args, 2, "<algebra> <functional>");
    const auto r = algebra_and_functional(ws, args[0], args[1]);
    inputs["functional"] = functional_echo(args[1], args[0], *r.functional);
    const auto rep = gns_construct(*r.algebra, *r.functional, pol);
    const auto k = rep_to_kernel(rep, pol);
    const auto back = kernel_to_functional(*r.algebra, k, pol);
    const auto direct = functional_to_kernel(*r.algebra, *r.functional, pol);
    result["rep_dim"] = rep.rep_dim;
    result["kernel"] = encode(k.matrix());
    result["functional"] = encode(back.values);
    result["functional_error"] = max_abs(ComplexVector(back.values - r.functional->values));
    result["kernel_error"] = max_abs(ComplexMatrix(k.matrix() - direct.matrix()));
  } else {
    throw Error(ErrorKind::UnknownVerb, "unknown verb '" + verb + "'");
  }

  Json report = Json::object();
  report["command"] = verb;
  report["arguments"] = args;
  report["tolerances"] = {{"rel_rank_tol", pol.rel_rank_tol}, {"psd_tol", pol.psd_tol},
                          {"match_tol", pol.match_tol}};
  report["seed"] = options.seed;
  report["inputs"] = std::move(inputs);
  report["result"] = std::move(result);
  return report;
}

namespace {

bool is_usage_error(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Usage:
    case ErrorKind::UnknownVerb:
    case ErrorKind::UnknownEntity:
    case ErrorKind::ParseError:
    case ErrorKind::IoError:
    case ErrorKind::ValidationError:
      return true;
    default:
      return false;
  }
}

void flatten(const Json& j, const std::string& path, std::ostringstream& out) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) flatten(value, path.empty() ? key : path + "." + key, out);
  } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array()) &&
             !(j.front().is_array() && j.front().size() == 2 && j.front().front().is_number())) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "[" + std::to_string(i) + "]", out);
  } else {
    out << path << " = " << j.dump() << "\n";
  }
}

}  // namespace

std::string render_text(const Json& report) {
  std::ostringstream out;
  flatten(report, "", out);
  return out.str();
}

CommandOutcome execute(const std::string& workspace_path, const std::string& verb,
                       const std::vector<std::string>& args, const CommandOptions& options) {
  CommandOutcome outcome;
  auto render = [&](const Json& j) { return options.text_output ? render_text(j) : j.dump(2) + "\n"; };
  try {
    options.pol.validate();
    const auto ws = parse_workspace(workspace_path, options.pol);
    outcome.report = render(run_command(ws, verb, args, options));
  } catch (const Error& e) {
    outcome.diagnostic = std::string(e.name()) + ": " + e.what() + "\n";
    if (is_usage_error(e.kind())) {
      outcome.exit_code = 2;
    } else {
      outcome.exit_code = 1;
      Json report = Json::object();
      report["command"] = verb;
      report["arguments"] = args;
      report["tolerances"] = {{"rel_rank_tol", options.pol.rel_rank_tol}, {"psd_tol", options.pol.psd_tol},
                              {"match_tol", options.pol.match_tol}};
      report["seed"] = options.seed;
      report["error"] = {{"name", std::string(e.name())}, {"message", e.what()}};
      outcome.report = render(report);
    }
  }
  return outcome;
}

}  // namespace gnskit

#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "gnskit/correspondence.hpp"

namespace gnskit {

using Json = nlohmann::ordered_json;

struct NamedFunctional {
  std::string algebra;
  Functional functional;
};

struct NamedKernel {
  std::optional<std::string> algebra;
  Kernel kernel;
};

struct NamedHomomorphism {
  std::string source;
  std::string target;
  StarHomomorphism hom;
};

/// Named algebras, functionals, kernels and homomorphisms loaded from JSON.
/// Every reference resolves and every algebra validates.
struct Workspace {
  std::map<std::string, FiniteStarAlgebra> algebras;
  std::map<std::string, NamedFunctional> functionals;
  std::map<std::string, NamedKernel> kernels;
  std::map<std::string, NamedHomomorphism> homomorphisms;

  const FiniteStarAlgebra& algebra(const std::string& name) const;
  const NamedFunctional& functional(const std::string& name) const;
  const NamedKernel& kernel(const std::string& name) const;
  const NamedHomomorphism& homomorphism(const std::string& name) const;
};

/// Throws IoError, ParseError, ValidationError.
Workspace parse_workspace(const std::filesystem::path& path, const TolerancePolicy& pol = {});
Workspace parse_workspace_text(std::string_view text, const TolerancePolicy& pol = {},
                               const std::string& origin = "<input>");

/// Canonical explicit encoding; builder shorthands are expanded.
Json serialize_workspace(const Workspace& ws);

// Complex scalars are [re, im]; matrices are row-major nested arrays.
Json encode(Complex z);
Json encode(const ComplexVector& v);
Json encode(const ComplexMatrix& m);
Json encode_algebra(const FiniteStarAlgebra& a);

}  // namespace gnskit

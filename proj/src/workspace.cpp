#include "gnskit/workspace.hpp"

#include <fstream>
#include <sstream>

namespace gnskit {

namespace {

[[noreturn]] void parse_fail(const std::string& where, const std::string& msg) {
  throw Error(ErrorKind::ParseError, where + ": " + msg);
}

const Json& field(const Json& obj, const std::string& key, const std::string& where) {
  if (!obj.is_object()) parse_fail(where, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) parse_fail(where, "missing field '" + key + "'");
  return *it;
}

double decode_real(const Json& j, const std::string& where) {
  if (!j.is_number()) parse_fail(where, "expected a number");
  return j.get<double>();
}

Complex decode_complex(const Json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) parse_fail(where, "expected a complex number [re, im]");
  return {decode_real(j[0], where + "[0]"), decode_real(j[1], where + "[1]")};
}

ComplexVector decode_vector(const Json& j, const std::string& where) {
  if (!j.is_array()) parse_fail(where, "expected an array of complex numbers");
  ComplexVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    v(static_cast<Eigen::Index>(i)) = decode_complex(j[i], where + "[" + std::to_string(i) + "]");
  }
  return v;
}

ComplexMatrix decode_matrix(const Json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) parse_fail(where, "expected a nonempty array of rows");
  const std::size_t rows = j.size();
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  ComplexMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    const std::string row_where = where + "[" + std::to_string(r) + "]";
    if (!j[r].is_array() || j[r].size() != cols) parse_fail(row_where, "ragged matrix row");
    m.row(static_cast<Eigen::Index>(r)) = decode_vector(j[r], row_where).transpose();
  }
  return m;
}

std::vector<std::string> decode_strings(const Json& j, const std::string& where) {
  if (!j.is_array()) parse_fail(where, "expected an array of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_string()) parse_fail(where + "[" + std::to_string(i) + "]", "expected a string");
    out.push_back(j[i].get<std::string>());
  }
  return out;
}

std::vector<int> decode_ints(const Json& j, const std::string& where) {
  if (!j.is_array()) parse_fail(where, "expected an array of integers");
  std::vector<int> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number_integer()) parse_fail(where + "[" + std::to_string(i) + "]", "expected an integer");
    out.push_back(j[i].get<int>());
  }
  return out;
}

std::string line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

template <typename Map>
const typename Map::mapped_type& lookup(const Map& map, const std::string& name, const char* kind) {
  const auto it = map.find(name);
  if (it == map.end()) {
    throw Error(ErrorKind::UnknownEntity, std::string("unknown ") + kind + " '" + name + "'");
  }
  return it->second;
}

FiniteStarAlgebra decode_algebra(const Json& j, const std::string& where,
                                 const std::map<std::string, FiniteStarAlgebra>& known) {
  if (!j.is_object()) parse_fail(where, "expected an object");
  std::vector<std::string> labels;
  if (j.contains("labels")) labels = decode_strings(j["labels"], where + ".labels");

  try {
    if (j.contains("builder")) {
      const auto& builder = j["builder"];
      if (!builder.is_string()) parse_fail(where + ".builder", "expected a string");
      const auto kind = builder.get<std::string>();
      if (kind == "matrix") {
        const auto& m = field(j, "m", where);
        if (!m.is_number_unsigned() || m.get<std::size_t>() == 0) parse_fail(where + ".m", "expected a positive integer");
        return build_matrix_algebra(m.get<std::size_t>());
      }
      if (kind == "cyclic") {
        const auto& order = field(j, "order", where);
        if (!order.is_number_unsigned() || order.get<int>() == 0) parse_fail(where + ".order", "expected a positive integer");
        const int m = order.get<int>();
        std::vector<int> inverses;
        for (int g = 0; g < m; ++g) inverses.push_back((m - g) % m);
        return build_group_algebra(cyclic_group_table(m), inverses, std::move(labels));
      }
      if (kind == "group") {
        const auto& table = field(j, "cayley", where);
        if (!table.is_array()) parse_fail(where + ".cayley", "expected an array of rows");
        std::vector<std::vector<int>> cayley;
        for (std::size_t r = 0; r < table.size(); ++r) {
          cayley.push_back(decode_ints(table[r], where + ".cayley[" + std::to_string(r) + "]"));
        }
        const auto inverses = decode_ints(field(j, "inverses", where), where + ".inverses");
        return build_group_algebra(cayley, inverses, std::move(labels));
      }
      if (kind == "direct_sum") {
        const auto parts = decode_strings(field(j, "summands", where), where + ".summands");
        if (parts.size() < 2) parse_fail(where + ".summands", "need at least two summands");
        auto find = [&](const std::string& name) -> const FiniteStarAlgebra& {
          const auto it = known.find(name);
          if (it == known.end()) parse_fail(where + ".summands", "unknown algebra '" + name + "' (define it earlier)");
          return it->second;
        };
        FiniteStarAlgebra acc = direct_sum_algebra(find(parts[0]), find(parts[1]));
        for (std::size_t i = 2; i < parts.size(); ++i) acc = direct_sum_algebra(acc, find(parts[i]));
        return acc;
      }
      parse_fail(where + ".builder", "unknown builder '" + kind + "'");
    }

    const auto& dim_j = field(j, "dim", where);
    if (!dim_j.is_number_unsigned()) parse_fail(where + ".dim", "expected a positive integer");
    const auto n = dim_j.get<std::size_t>();
    const auto& sc = field(j, "structure_constants", where);
    const std::string sc_where = where + ".structure_constants";
    if (!sc.is_array() || sc.size() != n) parse_fail(sc_where, "expected " + std::to_string(n) + " slices");
    std::vector<Complex> c;
    c.reserve(n * n * n);
    for (std::size_t i = 0; i < n; ++i) {
      const std::string wi = sc_where + "[" + std::to_string(i) + "]";
      if (!sc[i].is_array() || sc[i].size() != n) parse_fail(wi, "expected " + std::to_string(n) + " rows");
      for (std::size_t k = 0; k < n; ++k) {
        const std::string wj = wi + "[" + std::to_string(k) + "]";
        const auto v = decode_vector(sc[i][k], wj);
        if (static_cast<std::size_t>(v.size()) != n) parse_fail(wj, "expected " + std::to_string(n) + " entries");
        for (Eigen::Index m = 0; m < v.size(); ++m) c.push_back(v(m));
      }
    }
    return FiniteStarAlgebra(n, std::move(c), decode_matrix(field(j, "involution", where), where + ".involution"),
                             decode_vector(field(j, "unit", where), where + ".unit"), std::move(labels));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ParseError) throw;
    throw Error(ErrorKind::ParseError, where + ": " + e.what());
  }
}

void require_valid(const FiniteStarAlgebra& a, const std::string& name, const TolerancePolicy& pol) {
  const auto report = validate_algebra(a, pol);
  for (const auto& c : report.checks) {
    if (!c.passed()) {
      std::ostringstream os;
      os << "algebra '" << name << "' violates " << c.name << " by " << c.violation;
      throw Error(ErrorKind::ValidationError, os.str());
    }
  }
}

}  // namespace

const FiniteStarAlgebra& Workspace::algebra(const std::string& name) const {
  return lookup(algebras, name, "algebra");
}
const NamedFunctional& Workspace::functional(const std::string& name) const {
  return lookup(functionals, name, "functional");
}
const NamedKernel& Workspace::kernel(const std::string& name) const {
  return lookup(kernels, name, "kernel");
}
const NamedHomomorphism& Workspace::homomorphism(const std::string& name) const {
  return lookup(homomorphisms, name, "homomorphism");
}

Workspace parse_workspace_text(std::string_view text, const TolerancePolicy& pol,
                               const std::string& origin) {
  Json root;
  try {
    root = Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::ParseError, origin + ": " + line_column(text, e.byte == 0 ? 0 : e.byte - 1) +
                                           ": malformed JSON (" + e.what() + ")");
  }
  if (!root.is_object()) parse_fail(origin, "top level must be an object");

  Workspace ws;
  auto section = [&](const char* key) -> const Json* {
    const auto it = root.find(key);
    if (it == root.end()) return nullptr;
    if (!it->is_object()) parse_fail(std::string(key), "expected an object of named entries");
    return &*it;
  };

  if (const Json* algebras = section("algebras")) {
    for (const auto& [name, entry] : algebras->items()) {
      auto a = decode_algebra(entry, "algebras." + name, ws.algebras);
      require_valid(a, name, pol);
      ws.algebras.emplace(name, std::move(a));
    }
  }

  auto algebra_ref = [&](const Json& j, const std::string& key, const std::string& where) -> const std::string {
    const auto& ref = field(j, key, where);
    if (!ref.is_string()) parse_fail(where + "." + key, "expected an algebra name");
    const auto name = ref.get<std::string>();
    if (!ws.algebras.count(name)) {
      throw Error(ErrorKind::ValidationError, where + "." + key + ": unknown algebra '" + name + "'");
    }
    return name;
  };

  if (const Json* functionals = section("functionals")) {
    for (const auto& [name, entry] : functionals->items()) {
      const std::string where = "functionals." + name;
      const auto alg = algebra_ref(entry, "algebra", where);
      Functional f{decode_vector(field(entry, "values", where), where + ".values")};
      if (static_cast<std::size_t>(f.values.size()) != ws.algebras.at(alg).dim()) {
        throw Error(ErrorKind::ValidationError, where + ": has " + std::to_string(f.values.size()) +
                                                    " values, algebra '" + alg + "' has dimension " +
                                                    std::to_string(ws.algebras.at(alg).dim()));
      }
      ws.functionals.emplace(name, NamedFunctional{alg, std::move(f)});
    }
  }

  if (const Json* kernels = section("kernels")) {
    for (const auto& [name, entry] : kernels->items()) {
      const std::string where = "kernels." + name;
      std::optional<std::string> alg;
      if (entry.is_object() && entry.contains("algebra")) alg = algebra_ref(entry, "algebra", where);
      try {
        if (entry.is_object() && entry.contains("gram_of")) {
          const auto& ref = entry["gram_of"];
          if (!ref.is_string() || !ws.functionals.count(ref.get<std::string>())) {
            throw Error(ErrorKind::ValidationError, where + ".gram_of: unknown functional");
          }
          const auto& nf = ws.functionals.at(ref.get<std::string>());
          if (alg && *alg != nf.algebra) {
            throw Error(ErrorKind::ValidationError, where + ": algebra differs from the functional's");
          }
          alg = nf.algebra;
          ws.kernels.emplace(name, NamedKernel{alg, functional_to_kernel(ws.algebras.at(*alg), nf.functional, pol)});
        } else {
          Kernel k(decode_matrix(field(entry, "matrix", where), where + ".matrix"), pol);
          if (alg && k.dim() != ws.algebras.at(*alg).dim()) {
            throw Error(ErrorKind::ValidationError, where + ": dimension differs from algebra '" + *alg + "'");
          }
          ws.kernels.emplace(name, NamedKernel{alg, std::move(k)});
        }
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::ParseError || e.kind() == ErrorKind::ValidationError) throw;
        throw Error(ErrorKind::ValidationError, where + ": " + std::string(e.name()) + ": " + e.what());
      }
    }
  }

  if (const Json* homs = section("homomorphisms")) {
    for (const auto& [name, entry] : homs->items()) {
      const std::string where = "homomorphisms." + name;
      const auto src = algebra_ref(entry, "source", where);
      const auto tgt = algebra_ref(entry, "target", where);
      auto m = decode_matrix(field(entry, "matrix", where), where + ".matrix");
      try {
        StarHomomorphism hom(ws.algebras.at(src), ws.algebras.at(tgt), std::move(m), pol);
        ws.homomorphisms.emplace(name, NamedHomomorphism{src, tgt, std::move(hom)});
      } catch (const Error& e) {
        throw Error(ErrorKind::ValidationError, where + ": " + std::string(e.name()) + ": " + e.what());
      }
    }
  }

  for (const auto& [key, value] : root.items()) {
    if (key != "algebras" && key != "functionals" && key != "kernels" && key != "homomorphisms") {
      parse_fail(origin, "unknown top-level field '" + key + "'");
    }
  }
  return ws;
}

Workspace parse_workspace(const std::filesystem::path& path, const TolerancePolicy& pol) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw Error(ErrorKind::IoError, "failed reading " + path.string());
  return parse_workspace_text(buf.str(), pol, path.string());
}

Json encode(Complex z) { return Json::array({z.real(), z.imag()}); }

Json encode(const ComplexVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(encode(v(i)));
  return out;
}

Json encode(const ComplexMatrix& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) out.push_back(encode(ComplexVector(m.row(r).transpose())));
  return out;
}

Json encode_algebra(const FiniteStarAlgebra& a) {
  const std::size_t n = a.dim();
  Json sc = Json::array();
  for (std::size_t i = 0; i < n; ++i) {
    Json slice = Json::array();
    for (std::size_t j = 0; j < n; ++j) {
      Json row = Json::array();
      for (std::size_t k = 0; k < n; ++k) row.push_back(encode(a.constant(i, j, k)));
      slice.push_back(std::move(row));
    }
    sc.push_back(std::move(slice));
  }
  Json out = Json::object();
  out["dim"] = n;
  out["structure_constants"] = std::move(sc);
  out["involution"] = encode(a.involution());
  out["unit"] = encode(a.unit());
  if (!a.labels().empty()) out["labels"] = a.labels();
  return out;
}

Json serialize_workspace(const Workspace& ws) {
  Json root = Json::object();
  Json algebras = Json::object();
  // Direct sums may reference other algebras only while parsing; the
  // explicit encoding has no ordering constraints.
  for (const auto& [name, a] : ws.algebras) algebras[name] = encode_algebra(a);
  root["algebras"] = std::move(algebras);

  Json functionals = Json::object();
  for (const auto& [name, f] : ws.functionals) {
    functionals[name] = {{"algebra", f.algebra}, {"values", encode(f.functional.values)}};
  }
  root["functionals"] = std::move(functionals);

  Json kernels = Json::object();
  for (const auto& [name, k] : ws.kernels) {
    Json entry = Json::object();
    if (k.algebra) entry["algebra"] = *k.algebra;
    entry["matrix"] = encode(k.kernel.matrix());
    kernels[name] = std::move(entry);
  }
  root["kernels"] = std::move(kernels);

  Json homs = Json::object();
  for (const auto& [name, h] : ws.homomorphisms) {
    homs[name] = {{"source", h.source}, {"target", h.target}, {"matrix", encode(h.hom.matrix())}};
  }
  root["homomorphisms"] = std::move(homs);
  return root;
}

}  // namespace gnskit

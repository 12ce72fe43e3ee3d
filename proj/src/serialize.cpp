#include "nilseq/serialize.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace nilseq {

namespace {

[[noreturn]] void bad(const std::string& what) {
  throw std::invalid_argument("json: " + what);
}

std::size_t resolve_label(const BasisPtr& basis, const std::string& label) {
  if (!basis) bad("value references basis label '" + label + "' but no basis is given");
  auto idx = basis->index_of(label);
  if (!idx) bad("unknown basis label '" + label + "'");
  return *idx;
}

}  // namespace

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open file: " + path);
  Json j;
  in >> j;
  return j;
}

Json basis_to_json(const BasisPtr& basis) {
  Json j;
  j["name"] = basis ? basis->name() : "";
  j["entries"] = Json::array();
  if (basis)
    for (const auto& e : basis->entries())
      j["entries"].push_back(
          {{"label", e.label}, {"approx", e.approx}, {"definition", e.definition}});
  return j;
}

BasisPtr basis_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("entries")) bad("basis must have entries");
  std::vector<IrrationalBasis::Entry> entries;
  for (const auto& e : j["entries"])
    entries.push_back({e.at("label").get<std::string>(), e.at("approx").get<double>(),
                       e.value("definition", std::string())});
  return make_basis(j.value("name", std::string("basis")), std::move(entries));
}

Json qaffine_to_json(const QAffineReal& v) {
  Json j;
  j["const"] = v.const_term().str();
  if (!v.coeffs().empty()) {
    Json coeffs = Json::object();
    for (const auto& [i, c] : v.coeffs()) coeffs[v.basis()->entry(i).label] = c.str();
    j["coeffs"] = std::move(coeffs);
    j["basis"] = v.basis()->name();
  }
  return j;
}

QAffineReal parse_qaffine(const std::string& text, const BasisPtr& basis) {
  // Terms separated by +/-; each term is "p/q", "label", or "p/q*label".
  QAffineReal acc{Rational(0)};
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_ws();
  if (i == text.size()) bad("empty value");
  bool first = true;
  while (i < text.size()) {
    skip_ws();
    int sign = 1;
    if (text[i] == '+' || text[i] == '-') {
      sign = text[i] == '-' ? -1 : 1;
      ++i;
    } else if (!first) {
      bad("expected + or - in '" + text + "'");
    }
    skip_ws();
    std::size_t start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) &&
           text[i] != '+' && text[i] != '-')
      ++i;
    std::string term = text.substr(start, i - start);
    if (term.empty()) bad("dangling sign in '" + text + "'");
    Rational coeff(sign);
    std::string label;
    auto star = term.find('*');
    if (star != std::string::npos) {
      coeff = coeff * Rational::parse(term.substr(0, star));
      label = term.substr(star + 1);
    } else if (std::isdigit(static_cast<unsigned char>(term[0]))) {
      coeff = coeff * Rational::parse(term);
    } else {
      label = term;
    }
    if (label.empty()) {
      acc = qa_add(acc, QAffineReal(coeff));
    } else {
      acc = qa_add(acc, QAffineReal::symbol(basis, resolve_label(basis, label), coeff));
    }
    first = false;
    skip_ws();
  }
  return acc;
}

QAffineReal qaffine_from_json(const Json& j, const BasisPtr& basis) {
  if (j.is_string()) return parse_qaffine(j.get<std::string>(), basis);
  if (j.is_number_integer()) return QAffineReal(Rational(j.get<long long>()));
  if (!j.is_object()) bad("QAffineReal must be an object or string");
  Rational c = j.contains("const") ? Rational::parse(j["const"].get<std::string>())
                                   : Rational(0);
  std::map<std::size_t, Rational> coeffs;
  if (j.contains("coeffs"))
    for (const auto& [label, val] : j["coeffs"].items())
      coeffs.emplace(resolve_label(basis, label), Rational::parse(val.get<std::string>()));
  BasisPtr ref = coeffs.empty() ? nullptr : basis;
  return QAffineReal(std::move(c), std::move(coeffs), std::move(ref));
}

namespace {

Json system_to_json(const HeisenbergSystem& sys) {
  Json j;
  j["system"] = "heisenberg";
  j["function"] = "gaussian";
  j["d"] = sys.d;
  j["alpha"] = Json::array();
  j["beta"] = Json::array();
  for (const auto& a : sys.alpha) j["alpha"].push_back(qaffine_to_json(a));
  for (const auto& b : sys.beta) j["beta"].push_back(qaffine_to_json(b));
  j["gamma"] = qaffine_to_json(sys.gamma);
  return j;
}

Json system_to_json(const AffineSkewSystem& sys) {
  Json j;
  j["system"] = "affine";
  j["function"] = "e_y";
  j["alpha"] = qaffine_to_json(sys.alpha);
  j["beta"] = qaffine_to_json(sys.beta);
  return j;
}

void check_function_tag(const Json& j, const std::string& expected) {
  std::string tag = j.value("function", expected);
  if (tag != expected)
    bad("unsupported orbit function '" + tag + "' (expected '" + expected + "')");
}

HeisenbergSystem heisenberg_from_json(const Json& j, const BasisPtr& basis) {
  HeisenbergSystem sys;
  sys.d = j.at("d").get<std::size_t>();
  for (const auto& a : j.at("alpha")) sys.alpha.push_back(qaffine_from_json(a, basis));
  for (const auto& b : j.at("beta")) sys.beta.push_back(qaffine_from_json(b, basis));
  sys.gamma = j.contains("gamma") ? qaffine_from_json(j["gamma"], basis)
                                  : QAffineReal(Rational(0));
  if (sys.alpha.size() != sys.d || sys.beta.size() != sys.d)
    bad("heisenberg system: alpha/beta length must equal d");
  return sys;
}

}  // namespace

Json heisenberg_system_to_json(const HeisenbergSystem& sys) { return system_to_json(sys); }

Json expr_to_json(const ExprPtr& e) {
  if (!e) bad("null expression");
  return std::visit(
      [](const auto& node) -> Json {
        using T = std::decay_t<decltype(node)>;
        Json j;
        if constexpr (std::is_same_v<T, ExpNode>) {
          j["exp"] = qaffine_to_json(node.s);
        } else if constexpr (std::is_same_v<T, QuadNode>) {
          j["quad"] = qaffine_to_json(node.t);
        } else if constexpr (std::is_same_v<T, OmegaNode>) {
          j["omega"] = Json::array({qaffine_to_json(node.alpha), qaffine_to_json(node.beta)});
        } else if constexpr (std::is_same_v<T, ProductNode>) {
          j["prod"] = Json::array();
          for (const auto& c : node.children) j["prod"].push_back(expr_to_json(c));
        } else if constexpr (std::is_same_v<T, SumNode>) {
          j["sum"] = Json::array();
          for (const auto& [coef, term] : node.terms)
            j["sum"].push_back({{"coef", Json::array({coef.real(), coef.imag()})},
                                {"term", expr_to_json(term)}});
        } else if constexpr (std::is_same_v<T, ConjNode>) {
          j["conj"] = expr_to_json(node.child);
        } else if constexpr (std::is_same_v<T, ShiftNode>) {
          j["shift"] = {{"k", node.k}, {"of", expr_to_json(node.child)}};
        } else if constexpr (std::is_same_v<T, OrbitNode>) {
          if (const auto* h = std::get_if<HeisenbergSystem>(&node.system))
            j["orbit"] = system_to_json(*h);
          else
            j["orbit"] = system_to_json(std::get<AffineSkewSystem>(node.system));
        } else if constexpr (std::is_same_v<T, FloorLinearNode>) {
          j["floorlin"] =
              Json::array({qaffine_to_json(node.alpha), qaffine_to_json(node.beta)});
        } else {
          static_assert(std::is_same_v<T, FloorQuadNode>);
          j["floorquad"] =
              Json::array({qaffine_to_json(node.alpha), qaffine_to_json(node.beta)});
        }
        return j;
      },
      e->node());
}

ExprPtr expr_from_json(const Json& j, const BasisPtr& basis) {
  if (!j.is_object() || j.size() != 1) bad("expression node must have exactly one key");
  auto it = j.begin();
  const std::string& key = it.key();
  const Json& val = it.value();
  if (key == "exp") return make_exp(qaffine_from_json(val, basis));
  if (key == "quad") return make_quad(qaffine_from_json(val, basis));
  if (key == "omega")
    return make_omega(qaffine_from_json(val.at(0), basis),
                      qaffine_from_json(val.at(1), basis));
  if (key == "prod") {
    std::vector<ExprPtr> children;
    for (const auto& c : val) children.push_back(expr_from_json(c, basis));
    return make_product(std::move(children));
  }
  if (key == "sum") {
    std::vector<std::pair<std::complex<double>, ExprPtr>> terms;
    for (const auto& t : val) {
      std::complex<double> coef(t.at("coef").at(0).get<double>(),
                                t.at("coef").at(1).get<double>());
      terms.emplace_back(coef, expr_from_json(t.at("term"), basis));
    }
    return make_sum(std::move(terms));
  }
  if (key == "conj") return make_conj(expr_from_json(val, basis));
  if (key == "shift")
    return shift(expr_from_json(val.at("of"), basis), val.at("k").get<std::int64_t>());
  if (key == "orbit") {
    std::string kind = val.at("system").get<std::string>();
    if (kind == "heisenberg") {
      check_function_tag(val, "gaussian");
      return make_orbit(heisenberg_from_json(val, basis));
    }
    if (kind == "affine") {
      check_function_tag(val, "e_y");
      return make_orbit(AffineSkewSystem{qaffine_from_json(val.at("alpha"), basis),
                                         qaffine_from_json(val.at("beta"), basis)});
    }
    bad("unknown orbit system '" + kind + "'");
  }
  if (key == "floorlin")
    return make_floor_linear(qaffine_from_json(val.at(0), basis),
                             qaffine_from_json(val.at(1), basis));
  if (key == "floorquad")
    return make_floor_quad(qaffine_from_json(val.at(0), basis),
                           qaffine_from_json(val.at(1), basis));
  bad("unknown expression node '" + key + "'");
}

ExprFile load_expr_file(const std::string& path, BasisPtr fallback_basis) {
  Json j = load_json_file(path);
  ExprFile f;
  f.basis = j.contains("basis") ? basis_from_json(j["basis"]) : fallback_basis;
  if (!j.contains("expr")) bad("expression file needs an 'expr' field");
  f.expr = expr_from_json(j["expr"], f.basis);
  return f;
}

Json class_params_to_json(const ClassParams& p) {
  Json j;
  j["schema"] = kSchemaTag;
  j["t"] = qaffine_to_json(p.t());
  j["pairs"] = Json::array();
  for (const auto& [a, b] : p.pairs())
    j["pairs"].push_back(Json::array({qaffine_to_json(a), qaffine_to_json(b)}));
  return j;
}

ClassParams class_params_from_json(const Json& j, const BasisPtr& basis) {
  QAffineReal t = j.contains("t") ? qaffine_from_json(j["t"], basis)
                                  : QAffineReal(Rational(0));
  std::vector<std::pair<QAffineReal, QAffineReal>> pairs;
  if (j.contains("pairs"))
    for (const auto& pr : j["pairs"])
      pairs.emplace_back(qaffine_from_json(pr.at(0), basis),
                         qaffine_from_json(pr.at(1), basis));
  return ClassParams(std::move(t), std::move(pairs));
}

ClassParamsFile load_class_params_file(const std::string& path, BasisPtr fallback_basis) {
  Json j = load_json_file(path);
  BasisPtr basis = j.contains("basis") ? basis_from_json(j["basis"]) : fallback_basis;
  return {basis, class_params_from_json(j, basis)};
}

Json ratmatrix_to_json(const RatMatrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c).str());
    rows.push_back(std::move(row));
  }
  return rows;
}

RatMatrix ratmatrix_from_json(const Json& j) {
  if (!j.is_array()) bad("matrix must be an array of rows");
  std::size_t rows = j.size();
  std::size_t cols = rows ? j[0].size() : 0;
  RatMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (j[r].size() != cols) bad("ragged matrix");
    for (std::size_t c = 0; c < cols; ++c)
      m(r, c) = Rational::parse(j[r][c].get<std::string>());
  }
  return m;
}

Json witness_to_json(const ClassWitness& w) {
  Json j;
  j["schema"] = kSchemaTag;
  j["m"] = w.m();
  j["k"] = w.k();
  j["l"] = w.l();
  j["Q"] = ratmatrix_to_json(w.q());
  return j;
}

ClassWitness witness_from_json(const Json& j) {
  return ClassWitness(ratmatrix_from_json(j.at("Q")), j.at("m").get<long long>(),
                      j.at("k").get<std::vector<long long>>(),
                      j.at("l").get<std::vector<long long>>());
}

ClassWitness load_witness_file(const std::string& path) {
  return witness_from_json(load_json_file(path));
}

PolarizedFile polarized_file_from_json(const Json& j, BasisPtr fallback_basis) {
  BasisPtr basis = j.contains("basis") ? basis_from_json(j["basis"]) : fallback_basis;
  std::size_t d = j.at("d").get<std::size_t>();
  auto a = j.at("A").get<std::vector<std::vector<long long>>>();
  std::vector<QAffineReal> delta;
  for (const auto& v : j.at("delta")) delta.push_back(qaffine_from_json(v, basis));
  QAffineReal gamma0 = j.contains("gamma0") ? qaffine_from_json(j["gamma0"], basis)
                                            : QAffineReal(Rational(0));
  return {basis, PolarizedSystem(d, std::move(a), std::move(delta), std::move(gamma0))};
}

PolarizedFile load_polarized_file(const std::string& path, BasisPtr fallback_basis) {
  return polarized_file_from_json(load_json_file(path), std::move(fallback_basis));
}

}  // namespace nilseq

#include "doctest.h"

#include <cstdio>
#include <fstream>

#include "nilseq/rng.hpp"
#include "nilseq/serialize.hpp"

using namespace nilseq;

namespace {

BasisPtr basis() {
  static BasisPtr b = standard_basis();
  return b;
}

QAffineReal xi(std::size_t i, Rational c = Rational(1)) {
  return QAffineReal::symbol(basis(), i, c);
}

QAffineReal rat(long long p, long long q = 1) { return QAffineReal(Rational(p, q)); }

// Random expression tree for the round-trip property.
ExprPtr random_expr(CounterRng& rng, int depth) {
  auto leaf_value = [&] {
    QAffineReal v = rat(rng.range(-5, 5), rng.range(1, 6));
    if (rng.below(2)) v = qa_add(v, xi(rng.below(4), Rational(rng.range(1, 3))));
    return v;
  };
  if (depth == 0 || rng.below(3) == 0) {
    switch (rng.below(4)) {
      case 0: return make_exp(leaf_value());
      case 1: return make_quad(leaf_value());
      case 2: return make_floor_linear(leaf_value(), leaf_value());
      default: return make_omega(leaf_value(), leaf_value());
    }
  }
  switch (rng.below(4)) {
    case 0: {
      std::vector<ExprPtr> children;
      for (int i = 0; i < 2 + static_cast<int>(rng.below(2)); ++i)
        children.push_back(random_expr(rng, depth - 1));
      return make_product(std::move(children));
    }
    case 1:
      return make_sum({{std::complex<double>(rng.uniform01(), rng.uniform01()),
                        random_expr(rng, depth - 1)},
                       {std::complex<double>(-rng.uniform01(), 0.25),
                        random_expr(rng, depth - 1)}});
    case 2: return make_conj(random_expr(rng, depth - 1));
    default: return shift(random_expr(rng, depth - 1), rng.range(-10, 10));
  }
}

}  // namespace

TEST_CASE("qaffine json round trip") {
  QAffineReal v = qa_add(rat(-7, 3), xi(1, Rational(5, 4)));
  Json j = qaffine_to_json(v);
  CHECK(j["const"] == "-7/3");
  CHECK(j["coeffs"]["xi2"] == "5/4");
  CHECK(qaffine_from_json(j, basis()) == v);
}

TEST_CASE("qaffine string shorthand") {
  CHECK(parse_qaffine("1/2", basis()) == rat(1, 2));
  CHECK(parse_qaffine("xi1", basis()) == xi(0));
  CHECK(parse_qaffine("-1/4 + 3/2*xi2", basis()) ==
        qa_add(rat(-1, 4), xi(1, Rational(3, 2))));
  CHECK(parse_qaffine("2 - xi3", basis()) == qa_sub(rat(2), xi(2)));
  CHECK_THROWS_AS(parse_qaffine("nope!", basis()), std::invalid_argument);
  CHECK_THROWS_AS(parse_qaffine("", basis()), std::invalid_argument);
}

TEST_CASE("basis json round trip") {
  Json j = basis_to_json(basis());
  BasisPtr back = basis_from_json(j);
  CHECK(back->size() == basis()->size());
  CHECK(back->entry(2).label == "xi3");
  CHECK(back->entry(2).approx == basis()->entry(2).approx);
}

TEST_CASE("expression round trip preserves pointwise values") {
  CounterRng rng(2024, 0);
  for (int trial = 0; trial < 40; ++trial) {
    ExprPtr e = random_expr(rng, 3);
    ExprPtr back = expr_from_json(expr_to_json(e), basis());
    for (std::int64_t n : {0, 1, -7, 123, -4096}) {
      auto lhs = eval(e, n);
      auto rhs = eval(back, n);
      CHECK(std::abs(lhs - rhs) < 1e-15);
    }
  }
}

TEST_CASE("expr file loading with embedded basis") {
  const char* path = "serialize_test_expr.json";
  {
    std::ofstream out(path);
    out << R"json({
      "schema": "nilseq/1",
      "basis": {"name": "standard", "entries": [
        {"label": "xi1", "approx": 1.4142135623730951, "definition": "sqrt(2)"},
        {"label": "xi2", "approx": 1.7320508075688772, "definition": "sqrt(3)"}
      ]},
      "expr": {"prod": [{"exp": "1/2"}, {"quad": "xi1"}, {"omega": ["xi1", "xi2"]}]}
    })json";
  }
  ExprFile f = load_expr_file(path);
  CHECK(f.basis->size() == 2);
  const auto* prod = std::get_if<ProductNode>(&f.expr->node());
  REQUIRE(prod != nullptr);
  CHECK(prod->children.size() == 3);
  std::remove(path);
}

TEST_CASE("class params and witness json round trip") {
  ClassParams p(xi(1, Rational(1, 2)), {{xi(0), xi(1)}});
  Json pj = class_params_to_json(p);
  CHECK(pj["schema"] == "nilseq/1");
  ClassParams back = class_params_from_json(pj, basis());
  CHECK(back.t() == p.t());
  CHECK(back.pairs()[0].first == p.pairs()[0].first);

  ClassWitness w(j_matrix(1), 2, {1}, {0});
  ClassWitness wback = witness_from_json(witness_to_json(w));
  CHECK(wback.m() == 2);
  CHECK(wback.q() == j_matrix(1));
  CHECK(wback.k() == std::vector<long long>{1});
}

TEST_CASE("ratmatrix json round trip") {
  RatMatrix m(2, 3);
  m(0, 0) = Rational(1, 2);
  m(1, 2) = Rational(-7);
  CHECK(ratmatrix_from_json(ratmatrix_to_json(m)) == m);
}

TEST_CASE("malformed input is rejected") {
  CHECK_THROWS_AS(expr_from_json(Json{{"bogus", 1}}, basis()), std::invalid_argument);
  CHECK_THROWS_AS(qaffine_from_json(Json{{"coeffs", {{"zz", "1"}}}}, basis()),
                  std::invalid_argument);
  CHECK_THROWS_AS(load_json_file("/nonexistent/file.json"), std::invalid_argument);
}

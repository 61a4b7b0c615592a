#include <doctest.h>

#include <random>

#include "effham/expr.hpp"

using namespace effham;

TEST_CASE("eval basics") {
  CHECK(eval(Expr::constant(2.5), {}) == 2.5);

  // (sqrt(kappa^2 + 1) - 1)/kappa at kappa = 1
  Expr k = Expr::parameter("kappa");
  Expr t = (Expr::sqrt(k * k + Expr::constant(1)) - Expr::constant(1)) / k;
  CHECK(eval(t, {{"kappa", 1.0}}) ==
        doctest::Approx(std::sqrt(2.0) - 1.0).epsilon(1e-12));

  CHECK_THROWS_WITH_AS(eval(k, {{"other", 1.0}}),
                       doctest::Contains("kappa"), ExprError);
  Expr bad = Expr::constant(1) / (k - Expr::constant(1));
  CHECK_THROWS_WITH_AS(eval(bad, {{"kappa", 1.0}}),
                       doctest::Contains("division by zero"), ExprError);
  CHECK_THROWS_WITH_AS(eval(Expr::sqrt(k), {{"kappa", -2.0}}),
                       doctest::Contains("sqrt"), ExprError);
}

TEST_CASE("hash consing shares structurally equal nodes") {
  Expr a = Expr::parameter("a");
  Expr sum = a + a;
  CHECK(node_count(sum) == 2);  // shared leaf + add node
  Expr b1 = Expr::parameter("x") * Expr::constant(3);
  Expr b2 = Expr::parameter("x") * Expr::constant(3);
  CHECK(b1.id() == b2.id());
}

TEST_CASE("construction identities") {
  Expr a = Expr::parameter("a");
  CHECK((a + Expr::constant(0)).id() == a.id());
  CHECK((a * Expr::constant(1)).id() == a.id());
  CHECK((a * Expr::constant(0)).is_constant(0.0));
  CHECK((a - Expr::constant(0)).id() == a.id());
  CHECK((a / Expr::constant(1)).id() == a.id());
  CHECK((-(-a)).id() == a.id());
}

TEST_CASE("simplify folds constants and keeps semantics") {
  Expr a = Expr::parameter("a");
  CHECK(simplify(a + Expr::constant(0)).id() == a.id());
  Expr m = Expr::constant(2) * Expr::constant(3);
  CHECK(simplify(m).is_constant(6.0));
  CHECK(simplify(Expr::sqrt(Expr::constant(9))).is_constant(3.0));
}

namespace {

Expr random_graph(std::mt19937_64& rng, int budget) {
  std::uniform_int_distribution<int> pick(0, 6);
  std::uniform_real_distribution<double> cval(0.1, 3.0);
  std::vector<Expr> pool = {Expr::parameter("x"), Expr::parameter("y"),
                            Expr::parameter("z"), Expr::constant(cval(rng))};
  auto any = [&]() -> Expr {
    std::uniform_int_distribution<std::size_t> d(0, pool.size() - 1);
    return pool[d(rng)];
  };
  for (int i = 0; i < budget; ++i) {
    Expr e = any();
    switch (pick(rng)) {
      case 0: pool.push_back(e + any()); break;
      case 1: pool.push_back(e - any()); break;
      case 2: pool.push_back(e * any()); break;
      // divisor shifted away from zero so random envs stay in-domain
      case 3: pool.push_back(e / (Expr::abs(any()) + Expr::constant(1))); break;
      case 4: pool.push_back(-e); break;
      case 5: pool.push_back(Expr::sqrt(Expr::abs(e))); break;
      default: pool.push_back(Expr::abs(e)); break;
    }
  }
  return pool.back();
}

}  // namespace

TEST_CASE("simplify is semantics-preserving on random graphs") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 10; ++trial) {
    Expr e = random_graph(rng, 200);
    Expr s = simplify(e);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int i = 0; i < 100; ++i) {
      ParamEnv env{{"x", u(rng)}, {"y", u(rng)}, {"z", u(rng)}};
      const double v0 = eval(e, env);
      const double v1 = eval(s, env);
      CHECK(std::abs(v0 - v1) <= 1e-12 * std::max(1.0, std::abs(v0)));
    }
  }
}

TEST_CASE("infix emission round-trips") {
  Expr a = Expr::parameter("a");
  CHECK(emit_infix(a + Expr::constant(1)) == "a + 1");

  std::mt19937_64 rng(55);
  for (int trial = 0; trial < 20; ++trial) {
    Expr e = random_graph(rng, 60);
    Expr back = parse_infix(emit_infix(e));
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int i = 0; i < 20; ++i) {
      ParamEnv env{{"x", u(rng)}, {"y", u(rng)}, {"z", u(rng)}};
      CHECK(eval(e, env) ==
            doctest::Approx(eval(back, env)).epsilon(1e-12));
    }
  }
}

TEST_CASE("graph json lists reachable nodes with layer tags") {
  Expr x = Expr::parameter("x");
  Expr e = Expr::sqrt(x * x + Expr::constant(1));
  std::map<std::uint64_t, int> layers{{e.id(), 2}};
  const std::string j = emit_graph_json(e, &layers);
  CHECK(j.find("\"kind\":\"sqrt\"") != std::string::npos);
  CHECK(j.find("\"name\":\"x\"") != std::string::npos);
  CHECK(j.find("\"layer\":0") != std::string::npos);  // parameter layer
  CHECK(j.find("\"layer\":2") != std::string::npos);  // tagged root
  CHECK(j.find("\"root\":" + std::to_string(e.id())) != std::string::npos);
}

TEST_CASE("node_count counts distinct nodes") {
  CHECK(node_count(Expr::constant(4)) == 1);
  Expr x = Expr::parameter("x");
  Expr shared = (x + Expr::constant(2)) * (x + Expr::constant(2));
  // x, 2, add, mul
  CHECK(node_count(shared) == 4);
}

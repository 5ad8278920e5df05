#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "helpers.hpp"
#include "sdpctc/generators.hpp"
#include "sdpctc/pipeline.hpp"
#include "sdpctc/reference.hpp"
#include "sdpctc/sdpa.hpp"

using namespace sdpctc;

namespace {

void check_same_matrix(SparseSymmetric a, SparseSymmetric b) {
  a.coalesce();
  b.coalesce();
  REQUIRE(a.nnz() == b.nnz());
  for (std::size_t k = 0; k < a.nnz(); ++k) {
    CHECK(a.entries()[k].row == b.entries()[k].row);
    CHECK(a.entries()[k].col == b.entries()[k].col);
    CHECK(a.entries()[k].value == b.entries()[k].value);
  }
}

void check_same_problem(const SdpProblem& a, const SdpProblem& b) {
  REQUIRE(a.n == b.n);
  REQUIRE(a.m() == b.m());
  check_same_matrix(a.C, b.C);
  for (int i = 0; i < a.m(); ++i) {
    check_same_matrix(a.A[i], b.A[i]);
    CHECK(a.b[i] == b.b[i]);
    CHECK(a.sense[i] == b.sense[i]);
  }
}

SdpProblem round_trip(const SdpProblem& p) {
  std::ostringstream out;
  write_sdpa(out, p);
  std::istringstream in(out.str());
  return read_sdpa(in);
}

ErrorCode parse_error_of(const std::string& text, std::string* what = nullptr) {
  std::istringstream in(text);
  try {
    (void)read_sdpa(in);
  } catch (const Error& e) {
    if (what) *what = e.what();
    return e.code();
  }
  return ErrorCode::InvalidArgument;
}

double pipeline_value(const SdpProblem& sdp, Method m = Method::Dctc) {
  PipelineOptions opts;
  opts.method = m;
  opts.ipm.eps = 1e-9;
  return solve_sdp(sdp, opts).objective;
}

}  // namespace

TEST_CASE("hand-written sparse SDPA file") {
  std::istringstream in("\"a 1x1 problem\"\n1\n1\n1\n1.0\n0 1 1 1 -2\n1 1 1 1 1\n");
  const SdpProblem p = read_sdpa(in);
  CHECK(p.n == 1);
  CHECK(p.m() == 1);
  CHECK(p.C.to_dense()(0, 0) == 2.0);
  CHECK(p.A[0].to_dense()(0, 0) == 1.0);
  CHECK(p.b[0] == 1.0);
  CHECK(p.sense[0] == Sense::Eq);
}

TEST_CASE("malformed SDPA input") {
  std::string what;
  CHECK(parse_error_of("1\n1\n1\n1.0\n0 1 1 1 -2\n1 1 1 1\n", &what) == ErrorCode::ParseError);
  CHECK(what.find("line 6") != std::string::npos);
  CHECK(parse_error_of("1\n1\n1\n1.0\n0 1 1 x 2\n") == ErrorCode::ParseError);
  CHECK(parse_error_of("1\n1\n") == ErrorCode::ParseError);
  CHECK(parse_error_of("1\n2\n2 2\n1.0\n1 1 1 1 1\n") == ErrorCode::UnsupportedBlockStructure);
  CHECK(parse_error_of("1\n1\n-2\n1.0\n1 1 1 1 1\n") == ErrorCode::UnsupportedBlockStructure);
}

TEST_CASE("SDPA round trip") {
  check_same_problem(round_trip(gen_maxkcut(path_graph(2), 2)), gen_maxkcut(path_graph(2), 2));
  check_same_problem(round_trip(gen_maxkcut(cycle_graph(5), 3)), gen_maxkcut(cycle_graph(5), 3));
  check_same_problem(round_trip(gen_lovasz_theta(cycle_graph(6))), gen_lovasz_theta(cycle_graph(6)));
  std::mt19937_64 rng(3);
  const SdpProblem r = testkit::random_separable_instance(9, rng);
  check_same_problem(round_trip(r), r);
  SdpProblem le = gen_maxcut(path_graph(3));
  SparseSymmetric a(3);
  a.add(2, 0, 0.25);
  le.add_constraint(a, 0.1, Sense::Le);
  check_same_problem(round_trip(le), le);
}

TEST_CASE("generator structure") {
  Graph w = Graph::from_edges(3, {{0, 1, 2.0}, {1, 2, 0.5}});
  const SdpProblem mc = gen_maxkcut(w, 2);
  CHECK(mc.m() == 3);
  const Mat c = mc.C.to_dense();
  CHECK(c(0, 0) == doctest::Approx(-0.25 * 2.0));
  CHECK(c(1, 1) == doctest::Approx(-0.25 * 2.5));
  CHECK(c(0, 1) == doctest::Approx(0.25 * 2.0));

  const SdpProblem k3 = gen_maxkcut(w, 3);
  CHECK(k3.m() == 5);
  int ge = 0;
  for (int i = 0; i < k3.m(); ++i)
    if (k3.sense[i] == Sense::Ge) {
      ++ge;
      CHECK(k3.b[i] == doctest::Approx(-0.5));
    }
  CHECK(ge == 2);

  const SdpProblem th = gen_lovasz_theta(cycle_graph(5));
  CHECK(th.n == 6);
  CHECK(th.m() == 6);

  std::mt19937_64 rng(4);
  for (int t = 0; t < 10; ++t) {
    const Graph g = testkit::random_graph(12, t, rng);
    for (const SdpProblem& p : {gen_maxcut(g), gen_maxkcut(g, 3), gen_lovasz_theta(g)}) {
      std::vector<const SparseSymmetric*> mats{&p.C};
      for (const auto& a : p.A) mats.push_back(&a);
      const TreeDecomposition td = decompose(sparsity_graph(p.n, mats));
      const Splitter sp(td);
      for (const auto& a : p.A) CHECK(sp.is_partially_separable(a));
    }
  }
}

TEST_CASE("Lovasz theta values") {
  for (int n = 3; n <= 5; ++n) CHECK(-pipeline_value(gen_lovasz_theta(Graph(n))) == doctest::Approx(n).epsilon(1e-6));
  for (int n = 3; n <= 5; ++n) CHECK(-pipeline_value(gen_lovasz_theta(complete_graph(n))) == doctest::Approx(1.0).epsilon(1e-6));
  const double pi = std::acos(-1.0);
  for (int n : {5, 7, 9}) {
    const double want = n * std::cos(pi / n) / (1 + std::cos(pi / n));
    CHECK(-pipeline_value(gen_lovasz_theta(cycle_graph(n))) == doctest::Approx(want).epsilon(1e-6));
  }
}

TEST_CASE("cut relaxation values") {
  CHECK(-pipeline_value(gen_maxkcut(path_graph(2), 2)) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(-pipeline_value(gen_maxkcut(path_graph(2), 3)) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(std::abs(pipeline_value(gen_maxcut(Graph(4)))) <= 1e-6);
  const double pi = std::acos(-1.0);
  for (int n : {5, 7, 11}) {
    const double want = 0.5 * n * (1 + std::cos(pi / n));
    CHECK(-pipeline_value(gen_maxcut(cycle_graph(n))) == doctest::Approx(want).epsilon(1e-6));
  }
  CHECK(-pipeline_value(gen_maxcut(path_graph(30))) == doctest::Approx(29.0).epsilon(1e-6));
}

TEST_CASE("dense reference oracle") {
  IpmOptions opts;
  opts.eps = 1e-9;
  SdpProblem toy;
  toy.n = 1;
  toy.C = SparseSymmetric(1);
  toy.C.add(0, 0, 1.0);
  SparseSymmetric a(1);
  a.add(0, 0, 1.0);
  toy.add_constraint(a, 1.0);
  CHECK(dense_reference_solve(toy, opts).X(0, 0) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(-dense_reference_solve(gen_lovasz_theta(cycle_graph(5)), opts).objective ==
        doctest::Approx(std::sqrt(5.0)).epsilon(1e-6));

  const SdpProblem path = gen_path_rayleigh({2, 2, 2, 2, 2, 2}, {1, 1, 1, 1, 1}, {1, 1.1, 1.2, 1.3, 1.4, 1.5},
                                            {0, 0, 0, 0, 0});
  const double ref = dense_reference_solve(path, opts).objective;
  CHECK(pipeline_value(path, Method::DctcAux) == doctest::Approx(ref).epsilon(1e-6));
  CHECK(pipeline_value(path, Method::Ctc) == doctest::Approx(ref).epsilon(1e-6));
  try {
    (void)pipeline_value(path, Method::Dctc);
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::StructureViolation);
  }

  SdpProblem big;
  big.n = 51;
  big.C = SparseSymmetric(51);
  CHECK_THROWS_AS((void)dense_reference_solve(big, opts), Error);
}

TEST_CASE("metrics JSON and solution file") {
  PipelineOptions opts;
  const PipelineResult res = solve_sdp(gen_maxcut(path_graph(2)), opts);
  const std::string js = metrics_json(res);
  for (const char* key : {"\"pinf\"", "\"dinf\"", "\"gap\"", "\"L\"", "\"iters\"", "\"time_per_iter_s\"", "\"omega\"", "\"ell\""})
    CHECK(js.find(key) != std::string::npos);
  std::ostringstream sol;
  write_solution(sol, res.U);
  std::istringstream back(sol.str());
  int n = 0, r = 0;
  back >> n >> r;
  CHECK(n == 2);
  CHECK(r == res.U.cols());
  CHECK(parse_method("dctc-aux") == Method::DctcAux);
  CHECK_THROWS_AS((void)parse_method("fast"), Error);
}

#include <doctest.h>

#include <random>
#include <set>

#include "helpers.hpp"
#include "sdpctc/block_cholesky.hpp"
#include "sdpctc/generators.hpp"
#include "sdpctc/ipm.hpp"
#include "sdpctc/normal_system.hpp"
#include "sdpctc/pipeline.hpp"

using namespace sdpctc;

namespace {

Scaling scaling_at_start(const ConicProgram& prog) {
  const Vec e = prog.cone.identity();
  return prog.cone.scaling_point(e, e);
}

Scaling random_scaling(const ConicProgram& prog, std::mt19937_64& rng) {
  const auto& k = prog.cone;
  Vec x(k.dim()), s(k.dim());
  std::normal_distribution<double> nd;
  for (Vec* v : {&x, &s})
    for (const auto& seg : k.segments()) {
      if (seg.kind == ConeKind::Psd) {
        v->segment(seg.offset, seg.dim()) = svec(testkit::random_pd(seg.size, rng, 0.3));
      } else if (seg.kind == ConeKind::NonNeg) {
        for (int i = 0; i < seg.size; ++i) (*v)(seg.offset + i) = 0.2 + std::abs(nd(rng));
      } else {
        Vec u(seg.size);
        for (int i = 1; i < seg.size; ++i) u(i) = 0.3 * nd(rng);
        u(0) = u.tail(seg.size - 1).norm() + 0.5;
        v->segment(seg.offset, seg.size) = u;
      }
    }
  return k.scaling_point(x, s);
}

}  // namespace

TEST_CASE("topological permutation") {
  CHECK(topological_permutation({1, 1}) == std::vector<int>{0, 1});
  CHECK(topological_permutation({0, 1, 2}) == std::vector<int>{0, 1, 2});
  const std::vector<int> star{4, 4, 4, 4, 4};
  const auto order = topological_permutation(star);
  CHECK(order.back() == 4);
  std::mt19937_64 rng(8);
  for (int t = 0; t < 20; ++t) {
    const auto parent = testkit::random_tree(15, rng);
    const auto ord = topological_permutation(parent);
    std::vector<int> pos(parent.size());
    for (std::size_t k = 0; k < ord.size(); ++k) pos[ord[k]] = static_cast<int>(k);
    for (std::size_t j = 0; j < parent.size(); ++j)
      if (parent[j] != static_cast<int>(j)) CHECK(pos[j] < pos[parent[j]]);
  }
}

TEST_CASE("block Cholesky keeps the tree pattern") {
  BlockTreeMatrix diag({2, 3, 1}, {0, 1, 2});
  for (int j = 0; j < 3; ++j) diag.diag[j] = Mat::Identity(diag.sizes[j], diag.sizes[j]) * (j + 2.0);
  BlockCholesky c0;
  c0.factor(diag);
  CHECK(c0.stats().offdiag_blocks == 0);
  CHECK(testkit::nonzero_lower_blocks(c0.dense_factor_permuted(), {2, 3, 1}) == 0);

  std::mt19937_64 rng(101);
  BlockTreeMatrix path({2, 2, 2}, {1, 2, 2});
  for (int j = 0; j < 3; ++j) path.diag[j] = testkit::random_pd(2, rng, 4.0);
  path.off[0] = Mat::Ones(2, 2);
  path.off[1] = Mat::Ones(2, 2);
  BlockCholesky cp;
  cp.factor(path);
  const Mat lp = cp.dense_factor_permuted();
  CHECK(testkit::nonzero_lower_blocks(lp, {2, 2, 2}) == 2);
  CHECK((lp * lp.transpose() - path.to_dense()).norm() <= 1e-12 * path.to_dense().norm());

  for (int trial = 0; trial < 60; ++trial) {
    const BlockTreeMatrix h = testkit::random_tree_matrix(2 + trial % 25, 6, rng);
    BlockCholesky chol;
    chol.factor(h);
    const auto& order = chol.order();
    std::vector<int> perm_sizes;
    for (int j : order) perm_sizes.push_back(h.sizes[j]);
    const Mat l = chol.dense_factor_permuted();
    const auto offs = h.offsets();
    Mat p = Mat::Zero(h.dim(), h.dim());
    int row = 0;
    for (int j : order)
      for (int k = 0; k < h.sizes[j]; ++k) p(row++, offs[j] + k) = 1.0;
    const Mat phpt = p * h.to_dense() * p.transpose();
    const Eigen::LLT<Mat> oracle(phpt);
    CHECK((l - Mat(oracle.matrixL())).norm() <= 1e-10 * (1 + phpt.norm()));
    CHECK(testkit::nonzero_lower_blocks(l, perm_sizes) == testkit::nonzero_lower_blocks(Mat(phpt.triangularView<Eigen::Lower>()), perm_sizes));
    CHECK(chol.stats().fill_blocks == 0);
    CHECK(testkit::block_fill(testkit::block_pattern(h), order) == 0);

    const Vec r = Vec::Random(h.dim());
    CHECK((h.multiply(chol.solve(r)) - r).norm() <= 1e-10 * (1 + r.norm()));
  }
}

TEST_CASE("hub-first elimination fills a star") {
  const int leaves = 6;
  std::vector<int> parent(leaves + 1, leaves);
  BlockTreeMatrix h(std::vector<int>(leaves + 1, 1), parent);
  std::vector<int> leaves_first, hub_first{leaves};
  for (int j = 0; j < leaves; ++j) {
    leaves_first.push_back(j);
    hub_first.push_back(j);
  }
  leaves_first.push_back(leaves);
  const auto pat = testkit::block_pattern(h);
  CHECK(testkit::block_fill(pat, leaves_first) == 0);
  CHECK(testkit::block_fill(pat, hub_first) == leaves * (leaves - 1) / 2);
  CHECK(topological_permutation(parent) == leaves_first);
}

TEST_CASE("Sherman-Morrison solve") {
  BlockTreeMatrix id({1, 1, 1}, {0, 1, 2});
  for (auto& d : id.diag) d = Mat::Identity(1, 1);
  BlockCholesky c;
  c.factor(id);
  const Vec e1 = Vec::Unit(3, 0);
  const Vec x = solve_with_rank1(c, e1, e1);
  CHECK((x - 0.5 * e1).norm() <= 1e-15);
  const Vec r = Vec::Random(3);
  CHECK((solve_with_rank1(c, Vec::Zero(3), r) - r).norm() <= 1e-15);

  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 30; ++trial) {
    const BlockTreeMatrix h = testkit::random_tree_matrix(1 + trial % 6, 4, rng);
    if (h.dim() > 20) continue;
    BlockCholesky ch;
    ch.factor(h);
    const Vec q = Vec::Random(h.dim());
    const Vec rhs = Vec::Random(h.dim());
    const Mat dense = h.to_dense() + q * q.transpose();
    const Vec want = dense.ldlt().solve(rhs);
    CHECK((solve_with_rank1(ch, q, rhs) - want).norm() <= 1e-9 * (1 + want.norm()));
  }
}

TEST_CASE("assembled H for identity scaling on the path") {
  SdpProblem sdp;
  sdp.n = 4;
  sdp.C = SparseSymmetric(4);
  for (int i = 0; i + 1 < 4; ++i) sdp.C.add(i + 1, i, 1.0);
  sdp.C.coalesce();
  const CtcProblem ctc = convert(sdp, PipelineOptions{});
  REQUIRE(ctc.td.ell() == 3);
  std::vector<Mat> terms;
  for (const auto& b : ctc.blocks) terms.push_back(Mat::Identity(b.size(), b.size()));
  const double sigma = 0.7;
  const BlockTreeMatrix h = assemble_H(ctc, terms, sigma);
  const Mat g = Mat(ctc.G);
  const Mat want = Mat::Identity(ctc.dim, ctc.dim) + sigma * g.transpose() * g;
  CHECK((h.to_dense() - want).norm() <= 1e-14);
  int off_blocks = 0;
  for (int j = 0; j < 3; ++j)
    if (ctc.td.parent[j] != j && h.off[j].cwiseAbs().maxCoeff() > 0) ++off_blocks;
  CHECK(off_blocks == 2);

  CtcProblem bad = ctc;
  bad.rows.push_back({RowKind::Constraint, 0, 0.0, {{0, VarKind::Psd, 0, 1.0}, {1, VarKind::Psd, 0, 1.0}, {2, VarKind::Psd, 0, 1.0}}});
  bad.finalize();
  try {
    (void)assemble_H(bad, terms, 1.0);
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::StructureViolation);
  }
}

TEST_CASE("tree normal matrix equals the dense normal matrix") {
  std::mt19937_64 rng(55);
  const std::vector<SdpProblem> problems{gen_maxcut(path_graph(6)), gen_lovasz_theta(cycle_graph(5)),
                                         gen_maxkcut(cycle_graph(4), 3), gen_star({1.0, -2.0, 0.5, 3.0}),
                                         testkit::random_separable_instance(9, rng)};
  for (const auto& sdp : problems) {
    for (Method m : {Method::Dctc, Method::DctcAux}) {
      PipelineOptions opts;
      opts.method = m;
      const CtcProblem ctc = convert(sdp, opts);
      const DualizedProgram dp = dualize(ctc, NuConvention::Unit);
      for (int trial = 0; trial < 3; ++trial) {
        const Scaling w = trial == 0 ? scaling_at_start(dp.program) : random_scaling(dp.program, rng);
        DenseNormalSolver dense;
        dense.factor(dp.program, w);
        TreeNormalSolver tree(ctc);
        tree.factor(dp.program, w);
        const Mat k = tree.H().to_dense() + tree.q() * tree.q().transpose();
        CHECK((k - dense.matrix()).norm() <= 1e-10 * (1 + dense.matrix().norm()));
        const Mat rhs = Mat::Random(ctc.dim, 3);
        const Mat want = dense.matrix().ldlt().solve(rhs);
        CHECK((tree.solve(rhs) - want).norm() <= 1e-8 * (1 + want.norm()));
      }
    }
  }
}

TEST_CASE("star contrast: converted normal matrix is dense, dualized one is a tree") {
  const int n = 12;
  std::vector<double> b(n);
  for (int i = 0; i < n; ++i) b[i] = 1.0 + 0.1 * i;
  const SdpProblem sdp = gen_star(b);
  PipelineOptions opts;
  opts.method = Method::Ctc;
  const CtcProblem ctc = convert(sdp, opts);
  REQUIRE(ctc.num_overlap_rows() == n - 1);

  const ConicProgram direct = direct_program(ctc, NuConvention::Unit);
  DenseNormalSolver dense;
  dense.factor(direct, scaling_at_start(direct));
  std::vector<int> overlap;
  for (int r = 0; r < ctc.num_rows(); ++r)
    if (ctc.rows[r].kind == RowKind::Overlap) overlap.push_back(r);
  for (int a : overlap)
    for (int c : overlap) CHECK(dense.matrix()(a, c) != 0.0);

  const DualizedProgram dp = dualize(ctc, NuConvention::Unit);
  TreeNormalSolver tree(ctc);
  tree.factor(dp.program, scaling_at_start(dp.program));
  int off = 0;
  for (int j = 0; j < tree.H().num_blocks(); ++j)
    if (tree.H().parent[j] != j && tree.H().off[j].cwiseAbs().maxCoeff() > 0) ++off;
  CHECK(off == ctc.td.ell() - 1);
  CHECK(off == n - 1);
}

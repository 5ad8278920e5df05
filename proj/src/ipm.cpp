#include "sdpctc/ipm.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <ostream>

namespace sdpctc {

Embedding init_embedding(const ConicProgram& prog) {
  const Vec e = prog.cone.identity();
  Embedding emb;
  emb.r_d = e - prog.c;
  emb.r_p = prog.b - prog.M * e;
  emb.r_c = 1.0 + prog.c.dot(e);
  emb.nu = prog.cone.nu();
  return emb;
}

HsdeState initial_state(const ConicProgram& prog) {
  HsdeState st;
  st.x = prog.cone.identity();
  st.s = st.x;
  st.y = Vec::Zero(prog.M.rows());
  return st;
}

double complementarity(const ConicProgram&, const Embedding& emb, const HsdeState& st) {
  return (st.x.dot(st.s) + st.tau * st.kappa) / (emb.nu + 1.0);
}

double hsde_residual(const ConicProgram& prog, const Embedding& emb, const HsdeState& st) {
  const Vec r1 = prog.M.transpose() * st.y - prog.c * st.tau - emb.r_d * st.theta + st.s;
  const Vec r2 = -(prog.M * st.x) + prog.b * st.tau - emb.r_p * st.theta;
  const double r3 = prog.c.dot(st.x) - prog.b.dot(st.y) - emb.r_c * st.theta + st.kappa;
  const double r4 = emb.r_d.dot(st.x) + emb.r_p.dot(st.y) + emb.r_c * st.tau - (emb.nu + 1.0);
  double r = std::max(std::abs(r3), std::abs(r4));
  if (r1.size() > 0) r = std::max(r, r1.lpNorm<Eigen::Infinity>());
  if (r2.size() > 0) r = std::max(r, r2.lpNorm<Eigen::Infinity>());
  return r;
}

double data_norm(const ConicProgram& prog) {
  double m = 0.0;
  for (int k = 0; k < prog.M.outerSize(); ++k)
    for (SpMat::InnerIterator it(prog.M, k); it; ++it) m += it.value() * it.value();
  return std::max({std::sqrt(m), prog.b.norm(), prog.c.norm()});
}

NtSystem prepare_nt(const ConicProgram& prog, const Embedding& emb, const HsdeState& st, NormalSolver& solver) {
  NtSystem sys;
  sys.w = prog.cone.scaling_point(st.x, st.s);
  solver.factor(prog, sys.w);
  const auto& cone = prog.cone;
  Mat rhs(prog.M.rows(), 2);
  rhs.col(0) = prog.M * cone.apply_hess_inv(sys.w, prog.c) + prog.b;
  rhs.col(1) = prog.M * cone.apply_hess_inv(sys.w, emb.r_d) - emb.r_p;
  const Mat v = solver.solve(rhs);
  sys.v2 = v.col(0);
  sys.v3 = v.col(1);
  sys.u2 = cone.apply_hess_inv(sys.w, prog.M.transpose() * sys.v2 - prog.c);
  sys.u3 = cone.apply_hess_inv(sys.w, prog.M.transpose() * sys.v3 - emb.r_d);
  return sys;
}

Direction nt_direction(const ConicProgram& prog, const Embedding& emb, const HsdeState& st, const NtSystem& sys,
                       const NormalSolver& solver, double mu_plus) {
  const auto& cone = prog.cone;
  const Vec d = -st.s - mu_plus * cone.gradient(st.x);
  const double d0 = mu_plus / st.tau - st.kappa;
  const double D0 = st.kappa / st.tau;
  const Vec dinv_d = cone.apply_hess_inv(sys.w, d);
  const Vec v1 = solver.solve(Mat(-(prog.M * dinv_d))).col(0);
  const Vec u1 = dinv_d + cone.apply_hess_inv(sys.w, prog.M.transpose() * v1);

  const double a11 = prog.c.dot(sys.u2) - prog.b.dot(sys.v2) - D0;
  const double a12 = prog.c.dot(sys.u3) - prog.b.dot(sys.v3) - emb.r_c;
  const double a21 = emb.r_d.dot(sys.u2) + emb.r_p.dot(sys.v2) + emb.r_c;
  const double a22 = emb.r_d.dot(sys.u3) + emb.r_p.dot(sys.v3);
  const double b1 = -d0 - prog.c.dot(u1) + prog.b.dot(v1);
  const double b2 = -emb.r_d.dot(u1) - emb.r_p.dot(v1);
  const double det = a11 * a22 - a12 * a21;
  const double scale = std::max({1.0, std::abs(a11 * a22), std::abs(a12 * a21)});
  if (!(std::abs(det) > 1e-14 * scale)) throw Error(ErrorCode::SingularNormalMatrix, "2x2 reduced system is singular");

  Direction dir;
  dir.dtau = (b1 * a22 - a12 * b2) / det;
  dir.dtheta = (a11 * b2 - a21 * b1) / det;
  dir.dy = v1 + sys.v2 * dir.dtau + sys.v3 * dir.dtheta;
  dir.dx = u1 + sys.u2 * dir.dtau + sys.u3 * dir.dtheta;
  dir.ds = prog.c * dir.dtau + emb.r_d * dir.dtheta - prog.M.transpose() * dir.dy;
  dir.dkappa = d0 - D0 * dir.dtau;
  return dir;
}

namespace {

using Clock = std::chrono::steady_clock;

void apply_step(HsdeState& st, const Direction& dir, double alpha) {
  st.x += alpha * dir.dx;
  st.y += alpha * dir.dy;
  st.s += alpha * dir.ds;
  st.tau += alpha * dir.dtau;
  st.theta += alpha * dir.dtheta;
  st.kappa += alpha * dir.dkappa;
}

double max_step(const Cone& cone, const HsdeState& st, const Direction& dir) {
  double a = std::min(cone.max_step(st.x, dir.dx), cone.max_step(st.s, dir.ds));
  if (dir.dtau < 0.0) a = std::min(a, -st.tau / dir.dtau);
  if (dir.dkappa < 0.0) a = std::min(a, -st.kappa / dir.dkappa);
  return a;
}

class Driver {
 public:
  Driver(const ConicProgram& prog, NormalSolver& solver, const IpmOptions& opts)
      : prog_(prog), solver_(solver), opts_(opts), emb_(init_embedding(prog)), scale_(1.0 + data_norm(prog)) {
    res_.state = initial_state(prog);
    res_.nu = emb_.nu;
  }

  IpmResult run() {
    auto& st = res_.state;
    int rising = 0;
    double mu = complementarity(prog_, emb_, st);
    while (true) {
      if (mu <= opts_.eps) {
        if (st.kappa > st.tau) throw Error(ErrorCode::InfeasibleOrUnbounded, "embedding converged with kappa > tau");
        return res_;
      }
      if (res_.iters >= opts_.max_iter) throw Error(ErrorCode::MaxIterations, "iteration limit reached");
      const auto t0 = Clock::now();
      IterationInfo info;
      info.iter = res_.iters + 1;
      info.mu_before = mu;
      const NtSystem sys = prepare_nt(prog_, emb_, st, solver_);
      Direction dir;
      if (opts_.method == StepMethod::Short) {
        info.sigma = 1.0 - 1.0 / (15.0 * std::sqrt(emb_.nu + 1.0));
        info.mu_target = info.sigma * mu;
        dir = nt_direction(prog_, emb_, st, sys, solver_, info.mu_target);
        info.alpha = 1.0;
      } else {
        const Direction aff = nt_direction(prog_, emb_, st, sys, solver_, 0.0);
        const double a_aff = std::min(1.0, max_step(prog_.cone, st, aff));
        HsdeState trial = st;
        apply_step(trial, aff, a_aff);
        const double mu_aff = complementarity(prog_, emb_, trial);
        info.sigma = std::clamp(std::pow(std::max(mu_aff, 0.0) / mu, 3.0), 0.05, 0.9);
        info.mu_target = info.sigma * mu;
        dir = nt_direction(prog_, emb_, st, sys, solver_, info.mu_target);
        info.alpha = std::min(1.0, 0.99 * max_step(prog_.cone, st, dir));
      }
      apply_step(st, dir, info.alpha);
      if (!prog_.cone.is_interior(st.x) || !prog_.cone.is_interior(st.s) || !(st.tau > 0.0) || !(st.kappa > 0.0))
        throw Error(ErrorCode::NumericalStall, "iterate left the cone interior");
      const double mu_new = complementarity(prog_, emb_, st);
      info.mu_after = mu_new;
      info.tau = st.tau;
      info.kappa = st.kappa;
      info.guard_ok = st.tau * st.kappa >= 0.9 * mu_new;
      info.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
      ++res_.iters;
      res_.guard_violations += info.guard_ok ? 0 : 1;
      res_.peak_bytes = std::max(res_.peak_bytes, solver_.bytes());
      res_.max_residual = std::max(res_.max_residual, hsde_residual(prog_, emb_, st) / scale_);
      res_.history.push_back(info);
      if (opts_.diag_out)
        *opts_.diag_out << "{\"iter\":" << info.iter << ",\"mu\":" << mu_new << ",\"alpha\":" << info.alpha
                        << ",\"normal\":" << solver_.diagnostics() << "}\n";
      if (opts_.on_iteration) opts_.on_iteration(info);
      rising = mu_new >= mu ? rising + 1 : 0;
      if (rising >= 5) throw Error(ErrorCode::NumericalStall, "mu has not decreased for 5 iterations");
      if (st.tau < 1e-10 && st.kappa > 1e-6) throw Error(ErrorCode::InfeasibleOrUnbounded, "tau vanished");
      mu = mu_new;
    }
  }

 private:
  const ConicProgram& prog_;
  NormalSolver& solver_;
  const IpmOptions& opts_;
  Embedding emb_;
  double scale_;
  IpmResult res_;
};

}  // namespace

IpmResult short_step_solve(const ConicProgram& prog, NormalSolver& solver, const IpmOptions& opts) {
  IpmOptions o = opts;
  o.method = StepMethod::Short;
  return Driver(prog, solver, o).run();
}

IpmResult adaptive_step_solve(const ConicProgram& prog, NormalSolver& solver, const IpmOptions& opts) {
  IpmOptions o = opts;
  o.method = StepMethod::Adaptive;
  return Driver(prog, solver, o).run();
}

IpmResult solve_hsde(const ConicProgram& prog, NormalSolver& solver, const IpmOptions& opts) {
  return Driver(prog, solver, opts).run();
}

}  // namespace sdpctc

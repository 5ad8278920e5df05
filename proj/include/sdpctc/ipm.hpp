#pragma once

#include <functional>
#include <iosfwd>
#include <vector>

#include "sdpctc/converter.hpp"
#include "sdpctc/normal_system.hpp"

namespace sdpctc {

enum class StepMethod { Short, Adaptive };

struct IterationInfo {
  int iter = 0;
  double mu_before = 0.0;
  double mu_target = 0.0;
  double mu_after = 0.0;
  double alpha = 0.0;
  double sigma = 0.0;
  double tau = 0.0;
  double kappa = 0.0;
  bool guard_ok = true;  // tau * kappa >= 0.9 mu
  double seconds = 0.0;
};

struct IpmOptions {
  StepMethod method = StepMethod::Adaptive;
  double eps = 1e-8;
  int max_iter = 200;
  std::ostream* diag_out = nullptr;
  std::function<void(const IterationInfo&)> on_iteration;
};

/// Residual vectors of the homogeneous self-dual embedding started at
/// x = s = e, y = 0, tau = theta = kappa = 1.
struct Embedding {
  Vec r_d;
  Vec r_p;
  double r_c = 0.0;
  double nu = 0.0;
};

struct HsdeState {
  Vec x, y, s;
  double tau = 1.0;
  double theta = 1.0;
  double kappa = 1.0;
};

struct Direction {
  Vec dx, dy, ds;
  double dtau = 0.0;
  double dtheta = 0.0;
  double dkappa = 0.0;
};

/// Scaling point, factored normal matrix and the mu-independent solves.
struct NtSystem {
  Scaling w;
  Vec v2, v3, u2, u3;
};

struct IpmResult {
  HsdeState state;
  int iters = 0;
  std::vector<IterationInfo> history;
  double max_residual = 0.0;
  int guard_violations = 0;
  double nu = 0.0;
  std::size_t peak_bytes = 0;
};

Embedding init_embedding(const ConicProgram& prog);
HsdeState initial_state(const ConicProgram& prog);
double complementarity(const ConicProgram& prog, const Embedding& emb, const HsdeState& st);

NtSystem prepare_nt(const ConicProgram& prog, const Embedding& emb, const HsdeState& st, NormalSolver& solver);
/// Newton step toward the mu_plus-centre, in NT scaling.
Direction nt_direction(const ConicProgram& prog, const Embedding& emb, const HsdeState& st, const NtSystem& sys,
                       const NormalSolver& solver, double mu_plus);

/// Largest entry of the embedding's linear residual.
double hsde_residual(const ConicProgram& prog, const Embedding& emb, const HsdeState& st);
double data_norm(const ConicProgram& prog);

IpmResult short_step_solve(const ConicProgram& prog, NormalSolver& solver, const IpmOptions& opts);
IpmResult adaptive_step_solve(const ConicProgram& prog, NormalSolver& solver, const IpmOptions& opts);
IpmResult solve_hsde(const ConicProgram& prog, NormalSolver& solver, const IpmOptions& opts);

}  // namespace sdpctc

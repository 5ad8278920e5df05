#pragma once

#include <vector>

#include "sdpctc/linalg.hpp"

namespace sdpctc {

enum class Sense { Eq, Ge, Le };

/// minimize C . X  subject to  A_i . X (sense_i) b_i,  X PSD of order n.
struct SdpProblem {
  int n = 0;
  SparseSymmetric C;
  std::vector<SparseSymmetric> A;
  std::vector<double> b;
  std::vector<Sense> sense;

  int m() const { return static_cast<int>(A.size()); }
  void add_constraint(SparseSymmetric a, double rhs, Sense s = Sense::Eq) {
    A.push_back(std::move(a));
    b.push_back(rhs);
    sense.push_back(s);
  }
};

}  // namespace sdpctc

#include "sdpctc/sdpa.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <vector>

namespace sdpctc {

namespace {

struct LineReader {
  std::istream& in;
  int lineno = 0;

  bool next(std::string& line) {
    while (std::getline(in, line)) {
      ++lineno;
      const auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos) continue;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": " + msg);
  }
};

std::string strip_punct(std::string s) {
  for (auto& ch : s)
    if (ch == '{' || ch == '}' || ch == '(' || ch == ')' || ch == ',') ch = ' ';
  return s;
}

long parse_long(const std::string& tok, const LineReader& lr) {
  try {
    std::size_t pos = 0;
    const long v = std::stol(tok, &pos);
    if (pos != tok.size()) lr.fail("expected an integer, got '" + tok + "'");
    return v;
  } catch (const std::logic_error&) {
    lr.fail("expected an integer, got '" + tok + "'");
  }
}

double parse_double(const std::string& tok, const LineReader& lr) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(tok, &pos);
    if (pos != tok.size()) lr.fail("expected a number, got '" + tok + "'");
    return v;
  } catch (const std::logic_error&) {
    lr.fail("expected a number, got '" + tok + "'");
  }
}

}  // namespace

SdpProblem read_sdpa(std::istream& in) {
  LineReader lr{in};
  std::string line;
  // leading comment lines
  do {
    if (!lr.next(line)) lr.fail("unexpected end of file before the header");
  } while (line.find_first_not_of(" \t") != std::string::npos &&
           (line[line.find_first_not_of(" \t")] == '"' || line[line.find_first_not_of(" \t")] == '*'));

  auto first_token = [&](const std::string& l) {
    std::istringstream ss(strip_punct(l));
    std::string tok;
    if (!(ss >> tok)) lr.fail("missing value");
    return tok;
  };
  const long m = parse_long(first_token(line), lr);
  if (m < 0) lr.fail("negative constraint count");
  if (!lr.next(line)) lr.fail("missing block count");
  const long nblocks = parse_long(first_token(line), lr);
  if (nblocks < 1) lr.fail("block count must be positive");
  if (!lr.next(line)) lr.fail("missing block structure");
  std::vector<long> sizes;
  {
    std::istringstream ss(strip_punct(line));
    std::string tok;
    while (static_cast<long>(sizes.size()) < nblocks && ss >> tok) sizes.push_back(parse_long(tok, lr));
    if (static_cast<long>(sizes.size()) != nblocks) lr.fail("block structure lists too few blocks");
  }
  int psd_block = -1, lp_block = -1;
  long n = 0, lp = 0;
  for (long k = 0; k < nblocks; ++k) {
    if (sizes[k] > 0) {
      if (psd_block >= 0) throw Error(ErrorCode::UnsupportedBlockStructure, "more than one semidefinite block");
      psd_block = static_cast<int>(k + 1);
      n = sizes[k];
    } else if (sizes[k] < 0) {
      if (lp_block >= 0) throw Error(ErrorCode::UnsupportedBlockStructure, "more than one LP block");
      lp_block = static_cast<int>(k + 1);
      lp = -sizes[k];
    } else {
      lr.fail("zero block size");
    }
  }
  if (psd_block < 0) throw Error(ErrorCode::UnsupportedBlockStructure, "no semidefinite block");

  std::vector<double> b;
  while (static_cast<long>(b.size()) < m) {
    if (!lr.next(line)) lr.fail("missing right-hand side values");
    std::istringstream ss(strip_punct(line));
    std::string tok;
    while (static_cast<long>(b.size()) < m && ss >> tok) b.push_back(parse_double(tok, lr));
  }

  SdpProblem sdp;
  sdp.n = static_cast<int>(n);
  sdp.C = SparseSymmetric(sdp.n);
  for (long i = 0; i < m; ++i) sdp.add_constraint(SparseSymmetric(sdp.n), b[i]);
  std::map<long, std::vector<std::pair<long, double>>> lp_use;  // lp index -> (matno, coefficient)
  while (lr.next(line)) {
    std::istringstream ss(line);
    std::string t0, t1, t2, t3, t4, extra;
    if (!(ss >> t0 >> t1 >> t2 >> t3 >> t4)) lr.fail("entry needs 'matno blkno i j value'");
    const long mat = parse_long(t0, lr), blk = parse_long(t1, lr), i = parse_long(t2, lr), j = parse_long(t3, lr);
    const double v = parse_double(t4, lr);
    if (mat < 0 || mat > m) lr.fail("matrix number out of range");
    if (blk == psd_block) {
      if (i < 1 || j < 1 || i > n || j > n) lr.fail("entry index out of range");
      auto& target = mat == 0 ? sdp.C : sdp.A[mat - 1];
      target.add(static_cast<int>(i - 1), static_cast<int>(j - 1), mat == 0 ? -v : v);
    } else if (blk == lp_block) {
      if (i != j || i < 1 || i > lp) lr.fail("LP block entries must be diagonal and in range");
      if (v != 0.0) lp_use[i].push_back({mat, v});
    } else {
      lr.fail("block number out of range");
    }
  }
  for (const auto& [idx, uses] : lp_use) {
    if (uses.size() != 1 || uses[0].first == 0 || std::abs(uses[0].second) != 1.0)
      throw Error(ErrorCode::UnsupportedBlockStructure,
                  "LP coordinate " + std::to_string(idx) + " is not a private +-1 slack of one constraint");
    auto& sense = sdp.sense[uses[0].first - 1];
    if (sense != Sense::Eq)
      throw Error(ErrorCode::UnsupportedBlockStructure, "constraint has more than one LP slack");
    sense = uses[0].second < 0.0 ? Sense::Ge : Sense::Le;
  }
  if (static_cast<long>(lp_use.size()) != lp)
    throw Error(ErrorCode::UnsupportedBlockStructure, "unused LP coordinates");
  sdp.C.coalesce();
  for (auto& a : sdp.A) a.coalesce();
  return sdp;
}

SdpProblem read_sdpa_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  return read_sdpa(in);
}

void write_sdpa(std::ostream& out, const SdpProblem& sdp) {
  int lp = 0;
  for (auto s : sdp.sense) lp += s != Sense::Eq;
  out << "\"sparse SDPA: maximize F0.Y, F0 = -C\n";
  out << sdp.m() << "\n" << (lp > 0 ? 2 : 1) << "\n" << sdp.n;
  if (lp > 0) out << " " << -lp;
  out << "\n";
  out << std::setprecision(17);
  for (int i = 0; i < sdp.m(); ++i) out << (i ? " " : "") << sdp.b[i];
  out << "\n";
  auto emit = [&](int mat, const SparseSymmetric& a, double sign) {
    for (const auto& t : a.entries())
      out << mat << " 1 " << t.col + 1 << ' ' << t.row + 1 << ' ' << sign * t.value << '\n';
  };
  emit(0, sdp.C, -1.0);
  int slack = 0;
  for (int i = 0; i < sdp.m(); ++i) {
    emit(i + 1, sdp.A[i], 1.0);
    if (sdp.sense[i] != Sense::Eq) {
      ++slack;
      out << i + 1 << " 2 " << slack << ' ' << slack << ' ' << (sdp.sense[i] == Sense::Ge ? -1 : 1) << '\n';
    }
  }
}

void write_sdpa_file(const std::string& path, const SdpProblem& sdp) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + path);
  write_sdpa(out, sdp);
}

}  // namespace sdpctc

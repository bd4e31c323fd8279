#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "bpd/grid.hpp"
#include "bpd/perm.hpp"
#include "bpd/poly.hpp"

namespace bpd {

inline constexpr std::uint64_t kDefaultVerifySeed = 12345;

struct VerifyFailure {
  std::string pi;  // one-line notation
  int alpha = 0;
  std::string kind;  // eq1, eq2, phi, phi-tilde, transition, cotransition
  std::string lhs, rhs;
};

struct VerifyOptions {
  int n = 3;
  bool with_double = false;
  int jobs = 1;
  long sample = 0;  // 0 = exhaustive over S_n
  std::uint64_t seed = kDefaultVerifySeed;
};

struct VerifyReport {
  int n = 0;
  long cases = 0;    // (pi, alpha) pairs examined
  long checked = 0;  // individual checks run
  std::vector<VerifyFailure> failures;
  int max_steps = 0;  // largest primitive step count seen in any single run
  double wall_seconds = 0;
};

// Shared read-only tables for a sweep: every valid diagram of size n bucketed
// by readout, plus Schubert polynomials for a prepared set of permutations.
class PermTable {
public:
  explicit PermTable(int n);

  int n() const { return n_; }
  const std::vector<Diagram>& diagrams(const Permutation& pi) const;
  const Poly& poly(const Permutation& pi, bool dbl) const;

  // Computes BPD-sum polynomials for the given permutations (duplicates
  // fine), distributing the work over `jobs` threads.
  void prepare_polys(const std::vector<Permutation>& perms, bool dbl, int jobs);

private:
  int n_;
  std::map<Permutation, std::vector<Diagram>> buckets_;
  std::map<Permutation, Poly> singles_, doubles_;
};

struct CaseCheckResult {
  long checked = 0;
  std::vector<VerifyFailure> failures;
  int max_steps = 0;
};

// x_alpha * S_pi + sum_k S_{pi t_{k,alpha}} == sum_l S_{pi t_{alpha,l}},
// all sides BPD sums; the double variant uses (x_alpha - y_{pi(alpha)}).
CaseCheckResult check_eq_case(const PermTable& table, const Permutation& pi, int alpha, bool dbl);

// Exhaustive bijectivity of phi at (pi, alpha): image containment and
// uniqueness, surjectivity by count, row-blank bookkeeping, inverse
// round-trips, and the transition/cotransition specializations.
CaseCheckResult check_phi_case(const PermTable& table, const Permutation& pi, int alpha);

// Decorated bijectivity and the monomial contracts of phi-tilde.
CaseCheckResult check_decorated_case(const PermTable& table, const Permutation& pi, int alpha);

VerifyReport run_verify(const VerifyOptions& opts);

// Deterministic report text: identical across runs and --jobs settings.
// Timing is intentionally excluded; the CLI prints it to stderr.
void print_report(std::ostream& os, const VerifyOptions& opts, const VerifyReport& r);

}  // namespace bpd

#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <string>
#include <vector>

#include "bpd/grid.hpp"
#include "bpd/perm.hpp"

namespace bpd {

using Int = boost::multiprecision::cpp_int;

// Exponent vectors for x_1..x_n and y_1..y_n, fixed length n each.
struct Monomial {
  std::vector<int> xe, ye;

  int total_degree() const;
  bool operator==(const Monomial&) const = default;
};

// Canonical term order: total degree descending, then lexicographically
// descending on the concatenated exponent vector (x_1..x_n, y_1..y_n).
// Iterating a map with this comparator yields the canonical print order.
struct CanonicalTermOrder {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

class PolyError : public std::runtime_error {
public:
  explicit PolyError(const std::string& what) : std::runtime_error(what) {}
};

// Sparse multivariate polynomial over the integers in x_1..x_n, y_1..y_n.
// Coefficients are arbitrary-precision; no zero coefficient is stored.
class Poly {
public:
  explicit Poly(int n) : n_(n) {}

  static Poly constant(int n, Int c);
  static Poly x(int n, int i);
  static Poly y(int n, int j);

  int n() const { return n_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<Monomial, Int, CanonicalTermOrder>& terms() const { return terms_; }
  int degree() const;  // -1 for the zero polynomial

  void add_term(Monomial m, Int c);

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  bool operator==(const Poly&) const = default;

  std::string to_string() const;

private:
  int n_;
  std::map<Monomial, Int, CanonicalTermOrder> terms_;
};

// Linear rescalings: multiply by x_i, by -y_j, or by an integer.
Poly scale_x(const Poly& f, int i);
Poly scale_neg_y(const Poly& f, int j);
Poly scale_int(const Poly& f, const Int& c);

// Exchanges x_i and x_{i+1} in every term; y variables untouched.
Poly swap_x(const Poly& f, int i);

// Newton divided difference (f - s_i f) / (x_i - x_{i+1}). Computed term by
// term; the result is multiplied back as an exactness check and a PolyError
// is raised on any mismatch.
Poly divided_difference(const Poly& f, int i);

// Schubert polynomial as the blank-tile sum over BPD(pi):
// product over blanks of (x_i - y_j) when dbl, of x_i otherwise.
Poly schubert_bpd(const Permutation& pi, bool dbl);
Poly schubert_from_bpds(const std::vector<Diagram>& diagrams, int n, bool dbl);

// Independent oracle: start from the staircase polynomial of the longest
// element and apply divided differences along a reduced descent path down to
// pi. descend_from_largest picks the largest descent index instead of the
// smallest; the result is path-independent.
Poly schubert_dd(const Permutation& pi, bool dbl, bool descend_from_largest = false);

}  // namespace bpd

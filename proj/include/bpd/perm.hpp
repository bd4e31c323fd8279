#pragma once

#include <compare>
#include <string>
#include <vector>

namespace bpd {

// Permutation of {1..n} in one-line notation. Positions and values are
// 1-based everywhere in the public interface. Immutable value type.
class Permutation {
public:
  explicit Permutation(std::vector<int> one_line);

  static Permutation identity(int n);
  static Permutation longest(int n);  // n, n-1, ..., 1

  int n() const { return static_cast<int>(v_.size()); }
  int operator()(int i) const { return v_[i - 1]; }
  const std::vector<int>& one_line() const { return v_; }

  // Number of inversion pairs i < j with pi(i) > pi(j).
  int length() const;

  Permutation inverse() const;

  // pi * t_{a,b}: one-line notation with entries at positions a, b swapped.
  Permutation apply_t(int a, int b) const;

  // True iff pi t_{a,b} covers pi in Bruhat order, i.e. pi(a) < pi(b) and
  // no c with a < c < b and pi(a) < pi(c) < pi(b). Requires a < b.
  bool is_cover_t(int a, int b) const;

  std::string to_string() const;  // "2 3 5 1 4"

  auto operator<=>(const Permutation&) const = default;

private:
  std::vector<int> v_;
};

// Index sets of the rearranged Monk identity at position alpha:
//   ks = {k < alpha : pi t_{k,alpha} >. pi},
//   ls = {l > alpha : pi t_{alpha,l} >. pi}.
// precondition is true iff ls is nonempty.
struct MonkTargets {
  std::vector<int> ks;
  std::vector<int> ls;
  bool precondition = false;
};

MonkTargets monk_targets(const Permutation& pi, int alpha);

// All of S_n in lexicographic order.
std::vector<Permutation> all_permutations(int n);

// Parses comma- or space-separated one-line notation, e.g. "2 3 5 1 4".
std::vector<int> parse_one_line(const std::string& text);

}  // namespace bpd

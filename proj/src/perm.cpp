#include "bpd/perm.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace bpd {

Permutation::Permutation(std::vector<int> one_line) : v_(std::move(one_line)) {
  if (v_.empty())
    throw std::invalid_argument("permutation: empty one-line notation");
  const int n = static_cast<int>(v_.size());
  std::vector<bool> seen(n + 1, false);
  for (int x : v_) {
    if (x < 1 || x > n)
      throw std::invalid_argument("permutation: value " + std::to_string(x) +
                                  " out of range 1.." + std::to_string(n));
    if (seen[x])
      throw std::invalid_argument("permutation: duplicate value " + std::to_string(x));
    seen[x] = true;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 1);
  return Permutation(std::move(v));
}

Permutation Permutation::longest(int n) {
  std::vector<int> v(n);
  for (int i = 0; i < n; ++i) v[i] = n - i;
  return Permutation(std::move(v));
}

int Permutation::length() const {
  int inv = 0;
  const int n = this->n();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (v_[i] > v_[j]) ++inv;
  return inv;
}

Permutation Permutation::inverse() const {
  std::vector<int> w(v_.size());
  for (int i = 1; i <= n(); ++i) w[v_[i - 1] - 1] = i;
  return Permutation(std::move(w));
}

Permutation Permutation::apply_t(int a, int b) const {
  if (a < 1 || b <= a || b > n())
    throw std::invalid_argument("apply_t: need 1 <= a < b <= n");
  std::vector<int> w = v_;
  std::swap(w[a - 1], w[b - 1]);
  return Permutation(std::move(w));
}

bool Permutation::is_cover_t(int a, int b) const {
  if (a < 1 || b <= a || b > n())
    throw std::invalid_argument("is_cover_t: need 1 <= a < b <= n");
  if (v_[a - 1] >= v_[b - 1]) return false;
  for (int c = a + 1; c < b; ++c)
    if (v_[a - 1] < v_[c - 1] && v_[c - 1] < v_[b - 1]) return false;
  return true;
}

std::string Permutation::to_string() const {
  std::ostringstream os;
  for (int i = 0; i < n(); ++i) {
    if (i > 0) os << ' ';
    os << v_[i];
  }
  return os.str();
}

MonkTargets monk_targets(const Permutation& pi, int alpha) {
  if (alpha < 1 || alpha >= pi.n())
    throw std::invalid_argument("monk_targets: need 1 <= alpha < n");
  MonkTargets t;
  for (int k = 1; k < alpha; ++k)
    if (pi.is_cover_t(k, alpha)) t.ks.push_back(k);
  for (int l = alpha + 1; l <= pi.n(); ++l)
    if (pi.is_cover_t(alpha, l)) t.ls.push_back(l);
  t.precondition = !t.ls.empty();
  return t;
}

std::vector<Permutation> all_permutations(int n) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 1);
  std::vector<Permutation> out;
  do {
    out.push_back(Permutation(v));
  } while (std::next_permutation(v.begin(), v.end()));
  return out;
}

std::vector<int> parse_one_line(const std::string& text) {
  std::string cleaned = text;
  std::replace(cleaned.begin(), cleaned.end(), ',', ' ');
  std::istringstream is(cleaned);
  std::vector<int> out;
  int x;
  while (is >> x) out.push_back(x);
  if (!is.eof())
    throw std::invalid_argument("cannot parse one-line notation: " + text);
  return out;
}

}  // namespace bpd

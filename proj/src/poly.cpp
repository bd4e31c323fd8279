#include "bpd/poly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace bpd {

int Monomial::total_degree() const {
  return std::accumulate(xe.begin(), xe.end(), 0) + std::accumulate(ye.begin(), ye.end(), 0);
}

bool CanonicalTermOrder::operator()(const Monomial& a, const Monomial& b) const {
  const int da = a.total_degree(), db = b.total_degree();
  if (da != db) return da > db;
  if (a.xe != b.xe) return a.xe > b.xe;
  return a.ye > b.ye;
}

Poly Poly::constant(int n, Int c) {
  Poly p(n);
  p.add_term(Monomial{std::vector<int>(n, 0), std::vector<int>(n, 0)}, std::move(c));
  return p;
}

Poly Poly::x(int n, int i) {
  if (i < 1 || i > n) throw std::invalid_argument("Poly::x: index out of range");
  Monomial m{std::vector<int>(n, 0), std::vector<int>(n, 0)};
  m.xe[i - 1] = 1;
  Poly p(n);
  p.add_term(std::move(m), 1);
  return p;
}

Poly Poly::y(int n, int j) {
  if (j < 1 || j > n) throw std::invalid_argument("Poly::y: index out of range");
  Monomial m{std::vector<int>(n, 0), std::vector<int>(n, 0)};
  m.ye[j - 1] = 1;
  Poly p(n);
  p.add_term(std::move(m), 1);
  return p;
}

int Poly::degree() const {
  if (terms_.empty()) return -1;
  return terms_.begin()->first.total_degree();
}

void Poly::add_term(Monomial m, Int c) {
  if (c == 0) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(std::move(m), std::move(c));
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Poly& Poly::operator+=(const Poly& o) {
  if (n_ != o.n_) throw std::invalid_argument("poly arithmetic: mismatched variable count");
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (n_ != o.n_) throw std::invalid_argument("poly arithmetic: mismatched variable count");
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.n_ != b.n_) throw std::invalid_argument("poly arithmetic: mismatched variable count");
  Poly out(a.n_);
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) {
      Monomial m = ma;
      for (int i = 0; i < a.n_; ++i) {
        m.xe[i] += mb.xe[i];
        m.ye[i] += mb.ye[i];
      }
      out.add_term(std::move(m), ca * cb);
    }
  return out;
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    const bool neg = c < 0;
    if (first) {
      if (neg) os << '-';
      first = false;
    } else {
      os << (neg ? " - " : " + ");
    }
    const Int mag = neg ? Int(-c) : c;
    std::vector<std::string> factors;
    for (int i = 0; i < n_; ++i)
      if (m.xe[i] > 0)
        factors.push_back("x" + std::to_string(i + 1) +
                          (m.xe[i] > 1 ? "^" + std::to_string(m.xe[i]) : ""));
    for (int j = 0; j < n_; ++j)
      if (m.ye[j] > 0)
        factors.push_back("y" + std::to_string(j + 1) +
                          (m.ye[j] > 1 ? "^" + std::to_string(m.ye[j]) : ""));
    if (factors.empty()) {
      os << mag.str();
    } else {
      if (mag != 1) os << mag.str() << '*';
      for (size_t k = 0; k < factors.size(); ++k) {
        if (k > 0) os << '*';
        os << factors[k];
      }
    }
  }
  return os.str();
}

Poly scale_x(const Poly& f, int i) { return f * Poly::x(f.n(), i); }

Poly scale_neg_y(const Poly& f, int j) { return f * (Poly(f.n()) - Poly::y(f.n(), j)); }

Poly scale_int(const Poly& f, const Int& c) { return f * Poly::constant(f.n(), c); }

Poly swap_x(const Poly& f, int i) {
  if (i < 1 || i >= f.n()) throw std::invalid_argument("swap_x: need 1 <= i < n");
  Poly out(f.n());
  for (const auto& [m, c] : f.terms()) {
    Monomial m2 = m;
    std::swap(m2.xe[i - 1], m2.xe[i]);
    out.add_term(std::move(m2), c);
  }
  return out;
}

Poly divided_difference(const Poly& f, int i) {
  if (i < 1 || i >= f.n()) throw std::invalid_argument("divided_difference: need 1 <= i < n");
  Poly out(f.n());
  for (const auto& [m, c] : f.terms()) {
    const int a = m.xe[i - 1], b = m.xe[i];
    if (a == b) continue;
    // (x^a y^b - x^b y^a) / (x - y) = sign(a-b) * sum of x^t y^(a+b-1-t)
    const int lo = std::min(a, b), hi = std::max(a, b);
    const Int coeff = (a > b) ? c : Int(-c);
    for (int t = lo; t < hi; ++t) {
      Monomial m2 = m;
      m2.xe[i - 1] = t;
      m2.xe[i] = a + b - 1 - t;
      out.add_term(std::move(m2), coeff);
    }
  }
  // Exactness check: (x_i - x_{i+1}) * out must reproduce f - s_i f.
  Poly diff = f - swap_x(f, i);
  Poly back = (Poly::x(f.n(), i) - Poly::x(f.n(), i + 1)) * out;
  if (!(back == diff))
    throw PolyError("divided_difference: division by (x_i - x_{i+1}) is not exact");
  return out;
}

Poly schubert_from_bpds(const std::vector<Diagram>& diagrams, int n, bool dbl) {
  Poly sum(n);
  for (const Diagram& d : diagrams) {
    Poly prod = Poly::constant(n, 1);
    for (Pos b : d.blanks()) {
      Poly factor = Poly::x(n, b.row);
      if (dbl) factor -= Poly::y(n, b.col);
      prod = prod * factor;
    }
    sum += prod;
  }
  return sum;
}

Poly schubert_bpd(const Permutation& pi, bool dbl) {
  return schubert_from_bpds(enumerate_bpds(pi), pi.n(), dbl);
}

Poly schubert_dd(const Permutation& pi, bool dbl, bool descend_from_largest) {
  const int n = pi.n();
  Poly f = Poly::constant(n, 1);
  if (dbl) {
    for (int i = 1; i <= n; ++i)
      for (int j = 1; i + j <= n; ++j) f = f * (Poly::x(n, i) - Poly::y(n, j));
  } else {
    for (int i = 1; i < n; ++i) {
      Monomial m{std::vector<int>(n, 0), std::vector<int>(n, 0)};
      m.xe[i - 1] = n - i;
      Poly p(n);
      p.add_term(std::move(m), 1);
      f = f * p;
    }
  }
  // Walk omega = pi^{-1} w0 down to the identity; each right descent of
  // omega is a valid divided-difference step from the current sigma = pi*omega.
  std::vector<int> omega(n);
  {
    const Permutation inv = pi.inverse();
    const Permutation w0 = Permutation::longest(n);
    for (int i = 1; i <= n; ++i) omega[i - 1] = inv(w0(i));
  }
  auto has_descent = [&](int i) { return omega[i - 1] > omega[i]; };
  for (;;) {
    int pick = 0;
    if (descend_from_largest) {
      for (int i = n - 1; i >= 1; --i)
        if (has_descent(i)) { pick = i; break; }
    } else {
      for (int i = 1; i < n; ++i)
        if (has_descent(i)) { pick = i; break; }
    }
    if (pick == 0) break;
    f = divided_difference(f, pick);
    std::swap(omega[pick - 1], omega[pick]);
  }
  return f;
}

}  // namespace bpd

#include "heun/rational.hpp"

#include <algorithm>
#include <utility>

#include "heun/errors.hpp"

namespace heun {

namespace {

boost::multiprecision::cpp_int parse_integer(std::string_view t, std::string_view whole) {
  if (!t.empty() && t.front() == '+') t.remove_prefix(1);
  bool neg = false;
  if (!t.empty() && t.front() == '-') {
    neg = true;
    t.remove_prefix(1);
  }
  if (t.empty() || !std::all_of(t.begin(), t.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    throw DomainError("rational: malformed '" + std::string(whole) + "'");
  }
  const boost::multiprecision::cpp_int v{std::string(t)};
  return neg ? -v : v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::size_t slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text, text));
  const auto p = parse_integer(text.substr(0, slash), text);
  const auto q = parse_integer(text.substr(slash + 1), text);
  if (q == 0) throw DomainError("rational: zero denominator in '" + std::string(text) + "'");
  return Rational(p, q);
}

std::string format_rational(const Rational& r) {
  const auto num = boost::multiprecision::numerator(r);
  const auto den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

// RatPoly

RatPoly::RatPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

RatPoly RatPoly::constant(const Rational& c) { return RatPoly(std::vector<Rational>{c}); }

RatPoly RatPoly::monomial(const Rational& c, int n) {
  std::vector<Rational> v(static_cast<std::size_t>(n) + 1);
  v[n] = c;
  return RatPoly(std::move(v));
}

void RatPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rational RatPoly::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(c_.size())) return 0;
  return c_[i];
}

RatPoly RatPoly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<Rational> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<long>(i);
  return RatPoly(std::move(d));
}

Rational RatPoly::eval(const Rational& x) const {
  Rational v = 0;
  for (std::size_t k = c_.size(); k-- > 0;) v = v * x + c_[k];
  return v;
}

double RatPoly::eval(double x) const {
  double v = 0.0;
  for (std::size_t k = c_.size(); k-- > 0;) v = v * x + to_double(c_[k]);
  return v;
}

RatPoly RatPoly::operator+(const RatPoly& o) const {
  std::vector<Rational> v(std::max(c_.size(), o.c_.size()));
  for (std::size_t i = 0; i < c_.size(); ++i) v[i] += c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) v[i] += o.c_[i];
  return RatPoly(std::move(v));
}

RatPoly RatPoly::operator-(const RatPoly& o) const { return *this + o * Rational(-1); }

RatPoly RatPoly::operator*(const RatPoly& o) const {
  if (c_.empty() || o.c_.empty()) return {};
  std::vector<Rational> v(c_.size() + o.c_.size() - 1);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) v[i + j] += c_[i] * o.c_[j];
  }
  return RatPoly(std::move(v));
}

RatPoly RatPoly::operator*(const Rational& s) const {
  std::vector<Rational> v = c_;
  for (auto& x : v) x *= s;
  return RatPoly(std::move(v));
}

void RatPoly::divmod(const RatPoly& d, RatPoly& quot, RatPoly& rem) const {
  if (d.is_zero()) throw DomainError("RatPoly::divmod: division by zero polynomial");
  std::vector<Rational> r = c_;
  const int dd = d.degree();
  const int qd = degree() - dd;
  std::vector<Rational> q(qd >= 0 ? static_cast<std::size_t>(qd) + 1 : 0);
  for (int k = qd; k >= 0; --k) {
    const Rational t = r[k + dd] / d.c_.back();
    q[k] = t;
    for (int i = 0; i <= dd; ++i) r[k + i] -= t * d.c_[i];
  }
  quot = RatPoly(std::move(q));
  rem = RatPoly(std::move(r));
}

// BiPoly

BiPoly::BiPoly(std::vector<RatPoly> parts) : parts_(std::move(parts)) { trim(); }

void BiPoly::trim() {
  while (!parts_.empty() && parts_.back().is_zero()) parts_.pop_back();
}

int BiPoly::w_degree() const {
  int d = -1;
  for (const auto& p : parts_) d = std::max(d, p.degree());
  return d;
}

const RatPoly& BiPoly::part(int j) const {
  static const RatPoly zero;
  if (j < 0 || j >= static_cast<int>(parts_.size())) return zero;
  return parts_[j];
}

BiPoly BiPoly::dw() const {
  std::vector<RatPoly> v;
  v.reserve(parts_.size());
  for (const auto& p : parts_) v.push_back(p.derivative());
  return BiPoly(std::move(v));
}

BiPoly BiPoly::operator+(const BiPoly& o) const {
  std::vector<RatPoly> v(std::max(parts_.size(), o.parts_.size()));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = part(static_cast<int>(i)) + o.part(static_cast<int>(i));
  return BiPoly(std::move(v));
}

BiPoly BiPoly::operator-(const BiPoly& o) const { return *this + o * Rational(-1); }

BiPoly BiPoly::operator*(const BiPoly& o) const {
  if (parts_.empty() || o.parts_.empty()) return {};
  std::vector<RatPoly> v(parts_.size() + o.parts_.size() - 1);
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    for (std::size_t j = 0; j < o.parts_.size(); ++j) v[i + j] = v[i + j] + parts_[i] * o.parts_[j];
  }
  return BiPoly(std::move(v));
}

BiPoly BiPoly::operator*(const Rational& s) const {
  std::vector<RatPoly> v;
  v.reserve(parts_.size());
  for (const auto& p : parts_) v.push_back(p * s);
  return BiPoly(std::move(v));
}

double BiPoly::eval(double w, double sigma) const {
  double v = 0.0;
  for (std::size_t j = parts_.size(); j-- > 0;) v = v * sigma + parts_[j].eval(w);
  return v;
}

std::vector<std::vector<Rational>> rational_nullspace(std::vector<std::vector<Rational>> rows, int cols) {
  std::vector<int> pivot_col;
  std::size_t r = 0;
  for (int c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[r], rows[piv]);
    const Rational inv = Rational(1) / rows[r][c];
    for (auto& x : rows[r]) x *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      const Rational f = rows[i][c];
      for (int k = c; k < cols; ++k) rows[i][k] -= f * rows[r][k];
    }
    pivot_col.push_back(c);
    ++r;
  }
  std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
  for (int c : pivot_col) is_pivot[c] = true;
  std::vector<std::vector<Rational>> basis;
  for (int f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> v(static_cast<std::size_t>(cols));
    v[f] = 1;
    for (std::size_t i = 0; i < pivot_col.size(); ++i) v[pivot_col[i]] = -rows[i][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace heun

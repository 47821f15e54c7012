#include "sharp/exact.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

namespace sharp {

namespace {

using boost::multiprecision::cpp_int;

Rational abs_q(const Rational& q) { return q < 0 ? Rational(-q) : q; }

std::int64_t ceil_q(const Rational& q) {
  const cpp_int n = boost::multiprecision::numerator(q), d = boost::multiprecision::denominator(q);
  cpp_int c = n / d;  // truncates toward zero
  if (c * d < n) c += 1;
  return static_cast<std::int64_t>(c);
}

// Every lattice point of the box |x|_inf <= r (half-line axes from 0), last
// coordinate fastest. Empty when r < 0.
template <class F>
void for_each_in_box(const Space& space, std::int64_t r, F&& visit) {
  if (r < 0) return;
  const int d = space.dim(), m = space.half_dims();
  LatticeIndex x(d);
  for (int i = 0; i < d; ++i) x[i] = i < m ? 0 : -r;
  while (true) {
    visit(const_cast<const LatticeIndex&>(x));
    int i = d - 1;
    for (; i >= 0; --i) {
      if (x[i] < r) {
        ++x[i];
        break;
      }
      x[i] = i < m ? 0 : -r;
    }
    if (i < 0) return;
  }
}

std::int64_t linf(const LatticeIndex& x) {
  std::int64_t n = 0;
  for (auto v : x) n = std::max<std::int64_t>(n, v < 0 ? -v : v);
  return n;
}

std::int64_t linf_distance(const LatticeIndex& x, const LatticeIndex& y) {
  std::int64_t n = 0;
  for (std::size_t i = 0; i < x.size(); ++i) n = std::max<std::int64_t>(n, x[i] > y[i] ? x[i] - y[i] : y[i] - x[i]);
  return n;
}

LatticeIndex add(const LatticeIndex& x, const LatticeIndex& y) {
  LatticeIndex z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) z[i] = x[i] + y[i];
  return z;
}

void require_valid_lattice_h(const Space& space, const Rational& h) {
  if (!space.is_lattice()) throw std::invalid_argument("exact verification runs on lattice spaces");
  if (!(h > 1)) throw std::invalid_argument("lattice radius must exceed 1");
}

}  // namespace

Rational to_rational(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("to_rational: non-finite value");
  if (x == 0.0) return Rational(0);
  int e = 0;
  const double frac = std::frexp(x, &e);
  const auto mant = static_cast<std::int64_t>(std::ldexp(frac, 53));  // exact: 53-bit integer
  e -= 53;
  Rational q{cpp_int(mant)};
  if (e > 0) q *= Rational(cpp_int(1) << e);
  if (e < 0) q /= Rational(cpp_int(1) << -e);
  return q;
}

Rational parse_rational(const std::string& text) {
  auto fail = [&]() -> Rational { throw std::invalid_argument("not a rational number: '" + text + "'"); };
  const auto slash = text.find('/');
  auto parse_decimal = [&](const std::string& s) -> Rational {
    std::size_t i = 0;
    bool negative = false;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) negative = s[i++] == '-';
    cpp_int num = 0, den = 1;
    bool digits = false, dot = false;
    for (; i < s.size(); ++i) {
      const char c = s[i];
      if (c == '.' && !dot) {
        dot = true;
        continue;
      }
      if (!std::isdigit(static_cast<unsigned char>(c))) return fail();
      num = num * 10 + (c - '0');
      if (dot) den *= 10;
      digits = true;
    }
    if (!digits) return fail();
    Rational q(num, den);
    return negative ? Rational(-q) : q;
  };
  if (slash == std::string::npos) return parse_decimal(text);
  const Rational p = parse_decimal(text.substr(0, slash)), q = parse_decimal(text.substr(slash + 1));
  if (q == 0) return fail();
  return p / q;
}

std::string to_string(const Rational& q) { return q.str(); }

ExactModulus ExactModulus::identity() { return ExactModulus{}; }

ExactModulus ExactModulus::table(std::vector<std::pair<Rational, Rational>> points) {
  if (points.size() < 2 || points.front().first != 0 || points.front().second != 0)
    throw std::invalid_argument("ExactModulus::table: need at least two points starting at (0, 0)");
  for (std::size_t i = 1; i < points.size(); ++i)
    if (!(points[i].first > points[i - 1].first) || points[i].second < points[i - 1].second)
      throw std::invalid_argument("ExactModulus::table: breakpoints must increase and values must not decrease");
  ExactModulus w;
  w.points_ = std::move(points);
  return w;
}

ExactModulus ExactModulus::from(const Modulus& omega) {
  if (omega.is_power()) {
    if (omega.alpha() != 1.0) throw std::invalid_argument("t^alpha with alpha < 1 takes irrational values");
    return identity();
  }
  std::vector<std::pair<Rational, Rational>> pts;
  for (const auto& [t, w] : omega.points()) pts.emplace_back(to_rational(t), to_rational(w));
  return table(std::move(pts));
}

Rational ExactModulus::operator()(std::int64_t t) const { return (*this)(Rational(t)); }

Rational ExactModulus::operator()(const Rational& t) const {
  if (t < 0) throw std::invalid_argument("ExactModulus: argument must be nonnegative");
  if (points_.empty()) return t;
  if (t >= points_.back().first) return points_.back().second;
  for (std::size_t i = 1; i < points_.size(); ++i) {
    const auto& [t1, w1] = points_[i];
    if (t <= t1) {
      const auto& [t0, w0] = points_[i - 1];
      return w0 + (w1 - w0) * (t - t0) / (t1 - t0);
    }
  }
  return points_.back().second;
}

std::string ExactModulus::label() const {
  if (points_.empty()) return "1";
  std::string s = "table";
  for (const auto& [t, w] : points_) s += ":" + t.str() + "/" + w.str();
  return s;
}

ExactFunction exact_f_eh(const Space& space, const ExactModulus& omega, const Rational& h) {
  require_valid_lattice_h(space, h);
  const Rational wh = omega(h);
  ExactFunction f;
  f.value = [omega, wh](const LatticeIndex& x) {
    const Rational v = wh - omega(linf(x));
    return v > 0 ? v : Rational(0);
  };
  f.support_radius = h;
  f.holder_bound = Rational(1);
  f.gradient_bound = Rational(1, 2);
  f.label = "f_eh[h=" + h.str() + "]";
  return f;
}

ExactFunction exact_f_omega(const Space& space, const ExactModulus& omega, const Rational& c, int sign) {
  if (!space.is_lattice()) throw std::invalid_argument("exact verification runs on lattice spaces");
  if (sign != 1 && sign != -1) throw std::invalid_argument("exact_f_omega: sign must be +1 or -1");
  ExactFunction f;
  f.value = [omega, c, sign](const LatticeIndex& x) { return c + sign * omega(linf(x)); };
  f.holder_bound = Rational(1);
  f.gradient_bound = Rational(1, 2);
  f.label = "f_omega[c=" + c.str() + "]";
  return f;
}

ExactFunction exact_zero() {
  ExactFunction f;
  f.value = [](const LatticeIndex&) { return Rational(0); };
  f.support_radius = Rational(1);
  f.holder_bound = Rational(0);
  f.gradient_bound = Rational(0);
  f.label = "zero";
  return f;
}

std::int64_t exact_ball_count(const Space& space, const Rational& h) {
  require_valid_lattice_h(space, h);
  std::int64_t n = 0;
  for_each_in_box(space, ceil_q(h) - 1, [&](const LatticeIndex&) { ++n; });
  return n;
}

Rational exact_ball_integral(const Space& space, const ExactModulus& omega, const Rational& h) {
  require_valid_lattice_h(space, h);
  Rational sum = 0;
  for_each_in_box(space, ceil_q(h) - 1, [&](const LatticeIndex& u) { sum += omega(linf(u)); });
  return sum;
}

InequalityReport exact_verify(TheoremId id, const ExactInstance& in) {
  const Space& space = in.space;
  require_valid_lattice_h(space, in.h);
  switch (id) {
    case TheoremId::Lemma1:
    case TheoremId::Nagy:
    case TheoremId::NagyL1:
    case TheoremId::Sobolev:
    case TheoremId::Charge:
      break;
    default:
      throw std::invalid_argument("exact verification covers lemma1, nagy, nagy_l1, sobolev and charge");
  }
  const ExactFunction& f = in.f;
  const bool compact = f.support_radius.has_value();
  const std::int64_t K = ceil_q(in.h) - 1;
  // Nonzero values live in the box of radius R0; ball sums vanish beyond R0 + K.
  const std::int64_t R0 = compact ? std::max<std::int64_t>(ceil_q(*f.support_radius) - 1, 0) : in.window;
  const std::int64_t sum_box = compact ? R0 + K : in.window;

  std::vector<LatticeIndex> ball;
  for_each_in_box(space, K, [&](const LatticeIndex& u) { ball.push_back(u); });
  const Rational mu(static_cast<std::int64_t>(ball.size()));
  Rational I = 0;
  for (const auto& u : ball) I += in.omega(linf(u));

  auto ball_sum = [&](const LatticeIndex& x) {
    Rational s = 0;
    for (const auto& u : ball) s += f.value(add(x, u));
    return s;
  };

  Rational sup_f = 0, sem = 0, l1 = 0, dev = 0;
  for_each_in_box(space, R0, [&](const LatticeIndex& x) {
    const Rational v = abs_q(f.value(x));
    sup_f = std::max(sup_f, v);
    l1 += v;
  });
  for_each_in_box(space, sum_box, [&](const LatticeIndex& x) {
    const Rational s = ball_sum(x);
    sem = std::max(sem, abs_q(s));
    dev = std::max(dev, abs_q(f.value(x) - s / mu));
  });

  // Window pairs one step beyond the support realise every |f(x) - f(y)|/omega
  // ratio since omega is nondecreasing.
  std::vector<LatticeIndex> pts;
  if (compact) for_each_in_box(space, R0 + 1, [&](const LatticeIndex& x) { pts.push_back(x); });
  auto pair_max = [&](auto&& ratio) {
    Rational best = 0;
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = i + 1; j < pts.size(); ++j) best = std::max(best, ratio(pts[i], pts[j]));
    return best;
  };
  Rational holder;
  if (f.holder_bound) {
    holder = *f.holder_bound;
  } else if (compact) {
    holder = pair_max([&](const LatticeIndex& x, const LatticeIndex& y) {
      const Rational w = in.omega(linf_distance(x, y));
      const Rational diff = abs_q(f.value(x) - f.value(y));
      if (w == 0 && diff != 0) throw std::invalid_argument("exact_verify: omega vanishes at a positive distance");
      return w == 0 ? Rational(0) : Rational(diff / w);
    });
  } else {
    throw std::invalid_argument("exact_verify: a non-compact function needs a certified H^omega bound");
  }

  InequalityReport r;
  r.theorem_id = to_string(id);
  r.d = space.dim();
  r.m = space.half_dims();
  r.modulus = in.omega.label();
  r.h = in.h.convert_to<double>();
  r.equality_expected = true;
  Rational lhs, t1, t2 = 0;
  switch (id) {
    case TheoremId::Lemma1:
      lhs = dev;
      t1 = holder * I / mu;
      break;
    case TheoremId::Nagy:
    case TheoremId::Charge:  // nu(x + B_h) is the ball sum of the density
      lhs = sup_f;
      t1 = holder * I / mu;
      t2 = sem / mu;
      break;
    case TheoremId::NagyL1:
      if (!compact) throw std::invalid_argument("exact_verify: nagy_l1 needs a compactly supported function");
      lhs = sup_f;
      t1 = holder * I / mu;
      t2 = l1 / mu;
      break;
    case TheoremId::Sobolev: {
      const Rational G = f.gradient_bound ? *f.gradient_bound : Rational(holder / 2);
      if (compact)
        for (std::size_t i = 0; i < pts.size(); ++i)
          for (std::size_t j = i + 1; j < pts.size(); ++j)
            if (abs_q(f.value(pts[i]) - f.value(pts[j])) > 2 * G * in.omega(linf_distance(pts[i], pts[j])))
              throw std::invalid_argument("exact_verify: the gradient bound is not an upper gradient");
      lhs = sup_f;
      t1 = 2 * G * I / mu;
      t2 = sem / mu;
      break;
    }
    default:
      break;
  }
  if (!compact) r.note = "sups restricted to the search window";
  const Rational rhs = t1 + t2, gap = rhs - lhs;
  r.lhs = lhs.convert_to<double>();
  r.rhs_term1 = t1.convert_to<double>();
  r.rhs_term2 = t2.convert_to<double>();
  r.rhs = rhs.convert_to<double>();
  r.gap = gap.convert_to<double>();
  r.tolerance = 0.0;
  r.verdict = gap < 0 ? Verdict::Violated : (gap == 0 ? Verdict::EqualityAttained : Verdict::Holds);
  r.exact = ExactSides{lhs.str(), rhs.str(), gap.str()};
  return r;
}

}  // namespace sharp
